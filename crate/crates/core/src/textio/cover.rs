use std::collections::HashMap;

use super::{tokenize, DiagCode, Diags};
use crate::cover::{build_cover, InvariantCover};
use crate::error::{Error, Result};
use crate::model::{StateSet, UncertainSystem};

/// A parsed cover file, before the invariance checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverFile {
    pub name: String,
    pub over: String,
    pub target: StateSet,
    /// `(id, cell, input)` in file order.
    pub cells: Vec<(String, StateSet, usize)>,
}

impl CoverFile {
    pub fn build(&self, sys: &UncertainSystem) -> Result<InvariantCover> {
        build_cover(sys, self.target, self.cells.clone())
    }
}

pub fn parse_cover(text: &str, sys: &UncertainSystem) -> Result<CoverFile> {
    parse_cover_named(text, "<input>", sys)
}

pub fn parse_cover_named(text: &str, file: &str, sys: &UncertainSystem) -> Result<CoverFile> {
    let mut d = Diags::new(file);
    let mut name: Option<String> = None;
    let mut over: Option<String> = None;
    let mut target: Option<StateSet> = None;
    let mut cells = Vec::new();
    let mut cell_lines: HashMap<String, usize> = HashMap::new();
    let line_count = text.lines().count();

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        if name.is_none() {
            if head.text != "cover" || toks.len() != 2 || !d.ids(ln, &toks[1..]) {
                d.push(ln, head.column, DiagCode::Parse, "expected `cover NAME` first");
                return Err(Error::Parse(d.list));
            }
            name = Some(toks[1].text.to_string());
            continue;
        }
        match head.text {
            "over" => {
                if over.is_some() {
                    d.push(ln, head.column, DiagCode::Parse, "`over` declared twice");
                } else if toks.len() != 2 || !d.ids(ln, &toks[1..]) {
                    d.push(ln, head.column, DiagCode::Parse, "expected `over SYSTEMNAME`");
                } else {
                    if toks[1].text != sys.name() {
                        d.push(
                            ln,
                            toks[1].column,
                            DiagCode::Parse,
                            format!("cover is over `{}` but the system is `{}`", toks[1].text, sys.name()),
                        );
                    }
                    over = Some(toks[1].text.to_string());
                }
            }
            "target" => {
                if over.is_none() {
                    d.push(ln, head.column, DiagCode::Parse, "`target` before `over`");
                } else if target.is_some() {
                    d.push(ln, head.column, DiagCode::Parse, "`target` declared twice");
                } else if toks.len() < 2 {
                    d.push(ln, head.column, DiagCode::Parse, "`target` needs at least one state");
                } else if d.ids(ln, &toks[1..]) {
                    let mut set = StateSet::EMPTY;
                    for t in &toks[1..] {
                        match sys.state(t.text) {
                            Ok(x) => set.insert(x),
                            Err(_) => d.push(ln, t.column, DiagCode::UnknownId, format!("unknown state `{}`", t.text)),
                        }
                    }
                    target = Some(set);
                }
            }
            "cell" => {
                let Some(q) = target else {
                    d.push(ln, head.column, DiagCode::Parse, "`cell` before `target`");
                    continue;
                };
                let n = toks.len();
                if n < 6 || toks[2].text != ":" || toks[n - 2].text != "input" {
                    d.push(ln, head.column, DiagCode::Parse, "expected `cell CELLID : STATE+ input INPUT`");
                    continue;
                }
                if !d.ids(ln, &toks[1..2]) || !d.ids(ln, &toks[3..n - 2]) || !d.ids(ln, &toks[n - 1..]) {
                    continue;
                }
                let id = toks[1].text.to_string();
                if let Some(&first) = cell_lines.get(&id) {
                    d.push(ln, toks[1].column, DiagCode::Parse, format!("duplicate cell `{id}`; first on line {first}"));
                    continue;
                }
                cell_lines.insert(id.clone(), ln);
                let mut set = StateSet::EMPTY;
                let mut ok = true;
                for t in &toks[3..n - 2] {
                    match sys.state(t.text) {
                        Ok(x) if q.contains(x) => set.insert(x),
                        Ok(_) => {
                            d.push(ln, t.column, DiagCode::UnknownId, format!("state `{}` is not in the target", t.text));
                            ok = false;
                        }
                        Err(_) => {
                            d.push(ln, t.column, DiagCode::UnknownId, format!("unknown state `{}`", t.text));
                            ok = false;
                        }
                    }
                }
                let input = &toks[n - 1];
                match sys.input(input.text) {
                    Ok(u) if ok => cells.push((id, set, u)),
                    Ok(_) => {}
                    Err(_) => d.push(ln, input.column, DiagCode::UnknownId, format!("unknown input `{}`", input.text)),
                }
            }
            "cover" => d.push(ln, head.column, DiagCode::Parse, "`cover` declared twice"),
            other => d.push(ln, head.column, DiagCode::Parse, format!("unknown directive `{other}`")),
        }
    }

    let eof = line_count + 1;
    if name.is_none() {
        d.push(eof, 1, DiagCode::Parse, "expected `cover NAME` first");
    } else if over.is_none() || target.is_none() {
        d.push(eof, 1, DiagCode::Parse, "missing `over` or `target` declaration");
    } else if cell_lines.is_empty() {
        d.push(eof, 1, DiagCode::Parse, "a cover needs at least one `cell`");
    }
    if !d.list.is_empty() {
        return Err(Error::Parse(d.list));
    }
    Ok(CoverFile {
        name: name.expect("checked"),
        over: over.expect("checked"),
        target: target.expect("checked"),
        cells,
    })
}

pub fn serialize_cover(sys: &UncertainSystem, name: &str, cover: &InvariantCover) -> String {
    let mut out = format!("cover {name}\nover {}\n", sys.name());
    out += &format!("target {}\n", sys.state_names(cover.target()).join(" "));
    for c in cover.cells() {
        out += &format!(
            "cell {} : {} input {}\n",
            c.id,
            sys.state_names(c.states).join(" "),
            sys.input_id(c.input)
        );
    }
    out
}
