use std::collections::HashMap;

use super::{tokenize, DiagCode, Diags, Token};
use crate::error::{Error, Result};
use crate::model::{StateSet, UncertainSystem};

pub fn parse_system(text: &str) -> Result<UncertainSystem> {
    parse_system_named(text, "<input>")
}

/// Parses a system file, collecting every diagnostic before failing.
pub fn parse_system_named(text: &str, file: &str) -> Result<UncertainSystem> {
    let mut d = Diags::new(file);
    let mut name: Option<String> = None;
    let mut states: Option<Vec<String>> = None;
    let mut inputs: Option<Vec<String>> = None;
    let mut s_index: HashMap<String, usize> = HashMap::new();
    let mut u_index: HashMap<String, usize> = HashMap::new();
    // (state, input) -> (line, image)
    let mut trans: HashMap<(usize, usize), (usize, StateSet)> = HashMap::new();
    let line_count = text.lines().count();

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        if name.is_none() {
            if head.text != "system" || toks.len() != 2 || !d.ids(ln, &toks[1..]) {
                d.push(ln, head.column, DiagCode::Parse, "expected `system NAME` first");
                return Err(Error::Parse(d.list));
            }
            name = Some(toks[1].text.to_string());
            continue;
        }
        match head.text {
            "states" | "inputs" => {
                let is_states = head.text == "states";
                let slot = if is_states { &mut states } else { &mut inputs };
                if slot.is_some() {
                    d.push(ln, head.column, DiagCode::Parse, format!("`{}` declared twice", head.text));
                    continue;
                }
                if toks.len() < 2 {
                    d.push(ln, head.column, DiagCode::Parse, format!("`{}` needs at least one id", head.text));
                    continue;
                }
                if !d.ids(ln, &toks[1..]) {
                    continue;
                }
                let index = if is_states { &mut s_index } else { &mut u_index };
                let mut ids = Vec::new();
                for t in &toks[1..] {
                    if index.insert(t.text.to_string(), ids.len()).is_some() {
                        d.push(ln, t.column, DiagCode::Parse, format!("duplicate id `{}`", t.text));
                    } else {
                        ids.push(t.text.to_string());
                    }
                }
                *slot = Some(ids);
            }
            "trans" => {
                if states.is_none() || inputs.is_none() {
                    d.push(ln, head.column, DiagCode::Parse, "`trans` before `states` and `inputs`");
                    continue;
                }
                parse_trans(&mut d, ln, &toks, &s_index, &u_index, &mut trans);
            }
            "system" => d.push(ln, head.column, DiagCode::Parse, "`system` declared twice"),
            other => d.push(ln, head.column, DiagCode::Parse, format!("unknown directive `{other}`")),
        }
    }

    let eof = line_count + 1;
    let Some(name) = name else {
        d.push(eof, 1, DiagCode::Parse, "expected `system NAME` first");
        return Err(Error::Parse(d.list));
    };
    let (Some(states), Some(inputs)) = (states, inputs) else {
        d.push(eof, 1, DiagCode::Parse, "missing `states` or `inputs` declaration");
        return Err(Error::Parse(d.list));
    };
    let mut images = vec![vec![StateSet::EMPTY; inputs.len()]; states.len()];
    for (x, row) in images.iter_mut().enumerate() {
        for (u, slot) in row.iter_mut().enumerate() {
            match trans.get(&(x, u)) {
                Some(&(_, img)) => *slot = img,
                None => d.push(
                    eof,
                    1,
                    DiagCode::NotStrict,
                    format!("no transition for state `{}` and input `{}`", states[x], inputs[u]),
                ),
            }
        }
    }
    if !d.list.is_empty() {
        return Err(Error::Parse(d.list));
    }
    UncertainSystem::new(name, states, inputs, images)
}

fn parse_trans(
    d: &mut Diags,
    ln: usize,
    toks: &[Token<'_>],
    s_index: &HashMap<String, usize>,
    u_index: &HashMap<String, usize>,
    trans: &mut HashMap<(usize, usize), (usize, StateSet)>,
) {
    let head = &toks[0];
    if toks.len() < 4 || toks[3].text != "->" {
        d.push(ln, head.column, DiagCode::Parse, "expected `trans STATE INPUT -> STATE+`");
        // The pair was still attempted; don't also report it as missing.
        if let (Some(x), Some(u)) = (toks.get(1).and_then(|t| s_index.get(t.text)), toks.get(2).and_then(|t| u_index.get(t.text))) {
            trans.entry((*x, *u)).or_insert((ln, StateSet::EMPTY));
        }
        return;
    }
    if !d.ids(ln, &toks[1..3]) || !d.ids(ln, &toks[4..]) {
        return;
    }
    let mut ok = true;
    let x = s_index.get(toks[1].text).copied();
    if x.is_none() {
        d.push(ln, toks[1].column, DiagCode::UnknownId, format!("unknown state `{}`", toks[1].text));
        ok = false;
    }
    let u = u_index.get(toks[2].text).copied();
    if u.is_none() {
        d.push(ln, toks[2].column, DiagCode::UnknownId, format!("unknown input `{}`", toks[2].text));
        ok = false;
    }
    if toks.len() == 4 {
        d.push(ln, toks[3].column, DiagCode::EmptyImage, "transition has an empty image");
        ok = false;
    }
    let mut image = StateSet::EMPTY;
    for t in &toks[4..] {
        match s_index.get(t.text) {
            Some(&y) => image.insert(y),
            None => {
                d.push(ln, t.column, DiagCode::UnknownId, format!("unknown state `{}`", t.text));
                ok = false;
            }
        }
    }
    let (Some(x), Some(u)) = (x, u) else { return };
    if let Some(&(first, _)) = trans.get(&(x, u)) {
        d.push(
            ln,
            head.column,
            DiagCode::DupTrans,
            format!("second transition for `{} {}`; first on line {first}", toks[1].text, toks[2].text),
        );
        return;
    }
    if ok {
        trans.insert((x, u), (ln, image));
    } else {
        // Keep the pair defined so a bad line does not also report E_NOT_STRICT.
        trans.insert((x, u), (ln, StateSet::EMPTY));
    }
}

/// Canonical form: transitions sorted by `(state, input)`, images in state order.
pub fn serialize_system(sys: &UncertainSystem) -> String {
    let mut out = format!("system {}\n", sys.name());
    out += &format!("states {}\n", sys.state_ids().join(" "));
    out += &format!("inputs {}\n", sys.input_ids().join(" "));
    for x in 0..sys.num_states() {
        for u in 0..sys.num_inputs() {
            out += &format!(
                "trans {} {} -> {}\n",
                sys.state_id(x),
                sys.input_id(u),
                sys.state_names(sys.image(x, u)).join(" ")
            );
        }
    }
    out
}
