//! The `ientropy` command line.
//!
//! Exit codes: 0 success, 1 domain failure, 2 unreadable or malformed input,
//! 3 search budget exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use crate::cover::{
    atom_refinement, cover_rinv, entropy_bounds, ife, mmcw, refinement_search, wm_entropy_terms, Certainty,
    Entropy, InvariantCover, Scoring, SearchOptions,
};
use crate::error::{Error, Result};
use crate::graphnum::{LogValue, DEFAULT_TOL};
use crate::model::{InputSet, Invariance, StateSet, UncertainSystem};
use crate::oracle::{cover_rinv_exhaustive, r_inv_exhaustive};
use crate::spanning::{admissible_matrix, check_conditions, entropy_report, h_inv_exact, r_inv, CoverReport};
use crate::textio::{emit_tsv, interval_fields, log_fields, matrix_table, parse_cover_named, parse_system_named, Table};

#[derive(Debug, Parser)]
#[command(name = "ientropy", version, about = "Invariance entropy of finite uncertain control systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// System file.
    #[arg(short, long, global = true)]
    pub system: Option<PathBuf>,

    /// Cover file.
    #[arg(short, long, global = true)]
    pub cover: Option<PathBuf>,

    /// Target set Q as comma-separated state ids (defaults to the cover's target).
    #[arg(long, global = true, value_delimiter = ',')]
    pub target: Option<Vec<String>>,

    /// Subset K of the target (defaults to Q).
    #[arg(long, global = true, value_delimiter = ',')]
    pub subset: Option<Vec<String>>,

    /// Input set V as comma-separated input ids (defaults to all inputs).
    #[arg(long, global = true, value_delimiter = ',')]
    pub inputs: Option<Vec<String>>,

    /// Horizon n.
    #[arg(short, long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,

    /// Largest m of the W_m table.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..))]
    pub m_max: u64,

    /// Search budget in node expansions.
    #[arg(long, global = true, default_value_t = crate::spanning::DEFAULT_BUDGET)]
    pub budget: u64,

    /// Largest number of cells tried by refine-search.
    #[arg(long, global = true)]
    pub max_cells: Option<usize>,

    /// Width of spectral radius enclosures.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Parse the system (and cover), and check controlled invariance of the target.
    Validate,
    /// Minimal spanning set size r_inv(n, K, Q) with a certificate.
    Rinv,
    /// r_inv and log2(r_inv)/n for n = 1..N, with the resulting upper bound.
    EntropyReport,
    /// Check a cover: invariance, D(A), quasi-invariant-partition conditions.
    CoverCheck,
    /// Minimal expansion number r_inv(n, Q, A, G) and an optimal strategy.
    CoverRinv,
    /// Maximum mean cycle weight, spectral bounds and W_m terms of a cover.
    CoverEntropy,
    /// Admissible matrix M_{Q,V}, or M and W of a cover.
    Matrices,
    /// Conditions (C.1)-(C.3) for V.
    Conditions,
    /// h_inv(Q) = log2 rho(M_{Q,V}) under (C.1)-(C.3).
    HinvExact,
    /// Invariance feedback entropy via the atom refinement.
    Ife,
    /// Best refinement of (A_V, G_V) within the budget.
    RefineSearch,
    /// Cross-check the searches against brute-force enumeration.
    Oracle,
}

/// Parses arguments, runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(msg) = missing_argument(&cli) {
        let e = Cli::command().error(ErrorKind::MissingRequiredArgument, msg);
        let _ = err.write_all(e.render().to_string().as_bytes());
        return 2;
    }
    match execute(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Plain => report.plain.iter().map(|l| format!("{l}\n")).collect::<String>(),
                Format::Tsv => emit_tsv(&report.tables),
            };
            let _ = out.write_all(text.as_bytes());
            for w in &report.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            report.code
        }
        Err(e) => {
            let _ = writeln!(err, "error[{}]: {e}", e.name());
            exit_code(&e)
        }
    }
}

fn missing_argument(cli: &Cli) -> Option<&'static str> {
    let (target, cover) = (cli.target.is_some(), cli.cover.is_some());
    if cli.system.is_none() {
        return Some("--system <SYSTEM> is required");
    }
    match cli.command {
        Command::Validate | Command::Matrices if cover || target => None,
        Command::Validate => None,
        Command::Matrices => Some("matrices needs --target or --cover"),
        Command::CoverCheck | Command::CoverRinv | Command::CoverEntropy if !cover => {
            Some("this command needs --cover <COVER>")
        }
        _ if !target && !cover => Some("this command needs --target <IDS> (or --cover to use its target)"),
        _ => None,
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) => 2,
        Error::SearchBudgetExceeded { .. } => 3,
        _ => 1,
    }
}

/// Command output in both formats.
#[derive(Debug, Default)]
struct Report {
    plain: Vec<String>,
    tables: Vec<Table>,
    warnings: Vec<String>,
    code: i32,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.plain.push(s.into());
    }
}

struct Context {
    sys: UncertainSystem,
    cover: Option<InvariantCover>,
    target: Option<StateSet>,
    inputs: InputSet,
}

impl Context {
    fn target(&self) -> StateSet {
        self.target.expect("checked by missing_argument")
    }

    fn cover(&self) -> &InvariantCover {
        self.cover.as_ref().expect("checked by missing_argument")
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load(cli: &Cli) -> Result<Context> {
    let path = cli.system.as_ref().expect("checked by missing_argument");
    let sys = parse_system_named(&read(path)?, &path.display().to_string())?;
    let cover = match &cli.cover {
        None => None,
        Some(p) => Some(parse_cover_named(&read(p)?, &p.display().to_string(), &sys)?.build(&sys)?),
    };
    let target = match (&cli.target, &cover) {
        (Some(ids), _) => Some(sys.state_set(ids)?),
        (None, Some(c)) => Some(c.target()),
        (None, None) => None,
    };
    let inputs = match &cli.inputs {
        Some(ids) => sys.input_set(ids)?,
        None => sys.all_inputs(),
    };
    Ok(Context { sys, cover, target, inputs })
}

fn execute(cli: &Cli) -> Result<Report> {
    let ctx = load(cli)?;
    let n = cli.n as usize;
    match cli.command {
        Command::Validate => validate(&ctx),
        Command::Rinv => rinv(&ctx, cli, n),
        Command::EntropyReport => report_cmd(&ctx, cli, n),
        Command::CoverCheck => cover_check(&ctx),
        Command::CoverRinv => cover_rinv_cmd(&ctx, n),
        Command::CoverEntropy => cover_entropy(&ctx, cli),
        Command::Matrices => matrices(&ctx),
        Command::Conditions => conditions(&ctx),
        Command::HinvExact => hinv(&ctx, cli),
        Command::Ife => ife_cmd(&ctx, cli),
        Command::RefineSearch => refine(&ctx, cli),
        Command::Oracle => oracle(&ctx, cli, n),
    }
}

fn entropy_fields(v: &Entropy) -> String {
    match v {
        Entropy::Exact(x) => log_fields(x),
        Entropy::Approximate(x) => format!("approx={x:.12}"),
    }
}

fn plain_fields(s: &str) -> String {
    s.replace('\t', " ")
}

fn cells_table(sys: &UncertainSystem, cover: &InvariantCover) -> Table {
    let mut t = Table::new(["cell", "states", "input", "successors"]);
    for (i, c) in cover.cells().iter().enumerate() {
        let succ: Vec<String> = cover.successors(i).iter().map(|&j| cover.cells()[j].id.clone()).collect();
        t.push([c.id.clone(), sys.state_names(c.states).join(","), sys.input_id(c.input).to_string(), succ.join(",")]);
    }
    t
}

fn validate(ctx: &Context) -> Result<Report> {
    let sys = &ctx.sys;
    let mut r = Report::default();
    r.line(format!("system {}: {} states, {} inputs", sys.name(), sys.num_states(), sys.num_inputs()));
    let mut t = Table::new(["item", "value"]);
    t.push(["system".to_string(), sys.name().to_string()]);
    t.push(["states".to_string(), sys.num_states().to_string()]);
    t.push(["inputs".to_string(), sys.num_inputs().to_string()]);
    if let Some(q) = ctx.target {
        match sys.is_controlled_invariant(q)? {
            Invariance::Invariant(w) => {
                r.line(format!("target {} is controlled invariant", sys.set_string(q)));
                for (x, u) in w {
                    r.line(format!("  {} -> {}", sys.state_id(x), sys.input_id(u)));
                }
                t.push(["controlled_invariant", "true"]);
            }
            Invariance::Violated(v) => {
                r.line(format!("target {} is not controlled invariant; violating {}", sys.set_string(q), sys.set_string(v)));
                t.push(["controlled_invariant".to_string(), "false".to_string()]);
                t.push(["violating".to_string(), sys.state_names(v).join(",")]);
                r.code = 1;
            }
        }
    }
    if let Some(c) = &ctx.cover {
        r.line(format!(
            "cover: {} cells, partition={}, quasi_invariant_partition={}",
            c.len(),
            c.is_partition(),
            c.is_quasi_invariant_partition()
        ));
        t.push(["cover_cells".to_string(), c.len().to_string()]);
    }
    r.tables.push(t);
    Ok(r)
}

fn rinv(ctx: &Context, cli: &Cli, n: usize) -> Result<Report> {
    let sys = &ctx.sys;
    let q = ctx.target();
    let k = match &cli.subset {
        Some(ids) => sys.state_set(ids)?,
        None => q,
    };
    let res = r_inv(sys, q, k, n, cli.budget)?;
    let mut r = Report::default();
    r.line(format!("r_inv={}", res.count));
    let words: Vec<String> = res.certificate.words.iter().map(|w| sys.word_string(w)).collect();
    r.line(format!("spanning_set={}", words.join(",")));
    let mut t = Table::new(["n", "r_inv", "spanning_set"]);
    t.push([n.to_string(), res.count.to_string(), words.join(",")]);
    let mut fams = Table::new(["state", "family"]);
    for (x, fam) in &res.certificate.families {
        let f: Vec<String> = fam.iter().map(|w| sys.word_string(w)).collect();
        r.line(format!("  {}: {}", sys.state_id(*x), f.join(",")));
        fams.push([sys.state_id(*x).to_string(), f.join(",")]);
    }
    r.tables = vec![t, fams];
    Ok(r)
}

fn report_cmd(ctx: &Context, cli: &Cli, n: usize) -> Result<Report> {
    let sys = &ctx.sys;
    let q = ctx.target();
    let k = match &cli.subset {
        Some(ids) => sys.state_set(ids)?,
        None => q,
    };
    let rep = entropy_report(sys, q, k, n, cli.budget)?;
    let mut r = Report::default();
    let mut t = Table::new(["n", "r_inv", "ratio_exact", "ratio_decimal"]);
    for row in &rep.rows {
        let ratio = row.ratio.as_ref().map_or("exact=-\tdecimal=-".to_string(), log_fields);
        r.line(format!("n={} r_inv={} ratio {}", row.n, row.r_inv, plain_fields(&ratio)));
        t.push([row.n.to_string(), row.r_inv.to_string(), ratio]);
    }
    r.tables.push(t);
    let mut b = Table::new(["quantity", "exact", "decimal"]);
    if let Some(ub) = &rep.upper_bound {
        r.line(format!("h_inv upper_bound {} (finite horizon; not a lower bound)", plain_fields(&log_fields(ub))));
        b.push(["h_inv_upper_bound".to_string(), log_fields(ub)]);
    }
    r.tables.push(b);
    Ok(r)
}

fn cover_check(ctx: &Context) -> Result<Report> {
    let sys = &ctx.sys;
    let c = ctx.cover();
    let mut r = Report::default();
    r.line(format!("cover over {}: {} cells, target {}", sys.name(), c.len(), sys.set_string(c.target())));
    let cells = cells_table(sys, c);
    for row in &cells.rows {
        r.line(format!("  {} = {{{}}} input {} D = {{{}}}", row[0], row[1], row[2], row[3]));
    }
    let violations = c.quasi_violations();
    r.line(format!("partition={}", c.is_partition()));
    r.line(format!("quasi_invariant_partition={}", violations.is_empty()));
    let mut v = Table::new(["violation"]);
    for x in &violations {
        r.line(format!("  {}", c.describe(x)));
        v.push([c.describe(x)]);
    }
    let mut flags = Table::new(["property", "value"]);
    flags.push(["partition".to_string(), c.is_partition().to_string()]);
    flags.push(["quasi_invariant_partition".to_string(), violations.is_empty().to_string()]);
    r.tables = vec![cells, flags, v];
    Ok(r)
}

fn cover_rinv_cmd(ctx: &Context, n: usize) -> Result<Report> {
    let c = ctx.cover();
    let res = cover_rinv(c, n)?;
    let ids = c.cell_ids();
    let names = |v: &[usize]| v.iter().map(|&i| ids[i].clone()).collect::<Vec<_>>().join(",");
    let mut r = Report::default();
    r.line(format!("r_inv_cover={}", res.value));
    r.line(format!("initial={}", names(&res.strategy.initial)));
    let mut t = Table::new(["n", "r_inv_cover", "initial"]);
    t.push([n.to_string(), res.value.to_string(), names(&res.strategy.initial)]);
    let mut s = Table::new(["steps_left", "cell", "successors"]);
    for h in (1..n).rev() {
        for (a, d) in res.strategy.choices[h].iter().enumerate() {
            r.line(format!("  h={h} {} -> {}", ids[a], names(d)));
            s.push([h.to_string(), ids[a].clone(), names(d)]);
        }
    }
    r.tables = vec![t, s];
    Ok(r)
}

fn cover_entropy(ctx: &Context, cli: &Cli) -> Result<Report> {
    let c = ctx.cover();
    let ids = c.cell_ids();
    let m = mmcw(c)?;
    let b = entropy_bounds(c, cli.tol)?;
    let rows = wm_entropy_terms(c, cli.m_max as usize)?;
    let mut r = Report::default();
    let cycle = m.cycle.as_ref().map_or("-".to_string(), |cy| {
        cy.cells.iter().map(|&i| ids[i].clone()).collect::<Vec<_>>().join(",")
    });
    r.line(format!("mmcw {} cycle=({cycle})", plain_fields(&entropy_fields(&m.value))));
    if !m.is_exact() {
        r.warnings.push("cycle cap exceeded; mmcw is Karp's floating value".into());
    }
    r.line(format!("karp={:.12}", m.karp));
    r.line(format!("lower {}", plain_fields(&interval_fields(&b.lower))));
    r.line(format!("upper {}", plain_fields(&interval_fields(&b.upper))));
    if let Some(e) = &b.exact {
        r.line(format!("exact {} (rho(M)=1 structural)", plain_fields(&log_fields(e))));
    }
    r.line(format!("rho_M lo={:.12} hi={:.12}", b.rho_m.lo, b.rho_m.hi));
    r.line(format!("rho_W lo={:.12} hi={:.12}", b.rho_w.lo, b.rho_w.hi));
    r.line(format!("norm_inf_W={}", b.norm_linf));
    let mut head = Table::new(["quantity", "field1", "field2"]);
    head.push(["mmcw".to_string(), entropy_fields(&m.value)]);
    head.push(["cycle".to_string(), cycle, String::new()]);
    head.push(["lower".to_string(), interval_fields(&b.lower)]);
    head.push(["upper".to_string(), interval_fields(&b.upper)]);
    if let Some(e) = &b.exact {
        head.push(["exact".to_string(), log_fields(e)]);
    }
    let mut wm = Table::new(["m", "max_product", "term_exact", "term_decimal", "r_inv_cover", "identity"]);
    for row in &rows {
        r.line(format!(
            "m={} max_product={} term {} r_inv_cover={} identity={}",
            row.m,
            row.max_product,
            plain_fields(&log_fields(&row.term)),
            row.cover_rinv,
            row.identity_holds
        ));
        wm.push([
            row.m.to_string(),
            row.max_product.to_string(),
            log_fields(&row.term),
            row.cover_rinv.to_string(),
            row.identity_holds.to_string(),
        ]);
    }
    r.tables = vec![head, wm];
    Ok(r)
}

fn matrices(ctx: &Context) -> Result<Report> {
    let mut r = Report::default();
    let tables = if let Some(c) = &ctx.cover {
        let g = c.digraph();
        vec![matrix_table("M", &g.m), matrix_table("W", &g.w)]
    } else {
        vec![matrix_table("M_QV", &admissible_matrix(&ctx.sys, ctx.target(), ctx.inputs)?)]
    };
    for t in &tables {
        for row in std::iter::once(&t.header).chain(&t.rows) {
            r.line(row.join(" "));
        }
        r.line("");
    }
    r.plain.pop();
    r.tables = tables;
    Ok(r)
}

fn report_lines(sys: &UncertainSystem, rep: &CoverReport, r: &mut Report) -> Table {
    let mut t = Table::new(["condition", "ok", "detail"]);
    let cover_detail = sys.set_string(rep.uncovered);
    let c1: Vec<String> = rep
        .c1_violations
        .iter()
        .map(|(a, b, s)| format!("Q_{}&Q_{}={}", sys.input_id(*a), sys.input_id(*b), sys.set_string(*s)))
        .collect();
    let c2: Vec<String> = rep
        .c2_violations()
        .map(|c| format!("{}->{} missing {}", sys.input_id(c.from), sys.input_id(c.to), sys.set_string(c.missing)))
        .collect();
    let c3: Vec<String> =
        rep.c3_violations.iter().map(|(c, s)| format!("Q_{}={}", sys.input_id(*c), sys.set_string(*s))).collect();
    for (name, ok, detail) in [
        ("cover", rep.covers, if rep.covers { String::new() } else { format!("uncovered {cover_detail}") }),
        ("C.1", rep.c1_ok, c1.join(";")),
        ("C.2", rep.c2_ok, c2.join(";")),
        ("C.3", rep.c3_ok, c3.join(";")),
    ] {
        let line = if detail.is_empty() { format!("{name} ok={ok}") } else { format!("{name} ok={ok} {detail}") };
        r.line(line);
        t.push([name.to_string(), ok.to_string(), detail]);
    }
    t
}

fn conditions(ctx: &Context) -> Result<Report> {
    let sys = &ctx.sys;
    let q = ctx.target();
    let rep = check_conditions(sys, q, ctx.inputs)?;
    let mut r = Report::default();
    let t = report_lines(sys, &rep, &mut r);
    let mut w = Table::new(["from", "to", "witness_K"]);
    for c in &rep.c2_checks {
        w.push([sys.input_id(c.from).to_string(), sys.input_id(c.to).to_string(), sys.set_string(c.witness)]);
    }
    r.tables = vec![t, w];
    if !rep.all_ok() {
        r.code = 1;
    }
    Ok(r)
}

fn hinv(ctx: &Context, cli: &Cli) -> Result<Report> {
    let q = ctx.target();
    let mut r = Report::default();
    let mut t = Table::new(["quantity", "field1", "field2"]);
    match h_inv_exact(&ctx.sys, q, ctx.inputs, cli.tol) {
        Ok(h) => {
            match &h.exact {
                Some(v) if v.is_zero() => r.line("h_inv exact=0 (rho=1 structural)"),
                Some(v) => r.line(format!("h_inv {} (structural)", plain_fields(&log_fields(v)))),
                None => r.line(format!("h_inv {}", plain_fields(&interval_fields(&h.log2_rho)))),
            }
            r.line(format!("rho lo={:.12} hi={:.12}", h.radius.lo, h.radius.hi));
            match &h.exact {
                Some(v) => t.push(["h_inv".to_string(), log_fields(v)]),
                None => t.push(["h_inv".to_string(), interval_fields(&h.log2_rho)]),
            }
            t.push(["rho".to_string(), format!("lo={:.12}", h.radius.lo), format!("hi={:.12}", h.radius.hi)]);
        }
        Err(Error::ConditionsNotMet { report, upper_bound }) => {
            r.line(format!("conditions not met: {}", report.summary()));
            report_lines(&ctx.sys, &report, &mut r);
            if let Some((lo, hi)) = upper_bound {
                r.line(format!("h_inv upper_bound lo={lo:.12} hi={hi:.12}"));
                t.push(["h_inv_upper_bound".to_string(), format!("lo={lo:.12}"), format!("hi={hi:.12}")]);
            }
            r.code = 1;
        }
        Err(e) => return Err(e),
    }
    r.tables.push(t);
    Ok(r)
}

fn cover_lines(sys: &UncertainSystem, cover: &InvariantCover, r: &mut Report) -> Table {
    let t = cells_table(sys, cover);
    for row in &t.rows {
        r.line(format!("  {} = {{{}}} input {}", row[0], row[1], row[2]));
    }
    t
}

fn ife_cmd(ctx: &Context, cli: &Cli) -> Result<Report> {
    let q = ctx.target();
    let res = ife(&ctx.sys, q, ctx.inputs, cli.budget)?;
    let mut r = Report::default();
    let label = match res.certainty {
        Certainty::Exact => "h_fb",
        Certainty::UpperBound => "h_fb upper_bound",
    };
    r.line(format!("{label} {}", plain_fields(&entropy_fields(&res.value))));
    let mut t = Table::new(["quantity", "field1", "field2"]);
    t.push([label.replace(' ', "_"), entropy_fields(&res.value)]);
    let cells = cover_lines(&ctx.sys, &res.cover, &mut r);
    r.tables = vec![t, cells];
    Ok(r)
}

fn refine(ctx: &Context, cli: &Cli) -> Result<Report> {
    let q = ctx.target();
    let opts = SearchOptions { budget: cli.budget, max_cells: cli.max_cells, horizon: cli.n as usize };
    let out = refinement_search(&ctx.sys, q, ctx.inputs, &opts)?;
    let mut r = Report::default();
    let scoring = match out.scoring {
        Scoring::MaxMeanWeight => "mmcw",
        Scoring::ExpansionBound => "expansion_bound",
    };
    r.line(format!("h_fb upper_bound {}", plain_fields(&entropy_fields(&out.value))));
    r.line(format!("scoring={scoring} examined={} complete={}", out.examined, out.complete));
    let mut t = Table::new(["quantity", "field1", "field2"]);
    t.push(["h_fb_upper_bound".to_string(), entropy_fields(&out.value)]);
    t.push(["scoring".to_string(), scoring.to_string(), String::new()]);
    t.push(["examined".to_string(), out.examined.to_string(), String::new()]);
    t.push(["complete".to_string(), out.complete.to_string(), String::new()]);
    let cells = cover_lines(&ctx.sys, &out.cover, &mut r);
    r.tables = vec![t, cells];
    if !out.complete {
        r.warnings.push("budget exhausted before all refinements were examined".into());
        r.code = 3;
    }
    Ok(r)
}

fn oracle(ctx: &Context, cli: &Cli, n: usize) -> Result<Report> {
    let mut r = Report::default();
    let mut t = Table::new(["check", "n", "search", "oracle", "agree"]);
    let mut all = true;
    let mut row = |r: &mut Report, check: &str, n: usize, a: String, b: String, ok: bool| {
        all &= ok;
        r.line(format!("{check} n={n} search={a} oracle={b} agree={ok}"));
        t.push([check.to_string(), n.to_string(), a, b, ok.to_string()]);
    };
    if let Some(q) = ctx.target {
        for h in 1..=n {
            let fast = r_inv(&ctx.sys, q, q, h, cli.budget)?.count;
            let slow = r_inv_exhaustive(&ctx.sys, q, q, h, cli.budget)?;
            row(&mut r, "r_inv", h, fast.to_string(), slow.to_string(), fast == slow);
        }
    }
    if let Some(c) = &ctx.cover {
        for h in 1..=n {
            let fast = cover_rinv(c, h)?.value;
            let slow = cover_rinv_exhaustive(c, h)?;
            row(&mut r, "cover_rinv", h, fast.to_string(), slow.to_string(), fast == slow);
        }
        if c.is_quasi_invariant_partition() {
            let m = mmcw(c)?;
            let ok = m.karp_gap() <= crate::cover::KARP_TOLERANCE;
            row(&mut r, "mmcw", 0, format!("{:.12}", m.value.to_f64()), format!("{:.12}", m.karp), ok);
        }
    }
    r.tables.push(t);
    if !all {
        r.code = 1;
    }
    Ok(r)
}

/// Exact value rendered for tests and examples.
pub fn render_exact(v: &LogValue) -> String {
    format!("exact={} decimal={}", v.exact_string(), v.decimal_string())
}

/// The atom refinement of `(A_V, G_V)` as a cover, for callers of the CLI layer.
pub fn atom_cover(sys: &UncertainSystem, target: StateSet, inputs: InputSet) -> Result<InvariantCover> {
    atom_refinement(sys, target, inputs)
}
