use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ktz::audit::{audit_literal_formulas, AuditQuantity};
use ktz::canon::DEFAULT_CANON_BOUND;
use ktz::enumerate::{
    enumerate_labeled_filter, enumerate_labeled_growth, enumerate_unlabeled_with_bound, unlabeled_representatives,
    EnumerationReport,
};
use ktz::extremal::{local_search, verify_extremal_theorems_with_bound, Goal, Objective, TheoremCheck};
use ktz::indices::index_value;
use ktz::io::{parse_edge_list, to_dot, write_ktree, IndexRecord};
use ktz::ktree::{
    cut_kcliques, hyper_pendant_decomposition, simplicial_layers, CliqueConvention, PendantDecomposition,
};
use ktz::{gen_kpath, gen_kstar, gen_random, recognize, Graph, IndexFamily, IndexMode, KTree, Params};

#[derive(Parser)]
#[command(name = "ktz", version, about = "k-trees and multiplicative Zagreb indices")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Kstar,
    Kpath,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Pi1c,
    Pi2,
    Nk,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Growth,
    Filter,
    Unlabeled,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GoalArg {
    Min,
    Max,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConventionArg {
    All,
    Single,
}

/// A graph read from a file or generated on the spot.
#[derive(Args)]
struct Source {
    /// Edge-list file ("-" for standard input).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Generator used when no input file is given.
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(short)]
    k: Option<usize>,
    #[arg(short)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a k-star, k-path or random k-tree.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute index values.
    Index {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = FamilyArg::All)]
        family: FamilyArg,
        /// Exponents for the first index, comma separated.
        #[arg(short, value_delimiter = ',', default_value = "1")]
        c: Vec<f64>,
    },
    /// Test whether the input is a k-tree.
    Recognize {
        #[command(flatten)]
        source: Source,
    },
    /// Iterated simplicial layers.
    Layers {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = ConventionArg::All)]
        convention: ConventionArg,
    },
    /// Cut k-cliques and hyper pendants.
    Cuts {
        #[command(flatten)]
        source: Source,
    },
    /// Census of k-trees on n vertices.
    Enumerate {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Growth)]
        method: MethodArg,
        /// List one representative per isomorphism class instead of every
        /// labeled k-tree.
        #[arg(long)]
        classes: bool,
    },
    /// Check the extremal bounds over every k-tree on n vertices.
    Verify {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(short, value_delimiter = ',', default_value = "1")]
        c: Vec<f64>,
    },
    /// Monotone rewiring search toward the extremal graph.
    Search {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = FamilyArg::Pi1c)]
        family: FamilyArg,
        #[arg(short, default_value_t = 1.0)]
        c: f64,
        #[arg(long, value_enum)]
        direction: GoalArg,
    },
    /// Compare the literal published closed forms with direct computation.
    Audit {
        #[arg(short)]
        k: usize,
        #[arg(short)]
        n: usize,
        #[arg(short, default_value_t = 1.0)]
        c: f64,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(String, u8), Failure>;

fn canon_bound() -> Result<usize, Failure> {
    match std::env::var("KTZ_MAX_CANON") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure(format!("KTZ_MAX_CANON must be a positive integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_CANON_BOUND),
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn generate(kind: Kind, k: usize, n: usize, seed: u64) -> Result<KTree, Failure> {
    Ok(match kind {
        Kind::Kstar => gen_kstar(k, n)?,
        Kind::Kpath => gen_kpath(k, n)?,
        Kind::Random => gen_random(k, n, seed)?,
    })
}

/// The graph and its k (0 when unknown).
fn load(src: &Source) -> Result<(Graph, usize), Failure> {
    if let Some(path) = &src.input {
        let (g, declared) = parse_edge_list(&read_input(path)?)?;
        return Ok((g, src.k.unwrap_or(declared)));
    }
    match (src.kind, src.k, src.n) {
        (Some(kind), Some(k), Some(n)) => Ok((generate(kind, k, n, src.seed)?.into_graph(), k)),
        _ => Err(Failure("give --input, or --kind with -k and -n".into())),
    }
}

fn load_ktree(src: &Source) -> Result<KTree, Failure> {
    let (g, k) = load(src)?;
    if k == 0 {
        return Err(Failure("k is unknown: declare it in the header or pass -k".into()));
    }
    recognize(&g, k).map_err(|f| Failure(format!("input is not a {k}-tree ({} irreducible vertices)", f.residue_vertices.len())))
}

fn check_c(cs: &[f64]) -> Result<(), Failure> {
    match cs.iter().find(|&&c| !(c > 0.0 && c.is_finite())) {
        Some(c) => Err(Failure(format!("c must be positive, got {c}"))),
        None => Ok(()),
    }
}

fn params_for(family: FamilyArg, cs: &[f64]) -> Result<Vec<Params>, Failure> {
    check_c(cs)?;
    let mut out = Vec::new();
    if matches!(family, FamilyArg::Pi1c | FamilyArg::All) {
        for &c in cs {
            out.push(Params::pi1c(c)?);
        }
    }
    if matches!(family, FamilyArg::Pi2 | FamilyArg::All) {
        out.push(Params::pi2());
    }
    if matches!(family, FamilyArg::Nk | FamilyArg::All) {
        out.push(Params::nk());
    }
    Ok(out)
}

fn edges_json(g: &Graph) -> Value {
    json!(g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>())
}

fn ktree_json(t: &KTree) -> Value {
    let e = t.elimination();
    json!({
        "n": t.n(),
        "k": t.k(),
        "edges": edges_json(t.graph()),
        "elimination": e.order,
        "residue": e.residue,
    })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn no_dot(what: &str) -> Failure {
    Failure(format!("dot output needs a graph payload; {what} produces none"))
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn cmd_gen(format: Format, kind: Kind, k: usize, n: usize, seed: u64) -> Outcome {
    let t = generate(kind, k, n, seed)?;
    Ok((
        match format {
            Format::Text => write_ktree(&t),
            Format::Json => pretty(&ktree_json(&t)),
            Format::Dot => to_dot(t.graph(), "ktree"),
        },
        0,
    ))
}

fn value_text(p: &Params, rec: &IndexRecord) -> String {
    let name = match p.family {
        IndexFamily::Pi1c => format!("PI1C c={}", p.c),
        f => f.to_string(),
    };
    let exact = rec.exact.as_deref().unwrap_or("-");
    let log10 = rec.log10.map_or("-".to_string(), |l| format!("{l:.12}"));
    format!("{name}: exact={exact} log10={log10}")
}

fn cmd_index(format: Format, source: &Source, family: FamilyArg, cs: &[f64]) -> Outcome {
    let (g, _) = load(source)?;
    if format == Format::Dot {
        return Err(no_dot("index"));
    }
    let mut out = String::new();
    for p in params_for(family, cs)? {
        let v = index_value(&g, p, IndexMode::Both)?;
        let rec = IndexRecord::new(p, &v);
        match format {
            Format::Json => out.push_str(&(serde_json::to_string(&rec)? + "\n")),
            _ => out.push_str(&(value_text(&p, &rec) + "\n")),
        }
    }
    Ok((out, 0))
}

fn cmd_recognize(format: Format, source: &Source) -> Outcome {
    let (g, k) = load(source)?;
    if k == 0 {
        return Err(Failure("k is unknown: declare it in the header or pass -k".into()));
    }
    let result = recognize(&g, k);
    let out = match (format, &result) {
        (Format::Dot, _) => to_dot(&g, "graph"),
        (Format::Json, Ok(t)) => pretty(&json!({"is_ktree": true, "ktree": ktree_json(t)})),
        (Format::Json, Err(f)) => pretty(&json!({
            "is_ktree": false,
            "k": k,
            "n": g.n(),
            "residue_vertices": f.residue_vertices,
            "residue_edges": edges_json(&f.residue),
        })),
        (Format::Text, Ok(t)) => {
            let e = t.elimination();
            format!(
                "{k}-tree on {} vertices\nelimination: {}\nresidue: {}\n",
                g.n(),
                join(&e.order, " "),
                join(&e.residue, " ")
            )
        }
        (Format::Text, Err(f)) => format!(
            "not a {k}-tree: {} vertices remain irreducible: {}\n",
            f.residue_vertices.len(),
            join(&f.residue_vertices, " ")
        ),
    };
    Ok((out, 0))
}

fn cmd_layers(format: Format, source: &Source, convention: ConventionArg) -> Outcome {
    let t = load_ktree(source)?;
    let conv = match convention {
        ConventionArg::All => CliqueConvention::AllVertices,
        ConventionArg::Single => CliqueConvention::SingleVertex,
    };
    let layers = simplicial_layers(&t, conv);
    let out = match format {
        Format::Dot => return Err(no_dot("layers")),
        Format::Json => pretty(&json!({"layers": layers.layers, "terminal": layers.terminal})),
        Format::Text => {
            let mut s = String::new();
            for (i, l) in layers.layers.iter().enumerate() {
                s.push_str(&format!("S{}: {}\n", i + 1, join(l, " ")));
            }
            s.push_str(format!("terminal: {}", join(&layers.terminal, " ")).trim_end());
            s.push('\n');
            s
        }
    };
    Ok((out, 0))
}

fn cmd_cuts(format: Format, source: &Source) -> Outcome {
    let t = load_ktree(source)?;
    let cuts = cut_kcliques(&t);
    let pendants = hyper_pendant_decomposition(&t);
    let out = match format {
        Format::Dot => return Err(no_dot("cuts")),
        Format::Json => {
            let cuts: Vec<Value> = cuts
                .iter()
                .map(|c| json!({"clique": c.clique, "w": c.w(), "components": c.components}))
                .collect();
            let pend = match &pendants {
                PendantDecomposition::WholeGraph => json!("whole-graph"),
                PendantDecomposition::Pendants(ps) => json!(ps
                    .iter()
                    .map(|p| json!({"cut": p.cut_clique, "branch": p.branch, "tip": p.simplicial_tip}))
                    .collect::<Vec<_>>()),
            };
            pretty(&json!({"cuts": cuts, "hyper_pendants": pend}))
        }
        Format::Text => {
            let mut s = String::new();
            for c in &cuts {
                let comps: Vec<String> = c.components.iter().map(|x| format!("{{{}}}", join(x, ","))).collect();
                s.push_str(&format!("cut {{{}}} w={} | {}\n", join(&c.clique, ","), c.w(), comps.join(" ")));
            }
            match &pendants {
                PendantDecomposition::WholeGraph => s.push_str("hyper pendants: whole graph\n"),
                PendantDecomposition::Pendants(ps) => {
                    for p in ps {
                        s.push_str(&format!(
                            "hyper pendant at {{{}}}: {{{}}} tip {}\n",
                            join(&p.cut_clique, ","),
                            join(&p.branch, ","),
                            p.simplicial_tip
                        ));
                    }
                }
            }
            s
        }
    };
    Ok((out, 0))
}

fn summary_json(r: &EnumerationReport) -> Value {
    json!({
        "k": r.k,
        "n": r.n,
        "labeled": r.labeled_count.to_string(),
        "unlabeled": r.unlabeled_count,
        "method": r.method.to_string(),
    })
}

fn cmd_enumerate(format: Format, k: usize, n: usize, method: MethodArg, classes: bool) -> Outcome {
    let bound = canon_bound()?;
    let mut report = match method {
        MethodArg::Growth => enumerate_labeled_growth(k, n)?,
        MethodArg::Filter => enumerate_labeled_filter(k, n)?,
        MethodArg::Unlabeled => enumerate_unlabeled_with_bound(k, n, bound)?,
    };
    report.canon_bound = bound;
    if report.unlabeled_count.is_none() && n <= bound {
        report = unlabeled_representatives(&report)?;
    }
    if classes {
        report.labeled.clear();
    }
    let out = match format {
        Format::Dot => return Err(no_dot("enumerate")),
        Format::Json => pretty(&json!({"summary": summary_json(&report), "graphs": report.census_lines()})),
        Format::Text => {
            let mut s = join(report.census_lines(), "\n");
            if !s.is_empty() {
                s.push('\n');
            }
            s + &serde_json::to_string(&summary_json(&report))? + "\n"
        }
    };
    Ok((out, 0))
}

fn class_name(k: usize, n: usize, i: usize, check: &TheoremCheck<f64>) -> String {
    if check.scan.star_class == Some(i) && check.scan.path_class == Some(i) {
        format!("S_{{{k},{}}} = P_{n}^{k}", n - k)
    } else if check.scan.star_class == Some(i) {
        format!("S_{{{k},{}}}", n - k)
    } else if check.scan.path_class == Some(i) {
        format!("P_{n}^{k}")
    } else {
        format!("class {i}")
    }
}

fn value_str(v: &ktz::Index) -> String {
    match (&v.exact, v.log10()) {
        (Some(x), _) => x.to_string(),
        (None, Some(l)) => format!("10^{l:.9}"),
        (None, None) => "-".into(),
    }
}

fn check_label(c: &TheoremCheck<f64>) -> String {
    match c.family() {
        IndexFamily::Pi1c => format!("PI1C c={}", c.scan.params.c),
        f => f.to_string(),
    }
}

fn cmd_verify(format: Format, k: usize, n: usize, cs: &[f64]) -> Outcome {
    check_c(cs)?;
    let report = verify_extremal_theorems_with_bound(k, n, cs, canon_bound()?)?;
    let code = if report.falsified() { 2 } else { 0 };
    let classes = &report.census.representatives;
    let out = match format {
        Format::Dot => return Err(no_dot("verify")),
        Format::Json => {
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "family": c.family().to_string(),
                        "c": (c.family() == IndexFamily::Pi1c).then_some(c.scan.params.c),
                        "min": IndexRecord::new(c.scan.params, c.scan.min_value()).exact,
                        "min_log10": c.scan.min_value().log10(),
                        "argmin": c.scan.argmin,
                        "max": IndexRecord::new(c.scan.params, c.scan.max_value()).exact,
                        "max_log10": c.scan.max_value().log10(),
                        "argmax": c.scan.argmax,
                        "expected_min": c.expected_min.to_string(),
                        "expected_max": c.expected_max.to_string(),
                        "holds": c.holds,
                        "unique": c.unique,
                    })
                })
                .collect();
            let rows: Vec<Value> = classes
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    json!({
                        "class": i,
                        "degrees": r.tree.graph().degree_sequence().sorted_desc(),
                        "labeled_members": r.labeled_members.to_string(),
                        "values": report.checks.iter().map(|c| IndexRecord::new(c.scan.params, &c.scan.values[i])).collect::<Vec<_>>(),
                    })
                })
                .collect();
            pretty(&json!({
                "k": k,
                "n": n,
                "labeled": report.census.labeled_count.to_string(),
                "unlabeled": classes.len(),
                "degenerate": report.degenerate,
                "falsified": report.falsified(),
                "checks": checks,
                "classes": rows,
            }))
        }
        Format::Text => {
            let mut s = format!(
                "k={k} n={n}: {} labeled, {} unlabeled k-trees\n",
                report.census.labeled_count,
                classes.len()
            );
            let header: Vec<String> = report.checks.iter().map(check_label).collect();
            s.push_str(&format!("class\tdegrees\t{}\n", header.join("\t")));
            for (i, r) in classes.iter().enumerate() {
                let degs = join(r.tree.graph().degree_sequence().sorted_desc(), ",");
                let vals: Vec<String> = report.checks.iter().map(|c| value_str(&c.scan.values[i])).collect();
                let name = class_name(k, n, i, &report.checks[0]);
                s.push_str(&format!("{name}\t{degs}\t{}\n", vals.join("\t")));
            }
            if report.degenerate {
                s.push_str("degenerate: n <= k+2, the k-star and k-path coincide\n");
            }
            for c in &report.checks {
                let min_at = join(c.scan.argmin.iter().map(|&i| class_name(k, n, i, c)), ", ");
                let max_at = join(c.scan.argmax.iter().map(|&i| class_name(k, n, i, c)), ", ");
                let verdict = if c.holds { "bounds hold" } else { "FALSIFIED" };
                let uniq = if c.unique { "unique" } else { "not unique" };
                s.push_str(&format!(
                    "{}: min {} @ {min_at}; max {} @ {max_at}; {verdict}; {uniq}\n",
                    check_label(c),
                    value_str(c.scan.min_value()),
                    value_str(c.scan.max_value()),
                ));
            }
            s
        }
    };
    Ok((out, code))
}

fn cmd_search(format: Format, source: &Source, family: FamilyArg, c: f64, direction: GoalArg) -> Outcome {
    let t = load_ktree(source)?;
    check_c(&[c])?;
    let params = match family {
        FamilyArg::Pi1c => Params::pi1c(c)?,
        FamilyArg::Pi2 => Params::pi2(),
        FamilyArg::Nk => Params::nk(),
        FamilyArg::All => return Err(Failure("search needs a single family".into())),
    };
    let goal = match direction {
        GoalArg::Min => Goal::Minimize,
        GoalArg::Max => Goal::Maximize,
    };
    let report = local_search(&t, Objective::new(params, goal));
    let out = match format {
        Format::Dot => to_dot(report.fixed_point.graph(), "fixed_point"),
        Format::Text => report.to_trace(),
        Format::Json => {
            let steps: Vec<Value> = report
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "kind": s.mv.kind.name(),
                        "move": s.mv.detail.to_string(),
                        "remove": s.mv.remove,
                        "add": s.mv.add,
                        "ln_before": s.before,
                        "ln_after": s.after,
                        "dln_pi1c": s.delta.pi1c,
                        "dln_pi2": s.delta.pi2,
                        "neutral": s.neutral,
                    })
                })
                .collect();
            pretty(&json!({
                "objective": report.objective.to_string(),
                "start": ktree_json(&report.start),
                "steps": steps,
                "fixed_point": ktree_json(&report.fixed_point),
                "fixed_point_class": report.fixed_point_class.to_string(),
            }))
        }
    };
    Ok((out, 0))
}

fn quantity_str(q: &AuditQuantity<f64>) -> String {
    match q {
        AuditQuantity::Degrees(d) => d.to_string(),
        AuditQuantity::Value(v) => value_str(v),
    }
}

fn cmd_audit(format: Format, k: usize, n: usize, c: f64) -> Outcome {
    check_c(&[c])?;
    let report = audit_literal_formulas(k, n, c)?;
    let out = match format {
        Format::Dot => return Err(no_dot("audit")),
        Format::Json => {
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "item": e.item,
                        "formula": e.formula,
                        "literal": quantity_str(&e.literal),
                        "direct": quantity_str(&e.direct),
                        "agrees": e.agrees,
                    })
                })
                .collect();
            pretty(&json!({"k": k, "n": n, "c": c, "entries": entries}))
        }
        Format::Text => {
            let mut s = String::new();
            for e in &report.entries {
                let tag = if e.agrees { "agrees" } else { "DISCREPANCY" };
                s.push_str(&format!(
                    "{}: literal {} vs direct {} [{tag}] ({})\n",
                    e.item,
                    quantity_str(&e.literal),
                    quantity_str(&e.direct),
                    e.formula
                ));
            }
            s.push_str(&format!("{} discrepancies\n", report.discrepancies().count()));
            s
        }
    };
    Ok((out, 0))
}

fn run(cli: &Cli) -> Outcome {
    let f = cli.format;
    match &cli.command {
        Command::Gen { kind, k, n, seed } => cmd_gen(f, *kind, *k, *n, *seed),
        Command::Index { source, family, c } => cmd_index(f, source, *family, c),
        Command::Recognize { source } => cmd_recognize(f, source),
        Command::Layers { source, convention } => cmd_layers(f, source, *convention),
        Command::Cuts { source } => cmd_cuts(f, source),
        Command::Enumerate { k, n, method, classes } => cmd_enumerate(f, *k, *n, *method, *classes),
        Command::Verify { k, n, c } => cmd_verify(f, *k, *n, c),
        Command::Search { source, family, c, direction } => cmd_search(f, source, *family, *c, *direction),
        Command::Audit { k, n, c } => cmd_audit(f, *k, *n, *c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((text, code)) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::from(code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
