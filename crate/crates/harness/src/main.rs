use std::error::Error;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ecctree_core::enumeration::{filter_class, free_trees_capped, DEFAULT_MAX_N};
use ecctree_core::families::{FamilyName, FamilySpec};
use ecctree_core::invariants::{compute_invariant, ree, InvariantKind};
use ecctree_core::io::{parse_edge_lists, parse_graph6, write_edge_list, write_graph6};
use ecctree_core::parameters::ParamClass;
use ecctree_core::rational::{to_decimal_string, to_fraction_string};
use ecctree_core::transforms::{
    alpha_transform, diametral_pendant_shift, pendant_regraft, rho_transform, theta_transform, GraftKind, GraftOutcome,
};
use ecctree_core::Tree;
use ecctree_harness::extremal::{extremal_search_excluding, Exclusion, Objective, SearchConfig};
use ecctree_harness::fuzz::{fuzz_until, fuzz_with, FuzzConfig};
use ecctree_harness::report::{extremal_emit, fuzz_emit, report_emit, Format};
use ecctree_harness::verify::{verify_range, TheoremId, Verdict, VerifyConfig};
use serde_json::json;

type Res<T> = Result<T, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "ecctree", version, about = "Exact eccentricity invariants and extremal checks on trees")]
struct Cli {
    /// Largest tree order the enumerator accepts.
    #[arg(long, global = true, env = "ECCTREE_MAX_N", default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    /// Worker threads for enumeration (defaults to the available cores).
    #[arg(long, global = true, env = "ECCTREE_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate invariants of the trees in FILE (edge list or graph6; `-` for stdin).
    Invariants {
        file: String,
        /// Restrict to these kinds (repeatable).
        #[arg(long = "kind")]
        kinds: Vec<InvariantKind>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Build a named family instance.
    Family {
        /// Family as `name:p1,p2,...`; alternative to --name/--params.
        spec: Option<String>,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, value_delimiter = ',')]
        params: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Emit::Edgelist)]
        emit: Emit,
    },
    /// Apply a grafting rewrite to the tree in FILE.
    Transform(TransformArgs),
    /// List all free trees on N vertices.
    Enumerate {
        n: usize,
        #[arg(long)]
        class: Option<ParamClass>,
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value_t = Emit::Edgelist)]
        emit: Emit,
    },
    /// Optimize REE over a class of trees on N vertices.
    Extremal {
        n: usize,
        #[arg(long)]
        class: ParamClass,
        #[arg(long, default_value = "max")]
        objective: Objective,
        #[arg(long)]
        exclude: Option<Exclusion>,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Check a theorem (or `all`) over a range of orders.
    Verify {
        theorem: String,
        /// Order or inclusive range, e.g. `9` or `8..13`.
        #[arg(long = "n")]
        orders: String,
        #[arg(long, value_delimiter = ',')]
        params: Option<Vec<usize>>,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 2000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Fuzz a rewrite against its inequality.
    Fuzz {
        kind: GraftKind,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Keep going until this many applications had their precondition
        /// hold; --trials then caps the run.
        #[arg(long)]
        until_held: Option<u64>,
        #[arg(long, default_value_t = 4)]
        min_order: usize,
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    kind: GraftKind,
    #[arg(long = "in")]
    input: String,
    #[arg(long)]
    from: Option<usize>,
    #[arg(long)]
    to: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    roots: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = Emit::Edgelist)]
    emit: Emit,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Edgelist,
    Graph6,
}

fn read_input(path: &str) -> Res<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

/// Edge lists separated by blank lines, or one graph6 string per line.
fn read_trees(path: &str) -> Res<Vec<Tree>> {
    let text = read_input(path)?;
    let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')).unwrap_or("");
    let is_graph6 = first.starts_with(">>graph6<<") || first.parse::<usize>().is_err();
    if is_graph6 {
        let trees = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_graph6)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(trees)
    } else {
        Ok(parse_edge_lists(&text)?)
    }
}

fn emit_tree(out: &mut dyn Write, t: &Tree, emit: Emit) -> io::Result<()> {
    match emit {
        Emit::Edgelist => write!(out, "{}", write_edge_list(t)),
        Emit::Graph6 => writeln!(out, "{}", write_graph6(t)),
    }
}

fn emit_trees(out: &mut dyn Write, trees: impl IntoIterator<Item = Tree>, emit: Emit) -> io::Result<()> {
    for (i, t) in trees.into_iter().enumerate() {
        if i > 0 && matches!(emit, Emit::Edgelist) {
            writeln!(out)?;
        }
        emit_tree(out, &t, emit)?;
    }
    Ok(())
}

fn parse_orders(s: &str) -> Res<Vec<usize>> {
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse()?, b.trim().trim_start_matches('=').parse()?),
        None => {
            let n = s.trim().parse()?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}").into());
    }
    Ok((lo..=hi).collect())
}

fn run_invariants(out: &mut dyn Write, file: &str, kinds: Vec<InvariantKind>, format: Format) -> Res<bool> {
    let trees = read_trees(file)?;
    let kinds = if kinds.is_empty() { InvariantKind::ALL.to_vec() } else { kinds };
    let mut rows = Vec::new();
    for (i, t) in trees.iter().enumerate() {
        for &kind in &kinds {
            let (value, decimal) = match compute_invariant(t, kind) {
                Ok(v) => (to_fraction_string(&v), to_decimal_string(&v, 12)),
                Err(e) => (String::from("undefined"), e.to_string()),
            };
            rows.push((i, t.order(), kind, value, decimal));
        }
    }
    match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|(i, n, k, v, d)| json!({"tree": i, "n": n, "kind": k.name(), "value": v, "decimal": d}))
                .collect();
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["tree", "n", "kind", "value", "decimal"])?;
            for (i, n, k, v, d) in &rows {
                w.write_record([i.to_string(), n.to_string(), k.name().to_string(), v.clone(), d.clone()])?;
            }
            w.flush()?;
        }
        Format::Text => {
            let width = kinds.iter().map(|k| k.name().len()).max().unwrap_or(0);
            for (j, (i, n, k, v, d)) in rows.iter().enumerate() {
                if j % kinds.len() == 0 {
                    writeln!(out, "# tree {i} (n = {n})")?;
                }
                writeln!(out, "{:<width$}  {v}  {d}", k.name())?;
            }
        }
    }
    Ok(true)
}

fn run_family(
    out: &mut dyn Write,
    spec: Option<String>,
    name: Option<String>,
    params: Vec<usize>,
    emit: Emit,
) -> Res<bool> {
    let spec: FamilySpec = match (spec, name) {
        (Some(s), None) => s.parse()?,
        (None, Some(n)) => FamilySpec::new(n.parse()?, params),
        _ => {
            let names: Vec<String> = FamilyName::all().map(|f| format!("{} ({})", f.name(), f.usage())).collect();
            return Err(format!("give either SPEC or --name; families: {}", names.join(", ")).into());
        }
    };
    emit_trees(out, spec.build()?, emit)?;
    Ok(true)
}

fn run_transform(out: &mut dyn Write, a: TransformArgs) -> Res<bool> {
    let trees = read_trees(&a.input)?;
    let [t] = trees.as_slice() else {
        return Err("transform expects exactly one tree".into());
    };
    let need = |x: Option<usize>, what: &str| x.ok_or_else(|| format!("--{what} is required for {}", a.kind));
    let mut strict = None;
    let outcome: GraftOutcome = match a.kind {
        GraftKind::Rho => {
            let (v, w) = (need(a.from, "from")?, need(a.to, "to")?);
            t.check_vertex(v)?;
            let roots = a.roots.unwrap_or_else(|| t.neighbors(v).iter().copied().filter(|&x| x != w).collect());
            rho_transform(t, w, v, &roots)?
        }
        GraftKind::Alpha => {
            let (vl, v1) = (need(a.from, "from")?, need(a.to, "to")?);
            t.check_vertex(vl)?;
            t.check_vertex(v1)?;
            let roots = match a.roots {
                Some(r) => r,
                None => {
                    let path = t.path_between(v1, vl);
                    let before = path[path.len().saturating_sub(2)];
                    t.neighbors(vl).iter().copied().filter(|&x| x != before).collect()
                }
            };
            alpha_transform(t, v1, vl, &roots)?
        }
        GraftKind::Theta => {
            let (v, w) = (need(a.from, "from")?, need(a.to, "to")?);
            t.check_vertex(v)?;
            t.check_vertex(w)?;
            let path = t.path_between(v, w);
            if path.len() != 3 {
                return Err(format!("theta needs {v} and {w} at distance 2").into());
            }
            theta_transform(t, v, path[1], w)?
        }
        GraftKind::DiametralShift => {
            let (o, s) = diametral_pendant_shift(t)?;
            strict = Some(s);
            o
        }
        GraftKind::PendantRegraft => pendant_regraft(t)?,
    };
    emit_tree(out, &outcome.tree, a.emit)?;
    let moved: Vec<String> = outcome.graft.moved.iter().map(usize::to_string).collect();
    write!(
        out,
        "# kind={} from={} to={} moved={} precondition_held={} ree_before={} ree_after={}",
        outcome.graft.kind,
        outcome.graft.from,
        outcome.graft.to,
        moved.join(","),
        if outcome.precondition_held { "yes" } else { "no" },
        to_fraction_string(&ree(t)),
        to_fraction_string(&ree(&outcome.tree)),
    )?;
    if let Some(s) = strict {
        write!(out, " strict={}", if s { "yes" } else { "no" })?;
    }
    if let Some(note) = &outcome.note {
        write!(out, " note=\"{note}\"")?;
    }
    writeln!(out)?;
    Ok(true)
}

fn run(cli: Cli, out: &mut dyn Write) -> Res<bool> {
    let search =
        SearchConfig { workers: cli.workers.unwrap_or_else(ecctree_harness::default_workers).max(1), max_n: cli.max_n };
    match cli.command {
        Command::Invariants { file, kinds, format } => run_invariants(out, &file, kinds, format),
        Command::Family { spec, name, params, emit } => run_family(out, spec, name, params, emit),
        Command::Transform(a) => run_transform(out, a),
        Command::Enumerate { n, class, count_only, emit } => {
            let stream = free_trees_capped(n, cli.max_n)?;
            let trees: Box<dyn Iterator<Item = Tree>> = match class {
                Some(c) => Box::new(filter_class(stream, c)),
                None => Box::new(stream),
            };
            if count_only {
                writeln!(out, "{}", trees.count())?;
            } else {
                emit_trees(out, trees, emit)?;
            }
            Ok(true)
        }
        Command::Extremal { n, class, objective, exclude, format } => {
            let r = extremal_search_excluding(n, class, objective, exclude, search)?;
            extremal_emit(&r, format, out)?;
            Ok(true)
        }
        Command::Verify { theorem, orders, params, format, trials, seed } => {
            let ids: Vec<TheoremId> = if theorem.eq_ignore_ascii_case("all") {
                TheoremId::ALL.to_vec()
            } else {
                theorem.split(',').map(str::parse).collect::<Result<_, _>>()?
            };
            let config = VerifyConfig { search, fuzz_trials: trials, fuzz_seed: seed };
            let orders = parse_orders(&orders)?;
            let mut reports = Vec::new();
            for id in ids {
                let feasible = orders.iter().copied().filter(|&n| n >= id.min_order() || params.is_some());
                reports.extend(verify_range(id, feasible, params.as_deref(), &config)?);
            }
            report_emit(&reports, format, out)?;
            Ok(!reports.is_empty() && reports.iter().all(|r| r.verdict == Verdict::Pass))
        }
        Command::Fuzz { kind, trials, seed, until_held, min_order, max_order, format } => {
            if min_order < 1 || min_order > max_order {
                return Err("need 1 <= --min-order <= --max-order".into());
            }
            let config = FuzzConfig { min_n: min_order, max_n: max_order };
            let summary = match until_held {
                Some(h) if config == FuzzConfig::default() => fuzz_until(kind, h, seed, trials),
                Some(_) => return Err("--until-held uses the default order range".into()),
                None => fuzz_with(kind, trials, seed, config),
            };
            fuzz_emit(&summary, format, out)?;
            Ok(summary.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
