//! `treegraph`: analyze a digraph, emit its tree graph, or verify the
//! determinant factorizations on it.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use treegraph_core::digraph::{DiGraph, GraphFile};
use treegraph_core::exploration::{multiplicity_table_with, MultiplicityRecord};
use treegraph_core::factorization::{
    verify_adjacency_factorization, verify_main_theorem, verify_minors, verify_spanning_ratio, AdjacencyReport, Analysis,
    MainTheoremReport, MinorReport, SpanningRatioReport, TrialOutcome,
};
use treegraph_core::fixtures::{builtin_checks, Builtin, CheckRecord};
use treegraph_core::multiedge::{transfer_trees, MultiDiGraph, TransferReport};
use treegraph_core::operators::Weights;
use treegraph_core::treegraph::{CyclePartitionReport, EulerianReport, TreeGraph, TreeGraphFile};
use treegraph_core::{Error, Guards};

/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "treegraph", version, about = "Tree graphs of digraphs and their determinant factorizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Strong connectivity, tree count and multiplicity table.
    Analyze(InputArgs),
    /// Emit the tree graph with its Eulerian and cycle-partition checks.
    Treegraph(InputArgs),
    /// Check the factorization identities; exit 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Args)]
struct InputArgs {
    /// Graph JSON file.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    input: Option<PathBuf>,
    /// cycle:n, complete:n, bouquet:n1,n2,..., hypercube:n or figure.
    #[arg(long)]
    builtin: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest number of spanning trees enumerated.
    #[arg(long, default_value_t = Guards::default().max_trees)]
    max_trees: usize,
    /// Largest dimension of a lifted operator.
    #[arg(long, default_value_t = Guards::default().lifted_dim)]
    max_dim: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = DEFAULT_SEED, value_parser = clap::value_parser!(u64).range(1..))]
    seed: u64,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Compare polynomials, failing with a guard error when too large.
    #[arg(long)]
    symbolic: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure { code: if e.is_guard() { 3 } else { 2 }, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

struct Loaded {
    name: String,
    graph: DiGraph,
    builtin: Option<Builtin>,
    multi: Option<MultiDiGraph>,
}

impl InputArgs {
    fn guards(&self) -> Guards {
        Guards { max_trees: self.max_trees, lifted_dim: self.max_dim, ..Guards::default() }
    }

    fn load(&self) -> Result<Loaded, Failure> {
        if let Some(name) = &self.builtin {
            let b: Builtin = name.parse()?;
            return Ok(Loaded { name: format!("builtin:{b}"), graph: b.graph()?, builtin: Some(b), multi: None });
        }
        let path = self.input.as_ref().expect("clap requires an input");
        let text = std::fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
        let describe = |e: Error| input_error(format!("{}: {e}", path.display()));
        let file = GraphFile::parse(&text).map_err(describe)?;
        let name = path.display().to_string();
        if file.multi == Some(true) {
            let mg = MultiDiGraph::from_json(&text).map_err(describe)?;
            let graph = mg.subdivide().simple;
            Ok(Loaded { name, graph, builtin: None, multi: Some(mg) })
        } else {
            Ok(Loaded { name, graph: file.to_digraph().map_err(describe)?, builtin: None, multi: None })
        }
    }

    fn emit(&self, json: impl Serialize, text: impl FnOnce() -> String, dot: Option<String>) -> Result<(), Failure> {
        let body = match self.format {
            Format::Json => serde_json::to_string_pretty(&json).expect("reports serialize") + "\n",
            Format::Text => text(),
            Format::Dot => dot.ok_or_else(|| input_error("--format dot is only available for the treegraph command".into()))?,
        };
        match &self.out {
            Some(path) => std::fs::write(path, body).map_err(|e| input_error(format!("{}: {e}", path.display()))),
            None => {
                print!("{body}");
                Ok(())
            }
        }
    }
}

#[derive(Serialize)]
struct GraphSummary {
    input: String,
    vertices: usize,
    edges: usize,
    /// Set when a multigraph was replaced by its subdivision.
    subdivided: bool,
}

impl GraphSummary {
    fn new(l: &Loaded) -> GraphSummary {
        GraphSummary {
            input: l.name.clone(),
            vertices: l.graph.vertex_count(),
            edges: l.graph.edge_count(),
            subdivided: l.multi.is_some(),
        }
    }
}

#[derive(Serialize)]
struct DegreeIdentity {
    sum: u64,
    tree_count: usize,
    holds: bool,
}

#[derive(Serialize)]
struct AnalyzeReport {
    graph: GraphSummary,
    strongly_connected: bool,
    tree_count: usize,
    /// Nonzero multiplicities.
    multiplicities: Vec<MultiplicityRecord>,
    degree_identity: DegreeIdentity,
}

fn analyze(args: &InputArgs) -> Result<bool, Failure> {
    let l = args.load()?;
    if !l.graph.is_strongly_connected() {
        return Err(input_error(format!("{}: graph is not strongly connected; multiplicities are undefined", l.name)));
    }
    let table = multiplicity_table_with(&l.graph, &args.guards())?;
    let multiplicities: Vec<MultiplicityRecord> = table.to_records(&l.graph).into_iter().filter(|r| r.m > 0).collect();
    let sum = table.degree_sum();
    let report = AnalyzeReport {
        graph: GraphSummary::new(&l),
        strongly_connected: true,
        tree_count: table.tree_count,
        multiplicities,
        degree_identity: DegreeIdentity { sum, tree_count: table.tree_count, holds: sum == table.tree_count as u64 },
    };
    let text = || {
        let mut s = format!("{}: {} vertices, {} edges, {} spanning trees\n", l.name, report.graph.vertices, report.graph.edges, report.tree_count);
        for r in &report.multiplicities {
            let _ = writeln!(s, "  m({{{}}}) = {}", r.w.join(","), r.m);
        }
        let _ = writeln!(s, "degree identity: {} = {} ({})", sum, table.tree_count, verdict(report.degree_identity.holds));
        s
    };
    args.emit(&report, text, None)?;
    Ok(report.degree_identity.holds)
}

#[derive(Serialize)]
struct TreeGraphReport {
    graph: GraphSummary,
    tree_graph: TreeGraphFile,
    strongly_connected: bool,
    eulerian: EulerianReport,
    cycle_partition: CyclePartitionReport,
}

fn treegraph(args: &InputArgs) -> Result<bool, Failure> {
    let l = args.load()?;
    let tg = TreeGraph::build_with(&l.graph, &args.guards())?;
    let report = TreeGraphReport {
        graph: GraphSummary::new(&l),
        tree_graph: tg.to_file(),
        strongly_connected: tg.is_strongly_connected(),
        eulerian: tg.check_eulerian(),
        cycle_partition: tg.verify_cycle_partition()?,
    };
    let holds = report.eulerian.eulerian && report.cycle_partition.ok() && (report.strongly_connected || !l.graph.is_strongly_connected());
    let text = || {
        format!(
            "{}: tree graph with {} vertices and {} edges\neulerian: {}\ncycle partition: {} cycles ({})\n",
            l.name,
            tg.tree_count(),
            tg.edges().len(),
            verdict(report.eulerian.eulerian),
            report.cycle_partition.cycle_count,
            verdict(report.cycle_partition.ok()),
        )
    };
    args.emit(&report, text, Some(tg.to_dot()))?;
    Ok(holds)
}

#[derive(Serialize)]
struct VerifyReport {
    graph: GraphSummary,
    seed: u64,
    trials: u64,
    main_theorem: MainTheoremReport,
    minors: MinorReport,
    spanning_ratio: SpanningRatioReport,
    /// At unit weights.
    adjacency: AdjacencyReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    builtin_checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    subdivision: Vec<TransferReport>,
    holds: bool,
}

fn verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let input = &args.input;
    let l = input.load()?;
    if !l.graph.is_strongly_connected() {
        return Err(input_error(format!("{}: graph is not strongly connected", l.name)));
    }
    let guards = input.guards();
    let an = Analysis::new(&l.graph, &guards)?;
    let main_theorem = verify_main_theorem(&an, args.trials, args.seed, args.symbolic, &guards)?;
    let minors = verify_minors(&an, args.trials, args.seed, &guards)?;
    let spanning_ratio = verify_spanning_ratio(&an, args.trials, args.seed, args.symbolic, &guards)?;
    let adjacency = verify_adjacency_factorization(&an, &Weights::unit(&l.graph), &guards)?;
    let builtin_checks = match &l.builtin {
        Some(b) => builtin_checks(b, args.seed, &guards)?,
        None => Vec::new(),
    };
    let subdivision = match &l.multi {
        Some(mg) => {
            let sub = mg.subdivide();
            (0..mg.vertex_count()).map(|v| transfer_trees(mg, &sub, v, guards.max_trees)).collect::<Result<_, _>>()?
        }
        None => Vec::new(),
    };
    let holds = main_theorem.holds
        && minors.holds
        && spanning_ratio.holds
        && adjacency.holds
        && builtin_checks.iter().all(|c| c.holds)
        && subdivision.iter().all(|t| t.holds);
    let report = VerifyReport {
        graph: GraphSummary::new(&l),
        seed: args.seed,
        trials: args.trials,
        main_theorem,
        minors,
        spanning_ratio,
        adjacency,
        builtin_checks,
        subdivision,
        holds,
    };
    if !holds {
        dump_failures(&report);
    }
    let text = || verify_text(&l.name, &report);
    input.emit(&report, text, None)?;
    Ok(holds)
}

fn dump_failures(r: &VerifyReport) {
    let trials = |name: &str, ts: &[TrialOutcome]| {
        for t in ts.iter().filter(|t| !t.holds) {
            let asg = serde_json::to_string(&t.assignment).expect("assignment serializes");
            eprintln!("{name} failed: seed {}, trial {}, assignment {asg}", r.seed, t.trial);
        }
    };
    trials("main theorem", &r.main_theorem.trials);
    trials("spanning ratio", &r.spanning_ratio.trials);
    for t in r.minors.trials.iter().filter(|t| t.assignment.is_some()) {
        let asg = serde_json::to_string(&t.assignment).expect("assignment serializes");
        eprintln!("minor identity failed: seed {}, trial {}, assignment {asg}", r.seed, t.trial);
    }
    if r.main_theorem.symbolic == Some(false) || r.spanning_ratio.symbolic == Some(false) {
        eprintln!("polynomial identity failed");
    }
    if !r.adjacency.holds {
        eprintln!("characteristic polynomial factorization failed at unit weights");
    }
    for c in r.builtin_checks.iter().filter(|c| !c.holds) {
        eprintln!("{} failed: expected {}, got {}", c.name, c.expected, c.actual);
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn verify_text(name: &str, r: &VerifyReport) -> String {
    let mut s = format!("{name}: lifted dimension {}, seed {}, {} trials\n", r.main_theorem.lifted_dim, r.seed, r.trials);
    let symbolic = |x: Option<bool>| match x {
        Some(true) => " (also as polynomials)",
        Some(false) => " (polynomial check FAILED)",
        None => "",
    };
    let _ = writeln!(s, "det of lifted operator factorizes: {}{}", verdict(r.main_theorem.holds), symbolic(r.main_theorem.symbolic));
    for f in &r.main_theorem.factors {
        let _ = writeln!(s, "  det(L_{{{}}})^{}", f.w.join(","), f.m);
    }
    let sign = r.minors.sign.map_or("none".to_string(), |x| x.to_string());
    let _ = writeln!(s, "minors are +-pi_a Phi: {} (sign {}, method {:?})", verdict(r.minors.holds), sign, r.minors.method);
    let _ = writeln!(s, "F_TG = Phi F_G: {}{}", verdict(r.spanning_ratio.holds), symbolic(r.spanning_ratio.symbolic));
    let _ = writeln!(s, "characteristic polynomial factorizes: {}", verdict(r.adjacency.holds));
    for c in &r.builtin_checks {
        if c.expected == "true" {
            let _ = writeln!(s, "{}: {}", c.name, verdict(c.holds));
        } else {
            let _ = writeln!(s, "{}: {} (expected {}, got {})", c.name, verdict(c.holds), c.expected, c.actual);
        }
    }
    for t in &r.subdivision {
        for root in &t.roots {
            let _ = writeln!(s, "subdivision, root {}: {} = {} ({})", root.root, root.original, root.subdivided, verdict(root.bijective));
        }
    }
    let _ = writeln!(s, "overall: {}", verdict(r.holds));
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Treegraph(a) => treegraph(a),
        Command::Verify(a) => verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
