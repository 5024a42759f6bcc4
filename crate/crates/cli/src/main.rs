use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use netopt::exact::{
    branch_and_bound, brute_force, chord_slots, construction_floor, star_plus_chords,
    triangle_bound, warm_start, BnbConfig, StageOne,
};
use netopt::experiment::{
    run_experiment, write_outputs, DeltaSource, ExperimentSpec, Model, Report, SolverKind,
};
use netopt::local_search::{multi_restart, SearchConfig, Start};
use netopt::lp;
use netopt::rational::{format_decimal, fraction_string, int};
use netopt::{parse_rational, Graph, GraphMetrics, Hamiltonian, Problem, Rational, SampleSpace};

const ALPHA_HELP: &str = "Weight on the first statistic, as p/q or a decimal. \
    At 0 or 1 one epigraph row reads H <= 0 · S, so the optimum is 0";

#[derive(Parser)]
#[command(
    name = "netopt",
    version,
    about = "Optimal network synthesis under weighted graph statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Triangle and edge lower bounds plus the star-plus-chords construction
    Bound(BoundArgs),
    /// Solve exactly by enumeration or branch-and-bound
    Solve(SolveArgs),
    /// First-improve local search with seeded restarts
    Heuristic(HeuristicArgs),
    /// Write a model as a CPLEX LP file
    ExportLp(ExportArgs),
    /// Density, clustering and path-length row for a graph file
    Metrics(MetricsArgs),
    /// Verify a solver assignment against a model and graph semantics
    Check(CheckArgs),
    /// Compare enumeration, branch-and-bound and local search on one instance
    OracleCompare(CompareArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    /// max min{α · non-edges, (1-α) · triangles}
    Triads,
    /// min max{α · physical distance, (1-α) · flow distance}
    Distance,
}

#[derive(Args)]
struct ModelArgs {
    /// Number of nodes
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_rational, help = ALPHA_HELP)]
    alpha: Rational,
    #[arg(long, value_enum, default_value = "triads")]
    model: ModelKind,
    /// all, connected, density:D or connected+density:D
    #[arg(long, default_value = "connected", value_parser = SampleSpace::parse)]
    space: SampleSpace,
    /// Square distance matrix for the distance model; random points otherwise
    #[arg(long)]
    delta_file: Option<PathBuf>,
    #[arg(long, env = "NETOPT_SEED", default_value_t = 0)]
    seed: u64,
}

impl ModelArgs {
    fn model(&self) -> Model {
        match self.model {
            ModelKind::Triads => Model::TriadsVsNonEdges { alpha: self.alpha },
            ModelKind::Distance => Model::DistanceVsFlow {
                alpha: self.alpha,
                delta: match &self.delta_file {
                    Some(path) => DeltaSource::File(path.clone()),
                    None => DeltaSource::Random { seed: self.seed },
                },
            },
        }
    }

    fn spec(&self, solver: SolverKind) -> ExperimentSpec {
        let mut spec = ExperimentSpec::new(self.n, self.model(), solver);
        spec.space = self.space;
        spec.seed = self.seed;
        spec
    }

    fn problem(&self) -> Result<Problem> {
        let objective = self.model().hamiltonian(self.n)?;
        let mut space = self.space;
        space.connected |= objective.needs_connectivity();
        Ok(Problem::new(self.n, space, objective)?)
    }
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_parser = parse_rational, help = ALPHA_HELP)]
    alpha: Rational,
    /// Write the construction as graph.edges and graph.dot here
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExactSolver {
    Brute,
    Bnb,
}

#[derive(Clone, Copy, ValueEnum)]
enum StageOneArg {
    Maxmin,
    Linear,
}

impl From<StageOneArg> for StageOne {
    fn from(s: StageOneArg) -> Self {
        match s {
            StageOneArg::Maxmin => StageOne::MaxMin,
            StageOneArg::Linear => StageOne::Linear,
        }
    }
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, default_value_t = 10_000_000)]
    node_limit: u64,
    /// Seconds
    #[arg(long, default_value_t = 300.0)]
    time_limit: f64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value = "bnb")]
    solver: ExactSolver,
    /// Solve in two stages, keeping Σ θ S >= γ P* in the second
    #[arg(long, value_parser = parse_rational)]
    gamma: Option<Rational>,
    /// Objective whose optimum defines P*
    #[arg(long = "stage1", value_enum, default_value = "maxmin")]
    stage_one: StageOneArg,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Print the JSON result instead of the summary
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StartArg {
    Star,
    StarPlusChords,
    RandomConnected,
}

#[derive(Args)]
struct HeuristicArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    #[arg(long, value_enum, default_value = "random-connected")]
    start: StartArg,
    /// Start from this edge-list file instead
    #[arg(long, conflicts_with = "start")]
    start_file: Option<PathBuf>,
    /// Cap on accepted moves per restart
    #[arg(long, default_value_t = 1_000_000)]
    max_iterations: usize,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formulation {
    /// Triad max–min model with connectivity and/or density rows
    Maxmin,
    /// Edge indicators and one edge-count row
    FixedDensity,
    /// Edge and triangle indicators only
    Triangles,
    /// Single-commodity connectivity flow
    Connectivity,
    /// One commodity per node with shared capacity
    Multicommodity,
    /// Second stage with the Σ θ S >= γ P* row
    Robust,
    /// Minimum total flow for the fixed graph given by --graph
    FlowDistance,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Corrected,
    AsPrinted,
}

#[derive(Args)]
struct FormulationArgs {
    #[arg(long, value_enum, default_value = "maxmin")]
    formulation: Formulation,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = parse_rational, help = ALPHA_HELP)]
    alpha: Option<Rational>,
    #[arg(long, default_value = "connected", value_parser = SampleSpace::parse)]
    space: SampleSpace,
    /// Edge count for the fixed-density formulation
    #[arg(long)]
    d: Option<usize>,
    /// Triangle linearization
    #[arg(long, value_enum, default_value = "corrected")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    root: usize,
    #[arg(long, value_parser = parse_rational)]
    gamma: Option<Rational>,
    /// Stage-one optimum; solved by branch-and-bound when omitted
    #[arg(long, value_parser = parse_rational)]
    p_star: Option<Rational>,
    #[arg(long = "stage1", value_enum, default_value = "maxmin")]
    stage_one: StageOneArg,
    /// Edge-list file for the flow-distance formulation
    #[arg(long)]
    graph: Option<PathBuf>,
}

impl FormulationArgs {
    fn n(&self) -> Result<usize> {
        self.n.context("--n is required for this formulation")
    }

    fn alpha(&self) -> Result<Rational> {
        self.alpha
            .context("--alpha is required for this formulation")
    }

    fn build(&self) -> Result<lp::ConstraintSystem> {
        let mode = match self.mode {
            ModeArg::Corrected => lp::TriangleMode::Corrected,
            ModeArg::AsPrinted => lp::TriangleMode::AsPrinted,
        };
        let cs = match self.formulation {
            Formulation::Maxmin => lp::build_maxmin(self.n()?, self.alpha()?, self.space)?,
            Formulation::FixedDensity => {
                let n = self.n()?;
                let mut cs = lp::ConstraintSystem::new(n);
                lp::build_fixed_density(
                    &mut cs,
                    n,
                    self.d.context("--d is required for fixed-density")?,
                )?;
                cs
            }
            Formulation::Triangles => {
                let n = self.n()?;
                let mut cs = lp::ConstraintSystem::new(n);
                lp::build_triangle_indicators(&mut cs, n, mode);
                cs
            }
            Formulation::Connectivity => {
                let n = self.n()?;
                let mut cs = lp::ConstraintSystem::new(n);
                lp::build_connectivity_flow(&mut cs, n, self.root)?;
                cs
            }
            Formulation::Multicommodity => {
                let n = self.n()?;
                let mut cs = lp::ConstraintSystem::new(n);
                lp::build_multicommodity_flow(&mut cs, n)?;
                cs
            }
            Formulation::Robust => {
                let (n, alpha) = (self.n()?, self.alpha()?);
                let gamma = self
                    .gamma
                    .context("--gamma is required for the robust formulation")?;
                let p_star = match self.p_star {
                    Some(p) => p,
                    None => self.solve_stage_one(n, alpha)?,
                };
                let (base, [s1, s2]) = lp::build_triads_base(n, self.space)?;
                lp::build_robust_second_stage(
                    base,
                    &[(alpha, s1), (int(1) - alpha, s2)],
                    Some(p_star),
                    gamma,
                )?
            }
            Formulation::FlowDistance => {
                let path = self
                    .graph
                    .as_ref()
                    .context("--graph is required for flow-distance")?;
                lp::build_flow_distance_lp(&read_graph(path)?)?
            }
        };
        Ok(cs)
    }

    fn solve_stage_one(&self, n: usize, alpha: Rational) -> Result<Rational> {
        let max_min = Hamiltonian::triads_vs_nonedges(alpha)?;
        let objective = match StageOne::from(self.stage_one) {
            StageOne::MaxMin => max_min,
            StageOne::Linear => Hamiltonian::linear(max_min.terms, netopt::Sense::Maximize),
        };
        let problem = Problem::new(n, self.space, objective)?;
        let r = branch_and_bound(&problem, &BnbConfig::default())?;
        if r.status != netopt::Status::Optimal {
            bail!("stage one stopped at a limit; pass --p-star explicitly");
        }
        eprintln!("stage one optimum P* = {}", fraction_string(&r.objective));
        Ok(r.objective)
    }
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    formulation: FormulationArgs,
    /// Output path; standard output when omitted
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Write the JSON dump of variables and rows instead of LP text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MetricsArgs {
    /// Edge-list or DOT file
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    formulation: FormulationArgs,
    /// Solver output: `name value` lines or CBC solution format
    #[arg(long)]
    assignment: PathBuf,
    /// Treat variables missing from the assignment as zero
    #[arg(long)]
    zero_missing: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 10)]
    restarts: usize,
    #[command(flatten)]
    limits: LimitArgs,
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let graph = if text.trim_start().starts_with("graph") {
        Graph::parse_dot(&text)
    } else {
        Graph::parse_edge_list(&text)
    };
    graph.with_context(|| format!("parsing {}", path.display()))
}

fn emit(report: &Report, json: bool, out_dir: Option<&Path>) -> Result<i32> {
    if let Some(dir) = out_dir {
        write_outputs(report, dir)?;
    }
    if json {
        print!("{}", report.to_json(true));
    } else {
        println!(
            "model      {} (alpha = {})",
            report.model,
            fraction_string(&report.alpha.0)
        );
        println!(
            "solver     {} on n = {}, space {}",
            report.solver, report.n, report.space
        );
        println!("status     {:?}", report.status);
        println!(
            "objective  {} ({})",
            fraction_string(&report.objective.0),
            format_decimal(&report.objective.0, 5)
        );
        for s in &report.statistics {
            println!("  {:<18} {}", s.name, fraction_string(&s.value.0));
        }
        if let Some(ts) = &report.two_stage {
            println!(
                "P*         {} ({:?} stage one, gamma = {})",
                fraction_string(&ts.p_star.0),
                ts.stage_one,
                fraction_string(&ts.gamma.0)
            );
        }
        println!(
            "edges      {}, triangles {}",
            report.metrics.edge_count, report.metrics.triangle_count
        );
        print!("{}", report.metrics_table());
    }
    Ok(report.status.exit_code())
}

fn limits(args: &LimitArgs) -> Result<(u64, Duration)> {
    let time = Duration::try_from_secs_f64(args.time_limit)
        .context("--time-limit must be a nonnegative number")?;
    Ok((args.node_limit, time))
}

fn bound(args: &BoundArgs) -> Result<i32> {
    let b = triangle_bound(args.n, args.alpha)?;
    let h = b.h.min(chord_slots(args.n));
    let g = star_plus_chords(args.n, h)?;
    let value = Hamiltonian::triads_vs_nonedges(args.alpha)?.evaluate(&g)?;
    println!("h           {}", b.h);
    println!("min_edges   {}", b.min_edges);
    println!("chords      {h} of {} available", chord_slots(args.n));
    println!(
        "floor       {}",
        fraction_string(&construction_floor(args.n, args.alpha, h))
    );
    println!(
        "objective   {} on the star-plus-chords network",
        fraction_string(&value)
    );
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        g.write_edge_list(dir.join("graph.edges"))?;
        g.export_dot(dir.join("graph.dot"))?;
    }
    Ok(0)
}

fn solve(args: &SolveArgs) -> Result<i32> {
    let solver = match args.solver {
        ExactSolver::Brute => SolverKind::Brute,
        ExactSolver::Bnb => SolverKind::Bnb,
    };
    let mut spec = args.model.spec(solver);
    spec.gamma = args.gamma;
    spec.stage_one = args.stage_one.into();
    (spec.node_limit, spec.time_limit) = limits(&args.limits)?;
    let report = match run_experiment(&spec) {
        Err(netopt::Error::Infeasible) => {
            eprintln!("infeasible: no graph in the sample space");
            return Ok(netopt::Status::Infeasible.exit_code());
        }
        other => other?,
    };
    emit(&report, args.json, args.out_dir.as_deref())
}

fn heuristic(args: &HeuristicArgs) -> Result<i32> {
    let mut spec = args.model.spec(SolverKind::LocalSearch);
    spec.restarts = args.restarts;
    spec.max_iterations = args.max_iterations;
    spec.start = match (&args.start_file, args.start) {
        (Some(path), _) => Start::Given(read_graph(path)?),
        (None, StartArg::Star) => Start::Star,
        (None, StartArg::StarPlusChords) => Start::StarPlusChords,
        (None, StartArg::RandomConnected) => Start::RandomConnected,
    };
    let report = run_experiment(&spec)?;
    // a finished search is a success even though optimality is unproven
    emit(&report, args.json, args.out_dir.as_deref()).map(|_| 0)
}

fn export(args: &ExportArgs) -> Result<i32> {
    let cs = args.formulation.build()?;
    let text = if args.json {
        serde_json::to_string_pretty(&cs.to_json())? + "\n"
    } else {
        lp::write_lp(&cs)
    };
    match &args.output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(0)
}

fn metrics(args: &MetricsArgs) -> Result<i32> {
    let g = read_graph(&args.file)?;
    let m = g.metrics();
    if args.json {
        println!("{}", serde_json::to_string_pretty(&m)?);
    } else {
        println!("{}", GraphMetrics::table_header());
        println!("{}", m.table_row());
    }
    Ok(0)
}

fn check(args: &CheckArgs) -> Result<i32> {
    let cs = args.formulation.build()?;
    let text = std::fs::read_to_string(&args.assignment)
        .with_context(|| format!("reading {}", args.assignment.display()))?;
    let mut assignment = lp::parse_assignment(&text)?;
    if args.zero_missing {
        lp::fill_missing_with_zero(&cs, &mut assignment);
    }
    let verdict = lp::check_assignment(&cs, &assignment)?;
    print!("{}", verdict.summary());
    if let Some(g) = &verdict.graph {
        println!("{}", GraphMetrics::table_header());
        println!("{}", g.metrics().table_row());
    }
    Ok(if verdict.is_feasible() && verdict.is_consistent() {
        0
    } else {
        3
    })
}

fn oracle_compare(args: &CompareArgs) -> Result<i32> {
    let problem = args.model.problem()?;
    let (node_limit, time_limit) = limits(&args.limits)?;
    let brute = brute_force(&problem)?;
    let cfg = BnbConfig {
        node_limit,
        time_limit,
        incumbent: warm_start(&problem),
    };
    let bnb = branch_and_bound(&problem, &cfg)?;
    let search = SearchConfig {
        seed: args.model.seed,
        restarts: args.restarts,
        ..SearchConfig::default()
    };
    let heuristic = multi_restart(&problem, &search)?;
    let row = |name: &str, value: &Rational, nodes: u64| {
        println!(
            "{name:<13} {:>14} {:>12.5} {nodes:>10}",
            fraction_string(value),
            netopt::rational::to_f64(value)
        );
    };
    println!(
        "{:<13} {:>14} {:>12} {:>10}",
        "solver", "objective", "decimal", "nodes"
    );
    row(
        "brute",
        &brute.result.objective,
        brute.result.nodes_explored,
    );
    row("bnb", &bnb.objective, bnb.nodes_explored);
    row(
        "local_search",
        &heuristic.objective,
        heuristic.nodes_explored,
    );
    println!("maximizers    {}", brute.maximizers.len());
    let exact_agree =
        bnb.status == netopt::Status::Optimal && bnb.objective == brute.result.objective;
    let gap = problem.score(brute.result.objective) - problem.score(heuristic.objective);
    println!(
        "exact solvers {}",
        if exact_agree { "agree" } else { "DISAGREE" }
    );
    println!("heuristic gap {}", fraction_string(&gap));
    Ok(if exact_agree { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Bound(a) => bound(a),
        Command::Solve(a) => solve(a),
        Command::Heuristic(a) => heuristic(a),
        Command::ExportLp(a) => export(a),
        Command::Metrics(a) => metrics(a),
        Command::Check(a) => check(a),
        Command::OracleCompare(a) => oracle_compare(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
