//! End-to-end experiment runs: build the objective, solve, summarize, and
//! write result files.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    branch_and_bound, brute_force, solve_two_stage, warm_start, BnbConfig, Method, StageOne,
};
use crate::graph::{Graph, GraphMetrics};
use crate::local_search::{multi_restart, SearchConfig, Start};
use crate::problem::{Problem, SolveResult, Status};
use crate::rational::{Exact, Rational};
use crate::statistics::{DistanceMatrix, Hamiltonian, SampleSpace, Sense};

/// Where the physical distances `δ_ij` come from.
#[derive(Clone, Debug, PartialEq)]
pub enum DeltaSource {
    File(PathBuf),
    /// Euclidean distances between seeded random points in the unit square.
    Random {
        seed: u64,
    },
    Uniform(Rational),
    Matrix(Arc<DistanceMatrix>),
}

impl DeltaSource {
    pub fn load(&self, n: usize) -> Result<Arc<DistanceMatrix>> {
        let m = match self {
            DeltaSource::File(path) => Arc::new(DistanceMatrix::read(path)?),
            DeltaSource::Random { seed } => Arc::new(DistanceMatrix::random_euclidean(n, *seed)),
            DeltaSource::Uniform(v) => Arc::new(DistanceMatrix::uniform(n, *v)?),
            DeltaSource::Matrix(m) => Arc::clone(m),
        };
        if m.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: m.n(),
            });
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    /// `max min{α S_non-edges, (1-α) S_triangles}`.
    TriadsVsNonEdges { alpha: Rational },
    /// `min max{α S_physical, (1-α) S_flow}`.
    DistanceVsFlow { alpha: Rational, delta: DeltaSource },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::TriadsVsNonEdges { .. } => "triads_vs_nonedges",
            Model::DistanceVsFlow { .. } => "distance_vs_flow",
        }
    }

    pub fn alpha(&self) -> Rational {
        match self {
            Model::TriadsVsNonEdges { alpha } | Model::DistanceVsFlow { alpha, .. } => *alpha,
        }
    }

    pub fn hamiltonian(&self, n: usize) -> Result<Hamiltonian> {
        match self {
            Model::TriadsVsNonEdges { alpha } => Hamiltonian::triads_vs_nonedges(*alpha),
            Model::DistanceVsFlow { alpha, delta } => {
                Hamiltonian::distance_vs_flow(*alpha, delta.load(n)?)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Brute,
    Bnb,
    LocalSearch,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Brute => "brute",
            SolverKind::Bnb => "bnb",
            SolverKind::LocalSearch => "local_search",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub n: usize,
    pub model: Model,
    pub space: SampleSpace,
    pub solver: SolverKind,
    /// Enables the two-stage solve with floor `γ P*`.
    pub gamma: Option<Rational>,
    pub stage_one: StageOne,
    pub seed: u64,
    pub restarts: usize,
    pub start: Start,
    pub max_iterations: usize,
    pub node_limit: u64,
    pub time_limit: Duration,
}

impl ExperimentSpec {
    pub fn new(n: usize, model: Model, solver: SolverKind) -> Self {
        let search = SearchConfig::default();
        let bnb = BnbConfig::default();
        ExperimentSpec {
            n,
            model,
            space: SampleSpace::CONNECTED,
            solver,
            gamma: None,
            stage_one: StageOne::MaxMin,
            seed: search.seed,
            restarts: search.restarts,
            start: search.start,
            max_iterations: search.max_iterations,
            node_limit: bnb.node_limit,
            time_limit: bnb.time_limit,
        }
    }

    fn search_config(&self) -> SearchConfig {
        SearchConfig {
            seed: self.seed,
            max_iterations: self.max_iterations,
            restarts: self.restarts,
            start: self.start.clone(),
        }
    }

    fn bnb_config(&self) -> BnbConfig {
        BnbConfig {
            node_limit: self.node_limit,
            time_limit: self.time_limit,
            incumbent: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StatisticReport {
    pub name: &'static str,
    pub theta: Exact,
    pub value: Exact,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoStageReport {
    pub stage_one: StageOne,
    pub gamma: Exact,
    pub p_star: Exact,
    pub stage_one_graph: Graph,
}

#[derive(Clone, Debug, Serialize)]
pub struct Telemetry {
    pub nodes_explored: u64,
    pub bound_at_root: Option<Exact>,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub model: &'static str,
    pub alpha: Exact,
    pub n: usize,
    pub space: String,
    pub solver: &'static str,
    pub seed: u64,
    pub status: Status,
    pub objective: Exact,
    pub statistics: Vec<StatisticReport>,
    pub graph: Graph,
    pub metrics: GraphMetrics,
    pub two_stage: Option<TwoStageReport>,
    pub telemetry: Telemetry,
}

impl Report {
    /// Pretty JSON; `with_timing = false` drops the wall-clock field so
    /// repeated runs compare byte for byte.
    pub fn to_json(&self, with_timing: bool) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        if !with_timing {
            if let Some(t) = value.get_mut("telemetry").and_then(|t| t.as_object_mut()) {
                t.remove("wall_time_ms");
            }
        }
        serde_json::to_string_pretty(&value).expect("report serializes") + "\n"
    }

    /// Header plus the `Density CC APL` row.
    pub fn metrics_table(&self) -> String {
        format!(
            "{}\n{}\n",
            GraphMetrics::table_header(),
            self.metrics.table_row()
        )
    }
}

fn solve(spec: &ExperimentSpec, problem: &Problem) -> Result<SolveResult> {
    match spec.solver {
        SolverKind::Brute => brute_force(problem).map(|b| b.result),
        SolverKind::Bnb => {
            let mut cfg = spec.bnb_config();
            cfg.incumbent = warm_start(problem);
            branch_and_bound(problem, &cfg)
        }
        SolverKind::LocalSearch => multi_restart(problem, &spec.search_config()),
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<Report> {
    let objective = spec.model.hamiltonian(spec.n)?;
    let mut space = spec.space;
    if objective.needs_connectivity() {
        space.connected = true;
    }
    let (result, two_stage) = match spec.gamma {
        None => (
            solve(spec, &Problem::new(spec.n, space, objective.clone())?)?,
            None,
        ),
        Some(gamma) => {
            if objective.sense != Sense::Maximize {
                return Err(Error::InvalidParameter(
                    "the two-stage solve needs a maximization model".into(),
                ));
            }
            let method = match spec.solver {
                SolverKind::Brute => Method::BruteForce,
                SolverKind::Bnb => Method::BranchAndBound(spec.bnb_config()),
                SolverKind::LocalSearch => {
                    return Err(Error::InvalidParameter(
                        "the two-stage solve needs an exact solver".into(),
                    ))
                }
            };
            let ts = solve_two_stage(
                spec.n,
                space,
                &objective.terms,
                objective.alpha,
                gamma,
                spec.stage_one,
                &method,
            )?;
            let report = TwoStageReport {
                stage_one: ts.stage_one,
                gamma: gamma.into(),
                p_star: ts.p_star.into(),
                stage_one_graph: ts.first.graph.clone(),
            };
            let mut second = ts.second;
            second.nodes_explored += ts.first.nodes_explored;
            second.wall_time += ts.first.wall_time;
            if ts.first.status != Status::Optimal && second.status == Status::Optimal {
                second.status = Status::Incumbent;
            }
            (second, Some(report))
        }
    };
    let statistics = objective
        .terms
        .iter()
        .zip(&result.statistic_values)
        .map(|(t, v)| StatisticReport {
            name: t.statistic.name(),
            theta: t.theta.into(),
            value: (*v).into(),
        })
        .collect();
    Ok(Report {
        model: spec.model.name(),
        alpha: spec.model.alpha().into(),
        n: spec.n,
        space: space.to_string(),
        solver: spec.solver.name(),
        seed: spec.seed,
        status: result.status,
        objective: result.objective.into(),
        statistics,
        metrics: result.graph.metrics(),
        graph: result.graph,
        two_stage,
        telemetry: Telemetry {
            nodes_explored: result.nodes_explored,
            bound_at_root: result.bound_at_root.map(Exact),
            wall_time_ms: result.wall_time.as_secs_f64() * 1e3,
        },
    })
}

/// Writes `result.json`, `graph.edges`, `graph.dot` and `metrics.txt`.
pub fn write_outputs(report: &Report, dir: impl AsRef<Path>) -> Result<()> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|e| Error::file(dir, e))?;
    let write = |name: &str, text: String| {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| Error::file(&path, e))
    };
    write("result.json", report.to_json(true))?;
    write("graph.edges", report.graph.to_edge_list())?;
    write("graph.dot", report.graph.to_dot())?;
    write("metrics.txt", report.metrics_table())
}
