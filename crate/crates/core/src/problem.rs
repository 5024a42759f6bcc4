//! Optimization problems over graphs and the results solvers return.

use std::cmp::Ordering;
use std::time::Duration;

use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;
use crate::rational::Rational;
use crate::statistics::{Hamiltonian, SampleSpace};

/// A side constraint `Σ θ_j S_j(x) >= rhs`, used by the robust second stage.
#[derive(Clone, Debug, PartialEq)]
pub struct Floor {
    pub hamiltonian: Hamiltonian,
    pub rhs: Rational,
}

/// Optimize `objective` over the graphs on `n` nodes inside `space`.
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub n: usize,
    pub space: SampleSpace,
    pub objective: Hamiltonian,
    pub floor: Option<Floor>,
}

/// Objective and statistics of a feasible graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub value: Rational,
    pub statistics: Vec<Rational>,
}

impl Problem {
    pub fn new(n: usize, space: SampleSpace, objective: Hamiltonian) -> Result<Self> {
        space.validate(n)?;
        Ok(Problem {
            n,
            space,
            objective,
            floor: None,
        })
    }

    pub fn with_floor(mut self, floor: Floor) -> Self {
        self.floor = Some(floor);
        self
    }

    /// `None` when `g` lies outside the feasible set. Statistics that are
    /// undefined on `g` (flow distance of a disconnected graph) make it
    /// infeasible.
    pub fn evaluate(&self, g: &Graph) -> Option<Evaluation> {
        if g.n() != self.n || !self.space.contains(g) {
            return None;
        }
        let statistics = self.objective.statistic_values(g).ok()?;
        if let Some(floor) = &self.floor {
            if floor.hamiltonian.evaluate(g).ok()? < floor.rhs {
                return None;
            }
        }
        let value = self.objective.combine(&statistics);
        Some(Evaluation { value, statistics })
    }

    pub fn score(&self, value: Rational) -> Rational {
        self.objective.score(value)
    }

    /// Orders candidate solutions: higher score wins, ties go to the
    /// lexicographically smaller edge bitset.
    pub fn better(&self, a: (&Rational, &Graph), b: (&Rational, &Graph)) -> bool {
        match self.score(*a.0).cmp(&self.score(*b.0)) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => a.1 < b.1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Optimal,
    Incumbent,
    Infeasible,
}

impl Status {
    /// CLI exit code: 0 optimal, 2 incumbent only, 3 infeasible.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Optimal => 0,
            Status::Incumbent => 2,
            Status::Infeasible => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub graph: Graph,
    pub objective: Rational,
    pub statistic_values: Vec<Rational>,
    pub status: Status,
    /// Search nodes (branch-and-bound), graphs enumerated (brute force) or
    /// candidate moves evaluated (local search).
    pub nodes_explored: u64,
    pub wall_time: Duration,
    /// Objective bound at the search root; an upper bound when maximizing.
    pub bound_at_root: Option<Rational>,
}

impl SolveResult {
    pub(crate) fn new(graph: Graph, eval: Evaluation, status: Status) -> Self {
        SolveResult {
            graph,
            objective: eval.value,
            statistic_values: eval.statistics,
            status,
            nodes_explored: 0,
            wall_time: Duration::ZERO,
            bound_at_root: None,
        }
    }
}
