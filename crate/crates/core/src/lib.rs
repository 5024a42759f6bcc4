//! Exact and heuristic optimization of network statistics over constrained
//! graph sample spaces.
//!
//! Graphs on `n` labelled nodes are scored by weighted statistics (triangle
//! count, non-edges, physical and flow distance) combined linearly or by a
//! max–min rule. Optima are found by enumeration, by branch-and-bound, or by
//! first-improve local search; the same problems can be exported as linear
//! models and external solver output checked against graph semantics.

pub mod error;
pub mod exact;
pub mod experiment;
pub mod graph;
pub mod local_search;
pub mod lp;
pub mod problem;
pub mod rational;
pub mod statistics;

pub use error::{Error, Result};
pub use graph::{Graph, GraphMetrics};
pub use problem::{Evaluation, Floor, Problem, SolveResult, Status};
pub use rational::{parse_rational, Rational};
pub use statistics::{DistanceMatrix, Form, Hamiltonian, SampleSpace, Sense, Statistic, Term};
