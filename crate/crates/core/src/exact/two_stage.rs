use serde::Serialize;

use super::{branch_and_bound, brute_force, BnbConfig};
use crate::error::{Error, Result};
use crate::problem::{Floor, Problem, SolveResult};
use crate::rational::{is_unit_interval, Rational};
use crate::statistics::{Hamiltonian, SampleSpace, Sense, Term};

/// Objective whose optimum defines `P*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageOne {
    /// `max min_j θ_j S_j`.
    MaxMin,
    /// `max Σ_j θ_j S_j`.
    Linear,
}

#[derive(Clone, Debug)]
pub enum Method {
    BruteForce,
    BranchAndBound(BnbConfig),
}

impl Method {
    fn solve(&self, problem: &Problem) -> Result<SolveResult> {
        match self {
            Method::BruteForce => brute_force(problem).map(|b| b.result),
            Method::BranchAndBound(cfg) => branch_and_bound(problem, cfg),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwoStage {
    pub stage_one: StageOne,
    pub p_star: Rational,
    pub first: SolveResult,
    pub second: SolveResult,
}

/// Stage one finds `P*`; stage two maximizes `min_j θ_j S_j` subject to
/// `Σ_j θ_j S_j >= γ P*`.
pub fn solve_two_stage(
    n: usize,
    space: SampleSpace,
    terms: &[Term],
    alpha: Option<Rational>,
    gamma: Rational,
    stage_one: StageOne,
    method: &Method,
) -> Result<TwoStage> {
    if !is_unit_interval(&gamma) {
        return Err(Error::InvalidParameter(format!(
            "gamma must lie in [0, 1], got {gamma}"
        )));
    }
    let linear = Hamiltonian::linear(terms.to_vec(), Sense::Maximize);
    let mut max_min = Hamiltonian::max_min(terms.to_vec(), Sense::Maximize);
    max_min.alpha = alpha;

    let first_objective = match stage_one {
        StageOne::MaxMin => max_min.clone(),
        StageOne::Linear => linear.clone(),
    };
    let first = method.solve(&Problem::new(n, space, first_objective)?)?;
    let p_star = first.objective;

    let second_problem = Problem::new(n, space, max_min)?.with_floor(Floor {
        hamiltonian: linear,
        rhs: gamma * p_star,
    });
    let second = method.solve(&second_problem)?;
    Ok(TwoStage {
        stage_one,
        p_star,
        first,
        second,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use crate::statistics::Statistic;

    fn triad_terms(alpha: Rational) -> Vec<Term> {
        vec![
            Term::new(alpha, Statistic::NonEdges),
            Term::new(int(1) - alpha, Statistic::Triangles),
        ]
    }

    #[test]
    fn zero_gamma_repeats_stage_one() {
        let alpha = Rational::new(1, 2);
        let ts = solve_two_stage(
            5,
            SampleSpace::CONNECTED,
            &triad_terms(alpha),
            Some(alpha),
            int(0),
            StageOne::MaxMin,
            &Method::BruteForce,
        )
        .unwrap();
        assert_eq!(ts.first.objective, ts.second.objective);
        assert_eq!(ts.first.graph, ts.second.graph);
    }

    #[test]
    fn single_statistic_stages_coincide() {
        let terms = vec![Term::new(int(1), Statistic::Triangles)];
        for stage_one in [StageOne::MaxMin, StageOne::Linear] {
            let ts = solve_two_stage(
                4,
                SampleSpace::fixed_density(4),
                &terms,
                None,
                int(1),
                stage_one,
                &Method::BruteForce,
            )
            .unwrap();
            assert_eq!(ts.p_star, int(1));
            assert_eq!(ts.second.objective, ts.p_star);
            assert_eq!(ts.first.graph, ts.second.graph);
        }
    }

    #[test]
    fn rejects_bad_gamma() {
        let r = solve_two_stage(
            4,
            SampleSpace::CONNECTED,
            &triad_terms(Rational::new(1, 2)),
            None,
            Rational::new(3, 2),
            StageOne::MaxMin,
            &Method::BruteForce,
        );
        assert!(r.is_err());
    }
}
