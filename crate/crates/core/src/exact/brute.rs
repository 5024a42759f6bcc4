use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{pair_count, Graph};
use crate::problem::{Evaluation, Problem, SolveResult, Status};
use crate::rational::Rational;

/// 2^21 labelled graphs at n = 7.
pub const BRUTE_FORCE_MAX_N: usize = 7;

#[derive(Clone, Debug)]
pub struct BruteForce {
    /// The lexicographically smallest maximizer.
    pub result: SolveResult,
    /// Every optimal graph, in enumeration (bitmask) order.
    pub maximizers: Vec<Graph>,
    /// Number of graphs in the feasible set.
    pub feasible: u64,
}

/// Enumerates every labelled graph on `problem.n` nodes.
pub fn brute_force(problem: &Problem) -> Result<BruteForce> {
    let n = problem.n;
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::NodeCapExceeded {
            n,
            cap: BRUTE_FORCE_MAX_N,
        });
    }
    let start = Instant::now();
    let total = 1u64 << pair_count(n);
    let mut best: Option<(Rational, Evaluation)> = None;
    let mut maximizers = Vec::new();
    let mut feasible = 0u64;
    for mask in 0..total {
        if let Some(d) = problem.space.edge_count {
            if mask.count_ones() as usize != d {
                continue;
            }
        }
        let g = Graph::from_mask(n, mask);
        let Some(eval) = problem.evaluate(&g) else {
            continue;
        };
        feasible += 1;
        let score = problem.score(eval.value);
        match &best {
            Some((s, _)) if score < *s => {}
            Some((s, _)) if score == *s => maximizers.push(g),
            _ => {
                best = Some((score, eval));
                maximizers.clear();
                maximizers.push(g);
            }
        }
    }
    let (_, eval) = best.ok_or(Error::Infeasible)?;
    let graph = maximizers.iter().min().cloned().expect("non-empty argmax");
    let mut result = SolveResult::new(graph, eval, Status::Optimal);
    // statistics belong to the reported graph, not the first one found
    result.statistic_values = problem.objective.statistic_values(&result.graph)?;
    result.nodes_explored = total;
    result.wall_time = start.elapsed();
    result.bound_at_root = Some(result.objective);
    Ok(BruteForce {
        result,
        maximizers,
        feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, Rational};
    use crate::statistics::{Hamiltonian, SampleSpace};

    fn triads(n: usize, alpha: Rational, space: SampleSpace) -> Problem {
        Problem::new(n, space, Hamiltonian::triads_vs_nonedges(alpha).unwrap()).unwrap()
    }

    #[test]
    fn counts_connected_labelled_graphs() {
        // OEIS A001187: 1, 1, 4, 38, 728
        let expected = [1u64, 1, 4, 38, 728];
        for (k, &count) in expected.iter().enumerate() {
            let p = triads(k + 1, Rational::new(1, 2), SampleSpace::CONNECTED);
            assert_eq!(brute_force(&p).unwrap().feasible, count, "n = {}", k + 1);
        }
    }

    #[test]
    fn fixed_density_k3() {
        let p = triads(3, Rational::new(1, 2), SampleSpace::fixed_density(3));
        let bf = brute_force(&p).unwrap();
        assert_eq!(bf.feasible, 1);
        assert_eq!(bf.result.graph, Graph::complete(3));
        assert_eq!(bf.result.objective, int(0));
    }

    #[test]
    fn two_nodes_connected() {
        let bf = brute_force(&triads(2, Rational::new(1, 2), SampleSpace::CONNECTED)).unwrap();
        assert_eq!(bf.result.graph, Graph::complete(2));
        assert_eq!(bf.result.objective, int(0));
    }

    #[test]
    fn caps_and_infeasibility() {
        let p = triads(8, Rational::new(1, 2), SampleSpace::CONNECTED);
        assert!(matches!(
            brute_force(&p),
            Err(Error::NodeCapExceeded { .. })
        ));
        let p = triads(
            4,
            Rational::new(1, 2),
            SampleSpace {
                connected: true,
                edge_count: Some(2),
            },
        );
        assert!(matches!(brute_force(&p), Err(Error::Infeasible)));
    }
}
