use std::time::{Duration, Instant};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{pair_count, pairs, Graph};
use crate::problem::{Problem, SolveResult, Status};
use crate::rational::{int, Rational};
use crate::statistics::{Form, Hamiltonian, Sense, Statistic};

#[derive(Clone, Debug)]
pub struct BnbConfig {
    pub node_limit: u64,
    pub time_limit: Duration,
    /// Feasible starting solution; its value seeds the pruning threshold.
    pub incumbent: Option<Graph>,
}

impl Default for BnbConfig {
    fn default() -> Self {
        BnbConfig {
            node_limit: 10_000_000,
            time_limit: Duration::from_secs(300),
            incumbent: None,
        }
    }
}

/// Partial assignment: `present` holds the edges fixed to 1, `optimistic`
/// additionally holds every undecided pair.
struct Node<'a> {
    problem: &'a Problem,
    present: Graph,
    optimistic: Graph,
    tri_present: i128,
    tri_optimistic: i128,
}

impl<'a> Node<'a> {
    fn root(problem: &'a Problem) -> Self {
        let optimistic = Graph::complete(problem.n);
        let tri_optimistic = optimistic.count_triangles() as i128;
        Node {
            problem,
            present: Graph::empty(problem.n),
            optimistic,
            tri_present: 0,
            tri_optimistic,
        }
    }

    fn fix_present(&mut self, i: usize, j: usize) {
        self.tri_present += self.present.common_neighbors(i, j) as i128;
        self.present.insert(i, j);
    }

    fn unfix_present(&mut self, i: usize, j: usize) {
        self.present.remove(i, j);
        self.tri_present -= self.present.common_neighbors(i, j) as i128;
    }

    fn fix_absent(&mut self, i: usize, j: usize) {
        self.optimistic.remove(i, j);
        self.tri_optimistic -= self.optimistic.common_neighbors(i, j) as i128;
    }

    fn unfix_absent(&mut self, i: usize, j: usize) {
        self.tri_optimistic += self.optimistic.common_neighbors(i, j) as i128;
        self.optimistic.insert(i, j);
    }

    /// False when no completion can lie in the sample space.
    fn may_be_feasible(&self) -> bool {
        let space = &self.problem.space;
        if let Some(d) = space.edge_count {
            if self.present.edge_count() > d || self.optimistic.edge_count() < d {
                return false;
            }
        }
        let needs_conn = space.connected
            || self.problem.objective.needs_connectivity()
            || self
                .problem
                .floor
                .as_ref()
                .is_some_and(|f| f.hamiltonian.needs_connectivity());
        !needs_conn || self.optimistic.is_connected()
    }

    /// Range of a statistic over all completions.
    fn statistic_range(&self, s: &Statistic) -> (Rational, Rational) {
        let n = self.problem.n;
        match s {
            Statistic::NonEdges => {
                let pc = pair_count(n);
                if let Some(d) = self.problem.space.edge_count {
                    let v = int((pc - d) as i128);
                    return (v, v);
                }
                let lo = int((pc - self.optimistic.edge_count()) as i128);
                let mut hi = pc - self.present.edge_count();
                if self.problem.space.connected && n >= 1 {
                    hi = hi.min(pc - (n - 1));
                }
                (lo, int(hi as i128))
            }
            Statistic::Triangles => (int(self.tri_present), int(self.tri_optimistic)),
            Statistic::PhysicalDistance(delta) => {
                let sum = |g: &Graph| {
                    g.edges()
                        .fold(Rational::zero(), |a, (i, j)| a + delta.get(i, j))
                };
                (sum(&self.present), sum(&self.optimistic))
            }
            Statistic::FlowDistance => {
                // fewer edges never shorten a path; a path graph is the worst
                // connected case
                let lo = self.optimistic.total_hops().map_or(0, |h| h as i128);
                let worst = (n * (n * n).saturating_sub(1) / 3) as i128;
                let hi = self.present.total_hops().map_or(worst, |h| h as i128);
                (int(lo), int(hi))
            }
        }
    }

    fn value_range(&self, h: &Hamiltonian) -> (Rational, Rational) {
        let weighted: Vec<(Rational, Rational)> = h
            .terms
            .iter()
            .map(|t| {
                let (lo, hi) = self.statistic_range(&t.statistic);
                let (a, b) = (t.theta * lo, t.theta * hi);
                (a.min(b), a.max(b))
            })
            .collect();
        let los = weighted.iter().map(|w| w.0);
        let his = weighted.iter().map(|w| w.1);
        match (h.form, h.sense) {
            (Form::Linear, _) => (los.sum(), his.sum()),
            (Form::MaxMin, Sense::Maximize) => {
                (los.min().unwrap_or_default(), his.min().unwrap_or_default())
            }
            (Form::MaxMin, Sense::Minimize) => {
                (los.max().unwrap_or_default(), his.max().unwrap_or_default())
            }
        }
    }

    /// Upper bound on the score of any feasible completion, or `None` when
    /// the node can be discarded outright.
    fn score_bound(&self) -> Option<Rational> {
        if !self.may_be_feasible() {
            return None;
        }
        if let Some(floor) = &self.problem.floor {
            let (_, hi) = self.value_range(&floor.hamiltonian);
            if hi < floor.rhs {
                return None;
            }
        }
        let (lo, hi) = self.value_range(&self.problem.objective);
        Some(match self.problem.objective.sense {
            Sense::Maximize => hi,
            Sense::Minimize => -lo,
        })
    }
}

/// Score bound for an arbitrary partial assignment (`decisions[k]` fixes pair
/// `k`, `None` leaves it open). `None` means no completion is feasible.
pub fn optimistic_bound(problem: &Problem, decisions: &[Option<bool>]) -> Option<Rational> {
    let mut node = Node::root(problem);
    for ((i, j), d) in pairs(problem.n).zip(decisions) {
        match d {
            Some(true) => node.fix_present(i, j),
            Some(false) => node.fix_absent(i, j),
            None => {}
        }
    }
    node.score_bound()
}

struct Search<'a> {
    node: Node<'a>,
    pairs: Vec<(usize, usize)>,
    best: Option<(Rational, SolveResult)>,
    nodes: u64,
    config: &'a BnbConfig,
    started: Instant,
    aborted: bool,
}

impl Search<'_> {
    fn over_limit(&mut self) -> bool {
        if self.nodes >= self.config.node_limit {
            return true;
        }
        self.nodes % 1024 == 0 && self.started.elapsed() >= self.config.time_limit
    }

    fn dfs(&mut self, depth: usize) {
        if self.over_limit() {
            self.aborted = true;
            return;
        }
        self.nodes += 1;
        let Some(bound) = self.node.score_bound() else {
            return;
        };
        if let Some((best, _)) = &self.best {
            if bound <= *best {
                return;
            }
        }
        if depth == self.pairs.len() {
            let problem = self.node.problem;
            if let Some(eval) = problem.evaluate(&self.node.present) {
                let score = problem.score(eval.value);
                if self.best.as_ref().is_none_or(|(b, _)| score > *b) {
                    let g = self.node.present.clone();
                    self.best = Some((score, SolveResult::new(g, eval, Status::Optimal)));
                }
            }
            return;
        }
        let (i, j) = self.pairs[depth];
        self.node.fix_present(i, j);
        self.dfs(depth + 1);
        self.node.unfix_present(i, j);
        if self.aborted {
            return;
        }
        self.node.fix_absent(i, j);
        self.dfs(depth + 1);
        self.node.unfix_absent(i, j);
    }
}

/// Depth-first branch-and-bound over pairs in lexicographic order, trying
/// the edge before the non-edge. A node is cut when its bound does not beat
/// the incumbent, so alternative optima are not enumerated.
pub fn branch_and_bound(problem: &Problem, config: &BnbConfig) -> Result<SolveResult> {
    let started = Instant::now();
    let mut best = None;
    if let Some(g) = &config.incumbent {
        let eval = problem.evaluate(g).ok_or_else(|| {
            Error::InvalidParameter("warm-start incumbent is infeasible for this problem".into())
        })?;
        best = Some((
            problem.score(eval.value),
            SolveResult::new(g.clone(), eval, Status::Optimal),
        ));
    }
    let root = Node::root(problem);
    let root_bound = root.score_bound().map(|s| problem.score(s));
    let mut search = Search {
        node: root,
        pairs: pairs(problem.n).collect(),
        best,
        nodes: 0,
        config,
        started,
        aborted: false,
    };
    search.dfs(0);
    let aborted = search.aborted;
    let nodes = search.nodes;
    let (_, mut result) = match search.best {
        Some(b) => b,
        None if aborted => return Err(Error::LimitReached),
        None => return Err(Error::Infeasible),
    };
    if aborted {
        result.status = Status::Incumbent;
    }
    result.nodes_explored = nodes;
    result.wall_time = started.elapsed();
    // score() is an involution, so this maps the root bound back to a value
    result.bound_at_root = root_bound;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{brute_force, star_plus_chords};
    use crate::statistics::SampleSpace;

    fn triads(n: usize, alpha: Rational) -> Problem {
        Problem::new(
            n,
            SampleSpace::CONNECTED,
            Hamiltonian::triads_vs_nonedges(alpha).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn n5_matches_oracle_with_few_nodes() {
        let p = triads(5, Rational::new(1, 2));
        let r = branch_and_bound(&p, &BnbConfig::default()).unwrap();
        assert_eq!(r.status, Status::Optimal);
        assert_eq!(r.objective, brute_force(&p).unwrap().result.objective);
        assert!(r.nodes_explored < 1 << 10, "explored {}", r.nodes_explored);
        assert!(r.bound_at_root.unwrap() >= r.objective);
    }

    #[test]
    fn node_limit_yields_incumbent() {
        let p = triads(6, Rational::new(7, 10));
        let cfg = BnbConfig {
            node_limit: 40,
            ..BnbConfig::default()
        };
        let r = branch_and_bound(&p, &cfg).unwrap();
        assert_eq!(r.status, Status::Incumbent);
        let cfg = BnbConfig {
            node_limit: 3,
            ..BnbConfig::default()
        };
        assert!(matches!(
            branch_and_bound(&p, &cfg),
            Err(Error::LimitReached)
        ));
    }

    #[test]
    fn infeasible_incumbent_is_rejected() {
        let p = triads(5, Rational::new(1, 2));
        let cfg = BnbConfig {
            incumbent: Some(Graph::empty(5)),
            ..BnbConfig::default()
        };
        assert!(branch_and_bound(&p, &cfg).is_err());
        let cfg = BnbConfig {
            incumbent: Some(star_plus_chords(5, 2).unwrap()),
            ..BnbConfig::default()
        };
        assert_eq!(branch_and_bound(&p, &cfg).unwrap().status, Status::Optimal);
    }

    #[test]
    fn empty_space_is_infeasible() {
        let h = Hamiltonian::triads_vs_nonedges(Rational::new(1, 2)).unwrap();
        let p = Problem::new(
            5,
            SampleSpace {
                connected: true,
                edge_count: Some(3),
            },
            h,
        )
        .unwrap();
        assert!(matches!(
            branch_and_bound(&p, &BnbConfig::default()),
            Err(Error::Infeasible)
        ));
    }
}
