//! First-improve local search over single-edge toggles.
//!
//! Each scan visits the candidate moves in a freshly shuffled order and
//! applies the first one that strictly improves the objective while staying
//! inside the sample space. The search stops at a 1-toggle local optimum.
//! When the sample space fixes the edge count, a single toggle always leaves
//! it, so moves become swaps (drop one edge, add one non-edge).

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{chord_slots, star_plus_chords, triangle_bound};
use crate::graph::{pair_count, pairs, Graph};
use crate::problem::{Evaluation, Problem, SolveResult, Status};
use crate::rational::Rational;
use crate::statistics::{Form, Sense};

#[derive(Clone, Debug, PartialEq)]
pub enum Start {
    Star,
    /// Star plus the chord count guaranteed by the triangle lower bound.
    StarPlusChords,
    RandomConnected,
    Given(Graph),
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub seed: u64,
    /// Cap on accepted moves per restart.
    pub max_iterations: usize,
    pub restarts: usize,
    pub start: Start,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            max_iterations: 1_000_000,
            restarts: 10,
            start: Start::RandomConnected,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "restarts and max_iterations must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Seed for restart `r`; restart 0 uses the configured seed unchanged.
pub fn restart_seed(seed: u64, r: usize) -> u64 {
    seed ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

#[derive(Clone, Copy, Debug)]
enum Move {
    Toggle(usize, usize),
    Swap {
        drop: (usize, usize),
        add: (usize, usize),
    },
}

struct State<'a> {
    problem: &'a Problem,
    graph: Graph,
    stats: Vec<Rational>,
    value: Rational,
}

impl<'a> State<'a> {
    fn new(problem: &'a Problem, graph: Graph) -> Result<Self> {
        let Evaluation { value, statistics } = problem
            .evaluate(&graph)
            .ok_or_else(|| Error::InvalidParameter("local search start is infeasible".into()))?;
        Ok(State {
            problem,
            graph,
            stats: statistics,
            value,
        })
    }

    /// Whether `candidate` can no longer beat the current value once the
    /// given weighted term is known.
    fn term_blocks(&self, weighted: Rational) -> bool {
        let h = &self.problem.objective;
        match (h.form, h.sense) {
            (Form::MaxMin, Sense::Maximize) => weighted <= self.value,
            (Form::MaxMin, Sense::Minimize) => weighted >= self.value,
            (Form::Linear, _) => false,
        }
    }

    /// Evaluation after `mv`, or `None` when it is infeasible or cannot
    /// strictly improve.
    fn try_move(&self, mv: Move) -> Option<(Graph, Evaluation)> {
        let h = &self.problem.objective;
        let mut next = self.stats.clone();
        let local: Vec<usize> = (0..h.terms.len())
            .filter(|&k| h.terms[k].statistic.is_local())
            .collect();
        // local statistics first, so hopeless moves skip the expensive ones
        let applied = match mv {
            Move::Toggle(i, j) => {
                for &k in &local {
                    next[k] += h.terms[k].statistic.toggle_delta(&self.graph, i, j)?;
                }
                None
            }
            Move::Swap { drop, add } => {
                let mut g = self.graph.clone();
                for (i, j) in [drop, add] {
                    for &k in &local {
                        next[k] += h.terms[k].statistic.toggle_delta(&g, i, j)?;
                    }
                    g.toggle(i, j);
                }
                Some(g)
            }
        };
        if local
            .iter()
            .any(|&k| self.term_blocks(h.terms[k].theta * next[k]))
        {
            return None;
        }
        let all_local = local.len() == h.terms.len();
        if all_local && self.problem.score(h.combine(&next)) <= self.problem.score(self.value) {
            return None;
        }
        let candidate = applied.unwrap_or_else(|| {
            let Move::Toggle(i, j) = mv else {
                unreachable!()
            };
            let mut g = self.graph.clone();
            g.toggle(i, j);
            g
        });
        let removes_edge = match mv {
            Move::Toggle(i, j) => self.graph.has_edge(i, j),
            Move::Swap { .. } => true,
        };
        if removes_edge
            && (self.problem.space.connected || h.needs_connectivity())
            && !candidate.is_connected()
        {
            return None;
        }
        for (k, term) in h.terms.iter().enumerate() {
            if !term.statistic.is_local() {
                next[k] = term.statistic.evaluate(&candidate).ok()?;
            }
        }
        let value = h.combine(&next);
        if self.problem.score(value) <= self.problem.score(self.value) {
            return None;
        }
        if let Some(floor) = &self.problem.floor {
            if floor.hamiltonian.evaluate(&candidate).ok()? < floor.rhs {
                return None;
            }
        }
        Some((
            candidate,
            Evaluation {
                value,
                statistics: next,
            },
        ))
    }

    fn candidates(&self, rng: &mut ChaCha8Rng) -> Vec<Move> {
        let n = self.problem.n;
        let mut moves: Vec<Move> = if self.problem.space.edge_count.is_some() {
            let (on, off): (Vec<_>, Vec<_>) =
                pairs(n).partition(|&(i, j)| self.graph.has_edge(i, j));
            on.iter()
                .flat_map(|&drop| off.iter().map(move |&add| Move::Swap { drop, add }))
                .collect()
        } else {
            pairs(n).map(|(i, j)| Move::Toggle(i, j)).collect()
        };
        moves.shuffle(rng);
        moves
    }
}

/// Climbs from `start` to a 1-toggle local optimum (or until
/// `cfg.max_iterations` moves have been accepted).
pub fn first_improve(start: &Graph, problem: &Problem, cfg: &SearchConfig) -> Result<SolveResult> {
    cfg.validate()?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut state = State::new(problem, start.clone())?;
    let mut evaluated = 0u64;
    let mut accepted = 0usize;
    'scan: while accepted < cfg.max_iterations {
        for mv in state.candidates(&mut rng) {
            evaluated += 1;
            if let Some((graph, eval)) = state.try_move(mv) {
                state.graph = graph;
                state.stats = eval.statistics;
                state.value = eval.value;
                accepted += 1;
                continue 'scan;
            }
        }
        break;
    }
    let eval = Evaluation {
        value: state.value,
        statistics: state.stats,
    };
    let mut result = SolveResult::new(state.graph, eval, Status::Incumbent);
    result.nodes_explored = evaluated;
    result.wall_time = started.elapsed();
    Ok(result)
}

/// True when no single move (toggle, or swap under a fixed edge count)
/// strictly improves `g`. Checked by full recomputation.
pub fn is_local_optimum(problem: &Problem, g: &Graph) -> bool {
    let Some(base) = problem.evaluate(g) else {
        return false;
    };
    let base = problem.score(base.value);
    let improves = |h: &Graph| {
        problem
            .evaluate(h)
            .is_some_and(|e| problem.score(e.value) > base)
    };
    let n = problem.n;
    if problem.space.edge_count.is_some() {
        let (on, off): (Vec<_>, Vec<_>) = pairs(n).partition(|&(i, j)| g.has_edge(i, j));
        !on.iter().any(|&(a, b)| {
            off.iter().any(|&(c, d)| {
                let mut h = g.clone();
                h.remove(a, b);
                h.insert(c, d);
                improves(&h)
            })
        })
    } else {
        !pairs(n).any(|(i, j)| {
            let mut h = g.clone();
            h.toggle(i, j);
            improves(&h)
        })
    }
}

/// Starting graph for one restart.
pub fn start_graph(problem: &Problem, start: &Start, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let n = problem.n;
    Ok(match start {
        Start::Star => Graph::star(n),
        Start::StarPlusChords => {
            let alpha = problem.objective.alpha.unwrap_or_default();
            let h = if n >= 2 {
                triangle_bound(n, alpha)?.h.min(chord_slots(n))
            } else {
                0
            };
            star_plus_chords(n, h)?
        }
        Start::Given(g) => g.clone(),
        Start::RandomConnected => random_start(problem, rng),
    })
}

/// Random spanning tree plus random extra pairs; under a fixed edge count
/// the extras top it up to exactly that many edges.
fn random_start(problem: &Problem, rng: &mut ChaCha8Rng) -> Graph {
    let n = problem.n;
    let mut g = Graph::empty(n);
    let target = problem.space.edge_count;
    let tree_ok = target.is_none_or(|d| n == 0 || d >= n - 1);
    if tree_ok {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        for k in 1..n {
            let parent = order[rng.random_range(0..k)];
            g.insert(order[k], parent);
        }
    }
    let mut rest: Vec<(usize, usize)> = pairs(n).filter(|&(i, j)| !g.has_edge(i, j)).collect();
    rest.shuffle(rng);
    let extra = match target {
        Some(d) => d.saturating_sub(g.edge_count()),
        None => {
            let p = pair_count(n);
            rng.random_range(0..=p.saturating_sub(g.edge_count()) / 2)
        }
    };
    for &(i, j) in rest.iter().take(extra) {
        g.insert(i, j);
    }
    g
}

/// Runs `cfg.restarts` independent searches (in parallel) and keeps the
/// best, breaking ties toward the smaller edge bitset.
pub fn multi_restart(problem: &Problem, cfg: &SearchConfig) -> Result<SolveResult> {
    cfg.validate()?;
    let started = Instant::now();
    let runs: Vec<SolveResult> = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| {
            let seed = restart_seed(cfg.seed, r);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            let start = start_graph(problem, &cfg.start, &mut rng)?;
            first_improve(
                &start,
                problem,
                &SearchConfig {
                    seed,
                    ..cfg.clone()
                },
            )
        })
        .collect::<Result<_>>()?;
    let evaluated: u64 = runs.iter().map(|r| r.nodes_explored).sum();
    let mut best = runs
        .into_iter()
        .reduce(|a, b| {
            if problem.better((&b.objective, &b.graph), (&a.objective, &a.graph)) {
                b
            } else {
                a
            }
        })
        .expect("at least one restart");
    best.nodes_explored = evaluated;
    best.wall_time = started.elapsed();
    Ok(best)
}
