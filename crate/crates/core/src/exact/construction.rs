use num_integer::Integer;

use crate::error::{Error, Result};
use crate::graph::{pair_count, Graph};
use crate::problem::Problem;
use crate::rational::{int, is_unit_interval, Rational};
use crate::statistics::Statistic;

/// Lower bounds on the triangle and edge counts of an optimal network for
/// the two-term triangles/non-edges max–min objective on connected graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangleBound {
    pub h: usize,
    pub min_edges: usize,
}

/// `h = min(n-1, ⌊α (n-2)(n-1)/2⌋)` and `min_edges = (n-1) + h`.
///
/// `h` counts chords, so the fractional value is floored.
pub fn triangle_bound(n: usize, alpha: Rational) -> Result<TriangleBound> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "bound needs n >= 2, got {n}"
        )));
    }
    if !is_unit_interval(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    let scaled = alpha * int(((n - 2) * (n - 1) / 2) as i128);
    let floored = Integer::div_floor(scaled.numer(), scaled.denom()) as usize;
    let h = floored.min(n - 1);
    Ok(TriangleBound {
        h,
        min_edges: n - 1 + h,
    })
}

/// Chords available between consecutive leaves of a star, leaves taken in
/// circular order `1, 2, ..., n-1, 1`.
pub fn chord_slots(n: usize) -> usize {
    match n.saturating_sub(1) {
        0 | 1 => 0,
        2 => 1,
        leaves => leaves,
    }
}

/// Star centred on node 0 plus `h` chords `(1,2), (2,3), ..., (n-1,1)`
/// between leaves at distance two. Each chord closes a triangle with the
/// centre.
pub fn star_plus_chords(n: usize, h: usize) -> Result<Graph> {
    let available = chord_slots(n);
    if h > available {
        return Err(Error::ChordSlots { h, available });
    }
    let mut g = Graph::star(n);
    for k in 0..h {
        let a = 1 + k;
        let b = if a + 1 < n { a + 1 } else { 1 };
        g.insert(a, b);
    }
    Ok(g)
}

/// `min((1-α) h, α (n(n-1)/2 - (n-1) - h))`: the objective reached by
/// adding `h` chords to a star.
pub fn construction_floor(n: usize, alpha: Rational, h: usize) -> Rational {
    let non_edges = pair_count(n) as i128 - (n as i128 - 1) - h as i128;
    ((int(1) - alpha) * int(h as i128)).min(alpha * int(non_edges))
}

/// Star-plus-chords incumbent for triangle/non-edge objectives, when it is
/// feasible for `problem`.
pub fn warm_start(problem: &Problem) -> Option<Graph> {
    let alpha = problem.objective.alpha?;
    let stats: Vec<&Statistic> = problem
        .objective
        .terms
        .iter()
        .map(|t| &t.statistic)
        .collect();
    if stats != [&Statistic::NonEdges, &Statistic::Triangles] || problem.n < 2 {
        return None;
    }
    let h = triangle_bound(problem.n, alpha)
        .ok()?
        .h
        .min(chord_slots(problem.n));
    let g = star_plus_chords(problem.n, h).ok()?;
    problem.evaluate(&g).map(|_| g)
}
