//! Model fragments. Each builder adds variables and rows to an existing
//! [`ConstraintSystem`], so fragments compose; shared variables (the edge
//! indicators `x_i_j`) are declared once.

use num_traits::Zero;

use super::system::{AffineExpr, ConstraintSystem, LinExpr, ObjSense, Relation, VarKind};
use crate::error::{Error, Result};
use crate::graph::{pair_count, pairs};
use crate::rational::{int, is_unit_interval, Rational};
use crate::statistics::{DistanceMatrix, SampleSpace};

/// How the triangle indicators `w_ijk` are linearized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TriangleMode {
    /// `w <= x_ij`, `w <= x_jk`, `w <= x_ik`, `w >= x_ij + x_jk + x_ik - 2`.
    #[default]
    Corrected,
    /// The auxiliary `y`/`z` system with its third row repeating `x_ij`.
    /// Kept for comparison only: it does not pin `w` to the product.
    AsPrinted,
}

pub fn x_name(i: usize, j: usize) -> String {
    format!("x_{i}_{j}")
}

pub fn w_name(i: usize, j: usize, k: usize) -> String {
    format!("w_{i}_{j}_{k}")
}

/// Connectivity-flow arc variable `i -> j`.
pub fn f_name(i: usize, j: usize) -> String {
    format!("f_{i}_{j}")
}

/// Multicommodity arc variable `i -> j` of the commodity sourced at `h`.
pub fn g_name(h: usize, i: usize, j: usize) -> String {
    format!("g_{h}_{i}_{j}")
}

pub const H_NAME: &str = "H";

fn one() -> Rational {
    int(1)
}

/// Binary edge indicators for all pairs, in lexicographic order.
pub fn add_edge_variables(cs: &mut ConstraintSystem, n: usize) -> Vec<usize> {
    cs.nodes = cs.nodes.max(n);
    pairs(n).map(|(i, j)| cs.binary(&x_name(i, j))).collect()
}

fn edge_sum(cs: &mut ConstraintSystem, n: usize) -> LinExpr {
    LinExpr::from_terms(add_edge_variables(cs, n).into_iter().map(|v| (v, one())))
}

/// `Σ x_ij = d`.
pub fn build_fixed_density(cs: &mut ConstraintSystem, n: usize, d: usize) -> Result<()> {
    if d > pair_count(n) {
        return Err(Error::DensityOutOfRange {
            d,
            max: pair_count(n),
        });
    }
    let sum = edge_sum(cs, n);
    cs.constrain("density", sum, Relation::Eq, int(d as i128));
    Ok(())
}

/// Triad indicators `w_ijk` for every `i < j < k`.
pub fn build_triangle_indicators(cs: &mut ConstraintSystem, n: usize, mode: TriangleMode) {
    add_edge_variables(cs, n);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let xij = cs.var(&x_name(i, j)).unwrap();
                let xjk = cs.var(&x_name(j, k)).unwrap();
                let xik = cs.var(&x_name(i, k)).unwrap();
                let w = cs.binary(&w_name(i, j, k));
                let tag = format!("{i}_{j}_{k}");
                match mode {
                    TriangleMode::Corrected => {
                        for (edge, x) in [("ij", xij), ("jk", xjk), ("ik", xik)] {
                            let e = LinExpr::new().with(w, one()).with(x, -one());
                            cs.constrain(format!("tri_{edge}_{tag}"), e, Relation::Le, int(0));
                        }
                        let all = LinExpr::from_terms([
                            (w, one()),
                            (xij, -one()),
                            (xjk, -one()),
                            (xik, -one()),
                        ]);
                        cs.constrain(format!("tri_all_{tag}"), all, Relation::Ge, int(-2));
                    }
                    TriangleMode::AsPrinted => {
                        let y = cs.binary(&format!("y_{tag}"));
                        let z = cs.binary(&format!("z_{tag}"));
                        // 1 - z <= x <= y, with the third pair repeating x_ij
                        for (row, x) in [("a", xij), ("b", xjk), ("c", xij)] {
                            let lo = LinExpr::from_terms([(x, one()), (z, one())]);
                            cs.constrain(format!("tp_lo{row}_{tag}"), lo, Relation::Ge, one());
                            let up = LinExpr::from_terms([(x, one()), (y, -one())]);
                            cs.constrain(format!("tp_up{row}_{tag}"), up, Relation::Le, int(0));
                        }
                        let e = LinExpr::from_terms([(y, one()), (z, -one()), (w, -one())]);
                        cs.constrain(format!("tp_wlo_{tag}"), e, Relation::Le, int(0));
                        let e = LinExpr::from_terms([(w, one()), (z, one())]);
                        cs.constrain(format!("tp_wup_{tag}"), e, Relation::Le, one());
                        let e = LinExpr::from_terms([
                            (xij, one()),
                            (xjk, one()),
                            (xik, one()),
                            (z, one()),
                        ]);
                        cs.constrain(format!("tp_sum_{tag}"), e, Relation::Le, int(3));
                    }
                }
            }
        }
    }
}

/// Single-commodity flow of `n-1` units out of `root`, one unit absorbed
/// at every other node, with arc capacity `n x_ij`.
pub fn build_connectivity_flow(cs: &mut ConstraintSystem, n: usize, root: usize) -> Result<()> {
    if root >= n {
        return Err(Error::InvalidParameter(format!(
            "root {root} out of range for n = {n}"
        )));
    }
    add_edge_variables(cs, n);
    let mut balance = vec![LinExpr::new(); n];
    for (i, j) in pairs(n) {
        let fij = cs.nonnegative(&f_name(i, j));
        let fji = cs.nonnegative(&f_name(j, i));
        balance[i].add(fij, one()).add(fji, -one());
        balance[j].add(fji, one()).add(fij, -one());
        let x = cs.var(&x_name(i, j)).unwrap();
        let cap = LinExpr::from_terms([(fij, one()), (fji, one()), (x, -int(n as i128))]);
        cs.constrain(format!("cap_{i}_{j}"), cap, Relation::Le, int(0));
    }
    for (k, expr) in balance.into_iter().enumerate() {
        let rhs = if k == root {
            int(n as i128 - 1)
        } else {
            int(-1)
        };
        cs.constrain(format!("bal_{k}"), expr, Relation::Eq, rhs);
    }
    Ok(())
}

/// One commodity per source node `h`, each shipping `n-1` units to the
/// other nodes, sharing arc capacity `n² x_ij`.
pub fn build_multicommodity_flow(cs: &mut ConstraintSystem, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "multicommodity flow needs n >= 2, got {n}"
        )));
    }
    add_edge_variables(cs, n);
    for (i, j) in pairs(n) {
        let mut cap = LinExpr::new();
        for h in 0..n {
            cap.add(cs.nonnegative(&g_name(h, i, j)), one());
            cap.add(cs.nonnegative(&g_name(h, j, i)), one());
        }
        let x = cs.var(&x_name(i, j)).unwrap();
        cap.add(x, -int((n * n) as i128));
        cs.constrain(format!("mcap_{i}_{j}"), cap, Relation::Le, int(0));
    }
    for h in 0..n {
        for k in 0..n {
            let mut e = LinExpr::new();
            for other in (0..n).filter(|&o| o != k) {
                e.add(cs.var(&g_name(h, k, other)).unwrap(), one());
                e.add(cs.var(&g_name(h, other, k)).unwrap(), -one());
            }
            let rhs = if k == h { int(n as i128 - 1) } else { int(-1) };
            cs.constrain(format!("mbal_{h}_{k}"), e, Relation::Eq, rhs);
        }
    }
    Ok(())
}

/// `n(n-1)/2 - Σ x_ij`.
pub fn non_edges_expr(cs: &mut ConstraintSystem, n: usize) -> AffineExpr {
    let mut linear = LinExpr::new();
    linear.add_expr(&edge_sum(cs, n), -one());
    AffineExpr {
        linear,
        constant: int(pair_count(n) as i128),
    }
}

/// `Σ w_ijk`; requires the triangle indicators.
pub fn triangles_expr(cs: &ConstraintSystem, n: usize) -> Result<AffineExpr> {
    let mut linear = LinExpr::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let name = w_name(i, j, k);
                linear.add(cs.var(&name).ok_or(Error::MissingVariable(name))?, one());
            }
        }
    }
    Ok(AffineExpr {
        linear,
        constant: Rational::zero(),
    })
}

/// `Σ δ_ij x_ij`.
pub fn physical_distance_expr(cs: &mut ConstraintSystem, delta: &DistanceMatrix) -> AffineExpr {
    let n = delta.n();
    let vars = add_edge_variables(cs, n);
    let linear = LinExpr::from_terms(pairs(n).zip(vars).map(|((i, j), v)| (v, delta.get(i, j))));
    AffineExpr {
        linear,
        constant: Rational::zero(),
    }
}

/// Total multicommodity flow; requires [`build_multicommodity_flow`].
pub fn flow_distance_expr(cs: &ConstraintSystem, n: usize) -> Result<AffineExpr> {
    let mut linear = LinExpr::new();
    for h in 0..n {
        for (i, j) in pairs(n) {
            for name in [g_name(h, i, j), g_name(h, j, i)] {
                linear.add(cs.var(&name).ok_or(Error::MissingVariable(name))?, one());
            }
        }
    }
    Ok(AffineExpr {
        linear,
        constant: Rational::zero(),
    })
}

/// Sample-space rows: connectivity flow rooted at node 0 and/or a fixed
/// edge count.
pub fn add_sample_space(cs: &mut ConstraintSystem, n: usize, space: SampleSpace) -> Result<()> {
    add_edge_variables(cs, n);
    if space.connected && n >= 1 {
        build_connectivity_flow(cs, n, 0)?;
    }
    if let Some(d) = space.edge_count {
        build_fixed_density(cs, n, d)?;
    }
    Ok(())
}

/// Edge variables, corrected triangle indicators and sample-space rows: the
/// statistics-defining part shared by the max–min and robust models.
pub fn build_triads_base(
    n: usize,
    space: SampleSpace,
) -> Result<(ConstraintSystem, [AffineExpr; 2])> {
    let mut cs = ConstraintSystem::new(n);
    add_edge_variables(&mut cs, n);
    build_triangle_indicators(&mut cs, n, TriangleMode::Corrected);
    add_sample_space(&mut cs, n, space)?;
    let s1 = non_edges_expr(&mut cs, n);
    let s2 = triangles_expr(&cs, n)?;
    Ok((cs, [s1, s2]))
}

/// Adds `H` and the rows `H <= θ_j S_j`, then maximizes `H`.
pub fn add_epigraph(
    cs: &mut ConstraintSystem,
    terms: &[(Rational, AffineExpr)],
    lower: Option<Rational>,
    upper: Option<Rational>,
) -> usize {
    let h = cs.variable(H_NAME, VarKind::Continuous, lower, upper);
    for (k, (theta, s)) in terms.iter().enumerate() {
        // H - θ (linear) <= θ constant
        let mut e = LinExpr::new().with(h, one());
        e.add_expr(&s.linear, -*theta);
        cs.constrain(
            format!("epi_{}", k + 1),
            e,
            Relation::Le,
            *theta * s.constant,
        );
    }
    cs.objective.sense = ObjSense::Maximize;
    cs.objective.expr = LinExpr::new().with(h, one());
    h
}

/// `max H  s.t.  H <= α S_non-edges,  H <= (1-α) S_triangles,  x ∈ space`.
pub fn build_maxmin(n: usize, alpha: Rational, space: SampleSpace) -> Result<ConstraintSystem> {
    if !is_unit_interval(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    let (mut cs, [s1, s2]) = build_triads_base(n, space)?;
    let upper = alpha * int(pair_count(n) as i128);
    add_epigraph(
        &mut cs,
        &[(alpha, s1), (one() - alpha, s2)],
        Some(int(0)),
        Some(upper),
    );
    Ok(cs)
}

/// Robust second stage: `max H  s.t.  H <= θ_j S_j,  Σ θ_j S_j >= γ P*`.
/// `base` must define the statistics in `terms` but not `H`.
pub fn build_robust_second_stage(
    mut base: ConstraintSystem,
    terms: &[(Rational, AffineExpr)],
    p_star: Option<Rational>,
    gamma: Rational,
) -> Result<ConstraintSystem> {
    let p_star = p_star.ok_or(Error::MissingStageOne)?;
    if !is_unit_interval(&gamma) {
        return Err(Error::InvalidParameter(format!(
            "gamma must lie in [0, 1], got {gamma}"
        )));
    }
    if base.var(H_NAME).is_some() {
        return Err(Error::InvalidParameter(
            "base model already defines H".into(),
        ));
    }
    add_epigraph(&mut base, terms, None, None);
    let mut floor = LinExpr::new();
    let mut constant = Rational::zero();
    for (theta, s) in terms {
        floor.add_expr(&s.linear, *theta);
        constant += *theta * s.constant;
    }
    base.constrain("floor", floor, Relation::Ge, gamma * p_star - constant);
    Ok(base)
}

/// Minimize total multicommodity flow for a fixed graph: the LP whose
/// optimum is the flow distance. The edge indicators are fixed by bounds.
pub fn build_flow_distance_lp(g: &crate::graph::Graph) -> Result<ConstraintSystem> {
    let n = g.n();
    let mut cs = ConstraintSystem::new(n);
    build_multicommodity_flow(&mut cs, n)?;
    for (i, j) in pairs(n) {
        let v = int(g.has_edge(i, j) as i128);
        cs.set_bounds(cs.var(&x_name(i, j)).unwrap(), Some(v), Some(v));
    }
    cs.objective = super::system::Objective {
        sense: ObjSense::Minimize,
        expr: flow_distance_expr(&cs, n)?.linear,
    };
    Ok(cs)
}
