//! Feasibility and optimality certificates for the flow models, checked
//! against the constraint rows themselves rather than graph code.
//!
//! A connected graph gets an explicit flow; a disconnected one gets a node
//! set whose summed balance rows cannot hold once the capacity rows of
//! absent edges pin the entering arcs to zero. For the multicommodity model
//! a primal flow and a set of row duals bracket the optimum from both sides.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::builders::{f_name, g_name, x_name};
use super::check::{check_assignment, edge_assignment, fill_missing_with_zero};
use super::system::{ConstraintSystem, LinExpr, Relation};
use crate::error::{Error, Result};
use crate::graph::{pairs, Graph};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum FlowCertificate {
    /// Complete assignment satisfying every row.
    Flow(BTreeMap<String, Rational>),
    /// Sink-side node set no flow can reach.
    Cut(Vec<usize>),
}

/// Values pinned either by equal bounds or by the edge indicators of `g`.
fn fixed_values(cs: &ConstraintSystem, g: &Graph) -> Vec<Option<Rational>> {
    let mut fixed: Vec<Option<Rational>> = cs
        .variables()
        .iter()
        .map(|v| match (&v.lower, &v.upper) {
            (Some(l), Some(u)) if l == u => Some(*l),
            _ => None,
        })
        .collect();
    for (i, j) in pairs(g.n().min(cs.nodes)) {
        if let Some(x) = cs.var(&x_name(i, j)) {
            fixed[x] = Some(int(g.has_edge(i, j) as i128));
        }
    }
    fixed
}

fn nonnegative(cs: &ConstraintSystem, v: usize) -> bool {
    cs.variables()[v].lower.is_some_and(|l| !l.is_negative())
}

/// Variables forced to zero by some `<=` row: after substituting fixed
/// values, every remaining term has a positive coefficient on a
/// nonnegative variable and the residual right-hand side is zero.
fn forced_zero(cs: &ConstraintSystem, fixed: &[Option<Rational>]) -> Vec<bool> {
    let mut zero = vec![false; cs.variables().len()];
    for (v, f) in fixed.iter().enumerate() {
        if f.is_some_and(|f| f.is_zero()) {
            zero[v] = true;
        }
    }
    for c in cs
        .constraints()
        .iter()
        .filter(|c| c.relation == Relation::Le)
    {
        let mut rhs = c.rhs;
        let mut free = Vec::new();
        let mut ok = true;
        for &(v, a) in c.expr.terms() {
            match fixed[v] {
                Some(val) => rhs -= a * val,
                None if a.is_positive() && nonnegative(cs, v) => free.push(v),
                None => ok = false,
            }
        }
        if ok && rhs.is_zero() {
            for v in free {
                zero[v] = true;
            }
        }
    }
    zero
}

/// Checks that the balance rows `bal_k` summed over `sink_side` are
/// unsatisfiable given `g`: the summed left-hand side is bounded below by
/// a value above the summed right-hand side.
pub fn verify_cut(cs: &ConstraintSystem, g: &Graph, sink_side: &[usize]) -> bool {
    if sink_side.is_empty() {
        return false;
    }
    let fixed = fixed_values(cs, g);
    let zero = forced_zero(cs, &fixed);
    let mut sum = LinExpr::new();
    let mut rhs = Rational::zero();
    for &k in sink_side {
        let Some(row) = cs.constraint(&format!("bal_{k}")) else {
            return false;
        };
        if row.relation != Relation::Eq {
            return false;
        }
        sum.add_expr(&row.expr, int(1));
        rhs += row.rhs;
    }
    let mut lower = Rational::zero();
    for &(v, a) in sum.terms() {
        if let Some(val) = fixed[v] {
            lower += a * val;
        } else if zero[v] {
            continue;
        } else if a.is_positive() && nonnegative(cs, v) {
            lower += a * cs.variables()[v].lower.unwrap();
        } else {
            return false;
        }
    }
    lower > rhs
}

/// Single-commodity certificate for the model built by
/// [`build_connectivity_flow`](super::builders::build_connectivity_flow).
///
/// A connected `g` routes one unit along each BFS-tree path from `root`,
/// so a tree arc carries the size of the subtree below it.
pub fn connectivity_certificate(
    cs: &ConstraintSystem,
    g: &Graph,
    root: usize,
) -> Result<FlowCertificate> {
    let n = g.n();
    if root >= n {
        return Err(Error::InvalidParameter(format!(
            "root {root} out of range for n = {n}"
        )));
    }
    let dist = g.bfs_distances(root);
    let sink: Vec<usize> = (0..n).filter(|&v| dist[v].is_none()).collect();
    if !sink.is_empty() {
        return Ok(FlowCertificate::Cut(sink));
    }
    let mut a = edge_assignment(g);
    for (v, (parent, units)) in tree_flows(g, root).into_iter().enumerate() {
        if let Some(p) = parent {
            a.insert(f_name(p, v), int(units as i128));
        }
    }
    fill_missing_with_zero(cs, &mut a);
    Ok(FlowCertificate::Flow(a))
}

/// `(parent, subtree size)` per node of the BFS tree rooted at `root`.
fn tree_flows(g: &Graph, root: usize) -> Vec<(Option<usize>, usize)> {
    let parent = g.bfs_parents(root);
    let dist = g.bfs_distances(root);
    let mut order: Vec<usize> = (0..g.n()).filter(|&v| dist[v].is_some()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(dist[v]));
    let mut size = vec![1usize; g.n()];
    for &v in &order {
        if let Some(p) = parent[v] {
            size[p] += size[v];
        }
    }
    (0..g.n()).map(|v| (parent[v], size[v])).collect()
}

/// Whether `cert` proves feasibility (every row holds) or infeasibility
/// (a valid cut) of `cs` restricted to `g`.
pub fn verify_connectivity(
    cs: &ConstraintSystem,
    g: &Graph,
    cert: &FlowCertificate,
) -> Result<bool> {
    match cert {
        FlowCertificate::Flow(a) => {
            let verdict = check_assignment(cs, a)?;
            Ok(verdict.is_feasible() && verdict.graph.as_ref() == Some(g))
        }
        FlowCertificate::Cut(sink) => Ok(verify_cut(cs, g, sink)),
    }
}

/// Primal flow and dual prices for the flow-distance model of a connected
/// graph; both sides evaluate to `value`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowDistanceCertificate {
    pub primal: BTreeMap<String, Rational>,
    /// Prices of the balance rows `mbal_h_k`.
    pub duals: BTreeMap<String, Rational>,
    pub value: Rational,
}

/// Shortest-path flows for every commodity, priced by BFS distance: the
/// row of node `k` in commodity `h` gets `-dist(h, k)`.
pub fn flow_distance_certificate(
    cs: &ConstraintSystem,
    g: &Graph,
) -> Result<FlowDistanceCertificate> {
    let n = g.n();
    if !g.is_connected() {
        return Err(Error::Disconnected("flow distance certificate"));
    }
    let mut primal = edge_assignment(g);
    let mut duals = BTreeMap::new();
    let mut value = Rational::zero();
    for h in 0..n {
        for (v, (parent, units)) in tree_flows(g, h).into_iter().enumerate() {
            if let Some(p) = parent {
                primal.insert(g_name(h, p, v), int(units as i128));
                value += int(units as i128);
            }
        }
        for (k, d) in g.bfs_distances(h).into_iter().enumerate() {
            duals.insert(format!("mbal_{h}_{k}"), -int(d.unwrap_or(0) as i128));
        }
    }
    fill_missing_with_zero(cs, &mut primal);
    Ok(FlowDistanceCertificate {
        primal,
        duals,
        value,
    })
}

/// Lower bound on a minimization objective proved by equality-row prices
/// `duals`: every variable that is not forced to zero must be nonnegative
/// with nonnegative reduced cost. Rows without a price get zero. Returns
/// `None` when the prices are not dual feasible.
pub fn dual_lower_bound(
    cs: &ConstraintSystem,
    g: &Graph,
    duals: &BTreeMap<String, Rational>,
) -> Option<Rational> {
    let fixed = fixed_values(cs, g);
    let zero = forced_zero(cs, &fixed);
    let nv = cs.variables().len();
    let mut reduced: Vec<Rational> = vec![Rational::zero(); nv];
    for &(v, c) in cs.objective.expr.terms() {
        reduced[v] = c;
    }
    let mut bound = Rational::zero();
    for c in cs.constraints() {
        let Some(&y) = duals.get(&c.name) else {
            continue;
        };
        if c.relation != Relation::Eq {
            return None;
        }
        for &(v, a) in c.expr.terms() {
            reduced[v] -= y * a;
        }
        bound += y * c.rhs;
    }
    for v in 0..nv {
        if let Some(val) = fixed[v] {
            bound += reduced[v] * val;
        } else if zero[v] {
            continue;
        } else if !(nonnegative(cs, v) && !reduced[v].is_negative()) {
            return None;
        } else {
            bound += reduced[v] * cs.variables()[v].lower.unwrap();
        }
    }
    Some(bound)
}

/// Both halves hold: the primal flow is feasible with objective `value`
/// and the duals prove `value` is a lower bound, so `value` is the optimum.
pub fn verify_flow_distance(
    cs: &ConstraintSystem,
    g: &Graph,
    cert: &FlowDistanceCertificate,
) -> Result<bool> {
    let verdict = check_assignment(cs, &cert.primal)?;
    let primal_ok = verdict.is_feasible() && verdict.objective == cert.value;
    Ok(primal_ok && dual_lower_bound(cs, g, &cert.duals) == Some(cert.value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::builders::{build_connectivity_flow, build_flow_distance_lp};

    fn flow_model(n: usize) -> ConstraintSystem {
        let mut cs = ConstraintSystem::new(n);
        build_connectivity_flow(&mut cs, n, 0).unwrap();
        cs
    }

    #[test]
    fn path_flow_values() {
        let cs = flow_model(3);
        let g = Graph::path(3);
        let cert = connectivity_certificate(&cs, &g, 0).unwrap();
        let FlowCertificate::Flow(a) = &cert else {
            panic!("expected a flow")
        };
        assert_eq!(a["f_0_1"], int(2));
        assert_eq!(a["f_1_2"], int(1));
        assert!(verify_connectivity(&cs, &g, &cert).unwrap());
    }

    #[test]
    fn star_spokes_carry_one_unit() {
        let cs = flow_model(5);
        let g = Graph::star(5);
        let FlowCertificate::Flow(a) = connectivity_certificate(&cs, &g, 0).unwrap() else {
            panic!()
        };
        for j in 1..5 {
            assert_eq!(a[&f_name(0, j)], int(1));
        }
    }

    #[test]
    fn disjoint_edges_are_cut() {
        let cs = flow_model(4);
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let cert = connectivity_certificate(&cs, &g, 0).unwrap();
        assert_eq!(cert, FlowCertificate::Cut(vec![2, 3]));
        assert!(verify_connectivity(&cs, &g, &cert).unwrap());
        // a set that includes the root side is not a certificate
        assert!(!verify_cut(&cs, &g, &[1]));
        assert!(!verify_cut(&cs, &Graph::complete(4), &[2, 3]));
    }

    #[test]
    fn flow_distance_brackets() {
        for (g, expected) in [(Graph::complete(3), 6), (Graph::path(3), 8)] {
            let cs = build_flow_distance_lp(&g).unwrap();
            let cert = flow_distance_certificate(&cs, &g).unwrap();
            assert_eq!(cert.value, int(expected));
            assert!(verify_flow_distance(&cs, &g, &cert).unwrap());
        }
    }

    #[test]
    fn wrong_duals_are_rejected() {
        let g = Graph::path(3);
        let cs = build_flow_distance_lp(&g).unwrap();
        let mut cert = flow_distance_certificate(&cs, &g).unwrap();
        cert.duals.insert("mbal_0_2".into(), int(-5));
        assert!(!verify_flow_distance(&cs, &g, &cert).unwrap());
    }
}
