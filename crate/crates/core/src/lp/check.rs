//! Verification of variable assignments, typically read back from an
//! external solver, against a [`ConstraintSystem`] and graph semantics.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::builders::{w_name, x_name};
use super::system::{ConstraintSystem, Relation, VarKind};
use crate::error::{Error, Result};
use crate::graph::{pairs, Graph};
use crate::rational::{fraction_string, int, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct RowViolation {
    pub name: String,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
    /// Signed slack: `rhs - lhs` for `<=` and `=`, `lhs - rhs` for `>=`.
    pub slack: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub violations: Vec<RowViolation>,
    pub bound_violations: Vec<String>,
    pub integrality_violations: Vec<String>,
    pub objective: Rational,
    /// Graph decoded from the `x` variables when all are present and 0/1.
    pub graph: Option<Graph>,
    /// Triples whose `w` differs from the product of its three edges.
    pub triangle_mismatches: Vec<(usize, usize, usize)>,
    /// `(Σ w, triangle count of the decoded graph)` when both exist.
    pub triangle_sum: Option<(Rational, usize)>,
    pub connected: Option<bool>,
    /// Whether every connectivity-flow row holds, when the model has any.
    pub flow_rows_satisfied: Option<bool>,
}

impl Verdict {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
            && self.bound_violations.is_empty()
            && self.integrality_violations.is_empty()
    }

    /// Cross-checks against graph semantics: `w` matches the product,
    /// `Σ w` matches the triangle count, and satisfied flow rows imply a
    /// connected graph.
    pub fn is_consistent(&self) -> bool {
        let triangles_ok = self.triangle_mismatches.is_empty()
            && self
                .triangle_sum
                .as_ref()
                .is_none_or(|(s, c)| *s == int(*c as i128));
        let flow_ok = self.flow_rows_satisfied != Some(true) || self.connected == Some(true);
        triangles_ok && flow_ok
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "feasible: {}", self.is_feasible());
        let _ = writeln!(out, "consistent: {}", self.is_consistent());
        let _ = writeln!(out, "objective: {}", fraction_string(&self.objective));
        for v in &self.violations {
            let _ = writeln!(
                out,
                "violated {}: lhs {} {} {} (slack {})",
                v.name,
                fraction_string(&v.lhs),
                v.relation.symbol(),
                fraction_string(&v.rhs),
                fraction_string(&v.slack)
            );
        }
        for name in &self.bound_violations {
            let _ = writeln!(out, "bound violated: {name}");
        }
        for name in &self.integrality_violations {
            let _ = writeln!(out, "not binary: {name}");
        }
        for (i, j, k) in &self.triangle_mismatches {
            let _ = writeln!(out, "w mismatch: {}", w_name(*i, *j, *k));
        }
        if let Some((s, c)) = &self.triangle_sum {
            let _ = writeln!(
                out,
                "triangles: sum of w {} vs graph {c}",
                fraction_string(s)
            );
        }
        if let Some(c) = self.connected {
            let _ = writeln!(out, "connected: {c}");
        }
        if let Some(f) = self.flow_rows_satisfied {
            let _ = writeln!(out, "flow rows satisfied: {f}");
        }
        out
    }
}

fn slack(relation: Relation, lhs: Rational, rhs: Rational) -> Rational {
    match relation {
        Relation::Le | Relation::Eq => rhs - lhs,
        Relation::Ge => lhs - rhs,
    }
}

fn decode_graph(cs: &ConstraintSystem, values: &[Rational]) -> Option<Graph> {
    let n = cs.nodes;
    let mut g = Graph::empty(n);
    for (i, j) in pairs(n) {
        let v = values[cs.var(&x_name(i, j))?];
        if v == int(1) {
            g.insert(i, j);
        } else if v != int(0) {
            return None;
        }
    }
    Some(g)
}

pub fn check_assignment(
    cs: &ConstraintSystem,
    assignment: &BTreeMap<String, Rational>,
) -> Result<Verdict> {
    let values = cs.values_from(assignment)?;
    let mut violations = Vec::new();
    let mut flow_rows = None;
    for c in cs.constraints() {
        let lhs = c.expr.eval(&values);
        let holds = c.relation.holds(&lhs, &c.rhs);
        if c.name.starts_with("bal_") || c.name.starts_with("cap_") {
            flow_rows = Some(flow_rows.unwrap_or(true) && holds);
        }
        if !holds {
            violations.push(RowViolation {
                name: c.name.clone(),
                lhs,
                relation: c.relation,
                rhs: c.rhs,
                slack: slack(c.relation, lhs, c.rhs),
            });
        }
    }
    let mut bound_violations = Vec::new();
    let mut integrality_violations = Vec::new();
    for (v, value) in cs.variables().iter().zip(&values) {
        let low = v.lower.is_some_and(|l| *value < l);
        let high = v.upper.is_some_and(|u| *value > u);
        if low || high {
            bound_violations.push(v.name.clone());
        }
        if v.kind == VarKind::Binary && *value != int(0) && *value != int(1) {
            integrality_violations.push(v.name.clone());
        }
    }
    let objective = cs.objective.expr.eval(&values);
    let graph = decode_graph(cs, &values);

    let mut triangle_mismatches = Vec::new();
    let mut triangle_sum = None;
    if let Some(g) = &graph {
        let n = g.n();
        let mut sum = int(0);
        let mut any = false;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let Some(w) = cs.var(&w_name(i, j, k)) else {
                        continue;
                    };
                    any = true;
                    sum += values[w];
                    let product = g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(i, k);
                    if values[w] != int(product as i128) {
                        triangle_mismatches.push((i, j, k));
                    }
                }
            }
        }
        if any {
            triangle_sum = Some((sum, g.count_triangles()));
        }
    }
    let connected = graph.as_ref().map(Graph::is_connected);
    Ok(Verdict {
        violations,
        bound_violations,
        integrality_violations,
        objective,
        graph,
        triangle_mismatches,
        triangle_sum,
        connected,
        flow_rows_satisfied: flow_rows,
    })
}

fn parse_value(s: &str) -> Option<Rational> {
    if let Ok(r) = parse_rational(s) {
        return Some(r);
    }
    // solver output such as `1e-10` or `9.99999999e-01`, snapped to 1e-9
    let f: f64 = s.parse().ok()?;
    if !f.is_finite() {
        return None;
    }
    Some(Rational::new((f * 1e9).round() as i128, 1_000_000_000))
}

const STATUS_WORDS: [&str; 6] = [
    "Optimal",
    "Infeasible",
    "Stopped",
    "Integer",
    "Unbounded",
    "Objective",
];

/// Reads `name value`, `name = value`, or CBC solution lines
/// (`index name value cost`). Blank lines, `#`/`\` comments and solver
/// status lines are skipped. Names absent from the text are absent from
/// the map.
pub fn parse_assignment(text: &str) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('\\') {
            continue;
        }
        if STATUS_WORDS.iter().any(|w| line.starts_with(w)) {
            continue;
        }
        let line = line.trim_start_matches("**").trim();
        let replaced = line.replace('=', " ");
        let tokens: Vec<&str> = replaced.split_whitespace().collect();
        let (name, value) = match tokens.as_slice() {
            [name, value] => (*name, *value),
            [idx, name, value, ..] if idx.parse::<usize>().is_ok() => (*name, *value),
            _ => {
                return Err(Error::parse(
                    lineno + 1,
                    format!("unrecognized assignment line `{line}`"),
                ))
            }
        };
        let value = parse_value(value)
            .ok_or_else(|| Error::parse(lineno + 1, format!("bad value `{value}`")))?;
        if out.insert(name.to_string(), value).is_some() {
            return Err(Error::parse(
                lineno + 1,
                format!("variable `{name}` assigned twice"),
            ));
        }
    }
    Ok(out)
}

/// Fills every declared variable missing from `assignment` with zero, as
/// solvers usually omit zero values.
pub fn fill_missing_with_zero(cs: &ConstraintSystem, assignment: &mut BTreeMap<String, Rational>) {
    for v in cs.variables() {
        assignment.entry(v.name.clone()).or_insert_with(|| int(0));
    }
}

/// Assignment of the `x` variables of `g`.
pub fn edge_assignment(g: &Graph) -> BTreeMap<String, Rational> {
    pairs(g.n())
        .map(|(i, j)| (x_name(i, j), int(g.has_edge(i, j) as i128)))
        .collect()
}
