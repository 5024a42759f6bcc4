use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fraction_string, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarKind {
    Binary,
    Continuous,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    /// `None` is unbounded.
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }

    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

/// Sparse linear expression over variable indices, kept sorted by index
/// with merged, nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LinExpr {
    terms: Vec<(usize, Rational)>,
}

impl LinExpr {
    pub fn new() -> Self {
        LinExpr::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> Self {
        let mut e = LinExpr::new();
        for (v, c) in terms {
            e.add(v, c);
        }
        e
    }

    pub fn add(&mut self, var: usize, coef: Rational) -> &mut Self {
        match self.terms.binary_search_by_key(&var, |t| t.0) {
            Ok(pos) => {
                self.terms[pos].1 += coef;
                if self.terms[pos].1.is_zero() {
                    self.terms.remove(pos);
                }
            }
            Err(pos) if !coef.is_zero() => self.terms.insert(pos, (var, coef)),
            Err(_) => {}
        }
        self
    }

    pub fn with(mut self, var: usize, coef: Rational) -> Self {
        self.add(var, coef);
        self
    }

    pub fn add_expr(&mut self, other: &LinExpr, scale: Rational) -> &mut Self {
        for &(v, c) in &other.terms {
            self.add(v, c * scale);
        }
        self
    }

    pub fn terms(&self) -> &[(usize, Rational)] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, var: usize) -> Rational {
        self.terms
            .binary_search_by_key(&var, |t| t.0)
            .map_or_else(|_| Rational::zero(), |pos| self.terms[pos].1)
    }

    pub fn eval(&self, values: &[Rational]) -> Rational {
        self.terms
            .iter()
            .fold(Rational::zero(), |acc, (v, c)| acc + *c * values[*v])
    }
}

/// Linear expression plus constant, used for statistics such as
/// `n(n-1)/2 - Σ x`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AffineExpr {
    pub linear: LinExpr,
    pub constant: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub expr: LinExpr,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjSense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Objective {
    pub sense: ObjSense,
    pub expr: LinExpr,
}

/// Variables, rows and objective of a linear (mixed-binary) model.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSystem {
    /// Node count of the graph the model ranges over.
    pub nodes: usize,
    variables: Vec<Variable>,
    index: HashMap<String, usize>,
    constraints: Vec<Constraint>,
    pub objective: Objective,
}

impl Default for ConstraintSystem {
    fn default() -> Self {
        ConstraintSystem::new(0)
    }
}

impl ConstraintSystem {
    pub fn new(nodes: usize) -> Self {
        ConstraintSystem {
            nodes,
            variables: Vec::new(),
            index: HashMap::new(),
            constraints: Vec::new(),
            objective: Objective {
                sense: ObjSense::Minimize,
                expr: LinExpr::new(),
            },
        }
    }

    /// Declares a variable, or returns the existing one when an identical
    /// declaration was already made. Conflicting redeclarations panic.
    pub fn variable(
        &mut self,
        name: &str,
        kind: VarKind,
        lower: Option<Rational>,
        upper: Option<Rational>,
    ) -> usize {
        let var = Variable {
            name: name.to_string(),
            kind,
            lower,
            upper,
        };
        if let Some(&k) = self.index.get(name) {
            assert_eq!(
                self.variables[k], var,
                "conflicting declarations of `{name}`"
            );
            return k;
        }
        self.variables.push(var);
        self.index
            .insert(name.to_string(), self.variables.len() - 1);
        self.variables.len() - 1
    }

    pub fn binary(&mut self, name: &str) -> usize {
        self.variable(name, VarKind::Binary, Some(int(0)), Some(int(1)))
    }

    pub fn nonnegative(&mut self, name: &str) -> usize {
        self.variable(name, VarKind::Continuous, Some(int(0)), None)
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) {
        let v = &mut self.variables[var];
        v.lower = lower;
        v.upper = upper;
    }

    pub fn constrain(
        &mut self,
        name: impl Into<String>,
        expr: LinExpr,
        relation: Relation,
        rhs: Rational,
    ) {
        self.constraints.push(Constraint {
            name: name.into(),
            expr,
            relation,
            rhs,
        });
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn constraint(&self, name: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.name == name)
    }

    /// Dense value vector from a name → value map.
    pub fn values_from(
        &self,
        assignment: &std::collections::BTreeMap<String, Rational>,
    ) -> Result<Vec<Rational>> {
        self.variables
            .iter()
            .map(|v| {
                assignment
                    .get(&v.name)
                    .copied()
                    .ok_or_else(|| Error::MissingVariable(v.name.clone()))
            })
            .collect()
    }

    /// Every variable referenced by a row or the objective is declared and
    /// every name is unique.
    pub fn is_well_formed(&self) -> bool {
        let nv = self.variables.len();
        let refs_ok = self
            .constraints
            .iter()
            .map(|c| &c.expr)
            .chain(std::iter::once(&self.objective.expr))
            .all(|e| e.terms().iter().all(|&(v, _)| v < nv));
        let mut names: Vec<&str> = self.constraints.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        let rows_unique = names.windows(2).all(|w| w[0] != w[1]);
        refs_ok && rows_unique && self.index.len() == nv
    }

    /// JSON dump of variables, rows and objective.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let expr = |e: &LinExpr| -> Vec<serde_json::Value> {
            e.terms()
                .iter()
                .map(|(v, c)| json!({ "var": self.variables[*v].name, "coef": fraction_string(c) }))
                .collect()
        };
        json!({
            "nodes": self.nodes,
            "variables": self.variables.iter().map(|v| json!({
                "name": v.name,
                "kind": v.kind,
                "lower": v.lower.as_ref().map(fraction_string),
                "upper": v.upper.as_ref().map(fraction_string),
            })).collect::<Vec<_>>(),
            "constraints": self.constraints.iter().map(|c| json!({
                "name": c.name,
                "terms": expr(&c.expr),
                "relation": c.relation,
                "rhs": fraction_string(&c.rhs),
            })).collect::<Vec<_>>(),
            "objective": { "sense": self.objective.sense, "terms": expr(&self.objective.expr) },
        })
    }
}
