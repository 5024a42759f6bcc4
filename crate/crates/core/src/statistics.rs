//! Network statistics `S_j(x)` and the graph Hamiltonians built from them.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{pair_count, Graph};
use crate::rational::{int, is_unit_interval, parse_rational, Rational};

/// Symmetric, zero-diagonal, nonnegative matrix of nodal distances.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl DistanceMatrix {
    pub fn new(n: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidDistanceMatrix(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            if !entries[i * n + i].is_zero() {
                return Err(Error::InvalidDistanceMatrix(format!(
                    "nonzero diagonal at {i}"
                )));
            }
            for j in 0..n {
                let v = &entries[i * n + j];
                if v.is_negative() {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "negative entry at ({i}, {j})"
                    )));
                }
                if *v != entries[j * n + i] {
                    return Err(Error::InvalidDistanceMatrix(format!(
                        "asymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { n, entries })
    }

    pub fn uniform(n: usize, value: Rational) -> Result<Self> {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Rational::zero()
                } else {
                    value
                }
            })
            .collect();
        DistanceMatrix::new(n, entries)
    }

    /// Euclidean distances between `n` seeded uniform points in the unit
    /// square, rounded to six decimals.
    pub fn random_euclidean(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        let mut entries = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i + 1..n {
                let d = (pts[i].0 - pts[j].0).hypot(pts[i].1 - pts[j].1);
                let micros = (d * 1e6).round() as i128;
                let v = Rational::new(micros, 1_000_000);
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        DistanceMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries[i * self.n + j]
    }

    /// Text form: `n` on the first line, then `n` rows of `n` decimals.
    /// Values are parsed exactly; asymmetric input is rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (lno, head) = rows
            .next()
            .ok_or_else(|| Error::parse(1, "missing node count"))?;
        let n: usize = head
            .parse()
            .map_err(|_| Error::parse(lno, "expected node count"))?;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            let (lno, line) = rows
                .next()
                .ok_or_else(|| Error::parse(lno + r + 1, format!("missing row {r}")))?;
            let before = entries.len();
            for tok in line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
            {
                entries.push(parse_rational(tok).map_err(|e| Error::parse(lno, e.to_string()))?);
            }
            if entries.len() - before != n {
                return Err(Error::parse(lno, format!("row {r} needs {n} values")));
            }
        }
        if let Some((lno, _)) = rows.next() {
            return Err(Error::parse(lno, "trailing data after matrix"));
        }
        DistanceMatrix::new(n, entries)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        DistanceMatrix::parse(&text)
    }
}

#[derive(Clone, Debug)]
pub enum Statistic {
    /// Unconnected pairs, `n(n-1)/2 - |E|`.
    NonEdges,
    /// Closed triangles.
    Triangles,
    /// `Σ δ_ij x_ij` over present edges.
    PhysicalDistance(Arc<DistanceMatrix>),
    /// Minimum total multicommodity flow delivering one unit between every
    /// ordered pair; equals the sum of all ordered BFS distances.
    FlowDistance,
}

impl Statistic {
    pub fn name(&self) -> &'static str {
        match self {
            Statistic::NonEdges => "non_edges",
            Statistic::Triangles => "triangles",
            Statistic::PhysicalDistance(_) => "physical_distance",
            Statistic::FlowDistance => "flow_distance",
        }
    }

    pub fn evaluate(&self, g: &Graph) -> Result<Rational> {
        match self {
            Statistic::NonEdges => Ok(non_edges(g)),
            Statistic::Triangles => Ok(int(g.count_triangles() as i128)),
            Statistic::PhysicalDistance(delta) => physical_distance(g, delta),
            Statistic::FlowDistance => flow_distance(g),
        }
    }

    /// Whether toggling one pair changes the value by a locally computable
    /// amount (see [`Statistic::toggle_delta`]).
    pub fn is_local(&self) -> bool {
        !matches!(self, Statistic::FlowDistance)
    }

    /// Change in value when `(i, j)` is toggled on `g`; `None` for
    /// statistics that need a full recomputation.
    pub fn toggle_delta(&self, g: &Graph, i: usize, j: usize) -> Option<Rational> {
        let sign = if g.has_edge(i, j) { -1 } else { 1 };
        match self {
            Statistic::NonEdges => Some(int(-sign)),
            Statistic::Triangles => Some(int(sign * g.common_neighbors(i, j) as i128)),
            Statistic::PhysicalDistance(delta) => Some(delta.get(i, j) * int(sign)),
            Statistic::FlowDistance => None,
        }
    }
}

impl PartialEq for Statistic {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Statistic::PhysicalDistance(a), Statistic::PhysicalDistance(b)) => a == b,
            _ => std::mem::discriminant(self) == std::mem::discriminant(other),
        }
    }
}

pub fn non_edges(g: &Graph) -> Rational {
    int((pair_count(g.n()) - g.edge_count()) as i128)
}

pub fn physical_distance(g: &Graph, delta: &DistanceMatrix) -> Result<Rational> {
    if delta.n() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: delta.n(),
        });
    }
    Ok(g.edges()
        .fold(Rational::zero(), |acc, (i, j)| acc + delta.get(i, j)))
}

pub fn flow_distance(g: &Graph) -> Result<Rational> {
    g.total_hops()
        .map(|h| int(h as i128))
        .ok_or(Error::Disconnected("flow distance (no feasible flow)"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// `Σ θ_j S_j`.
    Linear,
    /// `min_j θ_j S_j` when maximizing, `max_j θ_j S_j` when minimizing.
    MaxMin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub theta: Rational,
    pub statistic: Statistic,
}

impl Term {
    pub fn new(theta: Rational, statistic: Statistic) -> Self {
        Term { theta, statistic }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    pub form: Form,
    pub terms: Vec<Term>,
    /// Set when the weights are the two-term rescaling `(α, 1-α)`.
    pub alpha: Option<Rational>,
    pub sense: Sense,
}

impl Hamiltonian {
    pub fn linear(terms: Vec<Term>, sense: Sense) -> Self {
        Hamiltonian {
            form: Form::Linear,
            terms,
            alpha: None,
            sense,
        }
    }

    pub fn max_min(terms: Vec<Term>, sense: Sense) -> Self {
        Hamiltonian {
            form: Form::MaxMin,
            terms,
            alpha: None,
            sense,
        }
    }

    /// Two-term max–min objective with weights `(α, 1-α)`.
    pub fn with_alpha(
        alpha: Rational,
        first: Statistic,
        second: Statistic,
        sense: Sense,
    ) -> Result<Self> {
        if !is_unit_interval(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        Ok(Hamiltonian {
            form: Form::MaxMin,
            terms: vec![Term::new(alpha, first), Term::new(int(1) - alpha, second)],
            alpha: Some(alpha),
            sense,
        })
    }

    /// `max min{α S_non-edges, (1-α) S_triangles}`.
    pub fn triads_vs_nonedges(alpha: Rational) -> Result<Self> {
        Hamiltonian::with_alpha(
            alpha,
            Statistic::NonEdges,
            Statistic::Triangles,
            Sense::Maximize,
        )
    }

    /// `min max{α S_physical, (1-α) S_flow}`.
    pub fn distance_vs_flow(alpha: Rational, delta: Arc<DistanceMatrix>) -> Result<Self> {
        Hamiltonian::with_alpha(
            alpha,
            Statistic::PhysicalDistance(delta),
            Statistic::FlowDistance,
            Sense::Minimize,
        )
    }

    pub fn needs_connectivity(&self) -> bool {
        self.terms
            .iter()
            .any(|t| t.statistic == Statistic::FlowDistance)
    }

    pub fn statistic_values(&self, g: &Graph) -> Result<Vec<Rational>> {
        self.terms.iter().map(|t| t.statistic.evaluate(g)).collect()
    }

    /// Objective value from raw statistic values.
    pub fn combine(&self, values: &[Rational]) -> Rational {
        let weighted = self.terms.iter().zip(values).map(|(t, v)| t.theta * v);
        match (self.form, self.sense) {
            (Form::Linear, _) => weighted.fold(Rational::zero(), |a, b| a + b),
            (Form::MaxMin, Sense::Maximize) => weighted.min().unwrap_or_else(Rational::zero),
            (Form::MaxMin, Sense::Minimize) => weighted.max().unwrap_or_else(Rational::zero),
        }
    }

    pub fn evaluate(&self, g: &Graph) -> Result<Rational> {
        Ok(self.combine(&self.statistic_values(g)?))
    }

    /// Maps an objective value onto a maximization scale.
    pub fn score(&self, value: Rational) -> Rational {
        match self.sense {
            Sense::Maximize => value,
            Sense::Minimize => -value,
        }
    }
}

/// The sample space `χ`: optional connectivity plus an optional fixed edge
/// count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SampleSpace {
    pub connected: bool,
    pub edge_count: Option<usize>,
}

impl SampleSpace {
    pub const ALL: SampleSpace = SampleSpace {
        connected: false,
        edge_count: None,
    };
    pub const CONNECTED: SampleSpace = SampleSpace {
        connected: true,
        edge_count: None,
    };

    pub fn fixed_density(d: usize) -> Self {
        SampleSpace {
            connected: false,
            edge_count: Some(d),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.edge_count {
            Some(d) if d > pair_count(n) => Err(Error::DensityOutOfRange {
                d,
                max: pair_count(n),
            }),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, g: &Graph) -> bool {
        self.edge_count.is_none_or(|d| g.edge_count() == d) && (!self.connected || g.is_connected())
    }

    /// Accepts `all`, `connected`, `density:D`, or `connected+density:D`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut space = SampleSpace::ALL;
        for part in s.split(['+', ',']).map(str::trim) {
            match part {
                "all" => {}
                "connected" => space.connected = true,
                p => {
                    let d = p
                        .strip_prefix("density:")
                        .or_else(|| p.strip_prefix("fixed_density:"))
                        .and_then(|d| d.parse().ok())
                        .ok_or_else(|| {
                            Error::InvalidParameter(format!("unknown sample space `{p}`"))
                        })?;
                    space.edge_count = Some(d);
                }
            }
        }
        Ok(space)
    }
}

impl fmt::Display for SampleSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.connected, self.edge_count) {
            (false, None) => write!(f, "all"),
            (true, None) => write!(f, "connected"),
            (false, Some(d)) => write!(f, "density:{d}"),
            (true, Some(d)) => write!(f, "connected+density:{d}"),
        }
    }
}
