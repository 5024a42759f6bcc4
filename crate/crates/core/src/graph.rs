//! Undirected simple graphs over lexicographically indexed node pairs.
//!
//! A [`Graph`] stores its edges twice: as a bitset over the `n(n-1)/2` pairs
//! `(i, j)`, `i < j`, in lexicographic order (the canonical form used for
//! ordering, hashing and serialization), and as per-node adjacency rows used
//! by the counting and traversal routines.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};
use std::path::Path;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{int, Exact, Rational};

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// Number of unordered node pairs on `n` nodes.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Lexicographic rank of the pair `(i, j)` among all pairs of `n` nodes.
pub fn edge_index(i: usize, j: usize, n: usize) -> Result<usize> {
    if i >= j || j >= n {
        return Err(Error::InvalidPair { i, j, n });
    }
    Ok(edge_index_unchecked(i, j, n))
}

#[inline]
pub(crate) fn edge_index_unchecked(i: usize, j: usize, n: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Inverse of [`edge_index`].
pub fn pair_of(index: usize, n: usize) -> Result<(usize, usize)> {
    let mut rest = index;
    for i in 0..n.saturating_sub(1) {
        let row = n - 1 - i;
        if rest < row {
            return Ok((i, i + 1 + rest));
        }
        rest -= row;
    }
    Err(Error::InvalidPair {
        i: index,
        j: index,
        n,
    })
}

/// All pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    bits: Vec<u64>,
    adj: Vec<Vec<u64>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            bits: vec![0; words_for(pair_count(n))],
            adj: vec![vec![0; words_for(n)]; n],
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for (i, j) in pairs(n) {
            g.insert(i, j);
        }
        g
    }

    /// Star centred on node 0.
    pub fn star(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for leaf in 1..n {
            g.insert(0, leaf);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.insert(i - 1, i);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.insert(0, n - 1);
        }
        g
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            let (i, j) = (a.min(b), a.max(b));
            edge_index(i, j, n)?;
            g.insert(i, j);
        }
        Ok(g)
    }

    /// Graph whose pair `k` is present iff bit `k` of `mask` is set.
    /// Only meaningful for `n(n-1)/2 <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(pair_count(n) <= 64);
        let mut g = Graph::empty(n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                if mask >> k & 1 == 1 {
                    g.insert(i, j);
                }
                k += 1;
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn pair_count(&self) -> usize {
        pair_count(self.n)
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adj[i][j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn has_pair_index(&self, k: usize) -> bool {
        self.bits[k / WORD] >> (k % WORD) & 1 == 1
    }

    fn flip(&mut self, i: usize, j: usize) {
        let k = edge_index_unchecked(i, j, self.n);
        self.bits[k / WORD] ^= 1 << (k % WORD);
        self.adj[i][j / WORD] ^= 1 << (j % WORD);
        self.adj[j][i / WORD] ^= 1 << (i % WORD);
    }

    /// Adds `(i, j)`; returns false if it was already present.
    pub fn insert(&mut self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        assert!(
            i != j && j < self.n,
            "invalid pair ({i}, {j}) for n = {}",
            self.n
        );
        if self.has_edge(i, j) {
            return false;
        }
        self.flip(i, j);
        self.edge_count += 1;
        true
    }

    /// Removes `(i, j)`; returns false if it was absent.
    pub fn remove(&mut self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        if !self.has_edge(i, j) {
            return false;
        }
        self.flip(i, j);
        self.edge_count -= 1;
        true
    }

    /// Flips `(i, j)` and returns whether it is present afterwards.
    pub fn toggle(&mut self, i: usize, j: usize) -> bool {
        if self.remove(i, j) {
            false
        } else {
            self.insert(i, j)
        }
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        pairs(self.n).filter(move |&(i, j)| self.has_edge(i, j))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(&self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `|N(i) ∩ N(j)|`.
    #[inline]
    pub fn common_neighbors(&self, i: usize, j: usize) -> usize {
        self.adj[i]
            .iter()
            .zip(&self.adj[j])
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Number of closed triangles `{i, j, k}`.
    pub fn count_triangles(&self) -> usize {
        // Each triangle is seen once from each of its three edges.
        self.edges()
            .map(|(i, j)| self.common_neighbors(i, j))
            .sum::<usize>()
            / 3
    }

    /// Node sets reachable from `src`.
    fn reach(&self, src: usize) -> Vec<u64> {
        let mut seen = vec![0u64; words_for(self.n)];
        let mut frontier = vec![0u64; words_for(self.n)];
        seen[src / WORD] |= 1 << (src % WORD);
        frontier[src / WORD] |= 1 << (src % WORD);
        loop {
            let mut next = vec![0u64; seen.len()];
            for v in iter_bits(&frontier) {
                for (nw, a) in next.iter_mut().zip(&self.adj[v]) {
                    *nw |= a;
                }
            }
            let mut grew = false;
            for (nw, s) in next.iter_mut().zip(seen.iter_mut()) {
                *nw &= !*s;
                *s |= *nw;
                grew |= *nw != 0;
            }
            if !grew {
                return seen;
            }
            frontier = next;
        }
    }

    /// Nodes reachable from `src`, in increasing order.
    pub fn component_of(&self, src: usize) -> Vec<usize> {
        iter_bits(&self.reach(src)).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.reach(0)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            == self.n
    }

    /// BFS hop counts from `src`; `None` for unreachable nodes.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for u in self.neighbors(v) {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// BFS tree from `src`: `parent[v]` for every reached `v != src`.
    pub fn bfs_parents(&self, src: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    queue.push_back(u);
                }
            }
        }
        parent
    }

    /// Sum of shortest-path hop counts over all ordered pairs, or `None` when
    /// some pair is unreachable.
    pub fn total_hops(&self) -> Option<u64> {
        let words = words_for(self.n);
        let mut total = 0u64;
        for src in 0..self.n {
            let mut seen = vec![0u64; words];
            seen[src / WORD] |= 1 << (src % WORD);
            let mut frontier = seen.clone();
            let mut reached = 1usize;
            let mut depth = 0u64;
            while reached < self.n {
                depth += 1;
                let mut next = vec![0u64; words];
                for v in iter_bits(&frontier) {
                    for (nw, a) in next.iter_mut().zip(&self.adj[v]) {
                        *nw |= a;
                    }
                }
                let mut fresh = 0usize;
                for (nw, s) in next.iter_mut().zip(seen.iter_mut()) {
                    *nw &= !*s;
                    *s |= *nw;
                    fresh += nw.count_ones() as usize;
                }
                if fresh == 0 {
                    return None;
                }
                total += depth * fresh as u64;
                reached += fresh;
                frontier = next;
            }
        }
        Some(total)
    }

    /// Mean shortest-path length over ordered pairs of distinct nodes.
    /// A single node has no pairs and reports 0.
    pub fn average_path_length(&self) -> Result<Rational> {
        let hops = self
            .total_hops()
            .ok_or(Error::Disconnected("average path length"))?;
        let ordered = (self.n * self.n.saturating_sub(1)) as i128;
        if ordered == 0 {
            return Ok(Rational::zero());
        }
        Ok(Rational::new(hops as i128, ordered))
    }

    /// Connected triples (paths of length two), counted at their middle node.
    pub fn connected_triples(&self) -> usize {
        (0..self.n)
            .map(|v| {
                let d = self.degree(v);
                d * d.saturating_sub(1) / 2
            })
            .sum()
    }

    /// Global transitivity: `3 * triangles / connected triples`, 0 when the
    /// graph has no connected triple.
    pub fn clustering_coefficient(&self) -> Rational {
        let triples = self.connected_triples();
        if triples == 0 {
            return Rational::zero();
        }
        Rational::new(3 * self.count_triangles() as i128, triples as i128)
    }

    /// Mean of the local clustering coefficients; nodes of degree < 2
    /// contribute 0.
    pub fn average_local_clustering(&self) -> Rational {
        if self.n == 0 {
            return Rational::zero();
        }
        let mut sum = Rational::zero();
        for v in 0..self.n {
            let nb: Vec<usize> = self.neighbors(v).collect();
            let d = nb.len();
            if d < 2 {
                continue;
            }
            let mut links = 0usize;
            for (a, &x) in nb.iter().enumerate() {
                links += nb[a + 1..].iter().filter(|&&y| self.has_edge(x, y)).count();
            }
            sum += Rational::new(2 * links as i128, (d * (d - 1)) as i128);
        }
        sum / int(self.n as i128)
    }

    pub fn density(&self) -> Rational {
        match self.pair_count() {
            0 => Rational::zero(),
            p => Rational::new(self.edge_count as i128, p as i128),
        }
    }

    pub fn metrics(&self) -> GraphMetrics {
        GraphMetrics {
            n: self.n,
            edge_count: self.edge_count,
            triangle_count: self.count_triangles(),
            density: self.density(),
            clustering_coefficient: self.clustering_coefficient(),
            average_local_clustering: self.average_local_clustering(),
            average_path_length: self.average_path_length().ok(),
        }
    }

    /// Compares edge bitsets lexicographically from pair index 0: at the
    /// first differing pair, the graph without that edge is smaller.
    pub fn cmp_bits(&self, other: &Graph) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for (a, b) in self.bits.iter().zip(&other.bits) {
                let diff = a ^ b;
                if diff != 0 {
                    let low = diff.trailing_zeros();
                    return if a >> low & 1 == 0 {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    };
                }
            }
            Ordering::Equal
        })
    }

    // -- text formats ---------------------------------------------------

    /// Edge-list text: `n m` followed by `m` lines `i j`, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count);
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (lno, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
        let (n, m) = parse_two(header).ok_or_else(|| Error::parse(lno, "expected `n m`"))?;
        if n == 0 {
            return Err(Error::parse(lno, "graph needs at least one node"));
        }
        let mut g = Graph::empty(n);
        let mut seen = 0usize;
        for (lno, line) in lines {
            let (a, b) = parse_two(line).ok_or_else(|| Error::parse(lno, "expected `i j`"))?;
            if a == b || a.max(b) >= n {
                return Err(Error::parse(
                    lno,
                    format!("invalid edge ({a}, {b}) for n = {n}"),
                ));
            }
            if !g.insert(a, b) {
                return Err(Error::parse(lno, format!("duplicate edge ({a}, {b})")));
            }
            seen += 1;
        }
        if seen != m {
            return Err(Error::parse(
                1,
                format!("header declares {m} edges, found {seen}"),
            ));
        }
        Ok(g)
    }

    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        Graph::parse_edge_list(&text)
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_edge_list()).map_err(|e| Error::file(path, e))
    }

    /// Graphviz DOT with nodes `0..n` and sorted undirected edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  {i} -- {j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn export_dot(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_dot()).map_err(|e| Error::file(path, e))
    }

    /// Reads back the subset of DOT that [`Graph::to_dot`] writes.
    pub fn parse_dot(text: &str) -> Result<Graph> {
        let mut nodes = 0usize;
        let mut edges = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim().trim_end_matches(';').trim();
            if line.is_empty() || line.starts_with("graph") || line == "}" {
                continue;
            }
            if let Some((a, b)) = line.split_once("--") {
                let a: usize = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(k + 1, "bad edge"))?;
                let b: usize = b
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(k + 1, "bad edge"))?;
                edges.push((a, b));
            } else {
                let v: usize = line.parse().map_err(|_| Error::parse(k + 1, "bad node"))?;
                nodes = nodes.max(v + 1);
            }
        }
        Graph::from_edges(nodes, edges)
    }
}

fn parse_two(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * WORD + b)
        })
    })
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bits == other.bits
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bits.hash(state);
    }
}

impl PartialOrd for Graph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Graph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_bits(other)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let edges: Vec<[usize; 2]> = self.edges().map(|(i, j)| [i, j]).collect();
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

/// Density, clustering and path-length summary of one graph.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphMetrics {
    pub n: usize,
    pub edge_count: usize,
    pub triangle_count: usize,
    pub density: Rational,
    pub clustering_coefficient: Rational,
    pub average_local_clustering: Rational,
    /// `None` for disconnected graphs.
    pub average_path_length: Option<Rational>,
}

impl GraphMetrics {
    /// `Density CC APL` with five decimals; APL reads `n/a` when undefined.
    pub fn table_row(&self) -> String {
        use crate::rational::format_decimal;
        let apl = self
            .average_path_length
            .as_ref()
            .map_or_else(|| "n/a".to_string(), |r| format_decimal(r, 5));
        format!(
            "{:>9} {:>9} {:>9}",
            format_decimal(&self.density, 5),
            format_decimal(&self.clustering_coefficient, 5),
            apl
        )
    }

    pub fn table_header() -> String {
        format!("{:>9} {:>9} {:>9}", "Density", "CC", "APL")
    }
}

impl Serialize for GraphMetrics {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GraphMetrics", 6)?;
        st.serialize_field("edge_count", &self.edge_count)?;
        st.serialize_field("triangle_count", &self.triangle_count)?;
        st.serialize_field("density", &Exact(self.density))?;
        st.serialize_field(
            "clustering_coefficient",
            &Exact(self.clustering_coefficient),
        )?;
        st.serialize_field(
            "average_local_clustering",
            &Exact(self.average_local_clustering),
        )?;
        st.serialize_field("average_path_length", &self.average_path_length.map(Exact))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i128, q: i128) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn edge_index_examples() {
        assert_eq!(edge_index(0, 1, 4).unwrap(), 0);
        assert_eq!(edge_index(2, 3, 4).unwrap(), 5);
        assert_eq!(edge_index(0, 3, 4).unwrap(), 2);
        assert!(matches!(
            edge_index(2, 2, 4),
            Err(Error::InvalidPair { .. })
        ));
        assert!(matches!(
            edge_index(3, 1, 4),
            Err(Error::InvalidPair { .. })
        ));
        assert!(matches!(
            edge_index(1, 4, 4),
            Err(Error::InvalidPair { .. })
        ));
        assert!(pair_of(6, 4).is_err());
    }

    #[test]
    fn edge_index_matches_enumeration_order() {
        for n in 1..12 {
            for (k, (i, j)) in pairs(n).enumerate() {
                assert_eq!(edge_index(i, j, n).unwrap(), k);
                assert_eq!(pair_of(k, n).unwrap(), (i, j));
            }
        }
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(Graph::complete(4).count_triangles(), 4);
        assert_eq!(Graph::star(5).count_triangles(), 0);
        assert_eq!(Graph::cycle(5).count_triangles(), 0);
        assert_eq!(Graph::complete(3).count_triangles(), 1);
    }

    #[test]
    fn connectivity_examples() {
        assert!(Graph::star(6).is_connected());
        assert!(!Graph::from_edges(4, [(0, 1), (2, 3)])
            .unwrap()
            .is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(!Graph::empty(2).is_connected());
    }

    #[test]
    fn apl_examples() {
        assert_eq!(Graph::complete(4).average_path_length().unwrap(), int(1));
        assert_eq!(Graph::path(3).average_path_length().unwrap(), r(4, 3));
        assert_eq!(Graph::star(5).average_path_length().unwrap(), r(8, 5));
        assert!(matches!(
            Graph::from_edges(4, [(0, 1), (2, 3)])
                .unwrap()
                .average_path_length(),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn clustering_examples() {
        assert_eq!(Graph::complete(4).clustering_coefficient(), int(1));
        assert_eq!(Graph::star(5).clustering_coefficient(), int(0));
        let paw = Graph::from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        assert_eq!(paw.clustering_coefficient(), r(3, 5));
        // local: node 0 has 1 of 3 neighbour pairs linked, nodes 1 and 2 are
        // fully clustered, node 3 is a leaf
        assert_eq!(paw.average_local_clustering(), (r(1, 3) + int(2)) / int(4));
        assert_eq!(Graph::empty(3).clustering_coefficient(), int(0));
    }

    #[test]
    fn density_and_metrics() {
        let m = Graph::star(5).metrics();
        assert_eq!(m.density, r(2, 5));
        assert_eq!(m.table_row(), "  0.40000   0.00000   1.60000");
        assert_eq!(
            Graph::complete(4).metrics().table_row(),
            "  1.00000   1.00000   1.00000"
        );
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap().metrics();
        assert!(split.table_row().ends_with("n/a"));
    }

    #[test]
    fn toggle_updates_both_views() {
        let mut g = Graph::empty(5);
        assert!(g.toggle(3, 1));
        assert!(g.has_edge(1, 3) && g.has_edge(3, 1));
        assert!(g.has_pair_index(edge_index(1, 3, 5).unwrap()));
        assert_eq!(g.edge_count(), 1);
        assert!(!g.toggle(1, 3));
        assert_eq!(g, Graph::empty(5));
    }

    #[test]
    fn bit_order_prefers_absent_low_pairs() {
        let a = Graph::from_edges(4, [(2, 3)]).unwrap();
        let b = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert!(a < b);
        assert_eq!(a.cmp(&a.clone()), Ordering::Equal);
    }

    #[test]
    fn edge_list_round_trip_and_errors() {
        let g = Graph::from_edges(5, [(3, 4), (0, 2), (1, 2)]).unwrap();
        let text = g.to_edge_list();
        assert_eq!(text, "5 3\n0 2\n1 2\n3 4\n");
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
        assert!(Graph::parse_edge_list("3 1\n0 0\n").is_err());
        assert!(Graph::parse_edge_list("3 2\n0 1\n1 0\n").is_err());
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 5\n").is_err());
    }

    #[test]
    fn dot_golden() {
        assert_eq!(
            Graph::complete(3).to_dot(),
            "graph G {\n  0;\n  1;\n  2;\n  0 -- 1;\n  0 -- 2;\n  1 -- 2;\n}\n"
        );
        assert_eq!(Graph::empty(2).to_dot(), "graph G {\n  0;\n  1;\n}\n");
    }
}
