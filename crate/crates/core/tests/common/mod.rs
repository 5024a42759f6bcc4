//! Independent reference implementations. None of these call into the
//! library's graph algorithms; they work from plain edge lists.

#![allow(dead_code)]

use netopt::Rational;

/// Lexicographic pair list, rebuilt here rather than borrowed.
pub fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

/// Edges selected by the bits of `mask` over the lexicographic pair list.
pub fn edges_of_mask(n: usize, mask: u64) -> Vec<(usize, usize)> {
    all_pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(k, _)| mask >> k & 1 == 1)
        .map(|(_, p)| p)
        .collect()
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for &(i, j) in edges {
        a[i][j] = true;
        a[j][i] = true;
    }
    a
}

/// Triangles by checking every triple.
pub fn triangles(n: usize, edges: &[(usize, usize)]) -> usize {
    let a = adjacency(n, edges);
    let mut t = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if a[i][j] && a[j][k] && a[i][k] {
                    t += 1;
                }
            }
        }
    }
    t
}

fn find(parent: &mut [usize], v: usize) -> usize {
    let mut r = v;
    while parent[r] != r {
        r = parent[r];
    }
    let mut v = v;
    while parent[v] != r {
        let next = parent[v];
        parent[v] = r;
        v = next;
    }
    r
}

/// Connectivity by union-find.
pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    let mut components = n;
    for &(i, j) in edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    components == 1
}

/// All-pairs hop distances by Floyd–Warshall; `None` when unreachable.
pub fn hop_distances(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<Option<u64>>> {
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
    }
    for &(i, j) in edges {
        d[i][j] = Some(1);
        d[j][i] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Sum of ordered-pair hop distances, `None` when disconnected.
pub fn total_hops(n: usize, edges: &[(usize, usize)]) -> Option<u64> {
    let d = hop_distances(n, edges);
    d.iter().flatten().copied().sum()
}

pub fn non_edges(n: usize, edges: &[(usize, usize)]) -> usize {
    n * (n - 1) / 2 - edges.len()
}

/// `min(α · non-edges, (1-α) · triangles)`.
pub fn triads_objective(n: usize, alpha: Rational, edges: &[(usize, usize)]) -> Rational {
    let s1 = Rational::from_integer(non_edges(n, edges) as i128);
    let s2 = Rational::from_integer(triangles(n, edges) as i128);
    (alpha * s1).min((Rational::from_integer(1) - alpha) * s2)
}

/// Best triads objective over connected graphs, with all maximizers as
/// masks.
pub fn triads_optimum(n: usize, alpha: Rational) -> (Rational, Vec<u64>) {
    let mut best: Option<Rational> = None;
    let mut argmax = Vec::new();
    for mask in 0..1u64 << all_pairs(n).len() {
        let e = edges_of_mask(n, mask);
        if !connected(n, &e) {
            continue;
        }
        let v = triads_objective(n, alpha, &e);
        match best {
            Some(b) if v < b => {}
            Some(b) if v == b => argmax.push(mask),
            _ => {
                best = Some(v);
                argmax = vec![mask];
            }
        }
    }
    (best.expect("a connected graph exists"), argmax)
}

/// Number of labelled connected graphs on `n` nodes.
pub fn connected_count(n: usize) -> usize {
    (0..1u64 << all_pairs(n).len())
        .filter(|&m| connected(n, &edges_of_mask(n, m)))
        .count()
}
