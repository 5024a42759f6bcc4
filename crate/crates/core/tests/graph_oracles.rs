mod common;

use common::{connected, edges_of_mask, total_hops, triangles};
use netopt::exact::star_plus_chords;
use netopt::rational::int;
use netopt::statistics::{flow_distance, non_edges};
use netopt::{Graph, Rational};

fn every_graph(max_n: usize) -> impl Iterator<Item = (usize, u64)> {
    (1..=max_n).flat_map(|n| (0..1u64 << (n * (n - 1) / 2)).map(move |m| (n, m)))
}

#[test]
fn bitset_decodes_to_the_same_edges() {
    for (n, mask) in every_graph(5) {
        let g = Graph::from_mask(n, mask);
        assert_eq!(g.edges().collect::<Vec<_>>(), edges_of_mask(n, mask));
    }
}

#[test]
fn triangle_counts_match_triple_scan() {
    for (n, mask) in every_graph(6) {
        let e = edges_of_mask(n, mask);
        assert_eq!(
            Graph::from_mask(n, mask).count_triangles(),
            triangles(n, &e),
            "n={n} mask={mask}"
        );
    }
}

#[test]
fn connectivity_matches_union_find() {
    for (n, mask) in every_graph(6) {
        let e = edges_of_mask(n, mask);
        assert_eq!(
            Graph::from_mask(n, mask).is_connected(),
            connected(n, &e),
            "n={n} mask={mask}"
        );
    }
}

#[test]
fn path_lengths_match_floyd_warshall() {
    for (n, mask) in every_graph(5) {
        let g = Graph::from_mask(n, mask);
        let expected = total_hops(n, &edges_of_mask(n, mask));
        assert_eq!(g.total_hops(), expected);
        match expected {
            Some(h) if n > 1 => {
                let apl = g.average_path_length().unwrap();
                assert_eq!(apl, Rational::new(h as i128, (n * (n - 1)) as i128));
                assert_eq!(flow_distance(&g).unwrap(), int(h as i128));
            }
            Some(_) => {}
            None => {
                assert!(g.average_path_length().is_err());
                assert!(flow_distance(&g).is_err());
            }
        }
    }
}

#[test]
fn transitivity_matches_degree_formula() {
    for (n, mask) in every_graph(5) {
        let e = edges_of_mask(n, mask);
        let mut degree = vec![0usize; n];
        for &(i, j) in &e {
            degree[i] += 1;
            degree[j] += 1;
        }
        let triples: usize = degree.iter().map(|d| d * d.saturating_sub(1) / 2).sum();
        let g = Graph::from_mask(n, mask);
        let expected = if triples == 0 {
            int(0)
        } else {
            Rational::new(3 * triangles(n, &e) as i128, triples as i128)
        };
        assert_eq!(g.clustering_coefficient(), expected);
        assert_eq!(non_edges(&g), int((n * (n - 1) / 2 - e.len()) as i128));
    }
}

#[test]
fn metric_rows() {
    assert_eq!(
        Graph::complete(4).metrics().table_row(),
        "  1.00000   1.00000   1.00000"
    );
    assert_eq!(
        Graph::star(5).metrics().table_row(),
        "  0.40000   0.00000   1.60000"
    );
    let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    assert!(split.metrics().table_row().ends_with("n/a"));
}

#[test]
fn dot_round_trips() {
    let g = star_plus_chords(8, 4).unwrap();
    assert_eq!(Graph::parse_dot(&g.to_dot()).unwrap(), g);
    let empty = Graph::empty(2);
    let text = empty.to_dot();
    assert_eq!(text, "graph G {\n  0;\n  1;\n}\n");
    assert_eq!(Graph::parse_dot(&text).unwrap(), empty);
}

#[test]
fn edge_list_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.edges");
    let g = star_plus_chords(10, 7).unwrap();
    g.write_edge_list(&path).unwrap();
    assert_eq!(Graph::read_edge_list(&path).unwrap(), g);
    assert!(Graph::read_edge_list(dir.path().join("missing")).is_err());
}
