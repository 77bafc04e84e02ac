use std::collections::BTreeSet;

use neumaier_core::{are_isomorphic, canonical_form, Graph};
use neumaier_search::small::triangle_partition_or_gamma1;
use neumaier_search::{
    enumerate_by_degree_sequence, enumerate_regular_diamondfree, gamma1, triangle_partition,
};

// Every labelled graph on n vertices, filtered by sorted degree sequence and
// reduced to canonical strings.
fn brute_force(seq: &[usize]) -> BTreeSet<String> {
    let n = seq.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut want = seq.to_vec();
    want.sort_unstable();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut deg = vec![0; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
        deg.sort_unstable();
        if deg != want {
            continue;
        }
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        out.insert(canonical_form(&g, None).canonical_string);
    }
    out
}

fn keys(graphs: &[Graph]) -> BTreeSet<String> {
    graphs
        .iter()
        .map(|g| canonical_form(g, None).canonical_string)
        .collect()
}

#[test]
fn six_vertex_sequences() {
    let count = |seq: &[usize]| enumerate_by_degree_sequence(seq).unwrap().len();
    assert_eq!(count(&[1, 3, 3, 3, 3, 5]), 1);
    assert_eq!(count(&[1, 1, 4, 4, 4, 4]), 0);
    assert_eq!(count(&[1, 2, 2, 3, 5, 5]), 0);
    assert_eq!(count(&[1, 2, 2, 4, 4, 5]), 0);
    let forced = enumerate_by_degree_sequence(&[1, 2, 3, 3, 4, 5]).unwrap();
    assert!(!forced.is_empty());
    assert!(forced.iter().all(|g| g.has_clique_of_size(4)));
}

#[test]
fn realizations_have_requested_degrees() {
    let seq = [1, 2, 3, 3, 4, 5];
    for g in enumerate_by_degree_sequence(&seq).unwrap() {
        assert_eq!(g.degrees(), seq.to_vec());
    }
}

#[test]
fn degree_sequences_match_brute_force() {
    let seqs: &[&[usize]] = &[
        &[1, 3, 3, 3, 3, 5],
        &[1, 2, 3, 3, 4, 5],
        &[2, 2, 2, 2, 2, 2],
        &[3, 3, 3, 3, 3, 3],
        &[1, 1, 2, 2, 3, 3],
        &[2, 2, 2, 2, 2, 2, 2],
        &[3, 3, 3, 3, 2, 2, 2],
        &[1, 2, 3, 4, 4, 3, 3],
        &[4, 4, 4, 4, 4, 4, 4],
        &[6, 1, 1, 1, 1, 1, 1],
    ];
    for seq in seqs {
        let found = enumerate_by_degree_sequence(seq).unwrap();
        let distinct = keys(&found);
        assert_eq!(distinct.len(), found.len(), "duplicates for {seq:?}");
        assert_eq!(distinct, brute_force(seq), "mismatch for {seq:?}");
    }
}

#[test]
fn nine_vertex_four_regular_diamond_free() {
    let graphs = enumerate_regular_diamondfree(9, 4);
    assert!(graphs.iter().any(|g| are_isomorphic(g, &gamma1())));
    assert!(triangle_partition_or_gamma1(&graphs));
    for g in &graphs {
        assert!(g.degrees().iter().all(|&d| d == 4));
        assert!(!g.has_diamond());
        assert!(!g.has_clique_of_size(4));
        if !are_isomorphic(g, &gamma1()) {
            let parts = triangle_partition(g).unwrap();
            assert_eq!(parts.len(), 3);
        }
    }
    assert_eq!(keys(&graphs).len(), graphs.len());
}

#[test]
fn cubic_on_four_is_excluded() {
    assert!(enumerate_regular_diamondfree(4, 3).is_empty());
}
