use neumaier_core::canon::{are_isomorphic, automorphism_group, canonical_form, find_isomorphism};
use neumaier_core::classify::{classify, regularity_profile, NeumaierTag};
use neumaier_core::cliques::{enumerate_maximal_cliques, find_regular_cliques};
use neumaier_core::constructions::{latin_square_graph, LatinSquare};
use neumaier_core::graph::Graph;
use neumaier_core::graph6::{decode_graph6, encode_graph6};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), proptest::collection::vec(any::<bool>(), pairs)).prop_map(|(n, bits)| {
            let mut g = Graph::empty(n).unwrap();
            let mut k = 0;
            for w in 1..n {
                for u in 0..w {
                    if bits[k] {
                        g.add_edge(u, w);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn permutation_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn brute_isomorphic(g: &Graph, h: &Graph, perms: &[Vec<usize>]) -> bool {
    g.n() == h.n() && perms.iter().any(|p| g.permuted(p) == *h)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(64)) {
        let text = encode_graph6(&g);
        prop_assert_eq!(decode_graph6(&text).unwrap(), g.clone());
        prop_assert_eq!(encode_graph6(&decode_graph6(&text).unwrap()), text);
    }

    #[test]
    fn complement_is_an_involution(g in graph_strategy(40)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        let n = g.n();
        prop_assert_eq!(g.edge_count() + g.complement().edge_count(), n * (n - 1) / 2);
    }

    #[test]
    fn double_counting(g in graph_strategy(30)) {
        prop_assume!(g.n() >= 2);
        let p = regularity_profile(&g);
        let pairs: usize = p.lambda_values.iter().chain(p.mu_values.iter()).map(|(c, m)| c * m).sum();
        let paths: usize = g.degrees().iter().map(|d| d * d.saturating_sub(1) / 2).sum();
        prop_assert_eq!(pairs, paths);
    }

    #[test]
    fn maximal_cliques_are_maximal_cliques(g in graph_strategy(20)) {
        let cliques = enumerate_maximal_cliques(&g);
        for c in &cliques {
            prop_assert!(g.is_clique(c.0));
            for v in 0..g.n() {
                if !c.contains(v) {
                    prop_assert!(g.neighbors(v) & c.0 != c.0);
                }
            }
        }
        let mut keys: Vec<Vec<usize>> = cliques.iter().map(|c| c.to_vec()).collect();
        let sorted = { let mut k = keys.clone(); k.sort(); k };
        prop_assert_eq!(&keys, &sorted);
        keys.dedup();
        prop_assert_eq!(keys.len(), cliques.len());
    }

    #[test]
    fn regular_clique_certificates_recount(g in graph_strategy(16)) {
        for cert in find_regular_cliques(&g) {
            let e = cert.e.unwrap();
            prop_assert!(e > 0);
            for v in 0..g.n() {
                if !cert.vertices.contains(v) {
                    prop_assert_eq!((g.neighbors(v) & cert.vertices.0).count_ones() as usize, e);
                }
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels(
        (g, perm) in graph_strategy(40).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation_strategy(n)) })
    ) {
        let a = canonical_form(&g, None);
        let b = canonical_form(&g.permuted(&perm), None);
        prop_assert_eq!(&a.canonical_string, &b.canonical_string);
        prop_assert_eq!(g.permuted(&a.canonical_labeling), decode_graph6(&a.canonical_string).unwrap());
        let phi = find_isomorphism(&g, &g.permuted(&perm)).unwrap();
        prop_assert_eq!(g.permuted(&phi), g.permuted(&perm));
    }

    #[test]
    fn coloured_canonical_form_ignores_labels(
        (g, perm, colors) in graph_strategy(24).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), permutation_strategy(n), proptest::collection::vec(0usize..3, n))
        })
    ) {
        let moved_colors: Vec<usize> = {
            let mut c = vec![0; colors.len()];
            for (v, &p) in perm.iter().enumerate() { c[p] = colors[v]; }
            c
        };
        let a = canonical_form(&g, Some(&colors));
        let b = canonical_form(&g.permuted(&perm), Some(&moved_colors));
        prop_assert_eq!(a.key(), b.key());
        let aut = automorphism_group(&g, Some(&colors));
        for p in &aut.generators {
            prop_assert!(g.is_automorphism(p));
            prop_assert!((0..g.n()).all(|v| colors[p[v]] == colors[v]));
        }
    }

    #[test]
    fn generators_and_orbits_are_consistent(g in graph_strategy(30)) {
        let aut = automorphism_group(&g, None);
        for p in &aut.generators {
            prop_assert!(g.is_automorphism(p));
        }
        let product: u64 = aut.basic_orbit_sizes.iter().map(|&s| s as u64).product::<u64>();
        prop_assert_eq!(Some(product), aut.order_u64());
        for orbit in &aut.vertex_orbits {
            prop_assert!(aut.order_u64().unwrap().is_multiple_of(orbit.len() as u64));
        }
    }
}

#[test]
fn automorphism_orders_match_brute_force_up_to_eight_vertices() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(8);
    for n in 1..=8 {
        let perms = all_permutations(n);
        let trials = if n <= 5 { 60 } else { 25 };
        for _ in 0..trials {
            let density = rng.gen_range(0.0..1.0);
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for w in u + 1..n {
                    if rng.gen_bool(density) {
                        g.add_edge(u, w);
                    }
                }
            }
            let brute: Vec<&Vec<usize>> = perms.iter().filter(|p| g.is_automorphism(p)).collect();
            let aut = automorphism_group(&g, None);
            assert_eq!(aut.order_u64(), Some(brute.len() as u64), "{g:?}");
            // orbits from the brute-force group
            for v in 0..n {
                let mut orbit: Vec<usize> = brute.iter().map(|p| p[v]).collect();
                orbit.sort_unstable();
                orbit.dedup();
                assert_eq!(aut.orbit_of(v), orbit.as_slice());
            }
        }
    }
}

#[test]
fn isomorphism_matches_brute_force_up_to_seven_vertices() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for n in 2..=7 {
        let perms = all_permutations(n);
        let m = n * (n - 1) / 2;
        for _ in 0..80 {
            // equal edge counts so the test is not decided by a trivial invariant
            let edges = rng.gen_range(0..=m);
            let random = |rng: &mut rand::rngs::StdRng| {
                let mut all: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
                    .collect();
                use rand::seq::SliceRandom;
                all.shuffle(rng);
                Graph::from_edges(n, &all[..edges]).unwrap()
            };
            let g = random(&mut rng);
            let h = random(&mut rng);
            assert_eq!(
                are_isomorphic(&g, &h),
                brute_isomorphic(&g, &h, &perms),
                "{g:?} {h:?}"
            );
        }
    }
}

fn random_latin_square(n: usize, rng: &mut impl rand::Rng) -> LatinSquare {
    use rand::seq::SliceRandom;
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    let mut syms: Vec<usize> = (1..=n).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    syms.shuffle(rng);
    LatinSquare::new(
        (0..n)
            .map(|i| (0..n).map(|j| syms[(rows[i] + cols[j]) % n]).collect())
            .collect(),
    )
    .unwrap()
}

#[test]
fn latin_square_graphs_are_edge_regular() {
    use rand::SeedableRng;
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    for n in 2..=7 {
        for _ in 0..5 {
            let g = latin_square_graph(&random_latin_square(n, &mut rng)).unwrap();
            let p = regularity_profile(&g);
            assert_eq!(p.regular_degree, Some(3 * (n - 1)));
            assert_eq!(p.edge_regular_lambda, Some(n));
        }
    }
}

#[test]
fn latin_square_graphs_are_neumaier_from_order_three() {
    for n in 3..=7 {
        let g = latin_square_graph(&LatinSquare::cyclic(n).unwrap()).unwrap();
        let v = classify(&g).unwrap();
        assert_eq!(v.tag, NeumaierTag::NeumaierStronglyRegular);
        let p = v.parameters().unwrap();
        assert_eq!(
            (p.v, p.k, p.lambda, p.e, p.s),
            ((n * n) as u32, 3 * (n as u32 - 1), n as u32, 2, n as u32)
        );
    }
}
