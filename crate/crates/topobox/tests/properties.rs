//! Property tests for the structural invariants: representation
//! faithfulness, closure properties of the constructions, homology
//! invariance under subdivision and suspension, and the dual routes to the
//! colorability defect.

use proptest::prelude::*;

use topobox::bitset::BitSet;
use topobox::bounds::barany_bound_cyclic;
use topobox::boxes::{box_complex, lovasz_complex, BoxVariant};
use topobox::complex::{
    barycentric_subdivision, deleted_join, suspension, to_json, Label, SimplicialComplex,
    DEFAULT_FACE_CAP as CAP,
};
use topobox::graph::{
    exact_chromatic_number, greedy_coloring, kneser_representation, Graph, RepresentationMode,
};
use topobox::homology::{acyclicity, betti_gf2, index_interval};
use topobox::set_system::{
    cd2, deleted_join_dimension, free_complex, kneser_graph_of, stable_k_subsets, Cd2Method,
    SetSystem,
};

/// A random simple graph without isolated vertices: any isolated vertex is
/// attached to its cyclic successor.
fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| {
            let bits = n * (n - 1) / 2;
            (Just(n), prop::collection::vec(any::<bool>(), bits))
        })
        .prop_map(|(n, bits)| {
            let mut g = Graph::new(n);
            let mut idx = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[idx] {
                        g.add_edge(u, v).unwrap();
                    }
                    idx += 1;
                }
            }
            while let Some(v) = g.isolated_vertex() {
                g.add_edge(v, (v + 1) % n).unwrap();
            }
            g
        })
}

fn arb_complex(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(0..n, 1..=4), 1..=5),
            )
        })
        .prop_map(|(_n, facets)| {
            let mut used: Vec<usize> = facets.iter().flatten().copied().collect();
            used.sort_unstable();
            used.dedup();
            let vertices: Vec<Label> = used.iter().map(|&v| Label::atom(v)).collect();
            let faces: Vec<Vec<Label>> = facets
                .iter()
                .map(|f| f.iter().map(|&v| Label::atom(v)).collect())
                .collect();
            SimplicialComplex::from_faces(vertices, faces).unwrap()
        })
}

fn arb_system(max_ground: usize) -> impl Strategy<Value = SetSystem> {
    (1..=max_ground)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec(prop::collection::vec(0..n, 1..=n), 1..=8),
            )
        })
        .prop_map(|(n, sets)| {
            let mut cleaned: Vec<Vec<usize>> = Vec::new();
            for mut s in sets {
                s.sort_unstable();
                s.dedup();
                if !cleaned.contains(&s) {
                    cleaned.push(s);
                }
            }
            SetSystem::new(n, cleaned).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kneser_representations_rebuild_the_graph(g in arb_graph(7)) {
        for mode in [RepresentationMode::Augmented, RepresentationMode::CliqueCover] {
            let f = kneser_representation(&g, mode);
            prop_assert_eq!(&kneser_graph_of(&f), &g);
        }
    }

    #[test]
    fn greedy_is_an_upper_bound_for_exact(g in arb_graph(7), seed in any::<u64>()) {
        // A pseudo-random order derived from the seed.
        let n = g.n();
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let greedy = greedy_coloring(&g, &order).unwrap();
        let chi = exact_chromatic_number(&g, 1 << 24).unwrap();
        prop_assert!(chi <= greedy.colors_used());
    }

    #[test]
    fn common_neighbors_antitone_and_triple_idempotent(g in arb_graph(7), mask in any::<u8>()) {
        let n = g.n();
        let a = BitSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 1));
        let cn_a = g.common_neighbors(&a);
        prop_assert_eq!(g.common_neighbors(&g.common_neighbors(&cn_a)), cn_a.clone());
        for v in 0..n {
            if !a.contains(v) {
                let mut b = a.clone();
                b.insert(v);
                prop_assert!(g.common_neighbors(&b).is_subset(&cn_a));
            }
        }
    }

    #[test]
    fn constructions_stay_downward_closed(k in arb_complex(6)) {
        let sd = barycentric_subdivision(&k, CAP).unwrap();
        prop_assert!(sd.is_downward_closed());
        let susp = suspension(&k).unwrap();
        prop_assert!(susp.is_downward_closed());
        let dj = deleted_join(&k, CAP).unwrap();
        prop_assert!(dj.complex.is_downward_closed());
    }

    #[test]
    fn euler_characteristic_matches_betti(k in arb_complex(6)) {
        let betti = betti_gf2(&k);
        let euler: i64 = k
            .f_vector()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum();
        prop_assert_eq!(euler - 1, betti.reduced_euler_characteristic());
    }

    #[test]
    fn subdivision_preserves_homology(k in arb_complex(6)) {
        let sd = barycentric_subdivision(&k, CAP).unwrap();
        prop_assert_eq!(betti_gf2(&sd), betti_gf2(&k));
        prop_assert_eq!(sd.n_vertices(), k.face_count() - 1);
    }

    #[test]
    fn suspension_shifts_homology(k in arb_complex(6)) {
        let b = betti_gf2(&k);
        let sb = betti_gf2(&suspension(&k).unwrap());
        prop_assert_eq!(sb.0.first().copied().unwrap_or(0), 0);
        for d in 0..b.0.len() {
            prop_assert_eq!(sb.0.get(d + 1).copied().unwrap_or(0), b.0[d]);
        }
    }

    #[test]
    fn deleted_join_dimension_agrges_with_construction(k in arb_complex(5)) {
        let dj = deleted_join(&k, CAP).unwrap();
        prop_assert_eq!(dj.complex.dim(), deleted_join_dimension(&k));
        prop_assert!(dj.free());
    }

    #[test]
    fn defect_routes_agree(f in arb_system(7)) {
        let brute = cd2(&f, Cd2Method::Brute, CAP).unwrap();
        let via = cd2(&f, Cd2Method::ViaDim, CAP).unwrap();
        prop_assert_eq!(brute.value, via.value);
        prop_assert!(brute.certificate.unwrap().verify(&f));
    }

    #[test]
    fn defect_is_monotone_under_adding_sets(f in arb_system(6), extra in prop::collection::vec(0..6usize, 1..=6)) {
        let mut s: Vec<usize> = extra.into_iter().filter(|&e| e < f.ground_size()).collect();
        s.sort_unstable();
        s.dedup();
        prop_assume!(!s.is_empty() && !f.sets().contains(&s));
        let mut sets = f.sets().to_vec();
        sets.push(s);
        let bigger = SetSystem::new(f.ground_size(), sets).unwrap();
        let a = cd2(&f, Cd2Method::Brute, CAP).unwrap().value;
        let b = cd2(&bigger, Cd2Method::Brute, CAP).unwrap().value;
        prop_assert!(a <= b);
    }

    #[test]
    fn defect_never_exceeds_weakest_join_bound(f in arb_system(6)) {
        // The defect equals the dimension instantiation of the join bound,
        // so it is at most the homology instantiation.
        let n = f.ground_size() as i64;
        let value = cd2(&f, Cd2Method::ViaDim, CAP).unwrap().value as i64;
        let k = free_complex(&f, CAP).unwrap();
        let dj = deleted_join(&k, CAP).unwrap();
        let upper = n - 1 - index_interval(&dj).lower;
        prop_assert!(value <= upper, "defect {} > join bound {}", value, upper);
    }

    #[test]
    fn box_complexes_are_free_closed_and_deterministic(g in arb_graph(6)) {
        for variant in [BoxVariant::B, BoxVariant::B0, BoxVariant::B1, BoxVariant::BEdge] {
            let once = box_complex(&g, variant, CAP).unwrap();
            prop_assert!(once.free());
            prop_assert!(once.complex.is_downward_closed());
            let twice = box_complex(&g, variant, CAP).unwrap();
            prop_assert_eq!(to_json(&once.complex), to_json(&twice.complex));
        }
        let l = lovasz_complex(&g, CAP).unwrap();
        prop_assert!(l.free());
        prop_assert!(l.complex.is_downward_closed());
        let n = topobox::boxes::neighborhood_complex(&g, CAP).unwrap();
        prop_assert!(n.is_downward_closed());
    }

    #[test]
    fn lovasz_vertices_are_common_neighbor_images(g in arb_graph(6)) {
        // A set is a vertex of the Lovász complex iff it is CN(B) for some
        // nonempty B, iff it is a nonempty proper CN-closed set.
        let n = g.n();
        let l = lovasz_complex(&g, CAP).unwrap();
        for mask in 0u32..1 << n {
            let a = BitSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 1));
            let label = Label::set(a.iter().map(Label::atom).collect());
            let is_vertex = l.complex.vertex_id(&label).is_some();
            let closed = g.common_neighbors(&g.common_neighbors(&a)) == a;
            let expected = closed && !a.is_empty() && a.len() < n;
            prop_assert_eq!(is_vertex, expected);
            if expected {
                // Witness B: the common neighbors themselves.
                let b = g.common_neighbors(&a);
                prop_assert!(!b.is_empty());
                prop_assert_eq!(g.common_neighbors(&b), a.clone());
            }
        }
    }
}

#[test]
fn acyclicity_lower_bound_is_consistent_on_box_complexes() {
    // For free complexes the interval must be ordered.
    for g in [
        topobox::graph::cycle_graph(6).unwrap(),
        topobox::graph::complete_graph(5).unwrap(),
    ] {
        for variant in [BoxVariant::B, BoxVariant::B0] {
            let z = box_complex(&g, variant, CAP).unwrap();
            let iv = index_interval(&z);
            assert!(iv.lower <= iv.upper.unwrap());
            assert!(acyclicity(&z.complex) >= -1);
        }
    }
}

#[test]
fn hierarchy_sound_at_low_and_high_density() {
    use rand::SeedableRng;
    use topobox::bounds::{hierarchy_report, ReportConfig};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let cfg = ReportConfig::default();
    for p in [0.3, 0.7] {
        for t in 0..12 {
            let g = topobox::graph::random_graph(8, p, &mut rng).unwrap();
            let report = hierarchy_report(&format!("density{p}#{t}"), &g, None, &cfg).unwrap();
            let chi = report.chi_exact.unwrap() as i64;
            assert!(report.lovasz_lower.unwrap() <= chi);
            assert!(report.dolnikov_kriz.unwrap() as i64 <= chi);
            if let Some(b) = report.barany {
                assert!(b as i64 <= chi);
            }
            assert!(report.all_verdicts_pass(), "{:?}", report.verdicts);
        }
    }
}

#[test]
fn polytope_vs_defect_separation_grows() {
    // The gap between the polytope bound and the defect bound on stable
    // systems is 2k - 2, checked at three parameter pairs.
    for (n, k) in [(8, 2), (9, 2), (12, 3)] {
        let f = stable_k_subsets(n, k).unwrap();
        let barany = barany_bound_cyclic(&f, CAP).unwrap().unwrap();
        let defect = cd2(&f, Cd2Method::Brute, CAP).unwrap().value;
        assert_eq!(barany, n - 2 * k + 2, "stable({n},{k})");
        assert_eq!(barany - defect, 2 * k - 2, "stable({n},{k})");
    }
}
