//! Acceptance suite: one test per criterion, each printing a PASS line
//! with the checked values. All checks are exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use topobox::bounds::{barany_bound_cyclic, hierarchy_report, ReportConfig};
use topobox::boxes::{
    box_complex, box_functor_map, c4free_retraction, canonical_map, BoxVariant, MapId,
};
use topobox::complex::{Label, DEFAULT_FACE_CAP as CAP};
use topobox::graph::{
    complete_graph, cycle_graph, exact_chromatic_number, greedy_coloring, degree_order,
    kneser_representation, path_graph, random_graph, Graph, RepresentationMode, VertexMap,
};
use topobox::homology::{betti_gf2, index_interval, BettiProfile};
use topobox::set_system::{
    cd2, deleted_join_dimension, free_complex, k_subsets, kneser_graph_of, stable_k_subsets,
    Cd2Method, SetSystem,
};

const BUDGET: u64 = 200_000_000;

fn petersen() -> (Graph, SetSystem) {
    let f = k_subsets(5, 2).unwrap();
    (kneser_graph_of(&f), f)
}

/// Profile equality up to trailing zeros (complexes of different dimension
/// can carry the same homology).
fn same_profile(a: &BettiProfile, b: &BettiProfile) -> bool {
    let len = a.0.len().max(b.0.len());
    (0..len).all(|d| a.0.get(d).copied().unwrap_or(0) == b.0.get(d).copied().unwrap_or(0))
}

fn random_graph_no_isolated(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    random_graph(n, p, rng).expect("sampling succeeds")
}

#[test]
fn ac1_box_complexes_of_complete_graphs_are_spheres() {
    for m in 2..=6 {
        let km = complete_graph(m).unwrap();
        let b0 = box_complex(&km, BoxVariant::B0, CAP).unwrap();
        assert!(
            same_profile(&betti_gf2(&b0.complex), &BettiProfile::sphere(m - 1)),
            "B0(K{m}) must look like a {}-sphere",
            m - 1
        );
        let b = box_complex(&km, BoxVariant::B, CAP).unwrap();
        assert!(
            same_profile(&betti_gf2(&b.complex), &BettiProfile::sphere(m - 2)),
            "B(K{m}) must look like a {}-sphere",
            m - 2
        );
        let interval = index_interval(&b0);
        assert_eq!(interval.lower, m as i64 - 1, "index interval of B0(K{m})");
        assert_eq!(interval.upper, Some(m as i64 - 1));
    }
    println!("AC1 (box complexes of complete graphs are spheres, m=2..6): PASS");
}

#[test]
fn ac2_kneser_chromatic_numbers_and_defects() {
    for (n, k) in [(4, 1), (5, 2), (6, 2), (7, 3)] {
        let expected = n - 2 * k + 2;
        let f = k_subsets(n, k).unwrap();
        let g = kneser_graph_of(&f);
        let chi = exact_chromatic_number(&g, BUDGET).unwrap();
        assert_eq!(chi, expected, "chi of kneser({n},{k})");
        let brute = cd2(&f, Cd2Method::Brute, CAP).unwrap();
        let via_dim = cd2(&f, Cd2Method::ViaDim, CAP).unwrap();
        assert_eq!(brute.value, expected, "brute defect of kneser({n},{k})");
        assert_eq!(via_dim.value, expected, "via-dim defect of kneser({n},{k})");
        assert!(brute.certificate.unwrap().verify(&f));
    }
    println!("AC2 (Kneser chromatic numbers and defects, 4 instances): PASS");
}

#[test]
fn ac3_defect_equals_ground_minus_one_minus_join_dimension() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut checked = 0;
    while checked < 200 {
        let n = rng.random_range(1..=8usize);
        let mut sets = Vec::new();
        for _ in 0..rng.random_range(1..=12usize) {
            let s: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.4)).collect();
            if !s.is_empty() && !sets.contains(&s) {
                sets.push(s);
            }
        }
        if sets.is_empty() {
            continue;
        }
        let f = SetSystem::new(n, sets).unwrap();
        let brute = cd2(&f, Cd2Method::Brute, CAP).unwrap();
        let k = free_complex(&f, CAP).unwrap();
        let via = n as i64 - 1 - deleted_join_dimension(&k);
        assert_eq!(brute.value as i64, via, "identity fails on {f:?}");
        assert!(
            brute.certificate.unwrap().verify(&f),
            "certificate fails on {f:?}"
        );
        checked += 1;
    }
    println!("AC3 (defect identity on 200 random systems, with certificates): PASS");
}

#[test]
fn ac4_canonical_maps_verify() {
    let (pet, pet_f) = petersen();
    let named: Vec<(Graph, Option<SetSystem>, &str)> = vec![
        (cycle_graph(5).unwrap(), None, "cycle(5)"),
        (complete_graph(3).unwrap(), None, "complete(3)"),
        (complete_graph(4).unwrap(), None, "complete(4)"),
        (pet, Some(pet_f), "kneser(5,2)"),
    ];
    for (g, f, name) in &named {
        let derived;
        let system = match f {
            Some(f) => f,
            None => {
                derived = kneser_representation(g, RepresentationMode::CliqueCover);
                &derived
            }
        };
        for id in MapId::all() {
            if id == MapId::M7 && !matches!(*name, "cycle(5)" | "complete(3)") {
                continue; // double subdivision within cap on the small pair only
            }
            let report = canonical_map(g, Some(system), id, CAP)
                .unwrap_or_else(|e| panic!("{name} {id}: {e}"));
            assert!(
                report.verdict(),
                "{name} {id}: {:?}",
                report.first_violation()
            );
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let random_ids = [
        MapId::M1,
        MapId::M2,
        MapId::M3,
        MapId::M4,
        MapId::M5,
        MapId::M6,
        MapId::M8,
        MapId::M9,
    ];
    for t in 0..50 {
        let n = rng.random_range(3..=7usize);
        let g = random_graph_no_isolated(&mut rng, n, 0.5);
        let f = kneser_representation(&g, RepresentationMode::CliqueCover);
        for id in random_ids {
            let report = canonical_map(&g, Some(&f), id, CAP)
                .unwrap_or_else(|e| panic!("random #{t} {id}: {e}"));
            assert!(
                report.verdict(),
                "random #{t} {id}: {:?}",
                report.first_violation()
            );
        }
    }
    println!("AC4 (canonical maps M1-M9 verified on named graphs and 50 random graphs): PASS");
}

#[test]
fn ac5_schrijver_instances_and_polytope_bound() {
    for (n, k) in [(5, 2), (6, 2), (8, 2), (9, 2)] {
        let f = stable_k_subsets(n, k).unwrap();
        let barany = barany_bound_cyclic(&f, CAP).unwrap();
        assert_eq!(barany, Some(n - 2 * k + 2), "polytope bound for stable({n},{k})");
        let expected_defect = n + 4 - 4 * k;
        let brute = cd2(&f, Cd2Method::Brute, CAP).unwrap();
        let via_dim = cd2(&f, Cd2Method::ViaDim, CAP).unwrap();
        assert_eq!(brute.value, expected_defect, "defect of stable({n},{k})");
        assert_eq!(via_dim.value, expected_defect);
        assert_eq!(
            barany.unwrap() - brute.value,
            2 * k - 2,
            "gap between polytope and defect bounds at stable({n},{k})"
        );
    }
    for (n, k) in [(5, 2), (6, 2), (8, 2)] {
        let g = kneser_graph_of(&stable_k_subsets(n, k).unwrap());
        assert_eq!(
            exact_chromatic_number(&g, BUDGET).unwrap(),
            n - 2 * k + 2,
            "chi of schrijver({n},{k})"
        );
    }
    println!("AC5 (Schrijver defects, polytope bounds, chromatic numbers): PASS");
}

#[test]
fn ac6_c4free_collapse() {
    let (pet, _) = petersen();
    let graphs = [
        (cycle_graph(5).unwrap(), "cycle(5)"),
        (cycle_graph(7).unwrap(), "cycle(7)"),
        (path_graph(5).unwrap(), "path(5)"),
        (pet, "kneser(5,2)"),
    ];
    for (g, name) in &graphs {
        let report = c4free_retraction(g, CAP).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(
            report.check.verdict,
            "{name}: {:?}",
            report.check.first_violation
        );
        assert!(
            report.image_dimension <= 1,
            "{name}: image dimension {}",
            report.image_dimension
        );
    }
    println!("AC6 (collapse to dimension <= 1 on four graphs without 4-cycles): PASS");
}

#[test]
fn ac7_soundness_sweep() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let cfg = ReportConfig::default();
    for t in 0..100 {
        let n = rng.random_range(4..=9usize);
        let g = random_graph_no_isolated(&mut rng, n, 0.5);
        let report = hierarchy_report(&format!("sweep#{t}"), &g, None, &cfg).unwrap();
        assert!(report.is_complete(), "sweep #{t}: {:?}", report.incomplete);
        let chi = report.chi_exact.expect("solver finished") as i64;
        if let Some(l) = report.lovasz_lower {
            assert!(l <= chi, "sweep #{t}: lovasz {l} > chi {chi}");
        }
        if let Some(d) = report.dolnikov_kriz {
            assert!(d as i64 <= chi, "sweep #{t}: defect {d} > chi {chi}");
        }
        if let Some(b) = report.barany {
            assert!(b as i64 <= chi, "sweep #{t}: polytope bound {b} > chi {chi}");
        }
        assert!(
            report.all_verdicts_pass(),
            "sweep #{t}: {:?}",
            report.verdicts
        );
    }
    println!("AC7 (soundness of all bounds and verdicts v1-v5 on 100 random graphs): PASS");
}

#[test]
fn ac8_five_cycle_figure_check() {
    let c5 = cycle_graph(5).unwrap();
    let b = box_complex(&c5, BoxVariant::B, CAP).unwrap();
    assert_eq!(b.complex.n_vertices(), 10);
    assert_eq!(betti_gf2(&b.complex), BettiProfile(vec![0, 1, 0]));

    // The edge box complex is the circle on 10 vertices; the pair box
    // complex refines it on 20 (one vertex per proper shore pair).
    let bedge = box_complex(&c5, BoxVariant::BEdge, CAP).unwrap();
    assert_eq!(bedge.complex.f_vector(), vec![10, 10]);
    assert_eq!(betti_gf2(&bedge.complex), BettiProfile(vec![0, 1]));
    let b1 = box_complex(&c5, BoxVariant::B1, CAP).unwrap();
    assert_eq!(b1.complex.f_vector(), vec![20, 20]);
    assert_eq!(betti_gf2(&b1.complex), BettiProfile(vec![0, 1]));

    // B0 adds exactly the closures of the two one-shore simplices on all
    // five vertices.
    let b0 = box_complex(&c5, BoxVariant::B0, CAP).unwrap();
    let full_one: Vec<Label> = (0..5)
        .map(|v| Label::signed_atom(v, topobox::complex::Shore::One))
        .collect();
    let full_two: Vec<Label> = (0..5)
        .map(|v| Label::signed_atom(v, topobox::complex::Shore::Two))
        .collect();
    assert!(b0.complex.contains_labels(&full_one));
    assert!(b0.complex.contains_labels(&full_two));
    let extra: Vec<_> = b0
        .complex
        .faces()
        .filter(|f| !b.complex.contains_labels(&b0.complex.face_labels(f)))
        .collect();
    assert!(!extra.is_empty());
    for face in &extra {
        let labels = b0.complex.face_labels(face);
        let inside = |top: &[Label]| labels.iter().all(|l| top.contains(l));
        assert!(
            inside(&full_one) || inside(&full_two),
            "extra face {labels:?} outside the two added simplices"
        );
    }
    assert_eq!(b0.complex.dim(), 4);
    println!("AC8 (five-cycle box complexes match the expected shapes): PASS");
}

#[test]
fn ac9_functoriality_and_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for t in 0..50 {
        let n = rng.random_range(3..=7usize);
        let g = random_graph_no_isolated(&mut rng, n, 0.5);
        let coloring = greedy_coloring(&g, &degree_order(&g)).unwrap();
        let m = coloring.colors_used();
        let m2 = m + rng.random_range(0..=2usize);
        let km = complete_graph(m).unwrap();
        let km2 = complete_graph(m2).unwrap();

        let f = VertexMap::from_coloring(&g, &coloring, m).unwrap();
        let inclusion = VertexMap::new(km.clone(), km2.clone(), (0..m).collect()).unwrap();
        let composed =
            VertexMap::new(g.clone(), km2.clone(), coloring.assignment().to_vec()).unwrap();

        let map_f = box_functor_map(&f, CAP).unwrap();
        let map_g = box_functor_map(&inclusion, CAP).unwrap();
        let map_gf = box_functor_map(&composed, CAP).unwrap();
        assert!(map_f.check.verdict, "#{t}: induced map fails");
        assert!(map_g.check.verdict);
        assert!(map_gf.check.verdict);
        for (k, v) in &map_f.vertex_map {
            assert_eq!(
                &map_g.vertex_map[v], &map_gf.vertex_map[k],
                "#{t}: composition law fails at {k}"
            );
        }
    }
    println!("AC9 (functor maps verify and compose on 50 homomorphism pairs): PASS");
}

#[test]
fn ac10_tightness_report() {
    // Informational: the homology lower bound happens to be tight on these
    // Kneser instances; a failure here warns instead of failing CI because
    // only the index inequality is guaranteed.
    let mut warnings = Vec::new();
    for (n, k) in [(5, 2), (6, 2)] {
        let f = k_subsets(n, k).unwrap();
        let g = kneser_graph_of(&f);
        let b = box_complex(&g, BoxVariant::B, CAP).unwrap();
        let lower = index_interval(&b).lower + 2;
        let expected = (n - 2 * k + 2) as i64;
        if lower != expected {
            warnings.push(format!(
                "kneser({n},{k}): homology bound {lower}, chromatic number {expected}"
            ));
        }
    }
    if warnings.is_empty() {
        println!("AC10 (homology bound tight on kneser(5,2) and kneser(6,2)): PASS");
    } else {
        for w in &warnings {
            println!("AC10 warning: {w}");
        }
        println!("AC10 (tightness report): PASS with warnings (informational)");
    }
}
