//! Box complexes of a graph and of a Kneser representation, the
//! neighborhood and Lovász complexes, and the functorial map induced by a
//! graph homomorphism.
//!
//! All variants carry the shore-swap involution. Faces correspond to
//! complete bipartite subgraphs: a pair of disjoint vertex sets `(A', A'')`
//! with every cross pair adjacent, encoded as signed labels.

mod maps;
mod retract;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

pub use maps::{canonical_map, CanonicalMapReport, MapDirectionReport, MapId};
pub use retract::{c4free_retraction, RetractionReport};

use crate::bitset::BitSet;
use crate::complex::verify::PairPosetDomain;
use crate::complex::{
    order_complex_unchecked, ComplexError, Face, Label, Shore, SimplicialComplex,
    SimplicialMapCheck, Z2Complex,
};
use crate::graph::{check_homomorphism, Graph, GraphError, VertexMap};
use crate::set_system::SetSystem;

#[derive(Debug, Error, PartialEq)]
pub enum BoxError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("map {0} needs a set-system presentation of the graph")]
    RequiresSetSystem(MapId),
    #[error("the set system's Kneser graph does not equal the given graph")]
    SystemMismatch,
}

/// The complex families computed by this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoxVariant {
    /// Complete bipartite pairs whose shores both have a common neighbor.
    B,
    /// All complete bipartite pairs; an empty shore imposes no condition.
    B0,
    /// Order complex of the pairs with both shores nonempty.
    B1,
    /// Simplices are subsets of edge sets of complete bipartite subgraphs.
    BEdge,
    /// Order complex of disjoint ground-set pairs where at least one side
    /// contains a member of the system.
    BSark,
    /// Same, but both sides must contain a member.
    BChain,
    /// Neighborhood complex (no involution).
    N,
    /// Lovász complex: order complex of the common-neighbor-closed sets.
    L,
}

impl std::str::FromStr for BoxVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "B" => Ok(BoxVariant::B),
            "B0" => Ok(BoxVariant::B0),
            "B1" => Ok(BoxVariant::B1),
            "Bedge" => Ok(BoxVariant::BEdge),
            "Bsark" => Ok(BoxVariant::BSark),
            "Bchain" => Ok(BoxVariant::BChain),
            "N" => Ok(BoxVariant::N),
            "L" => Ok(BoxVariant::L),
            other => Err(format!(
                "unknown variant `{other}` (expected B, B0, B1, Bedge, Bsark, Bchain, N, L)"
            )),
        }
    }
}

/// Flips the shore of every signed label in a shore-pair `Set` label.
pub(crate) fn swap_shores(l: &Label) -> Label {
    match l {
        Label::Set(items) => Label::set(
            items
                .iter()
                .map(|s| match s {
                    Label::Signed(inner, sh) => Label::Signed(inner.clone(), sh.flip()),
                    other => other.clone(),
                })
                .collect(),
        ),
        Label::Signed(inner, sh) => Label::Signed(inner.clone(), sh.flip()),
        other => other.clone(),
    }
}

/// Decodes a shore-pair `Set` label into the two shores of plain vertices.
pub(crate) fn decode_shore_pair(l: &Label) -> Option<(Vec<usize>, Vec<usize>)> {
    let items = l.as_set()?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for item in items {
        match item {
            Label::Signed(inner, sh) => match (inner.as_ref(), sh) {
                (Label::Atom(v), Shore::One) => left.push(*v),
                (Label::Atom(v), Shore::Two) => right.push(*v),
                _ => return None,
            },
            _ => return None,
        }
    }
    Some((left, right))
}

/// Splits a face of a signed-vertex complex into its two plain shores.
pub(crate) fn shores_of_face(z: &Z2Complex, face: &[u32]) -> (BitSet, BitSet) {
    let n = z.complex.n_vertices(); // loose capacity; shores hold plain vertices
    let mut left = BitSet::new(n);
    let mut right = BitSet::new(n);
    for &id in face {
        match z.complex.label(id) {
            Label::Signed(inner, sh) => match (inner.as_ref(), sh) {
                (Label::Atom(v), Shore::One) => left.insert(*v),
                (Label::Atom(v), Shore::Two) => right.insert(*v),
                _ => panic!("expected signed atom"),
            },
            _ => panic!("expected signed atom"),
        }
    }
    (left, right)
}

/// Is the label a complete bipartite pair of `g` with both shores nonempty?
pub(crate) fn is_proper_pair(g: &Graph, l: &Label) -> bool {
    match decode_shore_pair(l) {
        Some((left, right)) => {
            !left.is_empty()
                && !right.is_empty()
                && left.iter().all(|&v| v < g.n())
                && right.iter().all(|&v| v < g.n())
                && left.iter().all(|u| !right.contains(u))
                && left
                    .iter()
                    .all(|&u| right.iter().all(|&v| g.has_edge(u, v)))
        }
        None => false,
    }
}

// ---------------------------------------------------------------------------
// Shore-pair enumeration
// ---------------------------------------------------------------------------

/// Enumerates all complete bipartite shore pairs of `g`, including pairs
/// with an empty shore. With `require_cn`, both shores must keep a common
/// neighbor (the extra condition distinguishing the smaller box complex).
pub(crate) fn bipartite_pairs(
    g: &Graph,
    require_cn: bool,
    cap: usize,
) -> Result<Vec<(BitSet, BitSet)>, ComplexError> {
    let n = g.n();
    let full = BitSet::full(n);
    let mut out = Vec::new();
    // Signed slots 0..n are shore one, n..2n shore two; ascending ids
    // visit each pair exactly once.
    let mut stack: Vec<(usize, BitSet, BitSet, BitSet, BitSet)> = Vec::new();
    stack.push((0, BitSet::new(n), BitSet::new(n), full.clone(), full.clone()));
    while let Some((next, a, b, cn_a, cn_b)) = stack.pop() {
        if out.len() >= cap {
            return Err(ComplexError::FaceCapExceeded(cap));
        }
        out.push((a.clone(), b.clone()));
        for slot in next..2 * n {
            let (v, to_first) = if slot < n { (slot, true) } else { (slot - n, false) };
            if to_first {
                // v joins shore one: must see all of shore two.
                if !cn_b.contains(v) {
                    continue;
                }
                let mut na = a.clone();
                na.insert(v);
                let mut ncn_a = cn_a.clone();
                ncn_a.intersect_with(g.neighbors(v));
                if require_cn && ncn_a.is_empty() {
                    continue;
                }
                stack.push((slot + 1, na, b.clone(), ncn_a, cn_b.clone()));
            } else {
                if a.contains(v) || !cn_a.contains(v) {
                    continue;
                }
                let mut nb = b.clone();
                nb.insert(v);
                let mut ncn_b = cn_b.clone();
                ncn_b.intersect_with(g.neighbors(v));
                if require_cn && ncn_b.is_empty() {
                    continue;
                }
                stack.push((slot + 1, a.clone(), nb, cn_a.clone(), ncn_b));
            }
        }
    }
    Ok(out)
}

fn signed_vertices(n: usize) -> Vec<Label> {
    let mut vertices = Vec::with_capacity(2 * n);
    for v in 0..n {
        vertices.push(Label::signed_atom(v, Shore::One));
        vertices.push(Label::signed_atom(v, Shore::Two));
    }
    vertices.sort();
    vertices
}

fn pairs_to_complex(n: usize, pairs: &[(BitSet, BitSet)]) -> SimplicialComplex {
    let vertices = signed_vertices(n);
    let index: BTreeMap<&Label, u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i as u32))
        .collect();
    let id = |v: usize, shore: Shore| index[&Label::signed_atom(v, shore)];
    let mut faces: BTreeSet<Face> = BTreeSet::new();
    for (a, b) in pairs {
        let mut face: Face = a.iter().map(|v| id(v, Shore::One)).collect();
        face.extend(b.iter().map(|v| id(v, Shore::Two)));
        face.sort_unstable();
        faces.insert(face);
    }
    SimplicialComplex::from_closed_faces(vertices, faces)
}

/// Builds one of the four graph box complexes.
pub fn box_complex(g: &Graph, variant: BoxVariant, cap: usize) -> Result<Z2Complex, BoxError> {
    if let Some(v) = g.isolated_vertex() {
        return Err(GraphError::IsolatedVertex(v).into());
    }
    match variant {
        BoxVariant::B | BoxVariant::B0 => {
            let pairs = bipartite_pairs(g, variant == BoxVariant::B, cap)?;
            let complex = pairs_to_complex(g.n(), &pairs);
            Ok(Z2Complex::new(complex, swap_shores)?)
        }
        BoxVariant::B1 => {
            let pairs = bipartite_pairs(g, false, cap)?;
            let proper: Vec<&(BitSet, BitSet)> = pairs
                .iter()
                .filter(|(a, b)| !a.is_empty() && !b.is_empty())
                .collect();
            let labels: Vec<Label> = proper
                .iter()
                .map(|(a, b)| Label::shore_pair(a.iter(), b.iter()))
                .collect();
            let complex = order_complex_unchecked(
                labels,
                &|i, j| {
                    let (ai, bi) = proper[i];
                    let (aj, bj) = proper[j];
                    (ai, bi) != (aj, bj) && ai.is_subset(aj) && bi.is_subset(bj)
                },
                cap,
            )?;
            Ok(Z2Complex::new(complex, swap_shores)?)
        }
        BoxVariant::BEdge => bedge_complex(g, cap),
        BoxVariant::BSark | BoxVariant::BChain | BoxVariant::N | BoxVariant::L => {
            panic!("variant {variant:?} is not a graph box complex")
        }
    }
}

/// The box complex on directed edges: faces are subsets of the edge set of
/// a complete bipartite subgraph, oriented first shore to second. The
/// involution reverses every edge.
fn bedge_complex(g: &Graph, cap: usize) -> Result<Z2Complex, BoxError> {
    let n = g.n();
    let mut darts: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in g.neighbors(u).iter() {
            darts.push((u, v));
        }
    }
    darts.sort_unstable();
    let vertices: Vec<Label> = {
        let mut vs: Vec<Label> = darts
            .iter()
            .map(|&(u, v)| Label::pair(Label::atom(u), Label::atom(v)))
            .collect();
        vs.sort();
        vs
    };
    let index: BTreeMap<&Label, u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i as u32))
        .collect();
    let dart_vertex: Vec<u32> = darts
        .iter()
        .map(|&(u, v)| index[&Label::pair(Label::atom(u), Label::atom(v))])
        .collect();

    let mut faces: BTreeSet<Face> = BTreeSet::new();
    // DFS over dart indices; a set of darts spans a face iff its tails and
    // heads are disjoint and all tail-head pairs are edges.
    let mut stack: Vec<(usize, Vec<usize>, BitSet, BitSet)> =
        vec![(0, Vec::new(), BitSet::new(n), BitSet::new(n))];
    while let Some((next, chosen, tails, heads)) = stack.pop() {
        if faces.len() >= cap {
            return Err(ComplexError::FaceCapExceeded(cap).into());
        }
        let mut face: Face = chosen.iter().map(|&d| dart_vertex[d]).collect();
        face.sort_unstable();
        faces.insert(face);
        for d in next..darts.len() {
            let (u, v) = darts[d];
            if tails.contains(v) || heads.contains(u) {
                continue;
            }
            if !heads.is_subset(g.neighbors(u)) || !tails.is_subset(g.neighbors(v)) {
                continue;
            }
            let mut nt = tails.clone();
            nt.insert(u);
            let mut nh = heads.clone();
            nh.insert(v);
            let mut nc = chosen.clone();
            nc.push(d);
            stack.push((d + 1, nc, nt, nh));
        }
    }
    let complex = SimplicialComplex::from_closed_faces(vertices, faces);
    Ok(Z2Complex::new(complex, |l| match l {
        Label::Pair(a, b) => Label::Pair(b.clone(), a.clone()),
        _ => unreachable!("edge box vertices are pairs"),
    })?)
}

/// The neighborhood complex: faces are the vertex sets with at least one
/// common neighbor. Carries no involution.
pub fn neighborhood_complex(g: &Graph, cap: usize) -> Result<SimplicialComplex, BoxError> {
    if let Some(v) = g.isolated_vertex() {
        return Err(GraphError::IsolatedVertex(v).into());
    }
    let n = g.n();
    let mut faces: BTreeSet<Face> = BTreeSet::new();
    let mut stack: Vec<(Face, BitSet)> = vec![(Vec::new(), BitSet::full(n))];
    while let Some((face, cn)) = stack.pop() {
        if faces.len() >= cap {
            return Err(ComplexError::FaceCapExceeded(cap).into());
        }
        for v in face.last().map_or(0, |&l| l + 1)..n as u32 {
            let mut ncn = cn.clone();
            ncn.intersect_with(g.neighbors(v as usize));
            if !ncn.is_empty() {
                let mut nf = face.clone();
                nf.push(v);
                stack.push((nf, ncn));
            }
        }
        faces.insert(face);
    }
    let vertices: Vec<Label> = (0..n).map(Label::atom).collect();
    Ok(SimplicialComplex::from_closed_faces(vertices, faces))
}

/// All sets of the form `CN(X)`: the closure system of common-neighbor
/// sets. These are exactly the fixed points of `CN∘CN`.
pub(crate) fn closed_sets(g: &Graph) -> Vec<BitSet> {
    let n = g.n();
    let mut seen: BTreeSet<BitSet> = BTreeSet::new();
    let mut queue: VecDeque<BitSet> = VecDeque::new();
    let full = BitSet::full(n);
    seen.insert(full.clone());
    queue.push_back(full);
    while let Some(s) = queue.pop_front() {
        for v in 0..n {
            let mut t = s.clone();
            t.intersect_with(g.neighbors(v));
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen.into_iter().collect()
}

/// The Lovász complex: the order complex of the nonempty proper closed
/// sets under inclusion, with the involution `A -> CN(A)`.
pub fn lovasz_complex(g: &Graph, cap: usize) -> Result<Z2Complex, BoxError> {
    if let Some(v) = g.isolated_vertex() {
        return Err(GraphError::IsolatedVertex(v).into());
    }
    let n = g.n();
    let closed: Vec<BitSet> = closed_sets(g)
        .into_iter()
        .filter(|s| !s.is_empty() && s.len() < n)
        .collect();
    let labels: Vec<Label> = closed
        .iter()
        .map(|s| Label::set(s.iter().map(Label::atom).collect()))
        .collect();
    let complex = order_complex_unchecked(
        labels,
        &|i, j| closed[i] != closed[j] && closed[i].is_subset(&closed[j]),
        cap,
    )?;
    Ok(Z2Complex::new(complex, |l| {
        let items = l.as_set().expect("closed-set label");
        let set = BitSet::from_iter(
            n,
            items.iter().map(|a| match a {
                Label::Atom(v) => *v,
                _ => unreachable!(),
            }),
        );
        let cn = g.common_neighbors(&set);
        Label::set(cn.iter().map(Label::atom).collect())
    })?)
}

/// Box complexes of a set system: order complexes of disjoint ground pairs
/// where at least one (Sark variant) or both (chain variant) sides contain
/// a member set.
pub fn kneser_box_complex(
    f: &SetSystem,
    variant: BoxVariant,
    cap: usize,
) -> Result<Z2Complex, BoxError> {
    assert!(
        matches!(variant, BoxVariant::BSark | BoxVariant::BChain),
        "variant {variant:?} is not a set-system box complex"
    );
    let poset = pair_poset(f, variant, cap)?;
    let elements = &poset.elements;
    let labels: Vec<Label> = (0..elements.len() as u32).map(|i| poset_label(&poset, i)).collect();
    let complex = order_complex_unchecked(
        labels,
        &|i, j| {
            let (al, ar) = elements[i];
            let (bl, br) = elements[j];
            (al, ar) != (bl, br) && al & !bl == 0 && ar & !br == 0
        },
        cap,
    )?;
    Ok(Z2Complex::new(complex, swap_shores)?)
}


fn poset_label(poset: &PairPosetDomain, i: u32) -> Label {
    poset.pair_label(poset.elements[i as usize])
}

/// The ground-pair poset underlying the set-system box complexes.
pub(crate) fn pair_poset(
    f: &SetSystem,
    variant: BoxVariant,
    cap: usize,
) -> Result<PairPosetDomain, ComplexError> {
    let masks = f.masks();
    let member = move |l: u64, r: u64| {
        let hit = |side: u64| masks.iter().any(|&m| m & !side == 0);
        match variant {
            BoxVariant::BSark => hit(l) || hit(r),
            BoxVariant::BChain => hit(l) && hit(r),
            _ => unreachable!(),
        }
    };
    PairPosetDomain::enumerate(f.ground_size(), move |l, r| l & r == 0 && member(l, r), cap)
}

/// The map on box complexes induced by a graph homomorphism: signed copies
/// of vertices map to signed copies of their images.
pub struct FunctorMapReport {
    pub vertex_map: BTreeMap<Label, Label>,
    pub check: SimplicialMapCheck,
}

pub fn box_functor_map(f: &VertexMap, cap: usize) -> Result<FunctorMapReport, BoxError> {
    if !check_homomorphism(f) {
        return Err(GraphError::NotAHomomorphism.into());
    }
    let source = box_complex(&f.source, BoxVariant::B, cap)?;
    let target = box_complex(&f.target, BoxVariant::B, cap)?;
    let vertex_map: BTreeMap<Label, Label> = (0..f.source.n())
        .flat_map(|v| {
            [Shore::One, Shore::Two].map(|sh| {
                (
                    Label::signed_atom(v, sh),
                    Label::signed_atom(f.map[v], sh),
                )
            })
        })
        .collect();
    let check = crate::complex::verify_z2_map(&source, &target, &vertex_map)?;
    Ok(FunctorMapReport { vertex_map, check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DEFAULT_FACE_CAP as CAP;
    use crate::graph::{complete_graph, cycle_graph, greedy_coloring, Graph};
    use crate::homology::{betti_gf2, index_interval, BettiProfile};
    use crate::set_system::{k_subsets, kneser_graph_of};

    #[test]
    fn neighborhood_of_complete_graph_is_simplex_boundary() {
        for m in 2..5 {
            let n = neighborhood_complex(&complete_graph(m).unwrap(), CAP).unwrap();
            assert_eq!(n.dim(), m as i64 - 2);
            assert_eq!(n.face_count(), (1 << m) - 1); // all proper subsets seen as faces
        }
    }

    #[test]
    fn neighborhood_of_cycle_is_pentagon_on_chords() {
        let n = neighborhood_complex(&cycle_graph(5).unwrap(), CAP).unwrap();
        assert_eq!(n.f_vector(), vec![5, 5]);
        // Edges are the distance-2 chords.
        for i in 0..5u32 {
            let j = (i + 2) % 5;
            let mut face = vec![i.min(j), i.max(j)];
            face.sort_unstable();
            assert!(n.contains(&face));
        }
    }

    #[test]
    fn neighborhood_of_edge_is_two_points() {
        let n = neighborhood_complex(&complete_graph(2).unwrap(), CAP).unwrap();
        assert_eq!(n.f_vector(), vec![2]);
    }

    #[test]
    fn isolated_vertices_are_rejected_by_builders() {
        let g = Graph::new(2);
        assert!(matches!(
            neighborhood_complex(&g, CAP),
            Err(BoxError::Graph(GraphError::IsolatedVertex(0)))
        ));
        assert!(box_complex(&g, BoxVariant::B, CAP).is_err());
        assert!(lovasz_complex(&g, CAP).is_err());
    }

    #[test]
    fn lovasz_of_complete_graph_is_subdivided_sphere() {
        // Closed sets of K_m are all proper nonempty subsets.
        let l = lovasz_complex(&complete_graph(3).unwrap(), CAP).unwrap();
        assert_eq!(l.complex.f_vector(), vec![6, 6]);
        assert!(l.free());
        assert_eq!(betti_gf2(&l.complex), BettiProfile::sphere(1));
    }

    #[test]
    fn lovasz_of_edge_is_two_swapped_points() {
        let l = lovasz_complex(&complete_graph(2).unwrap(), CAP).unwrap();
        assert_eq!(l.complex.f_vector(), vec![2]);
        let zero = Label::set(vec![Label::atom(0)]);
        let one = Label::set(vec![Label::atom(1)]);
        assert_eq!(l.act_label(&zero), Some(one));
    }

    #[test]
    fn lovasz_is_free_on_test_graphs() {
        for g in [
            cycle_graph(5).unwrap(),
            cycle_graph(6).unwrap(),
            complete_graph(4).unwrap(),
            kneser_graph_of(&k_subsets(5, 2).unwrap()),
        ] {
            assert!(lovasz_complex(&g, CAP).unwrap().free());
        }
    }

    #[test]
    fn closed_sets_are_cn_cn_fixed_points() {
        // Cross-check the closure enumeration against the definition.
        for g in [cycle_graph(5).unwrap(), complete_graph(4).unwrap()] {
            let n = g.n();
            let closed = closed_sets(&g);
            for mask in 0u32..1 << n {
                let s = BitSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 1));
                let fixed = g.common_neighbors(&g.common_neighbors(&s)) == s;
                assert_eq!(fixed, closed.contains(&s), "mask {mask:b}");
            }
        }
    }

    #[test]
    fn box0_of_edge_is_a_square() {
        let b0 = box_complex(&complete_graph(2).unwrap(), BoxVariant::B0, CAP).unwrap();
        assert_eq!(b0.complex.f_vector(), vec![4, 4]);
        assert!(b0.free());
        assert_eq!(betti_gf2(&b0.complex), BettiProfile::sphere(1));
    }

    #[test]
    fn box_vertex_count_is_twice_graph_size() {
        for g in [cycle_graph(5).unwrap(), complete_graph(4).unwrap()] {
            for variant in [BoxVariant::B, BoxVariant::B0] {
                let z = box_complex(&g, variant, CAP).unwrap();
                assert_eq!(z.complex.n_vertices(), 2 * g.n());
            }
        }
    }

    #[test]
    fn box_is_subcomplex_of_box0() {
        for g in [cycle_graph(5).unwrap(), complete_graph(4).unwrap()] {
            let b = box_complex(&g, BoxVariant::B, CAP).unwrap();
            let b0 = box_complex(&g, BoxVariant::B0, CAP).unwrap();
            for face in b.complex.faces() {
                let labels = b.complex.face_labels(face);
                assert!(b0.complex.contains_labels(&labels));
            }
        }
    }

    #[test]
    fn box_complexes_of_cycle_match_known_shapes() {
        let c5 = cycle_graph(5).unwrap();
        let b = box_complex(&c5, BoxVariant::B, CAP).unwrap();
        assert_eq!(b.complex.n_vertices(), 10);
        assert_eq!(betti_gf2(&b.complex), BettiProfile(vec![0, 1, 0]));

        let b1 = box_complex(&c5, BoxVariant::B1, CAP).unwrap();
        assert_eq!(betti_gf2(&b1.complex), BettiProfile(vec![0, 1]));
        assert!(b1.free());

        let bedge = box_complex(&c5, BoxVariant::BEdge, CAP).unwrap();
        assert_eq!(bedge.complex.f_vector(), vec![10, 10]);
        assert_eq!(betti_gf2(&bedge.complex), BettiProfile(vec![0, 1]));
        assert!(bedge.free());
    }

    #[test]
    fn kneser_box_complexes_on_tiny_systems() {
        let f = SetSystem::new(1, vec![vec![0]]).unwrap();
        let sark = kneser_box_complex(&f, BoxVariant::BSark, CAP).unwrap();
        assert_eq!(sark.complex.n_vertices(), 2);
        assert!(sark.free());

        let f2 = SetSystem::new(2, vec![vec![0], vec![1]]).unwrap();
        let chain = kneser_box_complex(&f2, BoxVariant::BChain, CAP).unwrap();
        // Each side must contain a singleton member, so the only elements
        // are ({0},{1}) and ({1},{0}); they are incomparable, leaving two
        // isolated points.
        assert_eq!(chain.complex.f_vector(), vec![2]);

        // Index interval of the Sark complex matches the plain box complex
        // of the Kneser graph on small systems.
        let sark2 = kneser_box_complex(&f2, BoxVariant::BSark, CAP).unwrap();
        let b0 = box_complex(&kneser_graph_of(&f2), BoxVariant::B0, CAP).unwrap();
        assert_eq!(index_interval(&sark2), index_interval(&b0));

        let f3 = SetSystem::new(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        let sark3 = kneser_box_complex(&f3, BoxVariant::BSark, CAP).unwrap();
        let b0k3 = box_complex(&kneser_graph_of(&f3), BoxVariant::B0, CAP).unwrap();
        assert_eq!(index_interval(&sark3), index_interval(&b0k3));
        assert_eq!(betti_gf2(&sark3.complex), BettiProfile::sphere(2));
    }

    #[test]
    fn functor_map_from_coloring_verifies() {
        let c5 = cycle_graph(5).unwrap();
        let coloring = greedy_coloring(&c5, &[0, 1, 2, 3, 4]).unwrap();
        let f = VertexMap::from_coloring(&c5, &coloring, 3).unwrap();
        let report = box_functor_map(&f, CAP).unwrap();
        assert!(report.check.verdict, "{:?}", report.check.first_violation);
    }

    #[test]
    fn functor_map_rejects_non_homomorphism() {
        let c5 = cycle_graph(5).unwrap();
        let bad = VertexMap::new(c5.clone(), complete_graph(2).unwrap(), vec![0, 0, 1, 0, 1])
            .unwrap();
        assert!(matches!(
            box_functor_map(&bad, CAP),
            Err(BoxError::Graph(GraphError::NotAHomomorphism))
        ));
    }

    #[test]
    fn functor_respects_identity_and_composition() {
        let c5 = cycle_graph(5).unwrap();
        let k3 = complete_graph(3).unwrap();
        let k4 = complete_graph(4).unwrap();
        let coloring = greedy_coloring(&c5, &[0, 1, 2, 3, 4]).unwrap();
        let f = VertexMap::from_coloring(&c5, &coloring, 3).unwrap();
        let g = VertexMap::new(k3.clone(), k4.clone(), vec![0, 1, 2]).unwrap();
        let gf = VertexMap::new(c5.clone(), k4, coloring.assignment().to_vec()).unwrap();
        let m_f = box_functor_map(&f, CAP).unwrap();
        let m_g = box_functor_map(&g, CAP).unwrap();
        let m_gf = box_functor_map(&gf, CAP).unwrap();
        // Composition on vertex maps.
        for (k, v) in &m_f.vertex_map {
            assert_eq!(&m_g.vertex_map[v], &m_gf.vertex_map[k]);
        }
        // Identity maps to identity.
        let id = VertexMap::new(c5.clone(), c5.clone(), (0..5).collect()).unwrap();
        let m_id = box_functor_map(&id, CAP).unwrap();
        for (k, v) in &m_id.vertex_map {
            assert_eq!(k, v);
        }
    }
}
