//! The canonical equivariant maps among the box-complex variants, built
//! vertex by vertex from their defining formulas and machine-verified.
//!
//! Maps whose domain is a barycentric subdivision are verified on the
//! face poset with the engines from [`crate::complex::verify`] instead of
//! materializing the subdivision; the strategy per map is noted inline.

use std::collections::BTreeSet;

use super::{
    box_complex, decode_shore_pair, is_proper_pair, pair_poset, shores_of_face, swap_shores,
    BoxError, BoxVariant,
};
use crate::bitset::BitSet;
use crate::complex::verify::{
    verify_chain_map_by_covers, verify_chain_map_by_pairs, verify_chain_map_explicit, mask_bits,
    ComplexTarget, FacePosetDomain, InclusionTarget, Monotonicity, PosetDomain,
    SuspInclusionTarget,
};
use crate::complex::{
    barycentric_subdivision_z2, ComplexError, Label, SimplicialMapCheck, Z2Complex,
};
use crate::graph::{Graph, GraphError};
use crate::set_system::{kneser_graph_of, SetSystem};

/// Identifiers for the nine canonical maps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MapId {
    M1,
    M2,
    M3,
    M4,
    M5,
    M6,
    M7,
    M8,
    M9,
}

impl MapId {
    pub fn all() -> [MapId; 9] {
        use MapId::*;
        [M1, M2, M3, M4, M5, M6, M7, M8, M9]
    }

    /// M5 and M6 relate a Kneser presentation to the graph complexes.
    pub fn requires_set_system(self) -> bool {
        matches!(self, MapId::M5 | MapId::M6)
    }
}

impl std::fmt::Display for MapId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "M{}", *self as u8 + 1)
    }
}

impl std::str::FromStr for MapId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        use MapId::*;
        match s {
            "M1" => Ok(M1),
            "M2" => Ok(M2),
            "M3" => Ok(M3),
            "M4" => Ok(M4),
            "M5" => Ok(M5),
            "M6" => Ok(M6),
            "M7" => Ok(M7),
            "M8" => Ok(M8),
            "M9" => Ok(M9),
            other => Err(format!("unknown map id `{other}`")),
        }
    }
}

/// One verified direction of a canonical map.
pub struct MapDirectionReport {
    pub description: String,
    pub domain_size: usize,
    /// Vertex-level images (truncated for very large domains).
    pub vertex_map: Vec<(Label, Label)>,
    pub vertex_map_truncated: bool,
    pub check: SimplicialMapCheck,
}

pub struct CanonicalMapReport {
    pub id: MapId,
    pub directions: Vec<MapDirectionReport>,
}

impl CanonicalMapReport {
    pub fn verdict(&self) -> bool {
        self.directions.iter().all(|d| d.check.verdict)
    }

    pub fn first_violation(&self) -> Option<String> {
        self.directions
            .iter()
            .find_map(|d| d.check.first_violation.as_ref().map(|v| format!("{}: {v}", d.description)))
    }

    /// Verified aspects `(simplicial, equivariant)`. The engines check
    /// face conditions before equivariance, so an equivariance violation
    /// still certifies simpliciality; any other violation refutes it and
    /// leaves equivariance unverified.
    pub fn aspect_verdicts(&self) -> (bool, bool) {
        let mut simplicial = true;
        let mut equivariant = true;
        for d in &self.directions {
            match &d.check.first_violation {
                None => {}
                Some(crate::complex::MapViolation::NotEquivariant { .. }) => equivariant = false,
                Some(_) => {
                    simplicial = false;
                    equivariant = false;
                }
            }
        }
        (simplicial, equivariant)
    }
}

const VERTEX_MAP_LIMIT: usize = 20_000;
/// Domains verified by the quadratic comparable-pairs engine must stay
/// small; larger instances report a cap error (CLI rows show "skipped").
const PAIRS_DOMAIN_LIMIT: usize = 8_000;

/// Builds the requested canonical map for `g` (with Kneser presentation
/// `f` where required) and verifies every direction.
pub fn canonical_map(
    g: &Graph,
    f: Option<&SetSystem>,
    id: MapId,
    cap: usize,
) -> Result<CanonicalMapReport, BoxError> {
    if let Some(v) = g.isolated_vertex() {
        return Err(GraphError::IsolatedVertex(v).into());
    }
    if id.requires_set_system() {
        let f = f.ok_or(BoxError::RequiresSetSystem(id))?;
        if &kneser_graph_of(f) != g {
            return Err(BoxError::SystemMismatch);
        }
    }
    let directions = match id {
        MapId::M1 => m1(g, cap)?,
        MapId::M2 => m2(g, cap)?,
        MapId::M3 => m3(g, cap)?,
        MapId::M4 => m4(g, cap)?,
        MapId::M5 => m5(g, f.unwrap(), cap)?,
        MapId::M6 => m6(g, f.unwrap(), cap)?,
        MapId::M7 => m7(g, cap)?,
        MapId::M8 => m8(g, cap)?,
        MapId::M9 => m9(g, cap)?,
    };
    Ok(CanonicalMapReport { id, directions })
}

fn record_poset<P: PosetDomain + ?Sized>(domain: &P, images: &[Label]) -> (Vec<(Label, Label)>, bool) {
    let take = domain.len().min(VERTEX_MAP_LIMIT);
    let map = (0..take as u32)
        .map(|i| (domain.label(i), images[i as usize].clone()))
        .collect();
    (map, take < domain.len())
}

fn record_explicit(domain: &Z2Complex, images: &[Label]) -> (Vec<(Label, Label)>, bool) {
    let take = images.len().min(VERTEX_MAP_LIMIT);
    let map = (0..take)
        .map(|v| (domain.complex.label(v as u32).clone(), images[v].clone()))
        .collect();
    (map, take < images.len())
}

fn direction(
    description: &str,
    (vertex_map, truncated): (Vec<(Label, Label)>, bool),
    domain_size: usize,
    check: SimplicialMapCheck,
) -> MapDirectionReport {
    MapDirectionReport {
        description: description.to_string(),
        domain_size,
        vertex_map,
        vertex_map_truncated: truncated,
        check,
    }
}

fn proper_pair_target<'a>(g: &'a Graph) -> InclusionTarget<'a> {
    InclusionTarget {
        is_vertex: Box::new(move |l: &Label| is_proper_pair(g, l)),
        act: Box::new(swap_shores),
    }
}

/// Target whose vertices are the nonempty faces of a base complex, i.e.
/// the vertex set of its barycentric subdivision, ordered by inclusion.
fn subdivision_target<'a>(base: &'a Z2Complex) -> InclusionTarget<'a> {
    InclusionTarget {
        is_vertex: Box::new(move |l: &Label| {
            l.as_set()
                .is_some_and(|items| !items.is_empty() && base.complex.contains_labels(items))
        }),
        act: Box::new(move |l: &Label| {
            let items = l.as_set().expect("subdivision vertex");
            Label::set(
                items
                    .iter()
                    .map(|v| base.act_label(v).expect("base vertex"))
                    .collect(),
            )
        }),
    }
}

/// M1: the inclusion of the common-neighbor box complex into the full one;
/// the identity on the signed vertex set.
fn m1(g: &Graph, cap: usize) -> Result<Vec<MapDirectionReport>, BoxError> {
    let b = box_complex(g, BoxVariant::B, cap)?;
    let b0 = box_complex(g, BoxVariant::B0, cap)?;
    let images: Vec<Label> = b.complex.vertices().to_vec();
    let check = verify_chain_map_explicit(&b, &images, &ComplexTarget(&b0));
    Ok(vec![direction(
        "B -> B0, identity on signed vertices",
        record_explicit(&b, &images),
        b.complex.n_vertices(),
        check,
    )])
}

/// M2: sd(Bedge) <-> B1. Forward, a subdivision vertex (a set of directed
/// edges) collects its tails and heads into a shore pair; backward, a
/// shore pair spreads into its full directed edge set.
fn m2(g: &Graph, cap: usize) -> Result<Vec<MapDirectionReport>, BoxError> {
    let bedge = box_complex(g, BoxVariant::BEdge, cap)?;
    let b1 = box_complex(g, BoxVariant::B1, cap)?;

    let poset = FacePosetDomain::new(&bedge);
    let images: Vec<Label> = (0..poset.len() as u32)
        .map(|i| {
            let mut tails = BTreeSet::new();
            let mut heads = BTreeSet::new();
            for &d in poset.face(i) {
                let (u, v) = decode_dart(bedge.complex.label(d));
                tails.insert(u);
                heads.insert(v);
            }
            Label::shore_pair(tails, heads)
        })
        .collect();
    // Growing the edge set grows tails and heads: monotone.
    let check_fwd =
        verify_chain_map_by_covers(&poset, &images, &proper_pair_target(g), Monotonicity::Increasing);
    let fwd = direction(
        "sd(Bedge) -> B1, tails and heads",
        record_poset(&poset, &images),
        poset.len(),
        check_fwd,
    );

    let images_back: Vec<Label> = b1
        .complex
        .vertices()
        .iter()
        .map(|l| {
            let (left, right) = decode_shore_pair(l).expect("pair vertex");
            Label::set(
                left.iter()
                    .flat_map(|&u| {
                        right.iter().map(move |&v| Label::pair(Label::atom(u), Label::atom(v)))
                    })
                    .collect(),
            )
        })
        .collect();
    let check_back = verify_chain_map_explicit(&b1, &images_back, &subdivision_target(&bedge));
    let back = direction(
        "B1 -> sd(Bedge), full directed edge set",
        record_explicit(&b1, &images_back),
        b1.complex.n_vertices(),
        check_back,
    );
    Ok(vec![fwd, back])
}

fn decode_dart(l: &Label) -> (usize, usize) {
    match l {
        Label::Pair(a, b) => match (a.as_ref(), b.as_ref()) {
            (Label::Atom(u), Label::Atom(v)) => (*u, *v),
            _ => panic!("expected dart label"),
        },
        _ => panic!("expected dart label"),
    }
}

/// M3: B1 -> sd(B); every vertex of B1 is a face of B, so this is an
/// inclusion on labels.
fn m3(g: &Graph, cap: usize) -> Result<Vec<MapDirectionReport>, BoxError> {
    let b = box_complex(g, BoxVariant::B, cap)?;
    let b1 = box_complex(g, BoxVariant::B1, cap)?;
    let images: Vec<Label> = b1.complex.vertices().to_vec();
    let check = verify_chain_map_explicit(&b1, &images, &subdivision_target(&b));
    Ok(vec![direction(
        "B1 -> sd(B), inclusion",
        record_explicit(&b1, &images),
        b1.complex.n_vertices(),
        check,
    )])
}

/// M4: sd(B0) -> susp(B1); pairs with an empty shore land on the
/// suspension poles, the rest map to themselves.
fn m4(g: &Graph, cap: usize) -> Result<Vec<MapDirectionReport>, BoxError> {
    let b0 = box_complex(g, BoxVariant::B0, cap)?;
    let poset = FacePosetDomain::new(&b0);
    if poset.len() > PAIRS_DOMAIN_LIMIT {
        return Err(ComplexError::FaceCapExceeded(PAIRS_DOMAIN_LIMIT).into());
    }
    let images: Vec<Label> = (0..poset.len() as u32)
        .map(|i| {
            let (left, right) = shores_of_face(&b0, poset.face(i));
            match (left.is_empty(), right.is_empty()) {
                (false, true) => Label::Pole(crate::complex::Pole::South),
                (true, false) => Label::Pole(crate::complex::Pole::North),
                _ => Label::shore_pair(left.iter(), right.iter()),
            }
        })
        .collect();
    let target = SuspInclusionTarget {
        base: proper_pair_target(g),
    };
    // Improper pairs break monotonicity at the poles, so use the
    // comparable-pairs engine.
    let check = verify_chain_map_by_pairs(&poset, &images, &target);
    Ok(vec![direction(
        "sd(B0) -> susp(B1), improper pairs to poles",
        record_poset(&poset, &images),
        poset.len(),
        check,
    )])
}

/// M5: Bchain <-> B1 for a Kneser presentation. Forward, a ground pair
/// collects the member sets it contains; backward, a shore pair of
/// vertices takes unions of their defining sets.
fn m5(g: &Graph, f: &SetSystem, cap: usize) -> Result<Vec<MapDirectionReport>, BoxError> {
    let b1 = box_complex(g, BoxVariant::B1, cap)?;
    let masks = f.masks();

    let poset = pair_poset(f, BoxVariant::BChain, cap)?;
    let images: Vec<Label> = poset
        .elements
        .iter()
        .map(|&(bl, br)| {
            let collect = |side: u64| {
                masks
                    .iter()
                    .enumerate()
                    .filter(move |(_, &m)| m & !side == 0)
                    .map(|(v, _)| v)
            };
            Label::shore_pair(collect(bl), collect(br))
        })
        .collect();
    let check_fwd =
        verify_chain_map_by_covers(&poset, &images, &proper_pair_target(g), Monotonicity::Increasing);
    let fwd = direction(
        "Bchain -> B1, members contained in each side",
        record_poset(&poset, &images),
        poset.len(),
        check_fwd,
    );

    let images_back: Vec<Label> = b1
        .complex
        .vertices()
        .iter()
        .map(|l| union_image(&masks, l))
        .collect();
    let chain_pred = both_contain_target(f);
    let check_back = verify_chain_map_explicit(&b1, &images_back, &chain_pred);
    let back = direction(
        "B1 -> Bchain, unions of defining sets",
        record_explicit(&b1, &images_back),
        b1.complex.n_vertices(),
        check_back,
    );
    Ok(vec![fwd, back])
}

fn union_image(masks: &[u64], pair: &Label) -> Label {
    let (left, right) = decode_shore_pair(pair).expect("pair vertex");
    let union = |vs: &[usize]| vs.iter().fold(0u64, |m, &v| m | masks[v]);
    Label::shore_pair(mask_bits(union(&left)), mask_bits(union(&right)))
}

fn ground_pair(f: &SetSystem, l: &Label) -> Option<(u64, u64)> {
    let (left, right) = decode_shore_pair(l)?;
    let n = f.ground_size();
    if left.iter().chain(&right).any(|&e| e >= n) {
        return None;
    }
    let fold = |vs: &[usize]| vs.iter().fold(0u64, |m, &e| m | 1 << e);
    let (bl, br) = (fold(&left), fold(&right));
    (bl & br == 0).then_some((bl, br))
}

fn contains_member(masks: &[u64], side: u64) -> bool {
    masks.iter().any(|&m| m & !side == 0)
}

fn both_contain_target(f: &SetSystem) -> InclusionTarget<'_> {
    let masks = f.masks();
    InclusionTarget {
        is_vertex: Box::new(move |l: &Label| {
            ground_pair(f, l)
                .is_some_and(|(bl, br)| contains_member(&masks, bl) && contains_member(&masks, br))
        }),
        act: Box::new(swap_shores),
    }
}

fn one_contains_target(f: &SetSystem) -> InclusionTarget<'_> {
    let masks = f.masks();
    InclusionTarget {
        is_vertex: Box::new(move |l: &Label| {
            ground_pair(f, l)
                .is_some_and(|(bl, br)| contains_member(&masks, bl) || contains_member(&masks, br))
        }),
        act: Box::new(swap_shores),
    }
}

/// M6: sd(B0) <-> Bsark, by the same union and member-collection formulas
/// as M5 applied to all faces of B0.
fn m6(g: &Graph, f: &SetSystem, cap: usize) -> Result<Vec<MapDirectionReport>, BoxError> {
    let b0 = box_complex(g, BoxVariant::B0, cap)?;
    let masks = f.masks();

    let faces = FacePosetDomain::new(&b0);
    if faces.len() > PAIRS_DOMAIN_LIMIT {
        return Err(ComplexError::FaceCapExceeded(PAIRS_DOMAIN_LIMIT).into());
    }
    let images: Vec<Label> = (0..faces.len() as u32)
        .map(|i| {
            let (left, right) = shores_of_face(&b0, faces.face(i));
            let union = |s: &BitSet| s.iter().fold(0u64, |m, v| m | masks[v]);
            Label::shore_pair(mask_bits(union(&left)), mask_bits(union(&right)))
        })
        .collect();
    let sark_pred = one_contains_target(f);
    let check_fwd = verify_chain_map_by_pairs(&faces, &images, &sark_pred);
    let fwd = direction(
        "sd(B0) -> Bsark, unions of defining sets",
        record_poset(&faces, &images),
        faces.len(),
        check_fwd,
    );

    let poset = pair_poset(f, BoxVariant::BSark, cap)?;
    let images_back: Vec<Label> = poset
        .elements
        .iter()
        .map(|&(bl, br)| {
            let collect = |side: u64| {
                masks
                    .iter()
                    .enumerate()
                    .filter(move |(_, &m)| m & !side == 0)
                    .map(|(v, _)| v)
            };
            Label::shore_pair(collect(bl), collect(br))
        })
        .collect();
    let check_back =
        verify_chain_map_by_covers(&poset, &images_back, &subdivision_target(&b0), Monotonicity::Increasing);
    let back = direction(
        "Bsark -> sd(B0), members contained in each side",
        record_poset(&poset, &images_back),
        poset.len(),
        check_back,
    );
    Ok(vec![fwd, back])
}

/// M7: sd(sd(B)) -> B1. A vertex of the double subdivision is a chain of
/// faces of B; each shore contributes the smallest nonempty set in the
/// interleaved chain of shores and common-neighbor sets.
fn m7(g: &Graph, cap: usize) -> Result<Vec<MapDirectionReport>, BoxError> {
    let b = box_complex(g, BoxVariant::B, cap)?;
    let sd_b = barycentric_subdivision_z2(&b, cap)?;
    let poset = FacePosetDomain::new(&sd_b);
    if poset.len() > PAIRS_DOMAIN_LIMIT {
        return Err(ComplexError::FaceCapExceeded(PAIRS_DOMAIN_LIMIT).into());
    }
    let images: Vec<Label> = (0..poset.len() as u32)
        .map(|i| {
            // The chain of shore pairs, ascending.
            let mut pairs: Vec<(BitSet, BitSet)> = poset
                .face(i)
                .iter()
                .map(|&id| {
                    let (l, r) = decode_shore_pair(sd_b.complex.label(id)).expect("pair");
                    let n = g.n();
                    (
                        BitSet::from_iter(n, l.iter().copied()),
                        BitSet::from_iter(n, r.iter().copied()),
                    )
                })
                .collect();
            pairs.sort_by_key(|(l, r)| l.len() + r.len());
            let mu = |shores: Vec<&BitSet>, others: Vec<&BitSet>| {
                shores
                    .into_iter()
                    .cloned()
                    .chain(others.into_iter().rev().map(|s| g.common_neighbors(s)))
                    .find(|s| !s.is_empty())
                    .expect("common-neighbor condition guarantees a nonempty set")
            };
            let left = mu(
                pairs.iter().map(|(l, _)| l).collect(),
                pairs.iter().map(|(_, r)| r).collect(),
            );
            let right = mu(
                pairs.iter().map(|(_, r)| r).collect(),
                pairs.iter().map(|(l, _)| l).collect(),
            );
            Label::shore_pair(left.iter(), right.iter())
        })
        .collect();
    // Extending the chain can only shrink both images: antitone, but the
    // comparable-pairs engine needs no direction at all.
    let check = verify_chain_map_by_pairs(&poset, &images, &proper_pair_target(g));
    Ok(vec![direction(
        "sd(sd(B)) -> B1, smallest nonempty shore set",
        record_poset(&poset, &images),
        poset.len(),
        check,
    )])
}

/// M8: sd(L) -> B1. A chain of closed sets maps to its smallest set paired
/// with the common neighbors of its largest.
fn m8(g: &Graph, cap: usize) -> Result<Vec<MapDirectionReport>, BoxError> {
    let l = super::lovasz_complex(g, cap)?;
    let poset = FacePosetDomain::new(&l);
    let images: Vec<Label> = (0..poset.len() as u32)
        .map(|i| {
            let mut sets: Vec<BitSet> = poset
                .face(i)
                .iter()
                .map(|&id| closed_set_of(g, l.complex.label(id)))
                .collect();
            sets.sort_by_key(BitSet::len);
            let smallest = sets.first().unwrap();
            let cn_largest = g.common_neighbors(sets.last().unwrap());
            Label::shore_pair(smallest.iter(), cn_largest.iter())
        })
        .collect();
    let check =
        verify_chain_map_by_covers(&poset, &images, &proper_pair_target(g), Monotonicity::Decreasing);
    Ok(vec![direction(
        "sd(L) -> B1, smallest set and common neighbors of largest",
        record_poset(&poset, &images),
        poset.len(),
        check,
    )])
}

fn closed_set_of(g: &Graph, l: &Label) -> BitSet {
    let items = l.as_set().expect("closed-set label");
    BitSet::from_iter(
        g.n(),
        items.iter().map(|a| match a {
            Label::Atom(v) => *v,
            _ => panic!("expected atom"),
        }),
    )
}

/// M9: sd(B1) -> sd(L). A chain of shore pairs maps to the chain of
/// closures of its first shores followed by common neighbors of its
/// second shores (which is a chain thanks to CN being antitone with
/// CN^3 = CN).
fn m9(g: &Graph, cap: usize) -> Result<Vec<MapDirectionReport>, BoxError> {
    let b1 = box_complex(g, BoxVariant::B1, cap)?;
    let l = super::lovasz_complex(g, cap)?;
    let poset = FacePosetDomain::new(&b1);
    let images: Vec<Label> = (0..poset.len() as u32)
        .map(|i| {
            let mut closed: Vec<Label> = Vec::new();
            for &id in poset.face(i) {
                let (left, right) = decode_shore_pair(b1.complex.label(id)).expect("pair");
                let n = g.n();
                let left = BitSet::from_iter(n, left.iter().copied());
                let right = BitSet::from_iter(n, right.iter().copied());
                let closure = g.common_neighbors(&g.common_neighbors(&left));
                let cn_right = g.common_neighbors(&right);
                closed.push(Label::set(closure.iter().map(Label::atom).collect()));
                closed.push(Label::set(cn_right.iter().map(Label::atom).collect()));
            }
            Label::set(closed)
        })
        .collect();
    let target = subdivision_target(&l);
    let check = verify_chain_map_by_covers(&poset, &images, &target, Monotonicity::Increasing);
    Ok(vec![direction(
        "sd(B1) -> sd(L), closures and common neighbors",
        record_poset(&poset, &images),
        poset.len(),
        check,
    )])
}
