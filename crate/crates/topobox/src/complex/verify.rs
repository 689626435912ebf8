//! Map verification over subdivisions that are too large to materialize.
//!
//! Several canonical maps live on a barycentric subdivision whose chains
//! number in the millions while the underlying poset of subdivision
//! vertices stays small. The engines here verify "every chain maps to a
//! face" directly on the poset:
//!
//! * [`verify_chain_map_by_pairs`] checks all comparable element pairs.
//!   For a flag target (order complexes and their suspensions: a set is a
//!   face iff all its 2-subsets are), pairwise facehood of chain images is
//!   equivalent to facehood, so the check is exact.
//! * [`verify_chain_map_by_covers`] checks single-step covers only and
//!   requires the map to be monotone (or antitone) into an
//!   inclusion-ordered target. When the domain poset is saturated (every
//!   comparable pair is connected by single-element steps, true for face
//!   posets and for upward-closed families of disjoint set pairs), the
//!   subset relation composes along cover paths, which again makes the
//!   check exact.
//!
//! Tests cross-check both engines against the exhaustive
//! [`verify_z2_map`](super::verify_z2_map) on instances small enough to
//! materialize.

use std::collections::HashMap;

use super::{Face, Label, MapViolation, SimplicialMapCheck, Z2Complex};
use crate::complex::ComplexError;

/// A finite poset with an involution, presented with enough structure to
/// verify maps defined on its order complex.
pub trait PosetDomain {
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn label(&self, i: u32) -> Label;
    /// The involution on elements.
    fn act(&self, i: u32) -> u32;
    /// Strict order test.
    fn less(&self, i: u32, j: u32) -> bool;
    /// All single-step cover pairs `(lower, upper)` in deterministic order.
    fn cover_pairs(&self) -> Vec<(u32, u32)>;
}

/// Facehood oracle for the target complex of a chain map.
pub trait TargetCheck {
    fn is_vertex(&self, l: &Label) -> bool;
    fn act(&self, l: &Label) -> Label;
    /// Exact facehood for a small set of distinct vertex labels.
    fn is_face(&self, labels: &[&Label]) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
}

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

/// The poset of nonempty faces of a complex under strict inclusion, i.e.
/// the vertex set of its barycentric subdivision.
pub struct FacePosetDomain<'a> {
    z: &'a Z2Complex,
    faces: Vec<Face>,
    index: HashMap<Face, u32>,
}

impl<'a> FacePosetDomain<'a> {
    pub fn new(z: &'a Z2Complex) -> Self {
        let faces: Vec<Face> = z.complex.nonempty_faces().cloned().collect();
        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i as u32))
            .collect();
        FacePosetDomain { z, faces, index }
    }

    pub fn face(&self, i: u32) -> &Face {
        &self.faces[i as usize]
    }
}

impl PosetDomain for FacePosetDomain<'_> {
    fn len(&self) -> usize {
        self.faces.len()
    }

    fn label(&self, i: u32) -> Label {
        self.z.complex.face_as_label(&self.faces[i as usize])
    }

    fn act(&self, i: u32) -> u32 {
        self.index[&self.z.act_face(&self.faces[i as usize])]
    }

    fn less(&self, i: u32, j: u32) -> bool {
        let (a, b) = (&self.faces[i as usize], &self.faces[j as usize]);
        a.len() < b.len() && super::sorted_subset(a, b)
    }

    fn cover_pairs(&self) -> Vec<(u32, u32)> {
        // Dropping one vertex from a face always yields a face, so every
        // cover pair arises exactly once this way.
        let mut covers = Vec::new();
        for (j, face) in self.faces.iter().enumerate() {
            if face.len() < 2 {
                continue;
            }
            for drop in 0..face.len() {
                let mut smaller = face.clone();
                smaller.remove(drop);
                let i = self.index[&smaller];
                covers.push((i, j as u32));
            }
        }
        covers.sort_unstable();
        covers
    }
}

/// A family of disjoint subset pairs `(left, right)` of a ground set,
/// ordered componentwise, with the shore swap as involution. Ground
/// elements are numbered `0..ground` and labeled as signed atoms.
pub struct PairPosetDomain {
    pub ground: usize,
    pub elements: Vec<(u64, u64)>,
    index: HashMap<(u64, u64), u32>,
}

impl PairPosetDomain {
    /// Enumerates all member pairs of the predicate. The predicate must be
    /// swap-symmetric and, for the cover engine to be exact, upward closed
    /// among disjoint pairs.
    pub fn enumerate(
        ground: usize,
        member: impl Fn(u64, u64) -> bool,
        cap: usize,
    ) -> Result<Self, ComplexError> {
        const MAX_GROUND: usize = 16;
        if ground > MAX_GROUND || pow3(ground) > (1usize << 24) {
            return Err(ComplexError::FaceCapExceeded(cap));
        }
        let mut elements = Vec::new();
        let mut stack: Vec<(usize, u64, u64)> = vec![(0, 0, 0)];
        // Depth-first in element order, branch order: skip, left, right.
        while let Some((e, left, right)) = stack.pop() {
            if e == ground {
                if (left, right) != (0, 0) && member(left, right) {
                    if elements.len() >= cap {
                        return Err(ComplexError::FaceCapExceeded(cap));
                    }
                    elements.push((left, right));
                }
                continue;
            }
            let bit = 1u64 << e;
            stack.push((e + 1, left, right | bit));
            stack.push((e + 1, left | bit, right));
            stack.push((e + 1, left, right));
        }
        elements.sort_unstable();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as u32))
            .collect();
        Ok(PairPosetDomain {
            ground,
            elements,
            index,
        })
    }

    pub fn id_of(&self, pair: (u64, u64)) -> Option<u32> {
        self.index.get(&pair).copied()
    }

    pub fn pair_label(&self, (left, right): (u64, u64)) -> Label {
        Label::shore_pair(mask_bits(left), mask_bits(right))
    }
}

fn pow3(n: usize) -> usize {
    3usize.saturating_pow(n as u32)
}

pub fn mask_bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

impl PosetDomain for PairPosetDomain {
    fn len(&self) -> usize {
        self.elements.len()
    }

    fn label(&self, i: u32) -> Label {
        self.pair_label(self.elements[i as usize])
    }

    fn act(&self, i: u32) -> u32 {
        let (l, r) = self.elements[i as usize];
        self.index[&(r, l)]
    }

    fn less(&self, i: u32, j: u32) -> bool {
        let (al, ar) = self.elements[i as usize];
        let (bl, br) = self.elements[j as usize];
        (al, ar) != (bl, br) && al & !bl == 0 && ar & !br == 0
    }

    fn cover_pairs(&self) -> Vec<(u32, u32)> {
        let mut covers = Vec::new();
        for (i, &(l, r)) in self.elements.iter().enumerate() {
            for e in 0..self.ground {
                let bit = 1u64 << e;
                if (l | r) & bit == 0 {
                    if let Some(&j) = self.index.get(&(l | bit, r)) {
                        covers.push((i as u32, j));
                    }
                    if let Some(&j) = self.index.get(&(l, r | bit)) {
                        covers.push((i as u32, j));
                    }
                }
            }
        }
        covers
    }
}

// ---------------------------------------------------------------------------
// Targets
// ---------------------------------------------------------------------------

/// A materialized complex as target.
pub struct ComplexTarget<'a>(pub &'a Z2Complex);

impl TargetCheck for ComplexTarget<'_> {
    fn is_vertex(&self, l: &Label) -> bool {
        self.0.complex.vertex_id(l).is_some()
    }

    fn act(&self, l: &Label) -> Label {
        self.0.act_label(l).expect("target vertex")
    }

    fn is_face(&self, labels: &[&Label]) -> bool {
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            match self.0.complex.vertex_id(l) {
                Some(id) => ids.push(id),
                None => return false,
            }
        }
        ids.sort_unstable();
        ids.dedup();
        self.0.complex.contains(&ids)
    }
}

/// The order complex of `Set` labels under inclusion, given by a vertex
/// predicate. Faces are pairwise comparable sets of vertices, so this is a
/// flag complex by construction.
pub struct InclusionTarget<'a> {
    pub is_vertex: Box<dyn Fn(&Label) -> bool + 'a>,
    pub act: Box<dyn Fn(&Label) -> Label + 'a>,
}

impl TargetCheck for InclusionTarget<'_> {
    fn is_vertex(&self, l: &Label) -> bool {
        (self.is_vertex)(l)
    }

    fn act(&self, l: &Label) -> Label {
        (self.act)(l)
    }

    fn is_face(&self, labels: &[&Label]) -> bool {
        labels.iter().all(|l| (self.is_vertex)(l))
            && labels
                .iter()
                .enumerate()
                .all(|(i, a)| labels[i + 1..].iter().all(|b| a.set_comparable(b)))
    }
}

/// An inclusion target plus the two suspension poles: a face may contain at
/// most one pole. Still a flag complex (the two poles span no edge).
pub struct SuspInclusionTarget<'a> {
    pub base: InclusionTarget<'a>,
}

impl TargetCheck for SuspInclusionTarget<'_> {
    fn is_vertex(&self, l: &Label) -> bool {
        l.is_pole() || self.base.is_vertex(l)
    }

    fn act(&self, l: &Label) -> Label {
        match l {
            Label::Pole(p) => Label::Pole(p.flip()),
            other => self.base.act(other),
        }
    }

    fn is_face(&self, labels: &[&Label]) -> bool {
        let poles = labels.iter().filter(|l| l.is_pole()).count();
        let rest: Vec<&Label> = labels.iter().copied().filter(|l| !l.is_pole()).collect();
        poles <= 1 && labels.iter().all(|l| self.is_vertex(l)) && self.base.is_face(&rest)
    }
}

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

/// Verifies a vertex map out of a materialized complex against an
/// arbitrary target oracle: every face's image must be a target face,
/// and the map must intertwine the involutions. Face conditions are
/// checked before equivariance, so an equivariance violation certifies
/// that the map is at least simplicial.
pub fn verify_chain_map_explicit<T>(
    domain: &Z2Complex,
    images: &[Label],
    target: &T,
) -> SimplicialMapCheck
where
    T: TargetCheck + ?Sized,
{
    assert_eq!(images.len(), domain.complex.n_vertices());
    for (v, img) in images.iter().enumerate() {
        if !target.is_vertex(img) {
            return SimplicialMapCheck::fail(MapViolation::ImageNotVertex {
                vertex: domain.complex.label(v as u32).clone(),
                image: img.clone(),
            });
        }
    }
    for face in domain.complex.faces() {
        let mut img: Vec<&Label> = face.iter().map(|&v| &images[v as usize]).collect();
        img.sort();
        img.dedup();
        if !target.is_face(&img) {
            return SimplicialMapCheck::fail(MapViolation::FaceImageNotFace {
                face: domain.complex.face_labels(face),
                image: img.into_iter().cloned().collect(),
            });
        }
    }
    for v in 0..domain.complex.n_vertices() as u32 {
        let lhs = &images[domain.act_id(v) as usize];
        let rhs = target.act(&images[v as usize]);
        if *lhs != rhs {
            return SimplicialMapCheck::fail(MapViolation::NotEquivariant {
                vertex: domain.complex.label(v).clone(),
                action_then_map: lhs.clone(),
                map_then_action: rhs,
            });
        }
    }
    SimplicialMapCheck::pass()
}

/// Verifies a chain map by checking every element image and every
/// comparable element pair. Exact for flag targets. Face conditions run
/// before equivariance.
pub fn verify_chain_map_by_pairs<P, T>(domain: &P, images: &[Label], target: &T) -> SimplicialMapCheck
where
    P: PosetDomain + ?Sized,
    T: TargetCheck + ?Sized,
{
    assert_eq!(images.len(), domain.len());
    if let Some(v) = check_vertices(domain, images, target) {
        return v;
    }
    let n = domain.len() as u32;
    for i in 0..n {
        for j in 0..n {
            if i != j && domain.less(i, j) {
                let (a, b) = (&images[i as usize], &images[j as usize]);
                if a != b && !target.is_face(&[a, b]) {
                    return SimplicialMapCheck::fail(MapViolation::FaceImageNotFace {
                        face: vec![domain.label(i), domain.label(j)],
                        image: vec![a.clone(), b.clone()],
                    });
                }
            }
        }
    }
    check_equivariance(domain, images, target)
}

/// Verifies a chain map by checking direction-consistent inclusion on
/// cover pairs. Exact for saturated domains and inclusion-ordered flag
/// targets. Face conditions run before equivariance.
pub fn verify_chain_map_by_covers<P, T>(
    domain: &P,
    images: &[Label],
    target: &T,
    dir: Monotonicity,
) -> SimplicialMapCheck
where
    P: PosetDomain + ?Sized,
    T: TargetCheck + ?Sized,
{
    assert_eq!(images.len(), domain.len());
    if let Some(v) = check_vertices(domain, images, target) {
        return v;
    }
    for (i, j) in domain.cover_pairs() {
        let (a, b) = (&images[i as usize], &images[j as usize]);
        let ok = match dir {
            Monotonicity::Increasing => a == b || a.set_subset(b),
            Monotonicity::Decreasing => a == b || b.set_subset(a),
        };
        if !ok {
            return SimplicialMapCheck::fail(MapViolation::FaceImageNotFace {
                face: vec![domain.label(i), domain.label(j)],
                image: vec![a.clone(), b.clone()],
            });
        }
    }
    check_equivariance(domain, images, target)
}

fn check_vertices<P, T>(domain: &P, images: &[Label], target: &T) -> Option<SimplicialMapCheck>
where
    P: PosetDomain + ?Sized,
    T: TargetCheck + ?Sized,
{
    for (i, img) in images.iter().enumerate() {
        if !target.is_vertex(img) {
            return Some(SimplicialMapCheck::fail(MapViolation::ImageNotVertex {
                vertex: domain.label(i as u32),
                image: img.clone(),
            }));
        }
    }
    None
}

fn check_equivariance<P, T>(domain: &P, images: &[Label], target: &T) -> SimplicialMapCheck
where
    P: PosetDomain + ?Sized,
    T: TargetCheck + ?Sized,
{
    for i in 0..domain.len() as u32 {
        let lhs = &images[domain.act(i) as usize];
        let rhs = target.act(&images[i as usize]);
        if *lhs != rhs {
            return SimplicialMapCheck::fail(MapViolation::NotEquivariant {
                vertex: domain.label(i),
                action_then_map: lhs.clone(),
                map_then_action: rhs,
            });
        }
    }
    SimplicialMapCheck::pass()
}
