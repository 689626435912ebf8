//! Finite abstract simplicial complexes with structured vertex labels,
//! simplicial involutions, and the standard constructions: order complex,
//! barycentric subdivision, suspension, and twofold deleted join.
//!
//! Faces are stored explicitly (the homology pipeline needs full chain
//! complexes), so every enumerative construction takes a face cap that
//! turns combinatorial blowups into clean errors.

mod label;
pub mod verify;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use label::{sorted_subset, Label, Pole, Shore};

/// Default bound on the number of faces a construction may produce.
pub const DEFAULT_FACE_CAP: usize = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face references undeclared vertex {0}")]
    UndeclaredVertex(String),
    #[error("vertex {0} occurs in no face")]
    VertexInNoFace(String),
    #[error("duplicate vertex label {0}")]
    DuplicateVertex(String),
    #[error("face cap of {0} faces exceeded")]
    FaceCapExceeded(usize),
    #[error("relation is not a strict partial order: {0}")]
    NotAStrictOrder(String),
    #[error("map is not total: no image for vertex {0}")]
    PartialMap(String),
    #[error("action is not an involution at vertex {0}")]
    NotAnInvolution(String),
    #[error("action does not map faces to faces (face {0})")]
    ActionNotSimplicial(String),
    #[error("complex already contains a suspension pole vertex")]
    PoleClash,
    #[error("invalid serialized complex: {0}")]
    BadSerialization(String),
}

/// A face: a sorted vector of vertex indices. The empty face is `[]`.
pub type Face = Vec<u32>;

/// A finite abstract simplicial complex.
///
/// Invariants: the empty face is present, faces are downward closed, and
/// every vertex occurs in at least one face. Vertices are sorted by label,
/// so equal inputs rebuild byte-identical complexes.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<Label>,
    index: BTreeMap<Label, u32>,
    faces: BTreeSet<Face>,
}

impl SimplicialComplex {
    /// Builds the downward closure of `faces` over the declared vertices.
    pub fn from_faces(
        vertices: Vec<Label>,
        faces: Vec<Vec<Label>>,
    ) -> Result<Self, ComplexError> {
        let mut sorted = vertices;
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::DuplicateVertex(w[0].to_string()));
            }
        }
        let index: BTreeMap<Label, u32> = sorted
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i as u32))
            .collect();
        let mut id_faces = Vec::with_capacity(faces.len());
        for face in &faces {
            let mut ids = Vec::with_capacity(face.len());
            for l in face {
                let id = index
                    .get(l)
                    .ok_or_else(|| ComplexError::UndeclaredVertex(l.to_string()))?;
                ids.push(*id);
            }
            ids.sort_unstable();
            ids.dedup();
            id_faces.push(ids);
        }
        let closed = downward_closure(id_faces, usize::MAX)?;
        let complex = SimplicialComplex {
            vertices: sorted,
            index,
            faces: closed,
        };
        if let Some(v) = complex.vertex_in_no_face() {
            return Err(ComplexError::VertexInNoFace(
                complex.vertices[v as usize].to_string(),
            ));
        }
        Ok(complex)
    }

    /// Internal constructor for families that are already downward closed.
    pub(crate) fn from_closed_faces(vertices: Vec<Label>, faces: BTreeSet<Face>) -> Self {
        debug_assert!(faces.contains(&Vec::new()));
        let index = vertices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i as u32))
            .collect();
        let c = SimplicialComplex {
            vertices,
            index,
            faces,
        };
        debug_assert!(c.vertex_in_no_face().is_none());
        c
    }

    fn vertex_in_no_face(&self) -> Option<u32> {
        let mut used = vec![false; self.vertices.len()];
        for f in &self.faces {
            for &v in f {
                used[v as usize] = true;
            }
        }
        used.iter().position(|&b| !b).map(|v| v as u32)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Label] {
        &self.vertices
    }

    pub fn label(&self, id: u32) -> &Label {
        &self.vertices[id as usize]
    }

    pub fn vertex_id(&self, l: &Label) -> Option<u32> {
        self.index.get(l).copied()
    }

    /// Number of faces including the empty face.
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Largest face size minus one; `-1` for the empty complex `{∅}`.
    pub fn dim(&self) -> i64 {
        self.faces.iter().map(|f| f.len() as i64 - 1).max().unwrap_or(-1)
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        debug_assert!(face.windows(2).all(|w| w[0] < w[1]));
        self.faces.contains(face)
    }

    pub fn contains_labels(&self, labels: &[Label]) -> bool {
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            match self.vertex_id(l) {
                Some(id) => ids.push(id),
                None => return false,
            }
        }
        ids.sort_unstable();
        ids.dedup();
        self.contains(&ids)
    }

    /// Faces in canonical (lexicographic) order, empty face first.
    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    pub fn nonempty_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.is_empty())
    }

    /// Faces with no proper superface, in canonical order.
    pub fn facets(&self) -> Vec<&Face> {
        self.faces
            .iter()
            .filter(|f| {
                !(0..self.vertices.len() as u32).any(|v| {
                    !f.contains(&v) && {
                        let mut bigger = (*f).clone();
                        bigger.push(v);
                        bigger.sort_unstable();
                        self.faces.contains(&bigger)
                    }
                })
            })
            .collect()
    }

    /// Face counts by dimension, starting at dimension 0.
    pub fn f_vector(&self) -> Vec<usize> {
        let dim = self.dim();
        if dim < 0 {
            return Vec::new();
        }
        let mut f = vec![0; dim as usize + 1];
        for face in &self.faces {
            if !face.is_empty() {
                f[face.len() - 1] += 1;
            }
        }
        f
    }

    pub fn face_labels(&self, face: &[u32]) -> Vec<Label> {
        face.iter().map(|&v| self.label(v).clone()).collect()
    }

    /// The face as a canonical `Set` label (a subdivision vertex name).
    pub fn face_as_label(&self, face: &[u32]) -> Label {
        Label::set(self.face_labels(face))
    }

    /// Exhaustive downward-closure check, for tests.
    pub fn is_downward_closed(&self) -> bool {
        self.faces.iter().all(|f| {
            (0..f.len()).all(|i| {
                let mut sub = f.clone();
                sub.remove(i);
                self.faces.contains(&sub)
            })
        })
    }
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SimplicialComplex({} vertices, {} faces, dim {})",
            self.n_vertices(),
            self.face_count(),
            self.dim()
        )
    }
}

fn downward_closure(
    generators: Vec<Face>,
    cap: usize,
) -> Result<BTreeSet<Face>, ComplexError> {
    let mut faces: BTreeSet<Face> = BTreeSet::new();
    faces.insert(Vec::new());
    let mut stack = generators;
    while let Some(face) = stack.pop() {
        if faces.contains(&face) {
            continue;
        }
        if faces.len() >= cap {
            return Err(ComplexError::FaceCapExceeded(cap));
        }
        for i in 0..face.len() {
            let mut sub = face.clone();
            sub.remove(i);
            if !faces.contains(&sub) {
                stack.push(sub);
            }
        }
        faces.insert(face);
    }
    Ok(faces)
}

// ---------------------------------------------------------------------------
// Z2 complexes
// ---------------------------------------------------------------------------

/// A simplicial complex with a simplicial involution on its vertices.
#[derive(Clone, Debug)]
pub struct Z2Complex {
    pub complex: SimplicialComplex,
    action: Vec<u32>,
    free: bool,
}

impl Z2Complex {
    /// Validates that `action` is an involution mapping faces to faces and
    /// records whether it is free (fixes no nonempty face setwise).
    pub fn new(
        complex: SimplicialComplex,
        action: impl Fn(&Label) -> Label,
    ) -> Result<Self, ComplexError> {
        let mut table = Vec::with_capacity(complex.n_vertices());
        for l in complex.vertices() {
            let image = action(l);
            let id = complex
                .vertex_id(&image)
                .ok_or_else(|| ComplexError::UndeclaredVertex(image.to_string()))?;
            table.push(id);
        }
        for (v, &w) in table.iter().enumerate() {
            if table[w as usize] != v as u32 {
                return Err(ComplexError::NotAnInvolution(
                    complex.label(v as u32).to_string(),
                ));
            }
        }
        let mut free = true;
        for face in complex.faces() {
            let mut image: Face = face.iter().map(|&v| table[v as usize]).collect();
            image.sort_unstable();
            if !complex.contains(&image) {
                return Err(ComplexError::ActionNotSimplicial(format!(
                    "{:?}",
                    complex.face_labels(face).iter().map(|l| l.to_string()).collect::<Vec<_>>()
                )));
            }
            if !face.is_empty() && image == *face {
                free = false;
            }
        }
        Ok(Z2Complex {
            complex,
            action: table,
            free,
        })
    }

    pub fn free(&self) -> bool {
        self.free
    }

    pub fn act_id(&self, v: u32) -> u32 {
        self.action[v as usize]
    }

    pub fn act_label(&self, l: &Label) -> Option<Label> {
        self.complex
            .vertex_id(l)
            .map(|v| self.complex.label(self.act_id(v)).clone())
    }

    pub fn act_face(&self, face: &[u32]) -> Face {
        let mut image: Face = face.iter().map(|&v| self.act_id(v)).collect();
        image.sort_unstable();
        image
    }
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

/// Order complex of a strict partial order: faces are the chains.
///
/// Validates irreflexivity and transitivity of `less` on `elements`.
/// Following the usual convention for set families, an element equal to the
/// empty `Set` label is removed before building.
pub fn order_complex(
    elements: Vec<Label>,
    less: &dyn Fn(&Label, &Label) -> bool,
    cap: usize,
) -> Result<SimplicialComplex, ComplexError> {
    let elements: Vec<Label> = elements
        .into_iter()
        .filter(|l| l.as_set().is_none_or(|s| !s.is_empty()))
        .collect();
    for (i, a) in elements.iter().enumerate() {
        for b in &elements[i + 1..] {
            if a == b {
                return Err(ComplexError::DuplicateVertex(a.to_string()));
            }
        }
    }
    let m = elements.len();
    let lt: Vec<Vec<bool>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| less(a, b)).collect())
        .collect();
    for i in 0..m {
        if lt[i][i] {
            return Err(ComplexError::NotAStrictOrder(format!(
                "{} < {}",
                elements[i], elements[i]
            )));
        }
        for j in 0..m {
            if lt[i][j] {
                for k in 0..m {
                    if lt[j][k] && !lt[i][k] {
                        return Err(ComplexError::NotAStrictOrder(format!(
                            "{} < {} < {} but not {} < {}",
                            elements[i], elements[j], elements[k], elements[i], elements[k]
                        )));
                    }
                }
            }
        }
    }
    order_complex_unchecked(elements, &|i, j| lt[i][j], cap)
}

/// Chain enumeration over a relation already known to be a strict order.
/// `less` takes indices into `elements`.
pub(crate) fn order_complex_unchecked(
    elements: Vec<Label>,
    less: &dyn Fn(usize, usize) -> bool,
    cap: usize,
) -> Result<SimplicialComplex, ComplexError> {
    let m = elements.len();
    // Map construction indices to sorted-vertex ids.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| elements[a].cmp(&elements[b]));
    let mut id_of = vec![0u32; m];
    for (id, &e) in order.iter().enumerate() {
        id_of[e] = id as u32;
    }
    let mut sorted_vertices: Vec<Label> = order.iter().map(|&e| elements[e].clone()).collect();

    let mut faces: BTreeSet<Face> = BTreeSet::new();
    faces.insert(Vec::new());
    // Chains are generated by ascending the partial order from each element.
    let mut stack: Vec<(usize, Vec<usize>)> = (0..m).map(|e| (e, vec![e])).collect();
    while let Some((top, chain)) = stack.pop() {
        if faces.len() >= cap {
            return Err(ComplexError::FaceCapExceeded(cap));
        }
        let mut ids: Face = chain.iter().map(|&e| id_of[e]).collect();
        ids.sort_unstable();
        faces.insert(ids);
        for next in 0..m {
            if less(top, next) {
                let mut longer = chain.clone();
                longer.push(next);
                stack.push((next, longer));
            }
        }
    }
    sorted_vertices.dedup();
    Ok(SimplicialComplex::from_closed_faces(sorted_vertices, faces))
}

/// First barycentric subdivision: the order complex of the nonempty faces
/// under strict inclusion. Vertices are `Set` labels of the original faces.
pub fn barycentric_subdivision(
    k: &SimplicialComplex,
    cap: usize,
) -> Result<SimplicialComplex, ComplexError> {
    let faces: Vec<Face> = k.nonempty_faces().cloned().collect();
    let labels: Vec<Label> = faces.iter().map(|f| k.face_as_label(f)).collect();
    order_complex_unchecked(
        labels,
        &|i, j| faces[i].len() < faces[j].len() && sorted_subset(&faces[i], &faces[j]),
        cap,
    )
}

/// Subdivision of a Z2 complex, with the involution acting facewise.
pub fn barycentric_subdivision_z2(
    z: &Z2Complex,
    cap: usize,
) -> Result<Z2Complex, ComplexError> {
    let sd = barycentric_subdivision(&z.complex, cap)?;
    Z2Complex::new(sd, |l| {
        let items = l.as_set().expect("subdivision vertices are set labels");
        Label::set(
            items
                .iter()
                .map(|v| z.act_label(v).expect("face vertex"))
                .collect(),
        )
    })
}

/// Suspension: two new pole vertices, each coning over the whole complex.
pub fn suspension(k: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
    if k.vertices().iter().any(Label::is_pole) {
        return Err(ComplexError::PoleClash);
    }
    let mut vertices = k.vertices().to_vec();
    vertices.push(Label::Pole(Pole::South));
    vertices.push(Label::Pole(Pole::North));
    vertices.sort();
    let index: BTreeMap<&Label, u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i as u32))
        .collect();
    let south = index[&Label::Pole(Pole::South)];
    let north = index[&Label::Pole(Pole::North)];
    let old_id: Vec<u32> = k.vertices().iter().map(|l| index[l]).collect();

    let mut faces: BTreeSet<Face> = BTreeSet::new();
    for face in k.faces() {
        let mut base: Face = face.iter().map(|&v| old_id[v as usize]).collect();
        base.sort_unstable();
        for pole in [None, Some(south), Some(north)] {
            let mut f = base.clone();
            if let Some(p) = pole {
                f.push(p);
                f.sort_unstable();
            }
            faces.insert(f);
        }
    }
    Ok(SimplicialComplex::from_closed_faces(vertices, faces))
}

/// Suspension of a Z2 complex: the involution swaps the poles on top of the
/// base action. (This pole-swap convention makes the suspension of a free
/// complex free.)
pub fn suspension_z2(z: &Z2Complex) -> Result<Z2Complex, ComplexError> {
    let susp = suspension(&z.complex)?;
    Z2Complex::new(susp, |l| match l {
        Label::Pole(p) => Label::Pole(p.flip()),
        other => z.act_label(other).expect("base vertex"),
    })
}

/// Twofold deleted join: faces are disjoint pairs of faces of `k`, placed
/// on two signed copies of the vertex set; the involution swaps the copies.
pub fn deleted_join(k: &SimplicialComplex, cap: usize) -> Result<Z2Complex, ComplexError> {
    let mut vertices = Vec::with_capacity(2 * k.n_vertices());
    for shore in [Shore::One, Shore::Two] {
        for l in k.vertices() {
            vertices.push(Label::Signed(Box::new(l.clone()), shore));
        }
    }
    vertices.sort();
    let index: BTreeMap<&Label, u32> = vertices
        .iter()
        .enumerate()
        .map(|(i, l)| (l, i as u32))
        .collect();
    let signed_id = |v: u32, shore: Shore| -> u32 {
        index[&Label::Signed(Box::new(k.label(v).clone()), shore)]
    };

    let all: Vec<&Face> = k.faces().collect();
    let mut faces: BTreeSet<Face> = BTreeSet::new();
    for f1 in &all {
        for f2 in &all {
            if f1.iter().any(|v| f2.contains(v)) {
                continue;
            }
            if faces.len() >= cap {
                return Err(ComplexError::FaceCapExceeded(cap));
            }
            let mut face: Face = f1.iter().map(|&v| signed_id(v, Shore::One)).collect();
            face.extend(f2.iter().map(|&v| signed_id(v, Shore::Two)));
            face.sort_unstable();
            faces.insert(face);
        }
    }
    let complex = SimplicialComplex::from_closed_faces(vertices, faces);
    Z2Complex::new(complex, |l| match l {
        Label::Signed(inner, shore) => Label::Signed(inner.clone(), shore.flip()),
        _ => unreachable!("deleted join vertices are signed"),
    })
}

// ---------------------------------------------------------------------------
// Simplicial map verification (explicit complexes)
// ---------------------------------------------------------------------------

/// Outcome of a simplicial or Z2-map check. `verdict` is true iff no
/// violation exists; `first_violation` pinpoints the failure otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMapCheck {
    pub verdict: bool,
    pub first_violation: Option<MapViolation>,
}

impl SimplicialMapCheck {
    pub fn pass() -> Self {
        SimplicialMapCheck {
            verdict: true,
            first_violation: None,
        }
    }

    pub fn fail(v: MapViolation) -> Self {
        SimplicialMapCheck {
            verdict: false,
            first_violation: Some(v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapViolation {
    ImageNotVertex { vertex: Label, image: Label },
    FaceImageNotFace { face: Vec<Label>, image: Vec<Label> },
    NotEquivariant { vertex: Label, action_then_map: Label, map_then_action: Label },
}

impl std::fmt::Display for MapViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |ls: &[Label]| {
            ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ")
        };
        match self {
            MapViolation::ImageNotVertex { vertex, image } => {
                write!(f, "image {image} of vertex {vertex} is not a target vertex")
            }
            MapViolation::FaceImageNotFace { face, image } => {
                write!(f, "face [{}] maps to [{}], not a face", join(face), join(image))
            }
            MapViolation::NotEquivariant { vertex, action_then_map, map_then_action } => {
                write!(
                    f,
                    "not equivariant at {vertex}: f(nu(v)) = {action_then_map} but nu(f(v)) = {map_then_action}"
                )
            }
        }
    }
}

/// Checks that every face of `k` maps to a face of `l` under the vertex
/// map `f`. Reports the first violation in canonical face order.
pub fn verify_simplicial_map(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    f: &BTreeMap<Label, Label>,
) -> Result<SimplicialMapCheck, ComplexError> {
    let images = image_table(k, f)?;
    Ok(check_faces(k, l, &images))
}

/// `verify_simplicial_map` plus vertexwise equivariance
/// `f(nu_K(v)) = nu_L(f(v))`.
pub fn verify_z2_map(
    k: &Z2Complex,
    l: &Z2Complex,
    f: &BTreeMap<Label, Label>,
) -> Result<SimplicialMapCheck, ComplexError> {
    let images = image_table(&k.complex, f)?;
    let faces = check_faces(&k.complex, &l.complex, &images);
    if !faces.verdict {
        return Ok(faces);
    }
    for v in 0..k.complex.n_vertices() as u32 {
        let lhs = &images[k.act_id(v) as usize];
        let rhs = l.act_label(&images[v as usize]).expect("image is a vertex");
        if *lhs != rhs {
            return Ok(SimplicialMapCheck::fail(MapViolation::NotEquivariant {
                vertex: k.complex.label(v).clone(),
                action_then_map: lhs.clone(),
                map_then_action: rhs,
            }));
        }
    }
    Ok(SimplicialMapCheck::pass())
}

fn image_table(
    k: &SimplicialComplex,
    f: &BTreeMap<Label, Label>,
) -> Result<Vec<Label>, ComplexError> {
    k.vertices()
        .iter()
        .map(|l| {
            f.get(l)
                .cloned()
                .ok_or_else(|| ComplexError::PartialMap(l.to_string()))
        })
        .collect()
}

fn check_faces(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    images: &[Label],
) -> SimplicialMapCheck {
    for v in 0..k.n_vertices() {
        if l.vertex_id(&images[v]).is_none() {
            return SimplicialMapCheck::fail(MapViolation::ImageNotVertex {
                vertex: k.label(v as u32).clone(),
                image: images[v].clone(),
            });
        }
    }
    let image_id: Vec<u32> = images.iter().map(|l0| l.vertex_id(l0).unwrap()).collect();
    for face in k.faces() {
        let mut img: Face = face.iter().map(|&v| image_id[v as usize]).collect();
        img.sort_unstable();
        img.dedup();
        if !l.contains(&img) {
            return SimplicialMapCheck::fail(MapViolation::FaceImageNotFace {
                face: k.face_labels(face),
                image: img.iter().map(|&v| l.label(v).clone()).collect(),
            });
        }
    }
    SimplicialMapCheck::pass()
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<Label>,
    facets: Vec<Vec<u32>>,
}

pub fn to_json(k: &SimplicialComplex) -> String {
    let doc = ComplexJson {
        vertices: k.vertices().to_vec(),
        facets: k.facets().into_iter().cloned().collect(),
    };
    serde_json::to_string_pretty(&doc).expect("complex serialization cannot fail")
}

pub fn from_json(text: &str) -> Result<SimplicialComplex, ComplexError> {
    let doc: ComplexJson =
        serde_json::from_str(text).map_err(|e| ComplexError::BadSerialization(e.to_string()))?;
    let vertices: Vec<Label> = doc
        .vertices
        .into_iter()
        .map(Label::canonicalized)
        .collect();
    let faces: Result<Vec<Vec<Label>>, ComplexError> = doc
        .facets
        .iter()
        .map(|facet| {
            facet
                .iter()
                .map(|&i| {
                    vertices
                        .get(i as usize)
                        .cloned()
                        .ok_or_else(|| ComplexError::BadSerialization(format!("vertex index {i}")))
                })
                .collect()
        })
        .collect();
    SimplicialComplex::from_faces(vertices, faces?)
}
