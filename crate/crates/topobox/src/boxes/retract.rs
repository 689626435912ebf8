//! The collapse of the box complex of a graph without 4-cycles onto a
//! 1-dimensional part.
//!
//! Without 4-cycles, two vertices share at most one common neighbor, so a
//! shore with two or more vertices pins its opposite side to a single
//! vertex. Sending such a face to that vertex (and keeping small faces)
//! defines a map from the subdivision vertices (faces of the box complex)
//! back into faces of dimension at most 1.
//!
//! The map is verified in the carrier sense: for every chain of faces the
//! union of the images must itself be a face, so that mapping each
//! subdivision vertex to the barycenter of its image face extends to a
//! continuous equivariant map into the 1-dimensional subcomplex. (Checking
//! maximal chains suffices: unions over subchains are subsets of unions
//! over chains, and faces are downward closed.)

use super::{box_complex, swap_shores, BoxError, BoxVariant};
use crate::complex::{Face, Label, MapViolation, SimplicialMapCheck, Z2Complex};
use crate::graph::{Graph, GraphError};

pub struct RetractionReport {
    /// Image face of the box complex for each subdivision vertex.
    pub vertex_map: Vec<(Label, Label)>,
    pub check: SimplicialMapCheck,
    /// Dimension of the subcomplex spanned by all chain images.
    pub image_dimension: i64,
}

/// Builds and verifies the three-case collapse for a graph without
/// 4-cycles. Errors if the graph contains a 4-cycle (the defining formula
/// is then ill-typed: a large shore no longer determines a single common
/// neighbor).
pub fn c4free_retraction(g: &Graph, cap: usize) -> Result<RetractionReport, BoxError> {
    if let Some(v) = g.isolated_vertex() {
        return Err(GraphError::IsolatedVertex(v).into());
    }
    if let Some((a, b, c, d)) = g.find_four_cycle() {
        return Err(GraphError::HasFourCycle(a, b, c, d).into());
    }
    let b = box_complex(g, BoxVariant::B, cap)?;
    let faces: Vec<Face> = b.complex.nonempty_faces().cloned().collect();
    let image: Vec<Face> = faces.iter().map(|f| collapse_face(g, &b, f)).collect();

    let vertex_map: Vec<(Label, Label)> = faces
        .iter()
        .zip(&image)
        .map(|(f, img)| (b.complex.face_as_label(f), b.complex.face_as_label(img)))
        .collect();

    // Union condition along all maximal chains, found by single-vertex
    // ascent from the singleton faces.
    let mut image_dimension = -1i64;
    let mut stack: Vec<(Face, Face)> = faces
        .iter()
        .filter(|f| f.len() == 1)
        .map(|f| {
            let idx = faces.binary_search(f).unwrap();
            (f.clone(), image[idx].clone())
        })
        .collect();
    while let Some((face, union)) = stack.pop() {
        let mut extended = false;
        for v in 0..b.complex.n_vertices() as u32 {
            if !face.contains(&v) {
                let mut bigger = face.clone();
                bigger.push(v);
                bigger.sort_unstable();
                if let Ok(idx) = faces.binary_search(&bigger) {
                    extended = true;
                    let mut u = union.clone();
                    u.extend(&image[idx]);
                    u.sort_unstable();
                    u.dedup();
                    stack.push((bigger, u));
                }
            }
        }
        if !extended {
            // Top of a maximal chain: the accumulated image union must
            // span a common face.
            if !b.complex.contains(&union) {
                return Ok(RetractionReport {
                    vertex_map,
                    check: SimplicialMapCheck::fail(MapViolation::FaceImageNotFace {
                        face: b.complex.face_labels(&face),
                        image: b.complex.face_labels(&union),
                    }),
                    image_dimension: -1,
                });
            }
            image_dimension = image_dimension.max(union.len() as i64 - 1);
        }
    }

    // Equivariance on subdivision vertices, after the face condition so a
    // violation here certifies the carrier condition held.
    for (i, f) in faces.iter().enumerate() {
        let swapped = b.act_face(f);
        let j = faces.binary_search(&swapped).expect("action permutes faces");
        if image[j] != b.act_face(&image[i]) {
            let lhs = b.complex.face_as_label(&image[j]);
            let rhs = swap_shores(&b.complex.face_as_label(&image[i]));
            return Ok(RetractionReport {
                vertex_map,
                check: SimplicialMapCheck::fail(MapViolation::NotEquivariant {
                    vertex: b.complex.face_as_label(f),
                    action_then_map: lhs,
                    map_then_action: rhs,
                }),
                image_dimension,
            });
        }
    }
    Ok(RetractionReport {
        vertex_map,
        check: SimplicialMapCheck::pass(),
        image_dimension,
    })
}

fn collapse_face(g: &Graph, b: &Z2Complex, face: &Face) -> Face {
    use crate::bitset::BitSet;
    use crate::complex::Shore;
    let (left, right) = super::shores_of_face(b, face);
    let to_face = |left: &BitSet, right: &BitSet| -> Face {
        let mut ids: Face = left
            .iter()
            .map(|v| b.complex.vertex_id(&Label::signed_atom(v, Shore::One)).unwrap())
            .collect();
        ids.extend(
            right
                .iter()
                .map(|v| b.complex.vertex_id(&Label::signed_atom(v, Shore::Two)).unwrap()),
        );
        ids.sort_unstable();
        ids
    };
    if left.len() >= 2 {
        let cn = g.common_neighbors(&left);
        debug_assert_eq!(cn.len(), 1, "no 4-cycle pins the common neighbor");
        to_face(&BitSet::new(g.n()), &cn)
    } else if right.len() >= 2 {
        let cn = g.common_neighbors(&right);
        debug_assert_eq!(cn.len(), 1);
        to_face(&cn, &BitSet::new(g.n()))
    } else {
        face.clone()
    }
}
