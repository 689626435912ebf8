//! Reduced simplicial homology with Z/2 coefficients via boundary-matrix
//! ranks, and the index interval `[1 + acyc, dim]` of a free involution.
//!
//! Mod-2 coefficients need no orientation signs: the boundary of a face is
//! the set of its codimension-1 subfaces, and ranks come from bit-packed
//! Gaussian elimination.

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, Z2Complex};

/// Augmented chain complex over GF(2). Dimension 0 maps into the empty
/// face, so the derived Betti numbers are reduced.
pub struct ChainComplexGF2 {
    /// Per dimension d, the ordered basis of d-faces.
    bases: Vec<Vec<Vec<u32>>>,
    /// Per dimension d, sparse columns of the boundary matrix: row indices
    /// into the (d-1)-basis. Dimension 0 has a single augmentation row.
    boundaries: Vec<Vec<Vec<u32>>>,
}

impl ChainComplexGF2 {
    pub fn new(k: &SimplicialComplex) -> Self {
        let dim = k.dim();
        let mut bases: Vec<Vec<Vec<u32>>> = if dim < 0 {
            Vec::new()
        } else {
            vec![Vec::new(); dim as usize + 1]
        };
        for face in k.nonempty_faces() {
            bases[face.len() - 1].push(face.clone());
        }
        let mut boundaries = Vec::with_capacity(bases.len());
        let mut prev_index: std::collections::HashMap<&[u32], u32> = Default::default();
        for (d, basis) in bases.iter().enumerate() {
            let cols: Vec<Vec<u32>> = if d == 0 {
                basis.iter().map(|_| vec![0u32]).collect()
            } else {
                basis
                    .iter()
                    .map(|face| {
                        let mut rows: Vec<u32> = (0..face.len())
                            .map(|i| {
                                let mut sub = face.clone();
                                sub.remove(i);
                                prev_index[sub.as_slice()]
                            })
                            .collect();
                        rows.sort_unstable();
                        rows
                    })
                    .collect()
            };
            boundaries.push(cols);
            prev_index = basis
                .iter()
                .enumerate()
                .map(|(i, f)| (f.as_slice(), i as u32))
                .collect();
        }
        let cc = ChainComplexGF2 { bases, boundaries };
        if k.face_count() <= 1 << 14 {
            assert!(cc.boundary_squares_to_zero(), "boundary of boundary must vanish");
        }
        cc
    }

    pub fn top_dimension(&self) -> i64 {
        self.bases.len() as i64 - 1
    }

    pub fn basis(&self, d: usize) -> &[Vec<u32>] {
        &self.bases[d]
    }

    /// Sparse columns of the boundary matrix in dimension `d`.
    pub fn boundary(&self, d: usize) -> &[Vec<u32>] {
        &self.boundaries[d]
    }

    /// Checks the simplicial identity by composing consecutive boundaries
    /// column by column over GF(2).
    pub fn boundary_squares_to_zero(&self) -> bool {
        for d in 1..self.boundaries.len() {
            let prev = &self.boundaries[d - 1];
            for col in &self.boundaries[d] {
                let mut acc: Vec<u32> = Vec::new();
                for &facet in col {
                    acc = xor_sorted(&acc, &prev[facet as usize]);
                }
                if !acc.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    fn rank(&self, d: usize) -> usize {
        let nrows = if d == 0 {
            if self.bases.is_empty() || self.bases[0].is_empty() {
                0
            } else {
                1
            }
        } else {
            self.bases[d - 1].len()
        };
        rank_gf2(nrows, &self.boundaries[d])
    }
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(*x);
                i += 1;
            }
            (Some(_), Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (None, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// The augmented GF(2) chain complex of `k` with deterministic face order.
pub fn chain_complex(k: &SimplicialComplex) -> ChainComplexGF2 {
    ChainComplexGF2::new(k)
}

/// Rank of a GF(2) matrix given by sparse columns, via column reduction
/// against bit-packed pivot columns.
pub fn rank_gf2(nrows: usize, cols: &[Vec<u32>]) -> usize {
    let words = nrows.div_ceil(64);
    let mut pivots: Vec<Option<Box<[u64]>>> = vec![None; nrows];
    let mut rank = 0;
    let mut acc = vec![0u64; words];
    for col in cols {
        acc.fill(0);
        for &r in col {
            acc[r as usize / 64] ^= 1 << (r % 64);
        }
        loop {
            let Some(top) = highest_bit(&acc) else { break };
            match &pivots[top] {
                Some(p) => {
                    for (a, b) in acc.iter_mut().zip(p.iter()) {
                        *a ^= b;
                    }
                }
                None => {
                    pivots[top] = Some(acc.clone().into_boxed_slice());
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn highest_bit(words: &[u64]) -> Option<usize> {
    for (i, &w) in words.iter().enumerate().rev() {
        if w != 0 {
            return Some(i * 64 + 63 - w.leading_zeros() as usize);
        }
    }
    None
}

/// Reduced mod-2 Betti numbers, degrees 0 through dim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiProfile(pub Vec<usize>);

impl BettiProfile {
    /// The profile of a sphere of the given dimension: a single generator
    /// in the top degree.
    pub fn sphere(dim: usize) -> Self {
        let mut b = vec![0; dim + 1];
        b[dim] = 1;
        BettiProfile(b)
    }

    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Reduced Betti numbers over GF(2) from boundary ranks.
pub fn betti_gf2(k: &SimplicialComplex) -> BettiProfile {
    let cc = ChainComplexGF2::new(k);
    let top = cc.top_dimension();
    if top < 0 {
        return BettiProfile(Vec::new());
    }
    let top = top as usize;
    let ranks: Vec<usize> = (0..=top).map(|d| cc.rank(d)).collect();
    let betti: Vec<usize> = (0..=top)
        .map(|d| {
            let kernel = cc.basis(d).len() - ranks[d];
            let image_above = if d < top { ranks[d + 1] } else { 0 };
            kernel - image_above
        })
        .collect();
    BettiProfile(betti)
}

/// Largest k such that all reduced homology vanishes in degrees up to k:
/// -1 for a disconnected complex, capped at dim when everything vanishes.
/// The vertexless complex gets -2: its augmentation homology in degree -1
/// does not vanish.
pub fn acyclicity(k: &SimplicialComplex) -> i64 {
    let betti = betti_gf2(k);
    if betti.0.is_empty() {
        return -2;
    }
    match betti.0.iter().position(|&b| b > 0) {
        Some(0) => -1,
        Some(i) => i as i64 - 1,
        None => k.dim(),
    }
}

/// Bracket for the Z2 index of a simplicial involution. `upper` is `None`
/// (infinity) exactly when the action has a fixed face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexInterval {
    pub lower: i64,
    pub upper: Option<i64>,
}

impl IndexInterval {
    pub fn is_point(&self) -> bool {
        self.upper == Some(self.lower)
    }
}

impl std::fmt::Display for IndexInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.upper {
            Some(u) => write!(f, "[{}, {}]", self.lower, u),
            None => write!(f, "[{}, inf)", self.lower),
        }
    }
}

/// `[1 + acyc, dim]` for a free involution; upper bound infinite otherwise.
pub fn index_interval(z: &Z2Complex) -> IndexInterval {
    IndexInterval {
        lower: 1 + acyclicity(&z.complex),
        upper: if z.free() { Some(z.complex.dim()) } else { None },
    }
}
