//! Set systems over a ground set, their Kneser graphs, the complex of
//! system-free sets, and the 2-colorability defect.
//!
//! Ground elements are `0..n` internally; the JSON interchange format is
//! 1-based: `{"n": 5, "sets": [[1,3],[2,4], ...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, Label, SimplicialComplex};
use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SetSystemError {
    #[error("ground element {0} out of range 1..={1}")]
    ElementOutOfRange(usize, usize),
    #[error("member sets must be nonempty")]
    EmptyMemberSet,
    #[error("duplicate member set")]
    DuplicateMemberSet,
    #[error("ground set of size {0} too large for brute-force defect search")]
    GroundTooLarge(usize),
    #[error("parameters out of range: need {0}")]
    ParameterRange(&'static str),
    #[error("invalid set-system JSON: {0}")]
    BadSerialization(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// A family of distinct nonempty subsets of `{0, .., n-1}`, in a fixed
/// list order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    ground: usize,
    sets: Vec<Vec<usize>>,
}

impl SetSystem {
    pub fn new(ground: usize, sets: Vec<Vec<usize>>) -> Result<Self, SetSystemError> {
        let mut normalized = Vec::with_capacity(sets.len());
        for set in sets {
            if set.is_empty() {
                return Err(SetSystemError::EmptyMemberSet);
            }
            let mut s = set;
            s.sort_unstable();
            s.dedup();
            if let Some(&e) = s.iter().find(|&&e| e >= ground) {
                return Err(SetSystemError::ElementOutOfRange(e + 1, ground));
            }
            normalized.push(s);
        }
        let mut seen = normalized.clone();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(SetSystemError::DuplicateMemberSet);
        }
        Ok(SetSystem {
            ground,
            sets: normalized,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Member sets as bit masks; ground size must be at most 64.
    pub fn masks(&self) -> Vec<u64> {
        assert!(self.ground <= 64, "mask representation needs ground <= 64");
        self.sets
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &e| m | 1 << e))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let doc = SetSystemJson {
            n: self.ground,
            sets: self
                .sets
                .iter()
                .map(|s| s.iter().map(|&e| e + 1).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("set system serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, SetSystemError> {
        let doc: SetSystemJson = serde_json::from_str(text)
            .map_err(|e| SetSystemError::BadSerialization(e.to_string()))?;
        let sets: Result<Vec<Vec<usize>>, SetSystemError> = doc
            .sets
            .into_iter()
            .map(|s| {
                s.into_iter()
                    .map(|e| {
                        if e == 0 || e > doc.n {
                            Err(SetSystemError::ElementOutOfRange(e, doc.n))
                        } else {
                            Ok(e - 1)
                        }
                    })
                    .collect()
            })
            .collect();
        SetSystem::new(doc.n, sets?)
    }
}

#[derive(Serialize, Deserialize)]
struct SetSystemJson {
    n: usize,
    sets: Vec<Vec<usize>>,
}

/// All k-element subsets of an n-element ground set, lexicographic.
pub fn k_subsets(n: usize, k: usize) -> Result<SetSystem, SetSystemError> {
    if k == 0 || k > n {
        return Err(SetSystemError::ParameterRange("0 < k <= n"));
    }
    let mut sets = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        sets.push(current.clone());
        // Next combination in lexicographic order.
        let mut i = k;
        while i > 0 {
            i -= 1;
            if current[i] != i + n - k {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return SetSystem::new(n, sets);
            }
        }
    }
}

/// All k-subsets of an n-cycle's vertex set that are independent in the
/// cycle (no two cyclically consecutive elements), lexicographic.
pub fn stable_k_subsets(n: usize, k: usize) -> Result<SetSystem, SetSystemError> {
    if k == 0 || 2 * k >= n {
        return Err(SetSystemError::ParameterRange("0 < 2k < n"));
    }
    let all = k_subsets(n, k)?;
    let stable: Vec<Vec<usize>> = all
        .sets
        .iter()
        .filter(|s| {
            s.windows(2).all(|w| w[1] != w[0] + 1) && !(s.contains(&0) && s.contains(&(n - 1)))
        })
        .cloned()
        .collect();
    SetSystem::new(n, stable)
}

/// The Kneser graph of a system: one vertex per member set in list order,
/// edges between disjoint sets. (Empty member sets, which would make the
/// disjointness relation degenerate, are already rejected by `SetSystem`.)
pub fn kneser_graph_of(f: &SetSystem) -> Graph {
    let mut g = Graph::new(f.len());
    for i in 0..f.len() {
        for j in i + 1..f.len() {
            if f.sets[i].iter().all(|e| !f.sets[j].contains(e)) {
                g.add_edge(i, j).expect("distinct vertices");
            }
        }
    }
    g
}

/// The complex of system-free sets: all subsets of the ground set that
/// contain no member of `f`. Vertices are the ground elements that are
/// themselves free (an element covered by a singleton member is in no
/// face). The minimal nonfaces are exactly the inclusion-minimal members.
pub fn free_complex(f: &SetSystem, cap: usize) -> Result<SimplicialComplex, SetSystemError> {
    let n = f.ground_size();
    let mut faces: Vec<Vec<u32>> = Vec::new();
    let contains_member = |s: &[u32]| {
        f.sets
            .iter()
            .any(|m| m.iter().all(|&e| s.binary_search(&(e as u32)).is_ok()))
    };
    // Free sets are downward closed, so ascending extension reaches all.
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(s) = stack.pop() {
        if faces.len() >= cap {
            return Err(SetSystemError::Complex(ComplexError::FaceCapExceeded(cap)));
        }
        let start = s.last().map_or(0, |&l| l + 1);
        for e in start..n as u32 {
            let mut t = s.clone();
            t.push(e);
            if !contains_member(&t) {
                stack.push(t);
            }
        }
        faces.push(s);
    }
    let vertices: Vec<Label> = faces
        .iter()
        .filter(|s| s.len() == 1)
        .map(|s| Label::atom(s[0] as usize))
        .collect();
    let label_faces: Vec<Vec<Label>> = faces
        .iter()
        .map(|s| s.iter().map(|&e| Label::atom(e as usize)).collect())
        .collect();
    Ok(SimplicialComplex::from_faces(vertices, label_faces)?)
}

/// Largest `|S1| + |S2| - 1` over disjoint pairs of faces of `k`; `-1` for
/// the empty complex. This equals the dimension of the twofold deleted
/// join without constructing it.
pub fn deleted_join_dimension(k: &SimplicialComplex) -> i64 {
    let n = k.n_vertices();
    if n <= 22 {
        // Subset DP: best face size inside each vertex subset.
        let mut is_face = vec![false; 1 << n];
        for f in k.faces() {
            is_face[f.iter().fold(0usize, |m, &v| m | 1 << v)] = true;
        }
        let mut best = vec![0u8; 1 << n];
        for mask in 1usize..1 << n {
            if is_face[mask] {
                best[mask] = mask.count_ones() as u8;
            } else {
                let mut m = mask;
                let mut b = 0;
                while m != 0 {
                    let bit = m & m.wrapping_neg();
                    b = b.max(best[mask ^ bit]);
                    m ^= bit;
                }
                best[mask] = b;
            }
        }
        let full = (1usize << n) - 1;
        (0..=full)
            .map(|m| best[m] as i64 + best[full ^ m] as i64 - 1)
            .max()
            .unwrap_or(-1)
    } else {
        let mut faces: Vec<&Vec<u32>> = k.faces().collect();
        faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
        let mut best = -1i64;
        for (i, f1) in faces.iter().enumerate() {
            if 2 * f1.len() as i64 - 1 <= best {
                break;
            }
            for f2 in &faces[i..] {
                if f1.len() as i64 + f2.len() as i64 - 1 <= best {
                    break;
                }
                if f1.iter().all(|v| !f2.contains(v)) {
                    best = f1.len() as i64 + f2.len() as i64 - 1;
                }
            }
        }
        best
    }
}

// ---------------------------------------------------------------------------
// 2-colorability defect
// ---------------------------------------------------------------------------

/// Witness for the defect: a red/blue coloring of the ground set minus the
/// white points, leaving no member set monochromatic red or blue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cd2Certificate {
    pub white: Vec<usize>,
    pub red: Vec<usize>,
    pub blue: Vec<usize>,
}

impl Cd2Certificate {
    /// Re-checks the certificate against the system.
    pub fn verify(&self, f: &SetSystem) -> bool {
        let n = f.ground_size();
        let mut color = vec![0u8; n]; // 0 white, 1 red, 2 blue
        let mut seen = 0usize;
        for &e in &self.white {
            color[e] = 0;
            seen += 1;
        }
        for &e in &self.red {
            color[e] = 1;
            seen += 1;
        }
        for &e in &self.blue {
            color[e] = 2;
            seen += 1;
        }
        if seen != n {
            return false;
        }
        f.sets().iter().all(|s| {
            let all_red = s.iter().all(|&e| color[e] == 1);
            let all_blue = s.iter().all(|&e| color[e] == 2);
            !all_red && !all_blue
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cd2Method {
    /// Exhaustive search over red/blue/white colorings; also yields a
    /// certificate. Ground sets beyond 16 elements are rejected.
    Brute,
    /// Via the free complex: `n - 1 - dim` of its twofold deleted join.
    ViaDim,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cd2Outcome {
    pub value: usize,
    pub certificate: Option<Cd2Certificate>,
}

/// The 2-colorability defect: the minimum number of white points so that
/// the rest of the ground set can be 2-colored with no member set entirely
/// red or entirely blue.
pub fn cd2(f: &SetSystem, method: Cd2Method, cap: usize) -> Result<Cd2Outcome, SetSystemError> {
    match method {
        Cd2Method::Brute => {
            let (value, certificate) = cd2_brute(f)?;
            Ok(Cd2Outcome {
                value,
                certificate: Some(certificate),
            })
        }
        Cd2Method::ViaDim => {
            let k = free_complex(f, cap)?;
            let value = f.ground_size() as i64 - 1 - deleted_join_dimension(&k);
            Ok(Cd2Outcome {
                value: value as usize,
                certificate: None,
            })
        }
    }
}

const BRUTE_MAX_GROUND: usize = 16;

fn cd2_brute(f: &SetSystem) -> Result<(usize, Cd2Certificate), SetSystemError> {
    let n = f.ground_size();
    if n > BRUTE_MAX_GROUND {
        return Err(SetSystemError::GroundTooLarge(n));
    }
    // Per-set counters; prune as soon as a set turns fully red or blue.
    let sizes: Vec<usize> = f.sets().iter().map(Vec::len).collect();
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in f.sets().iter().enumerate() {
        for &e in s {
            at[e].push(i);
        }
    }
    struct Search<'a> {
        f: &'a SetSystem,
        at: &'a [Vec<usize>],
        sizes: &'a [usize],
        red: Vec<usize>,
        blue: Vec<usize>,
        color: Vec<u8>,
        best: Option<(usize, Vec<usize>, Vec<u8>)>,
    }
    impl Search<'_> {
        fn run(&mut self, e: usize, whites: usize) {
            if let Some((b, _, _)) = &self.best {
                if whites > *b {
                    return;
                }
            }
            let n = self.f.ground_size();
            if e == n {
                let white: Vec<usize> = (0..n).filter(|&x| self.color[x] == 0).collect();
                let better = match &self.best {
                    None => true,
                    Some((b, w, _)) => whites < *b || (whites == *b && white < *w),
                };
                if better {
                    self.best = Some((whites, white, self.color.clone()));
                }
                return;
            }
            // Red, blue, then white, so zero-white leaves are tried first.
            for c in [1u8, 2u8] {
                let mut ok = true;
                for &i in &self.at[e] {
                    let cnt = if c == 1 { &mut self.red[i] } else { &mut self.blue[i] };
                    *cnt += 1;
                    if *cnt == self.sizes[i] {
                        ok = false;
                    }
                }
                if ok {
                    self.color[e] = c;
                    self.run(e + 1, whites);
                }
                for &i in &self.at[e] {
                    let cnt = if c == 1 { &mut self.red[i] } else { &mut self.blue[i] };
                    *cnt -= 1;
                }
            }
            self.color[e] = 0;
            self.run(e + 1, whites + 1);
        }
    }
    let mut search = Search {
        f,
        at: &at,
        sizes: &sizes,
        red: vec![0; f.len()],
        blue: vec![0; f.len()],
        color: vec![0; n],
        best: None,
    };
    search.run(0, 0);
    let (value, white, color) = search.best.expect("all-white coloring is always valid");
    let cert = Cd2Certificate {
        white,
        red: (0..n).filter(|&e| color[e] == 1).collect(),
        blue: (0..n).filter(|&e| color[e] == 2).collect(),
    };
    debug_assert!(cert.verify(f));
    Ok((value, cert))
}
