//! Rational simplicial homology and the Cohen-Macaulay oracle.
//!
//! Boundary matrices carry the usual alternating signs taken from the fixed
//! natural vertex order; ranks come from fraction-free elimination over
//! `BigInt`, so the reduced Betti numbers are those over the rationals.
//!
//! The oracle [`CmChecker::is_cm`] applies the link criterion: a pure
//! complex is CM over the rationals iff for every face `σ` (including the
//! empty one) the reduced homology of `link(σ)` vanishes below the link's
//! dimension. The criterion is checked literally, one link at a time;
//! non-pure input is reported as non-CM rather than an error.

use std::collections::HashMap;

use serde::Serialize;

use crate::complex::{Complex, Face, FaceSet};
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};

/// Reduced Betti numbers indexed from dimension −1 up to the dimension of
/// the complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BettiProfile {
    values: Vec<i64>,
}

impl BettiProfile {
    /// Reduced Betti number in dimension `k` (0 outside the stored range).
    pub fn get(&self, k: isize) -> i64 {
        if k < -1 {
            return 0;
        }
        self.values.get((k + 1) as usize).copied().unwrap_or(0)
    }

    /// Betti numbers from dimension −1 upward.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&b| b == 0)
    }
}

fn faces_of_dim(faces: &FaceSet, k: isize) -> Vec<&Face> {
    faces.iter().filter(|f| f.len() as isize == k + 1).collect()
}

/// The boundary operator from `k`-dimensional faces to `(k-1)`-dimensional
/// ones, with signs from the natural vertex order. `k = 0` is the
/// augmentation map onto the empty face. The face set must be closed under
/// inclusion up to dimension `k`.
pub fn boundary_matrix(faces: &FaceSet, k: usize) -> IntMatrix {
    let sources = faces_of_dim(faces, k as isize);
    let targets = faces_of_dim(faces, k as isize - 1);
    let index: HashMap<&Face, usize> = targets.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut m = IntMatrix::zeros(targets.len(), sources.len());
    for (j, face) in sources.iter().enumerate() {
        for drop in 0..face.len() {
            let sub: Face = face
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, &v)| v)
                .collect();
            let i = *index
                .get(&sub)
                .expect("face set must be closed under inclusion");
            let sign = if drop % 2 == 0 { 1 } else { -1 };
            m.set(i, j, Int::from(sign));
        }
    }
    m
}

/// Reduced rational Betti numbers of an inclusion-closed face set, via the
/// augmented chain complex: `β_k = dim ker ∂_k − rank ∂_{k+1}`.
pub fn reduced_betti(faces: &FaceSet) -> BettiProfile {
    if faces.is_empty() {
        return BettiProfile { values: Vec::new() };
    }
    let top = faces.iter().map(Face::len).max().unwrap() as isize - 1;
    // ranks[k+1] = rank of the boundary map leaving dimension k.
    let mut ranks = vec![0usize; (top + 3) as usize];
    for k in 0..=top {
        ranks[(k + 1) as usize] = boundary_matrix(faces, k as usize).rank();
    }
    let values = (-1..=top)
        .map(|k| {
            let n_k = faces_of_dim(faces, k).len() as i64;
            let rank_out = ranks[(k + 1) as usize] as i64;
            let rank_in = ranks[(k + 2) as usize] as i64;
            n_k - rank_out - rank_in
        })
        .collect();
    BettiProfile { values }
}

/// The link of `σ`: the faces disjoint from `σ` whose union with `σ` lies in
/// the complex. `σ` must itself be a face.
pub fn link(faces: &FaceSet, sigma: &Face) -> Result<FaceSet> {
    if !faces.contains(sigma) {
        return Err(Error::Input("link of a non-face".into()));
    }
    Ok(faces
        .iter()
        .filter(|f| sigma.iter().all(|v| f.binary_search(v).is_ok()))
        .map(|f| {
            f.iter()
                .copied()
                .filter(|v| sigma.binary_search(v).is_err())
                .collect()
        })
        .collect())
}

/// Why a complex fails the Cohen-Macaulay test.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum CmFailure {
    /// Two maximal faces of different dimensions.
    NotPure { small: Face, large: Face },
    /// `link(face)` has nonvanishing reduced homology below its dimension.
    Homology { face: Face, dim: isize, betti: i64 },
}

/// Cohen-Macaulay oracle with a cache of Betti profiles keyed by face set;
/// links repeat heavily across the subcomplexes of one ground complex.
#[derive(Default)]
pub struct CmChecker {
    betti_cache: HashMap<Vec<Face>, BettiProfile>,
}

impl CmChecker {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn betti(&mut self, faces: &FaceSet) -> BettiProfile {
        let key: Vec<Face> = faces.iter().cloned().collect();
        if let Some(b) = self.betti_cache.get(&key) {
            return b.clone();
        }
        let b = reduced_betti(faces);
        self.betti_cache.insert(key, b.clone());
        b
    }

    /// The link criterion on an inclusion-closed face set: every face's link
    /// must have vanishing reduced homology strictly below the link's
    /// dimension. Reports the first offending `(face, dimension)`, or
    /// non-purity. The void complex and `{∅}` pass vacuously.
    pub fn is_cm_faces(&mut self, faces: &FaceSet) -> std::result::Result<(), CmFailure> {
        if faces.is_empty() {
            return Ok(());
        }
        // Purity of the maximal faces.
        let top = faces.iter().map(Face::len).max().unwrap();
        let maximal: Vec<&Face> = faces
            .iter()
            .filter(|f| {
                !faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.iter().all(|v| g.binary_search(v).is_ok()))
            })
            .collect();
        if let Some(short) = maximal.iter().find(|f| f.len() < top) {
            let long = maximal.iter().find(|f| f.len() == top).unwrap();
            return Err(CmFailure::NotPure {
                small: (*short).clone(),
                large: (*long).clone(),
            });
        }

        for sigma in faces {
            let lk = link(faces, sigma).expect("faces of the complex have links");
            let lk_dim = lk.iter().map(Face::len).max().unwrap() as isize - 1;
            let betti = self.betti(&lk);
            for k in -1..lk_dim {
                let b = betti.get(k);
                if b != 0 {
                    return Err(CmFailure::Homology {
                        face: sigma.clone(),
                        dim: k,
                        betti: b,
                    });
                }
            }
        }
        Ok(())
    }

    /// [`CmChecker::is_cm_faces`] on the downward closure of a facet set.
    pub fn is_cm(&mut self, complex: &Complex) -> std::result::Result<(), CmFailure> {
        self.is_cm_faces(&complex.faces())
    }
}

/// One-shot convenience wrapper around [`CmChecker::is_cm`].
pub fn is_cm(complex: &Complex) -> std::result::Result<(), CmFailure> {
    CmChecker::new().is_cm(complex)
}

/// Purity plus the link criterion for a raw facet list (used by the CLI,
/// where no instance is available): facets of unequal sizes are non-pure.
pub fn is_cm_facet_list(facets: &[crate::complex::Facet]) -> std::result::Result<(), CmFailure> {
    let faces = crate::complex::closure(facets.iter());
    CmChecker::new().is_cm_faces(&faces)
}

/// The union of `∂∘∂` checks used by the test suites: the composition of
/// consecutive boundary maps is zero on this face set.
pub fn boundary_squared_is_zero(faces: &FaceSet) -> bool {
    if faces.is_empty() {
        return true;
    }
    let top = faces.iter().map(Face::len).max().unwrap();
    (1..top).all(|k| {
        let outer = boundary_matrix(faces, k - 1);
        let inner = boundary_matrix(faces, k);
        let product = outer.matmul(&inner);
        (0..product.rows()).all(|r| (0..product.cols()).all(|c| product.get(r, c) == &Int::from(0)))
    })
}
