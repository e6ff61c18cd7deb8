//! The complexes `Lambda_d(n, a)` and face-count arithmetic.
//!
//! A pure complex is stored as its facet set. Facets of `Lambda` are the
//! `d`-subsets of the ground set that take at most `a_i` vertices from each
//! block; this closed form is validated in tests against the literal
//! skeleton-of-join-of-skeletons construction built from [`join`],
//! [`skeleton`] and [`full_simplex`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ground::{revlex_set_order, Instance, Vertex};

/// A face as a strictly ascending (natural order, i.e. ≻-descending) vertex
/// list. The empty face is `vec![]`.
pub type Face = Vec<Vertex>;

/// A set of faces. Not necessarily closed under inclusion; the operations
/// that need a complex take the downward closure explicitly.
pub type FaceSet = BTreeSet<Face>;

/// A facet: a strictly sorted vertex list.
///
/// `Ord` is the reverse-lexicographic *shelling* order: ascending iteration
/// over a sorted container yields facets ≻-greatest first, which is exactly
/// the order `Lex` used by the shelling module.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Facet {
    verts: Vec<Vertex>,
}

impl Facet {
    pub fn new(mut verts: Vec<Vertex>) -> Result<Self> {
        verts.sort();
        if verts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("facet has repeated vertices".into()));
        }
        Ok(Facet { verts })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    pub fn contains_all(&self, face: &[Vertex]) -> bool {
        face.iter().all(|&v| self.contains(v))
    }

    /// Vertices of this facet lying in block `i`.
    pub fn block_part(&self, block: usize) -> Vec<Vertex> {
        self.verts
            .iter()
            .copied()
            .filter(|v| v.block == block)
            .collect()
    }

    /// The facet with `remove` swapped for `add`.
    pub fn swap(&self, remove: Vertex, add: Vertex) -> Result<Facet> {
        if !self.contains(remove) {
            return Err(Error::Input(format!("{remove} is not in the facet")));
        }
        if self.contains(add) {
            return Err(Error::Input(format!("{add} is already in the facet")));
        }
        let verts = self
            .verts
            .iter()
            .copied()
            .filter(|&v| v != remove)
            .chain(std::iter::once(add))
            .collect();
        Facet::new(verts)
    }

    pub fn as_face(&self) -> Face {
        self.verts.clone()
    }
}

impl PartialOrd for Facet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Facet {
    fn cmp(&self, other: &Self) -> Ordering {
        // Facets of one complex share a size; the length guard keeps the
        // order total for stray comparisons.
        self.verts
            .len()
            .cmp(&other.verts.len())
            .then_with(|| revlex_set_order(&self.verts, &other.verts).reverse())
    }
}

impl Serialize for Facet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.verts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Facet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let verts = Vec::<Vertex>::deserialize(d)?;
        Facet::new(verts).map_err(D::Error::custom)
    }
}

/// A pure `(d-1)`-dimensional complex given by its facet set, together with
/// the instance it lives over. Every facet has exactly `d` vertices and
/// respects the block capacities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complex {
    instance: Instance,
    facets: BTreeSet<Facet>,
}

impl Complex {
    pub fn new(instance: Instance, facets: impl IntoIterator<Item = Facet>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for f in facets {
            if !instance.is_facet(&f) {
                return Err(Error::Input(format!(
                    "facet {:?} violates the size or capacity constraints",
                    f.vertices()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                )));
            }
            set.insert(f);
        }
        Ok(Complex {
            instance,
            facets: set,
        })
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    /// Facets in reverse-lexicographic descending order (≻-greatest first).
    pub fn facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn contains_facet(&self, f: &Facet) -> bool {
        self.facets.contains(f)
    }

    /// Downward closure of the facet set, including the empty face.
    pub fn faces(&self) -> FaceSet {
        closure(self.facets.iter())
    }

    /// Face counts `(f_{-1}, f_0, ..., f_{d-1})` of the downward closure.
    pub fn f_vector(&self) -> Vec<i64> {
        let mut f = f_vector_of_faces(&self.faces());
        f.resize(self.instance.d() + 1, 0);
        f
    }

    pub fn h_vector(&self) -> Vec<i64> {
        h_from_f(&self.f_vector(), self.instance.d()).expect("f-vector of a complex is well-formed")
    }
}

impl Instance {
    /// Is `f` a facet of `Lambda_d(n, a)`: exactly `d` vertices of this
    /// instance, at most `a_i` per block?
    pub fn is_facet(&self, f: &Facet) -> bool {
        if f.len() != self.d() {
            return false;
        }
        let mut per_block = vec![0usize; self.m()];
        for &v in f.vertices() {
            if !self.contains_vertex(v) {
                return false;
            }
            per_block[v.block - 1] += 1;
        }
        per_block.iter().zip(self.a()).all(|(&k, &cap)| k <= cap)
    }
}

/// Construct `Lambda_d(n, a)`: all `d`-subsets of the ground set taking at
/// most `a_i` vertices from block `i`.
pub fn build_lambda(instance: &Instance) -> Complex {
    let mut facets = Vec::new();
    let mut chosen: Vec<Vertex> = Vec::with_capacity(instance.d());
    build_block(instance, 1, instance.d(), &mut chosen, &mut facets);
    Complex::new(instance.clone(), facets).expect("generated facets satisfy the constraints")
}

fn build_block(
    instance: &Instance,
    block: usize,
    remaining: usize,
    chosen: &mut Vec<Vertex>,
    out: &mut Vec<Facet>,
) {
    if block > instance.m() {
        if remaining == 0 {
            out.push(Facet::new(chosen.clone()).unwrap());
        }
        return;
    }
    // Capacity still reachable from the later blocks.
    let later: usize = (block + 1..=instance.m())
        .map(|b| instance.capacity(b))
        .sum();
    let lo = remaining.saturating_sub(later);
    let hi = instance.capacity(block).min(remaining);
    let verts = instance.block_vertices(block);
    for k in lo..=hi {
        for combo in verts.iter().copied().combinations(k) {
            chosen.extend(&combo);
            build_block(instance, block + 1, remaining - k, chosen, out);
            chosen.truncate(chosen.len() - k);
        }
    }
}

/// All faces of the simplex on `verts`, including the empty face.
pub fn full_simplex(verts: &[Vertex]) -> FaceSet {
    let mut out = FaceSet::new();
    for size in 0..=verts.len() {
        for combo in verts.iter().copied().combinations(size) {
            out.insert(combo);
        }
    }
    out
}

/// Downward closure of a set of facets, including the empty face.
pub fn closure<'a>(facets: impl IntoIterator<Item = &'a Facet>) -> FaceSet {
    let mut out = FaceSet::new();
    for f in facets {
        let vs = f.vertices();
        for mask in 0..(1u64 << vs.len()) {
            let face: Face = vs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            out.insert(face);
        }
    }
    out
}

/// Join of two face sets on disjoint vertex sets: all unions `t1 ∪ t2`.
pub fn join(d1: &FaceSet, d2: &FaceSet) -> Result<FaceSet> {
    let support1: BTreeSet<Vertex> = d1.iter().flatten().copied().collect();
    if d2.iter().flatten().any(|v| support1.contains(v)) {
        return Err(Error::Input("join requires disjoint vertex sets".into()));
    }
    let mut out = FaceSet::new();
    for t1 in d1 {
        for t2 in d2 {
            let mut face: Face = t1.iter().chain(t2).copied().collect();
            face.sort();
            out.insert(face);
        }
    }
    Ok(out)
}

/// Faces of cardinality at most `k` (dimension strictly below `k`).
pub fn skeleton(faces: &FaceSet, k: usize) -> FaceSet {
    faces.iter().filter(|f| f.len() <= k).cloned().collect()
}

/// Face counts by cardinality: entry `j` counts the `j`-element faces
/// (the `(j-1)`-dimensional ones), so entry 0 counts the empty face.
pub fn f_vector_of_faces(faces: &FaceSet) -> Vec<i64> {
    let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
    for f in faces {
        *counts.entry(f.len()).or_insert(0) += 1;
    }
    let top = counts.keys().next_back().copied().unwrap_or(0);
    (0..=top)
        .map(|j| counts.get(&j).copied().unwrap_or(0))
        .collect()
}

pub fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// The h-vector determined by `sum h_i x^{d-i} = sum f_{i-1} (x-1)^{d-i}`,
/// in exact integer arithmetic. `f` is `(f_{-1}, f_0, ..., f_{d-1})` with
/// `f_{-1} = 1`. Negative entries are legitimate output (they signal non-CM
/// input) and are not an error.
pub fn h_from_f(f: &[i64], d: usize) -> Result<Vec<i64>> {
    if f.len() != d + 1 {
        return Err(Error::Input(format!(
            "f-vector must have length d+1 = {}, got {}",
            d + 1,
            f.len()
        )));
    }
    if f[0] != 1 {
        return Err(Error::Input(format!("f_-1 must be 1, got {}", f[0])));
    }
    let h = (0..=d)
        .map(|i| {
            (0..=i)
                .map(|j| {
                    let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - j, i - j) * f[j]
                })
                .sum()
        })
        .collect();
    Ok(h)
}
