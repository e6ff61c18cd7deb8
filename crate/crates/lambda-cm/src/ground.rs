//! Blocked ground sets and the reverse-lexicographic orders.
//!
//! An [`Instance`] fixes the parameters `(m, n, a, d)`. The vertex set splits
//! into blocks `V_1, ..., V_m` with `|V_i| = n_i`; the variable set into
//! blocks `X_0, X_1, ..., X_m` with `|X_0| = (sum a_i) - d` and
//! `|X_i| = n_i - a_i`. Both are totally ordered block-major, rank 1 first:
//! `u > v` (written `u ≻ v` in comments) iff `u` lies in an earlier block, or
//! in the same block with a smaller rank. All of `X_0` precedes `X_1`, and so
//! on.
//!
//! The derived `Ord` impls on [`Vertex`] and [`Variable`] compare
//! `(block, rank)` lexicographically, which is exactly the ≻-descending
//! reading order: sorting ascending lists the ≻-greatest element first.

use std::cmp::Ordering;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Parameters `(m, n, a, d)` and the block layout they induce.
///
/// Invariants enforced at construction: `n_i >= a_i > 0` for all blocks and
/// `1 <= d <= sum a_i`, so the derived size `|X_0| = (sum a_i) - d` is
/// nonnegative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Instance {
    n: Vec<usize>,
    a: Vec<usize>,
    d: usize,
}

impl Instance {
    pub fn new(n: Vec<usize>, a: Vec<usize>, d: usize) -> Result<Self> {
        if n.is_empty() {
            return Err(Error::InvalidInstance("need at least one block".into()));
        }
        if n.len() != a.len() {
            return Err(Error::InvalidInstance(format!(
                "n has {} blocks but a has {}",
                n.len(),
                a.len()
            )));
        }
        for (i, (&ni, &ai)) in n.iter().zip(&a).enumerate() {
            if ai == 0 || ai > ni {
                return Err(Error::InvalidInstance(format!(
                    "block {}: need n_i >= a_i > 0, got n_i={}, a_i={}",
                    i + 1,
                    ni,
                    ai
                )));
            }
        }
        let a_sum: usize = a.iter().sum();
        if d == 0 || d > a_sum {
            return Err(Error::InvalidInstance(format!(
                "need 1 <= d <= sum a_i = {}, got d={}",
                a_sum, d
            )));
        }
        Ok(Instance { n, a, d })
    }

    /// Number of blocks.
    pub fn m(&self) -> usize {
        self.n.len()
    }

    /// Block sizes `n_1..n_m`.
    pub fn n(&self) -> &[usize] {
        &self.n
    }

    /// Capacities `a_1..a_m`.
    pub fn a(&self) -> &[usize] {
        &self.a
    }

    /// Facet size.
    pub fn d(&self) -> usize {
        self.d
    }

    /// `|V_i|` for a 1-based block index.
    pub fn block_size(&self, block: usize) -> usize {
        self.n[block - 1]
    }

    /// `a_i` for a 1-based block index.
    pub fn capacity(&self, block: usize) -> usize {
        self.a[block - 1]
    }

    pub fn n_sum(&self) -> usize {
        self.n.iter().sum()
    }

    pub fn a_sum(&self) -> usize {
        self.a.iter().sum()
    }

    /// `|X_0| = (sum a_i) - d`.
    pub fn x0_size(&self) -> usize {
        self.a_sum() - self.d
    }

    /// Size of variable block `b` (0-based; block 0 is `X_0`).
    pub fn var_block_size(&self, b: usize) -> usize {
        if b == 0 {
            self.x0_size()
        } else {
            self.n[b - 1] - self.a[b - 1]
        }
    }

    /// Sizes of `X_0..X_m` in block order; the shape of every [`Monomial`]
    /// attached to this instance.
    pub fn var_shape(&self) -> Vec<usize> {
        (0..=self.m()).map(|b| self.var_block_size(b)).collect()
    }

    /// All vertices in ≻-descending order.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.n_sum());
        for block in 1..=self.m() {
            out.extend(self.block_vertices(block));
        }
        out
    }

    /// The vertices of `V_i` in ≻-descending order (rank 1 first).
    pub fn block_vertices(&self, block: usize) -> Vec<Vertex> {
        (1..=self.block_size(block))
            .map(|rank| Vertex { block, rank })
            .collect()
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        v.block >= 1 && v.block <= self.m() && v.rank >= 1 && v.rank <= self.block_size(v.block)
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "{v} is not a vertex of this instance"
            )))
        }
    }

    /// Total order ≻ on vertices, validated against this instance.
    ///
    /// Returns `Greater` iff `u ≻ v`.
    pub fn vertex_cmp(&self, u: Vertex, v: Vertex) -> Result<Ordering> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(vertex_order(u, v))
    }

    /// Reverse-lexicographic order on equal-size vertex sets, validated.
    ///
    /// Inputs must be strictly sorted ascending in the natural (`Ord`) order.
    /// Returns `Greater` iff `s ≻ t`.
    pub fn revlex_set_cmp(&self, s: &[Vertex], t: &[Vertex]) -> Result<Ordering> {
        if s.len() != t.len() {
            return Err(Error::Input(format!(
                "revlex set comparison needs equal sizes, got {} and {}",
                s.len(),
                t.len()
            )));
        }
        for list in [s, t] {
            for v in list {
                self.check_vertex(*v)?;
            }
            if !list.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Input("vertex set must be strictly sorted".into()));
            }
        }
        Ok(revlex_set_order(s, t))
    }

    /// Homogeneous reverse-lexicographic order on equal-degree monomials,
    /// validated against this instance's variable shape.
    ///
    /// Returns `Greater` iff `m1 ≻ m2`.
    pub fn revlex_mono_cmp(&self, m1: &Monomial, m2: &Monomial) -> Result<Ordering> {
        let shape = self.var_shape();
        for m in [m1, m2] {
            if m.shape() != shape {
                return Err(Error::Input(format!(
                    "monomial shape {:?} does not match instance shape {:?}",
                    m.shape(),
                    shape
                )));
            }
        }
        if m1.degree() != m2.degree() {
            return Err(Error::Input(format!(
                "revlex comparison needs equal degrees, got {} and {}",
                m1.degree(),
                m2.degree()
            )));
        }
        Ok(revlex_mono_order(m1, m2))
    }
}

impl Serialize for Instance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            n: &'a [usize],
            a: &'a [usize],
            d: usize,
        }
        Raw {
            n: &self.n,
            a: &self.a,
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: Vec<usize>,
            a: Vec<usize>,
            d: usize,
        }
        let raw = Raw::deserialize(d)?;
        Instance::new(raw.n, raw.a, raw.d).map_err(D::Error::custom)
    }
}

/// A vertex `v[i,k]`: block `i` in `1..=m`, rank `k` in `1..=n_i`.
///
/// Rank 1 is the ≻-greatest vertex of its block. The derived `Ord` is the
/// `(block, rank)` reading order, i.e. the reverse of ≻.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vertex {
    pub block: usize,
    pub rank: usize,
}

impl Vertex {
    pub fn new(block: usize, rank: usize) -> Self {
        Vertex { block, rank }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v[{},{}]", self.block, self.rank)
    }
}

// Serialized as a `[block, rank]` pair.
impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.block, self.rank).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (block, rank) = <(usize, usize)>::deserialize(d)?;
        if block == 0 || rank == 0 {
            return Err(D::Error::custom("vertex block and rank are 1-based"));
        }
        Ok(Vertex { block, rank })
    }
}

/// Total order ≻ on vertices: `u ≻ v` iff `u` is in an earlier block, or in
/// the same block with smaller rank. Returns `Greater` iff `u ≻ v`.
pub fn vertex_order(u: Vertex, v: Vertex) -> Ordering {
    u.cmp(&v).reverse()
}

/// A variable `x[b,k]`: block `b` in `0..=m` (block 0 is `X_0`), rank `k`.
///
/// Ordered exactly like vertices: block-major, rank 1 first, all of `X_0`
/// before `X_1, ..., X_m`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Variable {
    pub block: usize,
    pub rank: usize,
}

impl Variable {
    pub fn new(block: usize, rank: usize) -> Self {
        Variable { block, rank }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{}]", self.block, self.rank)
    }
}

impl Serialize for Variable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.block, self.rank).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Variable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (block, rank) = <(usize, usize)>::deserialize(d)?;
        Ok(Variable { block, rank })
    }
}

/// Total order ≻ on variables. Returns `Greater` iff `u ≻ v`.
pub fn variable_order(u: Variable, v: Variable) -> Ordering {
    u.cmp(&v).reverse()
}

/// A monomial as per-block exponent vectors, blocks `0..=m` in order.
///
/// The shape (number of entries per block) is carried implicitly by the
/// vector lengths; `μ_Y` for a union of blocks `Y` is obtained by zeroing the
/// other blocks.
///
/// `Ord` sorts by total degree ascending, then reverse-lexicographically
/// descending within a degree: ascending iteration of a sorted container
/// lists monomials in the canonical order used throughout (degree by degree,
/// revlex-greatest first).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Monomial {
    exp: Vec<Vec<u32>>,
}

impl Monomial {
    /// The monomial 1 for per-block variable counts `shape`.
    pub fn one(shape: &[usize]) -> Self {
        Monomial {
            exp: shape.iter().map(|&s| vec![0; s]).collect(),
        }
    }

    pub fn from_exponents(exp: Vec<Vec<u32>>) -> Self {
        Monomial { exp }
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exp
    }

    pub fn shape(&self) -> Vec<usize> {
        self.exp.iter().map(Vec::len).collect()
    }

    pub fn is_one(&self) -> bool {
        self.exp.iter().flatten().all(|&e| e == 0)
    }

    pub fn degree(&self) -> usize {
        self.exp.iter().flatten().map(|&e| e as usize).sum()
    }

    /// Degree of the part supported in variable block `b`.
    pub fn block_degree(&self, b: usize) -> usize {
        self.exp[b].iter().map(|&e| e as usize).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.exp[v.block][v.rank - 1]
    }

    /// The part `μ_Y` supported in the blocks selected by `keep`.
    pub fn restrict_blocks(&self, keep: impl Fn(usize) -> bool) -> Monomial {
        let exp = self
            .exp
            .iter()
            .enumerate()
            .map(|(b, es)| {
                if keep(b) {
                    es.clone()
                } else {
                    vec![0; es.len()]
                }
            })
            .collect();
        Monomial { exp }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.shape(), other.shape());
        let exp = self
            .exp
            .iter()
            .zip(&other.exp)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Monomial { exp }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.shape(), other.shape());
        self.exp
            .iter()
            .zip(&other.exp)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x <= y))
    }

    /// All divisors, including 1 and the monomial itself.
    pub fn divisors(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(&self.shape())];
        for (b, es) in self.exp.iter().enumerate() {
            for (k, &e) in es.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
                for base in &out {
                    for take in 0..=e {
                        let mut m = base.clone();
                        m.exp[b][k] = take;
                        next.push(m);
                    }
                }
                out = next;
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (b, es) in self.exp.iter().enumerate() {
            for (k, &e) in es.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "x[{},{}]", b, k + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Homogeneous reverse-lexicographic order on monomials of equal degree and
/// shape: scan variables from the ≻-smallest upward; at the first
/// disagreement the monomial with the smaller exponent is the larger one.
/// Returns `Greater` iff `m1 ≻ m2`.
pub fn revlex_mono_order(m1: &Monomial, m2: &Monomial) -> Ordering {
    debug_assert_eq!(m1.shape(), m2.shape());
    debug_assert_eq!(m1.degree(), m2.degree());
    for (a, b) in m1.exp.iter().rev().zip(m2.exp.iter().rev()) {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            match x.cmp(y) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
    }
    Ordering::Equal
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| revlex_mono_order(self, other).reverse())
    }
}

/// Reverse-lexicographic order on equal-size vertex sets: `s ≻ t` iff the
/// ≻-least element of the symmetric difference lies in `t`. Inputs must be
/// strictly sorted in natural (`Ord`) order. Returns `Greater` iff `s ≻ t`.
pub fn revlex_set_order(s: &[Vertex], t: &[Vertex]) -> Ordering {
    debug_assert_eq!(s.len(), t.len());
    // Scan from the ≻-least side; the first mismatch is the ≻-least element
    // of the symmetric difference.
    let mut i = s.len();
    let mut j = t.len();
    while i > 0 && j > 0 {
        match s[i - 1].cmp(&t[j - 1]) {
            Ordering::Equal => {
                i -= 1;
                j -= 1;
            }
            // s's element is ≻-less and lies only in s, so t ≻ s.
            Ordering::Greater => return Ordering::Less,
            Ordering::Less => return Ordering::Greater,
        }
    }
    Ordering::Equal
}
