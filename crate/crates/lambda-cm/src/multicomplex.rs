//! Capacity-bounded monomial posets, multicomplexes, and `(0)`-compression.
//!
//! `S` consists of the monomials `μ = μ_{X_0} μ_{X_1} ... μ_{X_m}` with
//! `deg μ <= d` and `deg μ_{X_i} <= a_i` for `i >= 1` (block 0 is
//! unconstrained beyond the total degree). A multicomplex is a finite
//! monomial set closed under divisibility.
//!
//! The compression operator [`compress_i`] fixes the part of each member
//! outside `X_0 ∪ X_i` and replaces every fiber by the revlex-greatest
//! monomials of the same degrees, yielding a `(0,i)`-compressed multicomplex
//! with the same degree counts. Cycling over the blocks until nothing moves
//! ([`compress`]) produces a `(0)`-compressed multicomplex; termination is
//! guarded by the product-of-members potential, whose revlex value cannot
//! decrease at fixed degree.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ground::{revlex_mono_order, Instance, Monomial};

/// The poset of capacity-bounded monomials on blocks `X_0..X_m`.
///
/// `caps[b]` bounds the degree of the block-`b` part; a cap of at least
/// `max_degree` is effectively infinite. For an [`Instance`] the caps are
/// `(∞, a_1, ..., a_m)` and `max_degree = d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialPoset {
    shape: Vec<usize>,
    caps: Vec<usize>,
    max_degree: usize,
}

impl MonomialPoset {
    pub fn new(instance: &Instance) -> Self {
        let shape = instance.var_shape();
        let mut caps = vec![instance.d()];
        caps.extend_from_slice(instance.a());
        MonomialPoset {
            shape,
            caps,
            max_degree: instance.d(),
        }
    }

    /// A poset with explicit per-block caps, untied to any instance.
    pub fn with_shape(shape: Vec<usize>, caps: Vec<usize>, max_degree: usize) -> Self {
        assert_eq!(shape.len(), caps.len());
        MonomialPoset {
            shape,
            caps,
            max_degree,
        }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn num_blocks(&self) -> usize {
        self.shape.len()
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(&self.shape)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.shape() == self.shape
            && m.degree() <= self.max_degree
            && (0..self.shape.len()).all(|b| m.block_degree(b) <= self.caps[b])
    }

    /// All members in canonical order: degree ascending, revlex descending
    /// within a degree.
    pub fn enumerate(&self) -> Vec<Monomial> {
        let mut out: BTreeSet<Monomial> = BTreeSet::new();
        let all: Vec<usize> = (0..self.shape.len()).collect();
        for j in 0..=self.max_degree {
            out.extend(self.stratum(&all, j));
        }
        out.into_iter().collect()
    }

    pub fn len(&self) -> usize {
        self.enumerate().len()
    }

    pub fn is_empty(&self) -> bool {
        false // 1 is always a member
    }

    /// Degree-`j` members supported on the given blocks, revlex-descending.
    pub fn stratum(&self, blocks: &[usize], degree: usize) -> Vec<Monomial> {
        let mut set: BTreeSet<Monomial> = BTreeSet::new();
        let mut exp: Vec<Vec<u32>> = self.shape.iter().map(|&s| vec![0; s]).collect();
        self.stratum_rec(blocks, 0, degree, &mut exp, &mut set);
        set.into_iter().collect()
    }

    fn stratum_rec(
        &self,
        blocks: &[usize],
        idx: usize,
        remaining: usize,
        exp: &mut Vec<Vec<u32>>,
        out: &mut BTreeSet<Monomial>,
    ) {
        if idx == blocks.len() {
            if remaining == 0 {
                out.insert(Monomial::from_exponents(exp.clone()));
            }
            return;
        }
        let b = blocks[idx];
        let cap = self.caps[b].min(remaining);
        for d_b in 0..=cap {
            for e in block_exponents(self.shape[b], d_b) {
                exp[b] = e;
                self.stratum_rec(blocks, idx + 1, remaining - d_b, exp, out);
            }
            exp[b] = vec![0; self.shape[b]];
        }
    }
}

/// All exponent vectors of the given length with the given sum.
fn block_exponents(len: usize, total: usize) -> Vec<Vec<u32>> {
    fn rec(len: usize, pos: usize, remaining: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == len {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for t in 0..=remaining {
            cur[pos] = t as u32;
            rec(len, pos + 1, remaining - t, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if len == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    let mut cur = vec![0u32; len];
    rec(len, 0, total, &mut cur, &mut out);
    out
}

/// A finite monomial set; [`is_multicomplex`] checks divisibility closure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multicomplex {
    monomials: BTreeSet<Monomial>,
}

impl Multicomplex {
    /// Wrap a monomial set as-is (no closure is taken).
    pub fn new(monomials: impl IntoIterator<Item = Monomial>) -> Self {
        Multicomplex {
            monomials: monomials.into_iter().collect(),
        }
    }

    /// The divisibility closure of a set of generators.
    pub fn from_generators(generators: impl IntoIterator<Item = Monomial>) -> Self {
        let mut monomials = BTreeSet::new();
        for g in generators {
            monomials.extend(g.divisors());
        }
        Multicomplex { monomials }
    }

    /// Members in canonical order (degree ascending, revlex descending).
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn as_set(&self) -> &BTreeSet<Monomial> {
        &self.monomials
    }

    /// Degree counts `(F_0, ..., F_d)`.
    pub fn f_vector(&self, d: usize) -> Vec<i64> {
        let mut counts = vec![0i64; d + 1];
        for m in &self.monomials {
            counts[m.degree()] += 1;
        }
        counts
    }
}

/// Is the set closed under divisibility? Checking the immediate divisors
/// (one exponent lowered by one) suffices for a finite set.
pub fn is_multicomplex(set: &BTreeSet<Monomial>) -> bool {
    set.iter().all(|m| {
        let exp = m.exponents();
        (0..exp.len()).all(|b| {
            (0..exp[b].len()).all(|k| {
                if exp[b][k] == 0 {
                    return true;
                }
                let mut e: Vec<Vec<u32>> = exp.to_vec();
                e[b][k] -= 1;
                set.contains(&Monomial::from_exponents(e))
            })
        })
    })
}

fn check_membership(poset: &MonomialPoset, m: &Multicomplex) -> Result<()> {
    if let Some(out) = m.monomials().find(|mono| !poset.contains(mono)) {
        return Err(Error::Input(format!(
            "monomial {out} lies outside the poset"
        )));
    }
    if !is_multicomplex(&m.monomials) {
        return Err(Error::Input("set is not closed under divisibility".into()));
    }
    Ok(())
}

/// Compress block `i`: fix the part of each member outside `X_0 ∪ X_i` and
/// replace each fiber by the revlex-greatest monomials of the same degree
/// counts. The result is a `(0,i)`-compressed multicomplex with the same
/// degree counts.
pub fn compress_i(poset: &MonomialPoset, m: &Multicomplex, i: usize) -> Result<Multicomplex> {
    if i == 0 || i >= poset.num_blocks() {
        return Err(Error::Input(format!("block index {i} out of range")));
    }
    check_membership(poset, m)?;

    let part_blocks = [0usize, i];
    let mut fibers: BTreeMap<Monomial, Vec<Monomial>> = BTreeMap::new();
    for mono in m.monomials() {
        let nu = mono.restrict_blocks(|b| b != 0 && b != i);
        let part = mono.restrict_blocks(|b| b == 0 || b == i);
        fibers.entry(nu).or_default().push(part);
    }

    let mut strata: BTreeMap<usize, Vec<Monomial>> = BTreeMap::new();
    let mut out = BTreeSet::new();
    for (nu, parts) in fibers {
        let mut per_degree: BTreeMap<usize, usize> = BTreeMap::new();
        for p in &parts {
            *per_degree.entry(p.degree()).or_insert(0) += 1;
        }
        let mut replaced: BTreeSet<Monomial> = BTreeSet::new();
        for (&j, &count) in &per_degree {
            let stratum = strata
                .entry(j)
                .or_insert_with(|| poset.stratum(&part_blocks, j));
            debug_assert!(count <= stratum.len());
            replaced.extend(stratum[..count].iter().cloned());
        }
        // The initial-segment fiber is itself a multicomplex.
        debug_assert!(is_multicomplex(&replaced));
        out.extend(replaced.iter().map(|p| p.mul(&nu)));
    }
    Ok(Multicomplex { monomials: out })
}

/// Is `m` `(0,i)`-compressed: whenever `μ` is a member and `μ' ∈ S` has the
/// same degree, the same part outside `X_0 ∪ X_i`, and a revlex-greater
/// `X_0 ∪ X_i` part, `μ'` is a member too. Brute force over all pairs.
pub fn is_0i_compressed(poset: &MonomialPoset, m: &Multicomplex, i: usize) -> bool {
    let everything = poset.enumerate();
    m.monomials().all(|mu| {
        let nu = mu.restrict_blocks(|b| b != 0 && b != i);
        let part = mu.restrict_blocks(|b| b == 0 || b == i);
        everything.iter().all(|cand| {
            if m.contains(cand) || cand.degree() != mu.degree() {
                return true;
            }
            if cand.restrict_blocks(|b| b != 0 && b != i) != nu {
                return true;
            }
            let cand_part = cand.restrict_blocks(|b| b == 0 || b == i);
            revlex_mono_order(&cand_part, &part) != std::cmp::Ordering::Greater
        })
    })
}

/// `(0,i)`-compressed for every block `i`.
pub fn is_0_compressed(poset: &MonomialPoset, m: &Multicomplex) -> bool {
    (1..poset.num_blocks()).all(|i| is_0i_compressed(poset, m, i))
}

/// Cycle [`compress_i`] over `i = 1..=m` until a full cycle changes nothing.
/// The result is `(0)`-compressed with the same degree counts.
pub fn compress(poset: &MonomialPoset, m: &Multicomplex) -> Result<Multicomplex> {
    check_membership(poset, m)?;
    let num_vars: usize = poset.shape().iter().sum();
    let cap = m.len() * (num_vars + 1) + 8;
    let mut current = m.clone();
    for _ in 0..cap {
        let before = current.clone();
        for i in 1..poset.num_blocks() {
            current = compress_i(poset, &current, i)?;
        }
        if current == before {
            return Ok(current);
        }
    }
    Err(Error::IterationCap(format!(
        "compression did not stabilize within {cap} cycles"
    )))
}

/// The product of all members. The compression operator preserves its degree
/// and cannot decrease its revlex value.
pub fn potential(poset: &MonomialPoset, m: &Multicomplex) -> Monomial {
    m.monomials().fold(poset.one(), |acc, x| acc.mul(x))
}
