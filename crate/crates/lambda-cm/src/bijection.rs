//! The mutually inverse maps between facets of `Lambda` and monomials of `S`.
//!
//! The single-block map `phi` sends an `a`-subset `{v_1..v_t, v_{i_1}..v_{i_s}}`
//! of an ordered vertex list (maximal initial run of length `t`, then gaps)
//! to `x_{i_1-(t+1)} x_{i_2-(t+2)} ... x_{i_s-(t+s)}`; `psi = sigma ∪ rho`
//! reverses it. The global map `Phi` applies `phi` blockwise after
//! saturating each block part ([`saturate_block`]), then once more across the leftover
//! initial segments (`V[τ]`) to produce the `X_0` part. `Psi` mirrors this.
//!
//! [`back_facet`] realizes the exchange step: given a proper face `γ` of `τ`
//! missing part of the restriction, it swaps one missing restriction vertex
//! for the matching gap, producing an earlier facet containing `γ`.
//! [`verify_bijection_theorem`] checks the full divisor-replacement property
//! that makes the preimage of a `(0)`-compressed multicomplex shellable.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::complex::{Complex, Facet};
use crate::error::{Error, Result};
use crate::ground::{revlex_mono_order, Instance, Monomial, Vertex};
use crate::multicomplex::{is_0_compressed, is_multicomplex, MonomialPoset, Multicomplex};
use crate::shelling::{profile, FacetProfile};

/// One block of the `m = 1` bijection: an ordered vertex list `v_1 ≻ v_2 ≻ ...`
/// and a subset size `a`, mapping `a`-subsets to monomials on `|V| - a`
/// variables.
#[derive(Clone, Debug)]
pub struct BlockMapContext {
    verts: Vec<Vertex>,
    subset_size: usize,
}

impl BlockMapContext {
    /// `verts` must be strictly sorted in natural order (≻-descending).
    pub fn new(verts: Vec<Vertex>, subset_size: usize) -> Result<Self> {
        if subset_size > verts.len() {
            return Err(Error::Input(format!(
                "subset size {} exceeds vertex count {}",
                subset_size,
                verts.len()
            )));
        }
        if !verts.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Input(
                "context vertices must be strictly sorted".into(),
            ));
        }
        Ok(BlockMapContext { verts, subset_size })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn subset_size(&self) -> usize {
        self.subset_size
    }

    pub fn num_vars(&self) -> usize {
        self.verts.len() - self.subset_size
    }

    /// 1-based positions of `subset` inside the context list.
    fn positions(&self, subset: &[Vertex]) -> Result<Vec<usize>> {
        subset
            .iter()
            .map(|v| {
                self.verts
                    .binary_search(v)
                    .map(|p| p + 1)
                    .map_err(|_| Error::Input(format!("{v} is not in the context")))
            })
            .collect()
    }
}

/// The block map: subset `{v_1..v_t} ∪ {v_{i_1}..v_{i_s}}` (maximal initial
/// run of length `t`) goes to the exponent vector of
/// `x_{i_1-(t+1)} ... x_{i_s-(t+s)}`. Returns one exponent per variable.
pub fn phi_block(ctx: &BlockMapContext, subset: &[Vertex]) -> Result<Vec<u32>> {
    if subset.len() != ctx.subset_size {
        return Err(Error::Input(format!(
            "phi needs a subset of size {}, got {}",
            ctx.subset_size,
            subset.len()
        )));
    }
    let mut pos = ctx.positions(subset)?;
    pos.sort();
    if pos.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Input("subset has repeated vertices".into()));
    }
    let run = pos
        .iter()
        .enumerate()
        .take_while(|(j, &p)| p == j + 1)
        .count();
    let mut exps = vec![0u32; ctx.num_vars()];
    for (j, &p) in pos.iter().enumerate().skip(run) {
        // Variable index i_j - (t + j), 1-based.
        exps[p - (j + 1) - 1] += 1;
    }
    Ok(exps)
}

/// The inverse block map, split into its two parts: for
/// `μ = x_{i_1} ... x_{i_s}` with `i_1 <= ... <= i_s`,
/// `sigma = {v_1, ..., v_{a-s}}` and `rho = {v_{i_l + a - (s-l)} : l}`.
pub fn psi_block(ctx: &BlockMapContext, exps: &[u32]) -> Result<(Vec<Vertex>, Vec<Vertex>)> {
    if exps.len() != ctx.num_vars() {
        return Err(Error::Input(format!(
            "psi needs {} exponents, got {}",
            ctx.num_vars(),
            exps.len()
        )));
    }
    let degree: usize = exps.iter().map(|&e| e as usize).sum();
    let a = ctx.subset_size;
    if degree > a {
        return Err(Error::Input(format!(
            "degree {degree} exceeds subset size {a}"
        )));
    }
    let mut indices = Vec::with_capacity(degree);
    for (k, &e) in exps.iter().enumerate() {
        indices.extend(std::iter::repeat_n(k + 1, e as usize));
    }
    let sigma: Vec<Vertex> = ctx.verts[..a - degree].to_vec();
    let rho: Vec<Vertex> = indices
        .iter()
        .enumerate()
        .map(|(l0, &i)| ctx.verts[i + a - (degree - (l0 + 1)) - 1])
        .collect();
    Ok((sigma, rho))
}

/// The revlex-first `a_i`-subset of `V_i` containing `τ ∩ V_i`: pad with the
/// ≻-greatest missing vertices of the block.
pub fn saturate_block(instance: &Instance, facet: &Facet, block: usize) -> Vec<Vertex> {
    let mut part = facet.block_part(block);
    let need = instance.capacity(block) - part.len();
    let padding: Vec<Vertex> = instance
        .block_vertices(block)
        .into_iter()
        .filter(|v| !facet.contains(*v))
        .take(need)
        .collect();
    part.extend(padding);
    part.sort();
    part
}

/// The facet-to-monomial map `Phi`.
pub fn phi(instance: &Instance, facet: &Facet) -> Result<Monomial> {
    if !instance.is_facet(facet) {
        return Err(Error::Input(
            "not a facet of Lambda for this instance".into(),
        ));
    }
    let m = instance.m();
    let mut exp: Vec<Vec<u32>> = Vec::with_capacity(m + 1);
    exp.push(Vec::new()); // block 0 filled last
    let mut added: Vec<usize> = Vec::with_capacity(m + 1);
    for i in 1..=m {
        let ctx = BlockMapContext::new(instance.block_vertices(i), instance.capacity(i))?;
        let exps = phi_block(&ctx, &saturate_block(instance, facet, i))?;
        added.push(exps.iter().map(|&e| e as usize).sum());
        exp.push(exps);
    }

    // V[τ]: the first a_i - deg(Phi_i) vertices of each block.
    let mut v_tau: Vec<Vertex> = Vec::new();
    for i in 1..=m {
        let keep = instance.capacity(i) - added[i - 1];
        v_tau.extend(instance.block_vertices(i).into_iter().take(keep));
    }
    v_tau.sort();
    let tau0: Vec<Vertex> = v_tau
        .iter()
        .copied()
        .filter(|&v| facet.contains(v))
        .collect();
    // |V[τ]| - |τ[0]| = |X_0| always holds for facets of Lambda.
    assert_eq!(v_tau.len() - tau0.len(), instance.x0_size());
    let ctx0 = BlockMapContext::new(v_tau, tau0.len())?;
    exp[0] = phi_block(&ctx0, &tau0)?;
    Ok(Monomial::from_exponents(exp))
}

/// The monomial-to-facet map `Psi`.
pub fn psi(instance: &Instance, mu: &Monomial) -> Result<Facet> {
    let poset = MonomialPoset::new(instance);
    if !poset.contains(mu) {
        return Err(Error::Input(format!("{mu} is not in S for this instance")));
    }
    let m = instance.m();
    let mut verts: BTreeSet<Vertex> = BTreeSet::new();
    let mut v_mu: Vec<Vertex> = Vec::new();
    for i in 1..=m {
        let ctx = BlockMapContext::new(instance.block_vertices(i), instance.capacity(i))?;
        let (_, rho) = psi_block(&ctx, &mu.exponents()[i])?;
        verts.extend(rho);
        let keep = instance.capacity(i) - mu.block_degree(i);
        v_mu.extend(instance.block_vertices(i).into_iter().take(keep));
    }
    v_mu.sort();
    let a0 = v_mu.len() - instance.x0_size();
    let ctx0 = BlockMapContext::new(v_mu, a0)?;
    let (sigma, rho) = psi_block(&ctx0, &mu.exponents()[0])?;
    verts.extend(sigma);
    verts.extend(rho);
    let facet = Facet::new(verts.into_iter().collect())?;
    // Capacity constraints are a consequence, not an assumption; check them
    // rather than trust.
    assert!(
        instance.is_facet(&facet),
        "Psi produced a non-facet for {mu}"
    );
    Ok(facet)
}

/// The exchange facet for a specific choice of restriction vertex `v`: swap
/// `v` for the global gap if `v` is in the tail, else for the first gap of
/// `v`'s block.
fn exchange_facet(facet: &Facet, prof: &FacetProfile, v: Vertex) -> Result<Facet> {
    let w = if prof.tail.contains(&v) {
        prof.gap.expect("a nonempty tail implies a gap")
    } else if prof.up.contains(&v) {
        prof.first_gaps[&v.block]
    } else {
        return Err(Error::Input(format!("{v} is not in the restriction")));
    };
    facet.swap(v, w)
}

/// The swap facet `(τ - v) ∪ w` for the ≻-greatest restriction vertex `v`
/// outside `γ`: a facet of `Lambda` containing `γ` and ≻-earlier than `τ`.
pub fn back_facet(instance: &Instance, facet: &Facet, gamma: &BTreeSet<Vertex>) -> Result<Facet> {
    if !gamma.iter().all(|&v| facet.contains(v)) || gamma.len() >= facet.len() {
        return Err(Error::Input(
            "gamma must be a proper subset of the facet".into(),
        ));
    }
    let prof = profile(instance, facet)?;
    let restriction = prof.restriction();
    // Natural minimum = ≻-greatest.
    let v = restriction
        .iter()
        .copied()
        .find(|v| !gamma.contains(v))
        .ok_or_else(|| Error::Input("gamma contains the whole restriction".into()))?;
    let swapped = exchange_facet(facet, &prof, v)?;
    debug_assert!(instance.is_facet(&swapped));
    debug_assert!(gamma.iter().all(|&u| swapped.contains(u)));
    debug_assert!(swapped < *facet, "swap facet must be ≻-earlier");
    Ok(swapped)
}

/// The complex whose facets are the `Psi`-images of a `(0)`-compressed
/// multicomplex. It is shellable with h-vector equal to the degree counts of
/// the multicomplex.
pub fn gamma_from_multicomplex(instance: &Instance, m: &Multicomplex) -> Result<Complex> {
    let poset = MonomialPoset::new(instance);
    if let Some(out) = m.monomials().find(|mono| !poset.contains(mono)) {
        return Err(Error::Input(format!("monomial {out} lies outside S")));
    }
    if !is_multicomplex(m.as_set()) {
        return Err(Error::Input("set is not closed under divisibility".into()));
    }
    if !is_0_compressed(&poset, m) {
        return Err(Error::Input("multicomplex is not (0)-compressed".into()));
    }
    let facets: Vec<Facet> = m
        .monomials()
        .map(|mono| psi(instance, mono))
        .collect::<Result<_>>()?;
    Complex::new(instance.clone(), facets)
}

/// A counterexample to the divisor-replacement property.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremWitness {
    pub facet: Facet,
    pub gamma: Vec<Vertex>,
    pub removed: Vertex,
    pub reason: String,
}

/// Outcome of checking the divisor-replacement property on every facet.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub facets_checked: usize,
    pub exchanges_checked: usize,
    pub failures: Vec<TheoremWitness>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every facet `τ`, every proper `γ ⊂ τ` missing part of the
/// restriction, and every eligible restriction vertex `v` (not only the
/// canonical ≻-greatest choice), check that the exchange facet `τ'` contains
/// `γ`, precedes `τ`, and that some divisor `μ''` of `Phi(τ)` and block `i`
/// satisfy: equal degree with `Phi(τ')`, equal parts outside `X_0 ∪ X_i`,
/// and `Phi(τ')` revlex-at-least `μ''` on `X_0 ∪ X_i`.
///
/// Refuses instances with more facets than `budget`.
pub fn verify_bijection_theorem(lambda: &Complex, budget: usize) -> Result<TheoremReport> {
    if lambda.facet_count() > budget {
        return Err(Error::Budget(format!(
            "{} facets exceed the budget of {budget}",
            lambda.facet_count()
        )));
    }
    let instance = lambda.instance();
    let m = instance.m();
    let d = instance.d();
    let mut report = TheoremReport {
        facets_checked: 0,
        exchanges_checked: 0,
        failures: Vec::new(),
    };

    for facet in lambda.facets() {
        report.facets_checked += 1;
        let mu = phi(instance, facet)?;
        let divisors = mu.divisors();
        let prof = profile(instance, facet)?;
        let restriction = prof.restriction();
        let verts = facet.vertices();

        for mask in 0..(1u64 << d) - 1 {
            let gamma: BTreeSet<Vertex> = verts
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v)
                .collect();
            if restriction.iter().all(|v| gamma.contains(v)) {
                continue;
            }
            for &v in restriction.iter().filter(|v| !gamma.contains(v)) {
                report.exchanges_checked += 1;
                let mut fail = |reason: String| {
                    report.failures.push(TheoremWitness {
                        facet: facet.clone(),
                        gamma: gamma.iter().copied().collect(),
                        removed: v,
                        reason,
                    });
                };
                let swapped = match exchange_facet(facet, &prof, v) {
                    Ok(s) => s,
                    Err(e) => {
                        fail(format!("exchange failed: {e}"));
                        continue;
                    }
                };
                if !instance.is_facet(&swapped) || !lambda.contains_facet(&swapped) {
                    fail("exchange left Lambda".into());
                    continue;
                }
                if !gamma.iter().all(|&u| swapped.contains(u)) {
                    fail("exchange dropped gamma".into());
                    continue;
                }
                if swapped >= *facet {
                    fail("exchange facet does not precede the original".into());
                    continue;
                }
                let mu_prime = phi(instance, &swapped)?;
                let found = (1..=m).any(|i| {
                    divisors.iter().any(|cand| {
                        cand.degree() == mu_prime.degree()
                            && cand.restrict_blocks(|b| b != 0 && b != i)
                                == mu_prime.restrict_blocks(|b| b != 0 && b != i)
                            && revlex_mono_order(
                                &mu_prime.restrict_blocks(|b| b == 0 || b == i),
                                &cand.restrict_blocks(|b| b == 0 || b == i),
                            ) != std::cmp::Ordering::Less
                    })
                });
                if !found {
                    fail(format!("no divisor of {mu} matches {mu_prime}"));
                }
            }
        }
    }
    Ok(report)
}
