//! End-to-end verification harness.
//!
//! [`verify_instance`] ties the modules together over one instance:
//!
//! 1. every multicomplex in `S` (exhaustively when `S` is small, otherwise a
//!    seeded sample) compresses to a `(0)`-compressed multicomplex with the
//!    same degree counts;
//! 2. the facet preimage of each compressed multicomplex, listed in revlex
//!    order with the closed-form restrictions, passes the shelling
//!    definition and reproduces the degree counts as its h-vector;
//! 3. each of those complexes passes the Cohen-Macaulay oracle;
//! 4. on tiny instances, the set of h-vectors of CM pure full-dimensional
//!    subcomplexes equals the set of degree-count vectors of nonempty
//!    sub-multicomplexes of `S`, by exhaustive enumeration of both sides.
//!
//! Reports are plain data and fully determined by `(instance, seed, config)`.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::complex::{build_lambda, Complex, Facet};
use crate::error::{Error, Result};
use crate::ground::{Instance, Monomial};
use crate::homology::CmChecker;
use crate::multicomplex::{compress, is_0_compressed, MonomialPoset, Multicomplex};
use crate::shelling::{h_from_shelling, restriction, verify_shelling, ShellingRecord};

/// The default verification grid: `m <= 3`, `n_i <= 4`, `sum a_i <= 6`,
/// `1 <= d <= sum a_i`.
pub fn default_grid() -> Vec<Instance> {
    let mut out = Vec::new();
    for m in 1..=3usize {
        let mut n = vec![1usize; m];
        loop {
            push_a_choices(&n, &mut out);
            // Odometer over n in 1..=4 per block.
            let mut k = 0;
            loop {
                if k == m {
                    break;
                }
                if n[k] < 4 {
                    n[k] += 1;
                    break;
                }
                n[k] = 1;
                k += 1;
            }
            if k == m {
                break;
            }
        }
    }
    out
}

fn push_a_choices(n: &[usize], out: &mut Vec<Instance>) {
    let m = n.len();
    let mut a = vec![1usize; m];
    loop {
        let a_sum: usize = a.iter().sum();
        if a_sum <= 6 {
            for d in 1..=a_sum {
                out.push(Instance::new(n.to_vec(), a.clone(), d).expect("grid instance"));
            }
        }
        let mut k = 0;
        loop {
            if k == m {
                return;
            }
            if a[k] < n[k] {
                a[k] += 1;
                break;
            }
            a[k] = 1;
            k += 1;
        }
    }
}

/// Every instance (all block counts, compositions, capacities, facet sizes)
/// with total vertex count at most `limit`. Used by the exhaustive
/// small-scale invariants.
pub fn instances_with_n_sum_at_most(limit: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    let mut n: Vec<usize> = Vec::new();
    fn rec(n: &mut Vec<usize>, remaining: usize, out: &mut Vec<Instance>) {
        if !n.is_empty() {
            let mut a = vec![1usize; n.len()];
            loop {
                let a_sum: usize = a.iter().sum();
                for d in 1..=a_sum {
                    out.push(Instance::new(n.clone(), a.clone(), d).expect("valid"));
                }
                let mut k = 0;
                loop {
                    if k == n.len() {
                        break;
                    }
                    if a[k] < n[k] {
                        a[k] += 1;
                        break;
                    }
                    a[k] = 1;
                    k += 1;
                }
                if k == n.len() {
                    break;
                }
            }
        }
        for next in 1..=remaining {
            n.push(next);
            rec(n, remaining - next, out);
            n.pop();
        }
    }
    rec(&mut n, limit, &mut out);
    out
}

/// Visit every nonempty multicomplex (downset) of the poset in a fixed
/// order. Fails with a budget error if there are more than `cap` of them.
/// Returns the number visited.
pub fn for_each_multicomplex(
    poset: &MonomialPoset,
    cap: usize,
    mut f: impl FnMut(&BTreeSet<Monomial>),
) -> Result<usize> {
    let all = poset.enumerate();
    // Immediate divisors by index; canonical order lists divisors first.
    let divisor_indices: Vec<Vec<usize>> = all
        .iter()
        .map(|mono| {
            let exp = mono.exponents();
            let mut divs = Vec::new();
            for b in 0..exp.len() {
                for k in 0..exp[b].len() {
                    if exp[b][k] > 0 {
                        let mut e: Vec<Vec<u32>> = exp.to_vec();
                        e[b][k] -= 1;
                        let target = Monomial::from_exponents(e);
                        let idx = all.binary_search(&target).expect("divisor is in S");
                        divs.push(idx);
                    }
                }
            }
            divs.sort_unstable();
            divs.dedup();
            divs
        })
        .collect();

    struct State<'a, F: FnMut(&BTreeSet<Monomial>)> {
        all: &'a [Monomial],
        divisor_indices: &'a [Vec<usize>],
        chosen_flags: Vec<bool>,
        chosen: BTreeSet<Monomial>,
        count: usize,
        cap: usize,
        f: F,
    }

    impl<F: FnMut(&BTreeSet<Monomial>)> State<'_, F> {
        fn rec(&mut self, idx: usize) -> Result<()> {
            if idx == self.all.len() {
                if !self.chosen.is_empty() {
                    self.count += 1;
                    if self.count > self.cap {
                        return Err(Error::Budget(format!(
                            "more than {} multicomplexes",
                            self.cap
                        )));
                    }
                    (self.f)(&self.chosen);
                }
                return Ok(());
            }
            self.rec(idx + 1)?;
            if self.divisor_indices[idx]
                .iter()
                .all(|&j| self.chosen_flags[j])
            {
                self.chosen_flags[idx] = true;
                self.chosen.insert(self.all[idx].clone());
                self.rec(idx + 1)?;
                self.chosen.remove(&self.all[idx]);
                self.chosen_flags[idx] = false;
            }
            Ok(())
        }
    }

    let mut state = State {
        all: &all,
        divisor_indices: &divisor_indices,
        chosen_flags: vec![false; all.len()],
        chosen: BTreeSet::new(),
        count: 0,
        cap,
        f: &mut f,
    };
    state.rec(0)?;
    Ok(state.count)
}

/// Collect every nonempty multicomplex of the poset.
pub fn enumerate_multicomplexes(poset: &MonomialPoset, cap: usize) -> Result<Vec<Multicomplex>> {
    let mut out = Vec::new();
    for_each_multicomplex(poset, cap, |set| {
        out.push(Multicomplex::new(set.iter().cloned()))
    })?;
    Ok(out)
}

/// Seeded random multicomplexes: the divisibility closure of up to three
/// uniformly chosen generators.
pub fn sample_multicomplexes(
    poset: &MonomialPoset,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Multicomplex> {
    let all = poset.enumerate();
    (0..count)
        .map(|_| {
            let gens = rng.random_range(1..=3usize);
            Multicomplex::from_generators(
                (0..gens).map(|_| all[rng.random_range(0..all.len())].clone()),
            )
        })
        .collect()
}

/// Knobs for [`verify_instance`]. The defaults match the desk-scale budgets
/// used by the acceptance suite.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Sample size used when `S` is too large to enumerate.
    pub samples: usize,
    /// Enumerate all multicomplexes when `|S|` is at most this.
    pub exhaustive_limit: usize,
    /// Hard cap on the number of enumerated multicomplexes.
    pub enumeration_cap: usize,
    /// Run the extensional h-vector comparison when `Lambda` has at most
    /// this many facets.
    pub extensional_facet_limit: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            samples: 200,
            exhaustive_limit: 60,
            enumeration_cap: 500_000,
            extensional_facet_limit: 14,
        }
    }
}

/// Outcome of one direction of the equivalence check.
#[derive(Clone, Debug, Serialize)]
pub struct DirectionReport {
    pub name: String,
    /// "exhaustive", "sampled", "skipped", or "truncated".
    pub mode: String,
    pub checked: usize,
    pub passed: bool,
    pub elapsed_ms: u128,
    /// A minimal replayable witness for the first failure.
    pub witness: Option<serde_json::Value>,
}

/// The full per-instance report. `status` is "ok", "fail", or "incomplete";
/// `witness` echoes the first failing direction's witness.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub instance: Instance,
    pub seed: u64,
    pub status: String,
    pub witness: Option<serde_json::Value>,
    pub config: VerifyConfig,
    pub directions: Vec<DirectionReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == "ok"
    }
}

/// Run the equivalence checks on one instance. See the module docs for the
/// four directions.
pub fn verify_instance(instance: &Instance, cfg: &VerifyConfig) -> VerificationReport {
    let lambda = build_lambda(instance);
    let poset = MonomialPoset::new(instance);
    let d = instance.d();
    let mut directions = Vec::new();
    let mut checker = CmChecker::new();

    // Direction: multicomplex to compressed multicomplex.
    let start = Instant::now();
    let size = poset.len();
    let exhaustive = size <= cfg.exhaustive_limit;
    let mut compressed_sets: BTreeSet<BTreeSet<Monomial>> = BTreeSet::new();
    let mut checked = 0usize;
    let mut witness: Option<serde_json::Value> = None;
    let mut failed = false;
    let mut truncated = false;

    {
        let mut handle = |m: &Multicomplex| {
            if failed {
                return;
            }
            checked += 1;
            match compress(&poset, m) {
                Ok(c) => {
                    let known = compressed_sets.contains(c.as_set());
                    let f_ok = c.f_vector(d) == m.f_vector(d);
                    let compressed_ok = known || is_0_compressed(&poset, &c);
                    if f_ok && compressed_ok {
                        compressed_sets.insert(c.as_set().clone());
                    } else {
                        failed = true;
                        witness = Some(json!({
                            "monomials": m.monomials().collect::<Vec<_>>(),
                            "compressed": c.monomials().collect::<Vec<_>>(),
                            "f_preserved": f_ok,
                            "compressed_ok": compressed_ok,
                        }));
                    }
                }
                Err(e) => {
                    failed = true;
                    witness = Some(json!({
                        "monomials": m.monomials().collect::<Vec<_>>(),
                        "error": e.to_string(),
                    }));
                }
            }
        };

        if exhaustive {
            let run = for_each_multicomplex(&poset, cfg.enumeration_cap, |set| {
                handle(&Multicomplex::new(set.iter().cloned()))
            });
            if let Err(e) = run {
                truncated = true;
                if witness.is_none() {
                    witness = Some(json!({ "error": e.to_string() }));
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for m in sample_multicomplexes(&poset, cfg.samples, &mut rng) {
                handle(&m);
            }
        }
    }

    let compress_failed = failed;
    directions.push(DirectionReport {
        name: "3to4_compress".into(),
        mode: if truncated {
            "truncated".into()
        } else if exhaustive {
            "exhaustive".into()
        } else {
            "sampled".into()
        },
        checked,
        passed: !compress_failed,
        elapsed_ms: start.elapsed().as_millis(),
        witness,
    });

    // Direction: compressed multicomplex to shelled subcomplex.
    let start = Instant::now();
    let mut witness = None;
    let mut gammas: Vec<(Multicomplex, Complex)> = Vec::new();
    for set in &compressed_sets {
        let m = Multicomplex::new(set.iter().cloned());
        let gamma = match crate::bijection::gamma_from_multicomplex(instance, &m) {
            Ok(g) => g,
            Err(e) => {
                witness = Some(json!({
                    "monomials": m.monomials().collect::<Vec<_>>(),
                    "error": e.to_string(),
                }));
                break;
            }
        };
        let order: Vec<Facet> = gamma.facets().cloned().collect();
        let restrictions = order
            .iter()
            .map(|f| restriction(instance, f).expect("facets of Lambda"))
            .collect();
        let record = ShellingRecord::new(order, restrictions).expect("parallel");
        if let Err(violation) = verify_shelling(&record) {
            witness = Some(json!({
                "monomials": m.monomials().collect::<Vec<_>>(),
                "violation": violation.to_string(),
            }));
            break;
        }
        let h = h_from_shelling(&record, d);
        let f = m.f_vector(d);
        if h != f {
            witness = Some(json!({
                "monomials": m.monomials().collect::<Vec<_>>(),
                "h": h,
                "F": f,
            }));
            break;
        }
        gammas.push((m, gamma));
    }
    directions.push(DirectionReport {
        name: "4to2_shelling".into(),
        mode: "derived".into(),
        checked: compressed_sets.len(),
        passed: witness.is_none(),
        elapsed_ms: start.elapsed().as_millis(),
        witness,
    });

    // Direction: shellable to Cohen-Macaulay.
    let start = Instant::now();
    let mut witness = None;
    for (m, gamma) in &gammas {
        if let Err(failure) = checker.is_cm(gamma) {
            witness = Some(json!({
                "monomials": m.monomials().collect::<Vec<_>>(),
                "failure": format!("{failure:?}"),
            }));
            break;
        }
    }
    directions.push(DirectionReport {
        name: "2to1_cm".into(),
        mode: "derived".into(),
        checked: gammas.len(),
        passed: witness.is_none(),
        elapsed_ms: start.elapsed().as_millis(),
        witness,
    });

    // Extensional comparison of the h-vector and F-vector sets.
    let start = Instant::now();
    let facet_count = lambda.facet_count();
    if facet_count <= cfg.extensional_facet_limit {
        let mut witness = None;
        let mut h_set: BTreeSet<Vec<i64>> = BTreeSet::new();
        let facets: Vec<Facet> = lambda.facets().cloned().collect();
        for mask in 1u64..(1 << facet_count) {
            let subset: Vec<Facet> = facets
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, f)| f.clone())
                .collect();
            let sub = Complex::new(instance.clone(), subset).expect("facets of Lambda");
            if checker.is_cm(&sub).is_ok() {
                h_set.insert(sub.h_vector());
            }
        }
        let mut f_set: BTreeSet<Vec<i64>> = BTreeSet::new();
        let enumerated = for_each_multicomplex(&poset, cfg.enumeration_cap, |set| {
            f_set.insert(Multicomplex::new(set.iter().cloned()).f_vector(d));
        });
        let mut truncated_ext = false;
        if enumerated.is_err() {
            truncated_ext = true;
        } else if h_set != f_set {
            let only_h: Vec<_> = h_set.difference(&f_set).cloned().collect();
            let only_f: Vec<_> = f_set.difference(&h_set).cloned().collect();
            witness = Some(json!({
                "h_vectors_without_multicomplex": only_h,
                "F_vectors_without_complex": only_f,
            }));
        }
        directions.push(DirectionReport {
            name: "extensional_1_3".into(),
            mode: if truncated_ext {
                "truncated".into()
            } else {
                "exhaustive".into()
            },
            checked: h_set.len().max(f_set.len()),
            passed: witness.is_none(),
            elapsed_ms: start.elapsed().as_millis(),
            witness,
        });
    } else {
        directions.push(DirectionReport {
            name: "extensional_1_3".into(),
            mode: "skipped".into(),
            checked: 0,
            passed: true,
            elapsed_ms: start.elapsed().as_millis(),
            witness: None,
        });
    }

    let any_failed = directions.iter().any(|dir| !dir.passed);
    let any_truncated = directions.iter().any(|dir| dir.mode == "truncated");
    let status = if any_failed {
        "fail"
    } else if any_truncated {
        "incomplete"
    } else {
        "ok"
    };
    let witness = directions
        .iter()
        .find(|dir| !dir.passed)
        .and_then(|dir| dir.witness.clone());
    VerificationReport {
        instance: instance.clone(),
        seed: cfg.seed,
        status: status.into(),
        witness,
        config: cfg.clone(),
        directions,
    }
}
