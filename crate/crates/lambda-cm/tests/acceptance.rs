//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeSet;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lambda_cm::bijection::{gamma_from_multicomplex, phi, psi, verify_bijection_theorem};
use lambda_cm::complex::{build_lambda, h_from_f, Complex, Facet};
use lambda_cm::ground::{Instance, Monomial, Vertex};
use lambda_cm::homology::{
    boundary_squared_is_zero, is_cm, link, reduced_betti, CmChecker, CmFailure,
};
use lambda_cm::lsop::{check_lsop_resampling, GenericMatrixSpec};
use lambda_cm::multicomplex::{
    compress, compress_i, is_0_compressed, is_multicomplex, potential, MonomialPoset, Multicomplex,
};
use lambda_cm::shelling::{
    h_from_shelling, lex_shelling, profile, restriction, restriction_oracle, verify_shelling,
    ShellingRecord,
};
use lambda_cm::verify::{default_grid, for_each_multicomplex, sample_multicomplexes};

fn inst(n: &[usize], a: &[usize], d: usize) -> Instance {
    Instance::new(n.to_vec(), a.to_vec(), d).unwrap()
}

fn v(block: usize, rank: usize) -> Vertex {
    Vertex::new(block, rank)
}

fn facet(verts: &[(usize, usize)]) -> Facet {
    Facet::new(verts.iter().map(|&(b, r)| v(b, r)).collect()).unwrap()
}

fn mono(exp: &[&[u32]]) -> Monomial {
    Monomial::from_exponents(exp.iter().map(|e| e.to_vec()).collect())
}

fn conclude(name: &str, failures: Vec<String>, start: Instant) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("{name}: {status} ({:.1?})", start.elapsed());
    for f in failures.iter().take(5) {
        println!("  {f}");
    }
    assert!(failures.is_empty(), "{name}: {} failure(s)", failures.len());
}

/// The compression-suite instances: exhaustive where `|S| <= 60`, 200 seeded
/// samples for the larger worked instance.
fn compression_suite() -> Vec<Instance> {
    vec![
        inst(&[3], &[2], 2),
        inst(&[4], &[2], 2),
        inst(&[4], &[3], 3),
        inst(&[2, 2], &[1, 1], 2),
        inst(&[3, 2], &[2, 1], 2),
        inst(&[4, 2], &[2, 1], 2),
        inst(&[4, 3], &[2, 2], 2),
        inst(&[4, 3], &[2, 2], 3),
        inst(&[2, 2, 2], &[1, 1, 1], 3),
        inst(&[2, 2, 1], &[1, 1, 1], 2),
        inst(&[3, 2, 2], &[1, 1, 1], 2),
        inst(&[3, 2, 2], &[2, 1, 1], 3),
        inst(&[4, 3, 3], &[2, 2, 1], 4),
    ]
}

const EXHAUSTIVE_LIMIT: usize = 60;
const SAMPLES: usize = 200;
const ENUMERATION_CAP: usize = 2_000_000;
const SAMPLE_SEED: u64 = 42;

fn suite_multicomplexes(instance: &Instance, poset: &MonomialPoset) -> Vec<Multicomplex> {
    if poset.len() <= EXHAUSTIVE_LIMIT {
        let mut out = Vec::new();
        for_each_multicomplex(poset, ENUMERATION_CAP, |set| {
            out.push(Multicomplex::new(set.iter().cloned()))
        })
        .unwrap_or_else(|e| panic!("enumeration blew the cap on {instance:?}: {e}"));
        out
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        sample_multicomplexes(poset, SAMPLES, &mut rng)
    }
}

#[test]
fn criterion_1_worked_example_bit_exact() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let i = inst(&[4, 3, 3], &[2, 2, 1], 4);
    let tau = facet(&[(1, 1), (1, 4), (2, 2), (3, 2)]);

    let p = profile(&i, &tau).unwrap();
    let expect = |ok: bool, what: &str, failures: &mut Vec<String>| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    expect(
        p.full_blocks == [1, 3].into_iter().collect(),
        "FL != {1,3}",
        &mut failures,
    );
    expect(
        p.tail == [v(2, 2), v(3, 2)].into_iter().collect(),
        "tail != {v22, v32}",
        &mut failures,
    );
    expect(
        p.up == [v(1, 4), v(3, 2)].into_iter().collect(),
        "up != {v14, v32}",
        &mut failures,
    );
    let r = restriction(&i, &tau).unwrap();
    expect(
        r == [v(1, 4), v(2, 2), v(3, 2)].into_iter().collect(),
        "restriction != up ∪ tail",
        &mut failures,
    );

    let mu = phi(&i, &tau).unwrap();
    expect(
        mu == mono(&[&[1], &[0, 1], &[0], &[1, 0]]),
        "Phi(tau) != w*x2*z1",
        &mut failures,
    );
    expect(mu.degree() == 3, "deg Phi(tau) != 3", &mut failures);

    let back = psi(&i, &mono(&[&[0], &[0, 1], &[0], &[1, 0]])).unwrap();
    expect(
        back == facet(&[(1, 1), (1, 4), (2, 1), (3, 2)]),
        "Psi(x2*z1) wrong",
        &mut failures,
    );
    let back = psi(&i, &mu).unwrap();
    expect(back == tau, "Psi(w*x2*z1) != tau", &mut failures);

    conclude("criterion 1 (worked example, bit-exact)", failures, start);
}

#[test]
fn criterion_2_shelling_suite_full_grid() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for instance in default_grid() {
        let lambda = build_lambda(&instance);
        let record = lex_shelling(&lambda);
        if let Err(violation) = verify_shelling(&record) {
            failures.push(format!("{instance:?}: shelling violation: {violation}"));
            continue;
        }
        for f in lambda.facets() {
            let closed = restriction(&instance, f).unwrap();
            let oracle = restriction_oracle(f, &lambda).unwrap();
            if closed != oracle {
                failures.push(format!(
                    "{instance:?}: closed form {closed:?} != oracle {oracle:?} on {:?}",
                    f.vertices()
                ));
            }
        }
        let histogram = h_from_shelling(&record, instance.d());
        let transform = h_from_f(&lambda.f_vector(), instance.d()).unwrap();
        if histogram != transform {
            failures.push(format!(
                "{instance:?}: histogram {histogram:?} != transform {transform:?}"
            ));
        }
    }
    conclude("criterion 2 (shelling suite, full grid)", failures, start);
}

#[test]
fn criterion_3_bijection_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for instance in default_grid() {
        let lambda = build_lambda(&instance);
        let poset = MonomialPoset::new(&instance);
        // Identities and the degree law on every facet and monomial.
        for f in lambda.facets() {
            let mu = phi(&instance, f).unwrap();
            if &psi(&instance, &mu).unwrap() != f {
                failures.push(format!("{instance:?}: Psi(Phi) misses {:?}", f.vertices()));
            }
            if mu.degree() != restriction(&instance, f).unwrap().len() {
                failures.push(format!("{instance:?}: deg law fails on {:?}", f.vertices()));
            }
        }
        for mu in poset.enumerate() {
            let f = psi(&instance, &mu).unwrap();
            if phi(&instance, &f).unwrap() != mu {
                failures.push(format!("{instance:?}: Phi(Psi) misses {mu}"));
            }
        }
        // Divisor-replacement property, exhaustive up to 200 facets.
        if lambda.facet_count() <= 200 {
            match verify_bijection_theorem(&lambda, 200) {
                Ok(report) if report.passed() => {}
                Ok(report) => failures.push(format!(
                    "{instance:?}: {} divisor-replacement failures, first: {:?}",
                    report.failures.len(),
                    report.failures.first()
                )),
                Err(e) => failures.push(format!("{instance:?}: {e}")),
            }
        }
    }
    conclude("criterion 3 (bijection suite)", failures, start);
}

#[test]
fn criterion_4_compression_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for instance in compression_suite() {
        let poset = MonomialPoset::new(&instance);
        let d = instance.d();
        let mut verified_outputs: BTreeSet<Vec<Monomial>> = BTreeSet::new();
        for m in suite_multicomplexes(&instance, &poset) {
            let f = m.f_vector(d);
            let pot = potential(&poset, &m);
            for i in 1..=instance.m() {
                let c = match compress_i(&poset, &m, i) {
                    Ok(c) => c,
                    Err(e) => {
                        failures.push(format!("{instance:?}: compress_{i} failed: {e}"));
                        continue;
                    }
                };
                if c.f_vector(d) != f {
                    failures.push(format!("{instance:?}: compress_{i} changed F"));
                }
                if !is_multicomplex(c.as_set()) || c.monomials().any(|x| !poset.contains(x)) {
                    failures.push(format!("{instance:?}: compress_{i} left the poset"));
                }
                let pot_c = potential(&poset, &c);
                if pot_c.degree() != pot.degree() {
                    failures.push(format!("{instance:?}: potential degree moved"));
                }
                if lambda_cm::ground::revlex_mono_order(&pot_c, &pot) == std::cmp::Ordering::Less {
                    failures.push(format!("{instance:?}: potential decreased"));
                }
            }
            match compress(&poset, &m) {
                Ok(c) => {
                    if c.f_vector(d) != f {
                        failures.push(format!("{instance:?}: compress changed F"));
                    }
                    let key: Vec<Monomial> = c.monomials().cloned().collect();
                    if !verified_outputs.contains(&key) {
                        if !is_0_compressed(&poset, &c) {
                            failures.push(format!(
                                "{instance:?}: output not (0)-compressed for {:?}",
                                m.monomials().map(|x| x.to_string()).collect::<Vec<_>>()
                            ));
                        }
                        verified_outputs.insert(key);
                    }
                }
                Err(e) => failures.push(format!("{instance:?}: compress failed: {e}")),
            }
            if failures.len() > 10 {
                break;
            }
        }
    }
    conclude("criterion 4 (compression suite)", failures, start);
}

#[test]
fn criterion_5_end_to_end_compressed_to_cm() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for instance in compression_suite() {
        let poset = MonomialPoset::new(&instance);
        let d = instance.d();
        let mut compressed: BTreeSet<Vec<Monomial>> = BTreeSet::new();
        for m in suite_multicomplexes(&instance, &poset) {
            if let Ok(c) = compress(&poset, &m) {
                compressed.insert(c.monomials().cloned().collect());
            }
        }
        let mut checker = CmChecker::new();
        for key in compressed {
            let m = Multicomplex::new(key);
            let gamma = match gamma_from_multicomplex(&instance, &m) {
                Ok(g) => g,
                Err(e) => {
                    failures.push(format!("{instance:?}: gamma failed: {e}"));
                    continue;
                }
            };
            let order: Vec<Facet> = gamma.facets().cloned().collect();
            let restrictions = order
                .iter()
                .map(|f| restriction(&instance, f).unwrap())
                .collect();
            let record = ShellingRecord::new(order, restrictions).unwrap();
            if let Err(violation) = verify_shelling(&record) {
                failures.push(format!("{instance:?}: Gamma not shelled: {violation}"));
                continue;
            }
            if h_from_shelling(&record, d) != m.f_vector(d) {
                failures.push(format!("{instance:?}: h(Gamma) != F(M)"));
            }
            if let Err(why) = checker.is_cm(&gamma) {
                failures.push(format!("{instance:?}: Gamma not CM: {why:?}"));
            }
            if failures.len() > 10 {
                break;
            }
        }
    }
    conclude("criterion 5 (compressed → shelled → CM)", failures, start);
}

#[test]
fn criterion_6_extensional_equivalence_tiny() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let tiny = vec![
        inst(&[2, 2], &[1, 1], 2),
        inst(&[3], &[2], 1),
        inst(&[3], &[2], 2),
        inst(&[2], &[1], 1),
        inst(&[2], &[2], 2),
        inst(&[2, 2], &[1, 1], 1),
        inst(&[4], &[2], 2),
        inst(&[2, 1], &[1, 1], 2),
        inst(&[3, 1], &[2, 1], 3),
        inst(&[2, 2], &[2, 1], 2),
        inst(&[2, 2], &[2, 2], 2),
    ];
    for instance in tiny {
        let lambda = build_lambda(&instance);
        assert!(
            lambda.facet_count() <= 14,
            "{instance:?} exceeds the extensional facet limit"
        );
        let d = instance.d();
        let facets: Vec<Facet> = lambda.facets().cloned().collect();
        let mut checker = CmChecker::new();
        let mut h_set: BTreeSet<Vec<i64>> = BTreeSet::new();
        for mask in 1u64..(1 << facets.len()) {
            let subset: Vec<Facet> = facets
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, f)| f.clone())
                .collect();
            let sub = Complex::new(instance.clone(), subset).unwrap();
            if checker.is_cm(&sub).is_ok() {
                h_set.insert(sub.h_vector());
            }
        }
        let poset = MonomialPoset::new(&instance);
        let mut f_set: BTreeSet<Vec<i64>> = BTreeSet::new();
        for_each_multicomplex(&poset, ENUMERATION_CAP, |set| {
            f_set.insert(Multicomplex::new(set.iter().cloned()).f_vector(d));
        })
        .unwrap();
        if h_set != f_set {
            failures.push(format!(
                "{instance:?}: h-vectors {:?} vs F-vectors {:?}",
                h_set, f_set
            ));
        }
    }
    conclude(
        "criterion 6 (extensional equivalence, tiny instances)",
        failures,
        start,
    );
}

#[test]
fn criterion_7_lsop_minors_full_grid() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for instance in default_grid() {
        let lambda = build_lambda(&instance);
        for seed in 0..5u64 {
            let spec = GenericMatrixSpec::new(instance.clone(), seed).with_range(100);
            match check_lsop_resampling(&lambda, &spec, 3) {
                Ok(report) if report.passed() => {}
                Ok(report) => failures.push(format!(
                    "{instance:?} seed {seed}: vanishing minors on {:?}",
                    report.failures.first().map(|f| f.vertices())
                )),
                Err(e) => failures.push(format!("{instance:?} seed {seed}: {e}")),
            }
        }
        if failures.len() > 10 {
            break;
        }
    }
    conclude(
        "criterion 7 (l.s.o.p. facet minors, full grid)",
        failures,
        start,
    );
}

#[test]
fn criterion_8_homology_sanity() {
    let start = Instant::now();
    let mut failures = Vec::new();

    // Triangle boundary: reduced betti (0, 1) in dimensions (0, 1).
    let triangle = build_lambda(&inst(&[3], &[2], 2));
    let betti = reduced_betti(&triangle.faces());
    if betti.get(0) != 0 || betti.get(1) != 1 || betti.get(-1) != 0 {
        failures.push(format!("triangle betti wrong: {:?}", betti.values()));
    }

    // Two disjoint edges are not CM, witnessed at the empty face.
    let edges = Complex::new(
        inst(&[4], &[2], 2),
        vec![facet(&[(1, 1), (1, 2)]), facet(&[(1, 3), (1, 4)])],
    )
    .unwrap();
    match is_cm(&edges) {
        Err(CmFailure::Homology { face, dim, .. }) if face.is_empty() && dim == 0 => {}
        other => failures.push(format!(
            "disjoint edges: expected empty-face witness, got {other:?}"
        )),
    }

    // Boundary-of-boundary vanishes across the small-instance suite, links
    // included.
    for instance in lambda_cm::verify::instances_with_n_sum_at_most(6) {
        let faces = build_lambda(&instance).faces();
        if !boundary_squared_is_zero(&faces) {
            failures.push(format!("{instance:?}: boundary squared nonzero"));
        }
        for sigma in &faces {
            let lk = link(&faces, sigma).unwrap();
            if !boundary_squared_is_zero(&lk) {
                failures.push(format!("{instance:?}: link boundary squared nonzero"));
            }
        }
    }

    conclude("criterion 8 (homology sanity)", failures, start);
}
