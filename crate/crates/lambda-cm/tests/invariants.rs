//! Exhaustive cross-checks that are too heavy for the per-module unit tests.

use std::collections::HashMap;
use std::time::Instant;

use lambda_cm::complex::{build_lambda, full_simplex, join, skeleton, FaceSet};
use lambda_cm::ground::Instance;

/// The closed-form facet description of `Lambda` agrees with the literal
/// construction (skeleton of the join of block skeletons) for every instance
/// with at most nine vertices in total.
#[test]
fn lambda_closed_form_matches_literal_construction_to_nine_vertices() {
    let start = Instant::now();
    // The join depends only on (n, a); cache it across the d loop.
    let mut join_cache: HashMap<(Vec<usize>, Vec<usize>), FaceSet> = HashMap::new();
    let mut checked = 0usize;
    for instance in lambda_cm::verify::instances_with_n_sum_at_most(9) {
        let key = (instance.n().to_vec(), instance.a().to_vec());
        let joined = join_cache
            .entry(key)
            .or_insert_with(|| joined_skeletons(&instance))
            .clone();
        let literal = skeleton(&joined, instance.d());
        let lambda = build_lambda(&instance);
        assert_eq!(
            lambda.faces(),
            literal,
            "closed form disagrees with the literal construction on {instance:?}"
        );
        checked += 1;
    }
    println!(
        "literal-construction check: {checked} instances in {:.1?}",
        start.elapsed()
    );
}

fn joined_skeletons(instance: &Instance) -> FaceSet {
    let mut joined: FaceSet = [vec![]].into_iter().collect();
    for block in 1..=instance.m() {
        let simplex = full_simplex(&instance.block_vertices(block));
        let skel = skeleton(&simplex, instance.capacity(block));
        joined = join(&joined, &skel).unwrap();
    }
    joined
}

/// Over every instance with at most nine vertices: the lex order is a
/// shelling, every closed-form restriction matches the brute-force oracle,
/// the restriction-size histogram matches the f-to-h transform, and no
/// earlier facet contains a restriction.
#[test]
fn shelling_invariants_to_nine_vertices() {
    use lambda_cm::complex::h_from_f;
    use lambda_cm::shelling::{h_from_shelling, lex_shelling, restriction_oracle, verify_shelling};

    let start = Instant::now();
    let mut checked = 0usize;
    for instance in lambda_cm::verify::instances_with_n_sum_at_most(9) {
        let lambda = build_lambda(&instance);
        let record = lex_shelling(&lambda);
        verify_shelling(&record).unwrap_or_else(|violation| panic!("{instance:?}: {violation}"));
        for (facet, stored) in record.order().iter().zip(record.restrictions()) {
            assert_eq!(
                stored,
                &restriction_oracle(facet, &lambda).unwrap(),
                "oracle mismatch on {instance:?}"
            );
        }
        for (i, stored) in record.restrictions().iter().enumerate() {
            let stored: Vec<_> = stored.iter().copied().collect();
            for earlier in &record.order()[..i] {
                assert!(
                    !earlier.contains_all(&stored),
                    "restriction inside an earlier facet on {instance:?}"
                );
            }
        }
        assert_eq!(
            h_from_shelling(&record, instance.d()),
            h_from_f(&lambda.f_vector(), instance.d()).unwrap(),
            "histogram vs transform on {instance:?}"
        );
        checked += 1;
    }
    println!(
        "shelling invariants: {checked} instances in {:.1?}",
        start.elapsed()
    );
}
