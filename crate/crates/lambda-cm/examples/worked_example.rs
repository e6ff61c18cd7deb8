//! Walk the worked 3-block instance end to end: build Lambda, shell it,
//! map a facet through the bijection, compress a multicomplex, and check
//! the resulting subcomplex.

use lambda_cm::bijection::{gamma_from_multicomplex, phi, psi};
use lambda_cm::complex::build_lambda;
use lambda_cm::ground::Instance;
use lambda_cm::homology::is_cm;
use lambda_cm::multicomplex::{compress, MonomialPoset, Multicomplex};
use lambda_cm::shelling::{h_from_shelling, lex_shelling, restriction};

fn main() {
    let instance = Instance::new(vec![4, 3, 3], vec![2, 2, 1], 4).unwrap();
    let lambda = build_lambda(&instance);
    println!("Lambda has {} facets", lambda.facet_count());

    let record = lex_shelling(&lambda);
    println!("h-vector: {:?}", h_from_shelling(&record, instance.d()));

    let tau = lambda
        .facets()
        .find(|f| {
            f.vertices()
                .iter()
                .map(|v| (v.block, v.rank))
                .collect::<Vec<_>>()
                == vec![(1, 1), (1, 4), (2, 2), (3, 2)]
        })
        .unwrap();
    let r = restriction(&instance, tau).unwrap();
    let mu = phi(&instance, tau).unwrap();
    println!(
        "restriction size {} = deg {} of {}",
        r.len(),
        mu.degree(),
        mu
    );
    assert_eq!(&psi(&instance, &mu).unwrap(), tau);

    let poset = MonomialPoset::new(&instance);
    let some = Multicomplex::from_generators([mu]);
    let compressed = compress(&poset, &some).unwrap();
    let gamma = gamma_from_multicomplex(&instance, &compressed).unwrap();
    println!(
        "compressed {} monomials -> subcomplex with {} facets, CM: {}",
        compressed.len(),
        gamma.facet_count(),
        is_cm(&gamma).is_ok()
    );
}
