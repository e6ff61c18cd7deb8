//! Exact combinatorics of block-capacity complexes.
//!
//! Fix pairwise disjoint vertex blocks `V_1, ..., V_m` of sizes `n_i`,
//! capacities `a_i <= n_i`, and a facet size `d <= a_1 + ... + a_m`. The
//! central object is the pure complex `Lambda_d(n, a)` whose facets are the
//! `d`-subsets of the ground set taking at most `a_i` vertices from each
//! block. This crate builds that complex and the machinery around it:
//!
//! * the reverse-lexicographic shelling of `Lambda` and its closed-form
//!   restriction function ([`shelling`]),
//! * the poset `S` of capacity-bounded monomials, multicomplexes inside it,
//!   and the `(0)`-compression operator ([`multicomplex`]),
//! * the mutually inverse maps `Phi`/`Psi` between facets of `Lambda` and
//!   monomials of `S` ([`bijection`]),
//! * rational simplicial homology and a Reisner-criterion Cohen-Macaulay
//!   oracle ([`homology`]),
//! * the structured matrix `g^{-1}` whose facet-by-last-`d`-columns minors
//!   certify a linear system of parameters ([`lsop`]),
//! * a verification harness tying these together over small instances
//!   ([`verify`]).
//!
//! Everything is exact: face counts and h-vectors in integers, linear
//! algebra over `BigInt`/`BigRational` via fraction-free elimination. No
//! floating point is used anywhere.
//!
//! All types are immutable values after construction and all operations are
//! pure functions, so everything here is safe to share across threads.

pub mod bijection;
pub mod complex;
pub mod error;
pub mod ground;
pub mod homology;
pub mod linalg;
pub mod lsop;
pub mod multicomplex;
pub mod shelling;
pub mod verify;

pub use error::{Error, Result};

/// Exact integer scalar used for homology boundary matrices.
pub type Int = num_bigint::BigInt;

/// Exact rational scalar used for the l.s.o.p. specialization.
pub type Rat = num_rational::BigRational;

/// Dense matrix over [`Int`].
pub type IntMatrix = linalg::Matrix<Int>;

/// Dense matrix over [`Rat`].
pub type RatMatrix = linalg::Matrix<Rat>;
