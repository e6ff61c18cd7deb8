//! The reverse-lexicographic shelling of `Lambda` and its restriction
//! function.
//!
//! Listing the facets of `Lambda` in ≻-descending order is a shelling, and
//! the restriction of a facet has the closed form `up(τ) ∪ tail(τ)`
//! computed by [`profile`]: `τ` can trade a vertex `v` for an earlier one
//! exactly when either the globally earliest vertex missing from both `τ`
//! and the saturated blocks (`Gap`) precedes it, or the first gap of `v`'s
//! own saturated block does.
//!
//! [`verify_shelling`] checks any facet order against the definition
//! (each facet meets the union of the earlier ones in a pure complex of
//! codimension one, with the stored restriction as unique minimal new face),
//! so the closed form can be cross-checked against [`restriction_oracle`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::complex::{Complex, Facet};
use crate::error::{Error, Result};
use crate::ground::{Instance, Vertex};

/// The per-facet data the closed-form restriction is assembled from.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FacetProfile {
    /// Blocks from which the facet holds the maximum `a_i` vertices.
    pub full_blocks: BTreeSet<usize>,
    /// ≻-greatest vertex outside the facet and outside every full block.
    pub gap: Option<Vertex>,
    /// For each full, not fully contained block: its ≻-greatest missing
    /// vertex.
    pub first_gaps: BTreeMap<usize, Vertex>,
    /// Facet members below the gap.
    pub tail: BTreeSet<Vertex>,
    /// Facet members below their own block's first gap, in full blocks.
    pub up: BTreeSet<Vertex>,
}

impl FacetProfile {
    /// `up(τ) ∪ tail(τ)`.
    pub fn restriction(&self) -> BTreeSet<Vertex> {
        self.up.union(&self.tail).copied().collect()
    }
}

/// Compute the profile of a facet of `Lambda_d(n, a)`.
pub fn profile(instance: &Instance, facet: &Facet) -> Result<FacetProfile> {
    if !instance.is_facet(facet) {
        return Err(Error::Input(
            "not a facet of Lambda for this instance".into(),
        ));
    }
    let full_blocks: BTreeSet<usize> = (1..=instance.m())
        .filter(|&i| facet.block_part(i).len() == instance.capacity(i))
        .collect();

    // ≻-greatest (natural minimum) vertex outside the facet and the full
    // blocks, if any.
    let gap = instance
        .vertices()
        .into_iter()
        .find(|&v| !facet.contains(v) && !full_blocks.contains(&v.block));

    let tail: BTreeSet<Vertex> = match gap {
        // Natural order reverses ≻: v ≺ gap means gap < v.
        Some(g) => facet
            .vertices()
            .iter()
            .copied()
            .filter(|&v| g < v)
            .collect(),
        None => BTreeSet::new(),
    };

    let mut first_gaps = BTreeMap::new();
    let mut up = BTreeSet::new();
    for &i in &full_blocks {
        let missing = instance
            .block_vertices(i)
            .into_iter()
            .find(|&v| !facet.contains(v));
        if let Some(fg) = missing {
            first_gaps.insert(i, fg);
            for v in facet.block_part(i) {
                if fg < v {
                    up.insert(v);
                }
            }
        }
    }

    Ok(FacetProfile {
        full_blocks,
        gap,
        first_gaps,
        tail,
        up,
    })
}

/// Closed-form restriction `R(τ) = up(τ) ∪ tail(τ)`.
pub fn restriction(instance: &Instance, facet: &Facet) -> Result<BTreeSet<Vertex>> {
    Ok(profile(instance, facet)?.restriction())
}

/// Brute-force restriction: the vertices `v ∈ τ` such that `τ - v` lies in
/// some ≻-earlier facet of the complex. Quadratic in the facet count by
/// design; it is the independent oracle for [`restriction`].
pub fn restriction_oracle(facet: &Facet, complex: &Complex) -> Result<BTreeSet<Vertex>> {
    if !complex.contains_facet(facet) {
        return Err(Error::Input("facet does not belong to the complex".into()));
    }
    let mut out = BTreeSet::new();
    for earlier in complex.facets() {
        if earlier >= facet {
            break; // facets iterate ≻-descending
        }
        for &v in facet.vertices() {
            if !earlier.contains(v) {
                let rest: Vec<Vertex> = facet
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|&u| u != v)
                    .collect();
                if earlier.contains_all(&rest) {
                    out.insert(v);
                }
            }
        }
    }
    Ok(out)
}

/// An ordered facet list with per-facet restriction faces.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ShellingRecord {
    order: Vec<Facet>,
    restrictions: Vec<BTreeSet<Vertex>>,
}

impl ShellingRecord {
    /// Build a record for an arbitrary facet order, computing each
    /// restriction with respect to that order (the swap definition:
    /// `v` is in the restriction of `τ_j` iff `τ_j - v` lies in some facet
    /// listed earlier).
    pub fn from_order(order: Vec<Facet>) -> Result<Self> {
        if let Some(first) = order.first() {
            if order.iter().any(|f| f.len() != first.len()) {
                return Err(Error::Input("facets must all have the same size".into()));
            }
        }
        let restrictions = order
            .iter()
            .enumerate()
            .map(|(j, facet)| {
                facet
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|&v| {
                        let rest: Vec<Vertex> = facet
                            .vertices()
                            .iter()
                            .copied()
                            .filter(|&u| u != v)
                            .collect();
                        order[..j].iter().any(|earlier| earlier.contains_all(&rest))
                    })
                    .collect()
            })
            .collect();
        Ok(ShellingRecord {
            order,
            restrictions,
        })
    }

    pub fn new(order: Vec<Facet>, restrictions: Vec<BTreeSet<Vertex>>) -> Result<Self> {
        if order.len() != restrictions.len() {
            return Err(Error::Input(
                "order and restrictions must be parallel".into(),
            ));
        }
        Ok(ShellingRecord {
            order,
            restrictions,
        })
    }

    pub fn order(&self) -> &[Facet] {
        &self.order
    }

    pub fn restrictions(&self) -> &[BTreeSet<Vertex>] {
        &self.restrictions
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// The shelling `Lex` of `Lambda`: facets in ≻-descending order with the
/// closed-form restriction attached to each.
pub fn lex_shelling(lambda: &Complex) -> ShellingRecord {
    let order: Vec<Facet> = lambda.facets().cloned().collect();
    let restrictions = order
        .iter()
        .map(|f| restriction(lambda.instance(), f).expect("facets of Lambda have profiles"))
        .collect();
    ShellingRecord {
        order,
        restrictions,
    }
}

/// Why a facet order fails to be a shelling with the stored restrictions.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ShellingViolation {
    /// Index of the offending facet in the order.
    pub index: usize,
    pub kind: ViolationKind,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum ViolationKind {
    /// Facets must be distinct and of uniform size.
    MalformedOrder,
    /// The stored restriction differs from the order-derived one.
    RestrictionMismatch {
        stored: BTreeSet<Vertex>,
        derived: BTreeSet<Vertex>,
    },
    /// The facet meets the union of the earlier ones in a complex that is
    /// empty or not pure of codimension one; `earlier` indexes a witness.
    NotCodimensionOne { earlier: usize },
}

impl fmt::Display for ShellingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::MalformedOrder => {
                write!(
                    f,
                    "facet {} repeats an earlier facet or has the wrong size",
                    self.index
                )
            }
            ViolationKind::RestrictionMismatch { stored, derived } => write!(
                f,
                "facet {}: stored restriction {:?} differs from derived {:?}",
                self.index, stored, derived
            ),
            ViolationKind::NotCodimensionOne { earlier } => write!(
                f,
                "facet {} meets facet {} outside a pure codimension-one complex",
                self.index, earlier
            ),
        }
    }
}

/// Check the shelling definition: for every facet after the first, the
/// intersection with the union of the earlier closed facets is pure of
/// dimension `d - 2`, and the stored restriction is the unique minimal new
/// face. Returns the first violation found.
pub fn verify_shelling(record: &ShellingRecord) -> std::result::Result<(), ShellingViolation> {
    let order = &record.order;
    for (i, facet) in order.iter().enumerate() {
        if order[..i].iter().any(|f| f == facet) || (i > 0 && facet.len() != order[0].len()) {
            return Err(ShellingViolation {
                index: i,
                kind: ViolationKind::MalformedOrder,
            });
        }

        // Swap set with respect to the given order. Its members v are
        // exactly those with τ_i - v inside the earlier union, so the
        // intersection complex is pure of codimension one iff every earlier
        // intersection τ_i ∩ τ_j lies under some τ_i - v, i.e. iff every
        // earlier facet misses some member of the swap set.
        let derived: BTreeSet<Vertex> = facet
            .vertices()
            .iter()
            .copied()
            .filter(|&v| {
                let rest: Vec<Vertex> = facet
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|&u| u != v)
                    .collect();
                order[..i].iter().any(|earlier| earlier.contains_all(&rest))
            })
            .collect();

        if derived != record.restrictions[i] {
            return Err(ShellingViolation {
                index: i,
                kind: ViolationKind::RestrictionMismatch {
                    stored: record.restrictions[i].clone(),
                    derived,
                },
            });
        }

        if i == 0 {
            continue;
        }
        if derived.is_empty() {
            // No codimension-one overlap with the earlier union at all.
            return Err(ShellingViolation {
                index: i,
                kind: ViolationKind::NotCodimensionOne { earlier: 0 },
            });
        }
        for (j, earlier) in order[..i].iter().enumerate() {
            if derived.iter().all(|&v| earlier.contains(v)) {
                // τ_i ∩ τ_j contains the whole swap set, so it cannot lie
                // under any τ_i - v: a maximal intersection face of the
                // wrong dimension (or the restriction itself is old).
                return Err(ShellingViolation {
                    index: i,
                    kind: ViolationKind::NotCodimensionOne { earlier: j },
                });
            }
        }
    }
    Ok(())
}

/// Restriction-size histogram: `h_i` counts the facets whose restriction has
/// exactly `i` vertices. Output length is `d + 1`.
pub fn h_from_shelling(record: &ShellingRecord, d: usize) -> Vec<i64> {
    let mut h = vec![0i64; d + 1];
    for r in &record.restrictions {
        h[r.len()] += 1;
    }
    h
}
