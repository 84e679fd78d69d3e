//! Intersection structures of intersecting families of `r`-sets.
//!
//! For a family `A` of subsets of `[n]`, `I(A)` is the set of pairwise
//! intersections `A ∩ B` (including `A = B`) and `A<k>` its members of size
//! `k`. This crate provides:
//!
//! * the data model ([`VSet`], [`SetFamily`]) and intersection operations
//!   ([`structure`]),
//! * the explicit extremal families and the `α^(r)` registry
//!   ([`constructions`]),
//! * an exact, certificate-producing search for
//!   `β(n, r, k) = max |A<k>|` over intersecting `A ⊆ [n]^(r)` ([`search`]).
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod combin;
pub mod constructions;
pub mod error;
pub mod family;
pub mod search;
pub mod structure;
pub mod vset;

pub use error::{Error, Result};
pub use family::SetFamily;
pub use structure::{
    hitting_count, intersection_structure, is_intersecting, is_maximal, k_intersections, link,
    maximalize, merge_to_fresh, merge_vertices, star_cover_violations, IntersectionStructure,
};
pub use vset::VSet;
