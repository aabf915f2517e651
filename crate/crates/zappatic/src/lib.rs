//! Combinatorics of good Zappatic surfaces.
//!
//! A Zappatic surface is a union of smooth projective surfaces meeting
//! pairwise transversally along smooth double curves, with at worst
//! `R_n`, `S_n`, `E_n` singularities at the points where three or more
//! components concur.  Such a surface is encoded here by its decorated
//! dual graph: one weighted vertex per component, one edge per
//! irreducible double-curve component, and one marked point per
//! Zappatic singularity (closed faces for `E_n`, open faces for `R_n`,
//! angles for `S_n`).
//!
//! Everything in this crate is exact integer combinatorics: numerical
//! invariants of the surface (degree, sectional genus, χ(O), ω-genus,
//! irregularity, the K² interval, the class interval), smoothability
//! obstructions (Multiple Point Formula, Zappa's bound, Miyaoka–Yau,
//! K3 count relations), and generators for the classical degeneration
//! families, each cross-checked against hand-enumerated censuses.
//!
//! The crate is `no_std` (with `alloc`); file formats and the CLI live
//! in the companion `zap` crate.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod families;
pub mod graph;
pub mod homology;
pub mod invariants;
pub mod obstructions;
