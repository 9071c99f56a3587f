//! Exact-arithmetic geometry of linear systems on surfaces.
//!
//! Everything here computes over arbitrary-precision rationals; there is no
//! floating point anywhere in the crate. The major pieces:
//!
//! - [`linalg`]: exact vectors, matrices, determinants, and linear solving.
//! - [`polytope`]: rational polytopes in half-space and vertex form, vertex
//!   enumeration, face lattices, exact volumes, hyperplane arrangements.
//! - [`certificate`]: Hadamard-style denominator certificates for vertices of
//!   integer half-space systems.
//! - [`chamber`]: finite polytope covers, adjacency, region partitions, and
//!   face-count bookkeeping.
//! - [`surface`]: intersection lattices of projective surfaces, blow-up and
//!   contraction, Zariski decompositions, base loci.
//! - [`geography`]: the combinatorial log MMP, coefficient-space wall
//!   arrangements, and chamber reports.
//! - [`snc`]: simple-normal-crossing configurations and exhaustive
//!   enumeration of low-discrepancy valuations.
//! - [`fixtures`]: small reference models used by tests and the CLI.
//!
//! The crate is `no_std` + `alloc`; IO and serialization live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod certificate;
pub mod chamber;
pub mod fixtures;
pub mod geography;
pub mod linalg;
pub mod polytope;
pub mod rat;
pub mod snc;
pub mod surface;

pub use rat::Rational;
