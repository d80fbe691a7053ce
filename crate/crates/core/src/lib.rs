//! Exact polyhedral geometry for input-convex maxout networks.
//!
//! Every predicate in this crate runs on arbitrary-precision rationals; there is
//! no floating point in any decision path. The crate is `no_std` and only needs
//! `alloc`; file formats, the command line and threading live in `maxout-cli`.
//!
//! Module map:
//! - [`ratgeom`]: rationals, vectors, matrices, fraction-free rank, affine hulls.
//! - [`polytope`]: hulls, Minkowski sums, face lattices, normal fans, cubicality,
//!   combinatorial equivalence.
//! - [`network`]: maxout networks, the layer-wise polytope builder, vertex words
//!   and the lifted cube.
//! - [`candidate`]: the five-matrix parametrization of maxout candidates and the
//!   map from two-layer networks into it.
//! - [`separate`]: face typing for hulls of normally equivalent polytopes and the
//!   separating complex.
//! - [`bicolor`]: dual-graph bicolorings and vertex bounds.
//! - [`extremal`]: closed-form extremal families.
#![no_std]

extern crate alloc;

pub mod bicolor;
pub mod bitset;
pub mod candidate;
mod error;
pub mod extremal;
pub mod network;
pub mod polytope;
pub mod ratgeom;
pub mod sampling;
pub mod separate;

pub use error::{Error, Result};
pub use polytope::{FVector, FaceLattice, NormalFan, Polytope};
pub use ratgeom::{RMatrix, RVector, Rational};
