//! Exact lattice, Weyl-group and cone computations for rational 4-manifolds.
//!
//! Everything here works over arbitrary-precision integers and rationals and needs only `alloc`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod arith;
pub mod cones;
pub mod configs;
pub mod enumerate;
pub mod lattice;
pub mod weyl;

pub use lattice::{Class, IntClass, LatticeError, Model, RayClass};
