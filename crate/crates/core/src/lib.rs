//! Exact homology of arrangements of rational affine subtori of `T^N`, and the
//! Betti numbers of their complements.
//!
//! The pipeline runs bottom-up through the modules:
//!
//! * [`algebra`]: integers, rationals, `Q(sqrt D)`, Smith/Hermite normal forms,
//!   lattices, compound matrices and a mixed rational/integer solver.
//! * [`torus`]: canonical affine subtori, their intersections and the knitting
//!   criterion for parallel tori.
//! * [`poset`]: the intersection poset and its chains.
//! * [`spectral`]: the `E^1`/`E^2` pages of the Mayer-Vietoris spectral sequence
//!   of the simplicial resolution and the Betti numbers of the arrangement.
//! * [`complement`]: ranks of the restriction maps and the Betti numbers of the
//!   complement.
//! * [`equivariant`]: finite symmetry groups, characters, isotypic ranks.
//!
//! Everything is exact and allocation-only; no floating point is used anywhere.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod complement;
pub mod equivariant;
mod error;
pub mod poset;
pub mod spectral;
pub mod torus;

pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;
