//! Special 2-groups from quadratic maps over F₂.
//!
//! A quadratic map q: V → W between F₂-spaces defines a group on V × W
//! whose centre is W and whose squaring and commutator maps are q and its
//! polar form. For real groups this crate computes conjugacy classes,
//! the full character table and explicit irreducible matrix
//! representations from q alone, and checks each fast formula against the
//! materialized group.

pub mod catalog;
pub mod chartab;
pub mod error;
pub mod exec;
pub mod formclass;
pub mod gf2;
pub mod group;
pub mod qparse;
pub mod quadmap;
pub mod random;
pub mod reps;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use gf2::{BitMat, BitVec};
pub use group::{GroupCtx, GroupElement};
pub use quadmap::{Functional, QuadMap, TransferReport};
