//! Fusion systems of finite groups at desk scale.
//!
//! Groups are Cayley tables over indexed elements; subgroups are bit-vectors
//! inside a fixed parent. On top of that sit realized and explicit fusion
//! systems, their subsystems, H-freeness through model groups, the
//! characteristic subgroup `W(S)`, and verification harnesses for the
//! normalizer and complement theorems.
#![no_std]

extern crate alloc;

pub mod bits;
pub mod error;
pub mod fusion;
pub mod group;
pub mod hfree;
pub mod iso;
pub mod morphism;
pub mod perm;
pub mod pgroup;
pub mod stellmacher;
pub mod subsystems;
#[cfg(test)]
mod testgroups;
pub mod theorems;

pub use bits::ElementSet;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupSpec, Limits, PermRep, Quotient, Subgroup};
pub use morphism::GroupMorphism;
pub use perm::Perm;
