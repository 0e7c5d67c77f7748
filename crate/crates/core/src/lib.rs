//! Hurwitz spaces over finite permutation groups, computed: Nielsen tuple
//! fibers, braid monodromy, lifting invariants and the group-theoretic
//! conditions that govern full monodromy.

pub mod analysis;
pub mod catalog;
pub mod covers;
pub mod hurwitz;
pub mod io;
pub mod monodromy;
pub mod error;
pub mod fiberpower;
pub mod fixtures;
pub mod perm;

pub use error::{Error, Result};
pub use perm::{ConjugacyClass, ElemId, FiniteGroup, PermGroup, Permutation};
