//! Permutations, permutation groups and materialized finite groups.

mod chain;
mod finite;
mod group;
mod permutation;

pub use chain::{Certificate, ChainOptions, ProductReplacement, StabChain, DEFAULT_MEMORY_BUDGET};
pub use finite::{
    Abelianization, ConjugacyClass, ElemId, ElementSet, FiniteGroup, DEFAULT_ELEMENT_CAP, IDENTITY,
};
pub use group::{orbits_of, PermGroup};
pub use permutation::{commutator, conjugate, Permutation};
