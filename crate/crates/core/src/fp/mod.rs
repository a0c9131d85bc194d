//! Finitely presented groups and their finite realizations.

mod action;
pub mod catalog;
mod coset;
mod finite;
mod presentation;
pub mod tietze;
mod word;

pub use action::{
    check_compatible, derived_subgroup_dh, ActionError, CompatibilityViolation, CompatiblePair, GroupAction, PairError,
};
pub use coset::{
    coset_enumerate, CosetTable, EnumError, EnumOptions, EnumStats, Strategy, DEFAULT_BUDGET, DEFAULT_TABLE_BYTES,
};
pub use finite::{realize, realize_with, FiniteGroupRealization, GroupError, MAX_TABLE_ORDER};
pub use presentation::{abelianization, FpPresentation};
pub use word::{reduce, Letter, Word};
