//! Exact computations around non-abelian tensor products of groups.
//!
//! * [`abelian`]: integer Smith normal form, finitely generated abelian
//!   groups, the abelian tensor product and Whitehead's `Γ` functor.
//! * [`fp`]: words, finitely presented groups, Todd–Coxeter coset
//!   enumeration, finite realizations, compatible actions.
//! * [`tensor`]: non-abelian tensor products and squares, exterior squares,
//!   the derived map and its kernel, and Peiffer products of finite groups.
//! * [`linearity`]: Malcev's linearity criteria for abelian groups and the
//!   Button matrix families.
//! * [`reps`]: exact Laurent-polynomial matrices and explicit faithful
//!   representations of free and free nilpotent tensor squares.

pub mod abelian;
pub mod error;
pub mod fp;
pub mod linearity;
pub mod reps;
pub mod tensor;

pub use error::ParseError;
