//! Integer linear algebra and finitely generated abelian groups.
//!
//! Groups are kept in invariant-factor form so that isomorphism testing is
//! plain equality. Whitehead's `Γ` is computed by folding the product rule
//! over cyclic summands; the rule set covers every finitely generated group,
//! so no other formula is needed.

mod group;
mod matrix;
mod snf;

pub use group::{
    abelian_from_relations, gamma, iso_eq, smith_normal_form_triple, tensor_z, Cyclic,
    FinGenAbelian,
};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithForm};
