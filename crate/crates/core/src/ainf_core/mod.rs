//! A∞-algebras, morphisms and modules as suspended-level structure constants.
//!
//! Everything is stored at the level of `SA`, where the Stasheff identities
//! read `Σ b_{i+1+l} ∘ (1^{⊗i} ⊗ b_j ⊗ 1^{⊗l}) = 0` with no sign other than the
//! Koszul sign of `1^{⊗i} ⊗ b_j`. `m_1` and `m_2` are display conversions.

mod algebra;
mod deform;
mod module;
mod morphism;
mod op;

pub use algebra::{AInfAlgebra, UnitCheck};
pub(crate) use algebra::op_of_map;
pub use deform::deform;
pub use module::AInfModule;
pub use morphism::{compose_morphisms, transport_structure, AInfMorphism};
pub use op::{compositions, words, MultiOp};
