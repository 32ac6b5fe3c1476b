//! Graded linear algebra over exact fields.
//!
//! Degrees are cohomological; the suspension lowers degrees by one. Tensor
//! products of maps follow the Koszul rule.

mod field;
mod homology;
mod linalg;
mod map;
mod space;
mod sparse;

pub use field::{Field, Scalar};
pub use homology::{
    homology_dimensions, homology_with_contraction, homology_with_contraction_preferring,
    ContractionData,
};
pub use linalg::{intersection, rank, reduce_columns, solve, ColumnReduction, Echelon};
pub use map::{koszul_tensor, koszul_tensor_all, map_differential, suspend, suspend_space, ChainComplex, GradedMap};
pub use space::{index_word, word_index, BasisElement, GradedSpace};
pub use sparse::{tensor_of, Sparse, Tensor, Vector, Word};
