//! Tensor coalgebras, bar and cobar constructions, twisting cochains and
//! Koszul duals.

mod bar;
mod coalgebra;
mod cobar;
mod koszul;
mod twisting;

pub use bar::{bar, bar_homology, reduced_algebra};
pub use coalgebra::{tensor_coalgebra, DgCoalgebra};
pub use cobar::cobar;
pub use koszul::{koszul_acyclicity, koszul_dual, Acyclicity, KoszulData, QuadraticAlgebra};
pub use twisting::{
    is_twisting_cochain, mc_defect, twisted_tensor, universal_twisting_cochain, Convolution,
    DgModule, Side, TwistCheck, TwistedTensor, TwistingCochain,
};
