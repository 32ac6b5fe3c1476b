//! Path algebras of quivers with relations, their right modules, minimal
//! projective resolutions, and the A∞-structure on `Ext*(M, M)` obtained
//! by transfer from the endomorphism dga of a resolution.
//!
//! Paths are written in composition order: the path `αβ` runs `β` first.

mod dgend;
mod module;
mod quiver;
mod resolution;

pub use dgend::{dg_end, ext_ainf, DgEnd, EndBasis, ExtAlgebra};
pub use module::RightModule;
pub use quiver::{path_algebra, Arrow, FDAlgebra, Path, QuiverPresentation, Relation};
pub use resolution::{projective_resolution, FreeModule, ProjectiveResolution};
