//! Layered triangulations of solid tori, lens spaces and small Seifert fibred
//! spaces, their Z2 edge colourings and canonical dual normal surfaces, and
//! the counting identities behind the Z2-Thurston-norm complexity bounds.

pub mod analyze;
pub mod build;
pub mod error;
pub mod gf2;
pub mod homology;
pub mod isomorphism;
pub mod parallel;
pub mod perm;
pub mod report;
pub mod skeleton;
pub mod snf;
pub mod surface;
pub mod triangulation;
pub mod verify;
pub mod z2;

pub use error::{Error, Result};
pub use homology::{first_homology, is_closed_manifold, orientability, HomologyProfile};
pub use isomorphism::{canonical, isomorphic};
pub use perm::Perm4;
pub use skeleton::{compute_skeleton, Skeleton};
pub use triangulation::{Gluing, Triangulation};
