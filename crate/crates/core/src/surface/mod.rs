//! Normal surface arithmetic for canonical dual surfaces.

pub mod canonical;
pub mod coord;
pub mod formal;
pub mod squares;

pub use canonical::{b_modification, canonical_surface, chi_formula, BModification, CanonicalSurface};
pub use coord::{euler_char, surface_classify, DiscType, NormalCoordinate, SurfaceClass, TetCoord};
pub use formal::{formal_chi, special_solutions, SpecialSolutions};
pub use squares::{twisted_square_scan, SquareKind, TwistedSquare};
