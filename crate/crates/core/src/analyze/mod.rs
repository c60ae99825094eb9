//! Structural detectors and transformations on closed triangulations.

pub mod bounds;
pub mod certificate;
pub mod lint;
pub mod lsts;
pub mod moves;
pub mod patterns;
pub mod promote;
pub mod synthetic;

pub use bounds::{fundamental_report, BoundReport};
pub use lint::{low_degree_lint, LintReport, LowDegreeCase, LowDegreeEdge};
pub use lsts::{find_maximal_lsts, lst_intersection_matrix, EdgeRole, LstEdge, LstEmbedding, LstType};
pub use moves::{apply_move, edge_embeddings, pachner, MoveOutcome, MoveSpec};
pub use patterns::{compression_pattern_scan, CompressionPattern, PatternKind};
pub use promote::{promote, support_tori, FlipRecord, PromoteOutcome, SupportTorus, TorusKind};
pub use certificate::{complexity_certificate, BoundCheck, BoundForm, Certificate, ClassSummary, KnownFamily};
