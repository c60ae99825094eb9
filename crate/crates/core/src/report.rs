//! The JSON report emitted by `z2tri analyze`. Its shape is published in
//! `schema/report.schema.json`; bump [`SCHEMA_VERSION`] on any change.

use serde::Serialize;

use crate::analyze::{
    compression_pattern_scan, find_maximal_lsts, fundamental_report, low_degree_lint, BoundReport, CompressionPattern,
    LintReport, LstEmbedding,
};
use crate::error::Result;
use crate::homology::{homology_from_skeleton, orientability, HomologyProfile};
use crate::isomorphism::signature;
use crate::skeleton::{compute_skeleton, Skeleton, SkeletonCounts};
use crate::surface::canonical::canonical_census;
use crate::surface::coord::{surface_classify, SurfaceClass};
use crate::surface::squares::{scan_with_skeleton, TwistedSquare};
use crate::triangulation::Triangulation;
use crate::z2::{basis_from_skeleton, classify_with_skeleton, nonzero_classes, Cocycle, ParityCensus};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Input {
    pub source: String,
    /// Isomorphism signature.
    pub signature: String,
    pub closed: bool,
    pub orientable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: String,
    /// Tetrahedron types, one label per tetrahedron.
    pub types: Vec<&'static str>,
    pub census: ParityCensus,
    pub surface: SurfaceClass,
    /// Present on closed one-vertex triangulations.
    pub bounds: Option<BoundReport>,
    pub compression_patterns: Vec<CompressionPattern>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub input: Input,
    pub tet_count: usize,
    pub skeleton: SkeletonCounts,
    pub homology: HomologyProfile,
    pub z2_rank: usize,
    pub classes: Vec<ClassReport>,
    pub lsts: Vec<LstEmbedding>,
    pub twisted_squares: Vec<TwistedSquare>,
    pub lint: Option<LintReport>,
}

fn class_report(tri: &Triangulation, sk: &Skeleton, phi: &Cocycle, closed_one_vertex: bool) -> Result<ClassReport> {
    let types = classify_with_skeleton(sk, phi)?;
    let (s, census) = canonical_census(tri, sk, phi)?;
    let surface = surface_classify(tri, &s.coord)?;
    let compression_patterns = compression_pattern_scan(tri, sk, phi)?;
    let bounds = if closed_one_vertex {
        Some(fundamental_report(tri, sk, phi, compression_patterns.len() as u64)?)
    } else {
        None
    };
    Ok(ClassReport {
        class: phi.to_bit_string(),
        types: types.iter().map(|t| t.label()).collect(),
        census,
        surface,
        bounds,
        compression_patterns,
    })
}

pub fn analyze_report(tri: &Triangulation, source: &str) -> Result<Report> {
    tri.validate()?;
    let sk = compute_skeleton(tri);
    let closed = tri.is_closed();
    let closed_one_vertex = closed && sk.vertices.len() == 1;
    let basis = basis_from_skeleton(&sk);
    let classes = nonzero_classes(&basis)
        .iter()
        .map(|phi| class_report(tri, &sk, phi, closed_one_vertex))
        .collect::<Result<Vec<_>>>()?;
    let lint = if closed_one_vertex { Some(low_degree_lint(tri, &sk)?) } else { None };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        input: Input { source: source.to_string(), signature: signature(tri), closed, orientable: orientability(tri) },
        tet_count: tri.tet_count(),
        skeleton: sk.counts(),
        homology: homology_from_skeleton(&sk),
        z2_rank: basis.len(),
        classes,
        lsts: find_maximal_lsts(tri),
        twisted_squares: scan_with_skeleton(&sk),
        lint,
    })
}
