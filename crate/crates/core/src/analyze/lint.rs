//! Low-degree edge lint for closed one-vertex triangulations.

use serde::{Deserialize, Serialize};

use super::lsts::interior_to_t134;
use crate::error::{Error, Result};
use crate::homology::homology_from_skeleton;
use crate::skeleton::Skeleton;
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowDegreeCase {
    /// Degree one in a triangulation of a homology sphere.
    Sphere,
    /// Degree two with `|H1|` three or four.
    SmallLens,
    /// Single tetrahedron with `|H1| = 5`.
    Case3a,
    /// Two tetrahedra with `|H1|` five or seven.
    Case3b,
    /// Interior to an embedded `T(1,3,4)`.
    Case3c,
    Unexplained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowDegreeEdge {
    pub edge: usize,
    pub degree: usize,
    pub case: LowDegreeCase,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LintReport {
    pub edges: Vec<LowDegreeEdge>,
    /// `E_i`, indexed by degree.
    pub degree_histogram: Vec<usize>,
    pub edge_count: usize,
    pub tet_count: usize,
    /// `sum (6 - i) E_i`, which is 6 on a closed one-vertex 3-manifold.
    pub degree_sum: i64,
}

pub fn low_degree_lint(tri: &Triangulation, sk: &Skeleton) -> Result<LintReport> {
    if !tri.is_closed() {
        return Err(Error::NotClosed);
    }
    if sk.vertices.len() != 1 {
        return Err(Error::NotOneVertex(sk.vertices.len()));
    }
    let order = homology_from_skeleton(sk).order();
    let t = tri.tet_count();
    let mut edges = Vec::new();
    for e in 0..sk.edges.len() {
        let d = sk.degree(e);
        let case = match d {
            1 if order == Some(1) => LowDegreeCase::Sphere,
            2 if matches!(order, Some(3 | 4)) => LowDegreeCase::SmallLens,
            3 if t == 1 && order == Some(5) => LowDegreeCase::Case3a,
            3 if t == 2 && matches!(order, Some(5 | 7)) => LowDegreeCase::Case3b,
            3 if interior_to_t134(tri, sk, e) => LowDegreeCase::Case3c,
            1..=3 => LowDegreeCase::Unexplained,
            _ => continue,
        };
        edges.push(LowDegreeEdge { edge: e, degree: d, case });
    }
    let degree_histogram = sk.degree_histogram();
    let degree_sum = degree_histogram.iter().enumerate().map(|(i, &n)| (6 - i as i64) * n as i64).sum();
    Ok(LintReport { edges, degree_histogram, edge_count: sk.edges.len(), tet_count: t, degree_sum })
}
