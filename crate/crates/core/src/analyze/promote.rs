//! Supportive and almost supportive layered solid tori, and removal of
//! supportive tori by 4-4 flips.

use serde::{Deserialize, Serialize};

use super::lsts::{find_maximal_lsts, LstEmbedding, LstType};
use super::moves::{apply_move, edge_embeddings, MoveSpec};
use crate::error::Result;
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::triangulation::Triangulation;
use crate::z2::{classify_with_skeleton, Cocycle, TetType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorusKind {
    Supportive,
    AlmostSupportive,
}

/// A maximal torus of type Dq whose even edges have the supportive shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportTorus {
    pub index: usize,
    pub kind: TorusKind,
    /// The even boundary edge.
    pub edge: usize,
    pub univalent: bool,
}

/// Classify every maximal torus of type Dq. Supportive: exactly one even
/// edge of degree 3, every other even edge of the torus of degree 4.
/// Almost supportive: the same inside, with a single even boundary edge of
/// degree at least 5.
pub fn support_tori(sk: &Skeleton, phi: &Cocycle, lsts: &[LstEmbedding]) -> Vec<SupportTorus> {
    let mut out = Vec::new();
    for (index, l) in lsts.iter().enumerate() {
        if l.tag != Some(LstType::Dq) {
            continue;
        }
        let mut interior: Vec<usize> = l.interior_edges().iter().map(|e| e.ambient).filter(|&e| !phi.is_odd(e)).collect();
        let mut boundary: Vec<usize> = l.boundary_edges().iter().map(|e| e.ambient).filter(|&e| !phi.is_odd(e)).collect();
        interior.sort_unstable();
        interior.dedup();
        boundary.sort_unstable();
        boundary.dedup();
        boundary.retain(|e| !interior.contains(e));
        let deg = |e: &usize| sk.degree(*e);
        let threes = interior.iter().chain(&boundary).filter(|e| deg(e) == 3).count();
        if threes != 1 || !interior.iter().all(|e| matches!(deg(e), 3 | 4)) {
            continue;
        }
        let uni = l.univalent().ambient;
        if boundary.iter().all(|e| matches!(deg(e), 3 | 4)) {
            // the even boundary edge is expected to be the univalent one
            let edge = boundary.iter().copied().find(|&e| e == uni).or(boundary.first().copied());
            if let Some(edge) = edge {
                out.push(SupportTorus { index, kind: TorusKind::Supportive, edge, univalent: edge == uni });
            }
        } else if let [edge] = boundary[..] {
            if deg(&edge) >= 5 && !interior.is_empty() {
                out.push(SupportTorus { index, kind: TorusKind::AlmostSupportive, edge, univalent: edge == uni });
            }
        }
    }
    out
}

fn tagged_lsts(tri: &Triangulation, types: &[TetType]) -> Vec<LstEmbedding> {
    let mut l = find_maximal_lsts(tri);
    for x in &mut l {
        x.tag_with(types);
    }
    l
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipRecord {
    pub edge: usize,
    pub axis: usize,
    /// Types around the edge, starting at the torus tetrahedron.
    pub types_before: Vec<String>,
    /// Types of the four new tetrahedra, sorted.
    pub types_after: Vec<String>,
    /// `(n_0, supportive count)` before and after.
    pub measure_before: (usize, usize),
    pub measure_after: (usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PromoteOutcome {
    #[serde(skip)]
    pub tri: Triangulation,
    #[serde(skip)]
    pub phi: Cocycle,
    pub log: Vec<FlipRecord>,
    /// Supportive tori left in place, with the reason.
    pub unresolved: Vec<String>,
}

fn measure(types: &[TetType], supportive: usize) -> (usize, usize) {
    (types.iter().filter(|t| **t == TetType::D0).count(), supportive)
}

fn supportive_count(tri: &Triangulation, sk: &Skeleton, phi: &Cocycle, types: &[TetType]) -> usize {
    let l = tagged_lsts(tri, types);
    support_tori(sk, phi, &l).iter().filter(|s| s.kind == TorusKind::Supportive).count()
}

/// Flip supportive tori away. Each flip strictly lowers `(n_0, #supportive)`
/// lexicographically, so the loop terminates.
pub fn promote(tri: &Triangulation, phi: &Cocycle) -> Result<PromoteOutcome> {
    let mut tri = tri.clone();
    let mut phi = phi.clone();
    let mut log = Vec::new();
    loop {
        let sk = compute_skeleton(&tri);
        let types = classify_with_skeleton(&sk, &phi)?;
        let lsts = tagged_lsts(&tri, &types);
        let sup: Vec<SupportTorus> =
            support_tori(&sk, &phi, &lsts).into_iter().filter(|s| s.kind == TorusKind::Supportive).collect();
        let before = measure(&types, sup.len());
        let mut unresolved = Vec::new();
        let mut flipped = None;
        'tori: for s in &sup {
            let emb = match edge_embeddings(&tri, &sk, s.edge) {
                Ok(emb) => emb,
                Err(e) => {
                    unresolved.push(format!("torus {}: {e}", s.index));
                    continue;
                }
            };
            let mut tets: Vec<usize> = emb.iter().map(|x| x.0).collect();
            tets.sort_unstable();
            tets.dedup();
            if !s.univalent || emb.len() != 4 || tets.len() != 4 {
                unresolved.push(format!(
                    "torus {}: even boundary edge {} is not univalent in four distinct tetrahedra",
                    s.index, s.edge
                ));
                continue;
            }
            let start = emb.iter().position(|x| lsts[s.index].tetrahedra.contains(&x.0)).unwrap_or(0);
            let types_before: Vec<String> = (0..4).map(|i| types[emb[(start + i) % 4].0].label().to_string()).collect();
            for axis in 0..2 {
                let o = apply_move(&tri, MoveSpec::Move44 { edge: s.edge, axis })?;
                let np = o.transfer(&tri, &phi)?;
                let nsk = compute_skeleton(&o.tri);
                let nt = classify_with_skeleton(&nsk, &np)?;
                let after = measure(&nt, supportive_count(&o.tri, &nsk, &np, &nt));
                if after < before {
                    let mut types_after: Vec<String> = nt[o.first_new..].iter().map(|t| t.label().to_string()).collect();
                    types_after.sort();
                    log.push(FlipRecord {
                        edge: s.edge,
                        axis,
                        types_before: types_before.clone(),
                        types_after,
                        measure_before: before,
                        measure_after: after,
                    });
                    flipped = Some((o.tri, np));
                    break 'tori;
                }
            }
            unresolved.push(format!("torus {}: no 4-4 flip on edge {} lowers the measure", s.index, s.edge));
        }
        match flipped {
            Some((t, p)) => {
                tri = t;
                phi = p;
            }
            None => return Ok(PromoteOutcome { tri, phi, log, unresolved }),
        }
    }
}
