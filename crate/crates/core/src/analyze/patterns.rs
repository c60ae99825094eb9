//! Putative compression discs around even edges met by several almost
//! supportive tori.

use serde::{Deserialize, Serialize};

use super::lsts::find_maximal_lsts;
use super::moves::edge_embeddings;
use super::promote::{support_tori, TorusKind};
use crate::error::Result;
use crate::skeleton::Skeleton;
use crate::surface::DiscType;
use crate::triangulation::Triangulation;
use crate::z2::{classify_with_skeleton, Cocycle, TetType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    /// Degree 6, three almost supportive tori alternating around the edge.
    D6k3,
    /// Degree 5, two almost supportive tori.
    D5k2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressionPattern {
    pub edge: usize,
    pub kind: PatternKind,
    /// Indices into the maximal torus list.
    pub tori: Vec<usize>,
    /// Canonical-surface discs around the edge, in cyclic order.
    pub curve: Vec<(usize, DiscType)>,
}

fn disc(ty: TetType) -> Option<DiscType> {
    match ty {
        TetType::Dq { even_pair } => Some(DiscType::Quad(even_pair)),
        TetType::Dt { vertex } => Some(DiscType::Triangle(vertex)),
        TetType::D0 => None,
    }
}

pub fn compression_pattern_scan(tri: &Triangulation, sk: &Skeleton, phi: &Cocycle) -> Result<Vec<CompressionPattern>> {
    let types = classify_with_skeleton(sk, phi)?;
    let mut lsts = find_maximal_lsts(tri);
    for l in &mut lsts {
        l.tag_with(&types);
    }
    let almost: Vec<_> =
        support_tori(sk, phi, &lsts).into_iter().filter(|s| s.kind == TorusKind::AlmostSupportive).collect();
    let mut out = Vec::new();
    for e in phi.even_edges() {
        let d = sk.degree(e);
        if d != 5 && d != 6 {
            continue;
        }
        let tori: Vec<usize> = almost.iter().filter(|s| s.edge == e).map(|s| s.index).collect();
        let Ok(emb) = edge_embeddings(tri, sk, e) else { continue };
        let mut tets: Vec<usize> = emb.iter().map(|x| x.0).collect();
        tets.sort_unstable();
        tets.dedup();
        if tets.len() != d {
            continue;
        }
        // link position of each torus; a torus must meet the edge once
        let mut pos = Vec::new();
        for &i in &tori {
            let hits: Vec<usize> = (0..d).filter(|&k| lsts[i].tetrahedra.contains(&emb[k].0)).collect();
            if let [k] = hits[..] {
                pos.push(k);
            }
        }
        if pos.len() != tori.len() {
            continue;
        }
        let ty = |k: usize| types[emb[k % d].0];
        let kind = match (d, tori.len()) {
            (6, 3) => {
                let alternating = pos.iter().all(|k| k % 2 == pos[0] % 2);
                (alternating && (0..6).all(|k| ty(k).is_dq())).then_some(PatternKind::D6k3)
            }
            (5, 2) => {
                let (a, b) = (pos[0].min(pos[1]), pos[0].max(pos[1]));
                // the tori sit two apart with a Dq tetrahedron between them
                let mid = if b - a == 2 {
                    Some(a + 1)
                } else if a + 5 - b == 2 {
                    Some((b + 1) % 5)
                } else {
                    None
                };
                mid.and_then(|m| {
                    let rest: Vec<TetType> = (0..5).filter(|&k| k != a && k != b && k != m).map(ty).collect();
                    let same = rest.iter().all(|t| t.is_dq()) || rest.iter().all(|t| matches!(t, TetType::Dt { .. }));
                    (ty(a).is_dq() && ty(b).is_dq() && ty(m).is_dq() && same).then_some(PatternKind::D5k2)
                })
            }
            _ => None,
        };
        if let Some(kind) = kind {
            let curve = emb.iter().filter_map(|&(t, _)| disc(types[t]).map(|dt| (t, dt))).collect();
            out.push(CompressionPattern { edge: e, kind, tori, curve });
        }
    }
    Ok(out)
}
