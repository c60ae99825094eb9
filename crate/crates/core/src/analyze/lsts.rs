//! Recognition of layered solid tori inside a triangulation.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::build::lst::{lst, meridian_weights_by_homology, torus_boundary};
use crate::homology::orientability;
use crate::isomorphism::isomorphic;
use crate::perm::edge_index;
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::triangulation::Triangulation;
use crate::z2::TetType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeRole {
    Base,
    Interior,
    Boundary,
    Univalent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LstEdge {
    /// Edge class of the ambient triangulation.
    pub ambient: usize,
    pub role: EdgeRole,
    pub lst_degree: usize,
    pub weight: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LstType {
    Dq,
    D0,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LstEmbedding {
    /// Tetrahedra in layering order, the self-glued seed first.
    pub tetrahedra: Vec<usize>,
    pub p: u64,
    pub q: u64,
    /// One entry per edge class of the solid torus itself. Boundary edges of
    /// the torus may coincide in the ambient triangulation.
    pub edges: Vec<LstEdge>,
    /// Ambient `(tet, facet)` of the two boundary faces.
    pub boundary_faces: [(usize, usize); 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tag: Option<LstType>,
}

impl LstEmbedding {
    pub fn ambient_edges(&self) -> BTreeSet<usize> {
        self.edges.iter().map(|e| e.ambient).collect()
    }

    pub fn boundary_edges(&self) -> Vec<&LstEdge> {
        self.edges.iter().filter(|e| matches!(e.role, EdgeRole::Boundary | EdgeRole::Univalent)).collect()
    }

    pub fn interior_edges(&self) -> Vec<&LstEdge> {
        self.edges.iter().filter(|e| matches!(e.role, EdgeRole::Base | EdgeRole::Interior)).collect()
    }

    pub fn univalent(&self) -> &LstEdge {
        self.edges.iter().find(|e| e.role == EdgeRole::Univalent).expect("univalent edge")
    }

    pub fn base(&self) -> Option<&LstEdge> {
        self.edges.iter().find(|e| e.role == EdgeRole::Base)
    }

    /// Tag with `Dq` or `D0` when every tetrahedron has that type.
    pub fn tag_with(&mut self, types: &[TetType]) {
        let all = |f: fn(&TetType) -> bool| self.tetrahedra.iter().all(|&t| f(&types[t]));
        self.tag = if all(|t| t.is_dq()) {
            Some(LstType::Dq)
        } else if all(|t| *t == TetType::D0) {
            Some(LstType::D0)
        } else {
            None
        };
    }
}

/// Growing candidate: tetrahedra plus the gluings used so far.
#[derive(Clone)]
struct Chain {
    tets: Vec<usize>,
    used: BTreeSet<(usize, usize)>,
}

impl Chain {
    fn sub(&self, tri: &Triangulation) -> Triangulation {
        tri.sub_complex(&self.tets, |t, f| self.used.contains(&(t, f)))
    }
}

/// Boundary faces of the chain's solid torus, as ambient `(tet, facet)`.
fn chain_boundary(chain: &Chain, sub_sk: &Skeleton) -> Option<[(usize, usize); 2]> {
    let tb = torus_boundary(sub_sk).ok()?;
    Some(tb.faces.map(|(i, f)| (chain.tets[i], f)))
}

fn sound(sub: &Triangulation, sk: &Skeleton) -> bool {
    sk.vertices.len() == 1 && sk.invalid_edges.is_empty() && torus_boundary(sk).is_ok() && orientability(sub)
}

/// Try to extend the chain by the tetrahedron glued onto both boundary faces.
fn grow(tri: &Triangulation, chain: &Chain, faces: [(usize, usize); 2]) -> Option<Chain> {
    let g1 = tri.gluing(faces[0].0, faces[0].1)?;
    let g2 = tri.gluing(faces[1].0, faces[1].1)?;
    let n = g1.tet;
    if g2.tet != n || chain.tets.contains(&n) {
        return None;
    }
    let (fa, fb) = (g1.perm.apply(faces[0].1), g2.perm.apply(faces[1].1));
    if fa == fb {
        return None;
    }
    // the new tetrahedron's two glued facets share an edge; it must land on
    // the same boundary edge from both sides
    let shared: Vec<usize> = (0..4).filter(|&v| v != fa && v != fb).collect();
    let mut next = chain.clone();
    next.tets.push(n);
    for (i, &(t, f)) in faces.iter().enumerate() {
        next.used.insert((t, f));
        next.used.insert((n, [fa, fb][i]));
    }
    let sub = next.sub(tri);
    let sk = compute_skeleton(&sub);
    if !sound(&sub, &sk) {
        return None;
    }
    let old_sk = compute_skeleton(&chain.sub(tri));
    let landed: Vec<usize> = faces
        .iter()
        .zip([g1, g2])
        .map(|(&(t, _), g)| {
            let inv = g.perm.inverse();
            let i = chain.tets.iter().position(|&x| x == t).unwrap();
            old_sk.edge_of[i][edge_index(inv.apply(shared[0]), inv.apply(shared[1]))]
        })
        .collect();
    (landed[0] == landed[1]).then_some(next)
}

fn seed(tri: &Triangulation, t: usize, f: usize) -> Option<Chain> {
    let g = tri.gluing(t, f)?;
    let back = g.perm.apply(f);
    if g.tet != t || back == f {
        return None;
    }
    let chain = Chain { tets: vec![t], used: [(t, f), (t, back)].into() };
    let sub = chain.sub(tri);
    isomorphic(&sub, &lst(1, 2).ok()?.0).then_some(chain)
}

/// An embedded torus may not have its two boundary faces glued together.
fn open_in(tri: &Triangulation, faces: [(usize, usize); 2]) -> bool {
    match tri.gluing(faces[0].0, faces[0].1) {
        Some(g) => (g.tet, g.perm.apply(faces[0].1)) != faces[1],
        None => true,
    }
}

fn embedding(tri: &Triangulation, amb: &Skeleton, chain: &Chain) -> LstEmbedding {
    let sub = chain.sub(tri);
    let sk = compute_skeleton(&sub);
    let weights = meridian_weights_by_homology(&sub).expect("solid torus");
    let tb = torus_boundary(&sk).expect("torus boundary");
    let mut bw: Vec<u64> = tb.edges.iter().map(|&e| weights[e]).collect();
    bw.sort_unstable();
    let base = (chain.tets.len() > 1).then(|| {
        // first layering: the edge shared by the two glued facets of tet 1
        let t1 = chain.tets[1];
        let glued: Vec<usize> = (0..4)
            .filter(|&f| chain.used.contains(&(t1, f)) && tri.gluing(t1, f).map(|g| g.tet) == Some(chain.tets[0]))
            .collect();
        let v: Vec<usize> = (0..4).filter(|v| !glued.contains(v)).collect();
        sk.edge_of[1][edge_index(v[0], v[1])]
    });
    let edges = sk
        .edges
        .iter()
        .enumerate()
        .map(|(e, class)| {
            let s = class.slots[0];
            let role = if class.boundary {
                if class.degree() == 1 {
                    EdgeRole::Univalent
                } else {
                    EdgeRole::Boundary
                }
            } else if Some(e) == base {
                EdgeRole::Base
            } else {
                EdgeRole::Interior
            };
            LstEdge { ambient: amb.edge_of[chain.tets[s.tet]][s.edge], role, lst_degree: class.degree(), weight: weights[e] }
        })
        .collect();
    LstEmbedding {
        tetrahedra: chain.tets.clone(),
        p: bw[0],
        q: bw[1],
        edges,
        boundary_faces: tb.faces.map(|(i, f)| (chain.tets[i], f)),
        tag: None,
    }
}

/// All layered solid tori not contained in a larger one. Each is grown from
/// a self-glued one-tetrahedron seed for as long as a single tetrahedron
/// covers both boundary faces.
pub fn find_maximal_lsts(tri: &Triangulation) -> Vec<LstEmbedding> {
    let amb = compute_skeleton(tri);
    let mut found: Vec<Chain> = Vec::new();
    for t in 0..tri.tet_count() {
        for f in 0..4 {
            let Some(mut chain) = seed(tri, t, f) else { continue };
            if tri.gluing(t, f).map(|g| g.perm.apply(f)) < Some(f) {
                continue; // same seed seen from the other facet
            }
            let sk = compute_skeleton(&chain.sub(tri));
            let Some(mut faces) = chain_boundary(&chain, &sk) else { continue };
            if !open_in(tri, faces) {
                continue;
            }
            while let Some(next) = grow(tri, &chain, faces) {
                let sk = compute_skeleton(&next.sub(tri));
                let nf = chain_boundary(&next, &sk).expect("checked in grow");
                if !open_in(tri, nf) {
                    break;
                }
                chain = next;
                faces = nf;
            }
            found.push(chain);
        }
    }
    let sets: Vec<BTreeSet<usize>> = found.iter().map(|c| c.tets.iter().copied().collect()).collect();
    let mut out = Vec::new();
    for (i, c) in found.iter().enumerate() {
        let dominated = sets.iter().enumerate().any(|(j, s)| {
            j != i && sets[i].is_subset(s) && (sets[i] != *s || j < i)
        });
        if !dominated {
            out.push(embedding(tri, &amb, c));
        }
    }
    out
}

/// Shared ambient edge classes between each pair of tori; the diagonal is 0.
pub fn lst_intersection_matrix(lsts: &[LstEmbedding]) -> Vec<Vec<usize>> {
    let sets: Vec<BTreeSet<usize>> = lsts.iter().map(LstEmbedding::ambient_edges).collect();
    (0..lsts.len())
        .map(|i| (0..lsts.len()).map(|j| if i == j { 0 } else { sets[i].intersection(&sets[j]).count() }).collect())
        .collect()
}

/// Whether ambient edge `e` lies in the interior of a two-tetrahedron
/// `T(1,3,4)` embedded in the triangulation.
pub fn interior_to_t134(tri: &Triangulation, amb: &Skeleton, e: usize) -> bool {
    for t in 0..tri.tet_count() {
        for f in 0..4 {
            let Some(chain) = seed(tri, t, f) else { continue };
            let sk = compute_skeleton(&chain.sub(tri));
            let Some(faces) = chain_boundary(&chain, &sk) else { continue };
            let Some(two) = grow(tri, &chain, faces) else { continue };
            let sub = two.sub(tri);
            let ssk = compute_skeleton(&sub);
            if !open_in(tri, chain_boundary(&two, &ssk).expect("sound")) {
                continue;
            }
            let hit = ssk.edges.iter().any(|c| {
                !c.boundary && {
                    let s = c.slots[0];
                    amb.edge_of[two.tets[s.tet]][s.edge] == e
                }
            });
            if hit {
                return true;
            }
        }
    }
    false
}
