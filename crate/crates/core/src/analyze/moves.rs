//! 2-3, 3-2 and 4-4 moves.
//!
//! Every move replaces a small region of tetrahedra by new tetrahedra spanning
//! the same labelled vertices. Each old tetrahedron gets a label per vertex,
//! the new tetrahedra are given as label quadruples, and boundary faces of the
//! region are matched by their label sets.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{facet_vertices, Perm4};
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::triangulation::{Gluing, Triangulation};
use crate::z2::Cocycle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MoveSpec {
    /// Face given as `(tet, facet)`.
    Move23 { tet: usize, facet: usize },
    Move32 { edge: usize },
    /// `axis` 0 makes the link vertices 0 and 2 (in link order) the ends of
    /// the new edge, axis 1 the link vertices 1 and 3.
    Move44 { edge: usize, axis: usize },
}

/// Tetrahedra around an interior edge in cyclic order. Each entry maps
/// roles `0, 1` to the edge ends and `2, 3` to the other two vertices; step
/// `i + 1` is reached through facet `perm_i(2)`.
pub fn edge_embeddings(tri: &Triangulation, sk: &Skeleton, edge: usize) -> Result<Vec<(usize, Perm4)>> {
    let class = &sk.edges[edge];
    if class.boundary {
        return Err(Error::Move(format!("edge {edge} is on the boundary")));
    }
    if sk.invalid_edges.contains(&edge) {
        return Err(Error::Move(format!("edge {edge} is invalid")));
    }
    let s = class.slots[0];
    let [a, b] = crate::perm::EDGE_VERTICES[s.edge];
    let rest: Vec<usize> = (0..4).filter(|&v| v != a && v != b).collect();
    let start = Perm4::from_images([a as u8, b as u8, rest[0] as u8, rest[1] as u8]);
    let mut out = vec![(s.tet, start)];
    let (mut t, mut p) = (s.tet, start);
    loop {
        let g = tri.gluing(t, p.apply(2)).expect("interior edge");
        p = g.perm * p * Perm4::transposition(2, 3);
        t = g.tet;
        if (t, p) == (s.tet, start) {
            break;
        }
        if out.len() > class.degree() {
            return Err(Error::Move(format!("edge {edge} link does not close")));
        }
        out.push((t, p));
    }
    if out.len() != class.degree() {
        return Err(Error::Move(format!("edge {edge} link has the wrong length")));
    }
    Ok(out)
}

/// Result of a move, with enough bookkeeping to follow edges across it.
#[derive(Clone, Debug)]
pub struct MoveOutcome {
    pub tri: Triangulation,
    /// Old tetrahedron index to new index, `None` for removed ones.
    pub kept: Vec<Option<usize>>,
    /// First index of the appended tetrahedra.
    pub first_new: usize,
    /// Label of each vertex of every appended tetrahedron.
    pub new_labels: Vec<[u8; 4]>,
    old_tets: Vec<usize>,
    old_labels: Vec<[u8; 4]>,
}

fn retriangulate(tri: &Triangulation, old: &[usize], old_labels: &[[u8; 4]], new: &[[u8; 4]]) -> Result<MoveOutcome> {
    let n = tri.tet_count();
    let mut region = vec![usize::MAX; n];
    for (i, &t) in old.iter().enumerate() {
        if region[t] != usize::MAX {
            return Err(Error::Move(format!("tetrahedron {t} appears twice")));
        }
        region[t] = i;
    }
    let face_key = |labels: &[u8; 4], f: usize| {
        let mut k = facet_vertices(f).map(|v| labels[v]);
        k.sort_unstable();
        k
    };

    // faces inside the region are glued consistently with the labels
    let mut boundary: BTreeMap<[u8; 3], (usize, usize)> = BTreeMap::new();
    for (i, &t) in old.iter().enumerate() {
        for f in 0..4 {
            let key = face_key(&old_labels[i], f);
            let internal = match tri.gluing(t, f) {
                Some(g) if region[g.tet] != usize::MAX => {
                    let j = region[g.tet];
                    let ff = g.perm.apply(f);
                    face_key(&old_labels[j], ff) == key
                        && facet_vertices(f).iter().all(|&v| old_labels[j][g.perm.apply(v)] == old_labels[i][v])
                }
                _ => false,
            };
            if !internal && boundary.insert(key, (i, f)).is_some() {
                return Err(Error::Move(format!("region boundary face {key:?} repeats")));
            }
        }
    }

    let mut kept = vec![None; n];
    let mut next = 0;
    for t in 0..n {
        if region[t] == usize::MAX {
            kept[t] = Some(next);
            next += 1;
        }
    }
    let first_new = next;
    let mut out = Triangulation::with_tets(first_new + new.len());

    for t in 0..n {
        let Some(nt) = kept[t] else { continue };
        for f in 0..4 {
            if let Some(g) = tri.gluing(t, f) {
                if let Some(ng) = kept[g.tet] {
                    out.set_raw(nt, f, Some(Gluing { tet: ng, perm: g.perm }));
                }
            }
        }
    }

    let mut new_faces: BTreeMap<[u8; 3], Vec<(usize, usize)>> = BTreeMap::new();
    for (i, labels) in new.iter().enumerate() {
        for f in 0..4 {
            new_faces.entry(face_key(labels, f)).or_default().push((i, f));
        }
    }
    // vertex of new tet `i` carrying `label`
    let pos = |labels: &[u8; 4], label: u8| labels.iter().position(|&l| l == label).expect("label present");
    let label_perm = |from: &[u8; 4], to: &[u8; 4], f: usize| {
        let mut img = [0u8; 4];
        for v in facet_vertices(f) {
            img[v] = pos(to, from[v]) as u8;
        }
        img[f] = 6 - facet_vertices(f).iter().map(|&v| img[v]).sum::<u8>();
        Perm4::from_images(img)
    };

    for (key, members) in &new_faces {
        match members.as_slice() {
            [(i, f), (j, g)] => {
                if boundary.contains_key(key) {
                    return Err(Error::Move(format!("face {key:?} is both internal and on the boundary")));
                }
                let p = label_perm(&new[*i], &new[*j], *f);
                debug_assert_eq!(p.apply(*f), *g);
                out.join(first_new + i, *f, first_new + j, p);
            }
            [(i, f)] => {
                let &(oi, of) = boundary
                    .get(key)
                    .ok_or_else(|| Error::Move(format!("new face {key:?} has no boundary partner")))?;
                // new vertex -> old region vertex with the same label
                let to_old = label_perm(&new[*i], &old_labels[oi], *f);
                let Some(g) = tri.gluing(old[oi], of) else { continue };
                let ext = g.perm * to_old;
                if let Some(nt) = kept[g.tet] {
                    out.set_raw(first_new + i, *f, Some(Gluing { tet: nt, perm: ext }));
                    out.set_raw(nt, ext.apply(*f), Some(Gluing { tet: first_new + i, perm: ext.inverse() }));
                } else {
                    // glued back into the region: route through the other boundary face
                    let oj = region[g.tet];
                    let of2 = g.perm.apply(of);
                    let key2 = face_key(&old_labels[oj], of2);
                    let Some(&[(j, f2)]) = new_faces.get(&key2).map(Vec::as_slice) else {
                        return Err(Error::Move("region face glued to an internal face".into()));
                    };
                    let back = label_perm(&old_labels[oj], &new[j], of2);
                    let p = back * ext;
                    out.set_raw(first_new + i, *f, Some(Gluing { tet: first_new + j, perm: p }));
                    debug_assert_eq!(p.apply(*f), f2);
                }
            }
            _ => return Err(Error::Move(format!("face {key:?} used by more than two new tetrahedra"))),
        }
    }
    if new_faces.iter().filter(|(_, m)| m.len() == 1).count() != boundary.len() {
        return Err(Error::Move("new region boundary does not match the old one".into()));
    }
    out.validate()?;
    Ok(MoveOutcome {
        tri: out,
        kept,
        first_new,
        new_labels: new.to_vec(),
        old_tets: old.to_vec(),
        old_labels: old_labels.to_vec(),
    })
}

fn move23(tri: &Triangulation, t: usize, f: usize) -> Result<MoveOutcome> {
    if t >= tri.tet_count() || f > 3 {
        return Err(Error::Move(format!("no face ({t}, {f})")));
    }
    let g = tri.gluing(t, f).ok_or_else(|| Error::Move(format!("face ({t}, {f}) is on the boundary")))?;
    if g.tet == t {
        return Err(Error::Move(format!("face ({t}, {f}) joins tetrahedron {t} to itself")));
    }
    let mut a = [0u8; 4];
    let mut b = [0u8; 4];
    for (k, v) in facet_vertices(f).into_iter().enumerate() {
        a[v] = k as u8;
        b[g.perm.apply(v)] = k as u8;
    }
    a[f] = 3;
    b[g.perm.apply(f)] = 4;
    retriangulate(tri, &[t, g.tet], &[a, b], &[[3, 4, 0, 1], [3, 4, 1, 2], [3, 4, 2, 0]])
}

fn link_labels(emb: &[(usize, Perm4)]) -> (Vec<usize>, Vec<[u8; 4]>) {
    let d = emb.len();
    let tets = emb.iter().map(|&(t, _)| t).collect();
    let labels = emb
        .iter()
        .enumerate()
        .map(|(i, &(_, p))| {
            let mut l = [0u8; 4];
            l[p.apply(0)] = 0;
            l[p.apply(1)] = 1;
            l[p.apply(2)] = 2 + i as u8;
            l[p.apply(3)] = 2 + ((i + 1) % d) as u8;
            l
        })
        .collect();
    (tets, labels)
}

fn distinct(tets: &[usize]) -> bool {
    let mut s = tets.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len() == tets.len()
}

fn move32(tri: &Triangulation, sk: &Skeleton, edge: usize) -> Result<MoveOutcome> {
    check_edge(sk, edge, 3)?;
    let emb = edge_embeddings(tri, sk, edge)?;
    let (tets, labels) = link_labels(&emb);
    if !distinct(&tets) {
        return Err(Error::Move(format!("edge {edge} does not meet three distinct tetrahedra")));
    }
    retriangulate(tri, &tets, &labels, &[[2, 3, 4, 0], [2, 3, 4, 1]])
}

fn move44(tri: &Triangulation, sk: &Skeleton, edge: usize, axis: usize) -> Result<MoveOutcome> {
    if axis > 1 {
        return Err(Error::Move(format!("axis {axis} is not 0 or 1")));
    }
    check_edge(sk, edge, 4)?;
    let emb = edge_embeddings(tri, sk, edge)?;
    let (tets, labels) = link_labels(&emb);
    if !distinct(&tets) {
        return Err(Error::Move(format!("edge {edge} does not meet four distinct tetrahedra")));
    }
    // octahedron vertices 0..6, opposite pairs {0,1}, {2,4}, {3,5}
    let (x, y, ring) = if axis == 0 { (2, 4, [0, 3, 1, 5]) } else { (3, 5, [0, 2, 1, 4]) };
    let new: Vec<[u8; 4]> = (0..4).map(|i| [x, y, ring[i], ring[(i + 1) % 4]]).collect();
    retriangulate(tri, &tets, &labels, &new)
}

fn check_edge(sk: &Skeleton, edge: usize, degree: usize) -> Result<()> {
    if edge >= sk.edges.len() {
        return Err(Error::Move(format!("no edge {edge}")));
    }
    if sk.degree(edge) != degree {
        return Err(Error::Move(format!("edge {edge} has degree {}, not {degree}", sk.degree(edge))));
    }
    Ok(())
}

pub fn apply_move(tri: &Triangulation, mv: MoveSpec) -> Result<MoveOutcome> {
    match mv {
        MoveSpec::Move23 { tet, facet } => move23(tri, tet, facet),
        MoveSpec::Move32 { edge } => move32(tri, &compute_skeleton(tri), edge),
        MoveSpec::Move44 { edge, axis } => move44(tri, &compute_skeleton(tri), edge, axis),
    }
}

pub fn pachner(tri: &Triangulation, mv: MoveSpec) -> Result<Triangulation> {
    apply_move(tri, mv).map(|o| o.tri)
}

impl MoveOutcome {
    /// Carry a cocycle across the move. Old edges keep their parity; an
    /// edge only present in the new tetrahedra takes the parity forced by a
    /// triangle through it.
    pub fn transfer(&self, old: &Triangulation, phi: &Cocycle) -> Result<Cocycle> {
        let osk = compute_skeleton(old);
        let nsk = compute_skeleton(&self.tri);
        let mut by_label: BTreeMap<(u8, u8), bool> = BTreeMap::new();
        for (i, &t) in self.old_tets.iter().enumerate() {
            for (e, &[a, b]) in crate::perm::EDGE_VERTICES.iter().enumerate() {
                let (x, y) = order(self.old_labels[i][a], self.old_labels[i][b]);
                by_label.insert((x, y), phi.is_odd(osk.edge_of[t][e]));
            }
        }
        let labels: Vec<u8> = {
            let mut l: Vec<u8> = self.new_labels.iter().flatten().copied().collect();
            l.sort_unstable();
            l.dedup();
            l
        };
        let parity = |x: u8, y: u8| -> Option<bool> {
            let (x, y) = order(x, y);
            by_label.get(&(x, y)).copied().or_else(|| {
                labels.iter().find_map(|&z| {
                    let a = by_label.get(&order(x, z))?;
                    let b = by_label.get(&order(y, z))?;
                    Some(a ^ b)
                })
            })
        };
        let mut old_of_new = vec![None; self.tri.tet_count()];
        for (t, k) in self.kept.iter().enumerate() {
            if let Some(k) = k {
                old_of_new[*k] = Some(t);
            }
        }
        let mut bits = Vec::with_capacity(nsk.edges.len());
        for class in &nsk.edges {
            let s = class.slots[0];
            let bit = match old_of_new[s.tet] {
                Some(t) => phi.is_odd(osk.edge_of[t][s.edge]),
                None => {
                    let l = self.new_labels[s.tet - self.first_new];
                    let [a, b] = crate::perm::EDGE_VERTICES[s.edge];
                    parity(l[a], l[b]).ok_or_else(|| Error::Move("cannot transfer cocycle".into()))?
                }
            };
            bits.push(bit);
        }
        let out = Cocycle { bits };
        if !out.is_cocycle(&nsk) {
            return Err(Error::Move("transferred cocycle fails the face condition".into()));
        }
        Ok(out)
    }
}

fn order(a: u8, b: u8) -> (u8, u8) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}
