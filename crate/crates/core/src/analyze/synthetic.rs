//! Small bounded complexes that realise the octahedron and wheel patterns
//! around an even edge. Used as fixtures by the tests and the verify suite.

use crate::build::lst;
use crate::homology::orientability;
use crate::perm::{edge_index, facet_vertices, Perm4};
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::triangulation::Triangulation;
use crate::z2::{basis_from_skeleton, nonzero_classes, Cocycle};

use super::lsts::find_maximal_lsts;
use super::moves::edge_embeddings;

/// Four tetrahedra around one interior edge (edge `01` of tetrahedron 0).
pub fn octahedron() -> Triangulation {
    let mut t = Triangulation::with_tets(4);
    for i in 0..4 {
        t.join(i, 2, (i + 1) % 4, Perm4::from_images([0, 1, 3, 2]));
    }
    t
}

/// First cocycle (in binary counting order over a kernel basis) accepted by
/// `pred`.
pub fn find_colouring(sk: &Skeleton, pred: impl Fn(&Cocycle) -> bool) -> Option<Cocycle> {
    nonzero_classes(&basis_from_skeleton(sk)).into_iter().find(|c| pred(c))
}

/// Vertices of facet `f` of `t` ordered as `(a, b, c)` with `a b` the edge of
/// class `edge`, oriented by `flip`.
fn face_frame(sk: &Skeleton, t: usize, f: usize, edge: usize, flip: bool) -> Option<[usize; 3]> {
    let v = facet_vertices(f);
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        if sk.edge_of[t][edge_index(v[i], v[j])] == edge {
            return Some(if flip { [v[j], v[i], v[k]] } else { [v[i], v[j], v[k]] });
        }
    }
    None
}

/// Close a wheel around the univalent edges of the given solid tori (each
/// appended copy of `lst(1, 3)`), inserting `gaps[i]` connector tetrahedra
/// after torus `i`. Returns the complex, the wheel edge and the torus tops.
fn wheel(gaps: &[usize], choice: u64) -> Option<(Triangulation, usize, Vec<usize>)> {
    let (piece, meta) = lst(1, 3).ok()?;
    let psk = compute_skeleton(&piece);
    let top = piece.tet_count() - 1;
    let mut tri = Triangulation::with_tets(0);
    let mut tops = Vec::new();
    for _ in gaps {
        let off = tri.append(&piece);
        tops.push(off + top);
    }
    // boundary faces of the top tetrahedron, ordered by the choice bits
    let mut bit = 0;
    let mut take = || {
        let b = choice >> bit & 1 == 1;
        bit += 1;
        b
    };
    let free: Vec<usize> = (0..4).filter(|&f| piece.gluing(top, f).is_none()).collect();
    let mut ends = Vec::new();
    for &tp in &tops {
        let (x, y) = if take() { (free[1], free[0]) } else { (free[0], free[1]) };
        ends.push((tp, x, y));
    }
    let uni = meta.univalent_edge;
    let mut connectors = Vec::new();
    for (i, &g) in gaps.iter().enumerate() {
        let first = tri.tet_count();
        for _ in 0..g {
            tri.add_tet();
        }
        for j in 0..g.saturating_sub(1) {
            tri.join(first + j, 2, first + j + 1, Perm4::from_images([0, 1, 3, 2]));
        }
        let f_out = ends[i].2;
        let f_in = ends[(i + 1) % gaps.len()].1;
        let out_frame = face_frame(&psk, top, f_out, uni, take())?;
        let in_frame = face_frame(&psk, top, f_in, uni, take())?;
        connectors.push((first, g, out_frame, in_frame));
    }
    for (i, &(first, g, a, b)) in connectors.iter().enumerate() {
        let (t_out, _, f_out) = ends[i];
        let (t_in, f_in, _) = ends[(i + 1) % gaps.len()];
        let mut p = [0u8; 4];
        p[0] = a[0] as u8;
        p[1] = a[1] as u8;
        p[2] = a[2] as u8;
        p[3] = f_out as u8;
        tri.join(first, 3, t_out, Perm4::from_images(p));
        let mut q = [0u8; 4];
        q[0] = b[0] as u8;
        q[1] = b[1] as u8;
        q[3] = b[2] as u8;
        q[2] = f_in as u8;
        tri.join(first + g - 1, 2, t_in, Perm4::from_images(q));
    }
    let sk = compute_skeleton(&tri);
    if !sk.invalid_edges.is_empty() || !orientability(&tri) {
        return None;
    }
    let e = sk.edge_of[tops[0]][psk.edges[uni].slots[0].edge];
    let length: usize = gaps.len() + gaps.iter().sum::<usize>();
    let emb = edge_embeddings(&tri, &sk, e).ok()?;
    (emb.len() == length && tops.iter().all(|&t| emb.iter().any(|x| x.0 == t))).then_some((tri, e, tops))
}

/// Every consistent wheel built from `gaps`, over all gluing choices.
fn wheels(gaps: &[usize]) -> Vec<(Triangulation, usize, Vec<usize>)> {
    let bits = gaps.len() * 3;
    (0..1u64 << bits).filter_map(|c| wheel(gaps, c)).collect()
}

/// A `T(1,3,4)` whose univalent edge is surrounded by three further
/// tetrahedra, coloured so that the four types around the edge read
/// `pattern` (labels as in `TetType::label`) starting at the torus.
pub fn supportive_octahedron(pattern: [&str; 4]) -> Option<(Triangulation, Cocycle, usize)> {
    for (tri, e, tops) in wheels(&[3]) {
        let sk = compute_skeleton(&tri);
        let emb = edge_embeddings(&tri, &sk, e).ok()?;
        let start = emb.iter().position(|x| x.0 == tops[0])?;
        let lsts = find_maximal_lsts(&tri);
        let found = find_colouring(&sk, |phi| {
            if phi.is_odd(e) {
                return false;
            }
            let Ok(types) = crate::z2::classify_with_skeleton(&sk, phi) else { return false };
            let ok = (0..4).all(|i| types[emb[(start + i) % 4].0].label() == pattern[i]);
            ok && {
                let mut l = lsts.clone();
                for x in &mut l {
                    x.tag_with(&types);
                }
                super::promote::support_tori(&sk, phi, &l)
                    .iter()
                    .any(|s| s.kind == super::promote::TorusKind::Supportive && s.edge == e)
            }
        });
        if let Some(phi) = found {
            return Some((tri, phi, e));
        }
    }
    None
}

/// Three copies of `T(1,3,4)` alternating with three connectors around a
/// degree-6 even edge, every tetrahedron of the wheel of type Dq.
pub fn compression_wheel() -> Option<(Triangulation, Cocycle, usize)> {
    for (tri, e, _) in wheels(&[1, 1, 1]) {
        let sk = compute_skeleton(&tri);
        let found = find_colouring(&sk, |phi| {
            !phi.is_odd(e)
                && super::patterns::compression_pattern_scan(&tri, &sk, phi)
                    .map(|p| p.iter().any(|x| x.edge == e))
                    .unwrap_or(false)
        });
        if let Some(phi) = found {
            return Some((tri, phi, e));
        }
    }
    None
}
