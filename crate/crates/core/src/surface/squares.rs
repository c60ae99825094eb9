//! Twisted squares: tetrahedra with two pairs of opposite edges identified.

use serde::{Deserialize, Serialize};

use crate::perm::{opposite_edge, EDGE_VERTICES};
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SquareKind {
    PinchedRp2,
    Klein,
    Torus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedSquare {
    pub tet: usize,
    /// The two identified opposite pairs, by lower edge slot.
    pub pairs: [usize; 2],
    pub kind: SquareKind,
}

/// Classify the square of tetrahedron `t` spanned by opposite pairs `i` and
/// `j`, if both pairs are identified.
pub fn square(sk: &Skeleton, t: usize, i: usize, j: usize) -> Option<TwistedSquare> {
    let same = |e: usize| sk.edge_of[t][e] == sk.edge_of[t][opposite_edge(e)];
    if !same(i) || !same(j) {
        return None;
    }
    // walk the square v0 v1 v2 v3 with sides from pairs i, j, i, j
    let [v0, v1] = EDGE_VERTICES[i];
    let side_j = [EDGE_VERTICES[j], EDGE_VERTICES[opposite_edge(j)]];
    let v2 = side_j.iter().find_map(|&[a, b]| if a == v1 { Some(b) } else if b == v1 { Some(a) } else { None })?;
    let v3 = 6 - v0 - v1 - v2;
    let dir = |a, b| sk.edge_direction(t, a, b);
    // opposite sides v0v1 / v3v2 and v1v2 / v0v3 run parallel in the square
    let translations = [dir(v0, v1) == dir(v3, v2), dir(v1, v2) == dir(v0, v3)];
    let kind = match translations {
        [true, true] => SquareKind::Torus,
        [false, false] => SquareKind::PinchedRp2,
        _ => SquareKind::Klein,
    };
    Some(TwistedSquare { tet: t, pairs: [i, j], kind })
}

pub fn twisted_square_scan(tri: &Triangulation) -> Vec<TwistedSquare> {
    let sk = compute_skeleton(tri);
    scan_with_skeleton(&sk)
}

pub fn scan_with_skeleton(sk: &Skeleton) -> Vec<TwistedSquare> {
    let mut out = Vec::new();
    for t in 0..sk.edge_of.len() {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            out.extend(square(sk, t, i, j));
        }
    }
    out
}
