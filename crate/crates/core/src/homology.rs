//! Cellular first homology of the quotient cell structure, and orientability.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitVec};
use crate::perm::facet_vertices;
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::snf::{smith_normal_form, IntMatrix};
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    /// Torsion coefficients greater than one, each dividing the next.
    pub invariant_factors: Vec<u64>,
    pub betti: usize,
    pub z2_rank: usize,
}

impl HomologyProfile {
    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// `|H1|`, or `None` when the group is infinite.
    pub fn order(&self) -> Option<u64> {
        (self.betti == 0).then(|| self.torsion_order())
    }
}

/// Edge-by-face boundary matrix; column `j` is the boundary of face class `j`.
pub fn face_boundary_matrix(sk: &Skeleton) -> IntMatrix {
    let mut m = IntMatrix::zeros(sk.edges.len(), sk.faces.len());
    for (j, face) in sk.faces.iter().enumerate() {
        let (t, f) = face.members[0];
        let [v0, v1, v2] = facet_vertices(f);
        for (a, b, sign) in [(v1, v2, 1), (v0, v2, -1), (v0, v1, 1)] {
            let e = sk.edge_of[t][crate::perm::edge_index(a, b)];
            m[(e, j)] += sign * sk.edge_direction(t, a, b) as i128;
        }
    }
    m
}

/// Vertex-by-edge boundary matrix.
pub fn edge_boundary_matrix(sk: &Skeleton) -> IntMatrix {
    let mut m = IntMatrix::zeros(sk.vertices.len(), sk.edges.len());
    for (j, e) in sk.edges.iter().enumerate() {
        m[(e.ends[1], j)] += 1;
        m[(e.ends[0], j)] -= 1;
    }
    m
}

fn mod2_rows(m: &IntMatrix) -> Vec<BitVec> {
    (0..m.rows)
        .map(|i| {
            let mut v = BitVec::zeros(m.cols);
            for j in 0..m.cols {
                if m[(i, j)] % 2 != 0 {
                    v.set(j, true);
                }
            }
            v
        })
        .collect()
}

/// H1 of any (possibly bounded) triangulation.
pub fn cellular_homology(tri: &Triangulation) -> HomologyProfile {
    let sk = compute_skeleton(tri);
    homology_from_skeleton(&sk)
}

pub fn homology_from_skeleton(sk: &Skeleton) -> HomologyProfile {
    let d2 = face_boundary_matrix(sk);
    let d1 = edge_boundary_matrix(sk);
    let s2 = smith_normal_form(&d2, false);
    let s1 = smith_normal_form(&d1, false);
    let e = sk.edges.len();
    let betti = e - s1.rank() - s2.rank();
    let invariant_factors: Vec<u64> = s2.diagonal.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();

    // independent count over GF(2)
    let r2 = gf2::rank(&mod2_rows(&d2), d2.cols);
    let r1 = gf2::rank(&mod2_rows(&d1), d1.cols);
    let z2_rank = e - r1 - r2;
    assert_eq!(
        z2_rank,
        betti + invariant_factors.iter().filter(|&&d| d % 2 == 0).count(),
        "GF(2) rank disagrees with integral invariant factors"
    );
    HomologyProfile { invariant_factors, betti, z2_rank }
}

/// H1 of a closed triangulation.
pub fn first_homology(tri: &Triangulation) -> Result<HomologyProfile> {
    if !tri.is_closed() {
        return Err(Error::NotClosed);
    }
    Ok(cellular_homology(tri))
}

/// Closed, with no edge identified with itself in reverse and every vertex
/// link a sphere (equivalently, Euler characteristic zero).
pub fn is_closed_manifold(tri: &Triangulation) -> bool {
    let sk = compute_skeleton(tri);
    tri.is_closed() && sk.invalid_edges.is_empty() && sk.euler_characteristic() == 0
}

/// True iff the tetrahedra admit orientations making every gluing
/// orientation-reversing.
pub fn orientability(tri: &Triangulation) -> bool {
    let n = tri.tet_count();
    let mut orient = vec![0i32; n];
    for start in 0..n {
        if orient[start] != 0 {
            continue;
        }
        orient[start] = 1;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for f in 0..4 {
                let Some(g) = tri.gluing(t, f) else { continue };
                let want = -orient[t] * g.perm.sign();
                if orient[g.tet] == 0 {
                    orient[g.tet] = want;
                    stack.push(g.tet);
                } else if orient[g.tet] != want {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounded_one_tet_solid_torus_has_infinite_cyclic_h1() {
        let t = Triangulation::parse("tri 1\ntet 0: 0:1230 0:3012 - -\n").unwrap();
        let h = cellular_homology(&t);
        assert!(first_homology(&t).is_err());
        assert_eq!((h.betti, h.invariant_factors.len()), (1, 0));
        assert!(orientability(&t));
    }

    #[test]
    fn free_tet_is_a_ball() {
        let h = cellular_homology(&Triangulation::with_tets(1));
        assert_eq!(h, HomologyProfile { invariant_factors: vec![], betti: 0, z2_rank: 0 });
    }
}
