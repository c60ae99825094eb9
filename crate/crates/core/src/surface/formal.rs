//! Edge and tetrahedral solutions with negative quad entries, and the formal
//! Euler characteristic functional.

use num_rational::Ratio;

use super::coord::{DiscType, NormalCoordinate, TetCoord};
use crate::perm::EDGE_VERTICES;
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::triangulation::Triangulation;

/// `+1` on each triangle and `-1` on each quad of tetrahedron `t`.
pub fn tetrahedral_solution(tets: usize, t: usize) -> NormalCoordinate {
    let mut c = NormalCoordinate::zero(tets);
    c.formal = true;
    c.tets[t] = TetCoord { tri: [1; 4], quad: [-1; 3], oct: [0; 3] };
    c
}

/// For every slot `ab` of edge class `e`: `+1` on the triangles at `a` and
/// `b`, `-1` on the quad separating `ab` from its opposite edge.
pub fn edge_solution(sk: &Skeleton, e: usize) -> NormalCoordinate {
    let mut c = NormalCoordinate::zero(sk.edge_of.len());
    c.formal = true;
    for s in &sk.edges[e].slots {
        let [a, b] = EDGE_VERTICES[s.edge];
        let tc = &mut c.tets[s.tet];
        tc.tri[a] += 1;
        tc.tri[b] += 1;
        tc.quad[s.edge.min(5 - s.edge)] -= 1;
    }
    c
}

/// Linear extension of the Euler characteristic: each disc counts
/// `1 - arcs/2 + sum over its corners of 1/degree`.
pub fn formal_chi(sk: &Skeleton, coord: &NormalCoordinate) -> Ratio<i64> {
    let mut chi = Ratio::from_integer(0);
    for (t, c) in coord.tets.iter().enumerate() {
        for d in DiscType::ALL {
            let n = c.get(d);
            if n == 0 {
                continue;
            }
            let arcs: i64 = (0..4).map(|f| d.arcs(f).len() as i64).sum();
            let mut disc = Ratio::from_integer(1) - Ratio::new(arcs, 2);
            for e in 0..6 {
                let hits = d.edge_hits(e);
                if hits != 0 {
                    disc += Ratio::new(hits, sk.degree(sk.edge_of[t][e]) as i64);
                }
            }
            chi += disc * n;
        }
    }
    chi
}

pub struct SpecialSolutions {
    pub edge: Vec<NormalCoordinate>,
    pub tetrahedral: Vec<NormalCoordinate>,
    pub skeleton: Skeleton,
}

impl SpecialSolutions {
    pub fn formal_chi(&self, coord: &NormalCoordinate) -> Ratio<i64> {
        formal_chi(&self.skeleton, coord)
    }
}

pub fn special_solutions(tri: &Triangulation) -> SpecialSolutions {
    let skeleton = compute_skeleton(tri);
    let n = tri.tet_count();
    SpecialSolutions {
        edge: (0..skeleton.edges.len()).map(|e| edge_solution(&skeleton, e)).collect(),
        tetrahedral: (0..n).map(|t| tetrahedral_solution(n, t)).collect(),
        skeleton,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{layered_loop, seifert_family, Family};
    use crate::surface::coord::euler_char;

    #[test]
    fn solution_characteristics() {
        for t in [layered_loop(6, true).unwrap(), seifert_family(Family::M, 1, 2, 1).unwrap().0] {
            let s = special_solutions(&t);
            for c in &s.edge {
                assert_eq!(s.formal_chi(c), Ratio::from_integer(2));
            }
            for c in &s.tetrahedral {
                assert_eq!(s.formal_chi(c), Ratio::from_integer(1));
            }
            let link = NormalCoordinate::vertex_link(t.tet_count());
            assert_eq!(s.formal_chi(&link), Ratio::from_integer(euler_char(&t, &link).unwrap()));
        }
    }
}
