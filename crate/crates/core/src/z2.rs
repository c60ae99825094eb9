//! Z2 edge colourings: cocycles, tetrahedron types and parity censuses.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{kernel, BitVec};
use crate::perm::{edge_index, facet_vertices, opposite_edge};
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::triangulation::Triangulation;

/// A GF(2) value per edge class; `true` means odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cocycle {
    pub bits: Vec<bool>,
}

impl Cocycle {
    pub fn zero(edges: usize) -> Cocycle {
        Cocycle { bits: vec![false; edges] }
    }

    pub fn is_odd(&self, edge: usize) -> bool {
        self.bits[edge]
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    pub fn even_edges(&self) -> Vec<usize> {
        (0..self.bits.len()).filter(|&e| !self.bits[e]).collect()
    }

    pub fn sum(&self, other: &Cocycle) -> Cocycle {
        Cocycle { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect() }
    }

    /// Whether every face relation holds.
    pub fn is_cocycle(&self, sk: &Skeleton) -> bool {
        self.bits.len() == sk.edges.len() && face_relations(sk).iter().all(|r| !r.dot(&BitVec::from_bools(&self.bits)))
    }

    pub fn to_bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

/// Edge classes on the three sides of facet `f` of tetrahedron `t`.
pub fn face_edges(sk: &Skeleton, t: usize, f: usize) -> [usize; 3] {
    let v = facet_vertices(f);
    [
        sk.edge_of[t][edge_index(v[1], v[2])],
        sk.edge_of[t][edge_index(v[0], v[2])],
        sk.edge_of[t][edge_index(v[0], v[1])],
    ]
}

/// One GF(2) row per face class: the sum of its three sides.
pub fn face_relations(sk: &Skeleton) -> Vec<BitVec> {
    sk.faces
        .iter()
        .map(|fc| {
            let (t, f) = fc.members[0];
            let mut row = BitVec::zeros(sk.edges.len());
            for e in face_edges(sk, t, f) {
                row.flip(e);
            }
            row
        })
        .collect()
}

fn require_closed_one_vertex(tri: &Triangulation, sk: &Skeleton) -> Result<()> {
    if !tri.is_closed() {
        return Err(Error::NotClosed);
    }
    if sk.vertices.len() != 1 {
        return Err(Error::NotOneVertex(sk.vertices.len()));
    }
    Ok(())
}

/// Basis of H^1(M; Z2) as edge colourings.
pub fn cocycle_basis(tri: &Triangulation) -> Result<Vec<Cocycle>> {
    let sk = compute_skeleton(tri);
    require_closed_one_vertex(tri, &sk)?;
    Ok(basis_from_skeleton(&sk))
}

pub fn basis_from_skeleton(sk: &Skeleton) -> Vec<Cocycle> {
    kernel(&face_relations(sk), sk.edges.len()).into_iter().map(|v| Cocycle { bits: v.to_bools() }).collect()
}

/// Every nonzero combination of `basis`, in binary counting order.
pub fn nonzero_classes(basis: &[Cocycle]) -> Vec<Cocycle> {
    let Some(first) = basis.first() else { return Vec::new() };
    (1u64..1 << basis.len())
        .map(|mask| {
            let mut c = Cocycle::zero(first.bits.len());
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    c = c.sum(b);
                }
            }
            c
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TetType {
    /// One opposite pair even (`even_pair` indexes the lower edge slot).
    Dq { even_pair: usize },
    /// The three edges at `vertex` are odd.
    Dt { vertex: usize },
    D0,
}

impl TetType {
    pub fn label(self) -> &'static str {
        match self {
            TetType::Dq { .. } => "Dq",
            TetType::Dt { .. } => "Dt",
            TetType::D0 => "D0",
        }
    }

    pub fn is_dq(self) -> bool {
        matches!(self, TetType::Dq { .. })
    }
}

/// Type of a tetrahedron from its six edge parities (`true` = odd).
pub fn tet_type(odd: [bool; 6]) -> Option<TetType> {
    let n = odd.iter().filter(|&&b| b).count();
    match n {
        0 => Some(TetType::D0),
        4 => (0..3).find(|&k| !odd[k] && !odd[opposite_edge(k)]).map(|k| TetType::Dq { even_pair: k }),
        3 => (0..4)
            .find(|&v| (0..4).filter(|&w| w != v).all(|w| odd[edge_index(v, w)]))
            .map(|vertex| TetType::Dt { vertex }),
        _ => None,
    }
}

pub fn tet_parities(sk: &Skeleton, phi: &Cocycle, t: usize) -> [bool; 6] {
    std::array::from_fn(|e| phi.is_odd(sk.edge_of[t][e]))
}

pub fn classify_tetrahedra(tri: &Triangulation, phi: &Cocycle) -> Result<Vec<TetType>> {
    classify_with_skeleton(&compute_skeleton(tri), phi)
}

pub fn classify_with_skeleton(sk: &Skeleton, phi: &Cocycle) -> Result<Vec<TetType>> {
    if phi.bits.len() != sk.edges.len() {
        return Err(Error::InvalidParameter(format!(
            "colouring has {} bits for {} edges",
            phi.bits.len(),
            sk.edges.len()
        )));
    }
    (0..sk.edge_of.len()).map(|t| tet_type(tet_parities(sk, phi, t)).ok_or(Error::NotACocycle(t))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenSubcomplex {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub tetrahedra: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCensus {
    pub e_count: usize,
    pub o_count: usize,
    /// Degree `d` to the number of even edges of degree `d`.
    pub even_degree_histogram: BTreeMap<usize, usize>,
    pub e_tilde: usize,
    pub n_q: usize,
    pub n_t: usize,
    pub n_0: usize,
    pub tet_count: usize,
    pub even_subcomplex: EvenSubcomplex,
}

impl ParityCensus {
    pub fn even_of_degree(&self, d: usize) -> usize {
        self.even_degree_histogram.get(&d).copied().unwrap_or(0)
    }
}

pub fn parity_census(tri: &Triangulation, phi: &Cocycle) -> Result<ParityCensus> {
    census_with_skeleton(&compute_skeleton(tri), phi)
}

pub fn census_with_skeleton(sk: &Skeleton, phi: &Cocycle) -> Result<ParityCensus> {
    let types = classify_with_skeleton(sk, phi)?;
    let even = phi.even_edges();
    let mut hist = BTreeMap::new();
    for &e in &even {
        *hist.entry(sk.degree(e)).or_insert(0) += 1;
    }
    let e_tilde = even.iter().map(|&e| sk.degree(e)).sum();
    let count = |f: fn(&TetType) -> bool| types.iter().filter(|t| f(t)).count();
    let n_q = count(|t| matches!(t, TetType::Dq { .. }));
    let n_t = count(|t| matches!(t, TetType::Dt { .. }));
    let n_0 = count(|t| matches!(t, TetType::D0));
    assert_eq!(e_tilde, 2 * n_q + 3 * n_t + 6 * n_0, "even slot count");

    let mut k_vertices = std::collections::BTreeSet::new();
    for &e in &even {
        k_vertices.extend(sk.edges[e].ends);
    }
    let faces = sk
        .faces
        .iter()
        .filter(|fc| {
            let (t, f) = fc.members[0];
            face_edges(sk, t, f).iter().all(|&e| !phi.is_odd(e))
        })
        .count();
    Ok(ParityCensus {
        e_count: even.len(),
        o_count: sk.edges.len() - even.len(),
        even_degree_histogram: hist,
        e_tilde,
        n_q,
        n_t,
        n_0,
        tet_count: sk.edge_of.len(),
        even_subcomplex: EvenSubcomplex { vertices: k_vertices.len(), edges: even.len(), faces, tetrahedra: n_0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{fold_lst, lst};
    use crate::homology::first_homology;

    #[test]
    fn trichotomy_table() {
        let mut seen = [0; 3];
        for mask in 0u32..64 {
            let odd: [bool; 6] = std::array::from_fn(|e| mask >> e & 1 == 1);
            // face condition: each facet has an even number of odd sides
            let ok = (0..4).all(|f| {
                let v = facet_vertices(f);
                [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])].iter().filter(|&&(a, b)| odd[edge_index(a, b)]).count() % 2 == 0
            });
            match (ok, tet_type(odd)) {
                (true, Some(TetType::Dq { .. })) => seen[0] += 1,
                (true, Some(TetType::Dt { .. })) => seen[1] += 1,
                (true, Some(TetType::D0)) => seen[2] += 1,
                (false, None) => {}
                other => panic!("mask {mask:06b}: {other:?}"),
            }
        }
        assert_eq!(seen, [3, 4, 1]);
    }

    #[test]
    fn basis_dimension_matches_homology() {
        for (p, q) in [(1, 2), (1, 3), (1, 4), (2, 3), (3, 5), (1, 6)] {
            let (t, m) = lst(p, q).unwrap();
            for w in m.boundary_weights() {
                let (f, _) = fold_lst(&t, &m, w).unwrap();
                let basis = cocycle_basis(&f).unwrap();
                assert_eq!(basis.len(), first_homology(&f).unwrap().z2_rank);
            }
        }
    }

    #[test]
    fn rejects_bounded_input() {
        assert_eq!(cocycle_basis(&lst(1, 2).unwrap().0).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn zero_vector_census() {
        let (t, m) = lst(1, 4).unwrap();
        let (f, _) = fold_lst(&t, &m, 4).unwrap();
        let sk = compute_skeleton(&f);
        let c = census_with_skeleton(&sk, &Cocycle::zero(sk.edges.len())).unwrap();
        assert_eq!(c.e_count, sk.edges.len());
        assert_eq!(c.n_0, f.tet_count());
    }
}
