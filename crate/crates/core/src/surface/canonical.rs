//! The canonical dual surface of a colouring, the Euler characteristic
//! formula, and b-modifications.

use serde::{Deserialize, Serialize};

use super::coord::{euler_char_with_skeleton, NormalCoordinate, TetCoord};
use crate::error::{Error, Result};
use crate::perm::{opposite_edge, EDGE_VERTICES};
use crate::skeleton::{compute_skeleton, Skeleton};
use crate::triangulation::Triangulation;
use crate::z2::{census_with_skeleton, classify_with_skeleton, Cocycle, ParityCensus, TetType};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSurface {
    pub coord: NormalCoordinate,
    pub class: Cocycle,
    pub chi: i64,
}

pub fn canonical_coordinate(types: &[TetType]) -> NormalCoordinate {
    let mut c = NormalCoordinate::zero(types.len());
    for (t, ty) in types.iter().enumerate() {
        match *ty {
            TetType::Dq { even_pair } => c.tets[t].quad[even_pair] = 1,
            TetType::Dt { vertex } => c.tets[t].tri[vertex] = 1,
            TetType::D0 => {}
        }
    }
    c
}

pub fn canonical_surface(tri: &Triangulation, phi: &Cocycle) -> Result<CanonicalSurface> {
    canonical_with_skeleton(tri, &compute_skeleton(tri), phi)
}

pub fn canonical_with_skeleton(tri: &Triangulation, sk: &Skeleton, phi: &Cocycle) -> Result<CanonicalSurface> {
    let types = classify_with_skeleton(sk, phi)?;
    let coord = canonical_coordinate(&types);
    debug_assert!(coord.edge_weights(sk).iter().zip(&phi.bits).all(|(&w, &odd)| w == i64::from(odd)));
    let chi = euler_char_with_skeleton(tri, sk, &coord)?;
    Ok(CanonicalSurface { coord, class: phi.clone(), chi })
}

/// `(2 - 2e + n_t + 2 n_0) / 2`.
pub fn chi_formula(census: &ParityCensus) -> Result<i64> {
    let num = 2 - 2 * census.e_count as i64 + census.n_t as i64 + 2 * census.n_0 as i64;
    if num % 2 != 0 {
        return Err(Error::Invalid(format!("odd Euler characteristic numerator {num}")));
    }
    Ok(num / 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BModification {
    pub coord: NormalCoordinate,
    pub octagons: i64,
    pub chi: i64,
}

/// Raise the weight of every even edge in `b` from 0 to 2. Requires every
/// tetrahedron to be of type Dq.
pub fn b_modification(tri: &Triangulation, phi: &Cocycle, b: &[usize]) -> Result<BModification> {
    let sk = compute_skeleton(tri);
    b_modification_with_skeleton(tri, &sk, phi, b)
}

pub fn b_modification_with_skeleton(tri: &Triangulation, sk: &Skeleton, phi: &Cocycle, b: &[usize]) -> Result<BModification> {
    let types = classify_with_skeleton(sk, phi)?;
    if let Some(t) = types.iter().position(|ty| !ty.is_dq()) {
        return Err(Error::NotAllQuad(t));
    }
    let mut in_b = vec![false; sk.edges.len()];
    for &e in b {
        if e >= sk.edges.len() || phi.is_odd(e) {
            return Err(Error::InvalidParameter(format!("edge {e} is not an even edge")));
        }
        in_b[e] = true;
    }
    let mut coord = NormalCoordinate::zero(tri.tet_count());
    for (t, ty) in types.iter().enumerate() {
        let TetType::Dq { even_pair: k } = *ty else { unreachable!() };
        let (e1, e2) = (k, opposite_edge(k));
        let c: &mut TetCoord = &mut coord.tets[t];
        match (in_b[sk.edge_of[t][e1]], in_b[sk.edge_of[t][e2]]) {
            (false, false) => c.quad[k] = 1,
            (true, true) => c.oct[k] = 1,
            (true, false) | (false, true) => {
                let e = if in_b[sk.edge_of[t][e1]] { e1 } else { e2 };
                for v in EDGE_VERTICES[e] {
                    c.tri[v] = 1;
                }
            }
        }
    }
    let chi = euler_char_with_skeleton(tri, sk, &coord)?;
    let octagons = coord.octagon_count();
    let base = euler_char_with_skeleton(tri, sk, &canonical_coordinate(&types))?;
    let mut distinct = b.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if chi != base - 2 * octagons + 2 * distinct.len() as i64 {
        return Err(Error::Invalid(format!("octagon formula fails: chi {chi}, base {base}, {octagons} octagons")));
    }
    Ok(BModification { coord, octagons, chi })
}

/// Canonical surface and census for every nonzero class.
pub fn canonical_census(tri: &Triangulation, sk: &Skeleton, phi: &Cocycle) -> Result<(CanonicalSurface, ParityCensus)> {
    Ok((canonical_with_skeleton(tri, sk, phi)?, census_with_skeleton(sk, phi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{fold_lst, layered_loop, lst};
    use crate::surface::coord::surface_classify;
    use crate::z2::{cocycle_basis, nonzero_classes};

    fn balanced(n: u64) -> Triangulation {
        let (t, m) = lst(1, 2 * n - 2).unwrap();
        fold_lst(&t, &m, 2 * n - 2).unwrap().0
    }

    #[test]
    fn balanced_lens_chi() {
        for n in 3..=8 {
            let t = balanced(n);
            let phi = &cocycle_basis(&t).unwrap()[0];
            let s = canonical_surface(&t, phi).unwrap();
            assert_eq!(s.chi, 2 - n as i64);
            let sk = compute_skeleton(&t);
            assert_eq!(chi_formula(&census_with_skeleton(&sk, phi).unwrap()).unwrap(), s.chi);
            let doubled = surface_classify(&t, &s.coord.scaled(2)).unwrap();
            assert_eq!(doubled.chi, 2 * s.chi);
        }
    }

    #[test]
    fn zero_colouring_is_empty() {
        let t = balanced(5);
        let sk = compute_skeleton(&t);
        let z = Cocycle::zero(sk.edges.len());
        let s = canonical_surface(&t, &z).unwrap();
        assert!(s.coord.is_empty());
        assert_eq!(s.chi, 0);
        assert_eq!(chi_formula(&census_with_skeleton(&sk, &z).unwrap()).unwrap(), 0);
    }

    #[test]
    fn quaternionic_b_modifications() {
        let t = layered_loop(4, true).unwrap();
        let sk = compute_skeleton(&t);
        for phi in nonzero_classes(&cocycle_basis(&t).unwrap()) {
            let s = canonical_surface(&t, &phi).unwrap();
            let empty = b_modification(&t, &phi, &[]).unwrap();
            assert_eq!((empty.coord.clone(), empty.octagons), (s.coord.clone(), 0));
            for e in phi.even_edges() {
                let m = b_modification_with_skeleton(&t, &sk, &phi, &[e]).unwrap();
                assert!(m.octagons >= 1);
                assert_eq!(m.chi, s.chi - 2 * m.octagons + 2);
            }
        }
        let phi = &cocycle_basis(&t).unwrap()[0];
        let odd = (0..sk.edges.len()).find(|&e| phi.is_odd(e)).unwrap();
        assert!(b_modification(&t, phi, &[odd]).is_err());
    }

    #[test]
    fn b_modification_needs_all_quads() {
        let t = balanced(4);
        let phi = &cocycle_basis(&t).unwrap()[0];
        let types = classify_with_skeleton(&compute_skeleton(&t), phi).unwrap();
        if types.iter().any(|ty| !ty.is_dq()) {
            assert!(matches!(b_modification(&t, phi, &[]), Err(Error::NotAllQuad(_))));
        }
    }
}
