//! The fundamental counting identity and the minimality inequality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skeleton::Skeleton;
use crate::surface::canonical::canonical_census;
use crate::triangulation::Triangulation;
use crate::z2::{Cocycle, ParityCensus};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub census: ParityCensus,
    /// Euler characteristic of the canonical surface, counted from its discs.
    pub chi: i64,
    /// `2 + (-chi)`, the complexity bound when the canonical surface stands in
    /// for the norm.
    pub g: i64,
    pub k_phi: u64,
    /// `4 chi + 2T`.
    pub identity_lhs: i64,
    /// `4 + sum (d - 4) e_d + n_t`.
    pub identity_rhs: i64,
    /// `e_3`.
    pub eq1_lhs: i64,
    /// `2 + sum_{j >= 5} (j - 4) e_j + 8 k_phi + n_t`.
    pub eq1_rhs: i64,
    pub eq1_holds: bool,
    pub balanced: bool,
}

pub fn fundamental_report(tri: &Triangulation, sk: &Skeleton, phi: &Cocycle, k_phi: u64) -> Result<BoundReport> {
    let (surface, census) = canonical_census(tri, sk, phi)?;
    let chi = surface.chi;
    let t = census.tet_count as i64;
    let n_t = census.n_t as i64;
    let weighted: i64 = census.even_degree_histogram.iter().map(|(&d, &n)| (d as i64 - 4) * n as i64).sum();
    let identity_lhs = 4 * chi + 2 * t;
    let identity_rhs = 4 + weighted + n_t;
    if identity_lhs != identity_rhs {
        return Err(Error::Invalid(format!("4 chi + 2T = {identity_lhs} but 4 + sum (d-4) e_d + n_t = {identity_rhs}")));
    }
    let high: i64 = census.even_degree_histogram.range(5..).map(|(&d, &n)| (d as i64 - 4) * n as i64).sum();
    let eq1_lhs = census.even_of_degree(3) as i64;
    let eq1_rhs = 2 + high + 8 * k_phi as i64 + n_t;
    Ok(BoundReport {
        chi,
        g: 2 - chi,
        k_phi,
        identity_lhs,
        identity_rhs,
        eq1_lhs,
        eq1_rhs,
        eq1_holds: eq1_lhs >= eq1_rhs,
        balanced: census.e_count == census.o_count,
        census,
    })
}
