//! Aggregated complexity bookkeeping for a closed one-vertex triangulation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skeleton::compute_skeleton;
use crate::surface::canonical::canonical_census;
use crate::surface::coord::surface_classify;
use crate::surface::squares::{scan_with_skeleton, TwistedSquare};
use crate::triangulation::Triangulation;
use crate::z2::{basis_from_skeleton, nonzero_classes};

/// Families whose minimality is known, with the bound they attain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnownFamily {
    BalancedLens,
    M,
    MPrime,
    P,
    Q,
}

impl KnownFamily {
    pub fn bound(self) -> BoundForm {
        match self {
            KnownFamily::BalancedLens => BoundForm::OnePlusTwoNorm,
            KnownFamily::M => BoundForm::TwoPlusTwoNorm,
            KnownFamily::Q => BoundForm::TwoPlusSum,
            KnownFamily::MPrime | KnownFamily::P => BoundForm::ThreePlusSum,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BoundForm {
    #[serde(rename = "1+2|phi|")]
    OnePlusTwoNorm,
    #[serde(rename = "2+2|phi|")]
    TwoPlusTwoNorm,
    #[serde(rename = "2+sum")]
    TwoPlusSum,
    #[serde(rename = "3+sum")]
    ThreePlusSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub class: String,
    pub chi: i64,
    pub orientable: bool,
    pub connected: bool,
    /// `max(0, -chi)` of a connected canonical surface, an upper bound for
    /// the norm of the class.
    pub norm_upper: Option<i64>,
    pub balanced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub form: BoundForm,
    /// The bound evaluated with the norm upper bounds.
    pub value: i64,
    /// The tetrahedron count equals the value.
    pub consistent: bool,
    /// Consistent, and the bound is the one attained by the named family.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub tet_count: usize,
    pub z2_rank: usize,
    pub classes: Vec<ClassSummary>,
    pub balanced: bool,
    pub twisted_squares: Vec<TwistedSquare>,
    pub bounds: Vec<BoundCheck>,
}

pub fn complexity_certificate(tri: &Triangulation, family: Option<KnownFamily>) -> Result<Certificate> {
    if !tri.is_closed() {
        return Err(Error::NotClosed);
    }
    let sk = compute_skeleton(tri);
    if sk.vertices.len() != 1 {
        return Err(Error::NotOneVertex(sk.vertices.len()));
    }
    let basis = basis_from_skeleton(&sk);
    let mut classes = Vec::new();
    for phi in nonzero_classes(&basis) {
        let (s, census) = canonical_census(tri, &sk, &phi)?;
        let c = surface_classify(tri, &s.coord)?;
        classes.push(ClassSummary {
            class: phi.to_bit_string(),
            chi: s.chi,
            orientable: c.orientable,
            connected: c.connected,
            norm_upper: c.connected.then(|| (-s.chi).max(0)),
            balanced: census.e_count == census.o_count,
        });
    }
    let t = tri.tet_count() as i64;
    let mut bounds = Vec::new();
    let norms: Option<Vec<i64>> = classes.iter().map(|c| c.norm_upper).collect();
    if let Some(norms) = norms {
        let mut push = |form: BoundForm, value: i64| {
            let certified = family.map(KnownFamily::bound) == Some(form) && value == t;
            bounds.push(BoundCheck { form, value, consistent: value == t, certified });
        };
        if basis.len() == 1 {
            push(BoundForm::OnePlusTwoNorm, 1 + 2 * norms[0]);
            push(BoundForm::TwoPlusTwoNorm, 2 + 2 * norms[0]);
        }
        if basis.len() == 2 {
            let sum: i64 = norms.iter().sum();
            push(BoundForm::TwoPlusSum, 2 + sum);
            push(BoundForm::ThreePlusSum, 3 + sum);
        }
    }
    Ok(Certificate {
        tet_count: tri.tet_count(),
        z2_rank: basis.len(),
        balanced: basis.len() == 1 && classes[0].balanced,
        classes,
        twisted_squares: scan_with_skeleton(&sk),
        bounds,
    })
}
