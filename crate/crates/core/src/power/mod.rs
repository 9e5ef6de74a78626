//! The d-th power map φ([X, Y, Z]) = [X^d, Y^d, Z^d] on P²(Q), its
//! orbits, torus-translate curves A·X^k = B·Y^l and lines.

mod curve;
mod line;
mod point;
mod trichotomy;

pub use curve::{curve_preperiodic, on_torus_curve, LineCurve, TorusCurve};
pub use line::{line_orbit_intersection, LineBranch, LineHypothesis, LineIntersection};
pub use point::{OrbitPoint, ProjPoint2};
pub use trichotomy::{
    membership_form, orbit_point_on_curve, orbit_torus_intersection, solve_power_equation,
    torus_trichotomy, verify_verdict, CaseICertificate, IntersectionReport, MembershipForm,
    TrichotomyReport, TrichotomyVerdict,
};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerMap {
    d: u64,
}

impl PowerMap {
    pub fn new(d: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidInput(format!("power map degree {d} < 2")));
        }
        if d > u32::MAX as u64 {
            return Err(Error::InvalidInput(format!("power map degree {d} too large")));
        }
        Ok(PowerMap { d })
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    pub fn apply(&self, p: &ProjPoint2) -> ProjPoint2 {
        p.pow(self.d as u32)
    }
}

pub fn power_map_apply(p: &ProjPoint2, d: u64) -> Result<ProjPoint2> {
    Ok(PowerMap::new(d)?.apply(p))
}

/// [P, φ(P), ..., φ^{n_max}(P)], each computed directly as P^(d^n).
pub fn orbit(p: &ProjPoint2, d: u64, n_max: u32, bit_cap: u64) -> Result<Vec<ProjPoint2>> {
    PowerMap::new(d)?;
    (0..=n_max)
        .map(|n| OrbitPoint::new(p, d, n).materialize(bit_cap))
        .collect()
}

/// True iff the orbit of P is finite: every ratio of nonzero coordinates
/// is ±1, i.e. all nonzero canonical coordinates are ±1.
pub fn point_preperiodic(p: &ProjPoint2) -> bool {
    let mut mags = p.coords().iter().filter(|c| !c.is_zero()).map(|c| c.abs());
    let first = mags.next().expect("projective point has a nonzero coordinate");
    mags.all(|m| m == first)
}
