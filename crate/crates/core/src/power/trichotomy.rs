//! The orbit/torus-curve dichotomy.
//!
//! Writing e = d^n, the orbit point φ^n(P) lies on V : A·X^k = B·Y^l iff
//! ρ^e = B/A for a single rational ρ determined by P and V, unless a zero
//! coordinate or coefficient makes membership independent of n. When ρ is
//! not ±1 its height grows like d^n, so at most one n can work and that n
//! is found by comparing integer heights. When ρ = ±1 the values ρ^e form a
//! finite set, and V is preperiodic exactly when B/A = ±1.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::curve::{curve_preperiodic, TorusCurve};
use super::point::ProjPoint2;
use super::{point_preperiodic, PowerMap};
use crate::arith::{height_base, is_root_of_unity, BigRat};
use crate::error::{Error, Result};

/// How membership of φ^n(P) in V depends on n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipForm {
    /// Membership is the same for every n.
    Constant(bool),
    /// φ^n(P) ∈ V iff rho^(d^n) = target.
    PowerEquation { rho: BigRat, target: BigRat },
}

pub fn membership_form(p: &ProjPoint2, v: &TorusCurve) -> MembershipForm {
    let [x, y, z] = p.coords().clone().map(BigRat::from);
    let (k, l) = (v.k as i64, v.l as i64);
    if !z.is_zero() {
        let cx = &x / &z;
        let cy = &y / &z;
        let lhs_zero = v.a.is_zero() || cx.is_zero();
        let rhs_zero = v.b.is_zero() || cy.is_zero();
        if lhs_zero || rhs_zero {
            return MembershipForm::Constant(lhs_zero && rhs_zero);
        }
        MembershipForm::PowerEquation {
            rho: &cx.pow(k) / &cy.pow(l),
            target: &v.b / &v.a,
        }
    } else if !y.is_zero() {
        let cx = &x / &y;
        if v.a.is_zero() || cx.is_zero() {
            return MembershipForm::Constant(v.b.is_zero());
        }
        if v.b.is_zero() {
            return MembershipForm::Constant(false);
        }
        MembershipForm::PowerEquation {
            rho: cx.pow(k),
            target: &v.b / &v.a,
        }
    } else {
        MembershipForm::Constant(v.a.is_zero())
    }
}

/// Exact test of rho^e = target for nonzero rho, without materializing
/// powers larger than the target.
pub(crate) fn power_equals(rho: &BigRat, e: &BigUint, target: &BigRat) -> bool {
    if is_root_of_unity(rho).expect("nonzero") {
        let negative = !rho.is_one() && e.bit(0);
        return *target == if negative { -&BigRat::one() } else { BigRat::one() };
    }
    if target.is_zero() {
        return false;
    }
    let hr_bits = height_base(rho).bits();
    let ht_bits = height_base(target).bits();
    // H(rho)^e ≥ 2^(e·(bits − 1)) > H(target) once e·(bits − 1) ≥ bits(H(target)).
    if e * (hr_bits - 1) >= BigUint::from(ht_bits) {
        return false;
    }
    rho.pow_big(e) == *target
}

/// The unique n ≥ 0 with rho^(d^n) = target, for rho not a root of unity.
///
/// Heights are compared as integers: H(rho^(d^n)) = H(rho)^(d^n) must equal
/// H(target), which pins down at most one candidate; the candidate is then
/// checked exactly (signs and the num/den arrangement).
pub fn solve_power_equation(rho: &BigRat, target: &BigRat, d: u64) -> Option<u32> {
    debug_assert!(!is_root_of_unity(rho).unwrap_or(true));
    if target.is_zero() {
        return None;
    }
    let goal = height_base(target);
    let mut h = height_base(rho);
    let mut n = 0u32;
    while h < goal {
        h = h.pow(d as u32);
        n += 1;
    }
    if h != goal {
        return None;
    }
    let e = BigUint::from(d).pow(n);
    (rho.pow_big(&e) == *target).then_some(n)
}

/// φ^n(P) ∈ V, decided exactly for any n.
pub fn orbit_point_on_curve(p: &ProjPoint2, v: &TorusCurve, d: u64, n: u32) -> bool {
    match membership_form(p, v) {
        MembershipForm::Constant(b) => b,
        MembershipForm::PowerEquation { rho, target } => {
            power_equals(&rho, &BigUint::from(d).pow(n), &target)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseICertificate {
    /// A zero coordinate or coefficient keeps every orbit point off V.
    ZeroPattern,
    /// rho is not a root of unity; `candidate` is the only exponent allowed
    /// by H(rho)^(d^n) = H(target), if any, after exact verification.
    HeightEquation {
        rho: BigRat,
        target: BigRat,
        candidate: Option<u32>,
    },
    /// rho is a root of unity; its powers rho^(d^n) take only the listed
    /// values and none equals the target.
    FiniteCycle {
        rho: BigRat,
        target: BigRat,
        values: Vec<BigRat>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum TrichotomyVerdict {
    /// The orbit meets V exactly at these exponents, for all n.
    CaseI {
        intersection_exponents: Vec<u64>,
        certificate: CaseICertificate,
    },
    /// V is preperiodic with φ^(i+q)(V) = φ^i(V), and φ^r(P) ∈ V.
    CaseII {
        entry_r: u64,
        preperiod_i: u32,
        period_q: u32,
    },
}

pub fn torus_trichotomy(p: &ProjPoint2, v: &TorusCurve, d: u64) -> Result<TrichotomyVerdict> {
    PowerMap::new(d)?;
    if point_preperiodic(p) {
        return Err(Error::PreperiodicPoint(p.to_string()));
    }
    let preperiodic_v = || {
        curve_preperiodic(v, d)
            .ok_or_else(|| Error::Invariant("orbit on a non-preperiodic curve".into()))
    };
    match membership_form(p, v) {
        MembershipForm::Constant(true) => {
            let (i, q) = preperiodic_v()?;
            Ok(TrichotomyVerdict::CaseII {
                entry_r: 0,
                preperiod_i: i,
                period_q: q,
            })
        }
        MembershipForm::Constant(false) => Ok(TrichotomyVerdict::CaseI {
            intersection_exponents: Vec::new(),
            certificate: CaseICertificate::ZeroPattern,
        }),
        MembershipForm::PowerEquation { rho, target } => {
            if is_root_of_unity(&rho)? {
                // n = 0 gives rho, every n ≥ 1 gives rho^d.
                let values = vec![rho.clone(), rho.pow(d as i64)];
                match values.iter().position(|x| *x == target) {
                    Some(r) => {
                        let (i, q) = preperiodic_v()?;
                        Ok(TrichotomyVerdict::CaseII {
                            entry_r: r as u64,
                            preperiod_i: i,
                            period_q: q,
                        })
                    }
                    None => Ok(TrichotomyVerdict::CaseI {
                        intersection_exponents: Vec::new(),
                        certificate: CaseICertificate::FiniteCycle { rho, target, values },
                    }),
                }
            } else {
                let candidate = solve_power_equation(&rho, &target, d);
                Ok(TrichotomyVerdict::CaseI {
                    intersection_exponents: candidate.map(|n| n as u64).into_iter().collect(),
                    certificate: CaseICertificate::HeightEquation {
                        rho,
                        target,
                        candidate,
                    },
                })
            }
        }
    }
}

/// Re-checks a verdict by direct evaluation. Case I is compared against
/// every n ≤ `scan_to`; case II checks the entry point, the curve period
/// and three orbit points on φ^i(V).
pub fn verify_verdict(
    p: &ProjPoint2,
    v: &TorusCurve,
    d: u64,
    verdict: &TrichotomyVerdict,
    scan_to: u32,
) -> bool {
    match verdict {
        TrichotomyVerdict::CaseI {
            intersection_exponents,
            ..
        } => {
            (0..=scan_to).all(|n| {
                orbit_point_on_curve(p, v, d, n) == intersection_exponents.contains(&(n as u64))
            }) && intersection_exponents
                .iter()
                .all(|&n| orbit_point_on_curve(p, v, d, n as u32))
        }
        TrichotomyVerdict::CaseII {
            entry_r,
            preperiod_i,
            period_q,
        } => {
            let (r, i, q) = (*entry_r as u32, *preperiod_i, *period_q);
            let vi = v.iterate(d, i);
            orbit_point_on_curve(p, v, d, r)
                && v.iterate(d, i + q) == vi
                && (0..3).all(|j| orbit_point_on_curve(p, &vi, d, r + i + q * j))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub schema_version: u32,
    /// Exponents n ≤ n_check with φ^n(P) ∈ V, by direct evaluation.
    pub exponents: Vec<u64>,
    pub n_check: u32,
    /// The complete intersection over all n, when the trichotomy certifies
    /// it to be finite.
    pub certified_all: Option<Vec<u64>>,
}

pub fn orbit_torus_intersection(
    p: &ProjPoint2,
    v: &TorusCurve,
    d: u64,
    n_check: u32,
) -> Result<IntersectionReport> {
    PowerMap::new(d)?;
    let exponents = (0..=n_check)
        .filter(|&n| orbit_point_on_curve(p, v, d, n))
        .map(u64::from)
        .collect();
    let certified_all = if point_preperiodic(p) {
        None
    } else {
        match torus_trichotomy(p, v, d)? {
            TrichotomyVerdict::CaseI {
                intersection_exponents,
                ..
            } => Some(intersection_exponents),
            TrichotomyVerdict::CaseII { .. } => None,
        }
    };
    Ok(IntersectionReport {
        schema_version: crate::SCHEMA_VERSION,
        exponents,
        n_check,
        certified_all,
    })
}

/// Everything the trichotomy decides about one (P, V, d), in one record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrichotomyReport {
    pub schema_version: u32,
    pub point: ProjPoint2,
    pub curve: TorusCurve,
    pub d: u64,
    pub verdict: TrichotomyVerdict,
    pub intersection: IntersectionReport,
    /// φ^n(P) for n ≤ the requested bound, when materialized.
    pub orbit: Option<Vec<ProjPoint2>>,
}

impl TrichotomyReport {
    /// Decides (P, V, d), scans n ≤ `n_check` and, if `orbit_len` is set,
    /// materializes that many iterates under `bit_cap`.
    pub fn build(
        p: &ProjPoint2,
        v: &TorusCurve,
        d: u64,
        n_check: u32,
        orbit_len: Option<u32>,
        bit_cap: u64,
    ) -> Result<Self> {
        let verdict = torus_trichotomy(p, v, d)?;
        let intersection = orbit_torus_intersection(p, v, d, n_check)?;
        let orbit = orbit_len
            .map(|n| super::orbit(p, d, n, bit_cap))
            .transpose()?;
        Ok(TrichotomyReport {
            schema_version: crate::SCHEMA_VERSION,
            point: p.clone(),
            curve: v.clone(),
            d,
            verdict,
            intersection,
            orbit,
        })
    }
}
