//! Orbits against lines A·X + B·Y + C·Z = 0 with ABC ≠ 0.
//!
//! Only two shapes of P are handled, those where a coordinate vanishes or a
//! coordinate ratio is ±1. Either way membership of φ^n(P) collapses to a
//! single power equation u^(d^n) = t per branch, which heights solve.

use serde::{Deserialize, Serialize};

use super::curve::LineCurve;
use super::point::ProjPoint2;
use super::trichotomy::solve_power_equation;
use super::{point_preperiodic, PowerMap};
use crate::arith::{is_root_of_unity, BigRat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LineHypothesis {
    /// Coordinate `index` of P is zero.
    ZeroCoordinate { index: usize },
    /// coords[i] / coords[j] = ratio ∈ {1, -1}.
    RootOfUnityRatio { i: usize, j: usize, ratio: BigRat },
}

/// One branch u^(d^n) = target over min_n ≤ n ≤ max_n (unbounded if None).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineBranch {
    pub min_n: u32,
    pub max_n: Option<u32>,
    pub base: BigRat,
    pub target: BigRat,
    pub solution: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineIntersection {
    pub schema_version: u32,
    /// Every n ≥ 0 with φ^n(P) on the line.
    pub exponents: Vec<u64>,
    pub hypothesis: LineHypothesis,
    pub branches: Vec<LineBranch>,
}

fn solve_branch(base: BigRat, target: BigRat, d: u64, min_n: u32, max_n: Option<u32>) -> LineBranch {
    let solution = if target.is_zero() {
        None
    } else {
        solve_power_equation(&base, &target, d)
            .filter(|&n| n >= min_n && max_n.map_or(true, |m| n <= m))
    };
    LineBranch {
        min_n,
        max_n,
        base,
        target,
        solution,
    }
}

pub fn line_orbit_intersection(p: &ProjPoint2, line: &LineCurve, d: u64) -> Result<LineIntersection> {
    PowerMap::new(d)?;
    let l = line.coeffs();
    if l.iter().any(|c| c.is_zero()) {
        return Err(Error::UnsupportedCase("line has a zero coefficient".into()));
    }
    if point_preperiodic(p) {
        return Err(Error::PreperiodicPoint(p.to_string()));
    }
    let c = p.coords().clone().map(BigRat::from);

    let (hypothesis, branches) = if let Some(m) = c.iter().position(|x| x.is_zero()) {
        // Two nonzero coordinates remain, else P would be preperiodic.
        let (i, j) = match m {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let u = &c[i] / &c[j];
        let t = -&(l[j] / l[i]);
        (
            LineHypothesis::ZeroCoordinate { index: m },
            vec![solve_branch(u, t, d, 0, None)],
        )
    } else {
        let pair = [(0, 1, 2), (1, 2, 0), (0, 2, 1)]
            .into_iter()
            .find(|&(i, j, _)| is_root_of_unity(&(&c[i] / &c[j])).unwrap_or(false));
        let Some((i, j, m)) = pair else {
            return Err(Error::UnsupportedCase(
                "no zero coordinate and no coordinate ratio is a root of unity".into(),
            ));
        };
        let w = &c[i] / &c[j];
        // c_m / c_j is not ±1, else all magnitudes agree and P is preperiodic.
        let u = &c[m] / &c[j];
        let branch = |w0: &BigRat, min_n, max_n| {
            let t = -&(&(&(l[i] * w0) + l[j]) / l[m]);
            solve_branch(u.clone(), t, d, min_n, max_n)
        };
        let later = if w.is_one() { w.clone() } else { w.pow(d as i64) };
        (
            LineHypothesis::RootOfUnityRatio { i, j, ratio: w.clone() },
            vec![branch(&w, 0, Some(0)), branch(&later, 1, None)],
        )
    };

    let mut exponents: Vec<u64> = branches
        .iter()
        .filter_map(|b| b.solution.map(u64::from))
        .collect();
    exponents.sort_unstable();
    exponents.dedup();
    Ok(LineIntersection {
        schema_version: crate::SCHEMA_VERSION,
        exponents,
        hypothesis,
        branches,
    })
}
