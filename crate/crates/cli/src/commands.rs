use clap::Args;
use orbitobs::adelic::{power_limit_decide, zhat_power_limit, PowerLimitTranscript};
use orbitobs::elliptic::{
    elliptic_order_spectrum, translated_subvariety_check, ECPoint, EllipticCurveQ, TranslateReport,
};
use orbitobs::order::{order_spectrum as spectrum, zsigmondy as zsig};
use orbitobs::power::{line_orbit_intersection, LineCurve, ProjPoint2, TorusCurve, TrichotomyReport};
use orbitobs::BigRat;
use serde::Deserialize;

use crate::cache::FactorCache;
use crate::config::RunConfig;
use crate::render::Output;
use crate::CliError;

fn parse_rat(s: &str) -> Result<BigRat, String> {
    s.parse().map_err(|e: orbitobs::Error| e.to_string())
}

fn rat_list(s: &str, len: usize) -> Result<Vec<BigRat>, String> {
    let v: Vec<BigRat> = s.split(',').map(parse_rat).collect::<Result<_, _>>()?;
    if v.len() != len {
        return Err(format!("expected {len} comma-separated values, got {}", v.len()));
    }
    Ok(v)
}

fn parse_point(s: &str) -> Result<ProjPoint2, String> {
    let v = rat_list(s, 3)?;
    ProjPoint2::from_rationals([&v[0], &v[1], &v[2]]).map_err(|e| e.to_string())
}

fn parse_torus(s: &str) -> Result<TorusCurve, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err("expected A,B,k,l".into());
    }
    let exp = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad exponent {t:?}: {e}"));
    TorusCurve::new(parse_rat(parts[0])?, parse_rat(parts[1])?, exp(parts[2])?, exp(parts[3])?)
        .map_err(|e| e.to_string())
}

fn parse_line(s: &str) -> Result<LineCurve, String> {
    let v = rat_list(s, 3)?;
    let [a, b, c] = <[BigRat; 3]>::try_from(v).unwrap();
    LineCurve::new(a, b, c).map_err(|e| e.to_string())
}

fn parse_ec_point(s: &str) -> Result<ECPoint, String> {
    let s = s.trim();
    if s == "inf" {
        return Ok(ECPoint::Infinity);
    }
    serde_json::from_str(s).map_err(|e| format!("bad point {s:?}: {e}"))
}

#[derive(Debug, Clone, Deserialize)]
struct CurveJson {
    #[serde(with = "orbitobs::arith::int_string")]
    a4: num_bigint::BigInt,
    #[serde(with = "orbitobs::arith::int_string")]
    a6: num_bigint::BigInt,
    #[serde(rename = "P")]
    point: Option<ECPoint>,
}

fn parse_curve_json(s: &str) -> Result<CurveJson, String> {
    serde_json::from_str(s).map_err(|e| format!("bad curve JSON: {e}"))
}

/// The curve, and the point from `--point` or else from the curve's "P".
fn curve_and_point(curve: CurveJson, point: Option<ECPoint>) -> Result<(EllipticCurveQ, ECPoint), CliError> {
    let e = EllipticCurveQ::new(curve.a4, curve.a6)?;
    let p = point
        .or(curve.point)
        .ok_or_else(|| CliError::Input("no point given: use --point or \"P\" in --curve".into()))?;
    if !e.contains(&p) {
        return Err(orbitobs::Error::NotOnCurve.into());
    }
    Ok((e, p))
}

#[derive(Debug, Args)]
pub struct OrderSpectrumArgs {
    /// λ as "a/b".
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    lambda: BigRat,
    /// Largest order n to search for.
    #[arg(long)]
    nmax: u64,
    /// Search primes p < pmax.
    #[arg(long)]
    pmax: u64,
}

pub fn order_spectrum(a: OrderSpectrumArgs, cfg: &RunConfig, cache: &FactorCache) -> Result<Output, CliError> {
    Ok(Output::OrderSpectrum(spectrum(&a.lambda, a.nmax, a.pmax, &cfg.search(), cache)?))
}

#[derive(Debug, Args)]
pub struct ZsigmondyArgs {
    /// λ as "a/b".
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    lambda: BigRat,
    /// Exponent n of a^n − b^n.
    #[arg(long)]
    n: u64,
    /// Search primes p < pmax.
    #[arg(long)]
    pmax: u64,
}

pub fn zsigmondy(a: ZsigmondyArgs, cfg: &RunConfig, cache: &FactorCache) -> Result<Output, CliError> {
    Ok(Output::Zsigmondy(zsig(&a.lambda, a.n, a.pmax, &cfg.search(), cache)?))
}

#[derive(Debug, Args)]
pub struct TrichotomyArgs {
    /// P as "x,y,z" (rationals allowed).
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    point: ProjPoint2,
    /// V: A·X^k = B·Y^l as "A,B,k,l".
    #[arg(long, value_parser = parse_torus, allow_hyphen_values = true)]
    curve: TorusCurve,
    /// Degree of the power map, d ≥ 2.
    #[arg(long)]
    d: u64,
    /// Scan φ^n(P) ∈ V directly for n ≤ this bound.
    #[arg(long, default_value_t = 10)]
    ncheck: u32,
    /// Also materialize φ^n(P) for n ≤ this bound (subject to --bit-cap).
    #[arg(long)]
    orbit: Option<u32>,
}

pub fn trichotomy(a: TrichotomyArgs, cfg: &RunConfig) -> Result<Output, CliError> {
    Ok(Output::Trichotomy(TrichotomyReport::build(
        &a.point,
        &a.curve,
        a.d,
        a.ncheck,
        a.orbit,
        cfg.coordinate_bit_cap,
    )?))
}

#[derive(Debug, Args)]
pub struct LineArgs {
    /// P as "x,y,z" (rationals allowed).
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    point: ProjPoint2,
    /// L: A·X + B·Y + C·Z = 0 as "A,B,C".
    #[arg(long, value_parser = parse_line, allow_hyphen_values = true)]
    line: LineCurve,
    /// Degree of the power map, d ≥ 2.
    #[arg(long)]
    d: u64,
}

pub fn line_intersect(a: LineArgs) -> Result<Output, CliError> {
    Ok(Output::Line(line_orbit_intersection(&a.point, &a.line, a.d)?))
}

#[derive(Debug, Args)]
pub struct Prop4Args {
    /// λ as "a/b", not zero.
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    lambda: BigRat,
    /// Candidate limit ξ as "a/b", not zero.
    #[arg(long, value_parser = parse_rat, allow_hyphen_values = true)]
    xi: BigRat,
    /// Degree d ≥ 2 of the exponents d^n.
    #[arg(long)]
    d: u64,
    /// Number of congruence witnesses to collect.
    #[arg(long, default_value_t = 3)]
    witnesses: usize,
}

pub fn prop4(a: Prop4Args, cfg: &RunConfig, cache: &FactorCache) -> Result<Output, CliError> {
    let outcome = power_limit_decide(&a.lambda, &a.xi, a.d, a.witnesses, &cfg.search(), cache)?;
    let t = PowerLimitTranscript::new(&a.lambda, &a.xi, a.d, outcome);
    if !t.replay() {
        return Err(CliError::Internal("transcript failed its own replay".into()));
    }
    Ok(Output::Prop4(t))
}

#[derive(Debug, Args)]
pub struct EcSpectrumArgs {
    /// {"a4": "...", "a6": "...", "P": ["x","y"]}; "P" is optional with --point.
    #[arg(long, value_parser = parse_curve_json)]
    curve: CurveJson,
    /// ["x","y"] or "inf".
    #[arg(long, value_parser = parse_ec_point, allow_hyphen_values = true)]
    point: Option<ECPoint>,
    /// Largest order n to search for.
    #[arg(long)]
    nmax: u64,
    /// Search good primes p < pmax.
    #[arg(long)]
    pmax: u64,
}

pub fn ec_spectrum(a: EcSpectrumArgs, cfg: &RunConfig) -> Result<Output, CliError> {
    let (e, p) = curve_and_point(a.curve, a.point)?;
    Ok(Output::EcSpectrum(elliptic_order_spectrum(&e, &p, a.nmax, a.pmax, &cfg.search())?))
}

#[derive(Debug, Args)]
pub struct EcTranslateArgs {
    /// {"a4": "...", "a6": "...", "P": ["x","y"]}; "P" is optional with --point.
    #[arg(long, value_parser = parse_curve_json)]
    curve: CurveJson,
    /// P̄ as ["x","y"]; defaults to "P" in --curve.
    #[arg(long, value_parser = parse_ec_point, allow_hyphen_values = true)]
    point: Option<ECPoint>,
    /// T̄ as ["x","y"] or "inf".
    #[arg(long, value_parser = parse_ec_point, allow_hyphen_values = true)]
    tbar: ECPoint,
    /// Multiplier d ≥ 2 of the exponents d^n.
    #[arg(long)]
    d: u64,
    /// Number of primes to collect when T̄ is forced to O.
    #[arg(long, default_value_t = 3)]
    witnesses: usize,
}

pub fn ec_translate(a: EcTranslateArgs, cfg: &RunConfig) -> Result<Output, CliError> {
    let (e, p) = curve_and_point(a.curve, a.point)?;
    let outcome = translated_subvariety_check(&e, &p, &a.tbar, a.d, a.witnesses, &cfg.search())?;
    Ok(Output::EcTranslate(TranslateReport::new(&e, &p, &a.tbar, a.d, outcome)))
}

#[derive(Debug, Args)]
pub struct ZhatArgs {
    /// Base d ≥ 2.
    #[arg(long)]
    d: u64,
    /// Target integer m.
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
}

pub fn zhat(a: ZhatArgs) -> Result<Output, CliError> {
    if a.d < 2 {
        return Err(CliError::Input("d must be at least 2".into()));
    }
    Ok(Output::Zhat(zhat_power_limit(a.d, a.m)))
}
