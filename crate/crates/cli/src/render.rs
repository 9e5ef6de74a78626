use std::fmt::Write;

use orbitobs::adelic::{PowerLimitOutcome, PowerLimitTranscript, WitnessPhase, ZhatConflict, ZhatReport};
use orbitobs::elliptic::{EcSpectrumReport, TranslateOutcome, TranslateReport};
use orbitobs::order::{SpectrumReport, ZsigmondyReport, ZsigmondyStatus};
use orbitobs::power::{LineIntersection, TrichotomyReport, TrichotomyVerdict};
use serde::Serialize;

use crate::config::OutputFormat;
use crate::CliError;

pub enum Output {
    OrderSpectrum(SpectrumReport),
    Zsigmondy(ZsigmondyReport),
    Trichotomy(TrichotomyReport),
    Line(LineIntersection),
    Prop4(PowerLimitTranscript),
    EcSpectrum(EcSpectrumReport),
    EcTranslate(TranslateReport),
    Zhat(ZhatReport),
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "(none)".into()
    } else {
        v.join(", ")
    }
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| CliError::Internal(e.to_string());
    w.write_record(header).map_err(internal)?;
    for r in rows {
        w.write_record(&r).map_err(internal)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

fn json<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

impl Output {
    /// 2 when a report is partial because some search ran out of budget.
    pub fn exit_code(&self) -> u8 {
        match self {
            Output::OrderSpectrum(r) if !r.unresolved().is_empty() => 2,
            Output::Zsigmondy(r) if r.status == ZsigmondyStatus::Unresolved => 2,
            _ => 0,
        }
    }

    pub fn render(&self, format: OutputFormat) -> Result<String, CliError> {
        match format {
            OutputFormat::Json => match self {
                Output::OrderSpectrum(r) => json(r),
                Output::Zsigmondy(r) => json(r),
                Output::Trichotomy(r) => json(r),
                Output::Line(r) => json(r),
                Output::Prop4(r) => json(r),
                Output::EcSpectrum(r) => json(r),
                Output::EcTranslate(r) => json(r),
                Output::Zhat(r) => json(r),
            },
            OutputFormat::Csv => self.csv(),
            OutputFormat::Text => Ok(self.text()),
        }
    }

    fn csv(&self) -> Result<String, CliError> {
        match self {
            Output::OrderSpectrum(r) => csv_table(
                &["n", "status", "p", "proven_exceptional"],
                (1..=r.n_max)
                    .map(|n| match r.realized.get(&n) {
                        Some(c) => vec![n.to_string(), "realized".into(), c.p.to_string(), String::new()],
                        None => vec![
                            n.to_string(),
                            "missing".into(),
                            String::new(),
                            r.proven_exceptional.contains(&n).to_string(),
                        ],
                    })
                    .collect(),
            ),
            Output::EcSpectrum(r) => csv_table(
                &["n", "status", "p", "group_order"],
                (1..=r.n_max)
                    .map(|n| match r.realized.get(&n) {
                        Some(c) => vec![n.to_string(), "realized".into(), c.p.to_string(), c.group_order.to_string()],
                        None => vec![n.to_string(), "missing".into(), String::new(), String::new()],
                    })
                    .collect(),
            ),
            _ => Err(CliError::Input(
                "csv output is only available for order-spectrum and ec-spectrum".into(),
            )),
        }
    }

    fn text(&self) -> String {
        let mut s = String::new();
        match self {
            Output::OrderSpectrum(r) => {
                let _ = writeln!(s, "order spectrum of λ = {} for n ≤ {}, p ≤ {}", r.lambda, r.n_max, r.p_max);
                for (n, c) in &r.realized {
                    let _ = writeln!(s, "  n = {n:>4}  p = {}", c.p);
                }
                let _ = writeln!(s, "missing: {}", join(&r.missing));
                let _ = writeln!(s, "proven exceptional: {}", join(&r.proven_exceptional));
                let _ = writeln!(s, "unresolved: {}", join(r.unresolved()));
            }
            Output::Zsigmondy(r) => {
                let _ = writeln!(s, "λ = {}, n = {}, p ≤ {}: {:?}", r.lambda, r.n, r.p_limit, r.status);
                let _ = writeln!(s, "witnesses: {}", join(r.witnesses.iter().map(|c| c.p)));
            }
            Output::Trichotomy(r) => {
                let _ = writeln!(s, "P = {}, d = {}", r.point, r.d);
                match &r.verdict {
                    TrichotomyVerdict::CaseI {
                        intersection_exponents,
                        ..
                    } => {
                        let _ = writeln!(s, "case I: orbit meets V exactly at n ∈ {{{}}}", join(intersection_exponents));
                    }
                    TrichotomyVerdict::CaseII {
                        entry_r,
                        preperiod_i,
                        period_q,
                    } => {
                        let _ = writeln!(
                            s,
                            "case II: φ^{entry_r}(P) ∈ V, V preperiodic with i = {preperiod_i}, q = {period_q}"
                        );
                    }
                }
                let _ = writeln!(
                    s,
                    "direct scan n ≤ {}: {{{}}}",
                    r.intersection.n_check,
                    join(&r.intersection.exponents)
                );
                if let Some(orbit) = &r.orbit {
                    for (n, q) in orbit.iter().enumerate() {
                        let _ = writeln!(s, "  φ^{n}(P) = {q}");
                    }
                }
            }
            Output::Line(r) => {
                let _ = writeln!(s, "orbit meets the line exactly at n ∈ {{{}}}", join(&r.exponents));
            }
            Output::Prop4(t) => {
                let _ = writeln!(s, "λ = {}, ξ = {}, d = {}", t.lambda, t.xi, t.d);
                match &t.outcome {
                    PowerLimitOutcome::RootOfUnityCase { limit_set, matching_r } => {
                        let _ = writeln!(s, "root of unity: limit set {{{}}}", join(limit_set));
                        match matching_r {
                            Some(r) => {
                                let _ = writeln!(s, "ξ = λ^(d^{r})");
                            }
                            None => {
                                let _ = writeln!(s, "ξ is not in the limit set");
                            }
                        }
                    }
                    PowerLimitOutcome::Refuted { .. } => {
                        let _ = writeln!(s, "refuted");
                        for w in &t.witnesses {
                            let phase = match w.phase {
                                WitnessPhase::XiForcing => "ξ ≡ 1",
                                WitnessPhase::LambdaForcing => "λ ≡ 1",
                            };
                            let _ = writeln!(
                                s,
                                "  p = {}, order = {}: forces {phase}, found {}",
                                w.p, w.order, w.check_value
                            );
                        }
                    }
                }
            }
            Output::EcSpectrum(r) => {
                let _ = writeln!(s, "{}, P = {}, n ≤ {}, p ≤ {}", r.curve, r.point, r.n_max, r.p_max);
                for (n, c) in &r.realized {
                    let _ = writeln!(s, "  n = {n:>4}  p = {}  #E = {}", c.p, c.group_order);
                }
                let _ = writeln!(s, "missing: {}", join(&r.missing));
            }
            Output::EcTranslate(r) => {
                let _ = writeln!(s, "{}, P̄ = {}, T̄ = {}, d = {}", r.curve, r.pbar, r.tbar, r.d);
                match &r.outcome {
                    TranslateOutcome::TbarForcedZero { witnesses } => {
                        let _ = writeln!(s, "T̄ ≡ O forced at p ∈ {{{}}}", join(witnesses.iter().map(|w| w.p)));
                    }
                    TranslateOutcome::NumericContradiction { witnesses } => {
                        let w = witnesses.last().expect("nonempty");
                        let _ = writeln!(s, "contradiction at p = {}: T̄ mod p = {} ≠ O", w.p, w.tbar_reduced);
                    }
                    TranslateOutcome::TorsionOrbit { orbit, member, .. } => {
                        let _ = writeln!(s, "torsion orbit {{{}}}; T̄ member: {member}", join(orbit));
                    }
                }
            }
            Output::Zhat(r) => {
                let reason = match r.conflict {
                    ZhatConflict::PrimeDividesD { p, v_p_m } => {
                        format!("p = {p} divides d, so d^r → 0 in Z_{p}, but v_{p}(m) = {v_p_m}")
                    }
                    ZhatConflict::PrimeCoprimeToD { p } => {
                        format!("p = {p} does not divide d, so |d^r|_{p} = 1, but p divides m")
                    }
                };
                let _ = writeln!(s, "d = {}, m = {}: impossible; {reason}", r.d, r.m);
            }
        }
        s
    }
}
