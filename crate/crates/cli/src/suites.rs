//! The `verify` suites and their default grids.

use std::sync::Arc;

use clap::ValueEnum;
use qcrystal_core::crystal::{check_cauchy, check_macmahon};
use qcrystal_core::fock::checks::{
    check_eigenvalues, check_heisenberg, check_intertwining, check_intertwining_bigraded, check_quantum_torus,
    check_transfer, check_vertex_routes, HeisenbergForm, Intertwining,
};
use qcrystal_core::qtoda::{
    check_2dtoda_differential, check_fay, check_qdiff_1dtoda, check_qdiff_2dtoda, check_tau_constraint,
    check_theorem1, check_theorem2, check_theorem3, check_wronskian_normalization, check_xy_prefactor, FayReading,
    Factor, GLElement, QTodaForm,
};
use qcrystal_core::report::combined_verdict;
use qcrystal_core::schur::check_schur_oracles;
use qcrystal_core::series::rat;
use qcrystal_core::{Error, QParams, SeriesContext, Verdict, VerificationReport};
use serde_json::json;

use crate::{Failure, Format, VerifyArgs, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE};

pub const SUITES: &[&str] = &[
    "heisenberg",
    "quantum-torus",
    "eigenvalues",
    "vertex",
    "transfer",
    "intertwining",
    "theorem1",
    "theorem2",
    "tau-constraint",
    "fay",
    "qdiff-2dtoda",
    "qdiff-1dtoda",
    "kajiwara-satsuma",
    "theorem3",
    "2dtoda-differential",
    "macmahon",
    "cauchy",
    "schur-oracles",
    "xy-prefactor",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    Corrected,
    Printed,
}

type Reports = Result<Vec<VerificationReport>, Error>;

fn charges(a: &VerifyArgs, default: &[i32]) -> Vec<i32> {
    if a.p.is_empty() {
        default.to_vec()
    } else {
        a.p.clone()
    }
}

fn tcaps(a: &VerifyArgs, default: &[i32]) -> Vec<i32> {
    if a.tcaps.is_empty() {
        default.to_vec()
    } else {
        a.tcaps.clone()
    }
}

fn bigraded(a: &VerifyArgs) -> (u32, u32) {
    a.params.bigraded().unwrap_or((1, 1))
}

/// The context `(x, y, Q)` of the Toda checks.
fn xyq(a: &VerifyArgs) -> Result<Arc<SeriesContext>, Error> {
    SeriesContext::new(&["x", "y", "Q"], &[a.xcap.unwrap_or(3), a.ycap.unwrap_or(3), a.qcap.unwrap_or(3)])
}

fn toda_elements(params: &QParams) -> Vec<GLElement> {
    vec![
        GLElement::identity(params.zeta.clone()).then(Factor::QL0("Q".into())),
        GLElement::vertex_sandwich(rat(1, 2), rat(1, 3), "Q", &params.zeta),
    ]
}

fn fock(a: &VerifyArgs, params: &QParams) -> Reports {
    let ch = charges(a, &[-2, -1, 0, 1, 2]);
    let energy = a.energy.unwrap_or(6);
    let kmax = a.kmax.unwrap_or(2);
    let zeta = &params.zeta;
    let mut out = Vec::new();
    match a.suite.as_str() {
        "heisenberg" => out.push(check_heisenberg(HeisenbergForm::Standard, a.max_mode.unwrap_or(4), &ch, energy)?),
        "quantum-torus" => {
            let m = a.max_mode.unwrap_or(2);
            for k in 1..=kmax {
                for l in 1..=kmax {
                    for i in -m..=m {
                        for j in -m..=m {
                            out.push(check_quantum_torus(zeta, k, l, i, j, &ch, energy)?);
                        }
                    }
                }
            }
        }
        "eigenvalues" => out.push(check_eigenvalues(zeta, a.kmax.unwrap_or(3), &ch, energy)?),
        "vertex" => out.push(check_vertex_routes(a.cap.unwrap_or(4), &ch, energy)?),
        "transfer" => out.push(check_transfer(zeta, &ch, energy, a.cap.unwrap_or(12))?),
        "intertwining" => match a.params.bigraded() {
            None => {
                for k in 1..=kmax {
                    out.push(check_intertwining(&Intertwining::single(zeta, k), &ch, energy)?);
                }
            }
            Some((n1, n2)) => {
                for k in 1..=kmax {
                    out.push(check_intertwining_bigraded(params, n1, n2, k, &ch, energy)?);
                }
            }
        },
        _ => unreachable!(),
    }
    Ok(out)
}

fn tau(a: &VerifyArgs, params: &QParams) -> Reports {
    let (n1, n2) = bigraded(a);
    let qcap = a.qcap.unwrap_or(4);
    let kmax = a.kmax.unwrap_or(2).max(1) as u32;
    let mut out = Vec::new();
    for p in charges(a, &[0, 1]) {
        match a.suite.as_str() {
            "theorem1" => out.push(check_theorem1(params, n1, n2, p, qcap, &tcaps(a, &[2, 1]))?),
            "theorem2" => {
                for k in 1..=kmax {
                    out.push(check_theorem2(params, n1, n2, k, p, qcap)?);
                }
            }
            "tau-constraint" => {
                for k in 1..=kmax {
                    out.push(check_tau_constraint(params, n1, n2, k, p, qcap)?);
                }
            }
            _ => unreachable!(),
        }
    }
    Ok(out)
}

fn toda(a: &VerifyArgs, params: &QParams) -> Reports {
    let ctx = xyq(a)?;
    let ps = charges(a, &[-1, 0, 1]);
    let gs = toda_elements(params);
    let mut out = Vec::new();
    let forms: &[QTodaForm] = match a.suite.as_str() {
        "qdiff-2dtoda" => &[QTodaForm::Sigma, QTodaForm::Rho],
        "kajiwara-satsuma" => &[QTodaForm::SigmaTilde, QTodaForm::RhoTilde],
        _ => &[],
    };
    for p in &ps {
        for g in &gs {
            match a.suite.as_str() {
                "fay" => {
                    let reading = match a.fay_reading {
                        Reading::Corrected => FayReading::Corrected,
                        Reading::Printed => FayReading::AsPrinted,
                    };
                    // a shifted base point separates the two readings
                    let shifted = SeriesContext::new(
                        &["x", "y", "Q", "u", "v"],
                        &[ctx.caps()[0], ctx.caps()[1], ctx.caps()[2], 1, 1],
                    )?;
                    let c = if reading == FayReading::AsPrinted { &shifted } else { &ctx };
                    out.push(check_fay(g, *p, c, reading)?);
                }
                "2dtoda-differential" => out.push(check_2dtoda_differential(g, *p, &ctx)?),
                "qdiff-1dtoda" => {
                    if g.factors.len() == 1 {
                        out.push(check_qdiff_1dtoda(g, *p, params, &ctx)?);
                    }
                }
                _ => {
                    for form in forms {
                        out.push(check_qdiff_2dtoda(g, *p, params, &ctx, *form)?);
                    }
                }
            }
        }
    }
    if a.suite == "kajiwara-satsuma" {
        out.push(check_wronskian_normalization(params, &ctx, 1)?);
    }
    Ok(out)
}

fn run(a: &VerifyArgs) -> Reports {
    let graded = matches!(a.suite.as_str(), "theorem1" | "theorem2" | "tau-constraint");
    let params = a.params.params_graded(graded.then_some((1, 1)))?;
    match a.suite.as_str() {
        "heisenberg" | "quantum-torus" | "eigenvalues" | "vertex" | "transfer" | "intertwining" => fock(a, &params),
        "theorem1" | "theorem2" | "tau-constraint" => tau(a, &params),
        "fay" | "2dtoda-differential" | "qdiff-2dtoda" | "qdiff-1dtoda" | "kajiwara-satsuma" => toda(a, &params),
        "theorem3" => {
            let qrel = a.qcap.unwrap_or(6);
            let t = tcaps(a, &[2]);
            charges(a, &[-1, 0, 1, 2]).into_iter().map(|p| check_theorem3(&params, p, &t, qrel)).collect()
        }
        "xy-prefactor" => {
            let t = tcaps(a, &[1]);
            let extra = a.qcap.unwrap_or(2);
            charges(a, &[1, 2]).into_iter().map(|p| check_xy_prefactor(&params, p, &t, extra)).collect()
        }
        "macmahon" => Ok(vec![check_macmahon(a.cap.unwrap_or(10))?]),
        "cauchy" => Ok(vec![check_cauchy(&params.zeta1, &params.zeta2, a.qcap.unwrap_or(8))?]),
        "schur-oracles" => {
            let w = a.cap.unwrap_or(8).max(0) as u32;
            Ok(vec![check_schur_oracles(&params.zeta, w, w.min(4), 10)?])
        }
        _ => unreachable!(),
    }
}

fn render(suite: &str, reports: &[VerificationReport], verdict: Verdict, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({ "suite": suite, "verdict": verdict, "reports": reports });
            serde_json::to_string_pretty(&v).expect("reports serialize") + "\n"
        }
        Format::Csv => {
            let mut s = String::new();
            for (i, r) in reports.iter().enumerate() {
                let csv = r.to_csv();
                // keep one header line
                let body = if i == 0 { csv.as_str() } else { csv.split_once('\n').map_or("", |x| x.1) };
                s.push_str(body);
            }
            if s.is_empty() {
                s.push_str("identity,label,value,zero,overflow\n");
            }
            s
        }
    }
}

pub fn verify(a: &VerifyArgs) -> Result<u8, Failure> {
    if !SUITES.contains(&a.suite.as_str()) {
        return Err(Failure(EXIT_USAGE, format!("unknown suite {:?}; known: {}", a.suite, SUITES.join(", "))));
    }
    let reports = run(a)?;
    let verdict = combined_verdict(&reports);
    a.out.emit(&render(&a.suite, &reports, verdict, a.out.format)).map_err(|e| Failure(EXIT_USAGE, e))?;
    Ok(exit_code(verdict))
}

pub fn exit_code(verdict: Verdict) -> u8 {
    match verdict {
        Verdict::Pass => 0,
        Verdict::Fail => EXIT_FAIL,
        Verdict::InconclusiveOverflow => EXIT_INCONCLUSIVE,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_exit_codes() {
        assert_eq!(exit_code(Verdict::Pass), 0);
        assert_eq!(exit_code(Verdict::Fail), 1);
        assert_eq!(exit_code(Verdict::InconclusiveOverflow), 3);
    }

    #[test]
    fn suite_list_is_unique() {
        let mut v = SUITES.to_vec();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), SUITES.len());
    }
}
