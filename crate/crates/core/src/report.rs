//! Structured outcome of an identity check.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::params::QParams;
use crate::series::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    InconclusiveOverflow,
}

/// One coefficient of `LHS − RHS`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub label: String,
    pub value: String,
    pub zero: bool,
    /// The coefficient may be affected by truncation of an intermediate state.
    pub overflow: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub caps: BTreeMap<String, i64>,
    pub residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &Residual> {
        self.residuals.iter().filter(|r| !r.zero)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `identity,label,value,zero,overflow` rows; values stay exact strings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("identity,label,value,zero,overflow\n");
        let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
        for r in &self.residuals {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                quote(&self.identity),
                quote(&r.label),
                quote(&r.value),
                r.zero,
                r.overflow
            ));
        }
        out
    }
}

/// Collects residuals and settles the verdict: fail on any nonzero exact
/// residual, inconclusive if only overflow entries are nonzero.
#[derive(Debug, Clone)]
pub struct ReportBuilder {
    report: VerificationReport,
    forced_fail: bool,
}

impl ReportBuilder {
    pub fn new(identity: impl Into<String>) -> Self {
        ReportBuilder {
            report: VerificationReport {
                identity: identity.into(),
                params: BTreeMap::new(),
                caps: BTreeMap::new(),
                residuals: Vec::new(),
                notes: Vec::new(),
                verdict: Verdict::Pass,
            },
            forced_fail: false,
        }
    }

    pub fn param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.report.params.insert(key.into(), value.to_string());
        self
    }

    pub fn params(mut self, p: &QParams) -> Self {
        for (k, v) in p.describe() {
            self.report.params.insert(k, v);
        }
        self
    }

    pub fn cap(mut self, key: impl Into<String>, value: i64) -> Self {
        self.report.caps.insert(key.into(), value);
        self
    }

    pub fn residual<R: Ring>(&mut self, label: impl Into<String>, value: &R, overflow: bool) {
        self.report.residuals.push(Residual {
            label: label.into(),
            value: value.render(),
            zero: value.is_nil(),
            overflow,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.report.notes.push(text.into());
    }

    pub fn fail(&mut self, reason: impl Into<String>) {
        self.forced_fail = true;
        self.report.notes.push(reason.into());
    }

    /// Folds a sub-report in, prefixing its labels.
    pub fn absorb(&mut self, prefix: &str, sub: VerificationReport) {
        if sub.verdict == Verdict::Fail {
            self.forced_fail = true;
        }
        for mut r in sub.residuals {
            r.label = format!("{prefix}: {}", r.label);
            self.report.residuals.push(r);
        }
        for n in sub.notes {
            self.report.notes.push(format!("{prefix}: {n}"));
        }
    }

    pub fn finish(mut self) -> VerificationReport {
        let exact_bad = self.report.residuals.iter().any(|r| !r.zero && !r.overflow);
        let overflow_bad = self.report.residuals.iter().any(|r| !r.zero && r.overflow);
        self.report.verdict = if self.forced_fail || exact_bad {
            Verdict::Fail
        } else if overflow_bad {
            Verdict::InconclusiveOverflow
        } else {
            Verdict::Pass
        };
        self.report
    }
}

/// Aggregate exit status over several reports: fail dominates inconclusive.
pub fn combined_verdict<'a>(reports: impl IntoIterator<Item = &'a VerificationReport>) -> Verdict {
    let mut v = Verdict::Pass;
    for r in reports {
        match r.verdict {
            Verdict::Fail => return Verdict::Fail,
            Verdict::InconclusiveOverflow => v = Verdict::InconclusiveOverflow,
            Verdict::Pass => {}
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, Rational};
    use num_traits::Zero;

    #[test]
    fn verdict_rules() {
        let mut b = ReportBuilder::new("demo");
        b.residual("a", &Rational::zero(), false);
        assert_eq!(b.clone().finish().verdict, Verdict::Pass);
        b.residual("b", &int(2), true);
        assert_eq!(b.clone().finish().verdict, Verdict::InconclusiveOverflow);
        b.residual("c", &int(1), false);
        let r = b.finish();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.nonzero().count(), 2);
        assert!(r.to_json().contains("\"verdict\": \"fail\""));
        assert!(r.to_csv().lines().nth(3).unwrap().contains("\"1/1\""));
    }
}
