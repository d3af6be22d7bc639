//! Tau functions of `GL(∞)` words and the bilinear identities they satisfy.

pub mod hirota;
pub mod theorems;
pub mod word;

pub use hirota::{
    check_2dtoda_differential, check_fay, check_qdiff_1dtoda, check_qdiff_2dtoda, check_q_shift,
    check_wronskian_normalization, FayReading, QTodaForm,
};
pub use theorems::{
    check_xy_prefactor, check_special_point, check_tau_constraint, check_theorem1, check_theorem2, check_theorem3,
    PrefactorCandidate,
};
pub use word::{
    apply_factor, apply_word_bra, apply_word_ket, eval_word, tau_eval, times, Factor, GLElement, MiwaArg,
    MiwaCoupling, MiwaWeights,
};

use std::sync::Arc;

use crate::error::Result;
use crate::report::ReportBuilder;
use crate::series::{Exponents, SeriesContext, TruncSeries};

/// `x^2 y Q^3`-style label of an exponent vector.
pub fn monomial_label(ctx: &SeriesContext, e: &[i32]) -> String {
    let parts: Vec<String> = ctx
        .vars()
        .iter()
        .zip(e)
        .filter(|(_, &k)| k != 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}

/// Records `lhs − rhs` coefficient by coefficient over the union of the two
/// supports (one zero entry if both vanish).
pub fn record_series(b: &mut ReportBuilder, tag: &str, lhs: &TruncSeries, rhs: &TruncSeries, overflow: bool) -> Result<()> {
    let diff = lhs.try_sub(rhs)?;
    let mut support: Vec<&Exponents> = lhs.terms().chain(rhs.terms()).map(|(e, _)| e).collect();
    support.sort();
    support.dedup();
    if support.is_empty() {
        b.residual(format!("{tag} [all]"), &diff, overflow);
    }
    for e in support {
        b.residual(format!("{tag} [{}]", monomial_label(lhs.context(), e)), &diff.coeff(e), overflow);
    }
    Ok(())
}

/// Same variables with every cap lowered by `drop[i]`.
pub(crate) fn shrink(ctx: &Arc<SeriesContext>, drop: &[(&str, i32)]) -> Result<Arc<SeriesContext>> {
    let mut caps = ctx.caps().to_vec();
    for (v, d) in drop {
        let i = ctx.var_index(v)?;
        caps[i] -= d;
    }
    SeriesContext::with_mins(ctx.vars(), &caps, ctx.mins())
}

/// Writes every cap of `ctx` into the report.
pub(crate) fn with_caps(mut b: ReportBuilder, ctx: &SeriesContext) -> ReportBuilder {
    for (v, c) in ctx.vars().iter().zip(ctx.caps()) {
        b = b.cap(v.clone(), *c as i64);
    }
    b
}
