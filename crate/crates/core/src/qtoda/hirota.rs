//! Hirota-type identities: the Fay identity, the differential 2D Toda
//! equation, and the q-difference Toda equations in their four variants.

use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::params::QParams;
use crate::qtoda::word::{tau_eval, times, Factor, GLElement, MiwaCoupling};
use crate::qtoda::{record_series, shrink, with_caps};
use crate::report::{ReportBuilder, VerificationReport};
use crate::series::{format_rational, int, rpow, Rational, SeriesContext, TruncSeries};

/// Tau values together with a running exactness flag.
struct Taus<'a> {
    g: &'a GLElement,
    ctx: &'a Arc<SeriesContext>,
    exact: bool,
}

impl<'a> Taus<'a> {
    fn new(g: &'a GLElement, ctx: &'a Arc<SeriesContext>) -> Self {
        Taus { g, ctx, exact: true }
    }

    fn tau(&mut self, p: i32, plus: &[MiwaCoupling], minus: &[MiwaCoupling]) -> Result<TruncSeries> {
        let c = tau_eval(self.g, p, plus, minus, self.ctx, None)?;
        self.exact &= c.exact;
        Ok(c.value)
    }
}

fn cat(a: &[MiwaCoupling], b: &[MiwaCoupling]) -> Vec<MiwaCoupling> {
    a.iter().chain(b).cloned().collect()
}

fn xy(ctx: &Arc<SeriesContext>) -> Result<TruncSeries> {
    TruncSeries::var(ctx, "x")?.try_mul(&TruncSeries::var(ctx, "y")?)
}

/// Which right-hand side of the Fay identity is used for the last factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FayReading {
    /// `τ(T − [x], T̄, p − 1)`
    Corrected,
    /// `τ(T − [x], T, p − 1)`, the second slot filled with `T`.
    AsPrinted,
}

/// `τ(T−[x],T̄,p)τ(T,T̄−[y],p) − τ(T,T̄,p)τ(T−[x],T̄−[y],p)
///  = xy τ(T,T̄−[y],p+1) τ(T−[x],·,p−1)`.
///
/// The base point is `T = T̄ = 0`, moved to `T_1 = u`, `T̄_1 = v` when the
/// context has variables `u`, `v`; there the two readings differ.
pub fn check_fay(g: &GLElement, p: i32, ctx: &Arc<SeriesContext>, reading: FayReading) -> Result<VerificationReport> {
    let mut b = with_caps(ReportBuilder::new(format!("Fay identity ({reading:?})")), ctx)
        .param("g", g.describe())
        .param("p", p);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut bar_as_plus = Vec::new();
    if ctx.var_index("u").is_ok() {
        plus.push(MiwaCoupling::mode("u", 1, 1));
        bar_as_plus.push(MiwaCoupling::mode("u", 1, 1));
    }
    if ctx.var_index("v").is_ok() {
        minus.push(MiwaCoupling::mode("v", 1, 1));
    }
    let shift_x = cat(&plus, &[MiwaCoupling::full("x", -1)]);
    let shift_y = cat(&minus, &[MiwaCoupling::full("y", -1)]);
    let mut t = Taus::new(g, ctx);
    let lhs = t
        .tau(p, &shift_x, &minus)?
        .try_mul(&t.tau(p, &plus, &shift_y)?)?
        .try_sub(&t.tau(p, &plus, &minus)?.try_mul(&t.tau(p, &shift_x, &shift_y)?)?)?;
    let last_minus = match reading {
        FayReading::Corrected => &minus,
        FayReading::AsPrinted => &bar_as_plus,
    };
    let rhs = xy(ctx)?
        .try_mul(&t.tau(p + 1, &plus, &shift_y)?)?
        .try_mul(&t.tau(p - 1, &shift_x, last_minus)?)?;
    record_series(&mut b, "Fay", &lhs, &rhs, !t.exact)?;
    Ok(b.finish())
}

/// `τ_{xy} τ − τ_x τ_y = τ(p+1) τ(p−1)` with `x = T_1`, `y = −T̄_1`,
/// compared below the top `x` and `y` degrees.
pub fn check_2dtoda_differential(g: &GLElement, p: i32, ctx: &Arc<SeriesContext>) -> Result<VerificationReport> {
    let mut b = with_caps(ReportBuilder::new("differential 2D Toda"), ctx).param("g", g.describe()).param("p", p);
    b.note("derivatives lose the top x and y degrees; compared one below each cap");
    let plus = [MiwaCoupling::mode("x", 1, 1)];
    let minus = [MiwaCoupling::mode("y", 1, -1)];
    let mut t = Taus::new(g, ctx);
    let tau = t.tau(p, &plus, &minus)?;
    let tx = tau.derivative("x")?;
    let ty = tau.derivative("y")?;
    let txy = tx.derivative("y")?;
    let lhs = txy.try_mul(&tau)?.try_sub(&tx.try_mul(&ty)?)?;
    let rhs = t.tau(p + 1, &plus, &minus)?.try_mul(&t.tau(p - 1, &plus, &minus)?)?;
    let small = shrink(ctx, &[("x", 1), ("y", 1)])?;
    record_series(&mut b, "2D Toda", &lhs.truncate_to(&small)?, &rhs.truncate_to(&small)?, !t.exact)?;
    Ok(b.finish())
}

/// The transformed tau functions σ, ρ and their modified versions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QTodaForm {
    /// `σ(x,y,p) = τ([x]_{q1}, −[y]_{q2}, p)`
    Sigma,
    /// `ρ(x,y,p) = τ([x]_{q1}, [y]_{q2}, p)`
    Rho,
    /// `σ̃ = σ ∏(1 − xy q1^m q2^n)`
    SigmaTilde,
    /// `ρ̃ = ρ ∏(1 − xy q1^m q2^n)^{−1}`, the Kajiwara–Satsuma form.
    RhoTilde,
}

impl QTodaForm {
    fn y_sign(self) -> i32 {
        match self {
            QTodaForm::Sigma | QTodaForm::SigmaTilde => -1,
            QTodaForm::Rho | QTodaForm::RhoTilde => 1,
        }
    }
}

/// `log ∏_{m,n≥0}(1 − xy q1^m q2^n) = −Σ_k (xy)^k / (k (1−q1^k)(1−q2^k))`.
fn log_double_product(ctx: &Arc<SeriesContext>, q1: &Rational, q2: &Rational) -> Result<TruncSeries> {
    let xy = xy(ctx)?;
    let mut log = TruncSeries::zero(ctx);
    let kmax = ctx.cap("x")?.min(ctx.cap("y")?).max(0);
    for k in 1..=kmax {
        let w = -(int(k as i64) * (Rational::one() - rpow(q1, k as i64)) * (Rational::one() - rpow(q2, k as i64))).recip();
        log = log.try_add(&xy.pow(k as u32)?.scale_by(&w))?;
    }
    Ok(log)
}

/// `∏_{m,n≥0}(1 − xy q1^m q2^n)` through the caps.
pub fn double_product(ctx: &Arc<SeriesContext>, q1: &Rational, q2: &Rational) -> Result<TruncSeries> {
    log_double_product(ctx, q1, q2)?.exp()
}

fn q_transformed(t: &mut Taus<'_>, form: QTodaForm, q1: &Rational, q2: &Rational, p: i32) -> Result<TruncSeries> {
    let plus = [MiwaCoupling::q("x", q1.clone(), 1)];
    let minus = [MiwaCoupling::q("y", q2.clone(), form.y_sign())];
    let base = t.tau(p, &plus, &minus)?;
    let log = log_double_product(t.ctx, q1, q2)?;
    match form {
        QTodaForm::Sigma | QTodaForm::Rho => Ok(base),
        QTodaForm::SigmaTilde => base.try_mul(&log.exp()?),
        QTodaForm::RhoTilde => base.try_mul(&neg_exp(&log)?),
    }
}

fn neg_exp(s: &TruncSeries) -> Result<TruncSeries> {
    s.scale_by(&-Rational::one()).exp()
}

/// The q-difference Toda equation in the chosen form:
///
/// - σ: `σ(q1x,q2y)σ − σ(x,q2y)σ(q1x,y) = xy σ(p+1) σ(q1x,q2y,p−1)`
/// - ρ: `ρ(q1x,y)ρ(x,q2y) − ρ ρ(q1x,q2y) = xy ρ(x,q2y,p+1) ρ(q1x,y,p−1)`
/// - σ̃, ρ̃: as above with the middle product multiplied by `(1 − xy)`.
pub fn check_qdiff_2dtoda(g: &GLElement, p: i32, params: &QParams, ctx: &Arc<SeriesContext>, form: QTodaForm) -> Result<VerificationReport> {
    let (q1, q2) = (params.q1(), params.q2());
    let mut b = with_caps(ReportBuilder::new(format!("q-difference 2D Toda ({form:?})")), ctx)
        .param("g", g.describe())
        .param("p", p)
        .param("q1", format_rational(&q1))
        .param("q2", format_rational(&q2));
    let mut t = Taus::new(g, ctx);
    let f = q_transformed(&mut t, form, &q1, &q2, p)?;
    let fu = q_transformed(&mut t, form, &q1, &q2, p + 1)?;
    let fd = q_transformed(&mut t, form, &q1, &q2, p - 1)?;
    let sx = |s: &TruncSeries| s.scale_var("x", &q1);
    let sy = |s: &TruncSeries| s.scale_var("y", &q2);
    let xy = xy(ctx)?;
    let one_minus_xy = TruncSeries::one(ctx).try_sub(&xy)?;
    let (lhs, rhs) = match form {
        QTodaForm::Sigma | QTodaForm::SigmaTilde => {
            let mut mid = sy(&f)?.try_mul(&sx(&f)?)?;
            if form == QTodaForm::SigmaTilde {
                mid = mid.try_mul(&one_minus_xy)?;
            }
            let lhs = sx(&sy(&f)?)?.try_mul(&f)?.try_sub(&mid)?;
            let rhs = xy.try_mul(&fu)?.try_mul(&sx(&sy(&fd)?)?)?;
            (lhs, rhs)
        }
        QTodaForm::Rho | QTodaForm::RhoTilde => {
            let mut mid = f.try_mul(&sx(&sy(&f)?)?)?;
            if form == QTodaForm::RhoTilde {
                mid = mid.try_mul(&one_minus_xy)?;
            }
            let lhs = sx(&f)?.try_mul(&sy(&f)?)?.try_sub(&mid)?;
            let rhs = xy.try_mul(&sy(&fu)?)?.try_mul(&sx(&fd)?)?;
            (lhs, rhs)
        }
    };
    record_series(&mut b, &format!("{form:?}"), &lhs, &rhs, !t.exact)?;
    Ok(b.finish())
}

/// Restricts a series in `(x, y, …)` that depends on `x, y` only through
/// `xy` to a series in `(t, …)`; off-diagonal terms are returned separately.
fn reduce_to_product(s: &TruncSeries, target: &Arc<SeriesContext>) -> Result<(TruncSeries, Vec<(String, Rational)>)> {
    let ctx = s.context();
    let (ix, iy) = (ctx.var_index("x")?, ctx.var_index("y")?);
    let mut out = TruncSeries::zero(target);
    let mut off = Vec::new();
    for (e, c) in s.terms() {
        if e[ix] != e[iy] {
            off.push((crate::qtoda::monomial_label(ctx, e), c.clone()));
            continue;
        }
        let mut f = Vec::with_capacity(target.nvars());
        for (i, v) in ctx.vars().iter().enumerate() {
            if i == iy {
                continue;
            }
            f.push(e[i]);
            debug_assert!(i == ix || target.var_index(v).is_ok());
        }
        out = out.try_add(&TruncSeries::monomial(target, &f, c.clone())?)?;
    }
    Ok((out, off))
}

/// The 1D reduction for a diagonal `g`: `σ` depends on `t = xy` only, and
/// `σ(q1q2t)σ(t) − σ(q1t)σ(q2t) = t σ(t,p+1) σ(q1q2t,p−1)`.
pub fn check_qdiff_1dtoda(g: &GLElement, p: i32, params: &QParams, ctx: &Arc<SeriesContext>) -> Result<VerificationReport> {
    let (q1, q2) = (params.q1(), params.q2());
    let mut b = with_caps(ReportBuilder::new("q-difference 1D Toda"), ctx)
        .param("g", g.describe())
        .param("p", p)
        .param("q1", format_rational(&q1))
        .param("q2", format_rational(&q2));
    if g.factors.iter().any(|f| matches!(f, Factor::Transfer(..) | Factor::Vertex(..) | Factor::CurrentExp(_))) {
        return Err(Error::Unsupported("the 1D reduction needs a diagonal g".into()));
    }
    // t replaces x, y is dropped
    let mut vars = Vec::new();
    let mut caps = Vec::new();
    let tcap = ctx.cap("x")?.min(ctx.cap("y")?);
    for (v, c) in ctx.vars().iter().zip(ctx.caps()) {
        match v.as_str() {
            "x" => {
                vars.push("t".to_string());
                caps.push(tcap);
            }
            "y" => {}
            _ => {
                vars.push(v.clone());
                caps.push(*c);
            }
        }
    }
    let tctx = SeriesContext::new(&vars, &caps)?;
    let mut t = Taus::new(g, ctx);
    let mut sig = Vec::new();
    for d in [0, 1, -1] {
        let s = q_transformed(&mut t, QTodaForm::Sigma, &q1, &q2, p + d)?;
        let (r, off) = reduce_to_product(&s, &tctx)?;
        for (label, c) in off {
            b.residual(format!("σ(p{d:+}) off-diagonal [{label}]"), &c, !t.exact);
        }
        sig.push(r);
    }
    let q12 = &q1 * &q2;
    let st = |s: &TruncSeries, c: &Rational| s.scale_var("t", c);
    let lhs = st(&sig[0], &q12)?
        .try_mul(&sig[0])?
        .try_sub(&st(&sig[0], &q1)?.try_mul(&st(&sig[0], &q2)?)?)?;
    let rhs = TruncSeries::var(&tctx, "t")?.try_mul(&sig[1])?.try_mul(&st(&sig[2], &q12)?)?;
    record_series(&mut b, "1D", &lhs, &rhs, !t.exact)?;
    Ok(b.finish())
}

/// Compares `exp(sign · Σ k T_k T̄_k)` at the σ point `T = [x]_{q1}`,
/// `T̄ = −[y]_{q2}` with `σ̃/σ = ∏(1 − xy q1^m q2^n)`, and at the ρ point
/// with `ρ̃/ρ = ∏(1 − xy q1^m q2^n)^{−1}`.
pub fn check_wronskian_normalization(params: &QParams, ctx: &Arc<SeriesContext>, sign: i32) -> Result<VerificationReport> {
    let (q1, q2) = (params.q1(), params.q2());
    let mut b = with_caps(ReportBuilder::new(format!("modified tau normalization, exp({sign:+} Σ k T_k Tbar_k)")), ctx)
        .param("q1", format_rational(&q1))
        .param("q2", format_rational(&q2));
    let kmax = ctx.cap("x")?.max(0) as u32;
    let tx = times(ctx, &[MiwaCoupling::q("x", q1.clone(), 1)], kmax)?;
    let log = log_double_product(ctx, &q1, &q2)?;
    for (label, ysign, target) in [("sigma", -1, log.exp()?), ("rho", 1, neg_exp(&log)?)] {
        let ty = times(ctx, &[MiwaCoupling::q("y", q2.clone(), ysign)], kmax)?;
        let mut arg = TruncSeries::zero(ctx);
        for (k, (a, c)) in tx.iter().zip(&ty).enumerate() {
            arg = arg.try_add(&a.try_mul(c)?.scale_by(&int((k as i64 + 1) * sign as i64)))?;
        }
        record_series(&mut b, label, &arg.exp()?, &target, false)?;
    }
    Ok(b.finish())
}

/// `[qx]_q = [x]_q − [x]` on the weight sequences through `x^{cap}`.
pub fn check_q_shift(q: &Rational, cap: i32) -> Result<VerificationReport> {
    let ctx = SeriesContext::new(&["x"], &[cap])?;
    let mut b = ReportBuilder::new("q-shift of Miwa weights").param("q", format_rational(q)).cap("x", cap as i64);
    let xq = times(&ctx, &[MiwaCoupling::q("x", q.clone(), 1)], cap as u32)?;
    let x = times(&ctx, &[MiwaCoupling::full("x", 1)], cap as u32)?;
    for (k, (a, c)) in xq.iter().zip(&x).enumerate() {
        record_series(&mut b, &format!("T_{}", k + 1), &a.scale_var("x", q)?, &a.try_sub(c)?, false)?;
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::series::rat;

    fn ctx(extra: &[(&str, i32)]) -> Arc<SeriesContext> {
        let mut vars = vec!["x", "y", "Q"];
        let mut caps = vec![2, 2, 2];
        for (v, c) in extra {
            vars.push(v);
            caps.push(*c);
        }
        SeriesContext::new(&vars, &caps).unwrap()
    }

    fn ql0() -> GLElement {
        GLElement::identity(rat(1, 2)).then(Factor::QL0("Q".into()))
    }

    #[test]
    fn fay_small() {
        let c = ctx(&[]);
        let r = check_fay(&ql0(), 0, &c, FayReading::Corrected).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{:?}", r.nonzero().collect::<Vec<_>>());
    }

    #[test]
    fn readings_differ_off_the_origin() {
        let c = ctx(&[("u", 1), ("v", 1)]);
        let g = GLElement::vertex_sandwich(rat(1, 2), rat(1, 3), "Q", &rat(1, 2));
        assert!(check_fay(&g, 0, &c, FayReading::Corrected).unwrap().passed());
        assert_eq!(check_fay(&g, 0, &c, FayReading::AsPrinted).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn differential_toda_small() {
        let c = ctx(&[]);
        let r = check_2dtoda_differential(&ql0(), 0, &c).unwrap();
        assert!(r.passed(), "{:?}", r.nonzero().collect::<Vec<_>>());
    }

    #[test]
    fn q_difference_forms_small() {
        let c = ctx(&[]);
        let params = QParams::new(rat(1, 3), rat(1, 2), rat(1, 3)).unwrap();
        for form in [QTodaForm::Sigma, QTodaForm::Rho, QTodaForm::SigmaTilde, QTodaForm::RhoTilde] {
            let r = check_qdiff_2dtoda(&ql0(), 0, &params, &c, form).unwrap();
            assert!(r.passed(), "{form:?}: {:?}", r.nonzero().collect::<Vec<_>>());
        }
        assert!(check_qdiff_1dtoda(&ql0(), 1, &params, &c).unwrap().passed());
    }

    #[test]
    fn normalization_sign() {
        let c = ctx(&[]);
        let params = QParams::new(rat(1, 3), rat(1, 2), rat(1, 3)).unwrap();
        assert!(check_wronskian_normalization(&params, &c, 1).unwrap().passed());
        assert_eq!(check_wronskian_normalization(&params, &c, -1).unwrap().verdict, Verdict::Fail);
    }

    #[test]
    fn q_shift() {
        assert!(check_q_shift(&rat(1, 4), 6).unwrap().passed());
    }
}
