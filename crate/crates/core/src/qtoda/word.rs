//! `GL(∞)` elements as words of operator factors, Miwa-type couplings, and
//! the fermionic tau function
//! `τ(T, T̄, p) = ⟨p| e^{Σ T_k J_k} g e^{−Σ T̄_k J_{−k}} |p⟩`.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::{
    apply_bilinear, apply_current_exp, apply_diag_exp, apply_diag_power, apply_q_l0, apply_transfer, apply_vertex,
    charge_offset, expectation, Bilinear, Contraction, FockVector, Limit, PlusMinus, Side,
};
use crate::params::QParams;
use crate::series::{format_rational, int, rpow, Rational, Ring, SeriesContext, TruncSeries};

/// One factor of a word.
#[derive(Debug, Clone)]
pub enum Factor {
    /// `Q^{L0}` for a context variable `Q`.
    QL0(String),
    /// `exp(Σ_j s_j X_j)` for diagonal `X_j` and nilpotent `s_j`.
    DiagExp(Vec<(TruncSeries, Bilinear)>),
    /// `base^{X}` for a diagonal `X` with integer eigenvalues.
    DiagPower { base: Rational, op: Bilinear },
    /// `G_±(ζ)`.
    Transfer(PlusMinus, Rational),
    /// `V_±(z)` at a rational point.
    Vertex(PlusMinus, Rational),
    /// `exp(Σ_j c_j J_{m_j})`, all modes of one sign.
    CurrentExp(Vec<(i32, TruncSeries)>),
    /// A bare bilinear, e.g. an inserted current.
    Insert(Bilinear),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pm = |s: &PlusMinus| if *s == PlusMinus::Plus { "+" } else { "-" };
        match self {
            Factor::QL0(v) => write!(f, "{v}^L0"),
            Factor::DiagExp(c) => {
                let ops: Vec<String> = c.iter().map(|(_, op)| op.to_string()).collect();
                write!(f, "exp[{}]", ops.join("+"))
            }
            Factor::DiagPower { base, op } => write!(f, "({})^{op}", format_rational(base)),
            Factor::Transfer(s, z) => write!(f, "G{}({})", pm(s), format_rational(z)),
            Factor::Vertex(s, z) => write!(f, "V{}({})", pm(s), format_rational(z)),
            Factor::CurrentExp(m) => {
                let ms: Vec<String> = m.iter().map(|(k, _)| format!("J({k})")).collect();
                write!(f, "exp[{}]", ms.join("+"))
            }
            Factor::Insert(op) => write!(f, "{op}"),
        }
    }
}

/// Does the factor raise energy when acting on this side?
fn raises(f: &Factor, side: Side) -> bool {
    let up = |mode: i32| match side {
        Side::Ket => mode < 0,
        Side::Bra => mode > 0,
    };
    match f {
        Factor::Transfer(s, _) | Factor::Vertex(s, _) => up(s.mode(1)),
        Factor::CurrentExp(m) => m.first().is_some_and(|(k, _)| up(*k)),
        Factor::Insert(op) => up(-op.energy_shift()),
        _ => false,
    }
}

/// An ordered word `X_1 X_2 ⋯ X_n`; `zeta` is the root of `q` used by `H_k`
/// and `V^{(k)}_m`.
#[derive(Debug, Clone)]
pub struct GLElement {
    pub factors: Vec<Factor>,
    pub zeta: Rational,
}

impl GLElement {
    pub fn identity(zeta: Rational) -> Self {
        GLElement { factors: Vec::new(), zeta }
    }

    pub fn then(mut self, f: Factor) -> Self {
        self.factors.push(f);
        self
    }

    /// `Q^{L0} e^{H(t)}` with `t_k` named by `t_vars[k−1]`.
    pub fn diagonal_crystal(ctx: &Arc<SeriesContext>, q_var: &str, t_vars: &[String], zeta: &Rational) -> Result<Self> {
        let g = GLElement::identity(zeta.clone()).then(Factor::QL0(q_var.into()));
        if t_vars.is_empty() {
            return Ok(g);
        }
        Ok(g.then(Factor::DiagExp(h_couplings(ctx, t_vars)?)))
    }

    /// `q1^{W0/2} G_−(q1) G_+(q1) Q^{L0} G_−(q2) G_+(q2) q2^{W0/2}`.
    pub fn crystal(params: &QParams, q_var: &str) -> Self {
        GLElement::identity(params.zeta.clone())
            .then(Factor::DiagPower { base: params.zeta1.clone(), op: Bilinear::W0 })
            .then(Factor::Transfer(PlusMinus::Minus, params.zeta1.clone()))
            .then(Factor::Transfer(PlusMinus::Plus, params.zeta1.clone()))
            .then(Factor::QL0(q_var.into()))
            .then(Factor::Transfer(PlusMinus::Minus, params.zeta2.clone()))
            .then(Factor::Transfer(PlusMinus::Plus, params.zeta2.clone()))
            .then(Factor::DiagPower { base: params.zeta2.clone(), op: Bilinear::W0 })
    }

    /// `V_−(a) Q^{L0} V_+(b)`.
    pub fn vertex_sandwich(a: Rational, b: Rational, q_var: &str, zeta: &Rational) -> Self {
        GLElement::identity(zeta.clone())
            .then(Factor::Vertex(PlusMinus::Minus, a))
            .then(Factor::QL0(q_var.into()))
            .then(Factor::Vertex(PlusMinus::Plus, b))
    }

    /// Index of the first `Q^{L0}`, which splits the word into bra and ket halves.
    fn split(&self) -> usize {
        self.factors.iter().position(|f| matches!(f, Factor::QL0(_))).unwrap_or(self.factors.len())
    }

    /// Energy window fixed by the `Q`-cap of the first `Q^{L0}` at charge `p`.
    fn window(&self, ctx: &SeriesContext, p: i32) -> Result<Option<i64>> {
        match self.factors.get(self.split()) {
            Some(Factor::QL0(v)) => Ok(Some(ctx.cap(v)? as i64 - charge_offset(p) as i64)),
            _ => Ok(None),
        }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.factors.iter().map(|f| f.to_string()).collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

/// `[(t_k, H_k)]` for `e^{H(t)}`.
pub fn h_couplings(ctx: &Arc<SeriesContext>, t_vars: &[String]) -> Result<Vec<(TruncSeries, Bilinear)>> {
    t_vars
        .iter()
        .enumerate()
        .map(|(i, v)| Ok((TruncSeries::var(ctx, v)?, Bilinear::H(i as i32 + 1))))
        .collect()
}

/// Applies one factor; raising factors are cut at `cap`.
pub fn apply_factor(
    f: &Factor,
    v: &FockVector<TruncSeries>,
    zeta: &Rational,
    cap: Option<u32>,
) -> Result<FockVector<TruncSeries>> {
    let ctx = v.proto().context().clone();
    let up = raises(f, v.side());
    let cap = if up { cap } else { None };
    match f {
        Factor::QL0(var) => apply_q_l0(v, var),
        Factor::DiagExp(c) => apply_diag_exp(v, c, zeta),
        Factor::DiagPower { base, op } => apply_diag_power(v, base, op, zeta),
        Factor::Transfer(s, z) => apply_transfer(v, *s, &TruncSeries::constant(&ctx, z.clone()), cap),
        Factor::Vertex(s, z) => {
            let limit = match (up, cap) {
                (true, Some(c)) => Limit::Energy(c),
                (true, None) => return Err(Error::CapTooSmall(format!("{f} raises energy without a window"))),
                (false, _) => Limit::Order(0),
            };
            Ok(apply_vertex(v, *s, &TruncSeries::constant(&ctx, z.clone()), limit))
        }
        Factor::CurrentExp(m) => {
            let nil = m.iter().all(|(_, c)| c.is_nilpotent());
            apply_current_exp(v, m, if nil { None } else { cap })
        }
        // a single bilinear is a finite sum, so it is never cut
        Factor::Insert(op) => Ok(apply_bilinear(v, op, zeta, None)),
    }
}

/// `X_1 ⋯ X_n |v⟩`, rightmost factor first.
pub fn apply_word_ket(factors: &[Factor], v: &FockVector<TruncSeries>, zeta: &Rational, cap: Option<u32>) -> Result<FockVector<TruncSeries>> {
    let mut out = v.clone();
    for f in factors.iter().rev() {
        out = apply_factor(f, &out, zeta, cap)?;
    }
    Ok(out)
}

/// `⟨v| X_1 ⋯ X_n`, leftmost factor first.
pub fn apply_word_bra(factors: &[Factor], v: &FockVector<TruncSeries>, zeta: &Rational, cap: Option<u32>) -> Result<FockVector<TruncSeries>> {
    let mut out = v.clone();
    for f in factors {
        out = apply_factor(f, &out, zeta, cap)?;
    }
    Ok(out)
}

/// `⟨bra| g |ket⟩`, splitting `g` at its first `Q^{L0}`. Without a `Q^{L0}`
/// the whole word acts on the ket and `energy_cap` bounds raising factors.
pub fn eval_word(
    g: &GLElement,
    bra: &FockVector<TruncSeries>,
    ket: &FockVector<TruncSeries>,
    energy_cap: Option<u32>,
) -> Result<Contraction<TruncSeries>> {
    let charges = ket.charges();
    let p = match charges.as_slice() {
        [p] => *p,
        [] => return Ok(Contraction { value: ket.proto().zero_like(), exact: ket.overflow_from().is_none() }),
        _ => return Err(Error::Unsupported("eval_word expects a single charge sector".into())),
    };
    let ctx = ket.proto().context().clone();
    let cap = match g.window(&ctx, p)? {
        Some(e) if e < 0 => return Ok(Contraction { value: TruncSeries::zero(&ctx), exact: true }),
        Some(e) => Some(energy_cap.map_or(e as u32, |c| c.min(e as u32))),
        None => energy_cap,
    };
    let cut = g.split();
    let left = apply_word_bra(&g.factors[..cut], bra, &g.zeta, cap)?;
    let right = apply_word_ket(&g.factors[cut..], ket, &g.zeta, cap)?;
    expectation(&left, &right)
}

/// Where a coupling is evaluated.
#[derive(Debug, Clone, PartialEq)]
pub enum MiwaArg {
    Var(String),
    Value(Rational),
}

/// Weight sequence of a coupling.
#[derive(Debug, Clone, PartialEq)]
pub enum MiwaWeights {
    /// `[x]`: `T_k = x^k/k`.
    Full,
    /// `[x]_q`: `T_k = x^k/(k(1 − q^k))`.
    Q(Rational),
    /// Only `T_m = x`.
    Mode(u32),
}

/// `sign · [x]`, `sign · [x]_q` or `sign · x e_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct MiwaCoupling {
    pub arg: MiwaArg,
    pub weights: MiwaWeights,
    pub sign: i32,
}

impl MiwaCoupling {
    pub fn full(var: &str, sign: i32) -> Self {
        MiwaCoupling { arg: MiwaArg::Var(var.into()), weights: MiwaWeights::Full, sign }
    }

    pub fn q(var: &str, q: Rational, sign: i32) -> Self {
        MiwaCoupling { arg: MiwaArg::Var(var.into()), weights: MiwaWeights::Q(q), sign }
    }

    pub fn mode(var: &str, m: u32, sign: i32) -> Self {
        MiwaCoupling { arg: MiwaArg::Var(var.into()), weights: MiwaWeights::Mode(m), sign }
    }

    pub fn q_at(x: Rational, q: Rational, sign: i32) -> Self {
        MiwaCoupling { arg: MiwaArg::Value(x), weights: MiwaWeights::Q(q), sign }
    }

    /// Scalar weight `w_k` with `T_k = sign · w_k · x^k`.
    pub fn weight(&self, k: u32) -> Result<Rational> {
        let s = int(self.sign as i64);
        Ok(match &self.weights {
            MiwaWeights::Full => s / int(k as i64),
            MiwaWeights::Q(q) => {
                let d = Rational::one() - rpow(q, k as i64);
                if d.is_zero() {
                    return Err(Error::NotInvertible(format!("1 − q^{k} vanishes")));
                }
                s / (int(k as i64) * d)
            }
            MiwaWeights::Mode(m) if *m == k => s,
            MiwaWeights::Mode(_) => Rational::zero(),
        })
    }

    /// `T_k` as a series, or `None` once `k` is past every possible
    /// contribution (`x^k` truncated, or beyond a single mode).
    pub fn time(&self, ctx: &Arc<SeriesContext>, k: u32) -> Result<Option<TruncSeries>> {
        if let MiwaWeights::Mode(m) = self.weights {
            if k > m {
                return Ok(None);
            }
        }
        let w = self.weight(k)?;
        let x = match &self.arg {
            MiwaArg::Var(v) => {
                let power = if matches!(self.weights, MiwaWeights::Mode(_)) { 1 } else { k as i32 };
                if power > ctx.cap(v)? {
                    return Ok(None);
                }
                match self.weights {
                    MiwaWeights::Mode(_) => TruncSeries::var(ctx, v)?,
                    _ => TruncSeries::var_pow(ctx, v, k as i32)?,
                }
            }
            MiwaArg::Value(a) => match self.weights {
                MiwaWeights::Mode(_) => TruncSeries::constant(ctx, a.clone()),
                _ => TruncSeries::constant(ctx, rpow(a, k as i64)),
            },
        };
        Ok(Some(x.scale_by(&w)))
    }
}

/// `Σ` of the couplings as a time sequence `T_1..T_K`; `k_max` bounds
/// couplings evaluated at numbers, formal ones stop at their caps.
pub fn times(ctx: &Arc<SeriesContext>, couplings: &[MiwaCoupling], k_max: u32) -> Result<Vec<TruncSeries>> {
    let mut out: Vec<TruncSeries> = Vec::new();
    for c in couplings {
        for k in 1.. {
            if matches!(c.arg, MiwaArg::Value(_)) && k > k_max {
                break;
            }
            let Some(t) = c.time(ctx, k)? else { break };
            while out.len() < k as usize {
                out.push(TruncSeries::zero(ctx));
            }
            out[k as usize - 1] = out[k as usize - 1].try_add(&t)?;
        }
    }
    Ok(out)
}

/// `τ(T, T̄, p)` with `T = Σ plus` and `T̄ = Σ minus`.
pub fn tau_eval(
    g: &GLElement,
    p: i32,
    plus: &[MiwaCoupling],
    minus: &[MiwaCoupling],
    ctx: &Arc<SeriesContext>,
    energy_cap: Option<u32>,
) -> Result<Contraction<TruncSeries>> {
    let window = match g.window(ctx, p)? {
        Some(e) if e < 0 => return Ok(Contraction { value: TruncSeries::zero(ctx), exact: true }),
        Some(e) => Some(energy_cap.map_or(e as u32, |c| c.min(e as u32))),
        None => energy_cap,
    };
    // numeric couplings: higher modes leave the window for good
    let k_max = window.unwrap_or_else(|| ctx.caps().iter().map(|&c| c.max(0) as u32).sum());
    let proto = TruncSeries::zero(ctx);
    let mut bra = FockVector::vacuum(Side::Bra, p, &proto);
    let t = times(ctx, plus, k_max.max(1))?;
    let modes: Vec<(i32, TruncSeries)> = t.into_iter().enumerate().map(|(i, c)| (i as i32 + 1, c)).collect();
    if !modes.is_empty() {
        bra = apply_factor(&Factor::CurrentExp(modes), &bra, &g.zeta, window)?;
    }
    let mut ket = FockVector::vacuum(Side::Ket, p, &proto);
    let tb = times(ctx, minus, k_max.max(1))?;
    let modes: Vec<(i32, TruncSeries)> = tb.into_iter().enumerate().map(|(i, c)| (-(i as i32 + 1), c.neg_ref())).collect();
    if !modes.is_empty() {
        ket = apply_factor(&Factor::CurrentExp(modes), &ket, &g.zeta, window)?;
    }
    eval_word(g, &bra, &ket, energy_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn ctx3() -> Arc<SeriesContext> {
        SeriesContext::new(&["x", "y", "Q"], &[3, 3, 3]).unwrap()
    }

    #[test]
    fn empty_word_gives_one() {
        let ctx = ctx3();
        let g = GLElement::identity(rat(1, 2));
        let t = tau_eval(&g, 0, &[], &[], &ctx, None).unwrap();
        assert_eq!(t.value, TruncSeries::one(&ctx));
        assert!(t.exact);
    }

    #[test]
    fn single_box_coefficient() {
        let ctx = ctx3();
        let (q1, q2) = (rat(1, 4), rat(1, 9));
        let g = GLElement::identity(rat(1, 2)).then(Factor::QL0("Q".into()));
        let plus = [MiwaCoupling::q("x", q1.clone(), 1)];
        let minus = [MiwaCoupling::q("y", q2.clone(), -1)];
        let t = tau_eval(&g, 0, &plus, &minus, &ctx, None).unwrap();
        assert!(t.exact);
        let expect = Rational::one() / ((Rational::one() - q1) * (Rational::one() - q2));
        assert_eq!(t.value.coeff(&[1, 1, 1]), expect);
        assert_eq!(t.value.coeff(&[0, 0, 0]), Rational::one());
        assert_eq!(t.value.coeff(&[1, 0, 1]), Rational::zero());
    }

    #[test]
    fn q_shift_of_weights() {
        let q = rat(1, 4);
        let ctx = SeriesContext::new(&["x"], &[6]).unwrap();
        let xq = times(&ctx, &[MiwaCoupling::q("x", q.clone(), 1)], 6).unwrap();
        let x = times(&ctx, &[MiwaCoupling::full("x", 1)], 6).unwrap();
        for k in 0..6 {
            let shifted = xq[k].scale_var("x", &q).unwrap();
            assert_eq!(shifted, xq[k].try_sub(&x[k]).unwrap());
        }
    }

    #[test]
    fn numeric_point_needs_a_window() {
        let ctx = SeriesContext::new(&["Q"], &[3]).unwrap();
        let g = GLElement::identity(rat(1, 2));
        let plus = [MiwaCoupling::q_at(rat(1, 2), rat(1, 4), 1)];
        let minus = [MiwaCoupling::q_at(rat(1, 2), rat(1, 4), -1)];
        assert!(tau_eval(&g, 0, &plus, &minus, &ctx, None).is_err());
        let g = g.then(Factor::QL0("Q".into()));
        let t = tau_eval(&g, 0, &plus, &minus, &ctx, None).unwrap();
        assert!(t.exact);
        // Q-coefficient is s_(1)(q^ρ)² = (ζ/(1−ζ²))²
        assert_eq!(t.value.coeff(&[1]), rat(4, 9));
    }

    #[test]
    fn mode_coupling_is_linear_in_its_variable() {
        // a mode above the variable's cap still contributes at first order
        let ctx = SeriesContext::new(&["a"], &[1]).unwrap();
        let c = MiwaCoupling::mode("a", 3, -1);
        let t = c.time(&ctx, 3).unwrap().unwrap();
        assert_eq!(t.coeff(&[1]), rat(-1, 1));
        assert!(c.time(&ctx, 4).unwrap().is_none());
        assert_eq!(c.time(&ctx, 2).unwrap().unwrap(), TruncSeries::zero(&ctx));
    }
}
