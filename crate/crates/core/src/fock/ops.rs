//! Operator actions: single fermions, bilinears, current exponentials,
//! vertex and transfer operators, and diagonal insertions.
//!
//! Bras are acted on through the transpose in the orthonormal basis:
//! `⟨v|X = (Xᵀ|v⟩)ᵀ` with `ψ_nᵀ = ψ*_{−n}`, so `J_mᵀ = J_{−m}`,
//! `V^{(k)}_mᵀ = V^{(k)}_{−m}`, `V_±(z)ᵀ = V_∓(z)`, `G_±ᵀ = G_∓`, and every
//! diagonal operator is its own transpose.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::basis::{diagonal_eigenvalue, hops, BasisState};
use crate::fock::vector::{FockVector, Side};
use crate::partitions::{interlaced_above, interlaced_below};
use crate::series::{int, rpow, Rational, Ring, TruncSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FermionKind {
    /// `ψ_n`
    Psi,
    /// `ψ*_n`
    PsiStar,
}

/// Applies `ψ_n` or `ψ*_n`.
pub fn apply_fermion<R: Ring>(v: &FockVector<R>, kind: FermionKind, n: i32) -> FockVector<R> {
    // (create?, level) in ket form
    let (create, level) = match (v.side(), kind) {
        (Side::Ket, FermionKind::Psi) => (true, -n),
        (Side::Ket, FermionKind::PsiStar) => (false, n),
        (Side::Bra, FermionKind::Psi) => (false, -n),
        (Side::Bra, FermionKind::PsiStar) => (true, n),
    };
    let mut out = FockVector::zero(v.side(), v.proto());
    for (s, c) in v.terms() {
        let maya = s.maya(level - 1);
        let hit = if create { maya.create(level) } else { maya.annihilate(level) };
        if let Some((sign, m)) = hit {
            out.add_term(m.to_state(), &c.scale(&int(sign as i64)));
        }
    }
    if v.overflow_from().is_some() {
        out.taint_from(0);
    }
    out
}

/// Level coefficients `n ↦ c(n)` of a custom diagonal bilinear.
#[derive(Clone)]
pub struct DiagCoeffs {
    pub name: String,
    pub f: Arc<dyn Fn(i32) -> Rational + Send + Sync>,
}

impl DiagCoeffs {
    pub fn new(name: impl Into<String>, f: impl Fn(i32) -> Rational + Send + Sync + 'static) -> Self {
        DiagCoeffs { name: name.into(), f: Arc::new(f) }
    }
}

impl fmt::Debug for DiagCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diag({})", self.name)
    }
}

/// Fermion bilinears. `H` and `V` use `q = ζ²` supplied at application time.
#[derive(Debug, Clone)]
pub enum Bilinear {
    /// `J_m = Σ_n :ψ_{m−n}ψ*_n:`
    J(i32),
    /// `Σ_n n :ψ_{−n}ψ*_n:`
    L0,
    /// `Σ_n n² :ψ_{−n}ψ*_n:`
    W0,
    /// `Σ_n q^{kn} :ψ_{−n}ψ*_n:`
    H(i32),
    /// `q^{−km/2} Σ_n q^{kn} :ψ_{m−n}ψ*_n:`
    V { k: i32, m: i32 },
    /// `Σ_n c_n :ψ_{−n}ψ*_n:`
    Diag(DiagCoeffs),
}

impl fmt::Display for Bilinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bilinear::J(m) => write!(f, "J({m})"),
            Bilinear::L0 => write!(f, "L0"),
            Bilinear::W0 => write!(f, "W0"),
            Bilinear::H(k) => write!(f, "H({k})"),
            Bilinear::V { k, m } => write!(f, "V({k},{m})"),
            Bilinear::Diag(d) => write!(f, "{}", d.name),
        }
    }
}

type LevelFn = Box<dyn Fn(i32) -> Rational>;

/// `Σ_n c(n) a†_{n−m} a_n` in ket form; `m = 0` is normal ordered.
struct Hop {
    m: i32,
    c: LevelFn,
}

impl Hop {
    fn transposed(self) -> Hop {
        let Hop { m, c } = self;
        Hop { m: -m, c: Box::new(move |n| c(n + m)) }
    }
}

impl Bilinear {
    pub fn is_diagonal(&self) -> bool {
        match self {
            Bilinear::J(m) | Bilinear::V { m, .. } => *m == 0,
            _ => true,
        }
    }

    fn resolve(&self, zeta: &Rational) -> Hop {
        let z = zeta.clone();
        match self {
            Bilinear::J(m) => Hop { m: *m, c: Box::new(|_| Rational::one()) },
            Bilinear::L0 => Hop { m: 0, c: Box::new(|n| int(n as i64)) },
            Bilinear::W0 => Hop { m: 0, c: Box::new(|n| int(n as i64 * n as i64)) },
            Bilinear::H(k) => {
                let k = *k as i64;
                Hop { m: 0, c: Box::new(move |n| rpow(&z, 2 * k * n as i64)) }
            }
            Bilinear::V { k, m } => {
                let (k, mm) = (*k as i64, *m as i64);
                let pre = rpow(&z, -k * mm);
                Hop { m: *m, c: Box::new(move |n| &pre * rpow(&z, 2 * k * n as i64)) }
            }
            Bilinear::Diag(d) => {
                let f = d.f.clone();
                Hop { m: 0, c: Box::new(move |n| f(n)) }
            }
        }
    }

    /// Eigenvalue on `|λ,p⟩` of a diagonal bilinear, from the Maya levels.
    pub fn eigenvalue(&self, state: &BasisState, zeta: &Rational) -> Result<Rational> {
        if !self.is_diagonal() {
            return Err(Error::Unsupported(format!("{self} is not diagonal")));
        }
        let h = self.resolve(zeta);
        Ok(diagonal_eigenvalue(state, |n| (h.c)(n)))
    }

    /// Energy change of the ket action.
    pub fn energy_shift(&self) -> i32 {
        match self {
            Bilinear::J(m) | Bilinear::V { m, .. } => -m,
            _ => 0,
        }
    }
}

fn shift_overflow(m: Option<u32>, delta: i32) -> Option<u32> {
    m.map(|e| (e as i64 + delta as i64).max(0) as u32)
}

fn apply_hop<R: Ring>(v: &FockVector<R>, hop: &Hop, scalar: Option<&R>, cap: Option<u32>) -> FockVector<R> {
    let mut out = FockVector::zero(v.side(), v.proto());
    for (s, c) in v.terms() {
        let c = match scalar {
            Some(x) => c.mul_ref(x),
            None => c.clone(),
        };
        if hop.m == 0 {
            let e: Rational = diagonal_eigenvalue(s, |n| (hop.c)(n));
            out.add_term(s.clone(), &c.scale(&e));
            continue;
        }
        if cap.is_some_and(|cap| s.energy() as i64 - hop.m as i64 > cap as i64) {
            continue;
        }
        for (n, t, sign) in hops(s, hop.m) {
            let mut w = (hop.c)(n);
            if sign < 0 {
                w = -w;
            }
            out.add_term(t, &c.scale(&w));
        }
    }
    out.set_overflow(shift_overflow(v.overflow_from(), -hop.m));
    if let Some(cap) = cap {
        if hop.m < 0 {
            let would_exceed = v.terms().any(|(s, _)| s.energy() as i64 - hop.m as i64 > cap as i64);
            if would_exceed {
                out.taint_from(cap + 1);
            }
        }
    }
    out
}

fn ket_form(op: &Bilinear, side: Side, zeta: &Rational) -> Hop {
    let h = op.resolve(zeta);
    match side {
        Side::Ket => h,
        Side::Bra => h.transposed(),
    }
}

/// Applies a bilinear, dropping (and flagging) components above `cap`.
pub fn apply_bilinear<R: Ring>(v: &FockVector<R>, op: &Bilinear, zeta: &Rational, cap: Option<u32>) -> FockVector<R> {
    apply_hop(v, &ket_form(op, v.side(), zeta), None, cap)
}

/// `exp(Σ_j c_j J_{m_j})` with all `m_j` of one sign.
///
/// Energy-raising exponentials need a `cap` unless every coefficient is
/// nilpotent; energy-lowering ones always terminate.
pub fn apply_current_exp<R: Ring>(v: &FockVector<R>, modes: &[(i32, R)], cap: Option<u32>) -> Result<FockVector<R>> {
    let modes: Vec<(i32, R)> = modes
        .iter()
        .filter(|(_, c)| !c.is_nil())
        .map(|(m, c)| (if v.side() == Side::Bra { -m } else { *m }, c.clone()))
        .collect();
    if modes.is_empty() {
        return Ok(v.clone());
    }
    if modes.iter().any(|(m, _)| *m == 0) {
        return Err(Error::Unsupported("J_0 in a current exponential".into()));
    }
    let raising = modes[0].0 < 0;
    if modes.iter().any(|(m, _)| (*m < 0) != raising) {
        return Err(Error::Unsupported("mixed raising and lowering modes".into()));
    }
    if raising && cap.is_none() && !modes.iter().all(|(_, c)| c.is_nilpotent()) {
        return Err(Error::CapTooSmall("raising exponential with numeric couplings needs an energy cap".into()));
    }
    // With X(t) = Σ c_j t^{d_j} J_{m_j}, d_j = |m_j|, the pieces u_n of
    // e^{X(t)}v at t^n obey n u_n = Σ_j d_j c_j J_{m_j} u_{n−d_j}.
    let d_max = modes.iter().map(|(m, _)| m.unsigned_abs() as usize).max().unwrap_or(1);
    let hops: Vec<(Hop, usize, R)> = modes
        .into_iter()
        .map(|(m, c)| {
            let d = m.unsigned_abs() as usize;
            (Hop { m, c: Box::new(|_| Rational::one()) }, d, c.scale(&int(d as i64)))
        })
        .collect();
    let mut pieces = vec![v.clone()];
    let mut sum = v.clone();
    let mut zeros = 0;
    let mut n = 0usize;
    while zeros < d_max {
        n += 1;
        let mut next = FockVector::zero(v.side(), v.proto());
        for (h, d, c) in &hops {
            if *d <= n && !pieces[n - d].is_zero() {
                next = next.try_add(&apply_hop(&pieces[n - d], h, Some(c), cap))?;
            }
        }
        next = next.scale_rational(&int(n as i64).recip());
        if let Some(cap) = cap {
            next.truncate(cap);
        }
        if let Some(m) = next.overflow_from() {
            sum.taint_from(m);
        }
        zeros = if next.is_zero() { zeros + 1 } else { 0 };
        sum = sum.try_add(&next)?;
        pieces.push(next);
    }
    let mut over = sum.overflow_from();
    if !raising && v.overflow_from().is_some() {
        over = Some(0);
    }
    if raising {
        over = match (v.overflow_from(), over) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }
    sum.set_overflow(over);
    Ok(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlusMinus {
    Plus,
    Minus,
}

impl PlusMinus {
    /// `+k` for `Plus`, `−k` for `Minus`: the current mode `J_{±k}`.
    pub fn mode(self, k: i32) -> i32 {
        match self {
            PlusMinus::Plus => k,
            PlusMinus::Minus => -k,
        }
    }

    fn raises_on(self, side: Side) -> bool {
        matches!((self, side), (PlusMinus::Minus, Side::Ket) | (PlusMinus::Plus, Side::Bra))
    }
}

/// Bound on the energy a raising operator may reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    /// At most this many boxes added to each state.
    Order(u32),
    /// No component above this energy.
    Energy(u32),
}

/// `V_±(z)` through the interlacing action.
pub fn apply_vertex<R: Ring>(v: &FockVector<R>, sign: PlusMinus, z: &R, limit: Limit) -> FockVector<R> {
    let mut out = FockVector::zero(v.side(), v.proto());
    let raising = sign.raises_on(v.side());
    let mut exceeded: Option<u32> = None;
    let mut powers: Vec<R> = vec![z.one_like()];
    let pow = |d: usize, powers: &mut Vec<R>| {
        while powers.len() <= d {
            let next = powers.last().unwrap().mul_ref(z);
            powers.push(next);
        }
        powers[d].clone()
    };
    for (s, c) in v.terms() {
        let e = s.energy();
        if raising {
            let room = match limit {
                Limit::Order(o) => o,
                Limit::Energy(cap) if e > cap => {
                    exceeded = Some(exceeded.map_or(cap + 1, |x| x.min(cap + 1)));
                    continue;
                }
                Limit::Energy(cap) => cap - e,
            };
            if !pow(room as usize + 1, &mut powers).is_nil() {
                let m = e + room + 1;
                exceeded = Some(exceeded.map_or(m, |x| x.min(m)));
            }
            for mu in interlaced_above(&s.shape, room) {
                let w = pow((mu.weight() - e) as usize, &mut powers);
                out.add_term(BasisState::new(mu, s.charge), &c.mul_ref(&w));
            }
        } else {
            for mu in interlaced_below(&s.shape) {
                let w = pow((e - mu.weight()) as usize, &mut powers);
                out.add_term(BasisState::new(mu, s.charge), &c.mul_ref(&w));
            }
        }
    }
    let mut over = v.overflow_from();
    if !raising && over.is_some() {
        over = Some(0);
    }
    out.set_overflow(over);
    if let Some(m) = exceeded {
        out.taint_from(m);
    }
    out
}

/// Highest mode worth including in an exponential acting on `v`.
fn mode_bound<R: Ring>(v: &FockVector<R>, raising: bool, cap: Option<u32>, coeff: impl Fn(u32) -> Result<R>) -> Result<u32> {
    if !raising {
        return Ok(v.max_energy().unwrap_or(0));
    }
    if let Some(cap) = cap {
        return Ok(cap);
    }
    // nilpotent couplings: stop at the first vanishing coefficient
    let mut k = 1;
    loop {
        let c = coeff(k)?;
        if !c.is_nilpotent() {
            return Err(Error::CapTooSmall("raising exponential with numeric couplings needs an energy cap".into()));
        }
        if c.is_nil() {
            return Ok(k - 1);
        }
        k += 1;
    }
}

/// `V_±(z) = exp(Σ_k z^k/k J_{±k})` through the current exponential.
pub fn apply_vertex_exp<R: Ring>(v: &FockVector<R>, sign: PlusMinus, z: &R, cap: Option<u32>) -> Result<FockVector<R>> {
    let coeff = |k: u32| Ok(z.pow_ref(k).scale(&int(k as i64).recip()));
    let kmax = mode_bound(v, sign.raises_on(v.side()), cap, coeff)?;
    let modes: Vec<(i32, R)> = (1..=kmax).map(|k| Ok((sign.mode(k as i32), coeff(k)?))).collect::<Result<_>>()?;
    apply_current_exp(v, &modes, cap)
}

/// `G_±(ζ) = exp(Σ_k ζ^k / (k(1 − ζ^{2k})) J_{±k})`.
pub fn apply_transfer<R: Ring>(v: &FockVector<R>, sign: PlusMinus, zeta: &R, cap: Option<u32>) -> Result<FockVector<R>> {
    let coeff = |k: u32| -> Result<R> {
        let denom = zeta.one_like().sub_ref(&zeta.pow_ref(2 * k)).try_recip()?;
        Ok(zeta.pow_ref(k).mul_ref(&denom).scale(&int(k as i64).recip()))
    };
    let kmax = mode_bound(v, sign.raises_on(v.side()), cap, coeff)?;
    let modes: Vec<(i32, R)> = (1..=kmax).map(|k| Ok((sign.mode(k as i32), coeff(k)?))).collect::<Result<_>>()?;
    apply_current_exp(v, &modes, cap)
}

/// `G_±` as the product `∏_{m≥0} V_±(ζ^{2m+1})`, for a nilpotent `ζ`.
pub fn apply_transfer_product(v: &FockVector<TruncSeries>, sign: PlusMinus, zeta: &TruncSeries, cap: Option<u32>) -> Result<FockVector<TruncSeries>> {
    if !zeta.is_nilpotent() {
        return Err(Error::Unsupported("the vertex product needs a formal ζ".into()));
    }
    let mut out = v.clone();
    let mut m = 0u32;
    loop {
        let z = zeta.pow_ref(2 * m + 1);
        if z.is_nil() {
            break;
        }
        out = apply_vertex_exp(&out, sign, &z, cap)?;
        m += 1;
    }
    Ok(out)
}

/// Multiplies `|λ,p⟩` by `base^{e(λ,p)}` for a diagonal bilinear with integer
/// eigenvalues, e.g. `q^{W0/2} = ζ^{W0}`.
pub fn apply_diag_power<R: Ring>(v: &FockVector<R>, base: &Rational, op: &Bilinear, zeta: &Rational) -> Result<FockVector<R>> {
    let mut out = FockVector::zero(v.side(), v.proto());
    for (s, c) in v.terms() {
        let e = op.eigenvalue(s, zeta)?;
        if !e.is_integer() {
            return Err(Error::Unsupported(format!("{op} has a non-integer eigenvalue")));
        }
        let e: i64 = e.to_integer().try_into().map_err(|_| Error::Unsupported("eigenvalue too large".into()))?;
        if base.is_zero() && e < 0 {
            return Err(Error::NotInvertible("0 to a negative power".into()));
        }
        out.add_term(s.clone(), &c.scale(&rpow(base, e)));
    }
    out.set_overflow(v.overflow_from());
    Ok(out)
}

/// `L0` charge offset `p(p+1)/2`.
pub fn charge_offset(p: i32) -> u32 {
    let p = p as i64;
    (p * (p + 1) / 2) as u32
}

/// `Q^{L0}` with `Q` a variable of the coefficient context. Components whose
/// `Q`-degree passes the cap vanish; if every possibly-missing component
/// would vanish too, the overflow flag is cleared.
pub fn apply_q_l0(v: &FockVector<TruncSeries>, var: &str) -> Result<FockVector<TruncSeries>> {
    let ctx = v.proto().context().clone();
    let qcap = ctx.cap(var)?;
    let mut out = FockVector::zero(v.side(), v.proto());
    for (s, c) in v.terms() {
        let d = (s.energy() + charge_offset(s.charge)) as i32;
        if d > qcap {
            continue;
        }
        out.add_term(s.clone(), &c.try_mul(&TruncSeries::var_pow(&ctx, var, d)?)?);
    }
    let charges = v.charges();
    let over = match v.overflow_from() {
        Some(m) if !charges.is_empty() && charges.iter().all(|&p| (m + charge_offset(p)) as i32 > qcap) => None,
        o => o,
    };
    out.set_overflow(over);
    Ok(out)
}

/// `exp(Σ_j s_j X_j)` for diagonal bilinears `X_j` and nilpotent series
/// couplings `s_j`, e.g. `e^{H(t)}` or `e^{β W0}`.
pub fn apply_diag_exp(v: &FockVector<TruncSeries>, couplings: &[(TruncSeries, Bilinear)], zeta: &Rational) -> Result<FockVector<TruncSeries>> {
    let mut out = FockVector::zero(v.side(), v.proto());
    for (s, c) in v.terms() {
        let mut arg = v.proto().zero_like();
        for (x, op) in couplings {
            arg = arg.try_add(&x.scale_by(&op.eigenvalue(s, zeta)?))?;
        }
        out.add_term(s.clone(), &c.try_mul(&arg.exp()?)?);
    }
    out.set_overflow(v.overflow_from());
    Ok(out)
}
