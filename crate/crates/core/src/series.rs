//! Exact rationals and truncated multivariate formal series.
//!
//! Every other module computes in one of two coefficient rings: plain
//! [`Rational`] numbers (when all q-parameters are fixed rationals) or
//! [`TruncSeries`], the quotient of `Q[x_1, .., x_n]` (optionally Laurent in
//! some variables) by all monomials that exceed a per-variable cap. Both
//! implement [`Ring`], which is what the Fock-space code is generic over.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

/// Exponent tuple of a monomial, one entry per context variable.
pub type Exponents = Vec<i32>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^e` for any integer `e`; negative powers require `base != 0`.
pub fn rpow(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        assert!(!base.is_zero(), "negative power of zero");
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Canonical `"num/den"` rendering used by every serialized artifact.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Minimal ring interface shared by [`Rational`] and [`TruncSeries`].
///
/// Constructors are `*_like` because a series zero needs a context; the
/// receiver supplies it.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational_like(&self, r: &Rational) -> Self;
    fn is_nil(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn try_recip(&self) -> Result<Self>;
    /// Some power vanishes in the ring.
    fn is_nilpotent(&self) -> bool;

    fn pow_ref(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }
    fn one_like(&self) -> Self {
        self.from_rational_like(&Rational::one())
    }
    fn neg_ref(&self) -> Self {
        self.scale(&-Rational::one())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add_ref(other);
    }
    /// Human-readable rendering used in residual tables.
    fn render(&self) -> String;
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        r.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn is_nilpotent(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_recip(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::NotInvertible("0".into()));
        }
        Ok(self.recip())
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn render(&self) -> String {
        format_rational(self)
    }
}

/// Variables, caps and (optional) Laurent floors of a truncated ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesContext {
    vars: Vec<String>,
    caps: Vec<i32>,
    mins: Vec<i32>,
}

impl SeriesContext {
    pub fn new<S: AsRef<str>>(vars: &[S], caps: &[i32]) -> Result<Arc<Self>> {
        Self::with_mins(vars, caps, &vec![0; caps.len()])
    }

    /// Context whose variable `i` ranges over exponents `mins[i]..=caps[i]`.
    pub fn with_mins<S: AsRef<str>>(vars: &[S], caps: &[i32], mins: &[i32]) -> Result<Arc<Self>> {
        if vars.len() != caps.len() || vars.len() != mins.len() {
            return Err(Error::Context("vars, caps and mins must have equal length".into()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::Context("empty variable name".into()));
            }
            if vars[..i].contains(v) {
                return Err(Error::Context(format!("duplicate variable {v:?}")));
            }
            if caps[i] < mins[i] {
                return Err(Error::Context(format!("cap below floor for {v:?}")));
            }
            if mins[i] > 0 {
                return Err(Error::Context(format!("positive floor for {v:?}")));
            }
        }
        Ok(Arc::new(SeriesContext { vars, caps: caps.to_vec(), mins: mins.to_vec() }))
    }

    /// The ring of plain rationals, seen as series in zero variables.
    pub fn scalar() -> Arc<Self> {
        Arc::new(SeriesContext { vars: vec![], caps: vec![], mins: vec![] })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn caps(&self) -> &[i32] {
        &self.caps
    }
    pub fn mins(&self) -> &[i32] {
        &self.mins
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn cap(&self, var: &str) -> Result<i32> {
        Ok(self.caps[self.var_index(var)?])
    }

    pub fn var_index(&self, var: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    fn is_laurent(&self) -> bool {
        self.mins.iter().any(|&m| m < 0)
    }

    /// `Ok(true)` inside the box, `Ok(false)` above some cap (truncated away),
    /// `Err` below a floor.
    fn admits(&self, e: &[i32]) -> Result<bool> {
        let mut inside = true;
        for (i, &x) in e.iter().enumerate() {
            if x < self.mins[i] {
                return Err(Error::ExponentUnderflow { var: self.vars[i].clone(), exponent: x });
            }
            if x > self.caps[i] {
                inside = false;
            }
        }
        Ok(inside)
    }
}

/// Element of the truncated ring described by a [`SeriesContext`].
#[derive(Clone, PartialEq)]
pub struct TruncSeries {
    ctx: Arc<SeriesContext>,
    terms: BTreeMap<Exponents, Rational>,
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (v, &k) in self.ctx.vars.iter().zip(e) {
                match k {
                    0 => {}
                    1 => write!(f, "*{v}")?,
                    _ => write!(f, "*{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl TruncSeries {
    pub fn zero(ctx: &Arc<SeriesContext>) -> Self {
        TruncSeries { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<SeriesContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &Arc<SeriesContext>, c: Rational) -> Self {
        let mut s = Self::zero(ctx);
        if !c.is_zero() {
            s.terms.insert(vec![0; ctx.nvars()], c);
        }
        s
    }

    /// `c * prod var_i^e_i`; monomials above a cap truncate to zero.
    pub fn monomial(ctx: &Arc<SeriesContext>, e: &[i32], c: Rational) -> Result<Self> {
        if e.len() != ctx.nvars() {
            return Err(Error::Context("exponent tuple has wrong arity".into()));
        }
        let mut s = Self::zero(ctx);
        if ctx.admits(e)? && !c.is_zero() {
            s.terms.insert(e.to_vec(), c);
        }
        Ok(s)
    }

    /// The generator `var` itself.
    pub fn var(ctx: &Arc<SeriesContext>, var: &str) -> Result<Self> {
        Self::var_pow(ctx, var, 1)
    }

    pub fn var_pow(ctx: &Arc<SeriesContext>, var: &str, k: i32) -> Result<Self> {
        let i = ctx.var_index(var)?;
        let mut e = vec![0; ctx.nvars()];
        e[i] = k;
        Self::monomial(ctx, &e, Rational::one())
    }

    /// Builds a series from arbitrary terms, summing duplicates and dropping
    /// anything above the caps.
    pub fn from_terms<I>(ctx: &Arc<SeriesContext>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut s = Self::zero(ctx);
        for (e, c) in terms {
            if e.len() != ctx.nvars() {
                return Err(Error::Context("exponent tuple has wrong arity".into()));
            }
            if ctx.admits(&e)? {
                s.accumulate(e, &c);
            }
        }
        Ok(s)
    }

    pub fn context(&self) -> &Arc<SeriesContext> {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[i32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.ctx.nvars()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(&mut self, e: Exponents, c: &Rational) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_context(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), &-c);
        }
        Ok(out)
    }

    /// Truncated product. In a Laurent context a product monomial below a
    /// floor is an error rather than silently dropped.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_context(other)?;
        let mut out = Self::zero(&self.ctx);
        let n = self.ctx.nvars();
        let caps = &self.ctx.caps;
        let mut e = vec![0i32; n];
        for (ea, ca) in &self.terms {
            'inner: for (eb, cb) in &other.terms {
                for i in 0..n {
                    e[i] = ea[i] + eb[i];
                    if e[i] > caps[i] {
                        continue 'inner;
                    }
                }
                if self.ctx.is_laurent() {
                    self.ctx.admits(&e)?;
                }
                out.accumulate(e.clone(), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale_by(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(&self.ctx);
        }
        TruncSeries {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    fn check_nilpotent(&self, what: &str) -> Result<()> {
        if self.terms.keys().any(|e| e.iter().any(|&x| x < 0)) {
            return Err(Error::NotNilpotent(format!("{what}: argument has negative exponents")));
        }
        Ok(())
    }

    /// `sum a^n / n!`; requires zero constant term, so the sum is finite.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NotNilpotent("exp: nonzero constant term".into()));
        }
        self.check_nilpotent("exp")?;
        let mut out = Self::one(&self.ctx);
        let mut term = Self::one(&self.ctx);
        let mut n = 1i64;
        loop {
            term = term.try_mul(self)?.scale_by(&int(n).recip());
            if term.is_zero() {
                break;
            }
            out = out.try_add(&term)?;
            n += 1;
        }
        Ok(out)
    }

    /// Multiplicative inverse in the truncated ring.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotInvertible("zero constant term".into()));
        }
        self.check_nilpotent("invert")?;
        let inv0 = c0.recip();
        // a = c0 (1 + r), a^{-1} = c0^{-1} sum (-r)^n
        let minus_r = self
            .try_sub(&Self::constant(&self.ctx, c0))?
            .scale_by(&-&inv0);
        let mut out = Self::one(&self.ctx);
        let mut term = Self::one(&self.ctx);
        loop {
            term = term.try_mul(&minus_r)?;
            if term.is_zero() {
                break;
            }
            out = out.try_add(&term)?;
        }
        Ok(out.scale_by(&inv0))
    }

    /// Substitutes `var -> c * var`.
    pub fn scale_var(&self, var: &str, c: &Rational) -> Result<Self> {
        let i = self.ctx.var_index(var)?;
        if c.is_zero() && self.terms.keys().any(|e| e[i] < 0) {
            return Err(Error::NotInvertible("zero scaling of a negative power".into()));
        }
        let mut out = Self::zero(&self.ctx);
        for (e, coef) in &self.terms {
            out.accumulate(e.clone(), &(coef * rpow(c, e[i] as i64)));
        }
        Ok(out)
    }

    /// Formal partial derivative. The result lives in the same context, so
    /// its coefficient at `var^cap` is unknown (it would need `var^(cap+1)`);
    /// callers compare after [`TruncSeries::truncate_to`] a smaller cap.
    pub fn derivative(&self, var: &str) -> Result<Self> {
        let i = self.ctx.var_index(var)?;
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                let mut f = e.clone();
                f[i] -= 1;
                if self.ctx.admits(&f)? {
                    out.accumulate(f, &(c * int(e[i] as i64)));
                }
            }
        }
        Ok(out)
    }

    /// Re-expresses the series in a context with the same variables and
    /// floors but possibly smaller caps.
    pub fn truncate_to(&self, ctx: &Arc<SeriesContext>) -> Result<Self> {
        if ctx.vars != self.ctx.vars || ctx.mins != self.ctx.mins {
            return Err(Error::ContextMismatch);
        }
        let mut out = Self::zero(ctx);
        for (e, c) in &self.terms {
            if ctx.admits(e)? {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Canonical JSON value: terms sorted lexicographically by exponent.
    pub fn to_json_value(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(e, c)| json!([e, format_rational(c)]))
            .collect();
        let mut obj = serde_json::Map::new();
        obj.insert("vars".into(), json!(self.ctx.vars));
        obj.insert("caps".into(), json!(self.ctx.caps));
        if self.ctx.is_laurent() {
            obj.insert("mins".into(), json!(self.ctx.mins));
        }
        obj.insert("terms".into(), Value::Array(terms));
        Value::Object(obj)
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("series json")
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("series json: {m}"));
        let vars: Vec<String> = serde_json::from_value(v["vars"].clone()).map_err(|_| bad("vars"))?;
        let caps: Vec<i32> = serde_json::from_value(v["caps"].clone()).map_err(|_| bad("caps"))?;
        let mins: Vec<i32> = match v.get("mins") {
            Some(m) => serde_json::from_value(m.clone()).map_err(|_| bad("mins"))?,
            None => vec![0; caps.len()],
        };
        let ctx = SeriesContext::with_mins(&vars, &caps, &mins)?;
        let arr = v["terms"].as_array().ok_or_else(|| bad("terms"))?;
        let mut s = Self::zero(&ctx);
        for t in arr {
            let e: Exponents = serde_json::from_value(t[0].clone()).map_err(|_| bad("exponent"))?;
            let c = parse_rational(t[1].as_str().ok_or_else(|| bad("coefficient"))?)?;
            if e.len() != ctx.nvars() || !ctx.admits(&e)? {
                return Err(bad("term outside the exponent box"));
            }
            s.accumulate(e, &c);
        }
        Ok(s)
    }

    pub fn from_canonical_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json_value(&v)
    }

    /// Single-variable view: the coefficient list of `var^0..=var^cap`, for
    /// a context with exactly one variable.
    pub fn univariate_coeffs(&self) -> Result<Vec<Rational>> {
        if self.ctx.nvars() != 1 || self.ctx.mins[0] != 0 {
            return Err(Error::Context("not a univariate power series".into()));
        }
        Ok((0..=self.ctx.caps[0]).map(|k| self.coeff(&[k])).collect())
    }
}

/// Panicking operator sugar; use the `try_*` methods where contexts may differ.
impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_add(rhs).expect("series addition")
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_sub(rhs).expect("series subtraction")
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.try_mul(rhs).expect("series multiplication")
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.scale_by(&-Rational::one())
    }
}

impl Ring for TruncSeries {
    fn zero_like(&self) -> Self {
        TruncSeries::zero(&self.ctx)
    }
    fn from_rational_like(&self, r: &Rational) -> Self {
        TruncSeries::constant(&self.ctx, r.clone())
    }
    fn is_nil(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, r: &Rational) -> Self {
        self.scale_by(r)
    }
    fn try_recip(&self) -> Result<Self> {
        self.invert()
    }
    fn is_nilpotent(&self) -> bool {
        Zero::is_zero(&self.constant_term()) && self.check_nilpotent("power").is_ok()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        self.same_context(other).expect("series addition");
        for (e, c) in &other.terms {
            self.accumulate(e.clone(), c);
        }
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Small integer view of a rational known to be integral.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_ctx(cap: i32) -> Arc<SeriesContext> {
        SeriesContext::new(&["Q"], &[cap]).unwrap()
    }

    #[test]
    fn add_cancels_and_respects_box() {
        let c = q_ctx(3);
        let q = TruncSeries::var(&c, "Q").unwrap();
        let one = TruncSeries::one(&c);
        assert_eq!(&(&one + &q) + &(&one - &q), TruncSeries::constant(&c, int(2)));
        assert_eq!(&q + &TruncSeries::zero(&c), q);
        let top = TruncSeries::var_pow(&c, "Q", 3).unwrap();
        let sum = &top + &top;
        assert_eq!(sum.coeff(&[3]), int(2));
    }

    #[test]
    fn context_mismatch_is_rejected() {
        let a = TruncSeries::one(&q_ctx(2));
        let b = TruncSeries::one(&q_ctx(3));
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch)));
        assert!(matches!(a.try_mul(&b), Err(Error::ContextMismatch)));
    }

    #[test]
    fn multiplication_truncates() {
        let c = q_ctx(1);
        let f = &TruncSeries::one(&c) + &TruncSeries::var(&c, "Q").unwrap();
        let sq = &f * &f;
        assert_eq!(sq.coeff(&[0]), int(1));
        assert_eq!(sq.coeff(&[1]), int(2));
        assert_eq!(sq.num_terms(), 2);

        let c = q_ctx(5);
        let q = TruncSeries::var(&c, "Q").unwrap();
        let geo = TruncSeries::from_terms(&c, (0..=5).map(|k| (vec![k], int(1)))).unwrap();
        assert_eq!(&(&TruncSeries::one(&c) - &q) * &geo, TruncSeries::one(&c));

        let c2 = SeriesContext::new(&["x", "y"], &[2, 2]).unwrap();
        let xy = &TruncSeries::var(&c2, "x").unwrap() * &TruncSeries::var(&c2, "y").unwrap();
        assert_eq!(xy.coeff(&[1, 1]), int(1));
        assert_eq!(xy.num_terms(), 1);
    }

    #[test]
    fn exp_examples() {
        let c = SeriesContext::new(&["t1"], &[3]).unwrap();
        let e = TruncSeries::var(&c, "t1").unwrap().exp().unwrap();
        assert_eq!(e.univariate_coeffs().unwrap(), vec![int(1), int(1), rat(1, 2), rat(1, 6)]);
        assert_eq!(TruncSeries::zero(&c).exp().unwrap(), TruncSeries::one(&c));
        assert!(TruncSeries::one(&c).exp().is_err());

        // exp(Q + t1) with caps 1, 1: 1 + Q + t1 + Q t1
        let c = SeriesContext::new(&["Q", "t1"], &[1, 1]).unwrap();
        let a = &TruncSeries::var(&c, "Q").unwrap() + &TruncSeries::var(&c, "t1").unwrap();
        let e = a.exp().unwrap();
        for m in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            assert_eq!(e.coeff(&m), int(1));
        }
        assert_eq!(e.num_terms(), 4);
    }

    #[test]
    fn invert_examples() {
        let c = q_ctx(4);
        let q = TruncSeries::var(&c, "Q").unwrap();
        let inv = (&TruncSeries::one(&c) - &q).invert().unwrap();
        assert_eq!(inv.univariate_coeffs().unwrap(), vec![int(1); 5]);
        assert_eq!(TruncSeries::constant(&c, int(2)).invert().unwrap(), TruncSeries::constant(&c, rat(1, 2)));
        assert!(matches!(q.invert(), Err(Error::NotInvertible(_))));

        let c = q_ctx(3);
        let q = TruncSeries::var(&c, "Q").unwrap();
        let one = TruncSeries::one(&c);
        let q2 = &q * &q;
        let prod = &(&one - &q) * &(&one - &q2);
        let inv = prod.invert().unwrap();
        assert_eq!(inv.univariate_coeffs().unwrap(), vec![int(1), int(1), int(2), int(2)]);
    }

    #[test]
    fn scale_var_examples() {
        let c = SeriesContext::new(&["x", "y"], &[3, 3]).unwrap();
        let x = TruncSeries::var(&c, "x").unwrap();
        let y = TruncSeries::var(&c, "y").unwrap();
        let f = &TruncSeries::one(&c) + &x;
        let g = f.scale_var("x", &rat(1, 4)).unwrap();
        assert_eq!(g.coeff(&[1, 0]), rat(1, 4));
        assert_eq!(f.scale_var("x", &int(1)).unwrap(), f);
        let h = &(&x * &y) + &(&(&x * &x) * &y);
        let s = h.scale_var("x", &rat(1, 2)).unwrap();
        assert_eq!(s.coeff(&[1, 1]), rat(1, 2));
        assert_eq!(s.coeff(&[2, 1]), rat(1, 4));
        assert!(matches!(h.scale_var("z", &int(2)), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn laurent_floor() {
        let c = SeriesContext::with_mins(&["q"], &[4], &[-2]).unwrap();
        let inv = TruncSeries::var_pow(&c, "q", -1).unwrap();
        let q3 = TruncSeries::var_pow(&c, "q", 3).unwrap();
        assert_eq!((&inv * &q3).coeff(&[2]), int(1));
        assert!(matches!(inv.pow(3), Err(Error::ExponentUnderflow { .. })));
        assert!(inv.exp().is_err());
        let s = inv.scale_var("q", &rat(1, 2)).unwrap();
        assert_eq!(s.coeff(&[-1]), int(2));
    }

    #[test]
    fn derivative_and_restriction() {
        let c = SeriesContext::new(&["x"], &[3]).unwrap();
        let f = TruncSeries::from_terms(&c, (0..=3).map(|k| (vec![k], int(1)))).unwrap();
        let d = f.derivative("x").unwrap();
        assert_eq!(d.univariate_coeffs().unwrap(), vec![int(1), int(2), int(3), int(0)]);
        let small = SeriesContext::new(&["x"], &[1]).unwrap();
        assert_eq!(f.truncate_to(&small).unwrap().num_terms(), 2);
    }

    #[test]
    fn json_is_canonical() {
        let c = SeriesContext::new(&["x", "y"], &[2, 2]).unwrap();
        let s = TruncSeries::from_terms(
            &c,
            vec![(vec![1, 0], rat(-1, 3)), (vec![0, 2], int(2)), (vec![0, 0], int(1))],
        )
        .unwrap();
        let text = s.to_canonical_json();
        assert_eq!(
            text,
            r#"{"vars":["x","y"],"caps":[2,2],"terms":[[[0,0],"1/1"],[[0,2],"2/1"],[[1,0],"-1/3"]]}"#
        );
        let back = TruncSeries::from_canonical_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_canonical_json(), text);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(format_rational(&int(2)), "2/1");
        assert_eq!(rpow(&rat(1, 2), -3), int(8));
    }

    #[test]
    fn context_validation() {
        assert!(SeriesContext::new(&["x", "x"], &[1, 1]).is_err());
        assert!(SeriesContext::with_mins(&["x"], &[1], &[2]).is_err());
        assert!(SeriesContext::new(&["x"], &[1, 2]).is_err());
    }
}
