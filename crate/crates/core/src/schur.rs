//! Principal specializations `s_λ(q^ρ)` with `q^ρ = (q^{1/2}, q^{3/2}, …)`,
//! written in the root `ζ = q^{1/2}`, and the Cauchy product side.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::partitions::{hook_lengths, n_stat, Partition};
use crate::report::{ReportBuilder, VerificationReport};
use crate::series::{int, Rational, Ring, SeriesContext, TruncSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecMode {
    Numeric,
    Formal,
}

/// The root `ζ` of a principal specialization, either a rational number or a
/// context variable.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalSpec<R: Ring> {
    zeta: R,
    mode: SpecMode,
}

impl PrincipalSpec<Rational> {
    /// `ζ` must avoid `0` and `±1` so that every `1 − ζ^{2h}` is invertible.
    pub fn numeric(zeta: Rational) -> Result<Self> {
        if zeta.is_zero() || zeta.abs().is_one() {
            return Err(Error::InvalidParams(format!("ζ = {zeta} is not admissible")));
        }
        Ok(PrincipalSpec { zeta, mode: SpecMode::Numeric })
    }
}

impl PrincipalSpec<TruncSeries> {
    pub fn formal(ctx: &Arc<SeriesContext>, var: &str) -> Result<Self> {
        Ok(PrincipalSpec { zeta: TruncSeries::var(ctx, var)?, mode: SpecMode::Formal })
    }
}

impl<R: Ring> PrincipalSpec<R> {
    pub fn zeta(&self) -> &R {
        &self.zeta
    }

    pub fn mode(&self) -> SpecMode {
        self.mode
    }

    /// `ζ^e`, rejecting a formal result that vanishes only through truncation.
    fn zeta_pow(&self, e: u32) -> Result<R> {
        let v = self.zeta.pow_ref(e);
        if self.mode == SpecMode::Formal && v.is_nil() {
            return Err(Error::CapTooSmall(format!("ζ^{e} lies beyond the ζ cap")));
        }
        Ok(v)
    }

    /// `1 / (1 − ζ^{2n})`.
    fn geometric(&self, n: u32) -> Result<R> {
        let one = self.zeta.one_like();
        one.sub_ref(&self.zeta.pow_ref(2 * n)).try_recip()
    }

    /// `h_n(q^ρ) = ζ^n / ∏_{i=1}^{n} (1 − ζ^{2i})`, zero for negative `n`.
    pub fn complete(&self, n: i64) -> Result<R> {
        if n < 0 {
            return Ok(self.zeta.zero_like());
        }
        let mut acc = self.zeta.pow_ref(n as u32);
        for i in 1..=n as u32 {
            acc = acc.mul_ref(&self.geometric(i)?);
        }
        Ok(acc)
    }
}

/// Hook formula `ζ^{|λ| + 2n(λ)} ∏_{x∈λ} (1 − ζ^{2h(x)})^{−1}`.
pub fn schur_principal_hook<R: Ring>(lam: &Partition, spec: &PrincipalSpec<R>) -> Result<R> {
    let mut acc = spec.zeta_pow(lam.weight() + 2 * n_stat(lam))?;
    for h in hook_lengths(lam) {
        acc = acc.mul_ref(&spec.geometric(h)?);
    }
    Ok(acc)
}

/// Determinant by Laplace expansion over column subsets.
pub fn determinant<R: Ring>(m: &[Vec<R>], one: &R) -> R {
    let n = m.len();
    if n == 0 {
        return one.clone();
    }
    let mut dp: Vec<Option<R>> = vec![None; 1 << n];
    dp[0] = Some(one.clone());
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].clone() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            continue;
        }
        for c in 0..n {
            if mask & (1 << c) != 0 || m[row][c].is_nil() {
                continue;
            }
            // inversions added by placing column c after the columns in mask
            let above = (mask >> (c + 1)).count_ones();
            let mut term = cur.mul_ref(&m[row][c]);
            if above % 2 == 1 {
                term = term.neg_ref();
            }
            let slot = &mut dp[mask | (1 << c)];
            match slot {
                Some(v) => v.add_assign_ref(&term),
                None => *slot = Some(term),
            }
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| one.zero_like())
}

/// Jacobi–Trudi `det(h_{λ_i − i + j})`.
pub fn schur_principal_jt<R: Ring>(lam: &Partition, spec: &PrincipalSpec<R>) -> Result<R> {
    let n = lam.len();
    let mut m = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::with_capacity(n);
        for j in 1..=n {
            row.push(spec.complete(lam.part(i) as i64 - i as i64 + j as i64)?);
        }
        m.push(row);
    }
    let det = determinant(&m, &spec.zeta.one_like());
    if spec.mode == SpecMode::Formal {
        spec.zeta_pow(lam.weight() + 2 * n_stat(lam))?;
    }
    Ok(det)
}

/// Combinatorial definition: sum over semistandard tableaux with entries in
/// `1..=max_entry` of `ζ^{Σ (2T − 1)}`. Exact modulo `ζ^{2·max_entry + 1}`.
pub fn schur_principal_ssyt(lam: &Partition, ctx: &Arc<SeriesContext>, var: &str, max_entry: u32) -> Result<TruncSeries> {
    let cells: Vec<(usize, usize)> = lam.cells().collect();
    let mut grid = vec![vec![0u32; lam.part(1) as usize + 1]; lam.len() + 1];
    let mut exps: Vec<i32> = Vec::new();
    fn rec(k: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<u32>>, m: u32, acc: i32, exps: &mut Vec<i32>) {
        if k == cells.len() {
            exps.push(acc);
            return;
        }
        let (i, j) = cells[k];
        let left = if j > 1 { grid[i - 1][j - 2] } else { 1 };
        let above = if i > 1 { grid[i - 2][j - 1] + 1 } else { 1 };
        for t in left.max(above)..=m {
            grid[i - 1][j - 1] = t;
            rec(k + 1, cells, grid, m, acc + 2 * t as i32 - 1, exps);
        }
        grid[i - 1][j - 1] = 0;
    }
    rec(0, &cells, &mut grid, max_entry, 0, &mut exps);
    let idx = ctx.var_index(var)?;
    let mut out = TruncSeries::zero(ctx);
    for e in exps {
        let mut ev = vec![0; ctx.nvars()];
        ev[idx] = e;
        out = out.try_add(&TruncSeries::monomial(ctx, &ev, Rational::one())?)?;
    }
    Ok(out)
}

fn q_context(q_var: &str, q_cap: i32) -> Result<Arc<SeriesContext>> {
    SeriesContext::new(&[q_var], &[q_cap])
}

/// `∏_{m,n≥0} (1 − Q ζ1^{2m+1} ζ2^{2n+1})^{−1}` through `Q^{q_cap}`, computed
/// exactly as `exp Σ_k Q^k (ζ1ζ2)^k / (k (1 − ζ1^{2k})(1 − ζ2^{2k}))`.
pub fn cauchy_product_side(
    spec1: &PrincipalSpec<Rational>,
    spec2: &PrincipalSpec<Rational>,
    q_cap: i32,
) -> Result<TruncSeries> {
    let ctx = q_context("Q", q_cap)?;
    let mut log = TruncSeries::zero(&ctx);
    for k in 1..=q_cap.max(0) as u32 {
        let c = spec1.zeta.pow_ref(k) * spec2.zeta.pow_ref(k) * spec1.geometric(k)? * spec2.geometric(k)?
            / int(k as i64);
        log = log.try_add(&TruncSeries::monomial(&ctx, &[k as i32], c)?)?;
    }
    log.exp()
}

/// The diagonal case `ζ1 = ζ2 = ζ` with `ζ` formal, as a series in `(Q, ζ)`.
pub fn cauchy_product_side_formal(ctx: &Arc<SeriesContext>, q_var: &str, zeta_var: &str) -> Result<TruncSeries> {
    let spec = PrincipalSpec::formal(ctx, zeta_var)?;
    let q_cap = ctx.cap(q_var)?;
    let mut log = TruncSeries::zero(ctx);
    for k in 1..=q_cap.max(0) as u32 {
        let g = spec.geometric(k)?;
        let c = TruncSeries::var_pow(ctx, q_var, k as i32)?
            .try_mul(&spec.zeta.pow_ref(2 * k))?
            .try_mul(&g.try_mul(&g)?)?
            .scale_by(&int(k as i64).recip());
        log = log.try_add(&c)?;
    }
    log.exp()
}

/// MacMahon's `∏_{l≥1} (1 − q^l)^{−l}` in the single variable of `ctx`.
pub fn macmahon_product(ctx: &Arc<SeriesContext>, var: &str) -> Result<TruncSeries> {
    let cap = ctx.cap(var)?;
    let one = TruncSeries::one(ctx);
    let mut acc = one.clone();
    for l in 1..=cap.max(0) {
        let inv = one.try_sub(&TruncSeries::var_pow(ctx, var, l)?)?.invert()?;
        for _ in 0..l {
            acc = acc.try_mul(&inv)?;
        }
    }
    Ok(acc)
}

/// `Σ_{|λ| ≤ D} s_λ(q1^ρ) s_λ(q2^ρ) Q^{|λ|}` for numeric specializations.
pub fn cauchy_sum_side(
    spec1: &PrincipalSpec<Rational>,
    spec2: &PrincipalSpec<Rational>,
    q_cap: i32,
) -> Result<TruncSeries> {
    let ctx = q_context("Q", q_cap)?;
    let mut out = TruncSeries::zero(&ctx);
    for lam in crate::partitions::enumerate_partitions(q_cap.max(0) as u32) {
        let c = schur_principal_hook(&lam, spec1)? * schur_principal_hook(&lam, spec2)?;
        out = out.try_add(&TruncSeries::monomial(&ctx, &[lam.weight() as i32], c)?)?;
    }
    Ok(out)
}

/// Hook against Jacobi–Trudi for `|λ| ≤ max_weight`, numerically at `ζ` and
/// formally in `z`, and hook against the tableau sum for `|λ| ≤ ssyt_weight`
/// with entries `≤ m`, compared modulo `z^{2m+1}`.
pub fn check_schur_oracles(zeta: &Rational, max_weight: u32, ssyt_weight: u32, m: u32) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("Schur principal specialization routes")
        .param("zeta", crate::series::format_rational(zeta))
        .cap("weight", max_weight as i64)
        .cap("ssyt_weight", ssyt_weight as i64)
        .cap("max_entry", m as i64);
    let numeric = PrincipalSpec::numeric(zeta.clone())?;
    // leading power |λ| + 2n(λ) is largest for a single column
    let w = max_weight as i32;
    let zctx = SeriesContext::new(&["z"], &[w * w])?;
    let formal = PrincipalSpec::formal(&zctx, "z")?;
    for lam in crate::partitions::enumerate_partitions(max_weight) {
        let d = schur_principal_hook(&lam, &numeric)? - schur_principal_jt(&lam, &numeric)?;
        b.residual(format!("hook-jt {lam} numeric"), &d, false);
        let d = schur_principal_hook(&lam, &formal)?.try_sub(&schur_principal_jt(&lam, &formal)?)?;
        b.residual(format!("hook-jt {lam} formal"), &d, false);
    }
    let sctx = SeriesContext::new(&["z"], &[2 * m as i32])?;
    let formal = PrincipalSpec::formal(&sctx, "z")?;
    for lam in crate::partitions::enumerate_partitions(ssyt_weight) {
        let hook = match schur_principal_hook(&lam, &formal) {
            Ok(h) => h,
            Err(Error::CapTooSmall(_)) => TruncSeries::zero(&sctx),
            Err(e) => return Err(e),
        };
        let d = hook.try_sub(&schur_principal_ssyt(&lam, &sctx, "z", m)?)?;
        b.residual(format!("hook-ssyt {lam}"), &d, false);
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_partitions;
    use crate::series::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn q() -> PrincipalSpec<Rational> {
        PrincipalSpec::numeric(rat(1, 2)).unwrap()
    }

    #[test]
    fn hook_examples() {
        let z = rat(1, 2);
        let one = Rational::one();
        assert_eq!(schur_principal_hook(&p(&[]), &q()).unwrap(), one);
        assert_eq!(schur_principal_hook(&p(&[1]), &q()).unwrap(), &z / (&one - &z * &z));
        let z2 = &z * &z;
        let expect = z2.clone() * z2.clone() / ((&one - &z2) * (&one - &z2 * &z2));
        assert_eq!(schur_principal_hook(&p(&[1, 1]), &q()).unwrap(), expect);
    }

    #[test]
    fn jt_examples() {
        let q = rat(1, 4);
        let one = Rational::one();
        assert_eq!(schur_principal_jt(&p(&[2]), &self::q()).unwrap(), &q / ((&one - &q) * (&one - &q * &q)));
        assert_eq!(schur_principal_jt(&p(&[]), &self::q()).unwrap(), one);
        assert_eq!(
            schur_principal_jt(&p(&[2, 1]), &self::q()).unwrap(),
            schur_principal_hook(&p(&[2, 1]), &self::q()).unwrap()
        );
    }

    #[test]
    fn determinant_of_small_matrices() {
        let m = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        assert_eq!(determinant(&m, &int(1)), int(-2));
        let m = vec![
            vec![int(2), int(0), int(1)],
            vec![int(1), int(3), int(2)],
            vec![int(1), int(1), int(1)],
        ];
        assert_eq!(determinant(&m, &int(1)), int(0));
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(&m, &int(1)), int(-1));
    }

    #[test]
    fn formal_mode_rejects_small_caps() {
        let ctx = SeriesContext::new(&["z"], &[3]).unwrap();
        let spec = PrincipalSpec::formal(&ctx, "z").unwrap();
        assert!(schur_principal_hook(&p(&[1, 1]), &spec).is_err());
        assert!(schur_principal_hook(&p(&[1]), &spec).is_ok());
    }

    #[test]
    fn routes_agree_numeric_and_formal() {
        let ctx = SeriesContext::new(&["z"], &[24]).unwrap();
        let formal = PrincipalSpec::formal(&ctx, "z").unwrap();
        for lam in enumerate_partitions(6) {
            assert_eq!(schur_principal_hook(&lam, &q()).unwrap(), schur_principal_jt(&lam, &q()).unwrap());
            if let Ok(h) = schur_principal_hook(&lam, &formal) {
                assert_eq!(h, schur_principal_jt(&lam, &formal).unwrap(), "{lam}");
            }
        }
    }

    #[test]
    fn tableaux_agree_modulo_cap() {
        let m = 6;
        let ctx = SeriesContext::new(&["z"], &[2 * m as i32]).unwrap();
        let formal = PrincipalSpec::formal(&ctx, "z").unwrap();
        for lam in enumerate_partitions(3) {
            let t = schur_principal_ssyt(&lam, &ctx, "z", m).unwrap();
            assert_eq!(t, schur_principal_hook(&lam, &formal).unwrap(), "{lam}");
        }
    }

    #[test]
    fn cauchy_small_cases() {
        let (a, b) = (q(), PrincipalSpec::numeric(rat(1, 3)).unwrap());
        let one = Rational::one();
        let z0 = cauchy_product_side(&a, &b, 0).unwrap();
        assert_eq!(z0, TruncSeries::one(z0.context()));
        let z1 = cauchy_product_side(&a, &b, 1).unwrap();
        let (x, y) = (rat(1, 2), rat(1, 3));
        let c = &x * &y / ((&one - &x * &x) * (&one - &y * &y));
        assert_eq!(z1.coeff(&[1]), c);
        assert_eq!(cauchy_product_side(&a, &b, 5).unwrap(), cauchy_sum_side(&a, &b, 5).unwrap());
    }

    #[test]
    fn macmahon_coefficients() {
        let ctx = SeriesContext::new(&["q"], &[6]).unwrap();
        let m = macmahon_product(&ctx, "q").unwrap();
        let coeffs: Vec<Rational> = m.univariate_coeffs().unwrap();
        let expect: Vec<Rational> = [1, 1, 3, 6, 13, 24, 48].iter().map(|&n| int(n)).collect();
        assert_eq!(coeffs, expect);
    }
}
