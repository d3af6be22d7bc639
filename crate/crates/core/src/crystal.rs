//! Melting crystal potentials and partition functions as exact truncated
//! series, summed over the main diagonal slice `λ = π(0)`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::charge_offset;
use crate::params::{Normalization, QParams};
use crate::partitions::{enumerate_partitions, enumerate_plane_partitions, Partition};
use crate::qtoda::record_series;
use crate::report::{ReportBuilder, VerificationReport};
use crate::schur::{cauchy_product_side, macmahon_product, schur_principal_hook, PrincipalSpec};
use crate::series::{int, rpow, Rational, SeriesContext, TruncSeries};

/// `Φ_k(λ,p) = Σ_i (q^{k(p+λ_i−i+1)} − q^{k(p−i+1)}) + q^k (1 − q^{pk})/(1 − q^k)`
/// with `q = ζ²`.
pub fn phi_k(lam: &Partition, p: i32, k: i32, zeta: &Rational) -> Rational {
    let q = zeta * zeta;
    let qk = rpow(&q, k as i64);
    let mut total = Rational::zero();
    for (i, &part) in lam.parts().iter().enumerate() {
        let i = i as i64 + 1;
        let p = p as i64;
        total += rpow(&qk, p + part as i64 - i + 1) - rpow(&qk, p - i + 1);
    }
    let one = Rational::one();
    total + &qk * (&one - rpow(&qk, p as i64)) / (&one - &qk)
}

/// `Σ_i ((p+λ_i−i+1)² − (p−i+1)²) + p(p+1)(2p+1)/6`.
pub fn w0_eigen(lam: &Partition, p: i32) -> Rational {
    let p = p as i64;
    let mut total: i64 = 0;
    for (i, &part) in lam.parts().iter().enumerate() {
        let i = i as i64 + 1;
        let a = p + part as i64 - i + 1;
        let b = p - i + 1;
        total += a * a - b * b;
    }
    int(total + p * (p + 1) * (2 * p + 1) / 6)
}

/// Which couplings are switched on: `t_k` for `k = 1..=K` named by
/// `t_vars[k−1]`, and optionally `β` for the `W0` insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialConfig {
    pub p: i32,
    pub t_vars: Vec<String>,
    pub beta: Option<String>,
}

impl PotentialConfig {
    pub fn new(p: i32) -> Self {
        PotentialConfig { p, t_vars: Vec::new(), beta: None }
    }

    /// Couplings `t_1..t_K` named `"t1".."tK"`.
    pub fn with_t(mut self, k: usize) -> Self {
        self.t_vars = (1..=k).map(|i| format!("t{i}")).collect();
        self
    }

    pub fn with_beta(mut self, var: impl Into<String>) -> Self {
        self.beta = Some(var.into());
        self
    }

    pub fn at_charge(&self, p: i32) -> Self {
        PotentialConfig { p, ..self.clone() }
    }
}

/// `Σ_{k≤K} t_k Φ_k(λ,p)` as a linear series.
pub fn phi_total(lam: &Partition, config: &PotentialConfig, zeta: &Rational, ctx: &Arc<SeriesContext>) -> Result<TruncSeries> {
    let mut out = TruncSeries::zero(ctx);
    for (k, var) in config.t_vars.iter().enumerate() {
        let term = TruncSeries::var(ctx, var)?.scale_by(&phi_k(lam, config.p, k as i32 + 1, zeta));
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// `Z = Σ_λ s_λ(q^ρ)²` through `q^{cap}`, with `q` the single variable of
/// `ctx`.
pub fn z_simple(ctx: &Arc<SeriesContext>, var: &str) -> Result<TruncSeries> {
    let cap = ctx.cap(var)?;
    let zctx = SeriesContext::new(&["zeta"], &[2 * cap])?;
    let spec = PrincipalSpec::formal(&zctx, "zeta")?;
    let mut sum = TruncSeries::zero(&zctx);
    for lam in enumerate_partitions(cap.max(0) as u32) {
        let s = match schur_principal_hook(&lam, &spec) {
            Ok(s) => s,
            Err(Error::CapTooSmall(_)) => continue,
            Err(e) => return Err(e),
        };
        sum = sum.try_add(&s.try_mul(&s)?)?;
    }
    let idx = ctx.var_index(var)?;
    let mut out = TruncSeries::zero(ctx);
    for (e, c) in sum.terms() {
        if e[0] % 2 != 0 {
            return Err(Error::Unsupported("odd power of ζ in a square".into()));
        }
        let mut ev = vec![0; ctx.nvars()];
        ev[idx] = e[0] / 2;
        out = out.try_add(&TruncSeries::monomial(ctx, &ev, c.clone())?)?;
    }
    Ok(out)
}

/// `Z(Q) = ∏_{l≥1} (1 − Q q^l)^{−l}` as a series in `(Q, q)`.
pub fn z_deformed_product(ctx: &Arc<SeriesContext>, q_var: &str, qq_var: &str) -> Result<TruncSeries> {
    // log Z(Q) = Σ_k Q^k/k Σ_l l q^{lk}
    let qq_cap = ctx.cap(qq_var)?;
    let mut log = TruncSeries::zero(ctx);
    for k in 1..=ctx.cap(q_var)?.max(0) {
        for l in 1..=qq_cap.max(0) {
            if l * k > qq_cap {
                break;
            }
            let mono = TruncSeries::var_pow(ctx, q_var, k)?.try_mul(&TruncSeries::var_pow(ctx, qq_var, l * k)?)?;
            log = log.try_add(&mono.scale_by(&Rational::new(l.into(), k.into())))?;
        }
    }
    log.exp()
}

/// The two-parameter model with its couplings and truncation.
#[derive(Debug, Clone)]
pub struct CrystalModel {
    pub params: QParams,
    pub potential: PotentialConfig,
    pub normalization: Normalization,
    /// Context holding `q_var` and every coupling variable.
    pub ctx: Arc<SeriesContext>,
    pub q_var: String,
    /// `(N1, N2)` when `q1^{N1} = q = q2^{N2}` is asserted.
    pub bigraded: Option<(u32, u32)>,
}

impl CrystalModel {
    pub fn new(params: QParams, potential: PotentialConfig, normalization: Normalization, ctx: Arc<SeriesContext>) -> Result<Self> {
        let m = CrystalModel { params, potential, normalization, ctx, q_var: "Q".into(), bigraded: None };
        m.validate()?;
        Ok(m)
    }

    pub fn with_bigraded(mut self, n1: u32, n2: u32) -> Result<Self> {
        self.bigraded = Some((n1, n2));
        self.validate()?;
        Ok(self)
    }

    pub fn at_charge(&self, p: i32) -> Self {
        CrystalModel { potential: self.potential.at_charge(p), ..self.clone() }
    }

    fn validate(&self) -> Result<()> {
        self.ctx.var_index(&self.q_var)?;
        for v in &self.potential.t_vars {
            self.ctx.var_index(v)?;
        }
        if let Some(b) = &self.potential.beta {
            self.ctx.var_index(b)?;
        }
        if let Some((n1, n2)) = self.bigraded {
            self.params.check_bigraded(n1, n2)?;
        }
        Ok(())
    }

    /// `Q`-exponent of the state `λ`.
    pub fn q_degree(&self, lam: &Partition) -> u32 {
        match self.normalization {
            Normalization::SchurSum => lam.weight(),
            Normalization::Fermionic => lam.weight() + charge_offset(self.potential.p),
        }
    }
}

/// `Σ_λ s_λ(q1^ρ) s_λ(q2^ρ) Q^{N(λ,p)} e^{Σ t_k Φ_k(λ,p) + β W0(λ,p)}`.
pub fn z_two_param(model: &CrystalModel) -> Result<TruncSeries> {
    let ctx = &model.ctx;
    let qcap = ctx.cap(&model.q_var)?;
    let spec1 = PrincipalSpec::numeric(model.params.zeta1.clone())?;
    let spec2 = PrincipalSpec::numeric(model.params.zeta2.clone())?;
    let mut out = TruncSeries::zero(ctx);
    let offset = model.q_degree(&Partition::empty()) as i32;
    if offset > qcap {
        return Ok(out);
    }
    for lam in enumerate_partitions((qcap - offset) as u32) {
        let weight = schur_principal_hook(&lam, &spec1)? * schur_principal_hook(&lam, &spec2)?;
        let mut arg = phi_total(&lam, &model.potential, &model.params.zeta, ctx)?;
        if let Some(b) = &model.potential.beta {
            arg = arg.try_add(&TruncSeries::var(ctx, b)?.scale_by(&w0_eigen(&lam, model.potential.p)))?;
        }
        let term = TruncSeries::var_pow(ctx, &model.q_var, model.q_degree(&lam) as i32)?
            .try_mul(&arg.exp()?)?
            .scale_by(&weight);
        out = out.try_add(&term)?;
    }
    Ok(out)
}

/// `z_simple` against the plane-partition count and MacMahon's product
/// through `q^{cap}`.
pub fn check_macmahon(cap: i32) -> Result<VerificationReport> {
    let ctx = SeriesContext::new(&["q"], &[cap])?;
    let mut b = ReportBuilder::new("simple crystal = MacMahon").cap("q", cap as i64);
    let z = z_simple(&ctx, "q")?;
    let mut counts = TruncSeries::zero(&ctx);
    for pi in enumerate_plane_partitions(cap.max(0) as u32) {
        counts = counts.try_add(&TruncSeries::var_pow(&ctx, "q", pi.volume() as i32)?)?;
    }
    record_series(&mut b, "enumeration", &z, &counts, false)?;
    record_series(&mut b, "product", &z, &macmahon_product(&ctx, "q")?, false)?;
    let coeffs: Vec<String> = z.univariate_coeffs()?.iter().map(|c| c.to_string()).collect();
    b.note(format!("coefficients {}", coeffs.join(",")));
    Ok(b.finish())
}

/// The Schur sum `Σ s_λ(q1^ρ)s_λ(q2^ρ)Q^{|λ|}` of the two-parameter model at
/// `t = 0` against the Cauchy product through `Q^{q_cap}`.
pub fn check_cauchy(zeta1: &Rational, zeta2: &Rational, q_cap: i32) -> Result<VerificationReport> {
    let params = QParams::new(zeta1.clone(), zeta1.clone(), zeta2.clone())?;
    let ctx = SeriesContext::new(&["Q"], &[q_cap])?;
    let model = CrystalModel::new(params.clone(), PotentialConfig::new(0), Normalization::SchurSum, ctx)?;
    let mut b = ReportBuilder::new("two-parameter Cauchy product").params(&params).cap("Q", q_cap as i64);
    let sum = z_two_param(&model)?;
    let s1 = PrincipalSpec::numeric(zeta1.clone())?;
    let s2 = PrincipalSpec::numeric(zeta2.clone())?;
    record_series(&mut b, "product", &sum, &cauchy_product_side(&s1, &s2, q_cap)?, false)?;
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn phi_examples() {
        let z = rat(1, 3);
        let q = &z * &z;
        let one = Rational::one();
        for k in 1..=3 {
            let qk = rpow(&q, k);
            for pp in -2..=2 {
                let expect = &qk * (&one - rpow(&qk, pp)) / (&one - &qk);
                assert_eq!(phi_k(&Partition::empty(), pp as i32, k as i32, &z), expect);
            }
            assert_eq!(phi_k(&p(&[1]), 0, k as i32, &z), &qk - &one);
        }
        assert_eq!(phi_k(&p(&[1]), 1, 1, &z), &q * &q);
    }

    #[test]
    fn phi_matches_naive_pairing_at_p0() {
        let z = rat(1, 2);
        let q = &z * &z;
        for lam in enumerate_partitions(8) {
            for k in 1..=3i64 {
                let naive: Rational = (1..=lam.len() as i64 + 1)
                    .map(|i| rpow(&q, k * (lam.part(i as usize) as i64 - i + 1)) - rpow(&q, k * (1 - i)))
                    .sum();
                assert_eq!(phi_k(&lam, 0, k as i32, &z), naive);
            }
        }
    }

    #[test]
    fn w0_examples() {
        assert_eq!(w0_eigen(&Partition::empty(), 0), int(0));
        assert_eq!(w0_eigen(&Partition::empty(), 2), int(5));
        assert_eq!(w0_eigen(&p(&[1]), 0), int(1));
    }

    #[test]
    fn phi_total_and_exp() {
        let ctx = SeriesContext::new(&["t1"], &[2]).unwrap();
        let cfg = PotentialConfig::new(0).with_t(1);
        let z = rat(1, 2);
        let q = &z * &z;
        assert!(phi_total(&Partition::empty(), &cfg, &z, &ctx).unwrap().is_zero());
        let f = phi_total(&p(&[1]), &cfg, &z, &ctx).unwrap();
        let c = &q - Rational::one();
        assert_eq!(f.coeff(&[1]), c);
        let e = f.exp().unwrap();
        assert_eq!(e.coeff(&[0]), Rational::one());
        assert_eq!(e.coeff(&[2]), &c * &c / int(2));
    }

    #[test]
    fn simple_model_matches_macmahon_and_enumeration() {
        let ctx = SeriesContext::new(&["q"], &[8]).unwrap();
        let z = z_simple(&ctx, "q").unwrap();
        assert_eq!(z, macmahon_product(&ctx, "q").unwrap());
        let mut counts = [0i64; 9];
        for pi in enumerate_plane_partitions(8) {
            counts[pi.volume() as usize] += 1;
        }
        let coeffs: Vec<Rational> = z.univariate_coeffs().unwrap();
        assert_eq!(coeffs, counts.iter().map(|&c| int(c)).collect::<Vec<_>>());
        let c0 = SeriesContext::new(&["q"], &[0]).unwrap();
        assert_eq!(z_simple(&c0, "q").unwrap(), TruncSeries::one(&c0));
    }

    #[test]
    fn two_param_reduces_to_products() {
        let params = QParams::new(rat(1, 5), rat(1, 2), rat(1, 3)).unwrap();
        let ctx = SeriesContext::new(&["Q"], &[6]).unwrap();
        let m = CrystalModel::new(params.clone(), PotentialConfig::new(0), Normalization::SchurSum, ctx).unwrap();
        let z = z_two_param(&m).unwrap();
        let s1 = PrincipalSpec::numeric(rat(1, 2)).unwrap();
        let s2 = PrincipalSpec::numeric(rat(1, 3)).unwrap();
        assert_eq!(z, cauchy_product_side(&s1, &s2, 6).unwrap());
        let one = Rational::one();
        assert_eq!(z.coeff(&[1]), rat(1, 6) / ((&one - rat(1, 4)) * (&one - rat(1, 9))));
        // the Schur-sum normalization does not see p when t = 0
        for pp in -2..=2 {
            assert_eq!(z_two_param(&m.at_charge(pp)).unwrap(), z);
        }
    }

    #[test]
    fn equal_parameters_give_deformed_macmahon() {
        // q1 = q2 = q: the diagonal Cauchy series in (Q, ζ) is Z(Q) at q = ζ²
        let ctx = SeriesContext::new(&["Q", "q"], &[4, 8]).unwrap();
        let prod = z_deformed_product(&ctx, "Q", "q").unwrap();
        let zctx = SeriesContext::new(&["Q", "zeta"], &[4, 16]).unwrap();
        let cauchy = crate::schur::cauchy_product_side_formal(&zctx, "Q", "zeta").unwrap();
        for (e, c) in prod.terms() {
            assert_eq!(cauchy.coeff(&[e[0], 2 * e[1]]), *c);
        }
        for (e, c) in cauchy.terms() {
            assert_eq!(e[1] % 2, 0);
            assert_eq!(prod.coeff(&[e[0], e[1] / 2]), *c);
        }
    }

    #[test]
    fn bigraded_flag_is_checked() {
        let ctx = SeriesContext::new(&["Q"], &[2]).unwrap();
        let bad = QParams::new(rat(1, 4), rat(1, 3), rat(1, 2)).unwrap();
        let m = CrystalModel::new(bad, PotentialConfig::new(0), Normalization::Fermionic, ctx).unwrap();
        assert!(m.with_bigraded(1, 2).is_err());
    }
}
