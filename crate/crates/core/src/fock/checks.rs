//! Operator identities on the truncated Fock space, checked on every basis
//! state of a window.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::crystal::{phi_k, w0_eigen};
use crate::error::{Error, Result};
use crate::fock::basis::{basis_states, BasisState};
use crate::fock::ops::{
    apply_bilinear, apply_diag_power, apply_transfer, apply_transfer_product, apply_vertex, apply_vertex_exp,
    charge_offset, Bilinear, Limit, PlusMinus,
};
use crate::fock::vector::{expectation, FockVector, Side};
use crate::params::QParams;
use crate::report::{ReportBuilder, VerificationReport};
use crate::schur::{schur_principal_hook, PrincipalSpec};
use crate::series::{int, rpow, Rational, Ring, SeriesContext, TruncSeries};

/// Records `lhs − rhs` on every state in either support with energy ≤ `window`.
pub fn compare_vectors<R: Ring>(
    b: &mut ReportBuilder,
    tag: &str,
    input: &BasisState,
    lhs: &FockVector<R>,
    rhs: &FockVector<R>,
    window: u32,
) -> Result<()> {
    let diff = lhs.try_sub(rhs)?;
    let mut support: Vec<&BasisState> = lhs.terms().chain(rhs.terms()).map(|(s, _)| s).collect();
    support.sort();
    support.dedup();
    for t in support {
        if t.energy() > window {
            continue;
        }
        let label = match lhs.side() {
            Side::Ket => format!("{tag} ⟨{},{}|·|{},{}⟩", t.shape, t.charge, input.shape, input.charge),
            Side::Bra => format!("{tag} ⟨{},{}|·|{},{}⟩", input.shape, input.charge, t.shape, t.charge),
        };
        b.residual(label, &diff.coeff(t), diff.is_tainted(t.energy()));
    }
    Ok(())
}

fn ket(s: &BasisState) -> FockVector<Rational> {
    FockVector::basis(Side::Ket, s.clone(), &Rational::one())
}

fn commutator(v: &FockVector<Rational>, a: &Bilinear, b: &Bilinear, zeta: &Rational) -> Result<FockVector<Rational>> {
    let ab = apply_bilinear(&apply_bilinear(v, b, zeta, None), a, zeta, None);
    let ba = apply_bilinear(&apply_bilinear(v, a, zeta, None), b, zeta, None);
    ab.try_sub(&ba)
}

/// Which right-hand side of the Heisenberg relation is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeisenbergForm {
    /// `[J_m, J_n] = m δ_{m+n,0}`
    Standard,
    /// `[J_m, J_n] = m δ_{m,n}`
    Diagonal,
}

/// `[J_m, J_n]` against the chosen central term, for `|m|, |n| ≤ max_mode`.
pub fn check_heisenberg(form: HeisenbergForm, max_mode: i32, charges: &[i32], max_energy: u32) -> Result<VerificationReport> {
    let name = match form {
        HeisenbergForm::Standard => "heisenberg [J_m,J_n] = m δ(m+n,0)",
        HeisenbergForm::Diagonal => "heisenberg [J_m,J_n] = m δ(m,n)",
    };
    let mut b = ReportBuilder::new(name).cap("energy", max_energy as i64).cap("max_mode", max_mode as i64);
    let zeta = Rational::one();
    for s in basis_states(charges.iter().copied(), max_energy) {
        let v = ket(&s);
        for m in -max_mode..=max_mode {
            for n in -max_mode..=max_mode {
                let lhs = commutator(&v, &Bilinear::J(m), &Bilinear::J(n), &zeta)?;
                let hit = match form {
                    HeisenbergForm::Standard => m + n == 0,
                    HeisenbergForm::Diagonal => m == n,
                };
                let c = if hit { int(m as i64) } else { Rational::zero() };
                compare_vectors(&mut b, &format!("[J{m},J{n}]"), &s, &lhs, &v.scale_rational(&c), u32::MAX)?;
            }
        }
    }
    Ok(b.finish())
}

/// `[V^{(k)}_m, V^{(l)}_n] = (q^{(lm−kn)/2} − q^{(kn−lm)/2})(V^{(k+l)}_{m+n} − δ_{m+n,0} q^{k+l}/(1−q^{k+l}))`.
pub fn check_quantum_torus(zeta: &Rational, k: i32, l: i32, m: i32, n: i32, charges: &[i32], max_energy: u32) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new(format!("quantum-torus (k,l,m,n)=({k},{l},{m},{n})"))
        .param("zeta", crate::series::format_rational(zeta))
        .cap("energy", max_energy as i64);
    let q = zeta * zeta;
    let one = Rational::one();
    let coef = rpow(zeta, (l * m - k * n) as i64) - rpow(zeta, (k * n - l * m) as i64);
    let central = if m + n == 0 {
        let qkl = rpow(&q, (k + l) as i64);
        &qkl / (&one - &qkl)
    } else {
        Rational::zero()
    };
    for s in basis_states(charges.iter().copied(), max_energy) {
        let v = ket(&s);
        let lhs = commutator(&v, &Bilinear::V { k, m }, &Bilinear::V { k: l, m: n }, zeta)?;
        let rhs = apply_bilinear(&v, &Bilinear::V { k: k + l, m: m + n }, zeta, None)
            .try_sub(&v.scale_rational(&central))?
            .scale_rational(&coef);
        compare_vectors(&mut b, "[V,V]", &s, &lhs, &rhs, u32::MAX)?;
    }
    Ok(b.finish())
}

/// `J_m = V^{(0)}_m` and `H_k = V^{(k)}_0` on every basis state.
pub fn check_jh_as_v(zeta: &Rational, max_mode: i32, charges: &[i32], max_energy: u32) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("J = V(0,m), H = V(k,0)").cap("energy", max_energy as i64);
    for s in basis_states(charges.iter().copied(), max_energy) {
        let v = ket(&s);
        for m in -max_mode..=max_mode {
            let j = apply_bilinear(&v, &Bilinear::J(m), zeta, None);
            let w = apply_bilinear(&v, &Bilinear::V { k: 0, m }, zeta, None);
            compare_vectors(&mut b, &format!("J{m}"), &s, &j, &w, u32::MAX)?;
        }
        for k in 1..=max_mode {
            let h = apply_bilinear(&v, &Bilinear::H(k), zeta, None);
            let w = apply_bilinear(&v, &Bilinear::V { k, m: 0 }, zeta, None);
            compare_vectors(&mut b, &format!("H{k}"), &s, &h, &w, u32::MAX)?;
        }
    }
    Ok(b.finish())
}

/// Operator eigenvalues of `H_k`, `L0`, `W0` against their closed forms, on
/// kets and bras.
pub fn check_eigenvalues(zeta: &Rational, max_k: i32, charges: &[i32], max_energy: u32) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("eigenvalues of H_k, L0, W0")
        .param("zeta", crate::series::format_rational(zeta))
        .cap("energy", max_energy as i64);
    for s in basis_states(charges.iter().copied(), max_energy) {
        let p = s.charge;
        let mut expected: Vec<(Bilinear, Rational)> = vec![
            (Bilinear::L0, int((s.energy() + charge_offset(p)) as i64)),
            (Bilinear::W0, w0_eigen(&s.shape, p)),
        ];
        for k in 1..=max_k {
            expected.push((Bilinear::H(k), phi_k(&s.shape, p, k, zeta)));
        }
        for side in [Side::Ket, Side::Bra] {
            let v = FockVector::basis(side, s.clone(), &Rational::one());
            for (op, e) in &expected {
                let got = apply_bilinear(&v, op, zeta, None);
                let tag = format!("{op} {}", if side == Side::Ket { "ket" } else { "bra" });
                compare_vectors(&mut b, &tag, &s, &got, &v.scale_rational(e), u32::MAX)?;
            }
        }
    }
    Ok(b.finish())
}

/// Interlacing action of `V_±(z)` against the exponential of currents, in a
/// formal `z` of cap `order`.
pub fn check_vertex_routes(order: i32, charges: &[i32], max_energy: u32) -> Result<VerificationReport> {
    let ctx = SeriesContext::new(&["z"], &[order])?;
    let z = TruncSeries::var(&ctx, "z")?;
    let proto = TruncSeries::one(&ctx);
    let mut b = ReportBuilder::new("vertex operators: interlacing = exp of currents")
        .cap("z", order as i64)
        .cap("energy", max_energy as i64);
    for s in basis_states(charges.iter().copied(), max_energy) {
        for side in [Side::Ket, Side::Bra] {
            for sign in [PlusMinus::Plus, PlusMinus::Minus] {
                let v = FockVector::basis(side, s.clone(), &proto);
                let a = apply_vertex(&v, sign, &z, Limit::Order(order as u32));
                let e = apply_vertex_exp(&v, sign, &z, None)?;
                let tag = format!("V{}", if sign == PlusMinus::Plus { "+" } else { "-" });
                compare_vectors(&mut b, &tag, &s, &a, &e, u32::MAX)?;
            }
        }
    }
    Ok(b.finish())
}

/// `⟨p|G_+` and `G_−|p⟩` components against `s_λ(q^ρ)`, the vertex-product
/// route for `G_±`, and `G_+G_− = G_−G_+ exp(Σ q^k/(k(1−q^k)²))` in formal `ζ`.
pub fn check_transfer(zeta: &Rational, charges: &[i32], max_energy: u32, formal_cap: i32) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new("transfer operators G_±")
        .param("zeta", crate::series::format_rational(zeta))
        .cap("energy", max_energy as i64)
        .cap("zeta_formal", formal_cap as i64);
    let spec = PrincipalSpec::numeric(zeta.clone())?;
    let one = Rational::one();
    for &p in charges {
        let bra = apply_transfer(&FockVector::vacuum(Side::Bra, p, &one), PlusMinus::Plus, zeta, Some(max_energy))?;
        let ket = apply_transfer(&FockVector::vacuum(Side::Ket, p, &one), PlusMinus::Minus, zeta, Some(max_energy))?;
        for s in basis_states([p], max_energy) {
            let expect = schur_principal_hook(&s.shape, &spec)?;
            b.residual(format!("⟨{p}|G+|{},{p}⟩ − s", s.shape), &(bra.coeff(&s) - &expect), bra.is_tainted(s.energy()));
            b.residual(format!("⟨{},{p}|G-|{p}⟩ − s", s.shape), &(ket.coeff(&s) - &expect), ket.is_tainted(s.energy()));
        }
    }

    let ctx = SeriesContext::new(&["zeta"], &[formal_cap])?;
    let z = TruncSeries::var(&ctx, "zeta")?;
    let proto = TruncSeries::one(&ctx);
    // the ζ-degree of any component bounds its energy
    let window = formal_cap.max(0) as u32;
    for s in basis_states(charges.iter().copied(), 3) {
        for (side, sign) in [(Side::Ket, PlusMinus::Minus), (Side::Bra, PlusMinus::Plus), (Side::Ket, PlusMinus::Plus)] {
            let v = FockVector::basis(side, s.clone(), &proto);
            let a = apply_transfer(&v, sign, &z, None)?;
            let c = apply_transfer_product(&v, sign, &z, None)?;
            compare_vectors(&mut b, "G = ∏V", &s, &a, &c, window)?;
        }
    }

    // exp(Σ_k ζ^{2k} / (k (1 − ζ^{2k})²))
    let mut log = TruncSeries::zero(&ctx);
    for k in 1..=(formal_cap / 2).max(0) {
        let g = proto.try_sub(&z.pow_ref(2 * k as u32))?.invert()?;
        log = log.try_add(&z.pow_ref(2 * k as u32).try_mul(&g)?.try_mul(&g)?.scale_by(&int(k as i64).recip()))?;
    }
    let c = log.exp()?;
    for s in basis_states(charges.iter().copied(), 3) {
        let v = FockVector::basis(Side::Ket, s.clone(), &proto);
        let lhs = apply_transfer(&apply_transfer(&v, PlusMinus::Minus, &z, None)?, PlusMinus::Plus, &z, None)?;
        let rhs = apply_transfer(&apply_transfer(&v, PlusMinus::Plus, &z, None)?, PlusMinus::Minus, &z, None)?.scale(&c);
        compare_vectors(&mut b, "G+G- = G-G+ c", &s, &lhs, &rhs, window)?;
    }
    let vac = expectation(
        &FockVector::vacuum(Side::Bra, 0, &proto),
        &apply_transfer(&apply_transfer(&FockVector::vacuum(Side::Ket, 0, &proto), PlusMinus::Minus, &z, None)?, PlusMinus::Plus, &z, None)?,
    )?;
    b.residual("⟨0|G+G-|0⟩ − c", &vac.value.try_sub(&c)?, !vac.exact);
    Ok(b.finish())
}

/// Data for one intertwining relation
/// `ζ_g^{W0} G_−(ζ_g) G_+(ζ_g) H_k = (s J_j + c) ζ_g^{W0} G_−(ζ_g) G_+(ζ_g)` and
/// its mirror `H_k G_− G_+ ζ_g^{W0} = G_− G_+ ζ_g^{W0} (s' J_{−j} + c)`, where
/// `H_k` is built with `ζ_h`.
#[derive(Debug, Clone)]
pub struct Intertwining {
    pub zeta_g: Rational,
    pub zeta_h: Rational,
    pub k: i32,
    pub j: i32,
    pub constant: Rational,
}

impl Intertwining {
    /// Both sides in one parameter: `J_k` against `H_k`.
    pub fn single(zeta: &Rational, k: i32) -> Self {
        let qk = rpow(&(zeta * zeta), k as i64);
        Intertwining { zeta_g: zeta.clone(), zeta_h: zeta.clone(), k, j: k, constant: &qk / (Rational::one() - &qk) }
    }

    /// `q_i^{W0/2}G_−(q_i)G_+(q_i)` against `H_k(q)` with `q_i^{N_i} = q`.
    pub fn bigraded(zeta_i: &Rational, n_i: i32, zeta: &Rational, k: i32) -> Self {
        let qk = rpow(&(zeta * zeta), k as i64);
        Intertwining { zeta_g: zeta_i.clone(), zeta_h: zeta.clone(), k, j: n_i * k, constant: &qk / (Rational::one() - &qk) }
    }

    fn parity(&self) -> Rational {
        if self.j % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        }
    }
}

/// `G_±` on kets, one cached column per basis state.
struct Columns {
    sign: PlusMinus,
    zeta: Rational,
    cap: Option<u32>,
    cache: HashMap<BasisState, FockVector<Rational>>,
}

impl Columns {
    fn new(sign: PlusMinus, zeta: &Rational, cap: Option<u32>) -> Self {
        Columns { sign, zeta: zeta.clone(), cap, cache: HashMap::new() }
    }

    fn apply(&mut self, v: &FockVector<Rational>) -> Result<FockVector<Rational>> {
        let mut out = FockVector::zero(v.side(), v.proto());
        for (s, c) in v.terms() {
            if !self.cache.contains_key(s) {
                let col = apply_transfer(&ket(s), self.sign, &self.zeta, self.cap)?;
                self.cache.insert(s.clone(), col);
            }
            out.add_scaled(c, &self.cache[s])?;
        }
        // same taint rule as applying the exponential to v directly
        if let Some(m) = v.overflow_from() {
            out.taint_from(if self.sign == PlusMinus::Plus { 0 } else { m });
        }
        Ok(out)
    }
}

/// `q^{W0/2}G_−G_+` and `G_−G_+q^{W0/2}` by linearity from cached columns.
/// The mirror products are only needed at energy `≤ cap`, and since `G_−`
/// raises, intermediate states above `cap` are dropped there.
struct Dressing {
    zeta: Rational,
    cap: u32,
    plus: Columns,
    minus_work: Columns,
    minus_cap: Columns,
    full: HashMap<BasisState, FockVector<Rational>>,
    low: HashMap<BasisState, FockVector<Rational>>,
}

impl Dressing {
    fn new(zeta: &Rational, cap: u32, work: u32) -> Self {
        Dressing {
            zeta: zeta.clone(),
            cap,
            plus: Columns::new(PlusMinus::Plus, zeta, None),
            minus_work: Columns::new(PlusMinus::Minus, zeta, Some(work)),
            minus_cap: Columns::new(PlusMinus::Minus, zeta, Some(cap)),
            full: HashMap::new(),
            low: HashMap::new(),
        }
    }

    fn column(&mut self, s: &BasisState, low: bool) -> Result<&FockVector<Rational>> {
        let cached = if low { self.low.contains_key(s) } else { self.full.contains_key(s) };
        if !cached {
            let mut x = self.plus.apply(&ket(s))?;
            let col = if low {
                x.truncate(self.cap);
                self.minus_cap.apply(&x)?
            } else {
                self.minus_work.apply(&x)?
            };
            let map = if low { &mut self.low } else { &mut self.full };
            map.insert(s.clone(), col);
        }
        Ok(if low { &self.low[s] } else { &self.full[s] })
    }

    fn w0_power(&self, v: &FockVector<Rational>) -> Result<FockVector<Rational>> {
        apply_diag_power(v, &self.zeta, &Bilinear::W0, &self.zeta)
    }

    fn combine(&mut self, v: &FockVector<Rational>, low: bool) -> Result<FockVector<Rational>> {
        let mut out = FockVector::zero(v.side(), v.proto());
        for (s, c) in v.terms() {
            out.add_scaled(c, self.column(s, low)?)?;
        }
        if let Some(m) = v.overflow_from() {
            out.taint_from(m.min(self.cap + 1));
        }
        Ok(out)
    }

    /// `q^{W0/2}G_−G_+ v` through the full window.
    fn dressing(&mut self, v: &FockVector<Rational>) -> Result<FockVector<Rational>> {
        let x = self.combine(v, false)?;
        self.w0_power(&x)
    }

    /// `G_−G_+q^{W0/2} v` at energy `≤ cap`.
    fn dressing_mirror(&mut self, v: &FockVector<Rational>) -> Result<FockVector<Rational>> {
        let w = self.w0_power(v)?;
        self.combine(&w, true)
    }
}

/// Checks both relations on kets of energy ≤ `energy_cap`. The mirror relation
/// is tried with `s' = (−1)^j` and `s' = −(−1)^j`; the residuals recorded are
/// those of `(−1)^j`, and a note reports how the other sign fares.
pub fn check_intertwining(rel: &Intertwining, charges: &[i32], energy_cap: u32) -> Result<VerificationReport> {
    IntertwiningSession::new(energy_cap, rel.j.unsigned_abs()).check(rel, charges)
}

/// Runs several intertwining checks at one energy cap, sharing the `G_−G_+`
/// columns between relations with the same `ζ_g`.
pub struct IntertwiningSession {
    energy_cap: u32,
    work: u32,
    dressings: Vec<(Rational, Dressing)>,
}

impl IntertwiningSession {
    /// `max_j` bounds the `J` index of every relation checked.
    pub fn new(energy_cap: u32, max_j: u32) -> Self {
        IntertwiningSession { energy_cap, work: energy_cap + max_j, dressings: Vec::new() }
    }

    fn dressing(&mut self, zeta: &Rational) -> &mut Dressing {
        let i = match self.dressings.iter().position(|(z, _)| z == zeta) {
            Some(i) => i,
            None => {
                self.dressings.push((zeta.clone(), Dressing::new(zeta, self.energy_cap, self.work)));
                self.dressings.len() - 1
            }
        };
        &mut self.dressings[i].1
    }

    pub fn check(&mut self, rel: &Intertwining, charges: &[i32]) -> Result<VerificationReport> {
        if self.energy_cap + rel.j.unsigned_abs() > self.work {
            return Err(Error::CapTooSmall(format!("J index {} exceeds the session window", rel.j)));
        }
        let energy_cap = self.energy_cap;
        let g = self.dressing(&rel.zeta_g);
        intertwining_with(rel, charges, energy_cap, g)
    }

    pub fn check_bigraded(&mut self, params: &QParams, n1: u32, n2: u32, k: i32, charges: &[i32]) -> Result<VerificationReport> {
        params.check_bigraded(n1, n2)?;
        let mut b = ReportBuilder::new(format!("intertwining, bigraded (N1,N2)=({n1},{n2}), k={k}"))
            .params(params)
            .cap("energy", self.energy_cap as i64);
        let r1 = Intertwining::bigraded(&params.zeta1, n1 as i32, &params.zeta, k);
        let r2 = Intertwining::bigraded(&params.zeta2, n2 as i32, &params.zeta, k);
        b.absorb("q1 side", self.check(&r1, charges)?);
        b.absorb("q2 side", self.check(&r2, charges)?);
        Ok(b.finish())
    }
}

fn intertwining_with(rel: &Intertwining, charges: &[i32], energy_cap: u32, g: &mut Dressing) -> Result<VerificationReport> {
    let mut b = ReportBuilder::new(format!("intertwining (k={}, J index {})", rel.k, rel.j))
        .param("zeta_g", crate::series::format_rational(&rel.zeta_g))
        .param("zeta_h", crate::series::format_rational(&rel.zeta_h))
        .cap("energy", energy_cap as i64);
    let sign = rel.parity();
    let h = Bilinear::H(rel.k);
    let mut flipped_nonzero = 0usize;
    for s in basis_states(charges.iter().copied(), energy_cap) {
        let v = ket(&s);

        let lhs = g.dressing(&apply_bilinear(&v, &h, &rel.zeta_h, None))?;
        let x = g.dressing(&v)?;
        let rhs = apply_bilinear(&x, &Bilinear::J(rel.j), &rel.zeta_g, None)
            .scale_rational(&sign)
            .try_add(&x.scale_rational(&rel.constant))?;
        compare_vectors(&mut b, "first", &s, &lhs, &rhs, energy_cap)?;

        let lhs = apply_bilinear(&g.dressing_mirror(&v)?, &h, &rel.zeta_h, None);
        let jv = apply_bilinear(&v, &Bilinear::J(-rel.j), &rel.zeta_g, None);
        let cv = v.scale_rational(&rel.constant);
        let rhs = g.dressing_mirror(&jv.scale_rational(&sign).try_add(&cv)?)?;
        compare_vectors(&mut b, "mirror", &s, &lhs, &rhs, energy_cap)?;
        let alt = g.dressing_mirror(&jv.scale_rational(&-&sign).try_add(&cv)?)?;
        let diff = lhs.try_sub(&alt)?;
        flipped_nonzero += diff.terms().filter(|(t, _)| t.energy() <= energy_cap).count();
    }
    b.note(format!(
        "mirror relation with sign (-1)^{} checked; the opposite sign leaves {flipped_nonzero} nonzero residuals",
        rel.j
    ));
    Ok(b.finish())
}

/// Convenience grid: the single-parameter relations for `k` and the two
/// bigraded substitutions for `(N1, N2)`.
pub fn check_intertwining_bigraded(params: &QParams, n1: u32, n2: u32, k: i32, charges: &[i32], energy_cap: u32) -> Result<VerificationReport> {
    let max_j = n1.max(n2) * k.unsigned_abs();
    IntertwiningSession::new(energy_cap, max_j).check_bigraded(params, n1, n2, k, charges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;
    use crate::series::rat;

    #[test]
    fn heisenberg_small() {
        let r = check_heisenberg(HeisenbergForm::Standard, 2, &[-1, 0, 1], 4).unwrap();
        assert_eq!(r.verdict, Verdict::Pass);
        let r = check_heisenberg(HeisenbergForm::Diagonal, 2, &[0], 3).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn quantum_torus_examples() {
        let z = rat(1, 2);
        for (k, l, m, n) in [(1, 1, 1, -1), (1, 1, 2, -1), (2, 1, -1, 2), (1, 2, 0, 1)] {
            let r = check_quantum_torus(&z, k, l, m, n, &[-1, 0, 1], 4).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{k} {l} {m} {n}");
        }
        assert!(check_jh_as_v(&z, 2, &[0, 1], 3).unwrap().passed());
    }

    #[test]
    fn eigenvalues_and_vertices() {
        assert!(check_eigenvalues(&rat(1, 2), 3, &[-2, 0, 2], 4).unwrap().passed());
        assert!(check_vertex_routes(3, &[0, 1], 3).unwrap().passed());
    }

    #[test]
    fn transfer_small() {
        assert!(check_transfer(&rat(1, 2), &[0, 1], 4, 6).unwrap().passed());
    }

    #[test]
    fn intertwining_small() {
        let z = rat(1, 2);
        for k in 1..=2 {
            let r = check_intertwining(&Intertwining::single(&z, k), &[0], 4).unwrap();
            assert!(r.passed(), "{:?}", r.nonzero().take(3).collect::<Vec<_>>());
        }
        let params = QParams::bigraded_from_root(rat(1, 2), 1, 2).unwrap();
        assert!(check_intertwining_bigraded(&params, 1, 2, 1, &[0], 3).unwrap().passed());
    }
}
