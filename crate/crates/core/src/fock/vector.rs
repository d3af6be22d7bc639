//! Finite linear combinations of basis states with truncation bookkeeping.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::basis::BasisState;
use crate::series::{Rational, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Ket,
    Bra,
}

/// A vector in `𝓕` (ket) or `𝓕*` (bra).
///
/// `overflow_from = Some(e)` records that components of energy `≥ e` may be
/// incomplete because some intermediate state was dropped above a cap.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<R: Ring> {
    side: Side,
    terms: BTreeMap<BasisState, R>,
    overflow_from: Option<u32>,
    proto: R,
}

impl<R: Ring> FockVector<R> {
    /// The zero vector; `proto` fixes the coefficient ring (any element).
    pub fn zero(side: Side, proto: &R) -> Self {
        FockVector { side, terms: BTreeMap::new(), overflow_from: None, proto: proto.zero_like() }
    }

    pub fn basis(side: Side, state: BasisState, proto: &R) -> Self {
        let mut v = Self::zero(side, proto);
        v.terms.insert(state, proto.one_like());
        v
    }

    pub fn vacuum(side: Side, charge: i32, proto: &R) -> Self {
        Self::basis(side, BasisState::vacuum(charge), proto)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn proto(&self) -> &R {
        &self.proto
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisState, &R)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, s: &BasisState) -> R {
        self.terms.get(s).cloned().unwrap_or_else(|| self.proto.clone())
    }

    pub fn overflow_from(&self) -> Option<u32> {
        self.overflow_from
    }

    /// Is the component at energy `e` possibly incomplete?
    pub fn is_tainted(&self, e: u32) -> bool {
        self.overflow_from.is_some_and(|m| e >= m)
    }

    pub fn set_overflow(&mut self, from: Option<u32>) {
        self.overflow_from = from;
    }

    /// Lowers the overflow threshold to `e` (keeps the smaller one).
    pub fn taint_from(&mut self, e: u32) {
        self.overflow_from = Some(self.overflow_from.map_or(e, |m| m.min(e)));
    }

    pub fn max_energy(&self) -> Option<u32> {
        self.terms.keys().map(BasisState::energy).max()
    }

    pub fn min_energy(&self) -> Option<u32> {
        self.terms.keys().map(BasisState::energy).min()
    }

    pub fn charges(&self) -> Vec<i32> {
        let mut c: Vec<i32> = self.terms.keys().map(|s| s.charge).collect();
        c.dedup();
        c
    }

    pub fn add_term(&mut self, state: BasisState, c: &R) {
        if c.is_nil() {
            return;
        }
        match self.terms.get_mut(&state) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_nil() {
                    self.terms.remove(&state);
                }
            }
            None => {
                self.terms.insert(state, c.clone());
            }
        }
    }

    fn check_side(&self, other: &Self) -> Result<()> {
        if self.side != other.side {
            return Err(Error::Unsupported("cannot combine a bra with a ket".into()));
        }
        Ok(())
    }

    fn merged_overflow(&self, other: &Self) -> Option<u32> {
        match (self.overflow_from, other.overflow_from) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_side(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c);
        }
        out.overflow_from = self.merged_overflow(other);
        Ok(out)
    }

    /// `self += c · other` in place.
    pub fn add_scaled(&mut self, c: &R, other: &Self) -> Result<()> {
        self.check_side(other)?;
        for (s, x) in &other.terms {
            self.add_term(s.clone(), &x.mul_ref(c));
        }
        self.overflow_from = self.merged_overflow(other);
        Ok(())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale_rational(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_coeffs(|v| v.mul_ref(c))
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map_coeffs(|v| v.scale(c))
    }

    /// Applies `f` to every coefficient, pruning zeros.
    pub fn map_coeffs(&self, f: impl Fn(&R) -> R) -> Self {
        let mut out = Self::zero(self.side, &self.proto);
        out.overflow_from = self.overflow_from;
        for (s, c) in &self.terms {
            out.add_term(s.clone(), &f(c));
        }
        out
    }

    /// Applies a per-state multiplier.
    pub fn map_states(&self, f: impl Fn(&BasisState, &R) -> R) -> Self {
        let mut out = Self::zero(self.side, &self.proto);
        out.overflow_from = self.overflow_from;
        for (s, c) in &self.terms {
            out.add_term(s.clone(), &f(s, c));
        }
        out
    }

    /// Drops components above `cap`, recording the loss.
    pub fn truncate(&mut self, cap: u32) {
        let before = self.terms.len();
        self.terms.retain(|s, _| s.energy() <= cap);
        if self.terms.len() != before {
            self.taint_from(cap + 1);
        }
    }

    /// Converts between `𝓕` and `𝓕*` through the orthonormal basis.
    pub fn transposed(&self) -> Self {
        let mut out = self.clone();
        out.side = match self.side {
            Side::Ket => Side::Bra,
            Side::Bra => Side::Ket,
        };
        out
    }
}

/// Value of `⟨bra|ket⟩` together with whether truncation could affect it.
#[derive(Debug, Clone, PartialEq)]
pub struct Contraction<R: Ring> {
    pub value: R,
    pub exact: bool,
}

/// `⟨bra|ket⟩` using orthonormality of the basis.
pub fn expectation<R: Ring>(bra: &FockVector<R>, ket: &FockVector<R>) -> Result<Contraction<R>> {
    if bra.side != Side::Bra || ket.side != Side::Ket {
        return Err(Error::Unsupported("expectation needs a bra and a ket".into()));
    }
    let mut value = bra.proto.zero_like();
    let (small, large) = if bra.len() <= ket.len() { (bra, ket) } else { (ket, bra) };
    for (s, c) in &small.terms {
        if let Some(d) = large.terms.get(s) {
            value.add_assign_ref(&c.mul_ref(d));
        }
    }
    let covered = |tainted: &FockVector<R>, other: &FockVector<R>| match tainted.overflow_from {
        None => true,
        Some(m) => other.overflow_from.is_none() && other.max_energy().is_none_or(|e| e < m),
    };
    let exact = covered(bra, ket) && covered(ket, bra);
    Ok(Contraction { value, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::basis::basis_states;
    use crate::series::int;
    use num_traits::{One, Zero};

    #[test]
    fn orthonormality() {
        let states = basis_states(-2..=2, 4);
        let proto = Rational::one();
        for a in &states {
            for b in &states {
                let bra = FockVector::basis(Side::Bra, a.clone(), &proto);
                let ket = FockVector::basis(Side::Ket, b.clone(), &proto);
                let v = expectation(&bra, &ket).unwrap();
                assert!(v.exact);
                assert_eq!(v.value, if a == b { Rational::one() } else { Rational::zero() });
            }
        }
    }

    #[test]
    fn taint_rules() {
        let proto = Rational::one();
        let mut ket = FockVector::vacuum(Side::Ket, 0, &proto);
        let bra = FockVector::vacuum(Side::Bra, 0, &proto);
        ket.taint_from(3);
        assert!(expectation(&bra, &ket).unwrap().exact);
        ket.taint_from(0);
        assert!(!expectation(&bra, &ket).unwrap().exact);
        let mut a = FockVector::vacuum(Side::Ket, 0, &proto);
        a.add_term(BasisState::vacuum(0), &int(-1));
        assert!(a.is_zero());
    }
}
