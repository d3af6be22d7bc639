//! Charged partition states and their Maya (occupied-level) description.
//!
//! Conventions: `ψ_{-s}` creates and `ψ*_s` annihilates the level `s`. The
//! charge-`p` vacuum fills every level `s ≤ p`, and `|λ,p⟩` fills the levels
//! `s_i = p + λ_i − i + 1`. States are ordered wedges `s_1 ∧ s_2 ∧ …` with
//! `s_1 > s_2 > …`, so inserting or removing the level `s` costs
//! `(−1)^{#{occupied levels > s}}`. With this choice the monomial formulas
//! for `|λ,p⟩` and `⟨λ,p|` produce the basis states with coefficient `+1`.

use std::fmt;

use serde::Serialize;

use crate::partitions::{enumerate_partitions, Partition};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisState {
    pub charge: i32,
    pub shape: Partition,
}

impl BasisState {
    pub fn new(shape: Partition, charge: i32) -> Self {
        BasisState { charge, shape }
    }

    pub fn vacuum(charge: i32) -> Self {
        BasisState { charge, shape: Partition::empty() }
    }

    /// `|λ|`, the `L0` eigenvalue minus the charge offset.
    pub fn energy(&self) -> u32 {
        self.shape.weight()
    }

    /// Occupied levels above `floor`, descending. Every level `≤ floor` is
    /// occupied too; `floor` is lowered if needed to cover all vacancies.
    pub fn maya(&self, floor: i32) -> Maya {
        let floor = floor.min(self.lowest_filled_block());
        let p = self.charge;
        let count = (p - floor) as usize;
        let occ = (1..=count)
            .map(|i| p + self.shape.part(i) as i32 - i as i32 + 1)
            .collect();
        Maya { floor, occ }
    }

    /// Highest level below which everything is occupied: `p − ℓ(λ)`.
    pub fn lowest_filled_block(&self) -> i32 {
        self.charge - self.shape.len() as i32
    }
}

impl fmt::Debug for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{},{}⟩", self.shape, self.charge)
    }
}

/// Finite window of a Maya diagram: `occ` lists occupied levels above
/// `floor` in decreasing order, everything at or below `floor` is filled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Maya {
    pub floor: i32,
    pub occ: Vec<i32>,
}

impl Maya {
    pub fn is_occupied(&self, s: i32) -> bool {
        s <= self.floor || self.occ.contains(&s)
    }

    /// Number of occupied levels strictly above `s` (requires `s ≥ floor`).
    fn above(&self, s: i32) -> usize {
        self.occ.iter().take_while(|&&t| t > s).count()
    }

    /// Wedge sign and result of creating level `s`.
    pub fn create(&self, s: i32) -> Option<(i8, Maya)> {
        debug_assert!(s > self.floor);
        if self.is_occupied(s) {
            return None;
        }
        let pos = self.above(s);
        let mut occ = self.occ.clone();
        occ.insert(pos, s);
        Some((parity(pos), Maya { floor: self.floor, occ }))
    }

    /// Wedge sign and result of annihilating level `s`.
    pub fn annihilate(&self, s: i32) -> Option<(i8, Maya)> {
        debug_assert!(s > self.floor);
        let pos = self.occ.iter().position(|&t| t == s)?;
        let mut occ = self.occ.clone();
        occ.remove(pos);
        Some((parity(pos), Maya { floor: self.floor, occ }))
    }

    pub fn to_state(&self) -> BasisState {
        let p = self.floor + self.occ.len() as i32;
        let parts: Vec<u32> = self
            .occ
            .iter()
            .enumerate()
            .map(|(i, &s)| (s - p + i as i32) as u32)
            .collect();
        let shape = Partition::new(parts).expect("Maya window encodes a partition");
        BasisState { charge: p, shape }
    }
}

fn parity(n: usize) -> i8 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `a†_{n−m} a_n` summed over levels: every `(n, result, sign)` with a
/// nonzero outcome, for `m ≠ 0`.
pub fn hops(state: &BasisState, m: i32) -> Vec<(i32, BasisState, i8)> {
    assert!(m != 0, "diagonal bilinears are handled by eigenvalues");
    let maya = state.maya(state.lowest_filled_block() - m.abs());
    let mut out = Vec::new();
    for &n in &maya.occ {
        let target = n - m;
        if maya.is_occupied(target) {
            continue;
        }
        let (s1, removed) = maya.annihilate(n).expect("level is occupied");
        let (s2, created) = removed.create(target).expect("target is vacant");
        out.push((n, created.to_state(), s1 * s2));
    }
    out
}

/// Eigenvalue of `Σ_n c(n) :a†_n a_n:`, i.e. `Σ_{s occupied, s>0} c(s) −
/// Σ_{s vacant, s≤0} c(s)`.
pub fn diagonal_eigenvalue<T, F>(state: &BasisState, c: F) -> T
where
    T: std::ops::AddAssign + std::ops::SubAssign + Default,
    F: Fn(i32) -> T,
{
    let maya = state.maya(0);
    let mut total = T::default();
    for &s in &maya.occ {
        if s > 0 {
            total += c(s);
        }
    }
    for s in (maya.floor + 1)..=0 {
        if !maya.occ.contains(&s) {
            total -= c(s);
        }
    }
    total
}

/// Every `|λ,p⟩` with `p` in `charges` and `|λ| ≤ max_energy`, sorted.
pub fn basis_states(charges: impl IntoIterator<Item = i32>, max_energy: u32) -> Vec<BasisState> {
    let parts = enumerate_partitions(max_energy);
    let mut out: Vec<BasisState> = charges
        .into_iter()
        .flat_map(|p| parts.iter().map(move |l| BasisState::new(l.clone(), p)))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(v: &[u32], p: i32) -> BasisState {
        BasisState::new(Partition::new(v.to_vec()).unwrap(), p)
    }

    #[test]
    fn maya_round_trip() {
        for s in basis_states(-3..=3, 6) {
            for extra in 0..3 {
                let m = s.maya(s.lowest_filled_block() - extra);
                assert_eq!(m.to_state(), s);
            }
        }
        let m = st(&[2, 1], 0).maya(-3);
        assert_eq!(m.occ, vec![2, 0, -2]);
    }

    #[test]
    fn charge_and_energy_eigenvalues() {
        for s in basis_states(-3..=3, 5) {
            let charge: i64 = diagonal_eigenvalue(&s, |_| 1i64);
            assert_eq!(charge, s.charge as i64);
            let l0: i64 = diagonal_eigenvalue(&s, |n| n as i64);
            let p = s.charge as i64;
            assert_eq!(l0, s.energy() as i64 + p * (p + 1) / 2);
        }
    }

    #[test]
    fn single_box_hop() {
        // J_{-1} moves the top particle of |0⟩ from level 0 to level 1.
        let out = hops(&BasisState::vacuum(0), -1);
        assert_eq!(out, vec![(0, st(&[1], 0), 1)]);
        let back = hops(&st(&[1], 0), 1);
        assert_eq!(back, vec![(1, BasisState::vacuum(0), 1)]);
    }
}
