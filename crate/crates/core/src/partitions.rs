//! Integer partitions, interlacing, and plane partitions read through their
//! diagonal slices.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition `λ_1 ≥ λ_2 ≥ … > 0`.
///
/// Ordering is graded lexicographic: by weight first, then larger parts
/// first, so `(2)` precedes `(1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Validates weak decrease; trailing zeros are stripped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has an interior zero")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `λ_i` with 1-based `i`, zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1) as usize;
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p as usize >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Boxes `(i, j)`, 1-based, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let inner: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", inner.join(","))
    }
}

/// Partitions of exactly `n`, larger parts first.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every partition with `|λ| ≤ max_weight`, in graded lexicographic order.
pub fn enumerate_partitions(max_weight: u32) -> Vec<Partition> {
    (0..=max_weight).flat_map(partitions_of).collect()
}

/// `λ ≻ μ`: `λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ …`, i.e. `λ/μ` is a horizontal strip.
pub fn interlaces(lam: &Partition, mu: &Partition) -> bool {
    if mu.len() > lam.len() {
        return false;
    }
    (1..=lam.len()).all(|i| lam.part(i) >= mu.part(i) && mu.part(i) >= lam.part(i + 1))
}

/// All `μ ≺ λ` (horizontal strips removed from `λ`), including `λ` itself.
pub fn interlaced_below(lam: &Partition) -> Vec<Partition> {
    let n = lam.len();
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, lam: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == cur.len() {
            let mut parts = cur.clone();
            while parts.last() == Some(&0) {
                parts.pop();
            }
            out.push(Partition { parts });
            return;
        }
        for v in lam.part(i + 2)..=lam.part(i + 1) {
            cur[i] = v;
            rec(i + 1, lam, cur, out);
        }
    }
    rec(0, lam, &mut cur, &mut out);
    out.sort();
    out
}

/// All `μ ≻ λ` with `|μ| − |λ| ≤ max_added`.
pub fn interlaced_above(lam: &Partition, max_added: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    // μ_1 ≥ λ_1 unbounded above; μ_{i+1} ∈ [λ_{i+1}, λ_i]
    fn rec(i: usize, budget: u32, lam: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == lam.len() + 1 {
            let mut parts = cur.clone();
            while parts.last() == Some(&0) {
                parts.pop();
            }
            out.push(Partition { parts });
            return;
        }
        let lo = lam.part(i + 1);
        let hi = if i == 0 { lo + budget } else { lam.part(i).min(lo + budget) };
        for v in lo..=hi {
            cur.push(v);
            rec(i + 1, budget - (v - lo), lam, cur, out);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(0, max_added, lam, &mut cur, &mut out);
    out.sort();
    out
}

/// Hook lengths of every box, sorted in decreasing order.
pub fn hook_lengths(lam: &Partition) -> Vec<u32> {
    let conj = lam.conjugate();
    let mut hooks: Vec<u32> = lam
        .cells()
        .map(|(i, j)| lam.part(i) - j as u32 + conj.part(j) - i as u32 + 1)
        .collect();
    hooks.sort_unstable_by(|a, b| b.cmp(a));
    hooks
}

/// `n(λ) = Σ_i (i − 1) λ_i`.
pub fn n_stat(lam: &Partition) -> u32 {
    lam.parts.iter().enumerate().map(|(i, &p)| i as u32 * p).sum()
}

/// A plane partition, stored as its nonzero rows with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    pub fn empty() -> Self {
        PlanePartition { rows: Vec::new() }
    }

    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut rows: Vec<Vec<u32>> = rows
            .into_iter()
            .map(|mut r| {
                while r.last() == Some(&0) {
                    r.pop();
                }
                r
            })
            .collect();
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        let at = |rows: &Vec<Vec<u32>>, i: usize, j: usize| rows.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0);
        for i in 0..rows.len() {
            for j in 0..rows[i].len() {
                let v = rows[i][j];
                if v == 0 || v < at(&rows, i, j + 1) || v < at(&rows, i + 1, j) {
                    return Err(Error::InvalidPartition(format!("not a plane partition: {rows:?}")));
                }
            }
            if i + 1 < rows.len() && rows[i + 1].len() > rows[i].len() {
                return Err(Error::InvalidPartition(format!("not a plane partition: {rows:?}")));
            }
        }
        Ok(PlanePartition { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn volume(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }

    /// `π_{ij}` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> u32 {
        if i == 0 || j == 0 {
            return 0;
        }
        self.rows.get(i - 1).and_then(|r| r.get(j - 1)).copied().unwrap_or(0)
    }
}

impl TryFrom<Vec<Vec<u32>>> for PlanePartition {
    type Error = Error;
    fn try_from(v: Vec<Vec<u32>>) -> Result<Self> {
        PlanePartition::new(v)
    }
}

impl From<PlanePartition> for Vec<Vec<u32>> {
    fn from(p: PlanePartition) -> Self {
        p.rows
    }
}

impl fmt::Debug for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

/// Nonempty diagonal slices `π(m)`: `(π_{i,i+m})_i` for `m ≥ 0` and
/// `(π_{j−m,j})_j` for `m < 0`.
pub fn diagonal_slices(pi: &PlanePartition) -> BTreeMap<i32, Partition> {
    let h = pi.rows.len() as i32;
    let w = pi.rows.first().map_or(0, |r| r.len()) as i32;
    let mut out = BTreeMap::new();
    for m in (1 - h)..w {
        let parts: Vec<u32> = if m >= 0 {
            (1..).map(|i| pi.entry(i, i + m as usize)).take_while(|&v| v > 0).collect()
        } else {
            (1..).map(|j| pi.entry(j + (-m) as usize, j)).take_while(|&v| v > 0).collect()
        };
        if !parts.is_empty() {
            out.insert(m, Partition { parts });
        }
    }
    out
}

/// Rebuilds `π` from its slices, checking `⋯ ≺ π(−1) ≺ π(0) ≻ π(1) ≻ ⋯`.
pub fn from_slices(slices: &BTreeMap<i32, Partition>) -> Result<PlanePartition> {
    let empty = Partition::empty();
    let get = |m: i32| slices.get(&m).unwrap_or(&empty);
    let lo = slices.keys().next().copied().unwrap_or(0).min(0);
    let hi = slices.keys().next_back().copied().unwrap_or(0).max(0);
    for m in 0..=hi {
        if !interlaces(get(m), get(m + 1)) {
            return Err(Error::BrokenChain { index: m + 1 });
        }
    }
    for m in (lo..=0).rev() {
        if !interlaces(get(m), get(m - 1)) {
            return Err(Error::BrokenChain { index: m - 1 });
        }
    }
    let h = (1 - lo) as usize + get(0).len();
    let w = (1 + hi) as usize + get(0).len();
    let mut rows = vec![vec![0u32; w]; h];
    for (&m, lam) in slices {
        for (k, &v) in lam.parts().iter().enumerate() {
            let (i, j) = if m >= 0 { (k, k + m as usize) } else { (k + (-m) as usize, k) };
            rows[i][j] = v;
        }
    }
    PlanePartition::new(rows)
}

/// Chains `λ ≻ μ_1 ≻ μ_2 ≻ … ≻ ∅` of nonempty `μ`s with total weight ≤ `budget`.
fn descending_chains(lam: &Partition, budget: u32) -> Vec<Vec<Partition>> {
    let mut out = Vec::new();
    if lam.len() <= 1 {
        out.push(Vec::new());
    }
    for mu in interlaced_below(lam) {
        if mu.is_empty() || mu.weight() > budget {
            continue;
        }
        for mut tail in descending_chains(&mu, budget - mu.weight()) {
            tail.insert(0, mu.clone());
            out.push(tail);
        }
    }
    out
}

/// Every plane partition of volume ≤ `max_volume`, generated from slice
/// sequences and sorted by volume, then row-major entries.
pub fn enumerate_plane_partitions(max_volume: u32) -> Vec<PlanePartition> {
    let mut out = Vec::new();
    for lam in enumerate_partitions(max_volume) {
        let budget = max_volume - lam.weight();
        let chains = descending_chains(&lam, budget);
        let weight = |c: &Vec<Partition>| c.iter().map(Partition::weight).sum::<u32>();
        for right in &chains {
            let wr = weight(right);
            for left in &chains {
                if wr + weight(left) > budget {
                    continue;
                }
                let mut slices = BTreeMap::new();
                slices.insert(0, lam.clone());
                for (k, mu) in right.iter().enumerate() {
                    slices.insert(k as i32 + 1, mu.clone());
                }
                for (k, mu) in left.iter().enumerate() {
                    slices.insert(-(k as i32) - 1, mu.clone());
                }
                if lam.is_empty() {
                    slices.clear();
                }
                out.push(from_slices(&slices).expect("chains interlace by construction"));
            }
        }
    }
    out.sort_by(|a, b| a.volume().cmp(&b.volume()).then_with(|| a.rows.cmp(&b.rows)));
    out
}

/// `2 Σ_{m≥0} (m + ½)(|π(±m)| − |π(±(m+1))|)` summed over both tails; equals
/// `2|π|` for every plane partition.
pub fn doubled_tableau_weight(pi: &PlanePartition) -> u64 {
    let slices = diagonal_slices(pi);
    let size = |m: i32| slices.get(&m).map_or(0, |p| p.weight()) as i64;
    let reach = slices.keys().map(|m| m.abs()).max().unwrap_or(0) + 1;
    let mut total = 0i64;
    for m in 0..=reach {
        total += (2 * m as i64 + 1) * (size(-m) - size(-m - 1));
        total += (2 * m as i64 + 1) * (size(m) - size(m + 1));
    }
    total as u64
}
