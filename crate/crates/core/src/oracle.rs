//! Independent brute-force ground truth.
//!
//! Everything in this module is deliberately naive and shares no arithmetic
//! with the expansion engine:
//!
//! * partitions are enumerated as explicit decreasing part lists, and the
//!   rank / crank / two-colored-birank statistics are computed per partition
//! * partition counts come from two further independent routes — the
//!   pentagonal-number recurrence and a coin-style convolution table — so
//!   the routes can be played against each other
//! * `oracle_product_coefficients` re-expands a product spec by termwise
//!   multiplication over nested exponent maps, using geometric series for
//!   negative exponents instead of the engine's inversion recurrence
//!
//! The crank here follows the Andrews–Garvan definition.  Its generating
//! product famously disagrees with the partition statistic at n = 1 (the
//! product gives coefficients zeta - 1 + zeta^(-1); the single partition of
//! 1 has crank -1); comparisons account for that single exponent.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::elliptic::EllipticPolynomial;
use crate::product::{NamedFactor, ProductSpec, SpecError};
use crate::series::FourierSeries;

/// Streams the partitions of n as decreasing part lists, each exactly once,
/// in decreasing lexicographic order starting from [n].
pub fn enumerate_partitions(n: u32) -> Partitions {
    let first = if n == 0 { Vec::new() } else { vec![n] };
    Partitions { current: Some(first) }
}

pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Iterator for Partitions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        self.current = advance_partition(out.clone());
        Some(out)
    }
}

/// Successor in decreasing lexicographic order: decrement the rightmost
/// part above 1 and repack everything after it greedily.
fn advance_partition(mut a: Vec<u32>) -> Option<Vec<u32>> {
    let pivot = a.iter().rposition(|&x| x > 1)?;
    let mut budget = (a.len() - pivot - 1) as u32 + 1;
    let cap = a[pivot] - 1;
    a.truncate(pivot);
    a.push(cap);
    while budget > 0 {
        let part = budget.min(cap);
        a.push(part);
        budget -= part;
    }
    Some(a)
}

/// Dyson rank: largest part minus number of parts (0 for the empty
/// partition).
pub fn rank(parts: &[u32]) -> i64 {
    match parts.first() {
        Some(&largest) => largest as i64 - parts.len() as i64,
        None => 0,
    }
}

/// Andrews–Garvan crank: the largest part when no part equals 1; otherwise
/// (number of parts larger than the number of ones) - (number of ones).
/// The empty partition gets 0.
pub fn crank(parts: &[u32]) -> i64 {
    let ones = parts.iter().filter(|&&x| x == 1).count() as i64;
    if ones == 0 {
        parts.first().copied().unwrap_or(0) as i64
    } else {
        let above = parts.iter().filter(|&&x| x as i64 > ones).count() as i64;
        above - ones
    }
}

/// Two-colored birank (Hammond–Lewis): number of parts in the first color
/// minus number of parts in the second.
pub fn birank(first: &[u32], second: &[u32]) -> i64 {
    first.len() as i64 - second.len() as i64
}

/// Partition statistic whose residue distribution a table counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    Rank,
    Crank,
    /// Two-colored birank over pairs of partitions.
    ColoredResidual,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::Rank => "rank",
            Statistic::Crank => "crank",
            Statistic::ColoredResidual => "colored-residual",
        })
    }
}

impl serde::Serialize for Statistic {
    /// Serializes as the display name ("rank", "crank", "colored-residual").
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Residue-class census of a statistic over the (colored) partitions of n.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RankTable {
    pub n: u32,
    pub ell: u32,
    pub statistic: Statistic,
    /// counts[r] = number of partitions with statistic ≡ r (mod ell).
    pub counts: Vec<u64>,
}

impl RankTable {
    /// Stanton's criterion: every residue class is hit equally often.
    pub fn is_equidistributed(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] == w[1])
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Counts the statistic's residues over all partitions of n (or pairs of
/// partitions for the two-colored statistic).
pub fn rank_table(n: u32, ell: u32, statistic: Statistic) -> RankTable {
    assert!(ell >= 1, "need a positive residue modulus");
    let mut counts = vec![0u64; ell as usize];
    match statistic {
        Statistic::Rank => {
            for p in enumerate_partitions(n) {
                counts[rank(&p).rem_euclid(ell as i64) as usize] += 1;
            }
        }
        Statistic::Crank => {
            for p in enumerate_partitions(n) {
                counts[crank(&p).rem_euclid(ell as i64) as usize] += 1;
            }
        }
        Statistic::ColoredResidual => {
            // Only the part counts matter for the birank.
            let lengths: Vec<Vec<i64>> = (0..=n)
                .map(|j| enumerate_partitions(j).map(|p| p.len() as i64).collect())
                .collect();
            for j in 0..=n {
                for l1 in &lengths[j as usize] {
                    for l2 in &lengths[(n - j) as usize] {
                        counts[(l1 - l2).rem_euclid(ell as i64) as usize] += 1;
                    }
                }
            }
        }
    }
    RankTable { n, ell, statistic, counts }
}

/// Exact p(n) by the pentagonal-number recurrence
/// p(n) = sum_{k >= 1} (-1)^(k-1) (p(n - k(3k-1)/2) + p(n - k(3k+1)/2)).
pub fn partition_count(n: usize) -> BigInt {
    let mut table: Vec<BigInt> = Vec::with_capacity(n + 1);
    table.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign_positive = k % 2 == 1;
            let mut term = table[m - g1].clone();
            let g2 = g1 + k;
            if g2 <= m {
                term += &table[m - g2];
            }
            if sign_positive {
                acc += term;
            } else {
                acc -= term;
            }
            k += 1;
        }
        table.push(acc);
    }
    table.pop().expect("table holds n + 1 entries")
}

/// p(n) mod ell by the same recurrence in word-sized arithmetic:
/// O(n^(3/2)) additions.
pub fn partition_mod_recurrence(n: usize, ell: u32) -> u64 {
    assert!(ell >= 1);
    let ell = ell as i64;
    let mut table: Vec<i64> = Vec::with_capacity(n + 1);
    table.push(1 % ell);
    for m in 1..=n {
        let mut acc = 0i64;
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let mut term = table[m - g1];
            let g2 = g1 + k;
            if g2 <= m {
                term += table[m - g2];
            }
            acc += if k % 2 == 1 { term } else { -term };
            k += 1;
        }
        table.push(acc.rem_euclid(ell));
    }
    table[n] as u64
}

/// Number of k-colored partitions of n: the coefficient of q^n in
/// prod_m (1 - q^m)^(-k), computed by a coin-style table convolved k times.
pub fn colored_partition_count(k: u32, n: usize) -> BigInt {
    assert!(k >= 1, "need at least one color");
    // One color: dp over allowed part sizes.
    let mut one_color = vec![BigInt::zero(); n + 1];
    one_color[0] = BigInt::one();
    for part in 1..=n.max(1) {
        for total in part..=n {
            let add = one_color[total - part].clone();
            one_color[total] += add;
        }
    }
    let mut acc = one_color.clone();
    for _ in 1..k {
        let mut next = vec![BigInt::zero(); n + 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in one_color.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    next[i + j] += a * b;
                }
            }
        }
        acc = next;
    }
    acc[n].clone()
}

// ---------------------------------------------------------------------------
// Naive product re-expansion.
//
// Series are nested maps: integer q-exponent -> (z-exponent in 1/denom_z
// units -> coefficient).  All multiplication is termwise; negative factor
// exponents expand as geometric series 1/(1 - X) = 1 + X + X^2 + ...
// ---------------------------------------------------------------------------

type ZSlice = BTreeMap<i64, BigInt>;
type QTable = BTreeMap<i64, ZSlice>;

fn zslice_mul(a: &ZSlice, b: &ZSlice) -> ZSlice {
    let mut out = ZSlice::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let entry = out.entry(ka + kb).or_insert_with(BigInt::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn qtable_mul(a: &QTable, b: &QTable, bound: i64) -> QTable {
    let mut out = QTable::new();
    for (ka, sa) in a {
        for (kb, sb) in b {
            if ka + kb >= bound {
                break;
            }
            let slot = out.entry(ka + kb).or_default();
            for (kz, cz) in zslice_mul(sa, sb) {
                let entry = slot.entry(kz).or_insert_with(BigInt::zero);
                *entry += cz;
            }
        }
    }
    out.retain(|_, s| {
        s.retain(|_, c| !c.is_zero());
        !s.is_empty()
    });
    out
}

/// 1 - q^m * zeta^(h/denom_z) as a table.
fn binomial_factor(m: i64, h: i64) -> QTable {
    let mut t = QTable::new();
    t.entry(0).or_default().insert(0, BigInt::one());
    let slot = t.entry(m).or_default();
    let entry = slot.entry(h).or_insert_with(BigInt::zero);
    *entry -= BigInt::one();
    t.retain(|_, s| {
        s.retain(|_, c| !c.is_zero());
        !s.is_empty()
    });
    t
}

/// 1/(1 - q^m * zeta^(h/denom_z)) = sum_j q^(j m) zeta^(j h / denom_z),
/// exact below the bound (m >= 1).
fn geometric_factor(m: i64, h: i64, bound: i64) -> QTable {
    assert!(m >= 1, "geometric expansion needs positive q-valuation");
    let mut t = QTable::new();
    let mut j = 0;
    while j * m < bound {
        t.entry(j * m).or_default().insert(j * h, BigInt::one());
        j += 1;
    }
    t
}

/// Multiplies in the family prod_{n} (1 - q^(start + n*step) zeta^h)^e,
/// factor instance by factor instance.
fn apply_family(acc: QTable, start: i64, step: i64, h: i64, e: i32, bound: i64) -> QTable {
    let mut acc = acc;
    let mut m = start;
    while m < bound {
        if e > 0 {
            let f = binomial_factor(m, h);
            for _ in 0..e {
                acc = qtable_mul(&acc, &f, bound);
            }
        } else {
            let f = geometric_factor(m, h, bound);
            for _ in 0..(-e) {
                acc = qtable_mul(&acc, &f, bound);
            }
        }
        m += step;
    }
    acc
}

/// Independent re-expansion of a product spec: the same compensated series
/// as elaboration, computed with none of the engine's series arithmetic.
pub fn oracle_product_coefficients(
    spec: &ProductSpec,
    n_max: i64,
) -> Result<FourierSeries, SpecError> {
    assert!(n_max >= 0);
    let denom_z = spec.z_denom();
    let half = denom_z / 2;

    // Pole bookkeeping, re-derived from scratch: one factor of
    // s = zeta^(1/2) - zeta^(-1/2) per theta and per n = 0 Pochhammer
    // factor, with sign, monomial, and u_a cofactors tracked by hand.
    let mut s_tally: i64 = 0;
    let mut negative = false;
    let mut mono: i64 = spec.z_prefactor().numer() * (denom_z / spec.z_prefactor().denom());
    let mut cofactors: BTreeMap<i64, i64> = BTreeMap::new();
    for f in spec.named_factors() {
        if let NamedFactor::Theta { arg, exponent } = *f {
            s_tally += exponent as i64;
            if arg < 0 && exponent.rem_euclid(2) == 1 {
                negative = !negative;
            }
            if arg.abs() > 1 {
                *cofactors.entry(arg.abs()).or_insert(0) += exponent as i64;
            }
        }
    }
    for p in spec.pochhammer_factors() {
        if p.offset == 0 {
            s_tally += p.exponent as i64;
            if p.shift > 0 && p.exponent.rem_euclid(2) == 1 {
                negative = !negative;
            }
            mono += p.exponent as i64 * p.shift * half;
            if p.shift.abs() > 1 {
                *cofactors.entry(p.shift.abs()).or_insert(0) += p.exponent as i64;
            }
        }
    }
    let pole = (-s_tally).max(0);
    let s_power = s_tally + pole;

    let mut prefactor = ZSlice::new();
    prefactor.insert(mono, if negative { -BigInt::one() } else { BigInt::one() });
    for (&a, &net) in &cofactors {
        if net < 0 {
            return Err(SpecError::ResidualPole { arg: a });
        }
        let mut u = ZSlice::new();
        for j in 0..a {
            u.insert((a - 1 - 2 * j) * half, BigInt::one());
        }
        for _ in 0..net {
            prefactor = zslice_mul(&prefactor, &u);
        }
    }
    let mut s = ZSlice::new();
    s.insert(half, BigInt::one());
    s.insert(-half, -BigInt::one());
    for _ in 0..s_power {
        prefactor = zslice_mul(&prefactor, &s);
    }

    let mut acc = QTable::new();
    acc.insert(0, prefactor);
    for f in spec.named_factors() {
        match *f {
            NamedFactor::Eta { period, exponent } => {
                acc = apply_family(acc, period, period, 0, exponent, n_max);
            }
            NamedFactor::Theta { arg, exponent } => {
                acc = apply_family(acc, 1, 1, 0, exponent, n_max);
                acc = apply_family(acc, 1, 1, arg * denom_z, exponent, n_max);
                acc = apply_family(acc, 1, 1, -arg * denom_z, exponent, n_max);
            }
        }
    }
    for p in spec.pochhammer_factors() {
        let start = if p.offset == 0 { p.step } else { p.offset };
        acc = apply_family(acc, start, p.step, p.shift * denom_z, p.exponent, n_max);
    }

    let denom_q = spec.q_denom();
    let shift = spec.q_shift();
    let shift_key = shift.numer() * (denom_q / shift.denom());
    let bound = n_max.saturating_mul(denom_q).saturating_add(shift_key);
    let mut out = FourierSeries::zero(denom_q, bound);
    for (k, slice) in acc {
        let coeff =
            EllipticPolynomial::from_terms(denom_z, slice.iter().map(|(h, c)| (*h, c.clone())));
        out.set_coefficient(k * denom_q + shift_key, coeff);
    }
    Ok(out)
}
