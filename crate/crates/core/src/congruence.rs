//! Congruence detection, explainability, square-class orbits, and
//! maximality bounds.
//!
//! A query asks about a prime ell and a progression M*Z + beta of exponents:
//!
//! * `detect_congruence` checks the plain statement ell | c(f; n) for all
//!   supported n ≡ beta (mod M) in the evidence range
//! * `check_explainable` checks the stronger statement that the ell-th
//!   cyclotomic polynomial in e(z) divides the coefficient c~(n; z) for all
//!   such n — every divisibility verdict is cross-asserted against the
//!   independent torsion-vanishing route, and every divisible coefficient is
//!   cross-asserted to have an ell-divisible value at z = 0 (divisibility
//!   evaluates at e(z) = 1 to a factor of ell)
//! * `square_class_orbit` and `verify_square_class_theorem` chase a verified
//!   congruence around its orbit { u^2 * beta mod M }; a non-vacuous failure
//!   there contradicts the square-class theorem and is surfaced as a
//!   violation (in practice: an engine bug)
//! * `check_maximality_bounds` tests the prime-power bounds ord_p(M) <=
//!   max(0, ord_p(beta) + 1) for odd p and ord_2(M) <= max(0, ord_2(beta)
//!   + 3) that maximal explainable progressions satisfy
//! * `scan_maximal_progressions` sweeps all classes up to a modulus limit
//!   and keeps the inclusion-maximal congruent progressions
//!
//! All verdicts are evidence-based: they certify the checked range only,
//! and reports carry the count of points actually examined.  Progressions
//! whose class misses the support coset entirely are *vacuous*: reported as
//! (trivially) congruent but carrying no evidence, and never treated as a
//! theorem violation.

use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::jacobi::{JacobiExpansion, Specialization};

/// Minimum number of supported points a verdict must rest on by default.
pub const DEFAULT_MIN_EVIDENCE: i64 = 10;

/// Errors from congruence analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    /// The modulus of the congruence (the divisor of the coefficients) must
    /// be prime.
    NotPrime { ell: u32 },
    /// The progression modulus must be positive.
    InvalidModulus { modulus: i64 },
    /// Fewer supported points fall in the evidence range than required for
    /// a verdict.
    InsufficientRange { available: i64, required: i64 },
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::NotPrime { ell } => {
                write!(f, "congruences are analyzed modulo a prime; {} is not prime", ell)
            }
            AnalysisError::InvalidModulus { modulus } => {
                write!(f, "progression modulus must be >= 1, got {}", modulus)
            }
            AnalysisError::InsufficientRange { available, required } => write!(
                f,
                "only {} supported points in range, need at least {}",
                available, required
            ),
        }
    }
}

impl std::error::Error for AnalysisError {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Which units u generate the square-class orbit { u^2 * beta mod M }.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoprimalityMode {
    /// gcd(u, M * denom(beta)) = 1: u^2 * beta never leaves the rational
    /// coset beta + Z, so no orbit element is vacuous.  The default.
    #[default]
    SupportPreserving,
    /// gcd(u, M) = 1, the theorem's literal hypothesis; orbit elements may
    /// exit the support coset and show up as vacuous reports.
    Literal,
}

/// A congruence question: does ell divide c(f; n) for all supported
/// n ≡ beta (mod modulus) below n_max?
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CongruenceQuery {
    ell: u32,
    modulus: i64,
    beta: Rational64,
    n_max: i64,
}

impl CongruenceQuery {
    pub fn new(ell: u32, modulus: i64, beta: Rational64, n_max: i64) -> Result<Self, AnalysisError> {
        if !is_prime(ell) {
            return Err(AnalysisError::NotPrime { ell });
        }
        if modulus < 1 {
            return Err(AnalysisError::InvalidModulus { modulus });
        }
        Ok(CongruenceQuery { ell, modulus, beta, n_max })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn beta(&self) -> Rational64 {
        self.beta
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    pub fn with_beta(&self, beta: Rational64) -> Self {
        CongruenceQuery { beta, ..*self }
    }
}

/// Outcome of a congruence analysis.  `orbit` is populated only by
/// orbit-level runs; plain reports leave it empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub query: CongruenceQuery,
    /// ell divides every checked coefficient of the specialized form.
    pub holds_plain: bool,
    pub first_counterexample: Option<Rational64>,
    /// The cyclotomic divisibility held at every checked exponent.  Plain
    /// detection (no expansion available) reports false.
    pub explainable: bool,
    pub failing_n: Option<Rational64>,
    /// The progression misses the support coset: congruent by emptiness,
    /// counted as no evidence at all.
    pub vacuous: bool,
    pub checked_count: i64,
    pub orbit: Vec<CongruenceReport>,
}

impl CongruenceReport {
    fn vacuous(query: CongruenceQuery) -> Self {
        CongruenceReport {
            query,
            holds_plain: true,
            first_counterexample: None,
            explainable: true,
            failing_n: None,
            vacuous: true,
            checked_count: 0,
            orbit: Vec::new(),
        }
    }
}

/// Supported keys of the restricted lattice below both the truncation and
/// the query's n_max, or `None` when the progression is off-coset.
fn evidence_keys(
    lattice: Option<crate::jacobi::Lattice>,
    denom: i64,
    bound: i64,
    query: &CongruenceQuery,
    min_evidence: i64,
) -> Result<Option<Vec<i64>>, AnalysisError> {
    let lattice = match lattice {
        Some(l) => l,
        None => return Ok(None),
    };
    let limit = bound.min(query.n_max.saturating_mul(denom));
    let keys: Vec<i64> = lattice.keys_below(limit).collect();
    if (keys.len() as i64) < min_evidence {
        return Err(AnalysisError::InsufficientRange {
            available: keys.len() as i64,
            required: min_evidence,
        });
    }
    Ok(Some(keys))
}

/// Checks ell | c(f; n) over the progression; the first counterexample (in
/// exponent order) is recorded.
pub fn detect_congruence(
    f: &Specialization,
    query: &CongruenceQuery,
    min_evidence: i64,
) -> Result<CongruenceReport, AnalysisError> {
    let restricted = f.restrict(query.modulus, query.beta);
    let keys = match evidence_keys(
        restricted.lattice(),
        restricted.denom(),
        restricted.bound(),
        query,
        min_evidence,
    )? {
        Some(keys) => keys,
        None => return Ok(CongruenceReport::vacuous(*query)),
    };
    let ell = num_bigint::BigInt::from(query.ell);
    let mut first_counterexample = None;
    let mut checked = 0i64;
    for &key in &keys {
        checked += 1;
        if !(restricted.value_at_key(key) % &ell).is_zero() {
            first_counterexample = Some(Rational64::new(key, restricted.denom()));
            break;
        }
    }
    Ok(CongruenceReport {
        query: *query,
        holds_plain: first_counterexample.is_none(),
        first_counterexample,
        explainable: false,
        failing_n: None,
        vacuous: false,
        checked_count: checked,
        orbit: Vec::new(),
    })
}

/// Checks cyclotomic divisibility of every c~(n; z) over the progression,
/// and the plain congruence of the specialized values alongside it.
///
/// Two independent routes decide each exponent — polynomial division by the
/// cyclotomic factor, and vanishing at all order-ell torsion points — and
/// must agree; divisibility must also force ell | c(f; n).  Disagreement
/// panics: it would mean the engine's arithmetic is inconsistent.
pub fn check_explainable(
    phi: &JacobiExpansion,
    query: &CongruenceQuery,
    min_evidence: i64,
) -> Result<CongruenceReport, AnalysisError> {
    let restricted = phi.restrict(query.modulus, query.beta);
    let keys = match evidence_keys(
        restricted.lattice(),
        restricted.denom(),
        restricted.series().bound(),
        query,
        min_evidence,
    )? {
        Some(keys) => keys,
        None => return Ok(CongruenceReport::vacuous(*query)),
    };
    let ell_int = num_bigint::BigInt::from(query.ell);
    let mut failing_n = None;
    let mut first_counterexample = None;
    for &key in &keys {
        let c = restricted.series().coefficient(key);
        let divisible = c.cyclotomic_quotient(query.ell).is_some();
        let vanishes = c.vanishes_at_torsion(query.ell);
        assert_eq!(
            divisible, vanishes,
            "cyclotomic division and torsion vanishing disagree at exponent {}/{} \
             for ell = {}: coefficient {}",
            key,
            restricted.denom(),
            query.ell,
            c
        );
        let value = c.eval_at_one();
        let value_divisible = (&value % &ell_int).is_zero();
        assert!(
            !divisible || value_divisible,
            "divisibility must specialize to a multiple of ell at exponent {}/{}",
            key,
            restricted.denom()
        );
        if !divisible && failing_n.is_none() {
            failing_n = Some(Rational64::new(key, restricted.denom()));
        }
        if !value_divisible && first_counterexample.is_none() {
            first_counterexample = Some(Rational64::new(key, restricted.denom()));
        }
    }
    Ok(CongruenceReport {
        query: *query,
        holds_plain: first_counterexample.is_none(),
        first_counterexample,
        explainable: failing_n.is_none(),
        failing_n,
        vacuous: false,
        checked_count: keys.len() as i64,
        orbit: Vec::new(),
    })
}

/// The orbit { u^2 * beta mod modulus } over the chosen unit group, as
/// exact rationals in ascending order.  Residues are taken on the scaled
/// lattice denom(beta) * beta modulo denom(beta) * modulus, so the results
/// are the canonical representatives in [0, modulus).
pub fn square_class_orbit(
    modulus: i64,
    beta: Rational64,
    mode: CoprimalityMode,
) -> Vec<Rational64> {
    assert!(modulus >= 1, "progression modulus must be positive");
    let d = *beta.denom();
    let scaled_modulus = modulus * d;
    let x = beta.numer().rem_euclid(scaled_modulus);
    let coprime_to = match mode {
        CoprimalityMode::SupportPreserving => scaled_modulus,
        CoprimalityMode::Literal => modulus,
    };
    let mut classes = std::collections::BTreeSet::new();
    for u in 0..scaled_modulus.max(1) {
        if u.gcd(&coprime_to) != 1 {
            continue;
        }
        // u^2 * x mod (modulus * d), reduced via i128 to dodge overflow.
        let u2 = (u as i128 * u as i128) % scaled_modulus as i128;
        let class = (u2 * x as i128).rem_euclid(scaled_modulus as i128) as i64;
        classes.insert(class);
    }
    if classes.is_empty() {
        // modulus * d = 1: the only class is beta itself.
        classes.insert(x);
    }
    classes.into_iter().map(|r| Rational64::new(r, d)).collect()
}

/// Runs [`check_explainable`] on every element of the square-class orbit of
/// the query's progression.  Reports come back in orbit order; any
/// non-vacuous element that fails explainability contradicts the
/// square-class theorem (see [`orbit_violations`]).
pub fn verify_square_class_theorem(
    phi: &JacobiExpansion,
    query: &CongruenceQuery,
    mode: CoprimalityMode,
    min_evidence: i64,
) -> Result<Vec<CongruenceReport>, AnalysisError> {
    square_class_orbit(query.modulus, query.beta, mode)
        .into_iter()
        .map(|beta| check_explainable(phi, &query.with_beta(beta), min_evidence))
        .collect()
}

/// Orbit elements that non-vacuously fail explainability.  For a verified
/// base congruence this list must be empty; anything else indicates an
/// engine bug.
pub fn orbit_violations(reports: &[CongruenceReport]) -> Vec<Rational64> {
    reports
        .iter()
        .filter(|r| !r.vacuous && !r.explainable)
        .map(|r| r.query.beta())
        .collect()
}

/// Bound check for one prime factor of the progression modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct PrimeBound {
    pub prime: i64,
    /// ord_p of the modulus.
    pub ord_modulus: u32,
    /// ord_p of beta (None encodes beta = 0, i.e. +infinity).
    pub ord_beta: Option<i32>,
    /// The admissible maximum for ord_p of the modulus.
    pub limit: u32,
    pub ok: bool,
}

/// Outcome of the maximality bounds: progressions that are maximal among
/// explainable congruences satisfy every per-prime bound.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MaximalityCheck {
    pub ok: bool,
    pub diagnostics: Vec<PrimeBound>,
}

fn ord_in(mut n: i64, p: i64) -> u32 {
    debug_assert!(n != 0);
    let mut ord = 0;
    while n % p == 0 {
        n /= p;
        ord += 1;
    }
    ord
}

/// Tests ord_p(modulus) <= max(0, ord_p(beta) + 1) for odd primes p and
/// ord_2(modulus) <= max(0, ord_2(beta) + 3); beta = 0 satisfies both
/// trivially.
pub fn check_maximality_bounds(modulus: i64, beta: Rational64) -> MaximalityCheck {
    assert!(modulus >= 1, "progression modulus must be positive");
    let mut diagnostics = Vec::new();
    let mut remaining = modulus;
    let mut ok = true;
    let mut p = 2i64;
    while remaining > 1 {
        if remaining % p == 0 {
            let ord_modulus = ord_in(modulus, p);
            remaining /= p.pow(ord_modulus);
            let slack: i32 = if p == 2 { 3 } else { 1 };
            let (ord_beta, limit) = if beta.is_zero() {
                (None, u32::MAX)
            } else {
                let ord = ord_in(*beta.numer(), p) as i32 - ord_in(*beta.denom(), p) as i32;
                (Some(ord), (ord + slack).max(0) as u32)
            };
            let bound_ok = ord_modulus <= limit;
            ok &= bound_ok;
            diagnostics.push(PrimeBound { prime: p, ord_modulus, ord_beta, limit, ok: bound_ok });
        }
        p += if p == 2 { 1 } else { 2 };
    }
    MaximalityCheck { ok, diagnostics }
}

/// Sweeps every progression class with modulus <= modulus_max on the
/// support coset of `f`, keeps those where the plain congruence holds over
/// the evidence range, and returns the inclusion-maximal ones as
/// (modulus, beta) pairs in ascending order.
///
/// M'Z + beta' is contained in MZ + beta iff M | M' and beta' ≡ beta
/// (mod M); contained hits are dropped in favor of their coarser parent.
pub fn scan_maximal_progressions(
    f: &Specialization,
    ell: u32,
    modulus_max: i64,
    n_max: i64,
    min_evidence: i64,
) -> Result<Vec<(i64, Rational64)>, AnalysisError> {
    if !is_prime(ell) {
        return Err(AnalysisError::NotPrime { ell });
    }
    if modulus_max < 1 {
        return Err(AnalysisError::InvalidModulus { modulus: modulus_max });
    }
    let base = match f.lattice() {
        Some(l) => Rational64::new(l.start, f.denom()),
        None => return Ok(Vec::new()),
    };
    let cells: Vec<(i64, i64)> =
        (1..=modulus_max).flat_map(|m| (0..m).map(move |j| (m, j))).collect();
    let outcomes: Vec<Result<Option<(i64, Rational64)>, AnalysisError>> = cells
        .par_iter()
        .map(|&(m, j)| {
            let beta = base + Rational64::from_integer(j);
            let query = CongruenceQuery::new(ell, m, beta, n_max)?;
            let report = detect_congruence(f, &query, min_evidence)?;
            debug_assert!(!report.vacuous, "on-coset scan cells cannot be vacuous");
            Ok(report.holds_plain.then_some((m, beta)))
        })
        .collect();
    let mut hits = Vec::new();
    for outcome in outcomes {
        if let Some(hit) = outcome? {
            hits.push(hit);
        }
    }
    // Drop every hit strictly contained in another hit.  Containment is
    // checked on the scaled integer lattice to stay exact.
    let denom = f.denom();
    let maximal: Vec<(i64, Rational64)> = hits
        .iter()
        .filter(|(m, beta)| {
            !hits.iter().any(|(m2, beta2)| {
                (*m2 != *m || beta2 != beta)
                    && m % m2 == 0
                    && (beta - beta2).numer() * denom % (m2 * denom * (beta - beta2).denom())
                        == 0
            })
        })
        .copied()
        .collect();
    Ok(maximal)
}

/// A rational as a `{num, den}` record (reports render missing rationals
/// as null via `Option`).
#[derive(serde::Serialize)]
struct RationalRecord {
    num: i64,
    den: i64,
}

fn rational_record(r: &Rational64) -> RationalRecord {
    RationalRecord { num: *r.numer(), den: *r.denom() }
}

impl serde::Serialize for CongruenceQuery {
    /// Serializes as `{ell, M, beta_num, beta_den, n_max}`.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("CongruenceQuery", 5)?;
        s.serialize_field("ell", &self.ell)?;
        s.serialize_field("M", &self.modulus)?;
        s.serialize_field("beta_num", self.beta.numer())?;
        s.serialize_field("beta_den", self.beta.denom())?;
        s.serialize_field("n_max", &self.n_max)?;
        s.end()
    }
}

impl serde::Serialize for CongruenceReport {
    /// Serializes as `{query, holds_plain, explainable, vacuous,
    /// first_counterexample, failing_n, checked_count, orbit}` with
    /// rationals as `{num, den}` records or null.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("CongruenceReport", 8)?;
        s.serialize_field("query", &self.query)?;
        s.serialize_field("holds_plain", &self.holds_plain)?;
        s.serialize_field("explainable", &self.explainable)?;
        s.serialize_field("vacuous", &self.vacuous)?;
        s.serialize_field(
            "first_counterexample",
            &self.first_counterexample.as_ref().map(rational_record),
        )?;
        s.serialize_field("failing_n", &self.failing_n.as_ref().map(rational_record))?;
        s.serialize_field("checked_count", &self.checked_count)?;
        s.serialize_field("orbit", &self.orbit)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi::Lattice;
    use crate::product::{NamedFactor, ProductSpec};
    use std::collections::BTreeMap;

    fn expansion(named: Vec<NamedFactor>, terms: i64) -> JacobiExpansion {
        let spec =
            ProductSpec::new(Rational64::zero(), Rational64::zero(), named, vec![]).unwrap();
        JacobiExpansion::from_spec(&spec, terms).unwrap()
    }

    fn crank_form(terms: i64) -> JacobiExpansion {
        expansion(
            vec![
                NamedFactor::Eta { period: 1, exponent: 2 },
                NamedFactor::Theta { arg: 1, exponent: -1 },
            ],
            terms,
        )
    }

    /// 1/eta: the partition generating function with its q^(-1/24) shift.
    fn partition_form(terms: i64) -> Specialization {
        expansion(vec![NamedFactor::Eta { period: 1, exponent: -1 }], terms).specialize()
    }

    fn beta(num: i64, den: i64) -> Rational64 {
        Rational64::new(num, den)
    }

    #[test]
    fn query_validates_prime_and_modulus() {
        assert!(CongruenceQuery::new(5, 5, beta(95, 24), 100).is_ok());
        assert_eq!(
            CongruenceQuery::new(6, 5, beta(95, 24), 100).unwrap_err(),
            AnalysisError::NotPrime { ell: 6 }
        );
        assert_eq!(
            CongruenceQuery::new(1, 5, beta(95, 24), 100).unwrap_err(),
            AnalysisError::NotPrime { ell: 1 }
        );
        assert_eq!(
            CongruenceQuery::new(5, 0, beta(95, 24), 100).unwrap_err(),
            AnalysisError::InvalidModulus { modulus: 0 }
        );
    }

    #[test]
    fn partition_congruences_detected() {
        let f = partition_form(200);
        for (ell, m, b) in [(5u32, 5i64, beta(95, 24)), (7, 7, beta(119, 24)), (11, 11, beta(143, 24))]
        {
            let q = CongruenceQuery::new(ell, m, b, 200).unwrap();
            let r = detect_congruence(&f, &q, DEFAULT_MIN_EVIDENCE).unwrap();
            assert!(r.holds_plain, "p({}n + {}) mod {} must vanish", m, b, ell);
            assert!(!r.vacuous);
            assert_eq!(r.first_counterexample, None);
            assert!(r.checked_count >= 18, "200 terms give at least 18 points at M = 11");
        }
    }

    #[test]
    fn non_congruence_reports_first_counterexample() {
        let f = partition_form(100);
        // p(5n + 1) is not divisible by 5: p(1) = 1 already fails.
        let q = CongruenceQuery::new(5, 5, beta(23, 24), 100).unwrap();
        let r = detect_congruence(&f, &q, DEFAULT_MIN_EVIDENCE).unwrap();
        assert!(!r.holds_plain);
        assert_eq!(r.first_counterexample, Some(beta(23, 24)));
    }

    #[test]
    fn evidence_bookkeeping() {
        let f = partition_form(100);
        // Off-coset: vacuously congruent, zero evidence.
        let q = CongruenceQuery::new(5, 5, beta(4, 1), 100).unwrap();
        let r = detect_congruence(&f, &q, DEFAULT_MIN_EVIDENCE).unwrap();
        assert!(r.vacuous && r.holds_plain && r.explainable);
        assert_eq!(r.checked_count, 0);
        // On-coset but only 6 points below 30: not enough for a verdict.
        let q = CongruenceQuery::new(5, 5, beta(95, 24), 30).unwrap();
        assert_eq!(
            detect_congruence(&f, &q, DEFAULT_MIN_EVIDENCE).unwrap_err(),
            AnalysisError::InsufficientRange { available: 6, required: 10 }
        );
    }

    #[test]
    fn crank_explains_mod_5_and_11() {
        let phi = crank_form(121);
        for (ell, m, b) in [(5u32, 5i64, beta(95, 24)), (11, 11, beta(143, 24))] {
            let q = CongruenceQuery::new(ell, m, b, 121).unwrap();
            let r = check_explainable(&phi, &q, DEFAULT_MIN_EVIDENCE).unwrap();
            assert!(r.explainable, "cyclotomic divisibility must hold at ({}, {}, {})", ell, m, b);
            assert!(r.holds_plain, "explainable implies the plain congruence");
            assert_eq!(r.failing_n, None);
        }
    }

    #[test]
    fn crank_control_progression_is_not_explainable() {
        let phi = crank_form(60);
        let q = CongruenceQuery::new(5, 5, beta(-1, 24), 60).unwrap();
        let r = check_explainable(&phi, &q, DEFAULT_MIN_EVIDENCE).unwrap();
        assert!(!r.explainable);
        assert_eq!(r.failing_n, Some(beta(-1, 24)), "c~ at -1/24 is the unit 1");
        assert!(!r.holds_plain, "p(0) = 1 is not divisible by 5");
        assert_eq!(r.first_counterexample, Some(beta(-1, 24)));
    }

    #[test]
    fn orbits_match_hand_computations() {
        // Squares modulo 13.
        let got = square_class_orbit(13, Rational64::from_integer(1), CoprimalityMode::Literal);
        let expected: Vec<Rational64> =
            [1, 3, 4, 9, 10, 12].iter().map(|&r| Rational64::from_integer(r)).collect();
        assert_eq!(got, expected);
        // Support-preserving mode: u^2 ≡ 1 or 49 (mod 120), and both fix
        // 95 modulo 120: a genuine singleton.
        let got = square_class_orbit(5, beta(95, 24), CoprimalityMode::SupportPreserving);
        assert_eq!(got, vec![beta(95, 24)]);
        // beta = 0 is fixed by every unit.
        let got = square_class_orbit(7, Rational64::zero(), CoprimalityMode::SupportPreserving);
        assert_eq!(got, vec![Rational64::zero()]);
        // M = 10 genuinely moves 95/24: 49 * 95 ≡ 95 but 121 * 95 ≡ 215 (mod 240).
        let got = square_class_orbit(10, beta(95, 24), CoprimalityMode::SupportPreserving);
        assert_eq!(got, vec![beta(95, 24), beta(215, 24)]);
    }

    #[test]
    fn orbit_is_closed_under_square_multiplication() {
        let orbit = square_class_orbit(36, beta(5, 2), CoprimalityMode::SupportPreserving);
        for b in &orbit {
            let again = square_class_orbit(36, *b, CoprimalityMode::SupportPreserving);
            assert_eq!(again, orbit, "orbit of an orbit element is the same set");
        }
    }

    #[test]
    fn square_class_theorem_holds_on_crank_orbits() {
        let phi = crank_form(100);
        let q = CongruenceQuery::new(5, 5, beta(95, 24), 100).unwrap();
        let reports =
            verify_square_class_theorem(&phi, &q, CoprimalityMode::SupportPreserving, 10).unwrap();
        assert!(!reports.is_empty());
        assert!(reports.iter().all(|r| !r.vacuous && r.explainable));
        assert!(orbit_violations(&reports).is_empty());
        // Literal mode wanders off the -1/24 coset: those elements are
        // vacuous, flagged, and exempt from violation accounting.
        let reports =
            verify_square_class_theorem(&phi, &q, CoprimalityMode::Literal, 10).unwrap();
        assert!(reports.iter().any(|r| r.vacuous), "4 * 95/24 = 95/6 leaves the coset");
        assert!(orbit_violations(&reports).is_empty());
    }

    #[test]
    fn maximality_bounds_match_hand_checks() {
        let r = check_maximality_bounds(125, Rational64::from_integer(99));
        assert!(!r.ok);
        let five = r.diagnostics.iter().find(|d| d.prime == 5).unwrap();
        assert!(!five.ok);
        assert_eq!(five.ord_modulus, 3);
        assert_eq!(five.limit, 1);

        assert!(check_maximality_bounds(8, Rational64::from_integer(1)).ok);
        assert!(check_maximality_bounds(16, Rational64::from_integer(1)).ok == false);
        assert!(check_maximality_bounds(1, beta(95, 24)).ok);
        assert!(check_maximality_bounds(1, Rational64::zero()).ok);
        assert!(check_maximality_bounds(625, Rational64::zero()).ok, "beta = 0 has infinite ord");
        // Negative ord through the denominator: 5 in the denominator of
        // beta forbids any factor of 5 in a maximal modulus.
        assert!(!check_maximality_bounds(5, beta(1, 5)).ok);
    }

    #[test]
    fn scan_finds_the_mod_5_progression_and_nothing_mod_3() {
        let f = partition_form(300);
        let hits = scan_maximal_progressions(&f, 5, 6, 300, DEFAULT_MIN_EVIDENCE).unwrap();
        assert!(
            hits.contains(&(5, beta(95, 24))),
            "the classic mod-5 progression must be found: {:?}",
            hits
        );
        assert!(
            hits.iter().all(|(m, _)| *m == 5),
            "no other modulus <= 6 supports a mod-5 congruence: {:?}",
            hits
        );
        let none = scan_maximal_progressions(&f, 3, 6, 300, DEFAULT_MIN_EVIDENCE).unwrap();
        assert!(none.is_empty(), "p(n) has no mod-3 congruence in range: {:?}", none);
    }

    #[test]
    fn scan_on_zero_series_keeps_only_the_trivial_progression() {
        let f = Specialization::from_parts(
            24,
            300 * 24,
            BTreeMap::new(),
            Some(Lattice { start: -1, step: 24 }),
        );
        let hits = scan_maximal_progressions(&f, 5, 6, 300, DEFAULT_MIN_EVIDENCE).unwrap();
        assert_eq!(hits, vec![(1, beta(-1, 24))], "everything is congruent; 1Z + beta0 is maximal");
    }

    #[test]
    fn contained_hits_are_dropped() {
        // All of 25Z + 95/24 lies inside 5Z + 95/24; only the coarse one
        // survives the maximality filter.
        let f = partition_form(400);
        let hits = scan_maximal_progressions(&f, 5, 25, 400, DEFAULT_MIN_EVIDENCE).unwrap();
        assert!(hits.contains(&(5, beta(95, 24))));
        assert!(
            !hits.iter().any(|(m, b)| *m == 25 && (*b - beta(95, 24)).is_integer()),
            "sub-progressions of a hit are not maximal: {:?}",
            hits
        );
    }

    #[test]
    fn report_json_schema_is_stable() {
        let f = partition_form(40);
        // 1/2 misses the -1/24 + Z support coset, so the verdict is vacuous.
        let q = CongruenceQuery::new(5, 5, beta(1, 2), 40).unwrap();
        let r = detect_congruence(&f, &q, DEFAULT_MIN_EVIDENCE).unwrap();
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            concat!(
                r#"{"query":{"ell":5,"M":5,"beta_num":1,"beta_den":2,"n_max":40},"#,
                r#""holds_plain":true,"explainable":true,"vacuous":true,"#,
                r#""first_counterexample":null,"failing_n":null,"checked_count":0,"orbit":[]}"#
            )
        );
        let m = check_maximality_bounds(5, beta(95, 24));
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            concat!(
                r#"{"ok":true,"diagnostics":[{"prime":5,"ord_modulus":1,"#,
                r#""ord_beta":1,"limit":2,"ok":true}]}"#
            )
        );
    }
}
