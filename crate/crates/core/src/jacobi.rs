//! Expansions with tracked support, specialization at z = 0, and
//! restriction to arithmetic progressions.
//!
//! [`JacobiExpansion`] wraps the compensated series from elaboration (the
//! coefficients c~(n; z) of phi * (e(z/2) - e(-z/2))^nu) together with the
//! arithmetic of its support:
//!
//! * the exponents live on a coset beta0 + Z of the rationals, realized as
//!   keys `start + k*step` on the 1/denom lattice; restriction to a
//!   progression n ≡ beta (mod M) thins the lattice (or empties it, when
//!   beta is off-coset — a legal value, flagged rather than rejected)
//! * "supported" deliberately means every lattice point below the bound,
//!   stored or not: a vanishing coefficient is still evidence when checking
//!   divisibility, and the zero expansion is supported everywhere on its
//!   coset
//! * specializing evaluates every coefficient at z = 0; for pole order
//!   nu = 0 this is the expansion of the underlying form itself
//!
//! Restriction keeps exponent values as they are; rescaling q is a
//! presentation device and is never applied.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::elliptic::EllipticPolynomial;
use crate::product::{elaborate_spec, elaborate_specialization, ProductSpec, SpecError};
use crate::series::FourierSeries;

/// Errors from support queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobiError {
    /// The requested exponent is not below the truncation bound, so the
    /// coefficient is genuinely unknown (as opposed to known to be zero).
    OutOfRange { requested: Rational64, bound: Rational64 },
}

impl fmt::Display for JacobiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JacobiError::OutOfRange { requested, bound } => write!(
                f,
                "exponent {} is beyond the truncation bound {}",
                requested, bound
            ),
        }
    }
}

impl std::error::Error for JacobiError {}

/// Arithmetic progression of supported keys: `start + k*step` for k >= 0.
/// `step` is always a positive multiple of the series denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    pub start: i64,
    pub step: i64,
}

impl Lattice {
    /// Supported keys strictly below `bound`, in increasing order.
    pub fn keys_below(&self, bound: i64) -> impl Iterator<Item = i64> {
        let (start, step) = (self.start, self.step);
        (0..)
            .map(move |k| start + k * step)
            .take_while(move |key| *key < bound)
    }

    /// Number of supported keys strictly below `bound`.
    pub fn count_below(&self, bound: i64) -> i64 {
        if self.start >= bound {
            0
        } else {
            (bound - 1 - self.start) / self.step + 1
        }
    }

    /// Intersects with the progression `beta (mod modulus)` of exponents on
    /// the 1/denom lattice.  `None` when the progression misses every
    /// supported key: beta off the rational coset, or off the stride.
    fn restrict(&self, denom: i64, modulus: i64, beta: Rational64) -> Option<Lattice> {
        assert!(modulus >= 1, "progression modulus must be positive");
        if denom % beta.denom() != 0 {
            return None;
        }
        let beta_key = beta.numer() * (denom / beta.denom());
        let delta_keys = beta_key - self.start;
        if delta_keys.rem_euclid(denom) != 0 {
            return None;
        }
        // Solve j * t = delta (mod modulus) for the index j along the lattice.
        let t = self.step / denom;
        let delta = delta_keys.div_euclid(denom).rem_euclid(modulus);
        let g = t.gcd(&modulus);
        if delta % g != 0 {
            return None;
        }
        let m = modulus / g;
        let gcd = (t / g).extended_gcd(&m);
        debug_assert_eq!(gcd.gcd, 1);
        let j0 = ((delta / g) % m * gcd.x.rem_euclid(m)).rem_euclid(m);
        Some(Lattice { start: self.start + j0 * self.step, step: self.step * m })
    }
}

/// A compensated expansion `phi * (e(z/2) - e(-z/2))^pole_order` with its
/// support bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiExpansion {
    series: FourierSeries,
    pole_order: u32,
    denom_z: i64,
    lattice: Option<Lattice>,
}

impl JacobiExpansion {
    /// Elaborates a product spec and wraps the result.
    pub fn from_spec(spec: &ProductSpec, terms: i64) -> Result<Self, SpecError> {
        let e = elaborate_spec(spec, terms)?;
        let denom = e.series.denom();
        let start = e.q_shift.numer() * (denom / e.q_shift.denom());
        debug_assert!(
            e.series.terms().all(|(k, _)| (k - start).rem_euclid(denom) == 0),
            "elaboration keys must lie on the support coset"
        );
        Ok(JacobiExpansion {
            series: e.series,
            pole_order: e.pole_order,
            denom_z: e.denom_z,
            lattice: Some(Lattice { start, step: denom }),
        })
    }

    pub fn series(&self) -> &FourierSeries {
        &self.series
    }

    /// Order of the absorbed pole at z = 0 (nu >= 0).
    pub fn pole_order(&self) -> u32 {
        self.pole_order
    }

    pub fn denom_z(&self) -> i64 {
        self.denom_z
    }

    /// Supported-key progression; `None` after an off-coset restriction.
    pub fn lattice(&self) -> Option<Lattice> {
        self.lattice
    }

    pub fn denom(&self) -> i64 {
        self.series.denom()
    }

    /// Exponent of the first supported lattice point (the support-coset
    /// representative), if the support is nonempty.
    pub fn support_offset(&self) -> Option<Rational64> {
        self.lattice.map(|l| Rational64::new(l.start, self.denom()))
    }

    /// Truncation bound as an exponent.
    pub fn bound_exponent(&self) -> Rational64 {
        Rational64::new(self.series.bound(), self.denom())
    }

    /// Supported exponents strictly below the truncation bound.
    pub fn supported_exponents(&self) -> impl Iterator<Item = Rational64> + '_ {
        let denom = self.denom();
        let bound = self.series.bound();
        self.lattice
            .into_iter()
            .flat_map(move |l| l.keys_below(bound))
            .map(move |k| Rational64::new(k, denom))
    }

    /// The coefficient c~(n; z).  Off-support exponents give the zero
    /// polynomial; exponents at or beyond the truncation bound are unknown
    /// and give an error.
    pub fn leading_coefficient(&self, n: Rational64) -> Result<EllipticPolynomial, JacobiError> {
        if n >= self.bound_exponent() {
            return Err(JacobiError::OutOfRange { requested: n, bound: self.bound_exponent() });
        }
        let denom = self.denom();
        if denom % n.denom() != 0 {
            return Ok(EllipticPolynomial::zero());
        }
        let key = n.numer() * (denom / n.denom());
        match self.lattice {
            Some(l) if (key - l.start).rem_euclid(l.step) == 0 => Ok(self.series.coefficient(key)),
            _ => Ok(EllipticPolynomial::zero()),
        }
    }

    /// Evaluates every coefficient at z = 0 (e(z) -> 1).
    pub fn specialize(&self) -> Specialization {
        let mut coeffs = BTreeMap::new();
        for (key, c) in self.series.terms() {
            let v = c.eval_at_one();
            if !v.is_zero() {
                coeffs.insert(key, v);
            }
        }
        Specialization {
            denom: self.denom(),
            bound: self.series.bound(),
            coeffs,
            lattice: self.lattice,
        }
    }

    /// Keeps exactly the terms with exponent ≡ beta (mod modulus).
    pub fn restrict(&self, modulus: i64, beta: Rational64) -> Self {
        let lattice = self
            .lattice
            .and_then(|l| l.restrict(self.denom(), modulus, beta));
        let mut series = FourierSeries::zero(self.denom(), self.series.bound());
        if let Some(l) = lattice {
            for (key, c) in self.series.terms() {
                if (key - l.start).rem_euclid(l.step) == 0 {
                    series.set_coefficient(key, c.clone());
                }
            }
        }
        JacobiExpansion { series, pole_order: self.pole_order, denom_z: self.denom_z, lattice }
    }
}

/// Integer Fourier coefficients c(f; n) of the specialized form f, on the
/// same support lattice as the expansion they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    denom: i64,
    bound: i64,
    coeffs: BTreeMap<i64, BigInt>,
    lattice: Option<Lattice>,
}

impl Specialization {
    /// Elaborates a product spec directly at z = 0, skipping elliptic
    /// coefficients entirely.  Agrees with `JacobiExpansion::from_spec(..)`
    /// followed by [`JacobiExpansion::specialize`], but is much faster for
    /// long expansions and serves as a second, independent route to the
    /// specialized coefficients.
    pub fn from_spec(spec: &ProductSpec, terms: i64) -> Result<Self, SpecError> {
        let e = elaborate_specialization(spec, terms)?;
        let denom = e.series.denom();
        let start = e.q_shift.numer() * (denom / e.q_shift.denom());
        let mut coeffs = BTreeMap::new();
        for (key, c) in e.series.terms() {
            debug_assert!(
                (key - start).rem_euclid(denom) == 0,
                "elaboration keys must lie on the support coset"
            );
            let v = c.eval_at_one();
            if !v.is_zero() {
                coeffs.insert(key, v);
            }
        }
        Ok(Specialization {
            denom,
            bound: e.series.bound(),
            coeffs,
            lattice: Some(Lattice { start, step: denom }),
        })
    }

    /// Assembles a specialization from raw data (independent oracles build
    /// their ground-truth expansions this way).  Stored zeros are dropped;
    /// every key must lie on the lattice and below the bound.
    pub fn from_parts(
        denom: i64,
        bound: i64,
        coeffs: BTreeMap<i64, BigInt>,
        lattice: Option<Lattice>,
    ) -> Self {
        assert!(denom > 0, "lattice denominator must be positive");
        let coeffs: BTreeMap<i64, BigInt> =
            coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        for key in coeffs.keys() {
            assert!(*key < bound, "coefficient key {} at or beyond bound {}", key, bound);
            if let Some(l) = lattice {
                assert!(
                    (*key - l.start).rem_euclid(l.step) == 0,
                    "coefficient key {} off the support lattice",
                    key
                );
            }
        }
        assert!(
            lattice.is_some() || coeffs.is_empty(),
            "nonzero coefficients need a support lattice"
        );
        Specialization { denom, bound, coeffs, lattice }
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn lattice(&self) -> Option<Lattice> {
        self.lattice
    }

    pub fn bound_exponent(&self) -> Rational64 {
        Rational64::new(self.bound, self.denom)
    }

    /// Stored nonzero coefficients in increasing key order.
    pub fn coefficients(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    /// The coefficient at a key (zero when absent and below the bound).
    pub fn value_at_key(&self, key: i64) -> BigInt {
        self.coeffs.get(&key).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The coefficient c(f; n), with the same conventions as
    /// [`JacobiExpansion::leading_coefficient`].
    pub fn value_at(&self, n: Rational64) -> Result<BigInt, JacobiError> {
        if n >= self.bound_exponent() {
            return Err(JacobiError::OutOfRange { requested: n, bound: self.bound_exponent() });
        }
        if self.denom % n.denom() != 0 {
            return Ok(BigInt::zero());
        }
        Ok(self.value_at_key(n.numer() * (self.denom / n.denom())))
    }

    pub fn supported_exponents(&self) -> impl Iterator<Item = Rational64> + '_ {
        let denom = self.denom;
        let bound = self.bound;
        self.lattice
            .into_iter()
            .flat_map(move |l| l.keys_below(bound))
            .map(move |k| Rational64::new(k, denom))
    }

    /// Keeps exactly the coefficients with exponent ≡ beta (mod modulus).
    pub fn restrict(&self, modulus: i64, beta: Rational64) -> Self {
        let lattice = self
            .lattice
            .and_then(|l| l.restrict(self.denom, modulus, beta));
        let coeffs = match lattice {
            Some(l) => self
                .coeffs
                .iter()
                .filter(|(k, _)| (**k - l.start).rem_euclid(l.step) == 0)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            None => BTreeMap::new(),
        };
        Specialization { denom: self.denom, bound: self.bound, coeffs, lattice }
    }
}

/// One serialized coefficient: `int` (decimal string) on `q^(num/den)`.
#[derive(serde::Serialize)]
struct CoefficientRecord {
    num: i64,
    den: i64,
    int: String,
}

impl serde::Serialize for Specialization {
    /// Serializes as `[{num, den, int}]`, ascending in exponent, nonzero
    /// coefficients only — the golden-file format.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (&num, v) in &self.coeffs {
            seq.serialize_element(&CoefficientRecord {
                num,
                den: self.denom,
                int: v.to_string(),
            })?;
        }
        seq.end()
    }
}
