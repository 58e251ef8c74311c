//! Exact Laurent polynomials in the elliptic variable.
//!
//! The elliptic variable is zeta = e(z/D) for a positive denominator D, where
//! e(x) = exp(2*pi*i*x).  A polynomial is stored sparsely as a map from
//! exponent (in units of 1/D) to an arbitrary-precision integer coefficient.
//!
//! * values are normalized: no zero coefficients are stored, and D is reduced
//!   to the smallest positive integer compatible with the exponents present,
//!   so structural equality is semantic equality
//! * binary operations unify denominators by lcm
//! * `eval_at_one` evaluates at z = 0 (zeta = 1), i.e. sums the coefficients
//! * `cyclotomic_quotient` divides exactly by Phi_ell(e(z)), the ell-th
//!   cyclotomic polynomial in e(z) = zeta^D; the quotient carries the
//!   valuation shift of the input
//! * `vanishes_at_torsion` decides vanishing at every z in (1/ell)Z \ Z by
//!   exact evaluation in cyclotomic fields, one Galois orbit at a time
//!
//! Divisibility by Phi_ell(e(z)) and vanishing at all ell-torsion points are
//! equivalent for prime ell; the two routes here are implemented separately
//! (long division vs. field evaluation) precisely so that the equivalence can
//! be tested rather than assumed.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse Laurent polynomial in zeta = e(z/denom) with integer coefficients.
///
/// The exponent key `k` stands for the monomial e(k*z/denom).  The value is
/// kept in canonical form: `denom` is minimal and no coefficient is zero, so
/// derived equality compares mathematical values.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct EllipticPolynomial {
    denom: i64,
    terms: BTreeMap<i64, BigInt>,
}

impl EllipticPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        EllipticPolynomial { denom: 1, terms: BTreeMap::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// A constant polynomial.
    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        EllipticPolynomial { denom: 1, terms }
    }

    /// The monomial `coeff * zeta^(num/den)` where zeta = e(z).
    ///
    /// `den` must be positive; the result is reduced to canonical form.
    pub fn monomial<T: Into<BigInt>>(coeff: T, num: i64, den: i64) -> Self {
        assert!(den > 0, "monomial denominator must be positive");
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(num, coeff);
        }
        let mut p = EllipticPolynomial { denom: den, terms };
        p.reduce();
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs in units of
    /// `1/den`.  Repeated exponents are summed.
    pub fn from_terms<I, T>(den: i64, iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        assert!(den > 0, "denominator must be positive");
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (k, c) in iter {
            let entry = terms.entry(k).or_insert_with(BigInt::zero);
            *entry += c.into();
        }
        terms.retain(|_, c| !c.is_zero());
        let mut p = EllipticPolynomial { denom: den, terms };
        p.reduce();
        p
    }

    /// The ell-th cyclotomic polynomial in e(z) for prime ell:
    /// `1 + e(z) + ... + e(z)^(ell-1)`.
    pub fn cyclotomic(ell: u32) -> Self {
        assert!(ell >= 2, "cyclotomic factor needs ell >= 2");
        EllipticPolynomial {
            denom: 1,
            terms: (0..ell as i64).map(|j| (j, BigInt::one())).collect(),
        }
    }

    /// `e(z/2) - e(-z/2)`, the prefactor whose zero sits at z = 0.
    pub fn half_difference() -> Self {
        EllipticPolynomial {
            denom: 2,
            terms: [(1, BigInt::one()), (-1, -BigInt::one())].into_iter().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Denominator of the exponent lattice (canonical, minimal).
    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Iterates `(exponent, coefficient)` pairs; exponents are in units of
    /// `1/denom()` in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Evaluates at z = 0, i.e. zeta = 1: the sum of the coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        let mut s = BigInt::zero();
        for c in self.terms.values() {
            s += c;
        }
        s
    }

    /// True when the coefficient map is `+/- zeta^k`, the only units of the
    /// Laurent-polynomial ring.
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().magnitude().is_one()
    }

    /// Inverse of a unit monomial; `None` for anything else.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit_monomial() {
            return None;
        }
        let (&k, c) = self.terms.iter().next().unwrap();
        Some(EllipticPolynomial::monomial(c.clone(), -k, self.denom))
    }

    /// `self^exp` by binary exponentiation.
    pub fn pow(&self, exp: u32) -> Self {
        let mut result = EllipticPolynomial::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Multiplies every coefficient by a scalar.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return EllipticPolynomial::zero();
        }
        EllipticPolynomial {
            denom: self.denom,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Exact division by Phi_ell(e(z)) for prime ell.
    ///
    /// The divisor in the zeta-exponent lattice is
    /// `1 + zeta^D + ... + zeta^((ell-1)*D)` with D = `denom()`.  Returns the
    /// quotient (valuation shift of the input preserved) or `None` when the
    /// remainder is nonzero.  Because the divisor is monic, the long division
    /// never leaves the integers.
    pub fn cyclotomic_quotient(&self, ell: u32) -> Option<Self> {
        assert!(ell >= 2);
        if self.is_zero() {
            return Some(EllipticPolynomial::zero());
        }
        let d = self.denom;
        let val = *self.terms.keys().next().unwrap();
        let top = *self.terms.keys().next_back().unwrap();
        let div_deg = (ell as i64 - 1) * d;
        if top - val < div_deg {
            return None;
        }
        // Dense copy with the valuation cleared.
        let len = (top - val + 1) as usize;
        let mut num = vec![BigInt::zero(); len];
        for (&k, c) in &self.terms {
            num[(k - val) as usize] = c.clone();
        }
        let mut divisor = vec![BigInt::zero(); div_deg as usize + 1];
        for j in 0..ell as i64 {
            divisor[(j * d) as usize] = BigInt::one();
        }
        let quotient = divide_exact_monic(&mut num, &divisor)?;
        let mut p = EllipticPolynomial {
            denom: d,
            terms: quotient
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (val + i as i64, c))
                .collect(),
        };
        p.reduce();
        Some(p)
    }

    /// Decides whether the polynomial vanishes at every torsion point
    /// z in (1/ell)Z \ Z, for prime ell, by exact evaluation.
    ///
    /// With D = `denom()`, those points evaluate zeta at all roots of unity
    /// e(j/(ell*D)) with ell not dividing j.  Grouped by Galois orbit, it is
    /// enough to test one representative e(g/(ell*D)) per divisor g of D
    /// coprime to ell, and each test is a reduction modulo the cyclotomic
    /// polynomial Phi_n with n = ell*D/g.
    pub fn vanishes_at_torsion(&self, ell: u32) -> bool {
        assert!(ell >= 2);
        if self.is_zero() {
            return true;
        }
        let d = self.denom;
        for g in 1..=d {
            if d % g != 0 || g % ell as i64 == 0 {
                continue;
            }
            let n = (ell as i64 * d / g) as usize;
            // Fold exponents into Z[X]/(X^n - 1): zeta |-> X at the chosen root.
            let mut folded = vec![BigInt::zero(); n];
            for (&k, c) in &self.terms {
                folded[k.rem_euclid(n as i64) as usize] += c;
            }
            let phi = cyclotomic_dense(n as u32);
            reduce_by_monic(&mut folded, &phi);
            if folded.iter().any(|c| !c.is_zero()) {
                return false;
            }
        }
        true
    }

    /// Restores canonical form: drops zero coefficients and reduces the
    /// denominator to the smallest compatible positive integer.
    fn reduce(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
        if self.terms.is_empty() {
            self.denom = 1;
            return;
        }
        let mut g = self.denom;
        for &k in self.terms.keys() {
            g = g.gcd(&k);
            if g == 1 {
                return;
            }
        }
        if g > 1 {
            self.denom /= g;
            self.terms = self.terms.iter().map(|(k, c)| (k / g, c.clone())).collect();
        }
    }

    /// Rewrites the polynomial on a coarser lattice `1/new_denom` (which the
    /// current denominator must divide) without changing its value.
    fn with_denom(&self, new_denom: i64) -> Self {
        debug_assert_eq!(new_denom % self.denom, 0);
        let f = new_denom / self.denom;
        EllipticPolynomial {
            denom: new_denom,
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
        }
    }
}

// === ring operations ===

fn unified(a: &EllipticPolynomial, b: &EllipticPolynomial) -> (EllipticPolynomial, EllipticPolynomial) {
    let l = a.denom.lcm(&b.denom);
    (a.with_denom(l), b.with_denom(l))
}

impl std::ops::Add for &EllipticPolynomial {
    type Output = EllipticPolynomial;
    fn add(self, rhs: &EllipticPolynomial) -> EllipticPolynomial {
        let (mut a, b) = unified(self, rhs);
        for (k, c) in b.terms {
            let entry = a.terms.entry(k).or_insert_with(BigInt::zero);
            *entry += c;
        }
        a.reduce();
        a
    }
}

impl std::ops::Sub for &EllipticPolynomial {
    type Output = EllipticPolynomial;
    fn sub(self, rhs: &EllipticPolynomial) -> EllipticPolynomial {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &EllipticPolynomial {
    type Output = EllipticPolynomial;
    fn neg(self) -> EllipticPolynomial {
        EllipticPolynomial {
            denom: self.denom,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl std::ops::Mul for &EllipticPolynomial {
    type Output = EllipticPolynomial;
    fn mul(self, rhs: &EllipticPolynomial) -> EllipticPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return EllipticPolynomial::zero();
        }
        let (a, b) = unified(self, rhs);
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let entry = terms.entry(ka + kb).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        let mut p = EllipticPolynomial { denom: a.denom, terms };
        p.reduce();
        p
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for EllipticPolynomial {
            type Output = EllipticPolynomial;
            fn $method(self, rhs: EllipticPolynomial) -> EllipticPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl std::ops::$trait<&EllipticPolynomial> for EllipticPolynomial {
            type Output = EllipticPolynomial;
            fn $method(self, rhs: &EllipticPolynomial) -> EllipticPolynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl std::ops::Neg for EllipticPolynomial {
    type Output = EllipticPolynomial;
    fn neg(self) -> EllipticPolynomial {
        -&self
    }
}

/// One serialized monomial: coefficient `int` (a decimal string, so
/// arbitrary precision survives readers that only have doubles) on
/// `zeta^(zexp/zden)`.
#[derive(serde::Serialize)]
struct TermRecord {
    zexp: i64,
    zden: i64,
    int: String,
}

impl serde::Serialize for EllipticPolynomial {
    /// Serializes as `[{zexp, zden, int}]`, ascending in `zexp`.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&zexp, c) in &self.terms {
            seq.serialize_element(&TermRecord { zexp, zden: self.denom, int: c.to_string() })?;
        }
        seq.end()
    }
}

impl fmt::Display for EllipticPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if k != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if self.denom == 1 {
                    if k == 1 {
                        write!(f, "zeta")?;
                    } else {
                        write!(f, "zeta^{}", k)?;
                    }
                } else {
                    write!(f, "zeta^({}/{})", k, self.denom)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for EllipticPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// === dense integer-polynomial helpers ===

fn trim(p: &mut Vec<BigInt>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Long division of `num` by a monic `div`; returns the quotient and leaves
/// the remainder in `num`, or `None` if the remainder is nonzero.
fn divide_exact_monic(num: &mut Vec<BigInt>, div: &[BigInt]) -> Option<Vec<BigInt>> {
    let quot = reduce_by_monic(num, div);
    if num.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(quot)
}

/// Reduces `num` modulo a monic `div` in place and returns the quotient.
fn reduce_by_monic(num: &mut Vec<BigInt>, div: &[BigInt]) -> Vec<BigInt> {
    trim(num);
    let dd = div.len() - 1;
    debug_assert!(div[dd].is_one(), "divisor must be monic");
    if num.len() <= dd {
        return Vec::new();
    }
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for i in (dd..num.len()).rev() {
        if num[i].is_zero() {
            continue;
        }
        let lead = std::mem::replace(&mut num[i], BigInt::zero());
        for (j, c) in div.iter().enumerate().take(dd) {
            if !c.is_zero() {
                let delta = &lead * c;
                num[i - dd + j] -= delta;
            }
        }
        quot[i - dd] = lead;
    }
    trim(num);
    quot
}

/// Dense coefficients of the n-th cyclotomic polynomial, computed from
/// `X^n - 1 = prod_{d | n} Phi_d(X)` by exact division.
fn cyclotomic_dense(n: u32) -> Vec<BigInt> {
    if n == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_dense(d);
            num = divide_exact_monic(&mut num, &phi_d)
                .expect("X^n - 1 is divisible by every Phi_d with d | n");
        }
    }
    num
}
