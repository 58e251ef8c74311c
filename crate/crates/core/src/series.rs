//! Truncated Fourier series in q with exact elliptic-polynomial coefficients.
//!
//! A series lives on the exponent lattice (1/denom)Z: the stored key `k`
//! stands for q^(k/denom).  Truncation is half-open: coefficients are known
//! (and stored when nonzero) exactly for keys `k < bound`, so a value means
//! "these terms plus O(q^(bound/denom))".
//!
//! * binary operations unify denominators by lcm and propagate the tightest
//!   truncation bound that the inputs justify; for products the partner's
//!   valuation extends the bound, mirroring O(q^a) * q^v = O(q^(a+v))
//! * `invert` requires the coefficient at the valuation to be a unit monomial
//!   `+/- zeta^k`; everything else is reported as `NonUnitLeadingTerm`
//! * no zero coefficients are stored

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;

use crate::elliptic::EllipticPolynomial;

/// Errors from series-level arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Inversion needs the leading coefficient to be `+/- zeta^k`.
    NonUnitLeadingTerm { description: String },
    /// Inversion of a series that is zero to its entire stored precision.
    ZeroDivision,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonUnitLeadingTerm { description } => {
                write!(f, "leading coefficient is not a unit monomial: {}", description)
            }
            SeriesError::ZeroDivision => write!(f, "cannot invert a series with no nonzero term"),
        }
    }
}

impl std::error::Error for SeriesError {}

/// Truncated exact Fourier series: q-exponents on (1/denom)Z, elliptic
/// coefficients, explicit half-open truncation bound.
#[derive(Clone, PartialEq, Eq)]
pub struct FourierSeries {
    denom: i64,
    bound: i64,
    terms: BTreeMap<i64, EllipticPolynomial>,
}

impl FourierSeries {
    /// The zero series, known modulo q^(bound/denom).
    pub fn zero(denom: i64, bound: i64) -> Self {
        assert!(denom > 0);
        FourierSeries { denom, bound, terms: BTreeMap::new() }
    }

    /// The constant series 1.
    pub fn one(denom: i64, bound: i64) -> Self {
        let mut s = Self::zero(denom, bound);
        s.set_coefficient(0, EllipticPolynomial::one());
        s
    }

    /// `coeff * q^(key/denom)` as a series.
    pub fn monomial(denom: i64, bound: i64, key: i64, coeff: EllipticPolynomial) -> Self {
        let mut s = Self::zero(denom, bound);
        s.set_coefficient(key, coeff);
        s
    }

    /// Exponent-lattice denominator.
    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// Half-open truncation bound in units of `1/denom`.
    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Least key with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Lower bound for the valuation used in truncation bookkeeping: the
    /// valuation itself, or the truncation bound when the series is zero to
    /// its stored precision.
    fn valuation_floor(&self) -> i64 {
        self.valuation().unwrap_or(self.bound)
    }

    /// Coefficient of q^(key/denom); zero when absent (and `key < bound`).
    pub fn coefficient(&self, key: i64) -> EllipticPolynomial {
        self.terms.get(&key).cloned().unwrap_or_else(EllipticPolynomial::zero)
    }

    /// Iterates stored `(key, coefficient)` pairs in increasing key order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &EllipticPolynomial)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Number of stored (nonzero) coefficients.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sets one coefficient, keeping the no-stored-zeros invariant.  Keys at
    /// or above the truncation bound are ignored.
    pub fn set_coefficient(&mut self, key: i64, coeff: EllipticPolynomial) {
        if key >= self.bound {
            return;
        }
        if coeff.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, coeff);
        }
    }

    /// Rewrites the series on a finer lattice `1/new_denom`; the current
    /// denominator must divide it.
    pub fn with_denom(&self, new_denom: i64) -> Self {
        assert_eq!(new_denom % self.denom, 0, "lattice refinement must be integral");
        let f = new_denom / self.denom;
        FourierSeries {
            denom: new_denom,
            bound: self.bound.saturating_mul(f),
            terms: self.terms.iter().map(|(k, c)| (k * f, c.clone())).collect(),
        }
    }

    /// Shifts every exponent by `key_shift/denom` (prefactor q^(key_shift/denom)).
    pub fn shift(&self, key_shift: i64) -> Self {
        FourierSeries {
            denom: self.denom,
            bound: self.bound.saturating_add(key_shift),
            terms: self.terms.iter().map(|(k, c)| (k + key_shift, c.clone())).collect(),
        }
    }

    /// Multiplies every coefficient by a fixed elliptic polynomial.
    pub fn scale(&self, c: &EllipticPolynomial) -> Self {
        if c.is_zero() {
            return FourierSeries::zero(self.denom, self.bound);
        }
        FourierSeries {
            denom: self.denom,
            bound: self.bound,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Tightens the truncation bound (drops terms at or above `bound`).
    pub fn truncate(&self, bound: i64) -> Self {
        let bound = bound.min(self.bound);
        FourierSeries {
            denom: self.denom,
            bound,
            terms: self.terms.range(..bound).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    fn unify(a: &Self, b: &Self) -> (Self, Self) {
        if a.denom == b.denom {
            (a.clone(), b.clone())
        } else {
            let l = a.denom.lcm(&b.denom);
            (a.with_denom(l), b.with_denom(l))
        }
    }

    /// Sum; the result is known to the smaller of the two bounds.
    pub fn add(&self, rhs: &Self) -> Self {
        let (a, b) = Self::unify(self, rhs);
        let bound = a.bound.min(b.bound);
        let mut out = FourierSeries::zero(a.denom, bound);
        for (k, c) in a.terms.range(..bound) {
            out.set_coefficient(*k, c.clone());
        }
        for (k, c) in b.terms.range(..bound) {
            out.set_coefficient(*k, &out.coefficient(*k) + c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        FourierSeries {
            denom: self.denom,
            bound: self.bound,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Product.  Each factor's truncation error is shifted by the partner's
    /// valuation, so the result is known up to
    /// `min(bound_a + val_b, bound_b + val_a)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = Self::unify(self, rhs);
        let bound = (a.bound.saturating_add(b.valuation_floor()))
            .min(b.bound.saturating_add(a.valuation_floor()));
        let mut acc: BTreeMap<i64, EllipticPolynomial> = BTreeMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k = ka + kb;
                if k >= bound {
                    break;
                }
                match acc.get_mut(&k) {
                    Some(c) => *c = &*c + &(ca * cb),
                    None => {
                        acc.insert(k, ca * cb);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        FourierSeries { denom: a.denom, bound, terms: acc }
    }

    /// Multiplicative inverse.
    ///
    /// Requires the leading coefficient (at the valuation v) to be a unit
    /// monomial `+/- zeta^k`.  The inverse has valuation -v and is exact up
    /// to `bound - 2v`: the input's relative precision is preserved.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let v = match self.valuation() {
            Some(v) => v,
            None => return Err(SeriesError::ZeroDivision),
        };
        let lead = &self.terms[&v];
        let lead_inv = lead.unit_inverse().ok_or_else(|| SeriesError::NonUnitLeadingTerm {
            description: lead.to_string(),
        })?;
        let out_bound = self.bound.saturating_sub(2 * v);
        let mut out = FourierSeries::zero(self.denom, out_bound);
        out.set_coefficient(-v, lead_inv.clone());
        // The q^(t+v) coefficient of self * out must vanish for t > -v; the
        // only unknown it involves is b_t (paired with the leading a_v), so
        //   b_t = -a_v^{-1} * sum_{i > v} a_i * b_{t+v-i}.
        let mut t = -v + 1;
        while t < out_bound {
            let mut conv = EllipticPolynomial::zero();
            for (ka, ca) in self.terms.range(v + 1..) {
                if *ka > t + 2 * v {
                    break;
                }
                if let Some(cb) = out.terms.get(&(t + v - ka)) {
                    conv = &conv + &(ca * cb);
                }
            }
            if !conv.is_zero() {
                out.set_coefficient(t, &(-conv) * &lead_inv);
            }
            t += 1;
        }
        Ok(out)
    }

    /// `exp`-th power by binary exponentiation.  Truncation bookkeeping rides
    /// on [`FourierSeries::mul`]; the identity factor carries an unbounded
    /// truncation so it never tightens the result.
    pub fn pow(&self, exp: u32) -> Self {
        let mut result = FourierSeries::one(self.denom, i64::MAX);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Whether the two series agree as formal expansions on every exponent
    /// both of them determine (below the smaller bound, after unifying
    /// lattices).  Unlike `==` this ignores representational differences in
    /// denominator and truncation.
    pub fn agrees_with(&self, rhs: &Self) -> bool {
        let (a, b) = Self::unify(self, rhs);
        let bound = a.bound.min(b.bound);
        a.truncate(bound).terms == b.truncate(bound).terms
    }
}

/// One serialized series term: the elliptic coefficient on `q^(num/den)`.
#[derive(serde::Serialize)]
struct TermRecord<'a> {
    num: i64,
    den: i64,
    coeff: &'a EllipticPolynomial,
}

impl serde::Serialize for FourierSeries {
    /// Serializes as `[{num, den, coeff}]`, ascending in exponent, with
    /// `den` the fixed lattice denominator.  The truncation bound is not
    /// part of the payload; golden files pin it out of band.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (&num, coeff) in &self.terms {
            seq.serialize_element(&TermRecord { num, den: self.denom, coeff })?;
        }
        seq.end()
    }
}

impl fmt::Debug for FourierSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FourierSeries(denom {}, O(q^({}/{})), {} terms)", self.denom, self.bound, self.denom, self.terms.len())?;
        for (k, c) in self.terms.iter().take(8) {
            write!(f, "\n  q^({}/{}) * ({})", k, self.denom, c)?;
        }
        if self.terms.len() > 8 {
            write!(f, "\n  ...")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// prod_{n=1}^{N-1} (1 - q^n), exact below q^N.
    fn euler_product(n_bound: i64) -> FourierSeries {
        let mut acc = FourierSeries::one(1, n_bound);
        for n in 1..n_bound {
            let mut f = FourierSeries::one(1, n_bound);
            f.set_coefficient(n, EllipticPolynomial::constant(-1));
            acc = acc.mul(&f);
        }
        acc
    }

    #[test]
    fn euler_product_is_pentagonal() {
        // 1 - q - q^2 + q^5 + q^7 - q^12 - q^15 + ...
        let p = euler_product(18);
        let expected: &[(i64, i64)] = &[(0, 1), (1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1)];
        assert_eq!(p.term_count(), expected.len());
        for &(k, c) in expected {
            assert_eq!(p.coefficient(k), EllipticPolynomial::constant(c), "at q^{}", k);
        }
    }

    #[test]
    fn inverse_of_euler_product_counts_partitions() {
        let inv = euler_product(12).invert().expect("leading term is 1");
        let partitions: &[i64] = &[1, 1, 2, 3, 5, 7, 11, 15, 22, 30];
        for (n, &p) in partitions.iter().enumerate() {
            assert_eq!(
                inv.coefficient(n as i64),
                EllipticPolynomial::constant(p),
                "p({}) mismatch",
                n
            );
        }
    }

    #[test]
    fn geometric_inverse() {
        // invert(1 - q*zeta) = sum_k q^k zeta^k
        let mut f = FourierSeries::one(1, 9);
        f.set_coefficient(1, EllipticPolynomial::monomial(-1, 1, 1));
        let inv = f.invert().unwrap();
        for k in 0..9 {
            assert_eq!(inv.coefficient(k), EllipticPolynomial::monomial(1, k, 1));
        }
    }

    #[test]
    fn inverse_roundtrips_to_one() {
        // A series with a genuine monomial leading term and messy tail.
        let mut f = FourierSeries::monomial(2, 17, -3, EllipticPolynomial::monomial(-1, 1, 2));
        f.set_coefficient(0, EllipticPolynomial::from_terms(1, [(2, 5), (-1, -4)]));
        f.set_coefficient(5, EllipticPolynomial::constant(7));
        let inv = f.invert().unwrap();
        assert_eq!(inv.valuation(), Some(3));
        let prod = f.mul(&inv);
        assert_eq!(prod.coefficient(0), EllipticPolynomial::one());
        assert!(prod.terms().all(|(k, _)| k == 0), "f * f^-1 = 1 within truncation: {:?}", prod);
    }

    #[test]
    fn invert_rejects_non_unit_leading_term() {
        // Leading coefficient 1 - zeta is not invertible in the Laurent ring.
        let mut f = FourierSeries::one(1, 10);
        f.set_coefficient(0, EllipticPolynomial::from_terms(1, [(0, 1), (1, -1)]));
        match f.invert() {
            Err(SeriesError::NonUnitLeadingTerm { .. }) => {}
            other => panic!("expected NonUnitLeadingTerm, got {:?}", other.map(|_| ())),
        }
        assert!(FourierSeries::zero(1, 5).invert().is_err());
    }

    #[test]
    fn truncation_bounds_propagate() {
        // O(q^8) times a series with valuation 3 is O(q^11).
        let a = FourierSeries::one(1, 8);
        let b = FourierSeries::monomial(1, 20, 3, EllipticPolynomial::one());
        assert_eq!(a.mul(&b).bound(), 11);
        // Inversion of q^v * unit keeps relative precision: bound - 2v.
        let c = FourierSeries::monomial(1, 10, 2, EllipticPolynomial::one());
        assert_eq!(c.invert().unwrap().bound(), 6);
        // Denominator unification rescales bounds consistently.
        let fine = FourierSeries::one(24, 24);
        let coarse = FourierSeries::one(8, 16);
        let sum = fine.add(&coarse);
        assert_eq!(sum.denom(), 24);
        assert_eq!(sum.bound(), 24);
    }

    #[test]
    fn addition_cancels_exactly() {
        let mut a = FourierSeries::one(2, 10);
        a.set_coefficient(3, EllipticPolynomial::monomial(4, 1, 2));
        let diff = a.sub(&a);
        assert!(diff.is_zero());
        assert_eq!(diff.bound(), 10);
    }

    #[test]
    fn json_lists_terms_with_the_lattice_denominator() {
        let mut s = FourierSeries::zero(8, 20);
        s.set_coefficient(1, EllipticPolynomial::half_difference());
        s.set_coefficient(9, EllipticPolynomial::from_terms(1, [(0, -1)]));
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            concat!(
                r#"[{"num":1,"den":8,"coeff":[{"zexp":-1,"zden":2,"int":"-1"},"#,
                r#"{"zexp":1,"zden":2,"int":"1"}]},"#,
                r#"{"num":9,"den":8,"coeff":[{"zexp":0,"zden":1,"int":"-1"}]}]"#
            )
        );
    }
}
