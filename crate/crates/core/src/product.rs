//! Product specifications and their elaboration into exact expansions.
//!
//! A [`ProductSpec`] describes a meromorphic product
//!
//! ```text
//!   q^alpha * e(z)^delta * prod eta(d*tau)^e * prod theta(tau, a*z)^e
//!           * prod_{n >= 0} (1 - q^(m + d*n) * e(z)^a)^e
//! ```
//!
//! with q = e(tau).  The named factors expand by the classical products
//!
//! ```text
//!   eta(d*tau)     = q^(d/24) * prod_{n >= 1} (1 - q^(d*n))
//!   theta(tau, z)  = q^(1/8) * (e(z/2) - e(-z/2))
//!                    * prod_{n >= 1} (1 - q^n)(1 - q^n e(z))(1 - q^n e(-z))
//! ```
//!
//! Elaboration returns the expansion of `phi * (e(z/2) - e(-z/2))^nu`, where
//! nu >= 0 is the pole order of phi at z = 0:
//!
//! * every factor `e(z/2) - e(-z/2)` (one per theta factor and one per n = 0
//!   Pochhammer factor) is tracked in a signed tally; a negative tally is the
//!   pole order nu and is absorbed symbolically rather than inverted in-ring
//! * the absorption uses `(zeta^(a/2) - zeta^(-a/2)) = (zeta^(1/2) -
//!   zeta^(-1/2)) * u_a` with `u_a = sum_{j=0}^{a-1} zeta^((a-1)/2 - j)`;
//!   for |a| >= 2 the cofactor u_a is not a unit, so a negative net power of
//!   it means the singularity sits at a proper torsion point (e.g. z = 1/2)
//!   and the spec is rejected as `ResidualPole`
//! * the q-exponent lattice denominator is the lcm of the prefactor
//!   denominators (24 for eta, 8 for theta, the explicit q-prefactor's own)
//!
//! Factor order never matters: specs are canonicalized (sorted, merged, zero
//! exponents dropped) on construction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;

use crate::elliptic::EllipticPolynomial;
use crate::series::{FourierSeries, SeriesError};

/// Errors raised while validating or elaborating a product specification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    /// A factor that is identically zero: `poch(0, d; 0)` or `theta(0)`.
    VanishingFactor { description: String },
    /// A structurally invalid parameter (nonpositive step or eta period,
    /// negative offset).
    InvalidParameter { description: String },
    /// After pole absorption a non-unit cofactor `u_a` would need inversion:
    /// the product has singularities at torsion points away from z in Z.
    ResidualPole { arg: i64 },
    /// Series-level failure (non-invertible leading term).
    Series(SeriesError),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::VanishingFactor { description } => {
                write!(f, "factor vanishes identically: {}", description)
            }
            SpecError::InvalidParameter { description } => {
                write!(f, "invalid factor parameter: {}", description)
            }
            SpecError::ResidualPole { arg } => write!(
                f,
                "residual pole: cofactor of (1 - zeta^{}) is not invertible; \
                 singularities lie at torsion points of order > 1",
                arg
            ),
            SpecError::Series(e) => write!(f, "{}", e),
        }
    }
}

impl std::error::Error for SpecError {}

impl From<SeriesError> for SpecError {
    fn from(e: SeriesError) -> Self {
        SpecError::Series(e)
    }
}

/// One Pochhammer-type factor `prod_{n >= 0} (1 - q^(offset + step*n) *
/// e(z)^shift)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PochhammerFactor {
    pub offset: i64,
    pub step: i64,
    pub shift: i64,
    pub exponent: i32,
}

/// A named classical factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NamedFactor {
    /// `eta(period * tau)^exponent`
    Eta { period: i64, exponent: i32 },
    /// `theta(tau, arg * z)^exponent`
    Theta { arg: i64, exponent: i32 },
}

impl NamedFactor {
    fn exponent(&self) -> i32 {
        match self {
            NamedFactor::Eta { exponent, .. } | NamedFactor::Theta { exponent, .. } => *exponent,
        }
    }

    fn with_exponent(&self, exponent: i32) -> Self {
        match *self {
            NamedFactor::Eta { period, .. } => NamedFactor::Eta { period, exponent },
            NamedFactor::Theta { arg, .. } => NamedFactor::Theta { arg, exponent },
        }
    }
}

/// Canonicalized description of an eta/theta/Pochhammer product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpec {
    q_prefactor: Rational64,
    z_prefactor: Rational64,
    named: Vec<NamedFactor>,
    pochhammer: Vec<PochhammerFactor>,
}

impl ProductSpec {
    /// Validates and canonicalizes a spec: factors are sorted, equal factors
    /// merged by summing exponents, and zero exponents dropped.
    pub fn new(
        q_prefactor: Rational64,
        z_prefactor: Rational64,
        named: Vec<NamedFactor>,
        pochhammer: Vec<PochhammerFactor>,
    ) -> Result<Self, SpecError> {
        for f in &named {
            match *f {
                NamedFactor::Eta { period, .. } if period < 1 => {
                    return Err(SpecError::InvalidParameter {
                        description: format!("eta period must be >= 1, got {}", period),
                    });
                }
                NamedFactor::Theta { arg: 0, .. } => {
                    return Err(SpecError::VanishingFactor {
                        description: "theta(0) has prefactor e(0) - e(0) = 0".into(),
                    });
                }
                _ => {}
            }
        }
        for p in &pochhammer {
            if p.step < 1 {
                return Err(SpecError::InvalidParameter {
                    description: format!("pochhammer step must be >= 1, got {}", p.step),
                });
            }
            if p.offset < 0 {
                return Err(SpecError::InvalidParameter {
                    description: format!("pochhammer offset must be >= 0, got {}", p.offset),
                });
            }
            if p.offset == 0 && p.shift == 0 {
                return Err(SpecError::VanishingFactor {
                    description: "poch(0, d; 0) contains the n = 0 factor 1 - 1 = 0".into(),
                });
            }
        }

        // Merge named factors over their parameter (sorting puts equal
        // parameters adjacent regardless of exponent).
        let mut named_map: BTreeMap<NamedFactor, i64> = BTreeMap::new();
        for f in named {
            *named_map.entry(f.with_exponent(0)).or_insert(0) += f.exponent() as i64;
        }
        let named = named_map
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|(f, e)| f.with_exponent(e as i32))
            .collect();

        let mut poch_map: BTreeMap<(i64, i64, i64), i64> = BTreeMap::new();
        for p in pochhammer {
            *poch_map.entry((p.offset, p.step, p.shift)).or_insert(0) += p.exponent as i64;
        }
        let pochhammer = poch_map
            .into_iter()
            .filter(|(_, e)| *e != 0)
            .map(|((offset, step, shift), e)| PochhammerFactor {
                offset,
                step,
                shift,
                exponent: e as i32,
            })
            .collect();

        Ok(ProductSpec { q_prefactor, z_prefactor, named, pochhammer })
    }

    pub fn q_prefactor(&self) -> Rational64 {
        self.q_prefactor
    }

    pub fn z_prefactor(&self) -> Rational64 {
        self.z_prefactor
    }

    pub fn named_factors(&self) -> &[NamedFactor] {
        &self.named
    }

    pub fn pochhammer_factors(&self) -> &[PochhammerFactor] {
        &self.pochhammer
    }

    /// Total rational q-exponent shift of the expansion: the explicit
    /// prefactor plus `e*d/24` per eta factor and `e/8` per theta factor.
    pub fn q_shift(&self) -> Rational64 {
        let mut shift = self.q_prefactor;
        for f in &self.named {
            match *f {
                NamedFactor::Eta { period, exponent } => {
                    shift += Rational64::new(period * exponent as i64, 24);
                }
                NamedFactor::Theta { exponent, .. } => {
                    shift += Rational64::new(exponent as i64, 8);
                }
            }
        }
        shift
    }

    /// q-exponent lattice denominator used by the elaboration: the lcm of
    /// the nominal prefactor denominators.
    pub fn q_denom(&self) -> i64 {
        let mut d = *self.q_prefactor.denom();
        for f in &self.named {
            d = d.lcm(match f {
                NamedFactor::Eta { .. } => &24,
                NamedFactor::Theta { .. } => &8,
            });
        }
        d
    }

    /// z-exponent lattice denominator: even, and fine enough for the
    /// explicit `e(z)^delta` prefactor.
    pub fn z_denom(&self) -> i64 {
        2i64.lcm(self.z_prefactor.denom())
    }

    /// Modular weight `(#eta + #theta)/2` counted with exponents — recorded
    /// metadata only, consumed by nothing.  `None` when explicit Pochhammer
    /// factors make the standard tally inapplicable.
    pub fn weight(&self) -> Option<Rational64> {
        if !self.pochhammer.is_empty() {
            return None;
        }
        let mut w = Rational64::zero();
        for f in &self.named {
            w += Rational64::new(f.exponent() as i64, 2);
        }
        Some(w)
    }

    /// Jacobi index `sum e*a^2/2` over theta factors — recorded metadata
    /// only, consumed by nothing.  `None` under the same conditions as
    /// [`ProductSpec::weight`].
    pub fn index(&self) -> Option<Rational64> {
        if !self.pochhammer.is_empty() {
            return None;
        }
        let mut m = Rational64::zero();
        for f in &self.named {
            if let NamedFactor::Theta { arg, exponent } = *f {
                m += Rational64::new(exponent as i64 * arg * arg, 2);
            }
        }
        Some(m)
    }
}

/// Result of elaborating a [`ProductSpec`].
///
/// `series` is the expansion of `phi * (e(z/2) - e(-z/2))^pole_order` — the
/// numerators of the leading Fourier coefficients — on the absolute
/// q-exponent lattice (the rational `q_shift` is folded into the exponents).
#[derive(Debug, Clone)]
pub struct Elaboration {
    pub series: FourierSeries,
    pub pole_order: u32,
    pub q_shift: Rational64,
    pub denom_z: i64,
}

/// Expands `prod_{n >= 0} (1 - q^(offset + step*n) * e(z)^shift)^exponent`
/// exactly below q^bound (integer exponent lattice).
///
/// Negative exponents invert the positive power, which requires the leading
/// coefficient to be a unit monomial; the n = 0 factor of an `offset = 0`
/// product is `1 - e(z)^shift`, which is not one, so such factors only admit
/// negative exponents through the pole bookkeeping in [`elaborate_spec`].
pub fn build_pochhammer(
    offset: i64,
    step: i64,
    shift: i64,
    exponent: i32,
    bound: i64,
) -> Result<FourierSeries, SpecError> {
    if step < 1 || offset < 0 {
        return Err(SpecError::InvalidParameter {
            description: format!("poch({}, {}; {}) is malformed", offset, step, shift),
        });
    }
    if offset == 0 && shift == 0 {
        return Err(SpecError::VanishingFactor {
            description: "poch(0, d; 0) contains the n = 0 factor 1 - 1 = 0".into(),
        });
    }
    let mut base = FourierSeries::one(1, bound);
    let mut m = offset;
    while m < bound {
        // The n = 0 factor of an offset-0 product puts 1 - zeta^shift on the
        // single key 0, so accumulate into the existing coefficient.
        let mut factor = FourierSeries::one(1, bound);
        let updated = &factor.coefficient(m) + &EllipticPolynomial::monomial(-1, shift, 1);
        factor.set_coefficient(m, updated);
        base = base.mul(&factor);
        m += step;
    }
    let positive = base.pow(exponent.unsigned_abs());
    if exponent >= 0 {
        Ok(positive)
    } else {
        Ok(positive.invert()?)
    }
}

/// Pole and prefactor bookkeeping shared by the elliptic and the z-free
/// elaborations.
struct PoleAnalysis {
    pole_order: u32,
    /// Leftover (e(z/2) - e(-z/2)) power after compensating the pole.
    s_power: u32,
    sign_negative: bool,
    /// Exponent of the accumulated unit monomial, in units of 1/denom_z.
    monomial_exp: i64,
    /// Net power of the cofactor u_|arg| per |arg| >= 2; all nonnegative.
    cofactors: BTreeMap<i64, i64>,
    /// Merged q-side factors: (offset, step, shift) -> summed exponent,
    /// every offset >= 1.
    q_factors: BTreeMap<(i64, i64, i64), i64>,
}

fn analyze_spec(spec: &ProductSpec, denom_z: i64) -> Result<PoleAnalysis, SpecError> {
    // Signed tally of (e(z/2) - e(-z/2)) factors, net cofactor powers by
    // |arg|, the accumulated unit monomial, and the merged q-product factors.
    let mut s_tally: i64 = 0;
    let mut cofactors: BTreeMap<i64, i64> = BTreeMap::new();
    let mut sign_negative = false;
    let mut monomial_exp: i64 = 0; // in units of 1/denom_z
    let mut q_factors: BTreeMap<(i64, i64, i64), i64> = BTreeMap::new();
    let mut add_q_factor = |offset: i64, step: i64, shift: i64, e: i64| {
        *q_factors.entry((offset, step, shift)).or_insert(0) += e;
    };

    // e(z)^delta prefactor.
    let delta = spec.z_prefactor;
    monomial_exp += delta.numer() * (denom_z / delta.denom());

    for f in &spec.named {
        match *f {
            NamedFactor::Eta { period, exponent } => {
                add_q_factor(period, period, 0, exponent as i64);
            }
            NamedFactor::Theta { arg, exponent } => {
                let e = exponent as i64;
                s_tally += e;
                if arg < 0 && exponent.rem_euclid(2) == 1 {
                    // e(a*z/2) - e(-a*z/2) = -(e(|a|*z/2) - e(-|a|*z/2))
                    sign_negative = !sign_negative;
                }
                if arg.abs() > 1 {
                    *cofactors.entry(arg.abs()).or_insert(0) += e;
                }
                add_q_factor(1, 1, 0, e);
                add_q_factor(1, 1, arg, e);
                add_q_factor(1, 1, -arg, e);
            }
        }
    }

    for p in &spec.pochhammer {
        let e = p.exponent as i64;
        if p.offset == 0 {
            // Split off the n = 0 factor:
            //   1 - e(a*z) = -e(a*z/2) * u_|a| * (e(z/2) - e(-z/2)) * sgn(a)
            s_tally += e;
            if p.shift > 0 && p.exponent.rem_euclid(2) == 1 {
                sign_negative = !sign_negative;
            }
            monomial_exp += e * p.shift * (denom_z / 2);
            if p.shift.abs() > 1 {
                *cofactors.entry(p.shift.abs()).or_insert(0) += e;
            }
            add_q_factor(p.step, p.step, p.shift, e);
        } else {
            add_q_factor(p.offset, p.step, p.shift, e);
        }
    }

    for (&arg, &net) in &cofactors {
        if net < 0 {
            return Err(SpecError::ResidualPole { arg });
        }
    }

    let pole_order = u32::try_from((-s_tally).max(0)).expect("pole order fits u32");
    let s_power = u32::try_from(s_tally + pole_order as i64).expect("nonnegative by construction");
    Ok(PoleAnalysis { pole_order, s_power, sign_negative, monomial_exp, cofactors, q_factors })
}

/// Multiplies out merged q-side factors on the integer lattice, with an
/// optional z-shift override.  Denominator factors are accumulated as
/// positive powers so one inversion serves the whole product: every merged
/// factor has offset >= 1, so the denominator's leading coefficient is 1
/// and the inverse is exact to the same bound.  (Inverting factor-by-factor
/// and multiplying the dense inverses would square the cost.)
fn expand_q_factors(
    q_factors: &BTreeMap<(i64, i64, i64), i64>,
    drop_shifts: bool,
    terms: i64,
) -> Result<FourierSeries, SpecError> {
    let mut merged: BTreeMap<(i64, i64, i64), i64> = BTreeMap::new();
    for (&(offset, step, shift), &e) in q_factors {
        let shift = if drop_shifts { 0 } else { shift };
        *merged.entry((offset, step, shift)).or_insert(0) += e;
    }
    let mut numerator = FourierSeries::one(1, terms);
    let mut denominator = FourierSeries::one(1, terms);
    let mut has_denominator = false;
    for (&(offset, step, shift), &e) in &merged {
        if e == 0 {
            continue;
        }
        let power = i32::try_from(e.abs()).map_err(|_| SpecError::InvalidParameter {
            description: "merged exponent overflows i32".into(),
        })?;
        let factor = build_pochhammer(offset, step, shift, power, terms)?;
        if e > 0 {
            numerator = numerator.mul(&factor);
        } else {
            denominator = denominator.mul(&factor);
            has_denominator = true;
        }
    }
    if has_denominator {
        Ok(numerator.mul(&denominator.invert()?))
    } else {
        Ok(numerator)
    }
}

/// Elaborates a spec into the expansion of `phi * (e(z/2) - e(-z/2))^nu`
/// with `terms` exponent-lattice steps of precision.
pub fn elaborate_spec(spec: &ProductSpec, terms: i64) -> Result<Elaboration, SpecError> {
    assert!(terms >= 0, "cannot expand to a negative number of terms");
    let denom_z = spec.z_denom();
    let denom_q = spec.q_denom();
    let q_shift = spec.q_shift();
    let analysis = analyze_spec(spec, denom_z)?;

    // Assemble the elliptic prefactor.
    let mut prefactor = EllipticPolynomial::monomial(
        if analysis.sign_negative { -1 } else { 1 },
        analysis.monomial_exp,
        denom_z,
    );
    for (&arg, &net) in &analysis.cofactors {
        let u = EllipticPolynomial::from_terms(2, (0..arg).map(|j| (arg - 1 - 2 * j, 1)));
        prefactor = &prefactor * &u.pow(u32::try_from(net).unwrap());
    }
    prefactor = &prefactor * &EllipticPolynomial::half_difference().pow(analysis.s_power);

    let acc = expand_q_factors(&analysis.q_factors, false, terms)?.scale(&prefactor);

    // Fold the rational shift into absolute exponents on the 1/denom_q lattice.
    let shift_key = q_shift.numer() * (denom_q / q_shift.denom());
    let series = acc.with_denom(denom_q).shift(shift_key);

    Ok(Elaboration { series, pole_order: analysis.pole_order, q_shift, denom_z })
}

/// Elaborates the z = 0 specialization of a spec directly, without ever
/// forming elliptic coefficients: z-shifts inside the q-product evaluate to
/// 1 and drop out, and the compensated prefactor evaluates to the integer
/// `sign * prod |arg|^net * 0^s_power`.
///
/// The result has the same lattice, bound, pole order, and error behavior
/// as [`elaborate_spec`] followed by coefficient-wise evaluation at z = 0,
/// but runs on scalar coefficients throughout — an independent route to the
/// specialized form, and the fast path for long scans.
pub fn elaborate_specialization(spec: &ProductSpec, terms: i64) -> Result<Elaboration, SpecError> {
    assert!(terms >= 0, "cannot expand to a negative number of terms");
    let denom_z = spec.z_denom();
    let denom_q = spec.q_denom();
    let q_shift = spec.q_shift();
    let analysis = analyze_spec(spec, denom_z)?;

    let acc = if analysis.s_power > 0 {
        // A leftover zero of (e(z/2) - e(-z/2)) kills every coefficient.
        FourierSeries::zero(1, terms)
    } else {
        let mut value = BigInt::from(if analysis.sign_negative { -1 } else { 1 });
        for (&arg, &net) in &analysis.cofactors {
            // u_|arg| evaluates to |arg| at z = 0.
            value *= BigInt::from(arg).pow(u32::try_from(net).unwrap());
        }
        expand_q_factors(&analysis.q_factors, true, terms)?
            .scale(&EllipticPolynomial::constant(value))
    };

    let shift_key = q_shift.numer() * (denom_q / q_shift.denom());
    let series = acc.with_denom(denom_q).shift(shift_key);

    Ok(Elaboration { series, pole_order: analysis.pole_order, q_shift, denom_z })
}
