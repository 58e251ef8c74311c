//! Exact expansion engine for Jacobi-form products and their congruences.
//!
//! The crate is organized bottom-up:
//!
//! * [`elliptic`] — exact Laurent polynomials in the elliptic variable
//! * [`series`] — truncated Fourier series in q with elliptic coefficients
//! * [`product`] — eta/theta/Pochhammer product specifications and their
//!   elaboration into expansions
//! * [`jacobi`] — expansions, specialization at z = 0, and restriction to
//!   arithmetic progressions
//! * [`congruence`] — congruence detection, explainability via cyclotomic
//!   divisibility, square-class orbits, and maximality bounds
//! * [`oracle`] — independent combinatorial cross-checks (partition
//!   enumeration, rank/crank statistics, naive product re-expansion)

pub mod congruence;
pub mod elliptic;
pub mod jacobi;
pub mod oracle;
pub mod product;
pub mod series;

pub use congruence::{
    check_explainable, check_maximality_bounds, detect_congruence, orbit_violations,
    scan_maximal_progressions, square_class_orbit, verify_square_class_theorem, AnalysisError,
    CongruenceQuery, CongruenceReport, CoprimalityMode, MaximalityCheck, DEFAULT_MIN_EVIDENCE,
};
pub use elliptic::EllipticPolynomial;
pub use jacobi::{JacobiError, JacobiExpansion, Lattice, Specialization};
pub use product::{
    build_pochhammer, elaborate_spec, elaborate_specialization, Elaboration, NamedFactor,
    PochhammerFactor, ProductSpec, SpecError,
};
pub use series::{FourierSeries, SeriesError};
