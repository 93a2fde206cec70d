//! Exact arithmetic in `v = q^{1/2}`.
//!
//! Every exponent is stored as a power of `v`: `k_λ` is even, so the
//! `q^{k_λ/4}` factors of the Hopf-link invariants stay integral.

pub mod intpoly;
mod laurent;
mod scalar;
mod xpoly;

pub use intpoly::IntPoly;
pub use laurent::HalfLaurent;
pub use scalar::QScalar;
pub use xpoly::{
    laurent_to_x, psi, quantum_bracket, to_x_polynomial, x_denominator, xi_valuation,
    XPolynomial,
};

/// `q -> q^n` on a scalar.
pub fn substitute_power(f: &QScalar, n: u32) -> QScalar {
    f.substitute_power(n)
}

/// `q -> 1/q` on a scalar.
pub fn invert_q(f: &QScalar) -> QScalar {
    f.invert_q()
}
