use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{HalfLaurent, QScalar};
use crate::{Error, Result};

/// Polynomial in `x = [1]^2 = q - 2 + q^{-1}` with rational coefficients,
/// ascending by power of `x`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct XPolynomial(Vec<BigRational>);

impl XPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        XPolynomial(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        XPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn coeff(&self, g: usize) -> BigRational {
        self.0.get(g).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, or `None` if some coefficient is fractional.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Self {
        self.0
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| {
                acc.mul(inner).add(&Self::new(vec![c.clone()]))
            })
    }

    /// `x -> x^n`
    pub fn substitute_power(&self, n: usize) -> Self {
        assert!(n >= 1);
        let mut out = vec![BigRational::zero(); (self.0.len().max(1) - 1) * n + 1];
        for (i, c) in self.0.iter().enumerate() {
            out[i * n] = c.clone();
        }
        Self::new(out)
    }

    /// Evaluates at `x = q - 2 + q^{-1}` as a Laurent polynomial in `v`.
    pub fn to_laurent(&self) -> HalfLaurent {
        let x = quantum_bracket(1).pow(2);
        self.0.iter().rev().fold(HalfLaurent::zero(), |acc, c| {
            acc.mul(&x).add(&HalfLaurent::constant(c.clone()))
        })
    }

    pub fn to_qscalar(&self) -> QScalar {
        QScalar::from_laurent(&self.to_laurent())
    }

    /// Evaluates at an arbitrary scalar.
    pub fn eval(&self, at: &QScalar) -> QScalar {
        self.0.iter().rev().fold(QScalar::zero(), |acc, c| {
            &(&acc * at) + &QScalar::from_rational(c.clone())
        })
    }
}

impl Serialize for XPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for XPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| s.parse::<BigRational>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| serde::de::Error::custom("bad coefficient"))?;
        Ok(XPolynomial::new(coeffs))
    }
}

impl fmt::Display for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match g {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "x^{g}")?,
                _ => write!(f, "{mag}*x^{g}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for XPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPolynomial({self})")
    }
}

/// `[m] = v^m - v^{-m}`
pub fn quantum_bracket(m: i64) -> HalfLaurent {
    HalfLaurent::from_int_terms(&[(m, 1), (-m, -1)])
}

/// Rewrites a symmetric Laurent polynomial in integer powers of `q` as a
/// polynomial in `x = q - 2 + q^{-1}`, peeling from the top exponent.
pub fn to_x_polynomial(f: &QScalar) -> Result<XPolynomial> {
    let f = f.as_laurent().ok_or(Error::NotPolynomial)?;
    laurent_to_x(&f)
}

pub fn laurent_to_x(f: &HalfLaurent) -> Result<XPolynomial> {
    if f.terms().any(|(e, _)| e % 2 != 0) {
        return Err(Error::HalfPower);
    }
    if *f != f.invert() {
        return Err(Error::NotSymmetric);
    }
    let top = f.max_exp().map_or(0, |e| e / 2).max(0) as usize;
    // work[i] is the coefficient of q^i, i >= 0; symmetry makes the negative
    // half redundant.
    let mut work: Vec<BigRational> = (0..=top).map(|i| f.coeff(2 * i as i64)).collect();
    let mut out = vec![BigRational::zero(); top + 1];
    for n in (0..=top).rev() {
        let c = std::mem::take(&mut work[n]);
        if c.is_zero() {
            continue;
        }
        // x^n = sum_j (-1)^{n-j} C(2n, n-j) (q^j + q^{-j}) for j >= 1, plus
        // the j = 0 term (-1)^n C(2n, n).
        let mut binom = BigInt::one();
        let mut row = vec![BigInt::zero(); 2 * n + 1];
        for (k, slot) in row.iter_mut().enumerate() {
            *slot = binom.clone();
            binom = binom * BigInt::from(2 * n - k) / BigInt::from(k + 1);
        }
        for j in 0..n {
            let mut b = BigRational::from_integer(row[n - j].clone());
            if (n - j) % 2 == 1 {
                b = -b;
            }
            work[j] -= &c * b;
        }
        out[n] = c;
    }
    Ok(XPolynomial::new(out))
}

/// A denominator for `f` as a polynomial in `x`: the norm
/// `D(v) D(-v) D(1/v) D(-1/v)` of the reduced denominator `D`, which is
/// symmetric with only even powers of `v`. Positive leading coefficient.
pub fn x_denominator(f: &QScalar) -> Result<XPolynomial> {
    let d = f.denominator();
    let neg = HalfLaurent::from_terms(d.terms().map(|(e, c)| {
        (e, if e % 2 == 0 { c.clone() } else { -c.clone() })
    }));
    let norm = d.mul(&neg).mul(&d.invert()).mul(&neg.invert());
    let b = laurent_to_x(&norm)?;
    Ok(if b.leading().is_some_and(Signed::is_negative) {
        b.scale(&-BigRational::one())
    } else {
        b
    })
}

/// `ψ_n(x) = [n]^2` in the `x` basis.
pub fn psi(n: u32) -> XPolynomial {
    assert!(n >= 1, "psi is defined for n >= 1");
    laurent_to_x(&quantum_bracket(n as i64).pow(2)).expect("[n]^2 is symmetric")
}

/// Exponent of `p` in the nonzero rational `r`.
pub fn xi_valuation(r: &BigRational, p: u64) -> Result<i64> {
    if r.is_zero() {
        return Err(Error::ZeroValuation);
    }
    if !super::intpoly::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let p = BigInt::from(p);
    let val = |mut n: BigInt| {
        let mut k = 0i64;
        while (&n % &p).is_zero() {
            n /= &p;
            k += 1;
        }
        k
    };
    Ok(val(r.numer().abs()) - val(r.denom().abs()))
}
