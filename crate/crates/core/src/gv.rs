//! Möbius inversion of the free energy down to the integer polynomials
//! `P_Σ(x) = Σ_g N̂^g_Σ x^g`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::qalgebra::{quantum_bracket, to_x_polynomial, xi_valuation, QScalar, XPolynomial};
use crate::schur::WCache;
use crate::vertex::{enumerate_classes, Amplitude, CurveClass, ToricDiagram};
use crate::{Error, Exec, Result};

/// The Möbius function.
pub fn moebius(n: u64) -> i64 {
    assert!(n >= 1, "moebius is defined for n >= 1");
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Largest `n` checked when validating that `α` is completely multiplicative.
const ALPHA_PROBE: u64 = 12;

fn check_multiplicative<A: Fn(u64) -> BigRational>(alpha: &A, limit: u64) -> Result<()> {
    let limit = limit.max(ALPHA_PROBE);
    for a in 1..=limit {
        for b in a..=limit {
            if alpha(a) * alpha(b) != alpha(a * b) {
                return Err(Error::NotMultiplicative { a, b });
            }
        }
    }
    Ok(())
}

/// `f(Σ, m) = Σ_{n|Σ} μ(n) α(n) g(Σ/n, nm)`, the inverse of
/// `g(Σ, m) = Σ_{n|Σ} α(n) f(Σ/n, nm)` for completely multiplicative `α`.
pub fn moebius_invert<G, A>(g: G, alpha: A, sigma: &CurveClass, m: u64) -> Result<QScalar>
where
    G: Fn(&CurveClass, u64) -> Result<QScalar>,
    A: Fn(u64) -> BigRational,
{
    if sigma.is_zero() {
        return Err(Error::ZeroClass);
    }
    check_multiplicative(&alpha, sigma.content())?;
    let mut total = QScalar::zero();
    for n in sigma.divisors() {
        let mu = moebius(n);
        if mu == 0 {
            continue;
        }
        let coeff = alpha(n) * BigInt::from(mu);
        if coeff.is_zero() {
            continue;
        }
        let term = g(&sigma.div(n), n * m)?;
        total = &total + &(&QScalar::from_rational(coeff) * &term);
    }
    Ok(total)
}

fn harmonic_alpha(n: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(n))
}

/// `P_Σ(x)` with integer coefficients `N̂^g_Σ`, genus ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVPolynomial {
    pub sigma: CurveClass,
    pub coeffs: Vec<BigInt>,
}

impl GVPolynomial {
    pub fn new(sigma: CurveClass, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        GVPolynomial { sigma, coeffs }
    }

    /// `None` when `P_Σ ≡ 0`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_xpoly(&self) -> XPolynomial {
        XPolynomial::from_bigints(&self.coeffs)
    }

    /// `N^g_Σ = (-1)^{g-1} N̂^g_Σ`
    pub fn sign_convert(&self) -> Vec<BigInt> {
        sign_convert(&self.coeffs)
    }
}

pub fn sign_convert(p_hat: &[BigInt]) -> Vec<BigInt> {
    p_hat
        .iter()
        .enumerate()
        .map(|(g, c)| if g % 2 == 0 { -c } else { c.clone() })
        .collect()
}

/// `[1]^2 Σ_{n|Σ} μ(n)/n H_{Σ/n}(q^n)` as a reduced scalar, before the
/// change of basis.
pub fn gv_scalar(amp: &Amplitude<'_>, sigma: &CurveClass) -> Result<QScalar> {
    let f = moebius_invert(
        |c, m| Ok(amp.free_energy_coefficient(c)?.substitute_power(m as u32)),
        harmonic_alpha,
        sigma,
        1,
    )?;
    Ok(&f * &QScalar::from_laurent(&quantum_bracket(1).pow(2)))
}

/// `P_Σ` for one class. A fractional coefficient is reported as
/// [`Error::IntegralityViolation`] with the offending values attached.
pub fn gv_polynomial(amp: &Amplitude<'_>, sigma: &CurveClass) -> Result<GVPolynomial> {
    let scalar = gv_scalar(amp, sigma)?;
    let x = to_x_polynomial(&scalar)?;
    match x.to_integers() {
        Some(coeffs) => Ok(GVPolynomial::new(sigma.clone(), coeffs)),
        None => Err(Error::IntegralityViolation {
            sigma: sigma.components().to_vec(),
            diagnostic: format!("P([1]^2) = {scalar}; in x: {x}"),
        }),
    }
}

/// All `P_Σ` with `0 < |Σ| ≤ d_max` for one diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GVTable {
    pub diagram: ToricDiagram,
    pub d_max: u64,
    pub classes: BTreeMap<CurveClass, GVPolynomial>,
}

impl GVTable {
    pub fn get(&self, sigma: &CurveClass) -> Option<&GVPolynomial> {
        self.classes.get(sigma)
    }

    pub fn iter(&self) -> impl Iterator<Item = &GVPolynomial> {
        self.classes.values()
    }
}

/// Computes every class up to `d_max`. Work is staged so that parallel
/// workers never duplicate a memoised value: all `η` first, then all `H`,
/// then the inversions.
pub fn gv_table_with(amp: &Amplitude<'_>, d_max: u64) -> Result<GVTable> {
    if d_max == 0 {
        return Err(Error::Format("d_max must be at least 1".into()));
    }
    let diagram = amp.diagram();
    let classes = enumerate_classes(diagram.n_classes(), d_max);
    amp.prime_eta(&classes)?;
    amp.prime_free_energy(&classes)?;
    let polys = amp.exec().map(&classes, |c| gv_polynomial(amp, c));
    let mut out = BTreeMap::new();
    for p in polys {
        let p = p?;
        out.insert(p.sigma.clone(), p);
    }
    Ok(GVTable {
        diagram: diagram.clone(),
        d_max,
        classes: out,
    })
}

pub fn gv_table(d: &ToricDiagram, d_max: u64, cache: &WCache, exec: Exec) -> Result<GVTable> {
    let amp = Amplitude::new(d, cache).with_exec(exec).with_d_max(d_max);
    gv_table_with(&amp, d_max)
}

/// `Σ_{n|Σ} (1/n) [n]^{-2} P_{Σ/n}([n]^2)`, the free energy rebuilt from
/// the table.
pub fn gw_from_gv(table: &GVTable, sigma: &CurveClass) -> Result<QScalar> {
    if sigma.is_zero() {
        return Err(Error::ZeroClass);
    }
    let mut total = QScalar::zero();
    for n in sigma.divisors() {
        let sub = sigma.div(n);
        let p = table
            .get(&sub)
            .ok_or_else(|| Error::MissingClass(sub.components().to_vec()))?;
        let bn2 = QScalar::from_laurent(&quantum_bracket(n as i64).pow(2));
        let value = p.to_xpoly().eval(&bn2);
        let term = &(&value / &bn2) * &QScalar::from_ratio(1, n as i64);
        total = &total + &term;
    }
    Ok(total)
}

/// `ξ_p` of the rational prefactor of `H_{pΣ} - (1/p) H_Σ(q^p)` in
/// primitive form; `None` when the difference vanishes.
pub fn p_integrality(amp: &Amplitude<'_>, sigma: &CurveClass, p: u64) -> Result<Option<i64>> {
    let big = amp.free_energy_coefficient(&sigma.scale(p))?;
    let small = amp.free_energy_coefficient(sigma)?.substitute_power(p as u32);
    let diff = &big - &(&QScalar::from_ratio(1, p as i64) * &small);
    if diff.is_zero() {
        return Ok(None);
    }
    xi_valuation(diff.scale(), p).map(Some)
}
