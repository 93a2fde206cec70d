use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::HalfLaurent;
use crate::{Error, Result};

/// A reduced element of `Q(v)`, `v = q^{1/2}`.
///
/// Stored as `scale · v^shift · num(v) / den(v)` where `num` and `den` are
/// primitive integer polynomials with positive leading coefficient and
/// nonzero constant term, and `gcd(num, den) = 1`. Zero is `scale = 0`,
/// `num = den = 1`. The form is canonical, so derived equality is field
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    scale: BigRational,
    shift: i64,
    num: IntPoly,
    den: IntPoly,
}

/// Splits an integer polynomial into (signed content, low order, primitive
/// part with positive lead and nonzero constant term).
fn split(p: IntPoly) -> (BigInt, usize, IntPoly) {
    let low = p.low_order();
    let p = if low > 0 { p.shift_down(low) } else { p };
    let mut c = p.content();
    if p.lead().is_some_and(Signed::is_negative) {
        c = -c;
    }
    let prim = p.div_scalar(&c);
    (c, low, prim)
}

/// Converts a rational Laurent polynomial into (scale, shift, primitive poly).
fn laurent_parts(f: &HalfLaurent) -> (BigRational, i64, IntPoly) {
    let Some(lo) = f.min_exp() else {
        return (BigRational::zero(), 0, IntPoly::one());
    };
    let hi = f.max_exp().unwrap();
    let lcm = f
        .terms()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize + 1];
    for (e, c) in f.terms() {
        coeffs[(e - lo) as usize] = c.numer() * (&lcm / c.denom());
    }
    let (c, low, prim) = split(IntPoly::new(coeffs));
    debug_assert_eq!(low, 0);
    (BigRational::new(c, lcm), lo, prim)
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            scale: BigRational::zero(),
            shift: 0,
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QScalar {
            scale: c,
            shift: 0,
            num: IntPoly::one(),
            den: IntPoly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(c.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    /// `v^e`
    pub fn v_pow(e: i64) -> Self {
        QScalar {
            shift: e,
            ..Self::one()
        }
    }

    /// `q^e`
    pub fn q_pow(e: i64) -> Self {
        Self::v_pow(2 * e)
    }

    pub fn from_laurent(f: &HalfLaurent) -> Self {
        let (scale, shift, num) = laurent_parts(f);
        if scale.is_zero() {
            return Self::zero();
        }
        QScalar {
            scale,
            shift,
            num,
            den: IntPoly::one(),
        }
    }

    /// `num / den`, reduced.
    pub fn from_fraction(num: &HalfLaurent, den: &HalfLaurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&Self::from_laurent(num) / &Self::from_laurent(den))
    }

    /// Normalises `scale · v^shift · num / den` for arbitrary nonzero integer
    /// polynomials `num`, `den`.
    fn build(scale: BigRational, shift: i64, num: IntPoly, den: IntPoly) -> Self {
        if scale.is_zero() || num.is_zero() {
            return Self::zero();
        }
        let (cn, ln, num) = split(num);
        let (cd, ld, den) = split(den);
        let g = num.gcd(&den);
        let (num, den) = if g.degree() == 0 {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        QScalar {
            scale: scale * BigRational::new(cn, cd),
            shift: shift + ln as i64 - ld as i64,
            num,
            den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial (reduced denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The rational prefactor `r` in `r · f / g` with `f`, `g` primitive.
    pub fn scale(&self) -> &BigRational {
        &self.scale
    }

    pub fn numerator(&self) -> HalfLaurent {
        if self.is_zero() {
            return HalfLaurent::zero();
        }
        HalfLaurent::from_terms(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (self.shift + i as i64, &self.scale * c)),
        )
    }

    pub fn denominator(&self) -> HalfLaurent {
        HalfLaurent::from_terms(
            self.den
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64, BigRational::from_integer(c.clone()))),
        )
    }

    /// Primitive integer numerator and denominator polynomials (in `v`,
    /// without the `v^shift` factor).
    pub fn primitive_parts(&self) -> (&IntPoly, &IntPoly) {
        (&self.num, &self.den)
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// `Some(f)` when the value is a Laurent polynomial.
    pub fn as_laurent(&self) -> Option<HalfLaurent> {
        self.is_laurent().then(|| self.numerator())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QScalar {
            scale: self.scale.recip(),
            shift: -self.shift,
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `q -> q^n` (equivalently `v -> v^n`), `n >= 1`.
    pub fn substitute_power(&self, n: u32) -> Self {
        assert!(n >= 1, "substitution power must be positive");
        if n == 1 || self.is_zero() {
            return self.clone();
        }
        let n = n as usize;
        Self::build(
            self.scale.clone(),
            self.shift * n as i64,
            self.num.compose_power(n),
            self.den.compose_power(n),
        )
    }

    /// `q -> 1/q` (equivalently `v -> 1/v`).
    pub fn invert_q(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // p(1/v) = v^{-deg p} · rev(p)(v)
        let shift = -self.shift - self.num.degree() as i64 + self.den.degree() as i64;
        Self::build(
            self.scale.clone(),
            shift,
            self.num.reversed(),
            self.den.reversed(),
        )
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Mul<&'a QScalar> for &'a QScalar {
    type Output = QScalar;

    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cut = |p: &IntPoly, g: &IntPoly| {
            if g.degree() == 0 {
                p.clone()
            } else {
                p.div_exact(g).unwrap()
            }
        };
        QScalar {
            scale: &self.scale * &rhs.scale,
            shift: self.shift + rhs.shift,
            num: cut(&self.num, &g1).mul(&cut(&rhs.num, &g2)),
            den: cut(&self.den, &g2).mul(&cut(&rhs.den, &g1)),
        }
    }
}

impl<'a> Add<&'a QScalar> for &'a QScalar {
    type Output = QScalar;

    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = self.den.gcd(&rhs.den);
        let (d1, d2) = if g.degree() == 0 {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.div_exact(&g).unwrap(), rhs.den.div_exact(&g).unwrap())
        };
        let den = self.den.mul(&d2);
        let shift = self.shift.min(rhs.shift);
        let lcm = self.scale.denom().lcm(rhs.scale.denom());
        let k1 = self.scale.numer() * (&lcm / self.scale.denom());
        let k2 = rhs.scale.numer() * (&lcm / rhs.scale.denom());
        let t1 = self
            .num
            .mul(&d2)
            .scale(&k1)
            .shift_up((self.shift - shift) as usize);
        let t2 = rhs
            .num
            .mul(&d1)
            .scale(&k2)
            .shift_up((rhs.shift - shift) as usize);
        QScalar::build(BigRational::new(BigInt::one(), lcm), shift, t1.add(&t2), den)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;

    fn neg(self) -> QScalar {
        QScalar {
            scale: -&self.scale,
            ..self.clone()
        }
    }
}

impl<'a> Sub<&'a QScalar> for &'a QScalar {
    type Output = QScalar;

    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl<'a> Div<&'a QScalar> for &'a QScalar {
    type Output = QScalar;

    /// # Panics
    /// On division by zero; use [`QScalar::inv`] for a fallible version.
    fn div(self, rhs: &QScalar) -> QScalar {
        self * &rhs.inv().expect("division by zero QScalar")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl std::iter::Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::zero(), |a, b| &a + &b)
    }
}

impl From<HalfLaurent> for QScalar {
    fn from(f: HalfLaurent) -> Self {
        QScalar::from_laurent(&f)
    }
}

impl From<BigRational> for QScalar {
    fn from(c: BigRational) -> Self {
        QScalar::from_rational(c)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "({}) / ({})", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
