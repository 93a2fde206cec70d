//! Dense univariate polynomials over the integers.
//!
//! This is the kernel under [`QScalar`](super::QScalar): every reduced
//! fraction is stored as a pair of primitive `IntPoly`s, so the GCD here is
//! the hot spot of the whole engine. Two GCD routes are provided. The
//! primitive pseudo-remainder sequence is the slow reference; the modular
//! route (images modulo 62-bit primes, CRT lift, trial division) is what
//! the arithmetic uses.

use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ascending coefficients, trailing zeros trimmed. The zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// Number of vanishing low-order coefficients (the power of the variable
    /// dividing the polynomial).
    pub fn low_order(&self) -> usize {
        self.0.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `x^k`; the caller guarantees `k <= low_order()`.
    pub fn shift_down(&self, k: usize) -> Self {
        IntPoly(self.0[k..].to_vec())
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend_from_slice(&self.0);
        IntPoly(c)
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lead().is_some_and(Signed::is_negative) {
            g = -g;
        }
        self.div_scalar(&g)
    }

    pub fn neg(&self) -> Self {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.0.get(i), other.0.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if let (Some(a), Some(b)) = (self.to_small(), other.to_small()) {
            if let Some(p) = mul_small(&a, &b) {
                return p;
            }
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
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

    fn to_small(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IntPoly(self.0.iter().map(|c| c * k).collect())
    }

    /// Exact division of every coefficient by `k`.
    pub fn div_scalar(&self, k: &BigInt) -> Self {
        if k.is_one() {
            return self.clone();
        }
        IntPoly(self.0.iter().map(|c| c / k).collect())
    }

    /// `p(x) -> p(x^n)`.
    pub fn compose_power(&self, n: usize) -> Self {
        if n == 1 || self.0.len() <= 1 {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); (self.0.len() - 1) * n + 1];
        for (i, c) in self.0.iter().enumerate() {
            out[i * n] = c.clone();
        }
        IntPoly(out)
    }

    /// `x^deg · p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.0.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c)
    }

    /// Pseudo-remainder of `self` by `d` (`d` nonzero).
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let db = d.degree();
        let ld = d.lead().expect("nonzero divisor").clone();
        let mut r = self.0.clone();
        while r.len() > db && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= &ld;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[shift + j] -= &lr * dc;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        IntPoly(r)
    }

    /// Exact quotient `self / d` over the integers, or `None` if `d` does
    /// not divide `self` in `Z[x]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if d.is_one() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.0.len() < d.0.len() {
            return None;
        }
        let db = d.degree();
        let ld = d.lead().unwrap();
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (t, rem) = top.div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.0.iter().enumerate() {
                r[k + j] -= &t * dc;
            }
            q[k] = t;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    /// GCD by the primitive pseudo-remainder sequence. Returns a primitive
    /// polynomial with positive leading coefficient (times the gcd of the
    /// contents).
    pub fn gcd_prs(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let cont = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&cont)
    }

    /// GCD by the modular route. Same normalisation as [`gcd_prs`](Self::gcd_prs).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.gcd_prs(other);
        }
        let cont = self.content().gcd(&other.content());
        let a = self.primitive_part();
        let b = other.primitive_part();
        if a.degree() == 0 || b.degree() == 0 {
            return Self::constant(cont);
        }
        if a == b {
            return a.scale(&cont);
        }
        match modular_gcd(&a, &b) {
            Some(g) => g.scale(&cont),
            None => a.gcd_prs(&b).scale(&cont),
        }
    }
}

fn mul_small(a: &[i64], b: &[i64]) -> Option<IntPoly> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    let bound: i128 = 1 << 100;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let acc = out[i + j] + (x as i128) * (y as i128);
            if acc.abs() > bound {
                return None;
            }
            out[i + j] = acc;
        }
    }
    Some(IntPoly::new(out.into_iter().map(BigInt::from).collect()))
}

// ---------------------------------------------------------------------------
// modular GCD

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(256);
        let mut n = (1u64 << 62) - 1;
        while out.len() < 256 {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(a: &IntPoly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = a
        .0
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Monic gcd over Z/p by the Euclidean algorithm.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    while !b.is_empty() {
        // a <- a mod b
        let inv = invmod(*b.last().unwrap(), p);
        while a.len() >= b.len() && !a.is_empty() {
            let t = mulmod(*a.last().unwrap(), inv, p);
            let shift = a.len() - b.len();
            for (j, &bc) in b.iter().enumerate() {
                let sub = mulmod(t, bc, p);
                a[shift + j] = (a[shift + j] + p - sub) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let inv = invmod(l, p);
        for c in a.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    a
}

fn symmetric_lift(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Brown/Collins dense modular GCD of two primitive polynomials of positive
/// degree. `None` only if the prime table is exhausted.
fn modular_gcd(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let gamma = a.lead().unwrap().gcd(b.lead().unwrap());
    let mut best: Option<(usize, Vec<BigInt>, BigInt)> = None;
    for &p in gcd_primes() {
        let pb = BigInt::from(p);
        if (a.lead().unwrap() % &pb).is_zero() || (b.lead().unwrap() % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(a, p), reduce(b, p), p);
        if g.len() <= 1 {
            return Some(IntPoly::one());
        }
        let deg = g.len() - 1;
        let gm = gamma.mod_floor(&pb).to_u64().unwrap();
        let image: Vec<u64> = g.iter().map(|&c| mulmod(c, gm, p)).collect();
        match &mut best {
            Some((d, _, _)) if deg > *d => continue,
            Some((d, coeffs, modulus)) if deg == *d => {
                // CRT: x ≡ coeffs (mod modulus), x ≡ image (mod p)
                let minv = invmod(modulus.mod_floor(&pb).to_u64().unwrap(), p);
                for (c, &r) in coeffs.iter_mut().zip(&image) {
                    let cm = c.mod_floor(&pb).to_u64().unwrap();
                    let diff = (r + p - cm) % p;
                    let t = mulmod(diff, minv, p);
                    *c += &*modulus * BigInt::from(t);
                }
                *modulus *= &pb;
            }
            _ => {
                best = Some((deg, image.iter().map(|&c| BigInt::from(c)).collect(), pb.clone()));
            }
        }
        let (_, coeffs, modulus) = best.as_ref().unwrap();
        let lifted = IntPoly::new(coeffs.iter().map(|c| symmetric_lift(c, modulus)).collect());
        let candidate = lifted.primitive_part();
        if a.div_exact(&candidate).is_some() && b.div_exact(&candidate).is_some() {
            return Some(candidate);
        }
    }
    None
}

impl std::fmt::Display for IntPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.sign() == Sign::Minus, c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{mag}*v")?,
                (_, true) => write!(f, "v^{i}")?,
                (_, false) => write!(f, "{mag}*v^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (v^2-1)(v+2) and (v^2-1)(v-3)
        let a = p(&[-1, 0, 1]).mul(&p(&[2, 1]));
        let b = p(&[-1, 0, 1]).mul(&p(&[-3, 1]));
        assert_eq!(a.gcd(&b), p(&[-1, 0, 1]));
        assert_eq!(a.gcd_prs(&b), p(&[-1, 0, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[1, -1])), IntPoly::one());
    }

    #[test]
    fn content_is_kept_in_gcd() {
        let a = p(&[6, 6]);
        let b = p(&[4, 4]);
        assert_eq!(a.gcd(&b), p(&[2, 2]));
        assert_eq!(a.gcd_prs(&b), p(&[2, 2]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 0, 1]);
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[1, 1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[3, 6])), None);
    }

    #[test]
    fn prime_table_is_prime() {
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561));
        assert!(gcd_primes().iter().all(|&q| q > 1 << 61));
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..=20, 1..7).prop_map(|c| IntPoly::from_i64(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn modular_and_prs_gcd_agree(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assume!(!c.is_zero());
            let x = a.mul(&c);
            let y = b.mul(&c);
            let g1 = x.gcd(&y);
            let g2 = x.gcd_prs(&y);
            prop_assert_eq!(&g1, &g2);
            if !x.is_zero() {
                prop_assert!(x.div_exact(&g1).is_some());
            }
            if !y.is_zero() {
                prop_assert!(y.div_exact(&g1).is_some());
            }
        }

        #[test]
        fn multiplication_matches_evaluation(a in small_poly(), b in small_poly(), x in -5i64..5) {
            prop_assert_eq!(a.mul(&b).eval_i64(x), a.eval_i64(x) * b.eval_i64(x));
        }
    }
}
