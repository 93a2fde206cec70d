//! Exact checks of the divisibility lemmas behind integrality, and the
//! sweeps that exercise them.
//!
//! Everything is big-integer or big-rational arithmetic; nothing is reduced
//! modulo anything before the final divisibility test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::qalgebra::{psi, xi_valuation, IntPoly, XPolynomial};
use crate::Exec;

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn p_pow(p: u64, r: u32) -> BigInt {
    Pow::pow(big(p), r)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * big(n - i) / big(i + 1);
    }
    acc
}

/// `C(n; k_1, ..., k_m)` with `n = Σ k_i`.
fn multinomial(parts: &[u64]) -> BigInt {
    let mut n = 0;
    let mut acc = BigInt::one();
    for &k in parts {
        n += k;
        acc *= binomial(n, k);
    }
    acc
}

/// `p^r | a^{p^r} - a^{p^{r-1}}`
pub fn check_fermat_lift(p: u64, r: u32, a: i64) -> bool {
    let a = BigInt::from(a);
    let hi = Pow::pow(&a, p.pow(r) as u32);
    let lo = Pow::pow(&a, p.pow(r - 1) as u32);
    ((hi - lo) % p_pow(p, r)).is_zero()
}

/// `a / gcd(a, b)` divides `C(a, b)`.
pub fn check_binomial_reduction(a: u64, b: u64) -> bool {
    assert!(b <= a, "requires 0 <= b <= a");
    if a == 0 {
        return true;
    }
    let q = a / a.gcd(&b);
    (binomial(a, b) % big(q)).is_zero()
}

fn int_coeffs(f: &XPolynomial) -> IntPoly {
    IntPoly::new(
        f.to_integers()
            .expect("frobenius check needs integer coefficients"),
    )
}

fn int_pow(f: &IntPoly, e: u64) -> IntPoly {
    let mut acc = IntPoly::one();
    let mut base = f.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

/// `f(x)^{p^r} ≡ f(x^p)^{p^{r-1}} mod p^r` coefficientwise.
///
/// # Panics
/// If `f` has a fractional coefficient.
pub fn check_frobenius_poly(f: &XPolynomial, p: u64, r: u32) -> bool {
    let g = int_coeffs(f);
    let lhs = int_pow(&g, p.pow(r));
    let rhs = int_pow(&g.compose_power(p as usize), p.pow(r - 1));
    let m = p_pow(p, r);
    lhs.sub(&rhs).coeffs().iter().all(|c| (c % &m).is_zero())
}

/// `C(p^r a; p^r a_i) ≡ C(p^{r-1} a; p^{r-1} a_i) mod p^{2r}`
pub fn check_multinomial_congruence(p: u64, r: u32, a_vec: &[u64]) -> bool {
    let hi: Vec<u64> = a_vec.iter().map(|&a| a * p.pow(r)).collect();
    let lo: Vec<u64> = a_vec.iter().map(|&a| a * p.pow(r - 1)).collect();
    ((multinomial(&hi) - multinomial(&lo)) % p_pow(p, 2 * r)).is_zero()
}

/// `A_p(n) = Σ_{k ≤ n, p ∤ k} 1/k`
pub fn harmonic_coprime(p: u64, n: u64) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for k in (1..=n).filter(|k| k % p != 0) {
        // num/den + 1/k
        num = num * big(k) + &den;
        den *= big(k);
        let g = num.gcd(&den);
        num /= &g;
        den /= &g;
    }
    BigRational::new(num, den)
}

/// `ξ_p(A_p(p^r b)) ≥ r` (a zero sum passes).
pub fn check_harmonic_valuation(p: u64, r: u32, b: u64) -> bool {
    let s = harmonic_coprime(p, p.pow(r) * b);
    match xi_valuation(&s, p) {
        Ok(v) => v >= r as i64,
        Err(_) => s.is_zero(),
    }
}

/// `ψ_{np}(x) - ψ_n(x)^p ≡ 0 mod p` coefficientwise.
pub fn check_psi_family(n: u32, p: u64) -> bool {
    let diff = psi(n * p as u32).sub(&psi(n).pow(p as u32));
    let p = BigRational::from_integer(big(p));
    diff.coeffs().iter().all(|c| (c / &p).is_integer())
}

/// Result of one exhaustive sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub claim: String,
    pub ranges: String,
    pub cases: u64,
    pub pass: bool,
    pub failures: u64,
    /// First failing case in sweep order.
    pub counterexample: Option<String>,
}

/// Sweep extents. [`SweepBounds::default`] is the standard run;
/// [`SweepBounds::deep`] widens every range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepBounds {
    pub primes: Vec<u64>,
    pub rs: Vec<u32>,
    pub fermat_abs_a: i64,
    pub binomial_max_a: u64,
    pub multinomial_max_sum: u64,
    pub multinomial_max_len: usize,
    pub frobenius_max_degree: usize,
    pub frobenius_abs_coeff: i64,
    pub psi_max_n: u32,
    pub harmonic_max_b: u64,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            primes: vec![2, 3, 5],
            rs: vec![1, 2],
            fermat_abs_a: 50,
            binomial_max_a: 60,
            multinomial_max_sum: 6,
            multinomial_max_len: 4,
            frobenius_max_degree: 2,
            frobenius_abs_coeff: 2,
            psi_max_n: 6,
            harmonic_max_b: 4,
        }
    }
}

impl SweepBounds {
    pub fn deep() -> Self {
        SweepBounds {
            primes: vec![2, 3, 5, 7],
            rs: vec![1, 2, 3],
            fermat_abs_a: 200,
            binomial_max_a: 200,
            multinomial_max_sum: 8,
            multinomial_max_len: 5,
            frobenius_max_degree: 3,
            frobenius_abs_coeff: 2,
            psi_max_n: 10,
            harmonic_max_b: 10,
        }
    }
}

fn compositions(max_sum: u64, max_len: usize) -> Vec<Vec<u64>> {
    fn rec(rem: u64, max_len: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        if prefix.len() == max_len {
            return;
        }
        for a in 1..=rem {
            prefix.push(a);
            rec(rem - a, max_len, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(max_sum, max_len, &mut Vec::new(), &mut out);
    out
}

fn small_polys(max_deg: usize, bound: i64) -> Vec<XPolynomial> {
    let width = (2 * bound + 1) as usize;
    let total = width.pow(max_deg as u32 + 1);
    (0..total)
        .map(|mut idx| {
            let coeffs: Vec<i64> = (0..=max_deg)
                .map(|_| {
                    let c = (idx % width) as i64 - bound;
                    idx /= width;
                    c
                })
                .collect();
            XPolynomial::from_ints(&coeffs)
        })
        .collect()
}

fn run<T: Sync + std::fmt::Debug>(
    exec: Exec,
    claim: &str,
    ranges: String,
    cases: &[T],
    check: impl Fn(&T) -> bool + Sync + Send,
) -> CongruenceReport {
    let results = exec.map(cases, |c| check(c));
    let mut failing = cases.iter().zip(&results).filter(|(_, ok)| !**ok);
    let counterexample = failing.next().map(|(c, _)| format!("{c:?}"));
    let failures = counterexample.iter().count() as u64 + failing.count() as u64;
    CongruenceReport {
        claim: claim.into(),
        ranges,
        cases: cases.len() as u64,
        pass: failures == 0,
        failures,
        counterexample,
    }
}

/// Runs every sweep; one report per claim, in a fixed order.
pub fn sweep(bounds: &SweepBounds, exec: Exec) -> Vec<CongruenceReport> {
    let b = bounds;
    let pr: Vec<(u64, u32)> = b
        .primes
        .iter()
        .flat_map(|&p| b.rs.iter().map(move |&r| (p, r)))
        .collect();
    let mut out = Vec::new();

    let cases: Vec<(u64, u32, i64)> = pr
        .iter()
        .flat_map(|&(p, r)| (-b.fermat_abs_a..=b.fermat_abs_a).map(move |a| (p, r, a)))
        .collect();
    out.push(run(
        exec,
        "fermat_lift",
        format!("p in {:?}, r in {:?}, |a| <= {}", b.primes, b.rs, b.fermat_abs_a),
        &cases,
        |&(p, r, a)| check_fermat_lift(p, r, a),
    ));

    let cases: Vec<(u64, u64)> = (0..=b.binomial_max_a)
        .flat_map(|a| (0..=a).map(move |k| (a, k)))
        .collect();
    out.push(run(
        exec,
        "binomial_reduction",
        format!("0 <= b <= a <= {}", b.binomial_max_a),
        &cases,
        |&(a, k)| check_binomial_reduction(a, k),
    ));

    let polys = small_polys(b.frobenius_max_degree, b.frobenius_abs_coeff);
    let cases: Vec<(u64, u32, XPolynomial)> = pr
        .iter()
        .flat_map(|&(p, r)| polys.iter().map(move |f| (p, r, f.clone())))
        .collect();
    out.push(run(
        exec,
        "frobenius_poly",
        format!(
            "p in {:?}, r in {:?}, deg f <= {}, |coeff| <= {}",
            b.primes, b.rs, b.frobenius_max_degree, b.frobenius_abs_coeff
        ),
        &cases,
        |(p, r, f)| check_frobenius_poly(f, *p, *r),
    ));

    let comps = compositions(b.multinomial_max_sum, b.multinomial_max_len);
    let cases: Vec<(u64, u32, Vec<u64>)> = pr
        .iter()
        .flat_map(|&(p, r)| comps.iter().map(move |a| (p, r, a.clone())))
        .collect();
    out.push(run(
        exec,
        "multinomial_congruence",
        format!(
            "p in {:?}, r in {:?}, sum a_i <= {}, len <= {}",
            b.primes, b.rs, b.multinomial_max_sum, b.multinomial_max_len
        ),
        &cases,
        |(p, r, a)| check_multinomial_congruence(*p, *r, a),
    ));

    let cases: Vec<(u32, u64)> = (1..=b.psi_max_n)
        .flat_map(|n| b.primes.iter().map(move |&p| (n, p)))
        .collect();
    out.push(run(
        exec,
        "psi_family",
        format!("n <= {}, p in {:?}", b.psi_max_n, b.primes),
        &cases,
        |&(n, p)| check_psi_family(n, p),
    ));

    let cases: Vec<(u64, u32, u64)> = pr
        .iter()
        .flat_map(|&(p, r)| (1..=b.harmonic_max_b).map(move |k| (p, r, k)))
        .collect();
    out.push(run(
        exec,
        "harmonic_valuation",
        format!("p in {:?}, r in {:?}, b <= {}", b.primes, b.rs, b.harmonic_max_b),
        &cases,
        |&(p, r, k)| check_harmonic_valuation(p, r, k),
    ));

    out
}
