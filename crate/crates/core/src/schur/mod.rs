//! Schur functions at the principal specialisations `q^α = (1, q^{-1}, q^{-2}, ...)`
//! and `q^{λ+α} = (q^{λ_1}, q^{λ_2-1}, ...)`, and the Hopf-link invariants.

mod cache;

use num_rational::BigRational;
use num_traits::Zero;

use crate::partitions::{hooks, k_lambda, mn_character, n_lambda, enumerate_partitions, stats, Partition};
use crate::qalgebra::{quantum_bracket, HalfLaurent, QScalar};

pub use cache::{CacheStats, WCache};

/// The alphabet `q^{λ+α}`; the zero partition gives `q^α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecAlphabet {
    pub shift: Partition,
}

impl SpecAlphabet {
    pub fn principal() -> Self {
        SpecAlphabet { shift: Partition::empty() }
    }

    pub fn shifted(lambda: &Partition) -> Self {
        SpecAlphabet { shift: lambda.clone() }
    }

    /// `h_0, ..., h_r` on this alphabet.
    pub fn h_series(&self, r: usize) -> Vec<QScalar> {
        h_shifted_series(&self.shift, r)
    }

    /// `p_n` on this alphabet, summing the geometric tail in closed form.
    pub fn power_sum(&self, n: u32) -> QScalar {
        power_sum_shifted(&self.shift, n)
    }
}

/// `h_r(q^α) = φ_r(1/q) q^{r(r+1)/2} / Π_{i≤r} [i]^2`.
pub fn h_principal(r: usize) -> QScalar {
    let mut num = HalfLaurent::q_pow((r * (r + 1) / 2) as i64);
    let mut den = HalfLaurent::one();
    for i in 1..=r as i64 {
        num = num.mul(&HalfLaurent::from_int_terms(&[(0, 1), (-2 * i, -1)]));
        den = den.mul(&quantum_bracket(i).pow(2));
    }
    QScalar::from_fraction(&num, &den).expect("nonzero denominator")
}

/// `h_r(q^{λ+α})` for `r = 0..=r_max`: the `t`-expansion of
/// `Π_i (1 - q^{-i+1} t)/(1 - q^{λ_i-i+1} t) · H(q^α, t)`.
pub fn h_shifted_series(lambda: &Partition, r_max: usize) -> Vec<QScalar> {
    // correction product as a truncated series with Laurent coefficients
    let mut corr = vec![HalfLaurent::zero(); r_max + 1];
    corr[0] = HalfLaurent::one();
    for (idx, &part) in lambda.parts().iter().enumerate() {
        let i = idx as i64 + 1;
        let a = part as i64 - i + 1;
        // multiply by 1/(1 - q^a t)
        for j in 1..=r_max {
            let prev = corr[j - 1].mul(&HalfLaurent::q_pow(a));
            corr[j] = corr[j].add(&prev);
        }
        // multiply by (1 - q^{-i+1} t)
        for j in (1..=r_max).rev() {
            let prev = corr[j - 1].mul(&HalfLaurent::q_pow(1 - i));
            corr[j] = corr[j].sub(&prev);
        }
    }
    let base: Vec<QScalar> = (0..=r_max).map(h_principal).collect();
    let corr: Vec<QScalar> = corr.iter().map(QScalar::from_laurent).collect();
    (0..=r_max)
        .map(|r| (0..=r).map(|j| &corr[j] * &base[r - j]).sum())
        .collect()
}

pub fn h_shifted(lambda: &Partition, r: usize) -> QScalar {
    h_shifted_series(lambda, r).pop().unwrap()
}

/// Determinant over the field of reduced rational functions.
pub fn determinant(mut m: Vec<Vec<QScalar>>) -> QScalar {
    let n = m.len();
    let mut det = QScalar::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return QScalar::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = &det * &p;
        let pinv = p.inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &pinv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
        }
    }
    det
}

fn jacobi_trudi(mu: &Partition, h: &[QScalar]) -> QScalar {
    let n = mu.length();
    let entry = |i: usize, j: usize| {
        let idx = mu.part(i) as i64 - i as i64 + j as i64;
        if idx < 0 {
            QScalar::zero()
        } else {
            h[idx as usize].clone()
        }
    };
    determinant((0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect())
}

fn jt_order(mu: &Partition) -> usize {
    if mu.is_empty() {
        0
    } else {
        mu.part(0) + mu.length() - 1
    }
}

/// `S_λ(q^α)` by Jacobi–Trudi.
pub fn schur_principal(lambda: &Partition) -> QScalar {
    schur_shifted(&Partition::empty(), lambda)
}

/// `S_μ(q^{λ+α})` by Jacobi–Trudi over the shifted `h_r`.
pub fn schur_shifted(lambda: &Partition, mu: &Partition) -> QScalar {
    if mu.is_empty() {
        return QScalar::one();
    }
    let h = h_shifted_series(lambda, jt_order(mu));
    jacobi_trudi(mu, &h)
}

/// `S_λ(q^α) = q^{-n(λ)} Π_x 1/(1 - q^{-h(x)})`.
pub fn schur_hook(lambda: &Partition) -> QScalar {
    let mut den = HalfLaurent::one();
    for h in hooks(lambda) {
        den = den.mul(&HalfLaurent::from_int_terms(&[(0, 1), (-2 * h as i64, -1)]));
    }
    let num = HalfLaurent::q_pow(-(n_lambda(lambda) as i64));
    QScalar::from_fraction(&num, &den).expect("nonzero denominator")
}

/// `W_λ = q^{k_λ/4} Π_x 1/[h(x)]`.
pub fn w_lambda(lambda: &Partition) -> QScalar {
    let mut den = HalfLaurent::one();
    for h in hooks(lambda) {
        den = den.mul(&quantum_bracket(h as i64));
    }
    let num = HalfLaurent::v_pow(k_lambda(lambda) / 2);
    QScalar::from_fraction(&num, &den).expect("nonzero denominator")
}

/// `W_{λμ} = q^{-(|λ|+|μ|)/2} S_λ(q^α) S_μ(q^{λ+α})`, uncached.
pub fn w_pair(lambda: &Partition, mu: &Partition) -> QScalar {
    let pre = QScalar::v_pow(-((lambda.degree() + mu.degree()) as i64));
    &(&pre * &schur_principal(lambda)) * &schur_shifted(lambda, mu)
}

/// `p_n(q^{λ+α}) = Σ_i (q^{n(λ_i-i+1)} - q^{n(-i+1)}) + 1/(1 - q^{-n})`.
pub fn power_sum_shifted(lambda: &Partition, n: u32) -> QScalar {
    let n = n as i64;
    let mut finite = HalfLaurent::zero();
    for (idx, &part) in lambda.parts().iter().enumerate() {
        let i = idx as i64 + 1;
        finite = finite
            .add(&HalfLaurent::q_pow(n * (part as i64 - i + 1)))
            .sub(&HalfLaurent::q_pow(n * (1 - i)));
    }
    let tail = QScalar::from_fraction(
        &HalfLaurent::one(),
        &HalfLaurent::from_int_terms(&[(0, 1), (-2 * n, -1)]),
    )
    .expect("nonzero denominator");
    &QScalar::from_laurent(&finite) + &tail
}

/// `S_μ(q^{λ+α}) = Σ_ρ χ_μ(ρ)/z_ρ p_ρ(q^{λ+α})`, the character-expansion route.
pub fn schur_by_characters(lambda: &Partition, mu: &Partition) -> QScalar {
    let n = mu.degree();
    let p: Vec<QScalar> = (0..=n as u32)
        .map(|k| if k == 0 { QScalar::one() } else { power_sum_shifted(lambda, k) })
        .collect();
    let mut total = QScalar::zero();
    for rho in enumerate_partitions(n) {
        let chi = mn_character(mu, &rho).expect("equal degrees");
        if chi.is_zero() {
            continue;
        }
        let z = stats(&rho).z;
        let coeff = QScalar::from_rational(BigRational::new(chi, z));
        let prod = rho
            .parts()
            .iter()
            .fold(QScalar::one(), |acc, &k| &acc * &p[k]);
        total = &total + &(&coeff * &prod);
    }
    total
}

/// `(-1)^{|λ|+|μ|} W_{λμ}(1/q)`, the right side of the transpose symmetry.
pub fn w_pair_reflected(lambda: &Partition, mu: &Partition) -> QScalar {
    let w = w_pair(lambda, mu).invert_q();
    if (lambda.degree() + mu.degree()) % 2 == 1 {
        -w
    } else {
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::part;
    use crate::qalgebra::x_denominator;
    use num_traits::One;

    fn q_frac(num: &[(i64, i64)], den: &[(i64, i64)]) -> QScalar {
        let f = |t: &[(i64, i64)]| {
            HalfLaurent::from_int_terms(&t.iter().map(|&(e, c)| (2 * e, c)).collect::<Vec<_>>())
        };
        QScalar::from_fraction(&f(num), &f(den)).unwrap()
    }

    #[test]
    fn h_principal_examples() {
        assert!(h_principal(0).is_one());
        assert_eq!(h_principal(1), q_frac(&[(1, 1)], &[(1, 1), (0, -1)]));
    }

    #[test]
    fn h_principal_matches_truncated_series() {
        // t^r coefficient of Π_{i=1}^{K} (1 - q^{-i+1} t)^{-1} is exact in
        // q^{-1} up to order K.
        for r in 0..=3usize {
            let k = 12i64;
            let mut series = vec![HalfLaurent::zero(); r + 1];
            series[0] = HalfLaurent::one();
            for i in 1..=k {
                for j in 1..=r {
                    let prev = series[j - 1].mul(&HalfLaurent::q_pow(1 - i));
                    series[j] = series[j].add(&prev);
                }
            }
            // exact - series = O(q^{-k}); after clearing the denominator the
            // two sides agree above v^{-2k + deg den}.
            let exact = h_principal(r);
            let den = exact.denominator();
            let lhs = exact.numerator();
            let rhs = series[r].mul(&den);
            let floor = -2 * k + den.max_exp().unwrap();
            let top = lhs.max_exp().unwrap().max(rhs.max_exp().unwrap());
            for e in floor + 1..=top {
                assert_eq!(lhs.coeff(e), rhs.coeff(e), "r={r} exponent {e}");
            }
        }
    }

    #[test]
    fn h_shifted_examples() {
        for r in 0..4 {
            assert_eq!(h_shifted(&Partition::empty(), r), h_principal(r));
        }
        let one = part(&[1]);
        assert!(h_shifted(&one, 0).is_one());
        // (1 - t)/(1 - q t) H(q^α, t) at t^1: h_1 + q - 1
        let expect = &h_principal(1) + &q_frac(&[(1, 1), (0, -1)], &[(0, 1)]);
        assert_eq!(h_shifted(&one, 1), expect);
    }

    #[test]
    fn schur_examples() {
        assert!(schur_principal(&Partition::empty()).is_one());
        assert_eq!(schur_principal(&part(&[1])), q_frac(&[(1, 1)], &[(1, 1), (0, -1)]));
        // q^{-1}/((1-q^{-3})(1-q^{-1})^2) = q^4/((q^3-1)(q-1)^2)
        let expect = q_frac(&[(4, 1)], &[(5, 1), (4, -2), (3, 1), (2, -1), (1, 2), (0, -1)]);
        assert_eq!(schur_principal(&part(&[2, 1])), expect);
        assert!(schur_shifted(&part(&[3, 1]), &Partition::empty()).is_one());
        // S_(1)(q^{(1)+α}) = q + q^{-1}/(1 - q^{-1})
        let expect = &q_frac(&[(1, 1)], &[(0, 1)]) + &q_frac(&[(0, 1)], &[(1, 1), (0, -1)]);
        assert_eq!(schur_shifted(&part(&[1]), &part(&[1])), expect);
    }

    #[test]
    fn w_examples() {
        let b = |m| QScalar::from_laurent(&quantum_bracket(m));
        assert!(w_lambda(&Partition::empty()).is_one());
        assert_eq!(w_lambda(&part(&[1])), QScalar::one() / b(1));
        assert_eq!(w_lambda(&part(&[2])), QScalar::v_pow(1) / (b(1) * b(2)));
        assert!(w_pair(&Partition::empty(), &Partition::empty()).is_one());
        assert_eq!(w_pair(&part(&[1]), &Partition::empty()), w_lambda(&part(&[1])));
        let one = part(&[1]);
        assert_eq!(w_pair(&one, &one), w_pair_reflected(&one, &one));
    }

    #[test]
    fn hook_and_jacobi_trudi_agree() {
        for d in 0..=5 {
            for lam in enumerate_partitions(d) {
                assert_eq!(schur_principal(&lam), schur_hook(&lam), "{lam}");
                let w = &QScalar::v_pow(-(d as i64)) * &schur_principal(&lam);
                assert_eq!(w, w_lambda(&lam), "{lam}");
            }
        }
    }

    #[test]
    fn character_route_agrees() {
        for dl in 0..=2 {
            for lam in enumerate_partitions(dl) {
                for dm in 0..=3 {
                    for mu in enumerate_partitions(dm) {
                        assert_eq!(schur_by_characters(&lam, &mu), schur_shifted(&lam, &mu));
                    }
                }
            }
        }
    }

    #[test]
    fn transpose_symmetry_small() {
        for dl in 0..=2 {
            for lam in enumerate_partitions(dl) {
                for dm in 0..=2 {
                    for mu in enumerate_partitions(dm) {
                        assert_eq!(
                            w_pair(&lam.transpose(), &mu.transpose()),
                            w_pair_reflected(&lam, &mu),
                            "{lam} {mu}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn denominators_are_monic_in_x() {
        for d in 1..=3 {
            for lam in enumerate_partitions(d) {
                for mu in enumerate_partitions(2) {
                    let b = x_denominator(&schur_shifted(&lam, &mu)).unwrap();
                    assert!(b.is_integral());
                    assert!(b.leading().unwrap().is_one());
                }
            }
        }
    }
}
