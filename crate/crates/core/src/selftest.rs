//! Property suites run by the `selftest` command. Each claim reports the
//! ranges it swept exhaustively and the first failing case.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::congruence::{self, CongruenceReport, SweepBounds};
use crate::gv::{gv_table_with, gw_from_gv, moebius, moebius_invert, p_integrality};
use crate::partitions::{enumerate_partitions, hooks, k_lambda, mn_character, n_lambda, stats};
use crate::qalgebra::{psi, to_x_polynomial, x_denominator, HalfLaurent, QScalar, XPolynomial};
use crate::report::verify_table;
use crate::schur::{
    schur_by_characters, schur_hook, schur_principal, schur_shifted, w_lambda, w_pair, w_pair_reflected, WCache,
};
use crate::vertex::{enumerate_classes, w_vector, w_vector_expanded, Amplitude, CurveClass, ToricDiagram};
use crate::{Exec, Partition, Result};

pub type ClaimReport = CongruenceReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestBounds {
    pub partition_degree: usize,
    pub character_degree: usize,
    pub x_round_trip_degree: usize,
    pub psi_max_n: u32,
    pub hook_degree: usize,
    pub symmetry_degree: usize,
    pub monic_degree: usize,
    /// `(|μ|, |λ|)` for the character cross-check.
    pub character_route: (usize, usize),
    pub vector_norm: u64,
    pub moebius_max_n: u64,
    pub inversion_max_component: u64,
    pub p2_d_max: u64,
    pub fk_d_max: u64,
    pub congruence: SweepBounds,
}

impl Default for SelftestBounds {
    fn default() -> Self {
        SelftestBounds {
            partition_degree: 12,
            character_degree: 5,
            x_round_trip_degree: 3,
            psi_max_n: 12,
            hook_degree: 6,
            symmetry_degree: 6,
            monic_degree: 4,
            character_route: (4, 3),
            vector_norm: 3,
            moebius_max_n: 10_000,
            inversion_max_component: 12,
            p2_d_max: 3,
            fk_d_max: 3,
            congruence: SweepBounds::default(),
        }
    }
}

impl SelftestBounds {
    pub fn deep() -> Self {
        SelftestBounds {
            partition_degree: 16,
            character_degree: 7,
            x_round_trip_degree: 4,
            psi_max_n: 20,
            hook_degree: 7,
            symmetry_degree: 7,
            monic_degree: 5,
            character_route: (5, 3),
            vector_norm: 4,
            moebius_max_n: 100_000,
            inversion_max_component: 20,
            p2_d_max: 4,
            fk_d_max: 4,
            congruence: SweepBounds::deep(),
        }
    }
}

fn claim<T, F>(exec: Exec, id: &str, ranges: String, cases: &[T], check: F) -> ClaimReport
where
    T: Sync + std::fmt::Debug,
    F: Fn(&T) -> Result<bool> + Sync + Send,
{
    let results = exec.map(cases, |c| check(c));
    let mut failing = cases.iter().zip(&results).filter(|(_, r)| !matches!(r, Ok(true)));
    let counterexample = failing.next().map(|(c, r)| match r {
        Err(e) => format!("{c:?}: {e}"),
        _ => format!("{c:?}"),
    });
    let failures = counterexample.iter().count() as u64 + failing.count() as u64;
    ClaimReport {
        claim: id.into(),
        ranges,
        cases: cases.len() as u64,
        pass: failures == 0,
        failures,
        counterexample,
    }
}

fn partitions_up_to(d: usize) -> Vec<Partition> {
    (0..=d).flat_map(enumerate_partitions).collect()
}

fn pairs_with_total(d: usize) -> Vec<(Partition, Partition)> {
    let all = partitions_up_to(d);
    all.iter()
        .flat_map(|l| {
            all.iter()
                .filter(move |m| l.degree() + m.degree() <= d)
                .map(move |m| (l.clone(), m.clone()))
        })
        .collect()
}

fn permutation_counts(n: usize) -> HashMap<Vec<usize>, u64> {
    let mut counts = HashMap::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for s in 0..n {
            let mut len = 0;
            let mut c = s;
            while !seen[c] {
                seen[c] = true;
                c = perm[c];
                len += 1;
            }
            if len > 0 {
                cycles.push(len);
            }
        }
        cycles.sort_unstable_by(|a, b| b.cmp(a));
        *counts.entry(cycles).or_insert(0) += 1;
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    counts
}

fn is_monic_integral(b: &XPolynomial) -> bool {
    b.is_integral() && b.leading().is_some_and(|l| l.is_one())
}

fn partition_claims(b: &SelftestBounds, exec: Exec) -> Vec<ClaimReport> {
    let d = b.partition_degree;
    let all = partitions_up_to(d);
    let mut out = vec![
        claim(exec, "partitions.hook_sum", format!("|λ| <= {d}"), &all, |l| {
            let s: i64 = hooks(l).iter().map(|&h| h as i64).sum();
            Ok(s - k_lambda(l) / 2 == 2 * n_lambda(l) as i64 + l.degree() as i64)
        }),
        claim(exec, "partitions.k_antisymmetry", format!("|λ| <= {d}"), &all, |l| {
            let k = k_lambda(l);
            Ok(k % 2 == 0 && k == -k_lambda(&l.transpose()))
        }),
        claim(exec, "partitions.hooks_transpose", format!("|λ| <= {d}"), &all, |l| {
            let mut a = hooks(l);
            let mut t = hooks(&l.transpose());
            a.sort_unstable();
            t.sort_unstable();
            Ok(a == t)
        }),
    ];
    let n_max = b.character_degree;
    let degrees: Vec<usize> = (1..=n_max).collect();
    out.push(claim(
        exec,
        "partitions.character_orthogonality",
        format!("1 <= |λ| <= {n_max}"),
        &degrees,
        |&n| {
            let counts = permutation_counts(n);
            let n_fact: BigInt = (1..=n as u64).map(BigInt::from).product();
            for lambda in enumerate_partitions(n) {
                let mut total = BigInt::zero();
                for rho in enumerate_partitions(n) {
                    let chi = mn_character(&lambda, &rho)?;
                    let size = BigInt::from(counts[rho.parts()]);
                    if &size * stats(&rho).z != n_fact {
                        return Ok(false);
                    }
                    total += &chi * &chi * size;
                }
                if total != n_fact {
                    return Ok(false);
                }
            }
            Ok(true)
        },
    ));
    out
}

fn qalgebra_claims(b: &SelftestBounds, exec: Exec) -> Vec<ClaimReport> {
    let deg = b.x_round_trip_degree;
    let width = 5usize;
    let polys: Vec<XPolynomial> = (0..width.pow(deg as u32 + 1))
        .map(|mut idx| {
            let c: Vec<i64> = (0..=deg)
                .map(|_| {
                    let v = (idx % width) as i64 - 2;
                    idx /= width;
                    v
                })
                .collect();
            XPolynomial::from_ints(&c)
        })
        .collect();
    let mut out = vec![claim(
        exec,
        "qalgebra.x_round_trip",
        format!("deg h <= {deg}, |coeff| <= 2"),
        &polys,
        |h| Ok(to_x_polynomial(&h.to_qscalar())? == *h),
    )];

    // symmetric even-exponent Laurent polynomials with integer coefficients
    let sym: Vec<Vec<i64>> = (0..width.pow(deg as u32 + 1))
        .map(|mut idx| {
            (0..=deg)
                .map(|_| {
                    let v = (idx % width) as i64 - 2;
                    idx /= width;
                    v
                })
                .collect()
        })
        .collect();
    out.push(claim(
        exec,
        "qalgebra.symmetric_is_integral",
        format!("q-degree <= {deg}, |coeff| <= 2"),
        &sym,
        |c| {
            let mut f = HalfLaurent::zero();
            for (j, &a) in c.iter().enumerate() {
                let j = j as i64;
                f = f.add(&HalfLaurent::from_int_terms(&[(2 * j, a)]));
                if j > 0 {
                    f = f.add(&HalfLaurent::from_int_terms(&[(-2 * j, a)]));
                }
            }
            Ok(to_x_polynomial(&QScalar::from_laurent(&f))?.is_integral())
        },
    ));

    let ns: Vec<u32> = (1..=b.psi_max_n).collect();
    out.push(claim(exec, "qalgebra.psi_monic", format!("1 <= n <= {}", b.psi_max_n), &ns, |&n| {
        let p = psi(n);
        Ok(p.degree() == Some(n as usize) && p.leading().is_some_and(|l| l.is_one()) && p.coeff(0).is_zero())
    }));

    let samples: Vec<Partition> = partitions_up_to(4).into_iter().skip(1).collect();
    out.push(claim(exec, "qalgebra.field_inverse", "S_λ(q^α), 1 <= |λ| <= 4".into(), &samples, |l| {
        let a = schur_principal(l);
        let b = w_lambda(&l.transpose());
        let ok = (&(&a / &b) * &(&b / &a)).is_one()
            && a.invert_q().invert_q() == a
            && a.substitute_power(1) == a;
        Ok(ok)
    }));
    out
}

fn schur_claims(b: &SelftestBounds, exec: Exec) -> Vec<ClaimReport> {
    let hd = b.hook_degree;
    let lams = partitions_up_to(hd);
    let mut out = vec![claim(exec, "schur.jacobi_trudi_vs_hook", format!("|λ| <= {hd}"), &lams, |l| {
        Ok(schur_principal(l) == schur_hook(l))
    })];

    let sd = b.symmetry_degree;
    let pairs = pairs_with_total(sd);
    out.push(claim(exec, "schur.transpose_symmetry", format!("|λ|+|μ| <= {sd}"), &pairs, |(l, m)| {
        Ok(w_pair(&l.transpose(), &m.transpose()) == w_pair_reflected(l, m))
    }));
    let lams_sd = partitions_up_to(sd);
    out.push(claim(exec, "schur.w_lambda_reflection", format!("|λ| <= {sd}"), &lams_sd, |l| {
        let sign = if l.degree() % 2 == 0 { QScalar::one() } else { -QScalar::one() };
        Ok(w_lambda(&l.transpose()) == &sign * &w_lambda(l).invert_q())
    }));

    let md = b.monic_degree;
    let mono: Vec<(Partition, Partition)> = partitions_up_to(md)
        .iter()
        .flat_map(|l| partitions_up_to(md).into_iter().map(move |m| (l.clone(), m)))
        .collect();
    out.push(claim(exec, "schur.monic_denominator", format!("|λ|, |μ| <= {md}"), &mono, |(l, m)| {
        Ok(is_monic_integral(&x_denominator(&schur_principal(m))?)
            && is_monic_integral(&x_denominator(&schur_shifted(l, m))?))
    }));

    let (dm, dl) = b.character_route;
    let chars: Vec<(Partition, Partition)> = partitions_up_to(dl)
        .iter()
        .flat_map(|l| partitions_up_to(dm).into_iter().map(move |m| (l.clone(), m)))
        .collect();
    out.push(claim(
        exec,
        "schur.character_expansion",
        format!("|μ| <= {dm}, |λ| <= {dl}"),
        &chars,
        |(l, m)| Ok(schur_by_characters(l, m) == schur_shifted(l, m)),
    ));
    out
}

fn vertex_claims(b: &SelftestBounds, exec: Exec, cache: &WCache) -> Vec<ClaimReport> {
    let n = b.vector_norm;
    let p2 = ToricDiagram::p2();
    let vectors: Vec<_> = (0..=n)
        .flat_map(|d| p2.enumerate_vectors(&CurveClass::new(vec![d])).expect("P2 classes"))
        .collect();
    let ranges = format!("P2, ‖R‖ <= {n}");
    let mut out = vec![
        claim(exec, "vertex.conjugation", ranges.clone(), &vectors, |r| {
            Ok(w_vector(&r.transpose(), &p2, cache)? == w_vector(r, &p2, cache)?.invert_q())
        }),
        claim(exec, "vertex.monic_denominator", ranges.clone(), &vectors, |r| {
            Ok(is_monic_integral(&x_denominator(&w_vector(r, &p2, cache)?)?))
        }),
        claim(exec, "vertex.cyclic_vs_expanded", ranges, &vectors, |r| {
            Ok(w_vector(r, &p2, cache)? == w_vector_expanded(r, &p2)?)
        }),
    ];

    let diagrams = [ToricDiagram::p2(), ToricDiagram::fk(0), ToricDiagram::fk(1), ToricDiagram::fk(2)];
    let graded: Vec<(usize, CurveClass)> = diagrams
        .iter()
        .enumerate()
        .flat_map(|(i, d)| enumerate_classes(d.n_classes(), n + 1).into_iter().map(move |c| (i, c)))
        .collect();
    out.push(claim(
        exec,
        "vertex.grading",
        format!("P2, F0, F1, F2; |Σ| <= {}", n + 1),
        &graded,
        |(i, c)| {
            let d = &diagrams[*i];
            Ok(d.enumerate_vectors(c)?.iter().all(|r| d.class_of(&r.degree_vector()) == *c))
        },
    ));

    let f1 = ToricDiagram::fk(1);
    let conv: Vec<CurveClass> = (1..=n)
        .flat_map(|d| enumerate_classes(2, d).into_iter().filter(move |c| c.degree() == d))
        .collect();
    out.push(claim(exec, "vertex.ones_convolution", format!("F1, |Σ| <= {n}"), &conv, |sigma| {
        let amp = Amplitude::new(&f1, cache);
        let d = sigma.degree() as usize;
        let ones = Partition::new(vec![1; d])?;
        let e = [amp.eta(&CurveClass::new(vec![1, 0]))?, amp.eta(&CurveClass::new(vec![0, 1]))?];
        let (a, b) = (sigma.components()[0], sigma.components()[1]);
        let fact = |k: u64| (1..=k).map(BigInt::from).product::<BigInt>();
        let binom = BigRational::new(fact(a + b), fact(a) * fact(b));
        let expect = &QScalar::from_rational(binom) * &(&e[0].pow(a as i64)? * &e[1].pow(b as i64)?);
        Ok(amp.eta_composition(&ones, sigma)? == expect)
    }));
    out
}

fn gv_claims(b: &SelftestBounds, exec: Exec, cache: &WCache) -> Vec<ClaimReport> {
    let ns: Vec<u64> = (1..=b.moebius_max_n).collect();
    let mut out = vec![claim(
        exec,
        "gv.moebius_sum",
        format!("1 <= n <= {}", b.moebius_max_n),
        &ns,
        |&n| {
            let s: i64 = (1..=n).filter(|k| n % k == 0).map(moebius).sum();
            Ok(s == i64::from(n == 1))
        },
    )];

    let m = b.inversion_max_component;
    let classes: Vec<(CurveClass, bool)> = (0..=m)
        .flat_map(|a| (0..=m).map(move |c| CurveClass::new(vec![a, c])))
        .filter(|c| !c.is_zero())
        .flat_map(|c| [(c.clone(), true), (c, false)])
        .collect();
    out.push(claim(
        exec,
        "gv.inversion_round_trip",
        format!("Σ in [0,{m}]^2, α(n) in {{1/n, 1}}"),
        &classes,
        |(sigma, harmonic)| {
            let alpha = |n: u64| {
                if *harmonic {
                    BigRational::new(BigInt::one(), BigInt::from(n))
                } else {
                    BigRational::one()
                }
            };
            let g = |c: &CurveClass, k: u64| {
                let (x, y) = (c.components()[0] as i64, c.components()[1] as i64);
                let num = HalfLaurent::from_int_terms(&[(0, 3 * x - y + 1), (2 * k as i64, x * y - 2)]);
                let den = HalfLaurent::from_int_terms(&[(0, 1), (2, (x + k as i64) % 3 - 1)]);
                QScalar::from_fraction(&num, &den)
            };
            let f = |c: &CurveClass, k: u64| moebius_invert(g, alpha, c, k);
            let mut back = QScalar::zero();
            for n in sigma.divisors() {
                back = &back + &(&QScalar::from_rational(alpha(n)) * &f(&sigma.div(n), n)?);
            }
            Ok(back == g(sigma, 1)?)
        },
    ));

    let surfaces = [(ToricDiagram::p2(), b.p2_d_max), (ToricDiagram::fk(0), b.fk_d_max), (ToricDiagram::fk(1), b.fk_d_max)];
    for (d, d_max) in &surfaces {
        let label = d.label();
        let amp = Amplitude::new(d, cache).with_exec(exec).with_d_max(*d_max);
        let table = gv_table_with(&amp, *d_max);
        let ranges = format!("{label}, |Σ| <= {d_max}");
        let Ok(table) = table else {
            let err = table.unwrap_err();
            out.push(ClaimReport {
                claim: format!("gv.table.{label}"),
                ranges,
                cases: 1,
                pass: false,
                failures: 1,
                counterexample: Some(err.to_string()),
            });
            continue;
        };
        let report = verify_table(&table);
        out.push(claim(
            Exec::Sequential,
            &format!("gv.degree_and_leading.{label}"),
            ranges.clone(),
            &report.checks,
            |c| Ok(c.pass),
        ));
        let classes: Vec<CurveClass> = table.iter().map(|p| p.sigma.clone()).collect();
        out.push(claim(exec, &format!("gv.gw_round_trip.{label}"), ranges, &classes, |s| {
            Ok(gw_from_gv(&table, s)? == amp.free_energy_coefficient(s)?)
        }));
    }

    let p2 = ToricDiagram::p2();
    let primes = [2u64, 3];
    out.push(claim(exec, "gv.p_integrality", "P2, Σ = 1, p in {2, 3}".into(), &primes, |&p| {
        let amp = Amplitude::new(&p2, cache);
        Ok(p_integrality(&amp, &CurveClass::new(vec![1]), p)?.is_none_or(|v| v >= 0))
    }));

    let fresh = WCache::disabled();
    let d = ToricDiagram::fk(1);
    let cold = gv_table_with(&Amplitude::new(&d, &fresh).with_exec(exec), 2);
    let warm = gv_table_with(&Amplitude::new(&d, cache).with_exec(exec), 2);
    let same = matches!((&cold, &warm), (Ok(a), Ok(b)) if a == b);
    out.push(ClaimReport {
        claim: "gv.cache_transparency".into(),
        ranges: "F1, |Σ| <= 2, cache disabled vs enabled".into(),
        cases: 1,
        pass: same,
        failures: u64::from(!same),
        counterexample: (!same).then(|| "tables differ".into()),
    });
    out
}

/// Runs every suite in a fixed order.
pub fn run(bounds: &SelftestBounds, exec: Exec, cache: &WCache) -> Vec<ClaimReport> {
    let mut out = partition_claims(bounds, exec);
    out.extend(qalgebra_claims(bounds, exec));
    out.extend(schur_claims(bounds, exec));
    out.extend(vertex_claims(bounds, exec, cache));
    out.extend(gv_claims(bounds, exec, cache));
    out.extend(congruence::sweep(&bounds.congruence, exec).into_iter().map(|mut r| {
        r.claim = format!("congruence.{}", r.claim);
        r
    }));
    out
}
