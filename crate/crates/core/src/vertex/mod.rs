//! Toric diagrams and the graded free energy of the cyclic amplitude
//! `Σ_R⃗ W_{R⃗,γ} e^{-|R⃗|·T}`.
//!
//! The Kähler grading is structural: every quantity is keyed by its
//! [`CurveClass`], no `t_i` ever takes a value.

mod diagram;

use std::collections::HashMap;
use std::sync::Mutex;

use num_rational::BigRational;

use crate::partitions::{enumerate_partitions, k_lambda, theta, Partition};
use crate::qalgebra::QScalar;
use crate::schur::{schur_principal, schur_shifted, WCache};
use crate::{Error, Exec, Result};

pub use diagram::{
    enumerate_classes, sub_classes, CurveClass, PartitionVector, Surface, ToricDiagram,
};

/// Which of the two equivalent forms of `W_{R⃗,γ}` to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AmplitudeModel {
    /// `W_{R^N R^1} W_{R^1 R^2} ⋯ W_{R^{N-1} R^N}` from cached Hopf-link values.
    #[default]
    Cyclic,
    /// `q^{-‖R⃗‖} Π S_{R^i}(q^α) Π S_{R^i}(q^{R^{i-1}+α})` straight from the
    /// Schur evaluators.
    Expanded,
}

/// `(-1)^{Σ γ_i |R^i|} q^{½ Σ k_{R^i} γ_i}`
fn framing(r: &PartitionVector, d: &ToricDiagram) -> QScalar {
    let mut parity = 0i64;
    let mut v_exp = 0i64;
    for (p, &g) in r.parts().iter().zip(d.gamma()) {
        parity += g * p.degree() as i64;
        v_exp += g * k_lambda(p);
    }
    let f = QScalar::v_pow(v_exp);
    if parity.rem_euclid(2) == 1 {
        -f
    } else {
        f
    }
}

fn check_len(r: &PartitionVector, d: &ToricDiagram) -> Result<()> {
    if r.len() != d.n_edges() {
        return Err(Error::LengthMismatch {
            expected: d.n_edges(),
            got: r.len(),
        });
    }
    Ok(())
}

/// `W_{R⃗,γ}` in the cyclic form.
pub fn w_vector(r: &PartitionVector, d: &ToricDiagram, cache: &WCache) -> Result<QScalar> {
    check_len(r, d)?;
    let parts = r.parts();
    let n = parts.len();
    let mut acc = framing(r, d);
    for i in 0..n {
        let prev = &parts[(i + n - 1) % n];
        acc = &acc * &cache.w_pair(prev, &parts[i]);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `W_{R⃗,γ}` in the expanded form.
pub fn w_vector_expanded(r: &PartitionVector, d: &ToricDiagram) -> Result<QScalar> {
    check_len(r, d)?;
    let parts = r.parts();
    let n = parts.len();
    let mut acc = &framing(r, d) * &QScalar::q_pow(-(r.norm() as i64));
    for p in parts {
        acc = &acc * &schur_principal(p);
    }
    for i in 0..n {
        acc = &acc * &schur_shifted(&parts[(i + n - 1) % n], &parts[i]);
    }
    Ok(acc)
}

pub fn w_vector_with(
    r: &PartitionVector,
    d: &ToricDiagram,
    cache: &WCache,
    model: AmplitudeModel,
) -> Result<QScalar> {
    match model {
        AmplitudeModel::Cyclic => w_vector(r, d, cache),
        AmplitudeModel::Expanded => w_vector_expanded(r, d),
    }
}

/// Evaluation context for one diagram: memoises `⟨η_d⟩_Σ` and the free
/// energy coefficients `H_Σ` per class. Safe to share across threads.
pub struct Amplitude<'a> {
    diagram: &'a ToricDiagram,
    cache: &'a WCache,
    exec: Exec,
    model: AmplitudeModel,
    d_max: Option<u64>,
    eta_memo: Mutex<HashMap<CurveClass, QScalar>>,
    h_memo: Mutex<HashMap<CurveClass, QScalar>>,
}

impl<'a> Amplitude<'a> {
    pub fn new(diagram: &'a ToricDiagram, cache: &'a WCache) -> Self {
        Amplitude {
            diagram,
            cache,
            exec: Exec::default(),
            model: AmplitudeModel::default(),
            d_max: None,
            eta_memo: Mutex::new(HashMap::new()),
            h_memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_model(mut self, model: AmplitudeModel) -> Self {
        self.model = model;
        self
    }

    /// Refuse classes with `|Σ| > d_max`.
    pub fn with_d_max(mut self, d_max: u64) -> Self {
        self.d_max = Some(d_max);
        self
    }

    pub fn diagram(&self) -> &ToricDiagram {
        self.diagram
    }

    pub fn cache(&self) -> &WCache {
        self.cache
    }

    pub fn exec(&self) -> Exec {
        self.exec
    }

    fn admit(&self, sigma: &CurveClass) -> Result<()> {
        self.diagram.check_class(sigma)?;
        if sigma.is_zero() {
            return Err(Error::ZeroClass);
        }
        if let Some(d_max) = self.d_max {
            if sigma.degree() > d_max {
                return Err(Error::DegreeTooLarge {
                    degree: sigma.degree(),
                    d_max,
                });
            }
        }
        Ok(())
    }

    pub fn w_vector(&self, r: &PartitionVector) -> Result<QScalar> {
        w_vector_with(r, self.diagram, self.cache, self.model)
    }

    /// `⟨η_{|Σ|}⟩_Σ = Σ_{|R⃗|·A=Σ} W_{R⃗,γ}`
    pub fn eta(&self, sigma: &CurveClass) -> Result<QScalar> {
        self.admit(sigma)?;
        if let Some(v) = self.eta_memo.lock().unwrap().get(sigma) {
            return Ok(v.clone());
        }
        let vectors = self.diagram.enumerate_vectors(sigma)?;
        let total = self.exec.map_reduce(
            &vectors,
            Ok(QScalar::zero()),
            |r| self.w_vector(r),
            |a: Result<QScalar>, b| Ok(&a? + &b?),
        )?;
        self.eta_memo
            .lock()
            .unwrap()
            .insert(sigma.clone(), total.clone());
        Ok(total)
    }

    /// `⟨η_λ⟩_Σ`: sum over ordered decompositions `Σ = Σ_1 + ⋯ + Σ_l` with
    /// `|Σ_i| = λ_i` of `Π ⟨η_{λ_i}⟩_{Σ_i}`.
    pub fn eta_composition(&self, lambda: &Partition, sigma: &CurveClass) -> Result<QScalar> {
        self.diagram.check_class(sigma)?;
        self.composition_rec(lambda.parts(), sigma)
    }

    fn composition_rec(&self, parts: &[usize], rem: &CurveClass) -> Result<QScalar> {
        let Some((&first, rest)) = parts.split_first() else {
            return Ok(if rem.is_zero() {
                QScalar::one()
            } else {
                QScalar::zero()
            });
        };
        let needed: u64 = parts.iter().map(|&p| p as u64).sum();
        if needed != rem.degree() {
            return Ok(QScalar::zero());
        }
        let mut total = QScalar::zero();
        for c in sub_classes(rem, first as u64) {
            let tail = self.composition_rec(rest, &rem.checked_sub(&c).unwrap())?;
            if tail.is_zero() {
                continue;
            }
            total = &total + &(&self.eta(&c)? * &tail);
        }
        Ok(total)
    }

    /// `H_Σ = Σ_{λ ⊢ |Σ|} θ_λ ⟨η_λ⟩_Σ`, the `e^{-ω·Σ}` coefficient of the
    /// free energy.
    pub fn free_energy_coefficient(&self, sigma: &CurveClass) -> Result<QScalar> {
        self.admit(sigma)?;
        if let Some(v) = self.h_memo.lock().unwrap().get(sigma) {
            return Ok(v.clone());
        }
        let mut total = QScalar::zero();
        for lambda in enumerate_partitions(sigma.degree() as usize) {
            let c = self.eta_composition(&lambda, sigma)?;
            if c.is_zero() {
                continue;
            }
            let th: BigRational = theta(&lambda);
            total = &total + &(&QScalar::from_rational(th) * &c);
        }
        self.h_memo
            .lock()
            .unwrap()
            .insert(sigma.clone(), total.clone());
        Ok(total)
    }

    /// Fills the `η` memo for all `classes` in parallel.
    pub fn prime_eta(&self, classes: &[CurveClass]) -> Result<()> {
        self.exec
            .map(classes, |c| self.eta(c).map(|_| ()))
            .into_iter()
            .collect()
    }

    /// Fills the `H` memo for all `classes` in parallel.
    pub fn prime_free_energy(&self, classes: &[CurveClass]) -> Result<()> {
        self.exec
            .map(classes, |c| self.free_energy_coefficient(c).map(|_| ()))
            .into_iter()
            .collect()
    }
}

pub fn enumerate_vectors(d: &ToricDiagram, sigma: &CurveClass) -> Result<Vec<PartitionVector>> {
    d.enumerate_vectors(sigma)
}

pub fn eta(d: &ToricDiagram, sigma: &CurveClass, cache: &WCache) -> Result<QScalar> {
    Amplitude::new(d, cache).eta(sigma)
}

pub fn eta_composition(
    d: &ToricDiagram,
    lambda: &Partition,
    sigma: &CurveClass,
    cache: &WCache,
) -> Result<QScalar> {
    Amplitude::new(d, cache).eta_composition(lambda, sigma)
}

pub fn free_energy_coefficient(
    d: &ToricDiagram,
    sigma: &CurveClass,
    cache: &WCache,
) -> Result<QScalar> {
    Amplitude::new(d, cache).free_energy_coefficient(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::part;
    use crate::qalgebra::{quantum_bracket, x_denominator};
    use num_traits::One;

    fn cls(c: &[u64]) -> CurveClass {
        CurveClass::new(c.to_vec())
    }

    fn inv_b1_sq() -> QScalar {
        QScalar::one() / QScalar::from_laurent(&quantum_bracket(1).pow(2))
    }

    #[test]
    fn builtins() {
        let p2 = ToricDiagram::p2();
        assert_eq!(p2.gamma(), &[1, 1, 1]);
        assert_eq!(p2.surface(), Some(Surface::P2));
        assert_eq!(ToricDiagram::fk(0).gamma(), &[0, 0, 0, 0]);
        assert_eq!(
            ToricDiagram::fk(1).degree_matrix(),
            &[vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 1]]
        );
        assert_eq!(ToricDiagram::fk(2).surface(), Some(Surface::Fk(2)));
        assert!(matches!(
            ToricDiagram::builtin("dp3", None),
            Err(Error::UnknownDiagram(_))
        ));
    }

    #[test]
    fn diagram_validation() {
        let ok = r#"{"n_edges":3,"gamma":[1,1,1],"degree_matrix":[[1],[1],[1]],"class_names":["H"]}"#;
        assert_eq!(ToricDiagram::from_json(ok).unwrap(), ToricDiagram::p2());
        for bad in [
            r#"{"n_edges":3,"gamma":[1,1],"degree_matrix":[[1],[1],[1]],"class_names":["H"]}"#,
            r#"{"n_edges":3,"gamma":[1,1,1],"degree_matrix":[[1],[0],[1]],"class_names":["H"]}"#,
            r#"{"n_edges":3,"gamma":[1,1,1],"degree_matrix":[[1],[1],[1]],"class_names":[]}"#,
            r#"{"n_edges":0,"gamma":[],"degree_matrix":[],"class_names":["H"]}"#,
            r#"{"n_edges":3}"#,
        ] {
            assert!(matches!(ToricDiagram::from_json(bad), Err(Error::InvalidDiagram(_))), "{bad}");
        }
    }

    #[test]
    fn vector_enumeration() {
        let p2 = ToricDiagram::p2();
        assert_eq!(p2.enumerate_vectors(&cls(&[0])).unwrap(), vec![PartitionVector::empty(3)]);
        let one = p2.enumerate_vectors(&cls(&[1])).unwrap();
        assert_eq!(one.len(), 3);
        let two = p2.enumerate_vectors(&cls(&[2])).unwrap();
        assert_eq!(two.len(), 9);
        let single = |p: &Partition| two.iter().filter(|r| r.parts().iter().filter(|x| *x == p).count() == 1).count();
        assert_eq!(single(&part(&[2])), 3);
        assert_eq!(single(&part(&[1, 1])), 3);
        assert_eq!(two.iter().filter(|r| r.parts().iter().filter(|x| **x == part(&[1])).count() == 2).count(), 3);
        let f1 = ToricDiagram::fk(1);
        for d in 0..=4u64 {
            for c in enumerate_classes(2, d) {
                for r in f1.enumerate_vectors(&c).unwrap() {
                    assert_eq!(f1.class_of(&r.degree_vector()), c);
                }
            }
        }
    }

    #[test]
    fn w_vector_examples() {
        let p2 = ToricDiagram::p2();
        let cache = WCache::in_memory();
        assert!(w_vector(&PartitionVector::empty(3), &p2, &cache).unwrap().is_one());
        let r = PartitionVector::new(vec![part(&[1]), Partition::empty(), Partition::empty()]);
        assert_eq!(w_vector(&r, &p2, &cache).unwrap(), -inv_b1_sq());
        let r = PartitionVector::new(vec![part(&[1]), part(&[1]), Partition::empty()]);
        let direct = &(&cache.w_pair(&part(&[1]), &part(&[1])) * &cache.w_pair(&part(&[1]), &Partition::empty()))
            * &cache.w_pair(&Partition::empty(), &part(&[1]));
        assert_eq!(w_vector(&r, &p2, &cache).unwrap(), direct);
        assert!(matches!(
            w_vector(&PartitionVector::empty(2), &p2, &cache),
            Err(Error::LengthMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn forms_agree_and_conjugate() {
        let p2 = ToricDiagram::p2();
        let cache = WCache::in_memory();
        for d in 0..=3 {
            for r in p2.enumerate_vectors(&cls(&[d])).unwrap() {
                let w = w_vector(&r, &p2, &cache).unwrap();
                assert_eq!(w, w_vector_expanded(&r, &p2).unwrap(), "{r:?}");
                assert_eq!(w_vector(&r.transpose(), &p2, &cache).unwrap(), w.invert_q(), "{r:?}");
                let b = x_denominator(&w).unwrap();
                assert!(b.is_integral() && b.leading().unwrap().is_one());
            }
        }
    }

    #[test]
    fn eta_examples() {
        let p2 = ToricDiagram::p2();
        let cache = WCache::in_memory();
        let amp = Amplitude::new(&p2, &cache);
        let e1 = amp.eta(&cls(&[1])).unwrap();
        assert_eq!(e1, &QScalar::from_int(-3) * &inv_b1_sq());
        assert_eq!(amp.eta(&cls(&[0])), Err(Error::ZeroClass));
        assert_eq!(amp.eta_composition(&part(&[2]), &cls(&[2])).unwrap(), amp.eta(&cls(&[2])).unwrap());
        assert_eq!(amp.eta_composition(&part(&[1, 1]), &cls(&[2])).unwrap(), &e1 * &e1);
        assert!(amp.eta_composition(&part(&[1, 1]), &cls(&[1])).unwrap().is_zero());
        assert_eq!(amp.free_energy_coefficient(&cls(&[1])).unwrap(), e1);
        let h2 = &amp.eta(&cls(&[2])).unwrap() - &(&QScalar::from_ratio(1, 2) * &(&e1 * &e1));
        assert_eq!(amp.free_energy_coefficient(&cls(&[2])).unwrap(), h2);
        let bounded = Amplitude::new(&p2, &cache).with_d_max(2);
        assert_eq!(bounded.eta(&cls(&[3])), Err(Error::DegreeTooLarge { degree: 3, d_max: 2 }));
    }

    #[test]
    fn f0_degree_one() {
        let f0 = ToricDiagram::fk(0);
        let cache = WCache::in_memory();
        let amp = Amplitude::new(&f0, &cache);
        let vectors = f0.enumerate_vectors(&cls(&[1, 0])).unwrap();
        assert_eq!(vectors.len(), 2);
        let brute: QScalar = vectors.iter().map(|r| w_vector_expanded(r, &f0).unwrap()).sum();
        assert_eq!(amp.eta(&cls(&[1, 0])).unwrap(), brute);
        assert_eq!(amp.free_energy_coefficient(&cls(&[1, 0])).unwrap(), brute);
    }

    #[test]
    fn ones_composition_is_convolution() {
        let f1 = ToricDiagram::fk(1);
        let cache = WCache::in_memory();
        let amp = Amplitude::new(&f1, &cache);
        for d in 1..=3u64 {
            let ones = Partition::new(vec![1; d as usize]).unwrap();
            for sigma in enumerate_classes(2, d).into_iter().filter(|c| c.degree() == d) {
                // multinomial: Π_i (eta_i)^{k_i} · d! / Π k_i!
                let e = [amp.eta(&cls(&[1, 0])).unwrap(), amp.eta(&cls(&[0, 1])).unwrap()];
                let (a, b) = (sigma.0[0], sigma.0[1]);
                let binom = (1..=d).product::<u64>() / ((1..=a).product::<u64>() * (1..=b).product::<u64>());
                let expect = &QScalar::from_int(binom as i64)
                    * &(&e[0].pow(a as i64).unwrap() * &e[1].pow(b as i64).unwrap());
                assert_eq!(amp.eta_composition(&ones, &sigma).unwrap(), expect, "{sigma}");
            }
        }
    }
}
