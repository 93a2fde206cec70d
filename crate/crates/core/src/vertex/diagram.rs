use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::partitions::{enumerate_partitions, Partition};
use crate::{Error, Result};

/// A local toric surface in the cyclic one-loop form: `N` edges with
/// framings `γ_i` and an `N × m` degree matrix mapping edge degrees to curve
/// classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram")]
pub struct ToricDiagram {
    n_edges: usize,
    gamma: Vec<i64>,
    degree_matrix: Vec<Vec<u64>>,
    class_names: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    n_edges: usize,
    gamma: Vec<i64>,
    degree_matrix: Vec<Vec<u64>>,
    class_names: Vec<String>,
}

impl TryFrom<RawDiagram> for ToricDiagram {
    type Error = Error;

    fn try_from(r: RawDiagram) -> Result<Self> {
        ToricDiagram::new(r.n_edges, r.gamma, r.degree_matrix, r.class_names)
    }
}

/// The built-in families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    P2,
    Fk(u64),
}

impl Surface {
    /// `P^2`, `F_0` and `F_1`; the closed-form degree and leading
    /// coefficient are only claimed for these.
    pub fn is_fano(self) -> bool {
        matches!(self, Surface::P2 | Surface::Fk(0 | 1))
    }
}

impl ToricDiagram {
    pub fn new(
        n_edges: usize,
        gamma: Vec<i64>,
        degree_matrix: Vec<Vec<u64>>,
        class_names: Vec<String>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        if n_edges == 0 {
            return bad("n_edges must be positive".into());
        }
        if gamma.len() != n_edges {
            return bad(format!("gamma has {} entries, expected {n_edges}", gamma.len()));
        }
        if degree_matrix.len() != n_edges {
            return bad(format!(
                "degree_matrix has {} rows, expected {n_edges}",
                degree_matrix.len()
            ));
        }
        let m = class_names.len();
        if m == 0 {
            return bad("at least one curve class is required".into());
        }
        for (i, row) in degree_matrix.iter().enumerate() {
            if row.len() != m {
                return bad(format!("row {i} has {} entries, expected {m}", row.len()));
            }
            if row.iter().all(|&a| a == 0) {
                return bad(format!("row {i} is zero"));
            }
        }
        Ok(ToricDiagram {
            n_edges,
            gamma,
            degree_matrix,
            class_names,
        })
    }

    /// Local `P^2`: three lines of self-intersection one.
    pub fn p2() -> Self {
        Self::new(3, vec![1, 1, 1], vec![vec![1]; 3], vec!["H".into()]).unwrap()
    }

    /// Local Hirzebruch `F_k`, classes `(B, F)`: edges are a fiber, the
    /// section `E` (`E^2 = -k`), a fiber and `E + kF`.
    pub fn fk(k: u64) -> Self {
        let k_i = k as i64;
        Self::new(
            4,
            vec![0, -k_i, 0, k_i],
            vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![1, k]],
            vec!["B".into(), "F".into()],
        )
        .unwrap()
    }

    pub fn builtin(name: &str, k: Option<u64>) -> Result<Self> {
        match (name, k) {
            ("p2", _) => Ok(Self::p2()),
            ("fk", Some(k)) => Ok(Self::fk(k)),
            ("fk", None) => Err(Error::UnknownDiagram("fk requires k".into())),
            (other, _) => Err(Error::UnknownDiagram(other.into())),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDiagram(e.to_string()))
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn gamma(&self) -> &[i64] {
        &self.gamma
    }

    pub fn degree_matrix(&self) -> &[Vec<u64>] {
        &self.degree_matrix
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    /// Recognises the built-in families, whatever the diagram's origin.
    pub fn surface(&self) -> Option<Surface> {
        if *self == Self::p2() {
            return Some(Surface::P2);
        }
        let k = *self.degree_matrix.get(3)?.get(1)?;
        (*self == Self::fk(k)).then_some(Surface::Fk(k))
    }

    /// Short label, e.g. `p2`, `f1`, `custom`.
    pub fn label(&self) -> String {
        match self.surface() {
            Some(Surface::P2) => "p2".into(),
            Some(Surface::Fk(k)) => format!("f{k}"),
            None => "custom".into(),
        }
    }

    /// `|R⃗|·A` for an edge-degree vector.
    pub fn class_of(&self, degrees: &[usize]) -> CurveClass {
        let mut out = vec![0u64; self.n_classes()];
        for (row, &d) in self.degree_matrix.iter().zip(degrees) {
            for (o, &a) in out.iter_mut().zip(row) {
                *o += a * d as u64;
            }
        }
        CurveClass(out)
    }

    pub fn check_class(&self, sigma: &CurveClass) -> Result<()> {
        if sigma.0.len() != self.n_classes() {
            return Err(Error::ClassDimension {
                expected: self.n_classes(),
                got: sigma.0.len(),
            });
        }
        Ok(())
    }

    /// Edge-degree vectors `x` with `x·A = Σ`, lexicographic in `x`.
    pub fn degree_vectors(&self, sigma: &CurveClass) -> Result<Vec<Vec<usize>>> {
        self.check_class(sigma)?;
        fn rec(
            a: &[Vec<u64>],
            i: usize,
            rem: &mut Vec<u64>,
            prefix: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if i == a.len() {
                if rem.iter().all(|&r| r == 0) {
                    out.push(prefix.clone());
                }
                return;
            }
            let max = a[i]
                .iter()
                .zip(rem.iter())
                .filter(|(&ai, _)| ai > 0)
                .map(|(&ai, &r)| r / ai)
                .min()
                .unwrap();
            for d in 0..=max {
                for (r, &ai) in rem.iter_mut().zip(&a[i]) {
                    *r -= ai * d;
                }
                prefix.push(d as usize);
                rec(a, i + 1, rem, prefix, out);
                prefix.pop();
                for (r, &ai) in rem.iter_mut().zip(&a[i]) {
                    *r += ai * d;
                }
            }
        }
        let mut out = Vec::new();
        rec(
            &self.degree_matrix,
            0,
            &mut sigma.0.clone(),
            &mut Vec::new(),
            &mut out,
        );
        Ok(out)
    }

    /// All `R⃗` with `|R⃗|·A = Σ`: degree vectors in lexicographic order, each
    /// expanded over partitions in reverse-lexicographic order.
    pub fn enumerate_vectors(&self, sigma: &CurveClass) -> Result<Vec<PartitionVector>> {
        let mut out = Vec::new();
        for degrees in self.degree_vectors(sigma)? {
            let choices: Vec<Vec<Partition>> =
                degrees.iter().map(|&d| enumerate_partitions(d)).collect();
            let mut idx = vec![0usize; degrees.len()];
            loop {
                out.push(PartitionVector(
                    idx.iter()
                        .zip(&choices)
                        .map(|(&i, c)| c[i].clone())
                        .collect(),
                ));
                // odometer, last slot fastest
                let mut pos = degrees.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    idx[pos] += 1;
                    if idx[pos] < choices[pos].len() {
                        break;
                    }
                    idx[pos] = 0;
                }
                if idx.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for ToricDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (N={}, gamma={:?})", self.label(), self.n_edges, self.gamma)
    }
}

/// A curve class `Σ = (k_1, ..., k_m)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass(pub Vec<u64>);

impl CurveClass {
    pub fn new(components: Vec<u64>) -> Self {
        CurveClass(components)
    }

    pub fn components(&self) -> &[u64] {
        &self.0
    }

    /// `|Σ|`
    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// gcd of the components (0 for the zero class).
    pub fn content(&self) -> u64 {
        self.0.iter().fold(0, |g, &c| g.gcd(&c))
    }

    /// All `n ≥ 1` with `n | Σ`, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let g = self.content();
        (1..=g).filter(|n| g.is_multiple_of(*n)).collect()
    }

    /// `Σ / n`; `n` must divide every component.
    pub fn div(&self, n: u64) -> CurveClass {
        debug_assert!(self.0.iter().all(|c| c % n == 0));
        CurveClass(self.0.iter().map(|c| c / n).collect())
    }

    pub fn scale(&self, n: u64) -> CurveClass {
        CurveClass(self.0.iter().map(|c| c * n).collect())
    }

    /// Componentwise difference, if nonnegative.
    pub fn checked_sub(&self, other: &CurveClass) -> Option<CurveClass> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(CurveClass)
    }
}

impl fmt::Debug for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Every nonzero class with `m` components and `|Σ| ≤ d_max`, sorted
/// lexicographically.
pub fn enumerate_classes(m: usize, d_max: u64) -> Vec<CurveClass> {
    fn rec(m: usize, rem: u64, prefix: &mut Vec<u64>, out: &mut Vec<CurveClass>) {
        if prefix.len() == m {
            if prefix.iter().any(|&c| c > 0) {
                out.push(CurveClass(prefix.clone()));
            }
            return;
        }
        for c in 0..=rem {
            prefix.push(c);
            rec(m, rem - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, d_max, &mut Vec::new(), &mut out);
    out
}

/// Classes `c` with `c ≤ Σ` componentwise and `|c| = d`.
pub fn sub_classes(sigma: &CurveClass, d: u64) -> Vec<CurveClass> {
    fn rec(bound: &[u64], rem: u64, prefix: &mut Vec<u64>, out: &mut Vec<CurveClass>) {
        if prefix.len() == bound.len() {
            if rem == 0 {
                out.push(CurveClass(prefix.clone()));
            }
            return;
        }
        let i = prefix.len();
        for c in 0..=bound[i].min(rem) {
            prefix.push(c);
            rec(bound, rem - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&sigma.0, d, &mut Vec::new(), &mut out);
    out
}

/// `R⃗ = (R^1, ..., R^N)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionVector(pub Vec<Partition>);

impl PartitionVector {
    pub fn new(parts: Vec<Partition>) -> Self {
        PartitionVector(parts)
    }

    pub fn empty(n: usize) -> Self {
        PartitionVector(vec![Partition::empty(); n])
    }

    pub fn parts(&self) -> &[Partition] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `‖R⃗‖`
    pub fn norm(&self) -> usize {
        self.0.iter().map(Partition::degree).sum()
    }

    /// `|R⃗| = (|R^1|, ..., |R^N|)`
    pub fn degree_vector(&self) -> Vec<usize> {
        self.0.iter().map(Partition::degree).collect()
    }

    /// `R⃗^t`
    pub fn transpose(&self) -> PartitionVector {
        PartitionVector(self.0.iter().map(Partition::transpose).collect())
    }
}

impl fmt::Debug for PartitionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}
