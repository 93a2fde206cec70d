//! Exact computation of local Gopakumar–Vafa polynomials `P_Σ(x)` for local
//! toric Calabi–Yau surfaces, starting from Hopf-link invariants.
//!
//! The pipeline runs bottom-up:
//!
//! * [`partitions`]: Young diagrams and their statistics.
//! * [`qalgebra`]: exact Laurent polynomials in `v = q^{1/2}`, reduced
//!   rational functions ([`QScalar`]) and the `x = [1]^2` basis.
//! * [`schur`]: Schur functions at `q^α`, `q^{λ+α}` and the Hopf-link
//!   invariants `W_λ`, `W_{λμ}` (with a persistent memo cache).
//! * [`vertex`]: toric diagrams, partition-vector amplitudes and the graded
//!   free energy.
//! * [`gv`]: Möbius inversion down to integer polynomials.
//! * [`congruence`]: exact checks of the number-theoretic lemmas behind
//!   integrality.

pub mod congruence;
mod error;
mod exec;
pub mod gv;
pub mod partitions;
pub mod qalgebra;
pub mod report;
pub mod schur;
pub mod selftest;
pub mod table;
pub mod vertex;

pub use error::{Error, Result};
pub use exec::Exec;
pub use gv::{GVPolynomial, GVTable};
pub use partitions::Partition;
pub use qalgebra::{HalfLaurent, QScalar, XPolynomial};
pub use schur::WCache;
pub use vertex::{AmplitudeModel, CurveClass, PartitionVector, ToricDiagram};
