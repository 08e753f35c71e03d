//! Exact computer algebra for the q-deformed parastatistics algebras.

pub mod error;
pub mod fock;
pub mod green;
pub mod harness;
pub mod hopf;
pub mod modl;
pub mod ncpoly;
pub mod qrat;
pub mod relations;
pub mod report;
pub mod scalar;

pub use error::{AlgebraError, ScalarError};
pub use ncpoly::{Family, FreeElem, Generator, Parity, StarConvention, TensorElem, Word};
pub use qrat::ScalarQ;
pub use scalar::{Coeff, Rational};

pub type FreeElemQ = FreeElem<ScalarQ>;
pub type FreeElemRat = FreeElem<Rational>;
pub type TensorElemQ = TensorElem<ScalarQ>;
pub type TensorElemRat = TensorElem<Rational>;
pub type OscillatorRepQ = fock::OscillatorRep<ScalarQ>;
pub type OscillatorRepRat = fock::OscillatorRep<Rational>;
pub type TensorRepQ = fock::TensorRep<ScalarQ>;
pub type HopfOpsQ = hopf::HopfOps<ScalarQ>;
pub type HopfOpsRat = hopf::HopfOps<Rational>;

pub use harness::{run, RunConfig};
pub use report::{CheckRecord, Report};
