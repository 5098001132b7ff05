//! Consequence relations and operators: decidable backends, finite closure
//! systems, the dagger axioms and sampled theory-level properties.

mod backend;
mod harness;
mod operator;

use thiserror::Error;

pub use backend::{
    check_relation_axioms, matrix_backend, sample_property, ConsequenceBackend, Intersection, MatrixBackend, NonEmpty,
    PropertyReport, RelationProperty, Sampler,
};
pub use harness::{brown_suszko_sample, lindenbaum_property_harness, BrownSuszkoReport, HarnessReport};
pub use operator::{
    abstract_universe, check_operator_axioms, cn_from_closure_system, verify_con_connections, AxiomReport, Connection,
    ConnectionsVerdict, ExtensionalOperator, FiniteClosureSystem, Mask, OperatorAxiom, CONNECTIONS, MAX_UNIVERSE,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConsequenceError {
    #[error("universe of {0} members is too large")]
    UniverseTooLarge(usize),
    #[error("{0} is not in the universe")]
    NotInUniverse(String),
    #[error("not a closure system: {0}")]
    NotClosureSystem(String),
    #[error("bad operator table: {0}")]
    BadTable(String),
    #[error("a class of matrices must be nonempty")]
    EmptyClass,
    #[error("backend {0} is not structural")]
    NotStructural(String),
    #[error(transparent)]
    Matrix(#[from] crate::matrix::MatrixError),
}
