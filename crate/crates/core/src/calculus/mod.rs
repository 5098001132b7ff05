//! Structural rules, calculi, derivations, confirmations and proof search.

mod classical;
mod confirmation;
mod derivation;
mod gamma;
mod rules;
mod search;
mod soundness;
mod terms;

use thiserror::Error;

pub use search::{bounded_search, deduction, introduced_degree, Limits};
pub use soundness::{as_formula, check_rule, rule_is_sound, soundness_check, RuleVerdict, SoundnessReport};
pub use classical::prove_classical;
pub use confirmation::{
    cases_confirmation, check_confirmation, conjunction_confirmation, excluded_middle_confirmation, Confirmation,
    ConfirmationFailure, ConfirmationVerdict, Confirmed, Hyperrule,
};
pub use gamma::{gamma_pairs, gamma_premise, gamma_star_demo, GammaStarReport};
pub use derivation::{check_derivation, Derivation, FailureReason, Justification, Step, Verdict};
pub use rules::{
    axiom_schema, builtin_calculus, hilbert_cl, hilbert_int, hilbert_lc, hilbert_p, modus_ponens, nd_rules, rule_to_horn, Calculus,
    StructuralRule, CALCULUS_NAMES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("unknown calculus `{0}`")]
    BadName(String),
    #[error("malformed proof: {0}")]
    Malformed(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Matrix(#[from] crate::matrix::MatrixError),
}
