//! Finite Kripke semantics for intuitionistic logic: monotone models,
//! forcing, countermodel search and the one-variable classification.

mod model;
mod rn;
mod search;

use thiserror::Error;

pub use model::{extension, forces, KripkeModel};
pub use rn::{
    equivalent_within, rn_classify, rn_classify_within, rn_formula, rn_sequence, rn_top, Fingerprint, OneVariableModels, RnClass,
    RnTable,
};
pub use search::{
    int_countermodel, int_countermodel_with_budget, posets, rooted_frames, Countermodel, DEFAULT_WORLDS, KRIPKE_BUDGET,
    MAX_WORLDS,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("`{0}` is not up-closed")]
    NotPersistent(String),
    #[error("bad model: {0}")]
    BadModel(String),
    #[error("connective `{0}` has no forcing clause")]
    Unsupported(String),
    #[error("frames of {0} worlds are beyond the search limit")]
    TooManyWorlds(usize),
    #[error("search needs more than {budget} valuations")]
    BudgetExceeded { budget: u64 },
    #[error("variable `{0}` is not p")]
    NotOneVariable(String),
    #[error(transparent)]
    Heyting(#[from] crate::heyting::HeytingError),
}
