//! Sentential logic workbench.

pub mod language;
pub mod substitution;
pub mod matrix;
pub mod calculus;
pub mod consequence;
pub mod heyting;
pub mod kripke;
pub mod lindenbaum_tarski;
