//! Signatures, formulas, parsing and printing, formula trees.

mod formula;
mod generate;
mod json;
mod meta;
mod parse;
mod signature;
mod tree;

pub use formula::{nth_variable, Formula, Sym, AND, BOT, BOX, DIAMOND, IFF, IMP, NOT, OR, TOP};
pub use generate::{enumerate, enumerate_by_degree, random_formula};
pub use json::{formula_from_json, formula_to_json, metaformula_to_json};
pub use meta::{is_metavariable_word, Metaformula};
pub use parse::{parse, parse_infix, parse_meta, print, Notation, ParseError};
pub use signature::{is_variable_word, Signature, SignatureError, SignatureMismatch, ALIASES};
pub use tree::{
    assemble_tree, build_tree, paths, replace_at, subformula_at, FormulaTree, NotATreeReason, TreeEdge,
    TreeError, TreeNode,
};

/// Parses infix text over the modal signature, panicking on error.
/// Intended for literals in tests and built-in tables.
pub fn f(text: &str) -> Formula {
    parse_infix(text, &Signature::modal()).unwrap_or_else(|e| panic!("bad formula literal {text:?}: {e}"))
}

/// Parses a metaformula literal over the modal signature, panicking on error.
pub fn m(text: &str) -> Metaformula {
    parse_meta(text, &Signature::modal(), Notation::Infix)
        .unwrap_or_else(|e| panic!("bad metaformula literal {text:?}: {e}"))
}
