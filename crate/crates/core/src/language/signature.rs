use std::sync::Arc;

use thiserror::Error;

use super::formula::{Formula, Sym, AND, BOT, BOX, DIAMOND, IFF, IMP, NOT, OR, TOP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("symbol `{0}` declared twice")]
    Duplicate(String),
    #[error("connective `{0}` must have arity at least 1")]
    ZeroArity(String),
    #[error("symbol `{0}` is not a valid token")]
    BadSymbol(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureMismatch {
    #[error("unknown connective `{0}`")]
    UnknownConnective(String),
    #[error("connective `{op}` applied to {found} arguments, arity is {expected}")]
    WrongArity { op: String, expected: usize, found: usize },
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
}

/// Connectives with arities plus constants. Variables are every
/// `[a-z][0-9]*` word not declared as a connective or constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    connectives: Vec<(Sym, usize)>,
    constants: Vec<Sym>,
}

/// ASCII spellings accepted on input; Unicode is canonical.
pub const ALIASES: [(&str, &str); 9] = [
    ("&", AND),
    ("|", OR),
    ("->", IMP),
    ("~", NOT),
    ("<->", IFF),
    ("T", TOP),
    ("F", BOT),
    ("[]", BOX),
    ("<>", DIAMOND),
];

fn valid_symbol(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ','))
}

pub fn is_variable_word(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase()) && cs.all(|c| c.is_ascii_digit())
}

impl Signature {
    pub fn new<C, K>(connectives: C, constants: K) -> Result<Self, SignatureError>
    where
        C: IntoIterator<Item = (String, usize)>,
        K: IntoIterator<Item = String>,
    {
        let mut seen = std::collections::BTreeSet::new();
        let mut sig = Signature { connectives: Vec::new(), constants: Vec::new() };
        for (name, arity) in connectives {
            if !valid_symbol(&name) {
                return Err(SignatureError::BadSymbol(name));
            }
            if arity == 0 {
                return Err(SignatureError::ZeroArity(name));
            }
            if !seen.insert(name.clone()) {
                return Err(SignatureError::Duplicate(name));
            }
            sig.connectives.push((Arc::from(name.as_str()), arity));
        }
        for name in constants {
            if !valid_symbol(&name) {
                return Err(SignatureError::BadSymbol(name));
            }
            if !seen.insert(name.clone()) {
                return Err(SignatureError::Duplicate(name));
            }
            sig.constants.push(Arc::from(name.as_str()));
        }
        Ok(sig)
    }

    fn from_static(connectives: &[(&str, usize)], constants: &[&str]) -> Self {
        Self::new(
            connectives.iter().map(|(n, a)| (n.to_string(), *a)),
            constants.iter().map(|c| c.to_string()),
        )
        .expect("static signature is well formed")
    }

    /// ∧, ∨, →, ¬.
    pub fn basic() -> Self {
        Self::from_static(&[(AND, 2), (OR, 2), (IMP, 2), (NOT, 1)], &[])
    }

    /// ∧, ∨, →, ¬, ↔ and the constants ⊤, ⊥.
    pub fn standard() -> Self {
        Self::from_static(&[(AND, 2), (OR, 2), (IMP, 2), (NOT, 1), (IFF, 2)], &[TOP, BOT])
    }

    /// The standard signature plus □ and ◇.
    pub fn modal() -> Self {
        Self::from_static(
            &[(AND, 2), (OR, 2), (IMP, 2), (NOT, 1), (IFF, 2), (BOX, 1), (DIAMOND, 1)],
            &[TOP, BOT],
        )
    }

    pub fn connectives(&self) -> &[(Sym, usize)] {
        &self.connectives
    }

    pub fn constants(&self) -> &[Sym] {
        &self.constants
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.connectives.iter().find(|(n, _)| &**n == name).map(|(_, a)| *a)
    }

    pub fn has_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| &**c == name)
    }

    pub fn is_declared(&self, name: &str) -> bool {
        self.arity(name).is_some() || self.has_constant(name)
    }

    /// Canonical name for a spelling: a declared symbol, or an alias of one.
    pub fn resolve(&self, word: &str) -> Option<Sym> {
        if let Some((n, _)) = self.connectives.iter().find(|(n, _)| &**n == word) {
            return Some(n.clone());
        }
        if let Some(c) = self.constants.iter().find(|c| &***c == word) {
            return Some(c.clone());
        }
        ALIASES
            .iter()
            .find(|(alias, canon)| *alias == word && self.is_declared(canon))
            .and_then(|(_, canon)| self.resolve(canon))
    }

    /// All spellings the tokenizer should recognize, longest first.
    pub(crate) fn spellings(&self) -> Vec<(String, Sym)> {
        let mut out: Vec<(String, Sym)> = self
            .connectives
            .iter()
            .map(|(n, _)| (n.to_string(), n.clone()))
            .chain(self.constants.iter().map(|c| (c.to_string(), c.clone())))
            .collect();
        for (alias, canon) in ALIASES {
            if !self.is_declared(alias) {
                if let Some(c) = self.resolve(canon) {
                    out.push((alias.to_string(), c));
                }
            }
        }
        out.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    pub fn is_variable(&self, word: &str) -> bool {
        is_variable_word(word) && !self.is_declared(word)
    }

    /// Checks that every symbol of `f` belongs to this signature with the declared arity.
    pub fn check(&self, f: &Formula) -> Result<(), SignatureMismatch> {
        match f {
            Formula::Var(v) => {
                if self.is_declared(v) {
                    Err(SignatureMismatch::UnknownConnective(v.to_string()))
                } else {
                    Ok(())
                }
            }
            Formula::Const(c) => {
                if self.has_constant(c) {
                    Ok(())
                } else {
                    Err(SignatureMismatch::UnknownConstant(c.to_string()))
                }
            }
            Formula::App(op, args) => {
                let expected = self
                    .arity(op)
                    .ok_or_else(|| SignatureMismatch::UnknownConnective(op.to_string()))?;
                if expected != args.len() {
                    return Err(SignatureMismatch::WrongArity {
                        op: op.to_string(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check(a))
            }
        }
    }

    /// Union of two signatures; symbols shared by both must agree on arity.
    pub fn merge(&self, other: &Signature) -> Result<Signature, SignatureError> {
        let mut connectives: Vec<(String, usize)> =
            self.connectives.iter().map(|(n, a)| (n.to_string(), *a)).collect();
        for (n, a) in &other.connectives {
            match self.arity(n) {
                Some(b) if b == *a => {}
                Some(_) => return Err(SignatureError::Duplicate(n.to_string())),
                None => connectives.push((n.to_string(), *a)),
            }
        }
        let mut constants: Vec<String> = self.constants.iter().map(|c| c.to_string()).collect();
        for c in &other.constants {
            if !self.has_constant(c) {
                constants.push(c.to_string());
            }
        }
        Signature::new(connectives, constants)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_zero_arity() {
        assert!(matches!(
            Signature::new(vec![("F".into(), 2)], vec!["F".into()]),
            Err(SignatureError::Duplicate(_))
        ));
        assert!(matches!(
            Signature::new(vec![("G".into(), 0)], Vec::<String>::new()),
            Err(SignatureError::ZeroArity(_))
        ));
        assert!(Signature::new(vec![("(".into(), 1)], Vec::<String>::new()).is_err());
    }

    #[test]
    fn aliases_resolve_only_when_target_declared() {
        let s = Signature::standard();
        assert_eq!(s.resolve("->").as_deref(), Some(IMP));
        assert_eq!(s.resolve("F").as_deref(), Some(BOT));
        assert_eq!(s.resolve("[]"), None);
        assert_eq!(Signature::modal().resolve("[]").as_deref(), Some(BOX));
    }

    #[test]
    fn declared_words_are_not_variables() {
        let s = Signature::new(vec![("F".into(), 2)], vec!["a".into()]).unwrap();
        assert!(s.is_variable("p"));
        assert!(s.is_variable("p12"));
        assert!(!s.is_variable("a"));
        assert!(!s.is_variable("F"));
    }

    #[test]
    fn check_reports_arity() {
        let s = Signature::basic();
        let bad = Formula::app(NOT, vec![Formula::var("p"), Formula::var("q")]);
        assert!(matches!(s.check(&bad), Err(SignatureMismatch::WrongArity { .. })));
        assert!(s.check(&Formula::constant(TOP)).is_err());
    }
}
