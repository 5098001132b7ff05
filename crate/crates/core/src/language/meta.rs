use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::formula::{Sym, AND, IMP, NOT, OR};

/// Formula schema: metavariables and constants at the leaves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metaformula {
    Meta(Sym),
    Const(Sym),
    App(Sym, Arc<[Metaformula]>),
}

pub fn is_metavariable_word(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if ('α'..='ω').contains(&c) && c != 'ς') && cs.all(|c| c.is_ascii_digit())
}

impl Metaformula {
    pub fn meta(name: &str) -> Self {
        Metaformula::Meta(Arc::from(name))
    }

    pub fn constant(name: &str) -> Self {
        Metaformula::Const(Arc::from(name))
    }

    pub fn app(op: &str, args: Vec<Metaformula>) -> Self {
        Metaformula::App(Arc::from(op), Arc::from(args))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Metaformula) -> Self {
        Self::app(NOT, vec![a])
    }

    pub fn and(a: Metaformula, b: Metaformula) -> Self {
        Self::app(AND, vec![a, b])
    }

    pub fn or(a: Metaformula, b: Metaformula) -> Self {
        Self::app(OR, vec![a, b])
    }

    pub fn imp(a: Metaformula, b: Metaformula) -> Self {
        Self::app(IMP, vec![a, b])
    }

    pub fn args(&self) -> &[Metaformula] {
        match self {
            Metaformula::App(_, args) => args,
            _ => &[],
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Metaformula::App(_, args) => 1 + args.iter().map(Metaformula::degree).sum::<usize>(),
            _ => 0,
        }
    }

    /// Metavariables in order of first occurrence.
    pub fn metavariables(&self) -> Vec<Sym> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect(&mut seen, &mut out);
        out
    }

    fn collect(&self, seen: &mut BTreeSet<Sym>, out: &mut Vec<Sym>) {
        match self {
            Metaformula::Meta(m) => {
                if seen.insert(m.clone()) {
                    out.push(m.clone());
                }
            }
            Metaformula::Const(_) => {}
            Metaformula::App(_, args) => args.iter().for_each(|a| a.collect(seen, out)),
        }
    }

    /// Infix text with each metavariable replaced by `rename(name)`.
    pub fn render_with(&self, rename: &dyn Fn(&str) -> String) -> String {
        match self {
            Metaformula::Meta(m) => rename(m),
            Metaformula::Const(c) => c.to_string(),
            Metaformula::App(op, args) => match args.len() {
                1 => format!("{op}{}", args[0].render_with(rename)),
                2 => format!("({}{op}{})", args[0].render_with(rename), args[1].render_with(rename)),
                _ => {
                    let inner: Vec<String> = args.iter().map(|a| a.render_with(rename)).collect();
                    format!("{op}({})", inner.join(","))
                }
            },
        }
    }

    pub fn to_infix(&self) -> String {
        self.render_with(&|m| m.to_string())
    }
}

impl fmt::Display for Metaformula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_infix())
    }
}

impl fmt::Debug for Metaformula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_infix())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greek_words_are_metavariables() {
        assert!(is_metavariable_word("α"));
        assert!(is_metavariable_word("β12"));
        assert!(!is_metavariable_word("p"));
        assert!(!is_metavariable_word("αβ"));
    }

    #[test]
    fn metavariables_in_first_occurrence_order() {
        let a = Metaformula::meta("α");
        let b = Metaformula::meta("β");
        let m = Metaformula::imp(b.clone(), Metaformula::imp(a.clone(), b.clone()));
        let names: Vec<String> = m.metavariables().iter().map(|s| s.to_string()).collect();
        assert_eq!(names, vec!["β", "α"]);
        assert_eq!(m.to_infix(), "(β→(α→β))");
    }
}
