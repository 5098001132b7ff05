use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// Interned-ish symbol name. Cheap to clone and safe to share across threads.
pub type Sym = Arc<str>;

pub const AND: &str = "∧";
pub const OR: &str = "∨";
pub const IMP: &str = "→";
pub const NOT: &str = "¬";
pub const IFF: &str = "↔";
pub const TOP: &str = "⊤";
pub const BOT: &str = "⊥";
pub const BOX: &str = "□";
pub const DIAMOND: &str = "◇";

/// A sentential formula: variable, constant, or connective application.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Sym),
    Const(Sym),
    App(Sym, Arc<[Formula]>),
}

impl Formula {
    pub fn var(name: &str) -> Self {
        Formula::Var(Arc::from(name))
    }

    pub fn constant(name: &str) -> Self {
        Formula::Const(Arc::from(name))
    }

    pub fn app(op: &str, args: Vec<Formula>) -> Self {
        Formula::App(Arc::from(op), Arc::from(args))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Self {
        Self::app(NOT, vec![a])
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Self::app(AND, vec![a, b])
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Self::app(OR, vec![a, b])
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Self::app(IMP, vec![a, b])
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Self::app(IFF, vec![a, b])
    }

    pub fn is_atom(&self) -> bool {
        !matches!(self, Formula::App(..))
    }

    pub fn args(&self) -> &[Formula] {
        match self {
            Formula::App(_, args) => args,
            _ => &[],
        }
    }

    /// Connective name if this is an application.
    pub fn op(&self) -> Option<&str> {
        match self {
            Formula::App(op, _) => Some(op),
            _ => None,
        }
    }

    /// Destructures `op(a, b)` for a binary connective named `op`.
    pub fn as_binary(&self, op: &str) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::App(o, args) if &**o == op && args.len() == 2 => Some((&args[0], &args[1])),
            _ => None,
        }
    }

    pub fn as_unary(&self, op: &str) -> Option<&Formula> {
        match self {
            Formula::App(o, args) if &**o == op && args.len() == 1 => Some(&args[0]),
            _ => None,
        }
    }

    /// Number of connective occurrences.
    pub fn degree(&self) -> usize {
        match self {
            Formula::App(_, args) => 1 + args.iter().map(Formula::degree).sum::<usize>(),
            _ => 0,
        }
    }

    /// Number of subformula occurrences (nodes of the formula tree).
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Formula::size).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::App(_, args) => 1 + args.iter().map(Formula::depth).max().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn subformulas(&self) -> BTreeSet<Formula> {
        let mut out = BTreeSet::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut BTreeSet<Formula>) {
        if out.insert(self.clone()) {
            for a in self.args() {
                a.collect_subformulas(out);
            }
        }
    }

    pub fn variables(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    pub(crate) fn collect_variables(&self, out: &mut BTreeSet<Sym>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Const(_) => {}
            Formula::App(_, args) => args.iter().for_each(|a| a.collect_variables(out)),
        }
    }

    pub fn constants(&self) -> BTreeSet<Sym> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Const(c) = f {
                out.insert(c.clone());
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        for a in self.args() {
            a.visit(f);
        }
    }

    /// Prefix token sequence (Polish notation).
    pub fn prefix_tokens(&self) -> Vec<Sym> {
        let mut out = Vec::with_capacity(self.size());
        self.visit(&mut |f| match f {
            Formula::Var(s) | Formula::Const(s) | Formula::App(s, _) => out.push(s.clone()),
        });
        out
    }

    /// Rewrites `a ↔ b` as `(a → b) ∧ (b → a)` everywhere.
    pub fn expand_iff(&self) -> Formula {
        match self {
            Formula::App(op, args) => {
                let args: Vec<Formula> = args.iter().map(Formula::expand_iff).collect();
                if &**op == IFF && args.len() == 2 {
                    Formula::and(
                        Formula::imp(args[0].clone(), args[1].clone()),
                        Formula::imp(args[1].clone(), args[0].clone()),
                    )
                } else {
                    Formula::App(op.clone(), Arc::from(args))
                }
            }
            _ => self.clone(),
        }
    }

    /// Canonical infix text: binary applications fully parenthesized,
    /// unary applications and atoms bare, other arities as `F(a,b,c)`.
    pub fn to_infix(&self) -> String {
        let mut s = String::new();
        self.write_infix(&mut s);
        s
    }

    fn write_infix(&self, s: &mut String) {
        match self {
            Formula::Var(v) | Formula::Const(v) => s.push_str(v),
            Formula::App(op, args) => match args.len() {
                1 => {
                    s.push_str(op);
                    args[0].write_infix(s);
                }
                2 => {
                    s.push('(');
                    args[0].write_infix(s);
                    s.push_str(op);
                    args[1].write_infix(s);
                    s.push(')');
                }
                _ => {
                    s.push_str(op);
                    s.push('(');
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            s.push(',');
                        }
                        a.write_infix(s);
                    }
                    s.push(')');
                }
            },
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_infix())
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_infix())
    }
}

/// Variable names in the canonical generated order p, q, r, s, p1, p2, ...
pub fn nth_variable(i: usize) -> String {
    const BASE: [&str; 4] = ["p", "q", "r", "s"];
    if i < BASE.len() {
        BASE[i].to_string()
    } else {
        format!("p{}", i - BASE.len() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn degree_counts_connectives() {
        assert_eq!(p().degree(), 0);
        assert_eq!(Formula::not(p()).degree(), 1);
        assert_eq!(Formula::or(p(), Formula::not(p())).degree(), 2);
    }

    #[test]
    fn subformulas_collapse_duplicates() {
        assert_eq!(p().subformulas().len(), 1);
        assert_eq!(Formula::imp(p(), q()).subformulas().len(), 3);
        let f = Formula::or(Formula::imp(p(), q()), Formula::imp(q(), p()));
        assert_eq!(f.subformulas().len(), 5);
    }

    #[test]
    fn variables_of_constant_are_empty() {
        assert!(Formula::constant(TOP).variables().is_empty());
        let f = Formula::imp(Formula::and(p(), q()), p());
        let vs: Vec<String> = f.variables().iter().map(|s| s.to_string()).collect();
        assert_eq!(vs, vec!["p", "q"]);
    }

    #[test]
    fn infix_printing() {
        let f = Formula::imp(Formula::and(p(), q()), Formula::not(p()));
        assert_eq!(f.to_infix(), "((p∧q)→¬p)");
        let g = Formula::app("F", vec![p(), q(), p()]);
        assert_eq!(g.to_infix(), "F(p,q,p)");
    }

    #[test]
    fn iff_expansion() {
        let f = Formula::iff(p(), q());
        assert_eq!(f.expand_iff().to_infix(), "((p→q)∧(q→p))");
    }

    #[test]
    fn generated_variable_family() {
        let names: Vec<String> = (0..6).map(nth_variable).collect();
        assert_eq!(names, vec!["p", "q", "r", "s", "p1", "p2"]);
    }
}
