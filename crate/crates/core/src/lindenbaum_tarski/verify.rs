//! Identity suites on quotients and the unit-class criterion on a corpus.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{class_of, LtError, QuotientAlgebra, Semantics};
use crate::heyting::{check_identities, IdentityReport, IdentityResult, Law, Suite};
use crate::kripke::{int_countermodel, DEFAULT_WORLDS};
use crate::language::{enumerate, Formula, Sym, AND, BOT, IMP, NOT, OR, TOP};
use crate::matrix::{b2, is_valid};

/// A suite run over the assignments where every term is defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialCheck {
    pub report: IdentityReport,
    /// Assignments skipped because some subterm left the quotient.
    pub undefined: u64,
    pub defined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub name: String,
    pub boolean: bool,
    pub identities: Vec<PartialCheck>,
    pub corpus: usize,
    /// Formulas whose class is `𝟏` exactly when the oracle rejects them.
    pub mismatches: Vec<Formula>,
    /// Formulas without a class in the quotient.
    pub outside: usize,
}

impl QuotientReport {
    /// Boolean quotients must satisfy every law; the others only those not
    /// marked Boolean-only.
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
            && self.identities.iter().all(|c| if self.boolean { c.report.passed() } else { c.report.passed_intuitionistically() })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed(),
            "suites": self.identities.iter().map(|c| json!({
                "suite": c.report.suite.name(),
                "passed": c.report.passed(),
                "passed_intuitionistically": c.report.passed_intuitionistically(),
                "failures": c.report.results.iter().filter(|r| !r.holds()).map(|r| r.name.clone()).collect::<Vec<_>>(),
                "defined": c.defined,
                "undefined": c.undefined,
            })).collect::<Vec<_>>(),
            "corpus": self.corpus,
            "outside": self.outside,
            "mismatches": self.mismatches.iter().map(Formula::to_infix).collect::<Vec<_>>(),
        })
    }
}

/// Every formula over the generators (or `⊤`, `⊥` at rank 0) built from
/// `∧ ∨ → ¬` with at most `max_degree` connectives.
pub fn lindenbaum_corpus(q: &QuotientAlgebra, max_degree: usize) -> Vec<Formula> {
    let atoms: Vec<Formula> = if q.generators().is_empty() {
        vec![Formula::constant(TOP), Formula::constant(BOT)]
    } else {
        q.generators().iter().map(|g| Formula::Var(g.clone())).collect()
    };
    let connectives: Vec<(Sym, usize)> = [(AND, 2), (OR, 2), (IMP, 2), (NOT, 1)].iter().map(|&(o, a)| (Sym::from(o), a)).collect();
    enumerate(&atoms, &connectives, max_degree)
}

fn law_terms(law: &Law) -> Vec<&Formula> {
    match law {
        Law::Eq(l, r) | Law::Le(l, r) => vec![l, r],
        Law::LeIff((a, b), (c, d)) => vec![a, b, c, d],
    }
}

fn eval(q: &QuotientAlgebra, vars: &[Sym], vals: &[usize], t: &Formula) -> Option<usize> {
    match t {
        Formula::Var(v) => vars.iter().position(|x| x == v).map(|i| vals[i]),
        Formula::Const(c) if &**c == TOP => Some(q.unit()),
        Formula::Const(c) if &**c == BOT => Some(q.zero()),
        Formula::Const(_) => None,
        Formula::App(op, args) => {
            let args = args.iter().map(|a| eval(q, vars, vals, a)).collect::<Option<Vec<_>>>()?;
            q.apply(op, &args)
        }
    }
}

fn partial_suite(q: &QuotientAlgebra, suite: Suite) -> PartialCheck {
    let n = q.len();
    let (mut defined, mut undefined) = (0, 0);
    let results = suite
        .identities()
        .into_iter()
        .map(|id| {
            let terms = law_terms(&id.law);
            let vars: Vec<Sym> = terms.iter().flat_map(|t| t.variables()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
            let mut vals = vec![0usize; vars.len()];
            let mut witness = None;
            loop {
                match terms.iter().map(|t| eval(q, &vars, &vals, t)).collect::<Option<Vec<_>>>() {
                    None => undefined += 1,
                    Some(v) => {
                        defined += 1;
                        let le = |a: usize, b: usize| q.leq(a, b);
                        let ok = match id.law {
                            Law::Eq(..) => v[0] == v[1],
                            Law::Le(..) => le(v[0], v[1]),
                            Law::LeIff(..) => le(v[0], v[1]) == le(v[2], v[3]),
                        };
                        if !ok && witness.is_none() {
                            witness = Some(vars.iter().cloned().zip(vals.iter().copied()).collect());
                        }
                    }
                }
                if !crate::matrix::advance(&mut vals, n) {
                    break;
                }
            }
            IdentityResult { name: id.name.to_string(), law: id.law.to_string(), boolean_only: id.boolean_only, witness }
        })
        .collect();
    PartialCheck { report: IdentityReport { suite, results }, undefined, defined }
}

fn theorem(q: &QuotientAlgebra, f: &Formula) -> Result<bool, LtError> {
    Ok(match q.semantics {
        Semantics::Boolean => is_valid(&b2(), f)?,
        Semantics::Kripke(_) => int_countermodel(f, DEFAULT_WORLDS)?.is_none(),
    })
}

/// Runs `suites` on `q`, exhaustively through a finite algebra when every
/// table is total and over the defined assignments otherwise, then checks
/// that `corpus` formulas fall in `𝟏` exactly when the oracle proves them.
pub fn verify_quotient(q: &QuotientAlgebra, suites: &[Suite], corpus: &[Formula]) -> Result<QuotientReport, LtError> {
    let boolean = matches!(q.semantics, Semantics::Boolean);
    let identities = match q.to_algebra() {
        Some(alg) => suites
            .par_iter()
            .map(|&s| {
                let report = check_identities(&alg, s)?;
                let defined = report.results.len() as u64;
                Ok(PartialCheck { report, undefined: 0, defined })
            })
            .collect::<Result<Vec<_>, LtError>>()?,
        None => suites.par_iter().map(|&s| partial_suite(q, s)).collect(),
    };
    let verdicts = corpus
        .par_iter()
        .map(|f| {
            let class = match class_of(q, f) {
                Ok(c) => Some(c),
                Err(LtError::Unresolved(_)) => None,
                Err(e) => return Err(e),
            };
            Ok((f, class, theorem(q, f)?))
        })
        .collect::<Result<Vec<_>, LtError>>()?;
    let outside = verdicts.iter().filter(|(_, c, _)| c.is_none()).count();
    let mismatches = verdicts.into_iter().filter(|(_, c, t)| (*c == Some(q.unit())) != *t).map(|(f, _, _)| f.clone()).collect();
    Ok(QuotientReport { name: q.name().to_string(), boolean, identities, corpus: corpus.len(), mismatches, outside })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindenbaum_tarski::{lt_classical, rn_lattice};

    const BOOLEAN: [Suite; 3] = [Suite::LatticeL1L4, Suite::BoundedB1, Suite::BooleanB2];

    #[test]
    fn free_boolean_algebras_pass() {
        for k in 0..=2 {
            let q = lt_classical(k).unwrap();
            let corpus = lindenbaum_corpus(&q, 2);
            let r = verify_quotient(&q, &Suite::ALL, &corpus).unwrap();
            assert!(r.passed(), "{}", r.to_json());
            assert!(r.identities.iter().all(|c| c.report.passed()));
        }
        let q = lt_classical(2).unwrap();
        assert!(verify_quotient(&q, &BOOLEAN, &[]).unwrap().passed());
    }

    #[test]
    fn rn_prefix_is_heyting_where_defined() {
        let q = rn_lattice(8).unwrap();
        let corpus = lindenbaum_corpus(&q, 3);
        let r = verify_quotient(&q, &[Suite::LatticeL1L4, Suite::BoundedB1, Suite::HeytingH1H6], &corpus).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert!(r.identities.iter().all(|c| c.defined > 0));
        let b2_suite = verify_quotient(&q, &[Suite::BooleanB2], &[]).unwrap();
        assert!(!b2_suite.identities[0].report.passed());
    }
}
