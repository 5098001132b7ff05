//! Seeded property checks shared by the property tests and the acceptance run.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, RngSeed, TestCaseError, TestRunner};

use sentential::heyting::{normal_form, truth_table, upset_algebra, NormalForm};
use sentential::kripke::{forces, rooted_frames, KripkeModel};
use sentential::language::{parse, print, Formula, Notation, Signature, Sym, AND, IFF, IMP, NOT, OR};
use sentential::lindenbaum_tarski::{class_of, lt_classical, QuotientAlgebra};
use sentential::matrix::{b2, evaluate_in, godel, is_valid, l3, value_table, Matrix, Valuation};
use sentential::substitution::Substitution;

pub const SEED: u64 = 0x5e47_e471;
pub const CASES: u32 = 1000;

pub fn runner(seed: u64, cases: u32) -> TestRunner {
    let config = Config {
        cases,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config)
}

pub fn formula_over(vars: &'static [&'static str], depth: u32) -> BoxedStrategy<Formula> {
    let leaf = prop::sample::select(vars).prop_map(Formula::var);
    leaf.prop_recursive(depth, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::imp(a, b)),
        ]
    })
    .boxed()
}

pub fn formula() -> BoxedStrategy<Formula> {
    formula_over(&["p", "q", "r"], 4)
}

pub fn substitution() -> BoxedStrategy<Substitution> {
    prop::collection::vec((prop::sample::select(&["p", "q", "r"][..]), formula_over(&["p", "q", "r", "s"], 2)), 0..4)
        .prop_map(|pairs| Substitution::from_pairs(pairs.into_iter().map(|(v, f)| (Sym::from(v), f))))
        .boxed()
}

fn matrices() -> Vec<Matrix> {
    vec![b2(), l3(), godel(3).expect("chain"), godel(4).expect("chain")]
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what()))
    }
}

fn run<S: Strategy>(
    runner: &mut TestRunner,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn print_parse_roundtrip(r: &mut TestRunner) -> Result<(), String> {
    let sig = Signature::standard();
    run(r, formula(), |f| {
        for notation in [Notation::Infix, Notation::Prefix] {
            let text = print(&f, notation, &sig);
            let back = parse(&text, &sig, notation).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(back == f, || format!("{text} reparsed as {back}"))?;
            check(print(&back, notation, &sig) == text, || text.clone())?;
        }
        Ok(())
    })
}

pub fn substitution_monoid(r: &mut TestRunner) -> Result<(), String> {
    run(r, (substitution(), substitution(), substitution(), formula()), |(a, b, c, f)| {
        let left = Substitution::compose(&Substitution::compose(&a, &b), &c);
        let right = Substitution::compose(&a, &Substitution::compose(&b, &c));
        check(left.apply(&f) == right.apply(&f), || "associativity on a formula".into())?;
        check(left == right, || "associativity on supports".into())?;
        let id = Substitution::identity();
        check(Substitution::compose(&id, &a) == a && Substitution::compose(&a, &id) == a, || "identity".into())?;
        check(Substitution::compose(&a, &b).apply(&f) == a.apply(&b.apply(&f)), || "composition order".into())
    })
}

pub fn substitution_endomorphism(r: &mut TestRunner) -> Result<(), String> {
    run(r, (substitution(), formula(), formula()), |(s, a, b)| {
        let (sa, sb) = (s.apply(&a), s.apply(&b));
        check(s.apply(&Formula::and(a.clone(), b.clone())) == Formula::and(sa.clone(), sb.clone()), || "∧".into())?;
        check(s.apply(&Formula::or(a.clone(), b.clone())) == Formula::or(sa.clone(), sb.clone()), || "∨".into())?;
        check(s.apply(&Formula::imp(a.clone(), b.clone())) == Formula::imp(sa.clone(), sb), || "→".into())?;
        check(s.apply(&Formula::not(a)) == Formula::not(sa), || "¬".into())
    })
}

pub fn preimage_inclusions(r: &mut TestRunner) -> Result<(), String> {
    let sets = prop::collection::vec(formula_over(&["p", "q", "r"], 2), 0..8);
    run(r, (substitution(), sets.clone(), sets), |(s, xs, mut universe)| {
        universe.extend(xs.iter().cloned());
        let x: BTreeSet<Formula> = xs.into_iter().collect();
        let pre = s.preimage(&x, &universe);
        check(s.image(&pre).is_subset(&x), || "σ(σ⁻¹(X)) ⊆ X".into())?;
        let back = s.preimage(&s.image(&x), &universe);
        let within: BTreeSet<Formula> = x.iter().filter(|f| universe.contains(f)).cloned().collect();
        check(within.is_subset(&back), || "X ⊆ σ⁻¹(σ(X))".into())
    })
}

pub fn restricted_valuations(r: &mut TestRunner) -> Result<(), String> {
    let ms = matrices();
    run(r, (0..ms.len(), formula(), prop::collection::vec(0usize..8, 5)), |(mi, f, picks)| {
        let m = &ms[mi];
        let alg = m.algebra();
        let n = alg.size();
        let vars: Vec<Sym> = f.variables().into_iter().collect();
        let mut wide = vars.clone();
        wide.extend(["s", "p1"].map(Sym::from));
        let narrow_ok = is_valid(m, &f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let wide_ok = value_table(alg, &f, &wide).map_err(|e| TestCaseError::fail(e.to_string()))?.iter().all(|&v| m.is_designated(v));
        check(narrow_ok == wide_ok, || format!("{f} in {}", m.name()))?;
        let mut v = Valuation::new();
        for (var, &k) in vars.iter().zip(&picks) {
            v = v.set(var, k % n);
        }
        let base = evaluate_in(alg, &v, &f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let extended = v.set("s", picks[4] % n).set("p1", picks[3] % n);
        let more = evaluate_in(alg, &extended, &f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(base == more, || format!("{f} changed under fresh variables"))
    })
}

/// Valid formulas are drawn as instances of schemata known valid in each
/// matrix so the implication is not vacuous.
pub fn substitution_invariance(r: &mut TestRunner) -> Result<(), String> {
    let ms = matrices();
    let seeds = ["(p→(q→p))", "((p∧q)→p)", "(p→(p∨q))", "(¬¬¬p→¬p)", "((p∧q)→(q∧p))"].map(sentential::language::f);
    run(r, (0..ms.len(), 0..seeds.len(), substitution(), substitution(), formula()), |(mi, si, pre, s, g)| {
        let m = &ms[mi];
        let valid = |x: &Formula| is_valid(m, x).map_err(|e| TestCaseError::fail(e.to_string()));
        for a in [pre.apply(&seeds[si]), g] {
            if valid(&a)? {
                check(valid(&s.apply(&a))?, || format!("{a} valid in {} but an instance is not", m.name()))?;
            }
        }
        Ok(())
    })
}

fn frames() -> Vec<sentential::heyting::FinitePoset> {
    rooted_frames(4).collect()
}

fn model_strategy() -> impl Strategy<Value = KripkeModel> {
    let fs = frames();
    (0..fs.len(), any::<u32>(), any::<u32>(), any::<u32>()).prop_map(move |(i, a, b, c)| {
        let frame = fs[i].clone();
        let ups = frame.up_sets();
        let pick = |x: u32| ups[x as usize % ups.len()];
        let valuation: BTreeMap<Sym, u32> = [("p", pick(a)), ("q", pick(b)), ("r", pick(c))].into_iter().map(|(v, s)| (Sym::from(v), s)).collect();
        KripkeModel::new(frame, valuation).expect("up-set valuation")
    })
}

fn small_formula() -> BoxedStrategy<Formula> {
    formula_over(&["p", "q", "r"], 4).prop_filter("degree at most 5", |f| f.degree() <= 5).boxed()
}

pub fn persistence(r: &mut TestRunner) -> Result<(), String> {
    run(r, (model_strategy(), small_formula()), |(m, f)| {
        let n = m.frame().len();
        for w in 0..n {
            if forces(&m, w, &f).map_err(|e| TestCaseError::fail(e.to_string()))? {
                for u in (0..n).filter(|&u| m.frame().leq(w, u)) {
                    check(forces(&m, u, &f).map_err(|e| TestCaseError::fail(e.to_string()))?, || format!("{f} lost from w{w} to w{u}"))?;
                }
            }
        }
        Ok(())
    })
}

pub fn forces_matches_algebra(r: &mut TestRunner) -> Result<(), String> {
    run(r, (model_strategy(), small_formula()), |(m, f)| {
        let ua = upset_algebra(m.frame()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let mut v = Valuation::new();
        for (var, s) in m.valuation() {
            v = v.set(var, ua.element(*s).expect("up-set"));
        }
        let value = ua.set(evaluate_in(ua.algebra(), &v, &f).map_err(|e| TestCaseError::fail(e.to_string()))?);
        for w in 0..m.frame().len() {
            let forced = forces(&m, w, &f).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(forced == (value >> w & 1 == 1), || format!("{f} at w{w}"))?;
        }
        Ok(())
    })
}

fn quotients() -> Vec<QuotientAlgebra> {
    (1..=3).map(|k| lt_classical(k).expect("rank")).collect()
}

pub fn quotient_homomorphism(r: &mut TestRunner) -> Result<(), String> {
    let qs = quotients();
    const RANKED: [&[&str]; 3] = [&["p"], &["p", "q"], &["p", "q", "r"]];
    let cases = (0..qs.len()).prop_flat_map(|k| (Just(k), formula_over(RANKED[k], 4), formula_over(RANKED[k], 4)));
    run(r, cases, |(k, a, b)| {
        let q = &qs[k];
        let class = |x: &Formula| class_of(q, x).map_err(|e| TestCaseError::fail(e.to_string()));
        let (ca, cb) = (class(&a)?, class(&b)?);
        for op in [AND, OR, IMP, IFF] {
            let whole = Formula::app(op, vec![a.clone(), b.clone()]);
            check(q.apply(op, &[ca, cb]) == Some(class(&whole)?), || format!("{op} at rank {}", k + 1))?;
        }
        check(q.apply(NOT, &[ca]) == Some(class(&Formula::not(a.clone()))?), || "¬".into())?;
        check((ca == q.unit()) == is_valid(&b2(), &a).unwrap_or(false), || format!("{a}: unit class vs tautology"))?;
        check(q.leq(ca, cb) == is_valid(&b2(), &Formula::imp(a.clone(), b.clone())).unwrap_or(false), || "order".into())
    })
}

pub fn free_algebra_spot_check(r: &mut TestRunner) -> Result<(), String> {
    let q = lt_classical(2).expect("rank 2");
    run(r, (formula_over(&["p", "q"], 4), formula_over(&["p", "q"], 4)), |(t, s)| {
        let same = class_of(&q, &t).ok() == class_of(&q, &s).ok();
        let valid = is_valid(&b2(), &Formula::iff(t.clone(), s.clone())).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(same == valid, || format!("{t} ≈ {s}"))
    })
}

pub fn normal_forms_keep_tables(r: &mut TestRunner) -> Result<(), String> {
    let gens: Vec<Sym> = ["p", "q", "r"].map(Sym::from).to_vec();
    run(r, formula(), |f| {
        let table = truth_table(&f, &gens).map_err(|e| TestCaseError::fail(e.to_string()))?;
        for kind in [NormalForm::Dnf, NormalForm::Cnf] {
            let nf = normal_form(&f, &gens, kind).map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(truth_table(&nf, &gens).ok() == Some(table), || format!("{kind:?} of {f}"))?;
        }
        Ok(())
    })
}

/// `(name, check)` for every seeded property suite.
pub type Suite = (&'static str, fn(&mut TestRunner) -> Result<(), String>);

pub const SUITES: [Suite; 11] = [
    ("print/parse round trip", print_parse_roundtrip),
    ("substitution monoid laws", substitution_monoid),
    ("substitutions are endomorphisms", substitution_endomorphism),
    ("preimage inclusions", preimage_inclusions),
    ("restricted-valuation sufficiency", restricted_valuations),
    ("substitution-invariance of validity", substitution_invariance),
    ("persistence", persistence),
    ("forcing agrees with up-set algebras", forces_matches_algebra),
    ("quotient map is a homomorphism", quotient_homomorphism),
    ("free Boolean algebra spot check", free_algebra_spot_check),
    ("normal forms keep truth tables", normal_forms_keep_tables),
];
