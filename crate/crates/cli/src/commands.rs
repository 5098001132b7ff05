//! One function per subcommand, each returning the verdict body.

use num_bigint::BigUint;
use serde_json::{json, Value};

use sentential::calculus::{
    bounded_search, builtin_calculus, check_confirmation, check_derivation, rule_to_horn, Confirmation,
    ConfirmationVerdict, Derivation, Limits, Verdict,
};
use sentential::consequence::{check_operator_axioms, verify_con_connections, FiniteClosureSystem, OperatorAxiom};
use sentential::heyting::{algebra_dot, check_identities, Suite};
use sentential::kripke::{int_countermodel_with_budget, rn_classify, KRIPKE_BUDGET};
use sentential::language::{assemble_tree, build_tree, formula_to_json, print, Formula, FormulaTree, Notation, Signature};
use sentential::lindenbaum_tarski::{lindenbaum_corpus, lt_classical, rn_lattice, verify_quotient};
use sentential::matrix::{b2, consequence_search, evaluate, godel, lc_decide, Valuation, DEFAULT_BUDGET};

use crate::input::{self, kripke_error, lib_error, matrix_error, required, CliError, CliResult};
use crate::{Command, Opts};

pub struct Outcome {
    pub result: Value,
    pub witness: Value,
    pub evaluations: Option<u64>,
    pub dot: Option<String>,
}

impl Outcome {
    fn plain(result: Value) -> Self {
        Outcome { result, witness: Value::Null, evaluations: None, dot: None }
    }

    fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }
}

pub fn run(cmd: Command, o: &Opts) -> CliResult<Outcome> {
    match cmd {
        Command::Parse => parse(o),
        Command::Eval => eval(o),
        Command::Valid | Command::Conseq => conseq(cmd, o),
        Command::LcValid => lc_valid(o),
        Command::DeriveCheck => derive_check(o),
        Command::Confirm3Check => confirm_check(o),
        Command::Search => search(o),
        Command::Horn => horn(o),
        Command::CnLab => cn_lab(o),
        Command::LtCl => lt_cl(o),
        Command::Rn => rn(o),
        Command::Countermodel => countermodel(o),
        Command::TreeAssemble => tree_assemble(o),
        Command::Identities => identities(o),
    }
}

fn goal(o: &Opts) -> CliResult<Formula> {
    input::formula(required(&o.formula, "formula")?, o.notation)
}

fn parse(o: &Opts) -> CliResult<Outcome> {
    let f = goal(o)?;
    let sig = Signature::modal();
    Ok(Outcome::plain(json!({
        "formula": formula_to_json(&f),
        "infix": print(&f, Notation::Infix, &sig),
        "prefix": print(&f, Notation::Prefix, &sig),
        "degree": f.degree(),
        "variables": f.variables().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
    })))
}

fn eval(o: &Opts) -> CliResult<Outcome> {
    let m = input::matrix(required(&o.matrix, "matrix")?)?;
    let f = goal(o)?;
    let pairs: Vec<(&str, &str)> = o
        .valuation
        .as_deref()
        .unwrap_or("")
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.split_once('=').map(|(a, b)| (a.trim(), b.trim())).ok_or_else(|| CliError::Usage(format!("bad assignment `{s}`"))))
        .collect::<CliResult<_>>()?;
    let v = Valuation::from_names(m.algebra(), &pairs).map_err(|e| CliError::Usage(e.to_string()))?;
    let value = evaluate(&m, &v, &f).map_err(matrix_error)?;
    Ok(Outcome::plain(json!({
        "matrix": m.name(),
        "value": m.algebra().element_name(value),
        "designated": m.is_designated(value),
    })))
}

fn conseq(cmd: Command, o: &Opts) -> CliResult<Outcome> {
    let m = input::matrix(required(&o.matrix, "matrix")?)?;
    let f = goal(o)?;
    let premises = if cmd == Command::Conseq { input::premises(o.premises.as_deref(), o.notation)? } else { Vec::new() };
    let s = consequence_search(&m, &premises, &f, o.budget.unwrap_or(DEFAULT_BUDGET)).map_err(matrix_error)?;
    let key = if cmd == Command::Valid { "valid" } else { "holds" };
    Ok(Outcome {
        result: json!({ key: s.witness.is_none(), "matrix": m.name() }),
        witness: s.witness.map(|w| w.to_json(m.algebra())).unwrap_or(Value::Null),
        evaluations: Some(s.evaluations),
        dot: None,
    })
}

fn lc_valid(o: &Opts) -> CliResult<Outcome> {
    let f = goal(o)?;
    let v = lc_decide(&f, o.budget.unwrap_or(DEFAULT_BUDGET)).map_err(matrix_error)?;
    let chain = godel(v.chain).map_err(matrix_error)?;
    Ok(Outcome {
        result: json!({ "valid": v.valid(), "via": format!("G{}", v.chain) }),
        witness: v.search.witness.as_ref().map(|w| w.to_json(chain.algebra())).unwrap_or(Value::Null),
        evaluations: Some(v.search.evaluations),
        dot: None,
    })
}

fn calculus(o: &Opts, default: &str) -> CliResult<sentential::calculus::Calculus> {
    builtin_calculus(o.calculus.as_deref().unwrap_or(default)).map_err(|e| CliError::Usage(e.to_string()))
}

fn derive_check(o: &Opts) -> CliResult<Outcome> {
    let c = calculus(o, "hilbert_cl")?;
    let d = Derivation::from_json(&input::json_file(required(&o.proof, "proof")?)?).map_err(|e| CliError::Usage(e.to_string()))?;
    let target = match &o.formula {
        Some(t) => input::formula(t, o.notation)?,
        None => d.conclusion().cloned().ok_or_else(|| CliError::Usage("empty derivation and no --formula".into()))?,
    };
    let result = match check_derivation(&c, &d, &target) {
        Verdict::Verified => json!({ "verified": true, "calculus": c.name, "lines": d.len() }),
        Verdict::FirstFailure { step, reason } => json!({
            "verified": false,
            "calculus": c.name,
            "first_failure": { "step": step + 1, "reason": reason.to_string() },
        }),
    };
    Ok(Outcome::plain(result))
}

fn confirm_check(o: &Opts) -> CliResult<Outcome> {
    let c = Confirmation::from_json(&input::json_file(required(&o.proof, "proof")?)?).map_err(|e| CliError::Usage(e.to_string()))?;
    let result = match check_confirmation(&c) {
        ConfirmationVerdict::Verified => json!({ "verified": true, "conclusion": c.conclusion.to_infix() }),
        ConfirmationVerdict::FirstFailure { node, reason } => json!({
            "verified": false,
            "first_failure": { "node": node, "reason": reason.to_string() },
        }),
    };
    Ok(Outcome::plain(result))
}

fn search(o: &Opts) -> CliResult<Outcome> {
    let c = calculus(o, "hilbert_cl")?;
    let f = goal(o)?;
    let premises = input::premises(o.premises.as_deref(), o.notation)?;
    let mut limits = Limits::for_goal(&f);
    if let Some(b) = o.budget {
        limits.max_steps = b as usize;
    }
    if let Some(d) = bounded_search(&c, &premises, &f, limits) {
        return Ok(Outcome {
            result: json!({ "found": true, "calculus": c.name, "lines": d.len() }),
            witness: d.to_json(),
            evaluations: None,
            dot: None,
        });
    }
    if c.name == "hilbert_cl" {
        let s = consequence_search(&b2(), &premises, &f, DEFAULT_BUDGET).map_err(matrix_error)?;
        if let Some(w) = s.witness {
            return Ok(Outcome {
                result: json!({ "found": false, "calculus": c.name, "refuted": true }),
                witness: w.to_json(b2().algebra()),
                evaluations: Some(s.evaluations),
                dot: None,
            });
        }
    }
    Err(CliError::Budget(format!("no derivation within {} lines and degree {}", limits.max_steps, limits.max_degree)))
}

fn horn(o: &Opts) -> CliResult<Outcome> {
    let c = calculus(o, "hilbert_cl")?;
    let rules: Vec<Value> = c.rules.iter().map(|r| json!({ "rule": r.name, "horn": rule_to_horn(r) })).collect();
    Ok(Outcome::plain(json!({ "calculus": c.name, "rules": rules })))
}

fn cn_lab(o: &Opts) -> CliResult<Outcome> {
    let n = o.universe.unwrap_or(2);
    let verdict = verify_con_connections(n, o.budget.unwrap_or(100_000), o.seed).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut result = json!({ "universe": n, "connections": verdict.to_json() });
    if n <= 3 {
        let systems = FiniteClosureSystem::all(n).map_err(lib_error)?;
        let closure_ok = systems.iter().all(|cs| {
            let r = check_operator_axioms(&cs.to_operator());
            [OperatorAxiom::A, OperatorAxiom::B, OperatorAxiom::C].iter().all(|&a| r.holds(a))
        });
        result["closure_systems"] = json!({ "count": systems.len(), "cn_satisfies_a_b_c": closure_ok });
    }
    Ok(Outcome::plain(result))
}

const BOOLEAN_SUITES: [Suite; 3] = [Suite::LatticeL1L4, Suite::BoundedB1, Suite::BooleanB2];
const HEYTING_SUITES: [Suite; 4] = [Suite::LatticeL1L4, Suite::BoundedB1, Suite::HeytingH1H6, Suite::IntPropsAH];

fn lt_cl(o: &Opts) -> CliResult<Outcome> {
    let q = lt_classical(o.rank.unwrap_or(1)).map_err(|e| CliError::Usage(e.to_string()))?;
    let corpus = lindenbaum_corpus(&q, 2);
    let report = verify_quotient(&q, &BOOLEAN_SUITES, &corpus).map_err(lib_error)?;
    let dot = q.to_dot();
    Ok(Outcome::plain(json!({ "algebra": q.to_json(), "verification": report.to_json() })).with_dot(dot))
}

fn rn(o: &Opts) -> CliResult<Outcome> {
    if let Some(text) = &o.formula {
        let f = input::formula(text, o.notation)?;
        let class = rn_classify(&f).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(Outcome::plain(json!({ "formula": f.to_infix(), "class": class.to_json() })));
    }
    let q = rn_lattice(o.count.unwrap_or(12)).map_err(|e| CliError::Usage(e.to_string()))?;
    let corpus = lindenbaum_corpus(&q, 3);
    let report = verify_quotient(&q, &HEYTING_SUITES, &corpus).map_err(lib_error)?;
    let dot = q.to_dot();
    Ok(Outcome::plain(json!({ "algebra": q.to_json(), "verification": report.to_json() })).with_dot(dot))
}

fn countermodel(o: &Opts) -> CliResult<Outcome> {
    let f = goal(o)?;
    let worlds = o.worlds.unwrap_or(6);
    let found = int_countermodel_with_budget(&f, worlds, o.budget.unwrap_or(KRIPKE_BUDGET)).map_err(kripke_error)?;
    Ok(match found {
        Some(c) => Outcome {
            result: json!({ "countermodel": true, "worlds": c.model.frame().len() }),
            witness: json!({ "model": c.model.to_json(), "world": c.model.frame().names()[c.world] }),
            evaluations: None,
            dot: Some(c.model.to_dot(Some(c.world))),
        },
        None => Outcome::plain(json!({ "countermodel": false, "searched_worlds": worlds })),
    })
}

fn tree_json(t: &FormulaTree) -> Value {
    json!({
        "nodes": t.nodes.iter().map(|n| json!({ "id": n.id.to_string(), "formula": n.formula.to_infix() })).collect::<Vec<_>>(),
        "edges": t.edges.iter().map(|e| json!({ "parent": e.parent.to_string(), "child": e.child.to_string(), "weight": e.weight })).collect::<Vec<_>>(),
    })
}

fn tree_assemble(o: &Opts) -> CliResult<Outcome> {
    let Some(path) = &o.proof else {
        let f = goal(o)?;
        return Ok(Outcome::plain(json!({ "tree": tree_json(&build_tree(&f)) })));
    };
    let v = input::json_file(path)?;
    let items = v.as_array().ok_or_else(|| CliError::Usage("tree file must be an array of [id, formula] pairs".into()))?;
    let pairs = items
        .iter()
        .map(|p| {
            let (id, text) = match p {
                Value::Array(a) if a.len() == 2 => (&a[0], &a[1]),
                Value::Object(m) => (m.get("id").unwrap_or(&Value::Null), m.get("formula").unwrap_or(&Value::Null)),
                _ => return Err(CliError::Usage(format!("bad pair {p}"))),
            };
            let id = match id {
                Value::String(s) => s.parse::<BigUint>().ok(),
                Value::Number(n) => n.as_u64().map(BigUint::from),
                _ => None,
            }
            .ok_or_else(|| CliError::Usage(format!("bad id {id}")))?;
            let text = text.as_str().ok_or_else(|| CliError::Usage(format!("bad formula {text}")))?;
            Ok((id, input::formula(text, o.notation)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Outcome::plain(match assemble_tree(&pairs) {
        Ok(t) => json!({ "tree": tree_json(&t), "formula": t.root().formula.to_infix() }),
        Err(e) => json!({ "tree": null, "reason": e.to_string() }),
    }))
}

fn identities(o: &Opts) -> CliResult<Outcome> {
    let m = input::matrix(required(&o.matrix, "matrix")?)?;
    let suites: Vec<Suite> = match o.suite.as_deref().unwrap_or("all") {
        "all" => Suite::ALL.to_vec(),
        name => vec![Suite::from_name(name).ok_or_else(|| CliError::Usage(format!("unknown suite `{name}`")))?],
    };
    let alg = m.algebra();
    let reports = suites.iter().map(|&s| check_identities(alg, s).map(|r| r.to_json(alg))).collect::<Result<Vec<_>, _>>().map_err(lib_error)?;
    let dot = algebra_dot(alg).ok();
    let mut out = Outcome::plain(json!({ "matrix": m.name(), "suites": reports }));
    out.dot = dot;
    Ok(out)
}
