//! `sentential`: JSON verdicts for formulas, matrices, calculi, consequence
//! operators, Kripke models and Lindenbaum–Tarski quotients.

mod commands;
mod input;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use sentential::language::Notation;

#[derive(Parser, Debug)]
#[command(name = "sentential", version, about = "Sentential logic workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Parse a formula and report its structure
    Parse,
    /// Value of a formula under a valuation (--valuation "p=1,q=0")
    Eval,
    /// Validity in a matrix, with the least refuting valuation
    Valid,
    /// Matrix consequence from premises
    Conseq,
    /// Validity in every finite Gödel chain
    LcValid,
    /// Check a derivation file against a calculus
    DeriveCheck,
    /// Check a confirmation tree file
    Confirm3Check,
    /// Bounded proof search in a calculus
    Search,
    /// Rules of a calculus as Horn sentences
    Horn,
    /// Consequence-operator laboratory on a small universe
    CnLab,
    /// Free Boolean algebra of a given rank as a quotient
    LtCl,
    /// The one-variable intuitionistic lattice, or the class of a formula
    Rn,
    /// Smallest Kripke countermodel
    Countermodel,
    /// Assemble a formula tree from (id, formula) pairs, or build one
    TreeAssemble,
    /// Identity suites on the algebra of a matrix
    Identities,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Parse => "parse",
            Command::Eval => "eval",
            Command::Valid => "valid",
            Command::Conseq => "conseq",
            Command::LcValid => "lc-valid",
            Command::DeriveCheck => "derive-check",
            Command::Confirm3Check => "confirm3-check",
            Command::Search => "search",
            Command::Horn => "horn",
            Command::CnLab => "cn-lab",
            Command::LtCl => "lt-cl",
            Command::Rn => "rn",
            Command::Countermodel => "countermodel",
            Command::TreeAssemble => "tree-assemble",
            Command::Identities => "identities",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Built-in matrix name (b2, l3, l3_tau, l3_modal, g3_prime, godel(n)) or a JSON file
    #[arg(long, global = true)]
    pub matrix: Option<String>,
    #[arg(long, global = true)]
    pub formula: Option<String>,
    /// A file (JSON array or one formula per line) or a `;`-separated list
    #[arg(long, global = true)]
    pub premises: Option<String>,
    /// hilbert_cl, hilbert_int, hilbert_p, hilbert_lc or nd_rules
    #[arg(long, global = true)]
    pub calculus: Option<String>,
    /// JSON file with a derivation, confirmation tree or tree pairs
    #[arg(long, global = true)]
    pub proof: Option<String>,
    /// Print a Graphviz diagram instead of the verdict
    #[arg(long, global = true)]
    pub dot: bool,
    /// Print the verdict on one line
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Cap on enumerated valuations, sampled operators or proof lines
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value = "infix")]
    pub notation: Notation,
    /// Variable assignments for `eval`, e.g. "p=τ,q=1"
    #[arg(long, global = true)]
    pub valuation: Option<String>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Length of the P-prefix for `rn`
    #[arg(long, global = true)]
    pub count: Option<usize>,
    #[arg(long, global = true)]
    pub worlds: Option<usize>,
    /// Universe size for `cn-lab`
    #[arg(long, global = true)]
    pub universe: Option<usize>,
    /// Identity suite name, or `all`
    #[arg(long, global = true)]
    pub suite: Option<String>,
}

impl Opts {
    fn echo(&self) -> Value {
        let mut m = Map::new();
        let mut put = |k: &str, v: Option<Value>| {
            if let Some(v) = v {
                m.insert(k.into(), v);
            }
        };
        put("matrix", self.matrix.clone().map(Value::from));
        put("formula", self.formula.clone().map(Value::from));
        put("premises", self.premises.clone().map(Value::from));
        put("calculus", self.calculus.clone().map(Value::from));
        put("proof", self.proof.clone().map(Value::from));
        put("budget", self.budget.map(Value::from));
        put("valuation", self.valuation.clone().map(Value::from));
        put("rank", self.rank.map(Value::from));
        put("count", self.count.map(Value::from));
        put("worlds", self.worlds.map(Value::from));
        put("universe", self.universe.map(Value::from));
        put("suite", self.suite.clone().map(Value::from));
        Value::Object(m)
    }
}

fn emit(v: &Value, compact: bool) {
    let text = if compact { serde_json::to_string(v) } else { serde_json::to_string_pretty(v) };
    println!("{}", text.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.opts.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("cannot start {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let started = Instant::now();
    let outcome = commands::run(cli.command, &cli.opts);
    let elapsed_ms = started.elapsed().as_millis() as u64;
    let (payload, code) = match outcome {
        Ok(out) => {
            if cli.opts.dot {
                if let Some(dot) = out.dot {
                    print!("{dot}");
                    return ExitCode::SUCCESS;
                }
            }
            (
                json!({
                    "result": out.result,
                    "witness": out.witness,
                    "stats": { "evaluations": out.evaluations, "elapsed_ms": elapsed_ms },
                }),
                0,
            )
        }
        Err(e) => {
            eprintln!("sentential {}: {e}", cli.command.name());
            (
                json!({
                    "result": { "error": { "kind": e.kind(), "message": e.to_string() } },
                    "witness": null,
                    "stats": { "evaluations": null, "elapsed_ms": elapsed_ms },
                }),
                e.exit_code(),
            )
        }
    };
    let mut verdict = json!({ "command": cli.command.name(), "input": cli.opts.echo() });
    for (k, v) in payload.as_object().expect("object") {
        verdict[k] = v.clone();
    }
    verdict["seed"] = json!(cli.opts.seed);
    emit(&verdict, cli.opts.json);
    ExitCode::from(code as u8)
}
