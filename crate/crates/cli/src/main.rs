//! `epispace`: postulate checks and conversions between operators and
//! assignments, on spaces loaded from text files.
//!
//! Exit codes: 0 when every requested check holds, 1 when one is violated,
//! 2 on usage or format errors, 3 when a bound on enumeration is exceeded.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use epispace::assignments::{extract, is_compatible, is_faithful, synthesize, Assignment, FalsumFlag};
use epispace::fixtures::{build_example1, build_example2, example2_assignment};
use epispace::format::{
    parse_assignment, parse_operator, parse_space, write_assignment, write_operator, write_space,
};
use epispace::modelcheck::{
    verify_claims, EnumerationScope, OperatorEnumerator, VerifyConfig, DEFAULT_MAX_ASSIGNMENTS,
    DEFAULT_MAX_OPERATORS, MAX_OPS_ENV,
};
use epispace::postulates::{check_all, check_with, CheckConfig, CheckResult, PostulateId};
use epispace::{classify, dot, models, parse, Error, EpistemicSpace, SemanticOperator};

use render::{
    assignment_json, check_text, count_text, set_text, worlds, CheckResultJson, ClassMembershipJson,
    EnumerationScopeJson, VerificationReportJson,
};

#[derive(Parser)]
#[command(name = "epispace", version, about = "Revision operators over finite epistemic spaces")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the models of a formula over a space's signature.
    Eval {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        formula: String,
    },
    /// Check one postulate, or all of them, against an operator.
    Check {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        operator: PathBuf,
        #[arg(short, long, value_parser = postulate)]
        postulate: Option<PostulateId>,
        /// Also check this assignment for faithfulness and compatibility.
        #[arg(short, long)]
        assignment: Option<PathBuf>,
        /// Refuse pair-quantified postulates above this many atoms.
        #[arg(long, default_value_t = 3)]
        pair_atom_cap: usize,
    },
    /// Report membership in the AGM, CL and ECL classes.
    Classify {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        operator: PathBuf,
    },
    /// Build the operator compatible with an assignment.
    Synthesize {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        assignment: PathBuf,
        /// Write the operator here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read the assignment off an operator.
    Extract {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        operator: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extract then re-synthesize an operator (or the reverse for an
    /// assignment) and diff the results.
    #[command(group(ArgGroup::new("input").required(true).args(["operator", "assignment"])))]
    Roundtrip {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        operator: Option<PathBuf>,
        #[arg(short, long)]
        assignment: Option<PathBuf>,
    },
    /// Check the class relations and representation results on every
    /// operator over a space.
    Verify {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(long, env = MAX_OPS_ENV, default_value_t = DEFAULT_MAX_OPERATORS)]
        max_ops: u128,
        #[arg(long, default_value_t = DEFAULT_MAX_ASSIGNMENTS)]
        max_assignments: u128,
        /// Operators sampled when the space is over the bound; 0 refuses instead.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Largest preorder domain in the minimum-trichotomy sweep.
        #[arg(long, default_value_t = 3)]
        lemma_domain: usize,
        /// Stay on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Count or classify every operator over a space.
    #[command(group(ArgGroup::new("mode").required(true).args(["count_only", "classify_all"])))]
    Enumerate {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        classify_all: bool,
        /// List the members of one class by index.
        #[arg(long, value_enum, requires = "classify_all")]
        only: Option<Class>,
        #[arg(long, env = MAX_OPS_ENV, default_value_t = DEFAULT_MAX_OPERATORS)]
        max_ops: u128,
    },
    /// Graphviz rendering of an operator's transitions.
    Dot {
        #[arg(short, long)]
        space: PathBuf,
        #[arg(short, long)]
        operator: PathBuf,
    },
    /// Write the two worked example spaces and operators as files.
    Examples {
        #[arg(short, long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Agm,
    Cl,
    Ecl,
}

fn postulate(s: &str) -> Result<PostulateId, String> {
    PostulateId::from_str(s).map_err(|e| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn violated(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::ScaleExceeded { .. }) { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

/// Attaches the file to a library error; format errors also get the line.
fn in_file(path: &Path, e: Error) -> Failure {
    match e {
        Error::Format { line, token, message } => {
            Failure::usage(format!("{}:{line}: {message} (at `{token}`)", path.display()))
        }
        other => {
            let mut f = Failure::from(other);
            f.message = format!("{}: {}", path.display(), f.message);
            f
        }
    }
}

/// Library message with state indices replaced by names.
fn describe(sp: &EpistemicSpace, e: &Error) -> String {
    match e {
        Error::NotAPreorder { state, detail } => {
            format!("relation read off at {} is not a total preorder: {detail}", sp.state_name(*state))
        }
        Error::ConstraintViolation { state, detail } => {
            format!("assignment read off at {} violates a constraint: {detail}", sp.state_name(*state))
        }
        Error::UnhostedTarget { state, input, target } => format!(
            "no state carries {} needed at ({}, {})",
            set_text(sp, *target),
            sp.state_name(*state),
            set_text(sp, *input)
        ),
        other => other.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// The space is named after its file stem; operator and assignment files
/// refer to it by that name.
fn load_space(path: &Path) -> Result<Arc<EpistemicSpace>, Failure> {
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| Failure::usage(format!("{}: cannot name a space after this path", path.display())))?;
    let space = parse_space(&read(path)?, name).map_err(|e| in_file(path, e))?;
    Ok(Arc::new(space))
}

fn load_operator(path: &Path, space: &Arc<EpistemicSpace>) -> Result<SemanticOperator, Failure> {
    parse_operator(&read(path)?, space).map_err(|e| in_file(path, e))
}

fn load_assignment(path: &Path, space: &EpistemicSpace) -> Result<Assignment, Failure> {
    parse_assignment(&read(path)?, space).map_err(|e| in_file(path, e))
}

fn emit(json: bool, value: &impl Serialize, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
    } else {
        print!("{}", text());
    }
}

fn code(holds: bool) -> u8 {
    if holds {
        0
    } else {
        1
    }
}

fn results_text(space: &EpistemicSpace, results: &[CheckResult]) -> String {
    results.iter().map(|r| check_text(space, r) + "\n").collect()
}

fn operator_json(op: &SemanticOperator) -> serde_json::Value {
    let sp = op.space();
    let rows: Vec<_> = sp
        .states()
        .flat_map(|s| sp.signature().world_sets().map(move |a| (s, a)))
        .map(|(s, a)| {
            json!({
                "state": sp.state_name(s),
                "input": worlds(sp, a),
                "target": sp.state_name(op.apply_set(s, a)),
            })
        })
        .collect();
    json!({ "space": sp.name(), "rows": rows })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Eval { space, formula } => {
            let sp = load_space(&space)?;
            let sig = sp.signature();
            let f = parse(&formula, sig).map_err(|e| Failure::usage(format!("formula `{formula}`: {e}")))?;
            let m = models(&f, sig);
            let value = json!({ "formula": f.display(sig).to_string(), "models": worlds(&sp, m) });
            emit(json, &value, || format!("{}\n", set_text(&sp, m)));
            Ok(0)
        }
        Command::Check { space, operator, postulate, assignment, pair_atom_cap } => {
            let sp = load_space(&space)?;
            let op = load_operator(&operator, &sp)?;
            let config = CheckConfig::new(pair_atom_cap)?;
            let mut results = match postulate {
                Some(p) => vec![check_with(&op, p, &config)?],
                None => check_all(&op, &config)?,
            };
            if let Some(path) = assignment {
                let a = load_assignment(&path, &sp)?;
                results.push(is_faithful(&sp, &a));
                results.push(is_compatible(&sp, &a, &op));
            }
            let holds = results.iter().all(CheckResult::holds);
            let value: Vec<_> = results.iter().map(|r| CheckResultJson::new(&sp, r)).collect();
            emit(json, &value, || results_text(&sp, &results));
            Ok(code(holds))
        }
        Command::Classify { space, operator } => {
            let sp = load_space(&space)?;
            let op = load_operator(&operator, &sp)?;
            let m = classify(&op)?;
            emit(json, &ClassMembershipJson::from(m), || {
                format!("AGM {}\nCL  {}\nECL {}\n", m.agm, m.cl, m.ecl)
            });
            Ok(0)
        }
        Command::Synthesize { space, assignment, out } => {
            let sp = load_space(&space)?;
            let a = load_assignment(&assignment, &sp)?;
            let faithful = is_faithful(&sp, &a);
            if !faithful.holds() {
                let text = check_text(&sp, &faithful);
                return Err(Failure::violated(format!("{}: {text}", assignment.display())));
            }
            let op = synthesize(&sp, &a).map_err(|e| match e {
                Error::UnhostedTarget { .. } => Failure::violated(describe(&sp, &e)),
                other => other.into(),
            })?;
            let text = write_operator(&op);
            match out {
                Some(path) => write(&path, &text)?,
                None if json => emit(true, &operator_json(&op), String::new),
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Extract { space, operator, out } => {
            let sp = load_space(&space)?;
            let op = load_operator(&operator, &sp)?;
            let a = extract(&op)
                .map_err(|e| Failure::violated(format!("{}: {}", operator.display(), describe(&sp, &e))))?;
            let text = write_assignment(&sp, &a);
            match out {
                Some(path) => write(&path, &text)?,
                None if json => emit(true, &assignment_json(&sp, &a), String::new),
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Roundtrip { space, operator, assignment } => {
            let sp = load_space(&space)?;
            match (operator, assignment) {
                (Some(path), _) => roundtrip_operator(json, &sp, &load_operator(&path, &sp)?),
                (None, Some(path)) => roundtrip_assignment(json, &sp, &load_assignment(&path, &sp)?),
                (None, None) => unreachable!("clap requires one input"),
            }
        }
        Command::Verify {
            space,
            max_ops,
            max_assignments,
            samples,
            seed,
            lemma_domain,
            sequential,
        } => {
            let sp = load_space(&space)?;
            let config = VerifyConfig {
                max_operators: max_ops,
                max_assignments,
                samples,
                seed,
                parallel: !sequential,
                lemma1_max_domain: lemma_domain,
            };
            let report = verify_claims(&sp, &config)?;
            emit(json, &VerificationReportJson::new(&sp, &report), || {
                render::verification_text(&sp, &report)
            });
            Ok(code(!report.refuted()))
        }
        Command::Enumerate { space, count_only, only, max_ops, .. } => {
            let sp = load_space(&space)?;
            if count_only {
                let scope = EnumerationScope::of(&sp);
                emit(json, &EnumerationScopeJson::from(scope), || {
                    format!(
                        "operators {}\nassignments {}\nfaithful assignments {}\n",
                        count_text(scope.operator_count),
                        count_text(scope.assignment_count),
                        count_text(scope.faithful_assignment_count)
                    )
                });
                return Ok(0);
            }
            classify_all(json, &sp, only, max_ops)
        }
        Command::Dot { space, operator } => {
            let sp = load_space(&space)?;
            let op = load_operator(&operator, &sp)?;
            let text = dot::to_dot(&op);
            emit(json, &json!({ "dot": text }), || text.clone());
            Ok(0)
        }
        Command::Examples { dir } => {
            fs::create_dir_all(&dir).map_err(|e| Failure::usage(format!("{}: {e}", dir.display())))?;
            let (sp1, op1) = build_example1();
            let (sp2, op2) = build_example2();
            let files = [
                ("ex1.space", write_space(&sp1)),
                ("ex1.op", write_operator(&op1)),
                ("ex2.space", write_space(&sp2)),
                ("ex2.op", write_operator(&op2)),
                ("ex2.assign", write_assignment(&sp2, &example2_assignment(&sp2))),
            ];
            let mut written = Vec::new();
            for (name, text) in files {
                let path = dir.join(name);
                write(&path, &text)?;
                written.push(path.display().to_string());
            }
            emit(json, &json!({ "written": written }), || {
                written.iter().map(|p| format!("wrote {p}\n")).collect()
            });
            Ok(0)
        }
    }
}

fn roundtrip_operator(json: bool, sp: &Arc<EpistemicSpace>, op: &SemanticOperator) -> Result<u8, Failure> {
    let a = match extract(op) {
        Ok(a) => a,
        Err(e) => {
            let e = describe(sp, &e);
            emit(json, &json!({ "identical": false, "error": e }), || {
                format!("extraction failed: {e}\n")
            });
            return Ok(1);
        }
    };
    let checks = [is_faithful(sp, &a), is_compatible(sp, &a, op)];
    let rebuilt = if checks.iter().all(CheckResult::holds) {
        Some(synthesize(sp, &a))
    } else {
        None
    };
    let (identical, exact, diffs, error) = match &rebuilt {
        Some(Ok(back)) => {
            let diffs: Vec<_> = op
                .differences(back)
                .map(|(s, input)| {
                    json!({
                        "state": sp.state_name(s),
                        "input": worlds(sp, input),
                        "expected": worlds(sp, op.result(s, input)),
                        "actual": worlds(sp, back.result(s, input)),
                    })
                })
                .collect();
            (diffs.is_empty(), back.table() == op.table(), diffs, None)
        }
        Some(Err(e)) => (false, false, Vec::new(), Some(describe(sp, e))),
        None => (false, false, Vec::new(), None),
    };
    let value = json!({
        "identical": identical,
        "exact": exact,
        "checks": checks.iter().map(|r| CheckResultJson::new(sp, r)).collect::<Vec<_>>(),
        "differences": diffs,
        "error": error,
    });
    emit(json, &value, || {
        let mut out = results_text(sp, &checks);
        if let Some(e) = &error {
            out.push_str(&format!("synthesis failed: {e}\n"));
        }
        for d in &diffs {
            out.push_str(&format!(
                "differs at ({}, {{{}}})\n",
                d["state"].as_str().unwrap_or_default(),
                d["input"].as_array().map(|a| a.iter().filter_map(|w| w.as_str()).collect::<Vec<_>>().join(", ")).unwrap_or_default()
            ));
        }
        if identical {
            out.push_str(if exact {
                "tables identical\n"
            } else {
                "tables identical up to states sharing a belief set\n"
            });
        }
        out
    });
    Ok(code(identical))
}

/// Synthesis then extraction. Flags at states without models are not
/// recoverable from the operator and are left out of the comparison.
fn roundtrip_assignment(json: bool, sp: &Arc<EpistemicSpace>, a: &Assignment) -> Result<u8, Failure> {
    let faithful = is_faithful(sp, a);
    let back = if faithful.holds() {
        synthesize(sp, a).and_then(|op| extract(&op))
    } else {
        Err(Error::InvalidAssignment("not faithful".into()))
    };
    let (differing, error) = match &back {
        Ok(b) => {
            let differing: Vec<&str> = sp
                .states()
                .filter(|s| {
                    let (x, y) = (a.get(*s), b.get(*s));
                    let flags_visible = !sp.beliefs(*s).is_empty() || x.flag == FalsumFlag::Top;
                    x.credible != y.credible || x.order != y.order || (flags_visible && x.flag != y.flag)
                })
                .map(|s| sp.state_name(s))
                .collect();
            (differing, None)
        }
        Err(e) => (Vec::new(), Some(describe(sp, e))),
    };
    let identical = error.is_none() && differing.is_empty();
    let value = json!({
        "identical": identical,
        "faithful": CheckResultJson::new(sp, &faithful),
        "differing_states": differing,
        "error": error,
    });
    emit(json, &value, || {
        let mut out = check_text(sp, &faithful) + "\n";
        if let Some(e) = &error {
            out.push_str(&format!("roundtrip failed: {e}\n"));
        }
        for s in &differing {
            out.push_str(&format!("differs at {s}\n"));
        }
        if identical {
            out.push_str("assignments identical\n");
        }
        out
    });
    Ok(code(identical))
}

fn classify_all(json: bool, sp: &Arc<EpistemicSpace>, only: Option<Class>, limit: u128) -> Result<u8, Failure> {
    let ops = OperatorEnumerator::all(sp, limit)?;
    let (mut agm, mut cl, mut ecl) = (0u128, 0u128, 0u128);
    let mut members = Vec::new();
    for i in 0..ops.len() {
        let m = classify(&ops.get(i))?;
        agm += m.agm as u128;
        cl += m.cl as u128;
        ecl += m.ecl as u128;
        let selected = match only {
            Some(Class::Agm) => m.agm,
            Some(Class::Cl) => m.cl,
            Some(Class::Ecl) => m.ecl,
            None => false,
        };
        if selected {
            members.push(i);
        }
    }
    let value = json!({
        "operators": ops.len(),
        "agm": agm,
        "cl": cl,
        "ecl": ecl,
        "members": only.map(|_| members.clone()),
    });
    emit(json, &value, || {
        let mut out = format!("operators {}\nAGM {agm}\nCL  {cl}\nECL {ecl}\n", ops.len());
        for i in &members {
            let table: Vec<&str> = ops.get(*i).table().iter().map(|s| sp.state_name(*s)).collect();
            out.push_str(&format!("{i} {}\n", table.join(" ")));
        }
        out
    });
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("epispace: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
