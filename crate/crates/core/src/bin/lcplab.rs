//! Command-line front end.
//!
//! Exit codes: 0 affirmative, 1 negative (invalid certificate, no solution,
//! suite violations), 2 inconclusive or unknown, 3 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use lcplab::gameval::game_value;
use lcplab::hiddenz::{
    classify_hidden, extended_seeds, find_certificate, perturb, submatrix_certificate, type_d_certificate, verify_certificate,
    Certificate, ClassifyParams, Verdict,
};
use lcplab::io::{certificate_json, matrix_json, rational_json, read_input, rows_json, vector_json, InputFile};
use lcplab::labgen::{run_suite, SuiteConfig, SuiteId, REPORT_SCHEMA};
use lcplab::lcpsolve::{enumerate_solutions, solve_with, LcpInstance, Method, SolveOutcome, SolveStatus};
use lcplab::lpcore::{solve_lp, LpProblem, Relation};
use lcplab::matclass::summarize;
use lcplab::rational::parse_rational;
use lcplab::{Error, IndexSet, Rational, DEFAULT_SUBSET_CAP};

#[derive(Parser)]
#[command(name = "lcplab", version, about = "Exact-arithmetic LCP and hidden Z-matrix toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report class memberships and run the two-step P/P0 certification.
    Classify {
        path: PathBuf,
        #[arg(long, default_value = "1")]
        eps: String,
        #[arg(long, default_value = "1")]
        delta: String,
        /// Comma-separated subset of: z,k,k0,p,p0,almost_p,almost_p0,n,s,sbar,e,e0,type_d,value
        #[arg(long, value_delimiter = ',')]
        classes: Option<Vec<String>>,
        /// Largest order for the subset sweeps.
        #[arg(long, default_value_t = DEFAULT_SUBSET_CAP)]
        cap: usize,
    },
    /// Solve the LCP in an instance file.
    Solve {
        path: PathBuf,
        #[arg(long, default_value = "lemke")]
        method: String,
        /// Run every applicable method and compare with enumeration.
        #[arg(long)]
        cross_check: bool,
    },
    /// Hidden Z-matrix certificates.
    Hidden {
        #[command(subcommand)]
        action: HiddenAction,
    },
    /// Run a property suite.
    Suite {
        id: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum HiddenAction {
    /// Search for a certificate.
    Find { path: PathBuf },
    /// Check the certificate embedded in an instance file.
    Verify { path: PathBuf },
    /// Certificate for A + εI.
    Perturb { eps: String, path: PathBuf },
    /// Certificate for a principal submatrix; ALPHA is one-based, e.g. "1,3".
    Submatrix { alpha: String, path: PathBuf },
}

const CLASS_NAMES: [&str; 14] = ["z", "k", "k0", "p", "p0", "almost_p", "almost_p0", "n", "s", "sbar", "e", "e0", "type_d", "value"];

/// A failure that maps to an exit code other than 3.
enum Failure {
    Input(Error),
    Exit(u8, Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = std::result::Result<(u8, Value), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Classify { path, eps, delta, classes, cap } => classify(&path, &eps, &delta, classes, cap),
        Command::Solve { path, method, cross_check } => solve(&path, &method, cross_check),
        Command::Hidden { action } => hidden(action),
        Command::Suite { id, trials, n_max, seed, jobs, out } => suite(&id, SuiteConfig { trials, n_max, seed, jobs }, out.as_deref()),
    };
    let (code, report) = match outcome {
        Ok(ok) => ok,
        Err(Failure::Exit(code, report)) => (code, report),
        Err(Failure::Input(e)) => {
            eprintln!("lcplab: {e}");
            return ExitCode::from(3);
        }
    };
    println!("{}", serde_json::to_string_pretty(&with_schema(report)).expect("report serializes"));
    ExitCode::from(code)
}

fn with_schema(report: Value) -> Value {
    match report {
        Value::Object(map) if map.contains_key("schema") => Value::Object(map),
        Value::Object(map) => {
            let mut out = Map::new();
            out.insert("schema".into(), json!(REPORT_SCHEMA));
            out.extend(map);
            Value::Object(out)
        }
        other => other,
    }
}

fn rational_arg(text: &str, name: &str) -> Result<Rational, Error> {
    parse_rational(text).map_err(|e| Error::InvalidInput(format!("{name}: {e}")))
}

/// Certificate from the file (validated), else by search, else type-D.
fn certificate_for(input: &InputFile) -> Result<Option<(Certificate, &'static str)>, Error> {
    if let Some(c) = &input.certificate {
        let v = verify_certificate(&input.a, c)?;
        if let Some(first) = v.violations.first() {
            return Err(Error::InvalidInput(format!("embedded certificate is invalid: {first}")));
        }
        return Ok(Some((c.clone(), "file")));
    }
    let n = input.a.order()?;
    if let Some(c) = find_certificate(&input.a, &extended_seeds(n))? {
        return Ok(Some((c, "search")));
    }
    Ok(type_d_certificate(&input.a)?.map(|c| (c, "type-d")))
}

fn classify(path: &Path, eps: &str, delta: &str, classes: Option<Vec<String>>, cap: usize) -> Outcome {
    let input = read_input(path)?;
    let a = &input.a;
    a.order()?;
    let params = ClassifyParams { epsilon: rational_arg(eps, "--eps")?, delta: rational_arg(delta, "--delta")? };
    let wanted: Vec<String> = classes.unwrap_or_else(|| CLASS_NAMES.iter().map(|s| s.to_string()).collect());
    if let Some(bad) = wanted.iter().find(|c| !CLASS_NAMES.contains(&c.as_str())) {
        return Err(Error::InvalidInput(format!("unknown class '{bad}'; known: {}", CLASS_NAMES.join(","))).into());
    }
    let summary = summarize(a, cap)?;
    let mut memberships = Map::new();
    for name in &wanted {
        let value = match name.as_str() {
            "z" => json!(summary.z),
            "k" => json!(summary.k),
            "k0" => json!(summary.k0),
            "p" => json!(summary.p),
            "p0" => json!(summary.p0),
            "almost_p" => json!(summary.almost_p),
            "almost_p0" => json!(summary.almost_p0),
            "n" => json!(summary.n_category),
            "s" => json!(summary.s),
            "sbar" => json!(summary.sbar),
            "e" => json!(summary.e),
            "e0" => json!(summary.e0),
            "type_d" => match &summary.type_d {
                Some(t) => json!({ "alphas": vector_json(&t.alphas), "positive": t.positive }),
                None => Value::Null,
            },
            "value" => {
                let g = game_value(a)?;
                json!({ "value": rational_json(&g.value), "sign": g.sign, "x_star": vector_json(&g.x_star), "y_star": vector_json(&g.y_star) })
            }
            _ => unreachable!("validated above"),
        };
        memberships.insert(name.clone(), value);
    }
    let found = certificate_for(&input)?;
    let hidden = match &found {
        Some((c, source)) => json!({ "status": "found", "source": source, "certificate": certificate_json(c) }),
        None => json!({ "status": "unknown" }),
    };
    let r = classify_hidden(a, &params, found.as_ref().map(|(c, _)| c))?;
    let algorithm = json!({
        "epsilon": rational_json(&params.epsilon),
        "delta": rational_json(&params.delta),
        "verdict": r.verdict,
        "conditional": r.conditional,
        "step1_feasible": r.step1_feasible,
        "step2_feasible": r.step2_feasible,
        "witness": r.witness.as_deref().map(vector_json),
        "slack": r.slack.as_ref().map(rational_json),
    });
    let report = json!({ "command": "classify", "matrix": rows_json(a), "classes": memberships, "hidden_z": hidden, "algorithm": algorithm });
    Ok((if r.verdict == Verdict::Inconclusive { 2 } else { 0 }, report))
}

fn outcome_json(method: Method, o: &SolveOutcome) -> Value {
    let mut v = json!({ "method": method.name(), "status": o.status, "pivots": o.pivots });
    if let Some(s) = &o.solution {
        v["z"] = vector_json(&s.z);
        v["w"] = vector_json(&s.w);
        v["degenerate"] = json!(s.degenerate);
    }
    if let Some(obj) = &o.objective {
        v["objective"] = rational_json(obj);
    }
    v
}

fn status_code(status: SolveStatus) -> u8 {
    match status {
        SolveStatus::Solved => 0,
        SolveStatus::RayTermination | SolveStatus::Infeasible => 1,
        SolveStatus::IterationCap | SolveStatus::PivotBreakdown => 2,
    }
}

fn solve(path: &Path, method: &str, cross_check: bool) -> Outcome {
    let input = read_input(path)?;
    let q = input.q.clone().ok_or_else(|| Error::InvalidInput(format!("{}: instance file needs \"q\"", path.display())))?;
    let inst = LcpInstance::new(input.a.clone(), q)?;
    let method: Method = method.parse()?;
    if !cross_check {
        let cert = if method == Method::Lp {
            let found = certificate_for(&input)?;
            Some(found.ok_or_else(|| Error::InvalidInput("--method lp needs a hidden-Z certificate; none embedded or found".into()))?.0)
        } else {
            None
        };
        let o = solve_with(&inst, method, cert.as_ref())?;
        let mut report = outcome_json(method, &o);
        report["command"] = json!("solve");
        if o.solution.is_none() {
            report["feasible_set_empty"] = json!(feasible_set_empty(&inst)?);
        }
        return Ok((status_code(o.status), report));
    }
    let oracle = enumerate_solutions(&inst)?;
    let cert = certificate_for(&input)?.map(|(c, _)| c);
    let mut results = Vec::new();
    let mut agree = true;
    for m in Method::ALL {
        if m == Method::Lp && cert.is_none() {
            continue;
        }
        let o = solve_with(&inst, m, cert.as_ref())?;
        agree &= match (&o.solution, oracle.solutions.is_empty()) {
            (Some(s), false) => oracle.solutions.iter().any(|t| t.z == s.z),
            (None, true) => matches!(o.status, SolveStatus::Infeasible | SolveStatus::RayTermination),
            _ => false,
        };
        results.push(outcome_json(m, &o));
    }
    let report = json!({
        "command": "solve",
        "cross_check": true,
        "agree": agree,
        "solutions": oracle.solutions.iter().map(|s| vector_json(&s.z)).collect::<Vec<_>>(),
        "results": results,
    });
    let code = if !agree {
        2
    } else if oracle.solutions.is_empty() {
        1
    } else {
        0
    };
    Ok((code, report))
}

/// Whether `{ z ≥ 0 : q + Az ≥ 0 }` is empty.
fn feasible_set_empty(inst: &LcpInstance) -> Result<bool, Error> {
    let n = inst.order();
    let mut lp = LpProblem::new(n);
    for i in 0..n {
        lp.constrain(inst.a.row(i).to_vec(), Relation::Ge, -&inst.q[i]);
    }
    Ok(solve_lp(&lp)?.is_infeasible())
}

fn parse_alpha(text: &str, n: usize) -> Result<IndexSet, Error> {
    let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
    let members = trimmed
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let k: usize = s.trim().parse().map_err(|_| Error::InvalidInput(format!("ALPHA: '{s}' is not an index")))?;
            if k == 0 || k > n {
                return Err(Error::InvalidInput(format!("ALPHA: index {k} outside 1..={n}")));
            }
            Ok(k - 1)
        })
        .collect::<Result<Vec<_>, Error>>()?;
    IndexSet::new(n, members)
}

fn hidden(action: HiddenAction) -> Outcome {
    match action {
        HiddenAction::Find { path } => {
            let input = read_input(&path)?;
            let n = input.a.order()?;
            let found = match find_certificate(&input.a, &extended_seeds(n))? {
                Some(c) => Some(c),
                None => type_d_certificate(&input.a)?,
            };
            Ok(match found {
                Some(c) => (0, json!({ "command": "hidden find", "status": "found", "certificate": certificate_json(&c) })),
                None => (2, json!({ "command": "hidden find", "status": "unknown" })),
            })
        }
        HiddenAction::Verify { path } => {
            let input = read_input(&path)?;
            let c = input.certificate.ok_or_else(|| Error::InvalidInput(format!("{}: no \"certificate\" to verify", path.display())))?;
            let v = verify_certificate(&input.a, &c)?;
            let report = json!({
                "command": "hidden verify",
                "valid": v.valid,
                "combination": vector_json(&v.combination),
                "violations": v.violations.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            });
            Ok((if v.valid { 0 } else { 1 }, report))
        }
        HiddenAction::Perturb { eps, path } => {
            let eps = rational_arg(&eps, "EPS")?;
            let input = read_input(&path)?;
            let (c, _) = certificate_for(&input)?.ok_or_else(|| Failure::Exit(2, json!({ "command": "hidden perturb", "status": "unknown" })))?;
            let p = perturb(&input.a, &c, &eps)?;
            let report = json!({
                "command": "hidden perturb",
                "bound_l": p.bound_l.to_string(),
                "epsilon": rational_json(&p.epsilon_used),
                "a_eps": matrix_json(&p.a_eps),
                "certificate": certificate_json(&p.cert_eps),
            });
            Ok((0, report))
        }
        HiddenAction::Submatrix { alpha, path } => {
            let input = read_input(&path)?;
            let n = input.a.order()?;
            let alpha = parse_alpha(&alpha, n)?;
            let (c, _) = certificate_for(&input)?.ok_or_else(|| Failure::Exit(2, json!({ "command": "hidden submatrix", "status": "unknown" })))?;
            match submatrix_certificate(&input.a, &c, &alpha) {
                Ok(sub) => Ok((
                    0,
                    json!({
                        "command": "hidden submatrix",
                        "alpha": alpha.to_one_based(),
                        "submatrix": matrix_json(&input.a.principal(&alpha)?),
                        "certificate": certificate_json(&sub),
                    }),
                )),
                Err(Error::Precondition(reason)) => {
                    Err(Failure::Exit(2, json!({ "command": "hidden submatrix", "status": "inapplicable", "reason": reason })))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn suite(id: &str, cfg: SuiteConfig, out: Option<&Path>) -> Outcome {
    let id: SuiteId = id
        .parse()
        .map_err(|_| Error::InvalidInput(format!("unknown suite '{id}'; registered: {}", SuiteId::registered())))?;
    let report = run_suite(id, &cfg)?;
    let text = report.to_json();
    if let Some(out) = out {
        std::fs::write(out, format!("{text}\n")).map_err(|e| Error::InvalidInput(format!("{}: {e}", out.display())))?;
    }
    let value: Value = serde_json::from_str(&text).expect("report is JSON");
    Ok((if report.passed() { 0 } else { 1 }, value))
}
