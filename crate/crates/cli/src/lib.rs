//! Command-line front end: reads scenario files, runs the verification
//! pipelines and prints deterministic text or JSON reports.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails,
//! 2 on input errors.

pub mod report;
pub mod scenario_file;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use cyclift::algebra::{
    local_ideal_member, parse_polynomial, IdealBasis, LocalFraction, Polynomial, PrimePoint, Variables,
};
use cyclift::cycles::{
    build_c, is_milnor_cycle, lift_mu_y, milnor_witness, mu_z, verify, CycleElement, Obstruction, Scenario,
    Verification,
};

pub use report::{CheckRecord, Report, Verdict};
pub use scenario_file::{parse_scenario, parse_scenario_text, ScenarioEcho, ScenarioError};

#[derive(Debug, Parser)]
#[command(name = "cyclift", version, about = "Verify deformations of algebraic cycles through Koszul complexes")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a scenario and run the matching lifting pipeline.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        file: Option<PathBuf>,
        /// Verify every `.scn` file in a directory.
        #[arg(long, value_name = "DIR")]
        all: Option<PathBuf>,
    },
    /// Decide whether a named element is a Milnor cycle.
    CheckCycle {
        file: PathBuf,
        #[arg(long, value_enum)]
        class: ClassName,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
    },
    /// Print the boundary classes of a named element.
    Boundary {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "muY")]
        class: ClassName,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        order: u64,
    },
    /// Run the successive-lifting checks up to a given order.
    Lift {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        to: u64,
    },
    /// Ideal membership of a polynomial.
    Member {
        poly: String,
        /// Comma-separated generators.
        #[arg(long)]
        ideal: String,
        /// Variable names, most significant first; inferred when omitted.
        #[arg(long)]
        vars: Option<String>,
        /// Test membership in the localization at the origin.
        #[arg(long)]
        local: bool,
    },
    /// Reduced grevlex Gröbner basis of an ideal.
    Groebner {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        vars: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassName {
    #[value(name = "muY")]
    MuY,
    #[value(name = "muZ")]
    MuZ,
    #[value(name = "C")]
    C,
    #[value(name = "C-minus-muZ")]
    CMinusMuZ,
}

impl ClassName {
    fn label(self, order: usize) -> String {
        match self {
            ClassName::MuY => format!("mu_Y lifted to order {order}"),
            ClassName::MuZ => "mu_Z(Z)".into(),
            ClassName::C => format!("[C_{order}]"),
            ClassName::CMinusMuZ => format!("[C_{order}] - mu_Z(Z)"),
        }
    }
}

/// What a command wrote and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input_error(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Run one command; `args` excludes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("cyclift")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let reports = match dispatch(cli.command) {
        Ok(r) => r,
        Err(message) => return Outcome::input_error(message),
    };
    let code = reports.iter().map(|r| r.overall.exit_code()).max().unwrap_or(0);
    let stdout = if cli.json {
        let json = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        };
        json.expect("reports serialize") + "\n"
    } else {
        reports.iter().map(Report::text).collect::<Vec<_>>().join("\n")
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn dispatch(command: Command) -> Result<Vec<Report>, String> {
    match command {
        Command::Verify { file: Some(file), .. } => {
            let s = load(&file)?;
            Ok(vec![verify_report("verify", &file, &s)?])
        }
        Command::Verify { all: Some(dir), .. } => verify_all(&dir),
        Command::Verify { .. } => unreachable!("clap requires a file or --all"),
        Command::CheckCycle { file, class, order } => {
            let s = load(&file)?;
            check_cycle(&file, &s, class, order as usize).map(|r| vec![r])
        }
        Command::Boundary { file, class, order } => {
            let s = load(&file)?;
            boundary_report(&file, &s, class, order as usize).map(|r| vec![r])
        }
        Command::Lift { file, to } => {
            let s = load(&file)?;
            let lifted = s.with_order(to as usize).map_err(|e| e.to_string())?;
            Ok(vec![verify_report("lift", &file, &lifted)?])
        }
        Command::Member {
            poly,
            ideal,
            vars,
            local,
        } => member(&poly, &ideal, vars.as_deref(), local).map(|r| vec![r]),
        Command::Groebner { ideal, vars } => groebner(&ideal, vars.as_deref()).map(|r| vec![r]),
    }
}

fn load(path: &Path) -> Result<Scenario, String> {
    parse_scenario(path).map_err(|e| match e {
        ScenarioError::Io { .. } => e.to_string(),
        _ => format!("{}: {e}", path.display()),
    })
}

fn scenario_report(command: &str, path: &Path, s: &Scenario) -> Report {
    let mut r = Report::new(command);
    r.source = Some(path.display().to_string());
    r.scenario = Some(ScenarioEcho::of(s));
    r
}

fn verify_report(command: &str, path: &Path, s: &Scenario) -> Result<Report, String> {
    let Verification {
        branch,
        checks,
        obstruction,
    } = verify(s).map_err(|e| e.to_string())?;
    let mut r = scenario_report(command, path, s);
    r.branch = Some(branch.to_string());
    match &branch {
        Obstruction::Unobstructed => {}
        Obstruction::Obstructed { decomposition } => {
            let parts: Vec<String> = decomposition.iter().map(ToString::to_string).collect();
            r.details.push(format!("b = f_(p+1) + Σ a_i f_i with a = ({})", parts.join(", ")));
        }
        Obstruction::Unsupported { reason } => r.details.push(format!("unsupported: {reason}")),
    }
    if let Some(lines) = obstruction {
        r.details.push("obstruction: boundary of mu_Y(Y^1)".into());
        r.details.extend(lines.into_iter().map(|l| format!("  {l}")));
    }
    r.checks = checks
        .into_iter()
        .map(|c| CheckRecord {
            name: c.name,
            verdict: Verdict::of(c.passed),
            witness: c.witness,
        })
        .collect();
    let supported = !matches!(branch, Obstruction::Unsupported { .. });
    let mut r = r.conclude();
    if !supported {
        r.overall = Verdict::Fail;
    }
    Ok(r)
}

fn verify_all(dir: &Path) -> Result<Vec<Report>, String> {
    let entries = std::fs::read_dir(dir).map_err(|e| format!("cannot read {}: {e}", dir.display()))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "scn"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(format!("no .scn files in {}", dir.display()));
    }
    let reports = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|f| {
                scope.spawn(move || {
                    let outcome = load(f).and_then(|s| verify_report("verify", f, &s));
                    outcome.unwrap_or_else(|message| {
                        let mut r = Report::new("verify");
                        r.source = Some(f.display().to_string());
                        r.details.push(message);
                        r.overall = Verdict::Error;
                        r
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    Ok(reports)
}

/// `T^j` with corrections `h_i = a_i` for `i ≥ 2`, as in the lifting suite.
fn lifted_mu_y(s: &Scenario, order: usize) -> cyclift::Result<CycleElement> {
    let higher: Vec<LocalFraction> = (2..=order)
        .map(|i| {
            let h = s.a().get(i - 1).cloned().unwrap_or_else(|| Polynomial::zero(s.vars()));
            LocalFraction::from_polynomial(h, s.q1().clone())
        })
        .collect();
    lift_mu_y(s, &higher)
}

fn element(s: &Scenario, class: ClassName, order: usize) -> Result<CycleElement, String> {
    let z = || CycleElement::new(mu_z(s).terms().to_vec(), order);
    let e = match class {
        ClassName::MuY => lifted_mu_y(s, order),
        ClassName::MuZ => z(),
        ClassName::C => build_c(s, order),
        ClassName::CMinusMuZ => build_c(s, order).and_then(|c| z().and_then(|z| c.sub(&z))),
    };
    e.map_err(|e| e.to_string())
}

fn check_cycle(path: &Path, s: &Scenario, class: ClassName, order: usize) -> Result<Report, String> {
    let e = element(s, class, order)?;
    let v = is_milnor_cycle(&e, s).map_err(|e| e.to_string())?;
    let mut r = scenario_report("check-cycle", path, s);
    r.result = Some(if v.is_cycle { "cycle" } else { "not-a-cycle" }.into());
    let mut witness = vec![format!("element: {e}")];
    witness.extend(milnor_witness(&v));
    r.checks.push(CheckRecord {
        name: format!("{} is a Milnor cycle", class.label(order)),
        verdict: Verdict::of(v.is_cycle),
        witness,
    });
    Ok(r.conclude())
}

fn boundary_report(path: &Path, s: &Scenario, class: ClassName, order: usize) -> Result<Report, String> {
    let e = element(s, class, order)?;
    let v = is_milnor_cycle(&e, s).map_err(|e| e.to_string())?;
    let mut r = scenario_report("boundary", path, s);
    r.result = Some(if v.is_cycle { "trivial" } else { "nontrivial" }.into());
    r.details.push(format!("element: {e}"));
    r.details.extend(milnor_witness(&v));
    Ok(r)
}

fn infer_vars(texts: &[&str]) -> Variables {
    let mut names: Vec<String> = Vec::new();
    for t in texts {
        let mut current = String::new();
        for c in t.chars().chain([' ']) {
            if c.is_ascii_alphanumeric() || c == '_' {
                current.push(c);
            } else {
                if current.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
                    names.push(current.clone());
                }
                current.clear();
            }
        }
    }
    names.sort();
    names.dedup();
    if names.is_empty() {
        names.push("x".into());
    }
    Variables::new(names)
}

fn kernel_input(polys: &[&str], ideal: &str, vars: Option<&str>) -> Result<(Variables, Vec<Polynomial>, IdealBasis), String> {
    let generators: Vec<&str> = ideal.split(',').map(str::trim).filter(|g| !g.is_empty()).collect();
    let vars = match vars {
        Some(v) => scenario_file::parse_vars(v)?,
        None => infer_vars(&[polys, generators.as_slice()].concat()),
    };
    let parse = |t: &str| parse_polynomial(t, &vars).map_err(|e| format!("`{t}`: {e}"));
    let polys = polys.iter().map(|t| parse(t)).collect::<Result<Vec<_>, _>>()?;
    let gens = generators.iter().map(|t| parse(t)).collect::<Result<Vec<_>, _>>()?;
    let ideal = IdealBasis::new(&vars, gens);
    Ok((vars, polys, ideal))
}

fn fmt_basis(ideal: &IdealBasis) -> String {
    let parts: Vec<String> = ideal.reduced_basis().iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn member(poly: &str, ideal: &str, vars: Option<&str>, local: bool) -> Result<Report, String> {
    let (vars, polys, ideal) = kernel_input(&[poly], ideal, vars)?;
    let u = &polys[0];
    let mut r = Report::new("member");
    r.details.push(format!("vars: {}", vars.names().join(" ")));
    r.details.push(format!("reduced basis: {}", fmt_basis(&ideal)));
    let remainder = ideal.normal_form(u);
    r.details.push(format!("normal form: {remainder}"));
    let answer = if local {
        let origin = PrimePoint::origin(&vars);
        let answer = local_ideal_member(&LocalFraction::from_polynomial(u.clone(), origin.clone()), &ideal, &origin)
            .map_err(|e| e.to_string())?;
        if !remainder.is_zero() {
            let quotient = ideal.quotient(u);
            let unit = quotient.iter().find(|g| origin.is_unit(g));
            r.details.push(match unit {
                Some(s) => format!("({s}) * ({u}) lies in the ideal and {s} is a unit at the origin"),
                None => "no element of the ideal quotient is a unit at the origin".into(),
            });
        }
        answer
    } else {
        remainder.is_zero()
    };
    r.result = Some(answer.to_string());
    Ok(r)
}

fn groebner(ideal: &str, vars: Option<&str>) -> Result<Report, String> {
    let (vars, _, ideal) = kernel_input(&[], ideal, vars)?;
    let mut r = Report::new("groebner");
    r.details.push(format!("vars: {}", vars.names().join(" ")));
    r.details.push(format!("input: {}", {
        let parts: Vec<String> = ideal.generators().iter().map(ToString::to_string).collect();
        format!("[{}]", parts.join(", "))
    }));
    r.result = Some(fmt_basis(&ideal));
    if ideal.reduced_basis().iter().any(|g| g.is_constant() && !g.is_zero()) {
        r.details.push("the ideal is the whole ring".into());
    }
    Ok(r)
}
