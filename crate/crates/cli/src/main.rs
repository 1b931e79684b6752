//! Batch front end. Exit status: 0 pass, 1 mathematical failure (a witness
//! is printed), 2 unknown or resource limit, 3 input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use localgroup::assoc::{check_global_assoc, check_global_assoc_instance, search_non_associative, AssocReport, Certificate};
use localgroup::contractive::{
    check_pseudo_automorphism_finite, check_pseudo_automorphism_instance, finite_contractive_degeneracy, overall, Check,
    InstanceCheckConfig, Verdict,
};
use localgroup::globalize::{extend_morphism, globalize, Globalization, IotaVerdict, MorphismSpec};
use localgroup::group::FiniteGroup;
use localgroup::instances::{BallSet, EndoSpec, InstanceSpec};
use localgroup::local::{check_axioms, Elem, FiniteLocalGroup};
use localgroup::moves::{make_special, MoveTrace};
use localgroup::rewrite::{Limits, RewriteError, RewriteSystem};
use localgroup::structure::{shrink_neighborhood, structure_pipeline};
use localgroup::words::{eval_all, eval_some};

#[derive(Parser)]
#[command(name = "localgroup", about = "Checks and constructions for local groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Finite local group table (JSON).
    #[arg(long)]
    group: Option<PathBuf>,
    /// Instance description (JSON).
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Word as comma-separated labels.
    #[arg(long)]
    word: Option<String>,
    #[arg(long, default_value_t = 6)]
    max_len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Persisted rewriting system (JSON dump).
    #[arg(long)]
    rules: Option<PathBuf>,
    /// Write the main artifact here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check the local group axioms of a table.
    CheckAxioms(Common),
    /// Global associativity up to --max-len: exhaustive on tables, sampled on instances.
    Assoc {
        #[command(flatten)]
        common: Common,
        /// Sampled words for instances.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// All values of a word over its bracketings.
    Eval {
        #[command(flatten)]
        common: Common,
        /// Require every bracketing to be defined and print the single value.
        #[arg(long)]
        strong: bool,
    },
    /// Rewrite an admissible move trace into a special one.
    NormalizeTrace {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        trace: PathBuf,
    },
    /// Present and complete the globalization of a table.
    Globalize {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Normal form of a generator word (space- or comma-separated symbols).
    Nf {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Extend a morphism into a finite group to the globalization.
    Extend {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        limits: LimitArgs,
        /// Target group table (JSON, a local group with every product defined).
        #[arg(long)]
        target: PathBuf,
        /// Images of the carrier, in carrier order, as target labels.
        #[arg(long)]
        images: String,
    },
    /// Check a contractive pseudo-automorphism.
    ContractCheck {
        #[command(flatten)]
        common: Common,
        /// Map on an instance (JSON).
        #[arg(long)]
        map: Option<PathBuf>,
        /// Images of the carrier of a table, in carrier order.
        #[arg(long)]
        images: Option<String>,
        #[arg(long, default_value_t = 256)]
        budget: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Shrink a closed ball V to the invariant neighborhood U.
    Shrink {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: PathBuf,
        /// Ball V (JSON).
        #[arg(long)]
        ball: PathBuf,
    },
    /// Run the staged structure report on an instance.
    Pipeline {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: PathBuf,
    },
    /// Seeded search for a table with a two-valued word.
    SearchWitness {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        #[arg(long, default_value_t = 20000)]
        attempts: usize,
    },
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, default_value_t = Limits::default().max_rules)]
    max_rules: usize,
    #[arg(long, default_value_t = Limits::default().max_len)]
    max_rule_len: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits { max_rules: self.max_rules, max_len: self.max_rule_len }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass = 0,
    Fail = 1,
    Unknown = 2,
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Pass => Status::Pass,
            Verdict::Fail => Status::Fail,
            Verdict::Unknown => Status::Unknown,
        }
    }
}

/// Input problems (exit status 3) or a completion that stopped at a limit (2).
struct Failure {
    code: u8,
    msg: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: 3, msg: e.to_string() }
    }
}

fn input(msg: String) -> Failure {
    Failure { code: 3, msg }
}

fn globalize_error(e: localgroup::globalize::GlobalizeError) -> Failure {
    match e {
        localgroup::globalize::GlobalizeError::Rewrite(RewriteError::Limit { reason, .. }) => {
            Failure { code: 2, msg: format!("unknown: completion stopped at a resource limit ({reason})") }
        }
        other => other.into(),
    }
}

type Run = Result<Status, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn need<'a, T>(opt: &'a Option<T>, flag: &str) -> Result<&'a T, Failure> {
    opt.as_ref().ok_or_else(|| input(format!("--{flag} is required")))
}

fn load_group(c: &Common) -> Result<FiniteLocalGroup, Failure> {
    Ok(FiniteLocalGroup::from_json(&read(need(&c.group, "group")?)?)?)
}

fn load_instance(c: &Common) -> Result<InstanceSpec, Failure> {
    let spec = InstanceSpec::from_json(&read(need(&c.instance, "instance")?)?)?;
    spec.validate()?;
    Ok(spec)
}

fn emit(c: &Common, text: &str) -> Result<(), Failure> {
    match &c.out {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| input(format!("{}: {e}", path.display()))),
        None => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            Ok(())
        }
    }
}

fn label_list(g: &FiniteLocalGroup, w: &[Elem]) -> Value {
    Value::Array(w.iter().map(|&x| json!(g.label(x))).collect())
}

fn render_checks(c: &Common, checks: &[Check]) -> String {
    match c.format {
        Format::Json => serde_json::to_string_pretty(&json!({"verdict": overall(checks), "checks": checks})).unwrap(),
        Format::Text => {
            let mut lines: Vec<String> = checks.iter().map(|k| format!("{}: {} ({})", k.name, k.verdict, k.detail)).collect();
            lines.push(format!("verdict: {}", overall(checks)));
            lines.join("\n")
        }
    }
}

fn assoc_output<E>(report: &AssocReport<E>, witness: impl Fn(&[E], &E, &E) -> Value) -> Value {
    let (kind, words) = match report.certificate {
        Certificate::Exhaustive { words } => ("exhaustive", words),
        Certificate::Sampled { words } => ("sampled", words),
    };
    let mut out = json!({"max_len": report.max_len, "certificate": kind, "words": words, "verdict": if report.passed() { "pass" } else { "fail" }});
    if let Some(w) = &report.witness {
        out["witness"] = witness(&w.word, &w.values.0, &w.values.1);
    }
    out
}

fn open_globalization(c: &Common, limits: Limits) -> Result<(FiniteLocalGroup, Globalization), Failure> {
    let g = load_group(c)?;
    let glob = match &c.rules {
        Some(path) => Globalization::with_system(&g, RewriteSystem::from_json(&read(path)?)?)?,
        None => globalize(&g, limits).map_err(globalize_error)?,
    };
    Ok((g, glob))
}

fn run(cli: Cli) -> Run {
    match cli.command {
        Command::CheckAxioms(c) => {
            let g = load_group(&c)?;
            let report = check_axioms(&g);
            let lines: Vec<String> = report
                .violations
                .iter()
                .map(|v| format!("{:?} at {}", v.axiom, g.format_word(&v.witness)))
                .collect();
            emit(&c, &if lines.is_empty() { "pass".to_string() } else { lines.join("\n") })?;
            Ok(if report.passed() { Status::Pass } else { Status::Fail })
        }
        Command::Assoc { common: c, samples } => {
            let out = if c.instance.is_some() {
                let spec = load_instance(&c)?;
                let r = check_global_assoc_instance(&spec, c.max_len, c.seed, samples);
                (assoc_output(&r, |w, a, b| {
                    json!({"word": w.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "values": [a.to_string(), b.to_string()]})
                }), r.passed())
            } else {
                let g = load_group(&c)?;
                let r = check_global_assoc(&g, c.max_len);
                (assoc_output(&r, |w, a, b| {
                    json!({"word": label_list(&g, w), "values": [g.label(*a), g.label(*b)]})
                }), r.passed())
            };
            emit(&c, &serde_json::to_string_pretty(&out.0)?)?;
            Ok(if out.1 { Status::Pass } else { Status::Fail })
        }
        Command::Eval { common: c, strong } => {
            let text = need(&c.word, "word")?.clone();
            if c.instance.is_some() {
                let spec = load_instance(&c)?;
                let w = spec.parse_word(&text)?;
                let view = spec.as_local_group_view();
                if strong {
                    return strong_result(&c, eval_all(&view, &w).map(|v| v.to_string()));
                }
                let values: Vec<String> = eval_some(&view, &w).iter().map(|v| v.to_string()).collect();
                emit(&c, &format!("{{{}}}", values.join(",")))?;
            } else {
                let g = load_group(&c)?;
                let w = g.parse_word(&text)?;
                if strong {
                    return strong_result(&c, eval_all(&g, &w).map(|v| g.label(v).to_string()));
                }
                emit(&c, &g.format_set(&eval_some(&g, &w)))?;
            }
            Ok(Status::Pass)
        }
        Command::NormalizeTrace { common: c, trace } => {
            let g = load_group(&c)?;
            let value: Value = serde_json::from_str(&read(&trace)?)?;
            let t = MoveTrace::from_json(&g, &value).map_err(input)?;
            let (s, steps) = make_special(&g, &t)?;
            let out = json!({"steps": steps, "special": s.is_special(), "trace": s.to_json(&g)});
            emit(&c, &serde_json::to_string_pretty(&out)?)?;
            Ok(Status::Pass)
        }
        Command::Globalize { common: c, limits } => (|| {
            let g = load_group(&c)?;
            let glob = globalize(&g, limits.limits()).map_err(globalize_error)?;
            emit(&c, &glob.system.to_json())?;
            let verdict = glob.verify_iota(&g)?;
            eprintln!("{} symbols, {} rules, iota: {verdict:?}", glob.presentation.symbols.len(), glob.system.rules().len());
            Ok(if verdict == IotaVerdict::Pass { Status::Pass } else { Status::Fail })
        })(),
        Command::Nf { common: c, limits } => (|| {
            let text = c.word.clone().unwrap_or_default();
            let system = match (&c.rules, &c.group) {
                (Some(path), None) => RewriteSystem::from_json(&read(path)?)?,
                _ => open_globalization(&c, limits.limits())?.1.system,
            };
            let w = system.parse_word(&text)?;
            let (nf, status) = match system.normal_form(&w) {
                Ok(nf) => (nf, Status::Pass),
                Err(_) => {
                    eprintln!("unknown: the system has no confluence certificate; printing a reduced word");
                    (system.reduce(&w), Status::Unknown)
                }
            };
            emit(&c, &if nf.is_empty() { "ε".to_string() } else { system.format_word(&nf) })?;
            Ok(status)
        })(),
        Command::Extend { common: c, limits, target, images } => (|| {
            let (g, glob) = open_globalization(&c, limits.limits())?;
            let t_local = FiniteLocalGroup::from_json(&read(&target)?)?;
            let t = FiniteGroup::try_from_local(&t_local)?;
            let imgs = t_local.parse_word(&images)?;
            let ext = match extend_morphism(&g, &glob, MorphismSpec { target: t, images: imgs }) {
                Ok(ext) => ext,
                Err(e) => {
                    emit(&c, &format!("fail: {e}"))?;
                    return Ok(Status::Fail);
                }
            };
            let mut out = json!({
                "symbols": glob.presentation.symbols.iter().enumerate()
                    .map(|(s, name)| (name.clone(), json!(t_local.label(ext.eval(&[s])).to_string())))
                    .collect::<serde_json::Map<_, _>>(),
            });
            if let Some(text) = &c.word {
                let w = glob.system.parse_word(text)?;
                out["word"] = json!(text);
                out["value"] = json!(t_local.label(ext.eval(&w)).to_string());
                out["normal_form"] = json!(glob.system.format_word(&glob.nf(&w)?));
            }
            emit(&c, &serde_json::to_string_pretty(&out)?)?;
            Ok(Status::Pass)
        })(),
        Command::ContractCheck { common: c, map, images, budget, samples } => {
            if c.instance.is_some() {
                let spec = load_instance(&c)?;
                let endo = EndoSpec::from_json(&read(need(&map, "map")?)?)?;
                let cfg = InstanceCheckConfig { samples, seed: c.seed, budget, ..Default::default() };
                let checks = check_pseudo_automorphism_instance(&spec, &endo, &cfg)?;
                emit(&c, &render_checks(&c, &checks))?;
                Ok(overall(&checks).into())
            } else {
                let g = load_group(&c)?;
                let imgs = g.parse_word(need(&images, "images")?)?;
                let checks = check_pseudo_automorphism_finite(&g, &imgs, &g.carrier(), budget);
                emit(&c, &render_checks(&c, &checks))?;
                eprintln!("degeneracy: {:?}", finite_contractive_degeneracy(&g, &imgs));
                Ok(overall(&checks).into())
            }
        }
        Command::Shrink { common: c, map, ball } => {
            let spec = load_instance(&c)?;
            let endo = EndoSpec::from_json(&read(&map)?)?;
            let v = BallSet::from_json(&read(&ball)?)?;
            let rep = shrink_neighborhood(&spec, &endo, &v)?;
            let text = match c.format {
                Format::Json => serde_json::to_string_pretty(&rep)?,
                Format::Text => {
                    let mut lines: Vec<String> =
                        rep.levels.iter().map(|lv| format!("V_{} = {}", lv.l, lv.description)).collect();
                    lines.push(format!("U = {}", spec.describe_ball(&rep.u)));
                    lines.push(render_checks(&c, &[rep.properties.clone(), rep.conclusions.clone()].concat()));
                    lines.join("\n")
                }
            };
            emit(&c, &text)?;
            Ok(rep.verdict().into())
        }
        Command::Pipeline { common: c, map } => {
            let spec = load_instance(&c)?;
            let endo = EndoSpec::from_json(&read(&map)?)?;
            let rep = structure_pipeline(&spec, &endo, c.seed)?;
            emit(&c, &match c.format {
                Format::Json => rep.to_json(),
                Format::Text => rep.to_text().trim_end().to_string(),
            })?;
            Ok(rep.verdict().into())
        }
        Command::SearchWitness { common: c, max_size, attempts } => {
            match search_non_associative(max_size, c.max_len, c.seed, attempts) {
                Some((g, w)) => {
                    let out = json!({
                        "group": serde_json::from_str::<Value>(&g.to_json())?,
                        "word": label_list(&g, &w.word),
                        "values": [g.label(w.values.0), g.label(w.values.1)],
                    });
                    emit(&c, &serde_json::to_string_pretty(&out)?)?;
                    Ok(Status::Pass)
                }
                None => {
                    eprintln!("unknown: no witness within {attempts} attempts");
                    Ok(Status::Unknown)
                }
            }
        }
    }
}

fn strong_result(c: &Common, value: Option<String>) -> Run {
    match value {
        Some(v) => {
            emit(c, &v)?;
            Ok(Status::Pass)
        }
        None => {
            emit(c, "undefined")?;
            Ok(Status::Fail)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(Failure { code, msg }) => {
            if code == 3 {
                eprintln!("error: {msg}");
            } else {
                eprintln!("{msg}");
            }
            ExitCode::from(code)
        }
    }
}
