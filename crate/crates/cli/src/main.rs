mod report;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use heegaard::distance::{build_dcp_certificate, build_distance3_certificate, DerivedChoice};
use heegaard::registry::{builders, check_tools, verifiers};
use heegaard::splittings::{
    dehn_derive, derivation_clauses, emit_double_stab_certificate, emit_farey_stab_certificate,
    emit_single_stab_certificate, Family, SplittingSpec,
};
use heegaard::Error;
use serde_json::{json, Value};

use report::RunReport;

/// Genus-2 Heegaard splitting constructions, derivations and certificates.
///
/// Machine output is JSON on stdout; a human summary goes to stderr.
/// Exit status: 0 pass, 1 a check failed, 2 usage or schema error.
#[derive(Parser)]
#[command(name = "heegaard", version)]
struct Cli {
    /// Print the run report as JSON on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Where to write: the spec or certificate for `generate` and `certify`,
    /// a directory for `derive`, the report for `verify` and `check`.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family instance: `generate mxi --a0 0/1 --a1 1/0`.
    Generate {
        /// mh, mxi or hybrid.
        family: String,
        /// Family parameters as `--name value` pairs.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        params: Vec<String>,
    },
    /// Check the hypotheses of a Dehn derivation and write both derived specs.
    Derive { spec: PathBuf },
    /// Emit a certificate for a spec.
    Certify {
        spec: PathBuf,
        #[arg(long, value_enum)]
        kind: CertKind,
        /// Which identified curve is pushed into side A (distance certificates).
        #[arg(long, value_enum, default_value_t = Choice::First)]
        choice: Choice,
    },
    /// Check a certificate: distance, dcp or stab.
    Verify {
        cert: PathBuf,
        #[arg(long)]
        kind: String,
    },
    /// Run a word or slope tool: primitive, basis, farey-dist or classify.
    Check {
        tool: String,
        #[arg(allow_hyphen_values = true)]
        args: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CertKind {
    Distance,
    Dcp,
    /// Single stabilization for mh and hybrid, double for mxi.
    Stab,
    /// Single stabilization for mxi along a Farey arc.
    StabShort,
}

#[derive(Clone, Copy, ValueEnum)]
enum Choice {
    First,
    Second,
}

enum Fail {
    Usage(String),
    Semantic(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Malformed(_)
            | Error::Schema(_)
            | Error::Arity { .. }
            | Error::RankMismatch { .. }
            | Error::WrongFamily { .. }
            | Error::Unsupported(_) => Fail::Usage(e.to_string()),
            _ => Fail::Semantic(e.to_string()),
        }
    }
}

struct Run {
    report: RunReport,
    artifact: Option<String>,
    summary: Vec<String>,
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn key_values(params: &[String]) -> Result<BTreeMap<String, String>, Fail> {
    let mut out = BTreeMap::new();
    let mut it = params.iter();
    while let Some(k) = it.next() {
        let Some(k) = k.strip_prefix("--") else {
            return Err(Fail::Usage(format!("expected --name, got {k:?}")));
        };
        let (k, v) = match k.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| Fail::Usage(format!("--{k} needs a value")))?;
                (k.to_string(), v.clone())
            }
        };
        out.insert(k, v);
    }
    Ok(out)
}

fn generate(family: &str, params: &[String], report: &mut RunReport) -> Result<Run, Fail> {
    let mut values = key_values(params)?;
    let tag = values.remove("tag").unwrap_or_else(|| "default".into());
    let registry = builders();
    let builder = registry.get(family)?;
    report.input("family", family);
    report.input("tag", &tag);
    for (k, v) in &values {
        report.input(k, v);
    }
    let spec = builder.build(&values, &tag)?;
    let clauses = derivation_clauses(&spec)?;
    let ok = clauses.iter().all(|c| c.pass);
    report.check(
        "derive-preflight",
        ok,
        serde_json::to_value(&clauses).expect("clauses"),
    );
    Ok(Run {
        report: report.clone(),
        artifact: Some(spec.to_json()? + "\n"),
        summary: vec![format!("generated {family} spec {tag:?}")],
    })
}

fn derived_paths(input: &Path, dir: Option<&Path>) -> [PathBuf; 2] {
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "spec".into());
    let dir = dir
        .map(Path::to_path_buf)
        .or_else(|| input.parent().map(Path::to_path_buf))
        .unwrap_or_default();
    [1, 2].map(|i| dir.join(format!("{stem}.derived-{i}.json")))
}

fn derive(path: &Path, out: Option<&Path>, report: &mut RunReport) -> Result<Run, Fail> {
    report.input("spec", path.display().to_string());
    let spec = SplittingSpec::from_json(&read(path)?)?;
    let clauses = derivation_clauses(&spec)?;
    let mut summary = Vec::new();
    for c in &clauses {
        report.check(c.name.clone(), c.pass, json!(c.detail));
        summary.push(format!(
            "{} {}",
            if c.pass { "ok  " } else { "FAIL" },
            c.name
        ));
    }
    if report.passed() {
        let (d1, d2) = dehn_derive(&spec)?;
        let paths = derived_paths(path, out);
        for (p, d) in paths.iter().zip([&d1, &d2]) {
            write(p, &(d.to_json()? + "\n"))?;
            summary.push(format!("wrote {}", p.display()));
        }
        report.check(
            "derived",
            true,
            json!(paths
                .iter()
                .map(|p| p.display().to_string())
                .collect::<Vec<_>>()),
        );
    }
    Ok(Run {
        report: report.clone(),
        artifact: None,
        summary,
    })
}

fn certify(
    path: &Path,
    kind: CertKind,
    choice: Choice,
    report: &mut RunReport,
) -> Result<Run, Fail> {
    report.input("spec", path.display().to_string());
    let spec = SplittingSpec::from_json(&read(path)?)?;
    let choice = match choice {
        Choice::First => DerivedChoice::First,
        Choice::Second => DerivedChoice::Second,
    };
    let (name, text) = match kind {
        CertKind::Distance => (
            "distance",
            build_distance3_certificate(&spec, choice)?.to_json()?,
        ),
        CertKind::Dcp => ("dcp", build_dcp_certificate(&spec)?.to_json()?),
        CertKind::Stab if spec.family == Family::Mxi => {
            ("stab", emit_double_stab_certificate(&spec)?.to_json()?)
        }
        CertKind::Stab => ("stab", emit_single_stab_certificate(&spec)?.to_json()?),
        CertKind::StabShort => ("stab", emit_farey_stab_certificate(&spec)?.to_json()?),
    };
    report.input("kind", name);
    let outcome = verifiers().get(name)?.verify(&text)?;
    let summary = vec![outcome.summary.clone()];
    report.check(format!("{name}-self-check"), outcome.pass, outcome.details);
    Ok(Run {
        report: report.clone(),
        artifact: Some(text + "\n"),
        summary,
    })
}

fn verify(path: &Path, kind: &str, report: &mut RunReport) -> Result<Run, Fail> {
    report.input("certificate", path.display().to_string());
    report.input("kind", kind);
    let registry = verifiers();
    let verifier = registry.get(kind)?;
    let outcome = verifier.verify(&read(path)?)?;
    let summary = vec![outcome.summary.clone()];
    report.check(kind, outcome.pass, outcome.details);
    Ok(Run {
        report: report.clone(),
        artifact: None,
        summary,
    })
}

fn check(tool: &str, args: &[String], report: &mut RunReport) -> Result<Run, Fail> {
    report.input("tool", tool);
    report.input("args", args.join(" "));
    let registry = check_tools();
    let t = registry.get(tool)?;
    let (pass, summary, details) = match t.run(args) {
        Ok(o) => (o.pass, o.summary, o.details),
        Err(e) => match Fail::from(e.clone()) {
            Fail::Usage(m) => return Err(Fail::Usage(format!("{m}\nusage: check {}", t.usage()))),
            Fail::Semantic(m) => (false, m, json!({ "error": e.to_string() })),
        },
    };
    report.check(tool, pass, details);
    Ok(Run {
        report: report.clone(),
        artifact: None,
        summary: vec![summary],
    })
}

fn run(cli: &Cli, report: &mut RunReport) -> Result<Run, Fail> {
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Generate { family, params } => generate(family, params, report),
        Command::Derive { spec } => derive(spec, out, report),
        Command::Certify { spec, kind, choice } => certify(spec, *kind, *choice, report),
        Command::Verify { cert, kind } => verify(cert, kind, report),
        Command::Check { tool, args } => check(tool, args, report),
    }
}

fn emit(cli: &Cli, mut r: Run) -> Result<bool, Fail> {
    let has_artifact = r.artifact.is_some();
    let mut stdout = std::io::stdout().lock();
    let mut say = |text: &str| stdout.write_all(text.as_bytes()).expect("stdout");
    match (&r.artifact, &cli.output) {
        (Some(a), Some(p)) => write(p, a)?,
        (Some(a), None) if cli.json => {
            r.report.artifact = Some(serde_json::from_str::<Value>(a).expect("artifact is JSON"));
        }
        (Some(a), None) => say(a),
        (None, _) => {}
    }
    let report = pretty(&r.report);
    match (&cli.output, has_artifact) {
        (Some(p), false) if !matches!(cli.command, Command::Derive { .. }) => write(p, &report)?,
        _ if cli.json => say(&report),
        _ => {}
    }
    for line in &r.summary {
        eprintln!("{line}");
    }
    eprintln!("status: {}", r.report.status);
    Ok(r.report.passed())
}

/// Global flags written after trailing arguments land in them; move them back.
fn hoist_globals(cli: &mut Cli) {
    let params = match &mut cli.command {
        Command::Generate { params, .. } => params,
        Command::Check { args, .. } => args,
        _ => return,
    };
    let mut kept = Vec::new();
    let mut it = std::mem::take(params).into_iter();
    while let Some(p) = it.next() {
        match p.as_str() {
            "--json" => cli.json = true,
            "--output" | "-o" => cli.output = it.next().map(PathBuf::from),
            _ => match p.strip_prefix("--output=") {
                Some(v) => cli.output = Some(PathBuf::from(v)),
                None => kept.push(p),
            },
        }
    }
    *params = kept;
}

fn main() -> ExitCode {
    let mut cli = Cli::parse();
    hoist_globals(&mut cli);
    let mut report = RunReport::new(std::env::args().skip(1).collect());
    let outcome = run(&cli, &mut report).and_then(|r| emit(&cli, r));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail::Semantic(m)) => {
            eprintln!("error: {m}");
            if cli.json {
                report.check("run", false, json!({ "error": m }));
                println!("{}", pretty(&report).trim_end());
            }
            ExitCode::from(1)
        }
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
