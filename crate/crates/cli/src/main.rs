use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symrec::jobspec::{CommandArgs, JobSpec};
use symrec::{parse_jobspec, run, Failure, Settings};
use symrec_core::field::{make_field, parse_field};

/// Simple modules, projective covers and reciprocity checks for
/// finite-dimensional algebras over finite fields.
#[derive(Parser)]
#[command(name = "symrec", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Simple modules of an algebra with their dimensions.
    Simples(Target),
    /// Projective indecomposable modules.
    Pims(Target),
    /// Cartan matrix `[P(S_i) : S_j]`.
    Cartan(Target),
    /// Search for a symmetrizing form.
    SymmetricForm(Target),
    /// Check the reciprocity identity for a bimodule.
    Reciprocity(Target),
    /// The group case: kG as a (kG, kH)-bimodule.
    Robinson(Target),
    /// The four intermediate identities for each pair of simples.
    ProofChain(Target),
    /// Run the command stored in a job file.
    Run {
        job: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Default)]
struct Target {
    /// Job file holding the objects referred to by label.
    #[arg(long)]
    job: Option<PathBuf>,
    /// Algebra label, or a job file defining it.
    #[arg(long)]
    algebra: Option<String>,
    /// Group label, or a job file defining it.
    #[arg(long)]
    group: Option<String>,
    /// Subgroup label (robinson).
    #[arg(long)]
    subgroup: Option<String>,
    /// Bimodule label, or a job file defining it.
    #[arg(long)]
    bimodule: Option<String>,
    /// Index of a simple A-module (proof-chain).
    #[arg(long)]
    s: Option<usize>,
    /// Index of a simple B-module (proof-chain).
    #[arg(long)]
    t: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Default)]
struct Common {
    /// Field such as `GF(3)`, `GF(2^2)` or `GF(2^2; 1,1,1)`.
    #[arg(long, conflicts_with_all = ["p", "e"])]
    field: Option<String>,
    /// Characteristic of the field, shorthand for --field GF(p^e).
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree used with --p.
    #[arg(long, requires = "p")]
    e: Option<u32>,
    /// Seed for the randomized algorithms.
    #[arg(long)]
    seed: Option<u64>,
    /// Largest group order to enumerate.
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Also write the JSON report to this path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

fn load_job(path: &Path) -> Result<JobSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_jobspec(&text).map_err(|e| {
        let lines: Vec<String> = e.diagnostics.iter().map(|d| format!("{}: {d}", path.display())).collect();
        Failure::Input(lines.join("\n"))
    })
}

fn looks_like_file(v: &str) -> bool {
    v.ends_with(".json") || Path::new(v).is_file()
}

/// A label for an object of one kind in a job named by `path`: the one
/// matching the file stem, else the only one.
fn pick_label<'a>(path: &Path, kind: &str, labels: impl Iterator<Item = &'a String>) -> Result<String, Failure> {
    let labels: Vec<&String> = labels.collect();
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    if let Some(l) = labels.iter().find(|l| l.as_str() == stem) {
        return Ok((*l).clone());
    }
    match labels.as_slice() {
        [one] => Ok((*one).clone()),
        [] => Err(Failure::Input(format!("{} defines no {kind}", path.display()))),
        many => Err(Failure::Input(format!(
            "{} defines several {kind}s ({}); pass --job {} --{kind} LABEL",
            path.display(),
            many.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", "),
            path.display()
        ))),
    }
}

fn execute(cli: Cli) -> Result<i32, Failure> {
    let (name, mut target) = match cli.command {
        Cmd::Simples(t) => ("simples", t),
        Cmd::Pims(t) => ("pims", t),
        Cmd::Cartan(t) => ("cartan", t),
        Cmd::SymmetricForm(t) => ("symmetric-form", t),
        Cmd::Reciprocity(t) => ("reciprocity", t),
        Cmd::Robinson(t) => ("robinson", t),
        Cmd::ProofChain(t) => ("proof-chain", t),
        Cmd::Run { job, common } => ("", Target { job: Some(job), common, ..Target::default() }),
    };

    let job = match &target.job {
        Some(path) => load_job(path)?,
        None => {
            let files: Vec<(&str, String)> = [("algebra", &target.algebra), ("group", &target.group), ("bimodule", &target.bimodule)]
                .into_iter()
                .filter_map(|(k, v)| v.as_ref().filter(|v| looks_like_file(v)).map(|v| (k, v.clone())))
                .collect();
            let Some((_, file)) = files.first().cloned() else {
                return Err(Failure::Input(format!("`{name}` needs a job file: pass --job FILE or a file to --algebra/--group/--bimodule")));
            };
            if let Some((other, f)) = files.iter().find(|(_, f)| *f != file) {
                return Err(Failure::Input(format!("--{other} {f}: only one job file per invocation")));
            }
            let path = PathBuf::from(&file);
            let job = load_job(&path)?;
            for (k, _) in &files {
                let label = match *k {
                    "algebra" => pick_label(&path, k, job.algebras.keys())?,
                    "group" => pick_label(&path, k, job.groups.keys())?,
                    _ => pick_label(&path, k, job.bimodules.keys())?,
                };
                match *k {
                    "algebra" => target.algebra = Some(label),
                    "group" => target.group = Some(label),
                    _ => target.bimodule = Some(label),
                }
            }
            job
        }
    };

    let name = if name.is_empty() {
        job.command.as_ref().map(|c| c.name.clone()).ok_or_else(|| Failure::Input("the job file has no `command`".into()))?
    } else {
        name.to_string()
    };
    let base = job.command.as_ref().filter(|c| c.name == name).map(|c| c.args.clone()).unwrap_or_default();
    let args = CommandArgs {
        algebra: target.algebra.or(base.algebra),
        group: target.group.or(base.group),
        subgroup: target.subgroup.or(base.subgroup),
        bimodule: target.bimodule.or(base.bimodule),
        s: target.s.or(base.s),
        t: target.t.or(base.t),
    };

    let common = target.common;
    let field_input = |e: symrec_core::Error| Failure::Input(format!("field: {e}"));
    let field = match (&common.field, common.p) {
        (Some(f), _) => Some(parse_field(f).map_err(field_input)?),
        (None, Some(p)) => Some(make_field(p, common.e.unwrap_or(1), None).map_err(field_input)?),
        (None, None) => job.field.as_deref().map(parse_field).transpose().map_err(field_input)?,
    };
    let settings = Settings::new(field, common.seed.or(job.seed), common.cap.or(job.cap));
    let format = match (common.format, job.format.as_deref()) {
        (Some(f), _) => f,
        (None, Some("json")) => Format::Json,
        _ => Format::Table,
    };
    let out = common.out.or_else(|| job.out.as_ref().map(PathBuf::from));

    let output = run(&job, &name, &args, &settings)?;
    if let Some(path) = out {
        std::fs::write(&path, &output.json).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    match format {
        Format::Json => print!("{}", output.json),
        Format::Table => print!("{}", output.table),
    }
    Ok(output.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
