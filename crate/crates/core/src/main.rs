use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dporders::classify::catalog::catalog;
use dporders::classify::enumerate::DEFAULT_B_MAX;
use dporders::classify::json::{order_from_value, order_to_value, to_pretty};
use dporders::classify::report::{
    check_report, fixtures_markdown, fixtures_value, k_zero_markdown, k_zero_value, kzero_rows, mmp_markdown,
    mmp_value, records_markdown, records_value,
};
use dporders::classify::{
    e_max, enumerate_minimal_tadpo_ruled, enumerate_minimal_tdpo_p2, fixture_by_id, parse_point_spec,
    ClassificationRecord, RuledBase,
};
use dporders::positivity::run_mmp;
use dporders::{Error, Exec, OrderData};

#[derive(Parser)]
#[command(name = "dporders", version, about = "Classify terminal and canonical del Pezzo orders")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Run the data-parallel sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Base {
    P2,
    F0,
    F1,
    F2,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an order and report its predicates.
    Check {
        /// Order JSON (`-` for stdin).
        file: PathBuf,
        /// Require this clause tag among the matched clauses.
        #[arg(long)]
        expect: Vec<String>,
    },
    /// Blow up one or more points and emit the transformed order.
    Blowup {
        file: PathBuf,
        /// Point spec, e.g. `id=q,parent=p,on=D1` or `id=r,node=A+B,curve=L:1`.
        #[arg(long, required = true)]
        at: Vec<String>,
    },
    /// Contract K-negative exceptional curves down to a minimal model.
    Mmp { file: PathBuf },
    /// List the K-zero curves of an almost del Pezzo order.
    Kzero { file: PathBuf },
    /// Enumerate the minimal orders over a base.
    Enumerate {
        #[arg(long, value_enum)]
        base: Base,
        /// Largest ramification degree tried (default: DPORDERS_E_MAX or 12).
        #[arg(long)]
        e_max: Option<u32>,
        /// Largest fibre coefficient tried over ruled bases.
        #[arg(long, default_value_t = DEFAULT_B_MAX)]
        b_max: i64,
        /// Require this clause tag among the records.
        #[arg(long)]
        expect: Vec<String>,
    },
    /// The fixture catalog.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    /// Print fixtures as order JSON with their annotation block.
    Dump {
        ids: Vec<String>,
        /// Write every fixture to `<dir>/<id>.json`.
        #[arg(long, value_name = "DIR", conflicts_with = "ids")]
        all: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(Error),
    Mismatch(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

type Outcome = Result<String, (String, Failure)>;

fn read_value(path: &Path) -> Result<Value, Error> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    }
    serde_json::from_str(&s).map_err(|e| Error::Parse(format!("malformed JSON: {e}")))
}

fn read_order(path: &Path) -> Result<(OrderData, Value), Error> {
    let v = read_value(path)?;
    let o = order_from_value(&v)?;
    o.validate()?;
    Ok((o, v))
}

fn missing_tags(expect: &[String], got: &[String]) -> Vec<String> {
    expect.iter().filter(|t| !got.contains(t)).map(|t| format!("expected tag {t}, got {got:?}")).collect()
}

fn render(format: Format, v: impl FnOnce() -> Value, md: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => to_pretty(&v()),
        Format::Md => md(),
    }
}

fn fail(out: String, bad: Vec<String>) -> Outcome {
    if bad.is_empty() {
        Ok(out)
    } else {
        Err((out, Failure::Mismatch(bad)))
    }
}

fn enumerate(base: Base, e_max: u32, b_max: i64, exec: Exec) -> Result<(String, Vec<ClassificationRecord>), Error> {
    Ok(match base {
        Base::P2 => ("Minimal terminal del Pezzo orders over P2".into(), enumerate_minimal_tdpo_p2(e_max, exec)?),
        Base::F0 | Base::F1 | Base::F2 => {
            let rb = match base {
                Base::F0 => RuledBase::F0,
                Base::F1 => RuledBase::F1,
                _ => RuledBase::F2,
            };
            let title = format!("Minimal terminal almost del Pezzo orders over F{}", rb.n());
            (title, enumerate_minimal_tadpo_ruled(rb, e_max, b_max, exec)?)
        }
    })
}

fn run(cli: Cli) -> Outcome {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let fmt = cli.format;
    let invalid = |e: Error| (String::new(), Failure::Invalid(e));
    match cli.command {
        Command::Check { file, expect } => {
            let (o, raw) = read_order(&file).map_err(invalid)?;
            let r = check_report(&o, exec).map_err(invalid)?;
            let out = render(fmt, || r.to_value(), || r.to_markdown());
            let mut bad = raw.get("annotations").map(|a| r.annotation_mismatches(a)).unwrap_or_default();
            bad.extend(missing_tags(&expect, &r.tags()));
            fail(out, bad)
        }
        Command::Blowup { file, at } => {
            let (mut o, _) = read_order(&file).map_err(invalid)?;
            for s in &at {
                o = o.blowup_order(&parse_point_spec(s).map_err(invalid)?).map_err(invalid)?;
            }
            match fmt {
                Format::Json => Ok(to_pretty(&order_to_value(&o))),
                Format::Md => Ok(check_report(&o, exec).map_err(invalid)?.to_markdown()),
            }
        }
        Command::Mmp { file } => {
            let (o, _) = read_order(&file).map_err(invalid)?;
            let r = run_mmp(&o).map_err(invalid)?;
            Ok(render(fmt, || mmp_value(&r), || mmp_markdown(&r)))
        }
        Command::Kzero { file } => {
            let (o, _) = read_order(&file).map_err(invalid)?;
            let rows = kzero_rows(&o).map_err(invalid)?;
            Ok(render(fmt, || k_zero_value(&rows), || k_zero_markdown(&rows)))
        }
        Command::Enumerate { base, e_max: em, b_max, expect } => {
            let em = em.unwrap_or_else(e_max);
            if em < 2 {
                return Err(invalid(Error::Parse("--e-max must be at least 2".into())));
            }
            let (title, rs) = enumerate(base, em, b_max, exec).map_err(invalid)?;
            let out = render(fmt, || records_value(&rs), || records_markdown(&title, &rs));
            let tags: Vec<String> = rs.iter().map(ClassificationRecord::tag).collect();
            fail(out, missing_tags(&expect, &tags))
        }
        Command::Fixtures { action: FixtureAction::List } => Ok(render(fmt, fixtures_value, fixtures_markdown)),
        Command::Fixtures { action: FixtureAction::Dump { ids, all: Some(dir) } } => {
            debug_assert!(ids.is_empty());
            std::fs::create_dir_all(&dir).map_err(|e| invalid(Error::Parse(format!("{}: {e}", dir.display()))))?;
            let mut written = Vec::new();
            for f in catalog() {
                let path = dir.join(format!("{}.json", f.id));
                std::fs::write(&path, to_pretty(&f.to_value()))
                    .map_err(|e| invalid(Error::Parse(format!("{}: {e}", path.display()))))?;
                written.push(path.display().to_string());
            }
            Ok(render(fmt, || json!(written), || written.iter().map(|p| format!("- {p}\n")).collect()))
        }
        Command::Fixtures { action: FixtureAction::Dump { ids, all: None } } => {
            if ids.is_empty() {
                return Err(invalid(Error::Parse("fixtures dump: give fixture ids or --all <dir>".into())));
            }
            let fs = ids.iter().map(|id| fixture_by_id(id)).collect::<Result<Vec<_>, _>>().map_err(invalid)?;
            let v =
                if fs.len() == 1 { fs[0].to_value() } else { Value::Array(fs.iter().map(|f| f.to_value()).collect()) };
            Ok(to_pretty(&v))
        }
    }
}

fn report_error(kind: &str, message: &str, extra: Option<(&str, Value)>) {
    let mut v = json!({"kind": kind, "message": message});
    if let Some((k, x)) = extra {
        v[k] = x;
    }
    eprintln!("{}", serde_json::to_string(&v).expect("values are always serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error("usage", e.to_string().trim_end(), None);
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, Failure::Mismatch(bad))) => {
            print!("{out}");
            report_error("mismatch", &bad.join("; "), Some(("mismatches", json!(bad))));
            ExitCode::from(2)
        }
        Err((_, Failure::Invalid(e))) => {
            report_error(e.kind(), &e.to_string(), None);
            ExitCode::from(1)
        }
    }
}
