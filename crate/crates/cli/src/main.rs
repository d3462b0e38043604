use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stab_core::bounds::{verify_bound, BoundError, CaseInput};
use stab_core::classify::{all_fillings, enumerate_diamond, in_diamond, is_finite_dimensional, primitive_ideal_labels, BulletChoice, Phi, Verdict};
use stab_core::group::orbit;
use stab_core::json::*;
use stab_core::suites::{run_suite, SuiteConfig, SUITES};
use stab_core::table::skew_diagnostics;
use stab_core::{Diagram, Generators, LieType, Pyramid, RowClass, STable};

/// Exit statuses shared by every command.
mod exit {
    pub const OK: u8 = 0;
    pub const NEGATIVE: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const SUITE: u8 = 3;
    pub const UNDECIDED: u8 = 4;
}

#[derive(Parser)]
#[command(name = "stab", version, about = "s-table highest weight labels: membership, orbits, catalogs and property suites")]
struct Cli {
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized suites; every other command is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeArg {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "D", alias = "d")]
    D,
}

impl From<TypeArg> for LieType {
    fn from(t: TypeArg) -> LieType {
        match t {
            TypeArg::C => LieType::C,
            TypeArg::D => LieType::D,
        }
    }
}

fn parse_phi(s: &str) -> Result<Phi, String> {
    match s {
        "+" | "plus" => Ok(Phi::Plus),
        "-" | "minus" => Ok(Phi::Minus),
        other => Err(format!("phi must be + or -, got {other:?}")),
    }
}

/// `--n`: a sample count, or `exhaustive` (`None`) for the default size.
#[derive(Clone, Copy, Debug)]
struct Samples(Option<usize>);

fn parse_samples(s: &str) -> Result<Samples, String> {
    if s == "exhaustive" {
        return Ok(Samples(None));
    }
    s.parse::<usize>().map(|n| Samples(Some(n))).map_err(|_| format!("--n takes a count or \"exhaustive\", got {s:?}"))
}

#[derive(Subcommand)]
enum Command {
    /// Check skew symmetry, shape, and optionally membership of a table.
    Validate {
        /// Table JSON (`-` for stdin).
        table: PathBuf,
        #[arg(long)]
        pyramid: Option<PathBuf>,
        /// Also test membership for this sign.
        #[arg(long, value_parser = parse_phi, allow_hyphen_values = true)]
        phi: Option<Phi>,
    },
    /// Decide finite dimensionality of the module labelled by a table.
    Decide {
        table: PathBuf,
        #[arg(long = "type", value_enum)]
        ty: TypeArg,
    },
    /// List the row classes over a pyramid passing the membership test.
    Enumerate {
        pyramid: PathBuf,
        #[arg(long)]
        alphabet: PathBuf,
        #[arg(long, value_parser = parse_phi, allow_hyphen_values = true, default_value = "+")]
        phi: Phi,
    },
    /// Closure of a table under the component group generators.
    Orbit {
        table: PathBuf,
        #[arg(long = "type", value_enum)]
        ty: TypeArg,
    },
    /// Catalog of primitive ideal labels over a pyramid.
    Primids {
        pyramid: PathBuf,
        #[arg(long = "type", value_enum)]
        ty: TypeArg,
        #[arg(long)]
        alphabet: PathBuf,
        /// JSON object mapping generic labels to the sign counted as positive.
        #[arg(long)]
        choice: Option<PathBuf>,
    },
    /// Run a property suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Sample count, or `exhaustive` for the default size.
        #[arg(long = "n", value_parser = parse_samples, default_value = "exhaustive")]
        samples: Samples,
    },
    /// Check the RS shape bounds on one instance `{"p": [...], "rows": [...]}`.
    Bound { instance: PathBuf },
}

struct Output {
    value: Value,
    code: u8,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_class(path: &Path) -> Result<RowClass> {
    Ok(table_from_json(&read_json(path)?)?.row_class())
}

fn read_pyramid(path: &Path) -> Result<Pyramid> {
    Ok(pyramid_from_json(&read_json(path)?)?)
}

fn validate(table: &Path, pyramid: Option<&Path>, phi: Option<Phi>) -> Result<Output> {
    let rows = rows_from_json(&read_json(table)?)?;
    let mut problems = Vec::new();
    if rows.is_empty() || rows.len() % 2 != 0 {
        problems.push(json!({ "message": format!("an s-table needs a positive even number of rows, got {}", rows.len()) }));
    }
    let skew: Vec<Value> = skew_diagnostics(&rows).iter().map(skew_to_json).collect();
    let mut out = json!({ "rows": rows.len(), "skew": skew });
    if problems.is_empty() && skew.is_empty() {
        let t = STable::new(rows)?;
        if let Some(p) = pyramid {
            if let Err(e) = t.check_shape(&read_pyramid(p)?) {
                problems.push(json!({ "message": e.to_string() }));
            }
        }
        if let Some(phi) = phi {
            out["membership"] = report_to_json(&in_diamond(&t, phi));
        }
    }
    let accepted = out.get("membership").is_none_or(|m| m["accepted"] == json!(true));
    let valid = problems.is_empty() && out["skew"].as_array().is_some_and(Vec::is_empty);
    out["problems"] = Value::Array(problems);
    out["valid"] = json!(valid);
    Ok(Output { code: if valid && accepted { exit::OK } else { exit::NEGATIVE }, value: out })
}

fn decide(table: &Path, ty: LieType) -> Result<Output> {
    let d = is_finite_dimensional(&read_class(table)?, ty)?;
    let code = match d.verdict {
        Verdict::FiniteDimensional => exit::OK,
        Verdict::NotFiniteDimensional => exit::NEGATIVE,
        Verdict::Undecided => exit::UNDECIDED,
    };
    Ok(Output { value: decision_to_json(&d), code })
}

fn enumerate(pyramid: &Path, alphabet: &Path, phi: Phi) -> Result<Output> {
    let p = read_pyramid(pyramid)?;
    let alpha = alphabet_from_json(&read_json(alphabet)?)?;
    let candidates = all_fillings(&p, &alpha).len();
    let classes = enumerate_diamond(&p, &alpha, phi);
    let value = json!({
        "candidates": candidates,
        "pyramid": pyramid_to_json(&p),
        "phi": phi.to_string(),
        "alphabet": alphabet_to_json(&alpha),
        "count": classes.len(),
        "classes": classes.iter().map(class_to_json).collect::<Vec<_>>(),
    });
    Ok(Output { value, code: exit::OK })
}

fn orbit_cmd(table: &Path, ty: LieType) -> Result<Output> {
    let a = read_class(table)?;
    let p = Pyramid::from_rows(&a.table().top_rows().iter().map(Vec::len).collect::<Vec<_>>()).context("the table is not over a pyramid")?;
    let o = orbit(&a, &Generators::new(&p, ty));
    let mut value = orbit_to_json(&o);
    value["type"] = json!(ty.to_string());
    value["complete"] = json!(o.is_complete());
    Ok(Output { value, code: exit::OK })
}

fn primids(pyramid: &Path, ty: LieType, alphabet: &Path, choice: Option<&Path>) -> Result<Output> {
    let p = read_pyramid(pyramid)?;
    let alpha = alphabet_from_json(&read_json(alphabet)?)?;
    let choice = match choice {
        Some(path) => choice_from_json(&read_json(path)?)?,
        None => BulletChoice::default(),
    };
    let catalog = primitive_ideal_labels(&p, ty, &alpha, &choice)?;
    Ok(Output { value: catalog_to_json(&catalog), code: exit::OK })
}

fn verify(suite: &str, seed: u64, samples: Option<usize>) -> Result<Output> {
    let report = run_suite(suite, &SuiteConfig { seed, samples })?;
    eprint!("{report}");
    let code = if report.passed() { exit::OK } else { exit::SUITE };
    Ok(Output { value: report.to_json(), code })
}

fn bound(instance: &Path) -> Result<Output> {
    let v = read_json(instance)?;
    let p: Vec<usize> = serde_json::from_value(v.get("p").cloned().context("instance needs \"p\"")?).context("\"p\" must be a list of lengths")?;
    let az = Diagram::new(rows_from_json(&v)?);
    let input = CaseInput::new(p)?;
    match verify_bound(&az, &input) {
        Ok(verdict) => {
            let code = if verdict.passed() { exit::OK } else { exit::NEGATIVE };
            Ok(Output { value: verdict_to_json(&verdict), code })
        }
        Err(e @ BoundError::ContextUnsatisfied(_)) => bail!("{e}"),
        Err(e) => Err(e.into()),
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Validate { table, pyramid, phi } => validate(table, pyramid.as_deref(), *phi),
        Command::Decide { table, ty } => decide(table, (*ty).into()),
        Command::Enumerate { pyramid, alphabet, phi } => enumerate(pyramid, alphabet, *phi),
        Command::Orbit { table, ty } => orbit_cmd(table, (*ty).into()),
        Command::Primids { pyramid, ty, alphabet, choice } => primids(pyramid, (*ty).into(), alphabet, choice.as_deref()),
        Command::Verify { suite, samples } => verify(suite, cli.seed, samples.0),
        Command::Bound { instance } => bound(instance),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().lock().write_all(text.as_bytes()).context("writing stdout"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(cli.out.as_deref(), &to_pretty(&o.value)).map(|()| o.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::INPUT)
        }
    }
}
