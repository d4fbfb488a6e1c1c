//! `semipos`: classify matrices, build witness matrices, and decide or
//! falsify `A -> XAY` preservers, with a JSON report on stdout.

mod input;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use semipos::classify;
use semipos::construct::{build_np, build_pos, build_rect, mixed_sign_vector};
use semipos::genfuzz::campaign::{self, CAMPAIGNS};
use semipos::genfuzz::{msp_basis_search, GenConfig};
use semipos::preserver::{
    into_msp_preserver, into_sp_preserver, onto_msp_preserver, onto_sp_preserver, PreservedClass,
    PreserverMap, PreserverVerdict, Status,
};
use semipos::{Error, RatMatrix};
use serde_json::{json, Value};

use input::{read_vector, CliError, CliResult, InputRecord, MatrixFile};

const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 64;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "semipos",
    version,
    about = "Exact semipositivity classes and XAY preservers"
)]
struct Cli {
    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    table: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report every class the matrix belongs to, with witnesses.
    Classify { file: PathBuf },
    /// Find a witness vector.
    Witness {
        #[arg(value_enum)]
        kind: WitnessKind,
        file: PathBuf,
    },
    /// Build a nonnegative matrix B with B v = w.
    Build {
        #[arg(value_enum)]
        kind: BuildKind,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Mixed-sign v with X v >= 0, for X where neither X nor -X has a
    /// nonnegative inverse.
    Key1 { file: PathBuf },
    /// Decide whether A -> X A Y preserves a class.
    Preserver {
        #[arg(value_enum)]
        kind: PreserverKind,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Produce a certificate that A -> X A Y does not preserve a class.
    Falsify {
        #[arg(value_enum)]
        kind: FalsifyKind,
        #[command(flatten)]
        map: MapArgs,
    },
    /// Run a randomized verification campaign.
    Fuzz {
        campaign: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to the campaign's standard size.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Search for a basis of m x n matrices made of MSP matrices.
    Basis {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Defaults to 10 m n.
        #[arg(long)]
        trials: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum WitnessKind {
    Sp,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Np,
    Pos,
    Rect,
}

#[derive(Clone, Copy, ValueEnum)]
enum PreserverKind {
    IntoSp,
    OntoSp,
    IntoMsp,
    OntoMsp,
}

#[derive(Clone, Copy, ValueEnum)]
enum FalsifyKind {
    IntoSp,
    IntoMsp,
}

#[derive(clap::Args)]
struct MapArgs {
    #[arg(long)]
    x: PathBuf,
    #[arg(long)]
    y: PathBuf,
    /// Expected row count of the matrix space (size of X).
    #[arg(long)]
    m: Option<usize>,
    /// Expected column count of the matrix space (size of Y).
    #[arg(long)]
    n: Option<usize>,
}

/// A finished command: its result tree, the inputs it read, and its exit
/// status.
struct Outcome {
    inputs: Vec<InputRecord>,
    status: Status,
    result: Value,
}

fn bool_status(b: bool) -> Status {
    if b {
        Status::Yes
    } else {
        Status::No
    }
}

fn verified(ok: bool, what: &str) -> CliResult<()> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Internal(format!("{what} failed re-verification")))
    }
}

fn run_classify(file: &Path) -> CliResult<Outcome> {
    let f = MatrixFile::read("a", file)?;
    let r = classify::classify_all(&f.matrix);
    verified(r.verify(&f.matrix), "class report")?;
    Ok(Outcome {
        inputs: vec![f.record],
        status: Status::Yes,
        result: report::class_report(&r),
    })
}

fn run_witness(file: &Path) -> CliResult<Outcome> {
    let f = MatrixFile::read("a", file)?;
    let x = classify::semipositivity_vector(&f.matrix);
    if let Some(x) = &x {
        verified(
            x.is_positive() && f.matrix.apply(x)?.is_positive(),
            "semipositivity vector",
        )?;
    }
    Ok(Outcome {
        inputs: vec![f.record],
        status: bool_status(x.is_some()),
        result: json!({
            "semipositive": x.is_some(),
            "witness": x.as_ref().map(report::vector).unwrap_or_else(|| json!("none")),
        }),
    })
}

fn run_build(kind: BuildKind, v_text: &str, w_text: &str) -> CliResult<Outcome> {
    let (v, v_rec) = read_vector("v", v_text)?;
    let (w, w_rec) = read_vector("w", w_text)?;
    let result = match kind {
        BuildKind::Np => {
            let b = build_np(&v, &w)?;
            let m = &b.matrix;
            verified(
                m.is_nonnegative() && !m.det()?.is_zero() && m.apply(&v)? == w,
                "constructed matrix",
            )?;
            json!({ "b": report::matrix(m), "trace": report::np_trace(&b.trace) })
        }
        BuildKind::Pos => {
            let b = build_pos(&v, &w)?;
            let m = &b.matrix;
            verified(
                m.is_nonnegative()
                    && !m.det()?.is_zero()
                    && m.apply(&v)? == w
                    && b.normalized().is_lower_triangular(),
                "constructed matrix",
            )?;
            json!({ "b": report::matrix(m), "order": b.order })
        }
        BuildKind::Rect => {
            let (m, branch) = build_rect(&v, &w)?;
            verified(
                m.is_nonnegative() && m.rank() == m.rows() && m.apply(&v)? == w,
                "constructed matrix",
            )?;
            let branch = match branch {
                semipos::construct::RectBranch::MixedSign => "mixed-sign",
                semipos::construct::RectBranch::Nonnegative => "nonnegative",
            };
            json!({ "b": report::matrix(&m), "branch": branch })
        }
    };
    Ok(Outcome {
        inputs: vec![v_rec, w_rec],
        status: Status::Yes,
        result,
    })
}

fn run_key1(file: &Path) -> CliResult<Outcome> {
    let f = MatrixFile::read("x", file)?;
    f.require_square()?;
    let r = mixed_sign_vector(&f.matrix)?;
    verified(
        r.vector.sign_profile().mixed() && f.matrix.apply(&r.vector)?.is_nonnegative(),
        "mixed-sign vector",
    )?;
    Ok(Outcome {
        inputs: vec![f.record],
        status: Status::Yes,
        result: json!({
            "v": report::vector(&r.vector),
            "xv": report::vector(&f.matrix.apply(&r.vector)?),
            "path": report::mixed_sign_path(&r.path),
        }),
    })
}

fn read_map(args: &MapArgs) -> CliResult<(PreserverMap, Vec<InputRecord>)> {
    let x = MatrixFile::read("x", &args.x)?;
    let y = MatrixFile::read("y", &args.y)?;
    x.require_square()?;
    y.require_square()?;
    if let Some(m) = args.m {
        if m != x.matrix.rows() {
            return Err(x.error_at(0, format!("--m {m} but X is {0}x{0}", x.matrix.rows())));
        }
    }
    if let Some(n) = args.n {
        if n != y.matrix.rows() {
            return Err(y.error_at(0, format!("--n {n} but Y is {0}x{0}", y.matrix.rows())));
        }
    }
    let map = PreserverMap::new(x.matrix, y.matrix)?;
    Ok((map, vec![x.record, y.record]))
}

fn checked_verdict(map: &PreserverMap, v: PreserverVerdict) -> CliResult<Value> {
    if let Some(c) = &v.certificate {
        c.verify(map).map_err(CliError::from)?;
    }
    if v.status == Status::No && v.certificate.is_none() {
        return Err(CliError::Internal(
            "No verdict without a certificate".into(),
        ));
    }
    Ok(report::verdict(&v))
}

fn map_summary(map: &PreserverMap) -> Value {
    json!({ "m": map.m(), "n": map.n(), "x": report::matrix(map.x()), "y": report::matrix(map.y()) })
}

fn run_preserver(kind: PreserverKind, args: &MapArgs) -> CliResult<Outcome> {
    let (map, inputs) = read_map(args)?;
    let (class, onto) = match kind {
        PreserverKind::IntoSp => (PreservedClass::Semipositive, false),
        PreserverKind::OntoSp => (PreservedClass::Semipositive, true),
        PreserverKind::IntoMsp => (PreservedClass::MinimallySemipositive, false),
        PreserverKind::OntoMsp => (PreservedClass::MinimallySemipositive, true),
    };
    let v = match kind {
        PreserverKind::IntoSp => into_sp_preserver(&map)?,
        PreserverKind::OntoSp => onto_sp_preserver(&map)?,
        PreserverKind::IntoMsp => into_msp_preserver(&map)?,
        PreserverKind::OntoMsp => onto_msp_preserver(&map)?,
    };
    let status = v.status;
    Ok(Outcome {
        inputs,
        status,
        result: json!({
            "class": class.to_string(),
            "mode": if onto { "onto" } else { "into" },
            "map": map_summary(&map),
            "verdict": checked_verdict(&map, v)?,
        }),
    })
}

fn run_falsify(kind: FalsifyKind, args: &MapArgs) -> CliResult<Outcome> {
    let (map, inputs) = read_map(args)?;
    let v = match kind {
        FalsifyKind::IntoSp => into_sp_preserver(&map)?,
        FalsifyKind::IntoMsp => into_msp_preserver(&map)?,
    };
    // A certificate exists exactly when the map is not a preserver.
    let status = match v.status {
        Status::No => Status::Yes,
        Status::Yes => Status::No,
        Status::Unknown => Status::Unknown,
    };
    let reason = v.reason.to_string();
    let cert = match &v.certificate {
        Some(c) => {
            c.verify(&map).map_err(CliError::from)?;
            report::certificate(c)
        }
        None => Value::Null,
    };
    Ok(Outcome {
        inputs,
        status,
        result: json!({ "map": map_summary(&map), "reason": reason, "certificate": cert }),
    })
}

fn run_fuzz(name: &str, seed: u64, trials: Option<usize>) -> CliResult<Outcome> {
    let trials = match trials {
        Some(t) => t,
        None => CAMPAIGNS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| *t)
            .unwrap_or(0),
    };
    let s = campaign::run(name, seed, trials)?;
    Ok(Outcome {
        inputs: vec![],
        status: bool_status(s.ok()),
        result: report::campaign(&s),
    })
}

fn run_basis(m: usize, n: usize, seed: u64, trials: Option<usize>) -> CliResult<Outcome> {
    let budget = trials.unwrap_or(10 * m * n);
    let (status, basis) = match msp_basis_search(m, n, &GenConfig::new(seed), budget) {
        Ok(basis) => {
            let columns: Vec<_> = basis.iter().map(RatMatrix::vectorize).collect();
            let independent = RatMatrix::from_columns(m * n, &columns)?.rank() == m * n;
            verified(
                independent && basis.iter().all(classify::is_minimally_semipositive),
                "basis",
            )?;
            (
                Status::Yes,
                Value::Array(basis.iter().map(report::matrix).collect()),
            )
        }
        Err(Error::SearchExhausted { .. }) => (Status::No, Value::Null),
        Err(e) => return Err(e.into()),
    };
    Ok(Outcome {
        inputs: vec![],
        status,
        result: json!({ "m": m, "n": n, "seed": seed, "trial_budget": budget, "basis": basis }),
    })
}

fn dispatch(cmd: &Command) -> CliResult<Outcome> {
    match cmd {
        Command::Classify { file } => run_classify(file),
        Command::Witness {
            kind: WitnessKind::Sp,
            file,
        } => run_witness(file),
        Command::Build { kind, v, w } => run_build(*kind, v, w),
        Command::Key1 { file } => run_key1(file),
        Command::Preserver { kind, map } => run_preserver(*kind, map),
        Command::Falsify { kind, map } => run_falsify(*kind, map),
        Command::Fuzz {
            campaign,
            seed,
            trials,
        } => run_fuzz(campaign, *seed, *trials),
        Command::Basis { m, n, seed, trials } => run_basis(*m, *n, *seed, *trials),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let start = Instant::now();
    let outcome = match dispatch(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("semipos: {e}");
            return ExitCode::from(match e {
                CliError::Input(_) => EXIT_INPUT,
                CliError::Internal(_) => EXIT_INTERNAL,
            });
        }
    };
    let doc = json!({
        "command": argv[1..],
        "inputs": report::inputs(&outcome.inputs),
        "status": outcome.status.to_string(),
        "result": outcome.result,
        "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
    });
    if cli.table {
        print!("{}", report::table(&doc));
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
    }
    ExitCode::from(match outcome.status {
        Status::Yes => EXIT_YES,
        Status::No => EXIT_NO,
        Status::Unknown => EXIT_UNKNOWN,
    })
}
