use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use delsarte_core::model::SurfaceInput;
use delsarte_core::pipeline::{analyze_input, AnalyzeOptions};
use delsarte_core::rational::format_rational;
use delsarte_core::shioda::{
    excluded_fractions, family_counts, gs_hodge_counts, lefschetz_number_exhaustive, FamilyParams,
};
use delsarte_core::Error;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "delsarte", version, about = "Exact analysis of Delsarte surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Indentation of the JSON output; 0 prints a single line.
    #[arg(long, global = true, default_value_t = 2)]
    json_indent: usize,
    /// Recheck results against the brute-force oracles.
    #[arg(long, global = true)]
    verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a surface given as JSON (file path, `-` for stdin, or --inline).
    Analyze(AnalyzeArgs),
    /// Picard number of y^2 = x^p + t^(2ap) + s^(2ap).
    Picard(PicardArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(required_unless_present = "inline", conflicts_with = "inline")]
    path: Option<PathBuf>,
    #[arg(long)]
    inline: Option<String>,
    /// Also compute the Lefschetz number of the exponent matrix.
    #[arg(long)]
    shioda: bool,
    /// h^2 of the resolved surface; enables a Picard number.
    #[arg(long)]
    h2: Option<u64>,
}

#[derive(Args)]
struct PicardArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    a: u64,
    /// Add the fractions j/2ap whose vectors lie outside Lambda.
    #[arg(long)]
    excluded: bool,
    /// Add the Hodge counts h20, h11prim, h02.
    #[arg(long)]
    hodge: bool,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_) => 2,
            Error::InconsistentDegree(_)
            | Error::Rejected(_)
            | Error::InvalidFamily { .. }
            | Error::Dimension(_)
            | Error::SingularMatrix
            | Error::RankDeficient { .. }
            | Error::DegenerateInput => 3,
            Error::NeedsNormalization
            | Error::NotConvertible(_)
            | Error::NoIsotrivialMatch(_)
            | Error::DegreeOverflow { .. }
            | Error::GenericallySingular
            | Error::ZeroDiscriminant => 4,
            Error::Internal(_) => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn read_input(args: &AnalyzeArgs) -> Result<SurfaceInput, Failure> {
    let text = match (&args.inline, &args.path) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure { code: 2, message: format!("reading stdin: {e}") })?;
            s
        }
        (None, Some(p)) => std::fs::read_to_string(p)
            .map_err(|e| Failure { code: 2, message: format!("reading {}: {e}", p.display()) })?,
        (None, None) => unreachable!("clap requires a path or --inline"),
    };
    serde_json::from_str(&text).map_err(|e| Failure { code: 2, message: format!("invalid surface JSON: {e}") })
}

fn analyze(args: &AnalyzeArgs, verify: bool) -> Result<Value, Failure> {
    let input = read_input(args)?;
    let opts = AnalyzeOptions { verify, shioda: args.shioda, h2: args.h2 };
    let report = analyze_input(&input, &opts)?;
    to_value(&report)
}

fn picard(args: &PicardArgs, verify: bool) -> Result<Value, Failure> {
    let params = FamilyParams::new(args.p, args.a)?;
    let c = family_counts(&params);
    let mut out = json!({
        "p": args.p,
        "a": args.a,
        "L0_count": c.l0_count,
        "lambda": c.lambda,
        "rho_tilde": c.rho_tilde,
        "rho": c.rho,
    });
    if args.hodge {
        let h = gs_hodge_counts(&params);
        out["h20"] = json!(h.h20);
        out["h11prim"] = json!(h.h11prim);
        out["h02"] = json!(h.h02);
    }
    if args.excluded {
        let fr: Vec<String> = excluded_fractions(&params).iter().map(format_rational).collect();
        out["excluded_fractions"] = json!(fr);
    }
    if verify {
        let lambda = lefschetz_number_exhaustive(&params.exponent_matrix())?;
        if lambda != c.lambda {
            return Err(Error::Internal(format!("lambda {} disagrees with the exhaustive closure count {lambda}", c.lambda)).into());
        }
        out["verified"] = json!(true);
    }
    Ok(out)
}

fn to_value<T: Serialize>(x: &T) -> Result<Value, Failure> {
    serde_json::to_value(x).map_err(|e| Failure { code: 1, message: format!("serializing report: {e}") })
}

fn render(v: &Value, indent: usize) -> String {
    if indent == 0 {
        return v.to_string();
    }
    let pad = " ".repeat(indent);
    let fmt = serde_json::ser::PrettyFormatter::with_indent(pad.as_bytes());
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    v.serialize(&mut ser).expect("writing to a Vec");
    String::from_utf8(buf).expect("JSON is UTF-8")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: configuring threads: {e}");
            return ExitCode::from(1);
        }
    }
    let result = match &cli.command {
        Command::Analyze(args) => analyze(args, cli.verify),
        Command::Picard(args) => picard(args, cli.verify),
    };
    match result {
        Ok(v) => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{}", render(&v, cli.json_indent)) {
                // A closed pipe (`| head`) is not our failure.
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: writing output: {e}");
                    ExitCode::from(1)
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
