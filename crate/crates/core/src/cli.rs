//! The `agfft` command line.
//!
//! Exit codes: 0 success, 1 oracle mismatch or weight-bound violation,
//! 2 invalid input, 3 word not in the code (`unencode --verify`).

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::curves::{self, Curve, CurveConfig, Form};
use crate::encoder::{self, EncodePlan};
use crate::error::Error;
use crate::field::OpCounter;
use crate::oracle;
use crate::rroch;
use crate::sample;
use crate::textio;
use crate::tower::{self, PointSet};

/// Largest code length the quadratic oracle is run on.
pub const NAIVE_LIMIT: usize = 1 << 14;

pub const BENCH_HEADER: [&str; 7] = ["curve", "N", "lambda", "field_muls", "field_adds", "wall_ns", "muls_per_nlogn"];

#[derive(Parser, Debug)]
#[command(name = "agfft", version, about = "Fast encoding of one-point AG codes over Galois towers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print code parameters and the tower checks as JSON.
    Info(CurveArgs),
    /// Encode a message file into a codeword file.
    Encode {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: Option<PathBuf>,
    },
    /// Recover the message from a codeword file.
    Unencode {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: Option<PathBuf>,
        /// Re-encode and fail with exit code 3 unless the word is a codeword.
        #[arg(long)]
        verify: bool,
    },
    /// Compare fast and naive encoding on seeded random messages.
    Verify {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Operation counts and timings over a family, as CSV.
    Bench {
        #[command(flatten)]
        curve: CurveArgs,
        /// κ values (hermitian, tower) or r values (norm-trace).
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
        #[arg(long = "out")]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Hermitian,
    NormTraceX,
    NormTraceY,
    Tower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    As,
    Kummer,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::As => Form::ArtinSchreier,
            FormArg::Kummer => Form::Kummer,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct CurveArgs {
    #[arg(long, value_enum, default_value_t = CurveKind::Hermitian)]
    pub curve: CurveKind,
    #[arg(long, default_value_t = 4)]
    pub kappa: u64,
    #[arg(long, value_enum, default_value_t = FormArg::As)]
    pub form: FormArg,
    /// Tower height.
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    /// Norm-trace extension degree `q = κ^r`.
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// Norm-trace Y exponent; defaults to `(κ^r - 1)/(κ - 1)`.
    #[arg(long)]
    pub e: Option<u64>,
    /// Curve JSON file; overrides the preset flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Pole bound; defaults to the curve's preset.
    #[arg(long)]
    pub lambda: Option<u64>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if e == Error::NotInCode { 3 } else { 2 };
        Failure { code, message: e.to_string() }
    }
}

fn bad(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

impl CurveArgs {
    fn with_size(&self, size: u64) -> CurveArgs {
        let mut a = self.clone();
        match a.curve {
            CurveKind::NormTraceX | CurveKind::NormTraceY => a.r = size as u32,
            _ => a.kappa = size,
        }
        a
    }

    pub fn build(&self) -> Result<Curve, Failure> {
        let mut curve = if let Some(path) = &self.config {
            let text = fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
            let cfg: CurveConfig = serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
            cfg.build()?
        } else {
            match self.curve {
                CurveKind::Hermitian => curves::hermitian(self.kappa, self.form.into())?,
                CurveKind::NormTraceX => curves::norm_trace_x(self.kappa, self.r, None)?,
                CurveKind::NormTraceY => {
                    let e = match self.e {
                        Some(e) => e,
                        None if self.kappa > 1 => (self.kappa.pow(self.r) - 1) / (self.kappa - 1),
                        None => return Err(Error::BadKappa(self.kappa, 0).into()),
                    };
                    curves::norm_trace_y(self.kappa, self.r, e)?
                }
                CurveKind::Tower => curves::hermitian_tower(self.kappa, self.n, self.form.into())?,
            }
        };
        if let Some(l) = self.lambda {
            curve.default_lambda = l;
        }
        Ok(curve)
    }
}

struct Setup {
    curve: Curve,
    pts: PointSet,
    plan: EncodePlan,
}

fn setup(args: &CurveArgs) -> Result<Setup, Failure> {
    let curve = args.build()?;
    let pts = curve.point_set()?;
    let plan = encoder::plan(&curve.field, &curve.desc, curve.default_lambda, &pts)?;
    Ok(Setup { curve, pts, plan })
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| bad(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))
}

fn message_file(plan: &EncodePlan, msg: &[crate::field::Fe]) -> String {
    textio::write(
        "message",
        &[("hash", plan.hash().to_string()), ("lambda", plan.lambda().to_string()), ("k", plan.k().to_string())],
        msg,
    )
}

fn cmd_info(args: &CurveArgs) -> Result<String, Failure> {
    let curve = args.build()?;
    let report = tower::verify_p4(&curve.desc);
    let checks: serde_json::Map<String, serde_json::Value> =
        report.checks.iter().map(|(c, ok)| (c.to_string(), json!(ok))).collect();
    if !report.passed {
        return Err(bad(format!("descriptor fails: {:?}", report.failures())));
    }
    let pts = curve.point_set()?;
    let lambda = curve.default_lambda;
    if lambda >= pts.len() as u64 {
        return Err(Error::LambdaTooLarge { lambda, n: pts.len() }.into());
    }
    let k = rroch::dimension(&curve.desc, lambda)?;
    let out = json!({
        "curve": curve.name,
        "field": { "p": curve.field.p(), "m": curve.field.m(), "q": curve.field.q() },
        "N": pts.len(),
        "genus": curve.genus,
        "genus_gap_count": rroch::genus(&curve.desc),
        "lambda": lambda,
        "k": k,
        "dmin_bound": pts.len() as u64 - lambda,
        "degree": curve.desc.degree(),
        "pole_y": curve.desc.d(),
        "stages": curve.desc.stages(),
        "radices": curve.desc.radices()?,
        "descriptor_hash": curve.desc.hash(),
        "p4": { "passed": report.passed, "checks": checks },
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&out).expect("json")))
}

fn cmd_encode(args: &CurveArgs, input: &PathBuf) -> Result<String, Failure> {
    let s = setup(args)?;
    let (header, msg) = textio::read(&read_input(input)?, s.plan.k(), s.curve.field.q())?;
    if let Some(h) = header {
        h.expect("hash", s.plan.hash())?;
        h.expect("lambda", &s.plan.lambda().to_string())?;
    }
    let cw = encoder::encode_message(&s.plan, &msg)?;
    Ok(encoder::write_codeword(&s.plan, &cw))
}

fn cmd_unencode(args: &CurveArgs, input: &PathBuf, verify: bool) -> Result<String, Failure> {
    let s = setup(args)?;
    let cw = encoder::read_codeword(&s.plan, &read_input(input)?)?;
    let msg = encoder::decode_message(&s.plan, &cw, verify)?;
    Ok(message_file(&s.plan, &msg))
}

fn cmd_verify(args: &CurveArgs, trials: u64, seed: u64) -> Result<(String, bool), Failure> {
    let s = setup(args)?;
    let n = s.plan.n();
    if n > NAIVE_LIMIT {
        return Err(bad(format!("N = {n} exceeds the oracle limit {NAIVE_LIMIT}")));
    }
    let rows = oracle::naive_rows(&s.curve.field, &s.curve.desc, s.plan.lambda(), &s.pts);
    let naive_ops = OpCounter::new();
    let ar = s.curve.field.counted(&naive_ops);
    let bound = n as u64 - s.plan.lambda();
    let (mut mismatches, mut violations) = (0u64, 0u64);
    encoder::reset_metrics(&s.plan);
    for t in 0..trials {
        let msg = sample::trial_message(s.curve.field.q(), s.plan.k(), seed, t);
        let fast = encoder::encode_message(&s.plan, &msg)?;
        if fast != oracle::combine(&ar, &rows, &msg)? {
            mismatches += 1;
        }
        if msg.iter().any(|x| !x.is_zero()) && (fast.weight() as u64) < bound {
            violations += 1;
        }
    }
    let m = encoder::metrics(&s.plan);
    let out = json!({
        "curve": s.curve.name,
        "N": n,
        "lambda": s.plan.lambda(),
        "k": s.plan.k(),
        "trials": trials,
        "seed": seed,
        "mismatches": mismatches,
        "weight_violations": violations,
        "fmpe_ops": m.encode,
        "naive_ops": naive_ops.snapshot(),
    });
    Ok((format!("{}\n", serde_json::to_string_pretty(&out).expect("json")), mismatches == 0 && violations == 0))
}

fn cmd_bench(args: &CurveArgs, sizes: &[u64], seed: u64) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BENCH_HEADER).map_err(|e| bad(e.to_string()))?;
    for &size in sizes {
        let s = setup(&args.with_size(size))?;
        let n = s.plan.n();
        let nlogn = n as f64 * (n as f64).log2().max(1.0);
        let msg = sample::trial_message(s.curve.field.q(), s.plan.k(), seed, 0);
        encoder::reset_metrics(&s.plan);
        let start = Instant::now();
        let fast = encoder::encode_message(&s.plan, &msg)?;
        let wall = start.elapsed().as_nanos();
        let ops = encoder::metrics(&s.plan).encode;
        let mut row = |engine: &str, mul: u64, add: u64, ns: u128| {
            w.write_record([
                format!("{}:{engine}", s.curve.name),
                n.to_string(),
                s.plan.lambda().to_string(),
                mul.to_string(),
                add.to_string(),
                ns.to_string(),
                format!("{:.4}", mul as f64 / nlogn),
            ])
        };
        row("fmpe", ops.mul, ops.add, wall).map_err(|e| bad(e.to_string()))?;
        if n <= NAIVE_LIMIT {
            let rows = oracle::naive_rows(&s.curve.field, &s.curve.desc, s.plan.lambda(), &s.pts);
            let naive = OpCounter::new();
            let start = Instant::now();
            let slow = oracle::combine(&s.curve.field.counted(&naive), &rows, &msg)?;
            let wall = start.elapsed().as_nanos();
            if slow != fast {
                return Err(Failure { code: 1, message: format!("{}: naive and fast codewords differ", s.curve.name) });
            }
            let c = naive.snapshot();
            row("naive", c.mul, c.add, wall).map_err(|e| bad(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| bad(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

/// Runs one parsed command.
pub fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Info(args) => emit(&None, &cmd_info(args)?),
        Command::Encode { curve, input, output } => emit(output, &cmd_encode(curve, input)?),
        Command::Unencode { curve, input, output, verify } => emit(output, &cmd_unencode(curve, input, *verify)?),
        Command::Verify { curve, trials, seed } => {
            let (report, clean) = cmd_verify(curve, *trials, *seed)?;
            emit(&None, &report)?;
            if clean {
                Ok(())
            } else {
                Err(Failure { code: 1, message: "fast and naive encodings disagree".into() })
            }
        }
        Command::Bench { curve, sizes, output, seed } => emit(output, &cmd_bench(curve, sizes, *seed)?),
    }
}

/// Entry point for the binary: parses `std::env::args`, reports errors on
/// stderr.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("agfft: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
