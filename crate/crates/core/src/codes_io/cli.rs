//! `qdec` command line.
//!
//! Exit codes: 0 success, 1 I/O or other failure, 2 usage error, 3 guard
//! exceeded, 4 invalid input.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::channel::{DepolarizingParam, DepolarizingSampler};
use crate::decoders::{solve_cgw, solve_qbdd, solve_qmepd, solve_qmld, DecodeInstance, DecodeOutcome, Outcome};
use crate::error::Error;
use crate::guard::Guard;
use crate::pauli::{phi_inv, profile, CheckMatrix};
use crate::reductions::{choose_epsilon, reduce_cgwx_to_cgwxf, reduce_cgwz_to_cgwzf};

use super::bench::{run_bench, write_csv, BenchConfig, BenchProblem};
use super::codes::named_code;
use super::instance::{parse_instance_file, serialize_instance_file, Certificate, InstanceFile};
use super::random::{gen_random, RandomCode, RandomKind};

#[derive(Parser, Debug)]
#[command(name = "qdec", version, about = "Exact decoding and analysis of stabilizer codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct GuardArg {
    /// Largest enumeration allowed, as a power of two.
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=Guard::MAX_EXPONENT as u64))]
    guard: Option<u64>,
}

impl GuardArg {
    fn get(self) -> Guard {
        self.guard.map_or_else(Guard::default, |g| Guard::new(g as usize).expect("range checked"))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that an instance file parses and its matrix is self-orthogonal.
    Validate {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Solve a decoding problem.
    Decode {
        problem: DecodeProblem,
        #[arg(long = "in")]
        input: PathBuf,
        /// Weight bound; overrides the file.
        #[arg(long)]
        t: Option<usize>,
        /// Channel parameter `p/q`; overrides the file.
        #[arg(long, value_parser = parse_eps)]
        eps: Option<DepolarizingParam>,
        #[command(flatten)]
        guard: GuardArg,
    },
    /// Minimum distance, normalizer weight and degeneracy.
    Mindist {
        /// A named code such as `five_qubit` or `repetition_z(5)`.
        code: Option<String>,
        #[arg(long = "in", conflicts_with = "code")]
        input: Option<PathBuf>,
        #[command(flatten)]
        guard: GuardArg,
    },
    /// Write a reduced instance together with its certificate.
    Reduce {
        kind: ReduceKind,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Draw depolarizing errors and report their syndromes.
    Sample {
        code: Option<String>,
        #[arg(long = "in", conflicts_with = "code")]
        input: Option<PathBuf>,
        #[arg(long, value_parser = parse_eps)]
        eps: DepolarizingParam,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time a solver on codes of growing length and write CSV.
    Bench {
        #[arg(long, default_value = "qmld", value_parser = parse_problem)]
        problem: BenchProblem,
        #[arg(long, default_value_t = 8)]
        from: usize,
        #[arg(long, default_value_t = 14)]
        to: usize,
        /// Timed solves per size.
        #[arg(long, default_value_t = 15)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        guard: GuardArg,
    },
    /// Write an instance file for a random or named code.
    Gen {
        /// `z_only`, `x_only`, `css`, `general`, or a named code.
        kind: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        mx: Option<usize>,
        #[arg(long)]
        mz: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also sample an error at this parameter and record its syndrome.
        #[arg(long, value_parser = parse_eps)]
        eps: Option<DepolarizingParam>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DecodeProblem {
    Cgw,
    Qbdd,
    Qmld,
    Qmepd,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ReduceKind {
    Fullrank,
    Qbdd2qmld,
    Qmld2qmepd,
}

fn parse_eps(s: &str) -> Result<DepolarizingParam, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_problem(s: &str) -> Result<BenchProblem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(Error::TooLarge { .. }) => 3,
            Failure::Lib(Error::UnknownCode(_)) | Failure::Usage(_) => 2,
            Failure::Lib(e) if e.is_validation() => 4,
            Failure::Lib(_) | Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Io(m) | Failure::Usage(m) => m.clone(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn io_err(path: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> CliResult<InstanceFile> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    Ok(parse_instance_file(&text)?)
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(path, e))?;
    tmp.write_all(contents).map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}

fn emit(out: &mut dyn Write, path: Option<&Path>, contents: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => out.write_all(contents).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn code_from(code: Option<&str>, input: Option<&Path>) -> CliResult<CheckMatrix> {
    match (code, input) {
        (Some(name), _) => Ok(named_code(name)?),
        (None, Some(path)) => Ok(read_file(path)?.instance.h),
        (None, None) => Err(Failure::Usage("give a code name or --in FILE".into())),
    }
}

fn describe(problem: &str, out: &DecodeOutcome) -> String {
    match &out.outcome {
        Outcome::Found(e) => {
            let mut line = format!(
                "problem={problem} result=found e={e} pauli={} weight={}",
                phi_inv(e),
                e.gw()
            );
            if let Some(alpha) = &out.alpha {
                line.push_str(&format!(" alpha={alpha}"));
            }
            line.push_str(&format!(" ties={} tie_break=lexicographic enumerated={}", out.ties, out.enumerated));
            line
        }
        Outcome::Failure => format!("problem={problem} result=failure enumerated={}", out.enumerated),
    }
}

fn decode(
    problem: DecodeProblem,
    input: &Path,
    t: Option<usize>,
    eps: Option<DepolarizingParam>,
    guard: Guard,
) -> CliResult<String> {
    let mut inst = read_file(input)?.instance;
    inst.t = t.or(inst.t);
    inst.eps = eps.or(inst.eps);
    let s = inst.syndrome()?;
    Ok(match problem {
        DecodeProblem::Cgw => {
            let answer = solve_cgw(inst.h.matrix(), s, inst.bound()?, guard)?;
            format!("problem=cgw result={answer}")
        }
        DecodeProblem::Qbdd => describe("qbdd", &solve_qbdd(&inst, guard)?),
        DecodeProblem::Qmld => describe("qmld", &solve_qmld(&inst.h, s, guard)?),
        DecodeProblem::Qmepd => describe("qmepd", &solve_qmepd(&inst.h, s, inst.channel()?, guard)?),
    })
}

fn reduce(kind: ReduceKind, input: &Path, t: Option<usize>) -> CliResult<(InstanceFile, String)> {
    let mut inst = read_file(input)?.instance;
    inst.t = t.or(inst.t);
    let s = *inst.syndrome()?;
    Ok(match kind {
        ReduceKind::Fullrank => {
            let t = inst.bound()?;
            let h = inst.h.matrix();
            let n = inst.h.n();
            let red = if h.columns(0, n).is_zero() {
                reduce_cgwz_to_cgwzf(h, &s, t)?
            } else {
                reduce_cgwx_to_cgwxf(h, &s, t)?
            };
            let summary = format!(
                "reduction=fullrank m={} m_prime={} consistent={}",
                h.nrows(),
                red.h_prime.m(),
                red.consistent
            );
            let cert = Certificate::FullRank {
                row_indices: red.row_indices.clone(),
                r: red.r.clone(),
                s,
                consistent: red.consistent,
            };
            (InstanceFile { instance: red.reduced_instance(), certificate: Some(cert) }, summary)
        }
        ReduceKind::Qbdd2qmld => {
            let t = inst.bound()?;
            let reduced = DecodeInstance::new(inst.h, s);
            let cert = Certificate::QbddToQmld { t };
            (InstanceFile { instance: reduced, certificate: Some(cert) }, format!("reduction=qbdd2qmld t={t}"))
        }
        ReduceKind::Qmld2qmepd => {
            let n = inst.h.n();
            if !inst.h.matrix().columns(n, 2 * n).is_zero() {
                return Err(Error::Shape("expected a check matrix of the form [H_X|O]".into()).into());
            }
            if !inst.h.is_full_rank() {
                return Err(Error::RankDeficient { rank: inst.h.rank(), rows: inst.h.m() }.into());
            }
            let choice = choose_epsilon(inst.h.m());
            let summary = format!("reduction=qmld2qmepd m={} eps={}", choice.m, choice.eps);
            let reduced = DecodeInstance::new(inst.h, s).with_eps(choice.eps.clone());
            let cert = Certificate::QmldToQmepd { m: choice.m, eps: choice.eps };
            (InstanceFile { instance: reduced, certificate: Some(cert) }, summary)
        }
    })
}

fn gen(
    kind: &str,
    dims: (Option<usize>, Option<usize>, Option<usize>, Option<usize>),
    seed: u64,
) -> CliResult<CheckMatrix> {
    let Ok(kind) = kind.parse::<RandomKind>() else {
        return Ok(named_code(kind)?);
    };
    let (n, m, mx, mz) = dims;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("{kind} needs --{flag}")));
    let n = need(n, "n")?;
    let code = match kind {
        RandomKind::ZOnly => RandomCode::ZOnly { n, m: need(m, "m")? },
        RandomKind::XOnly => RandomCode::XOnly { n, m: need(m, "m")? },
        RandomKind::General => RandomCode::General { n, m: need(m, "m")? },
        RandomKind::Css => RandomCode::Css { n, mx: need(mx, "mx")?, mz: need(mz, "mz")? },
    };
    Ok(gen_random(code, seed)?)
}

fn run(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    let mut say = |line: String| writeln!(out, "{line}").map_err(|e| Failure::Io(e.to_string()));
    match cli.command {
        Command::Validate { input } => {
            let h = read_file(&input)?.instance.h;
            say(format!("valid n={} m={} rank={} k={}", h.n(), h.m(), h.rank(), h.k()))
        }
        Command::Decode { problem, input, t, eps, guard } => say(decode(problem, &input, t, eps, guard.get())?),
        Command::Mindist { code, input, guard } => {
            let h = code_from(code.as_deref(), input.as_deref())?;
            let p = profile(&h, guard.get())?;
            let show = |v: Option<String>| v.unwrap_or_else(|| "none".into());
            say(format!(
                "n={} k={} d={} d_prime={} degenerate={}",
                p.n,
                p.k,
                show(p.d.map(|d| d.to_string())),
                show(p.d_prime.map(|d| d.to_string())),
                show(p.degenerate.map(|d| d.to_string())),
            ))
        }
        Command::Reduce { kind, input, out: path, t } => {
            let (file, summary) = reduce(kind, &input, t)?;
            let text = serialize_instance_file(&file);
            match path {
                Some(p) => {
                    write_atomic(&p, text.as_bytes())?;
                    say(summary)
                }
                None => say(text.trim_end().to_owned()),
            }
        }
        Command::Sample { code, input, eps, count, seed } => {
            let h = code_from(code.as_deref(), input.as_deref())?;
            let mut sampler = DepolarizingSampler::new(&eps, seed)?;
            for _ in 0..count {
                let e = sampler.sample(h.n());
                say(format!("e={e} pauli={} s={}", phi_inv(&e), h.syndrome(&e)?))?;
            }
            Ok(())
        }
        Command::Bench { problem, from, to, count, seed, out: path, guard } => {
            let cfg = BenchConfig { problem, n_min: from, n_max: to, repeats: count, seed, guard: guard.get() };
            let records = run_bench(&cfg)?;
            let mut buf = Vec::new();
            write_csv(&records, &mut buf).map_err(|e| Failure::Io(e.to_string()))?;
            emit(out, path.as_deref(), &buf)
        }
        Command::Gen { kind, n, m, mx, mz, seed, eps, t, out: path } => {
            let h = gen(&kind, (n, m, mx, mz), seed)?;
            let mut inst = DecodeInstance { h, s: None, t, eps: None };
            if let Some(eps) = eps {
                let e = DepolarizingSampler::new(&eps, seed)?.sample(inst.h.n());
                inst.s = Some(inst.h.syndrome(&e)?);
                inst.eps = Some(eps);
            }
            let text = serialize_instance_file(&InstanceFile { instance: inst, certificate: None });
            emit(out, path.as_deref(), text.as_bytes())
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match run(cli, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}
