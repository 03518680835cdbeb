//! Timing sweeps over growing codes, written as CSV.

use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::channel::{sample_error, DepolarizingParam};
use crate::decoders::{solve_qbdd, solve_qmepd, solve_qmld, DecodeInstance, DecodeOutcome};
use crate::error::{Error, Result};
use crate::guard::Guard;
use crate::pauli::CheckMatrix;

use super::random::{gen_random, RandomCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BenchProblem {
    Qbdd,
    Qmld,
    Qmepd,
}

impl FromStr for BenchProblem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qbdd" => Ok(BenchProblem::Qbdd),
            "qmld" => Ok(BenchProblem::Qmld),
            "qmepd" => Ok(BenchProblem::Qmepd),
            _ => Err(Error::Shape(format!("unknown benchmark problem `{s}`"))),
        }
    }
}

impl fmt::Display for BenchProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BenchProblem::Qbdd => "qbdd",
            BenchProblem::Qmld => "qmld",
            BenchProblem::Qmepd => "qmepd",
        })
    }
}

/// One CSV row: the best wall time of one solve at size `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub problem: String,
    pub n: usize,
    pub m: usize,
    pub micros: f64,
    /// Vectors enumerated by one solve.
    pub count: u64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub problem: BenchProblem,
    pub n_min: usize,
    pub n_max: usize,
    /// Timed solves per size; the fastest is reported.
    pub repeats: usize,
    pub seed: u64,
    pub guard: Guard,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self { problem: BenchProblem::Qmld, n_min: 8, n_max: 14, repeats: 15, seed: 0, guard: Guard::default() }
    }
}

fn solve_once(problem: BenchProblem, inst: &DecodeInstance, guard: Guard) -> Result<DecodeOutcome> {
    let s = inst.syndrome()?;
    match problem {
        BenchProblem::Qbdd => solve_qbdd(inst, guard),
        BenchProblem::Qmld => solve_qmld(&inst.h, s, guard),
        BenchProblem::Qmepd => solve_qmepd(&inst.h, s, inst.channel()?, guard),
    }
}

/// A `[O|H_Z]` code with one logical qubit and the syndrome of a sampled
/// error.
fn bench_instance(n: usize, seed: u64) -> Result<DecodeInstance> {
    let h: CheckMatrix = gen_random(RandomCode::ZOnly { n, m: n - 1 }, seed)?;
    let eps = DepolarizingParam::from_ratio(3, 10)?;
    let s = h.syndrome(&sample_error(&eps, n, seed)?)?;
    // t = 2n keeps the bounded-distance solver from stopping early.
    Ok(DecodeInstance::new(h, s).with_t(2 * n).with_eps(eps))
}

/// Runs the sweep `n = n_min..=n_max` with `m = n − 1`.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if cfg.n_min < 2 || cfg.n_min > cfg.n_max {
        return Err(Error::Shape(format!("invalid sweep {}..={}", cfg.n_min, cfg.n_max)));
    }
    let mut records = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        let inst = bench_instance(n, cfg.seed.wrapping_add(n as u64))?;
        cfg.guard.check(2 * n - inst.h.rank())?;
        let mut best = f64::INFINITY;
        let mut count = 0;
        for _ in 0..cfg.repeats.max(1) {
            let start = Instant::now();
            let out = solve_once(cfg.problem, &inst, cfg.guard)?;
            best = best.min(start.elapsed().as_secs_f64() * 1e6);
            count = out.enumerated;
        }
        let micros = (best * 1000.0).round() / 1000.0;
        records.push(BenchRecord { problem: cfg.problem.to_string(), n, m: inst.h.m(), micros, count });
    }
    Ok(records)
}

pub fn write_csv<W: io::Write>(records: &[BenchRecord], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()
}

pub fn read_csv<R: io::Read>(input: R) -> csv::Result<Vec<BenchRecord>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// Geometric mean of the time ratio between consecutive sizes.
pub fn mean_growth(records: &[BenchRecord]) -> Option<f64> {
    let (first, last) = (records.first()?, records.last()?);
    let steps = last.n.checked_sub(first.n).filter(|&s| s > 0)?;
    Some((last.micros / first.micros).powf(1.0 / steps as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_shape_and_csv() {
        let cfg = BenchConfig { n_min: 3, n_max: 6, repeats: 2, ..BenchConfig::default() };
        let records = run_bench(&cfg).unwrap();
        assert_eq!(records.len(), 4);
        for r in &records {
            assert_eq!(r.m, r.n - 1);
            assert_eq!(r.count, 1 << (r.n + 1));
        }
        let mut buf = Vec::new();
        write_csv(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("problem,n,m,micros,count\n"));
        assert_eq!(read_csv(&buf[..]).unwrap(), records);
    }

    #[test]
    fn every_problem_runs() {
        for p in ["qbdd", "qmld", "qmepd"] {
            let problem: BenchProblem = p.parse().unwrap();
            let cfg = BenchConfig { problem, n_min: 2, n_max: 3, repeats: 1, ..BenchConfig::default() };
            assert_eq!(run_bench(&cfg).unwrap()[0].problem, p);
        }
    }

    #[test]
    fn bad_sweep() {
        assert!(run_bench(&BenchConfig { n_min: 5, n_max: 4, ..BenchConfig::default() }).is_err());
    }
}
