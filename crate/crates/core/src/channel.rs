//! Depolarizing channel: exact error, syndrome, posterior and coset
//! probabilities, and a seeded error sampler.
//!
//! Each qubit independently suffers `X`, `Y` or `Z` with probability `ε/3`
//! each, so an error with binary image `u` has probability
//! `λ_u = (ε/3)^{gw(u)} (1−ε)^{n−gw(u)}`. All arithmetic is on
//! [`BigRational`]; nothing here is ever rounded.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, solve_syndrome, span_for_each, BitVec, RowSpace};
use crate::guard::Guard;
use crate::pauli::{gw_raw, CheckMatrix, SympVec, MAX_QUBITS};

/// Channel parameter `ε ∈ (0, 3/4]`; the depolarizing probability is
/// `p = 4ε/3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DepolarizingParam {
    eps: BigRational,
}

impl DepolarizingParam {
    pub fn new(eps: BigRational) -> Result<Self> {
        let upper = BigRational::new(3.into(), 4.into());
        if eps <= BigRational::zero() || eps > upper {
            return Err(Error::InvalidEpsilon(format!("{eps} is outside (0, 3/4]")));
        }
        Ok(Self { eps })
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidEpsilon("zero denominator".into()));
        }
        Self::new(BigRational::new(numer.into(), denom.into()))
    }

    pub fn eps(&self) -> &BigRational {
        &self.eps
    }

    /// Depolarizing probability `p = 4ε/3`.
    pub fn p(&self) -> BigRational {
        &self.eps * BigRational::new(4.into(), 3.into())
    }

    /// Ratio `(ε/3) / (1−ε)`; infinite at `ε = 1` is excluded by the range.
    pub fn odds(&self) -> BigRational {
        (&self.eps / BigRational::from_integer(3.into())) / (BigRational::one() - &self.eps)
    }
}

impl fmt::Display for DepolarizingParam {
    /// Always `p/q` in lowest terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.eps.numer(), self.eps.denom())
    }
}

impl FromStr for DepolarizingParam {
    type Err = Error;

    /// Accepts `p/q` with decimal integers `p, q > 0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidEpsilon(format!("expected `p/q`, got {s:?}"));
        let (p, q) = s.split_once('/').ok_or_else(bad)?;
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(p) || !digits(q) {
            return Err(bad());
        }
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Self::new(BigRational::new(p, q))
    }
}

/// An exact probability.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProb(BigRational);

impl ExactProb {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<BigRational> for ExactProb {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl Add for ExactProb {
    type Output = ExactProb;

    fn add(self, rhs: ExactProb) -> ExactProb {
        ExactProb(self.0 + rhs.0)
    }
}

impl Sum for ExactProb {
    fn sum<I: Iterator<Item = ExactProb>>(iter: I) -> ExactProb {
        iter.fold(ExactProb::zero(), Add::add)
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `λ(w) = (ε/3)^w (1−ε)^{n−w}` for `w = 0..=n`.
pub(crate) fn lambda_table(eps: &DepolarizingParam, n: usize) -> Vec<BigRational> {
    let third = eps.eps() / BigRational::from_integer(3.into());
    let stay = BigRational::one() - eps.eps();
    let mut third_pows = vec![BigRational::one(); n + 1];
    let mut stay_pows = vec![BigRational::one(); n + 1];
    for w in 1..=n {
        third_pows[w] = &third_pows[w - 1] * &third;
        stay_pows[w] = &stay_pows[w - 1] * &stay;
    }
    (0..=n).map(|w| &third_pows[w] * &stay_pows[n - w]).collect()
}

/// Probability of one specific error of generalized weight `w` on `n` qubits.
pub fn lambda(eps: &DepolarizingParam, n: usize, w: usize) -> Result<ExactProb> {
    if w > n {
        return Err(Error::WeightOutOfRange { weight: w, n });
    }
    let third = eps.eps() / BigRational::from_integer(3.into());
    let stay = BigRational::one() - eps.eps();
    Ok(ExactProb(num::pow(third, w) * num::pow(stay, n - w)))
}

/// Counts the elements of `base + span(basis)` by generalized weight.
pub(crate) fn weight_histogram(base: u128, basis: &[u128], n: usize) -> Vec<u64> {
    let mut hist = vec![0u64; n + 1];
    span_for_each(base, basis, |v| hist[gw_raw(v, n)] += 1);
    hist
}

pub(crate) fn weighted_sum(hist: &[u64], table: &[BigRational]) -> BigRational {
    hist.iter()
        .zip(table)
        .filter(|(&c, _)| c > 0)
        .map(|(&c, l)| l * BigRational::from_integer(c.into()))
        .fold(BigRational::zero(), |a, b| a + b)
}

fn check_syndrome_len(h: &CheckMatrix, s: &BitVec) -> Result<()> {
    if s.len() != h.m() {
        return Err(Error::DimensionMismatch { expected: h.m(), found: s.len() });
    }
    Ok(())
}

/// `q_s`: total probability of the errors whose syndrome is `s`.
pub fn syndrome_prob(
    h: &CheckMatrix,
    s: &BitVec,
    eps: &DepolarizingParam,
    guard: Guard,
) -> Result<ExactProb> {
    check_syndrome_len(h, s)?;
    let n = h.n();
    guard.check(2 * n - h.rank())?;
    let Some(particular) = solve_syndrome(h.matrix(), s)? else {
        return Ok(ExactProb::zero());
    };
    let kernel: Vec<u128> = kernel_basis(h.matrix())?.iter().map(BitVec::raw).collect();
    let hist = weight_histogram(particular.raw(), &kernel, n);
    Ok(ExactProb(weighted_sum(&hist, &lambda_table(eps, n))))
}

/// Posterior probability that the error was `u` given syndrome `s`:
/// `λ_u / q_s` when `u` has syndrome `s`, zero otherwise.
pub fn posterior(
    h: &CheckMatrix,
    s: &BitVec,
    eps: &DepolarizingParam,
    u: &SympVec,
    guard: Guard,
) -> Result<ExactProb> {
    check_syndrome_len(h, s)?;
    if h.syndrome(u)? != *s {
        return Ok(ExactProb::zero());
    }
    let q = syndrome_prob(h, s, eps, guard)?;
    let l = lambda(eps, h.n(), u.gw())?;
    Ok(ExactProb(l.0 / q.0))
}

/// `α_v`: aggregate probability of the coset `v + Row(H)`.
pub fn coset_prob(
    h: &CheckMatrix,
    v: &SympVec,
    eps: &DepolarizingParam,
    guard: Guard,
) -> Result<ExactProb> {
    if v.n() != h.n() {
        return Err(Error::DimensionMismatch { expected: 2 * h.n(), found: 2 * v.n() });
    }
    guard.check(h.rank())?;
    let rows: Vec<u128> = RowSpace::from_matrix(h.matrix()).basis().map(BitVec::raw).collect();
    let hist = weight_histogram(v.bits().raw(), &rows, h.n());
    Ok(ExactProb(weighted_sum(&hist, &lambda_table(eps, h.n()))))
}

/// Seeded sampler of depolarizing errors.
///
/// Draws are exact: for `ε = p/q` each qubit takes an integer uniform on
/// `[0, 3q)` and maps it to `I` on the first `3(q−p)` values and to `X`, `Y`,
/// `Z` on consecutive blocks of `p` values.
#[derive(Clone, Debug)]
pub struct DepolarizingSampler {
    numer: u128,
    denom: u128,
    rng: ChaCha8Rng,
}

impl DepolarizingSampler {
    pub fn new(eps: &DepolarizingParam, seed: u64) -> Result<Self> {
        Self::with_stream(eps, seed, 0)
    }

    /// Independent sub-stream `stream` of the generator keyed by `seed`.
    pub fn with_stream(eps: &DepolarizingParam, seed: u64, stream: u64) -> Result<Self> {
        let too_big = || Error::InvalidEpsilon(format!("{eps} has a denominator too large to sample"));
        let numer = eps.eps().numer().to_u64().ok_or_else(too_big)?;
        let denom = eps.eps().denom().to_u64().ok_or_else(too_big)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Ok(Self { numer: numer.into(), denom: denom.into(), rng })
    }

    pub fn sample(&mut self, n: usize) -> SympVec {
        assert!(n <= MAX_QUBITS, "{n} qubits exceed {MAX_QUBITS}");
        let identity_block = 3 * (self.denom - self.numer);
        let mut raw = 0u128;
        for j in 0..n {
            let r = self.rng.gen_range(0..3 * self.denom);
            if r < identity_block {
                continue;
            }
            // 0 → X, 1 → Y, 2 → Z
            let (x, z) = match (r - identity_block) / self.numer {
                0 => (true, false),
                1 => (true, true),
                _ => (false, true),
            };
            raw |= u128::from(x) << j;
            raw |= u128::from(z) << (n + j);
        }
        SympVec::from_raw(raw, n)
    }
}

/// One depolarizing error on `n` qubits, determined by `seed`.
pub fn sample_error(eps: &DepolarizingParam, n: usize, seed: u64) -> Result<SympVec> {
    if n > MAX_QUBITS {
        return Err(Error::CapacityExceeded(2 * n));
    }
    Ok(DepolarizingSampler::new(eps, seed)?.sample(n))
}
