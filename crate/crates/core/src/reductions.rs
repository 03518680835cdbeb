//! Polynomial-time reductions between the decoding problems, each producing
//! a checkable certificate.
//!
//! * CGW on `[O|H_Z]` → CGW on a full-rank `[O|H_Z']` ([`reduce_cgwz_to_cgwzf`])
//! * QBDD → QMLD ([`qbdd_via_qmld`])
//! * QMLD on `[H_X|O]` → QMEPD ([`qmld_via_qmepd`])

use num::{BigInt, BigRational, One};

use crate::channel::DepolarizingParam;
use crate::decoders::{solve_qbdd, solve_qmepd, solve_qmld, DecodeInstance, DecodeOutcome, Outcome};
use crate::error::{Error, Result};
use crate::gf2::{rref, syndrome_map, BitMat, BitVec};
use crate::guard::Guard;
use crate::pauli::{validate_check_matrix, CheckMatrix, SympVec};

/// Which half of a check matrix carries the nonzero block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Half {
    /// `[H_X|O]`
    X,
    /// `[O|H_Z]`
    Z,
}

impl Half {
    fn bounds(self, n: usize) -> (usize, usize) {
        match self {
            Half::X => (0, n),
            Half::Z => (n, 2 * n),
        }
    }

    fn other(self) -> Half {
        match self {
            Half::X => Half::Z,
            Half::Z => Half::X,
        }
    }
}

/// Certificate of the rank-reduction step: `H = R · H'` where `H'` keeps
/// `rank(H)` independent rows of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullRankReduction {
    /// The original matrix.
    pub h: BitMat,
    pub s: BitVec,
    pub half: Half,
    pub h_prime: CheckMatrix,
    pub s_prime: BitVec,
    pub t_prime: usize,
    /// `m × m'`.
    pub r: BitMat,
    /// Rows of `H` kept in `H'`, ascending.
    pub row_indices: Vec<usize>,
    /// Whether `R · s' = s`. When false the original instance has no
    /// solution at all.
    pub consistent: bool,
}

impl FullRankReduction {
    /// The reduced instance, as input for the full-rank solvers.
    pub fn reduced_instance(&self) -> DecodeInstance {
        DecodeInstance::new(self.h_prime.clone(), self.s_prime).with_t(self.t_prime)
    }
}

fn require_zero_half(h: &BitMat, half: Half) -> Result<usize> {
    if !h.ncols().is_multiple_of(2) {
        return Err(Error::OddLength(h.ncols()));
    }
    let n = h.ncols() / 2;
    let (lo, hi) = half.bounds(n);
    if !h.columns(lo, hi).is_zero() {
        let form = match half {
            Half::X => "[O|H_Z]",
            Half::Z => "[H_X|O]",
        };
        return Err(Error::Shape(format!("expected a check matrix of the form {form}")));
    }
    Ok(n)
}

fn reduce_rank(h: &BitMat, s: &BitVec, t: usize, half: Half) -> Result<FullRankReduction> {
    let n = require_zero_half(h, half.other())?;
    if s.len() != h.nrows() {
        return Err(Error::DimensionMismatch { expected: h.nrows(), found: s.len() });
    }
    let (lo, hi) = half.bounds(n);
    // Pivot columns of rref(H_Z^T) are the first independent rows of H_Z.
    let row_indices = rref(&h.columns(lo, hi).transpose()?).pivot_cols;
    let m_prime = row_indices.len();
    let h_prime = h.select_rows(&row_indices);

    // E H' = Ĥ'; every row of H is the sum of the rows of Ĥ' whose pivot
    // column it hits, so H = R̂ Ĥ' = R̂ E H'.
    let reduced = rref(&h_prime);
    let mut r_hat = BitMat::zeros(h.nrows(), m_prime);
    for i in 0..h.nrows() {
        for (k, &p) in reduced.pivot_cols.iter().enumerate() {
            r_hat.set(i, k, h.get(i, p));
        }
    }
    let r = r_hat.mul(&reduced.e)?;
    if r.mul(&h_prime)? != *h {
        return Err(Error::LiftContractViolation("H differs from R·H'".into()));
    }

    let s_prime = BitVec::from_bools(&row_indices.iter().map(|&j| s.get(j)).collect::<Vec<_>>());
    let consistent = r.mul_vec(&s_prime)? == *s;
    Ok(FullRankReduction {
        h: h.clone(),
        s: *s,
        half,
        h_prime: validate_check_matrix(h_prime, true)?,
        s_prime,
        t_prime: t,
        r,
        row_indices,
        consistent,
    })
}

/// Reduces a CGW instance on `H = [O|H_Z]` to one on a full-rank `[O|H_Z']`
/// with the same row space.
pub fn reduce_cgwz_to_cgwzf(h: &BitMat, s: &BitVec, t: usize) -> Result<FullRankReduction> {
    reduce_rank(h, s, t, Half::Z)
}

/// The same reduction for `H = [H_X|O]`.
pub fn reduce_cgwx_to_cgwxf(h: &BitMat, s: &BitVec, t: usize) -> Result<FullRankReduction> {
    reduce_rank(h, s, t, Half::X)
}

/// Maps a solution of the reduced instance back to the original one. The
/// map is the identity; the original syndrome equation is re-checked.
pub fn lift_cgwzf_solution(red: &FullRankReduction, e: &SympVec) -> Result<SympVec> {
    if !red.consistent {
        return Err(Error::LiftContractViolation(
            "the reduction certifies that no solution exists".into(),
        ));
    }
    if syndrome_map(&red.h, e.bits())? != red.s {
        return Err(Error::LiftContractViolation(format!("{e} does not have syndrome {}", red.s)));
    }
    Ok(*e)
}

/// Answers CGW on a one-sided `H` through the full-rank reduction. Returns
/// the lifted witness, or `None` when the answer is negative.
pub fn cgw_via_full_rank(
    h: &BitMat,
    s: &BitVec,
    t: usize,
    guard: Guard,
) -> Result<(FullRankReduction, Option<SympVec>)> {
    let n = h.ncols() / 2;
    let red = if h.columns(0, n).is_zero() {
        reduce_cgwz_to_cgwzf(h, s, t)?
    } else {
        reduce_cgwx_to_cgwxf(h, s, t)?
    };
    if !red.consistent {
        return Ok((red, None));
    }
    let witness = match solve_qbdd(&red.reduced_instance(), guard)?.outcome {
        Outcome::Found(e) => Some(lift_cgwzf_solution(&red, &e)?),
        Outcome::Failure => None,
    };
    Ok((red, witness))
}

/// Bounded-distance decoding answered by a QMLD call: the lightest solution
/// is admissible iff its weight is at most `t`.
pub fn qbdd_via_qmld(h: &CheckMatrix, s: &BitVec, t: usize, guard: Guard) -> Result<DecodeOutcome> {
    let out = solve_qmld(h, s, guard)?;
    match out.weight {
        Some(w) if w <= t => Ok(out),
        _ => Ok(DecodeOutcome {
            outcome: Outcome::Failure,
            weight: None,
            alpha: None,
            ties: 0,
            enumerated: out.enumerated,
        }),
    }
}

/// A channel parameter small enough that `(ε/3)/(1−ε) < 2^{−m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonChoice {
    pub m: usize,
    pub eps: DepolarizingParam,
}

impl EpsilonChoice {
    /// Checks `(ε/3)/(1−ε) < 2^{−m}` exactly.
    pub fn below_threshold(&self) -> bool {
        let bound = BigRational::new(BigInt::one(), BigInt::one() << self.m);
        self.eps.odds() < bound
    }
}

/// `ε = 3/(2^{m+1}+3)`, for which `(ε/3)/(1−ε) = 2^{−(m+1)}`.
pub fn choose_epsilon(m: usize) -> EpsilonChoice {
    let denom = (BigInt::one() << (m + 1)) + BigInt::from(3);
    let eps = DepolarizingParam::new(BigRational::new(BigInt::from(3), denom))
        .expect("3/(2^{m+1}+3) lies in (0, 3/4]");
    EpsilonChoice { m, eps }
}

/// QMLD on `H = [H_X|O]` answered by one QMEPD call at the parameter from
/// [`choose_epsilon`]: the most probable coset `v = (x|z)` yields the
/// minimum-weight solution `(0|z)`.
pub fn qmld_via_qmepd(h: &CheckMatrix, s: &BitVec, guard: Guard) -> Result<DecodeOutcome> {
    require_zero_half(h.matrix(), Half::Z)?;
    let choice = choose_epsilon(h.m());
    let out = solve_qmepd(h, s, &choice.eps, guard)?;
    let Outcome::Found(v) = out.outcome else {
        return Ok(out);
    };
    let e = SympVec::from_halves(&BitVec::zeros(h.n()), &v.z())?;
    if h.syndrome(&e)? != *s {
        return Err(Error::LiftContractViolation(format!("{e} does not have syndrome {s}")));
    }
    Ok(DecodeOutcome { weight: Some(e.gw()), outcome: Outcome::Found(e), ..out })
}
