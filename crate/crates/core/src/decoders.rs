//! Exact syndrome decoders.
//!
//! Every solver enumerates the affine solution set
//! `{e : e Λ H^T = s} = e_0 + span(kernel)` of size `2^{2n − rank(H)}`, which
//! the [`Guard`] caps. Ties are broken by the lexicographic order of the
//! `(x|z)` bit string, so results are fully deterministic.
//!
//! | solver | question |
//! |---|---|
//! | [`solve_cgw`] | is there a solution of generalized weight `≤ t`? |
//! | [`solve_qbdd`] | find one (the lightest), or report failure |
//! | [`solve_qmld`] | find a solution of minimum generalized weight |
//! | [`solve_qmepd`] | find a solution whose coset `v + Row(H)` is most probable |

use num::BigRational;

use crate::channel::{lambda_table, weight_histogram, weighted_sum, DepolarizingParam, ExactProb};
use crate::error::{Error, Result};
use crate::gf2::{complement_basis, kernel_basis, solve_syndrome, BitMat, BitVec, RowSpace};
use crate::guard::Guard;
use crate::pauli::{gw_raw, validate_check_matrix, CheckMatrix, SympVec};

/// A decoding problem instance. Which optional fields are needed depends on
/// the solver: `t` for the bounded-distance problems, `eps` for QMEPD.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeInstance {
    pub h: CheckMatrix,
    pub s: Option<BitVec>,
    pub t: Option<usize>,
    pub eps: Option<DepolarizingParam>,
}

impl DecodeInstance {
    pub fn new(h: CheckMatrix, s: BitVec) -> Self {
        Self { h, s: Some(s), t: None, eps: None }
    }

    pub fn with_t(mut self, t: usize) -> Self {
        self.t = Some(t);
        self
    }

    pub fn with_eps(mut self, eps: DepolarizingParam) -> Self {
        self.eps = Some(eps);
        self
    }

    pub fn syndrome(&self) -> Result<&BitVec> {
        self.s.as_ref().ok_or(Error::MissingField("s"))
    }

    pub fn bound(&self) -> Result<usize> {
        self.t.ok_or(Error::MissingField("t"))
    }

    pub fn channel(&self) -> Result<&DepolarizingParam> {
        self.eps.as_ref().ok_or(Error::MissingField("eps"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found(SympVec),
    Failure,
}

/// Result of a search decoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub outcome: Outcome,
    /// Generalized weight of the returned vector.
    pub weight: Option<usize>,
    /// Exact coset probability, for QMEPD.
    pub alpha: Option<ExactProb>,
    /// How many candidates attained the optimum (vectors for weight-based
    /// solvers, cosets for QMEPD) before the lexicographic tie-break.
    pub ties: u64,
    /// Number of vectors visited.
    pub enumerated: u64,
}

impl DecodeOutcome {
    fn failure(enumerated: u64) -> Self {
        Self { outcome: Outcome::Failure, weight: None, alpha: None, ties: 0, enumerated }
    }

    pub fn found(&self) -> Option<&SympVec> {
        match &self.outcome {
            Outcome::Found(e) => Some(e),
            Outcome::Failure => None,
        }
    }

    pub fn is_found(&self) -> bool {
        self.found().is_some()
    }
}

/// `e_0 + span(kernel)`, or no solution at all.
struct SolutionSpace {
    n: usize,
    particular: Option<BitVec>,
    kernel: Vec<BitVec>,
}

impl SolutionSpace {
    fn new(h: &BitMat, s: &BitVec, rank: usize, guard: Guard) -> Result<Self> {
        if s.len() != h.nrows() {
            return Err(Error::DimensionMismatch { expected: h.nrows(), found: s.len() });
        }
        let n = h.ncols() / 2;
        guard.check(2 * n - rank)?;
        Ok(Self { n, particular: solve_syndrome(h, s)?, kernel: kernel_basis(h)? })
    }

    fn size(&self) -> u64 {
        if self.particular.is_some() {
            1u64 << self.kernel.len()
        } else {
            0
        }
    }

    fn kernel_raw(&self) -> Vec<u128> {
        self.kernel.iter().map(BitVec::raw).collect()
    }
}

fn require_full_rank(h: &CheckMatrix) -> Result<()> {
    if !h.is_full_rank() {
        return Err(Error::RankDeficient { rank: h.rank(), rows: h.m() });
    }
    Ok(())
}

/// Decision problem: does some `e` with `gw(e) ≤ t` have syndrome `s`?
///
/// `H` must be self-orthogonal but need not have full row rank; an
/// inconsistent syndrome answers `false`.
pub fn solve_cgw(h: &BitMat, s: &BitVec, t: usize, guard: Guard) -> Result<bool> {
    let code = validate_check_matrix(h.clone(), false)?;
    let space = SolutionSpace::new(h, s, code.rank(), guard)?;
    let Some(p) = space.particular else {
        return Ok(false);
    };
    let n = space.n;
    let kernel = space.kernel_raw();
    let mut cur = p.raw();
    if gw_raw(cur, n) <= t {
        return Ok(true);
    }
    for i in 1..space.size() {
        cur ^= kernel[i.trailing_zeros() as usize];
        if gw_raw(cur, n) <= t {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Lightest solution under the total order (weight, lexicographic), with
/// the number of solutions that share the minimum weight.
fn lightest(space: &SolutionSpace) -> Option<(u128, usize, u64)> {
    let p = space.particular?;
    let n = space.n;
    let kernel = space.kernel_raw();
    let mut best = p.raw();
    let mut best_w = gw_raw(best, n);
    let mut ties = 1u64;
    let mut cur = best;
    for i in 1..space.size() {
        cur ^= kernel[i.trailing_zeros() as usize];
        let w = gw_raw(cur, n);
        if w < best_w {
            best = cur;
            best_w = w;
            ties = 1;
        } else if w == best_w {
            ties += 1;
            if cur.reverse_bits() < best.reverse_bits() {
                best = cur;
            }
        }
    }
    Some((best, best_w, ties))
}

/// Bounded-distance decoding: a solution with `gw(e) ≤ t`, or failure.
///
/// Among admissible solutions the lightest is returned, ties broken
/// lexicographically.
pub fn solve_qbdd(inst: &DecodeInstance, guard: Guard) -> Result<DecodeOutcome> {
    require_full_rank(&inst.h)?;
    let t = inst.bound()?;
    let space = SolutionSpace::new(inst.h.matrix(), inst.syndrome()?, inst.h.rank(), guard)?;
    Ok(match lightest(&space) {
        Some((e, w, ties)) if w <= t => DecodeOutcome {
            outcome: Outcome::Found(SympVec::from_raw(e, space.n)),
            weight: Some(w),
            alpha: None,
            ties,
            enumerated: space.size(),
        },
        _ => DecodeOutcome::failure(space.size()),
    })
}

/// All solutions with `gw(e) ≤ t`, in lexicographic order.
pub fn enumerate_qbdd_solutions(inst: &DecodeInstance, guard: Guard) -> Result<Vec<SympVec>> {
    require_full_rank(&inst.h)?;
    let t = inst.bound()?;
    let space = SolutionSpace::new(inst.h.matrix(), inst.syndrome()?, inst.h.rank(), guard)?;
    let Some(p) = space.particular else {
        return Ok(Vec::new());
    };
    let n = space.n;
    let mut found = Vec::new();
    crate::gf2::span_for_each(p.raw(), &space.kernel_raw(), |v| {
        if gw_raw(v, n) <= t {
            found.push(SympVec::from_raw(v, n));
        }
    });
    found.sort();
    Ok(found)
}

/// Maximum-likelihood error: a solution of minimum generalized weight.
pub fn solve_qmld(h: &CheckMatrix, s: &BitVec, guard: Guard) -> Result<DecodeOutcome> {
    require_full_rank(h)?;
    let space = SolutionSpace::new(h.matrix(), s, h.rank(), guard)?;
    Ok(match lightest(&space) {
        Some((e, w, ties)) => DecodeOutcome {
            outcome: Outcome::Found(SympVec::from_raw(e, space.n)),
            weight: Some(w),
            alpha: None,
            ties,
            enumerated: space.size(),
        },
        None => DecodeOutcome::failure(0),
    })
}

/// Minimum-error-probability decoding: a solution `v` maximizing the coset
/// probability `α_v = Σ_{u ∈ v + Row(H)} λ_u`.
///
/// The solution set splits into `4^{n−m}` cosets of `Row(H)`, one per element
/// of `e_0 + span(L)` where `L` completes a basis of `Row(H)` to one of the
/// kernel. Each coset is summarized by a weight histogram, so `α` is an exact
/// sum of `n + 1` rational terms. The returned `v` is the lexicographically
/// smallest member of its coset; among cosets with equal `α` the smallest
/// such representative wins.
pub fn solve_qmepd(
    h: &CheckMatrix,
    s: &BitVec,
    eps: &DepolarizingParam,
    guard: Guard,
) -> Result<DecodeOutcome> {
    require_full_rank(h)?;
    let space = SolutionSpace::new(h.matrix(), s, h.rank(), guard)?;
    let Some(p) = space.particular else {
        return Ok(DecodeOutcome::failure(0));
    };
    let n = space.n;
    let rows = RowSpace::from_matrix(h.matrix());
    let row_raw: Vec<u128> = rows.basis().map(BitVec::raw).collect();
    let logical: Vec<u128> = complement_basis(&rows, &space.kernel).iter().map(BitVec::raw).collect();
    let table = lambda_table(eps, n);

    let mut best: Option<(BigRational, BitVec)> = None;
    let mut ties = 0u64;
    crate::gf2::span_for_each(p.raw(), &logical, |base| {
        let alpha = weighted_sum(&weight_histogram(base, &row_raw, n), &table);
        let rep = rows.reduce(&BitVec::from_raw(base, 2 * n));
        match &mut best {
            Some((a, r)) if alpha == *a => {
                ties += 1;
                if rep < *r {
                    *r = rep;
                }
            }
            Some((a, _)) if alpha < *a => {}
            _ => {
                best = Some((alpha, rep));
                ties = 1;
            }
        }
    });
    let (alpha, rep) = best.expect("solution set is nonempty");
    let v = SympVec::new(rep).expect("even width");
    Ok(DecodeOutcome {
        weight: Some(v.gw()),
        outcome: Outcome::Found(v),
        alpha: Some(alpha.into()),
        ties,
        enumerated: space.size(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::coset_prob;
    use crate::pauli::{phi, same_correction_effect, PauliString};

    fn code(rows: &[&str]) -> CheckMatrix {
        validate_check_matrix(BitMat::parse_rows(rows).unwrap(), true).unwrap()
    }

    fn five_qubit() -> CheckMatrix {
        let rows: Vec<BitVec> = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]
            .iter()
            .map(|g| *phi(&g.parse::<PauliString>().unwrap()).bits())
            .collect();
        validate_check_matrix(BitMat::from_rows(10, rows).unwrap(), true).unwrap()
    }

    fn bits(s: &str) -> BitVec {
        s.parse().unwrap()
    }

    fn sv(s: &str) -> SympVec {
        s.parse().unwrap()
    }

    /// Every vector of `GF(2)^{2n}` with syndrome `s`.
    fn brute_solutions(h: &CheckMatrix, s: &BitVec) -> Vec<SympVec> {
        (0..1u128 << (2 * h.n()))
            .map(|raw| SympVec::from_raw(raw, h.n()))
            .filter(|u| h.syndrome(u).unwrap() == *s)
            .collect()
    }

    #[test]
    fn cgw_single_qubit() {
        let h = BitMat::parse_rows(&["0|1"]).unwrap();
        assert!(!solve_cgw(&h, &bits("1"), 0, Guard::default()).unwrap());
        assert!(solve_cgw(&h, &bits("1"), 1, Guard::default()).unwrap());
        assert!(solve_cgw(&h, &bits("0"), 0, Guard::default()).unwrap());
    }

    #[test]
    fn cgw_inconsistent_rank_deficient() {
        let h = BitMat::parse_rows(&["00|11", "00|11"]).unwrap();
        for t in 0..=4 {
            assert!(!solve_cgw(&h, &bits("10"), t, Guard::default()).unwrap());
        }
        assert!(solve_cgw(&h, &bits("11"), 1, Guard::default()).unwrap());
    }

    #[test]
    fn cgw_rejects_anticommuting_rows() {
        let h = BitMat::parse_rows(&["1|0", "0|1"]).unwrap();
        assert!(solve_cgw(&h, &bits("00"), 1, Guard::default()).is_err());
    }

    #[test]
    fn qbdd_single_qubit_tie_break() {
        let inst = DecodeInstance::new(code(&["0|1"]), bits("1")).with_t(1);
        let out = solve_qbdd(&inst, Guard::default()).unwrap();
        assert_eq!(out.found(), Some(&sv("1|0")));
        assert_eq!(out.ties, 2);
        assert_eq!(
            enumerate_qbdd_solutions(&inst, Guard::default()).unwrap(),
            vec![sv("1|0"), sv("1|1")]
        );
        let strict = inst.clone().with_t(0);
        assert_eq!(solve_qbdd(&strict, Guard::default()).unwrap().outcome, Outcome::Failure);
    }

    #[test]
    fn qbdd_zero_syndrome() {
        let h = five_qubit();
        for t in 0..3 {
            let inst = DecodeInstance::new(h.clone(), BitVec::zeros(4)).with_t(t);
            assert_eq!(solve_qbdd(&inst, Guard::default()).unwrap().found(), Some(&SympVec::zeros(5)));
        }
        let inst = DecodeInstance::new(h, BitVec::zeros(4)).with_t(0);
        assert_eq!(enumerate_qbdd_solutions(&inst, Guard::default()).unwrap(), vec![SympVec::zeros(5)]);
    }

    #[test]
    fn qbdd_five_qubit_corrects_single_errors() {
        let h = five_qubit();
        for j in 0..5 {
            for letter in ["X", "Y", "Z"] {
                let mut s = "I".repeat(5);
                s.replace_range(j..j + 1, letter);
                let err = phi(&s.parse::<PauliString>().unwrap());
                let inst = DecodeInstance::new(h.clone(), h.syndrome(&err).unwrap()).with_t(1);
                let out = solve_qbdd(&inst, Guard::default()).unwrap();
                let e = out.found().unwrap();
                assert_eq!(e.gw(), 1);
                assert!(same_correction_effect(&h, e, &err).unwrap());
                let all = enumerate_qbdd_solutions(&inst, Guard::default()).unwrap();
                for a in &all {
                    for b in &all {
                        assert!(same_correction_effect(&h, a, b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn qbdd_requires_bound_and_full_rank() {
        let inst = DecodeInstance::new(code(&["0|1"]), bits("1"));
        assert_eq!(solve_qbdd(&inst, Guard::default()).unwrap_err(), Error::MissingField("t"));
        let deficient = validate_check_matrix(BitMat::parse_rows(&["00|11", "00|11"]).unwrap(), false).unwrap();
        let inst = DecodeInstance::new(deficient, bits("11")).with_t(2);
        assert!(matches!(solve_qbdd(&inst, Guard::default()), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn qmld_examples() {
        let h = code(&["0|1"]);
        let out = solve_qmld(&h, &bits("1"), Guard::default()).unwrap();
        assert_eq!((out.found(), out.weight), (Some(&sv("1|0")), Some(1)));

        let hx = code(&["11|00"]);
        let out = solve_qmld(&hx, &bits("1"), Guard::default()).unwrap();
        assert_eq!(out.found(), Some(&sv("00|01")));
        assert_eq!(out.weight, Some(1));
        assert_eq!(out.enumerated, 8);
        assert_eq!(brute_solutions(&hx, &bits("1")).len(), 8);

        let out = solve_qmld(&five_qubit(), &BitVec::zeros(4), Guard::default()).unwrap();
        assert_eq!((out.found(), out.weight), (Some(&SympVec::zeros(5)), Some(0)));
    }

    #[test]
    fn qmld_matches_exhaustive_minimum() {
        let h = five_qubit();
        for raw in 0..16 {
            let s = BitVec::from_raw(raw, 4);
            let sols = brute_solutions(&h, &s);
            let min_w = sols.iter().map(SympVec::gw).min().unwrap();
            let lex_min = sols.iter().filter(|u| u.gw() == min_w).min().unwrap();
            let out = solve_qmld(&h, &s, Guard::default()).unwrap();
            assert_eq!(out.weight, Some(min_w));
            assert_eq!(out.found(), Some(lex_min));
            assert_eq!(out.ties, sols.iter().filter(|u| u.gw() == min_w).count() as u64);
        }
    }

    #[test]
    fn qmepd_examples() {
        let e = DepolarizingParam::from_ratio(3, 7).unwrap();
        let h = code(&["0|1"]);
        let out = solve_qmepd(&h, &bits("1"), &e, Guard::default()).unwrap();
        assert_eq!(out.found(), Some(&sv("1|0")));
        assert_eq!(out.alpha.unwrap().value(), &BigRational::new(2.into(), 7.into()));

        let hx = code(&["11|00"]);
        let out = solve_qmepd(&hx, &bits("1"), &e, Guard::default()).unwrap();
        assert_eq!(out.found(), Some(&sv("00|01")));
        assert_eq!(out.alpha.unwrap().value(), &BigRational::new(5.into(), 49.into()));
        assert_eq!(out.ties, 4);
    }

    #[test]
    fn qmepd_uniform_channel_picks_smallest_solution() {
        let e = DepolarizingParam::from_ratio(3, 4).unwrap();
        let h = five_qubit();
        for raw in 0..16 {
            let s = BitVec::from_raw(raw, 4);
            let out = solve_qmepd(&h, &s, &e, Guard::default()).unwrap();
            let smallest = brute_solutions(&h, &s).into_iter().min().unwrap();
            assert_eq!(out.found(), Some(&smallest));
            assert_eq!(out.ties, 4); // 4^{n−m}
            // 2^m / 4^n
            assert_eq!(out.alpha.unwrap().value(), &BigRational::new(16.into(), 1024.into()));
        }
    }

    #[test]
    fn qmepd_alpha_matches_coset_prob() {
        let e = DepolarizingParam::from_ratio(1, 10).unwrap();
        let h = five_qubit();
        for raw in 0..16 {
            let s = BitVec::from_raw(raw, 4);
            let out = solve_qmepd(&h, &s, &e, Guard::default()).unwrap();
            let v = out.found().unwrap();
            assert_eq!(h.syndrome(v).unwrap(), s);
            assert_eq!(out.alpha.clone().unwrap(), coset_prob(&h, v, &e, Guard::default()).unwrap());
        }
    }

    #[test]
    fn guard_is_enforced() {
        let h = code(&["0000000000000|1000000000000"]);
        let s = bits("1");
        assert!(matches!(
            solve_qmld(&h, &s, Guard::new(10).unwrap()),
            Err(Error::TooLarge { exponent: 25, guard: 10 })
        ));
    }

    #[test]
    fn decoders_are_deterministic() {
        let h = five_qubit();
        let e = DepolarizingParam::from_ratio(1, 5).unwrap();
        let s = bits("1011");
        assert_eq!(solve_qmld(&h, &s, Guard::default()), solve_qmld(&h, &s, Guard::default()));
        assert_eq!(
            solve_qmepd(&h, &s, &e, Guard::default()),
            solve_qmepd(&h, &s, &e, Guard::default())
        );
    }
}
