use crate::error::{Error, Result};
use crate::gf2::{self, complement_basis, kernel_basis, span_for_each, BitMat, RowSpace, MAX_BITS};
use crate::guard::Guard;

use super::{gw_raw, SympVec};

/// A validated check matrix: an `m × 2n` binary matrix whose rows pairwise
/// have zero symplectic product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckMatrix {
    h: BitMat,
    n: usize,
    rank: usize,
    full_rank: bool,
}

/// Checks self-orthogonality and, when asked, full row rank.
pub fn validate_check_matrix(h: BitMat, require_full_rank: bool) -> Result<CheckMatrix> {
    if !h.ncols().is_multiple_of(2) {
        return Err(Error::OddLength(h.ncols()));
    }
    if h.ncols() == 0 {
        return Err(Error::Shape("check matrix needs at least one qubit".into()));
    }
    if h.nrows() > MAX_BITS {
        return Err(Error::CapacityExceeded(h.nrows()));
    }
    let n = h.ncols() / 2;
    for i in 0..h.nrows() {
        for j in i + 1..h.nrows() {
            if gf2::symplectic_raw(h.row(i).raw(), h.row(j).raw(), n) {
                return Err(Error::SelfOrthogonalityViolation(i, j));
            }
        }
    }
    let rank = gf2::rank(&h);
    if require_full_rank && rank != h.nrows() {
        return Err(Error::RankDeficient { rank, rows: h.nrows() });
    }
    Ok(CheckMatrix { h, n, rank, full_rank: require_full_rank })
}

impl CheckMatrix {
    pub fn matrix(&self) -> &BitMat {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows.
    pub fn m(&self) -> usize {
        self.h.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of logical qubits `n − rank(H)`.
    pub fn k(&self) -> usize {
        self.n - self.rank
    }

    /// Whether full row rank was required (and verified) at validation.
    pub fn full_rank(&self) -> bool {
        self.full_rank
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank == self.m()
    }

    pub fn row(&self, i: usize) -> SympVec {
        SympVec::new(*self.h.row(i)).expect("even width")
    }

    pub fn syndrome(&self, e: &SympVec) -> Result<gf2::BitVec> {
        gf2::syndrome_map(&self.h, e.bits())
    }
}

/// Summary of a code's parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeProfile {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub d_prime: Option<usize>,
    pub degenerate: Option<bool>,
}

/// Minimum distance: the smallest generalized weight over the symplectic
/// dual minus the row space.
///
/// Enumerates the dual as `span(logicals) + Row(H)` and skips the cosets with
/// a zero logical part, so exactly `2^{2n−r} − 2^r` vectors are visited.
pub fn min_distance(h: &CheckMatrix, guard: Guard) -> Result<usize> {
    if h.k() == 0 {
        return Err(Error::ZeroLogicalQubits);
    }
    let n = h.n();
    guard.check(2 * n - h.rank())?;
    let rows = RowSpace::from_matrix(&h.h);
    let kernel = kernel_basis(&h.h)?;
    let logicals: Vec<u128> = complement_basis(&rows, &kernel).iter().map(|v| v.raw()).collect();
    let stabilizers: Vec<u128> = rows.basis().map(|v| v.raw()).collect();

    let mut best = usize::MAX;
    span_for_each(0, &logicals, |l| {
        if l != 0 {
            span_for_each(l, &stabilizers, |v| best = best.min(gw_raw(v, n)));
        }
    });
    Ok(best)
}

/// Smallest generalized weight over the nonzero symplectic dual (the full
/// normalizer, stabilizers included).
pub fn normalizer_min_gw(h: &CheckMatrix, guard: Guard) -> Result<usize> {
    let n = h.n();
    guard.check(2 * n - h.rank())?;
    let kernel: Vec<u128> = kernel_basis(&h.h)?.iter().map(|v| v.raw()).collect();
    let mut best = usize::MAX;
    span_for_each(0, &kernel, |v| {
        if v != 0 {
            best = best.min(gw_raw(v, n));
        }
    });
    Ok(best)
}

/// Degeneracy under bounded-distance decoding, with correctable set
/// `{E : w(E) ≤ ⌊(d−1)/2⌋}`: the code is called degenerate when the minimum
/// distance equals the minimum normalizer weight.
pub fn is_degenerate(h: &CheckMatrix, guard: Guard) -> Result<bool> {
    Ok(min_distance(h, guard)? == normalizer_min_gw(h, guard)?)
}

pub fn profile(h: &CheckMatrix, guard: Guard) -> Result<CodeProfile> {
    let d_prime = normalizer_min_gw(h, guard)?;
    let d = match min_distance(h, guard) {
        Ok(d) => Some(d),
        Err(Error::ZeroLogicalQubits) => None,
        Err(e) => return Err(e),
    };
    Ok(CodeProfile {
        n: h.n(),
        k: h.k(),
        d,
        d_prime: Some(d_prime),
        degenerate: d.map(|d| d == d_prime),
    })
}

/// Whether `e1` and `e2` differ by an element of the row space, i.e. their
/// Pauli preimages act identically on every code state.
pub fn same_correction_effect(h: &CheckMatrix, e1: &SympVec, e2: &SympVec) -> Result<bool> {
    e1.bits().check_len(e2.bits())?;
    gf2::row_space_contains(&h.h, &(*e1 ^ *e2).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{phi, PauliString};

    fn from_paulis(gens: &[&str]) -> CheckMatrix {
        let rows = gens
            .iter()
            .map(|g| *phi(&g.parse::<PauliString>().unwrap()).bits())
            .collect::<Vec<_>>();
        let cols = rows[0].len();
        validate_check_matrix(BitMat::from_rows(cols, rows).unwrap(), true).unwrap()
    }

    fn five_qubit() -> CheckMatrix {
        from_paulis(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"])
    }

    fn steane() -> CheckMatrix {
        let hamming = ["1110100", "1101010", "1011001"];
        let mut rows: Vec<String> = hamming.iter().map(|r| format!("{r}0000000")).collect();
        rows.extend(hamming.iter().map(|r| format!("0000000{r}")));
        let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
        validate_check_matrix(BitMat::parse_rows(&refs).unwrap(), true).unwrap()
    }

    /// Exhaustive minimum over the dual minus the row space, by direct scan
    /// of all `4^n` vectors.
    fn brute_distances(h: &CheckMatrix) -> (usize, usize) {
        let n = h.n();
        let mut d = usize::MAX;
        let mut d_prime = usize::MAX;
        for raw in 1..(1u128 << (2 * n)) {
            let v = SympVec::from_raw(raw, n);
            if !h.syndrome(&v).unwrap().is_zero() {
                continue;
            }
            d_prime = d_prime.min(v.gw());
            if !gf2::row_space_contains(h.matrix(), v.bits()).unwrap() {
                d = d.min(v.gw());
            }
        }
        (d, d_prime)
    }

    #[test]
    fn validation() {
        let z = validate_check_matrix(BitMat::parse_rows(&["0|1"]).unwrap(), true).unwrap();
        assert_eq!((z.n(), z.m(), z.k()), (1, 1, 0));
        assert!(z.full_rank());

        from_paulis(&["XX", "ZZ"]);

        let err = validate_check_matrix(BitMat::parse_rows(&["1|0", "0|1"]).unwrap(), false);
        assert_eq!(err.unwrap_err(), Error::SelfOrthogonalityViolation(0, 1));

        let dup = BitMat::parse_rows(&["00|11", "00|11"]).unwrap();
        assert_eq!(
            validate_check_matrix(dup.clone(), true).unwrap_err(),
            Error::RankDeficient { rank: 1, rows: 2 }
        );
        assert_eq!(validate_check_matrix(dup, false).unwrap().rank(), 1);
        assert!(validate_check_matrix(BitMat::parse_rows(&["101"]).unwrap(), false).is_err());
    }

    #[test]
    fn rows_have_zero_syndrome() {
        for code in [five_qubit(), steane()] {
            for i in 0..code.m() {
                assert!(code.syndrome(&code.row(i)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn five_qubit_code() {
        let code = five_qubit();
        assert_eq!(brute_distances(&code), (3, 3));
        assert_eq!(min_distance(&code, Guard::default()).unwrap(), 3);
        assert_eq!(normalizer_min_gw(&code, Guard::default()).unwrap(), 3);
        assert!(is_degenerate(&code, Guard::default()).unwrap());
    }

    #[test]
    fn steane_code() {
        let code = steane();
        assert_eq!(brute_distances(&code), (3, 3));
        assert_eq!(min_distance(&code, Guard::default()).unwrap(), 3);
        assert_eq!(normalizer_min_gw(&code, Guard::default()).unwrap(), 3);
        let p = profile(&code, Guard::default()).unwrap();
        assert_eq!(p, CodeProfile { n: 7, k: 1, d: Some(3), d_prime: Some(3), degenerate: Some(true) });
    }

    #[test]
    fn single_z_stabilizer() {
        let code = from_paulis(&["ZI"]);
        assert_eq!(brute_distances(&code), (1, 1));
        assert_eq!(min_distance(&code, Guard::default()).unwrap(), 1);
        assert_eq!(normalizer_min_gw(&code, Guard::default()).unwrap(), 1);
    }

    #[test]
    fn weight_one_generator_bounds_normalizer_weight() {
        // ZII plus a weight-two stabilizer on the other qubits.
        let code = from_paulis(&["ZII", "IXX"]);
        assert_eq!(normalizer_min_gw(&code, Guard::default()).unwrap(), 1);
        let (d, d_prime) = brute_distances(&code);
        assert_eq!(min_distance(&code, Guard::default()).unwrap(), d);
        assert_eq!(d_prime, 1);
        assert_eq!(is_degenerate(&code, Guard::default()).unwrap(), d == 1);
    }

    #[test]
    fn zero_logical_qubits() {
        let code = from_paulis(&["ZI", "IZ"]);
        assert_eq!(min_distance(&code, Guard::default()).unwrap_err(), Error::ZeroLogicalQubits);
        let p = profile(&code, Guard::default()).unwrap();
        assert_eq!(p.d, None);
        assert_eq!(p.degenerate, None);
    }

    #[test]
    fn guard_rejects_large_codes() {
        let code = from_paulis(&["ZZIIIIIIIIIIIIII"]);
        assert!(matches!(
            min_distance(&code, Guard::new(20).unwrap()),
            Err(Error::TooLarge { exponent: 31, guard: 20 })
        ));
    }

    #[test]
    fn same_effect_examples() {
        let code = five_qubit();
        let e1: SympVec = "10000|00000".parse().unwrap();
        assert!(same_correction_effect(&code, &e1, &e1).unwrap());
        assert!(same_correction_effect(&code, &e1, &(e1 ^ code.row(2))).unwrap());
        let e2: SympVec = "01000|00000".parse().unwrap();
        assert!(!same_correction_effect(&code, &e1, &e2).unwrap());
    }
}
