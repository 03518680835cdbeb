//! Bit-packed linear algebra over GF(2) and the symplectic form on `GF(2)^{2n}`.
//!
//! Vectors of length `2n` are laid out as `(x | z)`: entries `0..n` hold the
//! x-part and `n..2n` the z-part. The symplectic form is evaluated by swapping
//! halves; the `2n × 2n` form matrix is never built.

mod bitmat;
mod bitvec;

pub use bitmat::BitMat;
pub use bitvec::{BitVec, MAX_BITS};

pub(crate) use bitvec::low_mask;

use crate::error::{Error, Result};

/// Largest basis accepted by [`enumerate_coset`].
pub const MAX_COSET_BASIS: usize = 30;

/// Reduced row echelon form of a matrix together with the transform that
/// produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    /// The reduced row echelon form; zero rows sit at the bottom.
    pub r: BitMat,
    /// Invertible `m × m` matrix with `E · M = R`.
    pub e: BitMat,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows of `R`.
    pub pivot_cols: Vec<usize>,
}

/// Gauss-Jordan elimination, scanning columns left to right.
///
/// # Panics
/// Panics if `m` has more than [`MAX_BITS`] rows (the transform would not fit).
pub fn rref(m: &BitMat) -> RrefResult {
    let rows = m.nrows();
    assert!(rows <= MAX_BITS, "rref: {rows} rows exceed {MAX_BITS}");
    let mut r = m.rows().to_vec();
    let mut e = BitMat::identity(rows).into_rows();
    let mut pivot_cols = Vec::new();
    let mut next = 0;
    for col in 0..m.ncols() {
        if next == rows {
            break;
        }
        let Some(found) = (next..rows).find(|&i| r[i].get(col)) else {
            continue;
        };
        r.swap(found, next);
        e.swap(found, next);
        let (pr, pe) = (r[next], e[next]);
        for i in 0..rows {
            if i != next && r[i].get(col) {
                r[i] ^= pr;
                e[i] ^= pe;
            }
        }
        pivot_cols.push(col);
        next += 1;
    }
    RrefResult {
        r: BitMat::from_rows(m.ncols(), r).expect("row widths preserved"),
        e: BitMat::from_rows(rows, e).expect("square transform"),
        rank: next,
        pivot_cols,
    }
}

pub fn rank(m: &BitMat) -> usize {
    let mut space = RowSpace::new(m.ncols());
    m.rows().iter().filter(|r| space.insert(**r)).count()
}

#[inline]
pub(crate) fn symplectic_raw(u: u128, v: u128, n: usize) -> bool {
    let mask = low_mask(n);
    let (ux, uz) = (u & mask, u >> n);
    let (vx, vz) = (v & mask, v >> n);
    ((ux & vz) ^ (uz & vx)).count_ones() & 1 == 1
}

/// Symplectic inner product `u Λ v^T = Σ_j (x_j z'_j + z_j x'_j) mod 2`.
///
/// It vanishes exactly when the Pauli operators with images `u` and `v`
/// commute.
pub fn symplectic_product(u: &BitVec, v: &BitVec) -> Result<bool> {
    u.check_len(v)?;
    if !u.len().is_multiple_of(2) {
        return Err(Error::OddLength(u.len()));
    }
    Ok(symplectic_raw(u.raw(), v.raw(), u.len() / 2))
}

fn check_symplectic_width(h: &BitMat, len: usize) -> Result<()> {
    if !h.ncols().is_multiple_of(2) {
        return Err(Error::OddLength(h.ncols()));
    }
    if h.ncols() != len {
        return Err(Error::DimensionMismatch { expected: h.ncols(), found: len });
    }
    Ok(())
}

/// Syndrome `e Λ H^T`: bit `i` is the symplectic product of `e` with row `i`.
pub fn syndrome_map(h: &BitMat, e: &BitVec) -> Result<BitVec> {
    check_symplectic_width(h, e.len())?;
    let n = h.ncols() / 2;
    let mut s = BitVec::try_zeros(h.nrows())?;
    for (i, row) in h.rows().iter().enumerate() {
        s.set(i, symplectic_raw(e.raw(), row.raw(), n));
    }
    Ok(s)
}

/// Rows of `H` with halves swapped: the ordinary matrix of `e ↦ e Λ H^T`.
fn syndrome_operator(h: &BitMat) -> BitMat {
    h.swap_halves().expect("even width checked by caller")
}

/// A particular solution of `u Λ H^T = s`, or `None` when `s` lies outside
/// the image of the syndrome map.
pub fn solve_syndrome(h: &BitMat, s: &BitVec) -> Result<Option<BitVec>> {
    if !h.ncols().is_multiple_of(2) {
        return Err(Error::OddLength(h.ncols()));
    }
    if s.len() != h.nrows() {
        return Err(Error::DimensionMismatch { expected: h.nrows(), found: s.len() });
    }
    let red = rref(&syndrome_operator(h));
    let transformed = red.e.mul_vec(s)?;
    if (red.rank..h.nrows()).any(|i| transformed.get(i)) {
        return Ok(None);
    }
    let mut u = BitVec::zeros(h.ncols());
    for (k, &col) in red.pivot_cols.iter().enumerate() {
        u.set(col, transformed.get(k));
    }
    Ok(Some(u))
}

/// Basis of the symplectic dual `{v : v Λ H^T = 0}`; it has `2n − rank(H)`
/// elements.
pub fn kernel_basis(h: &BitMat) -> Result<Vec<BitVec>> {
    if !h.ncols().is_multiple_of(2) {
        return Err(Error::OddLength(h.ncols()));
    }
    let red = rref(&syndrome_operator(h));
    let width = h.ncols();
    let mut is_pivot = vec![false; width];
    for &c in &red.pivot_cols {
        is_pivot[c] = true;
    }
    let basis = (0..width)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = BitVec::unit(width, f);
            for (k, &p) in red.pivot_cols.iter().enumerate() {
                if red.r.get(k, f) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect();
    Ok(basis)
}

pub fn row_space_contains(h: &BitMat, v: &BitVec) -> Result<bool> {
    if v.len() != h.ncols() {
        return Err(Error::DimensionMismatch { expected: h.ncols(), found: v.len() });
    }
    Ok(RowSpace::from_matrix(h).contains(v))
}

/// A subspace held as a fully reduced echelon basis.
///
/// Each basis vector has a distinct pivot (its first set entry) and is zero
/// at every other pivot. Reducing a vector by the basis yields the
/// lexicographically smallest element of its coset.
#[derive(Clone, Debug)]
pub struct RowSpace {
    len: usize,
    basis: Vec<(usize, BitVec)>,
}

impl RowSpace {
    pub fn new(len: usize) -> Self {
        Self { len, basis: Vec::new() }
    }

    pub fn from_matrix(m: &BitMat) -> Self {
        let mut space = Self::new(m.ncols());
        for r in m.rows() {
            space.insert(*r);
        }
        space
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &BitVec> {
        self.basis.iter().map(|(_, b)| b)
    }

    /// Lexicographically smallest element of `v + span`.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut w = *v;
        for (p, b) in &self.basis {
            if w.get(*p) {
                w ^= *b;
            }
        }
        w
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns false if it was already contained.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len, "row space width mismatch");
        let w = self.reduce(&v);
        let Some(p) = w.first_one() else {
            return false;
        };
        for (_, b) in &mut self.basis {
            if b.get(p) {
                *b ^= w;
            }
        }
        let at = self.basis.partition_point(|(q, _)| *q < p);
        self.basis.insert(at, (p, w));
        true
    }
}

/// Visits `base + span(basis)` in Gray-code order: the `i`-th visited
/// element is `base + Σ basis[j]` over the set bits `j` of `i ^ (i >> 1)`.
#[inline]
pub(crate) fn span_for_each(base: u128, basis: &[u128], mut visit: impl FnMut(u128)) {
    debug_assert!(basis.len() < 64);
    let mut cur = base;
    visit(cur);
    for i in 1..(1u64 << basis.len()) {
        cur ^= basis[i.trailing_zeros() as usize];
        visit(cur);
    }
}

/// Iterator over the affine space `v + span(basis)`.
#[derive(Clone, Debug)]
pub struct CosetIter {
    current: BitVec,
    basis: Vec<BitVec>,
    index: u64,
    total: u64,
}

impl Iterator for CosetIter {
    type Item = BitVec;

    fn next(&mut self) -> Option<BitVec> {
        if self.index == self.total {
            return None;
        }
        if self.index > 0 {
            self.current ^= self.basis[self.index.trailing_zeros() as usize];
        }
        self.index += 1;
        Some(self.current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.index) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for CosetIter {}

/// Every element of `v + span(basis)` exactly once, in Gray-code order.
pub fn enumerate_coset(v: &BitVec, basis: &[BitVec]) -> Result<CosetIter> {
    if basis.len() > MAX_COSET_BASIS {
        return Err(Error::TooLarge { exponent: basis.len(), guard: MAX_COSET_BASIS });
    }
    let mut space = RowSpace::new(v.len());
    for b in basis {
        v.check_len(b)?;
        if !space.insert(*b) {
            return Err(Error::DependentBasis);
        }
    }
    Ok(CosetIter { current: *v, basis: basis.to_vec(), index: 0, total: 1u64 << basis.len() })
}

/// Extends `span(base)` by vectors from `candidates`, returning the chosen
/// candidates: they span `span(base + candidates)` modulo `span(base)`.
pub(crate) fn complement_basis(base: &RowSpace, candidates: &[BitVec]) -> Vec<BitVec> {
    let mut space = base.clone();
    candidates.iter().copied().filter(|c| space.insert(*c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BitMat {
        let rows = (0..rows).map(|_| BitVec::from_raw(rng.gen(), cols)).collect();
        BitMat::from_rows(cols, rows).unwrap()
    }

    #[test]
    fn rref_identity_and_duplicates() {
        let id = BitMat::identity(2);
        let res = rref(&id);
        assert_eq!(res.r, id);
        assert_eq!(res.rank, 2);

        let dup = BitMat::parse_rows(&["11", "11"]).unwrap();
        let res = rref(&dup);
        assert_eq!(res.rank, 1);
        assert_eq!(res.r, BitMat::parse_rows(&["11", "00"]).unwrap());
    }

    #[test]
    fn rref_zero_matrix() {
        let z = BitMat::zeros(3, 5);
        let res = rref(&z);
        assert_eq!(res.rank, 0);
        assert_eq!(res.e, BitMat::identity(3));
        assert!(res.pivot_cols.is_empty());
    }

    #[test]
    fn rref_transform_reproduces_r() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = random_matrix(&mut rng, 4, 7);
            let res = rref(&m);
            assert_eq!(res.e.mul(&m).unwrap(), res.r);
            assert_eq!(rank(&res.e), 4, "E must be invertible");
            assert_eq!(res.rank, res.r.rows().iter().filter(|r| !r.is_zero()).count());
            assert_eq!(rank(&m), res.rank);
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&BitMat::identity(5)), 5);
        assert_eq!(rank(&BitMat::zeros(4, 6)), 0);
        assert_eq!(rank(&BitMat::parse_rows(&["11", "11"]).unwrap()), 1);
    }

    #[test]
    fn symplectic_single_qubit() {
        let x: BitVec = "10".parse().unwrap();
        let z: BitVec = "01".parse().unwrap();
        assert!(symplectic_product(&x, &z).unwrap());
        assert!(!symplectic_product(&x, &x).unwrap());
        let odd: BitVec = "101".parse().unwrap();
        assert!(symplectic_product(&odd, &odd).is_err());
        assert!(symplectic_product(&x, &"0110".parse().unwrap()).is_err());
    }

    #[test]
    fn syndrome_examples() {
        let h = BitMat::parse_rows(&["0|1"]).unwrap();
        assert_eq!(syndrome_map(&h, &"10".parse().unwrap()).unwrap().to_string(), "1");
        assert_eq!(syndrome_map(&h, &BitVec::zeros(2)).unwrap().to_string(), "0");
        assert!(syndrome_map(&h, &BitVec::zeros(4)).is_err());
    }

    /// Exhaustive scan of `GF(2)^{2n}` for vectors with the given syndrome.
    fn brute_solutions(h: &BitMat, s: &BitVec) -> Vec<BitVec> {
        (0..1u128 << h.ncols())
            .map(|raw| BitVec::from_raw(raw, h.ncols()))
            .filter(|u| syndrome_map(h, u).unwrap() == *s)
            .collect()
    }

    #[test]
    fn solve_syndrome_matches_exhaustive_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let m = rng.gen_range(1..=4);
            let h = random_matrix(&mut rng, m, 4);
            let s = BitVec::from_raw(rng.gen(), m);
            let sols = brute_solutions(&h, &s);
            match solve_syndrome(&h, &s).unwrap() {
                Some(u) => {
                    assert_eq!(syndrome_map(&h, &u).unwrap(), s);
                    assert!(sols.contains(&u));
                }
                None => assert!(sols.is_empty()),
            }
        }
    }

    #[test]
    fn solve_zero_syndrome_gives_zero() {
        let h = BitMat::parse_rows(&["1100|0011", "0000|1111"]).unwrap();
        assert_eq!(solve_syndrome(&h, &BitVec::zeros(2)).unwrap(), Some(BitVec::zeros(8)));
    }

    #[test]
    fn kernel_single_z() {
        let h = BitMat::parse_rows(&["0|1"]).unwrap();
        let basis = kernel_basis(&h).unwrap();
        assert_eq!(basis, vec!["01".parse::<BitVec>().unwrap()]);
        assert_eq!(brute_solutions(&h, &BitVec::zeros(1)).len(), 2);
        assert_eq!(kernel_basis(&BitMat::zeros(2, 6)).unwrap().len(), 6);
    }

    #[test]
    fn kernel_rank_nullity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let h = random_matrix(&mut rng, 3, 8);
            let basis = kernel_basis(&h).unwrap();
            assert_eq!(basis.len() + rank(&h), 8);
            for v in &basis {
                assert!(syndrome_map(&h, v).unwrap().is_zero());
            }
            assert_eq!(rank(&BitMat::from_rows(8, basis).unwrap()), 8 - rank(&h));
        }
    }

    #[test]
    fn row_space_membership_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = rng.gen_range(1..=6);
            let h = random_matrix(&mut rng, m, 10);
            let mut span = BTreeSet::new();
            for mask in 0u32..(1 << m) {
                let v = (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .fold(BitVec::zeros(10), |acc, i| acc ^ *h.row(i));
                span.insert(v);
            }
            for row in h.rows() {
                assert!(row_space_contains(&h, row).unwrap());
            }
            for _ in 0..40 {
                let v = BitVec::from_raw(rng.gen(), 10);
                assert_eq!(row_space_contains(&h, &v).unwrap(), span.contains(&v));
                let mut stacked = h.clone();
                stacked.push_row(v).unwrap();
                assert_eq!(span.contains(&v), rank(&stacked) == rank(&h));
            }
        }
    }

    #[test]
    fn reduce_gives_lexicographic_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let h = random_matrix(&mut rng, 3, 6);
            let space = RowSpace::from_matrix(&h);
            let v = BitVec::from_raw(rng.gen(), 6);
            let basis: Vec<_> = space.basis().copied().collect();
            let min = enumerate_coset(&v, &basis).unwrap().min().unwrap();
            assert_eq!(space.reduce(&v), min);
        }
    }

    #[test]
    fn coset_enumeration() {
        let v: BitVec = "101".parse().unwrap();
        assert_eq!(enumerate_coset(&v, &[]).unwrap().collect::<Vec<_>>(), vec![v]);

        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 30 {
            let h = random_matrix(&mut rng, 3, 6);
            if rank(&h) < 3 {
                continue;
            }
            let v = BitVec::from_raw(rng.gen(), 6);
            let got: Vec<_> = enumerate_coset(&v, h.rows()).unwrap().collect();
            let brute: BTreeSet<_> = (0u32..8)
                .map(|mask| {
                    (0..3)
                        .filter(|i| mask >> i & 1 == 1)
                        .fold(v, |acc, i| acc ^ *h.row(i))
                })
                .collect();
            assert_eq!(got.len(), 8);
            assert_eq!(got.iter().copied().collect::<BTreeSet<_>>(), brute);
            checked += 1;
        }
    }

    #[test]
    fn coset_guards() {
        let dup = vec![BitVec::unit(4, 0), BitVec::unit(4, 0)];
        assert_eq!(enumerate_coset(&BitVec::zeros(4), &dup).unwrap_err(), Error::DependentBasis);
        let big: Vec<_> = (0..31).map(|i| BitVec::unit(40, i)).collect();
        assert!(matches!(
            enumerate_coset(&BitVec::zeros(40), &big),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn self_orthogonal_rows_have_zero_syndrome() {
        // X⊗X and Z⊗Z commute.
        let h = BitMat::parse_rows(&["11|00", "00|11"]).unwrap();
        for mask in 0..4u32 {
            let v = (0..2)
                .filter(|i| mask >> i & 1 == 1)
                .fold(BitVec::zeros(4), |acc, i| acc ^ *h.row(i));
            assert!(syndrome_map(&h, &v).unwrap().is_zero());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::{any, prop_assert, prop_assert_eq, proptest, Strategy};

        fn sympvec(n: usize) -> impl Strategy<Value = BitVec> {
            any::<u128>().prop_map(move |raw| BitVec::from_raw(raw, 2 * n))
        }

        proptest! {
            #[test]
            fn form_is_alternating_and_symmetric(n in 1usize..=64, seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let u = BitVec::from_raw(rng.gen(), 2 * n);
                let v = BitVec::from_raw(rng.gen(), 2 * n);
                prop_assert!(!symplectic_product(&u, &u).unwrap());
                prop_assert_eq!(symplectic_product(&u, &v).unwrap(), symplectic_product(&v, &u).unwrap());
            }

            #[test]
            fn form_is_bilinear(u in sympvec(9), v in sympvec(9), w in sympvec(9)) {
                let lhs = symplectic_product(&(u ^ v), &w).unwrap();
                let rhs = symplectic_product(&u, &w).unwrap() ^ symplectic_product(&v, &w).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
