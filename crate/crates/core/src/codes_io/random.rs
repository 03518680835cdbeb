//! Seeded random check matrices.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, BitMat, BitVec, RowSpace};
use crate::pauli::{validate_check_matrix, CheckMatrix, MAX_QUBITS};

/// Draws allowed per row before giving up.
const RETRIES: usize = 256;

/// Shape of a random code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomCode {
    /// `[O|H_Z]` with `m` rows.
    ZOnly { n: usize, m: usize },
    /// `[H_X|O]` with `m` rows.
    XOnly { n: usize, m: usize },
    /// `H_X` (`mx` rows) stacked over `H_Z` (`mz` rows) with `H_X H_Z^T = O`.
    Css { n: usize, mx: usize, mz: usize },
    /// Any self-orthogonal matrix with `m` rows.
    General { n: usize, m: usize },
}

impl RandomCode {
    pub fn n(&self) -> usize {
        match *self {
            RandomCode::ZOnly { n, .. }
            | RandomCode::XOnly { n, .. }
            | RandomCode::Css { n, .. }
            | RandomCode::General { n, .. } => n,
        }
    }

    pub fn m(&self) -> usize {
        match *self {
            RandomCode::ZOnly { m, .. } | RandomCode::XOnly { m, .. } | RandomCode::General { m, .. } => m,
            RandomCode::Css { mx, mz, .. } => mx + mz,
        }
    }
}

/// Kind names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    ZOnly,
    XOnly,
    Css,
    General,
}

impl FromStr for RandomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "z_only" => Ok(RandomKind::ZOnly),
            "x_only" => Ok(RandomKind::XOnly),
            "css" => Ok(RandomKind::Css),
            "general" => Ok(RandomKind::General),
            _ => Err(Error::UnknownCode(s.to_owned())),
        }
    }
}

impl fmt::Display for RandomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RandomKind::ZOnly => "z_only",
            RandomKind::XOnly => "x_only",
            RandomKind::Css => "css",
            RandomKind::General => "general",
        })
    }
}

/// `count` independent vectors from `span(spanning)`, each a uniform random
/// combination.
fn independent_from(
    rng: &mut ChaCha8Rng,
    spanning: &[BitVec],
    len: usize,
    count: usize,
) -> Result<Vec<BitVec>> {
    let mut space = RowSpace::new(len);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let row = (0..RETRIES)
            .map(|_| {
                spanning
                    .iter()
                    .filter(|_| rng.gen::<bool>())
                    .fold(BitVec::zeros(len), |acc, v| acc ^ *v)
            })
            .find(|v| space.insert(*v))
            .ok_or_else(|| Error::GenerationFailed(format!("no independent row after {RETRIES} draws")))?;
        out.push(row);
    }
    Ok(out)
}

fn units(len: usize) -> Vec<BitVec> {
    (0..len).map(|i| BitVec::unit(len, i)).collect()
}

/// Places `half` (length `n`) in the x or z half of a `2n` vector.
fn embed(half: &BitVec, n: usize, z_side: bool) -> BitVec {
    let shift = if z_side { n } else { 0 };
    BitVec::from_raw(half.raw() << shift, 2 * n)
}

/// A full-rank, self-orthogonal check matrix of the requested shape,
/// determined by `seed`.
pub fn gen_random(code: RandomCode, seed: u64) -> Result<CheckMatrix> {
    let n = code.n();
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::GenerationFailed(format!("n must lie in 1..={MAX_QUBITS}, got {n}")));
    }
    if code.m() > n {
        return Err(Error::GenerationFailed(format!("{} independent rows do not fit {n} qubits", code.m())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<BitVec> = match code {
        RandomCode::ZOnly { m, .. } | RandomCode::XOnly { m, .. } => {
            let z_side = matches!(code, RandomCode::ZOnly { .. });
            independent_from(&mut rng, &units(n), n, m)?
                .iter()
                .map(|h| embed(h, n, z_side))
                .collect()
        }
        RandomCode::Css { mx, mz, .. } => {
            let hx = independent_from(&mut rng, &units(n), n, mx)?;
            let hx_mat = BitMat::from_rows(2 * n, hx.iter().map(|h| embed(h, n, false)).collect())?;
            // The z halves of the symplectic dual of [H_X|O] span {z : H_X z^T = 0}.
            let dual_z: Vec<BitVec> = kernel_basis(&hx_mat)?.iter().map(|v| v.slice(n, 2 * n)).collect();
            let hz = independent_from(&mut rng, &dual_z, n, mz)?;
            hx.iter().map(|h| embed(h, n, false)).chain(hz.iter().map(|h| embed(h, n, true))).collect()
        }
        RandomCode::General { m, .. } => {
            let mut rows: Vec<BitVec> = Vec::with_capacity(m);
            let mut space = RowSpace::new(2 * n);
            for _ in 0..m {
                let dual = kernel_basis(&BitMat::from_rows(2 * n, rows.clone())?)?;
                let row = (0..RETRIES)
                    .map(|_| dual.iter().filter(|_| rng.gen::<bool>()).fold(BitVec::zeros(2 * n), |a, v| a ^ *v))
                    .find(|v| space.insert(*v))
                    .ok_or_else(|| Error::GenerationFailed(format!("no independent row after {RETRIES} draws")))?;
                rows.push(row);
            }
            rows
        }
    };
    validate_check_matrix(BitMat::from_rows(2 * n, rows)?, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_validity() {
        for seed in 0..20 {
            let z = gen_random(RandomCode::ZOnly { n: 6, m: 4 }, seed).unwrap();
            assert_eq!((z.m(), z.n(), z.rank()), (4, 6, 4));
            assert!(z.matrix().columns(0, 6).is_zero());

            let x = gen_random(RandomCode::XOnly { n: 5, m: 5 }, seed).unwrap();
            assert!(x.matrix().columns(5, 10).is_zero());
            assert_eq!(x.rank(), 5);

            let css = gen_random(RandomCode::Css { n: 7, mx: 3, mz: 3 }, seed).unwrap();
            assert_eq!(css.rank(), 6);
            let hx = css.matrix().select_rows(&[0, 1, 2]).columns(0, 7);
            let hz = css.matrix().select_rows(&[3, 4, 5]).columns(7, 14);
            assert!(hx.mul(&hz.transpose().unwrap()).unwrap().is_zero());

            let g = gen_random(RandomCode::General { n: 5, m: 4 }, seed).unwrap();
            assert_eq!(g.rank(), 4);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let code = RandomCode::General { n: 6, m: 3 };
        assert_eq!(gen_random(code, 9).unwrap(), gen_random(code, 9).unwrap());
        let z = RandomCode::ZOnly { n: 8, m: 7 };
        assert_ne!(gen_random(z, 1).unwrap(), gen_random(z, 2).unwrap());
    }

    #[test]
    fn unreachable_shapes_fail() {
        assert!(matches!(
            gen_random(RandomCode::ZOnly { n: 3, m: 4 }, 0),
            Err(Error::GenerationFailed(_))
        ));
        assert!(matches!(
            gen_random(RandomCode::Css { n: 4, mx: 2, mz: 3 }, 0),
            Err(Error::GenerationFailed(_))
        ));
        assert!(gen_random(RandomCode::General { n: 0, m: 0 }, 0).is_err());
    }

    #[test]
    fn kind_names() {
        for k in ["z_only", "x_only", "css", "general"] {
            assert_eq!(k.parse::<RandomKind>().unwrap().to_string(), k);
        }
        assert!("toric".parse::<RandomKind>().is_err());
    }
}
