//! The block lower-triangular affine group `BLTA(s, n)`: exact order,
//! uniform sampling and the `P·L·P·L·P` factorization.

use num_bigint::BigUint;
use rand::Rng;

use super::affine::AffineAutomorphism;
use super::blocks::BlockStructure;
use super::matrix::BinaryMatrix;
use crate::error::{Error, Result};

fn pow2(e: usize) -> BigUint {
    BigUint::from(1u32) << e
}

/// Number of invertible block lower-triangular matrices, row by row:
/// `∏_i (2^{γ_{k(i)} + s_{k(i)}} − 2^i)`.
pub fn n_iblt_rows(s: &BlockStructure) -> BigUint {
    s.row_ends()
        .iter()
        .enumerate()
        .map(|(i, &end)| pow2(end) - pow2(i))
        .product()
}

/// Same count, block by block:
/// `∏_k 2^{γ_k s_k} ∏_{i<s_k} (2^{s_k} − 2^i)`.
pub fn n_iblt_blocks(s: &BlockStructure) -> BigUint {
    s.starts()
        .iter()
        .zip(s.sizes())
        .map(|(&g, &sk)| pow2(g * sk) * gl_order(sk))
        .product()
}

/// `|GL(2, m)| = ∏_{i<m} (2^m − 2^i)`.
pub fn gl_order(m: usize) -> BigUint {
    (0..m).map(|i| pow2(m) - pow2(i)).product()
}

/// `|BLTA(s, n)| = N_IBLT(s) · 2^n`.
pub fn blta_size(s: &BlockStructure) -> BigUint {
    n_iblt_blocks(s) * pow2(s.n())
}

/// Probability that a uniform `m × m` binary matrix is invertible:
/// `∏_{i=1}^{m} (1 − 2^{−i})`.
pub fn gl_success_probability(m: usize) -> f64 {
    (1..=m).map(|i| 1.0 - 0.5f64.powi(i as i32)).product()
}

/// Draws a uniform element of `GL(2, m)` by rejection. Returns the matrix
/// and the number of candidates drawn.
pub fn sample_gl<R: Rng + ?Sized>(m: usize, rng: &mut R) -> (BinaryMatrix, u64) {
    let mut attempts = 0;
    loop {
        attempts += 1;
        let a = BinaryMatrix::random(m, rng);
        if a.is_invertible() {
            return (a, attempts);
        }
    }
}

/// Uniform sample from `BLTA(s, n)`.
pub fn sample_blta<R: Rng + ?Sized>(s: &BlockStructure, rng: &mut R) -> AffineAutomorphism {
    sample_blta_counted(s, rng).0
}

/// Like [`sample_blta`], also reporting rejection attempts per diagonal block.
pub fn sample_blta_counted<R: Rng + ?Sized>(
    s: &BlockStructure,
    rng: &mut R,
) -> (AffineAutomorphism, Vec<u64>) {
    let n = s.n();
    let mut a = BinaryMatrix::zeros(n);
    let mut attempts = Vec::with_capacity(s.num_blocks());
    for block in s.blocks() {
        let (d, tries) = sample_gl(block.len(), rng);
        attempts.push(tries);
        let left_mask = (1u32 << block.start) - 1;
        for (r, i) in block.clone().enumerate() {
            *a.row_mut(i) = (rng.random::<u32>() & left_mask) | d.rows()[r] << block.start;
        }
    }
    let b = rng.random::<u32>() & ((1u32 << n) - 1);
    let aut = AffineAutomorphism::new(a, b).expect("diagonal blocks are invertible");
    (aut, attempts)
}

/// `A = P1 · L1 · P2 · L2 · P3` with block-diagonal permutations `P_i` and
/// unit lower-triangular `L_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Factors {
    pub p1: BinaryMatrix,
    pub l1: BinaryMatrix,
    pub p2: BinaryMatrix,
    pub l2: BinaryMatrix,
    pub p3: BinaryMatrix,
}

impl Lemma1Factors {
    pub fn recompose(&self) -> BinaryMatrix {
        self.p1.mul(&self.l1).mul(&self.p2).mul(&self.l2).mul(&self.p3)
    }

    /// Every factor has its required shape for `s`.
    pub fn is_well_formed(&self, s: &BlockStructure) -> bool {
        [&self.p1, &self.p2, &self.p3].iter().all(|p| p.is_permutation() && s.is_block_diagonal(p))
            && self.l1.is_unit_lower_triangular()
            && self.l2.is_unit_lower_triangular()
    }
}

/// Factorizes a non-singular block lower-triangular `A`.
///
/// Runs an LUP decomposition `P A = L U` with pivots restricted to the
/// pivot column's own block, which keeps `P` block-diagonal and makes `U`
/// block-diagonal with upper-triangular blocks. Reversing rows and columns
/// inside each block turns `U` into `L2 = P_BR U P_BR`. When `U = I` the
/// reversal is skipped and `P2 = P3 = I`.
pub fn lemma1_decompose(a: &BinaryMatrix, s: &BlockStructure) -> Result<Lemma1Factors> {
    let n = s.n();
    if a.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.n() });
    }
    if !s.is_block_lower_triangular(a) {
        return Err(Error::NotBlockLowerTriangular(s.sizes().to_vec()));
    }
    let ends = s.row_ends();
    let mut u = a.rows().to_vec();
    let mut l = BinaryMatrix::identity(n).rows().to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for c in 0..n {
        let p = (c..ends[c]).find(|&r| u[r] >> c & 1 == 1).ok_or(Error::Singular)?;
        if p != c {
            u.swap(c, p);
            perm.swap(c, p);
            // exchange the multipliers already computed (columns < c)
            let below = (1u32 << c) - 1;
            let (lc, lp) = (l[c] & below, l[p] & below);
            l[c] = l[c] & !below | lp;
            l[p] = l[p] & !below | lc;
        }
        for r in c + 1..n {
            if u[r] >> c & 1 == 1 {
                u[r] ^= u[c];
                l[r] |= 1 << c;
            }
        }
    }
    let mut p = BinaryMatrix::zeros(n);
    for (i, &src) in perm.iter().enumerate() {
        p.set(i, src, true);
    }
    let u = BinaryMatrix::from_rows(n, u)?;
    let l = BinaryMatrix::from_rows(n, l)?;
    let identity = BinaryMatrix::identity(n);
    let (p2, l2, p3) = if u == identity {
        (identity.clone(), identity.clone(), identity)
    } else {
        let br = s.block_reversal_matrix();
        let l2 = br.mul(&u).mul(&br);
        (br.clone(), l2, br)
    };
    Ok(Lemma1Factors { p1: p.transpose(), l1: l, p2, l2, p3 })
}
