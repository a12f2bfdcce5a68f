use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::monomial::MAX_VARS;

/// Square matrix over `F_2` with at most [`MAX_VARS`] rows; row `i` is a bit
/// mask whose bit `j` is `a_{i,j}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: usize,
    rows: Vec<u32>,
}

impl BinaryMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n <= MAX_VARS, "matrix dimension {n} exceeds {MAX_VARS}");
        BinaryMatrix { n, rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    pub fn from_rows(n: usize, rows: Vec<u32>) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::UnsupportedVariables { n, max: MAX_VARS });
        }
        if rows.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: rows.len() });
        }
        if let Some(&bad) = rows.iter().find(|&&r| n < 32 && r >> n != 0) {
            return Err(Error::InvalidSpec(format!("row {bad:#b} has bits beyond column {n}")));
        }
        Ok(BinaryMatrix { n, rows })
    }

    /// Permutation matrix sending coordinate `i` to coordinate `images[i]`,
    /// i.e. `(P x)_{images[i]} = x_i`.
    pub fn from_permutation(images: &[usize]) -> Self {
        let mut m = Self::zeros(images.len());
        for (i, &j) in images.iter().enumerate() {
            m.rows[j] |= 1 << i;
        }
        m
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mask = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        BinaryMatrix { n, rows: (0..n).map(|_| rng.random::<u32>() & mask).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut u32 {
        &mut self.rows[i]
    }

    /// `A x` for a column vector packed as bits.
    pub fn mul_vec(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | ((r & x).count_ones() & 1) << i)
    }

    pub fn mul(&self, other: &BinaryMatrix) -> BinaryMatrix {
        assert_eq!(self.n, other.n);
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0u32;
                let mut bits = r;
                while bits != 0 {
                    acc ^= other.rows[bits.trailing_zeros() as usize];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        BinaryMatrix { n: self.n, rows }
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) {
                    t.rows[j] |= 1 << i;
                }
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(p) = (rank..self.n).find(|&r| rows[r] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && *row >> col & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<BinaryMatrix> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for col in 0..n {
            let p = (col..n).find(|&r| a[r] >> col & 1 == 1).ok_or(Error::Singular)?;
            a.swap(col, p);
            inv.swap(col, p);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Ok(BinaryMatrix { n, rows: inv })
    }

    /// Exactly one 1 in every row and column.
    pub fn is_permutation(&self) -> bool {
        let mut seen = 0u32;
        self.rows.iter().all(|&r| {
            let ok = r.count_ones() == 1 && seen & r == 0;
            seen |= r;
            ok
        })
    }

    /// Lower-triangular with unit diagonal.
    pub fn is_unit_lower_triangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r >> i == 1)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let line: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}
