use super::blocks::BlockStructure;
use super::matrix::BinaryMatrix;
use super::permutation::Permutation;
use crate::error::{Error, Result};

/// `x ↦ A x + b` over `F_2^n`, acting on codeword positions through the
/// binary expansion of the position index (bit `i` is `x_i`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineAutomorphism {
    a: BinaryMatrix,
    b: u32,
}

impl AffineAutomorphism {
    pub fn new(a: BinaryMatrix, b: u32) -> Result<Self> {
        let n = a.n();
        if n < 32 && b >> n != 0 {
            return Err(Error::InvalidSpec(format!("translation {b:#b} wider than n = {n}")));
        }
        if !a.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(AffineAutomorphism { a, b })
    }

    pub fn identity(n: usize) -> Self {
        AffineAutomorphism { a: BinaryMatrix::identity(n), b: 0 }
    }

    /// The linear map permuting coordinates by `π` (no translation).
    pub fn from_permutation(pi: &Permutation) -> Self {
        AffineAutomorphism { a: BinaryMatrix::from_permutation(pi.images()), b: 0 }
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    pub fn matrix(&self) -> &BinaryMatrix {
        &self.a
    }

    pub fn translation(&self) -> u32 {
        self.b
    }

    pub fn apply_point(&self, x: u32) -> u32 {
        self.a.mul_vec(x) ^ self.b
    }

    /// `j ↦ int(A·bits(j) + b)`.
    pub fn position_action(&self, j: usize) -> usize {
        self.apply_point(j as u32) as usize
    }

    /// Table `perm[j] = position_action(j)` for all `N` positions.
    pub fn position_table(&self) -> Vec<usize> {
        // by linearity: table[j] = table[j with lowest bit cleared] ^ A e_lowest
        let columns: Vec<usize> = (0..self.n()).map(|i| self.a.mul_vec(1 << i) as usize).collect();
        let mut table = vec![0; 1 << self.n()];
        table[0] = self.b as usize;
        for j in 1..table.len() {
            table[j] = table[j & (j - 1)] ^ columns[j.trailing_zeros() as usize];
        }
        table
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &AffineAutomorphism) -> AffineAutomorphism {
        AffineAutomorphism { a: self.a.mul(&first.a), b: self.a.mul_vec(first.b) ^ self.b }
    }

    pub fn inverse(&self) -> AffineAutomorphism {
        let inv = self.a.inverse().expect("automorphism matrix is invertible");
        let b = inv.mul_vec(self.b);
        AffineAutomorphism { a: inv, b }
    }

    /// Whether the linear part is block lower-triangular for `s`.
    pub fn respects(&self, s: &BlockStructure) -> bool {
        s.is_block_lower_triangular(&self.a)
    }
}

/// Free-function form of [`AffineAutomorphism::position_action`].
pub fn position_action(aut: &AffineAutomorphism, j: usize) -> usize {
    aut.position_action(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_examples() {
        let id = AffineAutomorphism::identity(4);
        assert!((0..16).all(|j| id.position_action(j) == j));

        let flip = AffineAutomorphism::new(BinaryMatrix::identity(4), 1).unwrap();
        assert!((0..16).all(|j| flip.position_action(j) == j ^ 1));

        let swap = AffineAutomorphism::from_permutation(&Permutation::transposition(4, 0, 1));
        for j in 0..16usize {
            let expect = (j & !3) | (j & 1) << 1 | (j >> 1 & 1);
            assert_eq!(swap.position_action(j), expect);
        }
    }

    #[test]
    fn action_is_bijective() {
        let a = BinaryMatrix::from_rows(3, vec![0b001, 0b011, 0b110]).unwrap();
        let aut = AffineAutomorphism::new(a, 0b101).unwrap();
        let mut table = aut.position_table();
        assert!(table.iter().enumerate().all(|(j, &t)| t == aut.position_action(j)));
        table.sort_unstable();
        assert_eq!(table, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(AffineAutomorphism::new(BinaryMatrix::zeros(2), 0), Err(Error::Singular));
        assert!(AffineAutomorphism::new(BinaryMatrix::identity(2), 4).is_err());
    }
}
