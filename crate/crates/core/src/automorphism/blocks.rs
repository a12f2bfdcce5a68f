use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::matrix::BinaryMatrix;
use super::permutation::Permutation;
use crate::error::{Error, Result};
use crate::monomial::MAX_VARS;

/// Partition of `[0, n-1]` into consecutive intervals of sizes `s_k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct BlockStructure {
    sizes: Vec<usize>,
}

impl BlockStructure {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidBlockStructure(format!("{sizes:?}")));
        }
        let n: usize = sizes.iter().sum();
        if n > MAX_VARS {
            return Err(Error::UnsupportedVariables { n, max: MAX_VARS });
        }
        Ok(BlockStructure { sizes })
    }

    /// `[1, …, 1]`: the lower-triangular affine group layout.
    pub fn trivial(n: usize) -> Self {
        BlockStructure { sizes: vec![1; n] }
    }

    /// `[n]`: the full affine group layout.
    pub fn full(n: usize) -> Self {
        BlockStructure { sizes: vec![n] }
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn num_blocks(&self) -> usize {
        self.sizes.len()
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Block starts `γ_k`.
    pub fn starts(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    pub fn blocks(&self) -> impl Iterator<Item = Range<usize>> + '_ {
        self.starts().into_iter().zip(&self.sizes).map(|(g, &s)| g..g + s).collect::<Vec<_>>().into_iter()
    }

    /// Index function `k(i)`.
    pub fn block_of(&self, i: usize) -> usize {
        let mut end = 0;
        for (k, &s) in self.sizes.iter().enumerate() {
            end += s;
            if i < end {
                return k;
            }
        }
        panic!("index {i} beyond n = {}", self.n())
    }

    /// `γ_{k(i)} + s_{k(i)}` for every row `i`: columns `≥` this must be zero.
    pub fn row_ends(&self) -> Vec<usize> {
        self.blocks().flat_map(|r| std::iter::repeat_n(r.end, r.len())).collect()
    }

    /// Whether all entries right of the block diagonal vanish.
    pub fn is_block_lower_triangular(&self, a: &BinaryMatrix) -> bool {
        a.n() == self.n() && self.row_ends().iter().zip(a.rows()).all(|(&end, &r)| r >> end == 0)
    }

    /// Whether `a` is zero outside the diagonal blocks.
    pub fn is_block_diagonal(&self, a: &BinaryMatrix) -> bool {
        a.n() == self.n()
            && self.blocks().all(|r| {
                let mask = ((1u32 << r.len()) - 1) << r.start;
                r.clone().all(|i| a.rows()[i] & !mask == 0)
            })
    }

    /// Whether `π` maps every block onto itself (`π ∈ ⟨S(Ω_k)⟩`).
    pub fn contains_permutation(&self, pi: &Permutation) -> bool {
        pi.n() == self.n() && (0..pi.n()).all(|i| self.block_of(i) == self.block_of(pi.apply(i)))
    }

    /// Order of `⟨S(Ω_0), …, S(Ω_{m-1})⟩`, i.e. `∏ s_k!`.
    pub fn stabilizer_order(&self) -> u128 {
        self.sizes.iter().map(|&s| (1..=s as u128).product::<u128>()).product()
    }

    /// Block-reversal permutation matrix `P_BR`: `p_{i,j} = 1` for
    /// `j = 2γ_{k(i)} + s_{k(i)} − 1 − i`.
    pub fn block_reversal_matrix(&self) -> BinaryMatrix {
        let images: Vec<usize> = self.blocks().flat_map(|r| r.rev()).collect();
        let mut m = BinaryMatrix::zeros(self.n());
        for (i, &j) in images.iter().enumerate() {
            m.set(i, j, true);
        }
        m
    }
}

/// Block-reversal matrix for `s`.
pub fn block_reversal_matrix(s: &BlockStructure) -> BinaryMatrix {
    s.block_reversal_matrix()
}

impl TryFrom<Vec<usize>> for BlockStructure {
    type Error = Error;

    fn try_from(sizes: Vec<usize>) -> Result<Self> {
        BlockStructure::new(sizes)
    }
}

impl From<BlockStructure> for Vec<usize> {
    fn from(s: BlockStructure) -> Vec<usize> {
        s.sizes
    }
}

impl fmt::Debug for BlockStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.sizes)
    }
}

impl fmt::Display for BlockStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.sizes)
    }
}
