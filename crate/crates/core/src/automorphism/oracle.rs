//! Codeword-level checks of the automorphism property for small codes.

use super::affine::AffineAutomorphism;
use super::matrix::BinaryMatrix;
use crate::error::{Error, Result};
use crate::monomial::MonomialCode;

/// Largest `n` for which codewords are enumerated explicitly.
pub const MAX_ORACLE_VARS: usize = 5;

/// Largest `n` for the exhaustive search over `GA(2, n)`.
pub const MAX_GA_SEARCH_VARS: usize = 4;

/// Above this dimension the 2^K sweep is replaced by checking basis images,
/// which is equivalent because the position permutation is linear.
const EXHAUSTIVE_DIMENSION: usize = 20;

/// Row `ℓ` of `G_N = [1 0; 1 1]^{⊗n}` packed into a word: column `j` is set
/// iff the bits of `j` are a subset of the bits of `ℓ`.
pub(crate) fn generator_row(row: usize, len: usize) -> u64 {
    (0..len).filter(|&j| j & !row == 0).fold(0u64, |acc, j| acc | 1 << j)
}

/// Span of binary vectors of length ≤ 64 kept in reduced echelon form.
pub(crate) struct Span {
    /// `basis[b]` has leading bit `b`, or is zero.
    basis: [u64; 64],
}

impl Span {
    pub(crate) fn new<I: IntoIterator<Item = u64>>(vectors: I) -> Self {
        let mut span = Span { basis: [0; 64] };
        for v in vectors {
            span.insert(v);
        }
        span
    }

    fn reduce(&self, mut v: u64) -> u64 {
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if self.basis[lead] == 0 {
                break;
            }
            v ^= self.basis[lead];
        }
        v
    }

    fn insert(&mut self, v: u64) {
        let r = self.reduce(v);
        if r != 0 {
            self.basis[63 - r.leading_zeros() as usize] = r;
        }
    }

    pub(crate) fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }
}

fn permute_word(word: u64, table: &[usize]) -> u64 {
    // output position j takes input position table[j]
    table.iter().enumerate().fold(0u64, |acc, (j, &src)| acc | (word >> src & 1) << j)
}

/// Whether the position permutation induced by `aut` maps every codeword of
/// `code` to a codeword.
pub fn is_code_automorphism(aut: &AffineAutomorphism, code: &MonomialCode) -> Result<bool> {
    let n = code.n();
    if n > MAX_ORACLE_VARS {
        return Err(Error::Capability { what: "codeword-level automorphism check", n, max: MAX_ORACLE_VARS });
    }
    if aut.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: aut.n() });
    }
    let len = code.len();
    let gens: Vec<u64> = code.info_rows().iter().map(|&r| generator_row(r, len)).collect();
    let span = Span::new(gens.iter().copied());
    let table = aut.position_table();
    if gens.len() > EXHAUSTIVE_DIMENSION {
        return Ok(gens.iter().all(|&g| span.contains(permute_word(g, &table))));
    }
    // Gray-code walk over all 2^K codewords
    let mut word = 0u64;
    for step in 0u64..1 << gens.len() {
        if step > 0 {
            word ^= gens[step.trailing_zeros() as usize];
        }
        if !span.contains(permute_word(word, &table)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Counts all affine maps `(A, b) ∈ GA(2, n)` that are automorphisms of
/// `code`, by exhaustion.
pub fn affine_automorphism_count(code: &MonomialCode) -> Result<u64> {
    let n = code.n();
    if n > MAX_GA_SEARCH_VARS {
        return Err(Error::Capability { what: "exhaustive GA(2,n) search", n, max: MAX_GA_SEARCH_VARS });
    }
    let len = code.len();
    let gens: Vec<u64> = code.info_rows().iter().map(|&r| generator_row(r, len)).collect();
    let span = Span::new(gens.iter().copied());
    let mut count = 0;
    for bits in 0u64..1 << (n * n) {
        let rows = (0..n).map(|i| (bits >> (i * n) & ((1 << n) - 1)) as u32).collect();
        let a = BinaryMatrix::from_rows(n, rows)?;
        if !a.is_invertible() {
            continue;
        }
        for b in 0..1u32 << n {
            let aut = AffineAutomorphism::new(a.clone(), b)?;
            let table = aut.position_table();
            if gens.iter().all(|&g| span.contains(permute_word(g, &table))) {
                count += 1;
            }
        }
    }
    Ok(count)
}
