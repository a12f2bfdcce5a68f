//! Variable permutations that stabilize an information set.

use super::blocks::BlockStructure;
use super::permutation::Permutation;
use crate::error::{Error, Result};
use crate::monomial::MonomialCode;

/// Largest `n` for which [`brute_force_stabilizer`] enumerates `S_n`.
pub const MAX_BRUTE_FORCE_VARS: usize = 6;

/// `π(I) ⊆ I`; since `π` is a bijection on monomials this is `π(I) = I`.
pub fn stabilizes(pi: &Permutation, code: &MonomialCode) -> bool {
    pi.n() == code.n() && code.monomials().all(|f| code.contains(pi.apply_monomial(f)))
}

/// Interval partition of `Stab(I)` for a decreasing code.
///
/// Scans `i_0` upward and, for each, the partner `i_1` downward from `n-1`;
/// the first transposition `(i_0, i_1)` that stabilizes `I` closes a block
/// of size `i_1 − i_0 + 1`. `(i, i)` is the identity, so every scan ends.
pub fn find_block_structure(code: &MonomialCode) -> Result<BlockStructure> {
    code.require_decreasing()?;
    let n = code.n();
    let mut sizes = Vec::new();
    let mut i0 = 0;
    while i0 < n {
        let mut i1 = n - 1;
        loop {
            if stabilizes(&Permutation::transposition(n, i0, i1), code) {
                sizes.push(i1 - i0 + 1);
                i0 = i1 + 1;
                break;
            }
            i1 -= 1;
        }
    }
    BlockStructure::new(sizes)
}

/// Exact `Stab(I)` by enumeration of `S_n`.
pub fn brute_force_stabilizer(code: &MonomialCode) -> Result<Vec<Permutation>> {
    let n = code.n();
    if n > MAX_BRUTE_FORCE_VARS {
        return Err(Error::Capability { what: "brute-force stabilizer", n, max: MAX_BRUTE_FORCE_VARS });
    }
    Ok(Permutation::all(n).filter(|p| stabilizes(p, code)).collect())
}
