use crate::error::{Error, Result};
use crate::monomial::{MessageWord, MonomialCode};

/// `x ← x · G_N` in place with `G_N = [1 0; 1 1]^{⊗n}` (an involution).
pub fn polar_transform(x: &mut [u8]) {
    let len = x.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in x.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter()) {
                *a ^= b;
            }
        }
        h *= 2;
    }
}

/// Places message bits (in increasing info-row order) into a length-N
/// input vector with frozen rows zero, and transforms it.
pub(crate) fn encode_bits(code: &MonomialCode, bits: &[u8], out: &mut [u8]) {
    out.fill(0);
    for (&row, &b) in code.info_rows().iter().zip(bits) {
        out[row] = b & 1;
    }
    polar_transform(out);
}

/// Encodes `msg` as `c = u · G_N`, row `ℓ` of `u` carrying `u_f` for the
/// monomial `f` of row `ℓ`.
///
/// Position `j` of the result equals the message polynomial evaluated at the
/// complement of `j`'s bits; as a set the code coincides with the evaluation
/// code because `x ↦ x + 1` is an automorphism of every decreasing code.
pub fn encode(code: &MonomialCode, msg: &MessageWord) -> Result<Vec<u8>> {
    if !msg.matches(code) {
        return Err(Error::MessageKeyMismatch);
    }
    let bits: Vec<u8> = code.monomials().map(|f| msg.get(f).unwrap_or(0)).collect();
    let mut out = vec![0; code.len()];
    encode_bits(code, &bits, &mut out);
    Ok(out)
}

/// Inverse of [`encode`] on codewords: reads the information rows of `c · G_N`.
pub fn message_from_codeword(code: &MonomialCode, codeword: &[u8]) -> Result<MessageWord> {
    if codeword.len() != code.len() {
        return Err(Error::DimensionMismatch { expected: code.len(), got: codeword.len() });
    }
    let mut u = codeword.to_vec();
    polar_transform(&mut u);
    let bits: Vec<u8> = code.info_rows().iter().map(|&r| u[r]).collect();
    MessageWord::from_row_bits(code, &bits)
}

/// Whether `word` is a codeword (all frozen rows of `word · G_N` vanish).
pub fn is_codeword(code: &MonomialCode, word: &[u8]) -> bool {
    if word.len() != code.len() {
        return false;
    }
    let mut u = word.to_vec();
    polar_transform(&mut u);
    u.iter().zip(code.info_mask()).all(|(&b, &info)| info || b == 0)
}
