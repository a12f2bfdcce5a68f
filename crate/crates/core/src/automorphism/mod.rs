//! Stabilizers of information sets and the block lower-triangular affine
//! automorphism group of decreasing monomial codes.

mod affine;
mod blocks;
pub mod blta;
mod matrix;
pub mod oracle;
mod permutation;
pub mod stabilizer;

pub use affine::{position_action, AffineAutomorphism};
pub use blocks::{block_reversal_matrix, BlockStructure};
pub use blta::{blta_size, lemma1_decompose, sample_blta, Lemma1Factors};
pub use matrix::BinaryMatrix;
pub use oracle::{affine_automorphism_count, is_code_automorphism};
pub use permutation::Permutation;
pub use stabilizer::{brute_force_stabilizer, find_block_structure, stabilizes};
