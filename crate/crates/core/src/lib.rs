//! Automorphism groups of decreasing monomial (polar) codes and
//! automorphism-ensemble decoding.
//!
//! [`automorphism::find_block_structure`] recovers the block structure `s`
//! of a decreasing code, [`automorphism::blta_size`] gives the exact order
//! of `BLTA(s)` and [`automorphism::sample_blta`] draws uniform members.
//! [`codec`] provides SC, SCL and Aut-SC decoders; [`channel`] runs
//! reproducible BPSK/AWGN simulations.
//!
//! ```
//! use polar_aut::automorphism::{blta_size, find_block_structure};
//! use polar_aut::construction::rm_code;
//!
//! let rm = rm_code(3, 7).unwrap();
//! let s = find_block_structure(&rm).unwrap();
//! assert_eq!(s.sizes(), &[7]);
//! assert_eq!(blta_size(&s).to_string(), "20972799094947840");
//! ```

pub mod automorphism;
pub mod channel;
pub mod codec;
pub mod construction;
pub mod error;
pub mod harness;
pub mod monomial;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/monomial-codes.md")]
    mod monomial_codes {}
    #[doc = include_str!("../../../book/src/automorphisms.md")]
    mod automorphisms {}
    #[doc = include_str!("../../../book/src/decoding.md")]
    mod decoding {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
