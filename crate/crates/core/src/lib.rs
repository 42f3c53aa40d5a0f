//! Encoding-circuit synthesis for stabilizer codes and entanglement-assisted
//! stabilizer codes, plus exact (exponential-time) decoding oracles.
//!
//! The crate is organised bottom-up:
//!
//! - [`gf2`]: bit-packed GF(2) vectors and matrices.
//! - [`code`]: check matrices, Pauli strings, standard form, random instances, text format.
//! - [`circuit`]: Clifford gates as column operations on check matrices.
//! - [`synthesis`]: blocked elimination and the full encoder pipelines.
//! - [`decoding`]: syndromes, minimum-weight and maximum-coset-probability decoding.
//!
//! ```
//! use eaqsc::code::{random_code, CodeParams};
//! use eaqsc::synthesis::{synthesize, DEFAULT_ALPHA};
//!
//! let params = CodeParams::new(16, 4, 2).unwrap();
//! let target = random_code(params, 7);
//! let result = synthesize(&target, DEFAULT_ALPHA).unwrap();
//! assert!(result.verify().unwrap());
//! ```

pub mod circuit;
pub mod code;
pub mod decoding;
pub mod error;
pub mod gf2;
pub mod synthesis;

pub use error::{Error, Result};
