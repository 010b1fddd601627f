//! Codes over Z_{2^m} that correct a single error of bounded magnitude in one
//! coordinate (cross errors).
//!
//! - [`ring`]: residues, words and matrices over Z_{2^m}.
//! - [`metric`]: Lee and cross distances, sphere volumes, packing bounds.
//! - [`construct`]: parity-check constructions, validators and kernels.
//! - [`decode`]: syndrome decoders.
//! - [`oracle`]: brute-force certification, enumeration and search.

pub mod construct;
pub mod decode;
pub mod error;
pub mod metric;
pub mod oracle;
pub mod ring;

pub use construct::{construct, Construction, GeneratorMatrix, LinearCode, ParityCheckMatrix};
pub use decode::{DecodeOutcome, Decoder};
pub use error::{Error, Result};
pub use metric::{ExtendedDistance, Metric};
pub use oracle::{Budgets, CodeSet};
pub use ring::{Matrix, Modulus, RingElement, Word};
