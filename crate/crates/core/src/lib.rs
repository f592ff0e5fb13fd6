//! Entanglement-assisted quantum LDPC codes from quasi-cyclic model matrices:
//! construction, girth checks, stabilizer assembly, transversal Clifford gates,
//! correlated depolarizing noise and belief-propagation decoding.

pub mod channel;
pub mod clifford;
pub mod decoder;
pub mod eacode;
pub mod error;
pub mod exec;
pub mod gf2;
pub mod harness;
pub mod girth;
pub mod models;

pub use error::{Error, Result};
pub use gf2::{BinaryMatrix, BitVector, ModelMatrix, RowSpace};
