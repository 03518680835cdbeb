//! Exact decoding, reductions and code analysis for quantum stabilizer codes
//! in the binary symplectic representation.
//!
//! Everything works on `(x|z)` vectors over GF(2); no quantum state is ever
//! simulated. Probabilities over the depolarizing channel are exact rationals.

pub mod channel;
pub mod codes_io;
pub mod decoders;
pub mod error;
pub mod gf2;
pub mod guard;
pub mod pauli;
pub mod reductions;

pub use error::{Error, Result};
pub use guard::Guard;
