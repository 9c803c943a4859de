//! Simultaneous compression and encryption built on fixed-point chaotic maps.
//!
//! The pipeline permutes data with a keyed merge shuffle driven by a Logistic
//! keystream, compresses it losslessly, and substitutes the compressed bytes
//! through a Henon-XOR / add-previous / Lorenz-XOR chain. Decryption is the
//! exact inverse. All cipher arithmetic is 32-bit fixed point so keystreams
//! are bit-identical across platforms.
//!
//! Module map:
//! - [`fxp`]: deterministic Q-format arithmetic underlying every map step
//! - [`chaos`]: the map generators plus Lyapunov / bifurcation instruments
//! - [`keys`]: key structure, validation, key files, keyspace accounting
//! - [`permute`]: the keyed block shuffle and its inverse
//! - [`codec`]: pluggable lossless compression (store / LZSS+Huffman / external)
//! - [`subst`]: the byte substitution chain and its inverse
//! - [`pipeline`]: chunked end-to-end encryption, container format, orderings
//! - [`analysis`]: correlation, sensitivity, keyspace, and randomness testing
//! - [`corpus`]: deterministic synthetic corpora for benchmarks and tests

pub mod analysis;
pub mod chaos;
pub mod codec;
pub mod corpus;
pub mod fxp;
pub mod keys;
pub mod permute;
pub mod pipeline;
mod stats;
pub mod subst;

pub use chaos::{ChaosError, Keystream, MapGenerator};
pub use codec::CodecId;
pub use fxp::{Fx32, QFormat};
pub use keys::ChaosKey;
pub use pipeline::{PipelineError, PipelineMode};
