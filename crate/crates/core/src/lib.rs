//! Binary subfield codes of simplicial-complex defining sets over
//! `R = F₂[u,v]/(u², v², uv − vu)`.
//!
//! The crate builds the code `C_D^(2)` for a defining set
//! `D = b₁A₁ + b₂A₂ + b₃A₃ + b₄A₄ ⊂ R^m`, computes its weight distribution
//! (closed form, character sums, brute force), and certifies structural
//! properties of the result.

pub mod analyze;
pub mod construct;
pub mod error;
pub mod gf2;
pub mod reproduce;
pub mod ring;
pub mod simplicial;

pub use construct::{
    build_code, build_defining_set, codeword, generator_matrix, BinaryCode, DefiningSetSpec,
};
pub use error::{Error, Result};
pub use gf2::{BinaryMatrix, BitRow, BitVector, WeightDistribution};
pub use ring::RingElement;
pub use simplicial::{Face, SetSpec};
