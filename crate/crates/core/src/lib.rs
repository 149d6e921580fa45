//! Unitarity of genuine representations of complex Spin groups of types B
//! and D, from Langlands parameters (μ, ν).

pub mod error;
pub mod glclass;
pub mod intertwine;
pub mod orbits;
pub mod rewriter;
pub mod scalar;
pub mod spinclass;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::{HalfInt, Q};
pub use spinclass::pairs::StringPairs;
pub use spinclass::{classify, Status, Verdict};
pub use weyl::{Family, GenuineParam, GroupTag};
