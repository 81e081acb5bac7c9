//! Exact computational homological algebra over `ℤ` and `ℤ/n`.
//!
//! Finitely presented modules are cokernels of integer matrices. On top of
//! the Smith-form kernel in [`exactlin`] sit resolutions, an evaluable
//! functor calculus, the fundamental long sequences of a functor, universal
//! coefficient sequences for chain complexes and Auslander–Reiten checks.

pub mod archeck;
pub mod error;
pub mod exactlin;
pub mod fpmod;
pub mod funcalc;
pub mod fundseq;
pub mod resolve;
pub mod ring;
pub mod uct;

pub use error::{Error, Result};
pub use exactlin::IntMat;
pub use fpmod::{FPModule, Morphism, Subquotient};
pub use ring::{Int, RingDesc};
