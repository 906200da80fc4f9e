//! Exact-arithmetic engine for Temperley-Lieb recoupling theory and the
//! associated braid-group representations at roots of unity, together with
//! a floating-point Reshetikhin-Turaev cross-check.

pub mod analysis;
pub mod braid;
pub mod cyclo;
pub mod error;
pub mod golden;
pub mod graph;
pub mod laurent;
pub mod matrix;
pub mod recoupling;
pub mod rt;
pub mod theory;
pub mod tl;

pub use cyclo::CycloScalar;
pub use error::{Result, TqftError};
pub use laurent::{LaurentFraction, LaurentPoly};
pub use theory::TheoryCtx;
