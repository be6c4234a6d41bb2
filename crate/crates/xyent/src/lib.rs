//! Block entanglement entropy of the anisotropic XY spin chain in a
//! transverse field.
//!
//! The crate covers the whole `(h, γ)` phase diagram: region classification
//! and the elliptic parameter ([`phase`]), the limiting block entropy by
//! closed form, convergent series, and the `κ`-parameterization plus three
//! near-critical expansions ([`entropy`]), the family of constant-entropy
//! ellipses and hyperbolas ([`curves`]), and an independent finite-size
//! free-fermion computation used to verify everything ([`oracle`]). The
//! [`cli`] module backs the `xyent` binary.
//!
//! All quantities are pure functions of their inputs; everything is safe to
//! call concurrently.

// negated float comparisons in domain guards reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curves;
pub mod entropy;
pub mod error;
pub mod oracle;
pub mod phase;
pub mod special;

pub use error::{Error, Result};
