//! Auxiliary field method (AFM) spectra for spinless Salpeter Hamiltonians
//! `H = σ√(p² + m²) + V(r)`, with a reference eigensolver and an N-model fitter.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]
// `!(x > 0.0)` is used on purpose so NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod afm;
pub mod error;
pub mod fitter;
pub mod oracle;
pub mod rootkit;
pub mod spectra;

pub use error::{Error, Result};
