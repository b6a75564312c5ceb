//! Instance file parsing and generation for the `quasikernel` binary. The
//! algorithms live in `quasikernel-core`; this crate only moves bytes.

#![forbid(unsafe_code)]

pub mod format;
pub mod generate;
