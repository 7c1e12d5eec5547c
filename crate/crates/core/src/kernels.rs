//! Re-exports of the data-parallel inner-loop kernels in their sequential
//! and rayon variants, so the bench suite can compare both in one run.
//!
//! Library code goes through the dispatching entry points
//! ([`crate::cycles::count_reduced_cycles`], the quadrature routines in
//! [`crate::lattice`]); these names are for benches and profiling only.

pub use crate::cycles::cycle_counts_seq;
#[cfg(feature = "parallel")]
pub use crate::cycles::cycle_counts_par;

pub use crate::lattice::{quadrature_log_terms_seq, spectral_log_terms_seq};
#[cfg(feature = "parallel")]
pub use crate::lattice::{quadrature_log_terms_par, spectral_log_terms_par};
