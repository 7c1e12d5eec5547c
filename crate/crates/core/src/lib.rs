//! Ihara zeta functions of finite graphs by independent routes, coined
//! quantum walks, and the cycle-graph limit of the one-dimensional lattice.
//!
//! The crate is organised as an identity-verification machine: every
//! quantity of interest is computed by at least two routes that share no
//! code, and the test suites assert that the routes agree.
//!
//! - [`graph`]: simple connected graphs, arc sets with involution, and the
//!   structured matrices (adjacency, degree, transition, Laplacian).
//! - [`cycles`]: brute-force reduced-cycle counting (DFS enumeration) and
//!   the arc-adjacency trace oracle, kept deliberately independent.
//! - [`poly`]: dense univariate polynomials and truncated power series over
//!   exact rationals.
//! - [`zeta`]: the reciprocal zeta polynomial, truncated zeta series,
//!   n-th-root and spectral-measure evaluations.
//! - [`walk`]: coin/shift operators, the Grover matrix, time evolution, and
//!   the characteristic-polynomial identity linking walks to zeta functions.
//! - [`lattice`]: spectral Riemann sums over cycle graphs, their quadrature
//!   limit, and closed forms.
//! - [`verify`]: cross-check suites wired into the CLI.
//!
//! Data-parallel inner loops (cycle enumeration over starting arcs,
//! quadrature nodes, interpolation grids) run on rayon when the default
//! `parallel` feature is enabled and fall back to sequential loops without
//! it. Floating-point reductions always use a fixed summation order, so
//! both modes produce identical results.

pub mod cycles;
pub mod exact;
mod exec;
pub mod graph;
pub mod kernels;
pub mod lattice;
pub mod poly;
pub mod verify;
pub mod walk;
pub mod zeta;

pub use graph::{ArcSet, Graph, GraphError, StructuredMatrices};
pub use poly::{Polynomial, PowerSeries};
pub use zeta::{Route, ZetaEvaluation};

/// Rounds to 15 significant digits, the precision used in all printed
/// numeric output.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("round-trip of finite f64")
}
