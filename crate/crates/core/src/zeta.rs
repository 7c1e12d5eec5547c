//! Ihara zeta routes: the reciprocal polynomial from the vertex
//! determinant, the truncated exponential series over reduced-cycle
//! counts, and the two evaluations of the vertex-count-normalised zeta
//! (n-th root of the polynomial vs the Laplacian spectral-measure
//! formula).
//!
//! Everything polynomial is exact rational; floats appear only inside
//! point evaluations.

use crate::cycles::{self, CycleCounts, CycleError};
use crate::exact::det_bigint;
use crate::exec;
use crate::graph::Graph;
use crate::poly::{interpolate, rat_int, Polynomial, PowerSeries};
use num::complex::Complex64;
use num::{BigInt, BigRational, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ZetaError {
    #[error("graph is not flagged vertex-transitive (only built-in generators carry the flag)")]
    NonTransitive,
    #[error("graph is not regular")]
    NotRegular,
    #[error("reciprocal zeta {value} at u={u} is not positive, no principal real n-th root")]
    BranchAmbiguity { u: f64, value: f64 },
    #[error(transparent)]
    Cycles(#[from] CycleError),
}

/// Which computation produced a value; every evaluation carries its route
/// so cross-check reports can pair them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Series,
    IharaBass,
    GroverDet,
    Cjk,
    ClosedForm,
    Quadrature,
    SpectralSum,
}

fn ser_complex<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// A zeta (or reciprocal-zeta) value at a real point, tagged with the
/// route that produced it. Complex values appear only on flagged branch
/// fallbacks.
#[derive(Debug, Clone, Serialize)]
pub struct ZetaEvaluation {
    pub u: f64,
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub route: Route,
    pub warnings: Vec<String>,
}

impl ZetaEvaluation {
    pub fn real(u: f64, value: f64, route: Route) -> Self {
        ZetaEvaluation {
            u,
            value: Complex64::new(value, 0.0),
            route,
            warnings: Vec::new(),
        }
    }

    /// Real part, asserting the value is real up to rounding.
    pub fn real_value(&self) -> f64 {
        debug_assert!(self.value.im.abs() < 1e-9);
        self.value.re
    }
}

/// Reciprocal Ihara zeta polynomial
/// (1-u^2)^{r-1} det(I - uA + u^2(D - I)), exact.
///
/// The determinant factor is found by evaluating the integer matrix at
/// 2n+1 integer points and interpolating; for trees (r = 0) the prefactor
/// divides out exactly.
pub fn ihara_reciprocal_polynomial(g: &Graph) -> Polynomial {
    let n = g.vertex_count();
    let degrees = g.degrees().to_vec();
    let adjacency = g.adjacency();

    let nodes: Vec<i64> = (-(n as i64)..=n as i64).collect();
    let dets = exec::map_range(nodes.len(), |idx| {
        let u = BigInt::from(nodes[idx]);
        let u2 = &u * &u;
        let mat: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut entry = BigInt::from(-adjacency[i][j]) * &u;
                        if i == j {
                            entry += 1 + &u2 * (degrees[i] as i64 - 1);
                        }
                        entry
                    })
                    .collect()
            })
            .collect();
        det_bigint(mat)
    });

    let points: Vec<(BigRational, BigRational)> = nodes
        .iter()
        .zip(dets)
        .map(|(&x, y)| (rat_int(x), BigRational::from_integer(y)))
        .collect();
    let det_poly = interpolate(&points);
    apply_circuit_prefactor(det_poly, Polynomial::from_ints(&[1, 0, -1]), g.betti() - 1)
}

/// Multiplies by `base^e` for e >= 0, or divides exactly for e < 0.
pub(crate) fn apply_circuit_prefactor(poly: Polynomial, base: Polynomial, e: i64) -> Polynomial {
    if e >= 0 {
        poly.mul(&base.pow(e as usize))
    } else {
        poly.div_exact(&base.pow((-e) as usize))
            .expect("determinant factor must be divisible by the circuit-rank prefactor")
    }
}

/// Truncated zeta series exp(sum_k N_k u^k / k) with counts from the DFS
/// oracle. Exact mod u^{K+1}.
pub fn zeta_series_truncated(g: &Graph, order: usize) -> Result<PowerSeries, ZetaError> {
    let counts = cycles::count_reduced_cycles(g, order)?;
    Ok(series_from_counts(&counts, order))
}

/// Rooted variant: exp(sum_m N0_m u^m / m) for cycles based at `x0`.
pub fn rooted_zeta_series(g: &Graph, x0: usize, order: usize) -> Result<PowerSeries, ZetaError> {
    let counts = cycles::count_rooted_reduced_cycles(g, x0, order)?;
    Ok(series_from_counts(&counts, order))
}

/// exp(sum_k counts[k] u^k / k) from any cycle-count vector.
pub fn series_from_counts(counts: &CycleCounts, order: usize) -> PowerSeries {
    let mut log_coeffs = vec![BigRational::zero(); order + 1];
    for k in 1..=order.min(counts.k_max()) {
        let nk = counts.count(k);
        if nk != 0 {
            log_coeffs[k] = BigRational::new(BigInt::from(nk), BigInt::from(k as u64));
        }
    }
    PowerSeries::new(log_coeffs, order).exp()
}

/// Vertex-count-normalised reciprocal zeta at a real point: the positive
/// real n-th root of the reciprocal polynomial.
pub fn generalized_zeta_reciprocal(g: &Graph, u: f64) -> Result<ZetaEvaluation, ZetaError> {
    if !g.is_vertex_transitive() {
        return Err(ZetaError::NonTransitive);
    }
    let poly = ihara_reciprocal_polynomial(g);
    let zinv = poly.eval_f64(u);
    if zinv <= 0.0 {
        return Err(ZetaError::BranchAmbiguity { u, value: zinv });
    }
    let n = g.vertex_count() as f64;
    Ok(ZetaEvaluation::real(u, zinv.powf(1.0 / n), Route::IharaBass))
}

/// Spectral-measure evaluation for a vertex-transitive (q+1)-regular
/// graph: (1-u^2)^{(q-1)/2} exp( mean over Spec(D-A) of
/// log(1 - (q+1-lambda)u + q u^2) ).
///
/// Log arguments are positive for |u| < 1/q; outside that domain the
/// principal complex branch is used and a warning is attached.
pub fn cjk_evaluate(g: &Graph, u: f64) -> Result<ZetaEvaluation, ZetaError> {
    if !g.is_vertex_transitive() {
        return Err(ZetaError::NonTransitive);
    }
    let Some(k) = g.regular_degree() else {
        return Err(ZetaError::NotRegular);
    };
    let q_int = k as i64 - 1;
    let q = q_int as f64;
    let n = g.vertex_count();

    let eigen = nalgebra::SymmetricEigen::new(g.laplacian_f64());
    let mut spectrum: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    spectrum.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut warnings = Vec::new();
    let args: Vec<f64> = spectrum
        .iter()
        .map(|lambda| 1.0 - (q + 1.0 - lambda) * u + q * u * u)
        .collect();

    let mean = if args.iter().all(|&a| a > 0.0) {
        Complex64::new(args.iter().map(|a| a.ln()).sum::<f64>() / n as f64, 0.0)
    } else {
        warnings.push(format!(
            "log argument <= 0 at u={u}; using the principal complex branch"
        ));
        args.iter()
            .map(|&a| Complex64::new(a, 0.0).ln())
            .sum::<Complex64>()
            / n as f64
    };

    let base = 1.0 - u * u;
    let half_exponent = (q - 1.0) / 2.0;
    let prefactor = if base >= 0.0 {
        Complex64::new(base.powf(half_exponent), 0.0)
    } else if q_int % 2 == 1 {
        // integer exponent, stays real
        Complex64::new(base.powi(half_exponent as i32), 0.0)
    } else {
        warnings.push(format!(
            "prefactor base 1-u^2 negative at u={u}; using the principal complex branch"
        ));
        Complex64::new(base, 0.0).powf(half_exponent)
    };

    Ok(ZetaEvaluation {
        u,
        value: prefactor * mean.exp(),
        route: Route::Cjk,
        warnings,
    })
}
