//! Coined quantum walks on graphs: coin and shift operators, the Grover
//! matrix, unitary time evolution, and the characteristic polynomial of
//! the Grover matrix reduced to an n x n transition-matrix determinant.
//!
//! The reduced determinant is the primary route for the characteristic
//! polynomial; the direct 2m x 2m determinant only serves as a numeric
//! spot-check in the test suites.

use crate::exact::{det_bigint, det_bigrational};
use crate::exec;
use crate::graph::Graph;
use crate::poly::{interpolate, rat_int, Polynomial};
use crate::zeta::apply_circuit_prefactor;
use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;
use num::{BigInt, BigRational};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum WalkError {
    #[error("coin vector at vertex {vertex}: {reason}")]
    BadCoin { vertex: usize, reason: String },
    #[error("state norm drifted to {norm} at step {step}")]
    NormDrift { step: usize, norm: f64 },
    #[error("transition eigenvalue {value} outside [-1, 1]")]
    MappingDomain { value: f64 },
    #[error("arc index {arc} out of range for 2m={dim}")]
    BadArc { arc: usize, dim: usize },
    #[error("vertex {vertex} out of range for n={n}")]
    BadVertex { vertex: usize, n: usize },
}

/// Per-vertex unit coin vectors, one amplitude per arc terminating at the
/// vertex (the set D(u)), aligned with [`crate::graph::ArcSet::incoming`].
#[derive(Debug, Clone)]
pub struct CoinFamily {
    amplitudes: Vec<Vec<Complex64>>,
}

impl CoinFamily {
    /// Uniform amplitudes 1/sqrt(deg u); the Grover coin.
    pub fn grover(g: &Graph) -> Self {
        let amplitudes = (0..g.vertex_count())
            .map(|u| vec![Complex64::new(1.0 / (g.degree(u) as f64).sqrt(), 0.0); g.degree(u)])
            .collect();
        CoinFamily { amplitudes }
    }

    /// Arbitrary coins: entry `amplitudes[u][i]` belongs to the i-th arc of
    /// `incoming(u)`. Every entry must be nonzero and each vector must have
    /// unit norm within 1e-12.
    pub fn new(g: &Graph, amplitudes: Vec<Vec<Complex64>>) -> Result<Self, WalkError> {
        if amplitudes.len() != g.vertex_count() {
            return Err(WalkError::BadCoin {
                vertex: amplitudes.len(),
                reason: "one coin vector per vertex required".into(),
            });
        }
        for (u, coin) in amplitudes.iter().enumerate() {
            if coin.len() != g.degree(u) {
                return Err(WalkError::BadCoin {
                    vertex: u,
                    reason: format!(
                        "expected {} amplitudes, got {}",
                        g.degree(u),
                        coin.len()
                    ),
                });
            }
            if coin.iter().any(|a| a.norm() == 0.0) {
                return Err(WalkError::BadCoin {
                    vertex: u,
                    reason: "zero amplitude on an incoming arc".into(),
                });
            }
            let norm_sq: f64 = coin.iter().map(|a| a.norm_sqr()).sum();
            if (norm_sq - 1.0).abs() > 1e-12 {
                return Err(WalkError::BadCoin {
                    vertex: u,
                    reason: format!("norm^2 = {norm_sq}, not a unit vector"),
                });
            }
        }
        Ok(CoinFamily { amplitudes })
    }
}

/// Time evolution matrix U = S C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    Grover,
    GeneralCoined,
}

#[derive(Debug, Clone)]
pub struct EvolutionMatrix {
    pub matrix: DMatrix<Complex64>,
    pub kind: WalkKind,
}

impl EvolutionMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// max |(U U* - I)_{ef}|; zero for exactly unitary U.
    pub fn unitarity_defect(&self) -> f64 {
        let dim = self.dim();
        let product = &self.matrix * self.matrix.adjoint();
        let mut defect = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                let expect = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((product[(i, j)] - Complex64::new(expect, 0.0)).norm());
            }
        }
        defect
    }
}

/// Coin operator C = 2 sum_u |alpha_u><alpha_u| - I; a blockwise
/// reflection, Hermitian and unitary.
pub fn coin_operator(g: &Graph, coins: &CoinFamily) -> Result<DMatrix<Complex64>, WalkError> {
    let arcs = g.arcs();
    let dim = arcs.len();
    let mut c = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for u in 0..g.vertex_count() {
        let incoming = arcs.incoming(u);
        let coin = &coins.amplitudes[u];
        for (i, &e) in incoming.iter().enumerate() {
            for (j, &f) in incoming.iter().enumerate() {
                c[(e, f)] += 2.0 * coin[i] * coin[j].conj();
            }
        }
    }
    for e in 0..dim {
        c[(e, e)] -= Complex64::new(1.0, 0.0);
    }
    Ok(c)
}

/// Shift operator: the permutation sending each arc to its inverse.
/// Symmetric, with S^2 = I.
pub fn shift_operator(g: &Graph) -> DMatrix<f64> {
    let arcs = g.arcs();
    let dim = arcs.len();
    DMatrix::from_fn(dim, dim, |e, f| if arcs.inv(e) == f { 1.0 } else { 0.0 })
}

/// General coined walk U = S C for arbitrary valid coins.
pub fn general_coined(g: &Graph, coins: &CoinFamily) -> Result<EvolutionMatrix, WalkError> {
    let c = coin_operator(g, coins)?;
    let s = shift_operator(g).map(|x| Complex64::new(x, 0.0));
    let matrix = s * c;
    let ev = EvolutionMatrix {
        matrix,
        kind: WalkKind::GeneralCoined,
    };
    debug_assert!(ev.unitarity_defect() <= 1e-10);
    Ok(ev)
}

// Entrywise Grover matrix over f64; shared by the complex evolution matrix
// and the real eigensolver route.
fn grover_matrix_real(g: &Graph) -> DMatrix<f64> {
    let arcs = g.arcs();
    let dim = arcs.len();
    DMatrix::from_fn(dim, dim, |e, f| {
        if arcs.terminus(f) == arcs.origin(e) {
            let d = g.degree(arcs.terminus(f)) as f64;
            if arcs.inv(e) == f {
                2.0 / d - 1.0
            } else {
                2.0 / d
            }
        } else {
            0.0
        }
    })
}

/// The Grover matrix built from its entrywise definition, cross-checked
/// against the S C product with uniform coins.
pub fn grover_matrix(g: &Graph) -> EvolutionMatrix {
    let direct = grover_matrix_real(g).map(|x| Complex64::new(x, 0.0));
    let product = general_coined(g, &CoinFamily::grover(g))
        .expect("uniform coins are valid")
        .matrix;
    let defect = (&direct - &product)
        .iter()
        .fold(0.0f64, |acc, z| acc.max(z.norm()));
    assert!(
        defect <= 1e-12,
        "entrywise Grover matrix disagrees with S*C by {defect}"
    );
    EvolutionMatrix {
        matrix: direct,
        kind: WalkKind::Grover,
    }
}

/// Amplitude vector over arcs, unit norm, with its time step.
#[derive(Debug, Clone)]
pub struct WalkState {
    amplitudes: DVector<Complex64>,
    t: usize,
}

impl WalkState {
    /// Uniform superposition over all 2m arcs.
    pub fn uniform(g: &Graph) -> Self {
        let dim = 2 * g.edge_count();
        let a = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        WalkState {
            amplitudes: DVector::from_element(dim, a),
            t: 0,
        }
    }

    /// Basis state concentrated on one arc.
    pub fn single_arc(g: &Graph, arc: usize) -> Result<Self, WalkError> {
        let dim = 2 * g.edge_count();
        if arc >= dim {
            return Err(WalkError::BadArc { arc, dim });
        }
        let mut amplitudes = DVector::from_element(dim, Complex64::new(0.0, 0.0));
        amplitudes[arc] = Complex64::new(1.0, 0.0);
        Ok(WalkState { amplitudes, t: 0 })
    }

    /// Uniform superposition over the arcs terminating at `v`.
    pub fn uniform_incoming(g: &Graph, v: usize) -> Result<Self, WalkError> {
        if v >= g.vertex_count() {
            return Err(WalkError::BadVertex {
                vertex: v,
                n: g.vertex_count(),
            });
        }
        let arcs = g.arcs();
        let mut amplitudes =
            DVector::from_element(arcs.len(), Complex64::new(0.0, 0.0));
        let a = Complex64::new(1.0 / (g.degree(v) as f64).sqrt(), 0.0);
        for &e in arcs.incoming(v) {
            amplitudes[e] = a;
        }
        Ok(WalkState { amplitudes, t: 0 })
    }

    /// Arbitrary nonzero amplitudes, normalised on construction.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, WalkError> {
        let v = DVector::from_vec(amplitudes);
        let norm = v.norm();
        if norm == 0.0 {
            return Err(WalkError::BadArc { arc: 0, dim: 0 });
        }
        Ok(WalkState {
            amplitudes: v / Complex64::new(norm, 0.0),
            t: 0,
        })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        self.amplitudes.as_slice()
    }

    pub fn time(&self) -> usize {
        self.t
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }
}

/// Applies U for `steps` steps, checking the unit norm after every step.
pub fn evolve(
    ev: &EvolutionMatrix,
    psi0: &WalkState,
    steps: usize,
) -> Result<WalkState, WalkError> {
    let mut psi = psi0.amplitudes.clone();
    check_norm(psi.norm(), psi0.t)?;
    for step in 1..=steps {
        psi = &ev.matrix * psi;
        check_norm(psi.norm(), psi0.t + step)?;
    }
    Ok(WalkState {
        amplitudes: psi,
        t: psi0.t + steps,
    })
}

fn check_norm(norm: f64, step: usize) -> Result<(), WalkError> {
    if (norm - 1.0).abs() > 1e-8 {
        return Err(WalkError::NormDrift { step, norm });
    }
    Ok(())
}

/// The n x n determinant polynomial det((x^2+1) I - 2x T), computed two
/// ways (transition form by rational elimination, degree/adjacency form by
/// integer elimination) and asserted identical.
fn reduced_determinant_polynomial(g: &Graph) -> Polynomial {
    let n = g.vertex_count();
    let mats = g.matrices();
    let nodes: Vec<i64> = (-(n as i64)..=n as i64).collect();

    let values = exec::map_range(nodes.len(), |idx| {
        let x = nodes[idx];
        let x2_plus_1 = BigInt::from(x * x + 1);
        let two_x = BigInt::from(2 * x);

        // transition form, rational Gaussian elimination
        let t_form: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut entry =
                            -BigRational::from_integer(two_x.clone()) * &mats.transition[i][j];
                        if i == j {
                            entry += BigRational::from_integer(x2_plus_1.clone());
                        }
                        entry
                    })
                    .collect()
            })
            .collect();
        let rational_det = det_bigrational(t_form);

        // degree/adjacency form, fraction-free integer elimination
        let da_form: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut entry = BigInt::from(-mats.adjacency[i][j]) * &two_x;
                        if i == j {
                            entry += &x2_plus_1 * mats.degree[i][i];
                        }
                        entry
                    })
                    .collect()
            })
            .collect();
        let degree_product: BigInt = g
            .degrees()
            .iter()
            .map(|&d| BigInt::from(d as i64))
            .product();
        let integer_det = BigRational::new(det_bigint(da_form), degree_product);

        assert_eq!(
            rational_det, integer_det,
            "transition and degree/adjacency determinant forms disagree"
        );
        rational_det
    });

    let points: Vec<(BigRational, BigRational)> = nodes
        .iter()
        .map(|&x| rat_int(x))
        .zip(values)
        .collect();
    interpolate(&points)
}

/// Characteristic polynomial det(lambda I - U) of the Grover matrix via
/// the reduced n x n determinant: (lambda^2 - 1)^{m-n} det((lambda^2+1) I
/// - 2 lambda T). Exact.
pub fn grover_char_poly(g: &Graph) -> Polynomial {
    let reduced = reduced_determinant_polynomial(g);
    let m_minus_n = g.edge_count() as i64 - g.vertex_count() as i64;
    apply_circuit_prefactor(reduced, Polynomial::from_ints(&[-1, 0, 1]), m_minus_n)
}

/// det(I - u U) as an exact polynomial:
/// (1 - u^2)^{m-n} det((1+u^2) I - 2u T).
pub fn det_i_minus_u_grover(g: &Graph) -> Polynomial {
    let reduced = reduced_determinant_polynomial(g);
    let m_minus_n = g.edge_count() as i64 - g.vertex_count() as i64;
    apply_circuit_prefactor(reduced, Polynomial::from_ints(&[1, 0, -1]), m_minus_n)
}

/// det(I - u U) evaluated at a real point (exact evaluation, one rounding).
pub fn det_i_minus_u_grover_at(g: &Graph, u: f64) -> f64 {
    det_i_minus_u_grover(g).eval_f64(u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectrumSource {
    Transition,
    GroverMapped,
    GroverDirect,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralLine {
    #[serde(serialize_with = "ser_complex")]
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Eigenvalue multiset with multiplicities and the matrix it came from.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub source: SpectrumSource,
    pub eigenvalues: Vec<SpectralLine>,
}

impl SpectrumReport {
    /// Clusters raw eigenvalues (tolerance 1e-8) into lines; the first
    /// value seen in a cluster is its representative.
    fn cluster(source: SpectrumSource, mut values: Vec<Complex64>) -> Self {
        values.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap()
                .then(a.im.partial_cmp(&b.im).unwrap())
        });
        let mut eigenvalues: Vec<SpectralLine> = Vec::new();
        for v in values {
            match eigenvalues
                .iter_mut()
                .find(|line| (line.value - v).norm() <= 1e-8)
            {
                Some(line) => line.multiplicity += 1,
                None => eigenvalues.push(SpectralLine {
                    value: v,
                    multiplicity: 1,
                }),
            }
        }
        SpectrumReport {
            source,
            eigenvalues,
        }
    }

    /// Values repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        self.eigenvalues
            .iter()
            .flat_map(|line| std::iter::repeat(line.value).take(line.multiplicity))
            .collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|l| l.multiplicity).sum()
    }
}

/// Grover spectrum by the cos-theta mapping of the transition spectrum and
/// by a direct eigensolve, for comparison.
#[derive(Debug, Clone, Serialize)]
pub struct GroverSpectrum {
    pub mapped: SpectrumReport,
    pub direct: SpectrumReport,
    /// Greedy minimal-distance matching defect between the two multisets.
    pub max_match_distance: f64,
}

/// Eigenvalues of the random-walk transition matrix T, real because T is
/// similar to the symmetric D^{-1/2} A D^{-1/2}. Ascending.
pub fn transition_spectrum(g: &Graph) -> Vec<f64> {
    let n = g.vertex_count();
    let sym = nalgebra::DMatrix::from_fn(n, n, |i, j| {
        g.adjacency()[i][j] as f64 / ((g.degree(i) as f64).sqrt() * (g.degree(j) as f64).sqrt())
    });
    let mut eig: Vec<f64> = nalgebra::SymmetricEigen::new(sym)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eig.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eig
}

/// Both spectral routes for the Grover matrix.
///
/// Mapping route: each transition eigenvalue mu contributes the unit-circle
/// pair e^{+-i arccos mu}; the circuit rank adds m-n eigenvalues each at +1
/// and -1 (removed instead when m < n).
pub fn grover_spectrum(g: &Graph) -> Result<GroverSpectrum, WalkError> {
    let mut mapped_values = Vec::with_capacity(2 * g.edge_count());
    for mu in transition_spectrum(g) {
        if mu.abs() > 1.0 + 1e-12 {
            return Err(WalkError::MappingDomain { value: mu });
        }
        // snap to the endpoints: arccos amplifies eigensolver noise near
        // +-1 by 1/sqrt(1-mu^2)
        let mu = if mu.abs() > 1.0 - 1e-12 {
            mu.signum()
        } else {
            mu
        };
        let theta = mu.acos();
        mapped_values.push(Complex64::new(theta.cos(), theta.sin()));
        mapped_values.push(Complex64::new(theta.cos(), -theta.sin()));
    }
    let m = g.edge_count() as i64;
    let n = g.vertex_count() as i64;
    if m >= n {
        for _ in 0..m - n {
            mapped_values.push(Complex64::new(1.0, 0.0));
            mapped_values.push(Complex64::new(-1.0, 0.0));
        }
    } else {
        for target in [1.0f64, -1.0] {
            for _ in 0..n - m {
                let pos = mapped_values
                    .iter()
                    .position(|z| (z - Complex64::new(target, 0.0)).norm() <= 1e-8)
                    .expect("tree spectrum must contain +1 and -1 to cancel");
                mapped_values.swap_remove(pos);
            }
        }
    }

    let direct_values: Vec<Complex64> = grover_matrix_real(g)
        .complex_eigenvalues()
        .iter()
        .copied()
        .collect();

    let max_match_distance = multiset_match_distance(&mapped_values, &direct_values);
    Ok(GroverSpectrum {
        mapped: SpectrumReport::cluster(SpectrumSource::GroverMapped, mapped_values),
        direct: SpectrumReport::cluster(SpectrumSource::GroverDirect, direct_values),
        max_match_distance,
    })
}

/// Greedy minimal-distance matching between two eigenvalue multisets:
/// returns the largest matched distance, or infinity on size mismatch.
pub fn multiset_match_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for &x in a {
        let mut best: Option<(usize, f64)> = None;
        for (j, &y) in b.iter().enumerate() {
            if used[j] {
                continue;
            }
            let d = (x - y).norm();
            if best.map_or(true, |(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        let (j, d) = best.expect("sizes already checked equal");
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn shift_operator_pairs_inverses() {
        let g = Graph::cycle(3).unwrap();
        let s = shift_operator(&g);
        let arcs = g.arcs();
        for e in 0..6 {
            for f in 0..6 {
                let expect = if arcs.inv(e) == f { 1.0 } else { 0.0 };
                assert_eq!(s[(e, f)], expect);
            }
        }
        let s2 = &s * &s;
        assert!((s2 - DMatrix::<f64>::identity(6, 6)).amax() < 1e-15);
    }

    #[test]
    fn coin_operator_is_a_reflection() {
        for g in [Graph::cycle(4).unwrap(), Graph::petersen()] {
            let c = coin_operator(&g, &CoinFamily::grover(&g)).unwrap();
            let dim = c.nrows();
            let c2 = &c * &c;
            let mut defect = 0.0f64;
            for i in 0..dim {
                for j in 0..dim {
                    let expect = if i == j { 1.0 } else { 0.0 };
                    defect = defect.max((c2[(i, j)] - Complex64::new(expect, 0.0)).norm());
                }
            }
            assert!(defect < 1e-12);
        }
    }

    #[test]
    fn star_center_coin_block_is_grover_diffusion() {
        let g = Graph::build(&[(0, 1), (0, 2), (0, 3)], 4).unwrap();
        let arcs = g.arcs();
        let c = coin_operator(&g, &CoinFamily::grover(&g)).unwrap();
        let center = arcs.incoming(0);
        assert_eq!(center.len(), 3);
        for &e in center {
            for &f in center {
                let expect = if e == f { 2.0 / 3.0 - 1.0 } else { 2.0 / 3.0 };
                assert!((c[(e, f)] - Complex64::new(expect, 0.0)).norm() < 1e-14);
            }
        }
        // leaf blocks are the 1x1 identity
        for v in 1..4 {
            let e = arcs.incoming(v)[0];
            assert!((c[(e, e)] - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn bad_coins_are_rejected() {
        let g = Graph::cycle(3).unwrap();
        let wrong_norm = vec![vec![Complex64::new(1.0, 0.0); 2]; 3];
        assert!(matches!(
            CoinFamily::new(&g, wrong_norm),
            Err(WalkError::BadCoin { .. })
        ));
        let zero_entry = vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
            3
        ];
        assert!(matches!(
            CoinFamily::new(&g, zero_entry),
            Err(WalkError::BadCoin { .. })
        ));
    }

    #[test]
    fn grover_matrix_on_cycles_is_a_permutation() {
        let g = Graph::cycle(5).unwrap();
        let u = grover_matrix(&g);
        for z in u.matrix.iter() {
            assert!(z.im == 0.0 && (z.re == 0.0 || (z.re - 1.0).abs() < 1e-15));
        }
        for e in 0..u.dim() {
            let row_sum: f64 = (0..u.dim()).map(|f| u.matrix[(e, f)].re).sum();
            assert!((row_sum - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn grover_matrix_k4_entries_and_unitarity() {
        let g = Graph::complete(4).unwrap();
        let u = grover_matrix(&g);
        let arcs = g.arcs();
        // arc 0 = (0,1); its inverse is arc 1 = (1,0)
        assert!((u.matrix[(0, 1)] - Complex64::new(2.0 / 3.0 - 1.0, 0.0)).norm() < 1e-15);
        let continuing = (0..u.dim())
            .find(|&f| arcs.terminus(f) == 0 && f != 1)
            .unwrap();
        assert!((u.matrix[(0, continuing)] - Complex64::new(2.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!(u.unitarity_defect() <= 1e-10);
    }

    #[test]
    fn evolution_basics() {
        let g = Graph::cycle(5).unwrap();
        let u = grover_matrix(&g);
        let psi0 = WalkState::single_arc(&g, 0).unwrap();
        // t = 0 leaves the state alone
        let same = evolve(&u, &psi0, 0).unwrap();
        assert_eq!(same.amplitudes(), psi0.amplitudes());
        // the cycle walk is periodic with period n
        let back = evolve(&u, &psi0, 5).unwrap();
        for (a, b) in back.amplitudes().iter().zip(psi0.amplitudes()) {
            assert!((a - b).norm() < 1e-10);
        }
        assert_eq!(back.time(), 5);
    }

    #[test]
    fn evolve_twice_matches_two_steps() {
        let g = Graph::complete(4).unwrap();
        let u = grover_matrix(&g);
        let psi0 = WalkState::uniform_incoming(&g, 2).unwrap();
        let two = evolve(&u, &psi0, 2).unwrap();
        let chained = evolve(&u, &evolve(&u, &psi0, 1).unwrap(), 1).unwrap();
        for (a, b) in two.amplitudes().iter().zip(chained.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn norm_drift_is_detected() {
        let g = Graph::cycle(3).unwrap();
        let broken = EvolutionMatrix {
            matrix: DMatrix::from_diagonal_element(6, 6, Complex64::new(1.5, 0.0)),
            kind: WalkKind::GeneralCoined,
        };
        let psi0 = WalkState::uniform(&g);
        assert!(matches!(
            evolve(&broken, &psi0, 3).unwrap_err(),
            WalkError::NormDrift { step: 1, .. }
        ));
    }

    #[test]
    fn state_constructor_validation() {
        let g = Graph::cycle(3).unwrap();
        assert!(matches!(
            WalkState::single_arc(&g, 6),
            Err(WalkError::BadArc { arc: 6, dim: 6 })
        ));
        assert!(matches!(
            WalkState::uniform_incoming(&g, 5),
            Err(WalkError::BadVertex { vertex: 5, n: 3 })
        ));
    }

    #[test]
    fn char_poly_of_cycles() {
        for n in [3usize, 4, 7] {
            let mut coeffs = vec![0i64; 2 * n + 1];
            coeffs[0] = 1;
            coeffs[n] = -2;
            coeffs[2 * n] = 1;
            assert_eq!(
                grover_char_poly(&Graph::cycle(n).unwrap()),
                Polynomial::from_ints(&coeffs)
            );
        }
    }

    #[test]
    fn char_poly_k4_structure() {
        let g = Graph::complete(4).unwrap();
        let p = grover_char_poly(&g);
        assert_eq!(p.degree(), Some(12));
        // (lambda^2 - 1)^2 divides the characteristic polynomial
        assert!(p
            .div_exact(&Polynomial::from_ints(&[-1, 0, 1]).pow(2))
            .is_some());
        // numeric spot-check against the direct 12x12 determinant
        let u = grover_matrix(&g);
        for lambda in [
            Complex64::new(0.4, 0.3),
            Complex64::new(-0.2, 0.45),
            Complex64::new(0.5, 0.0),
        ] {
            let mut shifted = u.matrix.clone_owned().map(|z| -z);
            for i in 0..u.dim() {
                shifted[(i, i)] += lambda;
            }
            let direct = shifted.determinant();
            let via_poly = p.eval_complex(lambda);
            assert!(
                (direct - via_poly).norm() <= 1e-8 * via_poly.norm().max(1.0),
                "lambda={lambda}: {direct} vs {via_poly}"
            );
        }
    }

    #[test]
    fn det_form_matches_ihara_polynomial_for_two_regular_graphs() {
        use crate::zeta::ihara_reciprocal_polynomial;
        for n in [3usize, 5, 9] {
            let g = Graph::cycle(n).unwrap();
            assert_eq!(det_i_minus_u_grover(&g), ihara_reciprocal_polynomial(&g));
        }
        // the identity is specific to degree 2: K_4 separates the routes
        let k4 = Graph::complete(4).unwrap();
        assert_ne!(det_i_minus_u_grover(&k4), ihara_reciprocal_polynomial(&k4));
    }

    #[test]
    fn det_form_matches_direct_determinant_numerically() {
        for g in [Graph::complete(4).unwrap(), Graph::petersen()] {
            let u = grover_matrix(&g);
            let p = det_i_minus_u_grover(&g);
            for point in [0.3, -0.45, 0.8] {
                let mut shifted = u.matrix.map(|z| z * Complex64::new(-point, 0.0));
                for i in 0..u.dim() {
                    shifted[(i, i)] += Complex64::new(1.0, 0.0);
                }
                let direct = shifted.determinant().re;
                let via_poly = p.eval_f64(point);
                assert!(
                    (direct - via_poly).abs() <= 1e-8 * via_poly.abs().max(1.0),
                    "u={point}: {direct} vs {via_poly}"
                );
            }
        }
    }

    #[test]
    fn det_form_at_zero_is_one() {
        for g in [Graph::cycle(6).unwrap(), Graph::complete(5).unwrap()] {
            assert_eq!(det_i_minus_u_grover(&g).coeff(0), rat_int(1));
            assert_eq!(det_i_minus_u_grover_at(&g, 0.0), 1.0);
        }
    }

    #[test]
    fn char_poly_handles_trees_by_exact_division() {
        let g = Graph::path(2).unwrap();
        assert_eq!(grover_char_poly(&g), Polynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(det_i_minus_u_grover(&g), Polynomial::from_ints(&[1, 0, -1]));
    }

    #[test]
    fn cycle_spectrum_is_doubled_roots_of_unity() {
        for n in [3usize, 4, 6] {
            let g = Graph::cycle(n).unwrap();
            let spec = grover_spectrum(&g).unwrap();
            assert!(spec.max_match_distance <= 1e-8);
            assert_eq!(spec.mapped.total_multiplicity(), 2 * n);
            let mut expected: Vec<Complex64> = (0..n)
                .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
                .collect();
            expected.extend(expected.clone());
            assert!(multiset_match_distance(&spec.mapped.expanded(), &expected) <= 1e-8);
            // every clustered line carries multiplicity exactly 2
            assert!(spec.mapped.eigenvalues.iter().all(|l| l.multiplicity == 2));
        }
    }

    #[test]
    fn petersen_spectrum_counts() {
        let g = Graph::petersen();
        let t_spec = transition_spectrum(&g);
        // Spec(T) = {-2/3 x4, 1/3 x5, 1 x1}
        assert!((t_spec[0] + 2.0 / 3.0).abs() < 1e-10);
        assert!((t_spec[4] - 1.0 / 3.0).abs() < 1e-10);
        assert!((t_spec[9] - 1.0).abs() < 1e-10);

        let spec = grover_spectrum(&g).unwrap();
        assert_eq!(spec.mapped.total_multiplicity(), 30);
        assert_eq!(spec.direct.total_multiplicity(), 30);
        assert!(spec.max_match_distance <= 1e-8);
    }
}
