//! Cross-check suites behind the `verify` CLI subcommand: every identity
//! the crate is built around, run over a fixed desk-scale graph set with
//! pinned tolerances, reported as a machine-readable pass/fail list.

use crate::cycles::{count_reduced_cycles, count_rooted_reduced_cycles, hashimoto_trace_counts};
use crate::graph::Graph;
use crate::lattice::{
    laplacian_form_reciprocal, limit_reciprocal_closed_form, limit_reciprocal_quadrature,
    theorem4_table, zeta_cn_reciprocal, QuadratureSpec,
};
use crate::poly::{Polynomial, PowerSeries};
use crate::walk::{det_i_minus_u_grover, evolve, grover_char_poly, grover_matrix, grover_spectrum, WalkState};
use crate::zeta::{cjk_evaluate, generalized_zeta_reciprocal, ihara_reciprocal_polynomial, zeta_series_truncated};
use num::complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    KonnoSato,
    Routes,
    Theorem4,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::KonnoSato => "konno-sato",
            Suite::Routes => "routes",
            Suite::Theorem4 => "theorem4",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn collect(suite: Suite, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite: suite.name(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: String, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

/// 3-cube graph, the one acceptance-set member without a generator.
pub fn cube_graph() -> Graph {
    let mut edges = Vec::new();
    for v in 0..8usize {
        for bit in 0..3 {
            let w = v ^ (1 << bit);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::build(&edges, 8).expect("cube construction is valid")
}

fn routes_graphs() -> Vec<(String, Graph)> {
    let mut set: Vec<(String, Graph)> = (3..=8)
        .map(|n| (format!("cycle:{n}"), Graph::cycle(n).unwrap()))
        .collect();
    set.push(("complete:4".into(), Graph::complete(4).unwrap()));
    set.push(("petersen".into(), Graph::petersen()));
    set
}

fn konno_sato_graphs() -> Vec<(String, Graph)> {
    let mut set = routes_graphs();
    set.push(("complete:5".into(), Graph::complete(5).unwrap()));
    set.push(("cube".into(), cube_graph()));
    set
}

pub fn run_suite(suite: Suite) -> SuiteReport {
    match suite {
        Suite::Routes => run_routes(),
        Suite::KonnoSato => run_konno_sato(),
        Suite::Theorem4 => run_theorem4(),
    }
}

fn run_routes() -> SuiteReport {
    const ORDER: usize = 10;
    let mut checks = Vec::new();
    for (label, g) in routes_graphs() {
        let dfs = count_reduced_cycles(&g, ORDER).expect("within budget");
        let trace = hashimoto_trace_counts(&g, ORDER);
        checks.push(check(
            format!("oracle-agreement/{label}"),
            dfs.as_slice() == trace.as_slice(),
            format!("DFS {:?} vs trace {:?}", dfs.as_slice(), trace.as_slice()),
        ));

        let mut root_sum = vec![0u64; 8];
        for x0 in 0..g.vertex_count() {
            let rooted = count_rooted_reduced_cycles(&g, x0, 8).expect("within budget");
            for (acc, c) in root_sum.iter_mut().zip(rooted.as_slice()) {
                *acc += c;
            }
        }
        let total = count_reduced_cycles(&g, 8).expect("within budget");
        checks.push(check(
            format!("root-sum/{label}"),
            root_sum.as_slice() == total.as_slice(),
            format!("sum over roots {:?} vs {:?}", root_sum, total.as_slice()),
        ));

        let series = zeta_series_truncated(&g, ORDER).expect("within budget");
        let poly = ihara_reciprocal_polynomial(&g);
        let product = series.mul(&PowerSeries::from_polynomial(&poly, ORDER));
        checks.push(check(
            format!("series-determinant/{label}"),
            product.is_one(),
            format!("series x polynomial = {:?} mod u^{}", product, ORDER + 1),
        ));

        if g.is_vertex_transitive() {
            let rooted = crate::zeta::rooted_zeta_series(&g, 0, 8).expect("within budget");
            let mut powered = PowerSeries::one(8);
            for _ in 0..g.vertex_count() {
                powered = powered.mul(&rooted);
            }
            let total_series = zeta_series_truncated(&g, 8).expect("within budget");
            checks.push(check(
                format!("rooted-power/{label}"),
                powered == total_series,
                "rooted series to the n-th power vs whole-graph series".into(),
            ));

            let q = g.regular_degree().expect("transitive builtins are regular") - 1;
            let mut worst = 0.0f64;
            for step in 1..=8 {
                let u = 0.05 * step as f64;
                for u in [u, -u] {
                    if u.abs() * q as f64 >= 1.0 {
                        continue;
                    }
                    let a = cjk_evaluate(&g, u).expect("regular transitive graph");
                    let b = generalized_zeta_reciprocal(&g, u).expect("positive domain");
                    worst = worst.max((a.value - b.value).norm());
                }
            }
            checks.push(check(
                format!("cjk-agreement/{label}"),
                worst <= 1e-10,
                format!("max |cjk - nth-root| = {worst:.3e}"),
            ));
        }
    }

    for n in 3..=12usize {
        let g = Graph::cycle(n).unwrap();
        let mut coeffs = vec![0i64; 2 * n + 1];
        coeffs[0] = 1;
        coeffs[n] = -2;
        coeffs[2 * n] = 1;
        checks.push(check(
            format!("cycle-polynomial/cycle:{n}"),
            ihara_reciprocal_polynomial(&g) == Polynomial::from_ints(&coeffs),
            "reciprocal polynomial vs expanded (1-u^n)^2".into(),
        ));
    }
    SuiteReport::collect(Suite::Routes, checks)
}

fn run_konno_sato() -> SuiteReport {
    let mut checks = Vec::new();
    for (label, g) in konno_sato_graphs() {
        let m = g.edge_count();
        let poly = grover_char_poly(&g);
        let u = grover_matrix(&g);

        let samples = 4 * m + 1;
        let mut worst = 0.0f64;
        for j in 0..samples {
            let angle = 2.0 * std::f64::consts::PI * j as f64 / samples as f64;
            let lambda = Complex64::from_polar(0.5, angle);
            let mut shifted = u.matrix.map(|z| -z);
            for i in 0..u.dim() {
                shifted[(i, i)] += lambda;
            }
            let direct = shifted.determinant();
            let via_poly = poly.eval_complex(lambda);
            let rel = (direct - via_poly).norm() / via_poly.norm().max(1e-300);
            worst = worst.max(rel);
        }
        checks.push(check(
            format!("char-poly-direct/{label}"),
            worst <= 1e-8,
            format!("max relative error {worst:.3e} over {samples} points on |lambda|=1/2"),
        ));

        let defect = u.unitarity_defect();
        checks.push(check(
            format!("unitarity/{label}"),
            defect <= 1e-10,
            format!("max |UU*-I| = {defect:.3e}"),
        ));

        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ m as u64);
        let mut worst_norm = 0.0f64;
        for _ in 0..5 {
            let amplitudes: Vec<Complex64> = (0..2 * m)
                .map(|_| {
                    Complex64::new(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
                })
                .collect();
            let psi0 = WalkState::from_amplitudes(amplitudes).expect("nonzero random state");
            let psi = evolve(&u, &psi0, 100).expect("no norm drift");
            worst_norm = worst_norm.max((psi.norm() - 1.0).abs());
        }
        checks.push(check(
            format!("norm-preservation/{label}"),
            worst_norm <= 1e-9,
            format!("max |norm - 1| after 100 steps = {worst_norm:.3e}"),
        ));

        if g.regular_degree().is_some() {
            let spec = grover_spectrum(&g).expect("stochastic transition spectrum");
            checks.push(check(
                format!("spectral-mapping/{label}"),
                spec.max_match_distance <= 1e-8,
                format!("multiset match distance {:.3e}", spec.max_match_distance),
            ));
        }

        // det(I - uU) = Z(G,u)^{-1} holds exactly in degree 2
        if g.regular_degree() == Some(2) {
            checks.push(check(
                format!("det-link/{label}"),
                det_i_minus_u_grover(&g) == ihara_reciprocal_polynomial(&g),
                "det(I - uU) vs reciprocal zeta polynomial, exact".into(),
            ));
        }
    }

    for n in 3..=8usize {
        let g = Graph::cycle(n).unwrap();
        let mut coeffs = vec![0i64; 2 * n + 1];
        coeffs[0] = 1;
        coeffs[n] = -2;
        coeffs[2 * n] = 1;
        checks.push(check(
            format!("cycle-char-poly/cycle:{n}"),
            grover_char_poly(&g) == Polynomial::from_ints(&coeffs),
            "characteristic polynomial vs expanded (lambda^n - 1)^2".into(),
        ));
    }
    SuiteReport::collect(Suite::KonnoSato, checks)
}

fn run_theorem4() -> SuiteReport {
    let mut checks = Vec::new();
    let spec = QuadratureSpec::midpoint(2048).expect("valid node count");

    let mut worst = 0.0f64;
    for u in [0.1, 0.3, 0.5, 0.7, 0.9, 1.5, 2.0] {
        for u in [u, -u] {
            let got = limit_reciprocal_quadrature(u, &spec).real_value();
            let want = limit_reciprocal_closed_form(u).real_value();
            worst = worst.max((got - want).abs());
        }
    }
    checks.push(check(
        "quadrature-closed-form".into(),
        worst <= 1e-8,
        format!("max |quadrature - max(1,u^2)| = {worst:.3e} at 2048 nodes"),
    ));

    let orders: Vec<usize> = (2..=10).map(|p| 1usize << p).collect();
    for u in [0.3, 0.5, 0.7, 0.9] {
        let table = theorem4_table(u, &orders).expect("|u| < 1");
        let decreasing = table.errors_decreasing();
        let final_error = table.rows.last().expect("nonempty").abs_error;
        checks.push(check(
            format!("convergence/u={u}"),
            decreasing && final_error < 1e-3,
            format!("errors strictly decreasing = {decreasing}, final error {final_error:.3e}"),
        ));
    }

    let lap_spec = QuadratureSpec::midpoint(1024).expect("valid node count");
    let mut worst_lap = 0.0f64;
    for step in 0..20 {
        let u = -0.95 + 0.1 * step as f64;
        let a = limit_reciprocal_quadrature(u, &lap_spec).real_value();
        let b = laplacian_form_reciprocal(u, &lap_spec).real_value();
        worst_lap = worst_lap.max((a - b).abs());
    }
    checks.push(check(
        "laplacian-equivalence".into(),
        worst_lap <= 1e-14,
        format!("max |quadrature - laplacian form| = {worst_lap:.3e} on shared nodes"),
    ));

    let mut worst_riemann = 0.0f64;
    for step in 0..19 {
        let u = -0.9 + 0.1 * step as f64;
        let got = zeta_cn_reciprocal(1024, u).expect("u inside the disc").real_value();
        worst_riemann = worst_riemann.max((got - 1.0).abs());
    }
    checks.push(check(
        "riemann-sum-consistency".into(),
        worst_riemann < 1e-3,
        format!("max |zeta_C_1024 - 1| = {worst_riemann:.3e} on the u grid"),
    ));

    SuiteReport::collect(Suite::Theorem4, checks)
}
