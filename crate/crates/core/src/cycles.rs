//! Brute-force reduced-cycle counting.
//!
//! Two oracles that share no counting code: a depth-first enumeration of
//! non-backtracking closed paths, and traces of powers of the arc-adjacency
//! matrix. Their exact agreement is one of the main verification targets of
//! the crate.
//!
//! A cycle of length k is an arc sequence (e_1, ..., e_k) with each arc
//! leaving the vertex the previous one entered, no step reversing the
//! previous arc, closure t(e_k) = o(e_1), and no tail (e_k is not the
//! inverse of e_1). Cycles with different starting arcs or directions are
//! counted separately.

use crate::graph::{ArcSet, Graph};
use num::{BigUint, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

/// Default cap on DFS steps before enumeration aborts.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycleError {
    #[error("enumeration exceeded the node budget of {budget} DFS steps")]
    BudgetExceeded { budget: u64 },
    #[error("vertex {vertex} out of range for n={n}")]
    BadVertex { vertex: usize, n: usize },
}

/// Reduced-cycle counts N_1..N_K (or rooted counts when `root` is set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCounts {
    counts: Vec<u64>,
    root: Option<usize>,
}

impl CycleCounts {
    pub fn count(&self, k: usize) -> u64 {
        assert!(k >= 1, "cycle lengths start at 1");
        self.counts.get(k - 1).copied().unwrap_or(0)
    }

    pub fn k_max(&self) -> usize {
        self.counts.len()
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    /// Counts N_1..N_K in order.
    pub fn as_slice(&self) -> &[u64] {
        &self.counts
    }
}

// Counts serialize as a bare JSON array [N_1, ..., N_K].
impl Serialize for CycleCounts {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.counts.len()))?;
        for c in &self.counts {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// Counts reduced cycles of each length up to `k_max` by exhaustive DFS,
/// with the default step budget.
pub fn count_reduced_cycles(g: &Graph, k_max: usize) -> Result<CycleCounts, CycleError> {
    count_reduced_cycles_with_budget(g, k_max, DEFAULT_NODE_BUDGET)
}

pub fn count_reduced_cycles_with_budget(
    g: &Graph,
    k_max: usize,
    budget: u64,
) -> Result<CycleCounts, CycleError> {
    let counts = dispatch_counts(g, None, k_max, budget)?;
    Ok(CycleCounts { counts, root: None })
}

/// Counts reduced cycles whose first arc leaves `x0` (and therefore close
/// at `x0`), by the same DFS.
pub fn count_rooted_reduced_cycles(
    g: &Graph,
    x0: usize,
    m_max: usize,
) -> Result<CycleCounts, CycleError> {
    count_rooted_reduced_cycles_with_budget(g, x0, m_max, DEFAULT_NODE_BUDGET)
}

pub fn count_rooted_reduced_cycles_with_budget(
    g: &Graph,
    x0: usize,
    m_max: usize,
    budget: u64,
) -> Result<CycleCounts, CycleError> {
    if x0 >= g.vertex_count() {
        return Err(CycleError::BadVertex {
            vertex: x0,
            n: g.vertex_count(),
        });
    }
    let counts = dispatch_counts(g, Some(x0), m_max, budget)?;
    Ok(CycleCounts {
        counts,
        root: Some(x0),
    })
}

fn dispatch_counts(
    g: &Graph,
    root: Option<usize>,
    k_max: usize,
    budget: u64,
) -> Result<Vec<u64>, CycleError> {
    #[cfg(feature = "parallel")]
    {
        cycle_counts_par(g, root, k_max, budget)
    }
    #[cfg(not(feature = "parallel"))]
    {
        cycle_counts_seq(g, root, k_max, budget)
    }
}

/// Sequential DFS driver. Exposed (with the rayon variant) for the bench
/// suite; library callers use [`count_reduced_cycles`].
pub fn cycle_counts_seq(
    g: &Graph,
    root: Option<usize>,
    k_max: usize,
    budget: u64,
) -> Result<Vec<u64>, CycleError> {
    let arcs = g.arcs();
    let steps = AtomicU64::new(0);
    let mut counts = vec![0u64; k_max];
    for first in start_arcs(&arcs, root) {
        let partial = dfs_from_arc(&arcs, first, k_max, budget, &steps)?;
        for (total, p) in counts.iter_mut().zip(&partial) {
            *total += p;
        }
    }
    Ok(counts)
}

/// Rayon DFS driver: one task per starting arc, counts combined by exact
/// integer addition (order-independent).
#[cfg(feature = "parallel")]
pub fn cycle_counts_par(
    g: &Graph,
    root: Option<usize>,
    k_max: usize,
    budget: u64,
) -> Result<Vec<u64>, CycleError> {
    use rayon::prelude::*;
    let arcs = g.arcs();
    let steps = AtomicU64::new(0);
    let firsts: Vec<usize> = start_arcs(&arcs, root).collect();
    let partials: Vec<Result<Vec<u64>, CycleError>> = firsts
        .par_iter()
        .map(|&first| dfs_from_arc(&arcs, first, k_max, budget, &steps))
        .collect();
    let mut counts = vec![0u64; k_max];
    for partial in partials {
        let partial = partial?;
        for (total, p) in counts.iter_mut().zip(&partial) {
            *total += p;
        }
    }
    Ok(counts)
}

fn start_arcs<'a>(
    arcs: &'a ArcSet,
    root: Option<usize>,
) -> Box<dyn Iterator<Item = usize> + 'a> {
    match root {
        Some(x0) => Box::new(arcs.outgoing(x0).iter().copied()),
        None => Box::new(0..arcs.len()),
    }
}

/// All reduced cycles whose first arc is `first`, one count per length.
/// Plain DFS over (current arc, length); no memoization.
fn dfs_from_arc(
    arcs: &ArcSet,
    first: usize,
    k_max: usize,
    budget: u64,
    steps: &AtomicU64,
) -> Result<Vec<u64>, CycleError> {
    let mut counts = vec![0u64; k_max];
    if k_max == 0 {
        return Ok(counts);
    }
    tick(steps, budget)?;
    // a length-1 cycle would be a self-loop, which simple graphs exclude
    if k_max >= 2 {
        extend(arcs, first, 1, first, k_max, budget, steps, &mut counts)?;
    }
    Ok(counts)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    arcs: &ArcSet,
    current: usize,
    len: usize,
    first: usize,
    k_max: usize,
    budget: u64,
    steps: &AtomicU64,
    counts: &mut [u64],
) -> Result<(), CycleError> {
    let home = arcs.origin(first);
    for &next in arcs.outgoing(arcs.terminus(current)) {
        if next == arcs.inv(current) {
            continue; // backtracking
        }
        tick(steps, budget)?;
        let len = len + 1;
        if arcs.terminus(next) == home && next != arcs.inv(first) {
            counts[len - 1] += 1; // closed without a tail
        }
        if len < k_max {
            extend(arcs, next, len, first, k_max, budget, steps, counts)?;
        }
    }
    Ok(())
}

fn tick(steps: &AtomicU64, budget: u64) -> Result<(), CycleError> {
    if steps.fetch_add(1, Ordering::Relaxed) >= budget {
        return Err(CycleError::BudgetExceeded { budget });
    }
    Ok(())
}

/// Independent oracle: N_k as the trace of the k-th power of the 2m x 2m
/// arc-adjacency matrix B, with B[e][f] = 1 exactly when f continues e
/// without reversing it. Exact integer arithmetic throughout; intended for
/// k_max up to ~16 at desk scale.
pub fn hashimoto_trace_counts(g: &Graph, k_max: usize) -> CycleCounts {
    // local arc table: edge i = {u,v} with u<v gives arcs 2i=(u,v), 2i+1=(v,u)
    let mut origin = Vec::new();
    let mut terminus = Vec::new();
    for &(u, v) in g.edges() {
        origin.push(u);
        terminus.push(v);
        origin.push(v);
        terminus.push(u);
    }
    let dim = origin.len();
    let b: Vec<Vec<BigUint>> = (0..dim)
        .map(|e| {
            (0..dim)
                .map(|f| {
                    if terminus[e] == origin[f] && f != (e ^ 1) {
                        BigUint::from(1u32)
                    } else {
                        BigUint::zero()
                    }
                })
                .collect()
        })
        .collect();

    let mut counts = Vec::with_capacity(k_max);
    let mut power = b.clone();
    for _ in 0..k_max {
        let trace: BigUint = (0..dim).map(|i| power[i][i].clone()).sum();
        counts.push(trace.to_u64().expect("cycle count exceeds u64 range"));
        if counts.len() == k_max {
            break;
        }
        let mut next = vec![vec![BigUint::zero(); dim]; dim];
        for i in 0..dim {
            for l in 0..dim {
                if power[i][l].is_zero() {
                    continue;
                }
                for j in 0..dim {
                    if b[l][j].is_zero() {
                        continue;
                    }
                    let add = &power[i][l] * &b[l][j];
                    next[i][j] += add;
                }
            }
        }
        power = next;
    }
    counts.resize(k_max, 0);
    CycleCounts {
        counts,
        root: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_counts() {
        let g = Graph::cycle(3).unwrap();
        let c = count_reduced_cycles(&g, 6).unwrap();
        assert_eq!(c.as_slice(), &[0, 0, 6, 0, 0, 6]);
    }

    #[test]
    fn no_short_cycles_in_simple_graphs() {
        for g in [
            Graph::cycle(4).unwrap(),
            Graph::complete(5).unwrap(),
            Graph::petersen(),
            Graph::path(3).unwrap(),
        ] {
            let c = count_reduced_cycles(&g, 2).unwrap();
            assert_eq!(c.as_slice(), &[0, 0]);
        }
    }

    #[test]
    fn k4_counts() {
        let g = Graph::complete(4).unwrap();
        let c = count_reduced_cycles(&g, 4).unwrap();
        assert_eq!(c.count(3), 24);
        assert_eq!(c.count(4), 24);
    }

    #[test]
    fn trees_have_no_reduced_cycles() {
        let g = Graph::path(4).unwrap();
        let c = count_reduced_cycles(&g, 10).unwrap();
        assert!(c.as_slice().iter().all(|&n| n == 0));
        for x0 in 0..4 {
            let r = count_rooted_reduced_cycles(&g, x0, 8).unwrap();
            assert!(r.as_slice().iter().all(|&n| n == 0));
        }
    }

    #[test]
    fn rooted_counts() {
        let c3 = Graph::cycle(3).unwrap();
        let r = count_rooted_reduced_cycles(&c3, 0, 3).unwrap();
        assert_eq!(r.count(3), 2);
        assert_eq!(r.root(), Some(0));

        let c4 = Graph::cycle(4).unwrap();
        let r = count_rooted_reduced_cycles(&c4, 0, 4).unwrap();
        assert_eq!(r.count(4), 2);

        let bad = count_rooted_reduced_cycles(&c4, 9, 4).unwrap_err();
        assert_eq!(bad, CycleError::BadVertex { vertex: 9, n: 4 });
    }

    #[test]
    fn root_sum_equals_total() {
        for g in [Graph::complete(4).unwrap(), Graph::petersen()] {
            let total = count_reduced_cycles(&g, 8).unwrap();
            let mut summed = vec![0u64; 8];
            for x0 in 0..g.vertex_count() {
                let r = count_rooted_reduced_cycles(&g, x0, 8).unwrap();
                for (s, c) in summed.iter_mut().zip(r.as_slice()) {
                    *s += c;
                }
            }
            assert_eq!(summed.as_slice(), total.as_slice());
        }
    }

    #[test]
    fn rooted_counts_match_across_roots_of_transitive_graphs() {
        let g = Graph::cycle(5).unwrap();
        let reference = count_rooted_reduced_cycles(&g, 0, 10).unwrap();
        for x0 in 1..5 {
            let r = count_rooted_reduced_cycles(&g, x0, 10).unwrap();
            assert_eq!(r.as_slice(), reference.as_slice());
        }
    }

    #[test]
    fn hashimoto_matches_dfs() {
        for g in [
            Graph::cycle(3).unwrap(),
            Graph::cycle(6).unwrap(),
            Graph::complete(4).unwrap(),
            Graph::complete(5).unwrap(),
            Graph::petersen(),
            Graph::path(5).unwrap(),
        ] {
            let dfs = count_reduced_cycles(&g, 10).unwrap();
            let trace = hashimoto_trace_counts(&g, 10);
            assert_eq!(dfs.as_slice(), trace.as_slice());
        }
    }

    #[test]
    fn hashimoto_known_values() {
        let c = hashimoto_trace_counts(&Graph::cycle(3).unwrap(), 3);
        assert_eq!(c.count(3), 6);
        let k = hashimoto_trace_counts(&Graph::complete(4).unwrap(), 3);
        assert_eq!(k.count(3), 24);
        assert_eq!(k.count(1), 0);
    }

    #[test]
    fn budget_is_enforced() {
        let g = Graph::complete(5).unwrap();
        let err = count_reduced_cycles_with_budget(&g, 12, 50).unwrap_err();
        assert_eq!(err, CycleError::BudgetExceeded { budget: 50 });
    }

    #[test]
    fn counts_serialize_as_array() {
        let c = count_reduced_cycles(&Graph::cycle(3).unwrap(), 4).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "[0,0,6,0]");
    }
}
