//! Rigorous Perron-root enclosures for nonnegative integer matrices.
//!
//! For an irreducible block `A` and any positive vector `v`,
//! `min_i (Av)_i / v_i ≤ ρ(A) ≤ max_i (Av)_i / v_i` (Collatz–Wielandt).
//! The vector comes from float power iteration on `A + I` (primitive, so the
//! iteration converges even for periodic blocks) and is rounded to a dyadic
//! rational before the bounds are evaluated exactly. The spectral radius of
//! a reducible matrix is the maximum over its strongly connected components.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::exact::{from_f64, Enclosure};

/// Dyadic scale used when rounding power-iteration vectors.
const VECTOR_BITS: i32 = 48;

/// How many float iterations run between exact bound evaluations.
const CHECK_EVERY: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerronEnclosure {
    pub enclosure: Enclosure,
    pub iterations: usize,
    /// False when the iteration cap was hit before the width target.
    pub reached_tolerance: bool,
}

/// Exact Collatz–Wielandt bounds `[min (Av)_i/v_i, max (Av)_i/v_i]` for a
/// square nonnegative matrix and a positive integer vector.
///
/// The bounds enclose `ρ(A)` whenever `A` is irreducible.
pub fn collatz_wielandt(matrix: &[Vec<u64>], v: &[BigInt]) -> Enclosure {
    assert_eq!(matrix.len(), v.len());
    assert!(v.iter().all(|x| x > &BigInt::zero()), "vector must be positive");
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    for (row, vi) in matrix.iter().zip(v) {
        let av: BigInt = row
            .iter()
            .zip(v)
            .filter(|(&a, _)| a != 0)
            .map(|(&a, vj)| BigInt::from(a) * vj)
            .sum();
        let ratio = BigRational::new(av, vi.clone());
        lo = Some(match lo {
            Some(l) if l <= ratio => l,
            _ => ratio.clone(),
        });
        hi = Some(match hi {
            Some(h) if h >= ratio => h,
            _ => ratio,
        });
    }
    Enclosure::new(lo.expect("nonempty matrix"), hi.expect("nonempty matrix"))
}

fn block_enclosure(block: &[Vec<u64>], tol: f64, max_iter: usize) -> PerronEnclosure {
    let n = block.len();
    if n == 1 {
        return PerronEnclosure {
            enclosure: Enclosure::from_integer(block[0][0] as i64),
            iterations: 0,
            reached_tolerance: true,
        };
    }
    let tol_q = from_f64(tol);
    let mut x = vec![1.0f64; n];
    let mut best: Option<Enclosure> = None;
    let mut iterations = 0;
    while iterations < max_iter {
        for _ in 0..CHECK_EVERY {
            let mut y = x.clone();
            for (i, row) in block.iter().enumerate() {
                y[i] += row
                    .iter()
                    .zip(&x)
                    .map(|(&a, &xj)| a as f64 * xj)
                    .sum::<f64>();
            }
            let norm = y.iter().cloned().fold(0.0, f64::max);
            x = y.into_iter().map(|v| v / norm).collect();
        }
        iterations += CHECK_EVERY;

        let scale = 2f64.powi(VECTOR_BITS);
        let v: Vec<BigInt> = x
            .iter()
            .map(|&xi| BigInt::from(((xi * scale).round() as i64).max(1)))
            .collect();
        let e = collatz_wielandt(block, &v);
        // Every CW pair is valid, so the intersection of all of them is too.
        let e = match best {
            Some(b) => Enclosure::new(
                b.lo().clone().max(e.lo().clone()),
                b.hi().clone().min(e.hi().clone()),
            ),
            None => e,
        };
        let done = e.width() <= tol_q;
        best = Some(e);
        if done {
            return PerronEnclosure {
                enclosure: best.unwrap(),
                iterations,
                reached_tolerance: true,
            };
        }
    }
    PerronEnclosure {
        enclosure: best.expect("at least one evaluation"),
        iterations,
        reached_tolerance: false,
    }
}

/// Encloses the spectral radius of a square nonnegative integer matrix to
/// width `tol`, or returns the tightest enclosure found within `max_iter`
/// float iterations per component.
pub fn perron_root_enclosure(matrix: &[Vec<u64>], tol: f64, max_iter: usize) -> PerronEnclosure {
    let n = matrix.len();
    let mut graph = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (i, row) in matrix.iter().enumerate() {
        assert_eq!(row.len(), n, "matrix must be square");
        for (j, &a) in row.iter().enumerate() {
            if a != 0 {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }

    let mut result = PerronEnclosure {
        enclosure: Enclosure::from_integer(0),
        iterations: 0,
        reached_tolerance: true,
    };
    for component in tarjan_scc(&graph) {
        let idx: Vec<usize> = component.iter().map(|v| v.index()).collect();
        let block: Vec<Vec<u64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| matrix[i][j]).collect())
            .collect();
        if block.iter().all(|row| row.iter().all(|&a| a == 0)) {
            continue; // acyclic singleton, spectral radius 0
        }
        let part = block_enclosure(&block, tol, max_iter);
        result.enclosure = result.enclosure.max(&part.enclosure);
        result.iterations += part.iterations;
        result.reached_tolerance &= part.reached_tolerance;
    }
    result
}
