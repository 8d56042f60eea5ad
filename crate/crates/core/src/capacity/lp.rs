//! Exact ℓ¹ regression by a dense rational simplex.
//!
//! `min_c ‖t + A c‖₁` over free real `c` becomes the linear program
//!
//! ```text
//! minimize   Σ_g (u_g + v_g)
//! subject to Σ_k A_gk (p_k - q_k) - u_g + v_g = -t_g,   p, q, u, v ≥ 0
//! ```
//!
//! Starting from `c = 0`, each row's basic variable is `v_g` (when
//! `-t_g ≥ 0`) or `u_g` (after negating the row), so no phase one is needed.
//! Pricing is Dantzig's rule; after a run of degenerate pivots the solver
//! switches permanently to Bland's rule, which cannot cycle.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::CapacityError;

/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_STREAK: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct L1Fit {
    pub coefficients: Vec<BigRational>,
    /// `‖t + A c‖₁` at the returned coefficients, exact.
    pub optimum: BigRational,
    pub pivots: usize,
    pub used_bland: bool,
}

/// Minimizes `‖target + matrix · c‖₁`; `matrix` has one row per
/// coordinate and one column per unknown.
pub fn l1_fit(matrix: &[Vec<BigRational>], target: &[BigRational]) -> Result<L1Fit, CapacityError> {
    let m = target.len();
    assert_eq!(matrix.len(), m, "one matrix row per target entry");
    let k = matrix.first().map_or(0, |r| r.len());
    assert!(matrix.iter().all(|r| r.len() == k), "ragged matrix");

    let n = 2 * k + 2 * m;
    let (u0, v0) = (2 * k, 2 * k + m);
    // Row i: [columns 0..n | rhs]; basis[i] is the basic variable of row i.
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for g in 0..m {
        let mut row = vec![BigRational::zero(); n + 1];
        for j in 0..k {
            row[j] = matrix[g][j].clone();
            row[k + j] = -matrix[g][j].clone();
        }
        row[u0 + g] = BigRational::from_integer((-1).into());
        row[v0 + g] = BigRational::from_integer(1.into());
        row[n] = -target[g].clone();
        if row[n].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            basis.push(u0 + g);
        } else {
            basis.push(v0 + g);
        }
        rows.push(row);
    }

    // Reduced costs d_j = c_j - Σ_i T_ij (all basic costs are 1); the last
    // entry holds minus the objective value.
    let cost = |j: usize| if j >= u0 { 1 } else { 0 };
    let mut obj = vec![BigRational::zero(); n + 1];
    for (j, d) in obj.iter_mut().enumerate() {
        let s: BigRational = rows.iter().map(|r| r[j].clone()).sum();
        *d = if j < n { BigRational::from_integer(cost(j).into()) - s } else { -s };
    }

    let mut pivots = 0;
    let mut streak = 0;
    let mut bland = false;
    loop {
        let entering = if bland {
            (0..n).find(|&j| obj[j].is_negative())
        } else {
            (0..n)
                .filter(|&j| obj[j].is_negative())
                .min_by(|&a, &b| obj[a].cmp(&obj[b]).then(a.cmp(&b)))
        };
        let Some(e) = entering else { break };

        // Ratio test; ties go to the smallest basic variable index.
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row[e].is_positive() {
                let ratio = &row[n] / &row[e];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, theta)) = leave else {
            return Err(CapacityError::LpFailure(
                "objective unbounded below (internal error)".into(),
            ));
        };

        if theta.is_zero() {
            streak += 1;
            if streak >= DEGENERATE_STREAK {
                bland = true;
            }
        } else {
            streak = 0;
        }

        let piv = rows[r][e].clone();
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x /= &piv;
            }
        }
        let support: Vec<usize> = (0..=n).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        let eliminate = |row: &mut Vec<BigRational>| {
            let factor = row[e].clone();
            if factor.is_zero() {
                return;
            }
            for &j in &support {
                row[j] -= &factor * &pivot_row[j];
            }
        };
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut obj);
        basis[r] = e;
        pivots += 1;
    }

    let mut x = vec![BigRational::zero(); n];
    for (i, &b) in basis.iter().enumerate() {
        x[b] = rows[i][n].clone();
    }
    let coefficients: Vec<BigRational> = (0..k).map(|j| &x[j] - &x[k + j]).collect();
    let optimum = residual_norm(matrix, target, &coefficients);
    if optimum != -obj[n].clone() {
        return Err(CapacityError::LpFailure(format!(
            "tableau objective {} disagrees with recomputed residual {} (internal error)",
            -obj[n].clone(),
            optimum
        )));
    }
    Ok(L1Fit {
        coefficients,
        optimum,
        pivots,
        used_bland: bland,
    })
}

/// `‖target + matrix · c‖₁`, exact.
pub fn residual_norm(matrix: &[Vec<BigRational>], target: &[BigRational], c: &[BigRational]) -> BigRational {
    matrix
        .iter()
        .zip(target)
        .map(|(row, t)| {
            let r: BigRational = row.iter().zip(c).map(|(a, x)| a * x).sum::<BigRational>() + t;
            r.abs()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{integer, rational, to_f64};

    fn q(v: &[(i64, i64)]) -> Vec<BigRational> {
        v.iter().map(|&(n, d)| rational(n, d)).collect()
    }

    /// Exact solve of a small square system by Gaussian elimination.
    fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
        let n = b.len();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            b.swap(col, p);
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = &a[r][col] / &a[col][col];
                    for c in col..n {
                        let v = &f * &a[col][c];
                        a[r][c] -= v;
                    }
                    let v = &f * &b[col];
                    b[r] -= v;
                }
            }
        }
        Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
    }

    /// Oracle: an optimal ℓ¹ fit interpolates `k` coordinates, so the
    /// minimum over all `k`-subsets of zero-residual solutions is optimal
    /// when the matrix has full column rank (`None` otherwise).
    fn vertex_oracle(matrix: &[Vec<BigRational>], target: &[BigRational]) -> Option<BigRational> {
        let m = target.len();
        let k = matrix[0].len();
        let mut best: Option<BigRational> = None;
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let a: Vec<Vec<BigRational>> = idx.iter().map(|&i| matrix[i].clone()).collect();
            let b: Vec<BigRational> = idx.iter().map(|&i| -target[i].clone()).collect();
            if let Some(c) = solve(a, b) {
                let v = residual_norm(matrix, target, &c);
                best = Some(best.map_or(v.clone(), |b| b.min(v)));
            }
            // Next combination.
            let mut i = k;
            loop {
                if i == 0 {
                    return best;
                }
                i -= 1;
                if idx[i] < m - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    return best;
                }
            }
        }
    }

    #[test]
    fn chebyshev_degree_two_by_hand() {
        // Rows for group elements -2, 0, 2 (the only ones in the support);
        // columns δ_0 and f, target f².
        let matrix = vec![q(&[(0, 1), (0, 1)]), q(&[(1, 1), (0, 1)]), q(&[(0, 1), (0, 1)])];
        let target = q(&[(1, 4), (1, 2), (1, 4)]);
        let fit = l1_fit(&matrix, &target).unwrap();
        assert_eq!(fit.optimum, rational(1, 2));
        assert_eq!(fit.coefficients[0], rational(-1, 2));
    }

    #[test]
    fn disjoint_supports_cannot_cancel() {
        let matrix = vec![q(&[(1, 1), (0, 1)]), q(&[(0, 1), (1, 1)]), q(&[(0, 1), (0, 1)])];
        let target = q(&[(0, 1), (0, 1), (1, 1)]);
        let fit = l1_fit(&matrix, &target).unwrap();
        assert_eq!(fit.optimum, integer(1));
        assert!(fit.coefficients.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn exact_cancellation_reaches_zero() {
        let matrix = vec![q(&[(1, 1), (1, 1)])];
        let target = q(&[(1, 1)]);
        assert_eq!(l1_fit(&matrix, &target).unwrap().optimum, integer(0));
    }

    #[test]
    fn agrees_with_vertex_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..60 {
            let m = rng.gen_range(2..=8);
            let k = rng.gen_range(1..=m.min(4));
            let matrix: Vec<Vec<BigRational>> = (0..m)
                .map(|_| (0..k).map(|_| rational(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect())
                .collect();
            let target: Vec<BigRational> =
                (0..m).map(|_| rational(rng.gen_range(-6..=6), rng.gen_range(1..=4))).collect();
            let fit = l1_fit(&matrix, &target).unwrap();
            if let Some(oracle) = vertex_oracle(&matrix, &target) {
                assert_eq!(fit.optimum, oracle);
            }
            assert!(fit.optimum <= residual_norm(&matrix, &target, &vec![BigRational::zero(); k]));
        }
    }

    #[test]
    fn agrees_with_grid_search() {
        // Two unknowns, coarse-to-fine float grid as an independent oracle.
        let matrix = vec![
            q(&[(1, 1), (1, 2)]),
            q(&[(1, 1), (-1, 1)]),
            q(&[(1, 3), (2, 1)]),
            q(&[(0, 1), (1, 1)]),
            q(&[(-1, 1), (1, 4)]),
        ];
        let target = q(&[(3, 1), (-1, 2), (1, 1), (2, 1), (1, 3)]);
        let fit = l1_fit(&matrix, &target).unwrap();
        let mf: Vec<Vec<f64>> = matrix.iter().map(|r| r.iter().map(to_f64).collect()).collect();
        let tf: Vec<f64> = target.iter().map(to_f64).collect();
        let eval = |c: [f64; 2]| -> f64 {
            mf.iter().zip(&tf).map(|(r, t)| (t + r[0] * c[0] + r[1] * c[1]).abs()).sum()
        };
        let (mut center, mut half) = ([0.0, 0.0], 8.0);
        let mut best = eval(center);
        for _ in 0..40 {
            let mut next = center;
            for i in -20..=20 {
                for j in -20..=20 {
                    let c = [center[0] + half * i as f64 / 20.0, center[1] + half * j as f64 / 20.0];
                    let v = eval(c);
                    if v < best {
                        best = v;
                        next = c;
                    }
                }
            }
            center = next;
            half *= 0.5;
        }
        assert!((best - to_f64(&fit.optimum)).abs() < 1e-6, "{best} vs {}", fit.optimum);
    }
}
