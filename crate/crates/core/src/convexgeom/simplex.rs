//! Dense tableau simplex for small problems `max cᵀx, Ax ≤ b, x ≥ 0` with
//! `b ≥ 0`, so the slack basis is feasible from the start. Bland's rule
//! prevents cycling on the degenerate vertices polygons produce.

pub(crate) struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
}

pub(crate) fn maximize(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Option<LpSolution> {
    let m = a.len();
    let n = c.len();
    debug_assert!(b.iter().all(|&v| v >= 0.0));
    let width = n + m + 1;
    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        t[i][..n].copy_from_slice(&a[i]);
        t[i][n + i] = 1.0;
        t[i][width - 1] = b[i];
    }
    for j in 0..n {
        t[m][j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    let eps = 1e-13;

    for _ in 0..10_000 {
        // entering: lowest index with negative reduced cost
        let Some(col) = (0..n + m).find(|&j| t[m][j] < -eps) else {
            let mut x = vec![0.0; n];
            for (i, &bv) in basis.iter().enumerate() {
                if bv < n {
                    x[bv] = t[i][width - 1];
                }
            }
            return Some(LpSolution {
                x,
                objective: t[m][width - 1],
            });
        };
        // leaving: minimum ratio, ties broken by lowest basis index
        let mut row = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][col] > eps {
                let ratio = t[i][width - 1] / t[i][col];
                let better = match row {
                    None => true,
                    Some(r) => {
                        ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[i] < basis[r])
                    }
                };
                if better {
                    best = ratio;
                    row = Some(i);
                }
            }
        }
        let row = row?; // unbounded
        let pivot = t[row][col];
        for v in t[row].iter_mut() {
            *v /= pivot;
        }
        let pivot_row = t[row].clone();
        for (i, r) in t.iter_mut().enumerate() {
            if i != row {
                let factor = r[col];
                if factor != 0.0 {
                    for (v, p) in r.iter_mut().zip(&pivot_row) {
                        *v -= factor * p;
                    }
                }
            }
        }
        basis[row] = col;
    }
    None
}
