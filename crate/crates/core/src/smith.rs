//! Smith normal form over the integers, for presenting finite abelian
//! quotients by their invariant factors.

/// Diagonal of the Smith normal form of `mat` (rows x cols, row-major),
/// as nonnegative integers with `d[i] | d[i+1]`. Trailing zeros are kept.
pub fn smith_normal_form(mut mat: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let min_dim = rows.min(cols);
    let mut diag = Vec::with_capacity(min_dim);

    for k in 0..min_dim {
        // pivot: smallest nonzero |entry| in the trailing submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if mat[i][j] != 0 {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => mat[i][j].abs() < mat[pi][pj].abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        mat.swap(k, pi);
        for row in mat.iter_mut() {
            row.swap(k, pj);
        }

        loop {
            let p = mat[k][k];
            let mut dirty = false;
            for i in k + 1..rows {
                let q = mat[i][k].div_euclid(p);
                if q != 0 {
                    for j in k..cols {
                        mat[i][j] -= q * mat[k][j];
                    }
                }
                if mat[i][k] != 0 {
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                let q = mat[k][j].div_euclid(p);
                if q != 0 {
                    for i in k..rows {
                        mat[i][j] -= q * mat[i][k];
                    }
                }
                if mat[k][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // a nonzero remainder is strictly smaller than |p|; move it
            // to the pivot position and repeat
            let mut best = (k, k);
            for i in k..rows {
                for j in k..cols {
                    if mat[i][j] != 0 && mat[i][j].abs() < mat[best.0][best.1].abs() {
                        best = (i, j);
                    }
                }
            }
            mat.swap(k, best.0);
            for row in mat.iter_mut() {
                row.swap(k, best.1);
            }
        }
        diag.push(mat[k][k].abs());
    }

    while diag.len() < min_dim {
        diag.push(0);
    }

    // enforce the divisibility chain d_i | d_{i+1}
    let r = diag.iter().filter(|&&d| d != 0).count();
    loop {
        let mut changed = false;
        for i in 0..r.saturating_sub(1) {
            if diag[i + 1] % diag[i] != 0 {
                let a = diag[i];
                let b = diag[i + 1];
                let g = num_integer::gcd(a, b);
                diag[i] = g;
                diag[i + 1] = a / g * b;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    diag
}

/// Invariant factors of the abelian group `Z^rank / columns`, dropping
/// trivial factors. A zero diagonal entry would mean an infinite factor;
/// callers present finite groups, so zeros are rejected by debug assert.
pub fn quotient_invariants(rank: usize, relation_columns: &[Vec<i128>]) -> Vec<u64> {
    if rank == 0 {
        return vec![];
    }
    let mat: Vec<Vec<i128>> = (0..rank)
        .map(|i| relation_columns.iter().map(|c| c[i]).collect())
        .collect();
    let diag = smith_normal_form(mat);
    debug_assert!(
        diag.iter().take(rank).all(|&d| d != 0),
        "quotient not finite"
    );
    diag.into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect()
}
