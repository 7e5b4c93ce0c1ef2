//! Small exact integer linear algebra.
//!
//! Everything here operates on tiny matrices (rank of a root datum, so
//! single digits), row-major and over `i64`. The main entry point is
//! [`solve`], a Smith-form solver for `A x = b` over the integers, used
//! for coroot-lattice membership and for locating length-zero group
//! elements.

/// Dot product of two integer vectors of equal length.
pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `n x n` identity matrix, row-major.
pub fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// Row-major `n x n` matrix applied to a column vector.
pub fn mat_vec(mat: &[i64], n: usize, v: &[i64]) -> Vec<i64> {
    (0..n).map(|i| dot(&mat[i * n..(i + 1) * n], v)).collect()
}

/// Row covector times a row-major `n x n` matrix: `(f M)(x) = f(M x)`.
pub fn covec_mat(f: &[i64], mat: &[i64], n: usize) -> Vec<i64> {
    (0..n)
        .map(|j| (0..n).map(|i| f[i] * mat[i * n + j]).sum())
        .collect()
}

/// Product of two row-major `n x n` matrices.
pub fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

/// Rank of an integer matrix (`rows x cols`, row-major), computed by
/// fraction-free Gaussian elimination.
pub fn rank(a: &[i64], rows: usize, cols: usize) -> usize {
    let mut m: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            m.swap(r * cols + j, p * cols + j);
        }
        for i in 0..rows {
            if i == r || m[i * cols + c] == 0 {
                continue;
            }
            let (pi, qi) = (m[r * cols + c], m[i * cols + c]);
            for j in 0..cols {
                m[i * cols + j] = m[i * cols + j] * pi - m[r * cols + j] * qi;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Solve `A x = b` over the integers. `a` is row-major `rows x cols`.
/// Returns one solution if the system is solvable, `None` otherwise.
///
/// Diagonalizes `U A V = D` by elementary row and column operations and
/// back-substitutes. Inputs are desk scale, so plain `i64` arithmetic
/// suffices.
pub fn solve(a: &[i64], rows: usize, cols: usize, b: &[i64]) -> Option<Vec<i64>> {
    debug_assert_eq!(a.len(), rows * cols);
    debug_assert_eq!(b.len(), rows);
    let mut m = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut piv: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = m[i * cols + j];
                    if x != 0
                        && piv.is_none_or(|(pi, pj)| x.abs() < m[pi * cols + pj].abs())
                    {
                        piv = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = piv else {
                break;
            };
            if pi != t {
                for j in 0..cols {
                    m.swap(t * cols + j, pi * cols + j);
                }
                for j in 0..rows {
                    u.swap(t * rows + j, pi * rows + j);
                }
            }
            if pj != t {
                for i in 0..rows {
                    m.swap(i * cols + t, i * cols + pj);
                }
                for i in 0..cols {
                    v.swap(i * cols + t, i * cols + pj);
                }
            }
            let p = m[t * cols + t];
            let mut clean = true;
            for i in (t + 1)..rows {
                let q = m[i * cols + t] / p;
                if q != 0 {
                    for j in 0..cols {
                        m[i * cols + j] -= q * m[t * cols + j];
                    }
                    for j in 0..rows {
                        u[i * rows + j] -= q * u[t * rows + j];
                    }
                }
                if m[i * cols + t] != 0 {
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                let q = m[t * cols + j] / p;
                if q != 0 {
                    for i in 0..rows {
                        m[i * cols + j] -= q * m[i * cols + t];
                    }
                    for i in 0..cols {
                        v[i * cols + j] -= q * v[i * cols + t];
                    }
                }
                if m[t * cols + j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }

    // Back-substitute: D y = U b, x = V y.
    let ub: Vec<i64> = (0..rows)
        .map(|i| dot(&u[i * rows..(i + 1) * rows], b))
        .collect();
    let mut y = vec![0i64; cols];
    for t in 0..steps {
        let d = m[t * cols + t];
        if d != 0 {
            if ub[t] % d != 0 {
                return None;
            }
            y[t] = ub[t] / d;
        } else if ub[t] != 0 {
            return None;
        }
    }
    for t in steps..rows {
        if ub[t] != 0 {
            return None;
        }
    }
    Some((0..cols).map(|i| dot(&v[i * cols..(i + 1) * cols], &y)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_square() {
        // x + y = 3, x - y = 1  =>  (2, 1)
        let a = vec![1, 1, 1, -1];
        let x = solve(&a, 2, 2, &[3, 1]).unwrap();
        assert_eq!(x, vec![2, 1]);
    }

    #[test]
    fn solve_underdetermined() {
        // x - y = 2 has integer solutions
        let a = vec![1, -1];
        let x = solve(&a, 1, 2, &[2]).unwrap();
        assert_eq!(x[0] - x[1], 2);
    }

    #[test]
    fn solve_no_integer_solution() {
        // 2x = 1 has none
        assert!(solve(&[2], 1, 1, &[1]).is_none());
        // 2x + 2y = 1 unsolvable over the integers
        assert!(solve(&[2, 2], 1, 2, &[1]).is_none());
    }

    #[test]
    fn solve_inconsistent() {
        // x = 1 and x = 2
        assert!(solve(&[1, 1], 2, 1, &[1, 2]).is_none());
    }

    #[test]
    fn rank_of_roots() {
        // A2 simple roots inside Z^3 have rank 2
        let a = vec![1, -1, 0, 0, 1, -1];
        assert_eq!(rank(&a, 2, 3), 2);
        let b = vec![1, -1, 0, 1, -1, 0];
        assert_eq!(rank(&b, 2, 3), 1);
    }

    #[test]
    fn solve_verifies() {
        // random-ish fixed cases, checked by substitution
        let cases = [
            (vec![2, 1, 0, 1, 3, -1, 0, 0, 1], 3usize, 3usize, vec![5, 2, 7]),
            (vec![1, 2, 3, 0, 1, 4], 2, 3, vec![6, 5]),
        ];
        for (a, r, c, b) in cases {
            if let Some(x) = solve(&a, r, c, &b) {
                for i in 0..r {
                    assert_eq!(dot(&a[i * c..(i + 1) * c], &x), b[i]);
                }
            }
        }
    }
}
