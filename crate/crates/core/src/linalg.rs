//! Dense exact linear algebra over [`Scalar`]s.

use crate::scalars::{Field, Scalar};

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(field: Field, n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let field = a[0][0].field();
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![field.zero(); p]; n];
    for i in 0..n {
        for k in 0..m {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..p {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    if !m[r][j].is_zero() {
                        m[i][j] = &m[i][j] - &(&f * &m[r][j]);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Inverse of a square matrix, `None` if singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let field = m[0][0].field();
    let id = identity(field, n);
    let mut aug: Matrix = m.iter().zip(&id).map(|(r, e)| r.iter().chain(e).cloned().collect()).collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of `{x : m x = 0}` in reduced form (one vector per free column).
pub fn nullspace(m: &Matrix, cols: usize, field: Field) -> Vec<Vec<Scalar>> {
    let mut a = m.clone();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); cols];
            v[f] = field.one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -&a[r][f];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_fourier_two() {
        let f = Field::Rational;
        let m = vec![vec![f.one(), f.one()], vec![f.one(), f.int(-1)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(f, 2));
        assert!(inverse(&vec![vec![f.one(), f.one()], vec![f.one(), f.one()]]).is_none());
    }

    #[test]
    fn nullspace_dimension() {
        let f = Field::Rational;
        let m = vec![vec![f.one(), f.one(), f.zero()]];
        let ns = nullspace(&m, 3, f);
        assert_eq!(ns.len(), 2);
    }
}
