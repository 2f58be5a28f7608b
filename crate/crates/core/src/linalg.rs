//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Vector = Vec<BigInt>;
pub type Matrix = Vec<Vec<BigInt>>;

pub fn int_vec(v: &[i64]) -> Vector {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn int_matrix(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| int_vec(r)).collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn transpose(a: &Matrix, cols: usize) -> Matrix {
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn mat_vec(a: &Matrix, x: &[BigInt]) -> Vector {
    a.iter()
        .map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &r[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vector {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        v.to_vec()
    } else {
        v.iter().map(|x| x / &g).collect()
    }
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | ...`,
/// all diagonal entries nonnegative.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[i][i].clone()).collect()
    }
}

fn swap_rows(m: &mut Matrix, i: usize, j: usize) {
    m.swap(i, j);
}

fn swap_cols(m: &mut Matrix, i: usize, j: usize) {
    for r in m.iter_mut() {
        r.swap(i, j);
    }
}

/// row_i -= q * row_j
fn row_sub(m: &mut Matrix, i: usize, j: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let rj = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(rj) {
        *x -= q * y;
    }
}

/// col_i -= q * col_j
fn col_sub(m: &mut Matrix, i: usize, j: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in m.iter_mut() {
        let t = &r[j] * q;
        r[i] -= t;
    }
}

/// Smith normal form of an `rows x cols` matrix, with deterministic pivoting
/// (smallest nonzero absolute value, first in row-major order).
pub fn smith(a: &Matrix, rows: usize, cols: usize) -> Smith {
    let mut d = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // pick pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    row_sub(&mut d, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        swap_rows(&mut d, t, i);
                        swap_rows(&mut u, t, i);
                        changed = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    col_sub(&mut d, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        swap_cols(&mut d, t, j);
                        swap_cols(&mut v, t, j);
                        changed = true;
                    }
                }
            }
            if changed {
                continue;
            }
            // divisibility: pivot must divide the rest of the block
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&d[i][j] % &d[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    // fold the offending row into the pivot row and repeat
                    let one = -BigInt::one();
                    row_sub(&mut d, t, i, &one);
                    row_sub(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        t += 1;
    }
    Smith { u, d, v, rank: t }
}

/// Row-style Hermite normal form: a canonical basis of the row lattice,
/// zero rows removed. Pivots are positive, entries above each pivot reduced
/// into `[0, pivot)`.
pub fn hermite(a: &Matrix, cols: usize) -> Matrix {
    let mut m: Matrix = a.iter().filter(|r| !is_zero_vec(r)).cloned().collect();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        loop {
            let pivot = (row..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&i, &j| m[i][col].abs().cmp(&m[j][col].abs()));
            let Some(p) = pivot else { break };
            m.swap(row, p);
            let mut done = true;
            for i in row + 1..m.len() {
                if !m[i][col].is_zero() {
                    let q = m[i][col].div_floor(&m[row][col]);
                    row_sub(&mut m, i, row, &q);
                    if !m[i][col].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if row < m.len() && !m[row][col].is_zero() {
            if m[row][col].is_negative() {
                for x in m[row].iter_mut() {
                    *x = -x.clone();
                }
            }
            for i in 0..row {
                let q = m[i][col].div_floor(&m[row][col]);
                row_sub(&mut m, i, row, &q);
            }
            row += 1;
        }
    }
    m.retain(|r| !is_zero_vec(r));
    m
}

/// Basis of the integer kernel `{x : A x = 0}` of an `rows x cols` matrix.
pub fn integer_kernel(a: &Matrix, rows: usize, cols: usize) -> Matrix {
    let s = smith(a, rows, cols);
    (s.rank..cols)
        .map(|j| (0..cols).map(|i| s.v[i][j].clone()).collect())
        .collect()
}

pub fn rank(a: &Matrix, rows: usize, cols: usize) -> usize {
    smith(a, rows, cols).rank
}

/// Whether the rows of `a` extend to a basis of `Z^cols`.
pub fn rows_extend_to_basis(a: &Matrix, cols: usize) -> bool {
    let s = smith(a, a.len(), cols);
    s.rank == a.len() && s.diagonal().iter().all(One::is_one)
}

pub fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Solves `sum_i c_i * gens[i] = target` over the rationals; `None` when the
/// target is outside the span. Generators must be linearly independent.
pub fn solve_in_span(gens: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = target.len();
    let k = gens.len();
    // augmented n x (k+1) system
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut r: Vec<BigRational> = gens.iter().map(|g| g[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..n).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pr = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if (row..n).any(|i| !m[i][k].is_zero()) {
        return None;
    }
    let mut out = vec![BigRational::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        out[c] = m[r][k].clone();
    }
    Some(out)
}
