//! Kernels, saturation and basis completion for sublattices of `Z^n`.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Basis of the rational kernel `{x ∈ Q^n : g·x = 0}` from reduced row
/// echelon form, one vector per free column.
pub fn rational_kernel(g: &IntMatrix) -> Vec<Vec<BigRational>> {
    let (rows, cols) = (g.rows(), g.cols());
    let mut a: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| g.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Scales a rational vector to a primitive integer vector.
pub fn clear_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        ints
    } else {
        ints.into_iter().map(|x| x / &g).collect()
    }
}

/// A basis of `Z^n` whose first vectors span the saturation of a given
/// family of integer vectors.
#[derive(Clone, Debug)]
pub struct Completion {
    /// Primitive basis of `span_Q(input) ∩ Z^n`.
    pub saturated: Vec<Vec<BigInt>>,
    /// Vectors completing `saturated` to a basis of `Z^n`.
    pub complement: Vec<Vec<BigInt>>,
    /// Coordinate map: `coords · x` expresses `x` in the basis
    /// `saturated ++ complement`.
    pub coords: IntMatrix,
}

/// Column-style Hermite reduction of the vectors (as rows of an r×n
/// matrix) with a tracked unimodular transform. The vectors must be
/// linearly independent.
pub fn complete_basis(vectors: &[Vec<BigInt>], n: usize) -> Result<Completion> {
    let r = vectors.len();
    if vectors.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch("vector length differs from ambient rank".into()));
    }
    let mut a: Vec<Vec<BigInt>> = vectors.to_vec();
    // a · c = [H | 0];  cinv = c^{-1}.
    let mut c = IntMatrix::identity(n).to_rows();
    let mut cinv = IntMatrix::identity(n).to_rows();

    let swap_cols = |a: &mut Vec<Vec<BigInt>>, c: &mut Vec<Vec<BigInt>>, cinv: &mut Vec<Vec<BigInt>>, p: usize, q: usize| {
        if p == q {
            return;
        }
        for row in a.iter_mut() {
            row.swap(p, q);
        }
        for row in c.iter_mut() {
            row.swap(p, q);
        }
        cinv.swap(p, q);
    };
    // col_p += k · col_q
    let add_col = |a: &mut Vec<Vec<BigInt>>, c: &mut Vec<Vec<BigInt>>, cinv: &mut Vec<Vec<BigInt>>, p: usize, q: usize, k: &BigInt| {
        for row in a.iter_mut() {
            let t = &row[q] * k;
            row[p] += t;
        }
        for row in c.iter_mut() {
            let t = &row[q] * k;
            row[p] += t;
        }
        let rp = cinv[p].clone();
        for (x, y) in cinv[q].iter_mut().zip(&rp) {
            *x -= y * k;
        }
    };

    for i in 0..r {
        loop {
            let best = (i..n)
                .filter(|&j| !a[i][j].is_zero())
                .min_by(|&x, &y| a[i][x].abs().cmp(&a[i][y].abs()));
            let Some(best) = best else {
                return Err(Error::Precondition("vectors are linearly dependent".into()));
            };
            swap_cols(&mut a, &mut c, &mut cinv, i, best);
            let mut done = true;
            for j in i + 1..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let q = a[i][j].div_floor(&a[i][i]);
                add_col(&mut a, &mut c, &mut cinv, j, i, &(-q));
                if !a[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[i][i].is_negative() {
            for row in a.iter_mut() {
                row[i] = -row[i].clone();
            }
            for row in c.iter_mut() {
                row[i] = -row[i].clone();
            }
            for x in cinv[i].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let coords = IntMatrix::from_fn(n, n, |i, j| c[j][i].clone());
    let saturated = cinv[..r].to_vec();
    let complement = cinv[r..].to_vec();
    Ok(Completion { saturated, complement, coords })
}

/// Row Hermite normal form of a full-row-rank integer matrix given as rows;
/// pivots positive, entries above each pivot reduced into `[0, pivot)`.
pub fn row_hermite(vectors: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = vectors.to_vec();
    let r = a.len();
    if r == 0 {
        return a;
    }
    let n = a[0].len();
    let mut row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..n {
        if row == r {
            break;
        }
        loop {
            let best = (row..r)
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()));
            let Some(best) = best else { break };
            a.swap(row, best);
            let mut done = true;
            for i in row + 1..r {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[row][col]);
                let pr = a[row].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if row < r && !a[row][col].is_zero() {
            if a[row][col].is_negative() {
                for x in a[row].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pr = a[row].clone();
            for i in 0..row {
                let q = a[i][col].div_floor(&pr[col]);
                if !q.is_zero() {
                    for (x, y) in a[i].iter_mut().zip(&pr) {
                        *x -= &q * y;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
    }
    a.truncate(row);
    a
}

/// Primitive integer basis of `{x ∈ Z^n : g·x = 0}`, in row Hermite form.
pub fn integer_kernel(g: &IntMatrix) -> Vec<Vec<BigInt>> {
    let rat = rational_kernel(g);
    if rat.is_empty() {
        return Vec::new();
    }
    let ints: Vec<Vec<BigInt>> = rat.iter().map(|v| clear_denominators(v)).collect();
    let completion = complete_basis(&ints, g.cols()).expect("kernel basis is independent");
    row_hermite(&completion.saturated)
}
