//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) type IntMatrix = Vec<Vec<BigInt>>;

/// Determinant by fraction-free (Bareiss) elimination.
pub(crate) fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Smith normal form of a nonsingular square matrix.
///
/// Returns the diagonal `d_1 | d_2 | ... | d_n` (all positive) and the column
/// transform `V` with `U·M·V = diag(d)` for some unimodular `U` that is not
/// tracked.
pub(crate) fn smith_diagonal(m: &IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let n = m.len();
    let mut a = m.clone();
    let mut v: IntMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();

    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
            let Some((pi, pj)) = pivot else {
                break;
            };
            a.swap(t, pi);
            if pj != t {
                swap_columns(&mut a, t, pj);
                swap_columns(&mut v, t, pj);
            }

            let mut dirty = false;
            for i in t + 1..n {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..n {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..n {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
                for row in v.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                continue;
            }

            // divisibility: fold a offending row into the pivot row and redo
            let offending =
                (t + 1..n).find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    for j in t..n {
                        let s = a[i][j].clone();
                        a[t][j] += s;
                    }
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for row in a.iter_mut() {
                row[t] = -row[t].clone();
            }
            for row in v.iter_mut() {
                row[t] = -row[t].clone();
            }
        }
    }
    ((0..n).map(|i| a[i][i].clone()).collect(), v)
}

fn swap_columns(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Inertia `(positive, negative, zero)` of a symmetric integer matrix, by
/// rational congruence diagonalization.
pub(crate) fn inertia(m: &IntMatrix) -> (usize, usize, usize) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);

    for t in 0..n {
        if a[t][t].is_zero() {
            if let Some(j) = (t + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(t, j);
                for row in a.iter_mut() {
                    row.swap(t, j);
                }
            } else if let Some(j) = (t + 1..n).find(|&j| !a[t][j].is_zero()) {
                // x_t <- x_t + x_j makes the pivot 2·a[t][j] ≠ 0
                for k in 0..n {
                    let s = a[j][k].clone();
                    a[t][k] += s;
                }
                for k in 0..n {
                    let s = a[k][j].clone();
                    a[k][t] += s;
                }
            } else {
                zero += 1;
                continue;
            }
        }
        let p = a[t][t].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in t + 1..n {
            if a[i][t].is_zero() {
                continue;
            }
            let f = &a[i][t] / &p;
            for k in t..n {
                let s = &f * &a[t][k];
                a[i][k] -= s;
            }
            for k in t..n {
                a[k][i] = a[i][k].clone();
            }
        }
    }
    (pos, neg, zero)
}
