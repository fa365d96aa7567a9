//! Fraction-free (Bareiss) elimination on an integer image of a rational
//! matrix. Each row is scaled by the lcm of its denominators first, which
//! changes neither the rank nor (up to a tracked factor) the determinant.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Matrix, Scalar};

/// Integer rows plus the product of the per-row scale factors applied.
fn integer_image(m: &Matrix) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = m
        .rows_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    (rows, scale)
}

/// Runs Bareiss elimination in place; returns (rank, number of row swaps).
fn eliminate(a: &mut [Vec<BigInt>]) -> (usize, usize) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..ncols {
                let num = pivot * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                row[j] = q;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    (rank, swaps)
}

pub fn bareiss_rank(m: &Matrix) -> usize {
    let (mut a, _) = integer_image(m);
    eliminate(&mut a).0
}

/// Determinant of a square matrix.
pub fn bareiss_determinant(m: &Matrix) -> Scalar {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.nrows();
    if n == 0 {
        return Scalar::one();
    }
    let (mut a, scale) = integer_image(m);
    let (rank, swaps) = eliminate(&mut a);
    if rank < n {
        return Scalar::zero();
    }
    let mut det = a[n - 1][n - 1].clone();
    if swaps % 2 == 1 {
        det = -det;
    }
    debug_assert!(!scale.is_negative());
    Scalar::new(det, scale)
}
