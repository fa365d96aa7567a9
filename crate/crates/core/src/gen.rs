//! Seeded random test data: small-integer invertible matrices, points in
//! general position, and webs satisfying the general position condition.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactalg::{int, Matrix};
use crate::grassmann::{in_general_position, ProjectivePoint};
use crate::webcore::{ConstantFoliation, ConstantWeb};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries drawn uniformly from `-bound..=bound`.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| int(rng.gen_range(-bound..=bound)))
}

pub fn random_invertible(rng: &mut impl Rng, n: usize, bound: i64) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n, bound);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn random_point(rng: &mut impl Rng, n: usize, bound: i64) -> ProjectivePoint {
    loop {
        let v: Vec<_> = (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect();
        if let Ok(p) = ProjectivePoint::new(v) {
            return p;
        }
    }
}

/// `d` points of `P^{n-1}` in general position.
pub fn random_points_in_general_position(
    rng: &mut impl Rng,
    n: usize,
    d: usize,
    bound: i64,
) -> Result<Vec<ProjectivePoint>> {
    let mut pts: Vec<ProjectivePoint> = Vec::with_capacity(d);
    while pts.len() < d {
        let p = random_point(rng, n, bound);
        let mut trial = pts.clone();
        trial.push(p);
        if in_general_position(&trial)? {
            pts = trial;
        }
    }
    Ok(pts)
}

/// A random constant `d`-web of type `(r, n)` in general position.
pub fn random_pg_web(rng: &mut impl Rng, r: usize, n: usize, d: usize, bound: i64) -> Result<ConstantWeb> {
    loop {
        let mut fols = Vec::with_capacity(d);
        while fols.len() < d {
            if let Ok(f) = ConstantFoliation::new(r, n, random_matrix(rng, r, r * n, bound)) {
                fols.push(f);
            }
        }
        let w = ConstantWeb::new(r, n, fols)?;
        if w.pg().holds {
            return Ok(w);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = random_pg_web(&mut rng(7), 2, 2, 5, 3).unwrap();
        let b = random_pg_web(&mut rng(7), 2, 2, 5, 3).unwrap();
        assert!(a.same_foliations(&b));
        assert!(a.pg().holds);
        let pts = random_points_in_general_position(&mut rng(1), 3, 7, 5).unwrap();
        assert!(in_general_position(&pts).unwrap());
        assert!(random_invertible(&mut rng(3), 6, 2).is_invertible());
    }
}
