use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exactalg::{format_scalar, int, zero, Matrix, Scalar};

/// A point of projective space, stored with its first nonzero coordinate
/// equal to 1 so that equality of values is projective equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Scalar>,
}

impl ProjectivePoint {
    pub fn new(mut coords: Vec<Scalar>) -> Result<Self> {
        let Some(lead) = coords.iter().find(|x| **x != zero()).cloned() else {
            return Err(Error::Invalid("projective point with all coordinates zero".into()));
        };
        for x in &mut coords {
            *x /= &lead;
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| int(x)).collect())
    }

    /// The `i`-th coordinate point of `P^{n-1}` (0-based).
    pub fn coordinate(n: usize, i: usize) -> Self {
        let mut v = vec![zero(); n];
        v[i] = int(1);
        ProjectivePoint { coords: v }
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    /// Number of homogeneous coordinates.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Image under the linear map `m` acting on coordinate columns.
    pub fn map(&self, m: &Matrix) -> Result<Self> {
        Self::new(m.mul_vec(&self.coords))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.coords.iter().map(format_scalar).join(":"))
    }
}

/// Matrix whose rows are the coordinate vectors.
pub fn stack(points: &[ProjectivePoint]) -> Matrix {
    let cols = points.first().map_or(0, ProjectivePoint::len);
    Matrix::from_rows(cols, points.iter().map(|p| p.coords.clone()).collect())
        .expect("points of one space")
}

fn check_same_space(points: &[ProjectivePoint]) -> Result<usize> {
    let n = points.first().map_or(0, ProjectivePoint::len);
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::Invalid("points live in different projective spaces".into()));
    }
    Ok(n)
}

/// Every `min(d, n)` of the points are linearly independent.
pub fn in_general_position(points: &[ProjectivePoint]) -> Result<bool> {
    let n = check_same_space(points)?;
    let k = points.len().min(n);
    Ok(points
        .iter()
        .combinations(k)
        .all(|sub| stack(&sub.into_iter().cloned().collect::<Vec<_>>()).rank() == k))
}

/// For `n+1` points of `P^{n-1}` in general position, the matrix with
/// columns `lambda_i p_i` (`i < n`) where `sum lambda_i p_i = p_n`. It sends
/// the standard frame (coordinate points and the all-ones point) to the
/// given points.
pub fn frame_matrix(points: &[ProjectivePoint]) -> Result<Matrix> {
    let n = check_same_space(points)?;
    if points.len() != n + 1 {
        return Err(Error::Invalid(format!("a frame of P^{} needs {} points", n - 1, n + 1)));
    }
    let base = stack(&points[..n]).transpose();
    let lambda = base
        .solve(points[n].coords())
        .filter(|_| base.is_invertible())
        .filter(|l| l.iter().all(|x| *x != zero()))
        .ok_or_else(|| Error::Degenerate("frame points are not in general position".into()))?;
    Ok(Matrix::from_fn(n, n, |i, j| &base[(i, j)] * &lambda[j]))
}

/// The projective transformation sending each source frame point to the
/// corresponding target frame point, as an `n x n` matrix on columns.
pub fn projective_map_from_frames(src: &[ProjectivePoint], dst: &[ProjectivePoint]) -> Result<Matrix> {
    let a = frame_matrix(src)?;
    let b = frame_matrix(dst)?;
    Ok(&b * &a.inverse().expect("frame matrices are invertible"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::frac;

    #[test]
    fn canonical_form() {
        let p = ProjectivePoint::from_i64(&[0, 2, 4]).unwrap();
        assert_eq!(p.coords(), &[int(0), int(1), int(2)]);
        assert_eq!(p, ProjectivePoint::from_i64(&[0, -1, -2]).unwrap());
        assert_eq!(ProjectivePoint::new(vec![frac(1, 3), int(1)]).unwrap().coords()[1], int(3));
        assert!(ProjectivePoint::from_i64(&[0, 0]).is_err());
        assert_eq!(p.to_string(), "[0:1:2]");
    }

    #[test]
    fn general_position() {
        let pts: Vec<_> = [[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1]]
            .iter()
            .map(|c| ProjectivePoint::from_i64(c).unwrap())
            .collect();
        assert!(!in_general_position(&pts).unwrap());
        assert!(in_general_position(&pts[..2]).unwrap());
        let conic: Vec<_> = (0..6).map(|t| ProjectivePoint::from_i64(&[1, t, t * t]).unwrap()).collect();
        assert!(in_general_position(&conic).unwrap());
    }

    #[test]
    fn frames_map_to_frames() {
        let src: Vec<_> = (0..4).map(|t| ProjectivePoint::from_i64(&[1, t, t * t]).unwrap()).collect();
        let dst: Vec<_> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
            .iter()
            .map(|c| ProjectivePoint::from_i64(c).unwrap())
            .collect();
        let t = projective_map_from_frames(&src, &dst).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            assert_eq!(&s.map(&t).unwrap(), d);
        }
        let bad = vec![dst[0].clone(), dst[1].clone(), dst[2].clone(), ProjectivePoint::from_i64(&[1, 1, 0]).unwrap()];
        assert!(frame_matrix(&bad).is_err());
    }
}
