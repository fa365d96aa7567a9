//! Linear incidence webs on the Grassmannian of `(n-1)`-planes of
//! `P^{r+n-1}`. Coordinates on `Q^{r+n}` are `(eta_1..eta_r, xi_1..xi_n)`;
//! the chart around the base plane `{eta = 0}` is `eta_a = sum_alpha
//! x_{a,alpha} xi_alpha`, with `x_{a,alpha}` at index `a*n + alpha`.

use crate::error::{Error, Result};
use crate::exactalg::{one, zero, Matrix};
use crate::grassmann::{web_from_points, ProjectivePoint};
use crate::webcore::ConstantWeb;

/// `d` linear `r`-planes of `P^{r+n-1}`, each the kernel of `n-1`
/// independent forms on `Q^{r+n}` (the rows of an `(n-1) x (r+n)` matrix).
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneArrangement {
    r: usize,
    n: usize,
    planes: Vec<Matrix>,
}

impl PlaneArrangement {
    pub fn new(r: usize, n: usize, planes: Vec<Matrix>) -> Result<Self> {
        if r == 0 || n < 2 {
            return Err(Error::Invalid("arrangements need r >= 1 and n >= 2".into()));
        }
        if planes.is_empty() {
            return Err(Error::Invalid("arrangement has no planes".into()));
        }
        for (j, p) in planes.iter().enumerate() {
            if p.nrows() != n - 1 || p.ncols() != r + n {
                return Err(Error::Invalid(format!("plane {} must be given by {}x{} forms", j + 1, n - 1, r + n)));
            }
            if p.rank() != n - 1 {
                return Err(Error::Invalid(format!("forms of plane {} are dependent", j + 1)));
            }
        }
        Ok(PlaneArrangement { r, n, planes })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn planes(&self) -> &[Matrix] {
        &self.planes
    }

    /// Image under `v -> g v` on `Q^{r+n}`; forms transform by `g^{-1}`.
    pub fn transform(&self, g: &Matrix) -> Result<Self> {
        let inv = g
            .inverse()
            .filter(|_| g.nrows() == self.r + self.n)
            .ok_or_else(|| Error::Invalid("transformation must be invertible of size r+n".into()))?;
        Self::new(self.r, self.n, self.planes.iter().map(|p| p * &inv).collect())
    }
}

/// Planes through the points `(0, p_j)` of the base plane. Plane `j` is cut
/// out by the forms `tilt_j(eta) + l(xi)` where `l` runs over a basis of the
/// annihilator of `p_j`; `tilts` is empty or holds one `(n-1) x r` matrix per
/// point.
pub fn arrangement_through_points(
    r: usize,
    n: usize,
    points: &[ProjectivePoint],
    tilts: &[Matrix],
) -> Result<PlaneArrangement> {
    if !tilts.is_empty() && tilts.len() != points.len() {
        return Err(Error::Invalid("need one tilt per point".into()));
    }
    let planes = points
        .iter()
        .enumerate()
        .map(|(j, p)| {
            if p.len() != n {
                return Err(Error::Invalid(format!("point {} is not in P^{}", j + 1, n - 1)));
            }
            let ann = Matrix::from_rows(n, vec![p.coords().to_vec()])?.kernel_basis();
            Ok(Matrix::from_fn(n - 1, r + n, |i, k| match (k < r, tilts.get(j)) {
                (true, Some(t)) => t[(i, k)].clone(),
                (true, None) => zero(),
                (false, _) => ann[i][k - r].clone(),
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    PlaneArrangement::new(r, n, planes)
}

/// The point where each plane meets the base plane `{eta = 0}`, as its
/// `xi`-part in `P^{n-1}`.
pub fn intersect_with_base_plane(arr: &PlaneArrangement) -> Result<Vec<ProjectivePoint>> {
    let (r, n) = (arr.r, arr.n);
    let base = Matrix::from_fn(r, r + n, |a, k| if a == k { one() } else { zero() });
    arr.planes
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let ker = p.vstack(&base)?.kernel_basis();
            if ker.len() != 1 {
                return Err(Error::NotTransverse(format!(
                    "plane {} meets the base plane in dimension {}",
                    j + 1,
                    ker.len() as i64 - 1
                )));
            }
            ProjectivePoint::new(ker[0][r..].to_vec())
        })
        .collect()
}

/// The tangent web at the base plane: `{F(p_j)}` in the chart coordinates
/// `x_{a,alpha}` with identity basis.
pub fn tangent_incidence_web(arr: &PlaneArrangement) -> Result<ConstantWeb> {
    let points = intersect_with_base_plane(arr)?;
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            return Err(Error::Degenerate("arrangement meets base plane in fewer than d points".into()));
        }
    }
    web_from_points(&Matrix::identity(arr.r * arr.n), arr.r, arr.n, &points)
}
