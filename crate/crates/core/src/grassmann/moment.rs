use crate::error::{Error, Result};
use crate::exactalg::{int, pow, zero, Matrix, Scalar};
use crate::multilinear::ExteriorForm;
use crate::webcore::{ConstantFoliation, ConstantWeb};

use super::projective::ProjectivePoint;

/// A moment web: points `[1 : tau : .. : tau^{n-1}]` of the rational normal
/// curve, read in the covector basis given by the rows of `base_change`
/// (row `a*n + alpha` is `m_{a,alpha}`).
#[derive(Clone, Debug, PartialEq)]
pub struct MomentWebSpec {
    r: usize,
    n: usize,
    base_change: Matrix,
    taus: Vec<Scalar>,
}

impl MomentWebSpec {
    pub fn new(r: usize, n: usize, base_change: Matrix, taus: Vec<Scalar>) -> Result<Self> {
        if r == 0 || n < 2 {
            return Err(Error::Invalid("moment webs need r >= 1 and n >= 2".into()));
        }
        if taus.is_empty() {
            return Err(Error::Invalid("at least one parameter is required".into()));
        }
        if base_change.nrows() != r * n || !base_change.is_invertible() {
            return Err(Error::Invalid(format!("base change must be an invertible {0}x{0} matrix", r * n)));
        }
        for (i, t) in taus.iter().enumerate() {
            if taus[..i].contains(t) {
                return Err(Error::RepeatedParameter);
            }
        }
        Ok(MomentWebSpec { r, n, base_change, taus })
    }

    pub fn identity(r: usize, n: usize, taus: Vec<Scalar>) -> Result<Self> {
        Self::new(r, n, Matrix::identity(r * n), taus)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.taus.len()
    }

    pub fn base_change(&self) -> &Matrix {
        &self.base_change
    }

    pub fn taus(&self) -> &[Scalar] {
        &self.taus
    }

    pub fn points(&self) -> Vec<ProjectivePoint> {
        self.taus.iter().map(|t| moment_point(self.n, t)).collect()
    }
}

/// `[1 : tau : .. : tau^{n-1}]`.
pub fn moment_point(n: usize, tau: &Scalar) -> ProjectivePoint {
    ProjectivePoint::new((0..n as u32).map(|k| pow(tau, k)).collect()).expect("leading coordinate is 1")
}

/// The foliation with rows `sum_alpha xi_alpha m_{a,alpha}`, `a = 0..r`.
pub fn foliation_from_point(basis: &Matrix, r: usize, n: usize, p: &ProjectivePoint) -> Result<ConstantFoliation> {
    if p.len() != n || basis.nrows() != r * n || basis.ncols() != r * n {
        return Err(Error::Invalid("basis or point has the wrong size".into()));
    }
    let rows = (0..r)
        .map(|a| {
            let mut row = vec![zero(); r * n];
            for (alpha, xi) in p.coords().iter().enumerate() {
                if *xi == zero() {
                    continue;
                }
                for (k, m) in basis.row(a * n + alpha).iter().enumerate() {
                    row[k] += xi * m;
                }
            }
            row
        })
        .collect();
    ConstantFoliation::from_rows(r, n, rows)
}

pub fn web_from_points(basis: &Matrix, r: usize, n: usize, points: &[ProjectivePoint]) -> Result<ConstantWeb> {
    let fols = points
        .iter()
        .map(|p| foliation_from_point(basis, r, n, p))
        .collect::<Result<Vec<_>>>()?;
    ConstantWeb::new(r, n, fols)
}

pub fn moment_web(spec: &MomentWebSpec) -> Result<ConstantWeb> {
    web_from_points(&spec.base_change, spec.r, spec.n, &spec.points())
}

/// Coefficients `K_0 .. K_{r(n-1)}` of `Omega(t) = wedge_a sum_alpha
/// t^alpha m_{a,alpha}` as a polynomial in `t`.
pub fn omega_expansion(basis: &Matrix, r: usize, n: usize) -> Result<Vec<ExteriorForm>> {
    let dim = r * n;
    if basis.nrows() != dim || basis.ncols() != dim {
        return Err(Error::Invalid("basis has the wrong size".into()));
    }
    let mut coeffs = vec![ExteriorForm::unit(dim)];
    for a in 0..r {
        let mut next = vec![ExteriorForm::zero(dim, a + 1)?; coeffs.len() + n - 1];
        for (k, c) in coeffs.iter().enumerate() {
            for alpha in 0..n {
                let term = c.wedge(&ExteriorForm::covector(basis.row(a * n + alpha)))?;
                next[k + alpha] = next[k + alpha].add(&term)?;
            }
        }
        coeffs = next;
    }
    Ok(coeffs)
}

/// `sum_rho tau^rho K_rho`.
pub fn evaluate_expansion(ks: &[ExteriorForm], tau: &Scalar) -> Result<ExteriorForm> {
    let first = ks.first().ok_or_else(|| Error::Invalid("empty expansion".into()))?;
    let mut acc = ExteriorForm::zero(first.ambient_dim(), first.grade())?;
    let mut p = int(1);
    for k in ks {
        acc = acc.add(&k.scale(&p))?;
        p *= tau;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::frac;

    fn taus(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&t| int(t)).collect()
    }

    #[test]
    fn foliation_from_point_examples() {
        let id = Matrix::identity(4);
        let f = foliation_from_point(&id, 2, 2, &ProjectivePoint::coordinate(2, 0)).unwrap();
        assert_eq!(f.rows(), &Matrix::from_i64(&[&[1, 0, 0, 0], &[0, 0, 1, 0]]));
        let f = foliation_from_point(&id, 2, 2, &ProjectivePoint::from_i64(&[1, 1]).unwrap()).unwrap();
        assert_eq!(f.rows(), &Matrix::from_i64(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
    }

    #[test]
    fn pencil_example() {
        let w = moment_web(&MomentWebSpec::identity(1, 2, taus(&[0, 1, 2])).unwrap()).unwrap();
        let rows: Vec<_> = w.foliations().iter().map(|f| f.rows().clone()).collect();
        assert_eq!(rows, vec![
            Matrix::from_i64(&[&[1, 0]]),
            Matrix::from_i64(&[&[1, 1]]),
            Matrix::from_i64(&[&[1, 2]]),
        ]);
        assert!(w.pg().holds);
    }

    #[test]
    fn repeated_parameters_rejected() {
        assert_eq!(MomentWebSpec::identity(2, 2, taus(&[0, 1, 1])).unwrap_err(), Error::RepeatedParameter);
        assert!(MomentWebSpec::new(1, 2, Matrix::zeros(2, 2), taus(&[0])).is_err());
    }

    #[test]
    fn base_change_is_a_pullback() {
        let g = Matrix::from_i64(&[&[1, 2, 0, 0], &[0, 1, 0, 3], &[1, 0, 1, 0], &[0, 0, -1, 1]]);
        let spec = MomentWebSpec::new(2, 2, g.clone(), taus(&[0, 1, 2, 3])).unwrap();
        let plain = moment_web(&MomentWebSpec::identity(2, 2, taus(&[0, 1, 2, 3])).unwrap()).unwrap();
        assert!(moment_web(&spec).unwrap().same_foliations(&plain.transform(&g).unwrap()));
    }

    #[test]
    fn expansion_evaluates_to_normals() {
        let id = Matrix::identity(2);
        let ks = omega_expansion(&id, 1, 2).unwrap();
        assert_eq!(ks, vec![ExteriorForm::basis(2, &[0]).unwrap(), ExteriorForm::basis(2, &[1]).unwrap()]);

        let g = Matrix::from_i64(&[&[2, 1, 0, 0], &[0, 1, 0, 1], &[1, 0, 1, 0], &[0, 3, 0, 1]]);
        let ks = omega_expansion(&g, 2, 2).unwrap();
        assert_eq!(ks.len(), 3);
        for t in [int(0), int(3), frac(-1, 2), frac(5, 7), int(-4)] {
            let f = foliation_from_point(&g, 2, 2, &moment_point(2, &t)).unwrap();
            let direct = ExteriorForm::wedge_rows(&f.row_vecs()).unwrap();
            assert_eq!(evaluate_expansion(&ks, &t).unwrap(), direct);
        }
    }

    #[test]
    fn expansion_forms_independent() {
        let ks = omega_expansion(&Matrix::identity(6), 2, 3).unwrap();
        assert_eq!(ks.len(), 5);
        let m = Matrix::from_rows(15, ks.iter().map(ExteriorForm::to_dense).collect()).unwrap();
        assert_eq!(m.rank(), 5);
    }
}
