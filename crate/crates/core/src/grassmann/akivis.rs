use crate::error::{Error, Result};
use crate::exactalg::{zero, Matrix};
use crate::webcore::{ConstantFoliation, ConstantWeb};

/// The almost-Grassmannian structure determined by `n+1` foliations in
/// general position: rows `m_{a,alpha}` (index `a*n + alpha`) such that
/// foliation `alpha < n` is cut out by block `alpha` and the last one by the
/// row sums `sum_alpha m_{a,alpha}`.
pub fn akivis_structure(foliations: &[ConstantFoliation]) -> Result<Matrix> {
    let first = foliations.first().ok_or_else(|| Error::Invalid("no foliations".into()))?;
    let (r, n) = (first.r(), first.n());
    if foliations.len() != n + 1 {
        return Err(Error::Invalid(format!("expected {} foliations, got {}", n + 1, foliations.len())));
    }
    ConstantWeb::new(r, n, foliations.to_vec())?.require_pg()?;

    // Column alpha*r + b of `frame` is omega_{b,alpha}.
    let cols: Vec<_> = foliations[..n].iter().flat_map(|f| f.row_vecs()).collect();
    let frame = Matrix::from_columns(r * n, &cols)?;
    let mut basis = Matrix::zeros(r * n, r * n);
    for a in 0..r {
        let y = frame
            .solve(foliations[n].rows().row(a))
            .ok_or_else(|| Error::Degenerate("first n foliations do not span the dual space".into()))?;
        for alpha in 0..n {
            for b in 0..r {
                let c = &y[alpha * r + b];
                if *c == zero() {
                    continue;
                }
                for (k, w) in foliations[alpha].rows().row(b).iter().enumerate() {
                    basis[(a * n + alpha, k)] += c * w;
                }
            }
        }
    }
    if !basis.is_invertible() {
        return Err(Error::Degenerate("decomposition does not give a basis".into()));
    }
    Ok(basis)
}

/// Whether two adapted bases define the same structure: the change of basis
/// `g` with `basis2 = g * basis1` is a Kronecker product `C (x) A` in the
/// `(a, alpha)` index convention.
pub fn structures_equivalent(basis1: &Matrix, basis2: &Matrix, r: usize, n: usize) -> Result<bool> {
    let dim = r * n;
    if [basis1, basis2].iter().any(|b| b.nrows() != dim || b.ncols() != dim) {
        return Err(Error::Invalid(format!("bases must be {dim}x{dim}")));
    }
    let inv = basis1.inverse().ok_or_else(|| Error::Invalid("first basis is singular".into()))?;
    let g = basis2 * &inv;
    let reshaped = Matrix::from_fn(r * r, n * n, |ab, albe| {
        let (a, b) = (ab / r, ab % r);
        let (al, be) = (albe / n, albe % n);
        g[(a * n + al, b * n + be)].clone()
    });
    Ok(reshaped.rank() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use crate::grassmann::moment::foliation_from_point;
    use crate::grassmann::projective::ProjectivePoint;

    fn fol(r: usize, n: usize, rows: &[&[i64]]) -> ConstantFoliation {
        ConstantFoliation::new(r, n, Matrix::from_i64(rows)).unwrap()
    }

    fn recut(basis: &Matrix, fols: &[ConstantFoliation], r: usize, n: usize) {
        for (alpha, f) in fols[..n].iter().enumerate() {
            let p = ProjectivePoint::coordinate(n, alpha);
            assert!(foliation_from_point(basis, r, n, &p).unwrap().same_leaves(f));
        }
        let ones = ProjectivePoint::new(vec![int(1); n]).unwrap();
        assert!(foliation_from_point(basis, r, n, &ones).unwrap().same_leaves(&fols[n]));
    }

    #[test]
    fn pencil_decomposition() {
        let fols = [fol(1, 2, &[&[1, 0]]), fol(1, 2, &[&[0, 1]]), fol(1, 2, &[&[1, 2]])];
        let m = akivis_structure(&fols).unwrap();
        assert_eq!(m, Matrix::from_i64(&[&[1, 0], &[0, 2]]));
    }

    #[test]
    fn normal_form_is_fixed() {
        let g = Matrix::from_i64(&[&[1, 2, 0, 0], &[0, 1, 0, 3], &[1, 0, 1, 0], &[0, 0, -1, 1]]);
        let mut pts: Vec<_> = (0..2).map(|i| ProjectivePoint::coordinate(2, i)).collect();
        pts.push(ProjectivePoint::from_i64(&[1, 1]).unwrap());
        let fols: Vec<_> = pts.iter().map(|p| foliation_from_point(&g, 2, 2, p).unwrap()).collect();
        assert_eq!(akivis_structure(&fols).unwrap(), g);
    }

    #[test]
    fn generic_triple_is_recut() {
        let fols = [
            fol(2, 2, &[&[1, 2, 0, 1], &[0, 1, 1, 3]]),
            fol(2, 2, &[&[2, 0, 1, 1], &[1, -1, 0, 2]]),
            fol(2, 2, &[&[0, 3, 1, -1], &[1, 1, 1, 1]]),
        ];
        let m = akivis_structure(&fols).unwrap();
        recut(&m, &fols, 2, 2);
    }

    #[test]
    fn pg_failure_is_an_error() {
        let fols = [fol(1, 2, &[&[1, 0]]), fol(1, 2, &[&[2, 0]]), fol(1, 2, &[&[1, 2]])];
        assert!(matches!(akivis_structure(&fols), Err(Error::NotGeneralPosition { .. })));
    }

    #[test]
    fn equivalence() {
        let b1 = Matrix::from_i64(&[&[1, 2, 0, 0], &[0, 1, 0, 3], &[1, 0, 1, 0], &[0, 0, -1, 1]]);
        let c = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let a = Matrix::from_i64(&[&[1, 3], &[0, -1]]);
        let b2 = &c.kronecker(&a) * &b1;
        assert!(structures_equivalent(&b1, &b2, 2, 2).unwrap());
        assert!(structures_equivalent(&b1, &b1, 2, 2).unwrap());
        let mix = Matrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 2]]);
        assert!(!structures_equivalent(&b1, &(&mix * &b1), 2, 2).unwrap());
    }
}
