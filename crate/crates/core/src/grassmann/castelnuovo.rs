use crate::error::{Error, Result};
use crate::exactalg::{int, Matrix};
use crate::multilinear::{monomials, ExteriorForm};
use crate::webcore::ConstantWeb;

use super::projective::{in_general_position, stack, ProjectivePoint};

/// Degree-`r` Veronese image: all degree-`r` monomials of the coordinates,
/// in grlex order.
pub fn veronese(p: &ProjectivePoint, r: usize) -> ProjectivePoint {
    let coords = monomials(p.len(), r as u32)
        .iter()
        .map(|m| {
            m.0.iter()
                .zip(p.coords())
                .fold(int(1), |acc, (&e, x)| acc * crate::exactalg::pow(x, e))
        })
        .collect();
    ProjectivePoint::new(coords).expect("a power of the leading coordinate is nonzero")
}

/// Dimension of the linear span of the Veronese images.
pub fn veronese_span_rank(points: &[ProjectivePoint], r: usize) -> usize {
    let images: Vec<_> = points.iter().map(|p| veronese(p, r)).collect();
    stack(&images).rank()
}

/// Linear rank of the generator normals inside `Lambda^r V*`.
pub fn normals_span_rank(web: &ConstantWeb) -> usize {
    let rows = web.normals().iter().map(ExteriorForm::to_dense).collect();
    let width = crate::exactalg::binomial(web.dim() as u64, web.r() as u64) as usize;
    Matrix::from_rows(width, rows).expect("normals share a grade").rank()
}

/// Fewest points for which the span test decides membership of a common
/// rational normal curve. For `r = 2` the range between `2(n-1)+1` and `2n`
/// is left undecided.
pub fn castelnuovo_threshold(r: usize, n: usize) -> usize {
    if r == 2 {
        2 * n + 1
    } else {
        r * (n - 1) + 1
    }
}

/// Whether points of `P^{n-1}` in general position lie on one rational
/// normal curve, decided by the span of their degree-`r` Veronese images
/// being as small as possible, namely `r(n-1)+1`.
pub fn castelnuovo_rnc_test(points: &[ProjectivePoint], r: usize) -> Result<bool> {
    let n = points.first().map_or(0, ProjectivePoint::len);
    if r == 0 || n < 2 {
        return Err(Error::Invalid("need r >= 1 and points of P^1 or higher".into()));
    }
    let need = castelnuovo_threshold(r, n);
    if points.len() < need {
        return Err(Error::BelowCastelnuovoThreshold(format!(
            "{} points given, the test needs at least {need} for r={r}, n={n}",
            points.len()
        )));
    }
    if !in_general_position(points)? {
        return Err(Error::Degenerate("points are not in general position".into()));
    }
    Ok(veronese_span_rank(points, r) == r * (n - 1) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::moment::{moment_web, web_from_points, MomentWebSpec};

    fn pts(v: &[[i64; 3]]) -> Vec<ProjectivePoint> {
        v.iter().map(|c| ProjectivePoint::from_i64(c).unwrap()).collect()
    }

    fn conic(ts: std::ops::Range<i64>) -> Vec<ProjectivePoint> {
        ts.map(|t| ProjectivePoint::from_i64(&[1, t, t * t]).unwrap()).collect()
    }

    #[test]
    fn veronese_examples() {
        let p = ProjectivePoint::from_i64(&[1, 0]).unwrap();
        assert_eq!(veronese(&p, 2), ProjectivePoint::from_i64(&[1, 0, 0]).unwrap());
        let p = ProjectivePoint::from_i64(&[1, 1]).unwrap();
        assert_eq!(veronese(&p, 2), ProjectivePoint::from_i64(&[1, 1, 1]).unwrap());
        let p = ProjectivePoint::from_i64(&[1, 2, 3]).unwrap();
        assert_eq!(veronese(&p, 2), ProjectivePoint::from_i64(&[1, 2, 3, 4, 6, 9]).unwrap());
        assert_eq!(veronese_span_rank(&conic(0..12), 2), 5);
    }

    #[test]
    fn castelnuovo_examples() {
        assert!(castelnuovo_rnc_test(&conic(0..7), 2).unwrap());
        let mut off = conic(0..7);
        off[3] = ProjectivePoint::from_i64(&[1, 1, 7]).unwrap();
        assert!(!castelnuovo_rnc_test(&off, 2).unwrap());
        assert_eq!(veronese_span_rank(&off, 2), 6);
        let line: Vec<_> = (0..4).map(|t| ProjectivePoint::from_i64(&[1, t]).unwrap()).collect();
        assert!(castelnuovo_rnc_test(&line, 3).unwrap());
    }

    #[test]
    fn castelnuovo_refuses_gap() {
        assert!(matches!(
            castelnuovo_rnc_test(&conic(0..6), 2),
            Err(Error::BelowCastelnuovoThreshold(_))
        ));
        assert!(matches!(
            castelnuovo_rnc_test(&pts(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 1], [1, 2, 3], [2, 3, 5], [1, 5, 2]]), 2),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn normals_rank_examples() {
        let taus: Vec<_> = (0..9).map(int).collect();
        let w = moment_web(&MomentWebSpec::identity(2, 3, taus).unwrap()).unwrap();
        assert_eq!(normals_span_rank(&w), 5);
        assert_eq!(normals_span_rank(&w.subweb(&[0]).unwrap()), 1);
        let generic = pts(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 5], [3, -1, 2], [2, 7, -3]]);
        let w = web_from_points(&Matrix::identity(6), 2, 3, &generic).unwrap();
        assert_eq!(normals_span_rank(&w), 6);
        assert_eq!(normals_span_rank(&w), veronese_span_rank(&generic, 2));
    }
}
