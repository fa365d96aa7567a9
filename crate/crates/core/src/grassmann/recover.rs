use itertools::Itertools;

use crate::abelian::{relation_space, semi_extremality};
use crate::error::{Error, Result};
use crate::exactalg::{zero, Matrix, Scalar};
use crate::multilinear::ExteriorForm;
use crate::webcore::ConstantWeb;

use super::castelnuovo::{castelnuovo_rnc_test, castelnuovo_threshold};
use super::moment::foliation_from_point;
use super::projective::ProjectivePoint;

/// A covector basis `m_{a,alpha}` (row `a*n + alpha`) together with points
/// `p_j` such that foliation `j` of the source web is `F(p_j)` in that basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedStructure {
    pub basis: Matrix,
    pub points: Vec<ProjectivePoint>,
    /// Order `frame ++ span basis` actually used when the default choice was
    /// degenerate; `None` means the identity order.
    pub permutation: Option<Vec<usize>>,
}

impl AdaptedStructure {
    /// The web `{F(p_j)}` described by this structure.
    pub fn rebuild(&self, r: usize, n: usize) -> Result<ConstantWeb> {
        super::moment::web_from_points(&self.basis, r, n, &self.points)
    }
}

fn fail(step: &str) -> Error {
    Error::NotSemiExtremal(step.to_string())
}

/// Order of the smallest web with `q(d) = n-1`.
pub fn minimal_order(r: usize, n: usize) -> usize {
    (r + 1) * (n - 1) + 2
}

/// `u[a][j]`: the covector `c^{(a)}_j(kappa_j)` of the `a`-th canonical
/// degree-1 relation at foliation `j`.
pub fn degree_one_covectors(web: &ConstantWeb) -> Result<Vec<Vec<Vec<Scalar>>>> {
    relation_space(web, 1, false)?
        .iter()
        .map(|rel| {
            rel.components()
                .iter()
                .zip(web.foliations())
                .map(|(c, f)| Ok(c.substitute(&f.row_vecs())?.to_dense()))
                .collect()
        })
        .collect()
}

/// Adapted structure of a semi-extremal web of type `(r, n)`, `r >= 2`.
///
/// When `q(d) > n-1` the basis comes from the subweb made of the first
/// `(r+1)(n-1)+2` foliations; the remaining points are read off afterwards.
pub fn recover_normal_form(web: &ConstantWeb) -> Result<AdaptedStructure> {
    let core: Vec<usize> = (0..minimal_order(web.r(), web.n()).min(web.d())).collect();
    recover_with_core(web, &core)
}

/// As [`recover_normal_form`] with an explicit core subweb, which must have
/// order `(r+1)(n-1)+2` and contain foliations `0..=n`.
pub fn recover_with_core(web: &ConstantWeb, core: &[usize]) -> Result<AdaptedStructure> {
    let (r, n, d) = (web.r(), web.n(), web.d());
    if r < 2 {
        return Err(Error::Invalid("normal-form recovery needs r >= 2".into()));
    }
    let semi = semi_extremality(web)?;
    if !semi.holds {
        return Err(Error::NotSemiExtremal(semi.reason.unwrap_or_default()));
    }
    let core: Vec<usize> = core.iter().copied().sorted().collect();
    if core.len() != minimal_order(r, n) || !(0..=n).all(|i| core.contains(&i)) {
        return Err(Error::Invalid(format!(
            "core must have {} foliations including the first {}",
            minimal_order(r, n),
            n + 1
        )));
    }
    let sub = web.subweb(&core)?;
    let u = degree_one_covectors(&sub)?;
    let inner = recover_from_covectors(&sub, &u)?;

    let mut points: Vec<Option<ProjectivePoint>> = vec![None; d];
    for (p, &j) in inner.points.iter().zip(&core) {
        points[j] = Some(p.clone());
    }
    let inv = inner.basis.inverse().expect("adapted basis is invertible");
    for k in (0..d).filter(|k| !core.contains(k)) {
        points[k] = Some(rank_one_point(&web.foliation(k).row_vecs(), &inv, r, n)?);
    }
    let permutation = inner.permutation.map(|p| p.iter().map(|&i| core[i]).collect());
    let out = AdaptedStructure {
        basis: inner.basis,
        points: points.into_iter().map(|p| p.expect("every index assigned")).collect(),
        permutation,
    };
    verify(web, &out)?;
    Ok(out)
}

/// Reads `xi` from covectors of `F_k^perp` written in the adapted basis: each
/// must be an `r x n` matrix of rank one with common row `xi`.
fn rank_one_point(rows: &[Vec<Scalar>], inv: &Matrix, r: usize, n: usize) -> Result<ProjectivePoint> {
    let blocks: Vec<Vec<Scalar>> = rows
        .iter()
        .flat_map(|row| inv.vec_mul(row).chunks(n).map(<[Scalar]>::to_vec).collect::<Vec<_>>())
        .collect();
    let xi = blocks
        .iter()
        .find(|b| b.iter().any(|x| *x != zero()))
        .cloned()
        .ok_or_else(|| fail("extension: zero covector"))?;
    let probe = Matrix::from_rows(n, vec![xi.clone()]).expect("length n");
    if !blocks.iter().all(|b| probe.row_space_contains(b)) {
        return Err(fail("extension: foliation is not F(p) in the adapted basis"));
    }
    debug_assert_eq!(blocks.len(), r * r);
    ProjectivePoint::new(xi)
}

/// The `q(d) = n-1` construction from an explicit basis `u[a][j]` of the
/// degree-1 relations.
pub fn recover_from_covectors(web: &ConstantWeb, u: &[Vec<Vec<Scalar>>]) -> Result<AdaptedStructure> {
    let (r, n, d) = (web.r(), web.n(), web.d());
    if d != minimal_order(r, n) || u.iter().any(|ua| ua.len() != d) {
        return Err(Error::Invalid("need degree-1 relations of a web with q(d) = n-1".into()));
    }
    if u.len() != r {
        return Err(fail(&format!("dim R(1) = {}, expected {r}", u.len())));
    }
    for j in 0..d {
        let block = Matrix::from_rows(r * n, (0..r).map(|a| u[a][j].clone()).collect())?;
        if !block.same_row_space(web.foliation(j).rows()) {
            return Err(fail(&format!("relation covectors do not span the conormal of foliation {}", j + 1)));
        }
    }

    let normals: Vec<Vec<Scalar>> = web.normals().iter().map(ExteriorForm::to_dense).collect();
    let span = d - n;
    let independent = |idx: &[usize]| {
        Matrix::from_rows(normals[0].len(), idx.iter().map(|&j| normals[j].clone()).collect())
            .expect("same grade")
            .rank()
            == idx.len()
    };
    let frame_basis = |frame: &[usize]| {
        let rows = (0..r)
            .flat_map(|a| frame.iter().map(move |&f| (a, f)))
            .map(|(a, f)| u[a][f].clone())
            .collect();
        Matrix::from_rows(r * n, rows).expect("covectors of length rn")
    };

    let default: Vec<usize> = (n..d).collect();
    let (frame, rest, permutation) = if independent(&default) {
        ((0..n).collect::<Vec<_>>(), default, None)
    } else {
        (0..d)
            .combinations(span)
            .filter(|c| independent(c))
            .map(|c| ((0..d).filter(|j| !c.contains(j)).collect::<Vec<_>>(), c))
            .find(|(f, _)| frame_basis(f).is_invertible())
            .map(|(f, c)| {
                let perm = f.iter().chain(&c).copied().collect();
                (f, c, Some(perm))
            })
            .ok_or_else(|| fail("normals do not contain a basis of their span"))?
    };

    let basis = frame_basis(&frame);
    if !basis.is_invertible() {
        return Err(fail("frame covectors do not form a basis"));
    }

    let span_cols: Vec<Vec<Scalar>> = rest.iter().map(|&j| normals[j].clone()).collect();
    let span_mat = Matrix::from_columns(normals[0].len(), &span_cols)?;
    let mut xi = vec![vec![zero(); n]; d];
    for (alpha, &f) in frame.iter().enumerate() {
        let coeffs = span_mat
            .solve(&normals[f])
            .ok_or_else(|| fail("frame normal outside the span of the others"))?;
        for (c, &j) in coeffs.into_iter().zip(&rest) {
            xi[j][alpha] = c;
        }
    }
    let mut points = Vec::with_capacity(d);
    for j in 0..d {
        match frame.iter().position(|&f| f == j) {
            Some(alpha) => points.push(ProjectivePoint::coordinate(n, alpha)),
            None => points.push(
                ProjectivePoint::new(xi[j].clone()).map_err(|_| fail("vanishing point coordinates"))?,
            ),
        }
    }
    let out = AdaptedStructure { basis, points, permutation };
    verify(web, &out)?;
    Ok(out)
}

fn verify(web: &ConstantWeb, s: &AdaptedStructure) -> Result<()> {
    let (r, n) = (web.r(), web.n());
    for (j, (f, p)) in web.foliations().iter().zip(&s.points).enumerate() {
        if !foliation_from_point(&s.basis, r, n, p)?.same_leaves(f) {
            return Err(fail(&format!("foliation {} is not F(p) for the recovered point", j + 1)));
        }
    }
    if s.points.len() >= castelnuovo_threshold(r, n) {
        match castelnuovo_rnc_test(&s.points, r) {
            Ok(true) => {}
            Ok(false) => return Err(fail("recovered points are not on a rational normal curve")),
            Err(e) => return Err(fail(&format!("castelnuovo test: {e}"))),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use crate::grassmann::akivis::structures_equivalent;
    use crate::grassmann::moment::{moment_web, MomentWebSpec};

    fn taus(d: i64) -> Vec<Scalar> {
        (0..d).map(int).collect()
    }

    #[test]
    fn identity_moment_round_trip() {
        for (r, n, d) in [(2, 2, 6), (2, 3, 8), (2, 2, 8), (3, 2, 8)] {
            let w = moment_web(&MomentWebSpec::identity(r, n, taus(d)).unwrap()).unwrap();
            let s = recover_normal_form(&w).unwrap();
            assert!(s.rebuild(r, n).unwrap().same_foliations(&w), "({r},{n},{d})");
            assert!(s.permutation.is_none());
            assert_eq!(s.points[0], ProjectivePoint::coordinate(n, 0));
        }
    }

    #[test]
    fn mixed_r1_basis_gives_equivalent_structure() {
        let w = moment_web(&MomentWebSpec::identity(2, 3, taus(8)).unwrap()).unwrap();
        let u = degree_one_covectors(&w).unwrap();
        let s = recover_from_covectors(&w, &u).unwrap();
        let mix = [[int(2), int(1)], [int(-1), int(3)]];
        let u2: Vec<Vec<Vec<Scalar>>> = (0..2)
            .map(|a| {
                (0..8)
                    .map(|j| {
                        (0..6)
                            .map(|k| &mix[a][0] * &u[0][j][k] + &mix[a][1] * &u[1][j][k])
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let s2 = recover_from_covectors(&w, &u2).unwrap();
        assert!(structures_equivalent(&s.basis, &s2.basis, 2, 3).unwrap());
        assert_eq!(s.points, s2.points);
    }

    #[test]
    fn below_threshold_is_refused() {
        let w = moment_web(&MomentWebSpec::identity(2, 2, taus(4)).unwrap()).unwrap();
        assert!(matches!(recover_normal_form(&w), Err(Error::NotSemiExtremal(_))));
        let w = moment_web(&MomentWebSpec::identity(1, 2, taus(5)).unwrap()).unwrap();
        assert!(matches!(recover_normal_form(&w), Err(Error::Invalid(_))));
    }

    #[test]
    fn alternative_cores_agree() {
        let w = moment_web(&MomentWebSpec::identity(2, 2, taus(8)).unwrap()).unwrap();
        let a = recover_with_core(&w, &[0, 1, 2, 3, 4]).unwrap();
        let b = recover_with_core(&w, &[0, 1, 2, 6, 7]).unwrap();
        assert!(structures_equivalent(&a.basis, &b.basis, 2, 2).unwrap());
        assert!(recover_with_core(&w, &[0, 1, 3, 4, 5]).is_err());
    }
}
