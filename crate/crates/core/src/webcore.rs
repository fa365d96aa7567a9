//! Constant foliations and webs of type (r, n), the general position
//! condition on their generator normals, and the closed-form rank bounds.

use crate::error::{Error, Result};
use crate::exactalg::{binomial, Matrix, Scalar};
use crate::multilinear::ExteriorForm;

/// A linear foliation of codimension `r` on an `rn`-dimensional space,
/// given by `r` independent linear forms (the rows). Leaves are the
/// translates of the common kernel.
#[derive(Clone, Debug)]
pub struct ConstantFoliation {
    r: usize,
    n: usize,
    rows: Matrix,
}

impl ConstantFoliation {
    pub fn new(r: usize, n: usize, rows: Matrix) -> Result<Self> {
        if r == 0 || n == 0 {
            return Err(Error::Invalid("r and n must be positive".into()));
        }
        if rows.nrows() != r || rows.ncols() != r * n {
            return Err(Error::Invalid(format!(
                "foliation matrix is {}x{}, expected {}x{}",
                rows.nrows(),
                rows.ncols(),
                r,
                r * n
            )));
        }
        let rank = rows.rank();
        if rank != r {
            return Err(Error::NotAFoliation { rank, expected: r });
        }
        Ok(ConstantFoliation { r, n, rows })
    }

    pub fn from_rows(r: usize, n: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        Self::new(r, n, Matrix::from_rows(r * n, rows)?)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The defining linear forms, one per row.
    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        self.rows.to_rows()
    }

    /// Wedge of the defining forms; nonzero since the rows are independent.
    pub fn generator_normal(&self) -> ExteriorForm {
        ExteriorForm::wedge_rows(&self.row_vecs()).expect("r <= rn by construction")
    }

    /// Whether the covector vanishes on the leaf direction.
    pub fn annihilates_leaves(&self, covector: &[Scalar]) -> bool {
        self.rows.row_space_contains(covector)
    }

    /// Same leaves, i.e. the same row span.
    pub fn same_leaves(&self, other: &ConstantFoliation) -> bool {
        self.rows.same_row_space(&other.rows)
    }

    /// Applies the change of coordinates `rows -> rows * g`.
    pub fn transform(&self, g: &Matrix) -> Result<ConstantFoliation> {
        Self::new(self.r, self.n, &self.rows * g)
    }
}

/// Outcome of the general position check. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PgReport {
    pub holds: bool,
    pub failing: Option<Vec<usize>>,
}

/// A constant `d`-web of type `(r, n)`. Webs violating the general position
/// condition can be built but carry the failure in [`ConstantWeb::pg`].
#[derive(Clone, Debug)]
pub struct ConstantWeb {
    r: usize,
    n: usize,
    foliations: Vec<ConstantFoliation>,
    pg: PgReport,
}

impl ConstantWeb {
    pub fn new(r: usize, n: usize, foliations: Vec<ConstantFoliation>) -> Result<Self> {
        if foliations.is_empty() {
            return Err(Error::Invalid("a web needs at least one foliation".into()));
        }
        if n < 2 {
            return Err(Error::Invalid("n must be at least 2".into()));
        }
        if let Some(j) = foliations.iter().position(|f| f.r != r || f.n != n) {
            return Err(Error::Invalid(format!("foliation {j} has a different type")));
        }
        let pg = check_pg(&foliations, n);
        Ok(ConstantWeb { r, n, foliations, pg })
    }

    pub fn from_matrices(r: usize, n: usize, mats: Vec<Matrix>) -> Result<Self> {
        let fols = mats
            .into_iter()
            .map(|m| ConstantFoliation::new(r, n, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(r, n, fols)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.foliations.len()
    }

    /// Dimension `rn` of the underlying space.
    pub fn dim(&self) -> usize {
        self.r * self.n
    }

    pub fn foliations(&self) -> &[ConstantFoliation] {
        &self.foliations
    }

    pub fn foliation(&self, j: usize) -> &ConstantFoliation {
        &self.foliations[j]
    }

    pub fn pg(&self) -> &PgReport {
        &self.pg
    }

    pub fn require_pg(&self) -> Result<()> {
        match &self.pg.failing {
            None => Ok(()),
            Some(s) => Err(Error::NotGeneralPosition { subset: s.clone() }),
        }
    }

    pub fn normals(&self) -> Vec<ExteriorForm> {
        self.foliations.iter().map(ConstantFoliation::generator_normal).collect()
    }

    pub fn q(&self) -> i64 {
        q_of(self.r, self.n, self.d())
    }

    /// Restriction to the listed foliations (0-based, distinct), order kept.
    pub fn subweb(&self, indices: &[usize]) -> Result<ConstantWeb> {
        let mut seen = vec![false; self.d()];
        for &i in indices {
            if i >= self.d() {
                return Err(Error::Invalid(format!("foliation index {i} out of range")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid(format!("foliation index {i} repeated")));
            }
        }
        let fols = indices.iter().map(|&i| self.foliations[i].clone()).collect();
        ConstantWeb::new(self.r, self.n, fols)
    }

    /// Applies the same linear change of coordinates to every foliation.
    pub fn transform(&self, g: &Matrix) -> Result<ConstantWeb> {
        let fols = self.foliations.iter().map(|f| f.transform(g)).collect::<Result<_>>()?;
        ConstantWeb::new(self.r, self.n, fols)
    }

    /// Whether both webs have the same foliations in the same order.
    pub fn same_foliations(&self, other: &ConstantWeb) -> bool {
        self.d() == other.d()
            && self.foliations.iter().zip(&other.foliations).all(|(a, b)| a.same_leaves(b))
    }
}

/// General position: every wedge of at most `min(d, n)` distinct generator
/// normals is nonzero. On failure reports the lexicographically first
/// failing index sequence.
pub fn check_pg(foliations: &[ConstantFoliation], n: usize) -> PgReport {
    let normals: Vec<ExteriorForm> =
        foliations.iter().map(ConstantFoliation::generator_normal).collect();
    let depth = foliations.len().min(n);

    fn dfs(
        normals: &[ExteriorForm],
        depth: usize,
        start: usize,
        acc: &ExteriorForm,
        chosen: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if chosen.len() == depth {
            return None;
        }
        for j in start..normals.len() {
            let w = acc.wedge(&normals[j]).expect("grade stays within rn");
            chosen.push(j);
            if w.is_zero() {
                return Some(chosen.clone());
            }
            if let Some(f) = dfs(normals, depth, j + 1, &w, chosen) {
                return Some(f);
            }
            chosen.pop();
        }
        None
    }

    let Some(first) = normals.first() else {
        return PgReport { holds: true, failing: None };
    };
    let failing = dfs(&normals, depth, 0, &ExteriorForm::unit(first.ambient_dim()), &mut Vec::new());
    PgReport { holds: failing.is_none(), failing }
}

/// `q(d) = d - r(n-1) - 2`; may be negative.
pub fn q_of(r: usize, n: usize, d: usize) -> i64 {
    d as i64 - (r * (n - 1)) as i64 - 2
}

/// Per-degree bound `C(r-1+h, r-1) * max(d - (r+h)(n-1) - 1, 0)`.
pub fn degree_bound(r: usize, n: usize, d: usize, h: usize) -> u64 {
    let excess = d as i64 - ((r + h) * (n - 1)) as i64 - 1;
    if excess <= 0 {
        return 0;
    }
    binomial((r - 1 + h) as u64, (r - 1) as u64) * excess as u64
}

/// Smallest `h` with `d <= (r+h)(n-1) + 1`; every degree from here on has
/// no relations.
pub fn h_cutoff(r: usize, n: usize, d: usize) -> usize {
    (0..).find(|&h| d <= (r + h) * (n - 1) + 1).expect("unbounded search terminates")
}

/// Chern–Griffiths bound: the sum of the per-degree bounds.
pub fn rho_bound(r: usize, n: usize, d: usize) -> u64 {
    (0..h_cutoff(r, n, d)).map(|h| degree_bound(r, n, d, h)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    fn fol(r: usize, n: usize, rows: &[&[i64]]) -> ConstantFoliation {
        ConstantFoliation::new(r, n, Matrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn generator_normals() {
        let f = fol(1, 2, &[&[1, 0]]);
        assert_eq!(f.generator_normal(), ExteriorForm::covector(&[int(1), int(0)]));
        let g = fol(2, 2, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(g.generator_normal(), ExteriorForm::basis(4, &[0, 1]).unwrap());
    }

    #[test]
    fn rank_deficient_rows_are_rejected() {
        let m = Matrix::from_i64(&[&[1, 2, 0, 0], &[2, 4, 0, 0]]);
        assert_eq!(
            ConstantFoliation::new(2, 2, m).unwrap_err(),
            Error::NotAFoliation { rank: 1, expected: 2 }
        );
    }

    #[test]
    fn pg_single_and_duplicate() {
        let f = fol(2, 2, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let w = ConstantWeb::new(2, 2, vec![f.clone()]).unwrap();
        assert!(w.pg().holds);
        let w = ConstantWeb::new(2, 2, vec![f.clone(), f]).unwrap();
        assert_eq!(w.pg().failing, Some(vec![0, 1]));
        assert!(matches!(w.require_pg(), Err(Error::NotGeneralPosition { .. })));
    }

    #[test]
    fn pg_reports_lexicographically_first_failure() {
        // (r,n) = (1,3): forms e1, e2, e1+e2, e3; {0,1,2} is dependent, {0,1,3} is not
        let fs = vec![
            fol(1, 3, &[&[1, 0, 0]]),
            fol(1, 3, &[&[0, 1, 0]]),
            fol(1, 3, &[&[1, 1, 0]]),
            fol(1, 3, &[&[0, 0, 1]]),
        ];
        let w = ConstantWeb::new(1, 3, fs).unwrap();
        assert_eq!(w.pg().failing, Some(vec![0, 1, 2]));
    }

    #[test]
    fn q_values() {
        assert_eq!(q_of(2, 2, 5), 1);
        assert_eq!(q_of(1, 3, 7), 3);
        for (r, n) in [(1, 2), (2, 3), (3, 4)] {
            assert_eq!(q_of(r, n, (r + 1) * (n - 1) + 2), (n - 1) as i64);
        }
        assert_eq!(q_of(2, 3, 3), -3);
    }

    #[test]
    fn degree_bound_values() {
        assert_eq!(degree_bound(2, 2, 5, 0), 2);
        assert_eq!(degree_bound(2, 2, 5, 2), 0);
        assert_eq!(degree_bound(1, 2, 5, 1), 2);
    }

    #[test]
    fn rho_bound_values() {
        assert_eq!(rho_bound(1, 2, 5), 6);
        assert_eq!(rho_bound(1, 2, 4), 3);
        assert_eq!(rho_bound(2, 3, 5), 0);
        assert_eq!(rho_bound(2, 2, 5), 4);
    }

    #[test]
    fn h_cutoff_values() {
        assert_eq!(h_cutoff(1, 2, 5), 3);
        assert_eq!(h_cutoff(2, 2, 8), 5);
        assert_eq!(h_cutoff(2, 3, 8), 2);
    }

    /// Sum over h with no truncation, up to a safe horizon.
    fn rho_untruncated(r: usize, n: usize, d: usize) -> u64 {
        (0..=d + 1).map(|h| degree_bound(r, n, d, h)).sum()
    }

    #[test]
    fn bound_identities_on_grid() {
        for r in 1..=5 {
            for n in 2..=5 {
                for d in 1..=30 {
                    let hc = h_cutoff(r, n, d);
                    assert_eq!(rho_bound(r, n, d), rho_untruncated(r, n, d));
                    assert!((hc..hc + 5).all(|h| degree_bound(r, n, d, h) == 0));
                    assert_eq!(rho_bound(r, n, d) == 0, d <= r * (n - 1) + 1);
                }
            }
        }
        for d in 1..=30u64 {
            assert_eq!(rho_bound(1, 2, d as usize), (d - 1) * (d.saturating_sub(2)) / 2);
        }
    }

    #[test]
    fn subweb_checks_indices() {
        let fs = vec![fol(1, 2, &[&[1, 0]]), fol(1, 2, &[&[0, 1]]), fol(1, 2, &[&[1, 1]])];
        let w = ConstantWeb::new(1, 2, fs).unwrap();
        assert!(w.subweb(&[0, 1, 2]).unwrap().same_foliations(&w));
        assert_eq!(w.subweb(&[2]).unwrap().d(), 1);
        assert!(w.subweb(&[2]).unwrap().pg().holds);
        assert!(w.subweb(&[0, 3]).is_err());
        assert!(w.subweb(&[1, 1]).is_err());
    }
}
