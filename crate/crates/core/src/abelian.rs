//! Abelian-relation spaces of constant webs, degree by degree.
//!
//! A degree-`h` relation is a tuple `(c_1, .., c_d)` of homogeneous degree-`h`
//! polynomials in `r` variables with `sum_j c_j(kappa_j) * Omega_j = 0`, where
//! `kappa_j` are the defining forms of foliation `j` and `Omega_j` its
//! generator normal. The relation space `R(h)` is the kernel of the linear map
//! `E_r(h)^d -> Sym^h(V*) (x) Lambda^r(V*)` assembled by [`relation_matrix`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{dot, is_zero_vector, zero, Matrix, Scalar};
use crate::multilinear::{blades, homogeneous_dim, monomials, HomogeneousPoly};
use crate::webcore::{degree_bound, h_cutoff, ConstantWeb};

/// One basis vector of `R(h)`: a polynomial per foliation.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationBasisElement {
    degree: u32,
    components: Vec<HomogeneousPoly>,
}

impl RelationBasisElement {
    /// Checks that the tuple really is a relation of `web`.
    pub fn new(web: &ConstantWeb, degree: u32, components: Vec<HomogeneousPoly>) -> Result<Self> {
        if components.len() != web.d() {
            return Err(Error::Invalid(format!(
                "relation has {} components, web has {} foliations",
                components.len(),
                web.d()
            )));
        }
        if let Some(j) = components.iter().position(|c| c.nvars() != web.r() || c.degree() != degree) {
            return Err(Error::Invalid(format!("component {j} has the wrong shape")));
        }
        if !is_zero_vector(&relation_image(web, degree, &components)?) {
            return Err(Error::Contradiction(format!(
                "degree-{degree} kernel vector does not give a vanishing sum of normals"
            )));
        }
        Ok(RelationBasisElement { degree, components })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[HomogeneousPoly] {
        &self.components
    }

    /// Coordinates in the column layout of [`relation_matrix`].
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.components.iter().flat_map(HomogeneousPoly::to_dense).collect()
    }
}

/// `sum_j c_j(kappa_j) * Omega_j`, densely, in the row layout of
/// [`relation_matrix`].
pub fn relation_image(web: &ConstantWeb, h: u32, components: &[HomogeneousPoly]) -> Result<Vec<Scalar>> {
    let rn = web.dim();
    let nsub = blades(rn, web.r()).len();
    let mut acc = vec![zero(); homogeneous_dim(rn, h) * nsub];
    for (c, f) in components.iter().zip(web.foliations()) {
        let pulled = c.substitute(&f.row_vecs())?.to_dense();
        let omega = f.generator_normal().to_dense();
        for (mi, p) in pulled.iter().enumerate() {
            if p == &zero() {
                continue;
            }
            for (si, w) in omega.iter().enumerate() {
                acc[mi * nsub + si] += p * w;
            }
        }
    }
    Ok(acc)
}

/// Columns `substitute(nu, kappa_j)` for the degree-`h` monomials `nu` in `r`
/// variables, each as a dense vector over the degree-`h` monomials on `V`.
fn substitution_columns(web: &ConstantWeb, j: usize, h: u32) -> Vec<Vec<Scalar>> {
    let rows = web.foliation(j).row_vecs();
    monomials(web.r(), h)
        .into_iter()
        .map(|m| {
            HomogeneousPoly::monomial(m, crate::exactalg::one())
                .substitute(&rows)
                .expect("forms have length rn")
                .to_dense()
        })
        .collect()
}

/// The assembled map `E_r(h)^d -> Sym^h(V*) (x) Lambda^r(V*)`.
///
/// Row `mu * C(rn, r) + s` is the monomial `mu` (grlex) paired with the
/// `r`-subset `s` (colex); column `j * dim E_r(h) + nu` is foliation `j`
/// paired with the monomial `nu` (grlex).
pub fn relation_matrix(web: &ConstantWeb, h: u32) -> Matrix {
    let rn = web.dim();
    let nsub = blades(rn, web.r()).len();
    let nmono = homogeneous_dim(rn, h);
    let ne = homogeneous_dim(web.r(), h);
    let mut m = Matrix::zeros(nmono * nsub, web.d() * ne);
    for j in 0..web.d() {
        let omega = web.foliation(j).generator_normal().to_dense();
        for (nu, col) in substitution_columns(web, j, h).into_iter().enumerate() {
            for (mi, p) in col.iter().enumerate() {
                for (si, w) in omega.iter().enumerate() {
                    m[(mi * nsub + si, j * ne + nu)] = p * w;
                }
            }
        }
    }
    m
}

fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter().enumerate().filter(|(_, x)| **x != zero()).map(|(i, x)| (i, x.clone())).collect()
}

fn sparse_dot(a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> Scalar {
    let (mut i, mut k, mut acc) = (0, 0, zero());
    while i < a.len() && k < b.len() {
        match a[i].0.cmp(&b[k].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => k += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[k].1;
                i += 1;
                k += 1;
            }
        }
    }
    acc
}

/// `M^T M` for the relation matrix `M`, built blockwise from the
/// substitution columns and the normals without forming `M`. Over the
/// rationals it has the same kernel as `M`.
pub fn relation_gram(web: &ConstantWeb, h: u32) -> Matrix {
    let d = web.d();
    let ne = homogeneous_dim(web.r(), h);
    let cols: Vec<Vec<Vec<(usize, Scalar)>>> = (0..d)
        .map(|j| substitution_columns(web, j, h).iter().map(|c| sparse(c)).collect())
        .collect();
    let omegas: Vec<Vec<Scalar>> = web.normals().iter().map(|w| w.to_dense()).collect();
    let mut g = Matrix::zeros(d * ne, d * ne);
    for i in 0..d {
        for j in i..d {
            let w = dot(&omegas[i], &omegas[j]);
            if w == zero() {
                continue;
            }
            for a in 0..ne {
                for b in 0..ne {
                    let v = sparse_dot(&cols[i][a], &cols[j][b]) * &w;
                    g[(j * ne + b, i * ne + a)] = v.clone();
                    g[(i * ne + a, j * ne + b)] = v;
                }
            }
        }
    }
    g
}

fn gate(web: &ConstantWeb, allow_degenerate: bool) -> Result<()> {
    if allow_degenerate {
        Ok(())
    } else {
        web.require_pg()
    }
}

/// Guards the per-degree bound, which holds for every web in general position.
fn check_bound(web: &ConstantWeb, h: u32, dim: usize) -> Result<()> {
    let bound = degree_bound(web.r(), web.n(), web.d(), h as usize);
    if web.pg().holds && dim as u64 > bound {
        return Err(Error::Contradiction(format!(
            "dim R({h}) = {dim} exceeds the bound {bound} for a web in general position"
        )));
    }
    Ok(())
}

/// The canonical (RREF) basis of `R(h)`.
pub fn relation_space(web: &ConstantWeb, h: u32, allow_degenerate: bool) -> Result<Vec<RelationBasisElement>> {
    gate(web, allow_degenerate)?;
    let ne = homogeneous_dim(web.r(), h);
    let basis = relation_gram(web, h).kernel_basis();
    check_bound(web, h, basis.len())?;
    basis
        .into_iter()
        .map(|v| {
            let comps = v
                .chunks(ne)
                .map(|c| HomogeneousPoly::from_dense(web.r(), h, c))
                .collect::<Result<Vec<_>>>()?;
            RelationBasisElement::new(web, h, comps)
        })
        .collect()
}

/// `dim R(h)` without materializing a basis.
pub fn relation_dim(web: &ConstantWeb, h: u32, allow_degenerate: bool) -> Result<usize> {
    gate(web, allow_degenerate)?;
    let g = relation_gram(web, h);
    let dim = g.ncols() - g.rank();
    check_bound(web, h, dim)?;
    Ok(dim)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub h: usize,
    pub dim: usize,
    pub bound: u64,
    pub saturated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub r: usize,
    pub n: usize,
    pub d: usize,
    pub per_degree: Vec<DegreeReport>,
    pub total_rank: usize,
    pub rho: u64,
    pub semi_extremal: bool,
    pub maximal_rank: bool,
}

impl RankReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Tab-separated per-degree table followed by the totals.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("h\tdim\tbound\tsaturated\n");
        for p in &self.per_degree {
            s += &format!("{}\t{}\t{}\t{}\n", p.h, p.dim, p.bound, p.saturated);
        }
        s += &format!("total\t{}\t{}\t{}\n", self.total_rank, self.rho, self.maximal_rank);
        s
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RankOptions {
    pub allow_degenerate: bool,
    /// Also compute degree `h_cutoff` and require it to vanish.
    pub paranoid: bool,
    /// Compute degrees on separate threads.
    pub parallel: bool,
}

/// Per-degree dimensions for `h < h_cutoff`, their sum, and the flags.
pub fn total_rank(web: &ConstantWeb, opts: &RankOptions) -> Result<RankReport> {
    gate(web, opts.allow_degenerate)?;
    let (r, n, d) = (web.r(), web.n(), web.d());
    let hc = h_cutoff(r, n, d);
    let last = if opts.paranoid { hc + 1 } else { hc };
    let degrees: Vec<u32> = (0..last as u32).collect();
    let dims: Vec<Result<usize>> = if opts.parallel {
        std::thread::scope(|s| {
            let handles: Vec<_> = degrees
                .iter()
                .map(|&h| s.spawn(move || relation_dim(web, h, true)))
                .collect();
            handles.into_iter().map(|t| t.join().expect("degree worker panicked")).collect()
        })
    } else {
        degrees.iter().map(|&h| relation_dim(web, h, true)).collect()
    };
    let mut dims = dims.into_iter().collect::<Result<Vec<_>>>()?;
    if opts.paranoid {
        let extra = dims.pop().expect("paranoid adds a degree");
        if web.pg().holds && extra != 0 {
            return Err(Error::Contradiction(format!("dim R({hc}) = {extra}, expected 0 past the cutoff")));
        }
    }
    let per_degree: Vec<DegreeReport> = dims
        .iter()
        .enumerate()
        .map(|(h, &dim)| {
            let bound = degree_bound(r, n, d, h);
            DegreeReport { h, dim, bound, saturated: dim as u64 == bound }
        })
        .collect();
    let total_rank = dims.iter().sum();
    let rho = per_degree.iter().map(|p| p.bound).sum();
    let semi_extremal = web.q() >= (n - 1) as i64
        && per_degree.iter().take(2).all(|p| p.saturated);
    Ok(RankReport {
        r,
        n,
        d,
        per_degree,
        total_rank,
        rho,
        semi_extremal,
        maximal_rank: total_rank as u64 == rho,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiExtremality {
    pub holds: bool,
    pub reason: Option<String>,
}

/// Semi-extremality: `R(0)` and `R(1)` both reach their bounds. Only
/// defined for `q(d) >= n-1`; below that the answer is `false` with a reason.
pub fn semi_extremality(web: &ConstantWeb) -> Result<SemiExtremality> {
    web.require_pg()?;
    let (r, n, d) = (web.r(), web.n(), web.d());
    if web.q() < (n - 1) as i64 {
        return Ok(SemiExtremality { holds: false, reason: Some("q(d) < n-1".into()) });
    }
    let want0 = d - r * (n - 1) - 1;
    let want1 = r * (d - (r + 1) * (n - 1) - 1);
    let got0 = relation_dim(web, 0, false)?;
    if got0 != want0 {
        return Ok(SemiExtremality {
            holds: false,
            reason: Some(format!("dim R(0) = {got0}, maximal is {want0}")),
        });
    }
    let got1 = relation_dim(web, 1, false)?;
    if got1 != want1 {
        return Ok(SemiExtremality {
            holds: false,
            reason: Some(format!("dim R(1) = {got1}, maximal is {want1}")),
        });
    }
    Ok(SemiExtremality { holds: true, reason: None })
}

pub fn is_semi_extremal(web: &ConstantWeb) -> Result<bool> {
    Ok(semi_extremality(web)?.holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, Matrix};
    use crate::webcore::ConstantFoliation;

    /// Moment web with identity basis, built directly: row a of foliation j
    /// is `sum_alpha tau^alpha e_{a n + alpha}`.
    fn moment(r: usize, n: usize, taus: &[i64]) -> ConstantWeb {
        let fols = taus
            .iter()
            .map(|&t| {
                let m = Matrix::from_fn(r, r * n, |a, k| {
                    if k / n == a {
                        int(t.pow((k % n) as u32))
                    } else {
                        zero()
                    }
                });
                ConstantFoliation::new(r, n, m).unwrap()
            })
            .collect();
        ConstantWeb::new(r, n, fols).unwrap()
    }

    #[test]
    fn gram_kernel_matches_direct_kernel() {
        for (r, n, d, h) in [(1, 2, 5, 2), (2, 2, 5, 1), (2, 2, 6, 2), (2, 3, 8, 1)] {
            let taus: Vec<i64> = (0..d).collect();
            let w = moment(r, n, &taus);
            let direct = relation_matrix(&w, h).kernel_basis();
            let gram = relation_gram(&w, h).kernel_basis();
            assert_eq!(direct, gram, "(r,n,d,h)=({r},{n},{d},{h})");
        }
    }

    #[test]
    fn spec_examples() {
        let w = moment(1, 2, &[0, 1, 2]);
        assert_eq!(relation_dim(&w, 0, false).unwrap(), 1);
        let w = moment(2, 2, &[0, 1, 2, 3, 4]);
        assert_eq!(relation_dim(&w, 0, false).unwrap(), 2);
        assert_eq!(relation_dim(&w, 1, false).unwrap(), 2);
        assert_eq!(relation_dim(&w, h_cutoff(2, 2, 5) as u32, false).unwrap(), 0);
    }

    #[test]
    fn relation_elements_verify() {
        let w = moment(2, 2, &[0, 1, 2, 3, 4, 5]);
        for h in 0..3 {
            for e in relation_space(&w, h, false).unwrap() {
                assert!(is_zero_vector(&relation_image(&w, h, e.components()).unwrap()));
                assert!(is_zero_vector(&relation_matrix(&w, h).mul_vec(&e.to_vector())));
            }
        }
    }

    #[test]
    fn broken_relation_is_rejected() {
        let w = moment(1, 2, &[0, 1, 2]);
        let comps = vec![HomogeneousPoly::constant(1, int(1)); 3];
        assert!(matches!(
            RelationBasisElement::new(&w, 0, comps),
            Err(Error::Contradiction(_))
        ));
    }

    #[test]
    fn moment_totals() {
        let rep = total_rank(&moment(1, 2, &[0, 1, 2, 3, 4]), &RankOptions::default()).unwrap();
        assert_eq!(rep.total_rank, 6);
        assert!(rep.maximal_rank);
        let rep = total_rank(&moment(2, 3, &[0, 1, 2, 3, 4, 5, 6, 7]), &RankOptions::default()).unwrap();
        assert_eq!(rep.total_rank, 5);
        let rep = total_rank(&moment(2, 3, &[0, 1, 2, 3, 4]), &RankOptions::default()).unwrap();
        assert_eq!(rep.total_rank, 0);
        assert!(rep.per_degree.iter().all(|p| p.dim == 0));
    }

    #[test]
    fn paranoid_and_parallel_agree() {
        let w = moment(2, 2, &[0, 1, 2, 3, 4, 5, 6]);
        let plain = total_rank(&w, &RankOptions::default()).unwrap();
        let opts = RankOptions { paranoid: true, parallel: true, ..Default::default() };
        assert_eq!(total_rank(&w, &opts).unwrap(), plain);
    }

    #[test]
    fn rank_counts_add_up() {
        let w = moment(2, 2, &[0, 1, 2, 3, 4, 5]);
        for h in 0..4u32 {
            let m = relation_matrix(&w, h);
            let dim = relation_dim(&w, h, false).unwrap();
            assert_eq!(dim + m.rank(), w.d() * homogeneous_dim(2, h));
        }
    }

    #[test]
    fn pg_failure_is_refused_unless_allowed() {
        let w = moment(1, 2, &[0, 0, 1]);
        assert!(matches!(relation_dim(&w, 0, false), Err(Error::NotGeneralPosition { .. })));
        assert_eq!(relation_dim(&w, 0, true).unwrap(), 1);
        let opts = RankOptions { allow_degenerate: true, ..Default::default() };
        assert!(total_rank(&w, &opts).is_ok());
    }

    #[test]
    fn semi_extremal_examples() {
        assert!(is_semi_extremal(&moment(2, 2, &[0, 1, 2, 3, 4, 5])).unwrap());
        assert!(is_semi_extremal(&moment(1, 3, &[0, 1, 2, 3, 4, 5, 6])).unwrap());
        assert!(is_semi_extremal(&moment(2, 2, &[0, 1, 2, 3, 4])).unwrap());
        let s = semi_extremality(&moment(2, 2, &[0, 1, 2, 3])).unwrap();
        assert_eq!(s.reason.as_deref(), Some("q(d) < n-1"));
    }

    #[test]
    fn report_formats() {
        let rep = total_rank(&moment(1, 2, &[0, 1, 2, 3]), &RankOptions::default()).unwrap();
        let back: RankReport = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(back, rep);
        let tsv = rep.to_tsv();
        assert!(tsv.starts_with("h\tdim\tbound\tsaturated\n0\t2\t2\ttrue\n"));
        assert!(tsv.ends_with("total\t3\t3\ttrue\n"));
    }
}
