//! Vandermonde weights, the general solution of the moment system, the
//! Lagrange identity, and the canonical curve data of a moment web: the
//! Poincaré points of a relation basis and the rational normal curve of
//! degree `q(d)` through them.

use crate::abelian::{relation_space, RelationBasisElement};
use crate::error::{Error, Result};
use crate::exactalg::{binomial, int, one, pow, zero, Matrix, Scalar, UniPoly};
use crate::grassmann::{moment_web, MomentWebSpec, ProjectivePoint};
use crate::multilinear::{HomogeneousPoly, Monomial};
use crate::webcore::{h_cutoff, q_of, rho_bound};

fn check_distinct(taus: &[Scalar]) -> Result<()> {
    for (i, t) in taus.iter().enumerate() {
        if taus[..i].contains(t) {
            return Err(Error::RepeatedParameter);
        }
    }
    Ok(())
}

/// `c_j = 1 / prod_{k != j} (tau_j - tau_k)`, the solution of
/// `sum_j tau_j^rho c_j = [rho == d-1]` for `rho < d`.
pub fn vandermonde_weights(taus: &[Scalar]) -> Result<Vec<Scalar>> {
    check_distinct(taus)?;
    Ok(taus
        .iter()
        .enumerate()
        .map(|(j, tj)| {
            let prod = taus
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .fold(one(), |acc, (_, tk)| acc * (tj - tk));
            one() / prod
        })
        .collect())
}

/// `P(t) / (t - tau_j)` with `P(t) = prod_k (t - tau_k)`.
pub fn cofactor(taus: &[Scalar], j: usize) -> UniPoly {
    let others: Vec<Scalar> = taus.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, t)| t.clone()).collect();
    UniPoly::from_roots(&others)
}

/// `sum_j tau_j^rho z_j` for `rho = 0..count`.
pub fn moments(taus: &[Scalar], z: &[Scalar], count: usize) -> Vec<Scalar> {
    (0..count as u32)
        .map(|rho| taus.iter().zip(z).map(|(t, x)| pow(t, rho) * x).sum())
        .collect()
}

/// `z_j = c_j f(tau_j)`, checked to solve `sum_j tau_j^rho z_j = 0` for
/// `rho = 0..=r(n-1)`. Requires `deg f <= q(d)`.
pub fn check_general_solution(taus: &[Scalar], f: &UniPoly, r: usize, n: usize) -> Result<Vec<Scalar>> {
    let d = taus.len();
    let q = q_of(r, n, d);
    if f.degree().is_some_and(|k| k as i64 > q) {
        return Err(Error::Invalid(format!("polynomial degree exceeds q(d) = {q}")));
    }
    let c = vandermonde_weights(taus)?;
    let z: Vec<Scalar> = taus.iter().zip(&c).map(|(t, cj)| cj * f.eval(t)).collect();
    if moments(taus, &z, r * (n - 1) + 1).iter().any(|m| *m != zero()) {
        return Err(Error::Contradiction("c_j f(tau_j) does not solve the moment system".into()));
    }
    Ok(z)
}

/// The polynomial `f` with `z_j = c_j f(tau_j)` for a solution `z` of the
/// moment system, checked to have degree at most `q(d)`.
pub fn solution_polynomial(taus: &[Scalar], z: &[Scalar], r: usize, n: usize) -> Result<UniPoly> {
    if moments(taus, z, r * (n - 1) + 1).iter().any(|m| *m != zero()) {
        return Err(Error::Invalid("not a solution of the moment system".into()));
    }
    let c = vandermonde_weights(taus)?;
    let values: Vec<Scalar> = z.iter().zip(&c).map(|(x, cj)| x / cj).collect();
    let f = UniPoly::interpolate(taus, &values);
    let q = q_of(r, n, taus.len());
    if f.degree().is_some_and(|k| k as i64 > q) {
        return Err(Error::Contradiction(format!("solution polynomial has degree above q(d) = {q}")));
    }
    Ok(f)
}

/// The solution space of the moment system, checked to have dimension
/// `q(d) + 1` with every basis vector of the form `c_j f(tau_j)`.
pub fn moment_solution_space(taus: &[Scalar], r: usize, n: usize) -> Result<Vec<Vec<Scalar>>> {
    check_distinct(taus)?;
    let rows = r * (n - 1) + 1;
    let m = Matrix::from_fn(rows, taus.len(), |rho, j| pow(&taus[j], rho as u32));
    let basis = m.kernel_basis();
    let want = (q_of(r, n, taus.len()) + 1).max(0) as usize;
    if basis.len() != want {
        return Err(Error::Contradiction(format!("solution space has dimension {}, expected {want}", basis.len())));
    }
    for z in &basis {
        solution_polynomial(taus, z, r, n)?;
    }
    Ok(basis)
}

/// Whether `sum_j P(t)/(t - tau_j) c_j f(tau_j) = f(t)` as polynomials. True
/// whenever `deg f <= d-1`.
pub fn lagrange_identity(taus: &[Scalar], f: &UniPoly) -> Result<bool> {
    let c = vandermonde_weights(taus)?;
    let mut sum = UniPoly::zero();
    for (j, (t, cj)) in taus.iter().zip(&c).enumerate() {
        sum = &sum + &cofactor(taus, j).scale(&(cj * f.eval(t)));
    }
    Ok(&sum == f)
}

/// `N + 1` for `q >= n-1`, from `q = rho(n-1) + m - 1` with `m` in `1..n`:
/// `m C(r+rho+1, r+1) + (n-1-m) C(r+rho, r+1)`.
pub fn dimension_formula(r: usize, n: usize, q: usize) -> Result<u64> {
    if r == 0 || n < 2 || q < n - 1 {
        return Err(Error::Invalid("dimension formula needs r >= 1, n >= 2 and q >= n-1".into()));
    }
    let rho = (q / (n - 1)) as u64;
    let m = (q % (n - 1) + 1) as u64;
    let r = r as u64;
    Ok(m * binomial(r + rho + 1, r + 1) + (n as u64 - 1 - m) * binomial(r + rho, r + 1))
}

/// Canonical curve data at the origin for a moment web.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalData {
    /// Dimension of the target projective space; the rank is `big_n + 1`.
    pub big_n: usize,
    pub q: usize,
    pub taus: Vec<Scalar>,
    pub weights: Vec<Scalar>,
    pub poincare_points: Vec<ProjectivePoint>,
    /// `v_0 .. v_q` with `z(t) = sum_rho t^rho v_rho`.
    pub curve: Vec<Vec<Scalar>>,
    /// The ordered relation basis the points are read from.
    pub relations: Vec<RelationBasisElement>,
}

impl CanonicalData {
    pub fn curve_at(&self, t: &Scalar) -> Vec<Scalar> {
        let mut acc = vec![zero(); self.big_n + 1];
        let mut p = one();
        for v in &self.curve {
            for (a, x) in acc.iter_mut().zip(v) {
                *a += &p * x;
            }
            p *= t;
        }
        acc
    }

    pub fn curve_point(&self, t: &Scalar) -> Result<ProjectivePoint> {
        ProjectivePoint::new(self.curve_at(t))
    }

    /// Default fresh parameter, one past the largest `tau`.
    pub fn fresh_parameter(&self) -> Scalar {
        self.taus.iter().max().cloned().unwrap_or_else(zero) + int(1)
    }
}

/// Relation basis in the order: degree-0 relations `c_j tau_j^rho`
/// (`rho = 0..=q`), the `r` relations `c_j t_a`, the rest of `R(1)` from its
/// canonical basis, then the canonical bases of higher degrees.
fn ordered_relations(spec: &MomentWebSpec, c: &[Scalar], q: usize) -> Result<Vec<RelationBasisElement>> {
    let web = moment_web(spec)?;
    let (r, d) = (spec.r(), spec.d());
    let mut out = Vec::new();
    for rho in 0..=q as u32 {
        let comps = (0..d)
            .map(|j| HomogeneousPoly::constant(r, &c[j] * pow(&spec.taus()[j], rho)))
            .collect();
        out.push(RelationBasisElement::new(&web, 0, comps)?);
    }
    let mut r1: Vec<RelationBasisElement> = Vec::new();
    for a in 0..r {
        let comps = c
            .iter()
            .map(|cj| {
                let mut v = vec![zero(); r];
                v[a] = cj.clone();
                HomogeneousPoly::linear(&v)
            })
            .collect();
        r1.push(RelationBasisElement::new(&web, 1, comps)?);
    }
    let span_rank = |set: &[RelationBasisElement]| {
        let width = set[0].to_vector().len();
        Matrix::from_rows(width, set.iter().map(RelationBasisElement::to_vector).collect())
            .expect("same layout")
            .rank()
    };
    for e in relation_space(&web, 1, false)? {
        let mut trial = r1.clone();
        trial.push(e);
        if span_rank(&trial) == trial.len() {
            r1 = trial;
        }
    }
    out.extend(r1);
    for h in 2..h_cutoff(r, spec.n(), d) as u32 {
        out.extend(relation_space(&web, h, false)?);
    }
    Ok(out)
}

pub fn canonical_data(spec: &MomentWebSpec) -> Result<CanonicalData> {
    let (r, n, d) = (spec.r(), spec.n(), spec.d());
    let q = q_of(r, n, d);
    if q < (n - 1) as i64 {
        return Err(Error::NotSemiExtremal(format!("q(d) = {q} < n-1")));
    }
    let q = q as usize;
    let taus = spec.taus().to_vec();
    let c = vandermonde_weights(&taus)?;
    let relations = ordered_relations(spec, &c, q)?;
    let rank = relations.len();
    let rho = rho_bound(r, n, d);
    if rank as u64 != rho || rho != dimension_formula(r, n, q)? {
        return Err(Error::Contradiction(format!(
            "moment web has rank {rank}, bound {rho}, closed form {}",
            dimension_formula(r, n, q)?
        )));
    }

    // Value at the origin of each component; only degree-0 relations survive.
    let values: Vec<Vec<Scalar>> = (0..d)
        .map(|j| {
            relations
                .iter()
                .map(|rel| match rel.degree() {
                    0 => rel.components()[j].coeff(&Monomial(vec![0; r])),
                    _ => zero(),
                })
                .collect()
        })
        .collect();
    let mut points = Vec::with_capacity(d);
    for (j, z) in values.iter().enumerate() {
        let p = ProjectivePoint::new(z.clone())?;
        let mut expect: Vec<Scalar> = (0..=q as u32).map(|k| pow(&taus[j], k)).collect();
        expect.resize(rank, zero());
        if p != ProjectivePoint::new(expect)? {
            return Err(Error::Contradiction(format!("Poincaré point {} is not [1:tau:..:tau^q:0..]", j + 1)));
        }
        points.push(p);
    }

    let mut curve = vec![vec![zero(); rank]; q + 1];
    for i in 0..rank {
        let mut poly = UniPoly::zero();
        for (j, z) in values.iter().enumerate() {
            poly = &poly + &cofactor(&taus, j).scale(&z[i]);
        }
        if poly.degree().is_some_and(|k| k > q) {
            return Err(Error::Contradiction(format!("curve coordinate {i} has degree above q(d) = {q}")));
        }
        for (rho, v) in curve.iter_mut().enumerate() {
            v[i] = poly.coeff(rho);
        }
    }
    let data = CanonicalData {
        big_n: rank - 1,
        q,
        taus,
        weights: c,
        poincare_points: points,
        curve,
        relations,
    };
    for (j, t) in data.taus.iter().enumerate() {
        if data.curve_point(t)? != data.poincare_points[j] {
            return Err(Error::Contradiction(format!("curve misses Poincaré point {}", j + 1)));
        }
    }
    Ok(data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::frac;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn weights_examples() {
        assert_eq!(vandermonde_weights(&ints(&[0, 1])).unwrap(), ints(&[-1, 1]));
        assert_eq!(vandermonde_weights(&ints(&[0, 1, 2])).unwrap(), vec![frac(1, 2), int(-1), frac(1, 2)]);
        assert_eq!(vandermonde_weights(&ints(&[0, 1, 1])).unwrap_err(), Error::RepeatedParameter);
    }

    #[test]
    fn general_solution_examples() {
        let taus = ints(&[0, 1, 2]);
        let z = check_general_solution(&taus, &UniPoly::constant(int(1)), 1, 2).unwrap();
        assert_eq!(z, vec![frac(1, 2), int(-1), frac(1, 2)]);
        let z = check_general_solution(&taus, &UniPoly::zero(), 1, 2).unwrap();
        assert!(z.iter().all(|x| *x == zero()));
        let f = UniPoly::new(ints(&[3, -2, 5]));
        let taus = ints(&[0, 1, 2, 3, 4, 5, 6]);
        let z = check_general_solution(&taus, &f, 2, 2).unwrap();
        assert_eq!(solution_polynomial(&taus, &z, 2, 2).unwrap(), f);
        assert!(check_general_solution(&taus, &UniPoly::monomial(4), 2, 2).is_err());
        assert_eq!(moment_solution_space(&taus, 2, 2).unwrap().len(), 4);
    }

    #[test]
    fn lagrange_examples() {
        let taus = ints(&[0, 1, 2]);
        assert!(lagrange_identity(&taus, &UniPoly::constant(int(1))).unwrap());
        for d in 1..=8 {
            let taus: Vec<Scalar> = (0..d).map(|k| frac(2 * k - 3, 1 + k)).collect();
            assert!(lagrange_identity(&taus, &UniPoly::monomial(d as usize - 1)).unwrap());
            assert!(!lagrange_identity(&taus, &UniPoly::monomial(d as usize)).unwrap());
        }
    }

    #[test]
    fn dimension_formula_examples() {
        assert_eq!(dimension_formula(2, 3, 3).unwrap(), 8);
        for (r, n) in [(1, 2), (2, 2), (2, 3), (3, 4)] {
            assert_eq!(dimension_formula(r, n, n - 1).unwrap(), (r + n) as u64);
        }
        assert!(dimension_formula(2, 3, 1).is_err());
    }

    #[test]
    fn canonical_small() {
        let spec = MomentWebSpec::identity(1, 2, ints(&[0, 1, 2, 3, 4])).unwrap();
        let data = canonical_data(&spec).unwrap();
        assert_eq!((data.big_n, data.q), (5, 2));
        assert_eq!(data.curve.len(), 3);
        for (rho, v) in data.curve.iter().enumerate() {
            let mut e = vec![zero(); 6];
            e[rho] = int(1);
            assert_eq!(v, &e);
        }
        let fresh = data.curve_point(&data.fresh_parameter()).unwrap();
        assert!(!data.poincare_points.contains(&fresh));
    }

    #[test]
    fn canonical_with_base_change() {
        let g = Matrix::from_i64(&[&[1, 2, 0, 0], &[0, 1, 0, 3], &[1, 0, 1, 0], &[0, 0, -1, 1]]);
        let spec = MomentWebSpec::new(2, 2, g, ints(&[0, 1, 2, 3, 5, 8, 13])).unwrap();
        let data = canonical_data(&spec).unwrap();
        assert_eq!((data.big_n + 1, data.q), (20, 3));
    }
}
