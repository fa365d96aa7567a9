use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::exactalg::{binomial, one, Scalar};
use crate::error::{Error, Result};

/// Exponent vector of a monomial.
///
/// Ordered so that ascending iteration is graded-lexicographic from the top:
/// `x1^h` first, then `x1^(h-1) x2`, ..., down to `xk^h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of a given degree in `nvars` variables, in grlex order.
pub fn monomials(nvars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(nvars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(nvars, degree, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// `monomials(nvars, degree)` plus a reverse lookup table.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    list: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let list = monomials(nvars, degree);
        let index = list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis { list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.list[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.list.iter()
    }
}

/// Dimension of the space of degree-`h` forms in `k` variables.
pub fn homogeneous_dim(k: usize, h: u32) -> usize {
    if k == 0 {
        return usize::from(h == 0);
    }
    binomial((k - 1) as u64 + h as u64, (k - 1) as u64) as usize
}

/// Homogeneous polynomial with exact coefficients; zero terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousPoly {
    nvars: usize,
    degree: u32,
    coeffs: BTreeMap<Monomial, Scalar>,
}

impl HomogeneousPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogeneousPoly { nvars, degree, coeffs: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars, 0);
        p.add_term(Monomial(vec![0; nvars]), c);
        p
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.0.len(), m.degree());
        p.add_term(m, c);
        p
    }

    /// The linear form `sum_i v[i] x_i`.
    pub fn linear(v: &[Scalar]) -> Self {
        let n = v.len();
        let mut p = Self::zero(n, 1);
        for (i, c) in v.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Builds a polynomial from its grlex-ordered dense coefficient vector.
    pub fn from_dense(nvars: usize, degree: u32, dense: &[Scalar]) -> Result<Self> {
        let basis = monomials(nvars, degree);
        if basis.len() != dense.len() {
            return Err(Error::Invalid(format!(
                "expected {} coefficients, got {}",
                basis.len(),
                dense.len()
            )));
        }
        let mut p = Self::zero(nvars, degree);
        for (m, c) in basis.into_iter().zip(dense) {
            p.add_term(m, c.clone());
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.coeffs.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Nonzero terms in grlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        monomials(self.nvars, self.degree).iter().map(|m| self.coeff(m)).collect()
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.nvars);
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nvars, self.degree), (other.nvars, other.degree));
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars, self.degree);
        }
        HomogeneousPoly {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Product by naive convolution.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                *acc.entry(ma.mul(mb)).or_insert_with(Scalar::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        HomogeneousPoly { nvars: self.nvars, degree: self.degree + other.degree, coeffs: acc }
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        self.coeffs.iter().fold(Scalar::zero(), |acc, (m, c)| {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc + term
        })
    }

    /// Substitutes linear forms for the variables: `c(l_1, ..., l_k)`, where
    /// each `l_a` is a covector of length `N`. The result lives in `N`
    /// variables and has the same degree.
    pub fn substitute(&self, forms: &[Vec<Scalar>]) -> Result<Self> {
        if forms.len() != self.nvars {
            return Err(Error::Invalid(format!(
                "substitute: {} forms for {} variables",
                forms.len(),
                self.nvars
            )));
        }
        let target = forms.first().map_or(0, Vec::len);
        if forms.iter().any(|f| f.len() != target) {
            return Err(Error::Invalid("substitute: forms of unequal length".into()));
        }
        let max_exp = self.coeffs.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<HomogeneousPoly>> = forms
            .iter()
            .map(|f| {
                let lin = HomogeneousPoly::linear(f);
                let mut pw = vec![HomogeneousPoly::constant(target, one())];
                for k in 1..=max_exp as usize {
                    let next = pw[k - 1].mul(&lin);
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = HomogeneousPoly::zero(target, self.degree);
        for (m, c) in &self.coeffs {
            let mut term = HomogeneousPoly::constant(target, c.clone());
            for (a, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[a][e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;
    use proptest::prelude::*;

    fn var(n: usize, i: usize) -> Vec<Scalar> {
        (0..n).map(|k| int(i64::from(k == i))).collect()
    }

    #[test]
    fn grlex_order() {
        let m: Vec<Vec<u32>> = monomials(3, 2).into_iter().map(|m| m.0).collect();
        assert_eq!(
            m,
            vec![
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        let p = HomogeneousPoly::from_dense(3, 2, &(1..=6).map(int).collect::<Vec<_>>()).unwrap();
        let order: Vec<_> = p.terms().map(|(m, _)| m.0.clone()).collect();
        assert_eq!(order, m);
    }

    #[test]
    fn monomial_count_matches_binomial() {
        for k in 1..=6 {
            for h in 0..=6 {
                assert_eq!(monomials(k, h).len(), homogeneous_dim(k, h));
            }
        }
    }

    #[test]
    fn substitute_single_variable() {
        let c = HomogeneousPoly::linear(&[int(1)]);
        let u = vec![int(2), int(-1), int(0)];
        let s = c.substitute(std::slice::from_ref(&u)).unwrap();
        assert_eq!(s, HomogeneousPoly::linear(&u));
    }

    #[test]
    fn substitute_product_of_coordinates() {
        let c = HomogeneousPoly::monomial(Monomial(vec![1, 1]), int(1));
        let s = c.substitute(&[var(2, 0), var(2, 1)]).unwrap();
        assert_eq!(s, HomogeneousPoly::monomial(Monomial(vec![1, 1]), int(1)));
    }

    #[test]
    fn substitute_square_binomial() {
        // t^2 with t = x1 + x2 gives x1^2 + 2 x1 x2 + x2^2
        let c = HomogeneousPoly::monomial(Monomial(vec![2]), int(1));
        let s = c.substitute(&[vec![int(1), int(1)]]).unwrap();
        assert_eq!(s.to_dense(), vec![int(1), int(2), int(1)]);
    }

    #[test]
    fn cancellation_removes_terms() {
        let p = HomogeneousPoly::linear(&[int(1), int(2)]);
        let q = p.scale(&int(-1));
        assert!(p.add(&q).is_zero());
    }

    fn poly(nvars: usize, degree: u32) -> impl Strategy<Value = HomogeneousPoly> {
        let len = homogeneous_dim(nvars, degree);
        proptest::collection::vec(-3i64..=3, len).prop_map(move |v| {
            HomogeneousPoly::from_dense(nvars, degree, &v.into_iter().map(int).collect::<Vec<_>>())
                .unwrap()
        })
    }

    fn forms(r: usize, n: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, n), r)
            .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect())
    }

    proptest! {
        #[test]
        fn substitute_is_linear_and_multiplicative(
            a in (0u32..=2).prop_flat_map(|h| poly(2, h)),
            b in (0u32..=2).prop_flat_map(|h| poly(2, h)),
            c in (0u32..=2).prop_flat_map(|h| poly(2, h)),
            f in forms(2, 4),
        ) {
            let sa = a.substitute(&f).unwrap();
            let sb = b.substitute(&f).unwrap();
            prop_assert_eq!(a.mul(&b).substitute(&f).unwrap(), sa.mul(&sb));
            if a.degree() == c.degree() {
                let sc = c.substitute(&f).unwrap();
                prop_assert_eq!(a.add(&c).substitute(&f).unwrap(), sa.add(&sc));
            }
        }

        #[test]
        fn substitute_commutes_with_evaluation(
            c in poly(2, 3),
            f in forms(2, 3),
            x in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let x: Vec<Scalar> = x.into_iter().map(int).collect();
            let images: Vec<Scalar> = f.iter().map(|row| crate::exactalg::dot(row, &x)).collect();
            prop_assert_eq!(c.substitute(&f).unwrap().eval(&x), c.eval(&images));
        }
    }
}
