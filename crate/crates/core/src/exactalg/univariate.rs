use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use super::{one, Scalar};

/// Dense univariate polynomial, coefficients in increasing degree.
/// Trailing zeros are trimmed so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![Scalar::zero(); degree + 1];
        c[degree] = one();
        UniPoly { coeffs: c }
    }

    /// Monic product of (t - root).
    pub fn from_roots(roots: &[Scalar]) -> Self {
        roots.iter().fold(Self::constant(one()), |acc, root| {
            &acc * &Self::new(vec![-root.clone(), one()])
        })
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(), |acc, c| acc * t + c)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Lagrange interpolation through `(nodes[j], values[j])`; nodes distinct.
    pub fn interpolate(nodes: &[Scalar], values: &[Scalar]) -> Self {
        assert_eq!(nodes.len(), values.len());
        let mut acc = Self::zero();
        for (j, (xj, yj)) in nodes.iter().zip(values).enumerate() {
            if yj.is_zero() {
                continue;
            }
            let others: Vec<Scalar> =
                nodes.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect();
            let basis = Self::from_roots(&others);
            let denom = basis.eval(xj);
            acc = &acc + &basis.scale(&(yj / denom));
        }
        acc
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;

    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;

    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;

    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}
