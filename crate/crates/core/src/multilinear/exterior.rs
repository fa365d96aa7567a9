use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactalg::{binomial, one, Scalar};
use crate::error::{Error, Result};

/// Strictly increasing set of 0-based indices naming a basis element
/// `e_{i1}* ^ ... ^ e_{ik}*`. Ordered colexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Blade(pub Vec<usize>);

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Blade {
    /// Position of this blade in the colex enumeration of its grade.
    pub fn colex_rank(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &s)| binomial(s as u64, i as u64 + 1) as usize)
            .sum()
    }
}

/// All `grade`-subsets of `0..dim` in colex order.
pub fn blades(dim: usize, grade: usize) -> Vec<Blade> {
    fn rec(dim: usize, grade: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == grade {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, grade, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, grade, 0, &mut Vec::new(), &mut out);
    let mut v: Vec<Blade> = out.into_iter().map(Blade).collect();
    v.sort();
    v
}

/// Element of the exterior power of grade `grade` of a `dim`-dimensional dual space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorForm {
    ambient_dim: usize,
    grade: usize,
    coeffs: BTreeMap<Blade, Scalar>,
}

impl ExteriorForm {
    pub fn zero(ambient_dim: usize, grade: usize) -> Result<Self> {
        if grade > ambient_dim {
            return Err(Error::GradeOverflow);
        }
        Ok(ExteriorForm { ambient_dim, grade, coeffs: BTreeMap::new() })
    }

    /// The grade-0 form `1`.
    pub fn unit(ambient_dim: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Blade(Vec::new()), one());
        ExteriorForm { ambient_dim, grade: 0, coeffs }
    }

    /// A single basis blade with coefficient 1.
    pub fn basis(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != indices.len() || sorted.last().is_some_and(|&m| m >= ambient_dim) {
            return Err(Error::Invalid(format!("bad blade {indices:?} in dimension {ambient_dim}")));
        }
        let mut f = Self::zero(ambient_dim, sorted.len())?;
        f.coeffs.insert(Blade(sorted), one());
        Ok(f)
    }

    /// The 1-form with the given coefficients.
    pub fn covector(v: &[Scalar]) -> Self {
        let coeffs = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Blade(vec![i]), c.clone()))
            .collect();
        ExteriorForm { ambient_dim: v.len(), grade: 1, coeffs }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, blade: &Blade) -> Scalar {
        self.coeffs.get(blade).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Scalar)> {
        self.coeffs.iter()
    }

    /// Dense coefficients in colex order, length C(dim, grade).
    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); binomial(self.ambient_dim as u64, self.grade as u64) as usize];
        for (b, c) in &self.coeffs {
            v[b.colex_rank()] = c.clone();
        }
        v
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.ambient_dim, self.grade) != (other.ambient_dim, other.grade) {
            return Err(Error::Invalid("adding forms of different shape".into()));
        }
        let mut out = self.coeffs.clone();
        for (b, c) in &other.coeffs {
            *out.entry(b.clone()).or_insert_with(Scalar::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(ExteriorForm { coeffs: out, ..self.clone() })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let coeffs = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs.iter().map(|(b, c)| (b.clone(), c * s)).collect()
        };
        ExteriorForm { coeffs, ..self.clone() }
    }

    /// Exterior product. The sign of each merged blade is the parity of the
    /// shuffle putting the concatenated index list in increasing order.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Invalid("wedge of forms on different spaces".into()));
        }
        let grade = self.grade + other.grade;
        if grade > self.ambient_dim {
            return Err(Error::GradeOverflow);
        }
        let mut out: BTreeMap<Blade, Scalar> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if let Some((merged, negative)) = merge(&a.0, &b.0) {
                    let v = ca * cb;
                    let slot = out.entry(Blade(merged)).or_insert_with(Scalar::zero);
                    if negative {
                        *slot -= v;
                    } else {
                        *slot += v;
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(ExteriorForm { ambient_dim: self.ambient_dim, grade, coeffs: out })
    }

    /// `rows[0] ^ rows[1] ^ ... ^ rows[k-1]` for covectors of a common length.
    pub fn wedge_rows(rows: &[Vec<Scalar>]) -> Result<Self> {
        let dim = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Invalid("wedge_rows: covectors of unequal length".into()));
        }
        if rows.len() > dim {
            return Err(Error::GradeOverflow);
        }
        rows.iter()
            .try_fold(Self::unit(dim), |acc, row| acc.wedge(&Self::covector(row)))
    }
}

/// Merges two sorted index lists; `None` if they share an index, otherwise
/// the sorted union and whether the reordering is odd.
fn merge(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                // b[j] jumps over the remaining elements of a
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => return None,
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, inversions % 2 == 1))
}
