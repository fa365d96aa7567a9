//! JSON interchange formats. Rationals are strings `"p"` or `"p/q"`; index
//! lists in files are 1-based.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::canonical::CanonicalData;
use crate::error::{Error, Result};
use crate::exactalg::{format_vector, parse_vector, Matrix, Scalar};
use crate::grassmann::{AdaptedStructure, MomentWebSpec, ProjectivePoint, RncFit, RncParam};
use crate::incidence::PlaneArrangement;
use crate::webcore::{ConstantFoliation, ConstantWeb};

type Rows = Vec<Vec<String>>;

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes") + "\n"
}

pub fn matrix_to_rows(m: &Matrix) -> Rows {
    m.rows_iter().map(format_vector).collect()
}

pub fn rows_to_matrix(cols: usize, rows: &[Vec<String>]) -> Result<Matrix> {
    let rows = rows.iter().map(|r| parse_vector(r)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(cols, rows)
}

fn parse_points(rows: &[Vec<String>]) -> Result<Vec<ProjectivePoint>> {
    rows.iter().map(|r| ProjectivePoint::new(parse_vector(r)?)).collect()
}

fn format_points(points: &[ProjectivePoint]) -> Rows {
    points.iter().map(|p| format_vector(p.coords())).collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn zero_based(v: &[usize]) -> Result<Vec<usize>> {
    v.iter()
        .map(|&i| i.checked_sub(1).ok_or_else(|| Error::Parse("indices are 1-based".into())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WebFile {
    pub r: usize,
    pub n: usize,
    pub foliations: Vec<Rows>,
}

impl WebFile {
    pub fn from_web(w: &ConstantWeb) -> Self {
        WebFile {
            r: w.r(),
            n: w.n(),
            foliations: w.foliations().iter().map(|f| matrix_to_rows(f.rows())).collect(),
        }
    }

    pub fn to_web(&self) -> Result<ConstantWeb> {
        if self.n < 2 || self.r == 0 {
            return Err(Error::Invalid("web type needs r >= 1 and n >= 2".into()));
        }
        let fols = self
            .foliations
            .iter()
            .map(|rows| ConstantFoliation::new(self.r, self.n, rows_to_matrix(self.r * self.n, rows)?))
            .collect::<Result<Vec<_>>>()?;
        ConstantWeb::new(self.r, self.n, fols)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureFile {
    pub basis: Rows,
    pub points: Rows,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
}

impl StructureFile {
    pub fn from_structure(s: &AdaptedStructure) -> Self {
        StructureFile {
            basis: matrix_to_rows(&s.basis),
            points: format_points(&s.points),
            permutation: s.permutation.as_deref().map(one_based),
        }
    }

    pub fn to_structure(&self) -> Result<AdaptedStructure> {
        let dim = self.basis.len();
        Ok(AdaptedStructure {
            basis: rows_to_matrix(dim, &self.basis)?,
            points: parse_points(&self.points)?,
            permutation: self.permutation.as_deref().map(zero_based).transpose()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentSpecFile {
    pub r: usize,
    pub n: usize,
    pub taus: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_change: Option<Rows>,
}

impl MomentSpecFile {
    pub fn from_spec(s: &MomentWebSpec) -> Self {
        let base = s.base_change();
        MomentSpecFile {
            r: s.r(),
            n: s.n(),
            taus: format_vector(s.taus()),
            base_change: (*base != Matrix::identity(base.nrows())).then(|| matrix_to_rows(base)),
        }
    }

    pub fn to_spec(&self) -> Result<MomentWebSpec> {
        let taus = parse_vector(&self.taus)?;
        let dim = self.r * self.n;
        let base = match &self.base_change {
            Some(rows) => rows_to_matrix(dim, rows)?,
            None => Matrix::identity(dim),
        };
        MomentWebSpec::new(self.r, self.n, base, taus)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CanonicalFile {
    #[serde(rename = "N")]
    pub big_n: usize,
    pub q: usize,
    pub taus: Vec<String>,
    pub weights: Vec<String>,
    pub points: Rows,
    pub curve: Rows,
}

impl CanonicalFile {
    pub fn from_data(c: &CanonicalData) -> Self {
        CanonicalFile {
            big_n: c.big_n,
            q: c.q,
            taus: format_vector(&c.taus),
            weights: format_vector(&c.weights),
            points: format_points(&c.poincare_points),
            curve: c.curve.iter().map(|v| format_vector(v)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub r: usize,
    pub n: usize,
    pub planes: Vec<Rows>,
}

impl ArrangementFile {
    pub fn from_arrangement(a: &PlaneArrangement) -> Self {
        ArrangementFile { r: a.r(), n: a.n(), planes: a.planes().iter().map(matrix_to_rows).collect() }
    }

    pub fn to_arrangement(&self) -> Result<PlaneArrangement> {
        let planes = self
            .planes
            .iter()
            .map(|p| rows_to_matrix(self.r + self.n, p))
            .collect::<Result<Vec<_>>>()?;
        PlaneArrangement::new(self.r, self.n, planes)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointsFile {
    pub points: Rows,
}

impl PointsFile {
    pub fn from_points(p: &[ProjectivePoint]) -> Self {
        PointsFile { points: format_points(p) }
    }

    pub fn to_points(&self) -> Result<Vec<ProjectivePoint>> {
        parse_points(&self.points)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RncFitFile {
    pub frame: Rows,
    pub base: Vec<String>,
    pub scale: String,
    pub params: Vec<RncParam>,
}

impl RncFitFile {
    pub fn from_fit(f: &RncFit) -> Self {
        RncFitFile {
            frame: matrix_to_rows(&f.frame),
            base: format_vector(&f.base),
            scale: crate::exactalg::format_scalar(&f.scale),
            params: f.params.clone(),
        }
    }

    pub fn to_fit(&self) -> Result<RncFit> {
        let base: Vec<Scalar> = parse_vector(&self.base)?;
        Ok(RncFit {
            frame: rows_to_matrix(base.len(), &self.frame)?,
            base,
            scale: crate::exactalg::parse_scalar(&self.scale)?,
            params: self.params.clone(),
        })
    }
}
