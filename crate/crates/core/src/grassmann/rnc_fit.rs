use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{format_scalar, one, parse_scalar, zero, Matrix, Scalar};

use super::projective::{frame_matrix, ProjectivePoint};

/// Parameter of a point on the fitted curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RncParam {
    Finite(Scalar),
    Infinity,
}

impl RncParam {
    pub fn to_text(&self) -> String {
        match self {
            RncParam::Finite(s) => format_scalar(s),
            RncParam::Infinity => "inf".into(),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s == "inf" {
            Ok(RncParam::Infinity)
        } else {
            parse_scalar(s).map(RncParam::Finite)
        }
    }
}

impl Serialize for RncParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for RncParam {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        RncParam::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// A rational normal curve of `P^{n-1}` through given points.
///
/// `frame` sends the first `n+1` input points to the standard frame
/// (coordinate points, then all-ones). After the coordinatewise inverse the
/// curve becomes the line `y(s) = base + s * scale * (1, .., 1)`. Parameters
/// are pinned so that point `n+1` sits at infinity, point `n+2` at 0 and point
/// `n+3` at 1; any other choice differs by a Moebius map.
#[derive(Clone, Debug, PartialEq)]
pub struct RncFit {
    pub frame: Matrix,
    pub base: Vec<Scalar>,
    pub scale: Scalar,
    pub params: Vec<RncParam>,
}

/// Coordinatewise inverse, scaled to stay polynomial: `x_i -> prod_{k!=i} x_k`.
fn cremona(x: &[Scalar]) -> Vec<Scalar> {
    (0..x.len())
        .map(|i| x.iter().enumerate().filter(|(k, _)| *k != i).fold(one(), |acc, (_, v)| acc * v))
        .collect()
}

/// Writes `v = alpha * a + beta * ones` if possible.
fn decompose(a: &[Scalar], v: &[Scalar]) -> Option<(Scalar, Scalar)> {
    let m = Matrix::from_columns(a.len(), &[a.to_vec(), vec![one(); a.len()]]).ok()?;
    let x = m.solve(v)?;
    Some((x[0].clone(), x[1].clone()))
}

impl RncFit {
    fn n(&self) -> usize {
        self.base.len()
    }

    /// The point with parameter `s`.
    pub fn point_at(&self, s: &RncParam) -> ProjectivePoint {
        let inv = self.frame.inverse().expect("frame transform is invertible");
        let x = match s {
            RncParam::Infinity => vec![one(); self.n()],
            RncParam::Finite(s) => {
                let y: Vec<Scalar> = self.base.iter().map(|b| b + s * &self.scale).collect();
                cremona(&y)
            }
        };
        ProjectivePoint::new(inv.mul_vec(&x)).expect("curve points are nonzero")
    }

    /// Parameter of `p` if it lies on the curve.
    pub fn parameter_of(&self, p: &ProjectivePoint) -> Option<RncParam> {
        let x = self.frame.mul_vec(p.coords());
        let zeros: Vec<usize> = (0..x.len()).filter(|&i| x[i] == zero()).collect();
        let param = match zeros.len() {
            0 => {
                let y: Vec<Scalar> = x.iter().map(|v| one() / v).collect();
                let (alpha, beta) = decompose(&self.base, &y)?;
                if alpha == zero() {
                    RncParam::Infinity
                } else {
                    RncParam::Finite(beta / (alpha * &self.scale))
                }
            }
            k if k == x.len() - 1 => {
                let i = (0..x.len()).find(|i| !zeros.contains(i)).expect("one nonzero coordinate");
                RncParam::Finite(-&self.base[i] / &self.scale)
            }
            _ => return None,
        };
        (self.point_at(&param) == *p).then_some(param)
    }

    pub fn contains(&self, p: &ProjectivePoint) -> bool {
        self.parameter_of(p).is_some()
    }
}

/// Fits the rational normal curve through `d >= n+3` points of `P^{n-1}`
/// whose first `n+1` are in general position.
pub fn fit_rnc(points: &[ProjectivePoint]) -> Result<RncFit> {
    let n = points.first().map_or(0, ProjectivePoint::len);
    if n < 2 {
        return Err(Error::Invalid("points must lie in P^1 or higher".into()));
    }
    if points.iter().any(|p| p.len() != n) {
        return Err(Error::Invalid("points live in different projective spaces".into()));
    }
    if points.len() < n + 3 {
        return Err(Error::Invalid(format!("fitting in P^{} needs at least {} points", n - 1, n + 3)));
    }
    let frame = frame_matrix(&points[..=n])?
        .inverse()
        .expect("frame matrices are invertible");

    // Cremona images of the points after the frame.
    let mut images = Vec::with_capacity(points.len() - n - 1);
    for p in &points[n + 1..] {
        let x = frame.mul_vec(p.coords());
        if x.iter().any(|v| *v == zero()) {
            return Err(Error::NotOnRnc);
        }
        images.push(x.iter().map(|v| one() / v).collect::<Vec<_>>());
    }
    let mut rows = images.clone();
    rows.push(vec![one(); n]);
    if Matrix::from_rows(n, rows)?.rank() > 2 {
        return Err(Error::NotOnRnc);
    }

    let base = images[0].clone();
    let (a3, b3) = decompose(&base, &images[1]).ok_or(Error::NotOnRnc)?;
    if a3 == zero() || b3 == zero() {
        return Err(Error::Degenerate("repeated points on the curve".into()));
    }
    let scale = b3 / a3;

    let mut params = Vec::with_capacity(points.len());
    params.extend(base.iter().map(|b| RncParam::Finite(-b / &scale)));
    params.push(RncParam::Infinity);
    for img in &images {
        let (a, b) = decompose(&base, img).ok_or(Error::NotOnRnc)?;
        if a == zero() {
            return Err(Error::Degenerate("repeated points on the curve".into()));
        }
        params.push(RncParam::Finite(b / (a * &scale)));
    }
    for (i, p) in params.iter().enumerate() {
        if params[..i].contains(p) {
            return Err(Error::Degenerate("repeated points on the curve".into()));
        }
    }
    Ok(RncFit { frame, base, scale, params })
}
