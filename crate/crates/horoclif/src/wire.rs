//! JSON forms of multivectors, spinors, matrices, Minkowski points,
//! multiflags, horospheres, geodesics and lambda tables.
//!
//! A multivector is written as a map from blade key to coefficient. The key
//! lists the generator indices of the blade, 1-based, sorted and joined by
//! commas: `""` is the scalar blade and `"1,3"` is i₁i₃. Missing keys are 0.

use std::collections::BTreeMap;

use horoclif_core::clifford::{Multivector, Paravector, Signature};
use horoclif_core::hyperbolic::{DecoratedHorosphere, Geodesic};
use horoclif_core::lambda::{LambdaMatrix, RelationReport};
use horoclif_core::lipschitz::{CliffordMatrix, Flavor, LipschitzSpinor, ParavectorPoint};
use horoclif_core::minkowski::{MinkowskiPoint, Multiflag};
use horoclif_core::MAX_DIM;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

pub type Coeffs = BTreeMap<String, f64>;

pub fn blade_key(blade: usize) -> String {
    let idx: Vec<String> =
        (0..usize::BITS as usize).filter(|j| blade >> j & 1 == 1).map(|j| (j + 1).to_string()).collect();
    idx.join(",")
}

pub fn parse_blade_key(key: &str, n: usize) -> Result<usize, CliError> {
    if key.is_empty() {
        return Ok(0);
    }
    let bad = || CliError::input(format!("bad blade key {key:?} for n = {n}"));
    let mut blade = 0usize;
    let mut last = 0usize;
    for part in key.split(',') {
        let j: usize = part.trim().parse().map_err(|_| bad())?;
        if j <= last || j > n {
            return Err(bad());
        }
        blade |= 1 << (j - 1);
        last = j;
    }
    Ok(blade)
}

/// Nonzero coefficients keyed by blade.
pub fn coeffs_of(m: &Multivector) -> Coeffs {
    m.terms().map(|(b, c)| (blade_key(b), c)).collect()
}

pub fn multivector_from(sig: Signature, coeffs: &Coeffs) -> Result<Multivector, CliError> {
    let mut terms = Vec::with_capacity(coeffs.len());
    for (k, &c) in coeffs {
        terms.push((parse_blade_key(k, sig.n())?, c));
    }
    Ok(Multivector::from_terms(sig, &terms)?)
}

fn check_dim(n: usize) -> Result<Signature, CliError> {
    if n > MAX_DIM {
        return Err(CliError::input(format!("dimension {n} exceeds {MAX_DIM}")));
    }
    Ok(Signature::negative(n)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub p: usize,
    pub q: usize,
    pub coeffs: Coeffs,
}

impl MultivectorJson {
    pub fn from_multivector(m: &Multivector) -> Self {
        MultivectorJson { p: m.sig().p(), q: m.sig().q(), coeffs: coeffs_of(m) }
    }

    pub fn to_multivector(&self) -> Result<Multivector, CliError> {
        if self.p + self.q > MAX_DIM {
            return Err(CliError::input(format!("dimension {} exceeds {MAX_DIM}", self.p + self.q)));
        }
        multivector_from(Signature::new(self.p, self.q)?, &self.coeffs)
    }
}

/// A component inside a spinor or matrix: either the bare coefficient map or
/// the full multivector object. Always written bare.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Component {
    Full(MultivectorJson),
    Bare(Coeffs),
}

impl Serialize for Component {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Component::Full(m) => m.coeffs.serialize(s),
            Component::Bare(c) => c.serialize(s),
        }
    }
}

impl Component {
    fn to_multivector(&self, sig: Signature) -> Result<Multivector, CliError> {
        match self {
            Component::Full(m) => {
                if m.p != sig.p() || m.q != sig.q() {
                    return Err(CliError::input(format!(
                        "component in Cl({},{}) inside a spinor over {sig}",
                        m.p, m.q
                    )));
                }
                multivector_from(sig, &m.coeffs)
            }
            Component::Bare(c) => multivector_from(sig, c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinorJson {
    pub n: usize,
    pub xi: Component,
    pub eta: Component,
}

impl SpinorJson {
    pub fn from_spinor(k: &LipschitzSpinor) -> Self {
        SpinorJson { n: k.n(), xi: Component::Bare(coeffs_of(k.xi())), eta: Component::Bare(coeffs_of(k.eta())) }
    }

    pub fn to_spinor(&self) -> Result<LipschitzSpinor, CliError> {
        let sig = check_dim(self.n)?;
        Ok(LipschitzSpinor::new(self.xi.to_multivector(sig)?, self.eta.to_multivector(sig)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub a: Component,
    pub b: Component,
    pub c: Component,
    pub d: Component,
}

impl MatrixJson {
    pub fn from_matrix(m: &CliffordMatrix) -> Self {
        let c = |x: &Multivector| Component::Bare(coeffs_of(x));
        MatrixJson { n: m.sig().n(), a: c(m.a()), b: c(m.b()), c: c(m.c()), d: c(m.d()) }
    }

    pub fn to_matrix(&self, flavor: Flavor) -> Result<CliffordMatrix, CliError> {
        let sig = check_dim(self.n)?;
        let [a, b, c, d] = [&self.a, &self.b, &self.c, &self.d].map(|x| x.to_multivector(sig));
        Ok(CliffordMatrix::new(a?, b?, c?, d?, flavor)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiJson {
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "Z")]
    pub z: f64,
    #[serde(rename = "X")]
    pub x: Vec<f64>,
}

impl From<&MinkowskiPoint> for MinkowskiJson {
    fn from(p: &MinkowskiPoint) -> Self {
        MinkowskiJson { t: p.t, z: p.z, x: p.x.clone() }
    }
}

impl From<&MinkowskiJson> for MinkowskiPoint {
    fn from(p: &MinkowskiJson) -> Self {
        MinkowskiPoint::new(p.t, p.z, p.x.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiflagJson {
    pub base: MinkowskiJson,
    pub vectors: Vec<MinkowskiJson>,
}

impl From<&Multiflag> for MultiflagJson {
    fn from(mf: &Multiflag) -> Self {
        MultiflagJson { base: mf.base().into(), vectors: mf.vectors().iter().map(Into::into).collect() }
    }
}

impl MultiflagJson {
    pub fn to_multiflag(&self) -> Result<Multiflag, CliError> {
        Ok(Multiflag::new((&self.base).into(), self.vectors.iter().map(Into::into).collect())?)
    }
}

/// A boundary point: paravector components, or the string `"inf"`.
#[derive(Clone, Debug, PartialEq)]
pub enum PointJson {
    Finite(Vec<f64>),
    Infinity,
}

impl Serialize for PointJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            PointJson::Finite(c) => c.serialize(s),
            PointJson::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for PointJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Finite(Vec<f64>),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Finite(c) => Ok(PointJson::Finite(c)),
            Raw::Tag(t) if t == "inf" => Ok(PointJson::Infinity),
            Raw::Tag(t) => Err(D::Error::custom(format!("expected paravector or \"inf\", got {t:?}"))),
        }
    }
}

impl From<&ParavectorPoint> for PointJson {
    fn from(p: &ParavectorPoint) -> Self {
        match p {
            ParavectorPoint::Finite(v) => PointJson::Finite(v.components()),
            ParavectorPoint::Infinity => PointJson::Infinity,
        }
    }
}

impl PointJson {
    pub fn to_point(&self) -> Result<ParavectorPoint, CliError> {
        Ok(match self {
            PointJson::Finite(c) => ParavectorPoint::Finite(paravector(c)?),
            PointJson::Infinity => ParavectorPoint::Infinity,
        })
    }
}

fn paravector(c: &[f64]) -> Result<Paravector, CliError> {
    if c.is_empty() || c.len() > MAX_DIM + 1 {
        return Err(CliError::input(format!("paravector with {} components", c.len())));
    }
    Ok(Paravector::from_components(c)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HorosphereJson {
    Plane { height: f64, decorations: Vec<Vec<f64>> },
    Sphere { center: Vec<f64>, diameter: f64, decorations: Vec<Vec<f64>> },
}

impl From<&DecoratedHorosphere> for HorosphereJson {
    fn from(h: &DecoratedHorosphere) -> Self {
        let decorations = h.decorations().iter().map(Paravector::components).collect();
        match h {
            DecoratedHorosphere::Plane { height, .. } => HorosphereJson::Plane { height: *height, decorations },
            DecoratedHorosphere::Sphere { center, diameter, .. } => {
                HorosphereJson::Sphere { center: center.components(), diameter: *diameter, decorations }
            }
        }
    }
}

impl HorosphereJson {
    pub fn to_horosphere(&self) -> Result<DecoratedHorosphere, CliError> {
        let decos = |d: &[Vec<f64>]| d.iter().map(|c| paravector(c)).collect::<Result<Vec<_>, _>>();
        Ok(match self {
            HorosphereJson::Plane { height, decorations } => {
                DecoratedHorosphere::Plane { height: *height, decorations: decos(decorations)? }
            }
            HorosphereJson::Sphere { center, diameter, decorations } => DecoratedHorosphere::Sphere {
                center: paravector(center)?,
                diameter: *diameter,
                decorations: decos(decorations)?,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicJson {
    pub from: PointJson,
    pub to: PointJson,
}

impl From<&Geodesic> for GeodesicJson {
    fn from(g: &Geodesic) -> Self {
        GeodesicJson { from: (&g.from).into(), to: (&g.to).into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaJson {
    pub n: usize,
    pub spinors: Vec<SpinorJson>,
    pub lambda: Vec<Vec<Coeffs>>,
}

impl From<&LambdaMatrix> for LambdaJson {
    fn from(m: &LambdaMatrix) -> Self {
        LambdaJson {
            n: m.spinors().first().map_or(0, |k| k.n()),
            spinors: m.spinors().iter().map(SpinorJson::from_spinor).collect(),
            lambda: m.rows().iter().map(|row| row.iter().map(coeffs_of).collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationJson {
    pub relation: String,
    pub residual: f64,
    pub conditioning: f64,
    pub pass: bool,
}

impl From<&RelationReport> for RelationJson {
    fn from(r: &RelationReport) -> Self {
        RelationJson { relation: r.relation.into(), residual: r.residual, conditioning: r.conditioning, pass: r.pass }
    }
}

/// Validation failure: the clause that failed and by how much.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}
