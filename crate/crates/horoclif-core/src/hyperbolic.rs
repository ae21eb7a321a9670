//! Hyperboloid, Poincaré ball and upper half-space models of ℍ^{n+2}, and
//! decorated horospheres.

use alloc::vec::Vec;

use crate::clifford::{Multivector, Paravector, Signature};
use crate::linalg;
use crate::lipschitz::{CliffordMatrix, Generator, LipschitzSpinor, ParavectorPoint};
use crate::minkowski::{basepoint, minkowski_inner, MinkowskiPoint, Multiflag};
use crate::{within, Error, INF_THRESHOLD, TOL};

/// Point of the Poincaré ball, coordinates (w, y₀, …, yₙ).
#[derive(Clone, Debug, PartialEq)]
pub struct BallPoint {
    pub coords: Vec<f64>,
}

impl BallPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        BallPoint { coords }
    }

    pub fn norm(&self) -> f64 {
        linalg::norm(&self.coords)
    }
}

/// Point of the upper half-space: height z > 0 over a paravector x, or the
/// point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum UpperHalfPoint {
    Finite { z: f64, x: Paravector },
    Infinity,
}

fn sig_for(n: usize) -> Signature {
    Signature::negative(n).expect("dimension checked at construction")
}

fn check_on_hyperboloid(p: &MinkowskiPoint) -> Result<(), Error> {
    let residual = (p.norm_sq() - 1.0).abs();
    if p.t <= 0.0 || !within(residual, p.t * p.t, TOL) {
        return Err(Error::Domain { residual });
    }
    Ok(())
}

fn check_on_cone(p: &MinkowskiPoint) -> Result<(), Error> {
    let residual = p.norm_sq().abs();
    if p.t <= 0.0 || !within(residual, p.t * p.t, TOL) {
        return Err(Error::Domain { residual });
    }
    Ok(())
}

/// Hyperboloid to ball: (Z; X)/(1 + T).
pub fn pi1(p: &MinkowskiPoint) -> Result<BallPoint, Error> {
    check_on_hyperboloid(p)?;
    Ok(BallPoint::new(p.coords()[1..].iter().map(|c| c / (1.0 + p.t)).collect()))
}

/// Light-cone to the boundary sphere of the ball: (Z; X)/T.
pub fn pi1_boundary(p: &MinkowskiPoint) -> Result<BallPoint, Error> {
    check_on_cone(p)?;
    Ok(BallPoint::new(p.coords()[1..].iter().map(|c| c / p.t).collect()))
}

/// Ball to upper half-space: (1 − |W|²; 2y)/(1 − 2w + |W|²). Boundary
/// points land on z = 0 and the pole w = 1 goes to ∞.
pub fn pi2(b: &BallPoint) -> Result<UpperHalfPoint, Error> {
    let r2 = linalg::dot(&b.coords, &b.coords);
    if !within((r2 - 1.0).abs(), 1.0, TOL) && (r2.is_nan() || r2 >= 1.0) {
        return Err(Error::Domain { residual: r2 - 1.0 });
    }
    let den = 1.0 - 2.0 * b.coords[0] + r2;
    if den <= INF_THRESHOLD {
        return Ok(UpperHalfPoint::Infinity);
    }
    let x: Vec<f64> = b.coords[1..].iter().map(|y| 2.0 * y / den).collect();
    let x = Paravector::with_signature(sig_for(x.len() - 1), &x)?;
    let z = if within((r2 - 1.0).abs(), 1.0, TOL) { 0.0 } else { (1.0 - r2) / den };
    Ok(UpperHalfPoint::Finite { z, x })
}

/// Boundary of the ball to the paravector sphere: y/(1 − w), with w = 1 sent to ∞.
pub fn pi2_boundary(b: &BallPoint) -> Result<ParavectorPoint, Error> {
    let residual = (b.norm() - 1.0).abs();
    if !within(residual, 1.0, TOL) {
        return Err(Error::Domain { residual });
    }
    let den = 1.0 - b.coords[0];
    if den.abs() <= INF_THRESHOLD {
        return Ok(ParavectorPoint::Infinity);
    }
    let y: Vec<f64> = b.coords[1..].iter().map(|y| y / den).collect();
    Ok(ParavectorPoint::Finite(Paravector::with_signature(sig_for(y.len() - 1), &y)?))
}

/// Light-cone straight to the paravector sphere: X/(T − Z).
pub fn pi_boundary(p: &MinkowskiPoint) -> Result<ParavectorPoint, Error> {
    check_on_cone(p)?;
    let den = p.t - p.z;
    if den.abs() <= INF_THRESHOLD * p.t.max(1.0) {
        return Ok(ParavectorPoint::Infinity);
    }
    let x: Vec<f64> = p.x.iter().map(|c| c / den).collect();
    Ok(ParavectorPoint::Finite(Paravector::with_signature(sig_for(x.len() - 1), &x)?))
}

/// Center of the horosphere of κ, computed as π₂∂(π₁∂(φ₁(κ))). Agrees with
/// the ratio ξη⁻¹.
pub fn boundary_center(kappa: &LipschitzSpinor) -> ParavectorPoint {
    let p = basepoint(kappa);
    let w: Vec<f64> = p.coords()[1..].iter().map(|c| c / p.t).collect();
    pi2_boundary(&BallPoint::new(w)).expect("light-cone points map to the unit sphere")
}

/// Horosphere in the upper half-space with unit decoration directions.
#[derive(Clone, Debug, PartialEq)]
pub enum DecoratedHorosphere {
    /// Centered at ∞: the plane at the given height.
    Plane { height: f64, decorations: Vec<Paravector> },
    /// Euclidean sphere tangent to the boundary at `center`; decorations are
    /// read at the top of the sphere.
    Sphere { center: Paravector, diameter: f64, decorations: Vec<Paravector> },
}

impl DecoratedHorosphere {
    pub fn center(&self) -> ParavectorPoint {
        match self {
            DecoratedHorosphere::Plane { .. } => ParavectorPoint::Infinity,
            DecoratedHorosphere::Sphere { center, .. } => ParavectorPoint::Finite(center.clone()),
        }
    }

    /// Height of a plane or diameter of a sphere.
    pub fn size(&self) -> f64 {
        match self {
            DecoratedHorosphere::Plane { height, .. } => *height,
            DecoratedHorosphere::Sphere { diameter, .. } => *diameter,
        }
    }

    pub fn decorations(&self) -> &[Paravector] {
        match self {
            DecoratedHorosphere::Plane { decorations, .. } | DecoratedHorosphere::Sphere { decorations, .. } => {
                decorations
            }
        }
    }

    /// Largest discrepancy between two horospheres of the same kind; ∞ if
    /// the kinds differ.
    pub fn distance(&self, other: &DecoratedHorosphere) -> f64 {
        let same_kind = matches!(
            (self, other),
            (DecoratedHorosphere::Plane { .. }, DecoratedHorosphere::Plane { .. })
                | (DecoratedHorosphere::Sphere { .. }, DecoratedHorosphere::Sphere { .. })
        );
        if !same_kind || self.decorations().len() != other.decorations().len() {
            return f64::INFINITY;
        }
        let mut d = self.center().distance(&other.center()).max((self.size() - other.size()).abs());
        for (a, b) in self.decorations().iter().zip(other.decorations()) {
            d = d.max(a.as_multivector().distance(b.as_multivector()));
        }
        d
    }
}

/// The decorated horosphere of κ in closed form: a sphere at ξη⁻¹ of
/// diameter |η|⁻² decorated by η′iⱼη̄, or a plane at height |ξ|² decorated by
/// ξiⱼξ* when η = 0.
pub fn horosphere(kappa: &LipschitzSpinor) -> DecoratedHorosphere {
    let (xi, eta) = (kappa.xi(), kappa.eta());
    let sig = kappa.sig();
    let gens = (1..=sig.n()).map(|j| Multivector::generator(sig, j));
    if eta.is_zero(INF_THRESHOLD) {
        let xr = xi.reverse();
        let decorations = gens.map(|g| Paravector::project(&(&(xi * &g) * &xr)).normalized()).collect();
        DecoratedHorosphere::Plane { height: xi.norm(), decorations }
    } else {
        let (ei, ec) = (eta.grade_involution(), eta.conjugate());
        let decorations = gens.map(|g| Paravector::project(&(&(&ei * &g) * &ec)).normalized()).collect();
        let center = Paravector::project(&(xi * &eta.inverse_unchecked()));
        DecoratedHorosphere::Sphere { center, diameter: 1.0 / eta.norm(), decorations }
    }
}

/// Upper half-space image of a hyperboloid point, (z; x) = (1; X)/(T − Z).
/// This is π₂ ∘ π₁ after simplifying with (x | x) = 1.
pub fn hyperboloid_to_upper(q: &MinkowskiPoint) -> Result<UpperHalfPoint, Error> {
    check_on_hyperboloid(q)?;
    let tz = q.t - q.z;
    let x: Vec<f64> = q.x.iter().map(|c| c / tz).collect();
    Ok(UpperHalfPoint::Finite { z: 1.0 / tz, x: Paravector::with_signature(sig_for(q.n()), &x)? })
}

/// The decorated horosphere of a multiflag, computed by pushing the flag
/// through the hyperboloid, ball and upper half-space models.
///
/// The flag vectors are moved to the hyperboloid point x = p/2 + r/(p|r) on
/// the horosphere, with r = (1, 1; 0) or (1, −1; 0), and their images are
/// read off from (z; y) = (1; X)/(T − Z). T − Z of x is assembled from its
/// two summands to avoid cancellation.
pub fn horosphere_from_lightcone(mf: &Multiflag) -> Result<DecoratedHorosphere, Error> {
    let p = mf.base();
    let n = p.n();
    let sig = sig_for(n);
    let center = pi_boundary(p)?;
    let reference = match center {
        ParavectorPoint::Infinity => MinkowskiPoint::new(1.0, -1.0, alloc::vec![0.0; n + 1]),
        ParavectorPoint::Finite(_) => MinkowskiPoint::new(1.0, 1.0, alloc::vec![0.0; n + 1]),
    };
    let pr = p.dot(&reference);
    let x = p.scale(0.5).add(&reference.scale(1.0 / pr));
    check_on_hyperboloid(&x)?;
    let tz = 0.5 * (p.t - p.z) + (reference.t - reference.z) / pr;
    let mut decorations = Vec::with_capacity(n);
    for v in mf.vectors() {
        let w = v.sub(&p.scale(v.dot(&x)));
        let dtz = w.t - w.z;
        let dy: Vec<f64> = w.x.iter().zip(&x.x).map(|(dw, c)| dw * tz - c * dtz).collect();
        decorations.push(Paravector::with_signature(sig, &dy)?.normalized());
    }
    Ok(match center {
        ParavectorPoint::Infinity => DecoratedHorosphere::Plane { height: 1.0 / tz, decorations },
        ParavectorPoint::Finite(center) => DecoratedHorosphere::Sphere { center, diameter: 1.0 / tz, decorations },
    })
}

/// The point P^κ_V A_κ (1, 0; 0) of the hyperboloid; it lies on the
/// horosphere {q : (q | φ₁(κ)) = 1}.
pub fn horosphere_point(kappa: &LipschitzSpinor, v: &Paravector) -> MinkowskiPoint {
    let q0 = MinkowskiPoint::e_t(kappa.n());
    let a = CliffordMatrix::parabolic_translation(kappa, v).mul(&CliffordMatrix::a_kappa(kappa));
    crate::minkowski::act_minkowski(&a, &q0)
}

/// How a generator moves a decoration direction D: translations fix it,
/// inversion sends it to −D̄ and A₃(a) sends it to aDa*, renormalized.
pub fn transform_decoration(g: &Generator, d: &Paravector) -> Paravector {
    let m = d.as_multivector();
    match g {
        Generator::Translate(_) => d.normalized(),
        Generator::Invert => Paravector::project(&-m.conjugate()).normalized(),
        Generator::Scale(a) => Paravector::project(&(&(a * m) * &a.reverse())).normalized(),
    }
}

/// Signed distance between the horospheres of κ₁ and κ₂, log((p|q)/2).
pub fn horosphere_distance(k1: &LipschitzSpinor, k2: &LipschitzSpinor) -> Result<f64, Error> {
    let (p, q) = (basepoint(k1), basepoint(k2));
    let pq = minkowski_inner(&p, &q);
    if pq / (p.t * q.t) < INF_THRESHOLD {
        return Err(Error::SharedCenter);
    }
    Ok(libm::log(pq / 2.0))
}

pub fn mobius_boundary(a: &CliffordMatrix, v: &ParavectorPoint) -> ParavectorPoint {
    a.mobius_apply(v)
}

/// Geodesic between two points of the paravector sphere.
#[derive(Clone, Debug, PartialEq)]
pub struct Geodesic {
    pub from: ParavectorPoint,
    pub to: ParavectorPoint,
}

impl Geodesic {
    /// Geodesic joining the centers of the horospheres of κ₁ and κ₂.
    pub fn between(k1: &LipschitzSpinor, k2: &LipschitzSpinor) -> Result<Self, Error> {
        let (from, to) = (k1.ratio(), k2.ratio());
        let scale = 1.0_f64;
        if from.distance(&to) <= INF_THRESHOLD * scale {
            return Err(Error::SharedCenter);
        }
        Ok(Geodesic { from, to })
    }
}
