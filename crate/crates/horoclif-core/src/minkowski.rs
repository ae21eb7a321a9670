//! Generalized Minkowski space ℝ^{1,n+2}, the basepoint map φ₁, its
//! derivative, multiflags and decorated ideal points.
//!
//! A point (T, Z; X₀, …, Xₙ) corresponds to the paravector Hermitian matrix
//! ½[[T+Z, X], [X̄, T−Z]] with X = X₀ + X₁i₁ + … + Xₙiₙ.

use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::{Multivector, Paravector, Signature};
use crate::linalg;
use crate::lipschitz::{CliffordMatrix, Flavor, LipschitzSpinor, Pair};
use crate::{within, Error, TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct MinkowskiPoint {
    pub t: f64,
    pub z: f64,
    /// X₀, X₁, …, Xₙ.
    pub x: Vec<f64>,
}

impl MinkowskiPoint {
    pub fn new(t: f64, z: f64, x: Vec<f64>) -> Self {
        assert!(!x.is_empty(), "X needs at least the X₀ component");
        MinkowskiPoint { t, z, x }
    }

    pub fn zero(n: usize) -> Self {
        MinkowskiPoint::new(0.0, 0.0, vec![0.0; n + 1])
    }

    /// ∂T.
    pub fn e_t(n: usize) -> Self {
        MinkowskiPoint { t: 1.0, ..MinkowskiPoint::zero(n) }
    }

    /// ∂Z.
    pub fn e_z(n: usize) -> Self {
        MinkowskiPoint { z: 1.0, ..MinkowskiPoint::zero(n) }
    }

    /// ∂Xⱼ for j = 0, …, n.
    pub fn e_x(n: usize, j: usize) -> Self {
        let mut p = MinkowskiPoint::zero(n);
        p.x[j] = 1.0;
        p
    }

    /// n, where the point lives in ℝ^{1,n+2}.
    pub fn n(&self) -> usize {
        self.x.len() - 1
    }

    /// Coordinates in the order (T, Z, X₀, …, Xₙ).
    pub fn coords(&self) -> Vec<f64> {
        let mut c = Vec::with_capacity(self.x.len() + 2);
        c.push(self.t);
        c.push(self.z);
        c.extend_from_slice(&self.x);
        c
    }

    pub fn from_coords(c: &[f64]) -> Self {
        MinkowskiPoint::new(c[0], c[1], c[2..].to_vec())
    }

    /// T₁T₂ − Z₁Z₂ − X₁·X₂.
    pub fn dot(&self, other: &MinkowskiPoint) -> f64 {
        self.t * other.t - self.z * other.z - linalg::dot(&self.x, &other.x)
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn euclidean_norm(&self) -> f64 {
        linalg::norm(&self.coords())
    }

    pub fn add(&self, other: &MinkowskiPoint) -> MinkowskiPoint {
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect();
        MinkowskiPoint::new(self.t + other.t, self.z + other.z, x)
    }

    pub fn sub(&self, other: &MinkowskiPoint) -> MinkowskiPoint {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> MinkowskiPoint {
        MinkowskiPoint::new(self.t * s, self.z * s, self.x.iter().map(|a| a * s).collect())
    }

    pub fn distance(&self, other: &MinkowskiPoint) -> f64 {
        self.sub(other).euclidean_norm()
    }

    /// X as a paravector of Cℓ₀,ₙ.
    pub fn x_paravector(&self) -> Paravector {
        Paravector::from_components(&self.x).expect("dimension checked at construction")
    }

    /// ½[[T+Z, X], [X̄, T−Z]].
    pub fn to_matrix(&self) -> CliffordMatrix {
        let x = self.x_paravector().into_multivector();
        let sig = x.sig();
        CliffordMatrix::new_unchecked(
            Multivector::scalar(sig, 0.5 * (self.t + self.z)),
            x.scale(0.5),
            x.conjugate().scale(0.5),
            Multivector::scalar(sig, 0.5 * (self.t - self.z)),
            Flavor::GlMonoid,
        )
    }

    /// Read (T, Z; X) off a paravector Hermitian matrix after validating its shape.
    pub fn from_matrix(m: &CliffordMatrix) -> Result<Self, Error> {
        for e in [m.a(), m.d()] {
            if !e.is_real(TOL) {
                return Err(Error::Domain { residual: e.real_residual() });
            }
        }
        if !m.b().is_paravector(TOL) {
            return Err(Error::NotParavector { residual: m.b().paravector_residual() });
        }
        let residual = m.c().distance(&m.b().conjugate());
        if !within(residual, m.b().magnitude(), TOL) {
            return Err(Error::Domain { residual });
        }
        Ok(MinkowskiPoint::from_matrix_unchecked(m))
    }

    /// T = M₁₁ + M₂₂, Z = M₁₁ − M₂₂, X = 2 M₁₂ (projected to a paravector).
    pub fn from_matrix_unchecked(m: &CliffordMatrix) -> Self {
        let (m11, m22) = (m.a().real_part(), m.d().real_part());
        let x = Paravector::project(m.b()).components().iter().map(|c| 2.0 * c).collect();
        MinkowskiPoint::new(m11 + m22, m11 - m22, x)
    }
}

fn hermitian_entries(p: &MinkowskiPoint) -> (f64, Multivector, f64) {
    let m = p.to_matrix();
    (m.a().real_part(), m.b().clone(), m.d().real_part())
}

/// (P|Q) = 2(P₁₁Q₂₂ + P₂₂Q₁₁) − 2 Re(P₁₂Q̄₁₂ + Q₁₂P̄₁₂), from matrix entries.
pub fn minkowski_inner(p: &MinkowskiPoint, q: &MinkowskiPoint) -> f64 {
    let (p11, p12, p22) = hermitian_entries(p);
    let (q11, q12, q22) = hermitian_entries(q);
    let cross = (&p12 * &q12.conjugate()).real_part() + (&q12 * &p12.conjugate()).real_part();
    2.0 * (p11 * q22 + p22 * q11) - 2.0 * cross
}

/// 2(P₁₁Q₁₁ + P₂₂Q₂₂) + 2 Re(P₁₂Q̄₁₂ + Q₁₂P̄₁₂), from matrix entries.
pub fn euclidean_inner(p: &MinkowskiPoint, q: &MinkowskiPoint) -> f64 {
    let (p11, p12, p22) = hermitian_entries(p);
    let (q11, q12, q22) = hermitian_entries(q);
    let cross = (&p12 * &q12.conjugate()).real_part() + (&q12 * &p12.conjugate()).real_part();
    2.0 * (p11 * q11 + p22 * q22) + 2.0 * cross
}

/// φ₁(κ) = κκ†.
pub fn basepoint(kappa: &LipschitzSpinor) -> MinkowskiPoint {
    let (xi, eta) = (kappa.xi(), kappa.eta());
    let m = CliffordMatrix::new_unchecked(
        xi * &xi.conjugate(),
        xi * &eta.conjugate(),
        eta * &xi.conjugate(),
        eta * &eta.conjugate(),
        Flavor::GlMonoid,
    );
    MinkowskiPoint::from_matrix_unchecked(&m)
}

/// (D_κφ₁)(v) = κv† + vκ†.
pub fn dphi1(kappa: &Pair, v: &Pair) -> MinkowskiPoint {
    let (xi, eta) = (&kappa.x, &kappa.y);
    let (a, b) = (&v.x, &v.y);
    let m = CliffordMatrix::new_unchecked(
        &(xi * &a.conjugate()) + &(a * &xi.conjugate()),
        &(xi * &b.conjugate()) + &(a * &eta.conjugate()),
        &(eta * &a.conjugate()) + &(b * &xi.conjugate()),
        &(eta * &b.conjugate()) + &(b * &eta.conjugate()),
        Flavor::GlMonoid,
    );
    MinkowskiPoint::from_matrix_unchecked(&m)
}

/// A.S = A S A†.
pub fn act_minkowski(a: &CliffordMatrix, p: &MinkowskiPoint) -> MinkowskiPoint {
    MinkowskiPoint::from_matrix_unchecked(&a.mul(&p.to_matrix()).mul(&a.dagger()))
}

/// A point on the positive light-cone with n flag vectors in its tangent space.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiflag {
    base: MinkowskiPoint,
    vectors: Vec<MinkowskiPoint>,
}

impl Multiflag {
    pub fn new(base: MinkowskiPoint, vectors: Vec<MinkowskiPoint>) -> Result<Self, Error> {
        let n = base.n();
        if vectors.len() != n {
            return Err(Error::Length { expected: n, got: vectors.len() });
        }
        if vectors.iter().any(|v| v.n() != n) {
            return Err(Error::Length { expected: n + 1, got: 0 });
        }
        let scale = base.t * base.t;
        let residual = base.norm_sq().abs();
        if base.t <= 0.0 || !within(residual, scale, TOL) {
            return Err(Error::DegenerateFlag { residual });
        }
        for (i, v) in vectors.iter().enumerate() {
            for w in &vectors[..i] {
                let residual = v.dot(w).abs();
                if !within(residual, v.euclidean_norm() * w.euclidean_norm(), TOL) {
                    return Err(Error::DegenerateFlag { residual });
                }
            }
        }
        let mut cols = vec![base.coords()];
        cols.extend(vectors.iter().map(|v| v.coords()));
        if linalg::rank(&cols, 1e-9) != n + 1 {
            return Err(Error::DegenerateFlag { residual: 0.0 });
        }
        Ok(Multiflag { base, vectors })
    }

    pub fn new_unchecked(base: MinkowskiPoint, vectors: Vec<MinkowskiPoint>) -> Self {
        Multiflag { base, vectors }
    }

    pub fn base(&self) -> &MinkowskiPoint {
        &self.base
    }

    pub fn vectors(&self) -> &[MinkowskiPoint] {
        &self.vectors
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }
}

/// Φ₁(κ) = [[φ₁(κ); Dφ₁(κ̌i₁), …, Dφ₁(κ̌iₙ)]].
pub fn multiflag(kappa: &LipschitzSpinor) -> Multiflag {
    let sig = kappa.sig();
    let check = kappa.complement();
    let vectors = (1..=sig.n()).map(|j| dphi1(kappa, &check.mul_right(&Multivector::generator(sig, j)))).collect();
    Multiflag::new_unchecked(basepoint(kappa), vectors)
}

pub fn act_multiflag(a: &CliffordMatrix, mf: &Multiflag) -> Multiflag {
    Multiflag::new_unchecked(act_minkowski(a, &mf.base), mf.vectors.iter().map(|v| act_minkowski(a, v)).collect())
}

/// Whether two multiflags on the same base point span the same oriented
/// half-planes: bⱼ lies in span{p, aⱼ} with a positive coefficient on aⱼ,
/// tested in whichever direction is better conditioned.
pub fn flags_equal(a: &Multiflag, b: &Multiflag) -> Result<bool, Error> {
    let scale = a.base.euclidean_norm();
    if a.n() != b.n() || !within(a.base.distance(&b.base), scale, TOL) {
        return Err(Error::BaseMismatch);
    }
    let p = a.base.coords();
    for (va, vb) in a.vectors.iter().zip(&b.vectors) {
        let (va, vb) = (va.coords(), vb.coords());
        let agrees = |u: &[f64], w: &[f64]| {
            let (beta, residual) = linalg::project2(u, &p, w);
            residual < 1e-8 * linalg::norm(u) && beta > 0.0
        };
        if !agrees(&va, &vb) && !agrees(&vb, &va) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A light-cone ray with a conformal frame of its quotient tangent space.
///
/// `frame[0]` represents ψ(1) and `frame[j]` represents ψ(iⱼ); every frame
/// vector has Minkowski norm `k` and zero T-component.
#[derive(Clone, Debug, PartialEq)]
pub struct DecoratedIdealPoint {
    pub ray: MinkowskiPoint,
    pub frame: Vec<MinkowskiPoint>,
    pub k: f64,
}

/// Lift v ∈ p^⊥ to the representative of v + ℝp with zero T-component.
fn lift(v: &MinkowskiPoint, p: &MinkowskiPoint) -> MinkowskiPoint {
    let mut w = v.sub(&p.scale(v.t / p.t));
    w.t = 0.0;
    w
}

fn spatial(v: &MinkowskiPoint) -> Vec<f64> {
    v.coords()[1..].to_vec()
}

pub fn to_decorated_ideal(mf: &Multiflag) -> Result<DecoratedIdealPoint, Error> {
    let p = &mf.base;
    let t0 = p.t;
    if t0 <= 0.0 {
        return Err(Error::DegenerateFlag { residual: t0 });
    }
    let mut frame = Vec::with_capacity(mf.n() + 1);
    for v in &mf.vectors {
        let residual = v.dot(p).abs();
        if !within(residual, v.euclidean_norm() * t0, TOL) {
            return Err(Error::DegenerateFlag { residual });
        }
        let l = lift(v, p);
        let nsq = l.norm_sq();
        if nsq.is_nan() || nsq >= 0.0 {
            return Err(Error::DegenerateFlag { residual: nsq });
        }
        frame.push(l.scale(2.0 * t0 / libm::sqrt(-nsq)));
    }
    let w = spatial(p);
    let mut span = vec![w.clone()];
    span.extend(frame.iter().map(spatial));
    let dim = mf.n() + 2;
    let c = linalg::complement_direction(&span, dim).ok_or(Error::DegenerateFlag { residual: 0.0 })?;
    let mut cols = vec![w, c.clone()];
    cols.extend(frame.iter().map(spatial));
    let sign = if linalg::det(&cols) > 0.0 { -1.0 } else { 1.0 };
    let mut v0 = vec![0.0];
    v0.extend(c.iter().map(|x| sign * 2.0 * t0 * x));
    frame.insert(0, MinkowskiPoint::from_coords(&v0));
    Ok(DecoratedIdealPoint { ray: p.scale(1.0 / t0), frame, k: -4.0 * t0 * t0 })
}

pub fn from_decorated_ideal(dip: &DecoratedIdealPoint) -> Result<Multiflag, Error> {
    let k = dip.k;
    if k.is_nan() || k >= 0.0 {
        return Err(Error::DegenerateFlag { residual: k });
    }
    let ray = &dip.ray;
    let residual = (ray.t - 1.0).abs().max(ray.norm_sq().abs());
    if !within(residual, 1.0, TOL) {
        return Err(Error::DegenerateFlag { residual });
    }
    if dip.frame.len() != ray.n() + 1 {
        return Err(Error::Length { expected: ray.n() + 1, got: dip.frame.len() });
    }
    for (i, f) in dip.frame.iter().enumerate() {
        let residual = (f.norm_sq() - k).abs().max(f.dot(ray).abs());
        if !within(residual, k.abs(), TOL) {
            return Err(Error::DegenerateFlag { residual });
        }
        for g in &dip.frame[..i] {
            let residual = f.dot(g).abs();
            if !within(residual, k.abs(), TOL) {
                return Err(Error::DegenerateFlag { residual });
            }
        }
    }
    let t0 = libm::sqrt(-k / 4.0);
    Multiflag::new(ray.scale(t0), dip.frame[1..].to_vec())
}

/// Cℓ₀,ₙ signature for a point in ℝ^{1,n+2}.
pub fn signature_of(p: &MinkowskiPoint) -> Signature {
    Signature::negative(p.n()).expect("dimension checked at construction")
}
