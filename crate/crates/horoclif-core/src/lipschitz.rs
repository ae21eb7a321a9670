//! Lipschitz elements, two-component spinors and 2×2 Clifford matrices.

use core::ops::Deref;

use crate::clifford::{Multivector, Paravector, Signature};
use crate::{within, Error, INF_THRESHOLD, TOL};

/// Check that `x` lies in the Lipschitz group: x x̄ is a nonzero real and
/// x V x* is a paravector for V in {1, i₁, …, iₙ}. On failure returns the
/// failing clause and its residual.
pub fn lipschitz_check(x: &Multivector) -> Result<(), (&'static str, f64)> {
    let xx = x * &x.conjugate();
    let residual = xx.real_residual();
    if !within(residual, xx.magnitude(), TOL) {
        return Err(("x*conj(x) not real", residual));
    }
    if xx.real_part().abs() <= INF_THRESHOLD {
        return Err(("x*conj(x) is zero", xx.real_part().abs()));
    }
    let sig = x.sig();
    let rev = x.reverse();
    for j in 0..=sig.n() {
        let v = if j == 0 { Multivector::one(sig) } else { Multivector::generator(sig, j) };
        let image = &(x * &v) * &rev;
        let residual = image.paravector_residual();
        if !within(residual, image.magnitude(), TOL) {
            return Err(("x*V*rev(x) not paravector", residual));
        }
    }
    Ok(())
}

pub fn is_lipschitz(x: &Multivector) -> bool {
    lipschitz_check(x).is_ok()
}

/// Lipschitz element or zero.
fn monoid_check(x: &Multivector) -> Result<(), (&'static str, f64)> {
    if x.is_zero(INF_THRESHOLD) {
        Ok(())
    } else {
        lipschitz_check(x)
    }
}

/// A pair of multivectors, read as a column (x, y).
#[derive(Clone, Debug, PartialEq)]
pub struct Pair {
    pub x: Multivector,
    pub y: Multivector,
}

impl Pair {
    pub fn new(x: Multivector, y: Multivector) -> Self {
        assert_eq!(x.sig(), y.sig(), "signature mismatch in pair");
        Pair { x, y }
    }

    pub fn zero(sig: Signature) -> Self {
        Pair::new(Multivector::zero(sig), Multivector::zero(sig))
    }

    pub fn sig(&self) -> Signature {
        self.x.sig()
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    /// {D₁, D₂} = x₁* y₂ − y₁* x₂.
    pub fn bracket(&self, other: &Pair) -> Multivector {
        &(&self.x.reverse() * &other.y) - &(&self.y.reverse() * &other.x)
    }

    /// ⟨D₁, D₂⟩ = x̄₁ x₂ + ȳ₁ y₂.
    pub fn hermitian(&self, other: &Pair) -> Multivector {
        &(&self.x.conjugate() * &other.x) + &(&self.y.conjugate() * &other.y)
    }

    /// (D₁ | D₂) = Re⟨D₁, D₂⟩.
    pub fn inner(&self, other: &Pair) -> f64 {
        other.x.dot(&self.x).expect("signature mismatch") + other.y.dot(&self.y).expect("signature mismatch")
    }

    /// |D|² = (D | D).
    pub fn norm_sq(&self) -> f64 {
        self.inner(self)
    }

    /// Ď = (y′, −x′).
    pub fn complement(&self) -> Pair {
        Pair::new(self.y.grade_involution(), -self.x.grade_involution())
    }

    /// (x a, y a).
    pub fn mul_right(&self, a: &Multivector) -> Pair {
        Pair::new(&self.x * a, &self.y * a)
    }

    /// (a x, a y).
    pub fn mul_left(&self, a: &Multivector) -> Pair {
        Pair::new(a * &self.x, a * &self.y)
    }

    pub fn scale(&self, s: f64) -> Pair {
        Pair::new(self.x.scale(s), self.y.scale(s))
    }

    pub fn add(&self, other: &Pair) -> Pair {
        Pair::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &Pair) -> Pair {
        Pair::new(&self.x - &other.x, &self.y - &other.y)
    }

    /// Coefficient distance to `other`.
    pub fn distance(&self, other: &Pair) -> f64 {
        let dx = self.x.distance(&other.x);
        let dy = self.y.distance(&other.y);
        libm::sqrt(dx * dx + dy * dy)
    }

    pub fn magnitude(&self) -> f64 {
        libm::hypot(self.x.magnitude(), self.y.magnitude())
    }

    /// Whether (a, b) = self is tangent to the spinor space at κ = (ξ, η),
    /// that is a η̄ + ξ b̄ is a paravector.
    pub fn is_tangent_at(&self, kappa: &Pair, tol: f64) -> bool {
        let t = &(&self.x * &kappa.y.conjugate()) + &(&kappa.x * &self.y.conjugate());
        t.is_paravector(tol)
    }

    /// Coefficients (x, y) with self = κx + κ̌y.
    pub fn decompose(&self, kappa: &Pair) -> (Multivector, Multivector) {
        let k2 = kappa.norm_sq();
        let x = &(&kappa.x.conjugate() * &self.x) + &(&kappa.y.conjugate() * &self.y);
        let y = &(&kappa.y.reverse() * &self.x) - &(&kappa.x.reverse() * &self.y);
        (x.scale(1.0 / k2), y.scale(1.0 / k2))
    }
}

/// Tangent vector at κ built from a paravector V and a bi-paravector H.
///
/// Uses (η′V + ξH, ηH) when η ≠ 0 and (ξH, ξ′V + ηH) otherwise.
pub fn tangent_vector(kappa: &LipschitzSpinor, v: &Paravector, h: &Multivector) -> Pair {
    let (xi, eta) = (kappa.xi(), kappa.eta());
    let v = v.as_multivector();
    if !eta.is_zero(INF_THRESHOLD) {
        Pair::new(&(&eta.grade_involution() * v) + &(xi * h), eta * h)
    } else {
        Pair::new(xi * h, &(&xi.grade_involution() * v) + &(eta * h))
    }
}

/// A point of the paravector sphere: a paravector or ∞.
#[derive(Clone, Debug, PartialEq)]
pub enum ParavectorPoint {
    Finite(Paravector),
    Infinity,
}

impl ParavectorPoint {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ParavectorPoint::Infinity)
    }

    pub fn finite(&self) -> Option<&Paravector> {
        match self {
            ParavectorPoint::Finite(v) => Some(v),
            ParavectorPoint::Infinity => None,
        }
    }

    /// Coefficient distance; 0 between two infinities and ∞ between ∞ and a finite point.
    pub fn distance(&self, other: &ParavectorPoint) -> f64 {
        match (self, other) {
            (ParavectorPoint::Finite(a), ParavectorPoint::Finite(b)) => a.as_multivector().distance(b.as_multivector()),
            (ParavectorPoint::Infinity, ParavectorPoint::Infinity) => 0.0,
            _ => f64::INFINITY,
        }
    }
}

/// x y⁻¹ as a point of the paravector sphere, ∞ when y vanishes.
fn fraction(x: &Multivector, y: &Multivector) -> ParavectorPoint {
    if y.is_zero(INF_THRESHOLD) {
        ParavectorPoint::Infinity
    } else {
        ParavectorPoint::Finite(Paravector::project(&(x * &y.inverse_unchecked())))
    }
}

/// Pair (ξ, η) of Lipschitz elements or zeros, not both zero, with ξη̄ a paravector.
#[derive(Clone, Debug, PartialEq)]
pub struct LipschitzSpinor(Pair);

impl LipschitzSpinor {
    pub fn new(xi: Multivector, eta: Multivector) -> Result<Self, Error> {
        if xi.sig() != eta.sig() {
            return Err(Error::SignatureMismatch(xi.sig(), eta.sig()));
        }
        spinor_check(&xi, &eta, false).map_err(|(clause, residual)| Error::InvalidSpinor { clause, residual })?;
        Ok(LipschitzSpinor(Pair::new(xi, eta)))
    }

    pub fn from_pair(pair: Pair) -> Result<Self, Error> {
        LipschitzSpinor::new(pair.x, pair.y)
    }

    /// Wrap a pair known to be a spinor, e.g. the image of one under SL(2).
    pub fn new_unchecked(xi: Multivector, eta: Multivector) -> Self {
        LipschitzSpinor(Pair::new(xi, eta))
    }

    pub fn xi(&self) -> &Multivector {
        &self.0.x
    }

    pub fn eta(&self) -> &Multivector {
        &self.0.y
    }

    pub fn as_pair(&self) -> &Pair {
        &self.0
    }

    pub fn into_pair(self) -> Pair {
        self.0
    }

    /// ξη⁻¹, or ∞ when η = 0.
    pub fn ratio(&self) -> ParavectorPoint {
        fraction(self.xi(), self.eta())
    }

    /// κ̌ = (η′, −ξ′), again a spinor.
    pub fn complement(&self) -> LipschitzSpinor {
        LipschitzSpinor(self.0.complement())
    }

    pub fn neg(&self) -> LipschitzSpinor {
        LipschitzSpinor(self.0.scale(-1.0))
    }

    /// κ s for a Lipschitz element s.
    pub fn mul_lipschitz(&self, s: &Multivector) -> LipschitzSpinor {
        LipschitzSpinor(self.0.mul_right(s))
    }
}

impl Deref for LipschitzSpinor {
    type Target = Pair;

    fn deref(&self) -> &Pair {
        &self.0
    }
}

fn spinor_check(xi: &Multivector, eta: &Multivector, allow_zero: bool) -> Result<(), (&'static str, f64)> {
    let xi_zero = xi.is_zero(INF_THRESHOLD);
    let eta_zero = eta.is_zero(INF_THRESHOLD);
    if xi_zero && eta_zero {
        return if allow_zero { Ok(()) } else { Err(("both components zero", 0.0)) };
    }
    if !xi_zero {
        lipschitz_check(xi).map_err(|(_, r)| ("xi not Lipschitz", r))?;
    }
    if !eta_zero {
        lipschitz_check(eta).map_err(|(_, r)| ("eta not Lipschitz", r))?;
    }
    let t = xi * &eta.conjugate();
    let residual = t.paravector_residual();
    if !within(residual, t.magnitude(), TOL) {
        return Err(("xi*conj(eta) not paravector", residual));
    }
    Ok(())
}

/// Which group a [`CliffordMatrix`] is validated against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    /// pdet = 1.
    Sl,
    /// pdet real and nonzero.
    Gl,
    /// pdet any real; rows and columns may vanish.
    GlMonoid,
}

impl Flavor {
    fn meet(self, other: Flavor) -> Flavor {
        match (self, other) {
            (Flavor::Sl, Flavor::Sl) => Flavor::Sl,
            (Flavor::GlMonoid, _) | (_, Flavor::GlMonoid) => Flavor::GlMonoid,
            _ => Flavor::Gl,
        }
    }
}

/// 2×2 matrix [[a, b], [c, d]] over the Lipschitz monoid.
#[derive(Clone, Debug, PartialEq)]
pub struct CliffordMatrix {
    a: Multivector,
    b: Multivector,
    c: Multivector,
    d: Multivector,
    flavor: Flavor,
}

impl CliffordMatrix {
    pub fn new(a: Multivector, b: Multivector, c: Multivector, d: Multivector, flavor: Flavor) -> Result<Self, Error> {
        let sig = a.sig();
        for m in [&b, &c, &d] {
            if m.sig() != sig {
                return Err(Error::SignatureMismatch(sig, m.sig()));
            }
        }
        let m = CliffordMatrix { a, b, c, d, flavor };
        m.check().map_err(|(clause, residual)| Error::InvalidMatrix { clause, residual })?;
        Ok(m)
    }

    pub fn new_unchecked(a: Multivector, b: Multivector, c: Multivector, d: Multivector, flavor: Flavor) -> Self {
        CliffordMatrix { a, b, c, d, flavor }
    }

    pub fn identity(sig: Signature) -> Self {
        let one = Multivector::one(sig);
        let zero = Multivector::zero(sig);
        CliffordMatrix::new_unchecked(one.clone(), zero.clone(), zero, one, Flavor::Sl)
    }

    fn check(&self) -> Result<(), (&'static str, f64)> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        for (m, clause) in [
            (a, "entry a not Lipschitz"),
            (b, "entry b not Lipschitz"),
            (c, "entry c not Lipschitz"),
            (d, "entry d not Lipschitz"),
        ] {
            monoid_check(m).map_err(|(_, r)| (clause, r))?;
        }
        if self.flavor != Flavor::GlMonoid {
            for (x, y, clause) in [
                (a, b, "row (a,b) zero"),
                (c, d, "row (c,d) zero"),
                (a, c, "column (a,c) zero"),
                (b, d, "column (b,d) zero"),
            ] {
                if x.is_zero(INF_THRESHOLD) && y.is_zero(INF_THRESHOLD) {
                    return Err((clause, 0.0));
                }
            }
        }
        for (t, clause) in [
            (a * &b.reverse(), "a*rev(b) not paravector"),
            (c * &d.reverse(), "c*rev(d) not paravector"),
            (&c.reverse() * a, "rev(c)*a not paravector"),
            (&d.reverse() * b, "rev(d)*b not paravector"),
        ] {
            let residual = t.paravector_residual();
            if !within(residual, t.magnitude(), TOL) {
                return Err((clause, residual));
            }
        }
        let ad = &a.reverse() * d;
        let cb = &c.reverse() * b;
        let pdet = &ad - &cb;
        let scale = ad.magnitude() + cb.magnitude();
        let residual = pdet.real_residual();
        if !within(residual, scale, TOL) {
            return Err(("pdet not real", residual));
        }
        match self.flavor {
            Flavor::Sl => {
                let residual = (&pdet - 1.0).magnitude();
                if !within(residual, scale, TOL) {
                    return Err(("pdet not 1", residual));
                }
                let v1 = &(a * &d.reverse()) - &(b * &c.reverse());
                let residual = (&v1 - 1.0).magnitude();
                if !within(residual, scale, TOL) {
                    return Err(("a*rev(d)-b*rev(c) not 1", residual));
                }
                let v2 = &(d * &a.reverse()) - &(c * &b.reverse());
                let residual = (&v2 - 1.0).magnitude();
                if !within(residual, scale, TOL) {
                    return Err(("d*rev(a)-c*rev(b) not 1", residual));
                }
            }
            Flavor::Gl => {
                if pdet.real_part().abs() <= INF_THRESHOLD {
                    return Err(("pdet is zero", pdet.real_part().abs()));
                }
            }
            Flavor::GlMonoid => {}
        }
        Ok(())
    }

    pub fn a(&self) -> &Multivector {
        &self.a
    }

    pub fn b(&self) -> &Multivector {
        &self.b
    }

    pub fn c(&self) -> &Multivector {
        &self.c
    }

    pub fn d(&self) -> &Multivector {
        &self.d
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn sig(&self) -> Signature {
        self.a.sig()
    }

    /// a* d − c* b.
    pub fn pdet(&self) -> Multivector {
        &(&self.a.reverse() * &self.d) - &(&self.c.reverse() * &self.b)
    }

    pub fn mul(&self, other: &CliffordMatrix) -> CliffordMatrix {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&other.a, &other.b, &other.c, &other.d);
        CliffordMatrix::new_unchecked(
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
            self.flavor.meet(other.flavor),
        )
    }

    /// Conjugate transpose [[ā, c̄], [b̄, d̄]].
    pub fn dagger(&self) -> CliffordMatrix {
        CliffordMatrix::new_unchecked(
            self.a.conjugate(),
            self.c.conjugate(),
            self.b.conjugate(),
            self.d.conjugate(),
            Flavor::GlMonoid,
        )
    }

    /// Inverse of an SL matrix, [[d*, −b*], [−c*, a*]].
    pub fn inverse_sl(&self) -> CliffordMatrix {
        CliffordMatrix::new_unchecked(
            self.d.reverse(),
            -self.b.reverse(),
            -self.c.reverse(),
            self.a.reverse(),
            self.flavor,
        )
    }

    pub fn act_on_pair(&self, v: &Pair) -> Pair {
        Pair::new(&(&self.a * &v.x) + &(&self.b * &v.y), &(&self.c * &v.x) + &(&self.d * &v.y))
    }

    pub fn act_on_spinor(&self, kappa: &LipschitzSpinor) -> LipschitzSpinor {
        let p = self.act_on_pair(kappa.as_pair());
        LipschitzSpinor::new_unchecked(p.x, p.y)
    }

    /// Möbius action (aV + b)(cV + d)⁻¹, with A.∞ = a c⁻¹.
    pub fn mobius_apply(&self, v: &ParavectorPoint) -> ParavectorPoint {
        match v {
            ParavectorPoint::Infinity => fraction(&self.a, &self.c),
            ParavectorPoint::Finite(v) => {
                let v = v.as_multivector();
                fraction(&(&(&self.a * v) + &self.b), &(&(&self.c * v) + &self.d))
            }
        }
    }

    /// Largest coefficient distance between corresponding entries.
    pub fn distance(&self, other: &CliffordMatrix) -> f64 {
        self.a
            .distance(&other.a)
            .max(self.b.distance(&other.b))
            .max(self.c.distance(&other.c))
            .max(self.d.distance(&other.d))
    }

    /// A_κ = [[ξ, −η′/|κ|²], [η, ξ′/|κ|²]], an SL matrix with first column κ.
    pub fn a_kappa(kappa: &LipschitzSpinor) -> CliffordMatrix {
        let k2 = kappa.norm_sq();
        let (xi, eta) = (kappa.xi(), kappa.eta());
        CliffordMatrix::new_unchecked(
            xi.clone(),
            eta.grade_involution().scale(-1.0 / k2),
            eta.clone(),
            xi.grade_involution().scale(1.0 / k2),
            Flavor::Sl,
        )
    }

    /// An SL matrix sending κ₁ to κ₂.
    pub fn transitivity(k1: &LipschitzSpinor, k2: &LipschitzSpinor) -> CliffordMatrix {
        CliffordMatrix::a_kappa(k2).mul(&CliffordMatrix::a_kappa(k1).inverse_sl())
    }

    /// P^κ_V = [[1 − ξVη*, ξVξ*], [−ηVη*, 1 + ηVξ*]], a parabolic fixing κ.
    pub fn parabolic_translation(kappa: &LipschitzSpinor, v: &Paravector) -> CliffordMatrix {
        let (xi, eta) = (kappa.xi(), kappa.eta());
        let xv = xi * v.as_multivector();
        let ev = eta * v.as_multivector();
        let (xr, er) = (xi.reverse(), eta.reverse());
        CliffordMatrix::new_unchecked(-(&xv * &er) + 1.0, &xv * &xr, -(&ev * &er), &(&ev * &xr) + 1.0, Flavor::Sl)
    }
}

/// Generators of SL(2) used for sampling and for decoration bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    /// A₁(V) = [[1, V], [0, 1]].
    Translate(Paravector),
    /// A₂ = [[0, −1], [1, 0]].
    Invert,
    /// A₃(a) = [[a, 0], [0, (a*)⁻¹]] for a Lipschitz element a.
    Scale(Multivector),
}

impl Generator {
    pub fn matrix(&self, sig: Signature) -> CliffordMatrix {
        let one = Multivector::one(sig);
        let zero = Multivector::zero(sig);
        match self {
            Generator::Translate(v) => {
                CliffordMatrix::new_unchecked(one.clone(), v.as_multivector().clone(), zero, one, Flavor::Sl)
            }
            Generator::Invert => CliffordMatrix::new_unchecked(zero.clone(), -one.clone(), one, zero, Flavor::Sl),
            Generator::Scale(a) => CliffordMatrix::new_unchecked(
                a.clone(),
                zero.clone(),
                zero,
                a.reverse().inverse_unchecked(),
                Flavor::Sl,
            ),
        }
    }
}

/// Embed κ₁, κ₂ as zₘ = ξₘ + iₙ₊₁ηₘ and return the components (u, v) of
/// z̄₁z₂ = u + iₙ₊₁v.
pub fn cayley_embed(k1: &Pair, k2: &Pair) -> Result<(Multivector, Multivector), Error> {
    let sig = k1.sig();
    let big = sig.extended()?;
    let e = Multivector::generator(big, big.n());
    let z = |k: &Pair| -> Result<Multivector, Error> { Ok(&k.x.embed()? + &(&e * &k.y.embed()?)) };
    let w = &z(k1)?.conjugate() * &z(k2)?;
    let high_bit = 1 << sig.n();
    let low = Multivector::from_coeffs(
        big,
        w.coeffs().iter().enumerate().map(|(k, &c)| if k & high_bit == 0 { c } else { 0.0 }).collect(),
    )?;
    let high = &w - &low;
    let v = -(&e * &high);
    Ok((low.restrict(sig), v.restrict(sig)))
}

/// Product of z₁ = u₁ + iₙ₊₁v₁ and z₂ = u₂ + iₙ₊₁v₂ in component form:
/// (u₁u₂ − v₁′v₂, u₁′v₂ + v₁u₂).
pub fn cayley_dickson_product(z1: &Pair, z2: &Pair) -> Pair {
    let (u1, v1, u2, v2) = (&z1.x, &z1.y, &z2.x, &z2.y);
    Pair::new(&(u1 * u2) - &(&v1.grade_involution() * v2), &(&u1.grade_involution() * v2) + &(v1 * u2))
}

/// Components (ū, −v*) of the conjugate of u + iₙ₊₁v.
pub fn cayley_dickson_conjugate(z: &Pair) -> Pair {
    Pair::new(z.x.conjugate(), -z.y.reverse())
}
