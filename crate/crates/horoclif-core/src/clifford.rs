//! Dense multivectors over Cℓ_{p,q}.
//!
//! Coefficients are indexed by blade bitmask: bit `j-1` is set when the
//! generator `i_j` is present. Generators `i_1..i_p` square to +1 and
//! `i_{p+1}..i_n` to −1.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::{within, Error, INF_THRESHOLD, TOL};

/// Largest supported number of generators.
pub const MAX_DIM: usize = 12;

const TAYLOR_TERMS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    p: u8,
    q: u8,
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self, Error> {
        let n = p + q;
        if n > MAX_DIM {
            return Err(Error::DimensionCap { n, cap: MAX_DIM });
        }
        Ok(Signature { p: p as u8, q: q as u8 })
    }

    /// Cℓ₀,ₙ, where every generator squares to −1.
    pub fn negative(n: usize) -> Result<Self, Error> {
        Signature::new(0, n)
    }

    pub fn p(self) -> usize {
        self.p as usize
    }

    pub fn q(self) -> usize {
        self.q as usize
    }

    pub fn n(self) -> usize {
        self.p() + self.q()
    }

    /// Number of basis blades, 2ⁿ.
    pub fn blades(self) -> usize {
        1 << self.n()
    }

    /// Square of the generator with zero-based index `j`.
    pub fn square(self, j: usize) -> f64 {
        if j < self.p() {
            1.0
        } else {
            -1.0
        }
    }

    /// Same signature with one more negative generator appended.
    pub fn extended(self) -> Result<Self, Error> {
        Signature::new(self.p(), self.q() + 1)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl({},{})", self.p, self.q)
    }
}

/// Degree of the blade with bitmask `blade`.
#[inline]
pub fn degree(blade: usize) -> usize {
    blade.count_ones() as usize
}

/// Product of two basis blades: the resulting blade and its sign.
///
/// The sign counts the transpositions needed to sort the concatenated
/// generator list, times the squares of the shared generators.
#[inline]
pub fn blade_product(sig: Signature, a: usize, b: usize) -> (usize, f64) {
    let mut swaps = 0u32;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    let negatives = ((a & b) >> sig.p()).count_ones();
    let sign = if (swaps + negatives) & 1 == 0 { 1.0 } else { -1.0 };
    (a ^ b, sign)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    /// x ↦ x′, flipping the sign of odd blades.
    Grade,
    /// x ↦ x*, reversing the order of generators.
    Reverse,
    /// x ↦ x̄ = (x′)*.
    Conjugate,
}

impl Involution {
    /// Sign picked up by a blade of degree `d`.
    pub fn sign(self, d: usize) -> f64 {
        let flips = match self {
            Involution::Grade => d,
            Involution::Reverse => d * d.saturating_sub(1) / 2,
            Involution::Conjugate => d * (d + 1) / 2,
        };
        if flips % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    sig: Signature,
    coeffs: Vec<f64>,
}

impl Multivector {
    pub fn zero(sig: Signature) -> Self {
        Multivector { sig, coeffs: vec![0.0; sig.blades()] }
    }

    pub fn scalar(sig: Signature, s: f64) -> Self {
        let mut m = Multivector::zero(sig);
        m.coeffs[0] = s;
        m
    }

    pub fn one(sig: Signature) -> Self {
        Multivector::scalar(sig, 1.0)
    }

    /// Basis blade with the given bitmask.
    pub fn blade(sig: Signature, blade: usize) -> Self {
        let mut m = Multivector::zero(sig);
        m.coeffs[blade] = 1.0;
        m
    }

    /// The generator `i_j`, with `j` counted from 1.
    pub fn generator(sig: Signature, j: usize) -> Self {
        assert!(j >= 1 && j <= sig.n(), "generator index {j} out of range");
        Multivector::blade(sig, 1 << (j - 1))
    }

    pub fn from_coeffs(sig: Signature, coeffs: Vec<f64>) -> Result<Self, Error> {
        if coeffs.len() != sig.blades() {
            return Err(Error::Length { expected: sig.blades(), got: coeffs.len() });
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Multivector { sig, coeffs })
    }

    /// Build from `(blade, coefficient)` terms; repeated blades add up.
    pub fn from_terms(sig: Signature, terms: &[(usize, f64)]) -> Result<Self, Error> {
        let mut m = Multivector::zero(sig);
        for &(blade, c) in terms {
            if blade >= sig.blades() {
                return Err(Error::Index { index: blade });
            }
            if !c.is_finite() {
                return Err(Error::NonFinite);
            }
            m.coeffs[blade] += c;
        }
        Ok(m)
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn n(&self) -> usize {
        self.sig.n()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, blade: usize) -> f64 {
        self.coeffs[blade]
    }

    /// Terms with nonzero coefficient, in blade order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.coeffs.iter().copied().enumerate().filter(|&(_, c)| c != 0.0)
    }

    fn map_blades(&self, f: impl Fn(usize, f64) -> f64) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, &c)| f(k, c)).collect();
        Multivector { sig: self.sig, coeffs }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_blades(|_, c| c * s)
    }

    pub fn geometric_product(&self, other: &Multivector) -> Result<Multivector, Error> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(self.sig, other.sig));
        }
        let mut out = vec![0.0; self.sig.blades()];
        for (i, x) in self.terms() {
            for (j, y) in other.terms() {
                let (k, s) = blade_product(self.sig, i, j);
                out[k] += s * x * y;
            }
        }
        Ok(Multivector { sig: self.sig, coeffs: out })
    }

    pub fn involution(&self, kind: Involution) -> Self {
        self.map_blades(|k, c| c * kind.sign(degree(k)))
    }

    pub fn grade_involution(&self) -> Self {
        self.involution(Involution::Grade)
    }

    pub fn reverse(&self) -> Self {
        self.involution(Involution::Reverse)
    }

    pub fn conjugate(&self) -> Self {
        self.involution(Involution::Conjugate)
    }

    /// Coefficient of the scalar blade.
    pub fn real_part(&self) -> f64 {
        self.coeffs[0]
    }

    /// N(a) = Re(a ā).
    pub fn norm(&self) -> f64 {
        self.terms().map(|(k, c)| c * c * self.blade_norm_sign(k)).sum()
    }

    /// a·b = Re(a b̄).
    pub fn dot(&self, other: &Multivector) -> Result<f64, Error> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(self.sig, other.sig));
        }
        Ok(self.terms().map(|(k, c)| c * other.coeffs[k] * self.blade_norm_sign(k)).sum())
    }

    // Scalar part of i_I · conj(i_I).
    fn blade_norm_sign(&self, k: usize) -> f64 {
        let (_, s) = blade_product(self.sig, k, k);
        s * Involution::Conjugate.sign(degree(k))
    }

    /// Euclidean length of the coefficient vector.
    pub fn magnitude(&self) -> f64 {
        libm::sqrt(self.coeffs.iter().map(|c| c * c).sum())
    }

    pub fn distance(&self, other: &Multivector) -> f64 {
        libm::sqrt(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b) * (a - b)).sum())
    }

    pub fn is_zero(&self, threshold: f64) -> bool {
        self.magnitude() <= threshold
    }

    pub fn grade_project(&self, d: usize) -> Self {
        self.map_blades(|k, c| if degree(k) == d { c } else { 0.0 })
    }

    /// Size of the part outside degrees 0 and 1.
    pub fn paravector_residual(&self) -> f64 {
        let s: f64 = self.terms().filter(|&(k, _)| degree(k) > 1).map(|(_, c)| c * c).sum();
        libm::sqrt(s)
    }

    pub fn is_paravector(&self, tol: f64) -> bool {
        within(self.paravector_residual(), self.magnitude(), tol)
    }

    /// Size of the non-scalar part.
    pub fn real_residual(&self) -> f64 {
        libm::sqrt(self.coeffs[1..].iter().map(|c| c * c).sum())
    }

    pub fn is_real(&self, tol: f64) -> bool {
        within(self.real_residual(), self.magnitude(), tol)
    }

    /// The single degree carrying every nonzero coefficient, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut found = None;
        for (k, _) in self.terms() {
            match found {
                None => found = Some(degree(k)),
                Some(d) if d != degree(k) => return None,
                _ => {}
            }
        }
        found
    }

    /// a⁻¹ = ā (a ā)⁻¹, defined only when a ā is a nonzero real.
    pub fn inverse(&self) -> Result<Multivector, Error> {
        let c = self.conjugate();
        let aa = self * &c;
        let s = aa.real_part();
        let residual = aa.real_residual();
        if !within(residual, aa.magnitude(), TOL) || s.abs() <= INF_THRESHOLD {
            return Err(Error::NonInvertible { residual });
        }
        Ok(c.scale(1.0 / s))
    }

    /// ā / N(a) without checking that a ā is real. Agrees with
    /// [`Multivector::inverse`] on Lipschitz elements.
    pub fn inverse_unchecked(&self) -> Multivector {
        self.conjugate().scale(1.0 / self.norm())
    }

    /// Exponential. Uses the closed form when the non-scalar part is
    /// homogeneous and squares to a real number, otherwise the Taylor series.
    pub fn exp(&self) -> Multivector {
        let s = self.real_part();
        let mut y = self.clone();
        y.coeffs[0] = 0.0;
        if y.terms().next().is_none() {
            return Multivector::scalar(self.sig, libm::exp(s));
        }
        if y.homogeneous_degree().is_none() {
            return self.exp_taylor();
        }
        let yy = &y * &y;
        let c = yy.real_part();
        let m = y.magnitude();
        if yy.real_residual() > 1e-12 * m * m {
            return self.exp_taylor();
        }
        let theta = libm::sqrt(c.abs());
        let (even, odd) = if theta == 0.0 {
            (1.0, 1.0)
        } else if c < 0.0 {
            (libm::cos(theta), libm::sin(theta) / theta)
        } else {
            (libm::cosh(theta), libm::sinh(theta) / theta)
        };
        let mut out = y.scale(odd);
        out.coeffs[0] = even;
        out.scale(libm::exp(s))
    }

    /// Taylor series with scaling and squaring: the argument is halved until
    /// its magnitude is at most ½, then 20 terms are summed and squared back.
    pub fn exp_taylor(&self) -> Multivector {
        let mut squarings = 0;
        let mut factor = 1.0;
        let m = self.magnitude();
        while m * factor > 0.5 {
            factor *= 0.5;
            squarings += 1;
        }
        let x = self.scale(factor);
        let mut term = Multivector::one(self.sig);
        let mut sum = term.clone();
        for k in 1..=TAYLOR_TERMS {
            term = (&term * &x).scale(1.0 / k as f64);
            sum += &term;
        }
        for _ in 0..squarings {
            sum = &sum * &sum;
        }
        sum
    }

    /// Embed into the algebra with one more negative generator.
    pub fn embed(&self) -> Result<Multivector, Error> {
        let sig = self.sig.extended()?;
        let mut coeffs = vec![0.0; sig.blades()];
        coeffs[..self.coeffs.len()].copy_from_slice(&self.coeffs);
        Ok(Multivector { sig, coeffs })
    }

    /// Restrict to the subalgebra on the first `sig.n()` generators,
    /// dropping blades that involve later ones.
    pub fn restrict(&self, sig: Signature) -> Multivector {
        let coeffs = self.coeffs[..sig.blades()].to_vec();
        Multivector { sig, coeffs }
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if first {
                write!(f, "{c}")?;
            } else if c < 0.0 {
                write!(f, " - {}", -c)?;
            } else {
                write!(f, " + {c}")?;
            }
            for j in 0..self.n() {
                if k & (1 << j) != 0 {
                    write!(f, "i{}", j + 1)?;
                }
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Mul<&'a Multivector> for &'a Multivector {
    type Output = Multivector;

    fn mul(self, rhs: &'a Multivector) -> Multivector {
        self.geometric_product(rhs).expect("signature mismatch in product")
    }
}

impl Mul for Multivector {
    type Output = Multivector;

    fn mul(self, rhs: Multivector) -> Multivector {
        &self * &rhs
    }
}

impl Mul<f64> for &Multivector {
    type Output = Multivector;

    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl Mul<f64> for Multivector {
    type Output = Multivector;

    fn mul(self, rhs: f64) -> Multivector {
        self.scale(rhs)
    }
}

impl<'a> Add<&'a Multivector> for &'a Multivector {
    type Output = Multivector;

    fn add(self, rhs: &'a Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "signature mismatch in sum");
        self.map_blades(|k, c| c + rhs.coeffs[k])
    }
}

impl Add for Multivector {
    type Output = Multivector;

    fn add(self, rhs: Multivector) -> Multivector {
        &self + &rhs
    }
}

impl Add<f64> for &Multivector {
    type Output = Multivector;

    fn add(self, rhs: f64) -> Multivector {
        let mut m = self.clone();
        m.coeffs[0] += rhs;
        m
    }
}

impl Add<f64> for Multivector {
    type Output = Multivector;

    fn add(mut self, rhs: f64) -> Multivector {
        self.coeffs[0] += rhs;
        self
    }
}

impl AddAssign<&Multivector> for Multivector {
    fn add_assign(&mut self, rhs: &Multivector) {
        assert_eq!(self.sig, rhs.sig, "signature mismatch in sum");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<'a> Sub<&'a Multivector> for &'a Multivector {
    type Output = Multivector;

    fn sub(self, rhs: &'a Multivector) -> Multivector {
        assert_eq!(self.sig, rhs.sig, "signature mismatch in difference");
        self.map_blades(|k, c| c - rhs.coeffs[k])
    }
}

impl Sub for Multivector {
    type Output = Multivector;

    fn sub(self, rhs: Multivector) -> Multivector {
        &self - &rhs
    }
}

impl Sub<f64> for &Multivector {
    type Output = Multivector;

    fn sub(self, rhs: f64) -> Multivector {
        self + (-rhs)
    }
}

impl Neg for &Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

impl Neg for Multivector {
    type Output = Multivector;

    fn neg(self) -> Multivector {
        self.scale(-1.0)
    }
}

/// A multivector supported on degrees 0 and 1: V = V₀ + V₁i₁ + … + Vₙiₙ.
#[derive(Clone, Debug, PartialEq)]
pub struct Paravector(Multivector);

impl Paravector {
    /// Paravector in Cℓ₀,ₙ from `[V₀, V₁, …, Vₙ]`.
    pub fn from_components(components: &[f64]) -> Result<Self, Error> {
        if components.is_empty() {
            return Err(Error::Length { expected: 1, got: 0 });
        }
        Paravector::with_signature(Signature::negative(components.len() - 1)?, components)
    }

    pub fn with_signature(sig: Signature, components: &[f64]) -> Result<Self, Error> {
        if components.len() != sig.n() + 1 {
            return Err(Error::Length { expected: sig.n() + 1, got: components.len() });
        }
        let mut terms = alloc::vec::Vec::with_capacity(components.len());
        terms.push((0, components[0]));
        for (j, &c) in components[1..].iter().enumerate() {
            terms.push((1 << j, c));
        }
        Ok(Paravector(Multivector::from_terms(sig, &terms)?))
    }

    pub fn zero(sig: Signature) -> Self {
        Paravector(Multivector::zero(sig))
    }

    /// Project onto degrees ≤ 1 after checking the discarded part is within `tol`.
    pub fn try_from_multivector(m: &Multivector, tol: f64) -> Result<Self, Error> {
        let residual = m.paravector_residual();
        if !within(residual, m.magnitude(), tol) {
            return Err(Error::NotParavector { residual });
        }
        Ok(Paravector::project(m))
    }

    /// Keep only degrees 0 and 1.
    pub fn project(m: &Multivector) -> Self {
        Paravector(m.map_blades(|k, c| if degree(k) <= 1 { c } else { 0.0 }))
    }

    pub fn sig(&self) -> Signature {
        self.0.sig
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    /// `[V₀, V₁, …, Vₙ]`.
    pub fn components(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n() + 1);
        out.push(self.0.coeffs[0]);
        out.extend((0..self.n()).map(|j| self.0.coeffs[1 << j]));
        out
    }

    pub fn as_multivector(&self) -> &Multivector {
        &self.0
    }

    pub fn into_multivector(self) -> Multivector {
        self.0
    }

    /// |V|, the Euclidean length of the components.
    pub fn abs(&self) -> f64 {
        self.0.magnitude()
    }

    /// V / |V|.
    pub fn normalized(&self) -> Self {
        Paravector(self.0.scale(1.0 / self.abs()))
    }
}

impl From<Paravector> for Multivector {
    fn from(v: Paravector) -> Multivector {
        v.0
    }
}
