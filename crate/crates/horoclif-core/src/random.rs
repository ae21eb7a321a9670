//! Samplers for paravectors, Lipschitz elements, spinors and SL(2) matrices.
//!
//! Every sampler builds its output so that it is valid by construction.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::clifford::{degree, Multivector, Paravector, Signature};
use crate::lipschitz::{CliffordMatrix, Generator, LipschitzSpinor};
use crate::{Error, DEGENERACY};

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Paravector of Cℓ₀,ₙ with standard-normal components.
pub fn random_paravector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Paravector, Error> {
    let c: Vec<f64> = (0..=n).map(|_| normal(rng)).collect();
    Paravector::with_signature(Signature::negative(n)?, &c)
}

/// Uniformly distributed unit paravector.
pub fn random_unit_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Paravector, Error> {
    loop {
        let v = random_paravector(n, rng)?;
        if v.abs() > DEGENERACY {
            return Ok(v.normalized());
        }
    }
}

/// Product of between 1 and n+1 random paravectors, resampled until |x| ≥ 10⁻³.
pub fn random_lipschitz<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Multivector, Error> {
    let sig = Signature::negative(n)?;
    loop {
        let k = rng.random_range(1..=n + 1);
        let mut x = Multivector::one(sig);
        for _ in 0..k {
            x = &x * random_paravector(n, rng)?.as_multivector();
        }
        if libm::sqrt(x.norm()) >= DEGENERACY {
            return Ok(x);
        }
    }
}

/// Element of grade at most 2 with standard-normal coefficients.
pub fn random_bi_paravector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Multivector, Error> {
    let sig = Signature::negative(n)?;
    let coeffs = (0..sig.blades()).map(|b| if degree(b) <= 2 { normal(rng) } else { 0.0 }).collect();
    Multivector::from_coeffs(sig, coeffs)
}

/// General multivector with standard-normal coefficients.
pub fn random_multivector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Multivector, Error> {
    let sig = Signature::negative(n)?;
    Multivector::from_coeffs(sig, (0..sig.blades()).map(|_| normal(rng)).collect())
}

/// (Vη, η) or (ξ, Wξ) with equal probability, resampled until both
/// components have |·| ≥ 10⁻³.
pub fn random_spinor<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<LipschitzSpinor, Error> {
    loop {
        let s = random_lipschitz(n, rng)?;
        let v = random_paravector(n, rng)?;
        let w = v.as_multivector() * &s;
        if libm::sqrt(w.norm()) < DEGENERACY {
            continue;
        }
        return Ok(if rng.random::<bool>() {
            LipschitzSpinor::new_unchecked(w, s)
        } else {
            LipschitzSpinor::new_unchecked(s, w)
        });
    }
}

/// One of A₁(V), A₂, A₃(a), chosen uniformly.
pub fn random_generator<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Generator, Error> {
    Ok(match rng.random_range(0..3) {
        0 => Generator::Translate(random_paravector(n, rng)?),
        1 => Generator::Invert,
        _ => Generator::Scale(random_lipschitz(n, rng)?),
    })
}

/// Product of a random word of length 1 to 8 in the generators, resampled
/// while some entry is nonzero but smaller than 10⁻³.
pub fn random_sl2<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CliffordMatrix, Error> {
    let sig = Signature::negative(n)?;
    loop {
        let len = rng.random_range(1..=8);
        let mut m = CliffordMatrix::identity(sig);
        for _ in 0..len {
            m = m.mul(&random_generator(n, rng)?.matrix(sig));
        }
        let tiny = |x: &Multivector| x.magnitude() != 0.0 && x.magnitude() < DEGENERACY;
        if ![m.a(), m.b(), m.c(), m.d()].into_iter().any(tiny) {
            return Ok(m);
        }
    }
}
