#![allow(dead_code)]

use horoclif_core::clifford::{Multivector, Signature};
use horoclif_core::LipschitzSpinor;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sig(n: usize) -> Signature {
    Signature::negative(n).unwrap()
}

pub fn one(n: usize) -> Multivector {
    Multivector::one(sig(n))
}

pub fn gen(n: usize, j: usize) -> Multivector {
    Multivector::generator(sig(n), j)
}

pub fn scalar(n: usize, s: f64) -> Multivector {
    Multivector::scalar(sig(n), s)
}

pub fn spinor(xi: Multivector, eta: Multivector) -> LipschitzSpinor {
    LipschitzSpinor::new(xi, eta).unwrap()
}

/// Relative coefficient distance.
pub fn rel(a: &Multivector, b: &Multivector) -> f64 {
    a.distance(b) / a.magnitude().max(b.magnitude()).max(1.0)
}
