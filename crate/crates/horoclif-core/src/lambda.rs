//! Clifford-valued lambda lengths, 2×2 quasideterminants, quasi-Plücker
//! coordinates and the Ptolemy, skew-symmetry and holonomy relations.

use alloc::vec::Vec;

use crate::clifford::Multivector;
use crate::lipschitz::LipschitzSpinor;
use crate::{Error, DEGENERACY};

/// λ₁₂ = {κ₁, κ₂} = ξ₁*η₂ − η₁*ξ₂.
pub fn lambda_length(k1: &LipschitzSpinor, k2: &LipschitzSpinor) -> Multivector {
    k1.bracket(k2)
}

/// Spinors together with the table of their pairwise lambda lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMatrix {
    spinors: Vec<LipschitzSpinor>,
    lambda: Vec<Vec<Multivector>>,
}

impl LambdaMatrix {
    pub fn new(spinors: Vec<LipschitzSpinor>) -> Result<Self, Error> {
        if let Some(first) = spinors.first() {
            if let Some(bad) = spinors.iter().find(|k| k.sig() != first.sig()) {
                return Err(Error::SignatureMismatch(first.sig(), bad.sig()));
            }
        }
        let lambda = spinors.iter().map(|a| spinors.iter().map(|b| lambda_length(a, b)).collect()).collect();
        Ok(LambdaMatrix { spinors, lambda })
    }

    pub fn len(&self) -> usize {
        self.spinors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spinors.is_empty()
    }

    pub fn spinors(&self) -> &[LipschitzSpinor] {
        &self.spinors
    }

    pub fn rows(&self) -> &[Vec<Multivector>] {
        &self.lambda
    }

    /// λᵢⱼ with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> &Multivector {
        &self.lambda[i][j]
    }

    /// Smallest off-diagonal |λᵢⱼ|; ∞ for fewer than two spinors.
    pub fn conditioning(&self) -> f64 {
        let mut c = f64::INFINITY;
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j {
                    c = c.min(self.lambda[i][j].magnitude());
                }
            }
        }
        c
    }

    /// Largest |λⱼᵢ + λᵢⱼ*| over the table, including the diagonal.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut r: f64 = 0.0;
        for i in 0..self.len() {
            for j in 0..self.len() {
                r = r.max((&self.lambda[j][i] + &self.lambda[i][j].reverse()).magnitude());
            }
        }
        r
    }
}

/// A value together with the smallest magnitude among the elements that
/// had to be inverted to produce it.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiResult {
    pub value: Multivector,
    pub conditioning: f64,
}

/// 2×2 matrix [[a, b], [c, d]] over Cℓ₀,ₙ.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2 {
    pub a: Multivector,
    pub b: Multivector,
    pub c: Multivector,
    pub d: Multivector,
}

fn checked_inverse(x: &Multivector, conditioning: &mut f64) -> Result<Multivector, Error> {
    let m = x.magnitude();
    *conditioning = conditioning.min(m);
    if m < DEGENERACY {
        return Err(Error::Degenerate { conditioning: m });
    }
    x.inverse()
}

impl Mat2 {
    pub fn new(a: Multivector, b: Multivector, c: Multivector, d: Multivector) -> Self {
        Mat2 { a, b, c, d }
    }

    /// Matrix whose columns are the two spinors.
    pub fn from_columns(k1: &LipschitzSpinor, k2: &LipschitzSpinor) -> Self {
        Mat2::new(k1.xi().clone(), k2.xi().clone(), k1.eta().clone(), k2.eta().clone())
    }

    fn entry(&self, i: usize, j: usize) -> &Multivector {
        match (i, j) {
            (1, 1) => &self.a,
            (1, 2) => &self.b,
            (2, 1) => &self.c,
            _ => &self.d,
        }
    }

    /// |A|ᵢⱼ = aᵢⱼ − aᵢⱼ′ (aᵢ′ⱼ′)⁻¹ aᵢ′ⱼ, where i′, j′ are the other row and column.
    pub fn quasideterminant(&self, i: usize, j: usize) -> Result<QuasiResult, Error> {
        if !(1..=2).contains(&i) {
            return Err(Error::Index { index: i });
        }
        if !(1..=2).contains(&j) {
            return Err(Error::Index { index: j });
        }
        let (io, jo) = (3 - i, 3 - j);
        let mut conditioning = f64::INFINITY;
        let inv = checked_inverse(self.entry(io, jo), &mut conditioning)?;
        let value = self.entry(i, j) - &(&(self.entry(i, jo) * &inv) * self.entry(io, j));
        Ok(QuasiResult { value, conditioning })
    }

    /// A⁻¹ from the inverses of the quasideterminants, (A⁻¹)ⱼᵢ = |A|ᵢⱼ⁻¹.
    pub fn inverse(&self) -> Result<Mat2, Error> {
        let mut conditioning = f64::INFINITY;
        let mut inv = |i, j| -> Result<Multivector, Error> {
            let q = self.quasideterminant(i, j)?;
            checked_inverse(&q.value, &mut conditioning)
        };
        Ok(Mat2::new(inv(1, 1)?, inv(2, 1)?, inv(1, 2)?, inv(2, 2)?))
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }
}

/// Quasi-Plücker coordinate q^{k}_{ℓj} = |A_{ℓk}|_{s1}⁻¹ |A_{jk}|_{s1} for row s,
/// where A_{ab} has columns κ_a, κ_b.
pub fn quasi_plucker_s(
    s: usize,
    k_ell: &LipschitzSpinor,
    k_j: &LipschitzSpinor,
    k_k: &LipschitzSpinor,
) -> Result<QuasiResult, Error> {
    let left = Mat2::from_columns(k_ell, k_k).quasideterminant(s, 1)?;
    let right = Mat2::from_columns(k_j, k_k).quasideterminant(s, 1)?;
    let mut conditioning = left.conditioning.min(right.conditioning);
    let inv = checked_inverse(&left.value, &mut conditioning)?;
    Ok(QuasiResult { value: &inv * &right.value, conditioning })
}

/// The same coordinate as Δ_{kℓ}⁻¹Δ_{kj} with Δ_{ab} = ξ_a*η_b − η_a*ξ_b.
pub fn quasi_plucker_delta(
    k_ell: &LipschitzSpinor,
    k_j: &LipschitzSpinor,
    k_k: &LipschitzSpinor,
) -> Result<QuasiResult, Error> {
    let mut conditioning = f64::INFINITY;
    let inv = checked_inverse(&k_k.bracket(k_ell), &mut conditioning)?;
    let dkj = k_k.bracket(k_j);
    conditioning = conditioning.min(dkj.magnitude());
    Ok(QuasiResult { value: &inv * &dkj, conditioning })
}

/// Computes q^{k}_{ℓj} via rows s = 1, 2 and the Δ form; returns the Δ form
/// together with the largest disagreement among the three.
pub fn quasi_plucker(
    k_ell: &LipschitzSpinor,
    k_j: &LipschitzSpinor,
    k_k: &LipschitzSpinor,
) -> Result<(QuasiResult, f64), Error> {
    let delta = quasi_plucker_delta(k_ell, k_j, k_k)?;
    let s1 = quasi_plucker_s(1, k_ell, k_j, k_k)?;
    let s2 = quasi_plucker_s(2, k_ell, k_j, k_k)?;
    let scale = delta.value.magnitude().max(1.0);
    let residual =
        delta.value.distance(&s1.value).max(delta.value.distance(&s2.value)).max(s1.value.distance(&s2.value)) / scale;
    Ok((delta, residual))
}

/// Outcome of a relation check.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub relation: &'static str,
    pub residual: f64,
    pub conditioning: f64,
    pub pass: bool,
}

impl RelationReport {
    pub fn new(relation: &'static str, residual: f64, conditioning: f64, tol: f64) -> Self {
        RelationReport { relation, residual, conditioning, pass: residual < tol }
    }
}

fn table(spinors: &[&LipschitzSpinor]) -> Result<(Vec<Vec<Multivector>>, f64), Error> {
    let m = spinors.len();
    let mut lam = Vec::with_capacity(m);
    let mut conditioning = f64::INFINITY;
    for i in 0..m {
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            let l = lambda_length(spinors[i], spinors[j]);
            if i != j {
                conditioning = conditioning.min(l.magnitude());
            }
            row.push(l);
        }
        lam.push(row);
    }
    if conditioning < DEGENERACY {
        return Err(Error::Degenerate { conditioning });
    }
    Ok((lam, conditioning))
}

fn inv(x: &Multivector) -> Result<Multivector, Error> {
    x.inverse()
}

fn normalized_residual(diff: &Multivector, terms: &[&Multivector]) -> f64 {
    let scale = terms.iter().map(|t| t.magnitude()).fold(1.0, f64::max);
    diff.magnitude() / scale
}

/// Residual of λ₃₁⁻¹λ₂₃*λ₄₂⁻¹λ₁₄* + λ₃₁⁻¹λ₄₃*λ₂₄⁻¹λ₁₂* = 1, with the
/// conditioning min |λᵢⱼ|.
pub fn ptolemy_residual(
    k1: &LipschitzSpinor,
    k2: &LipschitzSpinor,
    k3: &LipschitzSpinor,
    k4: &LipschitzSpinor,
) -> Result<(f64, f64), Error> {
    let (l, conditioning) = table(&[k1, k2, k3, k4])?;
    let at = |i: usize, j: usize| &l[i - 1][j - 1];
    let i31 = inv(at(3, 1))?;
    let t1 = &(&(&i31 * &at(2, 3).reverse()) * &inv(at(4, 2))?) * &at(1, 4).reverse();
    let t2 = &(&(&i31 * &at(4, 3).reverse()) * &inv(at(2, 4))?) * &at(1, 2).reverse();
    let diff = &(&t1 + &t2) - 1.0;
    Ok((normalized_residual(&diff, &[&t1, &t2]), conditioning))
}

/// Residual of X = X* for X = λ₁₂λ₃₂⁻¹λ₃₁.
pub fn skew_symmetry_residual(
    k1: &LipschitzSpinor,
    k2: &LipschitzSpinor,
    k3: &LipschitzSpinor,
) -> Result<(f64, f64), Error> {
    let (l, conditioning) = table(&[k1, k2, k3])?;
    let x = &(&l[0][1] * &inv(&l[2][1])?) * &l[2][0];
    let diff = &x - &x.reverse();
    Ok((normalized_residual(&diff, &[&x]), conditioning))
}

/// Residual of λ_kj λ_lj⁻¹ λ_lℓ + λ_kl λ_jl⁻¹ λ_jℓ = λ_kℓ. The spinors κ_k
/// and κ_ℓ may coincide, in which case the right side is 0.
pub fn holonomy_residual(
    k_k: &LipschitzSpinor,
    k_j: &LipschitzSpinor,
    k_l: &LipschitzSpinor,
    k_ell: &LipschitzSpinor,
) -> Result<(f64, f64), Error> {
    let lam = |a: &LipschitzSpinor, b: &LipschitzSpinor| lambda_length(a, b);
    let used = [(k_k, k_j), (k_l, k_j), (k_l, k_ell), (k_k, k_l), (k_j, k_l), (k_j, k_ell)];
    let conditioning = used.iter().map(|(a, b)| lam(a, b).magnitude()).fold(f64::INFINITY, f64::min);
    if conditioning < DEGENERACY {
        return Err(Error::Degenerate { conditioning });
    }
    let t1 = &(&lam(k_k, k_j) * &inv(&lam(k_l, k_j))?) * &lam(k_l, k_ell);
    let t2 = &(&lam(k_k, k_l) * &inv(&lam(k_j, k_l))?) * &lam(k_j, k_ell);
    let rhs = lam(k_k, k_ell);
    let diff = &(&t1 + &t2) - &rhs;
    Ok((normalized_residual(&diff, &[&t1, &t2, &rhs]), conditioning))
}
