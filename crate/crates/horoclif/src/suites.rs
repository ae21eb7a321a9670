//! Seeded property suites behind `horoclif verify`, one per module.
//!
//! Each property owns a ChaCha8 stream derived from the run seed and its
//! position, so suites can run on separate threads and still produce the
//! same report for the same (seed, n, samples).

use horoclif_core::clifford::{degree, Involution, Multivector, Paravector, Signature};
use horoclif_core::hyperbolic::{
    boundary_center, horosphere, horosphere_distance, horosphere_from_lightcone, horosphere_point,
    transform_decoration, DecoratedHorosphere,
};
use horoclif_core::lambda::{holonomy_residual, ptolemy_residual, quasi_plucker, skew_symmetry_residual};
use horoclif_core::lipschitz::{
    lipschitz_check, tangent_vector, CliffordMatrix, Flavor, LipschitzSpinor, Pair, ParavectorPoint,
};
use horoclif_core::minkowski::{act_minkowski, basepoint, dphi1, minkowski_inner, MinkowskiPoint};
use horoclif_core::random::{
    random_bi_paravector, random_generator, random_lipschitz, random_multivector, random_paravector, random_sl2,
    random_spinor,
};
use horoclif_core::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands;

/// Result of one sample.
pub enum Outcome {
    /// Normalized residual, compared against the property tolerance.
    Residual(f64),
    /// Yes/no property.
    Holds(bool),
    /// The sample fell outside the property's guard (e.g. near-degenerate).
    Skip,
}

type Check = fn(usize, &mut ChaCha8Rng) -> Result<Outcome, Error>;

pub struct Property {
    pub name: &'static str,
    pub tol: f64,
    check: Check,
}

pub struct Suite {
    pub name: &'static str,
    pub properties: Vec<Property>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub suite: &'static str,
    pub property: &'static str,
    pub evaluated: usize,
    pub skipped: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub pass: bool,
    pub properties: Vec<PropertyReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

fn prop(name: &'static str, tol: f64, check: Check) -> Property {
    Property { name, tol, check }
}

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn suites() -> Vec<Suite> {
    vec![
        Suite {
            name: "clifford",
            properties: vec![
                prop("involution sign table", 0.0, sign_table),
                prop("associativity", 1e-12, associativity),
                prop("conjugation reverses products", 1e-12, conjugation_antiautomorphism),
                prop("polarization on vectors", 1e-12, polarization),
                prop("exp closed form vs Taylor", 1e-10, exp_closed_form),
                prop("paravector norm is real", 1e-12, paravector_norm_real),
            ],
        },
        Suite {
            name: "lipschitz",
            properties: vec![
                prop("bracket pseudo-antisymmetry", 1e-12, bracket_antisymmetry),
                prop("bracket kernel", 1e-10, bracket_kernel),
                prop("inner product scaling", 1e-10, inner_scaling),
                prop("hermitian form scaling", 1e-10, hermitian_scaling),
                prop("decomposition", 1e-10, decomposition),
                prop("orthogonality", 1e-10, orthogonality),
                prop("tangent space membership", 1e-9, tangent_membership),
                prop("exp of bi-paravectors is Lipschitz", 0.0, lie_algebra),
                prop("ratio equivariance", 1e-9, ratio_equivariance),
                prop("transitivity witness", 1e-9, transitivity),
                prop("random generators are valid", 0.0, generators_valid),
            ],
        },
        Suite {
            name: "minkowski",
            properties: vec![
                prop("light-cone preimage", 1e-12, light_cone_preimage),
                prop("preimage fibre", 1e-10, preimage_fibre),
                prop("conformality", 1e-10, conformality),
                prop("conformality of pdet", 1e-9, conformality_pdet),
                prop("orthogonal decomposition", 1e-10, orthogonal_decomposition),
                prop("pdet invariance", 1e-9, pdet_invariance),
                prop("basepoint equivariance", 1e-9, basepoint_equivariance),
            ],
        },
        Suite {
            name: "hyperbolic",
            properties: vec![
                prop("pipeline center", 1e-9, pipeline_center),
                prop("horosphere closed form vs pipeline", 1e-9, closed_form_vs_pipeline),
                prop("decoration orthogonality", 1e-9, decoration_orthogonality),
                prop("decoration equivariance at generators", 1e-9, decoration_equivariance),
                prop("distance oracle", 1e-8, distance_oracle),
                prop("horosphere membership", 1e-9, horosphere_membership),
            ],
        },
        Suite {
            name: "lambda",
            properties: vec![
                prop("SL invariance", 1e-9, sl_invariance),
                prop("magnitude oracle", 1e-8, magnitude_oracle),
                prop("ptolemy", 1e-8, ptolemy),
                prop("ptolemy under sign flips", 1e-8, ptolemy_sign_flips),
                prop("skew symmetry", 1e-8, skew_symmetry),
                prop("holonomy", 1e-8, holonomy),
                prop("quasi-plucker", 1e-9, quasi_plucker_forms),
            ],
        },
        Suite {
            name: "cli",
            properties: vec![prop("determinism", 0.0, determinism), prop("round trip", 0.0, round_trip)],
        },
    ]
}

fn run_property(p: &Property, suite: &'static str, stream: u64, cfg: &Config) -> PropertyReport {
    let mut rng = rng_for(cfg.seed, stream);
    let tol = cfg.tol.unwrap_or(p.tol);
    let (mut evaluated, mut skipped, mut failures, mut max_residual) = (0, 0, 0, 0.0f64);
    for _ in 0..cfg.samples {
        let ok = match (p.check)(cfg.n, &mut rng) {
            Ok(Outcome::Residual(r)) => {
                max_residual = if r.is_nan() { f64::NAN } else { max_residual.max(r) };
                r <= tol
            }
            Ok(Outcome::Holds(h)) => h,
            Ok(Outcome::Skip) => {
                skipped += 1;
                continue;
            }
            Err(_) => false,
        };
        evaluated += 1;
        failures += usize::from(!ok);
    }
    PropertyReport { suite, property: p.name, evaluated, skipped, failures, max_residual, tol, pass: failures == 0 }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub tol: Option<f64>,
}

/// Runs every suite, one thread per suite.
pub fn run(cfg: &Config) -> VerifyReport {
    let all = suites();
    let reports: Vec<SuiteReport> = std::thread::scope(|s| {
        let handles: Vec<_> = all
            .iter()
            .enumerate()
            .map(|(si, suite)| {
                s.spawn(move || {
                    let properties: Vec<PropertyReport> = suite
                        .properties
                        .iter()
                        .enumerate()
                        .map(|(pi, p)| run_property(p, suite.name, ((si as u64) << 16) | pi as u64, cfg))
                        .collect();
                    SuiteReport { suite: suite.name, pass: properties.iter().all(|p| p.pass), properties }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    VerifyReport {
        n: cfg.n,
        seed: cfg.seed,
        samples: cfg.samples,
        pass: reports.iter().all(|s| s.pass),
        suites: reports,
    }
}

// Helpers.

fn rel(a: &Multivector, b: &Multivector) -> f64 {
    a.distance(b) / a.magnitude().max(b.magnitude()).max(1.0)
}

fn uniform_multivector(sig: Signature, rng: &mut ChaCha8Rng) -> Result<Multivector, Error> {
    Multivector::from_coeffs(sig, (0..sig.blades()).map(|_| rng.random_range(-1.0..1.0)).collect())
}

fn random_signature(n: usize, rng: &mut ChaCha8Rng) -> Result<Signature, Error> {
    let p = rng.random_range(0..=n);
    Signature::new(p, n - p)
}

fn random_pair(n: usize, rng: &mut ChaCha8Rng) -> Result<Pair, Error> {
    Ok(Pair::new(random_multivector(n, rng)?, random_multivector(n, rng)?))
}

/// Spinor with one draw in five of the form (s, 0) and one in five (0, s).
pub fn spinor_with_corners(n: usize, rng: &mut ChaCha8Rng) -> Result<LipschitzSpinor, Error> {
    let zero = Multivector::zero(Signature::negative(n)?);
    Ok(match rng.random_range(0..5) {
        0 => LipschitzSpinor::new(random_lipschitz(n, rng)?, zero)?,
        1 => LipschitzSpinor::new(zero, random_lipschitz(n, rng)?)?,
        _ => random_spinor(n, rng)?,
    })
}

/// Sum of the entry magnitudes of A.
pub fn matrix_size(a: &CliffordMatrix) -> f64 {
    [a.a(), a.b(), a.c(), a.d()].iter().map(|m| m.magnitude()).sum()
}

/// Inverse stereographic image on the unit sphere Sⁿ⁺¹, ∞ at the north pole.
pub fn sphere_point(p: &ParavectorPoint, n: usize) -> Vec<f64> {
    match p.finite() {
        None => {
            let mut c = vec![0.0; n + 1];
            c.push(1.0);
            c
        }
        Some(v) => {
            let c = v.components();
            let r2: f64 = c.iter().map(|x| x * x).sum();
            let mut out: Vec<f64> = c.iter().map(|x| 2.0 * x / (r2 + 1.0)).collect();
            out.push((r2 - 1.0) / (r2 + 1.0));
            out
        }
    }
}

/// Chordal distance between two points of the paravector sphere.
pub fn chordal(a: &ParavectorPoint, b: &ParavectorPoint) -> f64 {
    let Some(n) = a.finite().or(b.finite()).map(Paravector::n) else { return 0.0 };
    let (x, y) = (sphere_point(a, n), sphere_point(b, n));
    x.iter().zip(&y).map(|(p, q)| (p - q) * (p - q)).sum::<f64>().sqrt()
}

/// Error amplification of u v⁻¹ with u = p₁ + p₂ and v = p₃ + p₄, each
/// argument being (|pᵢ| + |pⱼ|) / |pᵢ + pⱼ|.
fn amplification(terms: [(f64, f64, f64); 2]) -> f64 {
    terms.iter().map(|&(x, y, sum)| (x + y) / sum.max(f64::MIN_POSITIVE)).sum::<f64>().max(1.0)
}

/// Chordal distance between ratio(Aκ) and A.ratio(κ), divided by the
/// cancellation factors of both routes.
pub fn ratio_equivariance_residual(a: &CliffordMatrix, k: &LipschitzSpinor) -> f64 {
    let ak = a.act_on_spinor(k);
    let lhs = ak.ratio();
    let rhs = a.mobius_apply(&k.ratio());
    let (xi, eta) = (k.xi(), k.eta());
    let spinor_route = amplification([
        (a.a().magnitude() * xi.magnitude(), a.b().magnitude() * eta.magnitude(), ak.xi().magnitude()),
        (a.c().magnitude() * xi.magnitude(), a.d().magnitude() * eta.magnitude(), ak.eta().magnitude()),
    ]);
    let mobius_route = match k.ratio().finite() {
        Some(x) => {
            let x = x.as_multivector();
            let num = &(a.a() * x) + a.b();
            let den = &(a.c() * x) + a.d();
            amplification([
                (a.a().magnitude() * x.magnitude(), a.b().magnitude(), num.magnitude()),
                (a.c().magnitude() * x.magnitude(), a.d().magnitude(), den.magnitude()),
            ])
        }
        None => 1.0,
    };
    chordal(&lhs, &rhs) / spinor_route.max(mobius_route)
}

/// |φ₁(Aκ) − A φ₁(κ) A†| relative to |A|²|φ₁(κ)|.
pub fn basepoint_equivariance_residual(a: &CliffordMatrix, k: &LipschitzSpinor) -> f64 {
    let p = basepoint(k);
    let lhs = basepoint(&a.act_on_spinor(k));
    let rhs = act_minkowski(a, &p);
    let size = matrix_size(a);
    lhs.distance(&rhs) / (size * size * p.euclidean_norm()).max(lhs.euclidean_norm()).max(1.0)
}

/// Largest disagreement between two horospheres: center (relative to the
/// center's size), size (relative) and decorations.
pub fn horosphere_residual(a: &DecoratedHorosphere, b: &DecoratedHorosphere) -> f64 {
    if a.center().is_infinite() != b.center().is_infinite() || a.decorations().len() != b.decorations().len() {
        return f64::INFINITY;
    }
    let scale = a.center().finite().map_or(1.0, |c| c.abs().max(1.0));
    let center = if a.center().is_infinite() { 0.0 } else { a.center().distance(&b.center()) / scale };
    let size = (a.size() - b.size()).abs() / a.size();
    let deco = a
        .decorations()
        .iter()
        .zip(b.decorations())
        .map(|(x, y)| x.as_multivector().distance(y.as_multivector()))
        .fold(0.0, f64::max);
    center.max(size).max(deco)
}

fn degenerate_as_skip(r: Result<(f64, f64), Error>) -> Result<Outcome, Error> {
    match r {
        Ok((res, _)) => Ok(Outcome::Residual(res)),
        Err(Error::Degenerate { .. }) => Ok(Outcome::Skip),
        Err(e) => Err(e),
    }
}

// clifford

fn sign_table(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let sig = random_signature(n, rng)?;
    let k = rng.random_range(0..sig.blades());
    let d = degree(k) as i32;
    let b = Multivector::blade(sig, k);
    let expected = [
        (Involution::Grade, (-1i32).pow(d as u32)),
        (Involution::Reverse, (-1i32).pow((d * (d - 1) / 2) as u32)),
        (Involution::Conjugate, (-1i32).pow((d * (d + 1) / 2) as u32)),
    ];
    let r = expected.iter().map(|&(inv, s)| b.involution(inv).distance(&b.scale(s as f64))).fold(0.0, f64::max);
    Ok(Outcome::Residual(r))
}

fn associativity(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let sig = random_signature(n, rng)?;
    let [a, b, c] = [(); 3].map(|_| uniform_multivector(sig, rng));
    let (a, b, c) = (a?, b?, c?);
    let lhs = &(&a * &b) * &c;
    let rhs = &a * &(&b * &c);
    let scale = (a.magnitude() * b.magnitude() * c.magnitude()).max(f64::MIN_POSITIVE);
    Ok(Outcome::Residual(lhs.distance(&rhs) / scale))
}

fn conjugation_antiautomorphism(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let sig = random_signature(n, rng)?;
    let (i, j) = (rng.random_range(0..sig.blades()), rng.random_range(0..sig.blades()));
    let (ei, ej) = (Multivector::blade(sig, i), Multivector::blade(sig, j));
    let exact = (&ei * &ej).conjugate().distance(&(&ej.conjugate() * &ei.conjugate()));
    let a = uniform_multivector(sig, rng)?;
    let b = uniform_multivector(sig, rng)?;
    let lhs = (&a * &b).conjugate();
    let rhs = &b.conjugate() * &a.conjugate();
    let scale = (a.magnitude() * b.magnitude()).max(f64::MIN_POSITIVE);
    Ok(Outcome::Residual(exact.max(lhs.distance(&rhs) / scale)))
}

fn polarization(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    if n == 0 {
        return Ok(Outcome::Skip);
    }
    let sig = random_signature(n, rng)?;
    let vec = |rng: &mut ChaCha8Rng| -> (Vec<f64>, Multivector) {
        let c: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut m = Multivector::zero(sig);
        for (j, &x) in c.iter().enumerate() {
            m = &m + &Multivector::generator(sig, j + 1).scale(x);
        }
        (c, m)
    };
    let (v, vm) = vec(rng);
    let (w, wm) = vec(rng);
    let npq: f64 = (0..n).map(|j| sig.square(j) * v[j] * w[j]).sum();
    let lhs = &(&vm * &wm) + &(&wm * &vm);
    let scale = (vm.magnitude() * wm.magnitude()).max(f64::MIN_POSITIVE);
    Ok(Outcome::Residual(lhs.distance(&Multivector::scalar(sig, 2.0 * npq)) / scale))
}

fn exp_closed_form(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let sig = Signature::negative(n)?;
    let blade = rng.random_range(0..sig.blades());
    let theta = rng.random_range(-4.0 * std::f64::consts::PI..=4.0 * std::f64::consts::PI);
    let x = &Multivector::blade(sig, blade).scale(theta) + rng.random_range(-1.0..1.0);
    Ok(Outcome::Residual(rel(&x.exp(), &x.exp_taylor())))
}

fn paravector_norm_real(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let v = random_paravector(n, rng)?.into_multivector();
    let vv = &v * &v.conjugate();
    Ok(Outcome::Residual(vv.real_residual() / v.norm().max(f64::MIN_POSITIVE)))
}

// lipschitz

fn bracket_antisymmetry(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let (d1, d2) = (random_pair(n, rng)?, random_pair(n, rng)?);
    let lhs = d2.bracket(&d1);
    let rhs = -d1.bracket(&d2).reverse();
    Ok(Outcome::Residual(lhs.distance(&rhs) / (d1.magnitude() * d2.magnitude()).max(1.0)))
}

fn bracket_kernel(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = random_spinor(n, rng)?;
    let a = random_multivector(n, rng)?;
    let r = k.bracket(&k.mul_right(&a)).magnitude();
    Ok(Outcome::Residual(r / (k.norm_sq() * a.magnitude()).max(1.0)))
}

fn inner_scaling(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let (d1, d2) = (random_pair(n, rng)?, random_pair(n, rng)?);
    let alpha = random_lipschitz(n, rng)?;
    let na = alpha.norm();
    let lhs = d1.mul_right(&alpha).inner(&d2.mul_right(&alpha));
    let r1 = (lhs - na * d1.inner(&d2)).abs() / (na * d1.magnitude() * d2.magnitude()).max(1.0);
    let k = random_spinor(n, rng)?;
    let v = random_paravector(n, rng)?.into_multivector();
    let w = random_paravector(n, rng)?.into_multivector();
    let lhs = k.mul_right(&v).inner(&k.mul_right(&w));
    let r2 = (lhs - k.norm_sq() * v.dot(&w)?).abs() / (k.norm_sq() * v.magnitude() * w.magnitude()).max(1.0);
    Ok(Outcome::Residual(r1.max(r2)))
}

fn hermitian_scaling(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let (d1, d2) = (random_pair(n, rng)?, random_pair(n, rng)?);
    let alpha = random_lipschitz(n, rng)?;
    let h = d1.mul_left(&alpha).hermitian(&d2.mul_left(&alpha));
    let r1 = rel(&h, &d1.hermitian(&d2).scale(alpha.norm()));
    let b = random_multivector(n, rng)?;
    let c = random_multivector(n, rng)?;
    let h = d1.mul_right(&b).hermitian(&d2.mul_right(&c));
    let want = &(&b.conjugate() * &d1.hermitian(&d2)) * &c;
    Ok(Outcome::Residual(r1.max(rel(&h, &want))))
}

fn decomposition(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = random_spinor(n, rng)?;
    let ab = random_pair(n, rng)?;
    let (x, y) = ab.decompose(&k);
    let back = k.mul_right(&x).add(&k.complement().mul_right(&y));
    Ok(Outcome::Residual(back.distance(&ab) / ab.magnitude().max(1.0)))
}

fn orthogonality(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = random_spinor(n, rng)?;
    let x = random_multivector(n, rng)?;
    let y = random_multivector(n, rng)?;
    let ip = k.mul_right(&x).inner(&k.complement().mul_right(&y));
    Ok(Outcome::Residual(ip.abs() / (k.norm_sq() * x.magnitude() * y.magnitude()).max(1.0)))
}

fn tangent_membership(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = spinor_with_corners(n, rng)?;
    let v = random_paravector(n, rng)?;
    let h = random_bi_paravector(n, rng)?;
    let t = tangent_vector(&k, &v, &h);
    let m = &(&t.x * &k.eta().conjugate()) + &(k.xi() * &t.y.conjugate());
    let scale = (t.magnitude() * k.magnitude()).max(1.0);
    Ok(Outcome::Residual(m.paravector_residual() / scale))
}

fn lie_algebra(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let b = random_bi_paravector(n, rng)?;
    let t: f64 = rng.random_range(-1.0..=1.0);
    Ok(Outcome::Holds(lipschitz_check(&b.scale(t).exp()).is_ok()))
}

fn ratio_equivariance(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let a = random_sl2(n, rng)?;
    let k = spinor_with_corners(n, rng)?;
    Ok(Outcome::Residual(ratio_equivariance_residual(&a, &k)))
}

fn transitivity(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let (k1, k2) = (random_spinor(n, rng)?, random_spinor(n, rng)?);
    let t = CliffordMatrix::transitivity(&k1, &k2);
    let image = t.act_on_spinor(&k1);
    let scale = (matrix_size(&t) * k1.magnitude()).max(k2.magnitude()).max(1.0);
    Ok(Outcome::Residual(image.distance(&k2) / scale))
}

fn generators_valid(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let x = random_lipschitz(n, rng)?;
    let k = random_spinor(n, rng)?;
    let m = random_sl2(n, rng)?;
    let spinor_ok = LipschitzSpinor::new(k.xi().clone(), k.eta().clone()).is_ok();
    let matrix_ok = CliffordMatrix::new(m.a().clone(), m.b().clone(), m.c().clone(), m.d().clone(), Flavor::Sl).is_ok();
    Ok(Outcome::Holds(lipschitz_check(&x).is_ok() && spinor_ok && matrix_ok))
}

// minkowski

fn close(a: &MinkowskiPoint, b: &MinkowskiPoint) -> f64 {
    a.distance(b) / a.euclidean_norm().max(b.euclidean_norm()).max(1.0)
}

fn light_cone_preimage(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let x = random_paravector(n, rng)?;
    let z: f64 = rng.random_range(-3.0..3.0);
    let t = (z * z + x.as_multivector().norm()).sqrt();
    if t - z <= 1e-6 {
        return Ok(Outcome::Skip);
    }
    let p = MinkowskiPoint::new(t, z, x.components());
    let s = (t - z).sqrt();
    let sig = Signature::negative(n)?;
    let k = LipschitzSpinor::new(
        x.as_multivector().scale(1.0 / (s * std::f64::consts::SQRT_2)),
        Multivector::scalar(sig, s / std::f64::consts::SQRT_2),
    )?;
    // √(T − Z) inherits the cancellation in T − Z.
    Ok(Outcome::Residual(close(&basepoint(&k), &p) / (t / (t - z)).max(1.0)))
}

fn preimage_fibre(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = random_spinor(n, rng)?;
    let s = random_lipschitz(n, rng)?;
    let s = s.scale(1.0 / s.norm().sqrt());
    Ok(Outcome::Residual(close(&basepoint(&k.mul_lipschitz(&s)), &basepoint(&k))))
}

fn conformality(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = random_spinor(n, rng)?;
    let kk = k.norm_sq();
    let check = k.complement();
    let v = random_paravector(n, rng)?.into_multivector();
    let w = random_paravector(n, rng)?.into_multivector();
    let dv = dphi1(&k, &check.mul_right(&v));
    let dw = dphi1(&k, &check.mul_right(&w));
    let scale = (kk * kk * v.magnitude() * w.magnitude()).max(1.0);
    Ok(Outcome::Residual((dv.dot(&dw) + 4.0 * kk * kk * v.dot(&w)?).abs() / scale))
}

/// |pdet(Dφ₁(κ̌V)) + |V|²|κ|⁴| relative to |V|²|κ|⁴.
pub fn pdet_residual(k: &LipschitzSpinor, v: &Multivector) -> f64 {
    let kk = k.norm_sq();
    let dv = dphi1(k, &k.complement().mul_right(v));
    let want = kk * kk * v.norm();
    let pdet = dv.to_matrix().pdet();
    (&pdet + want).magnitude() / want.max(f64::MIN_POSITIVE)
}

fn conformality_pdet(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = random_spinor(n, rng)?;
    let v = random_paravector(n, rng)?.into_multivector();
    Ok(Outcome::Residual(pdet_residual(&k, &v)))
}

fn orthogonal_decomposition(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = random_spinor(n, rng)?;
    let kk = k.norm_sq();
    let p = basepoint(&k);
    let a: f64 = rng.random_range(-2.0..2.0);
    let r1 = close(&dphi1(&k, &k.as_pair().scale(a)), &p.scale(2.0 * a));
    let v = random_paravector(n, rng)?.into_multivector();
    let r2 = dphi1(&k, &k.complement().mul_right(&v)).t.abs() / (kk * v.magnitude()).max(1.0);
    let b = random_bi_paravector(n, rng)?;
    let imag = &b - b.coeff(0);
    let r3 = dphi1(&k, &k.mul_right(&imag)).euclidean_norm() / (kk * imag.magnitude()).max(1.0);
    Ok(Outcome::Residual(r1.max(r2).max(r3)))
}

fn pdet_invariance(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let a = random_sl2(n, rng)?;
    let s = MinkowskiPoint::new(
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        (0..=n).map(|_| rng.random_range(-2.0..2.0)).collect(),
    );
    let moved = act_minkowski(&a, &s);
    let size = matrix_size(&a);
    let scale = size * size * s.euclidean_norm() * moved.euclidean_norm() + s.euclidean_norm().powi(2);
    let diff = &moved.to_matrix().pdet() - &s.to_matrix().pdet();
    Ok(Outcome::Residual(diff.magnitude() / scale.max(1.0)))
}

fn basepoint_equivariance(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let a = random_sl2(n, rng)?;
    let k = spinor_with_corners(n, rng)?;
    Ok(Outcome::Residual(basepoint_equivariance_residual(&a, &k)))
}

// hyperbolic

fn pipeline_center(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = spinor_with_corners(n, rng)?;
    let ratio = k.ratio();
    let scale = ratio.finite().map_or(1.0, |c| c.abs().max(1.0));
    Ok(Outcome::Residual(boundary_center(&k).distance(&ratio) / scale / pipeline_condition(&k)))
}

/// T/(T − Z) of φ₁(κ): the pipeline reads T − Z = 2|η|² off the light-cone
/// point, so its relative accuracy is ε times this factor.
pub fn pipeline_condition(k: &LipschitzSpinor) -> f64 {
    let p = basepoint(k);
    let tz = p.t - p.z;
    if tz > 0.0 {
        (p.t / tz).max(1.0)
    } else {
        1.0
    }
}

fn closed_form_vs_pipeline(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = spinor_with_corners(n, rng)?;
    let piped = horosphere_from_lightcone(&horoclif_core::minkowski::multiflag(&k))?;
    Ok(Outcome::Residual(horosphere_residual(&horosphere(&k), &piped) / pipeline_condition(&k)))
}

fn decoration_orthogonality(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let h = horosphere(&spinor_with_corners(n, rng)?);
    let ds = h.decorations();
    let mut r = 0.0f64;
    for (i, a) in ds.iter().enumerate() {
        r = r.max((a.abs() - 1.0).abs());
        for b in &ds[i + 1..] {
            r = r.max(a.as_multivector().dot(b.as_multivector())?.abs());
        }
    }
    Ok(Outcome::Residual(r))
}

fn decoration_equivariance(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let sig = Signature::negative(n)?;
    let s = random_lipschitz(n, rng)?;
    let zero = Multivector::zero(sig);
    let k = if rng.random::<bool>() { LipschitzSpinor::new(s, zero)? } else { LipschitzSpinor::new(zero, s)? };
    let g = random_generator(n, rng)?;
    let before = horosphere(&k);
    let after = horosphere(&g.matrix(sig).act_on_spinor(&k));
    let r = before
        .decorations()
        .iter()
        .zip(after.decorations())
        .map(|(d, e)| transform_decoration(&g, d).as_multivector().distance(e.as_multivector()))
        .fold(0.0, f64::max);
    Ok(Outcome::Residual(r))
}

fn distance_oracle(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let (k1, k2) = (random_spinor(n, rng)?, random_spinor(n, rng)?);
    let lambda = k1.bracket(&k2).magnitude();
    if lambda <= 1e-3 {
        return Ok(Outcome::Skip);
    }
    let d = horosphere_distance(&k1, &k2)?;
    Ok(Outcome::Residual(((d / 2.0).exp() - lambda).abs() / lambda))
}

fn horosphere_membership(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let k = spinor_with_corners(n, rng)?;
    let p = basepoint(&k);
    let v = random_paravector(n, rng)?;
    let q = horosphere_point(&k, &v);
    let on_hyperboloid = (q.norm_sq() - 1.0).abs() / (q.t * q.t).max(1.0);
    let on_horosphere = (minkowski_inner(&q, &p) - 1.0).abs() / (q.euclidean_norm() * p.euclidean_norm()).max(1.0);
    Ok(Outcome::Residual(on_hyperboloid.max(on_horosphere)))
}

// lambda

fn sl_invariance(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let a = random_sl2(n, rng)?;
    let (k1, k2) = (random_spinor(n, rng)?, random_spinor(n, rng)?);
    let (a1, a2) = (a.act_on_spinor(&k1), a.act_on_spinor(&k2));
    let scale = (a1.magnitude() * a2.magnitude()).max(1.0);
    Ok(Outcome::Residual(a1.bracket(&a2).distance(&k1.bracket(&k2)) / scale))
}

/// ||λ|² − (p|q)/2| relative to |κ₁|²|κ₂|², or None under the conditioning guard.
pub fn magnitude_residual(k1: &LipschitzSpinor, k2: &LipschitzSpinor) -> Option<f64> {
    let lam = k1.bracket(k2);
    if lam.magnitude() < horoclif_core::DEGENERACY {
        return None;
    }
    let half = minkowski_inner(&basepoint(k1), &basepoint(k2)) / 2.0;
    Some((lam.norm() - half).abs() / (k1.norm_sq() * k2.norm_sq()).max(1.0))
}

fn magnitude_oracle(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let (k1, k2) = (random_spinor(n, rng)?, random_spinor(n, rng)?);
    Ok(magnitude_residual(&k1, &k2).map_or(Outcome::Skip, Outcome::Residual))
}

fn four(n: usize, rng: &mut ChaCha8Rng) -> Result<[LipschitzSpinor; 4], Error> {
    Ok([random_spinor(n, rng)?, random_spinor(n, rng)?, random_spinor(n, rng)?, random_spinor(n, rng)?])
}

fn ptolemy(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let [a, b, c, d] = four(n, rng)?;
    degenerate_as_skip(ptolemy_residual(&a, &b, &c, &d))
}

fn ptolemy_sign_flips(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    const EVEN: [u8; 8] = [0b0000, 0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100, 0b1111];
    let ks = four(n, rng)?;
    let mask = EVEN[rng.random_range(0..EVEN.len())];
    let f: Vec<LipschitzSpinor> =
        ks.iter().enumerate().map(|(i, k)| if mask >> i & 1 == 1 { k.neg() } else { k.clone() }).collect();
    let base = ptolemy_residual(&ks[0], &ks[1], &ks[2], &ks[3]);
    let flipped = ptolemy_residual(&f[0], &f[1], &f[2], &f[3]);
    match (base, flipped) {
        (Ok((r0, _)), Ok((r1, _))) => Ok(Outcome::Residual(r0.max(r1))),
        (Err(Error::Degenerate { .. }), Err(Error::Degenerate { .. })) => Ok(Outcome::Skip),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

fn skew_symmetry(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let [a, b, c, _] = four(n, rng)?;
    degenerate_as_skip(skew_symmetry_residual(&a, &b, &c))
}

fn holonomy(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let [a, b, c, d] = four(n, rng)?;
    let ell = if rng.random_range(0..4) == 0 { a.clone() } else { d };
    degenerate_as_skip(holonomy_residual(&a, &b, &c, &ell))
}

fn quasi_plucker_forms(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let [a, b, c, _] = four(n, rng)?;
    match quasi_plucker(&a, &b, &c) {
        Ok((_, r)) => Ok(Outcome::Residual(r)),
        Err(Error::Degenerate { .. }) | Err(Error::NonInvertible { .. }) => Ok(Outcome::Skip),
        Err(e) => Err(e),
    }
}

// cli

fn determinism(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let seed = rng.random();
    let once = commands::random_spinors_json(n, seed, 3);
    let twice = commands::random_spinors_json(n, seed, 3);
    let (Ok(a), Ok(b)) = (once, twice) else { return Ok(Outcome::Holds(false)) };
    let ha = commands::horosphere_json(&a);
    let hb = commands::horosphere_json(&b);
    Ok(Outcome::Holds(a == b && ha.is_ok() && ha.ok() == hb.ok()))
}

fn round_trip(n: usize, rng: &mut ChaCha8Rng) -> Result<Outcome, Error> {
    let spinors: Vec<LipschitzSpinor> = (0..4).map(|_| random_spinor(n, rng)).collect::<Result<_, _>>()?;
    let Ok(text) = commands::spinors_to_json(&spinors) else { return Ok(Outcome::Holds(false)) };
    let parsed = commands::parse_spinors(&text, None);
    let same = matches!(&parsed, Ok((back, _)) if *back == spinors);
    let lambda_ok = commands::lambda_json(&text).is_ok();
    let horo_ok = commands::horosphere_json(&text).is_ok();
    Ok(Outcome::Holds(same && lambda_ok && horo_ok))
}
