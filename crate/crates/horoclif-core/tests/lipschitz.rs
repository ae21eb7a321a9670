mod common;

use common::{gen, one, rel, rng, scalar, sig, spinor};
use horoclif_core::clifford::{Multivector, Paravector};
use horoclif_core::lipschitz::{
    cayley_dickson_conjugate, cayley_dickson_product, cayley_embed, is_lipschitz, tangent_vector,
};
use horoclif_core::random::{
    random_bi_paravector, random_lipschitz, random_multivector, random_paravector, random_sl2, random_spinor,
};
use horoclif_core::{CliffordMatrix, Error, Flavor, Generator, LipschitzSpinor, Pair, ParavectorPoint};
use proptest::prelude::*;
use rand::Rng;

fn para(c: &[f64]) -> Multivector {
    Paravector::from_components(c).unwrap().into_multivector()
}

fn pair_rel(a: &Pair, b: &Pair) -> f64 {
    a.distance(b) / a.magnitude().max(b.magnitude()).max(1.0)
}

fn point_close(a: &ParavectorPoint, b: &ParavectorPoint, tol: f64) -> bool {
    match (a, b) {
        (ParavectorPoint::Infinity, ParavectorPoint::Infinity) => true,
        (ParavectorPoint::Finite(x), ParavectorPoint::Finite(y)) => rel(x.as_multivector(), y.as_multivector()) < tol,
        _ => false,
    }
}

#[test]
fn membership_examples() {
    assert!(is_lipschitz(&para(&[0.3, -1.0, 2.0])));
    assert!(is_lipschitz(&(&gen(2, 1) * &gen(2, 2))));
    let bad = &one(3) + &(&(&gen(3, 1) * &gen(3, 2)) * &gen(3, 3));
    assert!(!is_lipschitz(&bad));
    assert!(!is_lipschitz(&Multivector::zero(sig(2))));
}

#[test]
fn spinor_validation_examples() {
    let k = spinor(one(2), Multivector::zero(sig(2)));
    assert_eq!(k.ratio(), ParavectorPoint::Infinity);
    let k = spinor(gen(2, 1), one(2));
    assert_eq!(k.ratio(), ParavectorPoint::Finite(Paravector::project(&gen(2, 1))));
    let err = LipschitzSpinor::new(&gen(2, 1) * &gen(2, 2), one(2)).unwrap_err();
    assert_eq!(err.clause(), Some("xi*conj(eta) not paravector"));
    assert!(err.residual().unwrap() > 0.5);
    let err = LipschitzSpinor::new(Multivector::zero(sig(1)), Multivector::zero(sig(1))).unwrap_err();
    assert_eq!(err.clause(), Some("both components zero"));
    let bad = &one(3) + &(&(&gen(3, 1) * &gen(3, 2)) * &gen(3, 3));
    let err = LipschitzSpinor::new(bad, one(3)).unwrap_err();
    assert_eq!(err.clause(), Some("xi not Lipschitz"));
}

#[test]
fn bracket_and_forms_examples() {
    let z = Multivector::zero(sig(2));
    let e1 = spinor(one(2), z.clone());
    let e2 = spinor(z.clone(), one(2));
    assert_eq!(e1.bracket(&e2), one(2));
    let u = para(&[0.5, 1.0, -2.0]);
    assert_eq!(e1.bracket(&spinor(z.clone(), u.clone())), u);
    assert_eq!(e1.hermitian(&e2), z);
    assert_eq!(e1.complement().as_pair(), &Pair::new(z.clone(), scalar(2, -1.0)));
    let embedded = cayley_embed(&e1, &e1).unwrap();
    assert_eq!(embedded, (one(2), z));
}

#[test]
fn matrix_examples() {
    let s = sig(2);
    let id = CliffordMatrix::identity(s);
    let checked = CliffordMatrix::new(id.a().clone(), id.b().clone(), id.c().clone(), id.d().clone(), Flavor::Sl);
    assert_eq!(checked.unwrap().pdet(), one(2));
    let inv = Generator::Invert.matrix(s);
    assert!(CliffordMatrix::new(inv.a().clone(), inv.b().clone(), inv.c().clone(), inv.d().clone(), Flavor::Sl).is_ok());
    let err = CliffordMatrix::new(one(2), one(2), one(2), one(2), Flavor::Sl).unwrap_err();
    assert_eq!(err.clause(), Some("pdet not 1"));
    let err = CliffordMatrix::new(one(2), one(2), one(2), one(2), Flavor::Gl).unwrap_err();
    assert_eq!(err.clause(), Some("pdet is zero"));
    assert!(CliffordMatrix::new(one(2), one(2), one(2), one(2), Flavor::GlMonoid).is_ok());

    let v = Paravector::from_components(&[1.0, 2.0, 3.0]).unwrap();
    let w = Paravector::from_components(&[-1.0, 0.5, 0.0]).unwrap();
    let t = Generator::Translate(v.clone()).matrix(s);
    let image = t.mobius_apply(&ParavectorPoint::Finite(w.clone()));
    let sum = Paravector::project(&(v.as_multivector() + w.as_multivector()));
    assert!(point_close(&image, &ParavectorPoint::Finite(sum), 1e-15));
    let image = inv.mobius_apply(&ParavectorPoint::Finite(w.clone()));
    let want = Paravector::project(&-w.as_multivector().inverse().unwrap());
    assert!(point_close(&image, &ParavectorPoint::Finite(want), 1e-15));
    assert_eq!(id.mobius_apply(&ParavectorPoint::Infinity), ParavectorPoint::Infinity);
    assert_eq!(inv.mobius_apply(&ParavectorPoint::Finite(Paravector::zero(s))), ParavectorPoint::Infinity);
}

#[test]
fn parabolic_at_infinity_is_translation() {
    let s = sig(3);
    let v = Paravector::from_components(&[0.2, -1.0, 0.4, 3.0]).unwrap();
    let k = spinor(one(3), Multivector::zero(s));
    let p = CliffordMatrix::parabolic_translation(&k, &v);
    assert!(p.distance(&Generator::Translate(v).matrix(s)) < 1e-15);
    let p0 = CliffordMatrix::parabolic_translation(&k, &Paravector::zero(s));
    assert!(p0.distance(&CliffordMatrix::identity(s)) < 1e-15);
}

#[test]
fn random_generators_are_valid() {
    let mut r = rng(11);
    for n in 0..=5 {
        for _ in 0..300 {
            assert!(is_lipschitz(&random_lipschitz(n, &mut r).unwrap()));
            let k = random_spinor(n, &mut r).unwrap();
            LipschitzSpinor::new(k.xi().clone(), k.eta().clone()).unwrap();
            let m = random_sl2(n, &mut r).unwrap();
            CliffordMatrix::new(m.a().clone(), m.b().clone(), m.c().clone(), m.d().clone(), Flavor::Sl).unwrap();
        }
    }
    assert!(matches!(random_lipschitz(13, &mut r), Err(Error::DimensionCap { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_identities(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let k1 = random_spinor(n, &mut r).unwrap();
        let k2 = random_spinor(n, &mut r).unwrap();
        let b12 = k1.bracket(&k2);
        prop_assert!(rel(&k2.bracket(&k1), &-b12.reverse()) < 1e-12);
        prop_assert!(b12.is_zero(0.0) || is_lipschitz(&b12));
        let a = random_multivector(n, &mut r).unwrap();
        prop_assert!(k1.bracket(&k1.mul_right(&a)).magnitude() < 1e-10 * (1.0 + k1.norm_sq() * a.magnitude()));
        let check = k1.complement();
        prop_assert!(rel(&k1.bracket(&check), &scalar(n, -k1.norm_sq())) < 1e-12);
        prop_assert!(k1.hermitian(&check).magnitude() < 1e-10 * k1.norm_sq());
        prop_assert!(rel(&k1.hermitian(&k2), &check.bracket(&k2)) < 1e-12);
        prop_assert!(pair_rel(&check.complement(), &k1.as_pair().scale(-1.0)) == 0.0);
        let (u, v) = cayley_embed(&k1, &k2).unwrap();
        prop_assert!(rel(&u, &k1.hermitian(&k2)) < 1e-10);
        prop_assert!(rel(&v, &b12) < 1e-10);
    }

    #[test]
    fn cayley_dickson_rules(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let z1 = Pair::new(random_multivector(n, &mut r).unwrap(), random_multivector(n, &mut r).unwrap());
        let z2 = Pair::new(random_multivector(n, &mut r).unwrap(), random_multivector(n, &mut r).unwrap());
        let big = sig(n).extended().unwrap();
        let e = Multivector::generator(big, n + 1);
        let embed = |z: &Pair| &z.x.embed().unwrap() + &(&e * &z.y.embed().unwrap());
        let prod = &embed(&z1) * &embed(&z2);
        prop_assert!(rel(&prod, &embed(&cayley_dickson_product(&z1, &z2))) < 1e-12);
        prop_assert!(rel(&embed(&z1).conjugate(), &embed(&cayley_dickson_conjugate(&z1))) < 1e-15);
    }

    #[test]
    fn form_scaling(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let d1 = Pair::new(random_multivector(n, &mut r).unwrap(), random_multivector(n, &mut r).unwrap());
        let d2 = Pair::new(random_multivector(n, &mut r).unwrap(), random_multivector(n, &mut r).unwrap());
        let alpha = random_lipschitz(n, &mut r).unwrap();
        let na = alpha.norm();
        let lhs = d1.mul_right(&alpha).inner(&d2.mul_right(&alpha));
        prop_assert!((lhs - na * d1.inner(&d2)).abs() < 1e-10 * na * (1.0 + d1.magnitude() * d2.magnitude()));
        let h = d1.mul_left(&alpha).hermitian(&d2.mul_left(&alpha));
        prop_assert!(rel(&h, &d1.hermitian(&d2).scale(na)) < 1e-10);
        let b = random_multivector(n, &mut r).unwrap();
        let c = random_multivector(n, &mut r).unwrap();
        let h = d1.mul_right(&b).hermitian(&d2.mul_right(&c));
        let want = &(&b.conjugate() * &d1.hermitian(&d2)) * &c;
        prop_assert!(rel(&h, &want) < 1e-10);
    }

    #[test]
    fn complement_scaling_on_paravectors(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let k = random_spinor(n, &mut r).unwrap();
        let v = random_paravector(n, &mut r).unwrap().into_multivector();
        let w = random_paravector(n, &mut r).unwrap().into_multivector();
        let lhs = k.mul_right(&v).inner(&k.mul_right(&w));
        let want = k.norm_sq() * v.dot(&w).unwrap();
        prop_assert!((lhs - want).abs() < 1e-10 * k.norm_sq() * (1.0 + v.magnitude() * w.magnitude()));
    }

    #[test]
    fn decomposition_and_orthogonality(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let k = random_spinor(n, &mut r).unwrap();
        let ab = Pair::new(random_multivector(n, &mut r).unwrap(), random_multivector(n, &mut r).unwrap());
        let (x, y) = ab.decompose(&k);
        let back = k.mul_right(&x).add(&k.complement().mul_right(&y));
        prop_assert!(pair_rel(&back, &ab) < 1e-10);
        let x = random_multivector(n, &mut r).unwrap();
        let y = random_multivector(n, &mut r).unwrap();
        let ip = k.mul_right(&x).inner(&k.complement().mul_right(&y));
        prop_assert!(ip.abs() < 1e-10 * k.norm_sq() * (1.0 + x.magnitude() * y.magnitude()));
    }

    #[test]
    fn tangent_vectors_and_lie_algebra(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let k = random_spinor(n, &mut r).unwrap();
        let v = random_paravector(n, &mut r).unwrap();
        let h = random_bi_paravector(n, &mut r).unwrap();
        prop_assert!(tangent_vector(&k, &v, &h).is_tangent_at(&k, 1e-9));
        let corner = LipschitzSpinor::new(k.xi().clone(), Multivector::zero(sig(n))).unwrap();
        prop_assert!(tangent_vector(&corner, &v, &h).is_tangent_at(&corner, 1e-9));
        let t: f64 = r.random_range(-1.0..=1.0);
        prop_assert!(is_lipschitz(&h.scale(t).exp()));
    }

    #[test]
    fn sl_action(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_sl2(n, &mut r).unwrap();
        let k1 = random_spinor(n, &mut r).unwrap();
        let k2 = random_spinor(n, &mut r).unwrap();
        let (a1, a2) = (a.act_on_spinor(&k1), a.act_on_spinor(&k2));
        let scale = (a1.magnitude() * a2.magnitude()).max(1.0);
        prop_assert!(a1.bracket(&a2).distance(&k1.bracket(&k2)) < 1e-9 * scale);
        // Components formed by cancellation below ~1e-10 relative accuracy are left unvalidated.
        let amag = [a.a(), a.b(), a.c(), a.d()].iter().map(|m| m.magnitude()).sum::<f64>();
        let floor = 1e-6 * amag * k1.magnitude();
        let resolved = |m: &Multivector| m.magnitude() == 0.0 || m.magnitude() > floor;
        if resolved(a1.xi()) && resolved(a1.eta()) {
            prop_assert!(LipschitzSpinor::new(a1.xi().clone(), a1.eta().clone()).is_ok());
        }
        prop_assert!(point_close(&a1.ratio(), &a.mobius_apply(&k1.ratio()), 1e-8));
        let inv = a.inverse_sl();
        prop_assert!(a.mul(&inv).distance(&CliffordMatrix::identity(sig(n))) < 1e-8 * (1.0 + a.a().magnitude() + a.b().magnitude() + a.c().magnitude() + a.d().magnitude()).powi(2));
    }

    #[test]
    fn ratio_equivariance_at_infinity(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_sl2(n, &mut r).unwrap();
        let s = random_lipschitz(n, &mut r).unwrap();
        let z = Multivector::zero(sig(n));
        for k in [spinor(s.clone(), z.clone()), spinor(z, s)] {
            let image = a.act_on_spinor(&k);
            prop_assert!(point_close(&image.ratio(), &a.mobius_apply(&k.ratio()), 1e-8));
        }
    }

    #[test]
    fn a_kappa_transitivity_and_parabolics(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let k1 = random_spinor(n, &mut r).unwrap();
        let k2 = random_spinor(n, &mut r).unwrap();
        let s = sig(n);
        let base = spinor(one(n), Multivector::zero(s));
        let ak = CliffordMatrix::a_kappa(&k1);
        CliffordMatrix::new(ak.a().clone(), ak.b().clone(), ak.c().clone(), ak.d().clone(), Flavor::Sl).unwrap();
        prop_assert!(pair_rel(ak.act_on_spinor(&base).as_pair(), k1.as_pair()) < 1e-12);
        let t = CliffordMatrix::transitivity(&k1, &k2);
        prop_assert!(pair_rel(t.act_on_spinor(&k1).as_pair(), k2.as_pair()) < 1e-9);
        let v = random_paravector(n, &mut r).unwrap();
        let w = random_paravector(n, &mut r).unwrap();
        let p = CliffordMatrix::parabolic_translation(&k1, &v);
        CliffordMatrix::new(p.a().clone(), p.b().clone(), p.c().clone(), p.d().clone(), Flavor::Sl).unwrap();
        let inter = (1.0 + k1.norm_sq() * v.abs()) * k1.magnitude();
        prop_assert!(p.act_on_spinor(&k1).distance(&k1) < 1e-10 * inter);
        let vw = Paravector::project(&(v.as_multivector() + w.as_multivector()));
        let composed = p.mul(&CliffordMatrix::parabolic_translation(&k1, &w));
        let scale = 1.0 + k1.norm_sq() * k1.norm_sq() * (v.abs() + w.abs());
        prop_assert!(composed.distance(&CliffordMatrix::parabolic_translation(&k1, &vw)) < 1e-10 * scale * scale);
    }
}
