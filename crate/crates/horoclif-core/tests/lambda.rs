mod common;

use common::{gen, one, rel, rng, scalar, sig, spinor};
use horoclif_core::clifford::{Multivector, Signature};
use horoclif_core::hyperbolic::horosphere_distance;
use horoclif_core::lambda::{
    holonomy_residual, lambda_length, ptolemy_residual, quasi_plucker, quasi_plucker_delta, quasi_plucker_s,
    skew_symmetry_residual, LambdaMatrix, Mat2,
};
use horoclif_core::minkowski::{basepoint, minkowski_inner};
use horoclif_core::random::{random_lipschitz, random_paravector, random_sl2, random_spinor};
use horoclif_core::{Error, LipschitzSpinor};
use proptest::prelude::*;
use rand::Rng;

fn zero(n: usize) -> Multivector {
    Multivector::zero(sig(n))
}

fn spinors(n: usize, m: usize, r: &mut rand_chacha::ChaCha8Rng) -> Vec<LipschitzSpinor> {
    (0..m).map(|_| random_spinor(n, r).unwrap()).collect()
}

/// Matrix of left multiplication by x in the blade basis.
fn left_regular(x: &Multivector) -> Vec<Vec<f64>> {
    let s = x.sig();
    let dim = s.blades();
    let mut m = vec![vec![0.0; dim]; dim];
    for b in 0..dim {
        let col = x * &Multivector::blade(s, b);
        for (row, c) in m.iter_mut().zip(col.coeffs()) {
            row[b] = *c;
        }
    }
    m
}

/// Gauss–Jordan inverse with partial pivoting.
fn invert(mut m: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = m.len();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    for k in 0..n {
        let p = (k..n).max_by(|&a, &b| m[a][k].abs().total_cmp(&m[b][k].abs())).unwrap();
        m.swap(k, p);
        inv.swap(k, p);
        let d = m[k][k];
        for j in 0..n {
            m[k][j] /= d;
            inv[k][j] /= d;
        }
        for i in 0..n {
            if i != k {
                let f = m[i][k];
                for j in 0..n {
                    m[i][j] -= f * m[k][j];
                    inv[i][j] -= f * inv[k][j];
                }
            }
        }
    }
    inv
}

/// Entry (k, j) of A⁻¹, 1-based, via the real representation of the 2×2 matrix.
fn inverse_entry_oracle(a: &Mat2, k: usize, j: usize) -> Multivector {
    let s: Signature = a.a.sig();
    let dim = s.blades();
    let blocks = [[left_regular(&a.a), left_regular(&a.b)], [left_regular(&a.c), left_regular(&a.d)]];
    let mut big = vec![vec![0.0; 2 * dim]; 2 * dim];
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, block) in row.iter().enumerate() {
            for r in 0..dim {
                for c in 0..dim {
                    big[bi * dim + r][bj * dim + c] = block[r][c];
                }
            }
        }
    }
    let inv = invert(big);
    // The first column of a left-multiplication block holds the element itself.
    let coeffs = (0..dim).map(|r| inv[(k - 1) * dim + r][(j - 1) * dim]).collect();
    Multivector::from_coeffs(s, coeffs).unwrap()
}

#[test]
fn lambda_spot_values() {
    let n = 3;
    let base = spinor(one(n), zero(n));
    assert_eq!(lambda_length(&base, &spinor(zero(n), one(n))), one(n));
    let mut r = rng(21);
    for _ in 0..50 {
        let u = random_paravector(n, &mut r).unwrap().into_multivector();
        assert!(rel(&lambda_length(&base, &spinor(zero(n), u.clone())), &u) < 1e-15);
        let eta = random_lipschitz(n, &mut r).unwrap();
        assert!(rel(&lambda_length(&base, &spinor(zero(n), eta.clone())), &eta) < 1e-15);
    }
}

#[test]
fn elementary_tuple() {
    let n = 2;
    let ks = [spinor(one(n), zero(n)), spinor(zero(n), one(n)), spinor(one(n), one(n)), spinor(gen(n, 1), one(n))];
    let table = LambdaMatrix::new(ks.to_vec()).unwrap();
    let i1 = gen(n, 1);
    assert_eq!(table.get(0, 1), &one(n));
    assert_eq!(table.get(0, 2), &one(n));
    assert_eq!(table.get(0, 3), &one(n));
    assert_eq!(table.get(1, 2), &scalar(n, -1.0));
    assert_eq!(table.get(1, 3), &-&i1);
    assert_eq!(table.get(2, 3), &(&one(n) - &i1));
    let (res, cond) = ptolemy_residual(&ks[0], &ks[1], &ks[2], &ks[3]).unwrap();
    assert!(res < 1e-10);
    assert_eq!(cond, 1.0);
}

#[test]
fn lambda_matrix_shape() {
    let mut r = rng(22);
    let ks = spinors(3, 5, &mut r);
    let t = LambdaMatrix::new(ks.clone()).unwrap();
    assert_eq!(t.len(), 5);
    for (i, k) in ks.iter().enumerate() {
        assert!(t.get(i, i).magnitude() < 1e-12 * k.norm_sq());
    }
    let scale = ks.iter().map(|k| k.norm_sq()).fold(1.0, f64::max);
    assert!(t.antisymmetry_residual() < 1e-12 * scale);
    let other = random_spinor(2, &mut r).unwrap();
    let mut mixed = ks;
    mixed.push(other);
    assert!(matches!(LambdaMatrix::new(mixed), Err(Error::SignatureMismatch(..))));
}

#[test]
fn shared_center_is_degenerate() {
    let n = 2;
    let k1 = spinor(one(n), zero(n));
    let k1b = spinor(scalar(n, 2.0), zero(n));
    let (k2, k3) = (spinor(zero(n), one(n)), spinor(one(n), one(n)));
    assert!(matches!(ptolemy_residual(&k1, &k1b, &k2, &k3), Err(Error::Degenerate { .. })));
    assert!(matches!(skew_symmetry_residual(&k1, &k1b, &k2), Err(Error::Degenerate { .. })));
    assert!(matches!(holonomy_residual(&k1, &k1b, &k2, &k3), Err(Error::Degenerate { .. })));
    assert!(matches!(quasi_plucker_delta(&k1b, &k2, &k1), Err(Error::Degenerate { .. })));
}

#[test]
fn quasideterminant_examples() {
    let n = 2;
    let id = Mat2::new(one(n), zero(n), zero(n), one(n));
    assert_eq!(id.quasideterminant(1, 1).unwrap().value, one(n));
    assert_eq!(id.quasideterminant(2, 2).unwrap().value, one(n));
    assert!(matches!(id.quasideterminant(1, 2), Err(Error::Degenerate { .. })));
    assert!(matches!(id.quasideterminant(3, 1), Err(Error::Index { .. })));
    assert!(matches!(id.quasideterminant(1, 0), Err(Error::Index { .. })));

    let (a, b, c, d) = (2.0, -3.0, 0.5, 4.0);
    let m = Mat2::new(scalar(n, a), scalar(n, b), scalar(n, c), scalar(n, d));
    let det = a * d - b * c;
    let expected = [((1, 1), det / d), ((1, 2), -det / c), ((2, 1), -det / b), ((2, 2), det / a)];
    for ((i, j), v) in expected {
        let q = m.quasideterminant(i, j).unwrap().value;
        assert!((q.real_part() - v).abs() < 1e-14 * v.abs(), "{i}{j}");
        assert!(q.real_residual() == 0.0);
    }
}

#[test]
fn quasideterminants_match_inverse_oracle() {
    let mut r = rng(23);
    for n in 1..=3 {
        for _ in 0..40 {
            let (k1, k2) = (random_spinor(n, &mut r).unwrap(), random_spinor(n, &mut r).unwrap());
            let a = Mat2::from_columns(&k1, &k2);
            if [&a.a, &a.b, &a.c, &a.d].iter().any(|e| e.magnitude() < 1e-3) {
                continue;
            }
            for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                let q = a.quasideterminant(i, j).unwrap().value;
                let oracle = inverse_entry_oracle(&a, j, i).inverse().unwrap();
                assert!(rel(&q, &oracle) < 1e-8, "n={n} ({i},{j})");
            }
            let inv = a.inverse().unwrap();
            let prod = a.mul(&inv);
            let mag = [&a.a, &a.b, &a.c, &a.d].iter().map(|e| e.magnitude()).sum::<f64>()
                * [&inv.a, &inv.b, &inv.c, &inv.d].iter().map(|e| e.magnitude()).sum::<f64>();
            let id = Mat2::new(one(n), zero(n), zero(n), one(n));
            for (x, y) in [(&prod.a, &id.a), (&prod.b, &id.b), (&prod.c, &id.c), (&prod.d, &id.d)] {
                assert!(x.distance(y) < 1e-10 * mag);
            }
        }
    }
}

#[test]
fn holonomy_with_repeated_index() {
    let mut r = rng(24);
    let mut checked = 0;
    while checked < 100 {
        let n = r.random_range(1..=4);
        let ks = spinors(n, 3, &mut r);
        match holonomy_residual(&ks[0], &ks[2], &ks[1], &ks[0]) {
            Ok((res, _)) => {
                assert!(res < 1e-9);
                checked += 1;
            }
            Err(Error::Degenerate { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ptolemy_random(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let ks = spinors(n, 4, &mut r);
        match ptolemy_residual(&ks[0], &ks[1], &ks[2], &ks[3]) {
            Ok((res, cond)) => {
                prop_assert!(cond >= 1e-3);
                prop_assert!(res < 1e-8, "{}", res);
            }
            Err(Error::Degenerate { conditioning }) => prop_assert!(conditioning < 1e-3),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
    }

    #[test]
    fn ptolemy_sign_flips(seed in any::<u64>(), n in 1usize..=4, pick in 0usize..8) {
        let mut r = rng(seed);
        let ks = spinors(n, 4, &mut r);
        let mask = [0u8, 3, 5, 6, 9, 10, 12, 15][pick];
        let flipped: Vec<LipschitzSpinor> =
            ks.iter().enumerate().map(|(i, k)| if mask >> i & 1 == 1 { k.neg() } else { k.clone() }).collect();
        if let Ok((res, _)) = ptolemy_residual(&ks[0], &ks[1], &ks[2], &ks[3]) {
            let (res2, _) = ptolemy_residual(&flipped[0], &flipped[1], &flipped[2], &flipped[3]).unwrap();
            prop_assert!((res - res2).abs() < 1e-10);
        }
    }

    #[test]
    fn skew_and_holonomy_random(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let ks = spinors(n, 4, &mut r);
        if let Ok((res, _)) = skew_symmetry_residual(&ks[0], &ks[1], &ks[2]) {
            prop_assert!(res < 1e-9, "skew {}", res);
        }
        if let Ok((res, _)) = holonomy_residual(&ks[0], &ks[1], &ks[2], &ks[3]) {
            prop_assert!(res < 1e-8, "holonomy {}", res);
        }
    }

    #[test]
    fn quasi_plucker_forms_agree(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let ks = spinors(n, 3, &mut r);
        match quasi_plucker(&ks[0], &ks[1], &ks[2]) {
            Ok((q, disagreement)) => {
                prop_assert!(disagreement < 1e-9, "{}", disagreement);
                let again = quasi_plucker_delta(&ks[0], &ks[1], &ks[2]).unwrap();
                prop_assert_eq!(&q, &again);
                let s1 = quasi_plucker_s(1, &ks[0], &ks[1], &ks[2]).unwrap();
                prop_assert!(rel(&s1.value, &again.value) < 1e-9);
            }
            Err(Error::Degenerate { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
    }

    #[test]
    fn sl_invariance(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let a = random_sl2(n, &mut r).unwrap();
        let ks = spinors(n, 3, &mut r);
        let moved: Vec<LipschitzSpinor> = ks.iter().map(|k| a.act_on_spinor(k)).collect();
        let (t, u) = (LambdaMatrix::new(ks).unwrap(), LambdaMatrix::new(moved.clone()).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                let scale = moved[i].magnitude() * moved[j].magnitude();
                prop_assert!(t.get(i, j).distance(u.get(i, j)) < 1e-9 * scale.max(1.0));
            }
        }
    }

    #[test]
    fn magnitude_oracle(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let (k1, k2) = (random_spinor(n, &mut r).unwrap(), random_spinor(n, &mut r).unwrap());
        let lam = lambda_length(&k1, &k2).magnitude();
        prop_assume!(lam > 1e-3);
        let (p, q) = (basepoint(&k1), basepoint(&k2));
        let pq = minkowski_inner(&p, &q);
        let scale = p.euclidean_norm() * q.euclidean_norm();
        prop_assert!((lam * lam - pq / 2.0).abs() < 1e-8 * scale.max(1.0));
        let d = horosphere_distance(&k1, &k2).unwrap();
        prop_assert!(((d / 2.0).exp() - lam).abs() < 1e-8 * lam);
    }
}
