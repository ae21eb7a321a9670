use approx::assert_relative_eq;
use horoclif::commands::{parse_spinors, spinors_to_json};
use horoclif::output::{format_f64, to_csv_flat, to_json};
use horoclif::wire::{blade_key, multivector_from, parse_blade_key, HorosphereJson, MultivectorJson, SpinorJson};
use horoclif_core::hyperbolic::horosphere;
use horoclif_core::random::{random_multivector, random_spinor};
use horoclif_core::Signature;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn formatter_examples() {
    assert_eq!(format_f64(1.0), "1.0000000000000000");
    assert_eq!(format_f64(-0.25), "-0.25000000000000000");
    assert_eq!(format_f64(1e-7), "9.9999999999999995e-8");
    assert_eq!(format_f64(1e20), "1.0000000000000000e20");
    assert_eq!(format_f64(f64::NAN), "null");
    assert_eq!(format_f64(f64::INFINITY), "null");
}

#[test]
fn blade_keys() {
    assert_eq!(blade_key(0), "");
    assert_eq!(blade_key(0b101), "1,3");
    assert_eq!(parse_blade_key("1,3", 3).unwrap(), 0b101);
    assert!(parse_blade_key("3,1", 3).is_err());
    assert!(parse_blade_key("1,1", 3).is_err());
    assert!(parse_blade_key("4", 3).is_err());
    assert!(parse_blade_key("0", 3).is_err());
}

#[test]
fn full_multivector_accepted_inside_spinor() {
    let text = r#"{"n":1,"xi":{"p":0,"q":1,"coeffs":{"":1}},"eta":{"1":2}}"#;
    let (k, single) = parse_spinors(text, None).unwrap();
    assert!(single);
    assert_eq!(k[0].xi().coeff(0), 1.0);
    assert_eq!(k[0].eta().coeff(1), 2.0);
}

#[test]
fn csv_flattens_scalar_key() {
    let m = MultivectorJson { p: 0, q: 2, coeffs: [("".to_string(), 1.5), ("1,2".to_string(), -2.0)].into() };
    let csv = to_csv_flat(&m).unwrap();
    assert!(csv.contains("coeffs.scalar,1.5000000000000000"));
    assert!(csv.contains("\"coeffs.1,2\",-2.0000000000000000"));
}

proptest! {
    #[test]
    fn formatted_floats_round_trip(bits in any::<u64>()) {
        let v = f64::from_bits(bits);
        prop_assume!(v.is_finite());
        let s = format_f64(v);
        let back: f64 = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back.to_bits(), v.to_bits());
    }

    #[test]
    fn blade_key_round_trip(n in 0usize..=12, raw in any::<usize>()) {
        let blade = raw & ((1usize << n) - 1);
        prop_assert_eq!(parse_blade_key(&blade_key(blade), n).unwrap(), blade);
    }

    #[test]
    fn multivector_round_trip(n in 0usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_multivector(n, &mut rng).unwrap();
        let text = to_json(&MultivectorJson::from_multivector(&m)).unwrap();
        let parsed: MultivectorJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(parsed.to_multivector().unwrap(), m.clone());
        let sig = Signature::negative(n).unwrap();
        prop_assert_eq!(multivector_from(sig, &parsed.coeffs).unwrap(), m);
    }

    #[test]
    fn spinor_batch_round_trip(n in 0usize..=5, count in 1usize..5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ks: Vec<_> = (0..count).map(|_| random_spinor(n, &mut rng).unwrap()).collect();
        let (back, single) = parse_spinors(&spinors_to_json(&ks).unwrap(), Some(n)).unwrap();
        prop_assert!(!single);
        prop_assert_eq!(back, ks.clone());
        let one = to_json(&SpinorJson::from_spinor(&ks[0])).unwrap();
        prop_assert_eq!(&parse_spinors(&one, None).unwrap().0[0], &ks[0]);
    }

    #[test]
    fn horosphere_json_round_trip(n in 0usize..=4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = horosphere(&random_spinor(n, &mut rng).unwrap());
        let text = to_json(&HorosphereJson::from(&h)).unwrap();
        let back = serde_json::from_str::<HorosphereJson>(&text).unwrap().to_horosphere().unwrap();
        prop_assert_eq!(back.size().to_bits(), h.size().to_bits());
        assert_relative_eq!(back.distance(&h), 0.0);
    }
}
