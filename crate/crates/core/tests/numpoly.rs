use num_bigint::BigInt;
use posbounds_core::numeric::{binom_signed, Rational};
use posbounds_core::numpoly::{
    iterated_difference, leading_coeff_rr, window_a, window_b, window_c, NumericalPolynomial,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `sum c_j C(m - m0, j)` with `c_j >= 0`, `c_d >= 1`: nonnegative on `[m0, oo)`.
fn random_case(rng: &mut ChaCha8Rng) -> (Vec<BigInt>, i64, NumericalPolynomial) {
    let d = rng.gen_range(1..=5);
    let mut c: Vec<BigInt> = (0..=d).map(|_| BigInt::from(rng.gen_range(0..6))).collect();
    c[d] = BigInt::from(rng.gen_range(1..6));
    let m0 = rng.gen_range(-20..20);
    let p = NumericalPolynomial::shifted(&c, m0).unwrap();
    (c, m0, p)
}

fn direct(c: &[BigInt], m0: i64, m: i64) -> BigInt {
    let x = BigInt::from(m - m0);
    c.iter()
        .enumerate()
        .map(|(j, cj)| cj * binom_signed(&x, j as u64))
        .sum()
}

#[test]
fn windows_always_succeed() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..1000 {
        let (c, m0, p) = random_case(&mut rng);
        let d = p.degree() as i64;
        let n = rng.gen_range(0..40);
        let m = window_a(&p, m0, n).unwrap();
        assert!((m0..=m0 + n * d).contains(&m));
        assert!(direct(&c, m0, m) >= BigInt::from(n));

        let k = rng.gen_range(1..8);
        let m = window_b(&p, m0, k).unwrap();
        assert!((m0..=m0 + k * d).contains(&m));
        let need = Rational::new(p.leading() * BigInt::from(k).pow(d as u32), BigInt::from(1) << (d - 1));
        assert!(Rational::from(direct(&c, m0, m)) >= need);

        let n = 2 * d * d + rng.gen_range(0..30);
        let m = window_c(&p, m0, n).unwrap();
        assert!((m0..=m0 + n).contains(&m));
        assert!(direct(&c, m0, m) >= BigInt::from(n));
    }
}

proptest! {
    #[test]
    fn shifted_basis_agrees(seed in any::<u64>(), m in -60i64..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, m0, p) = random_case(&mut rng);
        prop_assert_eq!(p.eval(m), direct(&c, m0, m));
    }

    #[test]
    fn top_difference_is_leading(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, _, p) = random_case(&mut rng);
        prop_assert_eq!(&iterated_difference(&p, p.degree()).unwrap(), c.last().unwrap());
    }
}

#[test]
fn golden() {
    let p = NumericalPolynomial::from_ints(&[0, 1, 0, 3]).unwrap();
    assert_eq!(iterated_difference(&p, 3).unwrap(), BigInt::from(3));
    assert!(iterated_difference(&p, 2).is_err());
    assert_eq!(
        leading_coeff_rr(&BigInt::from(6), 3).unwrap().0,
        Rational::one()
    );
    let q = NumericalPolynomial::from_ints(&[0, 1]).unwrap();
    assert!(window_c(&q, 0, 1).is_err());
    let json = serde_json::to_string(&q).unwrap();
    assert_eq!(json, r#"{"coeffs":[0,1]}"#);
}
