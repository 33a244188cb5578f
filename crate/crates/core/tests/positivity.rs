use num_bigint::BigInt;
use posbounds_core::intersection::{h0, mixed_power, top_intersection, DivisorClass, ProductSpace};
use posbounds_core::numeric::{Bracket, Rational};
use posbounds_core::positivity::{
    diag_form_check, expand_cup, ht_mixed_chain, ht_products, morse_existence_threshold,
    morse_strong_rhs, singular_morse_aq, MixedNumbers,
};
use posbounds_core::report::Certified;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tol() -> Rational {
    Rational::new(1, 1_000_000_000_000i64)
}

fn space() -> impl Strategy<Value = ProductSpace> {
    prop::collection::vec(1u32..3, 1..4).prop_map(|d| ProductSpace::new(d).unwrap())
}

fn nef(space: &ProductSpace, rng: &mut ChaCha8Rng) -> DivisorClass {
    let c: Vec<i64> = (0..space.factors()).map(|_| rng.gen_range(0..5)).collect();
    DivisorClass::from_ints(space, &c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn diag_form(l in prop::collection::vec((1i64..50, 1i64..9), 1..6), p in 1u32..6) {
        let lambdas: Vec<Rational> = l.iter().map(|&(a, b)| Rational::new(a, b)).collect();
        let n = lambdas.len() as u32;
        let p = p.min(n);
        let c = diag_form_check(&lambdas, p, &tol()).unwrap();
        prop_assert_eq!(c.outcome, Certified::Holds);
        let all_equal = lambdas.iter().all(|x| *x == lambdas[0]);
        prop_assert_eq!(c.equality, all_equal || p == n);
        prop_assert!(!c.slack.hi().is_negative());
    }

    #[test]
    fn diag_equal_entries(a in (1i64..50, 1i64..9), n in 1usize..6, p in 1u32..6) {
        let lambdas = vec![Rational::new(a.0, a.1); n];
        let c = diag_form_check(&lambdas, p.min(n as u32), &tol()).unwrap();
        prop_assert!(c.equality);
    }

    #[test]
    fn ht_on_fixtures(space in space(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = space.dim() as usize;
        let us: Vec<DivisorClass> = (0..n).map(|_| nef(&space, &mut rng)).collect();
        let selfints: Vec<Bracket> = us
            .iter()
            .map(|u| Bracket::exact(top_intersection(&vec![u.clone(); n]).unwrap().into()))
            .collect();
        let mixed: Rational = top_intersection(&us).unwrap().into();
        let c = ht_products(&selfints, &mixed, &tol()).unwrap();
        prop_assert_eq!(c.outcome, Certified::Holds);

        let (l, h) = (&us[0], &us[n - 1]);
        let ln: Rational = mixed_power(l, n, h, 0).unwrap().into();
        let lh: Rational = mixed_power(l, n - 1, h, 1).unwrap().into();
        for p in 1..=n {
            let lp: Rational = mixed_power(l, n - p, h, p).unwrap().into();
            let c = ht_mixed_chain(&ln, &lh, &lp, n as u32, p as u32, &tol()).unwrap();
            prop_assert_eq!(c.outcome, Certified::Holds, "p={}", p);
        }
    }

    #[test]
    fn morse_telescopes(space in space(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = space.dim();
        let f = nef(&space, &mut rng);
        let g = nef(&space, &mut rng);
        let values: Vec<Rational> = (0..=n as usize)
            .map(|j| mixed_power(&f, n as usize - j, &g, j).unwrap().into())
            .collect();
        let rhs = morse_strong_rhs(&MixedNumbers::new(n, values), n).unwrap();
        let diff: Rational = top_intersection(&vec![f.minus(&g).unwrap(); n as usize]).unwrap().into();
        let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
        prop_assert_eq!(rhs, sign * diff);
    }

    #[test]
    fn cup_expansion_by_convolution(n in 1u32..6, q in 0u32..6, b in (0i64..9, 1i64..5), seed in any::<u64>()) {
        let q = q.min(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u_l: Vec<Rational> = (0..=n).map(|_| Rational::from(rng.gen_range(-5i64..6))).collect();
        let b = Rational::new(b.0, b.1);
        // Coefficients of u^k in (L + b u)^(n-q), built one factor at a time.
        let mut poly = vec![Rational::one()];
        for _ in 0..n - q {
            let mut next = vec![Rational::zero(); poly.len() + 1];
            for (k, c) in poly.iter().enumerate() {
                next[k] += c.clone();
                next[k + 1] += c * &b;
            }
            poly = next;
        }
        let oracle: Rational = poly.iter().enumerate().map(|(k, c)| c * &u_l[q as usize + k]).sum();
        let cup = expand_cup(n, q, &b, &u_l).unwrap();
        prop_assert_eq!(&cup, &oracle);
        let aq = singular_morse_aq(n, q, &b, &cup).unwrap();
        let fact = |k: u32| (1..=k).map(|i| Rational::from(i as i64)).product::<Rational>();
        prop_assert_eq!(aq * fact(q) * fact(n - q), b.pow(q as i64) * cup);
    }
}

#[test]
fn morse_threshold_suffices_on_p1_powers() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=5u32);
        let a = rng.gen_range(1..=5i64);
        let b: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=20)).collect();
        let space = ProductSpace::p1_power(n).unwrap();
        let f = DivisorClass::from_ints(&space, &vec![a; n as usize]).unwrap();
        let g = DivisorClass::from_ints(&space, &b).unwrap();
        let fn_: Rational = mixed_power(&f, n as usize, &g, 0).unwrap().into();
        let fg: Rational = mixed_power(&f, n as usize - 1, &g, 1).unwrap().into();
        let m = morse_existence_threshold(&fn_, &fg, n).unwrap();
        let mf_g = f.scaled(&m).minus(&g).unwrap();
        assert!(h0(&mf_g.scaled(&BigInt::from(3))) > BigInt::from(0));
        assert!(&m * a >= BigInt::from(*b.iter().max().unwrap()));
    }
}
