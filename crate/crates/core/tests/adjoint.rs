use posbounds_core::adjoint::{
    bes_check, double_adjoint_degree_conditions, pluricanonical_bounds, reider_check,
    siu_degree_conditions, siu_jet_threshold, surface_nadel_criterion, twisted_adjoint_very_ample,
    CanonicalSign, JetSpec, ReiderMode, SurfaceVerdict,
};
use posbounds_core::numeric::Rational;
use proptest::prelude::*;

fn jets() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..4, 1..4)
}

proptest! {
    #[test]
    fn more_jets_never_lower_thresholds(n in 1u32..7, pts in jets(), extra in 0u32..4, which in 0usize..3) {
        let base = JetSpec::new(pts.clone());
        let mut raised = pts.clone();
        let i = which % raised.len();
        raised[i] += 1;
        let mut added = pts.clone();
        added.push(extra);
        for other in [JetSpec::new(raised), JetSpec::new(added)] {
            prop_assert!(siu_jet_threshold(n, &other).unwrap() >= siu_jet_threshold(n, &base).unwrap());
            let (a, b) = (siu_degree_conditions(n, &base).unwrap(), siu_degree_conditions(n, &other).unwrap());
            prop_assert!(a.iter().all(|(d, t)| &b[d] >= t));
            let (a, b) = (
                double_adjoint_degree_conditions(n, &base).unwrap(),
                double_adjoint_degree_conditions(n, &other).unwrap(),
            );
            prop_assert!(a.iter().all(|(d, t)| &b[d] >= t));
            let one = Rational::one();
            prop_assert!(
                surface_nadel_criterion(&other, &one, &one).unwrap().p
                    >= surface_nadel_criterion(&base, &one, &one).unwrap().p
            );
        }
    }
}

#[test]
fn double_adjoint_dominates() {
    for n in 1..=6 {
        for s in 0..=3 {
            let j = JetSpec::single(s);
            let siu = siu_degree_conditions(n, &j).unwrap();
            let dbl = double_adjoint_degree_conditions(n, &j).unwrap();
            for (d, t) in &siu {
                assert!(&dbl[d] > t, "n={n} s={s} d={d}");
            }
        }
    }
}

#[test]
fn reider_lists() {
    let spanned: Vec<_> = ReiderMode::Spanned.exceptions().to_vec();
    assert_eq!(spanned, vec![(0, -1), (1, 0)]);
    let sep: Vec<_> = ReiderMode::Separation.exceptions().to_vec();
    assert_eq!(sep, vec![(0, -1), (0, -2), (1, 0), (1, -1), (2, 0)]);
    assert_eq!(reider_check(4, ReiderMode::Spanned, &[]), SurfaceVerdict::Inapplicable);
    assert_eq!(reider_check(5, ReiderMode::Spanned, &[(3, 1)]), SurfaceVerdict::CriterionHolds);
    assert_eq!(
        reider_check(10, ReiderMode::Separation, &[(2, 0), (3, 3)]),
        SurfaceVerdict::Exception(vec![(2, 0)])
    );
    assert_eq!(bes_check(8, 2, &[]).unwrap(), SurfaceVerdict::Inapplicable);
    for &d in &sep {
        assert_eq!(bes_check(10, 2, &[d]).unwrap(), SurfaceVerdict::Exception(vec![d]));
    }
    assert_eq!(bes_check(10, 2, &[(4, 3)]).unwrap(), SurfaceVerdict::CriterionHolds);
}

#[test]
fn golden_thresholds() {
    assert_eq!(siu_jet_threshold(2, &JetSpec::single(1)).unwrap(), 23.into());
    assert_eq!(siu_jet_threshold(3, &JetSpec::single(1)).unwrap(), 122.into());
    assert_eq!(twisted_adjoint_very_ample(2).unwrap(), 17.into());
    assert_eq!(twisted_adjoint_very_ample(3).unwrap(), 114.into());
    let p = pluricanonical_bounds(2, CanonicalSign::GeneralType, None).unwrap();
    assert_eq!(p.m0, 25.into());
    let p = pluricanonical_bounds(3, CanonicalSign::Fano, None).unwrap();
    assert_eq!(p.m0, 120.into());
}
