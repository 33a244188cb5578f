//! Dispatch of resolved requests to the core library.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use posbounds_core::adjoint::{
    self, bes_check, double_adjoint_degree_conditions, jet_order_transfer, pluricanonical_bounds,
    reider_check, siu_degree_conditions, siu_jet_threshold, surface_nadel_criterion,
    twisted_adjoint_very_ample, CanonicalSign, JetSpec, ReiderMode,
};
use posbounds_core::intersection::{h0, mixed_power, DivisorClass, ProductSpace};
use posbounds_core::jumping::{
    beta_schedule, cn_constant, double_adjoint_multiple_threshold, iterated_jet_mu_threshold,
    jet_degree_consistency, jet_generation_check, mu_invariant, sigma0_for, single_mu_threshold,
    surface_table, JetCriterion, Sigma0Policy,
};
use posbounds_core::lelong::{lelong_numeric, ord_at_origin, MonomialCurve};
use posbounds_core::matsusaka::{
    lambda_n, matsusaka_main, matsusaka_very_ample, section_window,
    section_window_with_canonical, surface_comparison, MatsusakaInputs,
};
use posbounds_core::multiplier::{
    monomial_multiplier_ideal, skoda_classify, snc_round_down, MonomialWeight,
};
use posbounds_core::numpoly::{window_a, window_b, window_c, NumericalPolynomial};
use posbounds_core::positivity::{
    diag_form_check, ht_mixed_chain, ht_products, morse_existence_threshold, trapani_lower,
};
use posbounds_core::report::{certified_from_bool, BoundReport, Check, Threshold};
use posbounds_core::{Bracket, Error, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use crate::compare;
use crate::request::*;

/// Input problems exit with 2, certification failures with 3.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Uncertified(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Uncertified(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Uncertified(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Uncertified(_) => CliError::Uncertified(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub type Outcome = Result<Value, CliError>;

fn to_value(v: impl Serialize) -> Outcome {
    serde_json::to_value(v).map_err(|e| CliError::Input(e.to_string()))
}

/// A JSON number when it fits in `i64`, else a decimal string.
pub fn int(b: &BigInt) -> Value {
    i64::try_from(b).map_or_else(|_| Value::String(b.to_string()), Value::from)
}

fn jet_spec(points: &[u32]) -> Result<JetSpec, CliError> {
    if points.is_empty() {
        return Err(CliError::Input("at least one point is required".into()));
    }
    Ok(JetSpec::new(points.to_vec()))
}

pub fn run(req: &Request, tol: &Rational) -> Outcome {
    match req {
        Request::Siu(a) => {
            let jets = jet_spec(&a.jets)?;
            let t = siu_jet_threshold(a.n, &jets)?;
            to_value(
                BoundReport::new("siu")
                    .input("n", a.n)
                    .input("jets", &a.jets)
                    .with_threshold(t),
            )
        }
        Request::Degree(a) => degree_report("siu-degrees", a, siu_degree_conditions),
        Request::DoubleAdjoint(a) => {
            degree_report("double-adjoint-degrees", a, double_adjoint_degree_conditions)
        }
        Request::TwistedAdjoint(a) => to_value(
            BoundReport::new("twisted-adjoint")
                .input("n", a.n)
                .with_threshold(twisted_adjoint_very_ample(a.n)?),
        ),
        Request::Reider(a) => {
            let modes = match a.mode {
                Some(Mode::Spanned) => vec![ReiderMode::Spanned],
                Some(Mode::Separation) => vec![ReiderMode::Separation],
                None => vec![ReiderMode::Spanned, ReiderMode::Separation],
            };
            let results: Vec<Value> = modes
                .into_iter()
                .map(|m| {
                    json!({
                        "mode": m,
                        "min_l2": m.min_l2(),
                        "result": reider_check(a.l2, m, &a.divisors.0),
                    })
                })
                .collect();
            Ok(json!({"theorem": "reider", "l2": a.l2, "results": results}))
        }
        Request::Bes(a) => Ok(json!({
            "theorem": "bes",
            "l2": a.l2,
            "p": a.p,
            "result": bes_check(a.l2, a.p, &a.divisors.0)?,
        })),
        Request::Pluri(a) => {
            let sign = match a.sign {
                Sign::GeneralType => CanonicalSign::GeneralType,
                Sign::Fano => CanonicalSign::Fano,
            };
            let kn = a.kn.map(BigInt::from);
            let b = pluricanonical_bounds(a.n, sign, kn.as_ref())?;
            let mut r = BoundReport::new("pluricanonical")
                .input("n", a.n)
                .input("sign", sign)
                .with_threshold(b.m0.clone());
            if let Some(d) = &b.degree {
                r = r.note(format!("embedding degree {d}"));
            }
            let mut v = to_value(r)?;
            v["bound"] = to_value(&b)?;
            Ok(v)
        }
        Request::Surface(a) => {
            let jets = jet_spec(&a.jets)?;
            let s = surface_nadel_criterion(&jets, &a.l2, &a.min_lc)?;
            let p = Threshold::Integer(s.p.clone());
            let pq = Rational::from(s.p.clone());
            let mut r = BoundReport::new("surface-jets")
                .input("jets", &a.jets)
                .input("l2", &a.l2)
                .input("min_lc", &a.min_lc);
            for (label, lhs) in [("L^2 > p", &a.l2), ("L.C > p", &a.min_lc)] {
                r.push_check(Check {
                    label: label.into(),
                    p: None,
                    lhs: Some(Threshold::Rational(lhs.clone())),
                    rhs: p.clone(),
                    strict: true,
                    outcome: certified_from_bool(lhs > &pq),
                });
            }
            to_value(r.with_threshold(s.p).conclude())
        }
        Request::JetsMain(a) => jets_main(a, tol),
        Request::JetsTable(a) => to_value(surface_table(a.s.iter().copied())),
        Request::Mu(a) => {
            let mu = mu_invariant(&a.per_dim.0, a.n, tol)?;
            let mut v = json!({"theorem": "mu", "n": a.n, "mu": mu});
            if let Some(s) = a.s {
                v["s"] = json!(s);
                v["violations"] = json!(jet_degree_consistency(s, &a.per_dim.0));
            }
            Ok(v)
        }
        Request::MuThreshold(a) => {
            let mut v = json!({
                "theorem": "mu-threshold",
                "n": a.n,
                "s": a.s,
                "iterated": int(&iterated_jet_mu_threshold(a.n, a.s, a.special)?),
                "single": int(&single_mu_threshold(a.n, a.s)?),
            });
            if let Some(mu) = &a.mu {
                let m = double_adjoint_multiple_threshold(a.n, a.s, mu)?;
                v["mu"] = to_value(mu)?;
                v["threshold"] = to_value(Threshold::Integer(m))?;
            }
            if let Some(mu) = a.mu.as_ref().and_then(|m| m.to_integer()) {
                if let Ok(k) = u32::try_from(&mu) {
                    v["jet_order"] = int(&jet_order_transfer(k, a.n, a.s)?);
                }
            }
            Ok(v)
        }
        Request::Cn(a) => Ok(json!({
            "theorem": "cn",
            "n": a.n,
            "beta": beta_schedule(a.n, tol)?,
            "cn": cn_constant(a.n, tol)?,
        })),
        Request::Matsusaka(a) => matsusaka(a, tol),
        Request::Morse(a) => morse(a),
        Request::MultIdeal(a) => mult_ideal(a),
        Request::Lelong(a) => {
            let [u, v] = a.cusp[..] else {
                return Err(CliError::Input("--cusp takes exactly two integers".into()));
            };
            let curve = MonomialCurve::new(u, v)?;
            ord_at_origin(&curve.equation())?;
            to_value(lelong_numeric(curve, &a.radii)?)
        }
        Request::Poly(a) => {
            let p = NumericalPolynomial::from_ints(&a.coeffs)?;
            let d = p.degree() as i64;
            let (m, hi) = match a.variant {
                Variant::A => (window_a(&p, a.m0, a.n)?, a.m0 + a.n * d),
                Variant::B => (window_b(&p, a.m0, a.n)?, a.m0 + a.n * d),
                Variant::C => (window_c(&p, a.m0, a.n)?, a.m0 + a.n),
            };
            Ok(json!({
                "variant": a.variant,
                "window": [a.m0, hi],
                "m": m,
                "value": int(&p.eval(m)),
            }))
        }
        Request::HtProducts(a) => {
            let selfints: Vec<Bracket> = a.selfints.iter().cloned().map(Bracket::exact).collect();
            to_value(ht_products(&selfints, &a.mixed, tol)?)
        }
        Request::HtChain(a) => to_value(ht_mixed_chain(&a.ln, &a.lh, &a.lp_h, a.n, a.p, tol)?),
        Request::HtDiag(a) => to_value(diag_form_check(&a.lambdas, a.p, tol)?),
        Request::Compare(a) => compare::compare(&a.profiles, &a.theorems, tol),
    }
}

fn degree_report(
    theorem: &str,
    a: &DegreeArgs,
    f: fn(u32, &JetSpec) -> posbounds_core::Result<BTreeMap<u32, Rational>>,
) -> Outcome {
    let jets = jet_spec(&a.jets)?;
    let conditions = f(a.n, &jets)?;
    let mut r = BoundReport::new(theorem)
        .input("n", a.n)
        .input("jets", &a.jets);
    if let Some(declared) = &a.declared {
        r = r.input("declared", &declared.0);
        for (d, t) in &conditions {
            let lhs = declared.0.get(d);
            if lhs.is_none() {
                r = r.note(format!("no minimum declared for dimension {d}"));
            }
            r.push_check(Check {
                label: format!("L^{d}.Y > t_{d}"),
                p: Some(*d),
                lhs: lhs.cloned().map(Threshold::Rational),
                rhs: Threshold::Rational(t.clone()),
                strict: true,
                outcome: certified_from_bool(lhs.is_some_and(|v| v > t)),
            });
        }
        r = r.conclude();
    }
    let mut v = to_value(r)?;
    v["conditions"] = to_value(&conditions)?;
    Ok(v)
}

fn jets_main(a: &JetsMainArgs, tol: &Rational) -> Outcome {
    let jets = jet_spec(&a.jets)?;
    let sigma0 = match &a.sigma0 {
        Some(s) => s.clone(),
        None => {
            let policy = match a.policy {
                SigmaPolicy::Sum => Sigma0Policy::Sum,
                SigmaPolicy::TwiceNn => Sigma0Policy::TwiceNn,
                SigmaPolicy::MaxOfBoth => Sigma0Policy::MaxOfBoth,
            };
            sigma0_for(&jets, a.n, policy)?
        }
    };
    let beta = if a.beta.is_empty() {
        // Upper ends of the schedule; any increasing sequence is admissible.
        beta_schedule(a.n, tol)?
            .into_iter()
            .map(|b| b.hi().clone())
            .collect()
    } else {
        a.beta.clone()
    };
    let crit = JetCriterion {
        n: a.n,
        sigma0,
        a: a.a.clone(),
        beta,
        min_y: a.min_y.0.clone(),
        ln: a.ln.clone(),
        nef_twist: a.nef_twist,
    };
    to_value(jet_generation_check(&crit, tol)?)
}

fn matsusaka(a: &MatsusakaArgs, tol: &Rational) -> Outcome {
    let inp = MatsusakaInputs {
        n: a.n,
        ln: a.ln.clone(),
        lb: a.lb.clone(),
        lk: a.lk.clone(),
        lh: a.lh.clone(),
        policy: a.policy.0.clone(),
    };
    let main = matsusaka_main(&inp, tol)?;
    let main_t = Threshold::from(main);
    let mut v = json!({
        "theorem": "matsusaka",
        "n": a.n,
        "lambda": int(&lambda_n(a.n, &a.policy.0)?),
        "LH": inp.lh()?,
        "main": {"bound": main_t, "min_m": int(&main_t.ceil())},
        "windows": {
            "simple": int(&section_window(a.n, &a.lb, &a.ln)?),
            "with_canonical": int(&section_window_with_canonical(a.n, &a.lb, &a.lk, &a.ln)?),
        },
    });
    if a.lb.is_zero() {
        let va = Threshold::from(matsusaka_very_ample(a.n, &a.ln, &a.lk, &a.policy.0, tol)?);
        v["very_ample"] = json!({"bound": va, "min_m": int(&va.ceil())});
    }
    if a.n == 2 {
        let x = &a.lk + Rational::from(4) * &a.ln;
        if let Ok(c) = surface_comparison(&a.ln, &x) {
            v["surface_comparison"] = to_value(c)?;
        }
    }
    Ok(v)
}

fn morse(a: &MorseArgs) -> Outcome {
    let mut v = json!({"theorem": "morse", "n": a.n});
    let (fn_, fg) = match (&a.fn_, &a.fg, a.a) {
        (Some(f), Some(g), None) => (f.clone(), g.clone()),
        (None, None, Some(coef)) => {
            if a.b.len() != a.n as usize {
                return Err(CliError::Input(format!("--b needs {} entries", a.n)));
            }
            let space = ProductSpace::p1_power(a.n)?;
            let f = DivisorClass::from_ints(&space, &vec![coef; a.n as usize])?;
            let g = DivisorClass::from_ints(&space, &a.b)?;
            let n = a.n as usize;
            let fn_ = Rational::from(mixed_power(&f, n, &g, 0)?);
            let fg = Rational::from(mixed_power(&f, n - 1, &g, 1)?);
            let max_b = a.b.iter().copied().max().unwrap_or(0).max(0);
            let oracle = (max_b + coef - 1) / coef;
            v["oracle"] = json!(oracle);
            let m = morse_existence_threshold(&fn_, &fg, a.n)?;
            let mf_g = f.scaled(&m).minus(&g)?;
            v["oracle_sections"] = json!(h0(&mf_g) > BigInt::from(0));
            (fn_, fg)
        }
        _ => {
            return Err(CliError::Input(
                "give either --Fn and --FG, or the fixture --a and --b".into(),
            ))
        }
    };
    v["Fn"] = to_value(&fn_)?;
    v["FG"] = to_value(&fg)?;
    v["threshold"] = to_value(Threshold::Integer(morse_existence_threshold(&fn_, &fg, a.n)?))?;
    v["trapani_lower"] = to_value(trapani_lower(&fn_, &fg, a.n))?;
    Ok(v)
}

fn mult_ideal(a: &MultIdealArgs) -> Outcome {
    match (a.alpha.is_empty(), a.snc.is_empty()) {
        (false, true) => {
            let w = MonomialWeight::new(a.alpha.clone())?;
            let id = monomial_multiplier_ideal(&w);
            let mut v = to_value(&id)?;
            v["trivial"] = json!(id.is_trivial());
            if a.alpha.iter().all(|x| *x == a.alpha[0]) {
                v["skoda"] = to_value(skoda_classify(&a.alpha[0], a.alpha.len() as u32)?)?;
            }
            Ok(v)
        }
        (true, false) => {
            let r: Vec<Value> = snc_round_down(&a.snc)?.iter().map(int).collect();
            Ok(json!({"round_down": r}))
        }
        _ => Err(CliError::Input("give exactly one of --alpha and --snc".into())),
    }
}

pub(crate) fn siu_very_ample(n: u32) -> posbounds_core::Result<BigInt> {
    adjoint::siu_jet_threshold(n, &JetSpec::very_ample())
}
