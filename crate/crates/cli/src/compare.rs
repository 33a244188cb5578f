//! Side-by-side very-ampleness multiples for several profiles.

use std::thread;

use posbounds_core::jumping::double_adjoint_multiple_threshold;
use posbounds_core::matsusaka::{matsusaka_very_ample, LambdaPolicy};
use posbounds_core::report::Threshold;
use posbounds_core::{adjoint, Rational};
use serde_json::{json, Value};

use crate::request::Profile;
use crate::run::{int, siu_very_ample, CliError, Outcome};

const KNOWN: [&str; 4] = ["jets-mu", "matsusaka", "siu", "twisted-adjoint"];

struct Row {
    theorem: String,
    profile: usize,
    bundle: &'static str,
    multiple: Result<num_bigint::BigInt, String>,
}

fn evaluate(theorem: &str, prof: &Profile, tol: &Rational) -> (&'static str, Result<num_bigint::BigInt, String>) {
    let err = |e: posbounds_core::Error| e.to_string();
    match theorem {
        "siu" => ("K+mL", siu_very_ample(prof.n).map_err(err)),
        "twisted-adjoint" => ("K+mL", adjoint::twisted_adjoint_very_ample(prof.n).map_err(err)),
        "jets-mu" => (
            "2K+mL",
            match &prof.mu {
                Some(mu) => double_adjoint_multiple_threshold(prof.n, 1, mu).map_err(err),
                None => Err("profile declares no mu".into()),
            },
        ),
        _ => (
            "mL",
            matsusaka_very_ample(prof.n, &prof.ln, &prof.lk, &LambdaPolicy::Binomial, tol)
                .map(|b| Threshold::from(b).ceil())
                .map_err(err),
        ),
    }
}

pub fn compare(profiles: &[Profile], theorems: &[String], tol: &Rational) -> Outcome {
    if let Some(t) = theorems.iter().find(|t| !KNOWN.contains(&t.as_str())) {
        return Err(CliError::Input(format!(
            "unknown theorem {t:?}; expected one of {}",
            KNOWN.join(", ")
        )));
    }
    let mut rows: Vec<Row> = thread::scope(|scope| {
        let handles: Vec<_> = profiles
            .iter()
            .enumerate()
            .map(|(i, prof)| {
                scope.spawn(move || {
                    theorems
                        .iter()
                        .map(|t| {
                            let (bundle, multiple) = evaluate(t, prof, tol);
                            Row {
                                theorem: t.clone(),
                                profile: i,
                                bundle,
                                multiple,
                            }
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("comparison worker panicked"))
            .collect()
    });
    rows.sort_by(|a, b| (&a.theorem, a.profile).cmp(&(&b.theorem, b.profile)));

    let best: Vec<Value> = (0..profiles.len())
        .filter_map(|i| {
            rows.iter()
                .filter(|r| r.profile == i)
                .filter_map(|r| r.multiple.as_ref().ok().map(|m| (m, r)))
                .min_by(|a, b| a.0.cmp(b.0))
                .map(|(m, r)| json!({"profile": i, "theorem": r.theorem, "multiple": int(m)}))
        })
        .collect();
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| match &r.multiple {
            Ok(m) => json!({"theorem": r.theorem, "profile": r.profile, "bundle": r.bundle, "multiple": int(m)}),
            Err(e) => json!({"theorem": r.theorem, "profile": r.profile, "bundle": r.bundle, "skipped": e}),
        })
        .collect();
    Ok(json!({"rows": rows, "best": best}))
}
