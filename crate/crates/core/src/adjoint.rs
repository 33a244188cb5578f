//! Effective jet-generation thresholds for adjoint bundles, pluricanonical
//! bounds and the exception checkers on surfaces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binom, Rational};

/// Jet orders `s_1, ..., s_p` requested at distinct points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JetSpec {
    pub points: Vec<u32>,
}

impl JetSpec {
    pub fn new(points: Vec<u32>) -> Self {
        JetSpec { points }
    }

    pub fn single(s: u32) -> Self {
        JetSpec { points: vec![s] }
    }

    /// Very ampleness read as one point with 1-jets.
    pub fn very_ample() -> Self {
        Self::single(1)
    }

    /// Very ampleness read as separation of two points.
    pub fn two_points() -> Self {
        JetSpec { points: vec![0, 0] }
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.points.is_empty() {
            return Err(Error::invalid("at least one point is required"));
        }
        Ok(())
    }
}

fn require_dim(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    Ok(())
}

/// `sum_j C(3n + 2 s_j - 1, n)`.
fn siu_sum(n: u32, jets: &JetSpec) -> BigInt {
    jets.points
        .iter()
        .map(|&s| binom((3 * n + 2 * s - 1) as u64, n as i64))
        .sum()
}

/// `K + mL` generates the jets for `m >= 2 + sum_j C(3n + 2 s_j - 1, n)`.
pub fn siu_jet_threshold(n: u32, jets: &JetSpec) -> Result<BigInt> {
    require_dim(n)?;
    Ok(siu_sum(n, jets) + 2)
}

/// `2^{d-1} / floor(n/d)^d * S` for each `1 <= d <= n`.
fn degree_conditions(n: u32, sum: BigInt) -> BTreeMap<u32, Rational> {
    (1..=n)
        .map(|d| {
            let q = BigInt::from(n / d).pow(d);
            let num = (BigInt::from(1) << (d - 1)) * &sum;
            (d, Rational::new(num, q))
        })
        .collect()
}

/// Thresholds `t_d` such that `L^d . Y > t_d` for all `d`-dimensional `Y`
/// makes `K + L` generate the jets.
pub fn siu_degree_conditions(n: u32, jets: &JetSpec) -> Result<BTreeMap<u32, Rational>> {
    require_dim(n)?;
    jets.require_nonempty()?;
    Ok(degree_conditions(n, siu_sum(n, jets)))
}

/// The same shape of conditions for `2K + L`, with binomial
/// `C((n+1)(4n + 2s + 1) - 2, n)`.
pub fn double_adjoint_degree_conditions(
    n: u32,
    jets: &JetSpec,
) -> Result<BTreeMap<u32, Rational>> {
    require_dim(n)?;
    jets.require_nonempty()?;
    let sum = jets
        .points
        .iter()
        .map(|&s| binom(((n + 1) * (4 * n + 2 * s + 1) - 2) as u64, n as i64))
        .sum();
    Ok(degree_conditions(n, sum))
}

/// Very ampleness of `K + mL` from the twisted adjoint argument:
/// `m >= C(3n+1, n) - 2n`. Also the default `lambda_n`.
pub fn twisted_adjoint_very_ample(n: u32) -> Result<BigInt> {
    require_dim(n)?;
    Ok(binom((3 * n + 1) as u64, n as i64) - BigInt::from(2 * n))
}

/// Jet order `mu (n + s) + 1` that `mu F` must generate for `K + F` to
/// generate `s`-jets.
pub fn jet_order_transfer(mu: u32, n: u32, s: u32) -> Result<BigInt> {
    if mu < 1 {
        return Err(Error::invalid("mu must be positive"));
    }
    Ok(BigInt::from(mu) * BigInt::from(n + s) + 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalSign {
    /// `K` ample: bound for `mK`.
    GeneralType,
    /// `-K` ample: bound for `-mK`.
    Fano,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluricanonicalBound {
    #[serde(with = "crate::numeric::bigint")]
    pub m0: BigInt,
    /// `m0^n |K^n|`, the degree of the embedding.
    #[serde(
        default,
        with = "crate::numeric::opt_bigint",
        skip_serializing_if = "Option::is_none"
    )]
    pub degree: Option<BigInt>,
}

pub fn pluricanonical_bounds(
    n: u32,
    sign: CanonicalSign,
    kn_abs: Option<&BigInt>,
) -> Result<PluricanonicalBound> {
    require_dim(n)?;
    let base = binom((3 * n + 1) as u64, n as i64);
    let m0 = match sign {
        CanonicalSign::GeneralType => base + 4,
        CanonicalSign::Fano => base,
    };
    let degree = match kn_abs {
        Some(k) if *k <= BigInt::from(0) => {
            return Err(Error::invalid("|K^n| must be positive"));
        }
        Some(k) => Some(m0.pow(n) * k),
        None => None,
    };
    Ok(PluricanonicalBound { m0, degree })
}

/// An effective divisor on a surface, by `L.D` and `D^2`.
pub type DivisorPair = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "divisors", rename_all = "snake_case")]
pub enum SurfaceVerdict {
    /// The numerical hypothesis on `L^2` fails.
    Inapplicable,
    /// Some supplied divisors fall in the exceptional list.
    Exception(Vec<DivisorPair>),
    CriterionHolds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReiderMode {
    /// `K + L` globally generated.
    Spanned,
    /// `K + L` separates points and tangents.
    Separation,
}

impl ReiderMode {
    pub fn min_l2(self) -> i64 {
        match self {
            ReiderMode::Spanned => 5,
            ReiderMode::Separation => 10,
        }
    }

    pub fn exceptions(self) -> &'static [DivisorPair] {
        match self {
            ReiderMode::Spanned => &[(0, -1), (1, 0)],
            ReiderMode::Separation => &[(0, -1), (0, -2), (1, 0), (1, -1), (2, 0)],
        }
    }
}

pub fn reider_check(l2: i64, mode: ReiderMode, divisors: &[DivisorPair]) -> SurfaceVerdict {
    if l2 < mode.min_l2() {
        return SurfaceVerdict::Inapplicable;
    }
    let hits: Vec<DivisorPair> = divisors
        .iter()
        .filter(|d| mode.exceptions().contains(d))
        .copied()
        .collect();
    if hits.is_empty() {
        SurfaceVerdict::CriterionHolds
    } else {
        SurfaceVerdict::Exception(hits)
    }
}

/// `K + L` is `p`-very ample unless some `D` has `L.D - p <= D^2 < L.D / 2`;
/// requires `L^2 > 4p`.
pub fn bes_check(l2: i64, p: u32, divisors: &[DivisorPair]) -> Result<SurfaceVerdict> {
    if p < 1 {
        return Err(Error::invalid("p must be positive"));
    }
    if l2 <= 4 * p as i64 {
        return Ok(SurfaceVerdict::Inapplicable);
    }
    let hits: Vec<DivisorPair> = divisors
        .iter()
        .filter(|&&(ld, d2)| ld - p as i64 <= d2 && 2 * d2 < ld)
        .copied()
        .collect();
    Ok(if hits.is_empty() {
        SurfaceVerdict::CriterionHolds
    } else {
        SurfaceVerdict::Exception(hits)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceNadel {
    #[serde(with = "crate::numeric::bigint")]
    pub p: BigInt,
    pub satisfied: bool,
}

/// With `p = sum (2 + s_j)^2`, `K + L` generates the jets when `L^2 > p`
/// and `L.C > p` for every curve.
pub fn surface_nadel_criterion(jets: &JetSpec, l2: &Rational, min_lc: &Rational) -> Result<SurfaceNadel> {
    jets.require_nonempty()?;
    let p: BigInt = jets
        .points
        .iter()
        .map(|&s| BigInt::from(2 + s).pow(2))
        .sum();
    let pq = Rational::from(p.clone());
    Ok(SurfaceNadel {
        satisfied: *l2 > pq && *min_lc > pq,
        p,
    })
}
