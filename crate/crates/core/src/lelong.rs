//! Lelong numbers of divisor currents, numerical Lelong numbers of
//! monomial curves, and Seshadri-constant estimates.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Polynomial with integer coefficients, as a list of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Polynomial {
    pub terms: Vec<(Vec<u32>, i64)>,
}

impl Polynomial {
    pub fn new(terms: Vec<(Vec<u32>, i64)>) -> Self {
        Polynomial { terms }
    }

    /// Coefficients after merging equal exponents.
    fn collected(&self) -> BTreeMap<Vec<u32>, BigInt> {
        let mut m: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut key = e.clone();
            while key.last() == Some(&0) {
                key.pop();
            }
            *m.entry(key).or_default() += BigInt::from(*c);
        }
        m.retain(|_, c| !c.is_zero());
        m
    }
}

/// Vanishing order at the origin: least total degree of a monomial.
pub fn ord_at_origin(poly: &Polynomial) -> Result<u32> {
    poly.collected()
        .keys()
        .map(|e| e.iter().sum())
        .min()
        .ok_or_else(|| Error::invalid("order of the zero polynomial"))
}

/// `lambda [Z]` with the multiplicities of `Z` at named points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Component {
    pub lambda: Rational,
    pub id: String,
    #[serde(default)]
    pub mults: BTreeMap<String, u32>,
}

/// Finite positive combination of prime divisors.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorCurrent {
    pub components: Vec<Component>,
}

impl DivisorCurrent {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if let Some(c) = components.iter().find(|c| !c.lambda.is_positive()) {
            return Err(Error::invalid(format!(
                "coefficient of {} must be positive",
                c.id
            )));
        }
        Ok(DivisorCurrent { components })
    }

    /// `a T`.
    pub fn scaled(&self, a: &Rational) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::invalid("scaling factor must be positive"));
        }
        Ok(DivisorCurrent {
            components: self
                .components
                .iter()
                .map(|c| Component {
                    lambda: &c.lambda * a,
                    ..c.clone()
                })
                .collect(),
        })
    }

    /// `T + S`, keeping components with the same id apart.
    pub fn plus(&self, other: &DivisorCurrent) -> Self {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        DivisorCurrent { components }
    }
}

pub fn lelong_at(t: &DivisorCurrent, point: &str) -> Rational {
    t.components
        .iter()
        .map(|c| &c.lambda * Rational::from(c.mults.get(point).copied().unwrap_or(0)))
        .sum()
}

/// Components whose generic Lelong number is at least `c`.
pub fn upperlevel_set(t: &DivisorCurrent, c: &Rational) -> Result<BTreeSet<String>> {
    if !c.is_positive() {
        return Err(Error::invalid("level must be positive"));
    }
    Ok(t.components
        .iter()
        .filter(|k| &k.lambda >= c)
        .map(|k| k.id.clone())
        .collect())
}

/// The curve `t -> (t^u, t^v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialCurve {
    pub u: u32,
    pub v: u32,
}

impl MonomialCurve {
    pub fn new(u: u32, v: u32) -> Result<Self> {
        if u < 1 || u > v || u.gcd(&v) != 1 {
            return Err(Error::invalid(format!(
                "curve exponents need 1 <= u <= v and gcd 1, got ({u},{v})"
            )));
        }
        Ok(MonomialCurve { u, v })
    }

    /// Defining equation `z_2^u - z_1^v`.
    pub fn equation(&self) -> Polynomial {
        Polynomial::new(vec![(vec![0, self.u], 1), (vec![self.v, 0], -1)])
    }

    /// Parameter radius `rho` with `rho^2u + rho^2v = r^2`.
    fn parameter_radius(&self, r: f64) -> f64 {
        let g = |s: f64| s.powi(2 * self.u as i32) + s.powi(2 * self.v as i32) - r * r;
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        while g(hi) < 0.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LelongSample {
    pub r: Rational,
    pub nu: f64,
}

const PANELS: usize = 40;
const PANEL_POINTS: usize = 32;

/// Area of the curve inside the ball of radius `r`, divided by `pi r^2`.
///
/// The area is the integral of `2 pi s (u^2 s^(2u-2) + v^2 s^(2v-2))` over
/// the parameter disc `|t| <= rho`, done by Simpson on geometrically graded
/// panels toward `s = 0`.
pub fn lelong_numeric(curve: MonomialCurve, radii: &[Rational]) -> Result<Vec<LelongSample>> {
    for r in radii {
        if !r.is_positive() || *r > 1 {
            return Err(Error::invalid(format!("radius {r} outside (0, 1]")));
        }
    }
    if radii.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::invalid("radii must be strictly decreasing"));
    }
    let (u, v) = (curve.u as f64, curve.v as f64);
    let density = |s: f64| {
        2.0 * std::f64::consts::PI
            * s
            * (u * u * s.powf(2.0 * u - 2.0) + v * v * s.powf(2.0 * v - 2.0))
    };
    Ok(radii
        .iter()
        .map(|r| {
            let rf = r.to_f64();
            let rho = curve.parameter_radius(rf);
            let mut area = 0.0;
            let mut hi = rho;
            for _ in 0..PANELS {
                let lo = hi / 2.0;
                area += simpson(&density, lo, hi, PANEL_POINTS);
                hi = lo;
            }
            area += simpson(&density, 0.0, hi, PANEL_POINTS);
            LelongSample {
                r: r.clone(),
                nu: area / (std::f64::consts::PI * rf * rf),
            }
        })
        .collect())
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// A curve through the point: degree `L.C` and multiplicity there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDatum {
    pub degree: Rational,
    pub mult: u32,
}

/// `min L.C / mult_x C` over the supplied curves. Only an upper bound for
/// the Seshadri constant, which is an infimum over all curves.
pub fn seshadri_upper(curves: &[CurveDatum]) -> Result<Rational> {
    let mut best: Option<Rational> = None;
    for c in curves {
        if c.mult < 1 || c.degree.is_negative() {
            return Err(Error::invalid("curve needs mult >= 1 and degree >= 0"));
        }
        let q = &c.degree / Rational::from(c.mult);
        best = Some(match best {
            Some(b) => b.min(q),
            None => q,
        });
    }
    best.ok_or_else(|| Error::invalid("no curves supplied"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeshadriVerdicts {
    /// Lower bound for the combined bundle: sum of the parts.
    pub eps_lower: Rational,
    /// `K + L` generates `s`-jets at the point.
    pub jets_at_point: bool,
    /// `K + L` is very ample when the bound holds at every point.
    pub very_ample: bool,
}

/// Conclusions from lower bounds `eps(L_i, x)` of the parts of
/// `L = L_1 + ... + L_k`.
pub fn seshadri_thresholds(parts: &[Rational], n: u32, s: u32) -> Result<SeshadriVerdicts> {
    if parts.is_empty() {
        return Err(Error::invalid("no Seshadri bound supplied"));
    }
    if let Some(e) = parts.iter().find(|e| e.is_negative()) {
        return Err(Error::invalid(format!("Seshadri bound {e} is negative")));
    }
    let eps: Rational = parts.iter().sum();
    Ok(SeshadriVerdicts {
        jets_at_point: eps > Rational::from(n + s),
        very_ample: eps > Rational::from(2 * n),
        eps_lower: eps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(lambda: Rational, id: &str, mults: &[(&str, u32)]) -> Component {
        Component {
            lambda,
            id: id.into(),
            mults: mults.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    #[test]
    fn orders() {
        let cusp = MonomialCurve::new(2, 3).unwrap().equation();
        assert_eq!(ord_at_origin(&cusp).unwrap(), 2);
        let xy = Polynomial::new(vec![(vec![1, 1], 1)]);
        assert_eq!(ord_at_origin(&xy).unwrap(), 2);
        let unit = Polynomial::new(vec![(vec![0, 0], 1), (vec![1, 0], 1)]);
        assert_eq!(ord_at_origin(&unit).unwrap(), 0);
        let zero = Polynomial::new(vec![(vec![1], 2), (vec![1, 0], -2)]);
        assert!(ord_at_origin(&zero).is_err());
    }

    #[test]
    fn lelong_values() {
        let t = DivisorCurrent::new(vec![comp(Rational::new(5, 2), "Z1", &[("x", 1)])]).unwrap();
        assert_eq!(lelong_at(&t, "x"), Rational::new(5, 2));
        assert_eq!(lelong_at(&t, "y"), Rational::zero());
        let t = DivisorCurrent::new(vec![
            comp(Rational::one(), "Z1", &[("x", 2)]),
            comp(Rational::one(), "Z2", &[("x", 1)]),
        ])
        .unwrap();
        assert_eq!(lelong_at(&t, "x"), Rational::from(3));
        assert!(DivisorCurrent::new(vec![comp(Rational::zero(), "Z", &[])]).is_err());
    }

    #[test]
    fn upperlevel() {
        let t = DivisorCurrent::new(vec![
            comp(Rational::new(5, 2), "a", &[]),
            comp(Rational::one(), "b", &[]),
            comp(Rational::one(), "c", &[]),
        ])
        .unwrap();
        let e = upperlevel_set(&t, &Rational::from(2)).unwrap();
        assert_eq!(e.into_iter().collect::<Vec<_>>(), vec!["a".to_string()]);
        assert_eq!(upperlevel_set(&t, &Rational::one()).unwrap().len(), 3);
        assert!(upperlevel_set(&t, &Rational::from(3)).unwrap().is_empty());
        assert!(upperlevel_set(&t, &Rational::zero()).is_err());
    }

    fn closed_form(u: f64, v: f64, rho: f64) -> f64 {
        let (a, b) = (rho.powf(2.0 * u), rho.powf(2.0 * v));
        (u * a + v * b) / (a + b)
    }

    #[test]
    fn numeric_matches_closed_form() {
        let radii: Vec<Rational> = ["1/2", "1/4", "1/8", "1/1000"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        for (u, v) in [(1, 1), (2, 3), (3, 4)] {
            let c = MonomialCurve::new(u, v).unwrap();
            let samples = lelong_numeric(c, &radii).unwrap();
            for s in &samples {
                let rho = c.parameter_radius(s.r.to_f64());
                let exact = closed_form(u as f64, v as f64, rho);
                assert!((s.nu - exact).abs() < 1e-6 * exact, "{u},{v}: {} vs {exact}", s.nu);
            }
        }
    }

    #[test]
    fn numeric_errors() {
        let c = MonomialCurve::new(2, 3).unwrap();
        let up = [Rational::new(1, 4), Rational::new(1, 2)];
        assert!(lelong_numeric(c, &up).is_err());
        assert!(lelong_numeric(c, &[Rational::from(2)]).is_err());
        assert!(MonomialCurve::new(2, 4).is_err());
        assert!(MonomialCurve::new(3, 2).is_err());
    }

    #[test]
    fn seshadri() {
        let miranda = [CurveDatum {
            degree: Rational::one(),
            mult: 5,
        }];
        assert_eq!(seshadri_upper(&miranda).unwrap(), Rational::new(1, 5));
        let two = [
            CurveDatum {
                degree: Rational::from(3),
                mult: 1,
            },
            CurveDatum {
                degree: Rational::from(4),
                mult: 2,
            },
        ];
        assert_eq!(seshadri_upper(&two).unwrap(), Rational::from(2));
        assert!(seshadri_upper(&[]).is_err());

        assert!(seshadri_thresholds(&[Rational::from(5)], 2, 0).unwrap().very_ample);
        let v = seshadri_thresholds(&[Rational::from(2)], 2, 0).unwrap();
        assert!(!v.jets_at_point);
        let v = seshadri_thresholds(&[Rational::from(3), Rational::from(2)], 2, 0).unwrap();
        assert_eq!(v.eps_lower, Rational::from(5));
        assert!(seshadri_thresholds(&[Rational::from(-1)], 2, 0).is_err());
    }
}
