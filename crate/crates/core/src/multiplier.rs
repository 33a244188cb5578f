//! Multiplier ideals of monomial weights and SNC divisors.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Exponents of `log(|z_1|^a_1 + ... + |z_p|^a_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct MonomialWeight {
    alpha: Vec<Rational>,
}

impl TryFrom<Vec<Rational>> for MonomialWeight {
    type Error = Error;
    fn try_from(v: Vec<Rational>) -> Result<Self> {
        MonomialWeight::new(v)
    }
}

impl From<MonomialWeight> for Vec<Rational> {
    fn from(w: MonomialWeight) -> Self {
        w.alpha
    }
}

impl MonomialWeight {
    pub fn new(alpha: Vec<Rational>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::invalid("monomial weight needs at least one exponent"));
        }
        if let Some(a) = alpha.iter().find(|a| !a.is_positive()) {
            return Err(Error::invalid(format!("weight exponent {a} is not positive")));
        }
        Ok(MonomialWeight { alpha })
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    /// `sum (beta_j + 1) / alpha_j`.
    pub fn weight_of(&self, beta: &[u32]) -> Rational {
        beta.iter()
            .zip(&self.alpha)
            .map(|(&b, a)| Rational::from(b + 1) / a)
            .sum()
    }

    /// Whether `z^beta` lies in the multiplier ideal.
    pub fn admits(&self, beta: &[u32]) -> bool {
        self.weight_of(beta) > 1
    }
}

/// Monomial ideal given by its minimal generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialIdeal {
    pub generators: Vec<Vec<u32>>,
}

impl MonomialIdeal {
    pub fn contains(&self, beta: &[u32]) -> bool {
        self.generators
            .iter()
            .any(|g| g.iter().zip(beta).all(|(a, b)| a <= b))
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    /// Smallest total degree of a generator.
    pub fn order(&self) -> Option<u32> {
        self.generators.iter().map(|g| g.iter().sum()).min()
    }
}

/// Minimal `beta` with `sum (beta_j + 1)/alpha_j > 1`, in decreasing
/// lexicographic order. Membership only grows with `beta`, and
/// `beta_j + 1 > alpha_j` alone suffices, so every minimal generator has
/// `beta_j <= ceil(alpha_j)`.
pub fn monomial_multiplier_ideal(w: &MonomialWeight) -> MonomialIdeal {
    let bounds: Vec<u32> = w
        .alpha
        .iter()
        .map(|a| a.ceil().to_u32().unwrap_or(u32::MAX))
        .collect();
    let mut generators = Vec::new();
    for beta in BoxIter::new(&bounds) {
        if !w.admits(&beta) {
            continue;
        }
        let minimal = (0..beta.len()).all(|j| {
            beta[j] == 0 || {
                let mut lower = beta.clone();
                lower[j] -= 1;
                !w.admits(&lower)
            }
        });
        if minimal {
            generators.push(beta);
        }
    }
    generators.sort_by(|a, b| b.cmp(a));
    MonomialIdeal { generators }
}

/// All points of `[0, b_1] x ... x [0, b_p]`.
pub struct BoxIter {
    bounds: Vec<u32>,
    cur: Option<Vec<u32>>,
}

impl BoxIter {
    pub fn new(bounds: &[u32]) -> Self {
        BoxIter {
            bounds: bounds.to_vec(),
            cur: Some(vec![0; bounds.len()]),
        }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<u32>;
    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut i = 0;
        loop {
            if i == next.len() {
                self.cur = None;
                break;
            }
            if next[i] < self.bounds[i] {
                next[i] += 1;
                self.cur = Some(next);
                break;
            }
            next[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Round-down `floor(D)` of an SNC divisor `sum alpha_j D_j`.
pub fn snc_round_down(coeffs: &[Rational]) -> Result<Vec<BigInt>> {
    if let Some(a) = coeffs.iter().find(|a| a.is_negative()) {
        return Err(Error::invalid(format!("SNC coefficient {a} is negative")));
    }
    Ok(coeffs.iter().map(Rational::floor).collect())
}

/// What Lelong-number bounds alone say about the multiplier ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkodaClass {
    /// `nu < 1`: the ideal is the whole ring.
    Trivial,
    /// `nu >= n + s`: the ideal sits inside `m^(s+1)`; carries `s + 1`.
    ContainedInPower(u64),
    Indeterminate,
}

pub fn skoda_classify(nu: &Rational, n: u32) -> Result<SkodaClass> {
    if nu.is_negative() {
        return Err(Error::invalid(format!("Lelong number {nu} is negative")));
    }
    if *nu < 1 {
        return Ok(SkodaClass::Trivial);
    }
    let excess = nu - Rational::from(n);
    if excess.is_negative() {
        return Ok(SkodaClass::Indeterminate);
    }
    let s = excess
        .floor()
        .to_u64()
        .ok_or_else(|| Error::invalid("Lelong number too large"))?;
    Ok(SkodaClass::ContainedInPower(s + 1))
}

/// Numerical convergence test for
/// `int_[0,1]^p prod t_j^c_j / (t_1 + ... + t_p) prod dt_j / t_j`
/// with `c_j = (beta_j + 1)/alpha_j`. Test support only.
///
/// The integral over `[0,1]^p` splits into dyadic shells
/// `[0,2^-k]^p \ [0,2^-k-1]^p`. Each shell is integrated by composite
/// Simpson after substituting `w = t^c` in coordinates with `c < 1`, which
/// removes the face singularity. The series converges iff the shell ratio is
/// below one; ratios within `1e-3` of one count as divergent.
pub fn integrability_oracle(alpha: &[Rational], beta: &[u32], grid: usize) -> Result<bool> {
    let w = MonomialWeight::new(alpha.to_vec())?;
    if alpha.len() > 2 {
        return Err(Error::invalid("the quadrature oracle handles p <= 2"));
    }
    if beta.len() != alpha.len() {
        return Err(Error::invalid("beta and alpha differ in length"));
    }
    if grid < 64 {
        return Err(Error::invalid("oracle grid must be at least 64"));
    }
    let c: Vec<f64> = beta
        .iter()
        .zip(&w.alpha)
        .map(|(&b, a)| (Rational::from(b + 1) / a).to_f64())
        .collect();
    let shells: Vec<f64> = (0..4).map(|k| shell_integral(&c, k, grid)).collect();
    let ratio = shells[3] / shells[2];
    Ok(ratio < 1.0 - 1e-3)
}

fn shell_integral(c: &[f64], k: i32, grid: usize) -> f64 {
    let h = 0.5f64.powi(k);
    match c {
        [c1] => {
            // int_{h/2}^{h} t^{c-2} dt
            simpson(|t| t.powf(c1 - 2.0), h / 2.0, h, grid)
        }
        [c1, c2] => {
            let f = |t1: f64, t2: f64| 1.0 / (t1 + t2);
            rect(c1, c2, (h / 2.0, h), (0.0, h), grid, &f)
                + rect(c1, c2, (0.0, h / 2.0), (h / 2.0, h), grid, &f)
        }
        _ => unreachable!("p is checked by the caller"),
    }
}

/// `int t1^{c1-1} t2^{c2-1} f(t1, t2)` over a rectangle.
fn rect(
    c1: &f64,
    c2: &f64,
    x: (f64, f64),
    y: (f64, f64),
    grid: usize,
    f: &dyn Fn(f64, f64) -> f64,
) -> f64 {
    let ax = Axis::new(*c1, x);
    let ay = Axis::new(*c2, y);
    simpson(
        |u| {
            let (t1, j1) = ax.map(u);
            simpson(
                |v| {
                    let (t2, j2) = ay.map(v);
                    j1 * j2 * f(t1, t2)
                },
                ay.lo,
                ay.hi,
                grid,
            )
        },
        ax.lo,
        ax.hi,
        grid,
    )
}

/// One coordinate with weight `t^{c-1} dt`, optionally as `w = t^c`.
struct Axis {
    c: f64,
    subst: bool,
    lo: f64,
    hi: f64,
}

impl Axis {
    fn new(c: f64, (a, b): (f64, f64)) -> Self {
        let subst = c < 1.0;
        if subst {
            Axis {
                c,
                subst,
                lo: a.powf(c),
                hi: b.powf(c),
            }
        } else {
            Axis {
                c,
                subst,
                lo: a,
                hi: b,
            }
        }
    }

    /// Point `t` and the density of `t^{c-1} dt` in the integration variable.
    fn map(&self, u: f64) -> (f64, f64) {
        if self.subst {
            (u.powf(1.0 / self.c), 1.0 / self.c)
        } else {
            (u, u.powf(self.c - 1.0))
        }
    }
}

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: &[i64]) -> MonomialWeight {
        MonomialWeight::new(a.iter().map(|&x| Rational::from(x)).collect()).unwrap()
    }

    #[test]
    fn generators_golden() {
        assert_eq!(monomial_multiplier_ideal(&w(&[1, 1])).generators, vec![vec![0, 0]]);
        assert_eq!(
            monomial_multiplier_ideal(&w(&[4, 4])).generators,
            vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]
        );
        assert_eq!(
            monomial_multiplier_ideal(&w(&[6, 2])).generators,
            vec![vec![3, 0], vec![0, 1]]
        );
    }

    #[test]
    fn exhaustive_box_check() {
        // Every point of a larger box is in the ideal iff the criterion holds.
        let wt = w(&[4, 4]);
        let ideal = monomial_multiplier_ideal(&wt);
        for beta in BoxIter::new(&[8, 8]) {
            assert_eq!(ideal.contains(&beta), wt.admits(&beta), "{beta:?}");
        }
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(MonomialWeight::new(vec![]).is_err());
        assert!(MonomialWeight::new(vec![Rational::from(0)]).is_err());
        assert!(MonomialWeight::new(vec![Rational::from(-1)]).is_err());
    }

    #[test]
    fn round_down() {
        let d = [Rational::new(5, 2), Rational::new(1, 3), Rational::from(7)];
        assert_eq!(snc_round_down(&d).unwrap(), vec![2.into(), 0.into(), 7.into()]);
        assert!(snc_round_down(&[Rational::from(-1)]).is_err());
    }

    #[test]
    fn skoda() {
        assert_eq!(skoda_classify(&Rational::new(1, 2), 3).unwrap(), SkodaClass::Trivial);
        assert_eq!(
            skoda_classify(&Rational::from(5), 3).unwrap(),
            SkodaClass::ContainedInPower(3)
        );
        assert_eq!(
            skoda_classify(&Rational::new(3, 2), 2).unwrap(),
            SkodaClass::Indeterminate
        );
        assert_eq!(
            skoda_classify(&Rational::from(2), 2).unwrap(),
            SkodaClass::ContainedInPower(1)
        );
        assert!(skoda_classify(&Rational::from(-1), 2).is_err());
    }

    #[test]
    fn oracle_examples() {
        let a = [Rational::from(4), Rational::from(4)];
        assert!(integrability_oracle(&a, &[3, 0], 64).unwrap());
        assert!(!integrability_oracle(&a, &[1, 1], 64).unwrap());
        assert!(!integrability_oracle(&[Rational::from(1)], &[0], 64).unwrap());
        assert!(integrability_oracle(&[Rational::from(1)], &[1], 64).unwrap());
        let b = [Rational::from(6), Rational::from(2)];
        assert!(integrability_oracle(&b, &[3, 0], 64).unwrap());
        assert!(integrability_oracle(&b, &[0, 1], 64).unwrap());
        assert!(!integrability_oracle(&b, &[2, 0], 64).unwrap());
        assert!(!integrability_oracle(&b, &[0, 0], 64).unwrap());
    }

    #[test]
    fn oracle_errors() {
        let three = vec![Rational::from(1); 3];
        assert!(integrability_oracle(&three, &[0, 0, 0], 64).is_err());
        assert!(integrability_oracle(&[Rational::from(1)], &[0], 10).is_err());
        assert!(integrability_oracle(&[Rational::from(0)], &[0], 64).is_err());
    }
}
