//! Mass-concentration criteria for jet generation: the `sigma_p` sequence,
//! the jumping-value recursion, the `beta` schedule and its constant, the
//! `mu` invariant and the resulting multiple thresholds.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::adjoint::JetSpec;
use crate::error::{Error, Result};
use crate::numeric::{elem_sym_all, pow_bracket, Bracket, Rational};
use crate::positivity::with_refinement;
use crate::report::{certify_ge, BoundReport, Certified, Check, Threshold};

/// Choice of `sigma_0` when the jets are a single 1-jet (very ampleness).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sigma0Policy {
    /// `sum (n + s_j)^n` in every case.
    Sum,
    /// `2 n^n` for a single 1-jet.
    TwiceNn,
    /// `max(2 n^n, (n+1)^n)` for a single 1-jet.
    MaxOfBoth,
}

pub fn sigma0_for(jets: &JetSpec, n: u32, policy: Sigma0Policy) -> Result<Rational> {
    if jets.points.is_empty() {
        return Err(Error::invalid("at least one point is required"));
    }
    let sum: BigInt = jets
        .points
        .iter()
        .map(|&s| BigInt::from(n + s).pow(n))
        .sum();
    let twice = BigInt::from(2) * BigInt::from(n).pow(n);
    let single_one_jet = jets.points == [1];
    Ok(Rational::from(match policy {
        Sigma0Policy::TwiceNn if single_one_jet => twice,
        Sigma0Policy::MaxOfBoth if single_one_jet => twice.max(sum),
        _ => sum,
    }))
}

/// `sigma_0` and enclosures of `sigma_p`, `1 <= p <= n - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaSequence {
    pub n: u32,
    pub sigma0: Rational,
    pub sigma: Vec<Bracket>,
}

impl SigmaSequence {
    /// `sigma_p` for `1 <= p <= n`, with `sigma_n = sigma_0`.
    pub fn get(&self, p: u32) -> Option<Bracket> {
        if p == self.n {
            Some(Bracket::exact(self.sigma0.clone()))
        } else if p >= 1 {
            self.sigma.get(p as usize - 1).cloned()
        } else {
            None
        }
    }
}

/// `sigma_p = (1 - (1 - sigma_0/L^n)^(p/n)) L^n`, with the certified
/// post-conditions `sigma_0 p/n < sigma_p < sigma_0`.
pub fn sigma_sequence(sigma0: &Rational, ln: &Rational, n: u32, tol: &Rational) -> Result<SigmaSequence> {
    if n < 1 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    if !sigma0.is_positive() {
        return Err(Error::invalid("sigma_0 must be positive"));
    }
    if sigma0 >= ln {
        return Err(Error::precondition(format!(
            "sigma_0 = {sigma0} is not below L^n = {ln}"
        )));
    }
    let x = Rational::one() - sigma0 / ln;
    let mut sigma = Vec::new();
    for p in 1..n {
        let e = Rational::new(p as i64, n as i64);
        let floor = sigma0 * &e;
        let (outcome, b) = with_refinement(tol, |t| {
            // The root's width is scaled by L^n below.
            let inner = pow_bracket(&x, &e, &(t / ln))?;
            let b = Bracket::new(
                (Rational::one() - inner.hi()) * ln,
                (Rational::one() - inner.lo()) * ln,
            )?;
            let ok = b.lo() > &floor && b.hi() < sigma0;
            let violated = b.hi() <= &floor || b.lo() >= sigma0;
            Ok((
                if ok {
                    Certified::Holds
                } else if violated {
                    Certified::Violated
                } else {
                    Certified::Unknown
                },
                b,
            ))
        })?;
        match outcome {
            Certified::Holds => sigma.push(b),
            Certified::Unknown => {
                return Err(Error::Uncertified(format!("sigma_{p} bounds at n={n}")))
            }
            Certified::Violated => {
                return Err(Error::Uncertified(format!(
                    "sigma_{p} = {b:?} escapes ({floor}, {sigma0})"
                )))
            }
        }
    }
    Ok(SigmaSequence {
        n,
        sigma0: sigma0.clone(),
        sigma,
    })
}

/// `sum_{0<=j<=p-1} S_j(v) a^j sigma_{p-j}` for the `p` values in `v`.
fn weighted_sigma_sum(v: &[Rational], a: &Rational, sigma: &SigmaSequence) -> Result<Bracket> {
    let p = v.len() as u32;
    let s = elem_sym_all(v);
    let mut acc = Bracket::exact(Rational::zero());
    for j in 0..p {
        let sig = sigma
            .get(p - j)
            .ok_or_else(|| Error::invalid(format!("sigma_{} unavailable", p - j)))?;
        let coeff = &s[j as usize] * a.pow(j as i64);
        acc = &acc + &sig.scale(&coeff);
    }
    Ok(acc)
}

/// Upper enclosure of `b_{p+1}` from
/// `(b_{p+1} - b_1) ... (b_{p+1} - b_p) <= RHS / min_Y`.
///
/// The left side increases strictly for `x > b_p`, so the root is found
/// by bisection on `(b_p, b_p + max(1, RHS)]`.
pub fn recursion_bound(
    b_prefix: &[Rational],
    a: &Rational,
    sigma: &SigmaSequence,
    min_y: &Rational,
    tol: &Rational,
) -> Result<Bracket> {
    if b_prefix.is_empty() || !b_prefix[0].is_zero() {
        return Err(Error::invalid("jump sequence must start with b_1 = 0"));
    }
    if b_prefix.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("jump sequence must be nondecreasing"));
    }
    if a.is_negative() {
        return Err(Error::invalid("a must be nonnegative"));
    }
    if *min_y < 1 {
        return Err(Error::invalid("min L^(n-p).Y must be at least 1"));
    }
    let rhs = weighted_sigma_sum(b_prefix, a, sigma)?.scale(&min_y.recip());
    let lo = solve_product(b_prefix, rhs.lo(), tol).0;
    let hi = solve_product(b_prefix, rhs.hi(), tol).1;
    Bracket::new(lo, hi)
}

/// Bisection for `prod (x - b_i) = r`, `x > max b`. Returns `(lo, hi)`
/// with `f(lo) <= r <= f(hi)` and `hi - lo <= tol`.
fn solve_product(b: &[Rational], r: &Rational, tol: &Rational) -> (Rational, Rational) {
    let top = b.last().cloned().unwrap_or_default();
    let f = |x: &Rational| -> Rational { b.iter().map(|bi| x - bi).product() };
    let mut lo = top.clone();
    let mut hi = &top + r.clone().max(Rational::one());
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) / Rational::from(2);
        if f(&mid) <= *r {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Whether `beta` is `0 = beta_1 < ... < beta_n <= 1`.
fn validate_beta(beta: &[Rational], n: u32) -> Result<()> {
    if beta.len() != n as usize {
        return Err(Error::invalid(format!("beta needs {n} entries, got {}", beta.len())));
    }
    if !beta[0].is_zero() {
        return Err(Error::invalid("beta_1 must be 0"));
    }
    if beta.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("beta must be strictly increasing"));
    }
    if beta[beta.len() - 1] > 1 {
        return Err(Error::invalid("beta_n must be at most 1"));
    }
    Ok(())
}

/// Inputs of the jet-generation criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetCriterion {
    pub n: u32,
    pub sigma0: Rational,
    /// `T_X (x) O(aL)` nef.
    pub a: Rational,
    pub beta: Vec<Rational>,
    /// `p -> min L^{n-p}.Y` over codimension-`p` subvarieties through the points.
    #[serde(default)]
    pub min_y: BTreeMap<u32, Rational>,
    pub ln: Rational,
    /// A nef twist has been added to `L`; thresholds are unchanged.
    #[serde(default)]
    pub nef_twist: bool,
}

/// Checks `L^n > sigma_0` and, for `p = 1..n-1`,
/// `min_Y(p) > prod_i (beta_{p+1} - beta_i)^{-1} sum_j S_j(beta) a^j sigma_{p-j}`.
/// A codimension without a declared minimum counts as unsatisfied.
pub fn jet_generation_check(c: &JetCriterion, tol: &Rational) -> Result<BoundReport> {
    validate_beta(&c.beta, c.n)?;
    if c.a.is_negative() {
        return Err(Error::invalid("a must be nonnegative"));
    }
    let mut report = BoundReport::new("jets-main")
        .input("n", c.n)
        .input("sigma0", &c.sigma0)
        .input("a", &c.a)
        .input("beta", &c.beta)
        .input("min", &c.min_y)
        .input("Ln", &c.ln);
    if c.nef_twist {
        report = report.note("L carries an added nef twist; the thresholds are the same");
    }
    let top = Check {
        label: "L^n > sigma0".into(),
        p: Some(0),
        lhs: Some(Threshold::Rational(c.ln.clone())),
        rhs: Threshold::Rational(c.sigma0.clone()),
        strict: true,
        outcome: crate::report::certified_from_bool(c.ln > c.sigma0),
    };
    let vacuous = top.outcome != Certified::Holds;
    report.push_check(top);
    if vacuous {
        return Ok(report.note("sigma0 >= L^n: the remaining conditions are vacuous").conclude());
    }
    let sigma = sigma_sequence(&c.sigma0, &c.ln, c.n, tol)?;
    for p in 1..c.n {
        let rhs = codim_rhs(c, &sigma, p)?;
        let (outcome, lhs) = match c.min_y.get(&p) {
            Some(m) => {
                let mb = Bracket::exact(m.clone());
                let mut outcome = certify_ge(&mb, &rhs, true);
                if outcome == Certified::Unknown {
                    let fine = tol * Rational::new(1, 1u64 << 40);
                    let sigma = sigma_sequence(&c.sigma0, &c.ln, c.n, &fine)?;
                    outcome = certify_ge(&mb, &codim_rhs(c, &sigma, p)?, true);
                }
                (outcome, Some(Threshold::Rational(m.clone())))
            }
            None => (Certified::Violated, None),
        };
        if lhs.is_none() {
            report = report.note(format!("no minimum declared for codimension {p}"));
        }
        report.push_check(Check {
            label: format!("L^{}.Y > rhs", c.n - p),
            p: Some(p),
            lhs,
            rhs: Threshold::from(rhs),
            strict: true,
            outcome,
        });
    }
    Ok(report.conclude())
}

fn codim_rhs(c: &JetCriterion, sigma: &SigmaSequence, p: u32) -> Result<Bracket> {
    let pu = p as usize;
    let head = &c.beta[..pu];
    let next = &c.beta[pu];
    let denom: Rational = head.iter().map(|b| next - b).product();
    Ok(weighted_sigma_sum(head, &c.a, sigma)?.scale(&denom.recip()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub holds: bool,
    pub equality: bool,
}

/// `sum (n - 1 + t_j)^n <= (n - 1 + sum t_j)^n` for `t_j >= 1`.
pub fn jet_splitting_inequality(t: &[Rational], n: u32) -> Result<Comparison> {
    if t.is_empty() {
        return Err(Error::invalid("no values"));
    }
    if let Some(x) = t.iter().find(|x| **x < 1) {
        return Err(Error::invalid(format!("value {x} is below 1")));
    }
    let base = Rational::from(n) - Rational::one();
    let left: Rational = t.iter().map(|x| (&base + x).pow(n as i64)).sum();
    let right = (&base + t.iter().sum::<Rational>()).pow(n as i64);
    Ok(Comparison {
        holds: left <= right,
        equality: left == right,
    })
}

/// `beta_1 = 0`, `beta_p = n^{-n(n-p)/(p-1)}`, `beta_n = 1`, with the
/// post-checks that the sequence and `beta_p / beta_{p+1}` increase.
pub fn beta_schedule(n: u32, tol: &Rational) -> Result<Vec<Bracket>> {
    if n < 2 {
        return Err(Error::invalid("the schedule needs n >= 2"));
    }
    let mut out = vec![Bracket::exact(Rational::zero())];
    let base = Rational::from(n);
    for p in 2..n {
        let e = Rational::new(-((n * (n - p)) as i64), (p - 1) as i64);
        out.push(pow_bracket(&base, &e, tol)?);
    }
    out.push(Bracket::exact(Rational::one()));
    for w in out.windows(2) {
        if w[0].hi() >= w[1].lo() {
            return Err(Error::Uncertified("beta schedule not increasing".into()));
        }
    }
    for p in 1..out.len().saturating_sub(2) {
        // beta_p / beta_{p+1} < beta_{p+1} / beta_{p+2}
        let r0 = &out[p] * &out[p + 1].recip()?;
        let r1 = &out[p + 1] * &out[p + 2].recip()?;
        if r0.hi() >= r1.lo() {
            return Err(Error::Uncertified("beta ratios not increasing".into()));
        }
    }
    Ok(out)
}

/// `C_n = prod_{2<=p<=n-1} (1 + (2n+1) beta_p) / (1 - beta_p)`; the `p = 1`
/// factor is 1 because `beta_1 = 0`.
pub fn cn_constant(n: u32, tol: &Rational) -> Result<Bracket> {
    if n < 2 {
        return Err(Error::invalid("C_n needs n >= 2"));
    }
    let k = Rational::from(2 * n + 1);
    let mut inner = tol / Rational::from(64 * n as i64 * n as i64);
    loop {
        let beta = beta_schedule(n, &inner)?;
        let bits = inner.recip().ceil().bits() + 8;
        let scale = Rational::from(BigInt::from(1) << bits);
        let coarse = |x: &Rational| x.denom().bits() > bits;
        let mut lo = Rational::one();
        let mut hi = Rational::one();
        for b in &beta[1..beta.len() - 1] {
            // The factor increases with beta.
            let f = |x: &Rational| (Rational::one() + &k * x) / (Rational::one() - x);
            lo *= f(b.lo());
            hi *= f(b.hi());
            if coarse(&lo) || coarse(&hi) {
                lo = Rational::from((&lo * &scale).floor()) / &scale;
                hi = Rational::from((&hi * &scale).ceil()) / &scale;
            }
        }
        let out = Bracket::new(lo, hi)?;
        if out.width() <= *tol {
            return Ok(out);
        }
        inner = &inner * Rational::new(1, 1u64 << 20);
    }
}

/// `mu(L') >= 3 (n+s)^n`, or `6 n^n` for `s = 1` on the special path.
pub fn iterated_jet_mu_threshold(n: u32, s: u32, special: bool) -> Result<BigInt> {
    if s < 1 {
        return Err(Error::invalid("s must be at least 1"));
    }
    Ok(if special && s == 1 {
        6 * BigInt::from(n).pow(n)
    } else {
        3 * BigInt::from(n + s).pow(n)
    })
}

/// Least `m >= 2` with `(m - 1) mu + s >= R`, `R = 12 n^n` for `s = 1` and
/// `6 (n+s)^n` otherwise; then `2K + mL` generates `s`-jets.
pub fn double_adjoint_multiple_threshold(n: u32, s: u32, mu: &Rational) -> Result<BigInt> {
    if s < 1 {
        return Err(Error::invalid("s must be at least 1"));
    }
    if !mu.is_positive() {
        return Err(Error::invalid("mu must be positive"));
    }
    let r = if s == 1 {
        12 * BigInt::from(n).pow(n)
    } else {
        6 * BigInt::from(n + s).pow(n)
    };
    let need: BigInt = (Rational::from(r - BigInt::from(s)) / mu).ceil() + 1;
    Ok(need.max(BigInt::from(2)))
}

/// `mu(L) >= 6 (3n + 3 + 2s)^n` suffices for `2K + L` to generate `s`-jets.
pub fn single_mu_threshold(n: u32, s: u32) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    Ok(6 * BigInt::from(3 * n + 3 + 2 * s).pow(n))
}

/// A surface condition `L^2 > l2_gt` and `L.C > lc_gt`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceColumn {
    #[serde(with = "crate::numeric::bigint")]
    pub l2_gt: BigInt,
    #[serde(with = "crate::numeric::bigint")]
    pub lc_gt: BigInt,
}

/// Columns for `sigma_0` on a surface. For integer `L^2 > sigma_0` the curve
/// condition `L.C > sigma_1` reads `L.C > floor(sigma_1)`, computed exactly
/// as `L^2 - ceil(sqrt(L^2 (L^2 - sigma_0)))`. A new column starts wherever
/// that integer drops; the scan ends at `floor(sigma_0 / 2)`, the limit of
/// `sigma_1`.
pub fn surface_columns(sigma0: u64) -> Vec<SurfaceColumn> {
    let s0 = BigInt::from(sigma0);
    let limit = BigInt::from(sigma0 / 2);
    let mut out: Vec<SurfaceColumn> = Vec::new();
    let mut l2 = &s0 + 1;
    loop {
        let lc = curve_bound(&l2, &s0);
        if out.last().map_or(true, |c| c.lc_gt != lc) {
            out.push(SurfaceColumn {
                l2_gt: &l2 - 1,
                lc_gt: lc.clone(),
            });
        }
        if lc <= limit {
            return out;
        }
        l2 += 1;
    }
}

fn curve_bound(l2: &BigInt, s0: &BigInt) -> BigInt {
    let prod = l2 * (l2 - s0);
    let r = prod.sqrt();
    let ceil = if &r * &r == prod { r } else { r + 1 };
    l2 - ceil
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceTable {
    pub spanned: Vec<SurfaceColumn>,
    pub separation: Vec<SurfaceColumn>,
    /// `(s, condition)` from the worst case `L^2 = (2+s)^2 + 1`.
    pub jets: Vec<(u32, SurfaceColumn)>,
    /// `K + mL` is spanned for `m >` this minus one, `L` ample.
    #[serde(with = "crate::numeric::bigint")]
    pub spanned_multiple: BigInt,
    #[serde(with = "crate::numeric::bigint")]
    pub very_ample_multiple: BigInt,
}

/// Least `m` with `m^2 > A` and `m > B` for some column; `mL` has
/// `(mL)^2 >= m^2` and `mL.C >= m` when `L` is ample.
fn least_multiple(cols: &[SurfaceColumn]) -> BigInt {
    cols.iter()
        .map(|c| {
            let mut m = &c.lc_gt + 1;
            while &m * &m <= c.l2_gt {
                m += 1;
            }
            m
        })
        .min()
        .unwrap_or_default()
}

pub fn surface_table(s_values: impl IntoIterator<Item = u32>) -> SurfaceTable {
    let spanned = surface_columns(4);
    let separation = surface_columns(8);
    let jets = s_values
        .into_iter()
        .map(|s| {
            let first = surface_columns(((2 + s) * (2 + s)) as u64)
                .into_iter()
                .next()
                .expect("scan yields a column");
            (s, first)
        })
        .collect();
    SurfaceTable {
        spanned_multiple: least_multiple(&spanned),
        very_ample_multiple: least_multiple(&separation),
        spanned,
        separation,
        jets,
    }
}

/// `mu = min_p (min_p)^(1/p)` from declared minima `F^p.Y` over
/// `p`-dimensional `Y`, `p = 1..n`.
pub fn mu_invariant(per_dim: &BTreeMap<u32, Rational>, n: u32, tol: &Rational) -> Result<Bracket> {
    let mut best: Option<Bracket> = None;
    for p in 1..=n {
        let v = per_dim
            .get(&p)
            .ok_or_else(|| Error::invalid(format!("missing minimum for p={p}")))?;
        if !v.is_positive() {
            return Err(Error::invalid(format!("minimum for p={p} must be positive")));
        }
        let b = pow_bracket(v, &Rational::new(1, p as i64), tol)?;
        best = Some(match best {
            Some(cur) => cur.min(&b),
            None => b,
        });
    }
    best.ok_or_else(|| Error::invalid("dimension must be at least 1"))
}

/// Minima of `kF`: each `p`-dimensional entry scales by `k^p`.
pub fn scale_per_dim(per_dim: &BTreeMap<u32, Rational>, k: &Rational) -> BTreeMap<u32, Rational> {
    per_dim
        .iter()
        .map(|(&p, v)| (p, v * k.pow(p as i64)))
        .collect()
}

/// Dimensions `p` where a declared minimum is below `s^p`, which rules out
/// `F` generating `s`-jets everywhere.
pub fn jet_degree_consistency(s: u32, per_dim: &BTreeMap<u32, Rational>) -> Vec<u32> {
    per_dim
        .iter()
        .filter(|(&p, v)| **v < Rational::from(BigInt::from(s).pow(p)))
        .map(|(&p, _)| p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn tol() -> Rational {
        q(1, 1_000_000_000_000)
    }

    #[test]
    fn sigma0_policies() {
        let one = JetSpec::single(0);
        assert_eq!(sigma0_for(&one, 2, Sigma0Policy::Sum).unwrap(), q(4, 1));
        let va = JetSpec::very_ample();
        assert_eq!(sigma0_for(&va, 2, Sigma0Policy::TwiceNn).unwrap(), q(8, 1));
        assert_eq!(sigma0_for(&va, 3, Sigma0Policy::TwiceNn).unwrap(), q(54, 1));
        assert_eq!(sigma0_for(&va, 3, Sigma0Policy::Sum).unwrap(), q(64, 1));
        assert_eq!(sigma0_for(&va, 3, Sigma0Policy::MaxOfBoth).unwrap(), q(64, 1));
        assert_eq!(sigma0_for(&va, 2, Sigma0Policy::MaxOfBoth).unwrap(), q(9, 1));
    }

    /// sqrt by Newton from above: returns (y/z, z).
    fn newton_sqrt(y: &Rational) -> (Rational, Rational) {
        let mut z = y.clone().max(Rational::one());
        for _ in 0..8 {
            z = (&z + y / &z) / Rational::from(2);
        }
        (y / &z, z)
    }

    #[test]
    fn sigma_surface() {
        let s = sigma_sequence(&q(4, 1), &q(5, 1), 2, &tol()).unwrap();
        let (lo, hi) = newton_sqrt(&q(1, 5));
        // sigma_1 = 5 (1 - sqrt(1/5))
        let oracle = Bracket::new(
            (Rational::one() - &hi) * q(5, 1),
            (Rational::one() - &lo) * q(5, 1),
        )
        .unwrap();
        assert!(s.sigma[0].intersects(&oracle));
        assert!((s.sigma[0].to_f64() - 2.7639320225).abs() < 1e-9);
        assert_eq!(s.get(2).unwrap(), Bracket::exact(q(4, 1)));
        assert!(sigma_sequence(&q(5, 1), &q(5, 1), 2, &tol()).is_err());
    }

    #[test]
    fn sigma_small_ratio_limit() {
        // sigma_0 / L^n -> 0: sigma_p ~ sigma_0 p/n.
        let s = sigma_sequence(&q(1, 1), &q(1_000_000, 1), 3, &tol()).unwrap();
        assert!((s.sigma[0].to_f64() - 1.0 / 3.0).abs() < 1e-6);
        assert!((s.sigma[1].to_f64() - 2.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn recursion_linear_case() {
        let s = sigma_sequence(&q(4, 1), &q(5, 1), 2, &tol()).unwrap();
        let b = recursion_bound(&[q(0, 1)], &q(0, 1), &s, &q(3, 1), &tol()).unwrap();
        let expect = s.sigma[0].scale(&q(1, 3));
        assert!(b.intersects(&expect));
        assert!(b.hi() < &q(1, 1));
        assert!((b.to_f64() - 0.92131).abs() < 1e-4);
    }

    #[test]
    fn recursion_quadratic_case() {
        // (x - 0)(x - 1/2) = r  =>  x = (1/2 + sqrt(1/4 + 4r)) / 2
        let s = sigma_sequence(&q(27, 1), &q(100, 1), 3, &tol()).unwrap();
        let b = recursion_bound(&[q(0, 1), q(1, 2)], &q(0, 1), &s, &q(40, 1), &tol()).unwrap();
        let r = s.sigma[1].to_f64() / 40.0;
        let x = (0.5 + (0.25 + 4.0 * r).sqrt()) / 2.0;
        assert!((b.to_f64() - x).abs() < 1e-9);
    }

    #[test]
    fn main_check_surface() {
        let c = JetCriterion {
            n: 2,
            sigma0: q(4, 1),
            a: q(0, 1),
            beta: vec![q(0, 1), q(1, 1)],
            min_y: [(1, q(3, 1))].into_iter().collect(),
            ln: q(5, 1),
            nef_twist: false,
        };
        let r = jet_generation_check(&c, &tol()).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Satisfied);
        let mut c2 = c.clone();
        c2.min_y.insert(1, q(2, 1));
        let r = jet_generation_check(&c2, &tol()).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Unsatisfied);
        let mut c3 = c.clone();
        c3.ln = q(4, 1);
        let r = jet_generation_check(&c3, &tol()).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Unsatisfied);
        let mut c4 = c;
        c4.min_y.clear();
        let r = jet_generation_check(&c4, &tol()).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::Unsatisfied);
    }

    #[test]
    fn main_check_threefold_shape() {
        // The codimension-1 and -2 right sides are beta^-1 sigma_1 and
        // (1 - beta)^-1 (sigma_2 + beta a sigma_1).
        let beta = q(1, 27);
        let c = JetCriterion {
            n: 3,
            sigma0: q(27, 1),
            a: q(7, 1),
            beta: vec![q(0, 1), beta.clone(), q(1, 1)],
            min_y: [(1, q(10_000, 1)), (2, q(10_000, 1))].into_iter().collect(),
            ln: q(100, 1),
            nef_twist: true,
        };
        let r = jet_generation_check(&c, &tol()).unwrap();
        let s = sigma_sequence(&q(27, 1), &q(100, 1), 3, &tol()).unwrap();
        let rhs1 = s.sigma[0].scale(&beta.recip());
        let rhs2 = (&s.sigma[1] + &s.sigma[0].scale(&(&beta * q(7, 1))))
            .scale(&(Rational::one() - &beta).recip());
        assert!(r.checks[1].rhs.bracket().intersects(&rhs1));
        assert!(r.checks[2].rhs.bracket().intersects(&rhs2));
        assert!(!r.notes.is_empty());
        let mut bad = c;
        bad.beta = vec![q(0, 1), q(1, 1), q(1, 2)];
        assert!(jet_generation_check(&bad, &tol()).is_err());
    }

    #[test]
    fn splitting() {
        let r = jet_splitting_inequality(&[q(3, 1)], 3).unwrap();
        assert!(r.equality);
        let r = jet_splitting_inequality(&[q(1, 1), q(1, 1)], 2).unwrap();
        assert!(r.holds && !r.equality);
        for n in 1..6u32 {
            for big_n in 1..6usize {
                let ones = vec![q(1, 1); big_n];
                assert!(jet_splitting_inequality(&ones, n).unwrap().holds);
            }
        }
        assert!(jet_splitting_inequality(&[q(1, 2)], 2).is_err());
    }

    #[test]
    fn betas() {
        let b = beta_schedule(3, &tol()).unwrap();
        assert_eq!(b[1], Bracket::exact(q(1, 27)));
        assert_eq!(beta_schedule(2, &tol()).unwrap().len(), 2);
        let b = beta_schedule(4, &tol()).unwrap();
        assert_eq!(b[1], Bracket::exact(Rational::from(4).pow(-8)));
        assert_eq!(b[2], Bracket::exact(Rational::from(4).pow(-2)));
        assert!(beta_schedule(1, &tol()).is_err());
        // n = 5 has the irrational entry 5^(-5/3).
        let b = beta_schedule(5, &tol()).unwrap();
        assert!(b[2].is_exact() && !b[3].is_exact());
    }

    #[test]
    fn cn() {
        assert_eq!(cn_constant(2, &tol()).unwrap(), Bracket::exact(q(1, 1)));
        assert_eq!(cn_constant(3, &tol()).unwrap(), Bracket::exact(q(17, 13)));
        let c5 = cn_constant(5, &q(1, 1_000_000_000)).unwrap();
        assert!(c5.hi() < &q(3, 1));
    }

    #[test]
    fn thresholds() {
        assert_eq!(iterated_jet_mu_threshold(2, 1, true).unwrap(), 24.into());
        assert_eq!(iterated_jet_mu_threshold(2, 1, false).unwrap(), 27.into());
        assert_eq!(iterated_jet_mu_threshold(3, 2, false).unwrap(), 375.into());
        assert_eq!(double_adjoint_multiple_threshold(2, 1, &q(1, 1)).unwrap(), 48.into());
        assert_eq!(double_adjoint_multiple_threshold(2, 1, &q(47, 1)).unwrap(), 2.into());
        assert_eq!(double_adjoint_multiple_threshold(2, 1, &q(1000, 1)).unwrap(), 2.into());
        assert!(double_adjoint_multiple_threshold(2, 1, &q(0, 1)).is_err());
        assert_eq!(single_mu_threshold(2, 1).unwrap(), 726.into());
        assert_eq!(single_mu_threshold(2, 0).unwrap(), 486.into());
        assert_eq!(single_mu_threshold(3, 0).unwrap(), 10368.into());
    }

    fn col(a: i64, b: i64) -> SurfaceColumn {
        SurfaceColumn {
            l2_gt: a.into(),
            lc_gt: b.into(),
        }
    }

    #[test]
    fn surface_table_golden() {
        let t = surface_table(0..=5);
        assert_eq!(t.spanned, vec![col(4, 2)]);
        assert_eq!(t.separation, vec![col(8, 6), col(9, 5), col(12, 4)]);
        for (s, c) in &t.jets {
            let s = *s as i64;
            assert_eq!(c, &col((2 + s) * (2 + s), 2 + 3 * s + s * s));
        }
        assert_eq!(t.spanned_multiple, 3.into());
        assert_eq!(t.very_ample_multiple, 5.into());
    }

    #[test]
    fn mu() {
        let per: BTreeMap<u32, Rational> = [(1, q(2, 1)), (2, q(3, 1))].into_iter().collect();
        let m = mu_invariant(&per, 2, &tol()).unwrap();
        assert!((m.to_f64() - 3f64.sqrt()).abs() < 1e-11);
        assert!(m.hi() < &q(2, 1));
        let pn: BTreeMap<u32, Rational> = (1..=3).map(|p| (p, Rational::from(5).pow(p as i64))).collect();
        assert_eq!(mu_invariant(&pn, 3, &tol()).unwrap(), Bracket::exact(q(5, 1)));
        let scaled = mu_invariant(&scale_per_dim(&per, &q(3, 1)), 2, &tol()).unwrap();
        assert!((scaled.to_f64() - 3.0 * 3f64.sqrt()).abs() < 1e-9);
        assert!(mu_invariant(&per, 3, &tol()).is_err());
    }

    #[test]
    fn consistency() {
        let per: BTreeMap<u32, Rational> = [(1, q(4, 1)), (2, q(4, 1))].into_iter().collect();
        assert!(jet_degree_consistency(2, &per).is_empty());
        let per: BTreeMap<u32, Rational> = [(1, q(2, 1))].into_iter().collect();
        assert_eq!(jet_degree_consistency(3, &per), vec![1]);
        assert!(jet_degree_consistency(0, &per).is_empty());
    }
}
