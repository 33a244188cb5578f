//! Convexity inequalities for mixed intersection numbers and the algebraic
//! Morse-inequality criteria.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binom, elem_sym, factorial, pow_bracket, Bracket, Rational};
use crate::report::{certified_from_bool, certify_ge, Certified};

/// Runs `f` at `tol`; on `Unknown` retries once at a much finer tolerance.
pub fn with_refinement<T>(
    tol: &Rational,
    f: impl Fn(&Rational) -> Result<(Certified, T)>,
) -> Result<(Certified, T)> {
    let first = f(tol)?;
    if first.0 != Certified::Unknown {
        return Ok(first);
    }
    let finer = tol * Rational::new(1, 1u64 << 40);
    f(&finer)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub outcome: Certified,
    /// Both sides agree exactly.
    pub equality: bool,
    /// `lhs - rhs` of the inequality as stated (nonnegative when it holds).
    pub slack: Bracket,
}

/// `u_1 ... u_n >= (u_1^n)^(1/n) ... (u_n^n)^(1/n)` for nef classes.
///
/// The product of roots is the single root `(prod u_j^n)^(1/n)`, so exact
/// inputs are decided exactly by comparing `mixed^n` with the product.
pub fn ht_products(selfints: &[Bracket], mixed: &Rational, tol: &Rational) -> Result<Comparison> {
    let n = selfints.len();
    if n == 0 {
        return Err(Error::invalid("no self-intersection numbers"));
    }
    if selfints.iter().any(|b| b.lo().is_negative()) {
        return Err(Error::invalid("self-intersections of nef classes are >= 0"));
    }
    let lo_prod: Rational = selfints.iter().map(|b| b.lo()).product();
    let hi_prod: Rational = selfints.iter().map(|b| b.hi()).product();
    let exp = Rational::new(1, n as i64);
    let (outcome, slack) = with_refinement(tol, |t| {
        let lo = pow_bracket(&lo_prod, &exp, t)?;
        let hi = pow_bracket(&hi_prod, &exp, t)?;
        let mean = Bracket::new(lo.lo().clone(), hi.hi().clone())?;
        let slack = &Bracket::exact(mixed.clone()) - &mean;
        let outcome = if lo_prod == hi_prod {
            exact_root_ge(mixed, &lo_prod, n)
        } else {
            certify_ge(&Bracket::exact(mixed.clone()), &mean, false)
        };
        Ok((outcome, slack))
    })?;
    Ok(Comparison {
        outcome,
        equality: slack.exact_value().is_some_and(|s| s.is_zero()),
        slack,
    })
}

/// `x >= y^(1/n)` for `y >= 0`, decided exactly.
fn exact_root_ge(x: &Rational, y: &Rational, n: usize) -> Certified {
    certified_from_bool(!x.is_negative() && x.pow(n as i64) >= *y)
}

/// `(L^{n-p} H^p)^(1/p) (L^n)^(1-1/p) <= L^{n-1} H`, decided exactly as
/// `L^{n-p}H^p (L^n)^{p-1} <= (L^{n-1}H)^p`.
pub fn ht_mixed_chain(
    ln: &Rational,
    lh: &Rational,
    lnp_hp: &Rational,
    n: u32,
    p: u32,
    tol: &Rational,
) -> Result<Comparison> {
    if p < 1 || p > n {
        return Err(Error::invalid(format!("p = {p} outside 1..={n}")));
    }
    if ln.is_negative() || lh.is_negative() || lnp_hp.is_negative() {
        return Err(Error::invalid("intersection numbers must be nonnegative"));
    }
    let left = lnp_hp * ln.pow(p as i64 - 1);
    let right = lh.pow(p as i64);
    let outcome = certified_from_bool(left <= right);
    let pe = Rational::new(1, p as i64);
    let lhs = &pow_bracket(lnp_hp, &pe, tol)? * &pow_bracket(ln, &(Rational::one() - &pe), tol)?;
    Ok(Comparison {
        outcome,
        equality: left == right,
        slack: &Bracket::exact(lh.clone()) - &lhs,
    })
}

/// `p!(n-p)! e_p(lambda) >= n! (prod lambda)^(p/n)`, decided exactly by
/// raising both sides to the `n`-th power.
pub fn diag_form_check(lambdas: &[Rational], p: u32, tol: &Rational) -> Result<Comparison> {
    let n = lambdas.len();
    if n == 0 || p < 1 || p as usize > n {
        return Err(Error::invalid(format!("need 1 <= p <= n, got p={p}, n={n}")));
    }
    if let Some(l) = lambdas.iter().find(|l| !l.is_positive()) {
        return Err(Error::invalid(format!("eigenvalue {l} is not positive")));
    }
    let lhs = Rational::from(factorial(p as u64) * factorial((n - p as usize) as u64))
        * elem_sym(lambdas, p as usize)?;
    let prod: Rational = lambdas.iter().product();
    let nf = Rational::from(factorial(n as u64));
    let left = lhs.pow(n as i64);
    let right = nf.pow(n as i64) * prod.pow(p as i64);
    let rhs = pow_bracket(&prod, &Rational::new(p as i64, n as i64), tol)?.scale(&nf);
    Ok(Comparison {
        outcome: certified_from_bool(left >= right),
        equality: left == right,
        slack: &Bracket::exact(lhs) - &rhs,
    })
}

/// `F^{n-j} G^j` for `j = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedNumbers {
    pub n: u32,
    pub values: BTreeMap<u32, Rational>,
}

impl MixedNumbers {
    pub fn new(n: u32, values: Vec<Rational>) -> Self {
        MixedNumbers {
            n,
            values: values
                .into_iter()
                .enumerate()
                .map(|(j, v)| (j as u32, v))
                .collect(),
        }
    }

    fn get(&self, j: u32) -> Result<&Rational> {
        self.values
            .get(&j)
            .ok_or_else(|| Error::invalid(format!("missing F^{}.G^{j}", self.n - j)))
    }
}

/// `sum_{j<=q} (-1)^{q-j} C(n,j) F^{n-j} G^j`.
pub fn morse_strong_rhs(mixed: &MixedNumbers, q: u32) -> Result<Rational> {
    if q > mixed.n {
        return Err(Error::invalid(format!("q = {q} exceeds n = {}", mixed.n)));
    }
    let mut acc = Rational::zero();
    for j in 0..=q {
        let term = Rational::from(binom(mixed.n as u64, j as i64)) * mixed.get(j)?;
        if (q - j) % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    Ok(acc)
}

/// Least integer `m > n F^{n-1}G / F^n`.
pub fn morse_existence_threshold(fn_: &Rational, fg: &Rational, n: u32) -> Result<BigInt> {
    if !fn_.is_positive() {
        return Err(Error::invalid("F^n must be positive"));
    }
    if fg.is_negative() {
        return Err(Error::invalid("F^{n-1}.G must be nonnegative"));
    }
    Ok((Rational::from(n) * fg / fn_).floor() + 1)
}

/// `F^n - n F^{n-1} G`; positive means sections for large multiples.
pub fn trapani_lower(fn_: &Rational, fg: &Rational, n: u32) -> Rational {
    fn_ - Rational::from(n) * fg
}

/// `b^q cup / (q! (n-q)!)` with `cup = u^q (c_1(L) + b u)^{n-q}`.
pub fn singular_morse_aq(n: u32, q: u32, b: &Rational, cup: &Rational) -> Result<Rational> {
    if q > n {
        return Err(Error::invalid(format!("q = {q} exceeds n = {n}")));
    }
    if b.is_negative() {
        return Err(Error::invalid("b must be nonnegative"));
    }
    let den = Rational::from(factorial(q as u64) * factorial((n - q) as u64));
    Ok(b.pow(q as i64) * cup / den)
}

/// `u^q (L + b u)^{n-q} = sum_k C(n-q,k) b^k u^{q+k} L^{n-q-k}`, given
/// `u_l[i] = u^i L^{n-i}` for `i = 0..=n`.
pub fn expand_cup(n: u32, q: u32, b: &Rational, u_l: &[Rational]) -> Result<Rational> {
    if q > n || u_l.len() != n as usize + 1 {
        return Err(Error::invalid("need q <= n and n+1 mixed numbers u^i L^(n-i)"));
    }
    Ok((0..=n - q)
        .map(|k| {
            Rational::from(binom((n - q) as u64, k as i64))
                * b.pow(k as i64)
                * &u_l[(q + k) as usize]
        })
        .sum())
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
    fn ht_products_cases() {
        let two = Bracket::exact(q(2, 1));
        let c = ht_products(&[two.clone(), two], &q(2, 1), &tol()).unwrap();
        assert_eq!(c.outcome, Certified::Holds);
        assert!(c.equality);
        let zero = Bracket::exact(q(0, 1));
        let c = ht_products(&[zero.clone(), zero], &q(1, 1), &tol()).unwrap();
        assert_eq!(c.outcome, Certified::Holds);
        let three = Bracket::exact(q(3, 1));
        let c = ht_products(&[three.clone(), three], &q(2, 1), &tol()).unwrap();
        assert_eq!(c.outcome, Certified::Violated);
        assert!(ht_products(&[Bracket::exact(q(-1, 1))], &q(1, 1), &tol()).is_err());
    }

    #[test]
    fn ht_products_with_brackets() {
        let b = pow_bracket(&q(2, 1), &q(1, 2), &tol()).unwrap();
        let c = ht_products(&[b.clone(), b], &q(3, 2), &tol()).unwrap();
        assert_eq!(c.outcome, Certified::Holds);
    }

    #[test]
    fn chain() {
        let c = ht_mixed_chain(&q(3, 1), &q(5, 1), &q(5, 1), 2, 1, &tol()).unwrap();
        assert!(c.equality);
        let c = ht_mixed_chain(&q(1, 1), &q(1, 1), &q(1, 1), 3, 3, &tol()).unwrap();
        assert!(c.equality && c.outcome == Certified::Holds);
        let c = ht_mixed_chain(&q(1, 1), &q(1, 1), &q(2, 1), 3, 2, &tol()).unwrap();
        assert_eq!(c.outcome, Certified::Violated);
    }

    #[test]
    fn diag_form() {
        let c = diag_form_check(&[q(1, 1), q(1, 1)], 1, &tol()).unwrap();
        assert!(c.equality);
        let c = diag_form_check(&[q(4, 1), q(1, 1)], 1, &tol()).unwrap();
        assert_eq!(c.outcome, Certified::Holds);
        assert_eq!(c.slack, Bracket::exact(q(1, 1)));
        let c = diag_form_check(&[q(8, 1), q(1, 1), q(1, 1)], 2, &tol()).unwrap();
        assert_eq!(c.outcome, Certified::Holds);
        assert_eq!(c.slack, Bracket::exact(q(10, 1)));
        assert!(diag_form_check(&[q(0, 1)], 1, &tol()).is_err());
    }

    #[test]
    fn morse() {
        let m = MixedNumbers::new(2, vec![q(2, 1), q(2, 1), q(0, 1)]);
        assert_eq!(morse_strong_rhs(&m, 0).unwrap(), q(2, 1));
        assert_eq!(morse_strong_rhs(&m, 1).unwrap(), q(2, 1));
        let g0 = MixedNumbers::new(3, vec![q(5, 1), q(0, 1), q(0, 1), q(0, 1)]);
        assert_eq!(morse_strong_rhs(&g0, 3).unwrap(), q(-5, 1));
        let missing = MixedNumbers::new(2, vec![q(1, 1)]);
        assert!(morse_strong_rhs(&missing, 1).is_err());

        assert_eq!(morse_existence_threshold(&q(2, 1), &q(4, 1), 2).unwrap(), 5.into());
        assert_eq!(morse_existence_threshold(&q(2, 1), &q(0, 1), 2).unwrap(), 1.into());
        assert_eq!(morse_existence_threshold(&q(2, 1), &q(2, 1), 2).unwrap(), 3.into());
        assert!(morse_existence_threshold(&q(0, 1), &q(2, 1), 2).is_err());

        assert_eq!(trapani_lower(&q(2, 1), &q(0, 1), 2), q(2, 1));
        assert_eq!(trapani_lower(&q(2, 1), &q(4, 1), 2), q(-6, 1));
        assert_eq!(trapani_lower(&q(4, 1), &q(2, 1), 2), q(0, 1));
    }

    #[test]
    fn aq() {
        assert_eq!(singular_morse_aq(2, 1, &q(0, 1), &q(7, 1)).unwrap(), q(0, 1));
        assert_eq!(singular_morse_aq(2, 0, &q(3, 1), &q(2, 1)).unwrap(), q(1, 1));
        // P1 x P1, L = O(1,1), u = O(1,0): u^0 L^2 = 2, u L = 1, u^2 = 0.
        let cup = expand_cup(2, 1, &q(1, 1), &[q(2, 1), q(1, 1), q(0, 1)]).unwrap();
        assert_eq!(cup, q(1, 1));
        assert_eq!(singular_morse_aq(2, 1, &q(1, 1), &cup).unwrap(), q(1, 1));
        assert!(singular_morse_aq(2, 3, &q(1, 1), &cup).is_err());
    }
}
