//! Integer-valued polynomials in the binomial basis and the existence
//! windows for values `P(m) >= N`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{binom, binom_signed, factorial, Rational};

/// `P(m) = sum c_j C(m, j)` with `c_d != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Coeffs", into = "Coeffs")]
pub struct NumericalPolynomial {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Coeffs {
    #[serde(with = "big_list")]
    coeffs: Vec<BigInt>,
}

mod big_list {
    use super::*;
    use crate::numeric::serde_int::IntRepr;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(IntRepr::from).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<BigInt>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?
            .into_iter()
            .map(IntRepr::into_bigint)
            .collect::<std::result::Result<_, _>>()
            .map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Coeffs> for NumericalPolynomial {
    type Error = Error;
    fn try_from(c: Coeffs) -> Result<Self> {
        NumericalPolynomial::new(c.coeffs)
    }
}

impl From<NumericalPolynomial> for Coeffs {
    fn from(p: NumericalPolynomial) -> Self {
        Coeffs { coeffs: p.coeffs }
    }
}

impl NumericalPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::invalid("polynomial needs at least one coefficient")),
            Some(c) if c.is_zero() => Err(Error::invalid("leading binomial coefficient is zero")),
            Some(_) => Ok(NumericalPolynomial { coeffs }),
        }
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `sum c_j C(m - m0, j)`, rewritten in the basis `C(m, i)` through
    /// `C(m - m0, j) = sum_i C(m, i) C(-m0, j - i)`.
    pub fn shifted(coeffs: &[BigInt], m0: i64) -> Result<Self> {
        let shift = BigInt::from(-m0);
        let out = (0..coeffs.len())
            .map(|i| {
                coeffs
                    .iter()
                    .enumerate()
                    .skip(i)
                    .map(|(j, c)| c * binom_signed(&shift, (j - i) as u64))
                    .sum()
            })
            .collect();
        Self::new(out)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_d`; the leading coefficient in `m^d` is `a_d / d!`.
    pub fn leading(&self) -> &BigInt {
        &self.coeffs[self.degree()]
    }

    pub fn eval(&self, m: i64) -> BigInt {
        let m = BigInt::from(m);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * binom_signed(&m, j as u64))
            .sum()
    }
}

/// `L^d.Y / d!` together with `a_d = L^d.Y`.
pub fn leading_coeff_rr(ldy: &BigInt, d: u32) -> Result<(Rational, BigInt)> {
    if d < 1 {
        return Err(Error::invalid("degree must be at least 1"));
    }
    if !ldy.is_positive() {
        return Err(Error::invalid("L^d.Y must be positive"));
    }
    Ok((
        Rational::new(ldy.clone(), factorial(d as u64)),
        ldy.clone(),
    ))
}

fn positive_degree(p: &NumericalPolynomial) -> Result<i64> {
    match p.degree() {
        0 => Err(Error::invalid("window lemmas need degree d >= 1")),
        d => Ok(d as i64),
    }
}

fn scan(p: &NumericalPolynomial, lo: i64, hi: i64, target: &BigInt) -> Result<i64> {
    (lo..=hi)
        .find(|&m| &p.eval(m) >= target)
        .ok_or(Error::NotFound { lo, hi })
}

fn width(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::invalid("window width overflows"))
}

/// Smallest `m` in `[m0, m0 + N d]` with `P(m) >= N`.
pub fn window_a(p: &NumericalPolynomial, m0: i64, n: i64) -> Result<i64> {
    let d = positive_degree(p)?;
    if n < 0 {
        return Err(Error::invalid("N must be nonnegative"));
    }
    scan(p, m0, m0 + width(n, d)?, &BigInt::from(n))
}

/// Smallest `m` in `[m0, m0 + k d]` with `P(m) >= ceil(a_d k^d / 2^(d-1))`.
pub fn window_b(p: &NumericalPolynomial, m0: i64, k: i64) -> Result<i64> {
    let d = positive_degree(p)?;
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let bound = Rational::new(
        p.leading() * num_traits::pow(BigInt::from(k), d as usize),
        BigInt::one() << (d as usize - 1),
    );
    scan(p, m0, m0 + width(k, d)?, &bound.ceil())
}

/// Smallest `m` in `[m0, m0 + N]` with `P(m) >= N`, for `N >= 2 d^2`.
pub fn window_c(p: &NumericalPolynomial, m0: i64, n: i64) -> Result<i64> {
    let d = positive_degree(p)?;
    if n < 2 * d * d {
        return Err(Error::precondition(format!(
            "N = {n} is below 2d^2 = {}",
            2 * d * d
        )));
    }
    scan(p, m0, m0 + n, &BigInt::from(n))
}

/// `sum_{0<=j<=d} (-1)^j C(d,j) P(m + d - j)` at base point `m`.
pub fn difference_at(p: &NumericalPolynomial, d: usize, m: i64) -> BigInt {
    (0..=d)
        .map(|j| {
            let term = binom(d as u64, j as i64) * p.eval(m + (d - j) as i64);
            if j % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// The `d`-th difference of a degree-`d` polynomial, which is `a_d`. Checked
/// at two base points.
pub fn iterated_difference(p: &NumericalPolynomial, d: usize) -> Result<BigInt> {
    if d != p.degree() {
        return Err(Error::invalid(format!(
            "degree {d} given for a polynomial of degree {}",
            p.degree()
        )));
    }
    let a = difference_at(p, d, 0);
    let b = difference_at(p, d, -7);
    if a != b {
        return Err(Error::invalid("difference depends on the base point"));
    }
    Ok(a)
}
