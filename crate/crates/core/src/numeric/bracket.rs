//! Certified rational enclosures `[lo, hi]` and fractional powers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Closed interval with rational endpoints, `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBracket")]
pub struct Bracket {
    lo: Rational,
    hi: Rational,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    lo: Rational,
    hi: Rational,
}

impl TryFrom<RawBracket> for Bracket {
    type Error = Error;
    fn try_from(raw: RawBracket) -> Result<Self> {
        Bracket::new(raw.lo, raw.hi)
    }
}

impl Bracket {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("bracket with lo {lo} > hi {hi}")));
        }
        Ok(Bracket { lo, hi })
    }

    pub fn exact(x: Rational) -> Self {
        Bracket {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// The value when the bracket is degenerate.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_bracket(&self, other: &Bracket) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Bracket) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from(2)
    }

    pub fn scale(&self, k: &Rational) -> Bracket {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Bracket { lo: b, hi: a }
        } else {
            Bracket { lo: a, hi: b }
        }
    }

    pub fn recip(&self) -> Result<Bracket> {
        if self.contains(&Rational::zero()) {
            return Err(Error::invalid("reciprocal of a bracket containing 0"));
        }
        Ok(Bracket {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    /// Componentwise minimum: encloses `min(x, y)` for `x` in self, `y` in other.
    pub fn min(&self, other: &Bracket) -> Bracket {
        Bracket {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
        }
    }

    pub fn max(&self, other: &Bracket) -> Bracket {
        Bracket {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }
}

impl From<Rational> for Bracket {
    fn from(x: Rational) -> Self {
        Bracket::exact(x)
    }
}

impl fmt::Debug for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "[{}]", self.lo)
        } else {
            write!(f, "[{}, {}] (~{:.12e})", self.lo, self.hi, self.to_f64())
        }
    }
}

impl<'a, 'b> Add<&'b Bracket> for &'a Bracket {
    type Output = Bracket;
    fn add(self, rhs: &'b Bracket) -> Bracket {
        Bracket {
            lo: &self.lo + &rhs.lo,
            hi: &self.hi + &rhs.hi,
        }
    }
}

impl<'a, 'b> Sub<&'b Bracket> for &'a Bracket {
    type Output = Bracket;
    fn sub(self, rhs: &'b Bracket) -> Bracket {
        Bracket {
            lo: &self.lo - &rhs.hi,
            hi: &self.hi - &rhs.lo,
        }
    }
}

impl<'a, 'b> Mul<&'b Bracket> for &'a Bracket {
    type Output = Bracket;
    fn mul(self, rhs: &'b Bracket) -> Bracket {
        let c = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = c.iter().min().cloned().unwrap_or_default();
        let hi = c.iter().max().cloned().unwrap_or_default();
        Bracket { lo, hi }
    }
}

impl Neg for &Bracket {
    type Output = Bracket;
    fn neg(self) -> Bracket {
        Bracket {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Bracket> for Bracket {
            type Output = Bracket;
            fn $m(self, rhs: Bracket) -> Bracket {
                $tr::$m(&self, &rhs)
            }
        }
        impl<'a> $tr<&'a Bracket> for Bracket {
            type Output = Bracket;
            fn $m(self, rhs: &'a Bracket) -> Bracket {
                $tr::$m(&self, rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Exact integer `k`-th root of a nonnegative integer, if one exists.
fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    (num_traits::Pow::pow(&r, k) == *n).then_some(r)
}

/// Encloses `y^(1/k)` for rational `y >= 0` with width at most `tol`.
///
/// Writes `y = P/Q`; the root equals `root_k(P * Q^(k-1)) / Q`. Scaling the
/// radicand by `2^(k*s)` and taking integer roots gives
/// `[r, r + 1] / (Q * 2^s)`. The scale `s` is the least one meeting `tol`, so
/// smaller tolerances only ever nest inside larger ones.
fn root_bracket(y: &Rational, k: u32, tol: &Rational) -> Bracket {
    debug_assert!(!y.is_negative() && k >= 1);
    if k == 1 {
        return Bracket::exact(y.clone());
    }
    let (p, q) = (y.numer(), y.denom());
    if let (Some(rp), Some(rq)) = (exact_root(p, k), exact_root(q, k)) {
        return Bracket::exact(Rational::new(rp, rq));
    }
    // width = 1 / (q * 2^s) <= tol
    let mut s: usize = 0;
    let target = tol * Rational::from_integer(q.clone());
    while Rational::from_integer(BigInt::one() << s) * &target < Rational::one() {
        s += 1;
    }
    let radicand = p * num_traits::Pow::pow(q, k - 1) << (s * k as usize);
    let r = radicand.nth_root(k);
    let den = q << s;
    Bracket {
        lo: Rational::new(r.clone(), den.clone()),
        hi: Rational::new(r + 1, den),
    }
}

/// Encloses `x^e` for rational `x >= 0` and rational `e`, with width at
/// most `tol`. The bracket is degenerate whenever the power is detectably
/// rational (integer exponent, or exact integer roots of numerator and
/// denominator).
pub fn pow_bracket(x: &Rational, e: &Rational, tol: &Rational) -> Result<Bracket> {
    if x.is_negative() {
        return Err(Error::invalid(format!("pow_bracket of negative base {x}")));
    }
    if x.is_zero() && e.is_negative() {
        return Err(Error::invalid("pow_bracket of 0 with negative exponent"));
    }
    if !tol.is_positive() {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if x.is_zero() {
        return Ok(Bracket::exact(if e.is_zero() {
            Rational::one()
        } else {
            Rational::zero()
        }));
    }
    let num = e.numer();
    let den: u32 = u32::try_from(e.denom())
        .map_err(|_| Error::invalid(format!("exponent denominator too large: {e}")))?;
    let mag = i64::try_from(num.abs())
        .map_err(|_| Error::invalid(format!("exponent numerator too large: {e}")))?;
    // x^(num/den) = (x^|num|)^(1/den), inverted for negative exponents.
    let base = if num.sign() == Sign::Minus {
        x.recip().pow(mag)
    } else {
        x.pow(mag)
    };
    Ok(root_bracket(&base, den, tol))
}

/// Rational `k`-th root bracket; shorthand for `pow_bracket(y, 1/k, tol)`.
pub fn nth_root_bracket(y: &Rational, k: u32, tol: &Rational) -> Result<Bracket> {
    if k == 0 {
        return Err(Error::invalid("zeroth root"));
    }
    pow_bracket(y, &Rational::new(1, k as i64), tol)
}

/// Integer power of a bracket with nonnegative endpoints.
pub fn bracket_powi(b: &Bracket, e: u32) -> Bracket {
    debug_assert!(!b.lo().is_negative());
    Bracket {
        lo: b.lo().pow(e as i64),
        hi: b.hi().pow(e as i64),
    }
}
