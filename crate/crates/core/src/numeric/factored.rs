//! Positive rationals as exponent vectors over a pairwise coprime basis.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Pairwise coprime integers `> 1` generating the given positive rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoprimeBasis {
    base: Vec<BigInt>,
}

/// `prod base[i]^exps[i]` over a fixed [`CoprimeBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    exps: Vec<i64>,
}

impl CoprimeBasis {
    pub fn new(values: &[&Rational]) -> Result<Self> {
        if values.iter().any(|v| !v.is_positive()) {
            return Err(Error::invalid("coprime basis needs positive rationals"));
        }
        let mut base: Vec<BigInt> = values
            .iter()
            .flat_map(|v| [v.numer().clone(), v.denom().clone()])
            .filter(|x| !x.is_one())
            .collect();
        'refine: loop {
            for i in 0..base.len() {
                for j in i + 1..base.len() {
                    let g = base[i].gcd(&base[j]);
                    if g.is_one() {
                        continue;
                    }
                    let (a, b) = (&base[i] / &g, &base[j] / &g);
                    base.swap_remove(j);
                    base.swap_remove(i);
                    base.extend([a, b, g].into_iter().filter(|x| !x.is_one()));
                    continue 'refine;
                }
            }
            break;
        }
        base.sort();
        Ok(CoprimeBasis { base })
    }

    fn exponents_of(&self, mut x: BigInt) -> Result<Vec<i64>> {
        let out = self
            .base
            .iter()
            .map(|b| {
                let mut e = 0;
                loop {
                    let (q, r) = x.div_rem(b);
                    if !r.is_zero() {
                        break e;
                    }
                    x = q;
                    e += 1;
                }
            })
            .collect();
        if x.is_one() {
            Ok(out)
        } else {
            Err(Error::invalid("value not generated by the basis"))
        }
    }

    pub fn factor(&self, v: &Rational) -> Result<Factored> {
        if !v.is_positive() {
            return Err(Error::invalid("only positive rationals factor"));
        }
        let num = self.exponents_of(v.numer().clone())?;
        let den = self.exponents_of(v.denom().clone())?;
        Ok(Factored {
            exps: num.iter().zip(&den).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn one(&self) -> Factored {
        Factored {
            exps: vec![0; self.base.len()],
        }
    }

    /// Coprimality of the basis makes the result already reduced.
    pub fn value(&self, f: &Factored) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (b, &e) in self.base.iter().zip(&f.exps) {
            let p: BigInt = Pow::pow(b, e.unsigned_abs());
            if e >= 0 {
                num *= p;
            } else {
                den *= p;
            }
        }
        Rational::from_coprime(num, den)
    }
}

impl Factored {
    pub fn mul(&self, other: &Factored) -> Factored {
        Factored {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn div(&self, other: &Factored) -> Factored {
        Factored {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> Factored {
        Factored {
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn basis_is_coprime_and_generates() {
        let vals = [q(12, 35), q(18, 5), q(49, 10)];
        let basis = CoprimeBasis::new(&vals.iter().collect::<Vec<_>>()).unwrap();
        for (i, a) in basis.base.iter().enumerate() {
            for b in &basis.base[i + 1..] {
                assert!(a.gcd(b).is_one());
            }
        }
        for v in &vals {
            assert_eq!(&basis.value(&basis.factor(v).unwrap()), v);
        }
        assert!(basis.factor(&q(11, 1)).is_err());
    }

    #[test]
    fn arithmetic_matches_rationals() {
        let (a, b) = (q(6, 35), q(10, 21));
        let basis = CoprimeBasis::new(&[&a, &b]).unwrap();
        let (fa, fb) = (basis.factor(&a).unwrap(), basis.factor(&b).unwrap());
        assert_eq!(basis.value(&fa.mul(&fb)), &a * &b);
        assert_eq!(basis.value(&fa.div(&fb)), &a / &b);
        assert_eq!(basis.value(&fa.pow(7).div(&fb.pow(3))), a.pow(7) / b.pow(3));
        assert_eq!(basis.value(&basis.one()), Rational::one());
    }
}
