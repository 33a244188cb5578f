use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binom(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient with a possibly negative upper index, via the
/// falling factorial `n (n-1) ... (n-k+1) / k!`.
pub fn binom_signed(n: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Elementary symmetric polynomial `e_j(values)`; `e_0 = 1`.
pub fn elem_sym(values: &[Rational], j: usize) -> Result<Rational> {
    if j > values.len() {
        return Err(Error::invalid(format!(
            "elementary symmetric degree {j} exceeds {} values",
            values.len()
        )));
    }
    Ok(elem_sym_all(values).swap_remove(j))
}

/// All of `e_0, ..., e_len` at once.
pub fn elem_sym_all(values: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); values.len() + 1];
    e[0] = Rational::one();
    for (i, v) in values.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let t = v * &e[k - 1];
            e[k] += t;
        }
    }
    e
}

pub fn floor_q(x: &Rational) -> BigInt {
    x.floor()
}

pub fn ceil_q(x: &Rational) -> BigInt {
    x.ceil()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize) -> Vec<Vec<BigInt>> {
        let mut rows = vec![vec![BigInt::one()]];
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = vec![BigInt::one(); i + 1];
            for k in 1..i {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn binom_against_pascal() {
        let rows = pascal(40);
        for (n, row) in rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binom(n as u64, k as i64), v);
            }
            assert!(binom(n as u64, -1).is_zero());
            assert!(binom(n as u64, n as i64 + 1).is_zero());
        }
        assert_eq!(binom(7, 2), BigInt::from(21));
        assert_eq!(binom(10, 3), BigInt::from(120));
    }

    #[test]
    fn signed_binom() {
        assert_eq!(binom_signed(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binom_signed(&BigInt::from(1), 2), BigInt::zero());
        assert_eq!(binom_signed(&BigInt::from(6), 3), BigInt::from(20));
    }

    #[test]
    fn elem_sym_examples() {
        let v: Vec<Rational> = [1, 2, 3].iter().map(|&x| Rational::from(x)).collect();
        assert_eq!(elem_sym(&v, 0).unwrap(), Rational::one());
        assert_eq!(elem_sym(&v, 2).unwrap(), Rational::from(11));
        assert_eq!(elem_sym(&v, 3).unwrap(), Rational::from(6));
        assert!(elem_sym(&v, 4).is_err());
        assert_eq!(elem_sym(&[], 0).unwrap(), Rational::one());
    }

    #[test]
    fn floor_ceil_signs() {
        assert_eq!(floor_q(&Rational::new(5, 2)), BigInt::from(2));
        assert_eq!(ceil_q(&Rational::new(5, 2)), BigInt::from(3));
        assert_eq!(floor_q(&Rational::new(-1, 3)), BigInt::from(-1));
        assert_eq!(ceil_q(&Rational::new(-1, 3)), BigInt::zero());
    }
}
