//! Effective Matsusaka bounds: section windows, the main very-ampleness
//! bound with its internal recursion, and the surface comparison.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::adjoint::twisted_adjoint_very_ample;
use crate::error::{Error, Result};
use crate::numeric::{pow_bracket, Bracket, CoprimeBasis, Factored, Rational};

/// Least integer `m0 > n LB / L^n`, plus the window width `n`: some
/// `m <= m0 + n` gives `K + mL - B` a section.
pub fn section_window(n: u32, lb: &Rational, ln: &Rational) -> Result<BigInt> {
    require_ln(ln)?;
    let m0 = (Rational::from(n) * lb / ln).floor() + 1;
    Ok(m0 + n)
}

/// `ceil(n ((LB + LK) / L^n + n + 1))`: some `m` up to this gives `mL - B`
/// a section.
pub fn section_window_with_canonical(
    n: u32,
    lb: &Rational,
    lk: &Rational,
    ln: &Rational,
) -> Result<BigInt> {
    require_ln(ln)?;
    let x = Rational::from(n) * ((lb + lk) / ln + Rational::from(n + 1));
    Ok(x.ceil())
}

fn require_ln(ln: &Rational) -> Result<()> {
    if !ln.is_positive() {
        return Err(Error::invalid("L^n must be positive"));
    }
    Ok(())
}

/// Source of `lambda_n`, the multiple making `m(K + (n+2)L) + G` very ample.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LambdaPolicy {
    /// `C(3n+1, n) - 2n`.
    Binomial,
    /// `n^3 - n^2 - n - 1`, for `n >= 2`.
    AngehrnSiu,
    Explicit(#[serde(with = "crate::numeric::bigint")] BigInt),
}

pub fn lambda_n(n: u32, policy: &LambdaPolicy) -> Result<BigInt> {
    match policy {
        LambdaPolicy::Binomial => twisted_adjoint_very_ample(n),
        LambdaPolicy::AngehrnSiu => {
            if n < 2 {
                return Err(Error::invalid("this lambda_n needs n >= 2"));
            }
            let n = BigInt::from(n);
            Ok(&n * &n * &n - &n * &n - &n - 1)
        }
        LambdaPolicy::Explicit(v) => {
            if !v.is_positive() {
                return Err(Error::invalid("lambda_n must be positive"));
            }
            Ok(v.clone())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatsusakaInputs {
    pub n: u32,
    pub ln: Rational,
    /// `L^{n-1}.B`.
    #[serde(default)]
    pub lb: Rational,
    /// `L^{n-1}.K`.
    pub lk: Rational,
    /// `L^{n-1}.H`; derived as `lambda_n (LK + (n+2) L^n)` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lh: Option<Rational>,
    pub policy: LambdaPolicy,
}

impl MatsusakaInputs {
    pub fn lh(&self) -> Result<Rational> {
        let lh = match &self.lh {
            Some(v) => v.clone(),
            None => {
                let lambda = Rational::from(lambda_n(self.n, &self.policy)?);
                lambda * (&self.lk + Rational::from(self.n + 2) * &self.ln)
            }
        };
        if !lh.is_positive() {
            return Err(Error::invalid("L^{n-1}.H must be positive"));
        }
        Ok(lh)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid("the bound needs n >= 2"));
        }
        require_ln(&self.ln)?;
        if self.lb.is_negative() {
            return Err(Error::invalid("L^{n-1}.B of a nef B is nonnegative"));
        }
        Ok(())
    }
}

fn pow3(k: u32) -> BigInt {
    BigInt::from(3).pow(k)
}

/// Exponents `(3^{n-1}-1)/2`, `(3^{n-1}+1)/2`, `3^{n-2}(n/2-3/4)-1/4`,
/// `3^{n-2}(n/2-1/4)+1/4` of the main bound.
pub fn main_exponents(n: u32) -> [Rational; 4] {
    let a = Rational::from(pow3(n - 1));
    let b = Rational::from(pow3(n - 2));
    let nh = Rational::new(n as i64, 2);
    [
        (&a - Rational::one()) / Rational::from(2),
        (&a + Rational::one()) / Rational::from(2),
        &b * (&nh - Rational::new(3, 4)) - Rational::new(1, 4),
        &b * (&nh - Rational::new(1, 4)) + Rational::new(1, 4),
    ]
}

/// `3^{n-2}(n/2 + 3/4) + 1/4`.
pub fn very_ample_exponent(n: u32) -> Rational {
    Rational::from(pow3(n - 2)) * (Rational::new(n as i64, 2) + Rational::new(3, 4))
        + Rational::new(1, 4)
}

/// `mL - B` is very ample for every `m >=` the returned value:
/// `(2n)^e0 LBH^e1 LH^e2 / (L^n)^e3` with `LBH = LB + LH`.
pub fn matsusaka_main(inp: &MatsusakaInputs, tol: &Rational) -> Result<Bracket> {
    inp.validate()?;
    let lh = inp.lh()?;
    let lbh = &inp.lb + &lh;
    let [e0, e1, e2, e3] = main_exponents(inp.n);
    let num = [
        pow_bracket(&Rational::from(2 * inp.n), &e0, tol)?,
        pow_bracket(&lbh, &e1, tol)?,
        pow_bracket(&lh, &e2, tol)?,
    ];
    let den = pow_bracket(&inp.ln, &e3, tol)?;
    let prod = num.iter().fold(Bracket::exact(Rational::one()), |acc, b| &acc * b);
    Ok(&prod * &den.recip()?)
}

/// `C_n (L^n)^{3^{n-2}} (n + 2 + LK/L^n)^e` with
/// `C_n = (2n)^{(3^{n-1}-1)/2} lambda_n^e`; equals the main bound at `B = 0`.
pub fn matsusaka_very_ample(
    n: u32,
    ln: &Rational,
    lk: &Rational,
    policy: &LambdaPolicy,
    tol: &Rational,
) -> Result<Bracket> {
    if n < 2 {
        return Err(Error::invalid("the bound needs n >= 2"));
    }
    require_ln(ln)?;
    let x = Rational::from(n + 2) + lk / ln;
    if !x.is_positive() {
        return Err(Error::invalid("n + 2 + LK/L^n must be positive"));
    }
    let e = very_ample_exponent(n);
    let lambda = Rational::from(lambda_n(n, policy)?);
    let cn = &pow_bracket(&Rational::from(2 * n), &main_exponents(n)[0], tol)?
        * &pow_bracket(&lambda, &e, tol)?;
    let lnp = Bracket::exact(ln.pow(pow3(n - 2).try_into().unwrap_or(i64::MAX)));
    Ok(&(&cn * &lnp) * &pow_bracket(&x, &e, tol)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MbarRecursion {
    /// `mbar_1, ..., mbar_n` from the recursion.
    pub recursive: Vec<Rational>,
    /// `mbar_1, ..., mbar_{n-1}` from the closed form.
    pub closed_form: Vec<Rational>,
    pub agree: bool,
}

/// `mbar_n = M / L^n` and `mbar_p = M LH^p / (L^n)^{p-1} (mbar_{p+1} ... mbar_n)^2`,
/// against `M^{3^{n-p}} LH^{(3^{n-p-1}(2n-3)+1)/2} / (L^n)^{(3^{n-p-1}(2n-1)+1)/2}`.
pub fn mbar_recursion(n: u32, m: &Rational, lh: &Rational, ln: &Rational) -> Result<MbarRecursion> {
    if n < 2 {
        return Err(Error::invalid("the recursion needs n >= 2"));
    }
    if !m.is_positive() || !lh.is_positive() || !ln.is_positive() {
        return Err(Error::invalid("M, LH and L^n must be positive"));
    }
    let basis = CoprimeBasis::new(&[m, lh, ln])?;
    let (fm, fh, fn_) = (basis.factor(m)?, basis.factor(lh)?, basis.factor(ln)?);
    let n_us = n as usize;
    let mut rec = vec![basis.one(); n_us];
    rec[n_us - 1] = fm.div(&fn_);
    let mut tail = rec[n_us - 1].clone();
    for p in (1..n).rev() {
        let v = fm
            .mul(&fh.pow(p as i64))
            .div(&fn_.pow(p as i64 - 1))
            .mul(&tail.pow(2));
        tail = tail.mul(&v);
        rec[p as usize - 1] = v;
    }
    let closed: Vec<Factored> = (1..n)
        .map(|p| {
            let k = pow3(n - p - 1);
            let e_m = &k * 3;
            let e_h: BigInt = (&k * (2 * n - 3) + 1) / 2;
            let e_n: BigInt = (&k * (2 * n - 1) + 1) / 2;
            let as_i64 = |b: &BigInt| i64::try_from(b).expect("exponent fits for n <= 40");
            fm.pow(as_i64(&e_m))
                .mul(&fh.pow(as_i64(&e_h)))
                .div(&fn_.pow(as_i64(&e_n)))
        })
        .collect();
    let rec: Vec<Rational> = rec.iter().map(|f| basis.value(f)).collect();
    let closed: Vec<Rational> = closed.iter().map(|f| basis.value(f)).collect();
    let agree = closed.iter().zip(&rec).all(|(a, b)| a == b);
    Ok(MbarRecursion {
        recursive: rec,
        closed_form: closed,
        agree,
    })
}

/// `max(mbar_2, ..., mbar_n, mbar_2 ... mbar_n LBH)`.
pub fn m0_assembly(mbars: &[Rational], lbh: &Rational) -> Result<Rational> {
    if mbars.is_empty() {
        return Err(Error::invalid("no multiples supplied"));
    }
    let prod: Rational = mbars.iter().product::<Rational>() * lbh;
    Ok(mbars.iter().cloned().fold(prod, Rational::max))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceComparison {
    /// `mL` very ample for `m >` this.
    pub sharper_strict: Rational,
    #[serde(with = "crate::numeric::bigint")]
    pub sharper_min_m: BigInt,
    /// `4 (L.(K+4L))^2 / L^2`; `mL` very ample for `m >=` this.
    pub factor_four: Rational,
    #[serde(with = "crate::numeric::bigint")]
    pub factor_four_min_m: BigInt,
}

/// Surface thresholds `m > ((x + 1)^2 / L^2 + 3) / 2` and
/// `m >= 4 x^2 / L^2` with `x = L.(K + 4L)`.
pub fn surface_comparison(l2: &Rational, x: &Rational) -> Result<SurfaceComparison> {
    if *l2 < 1 {
        return Err(Error::invalid("L^2 must be at least 1"));
    }
    let sharper = ((x + Rational::one()).pow(2) / l2 + Rational::from(3)) / Rational::from(2);
    let four = Rational::from(4) * x.pow(2) / l2;
    Ok(SurfaceComparison {
        sharper_min_m: sharper.floor() + 1,
        sharper_strict: sharper,
        factor_four_min_m: four.ceil(),
        factor_four: four,
    })
}
