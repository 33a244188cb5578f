//! Intersection numbers and section counts on products of projective spaces.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{self, factorial, Rational};

/// `P^{k_1} x ... x P^{k_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct ProductSpace {
    factor_dims: Vec<u32>,
}

impl TryFrom<Vec<u32>> for ProductSpace {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        ProductSpace::new(v)
    }
}

impl From<ProductSpace> for Vec<u32> {
    fn from(s: ProductSpace) -> Self {
        s.factor_dims
    }
}

impl ProductSpace {
    pub fn new(factor_dims: Vec<u32>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(Error::invalid("product space needs at least one factor"));
        }
        if factor_dims.contains(&0) {
            return Err(Error::invalid("factor dimensions must be positive"));
        }
        Ok(ProductSpace { factor_dims })
    }

    pub fn projective(k: u32) -> Result<Self> {
        Self::new(vec![k])
    }

    /// `(P^1)^n`.
    pub fn p1_power(n: u32) -> Result<Self> {
        Self::new(vec![1; n as usize])
    }

    pub fn factor_dims(&self) -> &[u32] {
        &self.factor_dims
    }

    pub fn factors(&self) -> usize {
        self.factor_dims.len()
    }

    pub fn dim(&self) -> u32 {
        self.factor_dims.iter().sum()
    }
}

/// `sum_i c_i * pr_i^* O(1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    space: ProductSpace,
    coeffs: Vec<BigInt>,
}

/// JSON form `{"factors":[1,1],"class":[a,b]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSpec {
    pub factors: Vec<u32>,
    pub class: Vec<i64>,
}

impl DivisorClass {
    pub fn new(space: &ProductSpace, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != space.factors() {
            return Err(Error::invalid(format!(
                "{} coefficients for a product of {} factors",
                coeffs.len(),
                space.factors()
            )));
        }
        Ok(DivisorClass {
            space: space.clone(),
            coeffs,
        })
    }

    pub fn from_ints(space: &ProductSpace, coeffs: &[i64]) -> Result<Self> {
        Self::new(space, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_spec(spec: &ClassSpec) -> Result<Self> {
        Self::from_ints(&ProductSpace::new(spec.factors.clone())?, &spec.class)
    }

    pub fn space(&self) -> &ProductSpace {
        &self.space
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn scaled(&self, m: &BigInt) -> DivisorClass {
        DivisorClass {
            space: self.space.clone(),
            coeffs: self.coeffs.iter().map(|c| c * m).collect(),
        }
    }

    pub fn plus(&self, other: &DivisorClass) -> Result<DivisorClass> {
        same_space(&self.space, &other.space)?;
        Ok(DivisorClass {
            space: self.space.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn minus(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.plus(&other.scaled(&BigInt::from(-1)))
    }

    pub fn is_nef(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_ample(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_positive())
    }
}

fn same_space(a: &ProductSpace, b: &ProductSpace) -> Result<()> {
    if a != b {
        return Err(Error::invalid("classes live on different product spaces"));
    }
    Ok(())
}

pub fn is_nef(class: &DivisorClass) -> bool {
    class.is_nef()
}

pub fn is_ample(class: &DivisorClass) -> bool {
    class.is_ample()
}

pub fn canonical_class(space: &ProductSpace) -> DivisorClass {
    DivisorClass {
        space: space.clone(),
        coeffs: space
            .factor_dims
            .iter()
            .map(|&k| -BigInt::from(k + 1))
            .collect(),
    }
}

/// `D_1 * ... * D_n` for `n = dim`.
///
/// Each product of hyperplane pullbacks is 1 exactly when factor `f` is hit
/// `k_f` times, so the number is a sum over assignments of classes to
/// factors. Tracked by the vector of remaining per-factor slots.
pub fn top_intersection(classes: &[DivisorClass]) -> Result<BigInt> {
    let space = match classes.first() {
        Some(c) => c.space.clone(),
        None => return Err(Error::invalid("no classes to intersect")),
    };
    for c in classes {
        same_space(&space, &c.space)?;
    }
    if classes.len() != space.dim() as usize {
        return Err(Error::invalid(format!(
            "{} classes on a space of dimension {}",
            classes.len(),
            space.dim()
        )));
    }
    let mut states: HashMap<Vec<u32>, BigInt> = HashMap::new();
    states.insert(space.factor_dims.clone(), BigInt::one());
    for class in classes {
        let mut next: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (slots, weight) in &states {
            for (f, c) in class.coeffs.iter().enumerate() {
                if slots[f] == 0 || c.is_zero() {
                    continue;
                }
                let mut s = slots.clone();
                s[f] -= 1;
                *next.entry(s).or_insert_with(BigInt::zero) += weight * c;
            }
        }
        states = next;
    }
    Ok(states.into_values().sum())
}

/// `D^a * E^b` with `a + b = dim`.
pub fn mixed_power(d: &DivisorClass, a: usize, e: &DivisorClass, b: usize) -> Result<BigInt> {
    let mut v = vec![d.clone(); a];
    v.extend(std::iter::repeat(e.clone()).take(b));
    top_intersection(&v)
}

/// `h^0(O(c_1, ..., c_r))`.
pub fn h0(class: &DivisorClass) -> BigInt {
    if class.coeffs.iter().any(|c| c.is_negative()) {
        return BigInt::zero();
    }
    class
        .coeffs
        .iter()
        .zip(&class.space.factor_dims)
        .map(|(c, &k)| binom_big(&(c + BigInt::from(k)), k))
        .product()
}

fn binom_big(n: &BigInt, k: u32) -> BigInt {
    numeric::binom_signed(n, k as u64)
}

/// Declared numerical data of a polarized variety.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionProfile {
    pub n: u32,
    #[serde(rename = "Ln", with = "numeric::bigint")]
    pub ln: BigInt,
    #[serde(rename = "LK", with = "numeric::bigint", default)]
    pub lk: BigInt,
    /// `p -> min L^p . Y` over the `p`-dimensional subvarieties in question.
    #[serde(
        rename = "min",
        with = "numeric::bigint_map",
        default,
        skip_serializing_if = "BTreeMap::is_empty"
    )]
    pub per_dim_min: BTreeMap<u32, BigInt>,
    #[serde(
        with = "numeric::bigint_map",
        default,
        skip_serializing_if = "BTreeMap::is_empty"
    )]
    pub aux: BTreeMap<String, BigInt>,
    /// The minima come from a finite family and only bound the true infimum
    /// from above.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub upper_bound_only: bool,
}

impl IntersectionProfile {
    pub fn new(n: u32, ln: impl Into<BigInt>, lk: impl Into<BigInt>) -> Result<Self> {
        let p = IntersectionProfile {
            n,
            ln: ln.into(),
            lk: lk.into(),
            per_dim_min: BTreeMap::new(),
            aux: BTreeMap::new(),
            upper_bound_only: false,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::invalid("profile dimension must be at least 1"));
        }
        if self.ln < BigInt::one() {
            return Err(Error::invalid("profile needs L^n >= 1"));
        }
        for (&p, v) in &self.per_dim_min {
            if p < 1 || p > self.n {
                return Err(Error::invalid(format!("min entry for p={p} outside 1..=n")));
            }
            if !v.is_positive() {
                return Err(Error::invalid(format!("min entry for p={p} must be positive")));
            }
        }
        Ok(())
    }

    pub fn ln_q(&self) -> Rational {
        Rational::from(self.ln.clone())
    }

    pub fn lk_q(&self) -> Rational {
        Rational::from(self.lk.clone())
    }

    pub fn aux_q(&self, key: &str) -> Option<Rational> {
        self.aux.get(key).cloned().map(Rational::from)
    }

    pub fn min_q(&self, p: u32) -> Option<Rational> {
        self.per_dim_min.get(&p).cloned().map(Rational::from)
    }
}

/// Profile of `L = class` exported from the fixture. Minima are taken over
/// products of coordinate linear subspaces only, hence `upper_bound_only`.
pub fn fixture_profile(class: &DivisorClass) -> Result<IntersectionProfile> {
    let space = &class.space;
    let n = space.dim();
    let ln = mixed_power(class, n as usize, class, 0)?;
    let lk = mixed_power(class, n as usize - 1, &canonical_class(space), 1)?;
    let mut per_dim_min = BTreeMap::new();
    for p in 1..=n {
        let mut best: Option<BigInt> = None;
        for d in strata(&space.factor_dims, p) {
            let mut v = factorial(p as u64);
            for (f, &df) in d.iter().enumerate() {
                v /= factorial(df as u64);
                v *= num_traits::pow(class.coeffs[f].clone(), df as usize);
            }
            best = Some(match best {
                Some(b) if b <= v => b,
                _ => v,
            });
        }
        if let Some(b) = best.filter(|b| b.is_positive()) {
            per_dim_min.insert(p, b);
        }
    }
    Ok(IntersectionProfile {
        n,
        ln,
        lk,
        per_dim_min,
        aux: BTreeMap::new(),
        upper_bound_only: true,
    })
}

/// Dimension vectors `(d_f)` with `0 <= d_f <= k_f` and `sum d_f = p`.
fn strata(dims: &[u32], p: u32) -> Vec<Vec<u32>> {
    fn go(dims: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == dims.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let k = dims[cur.len()];
        for d in 0..=k.min(left) {
            cur.push(d);
            go(dims, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(dims, p, &mut Vec::new(), &mut out);
    out
}
