//! Leaf commands. Each argument struct is filled either from flags or from
//! the `args` object of a JSON request.

use std::collections::BTreeMap;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use posbounds_core::matsusaka::LambdaPolicy;
use posbounds_core::Rational;
use serde::{Deserialize, Serialize};

fn parse_pair<A: FromStr, B: FromStr>(item: &str) -> Result<(A, B), String> {
    let (a, b) = item
        .split_once(':')
        .ok_or_else(|| format!("expected `a:b`, got {item:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad key in {item:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad value in {item:?}"))?;
    Ok((a, b))
}

/// `p -> value`, written `1:30,2:100` on the command line.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(transparent)]
pub struct DimMap(pub BTreeMap<u32, Rational>);

impl FromStr for DimMap {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(parse_pair)
            .collect::<Result<_, _>>()
            .map(DimMap)
    }
}

/// Surface divisors as `(L.D, D^2)`, written `1:0,2:-1`.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(transparent)]
pub struct Divisors(pub Vec<(i64, i64)>);

impl FromStr for Divisors {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(parse_pair)
            .collect::<Result<_, _>>()
            .map(Divisors)
    }
}

/// `binomial`, `angehrn-siu`, or a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Policy(pub LambdaPolicy);

impl Default for Policy {
    fn default() -> Self {
        Policy(LambdaPolicy::Binomial)
    }
}

impl FromStr for Policy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "binomial" => Ok(Policy(LambdaPolicy::Binomial)),
            "angehrn-siu" => Ok(Policy(LambdaPolicy::AngehrnSiu)),
            other => other
                .parse()
                .map(|v| Policy(LambdaPolicy::Explicit(v)))
                .map_err(|_| format!("unknown lambda policy {s:?}")),
        }
    }
}

impl<'de> Deserialize<'de> for Policy {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Text(String),
            Core(LambdaPolicy),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Policy(LambdaPolicy::Explicit(v.into()))),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Core(p) => Ok(Policy(p)),
        }
    }
}

fn one_jet() -> Vec<u32> {
    vec![1]
}

fn zero() -> Rational {
    Rational::zero()
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetArgs {
    #[arg(long)]
    pub n: u32,
    /// Jet order at each point.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    #[serde(default = "one_jet")]
    pub jets: Vec<u32>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    #[serde(default = "one_jet")]
    pub jets: Vec<u32>,
    /// Declared minima `L^d.Y`, as `d:value,...`.
    #[arg(long)]
    #[serde(default)]
    pub declared: Option<DimMap>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimArgs {
    #[arg(long)]
    pub n: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Spanned,
    Separation,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReiderArgs {
    #[arg(long)]
    pub l2: i64,
    /// Both modes when absent.
    #[arg(long, value_enum)]
    #[serde(default)]
    pub mode: Option<Mode>,
    /// Effective divisors as `L.D:D^2,...`.
    #[arg(long, default_value = "")]
    #[serde(default)]
    pub divisors: Divisors,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BesArgs {
    #[arg(long)]
    pub l2: i64,
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value = "")]
    #[serde(default)]
    pub divisors: Divisors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    GeneralType,
    Fano,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PluriArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum)]
    pub sign: Sign,
    /// `|K^n|`, for the embedding degree.
    #[arg(long)]
    #[serde(default)]
    pub kn: Option<u64>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceArgs {
    #[arg(long, value_delimiter = ',', default_value = "1")]
    #[serde(default = "one_jet")]
    pub jets: Vec<u32>,
    #[arg(long)]
    pub l2: Rational,
    /// Least `L.C` over curves through the points.
    #[arg(long)]
    pub min_lc: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaPolicy {
    Sum,
    TwiceNn,
    MaxOfBoth,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetsMainArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long = "Ln")]
    #[serde(rename = "Ln")]
    pub ln: Rational,
    /// Explicit `sigma_0`; otherwise derived from the jets.
    #[arg(long)]
    #[serde(default)]
    pub sigma0: Option<Rational>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    #[serde(default = "one_jet")]
    pub jets: Vec<u32>,
    #[arg(long, value_enum, default_value = "sum")]
    #[serde(default = "default_sigma_policy")]
    pub policy: SigmaPolicy,
    /// `T_X (x) O(aL)` is nef.
    #[arg(long, default_value = "0")]
    #[serde(default = "zero")]
    pub a: Rational,
    /// Defaults to the schedule `n^{-n(n-p)/(p-1)}`.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub beta: Vec<Rational>,
    /// Declared minima `L^{n-p}.Y` by codimension `p`.
    #[arg(long = "min", default_value = "")]
    #[serde(default, rename = "min")]
    pub min_y: DimMap,
    #[arg(long)]
    #[serde(default)]
    pub nef_twist: bool,
}

fn default_sigma_policy() -> SigmaPolicy {
    SigmaPolicy::Sum
}

fn s_range() -> Vec<u32> {
    (0..=5).collect()
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableArgs {
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4,5")]
    #[serde(default = "s_range")]
    pub s: Vec<u32>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuArgs {
    #[arg(long)]
    pub n: u32,
    /// Declared minima `F^p.Y` by dimension `p`.
    #[arg(long)]
    pub per_dim: DimMap,
    /// Also test that `F` could generate `s`-jets.
    #[arg(long)]
    #[serde(default)]
    pub s: Option<u32>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuThresholdArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub s: u32,
    #[arg(long)]
    #[serde(default)]
    pub special: bool,
    #[arg(long)]
    #[serde(default)]
    pub mu: Option<Rational>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatsusakaArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long = "Ln")]
    #[serde(rename = "Ln")]
    pub ln: Rational,
    #[arg(long = "LK")]
    #[serde(rename = "LK")]
    pub lk: Rational,
    #[arg(long = "LB", default_value = "0")]
    #[serde(rename = "LB", default = "zero")]
    pub lb: Rational,
    #[arg(long = "LH")]
    #[serde(rename = "LH", default)]
    pub lh: Option<Rational>,
    #[arg(long, default_value = "binomial")]
    #[serde(default)]
    pub policy: Policy,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorseArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long = "Fn")]
    #[serde(rename = "Fn", default)]
    pub fn_: Option<Rational>,
    #[arg(long = "FG")]
    #[serde(rename = "FG", default)]
    pub fg: Option<Rational>,
    /// Fixture `F = O(a,...,a)` on `(P^1)^n`.
    #[arg(long)]
    #[serde(default)]
    pub a: Option<i64>,
    /// Fixture `G = O(b_1,...,b_n)`.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub b: Vec<i64>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultIdealArgs {
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub alpha: Vec<Rational>,
    /// SNC coefficients to round down instead.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub snc: Vec<Rational>,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LelongArgs {
    /// `u,v` for the curve `t -> (t^u, t^v)`.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub cusp: Vec<u32>,
    #[arg(long, value_delimiter = ',', default_value = "1,0.1,0.01,0.001")]
    #[serde(default = "default_radii")]
    pub radii: Vec<Rational>,
}

fn default_radii() -> Vec<Rational> {
    [1, 10, 100, 1000].iter().map(|&d| Rational::new(1, d)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    A,
    B,
    C,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyArgs {
    /// Coefficients in the basis `C(m, j)`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub coeffs: Vec<i64>,
    #[arg(long, default_value = "0", allow_negative_numbers = true)]
    #[serde(default)]
    pub m0: i64,
    #[arg(long, value_enum)]
    pub variant: Variant,
    /// `N` for variants a and c, `k` for variant b.
    #[arg(long)]
    pub n: i64,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductsArgs {
    #[arg(long, value_delimiter = ',')]
    pub selfints: Vec<Rational>,
    #[arg(long)]
    pub mixed: Rational,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: u32,
    #[arg(long = "Ln")]
    #[serde(rename = "Ln")]
    pub ln: Rational,
    #[arg(long = "LH")]
    #[serde(rename = "LH")]
    pub lh: Rational,
    /// `L^{n-p} H^p`.
    #[arg(long = "LpH")]
    #[serde(rename = "LpH")]
    pub lp_h: Rational,
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagArgs {
    #[arg(long, value_delimiter = ',')]
    pub lambdas: Vec<Rational>,
    #[arg(long)]
    pub p: u32,
}

/// One polarized variety for `compare`: `n:Ln:LK[:mu]` on the command line.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Profile {
    pub n: u32,
    #[serde(rename = "Ln")]
    pub ln: Rational,
    #[serde(rename = "LK")]
    pub lk: Rational,
    #[serde(default)]
    pub mu: Option<Rational>,
}

impl FromStr for Profile {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(format!("expected n:Ln:LK[:mu], got {s:?}"));
        }
        let q = |t: &str| t.parse::<Rational>().map_err(|e| e.to_string());
        Ok(Profile {
            n: parts[0].parse().map_err(|_| format!("bad dimension in {s:?}"))?,
            ln: q(parts[1])?,
            lk: q(parts[2])?,
            mu: parts.get(3).map(|t| q(t)).transpose()?,
        })
    }
}

#[derive(Debug, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareArgs {
    #[arg(long = "profile")]
    #[serde(default)]
    pub profiles: Vec<Profile>,
    /// Any of `siu`, `twisted-adjoint`, `jets-mu`, `matsusaka`.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub theorems: Vec<String>,
}

/// A fully resolved command.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "command", content = "args", deny_unknown_fields)]
pub enum Request {
    #[serde(rename = "bounds siu")]
    Siu(JetArgs),
    #[serde(rename = "bounds degree")]
    Degree(DegreeArgs),
    #[serde(rename = "bounds double-adjoint")]
    DoubleAdjoint(DegreeArgs),
    #[serde(rename = "bounds twisted-adjoint")]
    TwistedAdjoint(DimArgs),
    #[serde(rename = "bounds reider")]
    Reider(ReiderArgs),
    #[serde(rename = "bounds bes")]
    Bes(BesArgs),
    #[serde(rename = "bounds pluri")]
    Pluri(PluriArgs),
    #[serde(rename = "bounds surface")]
    Surface(SurfaceArgs),
    #[serde(rename = "jets main")]
    JetsMain(Box<JetsMainArgs>),
    #[serde(rename = "jets table")]
    JetsTable(TableArgs),
    #[serde(rename = "jets mu")]
    Mu(MuArgs),
    #[serde(rename = "jets mu-threshold")]
    MuThreshold(MuThresholdArgs),
    #[serde(rename = "jets cn")]
    Cn(DimArgs),
    #[serde(rename = "matsusaka")]
    Matsusaka(MatsusakaArgs),
    #[serde(rename = "morse")]
    Morse(MorseArgs),
    #[serde(rename = "mult-ideal")]
    MultIdeal(MultIdealArgs),
    #[serde(rename = "lelong")]
    Lelong(LelongArgs),
    #[serde(rename = "poly")]
    Poly(PolyArgs),
    #[serde(rename = "ht products")]
    HtProducts(ProductsArgs),
    #[serde(rename = "ht chain")]
    HtChain(ChainArgs),
    #[serde(rename = "ht diag")]
    HtDiag(DiagArgs),
    #[serde(rename = "compare")]
    Compare(CompareArgs),
}

/// `{"schema": 1, "request": {...}}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    pub schema: u32,
    pub request: Request,
}
