//! Color sequences, binomial coefficients, Catalan numbers and the Catalan
//! triangle.
//!
//! Every family produces a sequence `b_1, b_2, ...` of nonnegative integers.
//! Binomials use the convention `C(n, r) = 0` when `r < 0` or `r > n`, so all
//! closed formulas evaluate on their full domain without case splits.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// The parametric shape of a color sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// `b_i = p`.
    Constant { p: u32 },
    /// `b_i = 0` for `i < m`, `b_i = p` for `i >= m`.
    ConstantShifted { p: u32, m: u32 },
    /// `b_i = p^(i-1)`.
    Exponential { p: u32 },
    /// `b_i = m (i - 1)`.
    Linear0 { m: u32 },
    /// `b_i = m i`.
    Linear { m: u32 },
    /// `b_i = C(p, i - 1)`.
    BinomRow { p: u32 },
    /// `b_i = C(p + i - 1, p)`.
    Figured { p: u32 },
    /// `b_i = C(i, q)`.
    BinomCol { q: u32 },
    /// `b_i = C(i + p - 1, q)`.
    BinomGeneral { p: u32, q: u32 },
    /// `b_i = C(i + k_rows - 1, i)`, the column count of matrix compositions.
    Matrix { k_rows: u32 },
    /// `b_i = c_i`.
    Catalan,
    /// `b_i = c_(i-1)`.
    CatalanShifted,
    /// `b_1, ..., b_L` as given, zero beyond `L`.
    Custom {
        #[serde(with = "crate::decimal::vec")]
        values: Vec<BigUint>,
    },
}

/// A validated color sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FamilyKind", into = "FamilyKind")]
pub struct ColorFamily {
    kind: FamilyKind,
}

/// Raw numeric parameters as supplied on a command line.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub p: Option<u32>,
    pub q: Option<u32>,
    pub m: Option<u32>,
    pub k_rows: Option<u32>,
}

pub const FAMILY_NAMES: [&str; 13] = [
    "constant",
    "constant_shifted",
    "exponential",
    "linear0",
    "linear",
    "binom_row",
    "figured",
    "binom_col",
    "binom_general",
    "matrix",
    "catalan",
    "catalan_shifted",
    "custom",
];

fn positive(family: &'static str, param: &'static str, value: u32) -> Result<()> {
    if value == 0 {
        return Err(Error::InvalidParameter {
            family,
            param,
            reason: "must be at least 1".into(),
        });
    }
    Ok(())
}

impl TryFrom<FamilyKind> for ColorFamily {
    type Error = Error;

    fn try_from(kind: FamilyKind) -> Result<Self> {
        let name = kind.name();
        match &kind {
            FamilyKind::Constant { p }
            | FamilyKind::Exponential { p }
            | FamilyKind::BinomRow { p }
            | FamilyKind::Figured { p } => positive(name, "p", *p)?,
            FamilyKind::ConstantShifted { p, m } => {
                positive(name, "p", *p)?;
                positive(name, "m", *m)?;
            }
            FamilyKind::Linear0 { m } | FamilyKind::Linear { m } => positive(name, "m", *m)?,
            FamilyKind::BinomCol { q } => positive(name, "q", *q)?,
            // q = 0 is admitted: it is the order-1 case of the recurrence family.
            FamilyKind::BinomGeneral { p, .. } => positive(name, "p", *p)?,
            FamilyKind::Matrix { k_rows } => positive(name, "k_rows", *k_rows)?,
            FamilyKind::Catalan | FamilyKind::CatalanShifted | FamilyKind::Custom { .. } => {}
        }
        Ok(ColorFamily { kind })
    }
}

impl From<ColorFamily> for FamilyKind {
    fn from(f: ColorFamily) -> Self {
        f.kind
    }
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Constant { .. } => "constant",
            FamilyKind::ConstantShifted { .. } => "constant_shifted",
            FamilyKind::Exponential { .. } => "exponential",
            FamilyKind::Linear0 { .. } => "linear0",
            FamilyKind::Linear { .. } => "linear",
            FamilyKind::BinomRow { .. } => "binom_row",
            FamilyKind::Figured { .. } => "figured",
            FamilyKind::BinomCol { .. } => "binom_col",
            FamilyKind::BinomGeneral { .. } => "binom_general",
            FamilyKind::Matrix { .. } => "matrix",
            FamilyKind::Catalan => "catalan",
            FamilyKind::CatalanShifted => "catalan_shifted",
            FamilyKind::Custom { .. } => "custom",
        }
    }
}

impl ColorFamily {
    pub fn new(kind: FamilyKind) -> Result<Self> {
        Self::try_from(kind)
    }

    pub fn constant(p: u32) -> Result<Self> {
        Self::new(FamilyKind::Constant { p })
    }

    pub fn constant_shifted(p: u32, m: u32) -> Result<Self> {
        Self::new(FamilyKind::ConstantShifted { p, m })
    }

    pub fn exponential(p: u32) -> Result<Self> {
        Self::new(FamilyKind::Exponential { p })
    }

    pub fn linear0(m: u32) -> Result<Self> {
        Self::new(FamilyKind::Linear0 { m })
    }

    pub fn linear(m: u32) -> Result<Self> {
        Self::new(FamilyKind::Linear { m })
    }

    pub fn binom_row(p: u32) -> Result<Self> {
        Self::new(FamilyKind::BinomRow { p })
    }

    pub fn figured(p: u32) -> Result<Self> {
        Self::new(FamilyKind::Figured { p })
    }

    pub fn binom_col(q: u32) -> Result<Self> {
        Self::new(FamilyKind::BinomCol { q })
    }

    pub fn binom_general(p: u32, q: u32) -> Result<Self> {
        Self::new(FamilyKind::BinomGeneral { p, q })
    }

    pub fn matrix(k_rows: u32) -> Result<Self> {
        Self::new(FamilyKind::Matrix { k_rows })
    }

    pub fn catalan() -> Self {
        ColorFamily {
            kind: FamilyKind::Catalan,
        }
    }

    pub fn catalan_shifted() -> Self {
        ColorFamily {
            kind: FamilyKind::CatalanShifted,
        }
    }

    pub fn custom<I, T>(values: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        ColorFamily {
            kind: FamilyKind::Custom {
                values: values.into_iter().map(Into::into).collect(),
            },
        }
    }

    /// Resolves a family name plus loose parameters, as given on a command
    /// line. `custom` needs its values separately, see [`parse_custom`].
    pub fn from_name(name: &str, params: FamilyParams) -> Result<Self> {
        let family: &'static str = FAMILY_NAMES
            .iter()
            .find(|n| **n == name)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
        let need = |param: &'static str, v: Option<u32>| {
            v.ok_or_else(|| Error::InvalidParameter {
                family,
                param,
                reason: "required".into(),
            })
        };
        let kind = match family {
            "constant" => FamilyKind::Constant {
                p: need("p", params.p)?,
            },
            "constant_shifted" => FamilyKind::ConstantShifted {
                p: need("p", params.p)?,
                m: need("m", params.m)?,
            },
            "exponential" => FamilyKind::Exponential {
                p: need("p", params.p)?,
            },
            "linear0" => FamilyKind::Linear0 {
                m: need("m", params.m)?,
            },
            "linear" => FamilyKind::Linear {
                m: need("m", params.m)?,
            },
            "binom_row" => FamilyKind::BinomRow {
                p: need("p", params.p)?,
            },
            "figured" => FamilyKind::Figured {
                p: need("p", params.p)?,
            },
            "binom_col" => FamilyKind::BinomCol {
                q: need("q", params.q)?,
            },
            "binom_general" => FamilyKind::BinomGeneral {
                p: need("p", params.p)?,
                q: need("q", params.q)?,
            },
            "matrix" => FamilyKind::Matrix {
                k_rows: need("k_rows", params.k_rows)?,
            },
            "catalan" => FamilyKind::Catalan,
            "catalan_shifted" => FamilyKind::CatalanShifted,
            _ => {
                return Err(Error::InvalidParameter {
                    family,
                    param: "b_file",
                    reason: "custom sequences need a sequence file".into(),
                })
            }
        };
        Self::new(kind)
    }

    pub fn kind(&self) -> &FamilyKind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// `b_i`. Index 0 is outside every sequence and yields 0.
    pub fn color_count(&self, i: u64) -> BigCount {
        if i == 0 {
            return BigUint::zero();
        }
        let big = |v: u64| BigUint::from(v);
        match &self.kind {
            FamilyKind::Constant { p } => big(u64::from(*p)),
            FamilyKind::ConstantShifted { p, m } => {
                if i < u64::from(*m) {
                    BigUint::zero()
                } else {
                    big(u64::from(*p))
                }
            }
            FamilyKind::Exponential { p } => Pow::pow(big(u64::from(*p)), i - 1),
            FamilyKind::Linear0 { m } => big(u64::from(*m)) * big(i - 1),
            FamilyKind::Linear { m } => big(u64::from(*m)) * big(i),
            FamilyKind::BinomRow { p } => binomial(u64::from(*p), i as i64 - 1),
            FamilyKind::Figured { p } => binomial(u64::from(*p) + i - 1, i64::from(*p)),
            FamilyKind::BinomCol { q } => binomial(i, i64::from(*q)),
            FamilyKind::BinomGeneral { p, q } => binomial(i + u64::from(*p) - 1, i64::from(*q)),
            FamilyKind::Matrix { k_rows } => binomial(i + u64::from(*k_rows) - 1, i as i64),
            FamilyKind::Catalan => catalan(i),
            FamilyKind::CatalanShifted => catalan(i - 1),
            FamilyKind::Custom { values } => values
                .get((i - 1) as usize)
                .cloned()
                .unwrap_or_else(BigUint::zero),
        }
    }

    /// `b_1, ..., b_len` as a vector indexed from 0.
    pub fn prefix(&self, len: usize) -> Vec<BigCount> {
        (1..=len as u64).map(|i| self.color_count(i)).collect()
    }
}

impl fmt::Display for ColorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FamilyKind::Constant { p }
            | FamilyKind::Exponential { p }
            | FamilyKind::BinomRow { p }
            | FamilyKind::Figured { p } => write!(f, "{}(p={p})", self.name()),
            FamilyKind::ConstantShifted { p, m } => write!(f, "{}(p={p}, m={m})", self.name()),
            FamilyKind::Linear0 { m } | FamilyKind::Linear { m } => {
                write!(f, "{}(m={m})", self.name())
            }
            FamilyKind::BinomCol { q } => write!(f, "{}(q={q})", self.name()),
            FamilyKind::BinomGeneral { p, q } => write!(f, "{}(p={p}, q={q})", self.name()),
            FamilyKind::Matrix { k_rows } => write!(f, "{}(k_rows={k_rows})", self.name()),
            FamilyKind::Catalan | FamilyKind::CatalanShifted => f.write_str(self.name()),
            FamilyKind::Custom { values } => {
                f.write_str("custom(")?;
                for (idx, v) in values.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// `b_i` of `family`.
pub fn color_count(family: &ColorFamily, i: u64) -> BigCount {
    family.color_count(i)
}

/// Parses a custom color sequence: either a JSON array of nonnegative
/// integers (numbers or decimal strings), or whitespace-separated decimal
/// integers with `#` comments. The first value is `b_1`.
pub fn parse_custom(text: &str) -> Result<ColorFamily> {
    let trimmed = text.trim_start();
    let values = if trimmed.starts_with('[') {
        let items: Vec<serde_json::Value> =
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))?;
        items
            .iter()
            .map(|item| match item {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .map(BigUint::from)
                    .ok_or_else(|| Error::Parse(format!("`{n}` is not a nonnegative integer"))),
                serde_json::Value::String(s) => s
                    .parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("`{s}` is not a nonnegative integer"))),
                other => Err(Error::Parse(format!("unexpected value `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let mut values = Vec::new();
        for line in text.lines() {
            let content = line.split('#').next().unwrap_or("");
            for token in content.split_whitespace() {
                let v = token
                    .parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("`{token}` is not a nonnegative integer")))?;
                values.push(v);
            }
        }
        values
    };
    Ok(ColorFamily::custom(values))
}

static BINOMIALS: Lazy<RwLock<HashMap<(u64, u64), BigUint>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// `C(n, r)`, zero outside `0 <= r <= n`. Memoized per process.
pub fn binomial(n: u64, r: i64) -> BigCount {
    if r < 0 || r as u64 > n {
        return BigUint::zero();
    }
    let r = (r as u64).min(n - r as u64);
    if r == 0 {
        return BigUint::one();
    }
    if r == 1 {
        return BigUint::from(n);
    }
    if let Some(v) = BINOMIALS.read().unwrap().get(&(n, r)) {
        return v.clone();
    }
    // Each partial product is itself a binomial, so every division is exact.
    let mut acc = BigUint::one();
    for i in 1..=r {
        acc *= n - r + i;
        acc /= i;
    }
    BINOMIALS.write().unwrap().insert((n, r), acc.clone());
    acc
}

/// `C(n, r)` for a possibly negative top index, taken as zero when `n < 0`.
pub fn binomial_signed(n: i64, r: i64) -> BigCount {
    if n < 0 {
        BigUint::zero()
    } else {
        binomial(n as u64, r)
    }
}

static CATALANS: Lazy<RwLock<Vec<BigUint>>> = Lazy::new(|| RwLock::new(vec![BigUint::one()]));

/// The Catalan number `c_i`, with `c_0 = 1`.
pub fn catalan(i: u64) -> BigCount {
    let i = i as usize;
    if let Some(v) = CATALANS.read().unwrap().get(i) {
        return v.clone();
    }
    let mut cache = CATALANS.write().unwrap();
    while cache.len() <= i {
        // c_(j+1) = c_j * 2(2j + 1) / (j + 2)
        let j = (cache.len() - 1) as u64;
        let next = &cache[j as usize] * (2 * (2 * j + 1)) / (j + 2);
        cache.push(next);
    }
    cache[i].clone()
}

/// The Catalan triangle (ballot) number `B(n, k) = (k / n) C(2n, n + k)`.
pub fn catalan_triangle(n: u64, k: u64) -> Result<BigCount> {
    if k < 1 || k > n {
        return Err(Error::Domain(format!(
            "catalan_triangle needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    let scaled = binomial(2 * n, (n + k) as i64) * k;
    let (quot, rem) = num_integer::Integer::div_rem(&scaled, &BigUint::from(n));
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!(
            "B({n}, {k}) is not an integer"
        )));
    }
    Ok(quot)
}

/// `B(n, k)` extended by zero outside `1 <= k <= n`.
pub fn catalan_triangle_or_zero(n: i64, k: i64) -> BigCount {
    if n < 1 || k < 1 || k > n {
        return BigUint::zero();
    }
    catalan_triangle(n as u64, k as u64).expect("domain checked")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize, r: usize) -> BigUint {
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = vec![BigUint::one(); row.len() + 1];
            for j in 1..row.len() {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
        }
        row.get(r).cloned().unwrap_or_default()
    }

    fn segner(n: usize) -> BigUint {
        let mut c = vec![BigUint::one()];
        for m in 0..n {
            let next = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
            c.push(next);
        }
        c[n].clone()
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 0..40u64 {
            for r in -2..44i64 {
                let expected = if r < 0 {
                    BigUint::zero()
                } else {
                    pascal(n as usize, r as usize)
                };
                assert_eq!(binomial(n, r), expected, "C({n}, {r})");
            }
        }
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(9, 0), BigUint::one());
        assert_eq!(binomial_signed(-1, 0), BigUint::zero());
    }

    #[test]
    fn catalan_matches_segner() {
        for n in 0..60 {
            assert_eq!(catalan(n as u64), segner(n), "c_{n}");
        }
        assert_eq!(catalan(0), BigUint::one());
        assert_eq!(catalan(3), BigUint::from(5u32));
        assert_eq!(catalan(5), BigUint::from(42u32));
    }

    #[test]
    fn catalan_triangle_values_and_domain() {
        assert_eq!(catalan_triangle(3, 1).unwrap(), BigUint::from(5u32));
        assert_eq!(catalan_triangle(3, 2).unwrap(), BigUint::from(4u32));
        for n in 1..30 {
            assert_eq!(catalan_triangle(n, n).unwrap(), BigUint::one());
            for k in 1..=n {
                let b = catalan_triangle(n, k).unwrap();
                assert_eq!(b * n, binomial(2 * n, (n + k) as i64) * k);
            }
        }
        assert!(matches!(catalan_triangle(3, 0), Err(Error::Domain(_))));
        assert!(matches!(catalan_triangle(3, 4), Err(Error::Domain(_))));
        assert_eq!(catalan_triangle_or_zero(0, 1), BigUint::zero());
    }

    #[test]
    fn family_values() {
        assert_eq!(
            ColorFamily::constant(3).unwrap().color_count(5),
            BigUint::from(3u32)
        );
        assert_eq!(ColorFamily::catalan().color_count(4), BigUint::from(14u32));
        assert_eq!(
            ColorFamily::binom_general(2, 3).unwrap().color_count(4),
            BigUint::from(10u32)
        );
        assert_eq!(
            ColorFamily::catalan_shifted().color_count(1),
            BigUint::one()
        );
        let shifted = ColorFamily::constant_shifted(4, 3).unwrap();
        assert_eq!(
            shifted.prefix(4),
            [0u32, 0, 4, 4].map(BigUint::from).to_vec()
        );
        let custom = ColorFamily::custom([2u32, 1]);
        assert_eq!(custom.color_count(2), BigUint::one());
        assert_eq!(custom.color_count(3), BigUint::zero());
        assert_eq!(custom.color_count(1000), BigUint::zero());
    }

    #[test]
    fn family_identities() {
        let linear1 = ColorFamily::linear(1).unwrap();
        let col1 = ColorFamily::binom_col(1).unwrap();
        let fig1 = ColorFamily::figured(1).unwrap();
        for i in 1..=50 {
            assert_eq!(col1.color_count(i), linear1.color_count(i));
            assert_eq!(fig1.color_count(i), linear1.color_count(i));
        }
        for q in 1..=6u64 {
            let fam = ColorFamily::binom_col(q as u32).unwrap();
            for i in 1..q {
                assert!(fam.color_count(i).is_zero());
            }
        }
        for k in 1..=4u32 {
            let m = ColorFamily::matrix(k).unwrap();
            let g = ColorFamily::binom_general(k, k - 1).unwrap();
            for i in 1..=30 {
                assert_eq!(m.color_count(i), g.color_count(i));
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert!(ColorFamily::constant(0).is_err());
        assert!(ColorFamily::constant_shifted(1, 0).is_err());
        assert!(ColorFamily::binom_col(0).is_err());
        assert!(ColorFamily::binom_general(0, 1).is_err());
        assert!(ColorFamily::binom_general(1, 0).is_ok());
        assert!(ColorFamily::matrix(0).is_err());
        let err = ColorFamily::from_name("constant", FamilyParams::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { param: "p", .. }));
        assert!(matches!(
            ColorFamily::from_name("nope", FamilyParams::default()),
            Err(Error::UnknownFamily(_))
        ));
        let bad: std::result::Result<ColorFamily, _> =
            serde_json::from_str(r#"{"kind":"constant","p":0}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn custom_parsing() {
        let fam = parse_custom("[2, 1, \"3\"]").unwrap();
        assert_eq!(fam, ColorFamily::custom([2u32, 1, 3]));
        let fam = parse_custom("# two ones\n2 1\n1 # tail\n").unwrap();
        assert_eq!(fam, ColorFamily::custom([2u32, 1, 1]));
        assert!(parse_custom("1 -2").is_err());
        assert!(parse_custom("[1, -2]").is_err());
    }

    #[test]
    fn family_json_round_trip() {
        for fam in [
            ColorFamily::constant_shifted(2, 3).unwrap(),
            ColorFamily::catalan(),
            ColorFamily::custom([2u32, 1, 1]),
        ] {
            let text = serde_json::to_string(&fam).unwrap();
            let back: ColorFamily = serde_json::from_str(&text).unwrap();
            assert_eq!(back, fam);
        }
    }
}
