//! Closed formulas for `C(n, k)` and `C(n)` per family, and the Catalan
//! identities.
//!
//! Families without a known formula (`custom`, `binom_general`, `matrix`)
//! yield `None`. Sum-form totals are evaluated term by term over
//! `k = 1..=n`; out-of-range binomials vanish.

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::counting;
use crate::sequences::{
    binomial, binomial_signed, catalan, catalan_triangle_or_zero, BigCount, ColorFamily, FamilyKind,
};

fn pow(base: u32, exp: u64) -> BigUint {
    Pow::pow(BigUint::from(base), exp)
}

/// `sum_{i=0}^{k-1} C(k, i) B(n - k, k - i)`, the Catalan-triangle expansion
/// of `C(n, k)` for `b_i = c_(i-1)`. Only meaningful for `n > k`: at `n = k`
/// every term has `B(0, .) = 0` while the count is 1.
pub fn catalan_shifted_expansion(n: u64, k: u64) -> BigCount {
    let (n, k) = (n as i64, k as i64);
    (0..k)
        .map(|i| binomial(k as u64, i) * catalan_triangle_or_zero(n - k, k - i))
        .sum()
}

/// Closed value of `C(n, k)` for `1 <= k <= n`, or `None` when the family
/// has no formula. `catalan_shifted` is `None` at `n = k`.
pub fn closed_nk(family: &ColorFamily, n: u64, k: u64) -> Option<BigCount> {
    if n < 1 || k < 1 || k > n {
        return None;
    }
    let (ni, ki) = (n as i64, k as i64);
    let v = match *family.kind() {
        FamilyKind::Constant { p } => pow(p, k) * binomial(n - 1, ki - 1),
        FamilyKind::ConstantShifted { p, m } => {
            pow(p, k) * binomial_signed(ni - (i64::from(m) - 1) * ki - 1, ki - 1)
        }
        FamilyKind::Exponential { p } => pow(p, n - k) * binomial(n - 1, ki - 1),
        FamilyKind::Linear0 { m } => pow(m, k) * binomial(n - 1, 2 * ki - 1),
        FamilyKind::Linear { m } => pow(m, k) * binomial(n + k - 1, 2 * ki - 1),
        FamilyKind::BinomRow { p } => binomial(u64::from(p) * k, ni - ki),
        FamilyKind::Figured { p } => {
            let pk = u64::from(p) * k;
            binomial(n + pk - 1, (pk + k - 1) as i64)
        }
        FamilyKind::BinomCol { q } => binomial(n + k - 1, (u64::from(q) * k + k - 1) as i64),
        FamilyKind::Catalan => catalan_triangle_or_zero(ni, ki),
        FamilyKind::CatalanShifted => {
            if n == k {
                return None;
            }
            catalan_shifted_expansion(n, k)
        }
        FamilyKind::BinomGeneral { .. } | FamilyKind::Matrix { .. } | FamilyKind::Custom { .. } => {
            return None
        }
    };
    Some(v)
}

fn sum_over_k(n: u64, term: impl Fn(u64) -> BigUint) -> BigUint {
    (1..=n).map(term).sum()
}

/// Closed value of `C(n)` for `n >= 1`, or `None` when unknown.
pub fn closed_total(family: &ColorFamily, n: u64) -> Option<BigCount> {
    if n < 1 {
        return None;
    }
    let ni = n as i64;
    let v = match *family.kind() {
        FamilyKind::Constant { p } => BigUint::from(p) * pow(p + 1, n - 1),
        FamilyKind::ConstantShifted { p, m } => sum_over_k(n, |k| {
            let k = k as i64;
            binomial_signed(ni - (i64::from(m) - 1) * k - 1, k - 1) * pow(p, k as u64)
        }),
        FamilyKind::Exponential { p } => pow(p + 1, n - 1),
        FamilyKind::Linear0 { m } => {
            sum_over_k(n, |k| binomial(n - 1, 2 * k as i64 - 1) * pow(m, k))
        }
        FamilyKind::Linear { m } => {
            sum_over_k(n, |k| binomial(n + k - 1, 2 * k as i64 - 1) * pow(m, k))
        }
        FamilyKind::BinomRow { p } => sum_over_k(n, |k| binomial(u64::from(p) * k, ni - k as i64)),
        FamilyKind::Figured { p } => sum_over_k(n, |k| {
            let pk = u64::from(p) * k;
            binomial(n + pk - 1, (pk + k - 1) as i64)
        }),
        FamilyKind::BinomCol { q } => sum_over_k(n, |k| {
            binomial(n + k - 1, (u64::from(q) * k + k - 1) as i64)
        }),
        FamilyKind::Catalan => binomial(2 * n - 1, ni),
        FamilyKind::CatalanShifted => catalan(n),
        FamilyKind::BinomGeneral { .. } | FamilyKind::Matrix { .. } | FamilyKind::Custom { .. } => {
            return None
        }
    };
    Some(v)
}

/// Where the inner sum of the Catalan convolution starts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerBound {
    /// `i` from 0; reproduces `c_n`.
    #[default]
    Corrected,
    /// `i` from 1, as the identity is usually printed; falls short of `c_n`
    /// from `n = 2` on.
    Paper,
}

/// `1 + sum_{k=1}^{n-1} sum_{i=i0}^{k-1} C(k, i) B(n - k, k - i)`.
pub fn catalan_convolution(n: u64, bound: InnerBound) -> BigCount {
    let start = match bound {
        InnerBound::Corrected => 0,
        InnerBound::Paper => 1,
    };
    let mut acc = BigUint::one();
    for k in 1..n {
        for i in start..k {
            acc += binomial(k, i as i64) * catalan_triangle_or_zero((n - k) as i64, (k - i) as i64);
        }
    }
    acc
}

/// `C(n, k)` for `b_i = c_(i-1)`, read as the number of weak compositions of
/// `n - k` into `k` parts where a part `j` comes in `c_j` types (zeros in
/// exactly one type).
pub fn weak_composition_interpretation(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    counting::count_nk(&ColorFamily::catalan_shifted(), n, k)
}
