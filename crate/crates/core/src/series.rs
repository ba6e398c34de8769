//! Truncated power series over the nonnegative integers.
//!
//! `C(n, k)` is the coefficient of `x^n` in `B(x)^k`, where
//! `B(x) = sum_{i >= 1} b_i x^i`. This route only reads `b_i` and shares no
//! code with the dynamic program.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::par::Execution;
use crate::sequences::{BigCount, ColorFamily};
use crate::{Error, Result};

/// Output degrees below this are convolved sequentially.
const PARALLEL_DEGREE_MIN: usize = 32;

/// Coefficients `a_0, ..., a_N` of a series modulo `x^(N+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedSeries {
    #[serde(with = "crate::decimal::vec")]
    coeffs: Vec<BigCount>,
}

impl TruncatedSeries {
    /// Series with the given coefficients; the degree bound is `len - 1`.
    ///
    /// Panics on an empty coefficient list.
    pub fn new(coeffs: Vec<BigCount>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series has at least one coefficient"
        );
        TruncatedSeries { coeffs }
    }

    pub fn zero(bound: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigUint::zero(); bound + 1],
        }
    }

    pub fn one(bound: usize) -> Self {
        let mut s = Self::zero(bound);
        s.coeffs[0] = BigUint::one();
        s
    }

    /// `x^d` (zero when `d` exceeds the bound).
    pub fn monomial(d: usize, bound: usize) -> Self {
        let mut s = Self::zero(bound);
        if d <= bound {
            s.coeffs[d] = BigUint::one();
        }
        s
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigCount {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigCount] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with(other, Execution::preferred())
    }

    /// Truncated Cauchy product.
    pub fn mul_with(&self, other: &Self, exec: Execution) -> Result<Self> {
        if self.degree_bound() != other.degree_bound() {
            return Err(Error::DegreeMismatch {
                left: self.degree_bound(),
                right: other.degree_bound(),
            });
        }
        let (a, b) = (&self.coeffs, &other.coeffs);
        let coeffs = exec.map_indices(a.len(), PARALLEL_DEGREE_MIN, |d| {
            let mut acc = BigUint::zero();
            for i in 0..=d {
                if !a[i].is_zero() && !b[d - i].is_zero() {
                    acc += &a[i] * &b[d - i];
                }
            }
            acc
        });
        Ok(TruncatedSeries { coeffs })
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u64) -> Self {
        self.pow_with(k, Execution::preferred())
    }

    pub fn pow_with(&self, mut k: u64, exec: Execution) -> Self {
        let mut result = Self::one(self.degree_bound());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_with(&base, exec).expect("same bound");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_with(&base, exec).expect("same bound");
            }
        }
        result
    }
}

/// `B(x) = sum_{i=1}^{N} b_i x^i` truncated at degree `bound`.
pub fn series_from_family(family: &ColorFamily, bound: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(bound + 1);
    coeffs.push(BigUint::zero());
    coeffs.extend(family.prefix(bound));
    TruncatedSeries { coeffs }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

/// `[x^n] B(x)^k`.
pub fn coeff_of_power(family: &ColorFamily, n: u64, k: u64) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let base = series_from_family(family, n as usize);
    base.pow(k).coeff(n as usize).clone()
}

/// `[x^n] B(x)^k` for every `k` in `0..=n`, sharing successive powers.
pub fn coeffs_all_powers(family: &ColorFamily, n: u64) -> Vec<BigCount> {
    let base = series_from_family(family, n as usize);
    let mut power = TruncatedSeries::one(n as usize);
    let mut out = Vec::with_capacity(n as usize + 1);
    for _ in 0..=n {
        out.push(power.coeff(n as usize).clone());
        power = power.mul(&base).expect("same bound");
    }
    out
}
