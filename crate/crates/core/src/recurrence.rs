//! Constant-coefficient linear recurrences for `b_i = C(i + p - 1, q)`.
//!
//! The totals `C(n)` of this family satisfy
//! `C(n + q + 1) = sum_{i=0}^{q} m_i C(n + i)`. The coefficients come out of
//! a signed Pascal-like triangle `c(i, j)`, `0 <= j <= q + 1`,
//! `0 <= i <= j + 1`, built row by row:
//!
//! ```text
//! c(0, 0) = -C(p, q)                 c(1, 0) = 1
//! c(0, j+1) = -c(0, j) - C(p+1, q-j)
//! c(i, j+1) = c(i-1, j) - c(i, j)    1 <= i <= j+1
//! c(j+2, j+1) = c(j+1, j)
//! ```
//!
//! and `m_i = -c(i + 1, q + 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::counting::totals_by_recursion;
use crate::sequences::{binomial, ColorFamily};
use crate::{Error, Result};

/// Row `j` of the triangle holds `c(0, j), ..., c(j + 1, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTriangle {
    pub p: u32,
    pub q: u32,
    #[serde(with = "crate::decimal::vec2")]
    rows: Vec<Vec<BigInt>>,
}

impl CoeffTriangle {
    /// `c(i, j)`; zero outside the triangle.
    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.rows
            .get(j)
            .and_then(|row| row.get(i))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }
}

fn signed_binomial(n: u64, r: i64) -> BigInt {
    BigInt::from(binomial(n, r))
}

pub fn build_triangle(p: u32, q: u32) -> CoeffTriangle {
    let (p64, q64) = (u64::from(p), i64::from(q));
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(q as usize + 2);
    rows.push(vec![-signed_binomial(p64, q64), BigInt::one()]);
    for j in 0..=q as usize {
        let row = &rows[j];
        let mut next = Vec::with_capacity(j + 3);
        next.push(-&row[0] - signed_binomial(p64 + 1, q64 - j as i64));
        for i in 1..=j + 1 {
            next.push(&row[i - 1] - &row[i]);
        }
        next.push(row[j + 1].clone());
        rows.push(next);
    }
    CoeffTriangle { p, q, rows }
}

/// `C(n + order) = sum_i coeffs[i] C(n + i)` for `n >= start_index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceSpec {
    pub order: usize,
    #[serde(with = "crate::decimal::vec")]
    pub coeffs: Vec<BigInt>,
    pub start_index: u64,
}

impl RecurrenceSpec {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        RecurrenceSpec {
            order: coeffs.len(),
            coeffs,
            start_index: 2,
        }
    }
}

/// Reads `m_0..m_q` off the last triangle row and cross-checks them against
/// the differences `c(i + 1, q) - c(i, q)` of the row before.
pub fn extract_coeffs(p: u32, q: u32) -> Result<RecurrenceSpec> {
    coeffs_from_triangle(&build_triangle(p, q))
}

pub fn coeffs_from_triangle(t: &CoeffTriangle) -> Result<RecurrenceSpec> {
    let q = t.q as usize;
    if t.rows.len() != q + 2 {
        return Err(Error::Inconsistent(format!(
            "triangle for q = {q} has {} rows",
            t.rows.len()
        )));
    }
    if t.get(0, q) != -BigInt::one() {
        return Err(Error::Inconsistent(format!(
            "c(0, {q}) = {}, expected -1",
            t.get(0, q)
        )));
    }
    if t.get(q + 1, q) != BigInt::one() {
        return Err(Error::Inconsistent(format!(
            "c({}, {q}) = {}, expected 1",
            q + 1,
            t.get(q + 1, q)
        )));
    }
    let mut coeffs = Vec::with_capacity(q + 1);
    for i in 0..=q {
        let from_last = -t.get(i + 1, q + 1);
        let from_diff = t.get(i + 1, q) - t.get(i, q);
        if from_last != from_diff {
            return Err(Error::Inconsistent(format!(
                "m_{i}(p={}, q={q}): -c(i+1, q+1) = {from_last} but c(i+1, q) - c(i, q) = {from_diff}",
                t.p
            )));
        }
        coeffs.push(from_last);
    }
    Ok(RecurrenceSpec::new(coeffs))
}

/// The `p = 1` coefficients in explicit form:
/// `m_i = (-1)^(i+q) C(q + 1, i)`, plus one at `i = 1`.
pub fn explicit_coeffs_p1(q: u32) -> Result<RecurrenceSpec> {
    if q < 1 {
        return Err(Error::Domain("explicit coefficients need q >= 1".into()));
    }
    let mut coeffs: Vec<BigInt> = (0..=q)
        .map(|i| {
            let magnitude = signed_binomial(u64::from(q) + 1, i64::from(i));
            if (i + q).is_multiple_of(2) {
                magnitude
            } else {
                -magnitude
            }
        })
        .collect();
    coeffs[1] += 1;
    Ok(RecurrenceSpec::new(coeffs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceCheck {
    pub n: u64,
    /// `C(n + order)`.
    #[serde(with = "crate::decimal")]
    pub actual: BigInt,
    /// `sum_i m_i C(n + i)`.
    #[serde(with = "crate::decimal")]
    pub predicted: BigInt,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceReport {
    pub family: ColorFamily,
    pub spec: RecurrenceSpec,
    pub checks: Vec<RecurrenceCheck>,
    /// Smallest `n` from which every check through `n_hi` passes.
    pub earliest_valid: Option<u64>,
    pub all_pass: bool,
}

impl RecurrenceReport {
    pub fn first_failure(&self) -> Option<u64> {
        self.checks.iter().find(|c| !c.pass).map(|c| c.n)
    }
}

/// Checks `spec` against the totals of `family` for `n_lo <= n <= n_hi`.
pub fn verify_recurrence(
    family: &ColorFamily,
    spec: &RecurrenceSpec,
    n_lo: u64,
    n_hi: u64,
) -> Result<RecurrenceReport> {
    if n_hi < n_lo {
        return Err(Error::Domain(format!("empty range {n_lo}..={n_hi}")));
    }
    let totals: Vec<BigInt> = totals_by_recursion(family, n_hi + spec.order as u64)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let checks: Vec<RecurrenceCheck> = (n_lo..=n_hi)
        .map(|n| {
            let base = n as usize;
            let predicted: BigInt = spec
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, m)| m * &totals[base + i])
                .sum();
            let actual = totals[base + spec.order].clone();
            RecurrenceCheck {
                n,
                pass: predicted == actual,
                actual,
                predicted,
            }
        })
        .collect();
    let earliest_valid = checks
        .iter()
        .rev()
        .take_while(|c| c.pass)
        .last()
        .map(|c| c.n);
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(RecurrenceReport {
        family: family.clone(),
        spec: spec.clone(),
        checks,
        earliest_valid,
        all_pass,
    })
}
