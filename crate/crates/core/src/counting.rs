//! Dynamic-programming core for `C(n, k)` and `C(n)`.
//!
//! Cells follow the last-part recursion
//! `C(n, k) = sum_{i=1}^{n-k+1} b_i C(n - i, k - 1)` with `C(0, 0) = 1` and
//! `C(i, 0) = 0` for `i > 0`. Totals come from the independent recursion
//! `C(n) = sum_{i=1}^{n} b_i C(n - i)` with `C(0) = 1`, which never touches
//! the table.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::par::Execution;
use crate::sequences::{BigCount, ColorFamily};
use crate::{Error, Result};

/// Default bound on `n_max` for [`build_table`].
pub const DEFAULT_MAX_N: u64 = 10_000;

/// Rows shorter than this are filled sequentially even in parallel mode.
const PARALLEL_ROW_MIN: usize = 48;

/// DP cap, overridable through `COLORCOMP_MAX_N`.
pub fn max_n_from_env() -> u64 {
    std::env::var("COLORCOMP_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}

/// Memoized triangular table of `C(n, k)` for `0 <= k <= n <= n_max`, with
/// row totals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    family: ColorFamily,
    n_max: u64,
    /// Row `n` holds `C(n, 0), ..., C(n, n)`.
    #[serde(with = "crate::decimal::vec2")]
    cells: Vec<Vec<BigCount>>,
    #[serde(with = "crate::decimal::vec")]
    totals: Vec<BigCount>,
}

impl CountTable {
    pub fn family(&self) -> &ColorFamily {
        &self.family
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// `C(n, k)`; zero when `k > n`. Panics if `n > n_max`.
    pub fn get(&self, n: u64, k: u64) -> BigCount {
        assert!(n <= self.n_max, "n = {n} beyond table bound {}", self.n_max);
        self.cells[n as usize]
            .get(k as usize)
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// `C(n, 0), ..., C(n, n)`.
    pub fn row(&self, n: u64) -> &[BigCount] {
        &self.cells[n as usize]
    }

    /// `C(n) = sum_k C(n, k)`, with `C(0) = 1`.
    pub fn total(&self, n: u64) -> &BigCount {
        &self.totals[n as usize]
    }

    pub fn totals(&self) -> &[BigCount] {
        &self.totals
    }
}

/// Builds the table with the cap taken from the environment.
pub fn build_table(family: &ColorFamily, n_max: u64) -> Result<CountTable> {
    build_table_capped(family, n_max, max_n_from_env(), Execution::preferred())
}

pub fn build_table_capped(
    family: &ColorFamily,
    n_max: u64,
    cap: u64,
    exec: Execution,
) -> Result<CountTable> {
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    if n_max > cap {
        return Err(Error::CapExceeded {
            what: "table size n_max",
            limit: cap.to_string(),
            estimate: n_max.to_string(),
        });
    }
    Ok(fill_table(family, n_max, exec))
}

/// Fills the table without any cap.
pub fn fill_table(family: &ColorFamily, n_max: u64, exec: Execution) -> CountTable {
    let n_max_us = n_max as usize;
    let colors = family.prefix(n_max_us);
    // Indices i (1-based) with b_i != 0; zero colors contribute nothing.
    let support: Vec<usize> = (1..=n_max_us)
        .filter(|&i| !colors[i - 1].is_zero())
        .collect();

    let mut cells: Vec<Vec<BigCount>> = Vec::with_capacity(n_max_us + 1);
    cells.push(vec![BigUint::one()]);
    for n in 1..=n_max_us {
        let prev = &cells;
        let row_tail = exec.map_indices(n, PARALLEL_ROW_MIN, |idx| {
            let k = idx + 1;
            let mut acc = BigUint::zero();
            for &i in support.iter().take_while(|&&i| i <= n + 1 - k) {
                let below = &prev[n - i];
                if let Some(c) = below.get(k - 1) {
                    if !c.is_zero() {
                        acc += &colors[i - 1] * c;
                    }
                }
            }
            acc
        });
        let mut row = Vec::with_capacity(n + 1);
        row.push(BigUint::zero());
        row.extend(row_tail);
        cells.push(row);
    }
    let totals = cells
        .iter()
        .enumerate()
        .map(|(n, row)| {
            if n == 0 {
                BigUint::one()
            } else {
                row.iter().sum()
            }
        })
        .collect();
    CountTable {
        family: family.clone(),
        n_max,
        cells,
        totals,
    }
}

/// `C(0), ..., C(n_max)` through the total recursion alone.
pub fn totals_by_recursion(family: &ColorFamily, n_max: u64) -> Vec<BigCount> {
    let n_max = n_max as usize;
    let colors = family.prefix(n_max);
    let mut totals: Vec<BigCount> = Vec::with_capacity(n_max + 1);
    totals.push(BigUint::one());
    for n in 1..=n_max {
        let mut acc = BigUint::zero();
        for i in 1..=n {
            let b = &colors[i - 1];
            if !b.is_zero() {
                acc += b * &totals[n - i];
            }
        }
        totals.push(acc);
    }
    totals
}

static TABLES: Lazy<RwLock<HashMap<ColorFamily, Arc<CountTable>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// A process-wide table for `family` covering at least `n`.
pub fn cached_table(family: &ColorFamily, n: u64) -> Arc<CountTable> {
    if let Some(table) = TABLES.read().unwrap().get(family) {
        if table.n_max >= n {
            return Arc::clone(table);
        }
    }
    let mut tables = TABLES.write().unwrap();
    if let Some(table) = tables.get(family) {
        if table.n_max >= n {
            return Arc::clone(table);
        }
    }
    let old = tables.get(family).map_or(0, |t| t.n_max);
    let target = n.max(old.saturating_mul(2)).max(16);
    let table = Arc::new(fill_table(family, target, Execution::preferred()));
    tables.insert(family.clone(), Arc::clone(&table));
    table
}

/// `C(n, k)`, memoized per family.
pub fn count_nk(family: &ColorFamily, n: u64, k: u64) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    if n == 0 {
        return BigUint::one();
    }
    cached_table(family, n).get(n, k)
}

/// `C(n)` through the total recursion, with `C(0) = 1`.
pub fn count_total(family: &ColorFamily, n: u64) -> BigCount {
    totals_by_recursion(family, n)
        .pop()
        .expect("totals always hold C(0)")
}
