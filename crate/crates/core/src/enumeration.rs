//! Brute-force generation of colored compositions and matrix compositions.
//!
//! These streams are the ground truth the counting routes are checked
//! against, so they share no code with [`crate::counting`] beyond the
//! output-size guard.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::counting;
use crate::sequences::{BigCount, ColorFamily};
use crate::{Error, Result};

/// A composition whose parts carry a color label. Each element is
/// `(part, color)` with `1 <= color <= b_part`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredComposition {
    pub parts: Vec<(u32, u64)>,
}

impl ColoredComposition {
    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&(p, _)| u64::from(p)).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Checks the part and color bounds against `family` and the sum against `n`.
    pub fn is_valid_for(&self, family: &ColorFamily, n: u64) -> bool {
        self.sum() == n
            && self.parts.iter().all(|&(part, color)| {
                part >= 1
                    && color >= 1
                    && BigUint::from(color) <= family.color_count(u64::from(part))
            })
    }
}

/// A matrix of nonnegative integers with no all-zero column.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "MatrixRepr", into = "MatrixRepr")]
pub struct MatrixComposition {
    pub rows: usize,
    /// Column vectors, each of length `rows`.
    pub columns: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    columns: Vec<Vec<u32>>,
}

impl From<MatrixRepr> for MatrixComposition {
    fn from(r: MatrixRepr) -> Self {
        let rows = r.columns.first().map_or(0, Vec::len);
        MatrixComposition {
            rows,
            columns: r.columns,
        }
    }
}

impl From<MatrixComposition> for MatrixRepr {
    fn from(m: MatrixComposition) -> Self {
        MatrixRepr { columns: m.columns }
    }
}

impl MatrixComposition {
    pub fn sum(&self) -> u64 {
        self.columns.iter().flatten().map(|&v| u64::from(v)).sum()
    }

    pub fn is_valid(&self) -> bool {
        self.columns
            .iter()
            .all(|c| c.len() == self.rows && c.iter().any(|&v| v > 0))
    }
}

/// Guards for the exhaustive generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    pub max_n: u64,
    pub max_items: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_n: 25,
            max_items: 10_000_000,
        }
    }
}

impl EnumLimits {
    /// Defaults overridden by `COLORCOMP_ENUM_CAP=<max_n>[:<max_items>]`.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Ok(text) = std::env::var("COLORCOMP_ENUM_CAP") {
            let mut fields = text.trim().splitn(2, ':');
            if let Some(v) = fields.next().and_then(|f| f.trim().parse().ok()) {
                limits.max_n = v;
            }
            if let Some(v) = fields.next().and_then(|f| f.trim().parse().ok()) {
                limits.max_items = v;
            }
        }
        limits
    }

    fn check_n(&self, n: u64) -> Result<()> {
        if n > self.max_n {
            return Err(Error::CapExceeded {
                what: "enumeration size n",
                limit: self.max_n.to_string(),
                estimate: n.to_string(),
            });
        }
        Ok(())
    }

    fn check_items(&self, estimate: &BigCount) -> Result<()> {
        if *estimate > BigUint::from(self.max_items) {
            return Err(Error::CapExceeded {
                what: "enumeration output",
                limit: self.max_items.to_string(),
                estimate: estimate.to_string(),
            });
        }
        Ok(())
    }
}

/// Compositions of `n` into exactly `k` positive parts in lexicographic order.
#[derive(Clone, Debug)]
pub struct Compositions {
    parts: Vec<u32>,
    started: bool,
    done: bool,
}

impl Compositions {
    pub fn new(n: u64, k: u64) -> Self {
        let (parts, done) = match (n, k) {
            (0, 0) => (Vec::new(), false),
            (_, 0) => (Vec::new(), true),
            _ if k > n => (Vec::new(), true),
            _ => {
                let mut parts = vec![1u32; k as usize];
                parts[k as usize - 1] = (n - k + 1) as u32;
                (parts, false)
            }
        };
        Compositions {
            parts,
            started: false,
            done,
        }
    }

    fn advance(&mut self) -> bool {
        let k = self.parts.len();
        if k < 2 {
            return false;
        }
        // The rightmost position whose suffix still has room to shrink.
        let Some(last_big) = (1..k).rev().find(|&t| self.parts[t] > 1) else {
            return false;
        };
        let j = last_big - 1;
        let suffix: u32 = self.parts[j + 1..].iter().sum();
        self.parts[j] += 1;
        let rest = suffix - 1;
        for t in j + 1..k - 1 {
            self.parts[t] = 1;
        }
        self.parts[k - 1] = rest - (k - 2 - j) as u32;
        true
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(self.parts.clone())
    }
}

/// Stream of colored compositions, ordered by number of parts, then by the
/// part sequence, then by the color sequence.
#[derive(Clone, Debug)]
pub struct ColoredCompositions {
    n: u64,
    k_current: u64,
    k_last: u64,
    /// `b_1..b_n` saturated to `u64`.
    colors: Vec<u64>,
    shapes: Option<Compositions>,
    parts: Vec<u32>,
    labels: Vec<u64>,
    pending: bool,
}

impl ColoredCompositions {
    fn new(family: &ColorFamily, n: u64, k: Option<u64>) -> Self {
        let colors = family
            .prefix(n as usize)
            .iter()
            .map(|b| b.to_u64().unwrap_or(u64::MAX))
            .collect();
        let (k_current, k_last) = match (n, k) {
            (_, Some(k)) => (k, k),
            (0, None) => (0, 0),
            (_, None) => (1, n),
        };
        ColoredCompositions {
            n,
            k_current,
            k_last,
            colors,
            shapes: None,
            parts: Vec::new(),
            labels: Vec::new(),
            pending: false,
        }
    }

    fn color_bound(&self, part: u32) -> u64 {
        self.colors[part as usize - 1]
    }

    fn next_labels(&mut self) -> bool {
        for t in (0..self.labels.len()).rev() {
            if self.labels[t] < self.color_bound(self.parts[t]) {
                self.labels[t] += 1;
                for u in t + 1..self.labels.len() {
                    self.labels[u] = 1;
                }
                return true;
            }
        }
        false
    }

    fn next_shape(&mut self) -> bool {
        loop {
            if self.shapes.is_none() {
                if self.k_current > self.k_last {
                    return false;
                }
                self.shapes = Some(Compositions::new(self.n, self.k_current));
                self.k_current += 1;
            }
            match self.shapes.as_mut().and_then(Iterator::next) {
                Some(parts) => {
                    if parts.iter().all(|&p| self.color_bound(p) > 0) {
                        self.labels = vec![1; parts.len()];
                        self.parts = parts;
                        return true;
                    }
                }
                None => self.shapes = None,
            }
        }
    }
}

impl Iterator for ColoredCompositions {
    type Item = ColoredComposition;

    fn next(&mut self) -> Option<ColoredComposition> {
        let ready = if self.pending {
            self.next_labels() || self.next_shape()
        } else {
            self.next_shape()
        };
        self.pending = ready;
        if !ready {
            return None;
        }
        Some(ColoredComposition {
            parts: self
                .parts
                .iter()
                .copied()
                .zip(self.labels.iter().copied())
                .collect(),
        })
    }
}

/// Every colored composition of `n` (with exactly `k` parts when given),
/// each exactly once.
pub fn enumerate_colored(
    family: &ColorFamily,
    n: u64,
    k: Option<u64>,
) -> Result<ColoredCompositions> {
    enumerate_colored_with(family, n, k, EnumLimits::from_env())
}

pub fn enumerate_colored_with(
    family: &ColorFamily,
    n: u64,
    k: Option<u64>,
    limits: EnumLimits,
) -> Result<ColoredCompositions> {
    limits.check_n(n)?;
    let estimate = match k {
        Some(k) => counting::count_nk(family, n, k),
        None => counting::count_total(family, n),
    };
    limits.check_items(&estimate)?;
    Ok(ColoredCompositions::new(family, n, k))
}

/// Number of colored compositions, summing color products over the plain
/// compositions instead of materializing each colored one.
pub fn count_colored(family: &ColorFamily, n: u64, k: Option<u64>) -> Result<BigCount> {
    count_colored_with(family, n, k, EnumLimits::from_env())
}

pub fn count_colored_with(
    family: &ColorFamily,
    n: u64,
    k: Option<u64>,
    limits: EnumLimits,
) -> Result<BigCount> {
    limits.check_n(n)?;
    let colors = family.prefix(n as usize);
    let ks: Vec<u64> = match (n, k) {
        (_, Some(k)) => vec![k],
        (0, None) => vec![0],
        (_, None) => (1..=n).collect(),
    };
    let mut total = BigUint::zero();
    for k in ks {
        for parts in Compositions::new(n, k) {
            let mut product = BigUint::from(1u32);
            for &p in &parts {
                let b = &colors[p as usize - 1];
                if b.is_zero() {
                    product.set_zero();
                    break;
                }
                product *= b;
            }
            total += product;
        }
    }
    Ok(total)
}

/// Depth-first stream of matrix compositions. Columns are drawn in
/// lexicographic order of column vectors.
#[derive(Clone, Debug)]
pub struct MatrixCompositions {
    rows: usize,
    n: u64,
    candidates: Vec<Vec<u32>>,
    sums: Vec<u64>,
    stack: Vec<usize>,
    remaining: u64,
    started: bool,
    done: bool,
}

/// Nonzero vectors of length `rows` with entry sum at most `n`, in
/// lexicographic order.
fn column_candidates(rows: usize, n: u64) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, rows: usize, budget: u64, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == rows {
            if prefix.iter().any(|&v| v > 0) {
                out.push(prefix.clone());
            }
            return;
        }
        for v in 0..=budget {
            prefix.push(v as u32);
            extend(prefix, rows, budget - v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(rows), rows, n, &mut out);
    out
}

impl MatrixCompositions {
    fn new(rows: usize, n: u64) -> Self {
        let candidates = column_candidates(rows, n);
        let sums = candidates
            .iter()
            .map(|c| c.iter().map(|&v| u64::from(v)).sum())
            .collect();
        MatrixCompositions {
            rows,
            n,
            candidates,
            sums,
            stack: Vec::new(),
            remaining: n,
            started: false,
            done: false,
        }
    }

    fn first_fit(&self, from: usize) -> Option<usize> {
        (from..self.candidates.len()).find(|&c| self.sums[c] <= self.remaining)
    }

    fn descend(&mut self) {
        while self.remaining > 0 {
            // A unit column always fits, so this never fails.
            let c = self.first_fit(0).expect("unit column fits");
            self.remaining -= self.sums[c];
            self.stack.push(c);
        }
    }

    fn current(&self) -> MatrixComposition {
        MatrixComposition {
            rows: self.rows,
            columns: self
                .stack
                .iter()
                .map(|&c| self.candidates[c].clone())
                .collect(),
        }
    }
}

impl Iterator for MatrixCompositions {
    type Item = MatrixComposition;

    fn next(&mut self) -> Option<MatrixComposition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.n == 0 {
                self.done = true;
            }
            self.descend();
            return Some(self.current());
        }
        loop {
            let Some(top) = self.stack.pop() else {
                self.done = true;
                return None;
            };
            self.remaining += self.sums[top];
            if let Some(c) = self.first_fit(top + 1) {
                self.remaining -= self.sums[c];
                self.stack.push(c);
                self.descend();
                return Some(self.current());
            }
        }
    }
}

/// Every `k_rows`-row matrix composition of `n`. `n = 0` yields the single
/// empty matrix.
pub fn enumerate_matrix(k_rows: u32, n: u64) -> Result<MatrixCompositions> {
    enumerate_matrix_with(k_rows, n, EnumLimits::from_env())
}

pub fn enumerate_matrix_with(
    k_rows: u32,
    n: u64,
    limits: EnumLimits,
) -> Result<MatrixCompositions> {
    let family = ColorFamily::matrix(k_rows)?;
    limits.check_n(n)?;
    limits.check_items(&counting::count_total(&family, n))?;
    Ok(MatrixCompositions::new(k_rows as usize, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn parts_of(c: &ColoredComposition) -> Vec<u32> {
        c.parts.iter().map(|&(p, _)| p).collect()
    }

    #[test]
    fn plain_compositions_in_lex_order() {
        let all: Vec<_> = Compositions::new(5, 3).collect();
        assert_eq!(
            all,
            vec![
                vec![1, 1, 3],
                vec![1, 2, 2],
                vec![1, 3, 1],
                vec![2, 1, 2],
                vec![2, 2, 1],
                vec![3, 1, 1]
            ]
        );
        assert_eq!(Compositions::new(4, 1).collect::<Vec<_>>(), vec![vec![4]]);
        assert_eq!(Compositions::new(0, 0).count(), 1);
        assert_eq!(Compositions::new(3, 0).count(), 0);
        assert_eq!(Compositions::new(3, 4).count(), 0);
        for n in 1..=12u64 {
            let total: usize = (1..=n).map(|k| Compositions::new(n, k).count()).sum();
            assert_eq!(total, 1 << (n - 1));
        }
    }

    #[test]
    fn ordinary_compositions_of_three() {
        let ones = ColorFamily::constant(1).unwrap();
        let shapes: Vec<_> = enumerate_colored(&ones, 3, None)
            .unwrap()
            .map(|c| parts_of(&c))
            .collect();
        assert_eq!(shapes, vec![vec![3], vec![1, 2], vec![2, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn empty_composition() {
        let fam = ColorFamily::catalan();
        let all: Vec<_> = enumerate_colored(&fam, 0, None).unwrap().collect();
        assert_eq!(all, vec![ColoredComposition { parts: vec![] }]);
        assert_eq!(enumerate_colored(&fam, 0, Some(1)).unwrap().count(), 0);
        assert_eq!(count_colored(&fam, 0, None).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn catalan_single_part() {
        let fam = ColorFamily::catalan();
        let all: Vec<_> = enumerate_colored(&fam, 3, Some(1)).unwrap().collect();
        assert_eq!(all.len(), 5);
        for (idx, c) in all.iter().enumerate() {
            assert_eq!(c.parts, vec![(3, idx as u64 + 1)]);
        }
        let two: Vec<_> = enumerate_colored(&fam, 2, None).unwrap().collect();
        assert_eq!(two.len(), 3);
    }

    #[test]
    fn streaming_counts() {
        assert_eq!(
            count_colored(&ColorFamily::catalan(), 3, None).unwrap(),
            BigUint::from(10u32)
        );
        assert_eq!(
            count_colored(&ColorFamily::exponential(2).unwrap(), 3, None).unwrap(),
            BigUint::from(9u32)
        );
        let shifted = ColorFamily::constant_shifted(1, 2).unwrap();
        assert_eq!(
            count_colored(&shifted, 6, Some(2)).unwrap(),
            BigUint::from(3u32)
        );
        let items: Vec<_> = enumerate_colored(&shifted, 6, Some(2))
            .unwrap()
            .map(|c| parts_of(&c))
            .collect();
        assert_eq!(items, vec![vec![2, 4], vec![3, 3], vec![4, 2]]);
    }

    #[test]
    fn items_valid_and_distinct() {
        for fam in [
            ColorFamily::catalan(),
            ColorFamily::binom_col(2).unwrap(),
            ColorFamily::custom([2u32, 0, 3]),
        ] {
            for n in 0..=8u64 {
                let items: Vec<_> = enumerate_colored(&fam, n, None).unwrap().collect();
                assert!(items.iter().all(|c| c.is_valid_for(&fam, n)));
                let distinct: HashSet<_> = items.iter().cloned().collect();
                assert_eq!(distinct.len(), items.len());
                assert_eq!(
                    BigUint::from(items.len()),
                    count_colored(&fam, n, None).unwrap()
                );
                // within each part count the stream is sorted
                for w in items.windows(2) {
                    if w[0].len() == w[1].len() {
                        let key = |c: &ColoredComposition| {
                            (
                                parts_of(c),
                                c.parts.iter().map(|&(_, l)| l).collect::<Vec<_>>(),
                            )
                        };
                        assert!(key(&w[0]) < key(&w[1]));
                    } else {
                        assert!(w[0].len() < w[1].len());
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_compositions() {
        let two: Vec<_> = enumerate_matrix(2, 2).unwrap().collect();
        assert_eq!(two.len(), 7);
        assert_eq!(two.iter().filter(|m| m.columns.len() == 1).count(), 3);
        assert_eq!(enumerate_matrix(1, 3).unwrap().count(), 4);
        for rows in 1..=3 {
            let empty: Vec<_> = enumerate_matrix(rows, 0).unwrap().collect();
            assert_eq!(empty.len(), 1);
            assert!(empty[0].columns.is_empty());
        }
        for m in enumerate_matrix(3, 5).unwrap() {
            assert!(m.is_valid());
            assert_eq!(m.sum(), 5);
        }
        let distinct: HashSet<_> = enumerate_matrix(2, 5).unwrap().collect();
        assert_eq!(distinct.len(), enumerate_matrix(2, 5).unwrap().count());
    }

    #[test]
    fn caps() {
        let fam = ColorFamily::constant(1).unwrap();
        let limits = EnumLimits {
            max_n: 25,
            max_items: 100,
        };
        let err = enumerate_colored_with(&fam, 10, None, limits).unwrap_err();
        match err {
            Error::CapExceeded { estimate, .. } => assert_eq!(estimate, "512"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(
            enumerate_colored_with(&fam, 26, None, EnumLimits::default())
                .unwrap_err()
                .is_cap()
        );
        assert!(enumerate_matrix_with(3, 20, EnumLimits::default())
            .unwrap_err()
            .is_cap());
        assert!(count_colored_with(&fam, 30, None, EnumLimits::default())
            .unwrap_err()
            .is_cap());
    }

    #[test]
    fn json_shapes() {
        let c = ColoredComposition {
            parts: vec![(2, 1), (1, 2)],
        };
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"parts":[[2,1],[1,2]]}"#
        );
        let m = MatrixComposition {
            rows: 2,
            columns: vec![vec![0, 1], vec![1, 0]],
        };
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"columns":[[0,1],[1,0]]}"#);
        assert_eq!(serde_json::from_str::<MatrixComposition>(&text).unwrap(), m);
    }
}
