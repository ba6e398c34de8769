//! Brute-force oracles. Nothing here calls into the crate's counting,
//! series or enumeration code; only `b_i` values are read from families.

#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::{One, Zero};

use colorcomp::ColorFamily;

/// Pascal's triangle row by row.
pub fn pascal(n: usize, r: i64) -> BigUint {
    if r < 0 || r as usize > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one(); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row[r as usize].clone()
}

/// `c_0..=c_n` through `c_(m+1) = sum c_i c_(m-i)`.
pub fn segner(n: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::one()];
    for m in 0..n {
        let next = (0..=m).map(|i| &c[i] * &c[m - i]).sum();
        c.push(next);
    }
    c
}

/// Calls `visit` with every tuple of `len` integers, each at least `min`,
/// summing to `total`.
pub fn for_each_tuple(len: usize, total: i64, min: i64, visit: &mut dyn FnMut(&[i64])) {
    fn go(prefix: &mut Vec<i64>, len: usize, left: i64, min: i64, visit: &mut dyn FnMut(&[i64])) {
        if prefix.len() == len {
            if left == 0 {
                visit(prefix);
            }
            return;
        }
        let mut v = min;
        while v <= left {
            prefix.push(v);
            go(prefix, len, left - v, min, visit);
            prefix.pop();
            v += 1;
        }
    }
    go(&mut Vec::new(), len, total, min, visit);
}

/// `sum over tuples (i_1..i_k), i_t >= min, sum = total, of prod c_(i_t)`.
pub fn catalan_tuple_sum(k: usize, total: i64, min: i64) -> BigUint {
    let c = segner(total.max(0) as usize + 1);
    let mut acc = BigUint::zero();
    for_each_tuple(k, total, min, &mut |t| {
        acc += t
            .iter()
            .map(|&i| c[i as usize].clone())
            .product::<BigUint>();
    });
    acc
}

/// `B(n, k)` as the sum over `k`-tuples of positive integers summing to `n`
/// of Catalan products.
pub fn catalan_triangle_by_tuples(n: usize, k: usize) -> BigUint {
    catalan_tuple_sum(k, n as i64, 1)
}

/// Every colored composition of `n`, generated recursively by first part.
pub fn naive_colored(family: &ColorFamily, n: u64) -> Vec<Vec<(u32, u64)>> {
    let mut out = Vec::new();
    fn go(
        family: &ColorFamily,
        left: u64,
        prefix: &mut Vec<(u32, u64)>,
        out: &mut Vec<Vec<(u32, u64)>>,
    ) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in 1..=left {
            let colors: u64 = family
                .color_count(part)
                .try_into()
                .expect("small color counts");
            for color in 1..=colors {
                prefix.push((part as u32, color));
                go(family, left - part, prefix, out);
                prefix.pop();
            }
        }
    }
    go(family, n, &mut Vec::new(), &mut out);
    out
}

/// Number of `rows`-row matrices of nonnegative integers without zero
/// columns and entry sum `n`, counted by first column.
pub fn naive_matrix_count(rows: usize, n: i64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let mut acc = BigUint::zero();
    for s in 1..=n {
        // columns with entry sum s
        let mut columns = 0u64;
        for_each_tuple(rows, s, 0, &mut |_| columns += 1);
        acc += naive_matrix_count(rows, n - s) * columns;
    }
    acc
}
