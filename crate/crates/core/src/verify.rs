//! The identity suite: every cross-check between counting routes, closed
//! forms, Catalan identities and recurrences, collected into one report.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::closed_forms::{self, InnerBound};
use crate::counting::{fill_table, totals_by_recursion};
use crate::enumeration::{count_colored_with, enumerate_matrix_with, EnumLimits};
use crate::par::Execution;
use crate::recurrence::{build_triangle, explicit_coeffs_p1, extract_coeffs, verify_recurrence};
use crate::sequences::{binomial, catalan, catalan_triangle, ColorFamily};
use crate::series::coeffs_all_powers;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Dynamic program, enumeration, series and closed forms agree.
    Oracle,
    /// `C(i, 1) = b_i`, `C(n, n) = b_1^n`, `C(n, k) = 0` for `k > n`.
    Pp1,
    /// Constant and exponential totals.
    Totals,
    /// Matrix compositions against the `matrix` family.
    Matrix,
    /// Recurrences extracted from the coefficient triangle.
    Recurrence,
    /// Explicit `p = 1` recurrence coefficients.
    Kt1,
    /// Catalan colors and the Catalan triangle.
    Catalan,
    /// Catalan-triangle expansion for shifted Catalan colors.
    Kb,
    /// Catalan numbers as a convolution of Pascal and Catalan triangles.
    FinalCorollary,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Oracle,
        Suite::Pp1,
        Suite::Totals,
        Suite::Matrix,
        Suite::Recurrence,
        Suite::Kt1,
        Suite::Catalan,
        Suite::Kb,
        Suite::FinalCorollary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Pp1 => "pp1",
            Suite::Totals => "totals",
            Suite::Matrix => "matrix",
            Suite::Recurrence => "recurrence",
            Suite::Kt1 => "kt1",
            Suite::Catalan => "catalan",
            Suite::Kb => "kb",
            Suite::FinalCorollary => "final-corollary",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A known, documented discrepancy that showed up as documented.
    ExpectedFailure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    fn new(
        suite: Suite,
        name: impl Into<String>,
        ok: bool,
        detail: impl FnOnce() -> String,
    ) -> Self {
        Check {
            suite,
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: if ok { None } else { Some(detail()) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    /// Bound for the oracle, Prop-style and Catalan suites.
    pub n_max: u64,
    pub totals_n_max: u64,
    pub matrix_n_max: u64,
    pub recurrence_n_lo: u64,
    pub recurrence_n_hi: u64,
    pub convolution_n_max: u64,
    pub bound: InnerBound,
    pub only: Option<Suite>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 12,
            totals_n_max: 20,
            matrix_n_max: 8,
            recurrence_n_lo: 2,
            recurrence_n_hi: 40,
            convolution_n_max: 15,
            bound: InnerBound::Corrected,
            only: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: VerifyConfig,
    pub passed: usize,
    pub failed: usize,
    pub expected_failures: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn suite(&self, suite: Suite) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.suite == suite)
    }
}

/// The family roster every cross-check runs over.
pub fn standard_roster() -> Vec<ColorFamily> {
    let mut two_ones = vec![BigUint::from(2u32)];
    two_ones.extend(std::iter::repeat_n(BigUint::one(), 39));
    vec![
        ColorFamily::constant(1).unwrap(),
        ColorFamily::constant(2).unwrap(),
        ColorFamily::constant_shifted(2, 2).unwrap(),
        ColorFamily::exponential(2).unwrap(),
        ColorFamily::linear0(2).unwrap(),
        ColorFamily::linear(1).unwrap(),
        ColorFamily::linear(3).unwrap(),
        ColorFamily::binom_row(2).unwrap(),
        ColorFamily::binom_row(3).unwrap(),
        ColorFamily::figured(2).unwrap(),
        ColorFamily::binom_col(2).unwrap(),
        ColorFamily::binom_col(3).unwrap(),
        ColorFamily::binom_general(2, 2).unwrap(),
        ColorFamily::matrix(2).unwrap(),
        ColorFamily::matrix(3).unwrap(),
        ColorFamily::catalan(),
        ColorFamily::catalan_shifted(),
        ColorFamily::custom(two_ones),
    ]
}

pub fn run(config: &VerifyConfig) -> Report {
    let suites: Vec<Suite> = match config.only {
        Some(s) => vec![s],
        None => Suite::ALL.to_vec(),
    };
    let mut checks = Vec::new();
    for suite in suites {
        checks.extend(match suite {
            Suite::Oracle => oracle_suite(config),
            Suite::Pp1 => pp1_suite(config),
            Suite::Totals => totals_suite(config),
            Suite::Matrix => matrix_suite(config),
            Suite::Recurrence => recurrence_suite(config),
            Suite::Kt1 => kt1_suite(),
            Suite::Catalan => catalan_suite(config),
            Suite::Kb => kb_suite(config),
            Suite::FinalCorollary => convolution_suite(config),
        });
    }
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    Report {
        config: config.clone(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        expected_failures: count(Status::ExpectedFailure),
        checks,
    }
}

fn oracle_suite(config: &VerifyConfig) -> Vec<Check> {
    let n_max = config.n_max;
    let limits = EnumLimits {
        max_n: n_max.max(EnumLimits::default().max_n),
        ..EnumLimits::default()
    };
    let per_family = Execution::preferred().map_slice(&standard_roster(), |family| {
        let table = fill_table(family, n_max, Execution::Sequential);
        let totals = totals_by_recursion(family, n_max);
        (1..=n_max)
            .map(|n| {
                let mut problems = Vec::new();
                let powers = coeffs_all_powers(family, n);
                if *table.total(n) != totals[n as usize] {
                    problems.push(format!(
                        "row sum {} vs total recursion {}",
                        table.total(n),
                        totals[n as usize]
                    ));
                }
                match count_colored_with(family, n, None, limits) {
                    Ok(c) if c == totals[n as usize] => {}
                    Ok(c) => {
                        problems.push(format!("enumeration total {c} vs {}", totals[n as usize]))
                    }
                    Err(e) => problems.push(e.to_string()),
                }
                if let Some(c) = closed_forms::closed_total(family, n) {
                    if c != totals[n as usize] {
                        problems.push(format!("closed total {c} vs {}", totals[n as usize]));
                    }
                }
                let series_total: BigUint = powers.iter().skip(1).sum();
                if series_total != totals[n as usize] {
                    problems.push(format!(
                        "series total {series_total} vs {}",
                        totals[n as usize]
                    ));
                }
                for k in 1..=n {
                    let dp = table.get(n, k);
                    if powers[k as usize] != dp {
                        problems.push(format!("k={k}: series {} vs dp {dp}", powers[k as usize]));
                    }
                    match count_colored_with(family, n, Some(k), limits) {
                        Ok(c) if c == dp => {}
                        Ok(c) => problems.push(format!("k={k}: enumeration {c} vs dp {dp}")),
                        Err(e) => problems.push(e.to_string()),
                    }
                    if let Some(c) = closed_forms::closed_nk(family, n, k) {
                        if c != dp {
                            problems.push(format!("k={k}: closed {c} vs dp {dp}"));
                        }
                    }
                }
                Check::new(
                    Suite::Oracle,
                    format!("{family} n={n}"),
                    problems.is_empty(),
                    || problems.join("; "),
                )
            })
            .collect::<Vec<_>>()
    });
    per_family.into_iter().flatten().collect()
}

fn pp1_suite(config: &VerifyConfig) -> Vec<Check> {
    let per_family = Execution::preferred().map_slice(&standard_roster(), |family| {
        let bound = config.n_max.max(20);
        let table = fill_table(family, bound + 3, Execution::Sequential);
        let b1 = family.color_count(1);
        let mut problems = Vec::new();
        for i in 1..=20 {
            if table.get(i, 1) != family.color_count(i) {
                problems.push(format!("C({i},1) = {} vs b_{i}", table.get(i, 1)));
            }
        }
        for n in 1..=config.n_max {
            if table.get(n, n) != Pow::pow(&b1, n) {
                problems.push(format!("C({n},{n}) = {} vs b_1^{n}", table.get(n, n)));
            }
            for k in n + 1..=n + 3 {
                if !table.get(n, k).is_zero() {
                    problems.push(format!("C({n},{k}) nonzero"));
                }
            }
        }
        Check::new(Suite::Pp1, family.to_string(), problems.is_empty(), || {
            problems.join("; ")
        })
    });
    per_family
}

fn totals_suite(config: &VerifyConfig) -> Vec<Check> {
    let mut checks = Vec::new();
    for p in 1..=4u32 {
        let constant = ColorFamily::constant(p).unwrap();
        let exponential = ColorFamily::exponential(p).unwrap();
        let c_tot = totals_by_recursion(&constant, config.totals_n_max);
        let e_tot = totals_by_recursion(&exponential, config.totals_n_max);
        let mut c_bad = Vec::new();
        let mut e_bad = Vec::new();
        for n in 1..=config.totals_n_max {
            let expected = BigUint::from(p) * Pow::pow(BigUint::from(p + 1), n - 1);
            if c_tot[n as usize] != expected {
                c_bad.push(n);
            }
            if e_tot[n as usize] != Pow::pow(BigUint::from(p + 1), n - 1) {
                e_bad.push(n);
            }
        }
        checks.push(Check::new(
            Suite::Totals,
            format!("{constant}: C(n) = p(1+p)^(n-1)"),
            c_bad.is_empty(),
            || format!("mismatch at n = {c_bad:?}"),
        ));
        checks.push(Check::new(
            Suite::Totals,
            format!("{exponential}: C(n) = (1+p)^(n-1)"),
            e_bad.is_empty(),
            || format!("mismatch at n = {e_bad:?}"),
        ));
    }
    checks
}

fn matrix_suite(config: &VerifyConfig) -> Vec<Check> {
    let limits = EnumLimits {
        max_n: config.matrix_n_max.max(EnumLimits::default().max_n),
        ..EnumLimits::default()
    };
    let mut checks = Vec::new();
    for rows in 1..=3u32 {
        let family = ColorFamily::matrix(rows).unwrap();
        let totals = totals_by_recursion(&family, config.matrix_n_max);
        for n in 0..=config.matrix_n_max {
            let counted = enumerate_matrix_with(rows, n, limits)
                .map(|it| BigUint::from(it.count()))
                .map_err(|e| e.to_string());
            let ok = counted.as_ref() == Ok(&totals[n as usize]);
            checks.push(Check::new(
                Suite::Matrix,
                format!("MC_{rows}({n})"),
                ok,
                || format!("enumerated {counted:?} vs C(n) = {}", totals[n as usize]),
            ));
        }
    }
    checks
}

fn recurrence_suite(config: &VerifyConfig) -> Vec<Check> {
    let params: Vec<(u32, u32)> = (1..=5).flat_map(|p| (0..=5).map(move |q| (p, q))).collect();
    Execution::preferred().map_slice(&params, |&(p, q)| {
        let name = format!("binom_general(p={p}, q={q})");
        let triangle = build_triangle(p, q);
        let mut problems = Vec::new();
        for j in 0..=q {
            let expected = -num_bigint::BigInt::from(binomial(u64::from(p), i64::from(q - j)));
            if triangle.get(0, j as usize) != expected {
                problems.push(format!("c(0,{j}) = {}", triangle.get(0, j as usize)));
            }
        }
        match extract_coeffs(p, q) {
            Err(e) => problems.push(e.to_string()),
            Ok(spec) => {
                let family = ColorFamily::binom_general(p, q).unwrap();
                match verify_recurrence(
                    &family,
                    &spec,
                    config.recurrence_n_lo,
                    config.recurrence_n_hi,
                ) {
                    Ok(report) if report.all_pass => {}
                    Ok(report) => problems.push(format!(
                        "recurrence fails first at n = {:?}",
                        report.first_failure()
                    )),
                    Err(e) => problems.push(e.to_string()),
                }
            }
        }
        Check::new(Suite::Recurrence, name, problems.is_empty(), || {
            problems.join("; ")
        })
    })
}

fn kt1_suite() -> Vec<Check> {
    let mut checks = Vec::new();
    for q in 1..=6 {
        let explicit = explicit_coeffs_p1(q);
        let extracted = extract_coeffs(1, q);
        let ok = matches!((&explicit, &extracted), (Ok(a), Ok(b)) if a == b);
        checks.push(Check::new(
            Suite::Kt1,
            format!("q={q} explicit = extracted"),
            ok,
            || format!("explicit {explicit:?} vs extracted {extracted:?}"),
        ));
    }
    let totals = totals_by_recursion(&ColorFamily::linear(1).unwrap(), 6);
    let expected: Vec<BigUint> = [1u32, 3, 8, 21, 55, 144].map(BigUint::from).to_vec();
    checks.push(Check::new(
        Suite::Kt1,
        "b_i = i totals 1, 3, 8, 21, 55, 144",
        totals[1..] == expected[..],
        || format!("got {totals:?}"),
    ));
    checks
}

fn catalan_suite(config: &VerifyConfig) -> Vec<Check> {
    let family = ColorFamily::catalan();
    let table = fill_table(&family, config.n_max, Execution::preferred());
    (1..=config.n_max)
        .map(|n| {
            let mut problems = Vec::new();
            for k in 1..=n {
                let b = catalan_triangle(n, k).expect("1 <= k <= n");
                if table.get(n, k) != b {
                    problems.push(format!("C({n},{k}) = {} vs B = {b}", table.get(n, k)));
                }
            }
            let expected = binomial(2 * n - 1, n as i64);
            if *table.total(n) != expected {
                problems.push(format!("C({n}) = {} vs {expected}", table.total(n)));
            }
            Check::new(
                Suite::Catalan,
                format!("n={n}"),
                problems.is_empty(),
                || problems.join("; "),
            )
        })
        .collect()
}

fn kb_suite(config: &VerifyConfig) -> Vec<Check> {
    let family = ColorFamily::catalan_shifted();
    let table = fill_table(&family, config.n_max, Execution::preferred());
    let mut checks = Vec::new();
    for n in 1..=config.n_max {
        let weak = coeffs_all_powers(&family, n);
        let mut problems = Vec::new();
        for k in 1..n {
            let expansion = closed_forms::catalan_shifted_expansion(n, k);
            if table.get(n, k) != expansion {
                problems.push(format!(
                    "C({n},{k}) = {} vs expansion {expansion}",
                    table.get(n, k)
                ));
            }
        }
        for k in 1..=n {
            if weak[k as usize] != table.get(n, k) {
                problems.push(format!("weak tuple sum {} vs C({n},{k})", weak[k as usize]));
            }
        }
        checks.push(Check::new(
            Suite::Kb,
            format!("n={n}"),
            problems.is_empty(),
            || problems.join("; "),
        ));

        // At n = k the expansion is empty of nonzero terms while C(k, k) = 1.
        let expansion = closed_forms::catalan_shifted_expansion(n, n);
        let count = table.get(n, n);
        let documented = expansion.is_zero() && count.is_one();
        checks.push(Check {
            suite: Suite::Kb,
            name: format!("boundary n=k={n}"),
            status: if documented {
                Status::ExpectedFailure
            } else {
                Status::Fail
            },
            detail: Some(format!("expansion {expansion}, count {count}")),
        });
    }
    checks
}

fn convolution_suite(config: &VerifyConfig) -> Vec<Check> {
    (1..=config.convolution_n_max)
        .map(|n| {
            let value = closed_forms::catalan_convolution(n, config.bound);
            let target = catalan(n);
            let status = match (value == target, config.bound) {
                (true, _) => Status::Pass,
                (false, InnerBound::Paper) => Status::ExpectedFailure,
                (false, InnerBound::Corrected) => Status::Fail,
            };
            Check {
                suite: Suite::FinalCorollary,
                name: format!("n={n}"),
                status,
                detail: (status != Status::Pass)
                    .then(|| format!("convolution {value} vs c_{n} = {target}")),
            }
        })
        .collect()
}
