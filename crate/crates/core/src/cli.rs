//! Command-line surface.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 resource cap exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::closed_forms::{self, InnerBound};
use crate::counting::{self, build_table};
use crate::enumeration::{count_colored, enumerate_colored, enumerate_matrix};
use crate::recurrence::{build_triangle, extract_coeffs, verify_recurrence};
use crate::sequences::{parse_custom, BigCount, ColorFamily, FamilyKind, FamilyParams};
use crate::series;
use crate::verify::{self, Status, Suite, VerifyConfig};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "colorcomp",
    version,
    about = "Count, enumerate and cross-check colored integer compositions"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct FamilyArgs {
    /// Color family name, e.g. constant, catalan, binom_general, custom.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long = "k-rows")]
    k_rows: Option<u32>,
    /// Sequence file for `custom`: JSON array or whitespace-separated integers.
    #[arg(long = "b-file")]
    b_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Oracle {
    Dp,
    Enum,
    Series,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Show {
    Triangle,
    Coeffs,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundArg {
    Corrected,
    Paper,
}

impl From<BoundArg> for InnerBound {
    fn from(b: BoundArg) -> Self {
        match b {
            BoundArg::Corrected => InnerBound::Corrected,
            BoundArg::Paper => InnerBound::Paper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Oracle,
    Pp1,
    Totals,
    Matrix,
    Recurrence,
    Kt1,
    Catalan,
    Kb,
    FinalCorollary,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Pp1 => Suite::Pp1,
            SuiteArg::Totals => Suite::Totals,
            SuiteArg::Matrix => Suite::Matrix,
            SuiteArg::Recurrence => Suite::Recurrence,
            SuiteArg::Kt1 => Suite::Kt1,
            SuiteArg::Catalan => Suite::Catalan,
            SuiteArg::Kb => Suite::Kb,
            SuiteArg::FinalCorollary => Suite::FinalCorollary,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// C(n, k), or C(n) when --k is omitted.
    Count {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value = "dp")]
        oracle: Oracle,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// C(n), the number of colored compositions with any number of parts.
    Total {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value = "dp")]
        oracle: Oracle,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The triangle of C(n, k) for 1 <= k <= n <= n_max with row totals.
    Table {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "n-max")]
        n_max: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Every colored composition of n as JSON lines.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        limit: Option<usize>,
        /// For `matrix`, emit the matrix compositions instead.
        #[arg(long = "as-matrix")]
        as_matrix: bool,
    },
    /// Closed formula values, or the Catalan convolution with --convolution.
    Closed {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        convolution: bool,
        #[arg(long, value_enum, default_value = "corrected")]
        bound: BoundArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Recurrence for b_i = C(i + p - 1, q): triangle, coefficients or check.
    Recurrence {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "coeffs")]
        show: Show,
        #[arg(long = "n-lo", default_value_t = 2)]
        n_lo: u64,
        #[arg(long = "n-hi", default_value_t = 40)]
        n_hi: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the identity suite; JSON report by default.
    Verify {
        #[arg(long, value_enum)]
        only: Option<SuiteArg>,
        #[arg(long = "n-max")]
        n_max: Option<u64>,
        #[arg(long = "n-hi")]
        n_hi: Option<u64>,
        #[arg(long, value_enum, default_value = "corrected")]
        bound: BoundArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
    Verify,
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            return Failure::Cap(e.to_string());
        }
        match e {
            Error::InvalidParameter {
                family,
                param,
                reason,
            } => Failure::Usage(format!(
                "--{}: {reason} (family `{family}`)",
                param.replace('_', "-")
            )),
            Error::UnknownFamily(name) => {
                Failure::Usage(format!("--family: unknown family `{name}`"))
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type CliResult = Result<(), Failure>;

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Verify) => EXIT_VERIFY_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Cap(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_CAP
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn resolve_family(args: &FamilyArgs) -> Result<ColorFamily, Failure> {
    let name = args
        .family
        .as_deref()
        .ok_or_else(|| Failure::Usage("--family is required".into()))?;
    if name == "custom" {
        let path = args
            .b_file
            .as_ref()
            .ok_or_else(|| Failure::Usage("--b-file: required for the custom family".into()))?;
        let text = std::fs::read_to_string(path).map_err(|e| {
            Failure::Usage(format!("--b-file: cannot read {}: {e}", path.display()))
        })?;
        return parse_custom(&text).map_err(|e| Failure::Usage(format!("--b-file: {e}")));
    }
    Ok(ColorFamily::from_name(
        name,
        FamilyParams {
            p: args.p,
            q: args.q,
            m: args.m,
            k_rows: args.k_rows,
        },
    )?)
}

fn execute(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Count {
            family,
            n,
            k,
            oracle,
            format,
        } => {
            let family = resolve_family(&family)?;
            let value = compute_count(&family, n, k, oracle)?;
            print_count(out, &family, n, k, oracle, &value, format)
        }
        Command::Total {
            family,
            n,
            oracle,
            format,
        } => {
            let family = resolve_family(&family)?;
            let value = compute_count(&family, n, None, oracle)?;
            print_count(out, &family, n, None, oracle, &value, format)
        }
        Command::Table {
            family,
            n_max,
            format,
        } => {
            let family = resolve_family(&family)?;
            let table = build_table(&family, n_max)?;
            print_table(out, &table, format)
        }
        Command::Enumerate {
            family,
            n,
            k,
            limit,
            as_matrix,
        } => {
            let family = resolve_family(&family)?;
            let limit = limit.unwrap_or(usize::MAX);
            if as_matrix {
                let FamilyKind::Matrix { k_rows } = *family.kind() else {
                    return Err(Failure::Usage("--as-matrix: needs --family matrix".into()));
                };
                for item in enumerate_matrix(k_rows, n)?.take(limit) {
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&item).expect("serializable")
                    )?;
                }
            } else {
                for item in enumerate_colored(&family, n, k)?.take(limit) {
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&item).expect("serializable")
                    )?;
                }
            }
            Ok(())
        }
        Command::Closed {
            family,
            n,
            k,
            convolution,
            bound,
            format,
        } => {
            if convolution {
                let bound = InnerBound::from(bound);
                if n < 1 {
                    return Err(Failure::Usage("--n: must be at least 1".into()));
                }
                let value = closed_forms::catalan_convolution(n, bound);
                let target = crate::sequences::catalan(n);
                return match format {
                    Format::Json => {
                        #[derive(Serialize)]
                        struct Conv<'a> {
                            n: u64,
                            bound: InnerBound,
                            #[serde(with = "crate::decimal")]
                            value: &'a BigUint,
                            #[serde(with = "crate::decimal")]
                            catalan: &'a BigUint,
                            matches: bool,
                        }
                        let doc = Conv {
                            n,
                            bound,
                            value: &value,
                            catalan: &target,
                            matches: value == target,
                        };
                        writeln!(
                            out,
                            "{}",
                            serde_json::to_string(&doc).expect("serializable")
                        )?;
                        Ok(())
                    }
                    _ => {
                        writeln!(out, "{value}")?;
                        Ok(())
                    }
                };
            }
            let family = resolve_family(&family)?;
            let value = closed_value(&family, n, k).ok_or_else(|| {
                Failure::Usage(format!("no closed form for {family} at n={n}, k={k:?}"))
            })?;
            print_count(out, &family, n, k, Oracle::Closed, &value, format)
        }
        Command::Recurrence {
            p,
            q,
            show,
            n_lo,
            n_hi,
            format,
        } => {
            if p < 1 {
                return Err(Failure::Usage("--p: must be at least 1".into()));
            }
            run_recurrence(out, p, q, show, n_lo, n_hi, format)
        }
        Command::Verify {
            only,
            n_max,
            n_hi,
            bound,
            format,
        } => {
            let mut config = VerifyConfig {
                only: only.map(Suite::from),
                bound: bound.into(),
                ..VerifyConfig::default()
            };
            if let Some(n) = n_max {
                config.n_max = n;
            }
            if let Some(n) = n_hi {
                config.recurrence_n_hi = n;
            }
            let report = verify::run(&config);
            match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable")
                )?,
                Format::Text | Format::Csv => {
                    for check in &report.checks {
                        let tag = match check.status {
                            Status::Pass => "PASS",
                            Status::Fail => "FAIL",
                            Status::ExpectedFailure => "XFAIL",
                        };
                        write!(out, "{tag} {} {}", check.suite, check.name)?;
                        if let Some(d) = &check.detail {
                            write!(out, " ({d})")?;
                        }
                        writeln!(out)?;
                    }
                    writeln!(
                        out,
                        "{} passed, {} failed, {} expected failures",
                        report.passed, report.failed, report.expected_failures
                    )?;
                }
            }
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Verify)
            }
        }
    }
}

fn closed_value(family: &ColorFamily, n: u64, k: Option<u64>) -> Option<BigCount> {
    match (n, k) {
        (0, None) | (0, Some(0)) => Some(BigUint::one()),
        (_, Some(0)) => Some(BigUint::zero()),
        (_, Some(k)) if k > n => Some(BigUint::zero()),
        (_, Some(k)) => closed_forms::closed_nk(family, n, k),
        (_, None) => closed_forms::closed_total(family, n),
    }
}

fn compute_count(
    family: &ColorFamily,
    n: u64,
    k: Option<u64>,
    oracle: Oracle,
) -> Result<BigCount, Failure> {
    let cap = counting::max_n_from_env();
    match oracle {
        Oracle::Dp | Oracle::Series if n > cap => Err(Failure::Cap(format!(
            "n = {n} exceeds the cap of {cap} (set COLORCOMP_MAX_N)"
        ))),
        Oracle::Dp => Ok(match k {
            Some(k) => counting::count_nk(family, n, k),
            None => counting::count_total(family, n),
        }),
        Oracle::Series => Ok(match k {
            Some(k) => series::coeff_of_power(family, n, k),
            None if n == 0 => BigUint::one(),
            None => series::coeffs_all_powers(family, n).iter().skip(1).sum(),
        }),
        Oracle::Enum => Ok(count_colored(family, n, k)?),
        Oracle::Closed => closed_value(family, n, k).ok_or_else(|| {
            Failure::Usage(format!("no closed form for {family} at n={n}, k={k:?}"))
        }),
    }
}

#[derive(Serialize)]
struct CountDoc<'a> {
    family: &'a ColorFamily,
    n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
    oracle: Oracle,
    #[serde(with = "crate::decimal")]
    count: &'a BigCount,
}

fn print_count(
    out: &mut dyn Write,
    family: &ColorFamily,
    n: u64,
    k: Option<u64>,
    oracle: Oracle,
    value: &BigCount,
    format: Format,
) -> CliResult {
    match format {
        Format::Text => writeln!(out, "{value}")?,
        Format::Json => {
            let doc = CountDoc {
                family,
                n,
                k,
                oracle,
                count: value,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string(&doc).expect("serializable")
            )?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let k_text = k.map(|k| k.to_string()).unwrap_or_default();
            let row = [family.to_string(), n.to_string(), k_text, value.to_string()];
            w.write_record(["family", "n", "k", "count"])
                .and_then(|_| w.write_record(&row))
                .map_err(csv_io)?;
            out.write_all(&w.into_inner().map_err(|e| Failure::Io(e.into_error()))?)?;
        }
    }
    Ok(())
}

fn csv_io(e: csv::Error) -> Failure {
    Failure::Io(std::io::Error::other(e))
}

fn print_table(out: &mut dyn Write, table: &counting::CountTable, format: Format) -> CliResult {
    let n_max = table.n_max();
    let header: Vec<String> = std::iter::once("n".to_string())
        .chain((1..=n_max).map(|k| format!("k={k}")))
        .chain(std::iter::once("total".to_string()))
        .collect();
    let rows: Vec<Vec<String>> = (1..=n_max)
        .map(|n| {
            let mut cells = vec![n.to_string()];
            cells.extend((1..=n_max).map(|k| {
                if k <= n {
                    table.get(n, k).to_string()
                } else {
                    String::new()
                }
            }));
            cells.push(table.total(n).to_string());
            cells
        })
        .collect();
    match format {
        Format::Json => {
            writeln!(
                out,
                "{}",
                serde_json::to_string(table).expect("serializable")
            )?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).map_err(csv_io)?;
            for row in &rows {
                w.write_record(row).map_err(csv_io)?;
            }
            out.write_all(&w.into_inner().map_err(|e| Failure::Io(e.into_error()))?)?;
        }
        Format::Text => {
            let widths: Vec<usize> = (0..header.len())
                .map(|c| {
                    rows.iter()
                        .map(|r| r[c].len())
                        .chain([header[c].len()])
                        .max()
                        .unwrap_or(1)
                })
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            writeln!(out, "{}", line(&header))?;
            for row in &rows {
                writeln!(out, "{}", line(row))?;
            }
        }
    }
    Ok(())
}

fn run_recurrence(
    out: &mut dyn Write,
    p: u32,
    q: u32,
    show: Show,
    n_lo: u64,
    n_hi: u64,
    format: Format,
) -> CliResult {
    match show {
        Show::Triangle => {
            let triangle = build_triangle(p, q);
            if format == Format::Json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&triangle).expect("serializable")
                )?;
            } else {
                for (j, row) in triangle.rows().iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                    writeln!(out, "j={j}: {}", cells.join(" "))?;
                }
            }
        }
        Show::Coeffs => {
            let spec = extract_coeffs(p, q)?;
            if format == Format::Json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&spec).expect("serializable")
                )?;
            } else {
                let cells: Vec<String> = spec.coeffs.iter().map(ToString::to_string).collect();
                writeln!(out, "[{}]", cells.join(", "))?;
                writeln!(out, "order: {}", spec.order)?;
            }
        }
        Show::Verify => {
            let spec = extract_coeffs(p, q)?;
            let family = ColorFamily::binom_general(p, q)?;
            let report = verify_recurrence(&family, &spec, n_lo, n_hi)?;
            if format == Format::Json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&report).expect("serializable")
                )?;
            } else {
                for check in &report.checks {
                    let tag = if check.pass { "pass" } else { "FAIL" };
                    writeln!(
                        out,
                        "n={} {tag} {} = {}",
                        check.n, check.actual, check.predicted
                    )?;
                }
                match report.earliest_valid {
                    Some(n) => writeln!(out, "holds for {n} <= n <= {n_hi}")?,
                    None => writeln!(out, "fails at n = {n_hi}")?,
                }
            }
            if !report.all_pass {
                return Err(Failure::Verify);
            }
        }
    }
    Ok(())
}
