//! Command-line front end: `series`, `coeffs` and `verify`.
//!
//! Exit codes: 0 when everything requested succeeded and passed, 1 when an
//! identity failed or a computation raised an error, 2 for usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{coefficient_table, CoefficientKind, CoefficientRow};
use crate::series::{format_rational, QExpansion};
use crate::theta::{eisenstein_g, extract_coeffs, TaylorFamily};
use crate::verify::{run_suite, CheckLine, Suite, VerifyConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "qeis",
    version,
    about = "Partial and false Eisenstein series, unimodal rank coefficients and modular checks"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Truncation order in q.
    #[arg(long, global = true, env = "QEIS_ORDER", default_value_t = 8,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub order: u64,
    /// Largest Taylor index k.
    #[arg(long = "k-max", global = true, default_value_t = 6)]
    pub k_max: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Pass threshold for numeric residuals.
    #[arg(long, global = true, default_value_t = 1e-8, value_parser = parse_tol)]
    pub tol: f64,
    /// Seed for sampled matrices, points and random inputs.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {s}"))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print g_k, h_k, u_k or the Eisenstein series G_k as q-expansions.
    Series {
        #[arg(value_enum)]
        which: SeriesKind,
    },
    /// Print the non-zero coefficients a_{n,m} or b_{n,m}.
    Coeffs {
        #[arg(value_enum)]
        which: CoeffKind,
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: usize,
    },
    /// Run the identity suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long = "inject-fault", hide = true)]
        inject_fault: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    #[value(name = "g")]
    G,
    #[value(name = "h")]
    H,
    #[value(name = "u")]
    U,
    #[value(name = "G")]
    Eisenstein,
}

impl SeriesKind {
    fn symbol(&self) -> &'static str {
        match self {
            SeriesKind::G => "g",
            SeriesKind::H => "h",
            SeriesKind::U => "u",
            SeriesKind::Eisenstein => "G",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    Anm,
    Bnm,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteArg {
    Exact,
    Numeric,
    All,
}

/// One named series in the `series` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub name: String,
    pub k: usize,
    pub series: QExpansion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesOutput {
    pub family: String,
    pub order: usize,
    pub rows: Vec<SeriesRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffOutput {
    pub kind: String,
    pub n_max: usize,
    pub rows: Vec<CoefficientRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckLine>,
}

/// `g_1..`, `h_1..`, `u_1..` up to `k_max`, or the even `G_k` with `2 <= k <= k_max`.
pub fn series_rows(which: SeriesKind, k_max: usize, order: usize) -> Result<SeriesOutput> {
    let rows = match which {
        SeriesKind::Eisenstein => (2..=k_max)
            .step_by(2)
            .map(|k| SeriesRow {
                name: format!("G_{k}"),
                k,
                series: eisenstein_g(k, order),
            })
            .collect(),
        _ => {
            let family = match which {
                SeriesKind::G => TaylorFamily::G,
                SeriesKind::H => TaylorFamily::H,
                _ => TaylorFamily::U,
            };
            extract_coeffs(family, k_max, order)?
                .into_iter()
                .enumerate()
                .map(|(i, series)| SeriesRow {
                    name: format!("{}_{}", which.symbol(), i + 1),
                    k: i + 1,
                    series,
                })
                .collect()
        }
    };
    Ok(SeriesOutput {
        family: which.symbol().to_string(),
        order,
        rows,
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v).map_err(|e| Error::Invariant(format!("serialization failed: {e}")))
}

pub fn render_series(out: &SeriesOutput, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => json(out)? + "\n",
        Format::Table => out
            .rows
            .iter()
            .map(|r| format!("{} = {}\n", r.name, r.series))
            .collect(),
        Format::Csv => {
            let mut s = String::from("name,k,prefactor,n,coefficient\n");
            for r in &out.rows {
                for (n, c) in r.series.coeffs().iter().enumerate() {
                    s.push_str(&format!(
                        "{},{},{},{n},{}\n",
                        r.name,
                        r.k,
                        format_rational(r.series.prefactor()),
                        format_rational(c)
                    ));
                }
            }
            s
        }
    })
}

pub fn render_coeffs(out: &CoeffOutput, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => json(out)? + "\n",
        Format::Csv => {
            let mut s = String::from("n,m,value,threshold\n");
            for r in &out.rows {
                s.push_str(&format!("{},{},{},{}\n", r.n, r.m, r.value, r.threshold));
            }
            s
        }
        Format::Table => {
            let width = out
                .rows
                .iter()
                .map(|r| r.value.to_string().len())
                .max()
                .unwrap_or(5)
                .max(5);
            let mut s = format!(
                "{:>4} {:>4} {:>width$} {:>9}\n",
                "n", "m", "value", "threshold"
            );
            for r in &out.rows {
                s.push_str(&format!(
                    "{:>4} {:>4} {:>width$} {:>9}\n",
                    r.n,
                    r.m,
                    r.value.to_string(),
                    r.threshold
                ));
            }
            s
        }
    })
}

pub fn render_verify(out: &VerifyOutput, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => json(out)? + "\n",
        Format::Csv => {
            let mut s = String::from("suite,identity,pass,detail\n");
            for c in &out.checks {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    c.suite,
                    csv_field(&c.identity),
                    c.pass,
                    csv_field(&c.detail)
                ));
            }
            s
        }
        Format::Table => {
            let mut s: String = out.checks.iter().map(|c| c.to_line() + "\n").collect();
            let failed = out.checks.iter().filter(|c| !c.pass).count();
            s.push_str(&format!(
                "{}: {} checks, {} failed\n",
                if out.pass { "PASS" } else { "FAIL" },
                out.checks.len(),
                failed
            ));
            s
        }
    })
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let o = &cli.opts;
    let order = usize::try_from(o.order).map_err(|_| Error::Domain("order too large".into()))?;
    let (text, code) = match &cli.command {
        Command::Series { which } => (
            render_series(&series_rows(*which, o.k_max, order)?, o.format)?,
            EXIT_PASS,
        ),
        Command::Coeffs { which, n_max } => {
            let kind = match which {
                CoeffKind::Anm => CoefficientKind::A,
                CoeffKind::Bnm => CoefficientKind::B,
            };
            let rows = coefficient_table(kind, *n_max)?;
            let name = match which {
                CoeffKind::Anm => "anm",
                CoeffKind::Bnm => "bnm",
            };
            let output = CoeffOutput {
                kind: name.into(),
                n_max: *n_max,
                rows,
            };
            (render_coeffs(&output, o.format)?, EXIT_PASS)
        }
        Command::Verify {
            suite,
            inject_fault,
        } => {
            let suite = match suite {
                SuiteArg::Exact => Suite::Exact,
                SuiteArg::Numeric => Suite::Numeric,
                SuiteArg::All => Suite::All,
            };
            let mut cfg = VerifyConfig::new(order, o.k_max, o.tol, o.seed);
            cfg.tamper = *inject_fault;
            let checks = run_suite(suite, &cfg)?;
            let pass = checks.iter().all(|c| c.pass);
            for c in checks.iter().filter(|c| !c.pass) {
                let _ = writeln!(err, "failed: {}", c.to_line());
            }
            let output = VerifyOutput {
                suite: suite.name().into(),
                pass,
                checks,
            };
            (
                render_verify(&output, o.format)?,
                if pass { EXIT_PASS } else { EXIT_FAIL },
            )
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Invariant(format!("cannot write output: {e}")))?;
    Ok(code)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("qeis").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn g_table_first_row() {
        let (code, out, _) = run_str(&["series", "g", "--k-max", "1", "--order", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "g_1 = -1/2 + q + q^2 - q^3 - 2q^4 + O(q^5)\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["series", "x"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["series", "g", "--order", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["series", "g", "--tol", "-1"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["--help"]).0, EXIT_PASS);
    }

    #[test]
    fn eisenstein_json() {
        let (code, out, _) = run_str(&[
            "series", "G", "--k-max", "4", "--order", "3", "--format", "json",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""name":"G_2""#) && out.contains(r#"[0,"-1/24"]"#));
        assert!(out.contains(r#"[0,"1/240"]"#));
    }

    #[test]
    fn coefficient_csv() {
        let (_, out, _) = run_str(&["coeffs", "anm", "--n-max", "3", "--format", "csv"]);
        assert_eq!(
            out,
            "n,m,value,threshold\n1,1,1,1\n2,2,1,2\n3,2,-2,2\n3,3,1,2\n"
        );
    }
}
