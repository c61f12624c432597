//! Command-line front end. Exit codes: 0 success or accepted, 1
//! mathematical rejection, 2 usage or format error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::document::Document;
use crate::dual_or::{self, RawCertificate};
use crate::error::{Error, Result};
use crate::lp_degree::{self, LP_DESK_LIMIT};
use crate::numeric::{isqrt, Rat};
use crate::sympoly::{SymBoolFn, BRUTE_FORCE_LIMIT};
use crate::threshold;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SWEEP_HEADER: &str = "n,m,phd,norm,ratio,norm_decimal_lossy,ratio_decimal_lossy";

#[derive(Debug, Parser)]
#[command(
    name = "dualpoly",
    version,
    about = "Exact dual polynomials for approximate-degree lower bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the OR dual certificate for n bits.
    OrCert {
        #[arg(long)]
        n: usize,
        /// Write the certificate here; printed to stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = BRUTE_FORCE_LIMIT)]
        brute_limit: usize,
    },
    /// Re-derive and check a certificate or witness document.
    Verify {
        path: PathBuf,
        /// Exact rational such as 1/14; defaults to the document's own.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long, default_value_t = BRUTE_FORCE_LIMIT)]
        brute_limit: usize,
    },
    /// Exact eps-approximate degree of a symmetric function.
    Degree {
        /// or, parity, constant, or threshold-<t>
        #[arg(long)]
        func: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: String,
        /// Also report epsilon_star at this degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Write the dual witness proving the lower bound here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate OR certificates over a range of n, e.g. --n 2..100.
    Sweep {
        #[arg(long)]
        n: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Report on the threshold candidate; omit --t to sweep every t.
    Threshold {
        /// A single n or a range a..b
        #[arg(long)]
        n: String,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Result of a subcommand: exit code plus what goes to stdout and stderr.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }

    fn rejected(stdout: String, stderr: String) -> Self {
        Outcome {
            code: EXIT_REJECTED,
            stdout,
            stderr,
        }
    }
}

/// Parses argv and runs; clap usage errors map to exit code 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::OrCert {
            n,
            out,
            brute_limit,
        } => cmd_or_cert(n, out.as_deref(), brute_limit),
        Command::Verify {
            path,
            eps,
            brute_limit,
        } => cmd_verify(&path, eps.as_deref(), brute_limit),
        Command::Degree {
            func,
            n,
            eps,
            degree,
            out,
        } => cmd_degree(&func, n, &eps, degree, out.as_deref()),
        Command::Sweep { n, out, format } => cmd_sweep(&n, out.as_deref(), format),
        Command::Threshold { n, t, format, out } => cmd_threshold(&n, t, format, out.as_deref()),
    }
}

fn parse_eps(s: &str) -> Result<Rat> {
    s.parse::<Rat>().map_err(|_| {
        Error::Parse(format!(
            "eps must be an exact rational like 1/14, got {s:?}"
        ))
    })
}

/// `a..b` (inclusive) or a single integer.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || {
        Error::Parse(format!(
            "bad range {s:?}; expected a..b or a single integer"
        ))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            )
        }
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if hi < lo {
        return Err(Error::Parse(format!("empty range {s:?}: max < min")));
    }
    Ok((lo, hi))
}

fn write_file(path: &Path, contents: &str) -> std::result::Result<(), Outcome> {
    std::fs::write(path, contents)
        .map_err(|e| Outcome::usage(format!("cannot write {}: {e}", path.display())))
}

pub fn cmd_or_cert(n: usize, out: Option<&Path>, brute_limit: usize) -> Outcome {
    if n < 2 {
        return Outcome::usage(format!("or-cert needs n >= 2, got n = {n}"));
    }
    let cert = match dual_or::make_certificate(n) {
        Ok(c) => c,
        Err(e @ Error::Domain(_)) => return Outcome::usage(e),
        Err(e) => {
            return Outcome::rejected(String::new(), format!("certificate check failed: {e}\n"))
        }
    };
    if n <= brute_limit {
        let level = cert
            .q
            .expand_multilinear(brute_limit)
            .and_then(|p| p.fourier_level_range());
        if level.as_ref().map(|l| l.0) != Ok(cert.phd) {
            return Outcome::rejected(
                String::new(),
                format!("Fourier cross-check failed: {level:?}\n"),
            );
        }
    }
    let doc = cert.to_document().to_string();
    let mut summary = String::new();
    let _ = writeln!(summary, "n: {}", cert.n);
    let _ = writeln!(summary, "m: {}", cert.m);
    let _ = writeln!(summary, "phd: {}", cert.phd);
    let _ = writeln!(summary, "norm: {}", cert.norm);
    let _ = writeln!(summary, "ratio: {}", cert.ratio);
    let _ = writeln!(summary, "epsilon_certified: {}", cert.epsilon_certified);
    let _ = writeln!(summary, "degree_bound: {}", cert.degree_bound);
    let _ = writeln!(summary, "checks: {} passed", cert.checks.len());
    match out {
        Some(path) => {
            if let Err(o) = write_file(path, &doc) {
                return o;
            }
            Outcome::ok(summary)
        }
        None => Outcome {
            code: EXIT_OK,
            stdout: doc,
            stderr: summary,
        },
    }
}

pub fn cmd_verify(path: &Path, eps: Option<&str>, brute_limit: usize) -> Outcome {
    let eps = match eps.map(parse_eps).transpose() {
        Ok(e) => e,
        Err(e) => return Outcome::usage(e),
    };
    match std::fs::read_to_string(path) {
        Ok(text) => verify_text(&text, eps.as_ref(), brute_limit),
        Err(e) => Outcome::usage(format!("cannot read {}: {e}", path.display())),
    }
}

/// Verification of an in-memory certificate or witness document.
pub fn verify_text(text: &str, eps: Option<&Rat>, brute_limit: usize) -> Outcome {
    let doc: Document = match text.parse() {
        Ok(d) => d,
        Err(e) => return Outcome::usage(e),
    };
    match doc.kind() {
        Ok(dual_or::CERTIFICATE_KIND) => {
            let raw = match RawCertificate::from_document(&doc) {
                Ok(r) => r,
                Err(e) => return Outcome::usage(e),
            };
            let v = dual_or::verify_certificate_doc(&raw, eps, brute_limit);
            let ratio = v.ratio.as_ref().map_or("undefined".into(), Rat::to_string);
            let phd = v.phd.map_or("undefined".into(), |p| p.to_string());
            if v.accepted {
                Outcome::ok(format!(
                    "accepted: deg_eps(OR_{}) >= {} for eps = {}\nphd: {phd}\nratio: {ratio}\n",
                    raw.n,
                    raw.degree_bound,
                    eps.unwrap_or(&raw.epsilon_certified)
                ))
            } else {
                let mut err = String::new();
                for f in &v.failures {
                    let _ = writeln!(err, "rejected: {f}");
                }
                Outcome::rejected(format!("rejected\nphd: {phd}\nratio: {ratio}\n"), err)
            }
        }
        Ok(lp_degree::WITNESS_KIND) => match lp_degree::verify_witness_document(&doc, eps) {
            Ok((v, d)) => {
                let ratio = v.ratio.as_ref().map_or("undefined".into(), Rat::to_string);
                let body = format!("phd: {}\npairing: {}\nratio: {ratio}\n", v.phd, v.pairing);
                if v.accepted {
                    Outcome::ok(format!("accepted: lower bound {d}\n{body}"))
                } else {
                    Outcome::rejected(
                        format!("rejected\n{body}"),
                        format!("rejected: witness fails at degree {d}\n"),
                    )
                }
            }
            Err(Error::ZeroPolynomial) => {
                Outcome::rejected("rejected\n".into(), "rejected: zero witness\n".into())
            }
            Err(e) => Outcome::usage(e),
        },
        Ok(other) => Outcome::usage(format!("unknown document kind {other:?}")),
        Err(e) => Outcome::usage(e),
    }
}

pub fn cmd_degree(
    func: &str,
    n: usize,
    eps: &str,
    degree: Option<usize>,
    out: Option<&Path>,
) -> Outcome {
    if n == 0 || n > LP_DESK_LIMIT {
        return Outcome::usage(format!(
            "degree needs 1 <= n <= {LP_DESK_LIMIT}, got n = {n}"
        ));
    }
    let eps = match parse_eps(eps) {
        Ok(e) => e,
        Err(e) => return Outcome::usage(e),
    };
    let f = match SymBoolFn::by_name(func, n) {
        Ok(f) => f,
        Err(e) => return Outcome::usage(e),
    };
    if let Some(d) = degree {
        if d > n {
            return Outcome::usage(format!("--degree {d} exceeds n = {n}"));
        }
    }
    let d = match lp_degree::approx_degree(&f, &eps) {
        Ok(d) => d,
        Err(e @ Error::Domain(_)) => return Outcome::usage(e),
        Err(e) => return Outcome::rejected(String::new(), format!("{e}\n")),
    };
    let solve = |k: usize| lp_degree::min_eps_for_degree(&f, k);
    let mut s = String::new();
    let _ = writeln!(s, "function: {} (n = {n})", f.name());
    let _ = writeln!(s, "eps: {eps}");
    let _ = writeln!(s, "degree: {d}");
    let at_d = match solve(d) {
        Ok(r) => r,
        Err(e) => return Outcome::rejected(s, format!("{e}\n")),
    };
    let _ = writeln!(s, "epsilon_star({d}): {}", at_d.epsilon_star);
    let below = if d > 0 {
        match solve(d - 1) {
            Ok(r) => {
                let _ = writeln!(s, "epsilon_star({}): {}", d - 1, r.epsilon_star);
                Some(r)
            }
            Err(e) => return Outcome::rejected(s, format!("{e}\n")),
        }
    } else {
        None
    };
    if let Some(k) = degree {
        match solve(k) {
            Ok(r) => {
                let _ = writeln!(s, "requested epsilon_star({k}): {}", r.epsilon_star);
            }
            Err(e) => return Outcome::rejected(s, format!("{e}\n")),
        }
    }
    if let Some(path) = out {
        // the witness at degree d - 1 has pure high degree d and proves deg >= d
        let Some(witness) = below.and_then(|r| r.witness) else {
            let _ = writeln!(s, "witness: none (degree 0 needs no lower-bound witness)");
            return Outcome::ok(s);
        };
        let doc = match lp_degree::witness_document(&f, &witness.b, &eps, d) {
            Ok(doc) => doc,
            Err(e) => return Outcome::rejected(s, format!("{e}\n")),
        };
        if let Err(o) = write_file(path, &doc.to_string()) {
            return o;
        }
        let _ = writeln!(s, "witness: {}", path.display());
    }
    Outcome::ok(s)
}

/// One row per `n`, in ascending order regardless of completion order.
pub fn sweep_rows(lo: usize, hi: usize) -> Result<Vec<dual_or::OrCertificate>> {
    (lo..=hi)
        .into_par_iter()
        .map(dual_or::make_certificate)
        .collect()
}

pub fn cmd_sweep(range: &str, out: Option<&Path>, format: Format) -> Outcome {
    let (lo, hi) = match parse_range(range) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    if lo < 2 {
        return Outcome::usage(format!("sweep needs n >= 2, got {lo}"));
    }
    let certs = match sweep_rows(lo, hi) {
        Ok(c) => c,
        Err(e) => return Outcome::rejected(String::new(), format!("{e}\n")),
    };
    let mut text = String::new();
    match format {
        Format::Csv => {
            let _ = writeln!(text, "{SWEEP_HEADER}");
            for c in &certs {
                let _ = writeln!(
                    text,
                    "{},{},{},{},{},{},{}",
                    c.n,
                    c.m,
                    c.phd,
                    c.norm,
                    c.ratio,
                    c.norm.to_decimal_string(6),
                    c.ratio.to_decimal_string(6)
                );
            }
        }
        Format::Text => {
            let _ = writeln!(
                text,
                "{:>6} {:>4} {:>4} {:>12} {:>12}",
                "n", "m", "phd", "norm~", "ratio~"
            );
            for c in &certs {
                let _ = writeln!(
                    text,
                    "{:>6} {:>4} {:>4} {:>12} {:>12}",
                    c.n,
                    isqrt(c.n as u64),
                    c.phd,
                    c.norm.to_decimal_string(6),
                    c.ratio.to_decimal_string(6)
                );
            }
        }
    }
    match out {
        Some(path) => match write_file(path, &text) {
            Ok(()) => Outcome::ok(format!(
                "{} rows written to {}\n",
                certs.len(),
                path.display()
            )),
            Err(o) => o,
        },
        None => Outcome::ok(text),
    }
}

pub fn cmd_threshold(range: &str, t: Option<usize>, format: Format, out: Option<&Path>) -> Outcome {
    let (lo, hi) = match parse_range(range) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    if lo == 0 {
        return Outcome::usage("threshold needs n >= 1");
    }
    if let Some(t) = t {
        if t > lo {
            return Outcome::usage(format!(
                "threshold needs 0 <= t <= n, got t = {t}, n = {lo}"
            ));
        }
    }
    let grid: Vec<(usize, usize)> = (lo..=hi)
        .flat_map(|n| match t {
            Some(t) => vec![(n, t)],
            None => (0..=n).map(|t| (n, t)).collect(),
        })
        .collect();
    let reports: Result<Vec<_>> = grid
        .into_par_iter()
        .map(|(n, t)| threshold::build_candidate(n, t))
        .collect();
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let mut text = String::new();
    match format {
        Format::Csv => {
            let _ = writeln!(text, "{}", threshold::CSV_HEADER);
            for r in &reports {
                let _ = writeln!(text, "{}", r.csv_row());
            }
        }
        Format::Text => {
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    text.push('\n');
                }
                text.push_str(&r.render_text());
            }
        }
    }
    match out {
        Some(path) => match write_file(path, &text) {
            Ok(()) => Outcome::ok(format!(
                "{} reports written to {}\n",
                reports.len(),
                path.display()
            )),
            Err(o) => o,
        },
        None => Outcome::ok(text),
    }
}

/// Writes an outcome's streams and returns its exit code.
pub fn emit(outcome: &Outcome, stdout: &mut impl Write, stderr: &mut impl Write) -> i32 {
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    let _ = stderr.write_all(outcome.stderr.as_bytes());
    outcome.code
}
