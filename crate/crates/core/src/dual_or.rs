//! The explicit dual polynomial for OR and its exact certificate.
//!
//! With `m = ⌊√n⌋` and support `S = {0, 1, 4, …, m²} ∪ {2}`,
//!
//! ```text
//! P(x) = 2 (-1)^(n-m-1) · m!² / n! · Π_{i ∈ {0..n} \ S} (x - i)
//! ```
//!
//! vanishes off `S`, has `P(0) = 1` and degree `n - m - 1`. Its parity
//! product `Q(k) = (-1)^k P(k)` has pure high degree `m + 1` and pairs with
//! OR as `Q·OR = 2`, so `‖Q‖₁ / (Q·OR) = ‖P‖₁ / 2`. Every one of these
//! facts, along with the per-point bounds on `S`, is checked exactly.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::document::Document;
use crate::error::{Error, Result};
use crate::lp_degree;
use crate::numeric::{binomial_rat, factorial, isqrt, Rat};
use crate::sympoly::{SinglePoly, SymBoolFn};

pub const CERTIFICATE_KIND: &str = "or-certificate";

/// Largest `n` a parsed certificate may claim before verification refuses
/// to build dense tables for it.
pub const MAX_VERIFY_N: usize = 100_000;

/// Epsilon certified by every OR certificate.
pub fn certified_epsilon() -> Rat {
    Rat::new(1, 14)
}

pub fn norm_bound() -> Rat {
    Rat::from(27)
}

pub fn ratio_bound() -> Rat {
    Rat::from(14)
}

fn check_domain(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "the OR dual polynomial needs n >= 2, got n = {n}"
        )));
    }
    Ok(())
}

/// `S = {i² : 0 <= i <= ⌊√n⌋} ∪ {2}`, ascending.
pub fn squares_plus_two(n: usize) -> Result<Vec<usize>> {
    check_domain(n)?;
    let m = isqrt(n as u64) as usize;
    let mut s: Vec<usize> = (0..=m).map(|i| i * i).collect();
    s.push(2);
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// `2 (-1)^(n-m-1) m!² / n!`
fn leading_factor(n: usize, m: usize) -> Rat {
    let mf = factorial(m as u64);
    Rat::from(2) * Rat::sign_pow(n - m - 1) * Rat::from(&mf * &mf) / Rat::from(factorial(n as u64))
}

/// `Π_{i ∈ {0..n} \ support} (x - i)` for sorted `support`.
fn root_product(n: usize, support: &[usize], x: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut s = support.iter().peekable();
    for i in 0..=n {
        if s.peek() == Some(&&i) {
            s.next();
            continue;
        }
        acc *= x - i as i64;
    }
    acc
}

/// `P(x)` from the closed product.
pub fn p_at(n: usize, x: i64) -> Result<Rat> {
    let support = squares_plus_two(n)?;
    let m = isqrt(n as u64) as usize;
    Ok(leading_factor(n, m) * Rat::from(root_product(n, &support, x)))
}

/// Value table of `P` on `{0..n}`; zero exactly off the support.
pub fn construct_p(n: usize) -> Result<SinglePoly> {
    let support = squares_plus_two(n)?;
    let m = isqrt(n as u64) as usize;
    let factor = leading_factor(n, m);
    let mut values = vec![Rat::zero(); n + 1];
    for &s in &support {
        values[s] = &factor * Rat::from(root_product(n, &support, s as i64));
    }
    SinglePoly::new(values)
}

/// `Q(k) = (-1)^k P(k)`.
pub fn construct_q(n: usize) -> Result<SinglePoly> {
    Ok(construct_p(n)?.parity_multiply())
}

/// `m!² / ((m+k)! (m-k)!)`, which never exceeds 1.
pub fn binom_ratio(m: usize, k: usize) -> Result<Rat> {
    if k > m {
        return Err(Error::Domain(format!(
            "binom_ratio needs k <= m, got k = {k}, m = {m}"
        )));
    }
    let mf = factorial(m as u64);
    Ok(Rat::from(&mf * &mf) / Rat::from(factorial((m + k) as u64) * factorial((m - k) as u64)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckRelation {
    Eq,
    Le,
    Lt,
    Gt,
}

impl CheckRelation {
    fn symbol(self) -> &'static str {
        match self {
            CheckRelation::Eq => "=",
            CheckRelation::Le => "<=",
            CheckRelation::Lt => "<",
            CheckRelation::Gt => ">",
        }
    }
}

/// One named exact comparison `lhs <relation> rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Check {
    pub name: String,
    pub lhs: Rat,
    pub relation: CheckRelation,
    pub rhs: Rat,
}

impl Check {
    fn new(name: impl Into<String>, lhs: Rat, relation: CheckRelation, rhs: Rat) -> Self {
        Check {
            name: name.into(),
            lhs,
            relation,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            CheckRelation::Eq => self.lhs == self.rhs,
            CheckRelation::Le => self.lhs <= self.rhs,
            CheckRelation::Lt => self.lhs < self.rhs,
            CheckRelation::Gt => self.lhs > self.rhs,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            self.name,
            self.lhs,
            self.relation.symbol(),
            self.rhs
        )
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [name, lhs, rel, rhs] = parts[..] else {
            return Err(Error::Parse(format!("bad check line {s:?}")));
        };
        let relation = match rel {
            "=" => CheckRelation::Eq,
            "<=" => CheckRelation::Le,
            "<" => CheckRelation::Lt,
            ">" => CheckRelation::Gt,
            _ => return Err(Error::Parse(format!("bad relation {rel:?}"))),
        };
        Ok(Check::new(name, lhs.parse()?, relation, rhs.parse()?))
    }
}

/// Per-point bounds: `C(n,2)|P(2)| <= 12` and `C(n,k²)|P(k²)| <= 8/k²`.
pub fn check_point_bounds(n: usize) -> Result<Vec<Check>> {
    let support = squares_plus_two(n)?;
    let p = construct_p(n)?;
    let values: Vec<Rat> = support.iter().map(|&s| p.value(s).clone()).collect();
    Ok(point_checks(n, &support, &values))
}

fn point_checks(n: usize, support: &[usize], values: &[Rat]) -> Vec<Check> {
    let m = isqrt(n as u64) as usize;
    let at = |x: usize| -> Rat {
        support
            .iter()
            .position(|&s| s == x)
            .map_or_else(Rat::zero, |i| values[i].clone())
    };
    let mut out = vec![Check::new(
        "point_two",
        binomial_rat(n, 2) * at(2).abs(),
        CheckRelation::Le,
        Rat::from(12),
    )];
    for k in 1..=m {
        out.push(Check::new(
            format!("square_{k}"),
            binomial_rat(n, k * k) * at(k * k).abs(),
            CheckRelation::Le,
            Rat::new(8, (k * k) as i64),
        ));
    }
    out
}

/// `‖P‖₁` summed over the support only.
pub fn check_norm(n: usize) -> Result<Rat> {
    let support = squares_plus_two(n)?;
    let p = construct_p(n)?;
    let norm = sparse_norm(
        n,
        &support,
        &support
            .iter()
            .map(|&s| p.value(s).clone())
            .collect::<Vec<_>>(),
    );
    if norm >= norm_bound() {
        return Err(Error::CheckFailed(format!("norm {norm} < 27")));
    }
    Ok(norm)
}

fn sparse_norm(n: usize, support: &[usize], values: &[Rat]) -> Rat {
    support
        .iter()
        .zip(values)
        .map(|(&s, v)| binomial_rat(n, s) * v.abs())
        .sum()
}

/// `‖P‖₁` over all `n + 1` points; cross-check for the sparse sum.
pub fn norm_dense(n: usize) -> Result<Rat> {
    Ok(construct_p(n)?.l1_norm())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrCertificate {
    pub n: usize,
    pub m: usize,
    pub support: Vec<usize>,
    /// `P` on `support`, same order.
    pub p_values: Vec<Rat>,
    pub q: SinglePoly,
    pub phd: usize,
    pub norm: Rat,
    pub ratio: Rat,
    pub epsilon_certified: Rat,
    pub degree_bound: usize,
    pub checks: Vec<Check>,
}

/// Quantities recomputed from `(n, support, P values)`.
struct Derived {
    q: SinglePoly,
    phd: usize,
    norm: Rat,
    ratio: Rat,
    checks: Vec<Check>,
}

fn derive(n: usize, support: &[usize], values: &[Rat]) -> Result<Derived> {
    let m = isqrt(n as u64) as usize;
    let mut table = vec![Rat::zero(); n + 1];
    for (&s, v) in support.iter().zip(values) {
        if s > n {
            return Err(Error::CheckFailed(format!(
                "support point {s} exceeds n = {n}"
            )));
        }
        table[s] = v.clone();
    }
    let p = SinglePoly::new(table)?;
    let q = p.parity_multiply();
    let deg_p = p.interpolate_degree();
    let phd = q.pure_high_degree()?;
    let norm = sparse_norm(n, support, values);
    let q_dot_or = q.pair_with(&SymBoolFn::or(n)?)?;
    if !q_dot_or.is_positive() {
        return Err(Error::CheckFailed(format!(
            "Q·OR = {q_dot_or} is not positive"
        )));
    }
    let ratio = &norm / &q_dot_or;

    let mut checks = vec![
        Check::new(
            "p_at_zero",
            p.value(0).clone(),
            CheckRelation::Eq,
            Rat::one(),
        ),
        Check::new(
            "degree_p",
            Rat::from(deg_p as i64),
            CheckRelation::Eq,
            Rat::from((n - m - 1) as i64),
        ),
        Check::new(
            "phd_q",
            Rat::from(phd as i64),
            CheckRelation::Eq,
            Rat::from((m + 1) as i64),
        ),
        Check::new(
            "phd_squared",
            Rat::from((phd * phd) as i64),
            CheckRelation::Gt,
            Rat::from(n as i64),
        ),
    ];
    for k in 0..=m {
        checks.push(Check::new(
            format!("binom_ratio_{k}"),
            binom_ratio(m, k)?,
            CheckRelation::Le,
            Rat::one(),
        ));
    }
    checks.extend(point_checks(n, support, values));
    checks.push(Check::new(
        "norm",
        norm.clone(),
        CheckRelation::Lt,
        norm_bound(),
    ));
    checks.push(Check::new(
        "q_dot_or",
        q_dot_or,
        CheckRelation::Eq,
        Rat::from(2) * q.value(0),
    ));
    checks.push(Check::new(
        "l1_q_equals_l1_p",
        q.l1_norm(),
        CheckRelation::Eq,
        norm.clone(),
    ));
    checks.push(Check::new(
        "ratio",
        ratio.clone(),
        CheckRelation::Lt,
        ratio_bound(),
    ));
    Ok(Derived {
        q,
        phd,
        norm,
        ratio,
        checks,
    })
}

/// Builds and checks the certificate; any failed comparison is an error
/// naming it.
pub fn make_certificate(n: usize) -> Result<OrCertificate> {
    let support = squares_plus_two(n)?;
    let m = isqrt(n as u64) as usize;
    let factor = leading_factor(n, m);
    let p_values: Vec<Rat> = support
        .iter()
        .map(|&s| &factor * Rat::from(root_product(n, &support, s as i64)))
        .collect();
    let d = derive(n, &support, &p_values)?;
    if let Some(bad) = d.checks.iter().find(|c| !c.holds()) {
        return Err(Error::CheckFailed(bad.to_string()));
    }
    let half_norm = &d.norm / (Rat::from(2) * &p_values[0]);
    if d.ratio != half_norm {
        return Err(Error::CheckFailed(format!(
            "ratio {} differs from norm / (2 P(0)) = {half_norm}",
            d.ratio
        )));
    }
    Ok(OrCertificate {
        n,
        m,
        support,
        p_values,
        q: d.q,
        phd: d.phd,
        norm: d.norm,
        ratio: d.ratio,
        epsilon_certified: certified_epsilon(),
        degree_bound: d.phd,
        checks: d.checks,
    })
}

impl OrCertificate {
    pub fn to_document(&self) -> Document {
        let mut doc = Document::new(CERTIFICATE_KIND);
        doc.push("n", self.n);
        doc.push("m", self.m);
        doc.push(
            "support",
            self.support
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        );
        for (s, v) in self.support.iter().zip(&self.p_values) {
            doc.push("p", format!("{s} {v}"));
        }
        doc.push("phd", self.phd);
        doc.push("norm", &self.norm);
        doc.push("ratio", &self.ratio);
        doc.push("epsilon_certified", &self.epsilon_certified);
        doc.push("degree_bound", self.degree_bound);
        for c in &self.checks {
            doc.push("check", c);
        }
        doc
    }

    pub fn summary(&self) -> String {
        format!(
            "n = {}  m = {}  phd = {}  norm = {}  ratio = {}  eps = {}  degree_bound = {}",
            self.n,
            self.m,
            self.phd,
            self.norm,
            self.ratio,
            self.epsilon_certified,
            self.degree_bound
        )
    }
}

/// Fields as written in a certificate document, before any checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCertificate {
    pub n: usize,
    pub m: usize,
    pub support: Vec<usize>,
    pub p: Vec<(usize, Rat)>,
    pub phd: usize,
    pub norm: Rat,
    pub ratio: Rat,
    pub epsilon_certified: Rat,
    pub degree_bound: usize,
    pub checks: Vec<Check>,
}

impl RawCertificate {
    pub fn from_document(doc: &Document) -> Result<Self> {
        if doc.kind()? != CERTIFICATE_KIND {
            return Err(Error::Parse(format!(
                "expected kind {CERTIFICATE_KIND:?}, got {:?}",
                doc.kind()?
            )));
        }
        let p = doc
            .get_all("p")
            .map(|line| {
                let (s, v) = line
                    .split_once(' ')
                    .ok_or_else(|| Error::Parse(format!("bad p entry {line:?}")))?;
                let s = s
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad p point {s:?}")))?;
                Ok((s, v.trim().parse::<Rat>()?))
            })
            .collect::<Result<Vec<_>>>()?;
        let checks = doc
            .get_all("check")
            .map(str::parse)
            .collect::<Result<Vec<Check>>>()?;
        Ok(RawCertificate {
            n: doc.parse_field("n")?,
            m: doc.parse_field("m")?,
            support: doc.list("support")?,
            p,
            phd: doc.parse_field("phd")?,
            norm: doc.rat("norm")?,
            ratio: doc.rat("ratio")?,
            epsilon_certified: doc.rat("epsilon_certified")?,
            degree_bound: doc.parse_field("degree_bound")?,
            checks,
        })
    }
}

impl FromStr for RawCertificate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_document(&s.parse()?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub accepted: bool,
    /// Human-readable reasons for rejection; empty when accepted.
    pub failures: Vec<String>,
    pub ratio: Option<Rat>,
    pub phd: Option<usize>,
}

/// Re-derives every quantity from the embedded `P` values and compares.
///
/// `eps` defaults to the certificate's own epsilon. When `n <= brute_limit`
/// the pure high degree is also recomputed from the full Fourier expansion.
pub fn verify_certificate_doc(
    raw: &RawCertificate,
    eps: Option<&Rat>,
    brute_limit: usize,
) -> Verification {
    let mut failures = Vec::new();
    let n = raw.n;

    if n < 2 {
        failures.push(format!("n = {n} is below 2"));
    }
    if n > MAX_VERIFY_N {
        failures.push(format!(
            "n = {n} exceeds the verification limit {MAX_VERIFY_N}"
        ));
    }
    if !failures.is_empty() {
        return Verification {
            accepted: false,
            failures,
            ratio: None,
            phd: None,
        };
    }

    if raw.m != isqrt(n as u64) as usize {
        failures.push(format!(
            "m = {} but floor(sqrt({n})) = {}",
            raw.m,
            isqrt(n as u64)
        ));
    }
    let expected_support = squares_plus_two(n).expect("n >= 2");
    if raw.support != expected_support {
        failures.push(format!(
            "support {:?} differs from {expected_support:?}",
            raw.support
        ));
    }
    let points: Vec<usize> = raw.p.iter().map(|(s, _)| *s).collect();
    if points != raw.support {
        failures.push(format!("P is given on {points:?}, not on the support"));
    }
    if raw.epsilon_certified != certified_epsilon() {
        failures.push(format!(
            "epsilon_certified {} is not 1/14",
            raw.epsilon_certified
        ));
    }
    if raw.degree_bound != raw.phd {
        failures.push(format!(
            "degree_bound {} differs from phd {}",
            raw.degree_bound, raw.phd
        ));
    }

    let values: Vec<Rat> = raw.p.iter().map(|(_, v)| v.clone()).collect();
    if points == expected_support {
        match construct_p(n) {
            Ok(p) => {
                for (s, v) in &raw.p {
                    if p.value(*s) != v {
                        failures.push(format!(
                            "P({s}) = {v} differs from the construction {}",
                            p.value(*s)
                        ));
                    }
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }

    let mut ratio = None;
    let mut phd = None;
    match derive(n, &points, &values) {
        Err(e) => failures.push(format!("re-derivation failed: {e}")),
        Ok(d) => {
            if d.phd != raw.phd {
                failures.push(format!("phd {} but re-derived {}", raw.phd, d.phd));
            }
            if d.norm != raw.norm {
                failures.push(format!("norm {} but re-derived {}", raw.norm, d.norm));
            }
            if d.ratio != raw.ratio {
                failures.push(format!("ratio {} but re-derived {}", raw.ratio, d.ratio));
            }
            if d.checks != raw.checks {
                let first = d
                    .checks
                    .iter()
                    .zip(&raw.checks)
                    .find(|(a, b)| a != b)
                    .map(|(a, b)| format!("stated `{b}`, re-derived `{a}`"))
                    .unwrap_or_else(|| {
                        format!(
                            "{} checks stated, {} re-derived",
                            raw.checks.len(),
                            d.checks.len()
                        )
                    });
                failures.push(format!("checks list mismatch: {first}"));
            }
            for c in d.checks.iter().filter(|c| !c.holds()) {
                failures.push(format!("check fails: {c}"));
            }
            if n <= brute_limit {
                match d
                    .q
                    .expand_multilinear(brute_limit)
                    .and_then(|e| e.fourier_level_range())
                {
                    Ok((lo, _)) if lo == d.phd => {}
                    Ok((lo, _)) => {
                        failures.push(format!("Fourier min level {lo} differs from phd {}", d.phd))
                    }
                    Err(e) => failures.push(e.to_string()),
                }
            }
            let eps = eps
                .cloned()
                .unwrap_or_else(|| raw.epsilon_certified.clone());
            match SymBoolFn::or(n)
                .and_then(|or| lp_degree::verify_certificate(&or, &d.q, &eps, raw.degree_bound))
            {
                Ok(v) if v.accepted => {}
                Ok(v) => failures.push(format!(
                    "dual witness rejected at eps = {eps}, d = {}: ratio {}",
                    raw.degree_bound,
                    v.ratio.map_or("undefined".into(), |r| r.to_string())
                )),
                Err(e) => failures.push(e.to_string()),
            }
            ratio = Some(d.ratio);
            phd = Some(d.phd);
        }
    }

    Verification {
        accepted: failures.is_empty(),
        failures,
        ratio,
        phd,
    }
}

/// Variant built without the point 2 in its support; does not certify
/// anything and exists to show how the norm grows without it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoTwoDiagnostic {
    pub n: usize,
    pub norm: Rat,
    pub phd: usize,
    pub ratio: Rat,
}

pub fn no_two_diagnostic(n: usize) -> Result<NoTwoDiagnostic> {
    check_domain(n)?;
    let m = isqrt(n as u64) as usize;
    let support: Vec<usize> = (0..=m).map(|i| i * i).collect();
    let at_zero = Rat::from(root_product(n, &support, 0));
    let mut values = vec![Rat::zero(); n + 1];
    for &s in &support {
        values[s] = Rat::from(root_product(n, &support, s as i64)) / &at_zero;
    }
    let p = SinglePoly::new(values)?;
    let q = p.parity_multiply();
    let norm = p.l1_norm();
    let pairing = q.pair_with(&SymBoolFn::or(n)?)?;
    Ok(NoTwoDiagnostic {
        n,
        phd: q.pure_high_degree()?,
        ratio: &norm / &pairing,
        norm,
    })
}
