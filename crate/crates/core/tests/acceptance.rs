//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.
//! Runs without the libtest harness so the lines print under plain `cargo test`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use dualpoly::cli::{self, Format, EXIT_REJECTED};
use dualpoly::dual_or::{self, make_certificate};
use dualpoly::lp_degree::{
    approx_degree, max_dual_correlation, min_eps_for_degree, verify_certificate,
};
use dualpoly::numeric::isqrt;
use dualpoly::threshold::{build_candidate, CSV_HEADER};
use dualpoly::{Document, MultilinearPoly, Rat, SinglePoly, SymBoolFn, BRUTE_FORCE_LIMIT};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure!(took <= limit, "{what} took {took:.2?}, limit {limit:?}");
    Ok(took)
}

// -- independent oracles -----------------------------------------------------

/// Pascal's triangle row, built by addition only.
fn pascal_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for _ in 0..n {
        let mut next = vec![BigInt::from(1); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}

/// P(k) by direct evaluation of the defining product, with its own
/// factorials and support set.
fn direct_p(n: usize, k: usize) -> Rat {
    let mut m = 0;
    while (m + 1) * (m + 1) <= n {
        m += 1;
    }
    let mut support: Vec<usize> = (0..=m).map(|j| j * j).collect();
    if !support.contains(&2) {
        support.push(2);
    }
    let fact = |x: usize| (1..=x).fold(BigInt::from(1), |a, b| a * b);
    let mut prod = BigInt::from(2) * fact(m) * fact(m);
    if (n - m - 1) % 2 == 1 {
        prod = -prod;
    }
    for i in (0..=n).filter(|i| !support.contains(i)) {
        prod *= BigInt::from(k as i64 - i as i64);
    }
    Rat::new(prod, fact(n))
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    r(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

/// Either a plain random table or `(-1)^k g(k)` with `g` of random degree,
/// which plants a known pure high degree.
fn random_single(rng: &mut ChaCha8Rng, n: usize) -> SinglePoly {
    let values = if rng.gen_bool(0.3) {
        (0..=n).map(|_| random_rat(rng)).collect()
    } else {
        let deg = rng.gen_range(0..=n);
        let coeffs: Vec<Rat> = (0..=deg).map(|_| random_rat(rng)).collect();
        (0..=n)
            .map(|k| {
                let g: Rat = coeffs
                    .iter()
                    .rev()
                    .fold(Rat::zero(), |acc, c| acc * Rat::from(k as i64) + c);
                g * Rat::sign_pow(k)
            })
            .collect()
    };
    SinglePoly::new(values).unwrap()
}

fn symmetric_family(n: usize) -> Vec<SymBoolFn> {
    let mut fs = vec![
        SymBoolFn::or(n).unwrap(),
        SymBoolFn::parity(n).unwrap(),
        SymBoolFn::constant(n).unwrap(),
    ];
    fs.extend((0..=n).map(|t| SymBoolFn::threshold(n, t).unwrap()));
    fs
}

// -- criteria ----------------------------------------------------------------

fn c1_certificate_suite() -> Check {
    let start = Instant::now();
    let ns = [2usize, 4, 9, 16, 25, 49, 100, 961];
    for &n in &ns {
        let cert = make_certificate(n).map_err(|e| format!("n={n}: {e}"))?;
        let m = isqrt(n as u64) as usize;
        let p = cert.q.parity_multiply();
        ensure!(p.value(0) == &Rat::one(), "n={n}: P(0) = {}", p.value(0));
        ensure!(
            p.interpolate_degree() == (n - m - 1) as isize,
            "n={n}: deg P = {}",
            p.interpolate_degree()
        );
        ensure!(
            cert.phd == m + 1 && (m + 1) * (m + 1) > n,
            "n={n}: phd = {}",
            cert.phd
        );
        let row = pascal_row(n);
        let weighted = |k: usize| Rat::from(row[k].clone()) * p.value(k).abs();
        ensure!(
            weighted(2) <= Rat::from(12),
            "n={n}: C(n,2)|P(2)| = {}",
            weighted(2)
        );
        for k in 1..=m {
            let bound = r(8, (k * k) as i64);
            ensure!(weighted(k * k) <= bound, "n={n}: point k={k} over 8/k^2");
        }
        ensure!(cert.norm < Rat::from(27), "n={n}: norm {}", cert.norm);
        ensure!(cert.ratio < Rat::from(14), "n={n}: ratio {}", cert.ratio);
        ensure!(
            cert.checks.iter().all(|c| c.holds()),
            "n={n}: a recorded check fails"
        );
    }
    let took = within(start, Duration::from_secs(10), "certificate suite")?;
    Ok(format!("{} values of n in {took:.2?}", ns.len()))
}

fn c2_hand_values() -> Check {
    let expected_p4 = [r(1, 1), r(2, 3), r(1, 3), r(0, 1), r(-1, 3)];
    for (k, v) in expected_p4.iter().enumerate() {
        ensure!(
            &direct_p(4, k) == v,
            "oracle disagrees with hand value P({k})"
        );
    }
    for (n, norm, ratio, phd) in [(4usize, 6, 3, 3usize), (2, 4, 2, 2)] {
        let row = pascal_row(n);
        let oracle_norm: Rat = (0..=n)
            .map(|k| Rat::from(row[k].clone()) * direct_p(n, k).abs())
            .sum();
        // Q·OR with Q = parity·P: only k = 0 has OR = +1
        let oracle_corr: Rat = (0..=n)
            .map(|k| {
                let or = if k == 0 { 1 } else { -1 };
                Rat::from(row[k].clone()) * direct_p(n, k) * Rat::from(or) * Rat::sign_pow(k)
            })
            .sum();
        ensure!(
            oracle_norm == Rat::from(norm),
            "oracle norm n={n}: {oracle_norm}"
        );
        ensure!(
            &oracle_norm / &oracle_corr == Rat::from(ratio),
            "oracle ratio n={n}"
        );

        let cert = make_certificate(n).map_err(|e| e.to_string())?;
        let p = cert.q.parity_multiply();
        for k in 0..=n {
            ensure!(
                p.value(k) == &direct_p(n, k),
                "n={n}: P({k}) differs from oracle"
            );
        }
        ensure!(cert.norm == Rat::from(norm), "n={n}: norm {}", cert.norm);
        ensure!(
            cert.ratio == Rat::from(ratio),
            "n={n}: ratio {}",
            cert.ratio
        );
        ensure!(cert.phd == phd, "n={n}: phd {}", cert.phd);
    }
    Ok("n=4: P=(1,2/3,1/3,0,-1/3), norm 6, ratio 3, phd 3; n=2: norm 4, ratio 2".into())
}

fn c3_phd_equivalence() -> Check {
    let start = Instant::now();
    let per_n = 200;
    let results: Vec<Result<usize, String>> = (2..=12usize)
        .into_par_iter()
        .map(|n| {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
            let mut done = 0;
            while done < per_n {
                let p = random_single(&mut rng, n);
                if p.is_zero() {
                    continue;
                }
                let a = p.pure_high_degree().map_err(|e| e.to_string())?;
                let b = p.pure_high_degree_by_moments().map_err(|e| e.to_string())?;
                let (c, _) = p
                    .expand_multilinear(BRUTE_FORCE_LIMIT)
                    .and_then(|m| m.fourier_level_range())
                    .map_err(|e| e.to_string())?;
                ensure!(
                    a == b && b == c,
                    "n={n}: parity {a}, moments {b}, Fourier {c}"
                );
                done += 1;
            }
            Ok(done)
        })
        .collect();
    let total: usize = results.into_iter().sum::<Result<usize, String>>()?;
    let took = within(start, Duration::from_secs(60), "phd equivalence")?;
    Ok(format!("{total} polynomials, n=2..12, in {took:.2?}"))
}

fn c4_strong_duality() -> Check {
    let mut lps = 0;
    for n in 2..=8usize {
        let fs = [
            SymBoolFn::or(n).unwrap(),
            SymBoolFn::parity(n).unwrap(),
            SymBoolFn::threshold(n, n.div_ceil(2)).unwrap(),
        ];
        for f in &fs {
            for d in 0..=n {
                let primal = min_eps_for_degree(f, d).map_err(|e| e.to_string())?;
                let (dual, b) = max_dual_correlation(f, d).map_err(|e| e.to_string())?;
                lps += 2;
                ensure!(
                    primal.epsilon_star == dual,
                    "{} n={n} d={d}: primal {} dual {dual}",
                    f.name(),
                    primal.epsilon_star
                );
                ensure!(
                    b.l1_norm() <= Rat::one() && b.pair_with(f).unwrap() == dual,
                    "{} n={n} d={d}: dual solution off",
                    f.name()
                );
                match &primal.witness {
                    None => ensure!(primal.epsilon_star.is_zero(), "missing witness"),
                    Some(w) => {
                        let eps = &w.target_eps * r(1, 2);
                        let v =
                            verify_certificate(f, &w.b, &eps, d + 1).map_err(|e| e.to_string())?;
                        ensure!(
                            v.accepted,
                            "{} n={n} d={d}: witness rejected at eps {eps}",
                            f.name()
                        );
                        ensure!(
                            w.ratio == w.target_eps.recip(),
                            "witness ratio is not 1/eps*"
                        );
                    }
                }
            }
        }
    }
    Ok(format!(
        "{lps} LPs, primal optimum = dual optimum, every witness verified"
    ))
}

fn c5_lp_consistency() -> Check {
    let eps = dual_or::certified_epsilon();
    let mut found = Vec::new();
    for n in 2..=10usize {
        let d = approx_degree(&SymBoolFn::or(n).unwrap(), &eps).map_err(|e| e.to_string())?;
        let m = isqrt(n as u64) as usize;
        ensure!(d > m, "n={n}: LP degree {d} below {}", m + 1);
        found.push(d.to_string());
    }
    Ok(format!("deg_(1/14)(OR_n) for n=2..10: {}", found.join(" ")))
}

fn c6_monotone() -> Check {
    let mut count = 0;
    for n in 1..=8usize {
        for f in symmetric_family(n) {
            let eps: Vec<Rat> = (0..=n)
                .map(|d| min_eps_for_degree(&f, d).map(|m| m.epsilon_star))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            ensure!(
                eps.windows(2).all(|w| w[0] >= w[1]),
                "{} n={n}: not monotone",
                f.name()
            );
            ensure!(eps[n].is_zero(), "{} n={n}: eps*(n) = {}", f.name(), eps[n]);
            if f.is_balanced_range() {
                ensure!(
                    eps[0] == Rat::one(),
                    "{} n={n}: eps*(0) = {}",
                    f.name(),
                    eps[0]
                );
            }
            count += 1;
        }
    }
    Ok(format!("{count} functions, n=1..8"))
}

fn c7_symmetrization() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e77);
    let mut count = 0;
    for n in 2..=8usize {
        let family = symmetric_family(n);
        for _ in 0..100 {
            let coeffs: Vec<Rat> = (0..1usize << n)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        random_rat(&mut rng)
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            let p = MultilinearPoly::from_coefficients(n, coeffs).unwrap();
            let s = p.symmetrize(BRUTE_FORCE_LIMIT).map_err(|e| e.to_string())?;
            ensure!(s.is_symmetric(), "n={n}: output not symmetric");
            ensure!(
                s.symmetrize(BRUTE_FORCE_LIMIT).unwrap() == s,
                "n={n}: not idempotent"
            );
            for f in &family {
                let before = p.max_error(f).unwrap();
                let after = s.max_error(f).unwrap();
                ensure!(
                    after <= before,
                    "n={n} {}: error {before} -> {after}",
                    f.name()
                );
            }
            count += 1;
        }
    }
    Ok(format!(
        "{count} polynomials, n=2..8, every symmetric function in the family"
    ))
}

fn c8_threshold() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e5);
    let mut undefined = 0;
    let mut count = 0;
    for n in 1..=30usize {
        for t in 0..=n {
            let rep = build_candidate(n, t).map_err(|e| e.to_string())?;
            ensure!(
                rep.phd + 1 == rep.set.clipped.len(),
                "n={n} t={t}: phd {}",
                rep.phd
            );
            let c = loop {
                let c = random_rat(&mut rng);
                if !c.is_zero() {
                    break c;
                }
            };
            let scaled = rep.q.scale(&c);
            let f = SymBoolFn::threshold(n, t).unwrap();
            let pairing = scaled.pair_with(&f).unwrap();
            let ratio = (!pairing.is_zero()).then(|| scaled.l1_norm() / pairing.abs());
            ensure!(
                ratio == rep.ratio_best,
                "n={n} t={t}: ratio changes under scaling by {c}"
            );
            undefined += usize::from(rep.ratio_best.is_none());
            count += 1;
        }
    }
    let out = cli::cmd_threshold("1..30", None, Format::Csv, None);
    ensure!(out.code == 0, "threshold sweep exit {}", out.code);
    let lines: Vec<&str> = out.stdout.lines().collect();
    ensure!(lines.first() == Some(&CSV_HEADER), "bad CSV header");
    ensure!(
        lines.len() == count + 1,
        "expected {count} rows, got {}",
        lines.len() - 1
    );
    let columns = CSV_HEADER.split(',').count();
    ensure!(
        lines.iter().all(|l| l.split(',').count() == columns),
        "ragged CSV row"
    );
    let text = cli::cmd_threshold("1..30", None, Format::Text, None);
    ensure!(
        text.code == 0 && text.stdout.matches("verdict:").count() == count,
        "text report"
    );
    let took = within(start, Duration::from_secs(30), "threshold sweep")?;
    Ok(format!(
        "{count} (n, t) pairs, {undefined} with zero pairing, in {took:.2?}"
    ))
}

/// Variants of one document line with a single value changed.
fn perturbations(key: &str, value: &str) -> Vec<String> {
    let tokens: Vec<&str> = value.split(' ').collect();
    let mut out = Vec::new();
    for (i, tok) in tokens.iter().enumerate() {
        let bumped = if let Ok(v) = tok.parse::<u64>() {
            (v + 1).to_string()
        } else if let Ok(v) = tok.parse::<Rat>() {
            (v + r(1, 7)).to_string()
        } else {
            continue;
        };
        let mut t = tokens.clone();
        t[i] = &bumped;
        out.push(format!("{key}: {}", t.join(" ")));
    }
    out
}

fn c9_tamper() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut tried = 0;
    let mut by_key: BTreeMap<String, usize> = BTreeMap::new();
    for n in [2usize, 4, 9, 25] {
        let doc = make_certificate(n).unwrap().to_document();
        let text = doc.to_string();
        let path = dir.path().join(format!("cert{n}.txt"));
        std::fs::write(&path, &text).unwrap();
        ensure!(
            cli::cmd_verify(&path, None, BRUTE_FORCE_LIMIT).code == 0,
            "n={n}: pristine rejected"
        );

        let parsed: Document = text.parse().unwrap();
        for (idx, (key, value)) in parsed.entries().iter().enumerate() {
            if key == "kind" {
                continue;
            }
            for variant in perturbations(key, value) {
                let mut lines: Vec<String> = text.lines().map(str::to_owned).collect();
                // line 0 is the header
                lines[idx + 1] = variant.clone();
                let tampered = lines.join("\n") + "\n";
                let tpath = dir.path().join("tampered.txt");
                std::fs::write(&tpath, &tampered).unwrap();
                let code = verify_code(&tpath);
                ensure!(code == EXIT_REJECTED, "n={n}: {variant:?} gave exit {code}");
                *by_key.entry(key.clone()).or_default() += 1;
                tried += 1;
            }
        }
    }
    Ok(format!(
        "{tried} single-field perturbations over {} fields, all exit 1",
        by_key.len()
    ))
}

fn verify_code(path: &Path) -> i32 {
    cli::cmd_verify(path, None, BRUTE_FORCE_LIMIT).code
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 explicit certificate suite", c1_certificate_suite),
        ("2 hand-derived exact values", c2_hand_values),
        ("3 pure-high-degree triple equivalence", c3_phd_equivalence),
        (
            "4 strong duality and witness verification",
            c4_strong_duality,
        ),
        ("5 LP and certificate consistency", c5_lp_consistency),
        ("6 monotone error/degree trade-off", c6_monotone),
        ("7 symmetrization", c7_symmetrization),
        ("8 threshold explorer", c8_threshold),
        ("9 certificate tamper detection", c9_tamper),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
