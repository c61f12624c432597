//! Candidate dual polynomial for the threshold function `THR_t`.
//!
//! `T` is the set of differences `k² - ℓ²` with `0 <= k <= ⌊√(n-t)⌋` and
//! `0 <= ℓ <= ⌊√t⌋`, and
//!
//! ```text
//! p(x) = Π_{i ∈ {0..n} \ T} (x - t - i),   q(k) = (-1)^k p(k).
//! ```
//!
//! Whether `q` certifies the known `Θ(√(t(n-t)))` bound is open; this module
//! only measures its pure high degree and ratio and never asserts a bound.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numeric::{isqrt, Rat};
use crate::sympoly::{SinglePoly, SymBoolFn};

pub const CSV_HEADER: &str = "n,t,t_clipped,phd,ratio_best";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSet {
    /// Every `k² - ℓ²`, possibly negative or above `n`.
    pub raw: BTreeSet<i64>,
    /// `raw ∩ {0..n}`.
    pub clipped: Vec<usize>,
}

fn check_range(n: usize, t: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("threshold candidate needs n >= 1".into()));
    }
    if t > n {
        return Err(Error::Domain(format!(
            "threshold t = {t} must satisfy 0 <= t <= n = {n}"
        )));
    }
    Ok(())
}

pub fn build_t(n: usize, t: usize) -> Result<DifferenceSet> {
    check_range(n, t)?;
    let kmax = isqrt((n - t) as u64) as i64;
    let lmax = isqrt(t as u64) as i64;
    let raw: BTreeSet<i64> = (0..=kmax)
        .flat_map(|k| (0..=lmax).map(move |l| k * k - l * l))
        .collect();
    let clipped = raw
        .iter()
        .filter(|&&v| v >= 0 && v <= n as i64)
        .map(|&v| v as usize)
        .collect();
    Ok(DifferenceSet { raw, clipped })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub n: usize,
    pub t: usize,
    pub set: DifferenceSet,
    pub p: SinglePoly,
    pub q: SinglePoly,
    pub phd: usize,
    /// `q · THR_t`
    pub pairing: Rat,
    /// `‖q‖₁ / |q · THR_t|` for the orientation that makes the pairing
    /// positive; `None` when the pairing is zero.
    pub ratio_best: Option<Rat>,
    /// `+1` or `-1`: the sign applied to `q` to reach `ratio_best`.
    pub orientation: i8,
    /// `T` has no counterpart of the extra point 2 used for OR; set for `t = 0`,
    /// where `T` is exactly the squares.
    pub squares_only: bool,
}

pub fn build_candidate(n: usize, t: usize) -> Result<ThresholdReport> {
    let set = build_t(n, t)?;
    let mut roots = Vec::with_capacity(n + 1);
    let mut s = set.clipped.iter().peekable();
    for i in 0..=n {
        if s.peek() == Some(&&i) {
            s.next();
        } else {
            roots.push((t + i) as i64);
        }
    }
    let p = SinglePoly::from_fn(n, |k| {
        let prod: BigInt = roots
            .iter()
            .fold(BigInt::one(), |acc, &r| acc * (k as i64 - r));
        Rat::from(prod)
    });
    let q = p.parity_multiply();
    let phd = q.pure_high_degree()?;
    let pairing = q.pair_with(&SymBoolFn::threshold(n, t)?)?;
    let (ratio_best, orientation) = if pairing.is_zero() {
        (None, 0)
    } else {
        let orientation = if pairing.is_positive() { 1 } else { -1 };
        (Some(q.l1_norm() / pairing.abs()), orientation)
    };
    Ok(ThresholdReport {
        n,
        t,
        squares_only: t == 0,
        set,
        p,
        q,
        phd,
        pairing,
        ratio_best,
        orientation,
    })
}

impl ThresholdReport {
    pub fn ratio_string(&self) -> String {
        self.ratio_best
            .as_ref()
            .map_or_else(|| "undefined".to_string(), Rat::to_string)
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n,
            self.t,
            self.set.clipped.len(),
            self.phd,
            self.ratio_string()
        )
    }

    pub fn render_text(&self) -> String {
        let list = |it: &mut dyn Iterator<Item = String>| it.collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        let _ = writeln!(s, "threshold candidate n = {} t = {}", self.n, self.t);
        let _ = writeln!(
            s,
            "T raw: {}",
            list(&mut self.set.raw.iter().map(i64::to_string))
        );
        let _ = writeln!(
            s,
            "T clipped: {}",
            list(&mut self.set.clipped.iter().map(usize::to_string))
        );
        let _ = writeln!(s, "|T clipped|: {}", self.set.clipped.len());
        let _ = writeln!(s, "degree p: {}", self.p.interpolate_degree());
        let _ = writeln!(s, "phd: {}", self.phd);
        let _ = writeln!(s, "pairing q.THR: {}", self.pairing);
        let _ = writeln!(s, "orientation: {:+}", self.orientation);
        let _ = writeln!(s, "ratio_best: {}", self.ratio_string());
        if self.squares_only {
            let _ = writeln!(
                s,
                "note: t = 0 gives the squares only, without the extra point 2 of the OR support"
            );
        }
        let verdict = match &self.ratio_best {
            Some(r) => format!(
                "observational: would certify deg_eps >= {} for eps < {}",
                self.phd,
                r.recip()
            ),
            None => "observational: pairing is zero, no certificate in either orientation".into(),
        };
        let _ = writeln!(s, "verdict: {verdict}");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_examples() {
        let s = build_t(4, 1).unwrap();
        assert_eq!(s.raw.iter().copied().collect::<Vec<_>>(), vec![-1, 0, 1]);
        assert_eq!(s.clipped, vec![0, 1]);

        let s = build_t(30, 0).unwrap();
        assert_eq!(s.clipped, vec![0, 1, 4, 9, 16, 25]);

        let s = build_t(9, 9).unwrap();
        assert_eq!(
            s.raw.iter().copied().collect::<Vec<_>>(),
            vec![-9, -4, -1, 0]
        );
        assert_eq!(s.clipped, vec![0]);

        assert!(build_t(9, 10).is_err());
    }

    #[test]
    fn candidate_4_1() {
        let rep = build_candidate(4, 1).unwrap();
        // p(x) = (x-3)(x-4)(x-5)
        let expected = SinglePoly::from_fn(4, |k| {
            let k = k as i64;
            Rat::from((k - 3) * (k - 4) * (k - 5))
        });
        assert_eq!(rep.p, expected);
        assert_eq!(rep.phd, 1);
        assert_eq!(rep.set.clipped.len(), 2);
        assert!(!rep.squares_only);
    }

    #[test]
    fn squares_only_flag() {
        let rep = build_candidate(9, 0).unwrap();
        assert!(rep.squares_only);
        assert_eq!(rep.set.clipped, vec![0, 1, 4, 9]);
        assert!(rep.render_text().contains("without the extra point 2"));
    }

    #[test]
    fn degree_and_phd_by_root_count() {
        for n in 1..=12 {
            for t in 0..=n {
                let rep = build_candidate(n, t).unwrap();
                let size = rep.set.clipped.len();
                assert_eq!(rep.p.interpolate_degree(), (n + 1 - size) as isize);
                assert_eq!(rep.phd, size - 1);
                assert_eq!(rep.q, rep.p.parity_multiply());
            }
        }
    }

    #[test]
    fn or_side_by_side() {
        for n in [4usize, 9, 16] {
            let rep = build_candidate(n, 1).unwrap();
            let cert = crate::dual_or::make_certificate(n).unwrap();
            // both pipelines run on the same n; relationship is only observed
            assert!(rep.ratio_best.is_some() || rep.pairing.is_zero());
            assert!(cert.ratio < crate::dual_or::ratio_bound());
        }
    }

    #[test]
    fn csv_row_shape() {
        let rep = build_candidate(4, 1).unwrap();
        let row = rep.csv_row();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("4,1,2,1,"));
    }
}
