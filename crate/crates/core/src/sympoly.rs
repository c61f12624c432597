//! Symmetric Boolean functions and polynomials on the Hamming-weight line.
//!
//! A symmetric multilinear polynomial on `{±1}^n` is stored as its value
//! table `V(0..=n)` indexed by Hamming weight. Degree comes from forward
//! differences; pure high degree from the parity-multiplied degree, with
//! binomially weighted moments as an independent characterization.
//!
//! [`MultilinearPoly`] is the dense Fourier form over all `2^n` subsets and
//! exists as a brute-force cross-check for small `n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::numeric::{binomial_row, Rat};

/// Largest `n` the brute-force Fourier routines accept by default.
pub const BRUTE_FORCE_LIMIT: usize = 14;

/// Symmetric Boolean function as its table `F(0..=n)` with entries `±1`.
///
/// `+1` encodes false and `-1` encodes true.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymBoolFn {
    name: String,
    values: Vec<i8>,
}

impl SymBoolFn {
    pub fn from_values(name: impl Into<String>, values: Vec<i8>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Domain("a symmetric function needs n >= 1".into()));
        }
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::Domain("table entries must be +1 or -1".into()));
        }
        Ok(SymBoolFn {
            name: name.into(),
            values,
        })
    }

    /// `OR(0) = 1`, `OR(k) = -1` for `k >= 1`.
    pub fn or(n: usize) -> Result<Self> {
        Self::threshold(n, 1).map(|f| f.renamed("or"))
    }

    pub fn parity(n: usize) -> Result<Self> {
        let values = (0..=n).map(|k| if k % 2 == 0 { 1 } else { -1 }).collect();
        Self::from_values("parity", values)
    }

    pub fn constant(n: usize) -> Result<Self> {
        Self::from_values("constant", vec![1; n + 1])
    }

    /// `THR_t(k) = +1` for `k < t` and `-1` for `k >= t`; `THR_1` is OR.
    pub fn threshold(n: usize, t: usize) -> Result<Self> {
        if t > n {
            return Err(Error::Domain(format!("threshold t = {t} exceeds n = {n}")));
        }
        let values = (0..=n).map(|k| if k < t { 1 } else { -1 }).collect();
        Self::from_values(format!("threshold-{t}"), values)
    }

    /// Parses `or`, `parity`, `constant`, or `threshold-<t>`.
    pub fn by_name(name: &str, n: usize) -> Result<Self> {
        match name {
            "or" => Self::or(n),
            "parity" => Self::parity(n),
            "constant" => Self::constant(n),
            other => match other.strip_prefix("threshold-") {
                Some(t) => {
                    let t = t
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad threshold in {other:?}")))?;
                    Self::threshold(n, t)
                }
                None => Err(Error::Parse(format!("unknown function {other:?}"))),
            },
        }
    }

    fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn value(&self, k: usize) -> i8 {
        self.values[k]
    }

    /// True if the table takes both `+1` and `-1`.
    pub fn is_balanced_range(&self) -> bool {
        self.values.contains(&1) && self.values.contains(&-1)
    }

    pub fn to_poly(&self) -> SinglePoly {
        SinglePoly {
            values: self.values.iter().map(|&v| Rat::from(v as i64)).collect(),
        }
    }
}

/// Real-valued symmetric polynomial as its exact table `V(0..=n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SinglePoly {
    values: Vec<Rat>,
}

impl fmt::Debug for SinglePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.values.iter()).finish()
    }
}

impl SinglePoly {
    /// Builds from a table of `n + 1` values, `n >= 1`.
    pub fn new(values: Vec<Rat>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Domain("a value table needs n >= 1".into()));
        }
        Ok(SinglePoly { values })
    }

    pub fn zero(n: usize) -> Self {
        SinglePoly {
            values: vec![Rat::zero(); n + 1],
        }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        SinglePoly {
            values: vec![c; n + 1],
        }
    }

    /// Tabulates `f(k)` for `k = 0..=n`.
    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Rat) -> Self {
        SinglePoly {
            values: (0..=n).map(f).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value(&self, k: usize) -> &Rat {
        &self.values[k]
    }

    pub fn into_values(self) -> Vec<Rat> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> SinglePoly {
        SinglePoly {
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Newton coefficients `Δ^j V(0)`, so that `V(k) = Σ_j Δ^j V(0) · C(k, j)`.
    pub fn forward_differences(&self) -> Vec<Rat> {
        // Work on integers over a common denominator; no gcd per step.
        let denom = self
            .values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut work: Vec<BigInt> = self
            .values
            .iter()
            .map(|v| v.numer() * (&denom / v.denom()))
            .collect();
        let mut out = Vec::with_capacity(work.len());
        while !work.is_empty() {
            out.push(Rat::new(work[0].clone(), denom.clone()));
            for i in 0..work.len() - 1 {
                let next = std::mem::take(&mut work[i + 1]);
                work[i] = &next - &work[i];
                work[i + 1] = next;
            }
            work.pop();
        }
        out
    }

    /// Evaluates the Newton form at an integer point.
    pub fn eval_newton(coeffs: &[Rat], k: usize) -> Rat {
        // C(k, j) built incrementally; it vanishes for j > k
        let mut binom = Rat::one();
        let mut acc = Rat::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if j > k {
                break;
            }
            if j > 0 {
                binom = binom * Rat::from((k + 1 - j) as i64) / Rat::from(j as i64);
            }
            acc += c * &binom;
        }
        acc
    }

    /// Degree of the interpolating polynomial, `None` for the zero table.
    pub fn degree(&self) -> Option<usize> {
        self.forward_differences()
            .iter()
            .rposition(|c| !c.is_zero())
    }

    /// Degree with the zero table reported as `-1`.
    pub fn interpolate_degree(&self) -> isize {
        self.degree().map_or(-1, |d| d as isize)
    }

    /// `V'(k) = (-1)^k V(k)`.
    pub fn parity_multiply(&self) -> SinglePoly {
        SinglePoly {
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(k, v)| if k % 2 == 0 { v.clone() } else { -v })
                .collect(),
        }
    }

    /// Pure high degree, defined as `n - deg(parity · P)`.
    pub fn pure_high_degree(&self) -> Result<usize> {
        let d = self
            .parity_multiply()
            .degree()
            .ok_or(Error::ZeroPolynomial)?;
        Ok(self.n() - d)
    }

    /// Binomial weights times values: `C(n, i) · V(i)`.
    fn weighted(&self) -> Vec<Rat> {
        binomial_row(self.n())
            .into_iter()
            .zip(&self.values)
            .map(|(c, v)| Rat::from(c) * v)
            .collect()
    }

    /// The `j`-th weighted moment `Σ_i C(n, i) V(i) i^j`.
    pub fn moment(&self, j: u32) -> Rat {
        self.weighted()
            .iter()
            .enumerate()
            .map(|(i, w)| w * Rat::from((i as i64).pow(j)))
            .sum()
    }

    /// True iff moments `0..d` all vanish.
    pub fn moments_vanish(&self, d: usize) -> bool {
        let weighted = self.weighted();
        let mut powers: Vec<Rat> = vec![Rat::one(); weighted.len()];
        for _ in 0..d {
            let m: Rat = weighted.iter().zip(&powers).map(|(w, p)| w * p).sum();
            if !m.is_zero() {
                return false;
            }
            for (i, p) in powers.iter_mut().enumerate() {
                *p *= &Rat::from(i as i64);
            }
        }
        true
    }

    /// Largest `d` with `moments_vanish(d)`; agrees with [`Self::pure_high_degree`].
    pub fn pure_high_degree_by_moments(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let weighted = self.weighted();
        let mut powers: Vec<Rat> = vec![Rat::one(); weighted.len()];
        for d in 0..=self.n() {
            let m: Rat = weighted.iter().zip(&powers).map(|(w, p)| w * p).sum();
            if !m.is_zero() {
                return Ok(d);
            }
            for (i, p) in powers.iter_mut().enumerate() {
                *p *= &Rat::from(i as i64);
            }
        }
        // a nonzero table cannot be orthogonal to every polynomial of degree <= n
        unreachable!("nonzero table with all moments vanishing")
    }

    fn check_same_n(&self, other: &SinglePoly) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: other.n(),
            });
        }
        Ok(())
    }

    /// `P · Q = Σ C(n, i) P(i) Q(i)`.
    pub fn inner_product(&self, other: &SinglePoly) -> Result<Rat> {
        self.check_same_n(other)?;
        Ok(binomial_row(self.n())
            .into_iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(c, (p, q))| Rat::from(c) * p * q)
            .sum())
    }

    /// Inner product against a Boolean table.
    pub fn pair_with(&self, f: &SymBoolFn) -> Result<Rat> {
        self.inner_product(&f.to_poly())
    }

    /// `‖P‖₁ = Σ C(n, i) |P(i)|`.
    pub fn l1_norm(&self) -> Rat {
        binomial_row(self.n())
            .into_iter()
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| Rat::from(c) * v.abs())
            .sum()
    }

    /// Maximum of `|P(k) - F(k)|` over the weights.
    pub fn max_error(&self, f: &SymBoolFn) -> Result<Rat> {
        if self.n() != f.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                actual: f.n(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(f.values())
            .map(|(v, &b)| (v - Rat::from(b as i64)).abs())
            .max()
            .unwrap_or_else(Rat::zero))
    }

    /// Exact Fourier expansion over all `2^n` inputs, `n <= limit`.
    pub fn expand_multilinear(&self, limit: usize) -> Result<MultilinearPoly> {
        let n = self.n();
        if n > limit {
            return Err(Error::BruteForceLimit { n, limit });
        }
        let evals = (0..1usize << n)
            .map(|x| self.values[x.count_ones() as usize].clone())
            .collect();
        MultilinearPoly::from_evaluations(n, evals)
    }
}

/// Dense multilinear polynomial in the basis `χ_S(x) = Π_{i∈S} x_i`.
///
/// Coefficient `S` lives at index `mask(S)` with bit `i - 1` for variable
/// `i`. A point `x ∈ {±1}^n` is indexed the same way, bit set meaning
/// `x_i = -1`, so its Hamming weight is the popcount.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    n: usize,
    coeffs: Vec<Rat>,
}

impl fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (mask, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                m.entry(&subset_of(mask), c);
            }
        }
        m.finish()
    }
}

/// Variables `1..=n` present in `mask`.
pub fn subset_of(mask: usize) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

/// Bitmask for a subset of variables `1..=n`.
pub fn mask_of(subset: &[usize]) -> usize {
    subset.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

/// Unnormalized transform, done over integers scaled by the common denominator.
fn walsh_hadamard(values: &mut [Rat]) {
    let den = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    let mut h = 1;
    while h < ints.len() {
        for block in (0..ints.len()).step_by(2 * h) {
            for i in block..block + h {
                let b = std::mem::take(&mut ints[i + h]);
                ints[i + h] = &ints[i] - &b;
                ints[i] += b;
            }
        }
        h *= 2;
    }
    for (v, x) in values.iter_mut().zip(ints) {
        *v = Rat::new(x, den.clone());
    }
}

impl MultilinearPoly {
    pub fn zero(n: usize) -> Self {
        MultilinearPoly {
            n,
            coeffs: vec![Rat::zero(); 1 << n],
        }
    }

    /// Takes a dense coefficient vector of length `2^n`.
    pub fn from_coefficients(n: usize, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != 1 << n {
            return Err(Error::Domain(format!(
                "expected {} coefficients, got {}",
                1usize << n,
                coeffs.len()
            )));
        }
        Ok(MultilinearPoly { n, coeffs })
    }

    /// Sparse construction from `(subset, coefficient)` pairs.
    pub fn from_terms<'a>(
        n: usize,
        terms: impl IntoIterator<Item = (&'a [usize], Rat)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n);
        for (subset, c) in terms {
            if subset.iter().any(|&i| i == 0 || i > n) {
                return Err(Error::Domain(format!("subset {subset:?} outside 1..={n}")));
            }
            p.coeffs[mask_of(subset)] += c;
        }
        Ok(p)
    }

    /// Fourier transform `coeff(S) = 2^{-n} Σ_x f(x) χ_S(x)`.
    pub fn from_evaluations(n: usize, mut evals: Vec<Rat>) -> Result<Self> {
        if evals.len() != 1 << n {
            return Err(Error::Domain(format!(
                "expected {} evaluations, got {}",
                1usize << n,
                evals.len()
            )));
        }
        walsh_hadamard(&mut evals);
        let scale = Rat::new(1, 1i64 << n);
        for c in evals.iter_mut() {
            *c *= &scale;
        }
        Ok(MultilinearPoly { n, coeffs: evals })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coefficient(&self, subset: &[usize]) -> &Rat {
        &self.coeffs[mask_of(subset)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Values at every point, indexed by point mask.
    pub fn evaluations(&self) -> Vec<Rat> {
        let mut v = self.coeffs.clone();
        walsh_hadamard(&mut v);
        v
    }

    /// Evaluates at a point given as the mask of its `-1` coordinates.
    pub fn evaluate(&self, point: usize) -> Rat {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| {
                if (s & point).count_ones().is_multiple_of(2) {
                    c.clone()
                } else {
                    -c
                }
            })
            .sum()
    }

    /// `(min |S|, max |S|)` over the nonzero coefficients.
    pub fn fourier_level_range(&self) -> Result<(usize, usize)> {
        let levels = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, _)| s.count_ones() as usize);
        levels
            .fold(None, |acc: Option<(usize, usize)>, l| match acc {
                None => Some((l, l)),
                Some((lo, hi)) => Some((lo.min(l), hi.max(l))),
            })
            .ok_or(Error::ZeroPolynomial)
    }

    /// Averages coefficients within each level, which equals averaging
    /// over all permutations of the variables.
    pub fn symmetrize(&self, limit: usize) -> Result<MultilinearPoly> {
        if self.n > limit {
            return Err(Error::BruteForceLimit { n: self.n, limit });
        }
        let mut sums = vec![Rat::zero(); self.n + 1];
        for (s, c) in self.coeffs.iter().enumerate() {
            sums[s.count_ones() as usize] += c;
        }
        let averages: Vec<Rat> = sums
            .into_iter()
            .enumerate()
            .map(|(l, s)| s / crate::numeric::binomial_rat(self.n, l))
            .collect();
        let coeffs = (0..self.coeffs.len())
            .map(|s| averages[s.count_ones() as usize].clone())
            .collect();
        Ok(MultilinearPoly { n: self.n, coeffs })
    }

    pub fn is_symmetric(&self) -> bool {
        let mut level_value: Vec<Option<&Rat>> = vec![None; self.n + 1];
        self.coeffs.iter().enumerate().all(|(s, c)| {
            let slot = &mut level_value[s.count_ones() as usize];
            match slot {
                None => {
                    *slot = Some(c);
                    true
                }
                Some(v) => *v == c,
            }
        })
    }

    /// Value table on Hamming weights for a symmetric polynomial.
    pub fn to_single(&self) -> Result<SinglePoly> {
        if !self.is_symmetric() {
            return Err(Error::Domain("polynomial is not symmetric".into()));
        }
        let evals = self.evaluations();
        // weight-k representative: the lowest k bits set
        SinglePoly::new(
            (0..=self.n)
                .map(|k| evals[(1usize << k) - 1].clone())
                .collect(),
        )
    }

    /// `Σ_x |p(x)|`.
    pub fn l1_norm(&self) -> Rat {
        self.evaluations().iter().map(Rat::abs).sum()
    }

    /// `Σ_x p(x) q(x)`.
    pub fn inner_product(&self, other: &MultilinearPoly) -> Result<Rat> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: other.n,
            });
        }
        Ok(self
            .evaluations()
            .iter()
            .zip(other.evaluations())
            .map(|(a, b)| a * b)
            .sum())
    }

    /// `max_x |p(x) - f(|x|)|` against a symmetric Boolean function.
    pub fn max_error(&self, f: &SymBoolFn) -> Result<Rat> {
        if self.n != f.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: f.n(),
            });
        }
        Ok(self
            .evaluations()
            .into_iter()
            .enumerate()
            .map(|(x, v)| (v - Rat::from(f.value(x.count_ones() as usize) as i64)).abs())
            .max()
            .unwrap_or_else(Rat::zero))
    }
}

impl std::ops::Add for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn add(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        assert_eq!(self.n, rhs.n);
        MultilinearPoly {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl MultilinearPoly {
    pub fn scale(&self, c: &Rat) -> MultilinearPoly {
        MultilinearPoly {
            n: self.n,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }
}
