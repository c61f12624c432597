//! Approximate degree of symmetric functions via exact linear programming.
//!
//! The primal finds the best degree-`d` uniform approximant on the weights
//! `0..=n`, with the polynomial written in the Newton basis
//! `P(k) = Σ_j c_j C(k, j)`:
//!
//! ```text
//! minimize ε  s.t.  ε + P(k) >= F(k),  ε - P(k) >= -F(k),  k = 0..=n
//! ```
//!
//! The row multipliers `u_k, v_k` of the optimal solution give the dual
//! witness `B(k) = (u_k - v_k) / C(n, k)`, which has `‖B‖₁ = 1`,
//! `B·F = ε*`, and vanishing moments up to order `d`.

use crate::document::Document;
use crate::error::{Error, Result};
use crate::numeric::{binomial_rat, binomial_row, Rat};
use crate::simplex::{exact_simplex, Direction, LpProblem, LpStatus, Relation, VarBound};
use crate::sympoly::{SinglePoly, SymBoolFn};

pub const WITNESS_KIND: &str = "dual-witness";

/// Largest `n` the CLI accepts for LP-based degree computations.
pub const LP_DESK_LIMIT: usize = 16;

/// A dual polynomial certifying `deg_ε(F) >= claimed_phd` for every
/// `ε < target_eps`. Its ratio equals exactly `1 / target_eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWitness {
    pub b: SinglePoly,
    pub claimed_phd: usize,
    pub target_eps: Rat,
    pub ratio: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinEps {
    pub degree: usize,
    pub epsilon_star: Rat,
    pub approximant: SinglePoly,
    /// `None` exactly when `epsilon_star` is zero.
    pub witness: Option<DualWitness>,
}

/// Primal LP with variables `[ε, c_0, …, c_d]`; rows come in pairs per weight.
pub fn build_primal(f: &SymBoolFn, d: usize) -> LpProblem {
    let n = f.n();
    let mut objective = vec![Rat::zero(); d + 2];
    objective[0] = Rat::one();
    let mut bounds = vec![VarBound::Free; d + 2];
    bounds[0] = VarBound::NonNegative;
    let mut lp = LpProblem::new(Direction::Minimize, objective, bounds);
    for k in 0..=n {
        let basis: Vec<Rat> = (0..=d).map(|j| binomial_rat(k, j)).collect();
        let fk = Rat::from(f.value(k) as i64);

        let mut upper = vec![Rat::one()];
        upper.extend(basis.iter().cloned());
        lp.add_constraint(upper, Relation::Ge, fk.clone());

        let mut lower = vec![Rat::one()];
        lower.extend(basis.iter().map(|b| -b));
        lp.add_constraint(lower, Relation::Ge, -fk);
    }
    lp
}

fn check_degree(f: &SymBoolFn, d: usize) -> Result<()> {
    if d > f.n() {
        return Err(Error::Domain(format!("degree {d} exceeds n = {}", f.n())));
    }
    Ok(())
}

/// Best uniform error of a degree-`d` polynomial, the approximant
/// attaining it, and the dual witness read off the row multipliers.
pub fn min_eps_for_degree(f: &SymBoolFn, d: usize) -> Result<MinEps> {
    check_degree(f, d)?;
    let n = f.n();
    let lp = build_primal(f, d);
    let out = exact_simplex(&lp)?;
    if out.status != LpStatus::Optimal {
        return Err(Error::CheckFailed(format!(
            "approximation LP ended {:?}",
            out.status
        )));
    }
    let epsilon_star = out.value.clone();
    let approximant = SinglePoly::from_fn(n, |k| SinglePoly::eval_newton(&out.primal[1..], k));

    let witness = if epsilon_star.is_zero() {
        None
    } else {
        let weights: Vec<Rat> = (0..=n)
            .map(|k| &out.dual[2 * k] - &out.dual[2 * k + 1])
            .collect();
        let total: Rat = weights.iter().map(Rat::abs).sum();
        let row = binomial_row(n);
        let b = SinglePoly::from_fn(n, |k| &weights[k] / &(Rat::from(row[k].clone()) * &total));
        let pairing = b.pair_with(f)?;
        let ratio = b.l1_norm() / &pairing;
        Some(DualWitness {
            b,
            claimed_phd: d + 1,
            target_eps: epsilon_star.clone(),
            ratio,
        })
    };
    Ok(MinEps {
        degree: d,
        epsilon_star,
        approximant,
        witness,
    })
}

/// Maximum of `B·F` over `‖B‖₁ <= 1` with moments `0..=d` vanishing,
/// solved as its own LP in the power basis. Returns the value and a
/// maximizing `B`.
pub fn max_dual_correlation(f: &SymBoolFn, d: usize) -> Result<(Rat, SinglePoly)> {
    check_degree(f, d)?;
    let n = f.n();
    // variables: u_0..u_n, v_0..v_n, all >= 0; w_k = u_k - v_k = C(n,k) B(k)
    let nv = 2 * (n + 1);
    let objective: Vec<Rat> = (0..nv)
        .map(|i| {
            let k = i % (n + 1);
            let fk = Rat::from(f.value(k) as i64);
            if i <= n {
                fk
            } else {
                -fk
            }
        })
        .collect();
    let mut lp = LpProblem::new(
        Direction::Maximize,
        objective,
        vec![VarBound::NonNegative; nv],
    );
    lp.add_constraint(vec![Rat::one(); nv], Relation::Le, Rat::one());
    for j in 0..=d as u32 {
        let coeffs = (0..nv)
            .map(|i| {
                let k = (i % (n + 1)) as i64;
                let p = Rat::from(k.pow(j));
                if i <= n {
                    p
                } else {
                    -p
                }
            })
            .collect();
        lp.add_constraint(coeffs, Relation::Eq, Rat::zero());
    }
    let out = exact_simplex(&lp)?;
    if out.status != LpStatus::Optimal {
        return Err(Error::CheckFailed(format!(
            "dual LP ended {:?}",
            out.status
        )));
    }
    let row = binomial_row(n);
    let b = SinglePoly::from_fn(n, |k| {
        (&out.primal[k] - &out.primal[k + n + 1]) / Rat::from(row[k].clone())
    });
    Ok((out.value, b))
}

/// Smallest `d` with `ε*(d) <= eps`, by bisection on the nonincreasing `ε*`.
pub fn approx_degree(f: &SymBoolFn, eps: &Rat) -> Result<usize> {
    if eps.is_negative() || *eps >= Rat::one() {
        return Err(Error::Domain(format!(
            "eps must satisfy 0 <= eps < 1, got {eps}"
        )));
    }
    let (mut lo, mut hi) = (0usize, f.n());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if min_eps_for_degree(f, mid)?.epsilon_star <= *eps {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub accepted: bool,
    pub phd: usize,
    pub pairing: Rat,
    /// `‖B‖₁ / (B·F)`, undefined when `B·F = 0`.
    pub ratio: Option<Rat>,
}

/// Accepts iff `phd(B) >= d`, `B·F > 0`, and `‖B‖₁ / (B·F) < 1/eps`;
/// acceptance proves `deg_eps(F) >= d`.
pub fn verify_certificate(f: &SymBoolFn, b: &SinglePoly, eps: &Rat, d: usize) -> Result<Verdict> {
    if b.n() != f.n() {
        return Err(Error::DimensionMismatch {
            expected: f.n(),
            actual: b.n(),
        });
    }
    if eps.is_negative() {
        return Err(Error::Domain(format!("eps must be nonnegative, got {eps}")));
    }
    let phd = b.pure_high_degree()?;
    let pairing = b.pair_with(f)?;
    let ratio = (!pairing.is_zero()).then(|| b.l1_norm() / &pairing);
    // ratio < 1/eps  <=>  ratio * eps < 1 for positive ratio
    let ratio_ok = ratio
        .as_ref()
        .is_some_and(|r| r.is_positive() && r * eps < Rat::one());
    Ok(Verdict {
        accepted: phd >= d && pairing.is_positive() && ratio_ok,
        phd,
        pairing,
        ratio,
    })
}

/// Document carrying a witness together with its verification verdict.
pub fn witness_document(f: &SymBoolFn, b: &SinglePoly, eps: &Rat, d: usize) -> Result<Document> {
    let verdict = verify_certificate(f, b, eps, d)?;
    let mut doc = Document::new(WITNESS_KIND);
    doc.push("function", f.name());
    doc.push("n", f.n());
    doc.push(
        "table",
        f.values()
            .iter()
            .map(|v| format!("{v:+}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    doc.push("d", d);
    doc.push("eps", eps);
    for (k, v) in b.values().iter().enumerate() {
        doc.push("b", format!("{k} {v}"));
    }
    doc.push("phd", verdict.phd);
    doc.push("pairing", &verdict.pairing);
    doc.push(
        "ratio",
        verdict
            .ratio
            .as_ref()
            .map_or("undefined".to_string(), Rat::to_string),
    );
    doc.push(
        "verdict",
        if verdict.accepted {
            "accepted"
        } else {
            "rejected"
        },
    );
    Ok(doc)
}

/// Parsed witness document: the function table and `B`, re-verified.
pub fn verify_witness_document(doc: &Document, eps: Option<&Rat>) -> Result<(Verdict, usize)> {
    if doc.kind()? != WITNESS_KIND {
        return Err(Error::Parse(format!("expected kind {WITNESS_KIND:?}")));
    }
    let n: usize = doc.parse_field("n")?;
    let table: Vec<i8> = doc.list("table")?;
    let f = SymBoolFn::from_values(doc.get("function")?, table)?;
    if f.n() != n {
        return Err(Error::Parse("table length does not match n".into()));
    }
    let d: usize = doc.parse_field("d")?;
    let eps = match eps {
        Some(e) => e.clone(),
        None => doc.rat("eps")?,
    };
    let mut values = vec![None; n + 1];
    for line in doc.get_all("b") {
        let (k, v) = line
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("bad b entry {line:?}")))?;
        let k: usize = k
            .parse()
            .map_err(|_| Error::Parse(format!("bad b index {k:?}")))?;
        if k > n || values[k].is_some() {
            return Err(Error::Parse(format!(
                "b index {k} out of range or repeated"
            )));
        }
        values[k] = Some(v.trim().parse::<Rat>()?);
    }
    let values = values
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Parse("b values missing".into()))?;
    let b = SinglePoly::new(values)?;
    Ok((verify_certificate(&f, &b, &eps, d)?, d))
}
