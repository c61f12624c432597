//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting uses Bland's smallest-index rule by default, so the method
//! terminates on degenerate problems. The solver reports both the primal
//! point and the row multipliers, which satisfy
//! `objective = Σ rhs_i · dual_i` at an optimum.

use crate::error::{Error, Result};
use crate::numeric::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    Free,
    NonNegative,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub direction: Direction,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<VarBound>,
}

impl LpProblem {
    pub fn new(direction: Direction, objective: Vec<Rat>, bounds: Vec<VarBound>) -> Self {
        LpProblem {
            direction,
            objective,
            constraints: Vec::new(),
            bounds,
        }
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rat>, relation: Relation, rhs: Rat) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn validate(&self) -> Result<()> {
        let nv = self.num_vars();
        if self.bounds.len() != nv {
            return Err(Error::MalformedLp(format!(
                "{} bounds for {} variables",
                self.bounds.len(),
                nv
            )));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != nv {
                return Err(Error::MalformedLp(format!(
                    "row {i} has {} coefficients, expected {nv}",
                    c.coeffs.len()
                )));
            }
        }
        Ok(())
    }

    /// Value of the objective at `x`.
    pub fn objective_at(&self, x: &[Rat]) -> Rat {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// True if `x` satisfies every row and bound.
    pub fn is_feasible(&self, x: &[Rat]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = self
            .bounds
            .iter()
            .zip(x)
            .all(|(b, v)| *b == VarBound::Free || !v.is_negative());
        bounds_ok
            && self.constraints.iter().all(|c| {
                let lhs: Rat = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
                match c.relation {
                    Relation::Le => lhs <= c.rhs,
                    Relation::Eq => lhs == c.rhs,
                    Relation::Ge => lhs >= c.rhs,
                }
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    /// Only reachable with a pivot cap, see [`SimplexOptions`].
    PivotLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOutcome {
    pub status: LpStatus,
    /// Optimal objective value; zero unless `status` is `Optimal`.
    pub value: Rat,
    pub primal: Vec<Rat>,
    /// One multiplier per constraint row, in the original row orientation.
    pub dual: Vec<Rat>,
    pub pivots: usize,
}

impl LpOutcome {
    fn without_solution(status: LpStatus, pivots: usize) -> Self {
        LpOutcome {
            status,
            value: Rat::zero(),
            primal: Vec::new(),
            dual: Vec::new(),
            pivots,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest-index entering and leaving variable; never cycles.
    Bland,
    /// Most negative reduced cost, ties and ratio ties to the lowest index.
    /// Can cycle on degenerate problems.
    Dantzig,
}

#[derive(Clone, Copy, Debug)]
pub struct SimplexOptions {
    pub rule: PivotRule,
    pub max_pivots: Option<usize>,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            rule: PivotRule::Bland,
            max_pivots: None,
        }
    }
}

pub fn exact_simplex(problem: &LpProblem) -> Result<LpOutcome> {
    solve_with(problem, SimplexOptions::default())
}

/// Maps a column of the standard form back to an original variable.
#[derive(Clone, Copy, Debug)]
enum ColumnKind {
    Positive(usize),
    Negative(usize),
    Slack,
    Artificial,
}

struct Tableau {
    /// `rows[i]` has one entry per column plus the right-hand side last.
    rows: Vec<Vec<Rat>>,
    /// Reduced costs, with minus the current objective in the last slot.
    cost_row: Vec<Rat>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    pivots: usize,
}

enum PhaseEnd {
    Optimal,
    Unbounded,
    PivotLimit,
}

impl Tableau {
    fn ncols(&self) -> usize {
        self.kinds.len()
    }

    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.ncols()]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        }
        if !self.cost_row[c].is_zero() {
            let factor = self.cost_row[c].clone();
            for (v, p) in self.cost_row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Rebuilds the reduced-cost row for column costs `costs`.
    fn price(&mut self, costs: &[Rat]) {
        let n = self.ncols();
        let mut row: Vec<Rat> = costs.to_vec();
        row.push(Rat::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=n {
                let t = &self.rows[i][j];
                if !t.is_zero() {
                    row[j] -= &(cb * t);
                }
            }
        }
        self.cost_row = row;
    }

    fn choose_entering(&self, allowed: &dyn Fn(usize) -> bool, rule: PivotRule) -> Option<usize> {
        let candidates =
            (0..self.ncols()).filter(|&j| allowed(j) && self.cost_row[j].is_negative());
        match rule {
            PivotRule::Bland => candidates.min(),
            PivotRule::Dantzig => candidates.fold(None, |best: Option<usize>, j| match best {
                Some(b) if self.cost_row[b] <= self.cost_row[j] => Some(b),
                _ => Some(j),
            }),
        }
    }

    fn choose_leaving(&self, c: usize, rule: PivotRule) -> Option<usize> {
        let mut best: Option<(usize, Rat)> = None;
        for i in 0..self.rows.len() {
            let a = &self.rows[i][c];
            if !a.is_positive() {
                continue;
            }
            let ratio = self.rhs(i) / a;
            best = match best {
                None => Some((i, ratio)),
                Some((bi, br)) => {
                    let better = match ratio.cmp(&br) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Greater => false,
                        std::cmp::Ordering::Equal => match rule {
                            PivotRule::Bland => self.basis[i] < self.basis[bi],
                            PivotRule::Dantzig => false,
                        },
                    };
                    if better {
                        Some((i, ratio))
                    } else {
                        Some((bi, br))
                    }
                }
            };
        }
        best.map(|(i, _)| i)
    }

    fn run(&mut self, allowed: &dyn Fn(usize) -> bool, opts: &SimplexOptions) -> PhaseEnd {
        loop {
            if opts.max_pivots.is_some_and(|cap| self.pivots >= cap) {
                return PhaseEnd::PivotLimit;
            }
            let Some(c) = self.choose_entering(allowed, opts.rule) else {
                return PhaseEnd::Optimal;
            };
            let Some(r) = self.choose_leaving(c, opts.rule) else {
                return PhaseEnd::Unbounded;
            };
            self.pivot(r, c);
        }
    }
}

pub fn solve_with(problem: &LpProblem, opts: SimplexOptions) -> Result<LpOutcome> {
    problem.validate()?;
    let nv = problem.num_vars();
    let m = problem.constraints.len();

    let mut kinds = Vec::new();
    let mut var_cols: Vec<(usize, Option<usize>)> = Vec::with_capacity(nv);
    for (j, b) in problem.bounds.iter().enumerate() {
        let pos = kinds.len();
        kinds.push(ColumnKind::Positive(j));
        let neg = if *b == VarBound::Free {
            kinds.push(ColumnKind::Negative(j));
            Some(pos + 1)
        } else {
            None
        };
        var_cols.push((pos, neg));
    }
    let mut slack_col: Vec<Option<usize>> = Vec::with_capacity(m);
    for c in &problem.constraints {
        if c.relation == Relation::Eq {
            slack_col.push(None);
        } else {
            slack_col.push(Some(kinds.len()));
            kinds.push(ColumnKind::Slack);
        }
    }

    // Rows with negative rhs are negated so that the rhs is nonnegative.
    let negated: Vec<bool> = problem
        .constraints
        .iter()
        .map(|c| c.rhs.is_negative())
        .collect();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut init_basis: Vec<Option<usize>> = Vec::with_capacity(m);
    for (i, c) in problem.constraints.iter().enumerate() {
        let sign = if negated[i] { -Rat::one() } else { Rat::one() };
        let mut row = vec![Rat::zero(); kinds.len()];
        for (j, a) in c.coeffs.iter().enumerate() {
            let (pos, neg) = var_cols[j];
            row[pos] = a * &sign;
            if let Some(neg) = neg {
                row[neg] = -(a * &sign);
            }
        }
        let mut unit_slack = None;
        if let Some(s) = slack_col[i] {
            let coef = match c.relation {
                Relation::Le => sign.clone(),
                _ => -sign.clone(),
            };
            if coef == Rat::one() {
                unit_slack = Some(s);
            }
            row[s] = coef;
        }
        row.push(&c.rhs * &sign);
        rows.push(row);
        init_basis.push(unit_slack);
    }

    // Artificial columns for rows without a ready unit column.
    let first_artificial = kinds.len();
    let artificial_rows: Vec<usize> = (0..m).filter(|&i| init_basis[i].is_none()).collect();
    for &i in &artificial_rows {
        let col = kinds.len();
        kinds.push(ColumnKind::Artificial);
        init_basis[i] = Some(col);
    }
    let total = kinds.len();
    for (i, row) in rows.iter_mut().enumerate() {
        let rhs = row.pop().expect("rhs present");
        row.resize(total, Rat::zero());
        if let Some(col) = init_basis[i] {
            if col >= first_artificial {
                row[col] = Rat::one();
            }
        }
        row.push(rhs);
    }
    let init_basis: Vec<usize> = init_basis
        .into_iter()
        .map(|c| c.expect("basis column"))
        .collect();

    let mut tab = Tableau {
        rows,
        cost_row: Vec::new(),
        basis: init_basis.clone(),
        kinds,
        pivots: 0,
    };
    let is_artificial = |j: usize| j >= first_artificial;

    // Phase 1: minimize the sum of artificials.
    if !artificial_rows.is_empty() {
        let costs: Vec<Rat> = (0..total)
            .map(|j| {
                if is_artificial(j) {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        tab.price(&costs);
        match tab.run(&|_| true, &opts) {
            PhaseEnd::Optimal => {}
            PhaseEnd::PivotLimit => {
                return Ok(LpOutcome::without_solution(
                    LpStatus::PivotLimit,
                    tab.pivots,
                ))
            }
            PhaseEnd::Unbounded => unreachable!("phase one objective is bounded below by zero"),
        }
        if !tab.cost_row[total].is_zero() {
            return Ok(LpOutcome::without_solution(
                LpStatus::Infeasible,
                tab.pivots,
            ));
        }
        // Drive zero-level artificials out of the basis where possible.
        // Rows where that fails are redundant and keep a zero artificial.
        for i in 0..tab.rows.len() {
            if !is_artificial(tab.basis[i]) {
                continue;
            }
            if let Some(j) = (0..first_artificial).find(|&j| !tab.rows[i][j].is_zero()) {
                tab.pivot(i, j);
            }
        }
    }

    // Phase 2.
    let sign = match problem.direction {
        Direction::Minimize => Rat::one(),
        Direction::Maximize => -Rat::one(),
    };
    let costs: Vec<Rat> = tab
        .kinds
        .iter()
        .map(|k| match *k {
            ColumnKind::Positive(j) => &problem.objective[j] * &sign,
            ColumnKind::Negative(j) => -(&problem.objective[j] * &sign),
            ColumnKind::Slack | ColumnKind::Artificial => Rat::zero(),
        })
        .collect();
    tab.price(&costs);
    match tab.run(&|j| !is_artificial(j), &opts) {
        PhaseEnd::Optimal => {}
        PhaseEnd::Unbounded => {
            return Ok(LpOutcome::without_solution(LpStatus::Unbounded, tab.pivots))
        }
        PhaseEnd::PivotLimit => {
            return Ok(LpOutcome::without_solution(
                LpStatus::PivotLimit,
                tab.pivots,
            ))
        }
    }

    let mut primal = vec![Rat::zero(); nv];
    for (i, &b) in tab.basis.iter().enumerate() {
        match tab.kinds[b] {
            ColumnKind::Positive(j) => primal[j] += tab.rhs(i),
            ColumnKind::Negative(j) => primal[j] -= tab.rhs(i),
            _ => {}
        }
    }
    // Column of the initial unit basis holds B^{-1} e_i, so its reduced
    // cost gives the multiplier: y_i = c_init - r_init.
    let dual: Vec<Rat> = (0..m)
        .map(|i| {
            let col = init_basis[i];
            let y = &costs[col] - &tab.cost_row[col];
            let y = if negated[i] { -y } else { y };
            y * &sign
        })
        .collect();
    let value = problem.objective_at(&primal);
    Ok(LpOutcome {
        status: LpStatus::Optimal,
        value,
        primal,
        dual,
        pivots: tab.pivots,
    })
}
