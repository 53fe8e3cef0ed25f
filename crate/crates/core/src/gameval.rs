//! Value of the zero-sum matrix game with payoff `A`.
//!
//! Convention: the maximizer picks the right-hand mixed strategy `x`, so
//! `v(A) = max_x min_i (A·x)_i`. Under this convention `v(A) > 0` exactly when
//! some `0 ≠ x ≥ 0` has `Ax > 0`, and `v(A) < 0` exactly when some `0 ≠ y ≥ 0`
//! has `yᵀA < 0`.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::lpcore::{solve_lp, strict_feasibility, LpOutcome, LpProblem, Relation, StrictSystem};
use crate::{Error, RatMatrix, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Positive,
    Zero,
    Negative,
}

impl Sign {
    pub fn of(v: &Rational) -> Sign {
        if v.is_positive() {
            Sign::Positive
        } else if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameValueReport {
    pub value: Rational,
    /// Maximizer's strategy: `min_i (A·x*)_i = value`.
    pub x_star: Vec<Rational>,
    /// Minimizer's strategy: `max_j (y*ᵀ·A)_j = value`.
    pub y_star: Vec<Rational>,
    pub sign: Sign,
}

/// Solves both players' programs exactly.
pub fn game_value(a: &RatMatrix) -> Result<GameValueReport> {
    let n = a.order()?;
    // Variables (x_1..x_n, v): maximize v s.t. A x − v e ≥ 0, Σx = 1, v free.
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = -Rational::one();
    let mut primal = LpProblem::new(n + 1).minimize(obj);
    primal.set_lower_bound(n, None);
    for i in 0..n {
        let mut row = a.row(i).to_vec();
        row.push(-Rational::one());
        primal.constrain(row, Relation::Ge, Rational::zero());
    }
    let mut simplex_row = vec![Rational::one(); n];
    simplex_row.push(Rational::zero());
    primal.constrain(simplex_row.clone(), Relation::Eq, Rational::one());

    // Variables (y_1..y_n, u): minimize u s.t. Aᵀ y − u e ≤ 0, Σy = 1, u free.
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = Rational::one();
    let mut dual = LpProblem::new(n + 1).minimize(obj);
    dual.set_lower_bound(n, None);
    let at = a.transpose();
    for j in 0..n {
        let mut row = at.row(j).to_vec();
        row.push(-Rational::one());
        dual.constrain(row, Relation::Le, Rational::zero());
    }
    dual.constrain(simplex_row, Relation::Eq, Rational::one());

    let (LpOutcome::Optimal(p), LpOutcome::Optimal(d)) = (solve_lp(&primal)?, solve_lp(&dual)?) else {
        return Err(Error::Internal("game programs must have optima".into()));
    };
    let value = p.x[n].clone();
    if value != d.x[n] {
        return Err(Error::Internal(format!("primal value {} differs from dual value {}", value, d.x[n])));
    }
    Ok(GameValueReport {
        sign: Sign::of(&value),
        value,
        x_star: p.x[..n].to_vec(),
        y_star: d.x[..n].to_vec(),
    })
}

/// Answers to the four sign questions, each decided by its own program.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SignQueries {
    pub positive: bool,
    pub nonnegative: bool,
    pub negative: bool,
    pub nonpositive: bool,
    /// `x ≥ 0`, `Σx = 1`, `Ax > 0`.
    pub positive_witness: Option<Vec<Rational>>,
    /// `x ≥ 0`, `Σx = 1`, `Ax ≥ 0`.
    pub nonnegative_witness: Option<Vec<Rational>>,
    /// `y ≥ 0`, `Σy = 1`, `yᵀA < 0`.
    pub negative_witness: Option<Vec<Rational>>,
    /// `y ≥ 0`, `Σy = 1`, `yᵀA ≤ 0`.
    pub nonpositive_witness: Option<Vec<Rational>>,
}

fn strict_rows(m: &RatMatrix, negate: bool) -> Result<(bool, Option<Vec<Rational>>)> {
    let n = m.n_rows();
    let mut sys = StrictSystem::new(n);
    sys.normalize_sum();
    for i in 0..n {
        let row = if negate { m.row(i).iter().map(|v| -v).collect() } else { m.row(i).to_vec() };
        sys.strictly_positive(row);
    }
    let out = strict_feasibility(&sys)?;
    Ok((out.feasible, out.witness))
}

fn weak_rows(m: &RatMatrix, relation: Relation) -> Result<(bool, Option<Vec<Rational>>)> {
    let n = m.n_rows();
    let mut lp = LpProblem::new(n);
    lp.constrain(vec![Rational::one(); n], Relation::Eq, Rational::one());
    for i in 0..n {
        lp.constrain(m.row(i).to_vec(), relation, Rational::zero());
    }
    Ok(match solve_lp(&lp)? {
        LpOutcome::Optimal(s) => (true, Some(s.x)),
        _ => (false, None),
    })
}

pub fn value_sign_queries(a: &RatMatrix) -> Result<SignQueries> {
    a.order()?;
    let at = a.transpose();
    let (positive, positive_witness) = strict_rows(a, false)?;
    let (nonnegative, nonnegative_witness) = weak_rows(a, Relation::Ge)?;
    let (negative, negative_witness) = strict_rows(&at, true)?;
    let (nonpositive, nonpositive_witness) = weak_rows(&at, Relation::Le)?;
    Ok(SignQueries {
        positive,
        nonnegative,
        negative,
        nonpositive,
        positive_witness,
        nonnegative_witness,
        negative_witness,
        nonpositive_witness,
    })
}
