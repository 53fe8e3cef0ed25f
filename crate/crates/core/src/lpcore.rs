//! Exact rational linear programming.
//!
//! Two-phase dense-tableau simplex with Bland's least-index rule, so pivoting
//! always terminates and the returned optimum is a vertex. Strict systems are
//! decided through an auxiliary program that maximizes a common margin.

use num_traits::{One, Signed, Zero};

use crate::rational::dot;
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

/// `coeffs · x (relation) rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.relation {
            Relation::Ge => lhs >= self.rhs,
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// Minimize `objective · x` subject to `constraints` and per-variable lower
/// bounds (`None` means the variable is free).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub lower_bounds: Vec<Option<Rational>>,
}

impl LpProblem {
    /// `n_vars` nonnegative variables with a zero objective and no constraints.
    pub fn new(n_vars: usize) -> Self {
        LpProblem {
            objective: vec![Rational::zero(); n_vars],
            constraints: Vec::new(),
            lower_bounds: vec![Some(Rational::zero()); n_vars],
        }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn minimize(mut self, objective: Vec<Rational>) -> Self {
        self.objective = objective;
        self
    }

    pub fn constrain(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
        self
    }

    pub fn set_lower_bound(&mut self, var: usize, bound: Option<Rational>) -> &mut Self {
        self.lower_bounds[var] = bound;
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.n_vars();
        if self.lower_bounds.len() != n {
            return Err(Error::dim(format!("{} lower bounds for {n} variables", self.lower_bounds.len())));
        }
        if let Some((i, c)) = self.constraints.iter().enumerate().find(|(_, c)| c.coeffs.len() != n) {
            return Err(Error::dim(format!("constraint {i} has {} coefficients, expected {n}", c.coeffs.len())));
        }
        Ok(())
    }

    /// Exact feasibility check of a candidate point.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.n_vars()
            && self.constraints.iter().all(|c| c.is_satisfied_by(x))
            && self.lower_bounds.iter().zip(x).all(|(lb, v)| lb.as_ref().is_none_or(|l| v >= l))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    pub objective: Rational,
    /// Basic columns of the internal standard form, ascending.
    pub basis: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn into_optimal(self) -> Option<LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, LpOutcome::Infeasible)
    }
}

/// How an original variable maps onto standard-form columns.
#[derive(Debug, Clone)]
enum VarMap {
    Shifted { col: usize, lower: Rational },
    Split { pos: usize, neg: usize },
}

struct Tableau {
    /// `m` rows of `width + 1` entries; the last entry is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize, cost_row: &mut [Rational]) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut [Rational]| {
            let f = row[c].clone();
            if f.is_zero() {
                return;
            }
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(cost_row);
        self.basis[r] = c;
    }

    /// Reduced-cost row for `cost` (length `width`), with `-z` in the last slot.
    fn cost_row(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut row: Vec<Rational> = cost.iter().cloned().chain(std::iter::once(Rational::zero())).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (v, a) in row.iter_mut().zip(&self.rows[i]) {
                if !a.is_zero() {
                    *v -= cb * a;
                }
            }
        }
        row
    }

    /// Bland's rule. Returns `false` on unboundedness.
    fn optimize(&mut self, cost_row: &mut [Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width).find(|&j| allowed[j] && cost_row[j].is_negative());
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c, cost_row),
                None => return false,
            }
        }
    }
}

/// Solves `p` exactly. Deterministic: identical inputs give identical bases.
pub fn solve_lp(p: &LpProblem) -> Result<LpOutcome> {
    p.validate()?;
    let n = p.n_vars();

    // Map original variables onto nonnegative standard-form columns.
    let mut maps = Vec::with_capacity(n);
    let mut n_std = 0;
    for lb in &p.lower_bounds {
        match lb {
            Some(l) => {
                maps.push(VarMap::Shifted { col: n_std, lower: l.clone() });
                n_std += 1;
            }
            None => {
                maps.push(VarMap::Split { pos: n_std, neg: n_std + 1 });
                n_std += 2;
            }
        }
    }

    let mut obj_std = vec![Rational::zero(); n_std];
    let mut obj_const = Rational::zero();
    for (j, map) in maps.iter().enumerate() {
        let cj = &p.objective[j];
        match map {
            VarMap::Shifted { col, lower } => {
                obj_std[*col] = cj.clone();
                obj_const += cj * lower;
            }
            VarMap::Split { pos, neg } => {
                obj_std[*pos] = cj.clone();
                obj_std[*neg] = -cj;
            }
        }
    }

    // Rows with nonnegative right-hand sides.
    let mut std_rows: Vec<(Vec<Rational>, Relation, Rational)> = Vec::with_capacity(p.constraints.len());
    for c in &p.constraints {
        let mut coeffs = vec![Rational::zero(); n_std];
        let mut rhs = c.rhs.clone();
        for (j, map) in maps.iter().enumerate() {
            let a = &c.coeffs[j];
            if a.is_zero() {
                continue;
            }
            match map {
                VarMap::Shifted { col, lower } => {
                    coeffs[*col] = a.clone();
                    rhs -= a * lower;
                }
                VarMap::Split { pos, neg } => {
                    coeffs[*pos] = a.clone();
                    coeffs[*neg] = -a;
                }
            }
        }
        let mut relation = c.relation;
        if rhs.is_negative() {
            coeffs.iter_mut().for_each(|v| *v = -v.clone());
            rhs = -rhs;
            relation = match relation {
                Relation::Ge => Relation::Le,
                Relation::Le => Relation::Ge,
                Relation::Eq => Relation::Eq,
            };
        }
        std_rows.push((coeffs, relation, rhs));
    }

    let m = std_rows.len();
    let n_slack = std_rows.iter().filter(|(_, r, _)| *r != Relation::Eq).count();
    let n_art = std_rows.iter().filter(|(_, r, _)| *r != Relation::Le).count();
    let art_start = n_std + n_slack;
    let width = art_start + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n_std, art_start);
    for (coeffs, relation, rhs) in std_rows {
        let mut row = coeffs;
        row.resize(width + 1, Rational::zero());
        row[width] = rhs;
        match relation {
            Relation::Le => {
                row[next_slack] = Rational::one();
                basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -Rational::one();
                next_slack += 1;
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
    }
    let mut tab = Tableau { rows, basis, width };

    // Phase 1: minimize the sum of artificials.
    if n_art > 0 {
        let phase1_cost: Vec<Rational> =
            (0..width).map(|j| if j >= art_start { Rational::one() } else { Rational::zero() }).collect();
        let mut cost_row = tab.cost_row(&phase1_cost);
        let allowed = vec![true; width];
        tab.optimize(&mut cost_row, &allowed);
        if !cost_row[width].is_zero() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= art_start {
                match (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => {
                        let mut scratch = vec![Rational::zero(); width + 1];
                        tab.pivot(i, j, &mut scratch);
                    }
                    None => {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    // Phase 2.
    let mut cost = obj_std;
    cost.resize(width, Rational::zero());
    let mut cost_row = tab.cost_row(&cost);
    let allowed: Vec<bool> = (0..width).map(|j| j < art_start).collect();
    if !tab.optimize(&mut cost_row, &allowed) {
        return Ok(LpOutcome::Unbounded);
    }

    let mut values = vec![Rational::zero(); width];
    for (i, &b) in tab.basis.iter().enumerate() {
        values[b] = tab.rows[i][width].clone();
    }
    let x: Vec<Rational> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted { col, lower } => lower + &values[*col],
            VarMap::Split { pos, neg } => &values[*pos] - &values[*neg],
        })
        .collect();
    let objective = -cost_row[width].clone() + obj_const;
    debug_assert_eq!(objective, dot(&p.objective, &x));
    let mut basis = tab.basis.clone();
    basis.sort_unstable();
    Ok(LpOutcome::Optimal(LpSolution { x, objective, basis }))
}

/// A system of nonstrict `base` constraints plus homogeneous forms that must
/// all be strictly positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictSystem {
    pub n_vars: usize,
    pub base: Vec<Constraint>,
    pub lower_bounds: Vec<Option<Rational>>,
    pub strict: Vec<Vec<Rational>>,
}

impl StrictSystem {
    /// `n_vars` nonnegative variables, no constraints.
    pub fn new(n_vars: usize) -> Self {
        StrictSystem {
            n_vars,
            base: Vec::new(),
            lower_bounds: vec![Some(Rational::zero()); n_vars],
            strict: Vec::new(),
        }
    }

    pub fn require(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        self.base.push(Constraint::new(coeffs, relation, rhs));
        self
    }

    pub fn strictly_positive(&mut self, form: Vec<Rational>) -> &mut Self {
        self.strict.push(form);
        self
    }

    /// Adds `Σ x = 1`.
    pub fn normalize_sum(&mut self) -> &mut Self {
        let ones = vec![Rational::one(); self.n_vars];
        self.require(ones, Relation::Eq, Rational::one())
    }

    pub fn is_witness(&self, x: &[Rational]) -> bool {
        x.len() == self.n_vars
            && self.base.iter().all(|c| c.is_satisfied_by(x))
            && self.lower_bounds.iter().zip(x).all(|(lb, v)| lb.as_ref().is_none_or(|l| v >= l))
            && self.strict.iter().all(|f| dot(f, x).is_positive())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrictOutcome {
    pub feasible: bool,
    pub witness: Option<Vec<Rational>>,
    /// Optimal margin `t*` of the auxiliary program, when the base is feasible.
    pub margin: Option<Rational>,
}

/// Decides whether some point satisfies every base constraint and makes every
/// strict form positive.
///
/// Solves `maximize t` subject to `form_i · x ≥ t`, `t ≤ 1` and the base
/// constraints; the system is feasible iff the optimum `t*` is positive.
pub fn strict_feasibility(sys: &StrictSystem) -> Result<StrictOutcome> {
    let n = sys.n_vars;
    if sys.lower_bounds.len() != n {
        return Err(Error::dim("lower bounds do not match variable count"));
    }
    if let Some(f) = sys.strict.iter().find(|f| f.len() != n) {
        return Err(Error::dim(format!("strict form of length {} for {n} variables", f.len())));
    }
    let t = n;
    let widen = |coeffs: &[Rational], t_coeff: Rational| {
        let mut row = coeffs.to_vec();
        row.push(t_coeff);
        row
    };
    let mut objective = vec![Rational::zero(); n + 1];
    objective[t] = -Rational::one();
    let mut lp = LpProblem::new(n + 1).minimize(objective);
    lp.lower_bounds = sys.lower_bounds.clone();
    lp.lower_bounds.push(None);
    for c in &sys.base {
        if c.coeffs.len() != n {
            return Err(Error::dim(format!("base constraint of length {} for {n} variables", c.coeffs.len())));
        }
        lp.constrain(widen(&c.coeffs, Rational::zero()), c.relation, c.rhs.clone());
    }
    for f in &sys.strict {
        lp.constrain(widen(f, -Rational::one()), Relation::Ge, Rational::zero());
    }
    let mut cap = vec![Rational::zero(); n + 1];
    cap[t] = Rational::one();
    lp.constrain(cap, Relation::Le, Rational::one());

    match solve_lp(&lp)? {
        LpOutcome::Infeasible => Ok(StrictOutcome { feasible: false, witness: None, margin: None }),
        LpOutcome::Unbounded => Err(Error::Internal("auxiliary margin program reported unbounded".into())),
        LpOutcome::Optimal(sol) => {
            let margin = sol.x[t].clone();
            if margin.is_positive() {
                let witness = sol.x[..n].to_vec();
                debug_assert!(sys.is_witness(&witness));
                Ok(StrictOutcome { feasible: true, witness: Some(witness), margin: Some(margin) })
            } else {
                Ok(StrictOutcome { feasible: false, witness: None, margin: Some(margin) })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ints, ratio};
    use crate::RatMatrix;

    /// LP (5): minimize s s.t. Ax − s·e ≥ 0, x ≥ δe, s ≥ ε.
    fn lp5(a: &RatMatrix, eps: Rational, delta: Rational) -> LpProblem {
        let n = a.n_rows();
        let mut obj = vec![Rational::zero(); n + 1];
        obj[n] = int(1);
        let mut lp = LpProblem::new(n + 1).minimize(obj);
        for i in 0..n {
            let mut row = a.row(i).to_vec();
            row.push(int(-1));
            lp.constrain(row, Relation::Ge, int(0));
            lp.set_lower_bound(i, Some(delta.clone()));
        }
        lp.set_lower_bound(n, Some(eps));
        lp
    }

    #[test]
    fn identity_lp5_has_unit_optimum() {
        let lp = lp5(&RatMatrix::identity(2), int(1), int(1));
        let sol = solve_lp(&lp).unwrap().into_optimal().unwrap();
        assert_eq!(sol.objective, int(1));
        assert!(lp.is_feasible(&sol.x));
    }

    #[test]
    fn opposite_rows_make_lp5_infeasible() {
        let a = RatMatrix::from_i64(&[[1, 1], [-1, -1]]).unwrap();
        assert!(solve_lp(&lp5(&a, int(1), int(1))).unwrap().is_infeasible());
    }

    #[test]
    fn trivially_infeasible() {
        let mut lp = LpProblem::new(1);
        lp.constrain(ints(&[-1]), Relation::Ge, int(1));
        assert_eq!(solve_lp(&lp).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LpProblem::new(2).minimize(ints(&[-1, 0]));
        lp.constrain(ints(&[1, -1]), Relation::Le, int(1));
        assert_eq!(solve_lp(&lp).unwrap(), LpOutcome::Unbounded);
    }

    #[test]
    fn free_variables_and_equalities() {
        // minimize x + y, x free, y ≥ -2, x - y = 3, x ≥ -10 via constraint.
        let mut lp = LpProblem::new(2).minimize(ints(&[1, 1]));
        lp.set_lower_bound(0, None).set_lower_bound(1, Some(int(-2)));
        lp.constrain(ints(&[1, -1]), Relation::Eq, int(3));
        let sol = solve_lp(&lp).unwrap().into_optimal().unwrap();
        assert_eq!(sol.x, vec![int(1), int(-2)]);
        assert_eq!(sol.objective, int(-1));
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LpProblem::new(2).minimize(ints(&[1, 2]));
        lp.constrain(ints(&[1, 1]), Relation::Eq, int(1));
        lp.constrain(ints(&[2, 2]), Relation::Eq, int(2));
        let sol = solve_lp(&lp).unwrap().into_optimal().unwrap();
        assert_eq!(sol.x, ints(&[1, 0]));
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Beale's cycling example; Bland's rule must terminate at -1/20.
        let mut lp = LpProblem::new(4).minimize(vec![ratio(-3, 4), int(150), ratio(-1, 50), int(6)]);
        lp.constrain(vec![ratio(1, 4), int(-60), ratio(-1, 25), int(9)], Relation::Le, int(0));
        lp.constrain(vec![ratio(1, 2), int(-90), ratio(-1, 50), int(3)], Relation::Le, int(0));
        lp.constrain(ints(&[0, 0, 1, 0]), Relation::Le, int(1));
        let sol = solve_lp(&lp).unwrap().into_optimal().unwrap();
        assert_eq!(sol.objective, ratio(-1, 20));
    }

    #[test]
    fn strong_duality_on_small_problem() {
        // primal: min cᵀx, Ax ≥ b, x ≥ 0; dual: max bᵀy, Aᵀy ≤ c, y ≥ 0.
        let a = RatMatrix::from_i64(&[[2, 1, 0], [1, 3, 1], [0, 1, 4]]).unwrap();
        let b = ints(&[4, 5, 3]);
        let c = ints(&[3, 2, 5]);
        let mut primal = LpProblem::new(3).minimize(c.clone());
        for i in 0..3 {
            primal.constrain(a.row(i).to_vec(), Relation::Ge, b[i].clone());
        }
        let mut dual = LpProblem::new(3).minimize(b.iter().map(|v| -v).collect());
        let at = a.transpose();
        for j in 0..3 {
            dual.constrain(at.row(j).to_vec(), Relation::Le, c[j].clone());
        }
        let p = solve_lp(&primal).unwrap().into_optimal().unwrap();
        let d = solve_lp(&dual).unwrap().into_optimal().unwrap();
        assert_eq!(p.objective, -d.objective);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let mut lp = LpProblem::new(2);
        lp.constrain(ints(&[1]), Relation::Ge, int(0));
        assert!(matches!(solve_lp(&lp), Err(Error::Dimension(_))));
    }

    fn rows_system(a: &RatMatrix) -> StrictSystem {
        let n = a.n_rows();
        let mut sys = StrictSystem::new(n);
        sys.normalize_sum();
        for i in 0..n {
            sys.strictly_positive(a.row(i).to_vec());
        }
        sys
    }

    #[test]
    fn strict_examples() {
        let mut sys = StrictSystem::new(1);
        sys.lower_bounds[0] = None;
        sys.require(ints(&[1]), Relation::Le, int(0)).strictly_positive(ints(&[1]));
        assert!(!strict_feasibility(&sys).unwrap().feasible);

        let p_hz = RatMatrix::from_i64(&[[1, 2, 0], [0, 1, 0], [-1, 0, 1]]).unwrap();
        let sys = rows_system(&p_hz);
        let out = strict_feasibility(&sys).unwrap();
        assert!(out.feasible);
        assert!(sys.is_witness(out.witness.as_ref().unwrap()));
        assert!(sys.is_witness(&[ratio(1, 10), ratio(4, 10), ratio(5, 10)]));

        let singular_hz = RatMatrix::from_i64(&[[1, 1, 0], [-1, -1, 0], [0, 0, 1]]).unwrap();
        assert!(!strict_feasibility(&rows_system(&singular_hz)).unwrap().feasible);
    }

    #[test]
    fn strict_is_deterministic() {
        let p_hz = RatMatrix::from_i64(&[[1, 2, 0], [0, 1, 0], [-1, 0, 1]]).unwrap();
        let a = strict_feasibility(&rows_system(&p_hz)).unwrap();
        let b = strict_feasibility(&rows_system(&p_hz)).unwrap();
        assert_eq!(a, b);
    }
}
