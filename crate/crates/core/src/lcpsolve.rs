//! Linear complementarity problems: find `z ≥ 0` with `w = q + Az ≥ 0` and
//! `zᵀw = 0`.
//!
//! Four solvers (Lemke, least-index criss-cross, an LP reformulation that needs
//! a hidden-Z certificate, and brute-force enumeration), exact validation, and
//! an audit of basis degeneracy.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::hiddenz::{verify_certificate, Certificate};
use crate::lpcore::{solve_lp, LpOutcome, LpProblem, Relation};
use crate::matclass::is_e0_matrix;
use crate::ratmat::combinations;
use crate::rational::{dot, format_rational};
use crate::{Error, IndexSet, RatMatrix, Rational, Result};

/// Largest order accepted by [`enumerate_solutions`].
pub const ENUMERATION_CAP: usize = 10;
/// Largest order accepted by [`basis_nondegeneracy_audit`].
pub const AUDIT_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpInstance {
    pub a: RatMatrix,
    pub q: Vec<Rational>,
}

impl LcpInstance {
    pub fn new(a: RatMatrix, q: Vec<Rational>) -> Result<Self> {
        let n = a.order()?;
        if q.len() != n {
            return Err(Error::dim(format!("q has length {} but A has order {n}", q.len())));
        }
        Ok(LcpInstance { a, q })
    }

    pub fn order(&self) -> usize {
        self.q.len()
    }

    /// `q + Az`.
    pub fn w(&self, z: &[Rational]) -> Result<Vec<Rational>> {
        let az = self.a.mul_vec(z)?;
        Ok(self.q.iter().zip(az).map(|(q, v)| q + v).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpSolution {
    pub z: Vec<Rational>,
    pub w: Vec<Rational>,
    /// Some index has `z_i = w_i = 0`.
    pub degenerate: bool,
    /// `{ i : z_i > 0 }`.
    pub support: IndexSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionViolation {
    NegativeZ { index: usize, value: Rational },
    NegativeW { index: usize, value: Rational },
    Complementarity { index: usize, z: Rational, w: Rational },
}

impl fmt::Display for SolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionViolation::NegativeZ { index, value } => write!(f, "z[{}] = {} < 0", index + 1, format_rational(value)),
            SolutionViolation::NegativeW { index, value } => write!(f, "w[{}] = {} < 0", index + 1, format_rational(value)),
            SolutionViolation::Complementarity { index, z, w } => write!(
                f,
                "z[{i}]·w[{i}] = {}·{} ≠ 0",
                format_rational(z),
                format_rational(w),
                i = index + 1
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid(LcpSolution),
    Invalid(Vec<SolutionViolation>),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid(_))
    }

    pub fn into_valid(self) -> Option<LcpSolution> {
        match self {
            Validation::Valid(s) => Some(s),
            Validation::Invalid(_) => None,
        }
    }
}

pub fn validate_solution(inst: &LcpInstance, z: &[Rational]) -> Result<Validation> {
    let n = inst.order();
    if z.len() != n {
        return Err(Error::dim(format!("z has length {} but the instance has order {n}", z.len())));
    }
    let w = inst.w(z)?;
    let mut violations = Vec::new();
    for (index, value) in z.iter().enumerate().filter(|(_, v)| v.is_negative()) {
        violations.push(SolutionViolation::NegativeZ { index, value: value.clone() });
    }
    for (index, value) in w.iter().enumerate().filter(|(_, v)| v.is_negative()) {
        violations.push(SolutionViolation::NegativeW { index, value: value.clone() });
    }
    for i in 0..n {
        if !z[i].is_zero() && !w[i].is_zero() {
            violations.push(SolutionViolation::Complementarity { index: i, z: z[i].clone(), w: w[i].clone() });
        }
    }
    if !violations.is_empty() {
        return Ok(Validation::Invalid(violations));
    }
    let degenerate = (0..n).any(|i| z[i].is_zero() && w[i].is_zero());
    let support = IndexSet::new(n, (0..n).filter(|&i| z[i].is_positive()))?;
    Ok(Validation::Valid(LcpSolution { z: z.to_vec(), w, degenerate, support }))
}

fn must_validate(inst: &LcpInstance, z: &[Rational], who: &str) -> Result<LcpSolution> {
    match validate_solution(inst, z)? {
        Validation::Valid(s) => Ok(s),
        Validation::Invalid(v) => Err(Error::Internal(format!("{who} produced an invalid solution: {}", v[0]))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Distinct solutions in order of first discovery (supports by size, then
    /// lexicographically).
    pub solutions: Vec<LcpSolution>,
    /// Supports with a singular principal block that yielded a solution; only a
    /// vertex representative of a possible continuum is listed for these.
    pub flagged_supports: Vec<IndexSet>,
}

/// Every complementary support `α` is tried: `A[α,α] z_α = −q_α`, `z_ᾱ = 0`.
pub fn enumerate_solutions(inst: &LcpInstance) -> Result<Enumeration> {
    let n = inst.order();
    if n > ENUMERATION_CAP {
        return Err(Error::SizeCap { n, cap: ENUMERATION_CAP });
    }
    let per_support: Vec<Result<Option<(LcpSolution, bool)>>> =
        IndexSet::all_subsets(n).into_par_iter().map(|alpha| support_solution(inst, &alpha)).collect();
    let mut out = Enumeration { solutions: Vec::new(), flagged_supports: Vec::new() };
    for (alpha, found) in IndexSet::all_subsets(n).into_iter().zip(per_support) {
        if let Some((sol, singular)) = found? {
            if singular {
                out.flagged_supports.push(alpha);
            }
            if !out.solutions.iter().any(|s| s.z == sol.z) {
                out.solutions.push(sol);
            }
        }
    }
    Ok(out)
}

fn support_solution(inst: &LcpInstance, alpha: &IndexSet) -> Result<Option<(LcpSolution, bool)>> {
    let n = inst.order();
    if alpha.is_empty() {
        let z = vec![Rational::zero(); n];
        return Ok(validate_solution(inst, &z)?.into_valid().map(|s| (s, false)));
    }
    let block = inst.a.principal(alpha)?;
    let rhs: Vec<Rational> = alpha.iter().map(|i| -&inst.q[i]).collect();
    let (z_alpha, singular) = match block.solve(&rhs) {
        Ok(v) => (Some(v), false),
        Err(Error::Singular { .. }) => (vertex_on_support(inst, alpha)?, true),
        Err(e) => return Err(e),
    };
    let Some(z_alpha) = z_alpha else { return Ok(None) };
    let mut z = vec![Rational::zero(); n];
    for (k, i) in alpha.iter().enumerate() {
        z[i] = z_alpha[k].clone();
    }
    Ok(validate_solution(inst, &z)?.into_valid().map(|s| (s, singular)))
}

/// A vertex of `{ z_α ≥ 0 : A[α,α] z_α = −q_α, q_ᾱ + A[ᾱ,α] z_α ≥ 0 }`.
fn vertex_on_support(inst: &LcpInstance, alpha: &IndexSet) -> Result<Option<Vec<Rational>>> {
    let k = alpha.len();
    let mut lp = LpProblem::new(k);
    for i in 0..inst.order() {
        let row: Vec<Rational> = alpha.iter().map(|j| inst.a.get(i, j).clone()).collect();
        let relation = if alpha.contains(i) { Relation::Eq } else { Relation::Ge };
        lp.constrain(row, relation, -&inst.q[i]);
    }
    Ok(solve_lp(&lp)?.into_optimal().map(|s| s.x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SolveStatus {
    Solved,
    RayTermination,
    IterationCap,
    /// `{ z ≥ 0 : q + Az ≥ 0 }` is empty.
    Infeasible,
    /// Criss-cross met a zero diagonal whose exchange block is singular.
    PivotBreakdown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    pub solution: Option<LcpSolution>,
    pub pivots: usize,
    /// Optimal value of the reformulated program, for the LP method only.
    pub objective: Option<Rational>,
}

impl SolveOutcome {
    fn stopped(status: SolveStatus, pivots: usize) -> Self {
        SolveOutcome { status, solution: None, pivots, objective: None }
    }

    fn solved(solution: LcpSolution, pivots: usize) -> Self {
        SolveOutcome { status: SolveStatus::Solved, solution: Some(solution), pivots, objective: None }
    }
}

/// `10·2ⁿ`, saturating.
pub fn iteration_cap(n: usize) -> usize {
    1usize.checked_shl(n as u32).filter(|v| *v != 0).map_or(usize::MAX, |v| v.saturating_mul(10))
}

/// Dense tableau for `w − Az − z₀e = q`. Columns: `w` (0..n), `z` (n..2n),
/// `z₀` (2n). The `w` columns start as `I`, so they always hold `B⁻¹`.
struct LemkeTableau {
    n: usize,
    t: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basic: Vec<usize>,
}

impl LemkeTableau {
    fn new(inst: &LcpInstance) -> Self {
        let n = inst.order();
        let t = (0..n)
            .map(|i| {
                let mut row = vec![Rational::zero(); 2 * n + 1];
                row[i] = Rational::one();
                for j in 0..n {
                    row[n + j] = -inst.a.get(i, j);
                }
                row[2 * n] = -Rational::one();
                row
            })
            .collect();
        LemkeTableau { n, t, rhs: inst.q.clone(), basic: (0..n).collect() }
    }

    /// Row key `(rhs_i, B⁻¹_i·) / d_i` for the lexicographic ratio test.
    fn key(&self, i: usize, d: &Rational) -> Vec<Rational> {
        std::iter::once(&self.rhs[i]).chain(&self.t[i][..self.n]).map(|v| v / d).collect()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let (pivot_row, pivot_rhs) = (self.t[r].clone(), self.rhs[r].clone());
        for i in 0..self.n {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let f = self.t[i][c].clone();
            for (v, pv) in self.t[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basic[r] = c;
    }
}

/// Lemke's complementary pivoting with covering vector `e` and lexicographic
/// ratio test.
pub fn lemke_solve(inst: &LcpInstance) -> Result<SolveOutcome> {
    let n = inst.order();
    if inst.q.iter().all(|v| !v.is_negative()) {
        return Ok(SolveOutcome::solved(must_validate(inst, &vec![Rational::zero(); n], "Lemke")?, 0));
    }
    let cap = iteration_cap(n);
    let mut tab = LemkeTableau::new(inst);
    let z0 = 2 * n;
    // Initial pivot: z₀ enters at the lexicographically smallest row of (q, I).
    let r = (0..n).min_by(|&a, &b| tab.key(a, &Rational::one()).cmp(&tab.key(b, &Rational::one()))).expect("n ≥ 1");
    let mut leaving = tab.basic[r];
    tab.pivot(r, z0);
    let mut pivots = 1;
    loop {
        let entering = if leaving < n { leaving + n } else { leaving - n };
        let d: Vec<Rational> = (0..n).map(|i| tab.t[i][entering].clone()).collect();
        let candidates: Vec<usize> = (0..n).filter(|&i| d[i].is_positive()).collect();
        if candidates.is_empty() {
            return Ok(SolveOutcome::stopped(SolveStatus::RayTermination, pivots));
        }
        if pivots >= cap {
            return Ok(SolveOutcome::stopped(SolveStatus::IterationCap, pivots));
        }
        let min_ratio = candidates.iter().map(|&i| &tab.rhs[i] / &d[i]).min().expect("nonempty");
        // z₀ leaves whenever it ties for the minimum ratio.
        let r = candidates
            .iter()
            .copied()
            .find(|&i| tab.basic[i] == z0 && &tab.rhs[i] / &d[i] == min_ratio)
            .unwrap_or_else(|| candidates.iter().copied().min_by(|&a, &b| tab.key(a, &d[a]).cmp(&tab.key(b, &d[b]))).expect("nonempty"));
        leaving = tab.basic[r];
        tab.pivot(r, entering);
        pivots += 1;
        if leaving == z0 {
            let mut z = vec![Rational::zero(); n];
            for (i, &b) in tab.basic.iter().enumerate() {
                if (n..2 * n).contains(&b) {
                    z[b - n] = tab.rhs[i].clone();
                }
            }
            return Ok(SolveOutcome::solved(must_validate(inst, &z, "Lemke")?, pivots));
        }
    }
}

/// Complementary dictionary `x = q̄ + M̄y`. Row `i` holds the basic member of
/// pair `i` and column `i` the nonbasic one.
struct Dictionary {
    n: usize,
    m: Vec<Vec<Rational>>,
    q: Vec<Rational>,
    /// Whether `z_i` (rather than `w_i`) is basic.
    z_basic: Vec<bool>,
}

impl Dictionary {
    fn new(inst: &LcpInstance) -> Self {
        let n = inst.order();
        Dictionary { n, m: inst.a.to_rows(), q: inst.q.clone(), z_basic: vec![false; n] }
    }

    /// Exchanges the basic variable of row `r` with the nonbasic of column `s`.
    fn exchange(&mut self, r: usize, s: usize) {
        let p = self.m[r][s].clone();
        let row_r: Vec<Rational> = self.m[r].clone();
        let q_r = self.q[r].clone();
        for i in 0..self.n {
            if i == r {
                continue;
            }
            let f = &self.m[i][s] / &p;
            if f.is_zero() {
                continue;
            }
            for j in 0..self.n {
                if j != s {
                    let delta = &f * &row_r[j];
                    self.m[i][j] -= delta;
                }
            }
            self.m[i][s] = f.clone();
            self.q[i] -= &f * &q_r;
        }
        for j in 0..self.n {
            self.m[r][j] = if j == s { Rational::one() / &p } else { -&row_r[j] / &p };
        }
        self.q[r] = -q_r / &p;
    }

    fn swap_pairs(&mut self, r: usize, s: usize) {
        self.m.swap(r, s);
        for row in self.m.iter_mut() {
            row.swap(r, s);
        }
        self.q.swap(r, s);
    }

    fn solution(&self) -> Vec<Rational> {
        (0..self.n).map(|i| if self.z_basic[i] { self.q[i].clone() } else { Rational::zero() }).collect()
    }
}

/// Least-index criss-cross method with principal pivots.
pub fn crisscross_solve(inst: &LcpInstance) -> Result<SolveOutcome> {
    let n = inst.order();
    let cap = iteration_cap(n);
    let mut dict = Dictionary::new(inst);
    let mut pivots = 0;
    loop {
        let Some(r) = (0..n).find(|&i| dict.q[i].is_negative()) else {
            let z = dict.solution();
            return Ok(SolveOutcome::solved(must_validate(inst, &z, "criss-cross")?, pivots));
        };
        if dict.m[r].iter().all(|v| !v.is_positive()) {
            return Ok(SolveOutcome::stopped(SolveStatus::Infeasible, pivots));
        }
        if pivots >= cap {
            return Ok(SolveOutcome::stopped(SolveStatus::IterationCap, pivots));
        }
        if !dict.m[r][r].is_zero() {
            dict.exchange(r, r);
            dict.z_basic[r] = !dict.z_basic[r];
        } else {
            let s = (0..n).find(|&j| dict.m[r][j].is_positive()).expect("row has a positive entry");
            if dict.m[s][r].is_zero() {
                return Ok(SolveOutcome::stopped(SolveStatus::PivotBreakdown, pivots));
            }
            dict.exchange(r, s);
            dict.exchange(s, r);
            dict.swap_pairs(r, s);
            dict.z_basic[r] = !dict.z_basic[r];
            dict.z_basic[s] = !dict.z_basic[s];
        }
        pivots += 1;
    }
}

/// Solves `min (r + Aᵀs)ᵀz₁ + qᵀz₂` s.t. `Aᵀs + r − Aᵀz₂ ≥ 0`,
/// `Az₁ + q ≥ 0`, `z₁, z₂ ≥ 0` and returns `z = z₁`.
pub fn lp_reformulation_solve(inst: &LcpInstance, c: &Certificate) -> Result<SolveOutcome> {
    let n = inst.order();
    let v = verify_certificate(&inst.a, c)?;
    if let Some(first) = v.violations.first() {
        return Err(Error::Precondition(format!("invalid certificate: {first}")));
    }
    let at = inst.a.transpose();
    let ats = at.mul_vec(&c.s)?;
    let mut obj: Vec<Rational> = (0..n).map(|j| &c.r[j] + &ats[j]).collect();
    obj.extend(inst.q.iter().cloned());
    let mut lp = LpProblem::new(2 * n).minimize(obj.clone());
    for j in 0..n {
        let mut row = vec![Rational::zero(); 2 * n];
        for k in 0..n {
            row[n + k] = -at.get(j, k);
        }
        lp.constrain(row, Relation::Ge, -(&ats[j] + &c.r[j]));
    }
    for i in 0..n {
        let mut row = inst.a.row(i).to_vec();
        row.extend(std::iter::repeat_n(Rational::zero(), n));
        lp.constrain(row, Relation::Ge, -&inst.q[i]);
    }
    match solve_lp(&lp)? {
        LpOutcome::Infeasible => Ok(SolveOutcome::stopped(SolveStatus::Infeasible, 0)),
        LpOutcome::Unbounded => Err(Error::Internal("reformulated program is unbounded".into())),
        LpOutcome::Optimal(sol) => {
            let z = sol.x[..n].to_vec();
            let solution = must_validate(inst, &z, "LP reformulation")?;
            Ok(SolveOutcome {
                status: SolveStatus::Solved,
                solution: Some(solution),
                pivots: 0,
                objective: Some(dot(&obj, &sol.x)),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisAudit {
    pub all_nondegenerate: bool,
    /// Feasible bases among all `n`-subsets of the columns of `(I | −A)`.
    pub feasible_bases: usize,
    /// Column sets (0..n for `w`, n..2n for `z`) of degenerate feasible bases.
    pub offenders: Vec<Vec<usize>>,
    /// The same counts restricted to complementary bases.
    pub complementary_feasible: usize,
    pub complementary_degenerate: usize,
}

impl BasisAudit {
    pub fn complementary_nondegenerate(&self) -> bool {
        self.complementary_degenerate == 0
    }
}

/// Names a column of `(I | −A)`: `w1..wn`, then `z1..zn`.
pub fn column_label(n: usize, col: usize) -> String {
    if col < n {
        format!("w{}", col + 1)
    } else {
        format!("z{}", col - n + 1)
    }
}

pub fn basis_nondegeneracy_audit(inst: &LcpInstance) -> Result<BasisAudit> {
    let n = inst.order();
    if n > AUDIT_CAP {
        return Err(Error::SizeCap { n, cap: AUDIT_CAP });
    }
    let mut bases = Vec::new();
    combinations(2 * n, n, &mut |cols| bases.push(cols.to_vec()));
    // (feasible, degenerate) per basis.
    let results: Vec<Result<(bool, bool)>> = bases
        .par_iter()
        .map(|cols| {
            let data = (0..n)
                .flat_map(|i| {
                    cols.iter().map(move |&c| if c < n { if c == i { Rational::one() } else { Rational::zero() } } else { -inst.a.get(i, c - n) })
                })
                .collect();
            let b = RatMatrix::new(n, n, data)?;
            match b.solve(&inst.q) {
                Ok(x) if x.iter().all(|v| !v.is_negative()) => Ok((true, x.iter().any(|v| v.is_zero()))),
                Ok(_) | Err(Error::Singular { .. }) => Ok((false, false)),
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut audit = BasisAudit {
        all_nondegenerate: true,
        feasible_bases: 0,
        offenders: Vec::new(),
        complementary_feasible: 0,
        complementary_degenerate: 0,
    };
    for (cols, res) in bases.into_iter().zip(results) {
        let (feasible, degenerate) = res?;
        if !feasible {
            continue;
        }
        let complementary = (0..n).all(|i| cols.contains(&i) != cols.contains(&(i + n)));
        audit.feasible_bases += 1;
        if complementary {
            audit.complementary_feasible += 1;
        }
        if degenerate {
            audit.all_nondegenerate = false;
            if complementary {
                audit.complementary_degenerate += 1;
            }
            audit.offenders.push(cols);
        }
    }
    Ok(audit)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniquenessReport {
    /// Hypotheses hold and the solution set is a single non-degenerate point.
    Pass(LcpSolution),
    /// Hypotheses hold but the conclusion fails.
    Violation(String),
    /// The named hypothesis does not hold.
    Skipped(String),
}

/// With a verified certificate, `A` in E₀ and every feasible basis
/// non-degenerate, the LCP must have exactly one solution and it must be
/// non-degenerate.
pub fn unique_nondegenerate_check(inst: &LcpInstance, c: &Certificate) -> Result<UniquenessReport> {
    if !verify_certificate(&inst.a, c)?.valid {
        return Ok(UniquenessReport::Skipped("certificate does not verify".into()));
    }
    if !is_e0_matrix(&inst.a)? {
        return Ok(UniquenessReport::Skipped("A is not an E0-matrix".into()));
    }
    let audit = basis_nondegeneracy_audit(inst)?;
    if !audit.all_nondegenerate {
        return Ok(UniquenessReport::Skipped("some feasible basis is degenerate".into()));
    }
    let mut found = enumerate_solutions(inst)?;
    if found.solutions.is_empty() {
        return Ok(UniquenessReport::Skipped("the LCP has no solution".into()));
    }
    if found.solutions.len() > 1 {
        return Ok(UniquenessReport::Violation(format!("{} distinct solutions found", found.solutions.len())));
    }
    let sol = found.solutions.remove(0);
    if sol.degenerate {
        return Ok(UniquenessReport::Violation("the unique solution is degenerate".into()));
    }
    Ok(UniquenessReport::Pass(sol))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Lemke,
    CrissCross,
    Lp,
    Enumerate,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Lemke, Method::CrissCross, Method::Lp, Method::Enumerate];

    pub fn name(self) -> &'static str {
        match self {
            Method::Lemke => "lemke",
            Method::CrissCross => "crisscross",
            Method::Lp => "lp",
            Method::Enumerate => "enumerate",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown method '{s}'")))
    }
}

/// Runs one method. `Enumerate` reports the first enumerated solution, or
/// `Infeasible` when there is none. `Lp` needs a certificate.
pub fn solve_with(inst: &LcpInstance, method: Method, certificate: Option<&Certificate>) -> Result<SolveOutcome> {
    match method {
        Method::Lemke => lemke_solve(inst),
        Method::CrissCross => crisscross_solve(inst),
        Method::Lp => {
            let c = certificate.ok_or_else(|| Error::Precondition("the LP method needs a hidden-Z certificate".into()))?;
            lp_reformulation_solve(inst, c)
        }
        Method::Enumerate => {
            let found = enumerate_solutions(inst)?;
            Ok(match found.solutions.into_iter().next() {
                Some(s) => SolveOutcome::solved(s, 0),
                None => SolveOutcome::stopped(SolveStatus::Infeasible, 0),
            })
        }
    }
}
