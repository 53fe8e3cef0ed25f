//! Hidden Z-matrix certificates.
//!
//! `A` is a hidden Z-matrix when there are Z-matrices `X`, `Y` and vectors
//! `r, s ≥ 0` with `AX = Y` and `rᵀX + sᵀY > 0` componentwise. This module
//! verifies and searches for such certificates, derives new ones (principal
//! submatrices, permutations, diagonal shifts, type-D matrices) and runs the
//! two-step LP that certifies P or P₀ membership.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::lpcore::{solve_lp, LpOutcome, LpProblem, Relation};
use crate::matclass::{is_e_matrix, is_type_d, is_z_matrix, minor_profile};
use crate::ratmat::permute_vector;
use crate::rational::format_rational;
use crate::{Error, IndexSet, RatMatrix, Rational, Result, DEFAULT_SUBSET_CAP};

/// Witness `(X, Y, r, s)` for hidden-Z membership.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub x: RatMatrix,
    pub y: RatMatrix,
    pub r: Vec<Rational>,
    pub s: Vec<Rational>,
}

impl Certificate {
    pub fn new(x: RatMatrix, y: RatMatrix, r: Vec<Rational>, s: Vec<Rational>) -> Self {
        Certificate { x, y, r, s }
    }

    /// `(I, A, e, 0)`, valid whenever `A` is itself a Z-matrix.
    pub fn trivial(a: &RatMatrix) -> Result<Self> {
        let n = a.order()?;
        Ok(Certificate {
            x: RatMatrix::identity(n),
            y: a.clone(),
            r: vec![Rational::one(); n],
            s: vec![Rational::zero(); n],
        })
    }

    pub fn order(&self) -> usize {
        self.x.n_rows()
    }

    /// `rᵀX + sᵀY`.
    pub fn combination(&self) -> Result<Vec<Rational>> {
        let rx = self.x.vec_mul(&self.r)?;
        let sy = self.y.vec_mul(&self.s)?;
        Ok(rx.iter().zip(&sy).map(|(a, b)| a + b).collect())
    }

    fn check_shapes(&self, n: usize) -> Result<()> {
        let ok = self.x.n_rows() == n
            && self.x.n_cols() == n
            && self.y.n_rows() == n
            && self.y.n_cols() == n
            && self.r.len() == n
            && self.s.len() == n;
        if ok {
            Ok(())
        } else {
            Err(Error::dim(format!(
                "certificate shapes X {}x{}, Y {}x{}, r {}, s {} do not match order {n}",
                self.x.n_rows(),
                self.x.n_cols(),
                self.y.n_rows(),
                self.y.n_cols(),
                self.r.len(),
                self.s.len()
            )))
        }
    }

    /// Certificate `(PXPᵀ, PYPᵀ, Pr, Ps)` for `PAPᵀ`, with the permutation
    /// convention of [`RatMatrix::principal_permute`].
    pub fn permuted(&self, perm: &[usize]) -> Result<Certificate> {
        Ok(Certificate {
            x: self.x.principal_permute(perm)?,
            y: self.y.principal_permute(perm)?,
            r: permute_vector(&self.r, perm)?,
            s: permute_vector(&self.s, perm)?,
        })
    }
}

/// One failed condition of a certificate. Indices are zero-based; `Display`
/// renders them one-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ProductMismatch { row: usize, col: usize, ax: Rational, y: Rational },
    XNotZ { row: usize, col: usize, value: Rational },
    YNotZ { row: usize, col: usize, value: Rational },
    NegativeR { index: usize, value: Rational },
    NegativeS { index: usize, value: Rational },
    NotPositive { index: usize, value: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = format_rational;
        match self {
            Violation::ProductMismatch { row, col, ax, y } => {
                write!(f, "(AX)[{},{}] = {} but Y[{},{}] = {}", row + 1, col + 1, r(ax), row + 1, col + 1, r(y))
            }
            Violation::XNotZ { row, col, value } => {
                write!(f, "X is not a Z-matrix: X[{},{}] = {} > 0", row + 1, col + 1, r(value))
            }
            Violation::YNotZ { row, col, value } => {
                write!(f, "Y is not a Z-matrix: Y[{},{}] = {} > 0", row + 1, col + 1, r(value))
            }
            Violation::NegativeR { index, value } => write!(f, "r[{}] = {} < 0", index + 1, r(value)),
            Violation::NegativeS { index, value } => write!(f, "s[{}] = {} < 0", index + 1, r(value)),
            Violation::NotPositive { index, value } => {
                write!(f, "(rᵀX + sᵀY)[{}] = {} is not positive", index + 1, r(value))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub valid: bool,
    /// In check order: product, X, Y, r, s, positivity.
    pub violations: Vec<Violation>,
    /// `rᵀX + sᵀY`.
    pub combination: Vec<Rational>,
}

fn off_diagonal_positive(m: &RatMatrix) -> Vec<(usize, usize, Rational)> {
    let n = m.n_rows();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && m.get(i, j).is_positive() {
                out.push((i, j, m.get(i, j).clone()));
            }
        }
    }
    out
}

/// Checks everything except `AX = Y`.
fn structural_violations(c: &Certificate) -> Result<(Vec<Violation>, Vec<Rational>)> {
    let mut v = Vec::new();
    v.extend(off_diagonal_positive(&c.x).into_iter().map(|(row, col, value)| Violation::XNotZ { row, col, value }));
    v.extend(off_diagonal_positive(&c.y).into_iter().map(|(row, col, value)| Violation::YNotZ { row, col, value }));
    for (index, value) in c.r.iter().enumerate().filter(|(_, x)| x.is_negative()) {
        v.push(Violation::NegativeR { index, value: value.clone() });
    }
    for (index, value) in c.s.iter().enumerate().filter(|(_, x)| x.is_negative()) {
        v.push(Violation::NegativeS { index, value: value.clone() });
    }
    let combination = c.combination()?;
    for (index, value) in combination.iter().enumerate().filter(|(_, x)| !x.is_positive()) {
        v.push(Violation::NotPositive { index, value: value.clone() });
    }
    Ok((v, combination))
}

/// Exact check of `AX = Y`, Z-pattern of `X` and `Y`, `r, s ≥ 0` and
/// `rᵀX + sᵀY > 0`.
pub fn verify_certificate(a: &RatMatrix, c: &Certificate) -> Result<Verification> {
    let n = a.order()?;
    c.check_shapes(n)?;
    let ax = a.matmul(&c.x)?;
    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if ax.get(i, j) != c.y.get(i, j) {
                violations.push(Violation::ProductMismatch {
                    row: i,
                    col: j,
                    ax: ax.get(i, j).clone(),
                    y: c.y.get(i, j).clone(),
                });
            }
        }
    }
    let (rest, combination) = structural_violations(c)?;
    violations.extend(rest);
    Ok(Verification { valid: violations.is_empty(), violations, combination })
}

fn require_valid(a: &RatMatrix, c: &Certificate) -> Result<()> {
    let v = verify_certificate(a, c)?;
    match v.violations.first() {
        None => Ok(()),
        Some(first) => Err(Error::Precondition(format!("invalid certificate: {first}"))),
    }
}

/// A fixed `(r, s)` pair that makes the search for `X` linear.
pub type Seed = (Vec<Rational>, Vec<Rational>);

/// `(e, 0)`, `(0, e)`, `(e, e)`.
pub fn default_seeds(n: usize) -> Vec<Seed> {
    let e = vec![Rational::one(); n];
    let z = vec![Rational::zero(); n];
    vec![(e.clone(), z.clone()), (z, e.clone()), (e.clone(), e)]
}

/// Default seeds followed by `(e_i, 0)` and `(0, e_i)` for each `i`.
pub fn extended_seeds(n: usize) -> Vec<Seed> {
    let mut seeds = default_seeds(n);
    let z = vec![Rational::zero(); n];
    for i in 0..n {
        let mut unit = z.clone();
        unit[i] = Rational::one();
        seeds.push((unit.clone(), z.clone()));
        seeds.push((z.clone(), unit));
    }
    seeds
}

/// Searches for a certificate, one LP per seed, in seed order.
///
/// For a fixed `(r, s)` the conditions are linear in `X`:
/// `X_ij ≤ 0` and `(AX)_ij ≤ 0` off the diagonal, and
/// `(rᵀX + sᵀAX)_j ≥ 1` (the strict inequality normalized by scaling).
/// `None` means no seed worked; it does not prove `A` is not hidden Z.
pub fn find_certificate(a: &RatMatrix, seeds: &[Seed]) -> Result<Option<Certificate>> {
    let n = a.order()?;
    for (r, s) in seeds {
        if r.len() != n || s.len() != n {
            return Err(Error::dim(format!("seed of lengths ({}, {}) for order {n}", r.len(), s.len())));
        }
        if r.iter().chain(s).any(|v| v.is_negative()) {
            return Err(Error::InvalidInput("seed vectors must be nonnegative".into()));
        }
        if let Some(x) = search_x(a, r, s)? {
            let y = a.matmul(&x)?;
            let cert = Certificate { x, y, r: r.clone(), s: s.clone() };
            let v = verify_certificate(a, &cert)?;
            if !v.valid {
                return Err(Error::Internal(format!("search produced an invalid certificate: {}", v.violations[0])));
            }
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

fn search_x(a: &RatMatrix, r: &[Rational], s: &[Rational]) -> Result<Option<RatMatrix>> {
    let n = a.n_rows();
    // Variable k*n + j stands for X[k][j]; off-diagonal ones are stored negated
    // (v = −X ≥ 0) so the Z-pattern of X is a bound rather than a row.
    let var = |k: usize, j: usize| k * n + j;
    let sign = |k: usize, j: usize| if k == j { Rational::one() } else { -Rational::one() };
    let mut lp = LpProblem::new(n * n);
    for k in 0..n {
        lp.set_lower_bound(var(k, k), None);
    }
    // (AX)_ij ≤ 0 for i ≠ j.
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut row = vec![Rational::zero(); n * n];
            for k in 0..n {
                row[var(k, j)] = a.get(i, k) * sign(k, j);
            }
            lp.constrain(row, Relation::Le, Rational::zero());
        }
    }
    // (rᵀX + sᵀAX)_j ≥ 1.
    let sa = a.vec_mul(s)?;
    for j in 0..n {
        let mut row = vec![Rational::zero(); n * n];
        for k in 0..n {
            row[var(k, j)] = (&r[k] + &sa[k]) * sign(k, j);
        }
        lp.constrain(row, Relation::Ge, Rational::one());
    }
    Ok(match solve_lp(&lp)? {
        LpOutcome::Optimal(sol) => {
            let data = (0..n).flat_map(|k| (0..n).map(move |j| (k, j))).map(|(k, j)| &sol.x[var(k, j)] * sign(k, j)).collect();
            Some(RatMatrix::new(n, n, data)?)
        }
        _ => None,
    })
}

/// Rows in `alpha` from `top`, the remaining rows from `bottom`.
pub fn mixed_rows(top: &RatMatrix, bottom: &RatMatrix, alpha: &IndexSet) -> Result<RatMatrix> {
    let n = top.order()?;
    if bottom.n_rows() != n || bottom.n_cols() != n || alpha.universe() != n {
        return Err(Error::dim("mixed matrix of mismatched shapes"));
    }
    let rows = (0..n).map(|i| if alpha.contains(i) { top.row(i).to_vec() } else { bottom.row(i).to_vec() }).collect();
    RatMatrix::from_rows(rows)
}

/// First `α` (by size, then lexicographically) for which the matrix taking
/// rows `α` from `X` and the other rows from `Y` is a K-matrix.
pub fn kappa_index_set(x: &RatMatrix, y: &RatMatrix) -> Result<Option<IndexSet>> {
    let n = x.order()?;
    if y.n_rows() != n || y.n_cols() != n {
        return Err(Error::dim("X and Y must have the same order"));
    }
    if n > DEFAULT_SUBSET_CAP {
        return Err(Error::SizeCap { n, cap: DEFAULT_SUBSET_CAP });
    }
    if !is_z_matrix(x)? || !is_z_matrix(y)? {
        return Err(Error::Precondition("X and Y must both be Z-matrices".into()));
    }
    for alpha in IndexSet::all_subsets(n) {
        let w = mixed_rows(x, y, &alpha)?;
        // W is Z because X and Y are, so only the minors remain.
        if (0..n).all(|i| w.get(i, i).is_positive()) && minor_profile(&w)?.is_p {
            return Ok(Some(alpha));
        }
    }
    Ok(None)
}

/// Nonnegative `(r, s)` with `rᵀX + sᵀY ≥ 1`, if any.
pub fn find_weights(x: &RatMatrix, y: &RatMatrix) -> Result<Option<Seed>> {
    let n = x.order()?;
    let mut lp = LpProblem::new(2 * n);
    for j in 0..n {
        let row = (0..n).map(|k| x.get(k, j).clone()).chain((0..n).map(|k| y.get(k, j).clone())).collect();
        lp.constrain(row, Relation::Ge, Rational::one());
    }
    Ok(solve_lp(&lp)?.into_optimal().map(|sol| (sol.x[..n].to_vec(), sol.x[n..].to_vec())))
}

/// Certificate for the principal submatrix `A[α,α]`.
///
/// With `W` (rows `α` of `X`, the rest of `Y`) and `W̄` (rows `α` of `Y`, the
/// rest of `X`) both E-matrices, `A[α,α]·(X/X[ᾱ,ᾱ]) = W̄/X[ᾱ,ᾱ]`. The new
/// weights are found by LP on the reduced pair.
pub fn submatrix_certificate(a: &RatMatrix, c: &Certificate, alpha: &IndexSet) -> Result<Certificate> {
    let n = a.order()?;
    require_valid(a, c)?;
    if alpha.universe() != n {
        return Err(Error::dim("index set universe does not match matrix order"));
    }
    if alpha.is_empty() {
        return Err(Error::InvalidInput("empty index set has no principal submatrix".into()));
    }
    if alpha.is_full() {
        return Ok(c.clone());
    }
    let w = mixed_rows(&c.x, &c.y, alpha)?;
    let w_bar = mixed_rows(&c.y, &c.x, alpha)?;
    if !is_e_matrix(&w)? {
        return Err(Error::Precondition(format!("W = [X_αα X_αᾱ; Y_ᾱα Y_ᾱᾱ] is not an E-matrix for α = {alpha}")));
    }
    if !is_e_matrix(&w_bar)? {
        return Err(Error::Precondition(format!("W̄ = [Y_αα Y_αᾱ; X_ᾱα X_ᾱᾱ] is not an E-matrix for α = {alpha}")));
    }
    schur_certificate(a, c, alpha)
}

/// `A[α,α]·(X/X[ᾱ,ᾱ]) = W̄/X[ᾱ,ᾱ]` with weights found by LP, without the E
/// gate. Needs `X[ᾱ,ᾱ]` nonsingular; the result is verified before return.
pub fn schur_certificate(a: &RatMatrix, c: &Certificate, alpha: &IndexSet) -> Result<Certificate> {
    if alpha.is_full() {
        return Ok(c.clone());
    }
    let rest = alpha.complement();
    let w_bar = mixed_rows(&c.y, &c.x, alpha)?;
    let x = c.x.schur_complement(&rest)?;
    let y = w_bar.schur_complement(&rest)?;
    if !is_z_matrix(&x)? || !is_z_matrix(&y)? {
        return Err(Error::Precondition(format!("reduced pair for α = {alpha} is not a pair of Z-matrices")));
    }
    let Some((r, s)) = find_weights(&x, &y)? else {
        return Err(Error::Precondition(format!("reduced pair for α = {alpha} admits no nonnegative weights")));
    };
    let cert = Certificate { x, y, r, s };
    let sub = a.principal(alpha)?;
    let v = verify_certificate(&sub, &cert)?;
    if !v.valid {
        return Err(Error::Internal(format!("Schur certificate for α = {alpha} fails: {}", v.violations[0])));
    }
    Ok(cert)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CertificateSource {
    /// Derived from the parent certificate by Schur complements.
    Schur,
    /// Found by direct seed search on the submatrix.
    Search,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmatrixOutcome {
    pub alpha: IndexSet,
    pub certificate: Option<Certificate>,
    pub source: Option<CertificateSource>,
    /// Why the Schur construction did not apply, if it did not.
    pub schur_error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletelyHiddenReport {
    /// `X` and `Y` are both E-matrices.
    pub gate: bool,
    /// Every principal submatrix received a verified certificate.
    pub completely: bool,
    pub outcomes: Vec<SubmatrixOutcome>,
    /// Subsets for which neither route produced a certificate.
    pub witness_failures: Vec<IndexSet>,
}

/// Tries to certify every principal submatrix: first by the Schur
/// construction (which always applies when `X` is a K-matrix), then by direct
/// search.
pub fn completely_hidden_check(a: &RatMatrix, c: &Certificate) -> Result<CompletelyHiddenReport> {
    let n = a.order()?;
    if n > DEFAULT_SUBSET_CAP {
        return Err(Error::SizeCap { n, cap: DEFAULT_SUBSET_CAP });
    }
    require_valid(a, c)?;
    let gate = is_e_matrix(&c.x)? && is_e_matrix(&c.y)?;
    let mut outcomes = Vec::new();
    let mut witness_failures = Vec::new();
    for alpha in IndexSet::nonempty_subsets(n) {
        let (certificate, source, schur_error) = match schur_certificate(a, c, &alpha) {
            Ok(cert) => (Some(cert), Some(CertificateSource::Schur), None),
            Err(e @ Error::Internal(_)) => return Err(e),
            Err(e) => {
                let sub = a.principal(&alpha)?;
                match find_certificate(&sub, &extended_seeds(alpha.len()))? {
                    Some(cert) => (Some(cert), Some(CertificateSource::Search), Some(e.to_string())),
                    None => (None, None, Some(e.to_string())),
                }
            }
        };
        if certificate.is_none() {
            witness_failures.push(alpha.clone());
        }
        outcomes.push(SubmatrixOutcome { alpha, certificate, source, schur_error });
    }
    Ok(CompletelyHiddenReport { gate, completely: witness_failures.is_empty(), outcomes, witness_failures })
}

/// Certificate `(A⁻¹, I, 0, e)` for a positive type-D matrix, or `None` when
/// `A` is not one.
pub fn type_d_certificate(a: &RatMatrix) -> Result<Option<Certificate>> {
    let n = a.order()?;
    match is_type_d(a)? {
        Some(profile) if profile.positive => {}
        _ => return Ok(None),
    }
    let cert = Certificate {
        x: a.inverse()?,
        y: RatMatrix::identity(n),
        r: vec![Rational::zero(); n],
        s: vec![Rational::one(); n],
    };
    let v = verify_certificate(a, &cert)?;
    if !v.valid {
        return Err(Error::Internal(format!("type-D certificate fails: {}", v.violations[0])));
    }
    Ok(Some(cert))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsilonBound {
    Finite(Rational),
    Infinite,
}

impl EpsilonBound {
    /// Whether `eps` lies in the open interval `(0, l)`.
    pub fn admits(&self, eps: &Rational) -> bool {
        eps.is_positive()
            && match self {
                EpsilonBound::Finite(l) => eps < l,
                EpsilonBound::Infinite => true,
            }
    }
}

impl fmt::Display for EpsilonBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsilonBound::Finite(l) => f.write_str(&format_rational(l)),
            EpsilonBound::Infinite => f.write_str("inf"),
        }
    }
}

/// `l = min_i (rᵀX + sᵀY)_i / max_i |(sᵀX)_i|`, infinite when `sᵀX = 0`.
///
/// For every `ε ∈ (0, l)`, `(X, Y + εX, r, s)` certifies `A + εI`.
pub fn epsilon_bound(c: &Certificate) -> Result<EpsilonBound> {
    c.check_shapes(c.x.order()?)?;
    let (violations, combination) = structural_violations(c)?;
    if let Some(first) = violations.first() {
        return Err(Error::Precondition(format!("invalid certificate: {first}")));
    }
    let sx = c.x.vec_mul(&c.s)?;
    let denom = sx.iter().map(|v| v.abs()).max().unwrap_or_else(Rational::zero);
    if denom.is_zero() {
        return Ok(EpsilonBound::Infinite);
    }
    let numer = combination.into_iter().min().expect("nonempty");
    Ok(EpsilonBound::Finite(numer / denom))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationResult {
    pub bound_l: EpsilonBound,
    pub epsilon_used: Rational,
    /// `A + εI`.
    pub a_eps: RatMatrix,
    /// `(X, Y + εX, r, s)`.
    pub cert_eps: Certificate,
}

pub fn perturb(a: &RatMatrix, c: &Certificate, eps: &Rational) -> Result<PerturbationResult> {
    require_valid(a, c)?;
    let bound = epsilon_bound(c)?;
    if !bound.admits(eps) {
        return Err(Error::Range(format!("ε = {} must lie in (0, {bound})", format_rational(eps))));
    }
    let a_eps = a.shift_diagonal(eps)?;
    let cert_eps = Certificate { x: c.x.clone(), y: c.y.add(&c.x.scale(eps))?, r: c.r.clone(), s: c.s.clone() };
    let v = verify_certificate(&a_eps, &cert_eps)?;
    if !v.valid {
        return Err(Error::Internal(format!("perturbed certificate fails: {}", v.violations[0])));
    }
    Ok(PerturbationResult { bound_l: bound, epsilon_used: eps.clone(), a_eps, cert_eps })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyParams {
    /// `ε ≥ 0`; zero skips straight to the P₀ step.
    pub epsilon: Rational,
    /// `δ > 0`.
    pub delta: Rational,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        ClassifyParams { epsilon: Rational::one(), delta: Rational::one() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    PCertified,
    P0Certified,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    /// `x ≥ δe` from the successful step.
    pub witness: Option<Vec<Rational>>,
    /// Optimal `s` from the successful step.
    pub slack: Option<Rational>,
    /// Whether the P step ran and found a solution; `None` when skipped.
    pub step1_feasible: Option<bool>,
    pub step2_feasible: Option<bool>,
    /// No certificate accompanied the call, so the verdict holds only if `A`
    /// is in fact hidden Z.
    pub conditional: bool,
}

/// `minimize s` subject to `Ax − s·e ≥ 0`, `x ≥ δe`, `s ≥ ε`.
fn classification_lp(a: &RatMatrix, epsilon: &Rational, delta: &Rational) -> Result<LpOutcome> {
    let n = a.order()?;
    let mut obj = vec![Rational::zero(); n + 1];
    obj[n] = Rational::one();
    let mut lp = LpProblem::new(n + 1).minimize(obj);
    for i in 0..n {
        let mut row = a.row(i).to_vec();
        row.push(-Rational::one());
        lp.constrain(row, Relation::Ge, Rational::zero());
        lp.set_lower_bound(i, Some(delta.clone()));
    }
    lp.set_lower_bound(n, Some(epsilon.clone()));
    solve_lp(&lp)
}

/// Two-step P/P₀ certification for a hidden Z-matrix.
///
/// Step I (`ε > 0`): a feasible point gives `x > 0` with `Ax > 0`, which for a
/// hidden Z-matrix means P. Step II (`ε = 0`): a feasible point gives `x > 0`
/// with `Ax ≥ 0`, which means P₀. Otherwise the result is inconclusive.
pub fn classify_hidden(a: &RatMatrix, params: &ClassifyParams, certificate: Option<&Certificate>) -> Result<Classification> {
    let n = a.order()?;
    if !params.delta.is_positive() {
        return Err(Error::Range(format!("δ = {} must be positive", format_rational(&params.delta))));
    }
    if params.epsilon.is_negative() {
        return Err(Error::Range(format!("ε = {} must be nonnegative", format_rational(&params.epsilon))));
    }
    if let Some(c) = certificate {
        require_valid(a, c)?;
    }
    let conditional = certificate.is_none();
    let mut result = Classification {
        verdict: Verdict::Inconclusive,
        witness: None,
        slack: None,
        step1_feasible: None,
        step2_feasible: None,
        conditional,
    };
    if params.epsilon.is_positive() {
        let out = classification_lp(a, &params.epsilon, &params.delta)?;
        result.step1_feasible = Some(out.optimal().is_some());
        if let LpOutcome::Optimal(sol) = out {
            result.verdict = Verdict::PCertified;
            result.witness = Some(sol.x[..n].to_vec());
            result.slack = Some(sol.x[n].clone());
            return Ok(result);
        }
    }
    let out = classification_lp(a, &Rational::zero(), &params.delta)?;
    result.step2_feasible = Some(out.optimal().is_some());
    if let LpOutcome::Optimal(sol) = out {
        result.verdict = Verdict::P0Certified;
        result.witness = Some(sol.x[..n].to_vec());
        result.slack = Some(sol.x[n].clone());
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ints, ratio};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows).unwrap()
    }

    pub(crate) fn singular_hz() -> (RatMatrix, Certificate) {
        let a = m(&[&[1, 1, 0], &[-1, -1, 0], &[0, 0, 1]]);
        let c = Certificate::new(
            m(&[&[2, -1, 0], &[-1, 1, 0], &[0, -1, 3]]),
            m(&[&[1, 0, 0], &[-1, 0, 0], &[0, -1, 3]]),
            vec![ratio(8, 5), int(4), int(2)],
            vec![int(4), int(0), ratio(1, 10)],
        );
        (a, c)
    }

    pub(crate) fn p_hz() -> (RatMatrix, Certificate) {
        let a = m(&[&[1, 2, 0], &[0, 1, 0], &[-1, 0, 1]]);
        let c = Certificate::new(
            m(&[&[1, -2, 0], &[0, 1, 0], &[-1, -2, 1]]),
            m(&[&[1, 0, 0], &[0, 1, 0], &[-2, 0, 1]]),
            ints(&[3, 8, 0]),
            ints(&[0, 0, 1]),
        );
        (a, c)
    }

    fn identity_cert(n: usize, s: i64) -> Certificate {
        Certificate::new(RatMatrix::identity(n), RatMatrix::identity(n), vec![int(1); n], vec![int(s); n])
    }

    #[test]
    fn verify_examples() {
        let (a, c) = singular_hz();
        let v = verify_certificate(&a, &c).unwrap();
        assert!(v.valid, "{:?}", v.violations);
        assert_eq!(v.combination, vec![ratio(16, 5), ratio(3, 10), ratio(63, 10)]);

        let (a, c) = p_hz();
        let v = verify_certificate(&a, &c).unwrap();
        assert!(v.valid);
        assert_eq!(v.combination, ints(&[1, 2, 1]));

        assert!(verify_certificate(&RatMatrix::identity(3), &identity_cert(3, 0)).unwrap().valid);
    }

    #[test]
    fn verify_reports_first_failure() {
        let (a, mut c) = p_hz();
        c.x.set(0, 1, int(2));
        let v = verify_certificate(&a, &c).unwrap();
        assert!(!v.valid);
        assert!(matches!(v.violations[0], Violation::ProductMismatch { .. }));
        assert!(v.violations.iter().any(|x| matches!(x, Violation::XNotZ { row: 0, col: 1, .. })));

        let (a, mut c) = p_hz();
        c.s[2] = int(-1);
        let v = verify_certificate(&a, &c).unwrap();
        assert_eq!(v.violations[0].to_string(), "s[3] = -1 < 0");

        let (a, c) = p_hz();
        assert!(verify_certificate(&RatMatrix::identity(2), &c).is_err());
        let _ = a;
    }

    #[test]
    fn find_examples() {
        let a = m(&[&[-1, 0], &[-1, 2]]);
        let c = find_certificate(&a, &default_seeds(2)).unwrap().unwrap();
        assert!(verify_certificate(&a, &c).unwrap().valid);

        let z = m(&[&[3, -1, 0], &[-2, -1, -4], &[0, 0, 0]]);
        let c = find_certificate(&z, &default_seeds(3)[..1]).unwrap().unwrap();
        assert!(verify_certificate(&z, &c).unwrap().valid);

        let singular = m(&[&[1, 1], &[1, 1]]);
        assert!(find_certificate(&singular, &default_seeds(2)).unwrap().is_none());
        assert!(find_certificate(&singular, &extended_seeds(2)).unwrap().is_none());
    }

    #[test]
    fn find_with_known_seed() {
        let (a, known) = p_hz();
        let seeds = vec![(known.r.clone(), known.s.clone())];
        let c = find_certificate(&a, &seeds).unwrap().unwrap();
        assert!(verify_certificate(&a, &c).unwrap().valid);
        assert_eq!((c.r, c.s), (known.r, known.s));
    }

    #[test]
    fn kappa_examples() {
        let i = RatMatrix::identity(3);
        assert_eq!(kappa_index_set(&i, &i).unwrap(), Some(IndexSet::empty(3)));
        let (_, c) = p_hz();
        let alpha = kappa_index_set(&c.x, &c.y).unwrap().unwrap();
        let w = mixed_rows(&c.x, &c.y, &alpha).unwrap();
        assert!(crate::matclass::is_k_matrix(&w).unwrap());
        assert_eq!(kappa_index_set(&m(&[&[0]]), &m(&[&[0]])).unwrap(), None);
    }

    #[test]
    fn submatrix_examples() {
        let (a, c) = p_hz();
        assert_eq!(submatrix_certificate(&a, &c, &IndexSet::full(3)).unwrap(), c);

        let alpha = IndexSet::new(3, [0, 1]).unwrap();
        let sub = submatrix_certificate(&a, &c, &alpha).unwrap();
        assert!(verify_certificate(&m(&[&[1, 2], &[0, 1]]), &sub).unwrap().valid);
    }

    #[test]
    fn submatrix_gate_failure() {
        // A = diag(1, -1) is Z; with X = I, Y = A the mixed matrix W̄ for α = {1}
        // is A itself, whose {2} block is [-1]: not E.
        let a = m(&[&[1, 0], &[0, -1]]);
        let c = Certificate::trivial(&a).unwrap();
        let err = submatrix_certificate(&a, &c, &IndexSet::new(2, [0]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref s) if s.contains("E-matrix")), "{err}");
    }

    #[test]
    fn completely_hidden_examples() {
        let i = RatMatrix::identity(2);
        let r = completely_hidden_check(&i, &Certificate::trivial(&i).unwrap()).unwrap();
        assert!(r.gate && r.completely);

        let (a, c) = p_hz();
        let r = completely_hidden_check(&a, &c).unwrap();
        assert!(r.completely);
        for o in &r.outcomes {
            let sub = a.principal(&o.alpha).unwrap();
            assert!(verify_certificate(&sub, o.certificate.as_ref().unwrap()).unwrap().valid);
        }

        let a = m(&[&[-1, 0], &[-1, 2]]);
        let r = completely_hidden_check(&a, &Certificate::trivial(&a).unwrap()).unwrap();
        assert!(!r.gate);
        assert!(r.completely);
    }

    #[test]
    fn type_d_examples() {
        let a = m(&[&[1, 1, 1], &[1, 2, 2], &[1, 2, 3]]);
        let c = type_d_certificate(&a).unwrap().unwrap();
        assert_eq!(c.x, m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 1]]));
        assert_eq!(c.y, RatMatrix::identity(3));
        assert_eq!(c.r, ints(&[0, 0, 0]));
        assert_eq!(c.s, ints(&[1, 1, 1]));

        let c = type_d_certificate(&m(&[&[5]])).unwrap().unwrap();
        assert_eq!(c.x, RatMatrix::from_rows(vec![vec![ratio(1, 5)]]).unwrap());
        assert_eq!((c.r, c.s), (ints(&[0]), ints(&[1])));

        assert!(type_d_certificate(&m(&[&[1, 2], &[1, 1]])).unwrap().is_none());
    }

    #[test]
    fn epsilon_bound_examples() {
        let (_, c) = p_hz();
        assert_eq!(epsilon_bound(&c).unwrap(), EpsilonBound::Finite(ratio(1, 2)));
        let (a, _) = p_hz();
        let _ = a;
        assert_eq!(epsilon_bound(&identity_cert(2, 0)).unwrap(), EpsilonBound::Infinite);
        assert_eq!(epsilon_bound(&identity_cert(2, 1)).unwrap(), EpsilonBound::Finite(int(2)));
        let mut bad = identity_cert(2, 1);
        bad.r = ints(&[-5, 1]);
        assert!(matches!(epsilon_bound(&bad), Err(Error::Precondition(_))));
    }

    #[test]
    fn perturb_examples() {
        let (a, c) = p_hz();
        let p = perturb(&a, &c, &ratio(1, 4)).unwrap();
        assert_eq!(p.cert_eps.combination().unwrap(), vec![ratio(3, 4), ratio(3, 2), ratio(5, 4)]);
        assert_eq!(p.a_eps, a.shift_diagonal(&ratio(1, 4)).unwrap());
        assert!(verify_certificate(&p.a_eps, &p.cert_eps).unwrap().valid);

        let i = RatMatrix::identity(2);
        assert!(perturb(&i, &identity_cert(2, 1), &int(1)).is_ok());

        assert!(matches!(perturb(&a, &c, &ratio(1, 2)), Err(Error::Range(_))));
        assert!(matches!(perturb(&a, &c, &int(0)), Err(Error::Range(_))));
    }

    #[test]
    fn classify_examples() {
        let (a, c) = p_hz();
        let r = classify_hidden(&a, &ClassifyParams::default(), Some(&c)).unwrap();
        assert_eq!(r.verdict, Verdict::PCertified);
        assert!(!r.conditional);
        let x = r.witness.unwrap();
        assert!(x.iter().all(|v| *v >= int(1)));
        // The point x = (1,4,5) with s = 4 is feasible too.
        let ax = a.mul_vec(&ints(&[1, 4, 5])).unwrap();
        assert_eq!(ax.iter().map(|v| v - int(4)).collect::<Vec<_>>(), ints(&[5, 0, 0]));

        let a = m(&[&[-1, 0], &[-1, 2]]);
        let r = classify_hidden(&a, &ClassifyParams::default(), None).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!((r.step1_feasible, r.step2_feasible), (Some(false), Some(false)));
        assert!(r.conditional);

        let i = RatMatrix::identity(3);
        let params = ClassifyParams { epsilon: ratio(1, 2), delta: int(2) };
        let r = classify_hidden(&i, &params, None).unwrap();
        assert_eq!(r.verdict, Verdict::PCertified);
        let x = r.witness.unwrap();
        assert!(x.iter().all(|v| *v >= int(2)));
        assert_eq!(r.slack.unwrap(), ratio(1, 2));
    }

    #[test]
    fn classify_p0_step() {
        // Singular Z-matrix with a positive null vector: P₀ but not P.
        let a = m(&[&[1, -1], &[-1, 1]]);
        let r = classify_hidden(&a, &ClassifyParams::default(), Some(&Certificate::trivial(&a).unwrap())).unwrap();
        assert_eq!(r.verdict, Verdict::P0Certified);
        assert_eq!(r.step1_feasible, Some(false));
        let params = ClassifyParams { epsilon: int(0), delta: int(1) };
        let r = classify_hidden(&a, &params, None).unwrap();
        assert_eq!(r.verdict, Verdict::P0Certified);
        assert_eq!(r.step1_feasible, None);
    }

    #[test]
    fn classify_rejects_bad_params() {
        let i = RatMatrix::identity(2);
        let bad = ClassifyParams { epsilon: int(1), delta: int(0) };
        assert!(matches!(classify_hidden(&i, &bad, None), Err(Error::Range(_))));
        let bad = ClassifyParams { epsilon: int(-1), delta: int(1) };
        assert!(matches!(classify_hidden(&i, &bad, None), Err(Error::Range(_))));
    }

    #[test]
    fn permuted_certificate_is_valid() {
        let (a, c) = p_hz();
        for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]] {
            let pa = a.principal_permute(&perm).unwrap();
            let pc = c.permuted(&perm).unwrap();
            assert!(verify_certificate(&pa, &pc).unwrap().valid, "{perm:?}");
        }
    }
}
