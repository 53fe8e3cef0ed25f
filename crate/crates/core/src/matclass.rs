//! Decision procedures for the matrix classes used with hidden Z-matrices.
//!
//! Everything is exact. Procedures that sweep principal submatrices are
//! exponential in the order and refuse inputs above a cap
//! ([`crate::DEFAULT_SUBSET_CAP`] unless overridden).

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::lpcore::{strict_feasibility, Relation, StrictSystem};
use crate::{Error, IndexSet, RatMatrix, Rational, Result, DEFAULT_SUBSET_CAP};

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap || n > 63 {
        return Err(Error::SizeCap { n, cap: cap.min(63) });
    }
    Ok(())
}

/// Off-diagonal entries are all nonpositive.
pub fn is_z_matrix(m: &RatMatrix) -> Result<bool> {
    let n = m.order()?;
    Ok((0..n).all(|i| (0..n).all(|j| i == j || !m.get(i, j).is_positive())))
}

/// All principal minors of a square matrix, indexed by subset bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorProfile {
    n: usize,
    /// `minors[mask]` is the minor on the subset `mask`; slot 0 holds the
    /// empty minor, 1.
    minors: Vec<Rational>,
    pub is_p: bool,
    pub is_p0: bool,
    pub is_almost_p: bool,
    pub is_almost_p0: bool,
    pub is_n: bool,
}

impl MinorProfile {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn minor(&self, alpha: &IndexSet) -> &Rational {
        &self.minors[alpha.mask() as usize]
    }

    /// `(subset, minor)` over all nonempty subsets, by size then lex.
    pub fn iter(&self) -> impl Iterator<Item = (IndexSet, &Rational)> + '_ {
        IndexSet::nonempty_subsets(self.n).into_iter().map(move |s| {
            let v = &self.minors[s.mask() as usize];
            (s, v)
        })
    }

    /// Rebuilds a profile from a full table of minors (`2ⁿ` entries, slot 0
    /// ignored), deriving every flag from the values.
    pub fn from_minors(n: usize, minors: Vec<Rational>) -> Result<Self> {
        if minors.len() != 1usize << n {
            return Err(Error::dim(format!("{} minors for order {n}", minors.len())));
        }
        let full = (1usize << n) - 1;
        let proper = |pred: &dyn Fn(&Rational) -> bool| (1..full).all(|mask| pred(&minors[mask]));
        let all = |pred: &dyn Fn(&Rational) -> bool| (1..=full).all(|mask| pred(&minors[mask]));
        let is_p = all(&|v| v.is_positive());
        let is_p0 = all(&|v| !v.is_negative());
        let det_negative = minors[full].is_negative();
        let is_almost_p = det_negative && proper(&|v| v.is_positive());
        let is_almost_p0 = det_negative && proper(&|v| !v.is_negative());
        let is_n = all(&|v| v.is_negative());
        Ok(MinorProfile { n, minors, is_p, is_p0, is_almost_p, is_almost_p0, is_n })
    }
}

pub fn minor_profile(m: &RatMatrix) -> Result<MinorProfile> {
    minor_profile_capped(m, DEFAULT_SUBSET_CAP)
}

pub fn minor_profile_capped(m: &RatMatrix, cap: usize) -> Result<MinorProfile> {
    let n = m.order()?;
    check_cap(n, cap)?;
    let minors = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| m.principal_minor(&IndexSet::from_mask(n, mask)))
        .collect::<Result<Vec<_>>>()?;
    MinorProfile::from_minors(n, minors)
}

/// Z-matrix with all principal minors positive.
pub fn is_k_matrix(m: &RatMatrix) -> Result<bool> {
    Ok(is_z_matrix(m)? && minor_profile(m)?.is_p)
}

/// Z-matrix with all principal minors nonnegative.
pub fn is_k0_matrix(m: &RatMatrix) -> Result<bool> {
    Ok(is_z_matrix(m)? && minor_profile(m)?.is_p0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SMatrixOutcome {
    pub result: bool,
    /// Some `x > 0` with `Mx > 0`, when `result` holds.
    pub witness: Option<Vec<Rational>>,
}

/// S-matrix test: is there an `x > 0` with `Mx > 0`?
pub fn is_s_matrix(m: &RatMatrix) -> Result<SMatrixOutcome> {
    let n = m.order()?;
    let mut sys = StrictSystem::new(n);
    sys.normalize_sum();
    for i in 0..n {
        let mut unit = vec![Rational::zero(); n];
        unit[i] = Rational::from_integer(1.into());
        sys.strictly_positive(unit);
        sys.strictly_positive(m.row(i).to_vec());
    }
    let out = strict_feasibility(&sys)?;
    Ok(SMatrixOutcome { result: out.feasible, witness: out.witness })
}

/// Whether some `x_α > 0` (normalized to sum 1) makes `M[α,α]·x_α` satisfy the
/// given sign pattern on every row: strictly negative when `strict_rows`,
/// nonpositive otherwise.
fn support_violates(sub: &RatMatrix, strict_rows: bool) -> Result<bool> {
    let k = sub.n_rows();
    let mut sys = StrictSystem::new(k);
    sys.normalize_sum();
    for i in 0..k {
        let mut unit = vec![Rational::zero(); k];
        unit[i] = Rational::from_integer(1.into());
        sys.strictly_positive(unit);
        if strict_rows {
            sys.strictly_positive(sub.row(i).iter().map(|v| -v).collect());
        } else {
            sys.require(sub.row(i).to_vec(), Relation::Le, Rational::zero());
        }
    }
    Ok(strict_feasibility(&sys)?.feasible)
}

fn sweep_supports(m: &RatMatrix, cap: usize, strict_rows: bool) -> Result<bool> {
    let n = m.order()?;
    check_cap(n, cap)?;
    let violated = IndexSet::nonempty_subsets(n)
        .into_par_iter()
        .map(|alpha| support_violates(&m.principal(&alpha)?, strict_rows))
        .collect::<Result<Vec<bool>>>()?;
    Ok(!violated.into_iter().any(|v| v))
}

/// E₀ (semimonotone): every `0 ≠ x ≥ 0` has some `k` with `x_k > 0` and
/// `(Mx)_k ≥ 0`. Decided support by support: no `x_α > 0` may make
/// `M[α,α]·x_α` strictly negative.
pub fn is_e0_matrix(m: &RatMatrix) -> Result<bool> {
    is_e0_matrix_capped(m, DEFAULT_SUBSET_CAP)
}

pub fn is_e0_matrix_capped(m: &RatMatrix, cap: usize) -> Result<bool> {
    sweep_supports(m, cap, true)
}

/// E (strictly semimonotone): every `0 ≠ x ≥ 0` has some `k` with `x_k > 0`
/// and `(Mx)_k > 0`. Per support: no `x_α > 0` with `M[α,α]·x_α ≤ 0`.
pub fn is_e_matrix(m: &RatMatrix) -> Result<bool> {
    is_e_matrix_capped(m, DEFAULT_SUBSET_CAP)
}

pub fn is_e_matrix_capped(m: &RatMatrix, cap: usize) -> Result<bool> {
    sweep_supports(m, cap, false)
}

/// S̄: every principal submatrix is an S-matrix.
pub fn is_sbar_matrix(m: &RatMatrix) -> Result<bool> {
    is_sbar_matrix_capped(m, DEFAULT_SUBSET_CAP)
}

pub fn is_sbar_matrix_capped(m: &RatMatrix, cap: usize) -> Result<bool> {
    let n = m.order()?;
    check_cap(n, cap)?;
    let results = IndexSet::nonempty_subsets(n)
        .into_par_iter()
        .map(|alpha| Ok(is_s_matrix(&m.principal(&alpha)?)?.result))
        .collect::<Result<Vec<bool>>>()?;
    Ok(results.into_iter().all(|r| r))
}

/// Parameters of a type-D matrix, `a_ij = alphas[min(i, j)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeDProfile {
    pub alphas: Vec<Rational>,
    pub positive: bool,
}

impl TypeDProfile {
    /// The matrix `a_ij = α_min(i,j)`.
    pub fn to_matrix(&self) -> RatMatrix {
        let n = self.alphas.len();
        let data = (0..n).flat_map(|i| (0..n).map(move |j| self.alphas[i.min(j)].clone())).collect();
        RatMatrix::new(n, n, data).expect("nonempty profile")
    }
}

/// Detects `a_ij = α_min(i,j)` with strictly increasing `α`.
pub fn is_type_d(m: &RatMatrix) -> Result<Option<TypeDProfile>> {
    let n = m.order()?;
    let alphas: Vec<Rational> = (0..n).map(|i| m.get(i, i).clone()).collect();
    let pattern = (0..n).all(|i| (0..n).all(|j| *m.get(i, j) == alphas[i.min(j)]));
    let increasing = alphas.windows(2).all(|w| w[0] < w[1]);
    if !(pattern && increasing) {
        return Ok(None);
    }
    let positive = alphas[0].is_positive();
    Ok(Some(TypeDProfile { alphas, positive }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum NCategory {
    FirstCategory,
    SecondCategory,
    NotN,
}

/// N-matrix category: `NotN` unless every principal minor is negative; then
/// first category iff some entry is positive.
pub fn n_category(m: &RatMatrix) -> Result<NCategory> {
    if !minor_profile(m)?.is_n {
        return Ok(NCategory::NotN);
    }
    if m.entries().iter().any(|v| v.is_positive()) {
        Ok(NCategory::FirstCategory)
    } else {
        Ok(NCategory::SecondCategory)
    }
}

/// Everything the sweep-based predicates report for one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSummary {
    pub z: bool,
    pub k: bool,
    pub k0: bool,
    pub p: bool,
    pub p0: bool,
    pub almost_p: bool,
    pub almost_p0: bool,
    pub n_category: NCategory,
    pub s: bool,
    pub sbar: bool,
    pub e: bool,
    pub e0: bool,
    pub type_d: Option<TypeDProfile>,
}

pub fn summarize(m: &RatMatrix, cap: usize) -> Result<ClassSummary> {
    let z = is_z_matrix(m)?;
    let profile = minor_profile_capped(m, cap)?;
    let n_category = if !profile.is_n {
        NCategory::NotN
    } else if m.entries().iter().any(|v| v.is_positive()) {
        NCategory::FirstCategory
    } else {
        NCategory::SecondCategory
    };
    Ok(ClassSummary {
        z,
        k: z && profile.is_p,
        k0: z && profile.is_p0,
        p: profile.is_p,
        p0: profile.is_p0,
        almost_p: profile.is_almost_p,
        almost_p0: profile.is_almost_p0,
        n_category,
        s: is_s_matrix(m)?.result,
        sbar: is_sbar_matrix_capped(m, cap)?,
        e: is_e_matrix_capped(m, cap)?,
        e0: is_e0_matrix_capped(m, cap)?,
        type_d: is_type_d(m)?,
    })
}
