//! Seeded instance generators and the property suites built on them.
//!
//! Every suite draws instances that satisfy a property's hypotheses, checks the
//! conclusion exactly and records each counterexample with the seed that
//! reproduces it. Draws that miss the hypotheses are counted as skipped.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::gameval::{game_value, Sign};
use crate::hiddenz::{
    classify_hidden, completely_hidden_check, default_seeds, extended_seeds, find_certificate, find_weights, mixed_rows,
    submatrix_certificate, type_d_certificate, verify_certificate, Certificate, ClassifyParams, Verdict,
};
use crate::lcpsolve::{
    enumerate_solutions, lp_reformulation_solve, unique_nondegenerate_check, validate_solution, LcpInstance, SolveStatus,
    UniquenessReport,
};
use crate::lpcore::{solve_lp, LpProblem, Relation};
use crate::matclass::{is_e_matrix, is_s_matrix, is_sbar_matrix, minor_profile, n_category, NCategory, TypeDProfile};
use crate::rational::{int, ratio};
use crate::{Error, IndexSet, RatMatrix, Rational, Result};

pub const DEFAULT_ENTRY_BOUND: i64 = 9;
/// Largest `n_max` a suite accepts.
pub const MAX_SUITE_ORDER: usize = 8;
pub const REPORT_SCHEMA: &str = "lcplab/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GenKind {
    /// Off-diagonal entries ≤ 0, arbitrary diagonal.
    Z,
    /// Z with a strictly row-dominant positive diagonal.
    K,
    /// Strictly row-dominant positive diagonal, arbitrary off-diagonal signs.
    P,
    /// `A = Y X⁻¹` with `X`, `Y` both K; `r = 0`.
    HiddenZ,
    /// `A = Y X⁻¹` with `X` K and `Y` merely Z.
    HiddenZWeak,
    /// `A = Y X⁻¹` with `X` K and `Y` a Z-matrix with zero row sums.
    HiddenZSingular,
    /// `a_ij = α_min(i,j)` with positive strictly increasing `α`.
    TypeD,
    /// Last row a random integer combination of the others.
    Singular,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub seed: u64,
    pub entry_bound: i64,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, seed: u64) -> Self {
        GenSpec { kind, n, seed, entry_bound: DEFAULT_ENTRY_BOUND }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub matrix: RatMatrix,
    /// Present for the hidden-Z kinds and `TypeD`; always verified.
    pub certificate: Option<Certificate>,
}

fn int_matrix(n: usize, mut entry: impl FnMut(usize, usize) -> i64) -> RatMatrix {
    let data = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| int(entry(i, j))).collect::<Vec<_>>();
    RatMatrix::new(n, n, data).expect("n ≥ 1")
}

/// Off-diagonal entries from `off`, diagonal `Σ|off| + extra`.
fn dominant(rng: &mut ChaCha8Rng, n: usize, off: (i64, i64), extra: (i64, i64)) -> RatMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            if i != j {
                *v = rng.gen_range(off.0..=off.1);
            }
        }
        let sum: i64 = row.iter().map(|v| v.abs()).sum();
        row[i] = sum + rng.gen_range(extra.0..=extra.1);
    }
    int_matrix(n, |i, j| rows[i][j])
}

fn z_matrix(rng: &mut ChaCha8Rng, n: usize, b: i64) -> RatMatrix {
    int_matrix(n, |i, j| if i == j { rng.gen_range(-b..=b) } else { rng.gen_range(-b..=0) })
}

/// `(r, s) ≥ 0` with `rᵀX + sᵀY ≥ 1`; `r` is forced to zero when `only_s`.
fn weights(x: &RatMatrix, y: &RatMatrix, only_s: bool) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let n = x.n_rows();
    if !only_s {
        return find_weights(x, y)?.ok_or_else(|| Error::Internal("generated pair admits no weights".into()));
    }
    let mut lp = LpProblem::new(n);
    for j in 0..n {
        lp.constrain(y.column(j), Relation::Ge, Rational::one());
    }
    let sol = solve_lp(&lp)?.into_optimal().ok_or_else(|| Error::Internal("sᵀY ≥ 1 is infeasible".into()))?;
    Ok((vec![Rational::zero(); n], sol.x))
}

fn hidden_from(x: RatMatrix, y: RatMatrix, only_s: bool) -> Result<Generated> {
    let a = y.matmul(&x.inverse()?)?;
    let (r, s) = weights(&x, &y, only_s)?;
    let cert = Certificate::new(x, y, r, s);
    Ok(Generated { matrix: a, certificate: Some(cert) })
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    let (n, b) = (spec.n, spec.entry_bound);
    if n == 0 || b < 1 {
        return Err(Error::InvalidInput(format!("generator needs n ≥ 1 and entry bound ≥ 1, got n = {n}, bound = {b}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let plain = |m: RatMatrix| Generated { matrix: m, certificate: None };
    let out = match spec.kind {
        GenKind::Z => plain(z_matrix(&mut rng, n, b)),
        GenKind::K => plain(dominant(&mut rng, n, (-b, 0), (1, b))),
        GenKind::P => plain(dominant(&mut rng, n, (-b, b), (1, b))),
        GenKind::General => plain(int_matrix(n, |_, _| rng.gen_range(-b..=b))),
        GenKind::HiddenZ => {
            let x = dominant(&mut rng, n, (-b, 0), (1, b));
            let y = dominant(&mut rng, n, (-b, 0), (1, b));
            hidden_from(x, y, true)?
        }
        GenKind::HiddenZWeak => {
            let x = dominant(&mut rng, n, (-b, 0), (1, b));
            let y = z_matrix(&mut rng, n, b);
            hidden_from(x, y, false)?
        }
        GenKind::HiddenZSingular => {
            let x = dominant(&mut rng, n, (-b, 0), (1, b));
            let y = dominant(&mut rng, n, (-b, 0), (0, 0));
            hidden_from(x, y, false)?
        }
        GenKind::TypeD => {
            let den = rng.gen_range(1..=3);
            let mut acc = 0;
            let alphas = (0..n)
                .map(|_| {
                    acc += rng.gen_range(1..=b);
                    ratio(acc, den)
                })
                .collect();
            let a = TypeDProfile { alphas, positive: true }.to_matrix();
            let cert = type_d_certificate(&a)?.ok_or_else(|| Error::Internal("type-D draw failed the structure test".into()))?;
            Generated { matrix: a, certificate: Some(cert) }
        }
        GenKind::Singular => {
            if n == 1 {
                plain(int_matrix(1, |_, _| 0))
            } else {
                let mut rows: Vec<Vec<i64>> = (0..n - 1).map(|_| (0..n).map(|_| rng.gen_range(-b..=b)).collect()).collect();
                let coeffs: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-2..=2)).collect();
                let last = (0..n).map(|j| rows.iter().zip(&coeffs).map(|(r, c)| r[j] * c).sum()).collect();
                rows.push(last);
                plain(int_matrix(n, |i, j| rows[i][j]))
            }
        }
    };
    if let Some(c) = &out.certificate {
        let v = verify_certificate(&out.matrix, c)?;
        if !v.valid {
            return Err(Error::Internal(format!("generated certificate fails: {}", v.violations[0])));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SuiteId {
    /// Hidden Z: P ⟺ S.
    T2_2,
    /// E ⟺ S̄.
    T2_5,
    /// Certificates survive simultaneous row/column permutation.
    T3_1,
    /// Hidden Z with `x > 0`, `Ax ≥ 0` ⟹ P₀.
    T3_2,
    /// Singular hidden Z ⟹ value not positive.
    T3_3,
    /// Hidden Z with positive value ⟹ P.
    T3_4,
    /// Positive type D ⟹ hidden Z.
    T3_5,
    /// Hidden Z almost P ⟹ inverse is N of the second category.
    T3_6,
    /// Unique non-degenerate LCP solution under E₀ and basis non-degeneracy.
    T3_7,
    /// W, W̄ both E ⟹ `A[α,α]` and `A[ᾱ,ᾱ]` hidden Z.
    T3_8,
    /// X, Y both E ⟹ completely hidden Z.
    T3_9,
    /// LP reformulation solves the LCP with optimum zero.
    T3_10,
    /// Sign of the game value is preserved by principal pivoting.
    PptSign,
    /// Solutions of `LCP(0, A)` form a cone.
    ConeHomogeneous,
}

impl SuiteId {
    pub const ALL: [SuiteId; 14] = [
        SuiteId::T2_2,
        SuiteId::T2_5,
        SuiteId::T3_1,
        SuiteId::T3_2,
        SuiteId::T3_3,
        SuiteId::T3_4,
        SuiteId::T3_5,
        SuiteId::T3_6,
        SuiteId::T3_7,
        SuiteId::T3_8,
        SuiteId::T3_9,
        SuiteId::T3_10,
        SuiteId::PptSign,
        SuiteId::ConeHomogeneous,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::T2_2 => "T2.2",
            SuiteId::T2_5 => "T2.5",
            SuiteId::T3_1 => "T3.1",
            SuiteId::T3_2 => "T3.2",
            SuiteId::T3_3 => "T3.3",
            SuiteId::T3_4 => "T3.4",
            SuiteId::T3_5 => "T3.5",
            SuiteId::T3_6 => "T3.6",
            SuiteId::T3_7 => "T3.7",
            SuiteId::T3_8 => "T3.8",
            SuiteId::T3_9 => "T3.9",
            SuiteId::T3_10 => "T3.10",
            SuiteId::PptSign => "PPT-sign",
            SuiteId::ConeHomogeneous => "cone-homogeneous",
        }
    }

    pub fn registered() -> String {
        SuiteId::ALL.map(|s| s.as_str()).join(", ")
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub trials: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { trials: 100, n_max: 4, seed: 1, jobs: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteViolation {
    pub trial: usize,
    /// Seed of the trial's generator; replays the instance.
    pub seed: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema: String,
    pub theorem_id: String,
    pub trials: usize,
    pub seed: u64,
    pub n_max: usize,
    pub checked: usize,
    pub skipped: usize,
    pub skip_reasons: BTreeMap<String, usize>,
    /// Observations that are recorded but not asserted.
    pub notes: BTreeMap<String, usize>,
    pub violations: Vec<SuiteViolation>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

enum Trial {
    Checked(Option<&'static str>),
    Skipped(&'static str),
    Violation(String),
}

use Trial::{Checked, Skipped, Violation};

/// SplitMix64 step; decorrelates per-trial seeds drawn from one suite seed.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut z = seed.wrapping_add((trial as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run_suite(id: SuiteId, cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.n_max == 0 || cfg.n_max > MAX_SUITE_ORDER {
        return Err(Error::Range(format!("n_max = {} must lie in 1..={MAX_SUITE_ORDER}", cfg.n_max)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let results: Vec<(u64, Result<Trial>)> = pool.install(|| {
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let seed = trial_seed(cfg.seed, t);
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (seed, run_trial(id, &mut rng, cfg.n_max))
            })
            .collect()
    });
    let mut report = SuiteReport {
        schema: REPORT_SCHEMA.into(),
        theorem_id: id.as_str().into(),
        trials: cfg.trials,
        seed: cfg.seed,
        n_max: cfg.n_max,
        checked: 0,
        skipped: 0,
        skip_reasons: BTreeMap::new(),
        notes: BTreeMap::new(),
        violations: Vec::new(),
    };
    for (trial, (seed, result)) in results.into_iter().enumerate() {
        match result {
            Ok(Checked(note)) => {
                report.checked += 1;
                if let Some(note) = note {
                    *report.notes.entry(note.into()).or_default() += 1;
                }
            }
            Ok(Skipped(reason)) => {
                report.skipped += 1;
                *report.skip_reasons.entry(reason.into()).or_default() += 1;
            }
            Ok(Violation(detail)) => report.violations.push(SuiteViolation { trial, seed, detail }),
            Err(e) => report.violations.push(SuiteViolation { trial, seed, detail: format!("error: {e}") }),
        }
    }
    Ok(report)
}

fn draw(rng: &mut ChaCha8Rng, kind: GenKind, n: usize) -> Result<Generated> {
    generate(&GenSpec::new(kind, n, rng.gen()))
}

/// A certified hidden-Z draw: a plain Z-matrix with the trivial certificate or
/// one of the three `Y X⁻¹` constructions.
fn draw_hidden(rng: &mut ChaCha8Rng, n: usize) -> Result<(RatMatrix, Certificate)> {
    let kind = [GenKind::Z, GenKind::HiddenZ, GenKind::HiddenZWeak, GenKind::HiddenZSingular][rng.gen_range(0..4)];
    let g = draw(rng, kind, n)?;
    let cert = match g.certificate {
        Some(c) => c,
        None => Certificate::trivial(&g.matrix)?,
    };
    Ok((g.matrix, cert))
}

fn random_q(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| int(rng.gen_range(-9..=9))).collect()
}

/// `q = w − Az` for random complementary `z, w ≥ 0`, so `(z, w)` solves the LCP.
fn planted_q(rng: &mut ChaCha8Rng, a: &RatMatrix) -> Result<Vec<Rational>> {
    let n = a.n_rows();
    let mut z = vec![Rational::zero(); n];
    let mut w = vec![Rational::zero(); n];
    for i in 0..n {
        let v = int(rng.gen_range(0..=5));
        if rng.gen_bool(0.5) {
            z[i] = v;
        } else {
            w[i] = v;
        }
    }
    let az = a.mul_vec(&z)?;
    Ok(w.iter().zip(&az).map(|(wi, ai)| wi - ai).collect())
}

fn run_trial(id: SuiteId, rng: &mut ChaCha8Rng, n_max: usize) -> Result<Trial> {
    let order = |rng: &mut ChaCha8Rng, cap: usize| rng.gen_range(1..=n_max.min(cap));
    match id {
        SuiteId::T2_2 => {
            let n = order(rng, 8);
            let (a, _) = draw_hidden(rng, n)?;
            let p = minor_profile(&a)?.is_p;
            let s = is_s_matrix(&a)?.result;
            Ok(if p == s { Checked(None) } else { Violation(format!("A = {a}: P = {p}, S = {s}")) })
        }
        SuiteId::T2_5 => {
            let n = order(rng, 8);
            let kind = [GenKind::General, GenKind::P, GenKind::Z, GenKind::K][rng.gen_range(0..4)];
            let mut spec = GenSpec::new(kind, n, rng.gen());
            if kind == GenKind::General {
                spec.entry_bound = 2;
            }
            let a = generate(&spec)?.matrix;
            let e = is_e_matrix(&a)?;
            let sbar = is_sbar_matrix(&a)?;
            Ok(if e == sbar { Checked(if e { Some("E") } else { Some("not E") }) } else { Violation(format!("A = {a}: E = {e}, S̄ = {sbar}")) })
        }
        SuiteId::T3_1 => {
            let n = order(rng, 8);
            let (a, c) = draw_hidden(rng, n)?;
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            let v = verify_certificate(&a.principal_permute(&perm)?, &c.permuted(&perm)?)?;
            Ok(match v.violations.first() {
                None => Checked(None),
                Some(first) => Violation(format!("A = {a}, permutation {perm:?}: {first}")),
            })
        }
        SuiteId::T3_2 => {
            let n = order(rng, 8);
            let (a, c) = draw_hidden(rng, n)?;
            let params = ClassifyParams { epsilon: Rational::zero(), delta: Rational::one() };
            let r = classify_hidden(&a, &params, Some(&c))?;
            if r.verdict != Verdict::P0Certified {
                return Ok(Skipped("no x > 0 with Ax ≥ 0"));
            }
            let profile = minor_profile(&a)?;
            Ok(if profile.is_p0 {
                Checked(if profile.is_p { Some("P") } else { Some("P0 but not P") })
            } else {
                Violation(format!("A = {a} has x > 0 with Ax ≥ 0 but a negative principal minor"))
            })
        }
        SuiteId::T3_3 => {
            let n = order(rng, 8);
            let (a, c) = if rng.gen_bool(0.5) {
                let (a, c) = draw_hidden_singular(rng, n)?;
                (a, Some(c))
            } else {
                let a = draw(rng, GenKind::Singular, n)?.matrix;
                let c = find_certificate(&a, &default_seeds(n))?;
                (a, c)
            };
            if !a.det()?.is_zero() {
                return Ok(Skipped("nonsingular draw"));
            }
            let Some(c) = c else { return Ok(Skipped("no certificate found")) };
            if !verify_certificate(&a, &c)?.valid {
                return Ok(Skipped("no certificate found"));
            }
            let g = game_value(&a)?;
            Ok(if g.sign == Sign::Positive {
                Violation(format!("singular hidden Z A = {a} has value {}", g.value))
            } else {
                Checked(None)
            })
        }
        SuiteId::T3_4 => {
            let n = order(rng, 8);
            let (a, c) = draw_hidden(rng, n)?;
            if game_value(&a)?.sign != Sign::Positive {
                return Ok(Skipped("v(A) ≤ 0"));
            }
            if !minor_profile(&a)?.is_p {
                return Ok(Violation(format!("A = {a} has positive value but is not P")));
            }
            let verdict = classify_hidden(&a, &ClassifyParams::default(), Some(&c))?.verdict;
            Ok(if verdict == Verdict::PCertified {
                Checked(None)
            } else {
                Violation(format!("A = {a} has positive value but the P step found no point"))
            })
        }
        SuiteId::T3_5 => {
            let n = order(rng, 8);
            let g = draw(rng, GenKind::TypeD, n)?;
            let c = g.certificate.expect("type-D draws carry a certificate");
            if !verify_certificate(&g.matrix, &c)?.valid {
                return Ok(Violation(format!("type-D certificate for {} fails", g.matrix)));
            }
            Ok(if minor_profile(&g.matrix)?.is_p { Checked(None) } else { Violation(format!("type-D {} is not P", g.matrix)) })
        }
        SuiteId::T3_6 => {
            let n = order(rng, 4);
            let kind = [GenKind::Z, GenKind::HiddenZWeak][rng.gen_range(0..2)];
            let g = draw(rng, kind, n)?;
            if !minor_profile(&g.matrix)?.is_almost_p {
                return Ok(Skipped("not almost P"));
            }
            let inv = g.matrix.inverse()?;
            Ok(match n_category(&inv)? {
                NCategory::SecondCategory => Checked(None),
                other => Violation(format!("A = {}: inverse {inv} is {other:?}", g.matrix)),
            })
        }
        SuiteId::T3_7 => {
            let n = order(rng, 5);
            let (a, c) = draw_hidden(rng, n)?;
            let inst = LcpInstance::new(a, random_q(rng, n))?;
            Ok(match unique_nondegenerate_check(&inst, &c)? {
                UniquenessReport::Pass(_) => Checked(None),
                UniquenessReport::Skipped(h) => Skipped(static_reason(&h)),
                UniquenessReport::Violation(d) => Violation(format!("A = {}, q = {:?}: {d}", inst.a, fmt_vec(&inst.q))),
            })
        }
        SuiteId::T3_8 => {
            if n_max < 2 {
                return Ok(Skipped("order 1 has no proper index set"));
            }
            let n = rng.gen_range(2..=n_max.min(6));
            let (a, c) = draw_hidden(rng, n)?;
            let alpha = IndexSet::from_mask(n, rng.gen_range(1..(1u64 << n) - 1));
            let w = mixed_rows(&c.x, &c.y, &alpha)?;
            let w_bar = mixed_rows(&c.y, &c.x, &alpha)?;
            if !is_e_matrix(&w)? || !is_e_matrix(&w_bar)? {
                return Ok(Skipped("W or W̄ is not E"));
            }
            let mut note = None;
            for beta in [alpha.clone(), alpha.complement()] {
                match submatrix_certificate(&a, &c, &beta) {
                    Ok(_) => {}
                    Err(e @ Error::Internal(_)) => return Err(e),
                    Err(_) => {
                        let sub = a.principal(&beta)?;
                        if find_certificate(&sub, &extended_seeds(beta.len()))?.is_none() {
                            return Ok(Skipped("submatrix certificate unknown"));
                        }
                        note = Some("Schur route failed, search succeeded");
                    }
                }
            }
            Ok(Checked(note))
        }
        SuiteId::T3_9 => {
            let n = order(rng, 5);
            let (a, c) = draw_hidden(rng, n)?;
            let report = completely_hidden_check(&a, &c)?;
            if !report.gate {
                return Ok(Skipped("X or Y is not E"));
            }
            Ok(if report.completely {
                Checked(None)
            } else {
                let failed: Vec<String> = report.witness_failures.iter().map(|s| s.to_string()).collect();
                Violation(format!("A = {a}: no certificate for submatrices {}", failed.join(" ")))
            })
        }
        SuiteId::T3_10 => {
            let n = order(rng, 5);
            let (a, c) = draw_hidden(rng, n)?;
            let mut inst = LcpInstance::new(a, random_q(rng, n))?;
            if enumerate_solutions(&inst)?.solutions.is_empty() {
                // The LP must also report infeasibility; then plant a solution
                // so every trial exercises a solvable instance.
                let out = lp_reformulation_solve(&inst, &c)?;
                if out.status != SolveStatus::Infeasible {
                    let q = fmt_vec(&inst.q);
                    return Ok(Violation(format!("A = {}, q = {q:?}: LCP has no solution, LP reports {:?}", inst.a, out.status)));
                }
                inst.q = planted_q(rng, &inst.a)?;
            }
            let out = lp_reformulation_solve(&inst, &c)?;
            let describe = || format!("A = {}, q = {:?}", inst.a, fmt_vec(&inst.q));
            let Some(sol) = &out.solution else {
                return Ok(Violation(format!("{}: solvable LCP, LP reports {:?}", describe(), out.status)));
            };
            if !validate_solution(&inst, &sol.z)?.is_valid() {
                return Ok(Violation(format!("{}: z = {:?} does not solve the LCP", describe(), fmt_vec(&sol.z))));
            }
            Ok(match out.objective {
                Some(v) if v.is_zero() => Checked(None),
                Some(v) => Violation(format!("{}: optimum {v} ≠ 0", describe())),
                None => Violation(format!("{}: no objective reported", describe())),
            })
        }
        SuiteId::PptSign => {
            let n = order(rng, 4);
            let a = draw(rng, GenKind::General, n)?.matrix;
            let alpha = IndexSet::from_mask(n, rng.gen_range(1..1u64 << n));
            if a.principal_minor(&alpha)?.is_zero() {
                return Ok(Skipped("singular pivot block"));
            }
            let before = game_value(&a)?;
            let after = game_value(&a.ppt(&alpha)?)?;
            let note = if before.value == after.value { "exact value preserved" } else { "exact value changed" };
            Ok(if before.sign == after.sign {
                Checked(Some(note))
            } else {
                Violation(format!("A = {a}, α = {alpha}: value {} becomes {}", before.value, after.value))
            })
        }
        SuiteId::ConeHomogeneous => {
            let n = order(rng, 5);
            let kind = [GenKind::General, GenKind::Singular, GenKind::HiddenZSingular][rng.gen_range(0..3)];
            let a = draw(rng, kind, n)?.matrix;
            let inst = LcpInstance::new(a, vec![Rational::zero(); n])?;
            let mut points: Vec<Vec<Rational>> = enumerate_solutions(&inst)?.solutions.into_iter().map(|s| s.z).collect();
            points.extend(homogeneous_rays(&inst.a)?);
            let nontrivial = points.iter().any(|z| z.iter().any(|v| !v.is_zero()));
            for point in &points {
                for lambda in [int(0), ratio(1, 2), int(2), int(7)] {
                    let z: Vec<Rational> = point.iter().map(|v| v * &lambda).collect();
                    if !validate_solution(&inst, &z)?.is_valid() {
                        return Ok(Violation(format!("A = {}: {} times {:?} is not a solution", inst.a, lambda, fmt_vec(point))));
                    }
                }
            }
            Ok(Checked(Some(if nontrivial { "nonzero solution" } else { "only z = 0" })))
        }
    }
}

/// One solution of `LCP(0, A)` with `Σz = 1` per support that has any.
fn homogeneous_rays(a: &RatMatrix) -> Result<Vec<Vec<Rational>>> {
    let n = a.n_rows();
    let mut rays = Vec::new();
    for alpha in IndexSet::nonempty_subsets(n) {
        let mut lp = LpProblem::new(n);
        for i in 0..n {
            let row: Vec<Rational> = (0..n).map(|j| if alpha.contains(j) { a.get(i, j).clone() } else { Rational::zero() }).collect();
            let relation = if alpha.contains(i) { Relation::Eq } else { Relation::Ge };
            lp.constrain(row, relation, Rational::zero());
        }
        for j in alpha.complement().iter() {
            let mut row = vec![Rational::zero(); n];
            row[j] = Rational::one();
            lp.constrain(row, Relation::Eq, Rational::zero());
        }
        lp.constrain(vec![Rational::one(); n], Relation::Eq, Rational::one());
        if let Some(sol) = solve_lp(&lp)?.into_optimal() {
            rays.push(sol.x);
        }
    }
    Ok(rays)
}

fn draw_hidden_singular(rng: &mut ChaCha8Rng, n: usize) -> Result<(RatMatrix, Certificate)> {
    let g = draw(rng, GenKind::HiddenZSingular, n)?;
    Ok((g.matrix, g.certificate.expect("hidden-Z draws carry a certificate")))
}

fn static_reason(h: &str) -> &'static str {
    match h {
        "certificate does not verify" => "certificate does not verify",
        "A is not an E0-matrix" => "A is not an E0-matrix",
        "some feasible basis is degenerate" => "some feasible basis is degenerate",
        "the LCP has no solution" => "the LCP has no solution",
        _ => "other hypothesis failure",
    }
}

fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(crate::rational::format_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matclass::{is_k_matrix, is_z_matrix};

    #[test]
    fn generators_are_deterministic() {
        for kind in [GenKind::Z, GenKind::K, GenKind::P, GenKind::HiddenZ, GenKind::TypeD, GenKind::Singular, GenKind::General] {
            let spec = GenSpec::new(kind, 3, 42);
            assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap(), "{kind:?}");
        }
    }

    #[test]
    fn generator_classes() {
        for seed in 0..20 {
            let k = generate(&GenSpec::new(GenKind::K, 3, seed)).unwrap().matrix;
            assert!(is_k_matrix(&k).unwrap());
            let z = generate(&GenSpec::new(GenKind::Z, 3, seed)).unwrap().matrix;
            assert!(is_z_matrix(&z).unwrap());
            let p = generate(&GenSpec::new(GenKind::P, 3, seed)).unwrap().matrix;
            assert!(minor_profile(&p).unwrap().is_p);
            let s = generate(&GenSpec::new(GenKind::Singular, 3, seed)).unwrap().matrix;
            assert!(s.det().unwrap().is_zero());
            for kind in [GenKind::HiddenZ, GenKind::HiddenZWeak, GenKind::HiddenZSingular, GenKind::TypeD] {
                let g = generate(&GenSpec::new(kind, 3, seed)).unwrap();
                assert!(verify_certificate(&g.matrix, g.certificate.as_ref().unwrap()).unwrap().valid);
            }
        }
    }

    #[test]
    fn generator_rejects_bad_spec() {
        assert!(generate(&GenSpec::new(GenKind::Z, 0, 1)).is_err());
        let mut spec = GenSpec::new(GenKind::Z, 2, 1);
        spec.entry_bound = 0;
        assert!(generate(&spec).is_err());
    }

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
        }
        assert!(matches!("T9.9".parse::<SuiteId>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn trial_seeds_differ() {
        let seeds: std::collections::BTreeSet<u64> = (0..1000).map(|t| trial_seed(7, t)).collect();
        assert_eq!(seeds.len(), 1000);
    }

    #[test]
    fn small_suites_pass_and_replay() {
        let cfg = SuiteConfig { trials: 10, n_max: 3, seed: 5, jobs: 2 };
        for id in SuiteId::ALL {
            let r = run_suite(id, &cfg).unwrap();
            assert!(r.passed(), "{id}: {:?}", r.violations);
            assert_eq!(r.checked + r.skipped, 10);
            assert_eq!(run_suite(id, &SuiteConfig { jobs: 1, ..cfg }).unwrap(), r);
        }
    }

    #[test]
    fn suite_rejects_bad_order() {
        let cfg = SuiteConfig { n_max: 0, ..SuiteConfig::default() };
        assert!(run_suite(SuiteId::T3_1, &cfg).is_err());
    }
}
