//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line with its
//! runtime against the budget; run with `--nocapture` to see them.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use lcplab::gameval::value_sign_queries;
use lcplab::hiddenz::{
    classify_hidden, default_seeds, epsilon_bound, find_certificate, perturb, type_d_certificate, verify_certificate,
    Certificate, ClassifyParams, EpsilonBound, Verdict,
};
use lcplab::io::{read_input, InputFile};
use lcplab::labgen::{run_suite, SuiteConfig, SuiteId};
use lcplab::lcpsolve::{solve_with, validate_solution, LcpInstance, Method};
use lcplab::matclass::{minor_profile, n_category, NCategory};
use lcplab::rational::{int, ints, ratio};
use lcplab::{RatMatrix, Rational};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn criterion(id: u32, title: &str, budget: Duration, check: impl FnOnce() -> Check) {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let verdict = match &result {
        Ok(()) if elapsed < budget => "PASS".to_string(),
        Ok(()) => "FAIL (over budget)".to_string(),
        Err(e) => format!("FAIL ({e})"),
    };
    println!("{verdict:<4} criterion {id:>2}: {title} [{elapsed:.2?} / {budget:?}]");
    assert!(result.is_ok() && elapsed < budget, "criterion {id}: {verdict}");
}

fn load(name: &str) -> InputFile {
    read_input(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)).unwrap()
}

fn m(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_i64(rows).unwrap()
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

#[test]
fn c01_singular_hidden_z_certificate() {
    criterion(1, "singular hidden Z certificate verifies with exact decimals", secs(1), || {
        let f = load("singular_hidden_z.json");
        let c = f.certificate.ok_or("missing certificate")?;
        ensure!(c.r == vec![ratio(8, 5), int(4), int(2)], "r = {:?}", c.r);
        ensure!(c.s == vec![int(4), int(0), ratio(1, 10)], "s = {:?}", c.s);
        let v = verify_certificate(&f.a, &c).map_err(err)?;
        ensure!(v.valid, "violations: {:?}", v.violations);
        ensure!(v.combination == vec![ratio(16, 5), ratio(3, 10), ratio(63, 10)], "rX + sY = {:?}", v.combination);
        ensure!(f.a.det().map_err(err)?.is_zero(), "det(A) ≠ 0");
        let q = value_sign_queries(&f.a).map_err(err)?;
        ensure!(!q.positive && q.nonnegative, "positive = {}, nonnegative = {}", q.positive, q.nonnegative);
        Ok(())
    });
}

#[test]
fn c02_value_positive_p_matrix() {
    criterion(2, "value-positive hidden Z matrix is certified P", secs(1), || {
        let f = load("p_hidden_z.json");
        let c = f.certificate.clone().ok_or("missing certificate")?;
        let v = verify_certificate(&f.a, &c).map_err(err)?;
        ensure!(v.valid && v.combination == ints(&[1, 2, 1]), "rX + sY = {:?}", v.combination);
        let q = value_sign_queries(&f.a).map_err(err)?;
        ensure!(q.positive, "value not positive");
        let w = q.positive_witness.ok_or("no witness")?;
        ensure!(f.a.mul_vec(&w).map_err(err)?.iter().all(|x| x.is_positive()), "returned witness fails");
        let ax = f.a.mul_vec(&ints(&[1, 4, 5])).map_err(err)?;
        ensure!(ax.iter().all(|x| x.is_positive()), "A(1,4,5) = {:?}", ax);
        let p = minor_profile(&f.a).map_err(err)?;
        ensure!(p.iter().all(|(_, v)| v.is_one()) && p.is_p, "minors not all one");
        let cls = classify_hidden(&f.a, &ClassifyParams::default(), Some(&c)).map_err(err)?;
        ensure!(cls.verdict == Verdict::PCertified, "verdict {:?}", cls.verdict);
        Ok(())
    });
}

#[test]
fn c03_four_solvers_agree() {
    criterion(3, "lemke, criss-cross, LP and enumeration agree on 100 seeded q", secs(10), || {
        let f = load("p_hidden_z.json");
        let c = f.certificate.ok_or("missing certificate")?;
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for trial in 0..100 {
            let q: Vec<Rational> = (0..3).map(|_| int(rng.gen_range(-10..=10))).collect();
            let inst = LcpInstance::new(f.a.clone(), q.clone()).map_err(err)?;
            let mut found: Vec<Vec<Rational>> = Vec::new();
            for method in Method::ALL {
                let out = solve_with(&inst, method, Some(&c)).map_err(err)?;
                let sol = out.solution.ok_or_else(|| format!("trial {trial}, q = {q:?}: {} gave {:?}", method.name(), out.status))?;
                ensure!(validate_solution(&inst, &sol.z).map_err(err)?.is_valid(), "{} solution invalid", method.name());
                found.push(sol.z);
            }
            ensure!(found.windows(2).all(|w| w[0] == w[1]), "trial {trial}, q = {q:?}: {found:?}");
            let all = lcplab::lcpsolve::enumerate_solutions(&inst).map_err(err)?;
            ensure!(all.solutions.len() == 1, "trial {trial}: {} solutions", all.solutions.len());
        }
        Ok(())
    });
}

#[test]
fn c04_positivity_hypothesis_is_needed() {
    criterion(4, "hidden Z matrix with a nonnegative witness need not be P0", secs(1), || {
        let a = m(&[&[-1, 0], &[-1, 2]]);
        let c = find_certificate(&a, &default_seeds(2)).map_err(err)?.ok_or("no certificate found")?;
        ensure!(verify_certificate(&a, &c).map_err(err)?.valid, "found certificate does not verify");
        ensure!(!minor_profile(&a).map_err(err)?.is_p0, "matrix is P0");
        let x = ints(&[0, 1]);
        ensure!(a.mul_vec(&x).map_err(err)?.iter().all(|v| !v.is_negative()), "Ax has a negative entry");
        Ok(())
    });
}

#[test]
fn c05_singular_hidden_z_is_not_value_positive() {
    criterion(5, "no singular matrix is both certified hidden Z and value positive", secs(30), || {
        let a = m(&[&[1, 1], &[1, 1]]);
        let q = value_sign_queries(&a).map_err(err)?;
        ensure!(q.positive, "value not positive");
        let ax = a.mul_vec(&ints(&[1, 0])).map_err(err)?;
        ensure!(ax.iter().all(|v| v.is_positive()), "(1,0) is not a witness");
        ensure!(find_certificate(&a, &default_seeds(2)).map_err(err)?.is_none(), "certificate found");
        let report = run_suite(SuiteId::T3_3, &SuiteConfig { trials: 100, n_max: 4, seed: 33, jobs: 0 }).map_err(err)?;
        ensure!(report.passed(), "violations: {:?}", report.violations);
        Ok(())
    });
}

#[test]
fn c06_almost_p_and_n_pair() {
    criterion(6, "almost P matrix has a first-category N inverse", secs(1), || {
        let a = m(&[&[1, 2], &[1, 1]]);
        ensure!(minor_profile(&a).map_err(err)?.is_almost_p, "not almost P");
        let inv = a.inverse().map_err(err)?;
        ensure!(inv == m(&[&[-1, 2], &[1, -1]]), "inverse = {inv}");
        let p = minor_profile(&inv).map_err(err)?;
        ensure!(p.is_n && p.iter().all(|(_, v)| v.is_negative()), "inverse is not N");
        ensure!(n_category(&inv).map_err(err)? == NCategory::FirstCategory, "not first category");
        Ok(())
    });
}

#[test]
fn c07_perturbation_bound() {
    criterion(7, "perturbation bound is 1/2 and enforced strictly", secs(1), || {
        let f = load("p_hidden_z.json");
        let c = f.certificate.ok_or("missing certificate")?;
        let l = epsilon_bound(&c).map_err(err)?;
        ensure!(l == EpsilonBound::Finite(ratio(1, 2)), "l = {l}");
        let p = perturb(&f.a, &c, &ratio(1, 4)).map_err(err)?;
        ensure!(p.a_eps == f.a.shift_diagonal(&ratio(1, 4)).map_err(err)?, "A + I/4 wrong");
        ensure!(verify_certificate(&p.a_eps, &p.cert_eps).map_err(err)?.valid, "perturbed certificate fails");
        ensure!(perturb(&f.a, &c, &ratio(1, 2)).is_err(), "ε = 1/2 accepted");
        Ok(())
    });
}

#[test]
fn c08_property_suites() {
    criterion(8, "property suites report zero violations", secs(300), || {
        let runs = [
            (SuiteId::T2_2, 200),
            (SuiteId::T2_5, 200),
            (SuiteId::T3_1, 50),
            (SuiteId::T3_2, 200),
            (SuiteId::T3_4, 200),
            (SuiteId::T3_5, 50),
            (SuiteId::T3_6, 200),
            (SuiteId::T3_7, 200),
            (SuiteId::T3_10, 200),
        ];
        for (id, trials) in runs {
            let report = run_suite(id, &SuiteConfig { trials, n_max: 4, seed: 2024, jobs: 0 }).map_err(err)?;
            ensure!(report.passed(), "{}: {:?}", id.as_str(), report.violations);
            if id == SuiteId::T3_10 {
                ensure!(report.checked == trials, "T3.10 checked only {} solvable draws", report.checked);
            }
            if matches!(id, SuiteId::T3_1 | SuiteId::T3_5) {
                ensure!(report.checked == trials, "{} checked {} of {trials}", id.as_str(), report.checked);
            }
        }
        Ok(())
    });
}

#[test]
fn c09_type_d_certificate() {
    criterion(9, "type D matrix yields (A⁻¹, I, 0, e)", secs(1), || {
        let a = m(&[&[1, 1, 1], &[1, 2, 2], &[1, 2, 3]]);
        let c = type_d_certificate(&a).map_err(err)?.ok_or("not type D")?;
        let inv = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 1]]);
        let expected = Certificate::new(inv, RatMatrix::identity(3), vec![Rational::zero(); 3], vec![Rational::one(); 3]);
        ensure!(c == expected, "certificate = {c:?}");
        ensure!(verify_certificate(&a, &c).map_err(err)?.valid, "does not verify");
        Ok(())
    });
}

#[test]
fn c10_every_registered_suite_is_clean() {
    criterion(10, "acceptance is property based: every registered suite passes", secs(120), || {
        for id in SuiteId::ALL {
            let report = run_suite(id, &SuiteConfig { trials: 50, n_max: 4, seed: 10, jobs: 0 }).map_err(err)?;
            ensure!(report.passed(), "{}: {:?}", id.as_str(), report.violations);
        }
        Ok(())
    });
}
