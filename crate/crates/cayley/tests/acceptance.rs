//! Acceptance suite. Each test prints one `[PASS]` or `[FAIL]` line; run with
//! `cargo test -p cayley --test acceptance -- --nocapture --test-threads=1`
//! to see them in order.

use std::time::{Duration, Instant};

use cayley::run;
use cayley_core::lab::{check_law, law_by_id, law_catalog, random_element, scan_level, span_experiment, trial_rng, Verdict};
use cayley_core::oracle::{oracle_solve_consim, oracle_solve_sim, zero_divisor_search};
use cayley_core::solvers::{
    consim_to_norm_witness, nth_root, solve_conj_transform, solve_consim, solve_sim, sqrt, LevelSemantics,
    ParameterDomain, Solutions,
};
use cayley_core::{same_span, span_dimension, structure_table, subalgebra_basis, Element, Rational, Scalar, SignedIndex};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Q = Element<Rational>;
type F = Element<f64>;

const SEED: u64 = 20_240_601;
const ROOT_TOL: f64 = 1e-10;
const NTH_ROOT_TOL: f64 = 1e-9;
const WITNESS_TOL: f64 = 1e-10;
const TRANSFORM_TOL: f64 = 1e-9;

type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        {
            let ok: bool = $cond;
            if !ok {
                return Err(format!($($msg)+));
            }
        }
    };
}

fn criterion(id: u32, name: &str, budget_secs: u64, body: impl FnOnce() -> Outcome) {
    let budget = Duration::from_secs(budget_secs);
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let outcome = outcome.and_then(|()| {
        if elapsed <= budget {
            Ok(())
        } else {
            Err(format!("took {elapsed:.2?}, budget {budget:?}"))
        }
    });
    match &outcome {
        Ok(()) => println!("[PASS] {id:>2} {name} ({elapsed:.2?})"),
        Err(why) => println!("[FAIL] {id:>2} {name}: {why}"),
    }
    if let Err(why) = outcome {
        panic!("criterion {id} failed: {why}");
    }
}

fn rng(tag: u64) -> ChaCha8Rng {
    trial_rng(SEED, 0, tag)
}

fn non_real(level: u32, rng: &mut ChaCha8Rng) -> Q {
    loop {
        let a = random_element(level, rng);
        if !a.is_real() {
            return a;
        }
    }
}

fn nonzero(level: u32, rng: &mut ChaCha8Rng) -> Q {
    loop {
        let a = random_element(level, rng);
        if !a.is_zero() {
            return a;
        }
    }
}

fn conjugate_by(p: &Q, a: &Q) -> Q {
    &(p * a) * &p.inverse().unwrap()
}

fn float_element(level: u32, rng: &mut ChaCha8Rng) -> F {
    F::new(level, (0..1usize << level).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

/// Same real part and imaginary norm: the imaginary coefficients permuted with random signs.
fn signed_im_permutation(a: &Q, rng: &mut ChaCha8Rng) -> Q {
    let n = a.dim();
    let mut idx: Vec<usize> = (1..n).collect();
    for i in (1..idx.len()).rev() {
        idx.swap(i, rng.gen_range(0..=i));
    }
    let mut c = vec![a.re()];
    c.extend(idx.iter().map(|&i| if rng.gen_bool(0.5) { a.coeff(i).clone() } else { -a.coeff(i).clone() }));
    Q::new(a.level(), c).unwrap()
}

/// Same norm: all coefficients permuted with random signs.
fn signed_permutation(a: &Q, rng: &mut ChaCha8Rng) -> Q {
    let n = a.dim();
    let mut idx: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        idx.swap(i, rng.gen_range(0..=i));
    }
    let c = idx.iter().map(|&i| if rng.gen_bool(0.5) { a.coeff(i).clone() } else { -a.coeff(i).clone() });
    Q::new(a.level(), c.collect()).unwrap()
}

fn module_basis(set_solutions: &Solutions<Rational>) -> Option<(Vec<Q>, Vec<Q>)> {
    match set_solutions {
        Solutions::ParametricModule { particular, domain, .. } => {
            let domain = match domain {
                ParameterDomain::Full => Vec::new(),
                ParameterDomain::Subalgebra(b) => b.clone(),
            };
            Some((particular.clone(), domain))
        }
        _ => None,
    }
}

#[test]
fn c01_multiplication() {
    criterion(1, "multiplication table and two product paths agree", 10, || {
        let t = structure_table(2).map_err(|e| e.to_string())?;
        let unit = |sign, index| SignedIndex { sign, index };
        let rules = [
            ((1, 2), unit(1, 3)),
            ((2, 1), unit(-1, 3)),
            ((2, 3), unit(1, 1)),
            ((3, 2), unit(-1, 1)),
            ((3, 1), unit(1, 2)),
            ((1, 3), unit(-1, 2)),
        ];
        for ((i, j), expected) in rules {
            ensure!(t.get(i, j) == expected, "e{i} e{j} = {:?}", t.get(i, j));
        }
        let mut r = rng(1);
        for level in 2..=5 {
            let t = structure_table(level).map_err(|e| e.to_string())?;
            for _ in 0..250 {
                let (a, b) = (random_element(level, &mut r), random_element(level, &mut r));
                ensure!(t.multiply(&a, &b).unwrap() == &a * &b, "product paths differ at level {level}");
            }
        }
        Ok(())
    });
}

#[test]
fn c02_law_level_matrix() {
    criterion(2, "law/level matrix matches claimed levels 0-5", 60, || {
        let catalog = law_catalog();
        let mut first_break = std::collections::BTreeMap::new();
        for level in 0..=5 {
            let reports = scan_level(level, 500, 7).map_err(|e| e.to_string())?;
            for (law, report) in catalog.iter().zip(&reports) {
                let claimed = law.claimed.contains(level);
                ensure!(
                    report.holds() == claimed,
                    "{} at level {level}: holds = {}, claimed = {claimed}",
                    law.id,
                    report.holds()
                );
                if let Verdict::Counterexample { witnesses, .. } = &report.verdict {
                    first_break.entry(law.id).or_insert(level);
                    let replay = check_law(law, witnesses).map_err(|e| e.to_string())?;
                    ensure!(!replay.holds(), "{} counterexample does not replay", law.id);
                }
            }
        }
        for (id, level) in [("associative", 3), ("left-alternative", 4), ("right-alternative", 4), ("composition", 4)] {
            ensure!(first_break.get(id) == Some(&level), "{id} first breaks at {:?}", first_break.get(id));
        }
        for id in ["flexible", "power-associative-fourth", "quadratic", "trace-symmetric", "inverse-formula"] {
            ensure!(law_by_id(id).is_some() && !first_break.contains_key(id), "{id} broke");
        }
        Ok(())
    });
}

#[test]
fn c03_quaternion_similarity_equivalence() {
    criterion(3, "quaternion similarity: closed form vs exact kernel", 30, || {
        let mut r = rng(3);
        let mut cases = 0;
        for trial in 0..240 {
            let a = non_real(2, &mut r);
            let b = match trial % 4 {
                0 => a.conj(),
                1 => conjugate_by(&nonzero(2, &mut r), &a),
                2 => &conjugate_by(&nonzero(2, &mut r), &a) + &Q::one(2),
                _ => {
                    let b = conjugate_by(&nonzero(2, &mut r), &a);
                    &Element::from_scalar(2, b.re()) + &b.im().scale(&Rational::from_integer(2))
                }
            };
            let set = solve_sim(&a, &b).map_err(|e| e.to_string())?;
            let kernel = oracle_solve_sim(&a, &b).map_err(|e| e.to_string())?;
            ensure!(set.is_empty() == (kernel.dimension() == 0), "trial {trial}: emptiness disagrees");
            match trial % 4 {
                0 => {
                    ensure!(matches!(set.solutions, Solutions::AffineSubspace { .. }), "trial {trial}: not a hyperplane");
                    ensure!(same_span(&set.linear_span().unwrap(), &kernel.basis), "trial {trial}: hyperplane differs");
                }
                1 => {
                    let (pair, _) = module_basis(&set.solutions).ok_or(format!("trial {trial}: not a module"))?;
                    ensure!(kernel.dimension() == 2, "trial {trial}: kernel dimension {}", kernel.dimension());
                    ensure!(same_span(&pair, &kernel.basis), "trial {trial}: pair span differs from kernel");
                }
                _ => ensure!(set.is_empty(), "trial {trial}: dissimilar pair solved"),
            }
            cases += 1;
        }
        ensure!(cases >= 200, "only {cases} cases");
        Ok(())
    });
}

#[test]
fn c04_octonion_similarity_soundness() {
    criterion(4, "octonion similarity: every representative solves a x = x b", 60, || {
        let mut r = rng(4);
        for trial in 0..200 {
            let a = non_real(3, &mut r);
            let b = conjugate_by(&nonzero(3, &mut r), &a);
            let set = solve_sim(&a, &b).map_err(|e| e.to_string())?;
            if b != a.conj() {
                let (_, domain) = module_basis(&set.solutions).ok_or(format!("trial {trial}: not a module"))?;
                let sub = subalgebra_basis(3, &[a.clone(), b.clone()]).map_err(|e| e.to_string())?;
                ensure!(same_span(&domain, &sub), "trial {trial}: domain is not the generated subalgebra");
            }
            let reps = set.representatives();
            ensure!(!reps.is_empty(), "trial {trial}: no representatives");
            for x in reps {
                ensure!(&a * &x == &x * &b, "trial {trial}: representative fails");
            }
        }
        for trial in 0..200 {
            let a = non_real(3, &mut r);
            let b = &conjugate_by(&nonzero(3, &mut r), &a) + &Q::from_scalar(3, Rational::new(1, 2).unwrap());
            let kernel = oracle_solve_sim(&a, &b).map_err(|e| e.to_string())?;
            ensure!(kernel.dimension() == 0, "dissimilar trial {trial}: kernel dimension {}", kernel.dimension());
        }
        Ok(())
    });
}

#[test]
fn c05_sedenion_sufficiency() {
    criterion(5, "sedenion similarity: Im a + Im b solves, second formula can fail", 60, || {
        let mut r = rng(5);
        let mut second_fails = None;
        let mut accepted = 0;
        while accepted < 200 {
            let a = non_real(4, &mut r);
            let b = signed_im_permutation(&a, &mut r);
            if b == a.conj() || b.im() == -a.im() {
                continue;
            }
            let set = solve_sim(&a, &b).map_err(|e| e.to_string())?;
            ensure!(set.semantics == LevelSemantics::SufficientOnly, "level 4 claims an iff");
            let x = &a.im() + &b.im();
            ensure!(set.solutions == Solutions::ScalingFamily(x.clone()), "unexpected solution family");
            ensure!(&a * &x == &x * &b, "Im a + Im b fails");
            let x2 = &Q::from_scalar(4, a.im().norm_sq()) - &(&a.im() * &b.im());
            if second_fails.is_none() && &a * &x2 != &x2 * &b {
                second_fails = Some((a.clone(), b.clone()));
            }
            accepted += 1;
        }
        ensure!(second_fails.is_some(), "no pair where |Im a||Im b| - (Im a)(Im b) fails");
        Ok(())
    });
}

#[test]
fn c06_consimilarity() {
    criterion(6, "consimilarity family, degenerate kernel and norm witness", 30, || {
        let mut r = rng(6);
        for level in 2..=4 {
            for trial in 0..100 {
                let a = nonzero(level, &mut r);
                let b = signed_permutation(&a, &mut r);
                let set = solve_consim(&a, &b).map_err(|e| e.to_string())?;
                let direction = &a.conj() + &b;
                if !direction.is_zero() {
                    ensure!(set.solutions == Solutions::ScalingFamily(direction.clone()), "level {level} trial {trial}");
                }
                for lambda in [Rational::ONE, Rational::new(-5, 3).unwrap()] {
                    let x = direction.scale(&lambda);
                    ensure!(&a * &x == &x.conj() * &b, "level {level} trial {trial}: family fails");
                }
            }
        }
        for level in 2..=3 {
            for trial in 0..50 {
                let a = nonzero(level, &mut r);
                let b = -a.conj();
                let set = solve_consim(&a, &b).map_err(|e| e.to_string())?;
                let kernel = oracle_solve_consim(&a, &b).map_err(|e| e.to_string())?;
                let span = set.linear_span().ok_or("degenerate set is not linear")?;
                ensure!(
                    span_dimension(&span) == kernel.dimension() && same_span(&span, &kernel.basis),
                    "level {level} trial {trial}: degenerate set differs from kernel"
                );
            }
        }
        for level in 2..=4 {
            for trial in 0..100 {
                let a = float_element(level, &mut r);
                let p = consim_to_norm_witness(&a).map_err(|e| e.to_string())?;
                let back = &p.conj() * &(&F::from_scalar(level, a.norm()) * &p.inverse().unwrap());
                ensure!(back.approx_eq_tol(&a, WITNESS_TOL), "level {level} trial {trial}: witness off");
            }
        }
        Ok(())
    });
}

#[test]
fn c07_roots() {
    criterion(7, "square roots and m-th roots verify", 10, || {
        let mut r = rng(7);
        for level in 2..=4 {
            for trial in 0..100 {
                let a = float_element(level, &mut r);
                let set = sqrt(&a).map_err(|e| e.to_string())?;
                let Solutions::FinitePoints(points) = &set.solutions else {
                    return Err(format!("level {level} trial {trial}: not two points"));
                };
                ensure!(points.len() == 2, "level {level} trial {trial}: {} roots", points.len());
                ensure!(points[1] == -points[0].clone(), "roots are not negatives");
                for x in points {
                    ensure!((x * x).approx_eq_tol(&a, ROOT_TOL), "level {level} trial {trial}: x^2 != a");
                }
            }
        }
        for level in 2..=3 {
            for trial in 0..50 {
                let a = float_element(level, &mut r);
                for m in 2..=4u32 {
                    let set = nth_root(&a, m).map_err(|e| format!("level {level} m {m}: {e}"))?;
                    let reps = set.representatives();
                    ensure!(reps.len() == m as usize, "level {level} trial {trial}: {} roots of order {m}", reps.len());
                    for x in reps {
                        ensure!(x.pow(m as i64).unwrap().approx_eq_tol(&a, NTH_ROOT_TOL), "root fails r^{m} = a");
                    }
                }
            }
        }
        Ok(())
    });
}

#[test]
fn c08_conjugate_transform() {
    criterion(8, "conj(x) a x = b recovered with |x|^2 = 1/lambda", 10, || {
        let mut r = rng(8);
        let mut solved = 0;
        while solved < 100 {
            let level = 2 + (solved % 2) as u32;
            let a = float_element(level, &mut r);
            let mut x = float_element(level, &mut r);
            if a.is_real() || x.norm() < 0.1 {
                continue;
            }
            if solved % 2 == 0 {
                x = x.scale(&(1.0 / x.norm()));
            }
            let b = &x.conj() * &(&a * &x);
            let lambda = a.im().norm() / b.im().norm();
            let set = solve_conj_transform(&a, &b).map_err(|e| e.to_string())?;
            let Solutions::FinitePoints(points) = &set.solutions else {
                return Err(format!("instance {solved}: no solution"));
            };
            let y = &points[0];
            ensure!((&y.conj() * &(&a * y)).approx_eq_tol(&b, TRANSFORM_TOL), "instance {solved}: residual");
            ensure!((y.norm_sq() - 1.0 / lambda).abs() <= TRANSFORM_TOL * (1.0 / lambda), "instance {solved}: |x|^2");
            let rejected = solve_conj_transform(&a, &-b.clone()).map_err(|e| e.to_string())?;
            if a.re().abs() > 1e-3 {
                ensure!(rejected.is_empty(), "instance {solved}: negative lambda accepted");
            }
            solved += 1;
        }
        Ok(())
    });
}

#[test]
fn c09_zero_divisors() {
    criterion(9, "zero divisors exist at level 4, not at levels 2-3", 10, || {
        let (a, b) = zero_divisor_search(4, 0).ok_or("no sedenion zero divisor found")?;
        ensure!(!a.is_zero() && !b.is_zero() && (&a * &b).is_zero(), "witness is not a zero divisor pair");
        for x in [&a, &b] {
            let terms: Vec<&Rational> = x.coeffs().iter().filter(|c| !c.is_zero()).collect();
            ensure!(
                terms.len() == 2 && terms.iter().all(|c| **c == Rational::ONE || **c == -Rational::ONE),
                "witness outside the two-term family"
            );
        }
        for level in 2..=3 {
            ensure!(zero_divisor_search(level, 100).is_none(), "zero divisor reported at level {level}");
        }
        Ok(())
    });
}

#[test]
fn c10_span_experiment() {
    criterion(10, "span experiment reproducible", 60, || {
        let quaternion = span_experiment(2, 100, SEED).map_err(|e| e.to_string())?;
        ensure!(!quaternion.rows.is_empty(), "no quaternion rows");
        for row in &quaternion.rows {
            ensure!(row.d_pair == 2 && row.d_oracle == 2, "trial {}: {} vs {}", row.trial, row.d_pair, row.d_oracle);
        }
        let octonion = span_experiment(3, 100, SEED).map_err(|e| e.to_string())?;
        let again = span_experiment(3, 100, SEED).map_err(|e| e.to_string())?;
        ensure!(octonion.to_csv() == again.to_csv(), "octonion run not deterministic");
        let (equal, total) = octonion.tally();
        println!("       octonion tally: d_pair = d_oracle in {equal} of {total} trials");
        Ok(())
    });
}

fn call(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("cayley").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn c11_cli_contract() {
    criterion(11, "command line examples: exit codes and stable JSON", 30, || {
        let sim = ["solve-sim", "--a", "i", "--b", "j", "--level", "2", "--output", "json"];
        let table = ["table", "--level", "2", "--output", "json"];
        let scan = ["identity-scan", "--level", "4", "--trials", "200", "--seed", "1", "--output", "json"];
        for args in [&sim[..], &table, &scan] {
            let first = call(args);
            ensure!(first.0 == 0, "{args:?} exited with {}", first.0);
            ensure!(first == call(args), "{args:?} output not byte-stable");
        }
        let v: serde_json::Value = serde_json::from_str(&call(&sim).1).map_err(|e| e.to_string())?;
        ensure!(v["variant"] == "ParametricModule", "variant {}", v["variant"]);
        ensure!(v["representatives_text"][0] == "e1 + e2", "representative {}", v["representatives_text"][0]);
        let v: serde_json::Value = serde_json::from_str(&call(&table).1).map_err(|e| e.to_string())?;
        ensure!(
            v["rows"] == serde_json::json!([
                ["1", "e1", "e2", "e3"],
                ["e1", "-1", "e3", "-e2"],
                ["e2", "-e3", "-1", "e1"],
                ["e3", "e2", "-e1", "-1"]
            ]),
            "table {}",
            v["rows"]
        );
        let out = call(&scan).1;
        let alt = out
            .lines()
            .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
            .find(|r| r["law"] == "left-alternative")
            .ok_or("no alternativity report")?;
        ensure!(alt["verdict"] == "Counterexample", "alternativity verdict {}", alt["verdict"]);
        let (code, _) = call(&["solve-sim", "--a", "i", "--b", "2j", "--level", "2"]);
        ensure!(code == 1, "empty solution exit code {code}");
        let (code, _) = call(&["solve-sim", "--a", "i"]);
        ensure!(code == 2, "usage error exit code {code}");
        Ok(())
    });
}
