//! Algebraic laws, per-level scans for counterexamples, and the span experiment.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::oracle_solve_sim;
use crate::{span_dimension, Element, Error, Rational, SubalgebraBasis, DEFAULT_MAX_TABLE_LEVEL};

type Q = Element<Rational>;

/// Levels at which a law is asserted to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimedLevels {
    /// Levels `0..=n`.
    UpTo(u32),
    All,
}

impl ClaimedLevels {
    pub fn contains(self, level: u32) -> bool {
        match self {
            ClaimedLevels::UpTo(n) => level <= n,
            ClaimedLevels::All => true,
        }
    }
}

/// Both sides of a law, or `None` where the law does not apply (e.g. an inverse of zero).
pub type Sides = fn(&[Q]) -> Option<(Q, Q)>;

#[derive(Clone, Copy)]
pub struct Law {
    pub id: &'static str,
    pub arity: usize,
    pub claimed: ClaimedLevels,
    pub statement: &'static str,
    pub sides: Sides,
}

impl core::fmt::Debug for Law {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Law")
            .field("id", &self.id)
            .field("arity", &self.arity)
            .field("claimed", &self.claimed)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    HoldsOnSamples,
    Counterexample { witnesses: Vec<Q>, left: Q, right: Q },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawReport {
    pub law: &'static str,
    pub level: u32,
    pub trials: usize,
    pub verdict: Verdict,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnSamples
    }
}

fn real(level: u32, r: Rational) -> Q {
    Q::from_scalar(level, r)
}

fn sq(a: &Q) -> Q {
    a * a
}

fn commutative(v: &[Q]) -> Option<(Q, Q)> {
    Some((&v[0] * &v[1], &v[1] * &v[0]))
}

fn associative(v: &[Q]) -> Option<(Q, Q)> {
    Some((&(&v[0] * &v[1]) * &v[2], &v[0] * &(&v[1] * &v[2])))
}

fn left_alternative(v: &[Q]) -> Option<(Q, Q)> {
    let (a, b) = (&v[0], &v[1]);
    Some((a * &(a * b), &sq(a) * b))
}

fn right_alternative(v: &[Q]) -> Option<(Q, Q)> {
    let (a, b) = (&v[0], &v[1]);
    Some((&(b * a) * a, b * &sq(a)))
}

fn composition(v: &[Q]) -> Option<(Q, Q)> {
    let (a, b) = (&v[0], &v[1]);
    let level = a.level();
    Some((real(level, (a * b).norm_sq()), real(level, a.norm_sq() * b.norm_sq())))
}

fn flexible(v: &[Q]) -> Option<(Q, Q)> {
    let (a, b) = (&v[0], &v[1]);
    Some((&(a * b) * a, a * &(b * a)))
}

fn power_associative_cube(v: &[Q]) -> Option<(Q, Q)> {
    let a = &v[0];
    let a2 = sq(a);
    Some((a * &a2, &a2 * a))
}

fn power_associative_fourth(v: &[Q]) -> Option<(Q, Q)> {
    let a = &v[0];
    let a2 = sq(a);
    Some((a * &(a * &a2), &a2 * &a2))
}

fn quadratic(v: &[Q]) -> Option<(Q, Q)> {
    let a = &v[0];
    let level = a.level();
    let two_re = a.re() * Rational::from_integer(2);
    let lhs = &(&sq(a) - &a.scale(&two_re)) + &real(level, a.norm_sq());
    Some((lhs, Q::zero(level)))
}

fn imaginary_square(v: &[Q]) -> Option<(Q, Q)> {
    let im = v[0].im();
    Some((sq(&im), real(im.level(), -im.norm_sq())))
}

fn trace_symmetric(v: &[Q]) -> Option<(Q, Q)> {
    let (a, b) = (&v[0], &v[1]);
    let level = a.level();
    Some((real(level, (a * b).re()), real(level, (b * a).re())))
}

fn inverse_formula(v: &[Q]) -> Option<(Q, Q)> {
    let a = &v[0];
    if a.is_zero() {
        return None;
    }
    let candidate = a.conj().scale(&a.norm_sq().recip()?);
    Some((a * &candidate, Q::one(a.level())))
}

fn conjugate_flexible(v: &[Q]) -> Option<(Q, Q)> {
    let (a, b) = (&v[0], &v[1]);
    let ac = a.conj();
    Some((&(a * b) * &ac, a * &(b * &ac)))
}

fn inverse_flexible(v: &[Q]) -> Option<(Q, Q)> {
    let (a, b) = (&v[0], &v[1]);
    let ai = a.inverse().ok()?;
    Some((&(a * b) * &ai, a * &(b * &ai)))
}

fn conjugate_antihomomorphism(v: &[Q]) -> Option<(Q, Q)> {
    let (a, b) = (&v[0], &v[1]);
    Some(((a * b).conj(), &b.conj() * &a.conj()))
}

/// Every law the lab knows about, in a fixed order.
pub fn law_catalog() -> Vec<Law> {
    use ClaimedLevels::{All, UpTo};
    let law = |id, arity, claimed, statement, sides| Law { id, arity, claimed, statement, sides };
    vec![
        law("commutative", 2, UpTo(1), "ab = ba", commutative as Sides),
        law("associative", 3, UpTo(2), "(ab)c = a(bc)", associative),
        law("left-alternative", 2, UpTo(3), "a(ab) = (aa)b", left_alternative),
        law("right-alternative", 2, UpTo(3), "(ba)a = b(aa)", right_alternative),
        law("composition", 2, UpTo(3), "|ab|^2 = |a|^2 |b|^2", composition),
        law("flexible", 2, All, "(ab)a = a(ba)", flexible),
        law("power-associative-cube", 1, All, "a(aa) = (aa)a", power_associative_cube),
        law("power-associative-fourth", 1, All, "a(a a^2) = a^2 a^2", power_associative_fourth),
        law("quadratic", 1, All, "a^2 - 2 Re(a) a + |a|^2 = 0", quadratic),
        law("imaginary-square", 1, All, "(Im a)^2 = -|Im a|^2", imaginary_square),
        law("trace-symmetric", 2, All, "Re(ab) = Re(ba)", trace_symmetric),
        law("inverse-formula", 1, All, "a (conj(a) / |a|^2) = 1", inverse_formula),
        law("conjugate-flexible", 2, All, "(ab)conj(a) = a(b conj(a))", conjugate_flexible),
        law("inverse-flexible", 2, All, "(ab)a^-1 = a(b a^-1)", inverse_flexible),
        law("conjugate-antihomomorphism", 2, All, "conj(ab) = conj(b) conj(a)", conjugate_antihomomorphism),
    ]
}

pub fn law_by_id(id: &str) -> Option<Law> {
    law_catalog().into_iter().find(|l| l.id == id)
}

fn same_level(elements: &[Q]) -> Result<u32, Error> {
    let level = elements.first().map_or(0, |e| e.level());
    for e in elements {
        if e.level() != level {
            return Err(Error::LevelMismatch { left: level, right: e.level() });
        }
    }
    Ok(level)
}

/// Evaluates both sides of `law` on one tuple.
pub fn check_law(law: &Law, elements: &[Q]) -> Result<LawReport, Error> {
    if elements.len() != law.arity {
        return Err(Error::Arity { expected: law.arity, found: elements.len() });
    }
    let level = same_level(elements)?;
    let verdict = match (law.sides)(elements) {
        Some((left, right)) if left != right => Verdict::Counterexample { witnesses: elements.to_vec(), left, right },
        _ => Verdict::HoldsOnSamples,
    };
    Ok(LawReport { law: law.id, level, trials: 1, verdict })
}

/// A random element with numerators in `[-9, 9]` and denominators in `{1, 2, 3}`.
pub fn random_element<R: Rng + ?Sized>(level: u32, rng: &mut R) -> Q {
    let coeffs = (0..1usize << level)
        .map(|_| Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=3)).expect("nonzero denominator"))
        .collect();
    Q::new(level, coeffs).expect("length matches level")
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, level: u32, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((level as u64) << 56));
    rng.set_stream(trial);
    rng
}

const MAX_ARITY: usize = 3;

fn basis_tuples(level: u32, arity: usize) -> Vec<Vec<Q>> {
    let n = 1usize << level;
    let mut tuples = vec![Vec::new()];
    for _ in 0..arity {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(Q::basis(level, i));
                    t
                })
            })
            .collect();
    }
    tuples
}

fn sweeps(level: u32, arity: usize) -> bool {
    (arity <= 2 && level <= 4) || (arity == 3 && level <= 3)
}

/// Runs every law at `level`.
///
/// Basis tuples are swept first (all of them for arity up to 2 when
/// `level <= 4`, and for arity 3 when `level <= 3`), then `trials` random
/// tuples. Trial `t` draws its elements from [`trial_rng`]`(seed, level, t)`
/// and all laws share them, so the outcome depends only on the arguments.
/// A law stops at its first counterexample.
pub fn scan_level(level: u32, trials: usize, seed: u64) -> Result<Vec<LawReport>, Error> {
    if level > DEFAULT_MAX_TABLE_LEVEL {
        return Err(Error::LevelTooLarge { level, max: DEFAULT_MAX_TABLE_LEVEL });
    }
    let catalog = law_catalog();
    let mut reports: Vec<LawReport> = catalog
        .iter()
        .map(|law| LawReport { law: law.id, level, trials: 0, verdict: Verdict::HoldsOnSamples })
        .collect();
    let record = |report: &mut LawReport, law: &Law, tuple: &[Q]| {
        report.trials += 1;
        if let Some((left, right)) = (law.sides)(tuple) {
            if left != right {
                report.verdict = Verdict::Counterexample { witnesses: tuple.to_vec(), left, right };
            }
        }
    };
    for (law, report) in catalog.iter().zip(reports.iter_mut()) {
        if !sweeps(level, law.arity) {
            continue;
        }
        for tuple in basis_tuples(level, law.arity) {
            record(report, law, &tuple);
            if !report.holds() {
                break;
            }
        }
    }
    for t in 0..trials {
        if reports.iter().all(|r| !r.holds()) {
            break;
        }
        let mut rng = trial_rng(seed, level, t as u64);
        let tuple: Vec<Q> = (0..MAX_ARITY).map(|_| random_element(level, &mut rng)).collect();
        for (law, report) in catalog.iter().zip(reports.iter_mut()) {
            if report.holds() {
                record(report, law, &tuple[..law.arity]);
            }
        }
    }
    Ok(reports)
}

/// One accepted trial of the span experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct SpanRow {
    pub trial: usize,
    pub d_oracle: usize,
    pub d_pair: usize,
    pub d_module: usize,
    pub a: Q,
    pub b: Q,
}

impl SpanRow {
    pub fn equal(&self) -> bool {
        self.d_pair == self.d_oracle
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpanReport {
    pub level: u32,
    pub rows: Vec<SpanRow>,
}

impl SpanReport {
    /// Rows with `d_pair = d_oracle`, and the total row count.
    pub fn tally(&self) -> (usize, usize) {
        (self.rows.iter().filter(|r| r.equal()).count(), self.rows.len())
    }

    pub fn discrepancies(&self) -> impl Iterator<Item = &SpanRow> {
        self.rows.iter().filter(|r| !r.equal())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("level,trial,d_oracle,d_pair,d_module,equal\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{},{},{}", self.level, r.trial, r.d_oracle, r.d_pair, r.d_module, r.equal());
        }
        out
    }
}

/// Compares the span of the two particular solutions of `a x = x b`
/// (`Im a + Im b` and `|Im a||Im b| - (Im a)(Im b)`) with the oracle kernel
/// on random similar pairs `b = (p a) p^-1`.
///
/// `d_module` is the rank of `p -> (Im a) p + p (Im b)` over the whole
/// algebra (level 2) or over the subalgebra generated by `a` and `b`
/// (level 3). Trials where `a` is real or `b = conj(a)` are skipped.
pub fn span_experiment(level: u32, trials: usize, seed: u64) -> Result<SpanReport, Error> {
    if !(2..=3).contains(&level) {
        return Err(Error::Unsupported { level, what: "span experiment" });
    }
    let mut rows = Vec::new();
    for trial in 0..trials {
        let mut rng = trial_rng(seed, level, trial as u64);
        let a = random_element(level, &mut rng);
        let p = random_element(level, &mut rng);
        if a.is_real() || p.is_zero() {
            continue;
        }
        let b = &(&p * &a) * &p.inverse()?;
        if b == a.conj() {
            continue;
        }
        let (im_a, im_b) = (a.im(), b.im());
        let x1 = &im_a + &im_b;
        let x2 = &real(level, a.im().norm_sq()) - &(&im_a * &im_b);
        let domain: Vec<Q> = if level == 2 {
            (0..4).map(|i| Q::basis(level, i)).collect()
        } else {
            SubalgebraBasis::generated_by(level, &[a.clone(), b.clone()])?.basis().to_vec()
        };
        let image: Vec<Q> = domain.iter().map(|q| &(&im_a * q) + &(q * &im_b)).collect();
        rows.push(SpanRow {
            trial,
            d_oracle: oracle_solve_sim(&a, &b)?.dimension(),
            d_pair: span_dimension(&[x1, x2]),
            d_module: span_dimension(&image),
            a,
            b,
        });
    }
    Ok(SpanReport { level, rows })
}
