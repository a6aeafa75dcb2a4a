//! Closed-form solutions of the basic element equations.
//!
//! Up to the octonions (level 3) the existence conditions checked here are
//! necessary and sufficient. From the sedenions on they are only sufficient:
//! zero divisors can produce solutions that the closed forms do not see, so
//! results there carry [`LevelSemantics::SufficientOnly`].

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Element, Error, Scalar, SubalgebraBasis};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// The returned description covers every solution.
    General,
    /// Only some solutions are described.
    ParticularOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelSemantics {
    IffCondition,
    SufficientOnly,
}

/// Marks results that go beyond the non-real inputs the closed forms are stated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    /// A real input handled by the classical real/complex rule.
    RealInput,
    /// The affine description is a sphere: solutions are `origin + Σ t_i basis_i`
    /// with `Σ t_i^2 = 1`, not the whole span.
    RootSphere,
    /// No canonical rotation exists; the input itself is returned.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParameterDomain<S> {
    /// The parameter ranges over the whole algebra.
    Full,
    /// The parameter ranges over the span of this subalgebra basis.
    Subalgebra(Vec<Element<S>>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solutions<S> {
    Empty,
    FinitePoints(Vec<Element<S>>),
    /// `λ · direction` for real `λ`.
    ScalingFamily(Element<S>),
    /// `origin + span(basis)` (or a sphere in it, see [`Flag::RootSphere`]).
    AffineSubspace { origin: Element<S>, basis: Vec<Element<S>> },
    /// `x = left · p + p · right` with `p` ranging over `domain`.
    ParametricModule {
        left: Element<S>,
        right: Element<S>,
        domain: ParameterDomain<S>,
        particular: Vec<Element<S>>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet<S> {
    pub solutions: Solutions<S>,
    pub completeness: Completeness,
    pub semantics: LevelSemantics,
    pub flag: Option<Flag>,
}

impl<S: Scalar> SolutionSet<S> {
    fn new(solutions: Solutions<S>, completeness: Completeness, level: u32) -> Self {
        SolutionSet { solutions, completeness, semantics: semantics_for(level), flag: None }
    }

    fn empty(level: u32) -> Self {
        // Below the sedenions an empty answer is definitive.
        let completeness = if level <= 3 { Completeness::General } else { Completeness::ParticularOnly };
        Self::new(Solutions::Empty, completeness, level)
    }

    fn flagged(mut self, flag: Flag) -> Self {
        self.flag = Some(flag);
        self
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.solutions, Solutions::Empty)
    }

    /// Concrete nonzero solutions drawn from the description.
    ///
    /// Subspaces contribute `origin + basis_i` for every basis vector (plus the
    /// origin itself unless it is zero or the set is a sphere); modules
    /// contribute their particular solutions and the image of every domain
    /// basis vector. Zeros and repeats are dropped.
    pub fn representatives(&self) -> Vec<Element<S>> {
        let mut out = match &self.solutions {
            Solutions::Empty => Vec::new(),
            Solutions::FinitePoints(points) => return points.clone(),
            Solutions::ScalingFamily(d) => vec![d.clone()],
            Solutions::AffineSubspace { origin, basis } => {
                let mut v: Vec<Element<S>> = basis.iter().map(|b| origin + b).collect();
                if self.flag != Some(Flag::RootSphere) && !origin.is_zero() {
                    v.insert(0, origin.clone());
                }
                v
            }
            Solutions::ParametricModule { left, right, domain, particular } => {
                let mut v = particular.clone();
                v.extend(domain_basis(left.level(), domain).iter().map(|p| module_image(left, right, p)));
                v
            }
        };
        let mut seen: Vec<Element<S>> = Vec::new();
        out.retain(|x| {
            let fresh = !x.is_zero() && !seen.contains(x);
            if fresh {
                seen.push(x.clone());
            }
            fresh
        });
        out
    }

    /// Spanning set of the solution space when it is a linear subspace.
    pub fn linear_span(&self) -> Option<Vec<Element<S>>> {
        match &self.solutions {
            Solutions::Empty => Some(Vec::new()),
            Solutions::ScalingFamily(d) => Some(vec![d.clone()]),
            Solutions::AffineSubspace { origin, basis } if origin.is_zero() && self.flag != Some(Flag::RootSphere) => {
                Some(basis.clone())
            }
            Solutions::ParametricModule { left, right, domain, .. } => Some(
                domain_basis(left.level(), domain).iter().map(|p| module_image(left, right, p)).collect(),
            ),
            _ => None,
        }
    }
}

fn domain_basis<S: Scalar>(level: u32, domain: &ParameterDomain<S>) -> Vec<Element<S>> {
    match domain {
        ParameterDomain::Full => (0..1usize << level).map(|i| Element::basis(level, i)).collect(),
        ParameterDomain::Subalgebra(basis) => basis.clone(),
    }
}

fn module_image<S: Scalar>(left: &Element<S>, right: &Element<S>, p: &Element<S>) -> Element<S> {
    &(left * p) + &(p * right)
}

fn semantics_for(level: u32) -> LevelSemantics {
    if level <= 3 {
        LevelSemantics::IffCondition
    } else {
        LevelSemantics::SufficientOnly
    }
}

fn same_level<S: Scalar>(a: &Element<S>, b: &Element<S>) -> Result<u32, Error> {
    if a.level() != b.level() {
        return Err(Error::LevelMismatch { left: a.level(), right: b.level() });
    }
    Ok(a.level())
}

fn scalar_close<S: Scalar>(x: &S, y: &S) -> bool {
    if S::EXACT {
        return x == y;
    }
    let (x, y) = (x.to_f64(), y.to_f64());
    libm::fabs(x - y) <= crate::FLOAT_REL_TOL * libm::fabs(x).max(libm::fabs(y)) + crate::FLOAT_ABS_TOL
}

/// Zero test for a value derived from data of magnitude `scale`.
fn negligible<S: Scalar>(x: &Element<S>, scale: f64) -> bool {
    if S::EXACT {
        return x.is_zero();
    }
    x.norm() <= crate::FLOAT_REL_TOL * scale + crate::FLOAT_ABS_TOL
}

fn need_sqrt<S: Scalar>(x: &S, what: &'static str) -> Result<S, Error> {
    x.sqrt().ok_or(Error::Irrational(what))
}

/// Basis of `{x : <w, x> = 0}`, restricted to `x` with indices in `range`.
///
/// With `p` the index of the largest `|w_p|`, the vectors are
/// `e_i - (w_i / w_p) e_p` for every other index `i` in the range.
fn orthogonal_complement<S: Scalar>(w: &Element<S>, range: core::ops::Range<usize>) -> Vec<Element<S>> {
    let level = w.level();
    let pivot = range
        .clone()
        .filter(|&i| !w.coeff(i).is_zero())
        .max_by(|&i, &j| {
            libm::fabs(w.coeff(i).to_f64())
                .partial_cmp(&libm::fabs(w.coeff(j).to_f64()))
                .unwrap_or(core::cmp::Ordering::Equal)
        });
    let Some(p) = pivot else {
        return range.map(|i| Element::basis(level, i)).collect();
    };
    let wp = w.coeff(p).clone();
    range
        .filter(|&i| i != p)
        .map(|i| {
            let mut v = Element::basis(level, i);
            let mut c: Vec<S> = v.coeffs().to_vec();
            c[p] = -(w.coeff(i).clone() / wp.clone());
            v = Element::new(level, c).expect("length preserved");
            v
        })
        .collect()
}

/// Invariants deciding similarity: `Re a` and `|Im a|^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityClass<S> {
    pub real_part: S,
    pub im_norm_sq: S,
}

impl<S: Scalar> SimilarityClass<S> {
    pub fn im_norm(&self) -> f64 {
        libm::sqrt(self.im_norm_sq.to_f64())
    }

    /// Equality up to backend tolerance.
    pub fn matches(&self, other: &Self) -> bool {
        scalar_close(&self.real_part, &other.real_part) && scalar_close(&self.im_norm_sq, &other.im_norm_sq)
    }
}

pub fn similarity_class<S: Scalar>(a: &Element<S>) -> SimilarityClass<S> {
    SimilarityClass { real_part: a.re(), im_norm_sq: a.im().norm_sq() }
}

/// `Re a = Re b` and `|Im a| = |Im b|`.
pub fn similar<S: Scalar>(a: &Element<S>, b: &Element<S>) -> Result<bool, Error> {
    same_level(a, b)?;
    Ok(similarity_class(a).matches(&similarity_class(b)))
}

fn full_space<S: Scalar>(level: u32) -> Solutions<S> {
    Solutions::AffineSubspace {
        origin: Element::zero(level),
        basis: (0..1usize << level).map(|i| Element::basis(level, i)).collect(),
    }
}

/// Solves `a x = x b`.
///
/// * Levels 0 and 1 are commutative: every `x` works when `a = b`, none otherwise.
/// * Not similar: empty.
/// * `b = conj(a)`: the hyperplane of pure imaginary `x` orthogonal to `Im a`.
/// * Level 2: `x = (Im a) p + p (Im b)` for any `p`, with the particular
///   solutions `Im a + Im b` and `|Im a||Im b| - (Im a)(Im b)`.
/// * Level 3: the same map with `p` in the subalgebra generated by `a`, `b`.
/// * Level 4 and up: the family `λ (Im a + Im b)` only.
pub fn solve_sim<S: Scalar>(a: &Element<S>, b: &Element<S>) -> Result<SolutionSet<S>, Error> {
    let level = same_level(a, b)?;
    if level <= 1 {
        return Ok(if a.approx_eq(b) {
            SolutionSet::new(full_space(level), Completeness::General, level)
        } else {
            SolutionSet::empty(level)
        });
    }
    if !similar(a, b)? {
        return Ok(SolutionSet::empty(level));
    }
    if a.is_real() {
        return Ok(SolutionSet::new(full_space(level), Completeness::General, level).flagged(Flag::RealInput));
    }
    let (im_a, im_b) = (a.im(), b.im());
    let sum = &im_a + &im_b;
    if negligible(&sum, im_a.norm()) {
        let basis = orthogonal_complement(&im_a, 1..1usize << level);
        return Ok(SolutionSet::new(
            Solutions::AffineSubspace { origin: Element::zero(level), basis },
            Completeness::General,
            level,
        ));
    }
    if level >= 4 {
        return Ok(SolutionSet::new(Solutions::ScalingFamily(sum), Completeness::ParticularOnly, level));
    }
    let norms = need_sqrt(&(im_a.norm_sq() * im_b.norm_sq()), "|Im a||Im b|")?;
    let x2 = &Element::from_scalar(level, norms) - &(&im_a * &im_b);
    let domain = if level == 3 {
        let sub = SubalgebraBasis::generated_by(level, &[a.clone(), b.clone()])?;
        ParameterDomain::Subalgebra(sub.basis().to_vec())
    } else {
        ParameterDomain::Full
    };
    Ok(SolutionSet::new(
        Solutions::ParametricModule { left: im_a, right: im_b, domain, particular: vec![sum, x2] },
        Completeness::General,
        level,
    ))
}

/// The complex number `Re a + |Im a| e_1` similar to `a`, with the solution
/// set of `a x = x c` as witness.
///
/// Real input is returned unchanged with witness `{1}`, flagged degenerate.
pub fn canonical_form<S: Scalar>(a: &Element<S>) -> Result<(Element<S>, SolutionSet<S>), Error> {
    let level = a.level();
    if a.is_real() {
        let witness = SolutionSet::new(
            Solutions::FinitePoints(vec![Element::one(level)]),
            Completeness::ParticularOnly,
            level,
        );
        return Ok((a.clone(), witness.flagged(Flag::Degenerate)));
    }
    let im_norm = need_sqrt(&a.im().norm_sq(), "|Im a|")?;
    let mut coeffs = vec![S::zero(); 1usize << level];
    coeffs[0] = a.re();
    coeffs[1] = im_norm;
    let canonical = Element::new(level, coeffs)?;
    let witness = solve_sim(a, &canonical)?;
    if witness.is_empty() {
        // Only possible in the complex numbers, where a and conj(a) are not similar.
        return Err(Error::Unsupported { level, what: "canonical form of a complex number with negative imaginary part" });
    }
    Ok((canonical, witness))
}

/// Solves `a x = conj(x) b`.
///
/// Solvable exactly when `|a| = |b|` (below the sedenions). If
/// `a + conj(b) != 0` the family `λ (conj(a) + b)` is returned; otherwise the
/// full solution space `{x : Re(a x) = 0}`.
pub fn solve_consim<S: Scalar>(a: &Element<S>, b: &Element<S>) -> Result<SolutionSet<S>, Error> {
    let level = same_level(a, b)?;
    if !consimilar(a, b)? {
        return Ok(SolutionSet::empty(level));
    }
    let direction = &a.conj() + b;
    if negligible(&direction, a.norm()) {
        // Re(a x) = <conj(a), x>
        let basis = orthogonal_complement(&a.conj(), 0..1usize << level);
        return Ok(SolutionSet::new(
            Solutions::AffineSubspace { origin: Element::zero(level), basis },
            Completeness::General,
            level,
        ));
    }
    Ok(SolutionSet::new(Solutions::ScalingFamily(direction), Completeness::ParticularOnly, level))
}

/// `|a| = |b|`.
pub fn consimilar<S: Scalar>(a: &Element<S>, b: &Element<S>) -> Result<bool, Error> {
    same_level(a, b)?;
    Ok(scalar_close(&a.norm_sq(), &b.norm_sq()))
}

/// `p = |a| + conj(a)`, for which `conj(p) (|a| p^-1) = a`.
pub fn consim_to_norm_witness<S: Scalar>(a: &Element<S>) -> Result<Element<S>, Error> {
    let norm = need_sqrt(&a.norm_sq(), "|a|")?;
    let p = &Element::from_scalar(a.level(), norm) + &a.conj();
    if negligible(&p, a.norm()) {
        return Err(Error::Degenerate("|a| + conj(a) vanishes for a nonpositive real a"));
    }
    Ok(p)
}

/// Square roots of `a`.
///
/// Non-real `a` has exactly the two roots `±|a|^(1/2) (|a| + a) / ||a| + a|`.
/// Real input is handled classically: `±√a` for positive `a`, and for
/// negative `a` the sphere of imaginary elements of norm `√|a|`.
pub fn sqrt<S: Scalar>(a: &Element<S>) -> Result<SolutionSet<S>, Error> {
    let level = a.level();
    if a.is_zero() {
        return Ok(SolutionSet::new(Solutions::FinitePoints(vec![a.clone()]), Completeness::General, level)
            .flagged(Flag::RealInput));
    }
    if a.is_real() {
        let r = a.re();
        if r.is_positive() {
            let root = Element::from_scalar(level, need_sqrt(&r, "square root of a real")?);
            let points = vec![root.clone(), -root];
            return Ok(SolutionSet::new(Solutions::FinitePoints(points), Completeness::General, level)
                .flagged(Flag::RealInput));
        }
        if level == 0 {
            return Ok(SolutionSet::empty(level).flagged(Flag::RealInput));
        }
        let radius = need_sqrt(&-r, "square root of a real")?;
        let basis = (1..1usize << level).map(|i| Element::basis(level, i).scale(&radius)).collect();
        return Ok(SolutionSet::new(
            Solutions::AffineSubspace { origin: Element::zero(level), basis },
            Completeness::General,
            level,
        )
        .flagged(Flag::RootSphere));
    }
    let norm = need_sqrt(&a.norm_sq(), "|a|")?;
    let root_norm = need_sqrt(&norm, "|a|^(1/2)")?;
    let shifted = &Element::from_scalar(level, norm) + a;
    let shifted_norm = need_sqrt(&shifted.norm_sq(), "||a| + a|")?;
    let x = shifted.scale(&(root_norm / shifted_norm));
    let points = vec![x.clone(), -x];
    Ok(SolutionSet::new(Solutions::FinitePoints(points), Completeness::General, level))
}

/// Integer power; power-associativity makes it well defined at every level.
pub fn pow<S: Scalar>(a: &Element<S>, exponent: i64) -> Result<Element<S>, Error> {
    a.pow(exponent)
}

/// The `m` roots of `x^m = a` for non-real `a`.
///
/// `a` is rotated onto its canonical complex form `c` with a witness `x`
/// (`a x = x c`), the complex roots of `c` are taken, and each root `r` is
/// carried back as `(x r) x^-1`. Every candidate is checked against
/// `r^m = a` with relative tolerance `1e-9`. From the sedenions on the
/// transport is not justified, so only candidates passing the check are
/// returned.
pub fn nth_root(a: &Element<f64>, m: u32) -> Result<SolutionSet<f64>, Error> {
    const ROOT_TOL: f64 = 1e-9;
    let level = a.level();
    if m == 0 {
        return Err(Error::Degenerate("zeroth root"));
    }
    if a.is_real() {
        return Err(Error::Degenerate("nth_root expects a non-real element"));
    }
    let (canonical, witness, transport) = if level == 1 {
        (a.clone(), None, false)
    } else {
        let (c, w) = canonical_form(a)?;
        let x = w
            .representatives()
            .into_iter()
            .next()
            .ok_or(Error::Degenerate("canonical form has no nonzero witness"))?;
        (c, Some(x), true)
    };
    let (re, im) = (canonical.re(), *canonical.coeff(1));
    let radius = libm::pow(libm::hypot(re, im), 1.0 / m as f64);
    let theta = libm::atan2(im, re);
    let inv = match &witness {
        Some(x) => Some(x.inverse()?),
        None => None,
    };
    let mut roots = Vec::with_capacity(m as usize);
    for k in 0..m {
        let angle = (theta + 2.0 * PI * k as f64) / m as f64;
        let mut r = Element::zero(level);
        let mut c = r.coeffs().to_vec();
        c[0] = radius * libm::cos(angle);
        c[1] = radius * libm::sin(angle);
        r = Element::new(level, c)?;
        let y = match (&witness, &inv, transport) {
            (Some(x), Some(xi), true) => &(x * &r) * xi,
            _ => r,
        };
        let ok = y.pow(m as i64)?.approx_eq_tol(a, ROOT_TOL);
        match (ok, level <= 3) {
            (true, _) => roots.push(y),
            (false, true) => return Err(Error::VerificationFailed("r^m = a")),
            (false, false) => {}
        }
    }
    if roots.is_empty() {
        return Err(Error::Unsupported { level, what: "nth_root (no transported candidate verified)" });
    }
    Ok(SolutionSet::new(Solutions::FinitePoints(roots), Completeness::General, level))
}

/// Solves `conj(x) a x = b` for non-real `a`, `b` (levels up to 3).
///
/// Solvable iff some `λ > 0` has `Re a = λ Re b` and `|Im a| = λ |Im b|`.
/// When `Re b = 0`, `λ` is taken from the imaginary parts and `Re a = 0` is
/// required. The solution returned is
/// `N / (√λ |N|)` with `N = (Im a) p + p (λ Im b)` for the first `p` in a
/// fixed scan (`1, e_1, ...`, or the basis of the subalgebra generated by `a`
/// and `b` for octonions) giving a nonzero numerator. It satisfies `|x|^2 = 1/λ`.
pub fn solve_conj_transform<S: Scalar>(a: &Element<S>, b: &Element<S>) -> Result<SolutionSet<S>, Error> {
    let level = same_level(a, b)?;
    if level >= 4 {
        return Err(Error::Unsupported { level, what: "conj(x) a x = b" });
    }
    if a.is_real() || b.is_real() {
        return Err(Error::Degenerate("conj(x) a x = b expects non-real a and b"));
    }
    let (im_a, im_b) = (a.im(), b.im());
    let (na, nb) = (im_a.norm_sq(), im_b.norm_sq());
    let re_b_zero = if S::EXACT {
        b.re().is_zero()
    } else {
        b.re().is_negligible(b.norm() * 1e-3)
    };
    let lambda = if re_b_zero {
        let re_a_zero = if S::EXACT { a.re().is_zero() } else { a.re().is_negligible(a.norm() * 1e-3) };
        if !re_a_zero {
            return Ok(SolutionSet::empty(level));
        }
        need_sqrt(&(na / nb), "λ")?
    } else {
        let lambda = a.re() / b.re();
        if !lambda.is_positive() || !scalar_close(&na, &(lambda.clone() * lambda.clone() * nb)) {
            return Ok(SolutionSet::empty(level));
        }
        lambda
    };
    let candidates: Vec<Element<S>> = if level == 3 {
        SubalgebraBasis::generated_by(level, &[a.clone(), b.clone()])?.basis().to_vec()
    } else {
        (0..1usize << level).map(|i| Element::basis(level, i)).collect()
    };
    // a x = x (λ b) when |x|^2 = 1/λ
    let im_c = im_b.scale(&lambda);
    let scale = im_a.norm() + im_c.norm();
    let numerator = candidates
        .iter()
        .map(|p| module_image(&im_a, &im_c, p))
        .find(|n| !negligible(n, scale * 1e-3))
        .ok_or(Error::Degenerate("every parameter gives a zero numerator"))?;
    let denom = need_sqrt(&(lambda * numerator.norm_sq()), "√λ |(Im a)p + p(Im b)|")?;
    let x = numerator.scale(&(S::one() / denom));
    if !(&x.conj() * &(a * &x)).approx_eq(b) {
        return Err(Error::VerificationFailed("conj(x) a x = b"));
    }
    Ok(SolutionSet::new(Solutions::FinitePoints(vec![x]), Completeness::ParticularOnly, level))
}

/// Solves `x a x = b` (levels up to 3) through `(a x)^2 = a b`.
pub fn solve_xax<S: Scalar>(a: &Element<S>, b: &Element<S>) -> Result<SolutionSet<S>, Error> {
    let level = same_level(a, b)?;
    if level >= 4 {
        return Err(Error::Unsupported { level, what: "x a x = b" });
    }
    let a_inv = a.inverse()?;
    let roots = sqrt(&(a * b))?;
    let check = |x: &Element<S>| (&(x * a) * x).approx_eq(b);
    let mut out = match roots.solutions {
        Solutions::Empty => return Ok(SolutionSet::empty(level)),
        Solutions::FinitePoints(ps) => {
            let xs: Vec<Element<S>> = ps.iter().map(|s| &a_inv * s).filter(|x| check(x)).collect();
            if xs.is_empty() {
                return Err(Error::VerificationFailed("x a x = b"));
            }
            SolutionSet::new(Solutions::FinitePoints(xs), Completeness::General, level)
        }
        Solutions::AffineSubspace { basis, .. } => {
            let basis: Vec<Element<S>> = basis.iter().map(|u| &a_inv * u).collect();
            if !basis.iter().all(check) {
                return Err(Error::VerificationFailed("x a x = b"));
            }
            SolutionSet::new(
                Solutions::AffineSubspace { origin: Element::zero(level), basis },
                Completeness::General,
                level,
            )
        }
        _ => unreachable!("sqrt returns points, a sphere or nothing"),
    };
    out.flag = roots.flag;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadraticForm {
    /// `x^2 + b x + x b + c = 0`
    TwoSided,
    /// `x^2 + x b + c = 0` with `c` in the subalgebra generated by `b`.
    OneSided,
}

/// Quadratic equations by completing the square.
///
/// Two-sided: `(x + b)^2 = b^2 - c`. One-sided: inside the commutative
/// subalgebra generated by `b`, `(x + b/2)^2 = b^2/4 - c`. Every returned
/// representative is substituted back; a failure is reported as an error.
pub fn solve_quadratic<S: Scalar>(b: &Element<S>, c: &Element<S>, form: QuadraticForm) -> Result<SolutionSet<S>, Error> {
    let level = same_level(b, c)?;
    let (shift, target, completeness) = match form {
        QuadraticForm::TwoSided => (b.clone(), &(b * b) - c, Completeness::General),
        QuadraticForm::OneSided => {
            if !SubalgebraBasis::generated_by(level, core::slice::from_ref(b))?.contains(c) {
                return Err(Error::NotInSubalgebra);
            }
            let half = b.scale(&(S::one() / S::from_i64(2)));
            let target = &(&half * &half) - c;
            (half, target, Completeness::ParticularOnly)
        }
    };
    let origin = -&shift;
    let residual = |x: &Element<S>| {
        let lhs = match form {
            QuadraticForm::TwoSided => &(&(x * x) + &(b * x)) + &(x * b),
            QuadraticForm::OneSided => &(x * x) + &(x * b),
        };
        lhs.approx_eq(&-c)
    };
    let roots = if form == QuadraticForm::OneSided && !b.is_real() && target.is_real() && target.re() < S::zero() {
        // Stay inside the plane of b: y = ±√|d| Im b / |Im b|.
        let r = need_sqrt(&(-target.re() / b.im().norm_sq()), "√|d| / |Im b|")?;
        let y = b.im().scale(&r);
        SolutionSet::new(Solutions::FinitePoints(vec![y.clone(), -y]), completeness, level)
    } else {
        sqrt(&target)?
    };
    let solutions = match roots.solutions {
        Solutions::Empty => Solutions::Empty,
        Solutions::FinitePoints(ys) => Solutions::FinitePoints(ys.iter().map(|y| y + &origin).collect()),
        Solutions::AffineSubspace { basis, .. } => Solutions::AffineSubspace { origin, basis },
        _ => unreachable!("sqrt returns points, a sphere or nothing"),
    };
    let out = SolutionSet { solutions, completeness, semantics: semantics_for(level), flag: roots.flag };
    if !out.representatives().iter().all(residual) {
        return Err(Error::VerificationFailed("quadratic substitution"));
    }
    Ok(out)
}
