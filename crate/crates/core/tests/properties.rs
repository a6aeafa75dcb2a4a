use cayley_core::oracle::{oracle_solve_consim, oracle_solve_sim};
use cayley_core::solvers::{
    consim_to_norm_witness, solve_consim, solve_quadratic, solve_sim, sqrt, Completeness, QuadraticForm, Solutions,
};
use cayley_core::{same_span, span_dimension, structure_table, Element, Rational, Scalar};
use proptest::prelude::*;

type Q = Element<Rational>;
type F = Element<f64>;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=3).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn element(level: u32) -> impl Strategy<Value = Q> {
    prop::collection::vec(rational(), 1usize << level).prop_map(move |c| Q::new(level, c).unwrap())
}

fn float_element(level: u32) -> impl Strategy<Value = F> {
    prop::collection::vec(-5.0f64..5.0, 1usize << level).prop_map(move |c| F::new(level, c).unwrap())
}

fn leveled(levels: std::ops::RangeInclusive<u32>) -> impl Strategy<Value = (Q, Q)> {
    levels.prop_flat_map(|n| (element(n), element(n)))
}

fn two() -> Rational {
    Rational::from_integer(2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn table_and_doubling_agree((a, b) in leveled(0..=5)) {
        let t = structure_table(a.level()).unwrap();
        prop_assert_eq!(t.multiply(&a, &b).unwrap(), &a * &b);
    }

    #[test]
    fn quadratic_identity_every_level(a in (0u32..=6).prop_flat_map(element)) {
        let lhs = &(&(&a * &a) - &a.scale(&(a.re() * two()))) + &Q::from_scalar(a.level(), a.norm_sq());
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn conjugation_reverses_products((a, b) in leveled(0..=5)) {
        prop_assert_eq!((&a * &b).conj(), &b.conj() * &a.conj());
    }

    #[test]
    fn norm_is_multiplicative_through_octonions((a, b) in leveled(0..=3)) {
        prop_assert_eq!((&a * &b).norm_sq(), a.norm_sq() * b.norm_sq());
    }

    #[test]
    fn inverse_is_two_sided(a in (0u32..=5).prop_flat_map(element)) {
        prop_assume!(!a.is_zero());
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv) == Q::one(a.level()) && (&inv * &a) == Q::one(a.level()));
    }

    #[test]
    fn embedding_is_a_homomorphism((a, b) in leveled(0..=4)) {
        let n = a.level() + 1;
        let (ea, eb) = (a.embed(n).unwrap(), b.embed(n).unwrap());
        prop_assert_eq!(&ea * &eb, (&a * &b).embed(n).unwrap());
    }

    #[test]
    fn power_bracketings_agree(a in (0u32..=5).prop_flat_map(element)) {
        let a2 = &a * &a;
        let a3 = &a * &a2;
        prop_assert_eq!(&a2 * &a, a3.clone());
        prop_assert_eq!(&a3 * &a, &a2 * &a2);
        prop_assert_eq!(a.pow(4).unwrap(), &a2 * &a2);
    }

    #[test]
    fn sim_solutions_are_sound_and_general((a, p) in leveled(2..=3)) {
        prop_assume!(!p.is_zero());
        let b = &(&p * &a) * &p.inverse().unwrap();
        let set = solve_sim(&a, &b).unwrap();
        prop_assert!(!set.is_empty());
        for x in set.representatives() {
            prop_assert_eq!(&a * &x, &x * &b);
        }
        if set.completeness == Completeness::General {
            let kernel = oracle_solve_sim(&a, &b).unwrap();
            prop_assert!(same_span(&set.linear_span().unwrap(), &kernel.basis));
        }
    }

    #[test]
    fn dissimilar_quaternions_have_trivial_kernel((a, b) in leveled(2..=2)) {
        let set = solve_sim(&a, &b).unwrap();
        let kernel = oracle_solve_sim(&a, &b).unwrap();
        prop_assert_eq!(set.is_empty(), kernel.dimension() == 0);
    }

    #[test]
    fn consim_family_is_sound((a, q) in leveled(2..=4)) {
        // b = a with a signed permutation of coefficients has the same norm
        let c: Vec<Rational> = a.coeffs().iter().rev().enumerate()
            .map(|(i, x)| if q.coeff(i).is_zero() { -x.clone() } else { x.clone() }).collect();
        let b = Q::new(a.level(), c).unwrap();
        let set = solve_consim(&a, &b).unwrap();
        for x in set.representatives() {
            prop_assert_eq!(&a * &x, &x.conj() * &b);
        }
        if a.level() <= 3 && set.completeness == Completeness::General {
            let kernel = oracle_solve_consim(&a, &b).unwrap();
            prop_assert!(same_span(&set.linear_span().unwrap(), &kernel.basis));
        }
    }

    #[test]
    fn consim_degenerate_case_is_the_kernel(a in (2u32..=3).prop_flat_map(element)) {
        let b = -a.conj();
        let set = solve_consim(&a, &b).unwrap();
        let affine = matches!(set.solutions, Solutions::AffineSubspace { .. });
        prop_assert!(affine);
        let kernel = oracle_solve_consim(&a, &b).unwrap();
        prop_assert!(same_span(&set.linear_span().unwrap(), &kernel.basis));
    }

    #[test]
    fn norm_witness_reproduces_input(a in (2u32..=4).prop_flat_map(float_element)) {
        prop_assume!(!a.is_real() || a.re() > 0.0);
        let p = consim_to_norm_witness(&a).unwrap();
        let back = &p.conj() * &(&F::from_scalar(a.level(), a.norm()) * &p.inverse().unwrap());
        prop_assert!(back.approx_eq(&a));
    }

    #[test]
    fn square_roots_square_back(a in (1u32..=5).prop_flat_map(float_element)) {
        let set = sqrt(&a).unwrap();
        for x in set.representatives() {
            prop_assert!((&x * &x).approx_eq(&a));
        }
    }

    #[test]
    fn two_sided_quadratic_roots_substitute((b, c) in leveled(2..=3)) {
        let (b, c) = (b.to_f64(), c.to_f64());
        let set = solve_quadratic(&b, &c, QuadraticForm::TwoSided).unwrap();
        prop_assert!(!set.representatives().is_empty());
    }
}

#[test]
fn centralizer_contains_span_of_one_and_a() {
    let a = Q::from_i64s(3, &[1, 2, -1, 0, 3, 0, 1, 0]).unwrap();
    let kernel = oracle_solve_sim(&a, &a).unwrap();
    let joint: Vec<Q> = kernel.basis.iter().cloned().chain([Q::one(3), a.clone()]).collect();
    assert_eq!(span_dimension(&joint), kernel.dimension());
}
