//! Exact real-linear reduction of the element equations.
//!
//! Every equation handled by the solvers is linear over the reals once the
//! unknown is written in coordinates, so its solution space is the kernel of
//! a `2^n x 2^n` rational matrix. The kernel is computed with fraction-free
//! integer elimination, independently of any closed form.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::dim;
use crate::{structure_table, Element, Error, Rational, Scalar};

type Q = Element<Rational>;

/// Square rational matrix acting on coefficient vectors of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearOperator {
    level: u32,
    entries: Vec<Rational>,
}

impl LinearOperator {
    pub fn zero(level: u32) -> Self {
        let n = dim(level);
        LinearOperator { level, entries: vec![Rational::ZERO; n * n] }
    }

    pub fn identity(level: u32) -> Self {
        let mut m = Self::zero(level);
        for i in 0..m.dim() {
            m.set(i, i, Rational::ONE);
        }
        m
    }

    fn from_columns(level: u32, columns: impl Iterator<Item = Q>) -> Self {
        let mut m = Self::zero(level);
        for (j, col) in columns.enumerate() {
            for (i, c) in col.into_coeffs().into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Matrix of `x -> a x`: column `j` holds the coefficients of `a e_j`.
    pub fn left_mul(a: &Q) -> Self {
        let level = a.level();
        Self::from_columns(level, (0..dim(level)).map(|j| a * &Q::basis(level, j)))
    }

    /// Matrix of `x -> x a`: column `j` holds the coefficients of `e_j a`.
    pub fn right_mul(a: &Q) -> Self {
        let level = a.level();
        Self::from_columns(level, (0..dim(level)).map(|j| &Q::basis(level, j) * a))
    }

    /// `diag(1, -1, ..., -1)`, the matrix of `x -> conj(x)`.
    pub fn conjugation(level: u32) -> Self {
        let mut m = Self::identity(level).scale(&Rational::from_integer(-1));
        m.set(0, 0, Rational::ONE);
        m
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        dim(self.level)
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim() + col]
    }

    fn set(&mut self, row: usize, col: usize, value: Rational) {
        let n = self.dim();
        self.entries[row * n + col] = value;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim())
    }

    pub fn apply(&self, x: &Q) -> Q {
        let coeffs = self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(x.coeffs())
                    .fold(Rational::ZERO, |acc, (m, c)| acc + m.clone() * c.clone())
            })
            .collect();
        Element::new(self.level, coeffs).expect("operator and vector share a level")
    }

    fn zip(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self, Error> {
        if self.level != other.level {
            return Err(Error::LevelMismatch { left: self.level, right: other.level });
        }
        Ok(LinearOperator {
            level: self.level,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        LinearOperator {
            level: self.level,
            entries: self.entries.iter().map(|e| e.clone() * factor.clone()).collect(),
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, Error> {
        if self.level != other.level {
            return Err(Error::LevelMismatch { left: self.level, right: other.level });
        }
        let n = self.dim();
        let mut out = Self::zero(self.level);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Exact kernel of a [`LinearOperator`].
#[derive(Debug, Clone, PartialEq)]
pub struct Nullspace {
    pub level: u32,
    pub basis: Vec<Q>,
}

impl Nullspace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Clears denominators row by row, giving an integer matrix with the same kernel.
fn integer_rows(op: &LinearOperator) -> Vec<Vec<BigInt>> {
    op.rows()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::from(1), |acc, r| acc.lcm(&r.denom()));
            row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
        })
        .collect()
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && g != BigInt::from(1) {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Kernel basis by fraction-free Gauss-Jordan elimination.
///
/// Rows stay integral and primitive throughout. One basis vector is produced
/// per free column, in increasing column order, with a 1 in that column.
pub fn nullspace(op: &LinearOperator) -> Nullspace {
    let n = op.dim();
    let mut m = integer_rows(op);
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m.len() {
            break;
        }
        // Smallest nonzero entry keeps the numbers short.
        let Some(p) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].abs())
        else {
            continue;
        };
        m.swap(r, p);
        let pivot_row = m[r].clone();
        let pv = &pivot_row[c];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pv.gcd(&row[c]);
            let (mp, mr) = (pv / &g, &row[c] / &g);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = &*x * &mp - y * &mr;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    for free in 0..n {
        if pivot_iter.peek() == Some(&&free) {
            pivot_iter.next();
            continue;
        }
        let mut coeffs = vec![Rational::ZERO; n];
        coeffs[free] = Rational::ONE;
        for (row, &pc) in m.iter().zip(&pivots) {
            if !row[free].is_zero() {
                coeffs[pc] = Rational::from_bigints(-row[free].clone(), row[pc].clone())
                    .expect("pivot is nonzero");
            }
        }
        basis.push(Element::new(op.level, coeffs).expect("kernel vector has operator length"));
    }
    Nullspace { level: op.level, basis }
}

fn same_level(a: &Q, b: &Q) -> Result<(), Error> {
    if a.level() != b.level() {
        return Err(Error::LevelMismatch { left: a.level(), right: b.level() });
    }
    Ok(())
}

/// All `x` with `a x = x b`, as the kernel of `L_a - R_b`.
pub fn oracle_solve_sim(a: &Q, b: &Q) -> Result<Nullspace, Error> {
    same_level(a, b)?;
    Ok(nullspace(&LinearOperator::left_mul(a).sub(&LinearOperator::right_mul(b))?))
}

/// All `x` with `a x = conj(x) b`, as the kernel of `L_a - R_b ∘ C`.
pub fn oracle_solve_consim(a: &Q, b: &Q) -> Result<Nullspace, Error> {
    same_level(a, b)?;
    let rhs = LinearOperator::right_mul(b).compose(&LinearOperator::conjugation(a.level()))?;
    Ok(nullspace(&LinearOperator::left_mul(a).sub(&rhs)?))
}

/// Candidates `e_i ± e_j` (`1 <= i < j`), ordered by the larger index so the
/// lowest level where a pattern exists is reached first.
fn two_term_candidates(level: u32) -> impl Iterator<Item = (usize, usize, i64)> {
    let n = dim(level);
    (2..n).flat_map(|j| (1..j).flat_map(move |i| [(i, j, 1i64), (i, j, -1i64)]))
}

fn sparse_product_is_zero(level: u32, a: (usize, usize, i64), x: (usize, usize, i64)) -> bool {
    let table = structure_table(level).expect("level checked by caller");
    let mut acc: Vec<(usize, i64)> = Vec::with_capacity(4);
    for (ai, asg) in [(a.0, 1i64), (a.1, a.2)] {
        for (xi, xsg) in [(x.0, 1i64), (x.1, x.2)] {
            let e = table.get(ai, xi);
            let v = asg * xsg * e.sign as i64;
            match acc.iter_mut().find(|(k, _)| *k == e.index) {
                Some((_, c)) => *c += v,
                None => acc.push((e.index, v)),
            }
        }
    }
    acc.iter().all(|(_, c)| *c == 0)
}

fn two_term(level: u32, (i, j, s): (usize, usize, i64)) -> Q {
    let mut c = vec![Rational::ZERO; dim(level)];
    c[i] = Rational::ONE;
    c[j] = Rational::from_integer(s);
    Element::new(level, c).expect("length matches level")
}

/// Largest level searched exhaustively over two-term candidates.
const STRUCTURED_SEARCH_MAX_LEVEL: u32 = 6;

/// Looks for nonzero `a`, `x` with `a x = 0`.
///
/// First exhausts the pairs `(e_i ± e_j, e_k ± e_l)` (for levels up to 6),
/// then tries `budget` random integer elements `a` and checks the kernel of
/// `L_a` exactly. Every witness is re-verified with the doubling product.
pub fn zero_divisor_search(level: u32, budget: usize) -> Option<(Q, Q)> {
    if level <= STRUCTURED_SEARCH_MAX_LEVEL {
        for a in two_term_candidates(level) {
            for x in two_term_candidates(level) {
                if sparse_product_is_zero(level, a, x) {
                    let (ea, ex) = (two_term(level, a), two_term(level, x));
                    if (&ea * &ex).is_zero() {
                        return Some((ea, ex));
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + level as u64);
    for _ in 0..budget {
        let coeffs = (0..dim(level))
            .map(|_| Rational::from_integer(rng.gen_range(-3..=3)))
            .collect();
        let a = Element::new(level, coeffs).expect("length matches level");
        if a.is_zero() {
            continue;
        }
        if let Some(x) = nullspace(&LinearOperator::left_mul(&a)).basis.into_iter().next() {
            debug_assert!((&a * &x).is_zero());
            return Some((a, x));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::span_dimension;

    fn q(level: u32, c: &[i64]) -> Q {
        Q::from_i64s(level, c).unwrap()
    }

    fn e(level: u32, i: usize) -> Q {
        Q::basis(level, i)
    }

    #[test]
    fn unit_operators_are_identity() {
        assert_eq!(LinearOperator::left_mul(&Q::one(3)), LinearOperator::identity(3));
        assert_eq!(LinearOperator::right_mul(&Q::one(3)), LinearOperator::identity(3));
    }

    #[test]
    fn left_mul_by_i_sends_j_to_k() {
        assert_eq!(LinearOperator::left_mul(&e(2, 1)).apply(&e(2, 2)), e(2, 3));
    }

    #[test]
    fn left_and_right_i_differ_only_on_jk_block() {
        let l = LinearOperator::left_mul(&e(2, 1));
        let r = LinearOperator::right_mul(&e(2, 1));
        for i in 0..4 {
            for j in 0..4 {
                let in_block = i >= 2 && j >= 2;
                assert_eq!(l.get(i, j) != r.get(i, j), in_block && i != j, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn conjugation_matrix() {
        let c1 = LinearOperator::conjugation(1);
        assert_eq!(c1.get(0, 0), &Rational::ONE);
        assert_eq!(c1.get(1, 1), &Rational::from_integer(-1));
        assert_eq!(c1.compose(&c1).unwrap(), LinearOperator::identity(1));
        let a = q(3, &[1, -2, 3, 0, 5, 0, 1, 7]);
        let x = q(3, &[0, 4, -1, 2, 0, 3, 0, 1]);
        let op = LinearOperator::left_mul(&a).compose(&LinearOperator::conjugation(3)).unwrap();
        assert_eq!(op.apply(&x), &a * &x.conj());
    }

    #[test]
    fn centralizer_of_i() {
        let op = LinearOperator::left_mul(&e(2, 1)).sub(&LinearOperator::right_mul(&e(2, 1))).unwrap();
        let ns = nullspace(&op);
        assert_eq!(ns.basis, vec![e(2, 0), e(2, 1)]);
    }

    #[test]
    fn trivial_kernels() {
        assert_eq!(nullspace(&LinearOperator::zero(3)).dimension(), 8);
        let op = LinearOperator::left_mul(&e(2, 1))
            .sub(&LinearOperator::right_mul(&e(2, 1)))
            .unwrap()
            .add(&LinearOperator::identity(2))
            .unwrap();
        assert_eq!(nullspace(&op).dimension(), 0);
    }

    #[test]
    fn similarity_oracle() {
        let ns = oracle_solve_sim(&e(2, 1), &e(2, 2)).unwrap();
        assert_eq!(ns.dimension(), 2);
        for x in &ns.basis {
            assert_eq!(&e(2, 1) * x, x * &e(2, 2));
        }
        assert_eq!(oracle_solve_sim(&q(2, &[1, 1, 0, 0]), &q(2, &[2, 1, 0, 0])).unwrap().dimension(), 0);
        let a = q(2, &[2, 1, -3, 1]);
        let ns = oracle_solve_sim(&a, &a).unwrap();
        assert_eq!(ns.dimension(), 2);
        assert!(crate::same_span(&ns.basis, &[Q::one(2), a]));
    }

    #[test]
    fn consimilarity_oracle() {
        let (i, j) = (e(2, 1), e(2, 2));
        let ns = oracle_solve_consim(&i, &j).unwrap();
        let x = q(2, &[0, -1, 1, 0]);
        assert_eq!(&i * &x, &x.conj() * &j);
        let mut with_x = ns.basis.clone();
        with_x.push(x);
        assert_eq!(span_dimension(&with_x), ns.dimension());

        assert_eq!(oracle_solve_consim(&q(2, &[1, 0, 0, 0]), &q(2, &[2, 0, 0, 0])).unwrap().dimension(), 0);
        let ns = oracle_solve_consim(&q(2, &[1, 0, 0, 0]), &q(2, &[-1, 0, 0, 0])).unwrap();
        assert_eq!(ns.basis, vec![e(2, 1), e(2, 2), e(2, 3)]);
    }

    #[test]
    fn kernel_vectors_satisfy_the_equation() {
        let a = q(4, &[1, 2, 0, -1, 0, 0, 3, 0, 1, 0, 0, 0, -2, 0, 1, 0]);
        let b = q(4, &[1, 0, 1, 2, -1, 0, 0, 0, 0, 3, 0, -1, 0, 1, 0, 0]);
        for x in oracle_solve_sim(&a, &b).unwrap().basis {
            assert_eq!(&a * &x, &x * &b);
        }
    }

    #[test]
    fn zero_divisors_only_from_sedenions_on() {
        for level in 0..=3 {
            assert!(zero_divisor_search(level, 20).is_none(), "level {level}");
        }
        let (a, x) = zero_divisor_search(4, 0).expect("sedenions have zero divisors");
        assert!(!a.is_zero() && !x.is_zero());
        assert!((&a * &x).is_zero());
        assert_eq!(a.coeffs().iter().filter(|c| !c.is_zero()).count(), 2);
    }
}
