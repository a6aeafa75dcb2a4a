//! Linear spans and multiplicative closure.

use alloc::vec::Vec;

use crate::{Element, Error, Scalar};

/// Incrementally maintained reduced row-echelon form of a set of vectors.
///
/// Exact on rationals; on floats a residual counts as zero when it is below
/// `1e-9` of the magnitude of the vector being inserted.
#[derive(Debug, Clone)]
pub struct SpanTracker<S> {
    width: usize,
    rows: Vec<(usize, Vec<S>)>,
}

impl<S: Scalar> SpanTracker<S> {
    pub fn new(width: usize) -> Self {
        SpanTracker { width, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[S]) -> Vec<S> {
        debug_assert_eq!(v.len(), self.width);
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let f = v[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - f.clone() * r.clone();
                }
            }
        }
        v
    }

    fn scale_of(v: &[S]) -> f64 {
        v.iter().map(|c| libm::fabs(c.to_f64())).fold(0.0, f64::max)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        let scale = Self::scale_of(v);
        self.reduce(v).iter().all(|c| c.is_negligible(scale))
    }

    /// Adds `v`; returns `false` (and changes nothing) if it was already in the span.
    pub fn insert(&mut self, v: &[S]) -> bool {
        let scale = Self::scale_of(v);
        let mut r = self.reduce(v);
        let Some(pivot) = r.iter().position(|c| !c.is_negligible(scale)) else {
            return false;
        };
        let inv = S::one() / r[pivot].clone();
        for x in r.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        r[pivot] = S::one();
        for (_, row) in self.rows.iter_mut() {
            let f = row[pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&r) {
                *x = x.clone() - f.clone() * y.clone();
            }
        }
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, r));
        true
    }
}

/// Dimension of the linear span of `elements`.
pub fn span_dimension<S: Scalar>(elements: &[Element<S>]) -> usize {
    let Some(first) = elements.first() else { return 0 };
    let mut t = SpanTracker::new(first.dim());
    elements.iter().filter(|e| t.insert(e.coeffs())).count()
}

/// Whether two families span the same subspace.
pub fn same_span<S: Scalar>(a: &[Element<S>], b: &[Element<S>]) -> bool {
    let joint: Vec<Element<S>> = a.iter().chain(b).cloned().collect();
    let (ra, rb, rj) = (span_dimension(a), span_dimension(b), span_dimension(&joint));
    ra == rj && rb == rj
}

/// A multiplicatively closed subspace containing 1, given by a basis.
#[derive(Debug, Clone)]
pub struct SubalgebraBasis<S> {
    ambient_level: u32,
    basis: Vec<Element<S>>,
    span: SpanTracker<S>,
}

impl<S: Scalar> SubalgebraBasis<S> {
    /// Smallest subalgebra containing 1 and `generators`.
    ///
    /// Starts from `{1} ∪ generators` and keeps appending products that leave
    /// the current span until nothing new appears. Always terminates because
    /// the dimension is bounded by `2^level`.
    pub fn generated_by(level: u32, generators: &[Element<S>]) -> Result<Self, Error> {
        for g in generators {
            if g.level() != level {
                return Err(Error::LevelMismatch { left: g.level(), right: level });
            }
        }
        let one = Element::one(level);
        let mut span = SpanTracker::new(one.dim());
        span.insert(one.coeffs());
        let mut basis = alloc::vec![one];
        for g in generators {
            if span.insert(g.coeffs()) {
                basis.push(g.clone());
            }
        }
        let mut k = 0;
        while k < basis.len() {
            for j in 0..=k {
                for (x, y) in [(k, j), (j, k)] {
                    let p = &basis[x] * &basis[y];
                    if span.insert(p.coeffs()) {
                        basis.push(p);
                    }
                }
            }
            k += 1;
        }
        Ok(SubalgebraBasis { ambient_level: level, basis, span })
    }

    pub fn ambient_level(&self) -> u32 {
        self.ambient_level
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Element<S>] {
        &self.basis
    }

    pub fn contains(&self, x: &Element<S>) -> bool {
        x.level() == self.ambient_level && self.span.contains(x.coeffs())
    }
}

/// Basis of the subalgebra generated by `generators` (see [`SubalgebraBasis::generated_by`]).
pub fn subalgebra_basis<S: Scalar>(level: u32, generators: &[Element<S>]) -> Result<Vec<Element<S>>, Error> {
    Ok(SubalgebraBasis::generated_by(level, generators)?.basis)
}
