//! Signed structure constants `e_i * e_j = sign * e_k`.

use alloc::vec::Vec;

use spin::Once;

use crate::element::dim;
use crate::{Element, Error, Scalar};

/// Levels up to this one are available from [`structure_table`] (256 x 256 entries).
pub const DEFAULT_MAX_TABLE_LEVEL: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedIndex {
    pub sign: i8,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable {
    level: u32,
    entries: Vec<SignedIndex>,
}

/// Product of two basis units at `level`: the doubling rule restricted to
/// units, where every step stays inside one half and at most flips a sign.
pub fn basis_product(level: u32, p: usize, q: usize) -> SignedIndex {
    if level == 0 {
        return SignedIndex { sign: 1, index: 0 };
    }
    let h = 1usize << (level - 1);
    let conj_sign = |i: usize| if i == 0 { 1 } else { -1 };
    match (p < h, q < h) {
        (true, true) => basis_product(level - 1, p, q),
        // (p, 0)(0, q') = (0, q' p)
        (true, false) => {
            let r = basis_product(level - 1, q - h, p);
            SignedIndex { sign: r.sign, index: r.index + h }
        }
        // (0, p')(q, 0) = (0, p' conj(q))
        (false, true) => {
            let r = basis_product(level - 1, p - h, q);
            SignedIndex { sign: r.sign * conj_sign(q), index: r.index + h }
        }
        // (0, p')(0, q') = (-conj(q') p', 0)
        (false, false) => {
            let r = basis_product(level - 1, q - h, p - h);
            SignedIndex { sign: -r.sign * conj_sign(q - h), index: r.index }
        }
    }
}

impl StructureTable {
    /// Builds the table for `level`, refusing levels above `cap`.
    pub fn build(level: u32, cap: u32) -> Result<Self, Error> {
        if level > cap {
            return Err(Error::LevelTooLarge { level, max: cap });
        }
        let n = dim(level);
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(basis_product(level, i, j));
            }
        }
        Ok(StructureTable { level, entries })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        dim(self.level)
    }

    pub fn get(&self, i: usize, j: usize) -> SignedIndex {
        self.entries[i * self.dim() + j]
    }

    /// Rows of the table, row `i` holding `e_i * e_j` for every `j`.
    pub fn rows(&self) -> impl Iterator<Item = &[SignedIndex]> {
        self.entries.chunks(self.dim())
    }

    /// Product by coefficient convolution against the table.
    pub fn multiply<S: Scalar>(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>, Error> {
        for x in [a, b] {
            if x.level() != self.level {
                return Err(Error::LevelMismatch { left: x.level(), right: self.level });
            }
        }
        let n = self.dim();
        let mut out = alloc::vec![S::zero(); n];
        for (i, ai) in a.coeffs().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs().iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let e = self.get(i, j);
                let term = ai.clone() * bj.clone();
                out[e.index] = if e.sign > 0 {
                    out[e.index].clone() + term
                } else {
                    out[e.index].clone() - term
                };
            }
        }
        Element::new(self.level, out)
    }
}

static TABLES: [Once<StructureTable>; DEFAULT_MAX_TABLE_LEVEL as usize + 1] =
    [const { Once::new() }; DEFAULT_MAX_TABLE_LEVEL as usize + 1];

/// Memoized table for `level <= DEFAULT_MAX_TABLE_LEVEL`.
pub fn structure_table(level: u32) -> Result<&'static StructureTable, Error> {
    if level > DEFAULT_MAX_TABLE_LEVEL {
        return Err(Error::LevelTooLarge { level, max: DEFAULT_MAX_TABLE_LEVEL });
    }
    Ok(TABLES[level as usize]
        .call_once(|| StructureTable::build(level, DEFAULT_MAX_TABLE_LEVEL).expect("level checked")))
}
