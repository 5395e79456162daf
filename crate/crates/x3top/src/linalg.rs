//! Sparse exact row reduction over the rationals.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

pub fn axpy(target: &mut SparseVec, c: &Rational, v: &SparseVec) {
    for (k, x) in v {
        let e = target.entry(*k).or_insert_with(Rational::zero);
        *e += c * x;
        if e.is_zero() {
            target.remove(k);
        }
    }
}

pub fn scale(v: &SparseVec, c: &Rational) -> SparseVec {
    if c.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(k, x)| (*k, x * c)).collect()
}

/// Row echelon basis of a growing subspace; every stored row has leading coefficient 1.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot_of: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(k, _)| self.pivot_of.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            match next {
                None => return v,
                Some((col, c)) => {
                    let row = &self.rows[self.pivot_of[&col]];
                    axpy(&mut v, &-c, row);
                    cursor = col + 1;
                }
            }
        }
    }

    /// Adds `v` to the span; returns false if it was already in it.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SparseVec) -> bool {
        let Some((&lead, c)) = r.iter().next() else {
            return false;
        };
        let inv = c.recip();
        let r = if inv.is_one() { r } else { scale(&r, &inv) };
        self.pivot_of.insert(lead, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

/// Basis of the kernel of the linear map sending basis vector i to `images[i]`.
pub fn kernel(images: &[SparseVec], codim_cols: usize) -> Vec<SparseVec> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        debug_assert!(img.keys().all(|&k| k < codim_cols));
        let mut v = img.clone();
        v.insert(codim_cols + i, Rational::one());
        let r = ech.reduce(v);
        if let Some((&lead, _)) = r.iter().next() {
            if lead >= codim_cols {
                out.push(r.iter().map(|(k, c)| (k - codim_cols, c.clone())).collect());
            }
        }
        ech.push_reduced(r);
    }
    out
}

/// Dimension of the span of `vs`.
pub fn rank(vs: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        pairs.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[(0, 1), (1, 2)])));
        assert!(e.insert(sv(&[(1, 1), (2, 1)])));
        assert!(!e.insert(sv(&[(0, 2), (1, 5), (2, 1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&sv(&[(0, 1), (1, 3), (2, 1)])));
        assert!(!e.contains(&sv(&[(2, 1)])));
    }

    #[test]
    fn kernel_basic() {
        // (x, y, z) -> (x + y, y + z)
        let imgs = vec![sv(&[(0, 1)]), sv(&[(0, 1), (1, 1)]), sv(&[(1, 1)])];
        let k = kernel(&imgs, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let get = |i| v.get(&i).cloned().unwrap_or_default();
        assert_eq!(get(0) + get(1), int(0));
        assert_eq!(get(1) + get(2), int(0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rank_nullity(m in proptest::collection::vec(proptest::collection::vec(-3i64..4, 4), 1..7)) {
                let imgs: Vec<SparseVec> = m.iter().map(|row| {
                    row.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, c)| (k, int(*c))).collect()
                }).collect();
                let r = rank(imgs.clone());
                prop_assert_eq!(kernel(&imgs, 4).len() + r, imgs.len());
            }
        }
    }
}
