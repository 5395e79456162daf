//! Commutative polynomial rings with even weights and degree-truncated ideal arithmetic.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::{Echelon, SparseVec};
use crate::rational::{int, Rational};

pub type Monomial = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<usize>,
}

impl PolyRing {
    /// All variables of weight 2.
    pub fn new(names: &[&str]) -> Self {
        Self::weighted(names, &vec![2; names.len()])
    }

    pub fn weighted(names: &[&str], weights: &[usize]) -> Self {
        assert_eq!(names.len(), weights.len());
        assert!(weights.iter().all(|w| *w > 0 && w % 2 == 0), "weights must be positive and even");
        PolyRing { names: names.iter().map(|s| s.to_string()).collect(), weights: weights.to_vec() }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn var(&self, name: &str) -> CommPoly {
        let i = self.index(name).unwrap_or_else(|| panic!("unknown variable {name}"));
        CommPoly::var(self.nvars(), i)
    }

    pub fn weight(&self, m: &[u32]) -> usize {
        m.iter().zip(&self.weights).map(|(e, w)| *e as usize * w).sum()
    }

    /// Monomials of weighted degree `d`, in graded lexicographic order.
    pub fn monomials(&self, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.nvars()];
        self.fill(0, d, &mut cur, &mut out);
        out
    }

    fn fill(&self, i: usize, rem: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = self.weights[i];
        let mut e = rem / w;
        loop {
            cur[i] = e as u32;
            self.fill(i + 1, rem - e * w, cur, out);
            if e == 0 {
                break;
            }
            e -= 1;
        }
        cur[i] = 0;
    }

    pub fn fmt_poly(&self, p: &CommPoly) -> String {
        p.display(&self.names)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl CommPoly {
    pub fn zero(nvars: usize) -> Self {
        CommPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, Rational::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(m.len());
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    pub fn scale_i(&self, c: i64) -> Self {
        self.scale(&int(c))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let m: Monomial = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(m, x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(self.nvars, Rational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn product<'a>(nvars: usize, fs: impl IntoIterator<Item = &'a CommPoly>) -> Self {
        let mut out = Self::constant(nvars, Rational::one());
        for f in fs {
            out = out.mul(f);
        }
        out
    }

    /// Weighted degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self, ring: &PolyRing) -> Option<usize> {
        let mut it = self.terms.keys().map(|m| ring.weight(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Ring homomorphism given by the images of the variables.
    pub fn substitute(&self, images: &[CommPoly]) -> CommPoly {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = CommPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = CommPoly::constant(target, c.clone());
            for (i, e) in m.iter().enumerate() {
                if *e > 0 {
                    t = t.mul(&images[i].pow(*e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mon: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
                .collect();
            if mon.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&mon.join("*"));
            }
        }
        s
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{i}")).collect();
        f.write_str(&self.display(&names))
    }
}

/// Coordinates of homogeneous polynomials of one weighted degree.
pub struct DegreePiece {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreePiece {
    pub fn new(ring: &PolyRing, d: usize) -> Self {
        let monomials = ring.monomials(d);
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        DegreePiece { monomials, index }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn coords(&self, p: &CommPoly) -> SparseVec {
        p.terms()
            .iter()
            .map(|(m, c)| (*self.index.get(m).expect("polynomial not in this degree"), c.clone()))
            .collect()
    }

    pub fn poly(&self, v: &SparseVec) -> CommPoly {
        let n = self.monomials.first().map(|m| m.len()).unwrap_or(0);
        let mut p = CommPoly::zero(n);
        for (i, c) in v {
            p.add_term(self.monomials[*i].clone(), c.clone());
        }
        p
    }
}

/// Echelon basis of the degree-`d` part of the ideal generated by `gens`.
pub fn ideal_piece(ring: &PolyRing, gens: &[CommPoly], d: usize) -> (DegreePiece, Echelon) {
    let piece = DegreePiece::new(ring, d);
    let mut ech = Echelon::new();
    for g in gens {
        let Some(gd) = g.homogeneous_degree(ring) else { continue };
        if gd > d {
            continue;
        }
        for m in ring.monomials(d - gd) {
            let p = g.mul(&CommPoly::monomial(m, Rational::one()));
            ech.insert(piece.coords(&p));
        }
    }
    (piece, ech)
}

/// Quotient dimensions at weighted degrees 0..=maxdeg.
pub fn graded_dim_quotient_comm(ring: &PolyRing, gens: &[CommPoly], maxdeg: usize) -> Vec<usize> {
    for g in gens {
        assert!(g.is_zero() || g.homogeneous_degree(ring).is_some(), "ideal generators must be homogeneous");
    }
    (0..=maxdeg)
        .map(|d| {
            let (piece, ech) = ideal_piece(ring, gens, d);
            piece.dim() - ech.rank()
        })
        .collect()
}
