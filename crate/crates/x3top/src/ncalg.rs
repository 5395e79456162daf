//! Free associative graded algebras and their quotients by two-sided ideals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::linalg::{axpy, Echelon, SparseVec};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Alphabet {
    gens: Vec<Generator>,
}

impl Alphabet {
    pub fn new(gens: Vec<Generator>) -> Self {
        assert!(gens.iter().all(|g| g.degree > 0), "generator degrees must be positive");
        Alphabet { gens }
    }

    /// All generators in degree 1.
    pub fn degree_one(names: &[&str]) -> Self {
        Self::new(names.iter().map(|n| Generator { name: n.to_string(), degree: 1 }).collect())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn degree(&self, g: usize) -> usize {
        self.gens[g].degree
    }

    pub fn parity(&self, g: usize) -> usize {
        self.gens[g].degree % 2
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn word_degree(&self, w: &[usize]) -> usize {
        w.iter().map(|&g| self.degree(g)).sum()
    }
}

pub type Word = Vec<usize>;

/// Linear combination of words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NcElement {
    terms: BTreeMap<Word, Rational>,
}

impl NcElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Rational::one());
        NcElement { terms }
    }

    pub fn gen(g: usize) -> Self {
        Self::word(vec![g])
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Word, c: Rational) {
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NcElement { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_term(w, x * y);
            }
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, alphabet: &Alphabet, d: usize) -> Self {
        NcElement {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| alphabet.word_degree(w) == d)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// The single degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, alphabet: &Alphabet) -> Option<usize> {
        let mut degs = self.terms.keys().map(|w| alphabet.word_degree(w));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

/// Graded commutator ab - (-1)^{|a||b|} ba of two generators.
pub fn bracket(alphabet: &Alphabet, a: usize, b: usize) -> NcElement {
    let ab = NcElement::word(vec![a, b]);
    let ba = NcElement::word(vec![b, a]);
    if alphabet.parity(a) * alphabet.parity(b) == 1 {
        ab.add(&ba)
    } else {
        ab.sub(&ba)
    }
}

/// Degree-by-degree normal forms of T(V)/I.
///
/// Degree d is modelled as the column space of A_{d-|x|} (x) x over generators x,
/// cut down by the images of A_{d-|r|} . r for each relation r.
struct GradedQuotient<'a> {
    alphabet: &'a Alphabet,
    dims: Vec<usize>,
    offsets: Vec<Vec<Option<usize>>>,
    proj: Vec<Vec<SparseVec>>,
}

impl<'a> GradedQuotient<'a> {
    fn new(alphabet: &'a Alphabet) -> Self {
        GradedQuotient { alphabet, dims: vec![1], offsets: vec![vec![]], proj: vec![vec![]] }
    }

    fn column(&self, d: usize, x: usize, i: usize) -> usize {
        self.offsets[d][x].expect("letter block present") + i
    }

    /// u in A_k times letter x, left in column coordinates of degree k+|x|.
    fn times_letter_cols(&self, u: &SparseVec, k: usize, x: usize) -> SparseVec {
        let d = k + self.alphabet.degree(x);
        u.iter().map(|(i, c)| (self.column(d, x, *i), c.clone())).collect()
    }

    fn project(&self, d: usize, cols: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in cols {
            axpy(&mut out, c, &self.proj[d][*j]);
        }
        out
    }

    fn times_word_cols(&self, u: &SparseVec, k: usize, w: &[usize]) -> SparseVec {
        let (last, init) = w.split_last().expect("nonempty word");
        let mut v = u.clone();
        let mut deg = k;
        for &x in init {
            let cols = self.times_letter_cols(&v, deg, x);
            deg += self.alphabet.degree(x);
            v = self.project(deg, &cols);
            if v.is_empty() {
                return v;
            }
        }
        self.times_letter_cols(&v, deg, *last)
    }

    fn extend(&mut self, relations: &[(usize, &NcElement)]) {
        let d = self.dims.len();
        let mut offsets = vec![None; self.alphabet.len()];
        let mut ncols = 0;
        for (x, g) in self.alphabet.gens().iter().enumerate() {
            if g.degree <= d {
                offsets[x] = Some(ncols);
                ncols += self.dims[d - g.degree];
            }
        }
        self.offsets.push(offsets);
        let mut ech = Echelon::new();
        for &(m, r) in relations {
            if m > d {
                continue;
            }
            for u in 0..self.dims[d - m] {
                let mut e = SparseVec::new();
                e.insert(u, Rational::one());
                let mut row = SparseVec::new();
                for (w, c) in r.terms() {
                    let part = self.times_word_cols(&e, d - m, w);
                    axpy(&mut row, c, &part);
                }
                ech.insert(row);
            }
        }
        let mut index = vec![usize::MAX; ncols];
        let mut next = 0;
        for (j, slot) in index.iter_mut().enumerate() {
            if !ech.is_pivot(j) {
                *slot = next;
                next += 1;
            }
        }
        let proj = (0..ncols)
            .map(|j| {
                let mut e = SparseVec::new();
                e.insert(j, Rational::one());
                ech.reduce(e).into_iter().map(|(k, c)| (index[k], c)).collect()
            })
            .collect();
        self.proj.push(proj);
        self.dims.push(next);
    }
}

/// Graded dimensions 0..=maxdeg of the free algebra on `alphabet` modulo the ideal
/// generated by the homogeneous `relations`.
pub fn graded_dim_quotient_nc(alphabet: &Alphabet, relations: &[NcElement], maxdeg: usize) -> Vec<usize> {
    graded_dim_quotient_nc_cancellable(alphabet, relations, maxdeg, &|| false).expect("never cancelled")
}

/// As [`graded_dim_quotient_nc`], polling `cancel` before each degree; `None` once it returns true.
pub fn graded_dim_quotient_nc_cancellable(
    alphabet: &Alphabet,
    relations: &[NcElement],
    maxdeg: usize,
    cancel: &dyn Fn() -> bool,
) -> Option<Vec<usize>> {
    let rels: Vec<(usize, &NcElement)> = relations
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| {
            let m = r.homogeneous_degree(alphabet).expect("relations must be homogeneous");
            assert!(m >= 2, "relations must have degree at least 2");
            (m, r)
        })
        .collect();
    let mut q = GradedQuotient::new(alphabet);
    for _ in 1..=maxdeg {
        if cancel() {
            return None;
        }
        q.extend(&rels);
    }
    Some(q.dims)
}
