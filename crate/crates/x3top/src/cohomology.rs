//! Rational cohomology rings of the classifying spaces and the restriction maps to tori.

use std::fmt;

use num_traits::{One, Zero};

use crate::commalg::{ideal_piece, graded_dim_quotient_comm, CommPoly, DegreePiece, PolyRing};
use crate::homology::{Boundary, LambdaRange, Shape, ShapeError};
use crate::linalg::{kernel, rank, Echelon, SparseVec};
use crate::rational::Rational;
use crate::toric::{a_identification, identification, Axis};

pub const VARS: [&str; 6] = ["X0", "Y0", "X1", "Y1", "Z", "T"];

/// Q[X0,Y0,X1,Y1,Z,T], all in degree 2.
pub fn big_ring() -> PolyRing {
    PolyRing::new(&VARS)
}

fn v(name: &str) -> CommPoly {
    big_ring().var(name)
}

fn lin(coeffs: [i64; 6]) -> CommPoly {
    let mut p = CommPoly::zero(6);
    for (i, c) in coeffs.iter().enumerate() {
        p = p.add(&CommPoly::var(6, i).scale_i(*c));
    }
    p
}

/// The monomial ideal I, written in whichever of its variables `ring` has.
pub fn ideal_i_in(ring: &PolyRing) -> Vec<CommPoly> {
    [("X0", "X1"), ("Y0", "Y1"), ("X0", "Y1"), ("Y0", "Z"), ("X1", "Z")]
        .iter()
        .map(|(a, b)| ring.var(a).mul(&ring.var(b)))
        .collect()
}

pub fn ideal_i() -> Vec<CommPoly> {
    ideal_i_in(&big_ring())
}

/// A_k = k(X0+X1+k(Z+Y0)) + (k-1)(T+kY1).
pub fn a_k(k: i64) -> CommPoly {
    lin([k, k * k, k, (k - 1) * k, k * k, k - 1])
}

/// B_k = k(X0+X1-k(Z+Y0)) + (k+1)(T-kY1).
pub fn b_k(k: i64) -> CommPoly {
    lin([k, -k * k, k, -(k + 1) * k, -k * k, k + 1])
}

fn prod_ab(upto: i64) -> CommPoly {
    let mut p = CommPoly::constant(6, Rational::one());
    for k in 1..=upto {
        p = p.mul(&a_k(k)).mul(&b_k(k));
    }
    p
}

/// Extra generators of the ideal for the given lambda range; `ell >= 1`.
pub fn ideal_i_lambda_ell(range: LambdaRange, ell: i64) -> Vec<CommPoly> {
    assert!(ell >= 1, "ell must be at least 1");
    let t = v("T");
    let tp = t.mul(&prod_ab(ell - 1));
    let l = ell;
    match range {
        LambdaRange::A => vec![
            tp.mul(&lin([1, l, 0, 0, 0, 0])),
            tp.mul(&lin([0, 0, l, (l - 1) * l, l * l, l - 1])),
        ],
        LambdaRange::B => vec![tp.mul(&a_k(l))],
        LambdaRange::C => {
            let ta = tp.mul(&a_k(l));
            vec![
                ta.mul(&lin([0, -l, 1, 0, 0, 1])),
                ta.mul(&lin([l, 0, 0, -l * (l + 1), -l * l, 1])),
            ]
        }
        LambdaRange::D => vec![t.mul(&prod_ab(l))],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRing {
    pub name: String,
    pub ring: PolyRing,
    pub ideal_gens: Vec<CommPoly>,
}

impl QuotientRing {
    pub fn new(name: impl Into<String>, ring: PolyRing, ideal_gens: Vec<CommPoly>) -> Self {
        for g in &ideal_gens {
            assert_eq!(g.nvars(), ring.nvars());
            assert!(g.is_zero() || g.homogeneous_degree(&ring).is_some(), "generators must be homogeneous");
        }
        QuotientRing { name: name.into(), ring, ideal_gens }
    }

    pub fn hilbert(&self, maxdeg: usize) -> Vec<usize> {
        graded_dim_quotient_comm(&self.ring, &self.ideal_gens, maxdeg)
    }

    pub fn minimal_generators(&self, maxdeg: usize) -> Vec<CommPoly> {
        minimal_generators(&self.ring, &self.ideal_gens, maxdeg)
    }

    /// Weighted degrees of a minimal generating set, sorted.
    pub fn minimal_relation_degrees(&self, maxdeg: usize) -> Vec<usize> {
        self.minimal_generators(maxdeg)
            .iter()
            .map(|g| g.homogeneous_degree(&self.ring).expect("homogeneous"))
            .collect()
    }

    pub fn fmt_poly(&self, p: &CommPoly) -> String {
        p.display(self.ring.names())
    }

    pub fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "variables": self.ring.names(),
            "ideal_gens": self.ideal_gens.iter().map(|g| self.fmt_poly(g)).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.ideal_gens.iter().map(|g| self.fmt_poly(g)).collect();
        write!(f, "Q[{}]/({})", self.ring.names().join(","), gens.join(", "))
    }
}

pub fn mu1_ring() -> QuotientRing {
    let ring = PolyRing::new(&VARS[..5]);
    let gens = ideal_i_in(&ring);
    QuotientRing::new("mu1", ring, gens)
}

pub fn bg_infinity_ring() -> QuotientRing {
    QuotientRing::new("bg_infinity", big_ring(), ideal_i())
}

/// The generic ring for lambda range `range` at `ell >= 1`.
pub fn generic_ring(range: LambdaRange, ell: i64) -> QuotientRing {
    let mut gens = ideal_i();
    gens.extend(ideal_i_lambda_ell(range, ell));
    QuotientRing::new(format!("generic_{}_{}", range.label(), ell), big_ring(), gens)
}

/// Ring on the stratum c1 = c2 = 1/2. `ell = 0` is the mu = 1 ring; otherwise `range` is A
/// (lambda <= 1/2) or B.
pub fn r3_ring(range: LambdaRange, ell: i64) -> QuotientRing {
    if ell == 0 {
        return QuotientRing::new("r3_mu1", PolyRing::new(&["X0", "Y0"]), vec![]);
    }
    assert!(matches!(range, LambdaRange::A | LambdaRange::B), "range must be a or b");
    let ring = PolyRing::new(&["X0", "Y0", "X1", "T"]);
    let l4 = |c: [i64; 4]| {
        let mut p = CommPoly::zero(4);
        for (i, x) in c.iter().enumerate() {
            p = p.add(&CommPoly::var(4, i).scale_i(*x));
        }
        p
    };
    let ak = |k: i64| l4([k, k * k, k, k - 1]);
    let bk = |k: i64| l4([k, -k * k, k, k + 1]);
    let mut tp = ring.var("T");
    for k in 1..ell {
        tp = tp.mul(&ak(k)).mul(&bk(k));
    }
    let l = ell;
    let extra = match range {
        LambdaRange::A => vec![tp.mul(&l4([1, l, 0, 0])), tp.mul(&l4([0, 0, l, l - 1]))],
        _ => {
            let ta = tp.mul(&ak(l));
            vec![ta.mul(&l4([0, -l, 1, 1])), ta.mul(&l4([l, 0, 0, 1]))]
        }
    };
    let mut gens = vec![ring.var("X0").mul(&ring.var("X1"))];
    gens.extend(extra);
    QuotientRing::new(format!("r3_{}_{}", range.label(), ell), ring, gens)
}

/// Ring attached to a shape: generic shapes and the c1 = c2 = 1/2 stratum.
pub fn ring_for_shape(s: &Shape) -> Result<QuotientRing, ShapeError> {
    match s.boundary() {
        Boundary::Generic if s.ell == 0 => Ok(mu1_ring()),
        Boundary::Generic => Ok(generic_ring(s.lambda_range(), s.ell)),
        Boundary::R3 => {
            let range = if s.lambda <= crate::rational::rat(1, 2) { LambdaRange::A } else { LambdaRange::B };
            Ok(r3_ring(range, s.ell))
        }
        b => Err(ShapeError::NotGeneric(b)),
    }
}

fn degree_of(ring: &PolyRing, g: &CommPoly) -> usize {
    g.homogeneous_degree(ring).expect("homogeneous generator")
}

/// Minimal homogeneous generating subset, degree by degree.
pub fn minimal_generators(ring: &PolyRing, gens: &[CommPoly], maxdeg: usize) -> Vec<CommPoly> {
    let mut kept: Vec<CommPoly> = Vec::new();
    for d in 0..=maxdeg {
        let (piece, mut ech) = ideal_piece(ring, &kept, d);
        for g in gens.iter().filter(|g| !g.is_zero() && degree_of(ring, g) == d) {
            if ech.insert(piece.coords(g)) {
                kept.push(g.clone());
            }
        }
    }
    kept
}

pub fn ideal_product(a: &[CommPoly], b: &[CommPoly]) -> Vec<CommPoly> {
    a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).filter(|p| !p.is_zero()).collect()
}

/// Basis of the degree-`d` part of the intersection of two ideals.
pub fn intersection_piece(ring: &PolyRing, a: &[CommPoly], b: &[CommPoly], d: usize) -> Vec<CommPoly> {
    let (piece, ea) = ideal_piece(ring, a, d);
    let (_, eb) = ideal_piece(ring, b, d);
    let rows: Vec<SparseVec> = ea.rows().iter().chain(eb.rows()).cloned().collect();
    let na = ea.rank();
    kernel(&rows, piece.dim())
        .into_iter()
        .map(|k| {
            let mut acc = SparseVec::new();
            for (i, c) in k.iter().filter(|(i, _)| **i < na) {
                crate::linalg::axpy(&mut acc, c, &ea.rows()[*i]);
            }
            let p = piece.poly(&acc);
            match p.terms().values().next_back() {
                Some(c) => p.scale(&c.recip()),
                None => p,
            }
        })
        .collect()
}

/// Generators of the intersection of two ideals, valid through degree `maxdeg`.
pub fn ideal_intersection(ring: &PolyRing, a: &[CommPoly], b: &[CommPoly], maxdeg: usize) -> Vec<CommPoly> {
    let all: Vec<CommPoly> = (0..=maxdeg).flat_map(|d| intersection_piece(ring, a, b, d)).collect();
    minimal_generators(ring, &all, maxdeg)
}

/// Whether two ideals agree in every degree up to `maxdeg`.
pub fn ideals_equal_up_to(ring: &PolyRing, a: &[CommPoly], b: &[CommPoly], maxdeg: usize) -> bool {
    (0..=maxdeg).all(|d| {
        let (_, ea) = ideal_piece(ring, a, d);
        let (_, eb) = ideal_piece(ring, b, d);
        ea.rank() == eb.rank() && eb.rows().iter().all(|r| ea.contains(r))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PsiKind {
    Zero,
    Odd1,
    Odd2,
    Even1,
    Even2,
}

impl PsiKind {
    pub const ALL: [PsiKind; 5] = [PsiKind::Zero, PsiKind::Odd1, PsiKind::Odd2, PsiKind::Even1, PsiKind::Even2];

    pub fn label(self) -> &'static str {
        match self {
            PsiKind::Zero => "zero",
            PsiKind::Odd1 => "odd1",
            PsiKind::Odd2 => "odd2",
            PsiKind::Even1 => "even1",
            PsiKind::Even2 => "even2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.label() == s.to_ascii_lowercase())
    }

    /// Index n of the tori hit by the map.
    pub fn torus_index(self, k: i64) -> i64 {
        match self {
            PsiKind::Zero => 0,
            PsiKind::Odd1 | PsiKind::Odd2 => 2 * k - 1,
            PsiKind::Even1 | PsiKind::Even2 => 2 * k,
        }
    }

    /// Torus numbers i of the components, plus whether the a-circle ring follows.
    pub fn tori(self) -> (&'static [usize], bool) {
        match self {
            PsiKind::Zero => (&[], false),
            PsiKind::Odd1 | PsiKind::Even1 => (&[1, 4, 5], true),
            PsiKind::Odd2 | PsiKind::Even2 => (&[2, 3], false),
        }
    }
}

impl fmt::Display for PsiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub label: String,
    pub ring: PolyRing,
}

/// Degree-preserving map out of Q[X0..T] into a product of polynomial rings.
#[derive(Debug, Clone, PartialEq)]
pub struct RingMap {
    pub name: String,
    pub domain: PolyRing,
    pub components: Vec<Component>,
    /// images[var][component]
    pub images: Vec<Vec<CommPoly>>,
}

impl RingMap {
    pub fn apply(&self, p: &CommPoly) -> Vec<CommPoly> {
        (0..self.components.len())
            .map(|c| {
                let imgs: Vec<CommPoly> = self.images.iter().map(|row| row[c].clone()).collect();
                p.substitute(&imgs)
            })
            .collect()
    }

    pub fn annihilates(&self, p: &CommPoly) -> bool {
        self.apply(p).iter().all(CommPoly::is_zero)
    }

    /// Kernel dimension of the map on the degree-`d` part of the domain.
    pub fn kernel_dim(&self, d: usize) -> usize {
        let piece = DegreePiece::new(&self.domain, d);
        let targets: Vec<DegreePiece> = self.components.iter().map(|c| DegreePiece::new(&c.ring, d)).collect();
        let rows = piece.monomials.iter().map(|m| {
            let img = self.apply(&CommPoly::monomial(m.clone(), Rational::one()));
            let mut row = SparseVec::new();
            let mut off = 0;
            for (t, p) in targets.iter().zip(&img) {
                for (i, c) in t.coords(p) {
                    row.insert(off + i, c);
                }
                off += t.dim();
            }
            row
        });
        piece.dim() - rank(rows)
    }

    /// Degree-2 kernel as linear forms.
    pub fn linear_kernel(&self) -> Vec<CommPoly> {
        let n = self.domain.nvars();
        let mut cols = Vec::new();
        for c in &self.components {
            cols.push(c.ring.nvars());
        }
        let total: usize = cols.iter().sum();
        let images: Vec<SparseVec> = self
            .images
            .iter()
            .map(|row| {
                let mut v = SparseVec::new();
                let mut off = 0;
                for (p, w) in row.iter().zip(&cols) {
                    for j in 0..*w {
                        let mut m = vec![0u32; *w];
                        m[j] = 1;
                        let c = p.coeff(&m);
                        if !c.is_zero() {
                            v.insert(off + j, c);
                        }
                    }
                    off += w;
                }
                v
            })
            .collect();
        kernel(&images, total)
            .into_iter()
            .map(|k| {
                let mut p = CommPoly::zero(n);
                for (i, c) in k {
                    p = p.add(&CommPoly::var(n, i).scale(&c));
                }
                p
            })
            .collect()
    }

    pub fn json(&self) -> serde_json::Value {
        let names = self.domain.names();
        let rows: Vec<serde_json::Value> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, row)| {
                serde_json::json!({
                    "variable": names[i],
                    "image": row.iter().zip(&self.components)
                        .map(|(p, c)| p.display(c.ring.names())).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "name": self.name,
            "components": self.components.iter().map(|c| c.label.clone()).collect::<Vec<_>>(),
            "rows": rows,
        })
    }
}

fn components_for(kind: PsiKind, k: i64) -> Vec<Component> {
    let n = kind.torus_index(k);
    if kind == PsiKind::Zero {
        return vec![Component { label: "Q[x0,y0,x1,y1,z]".into(), ring: PolyRing::new(&BASIS_NAMES[..5]) }];
    }
    let (tori, with_a) = kind.tori();
    let mut out: Vec<Component> = tori
        .iter()
        .map(|i| {
            let x = format!("x_{n},{i}");
            let y = format!("y_{n},{i}");
            Component { label: format!("T_{i}({n})"), ring: PolyRing::new(&[&x, &y]) }
        })
        .collect();
    if with_a {
        let a = format!("a_{n}");
        out.push(Component { label: a.clone(), ring: PolyRing::new(&[&a]) });
    }
    out
}

const BASIS_NAMES: [&str; 6] = ["x0", "y0", "x1", "y1", "z", "t"];

/// One table entry: (x, y) coefficients per torus component, then the a coefficient.
type Row = (Vec<(i64, i64)>, Option<i64>);

fn table_rows(kind: PsiKind, k: i64, printed: bool) -> Vec<Row> {
    let o = (0, 0);
    match kind {
        PsiKind::Zero => unreachable!(),
        PsiKind::Odd1 => vec![
            (vec![(-k, k), o, o], Some(0)),
            (vec![(1, -1), o, o], Some(0)),
            (vec![(0, 1 - k), (0, -k), (1 - k, 0)], Some(-k * k)),
            (vec![o, (k, -(k + 1)), (1, -1)], Some(0)),
            (vec![o, (1 - k, k), o], Some(1)),
            (vec![(0, k), (0, k), (0, k)], Some(k * k)),
        ],
        PsiKind::Odd2 => vec![
            (vec![(0, 1), (-k, k + 1)], None),
            (vec![(1, -1), o], None),
            (vec![(-k, 0), (0, -k)], None),
            (vec![o, o], None),
            (vec![o, (1, -1)], None),
            (vec![(0, k), (0, k)], None),
        ],
        PsiKind::Even1 => vec![
            (vec![(-1, 0), o, if printed { (-k, k) } else { (-1, k) }], Some(0)),
            (vec![(0, 1), o, o], Some(0)),
            (vec![(-k, k), (-k, 0), (-k, 0)], Some(-k * (k + 1))),
            (vec![o, (1, -k), o], Some(1)),
            (vec![o, (-1, k + 1), (0, 1)], Some(0)),
            (vec![(k, 0), (k, 0), (k, 0)], Some(k * (k + 1))),
        ],
        PsiKind::Even2 => vec![
            (vec![(0, k), o], None),
            (vec![(0, 1), o], None),
            (vec![(-(k + 1), 0), (-(k + 1), k + 1)], None),
            (vec![o, (0, 1)], None),
            (vec![o, o], None),
            (vec![(k, 0), (k, 0)], None),
        ],
    }
}

fn build(kind: PsiKind, k: i64, rows: Vec<Row>, name: String) -> RingMap {
    let components = components_for(kind, k);
    let images = rows
        .into_iter()
        .map(|(tori, a)| {
            let mut out: Vec<CommPoly> = tori
                .into_iter()
                .map(|(x, y)| CommPoly::var(2, 0).scale_i(x).add(&CommPoly::var(2, 1).scale_i(y)))
                .collect();
            if let Some(a) = a {
                out.push(CommPoly::var(1, 0).scale_i(a));
            }
            out
        })
        .collect();
    RingMap { name, domain: big_ring(), components, images }
}

fn zero_map() -> RingMap {
    let components = components_for(PsiKind::Zero, 0);
    let images = (0..6).map(|i| vec![if i < 5 { CommPoly::var(5, i) } else { CommPoly::zero(5) }]).collect();
    RingMap { name: "psi_0".into(), domain: big_ring(), components, images }
}

fn map_name(kind: PsiKind, k: i64) -> String {
    match kind {
        PsiKind::Zero => "psi_0".into(),
        PsiKind::Odd1 | PsiKind::Even1 => format!("psi_{},1", kind.torus_index(k)),
        PsiKind::Odd2 | PsiKind::Even2 => format!("psi_{},2", kind.torus_index(k)),
    }
}

/// Restriction map to the tori of index n (or to the base torus for `Zero`), `k >= 1`.
pub fn psi_map(kind: PsiKind, k: i64) -> RingMap {
    if kind == PsiKind::Zero {
        return zero_map();
    }
    assert!(k >= 1, "k must be at least 1");
    build(kind, k, table_rows(kind, k, false), map_name(kind, k))
}

/// As [`psi_map`] but with the X0 row of `Even1` exactly as printed, third entry -k x + k y.
pub fn psi_map_printed(kind: PsiKind, k: i64) -> RingMap {
    if kind == PsiKind::Zero {
        return zero_map();
    }
    assert!(k >= 1, "k must be at least 1");
    build(kind, k, table_rows(kind, k, true), map_name(kind, k))
}

/// The same map rebuilt from the circle identifications: the image of a variable on a torus
/// is its coefficient in each circle's expression.
pub fn psi_map_from_identifications(kind: PsiKind, k: i64) -> RingMap {
    if kind == PsiKind::Zero {
        return zero_map();
    }
    let n = kind.torus_index(k);
    let (tori, with_a) = kind.tori();
    let rows = (0..6)
        .map(|var| {
            let t = tori
                .iter()
                .map(|&i| (identification(n, i, Axis::X).0[var], identification(n, i, Axis::Y).0[var]))
                .collect();
            (t, with_a.then(|| a_identification(n).0[var]))
        })
        .collect();
    build(kind, k, rows, map_name(kind, k))
}

/// The stated kernel generators, in their fixed order.
pub fn stated_kernel(kind: PsiKind, k: i64) -> Vec<CommPoly> {
    match kind {
        PsiKind::Zero => vec![v("T")],
        PsiKind::Odd1 => vec![lin([1, k, 0, 0, 0, 0]), lin([0, 0, k, (k - 1) * k, k * k, k - 1])],
        PsiKind::Odd2 => vec![lin([0, 0, 0, 1, 0, 0]), lin([0, k, 1, 0, 0, 1]), lin([k, 0, 0, 0, k * k, -1])],
        PsiKind::Even1 => vec![lin([0, -k, 1, 0, 0, 1]), lin([k, 0, 0, -k * (k + 1), -k * k, 1])],
        PsiKind::Even2 => vec![lin([0, 0, 0, 0, 1, 0]), lin([1, -k, 0, 0, 0, 0]), lin([0, 0, k, -k * (k + 1), 0, k + 1])],
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelReport {
    pub map: String,
    pub vanishing: Vec<(String, bool)>,
    pub linear_kernel_dim: usize,
    pub linear_span_dim: usize,
    pub linear_match: bool,
    pub containment_degree: usize,
    pub containment: bool,
    /// (degree, kernel dimension, stated ideal dimension); informational.
    pub dims: Vec<(usize, usize, usize)>,
    pub failures: Vec<String>,
}

impl KernelReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "map": self.map,
            "pass": self.pass(),
            "generators_vanish": self.vanishing.iter()
                .map(|(g, ok)| serde_json::json!({"generator": g, "vanishes": ok})).collect::<Vec<_>>(),
            "degree2_kernel_dim": self.linear_kernel_dim,
            "degree2_span_dim": self.linear_span_dim,
            "degree2_match": self.linear_match,
            "containment_up_to": self.containment_degree,
            "containment": self.containment,
            "dims": self.dims.iter()
                .map(|(d, k, i)| serde_json::json!({"degree": d, "kernel": k, "ideal": i})).collect::<Vec<_>>(),
            "failures": self.failures,
        })
    }
}

/// Checks the stated generators against the map: each vanishes, the degree-2 kernel is their
/// span, and the ideal they generate maps to zero through `containment_degree`. Kernel and
/// ideal dimensions are listed through `info_degree`.
pub fn verify_kernel(
    map: &RingMap,
    stated: &[CommPoly],
    containment_degree: usize,
    info_degree: usize,
) -> KernelReport {
    let names = map.domain.names();
    let mut failures = Vec::new();
    let vanishing: Vec<(String, bool)> = stated
        .iter()
        .map(|g| {
            let img = map.apply(g);
            let ok = img.iter().all(CommPoly::is_zero);
            if !ok {
                let parts: Vec<String> =
                    img.iter().zip(&map.components).map(|(p, c)| p.display(c.ring.names())).collect();
                failures.push(format!("{} maps to ({})", g.display(names), parts.join(", ")));
            }
            (g.display(names), ok)
        })
        .collect();

    let piece = DegreePiece::new(&map.domain, 2);
    let ker = map.linear_kernel();
    let linear: Vec<&CommPoly> = stated.iter().filter(|g| g.homogeneous_degree(&map.domain) == Some(2)).collect();
    let mut ek = Echelon::new();
    for p in &ker {
        ek.insert(piece.coords(p));
    }
    let mut es = Echelon::new();
    for p in &linear {
        es.insert(piece.coords(p));
    }
    let linear_match = ek.rank() == es.rank() && es.rows().iter().all(|r| ek.contains(r));
    if !linear_match {
        let extra: Vec<String> = ker
            .iter()
            .filter(|p| !es.contains(&piece.coords(p)))
            .map(|p| p.display(names))
            .collect();
        failures.push(format!(
            "degree-2 kernel has dimension {}, stated span {}; kernel elements outside the span: [{}]",
            ek.rank(),
            es.rank(),
            extra.join(", ")
        ));
    }

    let mut containment = true;
    'outer: for d in 0..=containment_degree {
        let (piece, ech) = ideal_piece(&map.domain, stated, d);
        for r in ech.rows() {
            let p = piece.poly(r);
            if !map.annihilates(&p) {
                failures.push(format!("degree {d}: {} does not vanish", p.display(names)));
                containment = false;
                break 'outer;
            }
        }
    }

    let dims = (0..=info_degree)
        .step_by(2)
        .map(|d| (d, map.kernel_dim(d), ideal_piece(&map.domain, stated, d).1.rank()))
        .collect();

    KernelReport {
        map: map.name.clone(),
        vanishing,
        linear_kernel_dim: ek.rank(),
        linear_span_dim: es.rank(),
        linear_match,
        containment_degree,
        containment,
        dims,
        failures,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub ell: i64,
    pub holds: bool,
    pub residual: String,
}

impl IdentityReport {
    pub fn json(&self) -> serde_json::Value {
        serde_json::json!({"ell": self.ell, "holds": self.holds, "residual": self.residual})
    }
}

/// l*b1 + b2 - (-l^2 c1 + l c2 + c3).
pub fn induction_residual(ell: i64, b: &[CommPoly], c: &[CommPoly]) -> CommPoly {
    assert!(b.len() == 2 && c.len() == 3);
    let lhs = b[0].scale_i(ell).add(&b[1]);
    let rhs = c[0].scale_i(-ell * ell).add(&c[1].scale_i(ell)).add(&c[2]);
    lhs.sub(&rhs)
}

fn identity_report(ell: i64, c: &[CommPoly]) -> IdentityReport {
    let r = induction_residual(ell, &stated_kernel(PsiKind::Even1, ell), c);
    IdentityReport { ell, holds: r.is_zero(), residual: r.display(big_ring().names()) }
}

/// The linear identity tying the two even kernels together at `ell >= 1`.
pub fn induction_identity_check(ell: i64) -> IdentityReport {
    assert!(ell >= 1, "ell must be at least 1");
    identity_report(ell, &stated_kernel(PsiKind::Even2, ell))
}

/// As [`induction_identity_check`] with `delta` added to c3.
pub fn induction_identity_check_perturbed(ell: i64, delta: &CommPoly) -> IdentityReport {
    let mut c = stated_kernel(PsiKind::Even2, ell);
    c[2] = c[2].add(delta);
    identity_report(ell, &c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// Hilbert function of a monomial quotient by brute-force enumeration.
    fn monomial_oracle(ring: &PolyRing, gens: &[CommPoly], d: usize) -> usize {
        let lead: Vec<Vec<u32>> = gens.iter().map(|g| g.terms().keys().next().unwrap().clone()).collect();
        ring.monomials(d)
            .into_iter()
            .filter(|m| !lead.iter().any(|l| l.iter().zip(m).all(|(a, b)| a <= b)))
            .count()
    }

    #[test]
    fn ideal_generators() {
        let t = v("T");
        assert_eq!(ideal_i_lambda_ell(LambdaRange::B, 1), vec![t.mul(&a_k(1))]);
        assert_eq!(a_k(1), lin([1, 1, 1, 0, 1, 0]));
        let a = ideal_i_lambda_ell(LambdaRange::A, 1);
        assert_eq!(a, vec![t.mul(&lin([1, 1, 0, 0, 0, 0])), t.mul(&lin([0, 0, 1, 0, 1, 0]))]);
        let d = ideal_i_lambda_ell(LambdaRange::D, 2);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].homogeneous_degree(&big_ring()), Some(10));
        assert_eq!(ideal_i_lambda_ell(LambdaRange::C, 3).len(), 2);
    }

    #[test]
    fn hilbert_examples() {
        let m = mu1_ring();
        assert_eq!(m.hilbert(6), vec![1, 0, 5, 0, 10, 0, 15]);
        for d in [0, 2, 4, 6, 8] {
            assert_eq!(m.hilbert(d)[d], monomial_oracle(&m.ring, &m.ideal_gens, d));
        }
        assert_eq!(bg_infinity_ring().hilbert(4), vec![1, 0, 6, 0, 16]);
        let free = QuotientRing::new("free", big_ring(), vec![]);
        let h = free.hilbert(10);
        for n in 0..=5 {
            assert_eq!(h[2 * n], binom(n + 5, 5));
        }
    }

    #[test]
    fn r3_rings() {
        let r = r3_ring(LambdaRange::A, 0);
        assert!(r.ideal_gens.is_empty());
        assert_eq!(r.hilbert(4), vec![1, 0, 2, 0, 3]);
        let r = r3_ring(LambdaRange::A, 1);
        let x0 = r.ring.var("X0");
        let y0 = r.ring.var("Y0");
        let x1 = r.ring.var("X1");
        let t = r.ring.var("T");
        assert_eq!(r.ideal_gens, vec![x0.mul(&x1), t.mul(&x0.add(&y0)), t.mul(&x1)]);
    }

    #[test]
    fn relation_degrees() {
        let expect = |range, ell: usize| -> Vec<usize> {
            let mut v = vec![4; 5];
            match range {
                LambdaRange::A => v.extend([4 * ell, 4 * ell]),
                LambdaRange::B => v.push(4 * ell),
                LambdaRange::C => v.extend([4 * ell + 2, 4 * ell + 2]),
                LambdaRange::D => v.push(4 * ell + 2),
            }
            v.sort();
            v
        };
        for ell in 1..=2 {
            for range in [LambdaRange::A, LambdaRange::B, LambdaRange::C, LambdaRange::D] {
                let r = generic_ring(range, ell as i64);
                assert_eq!(r.minimal_relation_degrees(12), expect(range, ell), "{range:?} {ell}");
            }
        }
        assert!(QuotientRing::new("free", big_ring(), vec![]).minimal_relation_degrees(8).is_empty());
    }

    #[test]
    fn redundant_generator_dropped() {
        let x = v("X0");
        let gens = vec![x.clone(), x.mul(&v("Y0"))];
        assert_eq!(minimal_generators(&big_ring(), &gens, 6), vec![x]);
    }

    #[test]
    fn quotients_surject_from_bg_infinity() {
        let top = bg_infinity_ring().hilbert(12);
        for ell in 1..=3 {
            for range in [LambdaRange::A, LambdaRange::B, LambdaRange::C, LambdaRange::D] {
                let h = generic_ring(range, ell).hilbert(12);
                assert!(h.iter().zip(&top).all(|(a, b)| a <= b));
            }
        }
    }

    #[test]
    fn table_examples() {
        let z = psi_map(PsiKind::Zero, 0);
        assert!(z.annihilates(&v("T")));
        let m = psi_map(PsiKind::Odd1, 1);
        let img = m.apply(&v("X1"));
        assert!(img[0].is_zero());
        assert_eq!(img[1], CommPoly::var(2, 1).scale_i(-1));
        assert!(img[2].is_zero());
        assert_eq!(img[3], CommPoly::var(1, 0).scale_i(-1));
        let m = psi_map(PsiKind::Even2, 1);
        assert!(m.annihilates(&v("Z")));
    }

    #[test]
    fn tables_match_identifications() {
        for kind in PsiKind::ALL {
            for k in 1..=5 {
                assert_eq!(psi_map(kind, k), psi_map_from_identifications(kind, k), "{kind} {k}");
            }
        }
    }

    #[test]
    fn printed_entry_breaks_kernel() {
        for k in 2..=4 {
            let r = verify_kernel(&psi_map_printed(PsiKind::Even1, k), &stated_kernel(PsiKind::Even1, k), 4, 2);
            assert!(!r.pass());
        }
        // at k = 1 the printed and corrected entries coincide
        assert_eq!(psi_map_printed(PsiKind::Even1, 1), psi_map(PsiKind::Even1, 1));
    }

    #[test]
    fn kernels() {
        for kind in PsiKind::ALL {
            for k in 1..=4 {
                let r = verify_kernel(&psi_map(kind, k), &stated_kernel(kind, k), 6, 4);
                assert!(r.pass(), "{kind} {k}: {:?}", r.failures);
                let n = stated_kernel(kind, k).len();
                assert_eq!(r.linear_kernel_dim, n);
            }
        }
        let r = verify_kernel(&psi_map(PsiKind::Zero, 0), &[v("T")], 4, 4);
        assert_eq!(r.linear_kernel_dim, 1);
        let m = psi_map(PsiKind::Odd1, 1);
        assert!(m.annihilates(&lin([1, 1, 0, 0, 0, 0])));
        assert!(m.annihilates(&lin([0, 0, 1, 0, 1, 0])));
    }

    #[test]
    fn wrong_stated_kernel_reported() {
        let r = verify_kernel(&psi_map(PsiKind::Odd1, 2), &[v("X0")], 4, 2);
        assert!(!r.pass());
        assert_eq!(r.vanishing, vec![("X0".to_string(), false)]);
    }

    #[test]
    fn induction_identity() {
        for ell in 1..=6 {
            assert!(induction_identity_check(ell).holds);
        }
        let r = induction_identity_check_perturbed(1, &v("X0"));
        assert!(!r.holds);
        assert_eq!(r.residual, "-X0");
    }

    #[test]
    fn odd_and_even_factors_lie_in_both_kernels() {
        let ring = big_ring();
        for l in 1..=4 {
            let a = a_k(l);
            let b = b_k(l);
            assert!(ideals_equal_up_to(&ring, std::slice::from_ref(&a), std::slice::from_ref(&a), 2));
            for (p, kinds) in [(a, [PsiKind::Odd1, PsiKind::Odd2]), (b, [PsiKind::Even1, PsiKind::Even2])] {
                for kind in kinds {
                    let gens = stated_kernel(kind, l);
                    let (piece, ech) = ideal_piece(&ring, &gens, 2);
                    assert!(ech.contains(&piece.coords(&p)));
                }
            }
        }
    }

    #[test]
    fn ideal_ops_examples() {
        let ring = big_ring();
        let x = v("X0");
        let y = v("Y0");
        let i = ideal_intersection(&ring, std::slice::from_ref(&x), std::slice::from_ref(&y), 6);
        assert_eq!(i, vec![x.mul(&y)]);
        let a = ideal_i_lambda_ell(LambdaRange::A, 1);
        assert!(ideals_equal_up_to(&ring, &ideal_intersection(&ring, &a, &a, 8), &a, 8));
        assert_eq!(ideal_product(std::slice::from_ref(&x), std::slice::from_ref(&y)), vec![x.mul(&y)]);
    }

    #[test]
    fn coprime_steps() {
        let ring = big_ring();
        let t = vec![v("T")];
        let k11 = stated_kernel(PsiKind::Odd1, 1);
        let i = ideal_intersection(&ring, &t, &k11, 10);
        assert!(ideals_equal_up_to(&ring, &i, &ideal_product(&t, &k11), 10));
        assert!(ideals_equal_up_to(&ring, &ideal_product(&t, &k11), &ideal_i_lambda_ell(LambdaRange::A, 1), 10));
        let tb = ideal_i_lambda_ell(LambdaRange::B, 1);
        let k21 = stated_kernel(PsiKind::Even1, 1);
        let i = ideal_intersection(&ring, &tb, &k21, 10);
        assert!(ideals_equal_up_to(&ring, &i, &ideal_product(&tb, &k21), 10));
        assert!(ideals_equal_up_to(&ring, &ideal_product(&tb, &k21), &ideal_i_lambda_ell(LambdaRange::C, 1), 10));
    }

    #[test]
    fn first_factor_not_coprime_to_odd_kernel() {
        // A_1 lies in the kernel of the first odd map, so the intersection is strictly larger
        let ring = big_ring();
        let tb = ideal_i_lambda_ell(LambdaRange::B, 1);
        let k11 = stated_kernel(PsiKind::Odd1, 1);
        let i = ideal_intersection(&ring, &tb, &k11, 8);
        assert!(!ideals_equal_up_to(&ring, &i, &ideal_product(&tb, &k11), 8));
    }

    mod props {
        use super::super::*;
        use super::monomial_oracle;
        use proptest::prelude::*;

        fn monomial_ideal() -> impl Strategy<Value = Vec<Vec<u32>>> {
            proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..5)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn monomial_hilbert_matches_oracle(ms in monomial_ideal()) {
                let ring = PolyRing::new(&["a", "b", "c", "d"]);
                let gens: Vec<CommPoly> = ms.into_iter()
                    .filter(|m| m.iter().any(|e| *e > 0))
                    .map(|m| CommPoly::monomial(m, Rational::one()))
                    .collect();
                let h = graded_dim_quotient_comm(&ring, &gens, 8);
                for d in (0..=8).step_by(2) {
                    prop_assert_eq!(h[d], monomial_oracle(&ring, &gens, d));
                }
            }

            #[test]
            fn intersection_dims(ms in monomial_ideal(), ns in monomial_ideal()) {
                let ring = PolyRing::new(&["a", "b", "c", "d"]);
                let mk = |v: Vec<Vec<u32>>| -> Vec<CommPoly> { v.into_iter()
                    .filter(|m| m.iter().any(|e| *e > 0))
                    .map(|m| CommPoly::monomial(m, Rational::one())).collect() };
                let a = mk(ms);
                let b = mk(ns);
                for d in (0..=6).step_by(2) {
                    let ia = ideal_piece(&ring, &a, d).1.rank();
                    let ib = ideal_piece(&ring, &b, d).1.rank();
                    let sum: Vec<CommPoly> = a.iter().chain(&b).cloned().collect();
                    let is = ideal_piece(&ring, &sum, d).1.rank();
                    prop_assert_eq!(intersection_piece(&ring, &a, &b, d).len(), ia + ib - is);
                }
            }

            #[test]
            fn kernels_hold_for_larger_k(k in 1i64..9) {
                for kind in PsiKind::ALL {
                    let r = verify_kernel(&psi_map(kind, k), &stated_kernel(kind, k), 4, 2);
                    prop_assert!(r.pass());
                }
            }
        }
    }
}
