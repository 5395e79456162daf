//! Moment polygons of Hirzebruch surfaces and their equivariant blow-ups, Karshon graphs
//! of circle subactions, and the identification of circles in the fundamental group.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::homology::{area, hexagon_chain, pentagon_chain, Shape};
use crate::rational::{int, Rational};

pub type Point = (Rational, Rational);
pub type Mat2 = [[i64; 2]; 2];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("polygon is not convex with counterclockwise vertices: {0}")]
    NotConvex(String),
    #[error("polygon is not Delzant at vertex {0}")]
    NotDelzant(usize),
    #[error("edge {0} has irrational slope")]
    Irrational(usize),
    #[error("inadmissible chop: {0}")]
    BadChop(String),
    #[error("matrix has determinant {0}, expected +1 or -1")]
    BadMatrix(i64),
    #[error("inadmissible torus: {0}")]
    BadTorus(String),
    #[error("circle {0:?} is not primitive")]
    NotPrimitive((i64, i64)),
    #[error("not realizable: {0}")]
    NotRealizable(String),
}

fn cross(a: &Point, b: &Point) -> Rational {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn sub(a: &Point, b: &Point) -> Point {
    (&a.0 - &b.0, &a.1 - &b.1)
}

/// Primitive integer direction of a rational vector together with its lattice length.
fn primitive(v: &Point) -> Option<((i64, i64), Rational)> {
    if v.0.is_zero() && v.1.is_zero() {
        return None;
    }
    let l = v.0.denom().lcm(v.1.denom());
    let a: BigInt = v.0.numer() * (&l / v.0.denom());
    let b: BigInt = v.1.numer() * (&l / v.1.denom());
    let g = a.gcd(&b);
    let (ua, ub) = ((&a / &g).to_i64()?, (&b / &g).to_i64()?);
    let len = if ua != 0 { &v.0 / int(ua) } else { &v.1 / int(ub) };
    Some(((ua, ub), len))
}

fn det(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

impl LatticePolygon {
    /// Vertices in counterclockwise order; strictly convex.
    pub fn new(vertices: Vec<Point>) -> Result<Self, ToricError> {
        let n = vertices.len();
        if n < 3 {
            return Err(ToricError::NotConvex(format!("{n} vertices")));
        }
        for i in 0..n {
            let a = sub(&vertices[(i + 1) % n], &vertices[i]);
            let b = sub(&vertices[(i + 2) % n], &vertices[(i + 1) % n]);
            if !cross(&a, &b).is_positive() {
                return Err(ToricError::NotConvex(format!("turn at vertex {}", (i + 1) % n)));
            }
        }
        let p = LatticePolygon { vertices };
        for i in 0..n {
            if p.edge(i).is_none() {
                return Err(ToricError::Irrational(i));
            }
        }
        Ok(p)
    }

    /// Convex hull of points in general position, ordered counterclockwise from the first point.
    pub fn hull(points: Vec<Point>) -> Result<Self, ToricError> {
        let n = points.len();
        let cx = points.iter().fold(int(0), |s, p| s + &p.0) / int(n as i64);
        let cy = points.iter().fold(int(0), |s, p| s + &p.1) / int(n as i64);
        let c = (cx, cy);
        let first = points[0].clone();
        let mut rest: Vec<Point> = points[1..].to_vec();
        let f = sub(&first, &c);
        // order by angle from the first point, counterclockwise
        let half = |v: &Point| -> u8 {
            let cr = cross(&f, v);
            if cr.is_positive() || (cr.is_zero() && (&f.0 * &v.0 + &f.1 * &v.1).is_positive()) {
                0
            } else {
                1
            }
        };
        rest.sort_by(|a, b| {
            let (va, vb) = (sub(a, &c), sub(b, &c));
            half(&va).cmp(&half(&vb)).then_with(|| cross(&vb, &va).cmp(&int(0)))
        });
        let mut v = vec![first];
        v.extend(rest);
        LatticePolygon::new(v)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Primitive direction and lattice length of edge i (from vertex i to vertex i+1).
    pub fn edge(&self, i: usize) -> Option<((i64, i64), Rational)> {
        let n = self.len();
        primitive(&sub(&self.vertices[(i + 1) % n], &self.vertices[i]))
    }

    fn edge_unchecked(&self, i: usize) -> ((i64, i64), Rational) {
        self.edge(i % self.len()).expect("validated polygon")
    }

    pub fn edge_lengths(&self) -> Vec<Rational> {
        (0..self.len()).map(|i| self.edge_unchecked(i).1).collect()
    }

    /// Primitive edge vectors leaving vertex i: towards i-1 and towards i+1.
    fn corner(&self, i: usize) -> ((i64, i64), (i64, i64)) {
        let n = self.len();
        let (back, _) = self.edge_unchecked((i + n - 1) % n);
        let (fwd, _) = self.edge_unchecked(i);
        ((-back.0, -back.1), fwd)
    }

    pub fn is_delzant(&self) -> bool {
        self.delzant_check().is_ok()
    }

    pub fn delzant_check(&self) -> Result<(), ToricError> {
        for i in 0..self.len() {
            let (a, b) = self.corner(i);
            if det(a, b).abs() != 1 {
                return Err(ToricError::NotDelzant(i));
            }
        }
        Ok(())
    }

    pub fn json(&self) -> Value {
        Value::Array(self.vertices.iter().map(|(x, y)| json!([x.to_string(), y.to_string()])).collect())
    }
}

impl fmt::Display for LatticePolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|(x, y)| format!("({x},{y})")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn p(x: Rational, y: Rational) -> Point {
    (x, y)
}

/// Moment polygon of the n-th Hirzebruch surface with fiber area 1 and base area mu.
pub fn hirzebruch_polygon(n: i64, s: &Shape) -> Result<LatticePolygon, ToricError> {
    hirzebruch_with_mu(n, &s.mu, s.ell)
}

fn hirzebruch_with_mu(n: i64, mu: &Rational, ell: i64) -> Result<LatticePolygon, ToricError> {
    if n < 0 {
        return Err(ToricError::BadTorus(format!("n = {n} < 0")));
    }
    let k = (n + 1) / 2;
    if k > ell {
        return Err(ToricError::BadTorus(format!("n = {n} needs ell >= {k}, have ell = {ell}")));
    }
    let top_left = if n % 2 == 0 { mu - int(k) } else { mu - int(k) + int(1) };
    LatticePolygon::new(vec![p(int(1), mu + int(k)), p(int(0), top_left), p(int(0), int(0)), p(int(1), int(0))])
}

/// Replaces vertex i by the two points at lattice distance `capacity` along its edges.
pub fn corner_chop(poly: &LatticePolygon, i: usize, capacity: &Rational) -> Result<LatticePolygon, ToricError> {
    let n = poly.len();
    if i >= n {
        return Err(ToricError::BadChop(format!("vertex {i} out of range")));
    }
    if !capacity.is_positive() {
        return Err(ToricError::BadChop(format!("capacity {capacity} must be > 0")));
    }
    let (back, fwd) = poly.corner(i);
    if det(back, fwd).abs() != 1 {
        return Err(ToricError::NotDelzant(i));
    }
    let before = poly.edge_unchecked((i + n - 1) % n).1;
    let after = poly.edge_unchecked(i).1;
    for (len, which) in [(&before, "incoming"), (&after, "outgoing")] {
        if capacity >= len {
            return Err(ToricError::BadChop(format!("capacity {capacity} >= {which} edge length {len}")));
        }
    }
    let v = &poly.vertices[i];
    let a = (&v.0 + capacity * int(back.0), &v.1 + capacity * int(back.1));
    let b = (&v.0 + capacity * int(fwd.0), &v.1 + capacity * int(fwd.1));
    let mut out = Vec::with_capacity(n + 1);
    for (j, w) in poly.vertices.iter().enumerate() {
        if j == i {
            out.push(a.clone());
            out.push(b.clone());
        } else {
            out.push(w.clone());
        }
    }
    LatticePolygon::new(out)
}

pub fn mat_det(m: &Mat2) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn apply(m: &Mat2, v: &Point) -> Point {
    (int(m[0][0]) * &v.0 + int(m[0][1]) * &v.1, int(m[1][0]) * &v.0 + int(m[1][1]) * &v.1)
}

/// Image under an integral unimodular matrix, translated into the nonnegative quadrant.
/// Orientation-reversing matrices keep the vertex sequence counterclockwise by reversal.
pub fn apply_gl2z(poly: &LatticePolygon, m: &Mat2) -> Result<LatticePolygon, ToricError> {
    let d = mat_det(m);
    if d.abs() != 1 {
        return Err(ToricError::BadMatrix(d));
    }
    let mut v: Vec<Point> = poly.vertices.iter().map(|x| apply(m, x)).collect();
    let minx = v.iter().map(|x| x.0.clone()).min().unwrap();
    let miny = v.iter().map(|x| x.1.clone()).min().unwrap();
    for x in v.iter_mut() {
        x.0 -= &minx;
        x.1 -= &miny;
    }
    if d < 0 {
        v[1..].reverse();
    }
    LatticePolygon::new(v)
}

/// The matrix C_n.
pub fn c_matrix(n: i64) -> Mat2 {
    if n == 0 {
        [[-1, 0], [0, 1]]
    } else if n % 2 == 0 {
        [[1, 0], [-(n / 2), 1]]
    } else {
        let k = (n + 1) / 2;
        [[1 - k, 1], [k, -1]]
    }
}

/// Pentagon of the one-point blow-up, vertices in the listed order, before C_n.
pub fn pentagon_raw(n: i64, s: &Shape) -> Result<LatticePolygon, ToricError> {
    let (mu, c1) = (&s.mu, &s.c1);
    if n % 2 == 0 {
        let hz = hirzebruch_with_mu(n, mu, s.ell)?;
        let k = n / 2;
        if c1 >= &(mu - int(k)) {
            return Err(ToricError::BadTorus(format!("n = {n} needs c1 < mu - {k}")));
        }
        let chopped = corner_chop(&hz, 2, c1)?;
        Ok(rotate_to(chopped, &p(int(1), mu + int(k))))
    } else {
        let mu1 = mu - c1;
        let hz = hirzebruch_with_mu(n, &mu1, s.ell)?;
        let k = (n + 1) / 2;
        let chopped = corner_chop(&hz, 2, &(int(1) - c1))?;
        Ok(rotate_to(chopped, &p(int(1), &mu1 + int(k))))
    }
}

fn rotate_to(poly: LatticePolygon, first: &Point) -> LatticePolygon {
    let i = poly.vertices.iter().position(|v| v == first).expect("vertex present");
    let mut v = poly.vertices;
    v.rotate_left(i);
    LatticePolygon { vertices: v }
}

pub fn pentagon(n: i64, s: &Shape) -> Result<LatticePolygon, ToricError> {
    apply_gl2z(&pentagon_raw(n, s)?, &c_matrix(n))
}

/// Hexagon of T_i(n) before C_n: vertex i of the pentagon chopped by c2.
pub fn t_polygon_raw(i: usize, n: i64, s: &Shape) -> Result<LatticePolygon, ToricError> {
    if !(1..=5).contains(&i) {
        return Err(ToricError::BadTorus(format!("vertex index {i} not in 1..5")));
    }
    corner_chop(&pentagon_raw(n, s)?, i - 1, &s.c2)
}

pub fn t_polygon(i: usize, n: i64, s: &Shape) -> Result<LatticePolygon, ToricError> {
    apply_gl2z(&t_polygon_raw(i, n, s)?, &c_matrix(n))
}

/// Sphere classes along the hexagon edges, in the vertex order of [`t_polygon_raw`].
pub fn t_polygon_classes(i: usize, n: i64) -> Vec<crate::homology::HClass> {
    hexagon_chain(n, i)
}

/// Finds M in GL(2,Z) and a translation carrying a onto b, if any.
pub fn gl2z_equivalent(a: &LatticePolygon, b: &LatticePolygon) -> Option<Mat2> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let (b0, b1) = b.corner(0);
    for start in 0..n {
        for reversed in [false, true] {
            let (mut u, mut w) = a.corner(start);
            if reversed {
                std::mem::swap(&mut u, &mut w);
            }
            // M u = b0, M w = b1
            let d = det(u, w);
            if d.abs() != 1 {
                continue;
            }
            // M = [b0 b1] [u w]^{-1}
            let inv = [[w.1 * d, -w.0 * d], [-u.1 * d, u.0 * d]];
            let bm = [[b0.0, b1.0], [b0.1, b1.1]];
            let m = [
                [bm[0][0] * inv[0][0] + bm[0][1] * inv[1][0], bm[0][0] * inv[0][1] + bm[0][1] * inv[1][1]],
                [bm[1][0] * inv[0][0] + bm[1][1] * inv[1][0], bm[1][0] * inv[0][1] + bm[1][1] * inv[1][1]],
            ];
            let img: Vec<Point> = a.vertices.iter().map(|v| apply(&m, v)).collect();
            let shift = sub(&b.vertices[0], &img[start]);
            let step = if reversed { n - 1 } else { 1 };
            let ok = (0..n).all(|j| {
                let v = &img[(start + j * step) % n];
                (&v.0 + &shift.0, &v.1 + &shift.1) == b.vertices[j]
            });
            if ok {
                return Some(m);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FatVertex {
    pub value: Rational,
    pub area: Rational,
    pub genus: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IsolatedPoint {
    pub value: Rational,
    pub weights: (i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ZkEdge {
    pub low: Rational,
    pub high: Rational,
    pub k: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KarshonGraph {
    pub fat_vertices: Vec<FatVertex>,
    pub isolated_points: Vec<IsolatedPoint>,
    pub zk_edges: Vec<ZkEdge>,
}

impl KarshonGraph {
    /// Sorts everything and translates the minimum moment value to 0.
    fn normalize(mut self) -> Self {
        let values = self
            .fat_vertices
            .iter()
            .map(|f| f.value.clone())
            .chain(self.isolated_points.iter().map(|p| p.value.clone()));
        let min = values.min().unwrap_or_else(|| int(0));
        for f in &mut self.fat_vertices {
            f.value -= &min;
        }
        for q in &mut self.isolated_points {
            q.value -= &min;
            if q.weights.0 > q.weights.1 {
                q.weights = (q.weights.1, q.weights.0);
            }
        }
        for e in &mut self.zk_edges {
            e.low -= &min;
            e.high -= &min;
        }
        self.fat_vertices.sort();
        self.isolated_points.sort();
        self.zk_edges.sort();
        self
    }

    /// Graph of the inverse circle.
    pub fn negated(&self) -> KarshonGraph {
        KarshonGraph {
            fat_vertices: self.fat_vertices.iter().map(|f| FatVertex { value: -&f.value, ..f.clone() }).collect(),
            isolated_points: self
                .isolated_points
                .iter()
                .map(|q| IsolatedPoint { value: -&q.value, weights: (-q.weights.1, -q.weights.0) })
                .collect(),
            zk_edges: self.zk_edges.iter().map(|e| ZkEdge { low: -&e.high, high: -&e.low, k: e.k }).collect(),
        }
        .normalize()
    }

    pub fn json(&self) -> Value {
        json!({
            "fat_vertices": self.fat_vertices.iter().map(|f| json!({"value": f.value.to_string(), "area": f.area.to_string(), "genus": f.genus})).collect::<Vec<_>>(),
            "isolated_points": self.isolated_points.iter().map(|q| json!({"value": q.value.to_string(), "weights": [q.weights.0, q.weights.1]})).collect::<Vec<_>>(),
            "zk_edges": self.zk_edges.iter().map(|e| json!({"low": e.low.to_string(), "high": e.high.to_string(), "k": e.k})).collect::<Vec<_>>(),
        })
    }
}

fn dot(xi: (i64, i64), v: &Point) -> Rational {
    int(xi.0) * &v.0 + int(xi.1) * &v.1
}

fn check_primitive(xi: (i64, i64)) -> Result<(), ToricError> {
    if xi.0.gcd(&xi.1) != 1 {
        return Err(ToricError::NotPrimitive(xi));
    }
    Ok(())
}

/// Labeled graph of the circle generated by xi in the torus with moment polygon `poly`.
pub fn karshon_graph(poly: &LatticePolygon, xi: (i64, i64)) -> Result<KarshonGraph, ToricError> {
    check_primitive(xi)?;
    poly.delzant_check()?;
    let n = poly.len();
    let mut fat = Vec::new();
    let mut on_fat = vec![false; n];
    let mut zk = Vec::new();
    for i in 0..n {
        let (u, len) = poly.edge_unchecked(i);
        let w = xi.0 * u.0 + xi.1 * u.1;
        let a = dot(xi, &poly.vertices[i]);
        if w == 0 {
            fat.push(FatVertex { value: a, area: len, genus: 0 });
            on_fat[i] = true;
            on_fat[(i + 1) % n] = true;
        } else if w.abs() >= 2 {
            let b = dot(xi, &poly.vertices[(i + 1) % n]);
            let (low, high) = if a < b { (a, b) } else { (b, a) };
            zk.push(ZkEdge { low, high, k: w.abs() });
        }
    }
    let mut iso = Vec::new();
    for i in (0..n).filter(|i| !on_fat[*i]) {
        let (a, b) = poly.corner(i);
        iso.push(IsolatedPoint { value: dot(xi, &poly.vertices[i]), weights: (xi.0 * a.0 + xi.1 * a.1, xi.0 * b.0 + xi.1 * b.1) });
    }
    Ok(KarshonGraph { fat_vertices: fat, isolated_points: iso, zk_edges: zk }.normalize())
}

/// Blows up a point of the fixed surface at moment value `level` with the given capacity.
fn blow_up_on_surface(g: &KarshonGraph, level: &Rational, capacity: &Rational) -> Result<KarshonGraph, ToricError> {
    let max = g.fat_vertices.iter().map(|f| f.value.clone()).chain(g.isolated_points.iter().map(|q| q.value.clone())).max().unwrap();
    let mut out = g.clone();
    let idx = out
        .fat_vertices
        .iter()
        .position(|f| &f.value == level)
        .ok_or_else(|| ToricError::NotRealizable(format!("no fixed surface at level {level}")))?;
    if capacity >= &out.fat_vertices[idx].area {
        return Err(ToricError::BadChop(format!("capacity {capacity} >= surface area {}", out.fat_vertices[idx].area)));
    }
    out.fat_vertices[idx].area -= capacity;
    let value = if level.is_zero() {
        capacity.clone()
    } else if level == &max {
        level - capacity
    } else {
        return Err(ToricError::NotRealizable("fixed surface is not extremal".into()));
    };
    out.isolated_points.push(IsolatedPoint { value, weights: (-1, 1) });
    Ok(out.normalize())
}

/// Circle actions a_n: the circle of the pentagon torus fixing the exceptional sphere of the
/// first blow-up (class E1 for even n, F-E1 for odd n), blown up at an interior point of
/// that sphere with capacity c2.
pub fn a_graph(n: i64, s: &Shape) -> Result<KarshonGraph, ToricError> {
    let pent_raw = pentagon_raw(n, s)?;
    let m = c_matrix(n);
    let (u, len) = pent_raw.edge_unchecked(2);
    let u = (m[0][0] * u.0 + m[0][1] * u.1, m[1][0] * u.0 + m[1][1] * u.1);
    let pent = apply_gl2z(&pent_raw, &m)?;
    // the normal circle with that sphere as its minimum
    for xi in [(-u.1, u.0), (u.1, -u.0)] {
        let g = karshon_graph(&pent, xi)?;
        let bottom = g.fat_vertices.iter().find(|f| f.value.is_zero() && f.area == len);
        if bottom.is_some() {
            return blow_up_on_surface(&g, &int(0), &s.c2);
        }
    }
    Err(ToricError::NotRealizable(format!("exceptional sphere of pentagon {n} is not a minimum")))
}

pub const BASIS: [&str; 6] = ["x0", "y0", "x1", "y1", "z", "t"];

/// Integer combination of x0, y0, x1, y1, z, t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GeneratorExpr(pub [i64; 6]);

impl GeneratorExpr {
    pub fn basis(i: usize) -> Self {
        let mut v = [0; 6];
        v[i] = 1;
        GeneratorExpr(v)
    }

    pub fn named(name: &str) -> Option<Self> {
        BASIS.iter().position(|b| *b == name).map(Self::basis)
    }

    pub fn add(self, o: Self) -> Self {
        let mut v = self.0;
        for (a, b) in v.iter_mut().zip(o.0) {
            *a += b;
        }
        GeneratorExpr(v)
    }

    pub fn scale(self, k: i64) -> Self {
        GeneratorExpr(self.0.map(|a| a * k))
    }

    pub fn sub(self, o: Self) -> Self {
        self.add(o.scale(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|a| *a == 0)
    }

    pub fn json(&self) -> Value {
        let m: BTreeMap<&str, i64> = BASIS.iter().zip(self.0).filter(|(_, c)| *c != 0).map(|(b, c)| (*b, c)).collect();
        json!(m)
    }
}

impl fmt::Display for GeneratorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (name, c) in BASIS.iter().zip(self.0) {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = c.abs();
            if mag == 1 {
                s.push_str(&format!("{sign}{name}"));
            } else {
                s.push_str(&format!("{sign}{mag}{name}"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

fn e(x0: i64, y0: i64, x1: i64, y1: i64, z: i64, t: i64) -> GeneratorExpr {
    GeneratorExpr([x0, y0, x1, y1, z, t])
}

/// Image of x_{n,i} or y_{n,i} in terms of x0, y0, x1, y1, z, t.
pub fn identification(n: i64, i: usize, axis: Axis) -> GeneratorExpr {
    assert!(n >= 0 && (1..=5).contains(&i));
    let (x, y) = if n == 0 {
        match i {
            1 => (e(1, 0, 0, 0, 0, 0), e(0, 1, 0, 0, 0, 0)),
            2 => (e(0, 0, 1, 0, 0, 0), e(0, 1, 0, 0, 0, 0)),
            3 => (e(0, 0, 1, 0, 0, 0), e(0, 0, 1, 1, 0, 0)),
            4 => (e(0, 0, 0, -1, 1, 0), e(0, 0, 0, 0, 1, 0)),
            _ => (e(1, 0, 0, 0, 0, 0), e(0, 0, 0, 0, 1, 0)),
        }
    } else if n % 2 == 1 {
        let k = (n + 1) / 2;
        match i {
            1 => (e(-k, 1, 0, 0, 0, 0), e(k, -1, 1 - k, 0, 0, k)),
            2 => (e(0, 1, -k, 0, 0, 0), e(1, -1, 0, 0, 0, k)),
            3 => (e(-k, 0, 0, 0, 1, 0), e(k + 1, 0, -k, 0, -1, k)),
            4 => (e(0, 0, 0, k, 1 - k, 0), e(0, 0, -k, -(k + 1), k, k)),
            _ => (e(0, 0, 1 - k, 1, 0, 0), e(0, 0, 0, -1, 0, k)),
        }
    } else {
        let k = n / 2;
        match i {
            1 => (e(-1, 0, -k, 0, 0, k), e(0, 1, k, 0, 0, 0)),
            2 => (e(0, 0, -(k + 1), 0, 0, k), e(k, 1, 0, 0, 0, 0)),
            3 => (e(0, 0, -(k + 1), 0, 0, k), e(0, 0, k + 1, 1, 0, 0)),
            4 => (e(0, 0, -k, 1, -1, k), e(0, 0, 0, -k, k + 1, 0)),
            _ => (e(-1, 0, -k, 0, 0, k), e(k, 0, 0, 0, 1, 0)),
        }
    };
    match axis {
        Axis::X => x,
        Axis::Y => y,
    }
}

/// Image of the circle a_n.
pub fn a_identification(n: i64) -> GeneratorExpr {
    if n == 0 {
        e(0, 0, 0, 1, 0, 0)
    } else if n % 2 == 1 {
        let k = (n + 1) / 2;
        e(0, 0, -k * k, 0, 1, k * k)
    } else {
        let k = n / 2;
        e(0, 0, -k * (k + 1), 1, 0, k * (k + 1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentificationEntry {
    pub n: i64,
    pub i: Option<usize>,
    pub axis: Option<Axis>,
    pub expr: GeneratorExpr,
}

impl IdentificationEntry {
    pub fn symbol(&self) -> String {
        match (self.i, self.axis) {
            (Some(i), Some(Axis::X)) => format!("x_{{{},{}}}", self.n, i),
            (Some(i), Some(Axis::Y)) => format!("y_{{{},{}}}", self.n, i),
            _ => format!("a_{}", self.n),
        }
    }
}

/// The full table for 0 <= n <= 2 kmax.
pub fn identification_table(kmax: i64) -> Vec<IdentificationEntry> {
    let mut out = Vec::new();
    for n in 0..=2 * kmax {
        for i in 1..=5 {
            for axis in [Axis::X, Axis::Y] {
                out.push(IdentificationEntry { n, i: Some(i), axis: Some(axis), expr: identification(n, i, axis) });
            }
        }
        out.push(IdentificationEntry { n, i: None, axis: None, expr: a_identification(n) });
    }
    out
}

/// A circle subgroup: a primitive circle of a torus T_i(n), or one of the actions a_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Circle {
    Torus { n: i64, i: usize, xi: (i64, i64) },
    A(i64),
}

impl Circle {
    pub fn expr(&self) -> GeneratorExpr {
        match *self {
            Circle::Torus { n, i, xi } => identification(n, i, Axis::X).scale(xi.0).add(identification(n, i, Axis::Y).scale(xi.1)),
            Circle::A(n) => a_identification(n),
        }
    }

    pub fn graph(&self, s: &Shape) -> Result<KarshonGraph, ToricError> {
        match *self {
            Circle::Torus { n, i, xi } => karshon_graph(&t_polygon(i, n, s)?, xi),
            Circle::A(n) => a_graph(n, s),
        }
    }
}

impl fmt::Display for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Circle::Torus { n, i, xi } => write!(f, "T_{i}({n})[{},{}]", xi.0, xi.1),
            Circle::A(n) => write!(f, "a_{n}"),
        }
    }
}

/// Whether the two circles have the same labeled graph on the shape.
pub fn verify_relation(lhs: &Circle, rhs: &Circle, s: &Shape) -> Result<bool, ToricError> {
    Ok(lhs.graph(s)? == rhs.graph(s)?)
}

/// Tori T_i(n) that exist on the shape.
pub fn admissible_tori(s: &Shape) -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    for n in 0..=2 * s.ell {
        for i in 1..=5 {
            if t_polygon_raw(i, n, s).is_ok() {
                out.push((n, i));
            }
        }
    }
    out
}

/// A torus circle whose image is `expr`, searching the tori of the shape in order.
pub fn realize(expr: GeneratorExpr, s: &Shape) -> Result<Circle, ToricError> {
    for (n, i) in admissible_tori(s) {
        let x = identification(n, i, Axis::X);
        let y = identification(n, i, Axis::Y);
        // solve a x + b y = expr using two independent coordinates
        for c1 in 0..6 {
            for c2 in c1 + 1..6 {
                let d = x.0[c1] * y.0[c2] - x.0[c2] * y.0[c1];
                if d == 0 {
                    continue;
                }
                let an = expr.0[c1] * y.0[c2] - expr.0[c2] * y.0[c1];
                let bn = x.0[c1] * expr.0[c2] - x.0[c2] * expr.0[c1];
                if an % d != 0 || bn % d != 0 {
                    continue;
                }
                let (a, b) = (an / d, bn / d);
                if x.scale(a).add(y.scale(b)) == expr && a.gcd(&b) == 1 {
                    return Ok(Circle::Torus { n, i, xi: (a, b) });
                }
            }
        }
    }
    Err(ToricError::NotRealizable(format!("{expr} is not a primitive circle of any torus on this shape")))
}

/// Groups circles by image and checks that circles with equal images have equal graphs.
/// Returns the pairs that were compared with their outcome.
pub fn check_identifications(s: &Shape, circles: &[Circle]) -> Result<Vec<(Circle, Circle, bool)>, ToricError> {
    let mut groups: BTreeMap<GeneratorExpr, Vec<Circle>> = BTreeMap::new();
    for c in circles {
        groups.entry(c.expr()).or_default().push(*c);
    }
    let mut out = Vec::new();
    for members in groups.values() {
        let first = &members[0];
        let g = first.graph(s)?;
        for other in &members[1..] {
            out.push((*first, *other, other.graph(s)? == g));
        }
    }
    Ok(out)
}

/// Circles of small slope in every admissible torus, plus the admissible a_n.
pub fn sample_circles(s: &Shape, bound: i64) -> Vec<Circle> {
    let mut out = Vec::new();
    for (n, i) in admissible_tori(s) {
        for a in -bound..=bound {
            for b in -bound..=bound {
                if a.gcd(&b) == 1 {
                    out.push(Circle::Torus { n, i, xi: (a, b) });
                }
            }
        }
    }
    for n in 0..=2 * s.ell {
        if a_graph(n, s).is_ok() {
            out.push(Circle::A(n));
        }
    }
    out
}

/// Lattice lengths of the hexagon edges equal the areas of the configuration spheres.
pub fn edge_areas_match(i: usize, n: i64, s: &Shape) -> Result<bool, ToricError> {
    let poly = t_polygon_raw(i, n, s)?;
    let classes = t_polygon_classes(i, n);
    let lens = poly.edge_lengths();
    Ok(classes.len() == lens.len() && classes.iter().zip(&lens).all(|(c, l)| &area(s, *c) == l))
}

/// Sanity: the pentagon edges carry the classes of [`pentagon_chain`].
pub fn pentagon_areas_match(n: i64, s: &Shape) -> Result<bool, ToricError> {
    let poly = pentagon_raw(n, s)?;
    Ok(pentagon_chain(n).iter().zip(poly.edge_lengths()).all(|(c, l)| area(s, *c) == l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sh(mu: (i64, i64), c1: (i64, i64), c2: (i64, i64)) -> Shape {
        Shape::from_ratios(mu, c1, c2).unwrap()
    }

    fn pts(v: &[(Rational, Rational)]) -> Vec<Point> {
        v.to_vec()
    }

    #[test]
    fn hirzebruch_examples() {
        let s = sh((1, 1), (3, 10), (1, 5));
        let sq = hirzebruch_polygon(0, &s).unwrap();
        assert_eq!(sq.edge_lengths(), vec![int(1); 4]);
        let s = sh((5, 2), (3, 10), (1, 5));
        let h2 = hirzebruch_polygon(2, &s).unwrap();
        assert!(h2.vertices().contains(&(int(1), rat(7, 2))) && h2.vertices().contains(&(int(0), rat(3, 2))));
        let h1 = hirzebruch_polygon(1, &s).unwrap();
        assert!(h1.vertices().contains(&(int(0), rat(5, 2))));
        assert!(hirzebruch_polygon(6, &s).is_err());
        for n in 0..=4 {
            assert!(hirzebruch_polygon(n, &s).unwrap().is_delzant());
        }
    }

    #[test]
    fn chops() {
        let s = sh((5, 2), (3, 10), (1, 5));
        let p = pentagon_raw(2, &s).unwrap();
        let want = pts(&[(int(1), rat(7, 2)), (int(0), rat(3, 2)), (int(0), rat(3, 10)), (rat(3, 10), int(0)), (int(1), int(0))]);
        assert_eq!(p.vertices(), &want[..]);
        let p = pentagon_raw(1, &s).unwrap();
        let mu1 = rat(5, 2) - rat(3, 10);
        let want = pts(&[(int(1), &mu1 + int(1)), (int(0), mu1.clone()), (int(0), rat(7, 10)), (rat(7, 10), int(0)), (int(1), int(0))]);
        assert_eq!(p.vertices(), &want[..]);
        let sq = hirzebruch_polygon(0, &s).unwrap();
        assert!(corner_chop(&sq, 2, &int(0)).is_err());
        assert!(corner_chop(&sq, 2, &int(1)).is_err());
    }

    #[test]
    fn matrices() {
        let s = sh((1, 1), (3, 10), (1, 5));
        let sq = hirzebruch_polygon(0, &s).unwrap();
        let img = apply_gl2z(&sq, &c_matrix(0)).unwrap();
        assert!(gl2z_equivalent(&sq, &img).is_some());
        assert_eq!(apply_gl2z(&sq, &[[1, 0], [0, 1]]).unwrap(), sq);
        let s = sh((5, 2), (3, 10), (1, 5));
        let h = apply_gl2z(&hirzebruch_polygon(2, &s).unwrap(), &c_matrix(2)).unwrap();
        assert!(h.is_delzant());
        assert!(apply_gl2z(&sq, &[[2, 0], [0, 1]]).is_err());
        for n in 0..8 {
            assert_eq!(mat_det(&c_matrix(n)).abs(), 1);
        }
    }

    #[test]
    fn hexagons() {
        // at mu = 1 swapping the two rulings identifies T_2(0) with T_5(0) and T_3(0) with T_4(0)
        for (s, twins) in [(sh((1, 1), (3, 10), (1, 5)), vec![(2, 5), (3, 4)]), (sh((3, 2), (3, 10), (1, 5)), vec![])] {
            let hs: Vec<_> = (1..=5).map(|i| t_polygon(i, 0, &s).unwrap()).collect();
            for (a, h) in hs.iter().enumerate() {
                assert_eq!(h.len(), 6);
                assert!(h.is_delzant());
                assert!(gl2z_equivalent(h, h).is_some());
                for (b, other) in hs.iter().enumerate().skip(a + 1) {
                    assert_eq!(gl2z_equivalent(h, other).is_some(), twins.contains(&(a + 1, b + 1)), "T_{}(0) vs T_{}(0)", a + 1, b + 1);
                }
            }
        }
        // vertex 2 chop on a level-2 pentagon needs lambda > c1 + c2
        let s = sh((3, 2), (3, 10), (1, 10));
        assert!(t_polygon(2, 2, &s).is_ok());
        let s = sh((23, 20), (3, 10), (1, 5));
        assert!(t_polygon(1, 2, &s).is_err());
    }

    #[test]
    fn edge_lengths_match_configurations() {
        for s in [sh((1, 1), (3, 10), (1, 5)), sh((5, 2), (3, 10), (1, 5)), sh((29, 10), (2, 5), (1, 4)), sh((4, 1), (1, 3), (1, 4))] {
            assert!(pentagon_areas_match(0, &s).unwrap());
            for (n, i) in admissible_tori(&s) {
                assert!(edge_areas_match(i, n, &s).unwrap(), "T_{i}({n})");
            }
        }
    }

    #[test]
    fn karshon_examples() {
        let s = sh((1, 1), (3, 10), (1, 5));
        let pent = pentagon_raw(0, &s).unwrap();
        let g = karshon_graph(&pent, (1, 0)).unwrap();
        assert_eq!(
            g.fat_vertices,
            vec![FatVertex { value: int(0), area: rat(7, 10), genus: 0 }, FatVertex { value: int(1), area: int(1), genus: 0 }]
        );
        assert_eq!(g.isolated_points, vec![IsolatedPoint { value: rat(3, 10), weights: (-1, 1) }]);
        let sq = hirzebruch_polygon(0, &s).unwrap();
        let g = karshon_graph(&sq, (0, 1)).unwrap();
        assert_eq!(g.fat_vertices.len(), 2);
        assert!(g.isolated_points.is_empty());
        assert!(karshon_graph(&sq, (2, 0)).is_err());
        let h = t_polygon(3, 0, &s).unwrap();
        assert_eq!(karshon_graph(&h, (1, 2)).unwrap().negated(), karshon_graph(&h, (-1, -2)).unwrap());
    }

    #[test]
    fn named_relations() {
        for s in [sh((3, 2), (3, 10), (1, 5)), sh((7, 4), (2, 5), (1, 4)), sh((13, 10), (1, 2), (1, 3))] {
            let y1 = Circle::Torus { n: 0, i: 4, xi: (-1, 1) };
            assert!(verify_relation(&Circle::Torus { n: 1, i: 4, xi: (1, 0) }, &y1, &s).unwrap());
            let y0_x0 = Circle::Torus { n: 0, i: 1, xi: (-1, 1) };
            assert!(verify_relation(&Circle::Torus { n: 1, i: 1, xi: (1, 0) }, &y0_x0, &s).unwrap());
            assert!(verify_relation(&Circle::A(0), &y1, &s).unwrap());
            assert!(!verify_relation(&Circle::A(0), &y0_x0, &s).unwrap());
        }
    }

    #[test]
    fn table_examples() {
        assert_eq!(identification(1, 2, Axis::Y), GeneratorExpr::named("t").unwrap().add(e(1, -1, 0, 0, 0, 0)));
        assert_eq!(identification(4, 5, Axis::Y), e(2, 0, 0, 0, 1, 0));
        assert_eq!(a_identification(2), e(0, 0, -2, 1, 0, 2));
        let t = identification(1, 1, Axis::X).add(identification(1, 1, Axis::Y));
        assert_eq!(t, GeneratorExpr::named("t").unwrap());
        assert_eq!(identification_table(2).len(), 5 * 11);
    }

    /// Every listed identity, instantiated for small k, j, holds in the table.
    #[test]
    fn identification_identities_hold() {
        let x = |n, i| identification(n, i, Axis::X);
        let y = |n, i| identification(n, i, Axis::Y);
        let g = |s: &str| GeneratorExpr::named(s).unwrap();
        assert_eq!(x(0, 5), g("x0"));
        assert_eq!(y(0, 5), g("z"));
        assert_eq!(x(0, 3), g("x1"));
        assert_eq!(y(0, 3), g("x1").add(g("y1")));
        assert_eq!(y(0, 2), g("y0"));
        assert_eq!(x(1, 4), g("y1"));
        assert_eq!(x(1, 5), g("y1"));
        assert_eq!(x(1, 1), g("y0").sub(g("x0")));
        assert_eq!(x(1, 2), g("y0").sub(g("x1")));
        for k in 1..=4i64 {
            for j in 1..=4i64 {
                for i in [3, 4, 5] {
                    assert_eq!(x(2 * j - 1, i).scale(k - 1).add(y(2 * j - 1, i).scale(k)), x(2 * k - 1, i).scale(j - 1).add(y(2 * k - 1, i).scale(j)));
                    assert_eq!(x(2 * k, i).scale(j).sub(y(2 * k, i)), x(2 * j, i).scale(k).sub(y(2 * j, i)));
                }
                assert_eq!(x(2 * j - 1, 1).scale(k - 1).add(y(2 * j - 1, 1).scale(k)), x(2 * k - 1, 2).scale(j - 1).add(y(2 * k - 1, 2).scale(j)));
                assert_eq!(x(2 * k, 1).scale(j).sub(y(2 * k, 1)), x(2 * j, 2).scale(k).sub(y(2 * j, 2)));
            }
            for i in [1, 2, 4] {
                assert_eq!(x(2 * k, i).scale(k).add(y(2 * k, i)), x(2 * k - 1, i).scale(k + 1).add(y(2 * k - 1, i).scale(k)));
            }
            assert_eq!(x(2 * k, 3).scale(k).add(y(2 * k, 3)), x(2 * k - 1, 5).scale(k + 1).add(y(2 * k - 1, 5).scale(k)));
            assert_eq!(x(2 * k, 5).scale(k).add(y(2 * k, 5)), x(2 * k - 1, 3).scale(k + 1).add(y(2 * k - 1, 3).scale(k)));
            assert_eq!(x(2 * k, 1), x(2 * k, 5));
            assert_eq!(x(2 * k, 2), x(2 * k, 3));
            assert_eq!(y(2 * k, 1), g("x1").scale(k).add(g("y0")));
            assert_eq!(y(2 * k, 2), g("x0").scale(k).add(g("y0")));
            assert_eq!(y(2 * k, 3), g("x1").scale(k + 1).add(g("y1")));
            assert_eq!(y(2 * k, 5), g("x0").scale(k).add(g("z")));
            assert_eq!(x(2 * k - 1, 1).add(y(2 * k - 1, 1)), x(2 * k - 1, 5).add(y(2 * k - 1, 5)));
            assert_eq!(x(2 * k - 1, 2).add(y(2 * k - 1, 2)), x(2 * k - 1, 3).add(y(2 * k - 1, 3)));
            assert_eq!(x(2 * k, 4).scale(k).add(y(2 * k, 4)), x(2 * k, 5).scale(k).add(y(2 * k, 5)));
            // a_n
            assert_eq!(a_identification(2 * k), x(2 * k, 3).scale(k + 1).add(y(2 * k, 3)));
            assert_eq!(a_identification(2 * k), x(2 * k, 4).scale(k + 1).add(y(2 * k, 4)));
            assert_eq!(a_identification(2 * k - 1), x(2 * k - 1, 3).scale(k + 1).add(y(2 * k - 1, 3).scale(k)));
            assert_eq!(a_identification(2 * k - 1), x(2 * k - 1, 4).scale(k + 1).add(y(2 * k - 1, 4).scale(k)));
        }
    }

    #[test]
    fn table_agrees_with_graphs() {
        for s in [sh((3, 2), (3, 10), (1, 5)), sh((29, 10), (2, 5), (1, 4)), sh((7, 2), (3, 5), (1, 5))] {
            let circles = sample_circles(&s, 2);
            for (a, b, ok) in check_identifications(&s, &circles).unwrap() {
                assert!(ok, "{a} and {b} share an image but not a graph");
            }
            let mut seen: BTreeMap<String, GeneratorExpr> = BTreeMap::new();
            for c in &circles {
                let key = c.graph(&s).unwrap().json().to_string();
                let prev = seen.entry(key).or_insert_with(|| c.expr());
                assert_eq!(*prev, c.expr(), "{c} shares a graph with a different image");
            }
        }
    }

    #[test]
    fn a_actions_match_identities() {
        let s = sh((29, 10), (2, 5), (1, 4));
        for k in 1..=1 {
            let odd = Circle::Torus { n: 2 * k - 1, i: 3, xi: (k + 1, k) };
            assert!(verify_relation(&Circle::A(2 * k - 1), &odd, &s).unwrap());
            let odd4 = Circle::Torus { n: 2 * k - 1, i: 4, xi: (k + 1, k) };
            assert!(verify_relation(&Circle::A(2 * k - 1), &odd4, &s).unwrap());
            let even = Circle::Torus { n: 2 * k, i: 3, xi: (k + 1, 1) };
            assert!(verify_relation(&Circle::A(2 * k), &even, &s).unwrap());
        }
        assert_eq!(realize(a_identification(2), &s).unwrap().expr(), a_identification(2));
    }

    use proptest::prelude::*;

    fn unimodular() -> impl Strategy<Value = Mat2> {
        prop::collection::vec(0usize..4, 1..6).prop_map(|steps| {
            let gens: [Mat2; 4] = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[0, 1], [1, 0]], [[1, -1], [0, 1]]];
            let mut m: Mat2 = [[1, 0], [0, 1]];
            for g in steps {
                let a = gens[g];
                m = [
                    [m[0][0] * a[0][0] + m[0][1] * a[1][0], m[0][0] * a[0][1] + m[0][1] * a[1][1]],
                    [m[1][0] * a[0][0] + m[1][1] * a[1][0], m[1][0] * a[0][1] + m[1][1] * a[1][1]],
                ];
            }
            m
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn graphs_invariant_under_gl2z(m in unimodular(), i in 1usize..=5, a in -3i64..=3, b in -3i64..=3) {
            prop_assume!(a.gcd(&b) == 1);
            let s = sh((5, 2), (3, 10), (1, 5));
            let poly = t_polygon(i, 1, &s).unwrap();
            let img = apply_gl2z(&poly, &m).unwrap();
            prop_assert!(img.is_delzant());
            // xi transforms contragrediently: xi' = M^{-T} xi
            let d = mat_det(&m);
            let inv_t = [[m[1][1] * d, -m[1][0] * d], [-m[0][1] * d, m[0][0] * d]];
            let xi2 = (inv_t[0][0] * a + inv_t[0][1] * b, inv_t[1][0] * a + inv_t[1][1] * b);
            prop_assert_eq!(karshon_graph(&poly, (a, b)).unwrap(), karshon_graph(&img, xi2).unwrap());
            prop_assert!(gl2z_equivalent(&poly, &img).is_some());
        }

        #[test]
        fn inverse_circle_negates_graph(i in 1usize..=5, n in 0i64..=4, a in -3i64..=3, b in -3i64..=3) {
            prop_assume!(a.gcd(&b) == 1);
            let s = sh((29, 10), (2, 5), (1, 4));
            let poly = t_polygon(i, n, &s).unwrap();
            prop_assert_eq!(karshon_graph(&poly, (a, b)).unwrap().negated(), karshon_graph(&poly, (-a, -b)).unwrap());
        }

        #[test]
        fn every_torus_is_delzant(i in 1usize..=5, n in 0i64..=4, num in 0i64..100) {
            let s = Shape::new(int(2) + rat(num, 100) + rat(1, 1000), rat(2, 5), rat(1, 4)).unwrap();
            if let Ok(p) = t_polygon(i, n, &s) {
                prop_assert!(p.is_delzant());
                prop_assert!(edge_areas_match(i, n, &s).unwrap());
            }
        }
    }
}
