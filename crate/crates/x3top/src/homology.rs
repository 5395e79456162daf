//! Second homology of the three-point blow-up: classes, shapes, strata and configurations.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::rational::{ceil_i64, int, rat, Rational};

/// The class pB + qF - r1 E1 - r2 E2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HClass {
    pub p: i64,
    pub q: i64,
    pub r1: i64,
    pub r2: i64,
}

pub const B: HClass = HClass::new(1, 0, 0, 0);
pub const F: HClass = HClass::new(0, 1, 0, 0);
pub const E1: HClass = HClass::new(0, 0, -1, 0);
pub const E2: HClass = HClass::new(0, 0, 0, -1);

impl HClass {
    pub const fn new(p: i64, q: i64, r1: i64, r2: i64) -> Self {
        HClass { p, q, r1, r2 }
    }

    pub fn add(self, o: HClass) -> HClass {
        HClass::new(self.p + o.p, self.q + o.q, self.r1 + o.r1, self.r2 + o.r2)
    }

    pub fn sub(self, o: HClass) -> HClass {
        self.add(o.times(-1))
    }

    pub fn times(self, k: i64) -> HClass {
        HClass::new(k * self.p, k * self.q, k * self.r1, k * self.r2)
    }

    pub fn square(self) -> i64 {
        intersect(self, self)
    }

    pub fn json(self) -> Value {
        json!({"p": self.p, "q": self.q, "r1": self.r1, "r2": self.r2})
    }
}

impl fmt::Display for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, &str)> = vec![(self.p, "B"), (self.q, "F"), (-self.r1, "E1"), (-self.r2, "E2")];
        parts.retain(|(c, _)| *c != 0);
        if parts.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, (c, name)) in parts.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            if mag == 1 {
                s.push_str(&format!("{sign}{name}"));
            } else {
                s.push_str(&format!("{sign}{mag}{name}"));
            }
        }
        f.write_str(&s)
    }
}

pub fn intersect(a: HClass, b: HClass) -> i64 {
    a.p * b.q + a.q * b.p - a.r1 * b.r1 - a.r2 * b.r2
}

/// First Chern class evaluated on the class.
pub fn chern(a: HClass) -> i64 {
    2 * (a.p + a.q) - a.r1 - a.r2
}

pub fn adjunction_genus(a: HClass) -> Rational {
    int(1) + rat(a.square() - chern(a), 2)
}

pub fn k_index(a: HClass) -> Rational {
    rat(a.square() + chern(a), 2)
}

/// D_{4k+1}=B+kF, D_{4k}=B+kF-E2, D_{4k-1}=B+kF-E1, D_{4k-2}=B+kF-E1-E2.
pub fn d_class(i: i64) -> HClass {
    match i.rem_euclid(4) {
        1 => HClass::new(1, (i - 1).div_euclid(4), 0, 0),
        0 => HClass::new(1, i.div_euclid(4), 0, 1),
        3 => HClass::new(1, (i + 1).div_euclid(4), 1, 0),
        _ => HClass::new(1, (i + 2).div_euclid(4), 1, 1),
    }
}

/// Inverse of [`d_class`] on its image.
pub fn d_index(a: HClass) -> Option<i64> {
    if a.p != 1 || !(0..=1).contains(&a.r1) || !(0..=1).contains(&a.r2) {
        return None;
    }
    let k = a.q;
    Some(match (a.r1, a.r2) {
        (0, 0) => 4 * k + 1,
        (0, 1) => 4 * k,
        (1, 0) => 4 * k - 1,
        _ => 4 * k - 2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("inadmissible shape: {0}")]
    Inadmissible(String),
    #[error("shape is not generic ({0:?}); this operation needs c2 < c1 and c1 + c2 < 1")]
    NotGeneric(Boundary),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Generic,
    /// c1 = c2, c1 + c2 < 1
    R1,
    /// c2 < c1, c1 + c2 = 1
    R2,
    /// c1 = c2 = 1/2
    R3,
}

/// Position of lambda relative to c2, c1, c1 + c2 (ties go to the earlier range).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LambdaRange {
    /// lambda <= c2
    A,
    /// c2 < lambda <= c1
    B,
    /// c1 < lambda <= c1 + c2
    C,
    /// c1 + c2 < lambda
    D,
}

impl LambdaRange {
    pub fn label(self) -> &'static str {
        match self {
            LambdaRange::A => "a",
            LambdaRange::B => "b",
            LambdaRange::C => "c",
            LambdaRange::D => "d",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "a" => Some(LambdaRange::A),
            "b" => Some(LambdaRange::B),
            "c" => Some(LambdaRange::C),
            "d" => Some(LambdaRange::D),
            _ => None,
        }
    }
}

/// Normalized symplectic form data: areas mu, 1, c1, c2 of B, F, E1, E2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    pub mu: Rational,
    pub c1: Rational,
    pub c2: Rational,
    pub ell: i64,
    pub lambda: Rational,
}

impl Shape {
    pub fn new(mu: Rational, c1: Rational, c2: Rational) -> Result<Self, ShapeError> {
        let bad = |m: &str| Err(ShapeError::Inadmissible(m.to_string()));
        if mu < int(1) {
            return bad(&format!("mu = {mu} < 1"));
        }
        if !c2.is_positive() {
            return bad(&format!("c2 = {c2} must be > 0"));
        }
        if c2 > c1 {
            return bad(&format!("c2 = {c2} > c1 = {c1}"));
        }
        if &c1 + &c2 > int(1) {
            return bad(&format!("c1 + c2 = {} > 1", &c1 + &c2));
        }
        let ell = ceil_i64(&mu) - 1;
        let lambda = &mu - int(ell);
        Ok(Shape { mu, c1, c2, ell, lambda })
    }

    pub fn from_ratios(mu: (i64, i64), c1: (i64, i64), c2: (i64, i64)) -> Result<Self, ShapeError> {
        Self::new(rat(mu.0, mu.1), rat(c1.0, c1.1), rat(c2.0, c2.1))
    }

    pub fn boundary(&self) -> Boundary {
        let sum_one = (&self.c1 + &self.c2).is_one();
        match (self.c1 == self.c2, sum_one) {
            (true, true) => Boundary::R3,
            (true, false) => Boundary::R1,
            (false, true) => Boundary::R2,
            (false, false) => Boundary::Generic,
        }
    }

    pub fn is_generic(&self) -> bool {
        self.boundary() == Boundary::Generic
    }

    pub fn lambda_range(&self) -> LambdaRange {
        let l = &self.lambda;
        if l <= &self.c2 {
            LambdaRange::A
        } else if l <= &self.c1 {
            LambdaRange::B
        } else if l <= &(&self.c1 + &self.c2) {
            LambdaRange::C
        } else {
            LambdaRange::D
        }
    }

    pub fn json(&self) -> Value {
        json!({
            "mu": self.mu.to_string(),
            "c1": self.c1.to_string(),
            "c2": self.c2.to_string(),
            "ell": self.ell,
            "lambda": self.lambda.to_string(),
        })
    }
}

pub fn area(s: &Shape, a: HClass) -> Rational {
    &s.mu * int(a.p) + int(a.q) - &s.c1 * int(a.r1) - &s.c2 * int(a.r2)
}

/// Classes with p = 0 passing the adjunction inequality and nonnegative on every admissible shape.
pub fn p0_classes() -> Vec<HClass> {
    const BOX: i64 = 4;
    let mut out = Vec::new();
    for q in -BOX..=BOX {
        for r1 in -BOX..=BOX {
            for r2 in -BOX..=BOX {
                let a = HClass::new(0, q, r1, r2);
                if a == HClass::new(0, 0, 0, 0) {
                    continue;
                }
                if 2 * (q - 1) + r1 * (r1 - 1) + r2 * (r2 - 1) > 0 {
                    continue;
                }
                // area is linear in (c1, c2); test the corners (0,0), (1,0), (1/2,1/2) of the closure
                let corners = [(int(0), int(0)), (int(1), int(0)), (rat(1, 2), rat(1, 2))];
                if corners.iter().all(|(c1, c2)| int(q) - c1 * int(r1) - c2 * int(r2) >= int(0)) {
                    assert!(q.abs() < BOX && r1.abs() < BOX && r2.abs() < BOX, "solution on the search box boundary");
                    out.push(a);
                }
            }
        }
    }
    out
}

/// The exceptional classes with p in {0, 1}: square -1, chern 1, positive on every admissible shape.
pub fn exceptional_classes() -> Vec<HClass> {
    const BOX: i64 = 4;
    let mut out = Vec::new();
    for p in 0..=1 {
        for q in -BOX..=BOX {
            for r1 in -BOX..=BOX {
                for r2 in -BOX..=BOX {
                    let a = HClass::new(p, q, r1, r2);
                    if a.square() != -1 || chern(a) != 1 {
                        continue;
                    }
                    // worst case mu = 1; corners of the closure in (c1, c2)
                    let corners = [(int(0), int(0)), (int(1), int(0)), (rat(1, 2), rat(1, 2))];
                    if corners.iter().all(|(c1, c2)| int(p + q) - c1 * int(r1) - c2 * int(r2) >= int(0))
                        && (int(p + q) - rat(r1, 4) - rat(r2, 8)).is_positive()
                    {
                        out.push(a);
                    }
                }
            }
        }
    }
    out
}

/// Number N of strata on a generic shape.
pub fn strata_count(s: &Shape) -> Result<i64, ShapeError> {
    if !s.is_generic() {
        return Err(ShapeError::NotGeneric(s.boundary()));
    }
    let l = s.ell;
    Ok(match s.lambda_range() {
        LambdaRange::A => 4 * l - 1,
        LambdaRange::B => 4 * l,
        LambdaRange::C => 4 * l + 1,
        LambdaRange::D => 4 * l + 2,
    })
}

/// Classes D_{-m}, m >= 1, with positive area (D_{-1}, D_{-2} always).
pub fn enumerate_d_strata(s: &Shape) -> Vec<(i64, HClass)> {
    // areas of D_{-1}, D_{-2}, ... are non-increasing on admissible shapes
    let mut out = vec![(1, d_class(-1)), (2, d_class(-2))];
    for m in 3.. {
        let d = d_class(-m);
        if !area(s, d).is_positive() {
            break;
        }
        out.push((m, d));
    }
    out
}

pub fn codim(ell: i64, r1: i64, r2: i64) -> i64 {
    assert!(ell >= 1 && (0..=1).contains(&r1) && (0..=1).contains(&r2));
    4 * ell - 2 + 2 * r1 + 2 * r2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isometry {
    T2,
    S1,
}

impl Isometry {
    pub fn label(self) -> &'static str {
        match self {
            Isometry::T2 => "T2",
            Isometry::S1 => "S1",
        }
    }
}

/// A configuration of embedded spheres; `members` is the cyclic chain of invariant spheres.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigType {
    pub type_id: u8,
    pub m: i64,
    pub members: Vec<HClass>,
    /// Classes of the extra sphere attached off the chain (circle-only types).
    pub extra: Vec<HClass>,
}

pub fn isometry_type(type_id: u8) -> Isometry {
    assert!((1..=18).contains(&type_id), "configuration types run from 1 to 18");
    if matches!(type_id, 6 | 8 | 14) {
        Isometry::S1
    } else {
        Isometry::T2
    }
}

/// Boundary chain of the pentagon obtained by one blow-up of a Hirzebruch surface,
/// listed from the top edge in counterclockwise order (edges e12, e23, e34, e45, e51).
pub fn pentagon_chain(n: i64) -> [HClass; 5] {
    let k = (n + 1) / 2;
    let kf = F.times(k);
    if n % 2 == 1 {
        [F, B.sub(kf), F.sub(E1), E1, B.add(kf).sub(E1)]
    } else {
        let k = n / 2;
        let kf = F.times(k);
        [F, B.sub(kf).sub(E1), E1, F.sub(E1), B.add(kf)]
    }
}

/// Chain after blowing up vertex i (1..5) of that pentagon.
pub fn hexagon_chain(n: i64, i: usize) -> Vec<HClass> {
    assert!((1..=5).contains(&i));
    let p = pentagon_chain(n);
    // vertex i sits between edge i-1 (e_{i-1,i}) and edge i (e_{i,i+1}); e51 is edge index 4
    let before = (i + 3) % 5;
    let after = i - 1;
    let mut out = Vec::with_capacity(6);
    for (j, c) in p.iter().enumerate() {
        let c = if j == before || j == after { c.sub(E2) } else { *c };
        out.push(c);
        if j == before {
            out.push(E2);
        }
    }
    if before == 4 {
        // E2 closes the cycle between e51 and e12; rotate so the chain starts with it
        out.rotate_right(1);
    }
    out
}

/// Which configuration type the blow-up of vertex i of the n-th pentagon yields.
pub fn torus_config_type(n: i64, i: usize) -> u8 {
    const EVEN0: [u8; 5] = [1, 3, 5, 4, 2];
    const ODD: [u8; 5] = [10, 12, 11, 9, 7];
    const EVEN: [u8; 5] = [16, 18, 17, 15, 13];
    let t = if n == 0 {
        EVEN0
    } else if n % 2 == 1 {
        ODD
    } else {
        EVEN
    };
    t[i - 1]
}

/// Inverse of [`torus_config_type`]: (n, i) for a toric type at level m.
pub fn torus_for_type(type_id: u8, m: i64) -> Option<(i64, usize)> {
    for i in 1..=5 {
        if m == 0 && torus_config_type(0, i) == type_id {
            return Some((0, i));
        }
        if m >= 1 {
            if torus_config_type(2 * m - 1, i) == type_id {
                return Some((2 * m - 1, i));
            }
            if torus_config_type(2 * m, i) == type_id {
                return Some((2 * m, i));
            }
        }
    }
    None
}

/// Pentagon level n of a circle-only type (6, 8, 14) at level m.
pub fn circle_level(type_id: u8, m: i64) -> Option<i64> {
    match type_id {
        6 if m == 0 => Some(0),
        8 if m >= 1 => Some(2 * m - 1),
        14 if m >= 1 => Some(2 * m),
        _ => None,
    }
}

pub fn config_type(type_id: u8, m: i64) -> ConfigType {
    if let Some(n) = circle_level(type_id, m) {
        // a point on the exceptional sphere of the first blow-up (edge e34) is blown up
        let p = pentagon_chain(n);
        let members = p.iter().enumerate().map(|(j, c)| if j == 2 { c.sub(E2) } else { *c }).collect();
        return ConfigType { type_id, m, members, extra: vec![E2] };
    }
    let (n, i) = torus_for_type(type_id, m).unwrap_or_else(|| panic!("no configuration {type_id} at m = {m}"));
    ConfigType { type_id, m, members: hexagon_chain(n, i), extra: vec![] }
}

impl ConfigType {
    pub fn all_classes(&self) -> Vec<HClass> {
        self.members.iter().chain(self.extra.iter()).copied().collect()
    }

    /// The most negative D-class among the members.
    pub fn defining_class(&self) -> (i64, HClass) {
        self.all_classes()
            .into_iter()
            .filter_map(|c| d_index(c).map(|i| (i, c)))
            .min_by_key(|(i, _)| *i)
            .expect("every configuration contains a section class")
    }

    pub fn isometry(&self) -> Isometry {
        isometry_type(self.type_id)
    }

    /// Checks the chain structure: consecutive members meet once, others not at all,
    /// every sphere has adjunction genus 0; toric chains sum to the anticanonical class.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.members.len();
        for c in self.all_classes() {
            if !adjunction_genus(c).is_zero() {
                return Err(format!("{c} is not a sphere class"));
            }
        }
        let all = self.all_classes();
        for (a, x) in all.iter().enumerate() {
            for y in all.iter().skip(a + 1) {
                if intersect(*x, *y) < 0 {
                    return Err(format!("{x} . {y} < 0"));
                }
            }
        }
        if self.extra.is_empty() {
            for a in 0..n {
                for b in a + 1..n {
                    let adjacent = b == a + 1 || (a == 0 && b == n - 1);
                    let want = if adjacent { 1 } else { 0 };
                    let got = intersect(self.members[a], self.members[b]);
                    if got != want {
                        return Err(format!("{} . {} = {got}, expected {want}", self.members[a], self.members[b]));
                    }
                }
            }
            let sum = self.members.iter().fold(HClass::new(0, 0, 0, 0), |s, c| s.add(*c));
            let anticanonical = HClass::new(2, 2, 1, 1);
            if sum != anticanonical {
                return Err(format!("chain sums to {sum}, expected the anticanonical class"));
            }
        } else {
            // E2 meets exactly one chain sphere, once
            for e in &self.extra {
                let hits: Vec<_> = self.members.iter().filter(|c| intersect(**c, *e) != 0).collect();
                if hits.len() != 1 || intersect(*hits[0], *e) != 1 {
                    return Err(format!("{e} meets {hits:?}"));
                }
            }
        }
        Ok(())
    }

    pub fn json(&self, s: Option<&Shape>) -> Value {
        let (idx, d) = self.defining_class();
        let mut v = json!({
            "type": self.type_id,
            "m": self.m,
            "isometry": self.isometry().label(),
            "defining_class": {"index": idx, "class": d.to_string()},
            "members": self.members.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "extra": self.extra.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        });
        if let Some(s) = s {
            v["areas"] = Value::Array(self.all_classes().iter().map(|c| Value::String(area(s, *c).to_string())).collect());
        }
        v
    }
}

fn family_condition(type_id: u8) -> HClass {
    match type_id {
        7..=10 => HClass::new(0, 0, 0, 0),
        11 | 12 => E2,
        13..=16 => E1,
        _ => E1.add(E2),
    }
}

/// Configurations realized on the shape, by the per-m positivity rule; any configuration
/// containing a sphere of nonpositive area is discarded (this is what removes the types
/// containing E1-E2 when c1 = c2 and F-E1-E2 when c1 + c2 = 1).
pub fn enumerate_configurations(s: &Shape) -> Vec<ConfigType> {
    let mut out = listed_configurations(s);
    out.retain(|c| c.all_classes().iter().all(|x| area(s, *x).is_positive()));
    out
}

fn listed_configurations(s: &Shape) -> Vec<ConfigType> {
    let mut out: Vec<ConfigType> = (1..=6).map(|t| config_type(t, 0)).collect();
    for m in 1.. {
        let base = B.sub(F.times(m));
        if !area(s, base).is_positive() {
            break;
        }
        for t in 7..=18u8 {
            let need = base.sub(family_condition(t));
            if area(s, need).is_positive() {
                out.push(config_type(t, m));
            }
        }
    }
    out
}

/// Rational numbers written in the basis L, V1, V2, V3: a0 L - a1 V1 - a2 V2 - a3 V3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CP2Class {
    pub a0: Rational,
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
}

pub fn is_reduced(c: &CP2Class) -> bool {
    c.a1 >= c.a2 && c.a2 >= c.a3 && !c.a3.is_negative() && c.a0 >= &c.a1 + &c.a2 + &c.a3
}

/// Normalized shape of the form with areas nu on L and d1, d2, d3 on V1, V2, V3.
pub fn cp2_to_shape(nu: &Rational, d1: &Rational, d2: &Rational, d3: &Rational) -> Result<Shape, ShapeError> {
    let den = nu - d1;
    if !den.is_positive() {
        return Err(ShapeError::Inadmissible(format!("nu - d1 = {den} must be > 0")));
    }
    Shape::new((nu - d2) / &den, (nu - d1 - d2) / &den, d3 / &den)
}

/// Integral class a0 L - a1 V1 - a2 V2 - a3 V3 under L=B+F-E1, V1=B-E1, V2=F-E1, V3=E2.
pub fn cp2_class_to_hclass(a0: i64, a1: i64, a2: i64, a3: i64) -> HClass {
    HClass::new(a0 - a1, a0 - a2, a0 - a1 - a2, a3)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(mu: (i64, i64), c1: (i64, i64), c2: (i64, i64)) -> Shape {
        Shape::from_ratios(mu, c1, c2).unwrap()
    }

    #[test]
    fn intersections() {
        let a = B.sub(E1).sub(E2);
        assert_eq!(intersect(a, a), -2);
        assert_eq!(intersect(B, F), 1);
        assert_eq!(intersect(E1, E2), 0);
        assert_eq!(intersect(E1, E1), -1);
    }

    #[test]
    fn chern_and_indices() {
        assert_eq!(chern(d_class(4)), 3);
        assert_eq!(chern(F), 2);
        assert_eq!(chern(E2), 1);
        assert_eq!((adjunction_genus(d_class(4)), k_index(d_class(4))), (int(0), int(2)));
        assert_eq!((adjunction_genus(d_class(5)), k_index(d_class(5))), (int(0), int(3)));
        assert_eq!((adjunction_genus(B), k_index(B)), (int(0), int(1)));
    }

    #[test]
    fn d_classes() {
        assert_eq!(d_class(-2), B.sub(E1).sub(E2));
        assert_eq!(d_class(1), B);
        assert_eq!(d_class(-4), B.sub(F).sub(E2));
        assert_eq!(d_class(-3), B.sub(F));
        for i in -20..20 {
            assert_eq!(d_index(d_class(i)), Some(i));
        }
    }

    #[test]
    fn areas() {
        assert_eq!(area(&s((1, 1), (3, 10), (1, 5)), E1), rat(3, 10));
        assert_eq!(area(&s((5, 2), (3, 10), (1, 5)), B.sub(F.times(2)).sub(E1).sub(E2)), int(0));
        assert_eq!(area(&s((1, 1), (3, 10), (1, 5)), F.sub(E1).sub(E2)), rat(1, 2));
    }

    #[test]
    fn p0_and_exceptional() {
        let mut p0 = p0_classes();
        p0.sort();
        let mut want = vec![F, F.sub(E1), F.sub(E2), F.sub(E1).sub(E2), E1, E2, E1.sub(E2)];
        want.sort();
        assert_eq!(p0, want);
        for c in &p0 {
            assert_eq!(adjunction_genus(*c), int(0));
        }
        let sub: Vec<_> = p0.iter().filter(|c| c.q == 1 && c.r1 == 0).copied().collect();
        assert_eq!(sub, vec![F, F.sub(E2)]);
        let mut ex = exceptional_classes();
        ex.sort();
        let mut want = vec![E2, E1, F.sub(E1), F.sub(E2), B.sub(E1), B.sub(E2)];
        want.sort();
        assert_eq!(ex, want);
        assert!(!ex.contains(&E1.sub(E2)));
    }

    #[test]
    fn strata_examples() {
        assert_eq!(strata_count(&s((5, 2), (3, 10), (1, 5))).unwrap(), 9);
        assert_eq!(strata_count(&s((1, 1), (3, 10), (1, 5))).unwrap(), 2);
        assert_eq!(strata_count(&s((2, 1), (3, 10), (1, 5))).unwrap(), 6);
        assert!(strata_count(&s((2, 1), (1, 2), (1, 2))).is_err());
        let d = enumerate_d_strata(&s((5, 2), (3, 10), (1, 5)));
        assert_eq!(d.len(), 9);
        assert_eq!(d.last().unwrap().0, 9);
        let d = enumerate_d_strata(&s((1, 1), (3, 10), (1, 5)));
        assert_eq!(d, vec![(1, B.sub(E1)), (2, B.sub(E1).sub(E2))]);
    }

    #[test]
    fn codim_examples() {
        assert_eq!(codim(1, 0, 0), 2);
        assert_eq!(codim(1, 1, 1), 6);
        assert_eq!(codim(2, 1, 0), 8);
        assert_eq!(2 - 2 * chern(B.sub(F.times(2)).sub(E1)), 8);
    }

    #[test]
    fn configurations() {
        let c = enumerate_configurations(&s((1, 1), (3, 10), (1, 5)));
        assert_eq!(c.iter().map(|x| x.type_id).collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(enumerate_configurations(&s((5, 2), (3, 10), (1, 5))).len(), 28);
        let r3 = enumerate_configurations(&s((1, 1), (1, 2), (1, 2)));
        assert_eq!(r3.iter().map(|x| x.type_id).collect::<Vec<_>>(), vec![1]);
        let r1 = enumerate_configurations(&s((1, 1), (1, 4), (1, 4)));
        assert_eq!(r1.iter().map(|x| x.type_id).collect::<Vec<_>>(), vec![1, 2, 3]);
    }

    #[test]
    fn config_chains_validate() {
        for m in 0..4 {
            for t in 1..=18u8 {
                if (m == 0) != (t <= 6) {
                    continue;
                }
                let c = config_type(t, m);
                c.validate().unwrap_or_else(|e| panic!("type {t} m {m}: {e}"));
            }
        }
    }

    #[test]
    fn defining_classes() {
        let want = [(1, -1), (2, -1), (3, -2), (4, -1), (5, -2), (6, -1)];
        for (t, i) in want {
            assert_eq!(config_type(t, 0).defining_class().0, i, "type {t}");
        }
        for m in 1..4 {
            for t in 7..=18u8 {
                let want = match t {
                    7..=10 => -4 * m + 1,
                    11 | 12 => -4 * m,
                    13..=16 => -4 * m - 1,
                    _ => -4 * m - 2,
                };
                assert_eq!(config_type(t, m).defining_class().0, want, "type {t} m {m}");
            }
        }
    }

    #[test]
    fn isometries() {
        assert_eq!(isometry_type(6), Isometry::S1);
        assert_eq!(isometry_type(1), Isometry::T2);
        assert_eq!(isometry_type(14), Isometry::S1);
        assert_eq!(isometry_type(8), Isometry::S1);
    }

    #[test]
    fn cp2_conversion() {
        let sh = cp2_to_shape(&int(3), &int(1), &int(1), &int(1)).unwrap();
        assert_eq!((sh.mu.clone(), sh.c1.clone(), sh.c2.clone()), (int(1), rat(1, 2), rat(1, 2)));
        assert_eq!(sh.boundary(), Boundary::R3);
        assert!(is_reduced(&CP2Class { a0: int(3), a1: int(1), a2: int(1), a3: int(1) }));
        assert!(!is_reduced(&CP2Class { a0: int(2), a1: int(1), a2: int(1), a3: int(1) }));
        assert_eq!(cp2_class_to_hclass(1, 0, 0, 0), B.add(F).sub(E1));
        // intersection form: L^2 = 1, V_i^2 = -1, all else 0
        let basis = [cp2_class_to_hclass(1, 0, 0, 0), cp2_class_to_hclass(0, -1, 0, 0), cp2_class_to_hclass(0, 0, -1, 0), cp2_class_to_hclass(0, 0, 0, -1)];
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let want = if i != j { 0 } else if i == 0 { 1 } else { -1 };
                assert_eq!(intersect(*x, *y), want);
            }
        }
    }

    #[test]
    fn shape_validation() {
        assert!(Shape::from_ratios((1, 2), (1, 4), (1, 8)).is_err());
        assert!(Shape::from_ratios((1, 1), (1, 4), (1, 2)).is_err());
        assert!(Shape::from_ratios((1, 1), (3, 4), (1, 2)).is_err());
        assert!(Shape::from_ratios((1, 1), (1, 4), (0, 1)).is_err());
        let sh = s((2, 1), (3, 10), (1, 5));
        assert_eq!((sh.ell, sh.lambda.clone()), (1, int(1)));
        let sh = s((1, 1), (3, 10), (1, 5));
        assert_eq!((sh.ell, sh.lambda.clone()), (0, int(1)));
    }

    #[test]
    fn d_class_closed_forms() {
        for i in -12i64..=12 {
            let d = d_class(i);
            assert_eq!(adjunction_genus(d), int(0));
            if i.rem_euclid(2) == 0 {
                assert_eq!(2 * d.square(), i - 2);
                assert_eq!(2 * chern(d), i + 2);
            } else {
                assert_eq!(2 * d.square(), i - 1);
                assert_eq!(2 * chern(d), i + 3);
            }
        }
    }

    #[test]
    fn codim_matches_chern() {
        for l in 1..=5 {
            for r1 in 0..=1 {
                for r2 in 0..=1 {
                    let a = B.sub(F.times(l)).add(E1.times(r1)).add(E2.times(r2));
                    let a = HClass::new(a.p, a.q, r1, r2);
                    assert_eq!(codim(l, r1, r2), 2 - 2 * chern(a));
                }
            }
        }
    }

    use proptest::prelude::*;

    fn generic_shape() -> impl Strategy<Value = Shape> {
        (1i64..400, 1i64..50, 1i64..50, 1i64..100).prop_filter_map("generic", |(m, a, b, d)| {
            let mu = int(1) + rat(m, 37);
            let c2 = rat(b, d + b + 60);
            let c1 = &c2 + rat(a, 200);
            let sh = Shape::new(mu, c1, c2).ok()?;
            sh.is_generic().then_some(sh)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn d_strata_count_matches(sh in generic_shape()) {
            let d = enumerate_d_strata(&sh);
            prop_assert_eq!(d.len() as i64, strata_count(&sh).unwrap());
            for (_, c) in &d {
                prop_assert!(c.square() < 0);
            }
        }

        #[test]
        fn configurations_group_by_strata(sh in generic_shape()) {
            let configs = enumerate_configurations(&sh);
            prop_assert_eq!(configs.len(), listed_configurations(&sh).len());
            let mut from_configs: Vec<i64> = configs.iter().map(|c| -c.defining_class().0).collect();
            from_configs.sort();
            from_configs.dedup();
            let strata: Vec<i64> = enumerate_d_strata(&sh).iter().map(|(m, _)| *m).collect();
            prop_assert_eq!(from_configs, strata);
        }
    }
}
