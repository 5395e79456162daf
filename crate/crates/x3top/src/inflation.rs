//! Area bookkeeping for inflation along J-holomorphic curves, and the inflation tables
//! interpreted as data.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::homology::{d_class, exceptional_classes, intersect, HClass, Shape, B, E1, E2, F};
use crate::rational::{self, int, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InflationError {
    #[error("parse error in {expr:?}: {msg}")]
    Parse { expr: String, msg: String },
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("division by zero in {0}")]
    DivisionByZero(String),
    #[error("expression {0} depends on b")]
    NotConstant(String),
    #[error("negative inflation parameter {0}")]
    NegativeParameter(String),
    #[error("Buse bound violated on {class}: t*{m} = {lhs} is not < area {area}")]
    Buse { class: String, m: i64, lhs: String, area: String },
    #[error("form not admissible: area of {class} is {area}")]
    NotAdmissible { class: String, area: String },
    #[error("no table {table} column {column}")]
    NoSuchColumn { table: u8, column: u8 },
    #[error("shape outside the column header: {0} fails")]
    OutOfRange(String),
    #[error("b = {b} outside the allowed range: {reason}")]
    BadB { b: String, reason: String },
    #[error("no shape satisfying the header of table {table} column {column} was found")]
    NoSample { table: u8, column: u8 },
}

// ---------------------------------------------------------------- univariate rational functions

/// Polynomial in b, coefficients low to high, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly(Vec<Rational>);

impl Poly {
    fn trim(mut v: Vec<Rational>) -> Self {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Poly(v)
    }

    pub fn constant(c: Rational) -> Self {
        Self::trim(vec![c])
    }

    pub fn b() -> Self {
        Poly(vec![Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let z = Rational::zero();
        Self::trim((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> Self {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::default();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, c) in o.0.iter().enumerate() {
                out[i + j] += a * c;
            }
        }
        Self::trim(out)
    }

    fn scale(&self, c: &Rational) -> Self {
        Self::trim(self.0.iter().map(|x| x * c).collect())
    }

    fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.lead();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lc;
            for (i, x) in d.0.iter().enumerate() {
                r[k + i] -= &c * x;
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self::trim(q), Self::trim(r))
    }

    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lc = a.lead();
        a.scale(&lc.recip())
    }

    pub fn eval(&self, b: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * b + c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let sep = if first { "" } else { " " };
            let mag = c.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => rational::fmt_rational(&mag),
                (_, true) => "b".to_string(),
                (_, false) => format!("{}*b", rational::fmt_rational(&mag)),
            };
            let pow = if i > 1 { format!("^{i}") } else { String::new() };
            if first {
                write!(f, "{sign}{body}{pow}")?;
            } else {
                write!(f, "{sep}{sign} {body}{pow}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Rational function of b, reduced with a monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// Behaviour as b grows without bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Limit {
    Finite(Rational),
    Infinite,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Finite(r) => f.write_str(&rational::fmt_rational(r)),
            Limit::Infinite => f.write_str("infinity"),
        }
    }
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFun::constant(Rational::zero()));
        }
        if den.degree() == Some(0) {
            let lc = den.lead().recip();
            return Some(RatFun { num: num.scale(&lc), den: Poly::constant(Rational::one()) });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().unwrap_or(0) > 0 { (num.divrem(&g).0, den.divrem(&g).0) } else { (num, den) };
        let lc = den.lead().recip();
        Some(RatFun { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn constant(c: Rational) -> Self {
        RatFun { num: Poly::constant(c), den: Poly::constant(Rational::one()) }
    }

    pub fn b() -> Self {
        RatFun { num: Poly::b(), den: Poly::constant(Rational::one()) }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(self.num.lead() / self.den.lead()),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        RatFun::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).unwrap()
    }

    pub fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFun::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        RatFun::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul(&RatFun::constant(c.clone()))
    }

    /// Value at b; `None` at a pole.
    pub fn eval(&self, b: &Rational) -> Option<Rational> {
        let d = self.den.eval(b);
        (!d.is_zero()).then(|| self.num.eval(b) / d)
    }

    pub fn limit(&self) -> Limit {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Limit::Finite(Rational::zero()),
            (Some(n), Some(d)) if n < d => Limit::Finite(Rational::zero()),
            (Some(n), Some(d)) if n == d => Limit::Finite(self.num.lead() / self.den.lead()),
            _ => Limit::Infinite,
        }
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.lead().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

// ---------------------------------------------------------------- expressions

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| format!("bad number {t}"))?));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, String> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, String> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, String> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(int(n)))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err("missing )".into());
                }
                Ok(e)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

impl FromStr for Expr {
    type Err = InflationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: String| InflationError::Parse { expr: s.to_string(), msg };
        let toks = tokenize(s).map_err(err)?;
        let mut p = Parser { toks, pos: 0 };
        let e = p.expr().map_err(err)?;
        if p.pos != p.toks.len() {
            return Err(err("trailing input".into()));
        }
        Ok(e)
    }
}

impl Expr {
    pub fn eval(&self, env: &dyn Fn(&str) -> Option<RatFun>) -> Result<RatFun, InflationError> {
        Ok(match self {
            Expr::Num(r) => RatFun::constant(r.clone()),
            Expr::Var(v) => env(v).ok_or_else(|| InflationError::UnknownVariable(v.clone()))?,
            Expr::Neg(a) => a.eval(env)?.neg(),
            Expr::Add(a, b) => a.eval(env)?.add(&b.eval(env)?),
            Expr::Sub(a, b) => a.eval(env)?.sub(&b.eval(env)?),
            Expr::Mul(a, b) => a.eval(env)?.mul(&b.eval(env)?),
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                a.eval(env)?.div(&d).ok_or_else(|| InflationError::DivisionByZero(format!("{b:?}")))?
            }
        })
    }
}

fn parse(s: &str) -> Expr {
    s.parse().unwrap_or_else(|e| panic!("table data: {e}"))
}

/// Environment with the shape constants and b free.
fn shape_env(s: &Shape) -> impl Fn(&str) -> Option<RatFun> + '_ {
    move |v| match v {
        "mu" => Some(RatFun::constant(s.mu.clone())),
        "c1" => Some(RatFun::constant(s.c1.clone())),
        "c2" => Some(RatFun::constant(s.c2.clone())),
        "ell" => Some(RatFun::constant(int(s.ell))),
        "lambda" => Some(RatFun::constant(s.lambda.clone())),
        "b" => Some(RatFun::b()),
        _ => None,
    }
}

/// Evaluates a b-free expression at a shape.
pub fn eval_at_shape(src: &str, s: &Shape) -> Result<Rational, InflationError> {
    let e: Expr = src.parse()?;
    e.eval(&shape_env(s))?.as_constant().ok_or_else(|| InflationError::NotConstant(src.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
}

/// Inequality between two b-free expressions, e.g. `lambda <= c1 + c2`.
pub fn check_condition(src: &str, s: &Shape) -> Result<bool, InflationError> {
    let (cmp, op) = [("<=", Cmp::Le), (">=", Cmp::Ge), ("<", Cmp::Lt), (">", Cmp::Gt)]
        .into_iter()
        .find(|(op, _)| src.contains(op))
        .map(|(op, c)| (c, op))
        .ok_or_else(|| InflationError::Parse { expr: src.into(), msg: "no comparison".into() })?;
    let (l, r) = src.split_once(op).unwrap();
    let (l, r) = (eval_at_shape(l, s)?, eval_at_shape(r, s)?);
    Ok(match cmp {
        Cmp::Lt => l < r,
        Cmp::Le => l <= r,
        Cmp::Gt => l > r,
        Cmp::Ge => l >= r,
    })
}

// ---------------------------------------------------------------- forms and inflation

/// Areas of B, F, E1, E2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormClass {
    pub b: Rational,
    pub f: Rational,
    pub e1: Rational,
    pub e2: Rational,
}

impl FormClass {
    pub fn new(b: Rational, f: Rational, e1: Rational, e2: Rational) -> Self {
        FormClass { b, f, e1, e2 }
    }

    pub fn of_shape(s: &Shape) -> Self {
        FormClass::new(s.mu.clone(), int(1), s.c1.clone(), s.c2.clone())
    }

    pub fn area(&self, z: HClass) -> Rational {
        &self.b * int(z.p) + &self.f * int(z.q) - &self.e1 * int(z.r1) - &self.e2 * int(z.r2)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FormClass::new(&self.b * c, &self.f * c, &self.e1 * c, &self.e2 * c)
    }

    /// First class in F, B and the exceptional classes with nonpositive area.
    pub fn admissibility_failure(&self) -> Option<(HClass, Rational)> {
        std::iter::once(F)
            .chain(std::iter::once(B))
            .chain(exceptional_classes())
            .map(|z| (z, self.area(z)))
            .find(|(_, a)| !a.is_positive())
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility_failure().is_none()
    }

    pub fn json(&self) -> Value {
        json!({
            "B": rational::json(&self.b),
            "F": rational::json(&self.f),
            "E1": rational::json(&self.e1),
            "E2": rational::json(&self.e2),
        })
    }
}

/// [w] + t PD(z): every area w(X) moves by t (z.X). Negative curves obey t m < w(z).
pub fn inflate(f: &FormClass, z: HClass, t: &Rational) -> Result<FormClass, InflationError> {
    if t.is_negative() {
        return Err(InflationError::NegativeParameter(rational::fmt_rational(t)));
    }
    let m = -z.square();
    if m > 0 {
        let lhs = t * int(m);
        let area = f.area(z);
        if lhs >= area {
            return Err(InflationError::Buse {
                class: z.to_string(),
                m,
                lhs: rational::fmt_rational(&lhs),
                area: rational::fmt_rational(&area),
            });
        }
    }
    let step = |x: HClass| t * int(intersect(z, x));
    let out = FormClass::new(&f.b + step(B), &f.f + step(F), &f.e1 + step(E1), &f.e2 + step(E2));
    if let Some((c, a)) = out.admissibility_failure() {
        return Err(InflationError::NotAdmissible { class: c.to_string(), area: rational::fmt_rational(&a) });
    }
    Ok(out)
}

// ---------------------------------------------------------------- tables as data

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curve {
    /// D_{4 ell + offset}
    D(i64),
    Class(HClass),
}

impl Curve {
    pub fn class(self, ell: i64) -> HClass {
        match self {
            Curve::D(off) => d_class(4 * ell + off),
            Curve::Class(c) => c,
        }
    }

    pub fn label(self) -> String {
        match self {
            Curve::D(0) => "D_{4l}".into(),
            Curve::D(o) if o > 0 => format!("D_{{4l+{o}}}"),
            Curve::D(o) => format!("D_{{4l{o}}}"),
            Curve::Class(c) => c.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    B,
    E1,
    E2,
}

impl Target {
    pub fn label(self) -> &'static str {
        match self {
            Target::B => "B",
            Target::E1 => "E1",
            Target::E2 => "E2",
        }
    }
}

/// Upper bound b < bound, active when `when` holds (or always).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cap {
    pub when: Option<&'static str>,
    pub bound: &'static str,
    /// Value of the target area as b approaches the bound.
    pub endpoint: &'static str,
    /// Whether the table text states the bound.
    pub stated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    pub table: u8,
    pub column: u8,
    pub configurations: [u8; 2],
    pub conditions: &'static [&'static str],
    pub curves: &'static [(Curve, char)],
    pub denominator: &'static str,
    pub negative: Option<HClass>,
    pub a: Option<&'static str>,
    pub a_corrected: Option<&'static str>,
    pub e: &'static str,
    pub target: Target,
    pub printed: &'static str,
    pub corrected: Option<&'static str>,
    pub cap: Option<Cap>,
    /// Limit of the target area as b grows, when no cap is active.
    pub endpoint: &'static str,
}

const E1_E2: HClass = HClass::new(0, 0, -1, 1);
const F_E1_E2: HClass = HClass::new(0, 1, 1, 1);
const F_E1: HClass = HClass::new(0, 1, 1, 0);
const FC: Curve = Curve::Class(F);

const RA: &[&str] = &["lambda <= c2"];
const RB: &[&str] = &["c2 < lambda", "lambda <= c1"];
const RC: &[&str] = &["c1 < lambda", "lambda <= c1 + c2"];
const RD: &[&str] = &["c1 + c2 < lambda"];

const fn col(table: u8, column: u8, configurations: [u8; 2], conditions: &'static [&'static str]) -> Column {
    Column {
        table,
        column,
        configurations,
        conditions,
        curves: &[],
        denominator: "",
        negative: None,
        a: None,
        a_corrected: None,
        e: "",
        target: Target::B,
        printed: "",
        corrected: None,
        cap: None,
        endpoint: "",
    }
}

pub const COLUMNS: &[Column] = &[
    Column {
        curves: &[(Curve::D(-1), 'e'), (Curve::D(1), 'b')],
        denominator: "1 + b + e",
        negative: Some(E1_E2),
        a: Some("c2*b/(1 - c1 - c2 + b)"),
        e: "(c1 + c2)*b/(1 - c1 - c2)",
        target: Target::B,
        printed: "(mu*(1 - c1 - c2) + b*ell)/(1 - c1 - c2 + b)",
        endpoint: "ell",
        ..col(3, 1, [7, 9], RA)
    },
    Column {
        curves: &[(Curve::D(3), 'e'), (Curve::D(1), 'b')],
        denominator: "1 + b + e",
        negative: Some(F_E1_E2),
        a: Some("c2*b/(1 - c1 + c2 + b)"),
        e: "(c1 - c2)*b/(1 - c1 + c2)",
        target: Target::B,
        printed: "(mu*(1 - c1 + c2) + b*(ell + c1))/(1 - c1 + c2 + b)",
        endpoint: "ell + c1",
        ..col(3, 2, [13, 15], RC)
    },
    Column {
        curves: &[(Curve::D(0), 'a'), (Curve::D(1), 'b'), (Curve::D(-1), 'e')],
        denominator: "1 + a + b + e",
        a: Some("c2*b/(1 - c1 - c2)"),
        e: "c1*b/(1 - c1 - c2)",
        target: Target::B,
        printed: "(mu*(1 - c1 - c2) + b*ell)/(1 - c1 - c2 + b)",
        endpoint: "ell",
        ..col(4, 1, [8, 10], RA)
    },
    Column {
        curves: &[(Curve::D(4), 'a'), (Curve::D(1), 'b'), (Curve::D(-1), 'e')],
        denominator: "1 + a + b + e",
        a: Some("c2*b/(1 - c1 - c2)"),
        e: "c1*b/(1 - c1 - c2)",
        target: Target::B,
        printed: "(mu*(1 - c1 - c2) + b*(ell + c2))/(1 - c1 + c2 + b)",
        corrected: Some("(mu*(1 - c1 - c2) + b*(ell + c2))/(1 - c1 - c2 + b)"),
        endpoint: "ell + c2",
        ..col(4, 2, [11, 12], RB)
    },
    Column {
        curves: &[(Curve::D(2), 'a'), (Curve::D(1), 'b'), (Curve::D(3), 'e')],
        denominator: "1 + a + b + e",
        a: Some("c2*b/(1 - c1)"),
        e: "(c1 - c2)*b/(1 - c1)",
        target: Target::B,
        printed: "(mu*(1 - c1) + b*(ell + c1))/(1 - c1 + b)",
        endpoint: "ell + c1",
        ..col(5, 1, [14, 16], RC)
    },
    Column {
        curves: &[(Curve::D(6), 'a'), (Curve::D(1), 'b'), (Curve::D(3), 'e')],
        denominator: "1 + a + b + e",
        a: Some("c2*b/(1 - c1)"),
        e: "(c1 - c2)*b/(1 - c1)",
        target: Target::B,
        printed: "(mu*(1 - c1) + b*(ell + c1 + c2))/(1 - c1 + b)",
        endpoint: "ell + c1 + c2",
        ..col(5, 2, [17, 18], RD)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(1), 'b')],
        denominator: "1 + b",
        negative: Some(E1_E2),
        a: Some("c2*b/(1 + b)"),
        e: "lambda*b",
        target: Target::E1,
        printed: "(c1 - c2*b)/(1 + b)",
        cap: Some(Cap { when: None, bound: "(c1 - c2)/(2*c2)", endpoint: "c2", stated: true }),
        endpoint: "-c2",
        ..col(6, 1, [7, 9], RA)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(1), 'b')],
        denominator: "1 + b",
        negative: Some(F_E1_E2),
        a: Some("c2*b/(1 + b)"),
        e: "(lambda - c2)*b",
        target: Target::E1,
        printed: "(c1 + c2*b)/(1 + b)",
        endpoint: "c2",
        ..col(6, 2, [13, 15], RC)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(0), 'a'), (Curve::D(1), 'b')],
        denominator: "1 + a + b",
        a: Some("c2*b/(1 - c2)"),
        e: "lambda*b/(1 - c2)",
        target: Target::E1,
        printed: "c1*(1 - c2)/(1 - c2 + b)",
        endpoint: "0",
        ..col(7, 1, [8, 10], RA)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(1), 'b'), (Curve::D(4), 'a')],
        denominator: "1 + a + b",
        a: Some("c2*b/(1 - c2)"),
        e: "(lambda - c2)*b/(1 - c2)",
        target: Target::E1,
        printed: "c1*(1 - c2)/(1 - c2 + (lambda - c2)*b)",
        corrected: Some("c1*(1 - c2)/(1 - c2 + b)"),
        endpoint: "0",
        ..col(7, 2, [11, 12], RB)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(1), 'b'), (Curve::D(2), 'a')],
        denominator: "1 + a + b",
        a: Some("c2*b/(1 - c2)"),
        e: "(lambda - c2)*b/(1 - c2)",
        target: Target::E1,
        printed: "(c1*(1 - c2) + c2*b)/(1 - c2 + b)",
        endpoint: "c2",
        ..col(8, 1, [14, 16], RC)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(1), 'b'), (Curve::D(6), 'a')],
        denominator: "1 + a + b",
        a: Some("c2*b/(1 - c2)"),
        e: "(lambda - 2*c2)*b/(1 - c2)",
        target: Target::E1,
        printed: "(c1*(1 - c2) + c2*b)/(1 - c2 + b)",
        endpoint: "c2",
        ..col(8, 2, [17, 18], RD)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(-1), 'b')],
        denominator: "1 + b",
        negative: Some(E1_E2),
        a: Some("c2*b/(1 + b)"),
        e: "lambda*b",
        target: Target::E1,
        printed: "(c1 + (1 - c2)*b)/(1 + b)",
        endpoint: "1 - c2",
        ..col(9, 1, [7, 9], RA)
    },
    Column {
        curves: &[(Curve::D(3), 'b'), (Curve::D(1), 'e')],
        denominator: "1 + b + e",
        negative: Some(F_E1_E2),
        a: Some("c2*b/(lambda - c2 + b)"),
        e: "(1 - lambda + c2)*b/(lambda - c2)",
        target: Target::E1,
        printed: "(c1*(lambda - c2) + lambda*b)/(lambda - c2 + b)",
        cap: Some(Cap {
            when: Some("lambda + c2 > 1"),
            bound: "(lambda - c2)*(1 - c1 - c2)/(lambda + c2 - 1)",
            endpoint: "1 - c2",
            stated: false,
        }),
        endpoint: "lambda",
        ..col(9, 2, [13, 15], RC)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(0), 'a'), (Curve::D(-1), 'b')],
        denominator: "1 + a + b",
        a: Some("c2*b/(1 - c2)"),
        e: "lambda*b/(1 - c2)",
        target: Target::E1,
        printed: "(c1*(1 - c2) + (1 - c2)*b)/(1 - c2 + b)",
        endpoint: "1 - c2",
        ..col(10, 1, [8, 10], RA)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(-1), 'b'), (Curve::D(4), 'a')],
        denominator: "1 + a + b",
        a: Some("c2*b/(1 - c2)"),
        e: "(lambda - c2)*b/(1 - c2)",
        target: Target::E1,
        printed: "(c1*(1 - c2) + (1 - c2)*b)/(1 - c2 + b)",
        endpoint: "1 - c2",
        ..col(10, 2, [11, 12], RB)
    },
    Column {
        curves: &[(Curve::D(1), 'e'), (Curve::D(2), 'a'), (Curve::D(3), 'b')],
        denominator: "1 + a + b + e",
        a: Some("c2*b/(lambda - c2)"),
        e: "(1 - lambda)*b/(lambda - c2)",
        target: Target::E1,
        printed: "(c1*(lambda - c2) + lambda*b)/(lambda - c2 + b)",
        endpoint: "lambda",
        ..col(11, 1, [14, 16], RC)
    },
    Column {
        curves: &[(Curve::D(1), 'e'), (Curve::D(3), 'b'), (Curve::D(6), 'a')],
        denominator: "1 + a + b + e",
        a: Some("c2*b/(lambda - 2*c2)"),
        e: "(1 - lambda + c2)*b/(lambda - 2*c2)",
        target: Target::E1,
        printed: "(c1*(lambda - 2*c2) + (lambda - c2)*b)/(lambda - 2*c2 + b)",
        endpoint: "lambda - c2",
        ..col(11, 2, [17, 18], RD)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(-1), 'b')],
        denominator: "1 + b",
        negative: Some(E1_E2),
        a: Some("(1 - c1)*b/(1 + b)"),
        e: "lambda*b",
        target: Target::E2,
        printed: "(c2 + (1 - c1)*b)/(1 + b)",
        cap: Some(Cap { when: Some("c1 < 1/2"), bound: "(c1 - c2)/(1 - 2*c1)", endpoint: "c1", stated: true }),
        endpoint: "1 - c1",
        ..col(12, 1, [7, 9], RA)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(1), 'b')],
        denominator: "1 + b",
        negative: Some(F_E1_E2),
        a: Some("c1*b/(1 + b)"),
        e: "(lambda - c1)*b",
        target: Target::E2,
        printed: "(c2 + c1*b)/(1 + b)",
        cap: Some(Cap { when: Some("c1 > 1/2"), bound: "(1 - c1 - c2)/(2*c1 - 1)", endpoint: "1 - c1", stated: true }),
        endpoint: "c1",
        ..col(12, 2, [13, 15], RC)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(-1), 'b'), (Curve::D(0), 'a')],
        denominator: "1 + a + b",
        a: Some("(1 - c1)*b/c1"),
        e: "lambda*b/c1",
        target: Target::E2,
        printed: "(c2*c1 + (1 - c1)*b)/(c1 + b)",
        endpoint: "1 - c1",
        ..col(13, 1, [8, 10], RA)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(1), 'b'), (Curve::D(2), 'a')],
        denominator: "1 + a + b",
        a: Some("c1*b/(lambda - c1)"),
        a_corrected: Some("c1*b/(1 - c1)"),
        e: "(lambda - c1)*b/(1 - c1)",
        target: Target::E2,
        printed: "(c2*(1 - c1) + c1*b)/(1 - c1 + b)",
        endpoint: "c1",
        ..col(13, 2, [14, 16], RC)
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(-1), 'b'), (Curve::D(4), 'a')],
        denominator: "1 + a + b",
        a: Some("(1 - c1)*b/c1"),
        e: "(lambda - 1 + c1)*b/c1",
        target: Target::E2,
        printed: "(c2*c1 + (1 - c1)*b)/(c1 + b)",
        endpoint: "1 - c1",
        ..col(14, 1, [11, 12], &["c2 < lambda", "lambda <= c1", "lambda >= 1 - c1"])
    },
    Column {
        curves: &[(Curve::D(1), 'e'), (Curve::D(-1), 'b'), (Curve::D(4), 'a')],
        denominator: "1 + a + b + e",
        a: Some("lambda*b/c1"),
        e: "(1 - lambda - c1)*b/c1",
        target: Target::E2,
        printed: "(c2*c1 + lambda*b)/(c1 + b)",
        endpoint: "lambda",
        ..col(14, 2, [11, 12], &["c2 < lambda", "lambda <= c1", "lambda < 1 - c1"])
    },
    Column {
        curves: &[(Curve::Class(F_E1), 'e'), (Curve::D(1), 'b'), (Curve::D(6), 'a')],
        denominator: "1 + a + b",
        a: Some("(lambda - c1)*b/(1 - lambda + c1)"),
        e: "(2*c1 - lambda)*b/(1 - lambda + c1)",
        target: Target::E2,
        printed: "(c2*(1 - lambda + c1) + (lambda - c1)*b)/(1 - lambda + c1 + b)",
        endpoint: "lambda - c1",
        ..col(15, 1, [17, 18], &["c1 + c2 < lambda", "lambda <= 2*c1"])
    },
    Column {
        curves: &[(FC, 'e'), (Curve::D(1), 'b'), (Curve::D(6), 'a')],
        denominator: "1 + a + b",
        a: Some("c1*b/(1 - c1)"),
        e: "(lambda - 2*c1)*b/(1 - c1)",
        target: Target::E2,
        printed: "(c2*(1 - c1) + c1*b)/(1 - c1 + b)",
        endpoint: "c1",
        ..col(15, 2, [17, 18], &["c1 + c2 < lambda", "lambda > 2*c1"])
    },
];

pub fn column(table: u8, column: u8) -> Result<&'static Column, InflationError> {
    COLUMNS
        .iter()
        .find(|c| c.table == table && c.column == column)
        .ok_or(InflationError::NoSuchColumn { table, column })
}

/// Structural problems in the table data; empty when consistent.
pub fn validate_schema() -> Vec<String> {
    let mut out = Vec::new();
    for c in COLUMNS {
        let id = format!("table {} column {}", c.table, c.column);
        let uses_a = c.curves.iter().any(|(_, p)| *p == 'a') || c.negative.is_some();
        if uses_a != c.a.is_some() {
            out.push(format!("{id}: parameter a declared iff used"));
        }
        if c.curves.iter().any(|(_, p)| !"abe".contains(*p)) {
            out.push(format!("{id}: unknown parameter"));
        }
        if !c.curves.iter().any(|(_, p)| *p == 'b') {
            out.push(format!("{id}: no curve carries b"));
        }
        for src in [Some(c.denominator), c.a, c.a_corrected, Some(c.e), Some(c.printed), c.corrected, Some(c.endpoint)]
            .into_iter()
            .flatten()
            .chain(c.conditions.iter().flat_map(|s| s.split(['<', '>', '='])).filter(|s| !s.trim().is_empty()))
        {
            if let Err(e) = src.parse::<Expr>() {
                out.push(format!("{id}: {e}"));
            }
        }
        // the printed normalisation must be the F-area
        let denom_terms: Vec<char> = c.curves.iter().filter(|(z, _)| intersect(z.class(1), F) != 0).map(|(_, p)| *p).collect();
        let mut expect: Vec<char> = denom_terms.clone();
        expect.sort();
        let mut got: Vec<char> = c.denominator.chars().filter(|ch| "abe".contains(*ch)).collect();
        got.sort();
        if expect != got {
            out.push(format!("{id}: denominator {} is not the F-area", c.denominator));
        }
        if c.conditions.is_empty() {
            out.push(format!("{id}: no header conditions"));
        }
    }
    out
}

// ---------------------------------------------------------------- execution

fn target_area(f: &[RatFun; 4], t: Target) -> &RatFun {
    match t {
        Target::B => &f[0],
        Target::E1 => &f[2],
        Target::E2 => &f[3],
    }
}

/// Areas (B, F, E1, E2) as functions of b after running the column's script.
pub fn symbolic_areas(c: &Column, s: &Shape, corrected: bool) -> Result<[RatFun; 4], InflationError> {
    let env = shape_env(s);
    let a_src = if corrected { c.a_corrected.or(c.a) } else { c.a };
    let a = a_src.map(|x| parse(x).eval(&env)).transpose()?;
    let e = parse(c.e).eval(&env)?;
    let param = |p: char| match p {
        'a' => a.clone().expect("a declared"),
        'e' => e.clone(),
        _ => RatFun::b(),
    };
    let full = |v: &str| match v {
        "a" => a.clone(),
        "e" => Some(e.clone()),
        _ => env(v),
    };
    let mut areas = [
        RatFun::constant(s.mu.clone()),
        RatFun::constant(int(1)),
        RatFun::constant(s.c1.clone()),
        RatFun::constant(s.c2.clone()),
    ];
    let basis = [B, F, E1, E2];
    for (curve, p) in c.curves {
        let z = curve.class(s.ell);
        for (x, area) in basis.iter().zip(areas.iter_mut()) {
            *area = area.add(&param(*p).scale(&int(intersect(z, *x))));
        }
    }
    let den = parse(c.denominator).eval(&full)?;
    for area in areas.iter_mut() {
        *area = area.div(&den).ok_or_else(|| InflationError::DivisionByZero(c.denominator.into()))?;
    }
    if let Some(n) = c.negative {
        let a = a.expect("a declared");
        for (x, area) in basis.iter().zip(areas.iter_mut()) {
            *area = area.add(&a.scale(&int(intersect(n, *x))));
        }
    }
    Ok(areas)
}

fn shape_areas(s: &Shape) -> [Rational; 4] {
    [s.mu.clone(), int(1), s.c1.clone(), s.c2.clone()]
}

/// Whether the executed script reproduces `expected` on the target and leaves the rest fixed.
fn script_matches(c: &Column, s: &Shape, corrected: bool, expected: &str) -> Result<bool, InflationError> {
    let areas = symbolic_areas(c, s, corrected)?;
    let want = parse(expected).eval(&shape_env(s))?;
    let fixed = shape_areas(s);
    let idx = match c.target {
        Target::B => 0,
        Target::E1 => 2,
        Target::E2 => 3,
    };
    Ok(areas.iter().enumerate().all(|(i, a)| {
        if i == idx {
            a == &want
        } else {
            a.as_constant().as_ref() == Some(&fixed[i])
        }
    }))
}

pub fn header_violation(c: &Column, s: &Shape) -> Result<Option<&'static str>, InflationError> {
    if !s.is_generic() {
        return Ok(Some("generic shape"));
    }
    for cond in c.conditions {
        if !check_condition(cond, s)? {
            return Ok(Some(cond));
        }
    }
    Ok(None)
}

/// The active cap for this shape, as (bound, endpoint).
pub fn active_cap(c: &Column, s: &Shape) -> Result<Option<(Rational, &'static str)>, InflationError> {
    match c.cap {
        Some(cap) => {
            let on = match cap.when {
                Some(w) => check_condition(w, s)?,
                None => true,
            };
            if on {
                Ok(Some((eval_at_shape(cap.bound, s)?, cap.endpoint)))
            } else {
                Ok(None)
            }
        }
        None => Ok(None),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub label: String,
    pub areas: FormClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BuseCheck {
    pub class: HClass,
    pub t: Rational,
    pub area: Rational,
    pub margin: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableReport {
    pub table: u8,
    pub column: u8,
    pub shape: Shape,
    pub b: Rational,
    pub a: Option<Rational>,
    pub e: Rational,
    pub steps: Vec<Step>,
    pub final_areas: FormClass,
    pub f_normalized: bool,
    pub buse: Option<BuseCheck>,
    pub target: Target,
    pub printed_value: Rational,
    pub executed_value: Rational,
    /// Script with the printed inputs reproduces the printed final areas.
    pub matches_printed: bool,
    /// Script with the emended inputs reproduces the emended final areas.
    pub matches_corrected: bool,
    pub header_ok: bool,
}

impl TableReport {
    pub fn json(&self) -> Value {
        let r = rational::json;
        json!({
            "table": self.table,
            "column": self.column,
            "shape": self.shape.json(),
            "b": r(&self.b),
            "a": self.a.as_ref().map(r),
            "e": r(&self.e),
            "steps": self.steps.iter().map(|s| json!({"step": s.label, "areas": s.areas.json()})).collect::<Vec<_>>(),
            "final": self.final_areas.json(),
            "f_normalized": self.f_normalized,
            "buse": self.buse.as_ref().map(|b| json!({
                "class": b.class.to_string(), "t": r(&b.t), "area": r(&b.area), "margin": r(&b.margin),
            })),
            "target": self.target.label(),
            "printed_value": r(&self.printed_value),
            "executed_value": r(&self.executed_value),
            "matches_printed": self.matches_printed,
            "matches_corrected": self.matches_corrected,
            "header_ok": self.header_ok,
        })
    }
}

fn value_at(src: &str, s: &Shape, env_extra: &[(&str, &Rational)], b: &Rational) -> Result<Rational, InflationError> {
    let env = shape_env(s);
    let full = |v: &str| {
        env_extra.iter().find(|(n, _)| *n == v).map(|(_, x)| RatFun::constant((*x).clone())).or_else(|| env(v))
    };
    parse(src)
        .eval(&full)?
        .eval(b)
        .ok_or_else(|| InflationError::DivisionByZero(src.to_string()))
}

/// Runs one table column at (s, b), checking the header and the b-range.
pub fn run_table(table: u8, col: u8, s: &Shape, b: &Rational) -> Result<TableReport, InflationError> {
    let c = column(table, col)?;
    if let Some(v) = header_violation(c, s)? {
        return Err(InflationError::OutOfRange(v.to_string()));
    }
    run_column(c, s, b)
}

/// As [`run_table`] without the header check.
pub fn run_table_unchecked(table: u8, col: u8, s: &Shape, b: &Rational) -> Result<TableReport, InflationError> {
    run_column(column(table, col)?, s, b)
}

fn run_column(c: &Column, s: &Shape, b: &Rational) -> Result<TableReport, InflationError> {
    if b.is_negative() {
        return Err(InflationError::BadB { b: rational::fmt_rational(b), reason: "b must be >= 0".into() });
    }
    if let Some((bound, _)) = active_cap(c, s)? {
        if b >= &bound {
            return Err(InflationError::BadB {
                b: rational::fmt_rational(b),
                reason: format!("b < {}", rational::fmt_rational(&bound)),
            });
        }
    }
    let a_src = c.a_corrected.or(c.a);
    let a = a_src.map(|x| value_at(x, s, &[], b)).transpose()?;
    let e = value_at(c.e, s, &[], b)?;
    let mut form = FormClass::of_shape(s);
    let mut steps = vec![Step { label: "start".into(), areas: form.clone() }];
    // exceptional curves go last, after the other steps have enlarged them
    let mut order: Vec<&(Curve, char)> = c.curves.iter().collect();
    order.sort_by_key(|(z, _)| -z.class(s.ell).square().min(0));
    for (curve, p) in order {
        let t = match p {
            'a' => a.clone().expect("a declared"),
            'e' => e.clone(),
            _ => b.clone(),
        };
        form = inflate(&form, curve.class(s.ell), &t)?;
        steps.push(Step { label: format!("{p} {}", curve.label()), areas: form.clone() });
    }
    let zero = Rational::zero();
    let den = value_at(c.denominator, s, &[("a", a.as_ref().unwrap_or(&zero)), ("e", &e)], b)?;
    form = form.scale(&den.recip());
    steps.push(Step { label: format!("/ ({})", c.denominator), areas: form.clone() });
    let f_normalized = form.f.is_one();
    let mut buse = None;
    if let Some(n) = c.negative {
        let t = a.clone().expect("a declared");
        let area = form.area(n);
        let margin = &area - &t * int(-n.square());
        buse = Some(BuseCheck { class: n, t: t.clone(), area, margin });
        form = inflate(&form, n, &t)?;
        steps.push(Step { label: format!("a PD({n})"), areas: form.clone() });
    }
    let printed_value = value_at(c.printed, s, &[], b)?;
    let executed_value = match c.target {
        Target::B => form.b.clone(),
        Target::E1 => form.e1.clone(),
        Target::E2 => form.e2.clone(),
    };
    let at_b = |expected: &str| -> Result<bool, InflationError> {
        let want = value_at(expected, s, &[], b)?;
        Ok(want == executed_value)
    };
    let corrected_src = c.corrected.unwrap_or(c.printed);
    let matches_corrected = script_matches(c, s, true, corrected_src)? && at_b(corrected_src)?;
    let emended = c.a_corrected.is_some() || c.corrected.is_some();
    let matches_printed = if emended { script_matches(c, s, false, c.printed)? } else { matches_corrected };
    Ok(TableReport {
        table: c.table,
        column: c.column,
        shape: s.clone(),
        b: b.clone(),
        a,
        e,
        steps,
        final_areas: form,
        f_normalized,
        buse,
        target: c.target,
        printed_value,
        executed_value,
        matches_printed,
        matches_corrected,
        header_ok: header_violation(c, s)?.is_none(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport {
    pub table: u8,
    pub column: u8,
    /// "b -> infinity" or "b -> cap".
    pub mode: String,
    pub executed: Limit,
    pub printed: Limit,
    pub endpoint: Rational,
}

impl LimitReport {
    pub fn pass(&self) -> bool {
        self.executed == Limit::Finite(self.endpoint.clone())
    }

    pub fn printed_pass(&self) -> bool {
        self.printed == Limit::Finite(self.endpoint.clone())
    }

    pub fn json(&self) -> Value {
        json!({
            "table": self.table,
            "column": self.column,
            "mode": self.mode,
            "executed": self.executed.to_string(),
            "printed": self.printed.to_string(),
            "endpoint": rational::fmt_rational(&self.endpoint),
            "pass": self.pass(),
            "printed_pass": self.printed_pass(),
        })
    }
}

/// Endpoint of the target area: the b -> infinity limit, or the value at the active cap.
pub fn limit_check(table: u8, col: u8, s: &Shape) -> Result<LimitReport, InflationError> {
    let c = column(table, col)?;
    if let Some(v) = header_violation(c, s)? {
        return Err(InflationError::OutOfRange(v.to_string()));
    }
    let executed = target_area(&symbolic_areas(c, s, true)?, c.target).clone();
    let printed = parse(c.printed).eval(&shape_env(s))?;
    let (mode, endpoint, ex, pr) = match active_cap(c, s)? {
        Some((bound, ep)) => {
            let at = |f: &RatFun| f.eval(&bound).map(Limit::Finite).unwrap_or(Limit::Infinite);
            ("b -> cap".to_string(), eval_at_shape(ep, s)?, at(&executed), at(&printed))
        }
        None => ("b -> infinity".to_string(), eval_at_shape(c.endpoint, s)?, executed.limit(), printed.limit()),
    };
    Ok(LimitReport { table, column: col, mode, executed: ex, printed: pr, endpoint })
}

/// Buse margin w_be(N) - m a of the negative step as a function of b.
pub fn buse_margin(c: &Column, s: &Shape) -> Result<Option<RatFun>, InflationError> {
    let Some(n) = c.negative else { return Ok(None) };
    let env = shape_env(s);
    let a = parse(c.a.expect("a declared")).eval(&env)?;
    let areas = symbolic_areas(c, s, true)?;
    // undo the negative step to recover w_be
    let basis = [B, F, E1, E2];
    let be: Vec<RatFun> = areas.iter().zip(basis).map(|(x, z)| x.sub(&a.scale(&int(intersect(n, z))))).collect();
    let area = be[0]
        .scale(&int(n.p))
        .add(&be[1].scale(&int(n.q)))
        .sub(&be[2].scale(&int(n.r1)))
        .sub(&be[3].scale(&int(n.r2)));
    Ok(Some(area.sub(&a.scale(&int(-n.square())))))
}

// ---------------------------------------------------------------- sampling

fn random_rat<R: Rng>(rng: &mut R, lo: &Rational, hi: &Rational, den: i64) -> Rational {
    let k = rng.gen_range(1..den);
    lo + (hi - lo) * rat(k, den)
}

/// A generic shape inside the column header, with ell in 1..=3.
pub fn sample_shape<R: Rng>(rng: &mut R, table: u8, col: u8) -> Result<Shape, InflationError> {
    let c = column(table, col)?;
    for _ in 0..20_000 {
        let den = *[12i64, 20, 30, 42, 60].get(rng.gen_range(0..5)).unwrap();
        let ell = rng.gen_range(1..=3);
        let lambda = rat(rng.gen_range(1..=den), den);
        let c2 = random_rat(rng, &int(0), &rat(1, 2), den);
        let c1 = random_rat(rng, &c2, &(int(1) - &c2), den);
        let Ok(s) = Shape::new(int(ell) + lambda, c1, c2) else { continue };
        if header_violation(c, &s)?.is_none() {
            return Ok(s);
        }
    }
    Err(InflationError::NoSample { table, column: col })
}

/// b in [0, 10), or strictly below the active cap.
pub fn sample_b<R: Rng>(rng: &mut R, c: &Column, s: &Shape) -> Result<Rational, InflationError> {
    let hi = match active_cap(c, s)? {
        Some((bound, _)) => bound,
        None => int(10),
    };
    Ok(rat(rng.gen_range(0..1000), 1000) * hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(mu: (i64, i64), c1: (i64, i64), c2: (i64, i64)) -> Shape {
        Shape::from_ratios(mu, c1, c2).unwrap()
    }

    #[test]
    fn parser() {
        let e: Expr = "(mu*(1 - c1 - c2) + b*ell)/(1 - c1 - c2 + b)".parse().unwrap();
        let s = shape((5, 2), (3, 10), (1, 5));
        let f = e.eval(&shape_env(&s)).unwrap();
        assert_eq!(f.eval(&int(1)), Some(rat(13, 6)));
        assert_eq!(f.limit(), Limit::Finite(int(2)));
        assert!("1 +".parse::<Expr>().is_err());
        assert!("1 $ 2".parse::<Expr>().is_err());
        assert!("(1".parse::<Expr>().is_err());
        assert!(matches!("q".parse::<Expr>().unwrap().eval(&shape_env(&s)), Err(InflationError::UnknownVariable(_))));
        assert_eq!(eval_at_shape("-c2 + 2*c1", &s).unwrap(), rat(2, 5));
    }

    #[test]
    fn ratfun_arithmetic() {
        let b = RatFun::b();
        let one = RatFun::constant(int(1));
        let f = b.div(&b.add(&one)).unwrap();
        let g = one.sub(&one.div(&b.add(&one)).unwrap());
        assert_eq!(f, g);
        assert_eq!(f.limit(), Limit::Finite(int(1)));
        assert_eq!(b.limit(), Limit::Infinite);
        assert_eq!(f.to_string(), "(b)/(b + 1)");
        assert!(one.div(&RatFun::constant(int(0))).is_none());
    }

    #[test]
    fn inflate_examples() {
        let s = shape((5, 2), (3, 10), (1, 5));
        let f = FormClass::of_shape(&s);
        let eps = rat(1, 100);
        let g = inflate(&f, F, &eps).unwrap();
        assert_eq!(g, FormClass::new(rat(5, 2) + &eps, int(1), rat(3, 10), rat(1, 5)));
        let g = inflate(&f, E2, &eps).unwrap();
        assert_eq!(g.e2, rat(1, 5) - &eps);
        assert!(inflate(&f, E2, &rat(1, 5)).is_err());
        let z = E1.sub(E2);
        let w = f.area(z);
        assert!(matches!(inflate(&f, z, &(&w / int(2))), Err(InflationError::Buse { .. })));
        assert!(inflate(&f, z, &(&w / int(3))).is_ok());
        assert!(inflate(&f, F, &int(-1)).is_err());
    }

    #[test]
    fn schema_is_consistent() {
        assert_eq!(validate_schema(), Vec::<String>::new());
        assert_eq!(COLUMNS.len(), 26);
    }

    #[test]
    fn b_target_example() {
        let s = shape((5, 2), (3, 10), (1, 5));
        assert!(matches!(run_table(3, 1, &s, &int(1)), Err(InflationError::OutOfRange(_))));
        let r = run_table_unchecked(3, 1, &s, &int(1)).unwrap();
        assert_eq!(r.printed_value, rat(13, 6));
        assert_eq!(r.executed_value, rat(13, 6));
        assert_eq!(r.final_areas.e1, rat(3, 10));
        assert_eq!(r.final_areas.e2, rat(1, 5));
        assert!(r.f_normalized && r.matches_printed && !r.header_ok);
    }

    #[test]
    fn b_zero_is_identity() {
        let s = shape((11, 10), (3, 10), (1, 5));
        let r = run_table(4, 1, &s, &int(0)).unwrap();
        assert_eq!(r.final_areas, FormClass::of_shape(&s));
    }

    #[test]
    fn e2_target_late_range() {
        let s = shape((19, 10), (3, 10), (1, 5));
        let r = run_table(15, 2, &s, &int(2)).unwrap();
        let want = (rat(1, 5) * rat(7, 10) + rat(3, 10) * int(2)) / (rat(7, 10) + int(2));
        assert_eq!(r.executed_value, want);
        assert!(r.matches_printed);
    }

    #[test]
    fn limits() {
        let s = shape((11, 10), (3, 10), (1, 5));
        let l = limit_check(3, 1, &s).unwrap();
        assert_eq!(l.executed, Limit::Finite(int(1)));
        assert!(l.pass());
        let l = limit_check(7, 1, &s).unwrap();
        assert_eq!(l.executed, Limit::Finite(int(0)));
        let s = shape((17, 10), (3, 4), (1, 5));
        let l = limit_check(14, 2, &s);
        assert!(matches!(l, Err(InflationError::OutOfRange(_))));
        let s = shape((3, 2), (3, 5), (1, 5));
        let l = limit_check(14, 1, &s).unwrap();
        assert!(l.pass());
        let s = shape((13, 10), (7, 20), (1, 5));
        let l = limit_check(14, 2, &s).unwrap();
        assert_eq!(l.executed, Limit::Finite(rat(3, 10)));
    }

    #[test]
    fn misprints_detected() {
        let mut rng = rand::thread_rng();
        for (t, c) in [(4, 2), (7, 2), (13, 2)] {
            let s = sample_shape(&mut rng, t, c).unwrap();
            let r = run_table(t, c, &s, &int(1)).unwrap();
            assert!(!r.matches_printed, "{t}.{c}");
            assert!(r.matches_corrected, "{t}.{c}");
        }
    }

    #[test]
    fn caps_are_margin_roots() {
        let mut rng = rand::thread_rng();
        for c in COLUMNS.iter().filter(|c| c.negative.is_some()) {
            for _ in 0..10 {
                let s = sample_shape(&mut rng, c.table, c.column).unwrap();
                let m = buse_margin(c, &s).unwrap().unwrap();
                match active_cap(c, &s).unwrap() {
                    Some((bound, _)) => {
                        assert_eq!(m.eval(&bound), Some(int(0)), "{}.{}", c.table, c.column);
                        let past = &bound + rat(1, 1000);
                        assert!(m.eval(&past).unwrap().is_negative());
                        let r = run_table(c.table, c.column, &s, &past);
                        assert!(matches!(r, Err(InflationError::BadB { .. })));
                        let r = run_table_unchecked_b(c, &s, &past);
                        assert!(matches!(r, Err(InflationError::Buse { .. })));
                    }
                    None => {
                        for k in [0, 1, 10, 1000] {
                            assert!(m.eval(&int(k)).unwrap().is_positive(), "{}.{} b={k}", c.table, c.column);
                        }
                    }
                }
            }
        }
    }

    /// Runs past any cap so the Buse check itself fires.
    fn run_table_unchecked_b(c: &Column, s: &Shape, b: &Rational) -> Result<TableReport, InflationError> {
        let uncapped = Column { cap: None, ..*c };
        run_column(&uncapped, s, b)
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;
        use rand::SeedableRng;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn every_column_executes(seed in any::<u64>()) {
                let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
                for c in COLUMNS {
                    let s = sample_shape(&mut rng, c.table, c.column).unwrap();
                    let b = sample_b(&mut rng, c, &s).unwrap();
                    let r = run_table(c.table, c.column, &s, &b).unwrap();
                    prop_assert!(r.f_normalized);
                    prop_assert!(r.matches_corrected, "{}.{}", c.table, c.column);
                    if let Some(bc) = &r.buse {
                        prop_assert!(bc.margin.is_positive());
                    }
                    let l = limit_check(c.table, c.column, &s).unwrap();
                    prop_assert!(l.pass(), "{}.{} {:?}", c.table, c.column, l);
                }
            }

            #[test]
            fn b_target_monotone(seed in any::<u64>(), k in 1i64..50) {
                let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
                let s = sample_shape(&mut rng, 3, 1).unwrap();
                let b = rat(k, 7);
                let b2 = &b + rat(1, 3);
                let v = run_table(3, 1, &s, &b).unwrap().executed_value;
                let v2 = run_table(3, 1, &s, &b2).unwrap().executed_value;
                let lim = int(s.ell);
                prop_assert!(v2 < v && v2 > lim);
            }
        }
    }
}
