//! Graded Lie algebra presentations of the rational homotopy of the symplectomorphism groups.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::homology::{Boundary, LambdaRange, Shape};
use crate::ncalg::{bracket, graded_dim_quotient_nc, Alphabet, Generator, NcElement};
use crate::rational::{int, rat};
use crate::series::{loop_space_ranks, pbw_extract, PowerSeries, SeriesError};

/// Largest degree accepted for six-generator presentations.
pub const MAXDEG_BOUND: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseId {
    Mu1,
    S1,
    S2,
    S3a,
    S3b,
    S4a,
    S4b,
    R1,
    R2,
    R3,
    Ginf,
}

impl CaseId {
    pub const ALL: [CaseId; 11] = [
        CaseId::Mu1,
        CaseId::S1,
        CaseId::S2,
        CaseId::S3a,
        CaseId::S3b,
        CaseId::S4a,
        CaseId::S4b,
        CaseId::R1,
        CaseId::R2,
        CaseId::R3,
        CaseId::Ginf,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CaseId::Mu1 => "MU1",
            CaseId::S1 => "S1",
            CaseId::S2 => "S2",
            CaseId::S3a => "S3a",
            CaseId::S3b => "S3b",
            CaseId::S4a => "S4a",
            CaseId::S4b => "S4b",
            CaseId::R1 => "R1",
            CaseId::R2 => "R2",
            CaseId::R3 => "R3",
            CaseId::Ginf => "GINF",
        }
    }

    pub fn parse(s: &str) -> Option<CaseId> {
        CaseId::ALL.iter().copied().find(|c| c.label().eq_ignore_ascii_case(s))
    }

    fn is_boundary(self) -> bool {
        matches!(self, CaseId::R1 | CaseId::R2 | CaseId::R3)
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A case together with ell and, for R1/R2/R3, the generic case it is cut out of.
///
/// For R3 the base only fixes the degree of the two central generators
/// (S3a: 4ell-2, S3b: 4ell) or, with MU1, that there are none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Case {
    pub id: CaseId,
    pub ell: i64,
    pub base: Option<CaseId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("case {0} is not defined for ell = {1}")]
    BadEll(CaseId, i64),
    #[error("case {0} needs a generic base case, got {1:?}")]
    BadBase(CaseId, Option<CaseId>),
    #[error("maxdeg {0} exceeds the safety bound {MAXDEG_BOUND}")]
    TooDeep(usize),
    #[error("presentation is inconsistent: {0}")]
    Inconsistent(#[from] SeriesError),
    #[error("shape is not generic")]
    NotGeneric,
    #[error("cancelled")]
    Cancelled,
}

impl Case {
    pub fn new(id: CaseId, ell: i64) -> Result<Case, LieError> {
        let ok = match id {
            CaseId::Mu1 => ell == 0,
            CaseId::S1 | CaseId::S2 => ell == 1,
            CaseId::S3a | CaseId::S4a => ell > 1,
            CaseId::S3b | CaseId::S4b => ell >= 1,
            CaseId::Ginf => true,
            _ => return Err(LieError::BadBase(id, None)),
        };
        if !ok {
            return Err(LieError::BadEll(id, ell));
        }
        Ok(Case { id, ell: if id == CaseId::Ginf { 0 } else { ell }, base: None })
    }

    pub fn boundary(id: CaseId, base: CaseId, ell: i64) -> Result<Case, LieError> {
        let ok = match id {
            CaseId::R1 | CaseId::R2 => !base.is_boundary() && base != CaseId::Ginf,
            CaseId::R3 => matches!(base, CaseId::Mu1 | CaseId::S3a | CaseId::S3b),
            _ => false,
        };
        if !ok {
            return Err(LieError::BadBase(id, Some(base)));
        }
        let ell_ok = match (id, base) {
            (CaseId::R3, CaseId::Mu1) => ell == 0,
            (CaseId::R3, _) => ell >= 1,
            _ => Case::new(base, ell).is_ok(),
        };
        if !ell_ok {
            return Err(LieError::BadEll(id, ell));
        }
        Ok(Case { id, ell, base: Some(base) })
    }

    pub fn json(&self) -> Value {
        json!({"case": self.id.label(), "ell": self.ell, "base": self.base.map(|b| b.label())})
    }
}

/// A relation sum c_i [a_i, b_i] = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieRelation(pub Vec<(i64, String, String)>);

impl LieRelation {
    fn vanish(a: &str, b: &str) -> Self {
        LieRelation(vec![(1, a.into(), b.into())])
    }

    /// lhs = rhs_1 + rhs_2 + ...
    fn equal(lhs: (&str, &str), rhs: &[(&str, &str)]) -> Self {
        let mut v = vec![(1, lhs.0.into(), lhs.1.into())];
        v.extend(rhs.iter().map(|(a, b)| (-1, a.to_string(), b.to_string())));
        LieRelation(v)
    }

    fn mentions(&self, g: &str) -> bool {
        self.0.iter().any(|(_, a, b)| a == g || b == g)
    }
}

impl fmt::Display for LieRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, a, b)) in self.0.iter().enumerate() {
            let sign = match (i, *c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}[{a},{b}]")?;
            } else {
                write!(f, "{sign}{mag}[{a},{b}]")?;
            }
        }
        f.write_str(" = 0")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiePresentation {
    pub generators: Vec<(String, usize)>,
    pub relations: Vec<LieRelation>,
    pub central_even_generators: Vec<(String, usize)>,
}

const BASE_GENS: [&str; 5] = ["x0", "y0", "x1", "y1", "z"];
const S_PAIRS: [(&str, &str); 5] = [("x0", "y1"), ("x0", "x1"), ("y0", "y1"), ("z", "y0"), ("z", "x1")];

fn in_s(a: &str, b: &str) -> bool {
    S_PAIRS.iter().any(|&(p, q)| (p, q) == (a, b) || (q, p) == (a, b))
}

/// Squares and vanishing brackets among x0, y0, x1, y1, z.
fn base_relations() -> Vec<LieRelation> {
    let mut rels = Vec::new();
    for (i, a) in BASE_GENS.iter().enumerate() {
        for b in &BASE_GENS[i..] {
            if !in_s(a, b) {
                rels.push(LieRelation::vanish(a, b));
            }
        }
    }
    rels
}

fn generic_presentation(id: CaseId, ell: i64) -> LiePresentation {
    let mut gens: Vec<(String, usize)> = BASE_GENS.iter().map(|g| (g.to_string(), 1)).collect();
    let mut rels = base_relations();
    let mut central = Vec::new();
    if id != CaseId::Mu1 {
        gens.push(("t".into(), 1));
        rels.push(LieRelation::vanish("t", "t"));
        rels.push(LieRelation::vanish("y1", "t"));
    }
    match id {
        CaseId::Mu1 => {}
        CaseId::S1 => {
            rels.push(LieRelation::equal(("x0", "t"), &[("y0", "t")]));
            rels.push(LieRelation::equal(("z", "t"), &[("x1", "t"), ("x1", "z")]));
        }
        CaseId::S2 => {
            rels.push(LieRelation::equal(("y0", "t"), &[("x1", "t"), ("x1", "x0")]));
            rels.push(LieRelation::equal(("x0", "t"), &[("x1", "t"), ("x1", "x0")]));
            rels.push(LieRelation::equal(("z", "t"), &[("x1", "t"), ("x1", "z")]));
        }
        _ => {
            rels.push(LieRelation::vanish("x1", "t"));
            rels.push(LieRelation::equal(("y0", "t"), &[("x1", "x0")]));
            rels.push(LieRelation::equal(("x0", "t"), &[("x1", "x0")]));
            rels.push(LieRelation::equal(("z", "t"), &[("x1", "z")]));
        }
    }
    let wdeg = |a: bool| (if a { 4 * ell - 2 } else { 4 * ell }) as usize;
    match id {
        CaseId::S3a | CaseId::S3b => {
            let d = wdeg(id == CaseId::S3a);
            central.push(("w1".into(), d));
            central.push(("w2".into(), d));
        }
        CaseId::S4a | CaseId::S4b => central.push(("w".into(), wdeg(id == CaseId::S4a))),
        _ => {}
    }
    LiePresentation { generators: gens, relations: rels, central_even_generators: central }
}

fn r3_presentation(base: CaseId, ell: i64) -> LiePresentation {
    if base == CaseId::Mu1 {
        let gens = vec![("x0".to_string(), 1), ("y0".to_string(), 1)];
        let rels = vec![LieRelation::vanish("x0", "x0"), LieRelation::vanish("x0", "y0"), LieRelation::vanish("y0", "y0")];
        return LiePresentation { generators: gens, relations: rels, central_even_generators: vec![] };
    }
    let names = ["x0", "y0", "x1", "t"];
    let mut rels = Vec::new();
    for (i, a) in names.iter().enumerate() {
        for b in &names[i..] {
            if (*a, *b) != ("x0", "x1") {
                rels.push(LieRelation::vanish(a, b));
            }
        }
    }
    let d = (if base == CaseId::S3a { 4 * ell - 2 } else { 4 * ell }) as usize;
    LiePresentation {
        generators: names.iter().map(|g| (g.to_string(), 1)).collect(),
        relations: rels,
        central_even_generators: vec![("w1".into(), d), ("w2".into(), d)],
    }
}

pub fn presentation_for(case: &Case) -> LiePresentation {
    match (case.id, case.base) {
        (CaseId::R3, Some(b)) => r3_presentation(b, case.ell),
        (CaseId::R1 | CaseId::R2, Some(b)) => {
            let drop = if case.id == CaseId::R1 { "y1" } else { "z" };
            let mut p = generic_presentation(b, case.ell);
            p.generators.retain(|(g, _)| g != drop);
            p.relations.retain(|r| !r.mentions(drop));
            p
        }
        (id, _) => generic_presentation(id, case.ell),
    }
}

impl LiePresentation {
    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.generators.iter().map(|(n, d)| Generator { name: n.clone(), degree: *d }).collect())
    }

    /// Relations of the enveloping algebra: each bracket becomes a graded commutator.
    pub fn enveloping_relations(&self) -> Vec<NcElement> {
        let alpha = self.alphabet();
        self.relations
            .iter()
            .map(|r| {
                r.0.iter().fold(NcElement::zero(), |acc, (c, a, b)| {
                    let a = alpha.index(a).expect("declared generator");
                    let b = alpha.index(b).expect("declared generator");
                    acc.add(&bracket(&alpha, a, b).scale(&int(*c)))
                })
            })
            .collect()
    }

    /// Hilbert series of the enveloping algebra including the central even generators.
    pub fn enveloping_series(&self, maxdeg: usize) -> PowerSeries {
        let dims = graded_dim_quotient_nc(&self.alphabet(), &self.enveloping_relations(), maxdeg);
        self.with_central(dims)
    }

    fn with_central(&self, dims: Vec<usize>) -> PowerSeries {
        let mut s = PowerSeries::new(dims.iter().map(|d| rat(*d as i64, 1)).collect());
        for (_, d) in &self.central_even_generators {
            s = s.div_one_minus(*d);
        }
        s
    }

    pub fn json(&self) -> Value {
        json!({
            "generators": self.generators.iter().map(|(n, d)| json!({"name": n, "degree": d})).collect::<Vec<_>>(),
            "relations": self.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "central_even_generators": self.central_even_generators.iter().map(|(n, d)| json!({"name": n, "degree": d})).collect::<Vec<_>>(),
        })
    }
}

/// Ranks of the presented Lie algebra in degrees 1..=maxdeg.
pub fn pi_ranks(case: &Case, maxdeg: usize) -> Result<Vec<u64>, LieError> {
    pi_ranks_cancellable(case, maxdeg, &|| false)
}

/// As [`pi_ranks`], polling `cancel` between degree stages.
pub fn pi_ranks_cancellable(case: &Case, maxdeg: usize, cancel: &dyn Fn() -> bool) -> Result<Vec<u64>, LieError> {
    if maxdeg > MAXDEG_BOUND {
        return Err(LieError::TooDeep(maxdeg));
    }
    let p = presentation_for(case);
    let dims = crate::ncalg::graded_dim_quotient_nc_cancellable(&p.alphabet(), &p.enveloping_relations(), maxdeg, cancel)
        .ok_or(LieError::Cancelled)?;
    Ok(pbw_extract(&p.with_central(dims))?)
}

/// The generic case of a shape; ties in lambda go to the earlier range.
fn generic_case(ell: i64, range: LambdaRange) -> Case {
    let id = if ell == 0 {
        CaseId::Mu1
    } else {
        match (range, ell == 1) {
            (LambdaRange::A, true) => CaseId::S1,
            (LambdaRange::B, true) => CaseId::S2,
            (LambdaRange::A, false) => CaseId::S3a,
            (LambdaRange::B, false) => CaseId::S4a,
            (LambdaRange::C, _) => CaseId::S3b,
            (LambdaRange::D, _) => CaseId::S4b,
        }
    };
    Case { id, ell, base: None }
}

pub fn case_for_shape(s: &Shape) -> Case {
    let g = generic_case(s.ell, s.lambda_range());
    match s.boundary() {
        Boundary::Generic => g,
        Boundary::R1 => Case { id: CaseId::R1, ell: s.ell, base: Some(g.id) },
        Boundary::R2 => Case { id: CaseId::R2, ell: s.ell, base: Some(g.id) },
        Boundary::R3 => {
            let base = if s.ell == 0 {
                CaseId::Mu1
            } else if s.lambda <= rat(1, 2) {
                CaseId::S3a
            } else {
                CaseId::S3b
            };
            Case { id: CaseId::R3, ell: s.ell, base: Some(base) }
        }
    }
}

/// Ranks predicted from the loop-space ranks r_n of the two-point blow-up plus the extra
/// generators of each lambda-range: two (lambda <= c2) or one (c2 < lambda <= c1) in degree
/// 4ell-2, two (c1 < lambda <= c1+c2) or one (c1+c2 < lambda) in degree 4ell.
pub fn expected_pi_ranks(s: &Shape, maxdeg: usize) -> Result<Vec<u64>, LieError> {
    if !s.is_generic() {
        return Err(LieError::NotGeneric);
    }
    let mut ranks = loop_space_ranks(maxdeg);
    if maxdeg == 0 {
        return Ok(ranks);
    }
    if s.ell == 0 {
        ranks[0] = 5;
        return Ok(ranks);
    }
    ranks[0] = 6;
    let l = s.ell as usize;
    let (deg, extra) = match s.lambda_range() {
        LambdaRange::A => (4 * l - 2, 2),
        LambdaRange::B => (4 * l - 2, 1),
        LambdaRange::C => (4 * l, 2),
        LambdaRange::D => (4 * l, 1),
    };
    if deg <= maxdeg {
        ranks[deg - 1] += extra;
    }
    Ok(ranks)
}
