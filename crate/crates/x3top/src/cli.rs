//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cohomology::{
    bg_infinity_ring, generic_ring, induction_identity_check, mu1_ring, psi_map, psi_map_printed, r3_ring,
    stated_kernel, verify_kernel, PsiKind, QuotientRing,
};
use crate::homology::{
    area, enumerate_configurations, enumerate_d_strata, strata_count, LambdaRange, Shape,
};
use crate::inflation;
use crate::lie::{case_for_shape, expected_pi_ranks, pi_ranks, Case, CaseId};
use crate::rational::{self, parse_rational, Rational};
use crate::toric::{check_identifications, sample_circles, t_polygon, t_polygon_classes, verify_relation, Circle};
use crate::verify;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "x3top", version, about = "Exact-rational checks: strata, toric models, Lie ranks, cohomology rings, inflation")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|_| format!("{s:?} is not an exact rational (use p/q or an integer)"))
}

fn range_arg(s: &str) -> Result<LambdaRange, String> {
    LambdaRange::parse(s).ok_or_else(|| format!("{s:?} is not a lambda range (a, b, c or d)"))
}

fn case_arg(s: &str) -> Result<CaseId, String> {
    CaseId::parse(s).ok_or_else(|| format!("unknown case {s:?}"))
}

fn kind_arg(s: &str) -> Result<PsiKind, String> {
    PsiKind::parse(s).ok_or_else(|| format!("unknown map kind {s:?} (zero, odd1, odd2, even1, even2)"))
}

fn pair_arg(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("{s:?} is not a pair a,b"))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|_| format!("{x:?} is not an integer"));
    Ok((p(a)?, p(b)?))
}

#[derive(Debug, Clone, Args)]
pub struct ShapeArgs {
    #[arg(long, value_parser = rational_arg)]
    pub mu: Rational,
    #[arg(long, value_parser = rational_arg)]
    pub c1: Rational,
    #[arg(long, value_parser = rational_arg)]
    pub c2: Rational,
}

impl ShapeArgs {
    fn shape(&self) -> Result<Shape, Usage> {
        Shape::new(self.mu.clone(), self.c1.clone(), self.c2.clone()).map_err(|e| Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingName {
    Mu1,
    Bginf,
    Generic,
    R3,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Strata classes D_{-m} of positive area
    Strata(ShapeArgs),
    /// Configurations of invariant spheres
    Configs(ShapeArgs),
    /// Moment polygon of the torus T_i(n)
    Polygon {
        #[arg(long)]
        torus: usize,
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Labeled graph of a circle action
    Karshon {
        #[arg(long, required_unless_present = "a")]
        torus: Option<usize>,
        #[arg(long, requires = "torus")]
        n: Option<i64>,
        #[arg(long, value_parser = pair_arg, requires = "torus")]
        xi: Option<(i64, i64)>,
        /// The circle a_N instead of a torus circle
        #[arg(long, conflicts_with = "torus")]
        a: Option<i64>,
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Identifications between circles, checked through their graphs
    Relations {
        #[command(flatten)]
        shape: ShapeArgs,
        /// Also compare all circles with slope entries up to this bound
        #[arg(long, default_value_t = 0)]
        bound: i64,
    },
    /// Ranks of the presented Lie algebra
    PiRanks {
        #[arg(long = "case", value_parser = case_arg)]
        case_id: CaseId,
        #[arg(long, default_value_t = 1)]
        ell: i64,
        /// Generic case a boundary case is cut out of
        #[arg(long, value_parser = case_arg)]
        base: Option<CaseId>,
        #[arg(long, default_value_t = 6)]
        maxdeg: usize,
    },
    /// Predicted ranks for a generic shape
    ExpectedRanks {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 6)]
        maxdeg: usize,
        /// Compute the presented ranks too and compare
        #[arg(long)]
        compare: bool,
    },
    /// Hilbert function of a cohomology ring
    Hilbert {
        #[arg(long, value_enum)]
        ring: RingName,
        #[arg(long, value_parser = range_arg, default_value = "a")]
        range: LambdaRange,
        #[arg(long, default_value_t = 1)]
        ell: i64,
        #[arg(long, default_value_t = 12)]
        maxdeg: usize,
    },
    /// Degrees of a minimal generating set of the relation ideal
    RelationDegrees {
        #[arg(long, value_parser = range_arg)]
        range: LambdaRange,
        #[arg(long)]
        ell: i64,
        #[arg(long, default_value_t = 12)]
        maxdeg: usize,
    },
    /// Stated kernel of a map against the computed one
    Kernel {
        #[arg(long, value_parser = kind_arg)]
        kind: PsiKind,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 6)]
        containment: usize,
        /// Use the table entry as printed instead of the emended one
        #[arg(long)]
        printed: bool,
    },
    /// The linear identity between the even kernels
    InductionIdentity {
        #[arg(long)]
        ell: i64,
    },
    /// Run one inflation table column
    InflateCheck {
        #[arg(long)]
        table: u8,
        #[arg(long)]
        column: u8,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, value_parser = rational_arg)]
        b: Rational,
        /// Skip the header range check
        #[arg(long)]
        unchecked: bool,
    },
    /// All acceptance criteria
    VerifyAll {
        #[arg(long)]
        quick: bool,
        /// Run only these criteria
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug)]
struct Usage(String);

struct Report {
    value: Value,
    pass: bool,
    failures: Vec<String>,
    table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    lines: Vec<String>,
}

impl Report {
    fn new(value: Value, pass: bool) -> Self {
        Report { value, pass, failures: Vec::new(), table: None, lines: Vec::new() }
    }

    fn failures(mut self, f: Vec<String>) -> Self {
        self.pass = self.pass && f.is_empty();
        self.failures = f;
        self
    }

    fn table(mut self, headers: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.table = Some((headers, rows));
        self
    }

    fn lines(mut self, lines: Vec<String>) -> Self {
        self.lines = lines;
        self
    }
}

fn r(x: &Rational) -> String {
    rational::fmt_rational(x)
}

fn dims_table(dims: &[usize]) -> (Vec<&'static str>, Vec<Vec<String>>) {
    (vec!["degree", "dim"], dims.iter().enumerate().map(|(d, n)| vec![d.to_string(), n.to_string()]).collect())
}

fn ring_report(ring: &QuotientRing, maxdeg: usize) -> Report {
    let dims = ring.hilbert(maxdeg);
    let top = bg_infinity_ring().hilbert(maxdeg);
    let below = dims.iter().zip(&top).all(|(a, b)| a <= b);
    let (h, rows) = dims_table(&dims);
    Report::new(json!({"ring": ring.json(), "dims": dims, "bg_infinity_dims": top, "below_bg_infinity": below}), below)
        .table(h, rows)
        .lines(vec![format!("{ring}"), format!("dims {dims:?}")])
}

fn execute(cmd: &Command) -> Result<Report, Usage> {
    Ok(match cmd {
        Command::Strata(a) => {
            let s = a.shape()?;
            let n = strata_count(&s).map_err(|e| Usage(e.to_string()))?;
            let strata = enumerate_d_strata(&s);
            let rows: Vec<Vec<String>> =
                strata.iter().map(|(m, c)| vec![m.to_string(), c.to_string(), r(&area(&s, *c))]).collect();
            let classes: Vec<Value> = strata
                .iter()
                .map(|(m, c)| json!({"m": m, "index": -m, "class": c.json(), "area": r(&area(&s, *c))}))
                .collect();
            let ok = strata.len() as i64 == n;
            Report::new(json!({"shape": s.json(), "N": n, "classes": classes, "pass": ok}), ok)
                .table(vec!["m", "class", "area"], rows.clone())
                .lines(std::iter::once(format!("N = {n}")).chain(rows.iter().map(|r| format!("D_-{}  {}  area {}", r[0], r[1], r[2]))).collect())
        }
        Command::Configs(a) => {
            let s = a.shape()?;
            let cs = enumerate_configurations(&s);
            let bad: Vec<String> =
                cs.iter().filter_map(|c| c.validate().err().map(|e| format!("type {} m {}: {e}", c.type_id, c.m))).collect();
            let rows = cs
                .iter()
                .map(|c| {
                    let (i, _) = c.defining_class();
                    vec![
                        c.type_id.to_string(),
                        c.m.to_string(),
                        c.isometry().label().to_string(),
                        i.to_string(),
                        c.members.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
                    ]
                })
                .collect::<Vec<_>>();
            let lines = rows.iter().map(|r| format!("({}) m={} {} D_{}: {}", r[0], r[1], r[2], r[3], r[4])).collect();
            Report::new(
                json!({"shape": s.json(), "count": cs.len(), "configurations": cs.iter().map(|c| c.json(Some(&s))).collect::<Vec<_>>()}),
                true,
            )
            .failures(bad)
            .table(vec!["type", "m", "isometry", "defining_index", "members"], rows)
            .lines(lines)
        }
        Command::Polygon { torus, n, shape } => {
            let s = shape.shape()?;
            if !(1..=5).contains(torus) || *n < 0 {
                return Err(Usage("--torus runs from 1 to 5 and --n must be >= 0".into()));
            }
            let p = t_polygon(*torus, *n, &s).map_err(|e| Usage(e.to_string()))?;
            let classes = t_polygon_classes(*torus, *n);
            let lens = p.edge_lengths();
            let mut areas: Vec<Rational> = classes.iter().map(|c| area(&s, *c)).collect();
            let mut sorted_lens = lens.clone();
            areas.sort();
            sorted_lens.sort();
            let delzant = p.is_delzant();
            let matched = areas == sorted_lens;
            let mut failures = Vec::new();
            if !delzant {
                failures.push("polygon is not Delzant".to_string());
            }
            if !matched {
                failures.push("edge lengths differ from the class areas".to_string());
            }
            let rows = p.vertices().iter().map(|v| vec![r(&v.0), r(&v.1)]).collect();
            Report::new(
                json!({
                    "torus": torus, "n": n, "shape": s.json(), "polygon": p.json(),
                    "edge_lengths": lens.iter().map(r).collect::<Vec<_>>(),
                    "classes": classes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "delzant": delzant, "edge_areas_match": matched,
                }),
                true,
            )
            .failures(failures)
            .table(vec!["x", "y"], rows)
            .lines(vec![format!("T_{torus}({n}) = {p}"), format!("delzant {delzant}, edge areas match {matched}")])
        }
        Command::Karshon { torus, n, xi, a, shape } => {
            let s = shape.shape()?;
            let circle = match (torus, a) {
                (_, Some(k)) => Circle::A(*k),
                (Some(i), None) => Circle::Torus { n: n.unwrap_or(0), i: *i, xi: xi.unwrap_or((1, 0)) },
                _ => return Err(Usage("give --torus or --a".into())),
            };
            let g = circle.graph(&s).map_err(|e| Usage(e.to_string()))?;
            Report::new(json!({"circle": circle.to_string(), "image": circle.expr().to_string(), "graph": g.json()}), true)
                .lines(vec![format!("{circle} = {}", circle.expr()), g.json().to_string()])
        }
        Command::Relations { shape, bound } => {
            let s = shape.shape()?;
            let y1 = Circle::Torus { n: 0, i: 4, xi: (-1, 1) };
            let y0_x0 = Circle::Torus { n: 0, i: 1, xi: (-1, 1) };
            let named = [
                ("x_{1,4} = y1", Circle::Torus { n: 1, i: 4, xi: (1, 0) }, y1),
                ("x_{1,1} = y0 - x0", Circle::Torus { n: 1, i: 1, xi: (1, 0) }, y0_x0),
                ("a_0 = y1", Circle::A(0), y1),
            ];
            let mut out = Vec::new();
            let mut failures = Vec::new();
            for (name, l, rh) in named {
                let ok = verify_relation(&l, &rh, &s).map_err(|e| Usage(e.to_string()))?;
                if !ok {
                    failures.push(name.to_string());
                }
                out.push(json!({"relation": name, "lhs": l.to_string(), "rhs": rh.to_string(), "holds": ok}));
            }
            let mut pairs = 0;
            if *bound > 0 {
                let circles = sample_circles(&s, *bound);
                for (l, rh, ok) in check_identifications(&s, &circles).map_err(|e| Usage(e.to_string()))? {
                    pairs += 1;
                    if !ok {
                        failures.push(format!("{l} and {rh} share an image but not a graph"));
                    }
                }
            }
            let lines = out.iter().map(|v| format!("{} {}", v["relation"].as_str().unwrap(), v["holds"])).collect();
            Report::new(json!({"shape": s.json(), "relations": out, "image_pairs_compared": pairs}), true)
                .failures(failures)
                .lines(lines)
        }
        Command::PiRanks { case_id, ell, base, maxdeg } => {
            let case = match base {
                Some(b) => Case::boundary(*case_id, *b, *ell),
                None => Case::new(*case_id, *ell),
            }
            .map_err(|e| Usage(e.to_string()))?;
            let ranks = pi_ranks(&case, *maxdeg).map_err(|e| Usage(e.to_string()))?;
            let rows = ranks.iter().enumerate().map(|(i, x)| vec![(i + 1).to_string(), x.to_string()]).collect();
            Report::new(json!({"case": case.id.label(), "ell": case.ell, "ranks": ranks}), true)
                .table(vec!["degree", "rank"], rows)
                .lines(vec![format!("{} ell={}: {ranks:?}", case.id, case.ell)])
        }
        Command::ExpectedRanks { shape, maxdeg, compare } => {
            let s = shape.shape()?;
            let case = case_for_shape(&s);
            let want = expected_pi_ranks(&s, *maxdeg).map_err(|e| Usage(e.to_string()))?;
            let mut v = json!({"case": case.id.label(), "ell": s.ell, "ranks": want});
            let mut failures = Vec::new();
            if *compare {
                let got = pi_ranks(&case, *maxdeg).map_err(|e| Usage(e.to_string()))?;
                if got != want {
                    failures.push(format!("computed {got:?} differs from expected {want:?}"));
                }
                v["computed"] = json!(got);
                v["match"] = json!(got == want);
            }
            let rows = want.iter().enumerate().map(|(i, x)| vec![(i + 1).to_string(), x.to_string()]).collect();
            Report::new(v, true)
                .failures(failures)
                .table(vec!["degree", "rank"], rows)
                .lines(vec![format!("{} ell={}: {want:?}", case.id, s.ell)])
        }
        Command::Hilbert { ring, range, ell, maxdeg } => {
            let q = match ring {
                RingName::Mu1 => mu1_ring(),
                RingName::Bginf => bg_infinity_ring(),
                RingName::Generic if *ell >= 1 => generic_ring(*range, *ell),
                RingName::R3 if *ell >= 0 => r3_ring(*range, *ell),
                _ => return Err(Usage("--ell must be >= 1 for the generic rings".into())),
            };
            ring_report(&q, *maxdeg)
        }
        Command::RelationDegrees { range, ell, maxdeg } => {
            if *ell < 1 {
                return Err(Usage("--ell must be >= 1".into()));
            }
            let q = generic_ring(*range, *ell);
            let got = q.minimal_relation_degrees(*maxdeg);
            let l = *ell as usize;
            let mut want = vec![4; 5];
            match range {
                LambdaRange::A => want.extend([4 * l, 4 * l]),
                LambdaRange::B => want.push(4 * l),
                LambdaRange::C => want.extend([4 * l + 2, 4 * l + 2]),
                LambdaRange::D => want.push(4 * l + 2),
            }
            want.sort();
            let ok = got == want;
            Report::new(json!({"ring": q.json(), "degrees": got, "expected": want, "pass": ok}), ok)
                .lines(vec![format!("{got:?} (expected {want:?})")])
        }
        Command::Kernel { kind, k, containment, printed } => {
            if *k < 1 && *kind != PsiKind::Zero {
                return Err(Usage("--k must be >= 1".into()));
            }
            let map = if *printed { psi_map_printed(*kind, *k) } else { psi_map(*kind, *k) };
            let rep = verify_kernel(&map, &stated_kernel(*kind, *k), *containment, *containment);
            let rows = rep.dims.iter().map(|(d, a, b)| vec![d.to_string(), a.to_string(), b.to_string()]).collect();
            Report::new(rep.json(), true)
                .failures(rep.failures.clone())
                .table(vec!["degree", "kernel", "ideal"], rows)
                .lines(vec![format!("{}: {}", rep.map, if rep.pass() { "kernel as stated" } else { "mismatch" })])
        }
        Command::InductionIdentity { ell } => {
            if *ell < 1 {
                return Err(Usage("--ell must be >= 1".into()));
            }
            let rep = induction_identity_check(*ell);
            let f = if rep.holds { vec![] } else { vec![format!("residual {}", rep.residual)] };
            Report::new(rep.json(), true).failures(f).lines(vec![format!("ell={} holds={}", rep.ell, rep.holds)])
        }
        Command::InflateCheck { table, column, shape, b, unchecked } => {
            let s = shape.shape()?;
            let run = if *unchecked { inflation::run_table_unchecked } else { inflation::run_table };
            let rep = run(*table, *column, &s, b).map_err(|e| Usage(e.to_string()))?;
            let mut v = rep.json();
            let mut failures = Vec::new();
            if !rep.matches_printed {
                failures.push(if rep.matches_corrected {
                    "printed entries differ from the executed areas; the emended entries match".to_string()
                } else {
                    "executed areas match neither the printed nor the emended entries".to_string()
                });
            }
            if let Ok(l) = inflation::limit_check(*table, *column, &s) {
                if !l.pass() {
                    failures.push(format!("endpoint {} not reached ({})", r(&l.endpoint), l.executed));
                }
                v["limit"] = l.json();
            }
            let rows = rep
                .steps
                .iter()
                .map(|st| vec![st.label.clone(), r(&st.areas.b), r(&st.areas.f), r(&st.areas.e1), r(&st.areas.e2)])
                .collect::<Vec<_>>();
            let lines = rows.iter().map(|x| format!("{:<24} B={} F={} E1={} E2={}", x[0], x[1], x[2], x[3], x[4])).collect();
            Report::new(v, true).failures(failures).table(vec!["step", "B", "F", "E1", "E2"], rows).lines(lines)
        }
        Command::VerifyAll { quick, only } => {
            let ids: Vec<u8> = if only.is_empty() { (1..=10).collect() } else { only.clone() };
            if let Some(bad) = ids.iter().find(|i| !(1..=10).contains(*i)) {
                return Err(Usage(format!("no criterion {bad}")));
            }
            let outs: Vec<verify::Outcome> = ids.iter().map(|i| verify::run(*i, *quick)).collect();
            let failures: Vec<String> = outs
                .iter()
                .flat_map(|o| o.failures.iter().map(move |f| format!("criterion {}: {f}", o.id)))
                .collect();
            let v: Vec<Value> = outs
                .iter()
                .map(|o| json!({"criterion": o.id, "title": o.title, "pass": o.pass, "details": o.details}))
                .collect();
            let rows = outs
                .iter()
                .map(|o| vec![o.id.to_string(), o.title.to_string(), if o.pass { "PASS" } else { "FAIL" }.to_string()])
                .collect();
            Report::new(json!({"quick": quick, "criteria": v}), true)
                .failures(failures)
                .table(vec!["criterion", "title", "result"], rows)
                .lines(outs.iter().map(|o| o.line()).collect())
        }
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Parses `args` (program name first), runs the command and writes the report.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            return EXIT_USAGE;
        }
    };
    let written = match cli.format {
        Format::Json => {
            let mut v = report.value;
            v["pass"] = json!(report.pass);
            v["failures"] = json!(report.failures);
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))
        }
        Format::Csv => match &report.table {
            Some((h, rows)) => {
                let mut s = h.join(",") + "\n";
                for row in rows {
                    s += &row.iter().map(|x| csv_field(x)).collect::<Vec<_>>().join(",");
                    s.push('\n');
                }
                write!(out, "{s}")
            }
            None => {
                let _ = writeln!(err, "error: this command has no tabular output; use --format json");
                return EXIT_USAGE;
            }
        },
        Format::Pretty => {
            let mut s = String::new();
            for l in &report.lines {
                s += l;
                s.push('\n');
            }
            for f in &report.failures {
                s += &format!("failure: {f}\n");
            }
            s += if report.pass { "result: pass\n" } else { "result: fail\n" };
            write!(out, "{s}")
        }
    };
    if written.is_err() {
        return EXIT_FAIL;
    }
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("x3top").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn strata_example() {
        let (code, out, _) = call(&["strata", "--mu", "5/2", "--c1", "3/10", "--c2", "1/5"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["N"], 9);
        assert_eq!(v["classes"].as_array().unwrap().len(), 9);
    }

    #[test]
    fn decimals_are_usage_errors() {
        let (code, _, err) = call(&["strata", "--mu", "2.5", "--c1", "3/10", "--c2", "1/5"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("exact rational"));
    }

    #[test]
    fn inadmissible_shape_names_constraint() {
        let (code, _, err) = call(&["configs", "--mu", "2", "--c1", "1/5", "--c2", "3/10"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("c2 = 3/10 > c1 = 1/5"), "{err}");
    }

    #[test]
    fn csv_needs_a_table() {
        let (code, _, _) = call(&["--format", "csv", "karshon", "--a", "0", "--mu", "3/2", "--c1", "3/10", "--c2", "1/5"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, out, _) = call(&["--format", "csv", "hilbert", "--ring", "bginf", "--maxdeg", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out, "degree,dim\n0,1\n1,0\n2,6\n3,0\n4,16\n");
    }

    #[test]
    fn misprint_exits_one() {
        let args = ["inflate-check", "--table", "7", "--column", "2", "--mu", "17/10", "--c1", "3/4", "--c2", "1/5", "--b", "1"];
        let (code, out, _) = call(&args);
        assert_eq!(code, EXIT_FAIL);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["matches_corrected"], true);
        assert_eq!(v["failures"].as_array().unwrap().len(), 1);
    }
}
