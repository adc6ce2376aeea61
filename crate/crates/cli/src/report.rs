//! Command implementations and report rendering.

use crate::{Format, RunArgs, ScanArgs};
use serde_json::{json, Map, Value};
use std::fmt::Write as _;
use std::io::Write as _;
use tightcurve::criteria::{Certificate, DecisionReport, DegreeKind, Engine, EngineConfig, Fact, Status, Verdict, Witness};
use tightcurve::curvering::{make_curve, CurveRing, IdealGens};
use tightcurve::exactfield::FieldSpec;
use tightcurve::frobenius::{
    frobenius_closure_lower_bound, frobenius_power_membership, oracle_check, scan as run_scan, FrobeniusBound, OracleCheck,
    ScanGrid, MONOMIAL_BUDGET,
};
use tightcurve::parse::{parse_poly, parse_poly_list, ParseError};
use tightcurve::polyspace::{num_monomials, HomPoly};
use tightcurve::syzygy::{koszul_basis, syzygy_dim};
use tightcurve::Error;

/// Oracle checks in `analyze` stop after this many elements.
const ORACLE_LIMIT: usize = 200;

pub struct Outcome {
    pub text: String,
    pub unknown_dominant: bool,
    pub strict: bool,
}

pub enum Failure {
    /// Parse, validation or usage problems (exit status 2).
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Linalg(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

struct Setup {
    field: FieldSpec,
    ring: CurveRing,
    gens: IdealGens,
}

fn setup(a: &RunArgs) -> Res<Setup> {
    let field = FieldSpec::new(a.characteristic).map_err(|e| Failure::Input(e.to_string()))?;
    let curve = parse_poly(&a.curve, field).map_err(|e| Failure::Input(format!("--curve: {e}")))?;
    let ring = make_curve(&curve, field)?;
    let polys = parse_poly_list(&a.ideal, field).map_err(|e| Failure::Input(format!("--ideal: {e}")))?;
    let gens = IdealGens::new(&ring, polys)?;
    Ok(Setup { field, ring, gens })
}

fn element(a: &RunArgs, field: FieldSpec) -> Res<HomPoly> {
    let text = a.element.as_deref().ok_or_else(|| Failure::Input("--element is required".into()))?;
    parse_poly(text, field).map_err(|e| Failure::Input(format!("--element: {e}")))
}

/// `a..b` or `a..=b`, both inclusive.
pub fn parse_degrees(text: Option<&str>, default: (i64, i64)) -> Res<(i64, i64)> {
    let Some(t) = text else { return Ok(default) };
    let bad = || Failure::Input(format!("--degrees: expected a..b, got {t:?}"));
    let (lo, hi) = t.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo < 0 || hi < lo {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_list<T: std::str::FromStr>(flag: &str, text: &str) -> Res<Vec<T>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Failure::Input(format!("--{flag}: cannot parse {s:?}"))))
        .collect()
}

fn engine(s: &Setup, a: &RunArgs) -> Res<Engine> {
    Ok(Engine::new(&s.gens, EngineConfig { seed: a.seed, e_max: a.emax, ..EngineConfig::default() })?)
}

fn base_json(s: &Setup, a: &RunArgs, command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("curve".into(), json!(s.ring.equation().to_string()));
    m.insert("char".into(), json!(s.field.characteristic()));
    m.insert("delta".into(), json!(s.ring.delta()));
    m.insert("genus".into(), json!(s.ring.genus()));
    m.insert("ideal".into(), json!(s.gens.gens().iter().map(|g| g.to_string()).collect::<Vec<_>>()));
    m.insert("syzygy_table".into(), json!([]));
    m.insert("certificates".into(), json!([]));
    m.insert("degree_table".into(), json!([]));
    m.insert("oracle".into(), json!([]));
    m.insert("seed".into(), json!(a.seed));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m
}

fn render_json(m: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
    s.push('\n');
    s
}

fn header(s: &Setup) -> String {
    format!(
        "curve {} over {} (degree {}, genus {})\nideal {}\n",
        s.ring.equation(),
        s.field,
        s.ring.delta(),
        s.ring.genus(),
        s.gens
    )
}

fn syz_table(gens: &IdealGens, dims: &[(i64, usize)]) -> Value {
    Value::Array(
        dims.iter()
            .map(|&(k, d)| {
                let koszul = koszul_basis(gens, k).ok().map(|s| s.dim());
                json!({ "k": k, "dim": d, "koszul_dim": koszul })
            })
            .collect(),
    )
}

fn witness_text(w: &Witness) -> String {
    let polys = |ps: &[HomPoly]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
    match w {
        Witness::Membership { element, gens, cofactors } => {
            format!("{element} = Σ h_i f_i over ({}) with h = ({})", polys(gens), polys(cofactors))
        }
        Witness::NonMembership { element, gens } => format!("{element} is not in ({})", polys(gens)),
        Witness::Syzygy { entries, degree, primary, .. } => {
            format!("{}syzygy ({}) of total degree {degree}", if *primary { "primary " } else { "" }, polys(entries))
        }
        Witness::NoSyzygy { degree, .. } => format!("no syzygy of total degree {degree}"),
        Witness::Inequality { lhs, rel, rhs, text } => format!("{lhs} {} {rhs}  ({text})", rel.symbol()),
        Witness::CechClass { h, fi, a, fj, b, vanishes } => format!(
            "class of {h} / (({fi})^{a} ({fj})^{b}) {}",
            if *vanishes { "vanishes" } else { "is nonzero" }
        ),
        Witness::FrobeniusMembership { element, q, member, .. } => {
            format!("({element})^{q} {} the {q}-th Frobenius power of the ideal", if *member { "lies in" } else { "is not in" })
        }
        Witness::Structural(Fact::PowerGenerators { gens, a }) => format!("generators ({}) are the {a}-th powers of x, y, z", polys(gens)),
        Witness::Structural(Fact::DiagonalCurve) => "the curve equation is diagonal".into(),
        Witness::Structural(Fact::Characteristic(p)) => format!("characteristic {p}"),
        Witness::PullBack { e, q, inner } => format!("pulled back by Frobenius (e = {e}, q = {q}): {}", inner.rule),
    }
}

fn cert_text(out: &mut String, c: &Certificate, indent: &str) {
    let _ = writeln!(out, "{indent}rule {}: {}", c.rule, c.anchor);
    for w in &c.witnesses {
        let _ = writeln!(out, "{indent}  - {}", witness_text(w));
        if let Witness::PullBack { inner, .. } = w {
            cert_text(out, inner, &format!("{indent}    "));
        }
    }
}

fn oracle_json(o: &FrobeniusBound) -> Value {
    match o {
        FrobeniusBound::InFrobeniusClosure { e } => json!({ "result": "InFrobeniusClosure", "e": e }),
        FrobeniusBound::Inconclusive { e_tested, budget_hit } => {
            json!({ "result": "Inconclusive", "e_tested": e_tested, "budget_hit": budget_hit })
        }
    }
}

fn oracle_text(o: &FrobeniusBound) -> String {
    match o {
        FrobeniusBound::InFrobeniusClosure { e } => format!("in the Frobenius closure (e = {e})"),
        FrobeniusBound::Inconclusive { e_tested, budget_hit } => {
            format!("inconclusive up to e = {e_tested}{}", if *budget_hit { " (size budget reached)" } else { "" })
        }
    }
}

fn verdict_line(v: &Verdict) -> String {
    format!("{}: {} [{}]{}", v.element, v.status, v.caveat, if v.definite { "" } else { " conditional" })
}

pub fn analyze(a: &RunArgs) -> Res<Outcome> {
    let s = setup(a)?;
    let (lo, hi) = parse_degrees(a.degrees.as_deref(), (0, s.gens.degree_sum()))?;
    let eng = engine(&s, a)?;
    let report = eng.degree_profile(lo, hi)?;
    let dims: Vec<(i64, usize)> = (lo..=hi).map(|k| (k, eng.rules().syz_dim(k))).collect();
    let oracle = if s.field.characteristic() > 0 { analyze_oracle(&s.gens, &report, a.emax)? } else { Vec::new() };
    let unknown = report.rows.iter().filter(|r| r.kind == DegreeKind::Unknown).count();
    let unknown_dominant = 2 * unknown >= report.rows.len().max(1);
    let text = match a.format {
        Format::Json => {
            let mut m = base_json(&s, a, "analyze");
            m.insert("degrees".into(), json!([lo, hi]));
            m.insert("syzygy_table".into(), syz_table(&s.gens, &dims));
            m.insert("certificates".into(), Value::Array(report.certificates().iter().map(Certificate::to_json).collect()));
            m.insert("degree_table".into(), report.degree_table_json());
            m.insert("oracle".into(), Value::Array(oracle.iter().map(OracleCheck::to_json).collect()));
            m.insert("analysis".into(), report.to_json());
            render_json(m)
        }
        Format::Text => analyze_text(&s, &report, &dims, &oracle),
    };
    Ok(Outcome { text, unknown_dominant, strict: a.strict })
}

fn analyze_oracle(gens: &IdealGens, report: &DecisionReport, e_max: u32) -> Res<Vec<OracleCheck>> {
    let mut out = Vec::new();
    for v in report.element_verdicts().filter(|v| !v.definite).take(ORACLE_LIMIT) {
        out.push(oracle_check(gens, v, e_max)?);
    }
    Ok(out)
}

fn analyze_text(s: &Setup, report: &DecisionReport, dims: &[(i64, usize)], oracle: &[OracleCheck]) -> String {
    let mut out = header(s);
    let _ = writeln!(out, "syzygy sheaf: {} ({})", report.semistability.0.name(), report.semistability.1.rule);
    if let Some(k0) = report.min_degree {
        let _ = writeln!(out, "minimal syzygy degree {k0}");
    }
    if let Some(p) = &report.primary {
        let _ = writeln!(out, "primary syzygy ({}) of total degree {}", p.entries_text(), p.total_degree);
    }
    let _ = writeln!(out, "\nsyzygy dimensions:");
    for (k, d) in dims {
        let _ = writeln!(out, "  k = {k:>3}  dim {d}");
    }
    let _ = writeln!(out, "\ndegree table:");
    for r in &report.rows {
        let caveat = r.caveat.map(|c| format!(" [{c}]")).unwrap_or_default();
        let rule = r.cert.as_ref().map(|c| format!("  {}", c.rule)).unwrap_or_default();
        let _ = writeln!(out, "  m = {:>3}  {:<11}{caveat}{rule}", r.m, r.kind.name());
        if r.kind == DegreeKind::ElementWise || r.kind == DegreeKind::Unknown {
            for v in &r.elements {
                let _ = writeln!(out, "      {}", verdict_line(v));
            }
        }
    }
    if !report.notes.is_empty() {
        let _ = writeln!(out, "\nnotes:");
        for c in &report.notes {
            cert_text(&mut out, c, "  ");
        }
    }
    if !oracle.is_empty() {
        let _ = writeln!(out, "\nFrobenius oracle:");
        for o in oracle {
            let _ = writeln!(out, "  {}: {}", o.element, oracle_text(&o.oracle));
        }
    }
    out
}

pub fn decide(a: &RunArgs) -> Res<Outcome> {
    let s = setup(a)?;
    let f0 = element(a, s.field)?;
    let eng = engine(&s, a)?;
    let v = eng.decide(&f0)?;
    let oracle = if s.field.characteristic() > 0 && v.status != Status::InIdeal {
        Some(frobenius_closure_lower_bound(&s.gens, &f0, a.emax)?)
    } else {
        None
    };
    let text = match a.format {
        Format::Json => {
            let mut m = base_json(&s, a, "decide");
            m.insert("syzygy_table".into(), syz_table(&s.gens, &eng.rules().known_dims()));
            m.insert("certificates".into(), json!([v.cert.to_json()]));
            m.insert("verdict".into(), v.to_json());
            if let Some(o) = &oracle {
                m.insert("oracle".into(), json!([{ "element": f0.to_string(), "oracle": oracle_json(o) }]));
            }
            render_json(m)
        }
        Format::Text => {
            let mut out = header(&s);
            let _ = writeln!(out, "{}", verdict_line(&v));
            cert_text(&mut out, &v.cert, "  ");
            if let Some(o) = &oracle {
                let _ = writeln!(out, "Frobenius oracle: {}", oracle_text(o));
            }
            out
        }
    };
    Ok(Outcome { text, unknown_dominant: v.status == Status::Unknown, strict: a.strict })
}

pub fn syzygies(a: &RunArgs) -> Res<Outcome> {
    let s = setup(a)?;
    let (lo, hi) = parse_degrees(a.degrees.as_deref(), (0, s.gens.degree_sum()))?;
    let eng = engine(&s, a)?;
    let dims: Vec<(i64, usize)> = (lo..=hi).map(|k| (k, syzygy_dim(&s.gens, k))).collect();
    let rules = eng.rules();
    let text = match a.format {
        Format::Json => {
            let mut m = base_json(&s, a, "syzygies");
            m.insert("degrees".into(), json!([lo, hi]));
            m.insert("syzygy_table".into(), syz_table(&s.gens, &dims));
            m.insert("min_syzygy_degree".into(), json!(rules.min_degree));
            m.insert(
                "primary_syzygy".into(),
                json!(rules.primary.as_ref().map(|p| json!({ "degree": p.total_degree, "entries": p.entries_text() }))),
            );
            render_json(m)
        }
        Format::Text => {
            let mut out = header(&s);
            for (k, d) in &dims {
                let koszul = koszul_basis(&s.gens, *k).ok().map(|x| format!("  koszul {}", x.dim())).unwrap_or_default();
                let _ = writeln!(out, "k = {k:>3}  dim {d}{koszul}");
            }
            match rules.min_degree {
                Some(k0) => {
                    let _ = writeln!(out, "minimal syzygy degree {k0}");
                }
                None => {
                    let _ = writeln!(out, "no syzygy up to degree {}", s.gens.degree_sum());
                }
            }
            if let Some(p) = &rules.primary {
                let _ = writeln!(out, "primary syzygy ({}) of total degree {}", p.entries_text(), p.total_degree);
            }
            out
        }
    };
    Ok(Outcome { text, unknown_dominant: false, strict: a.strict })
}

pub fn frobtest(a: &RunArgs) -> Res<Outcome> {
    let s = setup(a)?;
    let f0 = element(a, s.field)?;
    let p = s.field.characteristic();
    if p == 0 {
        return Err(Failure::Input("frobtest needs a positive characteristic".into()));
    }
    let mut rows = Vec::new();
    for e in 0..=a.emax {
        let q = p.checked_pow(e).filter(|&q| q <= u32::MAX as u64);
        let member = match q {
            Some(q) if num_monomials(f0.degree() * q as i64) <= MONOMIAL_BUDGET => Some(frobenius_power_membership(&s.gens, &f0, e)?),
            _ => None,
        };
        rows.push((e, q, member));
    }
    let bound = frobenius_closure_lower_bound(&s.gens, &f0, a.emax)?;
    let text = match a.format {
        Format::Json => {
            let mut m = base_json(&s, a, "frobtest");
            let table: Vec<Value> =
                rows.iter().map(|(e, q, member)| json!({ "e": e, "q": q, "member": member, "skipped": member.is_none() })).collect();
            m.insert(
                "oracle".into(),
                json!([{ "element": f0.to_string(), "powers": table, "oracle": oracle_json(&bound) }]),
            );
            render_json(m)
        }
        Format::Text => {
            let mut out = header(&s);
            for (e, q, member) in &rows {
                let q = q.map_or("-".to_string(), |q| q.to_string());
                let res = match member {
                    Some(true) => "member",
                    Some(false) => "not a member",
                    None => "skipped (size budget)",
                };
                let _ = writeln!(out, "e = {e}  q = {q}  ({f0})^q: {res}");
            }
            let _ = writeln!(out, "Frobenius closure: {}", oracle_text(&bound));
            out
        }
    };
    Ok(Outcome { text, unknown_dominant: matches!(bound, FrobeniusBound::Inconclusive { .. }), strict: a.strict })
}

pub fn scan(a: &ScanArgs) -> Res<Outcome> {
    let primes: Vec<u64> = parse_list("primes", &a.primes)?;
    for &p in &primes {
        FieldSpec::prime(p).map_err(|e| Failure::Input(format!("--primes: {e}")))?;
    }
    let deltas: Vec<u32> = parse_list("deltas", &a.deltas)?;
    let powers: Vec<u32> = parse_list("powers", &a.powers)?;
    let degrees = match &a.degrees {
        Some(t) => Some(parse_degrees(Some(t), (0, 0))?),
        None => None,
    };
    let grid = ScanGrid { primes, deltas, powers, degrees, e_max: a.emax, seed: a.seed };
    let mut file = match &a.output {
        Some(path) => Some(std::fs::File::create(path).map_err(|e| Failure::Input(format!("--output: {e}")))?),
        None => None,
    };
    let mut write_err = None;
    let cells = run_scan(&grid, |cell| {
        let line = format!("{}\n", cell.to_json());
        let r = match file.as_mut() {
            Some(f) => f.write_all(line.as_bytes()).and_then(|_| f.flush()),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(line.as_bytes()).and_then(|_| out.flush())
            }
        };
        if let Err(e) = r {
            write_err.get_or_insert(e.to_string());
        }
    })?;
    if let Some(e) = write_err {
        return Err(Failure::Internal(format!("writing scan output: {e}")));
    }
    let inconsistent = cells.iter().filter(|c| !c.consistent()).count();
    let text = if a.output.is_some() {
        format!("{} cells written, {} inconsistent with the Frobenius oracle\n", cells.len(), inconsistent)
    } else {
        String::new()
    };
    Ok(Outcome { text, unknown_dominant: inconsistent > 0, strict: false })
}
