//! Verdict engine for membership in the tight (solid) closure of a primary
//! ideal `(f_1, ..., f_n) ⊂ R`.
//!
//! Every rule produces a [`Certificate`] whose witnesses can be re-checked
//! by [`verify_certificate`] without trusting the rule that emitted it.

mod engine;
mod rules;

pub use engine::{DecisionReport, DegreeKind, DegreeRow, Engine, EngineConfig};
pub use rules::{
    bastel_construct, exact_sequence_decide, exclusion_bound_no_syzygy, hm_ampleness_rule, inclusion_bound_no_syzygy,
    parameter_closure, primary_syzygy_rules, semistability_certificate, semistable_closure_rule, slope_bounds,
    smith_bounds, xa_rules, Bastel, Extension, RuleSet, Semistability, SlopeBound, SlopeBounds,
};

use crate::cohomology::cech_class_vanishes;
use crate::curvering::{ideal_membership, verify_membership, CurveRing, IdealGens};
use crate::error::Result;
use crate::polyspace::HomPoly;
use crate::syzygy::{is_primary_syzygy, syzygy_dim, SyzygyVec};
use num_rational::BigRational;
use serde_json::{json, Value};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Caveat {
    DefiniteForGivenP,
    Char0OrLargeP,
    Char0Only,
    AlsoPlusClosure,
    FrobeniusClosure,
}

impl Caveat {
    pub fn text(self) -> &'static str {
        match self {
            Caveat::DefiniteForGivenP => "valid at this p",
            Caveat::Char0OrLargeP => "char 0 or p >> 0",
            Caveat::Char0Only => "char 0 only",
            Caveat::AlsoPlusClosure => "also plus closure",
            Caveat::FrobeniusClosure => "Frobenius closure",
        }
    }

    /// Whether the statement is proven for the characteristic at hand.
    pub fn is_definite(self, characteristic: u64) -> bool {
        characteristic == 0
            || matches!(self, Caveat::DefiniteForGivenP | Caveat::AlsoPlusClosure | Caveat::FrobeniusClosure)
    }

    pub fn name(self) -> &'static str {
        match self {
            Caveat::DefiniteForGivenP => "DefiniteForGivenP",
            Caveat::Char0OrLargeP => "Char0OrLargeP",
            Caveat::Char0Only => "Char0Only",
            Caveat::AlsoPlusClosure => "AlsoPlusClosure",
            Caveat::FrobeniusClosure => "FrobeniusClosure",
        }
    }
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.text())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    InIdeal,
    InClosure,
    NotInClosure,
    Unknown,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::InIdeal => "InIdeal",
            Status::InClosure => "InClosure",
            Status::NotInClosure => "NotInClosure",
            Status::Unknown => "Unknown",
        }
    }

    /// `InIdeal` and `InClosure` both assert membership in the closure.
    pub fn in_closure(self) -> Option<bool> {
        match self {
            Status::InIdeal | Status::InClosure => Some(true),
            Status::NotInClosure => Some(false),
            Status::Unknown => None,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

impl Rel {
    pub fn holds(self, a: &BigRational, b: &BigRational) -> bool {
        match self {
            Rel::Lt => a < b,
            Rel::Le => a <= b,
            Rel::Eq => a == b,
            Rel::Ge => a >= b,
            Rel::Gt => a > b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
        }
    }
}

/// Facts about the input that a verifier can recheck by inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fact {
    /// The generators are `x^a, y^a, z^a` in some order.
    PowerGenerators { gens: Vec<HomPoly>, a: u32 },
    /// The curve equation is `αx^δ + βy^δ + γz^δ`.
    DiagonalCurve,
    Characteristic(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `element = Σ cofactors_i · gens_i` in `R`.
    Membership { element: HomPoly, gens: Vec<HomPoly>, cofactors: Vec<HomPoly> },
    NonMembership { element: HomPoly, gens: Vec<HomPoly> },
    Syzygy { gens: Vec<HomPoly>, entries: Vec<HomPoly>, degree: i64, primary: bool },
    NoSyzygy { gens: Vec<HomPoly>, degree: i64 },
    Inequality { lhs: BigRational, rel: Rel, rhs: BigRational, text: String },
    /// `[h / (f_i^a f_j^b)]` vanishes or not in `H¹(Y, O_Y(t))`.
    CechClass { h: HomPoly, fi: HomPoly, a: u32, fj: HomPoly, b: u32, vanishes: bool },
    FrobeniusMembership { element: HomPoly, gens: Vec<HomPoly>, q: u64, member: bool },
    Structural(Fact),
    /// The inner certificate concerns `f_0^q` over `(f_1^q, ..., f_n^q)`.
    PullBack { e: u32, q: u64, inner: Box<Certificate> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub rule: String,
    pub anchor: String,
    pub witnesses: Vec<Witness>,
}

impl Certificate {
    pub fn new(rule: &str, anchor: &str) -> Self {
        Certificate { rule: rule.into(), anchor: anchor.into(), witnesses: Vec::new() }
    }

    pub fn with(mut self, w: Witness) -> Self {
        self.witnesses.push(w);
        self
    }

    pub fn push(&mut self, w: Witness) {
        self.witnesses.push(w);
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rule": self.rule,
            "anchor": self.anchor,
            "witnesses": self.witnesses.iter().map(Witness::to_json).collect::<Vec<_>>(),
        })
    }
}

fn polys_json(ps: &[HomPoly]) -> Value {
    Value::Array(ps.iter().map(|p| Value::String(p.to_string())).collect())
}

impl Witness {
    pub fn inequality(lhs: BigRational, rel: Rel, rhs: BigRational, text: impl Into<String>) -> Self {
        Witness::Inequality { lhs, rel, rhs, text: text.into() }
    }

    pub fn syzygy(gens: &IdealGens, s: &SyzygyVec, primary: bool) -> Self {
        Witness::Syzygy { gens: gens.gens().to_vec(), entries: s.entries.clone(), degree: s.total_degree, primary }
    }

    pub fn no_syzygy(gens: &IdealGens, k: i64) -> Self {
        Witness::NoSyzygy { gens: gens.gens().to_vec(), degree: k }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Witness::Membership { element, gens, cofactors } => json!({
                "kind": "membership", "element": element.to_string(), "gens": polys_json(gens), "cofactors": polys_json(cofactors),
            }),
            Witness::NonMembership { element, gens } => json!({
                "kind": "non_membership", "element": element.to_string(), "gens": polys_json(gens),
            }),
            Witness::Syzygy { gens, entries, degree, primary } => json!({
                "kind": "syzygy", "gens": polys_json(gens), "entries": polys_json(entries), "degree": degree, "primary": primary,
            }),
            Witness::NoSyzygy { gens, degree } => json!({ "kind": "no_syzygy", "gens": polys_json(gens), "degree": degree }),
            Witness::Inequality { lhs, rel, rhs, text } => json!({
                "kind": "inequality", "lhs": lhs.to_string(), "rel": rel.symbol(), "rhs": rhs.to_string(), "text": text,
            }),
            Witness::CechClass { h, fi, a, fj, b, vanishes } => json!({
                "kind": "cech_class", "numerator": h.to_string(), "fi": fi.to_string(), "a": a, "fj": fj.to_string(), "b": b, "vanishes": vanishes,
            }),
            Witness::FrobeniusMembership { element, gens, q, member } => json!({
                "kind": "frobenius_membership", "element": element.to_string(), "gens": polys_json(gens), "q": q, "member": member,
            }),
            Witness::Structural(fact) => match fact {
                Fact::PowerGenerators { gens, a } => json!({ "kind": "power_generators", "gens": polys_json(gens), "a": a }),
                Fact::DiagonalCurve => json!({ "kind": "diagonal_curve" }),
                Fact::Characteristic(p) => json!({ "kind": "characteristic", "p": p }),
            },
            Witness::PullBack { e, q, inner } => json!({ "kind": "pull_back", "e": e, "q": q, "inner": inner.to_json() }),
        }
    }
}

/// One decision for a single element `f_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub element: HomPoly,
    pub status: Status,
    pub caveat: Caveat,
    pub cert: Certificate,
    /// Definite at the ring's characteristic (always true in char 0).
    pub definite: bool,
}

impl Verdict {
    pub fn new(element: &HomPoly, status: Status, caveat: Caveat, cert: Certificate) -> Self {
        let definite = caveat.is_definite(element.field().characteristic()) && status != Status::Unknown;
        Verdict { element: element.clone(), status, caveat, cert, definite }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "element": self.element.to_string(),
            "degree": self.element.degree(),
            "status": self.status.name(),
            "caveat": self.caveat.text(),
            "definite": self.definite,
            "certificate": self.cert.to_json(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl DegreeRange {
    pub fn at_least(m: i64) -> Self {
        DegreeRange { lo: Some(m), hi: None }
    }

    pub fn at_most(m: i64) -> Self {
        DegreeRange { lo: None, hi: Some(m) }
    }

    pub fn between(a: i64, b: i64) -> Self {
        DegreeRange { lo: Some(a), hi: Some(b) }
    }

    pub fn contains(&self, m: i64) -> bool {
        self.lo.is_none_or(|lo| m >= lo) && self.hi.is_none_or(|hi| m <= hi)
    }

    pub fn is_empty(&self) -> bool {
        matches!((self.lo, self.hi), (Some(a), Some(b)) if a > b)
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) => write!(f, "{a} <= m <= {b}"),
            (Some(a), None) => write!(f, "m >= {a}"),
            (None, Some(b)) => write!(f, "m <= {b}"),
            (None, None) => f.write_str("all m"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TemplateKind {
    /// `R_m ⊆ I*`.
    AllIn,
    /// `I* ∩ R_m = I ∩ R_m`.
    IffIdeal,
}

impl TemplateKind {
    pub fn name(self) -> &'static str {
        match self {
            TemplateKind::AllIn => "AllIn",
            TemplateKind::IffIdeal => "IffIdeal",
        }
    }
}

/// A statement about every element of `R_m` for `m` in a range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTemplate {
    pub range: DegreeRange,
    pub kind: TemplateKind,
    pub caveat: Caveat,
    pub cert: Certificate,
}

impl DegreeTemplate {
    pub fn new(range: DegreeRange, kind: TemplateKind, caveat: Caveat, cert: Certificate) -> Self {
        DegreeTemplate { range, kind, caveat, cert }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "range": self.range.to_string(),
            "kind": self.kind.name(),
            "caveat": self.caveat.text(),
            "certificate": self.cert.to_json(),
        })
    }
}

fn gens_of(ring: &CurveRing, gens: &[HomPoly]) -> Result<IdealGens> {
    IdealGens::with_primary(ring, gens.to_vec(), false)
}

/// Re-checks every witness of `cert` on `ring`. `Ok(false)` names a witness
/// that does not hold; errors mean the witness is malformed.
pub fn verify_certificate(ring: &CurveRing, cert: &Certificate) -> Result<bool> {
    for w in &cert.witnesses {
        if !verify_witness(ring, w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_witness(ring: &CurveRing, w: &Witness) -> Result<bool> {
    Ok(match w {
        Witness::Membership { element, gens, cofactors } => verify_membership(&gens_of(ring, gens)?, element, cofactors)?,
        Witness::NonMembership { element, gens } => !ideal_membership(&gens_of(ring, gens)?, element)?.member,
        Witness::Syzygy { gens, entries, degree, primary } => {
            let ig = gens_of(ring, gens)?;
            let s = SyzygyVec { entries: entries.clone(), total_degree: *degree };
            s.verify(&ig)? && !s.is_zero_in(ring)? && (!primary || is_primary_syzygy(&s, ring)?)
        }
        Witness::NoSyzygy { gens, degree } => syzygy_dim(&gens_of(ring, gens)?, *degree) == 0,
        Witness::Inequality { lhs, rel, rhs, .. } => rel.holds(lhs, rhs),
        Witness::CechClass { h, fi, a, fj, b, vanishes } => cech_class_vanishes(ring, h, fi, *a, fj, *b)? == *vanishes,
        Witness::FrobeniusMembership { element, gens, q, member } => {
            let qq = u32::try_from(*q).unwrap_or(u32::MAX);
            let p = ring.field().characteristic();
            if p == 0 || !is_power_of(*q, p) {
                return Ok(false);
            }
            let pulled: Vec<HomPoly> = gens.iter().map(|g| g.frobenius_power(qq)).collect();
            ideal_membership(&gens_of(ring, &pulled)?, &element.frobenius_power(qq))?.member == *member
        }
        Witness::Structural(fact) => match fact {
            Fact::PowerGenerators { gens, a } => gens_of(ring, gens)?.power_exponent() == Some(*a),
            Fact::DiagonalCurve => is_diagonal(ring),
            Fact::Characteristic(p) => ring.field().characteristic() == *p,
        },
        Witness::PullBack { e, q, inner } => {
            let p = ring.field().characteristic();
            p > 0 && p.checked_pow(*e) == Some(*q) && verify_certificate(ring, inner)?
        }
    })
}

fn is_power_of(q: u64, p: u64) -> bool {
    let mut x = 1u64;
    while x < q {
        x = x.saturating_mul(p);
    }
    x == q
}

/// `αx^δ + βy^δ + γz^δ` with all three coefficients nonzero.
pub fn is_diagonal(ring: &CurveRing) -> bool {
    let f = ring.equation();
    let d = ring.delta();
    f.num_terms() == 3
        && f.terms().all(|(m, _)| (0..3).any(|v| m.exponent(v) == d))
}
