//! Orchestration: fixed rule priority, per-element decisions and per-degree
//! profiles.

use super::rules::{
    exact_sequence_decide, exclusion_bound_no_syzygy, inclusion_bound_no_syzygy, non_member_witness, parameter_closure,
    primary_syzygy_rules, semistability_certificate, semistable_closure_rule, slope_bounds, smith_bounds, xa_rules, RuleSet,
    Semistability, SlopeBounds,
};
use super::{Caveat, Certificate, DegreeRange, DegreeTemplate, Rel, Status, TemplateKind, Verdict, Witness};
use crate::cohomology::ForcingClass;
use crate::curvering::{ideal_graded_piece, ideal_membership, IdealGens};
use crate::error::Result;
use crate::exactfield::{below_rational, floor_rational};
use crate::frobenius::{frobenius_closure_lower_bound, frobenius_pullback_problem, FrobeniusBound, FrobeniusProblem, MONOMIAL_BUDGET};
use crate::polyspace::{num_monomials, HomPoly};
use crate::syzygy::{find_primary_syzygy, minimal_syzygy_degree, SyzygyVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::cell::RefCell;
use std::collections::BTreeMap;

/// Order in which rule families are consulted; recorded in every report.
pub const RULE_PRIORITY: [&str; 9] = [
    "ideal-membership",
    "parameter-closure",
    "primary-syzygy",
    "semistable-closure",
    "power-ideal",
    "no-syzygy-bounds",
    "degree-bounds",
    "frobenius-pullback",
    "frobenius-oracle",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineConfig {
    pub seed: u64,
    pub e_max: u32,
    /// Random combinations tried per degree when looking for a primary syzygy.
    pub trials: usize,
    /// Degrees whose quotient `R_m / I_m` is larger than this are not
    /// decided element by element.
    pub element_limit: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { seed: 0, e_max: 3, trials: 16, element_limit: 60 }
    }
}

#[derive(Debug, Clone)]
struct Pulled {
    problem: FrobeniusProblem,
    primary: Option<SyzygyVec>,
}

/// Decision engine for one ideal.
#[derive(Debug)]
pub struct Engine {
    gens: IdealGens,
    cfg: EngineConfig,
    rules: RuleSet,
    semistability: (Semistability, Certificate),
    slopes: SlopeBounds,
    templates: Vec<DegreeTemplate>,
    notes: Vec<Certificate>,
    pulled: RefCell<BTreeMap<u32, Option<Pulled>>>,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Engine {
    pub fn new(gens: &IdealGens, cfg: EngineConfig) -> Result<Self> {
        let rules = RuleSet::new(gens, cfg.seed, cfg.trials)?;
        let n = gens.len();
        let semistability = if n == 3 && gens.is_primary() {
            semistability_certificate(&rules)
        } else {
            (Semistability::Unknown, Certificate::new("semistability/not-applicable", "needs a primary ideal with three generators"))
        };
        let slopes = slope_bounds(&rules);
        let mut templates = Vec::new();
        let mut notes = Vec::new();
        if gens.is_primary() {
            if n == 2 {
                templates.extend(parameter_closure(gens)?);
            }
            if n == 3 {
                if let Some(s) = &rules.primary {
                    let (t, nn) = primary_syzygy_rules(&rules, s)?;
                    templates.extend(t);
                    notes.extend(nn);
                }
                if let Ok(t) = semistable_closure_rule(&rules, semistability.0, &semistability.1) {
                    templates.extend(t);
                }
                if let Some(out) = xa_rules(&rules)? {
                    templates.extend(out.templates);
                    notes.extend(out.notes);
                }
                if let Some(k0) = rules.min_degree {
                    let k = (k0 - 1).min(floor_rational(&(rules.half() + rules.genus_ratio())));
                    if let Ok(t) = inclusion_bound_no_syzygy(&rules, k) {
                        templates.push(t);
                    }
                }
            }
            if n >= 2 {
                if let Some(k0) = rules.min_degree {
                    if let Ok(t) = exclusion_bound_no_syzygy(&rules, k0 - 1) {
                        templates.push(t);
                    }
                }
            }
            if let Some(t) = slope_exclusion(&rules, &slopes) {
                templates.push(t);
            }
            templates.extend(smith_bounds(gens));
        }
        Ok(Engine { gens: gens.clone(), cfg, rules, semistability, slopes, templates, notes, pulled: RefCell::new(BTreeMap::new()) })
    }

    pub fn gens(&self) -> &IdealGens {
        &self.gens
    }

    pub fn config(&self) -> &EngineConfig {
        &self.cfg
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    pub fn semistability(&self) -> &(Semistability, Certificate) {
        &self.semistability
    }

    pub fn slopes(&self) -> &SlopeBounds {
        &self.slopes
    }

    /// Degree templates in priority order.
    pub fn templates(&self) -> &[DegreeTemplate] {
        &self.templates
    }

    pub fn notes(&self) -> &[Certificate] {
        &self.notes
    }

    fn characteristic(&self) -> u64 {
        self.gens.ring().field().characteristic()
    }

    fn template_verdict(&self, fc: &ForcingClass, t: &DegreeTemplate) -> Verdict {
        let mut cert = t.cert.clone();
        let status = match t.kind {
            TemplateKind::AllIn => Status::InClosure,
            TemplateKind::IffIdeal => {
                cert.push(non_member_witness(fc));
                Status::NotInClosure
            }
        };
        let m = fc.degree();
        if let Some(lo) = t.range.lo {
            cert.push(Witness::inequality(int(m), Rel::Ge, int(lo), format!("m >= {lo}")));
        }
        if let Some(hi) = t.range.hi {
            cert.push(Witness::inequality(int(m), Rel::Le, int(hi), format!("m <= {hi}")));
        }
        Verdict::new(&fc.f0, status, t.caveat, cert)
    }

    /// Every verdict the non-Frobenius rules produce for `f_0`, in priority
    /// order. Empty when `f_0` lies in the ideal (see [`Engine::decide`]).
    pub fn candidates(&self, f0: &HomPoly) -> Result<Vec<Verdict>> {
        let fc = ForcingClass::new(&self.gens, f0.clone())?;
        if ideal_membership(&self.gens, f0)?.member {
            return Ok(Vec::new());
        }
        self.candidates_for(&fc)
    }

    fn candidates_for(&self, fc: &ForcingClass) -> Result<Vec<Verdict>> {
        let mut out = Vec::new();
        if !self.gens.is_primary() {
            return Ok(out);
        }
        let m = fc.degree();
        let mut templates = self.templates.iter().filter(|t| t.range.contains(m)).peekable();
        // parameter closure comes before the syzygy rules
        while let Some(t) = templates.next_if(|t| t.cert.rule.starts_with("parameters/")) {
            out.push(self.template_verdict(fc, t));
        }
        if self.gens.len() == 3 {
            if let Some(s) = &self.rules.primary {
                let v = exact_sequence_decide(fc, s)?;
                if v.status != Status::Unknown {
                    out.push(v);
                }
            }
        }
        for t in templates {
            out.push(self.template_verdict(fc, t));
        }
        Ok(out)
    }

    /// Decides `f_0 ∈ (f_1, ..., f_n)*`. The first definite verdict in
    /// priority order wins; otherwise the Frobenius routes are tried, then
    /// the best conditional verdict is returned.
    pub fn decide(&self, f0: &HomPoly) -> Result<Verdict> {
        let fc = ForcingClass::new(&self.gens, f0.clone())?;
        let mem = ideal_membership(&self.gens, f0)?;
        if mem.member {
            let cert = Certificate::new("ideal-membership", "f_0 lies in the ideal").with(Witness::Membership {
                element: f0.clone(),
                gens: self.gens.gens().to_vec(),
                cofactors: mem.cofactors.unwrap_or_default(),
            });
            return Ok(Verdict::new(f0, Status::InIdeal, Caveat::DefiniteForGivenP, cert));
        }
        let cands = self.candidates_for(&fc)?;
        if let Some(v) = cands.iter().find(|v| v.definite) {
            return Ok(v.clone());
        }
        let p = self.characteristic();
        if p > 0 && self.gens.is_primary() {
            if self.gens.len() == 3 {
                if let Some(v) = self.pullback_decide(&fc)? {
                    return Ok(v);
                }
            }
            if let FrobeniusBound::InFrobeniusClosure { e } = frobenius_closure_lower_bound(&self.gens, f0, self.cfg.e_max)? {
                let q = p.pow(e);
                let cert = Certificate::new("frobenius-oracle", "f_0^q lies in the q-th Frobenius power of the ideal").with(
                    Witness::FrobeniusMembership { element: f0.clone(), gens: self.gens.gens().to_vec(), q, member: true },
                );
                return Ok(Verdict::new(f0, Status::InClosure, Caveat::FrobeniusClosure, cert));
            }
        }
        let pick = if p > 0 {
            cands.iter().find(|v| v.caveat == Caveat::Char0OrLargeP).or_else(|| cands.first())
        } else {
            cands.first()
        };
        if let Some(v) = pick {
            return Ok(v.clone());
        }
        let diag = format!(
            "no rule applies; minimal syzygy degree {}; primary syzygy {}; rule order {}",
            self.rules.min_degree.map_or("none".to_string(), |k| k.to_string()),
            self.rules.primary.as_ref().map_or("none".to_string(), |s| format!("at {}", s.total_degree)),
            RULE_PRIORITY.join(" > "),
        );
        let cert = Certificate::new("undecided", &diag).with(non_member_witness(&fc));
        Ok(Verdict::new(f0, Status::Unknown, Caveat::Char0OrLargeP, cert))
    }

    fn pulled_context(&self, e: u32) -> Result<Option<Pulled>> {
        if let Some(c) = self.pulled.borrow().get(&e) {
            return Ok(c.clone());
        }
        let p = self.characteristic();
        let q = p.pow(e) as i64;
        let d = self.gens.degree_sum() * q;
        let ctx = if num_monomials(d) > MONOMIAL_BUDGET {
            None
        } else {
            let problem = frobenius_pullback_problem(&self.gens, e)?;
            let mut primary = None;
            if let Some(k0) = minimal_syzygy_degree(&problem.pulled, Some(d)) {
                for k in k0..=(k0 + 3).min(d) {
                    if let Some(s) = find_primary_syzygy(&problem.pulled, k, self.cfg.trials, self.cfg.seed)? {
                        primary = Some(s);
                        break;
                    }
                }
            }
            Some(Pulled { problem, primary })
        };
        self.pulled.borrow_mut().insert(e, ctx.clone());
        Ok(ctx)
    }

    /// Runs the exact-sequence decision on `f_0^q` over `(f_i^q)`; a definite
    /// answer there transfers back to `f_0`.
    fn pullback_decide(&self, fc: &ForcingClass) -> Result<Option<Verdict>> {
        for e in 1..=self.cfg.e_max {
            let Some(ctx) = self.pulled_context(e)? else { break };
            let Some(s) = &ctx.primary else { continue };
            let fq = ctx.problem.pull_element(&fc.f0);
            let pfc = ForcingClass::new(&ctx.problem.pulled, fq)?;
            let inner = exact_sequence_decide(&pfc, s)?;
            if !inner.definite {
                continue;
            }
            let (status, caveat) = match inner.status {
                Status::InIdeal => (Status::InClosure, Caveat::FrobeniusClosure),
                st => (st, inner.caveat),
            };
            let cert = Certificate::new("frobenius-pullback", "decision for f_0^q over the q-th Frobenius power of the ideal")
                .with(non_member_witness(fc))
                .with(Witness::PullBack { e, q: ctx.problem.q as u64, inner: Box::new(inner.cert) });
            return Ok(Some(Verdict::new(&fc.f0, status, caveat, cert)));
        }
        Ok(None)
    }

    /// Per-degree summary for `lo <= m <= hi`.
    pub fn degree_profile(&self, lo: i64, hi: i64) -> Result<DecisionReport> {
        let mut rows = Vec::new();
        for m in lo.max(0)..=hi {
            rows.push(self.degree_row(m)?);
        }
        Ok(DecisionReport {
            characteristic: self.characteristic(),
            rows,
            semistability: self.semistability.clone(),
            slopes: self.slopes.clone(),
            notes: self.notes.clone(),
            templates: self.templates.clone(),
            syzygy_table: self.rules.known_dims(),
            min_degree: self.rules.min_degree,
            primary: self.rules.primary.clone(),
            seed: self.cfg.seed,
        })
    }

    fn quotient_basis(&self, m: i64) -> (usize, Vec<HomPoly>) {
        let piece = ideal_graded_piece(&self.gens, m);
        let codim = piece.codim();
        if codim > self.cfg.element_limit {
            return (codim, Vec::new());
        }
        let std = self.gens.ring().std_basis(m);
        let field = self.gens.ring().field();
        let basis = piece.non_pivots().into_iter().map(|j| HomPoly::monomial(field, std[j])).collect();
        (codim, basis)
    }

    fn degree_row(&self, m: i64) -> Result<DegreeRow> {
        let p = self.characteristic();
        let (codim, basis) = self.quotient_basis(m);
        let applicable: Vec<&DegreeTemplate> = self.templates.iter().filter(|t| t.range.contains(m)).collect();
        let row = |kind, caveat: Option<Caveat>, cert: Option<Certificate>, elements| DegreeRow {
            m,
            kind,
            definite: caveat.is_some_and(|c| c.is_definite(p)),
            caveat,
            cert,
            codim,
            elements,
        };
        let synth = |t: &DegreeTemplate| -> Result<Vec<Verdict>> {
            basis
                .iter()
                .map(|f| Ok(self.template_verdict(&ForcingClass::new(&self.gens, f.clone())?, t)))
                .collect()
        };
        if let Some(t) = applicable.iter().find(|t| t.caveat.is_definite(p)) {
            let kind = if t.kind == TemplateKind::AllIn { DegreeKind::AllIn } else { DegreeKind::IffIdeal };
            return Ok(row(kind, Some(t.caveat), Some(t.cert.clone()), synth(t)?));
        }
        if codim == 0 {
            let cert = Certificate::new("ideal-piece-full", "the ideal contains all of R_m");
            return Ok(row(DegreeKind::AllIn, Some(Caveat::DefiniteForGivenP), Some(cert), Vec::new()));
        }
        let elements: Vec<Verdict> = basis.iter().map(|f| self.decide(f)).collect::<Result<_>>()?;
        let all_in = !elements.is_empty() && elements.iter().all(|v| v.definite && v.status.in_closure() == Some(true));
        if all_in {
            let cert = Certificate::new("element-wise/all-in", "every element of a quotient basis lies in the closure");
            return Ok(row(DegreeKind::AllIn, Some(Caveat::DefiniteForGivenP), Some(cert), elements));
        }
        if elements.iter().any(|v| v.definite) {
            return Ok(row(DegreeKind::ElementWise, None, None, elements));
        }
        let conditional = if p > 0 {
            applicable.iter().find(|t| t.caveat == Caveat::Char0OrLargeP).or_else(|| applicable.first())
        } else {
            applicable.first()
        };
        if let Some(t) = conditional {
            let kind = if t.kind == TemplateKind::AllIn { DegreeKind::AllIn } else { DegreeKind::IffIdeal };
            return Ok(row(kind, Some(t.caveat), Some(t.cert.clone()), elements));
        }
        if elements.iter().any(|v| v.status != Status::Unknown) {
            return Ok(row(DegreeKind::ElementWise, None, None, elements));
        }
        Ok(row(DegreeKind::Unknown, None, None, elements))
    }

    /// Every template statement about degree `m`, each as a verdict for `f_0`.
    pub fn all_verdicts(&self, f0: &HomPoly) -> Result<Vec<Verdict>> {
        self.candidates(f0)
    }
}

/// `f_0 ∉ I*` when `mδ < μ_min` lower bound.
fn slope_exclusion(rules: &RuleSet, slopes: &SlopeBounds) -> Option<DegreeTemplate> {
    let lower = slopes.mu_min_lower.as_ref()?;
    let t = &lower.value / int(rules.delta());
    let top = below_rational(&t);
    let c = Certificate::new("slope/minimal-slope-exclusion", "m δ below a lower bound for the minimal slope of Syz(0)^dual")
        .with(Witness::no_syzygy(&rules.gens, rules.min_degree? - 1))
        .with(Witness::inequality(int(top * rules.delta()), Rel::Lt, lower.value.clone(), "m δ < lower bound for μ_min"));
    Some(DegreeTemplate::new(DegreeRange::at_most(top), TemplateKind::IffIdeal, Caveat::Char0OrLargeP, c))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeKind {
    AllIn,
    IffIdeal,
    ElementWise,
    Unknown,
}

impl DegreeKind {
    pub fn name(self) -> &'static str {
        match self {
            DegreeKind::AllIn => "AllIn",
            DegreeKind::IffIdeal => "IffIdeal",
            DegreeKind::ElementWise => "ElementWise",
            DegreeKind::Unknown => "Unknown",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DegreeRow {
    pub m: i64,
    pub kind: DegreeKind,
    pub caveat: Option<Caveat>,
    pub definite: bool,
    pub cert: Option<Certificate>,
    /// `dim R_m / I_m`.
    pub codim: usize,
    /// Verdicts for a monomial basis of `R_m / I_m` (empty above the
    /// element limit).
    pub elements: Vec<Verdict>,
}

impl DegreeRow {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "kind": self.kind.name(),
            "caveat": self.caveat.map(|c| c.text()),
            "definite": self.definite,
            "rule": self.cert.as_ref().map(|c| c.rule.clone()),
            "codim": self.codim,
            "elements": self.elements.iter().map(|v| json!({
                "element": v.element.to_string(),
                "status": v.status.name(),
                "caveat": v.caveat.text(),
                "definite": v.definite,
                "rule": v.cert.rule,
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct DecisionReport {
    pub characteristic: u64,
    pub rows: Vec<DegreeRow>,
    pub semistability: (Semistability, Certificate),
    pub slopes: SlopeBounds,
    pub notes: Vec<Certificate>,
    pub templates: Vec<DegreeTemplate>,
    pub syzygy_table: Vec<(i64, usize)>,
    pub min_degree: Option<i64>,
    pub primary: Option<SyzygyVec>,
    pub seed: u64,
}

impl DecisionReport {
    pub fn row(&self, m: i64) -> Option<&DegreeRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    pub fn element_verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.rows.iter().flat_map(|r| r.elements.iter())
    }

    /// Smallest `m` from which every listed row is `AllIn`.
    pub fn all_in_from(&self) -> Option<i64> {
        let mut from = None;
        for r in self.rows.iter().rev() {
            if r.kind == DegreeKind::AllIn {
                from = Some(r.m);
            } else {
                break;
            }
        }
        from
    }

    /// Largest `m` up to which every listed row is `IffIdeal`.
    pub fn iff_ideal_to(&self) -> Option<i64> {
        let mut to = None;
        for r in &self.rows {
            if r.kind == DegreeKind::IffIdeal {
                to = Some(r.m);
            } else {
                break;
            }
        }
        to
    }

    /// Distinct certificates used by the rows, in first-use order.
    pub fn certificates(&self) -> Vec<Certificate> {
        let mut out: Vec<Certificate> = Vec::new();
        let mut push = |c: &Certificate| {
            if !out.contains(c) {
                out.push(c.clone());
            }
        };
        push(&self.semistability.1);
        for r in &self.rows {
            if let Some(c) = &r.cert {
                push(c);
            }
            for v in &r.elements {
                if r.cert.is_none() {
                    push(&v.cert);
                }
            }
        }
        for c in &self.notes {
            push(c);
        }
        out
    }

    pub fn degree_table_json(&self) -> Value {
        Value::Array(self.rows.iter().map(DegreeRow::to_json).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "semistability": { "result": self.semistability.0.name(), "certificate": self.semistability.1.to_json() },
            "slopes": self.slopes.to_json(),
            "min_syzygy_degree": self.min_degree,
            "primary_syzygy": self.primary.as_ref().map(|s| json!({ "degree": s.total_degree, "entries": s.entries_text() })),
            "templates": self.templates.iter().map(DegreeTemplate::to_json).collect::<Vec<_>>(),
            "notes": self.notes.iter().map(Certificate::to_json).collect::<Vec<_>>(),
            "degree_table": self.degree_table_json(),
            "rule_priority": RULE_PRIORITY,
            "seed": self.seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::verify_certificate;
    use super::*;
    use crate::curvering::make_curve;
    use crate::exactfield::FieldSpec;
    use crate::parse::{parse_poly, parse_poly_list};

    fn engine(curve: &str, ideal: &str, p: u64) -> Engine {
        let f = FieldSpec::new(p).unwrap();
        let r = make_curve(&parse_poly(curve, f).unwrap(), f).unwrap();
        let ig = IdealGens::new(&r, parse_poly_list(ideal, f).unwrap()).unwrap();
        Engine::new(&ig, EngineConfig { seed: 11, ..EngineConfig::default() }).unwrap()
    }

    fn el(e: &Engine, s: &str) -> HomPoly {
        parse_poly(s, e.gens().ring().field()).unwrap()
    }

    #[test]
    fn fermat_cubic_xyz() {
        for p in [0, 5, 7, 11, 13] {
            let e = engine("x^3+y^3+z^3", "x^2,y^2,z^2", p);
            let v = e.decide(&el(&e, "x*y*z")).unwrap();
            assert_eq!(v.status, Status::InClosure, "p = {p}");
            assert!(v.definite);
            assert_eq!(v.cert.rule, "primary-syzygy/strongly-semistable");
            assert!(verify_certificate(e.gens().ring(), &v.cert).unwrap());
        }
    }

    #[test]
    fn heptic_char_three() {
        let e = engine("x^7+y^7+z^7", "x^2,y^2,z^2", 3);
        let v = e.decide(&el(&e, "x*y*z")).unwrap();
        assert_eq!(v.status, Status::NotInClosure);
        assert_eq!(v.caveat, Caveat::DefiniteForGivenP);
        assert_eq!(v.cert.rule, "frobenius-pullback");
        assert!(verify_certificate(e.gens().ring(), &v.cert).unwrap());
    }

    #[test]
    fn fermat_quartic_cubes() {
        let e = engine("x^4+y^4+z^4", "x^3,y^3,z^3", 0);
        let rep = e.degree_profile(0, 9).unwrap();
        assert_eq!(rep.all_in_from(), Some(5));
        assert_eq!(rep.row(5).unwrap().cert.as_ref().unwrap().rule, "primary-syzygy/inclusion");
    }

    #[test]
    fn fermat_quintic_cubes_char_three() {
        let e = engine("x^5+y^5+z^5", "x^3,y^3,z^3", 3);
        let rep = e.degree_profile(0, 9).unwrap();
        assert_eq!(rep.all_in_from(), Some(5));
        assert_eq!(rep.iff_ideal_to(), Some(4));
        assert!(rep.rows.iter().all(|r| r.definite));
    }

    #[test]
    fn quintic_bounds_profile() {
        let e = engine("x^5+y^5+z^5+x^3*y*z+x*y^3*z+x*y*z^3", "x^4,y^4,z^4", 0);
        assert_eq!(e.semistability().0, Semistability::Semistable);
        let rep = e.degree_profile(0, 12).unwrap();
        assert_eq!(rep.all_in_from(), Some(6));
        assert_eq!(rep.iff_ideal_to(), Some(5));
        assert!(rep.row(6).unwrap().codim >= 7);
    }

    #[test]
    fn parameters_n2() {
        let e = engine("x^3+y^3+z^3", "x^3,y^3", 0);
        let v = e.decide(&el(&e, "x^2*y^2*z^2")).unwrap();
        assert_eq!(v.status, Status::InClosure);
        let v = e.decide(&el(&e, "x^2*y^2*z")).unwrap();
        assert_eq!(v.status, Status::NotInClosure);
    }

    #[test]
    fn no_contradictions_and_monotone() {
        for (curve, ideal, p) in [
            ("x^3+y^3+z^3", "x^2,y^2,z^2", 7),
            ("x^4+y^4+z^4", "x^3,y^3,z^3", 0),
            ("x^4+y^4+z^4", "x^2,y^2,z^2", 5),
            ("x^5+y^5+z^5", "x^3,y^3,z^3", 3),
            ("x^7+y^7+z^7", "x^2,y^2,z^2", 3),
        ] {
            let e = engine(curve, ideal, p);
            let rep = e.degree_profile(0, 8).unwrap();
            let mut seen_all_in = false;
            for r in &rep.rows {
                if seen_all_in {
                    assert_eq!(r.kind, DegreeKind::AllIn, "{curve} {ideal} m = {}", r.m);
                }
                seen_all_in |= r.kind == DegreeKind::AllIn && r.definite;
                for v in &r.elements {
                    let c = e.candidates(&v.element).unwrap();
                    let yes = c.iter().any(|w| w.definite && w.status == Status::InClosure);
                    let no = c.iter().any(|w| w.definite && w.status == Status::NotInClosure);
                    assert!(!(yes && no), "{curve} {ideal} {}", v.element);
                    assert!(verify_certificate(e.gens().ring(), &v.cert).unwrap(), "{}", v.cert.rule);
                }
            }
        }
    }
}
