//! Individual inclusion and exclusion rules. Each returns certificates that
//! [`super::verify_certificate`] can recheck.

use super::{is_diagonal, Caveat, Certificate, DegreeRange, DegreeTemplate, Fact, Rel, Status, TemplateKind, Verdict, Witness};
use crate::cohomology::{quotient_class_image, ForcingClass};
use crate::curvering::{ideal_membership, make_curve, projective_zeroset_empty, CurveRing, IdealGens};
use crate::error::{Error, Result};
use crate::exactfield::{below_rational, ceil_rational, floor_rational, ratio, FieldSpec};
use crate::polyspace::HomPoly;
use crate::syzygy::{find_primary_syzygy, is_primary_syzygy, minimal_syzygy_degree, syzygy_dim, syzygy_space, SyzygyVec};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use std::cell::RefCell;
use std::collections::BTreeMap;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Syzygy sweep shared by the rules: minimal syzygy degree, the first
/// primary syzygy found, and cached dimensions.
#[derive(Debug)]
pub struct RuleSet {
    pub gens: IdealGens,
    pub min_degree: Option<i64>,
    /// A nonzero syzygy of minimal degree.
    pub first: Option<SyzygyVec>,
    /// Primary syzygy of least degree among those searched.
    pub primary: Option<SyzygyVec>,
    dims: RefCell<BTreeMap<i64, usize>>,
}

/// How many degrees above the minimal syzygy degree are searched for a
/// primary syzygy.
const PRIMARY_SEARCH_SPAN: i64 = 3;

impl RuleSet {
    pub fn new(gens: &IdealGens, seed: u64, trials: usize) -> Result<Self> {
        let d = gens.degree_sum();
        let min_degree = minimal_syzygy_degree(gens, Some(d));
        let mut first = None;
        let mut primary = None;
        if let Some(k0) = min_degree {
            first = syzygy_space(gens, k0).basis.into_iter().next();
            if gens.is_primary() {
                for k in k0..=(k0 + PRIMARY_SEARCH_SPAN).min(d) {
                    if let Some(s) = find_primary_syzygy(gens, k, trials, seed)? {
                        primary = Some(s);
                        break;
                    }
                }
            }
        }
        let rs = RuleSet { gens: gens.clone(), min_degree, first, primary, dims: RefCell::new(BTreeMap::new()) };
        if let Some(k0) = min_degree {
            rs.dims.borrow_mut().insert(k0 - 1, 0);
        }
        Ok(rs)
    }

    pub fn syz_dim(&self, k: i64) -> usize {
        if let Some(k0) = self.min_degree {
            if k < k0 {
                return 0;
            }
        }
        if let Some(&d) = self.dims.borrow().get(&k) {
            return d;
        }
        let d = syzygy_dim(&self.gens, k);
        self.dims.borrow_mut().insert(k, d);
        d
    }

    pub fn ring(&self) -> &CurveRing {
        self.gens.ring()
    }

    pub fn n(&self) -> usize {
        self.gens.len()
    }

    pub fn degree_sum(&self) -> i64 {
        self.gens.degree_sum()
    }

    pub fn delta(&self) -> i64 {
        self.ring().delta() as i64
    }

    pub fn genus(&self) -> i64 {
        self.ring().genus() as i64
    }

    pub fn characteristic(&self) -> u64 {
        self.ring().field().characteristic()
    }

    /// `(g-1)/δ`
    pub fn genus_ratio(&self) -> BigRational {
        ratio(self.genus() - 1, self.delta())
    }

    /// `Σd/2`
    pub fn half(&self) -> BigRational {
        ratio(self.degree_sum(), 2)
    }

    /// Dimensions computed so far, in degree order.
    pub fn known_dims(&self) -> Vec<(i64, usize)> {
        self.dims.borrow().iter().map(|(&k, &d)| (k, d)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeBound {
    pub value: BigRational,
    pub source: String,
}

/// Bounds on the extremal slopes of `Syz(0)^∨` (rank 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeBounds {
    pub mu: BigRational,
    pub mu_max_upper: Option<SlopeBound>,
    pub mu_max_lower: Option<SlopeBound>,
    pub mu_min_upper: Option<SlopeBound>,
    pub mu_min_lower: Option<SlopeBound>,
}

impl SlopeBounds {
    pub fn to_json(&self) -> Value {
        let b = |x: &Option<SlopeBound>| match x {
            Some(s) => json!({ "value": s.value.to_string(), "source": s.source }),
            None => Value::Null,
        };
        json!({
            "mu": self.mu.to_string(),
            "mu_max_upper": b(&self.mu_max_upper),
            "mu_max_lower": b(&self.mu_max_lower),
            "mu_min_upper": b(&self.mu_min_upper),
            "mu_min_lower": b(&self.mu_min_lower),
        })
    }
}

/// One-sided slope bounds from the syzygy sweep. A vanishing `Syz_k` gives
/// `μ_max ≤ (Σd - k)δ + g - 1`; a syzygy at `k_0` gives a line subbundle of
/// `Syz(0)` of degree `≥ -k_0 δ`.
pub fn slope_bounds(rs: &RuleSet) -> SlopeBounds {
    let d = rs.degree_sum();
    let delta = rs.delta();
    let mu = ratio(d * delta, 2);
    let mut out = SlopeBounds { mu: mu.clone(), mu_max_upper: None, mu_max_lower: None, mu_min_upper: None, mu_min_lower: None };
    if rs.n() != 3 {
        return out;
    }
    let Some(k0) = rs.min_degree else { return out };
    let k = k0 - 1;
    let raw = int((d - k) * delta + rs.genus() - 1);
    let upper = if raw < mu { mu.clone() } else { raw };
    out.mu_min_lower = Some(SlopeBound { value: int(d * delta) - &upper, source: format!("rank two duality with the bound from Syz_{k} = 0") });
    out.mu_max_upper = Some(SlopeBound { value: upper, source: format!("no syzygy of total degree {k}") });
    let lower = int((d - k0) * delta).max(mu.clone());
    out.mu_max_lower = Some(SlopeBound { value: lower, source: format!("syzygy of total degree {k0}") });
    let min_up = int(k0 * delta).min(mu);
    out.mu_min_upper = Some(SlopeBound { value: min_up, source: format!("syzygy of total degree {k0}") });
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semistability {
    Semistable,
    StronglySemistable,
    NotSemistable,
    Decomposable,
    Unknown,
}

impl Semistability {
    pub fn name(self) -> &'static str {
        match self {
            Semistability::Semistable => "Semistable",
            Semistability::StronglySemistable => "StronglySemistable",
            Semistability::NotSemistable => "NotSemistable",
            Semistability::Decomposable => "Decomposable",
            Semistability::Unknown => "Unknown",
        }
    }
}

/// First matching rule wins: low-degree syzygy (decomposable if very low),
/// primary syzygy at `Σd/2`, vanishing above the Riemann–Roch bound,
/// then known results for `(x^a, y^a, z^a)`.
pub fn semistability_certificate(rs: &RuleSet) -> (Semistability, Certificate) {
    if rs.n() != 3 {
        return (Semistability::Unknown, Certificate::new("semistability/unsupported-rank", "only rank two syzygy sheaves are classified"));
    }
    let half = rs.half();
    let gr = rs.genus_ratio();
    if let (Some(k0), Some(s)) = (rs.min_degree, &rs.first) {
        if int(k0) < half {
            let syz = Witness::syzygy(&rs.gens, s, false);
            let bound = &half - &gr;
            if int(k0) < bound {
                let cert = Certificate::new("semistability/decomposable", "syzygy of total degree below Σd/2 - (g-1)/δ splits the sheaf")
                    .with(syz)
                    .with(Witness::inequality(int(k0), Rel::Lt, bound, "k < Σd/2 - (g-1)/δ"));
                return (Semistability::Decomposable, cert);
            }
            let cert = Certificate::new("semistability/low-degree-syzygy", "syzygy of total degree below Σd/2 destabilizes")
                .with(syz)
                .with(Witness::inequality(int(k0), Rel::Lt, half, "k < Σd/2"));
            return (Semistability::NotSemistable, cert);
        }
    }
    if let Some(s) = &rs.primary {
        if 2 * s.total_degree == rs.degree_sum() {
            let cert = Certificate::new("semistability/primary-syzygy-at-half", "primary syzygy at Σd/2 gives an extension of O_Y by O_Y")
                .with(Witness::syzygy(&rs.gens, s, true))
                .with(Witness::inequality(int(2 * s.total_degree), Rel::Eq, int(rs.degree_sum()), "2k = Σd"));
            return (Semistability::StronglySemistable, cert);
        }
    }
    let bound = &half + &gr;
    let kstar = ceil_rational(&bound);
    if rs.syz_dim(kstar) == 0 {
        let cert = Certificate::new("semistability/no-syzygy-above-bound", "no syzygy of total degree k >= Σd/2 + (g-1)/δ")
            .with(Witness::no_syzygy(&rs.gens, kstar))
            .with(Witness::inequality(int(kstar), Rel::Ge, bound, "k >= Σd/2 + (g-1)/δ"));
        return (Semistability::Semistable, cert);
    }
    if let Some(a) = rs.gens.power_exponent() {
        let delta = rs.delta();
        let power = Witness::Structural(Fact::PowerGenerators { gens: rs.gens.gens().to_vec(), a });
        if delta >= 3 * a as i64 - 1 {
            let cert = Certificate::new("semistability/power-ideal-high-degree", "(x^a,y^a,z^a) on a smooth curve of degree δ >= 3a-1")
                .with(power)
                .with(Witness::inequality(int(delta), Rel::Ge, int(3 * a as i64 - 1), "δ >= 3a-1"));
            return (Semistability::Semistable, cert);
        }
        if a == 2 && delta == 4 {
            let cert = Certificate::new("semistability/squares-on-quartic", "(x^2,y^2,z^2) on a smooth quartic")
                .with(power)
                .with(Witness::inequality(int(delta), Rel::Eq, int(4), "δ = 4"));
            return (Semistability::Semistable, cert);
        }
    }
    (Semistability::Unknown, Certificate::new("semistability/undecided", "no semistability rule applies"))
}

/// `I* = I + R_{≥ Σd/(n-1)}` for a semistable syzygy sheaf.
pub fn semistable_closure_rule(rs: &RuleSet, sem: Semistability, cert: &Certificate) -> Result<Vec<DegreeTemplate>> {
    let (incl_caveat, rule) = match sem {
        Semistability::Semistable => (Caveat::Char0Only, "semistable/closure-threshold"),
        Semistability::StronglySemistable => (Caveat::AlsoPlusClosure, "strongly-semistable/closure-threshold"),
        _ => return Err(Error::Precondition(format!("syzygy sheaf is {}, not semistable", sem.name()))),
    };
    let t = ratio(rs.degree_sum(), rs.n() as i64 - 1);
    let mut c = cert.clone();
    c.rule = rule.into();
    c.anchor = "semistable syzygy sheaf: closure is the ideal plus everything of degree >= Σd/(n-1)".into();
    Ok(vec![
        DegreeTemplate::new(DegreeRange::at_least(ceil_rational(&t)), TemplateKind::AllIn, incl_caveat, c.clone()),
        DegreeTemplate::new(DegreeRange::at_most(below_rational(&t)), TemplateKind::IffIdeal, Caveat::Char0OrLargeP, c),
    ])
}

/// Rank-two extension `0 -> O_Y(t_1) -> S -> O_Y(t_2) -> 0`, in sheaf degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Extension {
    pub sub_degree: i64,
    pub quot_degree: i64,
    pub nonsplit: bool,
}

/// Hartshorne–Mumford: a nonsplit extension of a positive line bundle by a
/// non-negative one has only positive invertible quotients; together with
/// `deg S > 2(g-1)/p` (or `deg S > 0` in characteristic zero) it is ample.
pub fn hm_ampleness_rule(ring: &CurveRing, ext: Extension, p: u64) -> (bool, Certificate) {
    let total = ext.sub_degree + ext.quot_degree;
    let g = ring.genus() as i64;
    let rhs = if p == 0 { int(0) } else { ratio(2 * (g - 1), p as i64) };
    let degree_ok = int(total) > rhs;
    let ok = ext.nonsplit && ext.quot_degree > 0 && ext.sub_degree >= 0 && degree_ok;
    let mut cert = Certificate::new(
        "ampleness/hartshorne-mumford",
        "nonsplit extension of a positive line bundle by a non-negative one has no invertible quotient of degree <= 0",
    );
    cert.push(Witness::inequality(int(ext.quot_degree), Rel::Gt, int(0), "quotient degree > 0"));
    cert.push(Witness::inequality(int(ext.sub_degree), Rel::Ge, int(0), "subsheaf degree >= 0"));
    let text = if p == 0 { "deg S > 0".to_string() } else { format!("deg S > 2(g-1)/{p}") };
    cert.push(Witness::inequality(int(total), Rel::Gt, rhs, text));
    (ok, cert)
}

/// Degree windows from a primary syzygy `s` of total degree `k`, which gives
/// `0 -> O_Y(m-k) -> Syz(m) -> O_Y(m+k-Σd) -> 0`.
pub fn primary_syzygy_rules(rs: &RuleSet, s: &SyzygyVec) -> Result<(Vec<DegreeTemplate>, Vec<Certificate>)> {
    if rs.n() != 3 {
        return Err(Error::Unsupported("primary syzygy rules need three generators".into()));
    }
    if s.is_zero_in(rs.ring())? || !is_primary_syzygy(s, rs.ring())? {
        return Err(Error::Usage(format!("({}) is not a primary syzygy", s.entries_text())));
    }
    let d = rs.degree_sum();
    let k = s.total_degree;
    let delta = rs.delta();
    let syz = Witness::syzygy(&rs.gens, s, true);
    let mut templates = Vec::new();
    let mut notes = Vec::new();
    let hi = k.max(d - k);
    let lo = k.min(d - k);
    let (rule, anchor) = if 2 * k == d {
        ("primary-syzygy/strongly-semistable", "primary syzygy at Σd/2: extension of O_Y by O_Y, strongly semistable")
    } else {
        ("primary-syzygy/inclusion", "primary syzygy of degree k: both line bundles non-negative for m >= max(k, Σd-k)")
    };
    templates.push(DegreeTemplate::new(
        DegreeRange::at_least(hi),
        TemplateKind::AllIn,
        Caveat::AlsoPlusClosure,
        Certificate::new(rule, anchor).with(syz.clone()),
    ));
    templates.push(DegreeTemplate::new(
        DegreeRange::at_most(lo - 1),
        TemplateKind::IffIdeal,
        Caveat::Char0OrLargeP,
        Certificate::new("primary-syzygy/exclusion", "both line bundles negative for m < min(k, Σd-k)").with(syz.clone()),
    ));
    if 2 * k <= d {
        notes.push(
            Certificate::new("primary-syzygy/graded-plus-closure", "primary syzygy with k <= Σd/2: closure equals graded plus closure")
                .with(syz.clone())
                .with(Witness::inequality(int(2 * k), Rel::Le, int(d), "2k <= Σd")),
        );
    } else if rs.syz_dim(k - 1) == 0 {
        let ext = Extension { sub_degree: 0, quot_degree: (2 * k - d) * delta, nonsplit: true };
        let (ample, hm) = hm_ampleness_rule(rs.ring(), ext, rs.characteristic());
        if ample {
            let mut c = Certificate::new(
                "primary-syzygy/ample-dual",
                "nonsplit extension makes Syz(k) ample, hence Syz(m)^dual = Syz(Σd-m) ample for m <= Σd-k",
            )
            .with(syz)
            .with(Witness::no_syzygy(&rs.gens, k - 1));
            c.witnesses.extend(hm.witnesses);
            templates.push(DegreeTemplate::new(DegreeRange::at_most(d - k), TemplateKind::IffIdeal, Caveat::Char0OrLargeP, c));
        }
    }
    Ok((templates, notes))
}

fn membership_verdict(fc: &ForcingClass) -> Result<Option<Verdict>> {
    let mem = ideal_membership(&fc.gens, &fc.f0)?;
    if mem.member {
        let cert = Certificate::new("ideal-membership", "f_0 lies in the ideal").with(Witness::Membership {
            element: fc.f0.clone(),
            gens: fc.gens.gens().to_vec(),
            cofactors: mem.cofactors.unwrap_or_default(),
        });
        return Ok(Some(Verdict::new(&fc.f0, Status::InIdeal, Caveat::DefiniteForGivenP, cert)));
    }
    Ok(None)
}

pub(crate) fn non_member_witness(fc: &ForcingClass) -> Witness {
    Witness::NonMembership { element: fc.f0.clone(), gens: fc.gens.gens().to_vec() }
}

/// Decides `f_0` from the extension given by a primary syzygy `s`:
/// `L = O_Y(m-k)`, `M = O_Y(m+k-Σd)`, and `c̄` the image of the forcing
/// class in `H¹(Y, M)`.
pub fn exact_sequence_decide(fc: &ForcingClass, s: &SyzygyVec) -> Result<Verdict> {
    let gens = &fc.gens;
    if gens.len() != 3 {
        return Err(Error::Unsupported("exact sequence decisions need three generators".into()));
    }
    let ring = gens.ring();
    if !s.verify(gens)? || s.is_zero_in(ring)? || !is_primary_syzygy(s, ring)? {
        return Err(Error::Usage(format!("({}) is not a primary syzygy", s.entries_text())));
    }
    if let Some(v) = membership_verdict(fc)? {
        return Ok(v);
    }
    let f0 = &fc.f0;
    let d = gens.degree_sum();
    let k = s.total_degree;
    let m = f0.degree();
    let delta = ring.delta() as i64;
    let p = ring.field().characteristic();
    let base = |rule: &str, anchor: &str| {
        Certificate::new(rule, anchor)
            .with(Witness::syzygy(gens, s, true))
            .with(non_member_witness(fc))
    };
    let quot = m + k - d;
    if m >= k && quot >= 0 {
        let (rule, anchor) = if 2 * k == d {
            ("primary-syzygy/strongly-semistable", "primary syzygy at Σd/2: Syz is strongly semistable and m >= Σd/2")
        } else {
            ("primary-syzygy/nonnegative-extension", "both line bundles of the extension have degree >= 0")
        };
        let c = base(rule, anchor)
            .with(Witness::inequality(int(m), Rel::Ge, int(k), "m >= k"))
            .with(Witness::inequality(int(quot), Rel::Ge, int(0), "m + k - Σd >= 0"));
        return Ok(Verdict::new(f0, Status::InClosure, Caveat::AlsoPlusClosure, c));
    }
    if m >= k {
        let Some((i, j)) = fc.pair else {
            let c = base("primary-syzygy/no-parameter-pair", "no pair of generators is a system of parameters; quotient class unavailable");
            return Ok(Verdict::new(f0, Status::Unknown, Caveat::Char0OrLargeP, c));
        };
        let vanishes = quotient_class_image(fc, s)?;
        let l = 3 - i - j;
        let g = gens.gens();
        let cech = Witness::CechClass { h: f0.mul(&s.entries[l])?, fi: g[i].clone(), a: 1, fj: g[j].clone(), b: 1, vanishes };
        let degs = Witness::inequality(int(m), Rel::Ge, int(k), "m >= k");
        if vanishes {
            let c = base("primary-syzygy/quotient-class-vanishes", "image of the forcing class in the quotient line bundle vanishes, subbundle degree >= 0")
                .with(degs)
                .with(cech);
            return Ok(Verdict::new(f0, Status::InClosure, Caveat::AlsoPlusClosure, c));
        }
        let mut c = base("primary-syzygy/quotient-class-nonzero", "nonzero image of the forcing class in a negative quotient line bundle")
            .with(degs)
            .with(Witness::inequality(int(quot), Rel::Lt, int(0), "m + k - Σd < 0"))
            .with(cech);
        let ext = Extension { sub_degree: 0, quot_degree: -quot * delta, nonsplit: true };
        let (ample, hm) = hm_ampleness_rule(ring, ext, p);
        let caveat = if ample {
            c.witnesses.extend(hm.witnesses);
            c.anchor.push_str("; the dual extension is ample at this characteristic");
            Caveat::DefiniteForGivenP
        } else {
            Caveat::Char0OrLargeP
        };
        return Ok(Verdict::new(f0, Status::NotInClosure, caveat, c));
    }
    if quot < 0 {
        let c = base("primary-syzygy/negative-extension", "both line bundles negative and the forcing class is nonzero")
            .with(Witness::inequality(int(m), Rel::Lt, int(k), "m < k"))
            .with(Witness::inequality(int(quot), Rel::Lt, int(0), "m + k - Σd < 0"));
        return Ok(Verdict::new(f0, Status::NotInClosure, Caveat::Char0OrLargeP, c));
    }
    let c = base("primary-syzygy/unordered-window", "subbundle negative, quotient non-negative: no criterion applies")
        .with(Witness::inequality(int(m), Rel::Lt, int(k), "m < k"));
    Ok(Verdict::new(f0, Status::Unknown, Caveat::Char0OrLargeP, c))
}

/// `R_m ⊆ I*` for `m ≥ Σd - k + (g-1)/δ` when `Syz_k = 0` and
/// `k ≤ Σd/2 + (g-1)/δ`.
pub fn inclusion_bound_no_syzygy(rs: &RuleSet, k: i64) -> Result<DegreeTemplate> {
    if rs.n() != 3 {
        return Err(Error::Unsupported("the inclusion bound needs three generators".into()));
    }
    let bound = rs.half() + rs.genus_ratio();
    if int(k) > bound {
        return Err(Error::Precondition(format!("k = {k} exceeds Σd/2 + (g-1)/δ = {bound}")));
    }
    if rs.syz_dim(k) != 0 {
        return Err(Error::Precondition(format!("there are syzygies of total degree {k}")));
    }
    let t = int(rs.degree_sum() - k) + rs.genus_ratio();
    let c = Certificate::new("no-syzygy/inclusion-bound", "no syzygy of degree k bounds the maximal slope by (Σd-k)δ + g - 1")
        .with(Witness::no_syzygy(&rs.gens, k))
        .with(Witness::inequality(int(k), Rel::Le, bound, "k <= Σd/2 + (g-1)/δ"))
        .with(Witness::inequality(int(ceil_rational(&t)), Rel::Ge, t.clone(), "threshold Σd - k + (g-1)/δ"));
    Ok(DegreeTemplate::new(DegreeRange::at_least(ceil_rational(&t)), TemplateKind::AllIn, Caveat::Char0Only, c))
}

/// `I* ∩ R_m = I ∩ R_m` for `m < k - (2n-3)g/((n-1)δ) + 1/δ` when `Syz_k = 0`.
pub fn exclusion_bound_no_syzygy(rs: &RuleSet, k: i64) -> Result<DegreeTemplate> {
    if rs.syz_dim(k) != 0 {
        return Err(Error::Precondition(format!("there are syzygies of total degree {k}")));
    }
    let n = rs.n() as i64;
    let g = rs.genus();
    let delta = rs.delta();
    let t = int(k) - ratio((2 * n - 3) * g, (n - 1) * delta) + ratio(1, delta);
    let top = below_rational(&t);
    let coarse = k - delta + 2;
    let c = Certificate::new("no-syzygy/exclusion-bound", "no syzygy of degree k makes Syz(m)^dual ample for small m")
        .with(Witness::no_syzygy(&rs.gens, k))
        .with(Witness::inequality(int(top), Rel::Lt, t, "m < k - (2n-3)g/((n-1)δ) + 1/δ"))
        .with(Witness::inequality(int(coarse), Rel::Le, int(top), "coarse bound k - δ + 2 is implied"));
    Ok(DegreeTemplate::new(DegreeRange::at_most(top), TemplateKind::IffIdeal, Caveat::Char0Only, c))
}

/// Outcome of the structural rules for `(x^a, y^a, z^a)`.
#[derive(Debug, Clone, Default)]
pub struct XaOutcome {
    pub templates: Vec<DegreeTemplate>,
    pub notes: Vec<Certificate>,
}

fn smallest_power_at_least(p: u64, delta: i64, target: &BigRational) -> Option<(u32, i64)> {
    let mut q: i64 = 1;
    for e in 0..16u32 {
        if int(delta * q) >= *target {
            return Some((e, delta * q));
        }
        q = q.checked_mul(p as i64)?;
    }
    None
}

/// Rules specific to `(x^a, y^a, z^a)`. Returns `None` for other generators.
pub fn xa_rules(rs: &RuleSet) -> Result<Option<XaOutcome>> {
    let Some(a) = rs.gens.power_exponent() else { return Ok(None) };
    let a = a as i64;
    let delta = rs.delta();
    let p = rs.characteristic();
    let ring = rs.ring();
    let power = Witness::Structural(Fact::PowerGenerators { gens: rs.gens.gens().to_vec(), a: a as u32 });
    let three_half = ratio(3 * a, 2);
    let mut out = XaOutcome::default();

    if delta >= 3 * a - 1 {
        let high = Witness::inequality(int(delta), Rel::Ge, int(3 * a - 1), "δ >= 3a-1");
        out.templates.push(DegreeTemplate::new(
            DegreeRange::at_least(ceil_rational(&three_half)),
            TemplateKind::AllIn,
            Caveat::Char0Only,
            Certificate::new("power-ideal/semistable-closure", "(x^a,y^a,z^a) with δ >= 3a-1: closure is the ideal plus R_{>= 3a/2}")
                .with(power.clone())
                .with(high.clone()),
        ));
        out.templates.push(DegreeTemplate::new(
            DegreeRange::at_most(below_rational(&three_half)),
            TemplateKind::IffIdeal,
            Caveat::Char0OrLargeP,
            Certificate::new("power-ideal/low-degree-exclusion", "(x^a,y^a,z^a) with δ >= 3a-1: nothing new below 3a/2")
                .with(power.clone())
                .with(high.clone()),
        ));
        if p > 0 && p as i64 >= delta - 3 {
            out.templates.push(DegreeTemplate::new(
                DegreeRange::at_least(floor_rational(&three_half) + 1),
                TemplateKind::AllIn,
                Caveat::FrobeniusClosure,
                Certificate::new("power-ideal/frobenius-closure", "Syz(m) ample for m > 3a/2 when p >= δ-3, so R_m lies in the Frobenius closure")
                    .with(power.clone())
                    .with(high)
                    .with(Witness::Structural(Fact::Characteristic(p)))
                    .with(Witness::inequality(int(p as i64), Rel::Ge, int(delta - 3), "p >= δ-3")),
            ));
        }
    }

    if is_diagonal(ring) {
        let diag = Witness::Structural(Fact::DiagonalCurve);
        if p > 0 {
            if let Some((q, qp)) = not_strongly_semistable_powers(p, delta, a) {
                out.notes.push(
                    Certificate::new("power-ideal/not-strongly-semistable", "a Frobenius power of the curve equation is a destabilizing syzygy")
                        .with(power.clone())
                        .with(diag.clone())
                        .with(Witness::inequality(ratio(3 * a * q as i64, 2), Rel::Gt, int(delta * qp as i64), "(3a/2)q > δq'"))
                        .with(Witness::inequality(int(delta * qp as i64), Rel::Ge, int(a * q as i64), "δq' >= aq")),
                );
            }
        }
        let base = if p == 0 { 1 } else { p };
        if let Some((e, deg)) = smallest_power_at_least(base, delta, &three_half) {
            if p == 0 && e > 0 {
                // only q' = 1 exists in characteristic zero
            } else if deg >= a {
                out.templates.push(DegreeTemplate::new(
                    DegreeRange::at_least(deg),
                    TemplateKind::AllIn,
                    Caveat::AlsoPlusClosure,
                    Certificate::new("power-ideal/curve-power-syzygy", "the q'-th power of the curve equation is a primary syzygy of degree δq' >= 3a/2")
                        .with(power.clone())
                        .with(diag.clone())
                        .with(Witness::inequality(int(deg), Rel::Ge, three_half.clone(), "δq' >= 3a/2")),
                ));
            }
        }
        if a == 2 && delta == 2 {
            out.templates.push(DegreeTemplate::new(
                DegreeRange { lo: None, hi: None },
                TemplateKind::IffIdeal,
                Caveat::DefiniteForGivenP,
                Certificate::new("squares/diagonal-conic", "the cone over a smooth diagonal conic is F-regular: every ideal is tightly closed")
                    .with(power.clone())
                    .with(diag.clone()),
            ));
        }
        if a == 3 && (5..=7).contains(&delta) {
            if let Some(t) = fermat_cubes_ample(rs, &power, &diag)? {
                out.templates.extend(t);
            }
        }
    }

    if a == 2 && delta == 3 && rs.syz_dim(3) > 0 && rs.primary.as_ref().is_none_or(|s| s.total_degree != 3) {
        let s = syzygy_space(&rs.gens, 3).basis.into_iter().next().expect("nonzero");
        if !is_primary_syzygy(&s, ring)? {
            out.templates.push(DegreeTemplate::new(
                DegreeRange::between(3, 3),
                TemplateKind::IffIdeal,
                Caveat::Char0OrLargeP,
                Certificate::new("squares/cubic-decomposable", "non-primary syzygy of degree 3 splits Syz(3) as O(P) + O(-P)")
                    .with(power)
                    .with(Witness::syzygy(&rs.gens, &s, false)),
            ));
        }
    }
    Ok(Some(out))
}

fn not_strongly_semistable_powers(p: u64, delta: i64, a: i64) -> Option<(u64, u64)> {
    let powers: Vec<u64> = (0..8).map(|e| p.saturating_pow(e)).collect();
    for &q in &powers {
        for &qp in &powers {
            let lhs = 3 * a as i128 * q as i128;
            let mid = delta as i128 * qp as i128;
            if lhs > 2 * mid && mid >= a as i128 * q as i128 {
                return Some((q, qp));
            }
        }
    }
    None
}

/// `Syz(5)` for `(x^3,y^3,z^3)` on a diagonal curve of degree 5, 6 or 7 is
/// ample in characteristic zero and for `p ≥ δ-3` (for `δ = 5` the
/// Hartshorne–Mumford inequality needs `p > 2`).
fn fermat_cubes_ample(rs: &RuleSet, power: &Witness, diag: &Witness) -> Result<Option<Vec<DegreeTemplate>>> {
    let delta = rs.delta();
    let p = rs.characteristic();
    let mut cert = Certificate::new("power-ideal/cubes-syz5-ample", "Syz(5) for (x^3,y^3,z^3) is ample on diagonal curves of degree 5 to 7")
        .with(power.clone())
        .with(diag.clone());
    if delta == 5 {
        let f = rs.ring().field();
        let entries = vec![HomPoly::var(f, 0).pow(2).scale(&f.from_i64(1))?, HomPoly::var(f, 1).pow(2), HomPoly::var(f, 2).pow(2)];
        let coeffs = diagonal_coeffs(rs.ring());
        let entries: Vec<HomPoly> = entries.iter().zip(&coeffs).map(|(e, c)| e.scale(c)).collect::<std::result::Result<_, _>>()?;
        let Ok(s) = SyzygyVec::new(&rs.gens, entries) else { return Ok(None) };
        if rs.syz_dim(4) != 0 {
            return Ok(None);
        }
        let (ample, hm) = hm_ampleness_rule(rs.ring(), Extension { sub_degree: 0, quot_degree: delta, nonsplit: true }, p);
        if !ample {
            return Ok(None);
        }
        cert.push(Witness::syzygy(&rs.gens, &s, true));
        cert.push(Witness::no_syzygy(&rs.gens, 4));
        cert.witnesses.extend(hm.witnesses);
    } else if p > 0 {
        if (p as i64) < delta - 3 {
            return Ok(None);
        }
        cert.push(Witness::Structural(Fact::Characteristic(p)));
        cert.push(Witness::inequality(int(p as i64), Rel::Ge, int(delta - 3), "p >= δ-3"));
    }
    let incl = if p == 0 { Caveat::DefiniteForGivenP } else { Caveat::FrobeniusClosure };
    Ok(Some(vec![
        DegreeTemplate::new(DegreeRange::at_least(5), TemplateKind::AllIn, incl, cert.clone()),
        DegreeTemplate::new(DegreeRange::at_most(4), TemplateKind::IffIdeal, Caveat::DefiniteForGivenP, cert),
    ]))
}

/// Coefficients of `x^δ, y^δ, z^δ` in a diagonal equation.
fn diagonal_coeffs(ring: &CurveRing) -> Vec<crate::exactfield::Scalar> {
    let f = ring.equation();
    (0..3)
        .map(|v| {
            f.terms()
                .find(|(m, _)| m.exponent(v) == ring.delta())
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| ring.field().zero())
        })
        .collect()
}

/// `(f_1, f_2)* = (f_1, f_2) + R_{≥ d_1 + d_2}` for a system of parameters.
pub fn parameter_closure(gens: &IdealGens) -> Result<Vec<DegreeTemplate>> {
    if gens.len() != 2 {
        return Err(Error::Usage(format!("parameter closure needs two generators, got {}", gens.len())));
    }
    if !gens.is_primary() {
        return Err(Error::Usage(format!("{gens} is not a system of parameters on the curve")));
    }
    let d = gens.degree_sum();
    let c = Certificate::new("parameters/strong-vanishing", "closure of a parameter ideal is the ideal plus R_{>= d_1+d_2}");
    Ok(vec![
        DegreeTemplate::new(DegreeRange::at_least(d), TemplateKind::AllIn, Caveat::Char0OrLargeP, c.clone()),
        DegreeTemplate::new(DegreeRange::at_most(d - 1), TemplateKind::IffIdeal, Caveat::Char0OrLargeP, c),
    ])
}

/// Coarse degree bounds valid for every primary ideal.
pub fn smith_bounds(gens: &IdealGens) -> Vec<DegreeTemplate> {
    let d = gens.degrees();
    let maxd = *d.iter().max().unwrap();
    let mind = *d.iter().min().unwrap();
    let top = (2 * maxd).min(gens.degree_sum());
    vec![
        DegreeTemplate::new(
            DegreeRange::at_least(top),
            TemplateKind::AllIn,
            Caveat::DefiniteForGivenP,
            Certificate::new("degree-bounds/upper", "R_m lies in the closure for m >= min(2 max d_i, Σd_i)"),
        ),
        DegreeTemplate::new(
            DegreeRange::at_most(mind),
            TemplateKind::IffIdeal,
            Caveat::DefiniteForGivenP,
            Certificate::new("degree-bounds/lower", "elements of degree <= min d_i are in the closure only if in the ideal"),
        ),
    ]
}

/// A test ring built from `F = Σ f_i g_i` with `deg g_i = k - d_i`,
/// `2k = Σd_i` and `V₊(f) = V₊(g) = ∅`.
#[derive(Debug, Clone)]
pub struct Bastel {
    pub ring: CurveRing,
    pub gens: IdealGens,
    pub syzygy: SyzygyVec,
    pub k: i64,
    /// Expected: closure is the ideal plus `R_{≥k}`.
    pub threshold: i64,
    pub plus_closure: bool,
}

pub fn bastel_construct(f: &[HomPoly], g: &[HomPoly], field: FieldSpec) -> Result<Bastel> {
    if f.len() != 3 || g.len() != 3 {
        return Err(Error::Usage("need three f_i and three g_i".into()));
    }
    let d: i64 = f.iter().map(|p| p.degree()).sum();
    if d % 2 != 0 {
        return Err(Error::Validation(format!("Σd_i = {d} is odd, so 2k = Σd_i has no solution")));
    }
    let k = d / 2;
    for (fi, gi) in f.iter().zip(g) {
        if gi.degree() != k - fi.degree() {
            return Err(Error::Validation(format!(
                "deg {gi} = {} but k - deg {fi} = {} with k = Σd/2 = {k}",
                gi.degree(),
                k - fi.degree()
            )));
        }
    }
    if !projective_zeroset_empty(f)? || !projective_zeroset_empty(g)? {
        return Err(Error::Validation("the f_i and the g_i must each have no common zero".into()));
    }
    let mut eq = HomPoly::zero(field, k);
    for (fi, gi) in f.iter().zip(g) {
        eq = eq.add(&fi.mul(gi)?)?;
    }
    let ring = make_curve(&eq, field)?;
    let gens = IdealGens::new(&ring, f.to_vec())?;
    let syzygy = SyzygyVec::new(&gens, g.to_vec())?;
    Ok(Bastel { ring, gens, syzygy, k, threshold: k, plus_closure: field.characteristic() > 0 })
}
