//! Positive-characteristic tools: Frobenius-power membership, a Frobenius
//! closure lower bound, pull-back of problems, and a parameter scan.

use crate::criteria::{Certificate, DecisionReport, Engine, EngineConfig, Status, Verdict};
use crate::curvering::{ideal_membership, make_curve, IdealGens};
use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;
use crate::polyspace::{num_monomials, HomPoly, Monomial};
use serde_json::{json, Value};
use std::time::Instant;

/// Pulled-back graded pieces larger than this many monomials are refused.
pub const MONOMIAL_BUDGET: usize = 25_000;

fn q_of(p: u64, e: u32) -> Result<u32> {
    p.checked_pow(e)
        .and_then(|q| u32::try_from(q).ok())
        .ok_or_else(|| Error::Unsupported(format!("{p}^{e} is too large")))
}

fn require_positive_char(gens: &IdealGens) -> Result<u64> {
    match gens.ring().field().characteristic() {
        0 => Err(Error::Unsupported("Frobenius powers need positive characteristic".into())),
        p => Ok(p),
    }
}

/// Size of the graded piece that membership of `f_0^q` needs.
fn pulled_piece_size(f0: &HomPoly, q: u32) -> usize {
    num_monomials(f0.degree() * q as i64)
}

/// `f_0^q ∈ (f_1^q, ..., f_n^q)` in `R` with `q = p^e`.
pub fn frobenius_power_membership(gens: &IdealGens, f0: &HomPoly, e: u32) -> Result<bool> {
    let p = require_positive_char(gens)?;
    let q = q_of(p, e)?;
    let pulled = frobenius_pullback_problem(gens, e)?;
    Ok(ideal_membership(&pulled.pulled, &f0.frobenius_power(q))?.member)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrobeniusBound {
    InFrobeniusClosure { e: u32 },
    /// No membership up to `e_max`. `budget_hit` is set when larger
    /// exponents were skipped for size.
    Inconclusive { e_tested: u32, budget_hit: bool },
}

/// Tries `e = 0, 1, ..., e_max`. Never certifies non-membership.
pub fn frobenius_closure_lower_bound(gens: &IdealGens, f0: &HomPoly, e_max: u32) -> Result<FrobeniusBound> {
    let p = require_positive_char(gens)?;
    let mut e_tested = 0;
    for e in 0..=e_max {
        let q = q_of(p, e)?;
        if pulled_piece_size(f0, q) > MONOMIAL_BUDGET {
            return Ok(FrobeniusBound::Inconclusive { e_tested, budget_hit: true });
        }
        if frobenius_power_membership(gens, f0, e)? {
            return Ok(FrobeniusBound::InFrobeniusClosure { e });
        }
        e_tested = e;
    }
    Ok(FrobeniusBound::Inconclusive { e_tested, budget_hit: false })
}

/// `(f_1^q, ..., f_n^q)` with `q = p^e` on the same ring.
#[derive(Debug, Clone)]
pub struct FrobeniusProblem {
    pub base: IdealGens,
    pub e: u32,
    pub q: u32,
    pub pulled: IdealGens,
}

impl FrobeniusProblem {
    /// `f_0 ↦ f_0^q`.
    pub fn pull_element(&self, f0: &HomPoly) -> HomPoly {
        f0.frobenius_power(self.q)
    }
}

pub fn frobenius_pullback_problem(gens: &IdealGens, e: u32) -> Result<FrobeniusProblem> {
    let p = require_positive_char(gens)?;
    let q = q_of(p, e)?;
    let pulled = if e == 0 {
        gens.clone()
    } else {
        let gq = gens.gens().iter().map(|g| g.frobenius_power(q)).collect();
        IdealGens::with_primary(gens.ring(), gq, gens.is_primary())?
    };
    Ok(FrobeniusProblem { base: gens.clone(), e, q, pulled })
}

/// Grid for [`scan`] over Fermat curves and ideals `(x^a, y^a, z^a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanGrid {
    pub primes: Vec<u64>,
    pub deltas: Vec<u32>,
    pub powers: Vec<u32>,
    /// Inclusive degree range; `None` means `0..=3a`.
    pub degrees: Option<(i64, i64)>,
    pub e_max: u32,
    pub seed: u64,
}

/// Oracle result for one basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCheck {
    pub element: HomPoly,
    pub verdict: Status,
    pub definite: bool,
    pub oracle: FrobeniusBound,
}

impl OracleCheck {
    /// A definite exclusion contradicts a Frobenius closure membership.
    pub fn consistent(&self) -> bool {
        !(self.verdict == Status::NotInClosure && self.definite && matches!(self.oracle, FrobeniusBound::InFrobeniusClosure { .. }))
    }

    pub fn to_json(&self) -> Value {
        let oracle = match &self.oracle {
            FrobeniusBound::InFrobeniusClosure { e } => json!({ "result": "InFrobeniusClosure", "e": e }),
            FrobeniusBound::Inconclusive { e_tested, budget_hit } => {
                json!({ "result": "Inconclusive", "e_tested": e_tested, "budget_hit": budget_hit })
            }
        };
        json!({ "element": self.element.to_string(), "verdict": self.verdict.name(), "definite": self.definite, "oracle": oracle })
    }
}

#[derive(Debug, Clone)]
pub struct ScanCell {
    pub p: u64,
    pub delta: u32,
    pub a: u32,
    pub seed: u64,
    pub report: DecisionReport,
    pub oracle: Vec<OracleCheck>,
    pub budget_hit: bool,
    pub ms: u128,
}

impl ScanCell {
    pub fn consistent(&self) -> bool {
        self.oracle.iter().all(OracleCheck::consistent)
    }

    pub fn to_json(&self) -> Value {
        let certs: Vec<Value> = self.report.certificates().iter().map(Certificate::to_json).collect();
        json!({
            "p": self.p,
            "delta": self.delta,
            "a": self.a,
            "degree_table": self.report.degree_table_json(),
            "certificates": certs,
            "seed": self.seed,
            "ms": self.ms,
            "oracle": self.oracle.iter().map(OracleCheck::to_json).collect::<Vec<_>>(),
            "consistent": self.consistent(),
            "budget_hit": self.budget_hit,
        })
    }
}

fn fermat(field: FieldSpec, delta: u32) -> HomPoly {
    (0..3).fold(HomPoly::zero(field, delta as i64), |acc, v| {
        acc.add(&HomPoly::var(field, v).pow(delta)).expect("same degree")
    })
}

fn power_gens(field: FieldSpec, a: u32) -> Vec<HomPoly> {
    (0..3).map(|v| HomPoly::var(field, v).pow(a)).collect()
}

/// Cells in grid order; cells with `p | δ` are skipped. `sink` sees each
/// cell as soon as it is finished.
pub fn scan(grid: &ScanGrid, mut sink: impl FnMut(&ScanCell)) -> Result<Vec<ScanCell>> {
    let mut out = Vec::new();
    for &p in &grid.primes {
        let field = FieldSpec::prime(p)?;
        for &delta in &grid.deltas {
            if delta as u64 % p == 0 {
                continue;
            }
            let ring = make_curve(&fermat(field, delta), field)?;
            for &a in &grid.powers {
                let start = Instant::now();
                let gens = IdealGens::new(&ring, power_gens(field, a))?;
                let engine = Engine::new(&gens, EngineConfig { seed: grid.seed, e_max: grid.e_max, ..EngineConfig::default() })?;
                let (lo, hi) = grid.degrees.unwrap_or((0, 3 * a as i64));
                let report = engine.degree_profile(lo, hi)?;
                let mut oracle = Vec::new();
                let mut budget_hit = false;
                for v in report.element_verdicts() {
                    let check = oracle_check(&gens, v, grid.e_max)?;
                    if let FrobeniusBound::Inconclusive { budget_hit: true, .. } = check.oracle {
                        budget_hit = true;
                    }
                    oracle.push(check);
                }
                let cell = ScanCell { p, delta, a, seed: grid.seed, report, oracle, budget_hit, ms: start.elapsed().as_millis() };
                sink(&cell);
                out.push(cell);
            }
        }
    }
    Ok(out)
}

/// Cross-checks one verdict against the Frobenius oracle.
pub fn oracle_check(gens: &IdealGens, v: &Verdict, e_max: u32) -> Result<OracleCheck> {
    Ok(OracleCheck {
        element: v.element.clone(),
        verdict: v.status,
        definite: v.definite,
        oracle: frobenius_closure_lower_bound(gens, &v.element, e_max)?,
    })
}

/// The monomial `x^i y^j z^k` as a polynomial.
pub fn monomial_poly(field: FieldSpec, i: u32, j: u32, k: u32) -> HomPoly {
    HomPoly::monomial(field, Monomial::new(i, j, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_list};
    use proptest::prelude::*;

    fn setup(curve: &str, ideal: &str, p: u64) -> IdealGens {
        let f = FieldSpec::new(p).unwrap();
        let r = make_curve(&parse_poly(curve, f).unwrap(), f).unwrap();
        IdealGens::new(&r, parse_poly_list(ideal, f).unwrap()).unwrap()
    }

    #[test]
    fn cubic_oracle() {
        let g = setup("x^3+y^3+z^3", "x^2,y^2,z^2", 7);
        let xyz = monomial_poly(g.ring().field(), 1, 1, 1);
        assert!(!frobenius_power_membership(&g, &xyz, 1).unwrap());
        assert!(matches!(frobenius_closure_lower_bound(&g, &xyz, 2).unwrap(), FrobeniusBound::Inconclusive { .. }));
        let g2 = setup("x^3+y^3+z^3", "x^2,y^2,z^2", 2);
        let xyz2 = monomial_poly(g2.ring().field(), 1, 1, 1);
        let r: Vec<bool> = (1..=3).map(|e| frobenius_power_membership(&g2, &xyz2, e).unwrap()).collect();
        assert!(r.windows(2).all(|w| !w[0] || w[1]));
        let x2 = g.gens()[0].clone();
        assert_eq!(frobenius_closure_lower_bound(&g, &x2, 3).unwrap(), FrobeniusBound::InFrobeniusClosure { e: 0 });
    }

    #[test]
    fn char_zero_refused() {
        let g = setup("x^3+y^3+z^3", "x^2,y^2,z^2", 0);
        let xyz = monomial_poly(g.ring().field(), 1, 1, 1);
        assert!(matches!(frobenius_power_membership(&g, &xyz, 1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pullback() {
        let g = setup("x^7+y^7+z^7", "x^2,y^2,z^2", 3);
        let pb = frobenius_pullback_problem(&g, 1).unwrap();
        assert_eq!(pb.q, 3);
        assert_eq!(pb.pulled.degrees(), vec![6, 6, 6]);
        assert!(pb.pulled.is_primary());
        let id = frobenius_pullback_problem(&g, 0).unwrap();
        assert_eq!(id.pulled.gens(), g.gens());
    }

    #[test]
    fn empty_grid() {
        let grid = ScanGrid { primes: vec![], deltas: vec![3], powers: vec![2], degrees: None, e_max: 1, seed: 1 };
        assert!(scan(&grid, |_| {}).unwrap().is_empty());
        let grid = ScanGrid { primes: vec![3], deltas: vec![3], powers: vec![2], degrees: None, e_max: 1, seed: 1 };
        assert!(scan(&grid, |_| {}).unwrap().is_empty());
    }

    #[test]
    fn small_scan_cell() {
        let grid = ScanGrid { primes: vec![5], deltas: vec![3], powers: vec![2], degrees: Some((3, 3)), e_max: 1, seed: 3 };
        let mut seen = 0;
        let cells = scan(&grid, |_| seen += 1).unwrap();
        assert_eq!(seen, 1);
        assert!(cells[0].consistent());
        let v = cells[0].to_json();
        for key in ["p", "delta", "a", "degree_table", "certificates", "seed", "ms"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn membership_persists(i in 0u32..4, j in 0u32..4, p in prop::sample::select(vec![2u64, 5])) {
            let g = setup("x^3+y^3+z^3", "x^2,y^2,z^2", p);
            let k = 4u32.saturating_sub(i + j).min(3);
            let f0 = monomial_poly(g.ring().field(), i, j, k);
            if frobenius_power_membership(&g, &f0, 1).unwrap() {
                prop_assert!(frobenius_power_membership(&g, &f0, 2).unwrap());
            }
        }
    }
}
