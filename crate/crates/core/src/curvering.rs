//! The graded ring `R = K[x,y,z]/(F)` of a smooth plane curve.
//!
//! `{F}` is a Gröbner basis of `(F)` for any monomial order, so reduction by
//! the leading monomial of `F` (graded lex) gives canonical normal forms.
//! Coordinates on `R_m` are taken relative to the standard monomials, i.e.
//! the degree-`m` monomials not divisible by `lead(F)`.

use crate::error::{Error, Result};
use crate::exactfield::{with_ops, FieldSpec, Ops, Scalar};
use crate::polyspace::linalg::{rref, solve_combination, Subspace};
use crate::polyspace::{monomial_basis, monomial_index, num_monomials, CoordVector, HomPoly, Monomial};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Per-degree bookkeeping shared by all reductions in that degree.
#[derive(Debug)]
pub(crate) struct DegreeData {
    pub basis: Vec<Monomial>,
    /// Position in the standard basis, or `NONSTD`.
    pub std_pos: Vec<u32>,
    /// Indices into `basis` of the standard monomials.
    pub std: Vec<usize>,
}

const NONSTD: u32 = u32::MAX;

#[derive(Clone)]
pub struct CurveRing {
    f: HomPoly,
    field: FieldSpec,
    delta: u32,
    genus: u32,
    lead: Monomial,
    /// Non-leading terms of `F / lc(F)`.
    tail: Vec<(Monomial, Scalar)>,
    cache: Arc<Mutex<HashMap<i64, Arc<DegreeData>>>>,
}

impl fmt::Debug for CurveRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveRing")
            .field("F", &self.f.to_string())
            .field("field", &self.field)
            .field("delta", &self.delta)
            .field("genus", &self.genus)
            .finish()
    }
}

/// Validates `F` and builds the ring. Checks run in order: nonzero of
/// positive degree, `p ∤ δ`, Jacobian smoothness.
pub fn make_curve(f: &HomPoly, field: FieldSpec) -> Result<CurveRing> {
    if f.field() != field {
        return Err(Error::Usage(format!("curve coefficients live in {}, expected {}", f.field(), field)));
    }
    if f.is_zero() {
        return Err(Error::Usage("curve equation is zero".into()));
    }
    if f.degree() < 1 {
        return Err(Error::Usage("curve equation must have degree at least 1".into()));
    }
    let delta = f.degree() as u32;
    let p = field.characteristic();
    if p != 0 && delta as u64 % p == 0 {
        return Err(Error::Validation(format!(
            "characteristic {p} divides the degree {delta}; the Euler relation degenerates and such curves are refused"
        )));
    }
    if !smoothness_check(f)? {
        return Err(Error::Validation(format!(
            "curve {f} is singular: F and its three partial derivatives have a common projective zero"
        )));
    }
    let (lead, lc) = f.leading().map(|(m, c)| (*m, c.clone())).expect("nonzero");
    let lc_inv = lc.inv()?;
    let tail = f.terms().skip(1).map(|(m, c)| (*m, c.mul(&lc_inv).expect("same field"))).collect();
    let genus = (delta - 1) * (delta.max(2) - 2) / 2;
    Ok(CurveRing { f: f.clone(), field, delta, genus, lead, tail, cache: Arc::new(Mutex::new(HashMap::new())) })
}

/// Jacobian criterion: `V(F, ∂F/∂x, ∂F/∂y, ∂F/∂z) = ∅`.
pub fn smoothness_check(f: &HomPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::Usage("smoothness of the zero polynomial".into()));
    }
    let mut polys = vec![f.clone()];
    polys.extend((0..3).map(|v| f.derivative(v)));
    projective_zeroset_empty(&polys)
}

/// A term `c·m` has the same zero set as the product of the variables in `m`.
fn radical_shortcut(p: &HomPoly) -> HomPoly {
    match p.num_terms() {
        1 => {
            let m = p.leading().unwrap().0;
            HomPoly::monomial(p.field(), Monomial::new(m.x.min(1), m.y.min(1), m.z.min(1)))
        }
        _ => p.clone(),
    }
}

/// Rank span of `{f·u}` inside `S_n`, for every `f` with `deg f <= n`.
fn span_rank_in_s<O: Ops>(ops: &O, polys: &[HomPoly], n: i64) -> usize {
    let width = num_monomials(n);
    let mut rows = Vec::new();
    for f in polys {
        let lifted: Vec<(Monomial, O::E)> = f.terms().map(|(m, c)| (*m, ops.lift(c))).collect();
        for u in monomial_basis(n - f.degree()) {
            let mut row = vec![ops.zero(); width];
            for (m, c) in &lifted {
                row[monomial_index(&m.mul(&u))] = c.clone();
            }
            rows.push(row);
        }
    }
    rref(ops, rows, width, false).rank()
}

/// Decides whether the forms have no common zero in `P²` over the algebraic
/// closure, by a single rank computation at the Macaulay degree
/// `N = e1 + e2 + e3 - 2` (three largest degrees).
pub fn projective_zeroset_empty(polys: &[HomPoly]) -> Result<bool> {
    let Some(first) = polys.first() else {
        return Err(Error::Usage("emptiness test needs at least one polynomial".into()));
    };
    let field = first.field();
    if polys.iter().any(|p| p.field() != field) {
        return Err(Error::Usage("polynomials over different fields".into()));
    }
    let nz: Vec<HomPoly> = polys.iter().filter(|p| !p.is_zero()).map(radical_shortcut).collect();
    if nz.is_empty() {
        return Err(Error::Usage("all polynomials are zero".into()));
    }
    if nz.iter().any(|p| p.degree() == 0) {
        return Ok(true);
    }
    if nz.len() < 3 {
        return Ok(false);
    }
    let mut degs: Vec<i64> = nz.iter().map(|p| p.degree()).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let n = degs[0] + degs[1] + degs[2] - 2;
    let full = num_monomials(n);
    Ok(with_ops!(field, ops => span_rank_in_s(&ops, &nz, n) == full))
}

/// Coordinates of `Σ c·u` with `u` ranging over a small set, in `R_m`.
pub(crate) struct RingKernel<'a, O: Ops> {
    pub ops: O,
    pub ring: &'a CurveRing,
    tail: Vec<(Monomial, O::E)>,
}

impl<'a, O: Ops> RingKernel<'a, O> {
    pub fn new(ops: O, ring: &'a CurveRing) -> Self {
        let tail = ring.tail.iter().map(|(m, c)| (*m, ops.lift(c))).collect();
        RingKernel { ops, ring, tail }
    }

    pub fn lift_poly(&self, f: &HomPoly) -> Vec<(Monomial, O::E)> {
        f.terms().map(|(m, c)| (*m, self.ops.lift(c))).collect()
    }

    /// Reduces a dense `S_m` vector in place, then extracts standard coordinates.
    pub fn to_ring(&self, mut v: Vec<O::E>, dd: &DegreeData) -> Vec<O::E> {
        let ops = &self.ops;
        let lead = self.ring.lead;
        for idx in 0..v.len() {
            if dd.std_pos[idx] != NONSTD || ops.is_zero(&v[idx]) {
                continue;
            }
            let c = std::mem::replace(&mut v[idx], ops.zero());
            let q = lead.quotient_of(&dd.basis[idx]).expect("non-standard monomials are divisible by lead");
            for (t, a) in &self.tail {
                let j = monomial_index(&q.mul(t));
                ops.sub_mul_assign(&mut v[j], &c, a);
            }
        }
        dd.std.iter().map(|&i| v[i].clone()).collect()
    }

    /// Class of `f·u` in `R_m`, `m = deg f + deg u`.
    pub fn product(&self, f: &[(Monomial, O::E)], u: &Monomial, dd: &DegreeData) -> Vec<O::E> {
        let mut v = vec![self.ops.zero(); dd.basis.len()];
        for (m, c) in f {
            let j = monomial_index(&m.mul(u));
            v[j] = self.ops.add(&v[j], c);
        }
        self.to_ring(v, dd)
    }

    pub fn poly(&self, f: &HomPoly) -> Vec<O::E> {
        let dd = self.ring.degree_data(f.degree());
        let mut v = vec![self.ops.zero(); dd.basis.len()];
        for (m, c) in f.terms() {
            v[monomial_index(m)] = self.ops.lift(c);
        }
        self.to_ring(v, &dd)
    }

    /// Rows `f_i·u`, `u` standard of degree `m - d_i`, with their labels.
    pub fn product_rows(&self, gens: &[HomPoly], m: i64) -> (Vec<Vec<O::E>>, Vec<(usize, Monomial)>) {
        let dd = self.ring.degree_data(m);
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let lifted = self.lift_poly(g);
            for u in self.ring.std_basis(m - g.degree()) {
                rows.push(self.product(&lifted, &u, &dd));
                labels.push((i, u));
            }
        }
        (rows, labels)
    }
}

impl CurveRing {
    pub fn equation(&self) -> &HomPoly {
        &self.f
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Always true: construction fails for singular curves.
    pub fn is_smooth(&self) -> bool {
        true
    }

    pub fn lead_monomial(&self) -> Monomial {
        self.lead
    }

    pub(crate) fn degree_data(&self, m: i64) -> Arc<DegreeData> {
        if let Some(d) = self.cache.lock().unwrap().get(&m) {
            return d.clone();
        }
        let basis = monomial_basis(m);
        let mut std_pos = vec![NONSTD; basis.len()];
        let mut std = Vec::new();
        for (i, u) in basis.iter().enumerate() {
            if !self.lead.divides(u) {
                std_pos[i] = std.len() as u32;
                std.push(i);
            }
        }
        let d = Arc::new(DegreeData { basis, std_pos, std });
        self.cache.lock().unwrap().insert(m, d.clone());
        d
    }

    /// `dim R_m = C(m+2,2) - C(m-δ+2,2)`; zero for negative `m`.
    pub fn hilbert_dim(&self, m: i64) -> usize {
        num_monomials(m) - num_monomials(m - self.delta as i64)
    }

    /// Standard monomials of degree `m`, in basis order.
    pub fn std_basis(&self, m: i64) -> Vec<Monomial> {
        let dd = self.degree_data(m);
        dd.std.iter().map(|&i| dd.basis[i]).collect()
    }

    /// Coordinates of the class of `f` in `R_m`.
    pub fn ring_piece_reduce(&self, f: &HomPoly) -> Result<CoordVector> {
        self.check_field(f)?;
        Ok(with_ops!(self.field, ops => {
            let k = RingKernel::new(ops, self);
            k.poly(f).iter().map(|e| k.ops.lower(e)).collect()
        }))
    }

    /// The polynomial in standard monomials with the given `R_m` coordinates.
    pub fn from_ring_coords(&self, m: i64, v: &[Scalar]) -> Result<HomPoly> {
        let std = self.std_basis(m);
        if std.len() != v.len() {
            return Err(Error::Usage(format!("R_{m} has dimension {}, got {} coordinates", std.len(), v.len())));
        }
        Ok(HomPoly::from_terms(self.field, m, std.into_iter().zip(v.iter().cloned()))?)
    }

    /// Canonical representative of `f mod F`.
    pub fn normal_form(&self, f: &HomPoly) -> Result<HomPoly> {
        let v = self.ring_piece_reduce(f)?;
        self.from_ring_coords(f.degree(), &v)
    }

    pub fn is_zero_in_ring(&self, f: &HomPoly) -> Result<bool> {
        Ok(self.ring_piece_reduce(f)?.iter().all(|s| s.is_zero()))
    }

    fn check_field(&self, f: &HomPoly) -> Result<()> {
        if f.field() != self.field {
            return Err(Error::Usage(format!("polynomial over {} used on a curve over {}", f.field(), self.field)));
        }
        Ok(())
    }

    /// `V(polys) ∩ Y = ∅`, decided by a rank computation in `R_N` where `N`
    /// is the Macaulay degree of `polys ∪ {F}`.
    pub fn zeroset_empty_on_curve(&self, polys: &[HomPoly]) -> Result<bool> {
        for p in polys {
            self.check_field(p)?;
        }
        let mut nz = Vec::new();
        for p in polys {
            if p.degree() >= 0 && !self.is_zero_in_ring(p)? {
                if p.degree() == 0 {
                    return Ok(true);
                }
                nz.push(radical_shortcut(p));
            }
        }
        if nz.len() < 2 {
            return Ok(false);
        }
        let mut degs: Vec<i64> = nz.iter().map(|p| p.degree()).collect();
        degs.push(self.delta as i64);
        degs.sort_unstable_by(|a, b| b.cmp(a));
        let n = degs[0] + degs[1] + degs[2] - 2;
        let full = self.hilbert_dim(n);
        Ok(with_ops!(self.field, ops => {
            let k = RingKernel::new(ops, self);
            let (rows, _) = k.product_rows(&nz, n);
            rref(&k.ops, rows, full, false).rank() == full
        }))
    }
}

/// Homogeneous generators `f_1, ..., f_n` of an ideal of `R`.
#[derive(Debug, Clone)]
pub struct IdealGens {
    ring: CurveRing,
    gens: Vec<HomPoly>,
    primary: bool,
}


impl IdealGens {
    /// Rejects generators that vanish in `R`; computes the primary flag.
    pub fn new(ring: &CurveRing, gens: Vec<HomPoly>) -> Result<Self> {
        let mut ig = Self::unchecked(ring, gens)?;
        ig.primary = ig.compute_primary()?;
        Ok(ig)
    }

    /// Uses a primary flag known from elsewhere (e.g. `V(f^q) = V(f)`).
    pub(crate) fn with_primary(ring: &CurveRing, gens: Vec<HomPoly>, primary: bool) -> Result<Self> {
        let mut ig = Self::unchecked(ring, gens)?;
        ig.primary = primary;
        Ok(ig)
    }

    fn unchecked(ring: &CurveRing, gens: Vec<HomPoly>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Usage("ideal needs at least one generator".into()));
        }
        for g in &gens {
            ring.check_field(g)?;
            if g.degree() < 0 || ring.is_zero_in_ring(g)? {
                return Err(Error::Usage(format!("generator {g} is zero in R")));
            }
        }
        Ok(IdealGens { ring: ring.clone(), gens, primary: false })
    }

    fn compute_primary(&self) -> Result<bool> {
        self.ring.zeroset_empty_on_curve(&self.gens)
    }

    pub fn ring(&self) -> &CurveRing {
        &self.ring
    }

    pub fn gens(&self) -> &[HomPoly] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.gens.iter().map(|g| g.degree()).collect()
    }

    pub fn degree_sum(&self) -> i64 {
        self.degrees().iter().sum()
    }

    /// `V(f_1, ..., f_n) ∩ Y = ∅`.
    pub fn is_primary(&self) -> bool {
        self.primary
    }

    /// `(x^a, y^a, z^a)` up to order, if the generators have that shape.
    pub fn power_exponent(&self) -> Option<u32> {
        if self.gens.len() != 3 {
            return None;
        }
        let mut seen = [false; 3];
        let mut a = None;
        for g in &self.gens {
            let m = g.as_monomial()?;
            let nonzero: Vec<usize> = (0..3).filter(|&v| m.exponent(v) > 0).collect();
            if nonzero.len() != 1 {
                return None;
            }
            let v = nonzero[0];
            let e = m.exponent(v);
            if seen[v] || a.is_some_and(|a| a != e) {
                return None;
            }
            seen[v] = true;
            a = Some(e);
        }
        a
    }
}

impl fmt::Display for IdealGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Row-reduced basis of a subspace of `R_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: i64,
    pub ambient_dim: usize,
    pub rows: Vec<CoordVector>,
    pub pivots: Vec<usize>,
}

impl GradedPiece {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.codim() == 0
    }

    /// Coordinates without a pivot; the corresponding standard monomials
    /// represent a basis of the quotient.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient_dim).filter(|&j| !is_pivot[j]).collect()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let Some(field) = v.first().map(|s| s.field()) else { return true };
        with_ops!(field, ops => {
            let rows: Vec<Vec<_>> = self.rows.iter().map(|r| r.iter().map(|s| ops.lift(s)).collect()).collect();
            let sub = Subspace { echelon: crate::polyspace::linalg::Rref { rows, pivots: self.pivots.clone(), ncols: self.ambient_dim } };
            let vv: Vec<_> = v.iter().map(|s| ops.lift(s)).collect();
            sub.contains(&ops, &vv)
        })
    }
}

/// Degree-`m` piece of `(f_1, ..., f_n) ⊂ R`.
pub fn ideal_graded_piece(gens: &IdealGens, m: i64) -> GradedPiece {
    let ring = &gens.ring;
    let ambient = ring.hilbert_dim(m);
    with_ops!(ring.field, ops => {
        let k = RingKernel::new(ops, ring);
        let (rows, _) = k.product_rows(&gens.gens, m);
        let r = rref(&k.ops, rows, ambient, true);
        GradedPiece {
            degree: m,
            ambient_dim: ambient,
            rows: r.rows.iter().map(|row| row.iter().map(|e| k.ops.lower(e)).collect()).collect(),
            pivots: r.pivots,
        }
    })
}

/// Membership of `f` in the ideal, with cofactors `h_i` (`Σ h_i f_i ≡ f mod F`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub cofactors: Option<Vec<HomPoly>>,
}

pub fn ideal_membership(gens: &IdealGens, f: &HomPoly) -> Result<Membership> {
    let ring = &gens.ring;
    ring.check_field(f)?;
    let m = f.degree();
    let field = ring.field;
    let solved = with_ops!(field, ops => {
        let k = RingKernel::new(ops, ring);
        let target = k.poly(f);
        if target.iter().all(|e| k.ops.is_zero(e)) {
            Some(Vec::new())
        } else {
            let (rows, labels) = k.product_rows(&gens.gens, m);
            solve_combination(&k.ops, &target, &rows).map(|c| {
                labels.into_iter().zip(c).filter(|(_, e)| !k.ops.is_zero(e)).map(|(l, e)| (l, k.ops.lower(&e))).collect::<Vec<_>>()
            })
        }
    });
    Ok(match solved {
        None => Membership { member: false, cofactors: None },
        Some(parts) => {
            let mut cof: Vec<HomPoly> = gens.gens.iter().map(|g| HomPoly::zero(field, m - g.degree())).collect();
            for ((i, u), c) in parts {
                cof[i] = cof[i].add(&HomPoly::term(field, u, c))?;
            }
            Membership { member: true, cofactors: Some(cof) }
        }
    })
}

/// Checks `Σ h_i f_i - f ≡ 0 mod F`.
pub fn verify_membership(gens: &IdealGens, f: &HomPoly, cofactors: &[HomPoly]) -> Result<bool> {
    if cofactors.len() != gens.len() {
        return Ok(false);
    }
    let mut acc = f.neg();
    for (h, g) in cofactors.iter().zip(&gens.gens) {
        if h.degree() + g.degree() != f.degree() {
            return Ok(false);
        }
        acc = acc.add(&h.mul(g)?)?;
    }
    gens.ring.is_zero_in_ring(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use proptest::prelude::*;
    use proptest::test_runner::{Config, RngSeed};

    fn field(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn poly(s: &str, p: u64) -> HomPoly {
        parse_poly(s, field(p)).unwrap()
    }

    fn curve(s: &str, p: u64) -> CurveRing {
        make_curve(&poly(s, p), field(p)).unwrap()
    }

    fn ideal(r: &CurveRing, s: &[&str]) -> IdealGens {
        let p = r.field().characteristic();
        IdealGens::new(r, s.iter().map(|t| poly(t, p)).collect()).unwrap()
    }

    #[test]
    fn invariants_of_examples() {
        let c = curve("x^3+y^3+z^3", 7);
        assert_eq!((c.delta(), c.genus()), (3, 1));
        let c = curve("x^7+y^7+z^7", 3);
        assert_eq!((c.delta(), c.genus()), (7, 15));
        let e = make_curve(&poly("x^2+y^2", 0), field(0)).unwrap_err();
        assert!(matches!(e, Error::Validation(_)));
    }

    #[test]
    fn refuses_char_dividing_degree() {
        let e = make_curve(&poly("x^3+y^3+z^3", 3), field(3)).unwrap_err();
        assert!(e.to_string().contains("divides"));
        assert!(matches!(make_curve(&HomPoly::zero(field(5), 3), field(5)), Err(Error::Usage(_))));
    }

    #[test]
    fn smoothness_examples() {
        assert!(smoothness_check(&poly("x^4+y^4+z^4", 5)).unwrap());
        assert!(!smoothness_check(&poly("x^5+y^5+z^5", 5)).unwrap());
        assert!(!smoothness_check(&poly("x*y*z", 0)).unwrap());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(curve("x^3+y^3+z^3", 0).hilbert_dim(3), 9);
        let q5 = curve("x^5+y^5+z^5", 0);
        assert_eq!(q5.hilbert_dim(6), 25);
        assert_eq!(q5.hilbert_dim(0), 1);
        assert_eq!(q5.hilbert_dim(-1), 0);
    }

    #[test]
    fn reduction_examples() {
        let c = curve("x^3+y^3+z^3", 0);
        assert!(c.ring_piece_reduce(c.equation()).unwrap().iter().all(|s| s.is_zero()));
        let f = poly("x^4+x*y^3+x*z^3+y^4", 0);
        assert_eq!(c.ring_piece_reduce(&f).unwrap(), c.ring_piece_reduce(&poly("y^4", 0)).unwrap());
        assert_eq!(c.normal_form(&poly("x^3", 0)).unwrap(), poly("-y^3-z^3", 0));
    }

    #[test]
    fn ideal_piece_on_fermat_cubic() {
        let c = curve("x^3+y^3+z^3", 0);
        let i = ideal(&c, &["x^2", "y^2", "z^2"]);
        let piece = ideal_graded_piece(&i, 3);
        // R_3 is 9-dimensional and the piece misses exactly the xyz line
        assert_eq!((piece.ambient_dim, piece.dim()), (9, 8));
        assert!(!ideal_membership(&i, &poly("x*y*z", 0)).unwrap().member);
        assert_eq!(ideal_graded_piece(&i, 1).dim(), 0);
        let lin = ideal(&c, &["x", "y", "z"]);
        assert_eq!(ideal_graded_piece(&lin, 1).dim(), 3);
    }

    #[test]
    fn membership_witness_verifies() {
        let c = curve("x^4+y^4-z^4", 7);
        let i = ideal(&c, &["x^2+y*z", "y^2", "z^3"]);
        let f = poly("x^2+y*z", 7).mul(&poly("x*y+3*z^2", 7)).unwrap();
        let mem = ideal_membership(&i, &f).unwrap();
        assert!(mem.member);
        assert!(verify_membership(&i, &f, mem.cofactors.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn big_membership_over_f5() {
        let c = curve("x^4+y^4+z^4", 5);
        let i = ideal(&c, &["x^100", "y^100"]);
        let mem = ideal_membership(&i, &poly("z^100", 5)).unwrap();
        assert!(mem.member);
        assert!(verify_membership(&i, &poly("z^100", 5), mem.cofactors.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn zeroset_examples() {
        assert!(projective_zeroset_empty(&[poly("x", 0), poly("y", 0), poly("z", 0)]).unwrap());
        assert!(!projective_zeroset_empty(&[poly("x^2", 0), poly("y^2", 0)]).unwrap());
        assert!(projective_zeroset_empty(&[HomPoly::zero(field(0), 2)]).is_err());
        // z, az, bz+cx+dy, x^δ+ay^δ+bz^δ+cxz^(δ-1)+dyz^(δ-1) with (-d/c)^δ = -a: δ=3, c=1, d=-1, a=-1, b=2
        let polys = [poly("z", 0), poly("-z", 0), poly("2*z+x-y", 0), poly("x^3-y^3+2*z^3+x*z^2-y*z^2", 0)];
        assert!(!projective_zeroset_empty(&polys).unwrap());
    }

    fn arb_triple() -> impl Strategy<Value = (Vec<(u32, u32, u32, i64)>, [[i64; 3]; 3])> {
        (
            proptest::collection::vec((0u32..3, 0u32..3, 0u32..3, 1i64..5), 3..5),
            [[-2i64..3, -2i64..3, -2i64..3], [-2i64..3, -2i64..3, -2i64..3], [-2i64..3, -2i64..3, -2i64..3]],
        )
    }

    proptest! {
        #![proptest_config(Config { cases: 200, rng_seed: RngSeed::Fixed(17), ..Config::default() })]

        #[test]
        fn hilbert_counts_standard_monomials(m in 0i64..31, d in 1u32..6) {
            let k = field(7);
            let fstr = format!("x^{d}+y^{d}+z^{d}");
            let c = match make_curve(&parse_poly(&fstr, k).unwrap(), k) { Ok(c) => c, Err(_) => return Ok(()) };
            prop_assert_eq!(c.hilbert_dim(m), c.std_basis(m).len());
            if m >= d as i64 - 2 {
                prop_assert_eq!(c.hilbert_dim(m) as i64, d as i64 * m + 1 - c.genus() as i64);
            }
        }

        #[test]
        fn membership_is_monotone(e in 0u32..3, f in 0u32..3, g in 0u32..3) {
            let c = curve("x^4+y^4+z^4", 7);
            let i = ideal(&c, &["x^2", "x*y+z^2", "y^3"]);
            let base = poly("x*y+z^2", 7).mul(&poly("x+y", 7)).unwrap();
            let h = HomPoly::monomial(field(7), Monomial::new(e, f, g));
            prop_assert!(ideal_membership(&i, &base.mul(&h).unwrap()).unwrap().member);
        }

        #[test]
        fn emptiness_invariant_under_linear_change((terms, a) in arb_triple()) {
            let k = field(5);
            let polys: Vec<HomPoly> = terms.iter().map(|&(i, j, l, c)| {
                let d = i + j + l + 1;
                HomPoly::term(k, Monomial::new(i + 1, j, l), k.from_i64(c))
                    .add(&HomPoly::term(k, Monomial::new(0, d - l, l), k.one())).unwrap()
                    .add(&HomPoly::term(k, Monomial::new(0, 0, d), k.from_i64(c + 1))).unwrap()
            }).collect();
            let mat = [0, 1, 2].map(|r| [0, 1, 2].map(|s| k.from_i64(a[r][s])));
            let det = {
                let m = a;
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            };
            prop_assume!(det.rem_euclid(5) != 0);
            let moved: Vec<HomPoly> = polys.iter().map(|f| f.substitute_linear(&mat).unwrap()).collect();
            prop_assume!(moved.iter().any(|f| !f.is_zero()));
            prop_assert_eq!(projective_zeroset_empty(&polys).unwrap(), projective_zeroset_empty(&moved).unwrap());
        }
    }
}
