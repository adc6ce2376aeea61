//! Graded pieces of the syzygy module of `(f_1, ..., f_n)` over `R`.
//!
//! A syzygy of total degree `k` is a tuple `(g_i)` with `g_i ∈ R_{k-d_i}` and
//! `Σ g_i f_i = 0` in `R`. The domain is `⊕ R_{k-d_i}` (not `⊕ S_{k-d_i}`), so
//! `dim Syz_k = h⁰(Syz(k))`.

use crate::curvering::{CurveRing, IdealGens, RingKernel};
use crate::error::{Error, Result};
use crate::exactfield::{with_ops, FieldSpec, Ops, Scalar};
use crate::polyspace::linalg::{kernel_from_rref, rref, Matrix};
use crate::polyspace::{rank, HomPoly, Monomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyVec {
    pub entries: Vec<HomPoly>,
    pub total_degree: i64,
}

impl SyzygyVec {
    /// Checks degrees and the relation `Σ g_i f_i ≡ 0`.
    pub fn new(gens: &IdealGens, entries: Vec<HomPoly>) -> Result<Self> {
        let d = gens.degrees();
        if entries.len() != d.len() {
            return Err(Error::Usage(format!("syzygy has {} entries for {} generators", entries.len(), d.len())));
        }
        let k = entries.iter().zip(&d).map(|(g, di)| g.degree() + di).max().unwrap_or(0);
        let s = SyzygyVec { entries, total_degree: k };
        if s.entries.iter().zip(&d).any(|(g, di)| g.degree() + di != k && !g.is_zero()) {
            return Err(Error::Usage("syzygy entries have inconsistent degrees".into()));
        }
        let s = SyzygyVec {
            entries: s
                .entries
                .into_iter()
                .zip(&d)
                .map(|(g, di)| if g.is_zero() { HomPoly::zero(g.field(), k - di) } else { g })
                .collect(),
            total_degree: k,
        };
        if !s.verify(gens)? {
            return Err(Error::Validation(format!("({}) is not a syzygy", s.entries_text())));
        }
        Ok(s)
    }

    /// `Σ g_i f_i ≡ 0 mod F`.
    pub fn verify(&self, gens: &IdealGens) -> Result<bool> {
        if self.entries.len() != gens.len() {
            return Ok(false);
        }
        let ring = gens.ring();
        let mut acc = HomPoly::zero(ring.field(), self.total_degree);
        for (g, f) in self.entries.iter().zip(gens.gens()) {
            if g.degree() + f.degree() != self.total_degree {
                return Ok(false);
            }
            acc = acc.add(&g.mul(f)?)?;
        }
        ring.is_zero_in_ring(&acc)
    }

    pub fn is_zero_in(&self, ring: &CurveRing) -> Result<bool> {
        for g in &self.entries {
            if !ring.is_zero_in_ring(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Concatenated `R_{k-d_i}` coordinates.
    pub fn domain_coords(&self, ring: &CurveRing) -> Result<Vec<Scalar>> {
        let mut out = Vec::new();
        for g in &self.entries {
            out.extend(ring.ring_piece_reduce(g)?);
        }
        Ok(out)
    }

    pub fn entries_text(&self) -> String {
        self.entries.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(", ")
    }

    /// `(x^e, y^e, z^e)`-style shift: each entry multiplied by `h`.
    pub fn times(&self, h: &HomPoly) -> Result<SyzygyVec> {
        Ok(SyzygyVec {
            entries: self.entries.iter().map(|g| g.mul(h)).collect::<std::result::Result<_, _>>()?,
            total_degree: self.total_degree + h.degree(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygySpace {
    pub total_degree: i64,
    pub basis: Vec<SyzygyVec>,
}

impl SyzygySpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Labelled coordinates `(i, u)` of the domain `⊕ R_{k-d_i}`.
fn domain_labels(gens: &IdealGens, k: i64) -> Vec<(usize, Monomial)> {
    let ring = gens.ring();
    let mut labels = Vec::new();
    for (i, d) in gens.degrees().into_iter().enumerate() {
        for u in ring.std_basis(k - d) {
            labels.push((i, u));
        }
    }
    labels
}

fn assemble(gens: &IdealGens, k: i64, labels: &[(usize, Monomial)], coeffs: &[Scalar]) -> SyzygyVec {
    let field = gens.ring().field();
    let mut entries: Vec<HomPoly> = gens.degrees().iter().map(|d| HomPoly::zero(field, k - d)).collect();
    for ((i, u), c) in labels.iter().zip(coeffs) {
        if !c.is_zero() {
            entries[*i] = entries[*i].add(&HomPoly::term(field, *u, c.clone())).expect("same degree");
        }
    }
    SyzygyVec { entries, total_degree: k }
}

/// Basis of `Syz(f_1, ..., f_n)_k`, the kernel of `⊕ R_{k-d_i} -> R_k`.
pub fn syzygy_space(gens: &IdealGens, k: i64) -> SyzygySpace {
    let ring = gens.ring();
    let width = ring.hilbert_dim(k);
    let (labels, kernel) = with_ops!(ring.field(), ops => {
        let kr = RingKernel::new(ops, ring);
        let (rows, labels) = kr.product_rows(gens.gens(), k);
        let n = rows.len();
        let mut cols = vec![vec![kr.ops.zero(); n]; width];
        for (j, row) in rows.iter().enumerate() {
            for (i, e) in row.iter().enumerate() {
                cols[i][j] = e.clone();
            }
        }
        let r = rref(&kr.ops, cols, n, true);
        let ker: Vec<Vec<Scalar>> = kernel_from_rref(&kr.ops, &r).iter().map(|v| v.iter().map(|e| kr.ops.lower(e)).collect()).collect();
        (labels, ker)
    });
    SyzygySpace { total_degree: k, basis: kernel.iter().map(|c| assemble(gens, k, &labels, c)).collect() }
}

/// `dim Syz_k`, by rank only.
pub fn syzygy_dim(gens: &IdealGens, k: i64) -> usize {
    let ring = gens.ring();
    let width = ring.hilbert_dim(k);
    with_ops!(ring.field(), ops => {
        let kr = RingKernel::new(ops, ring);
        let (rows, _) = kr.product_rows(gens.gens(), k);
        let n = rows.len();
        n - rref(&kr.ops, rows, width, false).rank()
    })
}

/// Span of the standard syzygies `A(-f_2,f_1,0) + B(f_3,0,-f_1) + C(0,-f_3,f_2)`.
pub fn koszul_basis(gens: &IdealGens, k: i64) -> Result<SyzygySpace> {
    if gens.len() != 3 {
        return Err(Error::Unsupported(format!("Koszul syzygies need three generators, got {}", gens.len())));
    }
    let ring = gens.ring();
    let field = ring.field();
    let f = gens.gens();
    let zero = |d: i64| HomPoly::zero(field, d);
    let d = gens.degrees();
    let mut vecs = Vec::new();
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    for &(i, j) in &pairs {
        for m in crate::polyspace::monomial_basis(k - d[i] - d[j]) {
            let u = HomPoly::monomial(field, m);
            let mut e: Vec<HomPoly> = (0..3).map(|l| zero(k - d[l])).collect();
            e[i] = f[j].mul(&u)?;
            e[j] = f[i].mul(&u)?.neg();
            vecs.push(SyzygyVec { entries: e, total_degree: k });
        }
    }
    let labels = domain_labels(gens, k);
    let rows: Vec<Vec<Scalar>> = vecs.iter().map(|s| s.domain_coords(ring)).collect::<Result<_>>()?;
    let reduced = with_ops!(field, ops => {
        let lifted: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|s| ops.lift(s)).collect()).collect();
        let r = rref(&ops, lifted, labels.len(), true);
        r.rows.iter().map(|row| row.iter().map(|e| ops.lower(e)).collect::<Vec<Scalar>>()).collect::<Vec<_>>()
    });
    Ok(SyzygySpace { total_degree: k, basis: reduced.iter().map(|c| assemble(gens, k, &labels, c)).collect() })
}

/// `dim` of the span of `a ∪ b`, both inside `⊕ R_{k-d_i}`.
pub fn joint_rank(ring: &CurveRing, a: &SyzygySpace, b: &SyzygySpace) -> Result<usize> {
    let mut rows = Vec::new();
    for s in a.basis.iter().chain(&b.basis) {
        rows.push(s.domain_coords(ring)?);
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(rank(&Matrix::from_rows(ring.field(), rows)?))
}

/// Least `k <= k_max` with `Syz_k ≠ 0`. Syzygy spaces grow with `k` because
/// `R` is a domain, so a galloping search followed by bisection is exact.
pub fn minimal_syzygy_degree(gens: &IdealGens, k_max: Option<i64>) -> Option<i64> {
    let k_max = k_max.unwrap_or_else(|| gens.degree_sum());
    let lo = *gens.degrees().iter().min().unwrap();
    if k_max < lo {
        return None;
    }
    let mut last_zero = lo - 1;
    let mut step = 1;
    let mut probe = lo;
    let first_nonzero = loop {
        let k = probe.min(k_max);
        if syzygy_dim(gens, k) > 0 {
            break k;
        }
        if k == k_max {
            return None;
        }
        last_zero = k;
        probe = k + step;
        step *= 2;
    };
    let (mut a, mut b) = (last_zero, first_nonzero);
    while b - a > 1 {
        let mid = a + (b - a) / 2;
        if syzygy_dim(gens, mid) > 0 {
            b = mid;
        } else {
            a = mid;
        }
    }
    Some(b)
}

/// A syzygy without zeros on the curve.
pub fn is_primary_syzygy(s: &SyzygyVec, ring: &CurveRing) -> Result<bool> {
    if s.is_zero_in(ring)? {
        return Err(Error::Usage("the zero syzygy has no primary status".into()));
    }
    ring.zeroset_empty_on_curve(&s.entries)
}

fn random_scalar(field: FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match field.characteristic() {
        0 => field.from_i64(rng.random_range(-3..=3)),
        p => field.from_i64(rng.random_range(0..p) as i64),
    }
}

/// Searches `Syz_k` for a primary syzygy: basis vectors first, then
/// `trials` seeded random combinations. `None` means "not found".
pub fn find_primary_syzygy(gens: &IdealGens, k: i64, trials: usize, seed: u64) -> Result<Option<SyzygyVec>> {
    let space = syzygy_space(gens, k);
    find_primary_in(gens.ring(), &space, trials, seed)
}

pub fn find_primary_in(ring: &CurveRing, space: &SyzygySpace, trials: usize, seed: u64) -> Result<Option<SyzygyVec>> {
    for s in &space.basis {
        if is_primary_syzygy(s, ring)? {
            return Ok(Some(s.clone()));
        }
    }
    if space.dim() < 2 {
        return Ok(None);
    }
    let field = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (space.total_degree as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for _ in 0..trials {
        let mut entries: Vec<HomPoly> = space.basis[0].entries.iter().map(|g| HomPoly::zero(field, g.degree())).collect();
        for b in &space.basis {
            let c = random_scalar(field, &mut rng);
            for (e, g) in entries.iter_mut().zip(&b.entries) {
                *e = e.add(&g.scale(&c)?)?;
            }
        }
        let s = SyzygyVec { entries, total_degree: space.total_degree };
        if s.is_zero_in(ring)? {
            continue;
        }
        if is_primary_syzygy(&s, ring)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
