//! Line-bundle cohomology on `Y = Proj R`, degrees of twisted syzygy sheaves,
//! forcing classes and Čech-class vanishing.
//!
//! Plane curves are projectively normal, so `H⁰(Y, O_Y(t)) = R_t`, and
//! `ω_Y = O_Y(δ-3)` gives `h¹(O_Y(t)) = h⁰(O_Y(δ-3-t))`.
//!
//! For a system of parameters `(f_i, f_j)` the two opens `D₊(f_i)`, `D₊(f_j)`
//! cover `Y`, and `H¹(Y, O_Y(t))` is the degree-`t` part of
//! `R_{f_i f_j} / (R_{f_i} + R_{f_j})`. Since `f_i, f_j` is a regular sequence
//! in the Cohen–Macaulay ring `R`, the class of `h/(f_i^a f_j^b)` is zero
//! exactly when `h ∈ (f_i^a, f_j^b)`.

use crate::curvering::{ideal_membership, CurveRing, IdealGens};
use crate::error::{Error, Result};
use crate::polyspace::HomPoly;
use crate::syzygy::SyzygyVec;
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn h0_line(ring: &CurveRing, t: i64) -> usize {
    ring.hilbert_dim(t)
}

pub fn h1_line(ring: &CurveRing, t: i64) -> usize {
    h0_line(ring, ring.delta() as i64 - 3 - t)
}

/// Numerical data of `Syz(m)` for `n` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafDegreeData {
    pub n: usize,
    pub m: i64,
    pub degrees: Vec<i64>,
    pub delta: u32,
    /// `((n-1)m - Σd_i)·δ`
    pub degree: i64,
    pub rank: usize,
    pub slope: BigRational,
}

pub fn syz_sheaf_data(gens: &IdealGens, m: i64) -> SheafDegreeData {
    let n = gens.len();
    let delta = gens.ring().delta();
    let degree = ((n as i64 - 1) * m - gens.degree_sum()) * delta as i64;
    let rank = n.saturating_sub(1);
    let slope = if rank == 0 {
        BigRational::from_integer(BigInt::from(0))
    } else {
        BigRational::new(BigInt::from(degree), BigInt::from(rank as i64))
    };
    SheafDegreeData { n, m, degrees: gens.degrees(), delta, degree, rank, slope }
}

/// The class `δ(f_0) ∈ H¹(Y, Syz(m))` together with the parameter pair used
/// for its Čech representative `(f_0/f_i, -f_0/f_j)`.
#[derive(Debug, Clone)]
pub struct ForcingClass {
    pub f0: HomPoly,
    pub gens: IdealGens,
    pub pair: Option<(usize, usize)>,
}

impl ForcingClass {
    /// Picks the first index pair that is a system of parameters on `Y`.
    pub fn new(gens: &IdealGens, f0: HomPoly) -> Result<Self> {
        if f0.field() != gens.ring().field() {
            return Err(Error::Usage(format!("element over {} used on a curve over {}", f0.field(), gens.ring().field())));
        }
        let n = gens.len();
        let mut pair = None;
        'outer: for i in 0..n {
            for j in i + 1..n {
                let g = gens.gens();
                if gens.ring().zeroset_empty_on_curve(&[g[i].clone(), g[j].clone()])? {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        Ok(ForcingClass { f0, gens: gens.clone(), pair })
    }

    /// Uses a pair validated elsewhere.
    pub fn with_pair(gens: &IdealGens, f0: HomPoly, pair: Option<(usize, usize)>) -> Self {
        ForcingClass { f0, gens: gens.clone(), pair }
    }

    pub fn degree(&self) -> i64 {
        self.f0.degree()
    }
}

/// The connecting map `R_m -> H¹(Y, Syz(m))` has kernel `(f_1, ..., f_n)_m`.
pub fn forcing_class_nonzero(fc: &ForcingClass) -> Result<bool> {
    Ok(!ideal_membership(&fc.gens, &fc.f0)?.member)
}

/// Vanishing of `[h / (f_i^a f_j^b)]` in `H¹(Y, O_Y(deg h - a d_i - b d_j))`.
pub fn cech_class_vanishes(ring: &CurveRing, h: &HomPoly, fi: &HomPoly, a: u32, fj: &HomPoly, b: u32) -> Result<bool> {
    if !ring.zeroset_empty_on_curve(&[fi.clone(), fj.clone()])? {
        return Err(Error::Precondition(format!("({fi}, {fj}) is not a system of parameters on the curve")));
    }
    cech_vanishes_unchecked(ring, h, fi, a, fj, b)
}

pub(crate) fn cech_vanishes_unchecked(ring: &CurveRing, h: &HomPoly, fi: &HomPoly, a: u32, fj: &HomPoly, b: u32) -> Result<bool> {
    let t = h.degree() - a as i64 * fi.degree() - b as i64 * fj.degree();
    if h1_line(ring, t) == 0 || ring.is_zero_in_ring(h)? {
        return Ok(true);
    }
    let ig = IdealGens::with_primary(ring, vec![fi.pow(a), fj.pow(b)], false)?;
    Ok(ideal_membership(&ig, h)?.member)
}

/// Image of the forcing class under `Syz(m) -> O_Y(m + k - Σd)` induced by
/// the rank-one quotient along `s`. Returns `true` when it vanishes.
///
/// With pair `(i, j)` and `l` the remaining index, the representative maps to
/// `± f_0 g_l / (f_i f_j)`.
pub fn quotient_class_image(fc: &ForcingClass, s: &SyzygyVec) -> Result<bool> {
    if fc.gens.len() != 3 || s.entries.len() != 3 {
        return Err(Error::Unsupported("quotient classes need three generators".into()));
    }
    let Some((i, j)) = fc.pair else {
        return Err(Error::Precondition("no pair of generators is a system of parameters".into()));
    };
    let l = 3 - i - j;
    let ring = fc.gens.ring();
    let gl = &s.entries[l];
    if ring.is_zero_in_ring(gl)? {
        return Ok(true);
    }
    let num = fc.f0.mul(gl)?;
    let g = fc.gens.gens();
    cech_vanishes_unchecked(ring, &num, &g[i], 1, &g[j], 1)
}
