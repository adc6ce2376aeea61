//! Homogeneous polynomials in `x, y, z` and their graded coordinate spaces.

pub mod linalg;

use crate::exactfield::{FieldError, FieldSpec, Scalar};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub use linalg::{kernel_basis, rank, span_membership, LinalgError, Matrix};

/// Coordinates relative to `monomial_basis(d)` (or a standard-monomial basis of `R_d`).
pub type CoordVector = Vec<Scalar>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0, z: 0 };

    pub fn new(x: u32, y: u32, z: u32) -> Self {
        Monomial { x, y, z }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y + self.z
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial::new(self.x * e, self.y * e, self.z * e)
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.x <= o.x && self.y <= o.y && self.z <= o.z
    }

    /// `o / self`, if it exists.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        self.divides(o).then(|| Monomial::new(o.x - self.x, o.y - self.y, o.z - self.z))
    }

    pub fn exponent(&self, var: usize) -> u32 {
        [self.x, self.y, self.z][var]
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then(self.x.cmp(&o.x)).then(self.y.cmp(&o.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("x", self.x), ("y", self.y), ("z", self.z)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// `C(d+2, 2)`, and 0 for negative `d`.
pub fn num_monomials(d: i64) -> usize {
    if d < 0 {
        0
    } else {
        let d = d as usize;
        (d + 1) * (d + 2) / 2
    }
}

/// All monomials of degree `d`, largest first: `x^d, x^(d-1)y, x^(d-1)z, ...`.
pub fn monomial_basis(d: i64) -> Vec<Monomial> {
    if d < 0 {
        return vec![];
    }
    let d = d as u32;
    let mut out = Vec::with_capacity(num_monomials(d as i64));
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push(Monomial::new(i, j, d - i - j));
        }
    }
    out
}

/// Position of `m` in `monomial_basis(m.degree())`.
#[inline]
pub fn monomial_index(m: &Monomial) -> usize {
    let s = (m.y + m.z) as usize;
    s * (s + 1) / 2 + (s - m.y as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("monomial {0} does not have degree {1}")]
    Inhomogeneous(Monomial, i64),
    #[error("coordinate vector has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
}

/// A homogeneous polynomial. The zero polynomial carries a degree too, and
/// that degree may be negative (empty graded piece).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly {
    field: FieldSpec,
    degree: i64,
    terms: BTreeMap<Monomial, Scalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// `add`/`sub`/`mul` on two polynomials; scalar multiplication is [`HomPoly::scale`].
pub fn poly_arith(f: &HomPoly, g: &HomPoly, op: PolyOp) -> Result<HomPoly, PolyError> {
    match op {
        PolyOp::Add => f.add(g),
        PolyOp::Sub => f.sub(g),
        PolyOp::Mul => f.mul(g),
    }
}

impl HomPoly {
    pub fn zero(field: FieldSpec, degree: i64) -> Self {
        HomPoly { field, degree, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        Self::term(field, Monomial::ONE, c)
    }

    pub fn monomial(field: FieldSpec, m: Monomial) -> Self {
        Self::term(field, m, field.one())
    }

    pub fn term(field: FieldSpec, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        HomPoly { field, degree: m.degree() as i64, terms }
    }

    /// `x`, `y` or `z` for `var` = 0, 1, 2.
    pub fn var(field: FieldSpec, var: usize) -> Self {
        let mut e = [0u32; 3];
        e[var] = 1;
        Self::monomial(field, Monomial::new(e[0], e[1], e[2]))
    }

    /// Sums duplicate monomials; rejects mixed degrees and foreign scalars.
    pub fn from_terms(field: FieldSpec, degree: i64, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Result<Self, PolyError> {
        let mut p = HomPoly::zero(field, degree);
        for (m, c) in terms {
            if m.degree() as i64 != degree {
                return Err(PolyError::Inhomogeneous(m, degree));
            }
            if c.field() != field {
                return Err(FieldError::MixedFields(c.field(), field).into());
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.add(&c).expect("same field");
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Single monomial with coefficient 1.
    pub fn as_monomial(&self) -> Option<Monomial> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            c.is_one().then_some(*m)
        } else {
            None
        }
    }

    fn check(&self, o: &HomPoly) -> Result<(), PolyError> {
        if self.field != o.field {
            return Err(FieldError::MixedFields(self.field, o.field).into());
        }
        Ok(())
    }

    pub fn add(&self, o: &HomPoly) -> Result<HomPoly, PolyError> {
        self.check(o)?;
        if self.degree != o.degree {
            return Err(PolyError::DegreeMismatch(self.degree, o.degree));
        }
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        Ok(r)
    }

    pub fn sub(&self, o: &HomPoly) -> Result<HomPoly, PolyError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> HomPoly {
        HomPoly { field: self.field, degree: self.degree, terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Result<HomPoly, PolyError> {
        if c.field() != self.field {
            return Err(FieldError::MixedFields(c.field(), self.field).into());
        }
        let mut r = HomPoly::zero(self.field, self.degree);
        if c.is_zero() {
            return Ok(r);
        }
        for (m, v) in &self.terms {
            r.terms.insert(*m, v.mul(c)?);
        }
        Ok(r)
    }

    pub fn mul(&self, o: &HomPoly) -> Result<HomPoly, PolyError> {
        self.check(o)?;
        let mut r = HomPoly::zero(self.field, self.degree + o.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1.mul(c2)?);
            }
        }
        Ok(r)
    }

    pub fn mul_monomial(&self, u: &Monomial) -> HomPoly {
        HomPoly {
            field: self.field,
            degree: self.degree + u.degree() as i64,
            terms: self.terms.iter().map(|(m, c)| (m.mul(u), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> HomPoly {
        let mut acc = HomPoly::constant(self.field, self.field.one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `var` (0, 1, 2).
    pub fn derivative(&self, var: usize) -> HomPoly {
        let mut r = HomPoly::zero(self.field, self.degree - 1);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut ex = [m.x, m.y, m.z];
            ex[var] -= 1;
            let coeff = c.mul(&self.field.from_i64(e as i64)).expect("same field");
            r.add_term(Monomial::new(ex[0], ex[1], ex[2]), coeff);
        }
        r
    }

    /// `Σ c^q m^q`. In characteristic `p` with `q` a power of `p` this is `f^q`.
    pub fn frobenius_power(&self, q: u32) -> HomPoly {
        let mut r = HomPoly::zero(self.field, self.degree * q as i64);
        for (m, c) in &self.terms {
            r.add_term(m.pow(q), c.pow(q as u64));
        }
        r
    }

    /// Coordinates in `monomial_basis(degree)`.
    pub fn to_coords(&self) -> CoordVector {
        let mut v = vec![self.field.zero(); num_monomials(self.degree)];
        for (m, c) in &self.terms {
            v[monomial_index(m)] = c.clone();
        }
        v
    }

    pub fn from_coords(field: FieldSpec, degree: i64, v: &[Scalar]) -> Result<HomPoly, PolyError> {
        let basis = monomial_basis(degree);
        if basis.len() != v.len() {
            return Err(PolyError::BadLength { expected: basis.len(), got: v.len() });
        }
        HomPoly::from_terms(field, degree, basis.into_iter().zip(v.iter().cloned()))
    }

    /// Substitutes `x_i -> Σ_j a[i][j] x_j`.
    pub fn substitute_linear(&self, a: &[[Scalar; 3]; 3]) -> Result<HomPoly, PolyError> {
        let lin: Vec<HomPoly> = (0..3)
            .map(|i| {
                let terms = (0..3).map(|j| {
                    let mut e = [0u32; 3];
                    e[j] = 1;
                    (Monomial::new(e[0], e[1], e[2]), a[i][j].clone())
                });
                HomPoly::from_terms(self.field, 1, terms)
            })
            .collect::<Result<_, _>>()?;
        let mut r = HomPoly::zero(self.field, self.degree);
        for (m, c) in &self.terms {
            let t = lin[0].pow(m.x).mul(&lin[1].pow(m.y))?.mul(&lin[2].pow(m.z))?.scale(c)?;
            r = r.add(&t)?;
        }
        Ok(r)
    }

    /// Coefficients as integers when they are residues or integral rationals.
    pub fn with_field(&self, field: FieldSpec) -> Result<HomPoly, PolyError> {
        let terms: Vec<(Monomial, Scalar)> =
            self.terms.iter().map(|(m, c)| Ok((*m, field.from_rational(&c.as_rational())?))).collect::<Result<_, FieldError>>()?;
        HomPoly::from_terms(field, self.degree, terms)
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if *m == Monomial::ONE {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
