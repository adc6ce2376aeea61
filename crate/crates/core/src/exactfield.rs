//! Exact scalars over a prime field `F_p` (p < 2^31) or over the rationals.
//!
//! [`Scalar`] is the value type every other module trades in. Hot loops
//! (elimination, reduction modulo the curve) go through the [`Ops`] trait,
//! which works on unboxed residues or `BigRational`s directly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest admissible prime characteristic (exclusive).
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    BadCharacteristic(u64),
    #[error("operands live in different fields ({0} and {1})")]
    MixedFields(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient {0} is not defined in {1}")]
    NotInField(String, FieldSpec),
}

/// The coefficient field: `Q` (characteristic 0) or `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec {
    characteristic: u64,
}

impl TryFrom<u64> for FieldSpec {
    type Error = FieldError;
    fn try_from(c: u64) -> Result<Self, FieldError> {
        FieldSpec::new(c)
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> u64 {
        f.characteristic
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self, FieldError> {
        if characteristic == 0 || (characteristic < MAX_CHARACTERISTIC && is_prime(characteristic)) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(FieldError::BadCharacteristic(characteristic))
        }
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p == 0 {
            return Err(FieldError::BadCharacteristic(0));
        }
        Self::new(p)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> Scalar {
        match self.characteristic {
            0 => Scalar::Q(BigRational::zero()),
            p => Scalar::Fp { value: 0, p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.characteristic {
            0 => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            p => Scalar::Fp { value: n.rem_euclid(p as i64) as u64, p },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.characteristic {
            0 => Scalar::Q(BigRational::from_integer(n.clone())),
            p => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Fp { value: r.to_u64().expect("residue fits"), p }
            }
        }
    }

    /// `num/den` in this field; fails when `den` vanishes in it.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, FieldError> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(FieldError::NotInField(format!("{num}/{den}"), *self));
        }
        match self.characteristic {
            0 => Ok(Scalar::Q(BigRational::new(num.clone(), den.clone()))),
            _ => self.from_bigint(num).mul(&d.inv()?),
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar, FieldError> {
        self.from_ratio(r.numer(), r.denom())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "Q"),
            p => write!(f, "F_{p}"),
        }
    }
}

/// A field element in canonical form: residue in `[0, p)` or a reduced fraction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { value: u64, p: u64 },
    Q(BigRational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic; mixing fields is an error.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ScalarOp) -> Result<Scalar, FieldError> {
    match op {
        ScalarOp::Add => a.add(b),
        ScalarOp::Sub => a.sub(b),
        ScalarOp::Mul => a.mul(b),
    }
}

/// Inverse of a nonzero scalar.
pub fn scalar_inv(a: &Scalar) -> Result<Scalar, FieldError> {
    a.inv()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Fp { p, .. } => FieldSpec { characteristic: *p },
            Scalar::Q(_) => FieldSpec::rationals(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 0,
            Scalar::Q(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 1,
            Scalar::Q(r) => r.is_one(),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::MixedFields(self.field(), other.field()))
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp { value: (a + b) % p, p: *p },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp { value: (a + p - b) % p, p: *p },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Fp { value: a, p }, Scalar::Fp { value: b, .. }) => Scalar::Fp { value: a * b % p, p: *p },
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { value, p } => Scalar::Fp { value: (p - value) % p, p: *p },
            Scalar::Q(r) => Scalar::Q(-r),
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Fp { value, p } => Scalar::Fp { value: pow_mod(*value, p - 2, *p), p: *p },
            Scalar::Q(r) => Scalar::Q(r.recip()),
        })
    }

    pub fn pow(&self, e: u64) -> Scalar {
        match self {
            Scalar::Fp { value, p } => Scalar::Fp { value: pow_mod(*value, e, *p), p: *p },
            Scalar::Q(r) => {
                let mut acc = BigRational::one();
                for _ in 0..e {
                    acc *= r;
                }
                Scalar::Q(acc)
            }
        }
    }

    /// Size used to prefer pivots over Q: bit length of numerator plus denominator.
    pub fn bit_size(&self) -> u64 {
        match self {
            Scalar::Fp { .. } => 0,
            Scalar::Q(r) => r.numer().bits() + r.denom().bits(),
        }
    }

    /// Residue for `F_p`, reduced fraction for `Q`.
    pub fn as_rational(&self) -> BigRational {
        match self {
            Scalar::Fp { value, .. } => BigRational::from_integer(BigInt::from(*value)),
            Scalar::Q(r) => r.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { value, .. } => write!(f, "{value}"),
            Scalar::Q(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

/// Unboxed arithmetic used by the elimination and reduction kernels.
pub(crate) trait Ops {
    type E: Clone + PartialEq + fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Caller guarantees `a != 0`.
    fn inv(&self, a: &Self::E) -> Self::E;
    /// `t -= a * b`
    fn sub_mul_assign(&self, t: &mut Self::E, a: &Self::E, b: &Self::E);
    /// Pivot preference; smaller is better.
    fn weight(&self, a: &Self::E) -> u64;
    fn lift(&self, s: &Scalar) -> Self::E;
    fn lower(&self, e: &Self::E) -> Scalar;
}

pub(crate) struct FpOps {
    pub p: u64,
}

impl Ops for FpOps {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        pow_mod(*a, self.p - 2, self.p)
    }
    #[inline]
    fn sub_mul_assign(&self, t: &mut u64, a: &u64, b: &u64) {
        let prod = a * b % self.p;
        *t = if *t >= prod { *t - prod } else { *t + self.p - prod };
    }
    fn weight(&self, _a: &u64) -> u64 {
        0
    }
    fn lift(&self, s: &Scalar) -> u64 {
        match s {
            Scalar::Fp { value, p } if *p == self.p => *value,
            other => panic!("scalar from {} used in F_{}", other.field(), self.p),
        }
    }
    fn lower(&self, e: &u64) -> Scalar {
        Scalar::Fp { value: *e, p: self.p }
    }
}

pub(crate) struct QOps;

impl Ops for QOps {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn sub_mul_assign(&self, t: &mut BigRational, a: &BigRational, b: &BigRational) {
        *t -= a * b;
    }
    fn weight(&self, a: &BigRational) -> u64 {
        a.numer().bits() + a.denom().bits()
    }
    fn lift(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Q(r) => r.clone(),
            other => panic!("scalar from {} used in Q", other.field()),
        }
    }
    fn lower(&self, e: &BigRational) -> Scalar {
        Scalar::Q(e.clone())
    }
}

/// Runs `$body` with `$ops` bound to the kernel arithmetic of `$field`.
macro_rules! with_ops {
    ($field:expr, $ops:ident => $body:expr) => {{
        let __c = $field.characteristic();
        if __c == 0 {
            let $ops = $crate::exactfield::QOps;
            $body
        } else {
            let $ops = $crate::exactfield::FpOps { p: __c };
            $body
        }
    }};
}
pub(crate) use with_ops;

/// Rational helper: `n/d` as a `BigRational`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Smallest integer `>= r`.
pub fn ceil_rational(r: &BigRational) -> i64 {
    r.ceil().to_integer().to_i64().expect("threshold fits in i64")
}

/// Largest integer `<= r`.
pub fn floor_rational(r: &BigRational) -> i64 {
    r.floor().to_integer().to_i64().expect("threshold fits in i64")
}

/// Largest integer strictly below `r`.
pub fn below_rational(r: &BigRational) -> i64 {
    if r.is_integer() {
        floor_rational(r) - 1
    } else {
        floor_rational(r)
    }
}

pub fn rational_is_negative(r: &BigRational) -> bool {
    r.is_negative()
}
