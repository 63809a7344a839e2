//! Exact coefficient arithmetic: arbitrary-precision rationals and prime fields,
//! behind one scalar type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{EngineError, Result};

/// The coefficient field: characteristic 0 means the rationals, otherwise a
/// prime field of that characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub characteristic: u32,
}

/// Default prime for modular runs; large enough to dodge bad primes at desk scale.
pub const DEFAULT_PRIME: u32 = 32003;

impl FieldSpec {
    pub const QQ: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn prime_field(p: u32) -> Result<FieldSpec> {
        if p < 2 || !is_prime(p) {
            return Err(EngineError::Config(format!("{p} is not prime")));
        }
        Ok(FieldSpec { characteristic: p })
    }

    pub fn is_rationals(&self) -> bool {
        self.characteristic == 0
    }

    pub fn zero(&self) -> FieldElement {
        match self.characteristic {
            0 => FieldElement::Rat(BigRational::zero()),
            p => FieldElement::Fp { p, r: 0 },
        }
    }

    pub fn one(&self) -> FieldElement {
        match self.characteristic {
            0 => FieldElement::Rat(BigRational::one()),
            p => FieldElement::Fp { p, r: 1 },
        }
    }

    pub fn from_integer(&self, n: i64) -> FieldElement {
        match self.characteristic {
            0 => FieldElement::Rat(BigRational::from_integer(BigInt::from(n))),
            p => FieldElement::Fp { p, r: n.rem_euclid(p as i64) as u32 },
        }
    }

    /// Canonical element num/den; the denominator must be invertible.
    pub fn canonicalize(&self, num: i64, den: i64) -> Result<FieldElement> {
        if den == 0 {
            return Err(EngineError::DivisionByZero);
        }
        match self.characteristic {
            0 => Ok(FieldElement::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            p => {
                let d = den.rem_euclid(p as i64) as u32;
                if d == 0 {
                    return Err(EngineError::NonInvertibleDenominator(den, p));
                }
                let n = num.rem_euclid(p as i64) as u32;
                Ok(FieldElement::Fp { p, r: mod_mul(n, mod_inv(d, p), p) })
            }
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_mul(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

/// Inverse mod p by extended Euclid; caller guarantees a != 0.
fn mod_inv(a: u32, p: u32) -> u32 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of a noninvertible residue");
    t.rem_euclid(p as i64) as u32
}

/// A scalar in its canonical form: reduced fraction with positive denominator,
/// or a residue in [0, p).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rat(BigRational),
    Fp { p: u32, r: u32 },
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rat(_) => FieldSpec::QQ,
            FieldElement::Fp { p, .. } => FieldSpec { characteristic: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rat(q) => q.is_zero(),
            FieldElement::Fp { r, .. } => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rat(q) => q.is_one(),
            FieldElement::Fp { r, .. } => *r == 1,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => Ok(FieldElement::Rat(a + b)),
            (FieldElement::Fp { p, r: a }, FieldElement::Fp { p: q, r: b }) if p == q => {
                Ok(FieldElement::Fp { p: *p, r: (a + b) % p })
            }
            _ => Err(EngineError::FieldMismatch),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rat(a) => FieldElement::Rat(-a),
            FieldElement::Fp { p, r } => FieldElement::Fp { p: *p, r: if *r == 0 { 0 } else { p - r } },
        }
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        match (self, other) {
            (FieldElement::Rat(a), FieldElement::Rat(b)) => Ok(FieldElement::Rat(a * b)),
            (FieldElement::Fp { p, r: a }, FieldElement::Fp { p: q, r: b }) if p == q => {
                Ok(FieldElement::Fp { p: *p, r: mod_mul(*a, *b, *p) })
            }
            _ => Err(EngineError::FieldMismatch),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        match self {
            FieldElement::Rat(a) => Ok(FieldElement::Rat(a.recip())),
            FieldElement::Fp { p, r } => Ok(FieldElement::Fp { p: *p, r: mod_inv(*r, *p) }),
        }
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.mul(&other.inv()?)
    }

    /// True when the scalar is negative (always false over a prime field).
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rat(q) => q.is_negative(),
            FieldElement::Fp { .. } => false,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rat(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Fp { r, .. } => write!(f, "{r}"),
        }
    }
}
