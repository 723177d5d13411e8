//! Exact arithmetic in prime fields GF(q).
//!
//! Elements carry their modulus so that mixing fields is detected. The
//! operator impls (`+`, `*`, `-`) panic on a modulus mismatch; the `try_*`
//! methods report it as an error instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field of order `modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    modulus: u32,
}

impl PrimeField {
    pub fn new(modulus: u32) -> Result<Self, GfError> {
        if !is_prime(modulus) {
            return Err(GfError::NotPrime(modulus));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The element `value mod q`.
    pub fn elem(&self, value: u64) -> FieldElement {
        FieldElement {
            value: (value % self.modulus as u64) as u32,
            modulus: self.modulus,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }

    /// All q elements in increasing order of residue.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.modulus).map(move |v| self.elem(v as u64))
    }
}

/// A canonical residue in `[0, q)`.
///
/// Field order: `value` first, so elements of one field sort by residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Zero of the same field.
    pub fn zero(&self) -> Self {
        FieldElement {
            value: 0,
            modulus: self.modulus,
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), GfError> {
        if self.modulus != other.modulus {
            return Err(GfError::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn try_add(self, other: Self) -> Result<Self, GfError> {
        self.same_field(&other)?;
        let sum = (self.value as u64 + other.value as u64) % self.modulus as u64;
        Ok(Self {
            value: sum as u32,
            modulus: self.modulus,
        })
    }

    pub fn try_sub(self, other: Self) -> Result<Self, GfError> {
        self.try_add(-other)
    }

    pub fn try_mul(self, other: Self) -> Result<Self, GfError> {
        self.same_field(&other)?;
        let prod = (self.value as u64 * other.value as u64) % self.modulus as u64;
        Ok(Self {
            value: prod as u32,
            modulus: self.modulus,
        })
    }

    /// Multiplicative inverse via Fermat: `a^(q-2)`.
    pub fn inv(self) -> Result<Self, GfError> {
        if self.is_zero() {
            return Err(GfError::DivisionByZero(self.modulus));
        }
        Ok(self.pow(self.modulus as u64 - 2))
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let m = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1 % m;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        Self {
            value: acc as u32,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs)
            .expect("field elements from different fields")
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs)
            .expect("field elements from different fields")
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs)
            .expect("field elements from different fields")
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }
}
