//! Arithmetic in prime fields `F_p`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::AlgebraError;

/// Largest modulus accepted anywhere in the crate. Products of two residues
/// must fit in a `u64`, and every search over `F_p^d` is exhaustive anyway.
pub const MAX_PRIME: u32 = 1 << 16;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<(), AlgebraError> {
    if p > MAX_PRIME || !is_prime(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    Ok(())
}

/// An element of `F_p`, stored as its canonical representative in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpScalar {
    value: u32,
    p: u32,
}

impl FpScalar {
    pub fn new(value: i64, p: u32) -> Result<Self, AlgebraError> {
        check_prime(p)?;
        Ok(Self::reduce(value, p))
    }

    /// Caller guarantees `p` is prime.
    pub(crate) fn reduce(value: i64, p: u32) -> Self {
        let value = value.rem_euclid(p as i64) as u32;
        FpScalar { value, p }
    }

    pub fn zero(p: u32) -> Self {
        FpScalar { value: 0, p }
    }

    pub fn one(p: u32) -> Self {
        FpScalar { value: 1 % p, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.p as u64 - 2))
        }
    }
}

impl fmt::Debug for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FpScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpScalar {
    type Output = FpScalar;
    fn add(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar {
            value: ((self.value as u64 + rhs.value as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Sub for FpScalar {
    type Output = FpScalar;
    fn sub(self, rhs: FpScalar) -> FpScalar {
        self + (-rhs)
    }
}

impl Neg for FpScalar {
    type Output = FpScalar;
    fn neg(self) -> FpScalar {
        FpScalar {
            value: (self.p - self.value) % self.p,
            p: self.p,
        }
    }
}

impl Mul for FpScalar {
    type Output = FpScalar;
    fn mul(self, rhs: FpScalar) -> FpScalar {
        debug_assert_eq!(self.p, rhs.p);
        FpScalar {
            value: ((self.value as u64 * rhs.value as u64) % self.p as u64) as u32,
            p: self.p,
        }
    }
}

/// A coordinate vector over `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector {
    p: u32,
    coords: Vec<u32>,
}

impl FpVector {
    pub fn new(p: u32, coords: &[i64]) -> Result<Self, AlgebraError> {
        check_prime(p)?;
        Ok(Self::from_reduced(
            p,
            coords.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect(),
        ))
    }

    pub(crate) fn from_reduced(p: u32, coords: Vec<u32>) -> Self {
        debug_assert!(coords.iter().all(|&c| c < p));
        FpVector { p, coords }
    }

    pub fn zero(p: u32, dim: usize) -> Self {
        FpVector {
            p,
            coords: vec![0; dim],
        }
    }

    pub fn unit(p: u32, dim: usize, i: usize) -> Self {
        let mut v = Self::zero(p, dim);
        v.coords[i] = 1;
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> FpScalar {
        FpScalar {
            value: self.coords[i],
            p: self.p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        debug_assert_eq!(self.coords.len(), other.coords.len());
        let p = self.p;
        FpVector {
            p,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn scale(&self, s: u32) -> FpVector {
        let p = self.p as u64;
        FpVector {
            p: self.p,
            coords: self
                .coords
                .iter()
                .map(|&a| ((a as u64 * s as u64) % p) as u32)
                .collect(),
        }
    }

    /// All `p^dim` vectors in lexicographic order (first coordinate most
    /// significant), starting from zero.
    pub fn all(p: u32, dim: usize) -> impl Iterator<Item = FpVector> {
        let total = (p as u64).pow(dim as u32);
        (0..total).map(move |mut idx| {
            let mut coords = vec![0u32; dim];
            for c in coords.iter_mut().rev() {
                *c = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            FpVector { p, coords }
        })
    }
}

impl fmt::Debug for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

/// A polynomial over `F_p` with coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl FpPoly {
    pub fn new(p: u32, coeffs: &[i64]) -> Result<Self, AlgebraError> {
        check_prime(p)?;
        let mut coeffs: Vec<u32> = coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u32)
            .collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(FpPoly { p, coeffs })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let p = self.p as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p) as u32
    }
}

/// Exact root set of `f`, by evaluation at every field element.
pub fn poly_roots(f: &FpPoly) -> Result<Vec<FpScalar>, AlgebraError> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    Ok((0..f.p)
        .filter(|&x| f.eval(x) == 0)
        .map(|x| FpScalar { value: x, p: f.p })
        .collect())
}
