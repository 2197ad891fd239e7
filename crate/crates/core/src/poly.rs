//! Dense univariate polynomials over GF(2^k).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Sub};

use rand::RngCore;

use crate::gf::{FieldElement, FieldSpec};

/// Degree of a polynomial; the zero polynomial has degree −∞.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// A polynomial in `t` over GF(2^k). Coefficients are ascending and raw
/// (bit representation); the top coefficient is nonzero, and the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field.elem(c).bits()).collect();
        let mut p = Self { field, coeffs };
        p.normalize();
        p
    }

    /// Coefficients are already reduced field elements.
    pub(crate) fn from_raw(field: FieldSpec, coeffs: Vec<u64>) -> Self {
        let mut p = Self { field, coeffs };
        p.normalize();
        p
    }

    /// Polynomial over GF(2) given by a bit mask (bit `i` ↦ `t^i`), embedded in `field`.
    pub fn from_bits(field: FieldSpec, mask: u128) -> Self {
        let coeffs = (0..128 - mask.leading_zeros()).map(|i| ((mask >> i) & 1) as u64).collect();
        Self::from_raw(field, coeffs)
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self { field, coeffs: vec![1] }
    }

    /// The variable `t`.
    pub fn t(field: FieldSpec) -> Self {
        Self { field, coeffs: vec![0, 1] }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_raw(c.spec(), vec![c.bits()])
    }

    pub fn monomial(c: FieldElement, exp: usize) -> Self {
        if c.is_zero() {
            return Self::zero(c.spec());
        }
        let mut coeffs = vec![0; exp + 1];
        coeffs[exp] = c.bits();
        Self { field: c.spec(), coeffs }
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree of a nonzero polynomial. Panics on zero.
    pub fn deg(&self) -> usize {
        self.degree().finite().expect("degree of the zero polynomial")
    }

    /// Number of stored coefficients (degree + 1, or 0 for zero).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.elem(self.coeff_bits(i))
    }

    pub(crate) fn coeff_bits(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> FieldElement {
        self.field.elem(self.coeffs.last().copied().unwrap_or(0))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lc) => self.scale_raw(self.field.inv(lc)),
        }
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        self.scale_raw(c.bits())
    }

    pub(crate) fn scale_raw(&self, c: u64) -> Self {
        if c == 0 {
            return Self::zero(self.field);
        }
        let f = self.field;
        Self { field: f, coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    /// Multiplies by `t^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; n];
        coeffs.extend_from_slice(&self.coeffs);
        Self { field: self.field, coeffs }
    }

    /// Remainder modulo `t^n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::from_raw(self.field, self.coeffs.iter().take(n).copied().collect())
    }

    /// `t^n · p(1/t)`; requires `n ≥ deg p`.
    pub fn reverse(&self, n: usize) -> Self {
        debug_assert!(self.len() <= n + 1);
        let mut coeffs = vec![0; n + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c;
        }
        Self::from_raw(self.field, coeffs)
    }

    /// Exponent of the largest power of `t` dividing `self`; `None` for zero.
    pub fn trailing_zeros(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        let f = self.field;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.mul(acc, x.bits()) ^ c;
        }
        f.elem(acc)
    }

    pub fn square(&self) -> Self {
        let f = self.field;
        let mut coeffs = vec![0; self.coeffs.len().saturating_mul(2).saturating_sub(1)];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = f.square(c);
        }
        Self { field: f, coeffs }
    }

    /// Square root when `self` is a perfect square.
    pub fn sqrt(&self) -> Option<Self> {
        if self.coeffs.iter().skip(1).step_by(2).any(|&c| c != 0) {
            return None;
        }
        let f = self.field;
        Some(Self::from_raw(f, self.coeffs.iter().step_by(2).map(|&c| f.sqrt(c)).collect()))
    }

    /// Formal derivative. In characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { 0 })
            .collect();
        Self::from_raw(self.field, coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        debug_assert_eq!(self.field, d.field);
        let f = self.field;
        if self.len() < d.len() {
            return (Self::zero(f), self.clone());
        }
        let dl = d.len();
        let lc_inv = f.inv(*d.coeffs.last().unwrap());
        let monic_divisor = lc_inv == 1;
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; r.len() - dl + 1];
        for i in (0..q.len()).rev() {
            let top = r[i + dl - 1];
            if top == 0 {
                continue;
            }
            let c = if monic_divisor { top } else { f.mul(top, lc_inv) };
            q[i] = c;
            if f.degree() == 1 {
                for (rj, &dj) in r[i..i + dl].iter_mut().zip(&d.coeffs) {
                    *rj ^= dj;
                }
            } else {
                for (rj, &dj) in r[i..i + dl].iter_mut().zip(&d.coeffs) {
                    *rj ^= f.mul(c, dj);
                }
            }
        }
        r.truncate(dl - 1);
        (Self::from_raw(f, q), Self::from_raw(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; panics (in debug) if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, u)` with `s·self + u·other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut u0, mut u1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = core::mem::replace(&mut r1, r);
            let s = &s0 + &(&q * &s1);
            s0 = core::mem::replace(&mut s1, s);
            let u = &u0 + &(&q * &u1);
            u0 = core::mem::replace(&mut u1, u);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let lc_inv = f.inv(*r0.coeffs.last().unwrap());
        (r0.scale_raw(lc_inv), s0.scale_raw(lc_inv), u0.scale_raw(lc_inv))
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).xgcd(m);
        g.is_one().then(|| s.rem(m))
    }

    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }

    /// `self^(2^n) mod m`.
    pub fn pow2k_mod(&self, n: u64, m: &Self) -> Self {
        let mut r = self.rem(m);
        for _ in 0..n {
            r = r.square().rem(m);
        }
        r
    }

    /// Uniformly random polynomial of degree < `n`.
    pub fn random<R: RngCore + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Self {
        let coeffs = (0..n).map(|_| field.elem(rng.next_u64()).bits()).collect();
        Self::from_raw(field, coeffs)
    }

    /// Uniformly random monic polynomial of degree exactly `n`.
    pub fn random_monic<R: RngCore + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Self {
        let mut p = Self::random(field, n, rng);
        p.coeffs.resize(n + 1, 0);
        p.coeffs[n] = 1;
        p
    }
}

fn add_raw(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o ^= s;
    }
    out
}

fn mul_raw(f: FieldSpec, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    if f.degree() == 1 {
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                for (o, &bj) in out[i..].iter_mut().zip(b) {
                    *o ^= bj;
                }
            }
        }
    } else {
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                for (o, &bj) in out[i..].iter_mut().zip(b) {
                    *o ^= f.mul(ai, bj);
                }
            }
        }
    }
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        Poly::from_raw(self.field, add_raw(&self.coeffs, &rhs.coeffs))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        debug_assert_eq!(self.field, rhs.field);
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), 0);
        }
        for (a, &b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a ^= b;
        }
        self.normalize();
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + rhs
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.field, rhs.field);
        Poly::from_raw(self.field, mul_raw(self.field, &self.coeffs, &rhs.coeffs))
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by degree, then by coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            let coeff_needed = c != 1;
            if coeff_needed {
                write!(f, "{c:#b}")?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 if !coeff_needed => f.write_str("1")?,
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::prelude::rust_2021::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p2(mask: u128) -> Poly {
        Poly::from_bits(FieldSpec::binary(), mask)
    }

    #[test]
    fn display_and_degree() {
        assert_eq!(p2(0b111).to_string(), "t^2+t+1");
        assert_eq!(Poly::zero(FieldSpec::binary()).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        let f4 = FieldSpec::with_degree(2).unwrap();
        let p = Poly::monomial(f4.generator(), 2) + Poly::one(f4);
        assert_eq!(p.to_string(), "0b10*t^2+1");
    }

    #[test]
    fn division_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for k in [1, 3, 8] {
            let f = FieldSpec::with_degree(k).unwrap();
            for _ in 0..200 {
                let a = Poly::random(f, 15, &mut rng);
                let b = Poly::random(f, 7, &mut rng);
                if b.is_zero() {
                    continue;
                }
                let (q, r) = a.div_rem(&b);
                assert_eq!(&(&q * &b) + &r, a);
                assert!(r.len() < b.len());
            }
        }
    }

    #[test]
    fn degree_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = FieldSpec::with_degree(4).unwrap();
        for _ in 0..200 {
            let a = Poly::random(f, 9, &mut rng);
            let b = Poly::random(f, 9, &mut rng);
            if a.is_zero() || b.is_zero() {
                assert!((&a * &b).is_zero());
            } else {
                assert_eq!((&a * &b).deg(), a.deg() + b.deg());
            }
        }
    }

    #[test]
    fn xgcd_bezout() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = FieldSpec::with_degree(3).unwrap();
        for _ in 0..200 {
            let a = Poly::random(f, 10, &mut rng);
            let b = Poly::random(f, 8, &mut rng);
            let (g, s, u) = a.xgcd(&b);
            assert_eq!(&(&s * &a) + &(&u * &b), g);
            assert_eq!(g, a.gcd(&b));
            if !g.is_zero() {
                assert!(g.divides(&a) && g.divides(&b));
            }
        }
    }

    #[test]
    fn square_and_sqrt() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = FieldSpec::with_degree(5).unwrap();
        for _ in 0..100 {
            let a = Poly::random(f, 10, &mut rng);
            assert_eq!(a.square(), &a * &a);
            assert_eq!(a.square().sqrt(), Some(a.clone()));
            assert!(a.square().derivative().is_zero());
        }
        assert_eq!(p2(0b10).sqrt(), None);
    }

    #[test]
    fn reverse_and_truncate() {
        let p = p2(0b1000011); // t^6+t+1
        assert_eq!(p.reverse(6), p2(0b1100001));
        assert_eq!(p.truncate(2), p2(0b11));
        assert_eq!(p2(0b1100).trailing_zeros(), Some(2));
    }
}
