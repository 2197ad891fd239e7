//! The finite field GF(2^k), elements stored as k-bit vectors over GF(2)
//! relative to the power basis of a user-chosen irreducible modulus.

use core::fmt;

use crate::error::Error;

/// Default irreducible moduli for k = 1..=16, as bit masks including the
/// leading term. Every entry is primitive, so the class of `x` generates the
/// multiplicative group.
const DEFAULT_MODULI: [u64; 16] = [
    0b11, 0b111, 0b1011, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B,
    0x4443, 0x8003, 0x1100B,
];

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 63;

/// Description of GF(2^k): the degree and a defining irreducible polynomial
/// over GF(2) (bit `i` is the coefficient of `x^i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    k: u32,
    modulus: u64,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; {:#b})", self.k, self.modulus)
    }
}

impl FieldSpec {
    /// Builds GF(2^k) from an explicit modulus. The modulus must have degree
    /// exactly `k` and be irreducible over GF(2).
    pub fn new(k: u32, modulus: u64) -> Result<Self, Error> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::InvalidField("extension degree must be in 1..=63"));
        }
        if 63 - modulus.leading_zeros() != k || modulus == 0 {
            return Err(Error::InvalidField("modulus degree does not match k"));
        }
        if !bitpoly_is_irreducible(modulus) {
            return Err(Error::InvalidField("modulus is reducible over GF(2)"));
        }
        Ok(Self { k, modulus })
    }

    /// GF(2^k) with the built-in primitive modulus (k ≤ 16).
    pub fn with_degree(k: u32) -> Result<Self, Error> {
        match k {
            1..=16 => Self::new(k, DEFAULT_MODULI[k as usize - 1]),
            _ => Err(Error::InvalidField("no built-in modulus for this degree")),
        }
    }

    /// GF(2).
    pub fn binary() -> Self {
        Self { k: 1, modulus: 0b11 }
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Number of elements, `2^k`.
    pub fn order(&self) -> u64 {
        1u64 << self.k
    }

    /// The element whose bits are `bits` (reduced to `k` bits).
    pub fn elem(&self, bits: u64) -> FieldElement {
        FieldElement { spec: *self, bits: self.reduce_wide(bits as u128) }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { spec: *self, bits: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { spec: *self, bits: 1 }
    }

    /// The class of `x` modulo the defining polynomial.
    pub fn generator(&self) -> FieldElement {
        self.elem(0b10)
    }

    // Raw arithmetic on canonical bit representations. Polynomials store
    // their coefficients as raw `u64` and call into these.

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a & b;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        self.reduce_wide(clmul(a, b))
    }

    #[inline]
    pub(crate) fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    fn reduce_wide(&self, mut x: u128) -> u64 {
        let k = self.k;
        let m = self.modulus as u128;
        while x >> k != 0 {
            let top = 127 - x.leading_zeros();
            x ^= m << (top - k);
        }
        x as u64
    }

    pub(crate) fn pow(&self, a: u64, mut e: u128) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub(crate) fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in GF(2^k)");
        if self.k == 1 {
            return 1;
        }
        // a^(2^k - 2)
        let e = (1u128 << self.k) - 2;
        self.pow(a, e)
    }

    /// Unique square root (inverse Frobenius): a^(2^(k-1)).
    pub(crate) fn sqrt(&self, a: u64) -> u64 {
        let mut r = a;
        for _ in 1..self.k {
            r = self.square(r);
        }
        r
    }

    /// Absolute trace down to GF(2).
    pub(crate) fn trace(&self, a: u64) -> u64 {
        let mut acc = a;
        let mut cur = a;
        for _ in 1..self.k {
            cur = self.square(cur);
            acc ^= cur;
        }
        debug_assert!(acc <= 1);
        acc
    }

    /// Some `e` with `e^2 + e = c`, when one exists (i.e. when `Tr(c) = 0`).
    /// Solved as a GF(2)-linear system in the k-bit representation.
    pub(crate) fn wp_preimage(&self, c: u64) -> Option<u64> {
        if self.trace(c) != 0 {
            return None;
        }
        let k = self.k as usize;
        // Column j of the matrix is ℘(x^j).
        let cols: alloc::vec::Vec<u64> =
            (0..k).map(|j| self.square(1 << j) ^ (1 << j)).collect();
        // Rows: equation i reads sum_j cols[j]_i * e_j = c_i. Augmented
        // row bit layout: bits 0..k are unknowns, bit k is the right side.
        let mut rows: alloc::vec::Vec<u128> = (0..k)
            .map(|i| {
                let mut r = 0u128;
                for (j, col) in cols.iter().enumerate() {
                    if (col >> i) & 1 == 1 {
                        r |= 1 << j;
                    }
                }
                r | (((c >> i) & 1) as u128) << k
            })
            .collect();
        let mut pivots = alloc::vec::Vec::new();
        let mut row = 0;
        for col in 0..k {
            let Some(p) = (row..k).find(|&r| (rows[r] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(row, p);
            for r in 0..k {
                if r != row && (rows[r] >> col) & 1 == 1 {
                    rows[r] ^= rows[row];
                }
            }
            pivots.push(col);
            row += 1;
        }
        if rows[row..].iter().any(|r| (r >> k) & 1 == 1) {
            return None;
        }
        let mut e = 0u64;
        for (r, &col) in pivots.iter().enumerate() {
            if (rows[r] >> k) & 1 == 1 {
                e |= 1 << col;
            }
        }
        debug_assert_eq!(self.square(e) ^ e, c);
        Some(e)
    }
}

/// An element of GF(2^k), tagged with its field.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    bits: u64,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.bits)
    }
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self { spec: self.spec, bits: self.spec.inv(self.bits) })
    }

    pub fn square(&self) -> Self {
        Self { spec: self.spec, bits: self.spec.square(self.bits) }
    }

    pub fn sqrt(&self) -> Self {
        Self { spec: self.spec, bits: self.spec.sqrt(self.bits) }
    }

    pub fn pow(&self, e: u64) -> Self {
        Self { spec: self.spec, bits: self.spec.pow(self.bits, e as u128) }
    }

    /// Absolute trace to GF(2), as 0 or 1.
    pub fn trace(&self) -> u8 {
        self.spec.trace(self.bits) as u8
    }

    /// A solution of `e^2 + e = self`, if any.
    pub fn wp_preimage(&self) -> Option<Self> {
        self.spec.wp_preimage(self.bits).map(|bits| Self { spec: self.spec, bits })
    }
}

impl core::ops::Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.spec, rhs.spec);
        Self { spec: self.spec, bits: self.bits ^ rhs.bits }
    }
}

impl core::ops::Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.spec, rhs.spec);
        Self { spec: self.spec, bits: self.spec.mul(self.bits, rhs.bits) }
    }
}

/// Carry-less product of two 64-bit polynomials over GF(2).
#[inline]
pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    let (x, mut y) = if a.count_ones() < b.count_ones() { (b, a) } else { (a, b) };
    let xw = x as u128;
    let mut acc = 0u128;
    while y != 0 {
        acc ^= xw << y.trailing_zeros();
        y &= y - 1;
    }
    acc
}

fn bitpoly_deg(a: u128) -> i32 {
    127 - a.leading_zeros() as i32
}

fn bitpoly_mod(mut a: u128, m: u128) -> u128 {
    let dm = bitpoly_deg(m);
    while a != 0 && bitpoly_deg(a) >= dm {
        a ^= m << (bitpoly_deg(a) - dm);
    }
    a
}

fn bitpoly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = bitpoly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Rabin's test over GF(2) on a bit-packed polynomial of degree ≤ 63.
fn bitpoly_is_irreducible(m: u64) -> bool {
    let n = 63 - m.leading_zeros();
    if n == 0 {
        return false;
    }
    let m = m as u128;
    let sq = |a: u128| bitpoly_mod(clmul(a as u64, a as u64), m);
    // x^(2^i) mod m for i = 0..=n
    let mut pows = alloc::vec::Vec::with_capacity(n as usize + 1);
    let mut cur = bitpoly_mod(0b10, m);
    pows.push(cur);
    for _ in 0..n {
        cur = sq(cur);
        pows.push(cur);
    }
    if pows[n as usize] != bitpoly_mod(0b10, m) {
        return false;
    }
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            let d = pows[(n / p) as usize] ^ 0b10;
            if bitpoly_gcd(m, d) != 1 {
                return false;
            }
        }
        p += 1;
    }
    true
}
