//! Random irreducible polynomials in a residue class, with the search
//! degree chosen from the effective count of irreducibles in arithmetic
//! progressions.

use num_bigint::BigUint;
use num_traits::One;
use rand::RngCore;

use crate::error::Error;
use crate::factor::{factor, irreducible_unchecked, monic_irreducibles};
use crate::poly::Poly;

/// Degrees tried past the starting degree before giving up.
const MAX_DEGREE_BUMPS: usize = 32;

/// Search for a monic irreducible `h` with
/// - `h ≡ residue (mod modulus)`,
/// - `deg h ≡ parity (mod 2)` when a parity is given,
/// - the `top_len` highest coefficients of `h`, read downwards, equal to
///   the coefficients of `top` read upwards (so `top(0) = 1`),
/// - `deg h ≥ min_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleSearchSpec {
    pub residue: Poly,
    pub modulus: Poly,
    pub parity: Option<u8>,
    pub top: Poly,
    pub top_len: u32,
    pub min_degree: usize,
    /// Start at exactly this degree instead of the bound-derived one.
    pub start_degree: Option<usize>,
}

impl IrreducibleSearchSpec {
    /// Only a congruence condition.
    pub fn congruence(residue: Poly, modulus: Poly) -> Self {
        let field = modulus.field();
        Self {
            residue,
            modulus,
            parity: None,
            top: Poly::zero(field),
            top_len: 0,
            min_degree: 1,
            start_degree: None,
        }
    }

    /// `M = deg m`.
    pub fn modulus_degree(&self) -> usize {
        self.modulus.deg()
    }

    /// `Φ(m)`: residues of degree below `deg m` that are coprime to `m`.
    pub fn phi(&self) -> BigUint {
        phi(&self.modulus)
    }

    fn validate(&self) -> Result<(), Error> {
        if self.modulus.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.residue.gcd(&self.modulus).is_one() {
            return Err(Error::Unsatisfiable("residue not coprime to modulus"));
        }
        if self.top_len > 0 && self.top.coeff(0).bits() != 1 {
            return Err(Error::Unsatisfiable("leading block must start with 1"));
        }
        if self.top.len() > self.top_len as usize {
            return Err(Error::Precondition("leading block longer than its length"));
        }
        if self.parity.is_some_and(|p| p > 1) {
            return Err(Error::Unsatisfiable("parity must be 0 or 1"));
        }
        Ok(())
    }

    /// Smallest degree `N` (of the right parity, large enough to hold the
    /// fixed blocks) with `q^N > (Φ'·(M'+1))²`, where the leading block is
    /// counted as an extra modulus of degree `top_len − 1`.
    pub fn bound_degree(&self) -> usize {
        let field = self.modulus.field();
        let q = BigUint::from(field.order());
        let extra = self.top_len.saturating_sub(1) as usize;
        let m_deg = self.modulus_degree() + extra;
        let phi = self.phi() * q.pow(extra as u32);
        let rhs = {
            let v = phi * BigUint::from(m_deg as u64 + 1);
            &v * &v
        };
        let mut n = self.first_admissible(self.min_degree.max(1));
        while q.pow(n as u32) <= rhs {
            n += 1;
        }
        self.first_admissible(n)
    }

    fn first_admissible(&self, n: usize) -> usize {
        let floor = self.modulus_degree() + self.top_len as usize;
        let mut n = n.max(floor).max(1);
        if let Some(p) = self.parity {
            if n % 2 != p as usize {
                n += 1;
            }
        }
        n
    }

    /// A uniformly random element of the admissible set at degree `n`.
    fn sample<R: RngCore + ?Sized>(&self, n: usize, rng: &mut R) -> Poly {
        let field = self.modulus.field();
        let block = self.top_len.max(1) as usize;
        let head = if self.top_len == 0 {
            Poly::monomial(field.one(), n)
        } else {
            self.top.reverse(block - 1).shift(n + 1 - block)
        };
        let free = n + 1 - block;
        let base = (&self.residue + &head).rem(&self.modulus);
        let spread = free - self.modulus_degree();
        let s = Poly::random(field, spread, rng);
        &(&head + &base) + &(&self.modulus * &s)
    }
}

/// `Φ(m) = ∏ (q^{d e} − q^{d (e−1)})` over the factorization `m = ∏ f^e`.
pub fn phi(m: &Poly) -> BigUint {
    if m.is_constant() {
        return BigUint::one();
    }
    let q = BigUint::from(m.field().order());
    let mut acc = BigUint::one();
    for (f, e) in factor(m).expect("nonzero") {
        let d = f.deg() as u32;
        acc *= q.pow(d * e) - q.pow(d * (e - 1));
    }
    acc
}

/// Exhaustive `S_N(a, m)`: monic irreducibles of degree `n` congruent to `a`.
pub fn count_in_class(a: &Poly, m: &Poly, n: usize) -> u64 {
    let target = a.rem(m);
    monic_irreducibles(m.field(), n).filter(|h| h.rem(m) == target).count() as u64
}

/// Samples the admissible class at the bound degree, moving to `N + 2`
/// after `64·N·max(M, 1)` failures.
pub fn find_irreducible_in_class<R: RngCore + ?Sized>(
    spec: &IrreducibleSearchSpec,
    rng: &mut R,
) -> Result<Poly, Error> {
    spec.validate()?;
    let mut n = match spec.start_degree {
        Some(d) => spec.first_admissible(d),
        None => spec.bound_degree(),
    };
    for _ in 0..MAX_DEGREE_BUMPS {
        let tries = 64 * n * spec.modulus_degree().max(1);
        for _ in 0..tries {
            let h = spec.sample(n, rng);
            if irreducible_unchecked(&h) {
                return Ok(h);
            }
        }
        n += 2;
    }
    Err(Error::SamplingExhausted("irreducible in residue class"))
}
