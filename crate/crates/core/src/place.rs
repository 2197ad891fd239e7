//! Places of GF(2^k)(t), valuations, and the residue-ring helpers (CRT,
//! square roots modulo a prime) the local analysis relies on.

use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::factor::irreducible_unchecked;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// A place: a monic irreducible polynomial or the degree place at infinity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Poly),
    Infinite,
}

impl Place {
    /// Validates that `p` is irreducible and stores it monic.
    pub fn finite(p: &Poly) -> Result<Self, Error> {
        if p.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if !irreducible_unchecked(p) {
            return Err(Error::NotIrreducible);
        }
        Ok(Place::Finite(p.monic()))
    }

    pub(crate) fn finite_unchecked(p: Poly) -> Self {
        debug_assert!(p.is_monic());
        Place::Finite(p)
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Infinite)
    }

    /// Degree of the residue field over GF(2^k); 1 at infinity.
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.deg(),
            Place::Infinite => 1,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A valuation value: an integer, or +∞ for zero.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

/// Exponent of the irreducible `f` in the nonzero polynomial `p`.
pub fn poly_valuation(p: &Poly, f: &Poly) -> u32 {
    debug_assert!(!p.is_zero());
    let mut v = 0;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.div_rem(f);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        cur = q;
    }
}

/// Strips all factors of `f` from `p`, returning `(v, p / f^v)`.
pub(crate) fn split_off(p: &Poly, f: &Poly) -> (u32, Poly) {
    let mut v = 0;
    let mut cur = p.clone();
    loop {
        let (q, r) = cur.div_rem(f);
        if !r.is_zero() {
            return (v, cur);
        }
        v += 1;
        cur = q;
    }
}

pub fn valuation(x: &RatFunc, place: &Place) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinity;
    }
    match place {
        Place::Finite(f) => Valuation::Finite(
            poly_valuation(x.num(), f) as i64 - poly_valuation(x.den(), f) as i64,
        ),
        Place::Infinite => Valuation::Finite(x.den().deg() as i64 - x.num().deg() as i64),
    }
}

/// Finite valuation helper for nonzero arguments.
pub(crate) fn val(x: &RatFunc, place: &Place) -> i64 {
    valuation(x, place).finite().expect("valuation of zero")
}

/// Reduction of `x` modulo `m` (a power of a prime), for `x` whose
/// denominator is coprime to `m`.
pub fn reduce_mod(x: &RatFunc, m: &Poly) -> Option<Poly> {
    if x.is_polynomial() {
        return Some(x.num().rem(m));
    }
    let inv = x.den().inv_mod(m)?;
    Some(x.num().mul_mod(&inv, m))
}

/// Chinese remaindering for pairwise coprime moduli. Returns the unique
/// residue of degree below the degree of the product.
pub fn crt(pairs: &[(Poly, Poly)]) -> Result<Poly, Error> {
    let Some((_, first)) = pairs.first() else {
        return Err(Error::Precondition("crt needs at least one congruence"));
    };
    let field = first.field();
    for (i, (_, a)) in pairs.iter().enumerate() {
        if a.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        for (_, b) in &pairs[i + 1..] {
            if !a.gcd(b).is_one() {
                return Err(Error::NotCoprime(a.clone(), b.clone()));
            }
        }
    }
    let mut acc = Poly::zero(field);
    let mut modulus = Poly::one(field);
    for (r, m) in pairs {
        // acc + modulus * s ≡ r (mod m)
        let inv = modulus.inv_mod(m).expect("coprime moduli");
        let s = (&r.rem(m) + &acc.rem(m)).mul_mod(&inv, m);
        acc = &acc + &(&modulus * &s);
        modulus = &modulus * m;
        acc = acc.rem(&modulus);
    }
    Ok(acc)
}

/// The unique square root of `g` in GF(2^k)[t]/(f) for irreducible `f`,
/// computed by `k·deg(f) − 1` squarings.
pub fn sqrt_mod(g: &Poly, f: &Poly) -> Result<Poly, Error> {
    if f.is_constant() || !irreducible_unchecked(f) {
        return Err(Error::NotIrreducible);
    }
    Ok(sqrt_mod_unchecked(g, f))
}

pub(crate) fn sqrt_mod_unchecked(g: &Poly, f: &Poly) -> Poly {
    let n = f.field().degree() as u64 * f.deg() as u64;
    g.pow2k_mod(n - 1, f)
}

/// Principal part of `x` at `f`: returns `(num, r)` with `x = num / f^r + rest`,
/// `rest` regular at `f` and `deg num < r·deg f`.
pub(crate) fn principal_part(x: &RatFunc, f: &Poly) -> (Poly, u32) {
    let (r, rest_den) = split_off(x.den(), f);
    if r == 0 {
        return (Poly::zero(f.field()), 0);
    }
    let fr = f.pow(r as u64);
    // x = N / (f^r D) with gcd(f, D) = 1; principal part P/f^r with P ≡ N D^{-1} mod f^r
    let inv = rest_den.inv_mod(&fr).expect("coprime cofactor");
    (x.num().mul_mod(&inv, &fr), r)
}

/// Monic irreducible factors of a polynomial as finite places.
pub fn places_dividing(p: &Poly) -> Vec<Place> {
    if p.is_zero() || p.is_constant() {
        return Vec::new();
    }
    crate::factor::factor(p)
        .expect("nonzero")
        .into_iter()
        .map(|(f, _)| Place::finite_unchecked(f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::prelude::rust_2021::*;
    use std::vec;
    use crate::factor::polys_below;
    use crate::gf::FieldSpec;
    use crate::ratfunc::gf2_poly as p2;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn valuation_examples() {
        let x = RatFunc::new(p2(0b111), p2(0b10));
        let t = Place::finite(&p2(0b10)).unwrap();
        assert_eq!(valuation(&x, &t), Valuation::Finite(-1));
        let t2 = RatFunc::from_poly(p2(0b100));
        assert_eq!(valuation(&t2, &Place::Infinite), Valuation::Finite(-2));
        let z = RatFunc::zero(FieldSpec::binary());
        assert_eq!(valuation(&z, &t), Valuation::Infinity);
        assert_eq!(valuation(&z, &Place::Infinite), Valuation::Infinity);
    }

    #[test]
    fn place_rejects_reducible() {
        assert_eq!(Place::finite(&p2(0b110)), Err(Error::NotIrreducible));
        assert_eq!(Place::finite(&p2(1)), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn valuation_product_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = FieldSpec::with_degree(2).unwrap();
        let places: Vec<Place> = [
            Poly::t(f),
            Poly::from_coeffs(f, vec![1, 1]),
            Poly::from_coeffs(f, vec![2, 1, 1]),
            Poly::from_coeffs(f, vec![1, 1, 0, 1]),
        ]
        .iter()
        .filter_map(|p| Place::finite(p).ok())
        .chain([Place::Infinite])
        .collect();
        assert_eq!(places.len(), 5);
        for _ in 0..1000 {
            let mk = |rng: &mut ChaCha8Rng| {
                let n = Poly::random(f, 6, rng);
                let mut d = Poly::random(f, 5, rng);
                if d.is_zero() {
                    d = Poly::one(f);
                }
                RatFunc::new(n, d)
            };
            let x = mk(&mut rng);
            let y = mk(&mut rng);
            for v in &places {
                let (vx, vy) = (valuation(&x, v), valuation(&y, v));
                if let (Valuation::Finite(a), Valuation::Finite(b)) = (vx, vy) {
                    assert_eq!(valuation(&(&x * &y), v), Valuation::Finite(a + b));
                }
                assert!(valuation(&(&x + &y), v) >= vx.min(vy));
            }
        }
    }

    #[test]
    fn crt_examples() {
        let t = p2(0b10);
        let t1 = p2(0b11);
        assert_eq!(crt(&[(p2(1), t.clone()), (p2(1), t1.clone())]).unwrap(), p2(1));
        // enumerate the 4 candidates of degree < 2 for r(0)=1, r(1)=0
        let f2 = FieldSpec::binary();
        let expected: Vec<Poly> = polys_below(f2, 2)
            .filter(|r| r.rem(&t) == p2(1) && r.rem(&t1).is_zero())
            .collect();
        assert_eq!(expected, vec![p2(0b11)]);
        assert_eq!(crt(&[(p2(1), t.clone()), (p2(0), t1.clone())]).unwrap(), p2(0b11));
        assert_eq!(crt(&[(t.clone(), p2(0b111))]).unwrap(), t);
        assert_eq!(
            crt(&[(p2(1), p2(0b110)), (p2(0), t.clone())]),
            Err(Error::NotCoprime(p2(0b110), t))
        );
    }

    #[test]
    fn sqrt_mod_examples() {
        let f = p2(0b111);
        // enumerate all 4 residues for x^2 ≡ t
        let roots: Vec<Poly> = polys_below(FieldSpec::binary(), 2)
            .filter(|x| x.square().rem(&f) == p2(0b10))
            .collect();
        assert_eq!(roots, vec![p2(0b11)]);
        assert_eq!(sqrt_mod(&p2(0b10), &f).unwrap(), p2(0b11));
        assert_eq!(sqrt_mod(&p2(1), &p2(0b1011)).unwrap(), p2(1));
        assert!(sqrt_mod(&f, &f).unwrap().is_zero());
        assert_eq!(sqrt_mod(&p2(1), &p2(0b110)), Err(Error::NotIrreducible));
    }

    #[test]
    fn sqrt_mod_all_residues_small() {
        for k in [1u32, 2] {
            let fld = FieldSpec::with_degree(k).unwrap();
            for d in 1..=3 {
                for f in crate::factor::monic_irreducibles(fld, d) {
                    for g in polys_below(fld, d) {
                        let s = sqrt_mod(&g, &f).unwrap();
                        assert_eq!(s.square().rem(&f), g.rem(&f));
                    }
                }
            }
        }
    }

    #[test]
    fn principal_part_splits() {
        let f = p2(0b111);
        let x = RatFunc::new(p2(0b1011), &f.pow(3) * &p2(0b10));
        let (n, r) = principal_part(&x, &f);
        assert_eq!(r, 3);
        let rest = &x + &RatFunc::new(n, f.pow(3));
        let place = Place::finite(&f).unwrap();
        assert!(valuation(&rest, &place) >= Valuation::Finite(0));
    }
}
