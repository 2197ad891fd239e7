//! Irreducibility testing and factorization over GF(2^k): square-free
//! decomposition, distinct-degree splitting, then a trace-based
//! equal-degree split.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::gf::FieldSpec;
use crate::poly::Poly;

/// Degrees up to which the irreducibility test looks for small factors
/// step by step before falling back to Rabin's conditions.
const EARLY_ABORT_DEGREE: usize = 12;

/// Rabin's irreducibility test.
pub fn is_irreducible(p: &Poly) -> Result<bool, Error> {
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    Ok(irreducible_unchecked(p))
}

pub(crate) fn irreducible_unchecked(p: &Poly) -> bool {
    let p = p.monic();
    let n = p.deg();
    if n == 1 {
        return true;
    }
    let k = p.field().degree() as u64;
    let t = Poly::t(p.field());
    let prime_quotients: Vec<usize> = prime_factors(n).into_iter().map(|r| n / r).collect();
    // Cheap check for repeated factors / small ones first.
    if !p.gcd(&p.derivative()).is_one() {
        return false;
    }
    let mut cur = t.clone();
    for i in 1..=n {
        cur = cur.pow2k_mod(k, &p);
        let probe = i <= EARLY_ABORT_DEGREE.min(n / 2) || prime_quotients.contains(&i);
        if probe && !(&cur + &t).gcd(&p).is_one() {
            return false;
        }
    }
    cur == t.rem(&p)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut r = 2;
    while r * r <= n {
        if n % r == 0 {
            out.push(r);
            while n % r == 0 {
                n /= r;
            }
        }
        r += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Factors a nonzero polynomial into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients). The product of the factors times the
/// leading coefficient of `p` is `p`.
pub fn factor(p: &Poly) -> Result<Vec<(Poly, u32)>, Error> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in square_free(&p.monic(), 1) {
        for (g, d) in distinct_degree(&part) {
            for f in equal_degree(&g, d) {
                out.push((f, mult));
            }
        }
    }
    out.sort();
    // merge equal factors produced by different square-free layers
    let mut merged: Vec<(Poly, u32)> = Vec::with_capacity(out.len());
    for (f, m) in out {
        match merged.last_mut() {
            Some((g, e)) if *g == f => *e += m,
            _ => merged.push((f, m)),
        }
    }
    Ok(merged)
}

/// Distinct monic irreducible factors.
pub fn prime_divisors(p: &Poly) -> Result<Vec<Poly>, Error> {
    Ok(factor(p)?.into_iter().map(|(f, _)| f).collect())
}

/// Square-free decomposition of a monic polynomial, as (square-free part, multiplicity).
fn square_free(p: &Poly, mult: u32) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let mut repeated = p.gcd(&p.derivative());
    let mut w = p.div_exact(&repeated);
    let mut i = 0;
    while !w.is_constant() {
        i += 1;
        let y = w.gcd(&repeated);
        let z = w.div_exact(&y);
        if !z.is_constant() {
            out.push((z, i * mult));
        }
        w = y;
        repeated = repeated.div_exact(&w);
    }
    // Whatever remains has zero derivative, hence is a square.
    if !repeated.is_constant() {
        let root = repeated.sqrt().expect("remaining part is a perfect square");
        out.extend(square_free(&root, mult * 2));
    }
    out
}

/// Splits a square-free monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    let f = p.field();
    let k = f.degree() as u64;
    let t = Poly::t(f);
    let mut rest = p.clone();
    let mut h = t.clone();
    let mut d = 0;
    while !rest.is_constant() {
        d += 1;
        if 2 * d > rest.deg() {
            let n = rest.deg();
            out.push((rest, n));
            break;
        }
        h = h.pow2k_mod(k, &rest);
        let g = (&h + &t).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d` completely.
///
/// Uses the absolute trace Tr: GF(2^(kd)) → GF(2) componentwise. It is
/// GF(2)-linear, so whenever there are at least two factors some basis
/// element `g^l · t^j` has a trace that differs between components, and a
/// deterministic scan over that basis always finds a split.
fn equal_degree(p: &Poly, d: usize) -> Vec<Poly> {
    if p.deg() == d {
        return vec![p.clone()];
    }
    let f = p.field();
    let k = f.degree() as usize;
    for j in 0..p.deg() {
        for l in 0..k {
            let a = Poly::monomial(f.elem(1 << l), j);
            let tr = trace_mod(&a, k * d, p);
            let g = tr.gcd(p);
            if !g.is_one() && g.deg() < p.deg() {
                let mut out = equal_degree(&g, d);
                out.extend(equal_degree(&p.div_exact(&g), d));
                return out;
            }
        }
    }
    unreachable!("equal-degree split must succeed on a basis element")
}

/// `a + a^2 + a^4 + ... + a^(2^(n-1)) mod m`.
pub(crate) fn trace_mod(a: &Poly, n: usize, m: &Poly) -> Poly {
    let mut cur = a.rem(m);
    let mut acc = cur.clone();
    for _ in 1..n {
        cur = cur.square().rem(m);
        acc += &cur;
    }
    acc
}

/// All monic polynomials of exactly degree `n`, in increasing order.
pub fn monic_polys(field: FieldSpec, n: usize) -> impl Iterator<Item = Poly> {
    let q = field.order();
    let count = q.checked_pow(n as u32).expect("enumeration too large");
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(n + 1);
        for _ in 0..n {
            coeffs.push(idx % q);
            idx /= q;
        }
        coeffs.push(1);
        Poly::from_coeffs(field, coeffs)
    })
}

/// All polynomials of degree < `n` (including zero).
pub fn polys_below(field: FieldSpec, n: usize) -> impl Iterator<Item = Poly> {
    let q = field.order();
    let count = q.checked_pow(n as u32).expect("enumeration too large");
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(n);
        for _ in 0..n {
            coeffs.push(idx % q);
            idx /= q;
        }
        Poly::from_coeffs(field, coeffs)
    })
}

/// Monic irreducibles of exactly degree `n`.
pub fn monic_irreducibles(field: FieldSpec, n: usize) -> impl Iterator<Item = Poly> {
    monic_polys(field, n).filter(irreducible_unchecked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::prelude::rust_2021::*;
    use std::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p2(mask: u128) -> Poly {
        Poly::from_bits(FieldSpec::binary(), mask)
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(factor(&p2(0b110)).unwrap(), vec![(p2(0b10), 1), (p2(0b11), 1)]);
        assert_eq!(factor(&p2(0b111)).unwrap(), vec![(p2(0b111), 1)]);
        let sq = p2(0b111).square();
        assert_eq!(factor(&sq).unwrap(), vec![(p2(0b111), 2)]);
        assert_eq!(factor(&Poly::zero(FieldSpec::binary())), Err(Error::ZeroPolynomial));
        assert!(factor(&Poly::one(FieldSpec::binary())).unwrap().is_empty());
    }

    #[test]
    fn irreducible_goldens() {
        assert!(is_irreducible(&p2(0b1000011)).unwrap()); // t^6+t+1
        assert!(!is_irreducible(&p2(0b110)).unwrap());
        assert_eq!(is_irreducible(&p2(1)), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn trial_division_agrees_over_f2() {
        // t^2+t+1 is the only irreducible quadratic; check against trial
        // division by all monic linears for every quadratic.
        for p in monic_polys(FieldSpec::binary(), 2) {
            let trial = monic_polys(FieldSpec::binary(), 1).all(|d| !d.divides(&p));
            assert_eq!(is_irreducible(&p).unwrap(), trial, "{p}");
        }
        // degrees up to 8 against trial division by all lower-degree monics
        for n in 3..=8 {
            for p in monic_polys(FieldSpec::binary(), n) {
                let trial =
                    (1..=n / 2).all(|d| monic_polys(FieldSpec::binary(), d).all(|g| !g.divides(&p)));
                assert_eq!(is_irreducible(&p).unwrap(), trial, "{p}");
            }
        }
    }

    #[test]
    fn t2_t_omega_over_f4_by_root_search() {
        let f4 = FieldSpec::with_degree(2).unwrap();
        let w = f4.generator();
        let p = &(&Poly::t(f4).square() + &Poly::t(f4)) + &Poly::constant(w);
        // a quadratic is irreducible iff it has no root in F_4
        let has_root = (0..4).any(|b| p.eval(f4.elem(b)).is_zero());
        assert_eq!(is_irreducible(&p).unwrap(), !has_root);
        // over F_4 it is irreducible (Tr(w) = 1), and it splits over F_16
        assert!(!has_root);
        let f16 = FieldSpec::with_degree(4).unwrap();
        // embed w as a cube root of unity in F_16: w = g^5
        let w16 = f16.generator().pow(5);
        let roots16 = (0..16).filter(|&b| {
            let x = f16.elem(b);
            (x * x + x + w16).is_zero()
        });
        assert_eq!(roots16.count(), 2);
    }

    #[test]
    fn factor_reproduces_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in [1, 2, 3] {
            let f = FieldSpec::with_degree(k).unwrap();
            for _ in 0..(1000 / 3) {
                let p = Poly::random(f, 13, &mut rng);
                if p.is_zero() {
                    continue;
                }
                let fs = factor(&p).unwrap();
                let mut prod = Poly::constant(p.leading_coeff());
                for (g, e) in &fs {
                    assert!(g.is_monic());
                    assert!(is_irreducible(g).unwrap());
                    prod = &prod * &g.pow(*e as u64);
                }
                assert_eq!(prod, p);
            }
        }
    }

    #[test]
    fn planted_high_multiplicity() {
        let f = FieldSpec::with_degree(3).unwrap();
        // t^2+t+1 stays irreducible over GF(8) since GF(4) is not a subfield
        let a = Poly::from_coeffs(f, vec![1, 1, 1]);
        let b = Poly::from_coeffs(f, vec![f.generator().bits(), 1]);
        let p = &a.pow(6) * &b.pow(5);
        assert_eq!(factor(&p).unwrap(), vec![(b, 5), (a, 6)]);
    }
}
