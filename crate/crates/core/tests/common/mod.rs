//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use char2quad::artin_schreier::minimize_at;
use char2quad::factor::polys_below;
use char2quad::local::represents_ramified;
use char2quad::place::{reduce_mod, valuation};
use char2quad::quaternary::QuaternaryForm;
use char2quad::{FieldSpec, Place, Poly, RatFunc, Valuation};

/// Carry-less product of bit-packed F_2 polynomials.
pub fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0;
    let mut b = b;
    let mut i = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << i;
        }
        b >>= 1;
        i += 1;
    }
    acc
}

fn bits(p: &Poly) -> u64 {
    p.coeffs().iter().enumerate().fold(0, |acc, (i, &c)| acc | (c & 1) << i)
}

/// Nonzero zero of a form with polynomial coefficients over F_2 whose
/// coordinates are polynomials of degree ≤ d. For fixed `x1, x2, x3`,
/// `x4 ↦ g44·x4² + L·x4` is F_2-linear, so the last coordinate is found by
/// scanning combinations of the images of `1, t, …, t^d`.
pub fn brute_force_zero_f2(form: &QuaternaryForm, d: u32) -> Option<[u64; 4]> {
    let g: Vec<Vec<u64>> = form
        .gram()
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    assert!(e.is_polynomial() && e.field() == FieldSpec::binary());
                    bits(e.num())
                })
                .collect()
        })
        .collect();
    let n = 1u64 << (d + 1);
    let sq = |x: u64| clmul(x, x);
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                let xs = [x1, x2, x3];
                let mut k = 0;
                for i in 0..3 {
                    k ^= clmul(g[i][i], sq(xs[i]));
                    for j in i + 1..3 {
                        k ^= clmul(g[i][j], clmul(xs[i], xs[j]));
                    }
                }
                let l = clmul(g[0][3], x1) ^ clmul(g[1][3], x2) ^ clmul(g[2][3], x3);
                let images: Vec<u64> = (0..=d).map(|e| clmul(g[3][3], 1 << (2 * e)) ^ clmul(l, 1 << e)).collect();
                for x4 in 0..n {
                    if x1 | x2 | x3 | x4 == 0 {
                        continue;
                    }
                    let v = (0..=d).filter(|e| x4 >> e & 1 == 1).fold(0, |acc, e| acc ^ images[e as usize]);
                    if v == k {
                        return Some([x1, x2, x3, x4]);
                    }
                }
            }
        }
    }
    None
}

fn val(x: &RatFunc, f: &Poly) -> i64 {
    match valuation(x, &Place::Finite(f.clone())) {
        Valuation::Finite(v) => v,
        Valuation::Infinity => i64::MAX,
    }
}

/// Primitive solution of `x² + xy + a·y² ≡ d (mod f³)` by exhaustion, for
/// `a` regular and `v_f(d) ∈ {0, 1}`.
fn unramified_rep(a: &RatFunc, d: &RatFunc, f: &Poly) -> bool {
    let m = f.pow(3);
    let (aa, dd) = (reduce_mod(a, &m).unwrap(), reduce_mod(d, &m).unwrap());
    for x in polys_below(f.field(), m.deg()) {
        for y in polys_below(f.field(), m.deg()) {
            if x.rem(f).is_zero() && y.rem(f).is_zero() {
                continue;
            }
            let v = (&(&x.square() + &(&x * &y)) + &(&aa * &y.square())).rem(&m);
            if v == dd {
                return true;
            }
        }
    }
    false
}

fn power(f: &Poly, e: i64) -> RatFunc {
    if e >= 0 {
        RatFunc::from_poly(f.pow(e as u64))
    } else {
        RatFunc::new(Poly::one(f.field()), f.pow((-e) as u64))
    }
}

/// Whether `x² + xy + param·y² = d` is solvable in the completion at `f`,
/// decided by exhaustive residue searches. `None` if the search is too big.
fn locally_norm(param: &RatFunc, d: &RatFunc, f: &Poly) -> Option<bool> {
    let place = Place::Finite(f.clone());
    let (a, _) = minimize_at(param, &place);
    let pole = if a.is_zero() { 0 } else { -val(&a, f).min(0) };
    if pole == 0 {
        let v = val(d, f);
        let d = d * &power(f, -2 * v.div_euclid(2));
        return Some(unramified_rep(&a, &d, f));
    }
    let r = (pole as u32 - 1) / 2;
    let b = &a * &power(f, pole);
    // f^(2r+1)x² + f^(2r+1)xy + b·y² = c·f^(2r) with c = d·f, scaled into v(c) ∈ {0, 1}
    let c = d * &power(f, 1);
    let c = &c * &power(f, -2 * val(&c, f).div_euclid(2));
    match represents_ramified(&b, &c, &place, r) {
        Ok(w) => Some(w.is_some()),
        Err(_) => None,
    }
}

/// Exhaustive local anisotropy of `a1·N(a2) ⊥ a3·N(a4)` at a place: no
/// value class `c` (a unit or `f`·unit modulo `f^(2·pole+1)`) is represented
/// by both binary forms. `None` if the enumeration exceeds the guard.
pub fn locally_anisotropic_brute(a: &[RatFunc; 4], place: &Place) -> Option<bool> {
    let (a, f) = match place {
        Place::Finite(f) => (a.clone(), f.clone()),
        Place::Infinite => (a.clone().map(|x| x.invert_variable()), Poly::t(a[0].field())),
    };
    let pole = [&a[1], &a[3]]
        .iter()
        .map(|p| {
            let (m, _) = minimize_at(p, &Place::Finite(f.clone()));
            if m.is_zero() { 0 } else { -val(&m, &f).min(0) }
        })
        .max()
        .unwrap();
    let n = 2 * pole as usize + 1;
    if f.deg() * n > 14 {
        return None;
    }
    for unit in polys_below(f.field(), f.deg() * n) {
        if unit.rem(&f).is_zero() {
            continue;
        }
        for shift in [0, 1] {
            let c = RatFunc::from_poly(unit.clone()) * power(&f, shift);
            let left = locally_norm(&a[1], &(&c / &a[0]), &f)?;
            let right = locally_norm(&a[3], &(&c / &a[2]), &f)?;
            if left && right {
                return Some(false);
            }
        }
    }
    Some(true)
}
