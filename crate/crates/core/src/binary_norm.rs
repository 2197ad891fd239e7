//! Global solutions of `a1·(x² + xy + a2·y²) = c` over GF(2^k)(t).
//!
//! For a fixed `y ≠ 0`, substituting `x = y·z` turns the equation into
//! `z² + z = c/(a1·y²) + a2`, which `wp_solve_rational` decides exactly.
//! Candidates `y = Y/Z` are enumerated by increasing height
//! `max(deg Y, deg Z)`, in a seeded pseudo-random order within each height.

use rand::RngCore;

use crate::artin_schreier::{minimize_param, wp_solve_rational, BinaryNormForm};
use crate::error::Error;
use crate::factor::{monic_polys, polys_below};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// Total number of `y` candidates one call may examine.
pub const CANDIDATE_LIMIT: u64 = 1 << 22;

/// Largest number of pairs the brute-force oracle scans.
pub const BRUTE_FORCE_LIMIT: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormEquation {
    pub form: BinaryNormForm,
    pub target: RatFunc,
}

impl NormEquation {
    pub fn new(scale: RatFunc, param: RatFunc, target: RatFunc) -> Result<Self, Error> {
        if target.is_zero() {
            return Err(Error::Precondition("norm equation target must be nonzero"));
        }
        Ok(Self { form: BinaryNormForm::new(scale, param)?, target })
    }

    pub fn is_solution(&self, x: &RatFunc, y: &RatFunc) -> bool {
        self.form.eval(x, y) == self.target
    }
}

/// Searches for `(x, y)` with `scale·(x² + xy + param·y²) = target`, trying
/// `y` of height up to `degree_budget`. Running out of candidates is
/// reported as `BudgetExhausted`, which is not a proof of insolvability.
pub fn solve_binary<R: RngCore + ?Sized>(
    eq: &NormEquation,
    rng: &mut R,
    degree_budget: usize,
) -> Result<(RatFunc, RatFunc), Error> {
    let field = eq.target.field();
    let rhs = &eq.target / eq.form.scale();
    if let Some(s) = rhs.sqrt() {
        return finish(eq, s, RatFunc::zero(field));
    }
    let (param, shift) = minimize_param(eq.form.param());
    let mut examined = 0u64;
    for height in 0..=degree_budget {
        let count = pair_count(field.order(), height);
        let start = rng.next_u64() as u128 % count;
        // odd stride: a permutation of the index space, which has size a power of two
        let stride = (rng.next_u64() as u128 % count) | 1;
        for i in 0..count {
            let idx = (start + i * stride) % count;
            let Some(y) = decode_pair(field, height, idx) else { continue };
            examined += 1;
            if examined > CANDIDATE_LIMIT {
                return Err(Error::BudgetExhausted);
            }
            let g = &(&rhs / &y.square()) + &param;
            if !may_be_wp_image(&g) {
                continue;
            }
            if let Some(z) = wp_solve_rational(&g) {
                let x = &(&y * &z) + &(&shift * &y);
                return finish(eq, x, y);
            }
        }
    }
    Err(Error::BudgetExhausted)
}

fn finish(eq: &NormEquation, x: RatFunc, y: RatFunc) -> Result<(RatFunc, RatFunc), Error> {
    if !eq.is_solution(&x, &y) {
        return Err(Error::Internal("binary solution failed re-substitution"));
    }
    Ok((x, y))
}

/// Cheap necessary conditions for `g = h² + h`: the denominator is a square
/// and the pole at infinity, if any, has even order.
fn may_be_wp_image(g: &RatFunc) -> bool {
    if g.den().derivative().is_zero() {
        match g.degree() {
            Some(d) if d > 0 => d % 2 == 0,
            _ => true,
        }
    } else {
        false
    }
}

/// Number of index slots at a given height: numerators of degree ≤ h times
/// monic denominators of degree ≤ h (zero numerators and non-coprime pairs
/// are skipped when decoding).
fn pair_count(q: u64, height: usize) -> u128 {
    let nums = (q as u128).pow(height as u32 + 1);
    let dens: u128 = (0..=height).map(|d| (q as u128).pow(d as u32)).sum();
    // round up to a power of two so that odd strides permute it
    (nums * dens).next_power_of_two()
}

fn decode_pair(field: crate::gf::FieldSpec, height: usize, idx: u128) -> Option<RatFunc> {
    let q = field.order() as u128;
    let nums = q.pow(height as u32 + 1);
    let (num_idx, mut den_idx) = (idx % nums, idx / nums);
    let mut den_deg = 0;
    loop {
        let c = q.pow(den_deg as u32);
        if den_idx < c {
            break;
        }
        den_idx -= c;
        den_deg += 1;
        if den_deg > height {
            return None;
        }
    }
    let y_num = poly_from_index(field, height + 1, num_idx);
    if y_num.is_zero() {
        return None;
    }
    let mut dc = poly_from_index(field, den_deg, den_idx).coeffs().to_vec();
    dc.resize(den_deg + 1, 0);
    dc[den_deg] = 1;
    let den = Poly::from_coeffs(field, dc);
    if y_num.deg().max(den_deg) != height || !y_num.gcd(&den).is_one() {
        return None;
    }
    Some(RatFunc::new(y_num, den))
}

fn poly_from_index(field: crate::gf::FieldSpec, len: usize, mut idx: u128) -> Poly {
    let q = field.order() as u128;
    let coeffs = (0..len)
        .map(|_| {
            let c = (idx % q) as u64;
            idx /= q;
            c
        })
        .collect();
    Poly::from_coeffs(field, coeffs)
}

/// Exhaustive scan over `x = X/D`, `y = Y/D` with `X, Y` of degree ≤ `d` and
/// `D` ranging over the monic divisors of degree ≤ `d` of the denominators
/// of `param` and `target/scale`. `Ok(None)` proves there is no solution of
/// that shape.
pub fn brute_force_binary(eq: &NormEquation, d: usize) -> Result<Option<(RatFunc, RatFunc)>, Error> {
    let field = eq.target.field();
    let rhs = &eq.target / eq.form.scale();
    let lattice = eq.form.param().den() * rhs.den();
    let dens: alloc::vec::Vec<Poly> = (0..=d.min(lattice.deg()))
        .flat_map(|n| monic_polys(field, n))
        .filter(|z| z.divides(&lattice))
        .collect();
    let per = (field.order() as u128).pow(d as u32 + 1);
    if per * per * dens.len() as u128 > BRUTE_FORCE_LIMIT {
        return Err(Error::BudgetExhausted);
    }
    for z in &dens {
        let zr = RatFunc::from_poly(z.clone());
        for ynum in polys_below(field, d + 1) {
            let y = &RatFunc::from_poly(ynum) / &zr;
            for xnum in polys_below(field, d + 1) {
                let x = &RatFunc::from_poly(xnum) / &zr;
                if !(x.is_zero() && y.is_zero()) && eq.is_solution(&x, &y) {
                    return Ok(Some((x, y)));
                }
            }
        }
    }
    Ok(None)
}
