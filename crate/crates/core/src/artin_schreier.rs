//! Artin–Schreier theory over GF(2^k)(t): the characteristic-2 quadratic
//! residue symbol, reduction of norm forms `x² + xy + a·y²` to minimal
//! parameters, global ℘-preimages, and the local norm pairing.

use alloc::vec::Vec;

use crate::error::Error;
use crate::factor::{factor, trace_mod};
use crate::gf::FieldElement;
use crate::place::{principal_part, reduce_mod, sqrt_mod_unchecked, valuation, Place, Valuation};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// `[a, f)` for a finite place: 0 when `a ≡ x² + x (mod f)` is solvable,
/// else 1. Evaluated as the absolute trace of `a mod f` down to GF(2).
pub fn symbol_finite(a: &RatFunc, f: &Place) -> Result<u8, Error> {
    let Place::Finite(p) = f else {
        return symbol_infinite(a);
    };
    if valuation(a, f) < Valuation::Finite(0) {
        return Err(Error::SymbolAtPole);
    }
    let residue = reduce_mod(a, p).expect("regular at the place");
    let n = p.field().degree() as usize * p.deg();
    let tr = trace_mod(&residue, n, p);
    debug_assert!(tr.is_constant() && tr.coeff_bits(0) <= 1);
    Ok(tr.coeff_bits(0) as u8)
}

/// `[a, ∞)`: the trace of the value of `a` at infinity.
pub fn symbol_infinite(a: &RatFunc) -> Result<u8, Error> {
    match a.degree() {
        None => Ok(0),
        Some(d) if d > 0 => Err(Error::SymbolAtPole),
        Some(d) if d < 0 => Ok(0),
        Some(_) => Ok(a.leading_coeff().trace()),
    }
}

pub fn symbol(a: &RatFunc, place: &Place) -> Result<u8, Error> {
    match place {
        Place::Finite(_) => symbol_finite(a, place),
        Place::Infinite => symbol_infinite(a),
    }
}

/// Formal derivative of a rational function.
pub(crate) fn derivative(x: &RatFunc) -> RatFunc {
    let (n, d) = (x.num(), x.den());
    RatFunc::new(&(&n.derivative() * d) + &(n * &d.derivative()), d.square())
}

/// Residue of `w·dt` at a place, as an element of GF(2^k).
pub fn residue(w: &RatFunc, place: &Place) -> FieldElement {
    let field = w.field();
    if w.is_zero() {
        return field.zero();
    }
    match place {
        Place::Finite(f) => {
            let (num, m) = principal_part(w, f);
            if m == 0 {
                return field.zero();
            }
            num.coeff(m as usize * f.deg() - 1)
        }
        Place::Infinite => {
            let rem = w.num().rem(w.den());
            // den is monic, so the 1/t coefficient of rem/den is this one
            rem.coeff(w.den().deg().wrapping_sub(1))
        }
    }
}

/// The local Artin–Schreier pairing `Tr Res(a · dc/c)` at a place. It is 0
/// exactly when `c` is a local norm from the extension defined by
/// `X² + X + a`, i.e. when `x² + xy + a·y² = c` is locally solvable.
pub fn norm_pairing(a: &RatFunc, c: &RatFunc, place: &Place) -> u8 {
    assert!(!c.is_zero(), "pairing with zero");
    if a.is_zero() {
        return 0;
    }
    let dlog = &derivative(c) / c;
    residue(&(a * &dlog), place).trace()
}

/// Whether `scale·(x² + xy + param·y²) = c` is solvable in the completion at `place`.
pub fn locally_represents(scale: &RatFunc, param: &RatFunc, c: &RatFunc, place: &Place) -> bool {
    norm_pairing(param, &(c / scale), place) == 0
}

/// A scaled norm form `scale·(x² + xy + param·y²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryNormForm {
    scale: RatFunc,
    param: RatFunc,
}

impl BinaryNormForm {
    pub fn new(scale: RatFunc, param: RatFunc) -> Result<Self, Error> {
        if scale.is_zero() {
            return Err(Error::Precondition("norm form scale must be nonzero"));
        }
        Ok(Self { scale, param })
    }

    pub fn scale(&self) -> &RatFunc {
        &self.scale
    }

    pub fn param(&self) -> &RatFunc {
        &self.param
    }

    pub fn eval(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        let inner = &(&x.square() + &(x * y)) + &(&self.param * &y.square());
        &self.scale * &inner
    }

    /// Every pole of the parameter, including infinity, has odd order.
    pub fn is_minimal(&self) -> bool {
        is_minimal(&self.param)
    }
}

pub fn is_minimal(a: &RatFunc) -> bool {
    if a.is_zero() {
        return true;
    }
    let at_inf = a.degree().unwrap();
    if at_inf > 0 && at_inf % 2 == 0 {
        return false;
    }
    factor(a.den()).expect("nonzero").iter().all(|(_, e)| e % 2 == 1)
}

/// `h` with `param_old = param_new + h² + h`; the substitution `x ↦ x + h·y`
/// carries solutions of the new form back to the old one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WpShift {
    pub h: RatFunc,
}

/// Reduces the parameter of a norm form until all poles have odd order.
pub fn minimize(form: &BinaryNormForm) -> (BinaryNormForm, WpShift) {
    let (param, h) = minimize_param(&form.param);
    (BinaryNormForm { scale: form.scale.clone(), param }, WpShift { h })
}

/// Returns `(a', h)` with `a = a' + h² + h` and `a'` minimal. Finite poles
/// are handled in ascending degree order, then infinity.
pub fn minimize_param(a: &RatFunc) -> (RatFunc, RatFunc) {
    let field = a.field();
    let mut cur = a.clone();
    let mut shift = RatFunc::zero(field);
    if a.is_zero() {
        return (cur, shift);
    }
    let poles: Vec<Poly> = factor(a.den()).expect("nonzero").into_iter().map(|(f, _)| f).collect();
    for f in &poles {
        let (next, s) = reduce_even_pole(&cur, f);
        cur = next;
        shift = &shift + &s;
    }
    let (next, s) = reduce_at_infinity(&cur);
    (next, &shift + &s)
}

/// Removes even-order poles of `a` at the finite prime `f` only.
pub(crate) fn reduce_even_pole(a: &RatFunc, f: &Poly) -> (RatFunc, RatFunc) {
    let field = a.field();
    let mut cur = a.clone();
    let mut shift = RatFunc::zero(field);
    let place = Place::Finite(f.clone());
    loop {
        let v = match valuation(&cur, &place) {
            Valuation::Finite(v) if v < 0 && v % 2 == 0 => v,
            _ => return (cur, shift),
        };
        let r = (-v / 2) as u64;
        let fr = f.pow(r);
        // a = g1 / (f^{2r} h1): pick g with g² ≡ g1/h1 (mod f)
        let lifted = &cur * &RatFunc::from_poly(fr.square());
        let target = reduce_mod(&lifted, f).expect("regular after scaling");
        let g = sqrt_mod_unchecked(&target, f);
        let s = RatFunc::new(g, fr);
        cur = &(&cur + &s.square()) + &s;
        shift = &shift + &s;
    }
}

/// Removes even-degree poles at infinity.
pub(crate) fn reduce_at_infinity(a: &RatFunc) -> (RatFunc, RatFunc) {
    let field = a.field();
    let mut cur = a.clone();
    let mut shift = RatFunc::zero(field);
    loop {
        let d = match cur.degree() {
            Some(d) if d > 0 && d % 2 == 0 => d,
            _ => return (cur, shift),
        };
        let c = cur.leading_coeff().sqrt();
        let s = RatFunc::from_poly(Poly::monomial(c, (d / 2) as usize));
        cur = &(&cur + &s.square()) + &s;
        shift = &shift + &s;
    }
}

/// Local reduction at a single place: removes even-order poles there.
pub fn minimize_at(a: &RatFunc, place: &Place) -> (RatFunc, RatFunc) {
    match place {
        Place::Finite(f) => reduce_even_pole(a, f),
        Place::Infinite => reduce_at_infinity(a),
    }
}

/// Whether `X² + X + a` has a root in the completion at `place`.
pub fn splits_locally(a: &RatFunc, place: &Place) -> bool {
    let (reduced, _) = minimize_at(a, place);
    match valuation(&reduced, place) {
        Valuation::Infinity => true,
        Valuation::Finite(v) if v < 0 => false,
        Valuation::Finite(_) => symbol(&reduced, place).expect("regular") == 0,
    }
}

/// Some `h ∈ GF(2^k)(t)` with `h² + h = g`, if one exists.
pub fn wp_solve_rational(g: &RatFunc) -> Option<RatFunc> {
    let field = g.field();
    if g.is_zero() {
        return Some(RatFunc::zero(field));
    }
    // Finite poles first; bail out as soon as one stays odd.
    let mut cur = g.clone();
    let mut shift = RatFunc::zero(field);
    for (f, e) in factor(g.den()).expect("nonzero") {
        if e % 2 == 1 {
            return None;
        }
        let (next, s) = reduce_even_pole(&cur, &f);
        if !next.den().is_one() && next.den().gcd(&f).deg() > 0 {
            return None;
        }
        cur = next;
        shift = &shift + &s;
    }
    let (cur, s) = reduce_at_infinity(&cur);
    let shift = &shift + &s;
    let c0 = cur.as_constant()?;
    let e = c0.wp_preimage()?;
    let h = &shift + &RatFunc::constant(e);
    debug_assert_eq!(&h.square() + &h, *g);
    Some(h)
}
