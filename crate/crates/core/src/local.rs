//! Local solvability at a single place: representation by norm forms in
//! the unramified and ramified cases, isotropy of the quaternary form at
//! places of odd valuation, Newton lifting of approximate solutions, and
//! the local conditions on a common value used by the global search.

use rand::RngCore;

use crate::artin_schreier::{norm_pairing, splits_locally, symbol};
use crate::error::Error;
use crate::factor::polys_below;
use crate::place::{poly_valuation, reduce_mod, val, valuation, Place, Valuation};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// Largest number of candidate pairs the exhaustive ramified search scans.
pub const RAMIFIED_SEARCH_LIMIT: u64 = 1 << 24;

/// Cap on random draws per parity class when sampling a local common value.
pub const SAMPLE_CAP: u64 = 4096;

/// An approximate solution `(u0, v0)` modulo `f^precision`. At the infinite
/// place the residues are polynomials in `1/t`, written in the variable `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalWitness {
    pub place: Place,
    pub precision: u32,
    pub u0: Poly,
    pub v0: Poly,
}

/// A constraint on a common value `c` at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalCondition {
    /// `c ≡ residue (mod f^exponent)`, with `v_f(residue) ≤ 1`.
    Congruence { place: Place, residue: Poly, exponent: u32 },
    /// `v_f(c) ≡ parity (mod 2)`.
    ValuationParity { place: Place, parity: u8 },
    /// At infinity: `deg c ≡ parity (mod 2)` when a parity is required, and the
    /// top `precision` coefficients of `c / lc(c)`, read from the top down,
    /// are those of `residue` read from the constant term up.
    InfiniteCondition { residue: Poly, precision: u32, parity: Option<u8> },
}

impl LocalCondition {
    pub fn place(&self) -> Place {
        match self {
            LocalCondition::Congruence { place, .. } | LocalCondition::ValuationParity { place, .. } => {
                place.clone()
            }
            LocalCondition::InfiniteCondition { .. } => Place::Infinite,
        }
    }

    /// Modulus `f^exponent` of a congruence condition.
    pub fn modulus(&self) -> Option<Poly> {
        match self {
            LocalCondition::Congruence { place, exponent, .. } => {
                Some(place.poly().expect("finite place").pow(*exponent as u64))
            }
            _ => None,
        }
    }

    /// Whether `v_f(c)` is forced to be odd.
    pub fn forces_odd(&self) -> bool {
        match self {
            LocalCondition::Congruence { place, residue, .. } => {
                poly_valuation(residue, place.poly().unwrap()) % 2 == 1
            }
            LocalCondition::ValuationParity { parity, .. } => *parity == 1,
            LocalCondition::InfiniteCondition { .. } => false,
        }
    }

    pub fn is_satisfied_by(&self, c: &Poly) -> bool {
        if c.is_zero() {
            return false;
        }
        match self {
            LocalCondition::Congruence { place, residue, exponent } => {
                let m = place.poly().unwrap().pow(*exponent as u64);
                c.rem(&m) == residue.rem(&m)
            }
            LocalCondition::ValuationParity { place, parity } => {
                poly_valuation(c, place.poly().unwrap()) % 2 == *parity as u32
            }
            LocalCondition::InfiniteCondition { residue, precision, parity } => {
                if let Some(p) = parity {
                    if c.deg() % 2 != *p as usize {
                        return false;
                    }
                }
                let m = c.monic();
                m.reverse(m.deg()).truncate(*precision as usize) == *residue
            }
        }
    }
}

/// Whether `x² + xy + a·y² = c` is solvable at a place where `a` is regular.
pub fn represents_unramified(a: &RatFunc, c: &RatFunc, f: &Place) -> Result<bool, Error> {
    if c.is_zero() {
        return Err(Error::Precondition("represented value must be nonzero"));
    }
    if valuation(a, f) < Valuation::Finite(0) {
        return Err(Error::Precondition("parameter has a pole at the place; use the ramified test"));
    }
    if val(c, f) % 2 == 0 {
        return Ok(true);
    }
    Ok(symbol(a, f)? == 0)
}

/// Local isotropy of `a1·N(a2) + a3·N(a4)` at a place with `v_f(a1·a3)` odd
/// and both parameters regular.
pub fn quaternary_isotropic_odd_place(
    a1: &RatFunc,
    a2: &RatFunc,
    a3: &RatFunc,
    a4: &RatFunc,
    f: &Place,
) -> Result<bool, Error> {
    check_scales(a1, a3)?;
    if valuation(a2, f) < Valuation::Finite(0) {
        return Err(Error::Precondition("a2 has a pole at the place"));
    }
    if valuation(a4, f) < Valuation::Finite(0) {
        return Err(Error::Precondition("a4 has a pole at the place"));
    }
    if (val(a1, f) + val(a3, f)) % 2 == 0 {
        return Err(Error::Precondition("v(a1*a3) must be odd at the place"));
    }
    Ok(symbol(a2, f)? == 0 || symbol(a4, f)? == 0)
}

fn check_scales(a1: &RatFunc, a3: &RatFunc) -> Result<(), Error> {
    if a1.is_zero() || a3.is_zero() {
        return Err(Error::Precondition("a1 and a3 must be nonzero"));
    }
    if !a1.is_polynomial() || !a3.is_polynomial() {
        return Err(Error::Precondition("a1 and a3 must be polynomials"));
    }
    let (p1, p3) = (a1.num(), a3.num());
    if !p1.gcd(p3).is_one() {
        return Err(Error::Precondition("a1 and a3 must be coprime"));
    }
    if !p1.gcd(&p1.derivative()).is_one() || !p3.gcd(&p3.derivative()).is_one() {
        return Err(Error::Precondition("a1 and a3 must be square-free"));
    }
    Ok(())
}

/// Decides `f^(2r+1)x² + f^(2r+1)xy + b·y² = c·f^(2r)` at a finite place by
/// exhaustive search modulo `f^(4r+3)`. Every solution has `f^r | y`, so the
/// search runs over `x` and `y = f^r·y1` with both `x, y1` modulo `f^(r+2)`.
pub fn represents_ramified(
    b: &RatFunc,
    c: &RatFunc,
    f: &Place,
    r: u32,
) -> Result<Option<LocalWitness>, Error> {
    let Place::Finite(p) = f else {
        return Err(Error::Precondition("ramified search needs a finite place"));
    };
    if b.is_zero() || val(b, f) != 0 {
        return Err(Error::Precondition("b must be a unit at the place"));
    }
    if c.is_zero() || !(0..=1).contains(&val(c, f)) {
        return Err(Error::Precondition("v(c) must be 0 or 1"));
    }
    let field = p.field();
    let width = p.deg() * (r as usize + 2);
    let count = (field.order() as u128).checked_pow(2 * width as u32).unwrap_or(u128::MAX);
    if count > RAMIFIED_SEARCH_LIMIT as u128 {
        return Err(Error::BudgetExhausted);
    }
    let m = p.pow(2 * r as u64 + 3);
    let bb = reduce_mod(b, &m).expect("unit");
    let cc = reduce_mod(c, &m).expect("regular");
    let fr1 = p.pow(r as u64 + 1);
    // b·y1² ≡ c (mod f) pins y1 mod f; only those y1 need scanning.
    let y_root = crate::place::sqrt_mod_unchecked(
        &cc.mul_mod(&bb.inv_mod(p).expect("unit"), p),
        p,
    );
    for y1 in polys_below(field, width) {
        if y1.rem(p) != y_root {
            continue;
        }
        let by = bb.mul_mod(&y1.square(), &m);
        let rhs = &cc + &by;
        let lin = fr1.mul_mod(&y1, &m);
        for x in polys_below(field, width) {
            let lhs = (&(p * &x.square()) + &(&lin * &x)).rem(&m);
            if lhs == rhs {
                return Ok(Some(LocalWitness {
                    place: f.clone(),
                    precision: 4 * r + 3,
                    u0: x,
                    v0: &p.pow(r as u64) * &y1,
                }));
            }
        }
    }
    Ok(None)
}

/// `A·x² + B·xy + C·y² + D·x + E·y + G = 0` with coefficients regular at
/// the place of interest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticEquation {
    pub coeffs: [RatFunc; 6],
}

impl QuadraticEquation {
    pub fn new(coeffs: [RatFunc; 6]) -> Self {
        Self { coeffs }
    }

    /// The equation of the ramified local test:
    /// `f^(2r+1)x² + f^(2r+1)xy + b·y² + c·f^(2r) = 0`.
    pub fn ramified(b: &RatFunc, c: &RatFunc, f: &Poly, r: u32) -> Self {
        let field = f.field();
        let lead = RatFunc::from_poly(f.pow(2 * r as u64 + 1));
        let zero = RatFunc::zero(field);
        let g = c * &RatFunc::from_poly(f.pow(2 * r as u64));
        Self::new([lead.clone(), lead, b.clone(), zero.clone(), zero, g])
    }

    /// The norm equation `scale·(x² + xy + param·y²) = c`.
    pub fn norm(scale: &RatFunc, param: &RatFunc, c: &RatFunc) -> Self {
        let zero = RatFunc::zero(scale.field());
        Self::new([scale.clone(), scale.clone(), scale * param, zero.clone(), zero, c.clone()])
    }

    pub fn eval(&self, x: &RatFunc, y: &RatFunc) -> RatFunc {
        let [a, b, c, d, e, g] = &self.coeffs;
        let quad = &(&(a * &x.square()) + &(b * &(x * y))) + &(c * &y.square());
        &(&quad + &(&(d * x) + &(e * y))) + g
    }

    fn invert_variable(&self) -> Self {
        Self { coeffs: self.coeffs.clone().map(|c| c.invert_variable()) }
    }

    fn reduced(&self, m: &Poly) -> Result<[Poly; 6], Error> {
        let mut out: [Poly; 6] = core::array::from_fn(|_| Poly::zero(m.field()));
        for (slot, c) in out.iter_mut().zip(&self.coeffs) {
            *slot = reduce_mod(c, m).ok_or(Error::Precondition("coefficient has a pole at the place"))?;
        }
        Ok(out)
    }
}

fn eval_mod(c: &[Poly; 6], x: &Poly, y: &Poly, m: &Poly) -> Poly {
    let [a, b, cc, d, e, g] = c;
    let terms = [
        a.mul_mod(&x.square(), m),
        b.mul_mod(&x.mul_mod(y, m), m),
        cc.mul_mod(&y.square(), m),
        d.mul_mod(x, m),
        e.mul_mod(y, m),
        g.rem(m),
    ];
    let mut acc = Poly::zero(m.field());
    for t in &terms {
        acc += t;
    }
    acc
}

/// Valuation at `f` of a residue modulo `f^n`, capped at `n`.
fn trunc_val(x: &Poly, f: &Poly, n: u32) -> u32 {
    if x.is_zero() {
        n
    } else {
        poly_valuation(x, f).min(n)
    }
}

/// Lifts an approximate solution to precision `target` by Newton steps in
/// one variable at a time: `P(x+δ, y) = P + P_x·δ + A·δ²` exactly in
/// characteristic 2, and symmetrically for `y`. Each step strictly raises
/// the valuation of `P`.
pub fn hensel_lift(
    witness: &LocalWitness,
    equation: &QuadraticEquation,
    target: u32,
) -> Result<LocalWitness, Error> {
    let (eq, f) = match &witness.place {
        Place::Finite(p) => (equation.clone(), p.clone()),
        Place::Infinite => (equation.invert_variable(), Poly::t(witness.u0.field())),
    };
    let m = f.pow(target as u64);
    let c = eq.reduced(&m)?;
    let [a, b, cq, d, e, _] = &c;
    let mut x = witness.u0.rem(&m);
    let mut y = witness.v0.rem(&m);
    loop {
        let p = eval_mod(&c, &x, &y, &m);
        let vp = trunc_val(&p, &f, target);
        if vp >= target {
            break;
        }
        let px = (&b.mul_mod(&y, &m) + d).rem(&m);
        let py = (&b.mul_mod(&x, &m) + e).rem(&m);
        let step = |grad: &Poly, quad: &Poly| -> Option<(Poly, u32)> {
            let vg = trunc_val(grad, &f, target);
            if vg >= target || vg > vp {
                return None;
            }
            let fv = f.pow(vg as u64);
            let mm = f.pow((target - vg) as u64);
            let unit = grad.div_exact(&fv);
            let delta = p.div_exact(&fv).mul_mod(&unit.inv_mod(&mm)?, &mm);
            let vd = vp - vg;
            let gain = 2 * vd + trunc_val(quad, &f, target);
            (gain > vp).then_some((delta, gain))
        };
        let sx = step(&px, a);
        let sy = step(&py, cq);
        match (sx, sy) {
            (Some((dx, gx)), Some((_, gy))) if gx >= gy => x = (&x + &dx).rem(&m),
            (Some((dx, _)), None) => x = (&x + &dx).rem(&m),
            (_, Some((dy, _))) => y = (&y + &dy).rem(&m),
            (None, None) => return Err(Error::NotLiftable),
        }
    }
    Ok(LocalWitness { place: witness.place.clone(), precision: target, u0: x, v0: y })
}

/// Whether `c` is represented by both `a1·N(a2)` and `a3·N(a4)` at `place`.
fn common_at(a: &[RatFunc; 4], c: &RatFunc, place: &Place) -> bool {
    norm_pairing(&a[1], &(c / &a[0]), place) == 0 && norm_pairing(&a[3], &(c / &a[2]), place) == 0
}

/// Whether `a1·N(a2) ⊥ a3·N(a4)` is isotropic at `place`: it is, unless
/// `K_{a2} = K_{a4}` is a field there and `a1/a3` is not a norm from it.
pub fn locally_isotropic(a: &[RatFunc; 4], place: &Place) -> bool {
    common_values_exist(a, place)
}

fn common_values_exist(a: &[RatFunc; 4], place: &Place) -> bool {
    let sum = &a[1] + &a[3];
    if !splits_locally(&sum, place) {
        return true;
    }
    norm_pairing(&a[1], &(&a[0] / &a[2]), place) == 0
}

fn sample_budget(q: u64, n: u32) -> u64 {
    let space = (q as u128).checked_pow(n).unwrap_or(u128::MAX).saturating_mul(64);
    space.min(SAMPLE_CAP as u128) as u64
}

fn random_unit<R: RngCore + ?Sized>(f: &Poly, n: u32, rng: &mut R) -> Poly {
    let field = f.field();
    let m = f.pow(n as u64);
    loop {
        let c = Poly::random(field, m.deg(), rng);
        if !c.rem(f).is_zero() {
            return c;
        }
    }
}

fn pole_order(a: &RatFunc, place: &Place) -> i64 {
    match valuation(a, place) {
        Valuation::Finite(v) if v < 0 => -v,
        _ => 0,
    }
}

/// Congruence condition on a common value at a finite pole of `a2` or `a4`.
/// Returns `None` when the two forms have no common value at `f`.
pub fn common_value_pole<R: RngCore + ?Sized>(
    a1: &RatFunc,
    a2: &RatFunc,
    a3: &RatFunc,
    a4: &RatFunc,
    f: &Place,
    rng: &mut R,
) -> Result<Option<LocalCondition>, Error> {
    let Place::Finite(p) = f else {
        return Err(Error::Precondition("use common_value_inf at infinity"));
    };
    check_scales(a1, a3)?;
    let pole = pole_order(a2, f).max(pole_order(a4, f));
    if pole == 0 {
        return Err(Error::Precondition("place is not a pole of a2 or a4"));
    }
    if pole_order(a2, f) % 2 == 0 && pole_order(a4, f) % 2 == 0 {
        return Err(Error::Precondition("poles must have odd order"));
    }
    let a = [a1.clone(), a2.clone(), a3.clone(), a4.clone()];
    if !common_values_exist(&a, f) {
        return Ok(None);
    }
    let n = 2 * pole as u32 + 1;
    let budget = sample_budget(p.field().order(), n);
    let m = p.pow(n as u64);
    for odd in [false, true] {
        for _ in 0..budget {
            let mut c = random_unit(p, n, rng);
            if odd {
                c = (p * &c).rem(&m);
            }
            if common_at(&a, &RatFunc::from_poly(c.clone()), f) {
                return Ok(Some(LocalCondition::Congruence { place: f.clone(), residue: c, exponent: n }));
            }
        }
    }
    Err(Error::SamplingExhausted("common value at a pole"))
}

/// Required parity of `v_f(c)` at a place where `v_f(a1·a3)` is odd and
/// both parameters are regular; `None` when the quaternary form is
/// anisotropic there.
pub fn common_value_odd(
    a1: &RatFunc,
    a2: &RatFunc,
    a3: &RatFunc,
    a4: &RatFunc,
    f: &Place,
) -> Result<Option<u8>, Error> {
    if !quaternary_isotropic_odd_place(a1, a2, a3, a4, f)? {
        return Ok(None);
    }
    Ok(unramified_parity(a1, a2, a3, a4, f)?)
}

/// With both extensions unramified at `f`, `c` is represented by
/// `a·N(param)` iff the symbol of `param` is 0 or `v(c) ≡ v(a)`.
fn unramified_parity(
    a1: &RatFunc,
    a2: &RatFunc,
    a3: &RatFunc,
    a4: &RatFunc,
    f: &Place,
) -> Result<Option<u8>, Error> {
    let s2 = symbol(a2, f)?;
    let s4 = symbol(a4, f)?;
    let v1 = val(a1, f).rem_euclid(2) as u8;
    let v3 = val(a3, f).rem_euclid(2) as u8;
    Ok([0u8, 1].into_iter().find(|&e| (s2 == 0 || e == v1) && (s4 == 0 || e == v3)))
}

/// A polynomial of degree parity `e` whose top coefficients, read
/// downwards, are the coefficients of `u`.
fn from_top(u: &Poly, n: u32, e: u8) -> Poly {
    let mut d = n as usize - 1;
    if d % 2 != e as usize {
        d += 1;
    }
    u.reverse(n as usize - 1).shift(d + 1 - n as usize)
}

/// Condition on a common value at the infinite place, obtained by working
/// at `1/t`. `None` when no common value exists there.
pub fn common_value_inf<R: RngCore + ?Sized>(
    a1: &RatFunc,
    a2: &RatFunc,
    a3: &RatFunc,
    a4: &RatFunc,
    rng: &mut R,
) -> Result<Option<LocalCondition>, Error> {
    check_scales(a1, a3)?;
    let inf = Place::Infinite;
    let field = a1.field();
    let (m2, _) = crate::artin_schreier::minimize_at(a2, &inf);
    let (m4, _) = crate::artin_schreier::minimize_at(a4, &inf);
    let pole = pole_order(&m2, &inf).max(pole_order(&m4, &inf));
    if pole == 0 {
        let parity = unramified_parity(a1, &m2, a3, &m4, &inf)?;
        let Some(e) = parity else { return Ok(None) };
        let s2 = symbol(&m2, &inf)?;
        let s4 = symbol(&m4, &inf)?;
        let free = s2 == 0 && s4 == 0;
        // v_inf(c) = -deg c, so the parity of deg c is the parity of v_inf(c).
        return Ok(Some(LocalCondition::InfiniteCondition {
            residue: Poly::zero(field),
            precision: 0,
            parity: (!free).then_some(e),
        }));
    }
    let a = [a1.clone(), m2, a3.clone(), m4];
    if !common_values_exist(&a, &inf) {
        return Ok(None);
    }
    let n = 2 * pole as u32 + 1;
    let budget = sample_budget(field.order(), n);
    let z = Poly::t(field);
    for e in [0u8, 1] {
        for _ in 0..budget {
            let mut u = random_unit(&z, n, rng);
            u = u.scale(u.coeff(0).inverse().unwrap());
            let c = from_top(&u, n, e);
            if common_at(&a, &RatFunc::from_poly(c), &inf) {
                return Ok(Some(LocalCondition::InfiniteCondition {
                    residue: u,
                    precision: n,
                    parity: Some(e),
                }));
            }
        }
    }
    Err(Error::SamplingExhausted("common value at infinity"))
}
