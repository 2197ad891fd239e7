//! Nontrivial zeros of regular quaternary quadratic forms over GF(2^k)(t).
//!
//! A form is brought to `a1·(x1² + x1x2 + a2·x2²) + a3·(x3² + x3x4 + a4·x4²)`
//! by a symplectic basis of its polar form, normalized so that `a1, a3` are
//! coprime square-free polynomials and `a2, a4` are minimal, and then split
//! into two binary norm equations sharing a right-hand side `c`. The common
//! value `c = F·h` is assembled from local conditions, with `h` an
//! irreducible polynomial found by sampling a residue class.

use alloc::vec::Vec;
use core::array;

use rand::RngCore;

use crate::artin_schreier::{minimize_param, norm_pairing, splits_locally, wp_solve_rational};
use crate::binary_norm::{solve_binary, NormEquation};
use crate::error::Error;
use crate::factor::factor;
use crate::irreducible::{find_irreducible_in_class, IrreducibleSearchSpec};
use crate::local::{common_value_inf, common_value_odd, common_value_pole, locally_isotropic, LocalCondition};
use crate::place::{crt, places_dividing, poly_valuation, valuation, Place, Valuation};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::gf::FieldSpec;

pub type Vector4 = [RatFunc; 4];
/// Column-major action: `T·v = Σ v[j]·T[j]`, i.e. `T[j]` is the `j`-th column.
pub type Matrix4 = [Vector4; 4];

/// `Q(x) = Σ_{i ≤ j} gram[i][j]·x_i·x_j`. Entries below the diagonal are
/// folded into the upper triangle on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternaryForm {
    gram: [[RatFunc; 4]; 4],
}

impl QuaternaryForm {
    pub fn new(gram: [[RatFunc; 4]; 4]) -> Result<Self, Error> {
        let field = gram[0][0].field();
        if gram.iter().flatten().any(|g| g.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let mut upper: [[RatFunc; 4]; 4] = array::from_fn(|_| array::from_fn(|_| RatFunc::zero(field)));
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                upper[a][b] = &upper[a][b] + &gram[i][j];
            }
        }
        Ok(Self { gram: upper })
    }

    /// `a1·(x1² + x1x2 + a2·x2²) + a3·(x3² + x3x4 + a4·x4²)`.
    pub fn from_coefficients(a: &[RatFunc; 4]) -> Result<Self, Error> {
        let field = a[0].field();
        let z = || RatFunc::zero(field);
        let mut g: [[RatFunc; 4]; 4] = array::from_fn(|_| array::from_fn(|_| z()));
        g[0][0] = a[0].clone();
        g[0][1] = a[0].clone();
        g[1][1] = &a[0] * &a[1];
        g[2][2] = a[2].clone();
        g[2][3] = a[2].clone();
        g[3][3] = &a[2] * &a[3];
        Self::new(g)
    }

    pub fn gram(&self) -> &[[RatFunc; 4]; 4] {
        &self.gram
    }

    pub fn field(&self) -> FieldSpec {
        self.gram[0][0].field()
    }

    pub fn eval(&self, v: &Vector4) -> RatFunc {
        let mut acc = RatFunc::zero(self.field());
        for i in 0..4 {
            for j in i..4 {
                if !self.gram[i][j].is_zero() {
                    acc = &acc + &(&self.gram[i][j] * &(&v[i] * &v[j]));
                }
            }
        }
        acc
    }

    /// Polar form `b(u, v) = Q(u + v) − Q(u) − Q(v)`.
    pub fn polar(&self, u: &Vector4, v: &Vector4) -> RatFunc {
        let mut acc = RatFunc::zero(self.field());
        for i in 0..4 {
            for j in i + 1..4 {
                if !self.gram[i][j].is_zero() {
                    let cross = &(&u[i] * &v[j]) + &(&u[j] * &v[i]);
                    acc = &acc + &(&self.gram[i][j] * &cross);
                }
            }
        }
        acc
    }

    fn polar_matrix(&self) -> [[RatFunc; 4]; 4] {
        array::from_fn(|i| {
            array::from_fn(|j| match i.cmp(&j) {
                core::cmp::Ordering::Less => self.gram[i][j].clone(),
                core::cmp::Ordering::Greater => self.gram[j][i].clone(),
                core::cmp::Ordering::Equal => RatFunc::zero(self.field()),
            })
        })
    }
}

/// `Q(transform·v) = Q_canonical(v)` for the form with `coefficients`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub coefficients: [RatFunc; 4],
    pub transform: Matrix4,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Canonical {
    Reduced(CanonicalForm),
    /// A nonzero vector with `Q = 0` met while building the basis.
    EarlyZero(Vector4),
    /// The polar form is degenerate; `radical` is a basis of its kernel.
    Degenerate { radical: Vec<Vector4> },
}

fn unit(field: FieldSpec, i: usize) -> Vector4 {
    array::from_fn(|j| if i == j { RatFunc::one(field) } else { RatFunc::zero(field) })
}

fn axpy(a: &RatFunc, x: &Vector4, y: &Vector4) -> Vector4 {
    array::from_fn(|i| &(a * &x[i]) + &y[i])
}

fn scale(a: &RatFunc, x: &Vector4) -> Vector4 {
    array::from_fn(|i| a * &x[i])
}

pub fn apply(t: &Matrix4, v: &Vector4) -> Vector4 {
    let field = v[0].field();
    let mut out: Vector4 = array::from_fn(|_| RatFunc::zero(field));
    for (col, coeff) in t.iter().zip(v) {
        if !coeff.is_zero() {
            out = axpy(coeff, col, &out);
        }
    }
    out
}

fn compose(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    array::from_fn(|j| apply(a, &b[j]))
}

pub fn is_zero_vector(v: &Vector4) -> bool {
    v.iter().all(RatFunc::is_zero)
}

/// Symplectic basis `(u, w, u', w')` with `b(u, w) = b(u', w') = 1`,
/// rescaled to the canonical shape.
pub fn canonicalize(form: &QuaternaryForm) -> Canonical {
    let field = form.field();
    let basis: [Vector4; 4] = array::from_fn(|i| unit(field, i));
    if let Some(e) = basis.iter().find(|e| form.eval(e).is_zero()) {
        return Canonical::EarlyZero(e.clone());
    }
    let Some((i, j)) = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .find(|&(i, j)| !form.gram[i][j].is_zero())
    else {
        return Canonical::Degenerate { radical: basis.to_vec() };
    };
    let u = basis[i].clone();
    let w = scale(&form.polar(&u, &basis[j]).inverse().unwrap(), &basis[j]);
    let rest: Vec<Vector4> = (0..4)
        .filter(|&k| k != i && k != j)
        .map(|k| {
            let v = &basis[k];
            let v = axpy(&form.polar(v, &w), &u, v);
            axpy(&form.polar(&basis[k], &u), &w, &v)
        })
        .collect();
    let (p, r) = (&rest[0], &rest[1]);
    let beta = form.polar(p, r);
    if beta.is_zero() {
        return Canonical::Degenerate { radical: radical(form) };
    }
    let w2 = scale(&beta.inverse().unwrap(), r);
    for v in [&w, p, &w2] {
        if form.eval(v).is_zero() {
            return Canonical::EarlyZero(v.clone());
        }
    }
    let a1 = form.eval(&u);
    let a3 = form.eval(p);
    let coefficients = [a1.clone(), &a1 * &form.eval(&w), a3.clone(), &a3 * &form.eval(&w2)];
    let transform = [u, scale(&a1, &w), p.clone(), scale(&a3, &w2)];
    Canonical::Reduced(CanonicalForm { coefficients, transform })
}

/// Kernel basis of the polar matrix.
fn radical(form: &QuaternaryForm) -> Vec<Vector4> {
    let b = form.polar_matrix();
    kernel(&b.iter().map(|row| row.to_vec()).collect::<Vec<_>>(), 4, form.field())
        .into_iter()
        .map(|v| array::from_fn(|i| v[i].clone()))
        .collect()
}

/// Kernel of a `rows × n` matrix over the rational function field.
fn kernel(rows: &[Vec<RatFunc>], n: usize, field: FieldSpec) -> Vec<Vec<RatFunc>> {
    let mut m: Vec<Vec<RatFunc>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse().unwrap();
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                m[i] = m[i].iter().zip(&m[r]).map(|(x, y)| x + &(&f * y)).collect();
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v: Vec<RatFunc> = (0..n).map(|_| RatFunc::zero(field)).collect();
            v[free] = RatFunc::one(field);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = m[row][free].clone();
            }
            v
        })
        .collect()
}

/// `x = e² + t·o²`, using that GF(2^k)(t) has basis `1, t` over its squares.
pub fn square_decomposition(x: &RatFunc) -> (RatFunc, RatFunc) {
    let field = x.field();
    let p = x.num() * x.den();
    let part = |odd: usize| {
        let c: Vec<u64> = p.coeffs().iter().skip(odd).step_by(2).flat_map(|&c| [c, 0]).collect();
        RatFunc::new(Poly::from_coeffs(field, c).sqrt().expect("even part is a square"), x.den().clone())
    };
    (part(0), part(1))
}

/// A nonzero zero of a form whose polar form is degenerate. On the radical
/// `Q(Σ x_i r_i) = (Σ p_i x_i)² + t·(Σ q_i x_i)²` with `Q(r_i) = p_i² + t·q_i²`,
/// so a zero exists there unless that linear map is injective; in that case
/// any `u` outside the radical is corrected by a radical vector of value `Q(u)`.
pub fn degenerate_zero(form: &QuaternaryForm, radical: &[Vector4]) -> Result<Vector4, Error> {
    let field = form.field();
    if radical.is_empty() {
        return Err(Error::Precondition("form is regular"));
    }
    let parts: Vec<(RatFunc, RatFunc)> = radical.iter().map(|r| square_decomposition(&form.eval(r))).collect();
    let rows = [parts.iter().map(|p| p.0.clone()).collect(), parts.iter().map(|p| p.1.clone()).collect()];
    let d = radical.len();
    let combine = |xs: &[RatFunc]| {
        let mut v: Vector4 = array::from_fn(|_| RatFunc::zero(field));
        for (x, r) in xs.iter().zip(radical) {
            v = axpy(x, r, &v);
        }
        v
    };
    if let Some(x) = kernel(&rows, d, field).into_iter().next() {
        return check_zero(form, combine(&x));
    }
    if d != 2 {
        return Err(Error::Internal("injective square map on a radical of dimension > 2"));
    }
    let u = (0..4)
        .map(|i| unit(field, i))
        .find(|e| !in_span(e, radical, field))
        .ok_or(Error::Internal("radical spans everything"))?;
    let gamma = form.eval(&u);
    if gamma.is_zero() {
        return Ok(u);
    }
    let (g0, g1) = square_decomposition(&gamma);
    // solve [p1 p2; q1 q2]·x = (g0, g1)
    let (p1, p2, q1, q2) = (&parts[0].0, &parts[1].0, &parts[0].1, &parts[1].1);
    let det = &(p1 * q2) + &(p2 * q1);
    let inv = det.inverse().ok_or(Error::Internal("singular square map"))?;
    let x1 = &(&(q2 * &g0) + &(p2 * &g1)) * &inv;
    let x2 = &(&(q1 * &g0) + &(p1 * &g1)) * &inv;
    let v = combine(&[x1, x2]);
    check_zero(form, array::from_fn(|i| &u[i] + &v[i]))
}

fn in_span(e: &Vector4, basis: &[Vector4], field: FieldSpec) -> bool {
    let rows: Vec<Vec<RatFunc>> =
        (0..4).map(|i| basis.iter().map(|b| b[i].clone()).chain([e[i].clone()]).collect()).collect();
    kernel(&rows, basis.len() + 1, field).iter().any(|k| !k[basis.len()].is_zero())
}

fn check_zero(form: &QuaternaryForm, v: Vector4) -> Result<Vector4, Error> {
    if is_zero_vector(&v) || !form.eval(&v).is_zero() {
        return Err(Error::Internal("candidate zero failed verification"));
    }
    Ok(v)
}

/// `Q_canonical(transform·v) = scale · Q_normalized(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedForm {
    pub coefficients: [RatFunc; 4],
    pub transform: Matrix4,
    pub scale: RatFunc,
}

/// Makes `a1, a3` coprime monic square-free polynomials and `a2, a4` minimal.
pub fn normalize_coefficients(a: &[RatFunc; 4]) -> Result<NormalizedForm, Error> {
    if a[0].is_zero() || a[2].is_zero() {
        return Err(Error::Precondition("scales must be nonzero"));
    }
    let field = a[0].field();
    let mut coefficients = a.clone();
    let mut transform: Matrix4 = array::from_fn(|i| unit(field, i));
    for block in [0, 2] {
        let (s, sq) = square_free_part(&a[block]);
        let (param, h) = minimize_param(&a[block + 1]);
        let inv = sq.inverse().unwrap();
        // (X, Y) ↦ ((X + h·Y)/sq, Y/sq)
        transform[block] = scale(&inv, &unit(field, block));
        transform[block + 1] = array::from_fn(|i| {
            if i == block {
                &h * &inv
            } else if i == block + 1 {
                inv.clone()
            } else {
                RatFunc::zero(field)
            }
        });
        coefficients[block] = RatFunc::from_poly(s);
        coefficients[block + 1] = param;
    }
    let g = coefficients[0].num().gcd(coefficients[2].num());
    for block in [0, 2] {
        coefficients[block] = RatFunc::from_poly(coefficients[block].num().div_exact(&g));
    }
    Ok(NormalizedForm { coefficients, transform, scale: RatFunc::from_poly(g) })
}

/// `a = s·d²` with `s` a monic square-free polynomial.
fn square_free_part(a: &RatFunc) -> (Poly, RatFunc) {
    let field = a.field();
    let p = a.num() * a.den();
    let lc = p.leading_coeff();
    let mut s = Poly::one(field);
    let mut d = Poly::constant(lc.sqrt());
    for (f, e) in factor(&p).expect("nonzero") {
        if e % 2 == 1 {
            s = &s * &f;
        }
        d = &d * &f.pow(e as u64 / 2);
    }
    (s, RatFunc::new(d, a.den().clone()))
}

/// Local obstruction: at `place`, `K_{a2} = K_{a4}` is a field and
/// `[a2, a1/a3)_place = 1`, so `a1·N(a2) ⊥ a3·N(a4)` is anisotropic there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnisotropyCertificate {
    pub place: Place,
    /// The normalized coefficients `(a1, a2, a3, a4)` the certificate refers to.
    pub coefficients: [RatFunc; 4],
}

impl AnisotropyCertificate {
    /// Recomputes both local symbols.
    pub fn verify(&self) -> bool {
        let a = &self.coefficients;
        let sum = &a[1] + &a[3];
        !splits_locally(&a[1], &self.place)
            && splits_locally(&sum, &self.place)
            && norm_pairing(&a[1], &(&a[0] / &a[2]), &self.place) == 1
    }
}

/// Places where local isotropy can fail: zeros of `a1·a3`, poles of `a2, a4`,
/// and infinity.
pub fn bad_places(a: &[RatFunc; 4]) -> Vec<Place> {
    let prod = &(&(a[0].num() * a[0].den()) * &(a[2].num() * a[2].den())) * &(a[1].den() * a[3].den());
    let mut places = places_dividing(&prod);
    places.push(Place::Infinite);
    places
}

/// First place where the form is locally anisotropic, if any.
pub fn local_obstruction(a: &[RatFunc; 4]) -> Option<AnisotropyCertificate> {
    bad_places(a)
        .into_iter()
        .find(|p| !locally_isotropic(a, p))
        .map(|place| AnisotropyCertificate { place, coefficients: a.clone() })
}

/// A common value `c = F·h` of `a1·N(a2)` and `a3·N(a4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonValue {
    pub c: Poly,
    /// Product of the places where `v(c)` is forced odd.
    pub forced: Poly,
    /// Monic irreducible outside the bad places.
    pub h: Poly,
    pub conditions: Vec<LocalCondition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonValueOutcome {
    Found(CommonValue),
    Anisotropic(AnisotropyCertificate),
}

/// Local conditions at every bad place, or a certificate of anisotropy.
pub fn local_conditions<R: RngCore + ?Sized>(
    a: &[RatFunc; 4],
    rng: &mut R,
) -> Result<Result<Vec<LocalCondition>, AnisotropyCertificate>, Error> {
    if let Some(cert) = local_obstruction(a) {
        return Ok(Err(cert));
    }
    let [a1, a2, a3, a4] = a;
    let mut conditions = Vec::new();
    for place in bad_places(a) {
        let cond = match &place {
            Place::Infinite => common_value_inf(a1, a2, a3, a4, rng)?,
            Place::Finite(_) if valuation(a2, &place) < Valuation::Finite(0) || valuation(a4, &place) < Valuation::Finite(0) => {
                common_value_pole(a1, a2, a3, a4, &place, rng)?
            }
            Place::Finite(_) => common_value_odd(a1, a2, a3, a4, &place)?
                .map(|parity| LocalCondition::ValuationParity { place: place.clone(), parity }),
        };
        let Some(cond) = cond else {
            return Err(Error::Internal("local condition missing at an isotropic place"));
        };
        conditions.push(cond);
    }
    Ok(Ok(conditions))
}

/// Finds a common value for normalized coefficients, or an anisotropy
/// certificate. The irreducible part is searched from the smallest
/// admissible degree upwards.
pub fn find_common_value<R: RngCore + ?Sized>(
    a: &[RatFunc; 4],
    rng: &mut R,
) -> Result<CommonValueOutcome, Error> {
    let conditions = match local_conditions(a, rng)? {
        Ok(c) => c,
        Err(cert) => return Ok(CommonValueOutcome::Anisotropic(cert)),
    };
    let field = a[0].field();
    let mut forced = Poly::one(field);
    for cond in &conditions {
        if cond.forces_odd() {
            forced = &forced * cond.place().poly().unwrap();
        }
    }
    let mut pairs = Vec::new();
    let mut parity = None;
    let mut top = Poly::zero(field);
    let mut top_len = 0;
    for cond in &conditions {
        match cond {
            LocalCondition::Congruence { place, residue, exponent } => {
                let f = place.poly().unwrap();
                let v = poly_valuation(&forced, f);
                let m = f.pow((*exponent - v) as u64);
                let fv = f.pow(v as u64);
                let rest = forced.div_exact(&fv);
                let target = residue.div_exact(&fv);
                let inv = rest.inv_mod(&m).ok_or(Error::Internal("forced part not a unit"))?;
                pairs.push((target.mul_mod(&inv, &m), m));
            }
            LocalCondition::InfiniteCondition { residue, precision, parity: p } => {
                parity = p.map(|e| (e + forced.deg() as u8) % 2);
                if *precision > 0 {
                    let n = *precision as usize;
                    let z_n = Poly::monomial(field.one(), n);
                    let rf = forced.reverse(forced.deg()).truncate(n);
                    let inv = rf.inv_mod(&z_n).ok_or(Error::Internal("reversed forced part"))?;
                    top = residue.mul_mod(&inv, &z_n);
                    top_len = *precision;
                }
            }
            LocalCondition::ValuationParity { .. } => {}
        }
    }
    let (residue, modulus) = if pairs.is_empty() {
        (Poly::zero(field), Poly::one(field))
    } else {
        let modulus = pairs.iter().fold(Poly::one(field), |acc, (_, m)| &acc * m);
        (crt(&pairs)?, modulus)
    };
    let avoid: Poly = bad_places(a).iter().filter_map(|p| p.poly().cloned()).fold(Poly::one(field), |acc, p| &acc * &p);
    let mut spec = IrreducibleSearchSpec {
        residue,
        modulus,
        parity,
        top,
        top_len,
        min_degree: 1,
        start_degree: Some(1),
    };
    for attempt in 1..=64 {
        let h = find_irreducible_in_class(&spec, rng)?;
        if h.divides(&avoid) {
            if attempt % 8 == 0 {
                spec.start_degree = Some(h.deg() + 1);
            }
            continue;
        }
        let c = &forced * &h;
        if !conditions.iter().all(|cond| cond.is_satisfied_by(&c)) {
            return Err(Error::Internal("assembled common value misses a local condition"));
        }
        return Ok(CommonValueOutcome::Found(CommonValue { c, forced, h, conditions }));
    }
    Err(Error::SamplingExhausted("irreducible avoiding the bad places"))
}

/// Limits for `solve_quaternary`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Largest height of `y` tried in each binary norm equation.
    pub degree_budget: usize,
    /// Number of common values tried before giving up.
    pub attempts: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { degree_budget: 10, attempts: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuaternaryOutcome {
    /// A verified nonzero vector with `Q = 0`, and the common value used (if any).
    Isotropic { zero: Vector4, common_value: Option<CommonValue> },
    Anisotropic(AnisotropyCertificate),
}

/// The isotropy verdict from local conditions only (no zero is produced).
pub fn is_isotropic(form: &QuaternaryForm) -> Result<Result<(), AnisotropyCertificate>, Error> {
    match canonicalize(form) {
        Canonical::EarlyZero(_) | Canonical::Degenerate { .. } => Ok(Ok(())),
        Canonical::Reduced(cf) => {
            let nf = normalize_coefficients(&cf.coefficients)?;
            Ok(match local_obstruction(&nf.coefficients) {
                Some(cert) => Err(cert),
                None => Ok(()),
            })
        }
    }
}

/// A nonzero zero of `form`, or a local certificate that none exists.
pub fn solve_quaternary<R: RngCore + ?Sized>(
    form: &QuaternaryForm,
    rng: &mut R,
    options: SolveOptions,
) -> Result<QuaternaryOutcome, Error> {
    let cf = match canonicalize(form) {
        Canonical::EarlyZero(v) => return isotropic(form, v, None),
        Canonical::Degenerate { radical } => return isotropic(form, degenerate_zero(form, &radical)?, None),
        Canonical::Reduced(cf) => cf,
    };
    let nf = normalize_coefficients(&cf.coefficients)?;
    let to_original = compose(&cf.transform, &nf.transform);
    let a = &nf.coefficients;
    let field = form.field();
    let zero = || RatFunc::zero(field);
    let one = || RatFunc::one(field);
    for block in [0, 2] {
        if let Some(h) = wp_solve_rational(&a[block + 1]) {
            let mut v: Vector4 = array::from_fn(|_| zero());
            v[block] = h;
            v[block + 1] = one();
            return isotropic(form, apply(&to_original, &v), None);
        }
    }
    if a[0] == a[2] && a[1] == a[3] {
        return isotropic(form, apply(&to_original, &[one(), zero(), one(), zero()]), None);
    }
    let mut last = Error::BudgetExhausted;
    for _ in 0..options.attempts.max(1) {
        let cv = match find_common_value(a, rng)? {
            CommonValueOutcome::Anisotropic(cert) => return Ok(QuaternaryOutcome::Anisotropic(cert)),
            CommonValueOutcome::Found(cv) => cv,
        };
        let c = RatFunc::from_poly(cv.c.clone());
        let solved = NormEquation::new(a[0].clone(), a[1].clone(), c.clone())
            .and_then(|eq| solve_binary(&eq, rng, options.degree_budget))
            .and_then(|(x1, x2)| {
                let eq = NormEquation::new(a[2].clone(), a[3].clone(), c.clone())?;
                let (x3, x4) = solve_binary(&eq, rng, options.degree_budget)?;
                Ok([x1, x2, x3, x4])
            });
        match solved {
            Ok(v) => return isotropic(form, apply(&to_original, &v), Some(cv)),
            Err(Error::BudgetExhausted) => last = Error::BudgetExhausted,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn isotropic(form: &QuaternaryForm, v: Vector4, common_value: Option<CommonValue>) -> Result<QuaternaryOutcome, Error> {
    Ok(QuaternaryOutcome::Isotropic { zero: check_zero(form, v)?, common_value })
}
