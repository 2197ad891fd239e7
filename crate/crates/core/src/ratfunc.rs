//! The rational function field GF(2^k)(t), kept in lowest terms with a
//! monic denominator so that equality is structural.

use core::fmt;
use core::ops::{Add, Div, Mul, Sub};

use crate::gf::{FieldElement, FieldSpec};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// `num / den` in lowest terms. Panics if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero(num.field());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) =
            if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let lc = den.leading_coeff();
        if lc.bits() != 1 {
            let inv = lc.inverse().unwrap();
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Self { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let field = p.field();
        Self { num: p, den: Poly::one(field) }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::from_poly(Poly::one(field))
    }

    pub fn t(field: FieldSpec) -> Self {
        Self::from_poly(Poly::t(field))
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant value, when `self` lies in GF(2^k).
    pub fn as_constant(&self) -> Option<FieldElement> {
        (self.num.is_constant() && self.den.is_one()).then(|| self.num.coeff(0))
    }

    /// `deg num − deg den`; `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.num.deg() as i64 - self.den.deg() as i64)
    }

    pub fn inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn square(&self) -> Self {
        Self { num: self.num.square(), den: self.den.square() }
    }

    /// Square root, when `self` is a square in GF(2^k)(t).
    pub fn sqrt(&self) -> Option<Self> {
        Some(Self { num: self.num.sqrt()?, den: self.den.sqrt()? })
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse().expect("negative power of zero") } else { self.clone() };
        let e = e.unsigned_abs();
        Self { num: base.num.pow(e), den: base.den.pow(e) }
    }

    /// Image under the automorphism `t ↦ 1/t`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let n = self.num.deg();
        let d = self.den.deg();
        let m = n.max(d);
        // num(1/t)/den(1/t) = (t^m num(1/t)) / (t^m den(1/t))
        Self::new(self.num.reverse(m), self.den.reverse(m))
    }

    /// `t^e` for any integer `e`.
    pub fn t_pow(field: FieldSpec, e: i64) -> Self {
        let one = field.one();
        if e >= 0 {
            Self::from_poly(Poly::monomial(one, e as usize))
        } else {
            Self::new(Poly::one(field), Poly::monomial(one, e.unsigned_abs() as usize))
        }
    }

    /// Ratio of leading coefficients.
    pub fn leading_coeff(&self) -> FieldElement {
        self.num.leading_coeff()
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return RatFunc::new(num, &self.den * &rhs.den);
        }
        let a = self.den.div_exact(&g);
        let b = rhs.den.div_exact(&g);
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFunc::new(num, &(&a * &b) * &g)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + rhs
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.field());
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        RatFunc::new(num, den)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self * &rhs.inverse().expect("division by zero rational function")
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let single = |p: &Poly| p.coeffs().iter().filter(|&&c| c != 0).count() == 1;
        let (n, d) = (&self.num, &self.den);
        let (ns, ds) = (single(n), single(d));
        match (ns, ds) {
            (true, true) => write!(f, "{n}/{d}"),
            (true, false) => write!(f, "{n}/({d})"),
            (false, true) => write!(f, "({n})/{d}"),
            (false, false) => write!(f, "({n})/({d})"),
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Shorthand used throughout: polynomial over GF(2) from a bit mask.
pub fn gf2_poly(mask: u128) -> Poly {
    Poly::from_bits(FieldSpec::binary(), mask)
}
