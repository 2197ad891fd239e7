use core::fmt;

use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidField(&'static str),
    FieldMismatch,
    ZeroPolynomial,
    ConstantPolynomial,
    NotIrreducible,
    /// CRT moduli with a nontrivial common factor.
    NotCoprime(Poly, Poly),
    /// The residue symbol was asked for at a pole of its argument.
    SymbolAtPole,
    /// A documented precondition of an operation does not hold.
    Precondition(&'static str),
    /// The gradient vanishes modulo the place, so Newton lifting cannot start.
    NotLiftable,
    /// The polar form of the quadratic form is degenerate.
    Degenerate,
    /// A degree-bounded search ran out of budget; this is not a disproof.
    BudgetExhausted,
    /// A randomized search that should succeed with constant density did not.
    SamplingExhausted(&'static str),
    Unsatisfiable(&'static str),
    OddPlaceCount,
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidField(why) => write!(f, "invalid field: {why}"),
            Error::FieldMismatch => f.write_str("operands live over different fields"),
            Error::ZeroPolynomial => f.write_str("zero polynomial not allowed here"),
            Error::ConstantPolynomial => f.write_str("constant polynomial not allowed here"),
            Error::NotIrreducible => f.write_str("polynomial is not irreducible"),
            Error::NotCoprime(a, b) => write!(f, "moduli {a} and {b} are not coprime"),
            Error::SymbolAtPole => f.write_str("symbol undefined at pole"),
            Error::Precondition(why) => write!(f, "precondition violated: {why}"),
            Error::NotLiftable => f.write_str("not liftable from this witness"),
            Error::Degenerate => f.write_str("quadratic form is degenerate"),
            Error::BudgetExhausted => f.write_str("no solution found within degree budget"),
            Error::SamplingExhausted(what) => write!(f, "random sampling exhausted: {what}"),
            Error::Unsatisfiable(why) => write!(f, "unsatisfiable constraints: {why}"),
            Error::OddPlaceCount => f.write_str("ramification sets must have even cardinality"),
            Error::Internal(why) => write!(f, "internal error: {why}"),
        }
    }
}

impl core::error::Error for Error {}
