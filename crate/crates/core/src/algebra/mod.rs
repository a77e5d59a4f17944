//! Exact arithmetic: rationals, polynomials, the differential field and
//! matrices over them.

pub mod field;
pub mod matrix;
pub mod parse;
pub mod poly;

use num_rational::BigRational;

pub use field::FieldElem;
pub use matrix::{bareiss_det, ff_det, Matrix};
pub use parse::parse_field_elem;
pub use poly::{Monomial, Poly, Var};

/// Exact rational scalar.
pub type Scalar = BigRational;

/// Commutative ring operations used by the generic matrix code.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(*rhs).expect("integer overflow")
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(*rhs).expect("integer overflow")
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(*rhs).expect("integer overflow")
    }
    fn neg(&self) -> Self {
        -*self
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Poly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Poly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Poly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
}

impl Ring for FieldElem {
    fn zero() -> Self {
        FieldElem::zero()
    }
    fn one() -> Self {
        FieldElem::one()
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        FieldElem::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        FieldElem::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        FieldElem::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        FieldElem::neg(self)
    }
}

/// Integer rational `n`.
pub fn q(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

/// Rational `n / d`.
pub fn qq(n: i64, d: i64) -> Scalar {
    BigRational::new(n.into(), d.into())
}

/// Lift an integer matrix into the differential field.
pub fn lift_int(m: &Matrix<i64>) -> Matrix<FieldElem> {
    m.map(|&v| FieldElem::from_int(v))
}

/// Lift a rational matrix into the differential field.
pub fn lift_rational(m: &Matrix<Scalar>) -> Matrix<FieldElem> {
    m.map(|v| FieldElem::from_scalar(v.clone()))
}
