//! Elements of the differential field `Q(z, t_i^(j))`, kept as reduced
//! quotients of polynomials.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{univariate_gcd, Poly, Var};
use super::Scalar;
use crate::error::{Error, Result};

/// `num / den` with `den` nonzero and monic in the leading term.
///
/// Normalization cancels common monomial factors, and common polynomial
/// factors whenever only one variable occurs. Equality is decided by
/// cross-multiplication so it is exact regardless of how far a quotient
/// was reduced.
#[derive(Clone, Debug)]
pub struct FieldElem {
    num: Poly,
    den: Poly,
}

impl FieldElem {
    pub fn zero() -> FieldElem {
        FieldElem {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> FieldElem {
        FieldElem::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> FieldElem {
        FieldElem {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> FieldElem {
        FieldElem::from_poly(Poly::from_int(n))
    }

    pub fn from_scalar(c: Scalar) -> FieldElem {
        FieldElem::from_poly(Poly::constant(c))
    }

    pub fn z() -> FieldElem {
        FieldElem::from_poly(Poly::z())
    }

    pub fn t(index: u32) -> FieldElem {
        FieldElem::from_poly(Poly::t(index))
    }

    pub fn var(v: Var) -> FieldElem {
        FieldElem::from_poly(Poly::var(v))
    }

    pub fn new(num: Poly, den: Poly) -> Result<FieldElem> {
        if den.is_zero() {
            return Err(Error::DegenerateInput("division by zero".into()));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: Poly, mut den: Poly) -> FieldElem {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return FieldElem::zero();
        }
        if let Some(c) = den.as_constant() {
            return FieldElem::from_poly(num.scale(&c.recip()));
        }
        let g = num.monomial_content().gcd(&den.monomial_content());
        if !g.is_one() {
            num = num.div_monomial(&g).expect("monomial content divides");
            den = den.div_monomial(&g).expect("monomial content divides");
        }
        if let Some(p) = num.div_exact(&den) {
            return FieldElem::from_poly(p);
        }
        let vars: Vec<Var> = num.vars().union(&den.vars()).copied().collect();
        if vars.len() == 1 {
            let v = vars[0];
            let a = num.to_univariate(v).expect("single variable");
            let b = den.to_univariate(v).expect("single variable");
            let g = univariate_gcd(&a, &b);
            if g.len() > 1 {
                let gp = Poly::from_univariate(v, &g);
                num = num.div_exact(&gp).expect("gcd divides numerator");
                den = den.div_exact(&gp).expect("gcd divides denominator");
            }
        }
        let lc = den
            .leading_term()
            .map(|(_, c)| c.clone())
            .expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        if let Some(c) = den.as_constant() {
            return FieldElem::from_poly(num.scale(&c.recip()));
        }
        FieldElem { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_polynomial() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        if self.is_zero() || other.is_zero() {
            return FieldElem::zero();
        }
        if self.is_polynomial() && other.is_polynomial() {
            return FieldElem::from_poly(self.num.mul(&other.num));
        }
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Scalar) -> FieldElem {
        if c.is_zero() {
            return FieldElem::zero();
        }
        FieldElem {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DegenerateInput("inverse of zero".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<FieldElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = FieldElem::one();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Quotient rule: `(n/d)' = (n' d - n d') / d^2`.
    pub fn derive(&self) -> FieldElem {
        if self.is_polynomial() {
            return FieldElem::from_poly(self.num.derive());
        }
        Self::normalized(
            self.num
                .derive()
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.derive())),
            self.den.mul(&self.den),
        )
    }

    pub fn derive_n(&self, n: u32) -> FieldElem {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.derive();
        }
        out
    }

    pub fn scale_parameter(&self, index: u32, factor: &Scalar) -> FieldElem {
        Self::normalized(
            self.num.scale_parameter(index, factor),
            self.den.scale_parameter(index, factor),
        )
    }

    /// Evaluate at a rational point for elements in `z` alone.
    pub fn eval_z(&self, value: &Scalar) -> Option<Scalar> {
        let n = self.num.eval_z(value)?;
        let d = self.den.eval_z(value)?;
        if d.is_zero() {
            None
        } else {
            Some(n / d)
        }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for FieldElem {}

impl From<Poly> for FieldElem {
    fn from(p: Poly) -> Self {
        FieldElem::from_poly(p)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        FieldElem::from_int(n)
    }
}

impl From<BigRational> for FieldElem {
    fn from(c: BigRational) -> Self {
        FieldElem::from_scalar(c)
    }
}

fn needs_parens_num(p: &Poly) -> bool {
    p.num_terms() > 1
}

fn needs_parens_den(p: &Poly) -> bool {
    if p.num_terms() != 1 {
        return true;
    }
    let (m, c) = p.leading_term().expect("one term");
    !(c.is_one() && m.pairs().len() == 1)
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        if needs_parens_num(&self.num) {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if needs_parens_den(&self.den) {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}
