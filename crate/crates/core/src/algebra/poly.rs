//! Sparse multivariate polynomials with rational coefficients over the
//! variables `z` and the differential indeterminates `t_i^(j)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Scalar;

/// A polynomial variable.
///
/// The derived order is the canonical variable order:
/// `z < t1 < t1' < t1'' < ... < t2 < t2' < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Z,
    /// `t_index` differentiated `order` times. Indices start at 1.
    T { index: u32, order: u32 },
}

impl Var {
    pub fn t(index: u32) -> Var {
        Var::T { index, order: 0 }
    }

    pub fn t_deriv(index: u32, order: u32) -> Var {
        Var::T { index, order }
    }

    /// Image of the variable under the derivation.
    ///
    /// `z` goes to 1 (returned as `None`), `t_i^(j)` goes to `t_i^(j+1)`.
    fn derived(self) -> Option<Var> {
        match self {
            Var::Z => None,
            Var::T { index, order } => Some(Var::T {
                index,
                order: order + 1,
            }),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z => write!(f, "z"),
            Var::T { index, order } => {
                write!(f, "t{}", index)?;
                for _ in 0..*order {
                    write!(f, "'")?;
                }
                Ok(())
            }
        }
    }
}

/// A power product of variables, stored sparsely as `(var, exponent)`
/// pairs sorted by variable with strictly positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map_or(0, |&(_, e)| e)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            match a.cmp(&b) {
                Ordering::Less => {
                    out.push((a, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            let mut e = e;
            if j < other.0.len() && other.0[j].0 == v {
                if other.0[j].1 > e {
                    return None;
                }
                e -= other.0[j].1;
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if e > 0 {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let f = other.exponent(v);
                    (f > 0).then(|| (v, e.min(f)))
                })
                .collect(),
        )
    }
}

/// Graded lexicographic: total degree first, then exponents compared from
/// the largest variable downwards.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let mut a = self.0.iter().rev();
            let mut b = other.0.iter().rev();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va != vb {
                            return va.cmp(&vb);
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

/// A polynomial with rational coefficients. Zero coefficients are never
/// stored, so the zero polynomial is the empty map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: Scalar) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_int(c: i64) -> Poly {
        Poly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Monomial::var(v), BigRational::one())
    }

    pub fn z() -> Poly {
        Poly::var(Var::Z)
    }

    pub fn t(index: u32) -> Poly {
        Poly::var(Var::t(index))
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.pairs().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The derivation: `d/dz` on `z`, `t_i^(j) -> t_i^(j+1)`, extended by
    /// linearity and the Leibniz rule.
    pub fn derive(&self) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (k, &(v, e)) in m.pairs().iter().enumerate() {
                let mut rest: Vec<(Var, u32)> = m.pairs().to_vec();
                if e == 1 {
                    rest.remove(k);
                } else {
                    rest[k].1 = e - 1;
                }
                let coeff = c * BigRational::from_integer(BigInt::from(e));
                let base = Monomial::from_pairs(rest);
                let term = match v.derived() {
                    None => base,
                    Some(w) => base.mul(&Monomial::var(w)),
                };
                out.add_term(term, coeff);
            }
        }
        out
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quotient = Poly::zero();
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let step = Poly::monomial(qm, qc);
            rem = rem.sub(&divisor.mul(&step));
            quotient = quotient.add(&step);
        }
        Some(quotient)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |acc, m| acc.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.div(m)?, v.clone());
        }
        Some(Poly { terms })
    }

    /// Replace every `t_index^(j)` by `factor * t_index^(j)`.
    pub fn scale_parameter(&self, index: u32, factor: &Scalar) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e: u32 = m
                .pairs()
                .iter()
                .filter(|(v, _)| matches!(v, Var::T { index: i, .. } if *i == index))
                .map(|&(_, e)| e)
                .sum();
            let mut f = BigRational::one();
            for _ in 0..e {
                f *= factor;
            }
            out.add_term(m.clone(), c * f);
        }
        out
    }

    /// Substitute `z -> value` for a polynomial in `z` alone.
    pub fn eval_z(&self, value: &Scalar) -> Option<Scalar> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.pairs() {
                if v != Var::Z {
                    return None;
                }
                for _ in 0..e {
                    term *= value;
                }
            }
            acc += term;
        }
        Some(acc)
    }

    /// Dense coefficients (ascending powers) when the polynomial involves
    /// at most the single variable `v`.
    pub fn to_univariate(&self, v: Var) -> Option<Vec<Scalar>> {
        let mut out: Vec<Scalar> = Vec::new();
        for (m, c) in &self.terms {
            let e = match m.pairs() {
                [] => 0,
                [(w, e)] if *w == v => *e as usize,
                _ => return None,
            };
            if out.len() <= e {
                out.resize(e + 1, BigRational::zero());
            }
            out[e] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(v: Var, coeffs: &[Scalar]) -> Poly {
        Poly::from_terms(coeffs.iter().enumerate().map(|(e, c)| {
            let m = if e == 0 {
                Monomial::one()
            } else {
                Monomial::from_pairs([(v, e as u32)])
            };
            (m, c.clone())
        }))
    }
}

/// Greatest common divisor of two univariate polynomials given as dense
/// ascending coefficient vectors; the result is monic (or empty for 0).
pub fn univariate_gcd(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = univariate_rem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(lc) = a.last().cloned() {
        for c in a.iter_mut() {
            *c = &*c / &lc;
        }
    }
    a
}

fn trim(mut v: Vec<Scalar>) -> Vec<Scalar> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn univariate_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let q = &r[dr] / &lb;
        for (k, bc) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = &r[idx] - &q * bc;
        }
        r.pop();
        r = trim(r);
    }
    r
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", abs, m)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn power_rule() {
        let z2 = Poly::z().pow(2);
        assert_eq!(z2.derive(), Poly::z().scale(&q(2)));
    }

    #[test]
    fn leibniz_on_t_times_z() {
        let p = Poly::t(1).mul(&Poly::z());
        let expected = Poly::var(Var::t_deriv(1, 1)).mul(&Poly::z()).add(&Poly::t(1));
        assert_eq!(p.derive(), expected);
    }

    #[test]
    fn constants_derive_to_zero() {
        let c = Poly::constant(BigRational::new(3.into(), 4.into()));
        assert!(c.derive().is_zero());
    }

    #[test]
    fn exact_division_multivariate() {
        let a = Poly::z().add(&Poly::t(1));
        let b = Poly::z().sub(&Poly::t(2).scale(&q(3)));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a));
        assert_eq!(Poly::z().div_exact(&b), None);
    }

    #[test]
    fn univariate_gcd_basic() {
        // (z-1)(z+2) and (z-1)(z-3)
        let a = vec![q(-2), q(1), q(1)];
        let b = vec![q(3), q(-4), q(1)];
        assert_eq!(univariate_gcd(&a, &b), vec![q(-1), q(1)]);
    }

    #[test]
    fn display_is_graded_descending() {
        let p = Poly::z().pow(2).sub(&Poly::one());
        assert_eq!(p.to_string(), "z^2 - 1");
        let d = Poly::t(1).mul(&Poly::z()).derive();
        assert_eq!(d.to_string(), "z*t1' + t1");
        let v = Poly::var(Var::t_deriv(2, 2)).scale(&BigRational::new((-1).into(), 2.into()));
        assert_eq!(v.to_string(), "-1/2*t2''");
    }

    #[test]
    fn parameter_scaling_hits_all_derivatives() {
        let p = Poly::t(1)
            .mul(&Poly::var(Var::t_deriv(1, 2)))
            .add(&Poly::t(2));
        let s = p.scale_parameter(1, &q(-1));
        assert_eq!(s, p);
        let s = p.scale_parameter(2, &q(-1));
        assert_eq!(
            s,
            Poly::t(1).mul(&Poly::var(Var::t_deriv(1, 2))).sub(&Poly::t(2))
        );
    }
}
