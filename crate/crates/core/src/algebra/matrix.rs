//! Dense matrices over a commutative ring, plus fraction-free determinants
//! and exact inverses over the differential field.

use std::fmt;

use super::field::FieldElem;
use super::poly::Poly;
use super::Ring;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::UnsupportedShape("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// `n x n` matrix with a single nonzero entry.
    pub fn unit(n: usize, i: usize, j: usize, v: R) -> Self {
        let mut m = Self::zeros(n, n);
        m.set(i, j, v);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries with their positions, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        let c = self.cols;
        self.data.iter().enumerate().map(move |(k, v)| (k / c, k % c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(R::neg)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            out.set(j, i, v.clone());
        }
        out
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// `[self, other] = self*other - other*self`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Delete row `i` and column `j`.
    pub fn minor(&self, i: usize, j: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for (r, c, v) in self.entries() {
            if r != i && c != j {
                data.push(v.clone());
            }
        }
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            data,
        }
    }
}

impl Matrix<FieldElem> {
    /// Entrywise derivation.
    pub fn derive(&self) -> Self {
        self.map(FieldElem::derive)
    }

    pub fn det(&self) -> Result<FieldElem> {
        ff_det(self)
    }

    /// Exact inverse by the adjugate formula.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::UnsupportedShape(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if let Some(inv) = self.triangular_inverse() {
            return Ok(inv);
        }
        let det = self.det()?;
        if det.is_zero() {
            return Err(Error::SingularGauge("determinant is zero".into()));
        }
        let dinv = det.inv()?;
        if n == 1 {
            return Matrix::from_rows(vec![vec![dinv]]);
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = ff_det(&self.minor(i, j))?;
                let c = if (i + j) % 2 == 0 { c } else { c.neg() };
                out.set(j, i, c.mul(&dinv));
            }
        }
        Ok(out)
    }

    /// Back-substitution inverse for triangular matrices with nonzero
    /// diagonal, which covers every unipotent and diagonal gauge.
    fn triangular_inverse(&self) -> Option<Self> {
        let n = self.rows;
        let lower = self.entries().all(|(i, j, v)| j <= i || v.is_zero());
        let upper = self.entries().all(|(i, j, v)| j >= i || v.is_zero());
        if !lower && !upper {
            return None;
        }
        let m = if lower { self.transpose() } else { self.clone() };
        let mut inv = Self::zeros(n, n);
        for j in 0..n {
            // Solve m x = e_j for the upper triangular m.
            for i in (0..n).rev() {
                let mut acc = if i == j { FieldElem::one() } else { FieldElem::zero() };
                for k in i + 1..n {
                    let a = m.get(i, k);
                    if !a.is_zero() {
                        acc = acc.sub(&a.mul(inv.get(k, j)));
                    }
                }
                let d = m.get(i, i).inv().ok()?;
                inv.set(i, j, acc.mul(&d));
            }
        }
        Some(if lower { inv.transpose() } else { inv })
    }
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
pub fn bareiss_det(m: &Matrix<Poly>) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::UnsupportedShape("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Poly::zero());
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.div_exact(&prev).ok_or_else(|| {
                    Error::VerificationFailed("inexact Bareiss division".into())
                })?;
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Determinant over the differential field: clear each row's denominators,
/// run Bareiss on the polynomial matrix, then divide the scale back out.
pub fn ff_det(m: &Matrix<FieldElem>) -> Result<FieldElem> {
    if !m.is_square() {
        return Err(Error::UnsupportedShape("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut rows = Vec::with_capacity(n);
    let mut scale = Poly::one();
    for i in 0..n {
        let mut dens: Vec<&Poly> = Vec::new();
        for v in m.row(i) {
            if !v.is_polynomial() && !dens.contains(&v.denom()) {
                dens.push(v.denom());
            }
        }
        let d = dens.iter().fold(Poly::one(), |acc, p| acc.mul(p));
        let row: Vec<Poly> = m
            .row(i)
            .iter()
            .map(|v| {
                if v.is_polynomial() {
                    v.numer().mul(&d)
                } else {
                    let cof = d.div_exact(v.denom()).expect("denominator divides row scale");
                    v.numer().mul(&cof)
                }
            })
            .collect();
        scale = scale.mul(&d);
        rows.push(row);
    }
    let det = bareiss_det(&Matrix::from_rows(rows)?)?;
    FieldElem::new(det, scale)
}

impl<R: Ring + fmt::Display> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
