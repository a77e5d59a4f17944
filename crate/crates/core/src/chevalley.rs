//! Matrix Chevalley bases in the defining representations, basis
//! decomposition, and unipotent root-group elements.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{q, FieldElem, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::roots::{build_root_system, GroupType, Root, RootSystem, SignedRoot};

type IntMatrix = Matrix<i64>;
type Sparse = Vec<(usize, usize, i64)>;

fn e(n: usize, i: usize, j: usize) -> IntMatrix {
    Matrix::unit(n, i, j, 1)
}

fn sparse(m: &IntMatrix) -> Sparse {
    m.entries().filter(|(_, _, v)| **v != 0).map(|(i, j, v)| (i, j, *v)).collect()
}

/// Exact integer division of every entry; `None` if some entry is not
/// divisible.
fn div_exact_int(m: &IntMatrix, d: i64) -> Option<IntMatrix> {
    if m.entries().any(|(_, _, v)| v % d != 0) {
        return None;
    }
    Some(m.map(|v| v / d))
}

/// `M -> M - J^{-1} M^T J` for a signed permutation `J`.
fn project(m: &IntMatrix, j: &IntMatrix) -> IntMatrix {
    let jinv = j.transpose();
    m.sub(&jinv.mul(&m.transpose()).mul(j))
}

fn antidiag(signs: &[i64]) -> IntMatrix {
    let n = signs.len();
    let mut m = Matrix::zeros(n, n);
    for (i, &s) in signs.iter().enumerate() {
        m.set(i, n - 1 - i, s);
    }
    m
}

/// `f = e^T * 2 / μ` where `[[e, e^T], e] = μ e`.
fn default_lowering(e_i: &IntMatrix) -> IntMatrix {
    let et = e_i.transpose();
    let c = e_i.bracket(&et).bracket(e_i);
    let (i, j, v) = sparse(e_i)[0];
    let mu = *c.get(i, j) / v;
    assert_eq!(c, e_i.scale(&mu), "raising generator is not an sl2 triple");
    div_exact_int(&et.scale(&2), mu).expect("integral lowering generator")
}

/// Raising and lowering generators `e_i`, `f_i` for each simple root.
fn generators(group_type: GroupType, l: usize) -> (Vec<IntMatrix>, Vec<IntMatrix>) {
    let (es, fs): (Vec<IntMatrix>, Option<Vec<IntMatrix>>) = match group_type {
        GroupType::A => {
            let n = l + 1;
            (
                (0..l).map(|i| e(n, i, i + 1)).collect(),
                Some((0..l).map(|i| e(n, i + 1, i)).collect()),
            )
        }
        GroupType::B => {
            let n = 2 * l + 1;
            let mut es = Vec::new();
            let mut fs = Vec::new();
            for i in 0..l - 1 {
                // E_{i,i+1} - E_{n-1-(i+1), n-1-i} (0-based)
                let ei = e(n, i, i + 1).sub(&e(n, n - 2 - i, n - 1 - i));
                fs.push(default_lowering(&ei));
                es.push(ei);
            }
            let m = l; // middle index, 0-based
            es.push(e(n, m - 1, m).sub(&e(n, m, m + 1).scale(&2)));
            fs.push(e(n, m, m - 1).scale(&2).sub(&e(n, m + 1, m)));
            (es, Some(fs))
        }
        GroupType::C => {
            let n = 2 * l;
            let signs: Vec<i64> = (0..n).map(|i| if i < l { 1 } else { -1 }).collect();
            let j = antidiag(&signs);
            let mut es: Vec<IntMatrix> = (0..l - 1).map(|i| project(&e(n, i, i + 1), &j)).collect();
            es.push(e(n, l - 1, l));
            (es, None)
        }
        GroupType::D => {
            let n = 2 * l;
            let j = antidiag(&vec![1; n]);
            let mut es: Vec<IntMatrix> = (0..l - 1).map(|i| project(&e(n, i, i + 1), &j)).collect();
            es.push(project(&e(n, l - 2, l), &j));
            (es, None)
        }
        GroupType::G2 => {
            let n = 7;
            let e1 = e(n, 0, 1)
                .add(&e(n, 2, 3))
                .add(&e(n, 3, 4).scale(&2))
                .add(&e(n, 5, 6));
            let f1 = e(n, 1, 0)
                .add(&e(n, 3, 2).scale(&2))
                .add(&e(n, 4, 3))
                .add(&e(n, 6, 5));
            let e2 = e(n, 1, 2).add(&e(n, 4, 5));
            let f2 = e(n, 2, 1).add(&e(n, 5, 4));
            (vec![e1, e2], Some(vec![f1, f2]))
        }
    };
    let fs = fs.unwrap_or_else(|| es.iter().map(default_lowering).collect());
    (es, fs)
}

/// A Chevalley basis `{X_α, H_{α_i}}` realized by integer matrices.
#[derive(Debug)]
pub struct ChevalleyBasis {
    rs: RootSystem,
    x_pos: Vec<IntMatrix>,
    x_neg: Vec<IntMatrix>,
    h: Vec<IntMatrix>,
    sp_pos: Vec<Sparse>,
    sp_neg: Vec<Sparse>,
    sp_h: Vec<Sparse>,
    /// Coordinates of `H_α` over the `H_{α_i}` for each positive `α`.
    coroots: Vec<Vec<i64>>,
    structure: HashMap<(SignedRoot, SignedRoot), i64>,
    /// Diagonal rows used to solve for Cartan coordinates, and the inverse
    /// of the corresponding square block.
    cartan_rows: Vec<usize>,
    cartan_solve: Vec<Vec<Scalar>>,
}

pub fn build_chevalley_basis(rs: RootSystem) -> Result<Arc<ChevalleyBasis>> {
    let l = rs.rank();
    let (es, fs) = generators(rs.group_type(), l);
    let np = rs.num_positive();
    let mut x_pos: Vec<Option<IntMatrix>> = vec![None; np];
    let mut x_neg: Vec<Option<IntMatrix>> = vec![None; np];
    // Positive roots are ordered so that every proper predecessor of a root
    // in the construction has lower height; process by height explicitly.
    let mut order: Vec<usize> = (0..np).collect();
    order.sort_by_key(|&k| rs.positive_roots()[k].height());
    for k in order {
        let alpha = rs.positive_roots()[k].clone();
        if alpha.height() == 1 {
            let i = alpha.0.iter().position(|&c| c == 1).expect("simple root");
            x_pos[k] = Some(es[i].clone());
            x_neg[k] = Some(fs[i].clone());
            continue;
        }
        let (i, bi) = (0..l)
            .find_map(|i| {
                let beta = alpha.sub(&rs.simple(i));
                rs.find(&beta)
                    .filter(|s| !s.negative)
                    .map(|s| (i, s.index))
            })
            .expect("every non-simple positive root has a simple predecessor");
        let beta = &rs.positive_roots()[bi];
        let ai = rs.simple(i);
        let mut r = 0;
        while rs.is_root(&beta.sub(&ai.scaled(r + 1))) {
            r += 1;
        }
        let xb = x_pos[bi].as_ref().expect("lower height built first");
        let xnb = x_neg[bi].as_ref().expect("lower height built first");
        let xp = div_exact_int(&es[i].bracket(xb), r + 1)
            .ok_or_else(|| Error::VerificationFailed(format!("non-integral X_{}", alpha)))?;
        let xn = div_exact_int(&fs[i].bracket(xnb).neg(), r + 1)
            .ok_or_else(|| Error::VerificationFailed(format!("non-integral X_-{}", alpha)))?;
        x_pos[k] = Some(xp);
        x_neg[k] = Some(xn);
    }
    let h: Vec<IntMatrix> = es.iter().zip(&fs).map(|(a, b)| a.bracket(b)).collect();
    ChevalleyBasis::from_parts(
        rs,
        x_pos.into_iter().map(Option::unwrap).collect(),
        x_neg.into_iter().map(Option::unwrap).collect(),
        h,
    )
    .map(Arc::new)
}

impl ChevalleyBasis {
    pub fn new(group_type: GroupType, rank: usize) -> Result<Arc<ChevalleyBasis>> {
        build_chevalley_basis(build_root_system(group_type, rank)?)
    }

    /// Assemble a basis from explicit matrices. Derived data (pivots,
    /// coroots, structure constants) is read off the matrices without
    /// validating the bracket relations, so a corrupted input is accepted
    /// here and caught by the relation checks.
    pub fn from_parts(
        rs: RootSystem,
        x_pos: Vec<IntMatrix>,
        x_neg: Vec<IntMatrix>,
        h: Vec<IntMatrix>,
    ) -> Result<ChevalleyBasis> {
        let l = rs.rank();
        let n = rs.rep_dim();
        let np = rs.num_positive();
        if x_pos.len() != np || x_neg.len() != np || h.len() != l {
            return Err(Error::UnsupportedShape("basis size does not match the root system".into()));
        }
        if x_pos.iter().chain(&x_neg).chain(&h).any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::UnsupportedShape(format!("basis matrices must be {}x{}", n, n)));
        }
        let sp_pos: Vec<Sparse> = x_pos.iter().map(sparse).collect();
        let sp_neg: Vec<Sparse> = x_neg.iter().map(sparse).collect();
        let sp_h: Vec<Sparse> = h.iter().map(sparse).collect();
        if sp_pos.iter().chain(&sp_neg).any(Vec::is_empty) {
            return Err(Error::DegenerateInput("zero root vector".into()));
        }

        let sq: Vec<i64> = (0..l).map(|i| rs.squared_length(&rs.simple(i))).collect();
        let coroots = rs
            .positive_roots()
            .iter()
            .map(|a| {
                let da = rs.squared_length(a);
                (0..l).map(|i| a.0[i] * sq[i] / da).collect()
            })
            .collect();

        let (cartan_rows, cartan_solve) = cartan_solver(&h, n, l)?;

        let mut basis = ChevalleyBasis {
            rs,
            x_pos,
            x_neg,
            h,
            sp_pos,
            sp_neg,
            sp_h,
            coroots,
            structure: HashMap::new(),
            cartan_rows,
            cartan_solve,
        };
        let signed: Vec<SignedRoot> = basis.rs.all_signed().collect();
        for &a in &signed {
            for &b in &signed {
                let sum = basis.rs.root(a).add(&basis.rs.root(b));
                let Some(c) = basis.rs.find(&sum) else {
                    continue;
                };
                let br = basis.x(a).bracket(basis.x(b));
                let (i, j, v) = basis.pivot(c);
                basis.structure.insert((a, b), *br.get(i, j) / v);
            }
        }
        Ok(basis)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn group_type(&self) -> GroupType {
        self.rs.group_type()
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn dim(&self) -> usize {
        self.rs.rep_dim()
    }

    pub fn x(&self, s: SignedRoot) -> &IntMatrix {
        if s.negative {
            &self.x_neg[s.index]
        } else {
            &self.x_pos[s.index]
        }
    }

    pub fn h(&self, i: usize) -> &IntMatrix {
        &self.h[i]
    }

    fn sparse_x(&self, s: SignedRoot) -> &Sparse {
        if s.negative {
            &self.sp_neg[s.index]
        } else {
            &self.sp_pos[s.index]
        }
    }

    /// First nonzero entry of `X_s`, row-major. Root vectors of distinct
    /// roots have disjoint supports, so this entry identifies `s`.
    pub fn pivot(&self, s: SignedRoot) -> (usize, usize, i64) {
        self.sparse_x(s)[0]
    }

    /// Coordinates of `H_s` over the `H_{α_i}`.
    pub fn coroot(&self, s: SignedRoot) -> Vec<i64> {
        let c = &self.coroots[s.index];
        if s.negative {
            c.iter().map(|v| -v).collect()
        } else {
            c.clone()
        }
    }

    pub fn coroot_matrix(&self, s: SignedRoot) -> IntMatrix {
        let n = self.dim();
        self.coroot(s)
            .iter()
            .zip(&self.h)
            .fold(Matrix::zeros(n, n), |acc, (&c, h)| acc.add(&h.scale(&c)))
    }

    /// `⟨s, α_i⟩`, the eigenvalue of `ad H_{α_i}` on `X_s`.
    pub fn pairing(&self, s: SignedRoot, i: usize) -> i64 {
        self.rs.cartan_integer(&self.rs.root(s), &self.rs.simple(i))
    }

    /// `N_{a,b}` with `[X_a, X_b] = N_{a,b} X_{a+b}`, when `a + b` is a root.
    pub fn structure_constant(&self, a: SignedRoot, b: SignedRoot) -> Option<i64> {
        self.structure.get(&(a, b)).copied()
    }

    /// `c_{β,α,i}`: coefficient of `x^i X_{α+iβ}` in `Ad(U_β(x)) X_α`.
    pub fn ad_coefficient(&self, beta: SignedRoot, alpha: SignedRoot, i: usize) -> Option<Scalar> {
        let rb = self.rs.root(beta);
        let mut cur = alpha;
        let mut acc = BigRational::one();
        for k in 0..i {
            let n = self.structure_constant(beta, cur)?;
            acc = acc * q(n) / q(k as i64 + 1);
            cur = self.rs.find(&self.rs.root(cur).add(&rb))?;
        }
        Some(acc)
    }

    pub fn x_field(&self, s: SignedRoot) -> Matrix<FieldElem> {
        self.x(s).map(|&v| FieldElem::from_int(v))
    }

    /// Matrix of `Σ h_i H_i + Σ z_s X_s`.
    fn assemble(&self, cartan: &[FieldElem], pos: &[FieldElem], neg: &[FieldElem]) -> Matrix<FieldElem> {
        let n = self.dim();
        let mut m: Matrix<FieldElem> = Matrix::zeros(n, n);
        let mut put = |coef: &FieldElem, sp: &Sparse| {
            if coef.is_zero() {
                return;
            }
            for &(i, j, v) in sp {
                let cur = m.get(i, j).add(&coef.scale(&q(v)));
                m.set(i, j, cur);
            }
        };
        for (c, sp) in cartan.iter().zip(&self.sp_h) {
            put(c, sp);
        }
        for (c, sp) in pos.iter().zip(&self.sp_pos) {
            put(c, sp);
        }
        for (c, sp) in neg.iter().zip(&self.sp_neg) {
            put(c, sp);
        }
        m
    }
}

/// Pick `l` diagonal positions on which the `H_i` are independent and
/// invert that block over the rationals.
fn cartan_solver(h: &[IntMatrix], n: usize, l: usize) -> Result<(Vec<usize>, Vec<Vec<Scalar>>)> {
    // Greedy row selection by rational Gaussian elimination.
    let mut rows: Vec<usize> = Vec::new();
    let mut reduced: Vec<Vec<Scalar>> = Vec::new();
    for r in 0..n {
        let mut v: Vec<Scalar> = (0..l).map(|j| q(*h[j].get(r, r))).collect();
        for basis_row in &reduced {
            let p = basis_row.iter().position(|c| !c.is_zero()).expect("nonzero row");
            if !v[p].is_zero() {
                let f = &v[p] / &basis_row[p];
                for k in 0..l {
                    v[k] = &v[k] - &f * &basis_row[k];
                }
            }
        }
        if v.iter().any(|c| !c.is_zero()) {
            rows.push(r);
            reduced.push(v);
            if rows.len() == l {
                break;
            }
        }
    }
    if rows.len() != l {
        return Err(Error::DegenerateInput("Cartan generators are dependent".into()));
    }
    let block: Matrix<Scalar> = Matrix::from_rows(
        rows.iter()
            .map(|&r| (0..l).map(|j| q(*h[j].get(r, r))).collect())
            .collect(),
    )?;
    let inv = crate::algebra::lift_rational(&block).inverse()?;
    let solve = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| inv.get(i, j).as_constant().expect("constant inverse"))
                .collect()
        })
        .collect();
    Ok((rows, solve))
}

/// An element of the Lie algebra over the differential field, stored by
/// Chevalley coordinates with a lazily built matrix.
#[derive(Clone)]
pub struct LieElement {
    basis: Arc<ChevalleyBasis>,
    cartan: Vec<FieldElem>,
    pos: Vec<FieldElem>,
    neg: Vec<FieldElem>,
    matrix: OnceLock<Matrix<FieldElem>>,
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement({})", self)
    }
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis)
            && self.cartan == other.cartan
            && self.pos == other.pos
            && self.neg == other.neg
    }
}

impl LieElement {
    pub fn zero(basis: &Arc<ChevalleyBasis>) -> LieElement {
        let l = basis.rank();
        let np = basis.rs.num_positive();
        LieElement {
            basis: basis.clone(),
            cartan: vec![FieldElem::zero(); l],
            pos: vec![FieldElem::zero(); np],
            neg: vec![FieldElem::zero(); np],
            matrix: OnceLock::new(),
        }
    }

    pub fn basis(&self) -> &Arc<ChevalleyBasis> {
        &self.basis
    }

    /// `A_Δ = Σ X_{α_i}`.
    pub fn a_delta(basis: &Arc<ChevalleyBasis>) -> LieElement {
        let mut out = LieElement::zero(basis);
        for i in 0..basis.rank() {
            out.set(SignedRoot::pos(basis.rs.simple_index(i)), FieldElem::one());
        }
        out
    }

    pub fn cartan_coeff(&self, i: usize) -> &FieldElem {
        &self.cartan[i]
    }

    pub fn cartan_coeffs(&self) -> &[FieldElem] {
        &self.cartan
    }

    pub fn coeff(&self, s: SignedRoot) -> &FieldElem {
        if s.negative {
            &self.neg[s.index]
        } else {
            &self.pos[s.index]
        }
    }

    pub fn coeff_of(&self, r: &Root) -> Option<&FieldElem> {
        self.basis.rs.find(r).map(|s| self.coeff(s))
    }

    pub fn set(&mut self, s: SignedRoot, v: FieldElem) {
        self.matrix = OnceLock::new();
        if s.negative {
            self.neg[s.index] = v;
        } else {
            self.pos[s.index] = v;
        }
    }

    pub fn set_cartan(&mut self, i: usize, v: FieldElem) {
        self.matrix = OnceLock::new();
        self.cartan[i] = v;
    }

    pub fn add_to(&mut self, s: SignedRoot, v: &FieldElem) {
        let cur = self.coeff(s).add(v);
        self.set(s, cur);
    }

    pub fn add_to_cartan(&mut self, i: usize, v: &FieldElem) {
        let cur = self.cartan[i].add(v);
        self.set_cartan(i, cur);
    }

    /// Roots with nonzero coefficient.
    pub fn support(&self) -> Vec<SignedRoot> {
        self.basis
            .rs
            .all_signed()
            .filter(|&s| !self.coeff(s).is_zero())
            .collect()
    }

    pub fn cartan_is_zero(&self) -> bool {
        self.cartan.iter().all(FieldElem::is_zero)
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let zip = |a: &[FieldElem], b: &[FieldElem]| a.iter().zip(b).map(|(x, y)| x.add(y)).collect();
        LieElement {
            basis: self.basis.clone(),
            cartan: zip(&self.cartan, &other.cartan),
            pos: zip(&self.pos, &other.pos),
            neg: zip(&self.neg, &other.neg),
            matrix: OnceLock::new(),
        }
    }

    pub fn scale(&self, c: &FieldElem) -> LieElement {
        let map = |a: &[FieldElem]| a.iter().map(|x| x.mul(c)).collect();
        LieElement {
            basis: self.basis.clone(),
            cartan: map(&self.cartan),
            pos: map(&self.pos),
            neg: map(&self.neg),
            matrix: OnceLock::new(),
        }
    }

    pub fn matrix(&self) -> &Matrix<FieldElem> {
        self.matrix
            .get_or_init(|| self.basis.assemble(&self.cartan, &self.pos, &self.neg))
    }

    /// Whether every coefficient is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.cartan
            .iter()
            .chain(&self.pos)
            .chain(&self.neg)
            .all(FieldElem::is_polynomial)
    }

    /// Human-readable coordinate listing, e.g. `H1: z, X[-a1]: t1`.
    pub fn terms(&self) -> Vec<(String, &FieldElem)> {
        let mut out = Vec::new();
        for (i, c) in self.cartan.iter().enumerate() {
            if !c.is_zero() {
                out.push((format!("H{}", i + 1), c));
            }
        }
        for s in self.basis.rs.all_signed() {
            let c = self.coeff(s);
            if !c.is_zero() {
                out.push((format!("X[{}]", self.basis.rs.root(s)), c));
            }
        }
        out
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.terms();
        if t.is_empty() {
            return write!(f, "0");
        }
        for (k, (label, c)) in t.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", label, c)?;
        }
        Ok(())
    }
}

/// Coordinates of `m` in the Chevalley basis; `NotInLieAlgebra` when `m`
/// is not in the span.
pub fn decompose(m: &Matrix<FieldElem>, basis: &Arc<ChevalleyBasis>) -> Result<LieElement> {
    let n = basis.dim();
    if m.rows() != n || m.cols() != n {
        return Err(Error::UnsupportedShape(format!(
            "expected a {}x{} matrix, got {}x{}",
            n,
            n,
            m.rows(),
            m.cols()
        )));
    }
    let mut out = LieElement::zero(basis);
    for s in basis.rs.all_signed() {
        let (i, j, v) = basis.pivot(s);
        let c = m.get(i, j);
        if !c.is_zero() {
            let coef = c.scale(&BigRational::new(1.into(), v.into()));
            if s.negative {
                out.neg[s.index] = coef;
            } else {
                out.pos[s.index] = coef;
            }
        }
    }
    for (i, row) in basis.cartan_solve.iter().enumerate() {
        let mut acc = FieldElem::zero();
        for (k, w) in row.iter().enumerate() {
            if !w.is_zero() {
                acc = acc.add(&m.get(basis.cartan_rows[k], basis.cartan_rows[k]).scale(w));
            }
        }
        out.cartan[i] = acc;
    }
    let rebuilt = out.matrix();
    if rebuilt != m {
        let (i, j, _) = m
            .entries()
            .find(|&(i, j, v)| v != rebuilt.get(i, j))
            .expect("matrices differ somewhere");
        return Err(Error::NotInLieAlgebra(format!(
            "residual at entry ({}, {}) is {}",
            i + 1,
            j + 1,
            m.get(i, j).sub(rebuilt.get(i, j))
        )));
    }
    Ok(out)
}

/// `U_β(x) = exp(x X_β)`, a finite sum since `X_β` is nilpotent.
pub fn unipotent(beta: SignedRoot, x: &FieldElem, basis: &ChevalleyBasis) -> Matrix<FieldElem> {
    let n = basis.dim();
    let xb = basis.x(beta);
    let mut out = Matrix::<FieldElem>::identity(n);
    if x.is_zero() {
        return out;
    }
    let mut power = Matrix::<i64>::identity(n);
    let mut xk = FieldElem::one();
    let mut fact = BigRational::one();
    for k in 1..=n {
        power = power.mul(xb);
        if power.is_zero() {
            break;
        }
        xk = xk.mul(x);
        fact *= q(k as i64);
        let coef = xk.scale(&fact.recip());
        for (i, j, &v) in power.entries() {
            if v != 0 {
                let cur = out.get(i, j).add(&coef.scale(&q(v)));
                out.set(i, j, cur);
            }
        }
    }
    out
}

/// `Ad(U_β(x))` applied to `target` by the closed-form root-string rules:
///
/// * `H_{α_i} -> H_{α_i} - x ⟨β, α_i⟩ X_β`
/// * `X_{-β} -> X_{-β} + x H_β - x² X_β`
/// * `X_α -> Σ_{i=0}^{q} c_{β,α,i} x^i X_{α+iβ}` otherwise.
pub fn ad_unipotent(beta: SignedRoot, x: &FieldElem, target: &LieElement) -> LieElement {
    let basis = target.basis.clone();
    if x.is_zero() {
        return target.clone();
    }
    let rs = &basis.rs;
    let rb = rs.root(beta);
    let mut out = target.clone();
    out.matrix = OnceLock::new();

    for i in 0..basis.rank() {
        let h = target.cartan_coeff(i);
        if h.is_zero() {
            continue;
        }
        let p = basis.pairing(beta, i);
        if p != 0 {
            out.add_to(beta, &h.mul(x).scale(&q(-p)));
        }
    }

    let x2 = x.mul(x);
    for s in rs.all_signed() {
        let z = target.coeff(s);
        if z.is_zero() || s == beta {
            continue;
        }
        if s == beta.opposite() {
            for (i, c) in basis.coroot(beta).iter().enumerate() {
                if *c != 0 {
                    out.add_to_cartan(i, &z.mul(x).scale(&q(*c)));
                }
            }
            out.add_to(beta, &z.mul(&x2).neg());
            continue;
        }
        let mut cur = rs.root(s);
        let mut xi = FieldElem::one();
        for i in 1.. {
            cur = cur.add(&rb);
            let Some(target_root) = rs.find(&cur) else {
                break;
            };
            xi = xi.mul(x);
            let c = basis
                .ad_coefficient(beta, s, i)
                .expect("string stays inside the root system");
            out.add_to(target_root, &z.mul(&xi).scale(&c));
        }
    }
    out
}
