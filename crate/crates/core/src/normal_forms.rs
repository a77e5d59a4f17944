//! Parameter matrices `A(t)`, the scalar parameter equations of the
//! classical and G2 families, cyclic-vector annihilator certificates, and
//! the specialization demos over `Q(z)`.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{ff_det, q, FieldElem, Matrix, Scalar};
use crate::chevalley::{decompose, ChevalleyBasis, LieElement};
use crate::error::{Error, Result};
use crate::gauge::{
    gauge_transform, reduce_to_normal_form, GaugeFactor, GaugeRecord, NormalFormResult,
};
use crate::roots::{GroupType, Root};

/// `Σ a_i y^(i)`, coefficients indexed by derivative order.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarODE {
    pub coeffs: Vec<FieldElem>,
}

impl ScalarODE {
    pub fn new(coeffs: Vec<FieldElem>) -> Result<ScalarODE> {
        match coeffs.last() {
            Some(c) if !c.is_zero() => Ok(ScalarODE { coeffs }),
            _ => Err(Error::DegenerateInput("leading coefficient must be nonzero".into())),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(FieldElem::is_one)
    }

    /// Apply `t_i -> ε_i t_i` to every coefficient.
    pub fn with_signs(&self, eps: &[i8]) -> ScalarODE {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                eps.iter().enumerate().fold(c.clone(), |acc, (i, &e)| {
                    if e < 0 {
                        acc.scale_parameter(i as u32 + 1, &q(-1))
                    } else {
                        acc
                    }
                })
            })
            .collect();
        ScalarODE { coeffs }
    }

    /// Apply `t_i -> factor * t_i`.
    pub fn scale_parameter(&self, index: u32, factor: &Scalar) -> ScalarODE {
        ScalarODE {
            coeffs: self.coeffs.iter().map(|c| c.scale_parameter(index, factor)).collect(),
        }
    }
}

fn y_term(order: usize) -> String {
    match order {
        0 => "y".into(),
        1..=3 => format!("y{}", "'".repeat(order)),
        _ => format!("y^({})", order),
    }
}

/// The leading term first, then ascending derivative order, e.g.
/// `y^(4) - t1*y - t2*y' - t3*y''`.
impl fmt::Display for ScalarODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        let order: Vec<usize> = std::iter::once(n).chain(0..n).collect();
        let mut first = true;
        for i in order {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let y = y_term(i);
            let single = c.is_polynomial() && c.numer().num_terms() == 1;
            let negative = single
                && c.numer()
                    .leading_term()
                    .is_some_and(|(_, k)| k < &Scalar::zero());
            let mag = if negative { c.neg() } else { c.clone() };
            let sign = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = if mag.is_one() {
                y
            } else if single {
                format!("{}*{}", mag, y)
            } else {
                format!("({})*{}", mag, y)
            };
            write!(f, "{}{}", sign, body)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A linear differential operator in `y`, as coefficients of `y^(i)`.
#[derive(Clone, Debug, PartialEq)]
struct LinOp(Vec<FieldElem>);

impl LinOp {
    fn y(order: usize) -> LinOp {
        let mut v = vec![FieldElem::zero(); order + 1];
        v[order] = FieldElem::one();
        LinOp(v)
    }

    fn mul(&self, c: &FieldElem) -> LinOp {
        LinOp(self.0.iter().map(|a| a.mul(c)).collect())
    }

    fn scale(&self, c: i64) -> LinOp {
        LinOp(self.0.iter().map(|a| a.scale(&q(c))).collect())
    }

    fn add(&self, other: &LinOp) -> LinOp {
        let n = self.0.len().max(other.0.len());
        LinOp(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(FieldElem::zero);
                    let b = other.0.get(i).cloned().unwrap_or_else(FieldElem::zero);
                    a.add(&b)
                })
                .collect(),
        )
    }

    fn sub(&self, other: &LinOp) -> LinOp {
        self.add(&other.scale(-1))
    }

    /// `(Σ a_i y^(i))' = Σ a_i' y^(i) + a_i y^(i+1)`.
    fn derive(&self) -> LinOp {
        let mut out = vec![FieldElem::zero(); self.0.len() + 1];
        for (i, a) in self.0.iter().enumerate() {
            out[i] = out[i].add(&a.derive());
            out[i + 1] = out[i + 1].add(a);
        }
        LinOp(out)
    }

    fn derive_n(&self, n: usize) -> LinOp {
        (0..n).fold(self.clone(), |acc, _| acc.derive())
    }

    fn into_ode(mut self) -> Result<ScalarODE> {
        while self.0.len() > 1 && self.0.last().is_some_and(FieldElem::is_zero) {
            self.0.pop();
        }
        ScalarODE::new(self.0)
    }
}

fn t(i: usize) -> FieldElem {
    FieldElem::t(i as u32)
}

/// `(t_i y^(a))^(b)`
fn tyd(i: usize, a: usize, b: usize) -> LinOp {
    LinOp::y(a).mul(&t(i)).derive_n(b)
}

/// Expanded scalar parameter equation for the given type and rank.
pub fn expand_theorem1(group_type: GroupType, rank: usize) -> Result<ScalarODE> {
    crate::roots::cartan_matrix(group_type, rank)?;
    let l = rank;
    let sign = |i: usize| if (i - 1).is_multiple_of(2) { 1 } else { -1 };
    let op = match group_type {
        GroupType::A => (1..=l).fold(LinOp::y(l + 1), |acc, i| acc.sub(&tyd(i, i - 1, 0))),
        GroupType::C => (1..=l).fold(LinOp::y(2 * l), |acc, i| {
            acc.sub(&tyd(i, l - i, l - i).scale(sign(i)))
        }),
        GroupType::B => (1..=l).fold(LinOp::y(2 * l + 1), |acc, i| {
            let inner = tyd(i, l + 1 - i, l - i).add(&tyd(i, l - i, l + 1 - i));
            acc.sub(&inner.scale(sign(i)))
        }),
        GroupType::G2 => {
            // y^(7) + 2 t1 y' + 2 (t1 y)' + 2 (t2 y^(4))' + (t2 y')^(4) - 2 (t2 (t2 y')')'
            let t2 = t(2);
            let nested = LinOp::y(1).mul(&t2).derive().mul(&t2).derive();
            LinOp::y(7)
                .add(&tyd(1, 1, 0).scale(2))
                .add(&tyd(1, 0, 1).scale(2))
                .add(&tyd(2, 4, 1).scale(2))
                .add(&tyd(2, 1, 4))
                .sub(&nested.scale(2))
        }
        GroupType::D => {
            return Err(Error::OutOfScope(
                "the scalar equation for type D depends on substitutions z1, z2 that are not \
                 available here"
                    .into(),
            ))
        }
    };
    op.into_ode()
}

/// `A_Δ + Σ t_i X_{-γ_i}` with the default parameter roots.
pub fn build_parameter_matrix(group_type: GroupType, rank: usize) -> Result<LieElement> {
    let basis = ChevalleyBasis::new(group_type, rank)?;
    let gamma = basis.root_system().parameter_roots();
    Ok(parameter_matrix(&basis, &gamma))
}

/// `A_Δ + Σ t_i X_{-γ_i}` for explicit parameter roots (positive, in
/// parameter order).
pub fn parameter_matrix(basis: &Arc<ChevalleyBasis>, gamma: &[Root]) -> LieElement {
    let rs = basis.root_system();
    let mut a = LieElement::a_delta(basis);
    for (i, g) in gamma.iter().enumerate() {
        let s = rs.find(&g.neg()).expect("parameter roots are roots");
        a.set(s, t(i + 1));
    }
    a
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnihilatorCertificate {
    /// `c_0, ..., c_n` with `c_0 = e_1` and `c_{k+1} = c_k A + ∂(c_k)`.
    pub row_vectors: Vec<Vec<FieldElem>>,
    pub combo_residual: Vec<FieldElem>,
    /// `det(c_0; ...; c_{n-1})`.
    pub rank_witness: FieldElem,
    /// Signs applied as `t_i -> ε_i t_i` to the equation.
    pub epsilon: Vec<i8>,
}

impl AnnihilatorCertificate {
    pub fn is_valid(&self) -> bool {
        self.combo_residual.iter().all(FieldElem::is_zero) && !self.rank_witness.is_zero()
    }
}

/// `c_0 = e_1`, `c_{k+1} = c_k A + ∂(c_k)` for `k < n`.
pub fn cyclic_rows(a: &Matrix<FieldElem>) -> Vec<Vec<FieldElem>> {
    let n = a.rows();
    let mut rows = Vec::with_capacity(n + 1);
    let mut c: Vec<FieldElem> = (0..n)
        .map(|i| if i == 0 { FieldElem::one() } else { FieldElem::zero() })
        .collect();
    rows.push(c.clone());
    for _ in 0..n {
        let mut next: Vec<FieldElem> = c.iter().map(FieldElem::derive).collect();
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, nj) in next.iter_mut().enumerate() {
                let aij = a.get(i, j);
                if !aij.is_zero() {
                    *nj = nj.add(&ci.mul(aij));
                }
            }
        }
        rows.push(next.clone());
        c = next;
    }
    rows
}

fn residual(rows: &[Vec<FieldElem>], ode: &ScalarODE) -> Vec<FieldElem> {
    let n = rows[0].len();
    (0..n)
        .map(|j| {
            ode.coeffs
                .iter()
                .zip(rows)
                .filter(|(a, _)| !a.is_zero())
                .fold(FieldElem::zero(), |acc, (a, r)| acc.add(&a.mul(&r[j])))
        })
        .collect()
}

fn sign_vectors(l: usize) -> Vec<Vec<i8>> {
    (0..1u32 << l)
        .map(|mask| (0..l).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

/// Check that the first coordinate of solutions of `∂y = A y` satisfies
/// `ode`, optionally searching over `t_i -> ±t_i` (all-plus first).
pub fn verify_annihilator(
    a: &LieElement,
    ode: &ScalarODE,
    sign_search: bool,
) -> Result<AnnihilatorCertificate> {
    verify_annihilator_matrix(a.matrix(), ode, sign_search, a.basis().rank())
}

/// As `verify_annihilator`, for a bare matrix with `num_params` parameters.
pub fn verify_annihilator_matrix(
    a: &Matrix<FieldElem>,
    ode: &ScalarODE,
    sign_search: bool,
    num_params: usize,
) -> Result<AnnihilatorCertificate> {
    let n = a.rows();
    if !a.is_square() || ode.order() != n {
        return Err(Error::UnsupportedShape(format!(
            "equation of order {} cannot annihilate a {}x{} system",
            ode.order(),
            a.rows(),
            a.cols()
        )));
    }
    let rows = cyclic_rows(a);
    let witness = ff_det(&Matrix::from_rows(rows[..n].to_vec())?)?;
    let candidates = if sign_search {
        sign_vectors(num_params)
    } else {
        vec![vec![1; num_params]]
    };
    let mut first = None;
    for eps in candidates {
        let res = residual(&rows, &ode.with_signs(&eps));
        let cert = AnnihilatorCertificate {
            row_vectors: rows.clone(),
            combo_residual: res,
            rank_witness: witness.clone(),
            epsilon: eps,
        };
        if cert.is_valid() {
            return Ok(cert);
        }
        first.get_or_insert(cert);
    }
    let cert = first.expect("at least one sign vector");
    if cert.rank_witness.is_zero() {
        return Err(Error::VerificationFailed(
            "the first basis vector is not cyclic (rank witness vanishes)".into(),
        ));
    }
    let bad = cert
        .combo_residual
        .iter()
        .position(|v| !v.is_zero())
        .expect("invalid certificate has a nonzero residual");
    Err(Error::VerificationFailed(format!(
        "no sign choice annihilates the system; with all signs +1, residual component {} is {}",
        bad + 1,
        cert.combo_residual[bad]
    )))
}

/// The monic equation satisfied by the first coordinate, solved from the
/// cyclic rows. Diagnostic counterpart of `verify_annihilator`.
pub fn induced_ode(a: &Matrix<FieldElem>) -> Result<ScalarODE> {
    let n = a.rows();
    let rows = cyclic_rows(a);
    let c = Matrix::from_rows(rows[..n].to_vec())?;
    let inv = c.inverse().map_err(|_| {
        Error::VerificationFailed("the first basis vector is not cyclic".into())
    })?;
    let last = Matrix::from_rows(vec![rows[n].clone()])?;
    let sol = last.mul(&inv);
    let mut coeffs: Vec<FieldElem> = (0..n).map(|j| sol.get(0, j).neg()).collect();
    coeffs.push(FieldElem::one());
    ScalarODE::new(coeffs)
}

/// `A_0 + z² A_1` with `A_0 = Σ (X_{α_i} + X_{-α_i})` and
/// `A_1 = Σ h_i H_{α_i}`.
pub fn mitschi_singer_matrix(group_type: GroupType, rank: usize, h: &[Scalar]) -> Result<LieElement> {
    let basis = ChevalleyBasis::new(group_type, rank)?;
    if h.len() != rank {
        return Err(Error::DegenerateInput(format!(
            "expected {} Cartan coordinates, got {}",
            rank,
            h.len()
        )));
    }
    let rs = basis.root_system();
    let mut a = LieElement::a_delta(&basis);
    let z2 = FieldElem::z().mul(&FieldElem::z());
    for i in 0..rank {
        let s = rs.find(&rs.simple(i).neg()).expect("simple root");
        a.set(s, FieldElem::one());
        a.set_cartan(i, z2.scale(&h[i]));
    }
    Ok(a)
}

#[derive(Clone, Debug)]
pub struct GenericityChain {
    pub input: Matrix<FieldElem>,
    pub a1: Matrix<FieldElem>,
    pub a2: Matrix<FieldElem>,
    pub reduction: NormalFormResult,
    /// `B_3 B_2 B_1` with its factors.
    pub gauge: GaugeRecord,
    pub final_matrix: Matrix<FieldElem>,
}

fn companion(a: &[FieldElem]) -> Matrix<FieldElem> {
    let n = a.len();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n - 1 {
        m.set(i, i + 1, FieldElem::one());
    }
    for (j, v) in a.iter().enumerate() {
        m.set(n - 1, j, v.clone());
    }
    m
}

fn expect_shape(stage: &str, got: &Matrix<FieldElem>, want: &Matrix<FieldElem>) -> Result<()> {
    for (i, j, v) in want.entries() {
        if got.get(i, j) != v {
            return Err(Error::VerificationFailed(format!(
                "{}: entry ({}, {}) is {}, expected {}",
                stage,
                i + 1,
                j + 1,
                got.get(i, j),
                v
            )));
        }
    }
    Ok(())
}

/// Bring the companion matrix with bottom row `a` into the zero-trace
/// companion normal form through `B_1 = diag(1, ..., 1, 1/f)`,
/// `B_2 = diag(g, ..., g, g^{-l})` and the reduction gauge `B_3`.
///
/// Requires `f'/f = a_{l+1}` and `g^{l+1} = 1/f`.
pub fn sl_genericity_chain(a: &[FieldElem], f: &FieldElem, g: &FieldElem) -> Result<GenericityChain> {
    if a.len() < 2 {
        return Err(Error::DegenerateInput("need l+1 >= 2 coefficients".into()));
    }
    let n = a.len();
    let l = n - 1;
    if f.is_zero() {
        return Err(Error::SingularGauge("f must be nonzero".into()));
    }
    let dlog_f = f.derive().div(f)?;
    if dlog_f != a[l] {
        return Err(Error::PreconditionViolated(format!(
            "f'/f = {} differs from a_{} = {}",
            dlog_f,
            l + 1,
            a[l]
        )));
    }
    let finv = f.inv()?;
    if g.pow(n as i32)? != finv {
        return Err(Error::PreconditionViolated(format!("g^{} is not 1/f", n)));
    }

    let input = companion(a);
    let one = FieldElem::one();

    let mut d1 = vec![one.clone(); n];
    d1[l] = finv;
    let b1 = GaugeFactor::diagonal(d1);
    let a1 = gauge_transform(&input, &b1.matrix)?;
    let mut want1 = Matrix::zeros(n, n);
    for i in 0..l - 1 {
        want1.set(i, i + 1, one.clone());
    }
    want1.set(l - 1, l, f.clone());
    for j in 0..l {
        want1.set(l, j, a[j].div(f)?);
    }
    expect_shape("after B1", &a1, &want1)?;

    let mut d2 = vec![g.clone(); n];
    d2[l] = g.pow(-(l as i32))?;
    let b2 = GaugeFactor::diagonal(d2);
    let a2 = gauge_transform(&a1, &b2.matrix)?;
    let lp1 = q(n as i64);
    let diag = dlog_f.scale(&(-lp1.recip()));
    let corner = dlog_f.scale(&(q(l as i64) / &lp1));
    let mut want2 = Matrix::zeros(n, n);
    for i in 0..l {
        want2.set(i, i + 1, one.clone());
        want2.set(i, i, diag.clone());
        want2.set(l, i, a[i].clone());
    }
    want2.set(l, l, corner);
    expect_shape("after B2", &a2, &want2)?;

    let basis = ChevalleyBasis::new(GroupType::A, l)?;
    let lie = decompose(&a2, &basis)?;
    let reduction = reduce_to_normal_form(&lie)?;

    let mut gauge = GaugeRecord::identity(n);
    gauge.push(b1);
    gauge.push(b2);
    let gauge = gauge.then(reduction.gauge.clone());
    let final_matrix = reduction.normal.matrix().clone();
    for i in 0..n {
        for j in 0..n {
            let v = final_matrix.get(i, j);
            let ok = if j == i + 1 {
                v.is_one()
            } else if i == l {
                j < l || v.is_zero()
            } else {
                v.is_zero()
            };
            if !ok {
                return Err(Error::VerificationFailed(format!(
                    "final matrix is not a zero-corner companion at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(GenericityChain {
        input,
        a1,
        a2,
        reduction,
        gauge,
        final_matrix,
    })
}
