//! Gauge transformations `A -> B A B⁻¹ + ∂(B) B⁻¹` and the reduction of
//! connections in `A_Δ + Borel` to the Γ-parametrized normal form.

use std::fmt;

use num_traits::Zero;

use crate::algebra::{lift_int, q, FieldElem, Matrix, Scalar};
use crate::chevalley::{ad_unipotent, unipotent, ChevalleyBasis, LieElement};
use crate::error::{Error, Result};
use crate::roots::{GroupType, Root, SignedRoot};

/// `lδ(B) = ∂(B) B⁻¹`.
pub fn log_derivative(b: &Matrix<FieldElem>) -> Result<Matrix<FieldElem>> {
    let inv = b.inverse()?;
    Ok(b.derive().mul(&inv))
}

/// `B A B⁻¹ + ∂(B) B⁻¹`.
pub fn gauge_transform(a: &Matrix<FieldElem>, b: &Matrix<FieldElem>) -> Result<Matrix<FieldElem>> {
    if a.rows() != b.rows() || !a.is_square() || !b.is_square() {
        return Err(Error::UnsupportedShape("gauge shapes do not match".into()));
    }
    let inv = b.inverse()?;
    Ok(b.mul(a).add(&b.derive()).mul(&inv))
}

#[derive(Clone, Debug, PartialEq)]
pub enum FactorKind {
    Unipotent { root: SignedRoot, x: FieldElem },
    Diagonal(Vec<FieldElem>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaugeFactor {
    pub kind: FactorKind,
    pub matrix: Matrix<FieldElem>,
}

impl GaugeFactor {
    pub fn unipotent(root: SignedRoot, x: FieldElem, basis: &ChevalleyBasis) -> GaugeFactor {
        let matrix = unipotent(root, &x, basis);
        GaugeFactor {
            kind: FactorKind::Unipotent { root, x },
            matrix,
        }
    }

    pub fn diagonal(entries: Vec<FieldElem>) -> GaugeFactor {
        let n = entries.len();
        let mut matrix = Matrix::zeros(n, n);
        for (i, v) in entries.iter().enumerate() {
            matrix.set(i, i, v.clone());
        }
        GaugeFactor {
            kind: FactorKind::Diagonal(entries),
            matrix,
        }
    }
}

impl fmt::Display for GaugeFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FactorKind::Unipotent { root, x } => {
                write!(f, "U[{}{}]({})", if root.negative { "-" } else { "+" }, root.index, x)
            }
            FactorKind::Diagonal(d) => {
                write!(f, "diag(")?;
                for (i, v) in d.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", v)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A gauge matrix with its factorization. Factors are listed in the order
/// they were applied, so `total = F_last ⋯ F_first`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeRecord {
    pub total: Matrix<FieldElem>,
    pub factors: Vec<GaugeFactor>,
}

impl GaugeRecord {
    pub fn identity(n: usize) -> GaugeRecord {
        GaugeRecord {
            total: Matrix::identity(n),
            factors: Vec::new(),
        }
    }

    pub fn push(&mut self, factor: GaugeFactor) {
        self.total = factor.matrix.mul(&self.total);
        self.factors.push(factor);
    }

    /// Append `later`, applied after `self`.
    pub fn then(mut self, later: GaugeRecord) -> GaugeRecord {
        self.total = later.total.mul(&self.total);
        self.factors.extend(later.factors);
        self
    }

    /// The product of the factors agrees with `total` and `total` is
    /// invertible.
    pub fn check_consistent(&self) -> Result<()> {
        let n = self.total.rows();
        let prod = self
            .factors
            .iter()
            .fold(Matrix::identity(n), |acc, f| f.matrix.mul(&acc));
        if prod != self.total {
            return Err(Error::VerificationFailed("factor product differs from total".into()));
        }
        if self.total.det()?.is_zero() {
            return Err(Error::SingularGauge("gauge total is singular".into()));
        }
        Ok(())
    }
}

/// Closed-form action of one unipotent gauge on a Lie element:
/// `Ad(U_β(x))(A) + x' X_β`.
pub fn apply_unipotent(a: &LieElement, root: SignedRoot, x: &FieldElem) -> LieElement {
    let mut out = ad_unipotent(root, x, a);
    let dx = x.derive();
    if !dx.is_zero() {
        out.add_to(root, &dx);
    }
    out
}

#[derive(Clone, Debug)]
pub struct NormalFormResult {
    pub normal: LieElement,
    pub gauge: GaugeRecord,
    /// Coefficients on `X_{-γ}` for the parameter roots, in parameter order.
    pub specialization: Vec<FieldElem>,
    /// Every intermediate connection, in order, starting with the input.
    pub intermediates: Vec<LieElement>,
}

impl NormalFormResult {
    /// `gauge_transform(input, total) == normal`, exactly.
    pub fn verify(&self, input: &LieElement) -> Result<()> {
        check_certificate(input.matrix(), &self.gauge, self.normal.matrix())
    }
}

pub fn check_certificate(
    input: &Matrix<FieldElem>,
    gauge: &GaugeRecord,
    normal: &Matrix<FieldElem>,
) -> Result<()> {
    gauge.check_consistent()?;
    let got = gauge_transform(input, &gauge.total)?;
    if &got != normal {
        return Err(Error::VerificationFailed(
            "gauge transform of the input differs from the claimed normal form".into(),
        ));
    }
    Ok(())
}

fn check_borel_shape(a: &LieElement) -> Result<()> {
    let rs = a.basis().root_system();
    for k in 0..rs.num_positive() {
        let c = a.coeff(SignedRoot::pos(k));
        let want = if rs.positive_roots()[k].height() == 1 {
            FieldElem::one()
        } else {
            FieldElem::zero()
        };
        if *c != want {
            return Err(Error::UnsupportedShape(format!(
                "coefficient of X[{}] must be {}, found {}",
                rs.positive_roots()[k],
                want,
                c
            )));
        }
    }
    Ok(())
}

/// Clear the Cartan part by `U_{-α_j}(x_j)` for `j = 1..l` in ascending
/// order.
pub fn clear_cartan(a: &LieElement) -> Result<(LieElement, GaugeRecord)> {
    check_borel_shape(a)?;
    let basis = a.basis().clone();
    let rs = basis.root_system();
    let mut cur = a.clone();
    let mut record = GaugeRecord::identity(basis.dim());
    for j in 0..basis.rank() {
        let h = cur.cartan_coeff(j).clone();
        if h.is_zero() {
            continue;
        }
        let root = SignedRoot::neg(rs.simple_index(j));
        // Linear response of the H_j coefficient to x: read it off the
        // closed form applied to X_{α_j} with x = 1.
        let mut probe = LieElement::zero(&basis);
        probe.set(root.opposite(), FieldElem::one());
        let slope = ad_unipotent(root, &FieldElem::one(), &probe)
            .cartan_coeff(j)
            .as_constant()
            .expect("constant structure data");
        let x = h.scale(&(-slope.recip()));
        cur = apply_unipotent(&cur, root, &x);
        record.push(GaugeFactor::unipotent(root, x, &basis));
    }
    Ok((cur, record))
}

/// One step of the stratified elimination (type A): clear the coefficient
/// of the height-`j` root of the negative stratum `k`.
pub fn clear_stratum_step(a: &LieElement, k: usize, j: usize) -> Result<(LieElement, GaugeRecord)> {
    let basis = a.basis().clone();
    let rs = basis.root_system();
    if rs.group_type() != GroupType::A {
        return Err(Error::OutOfScope("stratum steps are defined for type A".into()));
    }
    if j == 0 || j >= k || k > rs.rank() {
        return Err(Error::UnsupportedShape(format!("invalid stratum step k={}, j={}", k, j)));
    }
    check_borel_shape(a)?;
    if !a.cartan_is_zero() {
        return Err(Error::UnsupportedShape("Cartan part must be cleared first".into()));
    }
    let gammas = rs.gammas();
    let lower = rs.subsystem(k);
    for s in a.support().into_iter().filter(|s| s.negative) {
        let r = &rs.positive_roots()[s.index];
        let in_gamma_k = gammas[k..].contains(r);
        let in_phi_k = lower.contains(&r);
        let stratum_done = rs.stratum(k).contains(&r) && r.height() < j as i64;
        if !(in_gamma_k || in_phi_k) || stratum_done {
            return Err(Error::UnsupportedShape(format!(
                "unexpected coefficient on X[-{}] before step k={}, j={}",
                r, k, j
            )));
        }
    }

    let alpha = rs.find(&rs.stratum_root(k, j)?.neg()).expect("negative root");
    let s = rs.next_simple(k, j)?;
    let beta = rs.find(&rs.stratum_root(k, j + 1)?.neg()).expect("negative root");
    let simple = SignedRoot::pos(rs.simple_index(s));
    let n = basis
        .structure_constant(beta, simple)
        .ok_or_else(|| Error::VerificationFailed("missing structure constant".into()))?;
    let z = a.coeff(alpha);
    let mut record = GaugeRecord::identity(basis.dim());
    if z.is_zero() {
        return Ok((a.clone(), record));
    }
    let x = z.scale(&q(-n).recip());
    let out = apply_unipotent(a, beta, &x);
    record.push(GaugeFactor::unipotent(beta, x, &basis));
    Ok((out, record))
}

/// Normal form for the default parameter roots of the basis.
pub fn reduce_to_normal_form(a: &LieElement) -> Result<NormalFormResult> {
    let gamma = a.basis().root_system().parameter_roots();
    reduce_with_gamma(a, &gamma)
}

/// Normal form with an explicit choice of parameter roots (stored
/// positive, in parameter order).
pub fn reduce_with_gamma(a: &LieElement, gamma: &[Root]) -> Result<NormalFormResult> {
    let basis = a.basis().clone();
    let rs = basis.root_system();
    if gamma.len() != rs.rank() || gamma.iter().any(|g| !g.is_positive() || !rs.is_root(g)) {
        return Err(Error::DegenerateInput("parameter roots must be l positive roots".into()));
    }
    let gamma_idx: Vec<usize> = gamma.iter().map(|g| rs.find(g).expect("root").index).collect();

    let mut intermediates = vec![a.clone()];
    let (mut cur, mut record) = clear_cartan(a)?;
    intermediates.push(cur.clone());

    let default_gamma = rs.parameter_roots();
    if rs.group_type() == GroupType::A && sorted(gamma) == sorted(&default_gamma) {
        let l = rs.rank();
        for k in (1..=l).rev() {
            for j in 1..k {
                let (next, step) = clear_stratum_step(&cur, k, j)?;
                if !step.factors.is_empty() {
                    record = record.then(step);
                    cur = next;
                    intermediates.push(cur.clone());
                }
            }
        }
    } else {
        let (next, rec, steps) = level_driver(&cur, &gamma_idx)?;
        record = record.then(rec);
        cur = next;
        intermediates.extend(steps);
    }

    for s in cur.support() {
        let ok = (!s.negative && rs.positive_roots()[s.index].height() == 1)
            || (s.negative && gamma_idx.contains(&s.index));
        if !ok || !cur.cartan_is_zero() {
            return Err(Error::VerificationFailed(format!(
                "reduction left a coefficient on X[{}]",
                rs.root(s)
            )));
        }
    }
    let specialization = gamma_idx
        .iter()
        .map(|&i| cur.coeff(SignedRoot::neg(i)).clone())
        .collect();
    Ok(NormalFormResult {
        normal: cur,
        gauge: record,
        specialization,
        intermediates,
    })
}

fn sorted(v: &[Root]) -> Vec<Root> {
    let mut v = v.to_vec();
    v.sort();
    v
}

/// Weighted count of nonzero coefficients on negative roots outside Γ.
fn potential(a: &LieElement, gamma_idx: &[usize]) -> i64 {
    let rs = a.basis().root_system();
    a.support()
        .into_iter()
        .filter(|s| s.negative && !gamma_idx.contains(&s.index))
        .map(|s| rs.positive_roots()[s.index].height())
        .sum()
}

/// Height-by-height elimination for arbitrary types. At level `j` the
/// gauges `U_β(x_β)` with `ht(β) = -(j+1)` change the height `-j`
/// coefficients by the linear map `x -> Σ N(β, α_i) x_β`, so each level is
/// one exact rational linear solve. Deeper levels absorb the side effects.
fn level_driver(
    a: &LieElement,
    gamma_idx: &[usize],
) -> Result<(LieElement, GaugeRecord, Vec<LieElement>)> {
    let basis = a.basis().clone();
    let rs = basis.root_system();
    let max_height = rs.highest_root().height();
    let bound = 2 * rs.num_positive();
    let mut cur = a.clone();
    let mut record = GaugeRecord::identity(basis.dim());
    let mut steps = Vec::new();
    let mut pot = potential(&cur, gamma_idx);
    let mut passes = 0;
    while pot > 0 {
        if passes >= bound {
            return Err(Error::NonTermination(format!("exceeded {} passes", bound)));
        }
        passes += 1;
        for j in 1..max_height {
            let targets: Vec<usize> = (0..rs.num_positive())
                .filter(|&k| rs.positive_roots()[k].height() == j && !gamma_idx.contains(&k))
                .collect();
            if targets.iter().all(|&k| cur.coeff(SignedRoot::neg(k)).is_zero()) {
                continue;
            }
            let unknowns: Vec<usize> = (0..rs.num_positive())
                .filter(|&k| rs.positive_roots()[k].height() == j + 1)
                .collect();
            // response[t][u]: change of z_{-target} per unit x_{-unknown}
            let response: Vec<Vec<Scalar>> = targets
                .iter()
                .map(|&t| {
                    unknowns
                        .iter()
                        .map(|&u| {
                            let beta = SignedRoot::neg(u);
                            (0..rs.rank())
                                .filter_map(|i| {
                                    let simple = SignedRoot::pos(rs.simple_index(i));
                                    let sum = rs.root(beta).add(&rs.simple(i));
                                    (rs.find(&sum) == Some(SignedRoot::neg(t)))
                                        .then(|| basis.structure_constant(beta, simple))
                                        .flatten()
                                })
                                .map(q)
                                .fold(Scalar::zero(), |acc, v| acc + v)
                        })
                        .collect()
                })
                .collect();
            let rhs: Vec<FieldElem> = targets
                .iter()
                .map(|&t| cur.coeff(SignedRoot::neg(t)).neg())
                .collect();
            let xs = solve_rational(&response, &rhs).ok_or_else(|| {
                Error::NonTermination(format!(
                    "height {} cannot be cleared with the chosen parameter roots",
                    j
                ))
            })?;
            for (&u, x) in unknowns.iter().zip(xs) {
                if x.is_zero() {
                    continue;
                }
                let beta = SignedRoot::neg(u);
                cur = apply_unipotent(&cur, beta, &x);
                record.push(GaugeFactor::unipotent(beta, x, &basis));
                steps.push(cur.clone());
            }
        }
        let next = potential(&cur, gamma_idx);
        if next >= pot && next > 0 {
            return Err(Error::NonTermination("potential did not decrease".into()));
        }
        pot = next;
    }
    Ok((cur, record, steps))
}

/// Solve `M x = b` with `M` rational and `b` over the field by reduced row
/// echelon form; free unknowns are set to zero. `None` if inconsistent.
fn solve_rational(m: &[Vec<Scalar>], b: &[FieldElem]) -> Option<Vec<FieldElem>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut rhs: Vec<FieldElem> = b.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        rhs.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        rhs[r] = rhs[r].scale(&inv);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    a[i][k] = &a[i][k] - &f * &a[r][k];
                }
                rhs[i] = rhs[i].sub(&rhs[r].scale(&f));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if rhs[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![FieldElem::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Some(x)
}

/// Matrix of `X_s` lifted to the field; convenience for callers.
pub fn root_matrix(basis: &ChevalleyBasis, s: SignedRoot) -> Matrix<FieldElem> {
    lift_int(basis.x(s))
}
