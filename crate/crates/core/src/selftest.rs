//! Built-in invariant suites: bracket relations of the Chevalley bases,
//! the closed-form adjoint action against matrix conjugation, the gauge
//! cocycle identities, and the companion-matrix annihilator tautology.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{FieldElem, Matrix, Poly};
use crate::chevalley::{ad_unipotent, decompose, unipotent, ChevalleyBasis, LieElement};
use crate::gauge::{gauge_transform, log_derivative};
use crate::normal_forms::{verify_annihilator_matrix, ScalarODE};
use crate::roots::{cartan_matrix, GroupType, SignedRoot};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: impl Into<String>) -> SuiteReport {
        SuiteReport {
            name: name.into(),
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn merge(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{} {} ({} checks", status, self.name, self.checks)?;
        if !self.failures.is_empty() {
            write!(f, ", {} failed; first: {}", self.failures.len(), self.failures[0])?;
        }
        write!(f, ")")
    }
}

/// The supported (type, rank) pairs with rank in `1..=max_rank`.
pub fn supported_shapes(max_rank: usize) -> Vec<(GroupType, usize)> {
    GroupType::ALL
        .into_iter()
        .flat_map(|gt| (1..=max_rank).map(move |l| (gt, l)))
        .filter(|&(gt, l)| cartan_matrix(gt, l).is_ok())
        .collect()
}

/// `[H_i, X_α] = ⟨α, α_i⟩ X_α`, `[X_α, X_{-α}] = H_α`, `[H_i, H_j] = 0` and
/// `[X_α, X_β] = ±(r+1) X_{α+β}` (zero when `α+β` is not a root), checked
/// on the integer matrices over all of Φ.
pub fn bracket_suite(basis: &ChevalleyBasis) -> SuiteReport {
    let rs = basis.root_system();
    let mut rep = SuiteReport::new(format!("bracket {}{}", basis.group_type(), basis.rank()));
    let signed: Vec<SignedRoot> = rs.all_signed().collect();
    let l = basis.rank();

    for i in 0..l {
        for j in 0..l {
            let br = basis.h(i).bracket(basis.h(j));
            rep.check(br.is_zero(), || format!("[H{}, H{}] != 0", i + 1, j + 1));
        }
        for &s in &signed {
            let a = rs.root(s);
            let c = rs.cartan_integer(&a, &rs.simple(i));
            let br = basis.h(i).bracket(basis.x(s));
            rep.check(br == basis.x(s).scale(&c), || {
                format!("[H{}, X[{}]] != {} X[{}]", i + 1, a, c, a)
            });
        }
    }

    for &a in &signed {
        for &b in &signed {
            let ra = rs.root(a);
            let rb = rs.root(b);
            let br = basis.x(a).bracket(basis.x(b));
            if b == a.opposite() {
                rep.check(br == basis.coroot_matrix(a), || format!("[X[{}], X[{}]] != H", ra, rb));
                continue;
            }
            if a == b {
                continue;
            }
            let sum = ra.add(&rb);
            match rs.find(&sum) {
                None => rep.check(br.is_zero(), || format!("[X[{}], X[{}]] != 0", ra, rb)),
                Some(c) => {
                    let (r, _) = rs.root_string(&rb, &ra).expect("non-proportional roots");
                    let want = r + 1;
                    let ok = br == basis.x(c).scale(&want) || br == basis.x(c).scale(&-want);
                    rep.check(ok, || {
                        format!("[X[{}], X[{}]] is not ±{} X[{}]", ra, rb, want, sum)
                    });
                }
            }
        }
    }
    rep
}

fn basis_elements(basis: &Arc<ChevalleyBasis>) -> Vec<LieElement> {
    let mut out = Vec::new();
    for i in 0..basis.rank() {
        let mut e = LieElement::zero(basis);
        e.set_cartan(i, FieldElem::one());
        out.push(e);
    }
    for s in basis.root_system().all_signed() {
        let mut e = LieElement::zero(basis);
        e.set(s, FieldElem::one());
        out.push(e);
    }
    out
}

/// A symbol that does not occur in constant basis matrices.
fn fresh_symbol() -> FieldElem {
    FieldElem::t(97)
}

/// Closed-form `Ad(U_β(x))` against `decompose(U_β(x) E U_β(-x))` with a
/// symbolic `x`, for every root `β` and basis element `E`.
pub fn adjoint_suite(basis: &Arc<ChevalleyBasis>) -> SuiteReport {
    let mut rep = SuiteReport::new(format!("adjoint {}{}", basis.group_type(), basis.rank()));
    let x = fresh_symbol();
    let elements = basis_elements(basis);
    for beta in basis.root_system().all_signed() {
        let u = unipotent(beta, &x, basis);
        let u_inv = unipotent(beta, &x.neg(), basis);
        for e in &elements {
            let closed = ad_unipotent(beta, &x, e);
            let conj = u.mul(e.matrix()).mul(&u_inv);
            let ok = match decompose(&conj, basis) {
                Ok(d) => d == closed,
                Err(_) => false,
            };
            rep.check(ok, || {
                format!("Ad(U[{}](x)) on {} disagrees", basis.root_system().root(beta), e)
            });
        }
    }
    rep
}

/// `B₂·(B₁·A) = (B₂B₁)·A` and `lδ(B₂B₁) = lδ(B₂) + B₂ lδ(B₁) B₂⁻¹` on
/// unipotent and diagonal gauges with non-constant entries.
pub fn cocycle_suite(basis: &Arc<ChevalleyBasis>) -> SuiteReport {
    let mut rep = SuiteReport::new(format!("cocycle {}{}", basis.group_type(), basis.rank()));
    let n = basis.dim();
    let rs = basis.root_system();
    let z = FieldElem::z();
    let t1 = FieldElem::t(1);

    let mut a = LieElement::a_delta(basis);
    for (k, s) in rs.all_signed().filter(|s| s.negative).enumerate() {
        a.set(s, t1.add(&FieldElem::from_int(k as i64)));
    }
    a.set_cartan(0, z.clone());
    let a = a.matrix().clone();

    let diag = {
        let mut d = Matrix::<FieldElem>::identity(n);
        d.set(0, 0, z.add(&FieldElem::one()));
        d.set(n - 1, n - 1, z.add(&FieldElem::one()).inv().expect("nonzero"));
        d
    };
    let mut gauges = vec![diag];
    for s in rs.all_signed().take(4) {
        gauges.push(unipotent(s, &z.mul(&t1), basis));
    }

    for b1 in &gauges {
        for b2 in &gauges {
            let b = b2.mul(b1);
            let stepwise = gauge_transform(&a, b1).and_then(|m| gauge_transform(&m, b2));
            let direct = gauge_transform(&a, &b);
            rep.check(matches!((&stepwise, &direct), (Ok(x), Ok(y)) if x == y), || {
                "gauge action is not compatible with products".into()
            });
            let ok = (|| -> crate::Result<bool> {
                let lhs = log_derivative(&b)?;
                let rhs = log_derivative(b2)?.add(&b2.mul(&log_derivative(b1)?).mul(&b2.inverse()?));
                Ok(lhs == rhs)
            })()
            .unwrap_or(false);
            rep.check(ok, || "log-derivative cocycle fails".into());
        }
    }
    rep
}

/// Deterministic polynomial entries for companion matrices.
fn sample_poly(i: usize, n: usize) -> FieldElem {
    let z = Poly::z();
    let t = Poly::t(((i % 3) + 1) as u32);
    let c = (i as i64 * 7 + n as i64 * 3) % 7 - 3;
    let p = z.pow((i % 3) as u32).scale(&crate::algebra::q(c)).add(&t.derive().mul(&Poly::from_int((i % 2) as i64)));
    FieldElem::from_poly(p.add(&Poly::from_int(i as i64 - 2)))
}

/// `verify_annihilator` on companion matrices with bottom row `b`
/// against `y^(n) - Σ b_i y^(i-1)`, for `n ≤ max_n`.
pub fn companion_suite(max_n: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("companion");
    for n in 1..=max_n {
        let b: Vec<FieldElem> = (0..n).map(|i| sample_poly(i, n)).collect();
        let mut m = Matrix::<FieldElem>::zeros(n, n);
        for i in 0..n - 1 {
            m.set(i, i + 1, FieldElem::one());
        }
        for (j, v) in b.iter().enumerate() {
            m.set(n - 1, j, v.clone());
        }
        let mut coeffs: Vec<FieldElem> = b.iter().map(FieldElem::neg).collect();
        coeffs.push(FieldElem::one());
        let ok = ScalarODE::new(coeffs)
            .and_then(|ode| verify_annihilator_matrix(&m, &ode, false, 0))
            .is_ok_and(|c| c.is_valid());
        rep.check(ok, || format!("companion of size {} not annihilated", n));
    }
    rep
}

/// All suites at ranks up to `max_rank`, one report per suite.
pub fn run_selftest(max_rank: usize) -> Vec<SuiteReport> {
    let mut bracket = SuiteReport::new("bracket relations");
    let mut adjoint = SuiteReport::new("adjoint closed form");
    let mut cocycle = SuiteReport::new("gauge cocycle");
    for (gt, l) in supported_shapes(max_rank) {
        match ChevalleyBasis::new(gt, l) {
            Ok(basis) => {
                bracket.merge(bracket_suite(&basis));
                adjoint.merge(adjoint_suite(&basis));
                cocycle.merge(cocycle_suite(&basis));
            }
            Err(e) => bracket.check(false, || format!("{}{}: {}", gt, l, e)),
        }
    }
    vec![bracket, adjoint, cocycle, companion_suite(6)]
}
