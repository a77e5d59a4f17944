//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints one PASS/FAIL line; exits nonzero if any fails.

#![allow(clippy::needless_range_loop)]

use std::process::ExitCode;
use std::time::{Duration, Instant};

use chevgauge::algebra::{q, FieldElem, Matrix, Poly};
use chevgauge::chevalley::{ChevalleyBasis, LieElement};
use chevgauge::gauge::{check_certificate, gauge_transform, reduce_to_normal_form, GaugeFactor, NormalFormResult};
use chevgauge::normal_forms::{
    build_parameter_matrix, expand_theorem1, mitschi_singer_matrix, parameter_matrix, sl_genericity_chain,
    verify_annihilator,
};
use chevgauge::roots::{GroupType, SignedRoot};
use chevgauge::selftest::{adjoint_suite, bracket_suite};
use chevgauge::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn criterion1() -> Outcome {
    let mut shapes = Vec::new();
    shapes.extend((1..=5).map(|l| (GroupType::A, l)));
    shapes.extend((2..=4).map(|l| (GroupType::B, l)));
    shapes.extend((2..=4).map(|l| (GroupType::C, l)));
    shapes.extend((2..=4).map(|l| (GroupType::D, l)));
    shapes.push((GroupType::G2, 2));
    let mut checks = 0;
    for (gt, l) in shapes {
        let basis = ChevalleyBasis::new(gt, l).map_err(err)?;
        let rep = bracket_suite(&basis);
        ensure(rep.passed(), || rep.to_string())?;
        checks += rep.checks;
    }
    Ok(format!("{} bracket relations", checks))
}

fn criterion2() -> Outcome {
    let mut checks = 0;
    for (gt, l) in [(GroupType::A, 1), (GroupType::A, 2), (GroupType::A, 3), (GroupType::G2, 2)] {
        let basis = ChevalleyBasis::new(gt, l).map_err(err)?;
        let rep = adjoint_suite(&basis);
        ensure(rep.passed(), || rep.to_string())?;
        checks += rep.checks;
    }
    Ok(format!("{} (root, basis element) pairs", checks))
}

fn criterion3() -> Outcome {
    for l in 1..=5 {
        let a = build_parameter_matrix(GroupType::A, l).map_err(err)?;
        let ode = expand_theorem1(GroupType::A, l).map_err(err)?;
        let cert = verify_annihilator(&a, &ode, false).map_err(err)?;
        ensure(cert.is_valid() && cert.epsilon.iter().all(|&e| e == 1), || format!("A{}", l))?;
    }
    Ok("A1..A5, eps = +1".into())
}

fn criterion4() -> Outcome {
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    for (gt, l) in [(GroupType::C, 2), (GroupType::C, 3), (GroupType::B, 2), (GroupType::B, 3)] {
        let a = build_parameter_matrix(gt, l).map_err(err)?;
        let ode = expand_theorem1(gt, l).map_err(err)?;
        match verify_annihilator(&a, &ode, true) {
            Ok(cert) if cert.is_valid() => notes.push(format!("{}{} eps={:?}", gt, l, cert.epsilon)),
            Ok(_) => failures.push(format!("{}{}: invalid certificate", gt, l)),
            Err(e) => failures.push(format!("{}{}: {}", gt, l, e)),
        }
    }
    ensure(failures.is_empty(), || format!("{} (passed: {})", failures.join("; "), notes.join(", ")))?;
    Ok(notes.join(", "))
}

fn criterion5() -> Outcome {
    let basis = ChevalleyBasis::new(GroupType::G2, 2).map_err(err)?;
    let ode = expand_theorem1(GroupType::G2, 2).map_err(err)?;
    let candidates = basis.root_system().g2_gamma_candidates().map_err(err)?;
    let mut passing = Vec::new();
    let mut report = Vec::new();
    for gamma in &candidates {
        let a = parameter_matrix(&basis, gamma);
        let label = gamma.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        match verify_annihilator(&a, &ode, true) {
            Ok(cert) if cert.is_valid() => passing.push(format!("{{{}}} eps={:?}", label, cert.epsilon)),
            Ok(_) => report.push(format!("{{{}}}: invalid certificate", label)),
            Err(e) => report.push(format!("{{{}}}: {}", label, e)),
        }
    }
    ensure(passing.len() == 1, || {
        format!("{} candidate sets pass; {}", passing.len(), report.join("; "))
    })?;
    Ok(passing.remove(0))
}

fn random_poly(rng: &mut ChaCha8Rng) -> FieldElem {
    let p = (0..=2).fold(Poly::zero(), |acc, k| {
        acc.add(&Poly::z().pow(k).scale(&q(rng.gen_range(-3..=3))))
    });
    FieldElem::from_poly(p)
}

fn normal_support_ok(res: &NormalFormResult) -> bool {
    let normal = &res.normal;
    let rs = normal.basis().root_system();
    let gamma: Vec<_> = rs.parameter_roots().iter().map(|g| g.neg()).collect();
    normal.cartan_is_zero()
        && rs.all_signed().all(|s| {
            let r = rs.root(s);
            let c = normal.coeff(s);
            if r.is_positive() {
                if r.height() == 1 {
                    c.is_one()
                } else {
                    c.is_zero()
                }
            } else {
                gamma.contains(&r) || c.is_zero()
            }
        })
}

fn all_polynomial(m: &Matrix<FieldElem>) -> bool {
    m.entries().all(|(_, _, v)| v.is_polynomial())
}

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let bases: Vec<_> = (1..=4)
        .map(|l| ChevalleyBasis::new(GroupType::A, l))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    for trial in 0..50 {
        let basis = &bases[rng.gen_range(0..4)];
        let mut a = LieElement::a_delta(basis);
        for i in 0..basis.rank() {
            a.set_cartan(i, random_poly(&mut rng));
        }
        for k in 0..basis.root_system().num_positive() {
            a.set(SignedRoot::neg(k), random_poly(&mut rng));
        }
        let res = reduce_to_normal_form(&a).map_err(|e| format!("trial {}: {}", trial, e))?;
        let got = gauge_transform(a.matrix(), &res.gauge.total).map_err(err)?;
        ensure(&got == res.normal.matrix(), || format!("trial {}: certificate mismatch", trial))?;
        ensure(normal_support_ok(&res), || format!("trial {}: support is not delta and gamma", trial))?;
        let poly = all_polynomial(&res.gauge.total)
            && res.gauge.factors.iter().all(|f| all_polynomial(&f.matrix))
            && res.intermediates.iter().all(LieElement::is_polynomial);
        ensure(poly, || format!("trial {}: denominators appeared", trial))?;
    }
    Ok("50 seeded inputs, ranks 1..4".into())
}

fn mitschi_singer_run(l: usize) -> Result<String, String> {
    let h = vec![q(1); l];
    let a = mitschi_singer_matrix(GroupType::A, l, &h).map_err(err)?;
    let res = reduce_to_normal_form(&a).map_err(err)?;
    res.verify(&a).map_err(err)?;
    ensure(normal_support_ok(&res), || format!("A{}: unexpected support", l))?;
    let f: Vec<String> = res.specialization.iter().map(ToString::to_string).collect();
    Ok(format!("A{}: f = ({})", l, f.join(", ")))
}

fn criterion7() -> Outcome {
    let mut lines = Vec::new();
    for l in 1..=3 {
        let first = mitschi_singer_run(l)?;
        let second = mitschi_singer_run(l)?;
        ensure(first == second, || format!("A{}: output differs between runs", l))?;
        lines.push(first);
    }
    Ok(lines.join("; "))
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for l in 1..=2usize {
        let n = l + 1;
        let z = FieldElem::z();
        let f = z.pow(n as i32).map_err(err)?;
        let g = z.inv().map_err(err)?;
        let mut a: Vec<FieldElem> = (0..l).map(|_| random_poly(&mut rng)).collect();
        a.push(FieldElem::from_int(n as i64).div(&z).map_err(err)?);
        let chain = sl_genericity_chain(&a, &f, &g).map_err(err)?;

        // First displayed shape: superdiagonal 1 except f in the last
        // column, bottom row a_i/f, zero corner.
        for i in 0..n {
            for j in 0..n {
                let want = if j == i + 1 {
                    if j == l { f.clone() } else { FieldElem::one() }
                } else if i == l && j < l {
                    a[j].div(&f).map_err(err)?
                } else {
                    FieldElem::zero()
                };
                ensure(*chain.a1.get(i, j) == want, || format!("l={}: A1 entry ({}, {})", l, i + 1, j + 1))?;
            }
        }
        ensure(chain.a1.trace().is_zero(), || format!("l={}: A1 trace", l))?;

        // Second displayed shape.
        let df = f.derive().div(&f).map_err(err)?;
        let diag = df.scale(&q(-1)).scale(&q(n as i64).recip());
        let corner = df.scale(&(q(l as i64) / q(n as i64)));
        for i in 0..n {
            for j in 0..n {
                let want = if j == i + 1 {
                    FieldElem::one()
                } else if i == j {
                    if i == l { corner.clone() } else { diag.clone() }
                } else if i == l {
                    a[j].clone()
                } else {
                    FieldElem::zero()
                };
                ensure(*chain.a2.get(i, j) == want, || format!("l={}: A2 entry ({}, {})", l, i + 1, j + 1))?;
            }
        }

        for i in 0..n {
            for j in 0..n {
                let v = chain.final_matrix.get(i, j);
                let ok = if j == i + 1 {
                    v.is_one()
                } else if i == l && j < l {
                    true
                } else {
                    v.is_zero()
                };
                ensure(ok, || format!("l={}: final entry ({}, {})", l, i + 1, j + 1))?;
            }
        }
        check_certificate(&chain.input, &chain.gauge, &chain.final_matrix).map_err(err)?;
    }
    Ok("l = 1, 2 certified".into())
}

fn criterion9() -> Outcome {
    let a = build_parameter_matrix(GroupType::A, 3).map_err(err)?;
    let mut ode = expand_theorem1(GroupType::A, 3).map_err(err)?;
    // t1 -> t1 + 1 in the coefficient of y.
    ode.coeffs[0] = ode.coeffs[0].sub(&FieldElem::one());
    ensure(
        matches!(verify_annihilator(&a, &ode, true), Err(Error::VerificationFailed(_))),
        || "perturbed equation accepted".into(),
    )?;

    let basis = ChevalleyBasis::new(GroupType::A, 2).map_err(err)?;
    let mut input = LieElement::a_delta(&basis);
    input.set_cartan(0, FieldElem::z());
    input.set(SignedRoot::neg(0), FieldElem::z());
    let res = reduce_to_normal_form(&input).map_err(err)?;
    check_certificate(input.matrix(), &res.gauge, res.normal.matrix()).map_err(err)?;

    let mut tampered = res.gauge.clone();
    let k = tampered.factors.len() / 2;
    let root = match &tampered.factors[k].kind {
        chevgauge::gauge::FactorKind::Unipotent { root, .. } => *root,
        other => return Err(format!("unexpected factor {:?}", other)),
    };
    tampered.factors[k] = GaugeFactor::unipotent(root, FieldElem::from_int(7), &basis);
    ensure(
        check_certificate(input.matrix(), &tampered, res.normal.matrix()).is_err(),
        || "tampered factor accepted".into(),
    )?;
    let recomputed = tampered
        .factors
        .iter()
        .fold(Matrix::identity(basis.dim()), |acc, f| f.matrix.mul(&acc));
    tampered.total = recomputed;
    ensure(
        check_certificate(input.matrix(), &tampered, res.normal.matrix()).is_err(),
        || "tampered factor with consistent total accepted".into(),
    )?;
    Ok("perturbation and tampering detected".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("bracket relations of the Chevalley bases", criterion1, Duration::from_secs(10)),
        ("closed-form adjoint action vs conjugation", criterion2, Duration::from_secs(30)),
        ("type A parameter equations annihilate A(t)", criterion3, Duration::from_secs(5)),
        ("types C and B parameter equations", criterion4, Duration::from_secs(120)),
        ("G2 parameter equation with candidate search", criterion5, Duration::from_secs(300)),
        ("randomized type A reduction certificates", criterion6, Duration::from_secs(120)),
        ("z^2-specialization demo", criterion7, Duration::from_secs(60)),
        ("SL genericity chain", criterion8, Duration::from_secs(30)),
        ("negative controls", criterion9, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= budget {
                Ok(msg)
            } else {
                Err(format!("took {:.2?}, budget {:?}", elapsed, budget))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS criterion {}: {} [{:.2?}] {}", i + 1, name, elapsed, msg),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {}: {} [{:.2?}] {}", i + 1, name, elapsed, msg);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
