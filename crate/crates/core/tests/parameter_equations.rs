//! The expanded parameter equations against their nested templates,
//! applied directly to a fresh differential indeterminate `y`.

use chevgauge::algebra::FieldElem;
use chevgauge::normal_forms::{build_parameter_matrix, expand_theorem1, ScalarODE};
use chevgauge::roots::GroupType;
use chevgauge::Error;

/// `y^(k)` for the fresh symbol `y = t_9`.
fn y(k: u32) -> FieldElem {
    FieldElem::t(9).derive_n(k)
}

fn t(i: usize) -> FieldElem {
    FieldElem::t(i as u32)
}

/// `(t_i y^(a))^(b)`
fn tyd(i: usize, a: usize, b: usize) -> FieldElem {
    t(i).mul(&y(a as u32)).derive_n(b as u32)
}

fn apply(ode: &ScalarODE) -> FieldElem {
    ode.coeffs
        .iter()
        .enumerate()
        .fold(FieldElem::zero(), |acc, (k, a)| acc.add(&a.mul(&y(k as u32))))
}

fn sign(i: usize) -> i64 {
    if i % 2 == 1 {
        1
    } else {
        -1
    }
}

fn template(gt: GroupType, l: usize) -> FieldElem {
    let s = |i: usize, e: FieldElem| e.scale(&chevgauge::algebra::q(sign(i)));
    match gt {
        GroupType::A => (1..=l).fold(y(l as u32 + 1), |acc, i| acc.sub(&tyd(i, i - 1, 0))),
        GroupType::C => (1..=l).fold(y(2 * l as u32), |acc, i| acc.sub(&s(i, tyd(i, l - i, l - i)))),
        GroupType::B => (1..=l).fold(y(2 * l as u32 + 1), |acc, i| {
            acc.sub(&s(i, tyd(i, l + 1 - i, l - i).add(&tyd(i, l - i, l + 1 - i))))
        }),
        GroupType::G2 => {
            let two = FieldElem::from_int(2);
            let nested = t(2).mul(&t(2).mul(&y(1)).derive()).derive();
            y(7).add(&two.mul(&t(1)).mul(&y(1)))
                .add(&two.mul(&tyd(1, 0, 1)))
                .add(&two.mul(&tyd(2, 4, 1)))
                .add(&tyd(2, 1, 4))
                .sub(&two.mul(&nested))
        }
        GroupType::D => unreachable!(),
    }
}

#[test]
fn expansions_reproduce_templates() {
    let cases = [
        (GroupType::A, 1..=5),
        (GroupType::B, 2..=4),
        (GroupType::C, 2..=4),
        (GroupType::G2, 2..=2),
    ];
    for (gt, ranks) in cases {
        for l in ranks {
            let ode = expand_theorem1(gt, l).unwrap();
            assert!(ode.is_monic(), "{}{}", gt, l);
            assert_eq!(apply(&ode), template(gt, l), "{}{}", gt, l);
        }
    }
}

#[test]
fn orders_match_representation_dimension() {
    for (gt, l) in [(GroupType::A, 3), (GroupType::B, 2), (GroupType::C, 3), (GroupType::G2, 2)] {
        let a = build_parameter_matrix(gt, l).unwrap();
        assert_eq!(expand_theorem1(gt, l).unwrap().order(), a.matrix().rows());
    }
}

#[test]
fn parameter_matrix_support() {
    for (gt, l) in [(GroupType::B, 3), (GroupType::C, 2), (GroupType::D, 4), (GroupType::G2, 2)] {
        let a = build_parameter_matrix(gt, l).unwrap();
        let rs = a.basis().root_system();
        assert!(a.cartan_is_zero());
        let gamma = rs.parameter_roots();
        for s in rs.all_signed() {
            let r = rs.root(s);
            let c = a.coeff(s);
            if r.is_positive() {
                assert_eq!(c.is_one(), r.height() == 1);
                assert_eq!(c.is_zero(), r.height() != 1);
            } else if let Some(i) = gamma.iter().position(|g| *g == r.neg()) {
                assert_eq!(*c, t(i + 1));
            } else {
                assert!(c.is_zero());
            }
        }
    }
}

#[test]
fn type_d_scalar_form_is_out_of_scope() {
    assert!(build_parameter_matrix(GroupType::D, 4).is_ok());
    assert!(matches!(expand_theorem1(GroupType::D, 4), Err(Error::OutOfScope(_))));
}
