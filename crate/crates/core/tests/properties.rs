use chevgauge::algebra::{bareiss_det, ff_det, parse_field_elem, q, FieldElem, Matrix, Monomial, Poly, Var};
use chevgauge::chevalley::{unipotent, ChevalleyBasis, LieElement};
use chevgauge::gauge::{gauge_transform, log_derivative, reduce_to_normal_form};
use chevgauge::normal_forms::{verify_annihilator_matrix, ScalarODE};
use chevgauge::roots::{GroupType, SignedRoot};
use proptest::prelude::*;

fn var_strategy() -> impl Strategy<Value = Var> {
    prop_oneof![
        Just(Var::Z),
        (1u32..=3, 0u32..=2).prop_map(|(i, o)| Var::t_deriv(i, o)),
    ]
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, prop::collection::vec((var_strategy(), 1u32..=2), 0..=2)), 0..=4)
        .prop_map(|terms| {
            Poly::from_terms(
                terms
                    .into_iter()
                    .map(|(c, pairs)| (Monomial::from_pairs(pairs), q(c))),
            )
        })
}

fn z_poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 1..=3).prop_map(|cs| {
        cs.iter()
            .enumerate()
            .fold(Poly::zero(), |acc, (k, &c)| acc.add(&Poly::z().pow(k as u32).scale(&q(c))))
    })
}

fn nonzero_poly() -> impl Strategy<Value = Poly> {
    poly_strategy().prop_filter("nonzero", |p| !p.is_zero())
}

/// Denominators stay in `Q[z]`, as they do for connections over `Q(z)`.
fn field_strategy() -> impl Strategy<Value = FieldElem> {
    (poly_strategy(), z_poly_strategy().prop_filter("nonzero", |p| !p.is_zero()))
        .prop_map(|(n, d)| FieldElem::new(n, d).unwrap())
}

fn laplace(m: &Matrix<FieldElem>) -> FieldElem {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = FieldElem::zero();
    for j in 0..n {
        let minor = Matrix::from_rows(
            (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m.get(i, c).clone()).collect())
                .collect(),
        )
        .unwrap();
        let term = m.get(0, j).mul(&laplace(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_rule(p in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(p.mul(&r).derive(), p.derive().mul(&r).add(&p.mul(&r.derive())));
    }

    #[test]
    fn derivation_is_additive(p in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(p.add(&r).derive(), p.derive().add(&r.derive()));
    }

    #[test]
    fn field_equality_by_cross_multiplication(n in poly_strategy(), d in nonzero_poly(), c in nonzero_poly()) {
        let a = FieldElem::new(n.clone(), d.clone()).unwrap();
        let b = FieldElem::new(n.mul(&c), d.mul(&c)).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.numer().mul(b.denom()), b.numer().mul(a.denom()));
    }

    #[test]
    fn quotient_rule(a in field_strategy(), b in field_strategy()) {
        prop_assume!(!b.is_zero());
        let lhs = a.div(&b).unwrap().derive();
        let rhs = a.derive().mul(&b).sub(&a.mul(&b.derive())).div(&b.mul(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn field_inverse(a in field_strategy()) {
        prop_assume!(!a.is_zero());
        prop_assert!(a.mul(&a.inv().unwrap()).is_one());
    }

    #[test]
    fn display_parses_back(a in field_strategy()) {
        prop_assert_eq!(parse_field_elem(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn ff_det_matches_cofactor(entries in prop::collection::vec(field_strategy(), 9)) {
        let m = Matrix::from_rows(entries.chunks(3).map(<[FieldElem]>::to_vec).collect()).unwrap();
        prop_assert_eq!(ff_det(&m).unwrap(), laplace(&m));
    }

    #[test]
    fn bareiss_matches_cofactor(entries in prop::collection::vec(poly_strategy(), 16)) {
        let m = Matrix::from_rows(entries.chunks(4).map(<[Poly]>::to_vec).collect()).unwrap();
        let fm = m.map(|p| FieldElem::from_poly(p.clone()));
        prop_assert_eq!(FieldElem::from_poly(bareiss_det(&m).unwrap()), laplace(&fm));
    }
}

fn type_a_input(basis: &std::sync::Arc<ChevalleyBasis>, cart: &[Poly], neg: &[Poly]) -> LieElement {
    let mut a = LieElement::a_delta(basis);
    for (i, p) in cart.iter().enumerate().take(basis.rank()) {
        a.set_cartan(i, FieldElem::from_poly(p.clone()));
    }
    let np = basis.root_system().num_positive();
    for (k, p) in neg.iter().enumerate().take(np) {
        a.set(SignedRoot::neg(k), FieldElem::from_poly(p.clone()));
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gauge_cocycle(
        l in 1usize..=3,
        r1 in 0usize..6, r2 in 0usize..6,
        x1 in z_poly_strategy(), x2 in z_poly_strategy(),
        cart in prop::collection::vec(z_poly_strategy(), 3),
    ) {
        let basis = ChevalleyBasis::new(GroupType::A, l).unwrap();
        let signed: Vec<SignedRoot> = basis.root_system().all_signed().collect();
        let b1 = unipotent(signed[r1 % signed.len()], &FieldElem::from_poly(x1), &basis);
        let b2 = unipotent(signed[r2 % signed.len()], &FieldElem::from_poly(x2), &basis);
        let a = type_a_input(&basis, &cart, &[]);
        let step = gauge_transform(&gauge_transform(a.matrix(), &b1).unwrap(), &b2).unwrap();
        prop_assert_eq!(&step, &gauge_transform(a.matrix(), &b2.mul(&b1)).unwrap());
        let lhs = log_derivative(&b2.mul(&b1)).unwrap();
        let rhs = log_derivative(&b2).unwrap()
            .add(&b2.mul(&log_derivative(&b1).unwrap()).mul(&b2.inverse().unwrap()));
        prop_assert_eq!(lhs, rhs);
        // Unipotent gauges have determinant 1 and so preserve the trace.
        prop_assert_eq!(step.trace(), a.matrix().trace());
    }

    #[test]
    fn reduction_certifies(
        l in 1usize..=3,
        cart in prop::collection::vec(z_poly_strategy(), 3),
        neg in prop::collection::vec(z_poly_strategy(), 6),
    ) {
        let basis = ChevalleyBasis::new(GroupType::A, l).unwrap();
        let a = type_a_input(&basis, &cart, &neg);
        let res = reduce_to_normal_form(&a).unwrap();
        prop_assert!(res.verify(&a).is_ok());
        prop_assert!(res.normal.cartan_is_zero());
        prop_assert!(res.normal.is_polynomial());
        prop_assert_eq!(res.normal.matrix().trace(), FieldElem::zero());
    }

    #[test]
    fn companion_tautology(b in prop::collection::vec(poly_strategy(), 1..=6)) {
        let n = b.len();
        let mut m = Matrix::<FieldElem>::zeros(n, n);
        for i in 0..n - 1 {
            m.set(i, i + 1, FieldElem::one());
        }
        for (j, p) in b.iter().enumerate() {
            m.set(n - 1, j, FieldElem::from_poly(p.clone()));
        }
        let mut coeffs: Vec<FieldElem> = b.iter().map(|p| FieldElem::from_poly(p.neg())).collect();
        coeffs.push(FieldElem::one());
        let cert = verify_annihilator_matrix(&m, &ScalarODE::new(coeffs).unwrap(), false, 0).unwrap();
        prop_assert!(cert.is_valid());
        prop_assert!(!cert.rank_witness.is_zero());
    }
}
