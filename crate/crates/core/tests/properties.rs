use lcslab_core::catalog::{get, Params};
use lcslab_core::exactmath::{char_poly, det, int, inverse, pfaffian, rank, Mat, PiScalar, Rat};
use lcslab_core::exterior::{basis_monomials, cediff, twisted_diff, KForm};
use lcslab_core::liealg::LieAlgebra;
use lcslab_core::parse::{parse_form, parse_salamon, print_salamon};
use proptest::prelude::*;

const NAMES: [&str; 12] = [
    "h3", "r3p_0", "n4", "d4", "h3xR", "r3p0xR", "h5", "n1", "n2", "h", "ex6", "kf6",
];

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

fn algebra() -> impl Strategy<Value = LieAlgebra> {
    (0..NAMES.len()).prop_map(|i| get(NAMES[i], &Params::new()).unwrap().algebra)
}

fn form_on(n: usize, k: usize) -> impl Strategy<Value = KForm> {
    let len = basis_monomials(n, k).len();
    prop::collection::vec(small_rat(), len).prop_map(move |v| KForm::from_vector(n, k, &v))
}

fn algebra_with_forms(k1: usize, k2: usize) -> impl Strategy<Value = (LieAlgebra, KForm, KForm)> {
    algebra().prop_flat_map(move |g| {
        let n = g.dim();
        (Just(g), form_on(n, k1.min(n)), form_on(n, k2.min(n)))
    })
}

fn skew(n: usize) -> impl Strategy<Value = Mat<Rat>> {
    prop::collection::vec(small_rat(), n * (n - 1) / 2).prop_map(move |v| {
        let mut m = Mat::zeros(n, n);
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let x = it.next().unwrap();
                m[(i, j)] = x.clone();
                m[(j, i)] = -x;
            }
        }
        m
    })
}

fn square(n: usize) -> impl Strategy<Value = Mat<Rat>> {
    prop::collection::vec(small_rat(), n * n)
        .prop_map(move |v| Mat::from_rows(v.chunks(n).map(|r| r.to_vec()).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_vanishes((g, a, _) in algebra_with_forms(2, 1)) {
        prop_assert!(cediff(&g, &cediff(&g, &a).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn twisted_d_squared_vanishes(g in algebra(), k in 0usize..3, seed in 0usize..64) {
        let closed = g.closed_one_forms();
        let theta = closed.iter().enumerate().fold(KForm::zero(g.dim(), 1), |acc, (i, t)| {
            acc.add(&t.scale(&int(((seed >> i) % 3) as i64 - 1))).unwrap()
        });
        let alpha = KForm::from_vector(g.dim(), k, &vec![int(1); basis_monomials(g.dim(), k).len()]);
        let once = twisted_diff(&g, &theta, &alpha).unwrap();
        prop_assert!(twisted_diff(&g, &theta, &once).unwrap().is_zero());
    }

    #[test]
    fn d_is_an_antiderivation((g, a, b) in algebra_with_forms(1, 2)) {
        let lhs = cediff(&g, &a.wedge(&b).unwrap()).unwrap();
        let rhs = cediff(&g, &a).unwrap().wedge(&b).unwrap()
            .sub(&a.wedge(&cediff(&g, &b).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative((_, a, b) in algebra_with_forms(1, 2)) {
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap());
        prop_assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn forms_round_trip_through_text((g, a, _) in algebra_with_forms(2, 1)) {
        let text = g.render_form(&a);
        prop_assert_eq!(parse_form(&text, g.dim(), g.basis_offset()).unwrap(), a);
    }

    #[test]
    fn salamon_round_trip(g in algebra()) {
        if g.basis_offset() == 1 {
            let back = parse_salamon(&print_salamon(&g)).unwrap();
            prop_assert_eq!(back.bracket_table(), g.bracket_table());
        }
    }

    #[test]
    fn pfaffian_squares_to_det(m in prop_oneof![skew(4), skew(6)]) {
        let pf = pfaffian(&m).unwrap();
        prop_assert_eq!(&pf * &pf, det(&m).unwrap());
    }

    #[test]
    fn cayley_hamilton(m in prop_oneof![square(3), square(4)]) {
        prop_assert!(char_poly(&m).unwrap().eval_mat(&m).is_zero());
    }

    #[test]
    fn inverse_is_two_sided(m in square(4)) {
        if rank(&m) == 4 {
            let inv = inverse(&m).unwrap();
            prop_assert_eq!(m.mul(&inv), Mat::identity(4));
            prop_assert_eq!(inv.mul(&m), Mat::identity(4));
        }
    }

    #[test]
    fn pi_scalars_form_a_ring(a in -5i64..5, b in 1i64..4, e in -3i32..3, c in -5i64..5) {
        let x = PiScalar::frac_pi(a, b, e);
        let y = PiScalar::frac_pi(c, 1, e + 1);
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        prop_assert_eq!(PiScalar::parse(&x.to_string()).unwrap(), x.clone());
        if a != 0 {
            prop_assert_eq!(x.clone() * x.inverse().unwrap(), PiScalar::rational(int(1)));
        }
    }
}
