use proptest::prelude::*;

use ruled_locus::doc::{curve_to_json, parse_json, surface_from_json, surface_to_json, to_canonical_string};
use ruled_locus::forms::{apolar_contract, descend_biform, lift_curve, Mat2};
use ruled_locus::generate::{gen_rank5, gen_type_a};
use ruled_locus::locus::{phi, phi_on_normal_curve, psi_biform};
use ruled_locus::poncelet::{find_triangles_bruteforce, is_triangle, poncelet_curve, random_cubic, Pencil};
use ruled_locus::{BinaryForm, Field, Matrix, P1Point, PlaneCurve};

fn fields() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime { p: 10007 }), Just(Field::Prime { p: 101 })]
}

fn curve(field: Field, k: usize) -> impl Strategy<Value = PlaneCurve> {
    prop::collection::vec(-20i64..20, (k + 1) * (k + 2) / 2)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(move |c| PlaneCurve::from_ints(field, k, &c))
}

fn form(field: Field, n: usize) -> impl Strategy<Value = BinaryForm> {
    prop::collection::vec(-20i64..20, n + 1).prop_map(move |c| BinaryForm::from_ints(field, &c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn descend_inverts_lift(g in (fields(), 1usize..=8).prop_flat_map(|(f, k)| curve(f, k))) {
        prop_assert_eq!(descend_biform(&lift_curve(&g)).unwrap(), g);
    }

    #[test]
    fn psi_has_degree_d_minus_2_and_phi_contains_normal_curve(d in 3usize..=7, seed in 0u64..1000) {
        let f = Field::Prime { p: 10007 };
        let psi = gen_type_a(f, d, 1 + seed as usize % (d / 2), seed).unwrap().surface;
        prop_assert!(phi_on_normal_curve(&phi(&psi)).is_zero());
        let g = psi_biform(&psi).unwrap();
        prop_assert_eq!(g.degree(), d - 2);
        prop_assert!(!g.is_zero());
    }

    #[test]
    fn splitting_type_matches_exact_and_swaps_under_duality(d in 3usize..=6, seed in 0u64..1000) {
        let f = Field::Prime { p: 10007 };
        let psi = if seed % 2 == 0 {
            gen_type_a(f, d, 1 + seed as usize % (d / 2), seed).unwrap().surface
        } else {
            gen_rank5(f, d, seed).unwrap().surface
        };
        let st = psi.splitting_type().unwrap();
        prop_assert_eq!(st, psi.splitting_type_exact().unwrap());
        let dual = psi.dual().splitting_type().unwrap();
        prop_assert_eq!((dual.a_q, dual.b_k), (st.b_k, st.a_q));
    }

    #[test]
    fn surface_documents_are_byte_stable(d in 2usize..=6, seed in 0u64..1000, f in fields()) {
        let psi = gen_type_a(f, d, 1, seed).unwrap().surface;
        let text = to_canonical_string(&surface_to_json(&psi));
        let back = surface_from_json(&parse_json(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &psi);
        prop_assert_eq!(to_canonical_string(&surface_to_json(&back)), text);
    }

    #[test]
    fn curve_documents_are_projective(g in curve(Field::Rational, 3), c in 1i64..50) {
        let scaled = g.scale(&Field::Rational.int(-c));
        prop_assert_eq!(curve_to_json(&g), curve_to_json(&scaled));
    }

    #[test]
    fn contraction_is_equivariant(
        a in form(Field::Prime { p: 10007 }, 6),
        h in form(Field::Prime { p: 10007 }, 2),
        m in prop::array::uniform4(1i64..100),
    ) {
        let f = Field::Prime { p: 10007 };
        let g: Mat2 = [[f.int(m[0]), f.int(m[1])], [f.int(m[2]), f.int(m[3])]];
        let det = &(&g[0][0] * &g[1][1]) - &(&g[0][1] * &g[1][0]);
        prop_assume!(!det.is_zero());
        let lhs = apolar_contract(&a.substitute(&g), &h.substitute(&g)).unwrap();
        let rhs = apolar_contract(&a, &h).unwrap().substitute(&g);
        prop_assert!(lhs.is_zero() && rhs.is_zero() || lhs.proportional(&rhs).is_some());
    }

    #[test]
    fn poncelet_curve_is_alternating(f0 in form(Field::Rational, 3), g0 in form(Field::Rational, 3), l in -5i64..5) {
        let field = Field::Rational;
        prop_assume!(Pencil::new(f0.clone(), g0.clone()).is_ok());
        let c = poncelet_curve(&Pencil::new(f0.clone(), g0.clone()).unwrap()).unwrap();
        let swapped = poncelet_curve(&Pencil::new(g0.clone(), f0.clone()).unwrap()).unwrap();
        prop_assert_eq!(swapped, c.scale(&field.int(-1)));
        let moved = poncelet_curve(&Pencil::new(f0.clone(), g0.add(&f0.scale(&field.int(l))).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(moved, c);
    }

    #[test]
    fn brute_force_triangles_reverify(seed in 0u64..500, forced in any::<bool>()) {
        let x = random_cubic(Field::Prime { p: 31 }, seed, forced);
        for t in find_triangles_bruteforce(&x).unwrap() {
            prop_assert!(is_triangle(&x, &t));
        }
    }

    #[test]
    fn rank_is_transpose_invariant(rows in prop::collection::vec(prop::collection::vec(-9i64..9, 5), 1..6)) {
        let f = Field::Rational;
        let m = Matrix::from_rows(f, rows.iter().map(|r| r.iter().map(|&x| f.int(x)).collect()).collect()).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in m.kernel() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn lines_meet_iff_on_curve(seed in 0u64..200, s in 0i64..10007, t in 0i64..10007) {
        let f = Field::Prime { p: 10007 };
        let psi = gen_type_a(f, 4, 2, seed).unwrap().surface;
        let p = P1Point::ints(f, 1, s).unwrap();
        let q = P1Point::ints(f, 1, t).unwrap();
        prop_assume!(!p.same_point(&q));
        let g = psi_biform(&psi).unwrap();
        prop_assert_eq!(psi.lines_meet(&p, &q).unwrap(), g.eval_at_pair(&p, &q).is_zero());
    }
}
