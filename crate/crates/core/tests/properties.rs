//! Property tests of the algebraic, geometric and dynamical invariants.

use num_traits::{One, Zero};
use proptest::prelude::*;

use phflag_core::curvature::{curvature_action, exponent_factors, is_harmonic, NormalCurvature};
use phflag_core::dynamics::{
    nil_mul, normal_form, reduce, volume_obstruction_exact, NilLattice, NilMap, VolumeVerdict, NORMAL_FORM_GATE,
};
use phflag_core::flag_space::{act, circle_boundary_points, flip, is_interior, CircleBoundary, CircleKind, Model};
use phflag_core::lie_core::{bracket, quotient_adjoint, quotient_adjoint_bruteforce, GroupElem, LieVec};
use phflag_core::matrix::Mat3;
use phflag_core::models::{
    commutator_identity_check, equivariance_a, equivariance_a_inverse, mat2_det, orbit_inverse_a, orbit_inverse_t,
    orbit_map_a, orbit_map_t, theta_affine, HeisAffine, HeisAuto, HeisElem, Mat2, Sl2Pair,
};
use phflag_core::scalar::{self, Scalar};
use phflag_core::suite::adjoint_display;

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| scalar::frac(n, d))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=6).prop_map(|(n, d)| scalar::frac(n, d))
}

fn pmin_params() -> impl Strategy<Value = [Scalar; 5]> {
    (nonzero(), nonzero(), rational(), rational(), rational()).prop_map(|(a, b, x, y, z)| [a, b, x, y, z])
}

fn pmin() -> impl Strategy<Value = GroupElem> {
    pmin_params().prop_map(|[a, b, x, y, z]| GroupElem::pmin(&a, &b, &x, &y, &z).unwrap())
}

fn lie_vec() -> impl Strategy<Value = LieVec> {
    proptest::collection::vec(rational(), 8).prop_map(|c| LieVec::from_coords(&c))
}

fn heis() -> impl Strategy<Value = HeisElem> {
    (rational(), rational(), rational()).prop_map(|(x, y, z)| HeisElem::new(x, y, z))
}

fn heis_affine() -> impl Strategy<Value = HeisAffine> {
    (heis(), nonzero(), nonzero()).prop_map(|(g, l, m)| HeisAffine::new(g, HeisAuto::new(l, m).unwrap()))
}

fn sl2() -> impl Strategy<Value = Mat2> {
    (rational(), rational(), nonzero()).prop_map(|(u, l, w)| {
        let (o, z) = (scalar::one, scalar::zero);
        let upper: Mat2 = [[o(), u], [z(), o()]];
        let lower: Mat2 = [[o(), z()], [l, o()]];
        let d: Mat2 = [[w.clone(), z()], [z(), w.recip()]];
        phflag_core::models::mat2_mul(&phflag_core::models::mat2_mul(&upper, &lower), &d)
    })
}

fn curvature() -> impl Strategy<Value = NormalCurvature> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| NormalCurvature::new(a, b, c, d))
}

fn nil_point() -> impl Strategy<Value = [Scalar; 3]> {
    (rational(), rational(), rational()).prop_map(|(x, y, z)| [x, y, z])
}

fn lattice_element() -> impl Strategy<Value = [Scalar; 3]> {
    (-6i64..=6, -6i64..=6, -6i64..=6).prop_map(|(m, n, k)| NilLattice::element(m, n, k))
}

/// Words in the unipotent generators of `SL(2, Z)`.
fn sl2z() -> impl Strategy<Value = [[i64; 2]; 2]> {
    proptest::collection::vec(prop_oneof![Just(0u8), Just(1u8)], 1..6).prop_map(|w| {
        let mut m = [[1i64, 0], [0, 1]];
        for g in w {
            let s = if g == 0 { [[1, 1], [0, 1]] } else { [[1, 0], [1, 1]] };
            m = [0, 1].map(|i| [0, 1].map(|j| m[i][0] * s[0][j] + m[i][1] * s[1][j]));
        }
        m
    })
}

fn nil_map(m: [[i64; 2]; 2]) -> impl Strategy<Value = NilMap> {
    (-4i64..=4, -4i64..=4, rational())
        .prop_map(move |(a, b, z)| NilMap::new(m, [scalar::frac(a, 2), scalar::frac(b, 2), z]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(u in lie_vec(), v in lie_vec(), w in lie_vec()) {
        prop_assert_eq!(bracket(&u, &v), -&bracket(&v, &u));
        let j = &(&bracket(&u, &bracket(&v, &w)) + &bracket(&v, &bracket(&w, &u))) + &bracket(&w, &bracket(&u, &v));
        prop_assert_eq!(j.0, Mat3::zero());
    }

    #[test]
    fn adjoint_is_a_lie_automorphism(g in pmin(), h in pmin(), u in lie_vec(), v in lie_vec()) {
        prop_assert_eq!(g.mul(&h).ad(&u), g.ad(&h.ad(&u)));
        prop_assert_eq!(g.ad(&bracket(&u, &v)), bracket(&g.ad(&u), &g.ad(&v)));
    }

    #[test]
    fn quotient_adjoint_three_ways(params in pmin_params()) {
        let [a, b, x, y, z] = params;
        let p = GroupElem::pmin(&a, &b, &x, &y, &z).unwrap();
        let q = quotient_adjoint(&p).unwrap();
        prop_assert_eq!(&q, &adjoint_display(&a, &b, &x, &y));
        prop_assert_eq!(&q, &quotient_adjoint_bruteforce(&p).unwrap());
    }

    #[test]
    fn quotient_adjoint_is_a_representation(p in pmin(), q in pmin()) {
        prop_assert_eq!(
            quotient_adjoint(&p.mul(&q)).unwrap(),
            &quotient_adjoint(&p).unwrap() * &quotient_adjoint(&q).unwrap()
        );
    }

    #[test]
    fn curvature_weights(p in pmin(), k in curvature()) {
        let pk = curvature_action(&p, &k).unwrap();
        let (fa, fb) = exponent_factors(&p).unwrap();
        prop_assert_eq!(pk.k_alpha, &fa * &k.k_alpha);
        prop_assert_eq!(pk.k_beta, &fb * &k.k_beta);
    }

    #[test]
    fn curvature_action_is_an_action(p in pmin(), q in pmin(), k in curvature()) {
        let lhs = curvature_action(&p.mul(&q), &k).unwrap();
        let rhs = curvature_action(&p, &curvature_action(&q, &k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn harmonic_subspace_is_invariant(p in pmin(), a in rational(), b in rational()) {
        let k = NormalCurvature::new(Scalar::zero(), Scalar::zero(), a, b);
        prop_assert!(is_harmonic(&curvature_action(&p, &k).unwrap()));
    }

    #[test]
    fn orbit_maps_are_bijective(s in sl2(), h in heis()) {
        prop_assert_eq!(mat2_det(&s), Scalar::one());
        let xt = orbit_map_t(&s).unwrap();
        prop_assert!(is_interior(&xt, Model::T));
        prop_assert_eq!(orbit_inverse_t(&xt).unwrap(), s);
        let xa = orbit_map_a(&h);
        prop_assert!(is_interior(&xa, Model::A));
        prop_assert_eq!(orbit_inverse_a(&xa).unwrap(), h);
    }

    #[test]
    fn circles_miss_exactly_one_point(s in sl2(), h in heis()) {
        for (x, model) in [(orbit_map_t(&s).unwrap(), Model::T), (orbit_map_a(&h), Model::A)] {
            for kind in [CircleKind::Alpha, CircleKind::Beta] {
                match circle_boundary_points(&x, kind, model) {
                    CircleBoundary::Points(p) => {
                        prop_assert_eq!(p.len(), 1);
                        prop_assert!(!is_interior(&p[0], model));
                    }
                    CircleBoundary::Full => prop_assert!(false, "circle inside the boundary"),
                }
            }
        }
    }

    #[test]
    fn flip_is_an_involution(h in heis()) {
        let x = orbit_map_a(&h);
        prop_assert_eq!(flip(&flip(&x)), x);
    }

    #[test]
    fn central_flow_commutator(p in nil_point(), t in rational()) {
        prop_assert_eq!(commutator_identity_check(&p, &t), (true, true));
    }

    #[test]
    fn theta_is_a_morphism(f in heis_affine(), g in heis_affine(), h in heis()) {
        prop_assert_eq!(theta_affine(&f.mul(&g)), theta_affine(&f).compose(&theta_affine(&g)));
        let c = |e: &HeisElem| [e.x.clone(), e.y.clone(), e.z.clone()];
        prop_assert_eq!(theta_affine(&f).apply(&c(&h)), c(&f.apply(&h)));
    }

    #[test]
    fn equivariance_a_is_an_isomorphism(p in pmin(), q in pmin(), h in heis()) {
        let fp = equivariance_a(&p).unwrap();
        prop_assert_eq!(equivariance_a(&p.mul(&q)).unwrap(), fp.mul(&equivariance_a(&q).unwrap()));
        prop_assert_eq!(equivariance_a_inverse(&fp), p.clone());
        prop_assert_eq!(orbit_map_a(&fp.apply(&h)), act(&p, &orbit_map_a(&h)));
    }

    #[test]
    fn equivariance_t_is_a_morphism(g in sl2(), l in nonzero(), g2 in sl2(), l2 in nonzero(), s in sl2()) {
        let a = Sl2Pair::new(g, l).unwrap();
        let b = Sl2Pair::new(g2, l2).unwrap();
        prop_assert_eq!(a.mul(&b).to_group(), a.to_group().mul(&b.to_group()));
        prop_assert_eq!(phflag_core::models::equivariance_t(&a.to_group()).unwrap().to_group(), a.to_group());
        prop_assert_eq!(orbit_map_t(&a.apply(&s)).unwrap(), act(&a.to_group(), &orbit_map_t(&s).unwrap()));
    }

    #[test]
    fn reduce_lands_in_fundamental_domain(p in nil_point(), g in lattice_element()) {
        let (rep, gamma) = reduce(&p);
        prop_assert!(NilLattice::contains(&gamma));
        prop_assert_eq!(nil_mul(&gamma, &p), rep.clone());
        prop_assert!(rep[0] >= Scalar::zero() && rep[0] < Scalar::one());
        prop_assert!(rep[1] >= Scalar::zero() && rep[1] < Scalar::one());
        prop_assert!(rep[2] >= Scalar::zero() && rep[2] < scalar::frac(1, 2));
        prop_assert_eq!(reduce(&rep).0, rep.clone());
        prop_assert_eq!(reduce(&nil_mul(&g, &p)).0, rep);
    }

    #[test]
    fn float_reduction_stays_in_domain(x in -50.0f64..50.0, y in -50.0f64..50.0, z in -50.0f64..50.0) {
        let (rep, _) = reduce(&[x, y, z]);
        prop_assert!((0.0..1.0).contains(&rep[0]) && (0.0..1.0).contains(&rep[1]) && (0.0..0.5).contains(&rep[2]));
        prop_assert_eq!(reduce(&rep).0, rep);
    }

    #[test]
    fn maps_descend_to_the_quotient(m in sl2z(), p in nil_point(), g in lattice_element()) {
        prop_assert!(NilLattice::invariant_under(&m));
        let f = NilMap::new(m, [scalar::frac(1, 2), Scalar::zero(), scalar::frac(1, 3)]).unwrap();
        prop_assert_eq!(f.step(&p).0, f.step(&reduce(&p).0).0);
        prop_assert_eq!(f.step(&nil_mul(&g, &p)).0, f.step(&p).0);
    }

    #[test]
    fn normal_form_passes_gate(m in sl2z()) {
        let nf = normal_form(&m).unwrap();
        prop_assert!((nf.lambda_u * nf.lambda_s - 1.0).abs() < 1e-9);
        if (m[0][0] + m[1][1]).abs() > 2 {
            prop_assert!(nf.is_hyperbolic());
            prop_assert!(nf.residual <= NORMAL_FORM_GATE);
        } else {
            // Parabolic words: a repeated eigenvalue of modulus one.
            prop_assert!(!nf.is_hyperbolic());
            prop_assert_eq!(nf.lambda_u.abs(), 1.0);
        }
    }

    #[test]
    fn random_translations_descend(f in nil_map([[2, 1], [1, 1]]), p in nil_point()) {
        prop_assert_eq!(f.step(&p).0, f.step(&reduce(&p).0).0);
    }

    #[test]
    fn volume_obstruction_matches_multipliers(l in nonzero(), m in nonzero()) {
        let v = volume_obstruction_exact(&l, &m).unwrap();
        let one = Scalar::one();
        let (a, b) = (num_traits::Signed::abs(&l), num_traits::Signed::abs(&m));
        let both_small = a < one && b < one;
        let both_large = a > one && b > one;
        prop_assert_eq!(v == VolumeVerdict::Obstructed, both_small || both_large);
        prop_assert_eq!(volume_obstruction_exact(&l, &l.recip()).unwrap(), VolumeVerdict::Admissible);
    }
}
