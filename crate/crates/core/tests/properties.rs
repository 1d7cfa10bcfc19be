use crlab_core::deform::{build_deformation_problem, rigidity_solve, Verdict};
use crlab_core::field::{is_zero_vec, vscale};
use crlab_core::models::{self, exp_ad, model8, sl2_s3_real, SL2_S3_REAL_DEGREES};
use crlab_core::poly::Poly;
use crlab_core::vfgeom::{freeman_frames, names, tube_generators, PolyVectorField};
use crlab_core::{LieAlgebra, Scalar, Vector};
use proptest::prelude::*;

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(((0u32..3, 0u32..3), -3i64..4), 0..4).prop_map(|ts| {
        let mut p = Poly::zero(2);
        for ((a, b), k) in ts {
            p.add_term(vec![a, b], Scalar::int(k));
        }
        p
    })
}

fn field() -> impl Strategy<Value = PolyVectorField> {
    (poly(), poly()).prop_map(|(a, b)| PolyVectorField::new(&names(&["x", "y"]), vec![a, b]).unwrap())
}

fn small_vec(n: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec((-3i64..4, -2i64..3), n).prop_map(|v| v.into_iter().map(|(a, b)| Scalar::complex(a, 1, b, 1)).collect())
}

fn negative_part(g: &LieAlgebra, c: &[Scalar]) -> Vector {
    // e, z, zb span the nilpotent degree < 0 part of the model
    let mut x = vec![Scalar::zero(); g.dim()];
    for (k, l) in ["e", "z", "zb"].iter().enumerate() {
        crlab_core::field::axpy(&mut x, &c[k], &g.basis_vector(l).unwrap());
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn vector_field_bracket_is_a_lie_bracket(a in field(), b in field(), c in field()) {
        let ab = a.bracket(&b).unwrap();
        prop_assert_eq!(ab.scale(&Scalar::int(-1)), b.bracket(&a).unwrap());
        let j1 = a.bracket(&b.bracket(&c).unwrap()).unwrap();
        let j2 = b.bracket(&c.bracket(&a).unwrap()).unwrap();
        let j3 = c.bracket(&ab).unwrap();
        prop_assert!(j1.add(&j2).unwrap().add(&j3).unwrap().is_zero());
    }

    #[test]
    fn vector_field_bracket_leibniz(a in field(), b in field(), f in poly()) {
        let lhs = a.bracket(&b.times(&f)).unwrap();
        let rhs = b.times(&a.apply(&f)).add(&a.bracket(&b).unwrap().times(&f)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_ad_of_nilpotent_element_is_an_automorphism(c in small_vec(3), u in small_vec(8), v in small_vec(8)) {
        let g = model8();
        let x = negative_part(&g, &c);
        let lhs = exp_ad(&g, &x, &g.bracket(&u, &v)).unwrap();
        let rhs = g.bracket(&exp_ad(&g, &x, &u).unwrap(), &exp_ad(&g, &x, &v).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugate_family_members_share_freeman_dims(p in -6i64..7, q in 1i64..4) {
        let t = Scalar::frac(p, q);
        let f = models::family("ex4.2", &t).unwrap();
        prop_assert!(f.closes());
        prop_assert!(f.witness_ok().unwrap());
        prop_assert_eq!(f.cr.freeman_sequence().dims(), vec![4, 3, 2, 1]);
    }

    #[test]
    fn tube_freeman_dims_hold_for_any_seed(seed in any::<u64>()) {
        let ch = tube_generators(3).unwrap();
        let fr = freeman_frames(&ch.d10).unwrap();
        for pt in ch.plan(3, seed).samples() {
            prop_assert_eq!(fr.dims_at(&pt).unwrap(), vec![3, 2, 1, 0]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    /// A rigid verdict means no nonzero parameter satisfies all Jacobi
    /// identities.
    #[test]
    fn rigid_problem_has_no_nonzero_solution(l in proptest::collection::vec(-3i64..4, 4)) {
        prop_assume!(l.iter().any(|x| *x != 0));
        let g = sl2_s3_real();
        let et = g.basis_vector("Et").unwrap();
        let p = build_deformation_problem(&g, &SL2_S3_REAL_DEGREES, Some(&et)).unwrap();
        prop_assert_eq!(rigidity_solve(&p).verdict, Verdict::Rigid);
        let lam: Vec<Scalar> = l.iter().map(|x| Scalar::int(*x)).collect();
        prop_assert!(!p.specialize(&lam).unwrap().validate().ok());
    }

    /// The flexible heis(3) witness spans a whole line of deformations.
    #[test]
    fn heis_deformations_form_a_line(p in -6i64..7, q in 1i64..4) {
        let (h, _) = crlab_core::prolong::heisenberg();
        let prob = build_deformation_problem(&h, &[-2, -1, -1], None).unwrap();
        let w = rigidity_solve(&prob).witness.unwrap();
        let t = Scalar::frac(p, q);
        let scaled = vscale(&t, &w);
        prop_assert!(prob.specialize(&scaled).unwrap().validate().ok());
        prop_assert!(models::heis_deformed(&t).validate().ok());
    }
}

#[test]
fn zero_parameters_give_back_the_graded_algebra() {
    let g = sl2_s3_real();
    let et = g.basis_vector("Et").unwrap();
    let p = build_deformation_problem(&g, &SL2_S3_REAL_DEGREES, Some(&et)).unwrap();
    let g0 = p.specialize(&vec![Scalar::zero(); p.nparams()]).unwrap();
    let n = g.dim();
    assert!((0..n).all(|i| (0..n).all(|j| g0.structure(i, j) == g.structure(i, j))));
    assert!(is_zero_vec(&g.jacobiator(&et, &g.basis_vector("X").unwrap(), &g.basis_vector("v0").unwrap())));
}

#[test]
fn projective_line_fields_close_to_sl2() {
    use crlab_core::vfgeom::{bracket_closure, closure_algebra, derived_series_dims};
    let c = names(&["x"]);
    let x = Poly::var(1, 0);
    let dx = PolyVectorField::partial(&c, 0);
    let gens = [dx.times(&(&x * &x)), dx.clone()];
    let cl = bracket_closure(&gens, 10).unwrap();
    assert!(cl.closed);
    assert_eq!(cl.fields.len(), 3);
    let alg = closure_algebra(&cl).unwrap();
    assert!(alg.validate().ok());
    // perfect, so the series stops at once
    assert_eq!(derived_series_dims(&alg), [3]);
    let affine = closure_algebra(&bracket_closure(&[dx.times(&x), dx.clone()], 10).unwrap()).unwrap();
    assert_eq!(derived_series_dims(&affine), [2, 1, 0]);
    // x³∂x generates an infinite tower
    assert!(!bracket_closure(&[dx.times(&(&(&x * &x) * &x)), dx], 10).unwrap().closed);
}
