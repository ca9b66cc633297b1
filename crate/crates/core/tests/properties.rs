use ginv_core::block::BlockInstance;
use ginv_core::generator::{
    condition_holds, gen_eigenprojection_pair, gen_instance, gen_pq0_pair, gen_with_index, ConditionTag, GenSpec,
};
use ginv_core::geninv::{
    additive_drazin_pq0, drazin, group_inverse, index, is_invertible, jacobson, same_eigenprojection_conditions,
};
use ginv_core::io::InstanceFile;
use ginv_core::linalg::{full_rank_factorization, inverse, moore_penrose, rank};
use ginv_core::oracle::{drazin_oracle, verify_drazin_axioms};
use ginv_core::scalar::decimal_rational;
use ginv_core::theorems::{verify, Case, TheoremId};
use ginv_core::{Error, Matrix, Rational, Scalar, ScalarMode};
use proptest::prelude::*;

type Q = Matrix<Rational>;

fn rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3, 1i64..=3).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Q> {
    proptest::collection::vec(rational(), rows * cols).prop_map(move |v| Matrix::new(rows, cols, v).unwrap())
}

fn any_matrix() -> impl Strategy<Value = Q> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c))
}

fn square() -> impl Strategy<Value = Q> {
    (1usize..=4).prop_flat_map(|n| matrix(n, n))
}

/// `(n, k, seed)` with `k ≤ n`.
fn indexed() -> impl Strategy<Value = (usize, usize, u64)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), 0..=n.min(4), any::<u64>()))
}

fn tag() -> impl Strategy<Value = ConditionTag> {
    proptest::sample::select(ConditionTag::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn penrose_equations(m in any_matrix()) {
        let x = moore_penrose(&m).unwrap();
        prop_assert_eq!(&(&(&m * &x) * &m), &m);
        prop_assert_eq!(&(&(&x * &m) * &x), &x);
        let mx = &m * &x;
        let xm = &x * &m;
        prop_assert_eq!(&mx.transpose(), &mx);
        prop_assert_eq!(&xm.transpose(), &xm);
    }

    #[test]
    fn rank_is_transpose_invariant(m in any_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn full_rank_factors_multiply_back(m in any_matrix()) {
        let (f, g) = full_rank_factorization(&m);
        let r = rank(&m);
        prop_assert_eq!(f.cols(), r);
        prop_assert_eq!(g.rows(), r);
        prop_assert_eq!(&f * &g, m);
    }

    #[test]
    fn inverse_is_two_sided(m in square()) {
        match inverse(&m) {
            Ok(inv) => {
                let id = Q::identity(m.rows());
                prop_assert_eq!(&(&inv * &m), &id);
                prop_assert_eq!(&(&m * &inv), &id);
            }
            Err(e) => {
                prop_assert_eq!(e, Error::Singular);
                prop_assert!(rank(&m) < m.rows());
            }
        }
    }

    #[test]
    fn drazin_agrees_with_oracle((n, k, seed) in indexed()) {
        let a = gen_with_index(n, k, seed).unwrap();
        let d = drazin(&a).unwrap();
        prop_assert_eq!(d.index, k);
        prop_assert!(verify_drazin_axioms(&a, &d.inverse).unwrap().holds);
        prop_assert_eq!(d.inverse, drazin_oracle(&a).unwrap());
    }

    #[test]
    fn drazin_of_arbitrary_matrices(a in square()) {
        let d = drazin(&a).unwrap();
        prop_assert_eq!(d.inverse, drazin_oracle(&a).unwrap());
    }

    #[test]
    fn drazin_scales_inversely((n, k, seed) in indexed(), c in rational()) {
        prop_assume!(!c.is_zero());
        let a = gen_with_index(n, k, seed).unwrap();
        let lhs = drazin(&a.scale(&c)).unwrap().inverse;
        let rhs = drazin(&a).unwrap().inverse.scale(&(Rational::from_i64(1) / c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn drazin_is_similarity_covariant((n, k, seed) in indexed(), p in square()) {
        prop_assume!(p.rows() == n && is_invertible(&p));
        let a = gen_with_index(n, k, seed).unwrap();
        let p_inv = inverse(&p).unwrap();
        let lhs = drazin(&(&(&p * &a) * &p_inv)).unwrap().inverse;
        let rhs = &(&p * &drazin(&a).unwrap().inverse) * &p_inv;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_inverse_exists_iff_index_at_most_one(a in square()) {
        let k = index(&a).unwrap();
        match group_inverse(&a) {
            Ok(g) => {
                prop_assert!(k <= 1);
                prop_assert_eq!(&(&(&a * &g) * &a), &a);
            }
            Err(e) => {
                prop_assert!(k > 1);
                prop_assert_eq!(e, Error::GroupInverseDoesNotExist);
            }
        }
    }

    #[test]
    fn jacobson_identity(a in matrix(2, 3), b in matrix(3, 2)) {
        prop_assume!(is_invertible(&(&Q::identity(2) - &(&a * &b))));
        let inv = jacobson(&a, &b).unwrap();
        prop_assert_eq!(&inv * &(&Q::identity(3) - &(&b * &a)), Q::identity(3));
    }

    #[test]
    fn eigenprojection_conditions_agree((n, k, seed) in indexed(), same in any::<bool>()) {
        let (a, b) = gen_eigenprojection_pair(n, k, same, seed).unwrap();
        let c = same_eigenprojection_conditions(&a, &b).unwrap();
        prop_assert!(c.all_agree(), "{:?}", c.conditions);
        if same {
            prop_assert!(c.conditions[0]);
        }
    }

    #[test]
    fn additive_formula_matches_oracle((n, k, seed) in indexed()) {
        let (p, q) = gen_pq0_pair(n, k, seed).unwrap();
        prop_assert!((&p * &q).is_zero());
        prop_assert_eq!(additive_drazin_pq0(&p, &q).unwrap(), drazin_oracle(&(&p + &q)).unwrap());
    }

    #[test]
    fn generator_is_deterministic_and_honest(
        tag in tag(), n in 1usize..=3, m in 1usize..=3, seed in any::<u64>(), ia in 0usize..=3, id in 0usize..=3,
    ) {
        let spec = GenSpec::new(tag, n, m, ia.min(n), id.min(m), seed);
        let first = gen_instance(&spec).unwrap();
        prop_assert_eq!(&first, &gen_instance(&spec).unwrap());
        prop_assert!(condition_holds(tag, &first).unwrap());
        prop_assert_eq!(index(&first.a).unwrap(), spec.index_a);
        prop_assert_eq!(index(&first.d).unwrap(), spec.index_d);
    }

    #[test]
    fn equivalence_statements_are_uniform(n in 1usize..=3, m in 1usize..=3, seed in any::<u64>(), ia in 0usize..=3, id in 0usize..=3) {
        let spec = GenSpec::new(ConditionTag::None, n, m, ia.min(n), id.min(m), seed);
        let inst = gen_instance(&spec).unwrap();
        let report = verify(TheoremId::Equivalence, &Case::exact(&inst).unwrap()).unwrap();
        prop_assert!(report.statements_uniform(), "{:?}", report.statements);
        prop_assert!(report.matched);
    }

    #[test]
    fn corner_corollaries_are_uniform(n in 1usize..=3, m in 1usize..=3, seed in any::<u64>(), ia in 0usize..=3, id in 0usize..=3) {
        let spec = GenSpec::new(ConditionTag::None, n, m, ia.min(n), id.min(m), seed);
        let case = Case::exact(&gen_instance(&spec).unwrap()).unwrap();
        for id in [TheoremId::CorSzMA, TheoremId::CorSzMB, TheoremId::System] {
            let report = verify(id, &case).unwrap();
            prop_assert!(report.matched, "{id}: {:?}", report);
        }
    }

    #[test]
    fn instance_files_round_trip(a in matrix(2, 2), b in matrix(1, 2), c in matrix(2, 1), d in matrix(1, 1)) {
        let inst = BlockInstance::new(a, b, c, d).unwrap();
        let file = InstanceFile::from_blocks(&inst, ScalarMode::Rational);
        let back = InstanceFile::parse(&file.to_json_string()).unwrap();
        prop_assert_eq!(&back, &file);
        prop_assert_eq!(back.reference_blocks().unwrap(), inst);
    }

    #[test]
    fn decimal_reading_round_trips_floats(x in -1e6f64..1e6) {
        let q = decimal_rational(x).unwrap();
        prop_assert_eq!(f64::from_rational(&q), x);
    }
}
