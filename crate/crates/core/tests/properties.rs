use std::sync::Arc;

use proptest::prelude::*;
use tanaka_core::eds::{parse_form, print_form, Chart, DiffForm, PolyVectorField};
use tanaka_core::exact::{kernel_basis, modular_rank, rank, rat, Monomial, RatMatrix, RatPoly, RatVector, Rational, SpanSolver};
use tanaka_core::nilpotent::{flat_model, same_constants, symbol_algebra, GradedNilpotent};
use tanaka_core::rootsys::{accidental_gradings, graded_dims, SatakeDiagram};
use tanaka_core::tanaka::prolong;

const NVARS: usize = 4;

fn chart() -> Arc<Chart> {
    Chart::numbered("x", NVARS)
}

fn poly() -> impl Strategy<Value = RatPoly> {
    let term = (prop::collection::vec(0..NVARS, 0..=2), -4i64..=4, 1i64..=3);
    prop::collection::vec(term, 0..=3).prop_map(|terms| {
        let terms = terms.into_iter().map(|(vars, p, q)| (vars.iter().fold(Monomial::one(NVARS), |m, &v| m.mul(&Monomial::var(NVARS, v))), rat(p, q)));
        RatPoly::from_terms(NVARS, terms.collect::<Vec<_>>())
    })
}

fn form(degree: usize) -> impl Strategy<Value = DiffForm> {
    let term = (poly(), prop::sample::subsequence((0..NVARS).collect::<Vec<_>>(), degree));
    prop::collection::vec(term, 0..=3).prop_map(move |terms| {
        let c = chart();
        terms.into_iter().fold(DiffForm::zero(&c, degree), |f, (p, idx)| f.add(&DiffForm::monomial(&c, p, &idx)))
    })
}

fn field() -> impl Strategy<Value = PolyVectorField> {
    prop::collection::vec(poly(), NVARS).prop_map(|comps| PolyVectorField::new(&chart(), comps).unwrap())
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(|x| rat(x, 1)), c), r))
}

fn two_step() -> impl Strategy<Value = GradedNilpotent> {
    (1usize..=2, 2usize..=4).prop_flat_map(|(k, m)| {
        let pairs = m * (m - 1) / 2;
        prop::collection::vec(prop::collection::vec(-2i64..=2, k), pairs).prop_map(move |consts| {
            let mut grading = vec![-2; k];
            grading.extend(vec![-1; m]);
            let mut n = GradedNilpotent::new(grading, (0..k + m).map(|i| format!("e{i}")).collect());
            let pairs = (k..k + m).flat_map(|a| (a + 1..k + m).map(move |b| (a, b)));
            for ((a, b), c) in pairs.zip(&consts) {
                n.set_bracket(a, b, RatVector::from_pairs(c.iter().enumerate().map(|(e, &x)| (e, rat(x, 1)))));
            }
            n
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_is_zero(f in (0usize..=3).prop_flat_map(form)) {
        prop_assert!(f.d().d().is_zero());
    }

    #[test]
    fn d_is_a_graded_derivation(a in form(1), b in form(2)) {
        let lhs = a.wedge(&b).d();
        let rhs = a.d().wedge(&b).sub(&a.wedge(&b.d()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(1), b in form(1), c in form(2)) {
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).neg());
        prop_assert_eq!(a.wedge(&c), c.wedge(&a));
    }

    #[test]
    fn cartan_formula(w in form(2), y in field()) {
        prop_assert_eq!(w.lie_derivative(&y), w.d().interior(&y).add(&w.interior(&y).d()));
    }

    #[test]
    fn vector_field_jacobi(x in field(), y in field(), z in field()) {
        let s = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        prop_assert!(s.is_zero());
    }

    #[test]
    fn forms_print_and_parse_back(f in form(2)) {
        let c = chart();
        let back = parse_form(&print_form(&f), &c).unwrap();
        prop_assert!(back.sub(&f).is_zero());
    }

    #[test]
    fn exact_and_modular_ranks_agree(rows in small_matrix()) {
        let cols = rows[0].len();
        let m = RatMatrix::from_dense(&rows);
        let t: Vec<Vec<Rational>> = (0..cols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
        let r = rank(&m);
        prop_assert_eq!(Some(r), modular_rank(&m));
        prop_assert_eq!(r, rank(&RatMatrix::from_dense(&t)));
        let kernel = kernel_basis(&m);
        prop_assert_eq!(r + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn span_solver_reconstructs(rows in small_matrix(), coeffs in prop::collection::vec(-3i64..=3, 5)) {
        let dim = rows[0].len();
        let vecs: Vec<RatVector> = rows.iter().map(|r| RatVector::from_dense(r)).collect();
        let target = vecs.iter().zip(&coeffs).fold(RatVector::new(), |acc, (v, &c)| acc.axpy(&rat(c, 1), v));
        let solver = SpanSolver::new(dim, &vecs);
        let x = solver.express(&target).expect("combination lies in the span");
        let back = vecs.iter().enumerate().fold(RatVector::new(), |acc, (i, v)| acc.axpy(&x.get(i), v));
        prop_assert_eq!(back, target);
    }

    #[test]
    fn two_step_symbols_round_trip(n in two_step()) {
        prop_assume!(n.is_fundamental());
        let back = symbol_algebra(&flat_model(&n).unwrap()).unwrap();
        prop_assert!(same_constants(&back, &n));
    }

    #[test]
    fn two_step_prolongations_satisfy_jacobi(n in two_step()) {
        prop_assume!(n.is_fundamental());
        let g = prolong(&n, 2);
        prop_assert!(g.check_jacobi().is_ok());
        prop_assert!(g.respects_grading());
    }

    #[test]
    fn su_gradings_are_symmetric(p in 1usize..=3, extra in 0usize..=2) {
        let d = SatakeDiagram::su(p, p + extra).unwrap();
        let total = d.root_system().algebra_dim();
        for g in accidental_gradings(&d).unwrap() {
            let dims = graded_dims(&g);
            prop_assert_eq!(dims.values().sum::<usize>(), total);
            for (k, v) in &dims {
                prop_assert_eq!(dims.get(&-k), Some(v));
            }
        }
    }
}
