//! Invariants over random instances. Instances come from a proptest-drawn
//! seed fed to ChaCha, so failures shrink to a reproducible seed.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rkcert::classifier::{classify_overall, Conclusion};
use rkcert::hypocoercivity::{hc_index_definitional, hc_index_staircase, staircase_of, HcIndex};
use rkcert::linalg::{
    hermitian_part_max_eigenvalue, hermitian_split, solve_lyapunov, transform_to_dissipative, CMatrix,
    CVector, ComplexMatrix, C64,
};
use rkcert::random::{random_staircase_instance, random_unitary};
use rkcert::rk::{eval_poly_matrix, ButcherTableau, StabilityPolynomial, Truth};
use rkcert::tolerance::{HC_CHAIN, RANK_REL};

fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

fn instance(seed: u64, n: usize, index: usize) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_staircase_instance(n, index, &mut rng)
}

/// `(n, index)` with `n > index`; index capped where the chain stays resolvable.
fn shape(max_n: usize, max_index: usize) -> impl Strategy<Value = (usize, usize)> {
    (1..=max_n).prop_flat_map(move |n| (Just(n), 0..n.min(max_index + 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn split_reconstructs(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = ComplexMatrix::new(gaussian(&mut rng, n, n)).unwrap();
        let split = hermitian_split(&m);
        let back = split.h.as_matrix() + split.s.as_matrix();
        prop_assert!((back - m.as_matrix()).norm() <= 1e-14 * m.as_matrix().norm().max(1.0));
        prop_assert!((split.h.as_matrix() - split.h.as_matrix().adjoint()).norm() == 0.0);
        prop_assert!((split.s.as_matrix() + split.s.as_matrix().adjoint()).norm() == 0.0);
    }

    #[test]
    fn index_is_unitarily_invariant(seed in any::<u64>(), (n, index) in shape(8, 4)) {
        let m = instance(seed, n, index);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcdef);
        let u = random_unitary(n, &mut rng).into_inner();
        let rotated = ComplexMatrix::new(u.adjoint() * m.as_matrix() * &u).unwrap();
        let a = hc_index_definitional(&m, HC_CHAIN, n).unwrap().index;
        let b = hc_index_definitional(&rotated, HC_CHAIN, n).unwrap().index;
        prop_assert_eq!(a, b);
        prop_assert_eq!(
            hc_index_staircase(&m, RANK_REL).unwrap(),
            hc_index_staircase(&rotated, RANK_REL).unwrap()
        );
    }

    #[test]
    fn chain_and_staircase_agree(seed in any::<u64>(), (n, index) in shape(12, 5)) {
        let m = instance(seed, n, index);
        let chain = hc_index_definitional(&m, HC_CHAIN, n).unwrap().index;
        let stairs = hc_index_staircase(&m, RANK_REL).unwrap();
        prop_assert_eq!(chain, HcIndex::Finite(index));
        prop_assert_eq!(stairs, index);
        let form = staircase_of(&m, RANK_REL).unwrap();
        prop_assert!((form.reconstruct() - m.as_matrix()).norm() <= 1e-10 * m.as_matrix().norm());
    }

    #[test]
    fn lyapunov_round_trip(seed in any::<u64>(), (n, index) in shape(8, 3)) {
        let m = instance(seed, n, index);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        let g = gaussian(&mut rng, n, n);
        let q = ComplexMatrix::new(&g * g.adjoint() + CMatrix::identity(n, n)).unwrap();
        let p = solve_lyapunov(&m, &q).unwrap();
        let residual = -(m.as_matrix().adjoint() * p.as_matrix() + p.as_matrix() * m.as_matrix());
        let scale = q.as_matrix().norm() * p.as_matrix().norm().max(1.0);
        prop_assert!((residual - q.as_matrix()).norm() <= 1e-9 * scale);
        let t = transform_to_dissipative(&m, &p).unwrap();
        prop_assert!(hermitian_part_max_eigenvalue(&t).unwrap() < 0.0);
    }

    #[test]
    fn conjunction_law(s in 1usize..=7, p_frac in 0.0f64..1.0, tail in prop::collection::vec(-3.0f64..3.0, 7)) {
        let p = 1 + ((s as f64) * p_frac) as usize % s;
        let mut c = vec![1.0; p + 1];
        for j in p + 1..=s {
            c.push(tail[j - 1]);
        }
        if p < s && (c[p + 1] - 1.0).abs() < 1e-3 {
            c[p + 1] = 2.0;
        }
        let poly = StabilityPolynomial::from_real_normalized(&c).unwrap();
        let r = classify_overall(&poly).unwrap();
        let (imag, class_as) = (r.imag_axis.conclusion, r.class_as.conclusion);
        let combined = r.combined_condition.truth == Truth::Holds;
        if imag == Conclusion::No || class_as == Conclusion::No || combined {
            prop_assert_eq!(r.overall.conclusion, Conclusion::No);
        } else if imag == Conclusion::Yes && class_as == Conclusion::Yes {
            prop_assert_eq!(r.overall.conclusion, Conclusion::Yes);
        } else {
            prop_assert_eq!(r.overall.conclusion, Conclusion::Undecided);
        }
        prop_assert!(r.class_as_index_bound == (r.p.saturating_sub(1)) / 2);
    }

    #[test]
    fn tableau_matches_polynomial(seed in any::<u64>(), s in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = vec![0.0; s * s];
        for i in 0..s {
            for j in 0..i {
                a[i * s + j] = rng.gen_range(-1.0..1.0);
            }
        }
        let mut b: Vec<f64> = (0..s).map(|_| rng.gen_range(0.0..1.0)).collect();
        let total: f64 = b.iter().sum();
        b.iter_mut().for_each(|x| *x /= total);
        let t = ButcherTableau::from_real(&a, &b).unwrap();
        let poly = StabilityPolynomial::from_tableau(&t).unwrap();
        prop_assert!((poly.coef(0).re - 1.0).abs() < 1e-15);
        prop_assert!((poly.coef(1).re - 1.0).abs() < 1e-12);

        let m = instance(seed, 4, 1);
        let u = CVector::from_fn(4, |i, _| C64::new(1.0 + i as f64, -(i as f64)));
        let tau = rng.gen_range(0.01..0.5);
        let by_stages = t.step(&m, tau, &u);
        let by_poly = eval_poly_matrix(&poly, &m, tau).as_matrix() * &u;
        prop_assert!((by_stages - by_poly).norm() <= 1e-12 * u.norm());
    }

    #[test]
    fn polynomial_json_round_trips(tail in prop::collection::vec(-5.0f64..5.0, 0..6)) {
        let mut c = vec![1.0];
        c.extend(tail);
        let poly = StabilityPolynomial::from_real_normalized(&c).unwrap();
        let back = StabilityPolynomial::from_json_str(&poly.to_json_string()).unwrap();
        prop_assert_eq!(back.to_json_string(), poly.to_json_string());
        prop_assert_eq!(back.order(), poly.order());
    }
}
