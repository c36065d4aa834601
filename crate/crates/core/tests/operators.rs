//! Algebra of the dyadic operators, checked against dense matrices and
//! direct definitions.

mod common;

use common::*;
use dyadic_averaging::grid::*;
use dyadic_averaging::oracle::{apply_dense, dense_expectation_matrix};
use proptest::prelude::*;
use rand::Rng;

fn unit(level: u32) -> DyadicGrid {
    DyadicGrid::unit(level).unwrap()
}

/// `T_N[f, a]` straight from the definition, with floating-point coordinates.
fn naive_haar_multiplier(f: &GridFunction, n: u32, a: &MultiplierSeq) -> Vec<f64> {
    let g = f.grid();
    let len = 2f64.powi(-(n as i32));
    let mut out = vec![0.0; g.cells()];
    for mu in g.generation_indices(n).unwrap() {
        let (lo, mid, hi) = (mu as f64 * len, (mu as f64 + 0.5) * len, (mu as f64 + 1.0) * len);
        let h = |x: f64| if lo <= x && x < mid { 1.0 } else if mid <= x && x < hi { -1.0 } else { 0.0 };
        let inner: f64 = (0..g.cells())
            .map(|i| f.values()[i] * h(g.cell_left(i)) * g.cell_width())
            .sum();
        let w = a.get(mu).unwrap() * 2f64.powi(n as i32) * inner;
        for (i, o) in out.iter_mut().enumerate() {
            *o += w * h(g.cell_left(i));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projections_compose_exactly(seed in any::<u64>(), n in 0u32..=10, m in 0u32..=10) {
        let f = dyadic_function(&mut rng(seed), unit(10));
        let lhs = conditional_expectation(&conditional_expectation(&f, m).unwrap(), n).unwrap();
        let rhs = conditional_expectation(&f, n.min(m)).unwrap();
        prop_assert_eq!(lhs.values(), rhs.values());
    }

    #[test]
    fn projections_compose_on_float_data(seed in any::<u64>(), n in 0u32..=10, m in 0u32..=10) {
        let f = float_function(&mut rng(seed), unit(10));
        let lhs = conditional_expectation(&conditional_expectation(&f, m).unwrap(), n).unwrap();
        let rhs = conditional_expectation(&f, n.min(m)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12);
    }

    #[test]
    fn telescoping_and_haar_ones(seed in any::<u64>(), n in 0u32..=9) {
        let f = dyadic_function(&mut rng(seed), unit(10));
        let ones = MultiplierSeq::constant(0, n as usize, 1.0);
        let sum = martingale_transform(&f, &ones, n).unwrap();
        let e = conditional_expectation(&f, n).unwrap();
        prop_assert_eq!(sum.values(), e.values());

        let range = f.grid().generation_indices(n).unwrap();
        let a = MultiplierSeq::constant(range.start, (range.end - range.start) as usize, 1.0);
        let t = haar_multiplier(&f, n, &a).unwrap();
        let d = martingale_difference(&f, n).unwrap();
        prop_assert_eq!(t.values(), d.values());
    }

    #[test]
    fn expectation_matches_dense_matrix(seed in any::<u64>(), level in 1u32..=8, n in 0u32..=8) {
        let n = n.min(level);
        let f = float_function(&mut rng(seed), unit(level));
        let m = dense_expectation_matrix(f.grid(), n).unwrap();
        let fast = conditional_expectation(&f, n).unwrap();
        let slow = apply_dense(&m, &f).unwrap();
        prop_assert!(fast.max_abs_diff(&slow).unwrap() <= 1e-10 * lp_norm(&f, f64::INFINITY));
    }

    #[test]
    fn haar_multiplier_matches_definition(seed in any::<u64>(), n in 0u32..=7) {
        let mut r = rng(seed);
        let f = float_function(&mut r, unit(8));
        let range = f.grid().generation_indices(n).unwrap();
        let entries = (range.start..range.end).map(|_| r.gen_range(-1.0..1.0)).collect();
        let a = MultiplierSeq::new(range.start, entries).unwrap();
        let fast = haar_multiplier(&f, n, &a).unwrap();
        for (x, y) in fast.values().iter().zip(naive_haar_multiplier(&f, n, &a)) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
        prop_assert!(lp_norm(&fast, 2.0) <= lp_norm(&martingale_difference(&f, n).unwrap(), 2.0) * (1.0 + 1e-12));
    }

    #[test]
    fn signed_levelwise_matches_dense(seed in any::<u64>(), top in 1u32..=7) {
        let mut r = rng(seed);
        let f = float_function(&mut r, unit(8));
        let b = MultiplierSeq::from_levels((0..top).map(|_| if r.gen() { 1.0 } else { -1.0 }).collect()).unwrap();
        let fast = levelwise_multiplier(&f, &b, 0..top).unwrap();
        let mut slow = vec![0.0; f.grid().cells()];
        for n in 0..top {
            let d = &dense_expectation_matrix(f.grid(), n + 1).unwrap() - &dense_expectation_matrix(f.grid(), n).unwrap();
            let dn = apply_dense(&d, &f).unwrap();
            for (s, v) in slow.iter_mut().zip(dn.values()) {
                *s += b.get(n as i64).unwrap() * v;
            }
        }
        for (x, y) in fast.values().iter().zip(&slow) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn expectation_contracts_lp(seed in any::<u64>(), n in 0u32..=10, p in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0, f64::INFINITY])) {
        let f = float_function(&mut rng(seed), unit(10));
        let e = conditional_expectation(&f, n).unwrap();
        prop_assert!(lp_norm(&e, p) <= lp_norm(&f, p) * (1.0 + 1e-12));
    }

    #[test]
    fn operators_are_linear(seed in any::<u64>(), n in 0u32..=8, alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let mut r = rng(seed);
        let g = unit(9);
        let (f, h) = (float_function(&mut r, g), float_function(&mut r, g));
        let mix = f.combine(alpha, &h, beta).unwrap();
        let range = g.generation_indices(n).unwrap();
        let a = MultiplierSeq::new(range.start, (range.start..range.end).map(|_| r.gen_range(-1.0..1.0)).collect()).unwrap();
        let b = MultiplierSeq::from_levels((0..=n).map(|_| r.gen_range(-1.0..1.0)).collect()).unwrap();
        type Op<'a> = Box<dyn Fn(&GridFunction) -> GridFunction + 'a>;
        let ops: Vec<Op> = vec![
            Box::new(|x| conditional_expectation(x, n).unwrap()),
            Box::new(|x| martingale_difference(x, n).unwrap()),
            Box::new(|x| haar_multiplier(x, n, &a).unwrap()),
            Box::new(|x| levelwise_multiplier(x, &b, 0..n + 1).unwrap()),
        ];
        for op in &ops {
            let lhs = op(&mix);
            let rhs = op(&f).combine(alpha, &op(&h), beta).unwrap();
            let scale = lp_norm(&rhs, f64::INFINITY).max(alpha.abs() + beta.abs());
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-12 * scale.max(1.0));
        }
    }
}

#[test]
fn haar_functions_under_the_operators() {
    let g = unit(8);
    for n in 0..7u32 {
        for m in 0..7u32 {
            let h = haar_function(m, 1.min((1 << m) - 1), &g).unwrap();
            let d = martingale_difference(&h, n).unwrap();
            if m == n {
                assert_eq!(d, h);
            } else {
                assert!(d.values().iter().all(|&v| v == 0.0), "D_{n} h_{m}");
            }
        }
        let h = haar_function(n, 0, &g).unwrap();
        assert!(conditional_expectation(&h, n).unwrap().values().iter().all(|&v| v == 0.0));
        assert_eq!(conditional_expectation(&h, n + 1).unwrap(), h);
    }
}
