//! Fast analysis and synthesis against per-coefficient summation.

mod common;

use common::*;
use dyadic_averaging::analysis::*;
use dyadic_averaging::grid::{DyadicGrid, GridFunction};
use dyadic_averaging::oracle::{naive_inner_products, naive_synthesis};
use dyadic_averaging::tolerances::{HAAR_NORMALIZATION, ORACLE_RELATIVE, TAU_QUAD_L4_GAP4};
use dyadic_averaging::wavelet::daubechies_system;
use rand::Rng;

fn fields_agree(fast: &CoefficientField, slow: &CoefficientField, scale: f64) {
    for (j, nu, v) in slow.iter() {
        let w = fast.get(j, nu);
        assert!((v - w).abs() <= ORACLE_RELATIVE * scale, "({j},{nu}): fast {w} naive {v}");
    }
    for (j, nu, v) in fast.iter() {
        assert!((v - slow.get(j, nu)).abs() <= ORACLE_RELATIVE * scale, "({j},{nu}) only in fast");
    }
}

#[test]
fn analysis_matches_naive_inner_products() {
    let mut r = rng(11);
    for case in 0..240 {
        let order = r.gen_range(1..=4);
        let level = r.gen_range(7..=10);
        let j_max = r.gen_range(0..=level - DEFAULT_MARGIN);
        let grid = if case % 4 == 3 {
            DyadicGrid::from_endpoints(level, -1.0, 1.0).unwrap()
        } else {
            DyadicGrid::unit(level).unwrap()
        };
        let sw = daubechies_system(order, level + 1).unwrap();
        let f = float_function(&mut r, grid);
        let fast = analyze(&f, &sw, j_max).unwrap();
        let slow = naive_inner_products(&f, &sw, j_max).unwrap();
        fields_agree(&fast, &slow, slow.max_abs().max(1.0));
    }
}

#[test]
fn synthesis_matches_naive_synthesis() {
    let mut r = rng(12);
    for _ in 0..200 {
        let order = r.gen_range(1..=4);
        let level = r.gen_range(7..=10);
        let grid = DyadicGrid::unit(level).unwrap();
        let sw = daubechies_system(order, level + 1).unwrap();
        let j_max = level - DEFAULT_MARGIN;
        let terms = r.gen_range(1..=12);
        let mut c = CoefficientField::new(order, j_max);
        for _ in 0..terms {
            let j = r.gen_range(0..=j_max);
            let nus = interior_translates(j, &sw, &grid).unwrap();
            let lo = nus.start() - 2 * order as i64;
            let hi = nus.end() + 1;
            c.insert(j, r.gen_range(lo..=hi), r.gen_range(-1.0..1.0)).unwrap();
        }
        let fast = synthesize(&c, &sw, &grid).unwrap();
        let slow = naive_synthesis(&c, &sw, &grid).unwrap();
        let scale = slow.values().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        assert!(fast.max_abs_diff(&slow).unwrap() <= ORACLE_RELATIVE * scale * 16.0);
    }
}

#[test]
fn haar_wavelets_have_unit_coefficients() {
    let grid = DyadicGrid::unit(10).unwrap();
    let sw = daubechies_system(1, 11).unwrap();
    let j_max = 6;
    for j in 0..=j_max {
        for nu in interior_translates(j, &sw, &grid).unwrap() {
            let c = analyze(&wavelet_at(j, nu, &sw, &grid).unwrap(), &sw, j_max).unwrap();
            for (jj, mm, v) in c.iter() {
                let want = if (jj, mm) == (j, nu) { 1.0 } else { 0.0 };
                assert!((v - want).abs() <= HAAR_NORMALIZATION, "({j},{nu}) -> ({jj},{mm}) = {v}");
            }
        }
    }
}

#[test]
fn haar_round_trip_is_exact_on_interior_fields() {
    let mut r = rng(13);
    let grid = DyadicGrid::unit(10).unwrap();
    let sw = daubechies_system(1, 11).unwrap();
    for _ in 0..50 {
        let mut c = CoefficientField::new(1, 6);
        for j in 0..=6 {
            for nu in interior_translates(j, &sw, &grid).unwrap() {
                c.insert(j, nu, r.gen_range(-8i32..=8) as f64 / 8.0).unwrap();
            }
        }
        let back = analyze(&synthesize(&c, &sw, &grid).unwrap(), &sw, 6).unwrap();
        for (j, nu, v) in c.iter() {
            assert!((back.get(j, nu) - v).abs() <= HAAR_NORMALIZATION);
        }
    }
}

#[test]
fn smooth_system_quadrature_error_is_bounded() {
    let mut worst: f64 = 0.0;
    for big_j in 10..=14 {
        let grid = DyadicGrid::unit(big_j).unwrap();
        let sw = daubechies_system(4, big_j + 1).unwrap();
        let j = big_j - DEFAULT_MARGIN;
        let nus = interior_translates(j, &sw, &grid).unwrap();
        for nu in [*nus.start(), (nus.start() + nus.end()) / 2, *nus.end()] {
            let c = analyze(&wavelet_at(j, nu, &sw, &grid).unwrap(), &sw, j).unwrap();
            worst = worst.max((c.get(j, nu) - 1.0).abs());
        }
    }
    assert!(worst <= TAU_QUAD_L4_GAP4, "tau_quad = {worst:e}");
}

#[test]
fn partial_sums_telescope() {
    let mut r = rng(14);
    let grid = DyadicGrid::unit(10).unwrap();
    let sw = daubechies_system(3, 11).unwrap();
    let c = random_field(&mut r, 3, 6, 40);
    let full = synthesize(&c, &sw, &grid).unwrap();
    assert_eq!(partial_sum(&c, 6, &sw, &grid).unwrap(), full);
    let mut acc = GridFunction::zeros(grid);
    for n in 0..=6 {
        let p = partial_sum(&c, n, &sw, &grid).unwrap();
        let prev = if n == 0 { GridFunction::zeros(grid) } else { partial_sum(&c, n - 1, &sw, &grid).unwrap() };
        acc = acc.combine(1.0, &p.combine(1.0, &prev, -1.0).unwrap(), 1.0).unwrap();
    }
    assert!(acc.max_abs_diff(&full).unwrap() <= 1e-12);
}

#[test]
fn resolution_guard() {
    let grid = DyadicGrid::unit(8).unwrap();
    let sw = daubechies_system(2, 9).unwrap();
    let f = GridFunction::constant(grid, 1.0);
    assert!(analyze(&f, &sw, 4).is_ok());
    assert!(analyze(&f, &sw, 5).is_err());
}

#[test]
fn serialization_round_trips() {
    let mut r = rng(15);
    let dir = tempfile::tempdir().unwrap();
    let c = random_field(&mut r, 4, 7, 60);
    assert_eq!(CoefficientField::from_json(&c.to_json().unwrap()).unwrap(), c);
    let path = dir.path().join("c.json");
    c.save(&path).unwrap();
    assert_eq!(CoefficientField::load(&path).unwrap(), c);

    let f = float_function(&mut r, DyadicGrid::from_endpoints(9, -0.5, 1.5).unwrap());
    assert_eq!(GridFunction::from_bytes(&f.to_bytes()).unwrap(), f);
    let stem = dir.path().join("f");
    f.save(&stem).unwrap();
    assert_eq!(GridFunction::load(&stem).unwrap(), f);
}
