use std::f64::consts::{FRAC_1_SQRT_2, PI};

use proptest::prelude::*;
use tomolight::beamsplitter::{bs_output_cat, bs_transform, TwoModeState};
use tomolight::kerr::{
    cat_fractional_revival_state, evolve_kerr, fractional_revival_state, KerrParams,
};
use tomolight::tomography::*;
use tomolight::{
    cat_superposition_form, coherent_amps_at, density_from_pure, make_cat_at, CatSpec,
    CoherentSuperposition, Error, FockVector, C64,
};

const INV_SQRT_PI: f64 = 0.564_189_583_547_756_3;

fn alpha(nbar: f64, delta: f64) -> C64 {
    C64::from_polar(nbar.sqrt(), delta)
}

fn row_at(s: &CoherentSuperposition, theta: f64) -> Vec<f64> {
    let g = QuadratureGrid::with_thetas(vec![theta], 12.0, 1201).unwrap();
    tomogram_superposition_closed(s, &g).row(0).to_vec()
}

#[test]
fn vacuum_tomogram_is_theta_independent_gaussian() {
    let g = QuadratureGrid::new(17, 8.0, 161).unwrap();
    let t = tomogram_pure(&FockVector::vacuum(0), &g);
    for i in 0..17 {
        for (j, &x) in g.x().iter().enumerate() {
            assert!((t.value(i, j) - (-x * x).exp() * INV_SQRT_PI).abs() < 1e-15);
        }
    }
}

#[test]
fn coherent_peak_sits_on_the_sinusoid() {
    let a = alpha(20.0, 0.7);
    let v = coherent_amps_at(a, 80);
    for theta in [0.0, 0.4, 1.3, 2.9, 4.0, 6.0] {
        let centre = (2.0 * a.norm_sqr()).sqrt() * (0.7f64 - theta).cos();
        let at = tomogram_row_pure(&v, theta, &[centre, centre + 0.5])[0];
        assert!((at - INV_SQRT_PI).abs() < 1e-9, "theta={theta}: {at}");
    }
}

#[test]
fn fock_sum_matches_closed_forms_for_cats() {
    let g = QuadratureGrid::new(41, 12.0, 601).unwrap();
    for l in 1..=4 {
        for h in 0..l {
            let spec = CatSpec::new(l, h, alpha(7.0, 0.9)).unwrap();
            let fock = tomogram_pure(&make_cat_at(spec, 60).unwrap(), &g);
            let closed = tomogram_superposition_closed(&cat_superposition_form(spec).unwrap(), &g);
            assert!(fock.max_abs_diff(&closed) < 1e-10, "l={l} h={h}");
        }
    }
}

#[test]
fn density_route_matches_pure_route() {
    let g = QuadratureGrid::new(21, 10.0, 401).unwrap();
    let v = make_cat_at(CatSpec::new(3, 2, alpha(6.0, 0.2)).unwrap(), 50).unwrap();
    let a = tomogram_pure(&v, &g);
    let b = tomogram_density(&density_from_pure(&v), &g).unwrap();
    assert!(a.max_abs_diff(&b) < 1e-12);
}

#[test]
fn negative_density_tomogram_is_rejected() {
    let mut m = nalgebra::DMatrix::<C64>::zeros(3, 3);
    m[(0, 0)] = C64::new(1.0, 0.0);
    m[(1, 1)] = C64::new(-0.5, 0.0);
    let rho = tomolight::DensityMatrix::new(m).unwrap();
    let g = QuadratureGrid::new(3, 5.0, 101).unwrap();
    assert!(matches!(
        tomogram_density(&rho, &g),
        Err(Error::NegativeTomogram { .. })
    ));
}

// Strands along rows where the component sinusoids are separated.

#[test]
fn cat_strands_on_separated_rows() {
    for l in 2..=4 {
        for h in 0..l {
            let delta = 0.35;
            let spec = CatSpec::new(l, h, alpha(20.0, delta)).unwrap();
            let s = cat_superposition_form(spec).unwrap();
            let theta = delta + PI / (2.0 * l as f64);
            assert_eq!(count_strands(&row_at(&s, theta)), l, "l={l} h={h}");
        }
    }
}

#[test]
fn revival_strands_on_separated_rows() {
    let delta = 0.35;
    for (k, offset) in [(2u64, PI / 4.0), (3, PI / 6.0), (4, PI / 8.0)] {
        let s = fractional_revival_state(alpha(20.0, delta), k).unwrap();
        assert_eq!(
            count_strands(&row_at(&s, delta + offset)),
            k as usize,
            "k={k}"
        );
    }
}

#[test]
fn even_cat_at_eighth_revival_has_four_strands() {
    let delta = 0.35;
    let spec = CatSpec::new(2, 0, alpha(20.0, delta)).unwrap();
    let s = cat_fractional_revival_state(spec, 8).unwrap().merged(1e-9);
    assert_eq!(s.len(), 4);
    assert_eq!(count_strands(&row_at(&s, delta)), 4);
}

#[test]
fn fock_and_closed_revival_tomograms_agree() {
    let g = QuadratureGrid::new(31, 12.0, 601).unwrap();
    let a = alpha(10.0, 0.0);
    let v0 = coherent_amps_at(a, 60);
    for k in [2u64, 3, 5] {
        let fock = tomogram_pure(
            &evolve_kerr(&v0, &KerrParams::at_fraction(1.0, 1.0 / k as f64).unwrap()),
            &g,
        );
        let closed = tomogram_superposition_closed(&fractional_revival_state(a, k).unwrap(), &g);
        assert!(fock.max_abs_diff(&closed) < 1e-10, "k={k}");
    }
}

// Two-mode tomograms.

#[test]
fn two_mode_slice_of_product_factorises() {
    let a = alpha(3.0, 0.4);
    let spec = CatSpec::new(1, 0, a).unwrap();
    let state = bs_output_cat(spec, 30).unwrap();
    let xs = tomolight::fock::symmetric_grid(8.0, 161);
    let slice = tomogram_two_mode_slice(&state, 0.3, 1.1, &xs, &xs);
    let beta = a * FRAC_1_SQRT_2;
    let q = |x: f64, th: f64| tomolight::quad_overlap_coherent(x, th, beta).norm_sqr();
    for (i, &x1) in xs.iter().enumerate().step_by(7) {
        for (j, &x2) in xs.iter().enumerate().step_by(11) {
            assert!((slice.value(i, j) - q(x1, 0.3) * q(x2, 1.1)).abs() < 1e-12);
        }
    }
    assert!((slice.integral() - 1.0).abs() < 1e-9);
}

#[test]
fn mixed_and_pure_slices_agree() {
    let state = bs_output_cat(CatSpec::new(2, 1, alpha(4.0, 0.0)).unwrap(), 16).unwrap();
    let mixed = TwoModeState::mixed(state.dims(), state.to_density()).unwrap();
    let xs = tomolight::fock::symmetric_grid(7.0, 71);
    let a = tomogram_two_mode_slice(&state, 0.2, 2.0, &xs, &xs);
    let b = tomogram_two_mode_slice(&mixed, 0.2, 2.0, &xs, &xs);
    let err = a
        .omega
        .iter()
        .zip(&b.omega)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    assert!(err < 1e-13);
}

#[test]
fn two_mode_grid_size_guard() {
    let state = bs_transform(&FockVector::vacuum(3));
    let big = QuadratureGrid::new(101, 5.0, 1001).unwrap();
    assert!(matches!(
        tomogram_two_mode(&state, (&big, &big)),
        Err(Error::GridTooLarge { .. })
    ));
    let small = QuadratureGrid::new(3, 5.0, 21).unwrap();
    let t = tomogram_two_mode(&state, (&small, &small)).unwrap();
    assert_eq!(t.slices.len(), 9);
}

#[test]
fn conditional_tomogram_is_normalised() {
    let state = bs_output_cat(CatSpec::new(2, 0, alpha(10.0, 0.2)).unwrap(), 44).unwrap();
    let g = QuadratureGrid::new(21, 12.0, 1201).unwrap();
    let t = conditional_tomogram(&state, 2.0, 0.2 + PI / 2.0, &g).unwrap();
    for r in t.row_integrals() {
        assert!((r - 1.0).abs() < 1e-9);
    }
    assert_eq!(count_strands(&row_at_grid(&t, 0)), 2);
}

fn row_at_grid(t: &TomogramGrid, i: usize) -> Vec<f64> {
    t.row(i).to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rows_normalised_and_reflection_symmetric(
        l in 1usize..=4,
        hsel in 0usize..4,
        nbar in 0.01f64..25.0,
        delta in 0.0f64..6.2,
    ) {
        let spec = CatSpec::new(l, hsel % l, alpha(nbar, delta)).unwrap();
        let v = make_cat_at(spec, 90).unwrap();
        let g = QuadratureGrid::new(41, 12.0, 1201).unwrap();
        let t = tomogram_pure(&v, &g);
        for r in t.row_integrals() {
            prop_assert!((r - 1.0).abs() < 1e-6);
        }
        prop_assert!(t.symmetry_defect() < 1e-9);
        prop_assert!(t.values().iter().all(|&w| w >= 0.0));
    }

    #[test]
    fn coherent_closed_form_matches_fock_sum(nbar in 0.0f64..30.0, delta in 0.0f64..std::f64::consts::TAU) {
        let a = alpha(nbar, delta);
        let g = QuadratureGrid::new(13, 12.0, 241).unwrap();
        let fock = tomogram_pure(&coherent_amps_at(a, 110), &g);
        let closed = tomogram_coherent_closed(a, &g);
        prop_assert!(fock.max_abs_diff(&closed) < 1e-10);
    }
}
