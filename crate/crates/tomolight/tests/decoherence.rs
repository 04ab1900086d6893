mod common;

use common::{integrate, max_abs_diff, Channel};
use nalgebra::DMatrix;
use proptest::prelude::*;
use tomolight::beamsplitter::{bs_output_cat, log_negativity, TwoModeState};
use tomolight::decoherence::*;
use tomolight::fock::hermite_psi;
use tomolight::tomography::{tomogram_density, QuadratureGrid};
use tomolight::{cat_superposition_form, density_from_pure, make_cat_at, CatSpec, C64};

fn cat(l: usize, h: usize, nbar: f64, delta: f64) -> CatSpec {
    CatSpec::new(l, h, C64::from_polar(nbar.sqrt(), delta)).unwrap()
}

#[test]
fn single_mode_closed_forms_match_rk4() {
    let times = [0.01, 0.1, 0.3];
    let cutoff = 40;
    for l in 1..=4 {
        let spec = cat(l, 0, 4.0, 0.3);
        let rho0 = density_from_pure(&make_cat_at(spec, cutoff).unwrap());
        let sup = cat_superposition_form(spec).unwrap();
        let amp = integrate(rho0.elems(), (cutoff + 1, 1), Channel::Amplitude, &times);
        let ph = integrate(rho0.elems(), (cutoff + 1, 1), Channel::Phase, &times);
        for (i, &s) in times.iter().enumerate() {
            let closed =
                amp_decay_superposition_at(&sup, &DecoherenceParams::amplitude(s).unwrap(), cutoff)
                    .unwrap();
            let err = max_abs_diff(closed.elems(), &amp[i]);
            assert!(err < 1e-6, "amplitude l={l} s={s}: {err:e}");
            let closed = phase_damp_density(&rho0, &DecoherenceParams::phase(s).unwrap()).unwrap();
            let err = max_abs_diff(closed.elems(), &ph[i]);
            assert!(err < 1e-6, "phase l={l} s={s}: {err:e}");
        }
    }
}

#[test]
fn two_mode_closed_forms_match_rk4() {
    let times = [0.01, 0.1, 0.3];
    let cutoff = 12;
    let d = cutoff + 1;
    for h in 0..2 {
        let spec = cat(2, h, 2.0, 0.0);
        let rho0 = bs_output_cat(spec, cutoff).unwrap().to_density();
        let amp = integrate(&rho0, (d, d), Channel::Amplitude, &times);
        let ph = integrate(&rho0, (d, d), Channel::Phase, &times);
        for (i, &s) in times.iter().enumerate() {
            let closed =
                two_mode_amp_decay(spec, &DecoherenceParams::amplitude(s).unwrap(), cutoff)
                    .unwrap()
                    .to_density();
            let err = max_abs_diff(&closed, &amp[i]);
            assert!(err < 1e-6, "amplitude h={h} s={s}: {err:e}");
            let closed = two_mode_phase_damp(spec, &DecoherenceParams::phase(s).unwrap(), cutoff)
                .unwrap()
                .to_density();
            let err = max_abs_diff(&closed, &ph[i]);
            assert!(err < 1e-6, "phase h={h} s={s}: {err:e}");
        }
    }
}

#[test]
fn generic_decay_agrees_with_superposition_form() {
    for l in 1..=4 {
        let spec = cat(l, l - 1, 9.0, 1.1);
        let cutoff = 70;
        let sup = cat_superposition_form(spec).unwrap();
        let rho0 = density_from_pure(&make_cat_at(spec, cutoff).unwrap());
        for s in [0.0, 0.05, 0.4, 2.0] {
            let p = DecoherenceParams::amplitude(s).unwrap();
            let a = amp_decay_superposition_at(&sup, &p, cutoff).unwrap();
            let b = amp_decay_density(&rho0, &p).unwrap();
            let err = max_abs_diff(a.elems(), b.elems());
            assert!(err < 1e-12, "l={l} s={s}: {err:e}");
        }
    }
}

#[test]
fn closed_form_tomogram_matches_density_route() {
    let grid = QuadratureGrid::default();
    for (l, s) in [(2, 0.1), (4, 0.05), (3, 1.0)] {
        let spec = cat(l, 0, 20.0, 0.4);
        let sup = cat_superposition_form(spec).unwrap();
        let p = DecoherenceParams::amplitude(s).unwrap();
        let closed = amp_decay_tomogram(&sup, &p, &grid).unwrap();
        let rho = amp_decay_superposition_at(&sup, &p, 80).unwrap();
        let fock = tomogram_density(&rho, &grid).unwrap();
        let err = closed.max_abs_diff(&fock);
        assert!(err < 1e-8, "l={l} s={s}: {err:e}");
    }
}

#[test]
fn zero_time_is_identity() {
    let spec = cat(3, 1, 5.0, 0.2);
    let sup = cat_superposition_form(spec).unwrap();
    let rho0 = density_from_pure(&make_cat_at(spec, 50).unwrap());
    let a =
        amp_decay_superposition_at(&sup, &DecoherenceParams::amplitude(0.0).unwrap(), 50).unwrap();
    assert!(max_abs_diff(a.elems(), rho0.elems()) < 1e-14);
    let b = phase_damp_density(&rho0, &DecoherenceParams::phase(0.0).unwrap()).unwrap();
    assert_eq!(b.elems(), rho0.elems());
    let grid = QuadratureGrid::new(31, 10.0, 201).unwrap();
    let t0 = amp_decay_tomogram(&sup, &DecoherenceParams::amplitude(0.0).unwrap(), &grid).unwrap();
    let pure = tomolight::tomography::tomogram_superposition_closed(&sup, &grid);
    assert!(t0.max_abs_diff(&pure) < 1e-13);
}

#[test]
fn long_time_limits() {
    let spec = cat(2, 0, 20.0, 0.0);
    let sup = cat_superposition_form(spec).unwrap();
    let rho =
        amp_decay_superposition_at(&sup, &DecoherenceParams::amplitude(20.0).unwrap(), 66).unwrap();
    assert!(max_abs_diff(rho.elems(), amp_decay_limit(66).elems()) < 1e-8);

    let rho0 = density_from_pure(&make_cat_at(spec, 66).unwrap());
    let late = phase_damp_density(&rho0, &DecoherenceParams::phase(50.0).unwrap()).unwrap();
    assert!(max_abs_diff(late.elems(), phase_damp_limit(&rho0).elems()) < 1e-15);

    let spec2 = cat(2, 1, 10.0, 0.0);
    let pure = bs_output_cat(spec2, 20).unwrap();
    let late = two_mode_phase_damp(spec2, &DecoherenceParams::phase(50.0).unwrap(), 20).unwrap();
    let limit = two_mode_phase_damp_limit(&pure);
    assert!(max_abs_diff(&late.to_density(), &limit.to_density()) < 1e-15);
    let vac = two_mode_amp_decay(spec2, &DecoherenceParams::amplitude(20.0).unwrap(), 20).unwrap();
    assert!(
        max_abs_diff(
            &vac.to_density(),
            &two_mode_amp_decay_limit(20).to_density()
        ) < 1e-8
    );
}

#[test]
fn four_cat_collapses_to_vacuum_strand() {
    let sup = cat_superposition_form(cat(4, 0, 20.0, 0.0)).unwrap();
    let grid = QuadratureGrid::new(41, 8.0, 401).unwrap();
    let t = amp_decay_tomogram(&sup, &DecoherenceParams::amplitude(15.0).unwrap(), &grid).unwrap();
    for (i, _) in grid.theta().iter().enumerate() {
        for (j, &x) in grid.x().iter().enumerate() {
            let vac = (-x * x).exp() / std::f64::consts::PI.sqrt();
            assert!((t.value(i, j) - vac).abs() < 1e-10);
        }
    }
}

#[test]
fn short_decay_keeps_strands() {
    let sup = cat_superposition_form(cat(2, 0, 20.0, 0.0)).unwrap();
    let grid = QuadratureGrid::with_thetas(vec![std::f64::consts::FRAC_PI_4], 12.0, 1201).unwrap();
    let t = amp_decay_tomogram(&sup, &DecoherenceParams::amplitude(0.1).unwrap(), &grid).unwrap();
    assert_eq!(tomolight::tomography::count_strands(t.row(0)), 2);
}

/// Phase-damped tomogram from the element formula, summed directly over (n, n').
#[test]
fn phase_damped_tomogram_matches_element_sum() {
    let spec = cat(2, 0, 20.0, 0.0);
    let cutoff = 66;
    let v = make_cat_at(spec, cutoff).unwrap();
    let c = v.amps();
    let s = 0.3;
    let rho = phase_damp_density(
        &density_from_pure(&v),
        &DecoherenceParams::phase(s).unwrap(),
    )
    .unwrap();
    let grid = QuadratureGrid::new(9, 10.0, 81).unwrap();
    let t = tomogram_density(&rho, &grid).unwrap();
    for (i, &theta) in grid.theta().iter().enumerate() {
        for (j, &x) in grid.x().iter().enumerate() {
            let psi: Vec<f64> = (0..=cutoff).map(|n| hermite_psi(n, x)).collect();
            let mut acc = C64::new(0.0, 0.0);
            for n in 0..=cutoff {
                for m in 0..=cutoff {
                    let d = n as f64 - m as f64;
                    acc += c[n]
                        * c[m].conj()
                        * (-s * d * d).exp()
                        * psi[n]
                        * psi[m]
                        * C64::from_polar(1.0, -d * theta);
                }
            }
            assert!((acc.re - t.value(i, j)).abs() < 1e-12);
        }
    }
}

#[test]
fn two_mode_zero_time_is_pure_output() {
    let spec = cat(2, 0, 10.0, 0.3);
    let pure = bs_output_cat(spec, 30).unwrap().to_density();
    let a = two_mode_amp_decay(spec, &DecoherenceParams::amplitude(0.0).unwrap(), 30).unwrap();
    assert!(max_abs_diff(&a.to_density(), &pure) < 1e-14);
    let p = two_mode_phase_damp(spec, &DecoherenceParams::phase(0.0).unwrap(), 30).unwrap();
    assert!(max_abs_diff(&p.to_density(), &pure) < 1e-15);
}

#[test]
fn two_mode_diagonal_preserved_by_phase_damping() {
    let spec = cat(2, 1, 6.0, 0.0);
    let pure = bs_output_cat(spec, 20).unwrap();
    let damped = two_mode_phase_damp(spec, &DecoherenceParams::phase(0.8).unwrap(), 20).unwrap();
    assert_eq!(damped.to_density().diagonal(), pure.to_density().diagonal());
}

#[test]
fn entanglement_decays_under_both_channels() {
    let spec = cat(2, 0, 4.0, 0.0);
    let e0 = log_negativity(
        &two_mode_amp_decay(spec, &DecoherenceParams::amplitude(0.0).unwrap(), 16).unwrap(),
    )
    .unwrap()
    .value;
    let e1 = log_negativity(
        &two_mode_amp_decay(spec, &DecoherenceParams::amplitude(0.2).unwrap(), 16).unwrap(),
    )
    .unwrap()
    .value;
    let p1 = log_negativity(
        &two_mode_phase_damp(spec, &DecoherenceParams::phase(0.5).unwrap(), 16).unwrap(),
    )
    .unwrap()
    .value;
    assert!(e0 > e1 && e0 > p1 && e1 >= 0.0 && p1 >= 0.0);
    let TwoModeState::Mixed { .. } =
        two_mode_amp_decay(spec, &DecoherenceParams::amplitude(0.2).unwrap(), 16).unwrap()
    else {
        panic!("decayed state should be mixed");
    };
}

fn min_eigenvalue(m: &DMatrix<C64>) -> f64 {
    tomolight::DensityMatrix::new(m.clone())
        .unwrap()
        .eigenvalues()
        .unwrap()[0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn channels_preserve_trace_and_positivity(
        l in 1usize..=4,
        hsel in 0usize..4,
        nbar in 0.5f64..12.0,
        delta in 0.0f64..std::f64::consts::TAU,
        s in 0.0f64..2.0,
    ) {
        let spec = cat(l, hsel % l, nbar, delta);
        let sup = cat_superposition_form(spec).unwrap();
        let cutoff = 60;
        let rho0 = density_from_pure(&make_cat_at(spec, cutoff).unwrap());
        let a = amp_decay_superposition_at(&sup, &DecoherenceParams::amplitude(s).unwrap(), cutoff).unwrap();
        prop_assert!((a.trace() - 1.0).abs() < 1e-9);
        prop_assert!(min_eigenvalue(a.elems()) > -1e-8);
        let p = phase_damp_density(&rho0, &DecoherenceParams::phase(s).unwrap()).unwrap();
        prop_assert!((p.trace() - rho0.trace()).abs() < 1e-12);
        prop_assert!(min_eigenvalue(p.elems()) > -1e-8);
    }

    #[test]
    fn phase_damping_purity_is_non_increasing(
        l in 1usize..=4,
        nbar in 0.5f64..12.0,
        s1 in 0.0f64..1.5,
        ds in 0.0f64..1.5,
    ) {
        let rho0 = density_from_pure(&make_cat_at(cat(l, 0, nbar, 0.0), 60).unwrap());
        let p1 = phase_damp_density(&rho0, &DecoherenceParams::phase(s1).unwrap()).unwrap();
        let p2 = phase_damp_density(&rho0, &DecoherenceParams::phase(s1 + ds).unwrap()).unwrap();
        prop_assert!(p2.purity() <= p1.purity() + 1e-12);
    }
}

#[test]
fn amplitude_decay_purity_endpoints() {
    let sup = cat_superposition_form(cat(2, 0, 10.0, 0.0)).unwrap();
    let purity = |s: f64| {
        amp_decay_superposition_at(&sup, &DecoherenceParams::amplitude(s).unwrap(), 50)
            .unwrap()
            .purity()
    };
    assert!((purity(0.0) - 1.0).abs() < 1e-10);
    assert!(purity(0.2) < 0.9);
    assert!((purity(25.0) - 1.0).abs() < 1e-10);
}

#[test]
fn parameters_validate() {
    assert!(DecoherenceParams::amplitude(-0.1).is_err());
    assert!(DecoherenceParams::phase(f64::NAN).is_err());
    let p = DecoherenceParams::from_rate(DecoherenceModel::AmplitudeDecay, 0.01, 30.0).unwrap();
    assert!((p.scaled() - 0.3).abs() < 1e-15);
    let sup = cat_superposition_form(cat(2, 0, 1.0, 0.0)).unwrap();
    assert!(amp_decay_tomogram(
        &sup,
        &DecoherenceParams::phase(0.1).unwrap(),
        &QuadratureGrid::default()
    )
    .is_err());
}
