use std::f64::consts::PI;

use heatkdv::numverify::{
    assemble_operator, conserved_quantities, default_window, fit_heat_coefficients, geometric_grid,
    predicted_heat_coefficients, relative_drift, run_with_report, FlowState, KdvFlow, ModeRecord,
    PotentialSpec,
};

fn mode(i: usize, j: usize, k: i64, re: f64, im: f64) -> ModeRecord {
    ModeRecord { i, j, k, re, im }
}

/// Rank-2 potential with modes up to `bandwidth`, amplitudes ∝ k^{-2}.
fn potential(bandwidth: i64, amp: f64) -> PotentialSpec {
    let mut modes = vec![
        mode(0, 0, 0, 0.4 * amp, 0.0),
        mode(1, 1, 0, -0.2 * amp, 0.0),
    ];
    for k in 1..=bandwidth {
        let a = amp / (k * k) as f64;
        modes.extend([
            mode(0, 0, k, 0.5 * a, 0.2 * a),
            mode(0, 0, -k, 0.5 * a, -0.2 * a),
            mode(1, 1, k, -0.3 * a, 0.4 * a),
            mode(1, 1, -k, -0.3 * a, -0.4 * a),
            mode(0, 1, k, 0.3 * a, 0.1 * a),
            mode(0, 1, -k, 0.2 * a, -0.3 * a),
        ]);
    }
    PotentialSpec {
        r: 2,
        length: 2.0 * PI,
        modes,
    }
}

#[test]
fn low_spectrum_is_resolution_independent() {
    let spec = potential(7, 0.5);
    let top = |n: usize| {
        let op = assemble_operator(&spec.synthesize(n).unwrap()).unwrap();
        let ev = op.eigenvalues().to_vec();
        ev[ev.len() - ev.len() / 4..].to_vec()
    };
    let coarse = top(32);
    let fine = top(64);
    let fine_top = &fine[fine.len() - coarse.len()..];
    for (a, b) in coarse.iter().zip(fine_top) {
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }
}

#[test]
fn fit_recovers_invariants_on_another_period() {
    let mut spec = potential(4, 0.5);
    spec.length = 4.0 * PI;
    let u = spec.synthesize(256).unwrap();
    let (lo, hi) = default_window(spec.length);
    let grid = geometric_grid(lo, hi, 24).unwrap();
    let fit = fit_heat_coefficients(&assemble_operator(&u).unwrap(), &grid, 3).unwrap();
    let want = predicted_heat_coefficients(&u, 3).unwrap();
    for (n, (got, exact)) in fit.coefficients.iter().zip(&want).take(3).enumerate() {
        assert!(
            (got - exact).abs() / exact.abs() < 1e-2,
            "c_{n}: {got} vs {exact}"
        );
    }
}

#[test]
fn scalar_bump_conserves_mass_and_energy() {
    let modes = (0..=4i64)
        .flat_map(|k| {
            let a = 0.3 * (-(k * k) as f64 / 4.0).exp();
            if k == 0 {
                vec![mode(0, 0, 0, a, 0.0)]
            } else {
                vec![mode(0, 0, k, a, 0.0), mode(0, 0, -k, a, 0.0)]
            }
        })
        .collect();
    let spec = PotentialSpec {
        r: 1,
        length: 2.0 * PI,
        modes,
    };
    let start = FlowState::new(spec.synthesize(64).unwrap());
    let (end, report) = run_with_report(&start, 2, 1e-5, 0.1).unwrap();
    assert!(
        report.drift_trace_u < 1e-8 && report.drift_trace_u2 < 1e-8,
        "{report:?}"
    );
    assert!(report.hermitian_correction < 1e-9);
    assert!((end.time - 0.1).abs() < 1e-12);
}

#[test]
fn level_three_flow_conserves_and_stays_hermitian() {
    let u = potential(2, 0.2).synthesize(64).unwrap();
    let flow = KdvFlow::for_potential(3, &u).unwrap();
    let dt = flow.stability_bound();
    let run = flow
        .run(&FlowState::new(u.clone()), dt, 200.0 * dt)
        .unwrap();
    let (a0, b0) = conserved_quantities(&u).unwrap();
    let (a1, b1) = conserved_quantities(&run.state.potential).unwrap();
    assert!(relative_drift(a0, a1) < 1e-8);
    assert!(relative_drift(b0, b1) < 1e-8);
    assert!(run.hermitian_correction < 1e-9);
}

#[test]
fn oversized_step_is_rejected() {
    let u = potential(2, 0.3).synthesize(64).unwrap();
    let flow = KdvFlow::for_potential(2, &u).unwrap();
    let err = flow.run(&FlowState::new(u), 2.0 * flow.stability_bound(), 0.01);
    assert!(matches!(err, Err(heatkdv::Error::UnstableStep { .. })));
}
