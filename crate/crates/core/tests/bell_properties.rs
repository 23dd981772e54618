use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

use tanglement::bell::{
    classical_bound, delta, delta_closed_form, maximize_chsh, standard_observables, violates, ChshObservables,
    RealTwoQubitState,
};
use tanglement::luinv::apply_single_qubit;
use tanglement::qstate::PureState;
use tanglement::sample::{self, trial_rng};

type M = DMatrix<Complex64>;

fn real_matrix(rows: [[f64; 2]; 2]) -> M {
    M::from_fn(2, 2, |r, c| Complex64::new(rows[r][c], 0.0))
}

/// `<ψ|QS + RS + RT − QT|ψ>` with the standard observables written out here.
fn oracle_delta(psi: &[Complex64]) -> f64 {
    let h = FRAC_1_SQRT_2;
    let q = real_matrix([[1.0, 0.0], [0.0, -1.0]]);
    let r = real_matrix([[0.0, 1.0], [1.0, 0.0]]);
    let s = real_matrix([[-h, -h], [-h, h]]);
    let t = real_matrix([[h, -h], [-h, -h]]);
    let op = q.kronecker(&s) + r.kronecker(&s) + r.kronecker(&t) - q.kronecker(&t);
    let v = nalgebra::DVector::from_column_slice(psi);
    (v.adjoint() * op * v)[(0, 0)].re
}

fn random_real(rng: &mut impl Rng) -> RealTwoQubitState {
    let psi = sample::random_real_state(2, rng);
    let a = psi.amplitudes();
    RealTwoQubitState::normalized(a[0].re, a[1].re, a[2].re, a[3].re).unwrap()
}

#[test]
fn closed_form_agrees_with_matrix_action() {
    let obs = standard_observables();
    for trial in 0..10_000u64 {
        let mut rng = trial_rng(4000, trial);
        let s = random_real(&mut rng);
        let psi = s.to_state();
        let direct = delta(&psi, &obs).unwrap();
        let closed = delta_closed_form(&s);
        assert!((direct - closed).abs() <= 1e-9, "trial {trial}");
        assert!(
            (oracle_delta(psi.amplitudes()) - closed).abs() <= 1e-9,
            "oracle trial {trial}"
        );
    }
}

#[test]
fn violation_inequality_matches_delta() {
    for trial in 0..10_000u64 {
        let mut rng = trial_rng(4100, trial);
        let s = random_real(&mut rng);
        let d = delta_closed_form(&s);
        if (d - 2.0).abs() > 1e-9 {
            assert_eq!(violates(&s), d > 2.0, "trial {trial} delta {d}");
        }
    }
}

#[test]
fn products_never_violate() {
    for trial in 0..2000u64 {
        let mut rng = trial_rng(4200, trial);
        let psi = sample::random_product_state(2, &mut rng).normalized().unwrap();
        let angles = [0; 4].map(|_| sample::random_angle(&mut rng));
        let obs = ChshObservables::from_angles(angles);
        assert!(delta(&psi, &obs).unwrap() <= 2.0 + 1e-9, "trial {trial}");
        assert!(delta(&psi, &standard_observables()).unwrap() <= 2.0 + 1e-9);
    }
}

#[test]
fn delta_respects_spectral_ceiling() {
    for trial in 0..2000u64 {
        let mut rng = trial_rng(4300, trial);
        let psi = sample::random_state(2, &mut rng);
        let angles = [0; 4].map(|_| sample::random_angle(&mut rng));
        let obs = ChshObservables::from_angles(angles);
        let ceiling = obs.spectral_ceiling();
        assert!(ceiling <= 2.0 * SQRT_2 + 1e-9);
        assert!(delta(&psi, &obs).unwrap() <= ceiling + 1e-9, "trial {trial}");
    }
}

#[test]
fn delta_is_unchanged_by_simultaneous_conjugation() {
    // Rotating the state by U⊗V and every observable by the same U, V leaves Δ fixed.
    for trial in 0..200u64 {
        let mut rng = trial_rng(4400, trial);
        let psi = sample::random_state(2, &mut rng);
        let u = sample::random_local_unitary(&mut rng);
        let v = sample::random_local_unitary(&mut rng);
        let moved = apply_single_qubit(&apply_single_qubit(&psi, 1, &u).unwrap(), 2, &v).unwrap();
        let to_m = |lu: &tanglement::luinv::LocalUnitary| {
            let m = lu.matrix();
            nalgebra::Matrix2::new(m[0][0], m[0][1], m[1][0], m[1][1])
        };
        let (um, vm) = (to_m(&u), to_m(&v));
        let std = standard_observables();
        let rotated = ChshObservables::new(
            um * std.q() * um.adjoint(),
            um * std.r() * um.adjoint(),
            vm * std.s() * vm.adjoint(),
            vm * std.t() * vm.adjoint(),
        )
        .unwrap();
        let before = delta(&psi, &std).unwrap();
        let after = delta(&moved, &rotated).unwrap();
        assert!((before - after).abs() <= 1e-9, "trial {trial}");
    }
}

#[test]
fn maximizer_is_consistent() {
    for trial in 0..12u64 {
        let mut rng = trial_rng(4500, trial);
        let psi = if trial % 3 == 0 {
            sample::random_product_state(2, &mut rng).normalized().unwrap()
        } else {
            sample::random_real_state(2, &mut rng)
        };
        let best = maximize_chsh(&psi).unwrap();
        assert!(best.history.windows(2).all(|w| w[1] >= w[0]), "trial {trial}");
        let again = delta(&psi, &best.observables()).unwrap();
        assert!((again - best.delta_max).abs() <= 1e-9, "trial {trial}");
        // The standard angles lie on the grid.
        assert!(best.delta_max >= delta(&psi, &standard_observables()).unwrap() - 1e-12);
        assert!(best.delta_max <= 2.0 * SQRT_2 + 1e-9);
        if trial % 3 == 0 {
            assert!(best.delta_max <= 2.0 + 1e-9);
        }
    }
}

#[test]
fn classical_assignments_stay_within_two() {
    let cert = classical_bound();
    assert_eq!(cert.rows.len(), 16);
    assert!(cert.all_rows_pm_two());
    assert_eq!(cert.max, 2);
    for row in &cert.rows {
        let (q, r, s, t) = (row.q as i32, row.r as i32, row.s as i32, row.t as i32);
        assert_eq!((q + r) * s + (r - q) * t, row.value as i32);
    }
}

#[test]
fn entangled_state_with_zero_delta() {
    let s = RealTwoQubitState::new(0.5, -0.5, 0.5, 0.5).unwrap();
    assert!(delta_closed_form(&s).abs() <= 1e-12);
    assert!(delta(&s.to_state(), &standard_observables()).unwrap().abs() <= 1e-12);
    assert!(!violates(&s));
    let psi: PureState = s.to_state();
    assert!(!psi.is_product(1e-9).unwrap().is_product());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn closed_form_matches_for_arbitrary_reals(a in -1.0..1.0f64, b in -1.0..1.0f64, c in -1.0..1.0f64, d in -1.0..1.0f64) {
        prop_assume!(a * a + b * b + c * c + d * d > 1e-3);
        let s = RealTwoQubitState::normalized(a, b, c, d).unwrap();
        let direct = delta(&s.to_state(), &standard_observables()).unwrap();
        prop_assert!((direct - delta_closed_form(&s)).abs() <= 1e-9);
    }
}
