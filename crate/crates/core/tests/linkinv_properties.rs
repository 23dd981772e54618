use num_complex::Complex64;
use proptest::prelude::*;

use tanglement::linalg::{phase, I, ONE};
use tanglement::linkinv::{
    detects_linking, state_sum_bruteforce, state_sum_closed, trivial_z, z_invariant, z_of_diagram, z_sum_form,
    Component, Crossing, LinkDiagram, LinkStats, Sign,
};
use tanglement::sample::{self, trial_rng};
use tanglement::yangbaxter::{r_unentangled_closed_form, PhaseMatrix};

/// Diagram with the given self-crossing writhes and `2|lk|` shared crossings.
fn diagram(w1: i64, w2: i64, lk: i64) -> LinkDiagram {
    let mut crossings = Vec::new();
    let sign = |v: i64| if v < 0 { Sign::Minus } else { Sign::Plus };
    for _ in 0..w1.abs() {
        crossings.push(Crossing::new(Component::One, Component::One, sign(w1)));
    }
    for _ in 0..w2.abs() {
        crossings.push(Crossing::new(Component::Two, Component::Two, sign(w2)));
    }
    for i in 0..2 * lk.abs() {
        let (a, b) = if i % 2 == 0 {
            (Component::One, Component::Two)
        } else {
            (Component::Two, Component::One)
        };
        crossings.push(Crossing::new(a, b, sign(lk)));
    }
    LinkDiagram::new(crossings).unwrap()
}

/// Independent state sum: nested loops over colorings, plain left-to-right sum.
fn oracle_state_sum(d: &LinkDiagram, m: &PhaseMatrix) -> Complex64 {
    let dim = m.dim();
    let mut total = Complex64::new(0.0, 0.0);
    for c1 in 0..dim {
        for c2 in 0..dim {
            let mut term = ONE;
            for x in d.crossings() {
                // Shared crossings always read M at (color of K1, color of K2).
                let w = match (x.a, x.b) {
                    (Component::One, Component::One) => m.entry(c1, c1),
                    (Component::Two, Component::Two) => m.entry(c2, c2),
                    _ => m.entry(c1, c2),
                };
                term *= if x.sign == Sign::Plus { w } else { w.conj() };
            }
            total += term;
        }
    }
    total
}

#[test]
fn bruteforce_matches_loop_oracle() {
    for trial in 0..200u64 {
        let mut rng = trial_rng(3000, trial);
        let n = 1 + (trial as usize % 2);
        let m = sample::random_phase_matrix(n, true, &mut rng);
        let d = diagram((trial % 5) as i64 - 2, (trial % 3) as i64 - 1, (trial % 7) as i64 - 3);
        let got = state_sum_bruteforce(&d, &m).unwrap();
        let want = oracle_state_sum(&d, &m);
        assert!((got - want).norm() <= 1e-12 * want.norm().max(1.0), "trial {trial}");
    }
}

#[test]
fn closed_form_matches_bruteforce() {
    for trial in 0..300u64 {
        let mut rng = trial_rng(3100, trial);
        let n = 1 + (trial as usize % 2);
        let m = sample::random_phase_matrix(n, true, &mut rng);
        let (w1, w2, lk) = ((trial % 7) as i64 - 3, (trial % 5) as i64 - 2, (trial % 9) as i64 - 4);
        let d = diagram(w1, w2, lk);
        let brute = state_sum_bruteforce(&d, &m).unwrap();
        let closed = state_sum_closed(&d.stats(), &m).unwrap();
        assert!((brute - closed).norm() <= 1e-9 * brute.norm() + 1e-12, "trial {trial}");
    }
}

#[test]
fn z_depends_on_linking_number_only() {
    for trial in 0..100u64 {
        let mut rng = trial_rng(3200, trial);
        let m = sample::random_phase_matrix(1 + (trial as usize % 2), true, &mut rng);
        for lk in -2..=2 {
            let reference = z_sum_form(lk, &m).unwrap();
            for w1 in -3..=3 {
                for w2 in -3..=3 {
                    let z = z_of_diagram(&diagram(w1, w2, lk), &m).unwrap();
                    assert!((z - reference).norm() <= 1e-12, "trial {trial} lk={lk} w=({w1},{w2})");
                    let closed = z_invariant(&LinkStats::new(w1, w2, lk), &m).unwrap();
                    assert!((closed - reference).norm() <= 1e-12);
                }
            }
        }
    }
}

#[test]
fn reference_values() {
    let i_phase = PhaseMatrix::with_diagonal(1, ONE, |_, _| I).unwrap();
    assert!((z_of_diagram(&LinkDiagram::hopf(), &i_phase).unwrap()).norm() <= 1e-12);
    assert!((z_of_diagram(&LinkDiagram::unlink(), &i_phase).unwrap() - 4.0).norm() <= 1e-12);
    assert_eq!(trivial_z(&i_phase), Complex64::new(4.0, 0.0));
    let ones = PhaseMatrix::all_ones(1).unwrap();
    assert!((z_of_diagram(&LinkDiagram::hopf(), &ones).unwrap() - 4.0).norm() <= 1e-12);
}

#[test]
fn detection_witness_changes_z() {
    for trial in 0..300u64 {
        let mut rng = trial_rng(3300, trial);
        let n = 1 + (trial as usize % 2);
        let m = match trial % 3 {
            0 => sample::random_phase_matrix(n, true, &mut rng),
            1 => sample::random_symmetric_unentangling_phase_matrix(n, &mut rng),
            _ => sample::random_quarter_phase_matrix(n, true, &mut rng),
        };
        let lambda = m.lambda().unwrap();
        match detects_linking(&m, 1e-9).unwrap() {
            Some((a, b)) => {
                let x = m.entry(a.index(), b.index());
                assert!((x * x - lambda * lambda).norm() > 1e-9);
            }
            None => {
                // Every off-diagonal entry squares to λ², so Z is 4^n for every lk.
                for lk in -3..=3 {
                    assert!(
                        (z_sum_form(lk, &m).unwrap() - trivial_z(&m)).norm() <= 1e-9,
                        "trial {trial}"
                    );
                }
            }
        }
    }
}

#[test]
fn symmetric_unentangled_matrices_are_blind() {
    for trial in 0..300u64 {
        let mut rng = trial_rng(3400, trial);
        let m = sample::random_symmetric_unentangling_phase_matrix(1 + (trial as usize % 2), &mut rng);
        assert!(r_unentangled_closed_form(&m, 1e-9).unwrap());
        assert!(detects_linking(&m, 1e-9).unwrap().is_none());
    }
}

#[test]
fn odd_shared_crossings_are_rejected() {
    let one = Crossing::new(Component::One, Component::Two, Sign::Plus);
    assert!(LinkDiagram::new(vec![one]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn writhe_cancels_for_any_diagonal(angle in 0.0..6.3f64, w1 in -4i64..=4, w2 in -4i64..=4, lk in -3i64..=3, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let base = sample::random_phase_matrix(1, false, &mut rng);
        let lambda = phase(angle);
        let m = PhaseMatrix::with_diagonal(1, lambda, |a, b| base.entry(a, b)).unwrap();
        let z = z_of_diagram(&diagram(w1, w2, lk), &m).unwrap();
        prop_assert!((z - z_sum_form(lk, &m).unwrap()).norm() <= 1e-12);
    }
}
