//! Seeded samplers for states, local unitaries and phase matrices.
//!
//! Every randomized routine takes a base seed; trial `t` draws from ChaCha
//! stream `t` of that seed so trials are independent of evaluation order.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{phase, ONE, ZERO};
use crate::luinv::LocalUnitary;
use crate::qstate::{tensor, PureState};
use crate::yangbaxter::PhaseMatrix;

pub type TrialRng = ChaCha8Rng;

/// RNG for trial `stream` of base seed `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_angle<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(0.0..TAU)
}

pub fn random_phase<R: Rng>(rng: &mut R) -> Complex64 {
    phase(random_angle(rng))
}

/// Haar-random normalized state (complex Gaussian amplitudes, normalized).
pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> PureState {
    let amps = (0..1usize << n).map(|_| gaussian_complex(rng)).collect();
    PureState::new(n, amps)
        .and_then(|s| s.normalized())
        .expect("valid size")
}

pub fn random_real_state<R: Rng>(n: usize, rng: &mut R) -> PureState {
    let amps: Vec<f64> = (0..1usize << n).map(|_| rng.sample(StandardNormal)).collect();
    PureState::from_real(n, &amps)
        .and_then(|s| s.normalized())
        .expect("valid size")
}

pub fn random_qubit<R: Rng>(rng: &mut R) -> PureState {
    PureState::qubit(gaussian_complex(rng), gaussian_complex(rng))
}

/// Tensor product of `n` random single-qubit states (unnormalized).
pub fn random_product_state<R: Rng>(n: usize, rng: &mut R) -> PureState {
    let factors: Vec<PureState> = (0..n).map(|_| random_qubit(rng)).collect();
    tensor(&factors).expect("n ≥ 1")
}

/// A random state with `a_{0⋯0} = 0`. Even draws are entangled (generic
/// amplitudes on the remaining strings); odd draws are products in which one
/// random factor is exactly `|1>`.
pub fn random_zero_base_state<R: Rng>(n: usize, rng: &mut R) -> PureState {
    if rng.random_bool(0.5) {
        let mut amps: Vec<Complex64> = (0..1usize << n).map(|_| gaussian_complex(rng)).collect();
        amps[0] = ZERO;
        PureState::new(n, amps).expect("valid size")
    } else {
        let flipped = rng.random_range(0..n);
        let factors: Vec<PureState> = (0..n)
            .map(|i| {
                if i == flipped {
                    PureState::qubit(ZERO, gaussian_complex(rng))
                } else {
                    random_qubit(rng)
                }
            })
            .collect();
        tensor(&factors).expect("n ≥ 1")
    }
}

/// Haar-distributed element of U(2): SU(2) part from a normalized Gaussian
/// pair and a uniform global phase.
pub fn random_local_unitary<R: Rng>(rng: &mut R) -> LocalUnitary {
    let (l, m) = (gaussian_complex(rng), gaussian_complex(rng));
    let norm = (l.norm_sqr() + m.norm_sqr()).sqrt();
    LocalUnitary::new(l / norm, m / norm, random_angle(rng)).expect("normalized pair")
}

/// Unit-circle phase matrix with uniform angles; the diagonal is forced to a
/// random `λ` when `constant_diagonal` is set.
pub fn random_phase_matrix<R: Rng>(n: usize, constant_diagonal: bool, rng: &mut R) -> PhaseMatrix {
    let dim = 1usize << n;
    if constant_diagonal {
        let lambda = random_phase(rng);
        let entries: Vec<Complex64> = (0..dim * dim).map(|_| random_phase(rng)).collect();
        PhaseMatrix::with_diagonal(n, lambda, |a, b| entries[a * dim + b]).expect("valid size")
    } else {
        let entries = (0..dim * dim).map(|_| random_phase(rng)).collect();
        PhaseMatrix::new(n, entries, None).expect("valid size")
    }
}

/// Constant-diagonal matrix whose phases are multiples of π/2, so exact
/// coincidences (both entangling and non-entangling) occur often.
pub fn random_quarter_phase_matrix<R: Rng>(n: usize, symmetric: bool, rng: &mut R) -> PhaseMatrix {
    let dim = 1usize << n;
    let quarter = |rng: &mut R| phase(FRAC_PI_2 * rng.random_range(0..4) as f64);
    let lambda = quarter(rng);
    let mut entries: Vec<Complex64> = (0..dim * dim).map(|_| quarter(rng)).collect();
    if symmetric {
        for a in 0..dim {
            for b in 0..a {
                entries[b * dim + a] = entries[a * dim + b];
            }
        }
    }
    PhaseMatrix::with_diagonal(n, lambda, |a, b| entries[a * dim + b]).expect("valid size")
}

/// Constant-diagonal matrix for which `Rφ` is a product:
/// `M_{α,β} = λ^{1−|α|−|β|} Π_{i∈α} x_i Π_{j∈β} λ²/x_j` with random `λ`, `x_i`.
pub fn random_unentangling_phase_matrix<R: Rng>(n: usize, rng: &mut R) -> PhaseMatrix {
    let lambda = random_phase(rng);
    let xs: Vec<Complex64> = (0..n).map(|_| random_phase(rng)).collect();
    factorized_phase_matrix(n, lambda, &xs)
}

/// Symmetric member of the unentangling family: `x_i = s_i λ` with signs
/// `s_i = ±1`, so `M_{α,β} = λ Π_{i∈α} s_i Π_{j∈β} s_j`, built exactly.
pub fn random_symmetric_unentangling_phase_matrix<R: Rng>(n: usize, rng: &mut R) -> PhaseMatrix {
    let lambda = random_phase(rng);
    let flips: usize = (0..n).fold(0, |acc, _| acc << 1 | usize::from(rng.random_bool(0.5)));
    let sign = |a: usize| {
        if (a & flips).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    };
    PhaseMatrix::with_diagonal(n, lambda, |a, b| lambda * (sign(a) * sign(b))).expect("valid size")
}

fn factorized_phase_matrix(n: usize, lambda: Complex64, xs: &[Complex64]) -> PhaseMatrix {
    let l2 = lambda * lambda;
    let row = |a: usize| -> Complex64 { (0..n).filter(|i| a >> (n - 1 - i) & 1 == 1).map(|i| xs[i]).product() };
    let col = |b: usize| -> Complex64 {
        (0..n)
            .filter(|j| b >> (n - 1 - j) & 1 == 1)
            .map(|j| l2 / xs[j])
            .product()
    };
    PhaseMatrix::with_diagonal(n, lambda, |a, b| {
        let exp = 1 - (a.count_ones() + b.count_ones()) as i64;
        crate::linalg::phase_pow(lambda, exp) * row(a) * col(b)
    })
    .expect("valid size")
}

/// Random symmetric constant-diagonal matrix with uniform angles.
pub fn random_symmetric_phase_matrix<R: Rng>(n: usize, rng: &mut R) -> PhaseMatrix {
    let dim = 1usize << n;
    let lambda = random_phase(rng);
    let mut entries = vec![ONE; dim * dim];
    for a in 0..dim {
        for b in 0..a {
            let z = random_phase(rng);
            entries[a * dim + b] = z;
            entries[b * dim + a] = z;
        }
    }
    PhaseMatrix::with_diagonal(n, lambda, |a, b| entries[a * dim + b]).expect("valid size")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::yangbaxter::r_unentangled_closed_form;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: f64 = trial_rng(7, 3).random();
        let b: f64 = trial_rng(7, 3).random();
        let c: f64 = trial_rng(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn unentangling_family_satisfies_closed_form() {
        let mut rng = trial_rng(1, 0);
        for n in 1..=3 {
            for _ in 0..20 {
                let m = random_unentangling_phase_matrix(n, &mut rng);
                assert!(r_unentangled_closed_form(&m, 1e-12).unwrap());
                let s = random_symmetric_unentangling_phase_matrix(n, &mut rng);
                assert!(s.is_symmetric(1e-12));
                assert!(r_unentangled_closed_form(&s, 1e-12).unwrap());
            }
        }
    }

    #[test]
    fn zero_base_states_have_zero_base() {
        let mut rng = trial_rng(2, 0);
        for _ in 0..50 {
            let s = random_zero_base_state(3, &mut rng);
            assert_eq!(s.amplitudes()[0], ZERO);
            assert!(!s.is_zero());
        }
    }
}
