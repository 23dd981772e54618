//! CHSH quantity for two qubits.
//!
//! `Δ = ⟨QS⟩ + ⟨RS⟩ + ⟨RT⟩ − ⟨QT⟩` with `Q, R` on qubit 1 and `S, T` on
//! qubit 2. Local deterministic ±1 assignments give `QS + RS + RT − QT = ±2`,
//! so any local model satisfies `Δ ≤ 2`.
//!
//! For the standard observables and a normalized real state
//! `a|00> + b|01> + c|10> + d|11>`,
//!
//! ```text
//! Δ = (2 − 4(a+d)² + 4(ad − bc)) / √2
//! ```
//!
//! and `Δ > 2` exactly when `(√2 − 1)/2 < (ad − bc) − (a + d)²`.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2, TAU};

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qstate::PureState;

pub type Mat2 = Matrix2<Complex64>;
pub type Mat4 = Matrix4<Complex64>;

/// Tolerance for observable validity (Hermitian, squares to I).
pub const OBSERVABLE_TOL: f64 = 1e-12;
/// Normalization tolerance for [`delta`] and [`maximize_chsh`].
pub const STATE_NORM_TOL: f64 = 1e-9;
/// Normalization tolerance for [`RealTwoQubitState`].
pub const REAL_NORM_TOL: f64 = 1e-12;

/// Grid spacing of the maximizer's first stage.
pub const GRID_STEP: f64 = PI / 64.0;
/// Coordinate refinement sweeps after the grid.
pub const REFINE_SWEEPS: usize = 3;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn pauli_z() -> Mat2 {
    Mat2::new(real(1.0), real(0.0), real(0.0), real(-1.0))
}

fn pauli_x() -> Mat2 {
    Mat2::new(real(0.0), real(1.0), real(1.0), real(0.0))
}

/// `cos θ · Z + sin θ · X`.
pub fn observable_at(theta: f64) -> Mat2 {
    pauli_z() * real(theta.cos()) + pauli_x() * real(theta.sin())
}

fn kron2(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChshObservables {
    q: Mat2,
    r: Mat2,
    s: Mat2,
    t: Mat2,
}

impl ChshObservables {
    pub fn new(q: Mat2, r: Mat2, s: Mat2, t: Mat2) -> Result<Self> {
        for (name, m) in [("Q", &q), ("R", &r), ("S", &s), ("T", &t)] {
            let herm = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            if herm > OBSERVABLE_TOL {
                return Err(Error::InvalidObservable {
                    name,
                    reason: format!("not Hermitian (defect {herm:e})"),
                });
            }
            let sq = (m * m - Mat2::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            if sq > OBSERVABLE_TOL {
                return Err(Error::InvalidObservable {
                    name,
                    reason: format!("does not square to I (defect {sq:e})"),
                });
            }
        }
        Ok(ChshObservables { q, r, s, t })
    }

    /// Observables `cos θ Z + sin θ X` at angles `(θ_Q, θ_R, θ_S, θ_T)`.
    pub fn from_angles(angles: [f64; 4]) -> Self {
        let [q, r, s, t] = angles.map(observable_at);
        ChshObservables { q, r, s, t }
    }

    pub fn q(&self) -> &Mat2 {
        &self.q
    }

    pub fn r(&self) -> &Mat2 {
        &self.r
    }

    pub fn s(&self) -> &Mat2 {
        &self.s
    }

    pub fn t(&self) -> &Mat2 {
        &self.t
    }

    /// `Q⊗S + R⊗S + R⊗T − Q⊗T`.
    pub fn bell_operator(&self) -> Mat4 {
        kron2(&self.q, &self.s) + kron2(&self.r, &self.s) + kron2(&self.r, &self.t) - kron2(&self.q, &self.t)
    }

    /// Largest eigenvalue modulus of the Bell operator.
    pub fn spectral_ceiling(&self) -> f64 {
        self.bell_operator()
            .symmetric_eigenvalues()
            .iter()
            .map(|e| e.abs())
            .fold(0.0, f64::max)
    }
}

/// `Q = Z`, `R = X`, `S = −(Z + X)/√2`, `T = (Z − X)/√2`.
pub fn standard_observables() -> ChshObservables {
    let h = FRAC_1_SQRT_2;
    ChshObservables::new(
        pauli_z(),
        pauli_x(),
        Mat2::new(real(-h), real(-h), real(-h), real(h)),
        Mat2::new(real(h), real(-h), real(-h), real(-h)),
    )
    .expect("standard observables are valid")
}

fn check_two_qubit_normalized(state: &PureState) -> Result<()> {
    if state.n() != 2 {
        return Err(Error::WrongQubitCount {
            expected: 2,
            got: state.n(),
        });
    }
    let norm = state.norm_sqr();
    if !(norm - 1.0).abs().le(&STATE_NORM_TOL) {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

fn expectation(psi: &[Complex64], op: &Mat4) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            acc += psi[i].conj() * op[(i, j)] * psi[j];
        }
    }
    acc
}

/// `Δ` by direct matrix action on the state.
pub fn delta(state: &PureState, obs: &ChshObservables) -> Result<f64> {
    check_two_qubit_normalized(state)?;
    let psi = state.amplitudes();
    let terms = [
        expectation(psi, &kron2(&obs.q, &obs.s)),
        expectation(psi, &kron2(&obs.r, &obs.s)),
        expectation(psi, &kron2(&obs.r, &obs.t)),
        -expectation(psi, &kron2(&obs.q, &obs.t)),
    ];
    let total: Complex64 = terms.iter().sum();
    // Hermitian observables: the imaginary part is rounding only.
    debug_assert!(total.im.abs() <= 1e-9, "imaginary part {}", total.im);
    Ok(total.re)
}

/// `a|00> + b|01> + c|10> + d|11>` with real, normalized coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealTwoQubitState {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RealTwoQubitState {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let norm = a * a + b * b + c * c + d * d;
        if !(norm - 1.0).abs().le(&REAL_NORM_TOL) {
            return Err(Error::NotNormalized(norm));
        }
        Ok(RealTwoQubitState { a, b, c, d })
    }

    /// Scales the coefficients to unit norm.
    pub fn normalized(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let norm = (a * a + b * b + c * c + d * d).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        Self::new(a / norm, b / norm, c / norm, d / norm)
    }

    /// Real part of a two-qubit state whose amplitudes are real.
    pub fn from_state(state: &PureState) -> Result<Self> {
        if state.n() != 2 {
            return Err(Error::WrongQubitCount {
                expected: 2,
                got: state.n(),
            });
        }
        let a = state.amplitudes();
        if a.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidObservable {
                name: "state",
                reason: "amplitudes are not real".into(),
            });
        }
        Self::new(a[0].re, a[1].re, a[2].re, a[3].re)
    }

    pub fn to_state(&self) -> PureState {
        PureState::from_real(2, &[self.a, self.b, self.c, self.d]).expect("two qubits")
    }

    /// `ad − bc`; zero exactly for products.
    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }
}

/// `(2 − 4(a+d)² + 4(ad − bc)) / √2`.
pub fn delta_closed_form(s: &RealTwoQubitState) -> f64 {
    let sum = s.a + s.d;
    (2.0 - 4.0 * sum * sum + 4.0 * s.determinant()) / SQRT_2
}

/// `(√2 − 1)/2 < (ad − bc) − (a + d)²`.
pub fn violates(s: &RealTwoQubitState) -> bool {
    let sum = s.a + s.d;
    (SQRT_2 - 1.0) / 2.0 < s.determinant() - sum * sum
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LhvRow {
    pub q: i8,
    pub r: i8,
    pub s: i8,
    pub t: i8,
    pub value: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LhvCertificate {
    pub rows: Vec<LhvRow>,
    pub max: i8,
}

impl LhvCertificate {
    pub fn all_rows_pm_two(&self) -> bool {
        self.rows.iter().all(|r| r.value.abs() == 2)
    }

    pub fn render(&self) -> String {
        let mut out = String::from("#  Q  R  S  T  QS+RS+RT-QT\n");
        for r in &self.rows {
            out.push_str(&format!("{:3}{:3}{:3}{:3}  {:3}\n", r.q, r.r, r.s, r.t, r.value));
        }
        out.push_str(&format!("max={}\n", self.max));
        out
    }
}

/// Enumerates the 16 deterministic ±1 assignments of `(Q, R, S, T)`.
pub fn classical_bound() -> LhvCertificate {
    let signs = [1i8, -1];
    let mut rows = Vec::with_capacity(16);
    for q in signs {
        for r in signs {
            for s in signs {
                for t in signs {
                    let value = q * s + r * s + r * t - q * t;
                    rows.push(LhvRow { q, r, s, t, value });
                }
            }
        }
    }
    let max = rows.iter().map(|r| r.value).max().unwrap_or(0);
    LhvCertificate { rows, max }
}

/// Correlations `⟨Z⊗Z⟩, ⟨Z⊗X⟩, ⟨X⊗Z⟩, ⟨X⊗X⟩` (real parts).
#[derive(Clone, Copy, Debug)]
struct Correlations {
    zz: f64,
    zx: f64,
    xz: f64,
    xx: f64,
}

impl Correlations {
    fn of(psi: &[Complex64]) -> Self {
        let (z, x) = (pauli_z(), pauli_x());
        let e = |a: &Mat2, b: &Mat2| expectation(psi, &kron2(a, b)).re;
        Correlations {
            zz: e(&z, &z),
            zx: e(&z, &x),
            xz: e(&x, &z),
            xx: e(&x, &x),
        }
    }

    /// `⟨A(θa) ⊗ B(θb)⟩` from precomputed cos/sin.
    fn pair(&self, (ca, sa): (f64, f64), (cb, sb): (f64, f64)) -> f64 {
        ca * cb * self.zz + ca * sb * self.zx + sa * cb * self.xz + sa * sb * self.xx
    }

    fn delta(&self, angles: [f64; 4]) -> f64 {
        let [q, r, s, t] = angles.map(|a| (a.cos(), a.sin()));
        self.pair(q, s) + self.pair(r, s) + self.pair(r, t) - self.pair(q, t)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChshMaximum {
    pub delta_max: f64,
    /// `(θ_Q, θ_R, θ_S, θ_T)` in `[0, 2π)`.
    pub angles: [f64; 4],
    /// Best value after the grid stage and after each refinement sweep.
    pub history: Vec<f64>,
}

impl ChshMaximum {
    pub fn observables(&self) -> ChshObservables {
        ChshObservables::from_angles(self.angles)
    }
}

/// Maximizes `Δ` over observables `cos θ Z + sin θ X`.
///
/// Stage one is an exhaustive grid with spacing `π/64` on all four angles,
/// ties going to the lexicographically smallest angle tuple. `Δ` splits as
/// `f(θ_Q; θ_S, θ_T) + g(θ_R; θ_S, θ_T)`, so for each `(θ_S, θ_T)` the best
/// `θ_Q` and `θ_R` are found independently; this visits the same grid
/// optimum as the full four-fold loop. Stage two runs golden-section search
/// on each coordinate within one grid step, for [`REFINE_SWEEPS`] sweeps,
/// keeping a move only if it does not lower `Δ`.
pub fn maximize_chsh(state: &PureState) -> Result<ChshMaximum> {
    check_two_qubit_normalized(state)?;
    let corr = Correlations::of(state.amplitudes());

    let steps = (TAU / GRID_STEP).round() as usize;
    let grid: Vec<f64> = (0..steps).map(|j| j as f64 * GRID_STEP).collect();
    let trig: Vec<(f64, f64)> = grid.iter().map(|a| (a.cos(), a.sin())).collect();

    let mut best = f64::NEG_INFINITY;
    let mut best_idx = [0usize; 4];
    for (si, &s) in trig.iter().enumerate() {
        for (ti, &t) in trig.iter().enumerate() {
            let (mut fq, mut qi) = (f64::NEG_INFINITY, 0);
            let (mut gr, mut ri) = (f64::NEG_INFINITY, 0);
            for (i, &a) in trig.iter().enumerate() {
                let f = corr.pair(a, s) - corr.pair(a, t);
                if f > fq {
                    fq = f;
                    qi = i;
                }
                let g = corr.pair(a, s) + corr.pair(a, t);
                if g > gr {
                    gr = g;
                    ri = i;
                }
            }
            let value = fq + gr;
            let idx = [qi, ri, si, ti];
            if value > best || (value == best && idx < best_idx) {
                best = value;
                best_idx = idx;
            }
        }
    }

    let mut angles = best_idx.map(|i| grid[i]);
    let mut current = corr.delta(angles);
    let mut history = vec![current];
    for _ in 0..REFINE_SWEEPS {
        for coord in 0..4 {
            let centre = angles[coord];
            let eval = |x: f64| {
                let mut a = angles;
                a[coord] = x;
                corr.delta(a)
            };
            let x = golden_section_max(eval, centre - GRID_STEP, centre + GRID_STEP);
            let value = eval(x);
            if value >= current {
                angles[coord] = x;
                current = value;
            }
        }
        history.push(current);
    }

    Ok(ChshMaximum {
        delta_max: current,
        angles: angles.map(|a| a.rem_euclid(TAU)),
        history,
    })
}

/// Golden-section search for a maximum of a unimodal function on `[lo, hi]`.
fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-12 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    (lo + hi) / 2.0
}

#[derive(Clone, Debug, PartialEq)]
pub struct ViolationCensus {
    pub trials: usize,
    pub violating: usize,
    pub entangled: usize,
    pub entangled_not_violating: usize,
    pub max_delta: f64,
}

/// Random real normalized states under the standard observables: how many
/// violate `Δ ≤ 2`, how many are entangled, and the largest `Δ` seen.
pub fn violation_census(trials: usize, seed: u64) -> Result<ViolationCensus> {
    let obs = standard_observables();
    let mut census = ViolationCensus {
        trials,
        violating: 0,
        entangled: 0,
        entangled_not_violating: 0,
        max_delta: f64::NEG_INFINITY,
    };
    for trial in 0..trials {
        let mut rng = crate::sample::trial_rng(seed, trial as u64);
        let psi = crate::sample::random_real_state(2, &mut rng);
        let d = delta(&psi, &obs)?;
        let entangled = !psi.is_product(crate::qstate::DEFAULT_TOL)?.is_product();
        let violating = d > 2.0;
        census.violating += violating as usize;
        census.entangled += entangled as usize;
        census.entangled_not_violating += (entangled && !violating) as usize;
        census.max_delta = census.max_delta.max(d);
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn standard_observables_square_to_identity() {
        let obs = standard_observables();
        for m in [obs.q(), obs.r(), obs.s(), obs.t()] {
            let sq = m * m;
            assert!((sq - Mat2::identity()).iter().all(|z| z.norm() < 1e-15));
            assert_eq!(*m, m.adjoint());
        }
        // Eigenvalues of S are ±1: trace 0 and determinant −1.
        let s = obs.s();
        assert!((s[(0, 0)] + s[(1, 1)]).norm() < 1e-15);
        assert!((s[(0, 0)] * s[(1, 1)] - s[(0, 1)] * s[(1, 0)] + 1.0).norm() < 1e-15);
    }

    #[test]
    fn invalid_observable_rejected() {
        let bad = Mat2::new(real(1.0), real(1.0), real(0.0), real(1.0));
        let z = pauli_z();
        assert!(matches!(
            ChshObservables::new(bad, z, z, z),
            Err(Error::InvalidObservable { name: "Q", .. })
        ));
        let half = pauli_z() * real(0.5);
        assert!(ChshObservables::new(z, z, z, half).is_err());
    }

    #[test]
    fn delta_examples() {
        let h = FRAC_1_SQRT_2;
        let obs = standard_observables();
        let singlet = PureState::from_real(2, &[0.0, h, -h, 0.0]).unwrap();
        assert!(close(delta(&singlet, &obs).unwrap(), 2.0 * SQRT_2, 1e-12));
        let zero = PureState::from_real(2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(close(delta(&zero, &obs).unwrap(), -SQRT_2, 1e-12));
        let ex = PureState::from_real(2, &[0.5, -0.5, 0.5, 0.5]).unwrap();
        assert!(close(delta(&ex, &obs).unwrap(), 0.0, 1e-12));

        let unnormalized = PureState::from_real(2, &[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(delta(&unnormalized, &obs), Err(Error::NotNormalized(_))));
    }

    #[test]
    fn closed_form_examples() {
        let h = FRAC_1_SQRT_2;
        let singlet = RealTwoQubitState::new(0.0, h, -h, 0.0).unwrap();
        assert!(close(delta_closed_form(&singlet), 4.0 / SQRT_2, 1e-15));
        assert!(violates(&singlet));
        let ex = RealTwoQubitState::new(0.5, -0.5, 0.5, 0.5).unwrap();
        assert_eq!(delta_closed_form(&ex), 0.0);
        assert!(!violates(&ex));
        let zero = RealTwoQubitState::new(1.0, 0.0, 0.0, 0.0).unwrap();
        assert!(close(delta_closed_form(&zero), -SQRT_2, 1e-15));
        assert!(!violates(&zero));
        assert!(RealTwoQubitState::new(1.0, 1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn lhv_table() {
        let cert = classical_bound();
        assert_eq!(cert.rows.len(), 16);
        assert!(cert.all_rows_pm_two());
        assert_eq!(cert.max, 2);
        let row = |q, r, s, t| {
            cert.rows
                .iter()
                .find(|x| (x.q, x.r, x.s, x.t) == (q, r, s, t))
                .unwrap()
                .value
        };
        assert_eq!(row(1, 1, 1, 1), 2);
        assert_eq!(row(1, -1, 1, 1), -2);
    }

    #[test]
    fn spectral_ceiling_of_standard_operator() {
        assert!(close(standard_observables().spectral_ceiling(), 2.0 * SQRT_2, 1e-12));
    }

    #[test]
    fn standard_observables_on_the_search_plane() {
        let on_plane = ChshObservables::from_angles([0.0, PI / 2.0, 5.0 * PI / 4.0, 7.0 * PI / 4.0]);
        let std = standard_observables();
        for (a, b) in [
            (on_plane.q(), std.q()),
            (on_plane.r(), std.r()),
            (on_plane.s(), std.s()),
            (on_plane.t(), std.t()),
        ] {
            assert!((a - b).iter().all(|z| z.norm() < 1e-15));
        }
    }

    #[test]
    fn golden_section_finds_peak() {
        let x = golden_section_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0);
        assert!(close(x, 0.3, 1e-6));
    }
}
