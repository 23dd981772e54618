//! Local unitaries and 2×2 amplitude minors.
//!
//! For a position `k`, each context `(α, β)` of the other `n−1` qubits gives a
//! column `v = (a_{α0β}, a_{α1β})ᵀ`. A unitary `U` at `k` maps every column to
//! `Uv`, so for two contexts the matrix `[v_a v_b]` becomes `U[v_a v_b]` and
//! the modulus of its determinant is unchanged. All such minors vanish for a
//! product state.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{fmt_real, phase, ZERO};
use crate::qstate::{BitString, PureState, DEFAULT_TOL};
use crate::sample;

/// Tolerance on `|λ|² + |μ|² = 1`.
pub const UNITARY_TOL: f64 = 1e-12;

/// `e^{iθ/2} [[λ, μ], [−μ̄, λ̄]]` with `|λ|² + |μ|² = 1`; its determinant is `e^{iθ}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalUnitary {
    lambda: Complex64,
    mu: Complex64,
    global_phase: f64,
}

impl LocalUnitary {
    pub fn new(lambda: Complex64, mu: Complex64, global_phase: f64) -> Result<Self> {
        let norm = lambda.norm_sqr() + mu.norm_sqr();
        if !(norm - 1.0).abs().le(&UNITARY_TOL) {
            return Err(Error::NotUnitary(norm));
        }
        Ok(LocalUnitary {
            lambda,
            mu,
            global_phase,
        })
    }

    pub fn identity() -> Self {
        LocalUnitary {
            lambda: Complex64::new(1.0, 0.0),
            mu: ZERO,
            global_phase: 0.0,
        }
    }

    /// `λ = 0, μ = 1`: sends `|0>` to `−|1>` and `|1>` to `|0>`.
    pub fn bit_flip() -> Self {
        LocalUnitary {
            lambda: ZERO,
            mu: Complex64::new(1.0, 0.0),
            global_phase: 0.0,
        }
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    /// Row-major 2×2 matrix.
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        let g = phase(self.global_phase / 2.0);
        [
            [g * self.lambda, g * self.mu],
            [-g * self.mu.conj(), g * self.lambda.conj()],
        ]
    }

    pub fn det(&self) -> Complex64 {
        let [[a, b], [c, d]] = self.matrix();
        a * d - b * c
    }
}

/// `(I^{⊗(k−1)} ⊗ U ⊗ I^{⊗(n−k)}) ψ`, `k` 1-based.
pub fn apply_single_qubit(state: &PureState, k: usize, u: &LocalUnitary) -> Result<PureState> {
    let n = state.n();
    if k == 0 || k > n {
        return Err(Error::QubitOutOfRange { index: k, n });
    }
    let [[u00, u01], [u10, u11]] = u.matrix();
    let bit = 1usize << (n - k);
    let mut out = state.amplitudes().to_vec();
    for s in (0..out.len()).filter(|s| s & bit == 0) {
        let (a0, a1) = (out[s], out[s | bit]);
        out[s] = u00 * a0 + u01 * a1;
        out[s | bit] = u10 * a0 + u11 * a1;
    }
    PureState::new(n, out)
}

/// The strings `α` (left of `k`) and `β` (right of `k`) around a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Context {
    pub left: BitString,
    pub right: BitString,
}

impl Context {
    /// Splits an `(n−1)`-bit context index `α‖β` around position `k`.
    fn from_index(index: usize, k: usize, n: usize) -> Self {
        let right_len = n - k;
        Context {
            left: BitString::from_index(index >> right_len, k - 1),
            right: BitString::from_index(index & ((1 << right_len) - 1), right_len),
        }
    }

    /// Index of `α b β` in the full state.
    fn amplitude_index(&self, b: usize) -> usize {
        let right_len = self.right.len();
        (self.left.index() << (right_len + 1)) | (b << right_len) | self.right.index()
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·{}", self.left, self.right)
    }
}

/// Determinant of `[[a_{α0β}, a_{γ0δ}], [a_{α1β}, a_{γ1δ}]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinorSpec {
    pub position: usize,
    pub context_a: Context,
    pub context_b: Context,
}

impl MinorSpec {
    /// Builds a spec from context strings written with `·` at the position,
    /// e.g. `("·10", "·11")` for position 1 of three qubits.
    pub fn parse(position: usize, a: &str, b: &str) -> Result<Self> {
        let ctx = |s: &str| -> Result<Context> {
            let (l, r) = s
                .split_once('·')
                .ok_or_else(|| Error::InvalidMinor(format!("context {s:?} lacks '·'")))?;
            Ok(Context {
                left: BitString::parse(l)?,
                right: BitString::parse(r)?,
            })
        };
        Ok(MinorSpec {
            position,
            context_a: ctx(a)?,
            context_b: ctx(b)?,
        })
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let k = self.position;
        if k == 0 || k > n {
            return Err(Error::QubitOutOfRange { index: k, n });
        }
        for c in [&self.context_a, &self.context_b] {
            if c.left.len() != k - 1 || c.right.len() != n - k {
                return Err(Error::InvalidMinor(format!(
                    "context {c} does not fit position {k} of {n} qubits"
                )));
            }
        }
        if self.context_a == self.context_b {
            return Err(Error::InvalidMinor("contexts must differ".into()));
        }
        Ok(())
    }
}

impl fmt::Display for MinorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} ({}) ({})", self.position, self.context_a, self.context_b)
    }
}

/// `a_{α0β} a_{γ1δ} − a_{γ0δ} a_{α1β}`.
pub fn minor(state: &PureState, spec: &MinorSpec) -> Result<Complex64> {
    spec.validate(state.n())?;
    Ok(minor_unchecked(state.amplitudes(), spec))
}

fn minor_unchecked(amps: &[Complex64], spec: &MinorSpec) -> Complex64 {
    let a = &spec.context_a;
    let b = &spec.context_b;
    amps[a.amplitude_index(0)] * amps[b.amplitude_index(1)] - amps[b.amplitude_index(0)] * amps[a.amplitude_index(1)]
}

/// Every minor at position `k`: contexts in ascending index order, pairs
/// `(i, j)` with `i < j` lexicographically.
pub fn all_minors(state: &PureState, k: usize) -> Result<Vec<(MinorSpec, Complex64)>> {
    let n = state.n();
    if k == 0 || k > n {
        return Err(Error::QubitOutOfRange { index: k, n });
    }
    let contexts = 1usize << (n - 1);
    let mut out = Vec::with_capacity(contexts * contexts.saturating_sub(1) / 2);
    for i in 0..contexts {
        for j in i + 1..contexts {
            let spec = MinorSpec {
                position: k,
                context_a: Context::from_index(i, k, n),
                context_b: Context::from_index(j, k, n),
            };
            out.push((spec, minor_unchecked(state.amplitudes(), &spec)));
        }
    }
    Ok(out)
}

/// All minors at every position, positions ascending.
pub fn all_minors_every_position(state: &PureState) -> Vec<(MinorSpec, Complex64)> {
    (1..=state.n())
        .flat_map(|k| all_minors(state, k).expect("position in range"))
        .collect()
}

/// `max |minor| / max_s |a_s|²`, zero for a single qubit.
pub fn max_relative_minor(state: &PureState) -> f64 {
    let scale = state.max_modulus().powi(2).max(1e-300);
    all_minors_every_position(state)
        .into_iter()
        .map(|(_, m)| m.norm() / scale)
        .fold(0.0, f64::max)
}

/// True when every minor is at most `tol · max_s |a_s|²` in modulus.
pub fn all_minors_vanish(state: &PureState, tol: f64) -> bool {
    max_relative_minor(state) <= tol
}

/// Replaces the `2 × 2^{n−1}` matrix of `state` at position `k` by its best
/// rank-one approximation, found by alternating least squares. Afterwards
/// every minor at `k` vanishes.
pub fn project_rank_one(state: &PureState, k: usize) -> Result<PureState> {
    let n = state.n();
    if k == 0 || k > n {
        return Err(Error::QubitOutOfRange { index: k, n });
    }
    let contexts = 1usize << (n - 1);
    let ctx: Vec<Context> = (0..contexts).map(|c| Context::from_index(c, k, n)).collect();
    let amps = state.amplitudes();
    let row = |b: usize| -> Vec<Complex64> { ctx.iter().map(|c| amps[c.amplitude_index(b)]).collect() };
    let rows = [row(0), row(1)];

    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 { x.iter().zip(y).map(|(p, q)| p.conj() * q).sum() };
    let nsq = |x: &[Complex64]| -> f64 { x.iter().map(|z| z.norm_sqr()).sum() };

    // Start from the heavier row.
    let mut v = if nsq(&rows[0]) >= nsq(&rows[1]) {
        rows[0].clone()
    } else {
        rows[1].clone()
    };
    let mut u = [ZERO; 2];
    if nsq(&v) == 0.0 {
        return Ok(state.clone());
    }
    for _ in 0..500 {
        // u_r = <v, row_r> / |v|², conjugated so that row_r ≈ u_r v.
        let vv = nsq(&v);
        let new_u = [dot(&v, &rows[0]) / vv, dot(&v, &rows[1]) / vv];
        let uu = new_u[0].norm_sqr() + new_u[1].norm_sqr();
        let new_v: Vec<Complex64> = (0..contexts)
            .map(|c| (new_u[0].conj() * rows[0][c] + new_u[1].conj() * rows[1][c]) / uu)
            .collect();
        let change = (new_u[0] - u[0]).norm() + (new_u[1] - u[1]).norm();
        u = new_u;
        v = new_v;
        if change <= 1e-15 * (u[0].norm() + u[1].norm()) {
            break;
        }
    }
    let mut out = vec![ZERO; amps.len()];
    for (c, context) in ctx.iter().enumerate() {
        out[context.amplitude_index(0)] = u[0] * v[c];
        out[context.amplitude_index(1)] = u[1] * v[c];
    }
    PureState::new(n, out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    /// Haar-random state.
    Generic,
    /// Tensor product of random qubits.
    Product,
    /// Random state projected to rank one at a random proper subset of positions.
    Partial,
    /// Random state projected to rank one at every position.
    Full,
}

impl fmt::Display for SampleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleKind::Generic => "generic",
            SampleKind::Product => "product",
            SampleKind::Partial => "partial",
            SampleKind::Full => "full",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanConfig {
    pub qubits: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

impl ScanConfig {
    pub fn new(qubits: usize, trials: usize, seed: u64) -> Self {
        ScanConfig {
            qubits,
            trials,
            seed,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub trial: usize,
    pub kind: SampleKind,
    pub max_minor: f64,
    pub minors_vanish: bool,
    pub is_product: bool,
}

impl ScanRow {
    pub fn is_counterexample(&self) -> bool {
        self.minors_vanish && !self.is_product
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn counterexamples(&self) -> usize {
        self.rows.iter().filter(|r| r.is_counterexample()).count()
    }

    /// Text table followed by the `counterexamples=<count>` summary line.
    pub fn render(&self) -> String {
        let mut out = String::from("# seed stream n kind max_minor minors_vanish is_product\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{} {} {} {} {} {} {}\n",
                self.config.seed,
                r.trial,
                self.config.qubits,
                r.kind,
                fmt_real(r.max_minor),
                r.minors_vanish,
                r.is_product
            ));
        }
        out.push_str(&format!("counterexamples={}\n", self.counterexamples()));
        out
    }
}

fn sample_for_scan(n: usize, trial: usize, rng: &mut sample::TrialRng) -> (SampleKind, PureState) {
    let kind = match trial % 4 {
        0 => SampleKind::Generic,
        1 => SampleKind::Product,
        2 if n > 1 => SampleKind::Partial,
        _ => SampleKind::Full,
    };
    let state = match kind {
        SampleKind::Generic => sample::random_state(n, rng),
        SampleKind::Product => sample::random_product_state(n, rng),
        SampleKind::Partial | SampleKind::Full => {
            let positions: Vec<usize> = if kind == SampleKind::Full {
                (1..=n).collect()
            } else {
                // Random non-empty proper subset.
                let mask = rng.random_range(1..(1u32 << n) - 1);
                (1..=n).filter(|k| mask >> (k - 1) & 1 == 1).collect()
            };
            let mut s = sample::random_state(n, rng);
            for _ in 0..8 {
                for &k in &positions {
                    s = project_rank_one(&s, k).expect("position in range");
                }
            }
            s
        }
    };
    (kind, state)
}

/// Samples states and records any whose minors all vanish while the
/// product-state criterion reports entanglement.
pub fn conjecture_scan(config: &ScanConfig) -> Result<ScanReport> {
    if config.qubits == 0 {
        return Err(Error::NoQubits);
    }
    if config.qubits > 4 {
        return Err(Error::TooManyQubits(config.qubits));
    }
    let rows = (0..config.trials)
        .map(|trial| {
            let mut rng = sample::trial_rng(config.seed, trial as u64);
            let (kind, state) = sample_for_scan(config.qubits, trial, &mut rng);
            let max_minor = max_relative_minor(&state);
            let is_product = state.is_product(config.tol)?.is_product();
            Ok(ScanRow {
                trial,
                kind,
                max_minor,
                minors_vanish: max_minor <= config.tol,
                is_product,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport { config: *config, rows })
}
