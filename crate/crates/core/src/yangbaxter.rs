//! Phase-matrix solutions of the Yang-Baxter equation.
//!
//! A `2^n × 2^n` matrix `M` with unit-modulus entries defines the phased swap
//! `R|α,β> = M_{α,β}|β,α>` on `W ⊗ W`, `W = V^{⊗n}`. Every such `R` is unitary
//! and satisfies `(R⊗I)(I⊗R)(R⊗I) = (I⊗R)(R⊗I)(I⊗R)`, so braid words map to
//! products of phased permutations.
//!
//! Applied to the uniform state `φ = Σ_{α,β}|α,β>`, `R` gives
//! `Rφ = Σ M_{β,α}|α,β>`. With a constant diagonal `M_{α,α} = λ` that state is
//! a product exactly when
//!
//! ```text
//! λ^{|α|+|β|-1} M_{α,β} = Π_{i∈α} M_{e_i,0} · Π_{j∈β} M_{0,e_j}   for all α, β.
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, phase_pow, CMatrix, ONE, ZERO};
use crate::qstate::{BitString, PureState};

/// Tolerance on `|M_{α,β}| = 1` and on the constant diagonal.
pub const UNIT_TOL: f64 = 1e-12;

/// Largest string length `n` accepted for a phase matrix.
pub const MAX_PHASE_BITS: usize = 6;

/// Largest total qubit count `k·n` for a braid operator.
pub const MAX_BRAID_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseMatrix {
    n: usize,
    entries: Vec<Complex64>,
    lambda: Option<Complex64>,
}

impl PhaseMatrix {
    /// `entries` is row-major, `entries[α·2^n + β] = M_{α,β}`.
    pub fn new(n: usize, entries: Vec<Complex64>, lambda: Option<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoQubits);
        }
        if n > MAX_PHASE_BITS {
            return Err(Error::TooManyQubits(n));
        }
        let dim = 1usize << n;
        if entries.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        for (idx, z) in entries.iter().enumerate() {
            let modulus = z.norm();
            if !(modulus - 1.0).abs().le(&UNIT_TOL) {
                return Err(Error::NotUnitModulus {
                    alpha: idx / dim,
                    beta: idx % dim,
                    modulus,
                });
            }
        }
        if let Some(l) = lambda {
            if !(l.norm() - 1.0).abs().le(&UNIT_TOL) {
                return Err(Error::NotUnitModulus {
                    alpha: 0,
                    beta: 0,
                    modulus: l.norm(),
                });
            }
            if let Some(alpha) = (0..dim).find(|&a| (entries[a * dim + a] - l).norm() > UNIT_TOL) {
                return Err(Error::DiagonalMismatch { alpha });
            }
        }
        Ok(PhaseMatrix { n, entries, lambda })
    }

    /// Builds `M` from a function of index pairs, with the diagonal set to `λ`.
    pub fn with_diagonal(n: usize, lambda: Complex64, off: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        if n > MAX_PHASE_BITS {
            return Err(Error::TooManyQubits(n));
        }
        let dim = 1usize << n;
        let entries = (0..dim * dim)
            .map(|idx| {
                let (a, b) = (idx / dim, idx % dim);
                if a == b {
                    lambda
                } else {
                    off(a, b)
                }
            })
            .collect();
        Self::new(n, entries, Some(lambda))
    }

    /// Builds `M` from phase angles in radians, row-major.
    pub fn from_angles(n: usize, angles: &[f64], lambda: Option<Complex64>) -> Result<Self> {
        Self::new(n, angles.iter().map(|&t| linalg::phase(t)).collect(), lambda)
    }

    /// All entries 1; `R` is the plain swap.
    pub fn all_ones(n: usize) -> Result<Self> {
        Self::with_diagonal(n, ONE, |_, _| ONE)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `2^n`, the dimension of `W`.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn entry(&self, alpha: usize, beta: usize) -> Complex64 {
        self.entries[alpha * self.dim() + beta]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn lambda(&self) -> Option<Complex64> {
        self.lambda
    }

    pub fn require_lambda(&self) -> Result<Complex64> {
        self.lambda.ok_or(Error::MissingLambda)
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        let d = self.dim();
        (0..d).all(|a| (0..a).all(|b| (self.entry(a, b) - self.entry(b, a)).norm() <= tol))
    }

    /// `m_{α,0} = Π_{i∈α} M_{e_i,0}`.
    pub fn m_row(&self, alpha: usize) -> Complex64 {
        BitString::from_index(alpha, self.n)
            .positions()
            .map(|i| self.entry(1 << (self.n - i), 0))
            .product()
    }

    /// `m_{0,α} = Π_{j∈α} M_{0,e_j}`.
    pub fn m_col(&self, alpha: usize) -> Complex64 {
        BitString::from_index(alpha, self.n)
            .positions()
            .map(|j| self.entry(0, 1 << (self.n - j)))
            .product()
    }
}

/// An operator with exactly one nonzero entry per row and column:
/// `|x> ↦ phase[x] |target[x]>`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasedPermutation {
    target: Vec<usize>,
    phase: Vec<Complex64>,
}

impl PhasedPermutation {
    pub fn identity(dim: usize) -> Self {
        PhasedPermutation {
            target: (0..dim).collect(),
            phase: vec![ONE; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    pub fn target(&self, x: usize) -> usize {
        self.target[x]
    }

    pub fn phase(&self, x: usize) -> Complex64 {
        self.phase[x]
    }

    /// The operator `next · self` (apply `self` first).
    pub fn then(&self, next: &PhasedPermutation) -> PhasedPermutation {
        assert_eq!(self.dim(), next.dim(), "dimension mismatch");
        let (target, phase) = self
            .target
            .iter()
            .zip(&self.phase)
            .map(|(&t, &p)| (next.target[t], p * next.phase[t]))
            .unzip();
        PhasedPermutation { target, phase }
    }

    pub fn adjoint(&self) -> PhasedPermutation {
        let mut target = vec![0; self.dim()];
        let mut phase = vec![ZERO; self.dim()];
        for (x, (&t, &p)) in self.target.iter().zip(&self.phase).enumerate() {
            target[t] = x;
            phase[t] = p.conj();
        }
        PhasedPermutation { target, phase }
    }

    /// True when `target` is a bijection and every phase has unit modulus.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let mut seen = vec![false; self.dim()];
        for &t in &self.target {
            if t >= seen.len() || std::mem::replace(&mut seen[t], true) {
                return false;
            }
        }
        self.phase.iter().all(|p| (p.norm() - 1.0).abs() <= tol)
    }

    pub fn apply(&self, state: &PureState) -> Result<PureState> {
        if state.dim() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                got: state.dim(),
            });
        }
        let mut out = vec![ZERO; self.dim()];
        for (x, a) in state.amplitudes().iter().enumerate() {
            out[self.target[x]] += self.phase[x] * a;
        }
        PureState::new(state.n(), out)
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (x, (&t, &p)) in self.target.iter().zip(&self.phase).enumerate() {
            m[(t, x)] = p;
        }
        m
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_deviation(&self, other: &PhasedPermutation) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        (0..self.dim())
            .map(|x| {
                if self.target[x] == other.target[x] {
                    (self.phase[x] - other.phase[x]).norm()
                } else {
                    self.phase[x].norm().max(other.phase[x].norm())
                }
            })
            .fold(0.0, f64::max)
    }
}

/// `R` on `W ⊗ W` as a phased permutation; basis index of `|α,β>` is `α·2^n + β`.
#[allow(non_snake_case)]
pub fn build_R(m: &PhaseMatrix) -> PhasedPermutation {
    let d = m.dim();
    let mut target = Vec::with_capacity(d * d);
    let mut phase = Vec::with_capacity(d * d);
    for alpha in 0..d {
        for beta in 0..d {
            target.push(beta * d + alpha);
            phase.push(m.entry(alpha, beta));
        }
    }
    PhasedPermutation { target, phase }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct YbeReport {
    pub max_deviation: f64,
    pub holds: bool,
}

/// Checks the Yang-Baxter equation for `R = build_R(m)` by dense
/// multiplication on `W^{⊗3}`.
pub fn verify_ybe(m: &PhaseMatrix, tol: f64) -> Result<YbeReport> {
    if m.n() > 3 {
        return Err(Error::DimensionOverflow(3 * m.n()));
    }
    let r = build_R(m).to_dense();
    let max_deviation = ybe_deviation(&r, m.dim());
    Ok(YbeReport {
        max_deviation,
        holds: max_deviation <= tol,
    })
}

/// `max |(R⊗I)(I⊗R)(R⊗I) − (I⊗R)(R⊗I)(I⊗R)|` for an arbitrary operator `r`
/// on `W ⊗ W` with `dim W = w_dim`.
pub fn ybe_deviation(r: &CMatrix, w_dim: usize) -> f64 {
    assert_eq!(r.nrows(), w_dim * w_dim, "R must act on W ⊗ W");
    let id = linalg::identity(w_dim);
    let r12 = linalg::kron(r, &id);
    let r23 = linalg::kron(&id, r);
    let lhs = &r12 * &r23 * &r12;
    let rhs = &r23 * &r12 * &r23;
    linalg::max_deviation(&lhs, &rhs)
}

/// One braid generator `σ_i^{±1}`, `i` 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BraidLetter {
    pub generator: usize,
    pub inverse: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidGenerator { index: 0, strands });
        }
        if let Some(bad) = letters.iter().find(|l| l.generator == 0 || l.generator >= strands) {
            return Err(Error::InvalidGenerator {
                index: bad.generator,
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses signed generator indices, e.g. `"1 -2 1"` for `σ_1 σ_2^{-1} σ_1`.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let v: i64 = t
                    .parse()
                    .map_err(|_| Error::parse(1, format!("bad braid letter {t:?}")))?;
                if v == 0 {
                    return Err(Error::InvalidGenerator { index: 0, strands });
                }
                Ok(BraidLetter {
                    generator: v.unsigned_abs() as usize,
                    inverse: v < 0,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }
}

fn check_braid_size(word: &BraidWord, m: &PhaseMatrix) -> Result<()> {
    let qubits = word.strands * m.n();
    if qubits > MAX_BRAID_QUBITS {
        return Err(Error::DimensionOverflow(qubits));
    }
    Ok(())
}

/// `σ_i^{±1}` acting on strands `i, i+1` of `W^{⊗k}`; strand 1 is the most
/// significant digit in base `2^n`.
fn letter_operator(letter: BraidLetter, strands: usize, m: &PhaseMatrix) -> PhasedPermutation {
    let d = m.dim();
    let total = d.pow(strands as u32);
    let hi = d.pow((strands - letter.generator) as u32);
    let lo = d.pow((strands - letter.generator - 1) as u32);
    let (target, phase) = (0..total)
        .map(|x| {
            let a = (x / hi) % d;
            let b = (x / lo) % d;
            let rest = x - a * hi - b * lo;
            let ph = if letter.inverse {
                // R† sends |a,b> to conj(M_{b,a}) |b,a>.
                m.entry(b, a).conj()
            } else {
                m.entry(a, b)
            };
            (rest + b * hi + a * lo, ph)
        })
        .unzip();
    PhasedPermutation { target, phase }
}

/// The operator of a braid word on `W^{⊗k}`; the leftmost letter acts first.
pub fn braid_operator(word: &BraidWord, m: &PhaseMatrix) -> Result<PhasedPermutation> {
    check_braid_size(word, m)?;
    let dim = m.dim().pow(word.strands as u32);
    Ok(word.letters.iter().fold(PhasedPermutation::identity(dim), |acc, &l| {
        acc.then(&letter_operator(l, word.strands, m))
    }))
}

/// Dense route for small words: `I^{⊗(i−1)} ⊗ R^{±1} ⊗ I^{⊗(k−i−1)}` via
/// Kronecker products and matrix multiplication.
pub fn braid_operator_dense(word: &BraidWord, m: &PhaseMatrix) -> Result<CMatrix> {
    check_braid_size(word, m)?;
    let d = m.dim();
    let r = build_R(m).to_dense();
    let r_inv = r.adjoint();
    let dim = d.pow(word.strands as u32);
    let mut acc = linalg::identity(dim);
    for l in &word.letters {
        let left = linalg::identity(d.pow(l.generator as u32 - 1));
        let right = linalg::identity(d.pow((word.strands - l.generator - 1) as u32));
        let core = if l.inverse { &r_inv } else { &r };
        let op = linalg::kron(&linalg::kron(&left, core), &right);
        acc = op * acc;
    }
    Ok(acc)
}

/// `φ = Σ_{α,β} |α,β>` on `2n` qubits (unnormalized).
pub fn uniform_state(n: usize) -> Result<PureState> {
    PureState::new(2 * n, vec![ONE; 1 << (2 * n)])
}

/// `Rφ`, whose amplitude at `|α,β>` is `M_{β,α}`.
pub fn r_phi(m: &PhaseMatrix) -> PureState {
    let phi = uniform_state(m.n()).expect("phase matrix size is bounded");
    build_R(m).apply(&phi).expect("dimensions agree")
}

/// Whether `Rφ` is entangled, decided by the product-state criterion on the
/// flattened `2n`-qubit state.
pub fn r_entangles_uniform(m: &PhaseMatrix, tol: f64) -> Result<bool> {
    Ok(!r_phi(m).is_product(tol)?.is_product())
}

/// Largest `|λ^{|α|+|β|-1} M_{α,β} − m_{α,0} m_{0,β}|` over all pairs.
pub fn closed_form_max_residual(m: &PhaseMatrix) -> Result<f64> {
    let lambda = m.require_lambda()?;
    let d = m.dim();
    let rows: Vec<Complex64> = (0..d).map(|a| m.m_row(a)).collect();
    let cols: Vec<Complex64> = (0..d).map(|b| m.m_col(b)).collect();
    let mut worst: f64 = 0.0;
    for (a, row) in rows.iter().enumerate() {
        for (b, col) in cols.iter().enumerate() {
            let exp = (a.count_ones() + b.count_ones()) as i64 - 1;
            let lhs = phase_pow(lambda, exp) * m.entry(a, b);
            worst = worst.max((lhs - row * col).norm());
        }
    }
    Ok(worst)
}

/// Closed-form test for `Rφ` being unentangled (all entries are unit modulus,
/// so the comparison is absolute).
pub fn r_unentangled_closed_form(m: &PhaseMatrix, tol: f64) -> Result<bool> {
    Ok(closed_form_max_residual(m)? <= tol)
}

/// `M_{α,β}²/λ² − (m_{α,0}/m_{0,α})(m_{0,β}/m_{β,0})`.
pub fn ratio_condition(m: &PhaseMatrix, alpha: usize, beta: usize) -> Result<Complex64> {
    let lambda = m.require_lambda()?;
    let d = m.dim();
    if alpha >= d || beta >= d {
        return Err(Error::LengthMismatch {
            expected: d,
            got: alpha.max(beta),
        });
    }
    let lhs = m.entry(alpha, beta) * m.entry(alpha, beta) * phase_pow(lambda, -2);
    let rhs = (m.m_row(alpha) / m.m_col(alpha)) * (m.m_col(beta) / m.m_row(beta));
    Ok(lhs - rhs)
}
