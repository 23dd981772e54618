//! Dense pure states over `n` qubits and the product-state criterion.
//!
//! Basis strings are written left to right; position 1 is the leftmost
//! character and the most significant bit of the integer index, so `|110>`
//! has index 6 and `e_1 = 100`.
//!
//! A state `Σ a_α |α>` with `a_{0⋯0} ≠ 0` is a full tensor product exactly when
//!
//! ```text
//! a_{0⋯0}^{|α|-1} a_α = Π_{i∈α} a_{e_i}     for every α with |α| ≥ 2.
//! ```
//!
//! When `a_{0⋯0} = 0` the equations hold vacuously for some entangled states
//! (`|110> + |011>`), so [`PureState::is_product`] first relabels the basis by
//! XOR with the index of the largest amplitude. Bit flips are local, so the
//! verdict is unchanged, and the base amplitude becomes the best-conditioned one.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{ONE, ZERO};

/// Largest qubit count accepted for a dense state.
pub const MAX_QUBITS: usize = 24;

/// Default relative tolerance for criterion residuals.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Guard for the relative residual scale when both sides vanish.
const SCALE_FLOOR: f64 = 1e-300;

/// Amplitudes within this relative distance of the maximum count as tied when
/// choosing the relabeling mask; the first such index wins.
const ARGMAX_TIE: f64 = 1e-12;

/// A binary string of fixed length. Length 0 is allowed and is only used for
/// the empty left/right contexts of minors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BitString {
    value: u64,
    len: usize,
}

impl BitString {
    pub fn new(value: u64, len: usize) -> Result<Self> {
        if len > 63 {
            return Err(Error::TooManyQubits(len));
        }
        if value >> len != 0 {
            return Err(Error::InvalidBitString(format!("{value} does not fit in {len} bits")));
        }
        Ok(BitString { value, len })
    }

    pub(crate) fn from_index(index: usize, len: usize) -> Self {
        debug_assert!(len <= 63 && (index as u64) >> len == 0);
        BitString {
            value: index as u64,
            len,
        }
    }

    pub fn zeros(len: usize) -> Self {
        BitString { value: 0, len }
    }

    /// `e_i`: all zeros except a 1 at position `i` (1-based, from the left).
    pub fn unit(i: usize, len: usize) -> Result<Self> {
        if i == 0 || i > len {
            return Err(Error::QubitOutOfRange { index: i, n: len });
        }
        Ok(BitString {
            value: 1 << (len - i),
            len,
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        if s.len() > 63 {
            return Err(Error::TooManyQubits(s.len()));
        }
        let mut value = 0u64;
        for ch in s.chars() {
            value = (value << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    _ => return Err(Error::InvalidBitString(s.to_string())),
                };
        }
        Ok(BitString { value, len: s.len() })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self) -> usize {
        self.value as usize
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// `|α|`, the number of ones.
    pub fn weight(&self) -> usize {
        self.value.count_ones() as usize
    }

    /// `i ∈ α`, with `i` 1-based from the left.
    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.len && (self.value >> (self.len - i)) & 1 == 1
    }

    /// Positions holding a 1, ascending.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.len).filter(move |&i| self.contains(i))
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                got: other.len,
            });
        }
        Ok(BitString {
            value: self.value ^ other.value,
            len: self.len,
        })
    }

    /// `self ‖ other`.
    pub fn concat(&self, other: &BitString) -> Result<BitString> {
        BitString::new((self.value << other.len) | other.value, self.len + other.len)
    }

    /// All strings of the given length in ascending index order.
    pub fn all(len: usize) -> impl Iterator<Item = BitString> {
        (0..1u64 << len).map(move |value| BitString { value, len })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.len {
            f.write_str(if self.contains(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// `|α|` as a free function.
pub fn weight(s: &BitString) -> usize {
    s.weight()
}

/// A (not necessarily normalized) pure state on `n ≥ 1` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    n: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubits(n)?;
        if amps.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                got: amps.len(),
            });
        }
        Ok(PureState { n, amps })
    }

    pub fn from_real(n: usize, amps: &[f64]) -> Result<Self> {
        Self::new(n, amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Builds a state from `(bitstring, amplitude)` pairs; unlisted strings are zero.
    pub fn from_terms<'a>(n: usize, terms: impl IntoIterator<Item = (&'a str, Complex64)>) -> Result<Self> {
        check_qubits(n)?;
        let mut amps = vec![ZERO; 1 << n];
        for (bits, a) in terms {
            let s = BitString::parse(bits)?;
            if s.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    got: s.len(),
                });
            }
            amps[s.index()] += a;
        }
        Ok(PureState { n, amps })
    }

    pub fn basis(bits: &BitString) -> Result<Self> {
        check_qubits(bits.len())?;
        let mut amps = vec![ZERO; 1 << bits.len()];
        amps[bits.index()] = ONE;
        Ok(PureState { n: bits.len(), amps })
    }

    /// A single-qubit state `c0|0> + c1|1>`.
    pub fn qubit(c0: Complex64, c1: Complex64) -> Self {
        PureState {
            n: 1,
            amps: vec![c0, c1],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn amp(&self, s: &BitString) -> Complex64 {
        debug_assert_eq!(s.len(), self.n);
        self.amps[s.index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn max_modulus(&self) -> f64 {
        self.amps.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| *a == ZERO)
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        PureState {
            n: self.n,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroState);
        }
        Ok(self.scaled(Complex64::new(1.0 / norm, 0.0)))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Amplitude at `s` in the output equals amplitude at `s ⊕ mask` in the input.
    pub fn xor_relabel(&self, mask: &BitString) -> Result<Self> {
        if mask.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: mask.len(),
            });
        }
        let m = mask.index();
        let amps = (0..self.amps.len()).map(|s| self.amps[s ^ m]).collect();
        Ok(PureState { n: self.n, amps })
    }

    /// Criterion residuals `a_0^{|α|-1} a_α − Π_{i∈α} a_{e_i}` of this state as
    /// given (no relabeling), one per α of weight ≥ 2, ordered as
    /// [`criterion_equations`].
    pub fn criterion_residuals(&self) -> Vec<Residual> {
        let n = self.n;
        let a0 = self.amps[0];
        let mut a0_pow = vec![ONE; n + 1];
        for w in 1..=n {
            a0_pow[w] = a0_pow[w - 1] * a0;
        }
        let units: Vec<Complex64> = (1..=n).map(|i| self.amps[1 << (n - i)]).collect();
        criterion_equations(n)
            .into_iter()
            .map(|eq| {
                let alpha = eq.alpha;
                let lhs = a0_pow[alpha.weight() - 1] * self.amps[alpha.index()];
                let rhs = alpha.positions().map(|i| units[i - 1]).product::<Complex64>();
                Residual { alpha, lhs, rhs }
            })
            .collect()
    }

    /// Index of the amplitude used as the new `a_{0⋯0}`: the first index whose
    /// modulus ties the maximum.
    fn base_index(&self) -> usize {
        let max = self.max_modulus();
        let cut = max * (1.0 - ARGMAX_TIE);
        self.amps.iter().position(|a| a.norm() >= cut).unwrap_or(0)
    }

    fn check_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            return Err(Error::ZeroState);
        }
        if self.amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    /// Decides whether the state is a full tensor product of single qubits.
    ///
    /// Residuals are compared relatively, `|r| ≤ tol · max(|lhs|, |rhs|)`,
    /// after relabeling so that the largest amplitude sits at `0⋯0`.
    pub fn is_product(&self, tol: f64) -> Result<ProductVerdict> {
        self.check_nonzero()?;
        let mask = BitString::from_index(self.base_index(), self.n);
        let relabeled = self.xor_relabel(&mask)?;

        let worst = relabeled
            .criterion_residuals()
            .into_iter()
            .filter(|r| !r.holds(tol))
            .max_by(|a, b| a.relative().total_cmp(&b.relative()));

        Ok(match worst {
            None => ProductVerdict::Product(Factorization::from_relabeled(&relabeled, mask)),
            Some(r) => ProductVerdict::Entangled(Violation {
                alpha: r.alpha,
                relabel: mask,
                residual: r.value(),
                relative: r.relative(),
            }),
        })
    }

    /// Factors a product state; errors with the violated string otherwise.
    pub fn factorize(&self, tol: f64) -> Result<Factorization> {
        match self.is_product(tol)? {
            ProductVerdict::Product(f) => Ok(f),
            ProductVerdict::Entangled(v) => Err(Error::Entangled {
                alpha: v.alpha.to_string(),
            }),
        }
    }

    /// `tr(ρ_k²)` of the single-qubit marginal at position `k` (1-based),
    /// computed by a direct partial trace of the normalized state.
    pub fn purity_oracle(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.n {
            return Err(Error::QubitOutOfRange { index: k, n: self.n });
        }
        let psi = self.normalized()?;
        let bit = 1usize << (self.n - k);
        let (mut r00, mut r11, mut r01) = (0.0, 0.0, ZERO);
        for s in (0..psi.amps.len()).filter(|s| s & bit == 0) {
            let a0 = psi.amps[s];
            let a1 = psi.amps[s | bit];
            r00 += a0.norm_sqr();
            r11 += a1.norm_sqr();
            r01 += a0 * a1.conj();
        }
        Ok(r00 * r00 + r11 * r11 + 2.0 * r01.norm_sqr())
    }
}

fn check_qubits(n: usize) -> Result<()> {
    match n {
        0 => Err(Error::NoQubits),
        n if n > MAX_QUBITS => Err(Error::TooManyQubits(n)),
        _ => Ok(()),
    }
}

/// Tensor product in list order (the first state occupies the leftmost qubits).
pub fn tensor(states: &[PureState]) -> Result<PureState> {
    let (first, rest) = states.split_first().ok_or(Error::EmptyProduct)?;
    let total: usize = states.iter().map(|s| s.n).sum();
    check_qubits(total)?;
    let mut acc = first.amps.clone();
    for s in rest {
        acc = acc.iter().flat_map(|a| s.amps.iter().map(move |b| a * b)).collect();
    }
    PureState::new(total, acc)
}

/// One criterion equation, identified by its string α (weight ≥ 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CriterionEquation {
    pub alpha: BitString,
}

impl fmt::Display for CriterionEquation {
    /// Renders e.g. `a_{000}^{2}a_{111} = a_{100}a_{010}a_{001}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.alpha.len();
        let zero = BitString::zeros(n);
        write!(f, "a_{{{zero}}}")?;
        match self.alpha.weight() - 1 {
            1 => {}
            p => write!(f, "^{{{p}}}")?,
        }
        write!(f, "a_{{{}}} =", self.alpha)?;
        f.write_str(" ")?;
        for i in self.alpha.positions() {
            let e = BitString::unit(i, n).map_err(|_| fmt::Error)?;
            write!(f, "a_{{{e}}}")?;
        }
        Ok(())
    }
}

/// The criterion equations for `n` qubits: one per α of weight ≥ 2, by
/// ascending weight and, within a weight, by ascending position sets
/// (`110, 101, 011` for weight two on three qubits).
pub fn criterion_equations(n: usize) -> Vec<CriterionEquation> {
    let mut alphas: Vec<BitString> = BitString::all(n).filter(|a| a.weight() >= 2).collect();
    alphas.sort_by(|a, b| a.weight().cmp(&b.weight()).then(b.value.cmp(&a.value)));
    alphas.into_iter().map(|alpha| CriterionEquation { alpha }).collect()
}

/// Both sides of one criterion equation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Residual {
    pub alpha: BitString,
    /// `a_0^{|α|-1} a_α`
    pub lhs: Complex64,
    /// `Π_{i∈α} a_{e_i}`
    pub rhs: Complex64,
}

impl Residual {
    pub fn value(&self) -> Complex64 {
        self.lhs - self.rhs
    }

    pub fn scale(&self) -> f64 {
        self.lhs.norm().max(self.rhs.norm()).max(SCALE_FLOOR)
    }

    pub fn relative(&self) -> f64 {
        self.value().norm() / self.scale()
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.value().norm() <= tol * self.scale()
    }
}

/// Result of [`PureState::is_product`].
#[derive(Clone, Debug, PartialEq)]
pub enum ProductVerdict {
    Product(Factorization),
    Entangled(Violation),
}

impl ProductVerdict {
    pub fn is_product(&self) -> bool {
        matches!(self, ProductVerdict::Product(_))
    }
}

/// The worst failing equation, reported in the relabeled basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    pub alpha: BitString,
    pub relabel: BitString,
    pub residual: Complex64,
    pub relative: f64,
}

/// `ψ = k · X^{flip_mask} (⊗_i (c0_i|0> + c1_i|1>))`, with `c0_i = 1` in the
/// relabeled basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub scalar: Complex64,
    pub factors: Vec<(Complex64, Complex64)>,
    pub flip_mask: BitString,
}

impl Factorization {
    fn from_relabeled(relabeled: &PureState, mask: BitString) -> Self {
        let n = relabeled.n;
        let a0 = relabeled.amps[0];
        let factors = (1..=n).map(|i| (ONE, relabeled.amps[1 << (n - i)] / a0)).collect();
        Factorization {
            scalar: a0,
            factors,
            flip_mask: mask,
        }
    }

    /// Factors expressed in the original basis (flipped positions swap `c0`, `c1`).
    pub fn factors_in_original_basis(&self) -> Vec<(Complex64, Complex64)> {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, &(c0, c1))| {
                if self.flip_mask.contains(i + 1) {
                    (c1, c0)
                } else {
                    (c0, c1)
                }
            })
            .collect()
    }

    /// The same product with every factor whose `|0>` amplitude is nonzero in
    /// the input basis scaled to `(1, c1/c0)` and un-flipped. Factors with a
    /// vanishing `|0>` amplitude keep their flip.
    pub fn gauge_fixed(&self) -> Factorization {
        let mut scalar = self.scalar;
        let mut mask = 0u64;
        let n = self.factors.len();
        let factors = self
            .factors_in_original_basis()
            .into_iter()
            .enumerate()
            .map(|(i, (c0, c1))| {
                if c0 != ZERO {
                    scalar *= c0;
                    (ONE, c1 / c0)
                } else {
                    scalar *= c1;
                    mask |= 1 << (n - 1 - i);
                    (ONE, ZERO)
                }
            })
            .collect();
        Factorization {
            scalar,
            factors,
            flip_mask: BitString::from_index(mask as usize, n),
        }
    }

    /// Re-tensors the factors, scales by `k` and undoes the relabeling.
    pub fn reconstruct(&self) -> PureState {
        let qubits: Vec<PureState> = self.factors.iter().map(|&(c0, c1)| PureState::qubit(c0, c1)).collect();
        let product = tensor(&qubits).expect("factorization has at least one factor");
        product
            .scaled(self.scalar)
            .xor_relabel(&self.flip_mask)
            .expect("mask length matches factor count")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(x: f64) -> Complex64 {
        c(x, 0.0)
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&BitString::parse("1101").unwrap()), 3);
        assert_eq!(weight(&BitString::parse("0000").unwrap()), 0);
        assert_eq!(weight(&BitString::parse("1111").unwrap()), 4);
    }

    #[test]
    fn bitstring_convention() {
        let s = BitString::parse("110").unwrap();
        assert_eq!(s.index(), 6);
        assert!(s.contains(1) && s.contains(2) && !s.contains(3));
        assert_eq!(BitString::unit(1, 3).unwrap().to_string(), "100");
        assert_eq!(s.positions().collect::<Vec<_>>(), vec![1, 2]);
        assert!(BitString::parse("10a").is_err());
        assert!(BitString::unit(0, 3).is_err());
    }

    #[test]
    fn tensor_examples() {
        let zero = PureState::qubit(ONE, ZERO);
        let t = tensor(&[zero.clone(), zero]).unwrap();
        assert_eq!(t.amplitudes(), &[ONE, ZERO, ZERO, ZERO]);

        let plus = PureState::qubit(ONE, ONE);
        let t = tensor(&[plus.clone(), plus]).unwrap();
        assert!(t.amplitudes().iter().all(|&a| a == ONE));

        let t = tensor(&[PureState::qubit(ONE, r(2.0)), PureState::qubit(ONE, r(3.0))]).unwrap();
        assert_eq!(t.amplitudes(), &[r(1.0), r(3.0), r(2.0), r(6.0)]);

        assert_eq!(tensor(&[]), Err(Error::EmptyProduct));
    }

    #[test]
    fn xor_relabel_examples() {
        let psi = PureState::from_terms(3, [("110", ONE), ("011", ONE)]).unwrap();
        let out = psi.xor_relabel(&BitString::parse("110").unwrap()).unwrap();
        let expected = PureState::from_terms(3, [("000", ONE), ("101", ONE)]).unwrap();
        assert_eq!(out, expected);

        let two = PureState::from_real(2, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(two.xor_relabel(&BitString::zeros(2)).unwrap(), two);
        let m = BitString::parse("10").unwrap();
        assert_eq!(two.xor_relabel(&m).unwrap().xor_relabel(&m).unwrap(), two);
        assert!(two.xor_relabel(&BitString::zeros(3)).is_err());
    }

    #[test]
    fn two_qubit_residual_is_determinant() {
        let psi = PureState::new(2, vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.3, 1.0), c(0.0, 4.0)]).unwrap();
        let res = psi.criterion_residuals();
        assert_eq!(res.len(), 1);
        let a = psi.amplitudes();
        assert!((res[0].value() - (a[0] * a[3] - a[1] * a[2])).norm() < 1e-15);
    }

    #[test]
    fn three_qubit_equations_in_order() {
        let eqs: Vec<String> = criterion_equations(3).iter().map(|e| e.to_string()).collect();
        assert_eq!(
            eqs,
            vec![
                "a_{000}a_{110} = a_{100}a_{010}",
                "a_{000}a_{101} = a_{100}a_{001}",
                "a_{000}a_{011} = a_{010}a_{001}",
                "a_{000}^{2}a_{111} = a_{100}a_{010}a_{001}",
            ]
        );
        assert!(criterion_equations(1).is_empty());
    }

    #[test]
    fn epr_state_is_entangled() {
        let s = FRAC_1_SQRT_2;
        let epr = PureState::from_real(2, &[0.0, s, s, 0.0]).unwrap();
        assert!((epr.criterion_residuals()[0].value() - r(-0.5)).norm() < 1e-15);
        match epr.is_product(DEFAULT_TOL).unwrap() {
            ProductVerdict::Entangled(v) => assert!((v.residual.norm() - 0.5).abs() < 1e-15),
            other => panic!("expected entangled, got {other:?}"),
        }
    }

    #[test]
    fn vacuous_zero_base_state_is_caught() {
        let psi = PureState::from_terms(3, [("110", ONE), ("011", ONE)]).unwrap();
        // The unrepaired equations are all satisfied at a_000 = 0.
        assert!(psi.criterion_residuals().iter().all(|r| r.value() == ZERO));
        assert!(!psi.is_product(DEFAULT_TOL).unwrap().is_product());
    }

    #[test]
    fn factorize_examples() {
        let psi = PureState::from_real(2, &[1.0, 3.0, 2.0, 6.0]).unwrap();
        let f = psi.factorize(DEFAULT_TOL).unwrap();
        assert_eq!(f.scalar, r(6.0));
        assert_eq!(f.flip_mask.to_string(), "11");
        // Relabeled around the largest amplitude, then expressed in the input basis.
        let orig = f.factors_in_original_basis();
        let ratio0 = orig[0].1 / orig[0].0;
        let ratio1 = orig[1].1 / orig[1].0;
        assert!((ratio0 - r(2.0)).norm() < 1e-15 && (ratio1 - r(3.0)).norm() < 1e-15);
        assert_eq!(f.reconstruct(), psi);
        let g = f.gauge_fixed();
        assert_eq!(g.scalar, r(1.0));
        assert_eq!(g.factors, vec![(ONE, r(2.0)), (ONE, r(3.0))]);
        assert_eq!(g.flip_mask, BitString::zeros(2));

        let eleven = PureState::basis(&BitString::parse("11").unwrap()).unwrap();
        let f = eleven.factorize(DEFAULT_TOL).unwrap();
        assert_eq!(f.flip_mask.to_string(), "11");
        assert_eq!(f.factors_in_original_basis(), vec![(ZERO, ONE), (ZERO, ONE)]);
        assert_eq!(f.gauge_fixed(), f);

        let bell = PureState::from_real(2, &[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]).unwrap();
        assert!(matches!(bell.factorize(DEFAULT_TOL), Err(Error::Entangled { .. })));
    }

    #[test]
    fn unrelabeled_factorization_when_base_is_largest() {
        let psi = PureState::from_real(2, &[6.0, 3.0, 2.0, 1.0]).unwrap();
        let f = psi.factorize(DEFAULT_TOL).unwrap();
        assert_eq!(f.flip_mask, BitString::zeros(2));
        assert_eq!(f.scalar, r(6.0));
        assert_eq!(f.factors, vec![(ONE, r(1.0 / 3.0)), (ONE, r(0.5))]);
    }

    #[test]
    fn purity_examples() {
        let prod = tensor(&[PureState::qubit(r(0.6), c(0.0, 0.8)), PureState::qubit(ONE, r(-2.0))]).unwrap();
        for k in 1..=2 {
            assert!((prod.purity_oracle(k).unwrap() - 1.0).abs() < 1e-14);
        }
        let s = FRAC_1_SQRT_2;
        let epr = PureState::from_real(2, &[0.0, s, s, 0.0]).unwrap();
        assert!((epr.purity_oracle(1).unwrap() - 0.5).abs() < 1e-15);

        let psi = PureState::from_terms(3, [("110", ONE), ("011", ONE)]).unwrap();
        assert!((psi.purity_oracle(2).unwrap() - 1.0).abs() < 1e-15);
        assert!((psi.purity_oracle(1).unwrap() - 0.5).abs() < 1e-15);

        assert!(matches!(psi.purity_oracle(4), Err(Error::QubitOutOfRange { .. })));
        let zero = PureState::new(1, vec![ZERO, ZERO]).unwrap();
        assert_eq!(zero.purity_oracle(1), Err(Error::ZeroState));
        assert_eq!(zero.is_product(DEFAULT_TOL), Err(Error::ZeroState));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(PureState::new(0, vec![]), Err(Error::NoQubits));
        assert!(matches!(
            PureState::new(2, vec![ONE; 3]),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
