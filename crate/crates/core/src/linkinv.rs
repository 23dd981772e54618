//! Two-component link diagrams and the phase-matrix state sum.
//!
//! A coloring assigns a string `α` to component 1 and `β` to component 2. A
//! positive crossing contributes `M_{α,α}`, `M_{β,β}` or `M_{α,β}` depending on
//! which components meet there; a negative crossing contributes the inverse
//! (conjugate) entry. Shared crossings always use `M_{color(K1), color(K2)}`.
//!
//! With a constant diagonal `λ` the sum collapses to
//!
//! ```text
//! S_K = λ^{w1+w2} Σ_{α≠β} M_{α,β}^{2 lk} + 2^n λ^{w1+w2+2 lk}
//! Z_K = λ^{-w} S_K = Σ_{α≠β} (M_{α,β}²/λ²)^{lk} + 2^n
//! ```

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{pairwise_sum, phase_pow, ONE};
use crate::qstate::BitString;
use crate::yangbaxter::PhaseMatrix;

/// Largest `n` for the coloring enumeration (`4^n` colorings).
pub const MAX_BRUTEFORCE_BITS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    One,
    Two,
}

impl Component {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Component::One),
            2 => Some(Component::Two),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Component::One => 1,
            Component::Two => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub a: Component,
    pub b: Component,
    pub sign: Sign,
}

impl Crossing {
    pub fn new(a: Component, b: Component, sign: Sign) -> Self {
        Crossing { a, b, sign }
    }

    pub fn is_shared(&self) -> bool {
        self.a != self.b
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Plus { '+' } else { '-' };
        write!(f, "X {} {} {s}", self.a.index(), self.b.index())
    }
}

/// Signed crossings of a two-component link. No planarity data is kept: the
/// state sum depends only on which components meet and with what sign.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
}

impl LinkDiagram {
    pub fn new(crossings: Vec<Crossing>) -> Result<Self> {
        let shared: i64 = crossings.iter().filter(|c| c.is_shared()).map(|c| c.sign.value()).sum();
        if shared % 2 != 0 {
            return Err(Error::OddLinking(shared));
        }
        Ok(LinkDiagram { crossings })
    }

    /// The split two-component unlink drawn without crossings.
    pub fn unlink() -> Self {
        LinkDiagram::default()
    }

    /// Positive Hopf link: two positive shared crossings.
    pub fn hopf() -> Self {
        let c = Crossing::new(Component::One, Component::Two, Sign::Plus);
        LinkDiagram { crossings: vec![c, c] }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn stats(&self) -> LinkStats {
        let sum = |keep: &dyn Fn(&Crossing) -> bool| -> i64 {
            self.crossings.iter().filter(|c| keep(c)).map(|c| c.sign.value()).sum()
        };
        let w1 = sum(&|c| c.a == Component::One && c.b == Component::One);
        let w2 = sum(&|c| c.a == Component::Two && c.b == Component::Two);
        let shared = sum(&|c| c.is_shared());
        LinkStats::new(w1, w2, shared / 2)
    }
}

/// Writhes and linking number; `w = w1 + w2 + 2·lk` by construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinkStats {
    pub w1: i64,
    pub w2: i64,
    pub lk: i64,
    pub w: i64,
}

impl LinkStats {
    pub fn new(w1: i64, w2: i64, lk: i64) -> Self {
        LinkStats {
            w1,
            w2,
            lk,
            w: w1 + w2 + 2 * lk,
        }
    }
}

/// `S_K` by enumerating all `4^n` colorings.
pub fn state_sum_bruteforce(d: &LinkDiagram, m: &PhaseMatrix) -> Result<Complex64> {
    if m.n() > MAX_BRUTEFORCE_BITS {
        return Err(Error::TooManyQubits(m.n()));
    }
    let dim = m.dim();
    let terms: Vec<Complex64> = (0..dim * dim)
        .map(|idx| {
            let (alpha, beta) = (idx / dim, idx % dim);
            d.crossings
                .iter()
                .map(|c| {
                    let weight = match (c.a, c.b) {
                        (Component::One, Component::One) => m.entry(alpha, alpha),
                        (Component::Two, Component::Two) => m.entry(beta, beta),
                        _ => m.entry(alpha, beta),
                    };
                    match c.sign {
                        Sign::Plus => weight,
                        Sign::Minus => weight.conj(),
                    }
                })
                .product()
        })
        .collect();
    Ok(pairwise_sum(&terms))
}

/// `S_K` from the writhes and linking number alone.
pub fn state_sum_closed(stats: &LinkStats, m: &PhaseMatrix) -> Result<Complex64> {
    let lambda = m.require_lambda()?;
    let dim = m.dim();
    let self_part = phase_pow(lambda, stats.w1 + stats.w2);
    let off: Vec<Complex64> = off_diagonal(dim)
        .map(|(a, b)| self_part * phase_pow(m.entry(a, b), 2 * stats.lk))
        .collect();
    let diag = Complex64::new(dim as f64, 0.0) * phase_pow(lambda, stats.w);
    Ok(pairwise_sum(&off) + diag)
}

/// `Z_K = λ^{-w} S_K` with `S_K` from [`state_sum_closed`].
pub fn z_invariant(stats: &LinkStats, m: &PhaseMatrix) -> Result<Complex64> {
    let lambda = m.require_lambda()?;
    Ok(phase_pow(lambda, -stats.w) * state_sum_closed(stats, m)?)
}

/// `Z_K = Σ_{α≠β} (M_{α,β}²/λ²)^{lk} + 2^n`, evaluated directly.
pub fn z_sum_form(lk: i64, m: &PhaseMatrix) -> Result<Complex64> {
    let lambda = m.require_lambda()?;
    let inv_l2 = phase_pow(lambda, -2);
    let terms: Vec<Complex64> = off_diagonal(m.dim())
        .map(|(a, b)| {
            let x = m.entry(a, b);
            phase_pow(x * x * inv_l2, lk)
        })
        .collect();
    Ok(pairwise_sum(&terms) + Complex64::new(m.dim() as f64, 0.0))
}

/// `λ^{-w} S_K` with `S_K` from the coloring enumeration.
pub fn z_of_diagram(d: &LinkDiagram, m: &PhaseMatrix) -> Result<Complex64> {
    let lambda = m.require_lambda()?;
    Ok(phase_pow(lambda, -d.stats().w) * state_sum_bruteforce(d, m)?)
}

/// First pair `α ≠ β` (index order) with `|M_{α,β}² − λ²| > tol`. `Z_K`
/// separates linking numbers only when such a pair exists.
pub fn detects_linking(m: &PhaseMatrix, tol: f64) -> Result<Option<(BitString, BitString)>> {
    let lambda = m.require_lambda()?;
    let l2 = lambda * lambda;
    Ok(off_diagonal(m.dim())
        .find(|&(a, b)| {
            let x = m.entry(a, b);
            (x * x - l2).norm() > tol
        })
        .map(|(a, b)| (BitString::from_index(a, m.n()), BitString::from_index(b, m.n()))))
}

fn off_diagonal(dim: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..dim).flat_map(move |a| (0..dim).filter(move |&b| b != a).map(move |b| (a, b)))
}

/// `4^n` as a complex number, the value of `Z_K` when nothing is detected.
pub fn trivial_z(m: &PhaseMatrix) -> Complex64 {
    let d = m.dim() as f64;
    ONE * (d * d)
}
