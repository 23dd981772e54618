//! Text formats for states, phase matrices and link diagrams.
//!
//! State file:
//!
//! ```text
//! qubits 2
//! 01  0.70710678118654757 0
//! 10 -0.70710678118654757 0
//! ```
//!
//! Phase matrix file (`lambda` optional; angles in radians; unlisted entries
//! have angle 0; the diagonal must not be listed when `lambda` is given):
//!
//! ```text
//! phase-matrix n=1 lambda=1 0
//! 0 1 1.5707963267948966
//! 1 0 1.5707963267948966
//! ```
//!
//! Diagram file, one crossing per line:
//!
//! ```text
//! X 1 2 +
//! X 1 2 +
//! ```
//!
//! In all three formats `#` starts a comment and blank lines are ignored.

use std::collections::HashSet;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{phase, ZERO};
use crate::linkinv::{Component, Crossing, LinkDiagram, Sign};
use crate::qstate::{BitString, PureState, MAX_QUBITS};
use crate::yangbaxter::PhaseMatrix;

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}

fn parse_f64(line: usize, tok: &str) -> Result<f64> {
    let v: f64 = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid number {tok:?}")))?;
    if !v.is_finite() {
        return Err(Error::parse(line, format!("non-finite number {tok:?}")));
    }
    Ok(v)
}

fn parse_bits(line: usize, tok: &str, len: usize) -> Result<BitString> {
    let s = BitString::parse(tok).map_err(|_| Error::parse(line, format!("invalid bit string {tok:?}")))?;
    if s.len() != len {
        return Err(Error::parse(
            line,
            format!("bit string {tok:?} has length {}, expected {len}", s.len()),
        ));
    }
    Ok(s)
}

/// 17 significant digits: parses back to the identical binary64 value.
fn exact(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn parse_state(text: &str) -> Result<PureState> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `qubits N` header"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["qubits", n] => n
            .parse::<usize>()
            .map_err(|_| Error::parse(hline, format!("invalid qubit count {n:?}")))?,
        _ => return Err(Error::parse(hline, "expected `qubits N` header")),
    };
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::parse(hline, format!("qubit count {n} outside 1..={MAX_QUBITS}")));
    }
    let mut amps = vec![ZERO; 1 << n];
    let mut seen = HashSet::new();
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        let [bits, re, im] = toks.as_slice() else {
            return Err(Error::parse(line, "expected `<bitstring> <re> <im>`"));
        };
        let s = parse_bits(line, bits, n)?;
        if !seen.insert(s.index()) {
            return Err(Error::parse(line, format!("duplicate amplitude for {bits}")));
        }
        amps[s.index()] = Complex64::new(parse_f64(line, re)?, parse_f64(line, im)?);
    }
    PureState::new(n, amps)
}

/// Writes every nonzero amplitude with 17 significant digits.
pub fn write_state(state: &PureState) -> String {
    let mut out = format!("qubits {}\n", state.n());
    for s in BitString::all(state.n()) {
        let a = state.amp(&s);
        if a != ZERO {
            out.push_str(&format!("{s} {} {}\n", exact(a.re), exact(a.im)));
        }
    }
    out
}

pub fn parse_phase_matrix(text: &str) -> Result<PhaseMatrix> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing `phase-matrix n=<N>` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.first() != Some(&"phase-matrix") {
        return Err(Error::parse(hline, "expected `phase-matrix n=<N> [lambda=<re> <im>]`"));
    }
    let n = match toks.get(1).and_then(|t| t.strip_prefix("n=")) {
        Some(v) => v
            .parse::<usize>()
            .map_err(|_| Error::parse(hline, format!("invalid n {v:?}")))?,
        None => return Err(Error::parse(hline, "missing n=<N>")),
    };
    if n == 0 || n > crate::yangbaxter::MAX_PHASE_BITS {
        return Err(Error::parse(hline, format!("n={n} outside supported range")));
    }
    let lambda = match &toks[2..] {
        [] => None,
        [re, im] => {
            let re = re
                .strip_prefix("lambda=")
                .ok_or_else(|| Error::parse(hline, "expected lambda=<re> <im>"))?;
            Some(Complex64::new(parse_f64(hline, re)?, parse_f64(hline, im)?))
        }
        _ => return Err(Error::parse(hline, "expected lambda=<re> <im>")),
    };

    let dim = 1usize << n;
    let mut entries = vec![Complex64::new(1.0, 0.0); dim * dim];
    if let Some(l) = lambda {
        for a in 0..dim {
            entries[a * dim + a] = l;
        }
    }
    let mut seen = HashSet::new();
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        let [alpha, beta, angle] = toks.as_slice() else {
            return Err(Error::parse(line, "expected `<alpha> <beta> <angle>`"));
        };
        let a = parse_bits(line, alpha, n)?.index();
        let b = parse_bits(line, beta, n)?.index();
        if a == b && lambda.is_some() {
            return Err(Error::parse(line, "diagonal entry listed although lambda is set"));
        }
        if !seen.insert((a, b)) {
            return Err(Error::parse(line, format!("duplicate entry ({alpha}, {beta})")));
        }
        entries[a * dim + b] = phase(parse_f64(line, angle)?);
    }
    PhaseMatrix::new(n, entries, lambda).map_err(|e| Error::parse(hline, e.to_string()))
}

/// Writes every entry whose angle is nonzero (diagonal omitted when `λ` is set).
pub fn write_phase_matrix(m: &PhaseMatrix) -> String {
    let mut out = format!("phase-matrix n={}", m.n());
    if let Some(l) = m.lambda() {
        out.push_str(&format!(" lambda={} {}", exact(l.re), exact(l.im)));
    }
    out.push('\n');
    for a in BitString::all(m.n()) {
        for b in BitString::all(m.n()) {
            if a == b && m.lambda().is_some() {
                continue;
            }
            let angle = m.entry(a.index(), b.index()).arg();
            if angle != 0.0 {
                out.push_str(&format!("{a} {b} {}\n", exact(angle)));
            }
        }
    }
    out
}

pub fn parse_diagram(text: &str) -> Result<LinkDiagram> {
    let mut crossings = Vec::new();
    let mut last_line = 1;
    for (line, body) in content_lines(text) {
        last_line = line;
        let toks: Vec<&str> = body.split_whitespace().collect();
        let ["X", a, b, s] = toks.as_slice() else {
            return Err(Error::parse(line, "expected `X <comp_a> <comp_b> <+|->`"));
        };
        let comp = |t: &str| {
            t.parse::<u8>()
                .ok()
                .and_then(Component::from_index)
                .ok_or_else(|| Error::parse(line, format!("component must be 1 or 2, got {t:?}")))
        };
        let sign = match *s {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            other => return Err(Error::parse(line, format!("sign must be + or -, got {other:?}"))),
        };
        crossings.push(Crossing::new(comp(a)?, comp(b)?, sign));
    }
    LinkDiagram::new(crossings).map_err(|e| Error::parse(last_line, e.to_string()))
}

pub fn write_diagram(d: &LinkDiagram) -> String {
    d.crossings().iter().map(|c| format!("{c}\n")).collect()
}
