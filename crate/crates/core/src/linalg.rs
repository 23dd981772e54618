//! Small dense complex helpers shared by the operator code.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Unit-modulus complex number `e^{iθ}`.
pub fn phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

/// Integer power of a unit-circle number; negative exponents use the conjugate.
pub fn phase_pow(z: Complex64, exp: i64) -> Complex64 {
    let base = if exp < 0 { z.conj() } else { z };
    let mut e = exp.unsigned_abs();
    let mut acc = ONE;
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc *= sq;
        }
        sq *= sq;
        e >>= 1;
    }
    acc
}

/// Pairwise (tree) summation in index order; the result is independent of
/// how the terms were produced, only of their order.
pub fn pairwise_sum(terms: &[Complex64]) -> Complex64 {
    match terms.len() {
        0 => ZERO,
        1 => terms[0],
        2 => terms[0] + terms[1],
        len => {
            let (lo, hi) = terms.split_at(len / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_deviation(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `max |(A†A - I)_{ij}|`.
pub fn unitarity_defect(a: &CMatrix) -> f64 {
    let prod = a.adjoint() * a;
    max_deviation(&prod, &identity(a.nrows()))
}

/// Renders `x` with 12 significant digits in scientific notation. Negative
/// zero prints as zero so output stays byte-stable.
pub fn fmt_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

pub fn fmt_complex(z: Complex64) -> String {
    format!("{} {}", fmt_real(z.re), fmt_real(z.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_pow_matches_polar() {
        for exp in -7..=7 {
            let z = phase(0.37);
            let direct = phase(0.37 * exp as f64);
            assert!((phase_pow(z, exp) - direct).norm() < 1e-14, "exp={exp}");
        }
        assert_eq!(phase_pow(I, 2), Complex64::new(-1.0, 0.0));
        assert_eq!(phase_pow(I, -1), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn pairwise_sum_small() {
        let v: Vec<Complex64> = (1..=5).map(|k| Complex64::new(k as f64, -(k as f64))).collect();
        assert_eq!(pairwise_sum(&v), Complex64::new(15.0, -15.0));
        assert_eq!(pairwise_sum(&[]), ZERO);
    }

    #[test]
    fn fixed_format() {
        assert_eq!(fmt_real(-0.0), "0.00000000000e0");
        assert_eq!(fmt_real(2.0_f64.sqrt() * 2.0), "2.82842712475e0");
        assert_eq!(
            fmt_complex(Complex64::new(-1.5, 0.25)),
            "-1.50000000000e0 2.50000000000e-1"
        );
    }
}
