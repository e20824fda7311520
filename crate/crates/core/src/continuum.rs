//! Continuum reference objects for `i dΨ/dt = X Ψ` with `Ψ(0) = |0>` (ħ = 1).
//!
//! Error hierarchy: [`exact_solution`] and [`expm_2x2`] are closed forms,
//! accurate to a few ulps. [`expm_limit`] evaluates `(I + M/n)^n` by binary
//! exponentiation in doubles, accumulating roughly `log2(n)` roundings of
//! size `1e-16`; for the `n <= 1e6` used here that stays many orders of
//! magnitude below the `O(1/n)` method error it is meant to expose.

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A single-qubit state `c0 |0> + c1 |1>` in floating point. Both components
/// are finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveFunction {
    c0: Complex64,
    c1: Complex64,
}

impl WaveFunction {
    pub fn new(c0: Complex64, c1: Complex64) -> Result<Self> {
        if !(c0.is_finite() && c1.is_finite()) {
            return Err(Error::NonFinite(format!("wave function ({c0}, {c1})")));
        }
        Ok(WaveFunction { c0, c1 })
    }

    pub fn basis_zero() -> Self {
        WaveFunction { c0: ONE, c1: ZERO }
    }

    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    pub fn c1(&self) -> Complex64 {
        self.c1
    }

    pub fn norm(&self) -> f64 {
        self.c0.norm().hypot(self.c1.norm())
    }
}

/// A 2x2 complex matrix, row-major `[a b; c d]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2c {
    entries: [Complex64; 4],
}

impl Matrix2c {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Matrix2c {
            entries: [a, b, c, d],
        }
    }

    pub fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    /// The Pauli-X Hamiltonian.
    pub fn pauli_x() -> Self {
        Self::new(ZERO, ONE, ONE, ZERO)
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Self::new(a, ZERO, ZERO, d)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        self.entries
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.is_finite())
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0] + self.entries[3]
    }

    pub fn det(&self) -> Complex64 {
        let [a, b, c, d] = self.entries;
        a * d - b * c
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Matrix2c {
            entries: self.entries.map(|z| z * s),
        }
    }

    pub fn apply(&self, psi: &WaveFunction) -> WaveFunction {
        let [a, b, c, d] = self.entries;
        WaveFunction {
            c0: a * psi.c0 + b * psi.c1,
            c1: c * psi.c0 + d * psi.c1,
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix2c) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

impl Add for Matrix2c {
    type Output = Matrix2c;
    fn add(self, rhs: Matrix2c) -> Matrix2c {
        let mut entries = self.entries;
        entries
            .iter_mut()
            .zip(rhs.entries)
            .for_each(|(x, y)| *x += y);
        Matrix2c { entries }
    }
}

impl Mul for Matrix2c {
    type Output = Matrix2c;
    fn mul(self, rhs: Matrix2c) -> Matrix2c {
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = rhs.entries;
        Matrix2c::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
    }
}

/// `Ψ(t) = cos t |0> - i sin t |1>`.
pub fn exact_solution(t: f64) -> WaveFunction {
    WaveFunction {
        c0: Complex64::new(t.cos(), 0.0),
        c1: Complex64::new(0.0, -t.sin()),
    }
}

/// `‖i (Ψ(t+h) - Ψ(t-h)) / 2h - X Ψ(t)‖₂`, the central-difference defect of
/// [`exact_solution`] in the Schrödinger equation. Truncation error is
/// `h^2/6 ‖Ψ'''‖ = h^2/6`.
pub fn schrodinger_residual(t: f64, h: f64) -> f64 {
    let fwd = exact_solution(t + h);
    let back = exact_solution(t - h);
    let i = Complex64::i();
    let lhs0 = i * (fwd.c0 - back.c0) / (2.0 * h);
    let lhs1 = i * (fwd.c1 - back.c1) / (2.0 * h);
    let rhs = Matrix2c::pauli_x().apply(&exact_solution(t));
    (lhs0 - rhs.c0).norm().hypot((lhs1 - rhs.c1).norm())
}

/// `e^M` in closed form.
///
/// With `M = (tr/2) I + N`, `N` traceless, `N^2 = -det(N) I = μ^2 I`, so
/// `e^M = e^(tr/2) (cosh μ I + sinh(μ)/μ N)`. Both `cosh μ` and `sinh(μ)/μ`
/// are even in `μ`, so the branch of the square root does not matter.
pub fn expm_2x2(m: &Matrix2c) -> Matrix2c {
    let half_trace = m.trace() / 2.0;
    let [a, b, c, d] = m.entries;
    let n = Matrix2c::new(a - half_trace, b, c, d - half_trace);
    let mu = (-n.det()).sqrt();
    let cosh = mu.cosh();
    let sinhc = if mu.norm() < 1e-4 {
        // sinh(μ)/μ series; the μ^6 term is below 1e-25 here
        let mu2 = mu * mu;
        ONE + mu2 / 6.0 + mu2 * mu2 / 120.0
    } else {
        mu.sinh() / mu
    };
    let scale = half_trace.exp();
    (Matrix2c::identity().scale(cosh) + n.scale(sinhc)).scale(scale)
}

/// `(I + M/n)^n` by binary exponentiation.
pub fn expm_limit(m: &Matrix2c, n: u64) -> Matrix2c {
    assert!(n >= 1, "expm_limit needs n >= 1");
    let mut base = Matrix2c::identity() + m.scale(Complex64::new(1.0 / n as f64, 0.0));
    let mut acc = Matrix2c::identity();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        e >>= 1;
        if e > 0 {
            base = base * base;
        }
    }
    acc
}

/// Euclidean distance between two states.
pub fn l2_error(a: &WaveFunction, b: &WaveFunction) -> f64 {
    (a.c0 - b.c0).norm().hypot((a.c1 - b.c1).norm())
}
