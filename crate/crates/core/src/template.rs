//! Templates: the sum of the coarse-grained terms of one multiway level.
//!
//! Four routes to the same exact vector are provided:
//!
//! * [`template_bruteforce`] enumerates the level and sums [`coarse_grain`]
//!   images. Exponential in the level.
//! * [`template_recurrence`] applies the renormalized rule multiset level by
//!   level, i.e. `T_{j+1} = (K I - i X) T_j`. Linear in the level.
//! * [`template_closedform`] reads the vector off `(K + i)^k`, computed by
//!   binary exponentiation. Logarithmic in the level (in bignum operations).
//! * [`template_binomial`] weights the `C(k, m) K^(k-m)` words carrying `m`
//!   appended marks by `(-i)^m`.
//!
//! All arithmetic is exact; conversion to floating point happens only in
//! [`normalize_template`].

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::continuum::WaveFunction;
use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::multiway::{enumerate_level, ModelConfig};
use crate::renormalization::{coarse_grain, count_marked, Basis, QubitTerm, Unit};

/// Which template algorithm to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    BruteForce,
    Recurrence,
    ClosedForm,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::BruteForce => "bruteforce",
            Algorithm::Recurrence => "recurrence",
            Algorithm::ClosedForm => "closedform",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruteforce" => Ok(Algorithm::BruteForce),
            "recurrence" => Ok(Algorithm::Recurrence),
            "closedform" => Ok(Algorithm::ClosedForm),
            other => Err(Error::Domain(format!(
                "unknown algorithm {other:?} (expected bruteforce, recurrence or closedform)"
            ))),
        }
    }
}

/// The exact template `c0 |0> + c1 |1>` at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemplateVector {
    max_symbol: u32,
    level: u64,
    c0: GaussianInt,
    c1: GaussianInt,
    initial: QubitTerm,
}

impl TemplateVector {
    pub fn max_symbol(&self) -> u32 {
        self.max_symbol
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn c0(&self) -> &GaussianInt {
        &self.c0
    }

    pub fn c1(&self) -> &GaussianInt {
        &self.c1
    }

    /// The level-0 term the template was grown from.
    pub fn initial_term(&self) -> QubitTerm {
        self.initial
    }

    /// Marked-symbol count of the initial word, modulo 4. Templates depend on
    /// the initial word only through this value; `None` when the initial term
    /// is not the image of any word.
    pub fn initial_m(&self) -> Option<u8> {
        self.initial
            .is_coarse_grained_form()
            .then(|| self.initial.amplitude().exponent())
    }

    /// `|c0|^2 + |c1|^2`.
    pub fn norm_sqr(&self) -> BigInt {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    /// `{"K":…,"k":…,"c0":[re,im],"c1":[re,im]}` with decimal strings for the parts.
    pub fn to_json(&self) -> String {
        let pair = |z: &GaussianInt| serde_json::json!([z.re().to_string(), z.im().to_string()]);
        // Built by hand to keep the key order fixed.
        format!(
            "{{\"K\":{},\"k\":{},\"c0\":{},\"c1\":{}}}",
            self.max_symbol,
            self.level,
            pair(&self.c0),
            pair(&self.c1)
        )
    }
}

impl fmt::Display for TemplateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "T_{}(K={}) = ({}) |0> + ({}) |1>",
            self.level, self.max_symbol, self.c0, self.c1
        )
    }
}

/// Sums the coarse-grained image of every word on the level.
pub fn template_bruteforce(cfg: &ModelConfig, level: u64) -> Result<TemplateVector> {
    let k = cfg.max_symbol();
    let words = enumerate_level(cfg, level)?;

    // Every image is a unit on a basis state, so the exact sum is a tally of
    // the eight possible terms.
    let tally = words
        .words()
        .par_iter()
        .fold(
            || [0u64; 8],
            |mut acc, w| {
                let t = coarse_grain(w, k);
                acc[usize::from(t.basis().bit()) * 4 + usize::from(t.amplitude().exponent())] += 1;
                acc
            },
        )
        .reduce(
            || [0u64; 8],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );

    let mut c = [GaussianInt::zero(), GaussianInt::zero()];
    for (slot, &count) in tally.iter().enumerate() {
        if count > 0 {
            let unit = Unit::neg_i_pow(slot as u64 % 4).to_gaussian();
            c[slot / 4] += &unit.scale(&BigInt::from(count));
        }
    }
    let [c0, c1] = c;
    Ok(TemplateVector {
        max_symbol: k,
        level,
        c0,
        c1,
        initial: coarse_grain(cfg.initial_word(), k),
    })
}

/// Applies `K I - i X` to the initial term `level` times.
pub fn template_recurrence(max_symbol: u32, level: u64, initial: QubitTerm) -> TemplateVector {
    let k = BigInt::from(max_symbol);
    let (mut c0, mut c1) = initial.to_coefficients();
    for _ in 0..level {
        let next0 = &c0.scale(&k) + &c1.mul_neg_i();
        let next1 = &c1.scale(&k) + &c0.mul_neg_i();
        c0 = next0;
        c1 = next1;
    }
    TemplateVector {
        max_symbol,
        level,
        c0,
        c1,
        initial,
    }
}

/// Reads the template off `z = (K + i)^level`.
///
/// `K I - i X` has eigenvalues `K - i` on `|+>` and `K + i` on `|->`, so from
/// `|0>` it produces `Re(z) |0> - i Im(z) |1>` and from `|1>` the mirror image.
pub fn template_closedform(max_symbol: u32, level: u64, initial: QubitTerm) -> TemplateVector {
    let z = GaussianInt::new(max_symbol, 1).pow(level);
    let (re, im) = z.into_parts();
    let even = GaussianInt::new(re, 0);
    let odd = GaussianInt::new(BigInt::zero(), -im);
    let (c0, c1) = match initial.basis() {
        Basis::Zero => (even, odd),
        Basis::One => (odd, even),
    };
    let amp = initial.amplitude();
    TemplateVector {
        max_symbol,
        level,
        c0: amp.apply(&c0),
        c1: amp.apply(&c1),
        initial,
    }
}

/// Number of level-`level` words carrying exactly `m` appended copies of `a_K`:
/// `C(level, m) * K^(level - m)`.
pub fn class_multiplicity(max_symbol: u32, level: u64, m: u64) -> Result<BigUint> {
    if m > level {
        return Err(Error::Domain(format!(
            "marked count {m} exceeds level {level}"
        )));
    }
    let binom = num_integer::binomial(BigUint::from(level), BigUint::from(m));
    let rest = u32::try_from(level - m)
        .map_err(|_| Error::Domain(format!("level {level} too large for class counting")))?;
    Ok(binom * BigUint::from(max_symbol).pow(rest))
}

/// Rebuilds the template from class multiplicities.
pub fn template_binomial(
    max_symbol: u32,
    level: u64,
    initial: QubitTerm,
) -> Result<TemplateVector> {
    let mut c = [GaussianInt::zero(), GaussianInt::zero()];
    for m in 0..=level {
        let count = BigInt::from(class_multiplicity(max_symbol, level, m)?);
        let amp = initial.amplitude() * Unit::neg_i_pow(m);
        let basis = if m % 2 == 0 {
            initial.basis()
        } else {
            initial.basis().flip()
        };
        c[usize::from(basis.bit())] += &amp.to_gaussian().scale(&count);
    }
    let [c0, c1] = c;
    Ok(TemplateVector {
        max_symbol,
        level,
        c0,
        c1,
        initial,
    })
}

/// Dispatches on `algo`. The recurrence and closed form start from the
/// coarse-grained image of `cfg`'s initial word.
pub fn compute_template(cfg: &ModelConfig, level: u64, algo: Algorithm) -> Result<TemplateVector> {
    let k = cfg.max_symbol();
    let initial = QubitTerm::from_marked_count(count_marked(cfg.initial_word(), k));
    match algo {
        Algorithm::BruteForce => template_bruteforce(cfg, level),
        Algorithm::Recurrence => Ok(template_recurrence(k, level, initial)),
        Algorithm::ClosedForm => Ok(template_closedform(k, level, initial)),
    }
}

/// `K^(-k) T_k` as a floating wave function.
///
/// The division happens before rounding, so coefficients far beyond `f64`
/// range still convert as long as the quotient is representable.
pub fn normalize_template(template: &TemplateVector) -> Result<WaveFunction> {
    let scale = BigUint::from(template.max_symbol).pow(
        u32::try_from(template.level)
            .map_err(|_| Error::NonFinite(format!("K^{} is too large", template.level)))?,
    );
    let part = |x: &BigInt| big_ratio_to_f64(x, &scale);
    let c0 = Complex64::new(part(template.c0.re()), part(template.c0.im()));
    let c1 = Complex64::new(part(template.c1.re()), part(template.c1.im()));
    WaveFunction::new(c0, c1).map_err(|_| {
        Error::NonFinite(format!(
            "normalized template at K={}, k={}",
            template.max_symbol, template.level
        ))
    })
}

/// `K^(-tK) T_k`, the time-dependent constant taken literally. It equals
/// [`normalize_template`] times `K^(k - tK)`, which differs from 1 whenever
/// `tK` is not an integer.
pub fn normalize_template_literal(template: &TemplateVector, t: f64) -> Result<WaveFunction> {
    let base = normalize_template(template)?;
    let k = f64::from(template.max_symbol);
    let extra = k.powf(template.level as f64 - t * k);
    WaveFunction::new(base.c0() * extra, base.c1() * extra)
        .map_err(|_| Error::NonFinite(format!("literal normalization at t={t}")))
}

/// Top 64 bits of `x` as `mantissa * 2^exponent`.
fn leading_bits(x: &BigUint) -> (f64, i64) {
    let bits = x.bits();
    if bits <= 64 {
        (x.to_u64().expect("fits") as f64, 0)
    } else {
        let shift = bits - 64;
        ((x >> shift).to_u64().expect("fits") as f64, shift as i64)
    }
}

fn ldexp(mut x: f64, mut exp: i64) -> f64 {
    const STEP: i64 = 1000;
    while exp > STEP && x.is_finite() && x != 0.0 {
        x *= 2f64.powi(STEP as i32);
        exp -= STEP;
    }
    while exp < -STEP && x != 0.0 {
        x *= 2f64.powi(-STEP as i32);
        exp += STEP;
    }
    if exp.abs() > STEP {
        return x;
    }
    x * 2f64.powi(exp as i32)
}

/// `num / den` rounded to `f64`, relative error about `2^-62`.
fn big_ratio_to_f64(num: &BigInt, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let (n, ne) = leading_bits(num.magnitude());
    let (d, de) = leading_bits(den);
    let value = ldexp(n / d, ne - de);
    if num.sign() == Sign::Minus {
        -value
    } else {
        value
    }
}
