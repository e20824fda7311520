//! Coarse-graining of words into qubit terms.
//!
//! A word containing `m` copies of the distinguished symbol `a_K` maps to
//! `(-i)^m |m mod 2>`. Under this map the `K+1` append rules collapse to a
//! multiset of qubit rules: `K` identities on each basis state (appending any
//! of `a_0 .. a_{K-1}` leaves `m` alone) and one `-i`-weighted flip per basis
//! state (appending `a_K`).

use std::fmt;

use crate::gaussian::GaussianInt;
use crate::multiway::Word;

/// Computational basis state of one qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Basis {
    Zero,
    One,
}

impl Basis {
    pub fn from_parity(m: u64) -> Self {
        if m.is_multiple_of(2) {
            Basis::Zero
        } else {
            Basis::One
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Basis::Zero => Basis::One,
            Basis::One => Basis::Zero,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Basis::Zero => 0,
            Basis::One => 1,
        }
    }
}

/// A unit Gaussian integer, stored as the exponent `e` in `(-i)^e`, `e` in `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit(u8);

impl Unit {
    pub const ONE: Unit = Unit(0);
    pub const NEG_I: Unit = Unit(1);
    pub const NEG_ONE: Unit = Unit(2);
    pub const I: Unit = Unit(3);

    /// `(-i)^m`, using 4-periodicity.
    pub fn neg_i_pow(m: u64) -> Self {
        Unit((m % 4) as u8)
    }

    pub fn from_gaussian(z: &GaussianInt) -> Option<Self> {
        [Unit::ONE, Unit::NEG_I, Unit::NEG_ONE, Unit::I]
            .into_iter()
            .find(|u| u.to_gaussian() == *z)
    }

    /// Exponent of `-i`, in `0..4`.
    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn to_gaussian(self) -> GaussianInt {
        match self.0 {
            0 => GaussianInt::new(1, 0),
            1 => GaussianInt::new(0, -1),
            2 => GaussianInt::new(-1, 0),
            _ => GaussianInt::new(0, 1),
        }
    }

    /// Multiplies `z` by this unit without a bignum multiplication.
    pub fn apply(self, z: &GaussianInt) -> GaussianInt {
        match self.0 {
            0 => z.clone(),
            1 => z.mul_neg_i(),
            2 => -z,
            _ => z.mul_i(),
        }
    }

    fn prefix(self) -> &'static str {
        match self.0 {
            0 => "",
            1 => "-i",
            2 => "-",
            _ => "i",
        }
    }
}

impl std::ops::Mul for Unit {
    type Output = Unit;
    fn mul(self, rhs: Unit) -> Unit {
        Unit((self.0 + rhs.0) % 4)
    }
}

/// A unit amplitude on one basis state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitTerm {
    amplitude: Unit,
    basis: Basis,
}

impl QubitTerm {
    pub const ZERO: QubitTerm = QubitTerm::new(Unit::ONE, Basis::Zero);
    pub const ONE: QubitTerm = QubitTerm::new(Unit::ONE, Basis::One);

    pub const fn new(amplitude: Unit, basis: Basis) -> Self {
        QubitTerm { amplitude, basis }
    }

    /// The coarse-grained image of any word with `m` marked symbols.
    pub fn from_marked_count(m: u64) -> Self {
        QubitTerm::new(Unit::neg_i_pow(m), Basis::from_parity(m))
    }

    pub fn amplitude(&self) -> Unit {
        self.amplitude
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Whether the term has the shape `(-i)^m |m mod 2>` produced by
    /// [`coarse_grain`]: real amplitude on `|0>`, imaginary on `|1>`.
    pub fn is_coarse_grained_form(&self) -> bool {
        self.amplitude.0 % 2 == self.basis.bit()
    }

    /// `(coefficient of |0>, coefficient of |1>)`.
    pub fn to_coefficients(&self) -> (GaussianInt, GaussianInt) {
        let amp = self.amplitude.to_gaussian();
        match self.basis {
            Basis::Zero => (amp, GaussianInt::zero()),
            Basis::One => (GaussianInt::zero(), amp),
        }
    }
}

/// Graph labels `x`, `-ix`, `-x`, `ix`, `y`, `-iy`, `-y`, `iy`
/// with `x` for `|0>` and `y` for `|1>`.
impl fmt::Display for QubitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ket = match self.basis {
            Basis::Zero => "x",
            Basis::One => "y",
        };
        write!(f, "{}{}", self.amplitude.prefix(), ket)
    }
}

/// Number of occurrences of `a_K` in `word`.
pub fn count_marked(word: &Word, max_symbol: u32) -> u64 {
    word.indices().filter(|&i| i == max_symbol).count() as u64
}

pub fn coarse_grain(word: &Word, max_symbol: u32) -> QubitTerm {
    QubitTerm::from_marked_count(count_marked(word, max_symbol))
}

/// One entry of the renormalized rule multiset: `|source> -> factor |target>`,
/// repeated `multiplicity` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenormalizedRule {
    pub source: Basis,
    pub target: Basis,
    pub factor: Unit,
    pub multiplicity: u64,
}

impl RenormalizedRule {
    pub fn factor_gaussian(&self) -> GaussianInt {
        self.factor.to_gaussian()
    }

    /// The rewritten term, or `None` when the rule does not match the term's basis.
    pub fn apply(&self, term: &QubitTerm) -> Option<QubitTerm> {
        (term.basis == self.source)
            .then(|| QubitTerm::new(term.amplitude * self.factor, self.target))
    }
}

/// The rule multiset induced on qubit terms by the `K+1` append rules.
pub fn renormalized_ruleset(max_symbol: u32) -> Vec<RenormalizedRule> {
    let k = u64::from(max_symbol);
    vec![
        RenormalizedRule {
            source: Basis::Zero,
            target: Basis::Zero,
            factor: Unit::ONE,
            multiplicity: k,
        },
        RenormalizedRule {
            source: Basis::One,
            target: Basis::One,
            factor: Unit::ONE,
            multiplicity: k,
        },
        RenormalizedRule {
            source: Basis::Zero,
            target: Basis::One,
            factor: Unit::NEG_I,
            multiplicity: 1,
        },
        RenormalizedRule {
            source: Basis::One,
            target: Basis::Zero,
            factor: Unit::NEG_I,
            multiplicity: 1,
        },
    ]
}

/// All rule instances of the multiset applied to `term`, multiplicities expanded.
pub fn omega_image(term: &QubitTerm, max_symbol: u32) -> Vec<QubitTerm> {
    renormalized_ruleset(max_symbol)
        .iter()
        .filter_map(|rule| rule.apply(term).map(|t| (t, rule.multiplicity)))
        .flat_map(|(t, n)| std::iter::repeat_n(t, n as usize))
        .collect()
}
