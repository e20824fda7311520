//! Arbitrary-precision Gaussian integers `a + bi`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An exact complex number with arbitrary-precision integer parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussianInt {
    re: BigInt,
    im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    /// The imaginary unit `i`.
    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn re(&self) -> &BigInt {
        &self.re
    }

    pub fn im(&self) -> &BigInt {
        &self.im
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.re, self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    /// True for the four units `1, i, -1, -i`.
    pub fn is_unit(&self) -> bool {
        (self.re.abs().is_one() && self.im.is_zero())
            || (self.re.is_zero() && self.im.abs().is_one())
    }

    pub fn conj(&self) -> Self {
        GaussianInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplication by `i`, a component swap.
    pub fn mul_i(&self) -> Self {
        GaussianInt {
            re: -&self.im,
            im: self.re.clone(),
        }
    }

    /// Multiplication by `-i`.
    pub fn mul_neg_i(&self) -> Self {
        GaussianInt {
            re: self.im.clone(),
            im: -&self.re,
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        GaussianInt {
            re: &self.re * factor,
            im: &self.im * factor,
        }
    }

    pub fn square(&self) -> Self {
        // (a+bi)^2 = (a+b)(a-b) + 2ab i
        let sum = &self.re + &self.im;
        let diff = &self.re - &self.im;
        let cross = &self.re * &self.im;
        GaussianInt {
            re: sum * diff,
            im: cross << 1u32,
        }
    }

    /// `self^exp` by left-to-right binary exponentiation: one squaring per bit
    /// of `exp` plus one multiplication by `self` per set bit.
    pub fn pow(&self, exp: u64) -> Self {
        if exp == 0 {
            return Self::one();
        }
        let mut acc = self.clone();
        let top = 63 - exp.leading_zeros();
        for bit in (0..top).rev() {
            acc = acc.square();
            if exp >> bit & 1 == 1 {
                acc = &acc * self;
            }
        }
        acc
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl From<i64> for GaussianInt {
    fn from(re: i64) -> Self {
        Self::new(re, 0)
    }
}

impl From<BigInt> for GaussianInt {
    fn from(re: BigInt) -> Self {
        Self::new(re, 0)
    }
}

impl<'a> Add<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &'a GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl AddAssign<&GaussianInt> for GaussianInt {
    fn add_assign(&mut self, rhs: &GaussianInt) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &'a GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: GaussianInt) -> GaussianInt {
        &self - &rhs
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &'a GaussianInt) -> GaussianInt {
        // Three real multiplications instead of four.
        let (a, b) = (&self.re, &self.im);
        let (c, d) = (&rhs.re, &rhs.im);
        let k1 = c * (a + b);
        let k2 = a * (d - c);
        let k3 = b * (c + d);
        GaussianInt {
            re: &k1 - k3,
            im: k1 + k2,
        }
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        &self * &rhs
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl std::iter::Sum for GaussianInt {
    fn sum<I: Iterator<Item = GaussianInt>>(iter: I) -> Self {
        iter.fold(GaussianInt::zero(), |acc, z| acc + z)
    }
}
