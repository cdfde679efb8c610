//! Complex scalar abstraction shared by the `f64` and multiprecision paths.
//!
//! [`CNum`] is implemented for [`Complex64`] and for [`rug::Complex`]. Values
//! carry their own precision; constructors take the precision in bits and
//! ignore it for `f64`.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use rug::float::Constant;
use rug::{Complex, Float, Rational};

pub const DEFAULT_PRECISION_DIGITS: u32 = 50;

/// Bits of mantissa needed for `digits` decimal digits, plus guard bits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

pub trait CNum:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn from_c64(prec: u32, z: Complex64) -> Self;
    fn from_q(prec: u32, q: &Rational) -> Self;
    fn pi(prec: u32) -> Self;
    fn prec(&self) -> u32;
    fn exp(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    /// Magnitude, rounded to `f64`.
    fn abs(&self) -> f64;
    fn to_c64(&self) -> Complex64;
    /// Unit roundoff at this value's precision.
    fn epsilon(&self) -> f64;
    /// The real part as an exact (dyadic) rational.
    fn re_rational(&self) -> Rational;

    fn zero_like(&self) -> Self {
        Self::from_c64(self.prec(), Complex64::new(0.0, 0.0))
    }
    fn one_like(&self) -> Self {
        Self::from_c64(self.prec(), Complex64::new(1.0, 0.0))
    }
    fn lift(&self, re: f64, im: f64) -> Self {
        Self::from_c64(self.prec(), Complex64::new(re, im))
    }
    fn lift_q(&self, q: &Rational) -> Self {
        Self::from_q(self.prec(), q)
    }
    fn scale(&self, f: f64) -> Self {
        self.clone() * self.lift(f, 0.0)
    }
    fn mul_i(&self) -> Self {
        self.clone() * self.lift(0.0, 1.0)
    }
    fn square(&self) -> Self {
        self.clone() * self
    }
    fn powi(&self, n: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * &base;
            }
            base = base.square();
            k >>= 1;
        }
        acc
    }
    fn re(&self) -> f64 {
        self.to_c64().re
    }
    fn im(&self) -> f64 {
        self.to_c64().im
    }
}

impl CNum for Complex64 {
    fn from_c64(_prec: u32, z: Complex64) -> Self {
        z
    }
    fn from_q(_prec: u32, q: &Rational) -> Self {
        Complex64::new(q.to_f64(), 0.0)
    }
    fn pi(_prec: u32) -> Self {
        Complex64::new(std::f64::consts::PI, 0.0)
    }
    fn prec(&self) -> u32 {
        53
    }
    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }
    fn sqrt(&self) -> Self {
        Complex64::sqrt(*self)
    }
    fn ln(&self) -> Self {
        Complex64::ln(*self)
    }
    fn abs(&self) -> f64 {
        self.norm()
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn epsilon(&self) -> f64 {
        f64::EPSILON
    }
    fn re_rational(&self) -> Rational {
        Rational::from_f64(self.re).unwrap_or_default()
    }
}

impl CNum for Complex {
    fn from_c64(prec: u32, z: Complex64) -> Self {
        Complex::with_val(prec, (z.re, z.im))
    }
    fn from_q(prec: u32, q: &Rational) -> Self {
        Complex::with_val(prec, (Float::with_val(prec, q), 0))
    }
    fn pi(prec: u32) -> Self {
        Complex::with_val(prec, (Float::with_val(prec, Constant::Pi), 0))
    }
    fn prec(&self) -> u32 {
        self.prec().0
    }
    fn exp(&self) -> Self {
        self.clone().exp()
    }
    fn sqrt(&self) -> Self {
        self.clone().sqrt()
    }
    fn ln(&self) -> Self {
        self.clone().ln()
    }
    fn abs(&self) -> f64 {
        Float::with_val(self.prec().0, self.abs_ref()).to_f64()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.real().to_f64(), self.imag().to_f64())
    }
    fn epsilon(&self) -> f64 {
        2f64.powi(1 - self.prec().0 as i32)
    }
    fn re_rational(&self) -> Rational {
        self.real().to_rational().unwrap_or_default()
    }
}

/// Decimal rendering of a complex value with `digits` significant digits.
pub fn format_complex<T: CNum + FormatDigits>(z: &T, digits: usize) -> (String, String) {
    z.format_parts(digits)
}

pub trait FormatDigits {
    fn format_parts(&self, digits: usize) -> (String, String);
}

impl FormatDigits for Complex64 {
    fn format_parts(&self, digits: usize) -> (String, String) {
        let d = digits.clamp(1, 17);
        (
            format!("{:.*e}", d - 1, self.re),
            format!("{:.*e}", d - 1, self.im),
        )
    }
}

impl FormatDigits for Complex {
    fn format_parts(&self, digits: usize) -> (String, String) {
        (
            self.real().to_string_radix(10, Some(digits.max(1))),
            self.imag().to_string_radix(10, Some(digits.max(1))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mp_and_f64_agree_on_exp() {
        let z = Complex64::new(0.3, -1.2);
        let a = CNum::exp(&z);
        let b = <Complex as CNum>::from_c64(200, z);
        let b = CNum::exp(&b).to_c64();
        assert!((a - b).norm() < 1e-15);
    }

    #[test]
    fn bits_cover_digits() {
        assert!(digits_to_bits(30) >= 100);
        let x = <Complex as CNum>::pi(digits_to_bits(40));
        assert!(x.epsilon() < 1e-40);
    }

    #[test]
    fn powi_matches_repeated_product() {
        let z = Complex64::new(1.1, 0.2);
        let p = z.powi(7);
        let mut q = Complex64::new(1.0, 0.0);
        for _ in 0..7 {
            q *= z;
        }
        assert!((p - q).norm() < 1e-13);
    }
}
