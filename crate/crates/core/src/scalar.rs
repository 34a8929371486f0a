//! Scalar abstractions shared by the numeric code paths.
//!
//! Exact code is generic over `num_integer::Integer` (in practice `BigInt`,
//! occasionally `i64`/`i128` in tests). Approximate code is generic over
//! [`Real`], which is implemented for `f64` and for the binary
//! arbitrary-precision float [`MpFloat`].
//!
//! Arbitrary-precision values carry their own precision: constructors take a
//! bit count, and arithmetic keeps the larger precision of the operands. The
//! `num_traits::Zero`/`One` constants of `MpFloat` are exact, so mixing them
//! with lifted values is fine, but inexact operations (division, square
//! roots) should always involve at least one lifted operand.

use std::fmt::Debug;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::{IBig, UBig};
use num_bigint::{BigInt, Sign};
use num_traits::{Num, Signed};

/// Binary arbitrary-precision float, rounding half to even.
pub type MpFloat = FBig<HalfEven, 2>;

/// Working precision used when callers do not pick one.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

pub trait Real: Clone + Debug + PartialOrd + Num + Signed {
    /// Lift an integer at `bits` of precision.
    fn from_i64_at(v: i64, bits: u32) -> Self;
    fn from_bigint_at(v: &BigInt, bits: u32) -> Self;
    fn from_f64_at(v: f64, bits: u32) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    /// Nearest integer, ties to even.
    fn round_to_bigint(&self) -> BigInt;
    /// Precision actually available when `bits` is requested.
    fn effective_bits(bits: u32) -> u32;
    /// Unit roundoff `2^-effective_bits(bits)`.
    fn epsilon_at(bits: u32) -> Self;
    /// Decimal rendering with `digits` fractional digits, rounded.
    fn to_decimal_string(&self, digits: usize) -> String;
}

impl Real for f64 {
    fn from_i64_at(v: i64, _bits: u32) -> Self {
        v as f64
    }

    fn from_bigint_at(v: &BigInt, _bits: u32) -> Self {
        num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
    }

    fn from_f64_at(v: f64, _bits: u32) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn round_to_bigint(&self) -> BigInt {
        let r = self.round_ties_even();
        num_traits::FromPrimitive::from_f64(r).unwrap_or_default()
    }

    fn effective_bits(_bits: u32) -> u32 {
        f64::MANTISSA_DIGITS
    }

    fn epsilon_at(_bits: u32) -> Self {
        f64::EPSILON / 2.0
    }

    fn to_decimal_string(&self, digits: usize) -> String {
        format!("{:.*}", digits, self)
    }
}

fn bigint_to_ibig(v: &BigInt) -> IBig {
    let (sign, bytes) = v.to_bytes_le();
    let mag = IBig::from(UBig::from_le_bytes(&bytes));
    if sign == Sign::Minus {
        -mag
    } else {
        mag
    }
}

fn ibig_to_bigint(v: &IBig) -> BigInt {
    let (sign, mag) = v.clone().into_parts();
    let mag = BigInt::from_bytes_le(Sign::Plus, &mag.to_le_bytes());
    match sign {
        dashu_int::Sign::Negative => -mag,
        dashu_int::Sign::Positive => mag,
    }
}

impl Real for MpFloat {
    fn from_i64_at(v: i64, bits: u32) -> Self {
        MpFloat::from_parts(IBig::from(v), 0)
            .with_precision(bits as usize)
            .value()
    }

    fn from_bigint_at(v: &BigInt, bits: u32) -> Self {
        MpFloat::from_parts(bigint_to_ibig(v), 0)
            .with_precision(bits as usize)
            .value()
    }

    fn from_f64_at(v: f64, bits: u32) -> Self {
        match MpFloat::try_from(v) {
            Ok(x) => x.with_precision(bits as usize).value(),
            Err(_) => Self::from_i64_at(0, bits),
        }
    }

    fn to_f64(&self) -> f64 {
        MpFloat::to_f64(self).value()
    }

    fn sqrt(&self) -> Self {
        MpFloat::sqrt(self)
    }

    fn ln(&self) -> Self {
        MpFloat::ln(self)
    }

    fn exp(&self) -> Self {
        MpFloat::exp(self)
    }

    fn round_to_bigint(&self) -> BigInt {
        ibig_to_bigint(&self.round().to_int().value())
    }

    fn effective_bits(bits: u32) -> u32 {
        bits
    }

    fn epsilon_at(bits: u32) -> Self {
        MpFloat::from_parts(IBig::ONE, -(bits as isize))
            .with_precision(bits as usize)
            .value()
    }

    fn to_decimal_string(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = (self.clone() * Self::from_bigint_at(&scale, self.precision() as u32))
            .round_to_bigint();
        let negative = scaled.is_negative();
        let s = scaled.magnitude().to_string();
        let s = format!("{:0>width$}", s, width = digits + 1);
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}
