use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

const BITS_PER_DIGIT: f64 = std::f64::consts::LOG2_10;

/// Working precision for a computation, threaded explicitly through every call.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    decimal_digits: u32,
    guard_digits: u32,
}

impl PrecisionContext {
    /// Context with the default guard of `10 + ceil(digits/10)` digits.
    pub fn new(decimal_digits: u32) -> Result<Self> {
        let guard = 10 + decimal_digits.div_ceil(10);
        Self::with_guard(decimal_digits, guard)
    }

    pub fn with_guard(decimal_digits: u32, guard_digits: u32) -> Result<Self> {
        if decimal_digits < 30 {
            return Err(Error::Usage(format!(
                "working precision must be at least 30 digits, got {decimal_digits}"
            )));
        }
        Ok(Self {
            decimal_digits,
            guard_digits,
        })
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    /// Digits actually carried by scalars created under this context.
    pub fn total_digits(&self) -> u32 {
        self.decimal_digits + self.guard_digits
    }

    /// Binary precision of scalars created under this context.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.total_digits())
    }

    /// Same context with the working digits doubled (the rerun used to certify results).
    pub fn doubled(&self) -> Self {
        Self::new(self.decimal_digits * 2).expect("doubling keeps digits >= 30")
    }

    /// Same context carrying `extra` additional working digits.
    pub fn with_extra_digits(&self, extra: u32) -> Self {
        Self {
            decimal_digits: self.decimal_digits + extra,
            guard_digits: self.guard_digits,
        }
    }

    pub fn zero(&self) -> Float {
        Float::new(self.bits())
    }

    pub fn real<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.bits(), v)
    }

    pub fn pi(&self) -> Float {
        pi(self.bits())
    }

    /// `10^-digits`, the absolute tolerance matching the working digits.
    pub fn epsilon(&self) -> Float {
        pow10(self.bits(), -(self.decimal_digits as i64))
    }
}

pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * BITS_PER_DIGIT).ceil() as u32 + 8
}

pub fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

pub fn pow10(bits: u32, e: i64) -> Float {
    let ten = Float::with_val(bits, 10);
    ten.pow(e as i32)
}

/// Decimal logarithm of |x| as an `f64`, without overflow for huge exponents.
pub fn log10_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (m, e) = x.to_f64_exp();
    m.abs().log10() + e as f64 * std::f64::consts::LOG10_2
}
