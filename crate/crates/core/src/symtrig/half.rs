use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Error;

/// An exact multiple of 1/2, stored as its doubled value.
///
/// Quantum numbers and sine/phase exponents all live here. Even `twice`
/// means an integer, odd means a half-odd-integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInteger {
    twice: i64,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };
    pub const HALF: HalfInteger = HalfInteger { twice: 1 };
    pub const ONE: HalfInteger = HalfInteger { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInteger { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInteger { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_half_odd(self) -> bool {
        !self.is_integer()
    }

    /// The integer value, if there is one.
    pub const fn to_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub const fn abs(self) -> Self {
        HalfInteger { twice: self.twice.abs() }
    }

    pub const fn is_negative(self) -> bool {
        self.twice < 0
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.twice), BigInt::from(2))
    }
}

impl Add for HalfInteger {
    type Output = HalfInteger;
    fn add(self, rhs: Self) -> Self {
        HalfInteger {
            twice: self.twice.checked_add(rhs.twice).expect("half-integer overflow"),
        }
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;
    fn sub(self, rhs: Self) -> Self {
        HalfInteger {
            twice: self.twice.checked_sub(rhs.twice).expect("half-integer overflow"),
        }
    }
}

impl Neg for HalfInteger {
    type Output = HalfInteger;
    fn neg(self) -> Self {
        HalfInteger { twice: -self.twice }
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// Accepts `"5/2"`, `"-1/2"`, `"3"`, `"2.5"` and `"-0.5"`.
impl FromStr for HalfInteger {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::ParseHalfInteger(s.to_string());
        let t = s.trim();
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| err())?;
            let den: i64 = den.trim().parse().map_err(|_| err())?;
            return match den {
                1 => Ok(HalfInteger::from_int(num)),
                2 => Ok(HalfInteger::from_twice(num)),
                -1 => Ok(HalfInteger::from_int(-num)),
                -2 => Ok(HalfInteger::from_twice(-num)),
                _ => Err(err()),
            };
        }
        if let Some((int, frac)) = t.split_once('.') {
            let negative = int.trim_start().starts_with('-');
            let whole: i64 = match int.trim() {
                "" | "-" | "+" => 0,
                w => w.parse().map_err(|_| err())?,
            };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(err()),
            };
            let magnitude = 2 * whole.abs() + half;
            return Ok(HalfInteger::from_twice(if negative { -magnitude } else { magnitude }));
        }
        t.parse::<i64>().map(HalfInteger::from_int).map_err(|_| err())
    }
}
