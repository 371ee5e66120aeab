use std::fmt;
use std::ops::Add;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::gauss::rational_to_f64;

/// An exact real `c0 + c1*pi + c2*pi^2 + ...` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactValue {
    /// Coefficient of `pi^k` at index `k`; no trailing zeros.
    pi_coeffs: Vec<BigRational>,
}

impl ExactValue {
    pub fn zero() -> Self {
        ExactValue::default()
    }

    pub fn rational(r: BigRational) -> Self {
        Self::from_coeffs(vec![r])
    }

    /// `r * pi^power`.
    pub fn pi_power(r: BigRational, power: usize) -> Self {
        let mut v = vec![BigRational::zero(); power + 1];
        v[power] = r;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut pi_coeffs: Vec<BigRational>) -> Self {
        while pi_coeffs.last().is_some_and(Zero::is_zero) {
            pi_coeffs.pop();
        }
        ExactValue { pi_coeffs }
    }

    /// Coefficient of `pi^k`.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.pi_coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn rational_part(&self) -> BigRational {
        self.coeff(0)
    }

    pub fn pi_part(&self) -> BigRational {
        self.coeff(1)
    }

    pub fn pi_squared_part(&self) -> BigRational {
        self.coeff(2)
    }

    pub fn max_pi_power(&self) -> usize {
        self.pi_coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.pi_coeffs.is_empty()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::from_coeffs(self.pi_coeffs.iter().map(|c| c * r).collect())
    }

    pub fn times_pi(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = Vec::with_capacity(self.pi_coeffs.len() + 1);
        v.push(BigRational::zero());
        v.extend(self.pi_coeffs.iter().cloned());
        Self::from_coeffs(v)
    }

    pub fn to_f64(&self) -> f64 {
        // Horner in pi.
        self.pi_coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * std::f64::consts::PI + rational_to_f64(c))
    }
}

impl Add for &ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: &ExactValue) -> ExactValue {
        let n = self.pi_coeffs.len().max(rhs.pi_coeffs.len());
        ExactValue::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.pi_coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "({a})π")?,
                _ => write!(f, "({a})π^{k}")?,
            }
        }
        Ok(())
    }
}
