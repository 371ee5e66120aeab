//! Legendre-type polynomials and unnormalized harmonics
//! `Y_l^m = exp(i m phi) sin^|m|(theta) P(cos theta)` for integer and
//! half-odd-integer `l`, `m`, plus exact normalization integrals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symtrig::{format_rational, ExactValue, GaussianRational, HalfInteger, TrigExpr, TrigTerm};

/// A valid `(l, m)` pair: `l >= 0`, `|m| <= l`, and `l - m` an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantumNumbers {
    l: HalfInteger,
    m: HalfInteger,
}

impl QuantumNumbers {
    pub fn new(l: HalfInteger, m: HalfInteger) -> Result<Self> {
        let valid = !l.is_negative() && m.abs() <= l && (l - m).is_integer();
        if valid {
            Ok(QuantumNumbers { l, m })
        } else {
            Err(Error::InvalidQuantumNumbers { l, m })
        }
    }

    /// Shorthand taking doubled values, `from_twice(3, -1)` is `(3/2, -1/2)`.
    pub fn from_twice(l2: i64, m2: i64) -> Result<Self> {
        Self::new(HalfInteger::from_twice(l2), HalfInteger::from_twice(m2))
    }

    pub fn l(&self) -> HalfInteger {
        self.l
    }

    pub fn m(&self) -> HalfInteger {
        self.m
    }

    pub fn abs_m(&self) -> HalfInteger {
        self.m.abs()
    }

    /// Degree of the polynomial factor, `l - |m|`.
    pub fn order(&self) -> u32 {
        (self.l - self.m.abs()).to_integer().expect("validated order") as u32
    }

    pub fn is_half_odd(&self) -> bool {
        self.l.is_half_odd()
    }

    /// Phase period in units of pi: 4 for half-odd-integer `m`, 2 otherwise.
    pub fn phi_period_over_pi(&self) -> u32 {
        if self.m.is_half_odd() {
            4
        } else {
            2
        }
    }

    /// Every valid state with `l <= l_max`, ordered by `l` then `m`.
    pub fn all_up_to(l_max: HalfInteger) -> Vec<QuantumNumbers> {
        let mut out = Vec::new();
        for l2 in 0..=l_max.twice().max(-1) {
            let mut m2 = -l2;
            while m2 <= l2 {
                out.push(QuantumNumbers {
                    l: HalfInteger::from_twice(l2),
                    m: HalfInteger::from_twice(m2),
                });
                m2 += 2;
            }
        }
        out
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(l={}, m={})", self.l, self.m)
    }
}

/// `P(x) = sum_k a_k x^k` with `x = cos(theta)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegendrePoly {
    l: HalfInteger,
    abs_m: HalfInteger,
    coeffs: Vec<BigRational>,
}

impl LegendrePoly {
    /// Coefficients, lowest degree first; the length is `order + 1`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    /// `a_{k+2} / a_k` from the series recurrence.
    pub fn recurrence_ratio(&self, k: u32) -> BigRational {
        recurrence_ratio(self.l, self.abs_m, k)
    }

    /// The coefficient `a_{n+2}` the recurrence would produce next; zero
    /// whenever `l(l+1)` truncates the series.
    pub fn next_coefficient(&self) -> BigRational {
        let n = self.order();
        &self.coeffs[n as usize] * self.recurrence_ratio(n)
    }

    /// `dP/dx`, lowest degree first.
    pub fn derivative(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * BigRational::from_integer(BigInt::from(k)))
            .collect()
    }
}

fn recurrence_ratio(l: HalfInteger, abs_m: HalfInteger, k: u32) -> BigRational {
    let km = HalfInteger::from_int(i64::from(k)) + abs_m;
    let one = BigRational::one();
    let lhs = km.to_rational() * (km.to_rational() + &one);
    let eig = l.to_rational() * (l.to_rational() + &one);
    let den = BigRational::from_integer(BigInt::from((u64::from(k) + 1) * (u64::from(k) + 2)));
    (lhs - eig) / den
}

/// Polynomial factor of `Y_l^{+-|m|}`, seeded with lowest coefficient 1.
///
/// Requiring `M^2` to return `l(l+1)` times `exp(i m phi) sin^|m| P(x)`
/// gives `(1-x^2) P'' - 2(|m|+1) x P' + [l(l+1) - |m|(|m|+1)] P = 0`, whose
/// power series obeys
/// `a_{k+2} = a_k [(k+|m|)(k+|m|+1) - l(l+1)] / [(k+1)(k+2)]`.
pub fn legendre_poly(l: HalfInteger, abs_m: HalfInteger) -> Result<LegendrePoly> {
    if abs_m.is_negative() {
        return Err(Error::InvalidOrder { l, abs_m });
    }
    let n = (l - abs_m)
        .to_integer()
        .filter(|n| *n >= 0)
        .ok_or(Error::InvalidOrder { l, abs_m })? as u32;
    let mut coeffs = vec![BigRational::zero(); n as usize + 1];
    let mut k = n % 2;
    coeffs[k as usize] = BigRational::one();
    while k + 2 <= n {
        coeffs[k as usize + 2] = &coeffs[k as usize] * recurrence_ratio(l, abs_m, k);
        k += 2;
    }
    Ok(LegendrePoly { l, abs_m, coeffs })
}

/// An unnormalized harmonic together with its polynomial factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Harmonic {
    pub qn: QuantumNumbers,
    pub poly: LegendrePoly,
    pub expr: TrigExpr,
}

pub fn make_harmonic(qn: QuantumNumbers) -> Result<Harmonic> {
    let poly = legendre_poly(qn.l(), qn.abs_m())?;
    let expr = poly_times_prefactor(poly.coeffs(), qn.abs_m(), qn.m());
    Ok(Harmonic { qn, poly, expr })
}

/// `exp(i phi_freq phi) sin^sin_pow(theta) sum_k coeffs[k] cos^k(theta)`.
pub(crate) fn poly_times_prefactor(coeffs: &[BigRational], sin_pow: HalfInteger, phi_freq: HalfInteger) -> TrigExpr {
    crate::symtrig::canonicalize(coeffs.iter().enumerate().map(|(k, a)| TrigTerm {
        coeff: GaussianRational::real(a.clone()),
        sin_pow,
        cos_pow: k as u32,
        phi_freq,
    }))
}

/// `int_0^pi sin^a(theta) cos^b(theta) d theta`, exactly.
///
/// Zero for odd `b`; otherwise rational for odd `a` and rational times pi
/// for even `a`.
pub fn wallis(a: u32, b: u32) -> ExactValue {
    if b % 2 == 1 {
        return ExactValue::zero();
    }
    let mut acc = BigRational::one();
    // W(a, b) = (b-1)/(a+b) W(a, b-2)
    let mut bb = b;
    while bb >= 2 {
        acc *= BigRational::new(BigInt::from(bb - 1), BigInt::from(a + bb));
        bb -= 2;
    }
    // W(a, 0) = (a-1)/a W(a-2, 0), W(0, 0) = pi, W(1, 0) = 2
    let mut aa = a;
    while aa >= 2 {
        acc *= BigRational::new(BigInt::from(aa - 1), BigInt::from(aa));
        aa -= 2;
    }
    if aa == 0 {
        ExactValue::pi_power(acc, 1)
    } else {
        ExactValue::rational(acc * BigRational::from_integer(BigInt::from(2)))
    }
}

/// `Phi * int_0^pi |sin^|m| P(cos theta)|^2 sin(theta) d theta` with
/// `Phi = 2 pi` for integer `m` and `4 pi` for half-odd-integer `m`.
pub fn norm_squared_integral(qn: QuantumNumbers) -> Result<ExactValue> {
    let poly = legendre_poly(qn.l(), qn.abs_m())?;
    let a = poly.coeffs();
    let mut square = vec![BigRational::zero(); 2 * a.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in a.iter().enumerate() {
            square[i + j] += x * y;
        }
    }
    let sin_pow = u32::try_from(qn.abs_m().twice() + 1).expect("small |m|");
    let mut inner = ExactValue::zero();
    for (j, c) in square.iter().enumerate() {
        if !c.is_zero() {
            inner = &inner + &wallis(sin_pow, j as u32).scale(c);
        }
    }
    let period = BigRational::from_integer(BigInt::from(qn.phi_period_over_pi()));
    Ok(inner.scale(&period).times_pi())
}

/// `1 / sqrt(norm_squared_integral(qn))`.
pub fn normalization_constant(qn: QuantumNumbers) -> Result<f64> {
    Ok(1.0 / norm_squared_integral(qn)?.to_f64().sqrt())
}

/// Machine-readable harmonic record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicRecord {
    pub l2: i64,
    pub m2: i64,
    pub poly: Vec<String>,
    #[serde(rename = "exprJSON")]
    pub expr_json: TrigExpr,
    #[serde(rename = "normSq")]
    pub norm_sq: NormSqRecord,
    #[serde(rename = "normConst")]
    pub norm_const: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormSqRecord {
    pub rat: String,
    pub pi: String,
    pub pi2: String,
}

impl HarmonicRecord {
    pub fn build(qn: QuantumNumbers) -> Result<Self> {
        let h = make_harmonic(qn)?;
        let norm = norm_squared_integral(qn)?;
        Ok(HarmonicRecord {
            l2: qn.l().twice(),
            m2: qn.m().twice(),
            poly: h.poly.coeffs().iter().map(format_rational).collect(),
            expr_json: h.expr,
            norm_sq: NormSqRecord {
                rat: format_rational(&norm.rational_part()),
                pi: format_rational(&norm.pi_part()),
                pi2: format_rational(&norm.pi_squared_part()),
            },
            norm_const: 1.0 / norm.to_f64().sqrt(),
        })
    }
}
