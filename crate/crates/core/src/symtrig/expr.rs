use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gauss::{format_rational, parse_rational, GaussianRational};
use super::half::HalfInteger;
use crate::error::{Error, Result};

/// One term `coeff * sin^sin_pow(theta) * cos^cos_pow(theta) * exp(i*phi_freq*phi)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrigTerm {
    pub coeff: GaussianRational,
    pub sin_pow: HalfInteger,
    pub cos_pow: u32,
    pub phi_freq: HalfInteger,
}

impl TrigTerm {
    /// Builds a term, rejecting negative cosine powers.
    pub fn new(
        coeff: GaussianRational,
        sin_pow: HalfInteger,
        cos_pow: i64,
        phi_freq: HalfInteger,
    ) -> Result<Self> {
        let cos_pow = u32::try_from(cos_pow).map_err(|_| Error::NegativeCosPower(cos_pow))?;
        Ok(TrigTerm { coeff, sin_pow, cos_pow, phi_freq })
    }

    pub(crate) fn key(&self) -> TermKey {
        TermKey::new(self.phi_freq.twice(), self.sin_pow.twice(), self.cos_pow)
    }
}

/// Sort key implementing the canonical order (phiFreq, sinPow parity, sinPow, cosPow).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct TermKey {
    phi2: i64,
    class: i64,
    sin2: i64,
    cos: u32,
}

impl TermKey {
    fn new(phi2: i64, sin2: i64, cos: u32) -> Self {
        TermKey { phi2, class: sin2.rem_euclid(4), sin2, cos }
    }
}

/// A finite sum of [`TrigTerm`]s, always held in canonical form.
///
/// Within each (phase frequency, sine-power class mod 2) group every term
/// shares the same sine power `p`, and the cosine polynomial multiplying
/// `sin^p` is not divisible by `1 - cos^2`. That makes the representation
/// unique: two expressions are equal as functions on `(0, pi) x R` iff
/// their term lists are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TrigExpr {
    terms: Vec<TrigTerm>,
}

/// Reduces an arbitrary list of terms to canonical form.
pub fn canonicalize<I: IntoIterator<Item = TrigTerm>>(terms: I) -> TrigExpr {
    // group -> (sin2, cos) -> coefficient
    let mut groups: BTreeMap<(i64, i64), BTreeMap<(i64, u32), GaussianRational>> = BTreeMap::new();
    for t in terms {
        if t.coeff.is_zero() {
            continue;
        }
        let sin2 = t.sin_pow.twice();
        let slot = groups
            .entry((t.phi_freq.twice(), sin2.rem_euclid(4)))
            .or_default()
            .entry((sin2, t.cos_pow))
            .or_default();
        *slot += &t.coeff;
    }

    let mut out = Vec::new();
    for ((phi2, _), members) in groups {
        let members: Vec<_> = members.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let Some(mut base) = members.iter().map(|((s, _), _)| *s).min() else {
            continue;
        };
        let mut poly: Vec<GaussianRational> = Vec::new();
        for ((sin2, cos), c) in &members {
            // sin^(p* + 2j) = sin^p* (1 - cos^2)^j
            let j = ((sin2 - base) / 4) as usize;
            let mut binom = BigInt::from(1);
            for i in 0..=j {
                let deg = *cos as usize + 2 * i;
                if poly.len() <= deg {
                    poly.resize(deg + 1, GaussianRational::zero());
                }
                let mut b = BigRational::from_integer(binom.clone());
                if i % 2 == 1 {
                    b = -b;
                }
                poly[deg] += &c.scale_rational(&b);
                binom = binom * BigInt::from(j - i) / BigInt::from(i + 1);
            }
        }
        trim(&mut poly);
        while let Some(q) = divide_by_one_minus_x2(&poly) {
            poly = q;
            base += 4;
        }
        for (k, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                out.push(TrigTerm {
                    coeff: c,
                    sin_pow: HalfInteger::from_twice(base),
                    cos_pow: k as u32,
                    phi_freq: HalfInteger::from_twice(phi2),
                });
            }
        }
    }
    out.sort_by_key(TrigTerm::key);
    TrigExpr { terms: out }
}

fn trim(poly: &mut Vec<GaussianRational>) {
    while poly.last().is_some_and(GaussianRational::is_zero) {
        poly.pop();
    }
}

/// Exact quotient `p / (1 - x^2)`, or `None` if the division leaves a remainder
/// (or `p` is zero).
fn divide_by_one_minus_x2(p: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    let d = p.len();
    if d < 3 {
        return None;
    }
    // p_k = q_k - q_{k-2}, solved from the top down.
    let mut q = vec![GaussianRational::zero(); d];
    for k in (2..d).rev() {
        q[k - 2] = &q[k] - &p[k];
    }
    if q[0] != p[0] || q[1] != p[1] {
        return None;
    }
    q.truncate(d - 2);
    trim(&mut q);
    Some(q)
}

impl TrigExpr {
    pub fn zero() -> Self {
        TrigExpr::default()
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, HalfInteger::ZERO, 0, HalfInteger::ZERO)
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn monomial(coeff: GaussianRational, sin_pow: HalfInteger, cos_pow: u32, phi_freq: HalfInteger) -> Self {
        canonicalize([TrigTerm { coeff, sin_pow, cos_pow, phi_freq }])
    }

    /// `sum_k coeffs[k] * cos^k(theta)`.
    pub fn from_cos_poly(coeffs: &[BigRational]) -> Self {
        canonicalize(coeffs.iter().enumerate().map(|(k, c)| TrigTerm {
            coeff: GaussianRational::real(c.clone()),
            sin_pow: HalfInteger::ZERO,
            cos_pow: k as u32,
            phi_freq: HalfInteger::ZERO,
        }))
    }

    pub fn terms(&self) -> &[TrigTerm] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// First term in canonical order.
    pub fn leading_term(&self) -> Option<&TrigTerm> {
        self.terms.first()
    }

    /// Coefficient of the monomial with the given exponents (zero if absent).
    pub fn coefficient(&self, sin_pow: HalfInteger, cos_pow: u32, phi_freq: HalfInteger) -> GaussianRational {
        let key = TermKey::new(phi_freq.twice(), sin_pow.twice(), cos_pow);
        self.terms
            .binary_search_by_key(&key, TrigTerm::key)
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_default()
    }

    /// Distinct phase frequencies, ascending.
    pub fn phi_frequencies(&self) -> Vec<HalfInteger> {
        let mut f: Vec<_> = self.terms.iter().map(|t| t.phi_freq).collect();
        f.dedup();
        f
    }

    /// Re-runs canonicalization. Idempotent on any value of this type.
    pub fn canonicalize(&self) -> TrigExpr {
        canonicalize(self.terms.iter().cloned())
    }

    pub fn scale(&self, c: &GaussianRational) -> TrigExpr {
        if c.is_zero() {
            return TrigExpr::zero();
        }
        // Nonzero scaling keeps the canonical form.
        TrigExpr {
            terms: self
                .terms
                .iter()
                .map(|t| TrigTerm { coeff: &t.coeff * c, ..t.clone() })
                .collect(),
        }
    }

    /// Multiplies by a single monomial `coeff * sin^sin_pow * cos^cos_pow * e^{i phi_freq phi}`.
    pub fn mul_monomial(&self, coeff: &GaussianRational, sin_pow: HalfInteger, cos_pow: u32, phi_freq: HalfInteger) -> TrigExpr {
        canonicalize(self.terms.iter().map(|t| TrigTerm {
            coeff: &t.coeff * coeff,
            sin_pow: t.sin_pow + sin_pow,
            cos_pow: t.cos_pow + cos_pow,
            phi_freq: t.phi_freq + phi_freq,
        }))
    }

    /// Partial derivative with respect to theta.
    pub fn d_dtheta(&self) -> TrigExpr {
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            let p = t.sin_pow;
            if p != HalfInteger::ZERO {
                out.push(TrigTerm {
                    coeff: t.coeff.scale_rational(&p.to_rational()),
                    sin_pow: p - HalfInteger::ONE,
                    cos_pow: t.cos_pow + 1,
                    phi_freq: t.phi_freq,
                });
            }
            if t.cos_pow > 0 {
                let q = BigRational::from_integer(BigInt::from(t.cos_pow));
                out.push(TrigTerm {
                    coeff: -t.coeff.scale_rational(&q),
                    sin_pow: p + HalfInteger::ONE,
                    cos_pow: t.cos_pow - 1,
                    phi_freq: t.phi_freq,
                });
            }
        }
        canonicalize(out)
    }

    /// Partial derivative with respect to phi.
    pub fn d_dphi(&self) -> TrigExpr {
        canonicalize(self.terms.iter().map(|t| TrigTerm {
            coeff: &t.coeff * &GaussianRational::imag(t.phi_freq.to_rational()),
            ..t.clone()
        }))
    }
}

impl Add for &TrigExpr {
    type Output = TrigExpr;
    fn add(self, rhs: &TrigExpr) -> TrigExpr {
        canonicalize(self.terms.iter().chain(rhs.terms.iter()).cloned())
    }
}

impl Add for TrigExpr {
    type Output = TrigExpr;
    fn add(self, rhs: TrigExpr) -> TrigExpr {
        canonicalize(self.terms.into_iter().chain(rhs.terms))
    }
}

impl Sub for &TrigExpr {
    type Output = TrigExpr;
    fn sub(self, rhs: &TrigExpr) -> TrigExpr {
        canonicalize(
            self.terms
                .iter()
                .cloned()
                .chain(rhs.terms.iter().map(|t| TrigTerm { coeff: -&t.coeff, ..t.clone() })),
        )
    }
}

impl Sub for TrigExpr {
    type Output = TrigExpr;
    fn sub(self, rhs: TrigExpr) -> TrigExpr {
        &self - &rhs
    }
}

impl Neg for &TrigExpr {
    type Output = TrigExpr;
    fn neg(self) -> TrigExpr {
        self.scale(&GaussianRational::from_int(-1))
    }
}

impl Mul for &TrigExpr {
    type Output = TrigExpr;
    fn mul(self, rhs: &TrigExpr) -> TrigExpr {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                out.push(TrigTerm {
                    coeff: &a.coeff * &b.coeff,
                    sin_pow: a.sin_pow + b.sin_pow,
                    cos_pow: a.cos_pow + b.cos_pow,
                    phi_freq: a.phi_freq + b.phi_freq,
                });
            }
        }
        canonicalize(out)
    }
}

impl Mul for TrigExpr {
    type Output = TrigExpr;
    fn mul(self, rhs: TrigExpr) -> TrigExpr {
        &self * &rhs
    }
}

pub fn add(a: &TrigExpr, b: &TrigExpr) -> TrigExpr {
    a + b
}

pub fn mul(a: &TrigExpr, b: &TrigExpr) -> TrigExpr {
    a * b
}

pub fn scale(c: &GaussianRational, a: &TrigExpr) -> TrigExpr {
    a.scale(c)
}

pub fn d_dtheta(e: &TrigExpr) -> TrigExpr {
    e.d_dtheta()
}

pub fn d_dphi(e: &TrigExpr) -> TrigExpr {
    e.d_dphi()
}

impl fmt::Display for TrigExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.coeff)?;
            if t.sin_pow != HalfInteger::ZERO {
                write!(f, "·sin^({})θ", t.sin_pow)?;
            }
            if t.cos_pow != 0 {
                write!(f, "·cos^{}θ", t.cos_pow)?;
            }
            if t.phi_freq != HalfInteger::ZERO {
                write!(f, "·e^(i·{}·φ)", t.phi_freq)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffRecord {
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    coeff: CoeffRecord,
    sin2: i64,
    cos: i64,
    phi2: i64,
}

impl Serialize for TrigExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|t| TermRecord {
                coeff: CoeffRecord { re: format_rational(&t.coeff.re), im: format_rational(&t.coeff.im) },
                sin2: t.sin_pow.twice(),
                cos: i64::from(t.cos_pow),
                phi2: t.phi_freq.twice(),
            })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TrigExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            let re = parse_rational(&r.coeff.re).map_err(D::Error::custom)?;
            let im = parse_rational(&r.coeff.im).map_err(D::Error::custom)?;
            let term = TrigTerm::new(
                GaussianRational::new(re, im),
                HalfInteger::from_twice(r.sin2),
                r.cos,
                HalfInteger::from_twice(r.phi2),
            )
            .map_err(D::Error::custom)?;
            terms.push(term);
        }
        Ok(canonicalize(terms))
    }
}
