use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;

use super::expr::TrigExpr;
use super::gauss::rational_to_f64;
use crate::error::{Error, Result};

/// A rational coefficient split as `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, Default)]
struct Split {
    hi: f64,
    lo: f64,
}

impl Split {
    fn new(r: &BigRational) -> Self {
        let hi = rational_to_f64(r);
        let lo = BigRational::from_float(hi).map_or(0.0, |h| rational_to_f64(&(r - h)));
        Split { hi, lo }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let z = s - a;
    (s, (a - (s - z)) + (b - z))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Compensated Horner evaluation of `sum a_k x^k`.
fn horner(coeffs: &[Split], x: f64) -> f64 {
    let Some((last, rest)) = coeffs.split_last() else {
        return 0.0;
    };
    let (mut s, mut c) = (last.hi, last.lo);
    for a in rest.iter().rev() {
        let (p, pe) = two_prod(s, x);
        let (t, se) = two_sum(p, a.hi);
        s = t;
        c = c * x + (pe + se + a.lo);
    }
    s + c
}

/// Terms sharing a sine power and phi frequency, as a polynomial in `cos(theta)`.
#[derive(Debug, Clone)]
struct CompiledGroup {
    sin2: i32,
    phi2: f64,
    re: Vec<Split>,
    im: Vec<Split>,
}

/// Floating-point snapshot of a [`TrigExpr`] for repeated evaluation.
///
/// Each cosine polynomial is summed with compensated Horner, so high-degree
/// expansions such as `T_k(cos theta)` keep near full precision. Evaluation
/// order is fixed, so results are reproducible.
#[derive(Debug, Clone)]
pub struct CompiledExpr {
    groups: Vec<CompiledGroup>,
}

impl CompiledExpr {
    pub fn new(e: &TrigExpr) -> Self {
        let mut groups: Vec<CompiledGroup> = Vec::new();
        for t in e.terms() {
            let sin2 = i32::try_from(t.sin_pow.twice()).expect("sine power out of range");
            let phi2 = t.phi_freq.twice() as f64;
            if !matches!(groups.last(), Some(g) if g.sin2 == sin2 && g.phi2 == phi2) {
                groups.push(CompiledGroup { sin2, phi2, re: Vec::new(), im: Vec::new() });
            }
            let g = groups.last_mut().expect("just pushed");
            let k = t.cos_pow as usize;
            if g.re.len() <= k {
                g.re.resize(k + 1, Split::default());
                g.im.resize(k + 1, Split::default());
            }
            g.re[k] = Split::new(&t.coeff.re);
            g.im[k] = Split::new(&t.coeff.im);
        }
        CompiledExpr { groups }
    }

    /// Evaluates at `(theta, phi)`; `theta` must lie in the open interval `(0, pi)`.
    pub fn eval(&self, theta: f64, phi: f64) -> Result<Complex64> {
        if !(theta > 0.0 && theta < PI) {
            return Err(Error::ThetaOutOfDomain(theta));
        }
        let s = theta.sin();
        let root = s.sqrt();
        let c = theta.cos();
        let mut acc = Complex64::new(0.0, 0.0);
        for g in &self.groups {
            let sin_part = if g.sin2 % 2 == 0 { s.powi(g.sin2 / 2) } else { root.powi(g.sin2) };
            let angle = 0.5 * g.phi2 * phi;
            let phase = Complex64::new(angle.cos(), angle.sin());
            acc += phase * Complex64::new(horner(&g.re, c), horner(&g.im, c)) * sin_part;
        }
        Ok(acc)
    }
}

/// Numerically evaluates `e` at `(theta, phi)`.
pub fn eval_expr(e: &TrigExpr, theta: f64, phi: f64) -> Result<Complex64> {
    CompiledExpr::new(e).eval(theta, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symtrig::{GaussianRational, HalfInteger};

    #[test]
    fn constant_is_one_everywhere() {
        let v = eval_expr(&TrigExpr::one(), 0.3, 2.0).unwrap();
        assert_eq!(v, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn cot_like_term_vanishes_at_equator() {
        let e = TrigExpr::monomial(GaussianRational::one(), HalfInteger::from_twice(-1), 1, HalfInteger::ZERO);
        assert!(eval_expr(&e, PI / 2.0, 0.0).unwrap().norm() < 1e-15);
    }

    #[test]
    fn compensated_horner_is_accurate() {
        // (x - 1)^6 expanded: huge cancellation near x = 1.
        let r = |n: i64| Split::new(&BigRational::from_integer(n.into()));
        let coeffs = [r(1), r(-6), r(15), r(-20), r(15), r(-6), r(1)];
        let x = 1.0 + 1e-3;
        assert!((horner(&coeffs, x) - 1e-18).abs() < 1e-28);
        let third = Split::new(&BigRational::new(1.into(), 3.into()));
        assert!(third.lo != 0.0);
    }

    #[test]
    fn rejects_poles() {
        assert!(eval_expr(&TrigExpr::one(), 0.0, 0.0).is_err());
        assert!(eval_expr(&TrigExpr::one(), PI, 0.0).is_err());
        assert!(eval_expr(&TrigExpr::one(), -0.1, 0.0).is_err());
        assert!(eval_expr(&TrigExpr::one(), f64::NAN, 0.0).is_err());
    }
}
