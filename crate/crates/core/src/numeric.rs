//! Floating-point oracle for the symbolic kernel.
//!
//! Everything here sees expressions only through [`CompiledExpr::eval`]:
//! derivatives come from central-difference stencils and integrals from
//! Gaussian quadrature, never from the symbolic differentiation code.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::{make_harmonic, QuantumNumbers};
use crate::operators::{apply, OperatorKind};
use crate::symtrig::{CompiledExpr, TrigExpr};

/// Sampling grid for oracle comparisons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub theta_min: f64,
    pub theta_max: f64,
    pub n_theta: usize,
    pub phi_points: Vec<f64>,
    pub h: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            theta_min: 0.5,
            theta_max: PI - 0.5,
            n_theta: 24,
            phi_points: vec![0.0, 0.7, 1.9, 3.3, 4.4, 5.8],
            h: 1e-4,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidGrid(why.to_string()));
        if !(self.theta_min >= 0.05 && self.theta_max <= PI - 0.05) {
            return bad("theta range must stay within [0.05, pi - 0.05]");
        }
        if self.theta_min.partial_cmp(&self.theta_max) != Some(Ordering::Less) {
            return bad("theta_min must be below theta_max");
        }
        if self.n_theta == 0 || self.phi_points.is_empty() {
            return bad("grid has no points");
        }
        if !(1e-6..=1e-2).contains(&self.h) {
            return bad("h must lie in [1e-6, 1e-2]");
        }
        Ok(())
    }

    pub fn thetas(&self) -> Vec<f64> {
        if self.n_theta == 1 {
            return vec![0.5 * (self.theta_min + self.theta_max)];
        }
        let step = (self.theta_max - self.theta_min) / (self.n_theta - 1) as f64;
        (0..self.n_theta).map(|i| self.theta_min + step * i as f64).collect()
    }

    pub fn samples(&self) -> usize {
        self.n_theta * self.phi_points.len()
    }
}

/// Step adjusted so that `x + h` is exactly representable.
fn exact_step(x: f64, h: f64) -> f64 {
    (x + h) - x
}

/// Fourth-order central first derivative.
fn d1(f: impl Fn(f64) -> Result<Complex64>, x: f64, h: f64) -> Result<Complex64> {
    let h = exact_step(x, h);
    Ok((f(x - 2.0 * h)? - f(x + 2.0 * h)? + 8.0 * (f(x + h)? - f(x - h)?)) / (12.0 * h))
}

/// Fourth-order central second derivative.
fn d2(f: impl Fn(f64) -> Result<Complex64>, x: f64, h: f64) -> Result<Complex64> {
    let h = exact_step(x, h);
    let sum = -(f(x - 2.0 * h)? + f(x + 2.0 * h)?) + 16.0 * (f(x + h)? + f(x - h)?) - 30.0 * f(x)?;
    Ok(sum / (12.0 * h * h))
}

fn fd_apply_compiled(kind: OperatorKind, f: &CompiledExpr, theta: f64, phi: f64, h: f64) -> Result<Complex64> {
    if !(theta - 2.0 * h > 0.0 && theta + 2.0 * h < PI) {
        return Err(Error::PoleProximity { theta, h });
    }
    let i = Complex64::i();
    let at_theta = |t: f64| f.eval(t, phi);
    let at_phi = |p: f64| f.eval(theta, p);
    let cot = theta.cos() / theta.sin();
    let (sp, cp) = phi.sin_cos();
    let out = match kind {
        OperatorKind::Mz => -i * d1(at_phi, phi, h)?,
        OperatorKind::Mx => {
            let ft = d1(at_theta, theta, h)?;
            let fp = d1(at_phi, phi, h)?;
            -i * (-sp * ft - cot * cp * fp)
        }
        OperatorKind::My => {
            let ft = d1(at_theta, theta, h)?;
            let fp = d1(at_phi, phi, h)?;
            -i * (cp * ft - cot * sp * fp)
        }
        OperatorKind::M2 => {
            let ftt = d2(at_theta, theta, h)?;
            let ft = d1(at_theta, theta, h)?;
            let fpp = d2(at_phi, phi, h)?;
            let s = theta.sin();
            -(ftt + cot * ft + fpp / (s * s))
        }
        OperatorKind::MplusPrime | OperatorKind::MminusPrime => {
            let sign = if kind == OperatorKind::MplusPrime { 1.0 } else { -1.0 };
            let ft = d1(at_theta, theta, h)?;
            let fp = d1(at_phi, phi, h)?;
            Complex64::from_polar(1.0, sign * phi) * (ft + sign * i * cot * fp)
        }
    };
    Ok(out)
}

/// Applies `kind` to `e` at one point by finite differences (`hbar = 1`).
pub fn fd_apply(kind: OperatorKind, e: &TrigExpr, theta: f64, phi: f64, h: f64) -> Result<Complex64> {
    fd_apply_compiled(kind, &CompiledExpr::new(e), theta, phi, h)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub max_rel_error: f64,
    pub worst_point: (f64, f64),
    pub samples: usize,
}

/// Absolute floor on the error denominator.
pub const REL_ERROR_FLOOR: f64 = 1e-10;

/// Fraction of the grid-wide magnitude below which errors are measured against
/// that fraction instead of the local value. Roundoff in the stencils scales
/// with the magnitude of the whole expression, not with its value near a zero.
pub const SCALE_FRACTION: f64 = 0.05;

/// Compares [`fd_apply`] against the evaluated symbolic result over `grid`.
///
/// The error at each point is `|fd - exact| / max(|exact|, REL_ERROR_FLOOR, SCALE_FRACTION * S)`
/// where `S` is the largest of `|exact|` and `|e|` over the grid.
pub fn oracle_compare(kind: OperatorKind, e: &TrigExpr, grid: &GridSpec) -> Result<OracleReport> {
    grid.validate()?;
    let f = CompiledExpr::new(e);
    let exact = CompiledExpr::new(&apply(kind, e));
    let mut points = Vec::with_capacity(grid.samples());
    let mut scale: f64 = 0.0;
    for theta in grid.thetas() {
        for &phi in &grid.phi_points {
            let numeric = fd_apply_compiled(kind, &f, theta, phi, grid.h)?;
            let want = exact.eval(theta, phi)?;
            scale = scale.max(want.norm()).max(f.eval(theta, phi)?.norm());
            points.push(((numeric - want).norm(), want.norm(), theta, phi));
        }
    }
    let floor = REL_ERROR_FLOOR.max(SCALE_FRACTION * scale);
    let mut report = OracleReport { max_rel_error: 0.0, worst_point: (grid.theta_min, grid.phi_points[0]), samples: 0 };
    for (diff, size, theta, phi) in points {
        let err = diff / size.max(floor);
        report.samples += 1;
        if err > report.max_rel_error || err.is_nan() {
            report.max_rel_error = err;
            report.worst_point = (theta, phi);
        }
    }
    Ok(report)
}

/// Machine-readable oracle report row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OracleRecord {
    pub op: String,
    pub l2: i64,
    pub m2: i64,
    pub max_rel_error: f64,
    pub worst_theta: f64,
    pub worst_phi: f64,
    pub samples: usize,
    pub h: f64,
}

impl OracleRecord {
    pub fn new(kind: OperatorKind, qn: QuantumNumbers, report: &OracleReport, h: f64) -> Self {
        OracleRecord {
            op: kind.name().to_string(),
            l2: qn.l().twice(),
            m2: qn.m().twice(),
            max_rel_error: report.max_rel_error,
            worst_theta: report.worst_point.0,
            worst_phi: report.worst_point.1,
            samples: report.samples,
            h,
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (x, w);
        out[n - 1 - i] = (-x, w);
    }
    out
}

/// Gauss-Chebyshev nodes and weights of the second kind: weight `sqrt(1 - x^2)`.
pub fn gauss_chebyshev_second(n: usize) -> Vec<(f64, f64)> {
    let step = PI / (n + 1) as f64;
    (1..=n)
        .map(|i| {
            let t = step * i as f64;
            (t.cos(), step * t.sin() * t.sin())
        })
        .collect()
}

/// Smallest node count accepted by [`quadrature_norm`]: `n + |m| + 2`, rounded up.
pub fn min_quadrature_nodes(qn: QuantumNumbers) -> usize {
    let abs_m2 = qn.abs_m().twice() as usize;
    qn.order() as usize + abs_m2.div_ceil(2) + 2
}

/// `Phi * int_0^pi |Y|^2 sin(theta) d theta` by Gaussian quadrature in `x = cos(theta)`.
///
/// Integer `m` gives a polynomial integrand (Gauss-Legendre); half-odd-integer
/// `m` gives `sqrt(1 - x^2)` times a polynomial (Gauss-Chebyshev, second kind).
/// Both rules are exact once `nodes` reaches the degree bound.
pub fn quadrature_norm(qn: QuantumNumbers, nodes: usize) -> Result<f64> {
    let required = min_quadrature_nodes(qn);
    if nodes < required {
        return Err(Error::InsufficientNodes { nodes, required });
    }
    let y = CompiledExpr::new(&make_harmonic(qn)?.expr);
    let density = |x: f64| -> Result<f64> { Ok(y.eval(x.acos(), 0.0)?.norm_sqr()) };
    let mut sum = 0.0;
    if qn.m().is_integer() {
        for (x, w) in gauss_legendre(nodes) {
            sum += w * density(x)?;
        }
    } else {
        for (x, w) in gauss_chebyshev_second(nodes) {
            sum += w * density(x)? / (1.0 - x * x).sqrt();
        }
    }
    Ok(f64::from(qn.phi_period_over_pi()) * PI * sum)
}

/// Phase behaviour of `Y` under `phi -> phi + 2 pi` and `phi -> phi + 4 pi`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoubleValuedReport {
    pub expected_ratio_2pi: f64,
    /// Largest `|Y(phi + 2pi)/Y(phi) - expected|` over the samples.
    pub max_dev_2pi: f64,
    /// Largest `|Y(phi + 4pi)/Y(phi) - 1|`.
    pub max_dev_4pi: f64,
    /// Largest relative spread of `|Y|^2` across phi at fixed theta.
    pub prob_spread: f64,
    pub samples: usize,
    pub passed: bool,
}

pub const DOUBLE_VALUED_TOL: f64 = 1e-12;

pub fn double_valued_check(qn: QuantumNumbers) -> Result<DoubleValuedReport> {
    let y = CompiledExpr::new(&make_harmonic(qn)?.expr);
    let expected = if qn.m().is_half_odd() { -1.0 } else { 1.0 };
    let thetas = [0.31, 0.67, 1.02, 1.37, 1.9, 2.44, 2.83];
    let phis = [0.0, 0.5, 1.7, 3.1, 4.6, 6.0];
    let mut report = DoubleValuedReport {
        expected_ratio_2pi: expected,
        max_dev_2pi: 0.0,
        max_dev_4pi: 0.0,
        prob_spread: 0.0,
        samples: 0,
        passed: false,
    };
    let scale = thetas
        .iter()
        .map(|&t| y.eval(t, 0.0).map(|v| v.norm()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    for &theta in &thetas {
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for &phi in &phis {
            let base = y.eval(theta, phi)?;
            let shifted = y.eval(theta, phi + 2.0 * PI)?;
            let twice = y.eval(theta, phi + 4.0 * PI)?;
            for v in [base, shifted, twice] {
                lo = lo.min(v.norm_sqr());
                hi = hi.max(v.norm_sqr());
            }
            // Ratios are only meaningful away from nodes of the polynomial.
            if base.norm() > 1e-6 * scale {
                report.max_dev_2pi = report.max_dev_2pi.max((shifted / base - expected).norm());
                report.max_dev_4pi = report.max_dev_4pi.max((twice / base - 1.0).norm());
            }
            report.samples += 1;
        }
        if hi > 0.0 {
            report.prob_spread = report.prob_spread.max((hi - lo) / hi);
        }
    }
    report.passed = report.max_dev_2pi <= DOUBLE_VALUED_TOL
        && report.max_dev_4pi <= DOUBLE_VALUED_TOL
        && report.prob_spread <= DOUBLE_VALUED_TOL;
    Ok(report)
}
