//! Angular-momentum operators on [`TrigExpr`] with `hbar = 1`.
//!
//! ```text
//! M_x  = -i (-sin(phi) d_theta - cot(theta) cos(phi) d_phi)
//! M_y  = -i ( cos(phi) d_theta - cot(theta) sin(phi) d_phi)
//! M_z  = -i d_phi
//! M^2  = -(d_theta^2 + cot(theta) d_theta + sin^-2(theta) d_phi^2)
//! M'+- = exp(+-i phi) (d_theta +- i cot(theta) d_phi)
//! ```

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonics::{make_harmonic, QuantumNumbers};
use crate::symtrig::{chebyshev_t, chebyshev_u_shifted, GaussianRational, HalfInteger, TrigExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OperatorKind {
    Mx,
    My,
    Mz,
    M2,
    MplusPrime,
    MminusPrime,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 6] = [
        OperatorKind::Mx,
        OperatorKind::My,
        OperatorKind::Mz,
        OperatorKind::M2,
        OperatorKind::MplusPrime,
        OperatorKind::MminusPrime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Mx => "Mx",
            OperatorKind::My => "My",
            OperatorKind::Mz => "Mz",
            OperatorKind::M2 => "M2",
            OperatorKind::MplusPrime => "M+'",
            OperatorKind::MminusPrime => "M-'",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn operator(self) -> OperatorKind {
        match self {
            Direction::Up => OperatorKind::MplusPrime,
            Direction::Down => OperatorKind::MminusPrime,
        }
    }

    pub fn step(self) -> HalfInteger {
        match self {
            Direction::Up => HalfInteger::ONE,
            Direction::Down => -HalfInteger::ONE,
        }
    }

    pub fn flipped(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
        })
    }
}

fn h(twice: i64) -> HalfInteger {
    HalfInteger::from_twice(twice)
}

fn g(num: i64, den: i64) -> GaussianRational {
    GaussianRational::ratio(num, den)
}

fn gi(num: i64, den: i64) -> GaussianRational {
    GaussianRational::imag(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// `cot(theta) * e`
fn times_cot(e: &TrigExpr) -> TrigExpr {
    e.mul_monomial(&GaussianRational::one(), h(-2), 1, HalfInteger::ZERO)
}

/// `c * exp(i s phi) * e` with `s = +-1`.
fn times_phase(e: &TrigExpr, c: &GaussianRational, sign: i64) -> TrigExpr {
    e.mul_monomial(c, HalfInteger::ZERO, 0, h(2 * sign))
}

/// `sin(phi) * e`, using `sin(phi) = (e^{i phi} - e^{-i phi}) / 2i`.
fn times_sin_phi(e: &TrigExpr) -> TrigExpr {
    &times_phase(e, &gi(-1, 2), 1) + &times_phase(e, &gi(1, 2), -1)
}

/// `cos(phi) * e`
fn times_cos_phi(e: &TrigExpr) -> TrigExpr {
    &times_phase(e, &g(1, 2), 1) + &times_phase(e, &g(1, 2), -1)
}

/// Applies one operator symbolically.
pub fn apply(kind: OperatorKind, e: &TrigExpr) -> TrigExpr {
    let minus_i = gi(-1, 1);
    match kind {
        OperatorKind::Mx => {
            let dt = e.d_dtheta();
            let dp = e.d_dphi();
            let inner = &times_sin_phi(&dt) + &times_cot(&times_cos_phi(&dp));
            // -i * (-(...)) = i * (...)
            inner.scale(&gi(1, 1))
        }
        OperatorKind::My => {
            let dt = e.d_dtheta();
            let dp = e.d_dphi();
            let inner = &times_cos_phi(&dt) - &times_cot(&times_sin_phi(&dp));
            inner.scale(&minus_i)
        }
        OperatorKind::Mz => e.d_dphi().scale(&minus_i),
        OperatorKind::M2 => {
            let dt = e.d_dtheta();
            let dtt = dt.d_dtheta();
            let dpp = e.d_dphi().d_dphi();
            let inv_sin2 = dpp.mul_monomial(&GaussianRational::one(), h(-4), 0, HalfInteger::ZERO);
            let sum = &(&dtt + &times_cot(&dt)) + &inv_sin2;
            sum.scale(&g(-1, 1))
        }
        OperatorKind::MplusPrime => ladder(e, 1),
        OperatorKind::MminusPrime => ladder(e, -1),
    }
}

fn ladder(e: &TrigExpr, sign: i64) -> TrigExpr {
    let inner = &e.d_dtheta() + &times_cot(&e.d_dphi()).scale(&gi(sign, 1));
    times_phase(&inner, &GaussianRational::one(), sign)
}

/// `M_x M_x e + M_y M_y e + M_z M_z e`.
pub fn m2_from_components(e: &TrigExpr) -> TrigExpr {
    let mut acc = TrigExpr::zero();
    for k in [OperatorKind::Mx, OperatorKind::My, OperatorKind::Mz] {
        acc = &acc + &apply(k, &apply(k, e));
    }
    acc
}

/// The unique `lambda` with `num == lambda * den`, if one exists.
///
/// `lambda` is read off the leading term of `den` and then confirmed by an
/// exact subtraction over the whole expression.
pub fn proportionality_constant(num: &TrigExpr, den: &TrigExpr) -> Option<GaussianRational> {
    let lead = den.leading_term()?;
    let top = num.coefficient(lead.sin_pow, lead.cos_pow, lead.phi_freq);
    let lambda = &top / &lead.coeff;
    (num - &den.scale(&lambda)).is_zero().then_some(lambda)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenCheck {
    pub eigenvalue: Option<GaussianRational>,
    /// `apply(kind, e)` when `e` is not an eigenfunction.
    pub residual: Option<TrigExpr>,
}

/// Tests whether `e` is an eigenfunction of `kind` and returns the exact eigenvalue.
pub fn eigen_check(e: &TrigExpr, kind: OperatorKind) -> Result<EigenCheck> {
    if e.is_zero() {
        return Err(Error::ZeroExpression);
    }
    let image = apply(kind, e);
    Ok(match proportionality_constant(&image, e) {
        Some(lambda) => EigenCheck { eigenvalue: Some(lambda), residual: None },
        None => EigenCheck { eigenvalue: None, residual: Some(image) },
    })
}

/// What a primed ladder operator does to a harmonic.
#[derive(Debug, Clone, PartialEq)]
pub enum LadderOutcome {
    Annihilated,
    /// `result = constant * Y_target`
    Proportional { constant: GaussianRational, target: QuantumNumbers },
    /// `result = scale * cot(k theta) * Y_target`
    Anomalous { k: u32, scale: BigRational, target: QuantumNumbers },
    Other { residual: TrigExpr },
}

impl LadderOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            LadderOutcome::Annihilated => "annihilated",
            LadderOutcome::Proportional { .. } => "proportional",
            LadderOutcome::Anomalous { .. } => "anomalous",
            LadderOutcome::Other { .. } => "other",
        }
    }

    pub fn target(&self) -> Option<QuantumNumbers> {
        match self {
            LadderOutcome::Proportional { target, .. } | LadderOutcome::Anomalous { target, .. } => Some(*target),
            _ => None,
        }
    }
}

/// Checks `result * sin(theta) * U_{k-1}(cos theta) == scale * T_k(cos theta) * y`,
/// the cotangent identity with its denominator cleared, and returns `scale`.
pub fn anomalous_scale(result: &TrigExpr, y: &TrigExpr, k: u32) -> Option<BigRational> {
    if k == 0 {
        return None;
    }
    let lhs = result.mul_monomial(&GaussianRational::one(), HalfInteger::ONE, 0, HalfInteger::ZERO);
    let lhs = &lhs * &chebyshev_u_shifted(k);
    let rhs = &chebyshev_t(k) * y;
    let scale = proportionality_constant(&lhs, &rhs)?;
    (scale.is_real() && !scale.is_zero()).then_some(scale.re)
}

/// Applies `M'+` (up) or `M'-` (down) to `Y_l^m` and classifies the result.
pub fn ladder_classify(qn: QuantumNumbers, direction: Direction) -> Result<LadderOutcome> {
    let y = make_harmonic(qn)?;
    let result = apply(direction.operator(), &y.expr);
    Ok(classify_result(qn, direction, result))
}

fn classify_result(qn: QuantumNumbers, direction: Direction, result: TrigExpr) -> LadderOutcome {
    if result.is_zero() {
        return LadderOutcome::Annihilated;
    }
    let Ok(target) = QuantumNumbers::new(qn.l(), qn.m() + direction.step()) else {
        return LadderOutcome::Other { residual: result };
    };
    let yt = make_harmonic(target).expect("validated target").expr;
    if let Some(constant) = proportionality_constant(&result, &yt) {
        return LadderOutcome::Proportional { constant, target };
    }
    if qn.l().is_half_odd() {
        let k = (qn.l() + HalfInteger::HALF).to_integer().expect("half-odd l") as u32;
        if let Some(scale) = anomalous_scale(&result, &yt, k) {
            return LadderOutcome::Anomalous { k, scale, target };
        }
    }
    LadderOutcome::Other { residual: result }
}

/// One row of a classification sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub qn: QuantumNumbers,
    pub direction: Direction,
    pub outcome: LadderOutcome,
}

/// Classifies both directions for every state with `l <= l_max`, in state order.
pub fn classify_all(l_max: HalfInteger) -> Vec<Classification> {
    let jobs: Vec<(QuantumNumbers, Direction)> = QuantumNumbers::all_up_to(l_max)
        .into_iter()
        .flat_map(|qn| [(qn, Direction::Up), (qn, Direction::Down)])
        .collect();
    jobs.into_par_iter()
        .map(|(qn, direction)| Classification {
            qn,
            direction,
            outcome: ladder_classify(qn, direction).expect("valid state"),
        })
        .collect()
}

/// Serialized classification report row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub l2: i64,
    pub m2: i64,
    pub dir: Direction,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub constant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scale: Option<String>,
    #[serde(rename = "residualNonzero")]
    pub residual_nonzero: bool,
}

impl From<&Classification> for ClassificationRecord {
    fn from(c: &Classification) -> Self {
        let (constant, k, scale) = match &c.outcome {
            LadderOutcome::Proportional { constant, .. } => (Some(constant.to_string()), None, None),
            LadderOutcome::Anomalous { k, scale, .. } => (None, Some(*k), Some(scale.to_string())),
            _ => (None, None, None),
        };
        ClassificationRecord {
            l2: c.qn.l().twice(),
            m2: c.qn.m().twice(),
            dir: c.direction,
            outcome: c.outcome.label().to_string(),
            constant,
            k,
            scale,
            residual_nonzero: matches!(c.outcome, LadderOutcome::Other { .. }),
        }
    }
}

/// Squared magnitude `(l -+ m)(l +- m + 1)` of the abstract-theory ladder
/// factor for normalized states. Reporting only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LadderMagnitude {
    pub squared: BigRational,
}

impl LadderMagnitude {
    pub fn value(&self) -> f64 {
        self.squared.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

impl fmt::Display for LadderMagnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "√{}", self.squared)
    }
}

pub fn ladder_constant_expected(l: HalfInteger, m: HalfInteger, direction: Direction) -> LadderMagnitude {
    let one = BigRational::one();
    let (l, m) = (l.to_rational(), m.to_rational());
    let squared = match direction {
        Direction::Up => (&l - &m) * (&l + &m + &one),
        Direction::Down => (&l + &m) * (&l - &m + &one),
    };
    LadderMagnitude { squared: if squared.is_negative() { BigRational::zero() } else { squared } }
}

/// `M'- M'- Y_l^{1/2}` for half-odd-integer `l`.
pub fn merzbacher_double_step(l: HalfInteger) -> Result<TrigExpr> {
    if !l.is_half_odd() || l.is_negative() {
        return Err(Error::NotHalfOdd(l));
    }
    let y = make_harmonic(QuantumNumbers::new(l, HalfInteger::HALF)?)?;
    let once = apply(OperatorKind::MminusPrime, &y.expr);
    Ok(apply(OperatorKind::MminusPrime, &once))
}

/// Exact residuals of the angular-momentum commutation relations on one function.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutatorReport {
    pub residuals: Vec<(&'static str, TrigExpr)>,
}

impl CommutatorReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }
}

fn commutator(a: OperatorKind, b: OperatorKind, f: &TrigExpr) -> TrigExpr {
    &apply(a, &apply(b, f)) - &apply(b, &apply(a, f))
}

pub fn commutator_check(f: &TrigExpr) -> CommutatorReport {
    use OperatorKind::*;
    let i = GaussianRational::i();
    let cyclic = [("[Mx,My]-iMz", Mx, My, Mz), ("[My,Mz]-iMx", My, Mz, Mx), ("[Mz,Mx]-iMy", Mz, Mx, My)];
    let mut residuals: Vec<(&'static str, TrigExpr)> = cyclic
        .iter()
        .map(|&(name, a, b, c)| (name, &commutator(a, b, f) - &apply(c, f).scale(&i)))
        .collect();
    residuals.push(("[M2,Mz]", commutator(M2, Mz, f)));
    CommutatorReport { residuals }
}
