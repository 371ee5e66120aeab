use thiserror::Error;

use crate::symtrig::HalfInteger;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("negative cosine power {0} is not representable")]
    NegativeCosPower(i64),

    #[error("invalid quantum numbers l={l}, m={m}")]
    InvalidQuantumNumbers { l: HalfInteger, m: HalfInteger },

    #[error("polynomial order l-|m| = {l} - {abs_m} is not a nonnegative integer")]
    InvalidOrder { l: HalfInteger, abs_m: HalfInteger },

    #[error("theta = {0} lies outside the open interval (0, pi)")]
    ThetaOutOfDomain(f64),

    #[error("theta = {theta} is within 2h of a pole (h = {h})")]
    PoleProximity { theta: f64, h: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("{nodes} quadrature nodes is below the required {required}")]
    InsufficientNodes { nodes: usize, required: usize },

    #[error("expression is identically zero")]
    ZeroExpression,

    #[error("{0} is not a half-odd-integer")]
    NotHalfOdd(HalfInteger),

    #[error("cannot parse {0:?} as a multiple of 1/2")]
    ParseHalfInteger(String),

    #[error("cannot parse {0:?} as a rational")]
    ParseRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
