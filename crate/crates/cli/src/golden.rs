//! Reference ladder results for l <= 5/2.

use spinharm::operators::Direction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expected {
    Annihilated,
    Constant(i64),
    Cotangent { k: u32, scale: i64 },
}

impl Expected {
    pub fn label(self) -> String {
        match self {
            Expected::Annihilated => "annihilated".to_string(),
            Expected::Constant(c) => format!("proportional {c}"),
            Expected::Cotangent { k, scale } => format!("anomalous {scale}cot({k}θ)"),
        }
    }
}

pub struct GoldenRow {
    pub l2: i64,
    pub m2: i64,
    pub direction: Direction,
    pub expected: Expected,
}

const fn row(l2: i64, m2: i64, direction: Direction, expected: Expected) -> GoldenRow {
    GoldenRow { l2, m2, direction, expected }
}

use Direction::{Down, Up};
use Expected::{Annihilated, Constant, Cotangent};

pub const GOLDEN: [GoldenRow; 24] = [
    row(1, 1, Up, Annihilated),
    row(1, -1, Down, Annihilated),
    row(1, 1, Down, Cotangent { k: 1, scale: 1 }),
    row(1, -1, Up, Cotangent { k: 1, scale: 1 }),
    row(3, 3, Up, Annihilated),
    row(3, -3, Down, Annihilated),
    row(3, 3, Down, Constant(3)),
    row(3, -3, Up, Constant(3)),
    row(3, 1, Up, Constant(-1)),
    row(3, -1, Down, Constant(-1)),
    row(3, 1, Down, Cotangent { k: 2, scale: 2 }),
    row(3, -1, Up, Cotangent { k: 2, scale: 2 }),
    row(5, 5, Up, Annihilated),
    row(5, -5, Down, Annihilated),
    row(5, 5, Down, Constant(5)),
    row(5, -5, Up, Constant(5)),
    row(5, 3, Up, Constant(-1)),
    row(5, -3, Down, Constant(-1)),
    row(5, 3, Down, Constant(-1)),
    row(5, -3, Up, Constant(-1)),
    row(5, 1, Up, Constant(8)),
    row(5, -1, Down, Constant(8)),
    row(5, 1, Down, Cotangent { k: 3, scale: 3 }),
    row(5, -1, Up, Cotangent { k: 3, scale: 3 }),
];
