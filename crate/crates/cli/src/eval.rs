use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;
use spinharm::harmonics::{make_harmonic, normalization_constant, QuantumNumbers};
use spinharm::symtrig::{eval_expr, HalfInteger};

use crate::args::Format;
use crate::error::{CliError, Result};
use crate::{fmt_float, to_json, write_stdout};

/// `a+bi` with `-0` printed as `0`.
pub(crate) fn format_complex(z: Complex64) -> String {
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", fmt_float(z.re), fmt_float(z.im.abs()))
}

#[derive(Serialize)]
struct Parts {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct EvalRecord {
    l2: i64,
    m2: i64,
    theta: f64,
    phi: f64,
    raw: Parts,
    normalized: Parts,
}

pub fn run(l: HalfInteger, m: HalfInteger, theta: f64, phi: f64, format: Format, stdout: &mut dyn Write) -> Result<()> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(CliError::Usage(format!("theta = {theta} must lie strictly between 0 and pi")));
    }
    if !phi.is_finite() {
        return Err(CliError::Usage(format!("phi = {phi} is not finite")));
    }
    let qn = QuantumNumbers::new(l, m)?;
    let raw = eval_expr(&make_harmonic(qn)?.expr, theta, phi)?;
    let normalized = raw * normalization_constant(qn)?;
    let text = match format {
        Format::Csv => format!(
            "l,m,theta,phi,raw,normalized\n{l},{m},{},{},{},{}\n",
            fmt_float(theta),
            fmt_float(phi),
            format_complex(raw),
            format_complex(normalized)
        ),
        Format::Json => to_json(&EvalRecord {
            l2: l.twice(),
            m2: m.twice(),
            theta,
            phi,
            raw: Parts { re: raw.re, im: raw.im },
            normalized: Parts { re: normalized.re, im: normalized.im },
        })?,
    };
    write_stdout(stdout, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_format() {
        assert_eq!(format_complex(Complex64::new(1.0, 0.0)), "1+0i");
        assert_eq!(format_complex(Complex64::new(-0.0, -0.0)), "0+0i");
        assert_eq!(format_complex(Complex64::new(0.5, -2.0)), "0.5-2i");
        assert_eq!(format_complex(Complex64::new(-4.1e-16, 0.0)), "-4.1e-16+0i");
    }
}
