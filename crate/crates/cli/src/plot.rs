use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use spinharm::harmonics::{make_harmonic, QuantumNumbers};
use spinharm::symtrig::{CompiledExpr, HalfInteger};

use crate::error::{CliError, Result};
use crate::{csv_string, fmt_float, write_file, write_stdout};

/// Rows of `theta, phi, Re Y, Im Y, |Y|^2` for the unnormalized harmonic.
///
/// `theta_i = pi (i + 1) / (n_theta + 1)` and `phi_j = j Phi / n_phi`, where
/// `Phi` is 4 pi for half-odd-integer `m` and 2 pi otherwise.
pub fn plot_rows(qn: QuantumNumbers, n_theta: usize, n_phi: usize) -> Result<Vec<[f64; 5]>> {
    let y = CompiledExpr::new(&make_harmonic(qn)?.expr);
    let period = f64::from(qn.phi_period_over_pi()) * PI;
    let mut rows = Vec::with_capacity(n_theta * n_phi);
    for i in 0..n_theta {
        let theta = PI * (i + 1) as f64 / (n_theta + 1) as f64;
        for j in 0..n_phi {
            let phi = period * j as f64 / n_phi as f64;
            let v = y.eval(theta, phi)?;
            rows.push([theta, phi, v.re, v.im, v.norm_sqr()]);
        }
    }
    Ok(rows)
}

pub fn run(
    l: HalfInteger,
    m: HalfInteger,
    n_theta: usize,
    n_phi: usize,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<()> {
    if n_theta == 0 || n_phi == 0 {
        return Err(CliError::Usage("--ntheta and --nphi must be positive".into()));
    }
    let qn = QuantumNumbers::new(l, m)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theta", "phi", "re", "im", "abs2"])?;
    for row in plot_rows(qn, n_theta, n_phi)? {
        w.write_record(row.iter().map(|&x| fmt_float(x)))?;
    }
    let text = csv_string(w)?;
    match out {
        Some(dir) => {
            let path = write_file(dir, &format!("plot_{}_{}.csv", l.twice(), m.twice()), &text)?;
            let _ = writeln!(stderr, "wrote {}", path.display());
            Ok(())
        }
        None => write_stdout(stdout, &text),
    }
}
