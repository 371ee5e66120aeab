//! Command-line front end for the `spinharm` engine.

pub mod angle;
pub mod args;
pub mod error;
pub mod golden;
pub mod verify;

mod eval;
mod plot;
mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use spinharm::symtrig::HalfInteger;

pub use args::{Cli, Command, Format, Suite};
pub use error::{CliError, Result};
pub use verify::VerificationSummary;

/// Default and maximum `lmax` unless `SPINHARM_CAP` says otherwise.
pub const DEFAULT_CAP: HalfInteger = HalfInteger::from_twice(25);
pub const CAP_ENV: &str = "SPINHARM_CAP";

pub const PHI_PERIOD_NOTE: &str =
    "norms integrate phi over 4pi for half-odd-integer m (double cover) and 2pi for integer m";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Context {
    pub cap: HalfInteger,
}

impl Context {
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV) {
            Ok(v) => {
                let cap: HalfInteger = v.parse().map_err(|_| CliError::Usage(format!("{CAP_ENV}={v} is not a half-integer")))?;
                if cap.is_negative() {
                    return Err(CliError::Usage(format!("{CAP_ENV}={v} is negative")));
                }
                Ok(Context { cap })
            }
            Err(_) => Ok(Context { cap: DEFAULT_CAP }),
        }
    }

    /// Resolves `--lmax` against the cap; the default is the cap itself.
    pub fn l_max(&self, requested: Option<HalfInteger>) -> Result<HalfInteger> {
        let l = requested.unwrap_or(self.cap);
        if l.is_negative() {
            return Err(CliError::Usage(format!("--lmax {l} is negative")));
        }
        if l.twice() > self.cap.twice() {
            return Err(CliError::Usage(format!("--lmax {l} exceeds the cap {} (set {CAP_ENV} to raise it)", self.cap)));
        }
        Ok(l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 1,
        }
    }
}

pub fn run(cli: Cli, ctx: &Context, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<Status> {
    match cli.command {
        Command::Table { lmax, format, out } => {
            table::run(ctx.l_max(lmax)?, format, out.as_deref(), stdout, stderr)?;
            Ok(Status::Success)
        }
        Command::Verify { suite, lmax, out, h, nodes, seed } => {
            let opts = verify::Options { suite, l_max: ctx.l_max(lmax)?, h, nodes, seed };
            let summary = verify::run(&opts)?;
            verify::emit(&summary, out.as_deref(), stdout)?;
            Ok(if summary.failures == 0 { Status::Success } else { Status::VerificationFailed })
        }
        Command::Eval { l, m, theta, phi, format } => {
            eval::run(l, m, theta, phi, format, stdout)?;
            Ok(Status::Success)
        }
        Command::Plotdata { l, m, n_theta, n_phi, out } => {
            plot::run(l, m, n_theta, n_phi, out.as_deref(), stdout, stderr)?;
            Ok(Status::Success)
        }
    }
}

/// Parses `args`, runs the command and returns the process exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return 2;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let result = Context::from_env().and_then(|ctx| run(cli, &ctx, stdout, stderr));
    match result {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

pub(crate) fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(path)
}

pub(crate) fn write_stdout(stdout: &mut dyn Write, contents: &str) -> Result<()> {
    stdout.write_all(contents.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

pub(crate) fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| CliError::io("<csv>", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Pretty JSON with a trailing newline.
pub(crate) fn to_json<T: serde::Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Shortest round-trip decimal, switching to exponent form for very small or large magnitudes.
pub fn fmt_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 {
        "0".to_string()
    } else if (1e-4..1e16).contains(&a) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

pub(crate) fn phi_period_label(m: HalfInteger) -> &'static str {
    if m.is_half_odd() {
        "4pi"
    } else {
        "2pi"
    }
}
