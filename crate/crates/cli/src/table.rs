use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;
use spinharm::harmonics::{HarmonicRecord, QuantumNumbers};
use spinharm::symtrig::HalfInteger;

use crate::args::Format;
use crate::error::Result;
use crate::{csv_string, phi_period_label, to_json, write_file, write_stdout, PHI_PERIOD_NOTE};

#[derive(Debug, Serialize)]
struct TableRecord {
    #[serde(flatten)]
    record: HarmonicRecord,
    #[serde(rename = "phiPeriod")]
    phi_period: &'static str,
}

fn records(l_max: HalfInteger) -> Result<Vec<TableRecord>> {
    QuantumNumbers::all_up_to(l_max)
        .into_par_iter()
        .map(|qn| {
            Ok(TableRecord { record: HarmonicRecord::build(qn)?, phi_period: phi_period_label(qn.m()) })
        })
        .collect()
}

fn to_csv(rows: &[TableRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["l", "m", "l2", "m2", "phiPeriod", "poly", "expr", "normSqRat", "normSqPi", "normSqPi2", "normConst"])?;
    for row in rows {
        let r = &row.record;
        w.write_record([
            HalfInteger::from_twice(r.l2).to_string(),
            HalfInteger::from_twice(r.m2).to_string(),
            r.l2.to_string(),
            r.m2.to_string(),
            row.phi_period.to_string(),
            r.poly.join(" "),
            serde_json::to_string(&r.expr_json)?,
            r.norm_sq.rat.clone(),
            r.norm_sq.pi.clone(),
            r.norm_sq.pi2.clone(),
            r.norm_const.to_string(),
        ])?;
    }
    csv_string(w)
}

pub fn run(l_max: HalfInteger, format: Format, out: Option<&Path>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let rows = records(l_max)?;
    let (text, name) = match format {
        Format::Json => (to_json(&rows)?, "harmonics.json"),
        Format::Csv => (to_csv(&rows)?, "harmonics.csv"),
    };
    let _ = writeln!(stderr, "note: {PHI_PERIOD_NOTE}");
    match out {
        Some(dir) => {
            let path = write_file(dir, name, &text)?;
            let _ = writeln!(stderr, "wrote {} ({} records)", path.display(), rows.len());
            Ok(())
        }
        None => write_stdout(stdout, &text),
    }
}
