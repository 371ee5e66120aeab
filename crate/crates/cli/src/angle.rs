use std::f64::consts::PI;

/// Parses radians given as a float or as a multiple of pi: `1.2`, `pi`, `-pi/2`, `2pi/3`, `0.5*pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    let Some(idx) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| format!("invalid angle '{s}'"));
    };
    let bad = || format!("invalid angle '{s}'");
    let head = t[..idx].trim().trim_end_matches('*').trim();
    let tail = t[idx + 2..].trim();
    let factor = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match tail.strip_prefix('/') {
        Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
        None if tail.is_empty() => 1.0,
        None => return Err(bad()),
    };
    if divisor == 0.0 {
        return Err(bad());
    }
    Ok(factor * PI / divisor)
}
