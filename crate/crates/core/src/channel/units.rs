use crate::{math, Error, Result};

/// Linear milliwatts to dBm. Zero power maps to `-inf`, which compares below
/// every finite threshold.
pub fn power_to_db(p: f64) -> Result<f64> {
    if p.is_nan() || p < 0.0 {
        return Err(Error::Domain(alloc::format!("power must be >= 0 mW, got {p}")));
    }
    if p == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(10.0 * math::log10(p))
}

/// dBm to linear milliwatts.
pub fn db_to_power(db: f64) -> f64 {
    math::powf(10.0, db / 10.0)
}
