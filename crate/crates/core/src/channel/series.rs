use alloc::string::String;
use alloc::vec::Vec;

use crate::{math, Error, Result};

/// What a series is indexed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisKind {
    /// Observation time, seconds.
    Time,
    /// Propagation delay, seconds.
    Delay,
}

/// Physical quantity held in a series; decides the export unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Delay dispersion in seconds (exported as ns).
    DelaySpread,
    /// Doppler dispersion in Hz (exported as kHz).
    DopplerSpread,
    /// Time span in seconds.
    Duration,
    Dimensionless,
}

/// A scalar metric over time or delay, with population mean and std.
///
/// Points that an operation had to drop (zero-power rows, unalignable
/// snapshots) are not stored; their original indices are listed in
/// [`MetricSeries::excluded`].
#[derive(Debug, Clone, PartialEq)]
pub struct MetricSeries {
    name: String,
    axis_kind: AxisKind,
    quantity: Quantity,
    axis: Vec<f64>,
    values: Vec<f64>,
    mean: f64,
    std: f64,
    excluded: Vec<usize>,
}

impl MetricSeries {
    pub fn new(
        name: impl Into<String>,
        axis_kind: AxisKind,
        quantity: Quantity,
        axis: Vec<f64>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if axis.len() != values.len() {
            return Err(Error::invalid(
                "metric series",
                alloc::format!("axis has {} points, values {}", axis.len(), values.len()),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("metric series", "values must be finite"));
        }
        if matches!(quantity, Quantity::DelaySpread | Quantity::DopplerSpread)
            && values.iter().any(|v| *v < 0.0)
        {
            return Err(Error::invalid("metric series", "spreads must be >= 0"));
        }
        let (mean, std) = mean_std(&values);
        Ok(Self {
            name: name.into(),
            axis_kind,
            quantity,
            axis,
            values,
            mean,
            std,
            excluded: Vec::new(),
        })
    }

    pub fn with_excluded(mut self, excluded: Vec<usize>) -> Self {
        self.excluded = excluded;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn axis_kind(&self) -> AxisKind {
        self.axis_kind
    }

    pub fn quantity(&self) -> Quantity {
        self.quantity
    }

    pub fn axis(&self) -> &[f64] {
        &self.axis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Mean over the stored values (NaN for an empty series).
    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Population standard deviation (NaN for an empty series).
    pub fn std(&self) -> f64 {
        self.std
    }

    pub fn excluded(&self) -> &[usize] {
        &self.excluded
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Axis position of the smallest value.
    pub fn argmin_axis(&self) -> Option<f64> {
        let (i, _) = self
            .values
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))?;
        Some(self.axis[i])
    }
}

/// Mean and population standard deviation, summed left to right.
pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, math::sqrt(var))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn population_statistics() {
        let s = MetricSeries::new(
            "x",
            AxisKind::Time,
            Quantity::Dimensionless,
            alloc::vec![0.0, 1.0, 2.0, 3.0],
            alloc::vec![2.0, 4.0, 4.0, 6.0],
        )
        .unwrap();
        assert_eq!(s.mean(), 4.0);
        // population variance 2
        assert!((s.std() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.argmin_axis(), Some(0.0));
    }

    #[test]
    fn rejects_mismatched_or_negative_spreads() {
        assert!(MetricSeries::new("x", AxisKind::Time, Quantity::Dimensionless, alloc::vec![0.0], alloc::vec![]).is_err());
        assert!(MetricSeries::new("x", AxisKind::Time, Quantity::DelaySpread, alloc::vec![0.0], alloc::vec![-1.0]).is_err());
        assert!(MetricSeries::new("x", AxisKind::Time, Quantity::Dimensionless, alloc::vec![0.0], alloc::vec![-1.0]).is_ok());
    }
}
