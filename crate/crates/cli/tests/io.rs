use std::fs;

use mmv2v::io::{export_metrics, read_cir, read_table, write_cir, IoError, HEADER_LEN};
use mmv2v_core::channel::{AxisKind, CirMatrix, MetricSeries, Quantity, SamplingGrid};
use mmv2v_core::Complex64;
use proptest::prelude::*;

fn grid(n: usize, m: usize) -> SamplingGrid {
    SamplingGrid::from_bandwidth(125e-6, n, m, 60e9, 2.048e9).unwrap()
}

fn matrix(n: usize, m: usize, values: &[(f64, f64)]) -> CirMatrix {
    let s = (0..n * m).map(|i| {
        let (re, im) = values[i % values.len()];
        Complex64::new(re, im)
    });
    CirMatrix::new(grid(n, m), s.collect()).unwrap()
}

#[test]
fn two_by_three_file_is_124_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.cir");
    write_cir(&path, &matrix(2, 3, &[(1.0, -2.0)])).unwrap();
    assert_eq!(fs::metadata(&path).unwrap().len(), 124);
    assert_eq!(HEADER_LEN + 2 * 3 * 8, 124);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn round_trip_is_float32_exact(
        n in 1usize..20,
        m in 1usize..20,
        values in prop::collection::vec((-1e3f64..1e3, -1e-6f64..1e-6), 1..50),
    ) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.cir");
        let h = matrix(n, m, &values);
        write_cir(&path, &h).unwrap();
        let back = read_cir(&path).unwrap();
        prop_assert_eq!(back.grid(), h.grid());
        for (a, b) in h.samples().iter().zip(back.samples()) {
            prop_assert_eq!(b.re, a.re as f32 as f64);
            prop_assert_eq!(b.im, a.im as f32 as f64);
        }
    }
}

#[test]
fn bad_magic_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.cir");
    write_cir(&path, &matrix(2, 3, &[(1.0, 0.0)])).unwrap();
    let mut bytes = fs::read(&path).unwrap();
    bytes[..8].copy_from_slice(b"XXXXXXXX");
    fs::write(&path, bytes).unwrap();
    assert!(matches!(read_cir(&path), Err(IoError::BadMagic { found }) if &found == b"XXXXXXXX"));
}

#[test]
fn short_payload_names_expected_and_actual() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.cir");
    write_cir(&path, &matrix(2, 3, &[(1.0, 0.0)])).unwrap();
    let bytes = fs::read(&path).unwrap();
    fs::write(&path, &bytes[..bytes.len() - 8]).unwrap();
    let err = read_cir(&path).unwrap_err();
    assert!(matches!(err, IoError::Truncated { expected: 48, actual: 40, .. }), "{err}");
    assert!(err.to_string().contains("48") && err.to_string().contains("40"));

    fs::write(&path, &bytes[..30]).unwrap();
    assert!(matches!(read_cir(&path), Err(IoError::Truncated { what: "header", .. })));

    let mut long = bytes.clone();
    long.push(0);
    fs::write(&path, long).unwrap();
    assert!(matches!(read_cir(&path), Err(IoError::TrailingBytes { extra: 1 })));
}

#[test]
fn missing_file_is_an_os_error() {
    let err = read_cir(std::path::Path::new("/nonexistent/h.cir")).unwrap_err();
    assert!(matches!(err, IoError::Os { .. }));
}

fn series(name: &str, kind: AxisKind, q: Quantity, axis: &[f64], values: &[f64]) -> MetricSeries {
    MetricSeries::new(name, kind, q, axis.to_vec(), values.to_vec()).unwrap()
}

#[test]
fn csv_has_header_rows_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    let s = series("sigma", AxisKind::Time, Quantity::DelaySpread, &[0.0, 0.1, 0.2], &[1e-8, 2e-8, 3e-8]);
    export_metrics(&[&s], &path).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 3 + 2);
    assert_eq!(lines[0], "time_s,sigma_ns");
    assert!(lines[4].starts_with("# mean") && lines[5].starts_with("# std"));
    let t = read_table(&path).unwrap();
    // seconds scaled to ns in f64, written at round-trip precision
    assert_eq!(t.column("sigma_ns").unwrap(), [1e-8 * 1e9, 2e-8 * 1e9, 3e-8 * 1e9]);
}

#[test]
fn doppler_goes_out_in_khz_over_delay_ns() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m1.csv");
    let s = series("m1", AxisKind::Delay, Quantity::DopplerSpread, &[0.0, 5e-10], &[1830.0, 2050.0]);
    export_metrics(&[&s], &path).unwrap();
    let t = read_table(&path).unwrap();
    assert_eq!(t.columns, ["delay_ns", "m1_khz"]);
    assert_eq!(t.column("delay_ns").unwrap(), [0.0, 0.5]);
    assert_eq!(t.column("m1_khz").unwrap(), [1.83, 2.05]);
}

proptest! {
    #[test]
    fn csv_values_parse_back(values in prop::collection::vec(0.0f64..1e6, 1..40)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("v.csv");
        let axis: Vec<f64> = (0..values.len()).map(|i| i as f64 * 0.125).collect();
        let s = series("r", AxisKind::Time, Quantity::Dimensionless, &axis, &values);
        export_metrics(&[&s], &path).unwrap();
        let t = read_table(&path).unwrap();
        let back = t.column("r").unwrap();
        for (a, b) in values.iter().zip(&back) {
            // bit-exact, which implies agreement at 9 significant digits
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn series_on_different_axes_are_refused() {
    let dir = tempfile::tempdir().unwrap();
    let a = series("a", AxisKind::Time, Quantity::Dimensionless, &[0.0, 1.0], &[1.0, 2.0]);
    let b = series("b", AxisKind::Time, Quantity::Dimensionless, &[0.0, 2.0], &[1.0, 2.0]);
    assert!(matches!(export_metrics(&[&a, &b], &dir.path().join("x.csv")), Err(IoError::Export(_))));
    assert!(matches!(export_metrics(&[], &dir.path().join("x.csv")), Err(IoError::Export(_))));
}
