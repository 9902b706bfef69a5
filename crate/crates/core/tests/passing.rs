use mmv2v_core::analysis::{align_los, analyze, AnalysisParams};
use mmv2v_core::synth::{kmh, path_geometry, simulate, ScenarioConfig};

/// Low carrier and snapshot rate: the same geometry on a small record.
fn small_scenario() -> ScenarioConfig {
    let mut c = ScenarioConfig::passing_cars(6e9);
    c.snapshot_interval = 1e-3;
    c.noise_enabled = false;
    c
}

#[test]
fn los_delay_traces_a_v_around_the_pass() {
    // the field speeds, sampled finely enough not to alias
    let mut c = ScenarioConfig::passing_cars(60e9);
    c.tx_speed = kmh(30.0);
    c.rx_speed = kmh(50.0);
    c.snapshot_interval = 1.0 / 16000.0;
    let times: Vec<f64> = (0..=400).map(|i| i as f64 * 0.01).collect();
    let trace: Vec<_> = times.iter().map(|&t| path_geometry(&c, None, t).unwrap()).collect();
    let min = (0..trace.len()).min_by(|&a, &b| trace[a].delay.total_cmp(&trace[b].delay)).unwrap();
    assert!((times[min] - c.passing_time).abs() < 1e-9);
    for w in trace.windows(2).take(min) {
        assert!(w[1].delay < w[0].delay && w[1].doppler < w[0].doppler);
    }
    for w in trace.windows(2).skip(min) {
        assert!(w[1].delay > w[0].delay && w[1].doppler < w[0].doppler);
    }
    // far from the pass the V arms are nearly straight: |d tau / dt| -> v / c
    let slope = (trace[1].delay - trace[0].delay) / 0.01;
    let limit = kmh(80.0) / mmv2v_core::SPEED_OF_LIGHT;
    assert!(slope < 0.0 && (slope.abs() - limit).abs() < 0.01 * limit);
}

#[test]
fn alignment_tracks_true_los_delay() {
    let c = small_scenario();
    let h = simulate(&c).unwrap();
    let a = align_los(&h, Some(-70.0)).unwrap();
    let bins = c.num_delay_bins as f64;
    for (n, shift) in a.shifts.iter().enumerate() {
        let t = n as f64 * c.snapshot_interval;
        let truth = path_geometry(&c, None, t).unwrap().delay * c.bandwidth;
        let shift = shift.expect("LOS is always above the threshold") as f64;
        let err = (shift - truth.rem_euclid(bins)).abs();
        assert!(err.min(bins - err) < 1.0, "snapshot {n}: shift {shift}, true {truth}");
    }
}

#[test]
fn spreads_bottom_out_near_the_pass() {
    let c = small_scenario();
    let r = analyze(&simulate(&c).unwrap(), &AnalysisParams::default()).unwrap();
    let ds = r.delay_spread.argmin_axis().unwrap();
    assert!((ds - c.passing_time).abs() <= 0.2, "delay spread minimum at {ds} s");
}
