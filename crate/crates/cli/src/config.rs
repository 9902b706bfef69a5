//! Scenario files: one `key = value` per line, SI units, `#` starts a comment.
//!
//! `carrier_frequency` is required; every other key defaults to the
//! desk-scale passing preset. Scatterers come from a generated roadside field
//! (`scatterer_field = <count>, <seed>` or `none`) followed by explicit groups:
//!
//! ```text
//! scatterer.0.position = 4.0, -3.5, 0.8
//! scatterer.0.reflection_loss = 9
//! scatterer.0.active_interval = 1.0, 3.0   # optional
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use mmv2v_core::synth::{roadside_scatterers, AntennaGainModel, DelayKernel, ScenarioConfig, Scatterer};

/// Seed of the preset roadside field.
pub const DEFAULT_FIELD_SEED: u64 = 0x5eed;
pub const DEFAULT_FIELD_COUNT: usize = 40;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { key: String, line: usize },
    #[error("line {line}: key `{key}` already set on line {first}")]
    Duplicate { key: String, line: usize, first: usize },
    #[error("line {line}: bad value for `{key}`: {reason}")]
    BadValue { key: String, line: usize, reason: String },
    #[error("missing required key `{key}`")]
    Missing { key: String },
    #[error("invalid scenario: {0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

const SCALAR_KEYS: &[&str] = &[
    "tx_speed",
    "rx_speed",
    "lane_offset",
    "antenna_height",
    "passing_time",
    "duration",
    "carrier_frequency",
    "snapshot_interval",
    "bandwidth",
    "num_delay_bins",
    "los_power_at_1m",
    "path_loss_exponent",
    "noise_floor",
    "noise_enabled",
    "antenna_gain",
    "delay_kernel",
    "rng_seed",
    "scatterer_field",
];

const SCATTERER_KEYS: &[&str] = &["position", "reflection_loss", "active_interval"];

struct Entry {
    value: String,
    line: usize,
}

fn bad(key: &str, line: usize, reason: impl Into<String>) -> ConfigError {
    ConfigError::BadValue {
        key: key.to_string(),
        line,
        reason: reason.into(),
    }
}

fn number(key: &str, e: &Entry) -> Result<f64, ConfigError> {
    let v: f64 = e.value.parse().map_err(|_| bad(key, e.line, format!("`{}` is not a number", e.value)))?;
    if !v.is_finite() {
        return Err(bad(key, e.line, "must be finite"));
    }
    Ok(v)
}

fn numbers(key: &str, e: &Entry, count: usize) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<&str> = e.value.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(bad(key, e.line, format!("expected {count} comma-separated numbers")));
    }
    parts
        .iter()
        .map(|p| {
            let field = Entry {
                value: p.to_string(),
                line: e.line,
            };
            number(key, &field)
        })
        .collect()
}

fn integer<T: std::str::FromStr>(key: &str, e: &Entry) -> Result<T, ConfigError> {
    e.value
        .parse()
        .map_err(|_| bad(key, e.line, format!("`{}` is not a non-negative integer", e.value)))
}

fn parse_bool(key: &str, e: &Entry) -> Result<bool, ConfigError> {
    match e.value.as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        other => Err(bad(key, e.line, format!("`{other}` is not true/false"))),
    }
}

fn parse_antenna(key: &str, e: &Entry) -> Result<AntennaGainModel, ConfigError> {
    let parts: Vec<&str> = e.value.split(',').map(str::trim).collect();
    match parts.as_slice() {
        ["isotropic"] => Ok(AntennaGainModel::Isotropic),
        ["wide_130"] => Ok(AntennaGainModel::WIDE_130),
        ["narrow_30"] => Ok(AntennaGainModel::NARROW_30),
        ["beam", rest @ ..] if rest.len() == 2 => {
            let field = Entry {
                value: rest.join(","),
                line: e.line,
            };
            let v = numbers(key, &field, 2)?;
            Ok(AntennaGainModel::Beam {
                beamwidth_deg: v[0],
                floor_db: v[1],
            })
        }
        _ => Err(bad(
            key,
            e.line,
            "expected isotropic, wide_130, narrow_30 or `beam, <beamwidth_deg>, <floor_db>`",
        )),
    }
}

/// Parses a scenario file body.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let mut scalars: BTreeMap<String, Entry> = BTreeMap::new();
    let mut groups: BTreeMap<usize, BTreeMap<String, Entry>> = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let key = key.trim();
        let entry = Entry {
            value: value.trim().to_string(),
            line,
        };
        let slot = if let Some(rest) = key.strip_prefix("scatterer.") {
            let (idx, field) = rest.split_once('.').ok_or_else(|| ConfigError::UnknownKey {
                key: key.to_string(),
                line,
            })?;
            let idx: usize = idx.parse().map_err(|_| ConfigError::UnknownKey {
                key: key.to_string(),
                line,
            })?;
            if !SCATTERER_KEYS.contains(&field) {
                return Err(ConfigError::UnknownKey {
                    key: key.to_string(),
                    line,
                });
            }
            (groups.entry(idx).or_default(), field.to_string())
        } else {
            if !SCALAR_KEYS.contains(&key) {
                return Err(ConfigError::UnknownKey {
                    key: key.to_string(),
                    line,
                });
            }
            (&mut scalars, key.to_string())
        };
        let (map, name) = slot;
        if let Some(prev) = map.get(&name) {
            return Err(ConfigError::Duplicate {
                key: key.to_string(),
                line,
                first: prev.line,
            });
        }
        map.insert(name, entry);
    }

    let fc_entry = scalars.get("carrier_frequency").ok_or_else(|| ConfigError::Missing {
        key: "carrier_frequency".into(),
    })?;
    let mut cfg = ScenarioConfig::passing_cars(number("carrier_frequency", fc_entry)?);

    for (key, e) in &scalars {
        let k = key.as_str();
        match k {
            "tx_speed" => cfg.tx_speed = number(k, e)?,
            "rx_speed" => cfg.rx_speed = number(k, e)?,
            "lane_offset" => cfg.lane_offset = number(k, e)?,
            "antenna_height" => cfg.antenna_height = number(k, e)?,
            "passing_time" => cfg.passing_time = number(k, e)?,
            "duration" => cfg.duration = number(k, e)?,
            "carrier_frequency" => {}
            "snapshot_interval" => cfg.snapshot_interval = number(k, e)?,
            "bandwidth" => cfg.bandwidth = number(k, e)?,
            "num_delay_bins" => cfg.num_delay_bins = integer(k, e)?,
            "los_power_at_1m" => cfg.los_power_at_1m = number(k, e)?,
            "path_loss_exponent" => cfg.path_loss_exponent = number(k, e)?,
            "noise_floor" => cfg.noise_floor = number(k, e)?,
            "noise_enabled" => cfg.noise_enabled = parse_bool(k, e)?,
            "antenna_gain" => cfg.antenna_gain = parse_antenna(k, e)?,
            "delay_kernel" => {
                cfg.delay_kernel = match e.value.as_str() {
                    "dirichlet" => DelayKernel::Dirichlet,
                    "hann" => DelayKernel::Hann,
                    other => return Err(bad(k, e.line, format!("`{other}` is not dirichlet/hann"))),
                }
            }
            "rng_seed" => cfg.rng_seed = integer(k, e)?,
            "scatterer_field" => {
                cfg.scatterers = if e.value == "none" {
                    Vec::new()
                } else {
                    let parts: Vec<&str> = e.value.split(',').map(str::trim).collect();
                    let [count, seed] = parts.as_slice() else {
                        return Err(bad(k, e.line, "expected `<count>, <seed>` or `none`"));
                    };
                    let field = |v: &str| Entry {
                        value: v.to_string(),
                        line: e.line,
                    };
                    roadside_scatterers(integer(k, &field(count))?, integer(k, &field(seed))?)
                }
            }
            _ => unreachable!("key list checked above"),
        }
    }

    for (expected, (idx, group)) in groups.iter().enumerate() {
        let name = |f: &str| format!("scatterer.{idx}.{f}");
        let first_line = group.values().map(|e| e.line).min().unwrap_or(0);
        if *idx != expected {
            return Err(bad(
                &name("position"),
                first_line,
                format!("scatterer indices must be contiguous from 0; expected {expected}"),
            ));
        }
        let position = group.get("position").ok_or_else(|| ConfigError::Missing { key: name("position") })?;
        let loss = group
            .get("reflection_loss")
            .ok_or_else(|| ConfigError::Missing { key: name("reflection_loss") })?;
        let p = numbers(&name("position"), position, 3)?;
        let mut s = Scatterer::new([p[0], p[1], p[2]], number(&name("reflection_loss"), loss)?);
        if let Some(e) = group.get("active_interval") {
            let w = numbers(&name("active_interval"), e, 2)?;
            s.active_interval = Some((w[0], w[1]));
        }
        cfg.scatterers.push(s);
    }

    cfg.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
    Ok(cfg)
}

/// Reads and parses a scenario file.
pub fn load_config(path: &Path) -> Result<ScenarioConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_config(&text)
}

/// Renders `cfg` so that [`parse_config`] reproduces it exactly. Scatterers are
/// written out individually.
pub fn write_config(cfg: &ScenarioConfig) -> String {
    let mut s = String::new();
    let mut kv = |k: &str, v: String| writeln!(s, "{k} = {v}").unwrap();
    kv("carrier_frequency", format!("{:?}", cfg.carrier_frequency));
    kv("tx_speed", format!("{:?}", cfg.tx_speed));
    kv("rx_speed", format!("{:?}", cfg.rx_speed));
    kv("lane_offset", format!("{:?}", cfg.lane_offset));
    kv("antenna_height", format!("{:?}", cfg.antenna_height));
    kv("passing_time", format!("{:?}", cfg.passing_time));
    kv("duration", format!("{:?}", cfg.duration));
    kv("snapshot_interval", format!("{:?}", cfg.snapshot_interval));
    kv("bandwidth", format!("{:?}", cfg.bandwidth));
    kv("num_delay_bins", cfg.num_delay_bins.to_string());
    kv("los_power_at_1m", format!("{:?}", cfg.los_power_at_1m));
    kv("path_loss_exponent", format!("{:?}", cfg.path_loss_exponent));
    kv("noise_floor", format!("{:?}", cfg.noise_floor));
    kv("noise_enabled", cfg.noise_enabled.to_string());
    kv(
        "antenna_gain",
        match cfg.antenna_gain {
            AntennaGainModel::Isotropic => "isotropic".to_string(),
            AntennaGainModel::Beam {
                beamwidth_deg,
                floor_db,
            } => format!("beam, {beamwidth_deg:?}, {floor_db:?}"),
        },
    );
    kv(
        "delay_kernel",
        match cfg.delay_kernel {
            DelayKernel::Dirichlet => "dirichlet",
            DelayKernel::Hann => "hann",
        }
        .to_string(),
    );
    kv("rng_seed", cfg.rng_seed.to_string());
    kv("scatterer_field", "none".to_string());
    for (i, sc) in cfg.scatterers.iter().enumerate() {
        let [x, y, z] = sc.position;
        kv(&format!("scatterer.{i}.position"), format!("{x:?}, {y:?}, {z:?}"));
        kv(&format!("scatterer.{i}.reflection_loss"), format!("{:?}", sc.reflection_loss));
        if let Some((a, b)) = sc.active_interval {
            kv(&format!("scatterer.{i}.active_interval"), format!("{a:?}, {b:?}"));
        }
    }
    s
}
