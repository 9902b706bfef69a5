//! `V2VCIR01` binary CIR files.
//!
//! Layout, all little-endian:
//!
//! | offset | size | field                       |
//! |-------:|-----:|-----------------------------|
//! |      0 |    8 | magic `V2VCIR01`            |
//! |      8 |    2 | version (u16)               |
//! |     10 |    8 | num_snapshots (u64)         |
//! |     18 |    4 | num_delay_bins (u32)        |
//! |     22 |    8 | snapshot_interval, s (f64)  |
//! |     30 |    8 | delay_bin, s (f64)          |
//! |     38 |    8 | carrier_frequency, Hz (f64) |
//! |     46 |    8 | bandwidth, Hz (f64)         |
//! |     54 |   22 | reserved, zero              |
//!
//! The 76-byte header is followed by `num_snapshots * num_delay_bins`
//! samples, snapshot-major, each as an `(re, im)` pair of f32.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use mmv2v_core::channel::{CirMatrix, SamplingGrid};
use mmv2v_core::Complex64;

use super::IoError;

pub const MAGIC: [u8; 8] = *b"V2VCIR01";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 76;
const SAMPLE_LEN: usize = 8;

/// Fixed-size header of a CIR file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirFileHeader {
    pub version: u16,
    pub num_snapshots: u64,
    pub num_delay_bins: u32,
    pub snapshot_interval: f64,
    pub delay_bin: f64,
    pub carrier_frequency: f64,
    pub bandwidth: f64,
}

impl CirFileHeader {
    pub fn for_grid(grid: &SamplingGrid) -> Result<Self, IoError> {
        let num_delay_bins = u32::try_from(grid.num_delay_bins())
            .map_err(|_| IoError::BadHeader("more than u32::MAX delay bins".into()))?;
        Ok(Self {
            version: VERSION,
            num_snapshots: grid.num_snapshots() as u64,
            num_delay_bins,
            snapshot_interval: grid.snapshot_interval(),
            delay_bin: grid.delay_bin(),
            carrier_frequency: grid.carrier_frequency(),
            bandwidth: grid.bandwidth(),
        })
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut b = [0u8; HEADER_LEN];
        b[0..8].copy_from_slice(&MAGIC);
        b[8..10].copy_from_slice(&self.version.to_le_bytes());
        b[10..18].copy_from_slice(&self.num_snapshots.to_le_bytes());
        b[18..22].copy_from_slice(&self.num_delay_bins.to_le_bytes());
        b[22..30].copy_from_slice(&self.snapshot_interval.to_le_bytes());
        b[30..38].copy_from_slice(&self.delay_bin.to_le_bytes());
        b[38..46].copy_from_slice(&self.carrier_frequency.to_le_bytes());
        b[46..54].copy_from_slice(&self.bandwidth.to_le_bytes());
        b
    }

    /// Parses and checks magic and version; reserved bytes are ignored.
    pub fn from_bytes(b: &[u8; HEADER_LEN]) -> Result<Self, IoError> {
        if b[0..8] != MAGIC {
            return Err(IoError::BadMagic {
                found: b[0..8].try_into().unwrap(),
            });
        }
        let u64_at = |i: usize| u64::from_le_bytes(b[i..i + 8].try_into().unwrap());
        let f64_at = |i: usize| f64::from_bits(u64_at(i));
        let version = u16::from_le_bytes([b[8], b[9]]);
        if version != VERSION {
            return Err(IoError::Version {
                found: version,
                expected: VERSION,
            });
        }
        Ok(Self {
            version,
            num_snapshots: u64_at(10),
            num_delay_bins: u32::from_le_bytes(b[18..22].try_into().unwrap()),
            snapshot_interval: f64_at(22),
            delay_bin: f64_at(30),
            carrier_frequency: f64_at(38),
            bandwidth: f64_at(46),
        })
    }

    pub fn grid(&self) -> Result<SamplingGrid, IoError> {
        if self.num_snapshots == 0 || self.num_delay_bins == 0 {
            return Err(IoError::BadHeader(format!(
                "empty dimensions {} x {}",
                self.num_snapshots, self.num_delay_bins
            )));
        }
        let n = usize::try_from(self.num_snapshots)
            .map_err(|_| IoError::BadHeader("snapshot count overflows usize".into()))?;
        SamplingGrid::new(
            self.snapshot_interval,
            self.delay_bin,
            n,
            self.num_delay_bins as usize,
            self.carrier_frequency,
            self.bandwidth,
        )
        .map_err(|e| IoError::BadHeader(e.to_string()))
    }

    /// Payload length in bytes.
    pub fn payload_len(&self) -> Option<u64> {
        self.num_snapshots
            .checked_mul(self.num_delay_bins as u64)?
            .checked_mul(SAMPLE_LEN as u64)
    }
}

/// Writes `h` as a `V2VCIR01` file, replacing any existing file.
pub fn write_cir(path: &Path, h: &CirMatrix) -> Result<(), IoError> {
    let header = CirFileHeader::for_grid(h.grid())?;
    let io = |e| IoError::io(path, e);
    let mut out = BufWriter::with_capacity(1 << 20, File::create(path).map_err(io)?);
    out.write_all(&header.to_bytes()).map_err(io)?;
    let mut buf = Vec::with_capacity(SAMPLE_LEN * 8192);
    for chunk in h.samples().chunks(8192) {
        buf.clear();
        for z in chunk {
            buf.extend_from_slice(&(z.re as f32).to_le_bytes());
            buf.extend_from_slice(&(z.im as f32).to_le_bytes());
        }
        out.write_all(&buf).map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Reads only the header of a CIR file.
pub fn read_cir_header(path: &Path) -> Result<CirFileHeader, IoError> {
    let mut file = File::open(path).map_err(|e| IoError::io(path, e))?;
    read_header(path, &mut file)
}

fn read_header(path: &Path, file: &mut File) -> Result<CirFileHeader, IoError> {
    let mut raw = [0u8; HEADER_LEN];
    let mut got = 0;
    while got < HEADER_LEN {
        match file.read(&mut raw[got..]).map_err(|e| IoError::io(path, e))? {
            0 => {
                return Err(IoError::Truncated {
                    what: "header",
                    expected: HEADER_LEN as u64,
                    actual: got as u64,
                })
            }
            n => got += n,
        }
    }
    CirFileHeader::from_bytes(&raw)
}

/// Reads and validates a `V2VCIR01` file.
pub fn read_cir(path: &Path) -> Result<CirMatrix, IoError> {
    let io = |e| IoError::io(path, e);
    let mut file = File::open(path).map_err(io)?;
    let header = read_header(path, &mut file)?;
    let grid = header.grid()?;
    let expected = header
        .payload_len()
        .ok_or_else(|| IoError::BadHeader("payload size overflows".into()))?;
    let actual = file.metadata().map_err(io)?.len().saturating_sub(HEADER_LEN as u64);
    if actual < expected {
        return Err(IoError::Truncated {
            what: "payload",
            expected,
            actual,
        });
    }
    if actual > expected {
        return Err(IoError::TrailingBytes { extra: actual - expected });
    }
    let mut payload = vec![0u8; expected as usize];
    file.read_exact(&mut payload).map_err(io)?;
    let f32_at = |b: &[u8]| f32::from_le_bytes(b.try_into().unwrap()) as f64;
    let samples: Vec<Complex64> = payload
        .chunks_exact(SAMPLE_LEN)
        .map(|s| Complex64::new(f32_at(&s[0..4]), f32_at(&s[4..8])))
        .collect();
    CirMatrix::new(grid, samples).map_err(|e| IoError::BadPayload(e.to_string()))
}
