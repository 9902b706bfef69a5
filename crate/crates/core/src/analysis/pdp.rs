use alloc::vec::Vec;

use crate::channel::{power_to_db, CirMatrix, PdpMatrix};
use crate::{Complex64, Result};

/// Instantaneous PDP, `|h|^2` per entry.
pub fn pdp(h: &CirMatrix) -> PdpMatrix {
    let power = h.samples().iter().map(|z| z.norm_sqr()).collect();
    PdpMatrix::new_unchecked(*h.grid(), power)
}

/// `true` when `power` (mW) lies strictly below `threshold` (dBm).
#[inline]
pub(crate) fn below_threshold(power: f64, threshold: f64) -> bool {
    // power_to_db only fails for negative input, which |h|^2 never is
    power_to_db(power).map_or(true, |db| db < threshold)
}

/// Zeroes every PDP entry below `threshold` dBm; entries at or above it are kept.
pub fn threshold_noise(p: &PdpMatrix, threshold: f64) -> Result<PdpMatrix> {
    let power: Vec<f64> = p
        .power()
        .iter()
        .map(|&v| if below_threshold(v, threshold) { 0.0 } else { v })
        .collect();
    PdpMatrix::new(*p.grid(), power)
}

/// Same truncation applied to the complex CIR, so spectra see the truncated channel.
pub fn threshold_cir(h: &CirMatrix, threshold: f64) -> Result<CirMatrix> {
    let samples = h
        .samples()
        .iter()
        .map(|&z| {
            if below_threshold(z.norm_sqr(), threshold) {
                Complex64::new(0.0, 0.0)
            } else {
                z
            }
        })
        .collect();
    CirMatrix::new(*h.grid(), samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{db_to_power, SamplingGrid};
    use alloc::vec;

    fn grid(n: usize, m: usize) -> SamplingGrid {
        SamplingGrid::new(1e-3, 1e-9, n, m, 60e9, 1e9).unwrap()
    }

    #[test]
    fn squared_magnitude() {
        let h = CirMatrix::new(grid(1, 2), vec![Complex64::new(3.0, 4.0), Complex64::new(0.0, 0.0)]).unwrap();
        assert_eq!(pdp(&h).power(), [25.0, 0.0]);
        assert!(pdp(&CirMatrix::zeros(grid(3, 3))).power().iter().all(|&p| p == 0.0));
    }

    #[test]
    fn matches_elementwise_oracle() {
        let samples: Vec<_> = (0..64)
            .map(|i| Complex64::new((i as f64 * 0.77).sin() * 3.0, (i as f64 * 0.31).cos() - 0.5))
            .collect();
        let h = CirMatrix::new(grid(8, 8), samples.clone()).unwrap();
        let p = pdp(&h);
        for (z, &v) in samples.iter().zip(p.power()) {
            assert_eq!(v, z.re * z.re + z.im * z.im);
        }
    }

    #[test]
    fn threshold_boundary_is_inclusive() {
        let p = PdpMatrix::new(
            grid(1, 3),
            vec![db_to_power(-71.0), 1e-7, db_to_power(-20.0)],
        )
        .unwrap();
        let t = threshold_noise(&p, -70.0).unwrap();
        assert_eq!(t.power()[0], 0.0);
        assert_eq!(t.power()[1], 1e-7);
        assert_eq!(t.power()[2], p.power()[2]);

        let quiet = PdpMatrix::new(grid(2, 2), vec![db_to_power(-80.0); 4]).unwrap();
        assert!(threshold_noise(&quiet, -70.0).unwrap().power().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn cir_truncation_matches_pdp_truncation() {
        let samples: Vec<_> = (0..16)
            .map(|i| Complex64::new(1e-4 * (i as f64 * 0.9).sin(), 1e-4 * (i as f64 * 0.4).cos()))
            .collect();
        let h = CirMatrix::new(grid(4, 4), samples).unwrap();
        let a = pdp(&threshold_cir(&h, -82.0).unwrap());
        let b = threshold_noise(&pdp(&h), -82.0).unwrap();
        assert_eq!(a, b);
    }
}
