//! Forward discrete Fourier transform for arbitrary lengths.
//!
//! Power-of-two sizes use an iterative radix-2 kernel; every other size goes
//! through Bluestein's chirp-z reformulation on a power-of-two buffer. The
//! transform is unnormalized: `X[k] = sum_n x[n] e^{-j 2 pi k n / N}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::{math, Complex64};

/// Precomputed plan for one transform length.
#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    kind: Kind,
}

#[derive(Debug, Clone)]
enum Kind {
    Trivial,
    Radix2(Radix2),
    Bluestein(Bluestein),
}

impl FftPlan {
    pub fn new(len: usize) -> Self {
        let kind = if len <= 1 {
            Kind::Trivial
        } else if len.is_power_of_two() {
            Kind::Radix2(Radix2::new(len))
        } else {
            Kind::Bluestein(Bluestein::new(len))
        };
        Self { len, kind }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In-place forward transform; `buf.len()` must equal the plan length.
    pub fn forward(&self, buf: &mut [Complex64]) {
        assert_eq!(buf.len(), self.len, "buffer length does not match FFT plan");
        match &self.kind {
            Kind::Trivial => {}
            Kind::Radix2(r) => r.forward(buf),
            Kind::Bluestein(b) => b.forward(buf),
        }
    }
}

#[derive(Debug, Clone)]
struct Radix2 {
    twiddles: Vec<Complex64>,
    bit_reverse: Vec<u32>,
}

impl Radix2 {
    fn new(n: usize) -> Self {
        let twiddles = (0..n / 2)
            .map(|k| math::cis(-2.0 * core::f64::consts::PI * k as f64 / n as f64))
            .collect();
        let bits = n.trailing_zeros();
        let bit_reverse = (0..n as u32)
            .map(|i| i.reverse_bits() >> (32 - bits))
            .collect();
        Self {
            twiddles,
            bit_reverse,
        }
    }

    fn forward(&self, a: &mut [Complex64]) {
        let n = a.len();
        for (i, &j) in self.bit_reverse.iter().enumerate() {
            let j = j as usize;
            if i < j {
                a.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let half = len / 2;
            let stride = n / len;
            for block in a.chunks_exact_mut(len) {
                let (lo, hi) = block.split_at_mut(half);
                for (k, (u, v)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let t = *v * self.twiddles[k * stride];
                    *v = *u - t;
                    *u += t;
                }
            }
            len <<= 1;
        }
    }

    /// Unnormalized inverse via conjugation.
    fn inverse(&self, a: &mut [Complex64]) {
        a.iter_mut().for_each(|z| *z = z.conj());
        self.forward(a);
        a.iter_mut().for_each(|z| *z = z.conj());
    }
}

#[derive(Debug, Clone)]
struct Bluestein {
    inner: Radix2,
    /// `e^{-j pi k^2 / n}`
    chirp: Vec<Complex64>,
    /// Transform of the conjugate chirp filter, pre-scaled by `1/m`.
    filter: Vec<Complex64>,
}

impl Bluestein {
    fn new(n: usize) -> Self {
        let m = (2 * n - 1).next_power_of_two();
        let inner = Radix2::new(m);
        // k^2 mod 2n keeps the chirp argument small and exact for large k.
        let two_n = 2 * n as u64;
        let chirp: Vec<Complex64> = (0..n as u64)
            .map(|k| {
                let k2 = (k * k) % two_n;
                math::cis(-core::f64::consts::PI * k2 as f64 / n as f64)
            })
            .collect();
        let mut filter = vec![Complex64::new(0.0, 0.0); m];
        filter[0] = chirp[0].conj();
        for k in 1..n {
            filter[k] = chirp[k].conj();
            filter[m - k] = chirp[k].conj();
        }
        inner.forward(&mut filter);
        let scale = 1.0 / m as f64;
        filter.iter_mut().for_each(|z| *z *= scale);
        Self {
            inner,
            chirp,
            filter,
        }
    }

    fn forward(&self, x: &mut [Complex64]) {
        let m = self.filter.len();
        let mut work = vec![Complex64::new(0.0, 0.0); m];
        for ((w, &xi), &c) in work.iter_mut().zip(x.iter()).zip(&self.chirp) {
            *w = xi * c;
        }
        self.inner.forward(&mut work);
        for (w, &f) in work.iter_mut().zip(&self.filter) {
            *w *= f;
        }
        self.inner.inverse(&mut work);
        for ((out, &w), &c) in x.iter_mut().zip(&work).zip(&self.chirp) {
            *out = w * c;
        }
    }
}
