//! Counter-based pseudo-random generator.
//!
//! Every random quantity in the crate is derived from a `u64` seed through the
//! SplitMix64 output function, so any consumer (including reimplementations in
//! other languages) can reproduce a report byte for byte from its seed. The
//! exact algorithm is documented in `docs/prng.md`; in short, draw `k` of a
//! stream seeded with `s` is
//!
//! ```text
//! mix(s + (k+1) * 0x9E3779B97F4A7C15)
//! ```
//!
//! where `mix` is the SplitMix64 finalizer. Substreams (per trial, per
//! restart) are derived by folding a stream index into the seed with the same
//! finalizer, never by sharing a sequential stream across tasks.

/// SplitMix64 finalizer.
#[inline]
pub fn mix(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    z
}

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// A deterministic stream of pseudo-random values.
#[derive(Debug, Clone)]
pub struct Stream {
    seed: u64,
    counter: u64,
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream { seed, counter: 0 }
    }

    /// Derives an independent substream; used for per-trial and per-restart
    /// seeds so parallel execution order cannot affect results.
    pub fn substream(seed: u64, index: u64) -> Self {
        Stream::new(mix(seed ^ mix(index.wrapping_add(1))))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        mix(self.seed.wrapping_add(self.counter.wrapping_mul(GAMMA)))
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform sign in `{-1, +1}`.
    pub fn next_sign(&mut self) -> f64 {
        if self.next_u64() >> 63 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Standard normal via Box–Muller.
    pub fn next_normal(&mut self) -> f64 {
        let u = loop {
            let u = self.next_f64();
            if u > 0.0 {
                break u;
            }
        };
        let v = self.next_f64();
        (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    }
}
