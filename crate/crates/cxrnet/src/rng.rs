//! Deterministic random number generation.
//!
//! Everything random in the pipeline (weight init, augmentation, dropout,
//! phantom synthesis) draws from [`SplitMix64`], a 64-bit counter-based
//! generator (Steele et al., "Fast splittable pseudorandom number
//! generators", OOPSLA 2014).  Same seed, same platform-independent stream:
//! outputs depend only on integer arithmetic and IEEE-754 f64 division.

/// SplitMix64 generator. State advances by a fixed odd constant, so the
/// n-th output is a pure function of (seed, n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    /// Derive an independent stream from a seed and a set of stream labels
    /// (fold index, epoch, sample index, ...). Mixes each label in with the
    /// SplitMix64 finalizer so nearby labels give unrelated streams.
    pub fn from_parts(seed: u64, parts: &[u64]) -> Self {
        let mut acc = mix(seed ^ 0xA076_1D64_78BD_642F);
        for &p in parts {
            acc = mix(acc.wrapping_add(0x9E37_79B9_7F4A_7C15) ^ mix(p));
        }
        SplitMix64::new(acc)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        mix(self.state)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Standard normal via Box-Muller (two uniforms per pair, second draw
    /// discarded so each call consumes exactly two u64s).
    pub fn normal(&mut self) -> f64 {
        let u1 = self.next_f64().max(f64::MIN_POSITIVE);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }
}

#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_stream() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn f64_in_unit_interval() {
        let mut r = SplitMix64::new(42);
        for _ in 0..10_000 {
            let x = r.next_f64();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn parts_change_stream() {
        let a = SplitMix64::from_parts(1, &[0, 0]).next_u64();
        let b = SplitMix64::from_parts(1, &[0, 1]).next_u64();
        let c = SplitMix64::from_parts(1, &[1, 0]).next_u64();
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(b, c);
    }

    #[test]
    fn normal_moments() {
        let mut r = SplitMix64::new(3);
        let n = 200_000;
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let x = r.normal();
            s += x;
            s2 += x * x;
        }
        let mean = s / n as f64;
        let var = s2 / n as f64 - mean * mean;
        assert!(mean.abs() < 0.01, "mean {mean}");
        assert!((var - 1.0).abs() < 0.02, "var {var}");
    }
}
