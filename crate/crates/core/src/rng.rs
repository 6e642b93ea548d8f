//! Deterministic pseudo-random values for seeded searches and tests.
//!
//! A hand-rolled SplitMix64 keeps every seeded computation byte-stable
//! across builds and platforms; reports record the seed they were produced
//! with.

use crate::field::{q, qr, Field, Q, Scalar};

/// Default seed, recorded in reports. Overridden by `NILEX_SEED` or `--seed`.
pub const DEFAULT_SEED: u64 = 0x006e_696c_6578_u64;

#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `[0, n)`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Signed integer in `[-bound, bound]`.
    pub fn small_int(&mut self, bound: i64) -> i64 {
        let span = (2 * bound + 1) as u64;
        self.below(span) as i64 - bound
    }

    /// Rational with numerator in `[-bound, bound]` and denominator in `[1, bound]`.
    pub fn small_rational(&mut self, bound: i64) -> Q {
        let n = self.small_int(bound);
        let d = 1 + self.below(bound as u64) as i64;
        qr(n, d)
    }

    /// Nonzero rational of the same shape.
    pub fn small_rational_nonzero(&mut self, bound: i64) -> Q {
        loop {
            let v = self.small_rational(bound);
            if v != q(0) {
                return v;
            }
        }
    }

    /// Scalar in the given field with small representatives.
    pub fn small_scalar(&mut self, field: Field, bound: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(self.small_rational(bound)),
            Field::Fp(p) => Scalar::Fp {
                value: self.below(p),
                p,
            },
        }
    }

    pub fn vector(&mut self, len: usize, field: Field, bound: i64) -> Vec<Scalar> {
        (0..len).map(|_| self.small_scalar(field, bound)).collect()
    }
}
