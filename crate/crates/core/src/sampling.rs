//! Seeded random scalars. Every trial draws from its own ChaCha stream keyed
//! by `(seed, stream)`, so results do not depend on evaluation order.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;

/// Default bound `B` for rational samples drawn from `[-B, B]`.
pub const DEFAULT_INT_BOUND: i64 = 10;

pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform over GF(p), or an integer in `[-bound, bound]` over Q.
pub fn random_scalar<R: Rng>(rng: &mut R, field: FieldSpec, bound: i64) -> Scalar {
    match field {
        FieldSpec::Rationals => Scalar::from_i64(field, rng.gen_range(-bound..=bound)),
        FieldSpec::Prime(p) => Scalar::from_i64(field, rng.gen_range(0..p as i64)),
    }
}

pub fn random_nonzero_scalar<R: Rng>(rng: &mut R, field: FieldSpec, bound: i64) -> Scalar {
    loop {
        let x = random_scalar(rng, field, bound.max(1));
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_matrix<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    rows: usize,
    cols: usize,
    bound: i64,
) -> ExactMatrix {
    ExactMatrix::from_fn(field, rows, cols, |_, _| random_scalar(rng, field, bound))
}

/// Maps an arbitrary seed string to a `u64`: decimal integers map to
/// themselves, anything else through FNV-1a.
pub fn seed_from_str(s: &str) -> u64 {
    if let Ok(n) = s.trim().parse::<u64>() {
        return n;
    }
    s.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}
