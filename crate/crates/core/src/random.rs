//! Deterministic random quadratic maps.
//!
//! Attempt `a` for seed `S` draws from ChaCha8 seeded with `S` on stream
//! `a`, so the first acceptable attempt is the same whether the search
//! runs sequentially or in parallel.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::gf2::{BitMat, BitVec, MAX_DIM};
use crate::quadmap::{is_real, is_valid_group_seed, QuadMap, MAX_ENUM_DIM};

pub const MAX_ATTEMPTS: usize = 1 << 14;

/// Uniformly random upper-triangular coefficient matrices.
pub fn random_quadmap<R: Rng + ?Sized>(dim_v: usize, dim_w: usize, rng: &mut R) -> QuadMap {
    let coeffs = (0..dim_w)
        .map(|_| {
            let mut u = BitMat::zeros(dim_v, dim_v);
            for r in 0..dim_v {
                let row: u64 = rng.gen();
                let mask = if dim_v - r >= 64 {
                    !0
                } else {
                    ((1u64 << (dim_v - r)) - 1) << r
                };
                let row = BitVec::from_bits(dim_v, row & mask);
                for c in row.support() {
                    u.set(r, c, true);
                }
            }
            u
        })
        .collect();
    QuadMap::new(dim_v, coeffs).expect("upper triangular by construction")
}

fn attempt(dim_v: usize, dim_w: usize, seed: u64, a: u64) -> Option<QuadMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(a);
    let q = random_quadmap(dim_v, dim_w, &mut rng);
    (is_valid_group_seed(&q).is_valid() && is_real(&q)).then_some(q)
}

/// A valid, real seed determined by (dim_v, dim_w, seed).
pub fn random_real_seed(dim_v: usize, dim_w: usize, seed: u64) -> Result<QuadMap> {
    random_real_seed_with(dim_v, dim_w, seed, Execution::default())
}

pub fn random_real_seed_with(
    dim_v: usize,
    dim_w: usize,
    seed: u64,
    exec: Execution,
) -> Result<QuadMap> {
    if dim_v > MAX_ENUM_DIM || dim_w > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim_v.max(dim_w)));
    }
    // The polar image has dimension at most C(d, 2), and a single regular
    // form needs even d.
    if dim_w == 0 || dim_w > dim_v * dim_v.saturating_sub(1) / 2 || (dim_w == 1 && dim_v % 2 == 1) {
        return Err(Error::NoSeedFound(0));
    }
    exec::find_first(exec, MAX_ATTEMPTS as u64, |a| {
        attempt(dim_v, dim_w, seed, a)
    })
    .ok_or(Error::NoSeedFound(MAX_ATTEMPTS))
}
