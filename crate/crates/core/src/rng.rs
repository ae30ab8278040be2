//! Seeded, splittable random streams.
//!
//! All samplers take `&mut Stream`. Independent streams for trials, replicas
//! or subcommands are derived from a master seed with [`derive_seed`], so a
//! run is reproducible bit-for-bit regardless of thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere in the crate.
pub type Stream = ChaCha8Rng;

/// Opens a stream from a 64-bit seed.
pub fn stream(seed: u64) -> Stream {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Opens the stream for `(master, label, index)`.
pub fn substream(master: u64, label: &str, index: u64) -> Stream {
    stream(derive_seed(master, label, index))
}

/// Mixes a master seed with a label and an index into a child seed.
pub fn derive_seed(master: u64, label: &str, index: u64) -> u64 {
    // FNV-1a over the label, then two splitmix rounds.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix64(splitmix64(master ^ h).wrapping_add(index))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
