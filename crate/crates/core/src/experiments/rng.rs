//! Seeded streams. Every (family, instance) pair gets its own generator so
//! corpora do not depend on iteration order or thread count.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub type Stream = Xoshiro256PlusPlus;

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn tag(label: &str) -> u64 {
    // FNV-1a
    label
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

pub fn stream(seed: u64, label: &str, instance: u64) -> Stream {
    let key = mix(seed ^ mix(tag(label) ^ mix(instance.wrapping_add(0x9e37_79b9_7f4a_7c15))));
    Stream::seed_from_u64(key)
}
