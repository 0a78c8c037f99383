//! Order-independent running digests for the model state hooks.
//!
//! Each model keeps a wrapping sum of per-entry fingerprints and adjusts it
//! whenever an entry changes, so `state_hash` is O(1) and does not depend
//! on hash map iteration order.

pub(crate) const fn mix(mut x: u64) -> u64 {
    // splitmix64 finalizer
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub(crate) fn bytes(data: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in data {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    mix(h ^ data.len() as u64)
}

pub(crate) fn combine(parts: &[u64]) -> u64 {
    parts.iter().fold(0x9e37_79b9_7f4a_7c15, |acc, &p| mix(acc ^ p).wrapping_add(p))
}
