//! Round-key derivation.
//!
//! Rounds 1..5 take the five 16-bit slices of the master key directly. For
//! the remaining rounds the key is split into two 40-bit halves and each
//! advance does:
//!
//! ```text
//! lsb' = rotl40(lsb, 2)
//! t    = lsb' ^ msb
//! s    = S(t)                 ten parallel S-boxes, nibble 0 first
//! msb' = rotl40(msb, 3) ^ s
//! state <- (msb', s), round key = low 16 bits of msb'
//! ```

use super::sbox::sbox_nibbles;
use super::{MasterKey80, Word16, ROUNDS};

pub const HALF_MASK: u64 = (1 << 40) - 1;

/// Subkeys taken straight from the master key.
pub const DIRECT_ROUNDS: usize = 5;

pub fn rotl40(value: u64, by: u32) -> u64 {
    let by = by % 40;
    ((value << by) | (value >> (40 - by))) & HALF_MASK
}

/// 80-bit schedule state, as two 40-bit halves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KeyState80 {
    pub msb_half: u64,
    pub lsb_half: u64,
}

impl KeyState80 {
    pub fn new(msb_half: u64, lsb_half: u64) -> Self {
        KeyState80 {
            msb_half: msb_half & HALF_MASK,
            lsb_half: lsb_half & HALF_MASK,
        }
    }

    /// Splitter state: upper 40 key bits in the MSB half.
    pub fn from_key(key: MasterKey80) -> Self {
        KeyState80::new((key.0 >> 40) as u64, key.0 as u64)
    }

    pub fn to_key_bits(self) -> u128 {
        (u128::from(self.msb_half) << 40) | u128::from(self.lsb_half)
    }
}

/// One schedule step; returns the new state and the round key it yields.
pub fn schedule_advance(state: KeyState80) -> (KeyState80, Word16) {
    let rotated_lsb = rotl40(state.lsb_half, 2);
    let mixed = rotated_lsb ^ state.msb_half;
    let substituted = sbox_nibbles(mixed, 10);
    let msb = rotl40(state.msb_half, 3) ^ substituted;
    let next = KeyState80::new(msb, substituted);
    (next, Word16(msb as u16))
}

/// The 32 round keys `K_1..K_32`, stored zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubkeySchedule {
    subkeys: [Word16; ROUNDS],
}

impl SubkeySchedule {
    pub fn new(subkeys: [Word16; ROUNDS]) -> Self {
        SubkeySchedule { subkeys }
    }

    pub fn subkeys(&self) -> &[Word16; ROUNDS] {
        &self.subkeys
    }

    /// Round key for 1-based round `round`.
    pub fn round_key(&self, round: usize) -> Word16 {
        self.subkeys[round - 1]
    }
}

pub fn derive_subkeys(key: MasterKey80) -> SubkeySchedule {
    let mut subkeys = [Word16(0); ROUNDS];
    for (i, slot) in subkeys.iter_mut().take(DIRECT_ROUNDS).enumerate() {
        *slot = key.slice16(i);
    }
    let mut state = KeyState80::from_key(key);
    for slot in subkeys.iter_mut().skip(DIRECT_ROUNDS) {
        let (next, k) = schedule_advance(state);
        state = next;
        *slot = k;
    }
    SubkeySchedule { subkeys }
}

/// Round keys produced when the schedule is advanced and then undone inside
/// every round: rounds 6..32 all see the first advanced key.
pub fn derive_mirrored_subkeys(key: MasterKey80) -> SubkeySchedule {
    let mut subkeys = [Word16(0); ROUNDS];
    for (i, slot) in subkeys.iter_mut().take(DIRECT_ROUNDS).enumerate() {
        *slot = key.slice16(i);
    }
    let (_, k6) = schedule_advance(KeyState80::from_key(key));
    for slot in subkeys.iter_mut().skip(DIRECT_ROUNDS) {
        *slot = k6;
    }
    SubkeySchedule { subkeys }
}
