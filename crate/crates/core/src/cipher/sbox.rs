//! The 4-bit S-box (shared with PRESENT) and its parallel 16-bit form.

use crate::perm::Perm16;

use super::Word16;

/// Image table of the forward S-box.
pub const SBOX: [u8; 16] = [
    0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD, 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2,
];

/// Image table of the inverse S-box.
pub const SBOX_INV: [u8; 16] = [
    0x5, 0xE, 0xF, 0x8, 0xC, 0x1, 0x2, 0xD, 0xB, 0x4, 0x6, 0x3, 0x0, 0x7, 0x9, 0xA,
];

#[inline]
pub fn sbox(nibble: u8) -> u8 {
    SBOX[(nibble & 0xF) as usize]
}

#[inline]
pub fn sbox_inv(nibble: u8) -> u8 {
    SBOX_INV[(nibble & 0xF) as usize]
}

fn per_nibble(value: u64, nibbles: u32, f: fn(u8) -> u8) -> u64 {
    (0..nibbles).fold(0, |acc, j| {
        let n = ((value >> (4 * j)) & 0xF) as u8;
        acc | (u64::from(f(n)) << (4 * j))
    })
}

/// Applies the S-box to each nibble of `value`, nibble 0 being bits 0..3.
pub fn sbox_nibbles(value: u64, nibbles: u32) -> u64 {
    per_nibble(value, nibbles, sbox)
}

pub fn sbox_inv_nibbles(value: u64, nibbles: u32) -> u64 {
    per_nibble(value, nibbles, sbox_inv)
}

pub fn sbox16(w: Word16) -> Word16 {
    Word16(sbox_nibbles(u64::from(w.0), 4) as u16)
}

pub fn sbox16_inv(w: Word16) -> Word16 {
    Word16(sbox_inv_nibbles(u64::from(w.0), 4) as u16)
}

/// Forward and inverse S-box as permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SBoxTable {
    pub forward: Perm16,
    pub inverse: Perm16,
}

impl SBoxTable {
    pub fn slim() -> Self {
        SBoxTable {
            forward: Perm16::new(SBOX).expect("S-box table is a bijection"),
            inverse: Perm16::new(SBOX_INV).expect("inverse S-box table is a bijection"),
        }
    }
}
