//! The 16-bit P-box, given in cycle notation.
//!
//! Convention: bit `i` of the input lands on bit `sigma(i)` of the output.

use super::Word16;

/// Cycles of the forward permutation.
pub const PBOX_CYCLES: [&[u8]; 2] = [&[0, 7, 5, 14, 9, 10, 15, 12, 3, 8, 4, 11], &[1, 13, 6, 2]];

/// Cycles of the inverse permutation, as published alongside the forward ones.
pub const PBOX_INV_CYCLES: [&[u8]; 2] =
    [&[0, 11, 4, 8, 3, 12, 15, 10, 9, 14, 5, 7], &[1, 2, 6, 13]];

/// Expands a product of disjoint cycles into an image table.
/// Points not mentioned are fixed.
pub const fn from_cycles(cycles: [&[u8]; 2]) -> [u8; 16] {
    let mut map = [0u8; 16];
    let mut i = 0;
    while i < 16 {
        map[i] = i as u8;
        i += 1;
    }
    let mut c = 0;
    while c < cycles.len() {
        let cycle = cycles[c];
        let mut k = 0;
        while k < cycle.len() {
            map[cycle[k] as usize] = cycle[(k + 1) % cycle.len()];
            k += 1;
        }
        c += 1;
    }
    map
}

/// `PBOX[i]` is the output position of input bit `i`.
pub const PBOX: [u8; 16] = from_cycles(PBOX_CYCLES);
pub const PBOX_INV: [u8; 16] = from_cycles(PBOX_INV_CYCLES);

fn permute_bits(w: u16, map: &[u8; 16]) -> u16 {
    (0..16).fold(0u16, |acc, i| acc | (((w >> i) & 1) << map[i]))
}

pub fn pbox(w: Word16) -> Word16 {
    Word16(permute_bits(w.0, &PBOX))
}

pub fn pbox_inv(w: Word16) -> Word16 {
    Word16(permute_bits(w.0, &PBOX_INV))
}
