//! Bit-exact classical SLIM: 32-bit block, 80-bit key, 32 Feistel rounds.
//!
//! All values are LSB-first: bit 0 of a word is its least significant bit.
//! Key bit 0 is `L_0`, key bit 79 is `M_0`.

mod kat;
mod pbox;
mod sbox;
mod schedule;

use std::fmt;

use rand::Rng;
use thiserror::Error;

pub use kat::{kat_generate, parse_kat, verify_kat, KatError, KatFailure, KatRecord};
pub use pbox::{pbox, pbox_inv, PBOX, PBOX_CYCLES, PBOX_INV, PBOX_INV_CYCLES};
pub use sbox::{
    sbox, sbox16, sbox16_inv, sbox_inv, sbox_inv_nibbles, sbox_nibbles, SBoxTable, SBOX, SBOX_INV,
};
pub use schedule::{
    derive_mirrored_subkeys, derive_subkeys, rotl40, schedule_advance, KeyState80, SubkeySchedule,
    DIRECT_ROUNDS, HALF_MASK,
};

pub const ROUNDS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HexError {
    #[error("{what}: expected {expected} hex digits, got {got}")]
    Width {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("{what}: {text:?} is not hexadecimal")]
    Digit { what: &'static str, text: String },
    #[error("key value exceeds 80 bits")]
    KeyRange,
}

fn parse_hex(text: &str, digits: usize, what: &'static str) -> Result<u128, HexError> {
    let text = text.trim();
    let body = text.strip_prefix("0x").unwrap_or(text);
    if body.len() != digits {
        return Err(HexError::Width {
            what,
            expected: digits,
            got: body.len(),
        });
    }
    if !body.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(HexError::Digit {
            what,
            text: text.to_string(),
        });
    }
    u128::from_str_radix(body, 16).map_err(|_| HexError::Digit {
        what,
        text: text.to_string(),
    })
}

/// A 16-bit half block or round key.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word16(pub u16);

impl std::ops::BitXor for Word16 {
    type Output = Word16;
    fn bitxor(self, rhs: Word16) -> Word16 {
        Word16(self.0 ^ rhs.0)
    }
}

/// A 32-bit block split into its up and down halves.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Block32 {
    pub up: Word16,
    pub down: Word16,
}

impl Block32 {
    pub fn new(up: Word16, down: Word16) -> Self {
        Block32 { up, down }
    }

    /// Packed as `(up << 16) | down`.
    pub fn from_u32(value: u32) -> Self {
        Block32 {
            up: Word16((value >> 16) as u16),
            down: Word16(value as u16),
        }
    }

    pub fn to_u32(self) -> u32 {
        (u32::from(self.up.0) << 16) | u32::from(self.down.0)
    }

    pub fn from_hex(text: &str) -> Result<Self, HexError> {
        parse_hex(text, 8, "block").map(|v| Block32::from_u32(v as u32))
    }

    pub fn to_hex(self) -> String {
        format!("{:08x}", self.to_u32())
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Block32::from_u32(rng.gen())
    }
}

impl fmt::Display for Block32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// An 80-bit master key.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct MasterKey80(u128);

impl MasterKey80 {
    pub const MASK: u128 = (1 << 80) - 1;

    pub fn new(bits: u128) -> Result<Self, HexError> {
        if bits > Self::MASK {
            return Err(HexError::KeyRange);
        }
        Ok(MasterKey80(bits))
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn bit(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    /// `index`-th 16-bit slice, least significant first.
    pub fn slice16(self, index: usize) -> Word16 {
        Word16((self.0 >> (16 * index)) as u16)
    }

    pub fn from_hex(text: &str) -> Result<Self, HexError> {
        parse_hex(text, 20, "key").and_then(MasterKey80::new)
    }

    pub fn to_hex(self) -> String {
        format!("{:020x}", self.0)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        MasterKey80(rng.gen::<u128>() & Self::MASK)
    }
}

impl fmt::Display for MasterKey80 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// The keyed round function `P(S(k ^ d))`.
pub fn round_function(down: Word16, key: Word16) -> Word16 {
    pbox(sbox16(down ^ key))
}

/// One Feistel round: `U' = D`, `D' = U ^ F(D, K)`.
pub fn encrypt_round(block: Block32, key: Word16) -> Block32 {
    Block32 {
        up: block.down,
        down: block.up ^ round_function(block.down, key),
    }
}

pub fn decrypt_round(block: Block32, key: Word16) -> Block32 {
    Block32 {
        up: block.down ^ round_function(block.up, key),
        down: block.up,
    }
}

pub fn encrypt_with(pt: Block32, schedule: &SubkeySchedule) -> Block32 {
    schedule
        .subkeys()
        .iter()
        .fold(pt, |block, &k| encrypt_round(block, k))
}

pub fn decrypt_with(ct: Block32, schedule: &SubkeySchedule) -> Block32 {
    schedule
        .subkeys()
        .iter()
        .rev()
        .fold(ct, |block, &k| decrypt_round(block, k))
}

pub fn encrypt(pt: Block32, key: MasterKey80) -> Block32 {
    encrypt_with(pt, &derive_subkeys(key))
}

pub fn decrypt(ct: Block32, key: MasterKey80) -> Block32 {
    decrypt_with(ct, &derive_subkeys(key))
}
