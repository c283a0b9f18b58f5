//! Bijections on `{0..15}`, the semantics of a 4-bit reversible function.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("image {0} is out of range (must be < 16)")]
    OutOfRange(u8),
    #[error("value {value:#x} appears at inputs {first} and {second}")]
    Repeated {
        value: u8,
        first: usize,
        second: usize,
    },
    #[error("expected 16 hex digits, got {0:?}")]
    BadHex(String),
}

/// A permutation of the sixteen 4-bit values, stored as its image table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm16([u8; 16]);

impl Perm16 {
    pub const IDENTITY: Perm16 = Perm16([0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15]);

    pub fn new(images: [u8; 16]) -> Result<Self, PermError> {
        let mut seen = [usize::MAX; 16];
        for (input, &value) in images.iter().enumerate() {
            if value >= 16 {
                return Err(PermError::OutOfRange(value));
            }
            let slot = &mut seen[value as usize];
            if *slot != usize::MAX {
                return Err(PermError::Repeated {
                    value,
                    first: *slot,
                    second: input,
                });
            }
            *slot = input;
        }
        Ok(Perm16(images))
    }

    /// Parses 16 hex digits, the images of `0..15` in order.
    pub fn from_hex(text: &str) -> Result<Self, PermError> {
        let text = text.trim();
        if text.len() != 16 {
            return Err(PermError::BadHex(text.to_string()));
        }
        let mut images = [0u8; 16];
        for (slot, ch) in images.iter_mut().zip(text.chars()) {
            *slot = ch
                .to_digit(16)
                .ok_or_else(|| PermError::BadHex(text.to_string()))? as u8;
        }
        Perm16::new(images)
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|v| format!("{v:X}")).collect()
    }

    pub fn images(&self) -> &[u8; 16] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u8) -> u8 {
        self.0[(x & 0xF) as usize]
    }

    pub fn inverse(&self) -> Perm16 {
        let mut inv = [0u8; 16];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        Perm16(inv)
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Perm16) -> Perm16 {
        let mut out = [0u8; 16];
        for (slot, &y) in out.iter_mut().zip(self.0.iter()) {
            *slot = next.apply(y);
        }
        Perm16(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl fmt::Debug for Perm16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm16({})", self.to_hex())
    }
}

impl fmt::Display for Perm16 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_repeats() {
        let mut images = *Perm16::IDENTITY.images();
        images[3] = 2;
        assert_eq!(
            Perm16::new(images),
            Err(PermError::Repeated {
                value: 2,
                first: 2,
                second: 3
            })
        );
        assert!(Perm16::from_hex("0123456789ABCDEE").is_err());
        assert!(Perm16::from_hex("0123").is_err());
    }

    #[test]
    fn hex_round_trip_and_inverse() {
        let p = Perm16::from_hex("C56B90AD3EF84712").unwrap();
        assert_eq!(p.to_hex(), "C56B90AD3EF84712");
        assert!(p.then(&p.inverse()).is_identity());
        assert!(p.inverse().then(&p).is_identity());
    }
}
