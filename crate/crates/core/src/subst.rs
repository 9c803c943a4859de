//! The byte substitution chain and its inverse.
//!
//! Forward direction, per byte: XOR with the Henon keystream, add the
//! previous ciphertext byte modulo 256, XOR with the Lorenz keystream. The
//! chain value starts at 0x00 and carries across every buffer processed by
//! one chain instance, so chunk boundaries do not reset it.

use crate::chaos::{ChaosError, Keystream};

/// Substitution state: the two keystream sources plus the chained previous
/// ciphertext byte. Strictly sequential per stream.
#[derive(Debug, Clone)]
pub struct SubstChain<H: Keystream, L: Keystream> {
    henon: H,
    lorenz: L,
    prev: u8,
}

impl<H: Keystream, L: Keystream> SubstChain<H, L> {
    pub fn new(henon: H, lorenz: L) -> Self {
        SubstChain {
            henon,
            lorenz,
            prev: 0x00,
        }
    }

    /// Encrypt in place: `c = ((p ^ H) + prev) ^ L`, then `prev = c`.
    pub fn substitute(&mut self, data: &mut [u8]) -> Result<(), ChaosError> {
        for byte in data {
            let h = self.henon.next_byte()?;
            let l = self.lorenz.next_byte()?;
            let mixed = (*byte ^ h).wrapping_add(self.prev);
            let cipher = mixed ^ l;
            *byte = cipher;
            self.prev = cipher;
        }
        Ok(())
    }

    /// Decrypt in place: `p = ((c ^ L) - prev) ^ H`, then `prev = c`.
    pub fn desubstitute(&mut self, data: &mut [u8]) -> Result<(), ChaosError> {
        for byte in data {
            let h = self.henon.next_byte()?;
            let l = self.lorenz.next_byte()?;
            let cipher = *byte;
            let plain = (cipher ^ l).wrapping_sub(self.prev) ^ h;
            *byte = plain;
            self.prev = cipher;
        }
        Ok(())
    }

    /// Keystream bytes drawn so far from (Henon, Lorenz).
    pub fn keystream_bytes(&self) -> (u64, u64) {
        (self.henon.bytes_emitted(), self.lorenz.bytes_emitted())
    }
}
