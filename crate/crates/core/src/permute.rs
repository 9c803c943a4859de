//! Keyed block permutation and its exact inverse.
//!
//! A 64-byte block is treated as two 32-byte halves merged by comparing
//! keystream bytes against the secret threshold: while neither half is
//! depleted, draw a byte, swap the heads of the halves when it exceeds the
//! threshold, and always advance the left head. Whatever remains of the
//! right half is then shuffled Fisher-Yates style, one keystream byte per
//! position, reduced modulo the remaining range (self-swaps permitted).
//!
//! The number of keystream bytes consumed depends only on the keystream,
//! the block length, and the threshold, never on the data. Deshuffling
//! regenerates the identical swap sequence from an identically seeded
//! generator and applies it in reverse.

use crate::chaos::{ChaosError, Keystream};
use thiserror::Error;

/// Canonical full block size; tail blocks may be shorter.
pub const BLOCK_LEN: usize = 64;

#[derive(Debug, Error, PartialEq)]
pub enum PermuteError {
    #[error("block length {0} outside [1, {BLOCK_LEN}]")]
    BadBlockLen(usize),
    #[error(transparent)]
    Chaos(#[from] ChaosError),
}

/// The permutation one shuffle applied: `indices()[i]` is the source index
/// of the byte that ended up at output position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermTrace {
    indices: Vec<u8>,
}

impl PermTrace {
    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = [false; BLOCK_LEN];
        for &i in &self.indices {
            let i = i as usize;
            if i >= self.indices.len() || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }
}

/// The data-independent swap sequence for a block of length `n`.
fn swap_sequence<S: Keystream + ?Sized>(
    n: usize,
    stream: &mut S,
    threshold: u8,
) -> Result<Vec<(u8, u8)>, PermuteError> {
    if n == 0 || n > BLOCK_LEN {
        return Err(PermuteError::BadBlockLen(n));
    }
    let half = n / 2;
    let mut swaps = Vec::with_capacity(n);
    let mut srt = 0usize;
    let mut mid = half;
    while srt != half && mid != n {
        let byte = stream.next_byte()?;
        if byte > threshold {
            swaps.push((srt as u8, mid as u8));
            mid += 1;
        }
        srt += 1;
    }
    while mid != n {
        let byte = stream.next_byte()?;
        let pos = mid + byte as usize % (n - mid);
        swaps.push((mid as u8, pos as u8));
        mid += 1;
    }
    Ok(swaps)
}

/// Shuffle one block in place, returning the applied permutation.
pub fn shuffle_block<S: Keystream + ?Sized>(
    block: &mut [u8],
    stream: &mut S,
    threshold: u8,
) -> Result<PermTrace, PermuteError> {
    let swaps = swap_sequence(block.len(), stream, threshold)?;
    let mut indices: Vec<u8> = (0..block.len() as u8).collect();
    for &(i, j) in &swaps {
        block.swap(i as usize, j as usize);
        indices.swap(i as usize, j as usize);
    }
    Ok(PermTrace { indices })
}

/// Invert a shuffle by replaying the identical swap sequence backwards.
/// The stream must be seeded and positioned exactly as it was for the
/// shuffle.
pub fn deshuffle_block<S: Keystream + ?Sized>(
    block: &mut [u8],
    stream: &mut S,
    threshold: u8,
) -> Result<(), PermuteError> {
    let swaps = swap_sequence(block.len(), stream, threshold)?;
    for &(i, j) in swaps.iter().rev() {
        block.swap(i as usize, j as usize);
    }
    Ok(())
}

/// Shuffle every block of a buffer against one continuous keystream.
pub fn shuffle_stream<S: Keystream + ?Sized>(
    data: &mut [u8],
    stream: &mut S,
    threshold: u8,
) -> Result<(), PermuteError> {
    for block in data.chunks_mut(BLOCK_LEN) {
        shuffle_block(block, stream, threshold)?;
    }
    Ok(())
}

/// Inverse of [`shuffle_stream`] under identical stream seeding.
pub fn deshuffle_stream<S: Keystream + ?Sized>(
    data: &mut [u8],
    stream: &mut S,
    threshold: u8,
) -> Result<(), PermuteError> {
    for block in data.chunks_mut(BLOCK_LEN) {
        deshuffle_block(block, stream, threshold)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaos::testutil::StubStream;
    use crate::chaos::{LogisticState, MapGenerator};
    use crate::corpus::SplitMix64;
    use crate::fxp::{Fx32, QFormat};

    fn logistic_stream(x0: f64, mu: f64) -> MapGenerator {
        MapGenerator::logistic(LogisticState::new(
            Fx32::from_f64(x0, QFormat::Q2),
            Fx32::from_f64(mu, QFormat::Q2),
        ))
        .warmed()
        .unwrap()
    }

    fn histogram(data: &[u8]) -> [u32; 256] {
        let mut h = [0u32; 256];
        for &b in data {
            h[b as usize] += 1;
        }
        h
    }

    #[test]
    fn equal_bytes_shuffle_to_themselves() {
        let mut stream = logistic_stream(0.3, 3.98);
        let mut block = [0xAAu8; 64];
        let trace = shuffle_block(&mut block, &mut stream, 0x7f).unwrap();
        assert!(trace.is_bijection());
        assert_eq!(block, [0xAAu8; 64]);
    }

    #[test]
    fn shuffle_then_deshuffle_is_identity() {
        let mut rng = SplitMix64::new(41);
        for n in 1..=64usize {
            for round in 0..20 {
                let mut data: Vec<u8> = (0..n).map(|_| rng.next_u64() as u8).collect();
                let original = data.clone();
                let t = (rng.next_u64() & 0xff) as u8;
                let x0 = 0.1 + 0.7 * (round as f64 + 1.0) / 21.0;
                let mut enc = logistic_stream(x0, 3.91);
                let mut dec = logistic_stream(x0, 3.91);
                let trace = shuffle_block(&mut data, &mut enc, t).unwrap();
                assert!(trace.is_bijection());
                assert_eq!(histogram(&data), histogram(&original), "n={n}");
                deshuffle_block(&mut data, &mut dec, t).unwrap();
                assert_eq!(data, original, "n={n} round={round}");
                assert_eq!(enc.bytes_emitted(), dec.bytes_emitted());
            }
        }
    }

    #[test]
    fn trace_maps_outputs_to_sources() {
        let mut stream = logistic_stream(0.37, 3.97);
        let original: Vec<u8> = (0..64).collect();
        let mut data = original.clone();
        let trace = shuffle_block(&mut data, &mut stream, 0x40).unwrap();
        for (i, &src) in trace.indices().iter().enumerate() {
            assert_eq!(data[i], original[src as usize]);
        }
    }

    #[test]
    fn saturated_threshold_skips_merge_phase() {
        // With an all-0xFF stream and T = 0xFF the compare never fires: the
        // left half depletes untouched after 32 draws, then Fisher-Yates
        // runs over [32, 64) with pos = mid + (255 mod (64 - mid)).
        let original: Vec<u8> = (0..64).collect();
        let mut data = original.clone();
        let mut stream = StubStream::constant(0xff);
        shuffle_block(&mut data, &mut stream, 0xff).unwrap();
        assert_eq!(stream.bytes_emitted(), 64);
        assert_eq!(&data[..32], &original[..32]);
        assert_eq!(histogram(&data[32..]), histogram(&original[32..]));
        // First tail swap: mid = 32, pos = 32 + 255 % 32 = 63; position 32
        // is never revisited afterwards.
        assert_eq!(data[32], original[63]);
    }

    #[test]
    fn single_byte_block_consumes_one_byte() {
        let mut stream = StubStream::constant(0x11);
        let mut data = [0x42u8];
        shuffle_block(&mut data, &mut stream, 0x80).unwrap();
        assert_eq!(data, [0x42]);
        assert_eq!(stream.bytes_emitted(), 1);
        let mut dec = StubStream::constant(0x11);
        deshuffle_block(&mut data, &mut dec, 0x80).unwrap();
        assert_eq!(data, [0x42]);
        assert_eq!(dec.bytes_emitted(), 1);
    }

    #[test]
    fn empty_block_is_rejected() {
        let mut stream = StubStream::constant(0);
        let mut data: [u8; 0] = [];
        assert_eq!(
            shuffle_block(&mut data, &mut stream, 0).unwrap_err(),
            PermuteError::BadBlockLen(0)
        );
    }

    #[test]
    fn consumption_is_data_independent() {
        for n in [1usize, 17, 33, 64] {
            let mut a_stream = logistic_stream(0.21, 3.93);
            let mut b_stream = a_stream.clone();
            let mut a: Vec<u8> = vec![0u8; n];
            let mut b: Vec<u8> = (0..n as u8).rev().collect();
            shuffle_block(&mut a, &mut a_stream, 0x55).unwrap();
            shuffle_block(&mut b, &mut b_stream, 0x55).unwrap();
            assert_eq!(a_stream.bytes_emitted(), b_stream.bytes_emitted(), "n={n}");
        }
    }

    #[test]
    fn corpus_histogram_is_preserved() {
        let corpus = crate::corpus::synthetic_text(10_000, 8);
        let mut shuffled = corpus.clone();
        let mut stream = logistic_stream(0.3, 3.98);
        shuffle_stream(&mut shuffled, &mut stream, 0x66).unwrap();
        assert_eq!(histogram(&shuffled), histogram(&corpus));
        assert_ne!(shuffled, corpus);
        let mut dec = logistic_stream(0.3, 3.98);
        deshuffle_stream(&mut shuffled, &mut dec, 0x66).unwrap();
        assert_eq!(shuffled, corpus);
    }
}
