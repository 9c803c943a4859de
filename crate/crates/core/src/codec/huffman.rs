//! Canonical Huffman coding over small alphabets.
//!
//! Code lengths are built with a binary heap and capped at
//! [`MAX_CODE_LEN`]; when a tree comes out deeper, frequencies are halved
//! and the tree rebuilt until it fits (the flattening costs a fraction of a
//! bit per symbol and keeps the serialized lengths in one nibble). Codes are
//! assigned canonically: symbols sorted by (length, index), codes counting
//! up MSB-first.

use super::bitio::BitReader;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Maximum code length; lengths are serialized as nibbles.
pub const MAX_CODE_LEN: usize = 15;

/// Build code lengths for the given symbol frequencies. Unused symbols get
/// length 0; a lone used symbol gets length 1.
pub fn build_code_lengths(freqs: &[u64]) -> Vec<u8> {
    let mut working: Vec<u64> = freqs.to_vec();
    loop {
        let lengths = huffman_lengths(&working);
        let deepest = lengths.iter().copied().max().unwrap_or(0);
        if usize::from(deepest) <= MAX_CODE_LEN {
            return lengths;
        }
        for f in working.iter_mut() {
            if *f > 0 {
                *f = f.div_ceil(2);
            }
        }
    }
}

fn huffman_lengths(freqs: &[u64]) -> Vec<u8> {
    let used: Vec<usize> = (0..freqs.len()).filter(|&i| freqs[i] > 0).collect();
    let mut lengths = vec![0u8; freqs.len()];
    match used.len() {
        0 => return lengths,
        1 => {
            lengths[used[0]] = 1;
            return lengths;
        }
        _ => {}
    }

    // Node arena: leaves first, then internal nodes. Ties break on node id
    // so construction is deterministic.
    let mut parent = vec![usize::MAX; used.len() * 2 - 1];
    let mut heap: BinaryHeap<Reverse<(u64, usize)>> = used
        .iter()
        .enumerate()
        .map(|(node, &sym)| Reverse((freqs[sym], node)))
        .collect();
    let mut next_node = used.len();
    while heap.len() > 1 {
        let Reverse((fa, a)) = heap.pop().unwrap();
        let Reverse((fb, b)) = heap.pop().unwrap();
        parent[a] = next_node;
        parent[b] = next_node;
        heap.push(Reverse((fa + fb, next_node)));
        next_node += 1;
    }

    for (node, &sym) in used.iter().enumerate() {
        let mut depth = 0u8;
        let mut at = node;
        while parent[at] != usize::MAX {
            depth += 1;
            at = parent[at];
        }
        lengths[sym] = depth;
    }
    lengths
}

/// Canonical codes for the given lengths; entry is meaningful only where
/// the length is nonzero.
pub fn canonical_codes(lengths: &[u8]) -> Vec<u32> {
    let mut count_per_len = [0u32; MAX_CODE_LEN + 1];
    for &l in lengths {
        count_per_len[l as usize] += 1;
    }
    count_per_len[0] = 0;
    let mut next_code = [0u32; MAX_CODE_LEN + 2];
    let mut code = 0u32;
    for len in 1..=MAX_CODE_LEN {
        code = (code + count_per_len[len - 1]) << 1;
        next_code[len] = code;
    }
    let mut codes = vec![0u32; lengths.len()];
    for (sym, &l) in lengths.iter().enumerate() {
        if l > 0 {
            codes[sym] = next_code[l as usize];
            next_code[l as usize] += 1;
        }
    }
    codes
}

/// Canonical decoder: per length, the first code value and the index of its
/// first symbol in the (length, symbol)-sorted order.
#[derive(Debug)]
pub struct CanonicalDecoder {
    first_code: [u32; MAX_CODE_LEN + 1],
    first_index: [u32; MAX_CODE_LEN + 1],
    count: [u32; MAX_CODE_LEN + 1],
    symbols: Vec<u16>,
}

impl CanonicalDecoder {
    /// Build from code lengths. Fails on an over-subscribed code (Kraft sum
    /// above one), which cannot have come from the encoder.
    pub fn new(lengths: &[u8]) -> Option<Self> {
        let mut count = [0u32; MAX_CODE_LEN + 1];
        for &l in lengths {
            if usize::from(l) > MAX_CODE_LEN {
                return None;
            }
            count[l as usize] += 1;
        }
        count[0] = 0;
        let mut kraft = 0u64;
        for (len, &n) in count.iter().enumerate().skip(1) {
            kraft += (n as u64) << (MAX_CODE_LEN - len);
        }
        if kraft > 1u64 << MAX_CODE_LEN {
            return None;
        }

        let mut first_code = [0u32; MAX_CODE_LEN + 1];
        let mut first_index = [0u32; MAX_CODE_LEN + 1];
        let mut code = 0u32;
        let mut index = 0u32;
        for len in 1..=MAX_CODE_LEN {
            code = (code + count[len - 1]) << 1;
            first_code[len] = code;
            first_index[len] = index;
            index += count[len];
        }
        let mut symbols = Vec::with_capacity(index as usize);
        for len in 1..=MAX_CODE_LEN as u8 {
            symbols.extend(
                lengths
                    .iter()
                    .enumerate()
                    .filter(|&(_, &l)| l == len)
                    .map(|(sym, _)| sym as u16),
            );
        }
        Some(CanonicalDecoder {
            first_code,
            first_index,
            count,
            symbols,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Decode one symbol, or `None` on bit exhaustion / an invalid code.
    pub fn decode(&self, reader: &mut BitReader<'_>) -> Option<u16> {
        let mut code = 0u32;
        for len in 1..=MAX_CODE_LEN {
            code = (code << 1) | reader.read_bit()?;
            let offset = code.wrapping_sub(self.first_code[len]);
            if offset < self.count[len] {
                return self
                    .symbols
                    .get((self.first_index[len] + offset) as usize)
                    .copied();
            }
        }
        None
    }
}
