//! Pluggable lossless compression layer.
//!
//! Three codecs sit behind one id byte recorded in the container header:
//!
//! - `store` (0): identity, for measurement baselines and harness checks.
//! - `baseline` (1): the in-repo LZSS + canonical-Huffman codec, always
//!   available, fully specified below.
//! - `external` (2): zstd via the optional `external-zstd` build feature;
//!   absent builds report it unavailable instead of failing.
//!
//! Baseline chunk payload layout (all bit fields MSB-first):
//!
//! ```text
//! offset 0      mode byte: 0 = raw, 1 = coded
//! raw mode      original bytes verbatim
//! coded mode    135 bytes  literal/length code lengths, 270 nibbles
//!               15 bytes   distance code lengths, 30 nibbles
//!               bitstream  tokens terminated by the end-of-block symbol
//! ```
//!
//! Token symbols 0..=255 are literals, 256 ends the block, 257 + k is a
//! match-length bucket (k < 8 encodes length-4+k exactly; k = 8..=12 carries
//! k - 5 extra bits). Distance buckets 0..=3 encode distances 1..=4; bucket
//! 2m + h (m >= 2) carries m - 1 extra bits. The encoder falls back to raw
//! mode whenever coding would not shrink the chunk, which bounds expansion
//! to one byte per chunk.

mod bitio;
mod huffman;
mod lzss;

use bitio::{BitReader, BitWriter};
use huffman::{build_code_lengths, canonical_codes, CanonicalDecoder};
use lzss::Token;
use std::time::Instant;
use thiserror::Error;

/// Literals + end-of-block + 13 length buckets.
const LITLEN_SYMBOLS: usize = 257 + 13;
const DIST_SYMBOLS: usize = 30;
const END_OF_BLOCK: u16 = 256;

const MODE_RAW: u8 = 0;
const MODE_CODED: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodecId {
    Store,
    Baseline,
    External,
}

impl CodecId {
    pub const fn id(self) -> u8 {
        match self {
            CodecId::Store => 0,
            CodecId::Baseline => 1,
            CodecId::External => 2,
        }
    }

    pub fn from_id(id: u8) -> Option<Self> {
        match id {
            0 => Some(CodecId::Store),
            1 => Some(CodecId::Baseline),
            2 => Some(CodecId::External),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CodecId::Store => "store",
            CodecId::Baseline => "baseline",
            CodecId::External => "external",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "store" => Some(CodecId::Store),
            "baseline" => Some(CodecId::Baseline),
            "external" => Some(CodecId::External),
            _ => None,
        }
    }
}

impl std::fmt::Display for CodecId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One compressed chunk: payload plus the exact pre-compression length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedChunk {
    pub payload: Vec<u8>,
    pub original_len: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("empty input")]
    EmptyInput,
    #[error("unknown codec id {0}")]
    UnknownCodec(u8),
    #[error("external codec unavailable (built without the external-zstd feature)")]
    CodecUnavailable,
    #[error("corrupt stream at byte offset {offset}: {reason}")]
    DecodeError { offset: usize, reason: &'static str },
    #[error("decoded length {got} differs from recorded original length {want}")]
    LengthMismatch { got: usize, want: usize },
}

/// Compress one chunk with the selected codec. Deterministic per codec
/// version: identical input yields identical payload bytes.
pub fn compress(data: &[u8], codec: CodecId) -> Result<CompressedChunk, CodecError> {
    if data.is_empty() {
        return Err(CodecError::EmptyInput);
    }
    let payload = match codec {
        CodecId::Store => data.to_vec(),
        CodecId::Baseline => baseline_compress(data),
        CodecId::External => external_compress(data)?,
    };
    Ok(CompressedChunk {
        payload,
        original_len: data.len(),
    })
}

/// Decompress one chunk. Corrupt payloads yield an error, never silent
/// wrong-length output.
pub fn decompress(chunk: &CompressedChunk, codec: CodecId) -> Result<Vec<u8>, CodecError> {
    let out = match codec {
        CodecId::Store => {
            if chunk.payload.len() != chunk.original_len {
                return Err(CodecError::LengthMismatch {
                    got: chunk.payload.len(),
                    want: chunk.original_len,
                });
            }
            chunk.payload.clone()
        }
        CodecId::Baseline => baseline_decompress(&chunk.payload, chunk.original_len)?,
        CodecId::External => external_decompress(&chunk.payload, chunk.original_len)?,
    };
    if out.len() != chunk.original_len {
        return Err(CodecError::LengthMismatch {
            got: out.len(),
            want: chunk.original_len,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Baseline codec
// ---------------------------------------------------------------------------

/// Length bucketing: length 4..=258 maps to (symbol, extra-bit count,
/// extra-bit value).
fn length_code(len: usize) -> (u16, u32, u32) {
    debug_assert!((lzss::MIN_MATCH..=lzss::MAX_MATCH).contains(&len));
    let v = (len - lzss::MIN_MATCH) as u32;
    if v < 8 {
        (257 + v as u16, 0, 0)
    } else {
        let msb = 31 - v.leading_zeros();
        let bucket = 5 + msb;
        (257 + bucket as u16, msb, v - (1 << msb))
    }
}

fn length_decode(bucket: u16, reader: &mut BitReader<'_>) -> Option<usize> {
    let k = bucket as u32;
    let v = if k < 8 {
        k
    } else {
        let msb = k - 5;
        if msb > 7 {
            return None;
        }
        (1 << msb) + reader.read_bits(msb)?
    };
    let len = v as usize + lzss::MIN_MATCH;
    (len <= lzss::MAX_MATCH).then_some(len)
}

/// Distance bucketing: distance 1..=32768 maps to (symbol, extra-bit count,
/// extra-bit value).
fn distance_code(dist: usize) -> (u16, u32, u32) {
    debug_assert!((1..=lzss::WINDOW_SIZE).contains(&dist));
    let w = (dist - 1) as u32;
    if w < 4 {
        (w as u16, 0, 0)
    } else {
        let msb = 31 - w.leading_zeros();
        let half = (w >> (msb - 1)) & 1;
        let base = (1 << msb) | (half << (msb - 1));
        ((2 * msb + half) as u16, msb - 1, w - base)
    }
}

fn distance_decode(bucket: u16, reader: &mut BitReader<'_>) -> Option<usize> {
    let k = bucket as u32;
    let w = if k < 4 {
        k
    } else {
        let msb = k / 2;
        if msb > 14 {
            return None;
        }
        let half = k & 1;
        let base = (1 << msb) | (half << (msb - 1));
        base + reader.read_bits(msb - 1)?
    };
    Some(w as usize + 1)
}

fn pack_nibbles(lengths: &[u8], out: &mut Vec<u8>) {
    for pair in lengths.chunks(2) {
        let hi = pair[0] & 0x0f;
        let lo = pair.get(1).copied().unwrap_or(0) & 0x0f;
        out.push((hi << 4) | lo);
    }
}

fn unpack_nibbles(bytes: &[u8], count: usize) -> Vec<u8> {
    let mut lengths = Vec::with_capacity(count);
    for i in 0..count {
        let byte = bytes[i / 2];
        lengths.push(if i % 2 == 0 { byte >> 4 } else { byte & 0x0f });
    }
    lengths
}

fn baseline_compress(data: &[u8]) -> Vec<u8> {
    let tokens = lzss::tokenize(data);

    let mut litlen_freq = [0u64; LITLEN_SYMBOLS];
    let mut dist_freq = [0u64; DIST_SYMBOLS];
    litlen_freq[END_OF_BLOCK as usize] = 1;
    for token in &tokens {
        match *token {
            Token::Literal(b) => litlen_freq[b as usize] += 1,
            Token::Match { len, dist } => {
                litlen_freq[length_code(len as usize).0 as usize] += 1;
                dist_freq[distance_code(dist as usize).0 as usize] += 1;
            }
        }
    }

    let litlen_lengths = build_code_lengths(&litlen_freq);
    let dist_lengths = build_code_lengths(&dist_freq);
    let litlen_codes = canonical_codes(&litlen_lengths);
    let dist_codes = canonical_codes(&dist_lengths);

    let mut coded = vec![MODE_CODED];
    pack_nibbles(&litlen_lengths, &mut coded);
    pack_nibbles(&dist_lengths, &mut coded);
    let mut writer = BitWriter::with_buffer(coded);
    let mut emit = |sym: u16, extra_bits: u32, extra: u32, lens: &[u8], codes: &[u32]| {
        writer.write_bits(codes[sym as usize], lens[sym as usize] as u32);
        if extra_bits > 0 {
            writer.write_bits(extra, extra_bits);
        }
    };
    for token in &tokens {
        match *token {
            Token::Literal(b) => emit(b as u16, 0, 0, &litlen_lengths, &litlen_codes),
            Token::Match { len, dist } => {
                let (lsym, lbits, lextra) = length_code(len as usize);
                emit(lsym, lbits, lextra, &litlen_lengths, &litlen_codes);
                let (dsym, dbits, dextra) = distance_code(dist as usize);
                emit(dsym, dbits, dextra, &dist_lengths, &dist_codes);
            }
        }
    }
    emit(END_OF_BLOCK, 0, 0, &litlen_lengths, &litlen_codes);
    let coded = writer.finish();

    // Raw fallback keeps worst-case expansion at one byte per chunk.
    if coded.len() > data.len() {
        let mut raw = Vec::with_capacity(data.len() + 1);
        raw.push(MODE_RAW);
        raw.extend_from_slice(data);
        raw
    } else {
        coded
    }
}

fn baseline_decompress(payload: &[u8], original_len: usize) -> Result<Vec<u8>, CodecError> {
    let fail = |offset: usize, reason: &'static str| CodecError::DecodeError { offset, reason };
    let (&mode, rest) = payload
        .split_first()
        .ok_or_else(|| fail(0, "missing mode byte"))?;
    match mode {
        MODE_RAW => Ok(rest.to_vec()),
        MODE_CODED => {
            let litlen_table = LITLEN_SYMBOLS.div_ceil(2);
            let dist_table = DIST_SYMBOLS.div_ceil(2);
            if rest.len() < litlen_table + dist_table {
                return Err(fail(payload.len(), "truncated code-length tables"));
            }
            let litlen_lengths = unpack_nibbles(&rest[..litlen_table], LITLEN_SYMBOLS);
            let dist_lengths =
                unpack_nibbles(&rest[litlen_table..litlen_table + dist_table], DIST_SYMBOLS);
            let litlen = CanonicalDecoder::new(&litlen_lengths)
                .ok_or_else(|| fail(1, "oversubscribed literal/length code"))?;
            let dist = CanonicalDecoder::new(&dist_lengths)
                .ok_or_else(|| fail(1 + litlen_table, "oversubscribed distance code"))?;

            let body = &rest[litlen_table + dist_table..];
            let table_bytes = 1 + litlen_table + dist_table;
            let mut reader = BitReader::new(body);
            let mut out: Vec<u8> = Vec::with_capacity(original_len);
            loop {
                let offset = table_bytes + reader.byte_offset();
                let sym = litlen
                    .decode(&mut reader)
                    .ok_or_else(|| fail(offset, "bad literal/length code"))?;
                if sym == END_OF_BLOCK {
                    break;
                }
                if sym < 256 {
                    out.push(sym as u8);
                } else {
                    let len = length_decode(sym - 257, &mut reader)
                        .ok_or_else(|| fail(offset, "bad match length"))?;
                    if dist.is_empty() {
                        return Err(fail(offset, "match with empty distance alphabet"));
                    }
                    let dsym = dist
                        .decode(&mut reader)
                        .ok_or_else(|| fail(offset, "bad distance code"))?;
                    let distance = distance_decode(dsym, &mut reader)
                        .ok_or_else(|| fail(offset, "bad distance extra bits"))?;
                    if distance > out.len() {
                        return Err(fail(offset, "distance reaches before stream start"));
                    }
                    let start = out.len() - distance;
                    for i in 0..len {
                        let b = out[start + i];
                        out.push(b);
                    }
                }
                if out.len() > original_len {
                    return Err(fail(offset, "output exceeds recorded length"));
                }
            }
            if reader.bits_remaining() >= 8 {
                return Err(fail(
                    table_bytes + reader.byte_offset(),
                    "trailing bytes after end of block",
                ));
            }
            Ok(out)
        }
        _ => Err(fail(0, "unknown baseline mode byte")),
    }
}

// ---------------------------------------------------------------------------
// External codec
// ---------------------------------------------------------------------------

#[cfg(feature = "external-zstd")]
fn external_compress(data: &[u8]) -> Result<Vec<u8>, CodecError> {
    zstd::bulk::compress(data, 3).map_err(|_| CodecError::DecodeError {
        offset: 0,
        reason: "external compressor failed",
    })
}

#[cfg(feature = "external-zstd")]
fn external_decompress(payload: &[u8], original_len: usize) -> Result<Vec<u8>, CodecError> {
    zstd::bulk::decompress(payload, original_len).map_err(|_| CodecError::DecodeError {
        offset: 0,
        reason: "external decompressor rejected payload",
    })
}

#[cfg(not(feature = "external-zstd"))]
fn external_compress(_data: &[u8]) -> Result<Vec<u8>, CodecError> {
    Err(CodecError::CodecUnavailable)
}

#[cfg(not(feature = "external-zstd"))]
fn external_decompress(_payload: &[u8], _original_len: usize) -> Result<Vec<u8>, CodecError> {
    Err(CodecError::CodecUnavailable)
}

// ---------------------------------------------------------------------------
// Benchmark harness
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct CodecBenchRow {
    pub codec: CodecId,
    /// original size / compressed size.
    pub ratio: f64,
    pub compress_secs: f64,
    pub decompress_secs: f64,
}

/// Measure ratio and wall-clock time per codec over one corpus.
pub fn compression_benchmark(
    corpus: &[u8],
    codecs: &[CodecId],
) -> Result<Vec<CodecBenchRow>, CodecError> {
    if corpus.is_empty() {
        return Err(CodecError::EmptyInput);
    }
    let mut rows = Vec::with_capacity(codecs.len());
    for &codec in codecs {
        let started = Instant::now();
        let chunk = compress(corpus, codec)?;
        let compress_secs = started.elapsed().as_secs_f64();
        let started = Instant::now();
        let back = decompress(&chunk, codec)?;
        let decompress_secs = started.elapsed().as_secs_f64();
        debug_assert_eq!(back, corpus);
        rows.push(CodecBenchRow {
            codec,
            ratio: corpus.len() as f64 / chunk.payload.len() as f64,
            compress_secs,
            decompress_secs,
        });
    }
    Ok(rows)
}
