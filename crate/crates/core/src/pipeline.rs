//! End-to-end crypto-compression: chunking, the container format, the three
//! stage orderings, and their exact inverses.
//!
//! The default ordering permutes each 64-byte block of a chunk, compresses
//! the shuffled chunk, then substitutes the compressed bytes. One continuous
//! keystream per map spans the whole stream: the Logistic generator is
//! never reseeded between blocks or chunks, the substitution chain carries
//! its previous-ciphertext byte across chunk boundaries, and decryption
//! replays the identical byte consumption. The comparison orderings wrap
//! the same cipher around compression in the other two arrangements.
//!
//! Container layout (multi-byte integers little-endian):
//!
//! ```text
//! offset 0   magic "SOC1"
//!        4   version byte (1)
//!        5   codec id byte
//!        6   mode byte (0 = permute/compress/substitute, 1 = compress
//!            first, 2 = compress last)
//!        7   chunk size, u32
//!        11  original length, u64
//!        19  chunk count, u32
//!        23  per-chunk compressed lengths, u32 each
//!        ..  body: processed chunk bytes, concatenated
//! ```
//!
//! The header is neither encrypted nor authenticated: it reveals the
//! original and compressed lengths by design, and nothing protects the
//! container against tampering.

use crate::chaos::ChaosError;
use crate::chaos::MapGenerator;
use crate::codec::{self, CodecError, CodecId, CompressedChunk};
use crate::keys::{self, ChaosKey, KeyError};
use crate::permute::{self, PermuteError};
use crate::subst::SubstChain;
use std::io::{Read, Write};
use thiserror::Error;

pub const CONTAINER_MAGIC: [u8; 4] = *b"SOC1";
pub const CONTAINER_VERSION: u8 = 1;
pub const HEADER_LEN: usize = 23;
pub const MIN_CHUNK_SIZE: usize = 4 * 1024;
pub const MAX_CHUNK_SIZE: usize = 64 * 1024 * 1024;
pub const DEFAULT_CHUNK_SIZE: usize = 1024 * 1024;
/// Parser guard against hostile headers: 2^24 chunks is 16 TiB at the
/// default chunk size, far past anything this tool targets, while keeping
/// the table allocation bounded.
pub const MAX_CHUNK_COUNT: u32 = 1 << 24;

/// Stage ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineMode {
    /// permute -> compress -> substitute (the simultaneous scheme).
    Sce,
    /// compress -> permute -> substitute (compress-then-encrypt).
    Cte,
    /// permute -> substitute -> compress (encrypt-then-compress).
    Etc,
}

impl PipelineMode {
    pub const fn id(self) -> u8 {
        match self {
            PipelineMode::Sce => 0,
            PipelineMode::Cte => 1,
            PipelineMode::Etc => 2,
        }
    }

    pub fn from_id(id: u8) -> Option<Self> {
        match id {
            0 => Some(PipelineMode::Sce),
            1 => Some(PipelineMode::Cte),
            2 => Some(PipelineMode::Etc),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PipelineMode::Sce => "sce",
            PipelineMode::Cte => "cte",
            PipelineMode::Etc => "etc",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "sce" => Some(PipelineMode::Sce),
            "cte" => Some(PipelineMode::Cte),
            "etc" => Some(PipelineMode::Etc),
            _ => None,
        }
    }

    pub const ALL: [PipelineMode; 3] = [PipelineMode::Sce, PipelineMode::Cte, PipelineMode::Etc];
}

impl std::fmt::Display for PipelineMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("empty input")]
    EmptyInput,
    #[error("chunk size {0} outside [{MIN_CHUNK_SIZE}, {MAX_CHUNK_SIZE}]")]
    BadChunkSize(usize),
    #[error("container format error: {0}")]
    Format(&'static str),
    #[error("decode error at byte offset {offset}: {reason}")]
    Decode { offset: usize, reason: &'static str },
    #[error("integrity mismatch: {0}")]
    IntegrityMismatch(String),
    #[error("external codec unavailable")]
    CodecUnavailable,
    #[error(transparent)]
    Key(#[from] KeyError),
    #[error(transparent)]
    Chaos(#[from] ChaosError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<CodecError> for PipelineError {
    fn from(e: CodecError) -> Self {
        match e {
            CodecError::EmptyInput => PipelineError::EmptyInput,
            CodecError::UnknownCodec(_) => PipelineError::Format("unknown codec id"),
            CodecError::CodecUnavailable => PipelineError::CodecUnavailable,
            CodecError::DecodeError { offset, reason } => PipelineError::Decode { offset, reason },
            CodecError::LengthMismatch { got, want } => PipelineError::IntegrityMismatch(format!(
                "decoded length {got}, recorded length {want}"
            )),
        }
    }
}

impl From<PermuteError> for PipelineError {
    fn from(e: PermuteError) -> Self {
        match e {
            PermuteError::Chaos(c) => PipelineError::Chaos(c),
            PermuteError::BadBlockLen(_) => PipelineError::Format("zero-length block"),
        }
    }
}

/// Parsed container header.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainerHeader {
    pub codec: CodecId,
    pub mode: PipelineMode,
    pub chunk_size: u32,
    pub original_len: u64,
    pub chunk_lens: Vec<u32>,
}

impl ContainerHeader {
    pub fn body_len(&self) -> u64 {
        self.chunk_lens.iter().map(|&l| l as u64).sum()
    }

    pub fn encoded_len(&self) -> usize {
        HEADER_LEN + 4 * self.chunk_lens.len()
    }

    pub fn write_to(&self, w: &mut (impl Write + ?Sized)) -> std::io::Result<()> {
        w.write_all(&CONTAINER_MAGIC)?;
        w.write_all(&[CONTAINER_VERSION, self.codec.id(), self.mode.id()])?;
        w.write_all(&self.chunk_size.to_le_bytes())?;
        w.write_all(&self.original_len.to_le_bytes())?;
        w.write_all(&(self.chunk_lens.len() as u32).to_le_bytes())?;
        for &len in &self.chunk_lens {
            w.write_all(&len.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut (impl Read + ?Sized)) -> Result<Self, PipelineError> {
        let mut fixed = [0u8; HEADER_LEN];
        r.read_exact(&mut fixed)
            .map_err(|_| PipelineError::Format("container shorter than header"))?;
        if fixed[0..4] != CONTAINER_MAGIC {
            return Err(PipelineError::Format("bad container magic"));
        }
        if fixed[4] != CONTAINER_VERSION {
            return Err(PipelineError::Format("unsupported container version"));
        }
        let codec = CodecId::from_id(fixed[5]).ok_or(PipelineError::Format("unknown codec id"))?;
        let mode =
            PipelineMode::from_id(fixed[6]).ok_or(PipelineError::Format("unknown mode byte"))?;
        let chunk_size = u32::from_le_bytes(fixed[7..11].try_into().unwrap());
        let original_len = u64::from_le_bytes(fixed[11..19].try_into().unwrap());
        let chunk_count = u32::from_le_bytes(fixed[19..23].try_into().unwrap());
        if !(MIN_CHUNK_SIZE..=MAX_CHUNK_SIZE).contains(&(chunk_size as usize)) {
            return Err(PipelineError::Format("chunk size outside valid range"));
        }
        if original_len == 0 {
            return Err(PipelineError::Format("container records empty input"));
        }
        let expected_chunks = original_len.div_ceil(chunk_size as u64);
        if u64::from(chunk_count) != expected_chunks {
            return Err(PipelineError::Format(
                "chunk count inconsistent with original length",
            ));
        }
        if chunk_count > MAX_CHUNK_COUNT {
            return Err(PipelineError::Format("chunk count implausibly large"));
        }
        let mut chunk_lens = Vec::with_capacity(chunk_count as usize);
        let mut table = vec![0u8; 4 * chunk_count as usize];
        r.read_exact(&mut table)
            .map_err(|_| PipelineError::Format("truncated chunk table"))?;
        // No codec expands a chunk by more than a sliver, so a table entry
        // far beyond the chunk size cannot have come from the encoder;
        // rejecting it here also bounds decryption allocations.
        let max_entry = chunk_size as u64 + (chunk_size as u64) / 8 + 256;
        for quad in table.chunks_exact(4) {
            let len = u32::from_le_bytes(quad.try_into().unwrap());
            if len == 0 {
                return Err(PipelineError::Format("zero-length chunk in table"));
            }
            if u64::from(len) > max_entry {
                return Err(PipelineError::Format("chunk length exceeds codec bound"));
            }
            chunk_lens.push(len);
        }
        Ok(ContainerHeader {
            codec,
            mode,
            chunk_size,
            original_len,
            chunk_lens,
        })
    }

    /// Original (pre-compression) length of chunk `index`.
    fn plain_chunk_len(&self, index: usize) -> usize {
        let chunk_size = self.chunk_size as u64;
        let start = index as u64 * chunk_size;
        (self.original_len - start).min(chunk_size) as usize
    }
}

/// The three keystream consumers for one stream, warmed up and ready.
/// Chunks must be processed strictly in stream order.
pub struct CipherEngine {
    logistic: MapGenerator,
    threshold: u8,
    subst: SubstChain<MapGenerator, MapGenerator>,
}

impl CipherEngine {
    /// Validate the key and warm up all three generators.
    pub fn new(key: &ChaosKey) -> Result<Self, PipelineError> {
        let report = keys::validate_key(key);
        if !report.is_valid() {
            return Err(KeyError::Invalid(report.violations).into());
        }
        Ok(CipherEngine {
            logistic: MapGenerator::logistic(key.logistic_state()).warmed()?,
            threshold: key.permutation.threshold,
            subst: SubstChain::new(
                MapGenerator::henon(key.henon_state()).warmed()?,
                MapGenerator::lorenz(key.lorenz_state()).warmed()?,
            ),
        })
    }

    /// Keystream bytes consumed so far: (logistic, henon, lorenz).
    pub fn keystream_bytes(&self) -> (u64, u64, u64) {
        use crate::chaos::Keystream;
        let (h, l) = self.subst.keystream_bytes();
        (self.logistic.bytes_emitted(), h, l)
    }

    pub fn encrypt_chunk(
        &mut self,
        codec: CodecId,
        mode: PipelineMode,
        plain: &[u8],
    ) -> Result<Vec<u8>, PipelineError> {
        debug_assert!(!plain.is_empty());
        match mode {
            PipelineMode::Sce => {
                let mut shuffled = plain.to_vec();
                permute::shuffle_stream(&mut shuffled, &mut self.logistic, self.threshold)?;
                let mut body = codec::compress(&shuffled, codec)?.payload;
                self.subst.substitute(&mut body)?;
                Ok(body)
            }
            PipelineMode::Cte => {
                let mut body = codec::compress(plain, codec)?.payload;
                permute::shuffle_stream(&mut body, &mut self.logistic, self.threshold)?;
                self.subst.substitute(&mut body)?;
                Ok(body)
            }
            PipelineMode::Etc => {
                let mut work = plain.to_vec();
                permute::shuffle_stream(&mut work, &mut self.logistic, self.threshold)?;
                self.subst.substitute(&mut work)?;
                Ok(codec::compress(&work, codec)?.payload)
            }
        }
    }

    pub fn decrypt_chunk(
        &mut self,
        codec: CodecId,
        mode: PipelineMode,
        body: &[u8],
        plain_len: usize,
    ) -> Result<Vec<u8>, PipelineError> {
        match mode {
            PipelineMode::Sce => {
                let mut payload = body.to_vec();
                self.subst.desubstitute(&mut payload)?;
                let chunk = CompressedChunk {
                    payload,
                    original_len: plain_len,
                };
                let mut plain = codec::decompress(&chunk, codec)?;
                permute::deshuffle_stream(&mut plain, &mut self.logistic, self.threshold)?;
                Ok(plain)
            }
            PipelineMode::Cte => {
                let mut payload = body.to_vec();
                self.subst.desubstitute(&mut payload)?;
                permute::deshuffle_stream(&mut payload, &mut self.logistic, self.threshold)?;
                let chunk = CompressedChunk {
                    payload,
                    original_len: plain_len,
                };
                Ok(codec::decompress(&chunk, codec)?)
            }
            PipelineMode::Etc => {
                let chunk = CompressedChunk {
                    payload: body.to_vec(),
                    original_len: plain_len,
                };
                let mut plain = codec::decompress(&chunk, codec)?;
                self.subst.desubstitute(&mut plain)?;
                permute::deshuffle_stream(&mut plain, &mut self.logistic, self.threshold)?;
                Ok(plain)
            }
        }
    }
}

fn check_chunk_size(chunk_size: usize) -> Result<(), PipelineError> {
    if !(MIN_CHUNK_SIZE..=MAX_CHUNK_SIZE).contains(&chunk_size) {
        return Err(PipelineError::BadChunkSize(chunk_size));
    }
    Ok(())
}

/// Encrypt a byte buffer into a complete container.
pub fn encrypt(
    plaintext: &[u8],
    key: &ChaosKey,
    codec: CodecId,
    mode: PipelineMode,
    chunk_size: usize,
) -> Result<Vec<u8>, PipelineError> {
    if plaintext.is_empty() {
        return Err(PipelineError::EmptyInput);
    }
    check_chunk_size(chunk_size)?;
    let mut engine = CipherEngine::new(key)?;
    let mut bodies = Vec::with_capacity(plaintext.len().div_ceil(chunk_size));
    for chunk in plaintext.chunks(chunk_size) {
        bodies.push(engine.encrypt_chunk(codec, mode, chunk)?);
    }
    let header = ContainerHeader {
        codec,
        mode,
        chunk_size: chunk_size as u32,
        original_len: plaintext.len() as u64,
        chunk_lens: bodies.iter().map(|b| b.len() as u32).collect(),
    };
    let mut out = Vec::with_capacity(header.encoded_len() + header.body_len() as usize);
    header.write_to(&mut out).expect("vec write");
    for body in bodies {
        out.extend_from_slice(&body);
    }
    Ok(out)
}

/// Decrypt a complete container back to the original bytes.
pub fn decrypt(container: &[u8], key: &ChaosKey) -> Result<Vec<u8>, PipelineError> {
    let mut cursor = container;
    let header = ContainerHeader::read_from(&mut cursor)?;
    if cursor.len() as u64 != header.body_len() {
        return Err(PipelineError::IntegrityMismatch(format!(
            "body is {} bytes, chunk table sums to {}",
            cursor.len(),
            header.body_len()
        )));
    }
    let mut engine = CipherEngine::new(key)?;
    let mut out = Vec::with_capacity(header.original_len as usize);
    let mut offset = 0usize;
    for (index, &len) in header.chunk_lens.iter().enumerate() {
        let body = &cursor[offset..offset + len as usize];
        offset += len as usize;
        let plain = engine.decrypt_chunk(
            header.codec,
            header.mode,
            body,
            header.plain_chunk_len(index),
        )?;
        out.extend_from_slice(&plain);
    }
    if out.len() as u64 != header.original_len {
        return Err(PipelineError::IntegrityMismatch(format!(
            "decrypted {} bytes, header records {}",
            out.len(),
            header.original_len
        )));
    }
    Ok(out)
}

/// Parse a container held in memory into its header and body slice,
/// verifying that the body length matches the chunk table.
pub fn split_container(container: &[u8]) -> Result<(ContainerHeader, &[u8]), PipelineError> {
    let mut cursor = container;
    let header = ContainerHeader::read_from(&mut cursor)?;
    if cursor.len() as u64 != header.body_len() {
        return Err(PipelineError::IntegrityMismatch(format!(
            "body is {} bytes, chunk table sums to {}",
            cursor.len(),
            header.body_len()
        )));
    }
    Ok((header, cursor))
}

/// Encryption summary for streaming callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamSummary {
    pub original_len: u64,
    pub body_len: u64,
    pub chunk_count: u32,
}

/// Spool threshold for streaming encryption: compressed chunks beyond this
/// spill to a temporary file, keeping memory bounded by chunk size.
const SPOOL_MEMORY_LIMIT: usize = 8 * 1024 * 1024;

fn read_full(reader: &mut (impl Read + ?Sized), buf: &mut [u8]) -> std::io::Result<usize> {
    let mut filled = 0usize;
    while filled < buf.len() {
        match reader.read(&mut buf[filled..])? {
            0 => break,
            n => filled += n,
        }
    }
    Ok(filled)
}

/// Encrypt from a reader to a writer with bounded memory. The chunk table
/// lives in the header, so compressed chunks spool to a temporary file
/// until the input is exhausted, then header and body are emitted in order.
pub fn encrypt_stream(
    reader: &mut (impl Read + ?Sized),
    writer: &mut (impl Write + ?Sized),
    key: &ChaosKey,
    codec: CodecId,
    mode: PipelineMode,
    chunk_size: usize,
) -> Result<StreamSummary, PipelineError> {
    check_chunk_size(chunk_size)?;
    let mut engine = CipherEngine::new(key)?;
    let mut spool = tempfile::SpooledTempFile::new(SPOOL_MEMORY_LIMIT);
    let mut chunk_lens: Vec<u32> = Vec::new();
    let mut original_len = 0u64;
    let mut buf = vec![0u8; chunk_size];
    loop {
        let filled = read_full(reader, &mut buf)?;
        if filled == 0 {
            break;
        }
        original_len += filled as u64;
        let body = engine.encrypt_chunk(codec, mode, &buf[..filled])?;
        chunk_lens.push(body.len() as u32);
        spool.write_all(&body)?;
    }
    if original_len == 0 {
        return Err(PipelineError::EmptyInput);
    }
    let header = ContainerHeader {
        codec,
        mode,
        chunk_size: chunk_size as u32,
        original_len,
        chunk_lens,
    };
    header.write_to(writer)?;
    use std::io::Seek;
    spool.seek(std::io::SeekFrom::Start(0))?;
    let body_len = std::io::copy(&mut spool, writer)?;
    Ok(StreamSummary {
        original_len,
        body_len,
        chunk_count: header.chunk_lens.len() as u32,
    })
}

/// Decrypt from a reader to a writer, chunk by chunk.
pub fn decrypt_stream(
    reader: &mut (impl Read + ?Sized),
    writer: &mut (impl Write + ?Sized),
    key: &ChaosKey,
) -> Result<StreamSummary, PipelineError> {
    let header = ContainerHeader::read_from(reader)?;
    let mut engine = CipherEngine::new(key)?;
    let mut written = 0u64;
    for (index, &len) in header.chunk_lens.iter().enumerate() {
        let mut body = vec![0u8; len as usize];
        reader
            .read_exact(&mut body)
            .map_err(|_| PipelineError::IntegrityMismatch("truncated body".into()))?;
        let plain = engine.decrypt_chunk(
            header.codec,
            header.mode,
            &body,
            header.plain_chunk_len(index),
        )?;
        written += plain.len() as u64;
        writer.write_all(&plain)?;
    }
    if written != header.original_len {
        return Err(PipelineError::IntegrityMismatch(format!(
            "decrypted {written} bytes, header records {}",
            header.original_len
        )));
    }
    let mut probe = [0u8; 1];
    if reader.read(&mut probe)? != 0 {
        return Err(PipelineError::Format("trailing bytes after container"));
    }
    Ok(StreamSummary {
        original_len: header.original_len,
        body_len: header.body_len(),
        chunk_count: header.chunk_lens.len() as u32,
    })
}

/// One measurement row of the ordering/codec comparison.
#[derive(Debug, Clone)]
pub struct PipelineBenchRow {
    pub mode: PipelineMode,
    pub codec: CodecId,
    /// original length / ciphertext body length.
    pub ratio: f64,
    pub encrypt_secs: f64,
    pub decrypt_secs: f64,
}

/// Measure compression ratio and wall-clock encrypt/decrypt time for every
/// (mode, codec) combination over one corpus.
pub fn pipeline_benchmark(
    corpus: &[u8],
    key: &ChaosKey,
    modes: &[PipelineMode],
    codecs: &[CodecId],
    chunk_size: usize,
) -> Result<Vec<PipelineBenchRow>, PipelineError> {
    use std::time::Instant;
    let mut rows = Vec::with_capacity(modes.len() * codecs.len());
    for &mode in modes {
        for &codec in codecs {
            let started = Instant::now();
            let container = encrypt(corpus, key, codec, mode, chunk_size)?;
            let encrypt_secs = started.elapsed().as_secs_f64();
            let mut cursor = &container[..];
            let header = ContainerHeader::read_from(&mut cursor)?;
            let started = Instant::now();
            let back = decrypt(&container, key)?;
            let decrypt_secs = started.elapsed().as_secs_f64();
            debug_assert_eq!(back, corpus);
            rows.push(PipelineBenchRow {
                mode,
                codec,
                ratio: corpus.len() as f64 / header.body_len() as f64,
                encrypt_secs,
                decrypt_secs,
            });
        }
    }
    Ok(rows)
}
