//! Deterministic synthetic corpora for benchmarks, calibration, and tests.
//!
//! Everything here is seeded and stable across platforms and releases, so
//! measurement harnesses can promise reproducible CSV output.

/// SplitMix64: tiny, stable PRNG for corpus generation and fuzz vectors.
/// Not a cryptographic source; key generation uses the OS RNG instead.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, bound) via rejection; bound must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    pub fn f64_unit(&mut self) -> f64 {
        // 53 high bits -> [0, 1).
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn fill(&mut self, buf: &mut [u8]) {
        let mut chunks = buf.chunks_exact_mut(8);
        for chunk in &mut chunks {
            chunk.copy_from_slice(&self.next_u64().to_le_bytes());
        }
        let rest = chunks.into_remainder();
        if !rest.is_empty() {
            let w = self.next_u64().to_le_bytes();
            rest.copy_from_slice(&w[..rest.len()]);
        }
    }
}

// Lets the deterministic generator drive any RngCore consumer (key
// generation in tests, reproducible benchmark corpora).
impl rand::RngCore for SplitMix64 {
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        SplitMix64::next_u64(self)
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.fill(dest);
    }
}

/// Uniform random bytes; incompressible input for codec and cipher testing.
pub fn random_bytes(len: usize, seed: u64) -> Vec<u8> {
    let mut buf = vec![0u8; len];
    SplitMix64::new(seed).fill(&mut buf);
    buf
}

/// Independent bytes with Zipf(1) rank frequencies over the 256-symbol
/// alphabet: skewed order-0 statistics with no positional structure.
pub fn zipf_bytes(len: usize, seed: u64) -> Vec<u8> {
    let mut cdf = [0.0f64; 256];
    let mut total = 0.0;
    for (rank, slot) in cdf.iter_mut().enumerate() {
        total += 1.0 / (rank as f64 + 1.0);
        *slot = total;
    }
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let u = rng.f64_unit() * total;
        let sym = cdf.partition_point(|&c| c < u).min(255);
        out.push(sym as u8);
    }
    out
}

const VOCABULARY: &[&str] = &[
    "the", "of", "and", "to", "a", "in", "is", "it", "you", "that", "he", "was", "for", "on",
    "are", "with", "as", "his", "they", "be", "at", "one", "have", "this", "from", "or", "had",
    "by", "hot", "word", "but", "what", "some", "we", "can", "out", "other", "were", "all",
    "there", "when", "up", "use", "your", "how", "said", "an", "each", "she", "which", "do",
    "their", "time", "if", "will", "way", "about", "many", "then", "them", "write", "would",
    "like", "so", "these", "her", "long", "make", "thing", "see", "him", "two", "has", "look",
    "more", "day", "could", "go", "come", "did", "number", "sound", "no", "most", "people", "my",
    "over", "know", "water", "than", "call", "first", "who", "may", "down", "side", "been", "now",
    "find", "any", "new", "work", "part", "take", "get", "place", "made", "live", "where", "after",
    "back", "little", "only", "round", "man", "year", "came", "show", "every", "good", "me",
    "give", "our", "under",
];

/// Word-sampled text with Zipf rank frequencies: a stand-in for natural
/// language, with enough repetition for dictionary compression to bite.
pub fn synthetic_text(len: usize, seed: u64) -> Vec<u8> {
    let mut cdf = Vec::with_capacity(VOCABULARY.len());
    let mut total = 0.0;
    for rank in 0..VOCABULARY.len() {
        total += 1.0 / (rank as f64 + 1.0);
        cdf.push(total);
    }
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(len + 16);
    let mut words_in_sentence = 0usize;
    while out.len() < len {
        let u = rng.f64_unit() * total;
        let idx = cdf.partition_point(|&c| c < u).min(VOCABULARY.len() - 1);
        out.extend_from_slice(VOCABULARY[idx].as_bytes());
        words_in_sentence += 1;
        if words_in_sentence >= 8 + (rng.next_u64() % 8) as usize {
            out.extend_from_slice(b".\n");
            words_in_sentence = 0;
        } else {
            out.push(b' ');
        }
    }
    out.truncate(len);
    out
}
