//! The secret key: three map subkeys plus the permutation threshold byte,
//! with validation, a binary key-file format, and keyspace accounting.
//!
//! A key holds 12 fixed-point components (2 Logistic, 4 Henon, 6 Lorenz,
//! each a 32-bit raw word) and one threshold byte. Validation combines
//! range checks against each map's chaotic region with a warm-up run that
//! rejects divergence and exact state repetition.

use crate::chaos::{ChaosError, HenonState, LogisticState, LorenzState, MapGenerator, MapId};
use crate::fxp::{Fx32, QFormat};
use rand::RngCore;
use thiserror::Error;

pub const KEY_FILE_MAGIC: [u8; 4] = *b"SOCK";
pub const KEY_FILE_VERSION: u8 = 0x01;
/// magic + version + 12 raw words + threshold + crc32.
pub const KEY_FILE_LEN: usize = 4 + 1 + KEY_COMPONENT_COUNT * 4 + 1 + 4;
/// Fixed-point key components: 2 Logistic + 4 Henon + 6 Lorenz.
pub const KEY_COMPONENT_COUNT: usize = 12;
/// Total secret bits: the component words plus the threshold byte.
pub const KEY_SECRET_BITS: usize = KEY_COMPONENT_COUNT * 32 + 8;

/// Permutation subkey: Logistic seed, control parameter, and the swap
/// threshold compared against keystream bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogisticSubkey {
    pub x0: Fx32,
    pub mu: Fx32,
    pub threshold: u8,
}

/// First substitution subkey: Henon seed and parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HenonSubkey {
    pub x0: Fx32,
    pub y0: Fx32,
    pub a: Fx32,
    pub b: Fx32,
}

/// Second substitution subkey: Lorenz seed and parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LorenzSubkey {
    pub x0: Fx32,
    pub y0: Fx32,
    pub z0: Fx32,
    pub sigma: Fx32,
    pub rho: Fx32,
    pub beta: Fx32,
}

/// The full secret key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChaosKey {
    pub permutation: LogisticSubkey,
    pub henon: HenonSubkey,
    pub lorenz: LorenzSubkey,
}

/// Validated parameter ranges. Logistic and Henon bounds bracket the known
/// chaotic regions around the reference parameters; the Lorenz box brackets
/// (10, 28, 8/3) where the classic attractor persists.
pub mod ranges {
    pub const LOGISTIC_MU: (f64, f64) = (3.57, 4.0);
    pub const HENON_A: (f64, f64) = (1.35, 1.42);
    pub const HENON_B: (f64, f64) = (0.25, 0.31);
    pub const LORENZ_SIGMA: (f64, f64) = (9.0, 11.0);
    pub const LORENZ_RHO: (f64, f64) = (26.0, 30.0);
    pub const LORENZ_BETA: (f64, f64) = (2.2, 3.0);
    pub const LORENZ_SEED_XY_ABS: f64 = 20.0;
    pub const LORENZ_SEED_Z: (f64, f64) = (0.0, 50.0);
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KeyViolation {
    #[error("logistic fixed point seed (x0 in {{0, 0.5, 1}})")]
    LogisticFixedPointSeed,
    #[error("logistic x0 outside (0, 1)")]
    LogisticSeedOutOfRange,
    #[error("logistic mu outside chaotic range [3.57,4)")]
    LogisticMuOutOfRange,
    #[error("henon a outside validated box [1.35, 1.42]")]
    HenonParamAOutOfRange,
    #[error("henon b outside validated box [0.25, 0.31]")]
    HenonParamBOutOfRange,
    #[error("lorenz seed on the invariant x = y = 0 axis")]
    LorenzDegenerateSeed,
    #[error("lorenz seed outside validated region")]
    LorenzSeedOutOfRange,
    #[error("lorenz sigma outside [9, 11]")]
    LorenzSigmaOutOfRange,
    #[error("lorenz rho outside [26, 30]")]
    LorenzRhoOutOfRange,
    #[error("lorenz beta outside [2.2, 3.0]")]
    LorenzBetaOutOfRange,
    #[error("{map} warm-up failed: {source}")]
    WarmUpFailed { map: MapId, source: ChaosError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum KeyWarning {
    /// T in {0, 255} makes the merge loop swap always or never; the
    /// Fisher-Yates phase still permutes, so the key stays usable.
    #[error("degenerate threshold byte {0:#04x}")]
    DegenerateThreshold(u8),
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<KeyViolation>,
    pub warnings: Vec<KeyWarning>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum KeyError {
    #[error("key generation failed after {attempts} rejection attempts")]
    KeyGenFailure { attempts: u32 },
    #[error("bad key file magic")]
    BadMagic,
    #[error("unsupported key file version {0:#04x}")]
    BadVersion(u8),
    #[error("bad key file length {got}, expected {KEY_FILE_LEN}")]
    BadLength { got: usize },
    #[error("key file crc mismatch")]
    CrcMismatch,
    #[error("key failed validation: {}", format_violations(.0))]
    Invalid(Vec<KeyViolation>),
}

fn format_violations(violations: &[KeyViolation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

impl ChaosKey {
    /// The 12 secret raw words in canonical serialization order.
    pub fn component_words(&self) -> [i32; KEY_COMPONENT_COUNT] {
        [
            self.permutation.x0.raw(),
            self.permutation.mu.raw(),
            self.henon.x0.raw(),
            self.henon.y0.raw(),
            self.henon.a.raw(),
            self.henon.b.raw(),
            self.lorenz.x0.raw(),
            self.lorenz.y0.raw(),
            self.lorenz.z0.raw(),
            self.lorenz.sigma.raw(),
            self.lorenz.rho.raw(),
            self.lorenz.beta.raw(),
        ]
    }

    /// Rebuild from canonical component words. No validation is performed.
    pub fn from_words(words: &[i32; KEY_COMPONENT_COUNT], threshold: u8) -> ChaosKey {
        let q2 = |raw| Fx32::from_raw(raw, QFormat::Q2);
        let q4 = |raw| Fx32::from_raw(raw, QFormat::Q4);
        let q10 = |raw| Fx32::from_raw(raw, QFormat::Q10);
        ChaosKey {
            permutation: LogisticSubkey {
                x0: q2(words[0]),
                mu: q2(words[1]),
                threshold,
            },
            henon: HenonSubkey {
                x0: q4(words[2]),
                y0: q4(words[3]),
                a: q4(words[4]),
                b: q4(words[5]),
            },
            lorenz: LorenzSubkey {
                x0: q10(words[6]),
                y0: q10(words[7]),
                z0: q10(words[8]),
                sigma: q10(words[9]),
                rho: q10(words[10]),
                beta: q10(words[11]),
            },
        }
    }

    pub fn logistic_state(&self) -> LogisticState {
        LogisticState::new(self.permutation.x0, self.permutation.mu)
    }

    pub fn henon_state(&self) -> HenonState {
        HenonState::new(self.henon.x0, self.henon.y0, self.henon.a, self.henon.b)
    }

    pub fn lorenz_state(&self) -> LorenzState {
        LorenzState::new(
            self.lorenz.x0,
            self.lorenz.y0,
            self.lorenz.z0,
            self.lorenz.sigma,
            self.lorenz.rho,
            self.lorenz.beta,
        )
    }
}

fn in_range(v: Fx32, (lo, hi): (f64, f64)) -> bool {
    let x = v.to_f64();
    x >= lo && x <= hi
}

/// Check every component range, then run the warm-up guard on each map
/// whose parameters passed. Violations are data, not errors.
pub fn validate_key(key: &ChaosKey) -> ValidationReport {
    let mut report = ValidationReport::default();
    let violations = &mut report.violations;

    // Logistic subkey.
    let x0 = key.permutation.x0.to_f64();
    if !(0.0..=1.0).contains(&x0) {
        violations.push(KeyViolation::LogisticSeedOutOfRange);
    } else if x0 == 0.0 || x0 == 0.5 || x0 == 1.0 {
        violations.push(KeyViolation::LogisticFixedPointSeed);
    }
    let mu = key.permutation.mu.to_f64();
    if !(mu >= ranges::LOGISTIC_MU.0 && mu < ranges::LOGISTIC_MU.1) {
        violations.push(KeyViolation::LogisticMuOutOfRange);
    }
    if matches!(key.permutation.threshold, 0 | 255) {
        report
            .warnings
            .push(KeyWarning::DegenerateThreshold(key.permutation.threshold));
    }

    // Henon subkey.
    if !in_range(key.henon.a, ranges::HENON_A) {
        violations.push(KeyViolation::HenonParamAOutOfRange);
    }
    if !in_range(key.henon.b, ranges::HENON_B) {
        violations.push(KeyViolation::HenonParamBOutOfRange);
    }

    // Lorenz subkey. The x = y = 0 axis is invariant and decays to the
    // origin, so it is rejected along with seeds far off the attractor.
    if key.lorenz.x0.raw() == 0 && key.lorenz.y0.raw() == 0 {
        violations.push(KeyViolation::LorenzDegenerateSeed);
    } else if key.lorenz.x0.to_f64().abs() > ranges::LORENZ_SEED_XY_ABS
        || key.lorenz.y0.to_f64().abs() > ranges::LORENZ_SEED_XY_ABS
        || !in_range(key.lorenz.z0, ranges::LORENZ_SEED_Z)
    {
        violations.push(KeyViolation::LorenzSeedOutOfRange);
    }
    if !in_range(key.lorenz.sigma, ranges::LORENZ_SIGMA) {
        violations.push(KeyViolation::LorenzSigmaOutOfRange);
    }
    if !in_range(key.lorenz.rho, ranges::LORENZ_RHO) {
        violations.push(KeyViolation::LorenzRhoOutOfRange);
    }
    if !in_range(key.lorenz.beta, ranges::LORENZ_BETA) {
        violations.push(KeyViolation::LorenzBetaOutOfRange);
    }

    // Warm-up guards, run only for maps whose static checks passed.
    let logistic_ok = !violations.iter().any(|v| {
        matches!(
            v,
            KeyViolation::LogisticFixedPointSeed
                | KeyViolation::LogisticSeedOutOfRange
                | KeyViolation::LogisticMuOutOfRange
        )
    });
    if logistic_ok {
        if let Err(source) = MapGenerator::logistic(key.logistic_state()).warm_up() {
            violations.push(KeyViolation::WarmUpFailed {
                map: MapId::Logistic,
                source,
            });
        }
    }
    let henon_ok = !violations.iter().any(|v| {
        matches!(
            v,
            KeyViolation::HenonParamAOutOfRange | KeyViolation::HenonParamBOutOfRange
        )
    });
    if henon_ok {
        if let Err(source) = MapGenerator::henon(key.henon_state()).warm_up() {
            violations.push(KeyViolation::WarmUpFailed {
                map: MapId::Henon,
                source,
            });
        }
    }
    let lorenz_ok = !violations.iter().any(|v| {
        matches!(
            v,
            KeyViolation::LorenzDegenerateSeed
                | KeyViolation::LorenzSeedOutOfRange
                | KeyViolation::LorenzSigmaOutOfRange
                | KeyViolation::LorenzRhoOutOfRange
                | KeyViolation::LorenzBetaOutOfRange
        )
    });
    if lorenz_ok {
        if let Err(source) = MapGenerator::lorenz(key.lorenz_state()).warm_up() {
            violations.push(KeyViolation::WarmUpFailed {
                map: MapId::Lorenz,
                source,
            });
        }
    }

    report
}

const KEYGEN_MAX_ATTEMPTS: u32 = 1000;

fn sample_raw(rng: &mut dyn RngCore, lo: f64, hi: f64, q: QFormat) -> Fx32 {
    let lo_raw = (lo * q.scale()).ceil() as i64;
    let hi_raw = (hi * q.scale()).floor() as i64;
    debug_assert!(lo_raw <= hi_raw);
    let span = (hi_raw - lo_raw + 1) as u64;
    let raw = lo_raw + (rng.next_u64() % span) as i64;
    Fx32::from_raw(raw as i32, q)
}

/// Rejection-sample a valid key from the supplied entropy source.
pub fn keygen(rng: &mut dyn RngCore) -> Result<ChaosKey, KeyError> {
    for _ in 0..KEYGEN_MAX_ATTEMPTS {
        let q2 = QFormat::Q2;
        let q4 = QFormat::Q4;
        let q10 = QFormat::Q10;
        let key = ChaosKey {
            permutation: LogisticSubkey {
                // Open interval (0, 1); 0.5 is rejected by validation.
                x0: Fx32::from_raw((1 + rng.next_u64() % ((1 << 29) - 1)) as i32, q2),
                mu: sample_raw(rng, ranges::LOGISTIC_MU.0, ranges::LOGISTIC_MU.1 - 1e-9, q2),
                threshold: (rng.next_u64() & 0xff) as u8,
            },
            henon: HenonSubkey {
                x0: sample_raw(rng, -0.5, 0.5, q4),
                y0: sample_raw(rng, -0.5, 0.5, q4),
                a: sample_raw(rng, ranges::HENON_A.0, ranges::HENON_A.1, q4),
                b: sample_raw(rng, ranges::HENON_B.0, ranges::HENON_B.1, q4),
            },
            lorenz: LorenzSubkey {
                x0: sample_raw(rng, -15.0, 15.0, q10),
                y0: sample_raw(rng, -15.0, 15.0, q10),
                z0: sample_raw(rng, 5.0, 45.0, q10),
                sigma: sample_raw(rng, ranges::LORENZ_SIGMA.0, ranges::LORENZ_SIGMA.1, q10),
                rho: sample_raw(rng, ranges::LORENZ_RHO.0, ranges::LORENZ_RHO.1, q10),
                beta: sample_raw(rng, ranges::LORENZ_BETA.0, ranges::LORENZ_BETA.1, q10),
            },
        };
        if validate_key(&key).is_valid() {
            return Ok(key);
        }
    }
    Err(KeyError::KeyGenFailure {
        attempts: KEYGEN_MAX_ATTEMPTS,
    })
}

/// Serialize to the binary key-file format. The trailing CRC32 detects
/// corruption; nothing in this format authenticates the key.
pub fn serialize_key(key: &ChaosKey) -> Vec<u8> {
    let mut out = Vec::with_capacity(KEY_FILE_LEN);
    out.extend_from_slice(&KEY_FILE_MAGIC);
    out.push(KEY_FILE_VERSION);
    for word in key.component_words() {
        out.extend_from_slice(&(word as u32).to_be_bytes());
    }
    out.push(key.permutation.threshold);
    let crc = crc32fast::hash(&out);
    out.extend_from_slice(&crc.to_be_bytes());
    debug_assert_eq!(out.len(), KEY_FILE_LEN);
    out
}

/// Parse and fully validate a key file.
pub fn parse_key(bytes: &[u8]) -> Result<ChaosKey, KeyError> {
    if bytes.len() != KEY_FILE_LEN {
        return Err(KeyError::BadLength { got: bytes.len() });
    }
    if bytes[0..4] != KEY_FILE_MAGIC {
        return Err(KeyError::BadMagic);
    }
    if bytes[4] != KEY_FILE_VERSION {
        return Err(KeyError::BadVersion(bytes[4]));
    }
    let crc_offset = KEY_FILE_LEN - 4;
    let stored = u32::from_be_bytes(bytes[crc_offset..].try_into().unwrap());
    if crc32fast::hash(&bytes[..crc_offset]) != stored {
        return Err(KeyError::CrcMismatch);
    }
    let mut words = [0i32; KEY_COMPONENT_COUNT];
    for (i, word) in words.iter_mut().enumerate() {
        let at = 5 + 4 * i;
        *word = u32::from_be_bytes(bytes[at..at + 4].try_into().unwrap()) as i32;
    }
    let threshold = bytes[crc_offset - 1];
    let key = ChaosKey::from_words(&words, threshold);
    let report = validate_key(&key);
    if !report.is_valid() {
        return Err(KeyError::Invalid(report.violations));
    }
    Ok(key)
}

/// Base-10 exponent of the keyspace: `components` subkey values at
/// `precision_digits` decimal digits of resolution each.
pub fn keyspace_exponent(precision_digits: u32, components: u32) -> u32 {
    precision_digits * components
}
