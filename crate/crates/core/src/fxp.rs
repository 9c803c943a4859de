//! Deterministic 32-bit fixed-point arithmetic.
//!
//! Every cipher-side map iteration runs on [`Fx32`] words so that a keystream
//! generated on one machine is bit-identical on any other. A word carries its
//! Q format: `F` integer bits, one sign bit, and `31 - F` fractional bits,
//! representing `raw / 2^(31-F)` over the range `[-2^F, 2^F)`.
//!
//! Multiplication truncates toward negative infinity (a plain arithmetic
//! shift of the 64-bit product). Results that fall outside the representable
//! range saturate to the nearest bound and carry a sticky saturation flag, so
//! a divergent trajectory is detectable instead of silently wrapping into an
//! aliased state.

use thiserror::Error;

/// Q format of a fixed-point word: the number of integer bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QFormat {
    /// 2 integer bits, 29 fractional: range [-4, 4). Logistic/Tent domain.
    Q2,
    /// 4 integer bits, 27 fractional: range [-16, 16). Henon domain.
    Q4,
    /// 10 integer bits, 21 fractional: range [-1024, 1024). Lorenz domain.
    Q10,
}

impl QFormat {
    pub const fn integer_bits(self) -> u32 {
        match self {
            QFormat::Q2 => 2,
            QFormat::Q4 => 4,
            QFormat::Q10 => 10,
        }
    }

    pub const fn frac_bits(self) -> u32 {
        31 - self.integer_bits()
    }

    /// 2^frac_bits as f64, the value of one integer unit in raw counts.
    pub fn scale(self) -> f64 {
        (1i64 << self.frac_bits()) as f64
    }

    /// Token used in the golden-vector file format.
    pub fn token(self) -> &'static str {
        match self {
            QFormat::Q2 => "q2",
            QFormat::Q4 => "q4",
            QFormat::Q10 => "q10",
        }
    }

    pub fn from_token(s: &str) -> Option<Self> {
        match s {
            "q2" => Some(QFormat::Q2),
            "q4" => Some(QFormat::Q4),
            "q10" => Some(QFormat::Q10),
            _ => None,
        }
    }
}

impl std::fmt::Display for QFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Q{}.{}", self.integer_bits(), self.frac_bits())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FxError {
    #[error("q-format mismatch: {lhs} vs {rhs}")]
    FormatMismatch { lhs: QFormat, rhs: QFormat },
}

/// A signed 32-bit fixed-point word in one of the supported Q formats.
///
/// The saturation flag is sticky: it is set when an operation overflows and
/// propagates through subsequent operations, so checking the final value of a
/// compound expression is enough to detect that any step saturated.
#[derive(Debug, Clone, Copy)]
pub struct Fx32 {
    raw: i32,
    q: QFormat,
    saturated: bool,
}

impl PartialEq for Fx32 {
    /// Numeric equality: raw word and format. The saturation flag is
    /// diagnostic state, not part of the value.
    fn eq(&self, other: &Self) -> bool {
        self.raw == other.raw && self.q == other.q
    }
}

impl Eq for Fx32 {}

#[allow(clippy::should_implement_trait)] // fallible arithmetic cannot go through std::ops
impl Fx32 {
    pub const fn from_raw(raw: i32, q: QFormat) -> Self {
        Fx32 {
            raw,
            q,
            saturated: false,
        }
    }

    pub const fn zero(q: QFormat) -> Self {
        Fx32::from_raw(0, q)
    }

    pub const fn one(q: QFormat) -> Self {
        Fx32::from_raw(1 << q.frac_bits(), q)
    }

    /// Convert from f64, truncating toward negative infinity; out-of-range
    /// values saturate with the flag set.
    pub fn from_f64(v: f64, q: QFormat) -> Self {
        let scaled = (v * q.scale()).floor();
        if scaled >= i32::MAX as f64 {
            Fx32 {
                raw: i32::MAX,
                q,
                saturated: true,
            }
        } else if scaled <= i32::MIN as f64 {
            Fx32 {
                raw: i32::MIN,
                q,
                saturated: true,
            }
        } else {
            Fx32::from_raw(scaled as i32, q)
        }
    }

    pub fn to_f64(self) -> f64 {
        self.raw as f64 / self.q.scale()
    }

    pub const fn raw(self) -> i32 {
        self.raw
    }

    pub const fn qformat(self) -> QFormat {
        self.q
    }

    pub const fn saturated(self) -> bool {
        self.saturated
    }

    /// The 8 least-significant bits of the raw word, the cipher's byte
    /// extractor.
    pub const fn low_byte(self) -> u8 {
        (self.raw & 0xff) as u8
    }

    fn check_format(self, rhs: Self) -> Result<(), FxError> {
        if self.q != rhs.q {
            return Err(FxError::FormatMismatch {
                lhs: self.q,
                rhs: rhs.q,
            });
        }
        Ok(())
    }

    fn clamped(raw64: i64, q: QFormat, sticky: bool) -> Fx32 {
        if raw64 > i32::MAX as i64 {
            Fx32 {
                raw: i32::MAX,
                q,
                saturated: true,
            }
        } else if raw64 < i32::MIN as i64 {
            Fx32 {
                raw: i32::MIN,
                q,
                saturated: true,
            }
        } else {
            Fx32 {
                raw: raw64 as i32,
                q,
                saturated: sticky,
            }
        }
    }

    /// Fixed-point multiply: 64-bit product, arithmetic right shift by the
    /// fractional width (truncation toward negative infinity), saturate on
    /// overflow.
    pub fn mul(self, rhs: Self) -> Result<Self, FxError> {
        self.check_format(rhs)?;
        let prod = (self.raw as i64 * rhs.raw as i64) >> self.q.frac_bits();
        Ok(Self::clamped(prod, self.q, self.saturated || rhs.saturated))
    }

    pub fn add(self, rhs: Self) -> Result<Self, FxError> {
        self.check_format(rhs)?;
        let sum = self.raw as i64 + rhs.raw as i64;
        Ok(Self::clamped(sum, self.q, self.saturated || rhs.saturated))
    }

    pub fn sub(self, rhs: Self) -> Result<Self, FxError> {
        self.check_format(rhs)?;
        let diff = self.raw as i64 - rhs.raw as i64;
        Ok(Self::clamped(diff, self.q, self.saturated || rhs.saturated))
    }

    pub fn neg(self) -> Self {
        Self::clamped(-(self.raw as i64), self.q, self.saturated)
    }
}

/// Golden-vector file support for cross-platform determinism checks.
///
/// One record per line: `qformat op rawA rawB rawResult flag`, raw words as
/// 8-digit lowercase hex, flag `0`/`1`.
pub mod golden {
    use super::{Fx32, QFormat};

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub enum GoldenOp {
        Mul,
        Add,
        Sub,
    }

    impl GoldenOp {
        fn token(self) -> &'static str {
            match self {
                GoldenOp::Mul => "mul",
                GoldenOp::Add => "add",
                GoldenOp::Sub => "sub",
            }
        }

        fn from_token(s: &str) -> Option<Self> {
            match s {
                "mul" => Some(GoldenOp::Mul),
                "add" => Some(GoldenOp::Add),
                "sub" => Some(GoldenOp::Sub),
                _ => None,
            }
        }
    }

    #[derive(Debug, Clone, Copy, PartialEq, Eq)]
    pub struct GoldenEntry {
        pub q: QFormat,
        pub op: GoldenOp,
        pub a: i32,
        pub b: i32,
        pub result: i32,
        pub flag: bool,
    }

    #[derive(Debug, thiserror::Error, PartialEq, Eq)]
    pub enum GoldenParseError {
        #[error("line {line}: expected 6 fields, got {got}")]
        FieldCount { line: usize, got: usize },
        #[error("line {line}: bad field `{field}`")]
        BadField { line: usize, field: String },
    }

    /// Apply the recorded operation to the recorded operands.
    pub fn evaluate(e: &GoldenEntry) -> Fx32 {
        let a = Fx32::from_raw(e.a, e.q);
        let b = Fx32::from_raw(e.b, e.q);
        match e.op {
            GoldenOp::Mul => a.mul(b).expect("same format"),
            GoldenOp::Add => a.add(b).expect("same format"),
            GoldenOp::Sub => a.sub(b).expect("same format"),
        }
    }

    pub fn format_line(e: &GoldenEntry) -> String {
        format!(
            "{} {} {:08x} {:08x} {:08x} {}",
            e.q.token(),
            e.op.token(),
            e.a as u32,
            e.b as u32,
            e.result as u32,
            u8::from(e.flag)
        )
    }

    pub fn parse_line(line: &str, lineno: usize) -> Result<GoldenEntry, GoldenParseError> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 6 {
            return Err(GoldenParseError::FieldCount {
                line: lineno,
                got: fields.len(),
            });
        }
        let bad = |f: &str| GoldenParseError::BadField {
            line: lineno,
            field: f.to_string(),
        };
        let q = QFormat::from_token(fields[0]).ok_or_else(|| bad(fields[0]))?;
        let op = GoldenOp::from_token(fields[1]).ok_or_else(|| bad(fields[1]))?;
        let word = |f: &str| {
            u32::from_str_radix(f, 16)
                .map(|w| w as i32)
                .map_err(|_| bad(f))
        };
        let a = word(fields[2])?;
        let b = word(fields[3])?;
        let result = word(fields[4])?;
        let flag = match fields[5] {
            "0" => false,
            "1" => true,
            f => return Err(bad(f)),
        };
        Ok(GoldenEntry {
            q,
            op,
            a,
            b,
            result,
            flag,
        })
    }
}
