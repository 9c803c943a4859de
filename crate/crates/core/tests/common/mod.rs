//! Helpers shared by the integration suites: the fixed keys behind the
//! committed keystream fixtures, and fixture parsing.

use sce_core::chaos::{Keystream, MapGenerator};
use sce_core::fxp::{Fx32, QFormat};
use sce_core::keys::{ChaosKey, HenonSubkey, LogisticSubkey, LorenzSubkey};

fn q2(v: f64) -> Fx32 {
    Fx32::from_f64(v, QFormat::Q2)
}

fn q4(v: f64) -> Fx32 {
    Fx32::from_f64(v, QFormat::Q4)
}

fn q10(v: f64) -> Fx32 {
    Fx32::from_f64(v, QFormat::Q10)
}

/// Three pinned keys used for the committed keystream fixtures. They cover
/// an ordinary key, a degenerate-threshold key, and parameter extremes
/// near the validated bounds.
pub fn fixed_keys() -> [(&'static str, ChaosKey); 3] {
    [
        (
            "key1",
            ChaosKey {
                permutation: LogisticSubkey {
                    x0: q2(0.3),
                    mu: q2(3.98),
                    threshold: 0x5a,
                },
                henon: HenonSubkey {
                    x0: q4(0.1),
                    y0: q4(0.1),
                    a: q4(1.4),
                    b: q4(0.3),
                },
                lorenz: LorenzSubkey {
                    x0: q10(1.0),
                    y0: q10(1.0),
                    z0: q10(1.0),
                    sigma: q10(10.0),
                    rho: q10(28.0),
                    beta: q10(2.67),
                },
            },
        ),
        (
            "key2",
            ChaosKey {
                permutation: LogisticSubkey {
                    x0: q2(0.7123),
                    mu: q2(3.777),
                    threshold: 0x00,
                },
                henon: HenonSubkey {
                    x0: q4(-0.25),
                    y0: q4(0.3),
                    a: q4(1.38),
                    b: q4(0.27),
                },
                lorenz: LorenzSubkey {
                    x0: q10(-5.5),
                    y0: q10(7.25),
                    z0: q10(20.125),
                    sigma: q10(9.5),
                    rho: q10(29.0),
                    beta: q10(2.5),
                },
            },
        ),
        (
            "key3",
            ChaosKey {
                permutation: LogisticSubkey {
                    x0: q2(0.421),
                    mu: q2(3.9999),
                    threshold: 0xa7,
                },
                henon: HenonSubkey {
                    x0: q4(0.05),
                    y0: q4(-0.49),
                    a: q4(1.41),
                    b: q4(0.305),
                },
                lorenz: LorenzSubkey {
                    x0: q10(14.9),
                    y0: q10(-14.9),
                    z0: q10(44.0),
                    sigma: q10(10.99),
                    rho: q10(26.01),
                    beta: q10(2.9),
                },
            },
        ),
    ]
}

pub const KEYSTREAM_FIXTURE: &str = include_str!("../fixtures/keystream_golden.txt");
pub const GOLDEN_BYTES_PER_MAP: usize = 256;

/// First `GOLDEN_BYTES_PER_MAP` keystream bytes of each map for a key.
pub fn keystream_vectors(key: &ChaosKey) -> [(&'static str, Vec<u8>); 3] {
    let produce = |gen: MapGenerator| {
        let mut gen = gen.warmed().expect("fixture keys must validate");
        (0..GOLDEN_BYTES_PER_MAP)
            .map(|_| gen.next_byte().unwrap())
            .collect::<Vec<u8>>()
    };
    [
        (
            "logistic",
            produce(MapGenerator::logistic(key.logistic_state())),
        ),
        ("henon", produce(MapGenerator::henon(key.henon_state()))),
        ("lorenz", produce(MapGenerator::lorenz(key.lorenz_state()))),
    ]
}

#[allow(dead_code)] // used by the fixture regenerator only
pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Parse fixture lines `label map hex` into (label, map, bytes).
pub fn parse_keystream_fixture(text: &str) -> Vec<(String, String, Vec<u8>)> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut fields = line.split_whitespace();
            let label = fields.next().expect("label").to_string();
            let map = fields.next().expect("map").to_string();
            let hex_str = fields.next().expect("hex payload");
            let bytes = (0..hex_str.len() / 2)
                .map(|i| u8::from_str_radix(&hex_str[2 * i..2 * i + 2], 16).expect("hex"))
                .collect();
            (label, map, bytes)
        })
        .collect()
}
