//! Double-precision instruments for characterizing map behavior: Lyapunov
//! exponents, bifurcation scans, and keystream throughput/correlation
//! benchmarks. These never touch the cipher path.

use super::{ChaosError, MapId, LORENZ_DT};
use crate::stats;
use std::time::Instant;

/// Iterates discarded before any instrument records data.
pub const TRANSIENT_STEPS: usize = 1000;

/// Minimum iteration count for a Lyapunov estimate.
pub const LYAPUNOV_MIN_ITERS: usize = 100_000;

/// A map under characterization, with double-precision parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CharacterizationMap {
    Logistic { mu: f64 },
    Tent { mu: f64 },
    Henon { a: f64, b: f64 },
    Lorenz { sigma: f64, rho: f64, beta: f64 },
    Chirikov { k: f64 },
}

impl CharacterizationMap {
    /// The control parameters used throughout the characterization runs.
    pub fn reference(id: MapId) -> Self {
        match id {
            MapId::Logistic => CharacterizationMap::Logistic { mu: 3.98 },
            MapId::Tent => CharacterizationMap::Tent { mu: 1.98 },
            MapId::Henon => CharacterizationMap::Henon { a: 1.4, b: 0.3 },
            MapId::Lorenz => CharacterizationMap::Lorenz {
                sigma: 10.0,
                rho: 28.0,
                beta: 2.67,
            },
            MapId::Chirikov => CharacterizationMap::Chirikov { k: 10.0 },
        }
    }

    pub fn map_id(&self) -> MapId {
        match self {
            CharacterizationMap::Logistic { .. } => MapId::Logistic,
            CharacterizationMap::Tent { .. } => MapId::Tent,
            CharacterizationMap::Henon { .. } => MapId::Henon,
            CharacterizationMap::Lorenz { .. } => MapId::Lorenz,
            CharacterizationMap::Chirikov { .. } => MapId::Chirikov,
        }
    }

    fn seed(&self) -> [f64; 3] {
        match self {
            CharacterizationMap::Logistic { .. } | CharacterizationMap::Tent { .. } => {
                [0.3, 0.0, 0.0]
            }
            CharacterizationMap::Henon { .. } => [0.1, 0.1, 0.0],
            CharacterizationMap::Lorenz { .. } => [1.0, 1.0, 1.0],
            CharacterizationMap::Chirikov { .. } => [0.5, 0.5, 0.0],
        }
    }

    fn step(&self, s: &mut [f64; 3]) {
        match *self {
            CharacterizationMap::Logistic { mu } => {
                s[0] = mu * s[0] * (1.0 - s[0]);
            }
            CharacterizationMap::Tent { mu } => {
                s[0] = if s[0] < 0.5 {
                    mu * s[0]
                } else {
                    mu * (1.0 - s[0])
                };
            }
            CharacterizationMap::Henon { a, b } => {
                let (x, y) = (s[0], s[1]);
                s[0] = 1.0 + y - a * x * x;
                s[1] = b * x;
            }
            CharacterizationMap::Lorenz { sigma, rho, beta } => {
                let (x, y, z) = (s[0], s[1], s[2]);
                s[0] = x + LORENZ_DT * sigma * (y - x);
                s[1] = y + LORENZ_DT * (x * (rho - z) - y);
                s[2] = z + LORENZ_DT * (x * y - beta * z);
            }
            CharacterizationMap::Chirikov { k } => {
                let nx = s[0] + k * s[1].sin();
                s[0] = nx;
                s[1] += nx;
            }
        }
    }

    /// Derivative for the 1-D maps.
    fn derivative(&self, x: f64) -> f64 {
        match *self {
            CharacterizationMap::Logistic { mu } => mu * (1.0 - 2.0 * x),
            CharacterizationMap::Tent { mu } => {
                if x < 0.5 {
                    mu
                } else {
                    -mu
                }
            }
            _ => unreachable!("derivative only defined for 1-D maps"),
        }
    }

    /// Jacobian-vector product for the multi-dimensional maps.
    fn jacobian_apply(&self, s: &[f64; 3], v: &[f64; 3]) -> [f64; 3] {
        match *self {
            CharacterizationMap::Henon { a, b } => {
                // J = [[-2ax, 1], [b, 0]]
                [-2.0 * a * s[0] * v[0] + v[1], b * v[0], 0.0]
            }
            CharacterizationMap::Chirikov { k } => {
                // x' = x + k sin y; y' = y + x': J = [[1, k cos y], [1, 1 + k cos y]]
                let c = k * s[1].cos();
                [v[0] + c * v[1], v[0] + (1.0 + c) * v[1], 0.0]
            }
            CharacterizationMap::Lorenz { sigma, rho, beta } => {
                // Euler map Jacobian: I + dt * J_continuous(state).
                let (x, y, z) = (s[0], s[1], s[2]);
                [
                    v[0] + LORENZ_DT * (-sigma * v[0] + sigma * v[1]),
                    v[1] + LORENZ_DT * ((rho - z) * v[0] - v[1] - x * v[2]),
                    v[2] + LORENZ_DT * (y * v[0] + x * v[1] - beta * v[2]),
                ]
            }
            _ => unreachable!("jacobian only defined for multi-dimensional maps"),
        }
    }

    fn is_one_dimensional(&self) -> bool {
        matches!(
            self,
            CharacterizationMap::Logistic { .. } | CharacterizationMap::Tent { .. }
        )
    }

    /// Scale used to project the continuous state onto a fixed-point raw
    /// word for byte extraction, mirroring the cipher maps' Q formats.
    fn byte_scale(&self) -> f64 {
        match self {
            CharacterizationMap::Logistic { .. }
            | CharacterizationMap::Tent { .. }
            | CharacterizationMap::Chirikov { .. } => (1u64 << 29) as f64,
            CharacterizationMap::Henon { .. } => (1u64 << 27) as f64,
            CharacterizationMap::Lorenz { .. } => (1u64 << 21) as f64,
        }
    }

    fn extract_byte(&self, s: &[f64; 3]) -> u8 {
        ((s[0] * self.byte_scale()) as i64 & 0xff) as u8
    }
}

/// Largest Lyapunov exponent.
///
/// 1-D maps average `ln|f'(x_n)|` directly; multi-dimensional maps use
/// tangent-vector renormalization. The Lorenz estimate is rescaled by `1/dt`
/// to per-unit-time.
pub fn lyapunov_exponent(map: &CharacterizationMap, iterations: usize) -> Result<f64, ChaosError> {
    if iterations < LYAPUNOV_MIN_ITERS {
        return Err(ChaosError::InvalidParam(format!(
            "lyapunov estimate needs >= {LYAPUNOV_MIN_ITERS} iterations, got {iterations}"
        )));
    }
    let mut state = map.seed();
    for _ in 0..TRANSIENT_STEPS {
        map.step(&mut state);
    }
    let mut sum = 0.0f64;
    if map.is_one_dimensional() {
        for _ in 0..iterations {
            let d = map.derivative(state[0]).abs();
            if d == 0.0 || !d.is_finite() {
                return Err(ChaosError::Numerical(format!(
                    "non-finite log-derivative at x = {}",
                    state[0]
                )));
            }
            sum += d.ln();
            map.step(&mut state);
        }
    } else {
        let mut tangent = [1.0f64, 0.0, 0.0];
        for _ in 0..iterations {
            let stretched = map.jacobian_apply(&state, &tangent);
            let norm = (stretched[0] * stretched[0]
                + stretched[1] * stretched[1]
                + stretched[2] * stretched[2])
                .sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(ChaosError::Numerical(
                    "tangent vector collapsed or overflowed".into(),
                ));
            }
            sum += norm.ln();
            tangent = [
                stretched[0] / norm,
                stretched[1] / norm,
                stretched[2] / norm,
            ];
            map.step(&mut state);
        }
    }
    let per_step = sum / iterations as f64;
    Ok(match map {
        CharacterizationMap::Lorenz { .. } => per_step / LORENZ_DT,
        _ => per_step,
    })
}

/// Sweep the map's leading control parameter and record post-transient
/// iterates of x. Output rows are `(parameter, recorded values)`.
pub fn bifurcation_scan(
    map: &CharacterizationMap,
    param_lo: f64,
    param_hi: f64,
    steps: usize,
    samples: usize,
) -> Result<Vec<(f64, Vec<f64>)>, ChaosError> {
    if steps < 2 {
        return Err(ChaosError::InvalidParam(
            "bifurcation scan needs at least 2 parameter steps".into(),
        ));
    }
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let param = param_lo + (param_hi - param_lo) * i as f64 / (steps - 1) as f64;
        let swept = with_leading_param(map, param);
        let mut state = swept.seed();
        for _ in 0..TRANSIENT_STEPS {
            swept.step(&mut state);
        }
        let mut values = Vec::with_capacity(samples);
        for _ in 0..samples {
            swept.step(&mut state);
            values.push(state[0]);
        }
        rows.push((param, values));
    }
    Ok(rows)
}

fn with_leading_param(map: &CharacterizationMap, p: f64) -> CharacterizationMap {
    match *map {
        CharacterizationMap::Logistic { .. } => CharacterizationMap::Logistic { mu: p },
        CharacterizationMap::Tent { .. } => CharacterizationMap::Tent { mu: p },
        CharacterizationMap::Henon { b, .. } => CharacterizationMap::Henon { a: p, b },
        CharacterizationMap::Lorenz { sigma, beta, .. } => CharacterizationMap::Lorenz {
            sigma,
            rho: p,
            beta,
        },
        CharacterizationMap::Chirikov { .. } => CharacterizationMap::Chirikov { k: p },
    }
}

/// Number of distinct accumulation points among recorded iterates: sort and
/// split wherever the gap exceeds `tol`. An orbit settled on a period-p
/// cycle yields exactly p clusters.
pub fn cluster_count(values: &[f64], tol: f64) -> usize {
    if values.is_empty() {
        return 0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite iterates"));
    1 + sorted.windows(2).filter(|w| w[1] - w[0] > tol).count()
}

/// One row of the map benchmark: keystream throughput plus the correlation
/// left between a reference corpus and its XOR under the map's keystream.
#[derive(Debug, Clone)]
pub struct MapBenchRow {
    pub map: MapId,
    pub bytes_per_sec: f64,
    pub abs_corr: f64,
}

/// XOR-encrypt `corpus` with the map's keystream and measure generation
/// throughput and residual |Pearson| against the original.
pub fn map_benchmark(map: &CharacterizationMap, corpus: &[u8]) -> Result<MapBenchRow, ChaosError> {
    if corpus.len() < 2 {
        return Err(ChaosError::InvalidParam(
            "benchmark corpus must have at least 2 bytes".into(),
        ));
    }
    let mut state = map.seed();
    for _ in 0..TRANSIENT_STEPS {
        map.step(&mut state);
    }
    let started = Instant::now();
    let mut keystream = Vec::with_capacity(corpus.len());
    for _ in 0..corpus.len() {
        map.step(&mut state);
        keystream.push(map.extract_byte(&state));
    }
    let elapsed = started.elapsed().as_secs_f64().max(1e-9);
    let encrypted: Vec<u8> = corpus
        .iter()
        .zip(&keystream)
        .map(|(&p, &k)| p ^ k)
        .collect();
    let abs_corr = stats::pearson(corpus, &encrypted)
        .map(f64::abs)
        .unwrap_or(1.0);
    Ok(MapBenchRow {
        map: map.map_id(),
        bytes_per_sec: corpus.len() as f64 / elapsed,
        abs_corr,
    })
}
