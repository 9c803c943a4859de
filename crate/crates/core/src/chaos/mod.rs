//! Chaotic map generators and characterization instruments.
//!
//! The cipher side runs three maps in fixed point so keystreams are
//! bit-exact everywhere: Logistic (Q2.29) feeds the permutation, Henon
//! (Q4.27) and Lorenz (Q10.21) feed the substitution chain. Each generator
//! is warmed up for [`WARM_UP_STEPS`] iterations before it may emit a byte,
//! shedding transients; a warm-up that saturates or returns exactly to its
//! seed state marks the key invalid.
//!
//! Tent and Chirikov never feed the cipher and exist only as
//! double-precision characterization subjects in [`characterize`].

use crate::fxp::{Fx32, QFormat};
use thiserror::Error;

pub mod characterize;

pub use characterize::{
    bifurcation_scan, cluster_count, lyapunov_exponent, map_benchmark, CharacterizationMap,
    MapBenchRow,
};

/// Iterations discarded before a generator may emit keystream bytes.
pub const WARM_UP_STEPS: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapId {
    Logistic,
    Tent,
    Henon,
    Lorenz,
    Chirikov,
}

impl MapId {
    pub fn name(self) -> &'static str {
        match self {
            MapId::Logistic => "logistic",
            MapId::Tent => "tent",
            MapId::Henon => "henon",
            MapId::Lorenz => "lorenz",
            MapId::Chirikov => "chirikov",
        }
    }
}

impl std::fmt::Display for MapId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ChaosError {
    /// A fixed-point step saturated: the trajectory left the representable
    /// range, which a validated key never does.
    #[error("{map} trajectory diverged (fixed-point saturation)")]
    DivergentTrajectory { map: MapId },
    /// The state returned exactly to its seed during warm-up; the orbit is
    /// trivially periodic and useless as a keystream.
    #[error("{map} state repeated exactly during warm-up")]
    StateRepetition { map: MapId },
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

/// Logistic map in Q2.29: `x <- mu * x * (1 - x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LogisticState {
    pub x: Fx32,
    pub mu: Fx32,
}

impl LogisticState {
    pub fn new(x0: Fx32, mu: Fx32) -> Self {
        LogisticState { x: x0, mu }
    }

    pub fn step(&mut self) -> Result<(), ChaosError> {
        let one = Fx32::one(QFormat::Q2);
        let next = self
            .mu
            .mul(self.x)
            .and_then(|mx| mx.mul(one.sub(self.x)?))
            .expect("logistic state is uniformly Q2.29");
        if next.saturated() {
            return Err(ChaosError::DivergentTrajectory {
                map: MapId::Logistic,
            });
        }
        self.x = next;
        Ok(())
    }
}

/// Henon map in Q4.27: `x <- 1 + y - a*x^2; y <- b*x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HenonState {
    pub x: Fx32,
    pub y: Fx32,
    pub a: Fx32,
    pub b: Fx32,
}

impl HenonState {
    pub fn new(x0: Fx32, y0: Fx32, a: Fx32, b: Fx32) -> Self {
        HenonState { x: x0, y: y0, a, b }
    }

    pub fn step(&mut self) -> Result<(), ChaosError> {
        let one = Fx32::one(QFormat::Q4);
        let (next_x, next_y) = (|| {
            let xx = self.x.mul(self.x)?;
            let nx = one.add(self.y)?.sub(self.a.mul(xx)?)?;
            let ny = self.b.mul(self.x)?;
            Ok::<_, crate::fxp::FxError>((nx, ny))
        })()
        .expect("henon state is uniformly Q4.27");
        if next_x.saturated() || next_y.saturated() {
            return Err(ChaosError::DivergentTrajectory { map: MapId::Henon });
        }
        self.x = next_x;
        self.y = next_y;
        Ok(())
    }
}

/// Lorenz system in Q10.21, discretized by forward Euler with a
/// power-of-two step so the `dt` multiply is exact:
/// `x += dt*sigma*(y-x); y += dt*(x*(rho-z) - y); z += dt*(x*y - beta*z)`.
///
/// `dt` is part of the public algorithm, not the key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LorenzState {
    pub x: Fx32,
    pub y: Fx32,
    pub z: Fx32,
    pub sigma: Fx32,
    pub rho: Fx32,
    pub beta: Fx32,
    pub dt: Fx32,
}

/// Euler step size 1/128: exact in Q10.21 and small enough to keep the
/// discretized attractor close to the continuous one.
pub const LORENZ_DT: f64 = 1.0 / 128.0;

impl LorenzState {
    pub fn new(x0: Fx32, y0: Fx32, z0: Fx32, sigma: Fx32, rho: Fx32, beta: Fx32) -> Self {
        LorenzState {
            x: x0,
            y: y0,
            z: z0,
            sigma,
            rho,
            beta,
            dt: Fx32::from_f64(LORENZ_DT, QFormat::Q10),
        }
    }

    pub fn step(&mut self) -> Result<(), ChaosError> {
        let (nx, ny, nz) = (|| {
            let dx = self.sigma.mul(self.y.sub(self.x)?)?;
            let dy = self.x.mul(self.rho.sub(self.z)?)?.sub(self.y)?;
            let dz = self.x.mul(self.y)?.sub(self.beta.mul(self.z)?)?;
            let nx = self.x.add(self.dt.mul(dx)?)?;
            let ny = self.y.add(self.dt.mul(dy)?)?;
            let nz = self.z.add(self.dt.mul(dz)?)?;
            Ok::<_, crate::fxp::FxError>((nx, ny, nz))
        })()
        .expect("lorenz state is uniformly Q10.21");
        if nx.saturated() || ny.saturated() || nz.saturated() {
            return Err(ChaosError::DivergentTrajectory { map: MapId::Lorenz });
        }
        self.x = nx;
        self.y = ny;
        self.z = nz;
        Ok(())
    }
}

/// A byte-oriented keystream source. The permutation and substitution layers
/// are generic over this so tests can drive them with scripted streams.
pub trait Keystream {
    fn next_byte(&mut self) -> Result<u8, ChaosError>;
    /// Number of bytes emitted so far (warm-up steps are not bytes).
    fn bytes_emitted(&self) -> u64;
}

#[derive(Debug, Clone, PartialEq)]
enum GenState {
    Logistic(LogisticState),
    Henon(HenonState),
    Lorenz(LorenzState),
}

/// Sequential keystream source over one fixed-point chaotic map.
///
/// Single-owner mutable state: clone it to fork a replay, move it between
/// threads, but never share one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct MapGenerator {
    state: GenState,
    bytes: u64,
    warmed: bool,
}

impl MapGenerator {
    pub fn logistic(state: LogisticState) -> Self {
        MapGenerator {
            state: GenState::Logistic(state),
            bytes: 0,
            warmed: false,
        }
    }

    pub fn henon(state: HenonState) -> Self {
        MapGenerator {
            state: GenState::Henon(state),
            bytes: 0,
            warmed: false,
        }
    }

    pub fn lorenz(state: LorenzState) -> Self {
        MapGenerator {
            state: GenState::Lorenz(state),
            bytes: 0,
            warmed: false,
        }
    }

    pub fn map_id(&self) -> MapId {
        match self.state {
            GenState::Logistic(_) => MapId::Logistic,
            GenState::Henon(_) => MapId::Henon,
            GenState::Lorenz(_) => MapId::Lorenz,
        }
    }

    fn step(&mut self) -> Result<(), ChaosError> {
        match &mut self.state {
            GenState::Logistic(s) => s.step(),
            GenState::Henon(s) => s.step(),
            GenState::Lorenz(s) => s.step(),
        }
    }

    /// Current x-state word, the byte extractor's source.
    pub fn x_word(&self) -> Fx32 {
        match &self.state {
            GenState::Logistic(s) => s.x,
            GenState::Henon(s) => s.x,
            GenState::Lorenz(s) => s.x,
        }
    }

    pub fn is_warmed(&self) -> bool {
        self.warmed
    }

    /// Run the warm-up, rejecting divergence and exact returns to the seed
    /// state. Must be called exactly once before the first byte.
    pub fn warm_up(&mut self) -> Result<(), ChaosError> {
        let seed = self.state.clone();
        for _ in 0..WARM_UP_STEPS {
            self.step()?;
            if self.state == seed {
                return Err(ChaosError::StateRepetition { map: self.map_id() });
            }
        }
        self.warmed = true;
        Ok(())
    }

    /// Construct and warm up in one go.
    pub fn warmed(mut self) -> Result<Self, ChaosError> {
        self.warm_up()?;
        Ok(self)
    }
}

impl Keystream for MapGenerator {
    /// Advance one step and extract the 8 LSBs of the x-state word.
    fn next_byte(&mut self) -> Result<u8, ChaosError> {
        debug_assert!(self.warmed, "generator used before warm-up");
        self.step()?;
        self.bytes += 1;
        Ok(self.x_word().low_byte())
    }

    fn bytes_emitted(&self) -> u64 {
        self.bytes
    }
}
