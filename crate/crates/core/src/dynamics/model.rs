use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Every evolution equation the crate knows how to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    Gold,
    IsoGold,
    GeneralGold,
    AltGold,
    AltIsoGold,
    GammaTau,
    MatrixU,
    MatrixUTilde,
    MatrixGeneral,
    Rcm,
    Veselov,
}

/// Shape of the state a system evolves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StateKind {
    Particle,
    Coefficient,
    Matrix,
}

impl System {
    pub const ALL: [System; 11] = [
        System::Gold,
        System::IsoGold,
        System::GeneralGold,
        System::AltGold,
        System::AltIsoGold,
        System::GammaTau,
        System::MatrixU,
        System::MatrixUTilde,
        System::MatrixGeneral,
        System::Rcm,
        System::Veselov,
    ];

    pub fn kind(self) -> StateKind {
        match self {
            System::Gold | System::IsoGold | System::GeneralGold | System::Rcm | System::Veselov => StateKind::Particle,
            System::AltGold | System::AltIsoGold | System::GammaTau => StateKind::Coefficient,
            System::MatrixU | System::MatrixUTilde | System::MatrixGeneral => StateKind::Matrix,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            System::Gold => "gold",
            System::IsoGold => "isogold",
            System::GeneralGold => "general_gold",
            System::AltGold => "altgold",
            System::AltIsoGold => "altisogold",
            System::GammaTau => "gammatau",
            System::MatrixU => "matrix_u",
            System::MatrixUTilde => "matrix_utilde",
            System::MatrixGeneral => "matrix_general",
            System::Rcm => "rcm",
            System::Veselov => "veselov",
        }
    }
}

impl std::str::FromStr for System {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        System::ALL
            .into_iter()
            .find(|sys| sys.name() == key)
            .ok_or_else(|| Error::InvalidInput(format!("unknown system {s:?}")))
    }
}

impl std::fmt::Display for System {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A system together with its size and parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpec {
    pub system: System,
    pub n: usize,
    /// `a^2`.
    pub a2: Complex64,
    /// `f(x) = alpha + beta x + gamma x^2` of the general goldfish model.
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    /// Coupling of the rCM and Veselov models.
    pub g: Complex64,
    /// Ascending coefficients of `Phi` for Veselov and the general matrix flow.
    pub phi_poly: Vec<Complex64>,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl ModelSpec {
    pub fn new(system: System, n: usize) -> Self {
        let mut spec = Self {
            system,
            n,
            a2: zero(),
            alpha: zero(),
            beta: zero(),
            gamma: Complex64::new(1.0, 0.0),
            g: zero(),
            phi_poly: Vec::new(),
        };
        if system == System::Rcm {
            spec.phi_poly = vec![zero(), Complex64::new(-1.0, 0.0)];
        }
        spec
    }

    pub fn gold(n: usize, a2: Complex64) -> Self {
        Self {
            a2,
            ..Self::new(System::Gold, n)
        }
    }

    pub fn isogold(n: usize) -> Self {
        Self::new(System::IsoGold, n)
    }

    pub fn general_gold(n: usize, alpha: Complex64, beta: Complex64, gamma: Complex64) -> Self {
        Self {
            alpha,
            beta,
            gamma,
            ..Self::new(System::GeneralGold, n)
        }
    }

    pub fn altgold(n: usize, a2: Complex64) -> Self {
        Self {
            a2,
            ..Self::new(System::AltGold, n)
        }
    }

    pub fn altisogold(n: usize) -> Self {
        Self::new(System::AltIsoGold, n)
    }

    pub fn gammatau(n: usize) -> Self {
        Self::new(System::GammaTau, n)
    }

    pub fn matrix_u(n: usize, a2: Complex64) -> Self {
        Self {
            a2,
            ..Self::new(System::MatrixU, n)
        }
    }

    pub fn matrix_utilde(n: usize) -> Self {
        Self::new(System::MatrixUTilde, n)
    }

    pub fn matrix_general(n: usize, phi_poly: Vec<Complex64>) -> Self {
        Self {
            phi_poly,
            ..Self::new(System::MatrixGeneral, n)
        }
    }

    pub fn rcm(n: usize, g: Complex64) -> Self {
        Self {
            g,
            ..Self::new(System::Rcm, n)
        }
    }

    pub fn veselov(n: usize, g: Complex64, phi_poly: Vec<Complex64>) -> Self {
        Self {
            g,
            phi_poly,
            ..Self::new(System::Veselov, n)
        }
    }

    /// `f` of the general model in ascending coefficients.
    pub fn f_poly(&self) -> [Complex64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    /// `Phi = f f'` of the general model.
    pub fn general_phi(&self) -> Vec<Complex64> {
        let (a, b, g) = (self.alpha, self.beta, self.gamma);
        vec![a * b, a * g * 2.0 + b * b, b * g * 3.0, g * g * 2.0]
    }

    /// Length of the flat state vector.
    pub fn flat_len(&self) -> usize {
        match self.system.kind() {
            StateKind::Matrix => 2 * self.n * self.n,
            _ => 2 * self.n,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParticleState {
    pub z: Vec<Complex64>,
    pub zdot: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientState {
    /// `c_1..c_N`; `c_0 = 1` is implicit.
    pub c: Vec<Complex64>,
    pub cdot: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFlowState {
    pub u: ComplexMatrix,
    pub udot: ComplexMatrix,
}

/// Any of the three state shapes.
#[derive(Clone, Debug, PartialEq)]
pub enum State {
    Particle(ParticleState),
    Coefficient(CoefficientState),
    Matrix(MatrixFlowState),
}

impl State {
    pub fn kind(&self) -> StateKind {
        match self {
            State::Particle(_) => StateKind::Particle,
            State::Coefficient(_) => StateKind::Coefficient,
            State::Matrix(_) => StateKind::Matrix,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            State::Particle(p) => p.z.len(),
            State::Coefficient(c) => c.c.len(),
            State::Matrix(m) => m.u.rows(),
        }
    }

    /// Positions first, then velocities; matrices row-major.
    pub fn flatten(&self) -> Vec<Complex64> {
        match self {
            State::Particle(p) => p.z.iter().chain(&p.zdot).copied().collect(),
            State::Coefficient(c) => c.c.iter().chain(&c.cdot).copied().collect(),
            State::Matrix(m) => m.u.as_slice().iter().chain(m.udot.as_slice()).copied().collect(),
        }
    }

    pub fn from_flat(kind: StateKind, n: usize, flat: &[Complex64]) -> Result<Self> {
        let expected = match kind {
            StateKind::Matrix => 2 * n * n,
            _ => 2 * n,
        };
        if flat.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: flat.len(),
            });
        }
        let half = expected / 2;
        let (x, v) = flat.split_at(half);
        Ok(match kind {
            StateKind::Particle => State::Particle(ParticleState {
                z: x.to_vec(),
                zdot: v.to_vec(),
            }),
            StateKind::Coefficient => State::Coefficient(CoefficientState {
                c: x.to_vec(),
                cdot: v.to_vec(),
            }),
            StateKind::Matrix => State::Matrix(MatrixFlowState {
                u: ComplexMatrix::from_row_major(n, n, x.to_vec())?,
                udot: ComplexMatrix::from_row_major(n, n, v.to_vec())?,
            }),
        })
    }
}

impl From<ParticleState> for State {
    fn from(s: ParticleState) -> Self {
        State::Particle(s)
    }
}

impl From<CoefficientState> for State {
    fn from(s: CoefficientState) -> Self {
        State::Coefficient(s)
    }
}

impl From<MatrixFlowState> for State {
    fn from(s: MatrixFlowState) -> Self {
        State::Matrix(s)
    }
}
