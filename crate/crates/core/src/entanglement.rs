//! Gravitationally induced phases, the decohered two-qubit state, and the
//! PPT witness built on it.
//!
//! Basis order is `{↑↑, ↑↓, ↓↑, ↓↓}` (first factor is interferometer 1). The
//! pure state after a hold time `τ` is `(1, e^{iφ₂}, e^{iφ₁}, 1)/2` up to a
//! global phase, and decoherence multiplies `⟨ij|ρ|i'j'⟩` by
//! `exp(-γτ (2 - δ_ii' - δ_jj'))`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::units::SI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Configuration {
    /// Splits perpendicular to the line joining the masses.
    Parallel,
    /// Splits along the line joining the masses.
    Linear,
}

/// Separations in metres. `d` is the distance between the two `|↑⟩` branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentGeometry {
    pub configuration: Configuration,
    pub dx: f64,
    pub d: f64,
    pub z: Option<f64>,
    pub plate_thickness: f64,
}

impl ExperimentGeometry {
    pub fn new(configuration: Configuration, dx: f64, d: f64) -> Result<Self> {
        require_non_negative("dx", dx)?;
        require_positive("d", d)?;
        Ok(ExperimentGeometry { configuration, dx, d, z: None, plate_thickness: 0.0 })
    }

    /// Plate-shielded geometry with both masses at distance `z` from a plate
    /// of the given thickness, so `d = 2z + thickness`.
    pub fn shielded(configuration: Configuration, dx: f64, z: f64, plate_thickness: f64) -> Result<Self> {
        require_positive("z", z)?;
        require_non_negative("plate_thickness", plate_thickness)?;
        let mut geom = Self::new(configuration, dx, 2.0 * z + plate_thickness)?;
        geom.z = Some(z);
        geom.plate_thickness = plate_thickness;
        Ok(geom)
    }

    /// Checks the field invariants, including `d = 2z + t` for shielded setups.
    pub fn validate(&self) -> Result<()> {
        require_non_negative("dx", self.dx)?;
        require_positive("d", self.d)?;
        require_non_negative("plate_thickness", self.plate_thickness)?;
        if let Some(z) = self.z {
            require_positive("z", z)?;
            let expect = 2.0 * z + self.plate_thickness;
            if ((self.d - expect) / expect).abs() > 1e-12 {
                return Err(Error::invalid(
                    "d",
                    format!("shielded geometry needs d = 2z + thickness = {expect}, got {}", self.d),
                ));
            }
        }
        Ok(())
    }
}

/// Branch phases in radians. `phi_global` is the common phase already
/// subtracted from `phi1`/`phi2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhasePair {
    pub phi1: f64,
    pub phi2: f64,
    pub phi_global: f64,
}

impl PhasePair {
    pub fn new(phi1: f64, phi2: f64) -> Self {
        PhasePair { phi1, phi2, phi_global: 0.0 }
    }

    /// `(φ₁ + φ₂)/2`, the entanglement phase.
    pub fn entangling_phase(&self) -> f64 {
        0.5 * (self.phi1 + self.phi2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessState {
    pub phases: PhasePair,
    /// Decoherence rate, Hz.
    pub gamma: f64,
    /// Hold time, s.
    pub tau: f64,
}

impl WitnessState {
    pub fn new(phases: PhasePair, gamma: f64, tau: f64) -> Result<Self> {
        require_non_negative("gamma", gamma)?;
        require_non_negative("tau", tau)?;
        Ok(WitnessState { phases, gamma, tau })
    }

    /// Coherence factor `e^{-γτ}`.
    fn coherence(&self) -> f64 {
        (-self.gamma * self.tau).exp()
    }
}

/// `1/√(d² + x²) − 1/d`, written without the cancellation that hits the
/// naive form when `x ≪ d`.
pub(crate) fn inv_hypot_minus_inv(d: f64, x: f64) -> f64 {
    let h = d.hypot(x);
    -(x * x) / (d * h * (d + h))
}

/// Phases accumulated during a hold time `tau` for two equal masses.
pub fn phases(mass: f64, geom: &ExperimentGeometry, tau: f64) -> Result<PhasePair> {
    require_positive("mass", mass)?;
    require_non_negative("tau", tau)?;
    geom.validate()?;
    let k = SI.gravity_rate_coupling(mass, mass) * tau;
    let (d, dx) = (geom.d, geom.dx);
    Ok(match geom.configuration {
        Configuration::Parallel => {
            let phi = k * inv_hypot_minus_inv(d, dx);
            PhasePair { phi1: phi, phi2: phi, phi_global: k / d }
        }
        Configuration::Linear => {
            // 1/d - 1/(d+dx) and 1/(d+2dx) - 1/(d+dx) as single fractions
            let phi1 = k * dx / (d * (d + dx));
            let phi2 = -k * dx / ((d + dx) * (d + 2.0 * dx));
            PhasePair { phi1, phi2, phi_global: k / (d + dx) }
        }
    })
}

/// `(1/2)|sin((φ₁+φ₂)/2)|`.
pub fn negativity(phases: &PhasePair) -> f64 {
    0.5 * phases.entangling_phase().sin().abs()
}

/// A 4×4 complex density matrix in the `{↑↑, ↑↓, ↓↑, ↓↓}` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4 {
    pub entries: [[Complex64; 4]; 4],
}

impl DensityMatrix4 {
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                acc += (self.entries[i][j] * self.entries[j][i]).re;
            }
        }
        acc
    }

    /// Transpose on the second qubit: `⟨i j|ρ^{T₂}|i' j'⟩ = ⟨i j'|ρ|i' j⟩`.
    pub fn partial_transpose_second(&self) -> DensityMatrix4 {
        let mut out = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (row, out_row) in out.iter_mut().enumerate() {
            for (col, slot) in out_row.iter_mut().enumerate() {
                let (i, j) = (row >> 1, row & 1);
                let (ip, jp) = (col >> 1, col & 1);
                *slot = self.entries[(i << 1) | jp][(ip << 1) | j];
            }
        }
        DensityMatrix4 { entries: out }
    }

    pub fn max_hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        worst
    }
}

pub fn density_matrix(state: &WitnessState) -> DensityMatrix4 {
    let PhasePair { phi1, phi2, .. } = state.phases;
    let amp = [
        Complex64::new(1.0, 0.0),
        Complex64::from_polar(1.0, phi2),
        Complex64::from_polar(1.0, phi1),
        Complex64::new(1.0, 0.0),
    ];
    let gt = state.gamma * state.tau;
    let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (r, row) in entries.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            let flips = ((r >> 1) != (c >> 1)) as u32 + ((r & 1) != (c & 1)) as u32;
            let decay = if flips == 0 { 1.0 } else { (-gt * flips as f64).exp() };
            *slot = 0.25 * amp[r] * amp[c].conj() * decay;
        }
    }
    DensityMatrix4 { entries }
}

/// Closed-form spectrum of `ρ^{T₂}` in the order `[λ₁, λ₂, λ₃, λ₄]`:
/// `λ₁,₂ = ¼ − ¼e^{−γτ}(e^{−γτ} ∓ 2 sin s)`, `λ₃,₄ = ¼ + ¼e^{−γτ}(e^{−γτ} ± 2 cos s)`
/// with `s = (φ₁+φ₂)/2`.
pub fn pt_eigenvalues(state: &WitnessState) -> [f64; 4] {
    let e = state.coherence();
    let s = state.phases.entangling_phase();
    let (sin, cos) = s.sin_cos();
    [
        0.25 - 0.25 * e * (e - 2.0 * sin),
        0.25 - 0.25 * e * (e + 2.0 * sin),
        0.25 + 0.25 * e * (e + 2.0 * cos),
        0.25 + 0.25 * e * (e - 2.0 * cos),
    ]
}

/// Sign of the PPT witness operator: `Plus` pairs with the parallel setup,
/// `Minus` with the linear one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WitnessBranch {
    Plus,
    Minus,
}

impl WitnessBranch {
    fn sign(self) -> f64 {
        match self {
            WitnessBranch::Plus => 1.0,
            WitnessBranch::Minus => -1.0,
        }
    }
}

impl From<Configuration> for WitnessBranch {
    fn from(c: Configuration) -> Self {
        match c {
            Configuration::Parallel => WitnessBranch::Plus,
            Configuration::Linear => WitnessBranch::Minus,
        }
    }
}

/// Closed-form witness value on one branch:
/// `¼ − ¼e^{−γτ}(e^{−γτ} − 2·sign·sin s)`. `Plus` is `λ₁`, `Minus` is `λ₂`.
pub fn witness_branch_value(state: &WitnessState, branch: WitnessBranch) -> f64 {
    let e = state.coherence();
    let s = state.phases.entangling_phase();
    0.25 - 0.25 * e * (e - 2.0 * branch.sign() * s.sin())
}

/// `⟨W⟩`, the most negative eigenvalue of `ρ^{T₂}`.
///
/// With a configuration the matching branch is evaluated directly; without
/// one (exploratory geometries) the smaller of the two branches is returned.
/// If the tagged branch is not the minimum (phase sign flipped by an unusual
/// geometry) the minimum is still returned.
pub fn witness_expectation(state: &WitnessState, configuration: Option<Configuration>) -> f64 {
    let plus = witness_branch_value(state, WitnessBranch::Plus);
    let minus = witness_branch_value(state, WitnessBranch::Minus);
    match configuration.map(WitnessBranch::from) {
        Some(WitnessBranch::Plus) if plus <= minus => plus,
        Some(WitnessBranch::Minus) if minus <= plus => minus,
        _ => plus.min(minus),
    }
}

/// Small-time form `(γ − |ω_ent|)τ/2`.
pub fn witness_expectation_linearized(gamma: f64, omega_ent: f64, tau: f64) -> Result<f64> {
    require_non_negative("tau", tau)?;
    Ok(0.5 * (gamma - omega_ent.abs()) * tau)
}

/// `Tr(W± ρ)` from the Pauli decomposition of the fixed witnesses
/// `W± = ¼(1⊗1 − X⊗X ± Z⊗Y ± Y⊗Z)`, evaluated element by element on `ρ`
/// (1-based indices below):
///
/// `Tr ρ ∓ 2 Im ρ₁₂ ∓ 2 Im ρ₁₃ − 2 Re ρ₁₄ − 2 Re ρ₂₃ ± 2 Im ρ₂₄ ± 2 Im ρ₃₄`.
///
/// The result carries the factor of four of that normalisation, i.e. it is
/// `4⟨W±⟩`. It equals `4·witness_expectation` whenever `φ₁ = φ₂` (the
/// parallel setup); for unequal phases the fixed operator is no longer the
/// optimal witness and the value sits above `4λ_min`.
pub fn witness_via_pauli_expansion(rho: &DensityMatrix4, branch: WitnessBranch) -> f64 {
    let s = branch.sign();
    let r = |i: usize, j: usize| rho.get(i - 1, j - 1);
    rho.trace().re - s * 2.0 * r(1, 2).im - s * 2.0 * r(1, 3).im - 2.0 * r(1, 4).re - 2.0 * r(2, 3).re
        + s * 2.0 * r(2, 4).im
        + s * 2.0 * r(3, 4).im
}
