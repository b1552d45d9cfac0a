//! Electromagnetic backgrounds: dipole and Casimir-Polder interactions between
//! two spheres and between a sphere and a grounded conducting plate, plus the
//! induced dipoles that feed them.
//!
//! Sign conventions: `z` is the sphere-plate gap, forces are the
//! `z`-component with negative meaning "toward the plate".

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::units::{dipole_e_m_to_si, SI};

/// Bulk material data for a sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Material {
    /// Static dielectric constant.
    pub epsilon: f64,
    /// Density, kg/m³.
    pub density: f64,
    /// Mass magnetic susceptibility, m³/kg.
    pub chi_rho: f64,
}

impl Material {
    pub const fn diamond() -> Self {
        Material { epsilon: 5.1, density: 3500.0, chi_rho: -6.2e-9 }
    }

    /// Built-in presets by name.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "diamond" => Some(Self::diamond()),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 1.0) {
            return Err(Error::invalid("epsilon", format!("must be > 1, got {}", self.epsilon)));
        }
        require_positive("density", self.density)?;
        if !self.chi_rho.is_finite() {
            return Err(Error::invalid("chi_rho", "must be finite"));
        }
        Ok(())
    }

    /// Clausius-Mossotti factor `(ε − 1)/(ε + 2)`.
    pub fn clausius_mossotti(&self) -> f64 {
        (self.epsilon - 1.0) / (self.epsilon + 2.0)
    }
}

impl Default for Material {
    fn default() -> Self {
        Self::diamond()
    }
}

/// How the permanent electric dipole depends on the sphere size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DipoleModel {
    /// Same moment for every mass.
    Fixed { moment_e_m: f64 },
    /// `|d|²` proportional to the sphere volume, pinned to `moment_e_m` at
    /// `baseline_radius`, i.e. `|d| = d₀ (R/R₀)^{3/2}`.
    VolumeScaled { moment_e_m: f64, baseline_radius: f64 },
}

impl DipoleModel {
    pub const DEFAULT_MOMENT_E_M: f64 = 1e-4;
    pub const DEFAULT_BASELINE_RADIUS: f64 = 10e-6;

    pub fn volume_scaled_default() -> Self {
        DipoleModel::VolumeScaled {
            moment_e_m: Self::DEFAULT_MOMENT_E_M,
            baseline_radius: Self::DEFAULT_BASELINE_RADIUS,
        }
    }

    /// Dipole magnitude in C·m for a sphere of the given radius.
    pub fn moment_si(&self, radius: f64) -> Result<f64> {
        match *self {
            DipoleModel::Fixed { moment_e_m } => dipole_e_m_to_si(moment_e_m),
            DipoleModel::VolumeScaled { moment_e_m, baseline_radius } => {
                require_positive("baseline_radius", baseline_radius)?;
                Ok(dipole_e_m_to_si(moment_e_m)? * (radius / baseline_radius).powf(1.5))
            }
        }
    }
}

impl Default for DipoleModel {
    fn default() -> Self {
        DipoleModel::Fixed { moment_e_m: Self::DEFAULT_MOMENT_E_M }
    }
}

/// A spherical test mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestMass {
    pub mass: f64,
    pub radius: f64,
    pub epsilon: f64,
    pub density: f64,
    pub chi_rho: f64,
    /// Permanent electric dipole magnitude, C·m.
    pub dipole: f64,
    /// Angle between the plate normal and the dipole, rad.
    pub dipole_angle: f64,
}

impl TestMass {
    /// Sphere of `mass` made of `material`, radius derived from the density,
    /// dipole from `model`, dipole aligned with the plate normal.
    pub fn new(mass: f64, material: &Material, model: DipoleModel) -> Result<Self> {
        material.validate()?;
        let radius = radius_from_mass(mass, material.density)?;
        let dipole = model.moment_si(radius)?;
        Ok(TestMass {
            mass,
            radius,
            epsilon: material.epsilon,
            density: material.density,
            chi_rho: material.chi_rho,
            dipole,
            dipole_angle: 0.0,
        })
    }

    pub fn diamond(mass: f64) -> Result<Self> {
        Self::new(mass, &Material::diamond(), DipoleModel::default())
    }

    pub fn with_radius(mut self, radius: f64) -> Result<Self> {
        require_positive("radius", radius)?;
        self.radius = radius;
        Ok(self)
    }

    pub fn with_dipole(mut self, dipole_si: f64, angle: f64) -> Result<Self> {
        require_non_negative("dipole", dipole_si)?;
        self.dipole = dipole_si;
        self.dipole_angle = angle;
        Ok(self)
    }

    pub fn clausius_mossotti(&self) -> f64 {
        (self.epsilon - 1.0) / (self.epsilon + 2.0)
    }

    /// Polarizability volume `α = R³ (ε − 1)/(ε + 2)`, m³.
    pub fn polarizability(&self) -> f64 {
        self.radius.powi(3) * self.clausius_mossotti()
    }
}

/// Which plate-directed EM terms enter the trap requirements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmTermSelection {
    pub include_dd: bool,
    pub include_cp: bool,
}

impl EmTermSelection {
    pub const CP_ONLY: Self = EmTermSelection { include_dd: false, include_cp: true };
    pub const DD_ONLY: Self = EmTermSelection { include_dd: true, include_cp: false };
    pub const BOTH: Self = EmTermSelection { include_dd: true, include_cp: true };

    pub fn require_any(&self) -> Result<()> {
        if self.include_dd || self.include_cp {
            Ok(())
        } else {
            Err(Error::EmptyTermSelection)
        }
    }
}

impl Default for EmTermSelection {
    fn default() -> Self {
        Self::CP_ONLY
    }
}

/// Handling of the far-field validity guards (`r > 2R`, `z > R`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Validity {
    /// Log a warning and evaluate anyway.
    #[default]
    Warn,
    /// Return [`Error::Validity`].
    Strict,
}

impl Validity {
    fn check(self, ok: bool, what: &'static str, detail: impl FnOnce() -> String) -> Result<()> {
        if ok {
            return Ok(());
        }
        match self {
            Validity::Warn => {
                log::warn!("{what} evaluated outside its validity range: {}", detail());
                Ok(())
            }
            Validity::Strict => Err(Error::Validity { what, detail: detail() }),
        }
    }
}

/// Prefactor convention for the sphere-plate image-dipole potential
/// `V = −K |d|²/z³ (1 + cos²θ)`. The default `K = 1/(4πε₀)` gives Joules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DipolePlateConvention {
    pub prefactor: f64,
}

impl Default for DipolePlateConvention {
    fn default() -> Self {
        DipolePlateConvention { prefactor: SI.coulomb() }
    }
}

/// Everything needed to evaluate the plate-directed EM load on a sphere.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PlateModel {
    pub terms: EmTermSelection,
    pub dd_convention: DipolePlateConvention,
    pub validity: Validity,
}

impl PlateModel {
    pub fn new(terms: EmTermSelection) -> Self {
        PlateModel { terms, ..Default::default() }
    }

    /// Summed potential of the selected terms at gap `z`, J (≤ 0).
    pub fn potential(&self, tm: &TestMass, z: f64) -> Result<f64> {
        self.terms.require_any()?;
        let mut v = 0.0;
        if self.terms.include_dd {
            v += v_dd_sphere_plate(tm.dipole, tm.dipole_angle, z, self.dd_convention)?;
        }
        if self.terms.include_cp {
            v += v_cp_sphere_plate(tm, z, self.validity)?;
        }
        Ok(v)
    }

    /// Summed `z`-force of the selected terms at gap `z`, N (≤ 0).
    pub fn force(&self, tm: &TestMass, z: f64) -> Result<f64> {
        self.terms.require_any()?;
        let mut f = 0.0;
        if self.terms.include_dd {
            f += f_dd_sphere_plate(tm.dipole, tm.dipole_angle, z, self.dd_convention)?;
        }
        if self.terms.include_cp {
            f += f_cp_sphere_plate(tm, z, self.validity)?;
        }
        Ok(f)
    }
}

pub fn radius_from_mass(mass: f64, density: f64) -> Result<f64> {
    require_positive("mass", mass)?;
    require_positive("density", density)?;
    Ok((3.0 * mass / (4.0 * PI * density)).cbrt())
}

/// Dipole-dipole energy of two point dipoles separated by `r` (from 1 to 2).
pub fn v_dd_sphere_sphere(d1: [f64; 3], d2: [f64; 3], r: [f64; 3]) -> Result<f64> {
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let r2 = dot(r, r);
    if !(r2 > 0.0) {
        return Err(Error::invalid("r", "zero separation"));
    }
    let rn = r2.sqrt();
    let r3 = r2 * rn;
    let r5 = r3 * r2;
    Ok(SI.coulomb() * (dot(d1, d2) / r3 - 3.0 * dot(d1, r) * dot(d2, r) / r5))
}

/// Retarded Casimir-Polder energy of two identical dielectric spheres.
///
/// Valid in the far field, `r ≫ R`; `r ≤ 2R` trips the guard.
pub fn v_cp_sphere_sphere(a: &TestMass, b: &TestMass, r: f64, validity: Validity) -> Result<f64> {
    require_positive("r", r)?;
    validity.check(r > a.radius + b.radius, "sphere-sphere Casimir-Polder", || {
        format!("r = {r} m does not clear the radii {} + {} m", a.radius, b.radius)
    })?;
    let cm = a.clausius_mossotti() * b.clausius_mossotti();
    let r6 = a.radius.powi(3) * b.radius.powi(3);
    Ok(-23.0 * SI.hbar * SI.c / (4.0 * PI) * cm * r6 / r.powi(7))
}

/// Image-dipole energy of a dipole at gap `z` from a grounded plate.
pub fn v_dd_sphere_plate(dipole: f64, theta: f64, z: f64, conv: DipolePlateConvention) -> Result<f64> {
    require_positive("z", z)?;
    let c = theta.cos();
    Ok(-conv.prefactor * dipole * dipole / z.powi(3) * (1.0 + c * c))
}

/// `−∂V/∂z` of [`v_dd_sphere_plate`].
pub fn f_dd_sphere_plate(dipole: f64, theta: f64, z: f64, conv: DipolePlateConvention) -> Result<f64> {
    require_positive("z", z)?;
    let c = theta.cos();
    Ok(-3.0 * conv.prefactor * dipole * dipole / z.powi(4) * (1.0 + c * c))
}

pub fn v_cp_sphere_plate(tm: &TestMass, z: f64, validity: Validity) -> Result<f64> {
    require_positive("z", z)?;
    validity.check(z > tm.radius, "sphere-plate Casimir-Polder", || {
        format!("z = {z} m inside the sphere radius {} m", tm.radius)
    })?;
    Ok(-3.0 * SI.hbar * SI.c / (8.0 * PI) * tm.clausius_mossotti() * tm.radius.powi(3) / z.powi(4))
}

/// `−∂V/∂z` of [`v_cp_sphere_plate`].
pub fn f_cp_sphere_plate(tm: &TestMass, z: f64, validity: Validity) -> Result<f64> {
    require_positive("z", z)?;
    validity.check(z > tm.radius, "sphere-plate Casimir-Polder", || {
        format!("z = {z} m inside the sphere radius {} m", tm.radius)
    })?;
    Ok(-3.0 * SI.hbar * SI.c / (2.0 * PI) * tm.clausius_mossotti() * tm.radius.powi(3) / z.powi(5))
}

/// Dipole induced by a uniform field `e_field` (V/m): `4πε₀ α E`, C·m.
pub fn induced_electric_dipole(tm: &TestMass, e_field: f64) -> Result<f64> {
    require_non_negative("e_field", e_field)?;
    Ok(4.0 * PI * SI.eps0 * tm.polarizability() * e_field)
}

/// Ohmic field `J/σ` in a conductor carrying current density `j`.
pub fn ohmic_field(current_density: f64, conductivity: f64) -> Result<f64> {
    require_non_negative("current_density", current_density)?;
    require_positive("conductivity", conductivity)?;
    Ok(current_density / conductivity)
}

/// Magnitude of the interaction between the magnetic dipoles a field `b`
/// induces in two diamagnetic spheres: `2 χ_ρ² m₁ m₂ B² / (4π µ₀ r³)`.
pub fn u_induced_magnetic_dd(a: &TestMass, b: &TestMass, field: f64, r: f64) -> Result<f64> {
    require_positive("r", r)?;
    Ok(2.0 * a.chi_rho * b.chi_rho * a.mass * b.mass * field * field / (4.0 * PI * SI.mu0 * r.powi(3)))
}
