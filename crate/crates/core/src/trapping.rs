//! Diamagnetic trapping against the plate attraction.
//!
//! The trap potential is `V_T = χ_ρ m B²/(2µ₀)`, negative for a diamagnet
//! measured from the field-free reference. The dominance conditions compare
//! magnitudes: the trap must beat the plate-directed EM load both in energy
//! and in `z`-force.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::em::{PlateModel, TestMass};
use crate::error::{require_positive, Error, Result};
use crate::units::SI;

/// Margins exactly at threshold come back within a few ulps of 1.
const THRESHOLD_ROUNDOFF: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldRequirement {
    /// Minimum `|B_T|`, T.
    pub b_min: f64,
    /// Minimum `|∂_z B_T|` evaluated at `b = b_min`, T/m.
    pub dbdz_min: f64,
    pub z: f64,
    pub mass: f64,
    pub model: PlateModel,
}

pub fn trap_potential(tm: &TestMass, b: f64) -> f64 {
    tm.chi_rho * tm.mass * b * b / (2.0 * SI.mu0)
}

fn require_magnetic(tm: &TestMass) -> Result<()> {
    if tm.chi_rho == 0.0 || !tm.chi_rho.is_finite() {
        return Err(Error::invalid("chi_rho", "trap requirements need a nonzero susceptibility"));
    }
    require_positive("mass", tm.mass)
}

/// Smallest `|B|` whose trap energy matches the plate-directed EM energy at `z`.
pub fn min_field_magnitude(tm: &TestMass, z: f64, model: &PlateModel) -> Result<f64> {
    require_positive("z", z)?;
    require_magnetic(tm)?;
    let v = model.potential(tm, z)?;
    Ok((2.0 * SI.mu0 * v.abs() / (tm.chi_rho.abs() * tm.mass)).sqrt())
}

/// Smallest `|∂_z B|` that, at field magnitude `b`, beats the EM force at `z`,
/// assuming `B` and `∂_z B` are aligned (the most favourable case).
pub fn min_field_gradient(tm: &TestMass, z: f64, b: f64, model: &PlateModel) -> Result<f64> {
    require_positive("z", z)?;
    require_positive("b", b)?;
    require_magnetic(tm)?;
    let f = model.force(tm, z)?;
    Ok(SI.mu0 * f.abs() / (tm.chi_rho.abs() * tm.mass * b))
}

/// Both bounds, the gradient evaluated at the minimum field magnitude.
pub fn field_requirement(tm: &TestMass, z: f64, model: &PlateModel) -> Result<FieldRequirement> {
    let b_min = min_field_magnitude(tm, z, model)?;
    let dbdz_min = min_field_gradient(tm, z, b_min, model)?;
    Ok(FieldRequirement { b_min, dbdz_min, z, mass: tm.mass, model: *model })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    /// `|V_T| / |V_EM|`.
    pub potential_margin: f64,
    /// `|F_T,z| / |F_EM,z|` with `|F_T,z| = |χ_ρ| m |B| |∂_z B| / µ₀`.
    pub force_margin: f64,
    pub potential_ok: bool,
    pub force_ok: bool,
}

impl DominanceReport {
    pub fn passed(&self) -> bool {
        self.potential_ok && self.force_ok
    }
}

pub fn check_dominance(tm: &TestMass, z: f64, b: f64, dbdz: f64, model: &PlateModel) -> Result<DominanceReport> {
    require_positive("z", z)?;
    for (name, v) in [("b", b), ("dbdz", dbdz)] {
        if !v.is_finite() {
            return Err(Error::invalid(name, "must be finite"));
        }
    }
    let v_em = model.potential(tm, z)?.abs();
    let f_em = model.force(tm, z)?.abs();
    let v_t = trap_potential(tm, b).abs();
    let f_t = tm.chi_rho.abs() * tm.mass * b.abs() * dbdz.abs() / SI.mu0;
    let potential_margin = v_t / v_em;
    let force_margin = f_t / f_em;
    Ok(DominanceReport {
        potential_margin,
        force_margin,
        potential_ok: potential_margin >= 1.0 - THRESHOLD_ROUNDOFF,
        force_ok: force_margin >= 1.0 - THRESHOLD_ROUNDOFF,
    })
}

/// Multipole trap field `B(x, y, z)` parameterised by `a₂, a₃, a₄` (T) and the
/// trap-bottom-to-magnet distance `y₀` (m). `y₀` has no default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapProfile {
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub y0: f64,
}

impl TrapProfile {
    pub const A2: f64 = -1.3;
    pub const A3: f64 = 0.0183;
    pub const A4: f64 = 0.72;

    pub fn new(a2: f64, a3: f64, a4: f64, y0: f64) -> Result<Self> {
        require_positive("y0", y0)?;
        Ok(TrapProfile { a2, a3, a4, y0 })
    }

    /// Shipped coefficients with a caller-supplied `y₀`.
    pub fn with_y0(y0: f64) -> Result<Self> {
        Self::new(Self::A2, Self::A3, Self::A4, y0)
    }

    // scaled coefficients shared by the field and its Jacobian
    fn coeffs(&self) -> Coeffs {
        let y0 = self.y0;
        Coeffs {
            x3: 2.0 * self.a3 * (14.0 / (3.0 * PI)).sqrt() / (y0 * y0),
            a4: 3.0 * self.a4 * (35.0 / PI).sqrt() / (16.0 * y0 * y0 * y0),
            a3: self.a3 * (7.0 / (6.0 * PI)).sqrt() / (y0 * y0),
            a2: self.a2 * (15.0 / PI).sqrt() / (4.0 * y0),
        }
    }
}

struct Coeffs {
    x3: f64,
    a4: f64,
    a3: f64,
    a2: f64,
}

pub fn trap_field(p: &TrapProfile, x: f64, y: f64, z: f64) -> [f64; 3] {
    let c = p.coeffs();
    let bx = -c.x3 * x * z;
    let by = -(c.a4 * z * (z * z - 3.0 * y * y) - c.a3 * z * y + c.a2 * z);
    let bz = -(c.a4 * y * (3.0 * z * z - y * y) + 0.5 * c.a3 * (4.0 * x * x - y * y - 3.0 * z * z) + c.a2 * y);
    [bx, by, bz]
}

pub fn trap_field_magnitude(p: &TrapProfile, x: f64, y: f64, z: f64) -> f64 {
    let [bx, by, bz] = trap_field(p, x, y, z);
    (bx * bx + by * by + bz * bz).sqrt()
}

/// `J[i][j] = ∂B_i/∂x_j`.
pub fn trap_field_jacobian(p: &TrapProfile, x: f64, y: f64, z: f64) -> [[f64; 3]; 3] {
    let c = p.coeffs();
    // ∂B_y/∂z and ∂B_z/∂y coincide
    let shared = -(c.a4 * (3.0 * z * z - 3.0 * y * y) - c.a3 * y + c.a2);
    [
        [-c.x3 * z, 0.0, -c.x3 * x],
        [0.0, 6.0 * c.a4 * z * y + c.a3 * z, shared],
        [-4.0 * c.a3 * x, shared, -(6.0 * c.a4 * y * z - 3.0 * c.a3 * z)],
    ]
}

/// Trap energy of `tm` at a point of the profile, J.
pub fn trap_potential_at(p: &TrapProfile, tm: &TestMass, x: f64, y: f64, z: f64) -> f64 {
    let b = trap_field(p, x, y, z);
    let b2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
    tm.chi_rho * tm.mass * b2 / (2.0 * SI.mu0)
}

/// `F = −∇V_T = −(χ_ρ m/µ₀) Σᵢ Bᵢ ∇Bᵢ`, N.
pub fn trap_force(p: &TrapProfile, tm: &TestMass, x: f64, y: f64, z: f64) -> [f64; 3] {
    let b = trap_field(p, x, y, z);
    let jac = trap_field_jacobian(p, x, y, z);
    let k = -tm.chi_rho * tm.mass / SI.mu0;
    let mut f = [0.0; 3];
    for (j, fj) in f.iter_mut().enumerate() {
        *fj = k * (b[0] * jac[0][j] + b[1] * jac[1][j] + b[2] * jac[2][j]);
    }
    f
}
