//! Inverse problems: how wide must each superposition be for the gravitational
//! entanglement rate to reach a target, or to out-run a decoherence rate.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::em::{u_induced_magnetic_dd, v_cp_sphere_sphere, v_dd_sphere_sphere, TestMass, Validity};
use crate::entanglement::{inv_hypot_minus_inv, Configuration};
use crate::error::{require_non_negative, require_positive, Error, Result};
use crate::roots::{bisect, expand_upper};
use crate::units::SI;

/// Signed parallel-setup entanglement rate `[1/√(d²+Δx²) − 1/d] Gm²/ħ`, Hz.
pub fn omega_ent(mass: f64, d: f64, dx: f64) -> Result<f64> {
    require_positive("mass", mass)?;
    require_positive("d", d)?;
    require_non_negative("dx", dx)?;
    Ok(SI.gravity_rate_coupling(mass, mass) * inv_hypot_minus_inv(d, dx))
}

/// Signed `(φ₁ + φ₂)/(2τ)` for either configuration, Hz.
pub fn entanglement_rate(configuration: Configuration, mass: f64, d: f64, dx: f64) -> Result<f64> {
    match configuration {
        Configuration::Parallel => omega_ent(mass, d, dx),
        Configuration::Linear => {
            require_positive("mass", mass)?;
            require_positive("d", d)?;
            require_non_negative("dx", dx)?;
            let k = SI.gravity_rate_coupling(mass, mass);
            Ok(k * dx * dx / (d * (d + dx) * (d + 2.0 * dx)))
        }
    }
}

/// Supremum of `|ω_ent|` as `Δx → ∞`.
pub fn saturation_rate(configuration: Configuration, mass: f64, d: f64) -> f64 {
    let k = SI.gravity_rate_coupling(mass, mass) / d;
    match configuration {
        Configuration::Parallel => k,
        Configuration::Linear => 0.5 * k,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Objective {
    /// Reach `|ω_ent| = omega` (Hz).
    Rate { omega: f64 },
    /// Reach witness value `w_target` against decoherence `gamma` over `tau`.
    Witness { gamma: f64, tau: f64, w_target: f64 },
}

impl Objective {
    /// The `|ω_ent|` the solver has to hit.
    ///
    /// For the witness objective this is `γ − ⟨W⟩/(2τ)`, the rate implied by
    /// the minimal-width relation `Gm²/√(d²+Δx²) = Gm²/d − γħ + ⟨W⟩ħ/(2τ)`.
    pub fn required_rate(&self) -> Result<f64> {
        match *self {
            Objective::Rate { omega } => {
                require_non_negative("rate", omega)?;
                Ok(omega)
            }
            Objective::Witness { gamma, tau, w_target } => {
                require_non_negative("gamma", gamma)?;
                require_non_negative("tau", tau)?;
                if w_target == 0.0 {
                    return Ok(gamma);
                }
                require_positive("tau", tau)?;
                Ok(gamma - w_target / (2.0 * tau))
            }
        }
    }

    /// The rate `margin` is measured against: `γ` or the requested rate.
    fn reference_rate(&self) -> f64 {
        match *self {
            Objective::Rate { omega } => omega,
            Objective::Witness { gamma, .. } => gamma,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignQuery {
    pub mass: f64,
    pub d: f64,
    pub configuration: Configuration,
    pub objective: Objective,
}

impl DesignQuery {
    pub fn rate(mass: f64, d: f64, omega: f64) -> Self {
        DesignQuery { mass, d, configuration: Configuration::Parallel, objective: Objective::Rate { omega } }
    }

    pub fn witness(mass: f64, d: f64, gamma: f64, tau: f64, w_target: f64) -> Self {
        DesignQuery {
            mass,
            d,
            configuration: Configuration::Parallel,
            objective: Objective::Witness { gamma, tau, w_target },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Infeasibility {
    /// Target at or above the `Δx → ∞` limit of the rate.
    RateSaturation,
    /// Decoherence (plus witness target) demands more than gravity can give at this `d`.
    DecoherenceDominated,
    /// The minimal-width relation has a negative radicand (negative required rate).
    NoRealSolution,
}

impl Infeasibility {
    pub fn code(self) -> &'static str {
        match self {
            Infeasibility::RateSaturation => "rate-saturation",
            Infeasibility::DecoherenceDominated => "decoherence-dominated",
            Infeasibility::NoRealSolution => "no-real-solution",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignResult {
    /// Minimal superposition width `Δx`, m. `None` when infeasible.
    pub dx_min: Option<f64>,
    pub feasible: bool,
    /// Achieved `|ω_ent|` minus the reference rate (γ, or the requested
    /// rate), Hz. For infeasible queries the achieved rate is the saturation
    /// limit.
    pub margin: f64,
    pub reason: Option<Infeasibility>,
}

impl DesignResult {
    /// Full branch separation `2Δx`, m.
    pub fn full_split(&self) -> Option<f64> {
        self.dx_min.map(|dx| 2.0 * dx)
    }
}

/// `Δx` at which the parallel-setup rate equals `rate`, closed form.
///
/// With `q = rate·d·ħ/(Gm²)` the inversion
/// `Δx = √((Gm²/ħ / (Gm²/(ħd) − rate))² − d²)` is evaluated as
/// `d √(q(2 − q)) / (1 − q)`, which keeps full precision for `Δx ≪ d`.
pub fn dx_for_rate_closed_form(mass: f64, d: f64, rate: f64) -> Result<Option<f64>> {
    require_positive("mass", mass)?;
    require_positive("d", d)?;
    require_non_negative("rate", rate)?;
    let q = rate * d / SI.gravity_rate_coupling(mass, mass);
    if q >= 1.0 {
        return Ok(None);
    }
    Ok(Some(d * (q * (2.0 - q)).sqrt() / (1.0 - q)))
}

/// Same inversion by bisection on `|ω(Δx)| − rate`; works for both setups.
pub fn dx_for_rate_bisection(configuration: Configuration, mass: f64, d: f64, rate: f64) -> Result<Option<f64>> {
    require_positive("mass", mass)?;
    require_positive("d", d)?;
    require_non_negative("rate", rate)?;
    if rate == 0.0 {
        return Ok(Some(0.0));
    }
    if rate >= saturation_rate(configuration, mass, d) {
        return Ok(None);
    }
    let f = |dx: f64| entanglement_rate(configuration, mass, d, dx).map_or(f64::NAN, f64::abs) - rate;
    // below saturation the rate reaches the target at finite width
    let hi = expand_upper(f, d, 1100).ok_or(Error::NotBracketed { lo: 0.0, hi: f64::INFINITY })?;
    bisect(f, 0.0, hi).map(Some)
}

fn solve(configuration: Configuration, mass: f64, d: f64, rate: f64) -> Result<Option<f64>> {
    match configuration {
        Configuration::Parallel => dx_for_rate_closed_form(mass, d, rate),
        Configuration::Linear => dx_for_rate_bisection(configuration, mass, d, rate),
    }
}

fn finish(query: &DesignQuery, dx: Option<f64>, reason: Infeasibility) -> Result<DesignResult> {
    let reference = query.objective.reference_rate();
    Ok(match dx {
        Some(dx) => {
            let achieved = entanglement_rate(query.configuration, query.mass, query.d, dx)?.abs();
            DesignResult { dx_min: Some(dx), feasible: true, margin: achieved - reference, reason: None }
        }
        None => DesignResult {
            dx_min: None,
            feasible: false,
            margin: saturation_rate(query.configuration, query.mass, query.d) - reference,
            reason: Some(reason),
        },
    })
}

/// Minimal `Δx` for `|ω_ent| = rate` in the parallel setup.
pub fn dx_for_rate(mass: f64, d: f64, rate: f64) -> Result<DesignResult> {
    solve_query(&DesignQuery::rate(mass, d, rate))
}

/// Minimal `Δx` for witness value `w_target` under decoherence `gamma` over `tau`.
pub fn dx_for_witness(mass: f64, d: f64, gamma: f64, tau: f64, w_target: f64) -> Result<DesignResult> {
    solve_query(&DesignQuery::witness(mass, d, gamma, tau, w_target))
}

pub fn solve_query(query: &DesignQuery) -> Result<DesignResult> {
    require_positive("mass", query.mass)?;
    require_positive("d", query.d)?;
    let rate = query.objective.required_rate()?;
    match query.objective {
        Objective::Rate { .. } => {
            let dx = solve(query.configuration, query.mass, query.d, rate)?;
            finish(query, dx, Infeasibility::RateSaturation)
        }
        Objective::Witness { .. } => {
            if rate < 0.0 {
                return finish(query, None, Infeasibility::NoRealSolution);
            }
            let dx = solve(query.configuration, query.mass, query.d, rate)?;
            finish(query, dx, Infeasibility::DecoherenceDominated)
        }
    }
}

/// Cartesian grid of design queries, evaluated in mass → d → objective order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryGrid {
    pub configuration: Configuration,
    pub masses: Vec<f64>,
    pub separations: Vec<f64>,
    pub objectives: Vec<Objective>,
}

impl QueryGrid {
    pub fn queries(&self) -> Result<Vec<DesignQuery>> {
        for (name, axis) in [("masses", &self.masses), ("separations", &self.separations)] {
            if axis.is_empty() {
                return Err(Error::EmptyGrid(name));
            }
            if axis.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid(name, "grid values must be finite"));
            }
        }
        if self.objectives.is_empty() {
            return Err(Error::EmptyGrid("objectives"));
        }
        let mut out = Vec::with_capacity(self.masses.len() * self.separations.len() * self.objectives.len());
        for &mass in &self.masses {
            for &d in &self.separations {
                for &objective in &self.objectives {
                    out.push(DesignQuery { mass, d, configuration: self.configuration, objective });
                }
            }
        }
        Ok(out)
    }
}

/// One result per grid point, in grid order. Infeasible points are kept.
pub fn feasibility_sweep(grid: &QueryGrid) -> Result<Vec<(DesignQuery, DesignResult)>> {
    let queries = grid.queries()?;
    #[cfg(feature = "parallel")]
    let iter = queries.par_iter();
    #[cfg(not(feature = "parallel"))]
    let iter = queries.iter();
    iter.map(|q| solve_query(q).map(|r| (*q, r))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GravityDominance {
    /// `G m₁ m₂ / r`, J.
    pub gravity: f64,
    /// Induced magnetic dipole-dipole energy, J.
    pub magnetic_dd: f64,
    /// Unscreened permanent-dipole energy, collinear worst case, J.
    pub electric_dd: Option<f64>,
    /// Unscreened sphere-sphere Casimir-Polder energy, J.
    pub casimir_polder: Option<f64>,
    pub magnetic_ratio: f64,
    pub electric_ratio: Option<f64>,
    pub casimir_ratio: Option<f64>,
}

/// Compares the gravitational energy of two masses at distance `r` with the
/// EM energies that could compete with it; `field` is the trap field in T.
pub fn gravity_dominance(
    a: &TestMass,
    b: &TestMass,
    r: f64,
    field: f64,
    include_unscreened: bool,
) -> Result<GravityDominance> {
    require_positive("r", r)?;
    let gravity = SI.g * a.mass * b.mass / r;
    let magnetic_dd = u_induced_magnetic_dd(a, b, field, r)?;
    let (electric_dd, casimir_polder) = if include_unscreened {
        let e = v_dd_sphere_sphere([0.0, 0.0, a.dipole], [0.0, 0.0, b.dipole], [0.0, 0.0, r])?;
        let c = v_cp_sphere_sphere(a, b, r, Validity::Warn)?;
        (Some(e), Some(c))
    } else {
        (None, None)
    };
    Ok(GravityDominance {
        gravity,
        magnetic_dd,
        electric_dd,
        casimir_polder,
        magnetic_ratio: magnetic_dd.abs() / gravity,
        electric_ratio: electric_dd.map(|e| e.abs() / gravity),
        casimir_ratio: casimir_polder.map(|c| c.abs() / gravity),
    })
}
