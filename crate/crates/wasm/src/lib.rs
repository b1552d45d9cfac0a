//! Browser bindings for the static demo in `www/`.
//!
//! Every export returns a flat `Float64Array`; the layouts are documented on
//! each function. Infeasible points come back as `NaN`.

use qgem_core::design::{solve_query, DesignQuery};
use qgem_core::em::{DipoleModel, EmTermSelection, Material, PlateModel, TestMass};
use qgem_core::trapping::{field_requirement, trap_potential_at, TrapProfile};
use wasm_bindgen::prelude::*;

fn log_axis(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, String> {
    if !(lo > 0.0 && hi > lo && lo.is_finite() && hi.is_finite()) {
        return Err("range must satisfy 0 < min < max".into());
    }
    if n < 2 {
        return Err("need at least two points".into());
    }
    let (a, b) = (lo.ln(), hi.ln());
    let mut axis: Vec<f64> = (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect();
    axis[0] = lo;
    axis[n - 1] = hi;
    Ok(axis)
}

/// `[z, b_min, dbdz_min]` triples for `n` log-spaced gaps.
pub fn field_curve(
    mass: f64,
    z_min: f64,
    z_max: f64,
    n: usize,
    include_cp: bool,
    include_dd: bool,
    volume_scaled_dipole: bool,
) -> Result<Vec<f64>, String> {
    let dipole = if volume_scaled_dipole { DipoleModel::volume_scaled_default() } else { DipoleModel::default() };
    let tm = TestMass::new(mass, &Material::diamond(), dipole).map_err(|e| e.to_string())?;
    let model = PlateModel::new(EmTermSelection { include_cp, include_dd });
    let mut out = Vec::with_capacity(3 * n);
    for z in log_axis(z_min, z_max, n)? {
        let r = field_requirement(&tm, z, &model).map_err(|e| e.to_string())?;
        out.extend([z, r.b_min, r.dbdz_min]);
    }
    Ok(out)
}

/// `[gamma, dx_min]` pairs for `n` log-spaced decoherence rates at `⟨W⟩ = 0`.
pub fn dx_gamma_curve(mass: f64, d: f64, gamma_min: f64, gamma_max: f64, n: usize) -> Result<Vec<f64>, String> {
    let mut out = Vec::with_capacity(2 * n);
    for gamma in log_axis(gamma_min, gamma_max, n)? {
        let r = solve_query(&DesignQuery::witness(mass, d, gamma, 1.0, 0.0)).map_err(|e| e.to_string())?;
        out.extend([gamma, r.dx_min.unwrap_or(f64::NAN)]);
    }
    Ok(out)
}

/// Trap potential on an `nx × nz` grid at `y = 0`, row-major with `x` outer.
pub fn trap_grid(y0: f64, mass: f64, x_half: f64, z_half: f64, nx: usize, nz: usize) -> Result<Vec<f64>, String> {
    if nx < 2 || nz < 2 {
        return Err("need at least two points per axis".into());
    }
    let profile = TrapProfile::with_y0(y0).map_err(|e| e.to_string())?;
    let tm = TestMass::diamond(mass).map_err(|e| e.to_string())?;
    let axis = |half: f64, n: usize| -> Vec<f64> {
        let span = (n - 1) as f64;
        (0..n).map(|i| half * (2.0 * i as f64 - span) / span).collect()
    };
    let zs = axis(z_half, nz);
    let mut out = Vec::with_capacity(nx * nz);
    for x in axis(x_half, nx) {
        out.extend(zs.iter().map(|&z| trap_potential_at(&profile, &tm, x, 0.0, z)));
    }
    Ok(out)
}

#[wasm_bindgen(js_name = fieldCurve)]
pub fn field_curve_js(
    mass: f64,
    z_min: f64,
    z_max: f64,
    n: usize,
    include_cp: bool,
    include_dd: bool,
    volume_scaled_dipole: bool,
) -> Result<Vec<f64>, JsError> {
    field_curve(mass, z_min, z_max, n, include_cp, include_dd, volume_scaled_dipole).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = dxGammaCurve)]
pub fn dx_gamma_curve_js(mass: f64, d: f64, gamma_min: f64, gamma_max: f64, n: usize) -> Result<Vec<f64>, JsError> {
    dx_gamma_curve(mass, d, gamma_min, gamma_max, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = trapGrid)]
pub fn trap_grid_js(y0: f64, mass: f64, x_half: f64, z_half: f64, nx: usize, nz: usize) -> Result<Vec<f64>, JsError> {
    trap_grid(y0, mass, x_half, z_half, nx, nz).map_err(|e| JsError::new(&e))
}
