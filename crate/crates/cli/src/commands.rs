use anyhow::{Context, Result};
use qgem_core::design::{feasibility_sweep, Objective, QueryGrid};
use qgem_core::entanglement::ExperimentGeometry;
use qgem_core::trapping::{
    check_dominance, field_requirement, min_field_gradient, trap_field_magnitude, trap_potential_at,
};

use crate::config::{FieldsAxis, RunConfig};
use crate::report::{format_float, Cell, Column, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::Subcommand)]
pub enum Command {
    /// Minimal superposition widths for a target entanglement rate.
    Table1,
    /// Minimal trap field and gradient against the plate-directed EM load.
    Fields,
    /// Minimal width as a function of the decoherence rate.
    DxVsGamma,
    /// Trap potential on an x-z grid.
    TrapSurface,
    /// Dominance of a trap working point over the EM load; exits 1 on failure.
    Check,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Table1 => "table1",
            Command::Fields => "fields",
            Command::DxVsGamma => "dx-vs-gamma",
            Command::TrapSurface => "trap-surface",
            Command::Check => "check",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    /// Human-readable text for commands that print one.
    pub summary: Option<String>,
    pub passed: bool,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, summary: None, passed: true }
    }
}

pub fn execute(command: Command, config: &RunConfig) -> Result<Outcome> {
    match command {
        Command::Table1 => table1(config).map(Outcome::from),
        Command::Fields => fields(config).map(Outcome::from),
        Command::DxVsGamma => dx_vs_gamma(config).map(Outcome::from),
        Command::TrapSurface => trap_surface(config).map(Outcome::from),
        Command::Check => check(config),
    }
}

fn design_columns(lead: &[Column]) -> Vec<Column> {
    let mut cols = lead.to_vec();
    cols.extend([
        Column::new("d", "m"),
        Column::new("dx_min", "m"),
        Column::new("full_split", "m"),
        Column::new("feasible", "1"),
        Column::new("reason", "-"),
    ]);
    cols
}

pub fn table1(config: &RunConfig) -> Result<Report> {
    let c = &config.table1;
    let geom = config.geometry;
    let mut separations = Vec::with_capacity(c.z.len());
    for (i, &z) in c.z.iter().enumerate() {
        let g = ExperimentGeometry::shielded(geom.configuration, 0.0, z, geom.plate_thickness)
            .with_context(|| format!("invalid config at `table1.z[{i}]`"))?;
        separations.push(g.d);
    }
    let grid = QueryGrid {
        configuration: geom.configuration,
        masses: c.masses.clone(),
        separations,
        objectives: vec![Objective::Rate { omega: c.rate }],
    };
    let results = feasibility_sweep(&grid).context("invalid config at `table1`")?;
    let mut report = Report::new("table1", design_columns(&[Column::new("mass", "kg"), Column::new("z", "m")]));
    // grid order is mass-major, so z cycles fastest
    for ((q, r), z) in results.iter().zip(c.z.iter().cycle()) {
        report.push(vec![
            q.mass.into(),
            (*z).into(),
            q.d.into(),
            r.dx_min.into(),
            r.full_split().into(),
            r.feasible.into(),
            r.reason.map(|x| x.code()).into(),
        ]);
    }
    Ok(report)
}

pub fn fields(config: &RunConfig) -> Result<Report> {
    let c = &config.fields;
    let model = config.plate_model()?;
    let points: Vec<(f64, f64)> = match c.axis {
        FieldsAxis::Z => c.z_values.iter().map(|&z| (c.mass, z)).collect(),
        FieldsAxis::Mass => c.masses.iter().map(|&m| (m, c.z)).collect(),
    };
    anyhow::ensure!(!points.is_empty(), "invalid config at `fields`: empty grid");
    let mut report = Report::new(
        "fields",
        vec![
            Column::new("mass", "kg"),
            Column::new("z", "m"),
            Column::new("radius", "m"),
            Column::new("b_min", "T"),
            Column::new("dbdz_min", "T/m"),
        ],
    );
    for (mass, z) in points {
        let tm = config.test_mass(mass)?;
        let req =
            field_requirement(&tm, z, &model).with_context(|| format!("fields at mass {mass:e} kg, z {z:e} m"))?;
        report.push(vec![mass.into(), z.into(), tm.radius.into(), req.b_min.into(), req.dbdz_min.into()]);
    }
    Ok(report)
}

pub fn dx_vs_gamma(config: &RunConfig) -> Result<Report> {
    let c = &config.dx_vs_gamma;
    for (i, &g) in c.gammas.iter().enumerate() {
        anyhow::ensure!(g.is_finite() && g > 0.0, "invalid config at `dx_vs_gamma.gammas[{i}]`: must be positive");
    }
    let grid = QueryGrid {
        configuration: config.geometry.configuration,
        masses: c.masses.clone(),
        separations: vec![config.geometry.d],
        objectives: c
            .gammas
            .iter()
            .map(|&gamma| Objective::Witness { gamma, tau: c.tau, w_target: c.w_target })
            .collect(),
    };
    let results = feasibility_sweep(&grid).context("invalid config at `dx_vs_gamma`")?;
    let mut report =
        Report::new("dx-vs-gamma", design_columns(&[Column::new("mass", "kg"), Column::new("gamma", "Hz")]));
    for (q, r) in &results {
        let Objective::Witness { gamma, .. } = q.objective else { unreachable!("grid holds witness objectives") };
        report.push(vec![
            q.mass.into(),
            gamma.into(),
            q.d.into(),
            r.dx_min.into(),
            r.full_split().into(),
            r.feasible.into(),
            r.reason.map(|x| x.code()).into(),
        ]);
    }
    Ok(report)
}

/// `n` points centred on `center`; mirrored points are exact negatives about it.
fn symmetric_axis(center: f64, half_width: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![center];
    }
    let span = (n - 1) as f64;
    (0..n).map(|i| center + half_width * (2.0 * i as f64 - span) / span).collect()
}

pub fn trap_surface(config: &RunConfig) -> Result<Report> {
    let c = &config.trap_surface;
    let profile = config.trap_profile()?;
    anyhow::ensure!(c.nx > 0 && c.nz > 0, "invalid config at `trap_surface`: nx and nz must be positive");
    let tm = config.test_mass(c.mass)?;
    let xs = symmetric_axis(c.x_center, c.x_half_width, c.nx);
    let zs = symmetric_axis(c.z_center, c.z_half_width, c.nz);
    let mut report = Report::new(
        "trap-surface",
        vec![Column::new("x", "m"), Column::new("z", "m"), Column::new("b_abs", "T"), Column::new("v_trap", "J")],
    );
    for &x in &xs {
        for &z in &zs {
            let b_abs = trap_field_magnitude(&profile, x, c.y, z);
            report.push(vec![x.into(), z.into(), b_abs.into(), trap_potential_at(&profile, &tm, x, c.y, z).into()]);
        }
    }
    Ok(report)
}

pub fn check(config: &RunConfig) -> Result<Outcome> {
    let c = &config.check;
    let model = config.plate_model()?;
    let tm = config.test_mass(c.mass)?;
    let req = field_requirement(&tm, c.z, &model).context("invalid config at `check.z`")?;
    let dbdz_needed = min_field_gradient(&tm, c.z, c.b, &model).context("invalid config at `check.b`")?;
    let dom = check_dominance(&tm, c.z, c.b, c.dbdz, &model).context("invalid config at `check`")?;

    let mut report = Report::new(
        "check",
        vec![
            Column::new("mass", "kg"),
            Column::new("z", "m"),
            Column::new("b", "T"),
            Column::new("b_min", "T"),
            Column::new("dbdz", "T/m"),
            Column::new("dbdz_min", "T/m"),
            Column::new("potential_margin", "1"),
            Column::new("force_margin", "1"),
            Column::new("potential_ok", "1"),
            Column::new("force_ok", "1"),
        ],
    );
    report.push(vec![
        c.mass.into(),
        c.z.into(),
        c.b.into(),
        req.b_min.into(),
        c.dbdz.into(),
        dbdz_needed.into(),
        dom.potential_margin.into(),
        dom.force_margin.into(),
        dom.potential_ok.into(),
        dom.force_ok.into(),
    ]);

    let verdict = |ok: bool| if ok { "pass" } else { "FAIL" };
    let summary = format!(
        "mass {} kg, z {} m\n\
         potential: |B| = {} T vs minimum {} T, margin {} [{}]\n\
         force:     dB/dz = {} T/m vs minimum {} T/m, margin {} [{}]\n\
         overall: {}\n",
        format_float(c.mass),
        format_float(c.z),
        format_float(c.b),
        format_float(req.b_min),
        format_float(dom.potential_margin),
        verdict(dom.potential_ok),
        format_float(c.dbdz),
        format_float(dbdz_needed),
        format_float(dom.force_margin),
        verdict(dom.force_ok),
        verdict(dom.passed()),
    );
    Ok(Outcome { report, summary: Some(summary), passed: dom.passed() })
}

/// Convenience for callers that want a column as plain numbers.
pub fn numeric_column(report: &Report, name: &str) -> Option<Vec<Option<f64>>> {
    let i = report.column_index(name)?;
    Some(
        report
            .rows
            .iter()
            .map(|r| match r[i] {
                Cell::Num(v) => Some(v),
                _ => None,
            })
            .collect(),
    )
}
