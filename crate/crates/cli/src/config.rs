//! Declarative run configuration, loaded from TOML with `--set` overrides.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use qgem_core::em::{DipoleModel, DipolePlateConvention, EmTermSelection, Material, PlateModel, TestMass, Validity};
use qgem_core::entanglement::Configuration;
use qgem_core::trapping::TrapProfile;
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Preset name, or a key of `materials`.
    pub material: String,
    pub materials: BTreeMap<String, Material>,
    pub geometry: GeometryConfig,
    pub dipole: DipoleConfig,
    pub em: EmConfig,
    pub trap: TrapConfig,
    pub output: OutputConfig,
    pub table1: Table1Config,
    pub fields: FieldsConfig,
    pub dx_vs_gamma: DxVsGammaConfig,
    pub trap_surface: TrapSurfaceConfig,
    pub check: CheckConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            material: "diamond".into(),
            materials: BTreeMap::new(),
            geometry: GeometryConfig::default(),
            dipole: DipoleConfig::default(),
            em: EmConfig::default(),
            trap: TrapConfig::default(),
            output: OutputConfig::default(),
            table1: Table1Config::default(),
            fields: FieldsConfig::default(),
            dx_vs_gamma: DxVsGammaConfig::default(),
            trap_surface: TrapSurfaceConfig::default(),
            check: CheckConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeometryConfig {
    pub configuration: Configuration,
    /// Centre-to-centre separation for commands at fixed `d`, m.
    pub d: f64,
    pub plate_thickness: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        GeometryConfig { configuration: Configuration::Parallel, d: 61e-6, plate_thickness: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DipoleKind {
    #[default]
    Fixed,
    VolumeScaled,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DipoleConfig {
    pub model: DipoleKind,
    pub moment_e_m: f64,
    /// Only read by the volume-scaled model, m.
    pub baseline_radius: f64,
    /// Dipole angle to the plate normal, rad.
    pub angle: f64,
}

impl Default for DipoleConfig {
    fn default() -> Self {
        DipoleConfig {
            model: DipoleKind::Fixed,
            moment_e_m: DipoleModel::DEFAULT_MOMENT_E_M,
            baseline_radius: DipoleModel::DEFAULT_BASELINE_RADIUS,
            angle: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EmConfig {
    pub include_cp: bool,
    pub include_dd: bool,
    /// Turn far-field validity warnings into errors.
    pub strict: bool,
    /// Prefactor of the image-dipole potential; `1/(4πε₀)` when absent.
    pub dd_prefactor: Option<f64>,
}

impl Default for EmConfig {
    fn default() -> Self {
        let t = EmTermSelection::default();
        EmConfig { include_cp: t.include_cp, include_dd: t.include_dd, strict: false, dd_prefactor: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrapConfig {
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    /// Trap bottom to magnet distance, m. Deliberately has no default.
    pub y0: Option<f64>,
}

impl Default for TrapConfig {
    fn default() -> Self {
        TrapConfig { a2: TrapProfile::A2, a3: TrapProfile::A3, a4: TrapProfile::A4, y0: None }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub format: Format,
    /// Directory for `<command>.<ext>`; stdout when absent.
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Table1Config {
    /// Target `|ω_ent|`, Hz.
    pub rate: f64,
    pub masses: Vec<f64>,
    /// Sphere-to-plate gaps; `d = 2z + plate_thickness`.
    pub z: Vec<f64>,
}

impl Default for Table1Config {
    fn default() -> Self {
        Table1Config { rate: 0.01, masses: vec![1e-15, 1e-14, 1e-13], z: vec![30e-6, 10e-6, 5e-6] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldsAxis {
    #[default]
    Z,
    Mass,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FieldsConfig {
    pub axis: FieldsAxis,
    /// Mass held fixed on the `z` axis, kg.
    pub mass: f64,
    /// Gap held fixed on the `mass` axis, m.
    pub z: f64,
    pub z_values: Vec<f64>,
    pub masses: Vec<f64>,
}

impl Default for FieldsConfig {
    fn default() -> Self {
        FieldsConfig {
            axis: FieldsAxis::Z,
            mass: 1e-14,
            z: 30e-6,
            z_values: log_grid(1e-6, 100e-6, 41),
            masses: log_grid(1e-18, 1e-13, 21),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DxVsGammaConfig {
    pub masses: Vec<f64>,
    /// Decoherence rates, Hz.
    pub gammas: Vec<f64>,
    pub tau: f64,
    pub w_target: f64,
}

impl Default for DxVsGammaConfig {
    fn default() -> Self {
        DxVsGammaConfig { masses: vec![1e-15, 1e-14, 1e-13], gammas: log_grid(1e-3, 1.0, 31), tau: 1.0, w_target: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrapSurfaceConfig {
    pub mass: f64,
    pub nx: usize,
    pub nz: usize,
    pub x_center: f64,
    pub x_half_width: f64,
    pub z_center: f64,
    pub z_half_width: f64,
    pub y: f64,
}

impl Default for TrapSurfaceConfig {
    fn default() -> Self {
        TrapSurfaceConfig {
            mass: 1e-14,
            nx: 101,
            nz: 101,
            x_center: 0.0,
            x_half_width: 10e-6,
            z_center: 0.0,
            z_half_width: 1e-6,
            y: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CheckConfig {
    pub mass: f64,
    pub z: f64,
    /// Trap field magnitude, T.
    pub b: f64,
    /// Trap field gradient, T/m.
    pub dbdz: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { mass: 1e-14, z: 30e-6, b: 10e-6, dbdz: 1.0 }
    }
}

/// `n` points from `lo` to `hi`, evenly spaced in log10; endpoints are exact.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..n)
                .map(|i| match i {
                    0 => lo,
                    i if i == n - 1 => hi,
                    i => 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64),
                })
                .collect()
        }
    }
}

/// Overrides applied on top of the file, in increasing precedence.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    /// `key.path=value` pairs; values are TOML literals, bare words are strings.
    pub set: Vec<String>,
    pub format: Option<Format>,
    pub strict: bool,
    pub output_dir: Option<PathBuf>,
}

pub const OUTPUT_DIR_ENV: &str = "QGEM_OUTPUT_DIR";

impl RunConfig {
    /// Parses a TOML document and applies `overrides`.
    pub fn from_toml_str(src: &str, overrides: &Overrides) -> Result<Self> {
        let mut tree: toml::Table = src.parse().context("config is not valid TOML")?;
        for item in &overrides.set {
            let (path, raw) =
                item.split_once('=').ok_or_else(|| anyhow!("--set expects key.path=value, got `{item}`"))?;
            set_path(&mut tree, path.trim(), parse_literal(raw.trim()))?;
        }
        if let Some(f) = overrides.format {
            set_path(&mut tree, "output.format", toml::Value::String(f.extension().into()))?;
        }
        if overrides.strict {
            set_path(&mut tree, "em.strict", toml::Value::Boolean(true))?;
        }
        if let Some(dir) = &overrides.output_dir {
            set_path(&mut tree, "output.dir", toml::Value::String(dir.to_string_lossy().into_owned()))?;
        }
        let config: RunConfig = serde_path_to_error::deserialize(toml::Value::Table(tree)).map_err(|e| {
            let path = e.path().to_string();
            anyhow!("invalid config at `{path}`: {}", e.into_inner())
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: Option<&Path>, overrides: &Overrides) -> Result<Self> {
        let src = match path {
            Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            None => String::new(),
        };
        Self::from_toml_str(&src, overrides)
    }

    /// Runs every physical value through its core constructor.
    pub fn validate(&self) -> Result<()> {
        self.material()?;
        self.plate_model()?.terms.require_any().context("invalid config at `em`")?;
        self.test_mass(self.fields.mass).context("invalid config at `fields.mass`")?;
        self.test_mass(self.trap_surface.mass).context("invalid config at `trap_surface.mass`")?;
        self.test_mass(self.check.mass).context("invalid config at `check.mass`")?;
        for (i, &m) in self.table1.masses.iter().enumerate() {
            self.test_mass(m).with_context(|| format!("invalid config at `table1.masses[{i}]`"))?;
        }
        for (i, &m) in self.fields.masses.iter().enumerate() {
            self.test_mass(m).with_context(|| format!("invalid config at `fields.masses[{i}]`"))?;
        }
        for (i, &m) in self.dx_vs_gamma.masses.iter().enumerate() {
            self.test_mass(m).with_context(|| format!("invalid config at `dx_vs_gamma.masses[{i}]`"))?;
        }
        if let Some(y0) = self.trap.y0 {
            TrapProfile::new(self.trap.a2, self.trap.a3, self.trap.a4, y0).context("invalid config at `trap.y0`")?;
        }
        for (key, v) in [("trap.a2", self.trap.a2), ("trap.a3", self.trap.a3), ("trap.a4", self.trap.a4)] {
            if !v.is_finite() {
                bail!("invalid config at `{key}`: must be finite");
            }
        }
        Ok(())
    }

    pub fn material(&self) -> Result<Material> {
        let m = match self.materials.get(&self.material) {
            Some(m) => m.clone(),
            None => Material::preset(&self.material)
                .ok_or_else(|| anyhow!("invalid config at `material`: unknown material `{}`", self.material))?,
        };
        m.validate().with_context(|| format!("invalid config at `material`: `{}`", self.material))?;
        Ok(m)
    }

    pub fn dipole_model(&self) -> DipoleModel {
        let d = &self.dipole;
        match d.model {
            DipoleKind::Fixed => DipoleModel::Fixed { moment_e_m: d.moment_e_m },
            DipoleKind::VolumeScaled => {
                DipoleModel::VolumeScaled { moment_e_m: d.moment_e_m, baseline_radius: d.baseline_radius }
            }
        }
    }

    pub fn test_mass(&self, mass: f64) -> Result<TestMass> {
        let tm = TestMass::new(mass, &self.material()?, self.dipole_model()).context("invalid config at `dipole`")?;
        let dipole = tm.dipole;
        tm.with_dipole(dipole, self.dipole.angle).context("invalid config at `dipole.angle`")
    }

    pub fn plate_model(&self) -> Result<PlateModel> {
        let mut model =
            PlateModel::new(EmTermSelection { include_cp: self.em.include_cp, include_dd: self.em.include_dd });
        if let Some(k) = self.em.dd_prefactor {
            if !(k.is_finite() && k > 0.0) {
                bail!("invalid config at `em.dd_prefactor`: must be positive and finite");
            }
            model.dd_convention = DipolePlateConvention { prefactor: k };
        }
        model.validity = if self.em.strict { Validity::Strict } else { Validity::Warn };
        Ok(model)
    }

    /// The trap profile; an absent `y0` is a configuration error.
    pub fn trap_profile(&self) -> Result<TrapProfile> {
        let y0 = self.trap.y0.ok_or_else(|| {
            anyhow!("invalid config at `trap.y0`: required parameter y0 (trap bottom to magnet distance, m) is not set")
        })?;
        TrapProfile::new(self.trap.a2, self.trap.a3, self.trap.a4, y0).context("invalid config at `trap.y0`")
    }
}

fn parse_literal(raw: &str) -> toml::Value {
    format!("v = {raw}")
        .parse::<toml::Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()))
}

fn set_path(tree: &mut toml::Table, path: &str, value: toml::Value) -> Result<()> {
    let mut keys = path.split('.').peekable();
    let mut table = tree;
    while let Some(key) = keys.next() {
        if key.is_empty() {
            bail!("empty key in override path `{path}`");
        }
        if keys.peek().is_none() {
            table.insert(key.to_string(), value);
            return Ok(());
        }
        let next = table.entry(key.to_string()).or_insert_with(|| toml::Value::Table(toml::Table::new()));
        table = next.as_table_mut().ok_or_else(|| anyhow!("override `{path}`: `{key}` is not a table"))?;
    }
    Ok(())
}
