//! Run configuration: a TOML file with one table per section, every key
//! optional, overridable with `--set section.key=value`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Deserialize;

use crate::decay::{read_modes, BathSpec};
use crate::dynamics::{Basis, DensityMatrix, OneExcitationState, DEFAULT_DT};
use crate::exciton::DimerParams;

use super::CliError;

/// The five asymmetry phases tabulated for the FMO dimer.
pub const TABLE_THETAS: [f64; 5] = [0.0, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4, PI];

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct RawConfig {
    pub dimer: RawDimer,
    pub bath: RawBath,
    pub initial_state: RawInitialState,
    pub time_grid: RawTimeGrid,
    pub sweep: RawSweep,
    pub estimate: RawEstimate,
    pub helix: RawHelix,
    pub output: RawOutput,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawDimer {
    pub omega1: f64,
    pub omega2: f64,
    pub j12: f64,
    pub lambda1: f64,
    pub eta_abs: Option<f64>,
    pub theta: Option<f64>,
    pub eta_re: Option<f64>,
    pub eta_im: Option<f64>,
}

impl Default for RawDimer {
    fn default() -> Self {
        RawDimer {
            omega1: 120.0,
            omega2: 0.0,
            j12: -96.0,
            lambda1: 35.0,
            eta_abs: None,
            theta: None,
            eta_re: None,
            eta_im: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawBath {
    pub temperature: f64,
    pub gamma_d: f64,
    pub modes_csv: Option<PathBuf>,
    pub renormalize: bool,
}

impl Default for RawBath {
    fn default() -> Self {
        RawBath {
            temperature: 300.0,
            gamma_d: 1.0 / 50.0,
            modes_csv: None,
            renormalize: false,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawInitialState {
    pub preset: String,
    /// Basis of a custom matrix: `site` or `exciton`.
    pub basis: String,
    pub re: Option<Vec<Vec<f64>>>,
    pub im: Option<Vec<Vec<f64>>>,
}

impl Default for RawInitialState {
    fn default() -> Self {
        RawInitialState {
            preset: "site1".into(),
            basis: "site".into(),
            re: None,
            im: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawTimeGrid {
    pub t_max: f64,
    pub n_points: usize,
    pub dt: f64,
    /// Basis of the written trajectories.
    pub basis: String,
}

impl Default for RawTimeGrid {
    fn default() -> Self {
        RawTimeGrid {
            t_max: 2000.0,
            n_points: 201,
            dt: DEFAULT_DT,
            basis: "site".into(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawSweep {
    pub thetas: Vec<f64>,
    pub eta_min: f64,
    pub eta_max: f64,
    pub n_points: usize,
}

impl Default for RawSweep {
    fn default() -> Self {
        RawSweep {
            thetas: TABLE_THETAS.to_vec(),
            eta_min: 0.05,
            eta_max: 5.0,
            n_points: 200,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawEstimate {
    /// `γ_d/γ`
    pub target_ratio: f64,
    pub eta_upper: f64,
}

impl Default for RawEstimate {
    fn default() -> Self {
        RawEstimate {
            target_ratio: 22.0,
            eta_upper: 100.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawHelix {
    pub a_angstrom: f64,
    pub v_m_s: f64,
    pub j12: f64,
}

impl Default for RawHelix {
    fn default() -> Self {
        RawHelix {
            a_angstrom: 4.5,
            v_m_s: 4000.0,
            j12: 7.8,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RawOutput {
    pub dir: PathBuf,
}

impl Default for RawOutput {
    fn default() -> Self {
        RawOutput {
            dir: PathBuf::from("out"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialPreset {
    Site1,
    Site2,
    Exciton1,
    Exciton2,
    Superposition,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    pub t_max: f64,
    pub n_points: usize,
    pub dt: f64,
    pub basis: Basis,
}

impl TimeGrid {
    pub fn times(&self) -> Vec<f64> {
        let n = self.n_points;
        (0..n)
            .map(|i| self.t_max * i as f64 / (n - 1) as f64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub thetas: Vec<f64>,
    pub eta_min: f64,
    pub eta_max: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HelixSpec {
    pub a_angstrom: f64,
    pub v_m_s: f64,
    pub j12: f64,
}

/// Validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dimer: DimerParams,
    pub bath: BathSpec,
    pub modes_csv: Option<PathBuf>,
    pub renormalize: bool,
    pub preset: InitialPreset,
    pub initial_state: OneExcitationState,
    pub time_grid: TimeGrid,
    pub sweep: SweepSpec,
    pub target_ratio: f64,
    pub eta_upper: f64,
    pub helix: HelixSpec,
    pub output: PathBuf,
}

fn config_err(field: &str, reason: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("`{field}`: {reason}"))
}

/// Parses a `--set` value as a TOML value, falling back to a bare string.
fn parse_override_value(text: &str) -> toml::Value {
    let doc = format!("v = {text}");
    match doc.parse::<toml::Table>() {
        Ok(mut t) => t
            .remove("v")
            .unwrap_or_else(|| toml::Value::String(text.to_owned())),
        Err(_) => toml::Value::String(text.to_owned()),
    }
}

/// Applies `section.key=value` to a parsed document.
pub fn apply_override(doc: &mut toml::Table, assignment: &str) -> Result<(), CliError> {
    let (path, value) = assignment.split_once('=').ok_or_else(|| {
        CliError::Config(format!(
            "override `{assignment}` is not of the form section.key=value"
        ))
    })?;
    let (section, key) = path.trim().split_once('.').ok_or_else(|| {
        CliError::Config(format!(
            "override key `{path}` is not of the form section.key"
        ))
    })?;
    let table = doc
        .entry(section.to_owned())
        .or_insert_with(|| toml::Value::Table(toml::Table::new()));
    let toml::Value::Table(table) = table else {
        return Err(config_err(section, "is not a table"));
    };
    table.insert(key.to_owned(), parse_override_value(value.trim()));
    Ok(())
}

/// Reads an optional config file, applies overrides and validates the result.
/// Relative mode-list paths resolve against the config file's directory.
pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<RunConfig, CliError> {
    let (mut doc, base) = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| {
                CliError::Config(format!("cannot read config {}: {e}", p.display()))
            })?;
            let doc = text
                .parse::<toml::Table>()
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            (doc, p.parent().map(Path::to_path_buf))
        }
        None => (toml::Table::new(), None),
    };
    for o in overrides {
        apply_override(&mut doc, o)?;
    }
    let raw: RawConfig = toml::Value::Table(doc)
        .try_into()
        .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
    raw.validate(base.as_deref())
}

fn parse_basis(field: &str, s: &str) -> Result<Basis, CliError> {
    match s {
        "site" => Ok(Basis::Site),
        "exciton" => Ok(Basis::Exciton),
        other => Err(config_err(
            field,
            format!("unknown basis `{other}` (site | exciton)"),
        )),
    }
}

/// Folds an asymmetry phase into `[0, π]`; only `cos θ` is physical.
fn fold_theta(theta: f64) -> f64 {
    if (-PI..0.0).contains(&theta) {
        -theta
    } else {
        theta + 0.0
    }
}

impl RawDimer {
    fn build(&self) -> Result<DimerParams, CliError> {
        let polar = self.eta_abs.is_some() || self.theta.is_some();
        let cartesian = self.eta_re.is_some() || self.eta_im.is_some();
        if polar && cartesian {
            return Err(config_err(
                "dimer.eta_re",
                "give either eta_abs/theta or eta_re/eta_im, not both",
            ));
        }
        let result = if cartesian {
            DimerParams::from_complex_eta(
                self.omega1,
                self.omega2,
                self.j12,
                self.lambda1,
                self.eta_re.unwrap_or(0.0),
                self.eta_im.unwrap_or(0.0),
            )
        } else {
            DimerParams::new(
                self.omega1,
                self.omega2,
                self.j12,
                self.lambda1,
                self.eta_abs.unwrap_or(1.64),
                fold_theta(self.theta.unwrap_or(0.0)),
            )
        };
        result.map_err(|e| match e {
            crate::Error::InvalidParameter { field, reason } => {
                config_err(&format!("dimer.{field}"), reason)
            }
            other => CliError::Config(other.to_string()),
        })
    }
}

impl RawInitialState {
    fn build(&self) -> Result<(InitialPreset, OneExcitationState), CliError> {
        let preset = match self.preset.as_str() {
            "site1" => InitialPreset::Site1,
            "site2" => InitialPreset::Site2,
            "exciton1" => InitialPreset::Exciton1,
            "exciton2" => InitialPreset::Exciton2,
            "superposition" => InitialPreset::Superposition,
            "custom" => InitialPreset::Custom,
            other => {
                return Err(config_err(
                    "initial_state.preset",
                    format!("unknown preset `{other}` (site1 | site2 | exciton1 | exciton2 | superposition | custom)"),
                ))
            }
        };
        let state = match preset {
            InitialPreset::Site1 => OneExcitationState::site1(),
            InitialPreset::Site2 => OneExcitationState::site2(),
            InitialPreset::Exciton1 => OneExcitationState::exciton1(),
            InitialPreset::Exciton2 => OneExcitationState::exciton2(),
            InitialPreset::Superposition => OneExcitationState::site_superposition(),
            InitialPreset::Custom => {
                let basis = parse_basis("initial_state.basis", &self.basis)?;
                let re = self
                    .re
                    .as_ref()
                    .ok_or_else(|| config_err("initial_state.re", "required for a custom state"))?;
                let zeros = vec![vec![0.0; 3]; 3];
                let im = self.im.as_ref().unwrap_or(&zeros);
                let well_formed =
                    |m: &Vec<Vec<f64>>| m.len() == 3 && m.iter().all(|row| row.len() == 3);
                if !well_formed(re) {
                    return Err(config_err("initial_state.re", "must be a 3x3 array"));
                }
                if !well_formed(im) {
                    return Err(config_err("initial_state.im", "must be a 3x3 array"));
                }
                let rho = DensityMatrix::from_fn(|i, j| Complex64::new(re[i][j], im[i][j]));
                OneExcitationState::new(basis, rho)
                    .map_err(|e| config_err("initial_state.re", e))?
            }
        };
        Ok((preset, state))
    }
}

impl RawConfig {
    pub fn validate(&self, base: Option<&Path>) -> Result<RunConfig, CliError> {
        let dimer = self.dimer.build()?;

        let b = &self.bath;
        let mut bath = BathSpec::new(b.temperature, b.gamma_d).map_err(|e| match e {
            crate::Error::InvalidParameter { field, reason } => {
                config_err(&format!("bath.{field}"), reason)
            }
            other => CliError::Config(other.to_string()),
        })?;
        let modes_csv = b.modes_csv.as_ref().map(|p| match base {
            Some(dir) if p.is_relative() => dir.join(p),
            _ => p.clone(),
        });
        if let Some(path) = &modes_csv {
            if !path.is_file() {
                return Err(config_err(
                    "bath.modes_csv",
                    format!("{} does not exist", path.display()),
                ));
            }
            let modes = read_modes(path).map_err(|e| config_err("bath.modes_csv", e))?;
            bath = bath
                .with_modes(modes)
                .map_err(|e| config_err("bath.modes_csv", e))?;
        }
        if b.renormalize && modes_csv.is_none() {
            return Err(config_err("bath.renormalize", "requires bath.modes_csv"));
        }

        let (preset, initial_state) = self.initial_state.build()?;

        let tg = &self.time_grid;
        if !(tg.t_max > 0.0) || !tg.t_max.is_finite() {
            return Err(config_err("time_grid.t_max", "must be > 0"));
        }
        if tg.n_points < 2 {
            return Err(config_err("time_grid.n_points", "must be >= 2"));
        }
        if !(tg.dt > 0.0) {
            return Err(config_err("time_grid.dt", "must be > 0"));
        }
        let time_grid = TimeGrid {
            t_max: tg.t_max,
            n_points: tg.n_points,
            dt: tg.dt,
            basis: parse_basis("time_grid.basis", &tg.basis)?,
        };

        let s = &self.sweep;
        if s.thetas.is_empty() {
            return Err(config_err("sweep.thetas", "must not be empty"));
        }
        if s.thetas.iter().any(|t| !(-PI..=PI).contains(t)) {
            return Err(config_err("sweep.thetas", "angles must lie in [-pi, pi]"));
        }
        if !(s.eta_min > 0.0) || !(s.eta_max > s.eta_min) || !s.eta_max.is_finite() {
            return Err(config_err("sweep.eta_min", "need 0 < eta_min < eta_max"));
        }
        if s.n_points < 2 {
            return Err(config_err("sweep.n_points", "must be >= 2"));
        }
        let sweep = SweepSpec {
            thetas: s.thetas.iter().copied().map(fold_theta).collect(),
            eta_min: s.eta_min,
            eta_max: s.eta_max,
            n_points: s.n_points,
        };

        if !(self.estimate.target_ratio > 0.0) || !self.estimate.target_ratio.is_finite() {
            return Err(config_err("estimate.target_ratio", "must be > 0"));
        }
        if !(self.estimate.eta_upper > 0.0) {
            return Err(config_err("estimate.eta_upper", "must be > 0"));
        }

        let h = &self.helix;
        if !(h.a_angstrom > 0.0) {
            return Err(config_err("helix.a_angstrom", "must be > 0"));
        }
        if !(h.v_m_s > 0.0) {
            return Err(config_err("helix.v_m_s", "must be > 0"));
        }
        if !h.j12.is_finite() {
            return Err(config_err("helix.j12", "must be finite"));
        }

        Ok(RunConfig {
            dimer,
            bath,
            modes_csv,
            renormalize: b.renormalize,
            preset,
            initial_state,
            time_grid,
            sweep,
            target_ratio: self.estimate.target_ratio,
            eta_upper: self.estimate.eta_upper,
            helix: HelixSpec {
                a_angstrom: h.a_angstrom,
                v_m_s: h.v_m_s,
                j12: h.j12,
            },
            output: self.output.dir.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load_str(text: &str, overrides: &[&str]) -> Result<RunConfig, CliError> {
        let mut doc: toml::Table = text.parse().unwrap();
        for o in overrides {
            apply_override(&mut doc, o)?;
        }
        let raw: RawConfig = toml::Value::Table(doc)
            .try_into()
            .map_err(|e: toml::de::Error| CliError::Config(e.to_string()))?;
        raw.validate(None)
    }

    #[test]
    fn defaults_are_the_fmo_dimer() {
        let c = load_str("", &[]).unwrap();
        assert_eq!(c.dimer.bare_gap(), 120.0);
        assert_eq!(c.dimer.j12, -96.0);
        assert_eq!(c.dimer.lambda1, 35.0);
        assert_eq!(c.sweep.thetas, TABLE_THETAS.to_vec());
        assert_eq!(c.target_ratio, 22.0);
    }

    #[test]
    fn overrides_replace_values() {
        let c = load_str(
            "[dimer]\neta_abs = 0.3\n",
            &[
                "dimer.eta_abs=0.71",
                "bath.temperature = 77",
                "time_grid.basis=exciton",
            ],
        )
        .unwrap();
        assert_eq!(c.dimer.eta_abs, 0.71);
        assert_eq!(c.bath.temperature, 77.0);
        assert_eq!(c.time_grid.basis, Basis::Exciton);
    }

    #[test]
    fn errors_name_the_field() {
        let msg = |r: Result<RunConfig, CliError>| r.unwrap_err().to_string();
        assert!(msg(load_str("", &["dimer.lambda1=-1"])).contains("dimer.lambda1"));
        assert!(msg(load_str("", &["time_grid.n_points=1"])).contains("time_grid.n_points"));
        assert!(msg(load_str("", &["initial_state.preset=nope"])).contains("initial_state.preset"));
        assert!(msg(load_str("", &["bath.modes_csv=/no/such/file.csv"])).contains("bath.modes_csv"));
        assert!(msg(load_str("", &["bath.renormalize=true"])).contains("bath.renormalize"));
        assert!(msg(load_str("[dimer]\nbogus = 1\n", &[])).contains("bogus"));
        assert!(load_str("", &["nodot=1"]).is_err());
    }

    #[test]
    fn negative_theta_folds() {
        let a = load_str("", &["dimer.theta=-0.5"]).unwrap();
        let b = load_str("", &["dimer.theta=0.5"]).unwrap();
        assert_eq!(a.dimer, b.dimer);
        let z = load_str("", &["dimer.theta=-0.0"]).unwrap();
        assert!(z.dimer.theta.is_sign_positive());
    }

    #[test]
    fn cartesian_eta() {
        let c = load_str("[dimer]\neta_re = 0.0\neta_im = 1.5\n", &[]).unwrap();
        assert_eq!(c.dimer.eta_abs, 1.5);
        assert!((c.dimer.theta - FRAC_PI_2).abs() < 1e-15);
        assert!(load_str("[dimer]\neta_re = 0.0\neta_abs = 1.5\n", &[]).is_err());
    }

    #[test]
    fn custom_initial_state() {
        let text = "[initial_state]\npreset = \"custom\"\nbasis = \"exciton\"\nre = [[0,0,0],[0,0.5,0.5],[0,0.5,0.5]]\n";
        let c = load_str(text, &[]).unwrap();
        assert_eq!(c.preset, InitialPreset::Custom);
        assert_eq!(c.initial_state.basis, Basis::Exciton);
        let bad = "[initial_state]\npreset = \"custom\"\nre = [[1,0,0],[0,1,0],[0,0,1]]\n";
        assert!(load_str(bad, &[]).is_err());
    }

    #[test]
    fn time_grid_nodes() {
        let g = TimeGrid {
            t_max: 10.0,
            n_points: 3,
            dt: 0.01,
            basis: Basis::Site,
        };
        assert_eq!(g.times(), vec![0.0, 5.0, 10.0]);
    }
}
