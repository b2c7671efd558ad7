//! Experiment configuration: a versioned TOML document with one table per
//! subcommand. Missing keys take defaults; [`ExperimentConfig::normalize`]
//! then writes every derived value back so the echoed config is complete.

use std::path::{Path, PathBuf};

use highgenus::decoding::DecoderKind;
use highgenus::geometry::default_beta;
use highgenus::surface::SurfaceBlueprint;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const CONFIG_FORMAT: &str = "highgenus-config";
pub const CONFIG_VERSION: &str = "1.0";
/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "HIGHGENUS_OUT_DIR";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "format_name")]
    pub format: String,
    #[serde(default = "format_version")]
    pub version: String,
    /// Master seed.
    #[serde(default = "one")]
    pub seed: u64,
    /// Output directory; defaults to `$HIGHGENUS_OUT_DIR`, then `.`.
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    /// Surface read by the analysis commands; defaults to the build output.
    #[serde(default)]
    pub surface: Option<PathBuf>,
    #[serde(default)]
    pub build: BuildConfig,
    #[serde(default)]
    pub systole: SystoleConfig,
    #[serde(default)]
    pub growth: GrowthConfig,
    #[serde(default)]
    pub simulate: SimulateConfig,
    #[serde(default)]
    pub threshold: ThresholdConfig,
    #[serde(default)]
    pub walks: WalksConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BuildConfig {
    pub l: usize,
    pub n: usize,
    pub hole_side: Option<usize>,
    pub tube_length: Option<usize>,
    pub base_side: Option<usize>,
    pub symmetrized: bool,
    pub reversed_glue: bool,
    /// Side of a plain flat torus to write instead of a handled surface; 0 disables.
    pub torus: usize,
    /// File name of the surface, relative to the output directory.
    pub output: PathBuf,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystoleConfig {
    /// Cross-check with the exhaustive search up to this length; 0 disables.
    pub bruteforce_radius: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GrowthConfig {
    pub roots: usize,
    pub r_max: usize,
    /// Kink density for the recursion; omitted means measured on the surface.
    pub rho: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateConfig {
    pub p: Vec<f64>,
    pub trials: u64,
    pub decoders: Vec<DecoderKind>,
    /// Write one row per trial to `trials.csv`.
    pub log_trials: bool,
    /// Fit the scaling law across the surfaces and rates.
    pub fit: bool,
    pub beta: f64,
    /// Surfaces to simulate; defaults to `[surface]`.
    pub surfaces: Vec<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThresholdConfig {
    pub l: f64,
    pub n: Vec<f64>,
    pub beta: f64,
    pub alpha: f64,
    /// Use the doubled kink density `16/L²`.
    pub symmetrized: bool,
    /// Surface for the walk multiplier column; omitted skips it.
    pub walk_surface: Option<PathBuf>,
    pub walk_root: usize,
    pub walk_r_max: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WalksConfig {
    pub root: usize,
    pub r_max: usize,
}

fn format_name() -> String {
    CONFIG_FORMAT.into()
}

fn format_version() -> String {
    CONFIG_VERSION.into()
}

fn one() -> u64 {
    1
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            format: format_name(),
            version: format_version(),
            seed: 1,
            out_dir: None,
            surface: None,
            build: BuildConfig::default(),
            systole: SystoleConfig::default(),
            growth: GrowthConfig::default(),
            simulate: SimulateConfig::default(),
            threshold: ThresholdConfig::default(),
            walks: WalksConfig::default(),
        }
    }
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig {
            l: 8,
            n: 4,
            hole_side: None,
            tube_length: None,
            base_side: None,
            symmetrized: false,
            reversed_glue: false,
            torus: 0,
            output: PathBuf::from("surface.json"),
        }
    }
}

impl Default for GrowthConfig {
    fn default() -> Self {
        GrowthConfig {
            roots: 10,
            r_max: 16,
            rho: None,
        }
    }
}

impl Default for SimulateConfig {
    fn default() -> Self {
        SimulateConfig {
            p: vec![0.02],
            trials: 1000,
            decoders: vec![DecoderKind::Mwpm],
            log_trials: false,
            fit: false,
            beta: default_beta(),
            surfaces: Vec::new(),
        }
    }
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig {
            l: 8.0,
            n: vec![16.0, 256.0],
            beta: default_beta(),
            alpha: 0.5,
            symmetrized: false,
            walk_surface: None,
            walk_root: 0,
            walk_r_max: 12,
        }
    }
}

impl Default for WalksConfig {
    fn default() -> Self {
        WalksConfig { root: 0, r_max: 12 }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        if cfg.format != CONFIG_FORMAT {
            return Err(CliError::Config(format!(
                "unknown config format {:?}",
                cfg.format
            )));
        }
        let major = |s: &str| s.split('.').next().unwrap_or_default().to_string();
        if major(&cfg.version) != major(CONFIG_VERSION) {
            return Err(CliError::Config(format!(
                "unsupported config version {}",
                cfg.version
            )));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn blueprint(&self) -> SurfaceBlueprint {
        let b = &self.build;
        SurfaceBlueprint {
            l: b.l,
            n: b.n,
            hole_side: b.hole_side,
            tube_length: b.tube_length,
            base_side: b.base_side,
            seed: self.seed,
            symmetrized: b.symmetrized,
            reversed_glue: b.reversed_glue,
        }
    }

    /// Fills every derived default: the output directory (from `env_out_dir`
    /// when unset), the surface path, the resolved blueprint sizes and the
    /// simulated surface list. Idempotent.
    pub fn normalize(&mut self, env_out_dir: Option<PathBuf>) -> CliResult<()> {
        if self.out_dir.is_none() {
            self.out_dir = Some(env_out_dir.unwrap_or_else(|| PathBuf::from(".")));
        }
        if self.surface.is_none() {
            self.surface = Some(self.out_dir().join(&self.build.output));
        }
        if self.build.torus == 0 {
            let r = self
                .blueprint()
                .resolve()
                .map_err(|e| CliError::Config(e.to_string()))?;
            self.build.hole_side = Some(r.hole_side);
            self.build.tube_length = Some(r.tube_length);
            self.build.base_side = Some(r.base_side);
        }
        if self.simulate.surfaces.is_empty() {
            self.simulate
                .surfaces
                .push(self.surface_path().to_path_buf());
        }
        self.check()
    }

    fn check(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.simulate.p.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return bad(format!(
                "error rates must lie in [0, 1]: {:?}",
                self.simulate.p
            ));
        }
        if self.simulate.trials == 0 {
            return bad("trials must be positive".into());
        }
        if self.simulate.decoders.is_empty() {
            return bad("at least one decoder is required".into());
        }
        if !(self.simulate.beta > 0.0 && self.simulate.beta <= 1.0) {
            return bad(format!(
                "simulate.beta must lie in (0, 1], got {}",
                self.simulate.beta
            ));
        }
        if self.growth.roots == 0 {
            return bad("growth.roots must be positive".into());
        }
        if self.threshold.n.is_empty() {
            return bad("threshold.n must list at least one handle count".into());
        }
        if self.walks.r_max == 0 || self.threshold.walk_r_max == 0 {
            return bad("walk radius must be positive".into());
        }
        Ok(())
    }

    pub fn out_dir(&self) -> &Path {
        self.out_dir.as_deref().unwrap_or(Path::new("."))
    }

    pub fn surface_path(&self) -> &Path {
        self.surface.as_deref().unwrap_or(Path::new("surface.json"))
    }
}
