//! Run configuration: the TOML file, command-line overrides, and validation
//! into a [`RunConfig`].
//!
//! ```toml
//! [spectral]
//! family = "gaussian"     # gaussian | flat | samples
//! center = 5.0            # gaussian
//! width = 0.5             # gaussian
//! # lower = 1.0           # flat support
//! # upper = 3.0
//! # samples = "g.csv"     # samples: `k,re,im` file, relative to the config
//! k_lower = 0.1           # required for gaussian, defaults to the support for flat
//! k_upper = 20.0
//! k_count = 4096
//! # reference_scale = 5.0 # σ; defaults to the rest-frame mean momentum
//!
//! [window]
//! kind = "second"         # first | second
//! a = 4.5
//! w = 1.0
//!
//! [boosts]
//! eta = [0.0, 0.5, 1.0]
//!
//! [synthesis]
//! u_lower = -40.0
//! u_upper = 40.0
//! u_count = 4096
//! photon_bridge = true
//!
//! [entropy]
//! density_mode = "intensity"   # intensity | photon
//!
//! [tolerances]
//! bridge = 1e-8           # max|A - G| relative to max|G|
//! edge_leakage = 1e-8     # |signal| at the u-grid edges relative to its peak
//!
//! [output]
//! report = "report.toml"  # stdout when absent
//! signals_dir = "signals"
//! emit_signals = false
//! entropy_csv = "entropy.csv"
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use covwave_core::{io::read_spectral, DensityMode, Grid, Kind, SpectralShape, Window};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Violation};

pub const DEFAULT_GRID_COUNT: usize = 4096;
pub const DEFAULT_BRIDGE_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_EDGE_LEAKAGE_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Synthesize,
    Boost,
    Window,
    Photon,
    Entropy,
    Sweep,
    Check,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Synthesize => "synthesize",
            Command::Boost => "boost",
            Command::Window => "window",
            Command::Photon => "photon",
            Command::Entropy => "entropy",
            Command::Sweep => "sweep",
            Command::Check => "check",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boosts: Option<BoostsSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub synthesis: Option<SynthesisSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy: Option<EntropySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_upper: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_scale: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoostsSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_lower: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_upper: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub photon_bridge: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropySection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density_mode: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bridge: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_leakage: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signals_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emit_signals: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy_csv: Option<PathBuf>,
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    /// Raw `--eta` list, comma separated.
    pub eta: Option<String>,
    /// Raw `--window kind,a,w`.
    pub window: Option<String>,
    pub grid_n: Option<usize>,
    pub out: Option<PathBuf>,
    pub density_mode: Option<String>,
    pub emit_signals: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub bridge: f64,
    pub edge_leakage: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputPlan {
    pub report: Option<PathBuf>,
    pub signals_dir: Option<PathBuf>,
    pub entropy_csv: Option<PathBuf>,
    pub emit_signals: bool,
}

/// A validated run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub spectral: SpectralShape,
    pub reference_scale: Option<f64>,
    pub window: Option<Window>,
    pub rapidities: Vec<f64>,
    pub u_grid: Option<Grid>,
    pub photon_bridge: bool,
    pub density_mode: DensityMode,
    pub tolerances: Tolerances,
    pub output: OutputPlan,
    /// Effective configuration after overrides, echoed into the report.
    pub echo: ConfigFile,
}

impl RunConfig {
    /// Whether the photon map is evaluated for this run.
    pub fn needs_photon(&self) -> bool {
        needs_photon(self.command, self.photon_bridge)
    }
}

fn needs_photon(command: Command, photon_bridge: bool) -> bool {
    match command {
        Command::Photon | Command::Sweep => true,
        Command::Synthesize | Command::Check => photon_bridge,
        _ => false,
    }
}

/// Reads and parses a config file.
pub fn load(path: &Path) -> Result<ConfigFile, CliError> {
    let text = fs::read_to_string(path).map_err(|e| {
        CliError::Config(vec![Violation::new(
            "config",
            format!("cannot read {}: {e}", path.display()),
        )])
    })?;
    toml::from_str(&text).map_err(|e| {
        let msg = e
            .to_string()
            .lines()
            .filter(|l| !l.trim().is_empty())
            .collect::<Vec<_>>()
            .join(" ");
        CliError::Config(vec![Violation::new(
            "config",
            format!("{}: {msg}", path.display()),
        )])
    })
}

/// Folds command-line overrides into the config. Malformed override values
/// are reported as violations.
pub fn apply_overrides(cfg: &mut ConfigFile, o: &Overrides) -> Vec<Violation> {
    let mut violations = Vec::new();
    if let Some(raw) = &o.eta {
        let parsed: Result<Vec<f64>, _> = raw
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
            .collect();
        match parsed {
            Ok(list) => cfg.boosts.get_or_insert_with(Default::default).eta = Some(list),
            Err(e) => violations.push(Violation::new("--eta", e)),
        }
    }
    if let Some(raw) = &o.window {
        let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [kind, a, w] => match (a.parse::<f64>(), w.parse::<f64>()) {
                (Ok(a), Ok(w)) => {
                    cfg.window = Some(WindowSection {
                        kind: Some(kind.to_string()),
                        a: Some(a),
                        w: Some(w),
                    })
                }
                _ => violations.push(Violation::new(
                    "--window",
                    format!("non-numeric edge in `{raw}`"),
                )),
            },
            _ => violations.push(Violation::new(
                "--window",
                format!("expected `kind,a,w`, got `{raw}`"),
            )),
        }
    }
    if let Some(n) = o.grid_n {
        cfg.spectral.get_or_insert_with(Default::default).k_count = Some(n);
        if let Some(s) = cfg.synthesis.as_mut() {
            s.u_count = Some(n);
        }
    }
    if let Some(out) = &o.out {
        cfg.output.get_or_insert_with(Default::default).report = Some(out.clone());
    }
    if let Some(mode) = &o.density_mode {
        cfg.entropy
            .get_or_insert_with(Default::default)
            .density_mode = Some(mode.clone());
    }
    if o.emit_signals {
        cfg.output.get_or_insert_with(Default::default).emit_signals = Some(true);
    }
    violations
}

/// Checks every section and collects all violations. `base_dir` resolves
/// relative input paths. Reads input files; never writes.
pub fn validate(
    cfg: &ConfigFile,
    command: Command,
    base_dir: &Path,
) -> Result<RunConfig, Vec<Violation>> {
    let mut v = Vec::new();

    let synthesis = cfg.synthesis.clone().unwrap_or_default();
    let photon_bridge = synthesis.photon_bridge.unwrap_or(false);
    let photon = needs_photon(command, photon_bridge);

    let spectral = validate_spectral(cfg.spectral.as_ref(), photon, base_dir, &mut v);
    let reference_scale = cfg.spectral.as_ref().and_then(|s| s.reference_scale);
    if let Some(sigma) = reference_scale {
        if !(sigma > 0.0) || !sigma.is_finite() {
            v.push(Violation::new(
                "spectral.reference_scale",
                format!("must be positive, got {sigma}"),
            ));
        }
    }

    let window = cfg.window.as_ref().and_then(|w| validate_window(w, &mut v));
    if window.is_none()
        && cfg.window.is_none()
        && matches!(command, Command::Window | Command::Entropy)
    {
        v.push(Violation::new(
            "window",
            format!("`{}` needs a window", command.name()),
        ));
    }

    let rapidities = cfg
        .boosts
        .as_ref()
        .and_then(|b| b.eta.clone())
        .unwrap_or_default();
    if rapidities.is_empty() {
        v.push(Violation::new(
            "boosts.eta",
            "rapidity list must be non-empty",
        ));
    }
    if let Some(bad) = rapidities.iter().find(|e| !e.is_finite()) {
        v.push(Violation::new(
            "boosts.eta",
            format!("rapidities must be finite, got {bad}"),
        ));
    }

    let u_grid = match &cfg.synthesis {
        None => {
            if command == Command::Synthesize {
                v.push(Violation::new(
                    "synthesis",
                    "`synthesize` needs a [synthesis] u-grid",
                ));
            }
            None
        }
        Some(s) => match (s.u_lower, s.u_upper) {
            (Some(lo), Some(hi)) => {
                match Grid::new(lo, hi, s.u_count.unwrap_or(DEFAULT_GRID_COUNT)) {
                    Ok(g) => Some(g),
                    Err(e) => {
                        v.push(Violation::new("synthesis", e.to_string()));
                        None
                    }
                }
            }
            _ => {
                v.push(Violation::new(
                    "synthesis",
                    "u_lower and u_upper are required",
                ));
                None
            }
        },
    };

    let density_mode = match cfg.entropy.as_ref().and_then(|e| e.density_mode.as_deref()) {
        None => DensityMode::default(),
        Some(m) => m.parse().unwrap_or_else(|e: covwave_core::Error| {
            v.push(Violation::new("entropy.density_mode", e.to_string()));
            DensityMode::default()
        }),
    };

    let tol = cfg.tolerances.clone().unwrap_or_default();
    let mut tolerance = |name: &str, value: Option<f64>, default: f64| match value {
        None => default,
        Some(t) if t > 0.0 && t.is_finite() => t,
        Some(t) => {
            v.push(Violation::new(
                format!("tolerances.{name}"),
                format!("must be positive, got {t}"),
            ));
            default
        }
    };
    let tolerances = Tolerances {
        bridge: tolerance("bridge", tol.bridge, DEFAULT_BRIDGE_TOLERANCE),
        edge_leakage: tolerance(
            "edge_leakage",
            tol.edge_leakage,
            DEFAULT_EDGE_LEAKAGE_TOLERANCE,
        ),
    };

    let out = cfg.output.clone().unwrap_or_default();
    let output = OutputPlan {
        report: out.report,
        signals_dir: out.signals_dir,
        entropy_csv: out.entropy_csv,
        emit_signals: out.emit_signals.unwrap_or(false),
    };

    match spectral {
        Some(spectral) if v.is_empty() => Ok(RunConfig {
            command,
            spectral,
            reference_scale,
            window,
            rapidities,
            u_grid,
            photon_bridge,
            density_mode,
            tolerances,
            output,
            echo: cfg.clone(),
        }),
        _ => Err(v),
    }
}

const PHOTON_K_POSITIVE: &str =
    "the photon map a = sqrt(k/p) g needs a k-grid that excludes k = 0 (k > 0 precondition)";

fn validate_spectral(
    s: Option<&SpectralSection>,
    photon: bool,
    base_dir: &Path,
    v: &mut Vec<Violation>,
) -> Option<SpectralShape> {
    let Some(s) = s else {
        v.push(Violation::new("spectral", "missing [spectral] section"));
        return None;
    };
    let count = s.k_count.unwrap_or(DEFAULT_GRID_COUNT);
    if count < 2 {
        v.push(Violation::new(
            "spectral.k_count",
            format!("must be at least 2, got {count}"),
        ));
    }
    let require = |name: &str, value: Option<f64>, v: &mut Vec<Violation>| {
        if value.is_none() {
            v.push(Violation::new(format!("spectral.{name}"), "required"));
        }
        value
    };
    let positive_grid = |lower: f64, v: &mut Vec<Violation>| {
        if lower <= 0.0 {
            v.push(Violation::new(
                "spectral.k_lower",
                format!("must be > 0 for gaussian and flat spectra, got {lower}"),
            ));
            if photon {
                v.push(Violation::new("photon", PHOTON_K_POSITIVE));
            }
        }
    };
    let grid = |lo: f64, hi: f64, v: &mut Vec<Violation>| match covwave_core::Grid::new(
        lo,
        hi,
        count.max(2),
    ) {
        Ok(g) => Some(g),
        Err(e) => {
            v.push(Violation::new("spectral.k_grid", e.to_string()));
            None
        }
    };

    match s.family.as_deref() {
        Some("gaussian") => {
            let center = require("center", s.center, v);
            let width = require("width", s.width, v);
            let k_lower = require("k_lower", s.k_lower, v);
            let k_upper = require("k_upper", s.k_upper, v);
            if let Some(c) = center.filter(|c| !(*c > 0.0)) {
                v.push(Violation::new(
                    "spectral.center",
                    format!("must be positive, got {c}"),
                ));
            }
            if let Some(w) = width.filter(|w| !(*w > 0.0)) {
                v.push(Violation::new(
                    "spectral.width",
                    format!("must be positive, got {w}"),
                ));
            }
            let (k_lower, k_upper) = (k_lower?, k_upper?);
            positive_grid(k_lower, v);
            let grid = grid(k_lower, k_upper, v)?;
            Some(SpectralShape::Gaussian {
                center: center?,
                width: width?,
                grid,
            })
        }
        Some("flat") => {
            let (lower, upper) = (require("lower", s.lower, v)?, require("upper", s.upper, v)?);
            if !(lower > 0.0 && lower < upper) {
                v.push(Violation::new(
                    "spectral.lower",
                    format!("flat support needs 0 < lower < upper, got [{lower}, {upper}]"),
                ));
            }
            let k_lower = s.k_lower.unwrap_or(lower);
            positive_grid(k_lower, v);
            let grid = grid(k_lower, s.k_upper.unwrap_or(upper), v)?;
            Some(SpectralShape::Flat { lower, upper, grid })
        }
        Some("samples") => {
            let Some(path) = &s.samples else {
                v.push(Violation::new(
                    "spectral.samples",
                    "required for family `samples`",
                ));
                return None;
            };
            let path = base_dir.join(path);
            let data = fs::File::open(&path)
                .map_err(|e| e.to_string())
                .and_then(|f| read_spectral(f).map_err(|e| e.to_string()));
            match data {
                Ok(data) => {
                    if photon && data.grid().lower() <= 0.0 {
                        v.push(Violation::new("photon", PHOTON_K_POSITIVE));
                    }
                    Some(SpectralShape::Samples(data))
                }
                Err(e) => {
                    v.push(Violation::new(
                        "spectral.samples",
                        format!("{}: {e}", path.display()),
                    ));
                    None
                }
            }
        }
        Some(other) => {
            v.push(Violation::new(
                "spectral.family",
                format!("expected gaussian, flat or samples, got `{other}`"),
            ));
            None
        }
        None => {
            v.push(Violation::new("spectral.family", "required"));
            None
        }
    }
}

fn validate_window(w: &WindowSection, v: &mut Vec<Violation>) -> Option<Window> {
    let kind = match w.kind.as_deref().map(str::parse::<Kind>) {
        Some(Ok(k)) => Some(k),
        Some(Err(e)) => {
            v.push(Violation::new("window.kind", e.to_string()));
            None
        }
        None => {
            v.push(Violation::new("window.kind", "required"));
            None
        }
    };
    if w.a.is_none() {
        v.push(Violation::new("window.a", "required"));
    }
    match w.w {
        None => v.push(Violation::new("window.w", "required")),
        Some(width) if !(width > 0.0) || !width.is_finite() => v.push(Violation::new(
            "window.w",
            format!("Window invariant violated: width w must be > 0, got {width}"),
        )),
        _ => {}
    }
    Window::new(kind?, w.a?, w.w?).ok()
}
