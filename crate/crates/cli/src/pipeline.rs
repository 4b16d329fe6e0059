//! construct → boost → window → synthesize / photon map / entropy, once per
//! rapidity, and the report that collects the results.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use covwave_core::{
    apply_window, boost_spectral, boost_window, construct_spectral, entropy_difference_with,
    integrate_real, invariant_norm, invariant_ratio, io, multiplier_pair, synthesize,
    synthesize_photon_field, to_photon, Boost, EntropyReport, GridFunction, SpectralFunction,
    SynthesisMode, WaveletSignal,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Command, ConfigFile, RunConfig};
use crate::error::CliError;

/// Results for one rapidity. Fields a command does not compute are omitted.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Record {
    pub eta: f64,
    pub p: f64,
    pub norm_squared: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplier_f: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplier_g: Option<f64>,
    /// The window in this frame, `kind,a,w`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_over_p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub windowed_norm_squared: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavelet_norm_squared: Option<f64>,
    /// RMS spread of |G(u)|² in u.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signal_spread: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_leakage: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge_leakage_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub photon_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_abs_a_minus_g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge_ok: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_analytic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_windowed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub command: String,
    pub timestamp: u64,
    pub config: ConfigFile,
    pub records: Vec<Record>,
}

impl RunReport {
    /// TOML text. The timestamp sits on its own `timestamp = …` line.
    pub fn to_toml(&self) -> Result<String, CliError> {
        toml::to_string(self).map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))
    }

    pub fn entropy_reports(&self) -> Vec<EntropyReport> {
        self.records
            .iter()
            .filter_map(|r| {
                Some(EntropyReport {
                    rapidity: r.eta,
                    s_analytic: r.s_analytic?,
                    s_windowed: r.s_windowed?,
                    delta_s: r.delta_s?,
                })
            })
            .collect()
    }
}

/// A delimited-text export: file name and contents.
#[derive(Debug, Clone, PartialEq)]
pub struct Dump {
    pub name: String,
    pub contents: Vec<u8>,
}

pub struct Outcome {
    pub report: RunReport,
    pub dumps: Vec<Dump>,
}

fn has(cfg: &RunConfig, commands: &[Command]) -> bool {
    cfg.command == Command::Sweep || commands.contains(&cfg.command)
}

/// Builds the rest-frame spectrum described by the config.
pub fn rest_spectrum(cfg: &RunConfig) -> Result<SpectralFunction, CliError> {
    let g = construct_spectral(&cfg.spectral)?;
    Ok(match cfg.reference_scale {
        Some(sigma) => SpectralFunction::with_reference_scale(g.data().clone(), sigma)?,
        None => g,
    })
}

/// Runs every rapidity (in parallel) and gathers records in config order.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let g0 = rest_spectrum(cfg)?;
    let results: Vec<(Record, Vec<Dump>)> = cfg
        .rapidities
        .par_iter()
        .enumerate()
        .map(|(i, &eta)| evaluate(cfg, &g0, i, eta))
        .collect::<Result<_, _>>()?;
    let (records, dumps): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok(Outcome {
        report: RunReport {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: cfg.command.name().to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            config: cfg.echo.clone(),
            records,
        },
        dumps: dumps.into_iter().flatten().collect(),
    })
}

fn evaluate(
    cfg: &RunConfig,
    g0: &SpectralFunction,
    index: usize,
    eta: f64,
) -> Result<(Record, Vec<Dump>), covwave_core::Error> {
    let boost = Boost::new(eta)?;
    let g = boost_spectral(g0, boost)?;
    let p = g.mean_momentum()?;
    let mut rec = Record {
        eta,
        p,
        norm_squared: g.norm_squared(),
        ..Default::default()
    };
    let mut dumps = Vec::new();
    let emit = cfg.output.emit_signals;
    let name = |stem: &str| format!("{stem}_{index:03}.csv");

    if has(cfg, &[Command::Boost]) {
        let (f, gm) = multiplier_pair(&g, p)?;
        rec.multiplier_f = Some(f);
        rec.multiplier_g = Some(gm);
    }

    let window = cfg.window.map(|w| boost_window(&w, boost));
    let working = match &window {
        Some(w) => {
            let windowed = apply_window(&g, w)?;
            rec.window = Some(w.to_string());
            rec.w_over_p = Some(invariant_ratio(w, p)?);
            rec.windowed_norm_squared = Some(windowed.norm_squared());
            windowed
        }
        None => g.clone(),
    };
    if emit {
        dumps.push(Dump {
            name: name("spectral"),
            contents: csv_bytes(|out| io::write_spectral(working.data(), out))?,
        });
    }

    let mut signal = None;
    if let Some(u) = cfg
        .u_grid
        .as_ref()
        .filter(|_| has(cfg, &[Command::Synthesize]))
    {
        let s = synthesize(&working, u, SynthesisMode::Wavelet)?;
        rec.wavelet_norm_squared = Some(s.norm_squared());
        rec.signal_spread = Some(spread(&s));
        rec.edge_leakage = Some(s.edge_leakage());
        rec.edge_leakage_ok = Some(s.edge_leakage() < cfg.tolerances.edge_leakage);
        if emit {
            dumps.push(Dump {
                name: name("wavelet"),
                contents: csv_bytes(|out| io::write_signal(&s, out))?,
            });
        }
        signal = Some(s);
    }

    if cfg.needs_photon() {
        let a = to_photon(&working, working.mean_momentum()?)?;
        rec.photon_norm = Some(invariant_norm(&a));
        if emit {
            dumps.push(Dump {
                name: name("photon"),
                contents: csv_bytes(|out| io::write_spectral(a.data(), out))?,
            });
            dumps.push(Dump {
                name: name("profile"),
                contents: profile(working.data(), a.data()).into_bytes(),
            });
        }
        let bridge = cfg.photon_bridge || cfg.command == Command::Photon;
        if let Some(u) = cfg.u_grid.as_ref().filter(|_| bridge) {
            let big_g = match signal.take() {
                Some(s) => s,
                None => synthesize(&working, u, SynthesisMode::Wavelet)?,
            };
            let big_a = synthesize_photon_field(&a, u)?;
            let diff = big_a
                .data
                .values()
                .iter()
                .zip(big_g.data.values())
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            rec.max_abs_a_minus_g = Some(diff);
            rec.bridge_ok = Some(diff <= cfg.tolerances.bridge * big_g.data.max_abs());
            if emit {
                dumps.push(Dump {
                    name: name("photon_field"),
                    contents: csv_bytes(|out| io::write_signal(&big_a, out))?,
                });
            }
        }
    }

    if let Some(win) = cfg
        .window
        .as_ref()
        .filter(|_| has(cfg, &[Command::Entropy]))
    {
        let r = entropy_difference_with(g0, win, boost, cfg.density_mode)?;
        rec.s_analytic = Some(r.s_analytic);
        rec.s_windowed = Some(r.s_windowed);
        rec.delta_s = Some(r.delta_s);
    }

    Ok((rec, dumps))
}

fn csv_bytes(
    write: impl FnOnce(&mut Vec<u8>) -> covwave_core::Result<()>,
) -> Result<Vec<u8>, covwave_core::Error> {
    let mut buf = Vec::new();
    write(&mut buf)?;
    Ok(buf)
}

/// `sqrt(∫(u - ū)²|G|² du / ∫|G|² du)`.
fn spread(s: &WaveletSignal) -> f64 {
    let mass = s.norm_squared();
    if mass <= 0.0 {
        return 0.0;
    }
    let mean = integrate_real(&s.data, |u, v| u * v.norm_sqr()) / mass;
    (integrate_real(&s.data, |u, v| (u - mean).powi(2) * v.norm_sqr()) / mass).sqrt()
}

/// `k,g_sq,a_sq`: intensity and photon profiles side by side on the photon
/// amplitude's grid.
fn profile(g: &GridFunction, a: &GridFunction) -> String {
    // the photon map only trims leading nodes
    let offset = g.values().len() - a.values().len();
    let mut out = String::from("k,g_sq,a_sq\n");
    for (i, (k, av)) in a.grid().nodes().zip(a.values()).enumerate() {
        let gv = g.values()[offset + i];
        out.push_str(&format!("{k},{},{}\n", gv.norm_sqr(), av.norm_sqr()));
    }
    out
}

/// Writes the report (or prints it), the entropy CSV and any signal dumps.
/// Returns the report text.
pub fn emit(cfg: &RunConfig, outcome: &Outcome, base_dir: &Path) -> Result<String, CliError> {
    let text = outcome.report.to_toml()?;
    let resolve = |p: &PathBuf| base_dir.join(p);
    if let Some(path) = cfg.output.report.as_ref().map(resolve) {
        write_file(&path, text.as_bytes())?;
    }
    if let Some(path) = cfg.output.entropy_csv.as_ref().map(resolve) {
        let reports = outcome.report.entropy_reports();
        let mut buf = Vec::new();
        io::write_entropy(&reports, &mut buf)?;
        write_file(&path, &buf)?;
    }
    if cfg.output.emit_signals && !outcome.dumps.is_empty() {
        // default: `signals/` beside the report, else beside the config
        let dir = match (&cfg.output.signals_dir, &cfg.output.report) {
            (Some(d), _) => resolve(d),
            (None, Some(r)) => resolve(r).parent().unwrap_or(base_dir).join("signals"),
            (None, None) => base_dir.join("signals"),
        };
        fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        for d in &outcome.dumps {
            write_file(&dir.join(&d.name), &d.contents)?;
        }
    }
    Ok(text)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)
            .map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
