//! Command-line front end. Every command reads a TOML scenario and writes a
//! [`ResultTable`] to `<out>/<command>.csv` plus a provenance sidecar.

pub mod config;
pub mod table;

pub use config::ScenarioConfig;
pub use table::{Cell, Provenance, ResultTable};

use crate::channel::ae_level_channel;
use crate::error::{Error, Result};
use crate::geometry::rayleigh_distance;
use crate::phy::{hybrid_precoder, ConnectionMask, PhaseResolution};
use crate::random::{complex_normal, rng};
use crate::sensing::{
    advise_frequency_plan, build_sensing_model, estimate_mixture, extract_absorption,
    synthesize_observations, FrequencyPlan, MixtureOptions,
};
use crate::spectro::{
    absorption_spectrum, approx_absorption, total_noise_power, ExactOptions, LineDatabase, Medium,
    DEFAULT_NOISE_STEP_HZ, H2O,
};
use crate::CMatrix;
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "terasim", version, about = "Terahertz channel and array simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Scenario file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
    /// Overrides the scenario seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; all cores when absent.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Spreading, molecular and total loss over a frequency grid.
    Pathloss,
    /// Rayleigh distance against SA spacing.
    Rayleigh,
    /// Hybrid-precoding rate per mask, stream count and power.
    Rate,
    /// Monte Carlo mixing-ratio estimation.
    Sense,
    /// Checks the scenario and line list, then prints a summary.
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Pathloss => "pathloss",
            Command::Rayleigh => "rayleigh",
            Command::Rate => "rate",
            Command::Sense => "sense",
            Command::Validate => "validate",
        }
    }
}

/// Parsed scenario plus what is needed for provenance.
pub struct Scenario {
    pub config: ScenarioConfig,
    pub bytes: Vec<u8>,
    /// `--seed`, else the scenario seed.
    pub seed: Option<u64>,
    pub db: LineDatabase,
}

impl Scenario {
    pub fn load(path: &Path, seed_override: Option<u64>) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        let text = std::str::from_utf8(&bytes)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(text, seed_override, path.parent())
    }

    /// `base` resolves a relative `linelist` path.
    pub fn from_toml(text: &str, seed_override: Option<u64>, base: Option<&Path>) -> Result<Self> {
        let config = ScenarioConfig::from_toml(text)?;
        let linelist = config.linelist.as_ref().map(|p| match base {
            Some(b) if p.is_relative() => b.join(p),
            _ => p.clone(),
        });
        let db = LineDatabase::resolve(linelist.as_deref())?;
        Ok(Scenario {
            seed: seed_override.or(config.seed),
            bytes: text.as_bytes().to_vec(),
            config,
            db,
        })
    }

    fn provenance(&self, cmd: Command) -> Provenance {
        Provenance::new(cmd.name(), &self.bytes, self.seed)
    }

    fn require_seed(&self, what: &str) -> Result<u64> {
        self.seed.ok_or_else(|| {
            Error::Config(format!("{what} is stochastic; set `seed` in the scenario or pass --seed"))
        })
    }

    fn medium(&self) -> Result<Medium> {
        self.config.medium.to_medium()
    }
}

fn section<'a, T>(s: &'a Option<T>, name: &str) -> Result<&'a T> {
    s.as_ref()
        .ok_or_else(|| Error::Config(format!("missing [{name}] section")))
}

/// Runs one table-producing command.
pub fn run_command(cmd: Command, sc: &Scenario) -> Result<ResultTable> {
    match cmd {
        Command::Pathloss => pathloss(sc),
        Command::Rayleigh => rayleigh(sc),
        Command::Rate => rate(sc),
        Command::Sense => sense(sc),
        Command::Validate => Err(Error::invalid("validate does not produce a table")),
    }
}

fn frequency_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start > 0.0 && stop >= start && step > 0.0) {
        return Err(Error::Config(format!(
            "invalid frequency grid start={start} stop={stop} step={step}"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|i| start + i as f64 * step).collect())
}

fn pathloss(sc: &Scenario) -> Result<ResultTable> {
    let cfg = section(&sc.config.pathloss, "pathloss")?;
    let medium = sc.medium()?;
    let freqs = frequency_grid(cfg.f_start_hz, cfg.f_stop_hz, cfg.f_step_hz)?;
    if cfg.distances_m.is_empty() || cfg.distances_m.iter().any(|&d| !(d > 0.0)) {
        return Err(Error::Config("distances_m must be positive and non-empty".into()));
    }
    let k = match cfg.model.approx() {
        None => absorption_spectrum(&freqs, &medium, &sc.db, &ExactOptions::default())?,
        Some(model) => {
            let mu = medium.mixing_ratio(H2O, 1);
            freqs
                .iter()
                .map(|&f| approx_absorption(f, mu, model, cfg.force))
                .collect::<Result<Vec<_>>>()?
        }
    };
    let mut t = ResultTable::new(
        &["f_hz", "d_m", "k_per_m", "spreading_db", "molecular_db", "total_db"],
        sc.provenance(Command::Pathloss),
    );
    let c = crate::constants::SPEED_OF_LIGHT;
    for &d in &cfg.distances_m {
        for (&f, &kf) in freqs.iter().zip(&k) {
            let spread = 20.0 * (4.0 * std::f64::consts::PI * f * d / c).log10();
            let mol = 10.0 * std::f64::consts::LOG10_E * kf * d;
            t.push(vec![
                Cell::Float(f),
                Cell::Float(d),
                Cell::Float(kf),
                Cell::Float(spread),
                Cell::Float(mol),
                Cell::Float(spread + mol),
            ])?;
        }
    }
    Ok(t)
}

fn rayleigh(sc: &Scenario) -> Result<ResultTable> {
    let cfg = section(&sc.config.rayleigh, "rayleigh")?;
    let spacings = cfg.spacing_m.values()?;
    let mut t = ResultTable::new(
        &["m", "n", "f_hz", "lambda_m", "spacing_m", "rayleigh_m"],
        sc.provenance(Command::Rayleigh),
    );
    for a in &cfg.arrays {
        for &f in &cfg.frequencies_hz {
            let lambda = crate::constants::wavelength(f);
            for &s in &spacings {
                let d = rayleigh_distance(a.m, a.n, s, s, lambda)?;
                t.push(vec![
                    Cell::Int(a.m as i64),
                    Cell::Int(a.n as i64),
                    Cell::Float(f),
                    Cell::Float(lambda),
                    Cell::Float(s),
                    Cell::Float(d),
                ])?;
            }
        }
    }
    Ok(t)
}

fn build_mask(spec: &config::MaskSpec, n_sa: usize, n_rf: usize) -> Result<(String, ConnectionMask)> {
    match spec {
        config::MaskSpec::Preset(name) => {
            let m = match name.as_str() {
                "full" => ConnectionMask::fully_connected(n_sa, n_rf)?,
                "aosa" => ConnectionMask::fixed_aosa(n_sa, n_rf)?,
                "single" => ConnectionMask::single_connection(n_sa, n_rf)?,
                other => {
                    return Err(Error::Config(format!(
                        "unknown mask preset `{other}` (expected full, aosa or single)"
                    )))
                }
            };
            Ok((name.clone(), m))
        }
        config::MaskSpec::Custom { links } => {
            Ok(("custom".into(), ConnectionMask::new(n_sa, n_rf, links.clone())?))
        }
    }
}

fn rate(sc: &Scenario) -> Result<ResultTable> {
    let cfg = section(&sc.config.rate, "rate")?;
    let tx = sc.config.tx_array()?;
    let medium = sc.medium()?;
    let (h, distance) = match cfg.channel {
        config::ChannelSource::Los => {
            let rx = sc.config.rx_array()?;
            let h = ae_level_channel(&tx, &rx, &medium, &sc.db)?;
            (h.entries, h.distance_m)
        }
        config::ChannelSource::Rayleigh => {
            let m = cfg
                .rx_antennas
                .ok_or_else(|| Error::Config("rayleigh channel needs rx_antennas".into()))?;
            let mut r = rng(sc.require_seed("[rate] with a rayleigh channel")?);
            let h = CMatrix::from_fn(m, tx.num_aes(), |_, _| complex_normal(&mut r, 1.0));
            let d = match &sc.config.rx {
                Some(rx) => {
                    let o = rx.origin;
                    let t = tx.origin;
                    ((o[0] - t[0]).powi(2) + (o[1] - t[1]).powi(2) + (o[2] - t[2]).powi(2)).sqrt()
                }
                None => 0.0,
            };
            (h, d)
        }
    };
    let noise = match (cfg.noise_w, cfg.bandwidth_hz, cfg.system_temperature_k) {
        (Some(n), None, None) => n,
        (None, Some(b), Some(t_sys)) => {
            let fc = tx.carrier_frequency_hz;
            total_noise_power(
                (fc - b / 2.0, fc + b / 2.0),
                distance,
                t_sys,
                &medium,
                &sc.db,
                DEFAULT_NOISE_STEP_HZ,
            )?
        }
        _ => {
            return Err(Error::Config(
                "give either noise_w or both bandwidth_hz and system_temperature_k".into(),
            ))
        }
    };
    let phases = match cfg.phase_bits {
        None => PhaseResolution::Continuous,
        Some(bits) => PhaseResolution::Quantized { bits },
    };
    let masks = cfg
        .masks
        .iter()
        .map(|m| build_mask(m, tx.num_sas(), cfg.n_rf))
        .collect::<Result<Vec<_>>>()?;

    let mut jobs = Vec::new();
    for (mi, _) in masks.iter().enumerate() {
        for &ns in &cfg.streams {
            for &p in &cfg.powers_w {
                jobs.push((mi, ns, p));
            }
        }
    }
    let rates: Vec<Result<Option<f64>>> = jobs
        .par_iter()
        .map(|&(mi, ns, p)| {
            match hybrid_precoder(&h, &masks[mi].1, tx.q, ns, p, noise, phases) {
                Ok(hp) => Ok(Some(hp.rate)),
                Err(Error::InvalidInput(msg)) if msg.starts_with("mask cannot carry") => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();

    let mut t = ResultTable::new(
        &["mask", "ns", "power_w", "noise_w", "rate_bps_hz"],
        sc.provenance(Command::Rate),
    );
    for (&(mi, ns, p), r) in jobs.iter().zip(rates) {
        let rate = match r? {
            Some(v) => Cell::Float(v),
            None => Cell::Text("nan".into()),
        };
        t.push(vec![
            Cell::Text(masks[mi].0.clone()),
            Cell::Int(ns as i64),
            Cell::Float(p),
            Cell::Float(noise),
            rate,
        ])?;
    }
    Ok(t)
}

fn sense(sc: &Scenario) -> Result<ResultTable> {
    let cfg = section(&sc.config.sense, "sense")?;
    let tx = sc.config.tx_array()?;
    let rx = sc.config.rx_array()?;
    let truth = sc.medium()?;
    let mut template = truth.clone();
    for &g in &cfg.unknown_gases {
        if truth.mixing_ratio(g, 0) == 0.0 && !truth.gas_ids().contains(&g) {
            return Err(Error::Config(format!(
                "unknown gas {g} is not in [medium]; its true ratio is needed to score estimates"
            )));
        }
        template.set_gas_ratio(g, cfg.initial_ratio)?;
    }
    let plan = match (&cfg.frequencies_hz, cfg.band_hz) {
        (Some(f), _) => FrequencyPlan {
            frequencies_hz: f.clone(),
        },
        (None, Some(band)) => {
            advise_frequency_plan(&sc.db, &template, &cfg.unknown_gases, (band[0], band[1]), tx.num_sas())?
        }
        (None, None) => {
            return Err(Error::Config("give frequencies_hz or band_hz in [sense]".into()))
        }
    };
    let model = build_sensing_model(&tx, &rx, &truth, &sc.db, &plan)?;
    let opts = MixtureOptions {
        refinement_passes: cfg.refinement_passes,
        ..Default::default()
    };
    let seed = match cfg.snr_db {
        Some(_) => sc.require_seed("[sense] with snr_db")?,
        None => sc.seed.unwrap_or(0),
    };
    let estimates: Vec<Result<_>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| {
            let obs = synthesize_observations(&model, cfg.snr_db, seed, trial);
            let samples = extract_absorption(&obs, &model.geometric)?;
            estimate_mixture(&samples, &sc.db, &template, &cfg.unknown_gases, &opts)
        })
        .collect();

    let mut t = ResultTable::new(
        &["trial", "gas", "q_true", "q_hat", "rel_error", "residual_per_m"],
        sc.provenance(Command::Sense),
    );
    for (trial, est) in estimates.into_iter().enumerate() {
        let est = est?;
        for (&g, &q) in est.gases.iter().zip(&est.mixing_ratios) {
            let q_true = truth.mixing_ratio(g, 0);
            t.push(vec![
                Cell::Int(trial as i64),
                Cell::Int(g as i64),
                Cell::Float(q_true),
                Cell::Float(q),
                Cell::Float((q - q_true).abs() / q_true),
                Cell::Float(est.residual_norm),
            ])?;
        }
    }
    Ok(t)
}

/// Human-readable summary for `validate`; array warnings go to `warnings`.
pub fn validate(sc: &Scenario, warnings: &mut Vec<String>) -> Result<String> {
    let mut out = String::new();
    let medium = sc.medium()?;
    out += &format!(
        "line list: {} lines, gases {:?}\n",
        sc.db.len(),
        sc.db.gas_ids()
    );
    out += &format!(
        "medium: T={} K p={} atm species={}\n",
        medium.temperature_k(),
        medium.pressure_atm(),
        medium.species().len()
    );
    for (name, a) in [("tx", &sc.config.tx), ("rx", &sc.config.rx)] {
        if let Some(a) = a {
            let arr = a.to_array()?;
            warnings.extend(arr.validate()?.into_iter().map(|w| format!("{name}: {w}")));
            out += &format!(
                "{name}: {}x{} SAs, {} AEs per SA\n",
                arr.sa_rows,
                arr.sa_cols,
                arr.aes_per_sa()
            );
        }
    }
    for (name, present) in [
        ("pathloss", sc.config.pathloss.is_some()),
        ("rayleigh", sc.config.rayleigh.is_some()),
        ("rate", sc.config.rate.is_some()),
        ("sense", sc.config.sense.is_some()),
    ] {
        if present {
            out += &format!("[{name}] present\n");
        }
    }
    match sc.seed {
        Some(s) => out += &format!("seed: {s}\n"),
        None => out += "seed: none\n",
    }
    Ok(out)
}

/// Writes `<dir>/<command>.csv` and `<dir>/<command>.provenance.toml`.
pub fn write_table(dir: &Path, t: &ResultTable) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let csv = dir.join(format!("{}.csv", t.provenance.command));
    let side = dir.join(format!("{}.provenance.toml", t.provenance.command));
    let f = std::fs::File::create(&csv).map_err(|e| Error::io(&csv, e))?;
    t.write_csv(f)?;
    let f = std::fs::File::create(&side).map_err(|e| Error::io(&side, e))?;
    t.write_provenance(f)?;
    Ok(csv)
}

/// Entry point behind the binary. Returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    }
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config is required".into()))?;
    let sc = Scenario::load(path, cli.seed)?;
    if cli.command == Command::Validate {
        let mut warnings = Vec::new();
        let summary = validate(&sc, &mut warnings)?;
        for w in warnings {
            eprintln!("warning: {w}");
        }
        print!("{summary}");
        return Ok(());
    }
    let t = run_command(cli.command, &sc)?;
    let path = write_table(&cli.out, &t)?;
    eprintln!("wrote {} rows to {}", t.rows.len(), path.display());
    Ok(())
}
