//! Experiment configuration: a flat TOML file with one section per module,
//! plus validation and the environment override for the output directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::phase::PhaseFamily;
use crate::{Error, Result};

/// Environment variable that overrides the configured output directory.
pub const OUTPUT_DIR_ENV: &str = "HGWAVE_OUT";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct GroupSection {
    pub n: u32,
}

impl Default for GroupSection {
    fn default() -> Self {
        GroupSection { n: 1 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct PhaseSection {
    /// One of "frac_schrodinger", "frac_wave", "fourth_order".
    pub family: String,
    pub alpha: f64,
}

impl Default for PhaseSection {
    fn default() -> Self {
        PhaseSection { family: "frac_schrodinger".into(), alpha: 0.5 }
    }
}

impl PhaseSection {
    pub fn family(&self) -> Result<PhaseFamily> {
        match self.family.as_str() {
            "frac_schrodinger" => Ok(PhaseFamily::FracSchrodinger { alpha: self.alpha }),
            "frac_wave" => Ok(PhaseFamily::FracWave { alpha: self.alpha }),
            "fourth_order" => Ok(PhaseFamily::FourthOrder),
            other => Err(Error::Config(format!("unknown phase family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentSection {
    pub j_list: Vec<i32>,
    /// Log-spaced t-list specification.
    pub t_min: f64,
    pub t_max: f64,
    pub t_count: usize,
    /// Seed for randomized spot-checks.
    pub seed: u64,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        ExperimentSection { j_list: vec![0], t_min: 1e2, t_max: 1e4, t_count: 6, seed: 42 }
    }
}

impl ExperimentSection {
    pub fn t_list(&self) -> Vec<f64> {
        if self.t_count == 1 {
            return vec![self.t_min];
        }
        (0..self.t_count)
            .map(|i| {
                self.t_min
                    * (self.t_max / self.t_min).powf(i as f64 / (self.t_count - 1) as f64)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct ToleranceSection {
    pub quad_tol: f64,
    /// Laguerre modes retained in kernel evaluations.
    pub m_max: u32,
    pub r_points: usize,
    pub s_points: usize,
    pub panel_budget: usize,
}

impl Default for ToleranceSection {
    fn default() -> Self {
        ToleranceSection {
            quad_tol: 1e-9,
            m_max: 48,
            r_points: 64,
            s_points: 257,
            panel_budget: 1 << 20,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputSection {
    pub dir: String,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { dir: "out".into() }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub group: GroupSection,
    pub phase: PhaseSection,
    pub experiment: ExperimentSection,
    pub tolerances: ToleranceSection,
    pub output: OutputSection,
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let config: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.group.n == 0 {
            return Err(Error::Config("group.n must be >= 1".into()));
        }
        self.phase.family()?;
        if self.experiment.t_count == 0 {
            return Err(Error::Config("experiment.t_count must be >= 1".into()));
        }
        if !(self.experiment.t_min > 0.0) || self.experiment.t_max < self.experiment.t_min {
            return Err(Error::Config(
                "experiment t-range must satisfy 0 < t_min <= t_max".into(),
            ));
        }
        if self.experiment.t_count > 1 && self.experiment.t_max == self.experiment.t_min {
            return Err(Error::Config("t-list must be strictly increasing".into()));
        }
        if self.experiment.j_list.is_empty() {
            return Err(Error::Config("experiment.j_list must be nonempty".into()));
        }
        if !(self.tolerances.quad_tol > 0.0) {
            return Err(Error::Config("tolerances.quad_tol must be positive".into()));
        }
        if self.tolerances.r_points < 2 || self.tolerances.s_points < 2 {
            return Err(Error::Config("search grid needs at least 2 points per axis".into()));
        }
        Ok(())
    }

    /// Output directory after applying the environment override.
    pub fn output_dir(&self) -> PathBuf {
        match std::env::var(OUTPUT_DIR_ENV) {
            Ok(dir) if !dir.is_empty() => PathBuf::from(dir),
            _ => PathBuf::from(&self.output.dir),
        }
    }

    pub fn evolve_settings(&self) -> crate::evolve::EvolveSettings {
        crate::evolve::EvolveSettings {
            m_max: self.tolerances.m_max,
            r_points: self.tolerances.r_points,
            s_points: self.tolerances.s_points,
            panel_budget: self.tolerances.panel_budget,
            theta_scale: 1.0,
        }
    }

    /// Scales the accuracy knobs uniformly (CLI --tol-scale).
    pub fn apply_tol_scale(&mut self, scale: f64) -> Result<()> {
        if !(scale > 0.0) {
            return Err(Error::Config("tol-scale must be positive".into()));
        }
        self.tolerances.quad_tol *= scale;
        if scale > 1.0 {
            // quick runs: coarser grids and fewer modes
            let shrink = |v: usize| ((v as f64 / scale.sqrt()).round() as usize).max(8);
            self.tolerances.r_points = shrink(self.tolerances.r_points);
            self.tolerances.s_points = shrink(self.tolerances.s_points) | 1;
            self.tolerances.m_max =
                ((self.tolerances.m_max as f64 / scale.sqrt()).round() as u32).max(4);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        ExperimentConfig::default().validate().unwrap();
    }

    #[test]
    fn parses_partial_toml() {
        let c = ExperimentConfig::from_toml(
            "[phase]\nfamily = \"fourth_order\"\n\n[experiment]\nt_count = 7\n",
        )
        .unwrap();
        assert!(matches!(c.phase.family().unwrap(), PhaseFamily::FourthOrder));
        assert_eq!(c.experiment.t_count, 7);
        assert_eq!(c.group.n, 1);
    }

    #[test]
    fn rejects_empty_t_list() {
        let r = ExperimentConfig::from_toml("[experiment]\nt_count = 0\n");
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    fn rejects_unknown_family() {
        let r = ExperimentConfig::from_toml("[phase]\nfamily = \"airy\"\n");
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    fn t_list_log_spacing() {
        let mut c = ExperimentConfig::default();
        c.experiment.t_min = 100.0;
        c.experiment.t_max = 10000.0;
        c.experiment.t_count = 3;
        let ts = c.experiment.t_list();
        assert_eq!(ts.len(), 3);
        assert!((ts[1] - 1000.0).abs() < 1e-9);
        assert!(ts.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn env_override_output_dir() {
        let c = ExperimentConfig::default();
        std::env::set_var(OUTPUT_DIR_ENV, "/tmp/hgwave-test-env");
        assert_eq!(c.output_dir(), PathBuf::from("/tmp/hgwave-test-env"));
        std::env::remove_var(OUTPUT_DIR_ENV);
        assert_eq!(c.output_dir(), PathBuf::from("out"));
    }
}
