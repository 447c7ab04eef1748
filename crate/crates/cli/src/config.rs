//! Run configuration: defaults, a flat `key = value` file, then flags.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;

/// A uniform grid `start:stop:step` (inclusive of `stop` up to rounding).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    pub const fn new(start: f64, stop: f64, step: f64) -> Self {
        Self { start, stop, step }
    }

    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + self.step * k as f64).collect()
    }

    fn validate(&self, what: &str) -> Result<(), ConfigError> {
        let ok = [self.start, self.stop, self.step].iter().all(|v| v.is_finite()) && self.step > 0.0 && self.stop > self.start;
        if ok {
            Ok(())
        } else {
            Err(ConfigError(format!("{what}: grid needs start < stop and a positive step")))
        }
    }
}

impl std::str::FromStr for Grid {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(ConfigError(format!("grid `{s}` is not start:stop:step")));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| ConfigError(format!("grid `{s}` has a bad number `{t}`")));
        Ok(Grid::new(num(parts[0])?, num(parts[1])?, num(parts[2])?))
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Reference tolerances. Check thresholds are their built-in values scaled by
/// `configured / default` of the matching class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub algebraic: f64,
    pub fd: f64,
    pub ode: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { algebraic: 1e-10, fd: 1e-5, ode: 1e-4 }
    }
}

impl Tolerances {
    pub fn alg_scale(&self) -> f64 {
        self.algebraic / Tolerances::default().algebraic
    }

    pub fn fd_scale(&self) -> f64 {
        self.fd / Tolerances::default().fd
    }

    pub fn ode_scale(&self) -> f64 {
        self.ode / Tolerances::default().ode
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Sample points per space-form.
    pub points: usize,
    /// `H` values of the default verification grid.
    pub h_values: Vec<f64>,
    pub table2_grid_r0: Grid,
    pub table2_grid_r1: Grid,
    pub table3_grid: Grid,
    /// Causal vectors per energy-condition cell.
    pub energy_samples: usize,
    pub t_max: f64,
    pub dt: f64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            tolerances: Tolerances::default(),
            points: 50,
            h_values: vec![-2.5, -1.0, 0.0, 1.0, 2.0, 2.9],
            table2_grid_r0: Grid::new(-2.75, 20.0, 0.25),
            table2_grid_r1: Grid::new(-20.0, 2.75, 0.25),
            table3_grid: Grid::new(-5.0, 6.0, 0.05),
            energy_samples: 1000,
            t_max: 5.0,
            dt: 1e-3,
            out: None,
        }
    }
}

/// Keys accepted in the config file.
pub const KEYS: [&str; 12] = [
    "seed",
    "tol_alg",
    "tol_fd",
    "tol_ode",
    "points",
    "h_values",
    "table2_grid_r0",
    "table2_grid_r1",
    "table3_grid",
    "energy_samples",
    "t_max",
    "dt",
];

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError(format!("{key}: cannot parse `{v}`")))
}

impl RunConfig {
    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected key = value", n + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, v: &str) -> Result<(), ConfigError> {
        match key {
            "seed" => self.seed = parse(key, v)?,
            "tol_alg" => self.tolerances.algebraic = parse(key, v)?,
            "tol_fd" => self.tolerances.fd = parse(key, v)?,
            "tol_ode" => self.tolerances.ode = parse(key, v)?,
            "points" => self.points = parse(key, v)?,
            "h_values" => self.h_values = v.split(',').map(|t| parse(key, t.trim())).collect::<Result<_, _>>()?,
            "table2_grid_r0" => self.table2_grid_r0 = v.parse()?,
            "table2_grid_r1" => self.table2_grid_r1 = v.parse()?,
            "table3_grid" => self.table3_grid = v.parse()?,
            "energy_samples" => self.energy_samples = parse(key, v)?,
            "t_max" => self.t_max = parse(key, v)?,
            "dt" => self.dt = parse(key, v)?,
            _ => return Err(ConfigError(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, LoadError> {
        let text = std::fs::read_to_string(path).map_err(|e| LoadError::Io(format!("{}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        cfg.apply_text(&text).map_err(LoadError::Config)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let t = &self.tolerances;
        if !(t.algebraic > 0.0 && t.fd > 0.0 && t.ode > 0.0) {
            return Err(ConfigError("tolerances must be positive".into()));
        }
        if self.points == 0 || self.energy_samples == 0 {
            return Err(ConfigError("point and sample counts must be positive".into()));
        }
        if self.h_values.is_empty() || self.h_values.windows(2).any(|w| w[0] >= w[1]) || self.h_values.iter().any(|h| !h.is_finite()) {
            return Err(ConfigError("h_values must be a nonempty increasing list".into()));
        }
        self.table2_grid_r0.validate("table2_grid_r0")?;
        self.table2_grid_r1.validate("table2_grid_r1")?;
        self.table3_grid.validate("table3_grid")?;
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(ConfigError("dt must be positive".into()));
        }
        if !(self.t_max >= 0.0 && self.t_max.is_finite()) {
            return Err(ConfigError("t_max must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadError {
    Io(String),
    Config(ConfigError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_values_inclusive() {
        let g: Grid = "-2.75:20:0.25".parse().unwrap();
        let v = g.values();
        assert_eq!(v.len(), 92);
        assert!((v[63] - 13.0).abs() < 1e-12);
        assert!("1:2".parse::<Grid>().is_err());
    }

    #[test]
    fn file_overrides_defaults() {
        let mut c = RunConfig::default();
        c.apply_text("# comment\nseed = 7\ntol_fd=2e-5 # trailing\nh_values = 0, 1.5\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.tolerances.fd, 2e-5);
        assert_eq!(c.h_values, vec![0.0, 1.5]);
        assert!((c.tolerances.fd_scale() - 2.0).abs() < 1e-12);
        assert!(c.apply_text("bogus = 1").is_err());
        assert!(c.apply_text("seed").is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::default();
        assert!(c.validate().is_ok());
        c.h_values = vec![1.0, 0.0];
        assert!(c.validate().is_err());
        let mut c = RunConfig::default();
        c.tolerances.ode = 0.0;
        assert!(c.validate().is_err());
        let mut c = RunConfig::default();
        c.table3_grid = Grid::new(1.0, 0.0, 0.1);
        assert!(c.validate().is_err());
    }
}
