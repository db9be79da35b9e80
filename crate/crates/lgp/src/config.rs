//! Run configuration: one JSON manifest, optionally overridden by flags.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use lgp_core::boundary::{cantor_stage_datum, ArcValue, CantorVariant, DEFAULT_FAT_RHO, DEFAULT_RESOLUTION};
use lgp_core::{Anisotropy, BoundaryDatum, ConvexDomain, Point};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, CliResult};
use crate::io;

pub const MIN_GRID_SIDE: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DomainSpec {
    Circle { center: [f64; 2], radius: f64 },
    Ellipse { center: [f64; 2], a: f64, b: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

impl Default for DomainSpec {
    fn default() -> Self {
        DomainSpec::Circle { center: [0.0, 0.0], radius: 1.0 }
    }
}

impl DomainSpec {
    pub fn build(&self) -> CliResult<ConvexDomain> {
        let pt = |c: &[f64; 2]| Point::new(c[0], c[1]);
        Ok(match self {
            DomainSpec::Circle { center, radius } => ConvexDomain::circle(pt(center), *radius)?,
            DomainSpec::Ellipse { center, a, b } => ConvexDomain::ellipse(pt(center), *a, *b)?,
            DomainSpec::Polygon { vertices } => ConvexDomain::polygon(vertices.iter().map(pt).collect())?,
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantName {
    #[default]
    Thin,
    Fat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DatumSpec {
    /// `cos(2θ − phase)`.
    Brothers {
        #[serde(default)]
        phase: f64,
    },
    Constant {
        value: f64,
    },
    /// Indicator of the counterclockwise arc `[from, to]`.
    Arc {
        from: f64,
        to: f64,
    },
    Cantor {
        stage: u32,
        #[serde(default)]
        variant: VariantName,
        #[serde(default)]
        rho: Option<f64>,
    },
    /// `c + Σ a_k cos kθ + b_k sin kθ`, `k` starting at 1.
    Trig {
        #[serde(default)]
        constant: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
    },
    Steps {
        arcs: Vec<io::ArcRecord>,
        #[serde(default)]
        background: f64,
    },
    /// CSV with header `theta,value` on a uniform grid.
    Csv {
        path: PathBuf,
    },
    /// JSON list of `{"from","to","value"}` arcs on a zero background.
    Piecewise {
        path: PathBuf,
        #[serde(default)]
        background: f64,
    },
}

impl Default for DatumSpec {
    fn default() -> Self {
        DatumSpec::Brothers { phase: 0.0 }
    }
}

fn arcs_of(records: &[io::ArcRecord]) -> Vec<ArcValue> {
    records.iter().map(|r| ArcValue { from: r.from, to: r.to, value: r.value }).collect()
}

impl DatumSpec {
    /// Builds the datum; relative paths are taken from `base`.
    pub fn build(&self, base: &Path, resolution: usize) -> CliResult<BoundaryDatum> {
        let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base.join(p) };
        let datum = match self {
            DatumSpec::Brothers { phase } => {
                let phase = *phase;
                BoundaryDatum::analytic(format!("cos(2θ - {phase})"), resolution, move |t| (2.0 * t - phase).cos())?
            }
            DatumSpec::Constant { value } => BoundaryDatum::constant(*value),
            DatumSpec::Arc { from, to } => BoundaryDatum::arc_indicator(*from, *to)?,
            DatumSpec::Cantor { stage, variant, rho } => cantor_stage_datum(*stage, cantor_variant(*variant, *rho))?,
            DatumSpec::Trig { constant, cos, sin } => {
                let (c, a, b) = (*constant, cos.clone(), sin.clone());
                BoundaryDatum::analytic("trigonometric polynomial", resolution, move |t| {
                    let mut v = c;
                    for (k, ak) in a.iter().enumerate() {
                        v += ak * ((k + 1) as f64 * t).cos();
                    }
                    for (k, bk) in b.iter().enumerate() {
                        v += bk * ((k + 1) as f64 * t).sin();
                    }
                    v
                })?
            }
            DatumSpec::Steps { arcs, background } => BoundaryDatum::piecewise_constant(&arcs_of(arcs), *background)?,
            DatumSpec::Csv { path } => io::read_sampled_csv(&resolve(path))?,
            DatumSpec::Piecewise { path, background } => {
                let arcs = io::read_piecewise_json(&resolve(path))?;
                BoundaryDatum::piecewise_constant(&arcs_of(&arcs), *background)?
            }
        };
        Ok(datum)
    }
}

pub fn cantor_variant(name: VariantName, rho: Option<f64>) -> CantorVariant {
    match name {
        VariantName::Thin => CantorVariant::Thin,
        VariantName::Fat => CantorVariant::Fat { rho: rho.unwrap_or(DEFAULT_FAT_RHO) },
    }
}

/// Anisotropy exponent; `∞` is written `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Exponent(pub f64);

impl Default for Exponent {
    fn default() -> Self {
        Exponent(2.0)
    }
}

impl FromStr for Exponent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Exponent(f64::INFINITY)),
            t => t
                .parse::<f64>()
                .map(Exponent)
                .map_err(|_| format!("invalid exponent {s:?}; expected a number or \"inf\"")),
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exponent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Exponent(v)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Grid resolution, written `WxH` on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSize(pub usize, pub usize);

impl Default for GridSize {
    fn default() -> Self {
        GridSize(256, 256)
    }
}

impl FromStr for GridSize {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("invalid grid {s:?}; expected WxH");
        let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        Ok(GridSize(w.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?))
    }
}

/// Per-command knobs. Commands ignore the ones they do not use.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Experiment {
    /// Inward offset for the trace check.
    pub band: f64,
    /// Trace discrepancy, relative to `∫|f|`, above which a run is flagged.
    pub trace_flag: f64,
    /// Samples per turn for analytic data.
    pub resolution: usize,
    /// Mollifier widths, decreasing.
    pub eps: Vec<f64>,
    /// Grid side used for L¹ distances between solutions.
    pub l1_grid: usize,
    pub n_max: u32,
    pub variant: VariantName,
    pub rho: Option<f64>,
    /// Cantor stages (from 1) that are also solved.
    pub solve_stages: u32,
    pub trials: usize,
    pub seed: u64,
    /// Jump threshold for decomposition; default a thousandth of the range.
    pub jump_threshold: Option<f64>,
    /// Steps per staircase witness.
    pub staircase_steps: usize,
}

impl Default for Experiment {
    fn default() -> Self {
        Experiment {
            band: 0.01,
            trace_flag: 0.25,
            resolution: DEFAULT_RESOLUTION,
            eps: (4..=10).map(|k| 2f64.powi(-k)).collect(),
            l1_grid: 1024,
            n_max: 10,
            variant: VariantName::Thin,
            rho: None,
            solve_stages: 0,
            trials: 500,
            seed: 0,
            jump_threshold: None,
            staircase_steps: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub domain: DomainSpec,
    pub datum: DatumSpec,
    pub p: Exponent,
    pub levels: usize,
    pub grid: GridSize,
    pub out: PathBuf,
    pub experiment: Experiment,
    /// Directory relative data paths are resolved against; the config file's
    /// directory when loaded from disk.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            domain: DomainSpec::default(),
            datum: DatumSpec::default(),
            p: Exponent::default(),
            levels: lgp_core::solver::DEFAULT_LEVELS,
            grid: GridSize::default(),
            out: PathBuf::from("out"),
            experiment: Experiment::default(),
            base_dir: PathBuf::from("."),
        }
    }
}

/// Command-line values that replace the manifest's.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub levels: Option<usize>,
    pub grid: Option<GridSize>,
    pub p: Option<Exponent>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg: RunConfig = serde_json::from_str(&text).map_err(|e| CliError::format(path, e))?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(out) = &o.out {
            self.out = out.clone();
        }
        if let Some(k) = o.levels {
            self.levels = k;
        }
        if let Some(g) = o.grid {
            self.grid = g;
        }
        if let Some(p) = o.p {
            self.p = p;
        }
        if let Some(s) = o.seed {
            self.experiment.seed = s;
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let fail = |m: String| Err(CliError::Validation(m));
        if !(self.p.0 >= 1.0) {
            return fail(format!("p = {} must lie in [1, inf]", self.p));
        }
        if self.levels < 2 {
            return fail(format!("levels = {} must be at least 2", self.levels));
        }
        if self.grid.0 < MIN_GRID_SIDE || self.grid.1 < MIN_GRID_SIDE {
            return fail(format!("grid {}x{} below {MIN_GRID_SIDE}x{MIN_GRID_SIDE}", self.grid.0, self.grid.1));
        }
        let e = &self.experiment;
        if !(e.band > 0.0) {
            return fail(format!("band {} must be positive", e.band));
        }
        if e.eps.iter().any(|&x| !(x > 0.0 && x < PI)) {
            return fail("mollifier widths must lie in (0, π)".into());
        }
        if e.eps.windows(2).any(|w| w[1] >= w[0]) {
            return fail("mollifier widths must be strictly decreasing".into());
        }
        if e.l1_grid < MIN_GRID_SIDE {
            return fail(format!("l1_grid {} below {MIN_GRID_SIDE}", e.l1_grid));
        }
        if e.staircase_steps == 0 {
            return fail("staircase_steps must be positive".into());
        }
        Ok(())
    }

    pub fn anisotropy(&self) -> CliResult<Anisotropy> {
        Ok(Anisotropy::new(self.p.0)?)
    }

    pub fn domain(&self) -> CliResult<ConvexDomain> {
        self.domain.build()
    }

    pub fn datum(&self) -> CliResult<BoundaryDatum> {
        self.datum.build(&self.base_dir, self.experiment.resolution)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_inf_and_numbers() {
        let c = RunConfig::from_json(r#"{"p":"inf","levels":50,"grid":[64,48]}"#).unwrap();
        assert!(c.p.0.is_infinite());
        assert_eq!(c.grid, GridSize(64, 48));
        assert_eq!(RunConfig::from_json(r#"{"p":1.5}"#).unwrap().p, Exponent(1.5));
        assert_eq!(serde_json::to_string(&Exponent(f64::INFINITY)).unwrap(), "\"inf\"");
    }

    #[test]
    fn domain_forms() {
        let c = RunConfig::from_json(r#"{"domain":{"kind":"ellipse","center":[0,0],"a":2,"b":1}}"#).unwrap();
        assert!((c.domain().unwrap().area() - 2.0 * PI).abs() < 1e-9);
        let c = RunConfig::from_json(r#"{"domain":{"kind":"circle","center":[1,2],"radius":3}}"#).unwrap();
        assert!(c.domain().unwrap().contains(Point::new(1.0, 4.9)));
        assert!(RunConfig::from_json(r#"{"domain":{"kind":"square"}}"#).is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::default();
        c.validate().unwrap();
        c.p = Exponent(0.5);
        assert_eq!(c.validate().unwrap_err().exit_code(), 2);
        let mut c = RunConfig::default();
        c.apply(&Overrides { grid: Some(GridSize(16, 64)), ..Default::default() });
        assert!(c.validate().is_err());
        let mut c = RunConfig::default();
        c.levels = 1;
        assert!(c.validate().is_err());
    }

    #[test]
    fn flag_parsing() {
        assert_eq!("128x64".parse::<GridSize>().unwrap(), GridSize(128, 64));
        assert!("128".parse::<GridSize>().is_err());
        assert!("INF".parse::<Exponent>().unwrap().0.is_infinite());
        assert!("abc".parse::<Exponent>().is_err());
    }

    #[test]
    fn trig_datum() {
        let c = RunConfig::from_json(r#"{"datum":{"kind":"trig","cos":[0,1]}}"#).unwrap();
        let f = c.datum().unwrap();
        assert!((f.eval(0.3) - 0.6f64.cos()).abs() < 1e-12);
    }
}
