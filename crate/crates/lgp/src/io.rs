//! File formats: boundary data in, fields, matchings, trees and summaries out.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use lgp_core::decompose::RegionTree;
use lgp_core::solver::{NestingViolation, SuperlevelFamily};
use lgp_core::{BoundaryDatum, LevelMatching, SolutionField};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcRecord {
    pub from: f64,
    pub to: f64,
    pub value: f64,
}

#[derive(Debug, Deserialize)]
struct SampleRow {
    theta: f64,
    value: f64,
}

/// Reads `theta,value` rows sampled on the uniform grid `2πi/N`.
pub fn read_sampled_csv(path: &Path) -> CliResult<BoundaryDatum> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| CliError::format(path, e))?;
    let headers = reader.headers().map_err(|e| CliError::format(path, e))?.clone();
    if headers.iter().map(str::trim).collect::<Vec<_>>() != ["theta", "value"] {
        return Err(CliError::format(path, "expected header \"theta,value\""));
    }
    let mut pairs = Vec::new();
    for row in reader.deserialize::<SampleRow>() {
        let row = row.map_err(|e| CliError::format(path, e))?;
        pairs.push((row.theta, row.value));
    }
    Ok(BoundaryDatum::sampled_from_pairs(&pairs)?)
}

pub fn write_sampled_csv(path: &Path, f: &BoundaryDatum, samples: usize) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::format(path, e))?;
    w.write_record(["theta", "value"]).map_err(|e| CliError::format(path, e))?;
    for i in 0..samples {
        let theta = std::f64::consts::TAU * i as f64 / samples as f64;
        w.serialize((theta, f.eval(theta))).map_err(|e| CliError::format(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn read_piecewise_json(path: &Path) -> CliResult<Vec<ArcRecord>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::format(path, e))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingRecord {
    pub t: f64,
    pub pairs: Vec<[usize; 2]>,
    pub cost: f64,
    pub area: f64,
}

impl From<&LevelMatching> for MatchingRecord {
    fn from(m: &LevelMatching) -> Self {
        MatchingRecord {
            t: m.level,
            pairs: m.pairs.iter().map(|&(i, j)| [i, j]).collect(),
            cost: m.cost,
            area: m.enclosed_area,
        }
    }
}

pub fn family_matchings(family: &SuperlevelFamily) -> Vec<MatchingRecord> {
    family.levels.iter().map(|l| MatchingRecord::from(&l.matching)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub cells: usize,
    pub area: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeRecord {
    pub regions: Vec<RegionRecord>,
    pub edges: Vec<EdgeRecord>,
    pub root: usize,
}

impl From<&RegionTree> for TreeRecord {
    fn from(t: &RegionTree) -> Self {
        TreeRecord {
            regions: t.regions.iter().map(|r| RegionRecord { cells: r.cells, area: r.area }).collect(),
            edges: t.edges.iter().map(|e| EdgeRecord { a: e.a, b: e.b, weight: e.weight }).collect(),
            root: t.root,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub lower: f64,
    pub upper: f64,
}

impl From<&NestingViolation> for ViolationRecord {
    fn from(v: &NestingViolation) -> Self {
        ViolationRecord { lower: v.lower, upper: v.upper }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub band: f64,
    pub discrepancy: f64,
    /// Discrepancy over `∫|f|`.
    pub relative: f64,
    pub flagged: bool,
}

/// Run summary shared by every command; absent quantities are `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema: u32,
    pub command: String,
    pub coarea_tv: Option<f64>,
    pub grid_tv: Option<f64>,
    pub kept_levels: usize,
    pub skipped_levels: Vec<f64>,
    pub repaired_levels: Vec<f64>,
    pub nesting_violations: Vec<ViolationRecord>,
    pub trace: Option<TraceRecord>,
    /// Command-specific scalars.
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl Summary {
    pub fn new(command: &str) -> Self {
        Summary {
            schema: SCHEMA_VERSION,
            command: command.into(),
            coarea_tv: None,
            grid_tv: None,
            kept_levels: 0,
            skipped_levels: Vec::new(),
            repaired_levels: Vec::new(),
            nesting_violations: Vec::new(),
            trace: None,
            metrics: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_family(mut self, family: &SuperlevelFamily) -> Self {
        self.coarea_tv = Some(family.coarea_tv());
        self.kept_levels = family.levels.len();
        self.skipped_levels = family.skipped.clone();
        self.repaired_levels = family.repaired.clone();
        self.nesting_violations = family.nesting_violations.iter().map(Into::into).collect();
        self
    }

    pub fn metric(mut self, key: &str, value: f64) -> Self {
        self.metrics.insert(key.into(), value);
        self
    }
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> CliResult<()> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::format(path, e))?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
}

/// `x,y,u` for every in-domain cell center.
pub fn write_grid_csv(path: &Path, field: &SolutionField) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::format(path, e))?;
    w.write_record(["x", "y", "u"]).map_err(|e| CliError::format(path, e))?;
    let g = field.grid;
    for j in 0..g.height {
        for i in 0..g.width {
            if field.in_domain(i, j) {
                let c = g.cell_center(i, j);
                w.serialize((c.x, c.y, field.value(i, j))).map_err(|e| CliError::format(path, e))?;
            }
        }
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn ensure_dir(path: &Path) -> CliResult<()> {
    fs::create_dir_all(path).map_err(|e| CliError::io(path, e))
}
