//! Subcommands. Each has a computation that returns data and a `cmd_*`
//! wrapper that writes artifacts into the configured output directory.

use std::fmt::Write as _;

use lgp_core::boundary::{
    cantor_inequality_check, cantor_interval_length, cantor_interval_length_recurrence, cantor_stage_datum,
    cantor_stage_measure, mollify, trapezoid_comparison, verify_fat_variant, CantorVariant, MAX_CANTOR_STAGE,
};
use lgp_core::decompose::{build_region_tree, continuous_part, jump_part, RegionTree};
use lgp_core::geometry::{chord_cost, point_segment_distance, polyline_cost, segments_intersect};
use lgp_core::matching::{admits_witness, enumerate_optimal, staircase_witness, TIE_TOLERANCE};
use lgp_core::solver::{reconstruct_lenient, sweep, trace_check, GridSpec, SweepOptions, TRACE_SAMPLES};
use lgp_core::{Anisotropy, BoundaryDatum, ConvexDomain, Point, SolutionField, SuperlevelFamily};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::config::{cantor_variant, RunConfig};
use crate::error::{CliError, CliResult};
use crate::io::{self, Summary, TraceRecord};
use crate::oracle::{self, OracleReport};
use crate::svg;

/// Cantor stages above this are not solved: the crossing count grows as `2^{n+1}`.
pub const MAX_SOLVED_CANTOR_STAGE: u32 = 8;

/// Relative tolerance for equal φ-variation of a solution and its witness variant.
pub const WITNESS_TV_TOL: f64 = 1e-6;

pub fn sweep_options(cfg: &RunConfig) -> SweepOptions {
    SweepOptions::with_levels(cfg.levels)
}

/// `∫|u − f|` on the curve `band` inside the boundary, evaluated on the
/// family directly rather than on the raster.
pub fn trace_record(family: &SuperlevelFamily, f: &BoundaryDatum, band: f64, flag: f64) -> CliResult<TraceRecord> {
    let discrepancy = trace_check(family, f, family.domain(), band)?;
    let scale = f.l1_norm(TRACE_SAMPLES).max(f64::MIN_POSITIVE);
    let relative = discrepancy / scale;
    Ok(TraceRecord { band, discrepancy, relative, flagged: relative > flag })
}

pub struct SolveRun {
    pub datum: BoundaryDatum,
    pub domain: ConvexDomain,
    pub family: SuperlevelFamily,
    pub field: SolutionField,
    pub summary: Summary,
}

pub fn solve(cfg: &RunConfig) -> CliResult<SolveRun> {
    cfg.validate()?;
    let domain = cfg.domain()?;
    let aniso = cfg.anisotropy()?;
    let datum = cfg.datum()?;
    let family = sweep(&datum, &domain, aniso, sweep_options(cfg))?;
    let field = reconstruct_lenient(&family, cfg.grid.0, cfg.grid.1)?;
    let e = &cfg.experiment;
    let trace = trace_record(&family, &datum, e.band, e.trace_flag)?;
    let mut summary = Summary::new("solve").with_family(&family);
    summary.grid_tv = Some(field.grid_tv);
    summary.trace = Some(trace);
    if trace.flagged {
        summary.notes.push(format!(
            "trace discrepancy {:.3e} is {:.0}% of ∫|f|: the datum is not attained",
            trace.discrepancy,
            100.0 * trace.relative
        ));
    }
    Ok(SolveRun { datum, domain, family, field, summary })
}

fn nesting_error(family: &SuperlevelFamily) -> CliResult<()> {
    match family.nesting_violations.first() {
        Some(v) => Err(CliError::Invariant(format!(
            "{} nesting violation(s), first between levels {} and {}",
            family.nesting_violations.len(),
            v.lower,
            v.upper
        ))),
        None => Ok(()),
    }
}

pub fn cmd_solve(cfg: &RunConfig) -> CliResult<Summary> {
    let run = solve(cfg)?;
    let out = &cfg.out;
    io::ensure_dir(out)?;
    io::write_grid_csv(&out.join("u.csv"), &run.field)?;
    io::write_json(&out.join("matchings.json"), &io::family_matchings(&run.family))?;
    io::write_text(&out.join("chords.svg"), &svg::render_chords(&run.domain, &run.family.chords()))?;
    io::write_json(&out.join("summary.json"), &run.summary)?;
    nesting_error(&run.family)?;
    Ok(run.summary)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelMultiplicity {
    pub t: f64,
    pub optima: usize,
    pub overflow: bool,
    /// Largest minus smallest cost over the optimal set.
    pub cost_spread: f64,
    /// Chords admitting an equal-cost non-segment curve.
    pub witness_chords: usize,
    pub chords: usize,
}

/// Size of the optimal matching set at every kept level.
pub fn optimum_multiplicity(family: &SuperlevelFamily, rel_tol: f64) -> CliResult<Vec<LevelMultiplicity>> {
    let aniso = family.aniso();
    family
        .levels
        .iter()
        .map(|l| {
            let set = enumerate_optimal(&l.matching.crossings, family.domain(), aniso, rel_tol)?;
            let (lo, hi) = set
                .matchings
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), m| (lo.min(m.cost), hi.max(m.cost)));
            let chords = l.matching.chords();
            Ok(LevelMultiplicity {
                t: l.level,
                optima: set.matchings.len(),
                overflow: set.overflow,
                cost_spread: hi - lo,
                witness_chords: chords.iter().filter(|&&(d, u)| admits_witness(d, u, aniso)).count(),
                chords: chords.len(),
            })
        })
        .collect()
}

fn segment_distance(a: (Point, Point), b: (Point, Point)) -> f64 {
    if segments_intersect(a.0, a.1, b.0, b.1, 0.0) {
        return 0.0;
    }
    point_segment_distance(a.0, b.0, b.1)
        .min(point_segment_distance(a.1, b.0, b.1))
        .min(point_segment_distance(b.0, a.0, a.1))
        .min(point_segment_distance(b.1, a.0, a.1))
}

fn max_deviation(curve: &[Point], a: Point, b: Point) -> f64 {
    curve.iter().map(|&p| point_segment_distance(p, a, b)).fold(0.0, f64::max)
}

/// Staircase or zigzag with at least `min_steps` steps that stays within a
/// third of `clearance` of its chord, or `None` if that needs over `max_steps`.
pub fn fitted_witness(
    a: Point,
    b: Point,
    aniso: Anisotropy,
    min_steps: usize,
    clearance: f64,
    max_steps: usize,
) -> Option<Vec<Point>> {
    let mut k = min_steps.max(1);
    while k <= max_steps {
        let w = staircase_witness(a, b, aniso, k).ok()?;
        if max_deviation(&w, a, b) < clearance / 3.0 {
            return Some(w);
        }
        k *= 2;
    }
    None
}

pub const MAX_WITNESS_STEPS: usize = 4096;

/// The family with every witness-admitting chord replaced by an equal-cost
/// staircase that keeps clear of all other chords, so nesting is preserved.
pub fn witness_family(family: &SuperlevelFamily, min_steps: usize) -> CliResult<(SuperlevelFamily, usize)> {
    let aniso = family.aniso();
    let mut distinct: Vec<(Point, Point)> = Vec::new();
    for c in family.chords() {
        if !distinct.iter().any(|d| d.0.distance(c.0) <= 1e-12 && d.1.distance(c.1) <= 1e-12) {
            distinct.push(c);
        }
    }
    let clearance = |c: (Point, Point)| {
        distinct
            .iter()
            .filter(|d| !(d.0.distance(c.0) <= 1e-12 && d.1.distance(c.1) <= 1e-12))
            .map(|&d| segment_distance(c, d))
            .fold(f64::INFINITY, f64::min)
    };
    let mut replaced = 0;
    let alt = family.with_curves(|_, _, d, u| {
        if !admits_witness(d, u, aniso) {
            return None;
        }
        let room = clearance((d, u)).min(chord_cost(d, u, Anisotropy::isotropic()));
        let w = fitted_witness(d, u, aniso, min_steps, room, MAX_WITNESS_STEPS)?;
        replaced += 1;
        Some(w)
    })?;
    Ok((alt, replaced))
}

#[derive(Clone, Debug, Serialize)]
pub struct NonUniquenessReport {
    pub p: String,
    pub levels: Vec<LevelMultiplicity>,
    /// Kept levels with two or more optimal matchings.
    pub degenerate_levels: usize,
    /// Kept levels with a chord admitting an equal-cost curve.
    pub witness_levels: usize,
    pub coarea_tv: f64,
    pub witness_coarea_tv: f64,
    pub replaced_chords: usize,
    /// Largest `|φ-length(witness) − φ-length(chord)|` among the replacements.
    pub witness_cost_gap: f64,
}

pub struct NonUniquenessRun {
    pub report: NonUniquenessReport,
    pub domain: ConvexDomain,
    pub family: SuperlevelFamily,
    pub alternative: SuperlevelFamily,
}

fn uniqueness_regime(p: f64) -> CliError {
    CliError::Validation(format!(
        "uniqueness regime: p = {p} gives a strictly convex, smooth norm, so minimizing level sets are unique segments; use p = 1 or p = inf"
    ))
}

pub fn nonuniqueness(cfg: &RunConfig) -> CliResult<NonUniquenessRun> {
    cfg.validate()?;
    let aniso = cfg.anisotropy()?;
    if aniso.is_smooth() {
        return Err(uniqueness_regime(aniso.p()));
    }
    let domain = cfg.domain()?;
    let datum = cfg.datum()?;
    let family = sweep(&datum, &domain, aniso, sweep_options(cfg))?;
    let levels = optimum_multiplicity(&family, TIE_TOLERANCE)?;
    let (alternative, replaced) = witness_family(&family, cfg.experiment.staircase_steps)?;
    let mut gap: f64 = 0.0;
    for (orig, alt) in family.levels.iter().zip(&alternative.levels) {
        gap = gap.max((orig.perimeter - alt.perimeter).abs());
    }
    let report = NonUniquenessReport {
        p: cfg.p.to_string(),
        degenerate_levels: levels.iter().filter(|l| l.optima >= 2).count(),
        witness_levels: levels.iter().filter(|l| l.witness_chords > 0).count(),
        levels,
        coarea_tv: family.coarea_tv(),
        witness_coarea_tv: alternative.coarea_tv(),
        replaced_chords: replaced,
        witness_cost_gap: gap,
    };
    Ok(NonUniquenessRun { report, domain, family, alternative })
}

pub fn cmd_nonuniqueness(cfg: &RunConfig) -> CliResult<Summary> {
    let run = nonuniqueness(cfg)?;
    let r = &run.report;
    let out = &cfg.out;
    io::ensure_dir(out)?;
    let u = reconstruct_lenient(&run.family, cfg.grid.0, cfg.grid.1)?;
    let alt = reconstruct_lenient(&run.alternative, cfg.grid.0, cfg.grid.1)?;
    io::write_grid_csv(&out.join("u.csv"), &u)?;
    io::write_grid_csv(&out.join("u_alt.csv"), &alt)?;
    io::write_text(&out.join("chords.svg"), &svg::render_chords(&run.domain, &run.family.chords()))?;
    let curves: Vec<Vec<Point>> = run.alternative.levels.iter().flat_map(|l| l.shape.curves.clone()).collect();
    io::write_text(&out.join("chords_alt.svg"), &svg::render(&run.domain, &curves))?;
    io::write_json(&out.join("nonuniqueness.json"), r)?;
    let mut summary = Summary::new("nonuniqueness")
        .with_family(&run.family)
        .metric("degenerate_levels", r.degenerate_levels as f64)
        .metric("witness_levels", r.witness_levels as f64)
        .metric("witness_coarea_tv", r.witness_coarea_tv)
        .metric("witness_grid_tv", alt.grid_tv)
        .metric("replaced_chords", r.replaced_chords as f64);
    summary.grid_tv = Some(u.grid_tv);
    summary.notes.push(format!(
        "{} of {} levels have several optimal matchings; {} admit an equal-cost non-segment level curve",
        r.degenerate_levels,
        r.levels.len(),
        r.witness_levels
    ));
    io::write_json(&out.join("summary.json"), &summary)?;
    let rel = (r.witness_coarea_tv - r.coarea_tv).abs() / r.coarea_tv.abs().max(f64::MIN_POSITIVE);
    if rel > WITNESS_TV_TOL {
        return Err(CliError::Invariant(format!("witness variant changes the variation by {rel:.3e} (relative)")));
    }
    nesting_error(&run.alternative)?;
    Ok(summary)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxRow {
    pub eps: f64,
    pub bv: f64,
    /// `‖f_ε − f‖_{L¹(∂Ω)}`.
    pub l1_data: f64,
    /// `‖u_ε − u‖_{L¹(Ω)}` against the unmollified solve.
    pub l1_reference: f64,
    /// `‖u_ε − u_{ε'}‖_{L¹(Ω)}` against the previous width; absent on the first row.
    pub l1_previous: Option<f64>,
    pub coarea_tv: f64,
}

pub const DATA_L1_SAMPLES: usize = 1 << 16;

/// Relative slack when comparing variations of mollified data, which are
/// often equal up to summation order.
pub const BV_ROUNDING: f64 = 1e-12;

/// Mollifies `f` at each width, solves, and records convergence of data and solutions.
pub fn approx_study(
    f: &BoundaryDatum,
    domain: &ConvexDomain,
    aniso: Anisotropy,
    opts: SweepOptions,
    eps: &[f64],
    l1_grid: usize,
) -> CliResult<Vec<ApproxRow>> {
    let grid = GridSpec::covering(domain, l1_grid, l1_grid)?;
    let reference = sweep(f, domain, aniso, opts)?;
    let u_ref = SolutionField::sample(grid, domain, aniso, &reference);
    let mut previous: Option<SolutionField> = None;
    let mut rows = Vec::with_capacity(eps.len());
    for &e in eps {
        let fe = mollify(f, e)?;
        let fam = sweep(&fe, domain, aniso, opts)?;
        let u = SolutionField::sample(grid, domain, aniso, &fam);
        rows.push(ApproxRow {
            eps: e,
            bv: fe.bv_seminorm(),
            l1_data: fe.l1_distance(f, DATA_L1_SAMPLES),
            l1_reference: u.l1_distance(&u_ref)?,
            l1_previous: previous.as_ref().map(|p| u.l1_distance(p)).transpose()?,
            coarea_tv: fam.coarea_tv(),
        });
        previous = Some(u);
    }
    Ok(rows)
}

pub fn cmd_approx(cfg: &RunConfig) -> CliResult<Summary> {
    cfg.validate()?;
    let domain = cfg.domain()?;
    let f = cfg.datum()?;
    let e = &cfg.experiment;
    let rows = approx_study(&f, &domain, cfg.anisotropy()?, sweep_options(cfg), &e.eps, e.l1_grid)?;
    io::ensure_dir(&cfg.out)?;
    let path = cfg.out.join("approx.csv");
    let mut w = csv::Writer::from_path(&path).map_err(|err| CliError::format(&path, err))?;
    for r in &rows {
        w.serialize(r).map_err(|err| CliError::format(&path, err))?;
    }
    w.flush().map_err(|err| CliError::io(&path, err))?;
    let mut summary = Summary::new("approx").metric("bv_datum", f.bv_seminorm());
    if let Some(last) = rows.last() {
        summary = summary.metric("bv_last", last.bv).metric("l1_reference_last", last.l1_reference);
        summary.coarea_tv = Some(last.coarea_tv);
    }
    let monotone_bv = rows.windows(2).all(|w| w[1].bv >= w[0].bv * (1.0 - BV_ROUNDING));
    let shrinking = rows.windows(2).filter_map(|w| Some((w[0].l1_previous?, w[1].l1_previous?))).all(|(a, b)| b < a);
    summary.notes.push(format!(
        "data variation non-decreasing: {monotone_bv}; successive solution distances decreasing: {shrinking}"
    ));
    io::write_json(&cfg.out.join("summary.json"), &summary)?;
    Ok(summary)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CantorRow {
    pub n: u32,
    /// Thin-variant interval length as an exact fraction.
    pub a_exact: String,
    pub a: f64,
    pub recurrence_agrees: bool,
    pub inequality_lhs: Option<f64>,
    pub inequality_rhs: Option<f64>,
    pub inequality_holds: Option<bool>,
    pub thin_measure: f64,
    pub variant_measure: f64,
    /// Parent-plus-gap chords versus two child chords for the chosen variant.
    pub bridge: Option<f64>,
    pub split: Option<f64>,
}

pub fn cantor_table(n_max: u32, variant: CantorVariant) -> CliResult<Vec<CantorRow>> {
    if n_max > MAX_CANTOR_STAGE {
        return Err(lgp_core::Error::CantorStageTooLarge(n_max).into());
    }
    (0..=n_max)
        .map(|n| {
            let exact = cantor_interval_length(n);
            let ineq = if n > 0 { Some(cantor_inequality_check(n)?) } else { None };
            let trap = if n > 0 { Some(trapezoid_comparison(n, variant)?) } else { None };
            Ok(CantorRow {
                n,
                a_exact: exact.to_string(),
                a: exact.to_f64().unwrap_or(f64::NAN),
                recurrence_agrees: cantor_interval_length_recurrence(n) == exact,
                inequality_lhs: ineq.map(|c| c.lhs),
                inequality_rhs: ineq.map(|c| c.rhs),
                inequality_holds: ineq.map(|c| c.holds),
                thin_measure: cantor_stage_measure(n, CantorVariant::Thin)?,
                variant_measure: cantor_stage_measure(n, variant)?,
                bridge: trap.map(|t| t.bridge),
                split: trap.map(|t| t.split),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CantorStage {
    pub n: u32,
    pub trace: f64,
    /// `∫|u|`, exact from the layer-cake sum.
    pub l1: f64,
    pub coarea_tv: f64,
}

pub fn cantor_stage_study(
    n: u32,
    variant: CantorVariant,
    domain: &ConvexDomain,
    aniso: Anisotropy,
    opts: SweepOptions,
    band: f64,
) -> CliResult<CantorStage> {
    if n > MAX_SOLVED_CANTOR_STAGE {
        return Err(CliError::Validation(format!("cantor stages above {MAX_SOLVED_CANTOR_STAGE} are not solved")));
    }
    let f = cantor_stage_datum(n, variant)?;
    let family = sweep(&f, domain, aniso, opts)?;
    nesting_error(&family)?;
    Ok(CantorStage {
        n,
        trace: trace_check(&family, &f, domain, band)?,
        l1: family.integral(),
        coarea_tv: family.coarea_tv(),
    })
}

pub fn cmd_cantor(cfg: &RunConfig) -> CliResult<(Summary, String)> {
    cfg.validate()?;
    let e = &cfg.experiment;
    let variant = cantor_variant(e.variant, e.rho);
    let rows = cantor_table(e.n_max, variant)?;
    let mut report = String::new();
    let _ = writeln!(
        report,
        "{:>3} {:>28} {:>12} {:>5} {:>6} {:>12} {:>12}",
        "n", "a_n", "a_n (f64)", "rec", "ineq", "thin", "variant"
    );
    for r in &rows {
        let holds = r.inequality_holds.map_or("-".to_string(), |h| h.to_string());
        let _ = writeln!(
            report,
            "{:>3} {:>28} {:>12.6e} {:>5} {:>6} {:>12.6e} {:>12.6e}",
            r.n, r.a_exact, r.a, r.recurrence_agrees, holds, r.thin_measure, r.variant_measure
        );
    }
    io::ensure_dir(&cfg.out)?;
    let path = cfg.out.join("cantor.csv");
    let mut w = csv::Writer::from_path(&path).map_err(|err| CliError::format(&path, err))?;
    for r in &rows {
        w.serialize(r).map_err(|err| CliError::format(&path, err))?;
    }
    w.flush().map_err(|err| CliError::io(&path, err))?;

    let mut summary = Summary::new("cantor")
        .metric("n_max", e.n_max as f64)
        .metric("inequality_failures", rows.iter().filter(|r| r.inequality_holds == Some(false)).count() as f64)
        .metric("recurrence_mismatches", rows.iter().filter(|r| !r.recurrence_agrees).count() as f64);
    if e.solve_stages > 0 {
        let domain = cfg.domain()?;
        let aniso = cfg.anisotropy()?;
        let mut stages = Vec::new();
        for n in 1..=e.solve_stages {
            let s = cantor_stage_study(n, variant, &domain, aniso, sweep_options(cfg), e.band)?;
            let _ = writeln!(report, "stage {n}: trace discrepancy {:.4e}, ∫|u| {:.4e}", s.trace, s.l1);
            stages.push(s);
        }
        io::write_json(&cfg.out.join("cantor_stages.json"), &stages)?;
        if let Some(last) = stages.last() {
            summary = summary.metric("trace_last_stage", last.trace).metric("l1_last_stage", last.l1);
        }
    }
    let verdict = match variant {
        CantorVariant::Fat { .. } => verify_fat_variant(e.n_max.max(1), variant).map(|_| ()),
        CantorVariant::Thin => Ok(()),
    };
    if let Err(err) = &verdict {
        summary.notes.push(err.to_string());
    }
    io::write_json(&cfg.out.join("summary.json"), &summary)?;
    verdict?;
    Ok((summary, report))
}

pub struct DecomposeRun {
    pub family: SuperlevelFamily,
    pub field: SolutionField,
    pub tree: RegionTree,
    pub continuous: SolutionField,
    pub jump: SolutionField,
}

pub fn decompose(cfg: &RunConfig) -> CliResult<DecomposeRun> {
    let run = solve(cfg)?;
    nesting_error(&run.family)?;
    let tree = build_region_tree(&run.field, &run.family, cfg.experiment.jump_threshold)?;
    let jump = jump_part(&tree);
    let continuous = continuous_part(&run.field, &tree)?;
    Ok(DecomposeRun { family: run.family, field: run.field, tree, continuous, jump })
}

pub fn cmd_decompose(cfg: &RunConfig) -> CliResult<Summary> {
    let run = decompose(cfg)?;
    let out = &cfg.out;
    io::ensure_dir(out)?;
    io::write_grid_csv(&out.join("u.csv"), &run.field)?;
    io::write_grid_csv(&out.join("u_c.csv"), &run.continuous)?;
    io::write_grid_csv(&out.join("u_j.csv"), &run.jump)?;
    io::write_json(&out.join("tree.json"), &io::TreeRecord::from(&run.tree))?;
    let jump_tv: f64 =
        run.tree.surfaces.iter().map(|s| s.weight.abs() * chord_cost(s.down, s.up, run.family.aniso())).sum();
    let mut summary = Summary::new("decompose")
        .with_family(&run.family)
        .metric("regions", run.tree.regions.len() as f64)
        .metric("jump_surfaces", run.tree.surfaces.len() as f64)
        .metric("jump_tv", jump_tv)
        .metric("continuous_grid_tv", run.continuous.grid_tv)
        .metric("jump_grid_tv", run.jump.grid_tv);
    summary.grid_tv = Some(run.field.grid_tv);
    io::write_json(&out.join("summary.json"), &summary)?;
    Ok(summary)
}

pub fn cmd_match_oracle(cfg: &RunConfig) -> CliResult<(Summary, OracleReport)> {
    let e = &cfg.experiment;
    let report = oracle::run_match_oracle(e.trials, e.seed)?;
    let mut summary = Summary::new("match-oracle")
        .metric("trials", report.trials as f64)
        .metric("mismatches", report.mismatches.len() as f64)
        .metric("seconds", report.elapsed.as_secs_f64());
    for m in report.mismatches.iter().take(10) {
        summary
            .notes
            .push(format!("trial {} (n = {}, p = {}): dp {} vs brute force {}", m.trial, m.n, m.p, m.dp, m.brute));
    }
    io::ensure_dir(&cfg.out)?;
    io::write_json(&cfg.out.join("summary.json"), &summary)?;
    if !report.mismatches.is_empty() {
        return Err(CliError::Invariant(format!(
            "{} of {} trials disagree with brute force",
            report.mismatches.len(),
            report.trials
        )));
    }
    Ok((summary, report))
}

/// Polyline cost check for a witness; used by tests and reports.
pub fn witness_cost_gap(curve: &[Point], aniso: Anisotropy) -> CliResult<f64> {
    let a = curve[0];
    let b = *curve.last().expect("non-empty curve");
    Ok((polyline_cost(curve, aniso)? - chord_cost(a, b, aniso)).abs())
}
