//! Reports behind the `hodge` command line tool.
//!
//! Every command returns an [`Output`] holding what goes to stdout and stderr
//! and the exit code: 0 when everything was computed and every check passed,
//! 2 when a check failed, 1 for bad input.

use std::fmt::Write as _;

use serde::Serialize;

use crate::closed_forms::{
    diagonal_triviality_bound, ordinary_hodge_ideal, snc_hodge_ideal, symbolic_power_bound, triviality_threshold,
    DiagonalQuery, OrdinaryHodgeIdeal, OrdinaryQuery,
};
use crate::error::{Error, Result};
use crate::jet::{JetIdealSummary, RationalPoint, DEFAULT_CAP};
use crate::poly::{default_names, parse_variable_list};
use crate::projective::{
    parse_input, verify_projective, ProjectiveAnalysis, ProjectiveCheck, ProjectivePoint, SingularData,
};
use crate::rational::render;
use crate::resolution::{PlaneCurve, ResolutionSummary};
use crate::surface::{PointAnalysis, METHOD};
use crate::verify::{verify_point, CheckRecord};

/// Largest accepted `kmax`.
pub const MAX_KMAX: u32 = 8;
pub const DEFAULT_KMAX: u32 = 8;

/// Exit code for a failed check.
pub const EXIT_CHECK_FAILED: i32 = 2;
/// Exit code for invalid input or an aborted computation.
pub const EXIT_INPUT_ERROR: i32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn finish<T: Serialize>(result: Result<(T, bool)>, format: Format, text: impl FnOnce(&T) -> String) -> Output {
    match result {
        Ok((report, passed)) => Output {
            stdout: match format {
                Format::Json => json(&report),
                Format::Text => text(&report),
            },
            stderr: String::new(),
            code: if passed { 0 } else { EXIT_CHECK_FAILED },
        },
        Err(e) => error_output(&e, format),
    }
}

/// Formats an error; failed internal invariants count as failed checks.
pub fn error_output(e: &Error, format: Format) -> Output {
    let code = if matches!(e, Error::Internal(_)) { EXIT_CHECK_FAILED } else { EXIT_INPUT_ERROR };
    let (stdout, stderr) = match format {
        Format::Json => (json(&ErrorReport { error: ErrorBody { kind: e.kind(), message: e.to_string() } }), String::new()),
        Format::Text => (String::new(), format!("error: {e}\n")),
    };
    Output { stdout, stderr, code }
}

fn check_kmax(kmax: u32) -> Result<()> {
    if kmax > MAX_KMAX {
        return Err(Error::Range(format!("kmax must be at most {MAX_KMAX}, got {kmax}")));
    }
    Ok(())
}

fn check_cap(cap: u32) -> Result<()> {
    if cap < DEFAULT_CAP {
        return Err(Error::Range(format!("cap must be at least {DEFAULT_CAP}, got {cap}")));
    }
    Ok(())
}

/// Settings for `hodge curve`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveConfig {
    pub equation: String,
    pub vars: Option<String>,
    pub kmax: u32,
    pub point: Option<String>,
    pub cap: u32,
}

impl CurveConfig {
    pub fn new(equation: &str) -> Self {
        CurveConfig { equation: equation.to_string(), vars: None, kmax: DEFAULT_KMAX, point: None, cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub k: String,
    #[serde(flatten)]
    pub ideal: JetIdealSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub point: RationalPoint,
    pub multiplicity: String,
    pub node: bool,
    pub resolution: ResolutionSummary,
    pub multiplier: JetIdealSummary,
    pub adjoint: JetIdealSummary,
    pub hodge_ideals: Vec<IdealReport>,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
}

impl PointReport {
    pub fn new(a: &PointAnalysis) -> Result<Self> {
        let curve = a.family.curve();
        let names = curve.names();
        let center = a.family.center();
        let checks = verify_point(a)?;
        Ok(PointReport {
            point: center.clone(),
            multiplicity: a.multiplicity().to_string(),
            node: curve.is_node(center),
            resolution: a.tree.summary(),
            multiplier: a.multiplier.summary(Some(names)),
            adjoint: a.adjoint.summary(Some(names)),
            hodge_ideals: a
                .family
                .ideals()
                .iter()
                .enumerate()
                .map(|(k, i)| IdealReport { k: k.to_string(), ideal: i.summary(Some(names)) })
                .collect(),
            passed: checks.all_passed(),
            checks: checks.checks,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeReport {
    pub equation: String,
    pub vars: Vec<String>,
    pub kmax: String,
    pub method: String,
    pub generators: String,
    pub points: Vec<PointReport>,
    pub message: Option<String>,
    pub all_passed: bool,
}

const NO_SINGULAR_POINTS: &str = "no singular rational points; all I_k trivial";
const GENERATOR_LABEL: &str = "a generating set: a basis of I / mI lifted to polynomials, hence minimal";

/// Runs the plane-curve pipeline and every check.
pub fn curve_report(cfg: &CurveConfig) -> Result<HodgeReport> {
    check_kmax(cfg.kmax)?;
    check_cap(cfg.cap)?;
    let names = match &cfg.vars {
        Some(v) => parse_variable_list(v),
        None => default_names(2),
    };
    let curve = PlaneCurve::parse(&cfg.equation, Some(&names))?;
    let centers = match &cfg.point {
        Some(p) => {
            let p = RationalPoint::parse(p)?;
            if p.arity() != 2 {
                return Err(Error::ArityMismatch { expected: 2, found: p.arity() });
            }
            if !curve.contains(&p) {
                return Err(Error::NotOnCurve { point: p.to_string() });
            }
            vec![p]
        }
        None => curve.singular_points()?,
    };
    let points = centers
        .iter()
        .map(|c| PointReport::new(&PointAnalysis::run(&curve, c, cfg.kmax, cfg.cap)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(HodgeReport {
        equation: curve.equation().render(&names),
        vars: names,
        kmax: cfg.kmax.to_string(),
        method: METHOD.to_string(),
        generators: GENERATOR_LABEL.to_string(),
        message: points.is_empty().then(|| NO_SINGULAR_POINTS.to_string()),
        all_passed: points.iter().all(|p| p.passed),
        points,
    })
}

fn ideal_text(g: &[String]) -> String {
    format!("({})", g.join(", "))
}

fn check_line(out: &mut String, indent: &str, c: &CheckRecord) {
    let k = c.k.as_ref().map(|k| format!(" k={k}")).unwrap_or_default();
    let status = if c.passed { "ok  " } else { "FAIL" };
    let _ = write!(out, "{indent}{status} {}{k}: {}", c.name, c.relation);
    if let Some(w) = &c.witness {
        let _ = write!(out, " (witness {w})");
    }
    out.push('\n');
}

pub fn render_curve_text(r: &HodgeReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "curve: {} = 0", r.equation);
    if let Some(m) = &r.message {
        let _ = writeln!(out, "{m}");
        return out;
    }
    for p in &r.points {
        let kind = if p.node { ", node" } else { "" };
        let _ = writeln!(out, "\npoint {}: multiplicity {}{kind}", p.point, p.multiplicity);
        let _ = writeln!(out, "  resolution: {} blow-up(s), lct = {}", p.resolution.blow_ups, p.resolution.lct);
        for d in &p.resolution.divisors {
            let parent = d.parent.as_ref().map(|p| format!(", over E{p}")).unwrap_or_default();
            let _ = writeln!(out, "    E{}: v = {}, k = {}, rho = {}{parent}", d.id, d.ord_curve, d.discrepancy, d.ord_max);
        }
        let _ = writeln!(out, "  adj = {}  (colength {})", ideal_text(&p.adjoint.generators), p.adjoint.colength);
        for i in &p.hodge_ideals {
            let _ = writeln!(out, "  I_{} = {}  (colength {})", i.k, ideal_text(&i.ideal.generators), i.ideal.colength);
        }
        let failed = p.checks.iter().filter(|c| !c.passed).count();
        let _ = writeln!(out, "  checks: {} passed, {failed} failed", p.checks.len() - failed);
        for c in &p.checks {
            check_line(&mut out, "    ", c);
        }
    }
    let _ = writeln!(out, "\n{}", if r.all_passed { "all checks passed" } else { "SOME CHECKS FAILED" });
    out
}

pub fn cmd_curve(cfg: &CurveConfig, format: Format) -> Output {
    finish(curve_report(cfg).map(|r| {
        let passed = r.all_passed;
        (r, passed)
    }), format, render_curve_text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SncReport {
    pub n: String,
    pub r: String,
    pub k: String,
    pub generators: Vec<String>,
    pub count: String,
}

pub fn snc_report(n: usize, r: usize, k: u32) -> Result<SncReport> {
    let ideal = snc_hodge_ideal(n, r, k)?;
    let names = default_names(n);
    Ok(SncReport {
        n: n.to_string(),
        r: r.to_string(),
        k: k.to_string(),
        generators: ideal.generators().iter().map(|g| g.render(&names)).collect(),
        count: ideal.generators().len().to_string(),
    })
}

pub fn cmd_snc(n: usize, r: usize, k: u32, format: Format) -> Output {
    finish(snc_report(n, r, k).map(|s| (s, true)), format, |s| {
        format!("I_{} of {} = 0 in {} variables: {} generators\n{}\n", s.k, snc_divisor(s), s.n, s.count, ideal_text(&s.generators))
    })
}

fn snc_divisor(s: &SncReport) -> String {
    let r: usize = s.r.parse().unwrap_or(0);
    let n: usize = s.n.parse().unwrap_or(0);
    default_names(n)[..r].join("*")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrdinaryReport {
    pub query: OrdinaryQuery,
    pub ideal: OrdinaryHodgeIdeal,
    pub triviality_threshold: String,
    pub maximal_ideal_power: String,
}

pub fn ordinary_report(n: u32, m: u32, k: u32) -> Result<OrdinaryReport> {
    let query = OrdinaryQuery::new(n, m, k)?;
    Ok(OrdinaryReport {
        query,
        ideal: ordinary_hodge_ideal(query),
        triviality_threshold: triviality_threshold(n, m)?.to_string(),
        maximal_ideal_power: symbolic_power_bound(n, m, n, k)?.to_string(),
    })
}

pub fn render_ordinary_text(r: &OrdinaryReport) -> String {
    let OrdinaryQuery { n, m, k } = r.query;
    let mut out = format!("ordinary singular point of multiplicity {m} in dimension {n}\n");
    match &r.ideal {
        OrdinaryHodgeIdeal::Exact { exponent: 0 } => {
            let _ = writeln!(out, "I_{k} = O (exact, mk<n)");
        }
        OrdinaryHodgeIdeal::Exact { exponent } => {
            let _ = writeln!(out, "I_{k} = m^{exponent} (exact, mk<n)");
        }
        OrdinaryHodgeIdeal::Sandwich { lower, upper, defect_length } => {
            let _ = writeln!(out, "{lower} ⊆ I_1 ⊆ {upper}");
            let _ = writeln!(out, "dim I_1 / ({lower}) = {defect_length}");
        }
        OrdinaryHodgeIdeal::NoClosedForm => {
            let _ = writeln!(out, "I_{k}: no closed form known outside mk < n and (k = 1, m >= n)");
        }
    }
    let _ = writeln!(out, "I_k trivial exactly for k <= {}", r.triviality_threshold);
    let _ = writeln!(out, "I_{k} ⊆ m^{}", r.maximal_ideal_power);
    out
}

pub fn cmd_ordinary(n: u32, m: u32, k: u32, format: Format) -> Output {
    finish(ordinary_report(n, m, k).map(|r| (r, true)), format, render_ordinary_text)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalReport {
    pub exponents: Vec<String>,
    pub alpha: String,
    pub bound: String,
    pub trivial_up_to: Option<String>,
}

pub fn diagonal_report(exponents: &[u32]) -> Result<DiagonalReport> {
    let q = DiagonalQuery::new(exponents.to_vec())?;
    let bound = diagonal_triviality_bound(&q);
    let floor = bound.floor().to_integer();
    Ok(DiagonalReport {
        exponents: exponents.iter().map(u32::to_string).collect(),
        alpha: render(&q.alpha()),
        bound: render(&bound),
        trivial_up_to: (floor >= 0.into()).then(|| floor.to_string()),
    })
}

pub fn cmd_diagonal(exponents: &[u32], format: Format) -> Output {
    finish(diagonal_report(exponents).map(|r| (r, true)), format, |r| {
        let names = default_names(r.exponents.len());
        let f: Vec<String> = names.iter().zip(&r.exponents).map(|(x, a)| format!("{x}^{a}")).collect();
        let mut out = format!("f = {}; alpha = {}, alpha - 1 = {}\n", f.join(" + "), r.alpha, r.bound);
        match &r.trivial_up_to {
            Some(k) => {
                let _ = writeln!(out, "trivial for k ≤ {k}");
            }
            None => {
                let _ = writeln!(out, "no k guaranteed trivial");
            }
        }
        out
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub point: ProjectivePoint,
    pub chart: String,
    pub ideal: JetIdealSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubschemeReport {
    pub k: String,
    pub dimension: String,
    pub degree: String,
    pub components: Vec<ComponentReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPointReport {
    pub point: ProjectivePoint,
    pub multiplicity: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveReport {
    pub equation: String,
    pub vars: Vec<String>,
    pub n: String,
    pub degree: String,
    pub mode: String,
    pub kmax: String,
    pub singular_points: Vec<SingularPointReport>,
    pub subschemes: Vec<SubschemeReport>,
    pub checks: Vec<ProjectiveCheck>,
    pub all_passed: bool,
}

/// Runs the projective checks on an input file's contents.
pub fn projective_report(input: &str, kmax: Option<u32>, cap: u32) -> Result<ProjectiveReport> {
    check_cap(cap)?;
    let surface = parse_input(input)?;
    let kmax = match (kmax, surface.declared_kmax()) {
        (Some(k), _) => k,
        (None, Some(limit)) => limit.min(DEFAULT_KMAX),
        (None, None) => DEFAULT_KMAX,
    };
    check_kmax(kmax)?;
    let analysis = ProjectiveAnalysis::run(&surface, kmax, cap)?;
    let names = surface.names();
    let subschemes = (0..=kmax)
        .map(|k| {
            let z = analysis.subscheme(k)?;
            Ok(SubschemeReport {
                k: k.to_string(),
                dimension: z.dimension().to_string(),
                degree: z.degree().to_string(),
                components: z
                    .components
                    .iter()
                    .map(|c| ComponentReport {
                        point: c.point.clone(),
                        chart: format!("{} = 1", names[c.chart]),
                        ideal: c.ideal.summary(Some(&surface.chart_names(c.chart))),
                    })
                    .collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let checks = verify_projective(&analysis)?;
    Ok(ProjectiveReport {
        equation: surface.equation().render(names),
        vars: names.to_vec(),
        n: surface.dimension().to_string(),
        degree: surface.degree().to_string(),
        mode: match surface.data() {
            SingularData::Computed => "computed",
            SingularData::Declared(_) => "declared",
        }
        .to_string(),
        kmax: kmax.to_string(),
        singular_points: analysis
            .points
            .iter()
            .map(|p| SingularPointReport { point: p.point.clone(), multiplicity: p.multiplicity.to_string() })
            .collect(),
        subschemes,
        all_passed: checks.iter().all(|c| c.record.passed),
        checks,
    })
}

pub fn render_projective_text(r: &ProjectiveReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "hypersurface {} = 0 of degree {} in P^{} ({} singular points)", r.equation, r.degree, r.n, r.mode);
    if r.singular_points.is_empty() {
        let _ = writeln!(out, "no singular points");
    }
    for p in &r.singular_points {
        let _ = writeln!(out, "  {} multiplicity {}", p.point, p.multiplicity);
    }
    for z in &r.subschemes {
        if z.components.is_empty() {
            let _ = writeln!(out, "Z_{} = ∅", z.k);
            continue;
        }
        let _ = writeln!(out, "Z_{}: dimension {}, degree {}", z.k, z.dimension, z.degree);
        for c in &z.components {
            let _ = writeln!(out, "  {} [{}]: {}", c.point, c.chart, ideal_text(&c.ideal.generators));
        }
    }
    let _ = writeln!(out, "checks:");
    for c in &r.checks {
        check_line(&mut out, "  ", &c.record);
        if c.vacuous {
            out.pop();
            out.push_str(" [vacuous]\n");
        }
    }
    let _ = writeln!(out, "{}", if r.all_passed { "all checks passed" } else { "SOME CHECKS FAILED" });
    out
}

pub fn cmd_projective(input: &str, kmax: Option<u32>, cap: u32, format: Format) -> Output {
    finish(projective_report(input, kmax, cap).map(|r| {
        let passed = r.all_passed;
        (r, passed)
    }), format, render_projective_text)
}
