//! Global checks for a reduced hypersurface `D ⊂ P^n` of degree `d`: the
//! subschemes `Z_k` cut out by the Hodge ideals, their dimension and degree
//! bounds, and surjectivity of evaluation maps from forms of degree `ℓ` onto
//! the local quotients at the singular points.
//!
//! Points are stored with their last nonzero coordinate equal to 1; the affine
//! chart dropping that coordinate is the point's canonical chart.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{big_binomial, jet_separation_level};
use crate::error::{Error, Result};
use crate::jet::{GeneratorSet, JetIdeal, RationalPoint, DEFAULT_CAP};
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{default_names, monomials_of_degree, parse, Monomial, Polynomial, UPoly};
use crate::rational::{int, parse_rational, render, Rational};
use crate::resolution::PlaneCurve;
use crate::surface::PointAnalysis;
use crate::verify::CheckRecord;

/// A point of `P^n`, scaled so that its last nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint(Vec<Rational>);

impl ProjectivePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let last = coords
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or_else(|| Error::Input("the zero vector is not a projective point".into()))?;
        let scale = coords[last].clone();
        Ok(ProjectivePoint(coords.into_iter().map(|c| c / &scale).collect()))
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// Index of the coordinate set to 1 in the canonical chart.
    pub fn chart(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).expect("nonzero point")
    }

    /// Affine coordinates in the chart `x_chart = 1`.
    pub fn affine(&self, chart: usize) -> Result<RationalPoint> {
        let scale = &self.0[chart];
        if scale.is_zero() {
            return Err(Error::Input(format!("{self} is not in the chart where coordinate {chart} is 1")));
        }
        Ok(RationalPoint::new(
            self.0.iter().enumerate().filter(|(i, _)| *i != chart).map(|(_, c)| c / scale).collect(),
        ))
    }

    pub fn render_coords(&self) -> Vec<String> {
        self.0.iter().map(render).collect()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render_coords().join(" : "))
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.render_coords().serialize(s)
    }
}

/// `H` with `x_chart = 1`, in the remaining variables.
pub fn dehomogenize(h: &Polynomial, chart: usize) -> Polynomial {
    Polynomial::from_terms(
        h.arity() - 1,
        h.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.remove(chart);
            (Monomial::new(e), c.clone())
        }),
    )
}

/// The degree-`d` form restricting to `p` on the chart `x_chart = 1`.
pub fn homogenize(p: &Polynomial, chart: usize, d: u32) -> Polynomial {
    Polynomial::from_terms(
        p.arity() + 1,
        p.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.insert(chart, d - m.degree());
            (Monomial::new(e), c.clone())
        }),
    )
}

/// A singular point declared by the user, assumed ordinary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeclaredPoint {
    pub point: ProjectivePoint,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularData {
    /// Singular points found by the plane-curve pipeline (`n = 2`).
    Computed,
    /// Ordinary singular points listed by the user.
    Declared(Vec<DeclaredPoint>),
}

/// A reduced hypersurface `H = 0` in `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveHypersurface {
    equation: Polynomial,
    names: Vec<String>,
    degree: u32,
    data: SingularData,
}

impl ProjectiveHypersurface {
    pub fn new(equation: Polynomial, names: Vec<String>, data: SingularData) -> Result<Self> {
        let arity = equation.arity();
        if names.len() != arity {
            return Err(Error::ArityMismatch { expected: arity, found: names.len() });
        }
        if arity < 3 {
            return Err(Error::Input("need at least three homogeneous coordinates".into()));
        }
        if equation.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !equation.is_homogeneous() {
            return Err(Error::Input(format!("{} is not homogeneous", equation.render(&names))));
        }
        let degree = equation.degree().unwrap_or(0);
        if degree == 0 {
            return Err(Error::ConstantEquation);
        }
        if !is_reduced(&equation) {
            return Err(Error::NotSquarefree(equation.render(&names)));
        }
        let n = arity as u32 - 1;
        match &data {
            SingularData::Computed if n != 2 => {
                return Err(Error::Input(format!("computed mode needs a plane curve, got P^{n}")));
            }
            SingularData::Declared(points) => {
                for p in points {
                    check_declared(&equation, p, &names)?;
                }
            }
            SingularData::Computed => {}
        }
        Ok(ProjectiveHypersurface { equation, names, degree, data })
    }

    pub fn equation(&self) -> &Polynomial {
        &self.equation
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The dimension `n` of the ambient projective space.
    pub fn dimension(&self) -> u32 {
        self.equation.arity() as u32 - 1
    }

    pub fn data(&self) -> &SingularData {
        &self.data
    }

    /// Variable names of the chart `x_chart = 1`.
    pub fn chart_names(&self, chart: usize) -> Vec<String> {
        self.names.iter().enumerate().filter(|(i, _)| *i != chart).map(|(_, n)| n.clone()).collect()
    }

    /// Largest `k` with `mk < n` at every declared point (`None` without a bound).
    pub fn declared_kmax(&self) -> Option<u32> {
        match &self.data {
            SingularData::Declared(points) => {
                let n = self.dimension();
                points.iter().map(|p| (n - 1) / p.multiplicity).min()
            }
            SingularData::Computed => None,
        }
    }
}

fn check_declared(h: &Polynomial, p: &DeclaredPoint, names: &[String]) -> Result<()> {
    if p.point.coords().len() != h.arity() {
        return Err(Error::ArityMismatch { expected: h.arity(), found: p.point.coords().len() });
    }
    if p.multiplicity < 2 {
        return Err(Error::Input(format!("declared point {} must have multiplicity at least 2", p.point)));
    }
    let chart = p.point.chart();
    let local = dehomogenize(h, chart).translate(p.point.affine(chart)?.coords());
    match local.order() {
        Some(0) => Err(Error::NotOnCurve { point: p.point.to_string() }),
        Some(m) if m == p.multiplicity => Ok(()),
        other => Err(Error::Input(format!(
            "{} has multiplicity {} on {}, not {}",
            p.point,
            other.unwrap_or(0),
            h.render(names),
            p.multiplicity
        ))),
    }
}

/// Small integers in a fixed order, used to pick restriction lines.
fn probe(i: usize) -> i64 {
    let v = (i as i64 * 7919 + 13) % 23;
    v - 11
}

/// Whether a form has no repeated factor.
///
/// A restriction to a line that keeps the degree and has distinct roots proves
/// the form reduced; a repeated factor shows up on every line. Several lines
/// are tried before concluding the form is not reduced.
fn is_reduced(h: &Polynomial) -> bool {
    let arity = h.arity();
    let d = h.degree().unwrap_or(0);
    if d <= 1 {
        return true;
    }
    let t = Polynomial::var(1, 0);
    for attempt in 0..24 {
        let line: Vec<Polynomial> = (0..arity)
            .map(|i| {
                let a = int(probe(attempt * 2 * arity + 2 * i));
                let b = int(probe(attempt * 2 * arity + 2 * i + 1) + (i == attempt % arity) as i64);
                &Polynomial::constant(1, a) + &t.scale(&b)
            })
            .collect();
        let restricted = UPoly::from_polynomial(&h.compose(&line).expect("arity"), 0).expect("univariate");
        if restricted.degree() == Some(d as usize) && restricted.is_squarefree() {
            return true;
        }
    }
    false
}

/// Exact value, accepted as a JSON string or integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
enum ExactValue {
    Text(String),
    Integer(i64),
}

impl ExactValue {
    fn rational(&self) -> Result<Rational> {
        match self {
            ExactValue::Text(s) => parse_rational(s),
            ExactValue::Integer(i) => Ok(int(*i)),
        }
    }

    fn count(&self) -> Result<u32> {
        let q = self.rational()?;
        if !q.is_integer() || q < Rational::zero() {
            return Err(Error::Input(format!("expected a nonnegative integer, got {}", render(&q))));
        }
        q.to_integer().try_into().map_err(|_| Error::Input("integer out of range".into()))
    }
}

#[derive(Clone, Debug, Deserialize)]
struct PointInput {
    coords: Vec<ExactValue>,
    multiplicity: ExactValue,
}

#[derive(Clone, Debug, Deserialize)]
struct HypersurfaceInput {
    equation: String,
    vars: Vec<String>,
    mode: String,
    #[serde(default)]
    points: Vec<PointInput>,
}

/// Reads `{equation, vars, mode: "computed" | "declared", points: [{coords, multiplicity}]}`.
pub fn parse_input(json: &str) -> Result<ProjectiveHypersurface> {
    let input: HypersurfaceInput = serde_json::from_str(json).map_err(|e| Error::Input(e.to_string()))?;
    let refs: Vec<&str> = input.vars.iter().map(String::as_str).collect();
    let equation = parse(&input.equation, &refs)?;
    let data = match input.mode.as_str() {
        "computed" => {
            if !input.points.is_empty() {
                return Err(Error::Input("computed mode takes no points".into()));
            }
            SingularData::Computed
        }
        "declared" => SingularData::Declared(
            input
                .points
                .iter()
                .map(|p| {
                    let coords = p.coords.iter().map(ExactValue::rational).collect::<Result<Vec<_>>>()?;
                    Ok(DeclaredPoint { point: ProjectivePoint::new(coords)?, multiplicity: p.multiplicity.count()? })
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        other => return Err(Error::Input(format!("unknown mode {other:?}; expected \"computed\" or \"declared\""))),
    };
    ProjectiveHypersurface::new(equation, input.vars, data)
}

/// The affine curve in the chart `x_chart = 1`, if it is not constant.
fn chart_curve(surface: &ProjectiveHypersurface, chart: usize) -> Result<Option<PlaneCurve>> {
    let h = dehomogenize(surface.equation(), chart);
    if h.is_constant() {
        return Ok(None);
    }
    PlaneCurve::with_names(h, surface.chart_names(chart)).map(Some)
}

/// Singular points of a plane projective curve, sorted.
pub fn projective_singular_points(surface: &ProjectiveHypersurface) -> Result<Vec<ProjectivePoint>> {
    if surface.dimension() != 2 {
        return Err(Error::Input("singular points are computed only in P^2".into()));
    }
    let mut out = Vec::new();
    // z = 1 covers every point with z != 0
    if let Some(c) = chart_curve(surface, 2)? {
        for p in c.singular_points()? {
            out.push(ProjectivePoint::new(vec![p.coords()[0].clone(), p.coords()[1].clone(), int(1)])?);
        }
    }
    // y = 1, z = 0
    if let Some(c) = chart_curve(surface, 1)? {
        for p in c.singular_points()? {
            if p.coords()[1].is_zero() {
                out.push(ProjectivePoint::new(vec![p.coords()[0].clone(), int(1), int(0)])?);
            }
        }
    }
    // (1 : 0 : 0)
    if let Some(c) = chart_curve(surface, 0)? {
        if c.multiplicity(&RationalPoint::origin(2)) >= 2 {
            out.push(ProjectivePoint::new(vec![int(1), int(0), int(0)])?);
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Clone, Debug)]
enum LocalSource {
    Computed(Box<PointAnalysis>),
    Declared,
}

/// Local data at one singular point, in its canonical chart.
#[derive(Clone, Debug)]
pub struct LocalPoint {
    pub point: ProjectivePoint,
    pub chart: usize,
    pub multiplicity: u32,
    source: LocalSource,
}

impl LocalPoint {
    pub fn affine(&self) -> RationalPoint {
        self.point.affine(self.chart).expect("canonical chart")
    }

    pub fn analysis(&self) -> Option<&PointAnalysis> {
        match &self.source {
            LocalSource::Computed(a) => Some(a),
            LocalSource::Declared => None,
        }
    }
}

/// A hypersurface together with its local analyses up to `kmax`.
#[derive(Clone, Debug)]
pub struct ProjectiveAnalysis {
    pub surface: ProjectiveHypersurface,
    pub points: Vec<LocalPoint>,
    pub kmax: u32,
}

impl ProjectiveAnalysis {
    pub fn run(surface: &ProjectiveHypersurface, kmax: u32, cap: u32) -> Result<Self> {
        let n = surface.dimension();
        let points = match surface.data() {
            SingularData::Computed => projective_singular_points(surface)?
                .into_iter()
                .map(|point| {
                    let chart = point.chart();
                    let curve = chart_curve(surface, chart)?.expect("a singular point lies on a nonconstant chart");
                    let affine = point.affine(chart)?;
                    let analysis = PointAnalysis::run(&curve, &affine, kmax, cap)?;
                    Ok(LocalPoint {
                        multiplicity: analysis.multiplicity(),
                        point,
                        chart,
                        source: LocalSource::Computed(Box::new(analysis)),
                    })
                })
                .collect::<Result<Vec<_>>>()?,
            SingularData::Declared(declared) => {
                for p in declared {
                    if p.multiplicity * kmax >= n {
                        return Err(Error::Range(format!(
                            "declared point {} of multiplicity {} needs mk < n = {n}; k = {kmax} is too large",
                            p.point, p.multiplicity
                        )));
                    }
                }
                let mut pts: Vec<LocalPoint> = declared
                    .iter()
                    .map(|p| LocalPoint {
                        point: p.point.clone(),
                        chart: p.point.chart(),
                        multiplicity: p.multiplicity,
                        source: LocalSource::Declared,
                    })
                    .collect();
                pts.sort_by(|a, b| a.point.cmp(&b.point));
                pts.dedup_by(|a, b| a.point == b.point);
                pts
            }
        };
        Ok(ProjectiveAnalysis { surface: surface.clone(), points, kmax })
    }

    /// The local ideal `I_k` at a point, in its chart's affine coordinates.
    pub fn local_ideal(&self, point: &LocalPoint, k: u32) -> Result<JetIdeal> {
        if k > self.kmax {
            return Err(Error::Range(format!("k = {k} exceeds the computed range 0..={}", self.kmax)));
        }
        match &point.source {
            LocalSource::Computed(a) => Ok(a.family.ideal(k).clone()),
            LocalSource::Declared => {
                let n = self.surface.dimension() as i64;
                let m = point.multiplicity as i64;
                Ok(JetIdeal::maximal_power(&point.affine(), (k as i64 + 1) * m - n))
            }
        }
    }

    /// The subscheme `Z_k` defined by `I_k(D)`.
    pub fn subscheme(&self, k: u32) -> Result<SubschemeZk> {
        let mut components = Vec::new();
        for p in &self.points {
            let ideal = self.local_ideal(p, k)?;
            if !ideal.is_unit() {
                components.push(ZkComponent { point: p.point.clone(), chart: p.chart, ideal });
            }
        }
        Ok(SubschemeZk { k, components })
    }
}

/// One point of the cosupport of `Z_k` with its local ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZkComponent {
    pub point: ProjectivePoint,
    pub chart: usize,
    pub ideal: JetIdeal,
}

/// `Z_k` for a hypersurface with isolated singular points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubschemeZk {
    pub k: u32,
    pub components: Vec<ZkComponent>,
}

impl SubschemeZk {
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `0`, or `-1` for the empty scheme.
    pub fn dimension(&self) -> i64 {
        if self.is_empty() {
            -1
        } else {
            0
        }
    }

    /// Total colength, or `-1` for the empty scheme.
    pub fn degree(&self) -> i64 {
        if self.is_empty() {
            -1
        } else {
            self.components.iter().map(|c| c.ideal.colength() as i64).sum()
        }
    }
}

/// Rank of the evaluation map from degree-`ℓ` forms onto `⊕ O / I_x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvaluationRank {
    pub degree: String,
    pub forms: String,
    pub target: String,
    pub rank: String,
    pub surjective: bool,
}

/// Computes the rank of forms of degree `l` in `arity` variables evaluated
/// into the quotients by the given local ideals (each in its chart).
pub fn evaluation_rank(arity: usize, l: u32, targets: &[(usize, &JetIdeal)]) -> EvaluationRank {
    let target: usize = targets.iter().map(|(_, i)| i.colength()).sum();
    let forms = monomials_of_degree(arity, l);
    let mut ech = Echelon::new();
    for f in &forms {
        if ech.rank() == target {
            break;
        }
        let form = Polynomial::monomial(f.clone());
        let mut row = SparseRow::new();
        let mut offset = 0;
        for (chart, ideal) in targets {
            for (i, c) in ideal.normal_form(&dehomogenize(&form, *chart)).into_iter().enumerate() {
                if !c.is_zero() {
                    row.insert(offset + i, c);
                }
            }
            offset += ideal.colength();
        }
        ech.insert(row);
    }
    let rank = ech.rank();
    EvaluationRank {
        degree: l.to_string(),
        forms: forms.len().to_string(),
        target: target.to_string(),
        rank: rank.to_string(),
        surjective: rank == target,
    }
}

/// A projective check with the evaluation data behind it, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectiveCheck {
    #[serde(flatten)]
    pub record: CheckRecord,
    pub vacuous: bool,
    pub evaluation: Option<EvaluationRank>,
}

fn record(name: &str, k: Option<u32>, relation: String, passed: bool) -> CheckRecord {
    CheckRecord { name: name.to_string(), k: k.map(|k| k.to_string()), relation, passed, witness: None }
}

/// `z_k < n - (k+1)d + 1` forces `Z_k = ∅`.
pub fn check_triviality_bound(surface: &ProjectiveHypersurface, z: &SubschemeZk) -> ProjectiveCheck {
    let (n, d, k) = (surface.dimension() as i64, surface.degree() as i64, z.k as i64);
    let threshold = n - (k + 1) * d + 1;
    let hypothesis = z.dimension() < threshold;
    ProjectiveCheck {
        record: record(
            "triviality-bound",
            Some(z.k),
            format!("z_{k} = {} < {threshold} implies Z_{k} = ∅", z.dimension()),
            !hypothesis || z.is_empty(),
        ),
        vacuous: !hypothesis,
        evaluation: None,
    }
}

/// `deg Z_k <= C((k+1)d - 1, n - z_k)` when `z_k >= n - (k+1)d + 1`.
pub fn check_degree_bound(surface: &ProjectiveHypersurface, z: &SubschemeZk) -> ProjectiveCheck {
    let (n, d, k) = (surface.dimension() as i64, surface.degree() as i64, z.k as i64);
    let threshold = n - (k + 1) * d + 1;
    let hypothesis = z.dimension() >= threshold;
    let top = ((k + 1) * d - 1) as u64;
    let bottom = (n - z.dimension()) as u64;
    let bound = big_binomial(top, bottom);
    let passed = z.degree() < 0 || BigUint::from(z.degree() as u64) <= bound;
    ProjectiveCheck {
        record: record(
            "degree-bound",
            Some(z.k),
            format!("deg Z_{k} = {} ≤ C({top}, {bottom}) = {bound}", z.degree()),
            !hypothesis || passed,
        ),
        vacuous: !hypothesis,
        evaluation: None,
    }
}

/// The points of `Z_k` impose independent conditions on forms of degree
/// `(k+1)d - n - 1`.
pub fn check_independent_conditions(surface: &ProjectiveHypersurface, z: &SubschemeZk) -> ProjectiveCheck {
    let (n, d, k) = (surface.dimension() as i64, surface.degree() as i64, z.k as i64);
    let raw = (k + 1) * d - n - 1;
    let l = raw.max(0) as u32;
    let targets: Vec<(usize, &JetIdeal)> = z.components.iter().map(|c| (c.chart, &c.ideal)).collect();
    let eval = evaluation_rank(surface.equation().arity(), l, &targets);
    let vacuous = raw < 0;
    ProjectiveCheck {
        record: record(
            "independent-conditions",
            Some(z.k),
            format!("forms of degree {l} surject onto O_Z_{k} (rank {} of {})", eval.rank, eval.target),
            vacuous || eval.surjective,
        ),
        vacuous,
        evaluation: Some(eval),
    }
}

/// Points of multiplicity `m` impose independent conditions on forms of degree
/// `([n/m] + 1)d - n - 1` (for `n >= 3`).
pub fn check_multiplicity_points(analysis: &ProjectiveAnalysis, m: u32) -> ProjectiveCheck {
    let surface = &analysis.surface;
    let (n, d) = (surface.dimension(), surface.degree() as i64);
    let raw = ((n / m) as i64 + 1) * d - n as i64 - 1;
    let l = raw.max(0) as u32;
    let ideals: Vec<(usize, JetIdeal)> = analysis
        .points
        .iter()
        .filter(|p| p.multiplicity == m)
        .map(|p| (p.chart, JetIdeal::maximal_ideal(&p.affine())))
        .collect();
    let targets: Vec<(usize, &JetIdeal)> = ideals.iter().map(|(c, i)| (*c, i)).collect();
    let eval = evaluation_rank(surface.equation().arity(), l, &targets);
    let vacuous = raw < 0;
    ProjectiveCheck {
        record: record(
            "multiplicity-points-independent",
            None,
            format!(
                "the {} point(s) of multiplicity {m} impose independent conditions on forms of degree {l}",
                targets.len()
            ),
            vacuous || eval.surjective,
        ),
        vacuous,
        evaluation: Some(eval),
    }
}

/// Forms of degree `(k_{m,j} + 1)d - n - 1` separate `(j-1)`-jets along the
/// points of multiplicity at least `m >= 3` (for `n >= 3`).
pub fn check_jet_separation(analysis: &ProjectiveAnalysis, m: u32, j: u32) -> Result<ProjectiveCheck> {
    let surface = &analysis.surface;
    let (n, d) = (surface.dimension(), surface.degree() as i64);
    let level = jet_separation_level(n, m, j)?;
    let raw = (level as i64 + 1) * d - n as i64 - 1;
    let l = raw.max(0) as u32;
    let ideals: Vec<(usize, JetIdeal)> = analysis
        .points
        .iter()
        .filter(|p| p.multiplicity >= m)
        .map(|p| (p.chart, JetIdeal::maximal_power(&p.affine(), j as i64)))
        .collect();
    let targets: Vec<(usize, &JetIdeal)> = ideals.iter().map(|(c, i)| (*c, i)).collect();
    let eval = evaluation_rank(surface.equation().arity(), l, &targets);
    let vacuous = raw < 0;
    Ok(ProjectiveCheck {
        record: record(
            "jet-separation",
            Some(level),
            format!("forms of degree {l} separate {}-jets at the {} point(s) of multiplicity ≥ {m}", j - 1, targets.len()),
            vacuous || eval.surjective,
        ),
        vacuous,
        evaluation: Some(eval),
    })
}

/// Every check that applies for `0 <= k <= kmax`.
pub fn verify_projective(analysis: &ProjectiveAnalysis) -> Result<Vec<ProjectiveCheck>> {
    let surface = &analysis.surface;
    let mut out = Vec::new();
    for k in 0..=analysis.kmax {
        let z = analysis.subscheme(k)?;
        out.push(check_triviality_bound(surface, &z));
        out.push(check_degree_bound(surface, &z));
        out.push(check_independent_conditions(surface, &z));
    }
    if surface.dimension() >= 3 {
        let mut mults: Vec<u32> = analysis.points.iter().map(|p| p.multiplicity).collect();
        mults.sort_unstable();
        mults.dedup();
        for &m in &mults {
            out.push(check_multiplicity_points(analysis, m));
        }
        for &m in mults.iter().filter(|&&m| m >= 3) {
            for j in 1..=m {
                out.push(check_jet_separation(analysis, m, j)?);
            }
        }
    }
    Ok(out)
}

/// Moves a local ideal at `point` from chart `from` to chart `to`: each
/// generator is homogenized and dehomogenized again, which changes it only by
/// a unit at the point.
pub fn transfer_ideal(ideal: &JetIdeal, point: &ProjectivePoint, from: usize, to: usize) -> Result<JetIdeal> {
    let gens: Vec<Polynomial> = ideal
        .minimal_generators()
        .iter()
        .map(|g| dehomogenize(&homogenize(g, from, g.degree().unwrap_or(0)), to))
        .collect();
    if gens.is_empty() {
        return Ok(JetIdeal::unit(&point.affine(to)?));
    }
    JetIdeal::from_generators(&GeneratorSet::new(gens, point.affine(to)?)?)
}

/// `I_k` at a point of a plane curve, computed in the chart `x_chart = 1`.
pub fn chart_ideal(surface: &ProjectiveHypersurface, point: &ProjectivePoint, chart: usize, k: u32) -> Result<JetIdeal> {
    let curve = chart_curve(surface, chart)?.ok_or_else(|| Error::Input(format!("chart {chart} is empty")))?;
    let affine = point.affine(chart)?;
    Ok(PointAnalysis::run(&curve, &affine, k, DEFAULT_CAP)?.family.ideal(k).clone())
}

/// Whether two charts containing `point` give the same `I_k` after the chart
/// transition.
pub fn charts_agree(surface: &ProjectiveHypersurface, point: &ProjectivePoint, a: usize, b: usize, k: u32) -> Result<bool> {
    let ia = chart_ideal(surface, point, a, k)?;
    let ib = chart_ideal(surface, point, b, k)?;
    Ok(ia.colength() == ib.colength() && transfer_ideal(&ib, point, b, a)? == ia)
}

/// Names `x0, x1, …` for `P^n`.
pub fn homogeneous_names(n: usize) -> Vec<String> {
    if n == 2 {
        return default_names(3);
    }
    (0..=n).map(|i| format!("x{i}")).collect()
}

/// Whether `H` vanishes at the point.
pub fn lies_on(h: &Polynomial, p: &ProjectivePoint) -> bool {
    h.evaluate(p.coords()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(eq: &str) -> ProjectiveHypersurface {
        let names = default_names(3);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        ProjectiveHypersurface::new(parse(eq, &refs).unwrap(), names, SingularData::Computed).unwrap()
    }

    #[test]
    fn chart_round_trip() {
        let h = parse("x^2*z - y^3 + x*y*z", &["x", "y", "z"]).unwrap();
        for c in 0..3 {
            assert_eq!(homogenize(&dehomogenize(&h, c), c, 3), h);
        }
    }

    #[test]
    fn reducedness() {
        let p = |s: &str| parse(s, &["x", "y", "z"]).unwrap();
        assert!(is_reduced(&p("x*y*z")));
        assert!(!is_reduced(&p("x^2*y")));
        assert!(!is_reduced(&p("(x + y - z)^2*(x - z)")));
        assert!(is_reduced(&p("x^2 + y^2 + z^2")));
    }

    #[test]
    fn triangle_points() {
        let s = plane("x*y*z");
        let pts = projective_singular_points(&s).unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| lies_on(s.equation(), p)));
    }

    #[test]
    fn points_at_infinity() {
        // y^2 z = x^3 has its cusp at (0 : 0 : 1); swapping x and z moves it to (1 : 0 : 0)
        let s = plane("x*y^2 - z^3");
        let pts = projective_singular_points(&s).unwrap();
        assert_eq!(pts, vec![ProjectivePoint::new(vec![int(1), int(0), int(0)]).unwrap()]);
        let t = plane("x^3 - y^2*z");
        let pts = projective_singular_points(&t).unwrap();
        assert_eq!(pts, vec![ProjectivePoint::new(vec![int(0), int(0), int(1)]).unwrap()]);
        let u = plane("y*(x^2 - z^2) + x^3");
        assert!(projective_singular_points(&u).unwrap().iter().all(|p| lies_on(u.equation(), p)));
    }

    #[test]
    fn triangle_k1() {
        let s = plane("x*y*z");
        let a = ProjectiveAnalysis::run(&s, 1, DEFAULT_CAP).unwrap();
        let z = a.subscheme(1).unwrap();
        assert_eq!(z.degree(), 3);
        assert!(a.subscheme(0).unwrap().is_empty());
        let checks = verify_projective(&a).unwrap();
        assert!(checks.iter().all(|c| c.record.passed), "{checks:?}");
        let ind = check_independent_conditions(&s, &z);
        assert_eq!(ind.evaluation.unwrap().rank, "3");
    }

    #[test]
    fn cuspidal_cubic() {
        let s = plane("z*y^2 - x^3");
        let a = ProjectiveAnalysis::run(&s, 1, DEFAULT_CAP).unwrap();
        let z = a.subscheme(1).unwrap();
        assert_eq!(z.degree(), 4);
        let ind = check_independent_conditions(&s, &z);
        assert!(ind.record.passed);
        assert_eq!(ind.evaluation.as_ref().unwrap().degree, "3");
        assert_eq!(ind.evaluation.unwrap().rank, "4");
    }

    #[test]
    fn smooth_conic_is_empty() {
        let s = plane("x^2 + y^2 - z^2");
        let a = ProjectiveAnalysis::run(&s, 3, DEFAULT_CAP).unwrap();
        for k in 0..=3 {
            assert!(a.subscheme(k).unwrap().is_empty());
        }
        assert!(verify_projective(&a).unwrap().iter().all(|c| c.record.passed));
    }

    #[test]
    fn declared_quartic_in_p4() {
        let json = r#"{
            "equation": "x0*(x1^3 + x2^3 + x3^3 + x4^3) + x1^4 + x2^4 + x3^4 + x4^4",
            "vars": ["x0", "x1", "x2", "x3", "x4"],
            "mode": "declared",
            "points": [{"coords": ["1", "0", "0", "0", "0"], "multiplicity": "3"}]
        }"#;
        let s = parse_input(json).unwrap();
        assert_eq!(s.declared_kmax(), Some(1));
        let a = ProjectiveAnalysis::run(&s, 1, DEFAULT_CAP).unwrap();
        assert_eq!(a.subscheme(1).unwrap().degree(), 5);
        assert!(a.subscheme(0).unwrap().is_empty());
        let checks = verify_projective(&a).unwrap();
        assert!(checks.iter().all(|c| c.record.passed), "{checks:?}");
        assert!(ProjectiveAnalysis::run(&s, 2, DEFAULT_CAP).is_err());
    }

    #[test]
    fn declared_points_are_checked() {
        let base = |pt: &str, m: &str| {
            format!(
                r#"{{"equation": "x0*(x1^3 + x2^3 + x3^3 + x4^3) + x1^4 + x2^4 + x3^4 + x4^4",
                    "vars": ["x0", "x1", "x2", "x3", "x4"], "mode": "declared",
                    "points": [{{"coords": {pt}, "multiplicity": {m}}}]}}"#
            )
        };
        assert!(parse_input(&base(r#"["1","0","0","0","0"]"#, "3")).is_ok());
        assert!(parse_input(&base(r#"[1,0,0,0,0]"#, "3")).is_ok());
        assert!(matches!(parse_input(&base(r#"["1","1","0","0","0"]"#, "3")), Err(Error::NotOnCurve { .. })));
        assert!(parse_input(&base(r#"["1","0","0","0","0"]"#, "2")).is_err());
    }

    #[test]
    fn charts_give_the_same_ideal() {
        // node at (1 : 1 : 1) seen from all three charts
        let s = plane("(x - z)*(y - z)*(x + y + z)");
        let p = ProjectivePoint::new(vec![int(1), int(1), int(1)]).unwrap();
        for k in 0..=2 {
            assert!(charts_agree(&s, &p, 2, 0, k).unwrap());
            assert!(charts_agree(&s, &p, 2, 1, k).unwrap());
        }
        let cusp = plane("(y - z)^2*z - (x - z)^3");
        assert!(charts_agree(&cusp, &ProjectivePoint::new(vec![int(1), int(1), int(1)]).unwrap(), 2, 0, 2).unwrap());
    }
}
