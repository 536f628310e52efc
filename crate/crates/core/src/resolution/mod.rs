//! Embedded resolution of plane curve singularities by point blow-ups.
//!
//! Every point visited during the resolution is moved to the origin of a chart
//! in which the exceptional curves through it are coordinate axes. A blow-up
//! at such a point creates one new exceptional curve `E` with
//!
//! * `ord_E(h) = mult(strict transform) + Σ ord_Ej(h)`,
//! * `k_E = 1 + Σ k_Ej`,
//! * `ord_E(m) = Σ ord_Ej(m)` (1 for the first blow-up),
//!
//! the sums running over the exceptional curves `Ej` through the point.

mod chart;
mod singular;

use num_traits::{One, Zero};
use serde::Serialize;

pub use chart::{ChartMap, ChartStep};
pub use singular::{is_squarefree, singular_points};

use crate::error::{Error, Result};
use crate::jet::RationalPoint;
use crate::poly::{default_names, Polynomial, UPoly};
use crate::rational::{int, Rational};

/// Default limit on the number of blow-ups.
pub const DEFAULT_BLOWUP_CAP: usize = 128;

/// A reduced affine plane curve `h = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    equation: Polynomial,
    names: Vec<String>,
}

impl PlaneCurve {
    pub fn new(equation: Polynomial) -> Result<Self> {
        Self::with_names(equation, default_names(2))
    }

    pub fn with_names(equation: Polynomial, names: Vec<String>) -> Result<Self> {
        if equation.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: equation.arity() });
        }
        if equation.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if equation.is_constant() {
            return Err(Error::ConstantEquation);
        }
        if !is_squarefree(&equation) {
            return Err(Error::NotSquarefree(equation.render(&names)));
        }
        Ok(PlaneCurve { equation, names })
    }

    /// Parses an equation in the given variable names (default `x, y`).
    pub fn parse(text: &str, names: Option<&[String]>) -> Result<Self> {
        let names = names.map(<[String]>::to_vec).unwrap_or_else(|| default_names(2));
        if names.len() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: names.len() });
        }
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::with_names(crate::poly::parse(text, &refs)?, names)
    }

    pub fn equation(&self) -> &Polynomial {
        &self.equation
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.equation.evaluate(p.coords()).is_zero()
    }

    pub fn singular_points(&self) -> Result<Vec<RationalPoint>> {
        singular_points(&self.equation)
    }

    /// Multiplicity at a point (0 off the curve).
    pub fn multiplicity(&self, p: &RationalPoint) -> u32 {
        self.equation.translate(p.coords()).order().unwrap_or(0)
    }

    /// Local equation at `p` in coordinates centred there.
    pub fn local_equation(&self, p: &RationalPoint) -> Polynomial {
        self.equation.translate(p.coords())
    }

    /// Whether the singularity at `p` is an ordinary double point: multiplicity 2
    /// with two distinct tangent lines over the algebraic closure.
    pub fn is_node(&self, p: &RationalPoint) -> bool {
        let local = self.local_equation(p);
        if local.order() != Some(2) {
            return false;
        }
        let q = local.homogeneous_part(2);
        let c = |i, j| q.coefficient(&crate::poly::Monomial::new(vec![i, j]));
        let (a, b, cc) = (c(2, 0), c(1, 1), c(0, 2));
        &b * &b - int(4) * a * cc != Rational::zero()
    }
}

/// One exceptional curve of the resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalDivisor {
    pub id: usize,
    /// Chart (from coordinates centred at the resolved point) in which this
    /// curve is `{x = 0}`.
    pub chart: ChartMap,
    /// `v = ord_E(h)`.
    pub ord_curve: u32,
    /// `k = ` coefficient in the relative canonical divisor.
    pub discrepancy: u32,
    /// `ρ = ord_E(m)` for the maximal ideal of the resolved point.
    pub ord_max: u32,
    /// The exceptional curve on which this one's center lies (latest created).
    pub parent: Option<usize>,
    /// All exceptional curves through the center of this blow-up.
    pub proximate: Vec<usize>,
    /// For each successive center of this divisor, the length of the chart
    /// prefix reaching it.
    center_prefixes: Vec<usize>,
    /// Strict transform of the curve in `chart`.
    strict: Polynomial,
    /// Exceptional curve that is `{y = 0}` in `chart`, if any.
    crossing: Option<usize>,
}

impl ExceptionalDivisor {
    /// Number of blow-ups needed to create this divisor.
    pub fn generation(&self) -> usize {
        self.center_prefixes.len()
    }
}

/// A point visited during resolution, at the origin of its chart.
#[derive(Clone, Debug)]
struct Pending {
    chart: ChartMap,
    strict: Polynomial,
    /// `axes[i]` is the exceptional curve `{x_i = 0}` through the point.
    axes: [Option<usize>; 2],
    prefixes: Vec<usize>,
}

impl Pending {
    fn through(&self) -> Vec<usize> {
        self.axes.iter().flatten().copied().collect()
    }
}

/// Record of a point of the final configuration where the strict transform
/// meets the exceptional locus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SncPoint {
    pub chart: Vec<String>,
    pub strict_multiplicity: u32,
    pub divisors: Vec<usize>,
}

/// The evidence that the final total transform is a normal-crossing divisor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SncCertificate {
    pub blow_ups: usize,
    /// Rational points where the strict transform meets an exceptional curve,
    /// each checked smooth and transverse.
    pub rational_points: Vec<SncPoint>,
    /// Irreducible factors whose (non-rational) roots mark further transverse
    /// simple intersections.
    pub irrational_factors: Vec<String>,
}

/// Whether a point fails the normal-crossing test.
fn snc_failure(strict: &Polynomial, axes: &[Option<usize>; 2]) -> bool {
    let s = strict.order().unwrap_or(0);
    let e = axes.iter().flatten().count();
    match (s, e) {
        (0, _) => false,
        (1, 0) => false,
        (1, 1) => {
            // tangent line a*x + b*y = 0 must differ from the axis
            let var = if axes[0].is_some() { 0 } else { 1 };
            let other = crate::poly::Monomial::var(2, 1 - var);
            strict.coefficient(&other).is_zero()
        }
        _ => true,
    }
}

/// Strict transform in the chart `step` at the origin, dividing out the
/// exceptional coordinate.
fn strict_transform(strict: &Polynomial, step: &ChartStep, mult: u32) -> Polynomial {
    let pulled = step.pullback(strict);
    match step {
        ChartStep::BlowUpX => pulled.div_var_power(0, mult),
        ChartStep::BlowUpY => pulled.div_var_power(1, mult),
        ChartStep::Translate(..) => pulled,
    }
}

/// `f(0, t)` as a polynomial in `t`.
fn restriction_to_axis(f: &Polynomial) -> UPoly {
    let on_axis = f.specialize(0, &Rational::zero());
    UPoly::from_polynomial(&on_axis, 1).expect("only y remains")
}

/// The blow-up history of a curve over one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionTree {
    curve: PlaneCurve,
    center: RationalPoint,
    divisors: Vec<ExceptionalDivisor>,
    certificate: SncCertificate,
}

impl ResolutionTree {
    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn center(&self) -> &RationalPoint {
        &self.center
    }

    pub fn divisors(&self) -> &[ExceptionalDivisor] {
        &self.divisors
    }

    pub fn certificate(&self) -> &SncCertificate {
        &self.certificate
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    /// `min(1, min_E (k_E + 1) / v_E)`.
    pub fn lct(&self) -> Rational {
        self.divisors
            .iter()
            .map(|d| Rational::new((d.discrepancy + 1).into(), d.ord_curve.into()))
            .fold(Rational::one(), |a, b| a.min(b))
    }

    /// `ord_E(p)` for the divisor with the given id; `p` in the ambient coordinates.
    pub fn ord_divisor(&self, id: usize, p: &Polynomial) -> Result<u32> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.divisor(id)?;
        let local = p.translate(self.center.coords());
        Ok(d.chart.pullback(&local).var_valuation(0).expect("nonzero pullback"))
    }

    fn divisor(&self, id: usize) -> Result<&ExceptionalDivisor> {
        self.divisors.get(id).ok_or_else(|| Error::Range(format!("no exceptional divisor {id}")))
    }

    /// `α_j = ord_E(m_{P_{j-1}})` for the successive centers `P_0, P_1, …` of `E`.
    pub fn center_orders(&self, id: usize) -> Result<Vec<u32>> {
        let d = self.divisor(id)?;
        Ok(d.center_prefixes
            .iter()
            .map(|&start| {
                let suffix = d.chart.suffix(start);
                suffix
                    .coordinate_pullbacks()
                    .iter()
                    .map(|c| c.var_valuation(0).expect("nonzero"))
                    .min()
                    .expect("two coordinates")
            })
            .collect())
    }

    pub fn resolve(curve: &PlaneCurve, center: &RationalPoint) -> Result<ResolutionTree> {
        Self::resolve_with_cap(curve, center, DEFAULT_BLOWUP_CAP)
    }

    pub fn resolve_with_cap(curve: &PlaneCurve, center: &RationalPoint, cap: usize) -> Result<ResolutionTree> {
        if center.arity() != 2 {
            return Err(Error::ArityMismatch { expected: 2, found: center.arity() });
        }
        if !curve.contains(center) {
            return Err(Error::NotOnCurve { point: center.to_string() });
        }
        let mut tree = ResolutionTree {
            curve: curve.clone(),
            center: center.clone(),
            divisors: Vec::new(),
            certificate: SncCertificate::default(),
        };
        let root = Pending {
            chart: ChartMap::identity(),
            strict: curve.local_equation(center),
            axes: [None, None],
            prefixes: Vec::new(),
        };
        if !snc_failure(&root.strict, &root.axes) {
            return Ok(tree);
        }
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(point) = queue.pop_front() {
            if tree.divisors.len() >= cap {
                return Err(Error::BlowUpCap { cap });
            }
            for next in tree.blow_up(point)? {
                if snc_failure(&next.strict, &next.axes) {
                    queue.push_back(next);
                } else if next.strict.order() == Some(1) {
                    tree.certificate.rational_points.push(SncPoint {
                        chart: next.chart.describe(),
                        strict_multiplicity: 1,
                        divisors: next.through(),
                    });
                }
            }
        }
        tree.certificate.blow_ups = tree.divisors.len();
        Ok(tree)
    }

    /// Blows up `point`, records the new divisor and returns the points of the
    /// new exceptional curve that still need inspection.
    fn blow_up(&mut self, point: Pending) -> Result<Vec<Pending>> {
        let s = point.strict.order().expect("strict transform through the point");
        let through = point.through();
        let id = self.divisors.len();
        let sum = |f: fn(&ExceptionalDivisor) -> u32| through.iter().map(|&j| f(&self.divisors[j])).sum::<u32>();
        let ord_curve = s + sum(|d| d.ord_curve);
        let discrepancy = 1 + sum(|d| d.discrepancy);
        let ord_max = if through.is_empty() { 1 } else { sum(|d| d.ord_max) };
        let mut prefixes = point.prefixes.clone();
        prefixes.push(point.chart.len());

        let chart_x = point.chart.then(ChartStep::BlowUpX);
        let strict_x = strict_transform(&point.strict, &ChartStep::BlowUpX, s);
        self.divisors.push(ExceptionalDivisor {
            id,
            chart: chart_x.clone(),
            ord_curve,
            discrepancy,
            ord_max,
            parent: through.iter().max().copied(),
            proximate: through.clone(),
            center_prefixes: prefixes.clone(),
            strict: strict_x.clone(),
            crossing: point.axes[1],
        });

        let mut out = Vec::new();
        let restricted = restriction_to_axis(&strict_x);
        let mut rest = restricted.clone();
        for (t0, m) in restricted.rational_roots() {
            for _ in 0..m {
                rest = rest.exact_div(&UPoly::linear_root(&t0));
            }
            let step = ChartStep::Translate(Rational::zero(), t0.clone());
            out.push(Pending {
                chart: chart_x.then(step.clone()),
                strict: step.pullback(&strict_x),
                axes: [Some(id), if t0.is_zero() { point.axes[1] } else { None }],
                prefixes: prefixes.clone(),
            });
        }
        if !rest.is_constant() {
            if !rest.is_squarefree() {
                return Err(Error::NonRationalCenter { chart: chart_x.to_string(), factor: rest.to_string() });
            }
            self.certificate.irrational_factors.push(rest.monic().to_string());
        }

        let strict_y = strict_transform(&point.strict, &ChartStep::BlowUpY, s);
        if strict_y.constant_term().is_zero() {
            out.push(Pending {
                chart: point.chart.then(ChartStep::BlowUpY),
                strict: strict_y,
                axes: [point.axes[0], Some(id)],
                prefixes,
            });
        }
        Ok(out)
    }

    fn redundant_point(&self, at: &RedundantCenter) -> Option<Pending> {
        let last = self.divisors.last()?;
        let t = match at {
            RedundantCenter::Free(t) | RedundantCenter::OnStrictTransform(t) => t.clone(),
            RedundantCenter::Crossing => Rational::zero(),
        };
        let step = ChartStep::Translate(Rational::zero(), t.clone());
        let point = Pending {
            chart: last.chart.then(step.clone()),
            strict: step.pullback(&last.strict),
            axes: [Some(last.id), if t.is_zero() { last.crossing } else { None }],
            prefixes: last.center_prefixes.clone(),
        };
        let s = point.strict.order().unwrap_or(0);
        let shape_ok = match at {
            RedundantCenter::Free(_) => s == 0 && point.axes[1].is_none(),
            RedundantCenter::OnStrictTransform(_) => s == 1,
            RedundantCenter::Crossing => s == 0 && point.axes[1].is_some(),
        };
        (shape_ok && !snc_failure(&point.strict, &point.axes)).then_some(point)
    }

    /// Rational points on the newest exceptional curve at which an extra
    /// blow-up is unnecessary, one of each available kind.
    pub fn redundant_centers(&self) -> Vec<RedundantCenter> {
        let Some(last) = self.divisors.last() else {
            return vec![];
        };
        let restricted = restriction_to_axis(&last.strict);
        let free = (1i64..).map(int).find(|t| !restricted.eval(t).is_zero()).expect("finitely many roots");
        let mut candidates = vec![RedundantCenter::Free(free)];
        candidates.extend(restricted.rational_roots().into_iter().map(|(t, _)| RedundantCenter::OnStrictTransform(t)));
        candidates.push(RedundantCenter::Crossing);
        let mut out: Vec<RedundantCenter> = Vec::new();
        for c in candidates {
            let kind_seen = out.iter().any(|o| std::mem::discriminant(o) == std::mem::discriminant(&c));
            if !kind_seen && self.redundant_point(&c).is_some() {
                out.push(c);
            }
        }
        out
    }

    /// The tree extended by one blow-up at a point of the newest exceptional
    /// curve where the configuration is already normal-crossing.
    pub fn with_redundant_blowup(&self, at: &RedundantCenter) -> Result<ResolutionTree> {
        let point = self
            .redundant_point(at)
            .ok_or_else(|| Error::Range(format!("{at:?} is not a normal-crossing point of the expected kind")))?;
        let mut tree = self.clone();
        // points over a normal-crossing point stay normal-crossing
        tree.blow_up(point)?;
        tree.certificate.blow_ups = tree.divisors.len();
        Ok(tree)
    }

    pub fn summary(&self) -> ResolutionSummary {
        ResolutionSummary {
            center: self.center.clone(),
            blow_ups: self.divisors.len().to_string(),
            lct: self.lct().to_string(),
            divisors: self
                .divisors
                .iter()
                .map(|d| DivisorSummary {
                    id: d.id.to_string(),
                    ord_curve: d.ord_curve.to_string(),
                    discrepancy: d.discrepancy.to_string(),
                    ord_max: d.ord_max.to_string(),
                    parent: d.parent.map(|p| p.to_string()),
                    chart: d.chart.describe(),
                })
                .collect(),
        }
    }
}

/// Where to put an extra, unnecessary blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RedundantCenter {
    /// A point `(0, t)` of the newest exceptional curve met by nothing else.
    Free(Rational),
    /// A point `(0, t)` where the strict transform crosses it transversally.
    OnStrictTransform(Rational),
    /// Its intersection with an older exceptional curve.
    Crossing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorSummary {
    pub id: String,
    #[serde(rename = "v")]
    pub ord_curve: String,
    #[serde(rename = "k")]
    pub discrepancy: String,
    #[serde(rename = "rho")]
    pub ord_max: String,
    pub parent: Option<String>,
    pub chart: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionSummary {
    pub center: RationalPoint,
    pub blow_ups: String,
    pub lct: String,
    pub divisors: Vec<DivisorSummary>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn tree(s: &str) -> ResolutionTree {
        let c = PlaneCurve::parse(s, None).unwrap();
        ResolutionTree::resolve(&c, &RationalPoint::origin(2)).unwrap()
    }

    fn vkr(t: &ResolutionTree) -> Vec<(u32, u32, u32)> {
        t.divisors().iter().map(|d| (d.ord_curve, d.discrepancy, d.ord_max)).collect()
    }

    fn p(s: &str) -> Polynomial {
        crate::poly::parse(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn node_cusp_and_triple_point() {
        assert_eq!(vkr(&tree("x*y")), vec![(2, 1, 1)]);
        assert_eq!(vkr(&tree("x^2 + y^3")), vec![(2, 1, 1), (3, 2, 1), (6, 4, 2)]);
        assert_eq!(vkr(&tree("x*y*(x + y)")), vec![(3, 1, 1)]);
        assert!(tree("x + y^2").is_empty());
    }

    #[test]
    fn lct_values() {
        assert_eq!(tree("x*y").lct(), int(1));
        assert_eq!(tree("x^2 + y^3").lct(), frac(5, 6));
        assert_eq!(tree("y - x^2").lct(), int(1));
    }

    #[test]
    fn divisorial_orders_on_cusp() {
        let t = tree("x^2 + y^3");
        assert_eq!(t.ord_divisor(2, &p("x")).unwrap(), 3);
        assert_eq!(t.ord_divisor(2, &p("y")).unwrap(), 2);
        assert_eq!(t.ord_divisor(2, &p("x^2 + y^3")).unwrap(), 6);
        assert_eq!(t.center_orders(2).unwrap(), vec![2, 1, 1]);
        assert!(t.ord_divisor(0, &p("0")).is_err());
    }

    #[test]
    fn stored_orders_match_pullbacks() {
        for s in ["x^2 + y^3", "x^3 + y^4", "x^2 - y^4", "y*(x^2 + y^3)", "x^3 + y^5"] {
            let t = tree(s);
            let h = p(s);
            for d in t.divisors() {
                assert_eq!(t.ord_divisor(d.id, &h).unwrap(), d.ord_curve, "{s}");
                let rho = t.ord_divisor(d.id, &p("x")).unwrap().min(t.ord_divisor(d.id, &p("y")).unwrap());
                assert_eq!(rho, d.ord_max, "{s}");
            }
        }
    }

    #[test]
    fn irrational_center_is_rejected() {
        // two conjugate cusps with tangents y = ±x/sqrt(2)
        let c = PlaneCurve::parse("(x^2 - 2*y^2)^2 - y^5", None).unwrap();
        let r = ResolutionTree::resolve(&c, &RationalPoint::origin(2));
        assert!(matches!(r, Err(Error::NonRationalCenter { .. })), "{r:?}");
    }

    #[test]
    fn irrational_transverse_branches_are_fine() {
        let t = tree("x^2 - 2*y^2");
        assert_eq!(vkr(&t), vec![(2, 1, 1)]);
        assert_eq!(t.certificate().irrational_factors.len(), 1);
    }

    #[test]
    fn redundant_blowups_keep_invariants_consistent() {
        let t = tree("x^2 + y^3");
        let kinds = t.redundant_centers();
        assert_eq!(kinds.len(), 3);
        for k in &kinds {
            let ext = t.with_redundant_blowup(k).unwrap();
            assert_eq!(ext.divisors().len(), 4);
            let d = ext.divisors().last().unwrap();
            assert_eq!(ext.ord_divisor(d.id, &p("x^2 + y^3")).unwrap(), d.ord_curve);
        }
        let free = t.with_redundant_blowup(&kinds[0]).unwrap();
        assert_eq!(vkr(&free)[3], (6, 5, 2));
        assert_eq!(free.lct(), frac(5, 6));
    }

    #[test]
    fn node_detection() {
        let o = RationalPoint::origin(2);
        assert!(PlaneCurve::parse("x*y", None).unwrap().is_node(&o));
        assert!(PlaneCurve::parse("x^2 + y^2", None).unwrap().is_node(&o));
        assert!(!PlaneCurve::parse("x^2 + y^3", None).unwrap().is_node(&o));
        assert!(!PlaneCurve::parse("x*y*(x+y)", None).unwrap().is_node(&o));
    }

    #[test]
    fn not_on_curve_and_not_squarefree() {
        let c = PlaneCurve::parse("x*y", None).unwrap();
        assert!(matches!(
            ResolutionTree::resolve(&c, &RationalPoint::parse("1,1").unwrap()),
            Err(Error::NotOnCurve { .. })
        ));
        assert!(matches!(PlaneCurve::parse("x^2*y", None), Err(Error::NotSquarefree(_))));
        assert!(matches!(PlaneCurve::parse("3", None), Err(Error::ConstantEquation)));
    }
}
