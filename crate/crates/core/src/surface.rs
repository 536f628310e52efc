//! Hodge ideals of reduced plane curves.
//!
//! On a smooth surface `I_k(D) = J_k(D)`, where `J_k` is generated by the
//! twisted derivatives `h^(k+1) ∂^β (g / h)` for `g` in a generating set of
//! `I_0(D)` and `|β| <= k`. By the Leibniz rule, generators of `I_0` suffice.
//! Everything is computed in coordinates centred at the singular point.

use crate::error::{Error, Result};
use crate::jet::{GeneratorSet, JetIdeal, RationalPoint, DEFAULT_CAP};
use crate::poly::{monomials_of_degree, twisted_derivative, Polynomial};
use crate::resolution::{PlaneCurve, ResolutionTree};
use crate::valuation::{adjoint_ideal, multiplier_ideal};

/// `{ h^(k+1) ∂^β (g / h) : g in gens, |β| <= k }`.
pub fn jk_generators(h: &Polynomial, i0: &GeneratorSet, k: u32) -> Result<GeneratorSet> {
    let arity = h.arity();
    let mut out = Vec::new();
    for g in &i0.generators {
        for order in 0..=k {
            for beta in monomials_of_degree(arity, order) {
                let t = twisted_derivative(g, h, &beta, k)?;
                if !t.is_zero() {
                    out.push(t);
                }
            }
        }
    }
    GeneratorSet::new(out, i0.center.clone())
}

/// The ideals `I_0, …, I_kmax` of a curve at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeIdealFamily {
    curve: PlaneCurve,
    center: RationalPoint,
    ideals: Vec<JetIdeal>,
}

/// How the ideals were obtained, for reports.
pub const METHOD: &str =
    "I_k computed as J_k (differential operators of order <= k applied to I_0 / h); on a smooth surface the two agree";

impl HodgeIdealFamily {
    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn center(&self) -> &RationalPoint {
        &self.center
    }

    pub fn kmax(&self) -> u32 {
        self.ideals.len() as u32 - 1
    }

    pub fn ideals(&self) -> &[JetIdeal] {
        &self.ideals
    }

    pub fn ideal(&self, k: u32) -> &JetIdeal {
        &self.ideals[k as usize]
    }
}

/// `I_0, …, I_kmax` of `curve` at `center`, resolving the singularity first.
pub fn hodge_ideals(curve: &PlaneCurve, center: &RationalPoint, kmax: u32) -> Result<HodgeIdealFamily> {
    let tree = ResolutionTree::resolve(curve, center)?;
    let i0 = multiplier_ideal(&tree)?;
    hodge_ideals_from(curve, center, &i0.minimal_generators(), kmax, DEFAULT_CAP)
}

/// As [`hodge_ideals`], from a given generating set of `I_0` (ambient coordinates).
pub fn hodge_ideals_from(
    curve: &PlaneCurve,
    center: &RationalPoint,
    i0_generators: &[Polynomial],
    kmax: u32,
    cap: u32,
) -> Result<HodgeIdealFamily> {
    let origin = RationalPoint::origin(2);
    let h = curve.local_equation(center);
    let local_i0: Vec<Polynomial> = i0_generators.iter().map(|g| g.translate(center.coords())).collect();
    let i0 = GeneratorSet::new(local_i0, origin.clone())?;
    let mut ideals: Vec<JetIdeal> = Vec::new();
    for k in 0..=kmax {
        let gens = jk_generators(&h, &i0, k)?;
        let ik = JetIdeal::from_generators_with(&gens, 0, cap)?;
        check_chain(&h, ideals.last(), &ik, k)?;
        ideals.push(ik);
    }
    Ok(HodgeIdealFamily {
        curve: curve.clone(),
        center: center.clone(),
        ideals: ideals.into_iter().map(|i| i.recentered(center)).collect(),
    })
}

fn check_chain(h: &Polynomial, previous: Option<&JetIdeal>, ik: &JetIdeal, k: u32) -> Result<()> {
    if !ik.member(&h.pow(k + 1))? {
        return Err(Error::Internal(format!("h^{} is not in I_{k}", k + 1)));
    }
    if let Some(prev) = previous {
        if !prev.contains(ik)? {
            return Err(Error::Internal(format!("I_{k} is not contained in I_{}", k - 1)));
        }
        for g in prev.minimal_generators() {
            if !ik.member(&(&g * h))? {
                return Err(Error::Internal(format!("h * I_{} is not contained in I_{k}", k - 1)));
            }
        }
    }
    Ok(())
}

/// Everything computed at one singular point.
#[derive(Clone, Debug)]
pub struct PointAnalysis {
    pub tree: ResolutionTree,
    pub multiplier: JetIdeal,
    pub adjoint: JetIdeal,
    pub family: HodgeIdealFamily,
}

impl PointAnalysis {
    pub fn run(curve: &PlaneCurve, center: &RationalPoint, kmax: u32, cap: u32) -> Result<Self> {
        let tree = ResolutionTree::resolve(curve, center)?;
        let multiplier = multiplier_ideal(&tree)?;
        let adjoint = adjoint_ideal(&tree)?;
        let family = hodge_ideals_from(curve, center, &multiplier.minimal_generators(), kmax, cap)?;
        Ok(PointAnalysis { tree, multiplier, adjoint, family })
    }

    pub fn multiplicity(&self) -> u32 {
        self.family.curve.multiplicity(&self.family.center)
    }
}

/// Runs the pipeline at every singular point of the curve (sorted by point).
pub fn analyze_singular_points(curve: &PlaneCurve, kmax: u32, cap: u32) -> Result<Vec<PointAnalysis>> {
    curve.singular_points()?.iter().map(|p| PointAnalysis::run(curve, p, kmax, cap)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::ideal_at_origin;
    use crate::poly::parse;

    fn p(s: &str) -> Polynomial {
        parse(s, &["x", "y"]).unwrap()
    }

    fn ideal(gens: &[&str]) -> JetIdeal {
        ideal_at_origin(&gens.iter().map(|s| p(s)).collect::<Vec<_>>()).unwrap()
    }

    fn family(s: &str, kmax: u32) -> HodgeIdealFamily {
        hodge_ideals(&PlaneCurve::parse(s, None).unwrap(), &RationalPoint::origin(2), kmax).unwrap()
    }

    #[test]
    fn cusp_values() {
        let f = family("x^2 + y^3", 2);
        assert_eq!(f.ideal(0), &ideal(&["x", "y"]));
        assert_eq!(f.ideal(1), &ideal(&["x^2", "x*y", "y^3"]));
        assert_eq!(f.ideal(2), &ideal(&["x^3", "x^2*y^2", "x*y^3", "y^5", "y^4 - 3*x^2*y"]));
    }

    #[test]
    fn node_is_powers_of_maximal_ideal() {
        let f = family("x*y", 3);
        let m = JetIdeal::maximal_ideal(&RationalPoint::origin(2));
        for k in 0..=3 {
            assert_eq!(f.ideal(k), &m.power(k), "k = {k}");
        }
    }

    #[test]
    fn zeroth_ideal_is_the_multiplier_ideal() {
        let h = p("x^2 + y^3");
        let i0 = GeneratorSet::at_origin(vec![p("x"), p("y")]).unwrap();
        assert_eq!(jk_generators(&h, &i0, 0).unwrap().generators, vec![p("x"), p("y")]);
    }

    #[test]
    fn translated_point_matches_origin() {
        let moved = PlaneCurve::parse("(x - 1)^2 + (y + 2)^3", None).unwrap();
        let c = RationalPoint::parse("1,-2").unwrap();
        let f = hodge_ideals(&moved, &c, 1).unwrap();
        assert_eq!(f.ideal(1).colength(), 4);
        assert!(f.ideal(1).member(&p("(x - 1)*(y + 2)")).unwrap());
        assert!(!f.ideal(1).member(&p("(y + 2)^2")).unwrap());
    }
}
