//! Ideals cut out by divisorial valuation thresholds on a resolution tree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jet::{Columns, JetIdeal};
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{Monomial, Polynomial};
use crate::resolution::ResolutionTree;

/// One threshold `c_i` per exceptional divisor of a tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdProfile(pub Vec<u32>);

impl ThresholdProfile {
    /// `c_i = max(0, v_i - k_i - 1)`: the multiplier ideal of `(1 - ε)D`.
    pub fn multiplier(tree: &ResolutionTree) -> Self {
        ThresholdProfile(tree.divisors().iter().map(|d| d.ord_curve.saturating_sub(d.discrepancy + 1)).collect())
    }

    /// `c_i = max(0, v_i - k_i)`: the adjoint ideal.
    pub fn adjoint(tree: &ResolutionTree) -> Self {
        ThresholdProfile(tree.divisors().iter().map(|d| d.ord_curve.saturating_sub(d.discrepancy)).collect())
    }
}

/// `{g : ord_Ei(g) >= c_i for all i}` at the tree's center.
///
/// Every monomial of degree `t = max ceil(c_i / ρ_i)` passes all thresholds, so
/// `m^t` lies in the ideal and only jets of degree `< t` need testing. Each
/// monomial is pulled back to each divisor's chart keeping only the powers of
/// the exceptional coordinate below `c_i`; the ideal is the kernel of the
/// resulting linear map.
pub fn valuation_ideal(tree: &ResolutionTree, profile: &ThresholdProfile) -> Result<JetIdeal> {
    let divisors = tree.divisors();
    if profile.0.len() != divisors.len() {
        return Err(Error::ArityMismatch { expected: divisors.len(), found: profile.0.len() });
    }
    let center = tree.center();
    let bound = divisors
        .iter()
        .zip(&profile.0)
        .map(|(d, &c)| c.div_ceil(d.ord_max))
        .max()
        .unwrap_or(0);
    if bound == 0 {
        return Ok(JetIdeal::unit(center));
    }
    let cols = Columns::new(2, bound);

    // constraint rows, keyed by (divisor, exceptional power, monomial in v)
    let mut constraints: std::collections::BTreeMap<(usize, Monomial), SparseRow> = Default::default();
    for (d, &c) in divisors.iter().zip(&profile.0) {
        if c == 0 {
            continue;
        }
        let [px, py] = d.chart.coordinate_pullbacks();
        let powers = |base: &Polynomial| {
            let mut out = vec![Polynomial::one(2)];
            for _ in 1..bound {
                out.push((out.last().unwrap() * base).truncate_var(0, c));
            }
            out
        };
        let (xs, ys) = (powers(&px), powers(&py));
        for (col, m) in cols.monos.iter().enumerate() {
            let [a, b] = [m.exponents()[0] as usize, m.exponents()[1] as usize];
            let pulled = (&xs[a] * &ys[b]).truncate_var(0, c);
            for (term, coeff) in pulled.terms() {
                constraints.entry((d.id, term.clone())).or_default().insert(col, coeff.clone());
            }
        }
    }

    let mut ech = Echelon::new();
    for row in constraints.into_values() {
        ech.insert(row);
    }
    ech.fully_reduce();
    Ok(JetIdeal::from_jet_space(center, ech.nullspace(cols.len()), bound))
}

/// The multiplier ideal `I_0(D)` at the tree's center.
pub fn multiplier_ideal(tree: &ResolutionTree) -> Result<JetIdeal> {
    valuation_ideal(tree, &ThresholdProfile::multiplier(tree))
}

/// The adjoint ideal `adj(D)` at the tree's center.
pub fn adjoint_ideal(tree: &ResolutionTree) -> Result<JetIdeal> {
    valuation_ideal(tree, &ThresholdProfile::adjoint(tree))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{ideal_at_origin, RationalPoint};
    use crate::poly::parse;
    use crate::resolution::PlaneCurve;

    fn tree(s: &str) -> ResolutionTree {
        ResolutionTree::resolve(&PlaneCurve::parse(s, None).unwrap(), &RationalPoint::origin(2)).unwrap()
    }

    fn ideal(gens: &[&str]) -> JetIdeal {
        ideal_at_origin(&gens.iter().map(|s| parse(s, &["x", "y"]).unwrap()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn thresholds_for_cusp() {
        let t = tree("x^2 + y^3");
        assert_eq!(ThresholdProfile::multiplier(&t).0, vec![0, 0, 1]);
        assert_eq!(ThresholdProfile::adjoint(&t).0, vec![1, 1, 2]);
        let m = ideal(&["x", "y"]);
        assert_eq!(multiplier_ideal(&t).unwrap(), m);
        assert_eq!(adjoint_ideal(&t).unwrap(), m);
        assert_eq!(valuation_ideal(&t, &ThresholdProfile(vec![0, 0, 0])).unwrap(), ideal(&["1"]));
    }

    #[test]
    fn node_and_triple_point() {
        let node = tree("x*y");
        assert!(multiplier_ideal(&node).unwrap().is_unit());
        assert_eq!(adjoint_ideal(&node).unwrap(), ideal(&["x", "y"]));
        let triple = tree("x*y*(x + y)");
        assert_eq!(multiplier_ideal(&triple).unwrap(), ideal(&["x", "y"]));
        assert_eq!(adjoint_ideal(&triple).unwrap(), ideal(&["x^2", "x*y", "y^2"]));
    }

    #[test]
    fn higher_thresholds() {
        // on the cusp, ord_E3 is the weighted order with weights (3, 2)
        let t = tree("x^2 + y^3");
        let deep = valuation_ideal(&t, &ThresholdProfile(vec![0, 0, 6])).unwrap();
        assert_eq!(deep, ideal(&["x^2", "x*y^2", "y^3"]));
    }

    #[test]
    fn smooth_point_gives_unit_ideals() {
        let t = tree("y - x^2");
        assert!(multiplier_ideal(&t).unwrap().is_unit());
        assert!(adjoint_ideal(&t).unwrap().is_unit());
    }
}
