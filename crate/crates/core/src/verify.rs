//! Instance checks of the known containments and criteria for Hodge ideals of
//! plane curves. Each check is exact; a failure carries a witness.

use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::jet::{GeneratorSet, JetIdeal};
use crate::poly::Polynomial;
use crate::resolution::ResolutionTree;
use crate::surface::{HodgeIdealFamily, PointAnalysis};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub k: Option<String>,
    pub relation: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CheckRecord> + 'a {
        self.checks.iter().filter(move |c| c.name == name)
    }

    fn push(&mut self, name: &str, k: Option<u32>, relation: String, passed: bool, witness: Option<String>) {
        self.checks.push(CheckRecord {
            name: name.to_string(),
            k: k.map(|k| k.to_string()),
            relation,
            passed,
            witness,
        });
    }

    /// Records `small ⊆ big`.
    fn containment(&mut self, name: &str, k: Option<u32>, relation: String, big: &JetIdeal, small: &JetIdeal, names: &[String]) -> Result<()> {
        let witness = big.non_member_witness(small)?;
        let passed = witness.is_none();
        self.push(name, k, relation, passed, witness.map(|w| w.render(names)));
        Ok(())
    }
}

/// `I_k ⊆ m^q` with the certificate (the smallest generator order) on failure.
fn in_power(report: &mut VerificationReport, name: &str, k: u32, q: i64, ideal: &JetIdeal, names: &[String]) -> Result<()> {
    let power = JetIdeal::maximal_power(ideal.center(), q);
    report.containment(name, Some(k), format!("I_{k} ⊆ m^{}", q.max(0)), &power, ideal, names)
}

/// Runs every check on a computed family at a point of multiplicity `m`.
pub fn verify_theorems(fam: &HodgeIdealFamily, tree: &ResolutionTree, adjoint: &JetIdeal) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    let curve = fam.curve();
    let names = curve.names().to_vec();
    let center = fam.center();
    let h = curve.equation();
    let m = curve.multiplicity(center) as i64;
    let node = curve.is_node(center);
    let ideals = fam.ideals();
    let order_i0 = ideals[0].order() as i64;

    for (k, ik) in ideals.iter().enumerate() {
        let k = k as u32;
        let ki = k as i64;
        if k >= 1 {
            let prev = &ideals[k as usize - 1];
            report.containment("descending-chain", Some(k), format!("I_{k} ⊆ I_{}", k - 1), prev, ik, &names)?;

            let bad = prev.minimal_generators().into_iter().find(|g| !ik.member(&(g * h)).unwrap_or(false));
            report.push(
                "twist-inclusion",
                Some(k),
                format!("h · I_{} ⊆ I_{k}", k - 1),
                bad.is_none(),
                bad.map(|g| (&g * h).render(&names)),
            );

            report.containment("adjoint-containment", Some(k), format!("I_{k} ⊆ adj(D)"), adjoint, ik, &names)?;

            // a unit I_k with k >= (n - 1)/2 forces smoothness
            let passed = !ik.is_unit() || m <= 1;
            let relation = if ik.is_unit() {
                format!("I_{k} = O, so the point must be smooth (multiplicity {m})")
            } else {
                format!("I_{k} ≠ O; nothing to check (multiplicity {m})")
            };
            report.push("smoothness-criterion", Some(k), relation, passed, None);
        }

        let hp = h.pow(k + 1);
        let member = ik.member(&hp)?;
        report.push("h-power-membership", Some(k), format!("h^{} ∈ I_{k}", k + 1), member, (!member).then(|| hp.render(&names)));

        in_power(&mut report, "symbolic-power-bound", k, (m - 1).min((ki + 1) * m - 2), ik, &names)?;
        in_power(&mut report, "multiplicity-criterion", k, (m - 2) * (ki + 1), ik, &names)?;
        in_power(&mut report, "jk-multiplicity-bound", k, ki * (m - 1) + order_i0, ik, &names)?;
        if m >= 2 {
            in_power(&mut report, "surface-multiplicity-bound", k, (ki + 1) * (m - 1) - 1, ik, &names)?;
        }
        if m == 2 && !node {
            in_power(&mut report, "non-node-refinement", k, ki + 1, ik, &names)?;
        }

        for d in tree.divisors() {
            let alphas = tree.center_orders(d.id)?;
            let a1 = alphas[0] as i64;
            let total: i64 = alphas.iter().map(|&a| a as i64).sum();
            let q = (total + a1 - 1) / a1;
            let bound = (ki + 1) * (d.ord_curve as i64 - 1) - d.discrepancy as i64 - a1 * q * ki;
            let gens = ik.minimal_generators();
            let ord = gens.iter().map(|g| tree.ord_divisor(d.id, g)).collect::<Result<Vec<_>>>()?.into_iter().min().unwrap_or(0);
            report.push(
                "valuative-bound",
                Some(k),
                format!("ord_E{}(I_{k}) = {ord} ≥ {bound}", d.id),
                ord as i64 >= bound,
                None,
            );
        }
    }

    let lct = tree.lct();
    let unit = ideals[0].is_unit();
    report.push(
        "log-canonical-iff-lct",
        Some(0),
        format!("I_0 {} O and lct = {lct}", if unit { "=" } else { "≠" }),
        unit == (lct >= num_rational::BigRational::one()),
        None,
    );

    for k in 0..fam.kmax() {
        let rhs = recursive_estimate(h, &ideals[k as usize])?;
        let next = &ideals[k as usize + 1];
        report.containment(
            "recursive-estimate",
            Some(k + 1),
            format!("I_{} ⊆ h·Jac(I_{k}) + I_{k}·Jac(h)", k + 1),
            &rhs,
            next,
            &names,
        )?;
    }
    Ok(report)
}

/// `(h)·Jac(J) + J·Jac((h))` at the center of `j`, where `Jac(I)` is generated
/// by the generators of `I` and their first partial derivatives.
pub fn recursive_estimate(h: &Polynomial, j: &JetIdeal) -> Result<JetIdeal> {
    let gens = j.minimal_generators();
    let jac = |ps: &[Polynomial]| -> Vec<Polynomial> {
        let mut out = ps.to_vec();
        for p in ps {
            out.push(p.partial_derivative(0));
            out.push(p.partial_derivative(1));
        }
        out
    };
    let mut all: Vec<Polynomial> = jac(&gens).iter().map(|g| g * h).collect();
    for a in &gens {
        for b in jac(std::slice::from_ref(h)) {
            all.push(a * &b);
        }
    }
    all.retain(|p| !p.is_zero());
    JetIdeal::from_generators(&GeneratorSet::new(all, j.center().clone())?)
}

/// Verification report for one analysed point.
pub fn verify_point(a: &PointAnalysis) -> Result<VerificationReport> {
    verify_theorems(&a.family, &a.tree, &a.adjoint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{ideal_at_origin, RationalPoint};
    use crate::poly::parse;
    use crate::resolution::PlaneCurve;

    fn analyse(s: &str, kmax: u32) -> PointAnalysis {
        PointAnalysis::run(&PlaneCurve::parse(s, None).unwrap(), &RationalPoint::origin(2), kmax, 64).unwrap()
    }

    #[test]
    fn cusp_passes_everything() {
        let a = analyse("x^2 + y^3", 2);
        let r = verify_point(&a).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.named("non-node-refinement").count() == 3);
    }

    #[test]
    fn node_is_exempt_from_refinement() {
        let a = analyse("x*y", 3);
        let r = verify_point(&a).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.named("non-node-refinement").count(), 0);
    }

    #[test]
    fn estimate_is_strict_for_the_cusp() {
        let h = parse("x^2 + y^3", &["x", "y"]).unwrap();
        let j1 = ideal_at_origin(&[parse("x^2", &["x", "y"]).unwrap(), parse("x*y", &["x", "y"]).unwrap(), parse("y^3", &["x", "y"]).unwrap()]).unwrap();
        let rhs = recursive_estimate(&h, &j1).unwrap();
        let expected = ideal_at_origin(
            &["x^3", "x^2*y", "x*y^3", "y^4"].map(|s| parse(s, &["x", "y"]).unwrap()),
        )
        .unwrap();
        assert_eq!(rhs, expected);
    }

    #[test]
    fn broken_family_is_reported_with_witness() {
        let a = analyse("x^2 + y^3", 1);
        let fake_adj = ideal_at_origin(&[parse("x^2", &["x", "y"]).unwrap(), parse("y^2", &["x", "y"]).unwrap()]).unwrap();
        let r = verify_theorems(&a.family, &a.tree, &fake_adj).unwrap();
        let bad: Vec<_> = r.failures().collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].name, "adjoint-containment");
        assert!(bad[0].witness.is_some());
    }
}
