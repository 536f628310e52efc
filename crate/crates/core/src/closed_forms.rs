//! Closed-form Hodge ideals in arbitrary dimension: simple normal crossing
//! divisors, ordinary singular points, and diagonal hypersurfaces.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::{default_names, monomials_of_degree, Monomial};
use crate::rational::{frac, int, Rational};

/// Largest generator list a closed-form ideal is expanded into.
pub const EXPANSION_LIMIT: usize = 100_000;

/// A monomial ideal given by its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    arity: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// The ideal generated by `gens`, reduced to an antichain.
    pub fn new(arity: usize, gens: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut all: BTreeSet<Monomial> = BTreeSet::new();
        for g in gens {
            if g.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: g.arity() });
            }
            all.insert(g);
        }
        // sorted by degree, so any divisor of g comes before it
        let mut generators: Vec<Monomial> = Vec::new();
        for g in all {
            if !generators.iter().any(|h| h.divides(&g)) {
                generators.push(g);
            }
        }
        Ok(MonomialIdeal { arity, generators })
    }

    pub fn unit(arity: usize) -> Self {
        MonomialIdeal { arity, generators: vec![Monomial::one(arity)] }
    }

    /// `m^q` in `arity` variables; errors when the generator list would be huge.
    pub fn maximal_power(arity: usize, q: u32) -> Result<Self> {
        let count = crate::poly::binomial(arity + q as usize - 1, q as usize);
        if count > EXPANSION_LIMIT {
            return Err(Error::Range(format!("m^{q} in {arity} variables has {count} generators")));
        }
        let mut generators = monomials_of_degree(arity, q);
        generators.sort();
        Ok(MonomialIdeal { arity, generators })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }

    pub fn member(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn contains(&self, other: &MonomialIdeal) -> bool {
        other.generators.iter().all(|g| self.member(g))
    }

    /// Smallest degree of a generator (`None` for the zero ideal).
    pub fn order(&self) -> Option<u32> {
        self.generators.iter().map(Monomial::degree).min()
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.generators.is_empty() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.generators.iter().map(|g| g.render(names)).collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.arity)))
    }
}

/// Lattice points `a ∈ [0, k]^r` with `Σ a_i = total`.
fn bounded_compositions(r: usize, k: u32, total: u32) -> Vec<Vec<u32>> {
    fn rec(r: usize, k: u32, total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == r {
            if total <= k {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for a in (0..=k.min(total)).rev() {
            prefix.push(a);
            rec(r, k, total - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, k, total, &mut Vec::with_capacity(r), &mut out);
    out
}

/// `I_k` of the divisor `x_1 ⋯ x_r = 0` in `n` variables: generated by
/// `x_1^{a_1} ⋯ x_r^{a_r}` with `0 <= a_i <= k` and `Σ a_i = k(r - 1)`.
pub fn snc_hodge_ideal(n: usize, r: usize, k: u32) -> Result<MonomialIdeal> {
    if r < 1 || r > n {
        return Err(Error::Range(format!("need 1 <= r <= n, got r = {r}, n = {n}")));
    }
    let total = k as u64 * (r as u64 - 1);
    let total = u32::try_from(total).map_err(|_| Error::Range(format!("k(r - 1) = {total} is too large")))?;
    let points = bounded_compositions(r, k, total);
    if points.len() > EXPANSION_LIMIT {
        return Err(Error::Range(format!("{} generators exceed the expansion limit", points.len())));
    }
    let gens = points.into_iter().map(|mut a| {
        a.resize(n, 0);
        Monomial::new(a)
    });
    MonomialIdeal::new(n, gens)
}

// JSON output carries every number as a string.
fn as_string<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn all_as_strings<T: fmt::Display, S: Serializer>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Ambient dimension, multiplicity and level for an ordinary singular point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrdinaryQuery {
    #[serde(serialize_with = "as_string")]
    pub n: u32,
    #[serde(serialize_with = "as_string")]
    pub m: u32,
    #[serde(serialize_with = "as_string")]
    pub k: u32,
}

impl OrdinaryQuery {
    pub fn new(n: u32, m: u32, k: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::Range(format!("ambient dimension must be at least 2, got {n}")));
        }
        if m < 2 {
            return Err(Error::Range(format!("multiplicity must be at least 2, got {m}")));
        }
        Ok(OrdinaryQuery { n, m, k })
    }
}

/// `(h)·m^a + m^b`, with `m^e = O` for `e <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistedPowerSum {
    #[serde(serialize_with = "as_string")]
    pub h_times_power: i64,
    #[serde(serialize_with = "as_string")]
    pub power: i64,
}

impl fmt::Display for TwistedPowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |e: i64| if e <= 0 { "O".to_string() } else { format!("m^{e}") };
        if self.h_times_power <= 0 {
            write!(f, "(h) + {}", power(self.power))
        } else {
            write!(f, "(h)·m^{} + {}", self.h_times_power, power(self.power))
        }
    }
}

/// What is known about `I_k` at an ordinary singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrdinaryHodgeIdeal {
    /// `I_k = m^exponent` (the unit ideal for exponent 0).
    Exact {
        #[serde(serialize_with = "as_string")]
        exponent: u32,
    },
    /// `lower ⊆ I_1 ⊆ upper` with `dim I_1 / lower = defect_length`.
    Sandwich { lower: TwistedPowerSum, upper: TwistedPowerSum, defect_length: String },
    /// Outside the range where a closed form is known.
    NoClosedForm,
}

impl OrdinaryHodgeIdeal {
    pub fn is_unit(&self) -> Option<bool> {
        match self {
            OrdinaryHodgeIdeal::Exact { exponent } => Some(*exponent == 0),
            _ => None,
        }
    }

    /// The exact ideal as explicit monomial generators in `n` variables.
    pub fn to_monomial_ideal(&self, n: usize) -> Result<Option<MonomialIdeal>> {
        match self {
            OrdinaryHodgeIdeal::Exact { exponent } => MonomialIdeal::maximal_power(n, *exponent).map(Some),
            _ => Ok(None),
        }
    }
}

impl fmt::Display for OrdinaryHodgeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinaryHodgeIdeal::Exact { exponent: 0 } => f.write_str("O"),
            OrdinaryHodgeIdeal::Exact { exponent } => write!(f, "m^{exponent}"),
            OrdinaryHodgeIdeal::Sandwich { lower, upper, defect_length } => {
                write!(f, "{lower} ⊆ I_1 ⊆ {upper}, with dim I_1 / ({lower}) = {defect_length}")
            }
            OrdinaryHodgeIdeal::NoClosedForm => f.write_str("no closed form known"),
        }
    }
}

/// `C(n, k)` without overflow.
pub fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `I_k` at an ordinary singular point of multiplicity `m` in dimension `n`.
///
/// For `mk < n` this is `m^{max(0, (k+1)m - n)}`. For `k = 1` and `m >= n` only
/// a sandwich between two explicit ideals is known.
pub fn ordinary_hodge_ideal(q: OrdinaryQuery) -> OrdinaryHodgeIdeal {
    let (n, m, k) = (q.n as i64, q.m as i64, q.k as i64);
    if m * k < n {
        return OrdinaryHodgeIdeal::Exact { exponent: ((k + 1) * m - n).max(0) as u32 };
    }
    if k == 1 && m >= n {
        let defect = BigUint::from(q.m) * big_binomial(q.m as u64 - 2, q.n as u64 - 2);
        return OrdinaryHodgeIdeal::Sandwich {
            lower: TwistedPowerSum { h_times_power: m - n - 1, power: 2 * m - n },
            upper: TwistedPowerSum { h_times_power: m - n - 2, power: 2 * m - n - 1 },
            defect_length: defect.to_string(),
        };
    }
    OrdinaryHodgeIdeal::NoClosedForm
}

/// Largest `k` with `I_k` trivial at an ordinary point: `floor(n/m) - 1`.
pub fn triviality_threshold(n: u32, m: u32) -> Result<i64> {
    let q = OrdinaryQuery::new(n, m, 0)?;
    Ok((q.n / q.m) as i64 - 1)
}

/// Exponents of a diagonal hypersurface `Σ x_i^{a_i} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalQuery {
    #[serde(serialize_with = "all_as_strings")]
    pub exponents: Vec<u32>,
}

impl DiagonalQuery {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Range("need at least one exponent".into()));
        }
        if let Some(a) = exponents.iter().find(|&&a| a < 2) {
            return Err(Error::Range(format!("exponents must be at least 2, got {a}")));
        }
        Ok(DiagonalQuery { exponents })
    }

    /// `α = Σ 1/a_i`.
    pub fn alpha(&self) -> Rational {
        self.exponents.iter().fold(int(0), |acc, &a| acc + frac(1, a as i64))
    }
}

/// `α - 1`: every integer `k` up to this bound has `I_k` trivial at the origin.
pub fn diagonal_triviality_bound(q: &DiagonalQuery) -> Rational {
    q.alpha() - int(1)
}

/// The guaranteed `q` with `I_k ⊆ I_W^{(q)}` along a codimension-`r` center of
/// multiplicity `m`: `max(0, min(m - 1, (k+1)m - r))`.
pub fn symbolic_power_bound(n: u32, m: u32, r: u32, k: u32) -> Result<u32> {
    if m < 1 {
        return Err(Error::Range(format!("multiplicity must be at least 1, got {m}")));
    }
    if r < 1 || r > n {
        return Err(Error::Range(format!("need 1 <= r <= n, got r = {r}, n = {n}")));
    }
    let (m, r, k) = (m as i64, r as i64, k as i64);
    Ok((m - 1).min((k + 1) * m - r).max(0) as u32)
}

/// The level `k_{m,j}` whose Hodge ideal lies in `m_x^j` at every isolated point
/// of multiplicity at least `m >= 3` of a hypersurface in `P^n`:
/// `ceil((n - m + j) / m)` for `j <= m - 1`, else `ceil((n - m + j) / (m - 2))`.
pub fn jet_separation_level(n: u32, m: u32, j: u32) -> Result<u32> {
    if m < 3 {
        return Err(Error::Range(format!("multiplicity must be at least 3, got {m}")));
    }
    if j < 1 {
        return Err(Error::Range("jet order must be at least 1".into()));
    }
    let num = (n as i64 - m as i64 + j as i64).max(0);
    let den = if j < m { m } else { m - 2 } as i64;
    Ok(((num + den - 1) / den) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn antichain_reduction() {
        let i = MonomialIdeal::new(2, [mono(&[2, 0]), mono(&[1, 1]), mono(&[3, 1]), mono(&[0, 4])]).unwrap();
        assert_eq!(i.generators().len(), 3);
        assert!(i.member(&mono(&[5, 5])));
        assert!(!i.member(&mono(&[0, 3])));
        assert_eq!(i.to_string(), "(x*y, x^2, y^4)");
    }

    #[test]
    fn snc_examples() {
        assert!(snc_hodge_ideal(3, 1, 5).unwrap().is_unit());
        assert_eq!(snc_hodge_ideal(2, 2, 3).unwrap(), MonomialIdeal::maximal_power(2, 3).unwrap());
        let triple = snc_hodge_ideal(3, 3, 1).unwrap();
        assert_eq!(triple, MonomialIdeal::new(3, [mono(&[1, 1, 0]), mono(&[1, 0, 1]), mono(&[0, 1, 1])]).unwrap());
        assert!(snc_hodge_ideal(2, 3, 1).is_err());
        assert!(snc_hodge_ideal(2, 0, 1).is_err());
        // extra ambient variables do not appear
        assert_eq!(snc_hodge_ideal(4, 2, 1).unwrap().to_string(), "(x2, x1)");
    }

    #[test]
    fn ordinary_examples() {
        let q = |n, m, k| ordinary_hodge_ideal(OrdinaryQuery::new(n, m, k).unwrap());
        assert_eq!(q(5, 3, 1), OrdinaryHodgeIdeal::Exact { exponent: 1 });
        assert_eq!(q(4, 2, 1), OrdinaryHodgeIdeal::Exact { exponent: 0 });
        match q(3, 3, 1) {
            OrdinaryHodgeIdeal::Sandwich { lower, upper, defect_length } => {
                assert_eq!(defect_length, "3");
                assert_eq!(lower, TwistedPowerSum { h_times_power: -1, power: 3 });
                assert_eq!(upper, TwistedPowerSum { h_times_power: -2, power: 2 });
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(q(3, 2, 2), OrdinaryHodgeIdeal::NoClosedForm);
        assert!(OrdinaryQuery::new(1, 2, 0).is_err());
        assert!(OrdinaryQuery::new(3, 1, 0).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(triviality_threshold(6, 2).unwrap(), 2);
        assert_eq!(triviality_threshold(2, 2).unwrap(), 0);
        assert_eq!(triviality_threshold(3, 4).unwrap(), -1);
        let d = |a: &[u32]| diagonal_triviality_bound(&DiagonalQuery::new(a.to_vec()).unwrap());
        assert_eq!(d(&[2, 2, 2, 2]), int(1));
        assert_eq!(d(&[2, 3]), frac(-1, 6));
        assert_eq!(d(&[2, 2]), int(0));
        assert!(DiagonalQuery::new(vec![2, 1]).is_err());
    }

    #[test]
    fn symbolic_bounds() {
        assert_eq!(symbolic_power_bound(2, 3, 2, 1).unwrap(), 2);
        for n in [2u32, 4, 6, 8] {
            assert_eq!(symbolic_power_bound(n, 2, n, n / 2).unwrap(), 1);
        }
        assert_eq!(symbolic_power_bound(3, 1, 2, 4).unwrap(), 0);
        assert!(symbolic_power_bound(3, 2, 4, 0).is_err());
    }

    #[test]
    fn jet_levels() {
        // n = 4, m = 3: ceil(2/3), ceil(3/3), then ceil(4/1)
        assert_eq!(jet_separation_level(4, 3, 1).unwrap(), 1);
        assert_eq!(jet_separation_level(4, 3, 2).unwrap(), 1);
        assert_eq!(jet_separation_level(4, 3, 3).unwrap(), 4);
        assert!(jet_separation_level(4, 2, 1).is_err());
    }
}
