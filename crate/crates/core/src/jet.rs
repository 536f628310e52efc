//! Local ideals at a rational point, stored through their finite jets.
//!
//! An m-primary ideal `I` at a point with `m^M0 ⊆ I` is determined by the
//! subspace `W = I / m^M0` of the jet space `O / m^M0`. Jets are stored as sparse
//! rows over the monomials of degree `< M0` in coordinates centred at the point,
//! ordered by degree and, inside a degree, from `x^d` down to `y^d`. That
//! indexing is the same for every truncation, so a jet at truncation `t` is also
//! a jet at any larger truncation.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseRow};
use crate::poly::{count_below, default_names, monomials_of_degree, Monomial, Polynomial};
use crate::rational::{parse_rational, render, Rational};

/// Default upper limit on the certified bound `M0`.
pub const DEFAULT_CAP: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalPoint(coords)
    }

    pub fn origin(arity: usize) -> Self {
        RationalPoint(vec![Rational::zero(); arity])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_origin(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Parses `"a,b"` with exact rational entries.
    pub fn parse(text: &str) -> Result<Self> {
        text.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(RationalPoint)
    }

    pub fn render_coords(&self) -> Vec<String> {
        self.0.iter().map(render).collect()
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.render_coords().join(", "))
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.render_coords().serialize(s)
    }
}

/// Explicit generators of a local ideal at `center`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub generators: Vec<Polynomial>,
    pub center: RationalPoint,
}

impl GeneratorSet {
    pub fn new(generators: Vec<Polynomial>, center: RationalPoint) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::ZeroIdeal);
        };
        let arity = first.arity();
        if let Some(bad) = generators.iter().find(|g| g.arity() != arity) {
            return Err(Error::ArityMismatch { expected: arity, found: bad.arity() });
        }
        if center.arity() != arity {
            return Err(Error::ArityMismatch { expected: arity, found: center.arity() });
        }
        Ok(GeneratorSet { generators, center })
    }

    pub fn at_origin(generators: Vec<Polynomial>) -> Result<Self> {
        let arity = generators.first().map_or(0, Polynomial::arity);
        Self::new(generators, RationalPoint::origin(arity))
    }
}

/// Vanishing order of `p` at `center`.
pub fn order_at_center(p: &Polynomial, center: &RationalPoint) -> Result<u32> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.arity() != center.arity() {
        return Err(Error::ArityMismatch { expected: p.arity(), found: center.arity() });
    }
    Ok(p.translate(center.coords()).order().expect("nonzero"))
}

/// Monomials of degree `< t` in column order, with the reverse lookup.
pub(crate) struct Columns {
    pub monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Columns {
    pub fn new(arity: usize, t: u32) -> Self {
        let monos: Vec<Monomial> = (0..t).flat_map(|d| monomials_of_degree(arity, d)).collect();
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Columns { monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn row(&self, p: &Polynomial) -> SparseRow {
        p.terms().filter_map(|(m, c)| self.index(m).map(|i| (i, c.clone()))).collect()
    }

    pub fn poly(&self, arity: usize, row: &SparseRow) -> Polynomial {
        Polynomial::from_terms(arity, row.iter().map(|(&c, v)| (self.monos[c].clone(), v.clone())))
    }

    fn shift(&self, row: &SparseRow, var: usize) -> SparseRow {
        row.iter()
            .filter_map(|(&c, v)| self.index(&self.monos[c].times_var(var)).map(|i| (i, v.clone())))
            .collect()
    }
}

/// Jet image at truncation `t` of the ideal generated by `gens` (local coordinates).
fn closure(arity: usize, gens: &[Polynomial], cols: &Columns) -> Echelon {
    let mut ech = Echelon::new();
    let mut queue: VecDeque<SparseRow> = gens.iter().map(|g| cols.row(g)).collect();
    while let Some(r) = queue.pop_front() {
        if let Some(p) = ech.insert(r) {
            let stored = ech.rows().find(|(q, _)| *q == p).map(|(_, r)| r.clone()).expect("inserted");
            for v in 0..arity {
                let s = cols.shift(&stored, v);
                if !s.is_empty() {
                    queue.push_back(s);
                }
            }
        }
    }
    ech
}

/// Least `d < t` whose degree-`d` columns are all pivots.
fn nakayama_bound(arity: usize, ech: &Echelon, t: u32) -> Option<u32> {
    (0..t).find(|&d| {
        let lo = count_below(arity, d as usize);
        let hi = count_below(arity, d as usize + 1);
        (lo..hi).all(|c| ech.is_pivot(c))
    })
}

/// An m-primary ideal of the local ring at a rational point.
///
/// Stored as the bound `M0` with `m^M0 ⊆ I` and the reduced echelon basis of
/// `I / m^M0`; both are canonical, so derived equality is ideal equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetIdeal {
    arity: usize,
    center: RationalPoint,
    primary_bound: u32,
    core: Echelon,
}

impl JetIdeal {
    pub fn unit(center: &RationalPoint) -> Self {
        Self::maximal_power(center, 0)
    }

    /// `m^q` (the unit ideal for `q <= 0`).
    pub fn maximal_power(center: &RationalPoint, q: i64) -> Self {
        JetIdeal {
            arity: center.arity(),
            center: center.clone(),
            primary_bound: q.max(0) as u32,
            core: Echelon::new(),
        }
    }

    pub fn maximal_ideal(center: &RationalPoint) -> Self {
        Self::maximal_power(center, 1)
    }

    pub fn from_generators(gens: &GeneratorSet) -> Result<Self> {
        Self::from_generators_with(gens, 0, DEFAULT_CAP)
    }

    /// As [`JetIdeal::from_generators`], starting the search at truncation
    /// `start` and giving up once `M0` would exceed `cap`.
    pub fn from_generators_with(gens: &GeneratorSet, start: u32, cap: u32) -> Result<Self> {
        let arity = gens.center.arity();
        let local: Vec<Polynomial> = gens
            .generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.translate(gens.center.coords()))
            .collect();
        if local.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let lowest = local.iter().filter_map(Polynomial::order).max().unwrap_or(0);
        let mut t = start.max(lowest + 2);
        loop {
            let t_eff = t.min(cap + 1);
            let cols = Columns::new(arity, t_eff);
            let ech = closure(arity, &local, &cols);
            if let Some(m0) = nakayama_bound(arity, &ech, t_eff) {
                return Ok(Self::from_echelon(&gens.center, &ech, m0));
            }
            if t_eff > cap {
                return Err(Error::NotPrimary { center: gens.center.to_string(), cap });
            }
            t += (t / 2).max(2);
        }
    }

    /// Ideal generated by local-coordinate `gens` when `m^bound` is already
    /// known to lie in it.
    fn from_local_bounded(center: &RationalPoint, gens: &[Polynomial], bound: u32) -> Self {
        let arity = center.arity();
        let cols = Columns::new(arity, bound);
        let ech = closure(arity, gens, &cols);
        let m0 = nakayama_bound(arity, &ech, bound).unwrap_or(bound);
        Self::from_echelon(center, &ech, m0)
    }

    /// The ideal with `m^bound ⊆ I` whose jet space at truncation `bound` is
    /// spanned by `rows` (which must be closed under multiplication by the
    /// coordinates).
    pub(crate) fn from_jet_space(center: &RationalPoint, rows: Vec<SparseRow>, bound: u32) -> Self {
        let mut ech = Echelon::new();
        for r in rows {
            ech.insert(r);
        }
        let m0 = nakayama_bound(center.arity(), &ech, bound).unwrap_or(bound);
        Self::from_echelon(center, &ech, m0)
    }

    /// The same jets read at another center.
    pub(crate) fn recentered(mut self, center: &RationalPoint) -> Self {
        assert_eq!(center.arity(), self.arity);
        self.center = center.clone();
        self
    }

    fn from_echelon(center: &RationalPoint, ech: &Echelon, m0: u32) -> Self {
        let arity = center.arity();
        let limit = count_below(arity, m0 as usize);
        let mut core = Echelon::new();
        for (p, row) in ech.rows() {
            if p < limit {
                core.insert(row.range(..limit).map(|(&c, v)| (c, v.clone())).collect());
            }
        }
        core.fully_reduce();
        JetIdeal { arity, center: center.clone(), primary_bound: m0, core }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn center(&self) -> &RationalPoint {
        &self.center
    }

    /// The certified `M0` with `m^M0 ⊆ I`.
    pub fn primary_bound(&self) -> u32 {
        self.primary_bound
    }

    /// The jet truncation `M = M0 + 1` at which the ideal is presented.
    pub fn truncation(&self) -> u32 {
        self.primary_bound + 1
    }

    pub fn is_unit(&self) -> bool {
        self.primary_bound == 0
    }

    /// `dim O / I`.
    pub fn colength(&self) -> usize {
        count_below(self.arity, self.primary_bound as usize) - self.core.rank()
    }

    /// Largest `q` with `I ⊆ m^q`.
    pub fn order(&self) -> u32 {
        match self.core.pivots().next() {
            Some(p) => self.column_degree(p),
            None => self.primary_bound,
        }
    }

    fn column_degree(&self, col: usize) -> u32 {
        (0..).find(|&d| count_below(self.arity, d as usize + 1) > col).expect("finite")
    }

    fn check_same_ring(&self, other: &JetIdeal) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        if self.center != other.center {
            return Err(Error::CenterMismatch { left: self.center.to_string(), right: other.center.to_string() });
        }
        Ok(())
    }

    fn member_local(&self, p: &Polynomial) -> bool {
        let cols = Columns::new(self.arity, self.primary_bound);
        self.core.contains(&cols.row(p))
    }

    /// Whether `p` lies in the ideal.
    pub fn member(&self, p: &Polynomial) -> Result<bool> {
        if p.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: p.arity() });
        }
        Ok(self.member_local(&p.translate(self.center.coords())))
    }

    /// Generators in local coordinates: the lifted jet basis and the monomials
    /// of degree `M0`.
    fn spanning_local(&self) -> Vec<Polynomial> {
        let cols = Columns::new(self.arity, self.primary_bound);
        let mut out: Vec<Polynomial> = self.core.rows().map(|(_, r)| cols.poly(self.arity, r)).collect();
        out.extend(monomials_of_degree(self.arity, self.primary_bound).into_iter().map(Polynomial::monomial));
        out
    }

    /// An element of `other` outside `self`, if any (both in global coordinates).
    pub fn non_member_witness(&self, other: &JetIdeal) -> Result<Option<Polynomial>> {
        self.check_same_ring(other)?;
        let skip_monomials = other.primary_bound >= self.primary_bound;
        let cols = Columns::new(other.arity, other.primary_bound);
        let mut candidates: Vec<Polynomial> = other.core.rows().map(|(_, r)| cols.poly(other.arity, r)).collect();
        if !skip_monomials {
            candidates.extend(monomials_of_degree(self.arity, other.primary_bound).into_iter().map(Polynomial::monomial));
        }
        Ok(candidates.into_iter().find(|p| !self.member_local(p)).map(|p| self.to_global(&p)))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &JetIdeal) -> Result<bool> {
        Ok(self.non_member_witness(other)?.is_none())
    }

    pub fn product(&self, other: &JetIdeal) -> Result<JetIdeal> {
        self.check_same_ring(other)?;
        let a = self.minimal_local_generators();
        let b = other.minimal_local_generators();
        let gens: Vec<Polynomial> = a.iter().flat_map(|g| b.iter().map(move |h| g * h)).collect();
        Ok(Self::from_local_bounded(&self.center, &gens, self.primary_bound + other.primary_bound))
    }

    pub fn sum(&self, other: &JetIdeal) -> Result<JetIdeal> {
        self.check_same_ring(other)?;
        let mut gens = self.spanning_local();
        gens.extend(other.spanning_local());
        Ok(Self::from_local_bounded(&self.center, &gens, self.primary_bound.min(other.primary_bound)))
    }

    pub fn power(&self, e: u32) -> JetIdeal {
        let mut acc = JetIdeal::unit(&self.center);
        for _ in 0..e {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// Product with the principal ideal `(p)`; `p` must vanish only at
    /// isolated points for the result to be m-primary.
    pub fn times_polynomial(&self, p: &Polynomial, cap: u32) -> Result<JetIdeal> {
        let gens: Vec<Polynomial> = self.minimal_generators().iter().map(|g| g * p).collect();
        JetIdeal::from_generators_with(&GeneratorSet::new(gens, self.center.clone())?, 0, cap)
    }

    fn to_global(&self, p: &Polynomial) -> Polynomial {
        let back: Vec<Rational> = self.center.coords().iter().map(|c| -c.clone()).collect();
        p.translate(&back)
    }

    /// A minimal generating set in local coordinates.
    ///
    /// A basis of `I / mI`, read off from the jets at truncation `M0 + 1`. The
    /// candidates are the reduced echelon basis with respect to the highest
    /// term, taken in order of that term, which gives the familiar
    /// "leading monomial plus lower-order correction" presentation.
    fn minimal_local_generators(&self) -> Vec<Polynomial> {
        if self.is_unit() {
            return vec![Polynomial::one(self.arity)];
        }
        let t = self.primary_bound + 1;
        let cols = Columns::new(self.arity, t);
        let n = cols.len();
        let spanning = self.spanning_local();

        let shifted: Vec<Polynomial> = spanning
            .iter()
            .flat_map(|g| (0..self.arity).map(move |v| g.mul_var_power(v, 1)))
            .collect();
        let mut mi = closure(self.arity, &shifted, &cols);

        let mut reversed = Echelon::new();
        for g in &spanning {
            reversed.insert(cols.row(g).into_iter().map(|(c, v)| (n - 1 - c, v)).collect());
        }
        reversed.fully_reduce();
        let mut candidates: Vec<(usize, SparseRow)> = reversed
            .rows()
            .map(|(p, r)| (n - 1 - p, r.iter().map(|(&c, v)| (n - 1 - c, v.clone())).collect()))
            .collect();
        candidates.sort_by_key(|(lead, _)| *lead);

        let mut out = Vec::new();
        for (_, row) in candidates {
            if mi.insert(row.clone()).is_some() {
                out.push(cols.poly(self.arity, &row).primitive());
            }
        }
        out
    }

    /// A minimal generating set in the ambient coordinates, each generator
    /// scaled to coprime integer coefficients.
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        self.minimal_local_generators().iter().map(|g| self.to_global(g).primitive()).collect()
    }

    pub fn render_generators(&self, names: &[String]) -> Vec<String> {
        self.minimal_generators().iter().map(|g| g.render(names)).collect()
    }

    /// Monomials (in local coordinates) whose classes form a basis of `O / I`.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let cols = Columns::new(self.arity, self.primary_bound);
        (0..cols.len()).filter(|c| !self.core.is_pivot(*c)).map(|c| cols.monos[c].clone()).collect()
    }

    /// Coordinates of the class of `p` in `O / I` with respect to
    /// [`JetIdeal::standard_monomials`].
    pub fn normal_form(&self, p: &Polynomial) -> Vec<Rational> {
        let cols = Columns::new(self.arity, self.primary_bound);
        let reduced = self.core.reduce(cols.row(&p.translate(self.center.coords())));
        (0..cols.len())
            .filter(|c| !self.core.is_pivot(*c))
            .map(|c| reduced.get(&c).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    pub fn summary(&self, names: Option<&[String]>) -> JetIdealSummary {
        let names = names.map(<[String]>::to_vec).unwrap_or_else(|| default_names(self.arity));
        JetIdealSummary {
            center: self.center.clone(),
            primary_bound: self.primary_bound.to_string(),
            colength: self.colength().to_string(),
            generators: self.render_generators(&names),
        }
    }
}

impl fmt::Display for JetIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.minimal_generators().iter().map(ToString::to_string).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// JSON shape of a [`JetIdeal`].
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct JetIdealSummary {
    pub center: RationalPoint,
    pub primary_bound: String,
    pub colength: String,
    pub generators: Vec<String>,
}

/// `true` iff the polynomial is a unit in the local ring at `center`.
pub fn is_local_unit(p: &Polynomial, center: &RationalPoint) -> bool {
    !p.evaluate(center.coords()).is_zero()
}

/// The local ideal generated by the given polynomials at the origin, for tests
/// and quick constructions.
pub fn ideal_at_origin(gens: &[Polynomial]) -> Result<JetIdeal> {
    JetIdeal::from_generators(&GeneratorSet::at_origin(gens.to_vec())?)
}
