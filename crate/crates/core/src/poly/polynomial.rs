use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{default_names, Monomial};
use crate::error::{Error, Result};
use crate::rational::{common_denominator, numerator_gcd, Rational};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::term(Monomial::one(arity), c)
    }

    pub fn var(arity: usize, i: usize) -> Self {
        Self::term(Monomial::var(arity, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(m.arity());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, Rational::one())
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, merging repeats.
    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(arity);
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), arity);
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.arity))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.arity);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.arity, "variable index out of range");
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Iterated derivative `∂^beta`.
    pub fn derivative(&self, beta: &Monomial) -> Polynomial {
        let mut p = self.clone();
        for (i, &e) in beta.exponents().iter().enumerate() {
            for _ in 0..e {
                p = p.partial_derivative(i);
            }
        }
        p
    }

    /// Substitutes `subst[i]` for the `i`-th variable.
    pub fn compose(&self, subst: &[Polynomial]) -> Result<Polynomial> {
        if subst.len() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: subst.len() });
        }
        let target = match subst.first() {
            Some(s) => s.arity,
            None => return Ok(self.clone()),
        };
        if let Some(bad) = subst.iter().find(|s| s.arity != target) {
            return Err(Error::ArityMismatch { expected: target, found: bad.arity });
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; self.arity];
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &subst[i];
                    table.push(next);
                }
                if e > 0 {
                    t = &t * &table[e as usize];
                }
            }
            out = out + t;
        }
        Ok(out)
    }

    /// `p(x + shift)`: re-expresses `p` in coordinates centred at `-shift`.
    pub fn translate(&self, shift: &[Rational]) -> Polynomial {
        let subst: Vec<Polynomial> = (0..self.arity)
            .map(|i| Polynomial::var(self.arity, i) + Polynomial::constant(self.arity, shift[i].clone()))
            .collect();
        self.compose(&subst).expect("arity checked")
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes constants for some variables, keeping the arity.
    pub fn specialize(&self, var: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.arity);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            let k = std::mem::replace(&mut e[var], 0);
            out.add_term(Monomial::new(e), c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    /// Largest power of variable `var` dividing every term; `None` for zero.
    pub fn var_valuation(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[var]).min()
    }

    /// Divides by `x_var^e`; every term must be divisible.
    pub fn div_var_power(&self, var: usize, e: u32) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exponents().to_vec();
                    assert!(exps[var] >= e, "monomial not divisible");
                    exps[var] -= e;
                    (Monomial::new(exps), c.clone())
                })
                .collect(),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        self.filter_terms(|m| m.degree() == d)
    }

    /// Terms of total degree below `t`.
    pub fn truncate(&self, t: u32) -> Polynomial {
        self.filter_terms(|m| m.degree() < t)
    }

    /// Terms whose exponent in `var` is below `bound`.
    pub fn truncate_var(&self, var: usize, bound: u32) -> Polynomial {
        self.filter_terms(|m| m.exponents()[var] < bound)
    }

    fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Scales to coprime integer coefficients with a positive leading term.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let den = common_denominator(self.terms.values());
        let num = numerator_gcd(self.terms.values());
        let mut factor = Rational::new(den, num);
        if self.leading_term().unwrap().1.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Multiplies by `x_var^e`.
    pub fn mul_var_power(&self, var: usize, e: u32) -> Polynomial {
        let mut exps = vec![0; self.arity];
        exps[var] = e;
        self.mul_monomial(&Monomial::new(exps))
    }

    /// Adds variables at the end (or reorders/embeds via `positions`):
    /// variable `i` of `self` becomes variable `positions[i]` of the result.
    pub fn embed(&self, new_arity: usize, positions: &[usize]) -> Polynomial {
        Polynomial {
            arity: new_arity,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; new_arity];
                    for (i, &k) in m.exponents().iter().enumerate() {
                        e[positions[i]] += k;
                    }
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&format!("{}*{}", a, m.render(names)));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names(self.arity)))
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch in addition");
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch in subtraction");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch in product");
        let mut out = Polynomial::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// `h^(k+1) * ∂^beta (g / h)`.
///
/// Differentiates the quotient keeping the numerator over `h^j`:
/// `∂_i (N / h^j) = (h ∂_i N - j N ∂_i h) / h^(j+1)`. After `|beta|` steps the
/// denominator is `h^(|beta|+1)`, and `|beta| <= k` makes the result the
/// polynomial `N * h^(k - |beta|)`.
pub fn twisted_derivative(g: &Polynomial, h: &Polynomial, beta: &Monomial, k: u32) -> Result<Polynomial> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if g.arity() != h.arity() || beta.arity() != h.arity() {
        return Err(Error::ArityMismatch { expected: h.arity(), found: g.arity().max(beta.arity()) });
    }
    let order = beta.degree();
    if order > k {
        return Err(Error::Range(format!("derivative order {order} exceeds k = {k}")));
    }
    let mut numer = g.clone();
    let mut j: i64 = 1;
    for (var, &e) in beta.exponents().iter().enumerate() {
        let dh = h.partial_derivative(var);
        for _ in 0..e {
            numer = &(h * &numer.partial_derivative(var)) - &(&numer * &dh).scale(&Rational::from_integer(BigInt::from(j)));
            j += 1;
        }
    }
    Ok(&numer * &h.pow(k - order))
}
