//! Dense univariate polynomials over the rationals: Euclidean arithmetic,
//! square-free parts, interpolation and exact rational-root extraction.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::polynomial::Polynomial;
use crate::rational::{common_denominator, numerator_gcd, simplest_between, Rational};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    pub fn one() -> Self {
        UPoly::constant(Rational::one())
    }

    /// `t - r`.
    pub fn linear_root(r: &Rational) -> Self {
        UPoly::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = &rem[i] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &c * b;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact univariate division");
        q
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(a: &UPoly, b: &UPoly) -> UPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s)` with `g = gcd(a, m)` monic and `s*a ≡ g (mod m)`.
    pub fn gcd_with_cofactor(a: &UPoly, m: &UPoly) -> (UPoly, UPoly) {
        let (mut r0, mut r1) = (a.clone(), m.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::zero());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.is_zero() {
            return (r0, s0);
        }
        let lc = r0.leading().recip();
        (r0.scale(&lc), s0.scale(&lc))
    }

    /// Inverse of `a` modulo `m`, if it exists.
    pub fn inverse_mod(a: &UPoly, m: &UPoly) -> Option<UPoly> {
        let (g, s) = UPoly::gcd_with_cofactor(a, m);
        (g.degree() == Some(0)).then(|| s.rem(m))
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Product of the distinct irreducible factors (monic).
    pub fn squarefree_part(&self) -> UPoly {
        if self.is_constant() {
            return self.monic();
        }
        let g = UPoly::gcd(self, &self.derivative());
        self.exact_div(&g).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        UPoly::gcd(self, &self.derivative()).is_constant()
    }

    /// Scales to coprime integer coefficients with positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let den = common_denominator(&self.coeffs);
        let num = numerator_gcd(&self.coeffs);
        let mut f = Rational::new(den, num);
        if self.leading().is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Reads a polynomial that only involves variable `var`.
    pub fn from_polynomial(p: &Polynomial, var: usize) -> Option<UPoly> {
        let mut coeffs = Vec::new();
        for (m, c) in p.terms() {
            if m.exponents().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            let e = m.exponents()[var] as usize;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(UPoly::new(coeffs))
    }

    pub fn to_polynomial(&self, arity: usize, var: usize) -> Polynomial {
        Polynomial::from_terms(
            arity,
            self.coeffs.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; arity];
                e[var] = i as u32;
                (Monomial::new(e), c.clone())
            }),
        )
    }

    /// Newton interpolation through `(x_i, y_i)` with distinct nodes.
    pub fn interpolate(points: &[(Rational, Rational)]) -> UPoly {
        let n = points.len();
        let mut table: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                table[i] = (&table[i] - &table[i - 1]) / (&points[i].0 - &points[i - level].0);
            }
        }
        let mut acc = UPoly::zero();
        for i in (0..n).rev() {
            acc = acc.mul(&UPoly::linear_root(&points[i].0)).add(&UPoly::constant(table[i].clone()));
        }
        acc
    }

    /// Multiplicity of `r` as a root.
    pub fn root_multiplicity(&self, r: &Rational) -> usize {
        let lin = UPoly::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        while !p.is_zero() {
            let (q, rem) = p.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            p = q;
            k += 1;
        }
        k
    }

    /// The distinct rational roots in increasing order, with multiplicities.
    pub fn rational_roots(&self) -> Vec<(Rational, usize)> {
        if self.is_constant() {
            return vec![];
        }
        let mut s = self.squarefree_part().primitive();
        let mut roots = Vec::new();
        if s.coeff(0).is_zero() {
            roots.push(Rational::zero());
            s = s.exact_div(&UPoly::new(vec![Rational::zero(), Rational::one()]));
        }
        if !s.is_constant() {
            roots.extend(nonzero_rational_roots(&s));
        }
        roots.sort();
        roots.into_iter().map(|r| {
            let m = self.root_multiplicity(&r);
            (r, m)
        }).collect()
    }
}

fn sturm_sequence(s: &UPoly) -> Vec<UPoly> {
    let mut seq = vec![s.clone(), s.derivative().primitive()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        // positive rescaling keeps signs; primitive() makes the leading coefficient
        // positive, so undo that if needed
        let neg = r.scale(&-Rational::one());
        let p = neg.primitive();
        let p = if p.leading().is_positive() == neg.leading().is_positive() { p } else { p.scale(&-Rational::one()) };
        seq.push(p);
    }
    seq
}

fn sign_changes(seq: &[UPoly], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Rational roots of a square-free integer polynomial with nonzero constant term.
///
/// A root `p/q` has `q | lc`, so two candidates differ by at least `1/lc^2`;
/// each real root is isolated (Sturm) and narrowed until its interval can hold
/// at most one such fraction, which is then the simplest rational inside.
fn nonzero_rational_roots(s: &UPoly) -> Vec<Rational> {
    let seq = sturm_sequence(s);
    let lc = s.leading().abs();
    let width = (lc.clone() * lc * Rational::from_integer(BigInt::from(2))).recip();
    let bound = Rational::one()
        + s.coeffs()
            .iter()
            .map(|c| (c / s.leading()).abs())
            .max()
            .unwrap_or_else(Rational::zero);
    let count = |a: &Rational, b: &Rational| sign_changes(&seq, a) - sign_changes(&seq, b);

    let lo = -bound.clone();
    let mut stack = vec![(lo.clone(), bound.clone(), count(&lo, &bound))];
    let mut isolated = Vec::new();
    while let Some((a, b, c)) = stack.pop() {
        match c {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
                let left = count(&a, &mid);
                stack.push((mid.clone(), b, c - left));
                stack.push((a, mid, left));
            }
        }
    }

    let mut roots = Vec::new();
    for (mut a, mut b) in isolated {
        if s.eval(&b).is_zero() {
            roots.push(b);
            continue;
        }
        let mut found = None;
        while &b - &a >= width {
            let mid = (&a + &b) / Rational::from_integer(BigInt::from(2));
            if s.eval(&mid).is_zero() {
                found = Some(mid);
                break;
            }
            if count(&a, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        let candidate = found.unwrap_or_else(|| simplest_between(&a, &b));
        if s.eval(&candidate).is_zero() {
            roots.push(candidate);
        }
    }
    roots
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial(1, 0))
    }
}

/// Rational roots of a univariate polynomial given as a one-variable [`Polynomial`].
pub fn rational_roots(p: &Polynomial) -> crate::error::Result<Vec<(Rational, usize)>> {
    if p.is_zero() {
        return Err(crate::error::Error::ZeroPolynomial);
    }
    let var = match p.arity() {
        1 => 0,
        n => return Err(crate::error::Error::ArityMismatch { expected: 1, found: n }),
    };
    Ok(UPoly::from_polynomial(p, var).expect("single variable").rational_roots())
}
