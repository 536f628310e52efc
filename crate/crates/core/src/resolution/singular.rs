//! Singular points of an affine plane curve over the rationals.
//!
//! After a shear making the equation monic in `y`, every singular point lies
//! over a root of the discriminant `Res_y(h, h_y)`. Rational roots are handled
//! directly; for the remaining factor the common zeros of `h, h_x, h_y` are
//! searched over `Q[x]/(q)`, splitting `q` whenever a leading coefficient turns
//! out to be a zero divisor.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::jet::RationalPoint;
use crate::linalg::determinant;
use crate::poly::{default_names, Polynomial, UPoly};
use crate::rational::{int, Rational};

/// `h(x + lambda*y, y)`.
pub(crate) fn shear(h: &Polynomial, lambda: &Rational) -> Polynomial {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    h.compose(&[&x + &y.scale(lambda), y]).expect("plane polynomial")
}

/// A shear parameter making the `y^deg` coefficient nonzero.
pub(crate) fn monic_shear(h: &Polynomial) -> Rational {
    let d = h.degree().unwrap_or(0);
    let top = h.homogeneous_part(d);
    let mut candidates = (0i64..).flat_map(|n| if n == 0 { vec![0] } else { vec![n, -n] });
    loop {
        let lambda = int(candidates.next().expect("infinite"));
        if !top.evaluate(&[lambda.clone(), int(1)]).is_zero() {
            return lambda;
        }
    }
}

/// Coefficients in `y`, each a polynomial in `x`.
pub(crate) fn coefficients_in_y(p: &Polynomial) -> Vec<UPoly> {
    let d = p.terms().map(|(m, _)| m.exponents()[1] as usize).max().unwrap_or(0);
    let mut out = vec![Vec::<Rational>::new(); d + 1];
    for (m, c) in p.terms() {
        let (i, j) = (m.exponents()[0] as usize, m.exponents()[1] as usize);
        if out[j].len() <= i {
            out[j].resize(i + 1, Rational::zero());
        }
        out[j][i] = c.clone();
    }
    out.into_iter().map(UPoly::new).collect()
}

/// `p(x0, y)` as a polynomial in `y`.
fn specialize_x(p: &Polynomial, x0: &Rational) -> UPoly {
    UPoly::new(coefficients_in_y(p).iter().map(|c| c.eval(x0)).collect())
}

/// Sylvester resultant with formal degrees `da`, `db`.
fn sylvester(a: &UPoly, da: usize, b: &UPoly, db: usize) -> Rational {
    let n = da + db;
    if n == 0 {
        return int(1);
    }
    let mut m = vec![vec![Rational::zero(); n]; n];
    for r in 0..db {
        for i in 0..=da {
            m[r][r + da - i] = a.coeff(i);
        }
    }
    for r in 0..da {
        for i in 0..=db {
            m[db + r][r + db - i] = b.coeff(i);
        }
    }
    determinant(m)
}

/// `Res_y(h, h_y)` for `h` with a nonzero constant `y^d` coefficient, `d` the total degree.
pub(crate) fn discriminant_in_x(h: &Polynomial) -> UPoly {
    let d = h.degree().unwrap_or(0) as usize;
    if d < 2 {
        return UPoly::constant(int(1));
    }
    let hy = h.partial_derivative(1);
    let points: Vec<(Rational, Rational)> = (0..=(d * (d - 1)) as i64)
        .map(|i| {
            let x0 = int(i);
            let r = sylvester(&specialize_x(h, &x0), d, &specialize_x(&hy, &x0), d - 1);
            (x0, r)
        })
        .collect();
    UPoly::interpolate(&points)
}

/// Whether `h` (two variables, nonconstant) has no repeated factor.
pub fn is_squarefree(h: &Polynomial) -> bool {
    let lambda = monic_shear(h);
    !discriminant_in_x(&shear(h, &lambda)).is_zero()
}

enum Step<T> {
    Done(T),
    Split(UPoly, UPoly),
}

/// Polynomials in `y` with coefficients in `Q[x]/(q)`.
struct Residue<'a> {
    q: &'a UPoly,
}

impl Residue<'_> {
    fn reduce(&self, p: &[UPoly]) -> Vec<UPoly> {
        let mut out: Vec<UPoly> = p.iter().map(|c| c.rem(self.q)).collect();
        while out.last().is_some_and(UPoly::is_zero) {
            out.pop();
        }
        out
    }

    fn inverse(&self, c: &UPoly) -> Step<UPoly> {
        let g = UPoly::gcd(c, self.q);
        if g.is_constant() {
            Step::Done(UPoly::inverse_mod(c, self.q).expect("coprime"))
        } else {
            Step::Split(g.clone(), self.q.exact_div(&g))
        }
    }

    fn rem(&self, a: &[UPoly], b: &[UPoly]) -> Step<Vec<UPoly>> {
        let inv = match self.inverse(b.last().expect("nonzero divisor")) {
            Step::Done(i) => i,
            Step::Split(u, v) => return Step::Split(u, v),
        };
        let mut r = a.to_vec();
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let f = r.last().unwrap().mul(&inv).rem(self.q);
            for (i, c) in b.iter().enumerate() {
                r[shift + i] = r[shift + i].sub(&f.mul(c)).rem(self.q);
            }
            r = self.reduce(&r);
        }
        Step::Done(r)
    }

    fn gcd(&self, a: &[UPoly], b: &[UPoly]) -> Step<Vec<UPoly>> {
        let (mut a, mut b) = (self.reduce(a), self.reduce(b));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = match self.rem(&a, &b) {
                Step::Done(r) => r,
                Step::Split(u, v) => return Step::Split(u, v),
            };
            a = b;
            b = r;
        }
        Step::Done(a)
    }
}

/// A factor of `q` over whose roots all `polys` share a root in `y`.
fn common_root_factor(q: &UPoly, polys: &[Vec<UPoly>]) -> Option<UPoly> {
    if q.is_constant() {
        return None;
    }
    let ring = Residue { q };
    let mut g = ring.reduce(&polys[0]);
    for p in &polys[1..] {
        match ring.gcd(&g, p) {
            Step::Done(next) => g = next,
            Step::Split(u, v) => {
                return common_root_factor(&u.monic(), polys).or_else(|| common_root_factor(&v.monic(), polys));
            }
        }
    }
    if let Some(Step::Split(u, v)) = g.last().map(|lc| ring.inverse(lc)) {
        return common_root_factor(&u.monic(), polys).or_else(|| common_root_factor(&v.monic(), polys));
    }
    (g.len() >= 2).then(|| q.clone())
}

/// All singular points of the affine curve `h = 0`, sorted.
///
/// Errors if a singular point has a non-rational coordinate.
pub fn singular_points(h: &Polynomial) -> Result<Vec<RationalPoint>> {
    let d = h.degree().unwrap_or(0);
    if d < 2 {
        return Ok(vec![]);
    }
    let lambda = monic_shear(h);
    let g = shear(h, &lambda);
    // the first coordinate of g is x - lambda*y
    let coordinate = (&Polynomial::var(2, 0) - &Polynomial::var(2, 1).scale(&lambda)).render(&default_names(2));
    let (gx, gy) = (g.partial_derivative(0), g.partial_derivative(1));
    let disc = discriminant_in_x(&g);
    if disc.is_zero() {
        return Err(Error::NotSquarefree(h.to_string()));
    }

    let mut points = Vec::new();
    let mut rational_part = UPoly::constant(int(1));
    for (x0, _) in disc.rational_roots() {
        rational_part = rational_part.mul(&UPoly::linear_root(&x0));
        let common = UPoly::gcd(
            &UPoly::gcd(&specialize_x(&g, &x0), &specialize_x(&gx, &x0)),
            &specialize_x(&gy, &x0),
        );
        let mut remaining = common.clone();
        for (y0, m) in common.rational_roots() {
            for _ in 0..m {
                remaining = remaining.exact_div(&UPoly::linear_root(&y0));
            }
            points.push(RationalPoint::new(vec![&x0 + &lambda * &y0, y0]));
        }
        if !remaining.is_constant() {
            return Err(Error::NonRationalSingularPoint {
                coordinate: format!("y at {coordinate} = {x0}"),
                factor: remaining.to_string(),
            });
        }
    }

    let irrational = disc.squarefree_part().exact_div(&rational_part.monic());
    let polys: Vec<Vec<UPoly>> = [&g, &gx, &gy].iter().map(|p| coefficients_in_y(p)).collect();
    if let Some(factor) = common_root_factor(&irrational.monic(), &polys) {
        return Err(Error::NonRationalSingularPoint { coordinate, factor: factor.to_string() });
    }
    points.sort();
    Ok(points)
}
