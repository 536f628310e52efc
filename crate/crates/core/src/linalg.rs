//! Exact sparse row echelon forms over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Sparse vector: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, Rational>;

/// Rows in echelon form keyed by pivot; each pivot is the lowest column of its
/// row and carries coefficient 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

fn axpy(acc: &mut SparseRow, factor: &Rational, row: &SparseRow) {
    for (&c, v) in row {
        let e = acc.entry(c).or_insert_with(Rational::zero);
        *e -= factor * v;
        if e.is_zero() {
            acc.remove(&c);
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow)> {
        self.rows.iter().map(|(&p, r)| (p, r))
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut cursor = 0;
        loop {
            let hit = row
                .range(cursor..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(&c, v)| (c, v.clone()));
            match hit {
                Some((c, v)) => {
                    axpy(&mut row, &v, &self.rows[&c]);
                    cursor = c + 1;
                }
                None => return row,
            }
        }
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Adds `row` to the span; returns the new pivot if it was independent.
    /// The stored row is reduced against earlier rows but earlier rows are not
    /// updated (call [`Echelon::fully_reduce`] for the canonical form).
    pub fn insert(&mut self, row: SparseRow) -> Option<usize> {
        let mut r = self.reduce(row);
        let (&p, lead) = r.iter().next()?;
        let inv = lead.recip();
        if !inv.is_one() {
            for v in r.values_mut() {
                *v *= &inv;
            }
        }
        self.rows.insert(p, r);
        Some(p)
    }

    /// Brings the rows to reduced echelon form: every pivot column is zero
    /// outside its own row. This form is unique for a given span.
    pub fn fully_reduce(&mut self) {
        let pivots: Vec<usize> = self.rows.keys().rev().copied().collect();
        for p in pivots {
            let row = self.rows.remove(&p).expect("pivot row");
            let mut tail = row.clone();
            tail.remove(&p);
            let mut reduced = self.reduce_above(tail, p);
            reduced.insert(p, Rational::one());
            self.rows.insert(p, reduced);
        }
    }

    // eliminates pivots greater than `p`, which are already fully reduced
    fn reduce_above(&self, mut row: SparseRow, p: usize) -> SparseRow {
        let hits: Vec<usize> = self.rows.range(p + 1..).map(|(&c, _)| c).collect();
        for c in hits {
            if let Some(v) = row.get(&c).cloned() {
                axpy(&mut row, &v, &self.rows[&c]);
            }
        }
        row
    }

    /// Basis of `{x : row · x = 0 for all rows}` in `ncols` unknowns, one vector
    /// per non-pivot column. Requires the reduced form.
    pub fn nullspace(&self, ncols: usize) -> Vec<SparseRow> {
        let mut out = Vec::new();
        for f in (0..ncols).filter(|c| !self.rows.contains_key(c)) {
            let mut v = SparseRow::new();
            v.insert(f, Rational::one());
            for (&p, row) in &self.rows {
                if let Some(a) = row.get(&f) {
                    v.insert(p, -a.clone());
                }
            }
            out.push(v);
        }
        out
    }
}

/// Rank of a list of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Determinant of a square dense matrix by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let lead = m[col][col].clone();
        det *= &lead;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &lead;
            let (top, bottom) = m.split_at_mut(r);
            for (x, p) in bottom[0][col..n].iter_mut().zip(&top[col][col..n]) {
                *x -= &f * p;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, int(v))).collect()
    }

    #[test]
    fn echelon_span_and_canonical_form() {
        let mut a = Echelon::new();
        a.insert(row(&[(0, 1), (1, 2)]));
        a.insert(row(&[(1, 1), (2, 1)]));
        assert_eq!(a.insert(row(&[(0, 1), (1, 3), (2, 1)])), None);
        a.fully_reduce();
        let mut b = Echelon::new();
        b.insert(row(&[(1, 2), (2, 2)]));
        b.insert(row(&[(0, 3), (2, -6)]));
        b.fully_reduce();
        assert_eq!(a, b);
        assert!(a.contains(&row(&[(0, 1), (2, -2)])));
        assert!(!a.contains(&row(&[(2, 1)])));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let mut e = Echelon::new();
        e.insert(row(&[(0, 1), (2, 1), (3, 2)]));
        e.insert(row(&[(1, 1), (3, -1)]));
        e.fully_reduce();
        let ns = e.nullspace(4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for (_, r) in e.rows() {
                let dot: Rational = r.iter().map(|(c, a)| a * v.get(c).cloned().unwrap_or_default()).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn determinants() {
        let m = vec![vec![int(0), int(2)], vec![int(3), int(4)]];
        assert_eq!(determinant(m), int(-6));
        let s = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(s), int(0));
    }
}
