//! Exact sparse Gaussian elimination over a [`Field`].
//!
//! Rows are sorted `(column, value)` lists. Pivots are chosen as the first
//! nonzero column, so the pivot set of an [`Echelon`] is the lexicographically
//! first column basis for the column order the caller picked.

use crate::scalar::Field;
use std::collections::BTreeMap;

pub type SparseRow<F> = Vec<(usize, F)>;

/// `a - s*b` for sorted sparse rows.
pub fn axpy<F: Field>(a: &[(usize, F)], s: &F, b: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&s.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_row<F: Field>(r: &[(usize, F)], s: &F) -> SparseRow<F> {
    r.iter().map(|(c, v)| (*c, v.mul(s))).collect()
}

/// Sorts and merges a row given in arbitrary order.
pub fn normalize_row<F: Field>(mut r: Vec<(usize, F)>) -> SparseRow<F> {
    r.sort_by_key(|e| e.0);
    let mut out: SparseRow<F> = Vec::with_capacity(r.len());
    for (c, v) in r {
        if let Some(last) = out.last_mut() {
            if last.0 == c {
                last.1 = last.1.add(&v);
                continue;
            }
        }
        out.push((c, v));
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Row echelon basis of a subspace of `F^ncols`.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow<F>)> {
        self.pivots.iter()
    }

    /// Reduces until the leading column is not a pivot.
    fn reduce_leading(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        while let Some((c, v)) = row.first().cloned() {
            match self.pivots.get(&c) {
                Some(p) => row = axpy(&row, &v, p),
                None => break,
            }
        }
        row
    }

    /// Fully reduces `row` against the basis; zero iff the row lies in the span.
    pub fn reduce(&self, mut row: SparseRow<F>) -> SparseRow<F> {
        let mut i = 0;
        while i < row.len() {
            let (c, v) = row[i].clone();
            if let Some(p) = self.pivots.get(&c) {
                row = axpy(&row, &v, p);
            } else {
                i += 1;
            }
        }
        row
    }

    pub fn contains(&self, row: SparseRow<F>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Adds a row; returns true if it enlarged the span.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let r = self.reduce_leading(row);
        match r.first() {
            None => false,
            Some((c, v)) => {
                let c = *c;
                let inv = v.inv();
                let r = scale_row(&r, &inv);
                self.pivots.insert(c, r);
                true
            }
        }
    }

    /// Back-substitutes so every pivot column is zero outside its own row.
    pub fn make_reduced(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for c in cols {
            let mut row = self.pivots.remove(&c).unwrap();
            // entries past the leading one may hit later pivots
            let mut i = 1;
            while i < row.len() {
                let (cc, v) = row[i].clone();
                if let Some(p) = self.pivots.get(&cc) {
                    row = axpy(&row, &v, p);
                } else {
                    i += 1;
                }
            }
            self.pivots.insert(c, row);
        }
    }

    /// Basis of `{ v : r . v = 0 for every stored row r }`, one vector per free
    /// column, in increasing order of that column.
    pub fn kernel_basis(&self) -> Vec<SparseRow<F>> {
        let mut red = self.clone();
        red.make_reduced();
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if red.pivots.contains_key(&free) {
                continue;
            }
            let mut v: SparseRow<F> = vec![(free, F::one())];
            for (pc, row) in &red.pivots {
                if let Some((_, a)) = row.iter().find(|e| e.0 == free) {
                    v.push((*pc, a.neg()));
                }
            }
            out.push(normalize_row(v));
        }
        out
    }

    /// Splits the pivots at `split`: rows whose pivot column is `>= split`.
    pub fn rows_from(&self, split: usize) -> Vec<SparseRow<F>> {
        self.pivots.range(split..).map(|(_, r)| r.clone()).collect()
    }

    pub fn count_pivots_below(&self, split: usize) -> usize {
        self.pivots.range(..split).count()
    }
}

/// Rank of a list of sparse rows.
pub fn rank<F: Field>(ncols: usize, rows: impl IntoIterator<Item = SparseRow<F>>) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Dense helper: rank of a small dense matrix.
pub fn dense_rank<F: Field>(m: &[Vec<F>]) -> usize {
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    rank(ncols, m.iter().map(|r| dense_to_sparse(r)))
}

pub fn dense_to_sparse<F: Field>(r: &[F]) -> SparseRow<F> {
    r.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

pub fn sparse_to_dense<F: Field>(r: &[(usize, F)], n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (c, v) in r {
        out[*c] = v.clone();
    }
    out
}

/// Determinant of a small dense matrix by elimination.
pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else { return F::zero() };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        let pv = a[col][col].clone();
        det = det.mul(&pv);
        let inv = pv.inv();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let s = a[r][col].mul(&inv);
            for c in col..n {
                let t = a[r][c].sub(&s.mul(&a[col][c]));
                a[r][c] = t;
            }
        }
    }
    det
}

/// Solves `sum_i c_i * basis_i = target` modulo the span of `modulo`.
/// Returns the coefficients `c` when a solution exists.
pub fn solve_modulo<F: Field>(ncols: usize, basis: &[SparseRow<F>], modulo: &Echelon<F>, target: &SparseRow<F>) -> Option<Vec<F>> {
    let k = basis.len();
    // augmented columns ncols..ncols+k record the combination
    let mut e: Echelon<F> = Echelon::new(ncols + k);
    for r in modulo.rows() {
        e.insert(r.1.clone());
    }
    for (i, b) in basis.iter().enumerate() {
        let mut r = b.clone();
        r.push((ncols + i, F::one()));
        e.insert(r);
    }
    let red = e.reduce(target.clone());
    if red.iter().any(|(c, _)| *c < ncols) {
        return None;
    }
    // target - sum(red_aug) ... red = target - sum a_j rows; rows carry +e_i
    let mut coeffs = vec![F::zero(); k];
    for (c, v) in red {
        coeffs[c - ncols] = v.neg();
    }
    Some(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    fn row(v: &[i64]) -> SparseRow<Rational> {
        dense_to_sparse(&v.iter().map(|&x| rat(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        let mut e = Echelon::new(3);
        for r in rows.clone() {
            e.insert(r);
        }
        assert_eq!(e.rank(), 2);
        let k = e.kernel_basis();
        assert_eq!(k.len(), 1);
        for r in &rows {
            let dot = k[0].iter().fold(rat(0), |acc, (c, v)| {
                acc + v * r.iter().find(|e| e.0 == *c).map(|e| e.1.clone()).unwrap_or(rat(0))
            });
            assert_eq!(dot, rat(0));
        }
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
        assert_eq!(determinant(&m), rat(5));
    }

    #[test]
    fn solve_with_quotient() {
        let mut modulo = Echelon::new(3);
        modulo.insert(row(&[0, 0, 1]));
        let basis = vec![row(&[1, 0, 0]), row(&[1, 1, 0])];
        let c = solve_modulo(3, &basis, &modulo, &row(&[3, 2, 7])).unwrap();
        assert_eq!(c, vec![rat(1), rat(2)]);
        assert!(solve_modulo(3, &basis[..1], &modulo, &row(&[0, 1, 0])).is_none());
    }

    #[test]
    fn gf_p_rank_matches() {
        use crate::scalar::{with_prime, Fp};
        let r = with_prime(7, || {
            let rows: Vec<SparseRow<Fp>> = vec![
                vec![(0, Fp::new(1, 7)), (1, Fp::new(2, 7))],
                vec![(0, Fp::new(3, 7)), (1, Fp::new(6, 7))],
            ];
            rank(2, rows)
        });
        assert_eq!(r, 1);
    }
}
