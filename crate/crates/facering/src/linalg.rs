//! Exact linear algebra over any [`Field`]: sparse row reduction with normal forms,
//! ranks, kernels, determinants and a definiteness test for symmetric matrices.

use crate::scalar::{Coeff, Field, Poly, Rational};

/// Minimal ring interface shared by field elements and polynomials, used for
/// division-free determinants.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn radd(&self, o: &Self) -> Self;
    fn rsub(&self, o: &Self) -> Self;
    fn rmul(&self, o: &Self) -> Self;
    fn ris_zero(&self) -> bool;
}

impl<K: Field> Ring for K {
    fn zero_like(&self) -> Self {
        self.zero()
    }
    fn radd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn rsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn rmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn ris_zero(&self) -> bool {
        self.is_zero()
    }
}

impl<C: Coeff> Ring for Poly<C> {
    fn zero_like(&self) -> Self {
        Poly::zero(self.ctx())
    }
    fn radd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn rsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn rmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn ris_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Determinant by cofactor expansion along the first row; no divisions.
pub fn laplace_det<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(n > 0, "empty determinant");
    let cols: Vec<usize> = (0..n).collect();
    laplace_rec(m, 0, &cols)
}

fn laplace_rec<R: Ring>(m: &[Vec<R>], row: usize, cols: &[usize]) -> R {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    if cols.len() == 2 {
        let (a, b) = (cols[0], cols[1]);
        return m[row][a].rmul(&m[row + 1][b]).rsub(&m[row][b].rmul(&m[row + 1][a]));
    }
    let mut acc = m[row][cols[0]].zero_like();
    for (k, &c) in cols.iter().enumerate() {
        let e = &m[row][c];
        if e.ris_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e.rmul(&laplace_rec(m, row + 1, &rest));
        acc = if k % 2 == 0 { acc.radd(&term) } else { acc.rsub(&term) };
    }
    acc
}

/// Determinant by Gaussian elimination.
pub fn det<K: Field>(m: &[Vec<K>]) -> K {
    let n = m.len();
    let mut a: Vec<Vec<K>> = m.to_vec();
    let mut d = a[0][0].one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return d.zero();
        };
        if p != c {
            a.swap(p, c);
            d = d.neg();
        }
        let inv = a[c][c].inv().expect("nonzero pivot");
        d = d.mul(&a[c][c]);
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].mul(&inv);
            for k in c..n {
                let v = a[r][k].sub(&f.mul(&a[c][k]));
                a[r][k] = v;
            }
        }
    }
    d
}

/// A sparse row: `(column, nonzero value)` pairs in increasing column order.
pub type SparseRow<K> = Vec<(usize, K)>;

fn row_value<K: Field>(row: &SparseRow<K>, c: usize) -> Option<&K> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|i| &row[i].1)
}

/// `a - f * b`.
fn axpy<K: Field>(a: &SparseRow<K>, f: &K, b: &SparseRow<K>) -> SparseRow<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = f.mul(&b[j].1).neg();
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.sub(&f.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn row_weight<K: Field>(r: &SparseRow<K>) -> usize {
    r.iter().map(|e| e.1.weight()).sum()
}

/// Reduced row echelon form of a sparse matrix. Column order is significant:
/// pivots are taken as far left as possible.
#[derive(Clone, Debug)]
pub struct Echelon<K: Field> {
    pub ncols: usize,
    /// Rows with leading entry 1 at `pivots[k]`, zero in every other pivot column.
    pub rows: Vec<SparseRow<K>>,
    pub pivots: Vec<usize>,
    pivot_of_col: Vec<Option<usize>>,
}

impl<K: Field> Echelon<K> {
    pub fn new(rows: Vec<SparseRow<K>>, ncols: usize) -> Self {
        let mut pending: Vec<SparseRow<K>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        let mut done: Vec<SparseRow<K>> = Vec::new();
        let mut pivots = Vec::new();
        while !pending.is_empty() {
            let c = pending.iter().map(|r| r[0].0).min().unwrap();
            let (idx, _) = pending
                .iter()
                .enumerate()
                .filter(|(_, r)| r[0].0 == c)
                .min_by_key(|(_, r)| row_weight(r))
                .unwrap();
            let p = pending.swap_remove(idx);
            let inv = p[0].1.inv().expect("nonzero pivot");
            let p: SparseRow<K> = p.into_iter().map(|(k, v)| (k, v.mul(&inv))).collect();
            pending = pending
                .into_iter()
                .filter_map(|r| {
                    let r = if r[0].0 == c { axpy(&r, &r[0].1.clone(), &p) } else { r };
                    (!r.is_empty()).then_some(r)
                })
                .collect();
            pivots.push(c);
            done.push(p);
        }
        for k in (0..done.len()).rev() {
            let pk = done[k].clone();
            let c = pivots[k];
            for r in done[..k].iter_mut() {
                if let Some(f) = row_value(r, c).cloned() {
                    *r = axpy(r, &f, &pk);
                }
            }
        }
        let mut pivot_of_col = vec![None; ncols];
        for (k, &c) in pivots.iter().enumerate() {
            pivot_of_col[c] = Some(k);
        }
        Echelon { ncols, rows: done, pivots, pivot_of_col }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_of_col[c].is_some()
    }

    /// Columns without pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| !self.is_pivot(c)).collect()
    }

    /// Reduces a vector modulo the row space; the result is supported on free columns.
    pub fn reduce(&self, v: &SparseRow<K>) -> SparseRow<K> {
        let mut out = v.clone();
        let mut i = 0;
        while i < out.len() {
            let c = out[i].0;
            if let Some(k) = self.pivot_of_col[c] {
                let f = out[i].1.clone();
                out = axpy(&out, &f, &self.rows[k]);
            } else {
                i += 1;
            }
        }
        out
    }

    /// Normal form of the unit vector at column `c`.
    pub fn reduce_unit(&self, c: usize, one: &K) -> SparseRow<K> {
        match self.pivot_of_col[c] {
            None => vec![(c, one.clone())],
            Some(k) => self.rows[k].iter().skip(1).map(|(j, v)| (*j, v.neg())).collect(),
        }
    }

    /// A basis of the null space `{x : R x = 0}`, one vector per free column.
    pub fn kernel(&self, one: &K) -> Vec<Vec<K>> {
        let zero = one.zero();
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![zero.clone(); self.ncols];
                v[f] = one.clone();
                for (k, row) in self.rows.iter().enumerate() {
                    if let Some(x) = row_value(row, f) {
                        v[self.pivots[k]] = x.neg();
                    }
                }
                v
            })
            .collect()
    }
}

pub fn to_sparse<K: Field>(row: &[K]) -> SparseRow<K> {
    row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.clone())).collect()
}

pub fn rank<K: Field>(rows: &[Vec<K>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    Echelon::new(rows.iter().map(|r| to_sparse(r)).collect(), ncols).rank()
}

pub fn kernel<K: Field>(rows: &[Vec<K>], ncols: usize, one: &K) -> Vec<Vec<K>> {
    Echelon::new(rows.iter().map(|r| to_sparse(r)).collect(), ncols).kernel(one)
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Sign pattern of a symmetric rational matrix, if it is definite.
///
/// Uses symmetric elimination without pivoting: a definite matrix has all
/// leading principal minors nonzero and the pivots share one sign.
pub fn definite_sign(g: &[Vec<Rational>]) -> Option<i32> {
    let n = g.len();
    let mut a = g.to_vec();
    let mut sign = 0;
    for c in 0..n {
        let p = a[c][c].clone();
        let s = p.signum();
        if s == 0 || (sign != 0 && s != sign) {
            return None;
        }
        sign = s;
        let inv = p.inv().unwrap();
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].mul(&inv);
            for k in c..n {
                let v = a[r][k].sub(&f.mul(&a[c][k]));
                a[r][k] = v;
            }
        }
    }
    Some(if n == 0 { 1 } else { sign })
}

/// `LDL^T` pivots (the diagonal of `D`) for a symmetric matrix, when no zero pivot occurs.
pub fn ldl_pivots<K: Field>(g: &[Vec<K>]) -> Option<Vec<K>> {
    let n = g.len();
    let mut a = g.to_vec();
    let mut out = Vec::with_capacity(n);
    for c in 0..n {
        let p = a[c][c].clone();
        let inv = p.inv()?;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].mul(&inv);
            for k in c..n {
                let v = a[r][k].sub(&f.mul(&a[c][k]));
                a[r][k] = v;
            }
        }
        out.push(p);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Int, ModP, QFunc, Var};
    use proptest::prelude::*;

    fn q(v: i64) -> Rational {
        Rational::int(v)
    }

    #[test]
    fn determinants_agree() {
        let m: Vec<Vec<Rational>> = vec![vec![q(2), q(-1), q(0)], vec![q(1), q(3), q(4)], vec![q(5), q(0), q(-2)]];
        assert_eq!(laplace_det(&m), q(-34));
        assert_eq!(det(&m), laplace_det(&m));
        let x = Poly::<Int>::var(Var::free(1), ());
        let y = Poly::<Int>::var(Var::free(2), ());
        let pm = vec![vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]];
        assert_eq!(laplace_det(&pm), x.mul(&x).sub(&y.mul(&y)));
    }

    #[test]
    fn echelon_rank_kernel() {
        let p = 101;
        let e = |v: i64| ModP::new(v, p);
        let rows = vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(6)], vec![e(0), e(1), e(1)]];
        assert_eq!(rank(&rows), 2);
        let ker = kernel(&rows, 3, &e(1));
        assert_eq!(ker.len(), 1);
        for r in &rows {
            let dot = r.iter().zip(&ker[0]).fold(e(0), |acc, (a, b)| acc.add(&a.mul(b)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn normal_forms_respect_relations() {
        // relation x0 - x1 - x2 = 0: column 0 is a pivot, its normal form is x1 + x2
        let one = q(1);
        let ech = Echelon::new(vec![vec![(0, q(1)), (1, q(-1)), (2, q(-1))]], 3);
        assert_eq!(ech.free_columns(), vec![1, 2]);
        assert_eq!(ech.reduce_unit(0, &one), vec![(1, q(1)), (2, q(1))]);
        assert_eq!(ech.reduce_unit(2, &one), vec![(2, q(1))]);
    }

    #[test]
    fn symbolic_rank() {
        let a = QFunc::var(Var::free(1), ());
        let b = QFunc::var(Var::free(2), ());
        let rows = vec![vec![a.clone(), b.clone()], vec![a.mul(&a), a.mul(&b)]];
        assert_eq!(rank(&rows), 1);
        let rows = vec![vec![a.clone(), b.clone()], vec![b.clone(), a.clone()]];
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn definiteness() {
        let g = vec![vec![q(2), q(1)], vec![q(1), q(2)]];
        assert_eq!(definite_sign(&g), Some(1));
        let g = vec![vec![q(-2), q(1)], vec![q(1), q(-2)]];
        assert_eq!(definite_sign(&g), Some(-1));
        let g = vec![vec![q(1), q(2)], vec![q(2), q(1)]];
        assert_eq!(definite_sign(&g), None);
        let g = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(definite_sign(&g), None);
    }

    proptest! {
        #[test]
        fn rank_plus_nullity(entries in proptest::collection::vec(-3i64..4, 20)) {
            let p = 7;
            let rows: Vec<Vec<ModP>> = entries.chunks(5).map(|c| c.iter().map(|&v| ModP::new(v, p)).collect()).collect();
            let ech = Echelon::new(rows.iter().map(|r| to_sparse(r)).collect(), 5);
            let ker = ech.kernel(&ModP::new(1, p));
            prop_assert_eq!(ech.rank() + ker.len(), 5);
            for v in &ker {
                for r in &rows {
                    let dot = r.iter().zip(v).fold(ModP::new(0, p), |acc, (a, b)| acc.add(&a.mul(b)));
                    prop_assert!(dot.is_zero());
                }
            }
            let t = transpose(&rows);
            prop_assert_eq!(rank(&t), ech.rank());
        }

        #[test]
        fn laplace_matches_elimination(entries in proptest::collection::vec(-9i64..10, 16)) {
            let m: Vec<Vec<Rational>> = entries.chunks(4).map(|c| c.iter().map(|&v| Rational::int(v)).collect()).collect();
            prop_assert_eq!(laplace_det(&m), det(&m));
        }
    }
}
