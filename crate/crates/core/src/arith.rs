//! Exact rational scalars, dense rational matrices, and integer lattice kernels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p"` or `"p/q"` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Build from rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn scale(&self, s: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, other: &RatMatrix) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn mul(&self, other: &RatMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Commutator `self * other - other * self`.
    pub fn commutator(&self, other: &RatMatrix) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let e = &self[(r, c)];
                    if r == c {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in col..m.cols {
                        if !m[(row, c)].is_zero() {
                            let v = &m[(row, c)] * &factor;
                            m[(r, c)] -= v;
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn determinant(&self) -> Rational {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Rational::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = &m[(r, col)] / &pivot;
                for c in col..n {
                    let v = &m[(col, c)] * &factor;
                    m[(r, c)] -= v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Rational::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// Coefficients `[1, c1, ..., cn]` of `det(I - t M)` as a polynomial in `t`.
    pub fn reversed_charpoly(&self) -> Vec<Rational> {
        // Faddeev-LeVerrier: char poly lambda^n + c1 lambda^{n-1} + ... + cn.
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![Rational::one()];
        let mut aux = RatMatrix::identity(n);
        for k in 1..=n {
            let am = self.mul(&aux);
            let trace: Rational = (0..n).map(|i| am[(i, i)].clone()).sum();
            let ck = -trace / rat(k as i64);
            aux = am.add(&RatMatrix::identity(n).scale(&ck));
            coeffs.push(ck);
        }
        coeffs
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.entries[r * self.cols + c]
    }
}

/// Basis of the right kernel of `m`, one vector per free column of its RREF.
pub fn rat_kernel(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (red, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols()];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -red[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `m x = b`, or `None` when the system is inconsistent.
pub fn rat_solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(b.len(), m.rows(), "right-hand side length must equal row count");
    let mut aug = RatMatrix::zeros(m.rows(), m.cols() + 1);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            aug[(r, c)] = m[(r, c)].clone();
        }
        aug[(r, m.cols())] = b[r].clone();
    }
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = red[(row, m.cols())].clone();
    }
    Some(x)
}

/// Basis of a sublattice of `Z^ambient`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntLatticeBasis {
    pub ambient: usize,
    pub basis: Vec<Vec<BigInt>>,
}

impl IntLatticeBasis {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Express `v` in the basis, if `v` lies in the rational span.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<Rational>> {
        let m = RatMatrix::from_rows(
            (0..self.ambient)
                .map(|i| {
                    self.basis
                        .iter()
                        .map(|b| Rational::from_integer(b[i].clone()))
                        .collect()
                })
                .collect(),
        );
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        let rhs: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
        rat_solve(&m, &rhs)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v)
            .is_some_and(|c| c.iter().all(|q| q.denom().is_one()))
    }
}

/// Lattice basis of `{u in Z^cols : m u = 0}`.
///
/// Unimodular row reduction of `[m^T | I]`: the identity parts of the rows whose
/// `m^T` part vanishes span the integer kernel, and the basis is saturated.
pub fn int_kernel(m: &[Vec<BigInt>], cols: usize) -> IntLatticeBasis {
    let r = m.len();
    assert!(m.iter().all(|row| row.len() == cols), "ragged integer matrix");
    let mut rows: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..r).map(|k| m[k][i].clone()).collect();
            row.extend((0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let mut top = 0;
    for col in 0..r {
        loop {
            // Smallest nonzero absolute value among remaining rows; first one on ties.
            let pivot = (top..cols)
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()).then(a.cmp(&b)));
            let Some(p) = pivot else { break };
            rows.swap(top, p);
            let mut done = true;
            for i in top + 1..cols {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[top][col]);
                let pivot_row = rows[top].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                top += 1;
                break;
            }
        }
        if top == cols {
            break;
        }
    }
    let mut basis: Vec<Vec<BigInt>> = rows[top..]
        .iter()
        .filter(|row| row[..r].iter().all(Zero::is_zero))
        .map(|row| row[r..].to_vec())
        .collect();
    for v in &mut basis {
        // sign normalization: first nonzero entry positive
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
        }
    }
    IntLatticeBasis { ambient: cols, basis }
}

pub fn int_kernel_i64(m: &[Vec<i64>], cols: usize) -> IntLatticeBasis {
    let big: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    int_kernel(&big, cols)
}

/// Sparse row over the rationals, entries sorted by column.
pub type SparseRow = Vec<(usize, Rational)>;

/// Incremental row-echelon accumulator for large sparse systems.
///
/// Rows are reduced on insertion; each stored row has its leading entry equal to one.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    ncols: usize,
    // pivot column -> row
    rows: std::collections::BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon {
            ncols,
            rows: Default::default(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce `row` against the stored pivots; returns the (possibly zero) remainder.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut idx = 0;
        while idx < row.len() {
            let (col, coeff) = row[idx].clone();
            match self.rows.get(&col) {
                Some(pivot_row) => {
                    row = axpy_sparse(&row, &(-coeff), pivot_row);
                    // row[idx] vanished; entries before idx are untouched
                }
                None => idx += 1,
            }
        }
        row
    }

    /// Insert a row; returns true when it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        let Some((lead, lc)) = row.first().cloned() else {
            return false;
        };
        let inv = lc.recip();
        for (_, v) in &mut row {
            *v *= &inv;
        }
        self.rows.insert(lead, row);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Back-substitute to reduced form.
    pub fn into_reduced(mut self) -> Vec<(usize, SparseRow)> {
        let keys: Vec<usize> = self.rows.keys().rev().copied().collect();
        for &k in &keys {
            let row = self.rows[&k].clone();
            let mut reduced: SparseRow = vec![row[0].clone()];
            let tail: SparseRow = row[1..].to_vec();
            let mut tail_red = tail;
            let mut i = 0;
            while i < tail_red.len() {
                let (col, coeff) = tail_red[i].clone();
                match self.rows.get(&col) {
                    Some(p) if col != k => {
                        tail_red = axpy_sparse(&tail_red, &(-coeff), p);
                    }
                    _ => i += 1,
                }
            }
            reduced.extend(tail_red);
            self.rows.insert(k, reduced);
        }
        self.rows.into_iter().collect()
    }

    /// Kernel basis of the accumulated row space (vectors `v` with `row . v = 0`).
    pub fn kernel(self) -> Vec<SparseRow> {
        let ncols = self.ncols;
        let reduced = self.into_reduced();
        let pivot_set: std::collections::BTreeSet<usize> = reduced.iter().map(|(p, _)| *p).collect();
        let mut kernel: Vec<SparseRow> = Vec::new();
        let free: Vec<usize> = (0..ncols).filter(|c| !pivot_set.contains(c)).collect();
        let mut by_free: std::collections::BTreeMap<usize, SparseRow> =
            free.iter().map(|&f| (f, vec![(f, Rational::one())])).collect();
        for (p, row) in &reduced {
            for (c, v) in &row[1..] {
                if let Some(vec) = by_free.get_mut(c) {
                    vec.push((*p, -v.clone()));
                }
            }
        }
        for (_, mut v) in by_free {
            v.sort_by_key(|(c, _)| *c);
            kernel.push(v);
        }
        kernel
    }
}

/// `a + s * b` for sorted sparse rows.
pub fn axpy_sparse(a: &SparseRow, s: &Rational, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, s * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + s * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Lowest common denominator of a list of rationals.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_of_difference_row() {
        let k = rat_kernel(&RatMatrix::from_i64(&[vec![1, -1]]));
        assert_eq!(k, vec![vec![rat(1), rat(1)]]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(rat_kernel(&RatMatrix::identity(2)).is_empty());
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = RatMatrix::from_i64(&[vec![1, 2], vec![2, 4]]);
        let k = rat_kernel(&m);
        assert_eq!(k.len(), 1);
        // proportional to (-2, 1)
        assert_eq!(&k[0][0] / &k[0][1], rat(-2));
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn int_kernel_examples() {
        assert_eq!(int_kernel_i64(&[vec![1, -1]], 2).basis, vec![bigs(&[1, 1])]);
        assert_eq!(int_kernel_i64(&[vec![2, -4]], 2).basis, vec![bigs(&[2, 1])]);
        let lat = int_kernel_i64(&[vec![1, 1, -2]], 3);
        assert_eq!(lat.rank(), 2);
        assert!(lat.contains(&bigs(&[2, 0, 1])));
        assert!(lat.contains(&bigs(&[0, 2, 1])));
        assert!(lat.contains(&bigs(&[1, 1, 1])));
    }

    #[test]
    fn solve_examples() {
        let id = RatMatrix::identity(2);
        assert_eq!(rat_solve(&id, &[rat(3), rat(5)]), Some(vec![rat(3), rat(5)]));
        let row = RatMatrix::from_i64(&[vec![1, 1]]);
        let x = rat_solve(&row, &[rat(2)]).unwrap();
        assert_eq!(row.mul_vec(&x), vec![rat(2)]);
        let col = RatMatrix::from_i64(&[vec![1], vec![1]]);
        assert_eq!(rat_solve(&col, &[rat(1), rat(2)]), None);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = RatMatrix::from_i64(&[vec![0, -1], vec![1, -1]]);
        assert_eq!(m.determinant(), rat(1));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(RatMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn reversed_charpoly_of_order_three_rotation() {
        // det(I - tM) for [[0,-1],[1,-1]] is 1 + t + t^2
        let m = RatMatrix::from_i64(&[vec![0, -1], vec![1, -1]]);
        assert_eq!(m.reversed_charpoly(), vec![rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn sparse_kernel_matches_dense() {
        let m = RatMatrix::from_i64(&[vec![1, 2, 0, -1], vec![2, 4, 1, 0], vec![3, 6, 1, -1]]);
        let mut ech = SparseEchelon::new(4);
        for r in 0..m.rows() {
            let row: SparseRow = m
                .row(r)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect();
            ech.insert(row);
        }
        assert_eq!(ech.rank(), 2);
        let k = ech.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            let mut dense = vec![Rational::zero(); 4];
            for (c, x) in v {
                dense[*c] = x.clone();
            }
            assert!(m.mul_vec(&dense).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("-4"), Some(rat(-4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&ratio(-3, 9)), "-1/3");
    }

    /// Rank by fraction-free (Bareiss) elimination on integer rows.
    fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<BigInt>> = rows.iter().map(|r| bigs(r)).collect();
        let cols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(rank, p);
            for i in rank + 1..a.len() {
                for j in c + 1..cols {
                    a[i][j] = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[rank][c].clone();
            rank += 1;
        }
        rank
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(rows in small_matrix()) {
            let m = RatMatrix::from_i64(&rows);
            for v in rat_kernel(&m) {
                prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn rank_nullity_against_bareiss(rows in small_matrix()) {
            let m = RatMatrix::from_i64(&rows);
            prop_assert_eq!(m.rank(), bareiss_rank(&rows));
            prop_assert_eq!(m.rank() + rat_kernel(&m).len(), m.cols());
        }

        #[test]
        fn int_kernel_is_saturated(rows in small_matrix()) {
            let cols = rows[0].len();
            let k = int_kernel_i64(&rows, cols);
            let m = RatMatrix::from_i64(&rows);
            prop_assert_eq!(k.rank(), cols - m.rank());
            for p in [2i64, 3, 5, 7] {
                let total = (p as usize).pow(k.rank() as u32);
                for code in 1..total {
                    let mut c = code;
                    let mut v = vec![BigInt::zero(); cols];
                    for b in &k.basis {
                        let coeff = BigInt::from((c % p as usize) as i64);
                        c /= p as usize;
                        for (x, y) in v.iter_mut().zip(b) {
                            *x += &coeff * y;
                        }
                    }
                    let divisible = v.iter().all(|x| (x % BigInt::from(p)).is_zero());
                    prop_assert!(!divisible, "combination {code} divisible by {p}");
                }
            }
        }
    }
}
