//! Dense exact matrices: multiplication, reduced row echelon form, left kernels
//! and linear solves.
//!
//! Vectors are rows; a module acts on the right, so `v · m` is the image of `v`.

use std::fmt;

use crate::error::LinalgError;
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of [`ExactMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl ExactMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input and foreign scalars.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<ExactMatrix, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::Shape("ragged rows".into()));
            }
            for s in row {
                if !field.contains(&s) {
                    return Err(LinalgError::FieldMismatch(field, s.field()));
                }
                data.push(s);
            }
        }
        Ok(ExactMatrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Rows of rows; `cols` is given so that empty row lists keep their width.
    pub fn from_row_vecs(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> ExactMatrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "row length");
            data.extend(row.iter().cloned());
        }
        ExactMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> ExactMatrix {
        let c = rows.first().map_or(0, |r| r.len());
        let mut m = ExactMatrix::zeros(field, rows.len(), c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.data[i * c + j] = field.from_i64(x);
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Verifies every entry lives in the matrix field.
    pub fn check_field(&self) -> Result<(), LinalgError> {
        match self.data.iter().find(|s| !self.field.contains(s)) {
            Some(s) => Err(LinalgError::FieldMismatch(self.field, s.field())),
            None => Ok(()),
        }
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c].clone();
            }
        }
        t
    }

    /// Matrix product; skips zero entries of the left factor.
    pub fn mul(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.rows, "inner dimensions differ");
        let mut out = ExactMatrix::zeros(self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let brow = &o.data[k * o.cols..(k + 1) * o.cols];
                let orow = &mut out.data[i * o.cols..(i + 1) * o.cols];
                for (x, b) in orow.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *x = x.add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, o: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        if self.field != o.field {
            return Err(LinalgError::FieldMismatch(self.field, o.field));
        }
        Ok(self.mul(o))
    }

    pub fn add(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect();
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, o: &ExactMatrix) -> ExactMatrix {
        self.add(&o.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    /// `self += s * o` in place.
    pub fn add_scaled(&mut self, s: &Scalar, o: &ExactMatrix) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a = a.add(&s.mul(b));
            }
        }
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![self.field.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (x, b) in out.iter_mut().zip(self.row(k)) {
                if !b.is_zero() {
                    *x = x.add(&a.mul(b));
                }
            }
        }
        out
    }

    pub fn vstack(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        ExactMatrix {
            field: self.field,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, o: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.rows, o.rows);
        let mut m = ExactMatrix::zeros(self.field, self.rows, self.cols + o.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[r * m.cols + c] = self.get(r, c).clone();
            }
            for c in 0..o.cols {
                m.data[r * m.cols + self.cols + c] = o.get(r, c).clone();
            }
        }
        m
    }

    /// Block copy of rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                m.data[(r - r0) * m.cols + (c - c0)] = self.get(r, c).clone();
            }
        }
        m
    }

    /// Writes `b` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &ExactMatrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = b.get(r, c).clone();
            }
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> ExactMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend(self.row(r).iter().cloned());
        }
        ExactMatrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                m.data[r * idx.len() + j] = self.get(r, c).clone();
            }
        }
        m
    }

    /// Reduced row echelon form with first-nonzero pivoting in column order.
    ///
    /// Edge cases:
    /// - zero matrices reduce to themselves with no pivots;
    /// - entries from a foreign field are reported, never coerced.
    pub fn rref(&self) -> Result<Rref, LinalgError> {
        self.check_field()?;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rank = pivots.len();
        Ok(Rref {
            reduced: m,
            pivots,
            rank,
        })
    }

    /// In-place Gauss-Jordan elimination; returns pivot columns.
    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(r) = (pr..rows).find(|&r| !self.data[r * cols + c].is_zero()) else {
                continue;
            };
            if r != pr {
                for k in c..cols {
                    self.data.swap(r * cols + k, pr * cols + k);
                }
            }
            let inv = self.data[pr * cols + c].inv();
            if !inv.is_one() {
                for k in c..cols {
                    let x = &self.data[pr * cols + k];
                    if !x.is_zero() {
                        self.data[pr * cols + k] = x.mul(&inv);
                    }
                }
            }
            let (before, rest) = self.data.split_at_mut(pr * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let prow = &prow[c..];
            let nz: Vec<usize> = (0..prow.len()).filter(|&k| !prow[k].is_zero()).collect();
            let eliminate = |row: &mut [Scalar]| {
                let f = row[c].clone();
                if f.is_zero() {
                    return;
                }
                for &k in &nz {
                    row[c + k].sub_mul_assign(&f, &prow[k]);
                }
            };
            for row in before.chunks_mut(cols) {
                eliminate(row);
            }
            for row in after.chunks_mut(cols) {
                eliminate(row);
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the left kernel `{v : v·m = 0}`.
    ///
    /// Each returned vector has a 1 in its own free coordinate and 0 in the
    /// other free coordinates, so the basis is canonical. The count is always
    /// `rows - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        self.kernel().rows.row_vecs()
    }

    /// Left kernel as a [`Basis`] (keys = free coordinates).
    pub fn kernel(&self) -> Basis {
        self.transpose().right_kernel()
    }

    /// Right kernel `{x : m·xᵀ = 0}` as a [`Basis`] of row vectors.
    pub fn right_kernel(&self) -> Basis {
        let mut t = self.clone();
        let pivots = t.rref_in_place();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut out = ExactMatrix::zeros(self.field, free.len(), n);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, self.field.one());
            for (k, &p) in pivots.iter().enumerate() {
                let x = t.get(k, f);
                if !x.is_zero() {
                    out.set(i, p, x.neg());
                }
            }
        }
        Basis {
            rows: out,
            keys: free,
        }
    }

    /// Solves `self · X = b`; `None` when inconsistent.
    pub fn solve(&self, b: &ExactMatrix) -> Result<Option<ExactMatrix>, LinalgError> {
        if self.rows != b.rows {
            return Err(LinalgError::Shape(format!(
                "a has {} rows, b has {}",
                self.rows, b.rows
            )));
        }
        if self.field != b.field {
            return Err(LinalgError::FieldMismatch(self.field, b.field));
        }
        self.check_field()?;
        b.check_field()?;
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = ExactMatrix::zeros(self.field, self.cols, b.cols);
        for (k, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, aug.get(k, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Row space as a [`Basis`] (keys = pivot columns).
    pub fn row_space(&self) -> Basis {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let rows = m.block(0, pivots.len(), 0, m.cols);
        Basis { rows, keys: pivots }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A basis of a subspace whose rows restrict to the identity on `keys`.
///
/// Coordinates of a vector in the span are therefore read off at `keys`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    pub rows: ExactMatrix,
    pub keys: Vec<usize>,
}

impl Basis {
    pub fn empty(field: Field, ambient: usize) -> Basis {
        Basis {
            rows: ExactMatrix::zeros(field, 0, ambient),
            keys: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    pub fn ambient(&self) -> usize {
        self.rows.cols()
    }

    /// Coordinates of `v`, assuming `v` lies in the span.
    pub fn coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.keys.iter().map(|&k| v[k].clone()).collect()
    }

    /// Coordinates of `v`, or `None` when `v` is outside the span.
    pub fn coords_checked(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c = self.coords(v);
        let back = self.rows.vec_mul(&c);
        (back == v).then_some(c)
    }

    /// Coordinates of every row of `m` (rows must lie in the span).
    pub fn coords_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        m.select_cols(&self.keys)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords_checked(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_identity_and_zero() {
        let i = ExactMatrix::identity(q(), 3);
        let r = i.rref().unwrap();
        assert_eq!(r.reduced, i);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
        let z = ExactMatrix::zeros(q(), 2, 4);
        let r = z.rref().unwrap();
        assert_eq!(r.reduced, z);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn rref_hand_example() {
        let m = ExactMatrix::from_i64(q(), &[&[2, 4], &[1, 2]]);
        let r = m.rref().unwrap();
        assert_eq!(r.reduced, ExactMatrix::from_i64(q(), &[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn rref_rejects_mixed_fields() {
        let mut m = ExactMatrix::zeros(q(), 1, 2);
        m.set(0, 1, Field::Prime(5).from_i64(3));
        assert!(matches!(m.rref(), Err(LinalgError::FieldMismatch(..))));
        let rows = vec![vec![q().one(), Field::Prime(5).one()]];
        assert!(ExactMatrix::from_rows(q(), rows).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(ExactMatrix::identity(q(), 4).kernel_basis().is_empty());
        assert_eq!(ExactMatrix::zeros(q(), 2, 3).kernel_basis().len(), 2);
        let k = ExactMatrix::from_i64(q(), &[&[1, 1], &[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(k[0][0].add(&k[0][1]).is_zero());
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn solve_examples() {
        let a = ExactMatrix::from_i64(q(), &[&[1, 2], &[0, 1]]);
        let b = ExactMatrix::from_i64(q(), &[&[1], &[1]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, ExactMatrix::from_i64(q(), &[&[-1], &[1]]));
        let z = ExactMatrix::zeros(q(), 2, 2);
        assert_eq!(z.solve(&b).unwrap(), None);
        let i = ExactMatrix::identity(q(), 2);
        assert_eq!(i.solve(&b).unwrap().unwrap(), b);
        assert!(a.solve(&ExactMatrix::zeros(q(), 3, 1)).is_err());
    }

    #[test]
    fn basis_coordinates() {
        let m = ExactMatrix::from_i64(q(), &[&[1, 2, 3], &[2, 4, 7]]);
        let b = m.row_space();
        assert_eq!(b.dim(), 2);
        let v: Vec<Scalar> = [3, 6, 10].iter().map(|&x| q().from_i64(x)).collect();
        let c = b.coords_checked(&v).unwrap();
        assert_eq!(b.rows.vec_mul(&c), v);
        let w: Vec<Scalar> = [0, 1, 0].iter().map(|&x| q().from_i64(x)).collect();
        assert!(!b.contains(&w));
    }

    #[test]
    fn prime_field_rank_differs_from_rationals() {
        let m = ExactMatrix::from_i64(q(), &[&[1, 1], &[1, -1]]);
        assert_eq!(m.rank(), 2);
        let m2 = ExactMatrix::from_i64(Field::Prime(2), &[&[1, 1], &[1, -1]]);
        assert_eq!(m2.rank(), 1);
    }
}
