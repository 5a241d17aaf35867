//! Dense matrices over a [`FiniteField`] and exact Gaussian elimination.
//!
//! Vectors are row vectors and matrices act on the right (`v * M`), which is
//! the natural convention for right modules. [`Matrix::nullspace`] and
//! [`Matrix::solve`] follow the usual column convention `M x = 0`, `A x = b`;
//! [`Matrix::left_nullspace`] gives `v M = 0`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Arith, FiniteField, Scalar};

/// `dst += c * src`, entrywise.
pub fn axpy(field: &FiniteField, dst: &mut [Scalar], c: Scalar, src: &[Scalar]) {
    debug_assert_eq!(dst.len(), src.len());
    if c == 0 {
        return;
    }
    match field.arith() {
        Arith::Prime(2) => {
            for (d, s) in dst.iter_mut().zip(src) {
                *d ^= *s;
            }
        }
        Arith::Prime(3) => axpy_small::<3>(dst, c, src),
        Arith::Prime(5) => axpy_small::<5>(dst, c, src),
        Arith::Prime(7) => axpy_small::<7>(dst, c, src),
        Arith::Prime(p) => {
            let (c, p) = (u64::from(c), u64::from(p));
            for (d, s) in dst.iter_mut().zip(src) {
                *d = ((u64::from(*d) + c * u64::from(*s)) % p) as Scalar;
            }
        }
        Arith::Table { q, add, mul } => {
            let row = &mul[c as usize * q..(c as usize + 1) * q];
            for (d, s) in dst.iter_mut().zip(src) {
                *d = add[*d as usize * q + row[*s as usize] as usize];
            }
        }
    }
}

#[inline(always)]
fn axpy_small<const P: u32>(dst: &mut [Scalar], c: Scalar, src: &[Scalar]) {
    let c = u32::from(c);
    for (d, s) in dst.iter_mut().zip(src) {
        *d = ((u32::from(*d) + c * u32::from(*s)) % P) as Scalar;
    }
}

pub(crate) fn scale_in_place(field: &FiniteField, v: &mut [Scalar], c: Scalar) {
    if c == 1 {
        return;
    }
    for x in v.iter_mut() {
        *x = field.mul(*x, c);
    }
}

/// `acc = sum_j a[j] * rows[j]` for a dense coefficient vector.
fn combine_rows(field: &FiniteField, coeffs: &[Scalar], m: &Matrix, out: &mut [Scalar]) {
    match field.arith() {
        Arith::Prime(p) if u64::from(p - 1).pow(2) * (m.rows as u64 + 1) < u64::from(u32::MAX) => {
            let mut acc = vec![0u32; m.cols];
            for (j, &a) in coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = u32::from(a);
                for (x, &b) in acc.iter_mut().zip(m.row(j)) {
                    *x += a * u32::from(b);
                }
            }
            for (o, x) in out.iter_mut().zip(acc) {
                *o = (x % p) as Scalar;
            }
        }
        Arith::Prime(p) => {
            let mut acc = vec![0u64; m.cols];
            for (j, &a) in coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = u64::from(a);
                for (x, &b) in acc.iter_mut().zip(m.row(j)) {
                    *x += a * u64::from(b);
                }
            }
            for (o, x) in out.iter_mut().zip(acc) {
                *o = (x % u64::from(p)) as Scalar;
            }
        }
        Arith::Table { .. } => {
            out.iter_mut().for_each(|x| *x = 0);
            for (j, &a) in coeffs.iter().enumerate() {
                axpy(field, out, a, m.row(j));
            }
        }
    }
}

/// A dense matrix over a finite field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{} {}", self.field, self.rows, self.cols, self.to_literal())
    }
}

/// Result of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl Matrix {
    pub fn zero(field: &FiniteField, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &FiniteField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &FiniteField, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|&x| u32::from(x) >= field.order()) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    /// Build from rows of encoded scalars; all rows must have length `cols`.
    pub fn from_rows(field: &FiniteField, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!("row of length {} in a matrix with {cols} columns", r.len())));
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    /// Convenience constructor reducing integers into the prime subfield.
    pub fn from_ints(field: &FiniteField, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().flat_map(|r| r.iter().map(|&x| field.from_int(x))).collect();
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn from_raw(field: &FiniteField, rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// A permutation matrix sending basis vector `i` to `images[i]` (`e_i * P = e_{images[i]}`).
    pub fn permutation(field: &FiniteField, images: &[usize]) -> Self {
        let n = images.len();
        let mut m = Self::zero(field, n, n);
        for (i, &j) in images.iter().enumerate() {
            m.data[i * n + j] = 1;
        }
        m
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
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

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Scalar] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Scalar> {
        self.data
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u16::from(i == j)))
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("add".into()));
        }
        let mut out = self.clone();
        axpy(&self.field, &mut out.data, 1, &other.data);
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("sub".into()));
        }
        let mut out = self.clone();
        axpy(&self.field, &mut out.data, self.field.neg(1), &other.data);
        Ok(out)
    }

    pub fn scale(&self, c: Scalar) -> Matrix {
        let mut out = self.clone();
        scale_in_place(&self.field, &mut out.data, c);
        out
    }

    /// `self += c * other` (same shape).
    pub fn add_scaled(&mut self, c: Scalar, other: &Matrix) {
        debug_assert_eq!(self.data.len(), other.data.len());
        axpy(&self.field, &mut self.data, c, &other.data);
    }

    fn nnz(&self) -> usize {
        self.data.iter().filter(|&&x| x != 0).count()
    }

    /// Matrix product. Sparse right operands (e.g. permutation matrices) take
    /// a cheaper path.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(&self.field, self.rows, other.cols);
        if other.rows > 0 && other.nnz() <= 2 * other.rows {
            let sparse: Vec<Vec<(usize, Scalar)>> = (0..other.rows)
                .map(|j| other.row(j).iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect())
                .collect();
            let f = &self.field;
            for i in 0..self.rows {
                for (j, &a) in self.row(i).iter().enumerate() {
                    if a == 0 {
                        continue;
                    }
                    for &(c, b) in &sparse[j] {
                        let idx = i * other.cols + c;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
            return Ok(out);
        }
        let cols = other.cols;
        for i in 0..self.rows {
            let (lo, hi) = (i * cols, (i + 1) * cols);
            combine_rows(&self.field, &self.data[i * self.cols..(i + 1) * self.cols], other, &mut out.data[lo..hi]);
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "vector length must equal row count");
        let mut out = vec![0; self.cols];
        combine_rows(&self.field, v, self, &mut out);
        out
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        let f = &self.field;
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect()
    }

    pub fn pow(&self, mut k: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            base = base.mul(&base).expect("square");
            k >>= 1;
        }
        acc
    }

    /// Kronecker product; `(u ⊗ v) * (A ⊗ B) = (u A) ⊗ (v B)`.
    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zero(&self.field, r, c);
        let f = &self.field;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * c + j * other.cols + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn stack(field: &FiniteField, cols: usize, parts: &[&Matrix]) -> Result<Matrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.cols != cols {
                return Err(Error::ShapeMismatch("stack".into()));
            }
            if p.field != *field {
                return Err(Error::FieldMismatch);
            }
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn block_diag(field: &FiniteField, blocks: &[&Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zero(field, r, c);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                out.data[(r0 + i) * c + c0..(r0 + i) * c + c0 + b.cols].copy_from_slice(b.row(i));
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix { field: self.field.clone(), rows: idx.len(), cols: self.cols, data }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in r0..r0 + rows {
            data.extend_from_slice(&self.row(i)[c0..c0 + cols]);
        }
        Matrix { field: self.field.clone(), rows, cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        let (lo, hi) = (a.min(b), a.max(b));
        let (x, y) = self.data.split_at_mut(hi * c);
        x[lo * c..(lo + 1) * c].swap_with_slice(&mut y[..c]);
    }

    /// In-place Gauss-Jordan; returns pivot columns. Columns at or beyond
    /// `col_limit` are never chosen as pivots.
    fn gauss_jordan(&mut self, col_limit: usize) -> Vec<usize> {
        let f = self.field.clone();
        let c = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..col_limit.min(c) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * c + col] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.data[r * c + col]).expect("nonzero pivot");
            scale_in_place(&f, &mut self.data[r * c..(r + 1) * c], inv);
            let pivot_row = self.data[r * c..(r + 1) * c].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let x = self.data[i * c + col];
                if x != 0 {
                    axpy(&f, &mut self.data[i * c..(i + 1) * c], f.neg(x), &pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form; the row space is preserved.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.gauss_jordan(self.cols);
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(&self.field, self.cols);
        for i in 0..self.rows {
            e.insert(self.row(i).to_vec());
        }
        e.rank()
    }

    /// The nonzero rows of the RREF: a canonical basis of the row space.
    pub fn row_space(&self) -> Matrix {
        let r = self.rref();
        r.matrix.submatrix(0, r.rank, 0, self.cols)
    }

    /// Basis of `{ x : M x = 0 }`, one free variable per vector.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(matrix.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Basis of `{ v : v M = 0 }`.
    pub fn left_nullspace(&self) -> Vec<Vec<Scalar>> {
        self.transpose().nullspace()
    }

    /// One solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch("right-hand side length".into()));
        }
        let c = self.cols + 1;
        let mut aug = Matrix::zero(&self.field, self.rows, c);
        for i in 0..self.rows {
            aug.data[i * c..i * c + self.cols].copy_from_slice(self.row(i));
            aug.data[i * c + self.cols] = b[i];
        }
        let pivots = aug.gauss_jordan(self.cols);
        let r = pivots.len();
        if (r..self.rows).any(|i| aug.data[i * c + self.cols] != 0) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.data[i * c + self.cols];
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.gauss_jordan(n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.submatrix(0, n, n, n))
    }

    /// Parse a literal like `[1,2;0,1]`. Entries are integer codes of field
    /// elements (plain residues for prime fields).
    pub fn parse_literal(field: &FiniteField, text: &str) -> Result<Matrix> {
        let t = text.trim();
        let body = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("matrix literal `{t}` must be bracketed")))?;
        if body.trim().is_empty() {
            return Ok(Matrix::zero(field, 0, 0));
        }
        let rows: Vec<Vec<Scalar>> = body
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|x| {
                        let v: i64 = x.trim().parse().map_err(|_| Error::Parse(format!("bad matrix entry `{}`", x.trim())))?;
                        if v < 0 || v >= i64::from(field.order()) {
                            return Err(Error::Parse(format!("matrix entry {v} is not an element code of {field}")));
                        }
                        Ok(v as Scalar)
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let cols = rows[0].len();
        Matrix::from_rows(field, cols, &rows)
    }

    pub fn to_literal(&self) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        format!("[{}]", rows.join(";"))
    }
}

/// Incremental semi-echelon basis of a subspace of `F^cols`.
///
/// Every stored row has a pivot entry equal to 1, and later rows are zero in
/// the pivot columns of earlier rows.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FiniteField,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &FiniteField, cols: usize) -> Self {
        Echelon { field: field.clone(), cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Reduce `v` in place; returns true when the remainder is nonzero.
    pub fn reduce(&self, v: &mut [Scalar]) -> bool {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let x = v[p];
            if x != 0 {
                axpy(&self.field, v, self.field.neg(x), row);
            }
        }
        v.iter().any(|&x| x != 0)
    }

    /// Reduce `v`, returning the coefficients `c` with `v = sum c_i rows_i + rest`.
    pub fn reduce_tracking(&self, v: &mut [Scalar]) -> Vec<Scalar> {
        let mut coeffs = vec![0; self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let x = v[p];
            if x != 0 {
                coeffs[i] = x;
                axpy(&self.field, v, self.field.neg(x), row);
            }
        }
        coeffs
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        !self.reduce(&mut w)
    }

    /// Insert `v` if it is outside the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        if !self.reduce(&mut v) {
            return false;
        }
        self.push_reduced(v);
        true
    }

    /// Append an already reduced nonzero vector; returns its pivot column.
    pub fn push_reduced(&mut self, mut v: Vec<Scalar>) -> usize {
        let p = v.iter().position(|&x| x != 0).expect("nonzero vector");
        let inv = self.field.inv(v[p]).expect("nonzero");
        scale_in_place(&self.field, &mut v, inv);
        self.rows.push(v);
        self.pivots.push(p);
        p
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_raw(&self.field, self.rows.len(), self.cols, self.rows.concat())
    }
}

/// A fixed basis (the rows of a matrix) prepared for coordinate extraction.
#[derive(Clone, Debug)]
pub struct SolvedBasis {
    basis: Matrix,
    rref: Matrix,
    pivots: Vec<usize>,
    transform: Matrix,
}

impl SolvedBasis {
    /// `basis` must have linearly independent rows.
    pub fn new(basis: Matrix) -> Result<Self> {
        let (k, n) = (basis.rows, basis.cols);
        let f = basis.field.clone();
        let mut aug = Matrix::zero(&f, k, n + k);
        for i in 0..k {
            aug.data[i * (n + k)..i * (n + k) + n].copy_from_slice(basis.row(i));
            aug.data[i * (n + k) + n + i] = 1;
        }
        let pivots = aug.gauss_jordan(n);
        if pivots.len() < k {
            return Err(Error::ShapeMismatch("basis rows are linearly dependent".into()));
        }
        let rref = aug.submatrix(0, k, 0, n);
        let transform = aug.submatrix(0, k, n, k);
        Ok(SolvedBasis { basis, rref, pivots, transform })
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Coordinates of `v` with respect to the basis, or `None` if `v` is not in the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = &self.basis.field;
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p]).collect();
        let mut rest = v.to_vec();
        for (i, &x) in c.iter().enumerate() {
            axpy(f, &mut rest, f.neg(x), self.rref.row(i));
        }
        if rest.iter().any(|&x| x != 0) {
            return None;
        }
        Some(self.transform.vec_mul(&c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn gf(p: u64) -> FiniteField {
        make_field(p, 1, None).unwrap()
    }

    fn brute_det(f: &FiniteField, m: &Matrix) -> Scalar {
        // Leibniz expansion: only used on tiny matrices.
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0;
        fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == 1 {
                out.push(perm.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, out);
                let j = if k.is_multiple_of(2) { i } else { 0 };
                perm.swap(j, k - 1);
            }
        }
        let mut all = Vec::new();
        heap(n, &mut perm, &mut all);
        for p in all {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let mut term = 1;
            for i in 0..n {
                term = f.mul(term, m.get(i, p[i]));
            }
            total = if inversions % 2 == 0 { f.add(total, term) } else { f.sub(total, term) };
        }
        total
    }

    #[test]
    fn rref_examples() {
        let f = gf(3);
        let r = Matrix::identity(&f, 3).rref();
        assert_eq!((r.pivots.clone(), r.rank), (vec![0, 1, 2], 3));
        assert!(r.matrix.is_identity());
        let r = Matrix::zero(&f, 2, 4).rref();
        assert_eq!((r.pivots.clone(), r.rank), (vec![], 0));
        let m = Matrix::from_ints(&f, &[&[1, 2], &[2, 1]]);
        assert_eq!(brute_det(&f, &m), 0, "det = 1 - 4 = -3 = 0 mod 3");
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, Matrix::from_ints(&f, &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn nullspace_examples() {
        let f = gf(2);
        assert!(Matrix::identity(&f, 4).nullspace().is_empty());
        assert_eq!(Matrix::zero(&f, 2, 3).nullspace().len(), 3);
        let m = Matrix::from_ints(&f, &[&[1, 1]]);
        // exhaustive over GF(2)^2: only (0,0) and (1,1) are killed
        let killed: Vec<(i64, i64)> = (0..2).flat_map(|a| (0..2).map(move |b| (a, b))).filter(|&(a, b)| (a + b) % 2 == 0).collect();
        assert_eq!(killed, vec![(0, 0), (1, 1)]);
        assert_eq!(m.nullspace(), vec![vec![1, 1]]);
    }

    #[test]
    fn solve_examples() {
        let f = gf(3);
        let b = vec![2, 0, 1];
        assert_eq!(Matrix::identity(&f, 3).solve(&b).unwrap(), Some(b));
        assert_eq!(Matrix::zero(&f, 2, 2).solve(&[1, 0]).unwrap(), None);
        assert_eq!(Matrix::from_ints(&f, &[&[2]]).solve(&[1]).unwrap(), Some(vec![2]));
    }

    #[test]
    fn kronecker_examples() {
        let f = gf(3);
        let k = Matrix::identity(&f, 2).kronecker(&Matrix::identity(&f, 3)).unwrap();
        assert!(k.is_identity() && k.rows() == 6);
        let a = Matrix::from_ints(&f, &[&[1, 2], &[0, 1]]);
        assert!(a.kronecker(&Matrix::zero(&f, 2, 3)).unwrap().is_zero());
        let g4 = make_field(2, 2, None).unwrap();
        assert_eq!(a.kronecker(&Matrix::identity(&g4, 1)), Err(Error::FieldMismatch));
    }

    #[test]
    fn literal_round_trip() {
        let f = gf(3);
        let m = Matrix::parse_literal(&f, "[1,2;0,1]").unwrap();
        assert_eq!(m, Matrix::from_ints(&f, &[&[1, 2], &[0, 1]]));
        assert_eq!(m.to_literal(), "[1,2;0,1]");
        assert!(Matrix::parse_literal(&f, "[1,3]").is_err());
        assert!(Matrix::parse_literal(&f, "[1,2;0]").is_err());
    }

    #[test]
    fn solved_basis_coordinates() {
        let f = gf(5);
        let b = Matrix::from_ints(&f, &[&[1, 2, 0], &[0, 1, 3]]);
        let sb = SolvedBasis::new(b.clone()).unwrap();
        let v = b.vec_mul(&[3, 4]);
        assert_eq!(sb.coords(&v), Some(vec![3, 4]));
        assert_eq!(sb.coords(&[0, 0, 1]), None);
    }

    fn field_strategy() -> impl Strategy<Value = FiniteField> {
        prop_oneof![Just(gf(2)), Just(gf(3)), Just(make_field(2, 2, None).unwrap())]
    }

    fn matrix_strategy() -> impl Strategy<Value = Matrix> {
        (field_strategy(), 0usize..7, 0usize..7).prop_flat_map(|(f, r, c)| {
            let q = f.order() as Scalar;
            proptest::collection::vec(0..q, r * c).prop_map(move |d| Matrix::from_vec(&f, r, c, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in matrix_strategy()) {
            let rank = m.rref().rank;
            prop_assert_eq!(rank, m.rank());
            prop_assert!(rank <= m.rows().min(m.cols()));
            let ns = m.nullspace();
            prop_assert_eq!(rank + ns.len(), m.cols());
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rref_is_idempotent(m in matrix_strategy()) {
            let once = m.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once.clone());
        }

        #[test]
        fn solve_agrees_with_nullspace(m in matrix_strategy(), seed in proptest::collection::vec(0u16..4, 7)) {
            let f = m.field().clone();
            let x0: Vec<Scalar> = seed.iter().take(m.cols()).map(|&s| s % f.order() as Scalar).collect();
            let b = m.mul_vec(&x0);
            let x = m.solve(&b).unwrap().expect("b is in the column space");
            prop_assert_eq!(m.mul_vec(&x), b);
            // x0 - x lies in the nullspace
            let diff: Vec<Scalar> = x0.iter().zip(&x).map(|(&a, &c)| f.sub(a, c)).collect();
            let mut ns = Echelon::new(&f, m.cols());
            for v in m.nullspace() { ns.insert(v); }
            prop_assert!(ns.contains(&diff));
        }

        #[test]
        fn kronecker_rank_is_multiplicative(a in proptest::collection::vec(0u16..3, 9), b in proptest::collection::vec(0u16..3, 9)) {
            let f = gf(3);
            let a = Matrix::from_vec(&f, 3, 3, a).unwrap();
            let b = Matrix::from_vec(&f, 3, 3, b).unwrap();
            let k = a.kronecker(&b).unwrap();
            prop_assert_eq!(k.rank(), a.rank() * b.rank());
            let u = vec![1, 2, 0];
            let v = vec![0, 1, 1];
            let uv = Matrix::from_vec(&f, 1, 3, u.clone()).unwrap().kronecker(&Matrix::from_vec(&f, 1, 3, v.clone()).unwrap()).unwrap();
            let lhs = k.vec_mul(uv.row(0));
            let rhs = Matrix::from_vec(&f, 1, 3, a.vec_mul(&u)).unwrap().kronecker(&Matrix::from_vec(&f, 1, 3, b.vec_mul(&v)).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs.row(0).to_vec());
        }

        #[test]
        fn inverse_round_trip(m in matrix_strategy()) {
            if let Some(inv) = m.inverse() {
                prop_assert!(m.mul(&inv).unwrap().is_identity());
            } else {
                prop_assert!(!m.is_square() || m.rank() < m.rows());
            }
        }
    }
}
