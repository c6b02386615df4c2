use std::fmt;

use super::field::{Fq, FqElem};
use super::LinAlgError;

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix {
    field: Fq,
    rows: usize,
    cols: usize,
    data: Vec<FqElem>,
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Output of [`FqMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FqMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl FqMatrix {
    pub fn zeros(field: &Fq, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Fq, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(field: &Fq, n: usize, c: FqElem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_vec(field: &Fq, rows: usize, cols: usize, data: Vec<FqElem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        let q = field.order();
        assert!(data.iter().all(|&x| x < q), "entry outside the field");
        FqMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows of field-element encodings.
    pub fn from_rows(field: &Fq, rows: &[Vec<FqElem>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Self::from_vec(field, r, c, data)
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: &Fq, rows: usize, columns: &[Vec<FqElem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &x) in col.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    pub fn field(&self) -> &Fq {
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

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FqElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FqElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FqElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FqElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<FqElem>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn data(&self) -> &[FqElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        let oc = other.cols;
        for i in 0..self.rows {
            let orow = &mut out.data[i * oc..(i + 1) * oc];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[k * oc..(k + 1) * oc];
                axpy(f, orow, brow, a);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FqElem]) -> Vec<FqElem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut acc = 0;
                for (a, b) in row.iter().zip(v) {
                    if *a != 0 && *b != 0 {
                        acc = f.add(acc, f.mul(*a, *b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: FqElem) -> FqMatrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FqMatrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &FqMatrix, c: FqElem) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        let f = self.field.clone();
        axpy(&f, &mut self.data, &other.data, c);
    }

    pub fn pow(&self, mut k: u64) -> FqMatrix {
        assert!(self.is_square());
        let mut result = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Kronecker product; row index `i * other.rows + k`.
    pub fn kron(&self, other: &FqMatrix) -> FqMatrix {
        let f = &self.field;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(f, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    let base = (i * other.rows + k) * cols + j * other.cols;
                    for l in 0..other.cols {
                        out.data[base + l] = f.mul(a, other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(blocks: &[&FqMatrix]) -> FqMatrix {
        let f = blocks[0].field.clone();
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(&f, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn hstack(blocks: &[&FqMatrix]) -> FqMatrix {
        let f = blocks[0].field.clone();
        let rows = blocks[0].rows;
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(&f, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            out.paste(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&FqMatrix]) -> FqMatrix {
        let f = blocks[0].field.clone();
        let cols = blocks[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        FqMatrix {
            field: f,
            rows,
            cols,
            data,
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &FqMatrix) {
        for r in 0..block.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + block.cols].copy_from_slice(block.row(r));
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FqMatrix {
        let mut out = Self::zeros(&self.field, rows, cols);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> FqMatrix {
        let mut out = Self::zeros(&self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.data[r * self.cols + c];
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> FqMatrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        FqMatrix {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form together with pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { matrix: m, pivots }
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                for j in c..cols {
                    let x = self.data[r * cols + j];
                    self.data[r * cols + j] = f.mul(x, inv);
                }
            }
            let (before, rest) = self.data.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let row = if i < r {
                    &mut before[i * cols..(i + 1) * cols]
                } else {
                    let k = i - r - 1;
                    &mut after[k * cols..(k + 1) * cols]
                };
                let x = row[c];
                if x != 0 {
                    axpy(&f, &mut row[c..], &prow[c..], f.neg(x));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Columns form a basis of the right null space.
    pub fn kernel_basis(&self) -> FqMatrix {
        let Rref { matrix, pivots } = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let x = matrix.get(i, fc);
                if x != 0 {
                    k.set(pc, j, f.neg(x));
                }
            }
        }
        k
    }

    /// Some `X` with `self · X = rhs`.
    pub fn solve(&self, rhs: &FqMatrix) -> Result<FqMatrix, LinAlgError> {
        assert_eq!(self.rows, rhs.rows, "shape mismatch in solve");
        let aug = FqMatrix::hstack(&[self, rhs]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(LinAlgError::NoSolution);
        }
        let mut x = Self::zeros(&self.field, self.cols, rhs.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, matrix.get(i, self.cols + j));
            }
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Option<FqMatrix> {
        if !self.is_square() {
            return None;
        }
        let id = Self::identity(&self.field, self.rows);
        let aug = FqMatrix::hstack(&[self, &id]);
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < self.rows || pivots[self.rows - 1] >= self.cols {
            return None;
        }
        Some(matrix.submatrix(0, self.cols, self.rows, self.cols))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// An independent set of columns spanning the same space, in rref order.
    pub fn column_space_basis(&self) -> FqMatrix {
        let r = self.transpose().rref();
        r.matrix.submatrix(0, 0, r.rank(), self.rows).transpose()
    }

    /// Extends the independent columns of `self` to a basis of the ambient
    /// space by appending standard basis vectors.
    pub fn extend_to_basis(&self) -> FqMatrix {
        let n = self.rows;
        let pivots = self.transpose().rref().pivots;
        let f = &self.field;
        let missing: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let mut extra = Self::zeros(f, n, missing.len());
        for (j, &i) in missing.iter().enumerate() {
            extra.set(i, j, 1);
        }
        FqMatrix::hstack(&[self, &extra])
    }

    /// Characteristic polynomial (coefficients constant → leading) via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<FqElem> {
        assert!(self.is_square());
        let f = self.field.clone();
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h.get(i, m - 1) != 0) else {
                continue;
            };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t = h.get(m, m - 1);
            let tinv = f.inv(t);
            for j in (m + 1)..n {
                let u = f.mul(h.get(j, m - 1), tinv);
                if u == 0 {
                    continue;
                }
                // row_j -= u * row_m
                for c in 0..n {
                    let v = f.sub(h.get(j, c), f.mul(u, h.get(m, c)));
                    h.set(j, c, v);
                }
                // col_m += u * col_j
                for r in 0..n {
                    let v = f.add(h.get(r, m), f.mul(u, h.get(r, j)));
                    h.set(r, m, v);
                }
            }
        }
        let mut polys: Vec<Vec<FqElem>> = vec![vec![1]];
        for m in 1..=n {
            // (x - h_{m-1,m-1}) p_{m-1}
            let prev = &polys[m - 1];
            let mut pm = vec![0; m + 1];
            let d = h.get(m - 1, m - 1);
            for (k, &c) in prev.iter().enumerate() {
                pm[k + 1] = f.add(pm[k + 1], c);
                pm[k] = f.sub(pm[k], f.mul(d, c));
            }
            let mut t = 1;
            for i in 1..m {
                t = f.mul(t, h.get(m - i, m - i - 1));
                let coef = f.mul(t, h.get(m - i - 1, m - 1));
                if coef == 0 {
                    continue;
                }
                for (k, &c) in polys[m - i - 1].iter().enumerate() {
                    pm[k] = f.sub(pm[k], f.mul(coef, c));
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    /// Evaluates a polynomial (constant term first) at this square matrix.
    pub fn eval_poly(&self, poly: &[FqElem]) -> FqMatrix {
        let f = &self.field;
        let n = self.rows;
        let mut acc = Self::zeros(f, n, n);
        for &c in poly.iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = f.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Flattened entries as a single row vector (row-major).
    pub fn flatten(&self) -> Vec<FqElem> {
        self.data.clone()
    }
}

/// `dst += c * src`, elementwise.
#[inline]
pub(crate) fn axpy(f: &Fq, dst: &mut [FqElem], src: &[FqElem], c: FqElem) {
    if c == 0 {
        return;
    }
    if f.characteristic() == 2 && c == 1 {
        for (d, &s) in dst.iter_mut().zip(src) {
            *d ^= s;
        }
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        if s != 0 {
            *d = f.add(*d, f.mul(c, s));
        }
    }
}
