//! Dense matrices over an exact [`Field`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Build from row vectors; `cols` is needed for the 0-row case.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { field: field.clone(), rows: nrows, cols, data })
    }

    /// Convenience constructor from small integers (panics on ragged input).
    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, cols, v).expect("ragged integer matrix")
    }

    pub fn column_vector(field: &F, v: Vec<F::Elem>) -> Self {
        let rows = v.len();
        Matrix { field: field.clone(), rows, cols: 1, data: v }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrix product shape")
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape");
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, c)).collect();
        Matrix { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of range");
        Self::from_fn(&self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn set_submatrix(&mut self, r0: usize, c0: usize, m: &Self) {
        assert!(r0 + m.rows <= self.rows && c0 + m.cols <= self.cols, "submatrix out of range");
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j).clone());
            }
        }
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row count");
        Self::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack column count");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn block_diag(field: &F, blocks: &[Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_submatrix(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        self.field.is_one(a)
                    } else {
                        self.field.is_zero(a)
                    }
                })
            })
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|a| !self.field.is_zero(a)).count()
    }

    // Elementary operations, in place.

    /// row `tgt` += `lambda` * row `src`
    pub fn add_row_multiple(&mut self, src: usize, tgt: usize, lambda: &F::Elem) {
        if self.field.is_zero(lambda) {
            return;
        }
        for j in 0..self.cols {
            let v = self.field.mul(lambda, self.get(src, j));
            let idx = tgt * self.cols + j;
            self.data[idx] = self.field.add(&self.data[idx], &v);
        }
    }

    /// column `tgt` += `lambda` * column `src`
    pub fn add_col_multiple(&mut self, src: usize, tgt: usize, lambda: &F::Elem) {
        if self.field.is_zero(lambda) {
            return;
        }
        for i in 0..self.rows {
            let v = self.field.mul(lambda, self.get(i, src));
            let idx = i * self.cols + tgt;
            self.data[idx] = self.field.add(&self.data[idx], &v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &F::Elem) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = self.field.mul(&self.data[idx], c);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &F::Elem) {
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = self.field.mul(&self.data[idx], c);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            m.scale_row(r, &inv);
            for i in 0..m.rows {
                if i != r && !f.is_zero(m.get(i, c)) {
                    let lambda = f.neg(m.get(i, c));
                    m.add_row_multiple(r, i, &lambda);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(&self.field, n));
        let (red, pivots) = aug.rref();
        if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
            return None;
        }
        Some(red.submatrix(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Columns form a basis of the kernel.
    pub fn nullspace(&self) -> Self {
        let f = &self.field;
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(f, self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(red.get(r, fc)));
            }
        }
        out
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, expected {}",
                b.len(),
                self.rows
            )));
        }
        let rhs = Self::column_vector(&self.field, b.to_vec());
        Ok(self.solve_matrix(&rhs)?.map(|x| x.column(0)))
    }

    /// Some `X` with `self * X = b`, if one exists.
    pub fn solve_matrix(&self, b: &Self) -> Result<Option<Self>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, expected {}",
                b.rows, self.rows
            )));
        }
        let f = &self.field;
        let aug = self.hstack(b);
        let (red, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(f, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, red.get(r, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Invertible `S`, `R` and rank `r` with `S * self * R = [[I_r, 0], [0, 0]]`.
    pub fn rank_normal_form(&self) -> (Self, Self, usize) {
        let f = &self.field;
        let mut m = self.clone();
        let mut s = Self::identity(f, self.rows);
        let mut rr = Self::identity(f, self.cols);
        let mut k = 0;
        loop {
            // leftmost nonzero column among the unreduced part, then topmost row
            let found = (k..m.cols).find_map(|c| (k..m.rows).find(|&i| !f.is_zero(m.get(i, c))).map(|i| (i, c)));
            let Some((pi, pc)) = found else { break };
            m.swap_rows(k, pi);
            s.swap_rows(k, pi);
            m.swap_cols(k, pc);
            rr.swap_cols(k, pc);
            let inv = f.inv(m.get(k, k)).expect("nonzero pivot");
            m.scale_row(k, &inv);
            s.scale_row(k, &inv);
            for i in 0..m.rows {
                if i != k && !f.is_zero(m.get(i, k)) {
                    let lambda = f.neg(m.get(i, k));
                    m.add_row_multiple(k, i, &lambda);
                    s.add_row_multiple(k, i, &lambda);
                }
            }
            for j in 0..m.cols {
                if j != k && !f.is_zero(m.get(k, j)) {
                    let lambda = f.neg(m.get(k, j));
                    m.add_col_multiple(k, j, &lambda);
                    rr.add_col_multiple(k, j, &lambda);
                }
            }
            k += 1;
        }
        (s, rr, k)
    }

    /// Indices of a maximal linearly independent subset of the columns, greedily from the left.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().1
    }

    pub fn format_with(&self, indent: &str) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|a| self.field.format_elem(a)).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        let mut out = String::new();
        for row in cells {
            out.push_str(indent);
            out.push('[');
            let parts: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            out.push_str(&parts.join(" "));
            out.push_str("]\n");
        }
        out
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return writeln!(f, "[{}x{} empty]", self.rows, self.cols);
        }
        write!(f, "{}", self.format_with(""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn random_matrix<F: Field>(f: &F, r: usize, c: usize, seed: u64) -> Matrix<F> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Matrix::from_fn(f, r, c, |_, _| {
            // sparse enough to hit rank drops regularly
            if rand::Rng::gen_bool(&mut rng, 0.4) {
                f.zero()
            } else {
                f.random_elem(&mut rng)
            }
        })
    }

    #[test]
    fn inverse_of_small_rational_matrix() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Matrix::from_i64(&q, &[&[1, -1], &[-1, 2]]));
        assert!(Matrix::from_i64(&q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn empty_shapes() {
        let f = gf(5);
        let a = Matrix::zeros(&f, 0, 3);
        let b = Matrix::zeros(&f, 3, 2);
        assert_eq!(a.mul(&b).shape(), (0, 2));
        assert_eq!(a.rank(), 0);
        assert_eq!(Matrix::<PrimeField>::identity(&f, 0).inverse().unwrap().shape(), (0, 0));
        assert_eq!(b.transpose().nullspace().shape(), (3, 3));
        assert!(a.checked_mul(&a).is_err());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = gf(7);
        let m = Matrix::from_i64(&f, &[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[1, 3]).unwrap().is_none());
        let x = m.solve(&[1, 2]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), vec![1, 2]);
    }

    proptest! {
        #[test]
        fn rank_normal_form_is_correct(r in 0usize..6, c in 0usize..6, seed in any::<u64>()) {
            let f = gf(3);
            let m = random_matrix(&f, r, c, seed);
            let (s, rr, k) = m.rank_normal_form();
            prop_assert!(s.is_invertible());
            prop_assert!(rr.is_invertible());
            let d = s.mul(&m).mul(&rr);
            for i in 0..r {
                for j in 0..c {
                    let expect = if i == j && i < k { 1 } else { 0 };
                    prop_assert_eq!(*d.get(i, j), expect);
                }
            }
            prop_assert_eq!(k, m.rank());
            prop_assert_eq!(k, m.transpose().rank());
        }

        #[test]
        fn nullspace_has_right_dimension(r in 0usize..6, c in 0usize..6, seed in any::<u64>()) {
            let f = gf(5);
            let m = random_matrix(&f, r, c, seed);
            let n = m.nullspace();
            prop_assert_eq!(n.cols(), c - m.rank());
            prop_assert!(m.mul(&n).is_zero());
            prop_assert_eq!(n.rank(), n.cols());
        }

        #[test]
        fn inverse_round_trip_rational(n in 1usize..5, seed in any::<u64>()) {
            let q = Rationals;
            let m = random_matrix(&q, n, n, seed);
            match m.inverse() {
                Some(inv) => {
                    prop_assert!(m.mul(&inv).is_identity());
                    prop_assert!(inv.mul(&m).is_identity());
                }
                None => prop_assert!(m.rank() < n),
            }
        }

        #[test]
        fn solve_matrix_solves(r in 1usize..5, c in 1usize..5, k in 1usize..3, seed in any::<u64>()) {
            let f = gf(11);
            let a = random_matrix(&f, r, c, seed);
            let x0 = random_matrix(&f, c, k, seed ^ 0xabc);
            let b = a.mul(&x0);
            let x = a.solve_matrix(&b).unwrap().unwrap();
            prop_assert_eq!(a.mul(&x), b);
        }
    }
}
