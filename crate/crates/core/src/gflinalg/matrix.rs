//! Dense matrices over a [`GaloisField`].

use std::fmt;

use super::field::GaloisField;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    field: GaloisField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl FieldMatrix {
    pub fn zeros(field: &GaloisField, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &GaloisField, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: &GaloisField, n: usize, c: u64) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn diagonal(field: &GaloisField, diag: &[u64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    pub fn from_rows(field: &GaloisField, rows: Vec<Vec<u64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        let data: Vec<u64> = rows.into_iter().flatten().collect();
        if let Some(bad) = data.iter().find(|&&v| !field.contains(v)) {
            return Err(Error::Shape(format!("entry {bad} is not an element of {field}")));
        }
        Ok(FieldMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Jordan block `J_size(λ)`: `λ` on the diagonal, ones above it.
    pub fn jordan_block(field: &GaloisField, lambda: u64, size: usize) -> Self {
        let mut m = Self::scalar(field, size, lambda);
        for i in 0..size.saturating_sub(1) {
            m.data[i * size + i + 1] = 1;
        }
        m
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// `−c_0, …, −c_{d−1}` in the last column.
    pub fn companion(poly: &Poly) -> Result<Self> {
        if !poly.is_monic() || poly.deg() == 0 {
            return Err(Error::Domain(format!("companion of non-monic or constant {poly}")));
        }
        let field = poly.field();
        let d = poly.deg();
        let mut m = Self::zeros(field, d, d);
        for i in 1..d {
            m.data[i * d + i - 1] = 1;
        }
        for i in 0..d {
            m.data[i * d + d - 1] = field.neg(poly.coeff(i));
        }
        Ok(m)
    }

    pub fn block_diag(field: &GaloisField, blocks: &[FieldMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.data[(r0 + i) * m + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: &GaloisField, parts: &[FieldMatrix]) -> Result<Self> {
        let cols = parts.first().map_or(0, |m| m.cols);
        if parts.iter().any(|m| m.cols != cols) {
            return Err(Error::Shape("vstack of matrices with different widths".into()));
        }
        let data: Vec<u64> = parts.iter().flat_map(|m| m.data.iter().copied()).collect();
        Ok(FieldMatrix {
            field: field.clone(),
            rows: parts.iter().map(|m| m.rows).sum(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &GaloisField {
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

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        debug_assert!(self.field.contains(v));
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar_value(1)
    }

    fn is_scalar_value(&self, c: u64) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { c } else { 0 })
            })
    }

    /// The scalar `c` if this matrix is `c·I`.
    pub fn scalar_value(&self) -> Option<u64> {
        if self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0);
        self.is_scalar_value(c).then_some(c)
    }

    fn check_same_shape(&self, other: &FieldMatrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::Shape(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(FieldMatrix { data, ..self.clone() })
    }

    pub fn sub(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same_shape(other)?;
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(FieldMatrix { data, ..self.clone() })
    }

    pub fn scale(&self, c: u64) -> FieldMatrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FieldMatrix { data, ..self.clone() }
    }

    /// `self − c·I`.
    pub fn sub_scalar(&self, c: u64) -> Result<FieldMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("sub_scalar on a non-square matrix".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = self.field.sub(out.get(i, i), c);
            out.set(i, i, v);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::Shape(format!("{} vs {}", self.field, other.field)));
        }
        Ok(self.mul_unchecked(other))
    }

    /// Product of conforming matrices over one field (checked in debug
    /// builds only).
    pub fn mul_unchecked(&self, other: &FieldMatrix) -> FieldMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let (n, m, l) = (self.rows, self.cols, other.cols);
        let mut data = vec![0u64; n * l];
        if f.degree() == 1 {
            let p = f.characteristic();
            for i in 0..n {
                for j in 0..l {
                    let mut acc = 0u64;
                    for t in 0..m {
                        acc = (acc + self.data[i * m + t] * other.data[t * l + j]) % p;
                    }
                    data[i * l + j] = acc;
                }
            }
        } else {
            for i in 0..n {
                for t in 0..m {
                    let a = self.data[i * m + t];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..l {
                        let idx = i * l + j;
                        data[idx] = f.add(data[idx], f.mul(a, other.data[t * l + j]));
                    }
                }
            }
        }
        FieldMatrix {
            field: f.clone(),
            rows: n,
            cols: l,
            data,
        }
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Result<FieldMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &Poly) -> Result<FieldMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("polynomial in a non-square matrix".into()));
        }
        let n = self.rows;
        let mut acc = Self::zeros(&self.field, n, n);
        for &c in p.coeffs().iter().rev() {
            acc = acc.mul_unchecked(self);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{v : self·v = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    /// Dimension of the right null space.
    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn det(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1u64;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return Ok(0);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot)?;
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<FieldMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut out = Self::zeros(&self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, red.get(i, n + j));
            }
        }
        Ok(out)
    }

    /// Characteristic polynomial `det(x·I − self)` by Berkowitz's
    /// division-free algorithm.
    ///
    /// Writing the trailing principal submatrix as `[[a, R], [C, M]]`, the
    /// characteristic polynomial is the Toeplitz product `T · χ_M` where the
    /// first column of `T` is `1, −a, −R·C, −R·M·C, …, −R·M^{s−1}·C`.
    pub fn char_poly(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::Shape("characteristic polynomial of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        // Coefficients of χ, highest degree first.
        let mut v: Vec<u64> = vec![1];
        for r in (0..n).rev() {
            let s = n - r - 1;
            let a = self.get(r, r);
            let row: Vec<u64> = (r + 1..n).map(|j| self.get(r, j)).collect();
            let mut col: Vec<u64> = (r + 1..n).map(|i| self.get(i, r)).collect();
            let mut t = Vec::with_capacity(s + 2);
            t.push(1);
            t.push(f.neg(a));
            for _ in 0..s {
                let rc = row.iter().zip(&col).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                t.push(f.neg(rc));
                // col ← M·col
                col = (0..s)
                    .map(|i| {
                        (0..s).fold(0, |acc, j| {
                            f.add(acc, f.mul(self.get(r + 1 + i, r + 1 + j), col[j]))
                        })
                    })
                    .collect();
            }
            let w = (0..s + 2)
                .map(|i| {
                    (0..=i.min(s)).fold(0, |acc, j| f.add(acc, f.mul(t[i - j], v[j])))
                })
                .collect();
            v = w;
        }
        v.reverse();
        Ok(Poly::new(f, v))
    }

    /// Encoding used as a set key: the dimension as a little-endian `u32`,
    /// then each entry in row-major order using a fixed number of bytes.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let width = self.field.bytes_per_element();
        let mut out = Vec::with_capacity(4 + width * self.data.len());
        out.extend_from_slice(&(self.rows as u32).to_le_bytes());
        for &v in &self.data {
            out.extend_from_slice(&v.to_le_bytes()[..width]);
        }
        out
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{self}", self.field)
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|&v| self.field.format_element(v)).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> GaloisField {
        GaloisField::of_order(q).unwrap()
    }

    #[test]
    fn jordan_rank() {
        let f = gf(3);
        let j = FieldMatrix::jordan_block(&f, 1, 2);
        assert_eq!(j.sub_scalar(1).unwrap().rank(), 1);
    }

    #[test]
    fn diagonal_determinant() {
        let f = gf(7);
        assert_eq!(FieldMatrix::diagonal(&f, &[2, 4]).det().unwrap(), 1);
    }

    #[test]
    fn kernel_of_unipotent_with_two_blocks() {
        let f = gf(5);
        let x = FieldMatrix::block_diag(
            &f,
            &[FieldMatrix::jordan_block(&f, 1, 2), FieldMatrix::jordan_block(&f, 1, 1)],
        );
        let a = x.sub_scalar(1).unwrap();
        let ker = a.kernel_basis();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(a.mul_vec(&v).iter().all(|&c| c == 0));
        }
    }

    #[test]
    fn char_poly_examples() {
        let f = gf(3);
        let j = FieldMatrix::jordan_block(&f, 1, 2);
        assert_eq!(j.char_poly().unwrap().coeffs(), &[1, 1, 1]);

        let f = gf(7);
        let d = FieldMatrix::diagonal(&f, &[2, 4]);
        assert_eq!(d.char_poly().unwrap().coeffs(), &[1, 1, 1]);

        let f = gf(2);
        let poly = Poly::new(&f, vec![1, 1, 0, 1]);
        let c = FieldMatrix::companion(&poly).unwrap();
        assert_eq!(c.char_poly().unwrap(), poly);
    }

    #[test]
    fn char_poly_matches_cayley_hamilton() {
        let f = gf(4);
        let m = FieldMatrix::from_rows(
            &f,
            vec![vec![1, 2, 3, 0], vec![0, 3, 1, 2], vec![2, 2, 0, 1], vec![3, 1, 1, 1]],
        )
        .unwrap();
        let chi = m.char_poly().unwrap();
        assert_eq!(chi.deg(), 4);
        let z = m.eval_poly(&chi).unwrap();
        assert!(z.data.iter().all(|&v| v == 0));
        // constant term is det(−M) = det(M) in even size
        assert_eq!(chi.coeff(0), m.det().unwrap());
    }

    #[test]
    fn inverse_and_singular() {
        let f = gf(5);
        let m = FieldMatrix::from_rows(&f, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let s = FieldMatrix::from_rows(&f, vec![vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert_eq!(s.det().unwrap(), 0);
    }

    #[test]
    fn shapes_are_checked() {
        let f = gf(5);
        let a = FieldMatrix::zeros(&f, 2, 3);
        assert!(a.mul(&a).is_err());
        assert!(a.det().is_err());
        assert!(FieldMatrix::from_rows(&f, vec![vec![1], vec![1, 2]]).is_err());
        assert!(FieldMatrix::from_rows(&f, vec![vec![5]]).is_err());
    }

    #[test]
    fn canonical_bytes_distinguish_matrices() {
        let f = gf(7);
        let a = FieldMatrix::diagonal(&f, &[2, 4]);
        let b = FieldMatrix::diagonal(&f, &[4, 2]);
        assert_ne!(a.canonical_bytes(), b.canonical_bytes());
        assert_eq!(a.canonical_bytes().len(), 4 + 4);
    }
}
