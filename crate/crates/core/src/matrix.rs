//! Dense matrices over a [`Ring`].
//!
//! A map `R^a -> R^b` is a `b x a` matrix acting on coordinate columns from
//! the left, so `g ∘ f` is the product `G·F`. The map `f ⊕ g: A ⊕ B -> C`,
//! `(a, b) ↦ f(a) + g(b)`, is the horizontal block `[F | G]`.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    /// Row-major construction; every row must have `cols` entries in `ring`.
    pub fn from_rows(ring: &Ring, cols: usize, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::shape("from_rows", (nrows, cols), (1, row.len())));
            }
            for e in row {
                if !ring.contains(&e) {
                    return Err(Error::NotInRing {
                        ring: ring.descriptor(),
                    });
                }
                data.push(e);
            }
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: nrows,
            cols,
            data,
        })
    }

    /// Integer literals mapped into `ring`. Panics on ragged input; at least
    /// one row is required to fix the column count.
    pub fn from_i64(ring: &Ring, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let elems = rows
            .iter()
            .map(|r| r.iter().map(|&v| ring.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(ring, cols, elems).expect("rectangular integer literal")
    }

    /// Single-row or general matrix with entries from a function.
    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, e: Elem) {
        self.data[i * self.cols + j] = e;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(&self.ring, self.rows)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn same_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::shape("mul", self.shape(), other.shape()));
        }
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let ring = &self.ring;
        if ring.is_field() {
            let p = match ring.base() {
                crate::ring::BaseRing::PrimeField(p) => p,
                _ => unreachable!(),
            };
            let mut acc = vec![0u64; m * n];
            for i in 0..m {
                for l in 0..k {
                    let a = self.get(i, l).as_mod().expect("field entry");
                    if a == 0 {
                        continue;
                    }
                    let row = &mut acc[i * n..(i + 1) * n];
                    for (j, slot) in row.iter_mut().enumerate() {
                        let b = other.get(l, j).as_mod().expect("field entry");
                        if b != 0 {
                            *slot = (*slot + a * b) % p;
                        }
                    }
                }
            }
            return Ok(Matrix {
                ring: ring.clone(),
                rows: m,
                cols: n,
                data: acc.into_iter().map(Elem::Mod).collect(),
            });
        }
        if ring.is_integers() {
            let mut acc = vec![BigInt::zero(); m * n];
            for i in 0..m {
                for l in 0..k {
                    let a = self.get(i, l).as_int().expect("integer entry");
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        let b = other.get(l, j).as_int().expect("integer entry");
                        if !b.is_zero() {
                            acc[i * n + j] += a * b;
                        }
                    }
                }
            }
            return Ok(Matrix {
                ring: ring.clone(),
                rows: m,
                cols: n,
                data: acc.into_iter().map(Elem::Int).collect(),
            });
        }
        let mut out = Matrix::zeros(ring, m, n);
        for i in 0..m {
            for l in 0..k {
                let a = self.get(i, l);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(l, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let v = ring.add(out.get(i, j), &ring.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::shape("add", self.shape(), other.shape()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| self.ring.neg(e)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "submatrix out of bounds");
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(&self.ring, rows.len(), cols.len(), |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    /// Assembles a 2D arrangement of blocks. Every block in a row must share
    /// a row count and every block in a column a column count.
    pub fn block(blocks: &[Vec<&Matrix>]) -> Result<Matrix> {
        let first = blocks
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::shape("block", (0, 0), (0, 0)))?;
        let ring = first.ring.clone();
        let ncols_blocks = blocks[0].len();
        let col_widths: Vec<usize> = blocks[0].iter().map(|b| b.cols).collect();
        let mut row_heights = Vec::with_capacity(blocks.len());
        for row in blocks {
            if row.len() != ncols_blocks {
                return Err(Error::shape("block", (blocks.len(), ncols_blocks), (1, row.len())));
            }
            let h = row[0].rows;
            for (j, b) in row.iter().enumerate() {
                first.same_ring(b)?;
                if b.rows != h || b.cols != col_widths[j] {
                    return Err(Error::shape("block", (h, col_widths[j]), b.shape()));
                }
            }
            row_heights.push(h);
        }
        let rows: usize = row_heights.iter().sum();
        let cols: usize = col_widths.iter().sum();
        let mut out = Matrix::zeros(&ring, rows, cols);
        let mut r0 = 0;
        for (bi, row) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in row.iter().enumerate() {
                for i in 0..b.rows {
                    for j in 0..b.cols {
                        out.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
                c0 += col_widths[bj];
            }
            r0 += row_heights[bi];
        }
        Ok(out)
    }

    pub fn hcat(parts: &[&Matrix]) -> Result<Matrix> {
        Matrix::block(&[parts.to_vec()])
    }

    pub fn vcat(parts: &[&Matrix]) -> Result<Matrix> {
        let rows: Vec<Vec<&Matrix>> = parts.iter().map(|p| vec![*p]).collect();
        Matrix::block(&rows)
    }

    /// Block-diagonal sum: the internal direct sum of two maps.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.same_ring(other)?;
        let z12 = Matrix::zeros(&self.ring, self.rows, other.cols);
        let z21 = Matrix::zeros(&self.ring, other.rows, self.cols);
        assemble_2x2(self, &z12, &z21, other)
    }

    /// Replaces every group-ring entry by its regular-representation block.
    pub fn restrict_scalars(&self) -> Result<Matrix> {
        let g = self.ring.group().ok_or_else(|| Error::Unsupported {
            op: "restrict_scalars",
            ring: self.ring.descriptor(),
        })?;
        let n = g.order();
        let base = self.ring.base_ring();
        let mut out = Matrix::zeros(&base, self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if self.ring.is_zero(e) {
                    continue;
                }
                let rep = self.ring.regular_representation(e)?;
                for a in 0..n {
                    for b in 0..n {
                        out.set(i * n + a, j * n + b, rep.get(a, b).clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// Column-stacked coordinates: each group-ring entry becomes its
    /// coefficient column, so `rows` scale by the group order and `cols` stay.
    pub fn coefficient_columns(&self) -> Result<Matrix> {
        let g = self.ring.group().ok_or_else(|| Error::Unsupported {
            op: "coefficient_columns",
            ring: self.ring.descriptor(),
        })?;
        let n = g.order();
        let base = self.ring.base_ring();
        Ok(Matrix::from_fn(&base, self.rows * n, self.cols, |r, j| {
            self.get(r / n, j).coefficients().expect("group entry")[r % n].clone()
        }))
    }

    /// Inverse of [`Matrix::coefficient_columns`].
    pub fn from_coefficient_columns(ring: &Ring, coords: &Matrix) -> Result<Matrix> {
        let n = ring.base_multiplicity();
        if !ring.is_group_ring() || !coords.rows.is_multiple_of(n) {
            return Err(Error::Unsupported {
                op: "from_coefficient_columns",
                ring: ring.descriptor(),
            });
        }
        let rows = coords.rows / n;
        let mut out = Matrix::zeros(ring, rows, coords.cols);
        for i in 0..rows {
            for j in 0..coords.cols {
                let coeffs = (0..n).map(|a| coords.get(i * n + a, j).clone()).collect();
                out.set(i, j, ring.from_coefficients(coeffs)?);
            }
        }
        Ok(out)
    }

    /// Matrix with every entry mapped through `f`, as a matrix over `ring`.
    pub fn map_entries(&self, ring: &Ring, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix::from_fn(ring, self.rows, self.cols, |i, j| f(self.get(i, j)))
    }
}

/// Assembles `[[a, b], [c, d]]`.
pub fn assemble_2x2(a: &Matrix, b: &Matrix, c: &Matrix, d: &Matrix) -> Result<Matrix> {
    Matrix::block(&[vec![a, b], vec![c, d]])
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.ring.render(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}
