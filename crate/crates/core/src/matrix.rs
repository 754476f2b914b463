//! Dense exact matrices.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::elimination::{bareiss_bigint, clear_denominators, eliminate_mod};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A dense row-major matrix over a single [`FieldSpec`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let x = f(r, c);
                assert_eq!(x.field(), field, "entry from a different field");
                entries.push(x);
            }
        }
        Self {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from integer rows; all rows must have equal length.
    pub fn from_i64_rows<R: AsRef<[i64]>>(field: FieldSpec, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |r, c| {
            Scalar::from_i64(field, rows[r].as_ref()[c])
        }))
    }

    pub fn from_entries(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Self {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of bounds"
        );
        assert_eq!(value.field(), self.field, "entry from a different field");
        self.entries[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Number of nonzero entries.
    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match self.field {
            FieldSpec::Prime(p) => {
                let mut data = self.residues();
                eliminate_mod(&mut data, self.rows, self.cols, p as u64).rank
            }
            FieldSpec::Rationals => {
                let (ints, _) = clear_denominators(&self.rationals(), self.rows, self.cols);
                bareiss_bigint(ints, self.rows, self.cols).rank
            }
        }
    }

    /// Exact determinant.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Scalar::one(self.field));
        }
        Ok(match self.field {
            FieldSpec::Prime(p) => {
                let mut data = self.residues();
                let e = eliminate_mod(&mut data, self.rows, self.cols, p as u64);
                Scalar::from_i64(self.field, e.det as i64)
            }
            FieldSpec::Rationals => {
                let (ints, scale) = clear_denominators(&self.rationals(), self.rows, self.cols);
                let e = bareiss_bigint(ints, self.rows, self.cols);
                Scalar::Rational(BigRational::new(e.det, scale))
            }
        })
    }

    fn residues(&self) -> Vec<u64> {
        self.entries
            .iter()
            .map(|x| match x {
                Scalar::Modular { value, .. } => *value as u64,
                Scalar::Rational(_) => unreachable!("rational entry in a prime-field matrix"),
            })
            .collect()
    }

    fn rationals(&self) -> Vec<BigRational> {
        self.entries
            .iter()
            .map(|x| match x {
                Scalar::Rational(q) => q.clone(),
                Scalar::Modular { .. } => unreachable!("modular entry in a rational matrix"),
            })
            .collect()
    }

    /// `self ⊗ other` with blocks `a_ij · other` laid out row-major.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(self.field, rows, cols);
        for (i, a) in self.entries.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (br, bc) = (i / self.cols, i % self.cols);
            for r in 0..other.rows {
                for c in 0..other.cols {
                    let b = other.get(r, c);
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[(br * other.rows + r) * cols + bc * other.cols + c] = a * b;
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let mut out = Self::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        for &r in rows {
            if r >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: r,
                    limit: self.rows,
                });
            }
        }
        for &c in cols {
            if c >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    limit: self.cols,
                });
            }
        }
        Ok(Self::from_fn(self.field, rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        }))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.get(c, r).clone()
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { entries, ..*self })
    }

    /// Adds `other` in place, skipping zero entries of `other`.
    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
        Ok(())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        assert_eq!(s.field(), self.field, "scalar from a different field");
        let entries = self.entries.iter().map(|a| a * s).collect();
        Self { entries, ..*self }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Inverse by Gauss-Jordan elimination; `Ok(None)` for singular input.
    pub fn inverse(&self) -> Result<Option<Self>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(self.field, n);
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(None);
            };
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let pinv = a.get(col, col).inv().expect("nonzero pivot");
            a.scale_row(col, &pinv);
            inv.scale_row(col, &pinv);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = -a.get(r, col);
                a.add_row_multiple(r, col, &f);
                inv.add_row_multiple(r, col, &f);
            }
        }
        Ok(Some(inv))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.entries[idx] = &self.entries[idx] * s;
        }
    }

    /// row[target] += f * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, f: &Scalar) {
        for c in 0..self.cols {
            let src = &self.entries[source * self.cols + c];
            if src.is_zero() {
                continue;
            }
            let add = src * f;
            let idx = target * self.cols + c;
            self.entries[idx] = &self.entries[idx] + &add;
        }
    }

    /// Maps an integer matrix into another field (entries must be integers).
    pub fn to_field(&self, field: FieldSpec) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|x| match x {
                Scalar::Rational(q) => Scalar::from_ratio(field, q.numer(), q.denom()),
                Scalar::Modular { value, .. } => {
                    Ok(Scalar::from_bigint(field, &BigInt::from(*value)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(field, self.rows, self.cols, entries)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ExactMatrix {}x{} over {}",
            self.rows, self.cols, self.field
        )?;
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
