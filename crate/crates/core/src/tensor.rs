use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;

/// A sparse order-3 tensor in `K^a ⊗ K^b ⊗ K^c`, 1-based indices, no stored
/// zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    field: FieldSpec,
    dims: (usize, usize, usize),
    entries: BTreeMap<(usize, usize, usize), Scalar>,
}

impl Tensor3 {
    pub fn zeros(field: FieldSpec, dims: (usize, usize, usize)) -> Self {
        Self {
            field,
            dims,
            entries: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    pub fn is_cubic(&self) -> bool {
        let (a, b, c) = self.dims;
        a == b && b == c
    }

    /// Nonzero entries sorted by index.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Scalar)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.entries
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    fn check_index(&self, i: usize, j: usize, k: usize) -> Result<()> {
        let (a, b, c) = self.dims;
        for (x, lim) in [(i, a), (j, b), (k, c)] {
            if x == 0 || x > lim {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    limit: lim,
                });
            }
        }
        Ok(())
    }

    /// Overwrites entry `(i, j, k)`; a zero value removes it.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Scalar) -> Result<()> {
        self.check_index(i, j, k)?;
        if value.field() != self.field {
            return Err(Error::FieldMismatch(self.field, value.field()));
        }
        if value.is_zero() {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), value);
        }
        Ok(())
    }

    /// Adds `value` to entry `(i, j, k)`.
    pub fn add_to(&mut self, i: usize, j: usize, k: usize, value: &Scalar) -> Result<()> {
        let sum = &self.get(i, j, k) + value;
        self.set(i, j, k, sum)
    }

    /// The `b × c` slice `T(i, ·, ·)`.
    pub fn slice(&self, i: usize) -> ExactMatrix {
        let (_, b, c) = self.dims;
        let mut out = ExactMatrix::zeros(self.field, b, c);
        for (&(x, j, k), v) in self.entries.range((i, 0, 0)..(i + 1, 0, 0)) {
            debug_assert_eq!(x, i);
            out.set(j - 1, k - 1, v.clone());
        }
        out
    }

    /// `u ⊗ v ⊗ w`.
    pub fn rank_one(u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Result<Self> {
        let field = u
            .iter()
            .chain(v)
            .chain(w)
            .next()
            .map(Scalar::field)
            .ok_or_else(|| Error::InvalidArgument("empty factor".into()))?;
        let mut t = Self::zeros(field, (u.len(), v.len(), w.len()));
        for (i, x) in u.iter().enumerate() {
            for (j, y) in v.iter().enumerate() {
                for (k, z) in w.iter().enumerate() {
                    t.set(i + 1, j + 1, k + 1, &(x * y) * z)?;
                }
            }
        }
        Ok(t)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!(
                "{:?} + {:?}",
                self.dims, other.dims
            )));
        }
        let mut out = self.clone();
        for ((i, j, k), v) in other.entries() {
            out.add_to(i, j, k, v)?;
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zeros(self.field, self.dims);
        for ((i, j, k), v) in self.entries() {
            out.set(i, j, k, v * s).expect("same shape");
        }
        out
    }

    /// `(π ⊗ id ⊗ id)(T)` for a linear map `π : K^a → K^{a'}` given as an
    /// `a' × a` matrix.
    pub fn map_first_factor(&self, pi: &ExactMatrix) -> Result<Self> {
        if pi.cols() != self.dims.0 {
            return Err(Error::DimensionMismatch(format!(
                "projection is {}x{} but first factor has dimension {}",
                pi.rows(),
                pi.cols(),
                self.dims.0
            )));
        }
        if pi.field() != self.field {
            return Err(Error::FieldMismatch(self.field, pi.field()));
        }
        let mut out = Self::zeros(self.field, (pi.rows(), self.dims.1, self.dims.2));
        for ((i, j, k), v) in self.entries() {
            for r in 0..pi.rows() {
                let coeff = pi.get(r, i - 1);
                if !coeff.is_zero() {
                    out.add_to(r + 1, j, k, &(coeff * v))?;
                }
            }
        }
        Ok(out)
    }

    /// Relabels the second and third factors: entry `(i, j, k)` moves to
    /// `(i, sigma[j-1], tau[k-1])` (1-based images).
    pub fn permute_factors(&self, sigma: &[usize], tau: &[usize]) -> Result<Self> {
        if sigma.len() != self.dims.1 || tau.len() != self.dims.2 {
            return Err(Error::DimensionMismatch("permutation length".into()));
        }
        let mut out = Self::zeros(self.field, self.dims);
        for ((i, j, k), v) in self.entries() {
            out.set(i, sigma[j - 1], tau[k - 1], v.clone())?;
        }
        Ok(out)
    }
}
