//! Exterior-power bases in lexicographic order and the wedge maps
//! `L_v : ∧^p K^m → ∧^{p+1} K^m`, `w ↦ v ∧ w`.
//!
//! Subsets of `[n]` are 1-based strictly increasing lists. Matrix positions are
//! 0-based: row index is the lex rank of the `(p+1)`-subset, column index the
//! lex rank of the `p`-subset.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    usize::try_from(acc).expect("binomial overflows usize")
}

fn check_subset(n: usize, r: usize, subset: &[usize]) -> Result<()> {
    let ok = subset.len() == r
        && subset.iter().all(|&x| (1..=n).contains(&x))
        && subset.windows(2).all(|w| w[0] < w[1]);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidSubset {
            n,
            r,
            subset: subset.to_vec(),
        })
    }
}

/// 0-based position of `subset` among the `r`-subsets of `[n]` in lex order.
pub fn subset_rank(n: usize, r: usize, subset: &[usize]) -> Result<usize> {
    check_subset(n, r, subset)?;
    let mut rank = 0;
    let mut prev = 0;
    for (t, &x) in subset.iter().enumerate() {
        // every subset agreeing on the first t entries whose (t+1)-th entry is v < x
        for v in prev + 1..x {
            rank += binomial(n - v, r - t - 1);
        }
        prev = x;
    }
    Ok(rank)
}

/// Inverse of [`subset_rank`].
pub fn subset_unrank(n: usize, r: usize, k: usize) -> Result<Vec<usize>> {
    let total = binomial(n, r);
    if k >= total {
        return Err(Error::IndexOutOfRange {
            index: k,
            limit: total,
        });
    }
    let mut out = Vec::with_capacity(r);
    let mut rest = k;
    let mut v = 1;
    for t in 0..r {
        loop {
            let block = binomial(n - v, r - t - 1);
            if rest < block {
                break;
            }
            rest -= block;
            v += 1;
        }
        out.push(v);
        v += 1;
    }
    Ok(out)
}

/// All `r`-subsets of `[n]` in lex order.
pub fn lex_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            rec(x + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(n, r));
    rec(1, n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// Sign `s` with `e_i ∧ e_I = s · e_{I ∪ {i}}`; zero when `i ∈ I`.
pub fn wedge_sign(i: usize, subset: &[usize]) -> i32 {
    if subset.contains(&i) {
        return 0;
    }
    let before = subset.iter().filter(|&&j| j < i).count();
    if before % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Basis tables for `∧^p K^m` and `∧^{p+1} K^m` with `m = 2p + 1`.
#[derive(Clone, Debug)]
pub struct KoszulContext {
    p: usize,
    p_subsets: Vec<Vec<usize>>,
    p1_subsets: Vec<Vec<usize>>,
    p_index: HashMap<Vec<usize>, usize>,
    p1_index: HashMap<Vec<usize>, usize>,
}

impl KoszulContext {
    pub fn new(p: usize) -> Self {
        let m = 2 * p + 1;
        let p_subsets = lex_subsets(m, p);
        let p1_subsets = lex_subsets(m, p + 1);
        let index = |v: &[Vec<usize>]| v.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        Self {
            p,
            p_index: index(&p_subsets),
            p1_index: index(&p1_subsets),
            p_subsets,
            p1_subsets,
        }
    }

    /// Context for an odd `m ≥ 1`.
    pub fn for_m(m: usize) -> Result<Self> {
        if m.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("m = {m} must be odd")));
        }
        Ok(Self::new((m - 1) / 2))
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn m(&self) -> usize {
        2 * self.p + 1
    }

    /// `D = C(m, p) = C(m, p+1)`.
    pub fn dim(&self) -> usize {
        self.p_subsets.len()
    }

    /// `C(2p, p)`, the rank of every nonzero `L_v`.
    pub fn wedge_rank(&self) -> usize {
        binomial(2 * self.p, self.p)
    }

    pub fn p_subsets(&self) -> &[Vec<usize>] {
        &self.p_subsets
    }

    pub fn p1_subsets(&self) -> &[Vec<usize>] {
        &self.p1_subsets
    }

    pub fn p_rank(&self, subset: &[usize]) -> Option<usize> {
        self.p_index.get(subset).copied()
    }

    pub fn p1_rank(&self, subset: &[usize]) -> Option<usize> {
        self.p1_index.get(subset).copied()
    }

    /// The nonzero entries of `L_i`: `(row, col, sign)` for every `p`-subset
    /// `I` not containing `i`, in lex order of `I`.
    pub fn wedge_support(&self, i: usize) -> Vec<(usize, usize, i32)> {
        self.p_subsets
            .iter()
            .enumerate()
            .filter_map(|(col, subset)| {
                let sign = wedge_sign(i, subset);
                (sign != 0).then(|| {
                    let mut union = subset.clone();
                    union.push(i);
                    union.sort_unstable();
                    (self.p1_index[&union], col, sign)
                })
            })
            .collect()
    }

    /// Matrix of `L_{e_i}` (1-based `i`).
    pub fn wedge_basis_matrix(&self, field: FieldSpec, i: usize) -> ExactMatrix {
        let mut v = vec![Scalar::zero(field); self.m()];
        v[i - 1] = Scalar::one(field);
        self.wedge_matrix(&v).expect("length m")
    }

    /// `D × D` matrix of `L_v`, columns indexed by `E(p)`, rows by `E(p+1)`.
    pub fn wedge_matrix(&self, v: &[Scalar]) -> Result<ExactMatrix> {
        if v.len() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for m = {}",
                v.len(),
                self.m()
            )));
        }
        let field = v
            .first()
            .map(Scalar::field)
            .expect("m >= 1 so v is nonempty");
        if let Some(bad) = v.iter().find(|x| x.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        let d = self.dim();
        let mut out = ExactMatrix::zeros(field, d, d);
        for (idx, coeff) in v.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            for (row, col, sign) in self.wedge_support(idx + 1) {
                let term = if sign > 0 { coeff.clone() } else { -coeff };
                let acc = out.get(row, col) + &term;
                out.set(row, col, acc);
            }
        }
        Ok(out)
    }
}

/// The basis `(b_1, …, λ b_i, …, b_n)` obtained by scaling one vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledBasis {
    n: usize,
    index: usize,
    lambda: Scalar,
}

impl ScaledBasis {
    /// `index` is 1-based; `lambda` must be nonzero.
    pub fn new(n: usize, index: usize, lambda: Scalar) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::InvalidArgument(
                "scaling factor must be nonzero".into(),
            ));
        }
        if !(1..=n).contains(&index) {
            return Err(Error::IndexOutOfRange { index, limit: n });
        }
        Ok(Self { n, index, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }
}

/// The diagonal base change `X_{B(r), B'(r)}` on `∧^r`: `λ` at each subset
/// containing the scaled index, `1` elsewhere.
pub fn scaled_basis_change(r: usize, basis: &ScaledBasis) -> ExactMatrix {
    let field = basis.lambda.field();
    let subsets = lex_subsets(basis.n, r);
    let mut out = ExactMatrix::zeros(field, subsets.len(), subsets.len());
    for (k, s) in subsets.iter().enumerate() {
        let entry = if s.contains(&basis.index) {
            basis.lambda.clone()
        } else {
            Scalar::one(field)
        };
        out.set(k, k, entry);
    }
    out
}

/// Re-expresses `matrix` in signed-permuted bases: the new k-th codomain
/// vector is `sign · old[idx]` for `codomain[k] = (idx, sign)`, likewise for
/// the domain.
pub fn signed_rebase(
    matrix: &ExactMatrix,
    codomain: &[(usize, i32)],
    domain: &[(usize, i32)],
) -> Result<ExactMatrix> {
    if codomain.len() != matrix.rows() || domain.len() != matrix.cols() {
        return Err(Error::DimensionMismatch("basis length".into()));
    }
    Ok(ExactMatrix::from_fn(
        matrix.field(),
        matrix.rows(),
        matrix.cols(),
        |r, c| {
            let (ri, rs) = codomain[r];
            let (ci, cs) = domain[c];
            let x = matrix.get(ri, ci);
            if rs * cs > 0 {
                x.clone()
            } else {
                -x
            }
        },
    ))
}

/// The cyclic basis `(e₂∧e₃, e₃∧e₁, e₁∧e₂)` of `∧² K³` in terms of the lex
/// basis `(e₁₂, e₁₃, e₂₃)`.
pub const CYCLIC_WEDGE2_BASIS: [(usize, i32); 3] = [(2, 1), (1, -1), (0, 1)];
