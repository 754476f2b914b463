//! Determinant certificate for `A(t) = Σ t_i M_i ⊗ S_i`.
//!
//! `A` is a `D × D` block matrix whose nonzero blocks are `±t_i S_i`, one for
//! every pair `(i, I)` with `I` a `p`-subset not containing `i`. Picking the
//! elusive entry of every block yields a permutation `σ`, and it is the only
//! permutation whose term is `±(t_1⋯t_m)^{C(2p,p)}`. Hence
//! `det A(t) = k·(t_1⋯t_m)^{C(2p,p)}` with `k = sgn(σ)·∏ block signs = ±1`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{wedge_sign, KoszulContext};
use crate::field::{FieldSpec, Scalar};
use crate::flattening::{blowup_element, ToeplitzBasis};
use crate::matrix::ExactMatrix;
use crate::sampling::{random_nonzero_scalar, trial_rng, DEFAULT_INT_BOUND};

/// A nonzero block `sign · t_i S_i` of `A`. Block coordinates are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockEntry {
    pub variable: usize,
    pub subset: Vec<usize>,
    pub block_row: usize,
    pub block_col: usize,
    pub sign: i32,
}

/// All nonzero blocks of `A`, sorted by `(block_row, block_col)`.
pub fn block_structure(ctx: &KoszulContext) -> Vec<BlockEntry> {
    let mut out = Vec::with_capacity(ctx.m() * ctx.wedge_rank());
    for i in 1..=ctx.m() {
        for (col, subset) in ctx.p_subsets().iter().enumerate() {
            let sign = wedge_sign(i, subset);
            if sign == 0 {
                continue;
            }
            let mut union = subset.clone();
            union.push(i);
            union.sort_unstable();
            out.push(BlockEntry {
                variable: i,
                subset: subset.clone(),
                block_row: ctx.p1_rank(&union).expect("(p+1)-subset"),
                block_col: col,
                sign,
            });
        }
    }
    out.sort_by_key(|e| (e.block_row, e.block_col));
    out
}

/// Location of the elusive entry inside one block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ElusiveEntry {
    /// Blocks `±t_j S_j`, `j < i`, in the same block row.
    pub x: usize,
    /// Blocks `±t_j S_j`, `j < i`, in the same block column.
    pub y: usize,
    /// 1-based inner row, `x + 1`.
    pub row: usize,
    /// 1-based inner column, `p + 1 − y`.
    pub col: usize,
}

/// Elusive entry of `entry`, checking `x + y = i − 1` and `S_i(row, col) = 1`.
pub fn elusive_position(
    ctx: &KoszulContext,
    entry: &BlockEntry,
    structure: &[BlockEntry],
) -> Result<ElusiveEntry> {
    let i = entry.variable;
    let x = structure
        .iter()
        .filter(|e| e.block_row == entry.block_row && e.variable < i)
        .count();
    let y = structure
        .iter()
        .filter(|e| e.block_col == entry.block_col && e.variable < i)
        .count();
    if x + y != i - 1 {
        return Err(Error::Falsified(format!(
            "block ({}, {}) of t_{i}: x + y = {} != i - 1 = {}",
            entry.block_row + 1,
            entry.block_col + 1,
            x + y,
            i - 1
        )));
    }
    let p = ctx.p();
    if y > p {
        return Err(Error::Falsified(format!("y = {y} exceeds p = {p}")));
    }
    let (row, col) = (x + 1, p + 1 - y);
    // S_i(j, k) = 1 iff k − j = p + 1 − i
    if col as isize - row as isize != (p + 1) as isize - i as isize {
        return Err(Error::Falsified(format!("S_{i}({row}, {col}) is zero")));
    }
    Ok(ElusiveEntry { x, y, row, col })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChosenEntry {
    pub block: BlockEntry,
    pub elusive: ElusiveEntry,
    /// 0-based global coordinates in `A`.
    pub row: usize,
    pub col: usize,
}

/// The forced permutation and its sign `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElusiveCertificate {
    pub m: usize,
    pub p: usize,
    pub size: usize,
    pub chosen: Vec<ChosenEntry>,
    /// `permutation[row] = col`, 0-based.
    pub permutation: Vec<usize>,
    pub permutation_sign: i32,
    pub k: i32,
}

/// Sign of a permutation given as an image list.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            cur = perm[cur];
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn elusive_certificate(ctx: &KoszulContext) -> Result<ElusiveCertificate> {
    let structure = block_structure(ctx);
    let block = ctx.p() + 1;
    let size = ctx.dim() * block;
    let mut permutation = vec![usize::MAX; size];
    let mut col_used = vec![false; size];
    let mut chosen = Vec::with_capacity(structure.len());
    let mut sign_product = 1;
    for entry in &structure {
        let elusive = elusive_position(ctx, entry, &structure)?;
        let row = entry.block_row * block + elusive.row - 1;
        let col = entry.block_col * block + elusive.col - 1;
        if permutation[row] != usize::MAX || col_used[col] {
            return Err(Error::Falsified(format!(
                "elusive entries collide at global ({}, {})",
                row + 1,
                col + 1
            )));
        }
        permutation[row] = col;
        col_used[col] = true;
        sign_product *= entry.sign;
        chosen.push(ChosenEntry {
            block: entry.clone(),
            elusive,
            row,
            col,
        });
    }
    if let Some(row) = permutation.iter().position(|&c| c == usize::MAX) {
        return Err(Error::Falsified(format!(
            "row {} has no elusive entry",
            row + 1
        )));
    }
    let permutation_sign = permutation_sign(&permutation);
    Ok(ElusiveCertificate {
        m: ctx.m(),
        p: ctx.p(),
        size,
        chosen,
        permutation,
        permutation_sign,
        k: permutation_sign * sign_product,
    })
}

/// `A(t) = Σ t_i M_i ⊗ S_i`.
pub fn semi_main_matrix(ctx: &KoszulContext, t: &[Scalar]) -> Result<ExactMatrix> {
    if t.len() != ctx.m() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for m = {}",
            t.len(),
            ctx.m()
        )));
    }
    let field = t[0].field();
    let toeplitz = ToeplitzBasis::new(field, ctx.p());
    let coeffs: Vec<_> = toeplitz
        .matrices()
        .iter()
        .zip(t)
        .map(|(s, ti)| s.scale(ti))
        .collect();
    blowup_element(ctx, &coeffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleCheck {
    pub t: Vec<Scalar>,
    pub determinant: Scalar,
    pub expected: Scalar,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiMainReport {
    pub m: usize,
    pub p: usize,
    pub field: FieldSpec,
    pub size: usize,
    pub k: i32,
    pub permutation_sign: i32,
    pub det_at_ones: Scalar,
    pub det_at_ones_ok: bool,
    pub exponent: usize,
    pub samples: Vec<SampleCheck>,
    pub passed: bool,
}

/// Checks `det A(1,…,1) = k` and `det A(t) = k·(∏ t_i)^{C(2p,p)}` at
/// `samples` random nonzero points. A failed identity is reported in the
/// result, not as an error.
pub fn verify_semi_main(
    ctx: &KoszulContext,
    field: FieldSpec,
    samples: usize,
    seed: u64,
) -> Result<SemiMainReport> {
    let cert = elusive_certificate(ctx)?;
    let k = Scalar::from_i64(field, cert.k as i64);
    let exponent = ctx.wedge_rank();

    let ones = vec![Scalar::one(field); ctx.m()];
    let det_at_ones = semi_main_matrix(ctx, &ones)?.det()?;
    let det_at_ones_ok = det_at_ones == k;

    let samples = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = trial_rng(seed, s as u64);
            let t: Vec<_> = (0..ctx.m())
                .map(|_| random_nonzero_scalar(&mut rng, field, DEFAULT_INT_BOUND))
                .collect();
            let determinant = semi_main_matrix(ctx, &t)?.det()?;
            let product = t.iter().fold(Scalar::one(field), |acc, x| &acc * x);
            let expected = &k * &product.pow(exponent as i64).expect("nonnegative exponent");
            let ok = determinant == expected;
            Ok(SampleCheck {
                t,
                determinant,
                expected,
                ok,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let passed = det_at_ones_ok && samples.iter().all(|s| s.ok);
    Ok(SemiMainReport {
        m: ctx.m(),
        p: ctx.p(),
        field,
        size: cert.size,
        k: cert.k,
        permutation_sign: cert.permutation_sign,
        det_at_ones,
        det_at_ones_ok,
        exponent,
        samples,
        passed,
    })
}
