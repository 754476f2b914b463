//! Koszul flattenings `φ_L(T) = Σ L_i ⊗ T_i`, border-rank lower-bound
//! certificates, and blow-ups of the wedge space `X_L`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::KoszulContext;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::ExactMatrix;
use crate::sampling::{random_matrix, trial_rng, DEFAULT_INT_BOUND};
use crate::tensor::Tensor3;

/// The Toeplitz matrices `S_1, …, S_{2p+1}`, each `(p+1) × (p+1)` with
/// `S_r(j, k) = 1` iff `k - j = p + 1 - r` (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToeplitzBasis {
    p: usize,
    matrices: Vec<ExactMatrix>,
}

impl ToeplitzBasis {
    pub fn new(field: FieldSpec, p: usize) -> Self {
        let n = p + 1;
        let matrices = (1..=2 * p + 1)
            .map(|r| {
                ExactMatrix::from_fn(field, n, n, |j, k| {
                    // 0-based j, k: same difference as 1-based
                    if k as isize - j as isize == (p + 1) as isize - r as isize {
                        Scalar::one(field)
                    } else {
                        Scalar::zero(field)
                    }
                })
            })
            .collect();
        Self { p, matrices }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    /// `S_r`, 1-based.
    pub fn get(&self, r: usize) -> &ExactMatrix {
        &self.matrices[r - 1]
    }

    /// `S_r ⊕ ⋯ ⊕ S_r` (`copies` times) for every `r`.
    pub fn block_sums(&self, copies: usize) -> Vec<ExactMatrix> {
        self.matrices
            .iter()
            .map(|s| {
                let mut acc = ExactMatrix::zeros(s.field(), 0, 0);
                for _ in 0..copies {
                    acc = acc.direct_sum(s).expect("same field");
                }
                acc
            })
            .collect()
    }
}

/// Convenience wrapper for [`ToeplitzBasis::new`].
pub fn toeplitz_basis(field: FieldSpec, p: usize) -> ToeplitzBasis {
    ToeplitzBasis::new(field, p)
}

/// `φ_L(T)`: the `(D·b) × (D·c)` matrix `Σ_i L_i ⊗ T(i,·,·)`.
pub fn phi(ctx: &KoszulContext, tensor: &Tensor3) -> Result<ExactMatrix> {
    let (a, b, c) = tensor.dims();
    if a != ctx.m() {
        return Err(Error::DimensionMismatch(format!(
            "first factor has dimension {a}, expected m = {}",
            ctx.m()
        )));
    }
    let d = ctx.dim();
    let supports: Vec<_> = (1..=a).map(|i| ctx.wedge_support(i)).collect();
    let mut out = ExactMatrix::zeros(tensor.field(), d * b, d * c);
    for ((i, j, k), value) in tensor.entries() {
        for &(row, col, sign) in &supports[i - 1] {
            let (r, cc) = (row * b + j - 1, col * c + k - 1);
            let term = if sign > 0 { value.clone() } else { -value };
            let acc = out.get(r, cc) + &term;
            out.set(r, cc, acc);
        }
    }
    Ok(out)
}

/// `Σ_i wedges[i] ⊗ T(i+1,·,·)` for arbitrary matrices standing in for the
/// `L_i` (e.g. the same maps written in another basis).
pub fn flatten_with(wedges: &[ExactMatrix], tensor: &Tensor3) -> Result<ExactMatrix> {
    let (a, b, c) = tensor.dims();
    if wedges.len() != a {
        return Err(Error::DimensionMismatch(format!(
            "{} maps for a first factor of dimension {a}",
            wedges.len()
        )));
    }
    let (r, s) = wedges
        .first()
        .map(|w| (w.rows(), w.cols()))
        .unwrap_or((0, 0));
    let mut out = ExactMatrix::zeros(tensor.field(), r * b, s * c);
    for (i, w) in wedges.iter().enumerate() {
        out.add_assign(&w.kronecker(&tensor.slice(i + 1))?)?;
    }
    Ok(out)
}

/// A border-rank lower bound `⌈rank φ_L(T) / C(2p,p)⌉`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub tensor: String,
    pub field: FieldSpec,
    pub m: usize,
    pub p: usize,
    pub flattening_rank: usize,
    pub subspace_rank: usize,
    pub lower_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<String>,
}

impl RankCertificate {
    fn new(
        label: &str,
        field: FieldSpec,
        ctx: &KoszulContext,
        flattening_rank: usize,
        projection: Option<String>,
    ) -> Self {
        let subspace_rank = ctx.wedge_rank();
        Self {
            tensor: label.to_string(),
            field,
            m: ctx.m(),
            p: ctx.p(),
            flattening_rank,
            subspace_rank,
            lower_bound: flattening_rank.div_ceil(subspace_rank),
            projection,
        }
    }

    /// `bound · C(2p,p) ≥ rank > (bound − 1) · C(2p,p)`.
    pub fn is_consistent(&self) -> bool {
        let s = self.subspace_rank;
        self.lower_bound * s >= self.flattening_rank
            && (self.lower_bound == 0 || self.flattening_rank > (self.lower_bound - 1) * s)
    }
}

fn cubic_dim(tensor: &Tensor3) -> Result<usize> {
    if !tensor.is_cubic() {
        return Err(Error::DimensionMismatch(format!(
            "tensor must be cubic, got {:?}",
            tensor.dims()
        )));
    }
    Ok(tensor.dims().0)
}

/// Odd `d = m = 2p + 1 ≥ 3`: certificate from `φ_L(T)` directly.
pub fn lower_bound_odd(tensor: &Tensor3, label: &str) -> Result<RankCertificate> {
    let d = cubic_dim(tensor)?;
    if d % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "d = {d} is even; use the even pipeline"
        )));
    }
    if d < 3 {
        return Err(Error::InvalidArgument(format!(
            "d = {d} must be at least 3"
        )));
    }
    let ctx = KoszulContext::for_m(d)?;
    let rank = phi(&ctx, tensor)?.rank();
    Ok(RankCertificate::new(
        label,
        tensor.field(),
        &ctx,
        rank,
        None,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvenOptions {
    /// Random projections tried in addition to dropping the last coordinate.
    pub projections: usize,
    pub seed: u64,
    pub int_bound: i64,
}

impl Default for EvenOptions {
    fn default() -> Self {
        Self {
            projections: 0,
            seed: 0,
            int_bound: DEFAULT_INT_BOUND,
        }
    }
}

/// The projection `K^d → K^{d-1}` forgetting the last coordinate.
pub fn drop_last_projection(field: FieldSpec, d: usize) -> ExactMatrix {
    ExactMatrix::from_fn(field, d - 1, d, |r, c| {
        if r == c {
            Scalar::one(field)
        } else {
            Scalar::zero(field)
        }
    })
}

/// Even `d ≥ 4`: `m = d − 1`, certificates from `φ_L(ψ(T))` with
/// `ψ = π ⊗ id ⊗ id` for the drop-last projection and `options.projections`
/// random surjections; the best one is returned.
pub fn lower_bound_even(
    tensor: &Tensor3,
    label: &str,
    options: EvenOptions,
) -> Result<RankCertificate> {
    let d = cubic_dim(tensor)?;
    if d % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "d = {d} is odd; use the odd pipeline"
        )));
    }
    if d < 4 {
        return Err(Error::InvalidArgument(format!(
            "d = {d} must be at least 4"
        )));
    }
    let field = tensor.field();
    let ctx = KoszulContext::for_m(d - 1)?;

    let mut candidates = vec![("drop-last".to_string(), drop_last_projection(field, d))];
    for k in 0..options.projections {
        let mut rng = trial_rng(options.seed, k as u64);
        let pi = loop {
            let pi = random_matrix(&mut rng, field, d - 1, d, options.int_bound);
            if pi.rank() == d - 1 {
                break pi;
            }
        };
        candidates.push((format!("random#{k}"), pi));
    }

    let certs = candidates
        .into_par_iter()
        .map(|(name, pi)| {
            let projected = tensor.map_first_factor(&pi)?;
            let rank = phi(&ctx, &projected)?.rank();
            Ok(RankCertificate::new(label, field, &ctx, rank, Some(name)))
        })
        .collect::<Result<Vec<_>>>()?;
    // first maximum, so the default projection wins ties
    let best = certs
        .into_iter()
        .reduce(|best, c| {
            if c.flattening_rank > best.flattening_rank {
                c
            } else {
                best
            }
        })
        .expect("at least the default projection");
    Ok(best)
}

/// Dispatches on the parity of `d`.
pub fn lower_bound(tensor: &Tensor3, label: &str, options: EvenOptions) -> Result<RankCertificate> {
    let d = cubic_dim(tensor)?;
    if d % 2 == 1 {
        lower_bound_odd(tensor, label)
    } else {
        lower_bound_even(tensor, label, options)
    }
}

/// `Σ_i L_i ⊗ coeffs[i]`, an element of the blow-up `X_L^{n}`.
pub fn blowup_element(ctx: &KoszulContext, coeffs: &[ExactMatrix]) -> Result<ExactMatrix> {
    if coeffs.len() != ctx.m() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficient matrices for m = {}",
            coeffs.len(),
            ctx.m()
        )));
    }
    let n = coeffs[0].rows();
    let field = coeffs[0].field();
    for c in coeffs {
        if c.rows() != n || c.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "coefficient {}x{} in a list of {n}x{n}",
                c.rows(),
                c.cols()
            )));
        }
        if c.field() != field {
            return Err(Error::FieldMismatch(field, c.field()));
        }
    }
    let d = ctx.dim();
    let mut out = ExactMatrix::zeros(field, d * n, d * n);
    for (i, coeff) in coeffs.iter().enumerate() {
        for (row, col, sign) in ctx.wedge_support(i + 1) {
            for a in 0..n {
                for b in 0..n {
                    let x = coeff.get(a, b);
                    if x.is_zero() {
                        continue;
                    }
                    let (r, c) = (row * n + a, col * n + b);
                    let term = if sign > 0 { x.clone() } else { -x };
                    let acc = out.get(r, c) + &term;
                    out.set(r, c, acc);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupReport {
    pub m: usize,
    pub field: FieldSpec,
    pub size: usize,
    pub rank: usize,
    pub determinant: Scalar,
    pub invertible: bool,
}

/// Checks that `Σ L_i ⊗ (S_i ⊕ S_i)` is invertible, i.e. that the blow-up
/// `X_L^{m+1}` has full rank.
pub fn full_blowup_check(ctx: &KoszulContext, field: FieldSpec) -> Result<BlowupReport> {
    let coeffs = ToeplitzBasis::new(field, ctx.p()).block_sums(2);
    let element = blowup_element(ctx, &coeffs)?;
    let determinant = element.det()?;
    Ok(BlowupReport {
        m: ctx.m(),
        field,
        size: element.rows(),
        rank: element.rank(),
        invertible: !determinant.is_zero(),
        determinant,
    })
}

#[derive(Clone, Debug)]
pub struct WitnessConfig {
    pub field: FieldSpec,
    /// Blow-up size: coefficients are `n × n`.
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub int_bound: i64,
    /// Used verbatim as trial 0 instead of a random draw.
    pub forced_first: Option<Vec<ExactMatrix>>,
}

impl WitnessConfig {
    pub fn new(field: FieldSpec, n: usize, trials: usize, seed: u64) -> Self {
        Self {
            field,
            n,
            trials,
            seed,
            int_bound: DEFAULT_INT_BOUND,
            forced_first: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessResult {
    pub m: usize,
    pub n: usize,
    pub field: FieldSpec,
    pub trials: usize,
    pub best_rank: usize,
    pub best_trial: usize,
    /// `C(2p,p)·(2m−4)`, the value the best rank is compared against.
    pub target: usize,
    pub full_size: usize,
    #[serde(skip)]
    pub witness: Vec<ExactMatrix>,
}

impl WitnessResult {
    pub fn exceeds_target(&self) -> bool {
        self.best_rank > self.target
    }
}

fn witness_coeffs(ctx: &KoszulContext, config: &WitnessConfig, trial: usize) -> Vec<ExactMatrix> {
    if trial == 0 {
        if let Some(forced) = &config.forced_first {
            return forced.clone();
        }
    }
    let mut rng = trial_rng(config.seed, trial as u64);
    (0..ctx.m())
        .map(|_| random_matrix(&mut rng, config.field, config.n, config.n, config.int_bound))
        .collect()
}

/// Randomized lower bound on `rk(X_L^{n})`: the best rank among `trials`
/// sampled blow-up elements. Any rank found is a valid lower bound.
pub fn witness_search(ctx: &KoszulContext, config: &WitnessConfig) -> Result<WitnessResult> {
    if config.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if config.n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if let Some(forced) = &config.forced_first {
        if forced.iter().any(|c| c.field() != config.field) {
            return Err(Error::InvalidArgument(
                "forced coefficients over another field".into(),
            ));
        }
    }
    let ranks = (0..config.trials)
        .into_par_iter()
        .map(|t| blowup_element(ctx, &witness_coeffs(ctx, config, t)).map(|e| (e.rank(), t)))
        .collect::<Result<Vec<_>>>()?;
    let (best_rank, best_trial) = ranks
        .into_iter()
        .reduce(|a, b| if b.0 > a.0 { b } else { a })
        .expect("trials >= 1");
    let m = ctx.m();
    Ok(WitnessResult {
        m,
        n: config.n,
        field: config.field,
        trials: config.trials,
        best_rank,
        best_trial,
        target: ctx.wedge_rank() * (2 * m).saturating_sub(4),
        full_size: ctx.dim() * config.n,
        witness: witness_coeffs(ctx, config, best_trial),
    })
}
