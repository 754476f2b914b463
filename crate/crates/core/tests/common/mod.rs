//! Independent oracles shared by the integration tests. Nothing here calls the
//! elimination kernels or the elusive-entry construction.

#![allow(dead_code)]

use std::collections::BTreeMap;

use koszul::{ExactMatrix, FieldSpec, Scalar};

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out.into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

/// Leibniz expansion of the determinant.
pub fn leibniz_det(a: &ExactMatrix) -> Scalar {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let field = a.field();
    let mut acc = Scalar::zero(field);
    for (perm, sign) in permutations(n) {
        let mut term = Scalar::from_i64(field, sign);
        for (r, &c) in perm.iter().enumerate() {
            term = &term * a.get(r, c);
            if term.is_zero() {
                break;
            }
        }
        acc = &acc + &term;
    }
    acc
}

/// Rank by exhaustive search over square minors (tiny matrices only).
pub fn minor_rank(a: &ExactMatrix) -> usize {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
        for s in &mut with {
            s.push(n - 1);
        }
        let mut out = subsets(n - 1, k);
        out.extend(with);
        out
    }
    for k in (1..=a.rows().min(a.cols())).rev() {
        for rows in subsets(a.rows(), k) {
            for cols in subsets(a.cols(), k) {
                if !leibniz_det(&a.submatrix(&rows, &cols).unwrap()).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// A matrix whose entries are `0` or `coeff · t_var`.
pub type SymbolicMatrix = Vec<Vec<Option<(i64, usize)>>>;

/// Expands `det` of a symbolic matrix into monomials: exponent vector over
/// `vars` variables → integer coefficient. Zero coefficients are dropped.
pub fn expand_symbolic_det(a: &SymbolicMatrix, vars: usize) -> BTreeMap<Vec<u32>, i64> {
    let n = a.len();
    let mut poly: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    'perm: for (perm, sign) in permutations(n) {
        let mut coeff = sign;
        let mut exps = vec![0u32; vars];
        for (r, &c) in perm.iter().enumerate() {
            match a[r][c] {
                Some((k, v)) => {
                    coeff *= k;
                    exps[v - 1] += 1;
                }
                None => continue 'perm,
            }
        }
        *poly.entry(exps).or_insert(0) += coeff;
    }
    poly.retain(|_, c| *c != 0);
    poly
}

pub fn int_matrix<R: AsRef<[i64]>>(field: FieldSpec, rows: &[R]) -> ExactMatrix {
    ExactMatrix::from_i64_rows(field, rows).unwrap()
}
