mod common;

use common::int_matrix;
use koszul::exterior::lex_subsets;
use koszul::sampling::{random_matrix, random_nonzero_scalar, random_scalar, trial_rng};
use koszul::{
    binomial, scaled_basis_change, subset_rank, subset_unrank, toeplitz_basis, wedge_sign,
    ExactMatrix, FieldSpec, KoszulContext, Scalar, ScaledBasis,
};
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;
const GF101: FieldSpec = FieldSpec::Prime(101);

fn unit(field: FieldSpec, m: usize, i: usize) -> Vec<Scalar> {
    (1..=m)
        .map(|j| Scalar::from_i64(field, (i == j) as i64))
        .collect()
}

fn ints(field: FieldSpec, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_i64(field, x)).collect()
}

/// λ^e for a possibly negative exponent.
fn power(lambda: &Scalar, e: i64) -> Scalar {
    lambda.pow(e).expect("nonzero base")
}

#[test]
fn rank_unrank_round_trip_exhaustive() {
    for n in 0..=8 {
        for r in 0..=n {
            let count = binomial(n, r);
            let mut previous: Option<Vec<usize>> = None;
            for k in 0..count {
                let s = subset_unrank(n, r, k).unwrap();
                assert_eq!(s.len(), r);
                assert!(s.windows(2).all(|w| w[0] < w[1]));
                assert!(s.iter().all(|&x| (1..=n).contains(&x)));
                if let Some(prev) = &previous {
                    assert!(prev < &s, "lex order at n={n} r={r} k={k}");
                }
                assert_eq!(subset_rank(n, r, &s).unwrap(), k);
                previous = Some(s);
            }
            assert!(subset_unrank(n, r, count).is_err());
        }
    }
}

#[test]
fn wedge_sign_examples() {
    assert_eq!(wedge_sign(1, &[2]), 1);
    assert_eq!(wedge_sign(2, &[1]), -1);
    assert_eq!(wedge_sign(2, &[1, 2]), 0);
    assert_eq!(wedge_sign(4, &[1, 3, 5]), 1);
    assert_eq!(wedge_sign(5, &[1, 3, 4]), -1);
}

#[test]
fn wedge_matrix_examples() {
    let ctx = KoszulContext::new(1);
    let l1 = ctx.wedge_matrix(&unit(Q, 3, 1)).unwrap();
    assert_eq!(l1, int_matrix(Q, &[[0, 1, 0], [0, 0, 1], [0, 0, 0]]));
    assert!(ctx.wedge_matrix(&ints(Q, &[0, 0, 0])).unwrap().is_zero());
    assert!(ctx.wedge_matrix(&ints(Q, &[1, 0])).is_err());

    // M = (−t2 t1 0 / −t3 0 t1 / 0 −t3 t2)
    let m = ctx.wedge_matrix(&ints(Q, &[2, 3, 5])).unwrap();
    assert_eq!(m, int_matrix(Q, &[[-3, 2, 0], [-5, 0, 2], [0, -5, 3]]));

    let ctx2 = KoszulContext::new(2);
    assert_eq!(ctx2.wedge_matrix(&unit(Q, 5, 1)).unwrap().rank(), 6);
}

#[test]
fn wedge_matrix_entries_from_definition() {
    // Entry (J, I) is the coefficient of e_J in v ∧ e_I; signs counted here.
    for p in 1..=3 {
        let ctx = KoszulContext::new(p);
        let m = ctx.m();
        let mut rng = trial_rng(11, p as u64);
        let v: Vec<Scalar> = (0..m).map(|_| random_scalar(&mut rng, Q, 9)).collect();
        let l = ctx.wedge_matrix(&v).unwrap();
        let rows = lex_subsets(m, p + 1);
        let cols = lex_subsets(m, p);
        for (r, big) in rows.iter().enumerate() {
            for (c, small) in cols.iter().enumerate() {
                let expected = match big.iter().find(|x| !small.contains(x)) {
                    Some(&i) if small.iter().all(|x| big.contains(x)) => {
                        let before = small.iter().filter(|&&x| x < i).count();
                        let sign = if before % 2 == 0 { 1 } else { -1 };
                        &Scalar::from_i64(Q, sign) * &v[i - 1]
                    }
                    _ => Scalar::zero(Q),
                };
                assert_eq!(l.get(r, c), &expected, "p={p} J={big:?} I={small:?}");
            }
        }
    }
}

#[test]
fn rank_constant_on_nonzero_vectors() {
    for p in 1..=3 {
        let ctx = KoszulContext::new(p);
        let target = binomial(2 * p, p);
        assert_eq!(ctx.wedge_rank(), target);
        for field in [GF101, Q, FieldSpec::Prime(2)] {
            let mut rng = trial_rng(2024, p as u64);
            let mut samples = 0;
            while samples < 100 {
                let v = random_matrix(&mut rng, field, ctx.m(), 1, 3);
                if v.is_zero() {
                    continue;
                }
                let l = ctx.wedge_matrix(v.entries()).unwrap();
                assert_eq!(l.rank(), target, "m={} field={field} v={v:?}", ctx.m());
                samples += 1;
            }
        }
    }
}

#[test]
fn scaled_basis_determinant_exhaustive() {
    let mut rng = trial_rng(7, 0);
    for n in 1..=8 {
        for r in 0..=n {
            for i in 1..=n {
                let lambda = random_nonzero_scalar(&mut rng, Q, 50);
                let basis = ScaledBasis::new(n, i, lambda.clone()).unwrap();
                let x = scaled_basis_change(r, &basis);
                let e = if r == 0 {
                    0
                } else {
                    binomial(n - 1, r - 1) as i64
                };
                assert_eq!(x.det().unwrap(), power(&lambda, e), "n={n} r={r} i={i}");
            }
        }
    }
}

#[test]
fn scaled_basis_examples() {
    let lambda = Scalar::from_i64(Q, 7);
    let b = ScaledBasis::new(3, 1, lambda.clone()).unwrap();
    assert_eq!(
        scaled_basis_change(2, &b),
        int_matrix(Q, &[[7, 0, 0], [0, 7, 0], [0, 0, 1]])
    );
    let b = ScaledBasis::new(5, 3, lambda.clone()).unwrap();
    assert_eq!(scaled_basis_change(2, &b).det().unwrap(), power(&lambda, 4));
    let one = ScaledBasis::new(4, 2, Scalar::one(Q)).unwrap();
    assert_eq!(scaled_basis_change(2, &one), ExactMatrix::identity(Q, 6));
    assert!(ScaledBasis::new(3, 1, Scalar::zero(Q)).is_err());
    assert!(ScaledBasis::new(3, 4, lambda).is_err());
}

#[test]
fn base_change_determinant_scales() {
    // det(X(r+1)^-1 L X(r)) = λ^{C(n-1,r-1) - C(n-1,r)} det L for n = 2r + 1
    let mut rng = trial_rng(8, 0);
    for r in 1..=3 {
        let n = 2 * r + 1;
        let d = binomial(n, r);
        for i in 1..=n {
            let lambda = random_nonzero_scalar(&mut rng, Q, 20);
            let b = ScaledBasis::new(n, i, lambda.clone()).unwrap();
            let l = random_matrix(&mut rng, Q, d, d, 5);
            let xr = scaled_basis_change(r, &b);
            let xr1_inv = scaled_basis_change(r + 1, &b).inverse().unwrap().unwrap();
            let changed = xr1_inv.mul(&l).unwrap().mul(&xr).unwrap();
            let e = binomial(n - 1, r - 1) as i64 - binomial(n - 1, r) as i64;
            assert_eq!(
                changed.det().unwrap(),
                &power(&lambda, e) * &l.det().unwrap()
            );
        }
    }
}

/// Matrix of `L_{e_j}` in the bases `E'(p)`, `E'(p+1)` where `e'_i = λ e_i`,
/// computed from `e_j ∧ e'_I = λ^{[i∈I]} s e_J = λ^{[i∈I] - [i∈J]} s e'_J`.
fn scaled_wedge_oracle(m: usize, p: usize, i: usize, j: usize, lambda: &Scalar) -> ExactMatrix {
    let field = lambda.field();
    let rows = lex_subsets(m, p + 1);
    let cols = lex_subsets(m, p);
    ExactMatrix::from_fn(field, rows.len(), cols.len(), |r, c| {
        let (big, small) = (&rows[r], &cols[c]);
        if small.contains(&j) || !big.contains(&j) || !small.iter().all(|x| big.contains(x)) {
            return Scalar::zero(field);
        }
        let before = small.iter().filter(|&&x| x < j).count() as i64;
        let e = small.contains(&i) as i64 - big.contains(&i) as i64;
        &Scalar::from_i64(field, if before % 2 == 0 { 1 } else { -1 }) * &power(lambda, e)
    })
}

#[test]
fn scaling_law_for_wedge_matrices() {
    for (p, field) in [(1, Q), (2, Q), (1, GF101), (2, GF101), (3, GF101)] {
        let ctx = KoszulContext::new(p);
        let m = ctx.m();
        let mut rng = trial_rng(9, p as u64);
        for i in 1..=m {
            let lambda = random_nonzero_scalar(&mut rng, field, 30);
            let b = ScaledBasis::new(m, i, lambda.clone()).unwrap();
            let xp = scaled_basis_change(p, &b);
            let xp1_inv = scaled_basis_change(p + 1, &b).inverse().unwrap().unwrap();
            for j in 1..=m {
                let lj = ctx.wedge_basis_matrix(field, j);
                let changed = xp1_inv.mul(&lj).unwrap().mul(&xp).unwrap();
                assert_eq!(changed, scaled_wedge_oracle(m, p, i, j, &lambda));
                let expected = if j == i {
                    lj.scale(&lambda.inv().unwrap())
                } else {
                    lj.clone()
                };
                assert_eq!(changed, expected, "m={m} i={i} j={j}");
            }
        }
    }
}

fn semi_main_sum(ctx: &KoszulContext, field: FieldSpec) -> ExactMatrix {
    let s = toeplitz_basis(field, ctx.p());
    let n = ctx.dim() * (ctx.p() + 1);
    let mut sum = ExactMatrix::zeros(field, n, n);
    for i in 1..=ctx.m() {
        let term = ctx
            .wedge_basis_matrix(field, i)
            .kronecker(s.get(i))
            .unwrap();
        sum.add_assign(&term).unwrap();
    }
    sum
}

#[test]
fn tensored_base_change_scales_by_lambda_power() {
    // det(L_{E'⊗C}) = λ^{-C(2p,p)} det(L_{E⊗C}) for L = Σ L_i ⊗ S_i, and the
    // multi-index version with λ = (λ_1, …, λ_m).
    for (p, field) in [(1, Q), (2, Q), (2, GF101)] {
        let ctx = KoszulContext::new(p);
        let m = ctx.m();
        let id = ExactMatrix::identity(field, p + 1);
        let l = semi_main_sum(&ctx, field);
        let base = l.det().unwrap();
        assert!(!base.is_zero());
        let w = binomial(2 * p, p) as i64;
        let mut rng = trial_rng(10, p as u64);
        let mut x_p = ExactMatrix::identity(field, ctx.dim());
        let mut x_p1 = ExactMatrix::identity(field, ctx.dim());
        let mut product = Scalar::one(field);
        for i in 1..=m {
            let lambda = random_nonzero_scalar(&mut rng, field, 12);
            let b = ScaledBasis::new(m, i, lambda.clone()).unwrap();
            let xp = scaled_basis_change(p, &b);
            let xp1 = scaled_basis_change(p + 1, &b);
            let single = xp1
                .inverse()
                .unwrap()
                .unwrap()
                .kronecker(&id)
                .unwrap()
                .mul(&l)
                .unwrap()
                .mul(&xp.kronecker(&id).unwrap())
                .unwrap();
            assert_eq!(single.det().unwrap(), &power(&lambda, -w) * &base);
            x_p = x_p.mul(&xp).unwrap();
            x_p1 = x_p1.mul(&xp1).unwrap();
            product = &product * &lambda;
        }
        let all = x_p1
            .inverse()
            .unwrap()
            .unwrap()
            .kronecker(&id)
            .unwrap()
            .mul(&l)
            .unwrap()
            .mul(&x_p.kronecker(&id).unwrap())
            .unwrap();
        assert_eq!(all.det().unwrap(), &power(&product, -w) * &base);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_matrix_is_linear(
        p in 1usize..=2,
        u in prop::collection::vec(-6i64..=6, 5),
        v in prop::collection::vec(-6i64..=6, 5),
        alpha in -5i64..=5,
        beta in -5i64..=5,
    ) {
        let ctx = KoszulContext::new(p);
        let m = ctx.m();
        for field in [Q, GF101] {
            let (u, v) = (ints(field, &u[..m]), ints(field, &v[..m]));
            let a = Scalar::from_i64(field, alpha);
            let b = Scalar::from_i64(field, beta);
            let combo: Vec<Scalar> = u.iter().zip(&v).map(|(x, y)| &(&a * x) + &(&b * y)).collect();
            let lhs = ctx.wedge_matrix(&combo).unwrap();
            let rhs = ctx.wedge_matrix(&u).unwrap().scale(&a)
                .add(&ctx.wedge_matrix(&v).unwrap().scale(&b)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
