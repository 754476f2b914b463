mod common;

use common::{int_matrix, leibniz_det, minor_rank};
use koszul::sampling::{random_matrix, trial_rng};
use koszul::{ExactMatrix, FieldSpec, KoszulContext, Scalar};
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;
const GF101: FieldSpec = FieldSpec::Prime(101);

fn small_int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, rows * cols)
}

fn from_flat(field: FieldSpec, rows: usize, cols: usize, data: &[i64]) -> ExactMatrix {
    ExactMatrix::from_fn(field, rows, cols, |r, c| {
        Scalar::from_i64(field, data[r * cols + c])
    })
}

#[test]
fn m111_for_p1_is_singular() {
    // M(1,1,1) = L_1 + L_2 + L_3
    let ctx = KoszulContext::new(1);
    let ones = vec![Scalar::one(Q); 3];
    let m = ctx.wedge_matrix(&ones).unwrap();
    assert_eq!(m, int_matrix(Q, &[[-1, 1, 0], [-1, 0, 1], [0, -1, 1]]));
    assert!(leibniz_det(&m).is_zero());
    assert!(m.det().unwrap().is_zero());
    assert_eq!(m.rank(), 2);
}

#[test]
fn a111_for_p1_has_unit_determinant() {
    let ctx = KoszulContext::new(1);
    let a = koszul::semi_main_matrix(&ctx, &vec![Scalar::one(Q); 3]).unwrap();
    let oracle = leibniz_det(&a);
    assert_eq!(a.det().unwrap(), oracle);
    assert_eq!(oracle.to_i64().unwrap().abs(), 1);
}

#[test]
fn block_matrix_from_kronecker_products() {
    // t = (1,1,1): A = (−S2 S1 0 / −S3 0 S1 / 0 −S3 S2)
    let ctx = KoszulContext::new(1);
    let s = koszul::toeplitz_basis(Q, 1);
    let mut sum = ExactMatrix::zeros(Q, 6, 6);
    for i in 1..=3 {
        sum.add_assign(&ctx.wedge_basis_matrix(Q, i).kronecker(s.get(i)).unwrap())
            .unwrap();
    }
    let expected = int_matrix(
        Q,
        &[
            [-1, 0, 0, 1, 0, 0],
            [0, -1, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1],
            [-1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 0, -1, 0, 0, 1],
        ],
    );
    assert_eq!(sum, expected);
}

#[test]
fn direct_sum_of_s1_with_itself() {
    let s1 = koszul::toeplitz_basis(Q, 1).get(1).clone();
    let d = s1.direct_sum(&s1).unwrap();
    let ones: Vec<_> = (0..4)
        .flat_map(|r| (0..4).map(move |c| (r, c)))
        .filter(|&(r, c)| !d.get(r, c).is_zero())
        .collect();
    assert_eq!(ones, vec![(0, 1), (2, 3)]);
}

#[test]
fn kronecker_rank_exhaustive_gf2() {
    let f = FieldSpec::Prime(2);
    let all: Vec<ExactMatrix> = (0..16u32)
        .map(|bits| {
            ExactMatrix::from_fn(f, 2, 2, |r, c| {
                Scalar::from_i64(f, ((bits >> (2 * r + c)) & 1) as i64)
            })
        })
        .collect();
    for a in &all {
        for b in &all {
            assert_eq!(a.kronecker(b).unwrap().rank(), a.rank() * b.rank());
        }
    }
}

#[test]
fn rank_agrees_with_minor_oracle() {
    for seed in 0..40 {
        let mut rng = trial_rng(seed, 0);
        let field = if seed % 2 == 0 {
            Q
        } else {
            FieldSpec::Prime(3)
        };
        let a = random_matrix(&mut rng, field, 3, 4, 1);
        assert_eq!(a.rank(), minor_rank(&a), "{a:?}");
    }
}

#[test]
fn large_prime_rank_and_det() {
    let f = FieldSpec::prime(2_147_483_629).unwrap();
    let mut rng = trial_rng(5, 0);
    let a = random_matrix(&mut rng, f, 5, 5, 0);
    assert_eq!(a.det().unwrap(), leibniz_det(&a));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn det_matches_leibniz(data in small_int_matrix(4, 4)) {
        for field in [Q, FieldSpec::Prime(7)] {
            let a = from_flat(field, 4, 4, &data);
            prop_assert_eq!(a.det().unwrap(), leibniz_det(&a));
        }
    }

    #[test]
    fn kronecker_rank_multiplies(a in small_int_matrix(3, 2), b in small_int_matrix(2, 3)) {
        for field in [Q, GF101] {
            let a = from_flat(field, 3, 2, &a);
            let b = from_flat(field, 2, 3, &b);
            prop_assert_eq!(a.kronecker(&b).unwrap().rank(), a.rank() * b.rank());
        }
    }

    #[test]
    fn kronecker_det_formula(a in small_int_matrix(2, 2), b in small_int_matrix(3, 3)) {
        // det(A ⊗ B) = det(A)^3 det(B)^2 for A 2x2, B 3x3
        let a = from_flat(Q, 2, 2, &a);
        let b = from_flat(Q, 3, 3, &b);
        let lhs = a.kronecker(&b).unwrap().det().unwrap();
        let rhs = &a.det().unwrap().pow(3).unwrap() * &b.det().unwrap().pow(2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn direct_sum_rank_adds(a in small_int_matrix(3, 3), b in small_int_matrix(2, 4)) {
        let a = from_flat(Q, 3, 3, &a);
        let b = from_flat(Q, 2, 4, &b);
        prop_assert_eq!(a.direct_sum(&b).unwrap().rank(), a.rank() + b.rank());
    }

    #[test]
    fn rank_invariant_under_permutation_and_scaling(
        data in small_int_matrix(4, 5),
        row_perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(),
        col_perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(),
        scales in prop::collection::vec(1i64..=6, 4),
    ) {
        for field in [Q, GF101] {
            let a = from_flat(field, 4, 5, &data);
            let permuted = a.submatrix(&row_perm, &col_perm).unwrap();
            let scaled = ExactMatrix::from_fn(field, 4, 5, |r, c| {
                a.get(r, c) * &Scalar::from_i64(field, if r % 2 == 0 { scales[r] } else { -scales[r] })
            });
            prop_assert_eq!(permuted.rank(), a.rank());
            prop_assert_eq!(scaled.rank(), a.rank());
        }
    }

    #[test]
    fn reduction_mod_p_never_increases_rank(data in small_int_matrix(4, 4), p in prop::sample::select(vec![2u64, 3, 5])) {
        let a = from_flat(Q, 4, 4, &data);
        let reduced = a.to_field(FieldSpec::prime(p).unwrap()).unwrap();
        prop_assert!(reduced.rank() <= a.rank());
    }

    #[test]
    fn rational_det_multiplicative(a in small_int_matrix(3, 3), b in small_int_matrix(3, 3)) {
        let a = from_flat(Q, 3, 3, &a);
        let b = from_flat(Q, 3, 3, &b);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }
}
