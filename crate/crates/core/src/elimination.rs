//! Elimination kernels behind [`ExactMatrix::rank`](crate::ExactMatrix::rank)
//! and [`ExactMatrix::det`](crate::ExactMatrix::det).
//!
//! Prime fields use ordinary Gaussian elimination on `u64` representatives
//! (every product of two residues below `2^31` fits in 62 bits). Rational
//! matrices are first scaled row-wise to integers and then reduced with
//! fraction-free Bareiss elimination, attempted in `i128` and redone over
//! `BigInt` if any intermediate overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rank and determinant data from an elimination pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Echelon<T> {
    pub rank: usize,
    /// Determinant of the input when it is square, otherwise unspecified.
    pub det: T,
}

pub(crate) fn eliminate_mod(data: &mut [u64], rows: usize, cols: usize, p: u64) -> Echelon<u64> {
    debug_assert_eq!(data.len(), rows * cols);
    let mut rank = 0;
    let mut det = 1 % p;
    let mut negate = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| data[r * cols + col] != 0) else {
            det = 0;
            continue;
        };
        if pivot_row != rank {
            for j in col..cols {
                data.swap(rank * cols + j, pivot_row * cols + j);
            }
            negate = !negate;
        }
        let pivot = data[rank * cols + col];
        det = det * pivot % p;
        let pivot_inv = crate::field::pow_mod(pivot, p - 2, p);

        let (head, tail) = data.split_at_mut((rank + 1) * cols);
        let pivot_slice = &head[rank * cols + col..rank * cols + cols];
        for row in tail.chunks_exact_mut(cols) {
            let lead = row[col];
            if lead == 0 {
                continue;
            }
            let factor = p - lead * pivot_inv % p;
            for (x, &y) in row[col..].iter_mut().zip(pivot_slice) {
                *x = (*x + factor * y) % p;
            }
        }
        rank += 1;
    }
    if rank < rows.min(cols) || rows != cols {
        det = 0;
    }
    if negate && det != 0 {
        det = p - det;
    }
    Echelon { rank, det }
}

/// Integer types usable by the Bareiss kernel.
pub(crate) trait BareissInt: Clone {
    fn is_zero(&self) -> bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn neg(&self) -> Self;
    /// `(a*b - c*d) / e`, exact by the Bareiss invariant; `None` on overflow.
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
}

impl BareissInt for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        let x = a.checked_mul(*b)?;
        let y = c.checked_mul(*d)?;
        Some(x.checked_sub(y)? / *e)
    }
}

impl BareissInt for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn neg(&self) -> Self {
        -self
    }
    fn cross_div(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        Some((a * b - c * d) / e)
    }
}

/// Fraction-free elimination; `None` if the integer type overflowed.
pub(crate) fn bareiss<T: BareissInt>(
    data: &mut [T],
    rows: usize,
    cols: usize,
) -> Option<Echelon<T>> {
    let mut rank = 0;
    let mut prev = T::one();
    let mut negate = false;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot_row) = (rank..rows).find(|&r| !data[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            for j in 0..cols {
                data.swap(rank * cols + j, pivot_row * cols + j);
            }
            negate = !negate;
        }
        let (head, tail) = data.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        let pivot = pivot_row[col].clone();
        for row in tail.chunks_exact_mut(cols) {
            let lead = row[col].clone();
            for j in col + 1..cols {
                row[j] = T::cross_div(&pivot, &row[j], &lead, &pivot_row[j], &prev)?;
            }
            row[col] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    let square_full = rows == cols && rank == rows;
    let det = if square_full {
        if negate {
            prev.neg()
        } else {
            prev
        }
    } else {
        T::zero()
    };
    Some(Echelon { rank, det })
}

/// Bareiss on integer input, trying the `i128` fast path first.
pub(crate) fn bareiss_bigint(data: Vec<BigInt>, rows: usize, cols: usize) -> Echelon<BigInt> {
    let bits: u64 = data.iter().map(|x| x.bits()).max().unwrap_or(0);
    if bits < 100 {
        let mut small: Vec<i128> = data
            .iter()
            .map(|x| i128::try_from(x).expect("fits in i128"))
            .collect();
        if let Some(e) = bareiss(&mut small, rows, cols) {
            return Echelon {
                rank: e.rank,
                det: BigInt::from(e.det),
            };
        }
    }
    let mut big = data;
    bareiss(&mut big, rows, cols).expect("BigInt never overflows")
}

/// Scales each row by the lcm of its denominators. Returns the integer matrix
/// and the product of the scale factors.
pub(crate) fn clear_denominators(
    entries: &[num_rational::BigRational],
    rows: usize,
    cols: usize,
) -> (Vec<BigInt>, BigInt) {
    let mut out = Vec::with_capacity(rows * cols);
    let mut scale: BigInt = One::one();
    for r in 0..rows {
        let row = &entries[r * cols..(r + 1) * cols];
        let l = row
            .iter()
            .fold(<BigInt as One>::one(), |acc: BigInt, q| acc.lcm(q.denom()));
        for q in row {
            out.push(q.numer() * (&l / q.denom()));
        }
        scale *= &l;
    }
    debug_assert!(scale.is_positive());
    (out, scale)
}
