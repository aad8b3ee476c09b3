//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Everything runs in checked `i128` first and is redone in `BigInt` when an
//! intermediate value overflows, so callers always get exact answers.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

pub(crate) trait ExactInt: Clone + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn signum(&self) -> i32;
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if *other == 0 {
            return None;
        }
        debug_assert_eq!(self % other, 0, "inexact Bareiss division");
        self.checked_div(*other)
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        debug_assert!((self % other).is_zero(), "inexact Bareiss division");
        Some(self / other)
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Leading principal minors of the row-major `n`×`n` matrix `a`, stopping after
/// the first zero minor. `None` on overflow.
pub(crate) fn leading_minors<T: ExactInt>(n: usize, a: &[i64]) -> Option<Vec<T>> {
    let mut m: Vec<T> = a.iter().map(|&v| T::from_i64(v)).collect();
    let mut prev = T::from_i64(1);
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let piv = m[k * n + k].clone();
        minors.push(piv.clone());
        if piv.signum() == 0 {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = piv
                    .mul(&m[i * n + j])?
                    .sub(&m[i * n + k].mul(&m[k * n + j])?)?
                    .div_exact(&prev)?;
                m[i * n + j] = v;
            }
        }
        prev = piv;
    }
    Some(minors)
}

pub(crate) fn leading_minors_big(n: usize, a: &[i64]) -> Vec<BigInt> {
    match leading_minors::<i128>(n, a) {
        Some(v) => v.iter().map(ExactInt::to_big).collect(),
        None => leading_minors::<BigInt>(n, a).expect("BigInt elimination cannot overflow"),
    }
}

/// Sylvester test: a symmetric matrix is negative definite iff its k-th leading
/// minor has sign (-1)^k for every k.
pub(crate) fn is_negative_definite(n: usize, a: &[i64]) -> bool {
    fn signs_ok<T: ExactInt>(n: usize, minors: &[T]) -> bool {
        minors.len() == n
            && minors
                .iter()
                .enumerate()
                .all(|(k, d)| d.signum() == if k % 2 == 0 { -1 } else { 1 })
    }
    match leading_minors::<i128>(n, a) {
        Some(m) => signs_ok(n, &m),
        None => signs_ok(n, &leading_minors::<BigInt>(n, a).expect("no overflow in BigInt")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SolveFailure {
    Overflow,
    Singular,
}

/// Solves `a x = b` for a matrix whose leading principal minors are all
/// non-zero. Returns `(numerators, det)` with `x_i = numerators[i] / det`.
pub(crate) fn solve<T: ExactInt>(
    n: usize,
    a: &[i64],
    b: &[i64],
) -> Result<(Vec<T>, T), SolveFailure> {
    let w = n + 1;
    let mut m: Vec<T> = Vec::with_capacity(n * w);
    for i in 0..n {
        for j in 0..n {
            m.push(T::from_i64(a[i * n + j]));
        }
        m.push(T::from_i64(b[i]));
    }
    let ovf = |o: Option<T>| o.ok_or(SolveFailure::Overflow);
    let mut prev = T::from_i64(1);
    for k in 0..n {
        let piv = m[k * w + k].clone();
        if piv.signum() == 0 {
            return Err(SolveFailure::Singular);
        }
        for i in k + 1..n {
            for j in k + 1..w {
                let t = ovf(piv.mul(&m[i * w + j]))?;
                let u = ovf(m[i * w + k].mul(&m[k * w + j]))?;
                let v = ovf(t.sub(&u))?;
                m[i * w + j] = ovf(v.div_exact(&prev))?;
            }
        }
        prev = piv;
    }
    let det = m[(n - 1) * w + (n - 1)].clone();
    let mut x: Vec<T> = vec![T::from_i64(0); n];
    for i in (0..n).rev() {
        let mut acc = ovf(det.mul(&m[i * w + n]))?;
        for j in i + 1..n {
            acc = ovf(acc.sub(&ovf(m[i * w + j].mul(&x[j]))?))?;
        }
        x[i] = ovf(acc.div_exact(&m[i * w + i]))?;
    }
    Ok((x, det))
}

/// [`solve`] with automatic promotion to `BigInt`. `None` if singular.
pub(crate) fn solve_big(n: usize, a: &[i64], b: &[i64]) -> Option<(Vec<BigInt>, BigInt)> {
    match solve::<i128>(n, a, b) {
        Ok((x, d)) => Some((x.iter().map(ExactInt::to_big).collect(), d.to_big())),
        Err(SolveFailure::Singular) => None,
        Err(SolveFailure::Overflow) => match solve::<BigInt>(n, a, b) {
            Ok(r) => Some(r),
            Err(_) => None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minors_of_a2() {
        let m = leading_minors_big(2, &[-2, 1, 1, -2]);
        assert_eq!(m, vec![BigInt::from(-2), BigInt::from(3)]);
        assert!(is_negative_definite(2, &[-2, 1, 1, -2]));
        assert!(!is_negative_definite(2, &[-1, 2, 2, -1]));
        assert!(!is_negative_definite(2, &[-2, 2, 2, -2]));
    }

    #[test]
    fn solve_small_system() {
        // [-2 1; 1 -2] x = [1, 0]  =>  x = (-2/3, -1/3)
        let (x, d) = solve_big(2, &[-2, 1, 1, -2], &[1, 0]).unwrap();
        assert_eq!(d, BigInt::from(3));
        assert_eq!(x, vec![BigInt::from(-2), BigInt::from(-1)]);
    }

    #[test]
    fn big_path_agrees_with_i128_path() {
        let a = [-7, 3, 1, 3, -5, 2, 1, 2, -9];
        let b = [4, -1, 6];
        let (x1, d1) = solve::<i128>(3, &a, &b).unwrap();
        let (x2, d2) = solve::<BigInt>(3, &a, &b).unwrap();
        assert_eq!(d1.to_big(), d2);
        assert_eq!(x1.iter().map(ExactInt::to_big).collect::<Vec<_>>(), x2);
    }
}
