//! Exact rational dense linear algebra.
//!
//! Everything here works over arbitrary-precision rationals; nothing is ever
//! rounded. Matrices are dense and row-major, subspaces carry a canonical
//! reduced echelon basis so that equality of subspaces is structural.

mod echelon;
mod matrix;
mod subspace;
mod symbolic;

pub use echelon::{rref, Rref};
pub use matrix::Matrix;
pub use subspace::{Subspace, SubspaceOps};
pub use symbolic::{combine, const_mul_vec, ConstraintSystem, LinExpr, SymMatrix};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar, always kept in lowest terms with a positive denominator.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p"`, `"-p"` or `"p/q"` into an exact rational.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Formats a scalar as `"p"` or `"p/q"`.
pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

/// Zero vector of the given length.
pub fn zero_vec(len: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); len]
}

/// Standard basis vector `e_index` of the given length.
pub fn unit_vec(len: usize, index: usize) -> Vec<Scalar> {
    let mut v = zero_vec(len);
    v[index] = Scalar::one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_from_i64(values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| int(v)).collect()
}

pub(crate) fn axpy(acc: &mut [Scalar], coeff: &Scalar, x: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += coeff * b;
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}
