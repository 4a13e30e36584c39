//! Scalar abstractions shared by the polynomial and linear-algebra code.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, Signed};

/// A signed commutative ring element with exact (or, for floats, best-effort)
/// arithmetic. Division is only required to be exact where the algorithm
/// guarantees divisibility (Bareiss elimination).
pub trait Scalar: Clone + Debug + Num + Signed + PartialOrd {}

impl<T: Clone + Debug + Num + Signed + PartialOrd> Scalar for T {}

/// Marker for scalars whose division is field division.
pub trait Field: Scalar {}

impl Field for BigRational {}
impl Field for Ratio<i64> {}
impl Field for Ratio<i128> {}
impl Field for f64 {}
impl Field for f32 {}

/// Scalars that can be built from machine and big integers.
pub trait FromInteger: Scalar {
    fn from_i64(v: i64) -> Self;
    fn from_bigint(v: &BigInt) -> Self;
}

macro_rules! from_integer_prim {
    ($($t:ty),*) => {$(
        impl FromInteger for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn from_bigint(v: &BigInt) -> Self {
                num_traits::ToPrimitive::to_f64(v).map(|f| f as $t).unwrap_or(<$t>::NAN)
            }
        }
    )*};
}
from_integer_prim!(f32, f64);

impl FromInteger for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
}

impl FromInteger for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
}

impl FromInteger for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn from_bigint(v: &BigInt) -> Self {
        i64::try_from(v).expect("integer does not fit in i64")
    }
}

impl FromInteger for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn from_bigint(v: &BigInt) -> Self {
        i128::try_from(v).expect("integer does not fit in i128")
    }
}
