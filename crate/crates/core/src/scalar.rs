//! The integer scalar abstraction shared by every exact routine.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact, signed, Euclidean integer type.
///
/// Implemented for the machine integers and for [`BigInt`]. Nothing in this
/// crate uses floating point: determinant signs are classification data.
pub trait IntScalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("usize fits the scalar type")
    }

    /// Lossless widening into an arbitrary-precision integer.
    fn to_bigint(&self) -> BigInt;
}

impl IntScalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

impl IntScalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntScalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl IntScalar for i32 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}
