//! Weight arithmetic for the searches. Instances whose weights and total
//! fit in a machine word run on `u64`; anything larger falls back to
//! `BigUint`. Both paths run the same search code.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub(crate) trait Wt: Clone + Ord {
    fn zero() -> Self;
    fn add_assign(&mut self, rhs: &Self);
    fn sub_assign(&mut self, rhs: &Self);
    /// Floor of half, for the pairing bound.
    fn half(&self) -> Self;
    fn into_big(self) -> BigUint;
}

impl Wt for u64 {
    fn zero() -> Self {
        0
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn half(&self) -> Self {
        self >> 1
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Wt for BigUint {
    fn zero() -> Self {
        BigUint::from(0u32)
    }
    fn add_assign(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn half(&self) -> Self {
        self >> 1
    }
    fn into_big(self) -> BigUint {
        self
    }
}

/// Converts to machine words when every weight and their sum fit.
pub(crate) fn to_u64_weights(weights: &[BigUint]) -> Option<Vec<u64>> {
    let mut sum: u64 = 0;
    let mut out = Vec::with_capacity(weights.len());
    for w in weights {
        let v = w.to_u64()?;
        sum = sum.checked_add(v)?;
        out.push(v);
    }
    Some(out)
}
