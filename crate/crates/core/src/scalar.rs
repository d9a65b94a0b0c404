use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{PrimInt, Signed};

/// Integer type used for capacities, costs and flow quantities.
///
/// All arithmetic in the crate is exact; the bound is satisfied by the signed
/// primitive integers (`i32`, `i64`, `i128`, ...).
pub trait Scalar:
    PrimInt + Signed + Integer + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: PrimInt + Signed + Integer + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
}

/// A unit cost that is either finite or the "no arc" marker.
///
/// Arithmetic with [`Cost::NoArc`] is absorbing, so a missing arc can never be
/// mistaken for an expensive one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cost<T> {
    Finite(T),
    NoArc,
}

impl<T: Scalar> Cost<T> {
    pub fn zero() -> Self {
        Cost::Finite(T::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Cost::Finite(_))
    }

    pub fn finite(self) -> Option<T> {
        match self {
            Cost::Finite(c) => Some(c),
            Cost::NoArc => None,
        }
    }

    pub fn plus(self, other: Self) -> Self {
        match (self, other) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::NoArc,
        }
    }
}

impl<T: Scalar> From<Option<T>> for Cost<T> {
    fn from(value: Option<T>) -> Self {
        value.map_or(Cost::NoArc, Cost::Finite)
    }
}

impl<T: Display> Display for Cost<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Finite(c) => write!(f, "{c}"),
            Cost::NoArc => f.write_str("inf"),
        }
    }
}
