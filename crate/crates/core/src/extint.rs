use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// An integer extended by a single point at positive infinity.
///
/// Valuations take values here: the valuation of zero is `Infinity`, every
/// other value is `Finite`. `Infinity` is greater than every finite value,
/// absorbs addition, and equals itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtInt {
    Finite(i64),
    Infinity,
}

impl ExtInt {
    pub fn is_infinite(self) -> bool {
        matches!(self, ExtInt::Infinity)
    }

    /// The finite value, or `None` at infinity.
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Finite(n) => Some(n),
            ExtInt::Infinity => None,
        }
    }

    pub fn min(self, other: ExtInt) -> ExtInt {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Checks `self >= bound` for a finite bound; infinity clears every bound.
    pub fn at_least(self, bound: i64) -> bool {
        match self {
            ExtInt::Finite(n) => n >= bound,
            ExtInt::Infinity => true,
        }
    }
}

impl From<i64> for ExtInt {
    fn from(n: i64) -> Self {
        ExtInt::Finite(n)
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtInt::Infinity, ExtInt::Infinity) => Ordering::Equal,
            (ExtInt::Infinity, ExtInt::Finite(_)) => Ordering::Greater,
            (ExtInt::Finite(_), ExtInt::Infinity) => Ordering::Less,
            (ExtInt::Finite(a), ExtInt::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: ExtInt) -> ExtInt {
        match (self, rhs) {
            (ExtInt::Finite(a), ExtInt::Finite(b)) => ExtInt::Finite(a + b),
            _ => ExtInt::Infinity,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Finite(n) => write!(f, "{n}"),
            ExtInt::Infinity => write!(f, "inf"),
        }
    }
}

impl serde::Serialize for ExtInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtInt::Finite(n) => s.serialize_i64(*n),
            ExtInt::Infinity => s.serialize_str("inf"),
        }
    }
}
