use std::fmt;

use serde::{Serialize, Serializer};

/// A natural number or infinity; the distance of the zero code is `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ExtNat::Infinite
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        ExtNat::Finite(v)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(v) => s.serialize_u64(*v),
            ExtNat::Infinite => s.serialize_str("inf"),
        }
    }
}
