use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Result of a dichotomic measurement. `Plus` is +1 (read as "true"),
/// `Minus` is -1 (read as "false").
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const ALL: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn value(self) -> i8 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn from_value(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Outcome::Plus),
            -1 => Ok(Outcome::Minus),
            other => Err(Error::domain(format!("outcome must be 1 or -1, got {other}"))),
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }

    pub fn is_plus(self) -> bool {
        self == Outcome::Plus
    }

    pub fn negate(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }

    /// `+1` when the operands differ, `-1` when they agree.
    pub fn xor(self, other: Outcome) -> Self {
        Outcome::from_bool(self != other)
    }

    pub fn and(self, other: Outcome) -> Self {
        Outcome::from_bool(self.is_plus() && other.is_plus())
    }

    pub fn or(self, other: Outcome) -> Self {
        Outcome::from_bool(self.is_plus() || other.is_plus())
    }

    pub fn symbol(self) -> char {
        match self {
            Outcome::Plus => '+',
            Outcome::Minus => '-',
        }
    }
}

impl Neg for Outcome {
    type Output = Outcome;

    fn neg(self) -> Outcome {
        self.negate()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.value())
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Outcome::from_value(v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negation_has_no_fixed_point() {
        for o in Outcome::ALL {
            assert_ne!(o, -o);
            assert_eq!(o, -(-o));
        }
    }

    #[test]
    fn xor_truth_table() {
        use Outcome::*;
        assert_eq!(Plus.xor(Minus), Plus);
        assert_eq!(Minus.xor(Plus), Plus);
        assert_eq!(Plus.xor(Plus), Minus);
        assert_eq!(Minus.xor(Minus), Minus);
    }

    #[test]
    fn rejects_zero() {
        assert!(Outcome::from_value(0).is_err());
        assert!(serde_json::from_str::<Outcome>("2").is_err());
        assert_eq!(serde_json::from_str::<Outcome>("-1").unwrap(), Outcome::Minus);
    }
}
