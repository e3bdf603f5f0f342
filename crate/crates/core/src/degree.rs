use std::fmt;
use std::ops::Add;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A degree-valued invariant: an integer or `-∞`.
///
/// `-∞` is the value of every invariant of the zero module. It serializes
/// as the string `"-inf"`; finite values serialize as integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Degree {
    #[default]
    NegInf,
    Finite(i64),
}

impl Degree {
    pub fn finite(n: usize) -> Self {
        Degree::Finite(n as i64)
    }

    /// Maximum of the values, `-∞` for an empty iterator.
    pub fn max_of(values: impl IntoIterator<Item = i64>) -> Self {
        values
            .into_iter()
            .max()
            .map_or(Degree::NegInf, Degree::Finite)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Degree::Finite(_))
    }

    pub fn value(self) -> Option<i64> {
        match self {
            Degree::Finite(v) => Some(v),
            Degree::NegInf => None,
        }
    }

    /// The value as an index into degreewise data; `None` for `-∞` and
    /// negative values.
    pub fn as_index(self) -> Option<usize> {
        self.value().and_then(|v| usize::try_from(v).ok())
    }

    /// `self <= n`.
    pub fn at_most(self, n: i64) -> bool {
        match self {
            Degree::NegInf => true,
            Degree::Finite(v) => v <= n,
        }
    }
}

impl Add<i64> for Degree {
    type Output = Degree;

    fn add(self, rhs: i64) -> Degree {
        match self {
            Degree::NegInf => Degree::NegInf,
            Degree::Finite(v) => Degree::Finite(v + rhs),
        }
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInf,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => write!(f, "-inf"),
            Degree::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::NegInf => s.serialize_str("-inf"),
            Degree::Finite(v) => s.serialize_i64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct DegreeVisitor;

        impl Visitor<'_> for DegreeVisitor {
            type Value = Degree;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an integer or \"-inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Degree, E> {
                Ok(Degree::Finite(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Degree, E> {
                i64::try_from(v)
                    .map(Degree::Finite)
                    .map_err(|_| E::custom("degree out of range"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Degree, E> {
                match v {
                    "-inf" => Ok(Degree::NegInf),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }

        d.deserialize_any(DegreeVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_arithmetic() {
        assert!(Degree::NegInf < Degree::Finite(-100));
        assert_eq!(Degree::max_of([]), Degree::NegInf);
        assert_eq!(Degree::max_of([3, 1]), Degree::Finite(3));
        assert_eq!(Degree::NegInf + 5, Degree::NegInf);
        assert_eq!(Degree::Finite(2) + Degree::Finite(3), Degree::Finite(5));
        assert_eq!(Degree::Finite(2) + Degree::NegInf, Degree::NegInf);
    }

    #[test]
    fn json_tokens() {
        assert_eq!(serde_json::to_string(&Degree::NegInf).unwrap(), "\"-inf\"");
        assert_eq!(serde_json::to_string(&Degree::Finite(3)).unwrap(), "3");
        let d: Vec<Degree> = serde_json::from_str("[\"-inf\", 2, -1]").unwrap();
        assert_eq!(d, vec![Degree::NegInf, Degree::Finite(2), Degree::Finite(-1)]);
        assert!(serde_json::from_str::<Degree>("\"inf\"").is_err());
    }
}
