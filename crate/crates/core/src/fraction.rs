//! Exact rationals that print and parse as `p/q`.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fraction(pub Ratio<i64>);

impl Fraction {
    pub fn new(numer: i64, denom: i64) -> Self {
        Fraction(Ratio::new(numer, denom))
    }

    pub fn from_integer(v: i64) -> Self {
        Fraction(Ratio::from_integer(v))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> i64 {
        self.0.ceil().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Fraction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (p, q) = s.split_once('/').ok_or_else(|| format!("expected p/q, got {s:?}"))?;
        let p: i64 = p.trim().parse().map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
        let q: i64 = q.trim().parse().map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
        if q == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Fraction::new(p, q))
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_reduced_p_over_q() {
        assert_eq!(Fraction::new(20, 4).to_string(), "5/1");
        assert_eq!(Fraction::new(39, 4).to_string(), "39/4");
        assert_eq!("39/4".parse::<Fraction>().unwrap(), Fraction::new(39, 4));
        assert!("3".parse::<Fraction>().is_err());
        assert_eq!(Fraction::new(39, 4).ceil(), 10);
    }
}
