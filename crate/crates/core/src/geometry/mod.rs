//! Exact planar geometry over `ℚ²` and integer lattice primitives.
//!
//! Nothing in this module touches floating point; every cone decision is
//! made on reduced fractions.

mod cone;
mod lattice;

pub use cone::{
    find_apex_functional, in_cone2, in_cone_many, is_unimodular_pair, positive_combination,
    ConeMembership, ManyMembership, MembershipStatus,
};
pub use lattice::{
    lattice_quotient_factors, row_lattice_basis, smith_invariant_factors, IntMat, SmithForm,
};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational scalar. Magnitudes in this crate stay tiny, so `i128`
/// numerators and denominators never come close to overflowing.
pub type Rat = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rat {
    Rat::new(n, d)
}

pub fn int(n: i128) -> Rat {
    Rat::from_integer(n)
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = i128::from_str(n.trim()).map_err(|_| bad())?;
            let d = i128::from_str(d.trim()).map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => i128::from_str(s).map(Rat::from_integer).map_err(|_| bad()),
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A point (or covector) of `ℚ²` in canonical reduced form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rat2 {
    pub x: Rat,
    pub y: Rat,
}

impl Rat2 {
    pub const ZERO: Rat2 = Rat2 {
        x: Ratio::new_raw(0, 1),
        y: Ratio::new_raw(0, 1),
    };

    pub fn new(x: Rat, y: Rat) -> Self {
        Rat2 { x, y }
    }

    pub fn from_ints(x: i128, y: i128) -> Self {
        Rat2 {
            x: int(x),
            y: int(y),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `x₁y₂ − y₁x₂`, the determinant of the pair as columns.
    pub fn cross(&self, other: &Rat2) -> Rat {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(&self, other: &Rat2) -> Rat {
        self.x * other.x + self.y * other.y
    }

    pub fn scale(&self, s: Rat) -> Rat2 {
        Rat2::new(self.x * s, self.y * s)
    }

    /// Counter-clockwise quarter turn.
    pub fn rot90(&self) -> Rat2 {
        Rat2::new(-self.y, self.x)
    }

    pub fn is_integer(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn to_integer(&self) -> Result<[i128; 2]> {
        if self.is_integer() {
            Ok([self.x.to_integer(), self.y.to_integer()])
        } else {
            Err(Error::NonInteger(self.to_string()))
        }
    }

    pub fn to_f64(&self) -> [f64; 2] {
        [rat_to_f64(&self.x), rat_to_f64(&self.y)]
    }

    /// Least common multiple of the two denominators.
    pub fn denom_lcm(&self) -> i128 {
        num_integer::lcm(*self.x.denom(), *self.y.denom())
    }

    pub fn abs_max(&self) -> Rat {
        if self.x.abs() > self.y.abs() {
            self.x.abs()
        } else {
            self.y.abs()
        }
    }
}

impl From<[i64; 2]> for Rat2 {
    fn from(v: [i64; 2]) -> Self {
        Rat2::from_ints(v[0] as i128, v[1] as i128)
    }
}

impl Add for Rat2 {
    type Output = Rat2;
    fn add(self, o: Rat2) -> Rat2 {
        Rat2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Rat2 {
    type Output = Rat2;
    fn sub(self, o: Rat2) -> Rat2 {
        Rat2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Rat2 {
    type Output = Rat2;
    fn neg(self) -> Rat2 {
        Rat2::new(-self.x, -self.y)
    }
}

impl Mul<Rat2> for Rat {
    type Output = Rat2;
    fn mul(self, v: Rat2) -> Rat2 {
        v.scale(self)
    }
}

impl fmt::Display for Rat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Serializes a rational as a JSON integer when integral and as a
/// `"p/q"` string otherwise.
pub mod rat_serde {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        if r.is_integer() {
            let n = r.to_integer();
            if let Ok(n) = i64::try_from(n) {
                return s.serialize_i64(n);
            }
        }
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"p/q\" string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rat, E> {
                Ok(Rat::from_integer(v as i128))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rat, E> {
                Ok(Rat::from_integer(v as i128))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                parse_rat(v).map_err(E::custom)
            }
        }
        d.deserialize_any(RatVisitor)
    }
}

/// Serde wrapper so that a bare [`Rat`] can sit inside derived structs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RatJson(pub Rat);

impl Serialize for RatJson {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rat_serde::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for RatJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rat_serde::deserialize(d).map(RatJson)
    }
}

impl Serialize for Rat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&RatJson(self.x))?;
        t.serialize_element(&RatJson(self.y))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Rat2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[RatJson; 2]>::deserialize(d)?;
        Ok(Rat2::new(x.0, y.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_reduce() {
        assert_eq!(parse_rat("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rat(" -5 ").unwrap(), int(-5));
        assert_eq!(parse_rat("2/-4").unwrap(), rat(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn canonical_form() {
        let r = rat(4, -6);
        assert_eq!(*r.numer(), -2);
        assert_eq!(*r.denom(), 3);
    }

    #[test]
    fn json_shape() {
        let v = Rat2::new(rat(-1, 3), int(2));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["-1/3",2]"#);
        let back: Rat2 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn non_integer_rejected() {
        assert!(Rat2::new(rat(1, 2), int(0)).to_integer().is_err());
        assert_eq!(Rat2::from_ints(3, -4).to_integer().unwrap(), [3, -4]);
    }
}
