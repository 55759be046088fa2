//! The Klein four-group `Z2 x Z2`, written additively as `{0, a, b, c}`.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error};

/// An element of `Z2 x Z2`. The nonzero elements double as edge colors.
/// The discriminants are the bit encodings, so addition is XOR.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Elem {
    Zero = 0,
    A = 1,
    B = 2,
    C = 3,
}

pub const COLORS: [Elem; 3] = [Elem::A, Elem::B, Elem::C];

impl Elem {
    pub fn from_bits(bits: u8) -> Elem {
        match bits & 3 {
            0 => Elem::Zero,
            1 => Elem::A,
            2 => Elem::B,
            _ => Elem::C,
        }
    }

    pub fn bits(self) -> u8 {
        self as u8
    }

    pub fn is_zero(self) -> bool {
        self == Elem::Zero
    }

    pub fn symbol(self) -> char {
        match self {
            Elem::Zero => '0',
            Elem::A => 'a',
            Elem::B => 'b',
            Elem::C => 'c',
        }
    }

    /// The nonzero element different from both arguments.
    pub fn third(x: Elem, y: Elem) -> Elem {
        x + y
    }
}

impl Add for Elem {
    type Output = Elem;
    // the group law on the bit encoding is XOR
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem::from_bits(self.bits() ^ rhs.bits())
    }
}

impl AddAssign for Elem {
    fn add_assign(&mut self, rhs: Elem) {
        *self = *self + rhs;
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Elem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Elem, Error> {
        match s {
            "0" => Ok(Elem::Zero),
            "a" => Ok(Elem::A),
            "b" => Ok(Elem::B),
            "c" => Ok(Elem::C),
            _ => Err(invalid(format!("not a group element: {s:?}"))),
        }
    }
}

impl Serialize for Elem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.symbol().to_string())
    }
}

impl<'de> Deserialize<'de> for Elem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Elem, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_group_table() {
        assert_eq!(Elem::A + Elem::B, Elem::C);
        assert_eq!(Elem::B + Elem::C, Elem::A);
        for x in [Elem::Zero, Elem::A, Elem::B, Elem::C] {
            assert_eq!(x + x, Elem::Zero);
            assert_eq!(x + Elem::Zero, x);
            assert_eq!(x.symbol().to_string().parse::<Elem>().unwrap(), x);
        }
        assert_eq!(Elem::A + Elem::B + Elem::C, Elem::Zero);
        assert!("d".parse::<Elem>().is_err());
    }
}
