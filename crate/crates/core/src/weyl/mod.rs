//! Finite Weyl groups realized through their action on a root system.
//!
//! Elements are stored by the images of the simple roots, which determines
//! them uniquely and works the same way for every family. The classical
//! families also carry the permutation model on `{1, ..., n+1}` (type A) or
//! on `{1, ..., 2n}` commuting with `i -> 2n+1-i` (types B, C, D).

mod bruhat;
mod charpoly;
mod classes;
mod group;
mod perm;
mod roots;
mod table;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bruhat::{bruhat_interval, subword_products};
pub use charpoly::CharPoly;
pub use classes::{classes_by_cycle_type, ConjugacyClass};
pub use group::{WeylElement, WeylGroup};
pub use perm::{cycle_type, BigPermutation};
pub use table::ElementTable;

/// Default bound on the number of group elements any enumeration may visit.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            other => return Err(Error::UnsupportedSpec(other.to_string())),
        })
    }
}

/// A Cartan type such as `A3` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoxeterSpec {
    pub family: Family,
    pub rank: usize,
}

impl CoxeterSpec {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => true,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CoxeterSpec { family, rank })
        } else {
            Err(Error::UnsupportedSpec(format!("{family}{rank}")))
        }
    }

    /// Order of the Weyl group from the classical product formulas.
    pub fn group_order(&self) -> BigUint {
        let n = self.rank as u64;
        let fact = |m: u64| (1..=m).fold(BigUint::from(1u32), |a, k| a * k);
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => fact(n) << n,
            Family::D => fact(n) << (n - 1),
            Family::E => BigUint::from(match n {
                6 => 51_840u64,
                7 => 2_903_040,
                _ => 696_729_600,
            }),
            Family::F => BigUint::from(1152u32),
            Family::G => BigUint::from(12u32),
        }
    }

    /// Size of the set that the big-permutation model acts on.
    pub fn permutation_degree(&self) -> Option<usize> {
        match self.family {
            Family::A => Some(self.rank + 1),
            Family::B | Family::C | Family::D => Some(2 * self.rank),
            _ => None,
        }
    }
}

impl fmt::Display for CoxeterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CoxeterSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::UnsupportedSpec(s.to_string());
        let mut chars = s.chars();
        let family: Family = chars.next().ok_or_else(bad)?.to_string().parse()?;
        let rank = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        CoxeterSpec::new(family, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_bounds() {
        assert!(CoxeterSpec::new(Family::A, 1).is_ok());
        assert!(CoxeterSpec::new(Family::A, 0).is_ok());
        assert!(CoxeterSpec::new(Family::B, 1).is_err());
        assert!(CoxeterSpec::new(Family::D, 3).is_err());
        assert!(CoxeterSpec::new(Family::E, 9).is_err());
        assert!(CoxeterSpec::new(Family::F, 4).is_ok());
        assert!(CoxeterSpec::new(Family::G, 3).is_err());
    }

    #[test]
    fn parse() {
        let s: CoxeterSpec = "E8".parse().unwrap();
        assert_eq!(s, CoxeterSpec { family: Family::E, rank: 8 });
        let s: CoxeterSpec = "b_2".parse().unwrap();
        assert_eq!(s.to_string(), "B2");
        assert!("X3".parse::<CoxeterSpec>().is_err());
        assert!("A".parse::<CoxeterSpec>().is_err());
    }
}
