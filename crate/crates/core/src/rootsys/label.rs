use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RootSysError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
        Family::BC,
    ];

    fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        }
    }
}

/// Type of a finite irreducible root system, e.g. `A_2` or `BC_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TypeLabel {
    pub family: Family,
    pub rank: usize,
}

pub fn admissible(family: Family, rank: usize) -> bool {
    match family {
        Family::A | Family::B | Family::C | Family::BC => rank >= 1,
        Family::D => rank >= 3,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    }
}

impl TypeLabel {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSysError> {
        if admissible(family, rank) {
            Ok(TypeLabel { family, rank })
        } else {
            Err(RootSysError::Inadmissible(format!(
                "{}_{}",
                family.name(),
                rank
            )))
        }
    }

    /// Representative of the isomorphism class: `B_1`, `C_1` become `A_1`,
    /// `B_2` becomes `C_2`, `D_3` becomes `A_3`.
    pub fn canonical(self) -> TypeLabel {
        use Family::*;
        match (self.family, self.rank) {
            (B | C, 1) => TypeLabel { family: A, rank: 1 },
            (B, 2) => TypeLabel { family: C, rank: 2 },
            (D, 3) => TypeLabel { family: A, rank: 3 },
            _ => self,
        }
    }

    /// Isomorphic root systems.
    pub fn same_class(self, other: TypeLabel) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn is_reduced(self) -> bool {
        self.family != Family::BC
    }

    /// Every admissible label of the given rank, in family order.
    pub fn all_of_rank(rank: usize) -> Vec<TypeLabel> {
        Family::ALL
            .iter()
            .filter(|&&f| admissible(f, rank))
            .map(|&family| TypeLabel { family, rank })
            .collect()
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family.name(), self.rank)
    }
}

impl FromStr for TypeLabel {
    type Err = RootSysError;

    /// Accepts `A_2`, `A2`, `BC_1`, `bc1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_uppercase();
        let split = t
            .find(|c: char| c.is_ascii_digit() || c == '_')
            .unwrap_or(t.len());
        let (fam, rest) = t.split_at(split);
        let rank: usize = rest
            .trim_start_matches('_')
            .parse()
            .map_err(|_| RootSysError::Inadmissible(s.to_string()))?;
        let family = Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == fam)
            .ok_or_else(|| RootSysError::Inadmissible(s.to_string()))?;
        TypeLabel::new(family, rank)
    }
}

impl TryFrom<String> for TypeLabel {
    type Error = RootSysError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<TypeLabel> for String {
    fn from(t: TypeLabel) -> String {
        t.to_string()
    }
}
