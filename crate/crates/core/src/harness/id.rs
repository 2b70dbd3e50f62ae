use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Catalog identifiers, numbered by the order the identities are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    I1,
    I1Ext,
    I2,
    I3,
    I4,
    I5,
    I6,
    I7,
    I8,
    I9,
    I10,
    I11,
    I12,
    I13,
}

impl IdentityId {
    pub const ALL: [IdentityId; 14] = [
        IdentityId::I1,
        IdentityId::I1Ext,
        IdentityId::I2,
        IdentityId::I3,
        IdentityId::I4,
        IdentityId::I5,
        IdentityId::I6,
        IdentityId::I7,
        IdentityId::I8,
        IdentityId::I9,
        IdentityId::I10,
        IdentityId::I11,
        IdentityId::I12,
        IdentityId::I13,
    ];

    pub fn label(self) -> &'static str {
        match self {
            IdentityId::I1 => "I1",
            IdentityId::I1Ext => "I1-ext",
            IdentityId::I2 => "I2",
            IdentityId::I3 => "I3",
            IdentityId::I4 => "I4",
            IdentityId::I5 => "I5",
            IdentityId::I6 => "I6",
            IdentityId::I7 => "I7",
            IdentityId::I8 => "I8",
            IdentityId::I9 => "I9",
            IdentityId::I10 => "I10",
            IdentityId::I11 => "I11",
            IdentityId::I12 => "I12",
            IdentityId::I13 => "I13",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        IdentityId::ALL
            .into_iter()
            .find(|id| id.label().eq_ignore_ascii_case(wanted) || (wanted.eq_ignore_ascii_case("I1ext") && *id == IdentityId::I1Ext))
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}
