use std::fmt;
use std::str::FromStr;

use crate::embeddings::EmbeddingKind;
use crate::{CategoryFlags, Error, Result};

/// The twelve categories the constructions are typed over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CategoryId {
    /// commutative monoids
    S,
    /// cancellative
    RS,
    /// groups
    G,
    /// divisible
    DS,
    /// divisible and cancellative
    DRS,
    /// divisible groups
    DG,
    /// uniquely divisible
    US,
    /// uniquely divisible and cancellative
    URS,
    /// uniquely divisible groups
    UG,
    /// cones
    Con,
    /// cancellative cones
    RCon,
    /// linear spaces
    Lin,
}

impl CategoryId {
    pub const ALL: [CategoryId; 12] = [
        CategoryId::S,
        CategoryId::RS,
        CategoryId::G,
        CategoryId::DS,
        CategoryId::DRS,
        CategoryId::DG,
        CategoryId::US,
        CategoryId::URS,
        CategoryId::UG,
        CategoryId::Con,
        CategoryId::RCon,
        CategoryId::Lin,
    ];

    /// Most specific first.
    const SPECIFICITY: [CategoryId; 12] = [
        CategoryId::Lin,
        CategoryId::RCon,
        CategoryId::Con,
        CategoryId::UG,
        CategoryId::URS,
        CategoryId::US,
        CategoryId::DG,
        CategoryId::DRS,
        CategoryId::DS,
        CategoryId::G,
        CategoryId::RS,
        CategoryId::S,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CategoryId::S => "S",
            CategoryId::RS => "RS",
            CategoryId::G => "G",
            CategoryId::DS => "DS",
            CategoryId::DRS => "DRS",
            CategoryId::DG => "DG",
            CategoryId::US => "US",
            CategoryId::URS => "URS",
            CategoryId::UG => "UG",
            CategoryId::Con => "Con",
            CategoryId::RCon => "RCon",
            CategoryId::Lin => "Lin",
        }
    }

    /// Position in the most-specific-first order.
    pub fn specificity_rank(self) -> usize {
        CategoryId::SPECIFICITY.iter().position(|&c| c == self).expect("listed")
    }

    /// Does a monoid with these flags belong to the category? Only
    /// established (`True`) flags count.
    pub fn contains(self, f: &CategoryFlags) -> bool {
        let canc = f.is_cancellative.is_true();
        let group = f.is_group.is_true();
        let div = f.is_divisible.is_true();
        let ud = f.is_uniquely_divisible.is_true();
        match self {
            CategoryId::S => true,
            CategoryId::RS => canc,
            CategoryId::G => group,
            CategoryId::DS => div,
            CategoryId::DRS => div && canc,
            CategoryId::DG => div && group,
            CategoryId::US => ud,
            CategoryId::URS => ud && canc,
            CategoryId::UG => ud && group,
            CategoryId::Con => f.is_cone,
            CategoryId::RCon => f.is_cone && canc,
            CategoryId::Lin => f.is_linear,
        }
    }

    /// Negation is part of the structure.
    pub fn has_negation(self) -> bool {
        matches!(self, CategoryId::G | CategoryId::DG | CategoryId::UG | CategoryId::Lin)
    }

    /// `n`-th parts exist and are unique.
    pub fn has_unique_parts(self) -> bool {
        matches!(
            self,
            CategoryId::US | CategoryId::URS | CategoryId::UG | CategoryId::Con | CategoryId::RCon | CategoryId::Lin
        )
    }

    pub fn has_scalars(self) -> bool {
        matches!(self, CategoryId::Con | CategoryId::RCon | CategoryId::Lin)
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl FromStr for CategoryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CategoryId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Domain(format!("unknown category `{s}`")))
    }
}

/// Every category a monoid with these flags belongs to, in [`CategoryId::ALL`] order.
pub fn categories_of(f: &CategoryFlags) -> Vec<CategoryId> {
    CategoryId::ALL.into_iter().filter(|c| c.contains(f)).collect()
}

/// One typed construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub kind: EmbeddingKind,
    pub source: CategoryId,
    pub target: CategoryId,
}

const fn a(kind: EmbeddingKind, source: CategoryId, target: CategoryId) -> Arrow {
    Arrow { kind, source, target }
}

/// The seventeen typed constructions.
pub const TYPING_TABLE: [Arrow; 17] = {
    use CategoryId::*;
    use EmbeddingKind as K;
    [
        a(K::R, S, RS),
        a(K::R, DS, DRS),
        a(K::R, US, URS),
        a(K::R, Con, RCon),
        a(K::F, RS, G),
        a(K::F, DRS, DG),
        a(K::F, URS, UG),
        a(K::F, RCon, Lin),
        a(K::D, S, DS),
        a(K::D, RS, DRS),
        a(K::D, G, DG),
        a(K::U, DS, US),
        a(K::U, DRS, URS),
        a(K::U, DG, UG),
        a(K::M, US, Con),
        a(K::M, URS, RCon),
        a(K::M, UG, Lin),
    ]
};

/// The arrow of a construction out of a category, if typed.
pub fn arrow(kind: EmbeddingKind, source: CategoryId) -> Option<Arrow> {
    TYPING_TABLE.iter().copied().find(|a| a.kind == kind && a.source == source)
}
