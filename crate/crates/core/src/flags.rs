use std::fmt;

/// Outcome of an equality decision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EqResult {
    Equal,
    NotEqual,
    /// The search budget ran out before a decision.
    Unknown(usize),
}

impl EqResult {
    pub fn from_bool(b: bool) -> Self {
        if b {
            EqResult::Equal
        } else {
            EqResult::NotEqual
        }
    }

    pub fn is_equal(self) -> bool {
        self == EqResult::Equal
    }

    pub fn is_unknown(self) -> bool {
        matches!(self, EqResult::Unknown(_))
    }

    /// Conjunction over components: equal only if every part is equal.
    pub fn and(self, other: EqResult) -> EqResult {
        match (self, other) {
            (EqResult::NotEqual, _) | (_, EqResult::NotEqual) => EqResult::NotEqual,
            (EqResult::Equal, EqResult::Equal) => EqResult::Equal,
            (EqResult::Unknown(a), EqResult::Unknown(b)) => EqResult::Unknown(a.max(b)),
            (EqResult::Unknown(a), _) | (_, EqResult::Unknown(a)) => EqResult::Unknown(a),
        }
    }
}

impl fmt::Display for EqResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqResult::Equal => write!(f, "equal"),
            EqResult::NotEqual => write!(f, "not-equal"),
            EqResult::Unknown(b) => write!(f, "unknown(bound {b})"),
        }
    }
}

/// Three-valued truth for properties that may only be decidable up to a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriState {
    True,
    False,
    Unknown(usize),
}

impl TriState {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriState::True
        } else {
            TriState::False
        }
    }

    pub fn is_true(self) -> bool {
        self == TriState::True
    }

    pub fn is_false(self) -> bool {
        self == TriState::False
    }

    pub fn and(self, other: TriState) -> TriState {
        match (self, other) {
            (TriState::False, _) | (_, TriState::False) => TriState::False,
            (TriState::True, TriState::True) => TriState::True,
            (TriState::Unknown(a), TriState::Unknown(b)) => TriState::Unknown(a.max(b)),
            (TriState::Unknown(a), _) | (_, TriState::Unknown(a)) => TriState::Unknown(a),
        }
    }

    /// Keeps `True`, forgets everything else. Used when a construction
    /// preserves a property but cannot refute it.
    pub fn only_true(self) -> TriState {
        match self {
            TriState::True => TriState::True,
            TriState::False => TriState::Unknown(0),
            other => other,
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriState::True => write!(f, "true"),
            TriState::False => write!(f, "false"),
            TriState::Unknown(b) => write!(f, "unknown(bound {b})"),
        }
    }
}

/// A bounded decision that carries a witness when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<W> {
    True,
    False(W),
    Unknown(usize),
}

impl<W> Decision<W> {
    pub fn tri(&self) -> TriState {
        match self {
            Decision::True => TriState::True,
            Decision::False(_) => TriState::False,
            Decision::Unknown(b) => TriState::Unknown(*b),
        }
    }

    pub fn is_true(&self) -> bool {
        matches!(self, Decision::True)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Decision::False(w) => Some(w),
            _ => None,
        }
    }
}

/// Structural knowledge about a monoid. Constructions derive these from
/// their inputs; finite backends compute them exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CategoryFlags {
    pub is_semigroup: bool,
    pub is_cancellative: TriState,
    pub is_group: TriState,
    pub is_divisible: TriState,
    /// `n*x1 = n*x2` implies `x1 = x2` for every `n >= 1`.
    pub is_torsion_free: TriState,
    pub is_uniquely_divisible: TriState,
    pub is_cone: bool,
    pub is_linear: bool,
}

impl Default for CategoryFlags {
    fn default() -> Self {
        CategoryFlags {
            is_semigroup: true,
            is_cancellative: TriState::Unknown(0),
            is_group: TriState::Unknown(0),
            is_divisible: TriState::Unknown(0),
            is_torsion_free: TriState::Unknown(0),
            is_uniquely_divisible: TriState::Unknown(0),
            is_cone: false,
            is_linear: false,
        }
    }
}

impl CategoryFlags {
    /// Closes the flags under the implications between categories.
    pub fn normalized(mut self) -> Self {
        self.is_semigroup = true;
        if self.is_linear {
            self.is_cone = true;
            self.is_group = TriState::True;
        }
        if self.is_group.is_true() {
            self.is_cancellative = TriState::True;
        }
        if self.is_cancellative.is_false() {
            self.is_group = TriState::False;
        }
        if self.is_cone {
            self.is_divisible = TriState::True;
            self.is_torsion_free = TriState::True;
        }
        self.is_uniquely_divisible = self.is_divisible.and(self.is_torsion_free);
        self.is_linear = self.is_cone && self.is_group.is_true();
        self
    }

    /// Conjunction used for direct products.
    pub fn product(&self, other: &CategoryFlags) -> CategoryFlags {
        CategoryFlags {
            is_semigroup: true,
            is_cancellative: self.is_cancellative.and(other.is_cancellative),
            is_group: self.is_group.and(other.is_group),
            is_divisible: self.is_divisible.and(other.is_divisible),
            is_torsion_free: self.is_torsion_free.and(other.is_torsion_free),
            is_uniquely_divisible: TriState::Unknown(0),
            is_cone: self.is_cone && other.is_cone,
            is_linear: self.is_linear && other.is_linear,
        }
        .normalized()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_implications() {
        let f = CategoryFlags {
            is_group: TriState::True,
            is_divisible: TriState::True,
            is_torsion_free: TriState::True,
            ..Default::default()
        }
        .normalized();
        assert!(f.is_cancellative.is_true());
        assert!(f.is_uniquely_divisible.is_true());

        let cone = CategoryFlags { is_cone: true, ..Default::default() }.normalized();
        assert!(cone.is_uniquely_divisible.is_true());
        assert!(!cone.is_linear);
    }

    #[test]
    fn eq_conjunction() {
        assert_eq!(EqResult::Equal.and(EqResult::Unknown(3)), EqResult::Unknown(3));
        assert_eq!(EqResult::NotEqual.and(EqResult::Unknown(3)), EqResult::NotEqual);
        assert_eq!(EqResult::Equal.and(EqResult::Equal), EqResult::Equal);
    }
}
