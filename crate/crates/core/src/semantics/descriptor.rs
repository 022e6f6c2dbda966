use std::fmt;

/// A hereditarily finite set over an alphabet of atoms, kept in canonical
/// form so that structural equality is extensional equality.
///
/// Members are sorted (atoms before sets, atoms by label, sets
/// lexicographically by member sequence) and duplicate-free. The derived
/// ordering is exactly that order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Descriptor {
    /// An urelement: it has no members and is not a set.
    Atom(String),
    Set(Members),
}

/// The canonical member list of a set descriptor.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Members(Vec<Descriptor>);

impl std::ops::Deref for Members {
    type Target = [Descriptor];

    fn deref(&self) -> &[Descriptor] {
        &self.0
    }
}

impl Descriptor {
    pub fn atom(label: impl Into<String>) -> Self {
        Descriptor::Atom(label.into())
    }

    pub fn empty() -> Self {
        Descriptor::Set(Members::default())
    }

    /// The set of the given members, canonicalized.
    pub fn set(members: impl IntoIterator<Item = Descriptor>) -> Self {
        let mut v: Vec<Descriptor> = members.into_iter().collect();
        v.sort();
        v.dedup();
        Descriptor::Set(Members(v))
    }

    /// `{self}`
    pub fn singleton(self) -> Self {
        Descriptor::Set(Members(vec![self]))
    }

    /// The pure set with Ackermann code `code`: `i` is a member of `n`
    /// iff bit `i` of `n` is set.
    pub fn from_code(code: u64) -> Self {
        Descriptor::set(
            (0..64)
                .filter(|i| code >> i & 1 == 1)
                .map(Descriptor::from_code),
        )
    }

    /// Ackermann code of a pure descriptor: the sum of `2^code(m)` over
    /// members `m`. `None` for descriptors containing atoms or whose code
    /// does not fit in 64 bits.
    pub fn code(&self) -> Option<u64> {
        match self {
            Descriptor::Atom(_) => None,
            Descriptor::Set(ms) => ms.iter().try_fold(0u64, |acc, m| {
                let c = u32::try_from(m.code()?).ok()?;
                acc.checked_add(1u64.checked_shl(c)?)
            }),
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Descriptor::Atom(_))
    }

    /// True if no atom occurs anywhere inside.
    pub fn is_pure(&self) -> bool {
        match self {
            Descriptor::Atom(_) => false,
            Descriptor::Set(ms) => ms.iter().all(Descriptor::is_pure),
        }
    }

    /// The members of a set; an atom has none.
    pub fn external_members(&self) -> &[Descriptor] {
        match self {
            Descriptor::Atom(_) => &[],
            Descriptor::Set(ms) => ms,
        }
    }

    /// Von Neumann rank; atoms and the empty set have rank 0.
    pub fn rank(&self) -> usize {
        self.external_members()
            .iter()
            .map(|m| m.rank() + 1)
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Atom(a) => f.write_str(a),
            Descriptor::Set(ms) => {
                f.write_str("{")?;
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{m}")?;
                }
                f.write_str("}")
            }
        }
    }
}
