//! Structured vertex labels.
//!
//! Complex constructions keep renaming vertices: a subdivision vertex is a
//! face of the base complex, a join vertex is a signed copy of a base
//! vertex, an order-complex vertex may be a pair of vertex sets. Labels are
//! finite terms closed under these shapes, with a structural total order so
//! that every construction is deterministic.

use serde::{Deserialize, Serialize};

/// Which of the two copies (shores) a signed vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Shore {
    One,
    Two,
}

impl Shore {
    pub fn flip(self) -> Shore {
        match self {
            Shore::One => Shore::Two,
            Shore::Two => Shore::One,
        }
    }
}

/// Suspension poles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pole {
    South,
    North,
}

impl Pole {
    pub fn flip(self) -> Pole {
        match self {
            Pole::South => Pole::North,
            Pole::North => Pole::South,
        }
    }
}

/// A structured vertex label, totally ordered by structural comparison.
///
/// `Set` labels are canonical: sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Atom(usize),
    Signed(Box<Label>, Shore),
    Set(Vec<Label>),
    Pair(Box<Label>, Box<Label>),
    Pole(Pole),
}

impl Label {
    pub fn atom(v: usize) -> Label {
        Label::Atom(v)
    }

    /// A signed copy of a plain vertex, the standard `V x [2]` labeling.
    pub fn signed_atom(v: usize, shore: Shore) -> Label {
        Label::Signed(Box::new(Label::Atom(v)), shore)
    }

    pub fn set(mut items: Vec<Label>) -> Label {
        items.sort();
        items.dedup();
        Label::Set(items)
    }

    pub fn pair(left: Label, right: Label) -> Label {
        Label::Pair(Box::new(left), Box::new(right))
    }

    /// The canonical label of a shore pair `(left, right)`: the set of
    /// signed copies of the two vertex collections.
    pub fn shore_pair<I, J>(left: I, right: J) -> Label
    where
        I: IntoIterator<Item = usize>,
        J: IntoIterator<Item = usize>,
    {
        let mut items: Vec<Label> = left
            .into_iter()
            .map(|v| Label::signed_atom(v, Shore::One))
            .collect();
        items.extend(right.into_iter().map(|v| Label::signed_atom(v, Shore::Two)));
        Label::set(items)
    }

    pub fn as_set(&self) -> Option<&[Label]> {
        match self {
            Label::Set(items) => Some(items),
            _ => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, Label::Pole(_))
    }

    /// Re-sorts set contents recursively; used after deserialization.
    pub fn canonicalized(self) -> Label {
        match self {
            Label::Set(items) => {
                Label::set(items.into_iter().map(Label::canonicalized).collect())
            }
            Label::Signed(l, s) => Label::Signed(Box::new(l.canonicalized()), s),
            Label::Pair(a, b) => {
                Label::pair(a.canonicalized(), b.canonicalized())
            }
            other => other,
        }
    }

    /// Subset test between two `Set` labels; `false` if either is not a set.
    pub fn set_subset(&self, other: &Label) -> bool {
        match (self.as_set(), other.as_set()) {
            (Some(a), Some(b)) => sorted_subset(a, b),
            _ => false,
        }
    }

    /// True if the two labels are equal or `Set`-comparable either way.
    pub fn set_comparable(&self, other: &Label) -> bool {
        self == other || self.set_subset(other) || other.set_subset(self)
    }
}

/// Subset test on sorted slices.
pub fn sorted_subset<T: Ord>(a: &[T], b: &[T]) -> bool {
    if a.len() > b.len() {
        return false;
    }
    let mut bi = 0;
    for x in a {
        loop {
            if bi == b.len() {
                return false;
            }
            match b[bi].cmp(x) {
                std::cmp::Ordering::Less => bi += 1,
                std::cmp::Ordering::Equal => {
                    bi += 1;
                    break;
                }
                std::cmp::Ordering::Greater => return false,
            }
        }
    }
    true
}

impl Serialize for Shore {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(match self {
            Shore::One => 1,
            Shore::Two => 2,
        })
    }
}

impl<'de> Deserialize<'de> for Shore {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match u8::deserialize(d)? {
            1 => Ok(Shore::One),
            2 => Ok(Shore::Two),
            other => Err(serde::de::Error::custom(format!(
                "shore must be 1 or 2, got {other}"
            ))),
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Atom(v) => write!(f, "{v}"),
            Label::Signed(l, Shore::One) => write!(f, "{l}'"),
            Label::Signed(l, Shore::Two) => write!(f, "{l}\""),
            Label::Set(items) => {
                write!(f, "{{")?;
                for (i, l) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{l}")?;
                }
                write!(f, "}}")
            }
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Pole(Pole::South) => write!(f, "south"),
            Label::Pole(Pole::North) => write!(f, "north"),
        }
    }
}
