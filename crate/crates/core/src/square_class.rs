//! Square classes of the generic field model.
//!
//! A square class is a finite set of independent atoms multiplied by
//! symmetric difference; every element has order two. The distinguished
//! atom [`Atom::MinusOne`] stands for the class of `-1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A generator of the square-class group.
///
/// `MinusOne` sorts before every named atom; named atoms sort lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    MinusOne,
    Named(Arc<str>),
}

impl Atom {
    /// Builds a named atom. Accepts identifiers (`[A-Za-z_][A-Za-z0-9_]*`) and
    /// decimal primes, the latter produced by the rational decomposition of
    /// concrete integers.
    pub fn named(name: &str) -> Result<Self> {
        if is_identifier(name) || is_prime_literal(name) {
            Ok(Atom::Named(Arc::from(name)))
        } else {
            Err(Error::InvalidAtom(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Atom::MinusOne => "-1",
            Atom::Named(n) => n,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_prime_literal(s: &str) -> bool {
    if s.is_empty() || s.starts_with('0') || !s.bytes().all(|b| b.is_ascii_digit()) {
        return false;
    }
    match s.parse::<u64>() {
        Ok(p) => is_prime(p),
        Err(_) => false,
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Semantics under which isometry is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum FieldMode {
    /// `-1` is a nontrivial square class.
    #[default]
    Generic,
    /// `-1` is a square, as in any field containing a primitive fourth root of unity.
    MinusOneSquare,
}

impl FieldMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldMode::Generic => "GENERIC",
            FieldMode::MinusOneSquare => "MINUS_ONE_SQUARE",
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FieldMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" | "GENERIC" | "generic" => Ok(FieldMode::Generic),
            "c" | "MINUS_ONE_SQUARE" | "minus_one_square" => Ok(FieldMode::MinusOneSquare),
            other => Err(Error::UnknownMode(other.to_string())),
        }
    }
}

impl Serialize for FieldMode {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for FieldMode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of the square-class group: a set of atoms, identity = empty set.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareClass {
    atoms: BTreeSet<Atom>,
}

impl SquareClass {
    /// The class of `1`.
    pub fn one() -> Self {
        Self::default()
    }

    /// The class of `-1`.
    pub fn minus_one() -> Self {
        Self::from_atoms([Atom::MinusOne])
    }

    /// Class of a single named atom.
    pub fn atom(name: &str) -> Result<Self> {
        Ok(Self::from_atoms([Atom::named(name)?]))
    }

    /// Product of the given atoms; repeated atoms cancel in pairs.
    pub fn from_atoms<I: IntoIterator<Item = Atom>>(atoms: I) -> Self {
        let mut out = BTreeSet::new();
        for a in atoms {
            if !out.remove(&a) {
                out.insert(a);
            }
        }
        SquareClass { atoms: out }
    }

    /// Square-free sign decomposition of a nonzero rational integer,
    /// e.g. `4 -> <1>`, `2 -> {"2"}`, `-8 -> {-1, "2"}`.
    pub fn from_integer(value: i64) -> Result<Self> {
        if value == 0 {
            return Err(Error::ZeroClass);
        }
        let mut atoms = Vec::new();
        if value < 0 {
            atoms.push(Atom::MinusOne);
        }
        let mut rest = value.unsigned_abs();
        let mut p = 2u64;
        while p * p <= rest {
            let mut parity = false;
            while rest.is_multiple_of(p) {
                rest /= p;
                parity = !parity;
            }
            if parity {
                atoms.push(Atom::Named(Arc::from(p.to_string())));
            }
            p += 1;
        }
        if rest > 1 {
            atoms.push(Atom::Named(Arc::from(rest.to_string())));
        }
        Ok(Self::from_atoms(atoms))
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.iter()
    }

    pub fn is_one(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn has_minus_one(&self) -> bool {
        self.atoms.contains(&Atom::MinusOne)
    }

    /// Group multiplication: symmetric difference of the atom sets.
    pub fn mul(&self, other: &SquareClass) -> SquareClass {
        SquareClass {
            atoms: self
                .atoms
                .symmetric_difference(&other.atoms)
                .cloned()
                .collect(),
        }
    }

    /// `c · (-1)`.
    pub fn negate(&self) -> SquareClass {
        let mut atoms = self.atoms.clone();
        if !atoms.remove(&Atom::MinusOne) {
            atoms.insert(Atom::MinusOne);
        }
        SquareClass { atoms }
    }

    /// `c^k`: the class itself for odd `k`, the identity for even `k`.
    pub fn pow(&self, k: u64) -> SquareClass {
        if k % 2 == 1 {
            self.clone()
        } else {
            SquareClass::one()
        }
    }

    /// Representative of the class under `mode`; drops `-1` when it is a square.
    pub fn canonicalize(&self, mode: FieldMode) -> SquareClass {
        match mode {
            FieldMode::Generic => self.clone(),
            FieldMode::MinusOneSquare => {
                let mut atoms = self.atoms.clone();
                atoms.remove(&Atom::MinusOne);
                SquareClass { atoms }
            }
        }
    }

    /// Atom names, with `"-1"` for the class of `-1`.
    pub fn names(&self) -> Vec<String> {
        self.atoms.iter().map(|a| a.name().to_string()).collect()
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut atoms = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if n == "-1" {
                atoms.push(Atom::MinusOne);
            } else {
                atoms.push(Atom::named(n)?);
            }
        }
        let class = Self::from_atoms(atoms.iter().cloned());
        if class.atoms.len() != atoms.len() {
            return Err(Error::InvalidData(format!(
                "duplicate atom in class {names:?}",
                names = names.iter().map(|s| s.as_ref()).collect::<Vec<_>>()
            )));
        }
        Ok(class)
    }
}

/// Renders as `1`, `-1`, `a`, `-a*b`.
impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let named: Vec<&str> = self
            .atoms
            .iter()
            .filter_map(|a| match a {
                Atom::MinusOne => None,
                Atom::Named(n) => Some(&**n),
            })
            .collect();
        let sign = if self.has_minus_one() { "-" } else { "" };
        if named.is_empty() {
            write!(f, "{sign}1")
        } else {
            write!(f, "{sign}{}", named.join("*"))
        }
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.names().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SquareClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        SquareClass::from_names(&names).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cls(names: &[&str]) -> SquareClass {
        SquareClass::from_names(names).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(cls(&["a"]).mul(&cls(&["a"])), SquareClass::one());
        assert_eq!(cls(&["a"]).mul(&cls(&["b"])), cls(&["a", "b"]));
        assert_eq!(cls(&["-1", "a"]).mul(&cls(&["-1", "b"])), cls(&["a", "b"]));
    }

    #[test]
    fn negation_examples() {
        assert_eq!(SquareClass::one().negate(), SquareClass::minus_one());
        assert_eq!(SquareClass::minus_one().negate(), SquareClass::one());
        assert_eq!(cls(&["a", "b"]).negate(), cls(&["-1", "a", "b"]));
    }

    #[test]
    fn canonicalize_examples() {
        let c = cls(&["-1", "a"]);
        assert_eq!(c.canonicalize(FieldMode::Generic), c);
        assert_eq!(c.canonicalize(FieldMode::MinusOneSquare), cls(&["a"]));
        assert_eq!(
            SquareClass::one().canonicalize(FieldMode::MinusOneSquare),
            SquareClass::one()
        );
    }

    #[test]
    fn atom_ordering_puts_minus_one_first() {
        let mut v = [
            Atom::named("b").unwrap(),
            Atom::named("a").unwrap(),
            Atom::MinusOne,
        ];
        v.sort();
        assert_eq!(v[0], Atom::MinusOne);
        assert_eq!(v[1].name(), "a");
    }

    #[test]
    fn atom_names_are_validated() {
        assert!(Atom::named("").is_err());
        assert!(Atom::named("-1").is_err());
        assert!(Atom::named("4").is_err());
        assert!(Atom::named("1").is_err());
        assert!(Atom::named("7").is_ok());
        assert!(Atom::named("a_2").is_ok());
    }

    #[test]
    fn rational_decomposition() {
        assert_eq!(SquareClass::from_integer(4).unwrap(), SquareClass::one());
        assert_eq!(SquareClass::from_integer(2).unwrap(), cls(&["2"]));
        assert_eq!(SquareClass::from_integer(-8).unwrap(), cls(&["-1", "2"]));
        assert_eq!(SquareClass::from_integer(12).unwrap(), cls(&["3"]));
        assert_eq!(
            SquareClass::from_integer(-1).unwrap(),
            SquareClass::minus_one()
        );
        assert!(SquareClass::from_integer(0).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(SquareClass::one().to_string(), "1");
        assert_eq!(SquareClass::minus_one().to_string(), "-1");
        assert_eq!(cls(&["-1", "b", "a"]).to_string(), "-a*b");
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(SquareClass::from_names(&["a", "a"]).is_err());
    }

    fn arb_class() -> impl Strategy<Value = SquareClass> {
        proptest::collection::vec(0usize..5, 0..6).prop_map(|idx| {
            SquareClass::from_atoms(idx.into_iter().map(|i| match i {
                0 => Atom::MinusOne,
                i => Atom::named(["a", "b", "c", "d"][i - 1]).unwrap(),
            }))
        })
    }

    fn arb_mode() -> impl Strategy<Value = FieldMode> {
        prop_oneof![Just(FieldMode::Generic), Just(FieldMode::MinusOneSquare)]
    }

    proptest! {
        #[test]
        fn exponent_two_abelian_group(c in arb_class(), d in arb_class(), e in arb_class()) {
            prop_assert_eq!(c.mul(&d), d.mul(&c));
            prop_assert_eq!(c.mul(&d).mul(&e), c.mul(&d.mul(&e)));
            prop_assert!(c.mul(&c).is_one());
            prop_assert_eq!(c.mul(&SquareClass::one()), c.clone());
        }

        #[test]
        fn negate_is_involution(c in arb_class()) {
            prop_assert_eq!(c.negate().negate(), c.clone());
            prop_assert_eq!(c.negate(), c.mul(&SquareClass::minus_one()));
        }

        #[test]
        fn canonicalize_idempotent(c in arb_class(), m in arb_mode()) {
            let once = c.canonicalize(m);
            prop_assert_eq!(once.canonicalize(m), once);
        }
    }
}
