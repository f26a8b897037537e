//! Counted diagonal forms `<a_1, ..., a_m>` and their ring operations.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::square_class::SquareClass;

/// A diagonal quadratic form stored as a multiset of square classes.
///
/// Multiplicities are arbitrary precision and never zero. The empty map is
/// the zero form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormRepr", into = "FormRepr")]
pub struct DiagonalForm {
    entries: BTreeMap<SquareClass, BigUint>,
}

impl DiagonalForm {
    /// The zero form.
    pub fn zero() -> Self {
        Self::default()
    }

    /// `<1>`.
    pub fn one() -> Self {
        Self::unit(SquareClass::one())
    }

    /// The one-dimensional form `<c>`.
    pub fn unit(class: SquareClass) -> Self {
        Self::repeated(class, BigUint::one())
    }

    /// `mult x <c>`.
    pub fn repeated(class: SquareClass, mult: BigUint) -> Self {
        let mut f = Self::zero();
        f.add_entry(class, mult);
        f
    }

    /// `<c_1, ..., c_m>`.
    pub fn from_classes<I: IntoIterator<Item = SquareClass>>(classes: I) -> Self {
        let mut f = Self::zero();
        for c in classes {
            f.add_entry(c, BigUint::one());
        }
        f
    }

    /// `h x H`; errors on negative `h`.
    pub fn hyperbolic(h: i64) -> Result<Self> {
        if h < 0 {
            return Err(Error::NegativeCount(h));
        }
        Ok(Self::hyperbolic_planes(&BigUint::from(h as u64)))
    }

    /// `h x H` for an arbitrary-precision count.
    pub fn hyperbolic_planes(h: &BigUint) -> Self {
        let mut f = Self::zero();
        f.add_entry(SquareClass::one(), h.clone());
        f.add_entry(SquareClass::minus_one(), h.clone());
        f
    }

    pub fn add_entry(&mut self, class: SquareClass, mult: BigUint) {
        if mult.is_zero() {
            return;
        }
        match self.entries.entry(class) {
            Entry::Occupied(mut e) => *e.get_mut() += mult,
            Entry::Vacant(e) => {
                e.insert(mult);
            }
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&SquareClass, &BigUint)> {
        self.entries.iter()
    }

    pub fn multiplicity(&self, class: &SquareClass) -> BigUint {
        self.entries.get(class).cloned().unwrap_or_default()
    }

    pub fn distinct_classes(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Orthogonal sum.
    pub fn perp(&self, other: &DiagonalForm) -> DiagonalForm {
        let mut out = self.clone();
        out.perp_assign(other);
        out
    }

    pub fn perp_assign(&mut self, other: &DiagonalForm) {
        for (c, m) in &other.entries {
            self.add_entry(c.clone(), m.clone());
        }
    }

    /// Tensor product: entries multiply pairwise, multiplicities multiply.
    pub fn tensor(&self, other: &DiagonalForm) -> DiagonalForm {
        let mut out = DiagonalForm::zero();
        for (c, m) in &self.entries {
            for (d, n) in &other.entries {
                out.add_entry(c.mul(d), m * n);
            }
        }
        out
    }

    /// `<c> ⊗ φ`.
    pub fn scale(&self, class: &SquareClass) -> DiagonalForm {
        DiagonalForm {
            entries: self
                .entries
                .iter()
                .map(|(c, m)| (c.mul(class), m.clone()))
                .collect(),
        }
    }

    /// `n x φ`, the orthogonal sum of `n` copies.
    pub fn times(&self, n: &BigUint) -> DiagonalForm {
        if n.is_zero() {
            return DiagonalForm::zero();
        }
        DiagonalForm {
            entries: self
                .entries
                .iter()
                .map(|(c, m)| (c.clone(), m * n))
                .collect(),
        }
    }

    /// Same form with every class replaced by its representative under `f`.
    pub fn map_classes(&self, f: impl Fn(&SquareClass) -> SquareClass) -> DiagonalForm {
        let mut out = DiagonalForm::zero();
        for (c, m) in &self.entries {
            out.add_entry(f(c), m.clone());
        }
        out
    }
}

/// `0form`, `<1>`, `3 x <a> + <-1>`.
impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("0form");
        }
        for (i, (c, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "<{c}>")?;
            } else {
                write!(f, "{m} x <{c}>")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct EntryRepr {
    pub class: SquareClass,
    pub mult: String,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    dim: String,
    entries: Vec<EntryRepr>,
}

pub(crate) fn entries_to_repr<'a>(
    it: impl Iterator<Item = (&'a SquareClass, &'a BigUint)>,
) -> Vec<EntryRepr> {
    it.map(|(c, m)| EntryRepr {
        class: c.clone(),
        mult: m.to_str_radix(10),
    })
    .collect()
}

pub(crate) fn entries_from_repr(entries: Vec<EntryRepr>) -> Result<BTreeMap<SquareClass, BigUint>> {
    let mut out = BTreeMap::new();
    for e in entries {
        let mult = parse_decimal(&e.mult)?;
        if mult.is_zero() {
            return Err(Error::InvalidData("zero multiplicity".into()));
        }
        if out.insert(e.class, mult).is_some() {
            return Err(Error::InvalidData("duplicate class entry".into()));
        }
    }
    Ok(out)
}

pub(crate) fn parse_decimal(s: &str) -> Result<BigUint> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::InvalidData(format!("not a decimal integer: {s:?}")));
    }
    BigUint::parse_bytes(s.as_bytes(), 10)
        .ok_or_else(|| Error::InvalidData(format!("not a decimal integer: {s:?}")))
}

impl From<DiagonalForm> for FormRepr {
    fn from(f: DiagonalForm) -> Self {
        FormRepr {
            dim: f.dim().to_str_radix(10),
            entries: entries_to_repr(f.entries.iter()),
        }
    }
}

impl TryFrom<FormRepr> for DiagonalForm {
    type Error = Error;

    fn try_from(r: FormRepr) -> Result<Self> {
        let form = DiagonalForm {
            entries: entries_from_repr(r.entries)?,
        };
        if form.dim() != parse_decimal(&r.dim)? {
            return Err(Error::InvalidData("dim does not match entries".into()));
        }
        Ok(form)
    }
}
