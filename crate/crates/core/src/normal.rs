//! Witt normal forms in the generic models and the isometry test built on them.
//!
//! In the generic model (independent atoms, `-1` not a square) a diagonal
//! form is isometric to `residue ⊥ hyp x H`, where the residue never holds
//! both `<c>` and `<-c>`; residue and `hyp` together are a complete
//! invariant. When `-1` is a square, `<c, c> ≅ H` as well, so residue
//! multiplicities reduce mod 2 and classes drop their `-1` atom.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{entries_from_repr, entries_to_repr, parse_decimal, DiagonalForm, EntryRepr};
use crate::square_class::{FieldMode, SquareClass};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NormalRepr", into = "NormalRepr")]
pub struct NormalForm {
    residue: BTreeMap<SquareClass, BigUint>,
    hyp: BigUint,
    dim: BigUint,
    mode: FieldMode,
}

impl NormalForm {
    pub fn residue(&self) -> impl Iterator<Item = (&SquareClass, &BigUint)> {
        self.residue.iter()
    }

    pub fn residue_form(&self) -> DiagonalForm {
        let mut f = DiagonalForm::zero();
        for (c, m) in &self.residue {
            f.add_entry(c.clone(), m.clone());
        }
        f
    }

    pub fn hyp(&self) -> &BigUint {
        &self.hyp
    }

    pub fn dim(&self) -> &BigUint {
        &self.dim
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    /// Rebuilds `residue ⊥ hyp x H`.
    pub fn render(&self) -> DiagonalForm {
        self.residue_form()
            .perp(&DiagonalForm::hyperbolic_planes(&self.hyp))
    }

    fn check_invariants(&self) -> Result<()> {
        let residue_dim: BigUint = self.residue.values().sum();
        if residue_dim + &self.hyp * 2u32 != self.dim {
            return Err(Error::InvalidData("dim != residue + 2 hyp".into()));
        }
        match self.mode {
            FieldMode::Generic => {
                for c in self.residue.keys() {
                    if self.residue.contains_key(&c.negate()) {
                        return Err(Error::InvalidData(format!(
                            "residue holds both <{c}> and its negative"
                        )));
                    }
                }
            }
            FieldMode::MinusOneSquare => {
                for (c, m) in &self.residue {
                    if c.has_minus_one() || !m.is_one() {
                        return Err(Error::InvalidData(format!(
                            "residue entry <{c}> not reduced"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `4 x <1> + 3 x H`; the hyperbolic count is always printed.
impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, m) in &self.residue {
            write!(f, "{m} x <{c}> + ")?;
        }
        write!(f, "{} x H", self.hyp)
    }
}

/// Canonical decomposition of `form` under `mode`.
pub fn normalize(form: &DiagonalForm, mode: FieldMode) -> NormalForm {
    let dim = form.dim();
    let mut hyp = BigUint::zero();
    let mut residue: BTreeMap<SquareClass, BigUint> = BTreeMap::new();
    match mode {
        FieldMode::Generic => {
            for (c, m) in form.entries() {
                residue.insert(c.clone(), m.clone());
            }
            let positives: Vec<SquareClass> = residue
                .keys()
                .filter(|c| !c.has_minus_one())
                .cloned()
                .collect();
            for c in positives {
                let neg = c.negate();
                let (Some(p), Some(n)) = (residue.get(&c), residue.get(&neg)) else {
                    continue;
                };
                let pairs = p.min(n).clone();
                for key in [&c, &neg] {
                    let slot = residue.get_mut(key).expect("present");
                    *slot -= &pairs;
                    if slot.is_zero() {
                        residue.remove(key);
                    }
                }
                hyp += pairs;
            }
        }
        FieldMode::MinusOneSquare => {
            let merged = form.map_classes(|c| c.canonicalize(mode));
            for (c, m) in merged.entries() {
                let (pairs, odd) = m.div_rem(&BigUint::from(2u32));
                hyp += pairs;
                if !odd.is_zero() {
                    residue.insert(c.clone(), odd);
                }
            }
        }
    }
    NormalForm {
        residue,
        hyp,
        dim,
        mode,
    }
}

/// Whether the two forms are isometric in the model selected by `mode`.
pub fn isometric(a: &DiagonalForm, b: &DiagonalForm, mode: FieldMode) -> bool {
    normalize(a, mode) == normalize(b, mode)
}

/// `residue ⊥ Hyp`, with as many hyperbolic planes as needed to reach `total_dim`.
pub fn hyp_fill(residue: &DiagonalForm, total_dim: &BigUint) -> Result<DiagonalForm> {
    Ok(residue.perp(&DiagonalForm::hyperbolic_planes(&hyp_deficit(
        residue, total_dim,
    )?)))
}

/// `(total_dim - dim residue) / 2`, erroring when negative or odd.
pub fn hyp_deficit(residue: &DiagonalForm, total_dim: &BigUint) -> Result<BigUint> {
    let rd = residue.dim();
    let fail = || Error::HypFill {
        residue: rd.to_string(),
        total: total_dim.to_string(),
    };
    if &rd > total_dim {
        return Err(fail());
    }
    let (half, odd) = (total_dim - &rd).div_rem(&BigUint::from(2u32));
    if !odd.is_zero() {
        return Err(fail());
    }
    Ok(half)
}

#[derive(Serialize, Deserialize)]
struct NormalRepr {
    mode: FieldMode,
    dim: String,
    hyp: String,
    residue: Vec<EntryRepr>,
}

impl From<NormalForm> for NormalRepr {
    fn from(n: NormalForm) -> Self {
        NormalRepr {
            mode: n.mode,
            dim: n.dim.to_str_radix(10),
            hyp: n.hyp.to_str_radix(10),
            residue: entries_to_repr(n.residue.iter()),
        }
    }
}

impl TryFrom<NormalRepr> for NormalForm {
    type Error = Error;

    fn try_from(r: NormalRepr) -> Result<Self> {
        let nf = NormalForm {
            residue: entries_from_repr(r.residue)?,
            hyp: parse_decimal(&r.hyp)?,
            dim: parse_decimal(&r.dim)?,
            mode: r.mode,
        };
        nf.check_invariants()?;
        Ok(nf)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::arb_form;
    use proptest::prelude::*;

    fn c(names: &[&str]) -> SquareClass {
        SquareClass::from_names(names).unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn h(n: i64) -> DiagonalForm {
        DiagonalForm::hyperbolic(n).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let f = DiagonalForm::from_classes([c(&[]), c(&["-1"]), c(&[])]);
        let nf = normalize(&f, FieldMode::Generic);
        assert_eq!(nf.residue_form(), DiagonalForm::one());
        assert_eq!(nf.hyp(), &big(1));
        assert_eq!(nf.dim(), &big(3));

        let aa = DiagonalForm::repeated(c(&["a"]), big(2));
        let nf = normalize(&aa, FieldMode::Generic);
        assert_eq!(nf.residue_form(), aa);
        assert!(nf.hyp().is_zero());

        let nf = normalize(&aa, FieldMode::MinusOneSquare);
        assert!(nf.residue_form().is_zero());
        assert_eq!(nf.hyp(), &big(1));
    }

    #[test]
    fn surplus_keeps_its_sign() {
        let mut f = DiagonalForm::repeated(c(&["-1", "a"]), big(5));
        f.add_entry(c(&["a"]), big(2));
        let nf = normalize(&f, FieldMode::Generic);
        assert_eq!(
            nf.residue_form(),
            DiagonalForm::repeated(c(&["-1", "a"]), big(3))
        );
        assert_eq!(nf.hyp(), &big(2));
    }

    #[test]
    fn isometry_examples() {
        let ones = DiagonalForm::repeated(c(&[]), big(2)).perp(&h(1));
        let minus = DiagonalForm::repeated(c(&["-1"]), big(2)).perp(&h(1));
        assert!(!isometric(&ones, &minus, FieldMode::Generic));
        assert!(isometric(&ones, &minus, FieldMode::MinusOneSquare));
        let ah = DiagonalForm::unit(c(&["a"])).tensor(&h(1));
        assert!(isometric(&ah, &h(1), FieldMode::Generic));
    }

    #[test]
    fn hyp_fill_examples() {
        let five = DiagonalForm::repeated(SquareClass::one(), big(5));
        assert_eq!(hyp_fill(&five, &big(45)).unwrap(), five.perp(&h(20)));
        assert_eq!(hyp_fill(&DiagonalForm::zero(), &big(6)).unwrap(), h(3));
        assert!(matches!(
            hyp_fill(&DiagonalForm::one(), &big(4)),
            Err(Error::HypFill { .. })
        ));
        assert!(matches!(
            hyp_fill(&five, &big(3)),
            Err(Error::HypFill { .. })
        ));
    }

    #[test]
    fn display_and_json() {
        let f = DiagonalForm::repeated(SquareClass::one(), big(4)).perp(&h(3));
        let nf = normalize(&f, FieldMode::Generic);
        assert_eq!(nf.to_string(), "4 x <1> + 3 x H");
        let v = serde_json::to_value(&nf).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "mode": "GENERIC",
                "dim": "10",
                "hyp": "3",
                "residue": [{"class": [], "mult": "4"}]
            })
        );
        assert_eq!(serde_json::from_value::<NormalForm>(v).unwrap(), nf);
    }

    #[test]
    fn json_rejects_unreduced_residue() {
        let bad = serde_json::json!({
            "mode": "GENERIC", "dim": "2", "hyp": "0",
            "residue": [{"class": [], "mult": "1"}, {"class": ["-1"], "mult": "1"}]
        });
        assert!(serde_json::from_value::<NormalForm>(bad).is_err());
        let bad = serde_json::json!({
            "mode": "MINUS_ONE_SQUARE", "dim": "2", "hyp": "0",
            "residue": [{"class": ["a"], "mult": "2"}]
        });
        assert!(serde_json::from_value::<NormalForm>(bad).is_err());
    }

    fn arb_mode() -> impl Strategy<Value = FieldMode> {
        prop_oneof![Just(FieldMode::Generic), Just(FieldMode::MinusOneSquare)]
    }

    proptest! {
        #[test]
        fn normalize_idempotent_and_valid(f in arb_form(), m in arb_mode()) {
            let nf = normalize(&f, m);
            prop_assert!(nf.check_invariants().is_ok());
            prop_assert_eq!(normalize(&nf.render(), m), nf.clone());
            prop_assert_eq!(nf.dim(), &f.dim());
        }

        #[test]
        fn isometry_is_an_equivalence(a in arb_form(), b in arb_form(), d in arb_form(), m in arb_mode()) {
            prop_assert!(isometric(&a, &a, m));
            prop_assert_eq!(isometric(&a, &b, m), isometric(&b, &a, m));
            if isometric(&a, &b, m) && isometric(&b, &d, m) {
                prop_assert!(isometric(&a, &d, m));
            }
            // A form is isometric to its own normal form.
            prop_assert!(isometric(&a, &normalize(&a, m).render(), m));
        }

        #[test]
        fn generic_isometry_survives_coarsening(a in arb_form(), b in arb_form()) {
            if isometric(&a, &b, FieldMode::Generic) {
                prop_assert!(isometric(&a, &b, FieldMode::MinusOneSquare));
            }
            let hyp_twin = a.perp(&h(1));
            let pair_twin = a.perp(&DiagonalForm::from_classes([c(&["b"]), c(&["-1", "b"])]));
            prop_assert!(isometric(&hyp_twin, &pair_twin, FieldMode::Generic));
            prop_assert!(isometric(&hyp_twin, &pair_twin, FieldMode::MinusOneSquare));
        }

        #[test]
        fn witt_cancellation(a in arb_form(), b in arb_form(), t in arb_form(), m in arb_mode()) {
            prop_assert_eq!(isometric(&a.perp(&t), &b.perp(&t), m), isometric(&a, &b, m));
        }
    }
}
