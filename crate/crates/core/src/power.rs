//! Exterior and symmetric powers of diagonal forms.
//!
//! The default routes group the form by square class: a block `m x <c>`
//! has `Λ^j = C(m, j) x <c^j>` and `S^j = C(m+j-1, j) x <c^j>`, and blocks
//! are combined by the convolution `P^k(A ⊥ B) = ⊥_{i+j=k} P^i A ⊗ P^j B`.
//! The cost depends on the number of distinct classes and on `k`, never on
//! the multiplicities. The `naive_*` functions enumerate index subsets and
//! exponent vectors directly and exist as independent oracles.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::combinatorics::{choose, multichoose};
use crate::error::{Error, Result};
use crate::form::DiagonalForm;
use crate::square_class::{Atom, SquareClass};

fn convolve(
    form: &DiagonalForm,
    k: usize,
    block: impl Fn(&BigUint, u64) -> BigUint,
) -> DiagonalForm {
    let mut acc = vec![DiagonalForm::zero(); k + 1];
    acc[0] = DiagonalForm::one();
    for (class, mult) in form.entries() {
        let coeffs: Vec<BigUint> = (0..=k as u64).map(|i| block(mult, i)).collect();
        let mut next = vec![DiagonalForm::zero(); k + 1];
        for (j, part) in acc.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            let odd = part.scale(class);
            for (i, coef) in coeffs.iter().enumerate().take(k + 1 - j) {
                if coef.is_zero() {
                    continue;
                }
                let shifted = if i % 2 == 1 { &odd } else { part };
                next[j + i].perp_assign(&shifted.times(coef));
            }
        }
        acc = next;
    }
    acc.swap_remove(k)
}

/// `Λ^k φ`. `Λ^0 = <1>`, and `Λ^k` is the zero form for `k > dim φ` and,
/// by convention, for negative `k`.
pub fn lambda_power(form: &DiagonalForm, k: i64) -> DiagonalForm {
    if k < 0 {
        return DiagonalForm::zero();
    }
    if BigUint::from(k as u64) > form.dim() {
        return DiagonalForm::zero();
    }
    convolve(form, k as usize, choose)
}

/// `S^k φ`, the non-factorial symmetric power.
pub fn sym_power(form: &DiagonalForm, k: i64) -> Result<DiagonalForm> {
    if k < 0 {
        return Err(Error::NegativePower(k));
    }
    Ok(convolve(form, k as usize, multichoose))
}

/// `S^k φ` assembled from exterior powers:
/// `S^k φ = ⊥_{i=0}^{⌈k/2⌉} C(n+i-1, i) x Λ^{k-2i} φ`, `n = dim φ`.
pub fn sym_power_via_s3(form: &DiagonalForm, k: i64) -> Result<DiagonalForm> {
    Ok(sym_power_terms(form, k)?
        .into_iter()
        .fold(DiagonalForm::zero(), |acc, t| acc.perp(&t)))
}

/// The individual summands `C(n+i-1, i) x Λ^{k-2i} φ`, indexed by `i`.
/// Term 0 is exactly `Λ^k φ`.
pub fn sym_power_terms(form: &DiagonalForm, k: i64) -> Result<Vec<DiagonalForm>> {
    if k < 0 {
        return Err(Error::NegativePower(k));
    }
    let n = form.dim();
    let top = (k + 1) / 2;
    Ok((0..=top)
        .map(|i| lambda_power(form, k - 2 * i).times(&multichoose(&n, i as u64)))
        .collect())
}

/// Cap on the number of terms the naive enumerations may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap(pub u64);

impl EnumerationCap {
    pub const DEFAULT: EnumerationCap = EnumerationCap(10_000_000);

    /// Reads `QF_ENUM_CAP`, falling back to the default.
    pub fn from_env() -> Self {
        std::env::var("QF_ENUM_CAP")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(EnumerationCap)
            .unwrap_or_default()
    }

    fn admit(&self, count: &BigUint) -> Result<usize> {
        match count.to_u64() {
            Some(c) if c <= self.0 => Ok(c as usize),
            _ => Err(Error::EnumerationTooLarge {
                count: count.to_string(),
                cap: self.0,
            }),
        }
    }
}

impl Default for EnumerationCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

const MAX_ENUM_ATOMS: usize = 20;

/// Flattened entry list with each class encoded as a bitmask over the form's atoms.
struct Expanded {
    atoms: Vec<Atom>,
    masks: Vec<u32>,
}

impl Expanded {
    fn new(form: &DiagonalForm) -> Result<Self> {
        let mut atoms: Vec<Atom> = form
            .entries()
            .flat_map(|(c, _)| c.atoms().cloned())
            .collect();
        atoms.sort();
        atoms.dedup();
        if atoms.len() > MAX_ENUM_ATOMS {
            return Err(Error::OutOfRange(format!(
                "naive enumeration supports at most {MAX_ENUM_ATOMS} atoms"
            )));
        }
        let mut masks = Vec::new();
        for (c, m) in form.entries() {
            let mask = c
                .atoms()
                .map(|a| 1u32 << atoms.binary_search(a).expect("atom collected"))
                .fold(0, |x, b| x ^ b);
            let m = m.to_usize().expect("multiplicity admitted by cap");
            masks.extend(std::iter::repeat_n(mask, m));
        }
        Ok(Expanded { atoms, masks })
    }

    fn collect(&self, counts: &[u64]) -> DiagonalForm {
        let mut out = DiagonalForm::zero();
        for (mask, &n) in counts.iter().enumerate() {
            if n == 0 {
                continue;
            }
            let class = SquareClass::from_atoms(
                (0..self.atoms.len())
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| self.atoms[b].clone()),
            );
            out.add_entry(class, BigUint::from(n));
        }
        out
    }
}

fn walk(masks: &[u32], start: usize, remaining: usize, acc: u32, strict: bool, counts: &mut [u64]) {
    if remaining == 1 {
        for &m in &masks[start..] {
            counts[(acc ^ m) as usize] += 1;
        }
        return;
    }
    for i in start..masks.len() {
        let next = if strict { i + 1 } else { i };
        walk(masks, next, remaining - 1, acc ^ masks[i], strict, counts);
    }
}

fn naive(
    form: &DiagonalForm,
    k: i64,
    count: BigUint,
    strict: bool,
    cap: EnumerationCap,
) -> Result<DiagonalForm> {
    cap.admit(&count)?;
    if count.is_zero() {
        return Ok(DiagonalForm::zero());
    }
    if k == 0 {
        return Ok(DiagonalForm::one());
    }
    let ex = Expanded::new(form)?;
    let mut counts = vec![0u64; 1 << ex.atoms.len()];
    walk(&ex.masks, 0, k as usize, 0, strict, &mut counts);
    Ok(ex.collect(&counts))
}

/// `Λ^k φ` by enumerating all `k`-subsets of the entry list.
pub fn naive_lambda(form: &DiagonalForm, k: i64, cap: EnumerationCap) -> Result<DiagonalForm> {
    if k < 0 {
        return Ok(DiagonalForm::zero());
    }
    naive(form, k, choose(&form.dim(), k as u64), true, cap)
}

/// `S^k φ` by enumerating all degree-`k` monomials in the entries.
pub fn naive_sym(form: &DiagonalForm, k: i64, cap: EnumerationCap) -> Result<DiagonalForm> {
    if k < 0 {
        return Err(Error::NegativePower(k));
    }
    naive(form, k, multichoose(&form.dim(), k as u64), false, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::{isometric, normalize};
    use crate::square_class::FieldMode;
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
    fn lambda_examples() {
        assert_eq!(
            lambda_power(&h(1), 2),
            DiagonalForm::unit(SquareClass::minus_one())
        );
        // Pair products of <1,-1,1,-1>: 1·1, (-1)(-1), and four mixed.
        let mut expected = DiagonalForm::repeated(SquareClass::one(), big(2));
        expected.add_entry(SquareClass::minus_one(), big(4));
        assert_eq!(lambda_power(&h(2), 2), expected);
        let nf = normalize(&expected, FieldMode::Generic);
        assert_eq!(nf.hyp(), &big(2));
        assert!(lambda_power(&h(1), 3).is_zero());
        assert_eq!(lambda_power(&h(3), 0), DiagonalForm::one());
        assert!(lambda_power(&h(3), -1).is_zero());
    }

    #[test]
    fn sym_examples() {
        assert_eq!(
            sym_power(&h(1), 2).unwrap(),
            DiagonalForm::from_classes([c(&[]), c(&["-1"]), c(&[])])
        );
        let phi = DiagonalForm::repeated(c(&[]), big(2)).perp(&h(1));
        let expected = DiagonalForm::repeated(c(&[]), big(4)).perp(&h(3));
        assert!(isometric(
            &sym_power(&phi, 2).unwrap(),
            &expected,
            FieldMode::Generic
        ));
        // 35 monomials of degree 4 in <1,a,b,ab>, exponents reduced mod 2.
        let q = DiagonalForm::from_classes([c(&[]), c(&["a"]), c(&["b"]), c(&["a", "b"])]);
        let mut expected = DiagonalForm::repeated(c(&[]), big(11));
        expected.add_entry(c(&["a"]), big(8));
        expected.add_entry(c(&["b"]), big(8));
        expected.add_entry(c(&["a", "b"]), big(8));
        assert_eq!(sym_power(&q, 4).unwrap(), expected);
        assert_eq!(sym_power(&q, -1), Err(Error::NegativePower(-1)));
    }

    #[test]
    fn s3_route_examples() {
        let s = sym_power_via_s3(&h(1), 2).unwrap();
        assert!(isometric(
            &s,
            &DiagonalForm::one().perp(&h(1)),
            FieldMode::Generic
        ));
        let q = DiagonalForm::from_classes([c(&["a"]), c(&["b", "-1"])]);
        assert_eq!(sym_power_via_s3(&q, 0).unwrap(), DiagonalForm::one());
        assert_eq!(sym_power_via_s3(&q, 1).unwrap(), q);
        assert_eq!(
            sym_power_via_s3(&DiagonalForm::zero(), 0).unwrap(),
            DiagonalForm::one()
        );
        assert!(sym_power_via_s3(&DiagonalForm::zero(), 3)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn naive_examples() {
        let f = DiagonalForm::from_classes([c(&[]), c(&["a"]), c(&["b"])]);
        assert_eq!(
            naive_lambda(&f, 2, EnumerationCap::DEFAULT).unwrap(),
            DiagonalForm::from_classes([c(&["a"]), c(&["b"]), c(&["a", "b"])])
        );
        let a = DiagonalForm::unit(c(&["a"]));
        assert_eq!(naive_sym(&a, 5, EnumerationCap::DEFAULT).unwrap(), a);
        assert_eq!(naive_sym(&h(1), 3, EnumerationCap::DEFAULT).unwrap(), h(2));
    }

    #[test]
    fn naive_cap_enforced() {
        let f = h(20);
        let err = naive_sym(&f, 8, EnumerationCap(1000)).unwrap_err();
        assert!(err
            .to_string()
            .contains("enumeration too large; use convolution route"));
        assert!(naive_lambda(&f, 8, EnumerationCap(1000)).is_err());
        assert!(naive_lambda(&f, 1, EnumerationCap(1000)).is_ok());
    }

    #[test]
    fn lemma_l1_small_grid() {
        for m in 1..=20u64 {
            for k in 0..=12u64 {
                let expected_count = choose(&big(m + k - 1), k);
                let plus = sym_power(
                    &DiagonalForm::repeated(SquareClass::one(), big(m)),
                    k as i64,
                )
                .unwrap();
                assert_eq!(
                    plus,
                    DiagonalForm::repeated(SquareClass::one(), expected_count.clone())
                );
                let minus = sym_power(
                    &DiagonalForm::repeated(SquareClass::minus_one(), big(m)),
                    k as i64,
                )
                .unwrap();
                assert_eq!(
                    minus,
                    DiagonalForm::repeated(SquareClass::minus_one().pow(k), expected_count)
                );
            }
        }
    }

    proptest! {
        #[test]
        fn dimension_formulas(f in arb_form(), k in 0i64..10) {
            let n = f.dim();
            prop_assert_eq!(lambda_power(&f, k).dim(), choose(&n, k as u64));
            prop_assert_eq!(sym_power(&f, k).unwrap().dim(), multichoose(&n, k as u64));
        }

        #[test]
        fn routes_agree(f in arb_form(), k in 0i64..7) {
            let conv = sym_power(&f, k).unwrap();
            prop_assert_eq!(&sym_power_via_s3(&f, k).unwrap(), &conv);
            prop_assert_eq!(&naive_sym(&f, k, EnumerationCap::DEFAULT).unwrap(), &conv);
            prop_assert_eq!(naive_lambda(&f, k, EnumerationCap::DEFAULT).unwrap(), lambda_power(&f, k));
        }

        #[test]
        fn exterior_power_is_leading_s3_term(f in arb_form(), k in 0i64..8) {
            let terms = sym_power_terms(&f, k).unwrap();
            prop_assert_eq!(&terms[0], &lambda_power(&f, k));
        }

        #[test]
        fn symmetric_power_respects_isometry(f in arb_form(), names in proptest::sample::subsequence(vec!["-1", "a", "b"], 0..3), k in 0i64..7) {
            // Replace an explicit <c, -c> by H: same normal form, same S^k up to isometry.
            let cl = SquareClass::from_names(&names).unwrap();
            let with_pair = f.perp(&DiagonalForm::from_classes([cl.clone(), cl.negate()]));
            let with_h = f.perp(&h(1));
            prop_assert!(isometric(&with_pair, &with_h, FieldMode::Generic));
            prop_assert!(isometric(
                &sym_power(&with_pair, k).unwrap(),
                &sym_power(&with_h, k).unwrap(),
                FieldMode::Generic
            ));
        }
    }
}
