//! Exact binomial coefficients and the binomial identities the power
//! computations rely on.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `C(n, k)` for `n >= 0`; zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeUpperIndex(n));
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    Ok(BigInt::from(choose(&BigUint::from(n as u64), k as u64)))
}

/// `C(n, k)` with an arbitrary-precision upper index.
pub fn choose(n: &BigUint, k: u64) -> BigUint {
    let kb = BigUint::from(k);
    if &kb > n {
        return BigUint::zero();
    }
    // Use the smaller of k and n - k when n fits in a u64.
    let k = match u64::try_from(n - &kb) {
        Ok(rest) if rest < k => rest,
        _ => k,
    };
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - BigUint::from(i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// `C(n, k)` with signed indices, zero for `k < 0`; callers guarantee
/// `n >= 0` whenever `k >= 0`.
pub(crate) fn choose_signed(n: i64, k: i64) -> BigUint {
    if k < 0 {
        return BigUint::zero();
    }
    debug_assert!(n >= 0, "choose_signed({n}, {k})");
    if n < 0 {
        return BigUint::zero();
    }
    choose(&BigUint::from(n as u64), k as u64)
}

/// `C(n + k - 1, k)`: the number of size-`k` multisets drawn from `n` kinds.
/// `multichoose(0, 0) = 1`.
pub fn multichoose(n: &BigUint, k: u64) -> BigUint {
    if n.is_zero() {
        return if k == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    choose(&(n + BigUint::from(k) - 1u32), k)
}

/// The binomial `C(n, k)` for any integer `n` via the falling factorial
/// `n (n-1) ... (n-k+1) / k!`; zero for `k < 0`.
pub fn binomial_general(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n) - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `C(-q, i) = (-1)^i C(q + i - 1, i)`.
pub fn minus_transform(q: u64, i: u64) -> BigInt {
    let magnitude = multichoose(&BigUint::from(q), i);
    let sign = if i % 2 == 1 && !magnitude.is_zero() {
        Sign::Minus
    } else {
        Sign::Plus
    };
    BigInt::from_biguint(sign, magnitude)
}

/// Both sides of an integer identity and whether they agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub equal: bool,
}

impl IdentityCheck {
    fn new(lhs: BigInt, rhs: BigInt) -> Self {
        let equal = lhs == rhs;
        IdentityCheck { lhs, rhs, equal }
    }
}

fn sign_pow(e: u64) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `sum_{j=0}^r (-1)^j C(2p+j-1, j) C(p, r-j) = (-1)^r C(p+r-1, r)`,
/// left side summed term by term.
pub fn check_vandermonde_l2(p: u64, r: u64) -> IdentityCheck {
    let (pi, ri) = (p as i64, r as i64);
    let lhs: BigInt = (0..=ri)
        .map(|j| {
            sign_pow(j as u64) * binomial_general(2 * pi + j - 1, j) * binomial_general(pi, ri - j)
        })
        .sum();
    let rhs = sign_pow(r) * binomial_general(pi + ri - 1, ri);
    IdentityCheck::new(lhs, rhs)
}

/// Pascal's rule `C(r-1, s) + C(r-1, s-1) = C(r, s)` for `1 <= s <= r`.
pub fn check_pascal(r: i64, s: i64) -> Result<bool> {
    if r < 1 || s < 1 || s > r {
        return Err(Error::OutOfRange(format!(
            "Pascal's rule needs 1 <= s <= r, got r={r}, s={s}"
        )));
    }
    Ok(binomial(r - 1, s)? + binomial(r - 1, s - 1)? == binomial(r, s)?)
}

/// Absorption `C(r, s) = (r/s) C(r-1, s-1)` in cleared form `s C(r,s) = r C(r-1,s-1)`.
pub fn check_absorb_r1(r: i64, s: i64) -> Result<bool> {
    if r < 1 || s < 1 {
        return Err(Error::OutOfRange(format!(
            "absorption needs r, s >= 1, got r={r}, s={s}"
        )));
    }
    Ok(BigInt::from(s) * binomial(r, s)? == BigInt::from(r) * binomial(r - 1, s - 1)?)
}

/// `sum_{j=0}^r C(p+j-1, j) C(q+r-j, r-j) = C(p+q+r, r)`.
pub fn gen_vandermonde(p: u64, q: u64, r: u64) -> IdentityCheck {
    let (pi, qi, ri) = (p as i64, q as i64, r as i64);
    let lhs: BigInt = (0..=ri)
        .map(|j| binomial_general(pi + j - 1, j) * binomial_general(qi + ri - j, ri - j))
        .sum();
    let rhs = binomial_general(pi + qi + ri, ri);
    IdentityCheck::new(lhs, rhs)
}

/// Halves an integer that is known to be even.
pub(crate) fn half_exact(x: &BigInt, what: &str) -> Result<BigUint> {
    exact_div(x, &BigInt::from(2), what)
}

/// `x / d` when `d` divides `x` and the quotient is non-negative.
pub(crate) fn exact_div(x: &BigInt, d: &BigInt, what: &str) -> Result<BigUint> {
    let (q, r) = x.div_rem(d);
    if !r.is_zero() || q.is_negative() {
        return Err(Error::NotIntegral(format!("{what}: {x}/{d}")));
    }
    Ok(q.magnitude().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Pascal-triangle table, independent of the product formula.
    fn pascal_table(rows: usize) -> Vec<Vec<BigUint>> {
        let mut t: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
        for n in 1..rows {
            let prev = &t[n - 1];
            let mut row = vec![BigUint::one(); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            t.push(row);
        }
        t
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(6, 3).unwrap(), bi(20));
        assert_eq!(binomial(5, -1).unwrap(), bi(0));
        assert_eq!(binomial(0, 0).unwrap(), bi(1));
        assert_eq!(binomial(3, 5).unwrap(), bi(0));
        assert_eq!(binomial(-1, 0), Err(Error::NegativeUpperIndex(-1)));
    }

    #[test]
    fn choose_matches_pascal_triangle() {
        let t = pascal_table(70);
        for (n, row) in t.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&choose(&BigUint::from(n), k as u64), v, "C({n},{k})");
            }
            assert!(choose(&BigUint::from(n), n as u64 + 1).is_zero());
        }
    }

    #[test]
    fn big_upper_index() {
        // C(10^30, 2) = 10^30 (10^30 - 1) / 2
        let n = BigUint::from(10u32).pow(30);
        let expected = &n * (&n - 1u32) / 2u32;
        assert_eq!(choose(&n, 2), expected);
    }

    #[test]
    fn multichoose_edges() {
        assert_eq!(multichoose(&BigUint::zero(), 0), BigUint::one());
        assert!(multichoose(&BigUint::zero(), 3).is_zero());
        assert_eq!(multichoose(&BigUint::from(3u32), 2), BigUint::from(6u32));
    }

    #[test]
    fn minus_transform_examples() {
        assert_eq!(minus_transform(2, 3), bi(-4));
        assert_eq!(minus_transform(7, 0), bi(1));
        assert_eq!(minus_transform(1, 5), bi(-1));
        // (-2)(-3)(-4)/6
        assert_eq!(binomial_general(-2, 3), bi(-4));
    }

    #[test]
    fn minus_transform_matches_falling_factorial() {
        for q in 0..15u64 {
            for i in 0..15u64 {
                assert_eq!(
                    minus_transform(q, i),
                    binomial_general(-(q as i64), i as i64),
                    "q={q} i={i}"
                );
            }
        }
    }

    #[test]
    fn l2_examples() {
        let c = check_vandermonde_l2(1, 2);
        assert_eq!(
            (c.lhs.clone(), c.rhs.clone(), c.equal),
            (bi(1), bi(1), true)
        );
        for p in 0..5 {
            let c = check_vandermonde_l2(p, 0);
            assert_eq!((c.lhs, c.rhs, c.equal), (bi(1), bi(1), true));
        }
        let c = check_vandermonde_l2(3, 4);
        // (-1)^4 C(6,4) = 15
        assert_eq!(c.rhs, bi(15));
        assert!(c.equal);
    }

    #[test]
    fn pascal_examples() {
        assert!(check_pascal(5, 2).unwrap());
        assert!(check_pascal(1, 1).unwrap());
        assert!(check_pascal(10, 5).unwrap());
        assert!(check_pascal(3, 4).is_err());
        assert!(check_pascal(3, 0).is_err());
    }

    #[test]
    fn absorption_examples() {
        assert!(check_absorb_r1(7, 3).unwrap());
        assert!(check_absorb_r1(1, 1).unwrap());
        assert!(check_absorb_r1(12, 5).unwrap());
        assert!(check_absorb_r1(0, 1).is_err());
    }

    #[test]
    fn generalized_vandermonde_examples() {
        let c = gen_vandermonde(2, 3, 2);
        assert_eq!((c.lhs, c.rhs, c.equal), (bi(21), bi(21), true));
        let c = gen_vandermonde(4, 9, 0);
        assert_eq!((c.lhs, c.rhs, c.equal), (bi(1), bi(1), true));
        let c = gen_vandermonde(6, 3, 5);
        // C(14, 5) = 2002
        assert_eq!(c.rhs, bi(2002));
        assert!(c.equal);
    }

    #[test]
    fn exact_division() {
        assert_eq!(half_exact(&bi(10), "t").unwrap(), BigUint::from(5u32));
        assert!(half_exact(&bi(7), "t").is_err());
        assert!(half_exact(&bi(-4), "t").is_err());
    }
}
