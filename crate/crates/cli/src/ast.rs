use std::fmt;

use num_bigint::BigUint;

/// One diagonal entry of a literal: an optional sign and a product of
/// factors, each an identifier or a positive integer. `<1>` and `<-1>`
/// have the single factor `"1"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub negative: bool,
    pub factors: Vec<String>,
}

impl Entry {
    pub fn new(negative: bool, factors: &[&str]) -> Self {
        Entry {
            negative,
            factors: factors.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        f.write_str(&self.factors.join("*"))
    }
}

/// Expression syntax tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Perp(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Times(BigUint, Box<Expr>),
    Literal(Vec<Entry>),
    Hyperbolic,
    Zero,
    Sym(u64, Box<Expr>),
    Ext(u64, Box<Expr>),
    Trace {
        n: u64,
        atoms: Option<(String, String)>,
    },
    NormPart {
        n: u64,
        atoms: Option<(String, String)>,
    },
}

impl Expr {
    fn level(&self) -> u8 {
        match self {
            Expr::Perp(..) => 0,
            Expr::Tensor(..) => 1,
            _ => 2,
        }
    }
}

struct At<'a>(&'a Expr, u8);

impl fmt::Display for At<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.level() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn call(
    f: &mut fmt::Formatter<'_>,
    name: &str,
    n: u64,
    atoms: &Option<(String, String)>,
) -> fmt::Result {
    match atoms {
        Some((a, b)) => write!(f, "{name}({n}, {a}, {b})"),
        None => write!(f, "{name}({n})"),
    }
}

/// Canonical surface syntax; `parse` reads it back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Perp(l, r) => write!(f, "{} + {}", At(l, 0), At(r, 1)),
            Expr::Tensor(l, r) => write!(f, "{} * {}", At(l, 1), At(r, 2)),
            Expr::Times(n, e) => write!(f, "{n} x {}", At(e, 2)),
            Expr::Literal(entries) => {
                let parts: Vec<String> = entries.iter().map(|e| e.to_string()).collect();
                write!(f, "<{}>", parts.join(", "))
            }
            Expr::Hyperbolic => f.write_str("H"),
            Expr::Zero => f.write_str("0form"),
            Expr::Sym(k, e) => write!(f, "S^{k}({e})"),
            Expr::Ext(k, e) => write!(f, "L^{k}({e})"),
            Expr::Trace { n, atoms } => call(f, "TS", *n, atoms),
            Expr::NormPart { n, atoms } => call(f, "qS", *n, atoms),
        }
    }
}
