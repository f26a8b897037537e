use num_traits::One;
use qf_core::closed::{trace_form, TraceParams};
use qf_core::{DiagonalForm, SquareClass};

use crate::ast::{Entry, Expr};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Core(#[from] qf_core::Error),
    #[error("qS({0}) needs an even degree")]
    OddNormPart(u64),
}

fn entry_class(e: &Entry) -> Result<SquareClass, EvalError> {
    let mut class = if e.negative {
        SquareClass::minus_one()
    } else {
        SquareClass::one()
    };
    for f in &e.factors {
        let c = if f.bytes().all(|b| b.is_ascii_digit()) {
            let v: i64 = f
                .parse()
                .map_err(|_| qf_core::Error::OutOfRange(format!("integer entry {f}")))?;
            SquareClass::from_integer(v)?
        } else {
            SquareClass::atom(f)?
        };
        class = class.mul(&c);
    }
    Ok(class)
}

fn trace_params(n: u64, atoms: &Option<(String, String)>) -> Result<TraceParams, EvalError> {
    let p = TraceParams::concrete(n)?;
    Ok(match atoms {
        Some((a, b)) => p.with_atoms(a, b)?,
        None => p,
    })
}

/// Evaluates an expression to a diagonal form. Trace forms use the rational
/// square class of the concrete degree for `<n>`.
pub fn evaluate(e: &Expr) -> Result<DiagonalForm, EvalError> {
    Ok(match e {
        Expr::Perp(l, r) => evaluate(l)?.perp(&evaluate(r)?),
        Expr::Tensor(l, r) => evaluate(l)?.tensor(&evaluate(r)?),
        Expr::Times(n, inner) => evaluate(inner)?.times(n),
        Expr::Literal(entries) => {
            let mut form = DiagonalForm::zero();
            for en in entries {
                form.add_entry(entry_class(en)?, One::one());
            }
            form
        }
        Expr::Hyperbolic => DiagonalForm::hyperbolic(1)?,
        Expr::Zero => DiagonalForm::zero(),
        Expr::Sym(k, inner) => qf_core::power::sym_power(&evaluate(inner)?, power(*k)?)?,
        Expr::Ext(k, inner) => qf_core::power::lambda_power(&evaluate(inner)?, power(*k)?),
        Expr::Trace { n, atoms } => trace_form(&trace_params(*n, atoms)?),
        Expr::NormPart { n, atoms } => trace_params(*n, atoms)?
            .q_s()
            .ok_or(EvalError::OddNormPart(*n))?,
    })
}

fn power(k: u64) -> Result<i64, EvalError> {
    i64::try_from(k).map_err(|_| qf_core::Error::OutOfRange(format!("power {k}")).into())
}
