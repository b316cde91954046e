//! Expression trees over product atoms, with `nahm(...)`/`chi0(...)` escapes
//! for suite files.

use super::{expand_atom, ProductAtom};
use crate::coeff::Rat;
use crate::error::SeriesError;
use crate::exponent::{exp_int, Exponent};
use crate::nahm::MatrixSpec;
use crate::series::FracSeries;

#[derive(Clone, Debug, PartialEq)]
pub enum ProductExpr {
    Atom(ProductAtom),
    Scalar(Rat),
    /// `nahm(matrix | b1,b2,.. | c)` — full Nahm sum, resolved by the nahm module.
    Nahm {
        matrix: MatrixSpec,
        b: Vec<Exponent>,
        c: Exponent,
    },
    /// `chi0(s1,..,sr)` — shifted tadpole character with `x_i = q^(s_i)`.
    Chi0(Vec<Exponent>),
    Add(Box<ProductExpr>, Box<ProductExpr>),
    Sub(Box<ProductExpr>, Box<ProductExpr>),
    Mul(Box<ProductExpr>, Box<ProductExpr>),
    Div(Box<ProductExpr>, Box<ProductExpr>),
    Pow(Box<ProductExpr>, i64),
}

impl ProductExpr {
    /// Number of atom leaves (escapes count as one atom each).
    pub fn atom_count(&self) -> usize {
        match self {
            ProductExpr::Atom(_) | ProductExpr::Nahm { .. } | ProductExpr::Chi0(_) => 1,
            ProductExpr::Scalar(_) => 0,
            ProductExpr::Add(a, b)
            | ProductExpr::Sub(a, b)
            | ProductExpr::Mul(a, b)
            | ProductExpr::Div(a, b) => a.atom_count() + b.atom_count(),
            ProductExpr::Pow(a, _) => a.atom_count(),
        }
    }
}

/// Expand an expression tree to truncation `n`, distributing over the tree
/// with unit-division checks.
pub fn expand(expr: &ProductExpr, n: Exponent) -> Result<FracSeries<Rat>, SeriesError> {
    match expr {
        ProductExpr::Atom(a) => expand_atom(a, n),
        ProductExpr::Scalar(c) => {
            let mut s = FracSeries::zero(n);
            s.add_term(exp_int(0), c.clone());
            Ok(s)
        }
        ProductExpr::Nahm { matrix, b, c } => {
            let triple = crate::nahm::NahmTriple::from_spec(matrix, b, *c)?;
            crate::nahm::nahm_sum(&triple, n)
        }
        ProductExpr::Chi0(shifts) => crate::nahm::chi0(shifts, n),
        ProductExpr::Add(a, b) => Ok(expand(a, n)?.add(&expand(b, n)?)),
        ProductExpr::Sub(a, b) => Ok(expand(a, n)?.sub(&expand(b, n)?)),
        ProductExpr::Mul(a, b) => expand(a, n)?.mul_checked(&expand(b, n)?),
        ProductExpr::Div(a, b) => expand(a, n)?.mul_checked(&expand(b, n)?.invert()?),
        ProductExpr::Pow(a, k) => expand(a, n)?.pow(*k),
    }
}

/// Expand with enough headroom that the result is known to `depth` even when
/// Laurent prefactors and pessimistic truncation rules eat into the bound,
/// then cut back. Retries with growing margin; identity depths in suites are
/// what this backs.
pub fn expand_to_depth(
    expr: &ProductExpr,
    depth: Exponent,
) -> Result<FracSeries<Rat>, SeriesError> {
    let mut margin = exp_int(4);
    for _ in 0..6 {
        let s = expand(expr, depth + margin)?;
        if s.trunc() >= depth {
            return Ok(s.truncate(depth));
        }
        margin = margin * 2;
    }
    Err(SeriesError::TruncationUnderflow(depth))
}
