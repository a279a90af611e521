//! Exact sparse polynomials over the rationals.

mod parse;
mod poly;
mod uni;

use thiserror::Error;

pub use parse::{parse_in, parse_poly, ParseError, ParseErrorKind, MAX_EXPONENT};
pub use poly::{rat, ratio, MPoly, Monomial, Rat, VarSet, MAX_VARS};
pub use uni::{
    divides, gcd_poly, is_squarefree, resultant, resultant_normalized, resultant_uni,
    squarefree_part, UniPoly,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unsupported number of variables: {0}")]
    BadArity(usize),
    #[error("invalid variable name '{0}'")]
    BadVariableName(String),
    #[error("duplicate variable '{0}'")]
    DuplicateVariable(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("variable '{0}' still occurs")]
    VariableInUse(String),
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("exact division has a nonzero remainder")]
    NotDivisible,
    #[error("{0} of the zero polynomial is undefined")]
    ZeroPolynomial(&'static str),
}

/// Binary operation selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    DivExact,
}

pub fn poly_arith(op: ArithOp, p: &MPoly, q: &MPoly) -> Result<MPoly, PolyError> {
    match op {
        ArithOp::Add => p.try_add(q),
        ArithOp::Sub => p.try_sub(q),
        ArithOp::Mul => p.try_mul(q),
        ArithOp::DivExact => p.div_exact(q),
    }
}

/// `(p(x,y) - p(x,y')) / (y - y')` in the ring `(x, y, y')`.
///
/// `p` must be over two variables; `yname` picks which one is doubled.
pub fn divided_difference(p: &MPoly, yname: &str, yprime: &str) -> Result<MPoly, PolyError> {
    if p.nvars() != 2 {
        return Err(PolyError::BadArity(p.nvars()));
    }
    let yi = p
        .vars()
        .index_of(yname)
        .ok_or_else(|| PolyError::UnknownVariable(yname.to_string()))?;
    let xi = 1 - yi;
    let vars = VarSet::new([p.vars().name(xi), yname, yprime])?;
    let mut r = MPoly::zero(&vars);
    for (m, c) in p.terms() {
        let (ex, ey) = (m.0[xi], m.0[yi]);
        for k in 0..ey {
            r.add_term(Monomial([ex, k, ey - 1 - k]), c.clone());
        }
    }
    Ok(r)
}

/// Outcome of a weighted homogeneity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QhCheck {
    Degree(u64),
    NotQuasihomogeneous,
    Zero,
}

/// Tests whether every term of `p` has the same weighted degree.
pub fn qh_check(p: &MPoly, weights: &[u64]) -> QhCheck {
    let mut deg = None;
    for (m, _) in p.terms() {
        let d = m.weighted_degree(weights);
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return QhCheck::NotQuasihomogeneous,
            _ => {}
        }
    }
    deg.map_or(QhCheck::Zero, QhCheck::Degree)
}

/// Smallest total degree of a term.
pub fn order_at_origin(p: &MPoly) -> Result<u32, PolyError> {
    p.min_degree().ok_or(PolyError::ZeroPolynomial("order"))
}
