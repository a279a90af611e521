//! Dimensions of local algebras at the origin.

mod groebner;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{MPoly, Monomial, PolyError, VarSet};

pub use groebner::TermOrder;

/// Default truncation bound for colength computations.
pub const DEFAULT_MAX_ORDER: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalAlgError {
    #[error("empty generator list")]
    EmptyGenerators,
    #[error("generators live over different variables")]
    MixedVariables,
    #[error("max order must be at least 2, got {0}")]
    BadMaxOrder(u32),
    #[error("plane curve expected, got {0} variables")]
    NotPlaneCurve(usize),
    #[error("intersection matrix has wrong dimensions")]
    Dimensions,
    #[error("intersection matrix is not symmetric")]
    NotSymmetric,
    #[error("branch intersection numbers must be positive")]
    NonPositive,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Generators of an ideal; zero generators are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealGens {
    vars: VarSet,
    gens: Vec<MPoly>,
}

impl IdealGens {
    pub fn new(gens: Vec<MPoly>) -> Result<IdealGens, LocalAlgError> {
        let first = gens.first().ok_or(LocalAlgError::EmptyGenerators)?;
        let vars = first.vars().clone();
        if gens.iter().any(|g| g.vars() != &vars) {
            return Err(LocalAlgError::MixedVariables);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealGens { vars, gens })
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn gens(&self) -> &[MPoly] {
        &self.gens
    }

    /// `true` for the zero ideal.
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Reduced graded lexicographic Gröbner basis.
pub fn groebner(gens: &IdealGens) -> IdealGens {
    IdealGens {
        vars: gens.vars.clone(),
        gens: groebner::reduced_basis(&gens.gens, &gens.vars),
    }
}

/// Normal form modulo a basis produced by [`groebner`].
pub fn normal_form(p: &MPoly, basis: &IdealGens) -> MPoly {
    groebner::normal_form_grlex(p, &basis.gens)
}

/// Colength of an ideal at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColengthResult {
    Finite(u64),
    /// No stabilization up to the carried truncation order.
    InfiniteAtBound(u32),
}

impl ColengthResult {
    pub fn finite(self) -> Option<u64> {
        match self {
            ColengthResult::Finite(v) => Some(v),
            ColengthResult::InfiniteAtBound(_) => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ColengthResult::Finite(_))
    }
}

impl fmt::Display for ColengthResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColengthResult::Finite(v) => write!(f, "{v}"),
            ColengthResult::InfiniteAtBound(b) => write!(f, "infinite (no stabilization below order {b})"),
        }
    }
}

pub(crate) fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    match nvars {
        1 => vec![Monomial([d, 0, 0])],
        2 => (0..=d).rev().map(|i| Monomial([i, d - i, 0])).collect(),
        3 => {
            let mut v = Vec::new();
            for i in (0..=d).rev() {
                for j in (0..=d - i).rev() {
                    v.push(Monomial([i, j, d - i - j]));
                }
            }
            v
        }
        _ => unreachable!("arity checked at construction"),
    }
}

/// Hilbert–Samuel increments `dim 𝔪^k/(I∩𝔪^k + 𝔪^{k+1})` for `k < n`.
pub fn hilbert_samuel_counts(gens: &IdealGens, n: u32) -> Vec<u64> {
    let lms = groebner::local_leading_monomials(&gens.gens, n);
    (0..n)
        .map(|k| {
            monomials_of_degree(gens.vars.len(), k)
                .iter()
                .filter(|m| !lms.iter().any(|l| l.divides(m)))
                .count() as u64
        })
        .collect()
}

/// `dim 𝒪/I` at the origin.
///
/// The truncations `d_N = dim 𝒪/(I + 𝔪^N)` are read off one standard basis
/// per truncation level; the first `N` with `d_N = d_{N+1}` gives the value.
pub fn colength_local(gens: &IdealGens, max_order: u32) -> Result<ColengthResult, LocalAlgError> {
    if max_order < 2 {
        return Err(LocalAlgError::BadMaxOrder(max_order));
    }
    let mut n = max_order.min(8);
    loop {
        let counts = hilbert_samuel_counts(gens, n);
        if let Some(k) = counts.iter().position(|&c| c == 0) {
            return Ok(ColengthResult::Finite(counts[..k].iter().sum()));
        }
        if n >= max_order {
            return Ok(ColengthResult::InfiniteAtBound(max_order));
        }
        n = (2 * n).min(max_order);
    }
}

/// `dim ℚ[x]/(I + 𝔪^n)` from a graded lexicographic basis that includes all monomials of degree `n`.
pub fn truncated_dimension(gens: &IdealGens, n: u32) -> u64 {
    let nv = gens.vars.len();
    let mut all = gens.gens.clone();
    all.extend(
        monomials_of_degree(nv, n)
            .into_iter()
            .map(|m| MPoly::monomial(&gens.vars, m, crate::exactpoly::rat(1))),
    );
    let gb = groebner::reduced_basis(&all, &gens.vars);
    let lms: Vec<Monomial> = gb.iter().map(|g| *g.leading_term().expect("nonzero").0).collect();
    (0..n)
        .flat_map(|k| monomials_of_degree(nv, k))
        .filter(|m| !lms.iter().any(|l| l.divides(m)))
        .count() as u64
}

/// Colength through global bases of `I + 𝔪^N` for `N = 1, 2, …`; slow, used as a cross-check.
pub fn colength_by_stabilization(gens: &IdealGens, max_order: u32) -> ColengthResult {
    let mut prev = truncated_dimension(gens, 1);
    for n in 2..=max_order {
        let d = truncated_dimension(gens, n);
        if d == prev {
            return ColengthResult::Finite(d);
        }
        prev = d;
    }
    ColengthResult::InfiniteAtBound(max_order)
}

fn plane(p: &MPoly) -> Result<(), LocalAlgError> {
    if p.nvars() != 2 {
        return Err(LocalAlgError::NotPlaneCurve(p.nvars()));
    }
    Ok(())
}

/// `dim 𝒪₂/⟨p, q⟩`.
pub fn intersection_multiplicity(p: &MPoly, q: &MPoly, max_order: u32) -> Result<ColengthResult, LocalAlgError> {
    plane(p)?;
    plane(q)?;
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial("intersection multiplicity").into());
    }
    colength_local(&IdealGens::new(vec![p.clone(), q.clone()])?, max_order)
}

/// Milnor number of a plane curve germ at the origin.
///
/// A curve not passing through the origin has Milnor number 0.
pub fn milnor_number(p: &MPoly, max_order: u32) -> Result<ColengthResult, LocalAlgError> {
    plane(p)?;
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial("Milnor number").into());
    }
    if !num_traits::Zero::is_zero(&p.constant_term()) {
        return Ok(ColengthResult::Finite(0));
    }
    let gens = IdealGens::new(vec![p.derivative(0), p.derivative(1)])?;
    colength_local(&gens, max_order)
}

/// Milnor number of a reduced curve from its branches: `Σ(μ_q − 1) + 2 Σ_{q<j} i(q,j) + 1`.
pub fn milnor_from_branches(branch_mus: &[i64], pairwise: &[Vec<i64>]) -> Result<i64, LocalAlgError> {
    let n = branch_mus.len();
    if n == 0 || (n > 1 || !pairwise.is_empty()) && (pairwise.len() != n || pairwise.iter().any(|r| r.len() != n)) {
        return Err(LocalAlgError::Dimensions);
    }
    let mut cross = 0i64;
    for (q, row) in pairwise.iter().enumerate() {
        for (j, &i_qj) in row.iter().enumerate().skip(q + 1) {
            if i_qj != pairwise[j][q] {
                return Err(LocalAlgError::NotSymmetric);
            }
            if i_qj <= 0 {
                return Err(LocalAlgError::NonPositive);
            }
            cross += i_qj;
        }
    }
    Ok(branch_mus.iter().map(|m| m - 1).sum::<i64>() + 2 * cross + 1)
}
