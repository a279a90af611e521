//! Double point curves of corank-one germs and their branches.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{
    divided_difference, gcd_poly, qh_check, rat, resultant, squarefree_part, MPoly, Monomial, PolyError, QhCheck,
    Rat, VarSet,
};
use crate::germ::{
    corank, image_multiplicity_formula, is_finite, GermError, MapGerm, NormalFormInfo, QhType,
};
use crate::localalg::{milnor_number, ColengthResult, LocalAlgError};

/// Name of the doubled source variable.
pub const YPRIME: &str = "y_";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoublePointError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    LocalAlg(#[from] LocalAlgError),
    #[error("first coordinate must be x")]
    FirstCoordinateNotX,
    #[error("resultant vanishes identically: f is not generically one-to-one")]
    NotGenerically1to1,
    #[error("double point curve is not quasihomogeneous for weights ({0},{1})")]
    LambdaNotQuasihomogeneous(u64, u64),
    #[error("double point curve is not reduced")]
    NotReduced,
    #[error("residual factor of the double point curve is not a polynomial in y^a/x^b")]
    ResidualShape,
    #[error("branch restriction has degree {0}")]
    InvalidDegree(u64),
    #[error("multiplicity {0} is outside the domain of this operation")]
    Multiplicity(String),
    #[error("fold images lie in {0}")]
    FoldPlanes(String),
}

/// Divided differences `(P, Q)` of `f2`, `f3` over `(x, y, y')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleLift {
    pub p: MPoly,
    pub q: MPoly,
}

pub fn double_point_lift(f: &MapGerm) -> Result<DoubleLift, DoublePointError> {
    if f.coord(0) != &f.x() {
        return Err(DoublePointError::FirstCoordinateNotX);
    }
    let y = f.vars().name(1).to_string();
    Ok(DoubleLift {
        p: divided_difference(f.coord(1), &y, YPRIME)?,
        q: divided_difference(f.coord(2), &y, YPRIME)?,
    })
}

/// Equation of the double point curve, primitive with positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda {
    pub poly: MPoly,
    /// `(d; a, b)` when weighted homogeneous for the germ's weights.
    pub qh: Option<(u64, u64, u64)>,
}

/// `λ = Res_{y'}(P, Q)`, made primitive.
pub fn double_point_curve(f: &MapGerm) -> Result<Lambda, DoublePointError> {
    let lift = double_point_lift(f)?;
    let unit = |p: &MPoly| p.is_constant() && !p.is_zero();
    let lam = if unit(&lift.p) || unit(&lift.q) {
        MPoly::one(lift.p.vars())
    } else if lift.p.is_zero() || lift.q.is_zero() {
        return Err(DoublePointError::NotGenerically1to1);
    } else {
        resultant(&lift.p, &lift.q, YPRIME)?
    };
    if lam.is_zero() {
        return Err(DoublePointError::NotGenerically1to1);
    }
    let poly = lam.drop_var(2)?.remap(f.vars(), &[0, 1]).primitive();
    let qh = crate::germ::infer_qh_type(f).ok().and_then(|t| match qh_check(&poly, &[t.a, t.b]) {
        QhCheck::Degree(d) => Some((d, t.a, t.b)),
        _ => None,
    });
    Ok(Lambda { poly, qh })
}

/// Finite determinacy verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum FdVerdict {
    #[serde(rename = "FD")]
    Fd,
    NotFinite,
    NotGenerically1to1,
    NonReducedD,
    Unsupported(String),
}

impl FdVerdict {
    pub fn is_fd(&self) -> bool {
        matches!(self, FdVerdict::Fd)
    }
}

impl fmt::Display for FdVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FdVerdict::Fd => write!(f, "FD"),
            FdVerdict::NotFinite => write!(f, "NotFinite"),
            FdVerdict::NotGenerically1to1 => write!(f, "NotGenerically1to1"),
            FdVerdict::NonReducedD => write!(f, "NonReducedD"),
            FdVerdict::Unsupported(s) => write!(f, "Unsupported({s})"),
        }
    }
}

/// Finite determinacy through the double point curve.
///
/// FD iff `f` is finite, `λ ≢ 0` and `μ(λ)` is finite at the origin.
pub fn is_finitely_determined(f: &MapGerm, max_order: u32) -> Result<FdVerdict, DoublePointError> {
    if corank(f) == 2 {
        return Ok(FdVerdict::Unsupported("corank 2".into()));
    }
    if f.coord(0) != &f.x() {
        return Ok(FdVerdict::Unsupported("first coordinate must be x".into()));
    }
    if !is_finite(f, max_order)? {
        return Ok(FdVerdict::NotFinite);
    }
    let lam = match double_point_curve(f) {
        Ok(l) => l,
        Err(DoublePointError::NotGenerically1to1) => return Ok(FdVerdict::NotGenerically1to1),
        Err(e) => return Err(e),
    };
    Ok(match milnor_number(&lam.poly, max_order)? {
        ColengthResult::Finite(_) => FdVerdict::Fd,
        ColengthResult::InfiniteAtBound(_) => FdVerdict::NonReducedD,
    })
}

/// Which branch of the double point curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchKind {
    /// The curve `V(x)`.
    XAxis,
    /// The curve `V(y)`.
    YAxis,
    /// All branches `y^a = α x^b` with `α` a root of `class_poly(t)`.
    ConicClass { class_poly: MPoly, a: u64, b: u64 },
}

impl BranchKind {
    pub fn label(&self) -> &'static str {
        match self {
            BranchKind::XAxis => "V(x)",
            BranchKind::YAxis => "V(y)",
            BranchKind::ConicClass { .. } => "conic",
        }
    }

    /// Reduced equation of the branch or class in the source ring `vars`.
    pub fn curve(&self, vars: &VarSet) -> MPoly {
        match self {
            BranchKind::XAxis => MPoly::var(vars, 0),
            BranchKind::YAxis => MPoly::var(vars, 1),
            BranchKind::ConicClass { class_poly, a, b } => {
                let k = class_poly.total_degree().unwrap_or(0);
                let mut out = MPoly::zero(vars);
                for (m, c) in class_poly.terms() {
                    let l = m.0[0];
                    let mono = Monomial([*b as u32 * (k - l), *a as u32 * l, 0]);
                    out = &out + &MPoly::monomial(vars, mono, c.clone());
                }
                out
            }
        }
    }

    /// Number of complex branches represented.
    pub fn count(&self) -> u64 {
        match self {
            BranchKind::ConicClass { class_poly, .. } => class_poly.total_degree().unwrap_or(0) as u64,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Identification,
    Fold,
    Invalid(u64),
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Identification => write!(f, "identification"),
            Classification::Fold => write!(f, "fold"),
            Classification::Invalid(d) => write!(f, "invalid(degree {d})"),
        }
    }
}

/// A branch or a ℚ-class of branches with its restriction data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub kind: BranchKind,
    /// `[f2, f3]` identically zero along the branch.
    pub vanishing: [bool; 2],
    /// Exponents of the nonzero coordinates of `f∘φ` for a primitive parametrization `φ`.
    pub exponents: [Option<u64>; 3],
    pub degree: u64,
    pub classification: Classification,
}

impl Branch {
    pub fn count(&self) -> u64 {
        self.kind.count()
    }

    /// Smallest exponent of `f∘φ`, i.e. the order of a generic linear form along the branch.
    pub fn min_exponent(&self) -> Option<u64> {
        self.exponents.iter().flatten().copied().min()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchSet {
    pub s: u32,
    pub v: u32,
    pub branches: Vec<Branch>,
    pub r_i: u64,
    pub r_f: u64,
}

fn t_vars() -> VarSet {
    VarSet::new(["t"]).expect("valid")
}

fn theta_t_vars() -> VarSet {
    VarSet::new(["theta", "t"]).expect("valid")
}

/// `N(t) = Res_θ(θ^a − t, g(1, θ))`: vanishes at `α` iff `g` vanishes on the branch `y^a = α x^b`.
pub fn branch_norm(g: &MPoly, a: u64) -> Result<MPoly, DoublePointError> {
    let vs = theta_t_vars();
    let big_g = g.eval_var(0, &rat(1)).remap(&vs, &[1, 0]);
    let theta_a = MPoly::monomial(&vs, Monomial([a as u32, 0, 0]), rat(1));
    let shift = &theta_a - &MPoly::var(&vs, 1);
    let n = if big_g.is_zero() {
        MPoly::zero(&vs)
    } else {
        resultant(&shift, &big_g, "theta")?
    };
    Ok(n.drop_var(0)?.remap(&t_vars(), &[0]))
}

fn gcd_all(vals: impl IntoIterator<Item = u64>) -> u64 {
    vals.into_iter().fold(0, |g, v| g.gcd(&v))
}

fn classify_degree(d: u64) -> Classification {
    match d {
        1 => Classification::Identification,
        2 => Classification::Fold,
        other => Classification::Invalid(other),
    }
}

/// Degree of `f` restricted to a branch, from monomial parametrizations.
pub fn classify_branch(kind: &BranchKind, vanishing: [bool; 2], f: &MapGerm, t: &QhType) -> Branch {
    let exponents: [Option<u64>; 3] = match kind {
        BranchKind::XAxis => {
            let e = |i: usize| -> Option<u64> {
                let r = f.coord(i).eval_var(0, &Rat::zero());
                r.min_degree().map(u64::from)
            };
            [None, e(1), e(2)]
        }
        BranchKind::YAxis => {
            let e = |i: usize| -> Option<u64> {
                let r = f.coord(i).eval_var(1, &Rat::zero());
                r.min_degree().map(u64::from)
            };
            [Some(1), e(1), e(2)]
        }
        BranchKind::ConicClass { a, .. } => [
            Some(*a),
            (!vanishing[0]).then_some(t.d[1]),
            (!vanishing[1]).then_some(t.d[2]),
        ],
    };
    let degree = match kind {
        BranchKind::YAxis => 1,
        BranchKind::ConicClass { a, .. } if vanishing == [true, true] => *a,
        _ => gcd_all(exponents.iter().flatten().copied()),
    };
    Branch {
        kind: kind.clone(),
        vanishing,
        exponents,
        degree,
        classification: classify_degree(degree),
    }
}

/// Splits λ into `V(x)`, `V(y)` and ℚ-classes of branches `y^a = α x^b`.
pub fn branch_decompose(lam: &Lambda, f: &MapGerm, t: &QhType) -> Result<BranchSet, DoublePointError> {
    let (a, b) = (t.a, t.b);
    let p = &lam.poly;
    let (s, v) = match (p.min_degree_in(0), p.min_degree_in(1)) {
        (Some(s), Some(v)) => (s, v),
        _ => return Err(DoublePointError::NotGenerically1to1),
    };
    if s > 1 || v > 1 {
        return Err(DoublePointError::NotReduced);
    }
    let deg = match qh_check(p, &[a, b]) {
        QhCheck::Degree(d) => d,
        _ => return Err(DoublePointError::LambdaNotQuasihomogeneous(a, b)),
    };
    let rest_deg = deg - s as u64 * a - v as u64 * b;
    if !rest_deg.is_multiple_of(a * b) {
        return Err(DoublePointError::ResidualShape);
    }
    let k = rest_deg / (a * b);
    let tv = t_vars();
    let mut big_b = MPoly::zero(&tv);
    for (m, c) in p.terms() {
        let (i, j) = (m.0[0] as u64 - s as u64, m.0[1] as u64 - v as u64);
        if j % a != 0 || i != b * (k - j / a) {
            return Err(DoublePointError::ResidualShape);
        }
        big_b = &big_b + &MPoly::monomial(&tv, Monomial([(j / a) as u32, 0, 0]), c.clone());
    }
    let big_b = big_b.primitive();
    if big_b.constant_term().is_zero() {
        return Err(DoublePointError::ResidualShape);
    }
    if !big_b.is_constant() && squarefree_part(&big_b)?.total_degree() != big_b.total_degree() {
        return Err(DoublePointError::NotReduced);
    }

    let mut kinds: Vec<(BranchKind, [bool; 2])> = Vec::new();
    if s == 1 {
        let van = [
            f.coord(1).eval_var(0, &Rat::zero()).is_zero(),
            f.coord(2).eval_var(0, &Rat::zero()).is_zero(),
        ];
        kinds.push((BranchKind::XAxis, van));
    }
    if v == 1 {
        let van = [
            f.coord(1).eval_var(1, &Rat::zero()).is_zero(),
            f.coord(2).eval_var(1, &Rat::zero()).is_zero(),
        ];
        kinds.push((BranchKind::YAxis, van));
    }
    if !big_b.is_constant() {
        let v2 = gcd_poly(&big_b, &branch_norm(f.coord(1), a)?);
        let v3 = gcd_poly(&big_b, &branch_norm(f.coord(2), a)?);
        let both = gcd_poly(&v2, &v3);
        let only2 = v2.div_exact(&both)?;
        let only3 = v3.div_exact(&both)?;
        let none = big_b.monic().div_exact(&(&(&both * &only2) * &only3))?;
        for (cls, van) in [
            (none, [false, false]),
            (only2, [true, false]),
            (only3, [false, true]),
            (both, [true, true]),
        ] {
            if !cls.is_constant() {
                kinds.push((
                    BranchKind::ConicClass {
                        class_poly: cls.primitive(),
                        a,
                        b,
                    },
                    van,
                ));
            }
        }
    }

    let branches: Vec<Branch> = kinds.iter().map(|(k, van)| classify_branch(k, *van, f, t)).collect();
    let mut r_i = 0;
    let mut r_f = 0;
    for br in &branches {
        match br.classification {
            Classification::Identification => r_i += br.count(),
            Classification::Fold => r_f += br.count(),
            Classification::Invalid(d) => return Err(DoublePointError::InvalidDegree(d)),
        }
    }
    Ok(BranchSet {
        s,
        v,
        branches,
        r_i,
        r_f,
    })
}

/// `(r_i, r_f)` over complex branches.
pub fn count_components(f: &MapGerm, t: &QhType) -> Result<(u64, u64), DoublePointError> {
    let lam = double_point_curve(f)?;
    let bs = branch_decompose(&lam, f, t)?;
    Ok((bs.r_i, bs.r_f))
}

/// `(gcd(n,m) − 1, gcd(a,n) − 1, gcd(a,m) − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SVector {
    pub s1: u64,
    pub s2: u64,
    pub s3: u64,
}

impl SVector {
    pub fn new(n: u64, m: u64, a: u64) -> SVector {
        SVector {
            s1: n.gcd(&m) - 1,
            s2: a.gcd(&n) - 1,
            s3: a.gcd(&m) - 1,
        }
    }

    pub fn as_array(&self) -> [u64; 3] {
        [self.s1, self.s2, self.s3]
    }
}

/// Which closed-form row produced a count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableRule {
    MultTwoAEven,
    MultTwoAOdd,
    S1,
    S2,
    S3,
    AllZero,
}

impl fmt::Display for TableRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TableRule::MultTwoAEven => "multiplicity 2, a even",
            TableRule::MultTwoAOdd => "multiplicity 2, a odd",
            TableRule::S1 => "s1 = 1",
            TableRule::S2 => "s2 = 1",
            TableRule::S3 => "s3 = 1",
            TableRule::AllZero => "s = (0,0,0)",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableOutcome {
    Counts {
        r_i: u64,
        r_f: u64,
        rule: TableRule,
        /// Total from the component-count formula (multiplicity ≥ 3 only).
        r_total: Option<u64>,
        s_vector: Option<SVector>,
    },
    NotApplicable(String),
}

fn exact_div(num: i64, den: i64) -> Option<u64> {
    (den != 0 && num >= 0 && num % den == 0).then(|| (num / den) as u64)
}

/// Closed-form `(r_i, r_f)` from the normal form and the weighted type.
pub fn table_r(nf: &NormalFormInfo, t: &QhType) -> TableOutcome {
    let na = |s: &str| TableOutcome::NotApplicable(s.to_string());
    if t.d[0] != t.a {
        return na("first degree must equal a");
    }
    let mult = image_multiplicity_formula(t);
    if !mult.is_integer() {
        return na("non-integer multiplicity");
    }
    let (a, b) = (t.a as i64, t.b as i64);
    if mult == rat(2) {
        if nf.n != 2 || !nf.p.is_zero() {
            return na("multiplicity 2 needs f2 = y^2");
        }
        let f3 = match nf.reconstruct() {
            Ok(g) => g.coord(2).clone(),
            Err(e) => return na(&e.to_string()),
        };
        if f3.terms().any(|(m, _)| m.0[1] % 2 == 0) {
            return na("multiplicity 2 needs f3 odd in y");
        }
        let s = f3.min_degree_in(0).unwrap_or(0) as i64;
        if s > 1 {
            return na("x^2 divides f3");
        }
        let Some(k) = exact_div(t.d[2] as i64 - s * a - b, a * b) else {
            return na("non-integer branch count");
        };
        let s = s as u64;
        return if a % 2 == 0 {
            TableOutcome::Counts {
                r_i: 0,
                r_f: k + s,
                rule: TableRule::MultTwoAEven,
                r_total: None,
                s_vector: None,
            }
        } else {
            TableOutcome::Counts {
                r_i: k,
                r_f: s,
                rule: TableRule::MultTwoAOdd,
                r_total: None,
                s_vector: None,
            }
        };
    }
    let Some(m) = nf.m else {
        return na("β = 0");
    };
    let (n, m) = (nf.n as i64, m as i64);
    let sv = SVector::new(n as u64, m as u64, a as u64);
    let ones = sv.as_array().iter().filter(|&&s| s == 1).count();
    if sv.as_array().iter().any(|&s| s > 1) || ones > 1 {
        return na("s-vector outside the admissible range");
    }
    let counts = if sv.s1 == 1 {
        exact_div((n - 1) * (m - 1), a).map(|r| (r.wrapping_sub(1), 1, TableRule::S1))
    } else if sv.s2 == 1 {
        exact_div((n - 2) * (m - 1), a).zip(exact_div(m - 1, a)).map(|(ri, rf)| (ri, rf, TableRule::S2))
    } else if sv.s3 == 1 {
        exact_div((n - 1) * (m - 2), a).zip(exact_div(n - 1, a)).map(|(ri, rf)| (ri, rf, TableRule::S3))
    } else {
        exact_div((n - 1) * (m - 1), a).map(|ri| (ri, 0, TableRule::AllZero))
    };
    let Some((r_i, r_f, rule)) = counts else {
        return na("non-integer table entry");
    };
    let s1 = sv.s1 as i64;
    let r_total = exact_div(b * (n - 1) * (m - 1) - s1 * a, a * b).map(|r| r + sv.s1);
    TableOutcome::Counts {
        r_i,
        r_f,
        rule,
        r_total,
        s_vector: Some(sv),
    }
}

/// Coordinate plane containing the images of all fold branches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FoldPlane {
    #[serde(rename = "X=0")]
    X,
    #[serde(rename = "Y=0")]
    Y,
    #[serde(rename = "Z=0")]
    Z,
    NoFolds,
}

impl fmt::Display for FoldPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FoldPlane::X => "X=0",
            FoldPlane::Y => "Y=0",
            FoldPlane::Z => "Z=0",
            FoldPlane::NoFolds => "no folds",
        };
        write!(f, "{s}")
    }
}

/// Plane singled out by the s-vector.
pub fn expected_fold_plane(sv: &SVector) -> FoldPlane {
    match sv.as_array() {
        [1, _, _] => FoldPlane::X,
        [_, 1, _] => FoldPlane::Z,
        [_, _, 1] => FoldPlane::Y,
        _ => FoldPlane::NoFolds,
    }
}

/// Intersects the coordinate planes containing each fold branch image.
pub fn fold_image_plane(bs: &BranchSet, t: &QhType) -> Result<FoldPlane, DoublePointError> {
    let mult = image_multiplicity_formula(t);
    if mult < rat(3) {
        return Err(DoublePointError::Multiplicity(mult.to_string()));
    }
    let mut common = [true; 3];
    let mut any = false;
    for br in bs.branches.iter().filter(|b| b.classification == Classification::Fold) {
        any = true;
        for (c, e) in common.iter_mut().zip(br.exponents) {
            *c &= e.is_none();
        }
    }
    if !any {
        return Ok(FoldPlane::NoFolds);
    }
    match common {
        [true, false, false] => Ok(FoldPlane::X),
        [false, true, false] => Ok(FoldPlane::Y),
        [false, false, true] => Ok(FoldPlane::Z),
        other => {
            let names: Vec<&str> = ["X=0", "Y=0", "Z=0"]
                .iter()
                .zip(other)
                .filter(|(_, c)| *c)
                .map(|(n, _)| *n)
                .collect();
            Err(DoublePointError::FoldPlanes(if names.is_empty() {
                "no common coordinate plane".into()
            } else {
                names.join(" and ")
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::{check_normal_form, infer_qh_type};
    use crate::exactpoly::parse_poly;
    use crate::localalg::DEFAULT_MAX_ORDER;

    fn g(c: [&str; 3]) -> MapGerm {
        MapGerm::parse(["x", "y"], c).unwrap()
    }

    fn p2(s: &str) -> MPoly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    fn p3(s: &str) -> MPoly {
        parse_poly(s, &["x", "y", YPRIME]).unwrap()
    }

    fn branches(c: [&str; 3]) -> BranchSet {
        let f = g(c);
        let t = infer_qh_type(&f).unwrap();
        branch_decompose(&double_point_curve(&f).unwrap(), &f, &t).unwrap()
    }

    #[test]
    fn lifts() {
        let l = double_point_lift(&g(["x", "y^2", "x*y"])).unwrap();
        assert_eq!((l.p, l.q), (p3("y + y_"), p3("x")));
        let l = double_point_lift(&g(["x", "y^2", "x*y^3 - x^5*y"])).unwrap();
        assert_eq!(l.q, p3("x*(y^2 + y*y_ + y_^2) - x^5"));
        let l = double_point_lift(&g(["x", "y^3", "x*y + y^2"])).unwrap();
        assert_eq!((l.p, l.q), (p3("y^2 + y*y_ + y_^2"), p3("x + y + y_")));
        assert_eq!(
            double_point_lift(&g(["y", "x", "x*y"])),
            Err(DoublePointError::FirstCoordinateNotX)
        );
    }

    #[test]
    fn curves() {
        let lam = |c| double_point_curve(&g(c)).unwrap().poly;
        assert!(lam(["x", "y^2", "x*y^3 - x^5*y"]).is_associate(&p2("x*y^2 - x^5")));
        assert_eq!(lam(["x", "y^3", "x*y"]), p2("x^2"));
        assert_eq!(lam(["x", "y^2", "x*y"]), p2("x"));
        assert_eq!(lam(["x", "y^3", "x*y + y^2"]), p2("x^2 + x*y + y^2"));
        assert_eq!(
            double_point_curve(&g(["x", "y^2", "y^4"])),
            Err(DoublePointError::NotGenerically1to1)
        );
    }

    #[test]
    fn verdicts() {
        let v = |c| is_finitely_determined(&g(c), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(v(["x", "y^2", "x*y^3 - x^5*y"]), FdVerdict::Fd);
        assert_eq!(v(["x", "y^3", "x*y"]), FdVerdict::NonReducedD);
        assert_eq!(v(["x", "y^3", "x*y + y^2"]), FdVerdict::Fd);
        assert_eq!(v(["x", "x*y", "x*y^2"]), FdVerdict::NotFinite);
        assert_eq!(v(["x", "y^2", "y^4"]), FdVerdict::NotGenerically1to1);
        assert!(matches!(v(["x^2", "y^2", "x^3 + y^3 + x*y"]), FdVerdict::Unsupported(_)));
        assert_eq!(v(["x", "y", "0"]), FdVerdict::Fd);
    }

    #[test]
    fn c5_branches() {
        let bs = branches(["x", "y^2", "x*y^3 - x^5*y"]);
        assert_eq!((bs.s, bs.v), (1, 0));
        assert_eq!(bs.branches.len(), 2);
        assert_eq!(bs.branches[0].kind, BranchKind::XAxis);
        assert_eq!(bs.branches[0].classification, Classification::Fold);
        let tv = t_vars();
        let cls = &bs.branches[1];
        assert_eq!(
            cls.kind,
            BranchKind::ConicClass {
                class_poly: crate::exactpoly::parse_in("t^2 - 1", &tv).unwrap(),
                a: 1,
                b: 2
            }
        );
        assert_eq!(cls.vanishing, [false, true]);
        assert_eq!(cls.classification, Classification::Identification);
        assert_eq!((bs.r_i, bs.r_f), (2, 1));
    }

    #[test]
    fn mond_list_counts() {
        let cases = [
            (["x", "y^2", "y^3 - x^2*y"], (2, 0)),
            (["x", "y^2", "y^3 + x^3*y"], (0, 1)),
            (["x", "y^2", "x*y^3 - x^3*y"], (2, 1)),
            (["x", "y^2", "x*y^3 + x^4*y"], (0, 2)),
            (["x", "y^2", "x*y"], (0, 1)),
        ];
        for (c, want) in cases {
            let bs = branches(c);
            assert_eq!((bs.r_i, bs.r_f), want, "{c:?}");
            let f = g(c);
            let t = infer_qh_type(&f).unwrap();
            match table_r(&check_normal_form(&f).unwrap(), &t) {
                TableOutcome::Counts { r_i, r_f, .. } => assert_eq!((r_i, r_f), want, "{c:?}"),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn s2_fold_class() {
        let bs = branches(["x", "y^2", "y^3 + x^3*y"]);
        let tv = t_vars();
        assert_eq!(bs.branches.len(), 1);
        assert_eq!(
            bs.branches[0].kind,
            BranchKind::ConicClass {
                class_poly: crate::exactpoly::parse_in("t + 1", &tv).unwrap(),
                a: 2,
                b: 3
            }
        );
        assert_eq!(bs.branches[0].classification, Classification::Fold);
    }

    #[test]
    fn higher_multiplicity_rows() {
        let cases: [([&str; 3], (u64, u64), [u64; 3], TableRule, FoldPlane); 4] = [
            (["x", "y^4", "x^5*y + x*y^5 + y^6"], (14, 1), [1, 0, 0], TableRule::S1, FoldPlane::X),
            (["x", "y^4", "2y^13 + x^2*y + 3x*y^7"], (4, 2), [0, 1, 0], TableRule::S2, FoldPlane::Z),
            (["x", "y^5 + x*y", "y^6"], (4, 1), [0, 0, 1], TableRule::S3, FoldPlane::Y),
            (["x", "y^3", "y^5 + x^2*y"], (4, 0), [0, 0, 0], TableRule::AllZero, FoldPlane::NoFolds),
        ];
        for (c, want, sv, rule_want, plane) in cases {
            let f = g(c);
            let t = infer_qh_type(&f).unwrap();
            let bs = branches(c);
            assert_eq!((bs.r_i, bs.r_f), want, "{c:?}");
            match table_r(&check_normal_form(&f).unwrap(), &t) {
                TableOutcome::Counts {
                    r_i,
                    r_f,
                    rule,
                    r_total,
                    s_vector,
                } => {
                    assert_eq!((r_i, r_f), want);
                    assert_eq!(rule, rule_want);
                    assert_eq!(r_total, Some(want.0 + want.1));
                    assert_eq!(s_vector.unwrap().as_array(), sv);
                    assert_eq!(expected_fold_plane(&s_vector.unwrap()), plane);
                }
                other => panic!("{other:?}"),
            }
            assert_eq!(fold_image_plane(&bs, &t).unwrap(), plane, "{c:?}");
        }
    }

    #[test]
    fn beta_zero_is_not_tabulated_above_two() {
        let f = g(["x", "y^3", "x*y^2 + x^2*y"]);
        let t = infer_qh_type(&f).unwrap();
        assert!(matches!(table_r(&check_normal_form(&f).unwrap(), &t), TableOutcome::NotApplicable(_)));
    }

    #[test]
    fn norms_detect_vanishing() {
        let tv = t_vars();
        let n = branch_norm(&p2("x*y^3 - x^5*y"), 1).unwrap();
        assert_eq!(n, crate::exactpoly::parse_in("t^3 - t", &tv).unwrap());
        let n = branch_norm(&p2("y^2"), 2).unwrap();
        assert_eq!(n.total_degree(), Some(2));
    }
}
