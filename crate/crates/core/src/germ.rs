//! Map germs from the plane to 3-space.

use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{parse_in, qh_check, rat, MPoly, Monomial, PolyError, QhCheck, Rat, VarSet};
use crate::localalg::{colength_local, ColengthResult, IdealGens, LocalAlgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    LocalAlg(#[from] LocalAlgError),
    #[error("a map germ needs exactly two source variables, got {0}")]
    SourceArity(usize),
    #[error("coordinate f{0} does not vanish at the origin")]
    OriginNotPreserved(usize),
    #[error("coordinate f{0} is identically zero")]
    ZeroCoordinate(usize),
    #[error("not quasihomogeneous: {0}")]
    NotQuasihomogeneous(String),
    #[error("invalid weights: {0}")]
    BadWeights(String),
    #[error("not in normal form: {0}")]
    NotInNormalForm(String),
    #[error("no admissible projection among the sampled candidates")]
    NoGenericProjection,
}

/// `f = (f1, f2, f3)` in two source variables, with `f(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapGerm {
    f: [MPoly; 3],
}

impl MapGerm {
    pub fn new(f: [MPoly; 3]) -> Result<MapGerm, GermError> {
        let vars = f[0].vars().clone();
        if vars.len() != 2 {
            return Err(GermError::SourceArity(vars.len()));
        }
        for (i, c) in f.iter().enumerate() {
            if c.vars() != &vars {
                return Err(PolyError::VariableMismatch {
                    left: vars.names().join(","),
                    right: c.vars().names().join(","),
                }
                .into());
            }
            if !c.constant_term().is_zero() {
                return Err(GermError::OriginNotPreserved(i + 1));
            }
        }
        Ok(MapGerm { f })
    }

    /// Parses three coordinate expressions over `vars`.
    pub fn parse(vars: [&str; 2], coords: [&str; 3]) -> Result<MapGerm, GermError> {
        let vs = VarSet::new(vars)?;
        let f = [
            parse_in(coords[0], &vs)?,
            parse_in(coords[1], &vs)?,
            parse_in(coords[2], &vs)?,
        ];
        MapGerm::new(f)
    }

    pub fn coords(&self) -> &[MPoly; 3] {
        &self.f
    }

    pub fn coord(&self, i: usize) -> &MPoly {
        &self.f[i]
    }

    pub fn vars(&self) -> &VarSet {
        self.f[0].vars()
    }

    pub fn x(&self) -> MPoly {
        MPoly::var(self.vars(), 0)
    }

    pub fn y(&self) -> MPoly {
        MPoly::var(self.vars(), 1)
    }

    /// `l∘f` for a linear form with coefficients `l`.
    pub fn linear_combination(&self, l: &[Rat; 3]) -> MPoly {
        let mut r = MPoly::zero(self.vars());
        for (c, fi) in l.iter().zip(&self.f) {
            r = &r + &fi.scale(c);
        }
        r
    }

    /// Composes a target polynomial `F(X,Y,Z)` with `f`.
    pub fn pull_back(&self, target: &MPoly) -> Result<MPoly, GermError> {
        Ok(target.compose(&self.f)?)
    }
}

impl fmt::Display for MapGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.f[0], self.f[1], self.f[2])
    }
}

/// Germ whose coefficients depend on one extra parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermFamily {
    f: [MPoly; 3],
    source: VarSet,
}

impl GermFamily {
    /// `f` lives over `(x, y, t)`, the parameter being last.
    pub fn new(f: [MPoly; 3]) -> Result<GermFamily, GermError> {
        let vars = f[0].vars().clone();
        if vars.len() != 3 {
            return Err(GermError::SourceArity(vars.len()));
        }
        if f.iter().any(|c| c.vars() != &vars) {
            return Err(GermError::Poly(PolyError::VariableMismatch {
                left: vars.names().join(","),
                right: String::from("?"),
            }));
        }
        let source = vars.without(2)?;
        Ok(GermFamily { f, source })
    }

    pub fn param_name(&self) -> &str {
        self.f[0].vars().name(2)
    }

    /// The member at parameter value `t`.
    pub fn specialize(&self, t: &Rat) -> Result<MapGerm, GermError> {
        let mut out = Vec::with_capacity(3);
        for c in &self.f {
            let s = c.eval_var(2, t).drop_var(2)?;
            out.push(s.remap(&self.source, &[0, 1]));
        }
        let f: [MPoly; 3] = out.try_into().expect("three coordinates");
        MapGerm::new(f)
    }
}

impl fmt::Display for GermFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.f[0], self.f[1], self.f[2])
    }
}

fn rank_of_linear_part(f: &MapGerm) -> usize {
    let col = |i: usize, j: usize| f.f[i].coeff(&Monomial::var(j, 1));
    let mut any = false;
    for i in 0..3 {
        for j in 0..2 {
            any |= !col(i, j).is_zero();
        }
    }
    if !any {
        return 0;
    }
    for i in 0..3 {
        for k in i + 1..3 {
            let det = col(i, 0) * col(k, 1) - col(i, 1) * col(k, 0);
            if !det.is_zero() {
                return 2;
            }
        }
    }
    1
}

/// `2 − rank df(0)`.
pub fn corank(f: &MapGerm) -> u8 {
    2 - rank_of_linear_part(f) as u8
}

/// Weighted type `(d1, d2, d3; a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QhType {
    pub d: [u64; 3],
    pub a: u64,
    pub b: u64,
}

impl QhType {
    pub fn new(d: [u64; 3], a: u64, b: u64) -> Result<QhType, GermError> {
        if a == 0 || b == 0 {
            return Err(GermError::BadWeights("weights must be positive".into()));
        }
        if a.gcd(&b) != 1 {
            return Err(GermError::BadWeights(format!("gcd({a},{b}) != 1")));
        }
        if d.iter().any(|&di| di < a.min(b)) {
            return Err(GermError::BadWeights("degree below the smallest weight".into()));
        }
        Ok(QhType { d, a, b })
    }

    /// `d1·d2·d3/(ab)`.
    pub fn delta(&self) -> Rat {
        let num: u64 = self.d.iter().product();
        Rat::new((num as i64).into(), ((self.a * self.b) as i64).into())
    }

    /// `d1 + d2 + d3 − a − b`.
    pub fn epsilon(&self) -> i64 {
        self.d.iter().sum::<u64>() as i64 - self.a as i64 - self.b as i64
    }

    pub fn sorted_degrees(&self) -> [u64; 3] {
        let mut d = self.d;
        d.sort_unstable();
        d
    }
}

impl fmt::Display for QhType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{},{})", self.d[0], self.d[1], self.d[2], self.a, self.b)
    }
}

/// Smallest coprime positive weights making every coordinate weighted homogeneous.
pub fn infer_qh_type(f: &MapGerm) -> Result<QhType, GermError> {
    let mut constraints: Vec<(i64, i64)> = Vec::new();
    for (i, c) in f.f.iter().enumerate() {
        let mut it = c.terms();
        let Some((m0, _)) = it.next() else {
            return Err(GermError::ZeroCoordinate(i + 1));
        };
        for (m, _) in it {
            constraints.push((m.0[0] as i64 - m0.0[0] as i64, m.0[1] as i64 - m0.0[1] as i64));
        }
    }
    let (a, b) = match constraints.iter().find(|c| **c != (0, 0)) {
        None => (1, 1),
        Some(&(u, v)) => {
            if u * v >= 0 {
                return Err(GermError::NotQuasihomogeneous(
                    "no positive weights balance the exponents".into(),
                ));
            }
            let (a, b) = (v.abs(), u.abs());
            let g = a.gcd(&b);
            (a / g, b / g)
        }
    };
    if constraints.iter().any(|&(u, v)| a * u + b * v != 0) {
        return Err(GermError::NotQuasihomogeneous(
            "exponent supports force incompatible weights".into(),
        ));
    }
    let w = [a as u64, b as u64];
    let mut d = [0u64; 3];
    for (i, c) in f.f.iter().enumerate() {
        match qh_check(c, &w) {
            QhCheck::Degree(k) => d[i] = k,
            QhCheck::Zero => return Err(GermError::ZeroCoordinate(i + 1)),
            QhCheck::NotQuasihomogeneous => {
                return Err(GermError::NotQuasihomogeneous(format!("f{}", i + 1)))
            }
        }
    }
    QhType::new(d, w[0], w[1])
}

/// `f = (x, yⁿ + x·p, β·y^m + x·q)` with `p(x,0) = q(x,0) = 0`.
///
/// `m` is `None` exactly when `β = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormInfo {
    pub n: u32,
    pub m: Option<u32>,
    pub beta: Rat,
    pub p: MPoly,
    pub q: MPoly,
}

impl NormalFormInfo {
    /// Rebuilds the germ.
    pub fn reconstruct(&self) -> Result<MapGerm, GermError> {
        let vars = self.p.vars();
        let x = MPoly::var(vars, 0);
        let y = MPoly::var(vars, 1);
        let f2 = &y.pow(self.n) + &(&x * &self.p);
        let pure = match self.m {
            Some(m) => y.pow(m).scale(&self.beta),
            None => MPoly::zero(vars),
        };
        let f3 = &pure + &(&x * &self.q);
        MapGerm::new([x, f2, f3])
    }

    pub fn beta_is_zero(&self) -> bool {
        self.beta.is_zero()
    }
}

fn x_free_part(p: &MPoly) -> MPoly {
    p.filter_terms(|m| m.0[0] == 0)
}

fn has_pure_x(p: &MPoly) -> bool {
    p.terms().any(|(m, _)| m.0[1] == 0)
}

/// Recognizes the normal-form shape without transforming `f`.
pub fn check_normal_form(f: &MapGerm) -> Result<NormalFormInfo, GermError> {
    let bad = |s: &str| Err(GermError::NotInNormalForm(s.into()));
    let x = f.x();
    if f.f[0] != x {
        return bad("first coordinate must be x");
    }
    let pure2 = x_free_part(&f.f[1]);
    let n = match pure2.leading_term() {
        Some((mono, c)) if pure2.nterms() == 1 && c == &rat(1) && mono.0[1] >= 2 => mono.0[1],
        _ => return bad("second coordinate must be y^n + x·p with n ≥ 2"),
    };
    if has_pure_x(&f.f[1]) {
        return bad("p(x,0) must vanish");
    }
    if has_pure_x(&f.f[2]) {
        return bad("q(x,0) must vanish");
    }
    let pure3 = x_free_part(&f.f[2]);
    let (m, beta) = match pure3.leading_term() {
        Some((mono, c)) if pure3.nterms() == 1 && mono.0[1] >= 2 => (Some(mono.0[1]), c.clone()),
        Some(_) => return bad("y-pure part of the third coordinate must be a single power y^m, m ≥ 2"),
        None => (None, Rat::zero()),
    };
    let p = (&f.f[1] - &pure2).div_exact(&x)?;
    let q = (&f.f[2] - &pure3).div_exact(&x)?;
    Ok(NormalFormInfo { n, m, beta, p, q })
}

/// Removes from `f2` and `f3` the terms that are polynomials in the earlier coordinates.
///
/// Drops pure powers of `x` from `f2` and `f3`; when `f2 = y²`, also drops the
/// terms of `f3` even in `y`. These are target coordinate changes, so the
/// result is equivalent to `f`. Requires `f1 = x`.
pub fn target_reduce(f: &MapGerm) -> Result<MapGerm, GermError> {
    if f.f[0] != f.x() {
        return Err(GermError::NotInNormalForm("first coordinate must be x".into()));
    }
    let f2 = f.f[1].filter_terms(|m| m.0[1] != 0);
    let mut f3 = f.f[2].filter_terms(|m| m.0[1] != 0);
    if f2 == f.y().pow(2) {
        f3 = f3.filter_terms(|m| m.0[1] % 2 == 1);
    }
    MapGerm::new([f.f[0].clone(), f2, f3])
}

/// Whether `f⁻¹(0)` is the origin with a finite local algebra.
pub fn is_finite(f: &MapGerm, max_order: u32) -> Result<bool, GermError> {
    let gens = IdealGens::new(f.f.to_vec())?;
    Ok(colength_local(&gens, max_order)?.is_finite())
}

/// `d'1·d'2/(ab)` for sorted degrees `d'1 ≤ d'2 ≤ d'3`.
pub fn image_multiplicity_formula(t: &QhType) -> Rat {
    let d = t.sorted_degrees();
    Rat::new(((d[0] * d[1]) as i64).into(), ((t.a * t.b) as i64).into())
}

/// Two linear forms on the target.
pub type Projection = [[Rat; 3]; 2];

/// `dim 𝒪₂/⟨l1∘f, l2∘f⟩`.
pub fn image_multiplicity_direct(f: &MapGerm, proj: &Projection, max_order: u32) -> Result<ColengthResult, GermError> {
    let g = IdealGens::new(vec![f.linear_combination(&proj[0]), f.linear_combination(&proj[1])])?;
    Ok(colength_local(&g, max_order)?)
}

/// Number of candidates drawn for every generic choice.
pub const GENERIC_SAMPLES: usize = 5;

/// Coefficient range for sampled linear forms.
pub const SAMPLE_RANGE: i64 = 17;

pub(crate) fn sample_vectors(seed: u64, stream: u64, count: usize, rows: usize) -> Vec<Vec<[Rat; 3]>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rows_v: Vec<[i64; 3]> = (0..rows)
            .map(|_| std::array::from_fn(|_| rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE)))
            .collect();
        if !independent(&rows_v) {
            continue;
        }
        out.push(rows_v.iter().map(|r| r.map(rat)).collect());
    }
    out
}

fn independent(rows: &[[i64; 3]]) -> bool {
    match rows {
        [r] => r.iter().any(|&c| c != 0),
        [r, s] => {
            let cross = [
                r[1] * s[2] - r[2] * s[1],
                r[2] * s[0] - r[0] * s[2],
                r[0] * s[1] - r[1] * s[0],
            ];
            cross.iter().any(|&c| c != 0)
        }
        _ => false,
    }
}

/// Image multiplicity via the smallest finite value over seeded projections.
pub fn image_multiplicity_generic(f: &MapGerm, seed: u64, max_order: u32) -> Result<(u64, Projection), GermError> {
    let mut best: Option<(u64, Projection)> = None;
    for rows in sample_vectors(seed, 1, GENERIC_SAMPLES, 2) {
        let proj: Projection = [rows[0].clone(), rows[1].clone()];
        if let ColengthResult::Finite(v) = image_multiplicity_direct(f, &proj, max_order)? {
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, proj));
            }
        }
    }
    best.ok_or(GermError::NoGenericProjection)
}

/// Integer value of a rational, if it is one.
pub fn as_integer(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        i64::try_from(r.to_integer()).ok()
    } else {
        None
    }
}
