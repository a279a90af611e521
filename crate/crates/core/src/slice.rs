//! Transversal slices, the curve `W(f) = D(f) ∪ γ̃`, family checks and invariant profiles.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::doublepoint::{
    branch_decompose, double_point_curve, is_finitely_determined, BranchSet, Classification, DoublePointError,
    FdVerdict, Lambda,
};
use crate::exactpoly::{gcd_poly, MPoly, PolyError, Rat};
use crate::germ::{
    corank, image_multiplicity_formula, image_multiplicity_generic, infer_qh_type, sample_vectors, GermError,
    GermFamily, MapGerm, QhType, GENERIC_SAMPLES,
};
use crate::invariants::{branch_intersection_data, mond_c, mond_t, InvariantError};
use crate::localalg::{
    intersection_multiplicity, milnor_from_branches, milnor_number, ColengthResult, LocalAlgError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SliceError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    LocalAlg(#[from] LocalAlgError),
    #[error(transparent)]
    DoublePoint(#[from] DoublePointError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("germ is not finitely determined: {0}")]
    NotFd(FdVerdict),
    #[error("the zero linear form does not define a plane")]
    ZeroPlane,
    #[error("no sampled plane passed the genericity checks")]
    NoGenericPlane,
    #[error("{0} exceeded the colength bound")]
    Unbounded(&'static str),
    #[error("{0} is not an integer")]
    NonIntegral(&'static str),
}

fn finite(r: ColengthResult, what: &'static str) -> Result<u64, SliceError> {
    r.finite().ok_or(SliceError::Unbounded(what))
}

/// Double point data shared by the slice computations.
#[derive(Debug, Clone)]
pub struct SliceContext {
    pub lambda: Lambda,
    pub branches: BranchSet,
    pub qh: QhType,
    pub mu_d: u64,
}

/// Requires a finitely determined weighted homogeneous corank-one germ.
pub fn slice_context(f: &MapGerm, max_order: u32) -> Result<SliceContext, SliceError> {
    let v = is_finitely_determined(f, max_order)?;
    if !v.is_fd() {
        return Err(SliceError::NotFd(v));
    }
    let qh = infer_qh_type(f)?;
    let lambda = double_point_curve(f)?;
    let branches = branch_decompose(&lambda, f, &qh)?;
    let mu_d = finite(milnor_number(&lambda.poly, max_order)?, "μ(D)")?;
    Ok(SliceContext {
        lambda,
        branches,
        qh,
        mu_d,
    })
}

/// A plane `l = 0` in the target and the curve `γ̃ = V(l∘f)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlicePlane {
    #[serde(with = "rat_strings")]
    pub l: [Rat; 3],
    pub certificate: Vec<String>,
    #[serde(skip)]
    pub gamma_tilde: Option<MPoly>,
    pub mu_gamma: u64,
}

impl SlicePlane {
    pub fn label(&self) -> String {
        let names = ["X", "Y", "Z"];
        let terms: Vec<String> = self
            .l
            .iter()
            .zip(names)
            .filter(|(c, _)| !num_traits::Zero::is_zero(*c))
            .map(|(c, n)| format!("{c}*{n}"))
            .collect();
        terms.join(" + ").replace("+ -", "- ")
    }
}

mod rat_strings {
    use std::str::FromStr;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    use crate::exactpoly::Rat;

    pub fn serialize<S: Serializer>(l: &[Rat; 3], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(l.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Rat; 3], D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        let r: Result<Vec<Rat>, _> = v.iter().map(|s| Rat::from_str(s)).collect();
        r.map_err(D::Error::custom)?
            .try_into()
            .map_err(|_| D::Error::custom("expected three coefficients"))
    }
}

struct Candidate {
    key: (u64, u64),
    plane: SlicePlane,
}

fn evaluate_plane(
    f: &MapGerm,
    l: &[Rat; 3],
    ctx: Option<&SliceContext>,
    max_order: u32,
) -> Result<Option<Candidate>, SliceError> {
    if l.iter().all(num_traits::Zero::is_zero) {
        return Err(SliceError::ZeroPlane);
    }
    let g = f.linear_combination(l);
    if g.is_zero() {
        return Ok(None);
    }
    let Some(mu) = milnor_number(&g, max_order)?.finite() else {
        return Ok(None);
    };
    let mut cert = vec!["μ(l∘f) finite".to_string()];
    let mut i = 0;
    if let Some(ctx) = ctx {
        for br in &ctx.branches.branches {
            let curve = br.kind.curve(f.vars());
            let Some(k) = intersection_multiplicity(&g, &curve, max_order)?.finite() else {
                return Ok(None);
            };
            let want = br.count() * br.min_exponent().unwrap_or(0);
            if k != want {
                return Ok(None);
            }
        }
        cert.push("branch image orders attained".into());
        i = match intersection_multiplicity(&g, &ctx.lambda.poly, max_order)?.finite() {
            Some(v) => v,
            None => return Ok(None),
        };
        cert.push("i(l∘f, λ) finite".into());
    }
    Ok(Some(Candidate {
        key: (mu, i),
        plane: SlicePlane {
            l: l.clone(),
            certificate: cert,
            gamma_tilde: Some(g),
            mu_gamma: mu,
        },
    }))
}

/// The best of the seeded candidate planes, by `(μ(γ̃), i(D, γ̃))`.
pub fn choose_generic_plane(
    f: &MapGerm,
    ctx: Option<&SliceContext>,
    seed: u64,
    max_order: u32,
) -> Result<SlicePlane, SliceError> {
    let mut best: Option<Candidate> = None;
    for rows in sample_vectors(seed, 2, GENERIC_SAMPLES, 1) {
        if let Some(c) = evaluate_plane(f, &rows[0], ctx, max_order)? {
            if best.as_ref().is_none_or(|b| c.key < b.key) {
                best = Some(c);
            }
        }
    }
    best.map(|c| c.plane).ok_or(SliceError::NoGenericPlane)
}

/// Evaluates a caller-supplied plane without the sampling.
pub fn plane_from(f: &MapGerm, l: &[Rat; 3], ctx: Option<&SliceContext>, max_order: u32) -> Result<SlicePlane, SliceError> {
    evaluate_plane(f, l, ctx, max_order)?
        .map(|c| c.plane)
        .ok_or(SliceError::NoGenericPlane)
}

/// `m(f(D(f)))` from the orders of `f` along the branches.
pub fn m_image_double_curve(bs: &BranchSet) -> Result<u64, SliceError> {
    let mut fold = 0;
    let mut ident = 0;
    for br in &bs.branches {
        let e = br.min_exponent().unwrap_or(0);
        match br.classification {
            Classification::Fold => {
                if e % 2 != 0 {
                    return Err(SliceError::NonIntegral("fold image multiplicity"));
                }
                fold += br.count() * e / 2;
            }
            Classification::Identification => ident += br.count() * e,
            Classification::Invalid(d) => return Err(DoublePointError::InvalidDegree(d).into()),
        }
    }
    if ident % 2 != 0 {
        return Err(SliceError::NonIntegral("identification image multiplicity"));
    }
    Ok(fold + ident / 2)
}

/// Slice invariants with every path that was computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceData {
    pub plane: SlicePlane,
    pub mu_gamma: u64,
    #[serde(rename = "m_fD")]
    pub m_fd: u64,
    #[serde(rename = "i_D_gamma")]
    pub i_d_gamma: u64,
    #[serde(rename = "mu_W")]
    pub mu_w: u64,
    pub mu_w_branches: u64,
    /// `None` when `μ(λ·l∘f)` exceeds the colength bound.
    pub mu_w_direct: Option<u64>,
    pub m_d: u64,
    pub m_gamma: u64,
    pub tangent_cones_disjoint: bool,
    pub violations: Vec<String>,
}

/// Runs the three slice identities on the given plane; failures land in `violations`.
pub fn check_lemma_62(
    f: &MapGerm,
    ctx: &SliceContext,
    plane: &SlicePlane,
    max_order: u32,
) -> Result<SliceData, SliceError> {
    let g = match &plane.gamma_tilde {
        Some(g) => g.clone(),
        None => f.linear_combination(&plane.l),
    };
    let lam = &ctx.lambda.poly;
    let mut violations = Vec::new();
    let m_fd = m_image_double_curve(&ctx.branches)?;
    let i = finite(intersection_multiplicity(lam, &g, max_order)?, "i(D, γ̃)")?;
    if i != 2 * m_fd {
        violations.push(format!("i(D, γ̃) = {i} but 2·m(f(D)) = {}", 2 * m_fd));
    }

    let m_d = lam.min_degree().unwrap_or(0) as u64;
    let m_gamma = g.min_degree().unwrap_or(0) as u64;
    let disjoint = gcd_poly(&lam.initial_form(), &g.initial_form()).is_constant();
    if m_d * m_gamma > 2 * m_fd {
        violations.push(format!("m(D)·m(γ̃) = {} exceeds 2·m(f(D)) = {}", m_d * m_gamma, 2 * m_fd));
    }
    if disjoint != (m_d * m_gamma == i) {
        violations.push(format!(
            "tangent cones {} but m(D)·m(γ̃) = {} and i = {i}",
            if disjoint { "disjoint" } else { "meet" },
            m_d * m_gamma
        ));
    }

    let mu_gamma = plane.mu_gamma;
    let mu_w = ctx.mu_d + mu_gamma + 4 * m_fd - 1;

    let (mut mus, mut pairs) = branch_intersection_data(&ctx.branches);
    let mut with_gamma = Vec::with_capacity(mus.len() + 1);
    for br in &ctx.branches.branches {
        let k = finite(intersection_multiplicity(&g, &br.kind.curve(f.vars()), max_order)?, "i(γ̃, branch)")?;
        let c = br.count();
        if k % c != 0 {
            return Err(SliceError::NonIntegral("branch intersection with γ̃"));
        }
        with_gamma.extend(std::iter::repeat_n((k / c) as i64, c as usize));
    }
    if mu_gamma != 0 {
        violations.push(format!("branch path assumes a smooth γ̃, got μ(γ̃) = {mu_gamma}"));
    }
    for (row, v) in pairs.iter_mut().zip(&with_gamma) {
        row.push(*v);
    }
    let mut last = with_gamma;
    last.push(0);
    pairs.push(last);
    mus.push(0);
    let mu_w_branches = milnor_from_branches(&mus, &pairs)? as u64;
    if mu_w_branches != mu_w {
        violations.push(format!("μ(W) from branches {mu_w_branches}, from the identity {mu_w}"));
    }
    let mu_w_direct = milnor_number(&(lam * &g), max_order)?.finite();
    if let Some(d) = mu_w_direct.filter(|&d| d != mu_w) {
        violations.push(format!("μ(λ·l∘f) = {d}, identity gives {mu_w}"));
    }

    Ok(SliceData {
        plane: plane.clone(),
        mu_gamma,
        m_fd,
        i_d_gamma: i,
        mu_w,
        mu_w_branches,
        mu_w_direct,
        m_d,
        m_gamma,
        tangent_cones_disjoint: disjoint,
        violations,
    })
}

/// Context, seeded plane and slice identities in one call.
pub fn analyze_slice(f: &MapGerm, seed: u64, max_order: u32) -> Result<SliceData, SliceError> {
    let ctx = slice_context(f, max_order)?;
    let plane = choose_generic_plane(f, Some(&ctx), seed, max_order)?;
    check_lemma_62(f, &ctx, &plane, max_order)
}

/// Outcome at one parameter value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySample {
    pub t: String,
    pub fd: FdVerdict,
    #[serde(rename = "mu_W")]
    pub mu_w: Option<u64>,
    pub m_image: Option<u64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub parameter: String,
    pub samples: Vec<FamilySample>,
    /// `μ(W)` takes one value over the samples, all of them FD.
    pub mu_w_constant: bool,
    pub m_image_constant: bool,
}

fn all_equal(v: &[Option<u64>]) -> bool {
    v.iter().all(|x| x.is_some()) && v.windows(2).all(|w| w[0] == w[1])
}

/// Evaluates `μ(W(f_t))` and `m(f_t(ℂ²))` at each sample; constancy holds only on the samples.
pub fn whitney_family_check(fam: &GermFamily, samples: &[Rat], seed: u64, max_order: u32) -> FamilyReport {
    let rows: Vec<FamilySample> = samples
        .par_iter()
        .map(|t| {
            let mut s = FamilySample {
                t: t.to_string(),
                fd: FdVerdict::Unsupported("not evaluated".into()),
                mu_w: None,
                m_image: None,
                error: None,
            };
            let f = match fam.specialize(t) {
                Ok(f) => f,
                Err(e) => {
                    s.error = Some(e.to_string());
                    return s;
                }
            };
            match is_finitely_determined(&f, max_order) {
                Ok(v) => s.fd = v,
                Err(e) => s.error = Some(e.to_string()),
            }
            if !s.fd.is_fd() {
                return s;
            }
            match analyze_slice(&f, seed, max_order) {
                Ok(d) => {
                    s.mu_w = Some(d.mu_w);
                    if !d.violations.is_empty() {
                        s.error = Some(d.violations.join("; "));
                    }
                }
                Err(e) => s.error = Some(e.to_string()),
            }
            if let Ok((m, _)) = image_multiplicity_generic(&f, seed, max_order) {
                s.m_image = Some(m);
            }
            s
        })
        .collect();
    let mu: Vec<Option<u64>> = rows.iter().map(|r| r.mu_w).collect();
    let m: Vec<Option<u64>> = rows.iter().map(|r| r.m_image).collect();
    FamilyReport {
        parameter: fam.param_name().to_string(),
        mu_w_constant: all_equal(&mu),
        m_image_constant: all_equal(&m),
        samples: rows,
    }
}

/// Invariants that determine the topological type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZariskiProfile {
    pub weights: (u64, u64),
    pub degrees: [u64; 3],
    pub lambda_degree: u64,
    pub branch_mus: Vec<i64>,
    pub intersections: Vec<i64>,
    #[serde(rename = "C")]
    pub c: u64,
    #[serde(rename = "T")]
    pub t: u64,
    pub mult_image: String,
}

pub fn zariski_profile(f: &MapGerm, max_order: u32) -> Result<ZariskiProfile, SliceError> {
    if corank(f) != 1 {
        return Err(SliceError::DoublePoint(DoublePointError::FirstCoordinateNotX));
    }
    let ctx = slice_context(f, max_order)?;
    let (mut mus, m) = branch_intersection_data(&ctx.branches);
    mus.sort_unstable();
    let mut inter: Vec<i64> = Vec::new();
    for (i, row) in m.iter().enumerate() {
        inter.extend(row.iter().skip(i + 1));
    }
    inter.sort_unstable();
    let lambda_degree = ctx.lambda.qh.map(|q| q.0).unwrap_or(0);
    Ok(ZariskiProfile {
        weights: (ctx.qh.a, ctx.qh.b),
        degrees: ctx.qh.sorted_degrees(),
        lambda_degree,
        branch_mus: mus,
        intersections: inter,
        c: mond_c(&ctx.qh)?,
        t: mond_t(&ctx.qh)?,
        mult_image: image_multiplicity_formula(&ctx.qh).to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZariskiComparison {
    pub weights_match: bool,
    pub intersection_tables_match: bool,
    pub c_t_match: bool,
    pub degrees_equal: bool,
    pub multiplicities_equal: bool,
    pub profiles_match: bool,
}

pub fn zariski_compare(p: &ZariskiProfile, q: &ZariskiProfile) -> ZariskiComparison {
    let weights_match = p.weights == q.weights;
    let intersection_tables_match =
        p.lambda_degree == q.lambda_degree && p.branch_mus == q.branch_mus && p.intersections == q.intersections;
    let c_t_match = (p.c, p.t) == (q.c, q.t);
    let degrees_equal = p.degrees == q.degrees;
    let multiplicities_equal = p.mult_image == q.mult_image;
    ZariskiComparison {
        weights_match,
        intersection_tables_match,
        c_t_match,
        degrees_equal,
        multiplicities_equal,
        profiles_match: weights_match && intersection_tables_match && c_t_match && degrees_equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, rat, ratio};
    use crate::localalg::DEFAULT_MAX_ORDER;

    fn g(c: [&str; 3]) -> MapGerm {
        MapGerm::parse(["x", "y"], c).unwrap()
    }

    const C5: [&str; 3] = ["x", "y^2", "x*y^3 - x^5*y"];

    #[test]
    fn c5_slice() {
        for seed in [0, 1, 2] {
            let d = analyze_slice(&g(C5), seed, DEFAULT_MAX_ORDER).unwrap();
            assert!(d.violations.is_empty(), "{:?}", d.violations);
            assert_eq!((d.mu_gamma, d.m_fd, d.i_d_gamma, d.mu_w), (0, 2, 4, 13));
            assert_eq!((d.mu_w_branches, d.mu_w_direct), (13, Some(13)));
        }
    }

    #[test]
    fn cross_cap_and_s1() {
        let d = analyze_slice(&g(["x", "y^2", "x*y"]), 0, DEFAULT_MAX_ORDER).unwrap();
        assert!(d.violations.is_empty());
        assert_eq!((d.m_fd, d.mu_w), (1, 3));
        let ctx = slice_context(&g(["x", "y^2", "y^3 - x^2*y"]), DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(m_image_double_curve(&ctx.branches), Ok(1));
    }

    #[test]
    fn double_fold_gamma_is_morse() {
        let p = choose_generic_plane(&g(["x^2", "y^2", "x^3 + y^3 + x*y"]), None, 0, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(p.mu_gamma, 1);
    }

    #[test]
    fn zero_plane_rejected() {
        let z = [rat(0), rat(0), rat(0)];
        assert_eq!(plane_from(&g(C5), &z, None, 16), Err(SliceError::ZeroPlane));
    }

    #[test]
    fn families() {
        let vs = ["x", "y", "t"];
        let fam = |c: [&str; 3]| {
            GermFamily::new(c.map(|s| parse_poly(s, &vs).unwrap())).unwrap()
        };
        let samples = [rat(0), rat(1), rat(-1), ratio(1, 2)];
        let r = whitney_family_check(&fam(["x", "y^2", "x*y^3 - x^5*y + t*x^3*y^2"]), &samples, 0, DEFAULT_MAX_ORDER);
        assert!(r.mu_w_constant && r.m_image_constant, "{r:?}");
        let r = whitney_family_check(&fam(["x", "y^2", "y^3 - t*x^2*y"]), &samples, 0, DEFAULT_MAX_ORDER);
        assert_eq!(r.samples[0].fd, FdVerdict::NonReducedD);
        assert!(r.samples[1..].iter().all(|s| s.fd.is_fd()));
        assert!(!r.mu_w_constant);
    }

    #[test]
    fn profiles() {
        let c5 = zariski_profile(&g(C5), DEFAULT_MAX_ORDER).unwrap();
        let scaled = zariski_profile(&g(["x", "4y^2", "8x*y^3 - 2x^5*y"]), DEFAULT_MAX_ORDER).unwrap();
        assert!(zariski_compare(&c5, &scaled).profiles_match);
        let other = zariski_profile(&g(["x", "y^3", "x*y + y^2"]), DEFAULT_MAX_ORDER).unwrap();
        assert!(!zariski_compare(&c5, &other).weights_match);
        let s1 = zariski_profile(&g(["x", "y^2", "y^3 - x^2*y"]), DEFAULT_MAX_ORDER).unwrap();
        let s2 = zariski_profile(&g(["x", "y^2", "y^3 + x^3*y"]), DEFAULT_MAX_ORDER).unwrap();
        let cmp = zariski_compare(&s1, &s2);
        assert!(!cmp.weights_match && !cmp.profiles_match);
    }
}
