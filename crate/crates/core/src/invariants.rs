//! Closed-form invariants of weighted homogeneous germs and their oracles.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::doublepoint::{
    branch_decompose, double_point_curve, expected_fold_plane, fold_image_plane, is_finitely_determined,
    table_r, BranchKind, BranchSet, DoublePointError, FdVerdict, FoldPlane, Lambda, SVector, TableOutcome,
    TableRule,
};
use crate::exactpoly::{rat, MPoly, Rat};
use crate::germ::{
    as_integer, check_normal_form, corank, image_multiplicity_formula, image_multiplicity_generic,
    infer_qh_type, is_finite, target_reduce, GermError, MapGerm, QhType,
};
use crate::localalg::{
    colength_local, milnor_from_branches, milnor_number, ColengthResult, IdealGens, LocalAlgError,
    DEFAULT_MAX_ORDER,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{name} = {value} is not a nonnegative integer")]
    NonInteger { name: &'static str, value: String },
    #[error("Milnor number of the double point curve: colength path {path_a}, branch path {path_b}")]
    MuPathsDisagree { path_a: String, path_b: String },
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    LocalAlg(#[from] LocalAlgError),
    #[error(transparent)]
    DoublePoint(#[from] DoublePointError),
}

fn integral(name: &'static str, v: Rat) -> Result<u64, InvariantError> {
    match as_integer(&v) {
        Some(k) if k >= 0 => Ok(k as u64),
        _ => Err(InvariantError::NonInteger {
            name,
            value: v.to_string(),
        }),
    }
}

fn c_value(t: &QhType) -> Rat {
    let [d1, d2, d3] = t.d.map(|d| rat(d as i64));
    let (a, b) = (rat(t.a as i64), rat(t.b as i64));
    let num = (&d2 - &a) * (&d3 - &b) + (&d1 - &b) * (&d3 - &b) + (&d1 - &a) * (&d2 - &a);
    num / (a * b)
}

fn t_value(t: &QhType) -> Rat {
    let delta = t.delta();
    let eps = rat(t.epsilon());
    let ab = rat((t.a * t.b) as i64);
    (&delta - &eps) * (&delta - &eps * rat(2)) / (ab * rat(6)) + c_value(t) / rat(3)
}

/// Number of cross-caps from the weighted type.
pub fn mond_c(t: &QhType) -> Result<u64, InvariantError> {
    integral("C", c_value(t))
}

/// Number of triple points from the weighted type.
pub fn mond_t(t: &QhType) -> Result<u64, InvariantError> {
    integral("T", t_value(t))
}

/// `(μ(D) − 4T + C − 1)/2`.
pub fn ae_codim(t: &QhType, mu_d: u64) -> Result<u64, InvariantError> {
    let v = (rat(mu_d as i64) - t_value(t) * rat(4) + c_value(t) - rat(1)) / rat(2);
    integral("Ae-codimension", v)
}

/// Weighted degree `δ − ε` of the double point curve of a germ of type `t`.
pub fn lambda_degree(t: &QhType) -> Rat {
    t.delta() - rat(t.epsilon())
}

/// `(d − a)(d − b)/(ab)` with `d` the weighted degree of λ.
pub fn mu_d_from_type(t: &QhType) -> Result<u64, InvariantError> {
    let d = lambda_degree(t);
    let (a, b) = (rat(t.a as i64), rat(t.b as i64));
    integral("μ(D)", (&d - &a) * (&d - &b) / (a * b))
}

/// Ae-codimension using only the weighted type.
pub fn ae_codim_for_type(t: &QhType) -> Result<u64, InvariantError> {
    let mu = mu_d_from_type(t)?;
    ae_codim(t, mu)
}

/// Jacobian 2×2 minors of `f`.
pub fn ramification_ideal(f: &MapGerm) -> Result<IdealGens, InvariantError> {
    let j: Vec<[MPoly; 2]> = f.coords().iter().map(|c| [c.derivative(0), c.derivative(1)]).collect();
    let minor = |i: usize, k: usize| &(&j[i][0] * &j[k][1]) - &(&j[i][1] * &j[k][0]);
    Ok(IdealGens::new(vec![minor(0, 1), minor(0, 2), minor(1, 2)])?)
}

/// Cross-caps as the colength of the ramification ideal.
pub fn crosscap_oracle(f: &MapGerm, max_order: u32) -> Result<ColengthResult, InvariantError> {
    let gens = ramification_ideal(f)?;
    if gens.is_zero() {
        return Ok(ColengthResult::InfiniteAtBound(max_order));
    }
    Ok(colength_local(&gens, max_order)?)
}

/// Complex branches with their Milnor numbers and pairwise intersections.
pub fn branch_intersection_data(bs: &BranchSet) -> (Vec<i64>, Vec<Vec<i64>>) {
    #[derive(Clone, Copy)]
    enum K {
        X,
        Y,
        Conic(i64, i64),
    }
    let mut ks = Vec::new();
    for br in &bs.branches {
        match &br.kind {
            BranchKind::XAxis => ks.push(K::X),
            BranchKind::YAxis => ks.push(K::Y),
            BranchKind::ConicClass { a, b, .. } => {
                ks.extend(std::iter::repeat_n(K::Conic(*a as i64, *b as i64), br.count() as usize))
            }
        }
    }
    let mus = ks
        .iter()
        .map(|k| match k {
            K::Conic(a, b) => (a - 1) * (b - 1),
            _ => 0,
        })
        .collect();
    let pair = |p: K, q: K| match (p, q) {
        (K::X, K::Y) | (K::Y, K::X) => 1,
        (K::X, K::Conic(a, _)) | (K::Conic(a, _), K::X) => a,
        (K::Y, K::Conic(_, b)) | (K::Conic(_, b), K::Y) => b,
        (K::Conic(a, b), K::Conic(..)) => a * b,
        _ => 0,
    };
    let m = ks
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            ks.iter()
                .enumerate()
                .map(|(j, &q)| if i == j { 0 } else { pair(p, q) })
                .collect()
        })
        .collect();
    (mus, m)
}

/// Both evaluations of `μ(D(f))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuD {
    pub colength: ColengthResult,
    pub branches: Option<u64>,
}

/// `μ(λ)` by colength and, when available, from branch data; disagreement is an error.
pub fn mu_d(lam: &Lambda, bs: Option<&BranchSet>, max_order: u32) -> Result<MuD, InvariantError> {
    let colength = milnor_number(&lam.poly, max_order)?;
    let branches = match bs {
        None => None,
        Some(bs) => {
            let (mus, m) = branch_intersection_data(bs);
            Some(if mus.is_empty() {
                0
            } else {
                milnor_from_branches(&mus, &m)? as u64
            })
        }
    };
    if let Some(v) = branches {
        if colength != ColengthResult::Finite(v) {
            return Err(InvariantError::MuPathsDisagree {
                path_a: colength.to_string(),
                path_b: v.to_string(),
            });
        }
    }
    Ok(MuD { colength, branches })
}

/// A detected contradiction between two computations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inconsistency {
    pub code: String,
    pub message: String,
}

impl Inconsistency {
    fn new(code: &str, message: impl Into<String>) -> Inconsistency {
        Inconsistency {
            code: code.to_string(),
            message: message.into(),
        }
    }
}

/// One branch or class of branches, for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSummary {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_poly: Option<String>,
    pub count: u64,
    pub degree: u64,
    pub classification: String,
    pub f2_vanishes: bool,
    pub f3_vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableSummary {
    pub rule: TableRule,
    pub r_i: u64,
    pub r_f: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_total: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    pub max_order: u32,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_order: DEFAULT_MAX_ORDER,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub corank: u8,
    pub qh_type: Option<QhType>,
    pub fd: FdVerdict,
    pub lambda: Option<String>,
    pub branches: Vec<BranchSummary>,
    #[serde(rename = "C")]
    pub c: Option<u64>,
    pub c_oracle: Option<ColengthResult>,
    #[serde(rename = "T")]
    pub t: Option<u64>,
    pub ae_codim: Option<u64>,
    #[serde(rename = "mu_D")]
    pub mu_d: Option<u64>,
    pub r_i: Option<u64>,
    pub r_f: Option<u64>,
    pub mult_image: Option<u64>,
    pub mult_formula: Option<String>,
    pub s_vector: Option<SVector>,
    pub table: Option<TableSummary>,
    pub fold_plane: Option<FoldPlane>,
    pub inconsistencies: Vec<Inconsistency>,
    pub notes: Vec<String>,
}

/// Everything computable about `f`, with cross-checks.
pub fn full_report(f: &MapGerm, opts: &ReportOptions) -> InvariantReport {
    let mx = opts.max_order;
    let mut r = InvariantReport {
        corank: corank(f),
        qh_type: infer_qh_type(f).ok(),
        fd: FdVerdict::Unsupported("not evaluated".into()),
        lambda: None,
        branches: Vec::new(),
        c: None,
        c_oracle: None,
        t: None,
        ae_codim: None,
        mu_d: None,
        r_i: None,
        r_f: None,
        mult_image: None,
        mult_formula: None,
        s_vector: None,
        table: None,
        fold_plane: None,
        inconsistencies: Vec::new(),
        notes: Vec::new(),
    };
    r.fd = match is_finitely_determined(f, mx) {
        Ok(v) => v,
        Err(e) => {
            r.notes.push(format!("finite determinacy: {e}"));
            FdVerdict::Unsupported(e.to_string())
        }
    };
    let finite = is_finite(f, mx).unwrap_or(false);
    // Corank-2 germs of this shape are only accepted as FD from the literature.
    let hyp = r.fd.is_fd() || (r.corank == 2 && finite);
    if !hyp {
        r.notes.push("formulas unsupported by hypothesis".into());
    }
    let mut flag = |r: &mut InvariantReport, code: &str, msg: String| {
        if hyp {
            r.inconsistencies.push(Inconsistency::new(code, msg));
        } else {
            r.notes.push(format!("{code}: {msg}"));
        }
    };

    if let Some(t) = r.qh_type {
        match mond_c(&t) {
            Ok(c) => r.c = Some(c),
            Err(e) => flag(&mut r, "non_integer_C", e.to_string()),
        }
        match mond_t(&t) {
            Ok(v) => r.t = Some(v),
            Err(e) => flag(&mut r, "non_integer_T", e.to_string()),
        }
        r.mult_formula = Some(image_multiplicity_formula(&t).to_string());
    }
    if finite {
        match crosscap_oracle(f, mx) {
            Ok(v) => {
                r.c_oracle = Some(v);
                if let (Some(c), ColengthResult::Finite(o)) = (r.c, v) {
                    if c != o {
                        flag(&mut r, "crosscap_mismatch", format!("formula {c}, ramification colength {o}"));
                    }
                }
            }
            Err(e) => r.notes.push(format!("cross-cap oracle: {e}")),
        }
        match image_multiplicity_generic(f, opts.seed, mx) {
            Ok((m, _)) => {
                r.mult_image = Some(m);
                if let Some(t) = r.qh_type {
                    let mf = image_multiplicity_formula(&t);
                    if mf != rat(m as i64) {
                        flag(&mut r, "multiplicity_mismatch", format!("direct {m}, weighted formula {mf}"));
                    }
                }
            }
            Err(e) => r.notes.push(format!("image multiplicity: {e}")),
        }
    }

    let lam = if r.corank <= 1 { double_point_curve(f).ok() } else { None };
    let bs = match (&lam, r.qh_type, r.fd.is_fd()) {
        (Some(lam), Some(t), true) => match branch_decompose(lam, f, &t) {
            Ok(bs) => Some(bs),
            Err(e) => {
                flag(&mut r, "branch_decomposition", e.to_string());
                None
            }
        },
        _ => None,
    };
    if let Some(lam) = &lam {
        r.lambda = Some(lam.poly.to_string());
        if r.fd.is_fd() {
            match mu_d(lam, bs.as_ref(), mx) {
                Ok(MuD {
                    colength: ColengthResult::Finite(m),
                    ..
                }) => r.mu_d = Some(m),
                Ok(_) => {}
                Err(e) => flag(&mut r, "mu_paths_disagree", e.to_string()),
            }
        }
    }
    if let (Some(t), Some(m)) = (r.qh_type, r.mu_d) {
        match ae_codim(&t, m) {
            Ok(v) => r.ae_codim = Some(v),
            Err(e) => flag(&mut r, "non_integer_ae_codim", e.to_string()),
        }
        if let Some((d, a, b)) = lam.as_ref().and_then(|l| l.qh) {
            if Rat::from_integer((d as i64).into()) != lambda_degree(&t) {
                flag(&mut r, "lambda_degree", format!("λ has weighted degree {d}, expected {}", lambda_degree(&t)));
            }
            let (d, a, b) = (d as i64, a as i64, b as i64);
            let w = Rat::new(((d - a) * (d - b)).into(), (a * b).into());
            if w != rat(m as i64) {
                flag(&mut r, "mu_weighted_formula", format!("μ(D) = {m}, weighted formula {w}"));
            }
        }
    }

    if let Some(bs) = &bs {
        r.r_i = Some(bs.r_i);
        r.r_f = Some(bs.r_f);
        r.branches = bs
            .branches
            .iter()
            .map(|b| BranchSummary {
                kind: b.kind.label().to_string(),
                class_poly: match &b.kind {
                    BranchKind::ConicClass { class_poly, .. } => Some(class_poly.to_string()),
                    _ => None,
                },
                count: b.count(),
                degree: b.degree,
                classification: b.classification.to_string(),
                f2_vanishes: b.vanishing[0],
                f3_vanishes: b.vanishing[1],
            })
            .collect();
        if bs.r_i % 2 != 0 {
            flag(&mut r, "odd_r_i", format!("r_i = {} is odd", bs.r_i));
        }
        if let Some(t) = r.qh_type {
            let mult = image_multiplicity_formula(&t);
            if mult >= rat(3) && bs.r_i < 2 {
                flag(&mut r, "few_identifications", format!("multiplicity {mult} with r_i = {}", bs.r_i));
            }
            if mult == rat(2) && bs.branches.iter().any(|b| b.kind == BranchKind::YAxis) {
                flag(&mut r, "y_axis_branch", "V(y) is a branch at multiplicity 2".into());
            }
            table_checks(f, &t, bs, &mut r, &mut flag);
        }
    }
    r
}

fn table_checks(
    f: &MapGerm,
    t: &QhType,
    bs: &BranchSet,
    r: &mut InvariantReport,
    flag: &mut impl FnMut(&mut InvariantReport, &str, String),
) {
    let nf = target_reduce(f).and_then(|g| check_normal_form(&g));
    let nf = match nf {
        Ok(nf) => nf,
        Err(e) => {
            r.notes.push(format!("closed-form counts skipped: {e}"));
            return;
        }
    };
    match table_r(&nf, t) {
        TableOutcome::Counts {
            r_i,
            r_f,
            rule,
            r_total,
            s_vector,
        } => {
            r.table = Some(TableSummary { rule, r_i, r_f, r_total });
            r.s_vector = s_vector;
            if (r_i, r_f) != (bs.r_i, bs.r_f) {
                flag(
                    r,
                    "table_mismatch",
                    format!("closed form ({r_i},{r_f}), branch count ({},{})", bs.r_i, bs.r_f),
                );
            }
            if let Some(tot) = r_total {
                if tot != bs.r_i + bs.r_f {
                    flag(r, "component_total", format!("total {tot}, branch count {}", bs.r_i + bs.r_f));
                }
            }
            if let Some(sv) = s_vector {
                match fold_image_plane(bs, t) {
                    Ok(p) => {
                        r.fold_plane = Some(p);
                        let want = expected_fold_plane(&sv);
                        if p != want {
                            flag(r, "fold_plane", format!("fold images in {p}, s-vector predicts {want}"));
                        }
                    }
                    Err(e) => flag(r, "fold_plane", e.to_string()),
                }
            }
        }
        TableOutcome::NotApplicable(why) => r.notes.push(format!("closed-form counts not applicable: {why}")),
    }
}
