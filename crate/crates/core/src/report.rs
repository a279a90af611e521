//! Report documents combining every module.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::doublepoint::SVector;
use crate::corpus::EntryResult;
use crate::exactpoly::{rat, Rat};
use crate::germ::{image_multiplicity_formula, GermFamily, MapGerm};
use crate::imagefit::{image_equation, presentation_matrix, triple_point_oracle, ImageFitError};
use crate::invariants::{full_report, Inconsistency, ReportOptions, TableSummary};
use crate::slice::{
    analyze_slice, choose_generic_plane, whitney_family_check, zariski_compare, zariski_profile, FamilyReport,
    SliceError, ZariskiComparison, ZariskiProfile,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchRow {
    pub kind: String,
    pub class_poly: Option<String>,
    pub classification: String,
    pub count: u64,
    pub degree: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantFields {
    #[serde(rename = "C")]
    pub c: Option<u64>,
    #[serde(rename = "T")]
    pub t: Option<u64>,
    pub ae_codim: Option<u64>,
    #[serde(rename = "mu_D")]
    pub mu_d: Option<u64>,
    pub r_i: Option<u64>,
    pub r_f: Option<u64>,
    pub m_image: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceFields {
    pub plane: Option<String>,
    pub mu_gamma: Option<u64>,
    #[serde(rename = "m_fD")]
    pub m_fd: Option<u64>,
    #[serde(rename = "i_D_gamma")]
    pub i_d_gamma: Option<u64>,
    #[serde(rename = "mu_W")]
    pub mu_w: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub germ: String,
    pub label: Option<String>,
    pub corank: u8,
    pub qh_type: Option<String>,
    pub fd: String,
    pub lambda: Option<String>,
    pub branches: Vec<BranchRow>,
    pub invariants: InvariantFields,
    pub slice: Option<SliceFields>,
    pub s_vector: Option<SVector>,
    pub table: Option<TableSummary>,
    pub fold_plane: Option<String>,
    pub image_equation: Option<String>,
    pub notes: Vec<String>,
    pub inconsistencies: Vec<Inconsistency>,
    pub version: String,
    pub seed: u64,
}

impl ReportDocument {
    pub fn has_inconsistencies(&self) -> bool {
        !self.inconsistencies.is_empty()
    }
}

fn inc(code: &str, message: String) -> Inconsistency {
    Inconsistency {
        code: code.to_string(),
        message,
    }
}

/// Runs the whole pipeline on `f`.
pub fn build_report(f: &MapGerm, label: Option<&str>, opts: &ReportOptions) -> ReportDocument {
    let inv = full_report(f, opts);
    let mut doc = ReportDocument {
        germ: f.to_string(),
        label: label.map(str::to_string),
        corank: inv.corank,
        qh_type: inv.qh_type.map(|t| t.to_string()),
        fd: inv.fd.to_string(),
        lambda: inv.lambda.clone(),
        branches: inv
            .branches
            .iter()
            .map(|b| BranchRow {
                kind: b.kind.clone(),
                class_poly: b.class_poly.clone(),
                classification: b.classification.clone(),
                count: b.count,
                degree: b.degree,
            })
            .collect(),
        invariants: InvariantFields {
            c: inv.c,
            t: inv.t,
            ae_codim: inv.ae_codim,
            mu_d: inv.mu_d,
            r_i: inv.r_i,
            r_f: inv.r_f,
            m_image: inv.mult_image,
        },
        slice: None,
        s_vector: inv.s_vector,
        table: inv.table.clone(),
        fold_plane: inv.fold_plane.map(|p| p.to_string()),
        image_equation: None,
        notes: inv.notes.clone(),
        inconsistencies: inv.inconsistencies.clone(),
        version: VERSION.to_string(),
        seed: opts.seed,
    };
    if inv.corank == 2 {
        doc.notes.push("double point curve of corank-2 germs is not computed".into());
    }
    let fd = inv.fd.is_fd();

    if fd && inv.corank <= 1 && inv.qh_type.is_some() {
        match analyze_slice(f, opts.seed, opts.max_order) {
            Ok(s) => {
                if s.mu_w_direct.is_none() {
                    doc.notes.push(format!("direct μ(W) exceeded colength bound {}", opts.max_order));
                }
                for v in &s.violations {
                    doc.inconsistencies.push(inc("slice_identity", v.clone()));
                }
                doc.slice = Some(SliceFields {
                    plane: Some(s.plane.label()),
                    mu_gamma: Some(s.mu_gamma),
                    m_fd: Some(s.m_fd),
                    i_d_gamma: Some(s.i_d_gamma),
                    mu_w: Some(s.mu_w),
                });
            }
            Err(SliceError::NonIntegral(what)) => {
                doc.inconsistencies.push(inc("slice_identity", format!("{what} is not an integer")))
            }
            Err(e) => doc.notes.push(format!("slice: {e}")),
        }
    } else if inv.corank == 2 && inv.c_oracle.is_some_and(|c| c.is_finite()) {
        match choose_generic_plane(f, None, opts.seed, opts.max_order) {
            Ok(p) => {
                doc.slice = Some(SliceFields {
                    plane: Some(p.label()),
                    mu_gamma: Some(p.mu_gamma),
                    ..SliceFields::default()
                })
            }
            Err(e) => doc.notes.push(format!("slice: {e}")),
        }
    }

    if inv.corank <= 1 && f.coord(0) == &f.x() {
        image_checks(f, &inv, opts, fd, &mut doc);
    }
    doc
}

fn image_checks(f: &MapGerm, inv: &crate::invariants::InvariantReport, opts: &ReportOptions, fd: bool, doc: &mut ReportDocument) {
    let eq = match image_equation(f) {
        Ok(e) => e,
        Err(e) => {
            doc.notes.push(format!("image equation: {e}"));
            return;
        }
    };
    doc.image_equation = Some(eq.poly.to_string());
    if !eq.was_reduced {
        doc.notes.push("elimination resultant was not reduced; squarefree part reported".into());
    }
    match f.pull_back(&eq.poly) {
        Ok(p) if p.is_zero() => {}
        _ => doc.inconsistencies.push(inc("image_equation", "F∘f is not identically zero".into())),
    }
    if fd {
        if let Some(t) = inv.qh_type {
            let mult = image_multiplicity_formula(&t);
            let ord = eq.poly.min_degree().unwrap_or(0);
            if mult != rat(ord as i64) {
                doc.inconsistencies.push(inc(
                    "image_order",
                    format!("image equation has order {ord}, weighted formula gives {mult}"),
                ));
            }
        }
    }
    match presentation_matrix(f) {
        Ok(pm) => {
            if !pm.det().is_associate(&eq.poly) && eq.was_reduced {
                doc.inconsistencies.push(inc("presentation_det", "det does not match the image equation".into()));
            }
            if fd {
                if let Some(t) = inv.t {
                    match triple_point_oracle(f, opts.max_order) {
                        Ok(crate::localalg::ColengthResult::Finite(v)) if v == t => {}
                        Ok(v) => doc.inconsistencies.push(inc(
                            "triple_points",
                            format!("Fitt2 colength {v}, formula {t}"),
                        )),
                        Err(e) => doc.notes.push(format!("triple points: {e}")),
                    }
                }
            }
        }
        Err(ImageFitError::Unsupported) => {}
        Err(e) => doc.notes.push(format!("presentation matrix: {e}")),
    }
}

/// Two profiles side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareDocument {
    pub germs: [String; 2],
    pub labels: [Option<String>; 2],
    pub profiles: [ZariskiProfile; 2],
    pub comparison: ZariskiComparison,
    pub inconsistencies: Vec<Inconsistency>,
    pub version: String,
    pub seed: u64,
}

/// Profiles of `f` and `g`; equal profiles with different multiplicities are flagged.
pub fn compare_report(
    f: &MapGerm,
    g: &MapGerm,
    labels: [Option<&str>; 2],
    opts: &ReportOptions,
) -> Result<CompareDocument, SliceError> {
    let p = zariski_profile(f, opts.max_order)?;
    let q = zariski_profile(g, opts.max_order)?;
    let comparison = zariski_compare(&p, &q);
    let mut inconsistencies = Vec::new();
    if comparison.profiles_match && !comparison.multiplicities_equal {
        inconsistencies.push(inc(
            "multiplicity_not_determined",
            format!("equal profiles but multiplicities {} and {}", p.mult_image, q.mult_image),
        ));
    }
    Ok(CompareDocument {
        germs: [f.to_string(), g.to_string()],
        labels: labels.map(|l| l.map(str::to_string)),
        profiles: [p, q],
        comparison,
        inconsistencies,
        version: VERSION.to_string(),
        seed: opts.seed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub family: String,
    pub label: Option<String>,
    #[serde(flatten)]
    pub report: FamilyReport,
    pub version: String,
    pub seed: u64,
}

pub fn family_report(fam: &GermFamily, label: Option<&str>, samples: &[Rat], opts: &ReportOptions) -> FamilyDocument {
    FamilyDocument {
        family: fam.to_string(),
        label: label.map(str::to_string),
        report: whitney_family_check(fam, samples, opts.seed, opts.max_order),
        version: VERSION.to_string(),
        seed: opts.seed,
    }
}

pub fn render_compare(doc: &CompareDocument) -> String {
    let mut s = String::new();
    for i in 0..2 {
        let name = doc.labels[i].clone().unwrap_or_else(|| doc.germs[i].clone());
        let p = &doc.profiles[i];
        let _ = writeln!(
            s,
            "{name}: weights {:?}  degrees {:?}  deg λ {}  C {}  T {}  m {}",
            p.weights, p.degrees, p.lambda_degree, p.c, p.t, p.mult_image
        );
        let _ = writeln!(s, "  branch μ {:?}  intersections {:?}", p.branch_mus, p.intersections);
    }
    let c = &doc.comparison;
    let yn = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(s, "weights match          {}", yn(c.weights_match));
    let _ = writeln!(s, "intersection tables    {}", yn(c.intersection_tables_match));
    let _ = writeln!(s, "C and T match          {}", yn(c.c_t_match));
    let _ = writeln!(s, "degrees equal          {}", yn(c.degrees_equal));
    let _ = writeln!(s, "profiles match         {}", yn(c.profiles_match));
    let _ = writeln!(s, "multiplicities equal   {}", yn(c.multiplicities_equal));
    for i in &doc.inconsistencies {
        let _ = writeln!(s, "INCONSISTENT [{}] {}", i.code, i.message);
    }
    s
}

pub fn render_family(doc: &FamilyDocument) -> String {
    let mut s = String::new();
    if let Some(l) = &doc.label {
        let _ = writeln!(s, "{l}");
    }
    let _ = writeln!(s, "family {}  parameter {}", doc.family, doc.report.parameter);
    for r in &doc.report.samples {
        let _ = write!(s, "  {} = {:>6}  {:<12} mu(W) {:>4}  m {:>3}", doc.report.parameter, r.t, r.fd.to_string(), opt(&r.mu_w), opt(&r.m_image));
        if let Some(e) = &r.error {
            let _ = write!(s, "  ({e})");
        }
        s.push('\n');
    }
    let _ = writeln!(s, "mu(W) constant on samples: {}", doc.report.mu_w_constant);
    let _ = writeln!(s, "multiplicity constant on samples: {}", doc.report.m_image_constant);
    s
}

pub fn render_corpus(rows: &[EntryResult]) -> String {
    let mut s = String::new();
    for r in rows {
        let _ = writeln!(s, "{} {}", if r.pass { "PASS" } else { "FAIL" }, r.label);
        for c in r.checks.iter().filter(|c| !c.pass) {
            let _ = writeln!(s, "    expected {}, got {}", c.check, c.actual);
        }
        for i in &r.inconsistencies {
            let _ = writeln!(s, "    INCONSISTENT [{}] {}", i.code, i.message);
        }
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    let _ = writeln!(s, "{passed}/{} entries passed", rows.len());
    s
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

/// Plain-text rendering.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut s = String::new();
    if let Some(l) = &doc.label {
        let _ = writeln!(s, "{l}");
    }
    let _ = writeln!(s, "germ        {}", doc.germ);
    let _ = writeln!(s, "corank      {}", doc.corank);
    let _ = writeln!(s, "type        {}", opt(&doc.qh_type));
    let _ = writeln!(s, "verdict     {}", doc.fd);
    let _ = writeln!(s, "lambda      {}", opt(&doc.lambda));
    if !doc.branches.is_empty() {
        let _ = writeln!(s, "branches");
        for b in &doc.branches {
            let cls = b.class_poly.as_deref().map(|p| format!(" [{p}]")).unwrap_or_default();
            let _ = writeln!(s, "  {}{cls} x{}: {} (degree {})", b.kind, b.count, b.classification, b.degree);
        }
    }
    let i = &doc.invariants;
    let _ = writeln!(
        s,
        "C {}  T {}  Ae-codim {}  mu(D) {}  r_i {}  r_f {}  m {}",
        opt(&i.c),
        opt(&i.t),
        opt(&i.ae_codim),
        opt(&i.mu_d),
        opt(&i.r_i),
        opt(&i.r_f),
        opt(&i.m_image)
    );
    if let Some(sv) = &doc.s_vector {
        let _ = writeln!(s, "s-vector    ({},{},{})", sv.s1, sv.s2, sv.s3);
    }
    if let Some(p) = &doc.fold_plane {
        let _ = writeln!(s, "fold plane  {p}");
    }
    if let Some(sl) = &doc.slice {
        let _ = writeln!(
            s,
            "slice {}: mu(gamma) {}  m(f(D)) {}  i(D,gamma) {}  mu(W) {}",
            opt(&sl.plane),
            opt(&sl.mu_gamma),
            opt(&sl.m_fd),
            opt(&sl.i_d_gamma),
            opt(&sl.mu_w)
        );
    }
    if let Some(e) = &doc.image_equation {
        let _ = writeln!(s, "image       {e} = 0");
    }
    for n in &doc.notes {
        let _ = writeln!(s, "note: {n}");
    }
    for c in &doc.inconsistencies {
        let _ = writeln!(s, "INCONSISTENT [{}] {}", c.code, c.message);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(c: [&str; 3]) -> MapGerm {
        MapGerm::parse(["x", "y"], c).unwrap()
    }

    #[test]
    fn c5_document() {
        let doc = build_report(&g(["x", "y^2", "x*y^3 - x^5*y"]), Some("C5"), &ReportOptions::default());
        assert!(doc.inconsistencies.is_empty(), "{:?}", doc.inconsistencies);
        let i = &doc.invariants;
        assert_eq!((i.r_i, i.r_f, i.mu_d, i.m_image), (Some(2), Some(1), Some(6), Some(2)));
        assert_eq!(doc.slice.as_ref().unwrap().mu_w, Some(13));
        let json = serde_json::to_string(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in ["germ", "qh_type", "fd", "branches", "invariants", "slice", "inconsistencies", "version", "seed"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert!(render_text(&doc).contains("mu(W) 13"));
    }

    #[test]
    fn example_pair() {
        let doc = build_report(&g(["x", "y^3", "x*y"]), None, &ReportOptions::default());
        assert_eq!(doc.fd, "NonReducedD");
        assert!(doc.inconsistencies.is_empty());
        assert!(doc.slice.is_none());
        let doc = build_report(&g(["x", "y^3", "x*y + y^2"]), None, &ReportOptions::default());
        assert_eq!(doc.fd, "FD");
        assert!(doc.inconsistencies.is_empty(), "{:?}", doc.inconsistencies);
        assert_eq!(doc.invariants.m_image, Some(2));
    }

    #[test]
    fn double_fold_is_partial() {
        let doc = build_report(&g(["x^2", "y^2", "x^3 + y^3 + x*y"]), None, &ReportOptions::default());
        assert_eq!(doc.corank, 2);
        assert!(doc.fd.starts_with("Unsupported"));
        assert_eq!(doc.slice.unwrap().mu_gamma, Some(1));
    }
}
