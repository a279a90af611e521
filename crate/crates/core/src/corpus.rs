//! Built-in germs with known invariants, run as a golden suite.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactpoly::{parse_poly, MPoly};
use crate::germ::MapGerm;
use crate::invariants::{Inconsistency, ReportOptions};
use crate::report::{build_report, ReportDocument};

/// One expected value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expect {
    Verdict(&'static str),
    QhType(&'static str),
    Components(u64, u64),
    FoldComponents(u64),
    SVector([u64; 3]),
    /// Up to a nonzero rational factor.
    Lambda(String),
    Multiplicity(u64),
    C(u64),
    T(u64),
    AeCodim(u64),
    MuD(u64),
    /// Up to a nonzero rational factor.
    ImageEquation(&'static str),
    FoldPlane(&'static str),
    MuGamma(u64),
    MFd(u64),
    IDGamma(u64),
    MuW(u64),
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expect::Verdict(v) => write!(f, "verdict {v}"),
            Expect::QhType(t) => write!(f, "type {t}"),
            Expect::Components(i, j) => write!(f, "(r_i,r_f) = ({i},{j})"),
            Expect::FoldComponents(k) => write!(f, "r_f = {k}"),
            Expect::SVector(s) => write!(f, "s = ({},{},{})", s[0], s[1], s[2]),
            Expect::Lambda(l) => write!(f, "λ ~ {l}"),
            Expect::Multiplicity(m) => write!(f, "m = {m}"),
            Expect::C(v) => write!(f, "C = {v}"),
            Expect::T(v) => write!(f, "T = {v}"),
            Expect::AeCodim(v) => write!(f, "Ae-codim = {v}"),
            Expect::MuD(v) => write!(f, "μ(D) = {v}"),
            Expect::ImageEquation(e) => write!(f, "F ~ {e}"),
            Expect::FoldPlane(p) => write!(f, "fold plane {p}"),
            Expect::MuGamma(v) => write!(f, "μ(γ̃) = {v}"),
            Expect::MFd(v) => write!(f, "m(f(D)) = {v}"),
            Expect::IDGamma(v) => write!(f, "i(D,γ̃) = {v}"),
            Expect::MuW(v) => write!(f, "μ(W) = {v}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub label: String,
    pub vars: [&'static str; 2],
    pub map: [String; 3],
    pub expect: Vec<Expect>,
}

impl CorpusEntry {
    fn new(label: &str, map: [&str; 3], expect: Vec<Expect>) -> CorpusEntry {
        CorpusEntry {
            label: label.to_string(),
            vars: ["x", "y"],
            map: map.map(str::to_string),
            expect,
        }
    }

    pub fn germ(&self) -> MapGerm {
        MapGerm::parse(self.vars, [&self.map[0], &self.map[1], &self.map[2]]).expect("corpus germs parse")
    }
}

fn product(factors: impl Iterator<Item = String>) -> String {
    factors.map(|f| format!("({f})")).collect::<Vec<_>>().join("*")
}

/// The built-in corpus.
pub fn corpus() -> Vec<CorpusEntry> {
    use Expect::*;
    let mut v = vec![
        CorpusEntry::new(
            "cross-cap",
            ["x", "y^2", "x*y"],
            vec![Verdict("FD"), QhType("(1,2,2;1,1)"), Components(0, 1), Lambda("x".into()), Multiplicity(2), C(1), T(0), AeCodim(0), MuD(0), MFd(1), MuW(3), ImageEquation("Z^2 - X^2*Y")],
        ),
        CorpusEntry::new(
            "C5",
            ["x", "y^2", "x*y^3 - x^5*y"],
            vec![
                Verdict("FD"),
                QhType("(1,4,7;1,2)"),
                Lambda("x*y^2 - x^5".into()),
                Components(2, 1),
                Multiplicity(2),
                C(5),
                MuD(6),
                ImageEquation("Z^2 - X^2*Y^3 + 2*X^6*Y^2 - X^10*Y"),
                MuGamma(0),
                MFd(2),
                IDGamma(4),
                MuW(13),
            ],
        ),
        CorpusEntry::new(
            "S1",
            ["x", "y^2", "y^3 - x^2*y"],
            vec![Verdict("FD"), QhType("(1,2,3;1,1)"), Lambda("y^2 - x^2".into()), Components(2, 0), C(2), T(0), MuD(1), AeCodim(1), MFd(1), Multiplicity(2)],
        ),
        CorpusEntry::new(
            "S2",
            ["x", "y^2", "y^3 + x^3*y"],
            vec![Verdict("FD"), QhType("(2,6,9;2,3)"), Components(0, 1), Multiplicity(2)],
        ),
        CorpusEntry::new(
            "C3",
            ["x", "y^2", "x*y^3 - x^3*y"],
            vec![Verdict("FD"), QhType("(1,2,4;1,1)"), Lambda("x*(y^2 - x^2)".into()), Components(2, 1), Multiplicity(2)],
        ),
        CorpusEntry::new(
            "C4",
            ["x", "y^2", "x*y^3 + x^4*y"],
            vec![Verdict("FD"), QhType("(2,6,11;2,3)"), Lambda("x*(y^2 + x^3)".into()), Components(0, 2), Multiplicity(2)],
        ),
        CorpusEntry::new(
            "s100",
            ["x", "y^4", "x^5*y + x*y^5 + y^6"],
            vec![Verdict("FD"), QhType("(1,4,6;1,1)"), SVector([1, 0, 0]), Components(14, 1), FoldPlane("X=0"), Multiplicity(4)],
        ),
        CorpusEntry::new(
            "s010",
            ["x", "y^4", "2*y^13 + x^2*y + 3*x*y^7"],
            vec![Verdict("FD"), QhType("(6,4,13;6,1)"), SVector([0, 1, 0]), Components(4, 2), FoldPlane("Z=0")],
        ),
        CorpusEntry::new(
            "s001",
            ["x", "y^5 + x*y", "y^6"],
            vec![Verdict("FD"), QhType("(4,5,6;4,1)"), SVector([0, 0, 1]), Components(4, 1), FoldPlane("Y=0")],
        ),
        CorpusEntry::new(
            "s000",
            ["x", "y^3", "y^5 + x^2*y"],
            vec![Verdict("FD"), QhType("(2,3,5;2,1)"), SVector([0, 0, 0]), Components(4, 0), T(2), C(4), Multiplicity(3)],
        ),
        CorpusEntry::new(
            "m4-quartic",
            ["x", "y^4", "x^5*y - 5*x^3*y^3 + 4*x*y^5 + y^6"],
            vec![Verdict("FD"), QhType("(1,4,6;1,1)"), Multiplicity(4), Components(14, 1)],
        ),
        CorpusEntry::new(
            "pair-nonreduced",
            ["x", "y^3", "x*y"],
            vec![Verdict("NonReducedD"), QhType("(1,3,2;1,1)"), Lambda("x^2".into()), Multiplicity(3), ImageEquation("Z^3 - X^3*Y")],
        ),
        CorpusEntry::new(
            "pair-reduced",
            ["x", "y^3", "x*y + y^2"],
            vec![Verdict("FD"), QhType("(1,3,2;1,1)"), Lambda("x^2 + x*y + y^2".into()), Multiplicity(2), ImageEquation("Z^3 - X^3*Y - Y^2 - 3*X*Y*Z")],
        ),
        CorpusEntry::new(
            "double-fold",
            ["x^2", "y^2", "x^3 + y^3 + x*y"],
            vec![MuGamma(1)],
        ),
    ];
    for k in 1..=3u64 {
        let factors = || (1..=k).map(|j| format!("x - {j}*y^2"));
        let f3 = format!("y*{}", product(factors()));
        let lam = product(factors());
        let mut e = CorpusEntry::new(&format!("f_{k}"), ["x", "y^2", "y"], vec![Verdict("FD"), Components(0, k), Multiplicity(2)]);
        e.map[2] = f3;
        e.expect.push(Expect::Lambda(lam));
        v.push(e);
    }
    for n in 2..=4u64 {
        let mut e = CorpusEntry::new(&format!("g_{n}"), ["x", "y", "y"], vec![Verdict("FD"), Multiplicity(n), FoldComponents(0)]);
        e.map[1] = format!("y^{n}");
        e.map[2] = format!("(x + y)^{}", n + 1);
        v.push(e);
    }
    for (n, m, k) in [(2u64, 3u64, 5u64), (3, 4, 5), (2, 5, 7)] {
        let mut e = CorpusEntry::new(&format!("corank2-{n}-{m}-{k}"), ["x", "y", "x"], vec![Multiplicity(n * m)]);
        e.map = [format!("x^{n}"), format!("y^{m}"), format!("(x + y)^{k}")];
        v.push(e);
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryResult {
    pub label: String,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
    pub inconsistencies: Vec<Inconsistency>,
}

fn target_poly(s: &str) -> MPoly {
    parse_poly(s, &["X", "Y", "Z"]).expect("valid target polynomial")
}

fn opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "missing".to_string(), |x| x.to_string())
}

fn check(doc: &ReportDocument, e: &Expect, vars: [&str; 2]) -> (String, bool) {
    let inv = &doc.invariants;
    let sl = doc.slice.clone().unwrap_or_default();
    let eq = |got: Option<u64>, want: u64| (opt(got), got == Some(want));
    match e {
        Expect::Verdict(v) => (doc.fd.clone(), doc.fd == *v),
        Expect::QhType(t) => (opt(doc.qh_type.clone()), doc.qh_type.as_deref() == Some(*t)),
        Expect::Components(i, f) => (
            format!("({},{})", opt(inv.r_i), opt(inv.r_f)),
            inv.r_i == Some(*i) && inv.r_f == Some(*f),
        ),
        Expect::FoldComponents(k) => eq(inv.r_f, *k),
        Expect::SVector(s) => match doc.s_vector {
            Some(sv) => (format!("{:?}", sv.as_array()), sv.as_array() == *s),
            None => ("missing".into(), false),
        },
        Expect::Lambda(l) => {
            let want = parse_poly(l, &vars).expect("valid λ");
            match &doc.lambda {
                Some(got) => {
                    let g = parse_poly(got, &vars).expect("reported λ parses");
                    (got.clone(), g.is_associate(&want))
                }
                None => ("missing".into(), false),
            }
        }
        Expect::Multiplicity(m) => eq(inv.m_image, *m),
        Expect::C(v) => eq(inv.c, *v),
        Expect::T(v) => eq(inv.t, *v),
        Expect::AeCodim(v) => eq(inv.ae_codim, *v),
        Expect::MuD(v) => eq(inv.mu_d, *v),
        Expect::ImageEquation(s) => match &doc.image_equation {
            Some(got) => (got.clone(), target_poly(got).is_associate(&target_poly(s))),
            None => ("missing".into(), false),
        },
        Expect::FoldPlane(p) => (opt(doc.fold_plane.clone()), doc.fold_plane.as_deref() == Some(*p)),
        Expect::MuGamma(v) => eq(sl.mu_gamma, *v),
        Expect::MFd(v) => eq(sl.m_fd, *v),
        Expect::IDGamma(v) => eq(sl.i_d_gamma, *v),
        Expect::MuW(v) => eq(sl.mu_w, *v),
    }
}

pub fn run_entry(entry: &CorpusEntry, opts: &ReportOptions) -> (EntryResult, ReportDocument) {
    let doc = build_report(&entry.germ(), Some(&entry.label), opts);
    let checks: Vec<CheckResult> = entry
        .expect
        .iter()
        .map(|e| {
            let (actual, pass) = check(&doc, e, entry.vars);
            CheckResult {
                check: e.to_string(),
                actual,
                pass,
            }
        })
        .collect();
    let pass = checks.iter().all(|c| c.pass) && doc.inconsistencies.is_empty();
    (
        EntryResult {
            label: entry.label.clone(),
            pass,
            checks,
            inconsistencies: doc.inconsistencies.clone(),
        },
        doc,
    )
}

/// Runs entries in parallel; results are sorted by label.
pub fn run_corpus(entries: &[CorpusEntry], opts: &ReportOptions) -> Vec<EntryResult> {
    let mut out: Vec<EntryResult> = entries.par_iter().map(|e| run_entry(e, opts).0).collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let c = corpus();
        assert!(c.len() >= 20);
        let mut labels: Vec<&str> = c.iter().map(|e| e.label.as_str()).collect();
        labels.sort_unstable();
        labels.dedup();
        assert_eq!(labels.len(), c.len());
        assert_eq!(c.iter().find(|e| e.label == "f_2").unwrap().map[2], "y*(x - 1*y^2)*(x - 2*y^2)");
        for e in &c {
            e.germ();
        }
    }

    #[test]
    fn perturbed_expectation_fails() {
        let mut e = corpus().into_iter().find(|e| e.label == "C5").unwrap();
        e.expect = vec![Expect::Lambda("x*y^2 + x^5".into()), Expect::Components(2, 1)];
        let (r, _) = run_entry(&e, &ReportOptions::default());
        assert!(!r.pass);
        assert!(!r.checks[0].pass && r.checks[1].pass);
    }
}
