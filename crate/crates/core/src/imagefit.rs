//! Image equations, presentation matrices and Fitting ideals.

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::exactpoly::{rat, resultant_uni, squarefree_part, MPoly, Monomial, PolyError, UniPoly, VarSet};
use crate::germ::MapGerm;
use crate::localalg::{colength_local, ColengthResult, IdealGens, LocalAlgError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImageFitError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    LocalAlg(#[from] LocalAlgError),
    #[error("first coordinate must be x")]
    FirstCoordinateNotX,
    #[error("elimination resultant vanishes identically")]
    Degenerate,
    #[error("presentation matrices need f2 = y^n exactly")]
    Unsupported,
}

/// Target coordinates `X, Y, Z`.
pub fn target_vars() -> VarSet {
    VarSet::new(["X", "Y", "Z"]).expect("valid")
}

/// Image equation with a flag set when the raw resultant was not reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageEquation {
    pub poly: MPoly,
    pub was_reduced: bool,
}

/// `c(x, y)` as a polynomial in `y` over `ℚ[X, Y, Z]` with `x ↦ X`.
fn lift_in_y(c: &MPoly, tv: &VarSet) -> Vec<MPoly> {
    let deg = c.degree_in(1).unwrap_or(0) as usize;
    let mut coeffs = vec![MPoly::zero(tv); deg + 1];
    for (m, k) in c.terms() {
        let t = MPoly::monomial(tv, Monomial([m.0[0], 0, 0]), k.clone());
        coeffs[m.0[1] as usize] = &coeffs[m.0[1] as usize] + &t;
    }
    coeffs
}

/// Primitive `Res_y(f2(X,y) − Y, f3(X,y) − Z)`, replaced by its squarefree part if needed.
pub fn image_equation(f: &MapGerm) -> Result<ImageEquation, ImageFitError> {
    if f.coord(0) != &f.x() {
        return Err(ImageFitError::FirstCoordinateNotX);
    }
    let tv = target_vars();
    let zero = MPoly::zero(&tv);
    let shifted = |i: usize| {
        let mut c = lift_in_y(f.coord(i), &tv);
        c[0] = &c[0] - &MPoly::var(&tv, i);
        UniPoly::new(c)
    };
    let (p, q) = (shifted(1), shifted(2));
    if p.degree() == Some(0) && q.degree() == Some(0) {
        return Err(ImageFitError::Degenerate);
    }
    let res = resultant_uni(&p, &q, &zero)?;
    if res.is_zero() {
        return Err(ImageFitError::Degenerate);
    }
    let raw = res.primitive();
    let sq = squarefree_part(&raw)?.primitive();
    Ok(ImageEquation {
        was_reduced: sq.total_degree() == raw.total_degree(),
        poly: sq,
    })
}

/// Square matrix over `ℚ[X, Y, Z]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationMatrix {
    pub entries: Vec<Vec<MPoly>>,
}

impl PresentationMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> MPoly {
        let sub: Vec<Vec<MPoly>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect())
            .collect();
        det(&sub)
    }

    pub fn det(&self) -> MPoly {
        det(&self.entries)
    }

    /// All `k × k` minors, zeros dropped.
    pub fn minors(&self, k: usize) -> Vec<MPoly> {
        let n = self.size();
        let mut out = Vec::new();
        for rows in (0..n).combinations(k) {
            for cols in (0..n).combinations(k) {
                let m = self.minor(&rows, &cols);
                if !m.is_zero() && !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        out
    }
}

/// Laplace expansion along the first row.
fn det(m: &[Vec<MPoly>]) -> MPoly {
    match m.len() {
        0 => MPoly::one(&target_vars()),
        1 => m[0][0].clone(),
        n => {
            let mut acc = MPoly::zero(m[0][0].vars());
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<MPoly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
                    .collect();
                let term = &m[0][j] * &det(&sub);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// `Z·I − M` with row `i` holding the coordinates of `y^i·f3` in the basis `1, …, y^{n−1}`.
pub fn presentation_matrix(f: &MapGerm) -> Result<PresentationMatrix, ImageFitError> {
    if f.coord(0) != &f.x() {
        return Err(ImageFitError::FirstCoordinateNotX);
    }
    let f2 = f.coord(1);
    let n = match f2.terms().collect::<Vec<_>>().as_slice() {
        [(m, c)] if m.0[0] == 0 && m.0[1] >= 1 && **c == rat(1) => m.0[1] as usize,
        _ => return Err(ImageFitError::Unsupported),
    };
    let tv = target_vars();
    let mut entries = vec![vec![MPoly::zero(&tv); n]; n];
    for (i, row) in entries.iter_mut().enumerate() {
        for (m, c) in f.coord(2).terms() {
            let e = m.0[1] as usize + i;
            let (q, r) = (e / n, e % n);
            let t = MPoly::monomial(&tv, Monomial([m.0[0], q as u32, 0]), c.clone());
            row[r] = &row[r] - &t;
        }
        row[i] = &row[i] + &MPoly::var(&tv, 2);
    }
    Ok(PresentationMatrix { entries })
}

/// Determinant and the Fitting ideals of orders 1 and 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FittingLoci {
    pub det: MPoly,
    pub fitt1: Vec<MPoly>,
    pub fitt2: Vec<MPoly>,
}

pub fn fitting_loci(pm: &PresentationMatrix) -> FittingLoci {
    let n = pm.size();
    let tv = target_vars();
    let ideal = |k: usize| {
        if k == 0 {
            vec![MPoly::one(&tv)]
        } else {
            pm.minors(k)
        }
    };
    FittingLoci {
        det: pm.det(),
        fitt1: ideal(n.saturating_sub(1)),
        fitt2: ideal(n.saturating_sub(2)),
    }
}

/// `dim 𝒪₃/Fitt₂`.
pub fn triple_point_oracle(f: &MapGerm, max_order: u32) -> Result<ColengthResult, ImageFitError> {
    let fl = fitting_loci(&presentation_matrix(f)?);
    if fl.fitt2.iter().any(|g| !g.constant_term().is_zero()) {
        return Ok(ColengthResult::Finite(0));
    }
    if fl.fitt2.is_empty() {
        return Ok(ColengthResult::InfiniteAtBound(max_order));
    }
    Ok(colength_local(&IdealGens::new(fl.fitt2)?, max_order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{parse_poly, qh_check, QhCheck};
    use crate::localalg::DEFAULT_MAX_ORDER;

    fn g(c: [&str; 3]) -> MapGerm {
        MapGerm::parse(["x", "y"], c).unwrap()
    }

    fn t(s: &str) -> MPoly {
        parse_poly(s, &["X", "Y", "Z"]).unwrap()
    }

    #[test]
    fn image_equations() {
        let e = image_equation(&g(["x", "y^3", "x*y"])).unwrap();
        assert!(e.poly.is_associate(&t("Z^3 - X^3*Y")));
        assert!(e.was_reduced);
        let e = image_equation(&g(["x", "y^3", "x*y + y^2"])).unwrap();
        assert!(e.poly.is_associate(&t("Z^3 - X^3*Y - Y^2 - 3*X*Y*Z")));
        let f = g(["x", "y^2", "x*y^3 - x^5*y"]);
        let e = image_equation(&f).unwrap();
        assert!(e.poly.is_associate(&t("Z^2 - X^2*Y^3 + 2*X^6*Y^2 - X^10*Y")));
        assert_eq!(qh_check(&e.poly, &[1, 4, 7]), QhCheck::Degree(14));
        assert!(e.poly.compose(f.coords()).unwrap().is_zero());
    }

    #[test]
    fn matrices() {
        let pm = presentation_matrix(&g(["x", "y^3", "x*y"])).unwrap();
        let want = [["Z", "-X", "0"], ["0", "Z", "-X"], ["-X*Y", "0", "Z"]];
        for (i, row) in want.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(pm.entries[i][j], t(e));
            }
        }
        assert!(pm.det().is_associate(&t("Z^3 - X^3*Y")));
        let pm = presentation_matrix(&g(["x", "y^3", "x*y + y^2"])).unwrap();
        assert_eq!(pm.entries[0], vec![t("Z"), t("-X"), t("-1")]);
        assert!(pm.det().is_associate(&t("Z^3 - X^3*Y - Y^2 - 3*X*Y*Z")));
        let pm = presentation_matrix(&g(["x", "y^2", "x*y"])).unwrap();
        assert_eq!(pm.det(), t("Z^2 - X^2*Y"));
        assert_eq!(
            presentation_matrix(&g(["x", "y^3 + x*y", "y^4"])),
            Err(ImageFitError::Unsupported)
        );
    }

    #[test]
    fn fitting_ideals() {
        let fl = fitting_loci(&presentation_matrix(&g(["x", "y^2", "x*y"])).unwrap());
        assert_eq!(fl.fitt2, vec![t("1")]);
        assert_eq!(fl.fitt1.len(), 3);
        assert_eq!(triple_point_oracle(&g(["x", "y^2", "x*y"]), 16), Ok(ColengthResult::Finite(0)));
        assert_eq!(
            triple_point_oracle(&g(["x", "y^3", "y^5 + x^2*y"]), DEFAULT_MAX_ORDER),
            Ok(ColengthResult::Finite(2))
        );
        assert_eq!(
            triple_point_oracle(&g(["x", "y^3", "x*y + y^2"]), DEFAULT_MAX_ORDER),
            Ok(ColengthResult::Finite(0))
        );
    }

    #[test]
    fn degenerate() {
        let e = image_equation(&g(["x", "y^2", "y^4"])).unwrap();
        assert!(!e.was_reduced);
        assert!(e.poly.is_associate(&t("Y^2 - Z")));
        assert_eq!(image_equation(&g(["x", "x^2", "x^3"])), Err(ImageFitError::Degenerate));
    }
}
