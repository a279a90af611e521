//! Polynomials viewed as univariate in one variable with polynomial coefficients.

use num_traits::One;

use super::poly::{MPoly, Monomial, Rat};
use super::PolyError;

/// Dense coefficient list, index = power, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    pub coeffs: Vec<MPoly>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<MPoly>) -> UniPoly {
        while coeffs.last().is_some_and(MPoly::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Splits `p` by powers of variable `v`; coefficients stay in the ring of `p`.
    pub fn from_mpoly(p: &MPoly, v: usize) -> UniPoly {
        let n = p.degree_in(v).map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![MPoly::zero(p.vars()); n];
        for (m, c) in p.terms() {
            let mut nm = *m;
            let e = nm.0[v] as usize;
            nm.0[v] = 0;
            coeffs[e].add_term(nm, c.clone());
        }
        UniPoly::new(coeffs)
    }

    /// Reassembles with variable `v` as the main variable.
    pub fn to_mpoly(&self, v: usize, zero: &MPoly) -> MPoly {
        let mut r = zero.clone();
        for (e, c) in self.coeffs.iter().enumerate() {
            r = &r + &c.mul_term(Monomial::var(v, e as u32), &Rat::one());
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> &MPoly {
        self.coeffs.last().expect("leading coefficient of zero")
    }

    fn scale(&self, c: &MPoly) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|k| k * c).collect())
    }

    fn div_exact_coeffs(&self, c: &MPoly) -> Result<UniPoly, PolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|k| k.div_exact(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(coeffs))
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) a mod b`.
    pub fn prem(&self, b: &UniPoly) -> UniPoly {
        let db = b.degree().expect("pseudo-division by zero");
        let Some(da) = self.degree() else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let lb = b.lc().clone();
        let mut r = self.coeffs.clone();
        let mut e = da - db + 1;
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            let shift = dr - db;
            for k in r.iter_mut() {
                *k = &*k * &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[i + shift] = &r[i + shift] - &(&lr * bc);
            }
            debug_assert!(r[dr].is_zero());
            r.pop();
            while r.last().is_some_and(MPoly::is_zero) {
                r.pop();
            }
            e -= 1;
        }
        let r = UniPoly::new(r);
        if e > 0 {
            r.scale(&lb.pow(e as u32))
        } else {
            r
        }
    }

    /// Content over the coefficient ring: monic gcd of the coefficients.
    pub fn content(&self) -> MPoly {
        let mut g = MPoly::zero(self.coeffs[0].vars());
        for c in &self.coeffs {
            g = gcd_poly(&g, c);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        g
    }
}

/// Resultant of two univariate views by the subresultant remainder sequence.
pub fn resultant_uni(a: &UniPoly, b: &UniPoly, zero: &MPoly) -> Result<MPoly, PolyError> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Ok(zero.clone());
    };
    if db == 0 {
        return Ok(b.lc().pow(da as u32));
    }
    if da == 0 {
        return Ok(a.lc().pow(db as u32));
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut negate = false;
    if da < db {
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            negate = true;
        }
    }
    let one = MPoly::one(zero.vars());
    let mut g = one.clone();
    let mut h = one;
    loop {
        let da = a.degree().expect("nonzero");
        let db = b.degree().expect("nonzero");
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return Ok(zero.clone());
        }
        a = b;
        b = r.div_exact_coeffs(&(&g * &h.pow(delta)))?;
        g = a.lc().clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact(&h.pow(delta - 1))?,
        };
        if b.degree() == Some(0) {
            break;
        }
    }
    let da = a.degree().expect("nonzero") as u32;
    let res = b.lc().pow(da).div_exact(&h.pow(da - 1))?;
    Ok(if negate { -res } else { res })
}

/// Sylvester resultant of `p` and `q` with respect to variable `var`.
///
/// The result lives in the same ring and does not involve `var`.
pub fn resultant(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly, PolyError> {
    let v = p
        .vars()
        .index_of(var)
        .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
    if p.vars() != q.vars() {
        return Err(PolyError::VariableMismatch {
            left: p.vars().names().join(","),
            right: q.vars().names().join(","),
        });
    }
    if p.is_zero() || q.is_zero() {
        return Err(PolyError::ZeroPolynomial("resultant"));
    }
    let a = UniPoly::from_mpoly(p, v);
    let b = UniPoly::from_mpoly(q, v);
    resultant_uni(&a, &b, &MPoly::zero(p.vars()))
}

/// Resultant normalized to a primitive integer polynomial with positive leading coefficient.
pub fn resultant_normalized(p: &MPoly, q: &MPoly, var: &str) -> Result<MPoly, PolyError> {
    Ok(resultant(p, q, var)?.primitive())
}

fn main_var(p: &MPoly, q: &MPoly) -> Option<usize> {
    (0..p.nvars()).rev().find(|&i| p.involves(i) || q.involves(i))
}

/// `true` when some integer specialization of the other variables keeps both leading
/// coefficients and leaves coprime univariate images, so the gcd has degree 0 in `v`.
fn coprime_in_main_var(a: &UniPoly, b: &UniPoly, v: usize, nvars: usize) -> bool {
    if nvars < 2 || a.degree() == Some(0) || b.degree() == Some(0) {
        return false;
    }
    if a.coeffs.iter().chain(&b.coeffs).all(MPoly::is_constant) {
        return false;
    }
    for shift in [2i64, 5, 11] {
        let point: Vec<Rat> = (0..nvars).map(|i| super::poly::rat(shift + 3 * i as i64)).collect();
        let at = |c: &MPoly| -> MPoly {
            (0..nvars).filter(|&i| i != v).fold(c.clone(), |acc, i| acc.eval_var(i, &point[i]))
        };
        if at(a.lc()).is_zero() || at(b.lc()).is_zero() {
            continue;
        }
        let sa = UniPoly::new(a.coeffs.iter().map(at).collect());
        let sb = UniPoly::new(b.coeffs.iter().map(at).collect());
        let zero = MPoly::zero(a.lc().vars());
        let g = gcd_poly(&sa.to_mpoly(v, &zero), &sb.to_mpoly(v, &zero));
        return g.degree_in(v).unwrap_or(0) == 0;
    }
    false
}

/// Greatest common divisor, monic in graded lexicographic order; `gcd(0,0) = 0`.
pub fn gcd_poly(p: &MPoly, q: &MPoly) -> MPoly {
    assert!(p.vars() == q.vars(), "gcd over different variables");
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    let Some(v) = main_var(p, q) else {
        return MPoly::one(p.vars());
    };
    let a = UniPoly::from_mpoly(p, v);
    let b = UniPoly::from_mpoly(q, v);
    let ca = a.content();
    let cb = b.content();
    let c = gcd_poly(&ca, &cb);
    if coprime_in_main_var(&a, &b, v, p.nvars()) {
        return c.monic();
    }
    let zero = MPoly::zero(p.vars());
    let prim = |u: UniPoly| UniPoly::from_mpoly(&u.to_mpoly(v, &zero).primitive(), v);
    let mut a = prim(a.div_exact_coeffs(&ca).expect("content divides"));
    let mut b = prim(b.div_exact_coeffs(&cb).expect("content divides"));
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while b.degree().is_some_and(|d| d > 0) {
        let r = a.prem(&b);
        a = b;
        if r.is_zero() {
            b = r;
            break;
        }
        let cr = r.content();
        b = prim(r.div_exact_coeffs(&cr).expect("content divides"));
    }
    let g = if b.is_zero() {
        a
    } else {
        return c.monic();
    };
    let g = &g.to_mpoly(v, &zero) * &c;
    g.monic()
}

/// Product of the distinct irreducible factors, monic.
pub fn squarefree_part(p: &MPoly) -> Result<MPoly, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial("squarefree part"));
    }
    let mut g = p.clone();
    for i in 0..p.nvars() {
        g = gcd_poly(&g, &p.derivative(i));
    }
    Ok(p.div_exact(&g)?.monic())
}

/// Whether `p` has no repeated factor.
pub fn is_squarefree(p: &MPoly) -> Result<bool, PolyError> {
    Ok(squarefree_part(p)?.total_degree() == p.total_degree())
}

/// Exact quotient of `p` by `q` if `q | p`.
pub fn divides(q: &MPoly, p: &MPoly) -> bool {
    if q.is_zero() {
        return p.is_zero();
    }
    p.div_exact(q).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse::parse_poly;
    use crate::exactpoly::poly::VarSet;

    fn p2(s: &str) -> MPoly {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    fn p3(s: &str) -> MPoly {
        parse_poly(s, &["x", "y", "w"]).unwrap()
    }

    /// Determinant of the Sylvester matrix by fraction-free elimination.
    fn sylvester(p: &MPoly, q: &MPoly, v: usize) -> MPoly {
        let a = UniPoly::from_mpoly(p, v);
        let b = UniPoly::from_mpoly(q, v);
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        let zero = MPoly::zero(p.vars());
        if size == 0 {
            return MPoly::one(p.vars());
        }
        let mut mat = vec![vec![zero.clone(); size]; size];
        for r in 0..n {
            for (i, c) in a.coeffs.iter().enumerate() {
                mat[r][r + m - i] = c.clone();
            }
        }
        for r in 0..m {
            for (i, c) in b.coeffs.iter().enumerate() {
                mat[n + r][r + n - i] = c.clone();
            }
        }
        laplace(&mat)
    }

    fn laplace(m: &[Vec<MPoly>]) -> MPoly {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = MPoly::zero(m[0][0].vars());
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<MPoly>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, c)| c.clone()).collect())
                .collect();
            let t = &m[0][j] * &laplace(&minor);
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        acc
    }

    #[test]
    fn resultant_matches_sylvester_determinant() {
        let cases = [
            ("y^2 - x", "y - x"),
            ("y - x", "y^2 - x"),
            ("x*y^3 + 2y - 1", "y^2 + x*y + 3"),
            ("y^4 + x*y + 1", "2*y^3 - x^2"),
            ("y^3 + x", "y^3 - x^2*y"),
            ("x^2*y^2 + y + x", "x*y^5 - y^2 + 7"),
            ("y^2 + 1", "y^2 + 1"),
        ];
        for (a, b) in cases {
            let (a, b) = (p2(a), p2(b));
            assert_eq!(resultant(&a, &b, "y").unwrap(), sylvester(&a, &b, 1), "{a} / {b}");
        }
    }

    #[test]
    fn c5_double_point_elimination() {
        let p = p3("y + w");
        let q = p3("x*(y^2 + y*w + w^2) - x^5");
        let r = resultant(&p, &q, "w").unwrap();
        assert_eq!(r, p3("x*y^2 - x^5"));
        assert_eq!(r, q.substitute(2, &p3("-y")).unwrap());
    }

    #[test]
    fn simple_resultants() {
        assert_eq!(resultant(&p2("y^2-x"), &p2("y-x"), "y").unwrap(), p2("x^2 - x"));
        assert_eq!(resultant(&p2("y^2-x"), &p2("3"), "y").unwrap(), p2("9"));
        assert!(resultant(&p2("y"), &p2("x"), "z").is_err());
        let v = VarSet::new(["X", "Y", "y"]).unwrap();
        let s = crate::exactpoly::parse::parse_in;
        let (a, b) = (s("y^3 - Y", &v).unwrap(), s("X*y - 1", &v).unwrap());
        assert_eq!(resultant(&a, &b, "y").unwrap(), s("X^3*Y - 1", &v).unwrap());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_poly(&p2("y^2-x^2"), &p2("y-x")), p2("x-y"));
        assert_eq!(gcd_poly(&p2("x*y^2-x^5"), &p2("3x^2*y")), p2("x"));
        assert_eq!(gcd_poly(&p2("2x+4y"), &p2("0")), p2("x+2y"));
        assert!(gcd_poly(&p2("0"), &p2("0")).is_zero());
        assert_eq!(gcd_poly(&p2("x^2 + y^2"), &p2("x+1")), p2("1"));
        let g = p2("x*y + y^3 - 2");
        let a = &g * &p2("x - y^2 + 1");
        let b = &g * &p2("x^3 + y");
        assert_eq!(gcd_poly(&a, &b), g.monic());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p2("x^2*(y-x)")).unwrap(), p2("x*(y-x)").monic());
        assert_eq!(squarefree_part(&p2("x*y^2-x^5")).unwrap(), p2("x*y^2-x^5").monic());
        assert_eq!(squarefree_part(&p2("x^2")).unwrap(), p2("x"));
        assert!(squarefree_part(&p2("0")).is_err());
        assert!(!is_squarefree(&p2("(x+y)^2*(x-y)")).unwrap());
    }

    #[test]
    fn gcd_keeps_rational_coefficients_small() {
        let p = p2("5*x - 15*y^4 + 9*(x^5*y + x*y^5 + y^6) + 7*x^3*y^2");
        assert!(is_squarefree(&p).unwrap());
        let q = p2("(x^5*y + x*y^5 + y^6)^2 - 3*x^7*y^5 + 11*y^13");
        assert!(gcd_poly(&p, &q).is_constant());
        let h = p2("13*x^3 - 5*y^2 + 2");
        assert!(gcd_poly(&(&p * &h), &(&p2("x*y + 3") * &h)).is_associate(&h));
    }
}
