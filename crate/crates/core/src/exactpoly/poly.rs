use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// Exact rational coefficient.
pub type Rat = BigRational;

/// Largest supported number of variables.
pub const MAX_VARS: usize = 3;

/// Integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d`, panics on zero denominator.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exponent vector, padded with zeros past the ring arity.
///
/// Ordered graded lexicographically: total degree first, then the
/// exponent of the first variable, and so on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn var(i: usize, e: u32) -> Monomial {
        let mut m = [0; MAX_VARS];
        m[i] = e;
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &[u64]) -> u64 {
        self.0.iter().zip(w).map(|(&e, &w)| e as u64 * w).sum()
    }

    pub fn times(self, o: Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a += b;
        }
        Monomial(m)
    }

    /// `true` if `self` divides `o`.
    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / o` when `o` divides `self`.
    pub fn quotient(self, o: Monomial) -> Option<Monomial> {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(m))
    }

    pub fn lcm(self, o: Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(o.0) {
            *a = (*a).max(b);
        }
        Monomial(m)
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Ordered list of variable names, cheap to clone.
#[derive(Clone, Debug)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<VarSet, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(PolyError::BadArity(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !is_identifier(n) {
                return Err(PolyError::BadVariableName(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(VarSet(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    /// Appends a variable.
    pub fn with_extra(&self, name: &str) -> Result<VarSet, PolyError> {
        let mut v: Vec<String> = self.0.to_vec();
        v.push(name.to_string());
        VarSet::new(v)
    }

    /// Removes the variable at `i`.
    pub fn without(&self, i: usize) -> Result<VarSet, PolyError> {
        let mut v: Vec<String> = self.0.to_vec();
        v.remove(i);
        VarSet::new(v)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut cs = s.chars();
    match cs.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    cs.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for VarSet {}

/// Sparse polynomial with rational coefficients in up to three variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(vars: &VarSet) -> MPoly {
        MPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: Rat) -> MPoly {
        MPoly::monomial(vars, Monomial::ONE, c)
    }

    pub fn one(vars: &VarSet) -> MPoly {
        MPoly::constant(vars, Rat::one())
    }

    pub fn monomial(vars: &VarSet, m: Monomial, c: Rat) -> MPoly {
        let mut p = MPoly::zero(vars);
        p.add_term(m, c);
        p
    }

    /// The `i`-th variable.
    pub fn var(vars: &VarSet, i: usize) -> MPoly {
        assert!(i < vars.len(), "variable index out of range");
        MPoly::monomial(vars, Monomial::var(i, 1), Rat::one())
    }

    /// Builds from `(exponents, coefficient)` pairs; like terms are combined.
    pub fn from_terms<I>(vars: &VarSet, terms: I) -> MPoly
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut p = MPoly::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert!(m.0[self.vars.len()..].iter().all(|&e| e == 0));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::ONE)
    }

    /// Largest term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Largest total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree; `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Degree in the variable at index `i`; `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    /// Lowest exponent of variable `i` over all terms; `None` for zero.
    pub fn min_degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).min()
    }

    /// Whether variable `i` appears.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    fn check_same(&self, o: &MPoly) -> Result<(), PolyError> {
        if self.vars == o.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.vars.names().join(","),
                right: o.vars.names().join(","),
            })
        }
    }

    pub fn try_add(&self, o: &MPoly) -> Result<MPoly, PolyError> {
        self.check_same(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &MPoly) -> Result<MPoly, PolyError> {
        self.check_same(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &MPoly) -> Result<MPoly, PolyError> {
        self.check_same(o)?;
        let mut r = MPoly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.times(*m2), c1 * c2);
            }
        }
        Ok(r)
    }

    /// Exact quotient; fails when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Result<MPoly, PolyError> {
        self.check_same(d)?;
        let (lm, lc) = match d.leading_term() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(PolyError::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.vars);
        while let Some((m, c)) = rem.leading_term() {
            let Some(qm) = m.quotient(lm) else {
                return Err(PolyError::NotDivisible);
            };
            let qc = c / &lc;
            for (dm, dc) in &d.terms {
                rem.add_term(qm.times(*dm), -(&qc * dc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    /// Multiplies by `c·m`.
    pub fn mul_term(&self, m: Monomial, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.times(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut r = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e > 0 {
                let mut nm = *m;
                nm.0[i] -= 1;
                r.add_term(nm, c * rat(e as i64));
            }
        }
        r
    }

    /// Substitutes polynomials (all over one common ring) for every variable.
    pub fn compose(&self, images: &[MPoly]) -> Result<MPoly, PolyError> {
        if images.len() != self.nvars() {
            return Err(PolyError::BadArity(images.len()));
        }
        let target = images[0].vars.clone();
        for im in images {
            if im.vars != target {
                return Err(PolyError::VariableMismatch {
                    left: target.names().join(","),
                    right: im.vars.names().join(","),
                });
            }
        }
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![MPoly::one(&target), p.clone()]).collect();
        let mut r = MPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c.clone());
            for (i, &e) in m.0[..self.nvars()].iter().enumerate() {
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = &pw[pw.len() - 1] * &images[i];
                    pw.push(next);
                }
                if e > 0 {
                    t = &t * &pw[e as usize];
                }
            }
            r = &r + &t;
        }
        Ok(r)
    }

    /// Substitutes `q` for variable `i`; `q` lives in the same ring.
    pub fn substitute(&self, i: usize, q: &MPoly) -> Result<MPoly, PolyError> {
        self.check_same(q)?;
        let images: Vec<MPoly> = (0..self.nvars())
            .map(|j| if j == i { q.clone() } else { MPoly::var(&self.vars, j) })
            .collect();
        self.compose(&images)
    }

    /// Sets variable `i` to the value `v`, keeping the ring.
    pub fn eval_var(&self, i: usize, v: &Rat) -> MPoly {
        let mut r = MPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            let mut nm = *m;
            nm.0[i] = 0;
            r.add_term(nm, c * num_traits::pow::pow(v.clone(), e as usize));
        }
        r
    }

    /// Value at a point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0[..self.nvars()].iter().enumerate() {
                t *= num_traits::pow::pow(point[i].clone(), e as usize);
            }
            s += t;
        }
        s
    }

    /// Reinterprets in `vars`, mapping variable `j` of `self` to index `map[j]`.
    pub fn remap(&self, vars: &VarSet, map: &[usize]) -> MPoly {
        assert_eq!(map.len(), self.nvars());
        let mut r = MPoly::zero(vars);
        for (m, c) in &self.terms {
            let mut nm = Monomial::ONE;
            for (j, &e) in m.0[..self.nvars()].iter().enumerate() {
                nm.0[map[j]] += e;
            }
            r.add_term(nm, c.clone());
        }
        r
    }

    /// Embeds into a ring whose first variables are those of `self`.
    pub fn embed(&self, vars: &VarSet) -> MPoly {
        let map: Vec<usize> = (0..self.nvars()).collect();
        self.remap(vars, &map)
    }

    /// Drops variable `i`, which must not occur.
    pub fn drop_var(&self, i: usize) -> Result<MPoly, PolyError> {
        if self.involves(i) {
            return Err(PolyError::VariableInUse(self.vars.name(i).to_string()));
        }
        let vars = self.vars.without(i)?;
        let mut r = MPoly::zero(&vars);
        for (m, c) in &self.terms {
            let mut nm = Monomial::ONE;
            let mut k = 0;
            for j in 0..self.nvars() {
                if j != i {
                    nm.0[k] = m.0[j];
                    k += 1;
                }
            }
            r.add_term(nm, c.clone());
        }
        Ok(r)
    }

    /// Divided by the leading coefficient.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut lcm_den = BigInt::one();
        for c in self.terms.values() {
            lcm_den = lcm_den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&lcm_den / c.denom());
            g = g.gcd(&n);
        }
        let mut factor = Rat::new(lcm_den, g);
        if self.leading_coeff().is_some_and(|c| c.is_negative()) {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// `true` if `self = c·o` for some nonzero rational `c`.
    pub fn is_associate(&self, o: &MPoly) -> bool {
        self.vars == o.vars && self.monic() == o.monic()
    }

    /// Part of `self` made of terms satisfying `keep`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Lowest-degree homogeneous component.
    pub fn initial_form(&self) -> MPoly {
        match self.min_degree() {
            Some(d) => self.filter_terms(|m| m.degree() == d),
            None => self.clone(),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&MPoly> for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$inner(rhs).expect("polynomials over different variables")
            }
        }
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$inner(&rhs).expect("polynomials over different variables")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

fn fmt_monomial(m: &Monomial, vars: &VarSet, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0[..vars.len()].iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", vars.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Monomial::ONE {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                fmt_monomial(m, &self.vars, f)?;
            }
        }
        Ok(())
    }
}
