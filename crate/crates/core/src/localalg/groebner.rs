//! Buchberger's algorithm with Gebauer–Möller pair pruning.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::exactpoly::{MPoly, Monomial, Rat, VarSet};

/// Monomial order used by the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrder {
    /// Graded lexicographic, a global well-order.
    GrLex,
    /// Lowest total degree first, ties broken lexicographically.
    /// Only meaningful together with a truncation degree.
    LocalDegLex,
}

impl TermOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::GrLex => a.cmp(b),
            TermOrder::LocalDegLex => b.degree().cmp(&a.degree()).then_with(|| a.0.cmp(&b.0)),
        }
    }
}

/// Terms sorted ascending, leading term last, always monic when nonzero.
#[derive(Clone, Debug)]
pub(crate) struct GPoly {
    terms: Vec<(Monomial, Rat)>,
}

impl GPoly {
    fn from_mpoly(p: &MPoly, ord: TermOrder, trunc: Option<u32>) -> GPoly {
        let mut terms: Vec<(Monomial, Rat)> = p
            .terms()
            .filter(|(m, _)| trunc.is_none_or(|n| m.degree() < n))
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        terms.sort_by(|a, b| ord.cmp(&a.0, &b.0));
        let mut g = GPoly { terms };
        g.make_monic();
        g
    }

    fn to_mpoly(&self, vars: &VarSet) -> MPoly {
        MPoly::from_terms(vars, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> Monomial {
        self.terms.last().expect("nonzero").0
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
    }
}

/// `f - c·t·g`, all lists ascending.
fn sub_mul(
    f: &[(Monomial, Rat)],
    c: &Rat,
    t: Monomial,
    g: &[(Monomial, Rat)],
    ord: TermOrder,
    trunc: Option<u32>,
) -> Vec<(Monomial, Rat)> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let shifted = g
        .iter()
        .map(|(m, k)| (t.times(*m), k))
        .filter(|(m, _)| trunc.is_none_or(|n| m.degree() < n));
    let mut shifted = shifted.peekable();
    while i < f.len() || shifted.peek().is_some() {
        match (f.get(i), shifted.peek()) {
            (Some(a), Some(b)) => match ord.cmp(&a.0, &b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.0, -(c * b.1)));
                    shifted.next();
                }
                Ordering::Equal => {
                    let v = &a.1 - c * b.1;
                    if !v.is_zero() {
                        out.push((a.0, v));
                    }
                    i += 1;
                    shifted.next();
                }
            },
            (Some(a), None) => {
                out.push(a.clone());
                i += 1;
            }
            (None, Some(b)) => {
                out.push((b.0, -(c * b.1)));
                shifted.next();
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Top-reduces `f` until its leading monomial is not divisible by any basis element.
fn reduce(f: GPoly, basis: &[&GPoly], ord: TermOrder, trunc: Option<u32>) -> GPoly {
    let mut rest = f.terms;
    while let Some((m, c)) = rest.last().cloned() {
        let Some(g) = basis.iter().find(|g| g.lm().divides(&m)) else {
            break;
        };
        let t = m.quotient(g.lm()).expect("divides");
        rest = sub_mul(&rest, &c, t, &g.terms, ord, trunc);
    }
    let mut g = GPoly { terms: rest };
    g.make_monic();
    g
}

fn spoly(f: &GPoly, g: &GPoly, ord: TermOrder, trunc: Option<u32>) -> GPoly {
    let l = f.lm().lcm(g.lm());
    let tf = l.quotient(f.lm()).expect("lcm");
    let tg = l.quotient(g.lm()).expect("lcm");
    let a = sub_mul(&[], &-Rat::one(), tf, &f.terms, ord, trunc);
    let s = sub_mul(&a, &Rat::one(), tg, &g.terms, ord, trunc);
    GPoly { terms: s }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Buchberger with the Gebauer–Möller update; returns a minimal basis.
fn buchberger(gens: &[MPoly], ord: TermOrder, trunc: Option<u32>) -> Vec<GPoly> {
    let mut polys: Vec<GPoly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut pending: Vec<GPoly> = gens
        .iter()
        .map(|p| GPoly::from_mpoly(p, ord, trunc))
        .filter(|g| !g.is_zero())
        .collect();
    pending.sort_by(|a, b| ord.cmp(&b.lm(), &a.lm()));

    fn insert(h: GPoly, polys: &mut Vec<GPoly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>) {
        let hi = polys.len();
        let hm = h.lm();
        polys.push(h);
        active.push(true);
        let cands: Vec<usize> = (0..hi).filter(|&g| active[g]).collect();
        let mut c: Vec<(usize, Monomial)> = cands.iter().map(|&g| (g, polys[g].lm().lcm(hm))).collect();
        let mut d: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g1, l1)) = c.pop() {
            let coprime = polys[g1].lm().is_coprime(&hm);
            let dominated = c.iter().chain(d.iter()).any(|(_, l2)| l2.divides(&l1));
            if coprime || !dominated {
                d.push((g1, l1));
            }
        }
        let e: Vec<(usize, Monomial)> = d
            .into_iter()
            .filter(|(g, _)| !polys[*g].lm().is_coprime(&hm))
            .collect();
        pairs.retain(|p| {
            !(hm.divides(&p.lcm)
                && polys[p.i].lm().lcm(hm) != p.lcm
                && polys[p.j].lm().lcm(hm) != p.lcm)
        });
        let mut seen: Vec<Monomial> = Vec::new();
        for (g, l) in e {
            if seen.contains(&l) {
                continue;
            }
            seen.push(l);
            pairs.push(Pair { i: g, j: hi, lcm: l });
        }
        for g in 0..hi {
            if active[g] && hm.divides(&polys[g].lm()) {
                active[g] = false;
            }
        }
    }

    for g in pending.drain(..) {
        let basis: Vec<&GPoly> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let h = reduce(g, &basis, ord, trunc);
        if !h.is_zero() {
            insert(h, &mut polys, &mut active, &mut pairs);
        }
    }

    while !pairs.is_empty() {
        let k = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .lcm
                    .degree()
                    .cmp(&pairs[b].lcm.degree())
                    .then_with(|| ord.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .expect("nonempty");
        let p = pairs.swap_remove(k);
        let s = spoly(&polys[p.i], &polys[p.j], ord, trunc);
        if s.is_zero() {
            continue;
        }
        let basis: Vec<&GPoly> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let h = reduce(s, &basis, ord, trunc);
        if !h.is_zero() {
            insert(h, &mut polys, &mut active, &mut pairs);
        }
    }

    polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect()
}

/// Leading monomials of a standard basis of `⟨gens⟩ + 𝔪^n` under the local degree order.
pub(crate) fn local_leading_monomials(gens: &[MPoly], n: u32) -> Vec<Monomial> {
    buchberger(gens, TermOrder::LocalDegLex, Some(n))
        .iter()
        .map(GPoly::lm)
        .collect()
}

/// Reduced basis in the given global order (monic, interreduced).
pub(crate) fn reduced_basis(gens: &[MPoly], vars: &VarSet) -> Vec<MPoly> {
    let ord = TermOrder::GrLex;
    let minimal = buchberger(gens, ord, None);
    let mut out = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<GPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let lead = g.terms.last().cloned().expect("nonzero");
        let tail = GPoly {
            terms: g.terms[..g.terms.len() - 1].to_vec(),
        };
        let mut r = reduce_tail(tail, &others, ord);
        r.terms.push(lead);
        out.push(r.to_mpoly(vars));
    }
    out.sort_by(|a, b| {
        a.leading_term()
            .map(|t| *t.0)
            .cmp(&b.leading_term().map(|t| *t.0))
    });
    out
}

fn reduce_tail(f: GPoly, basis: &[GPoly], ord: TermOrder) -> GPoly {
    let mut rest = f.terms;
    let mut done: Vec<(Monomial, Rat)> = Vec::new();
    while let Some((m, c)) = rest.last().cloned() {
        match basis.iter().find(|g| g.lm().divides(&m)) {
            Some(g) => {
                let t = m.quotient(g.lm()).expect("divides");
                rest = sub_mul(&rest, &c, t, &g.terms, ord, None);
            }
            None => {
                done.push((m, c));
                rest.pop();
            }
        }
    }
    done.reverse();
    GPoly { terms: done }
}

/// Full normal form of `p` modulo a graded lexicographic Gröbner basis.
pub(crate) fn normal_form_grlex(p: &MPoly, basis: &[MPoly]) -> MPoly {
    let ord = TermOrder::GrLex;
    let gb: Vec<GPoly> = basis.iter().map(|g| GPoly::from_mpoly(g, ord, None)).collect();
    let f = GPoly::from_mpoly(p, ord, None);
    let scale = p.leading_coeff().cloned().unwrap_or_else(Rat::one);
    let r = reduce_tail(f, &gb, ord);
    r.to_mpoly(p.vars()).scale(&scale)
}
