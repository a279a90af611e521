//! Property checks shared by the proptest suite and the acceptance runner.
#![allow(dead_code)]

use germinv::exactpoly::{divided_difference, gcd_poly, rat, resultant, MPoly, Monomial, VarSet};
use germinv::localalg::{colength_by_stabilization, colength_local, ColengthResult, IdealGens};

pub type Terms = Vec<(i64, Vec<u32>)>;

pub fn vars(names: &[&str]) -> VarSet {
    VarSet::new(names.iter().copied()).unwrap()
}

pub fn poly(vs: &VarSet, terms: &Terms) -> MPoly {
    MPoly::from_terms(
        vs,
        terms.iter().map(|(c, e)| {
            let mut m = Monomial::ONE;
            for (i, &k) in e.iter().enumerate().take(vs.len()) {
                m.0[i] = k;
            }
            (m, rat(*c))
        }),
    )
}

pub fn ring_axioms(p: &MPoly, q: &MPoly, r: &MPoly) -> Result<(), String> {
    let zero = MPoly::zero(p.vars());
    let one = MPoly::one(p.vars());
    let p2 = p.clone();
    let checks = [
        ("additive associativity", &(p + q) + r == p + &(q + r)),
        ("additive commutativity", p + q == q + p),
        ("multiplicative associativity", &(p * q) * r == p * &(q * r)),
        ("multiplicative commutativity", p * q == q * p),
        ("distributivity", p * &(q + r) == &(p * q) + &(p * r)),
        ("additive identity", p + &zero == *p),
        ("multiplicative identity", p * &one == *p),
        ("additive inverse", (p - &p2).is_zero() && (p + &(-p)).is_zero()),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(format!("{name} fails for p={p}, q={q}, r={r}")),
        None => Ok(()),
    }
}

/// `(y − y')·Δp = p(x,y) − p(x,y')` in `ℚ[x,y,y']`.
pub fn divided_difference_identity(p: &MPoly) -> Result<(), String> {
    let dd = divided_difference(p, "y", "y_").map_err(|e| e.to_string())?;
    let vs = dd.vars().clone();
    let at_y = p.remap(&vs, &[0, 1]);
    let at_y2 = p.remap(&vs, &[0, 2]);
    let diff = &MPoly::var(&vs, 1) - &MPoly::var(&vs, 2);
    if &diff * &dd == &at_y - &at_y2 {
        Ok(())
    } else {
        Err(format!("divided difference identity fails for {p}"))
    }
}

/// `Res_y(p, q) = 0` exactly when `p` and `q` share a factor involving `y`.
pub fn resultant_gcd_duality(p: &MPoly, q: &MPoly) -> Result<(), String> {
    if p.degree_in(1).unwrap_or(0) == 0 || q.degree_in(1).unwrap_or(0) == 0 {
        return Ok(());
    }
    let r = resultant(p, q, "y").map_err(|e| e.to_string())?;
    let g = gcd_poly(p, q);
    let shared = g.degree_in(1).unwrap_or(0) > 0;
    if r.is_zero() == shared {
        Ok(())
    } else {
        Err(format!("Res_y = {r} but gcd = {g} for p={p}, q={q}"))
    }
}

/// Count of monomials outside a monomial ideal, by enumeration of the box of pure powers.
pub fn staircase_count(gens: &[Vec<u32>], nv: usize) -> u64 {
    let bound: Vec<u32> = (0..nv)
        .map(|i| {
            gens.iter()
                .filter(|g| g.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
                .map(|g| g[i])
                .min()
                .expect("pure power present")
        })
        .collect();
    let mut count = 0;
    let mut e = vec![0u32; nv];
    loop {
        if !gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == nv {
                return count;
            }
            e[i] += 1;
            if e[i] < bound[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// Colength of a monomial ideal containing pure powers, three ways.
pub fn staircase_check(gens: &[Vec<u32>], nv: usize) -> Result<u64, String> {
    let names = ["x", "y", "z"];
    let vs = vars(&names[..nv]);
    let polys: Vec<MPoly> = gens.iter().map(|g| poly(&vs, &vec![(1, g.clone())])).collect();
    let ideal = IdealGens::new(polys).map_err(|e| e.to_string())?;
    let want = staircase_count(gens, nv);
    let local = colength_local(&ideal, 64).map_err(|e| e.to_string())?;
    if local != ColengthResult::Finite(want) {
        return Err(format!("{gens:?}: staircase {want}, local basis {local}"));
    }
    let global = colength_by_stabilization(&ideal, 64);
    if global != ColengthResult::Finite(want) {
        return Err(format!("{gens:?}: staircase {want}, truncated global bases {global}"));
    }
    Ok(want)
}

/// Random monomial ideal data: pure powers for every variable plus `extra` mixed generators.
pub fn monomial_ideal(rng: &mut impl rand::Rng, nv: usize, max_exp: u32, extra: usize) -> Vec<Vec<u32>> {
    let mut gens: Vec<Vec<u32>> = (0..nv)
        .map(|i| {
            let mut g = vec![0; nv];
            g[i] = rng.gen_range(1..=max_exp);
            g
        })
        .collect();
    for _ in 0..extra {
        gens.push((0..nv).map(|_| rng.gen_range(0..=max_exp)).collect());
    }
    gens
}

pub fn random_terms(rng: &mut impl rand::Rng, nv: usize, nterms: usize, max_exp: u32) -> Terms {
    (0..nterms)
        .map(|_| (rng.gen_range(-9..=9), (0..nv).map(|_| rng.gen_range(0..=max_exp)).collect()))
        .collect()
}
