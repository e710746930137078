//! Buchberger's algorithm with the sugar selection strategy and the
//! Gebauer-Moeller pair criteria.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{MPoly, MonomialOrder, UPoly};
use crate::rational::Rational;

type Mono = Vec<u32>;

#[derive(Clone)]
struct Poly {
    /// Terms sorted in strictly decreasing order.
    terms: Vec<(Mono, Rational)>,
    sugar: u32,
}

impl Poly {
    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        let inv = self.terms[0].1.recip();
        if !inv.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c *= &inv;
            }
        }
    }
}

fn deg(m: &[u32]) -> u32 {
    m.iter().sum()
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn quotient(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `p - c * m * g`, keeping the sorted-terms invariant.
fn sub_mul(p: &[(Mono, Rational)], c: &Rational, m: &[u32], g: &Poly, order: MonomialOrder) -> Vec<(Mono, Rational)> {
    let mut out = Vec::with_capacity(p.len() + g.terms.len());
    let mut i = 0;
    let mut gi = g.terms.iter().map(|(e, x)| {
        let e: Mono = e.iter().zip(m).map(|(a, b)| a + b).collect();
        (e, x * c)
    });
    let mut next = gi.next();
    while i < p.len() || next.is_some() {
        match (p.get(i), &next) {
            (Some(a), Some(b)) => match order.cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (e, x) = next.take().unwrap();
                    out.push((e, -x));
                    next = gi.next();
                }
                Ordering::Equal => {
                    let v = &a.1 - &b.1;
                    if !v.is_zero() {
                        out.push((a.0.clone(), v));
                    }
                    i += 1;
                    next = gi.next();
                }
            },
            (Some(a), None) => {
                out.push(a.clone());
                i += 1;
            }
            (None, Some(_)) => {
                let (e, x) = next.take().unwrap();
                out.push((e, -x));
                next = gi.next();
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Reducer for `m`: among the basis elements whose leading monomial divides
/// it, the one with fewest terms.
fn reducer<'a>(basis: &[&'a Poly], m: &[u32]) -> Option<&'a Poly> {
    basis.iter().filter(|g| divides(g.lm(), m)).min_by_key(|g| g.terms.len()).copied()
}

/// Reduces the leading term of `p` until it is irreducible or `p` vanishes.
fn top_reduce(p: Poly, basis: &[&Poly], order: MonomialOrder) -> Poly {
    let mut terms = p.terms;
    while let Some((lm, lc)) = terms.first() {
        let Some(g) = reducer(basis, lm) else { break };
        let q = quotient(lm, g.lm());
        let c = lc / &g.terms[0].1;
        terms = sub_mul(&terms, &c, &q, g, order);
    }
    Poly { terms, sugar: p.sugar }
}

/// Full reduction of `p` modulo the polynomials in `basis`.
fn normal_form(p: Poly, basis: &[&Poly], order: MonomialOrder) -> Poly {
    let mut rest = p.terms;
    let mut done: Vec<(Mono, Rational)> = Vec::new();
    let mut start = 0;
    // Terms before `start` are irreducible; `sub_mul` never touches them
    // since every subtracted term is smaller than the one being reduced.
    while start < rest.len() {
        let lm = &rest[start].0;
        match reducer(basis, lm) {
            Some(g) => {
                let q = quotient(lm, g.lm());
                let c = &rest[start].1 / &g.terms[0].1;
                let tail = sub_mul(&rest[start..], &c, &q, g, order);
                rest.truncate(start);
                rest.extend(tail);
            }
            None => start += 1,
        }
    }
    done.append(&mut rest);
    Poly { terms: done, sugar: p.sugar }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: u32,
}

fn to_internal(p: &MPoly, order: MonomialOrder) -> Option<Poly> {
    if p.is_zero() {
        return None;
    }
    let mut terms: Vec<(Mono, Rational)> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let sugar = p.total_degree();
    let mut q = Poly { terms, sugar };
    q.make_monic();
    Some(q)
}

/// Reduced Groebner basis of the ideal generated by `gens`, with monic elements
/// sorted by increasing leading monomial. The unit ideal yields `[1]`, the zero
/// ideal yields an empty basis.
pub fn groebner_basis(gens: &[MPoly], order: MonomialOrder) -> Vec<MPoly> {
    let Some(nvars) = gens.first().map(MPoly::nvars) else {
        return Vec::new();
    };
    let mut polys: Vec<Poly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Poly> = gens.iter().filter_map(|g| to_internal(g, order)).collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for p in input {
        let basis: Vec<&Poly> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let mut h = top_reduce(p, &basis, order);
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        insert(&mut polys, &mut active, &mut pairs, h);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| order.cmp(&pairs[a].lcm, &pairs[b].lcm))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let (f, g) = (&polys[pair.i], &polys[pair.j]);
        let mf = quotient(&pair.lcm, f.lm());
        let mg = quotient(&pair.lcm, g.lm());
        let fm = sub_mul(&[], &-Rational::one(), &mf, f, order);
        let s = sub_mul(&fm, &Rational::one(), &mg, g, order);
        let basis: Vec<&Poly> = polys.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let mut h = top_reduce(Poly { terms: s, sugar: pair.sugar }, &basis, order);
        if h.terms.is_empty() {
            continue;
        }
        h.make_monic();
        if h.lm().iter().all(|&e| e == 0) {
            return vec![MPoly::constant(nvars, Rational::one())];
        }
        insert(&mut polys, &mut active, &mut pairs, h);
    }

    let mut gb: Vec<Poly> = polys.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    // Minimal basis, then interreduce.
    let lms: Vec<Mono> = gb.iter().map(|p| p.lm().clone()).collect();
    let keep: Vec<bool> = (0..gb.len())
        .map(|i| !(0..gb.len()).any(|j| j != i && divides(&lms[j], &lms[i]) && (lms[j] != lms[i] || j < i)))
        .collect();
    gb = gb.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p).collect();
    let mut reduced = Vec::with_capacity(gb.len());
    for i in 0..gb.len() {
        let others: Vec<&Poly> = (0..gb.len()).filter(|&j| j != i).map(|j| &gb[j]).collect();
        let head = gb[i].terms[0].clone();
        let tail = Poly { terms: gb[i].terms[1..].to_vec(), sugar: 0 };
        let mut r = normal_form(tail, &others, order);
        r.terms.insert(0, head);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    reduced
        .into_iter()
        .map(|p| MPoly::from_terms(nvars, p.terms))
        .collect()
}

fn insert(polys: &mut Vec<Poly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Poly) {
    let hi = polys.len();
    let hlm = h.lm().clone();

    // Candidate pairs (g, h).
    let cands: Vec<(usize, Mono)> = (0..polys.len())
        .filter(|&g| active[g])
        .map(|g| (g, lcm(polys[g].lm(), &hlm)))
        .collect();
    // Chain criterion among the new pairs.
    let mut d: Vec<(usize, Mono)> = Vec::new();
    for (idx, (g, l)) in cands.iter().enumerate() {
        let glm = polys[*g].lm();
        let redundant = !coprime(glm, &hlm)
            && (cands.iter().enumerate().any(|(k, (_, l2))| k > idx && divides(l2, l)))
            || d.iter().any(|(_, l2)| divides(l2, l));
        if coprime(glm, &hlm) || !redundant {
            d.push((*g, l.clone()));
        }
    }
    // Product criterion.
    let e: Vec<(usize, Mono)> = d.into_iter().filter(|(g, _)| !coprime(polys[*g].lm(), &hlm)).collect();
    // Drop old pairs made redundant by h.
    pairs.retain(|p| {
        !(divides(&hlm, &p.lcm)
            && lcm(polys[p.i].lm(), &hlm) != p.lcm
            && lcm(polys[p.j].lm(), &hlm) != p.lcm)
    });
    for (g, l) in e {
        let sg = polys[g].sugar + deg(&l) - deg(polys[g].lm());
        let sh = h.sugar + deg(&l) - deg(&hlm);
        pairs.push(Pair { i: g, j: hi, lcm: l, sugar: sg.max(sh) });
    }
    for g in 0..polys.len() {
        if active[g] && divides(&hlm, polys[g].lm()) {
            active[g] = false;
        }
    }
    polys.push(h);
    active.push(true);
}

/// Elements of a Groebner basis for an elimination order that involve only the
/// given variables.
pub fn eliminated(gb: &[MPoly], keep: &[usize]) -> Vec<MPoly> {
    gb.iter().filter(|p| p.only_in(keep)).cloned().collect()
}

pub fn is_unit_ideal(gb: &[MPoly]) -> bool {
    gb.len() == 1 && gb[0].is_nonzero_constant()
}

/// Normal form of `p` with respect to a Groebner basis.
pub fn reduce(p: &MPoly, gb: &[MPoly], order: MonomialOrder) -> MPoly {
    let Some(q) = to_internal(p, order) else {
        return p.clone();
    };
    let lc = p.leading(order).unwrap().1.clone();
    let basis: Vec<Poly> = gb.iter().filter_map(|g| to_internal(g, order)).collect();
    let refs: Vec<&Poly> = basis.iter().collect();
    let r = normal_form(q, &refs, order);
    MPoly::from_terms(p.nvars(), r.terms).scale(&lc)
}

/// Monic generator of `I ∩ Q[x_var]` for a zero-dimensional ideal `I` with
/// Groebner basis `gb`, found as the first linear dependency among the normal
/// forms of `1, x, x^2, ...`. `None` when the ideal is not zero-dimensional
/// (some variable has no pure power among the leading monomials).
pub fn minimal_polynomial(gb: &[MPoly], order: MonomialOrder, var: usize) -> Option<UPoly> {
    let nvars = gb.first()?.nvars();
    if is_unit_ideal(gb) {
        return Some(UPoly::one());
    }
    let lms: Vec<&Vec<u32>> = gb.iter().filter_map(|g| g.leading(order).map(|l| l.0)).collect();
    let zero_dim = (0..nvars).all(|i| lms.iter().any(|m| m[i] > 0 && (0..nvars).all(|j| j == i || m[j] == 0)));
    if !zero_dim {
        return None;
    }
    let x = MPoly::var(nvars, var);
    // Echelon rows, largest pivot first: (vector keyed by monomial,
    // combination of powers of x giving it).
    let mut rows: Vec<(BTreeMap<Mono, Rational>, Vec<Rational>)> = Vec::new();
    let mut power = reduce(&MPoly::constant(nvars, Rational::one()), gb, order);
    for k in 0.. {
        let mut vec: BTreeMap<Mono, Rational> = power.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        let mut combo = vec![Rational::zero(); k + 1];
        combo[k] = Rational::one();
        for (row, rc) in &rows {
            let (pivot, pc) = row.iter().next_back().unwrap();
            let Some(c) = vec.get(pivot) else { continue };
            let f = c / pc;
            for (e, v) in row {
                let slot = vec.entry(e.clone()).or_insert_with(Rational::zero);
                *slot -= &f * v;
                if slot.is_zero() {
                    vec.remove(e);
                }
            }
            for (i, v) in rc.iter().enumerate() {
                combo[i] -= &f * v;
            }
        }
        if vec.is_empty() {
            return Some(UPoly::new(combo).monic());
        }
        rows.push((vec, combo));
        rows.sort_by(|a, b| b.0.keys().next_back().cmp(&a.0.keys().next_back()));
        power = reduce(&power.mul(&x), gb, order);
    }
    unreachable!()
}
