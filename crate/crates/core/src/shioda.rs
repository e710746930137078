//! Lefschetz and Picard numbers of Delsarte surfaces by enumerating
//! characters in `(Q/Z)^4`.
//!
//! For the family `y^2 = x^p + t^{2ap} + s^{2ap}` the characters are
//! `(1/2, i/p, j/2ap, -(ap + 2ai + j)/2ap)`; they are handled with plain
//! integer numerators over the common denominator `2ap`. A general exponent
//! matrix goes through exact group closure instead.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{frac_part, int, lcm_all, QmodZ, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub p: u64,
    pub a: u64,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FamilyParams {
    pub fn new(p: u64, a: u64) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidFamily { p, a, reason: reason.into() };
        if !is_prime(p) || p < 3 {
            return Err(bad("p must be an odd prime"));
        }
        if a == 0 {
            return Err(bad("a must be positive"));
        }
        if p.checked_mul(a).and_then(|x| x.checked_mul(2)).is_none_or(|n| n > 1 << 24) {
            return Err(bad("2ap too large"));
        }
        Ok(FamilyParams { p, a })
    }

    /// The common denominator `2ap`.
    pub fn modulus(&self) -> u64 {
        2 * self.a * self.p
    }

    /// Exponent matrix with columns `(x, y, t, s)` after moving to the chart
    /// used for the character computation.
    pub fn exponent_matrix(&self) -> ExactMatrix {
        let n = self.modulus() as i64;
        let p = self.p as i64;
        ExactMatrix::from_int_rows(&[[0, 2, 0, n - 2], [p, 0, 0, n - p], [0, 0, n, 0], [0, 0, 0, n]])
    }
}

/// An element of `(Q/Z)^4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CharacterVector(pub [QmodZ; 4]);

impl CharacterVector {
    pub fn from_numerators(num: [i64; 4], den: i64) -> Self {
        CharacterVector(num.map(|x| QmodZ::new(x, den)))
    }

    pub fn has_zero_entry(&self) -> bool {
        self.0.iter().any(QmodZ::is_zero)
    }

    /// `lcm` of the entry orders.
    pub fn modulus(&self) -> BigInt {
        let orders: Vec<BigInt> = self.0.iter().map(QmodZ::ord_plus).collect();
        lcm_all(&orders)
    }

    pub fn scale(&self, t: &BigInt) -> Self {
        CharacterVector(std::array::from_fn(|k| self.0[k].scale(t)))
    }

    pub fn fr_sum(&self) -> Rational {
        self.0.iter().map(|q| q.value().clone()).sum()
    }
}

/// `v_i = (e_i - e_4) A^{-1}` for `i = 1, 2, 3`, reduced mod `Z^4`.
pub fn shioda_vectors(a: &ExactMatrix) -> Result<[CharacterVector; 3]> {
    let inv = a.invert()?;
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let mut e = vec![int(0); 4];
        e[i] = int(1);
        e[3] = int(-1);
        let v = inv.vec_mul(&e)?;
        out.push(CharacterVector(std::array::from_fn(|k| frac_part(&v[k]))));
    }
    Ok([out[0].clone(), out[1].clone(), out[2].clone()])
}

/// The subgroup generated by `gens`, as a sorted list.
pub fn enumerate_l(gens: &[CharacterVector]) -> Vec<CharacterVector> {
    let zero = CharacterVector(std::array::from_fn(|_| QmodZ::zero()));
    let mut seen: HashSet<CharacterVector> = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = CharacterVector(std::array::from_fn(|k| &v.0[k] + &g.0[k]));
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

pub fn enumerate_l0(gens: &[CharacterVector]) -> Vec<CharacterVector> {
    enumerate_l(gens).into_iter().filter(|v| !v.has_zero_entry()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaVerdict {
    pub vector: CharacterVector,
    pub in_lambda: bool,
    pub witness: Option<BigInt>,
    pub modulus: BigInt,
}

/// Looks for a unit `t` modulo `N` with `sum fr(t alpha_k) != 2`, stopping at
/// the first one.
pub fn lambda_membership(v: &CharacterVector) -> LambdaVerdict {
    let n = v.modulus();
    let two = int(2);
    let mut t = BigInt::from(1);
    while t <= n {
        if t.gcd(&n) == BigInt::from(1) && v.scale(&t).fr_sum() != two {
            return LambdaVerdict { vector: v.clone(), in_lambda: true, witness: Some(t), modulus: n };
        }
        t += 1;
    }
    LambdaVerdict { vector: v.clone(), in_lambda: false, witness: None, modulus: n }
}

/// The unoptimized definition: evaluates every unit before deciding.
pub fn lambda_membership_exhaustive(v: &CharacterVector) -> bool {
    let n = v.modulus();
    let two = int(2);
    let units = num_iter(&n).filter(|t| t.gcd(&n) == BigInt::from(1));
    let sums: Vec<Rational> = units.map(|t| v.scale(&t).fr_sum()).collect();
    sums.iter().any(|s| s != &two)
}

fn num_iter(n: &BigInt) -> impl Iterator<Item = BigInt> {
    let n = n.clone();
    let mut t = BigInt::zero();
    std::iter::from_fn(move || {
        t += 1;
        (t <= n).then(|| t.clone())
    })
}

/// `#L_0` and `#Lambda` for an arbitrary invertible exponent matrix, via
/// group closure and the early-exit unit loop.
pub fn lefschetz_counts(a: &ExactMatrix) -> Result<(u64, u64)> {
    let l0 = enumerate_l0(&shioda_vectors(a)?);
    let lambda = l0.par_iter().filter(|v| lambda_membership(v).in_lambda).count() as u64;
    Ok((l0.len() as u64, lambda))
}

pub fn lefschetz_number(a: &ExactMatrix) -> Result<u64> {
    Ok(lefschetz_counts(a)?.1)
}

/// Same count with every unit evaluated before deciding.
pub fn lefschetz_number_exhaustive(a: &ExactMatrix) -> Result<u64> {
    let l0 = enumerate_l0(&shioda_vectors(a)?);
    Ok(l0.par_iter().filter(|v| lambda_membership_exhaustive(v)).count() as u64)
}

/// Picard number `h2 - lambda` for a user-supplied `h2`.
pub fn picard_general(a: &ExactMatrix, h2: u64) -> Result<u64> {
    let lambda = lefschetz_number(a)?;
    h2.checked_sub(lambda)
        .ok_or_else(|| Error::Rejected(format!("h2 = {h2} is smaller than lambda = {lambda}")))
}

/// Integer numerators over `2ap` of the family vector indexed by `(i, j)`, or
/// `None` when the fourth entry vanishes.
fn family_vector(params: &FamilyParams, i: u64, j: u64) -> Option<[u64; 4]> {
    let n = params.modulus();
    let (p, a) = (params.p, params.a);
    let s = (a * p + 2 * a * i + j) % n;
    (s != 0).then(|| [a * p, 2 * a * i, j, n - s])
}

/// Fast membership test on numerators over `n`: a unit `t` modulo the exact
/// order with `sum (t a_k mod n) != 2n`.
fn in_lambda_fast(num: &[u64; 4], n: u64) -> Option<u64> {
    let g = num.iter().fold(n, |acc, &x| acc.gcd(&x));
    let order = n / g;
    (1..=order).filter(|t| t.gcd(&order) == 1).find(|&t| {
        let s: u64 = num.iter().map(|&x| (t * x) % n).sum();
        s != 2 * n
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCounts {
    pub l0_count: u64,
    pub lambda: u64,
    pub rho_tilde: u64,
    pub rho: u64,
}

/// Full enumeration of `L_0` and `Lambda` for the family.
pub fn family_counts(params: &FamilyParams) -> FamilyCounts {
    let n = params.modulus();
    let (l0, lambda) = (1..params.p)
        .into_par_iter()
        .map(|i| {
            let mut l0 = 0u64;
            let mut lam = 0u64;
            for j in 1..n {
                if let Some(v) = family_vector(params, i, j) {
                    l0 += 1;
                    if in_lambda_fast(&v, n).is_some() {
                        lam += 1;
                    }
                }
            }
            (l0, lam)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    let rho_tilde = 2 + l0 - lambda;
    FamilyCounts { l0_count: l0, lambda, rho_tilde, rho: rho_tilde - 1 }
}

pub fn picard_family(params: &FamilyParams) -> u64 {
    family_counts(params).rho_tilde
}

/// The family's `L_0` as exact character vectors, in `(i, j)` order.
pub fn family_l0(params: &FamilyParams) -> Vec<CharacterVector> {
    let n = params.modulus();
    (1..params.p)
        .flat_map(|i| (1..n).filter_map(move |j| family_vector(params, i, j)))
        .map(|v| CharacterVector::from_numerators(v.map(|x| x as i64), n as i64))
        .collect()
}

/// Values `fr(j/2ap)` over the representatives with `i = 1` that fall outside `Lambda`.
pub fn excluded_fractions(params: &FamilyParams) -> BTreeSet<Rational> {
    let n = params.modulus();
    (1..n)
        .into_par_iter()
        .filter_map(|j| {
            let v = family_vector(params, 1, j)?;
            in_lambda_fast(&v, n).is_none().then(|| Rational::new(j.into(), n.into()))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// The six fractions `(p-1)/2p, 1/2, (p+2)/2p, (2p-4)/2p, (2p-2)/2p, (2p-1)/2p`.
pub fn lemma_fractions(p: u64) -> BTreeSet<Rational> {
    let d = BigInt::from(2 * p);
    [p - 1, p, p + 2, 2 * p - 4, 2 * p - 2, 2 * p - 1]
        .into_iter()
        .map(|x| Rational::new(x.into(), d.clone()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeCounts {
    pub h20: u64,
    pub h11prim: u64,
    pub h02: u64,
}

impl HodgeCounts {
    pub fn total(&self) -> u64 {
        self.h20 + self.h11prim + self.h02
    }
}

/// Counts `(1/2, i/p, j/2ap, k/2ap)` with entries in `(0,1)` by coordinate sum.
pub fn gs_hodge_counts(params: &FamilyParams) -> HodgeCounts {
    let n = params.modulus();
    let (p, a) = (params.p, params.a);
    let counts = (1..p)
        .into_par_iter()
        .map(|i| {
            let mut c = [0u64; 4];
            for j in 1..n {
                for k in 1..n {
                    let s = a * p + 2 * a * i + j + k;
                    if s % n == 0 {
                        c[(s / n) as usize] += 1;
                    }
                }
            }
            c
        })
        .reduce(|| [0; 4], |x, y| std::array::from_fn(|q| x[q] + y[q]));
    HodgeCounts { h20: counts[1], h11prim: counts[2], h02: counts[3] }
}

/// `sum fr(t alpha_k)` for the family vector `(i, j)`, as an exact rational.
pub fn family_fr_sum(params: &FamilyParams, i: u64, j: u64, t: u64) -> Option<Rational> {
    let n = params.modulus();
    let v = family_vector(params, i, j)?;
    let cv = CharacterVector::from_numerators(v.map(|x| x as i64), n as i64);
    Some(cv.scale(&BigInt::from(t)).fr_sum())
}

pub fn to_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}
