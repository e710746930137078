//! Independent verification of the singular locus by elimination, plus a
//! node test for singular points.
//!
//! The plane curve `f(x, y) = 0` over `Q(t)` is closed up in `P^2` and its
//! singular points are located stratum by stratum (open torus, the three open
//! coordinate lines, the three coordinate vertices). On each open stratum the
//! nonvanishing coordinates are inverted with an extra variable `w`. When the
//! resulting ideal is zero-dimensional the polynomial in `t` is the minimal
//! polynomial of `t` in the quotient ring (grevlex basis, then linear algebra);
//! otherwise `t` is isolated with an elimination order.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::AffineEquation;
use crate::poly::groebner::{groebner_basis, is_unit_ideal, minimal_polynomial};
use crate::poly::{MPoly, MonomialOrder, UPoly};
use crate::rational::Rational;

pub const MAX_DEGREE: u32 = 8;

// Variable layout: w, u, v, t.
const NV: usize = 4;
const W: usize = 0;
const U: usize = 1;
const V: usize = 2;
const T: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Chart {
    /// z = 1, (u, v) = (x, y)
    Z,
    /// y = 1, (u, v) = (x, z)
    Y,
    /// x = 1, (u, v) = (y, z)
    X,
}

fn chart_poly(f: &AffineEquation, chart: Chart) -> MPoly {
    let d = f.total_degree();
    MPoly::from_terms(
        NV,
        f.terms.iter().map(|term| {
            let m = term.mono;
            let z = d - m.x - m.y;
            let (u, v) = match chart {
                Chart::Z => (m.x, m.y),
                Chart::Y => (m.x, z),
                Chart::X => (m.y, z),
            };
            (vec![0, u, v, m.t], term.coeff.clone())
        }),
    )
}

fn var(i: usize) -> MPoly {
    MPoly::var(NV, i)
}

fn one() -> MPoly {
    MPoly::constant(NV, Rational::one())
}

/// `w * prod(vars) - 1`
fn inverter(vars: &[usize]) -> MPoly {
    vars.iter().fold(var(W), |acc, &i| acc.mul(&var(i))).sub(&one())
}

struct Stratum {
    chart: Chart,
    /// Coordinates set to zero.
    zero: Vec<usize>,
    /// Coordinates required nonzero.
    nonzero: Vec<usize>,
}

fn open_strata() -> Vec<Stratum> {
    vec![
        Stratum { chart: Chart::Z, zero: vec![], nonzero: vec![U, V] },
        Stratum { chart: Chart::Z, zero: vec![V], nonzero: vec![U] },
        Stratum { chart: Chart::Z, zero: vec![U], nonzero: vec![V] },
        Stratum { chart: Chart::Y, zero: vec![V], nonzero: vec![U] },
    ]
}

fn check_degree(f: &AffineEquation) -> Result<()> {
    let d = f.total_degree();
    if d > MAX_DEGREE {
        return Err(Error::DegreeOverflow { degree: d, limit: MAX_DEGREE });
    }
    if f.terms.is_empty() {
        return Err(Error::Rejected("empty equation".into()));
    }
    Ok(())
}

fn at_origin(p: &MPoly) -> UPoly {
    p.substitute(U, &Rational::zero())
        .substitute(V, &Rational::zero())
        .to_univariate(T)
        .expect("only t remains")
}

/// Polynomial in `t` whose roots contain every `t` over which the fiber is
/// singular; computed by elimination. Monic and squarefree.
pub fn discriminant_oracle(f: &AffineEquation) -> Result<UPoly> {
    check_degree(f)?;
    let mut acc = UPoly::one();
    for s in open_strata() {
        let g = chart_poly(f, s.chart);
        let mut gens = vec![g.clone(), g.derivative(U), g.derivative(V), inverter(&s.nonzero)];
        gens.extend(s.zero.iter().map(|&i| var(i)));
        let gb = groebner_basis(&gens, MonomialOrder::GrevLex);
        if is_unit_ideal(&gb) {
            continue;
        }
        let p = match minimal_polynomial(&gb, MonomialOrder::GrevLex, T) {
            Some(p) => p,
            // Positive-dimensional: eliminate directly.
            None => groebner_basis(&gens, MonomialOrder::Block(3))
                .iter()
                .find(|p| p.only_in(&[T]))
                .and_then(|p| p.to_univariate(T))
                .ok_or(Error::GenericallySingular)?,
        };
        acc = acc.lcm(&p);
    }
    for chart in [Chart::Z, Chart::Y, Chart::X] {
        let g = chart_poly(f, chart);
        let parts = [at_origin(&g), at_origin(&g.derivative(U)), at_origin(&g.derivative(V))];
        if parts.iter().all(UPoly::is_zero) {
            // Singular at the vertex for every t: a base point of the pencil.
            continue;
        }
        let gcd = parts.iter().fold(UPoly::zero(), |acc, p| acc.gcd(p));
        if !gcd.is_constant() {
            acc = acc.lcm(&gcd);
        }
    }
    Ok(acc.squarefree())
}

/// Strips factors of `t` from `p`.
pub fn away_from_zero(p: &UPoly) -> UPoly {
    match p.low_order() {
        Some(k) if k > 0 => UPoly::new(p.coeffs()[k..].to_vec()),
        _ => p.clone(),
    }
}

/// True when every singular point of every fiber over `t != 0` is a node
/// (nondegenerate Hessian, Milnor number 1). Base points of the pencil that
/// are singular for all `t` are ignored.
pub fn away_singularities_are_nodes(f: &AffineEquation) -> Result<bool> {
    check_degree(f)?;
    let hessian = |g: &MPoly| -> MPoly {
        let guu = g.derivative(U).derivative(U);
        let gvv = g.derivative(V).derivative(V);
        let guv = g.derivative(U).derivative(V);
        guu.mul(&gvv).sub(&guv.mul(&guv))
    };
    for s in open_strata() {
        let g = chart_poly(f, s.chart);
        let mut inv = s.nonzero.clone();
        inv.push(T);
        let mut gens = vec![g.clone(), g.derivative(U), g.derivative(V), hessian(&g), inverter(&inv)];
        gens.extend(s.zero.iter().map(|&i| var(i)));
        let gb = groebner_basis(&gens, MonomialOrder::GrevLex);
        if !is_unit_ideal(&gb) {
            return Ok(false);
        }
    }
    for chart in [Chart::Z, Chart::Y, Chart::X] {
        let g = chart_poly(f, chart);
        let parts = [at_origin(&g), at_origin(&g.derivative(U)), at_origin(&g.derivative(V))];
        if parts.iter().all(UPoly::is_zero) {
            continue;
        }
        let sing = away_from_zero(&parts.iter().fold(UPoly::zero(), |acc, p| acc.gcd(p)));
        if sing.is_constant() {
            continue;
        }
        if !sing.gcd(&at_origin(&hessian(&g))).is_constant() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Discriminant of `sum_i c_i(t) x^i` with respect to `x`, via the Sylvester
/// determinant of the polynomial and its derivative. Sign and scaling follow
/// `(-1)^{n(n-1)/2} Res(p, p') / lc(p)`.
pub fn discriminant_in_x(coeffs: &[UPoly]) -> UPoly {
    let mut c: Vec<UPoly> = coeffs.to_vec();
    while c.last().is_some_and(UPoly::is_zero) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n < 1 {
        return UPoly::zero();
    }
    let dc: Vec<UPoly> = (1..=n).map(|i| c[i].scale(&Rational::from_integer(i.into()))).collect();
    let res = resultant(&c, &dc);
    let lc = c[n].clone();
    let (q, r) = res.div_rem(&lc);
    assert!(r.is_zero(), "leading coefficient must divide the resultant");
    if (n * (n - 1) / 2) % 2 == 1 {
        -&q
    } else {
        q
    }
}

/// Resultant of two polynomials in `x` with coefficients in `Q[t]`
/// (ascending in `x`), by fraction-free Bareiss elimination of the Sylvester matrix.
pub fn resultant(p: &[UPoly], q: &[UPoly]) -> UPoly {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    if size == 0 {
        return UPoly::one();
    }
    let mut mat = vec![vec![UPoly::zero(); size]; size];
    for i in 0..n {
        for (j, a) in p.iter().rev().enumerate() {
            mat[i][i + j] = a.clone();
        }
    }
    for i in 0..m {
        for (j, b) in q.iter().rev().enumerate() {
            mat[n + i][i + j] = b.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<UPoly>>) -> UPoly {
    let n = m.len();
    let mut sign = false;
    let mut prev = UPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return UPoly::zero();
            };
            m.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                m[i][j] = q;
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -&det
    } else {
        det
    }
}
