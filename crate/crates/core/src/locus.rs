//! Singular fibers of a minimal Delsarte fibration and the structural
//! classification built on the kernel vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{AffineEquation, DelsarteSurface, Monomial3};
use crate::newton;
use crate::poly::UPoly;
use crate::rational::{format_rational, pow_signed, Rational};
use crate::reduction::{isolate_row, MinimalFibration};

/// The singular fibers away from `0, inf` lie over `t^k4 = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    pub k4: u64,
    /// Two of the plane monomials coincide; no locus equation is produced.
    pub degenerate: bool,
    /// `prod_{k_i != 0} k_i^{k_i}`; `None` when degenerate.
    pub constant: Option<Rational>,
    /// Rational solutions of `t^k4 = c`.
    pub rational_roots: Vec<Rational>,
}

impl SingularLocus {
    pub fn constant_string(&self) -> String {
        self.constant.as_ref().map(format_rational).unwrap_or_default()
    }

    /// E.g. `t^2 = -4/27`.
    pub fn equation(&self) -> Option<String> {
        let c = self.constant.as_ref()?;
        Some(if self.k4 == 1 {
            format!("t = {}", format_rational(c))
        } else {
            format!("t^{} = {}", self.k4, format_rational(c))
        })
    }

    /// `t^k4 - c`.
    pub fn polynomial(&self) -> Option<UPoly> {
        let c = self.constant.as_ref()?;
        Some(&UPoly::monomial(Rational::one(), self.k4 as usize) - &UPoly::constant(c.clone()))
    }
}

pub fn kernel_constant(k: &[i64; 4]) -> Rational {
    k.iter()
        .filter(|&&x| x != 0)
        .map(|&x| pow_signed(&BigInt::from(x), &BigInt::from(x)).expect("nonzero base"))
        .product()
}

pub fn singular_locus(mf: &MinimalFibration) -> SingularLocus {
    let k = mf.kernel_i64();
    let k4 = k[3] as u64;
    if mf.has_coinciding_monomials() {
        return SingularLocus { k4, degenerate: true, constant: None, rational_roots: Vec::new() };
    }
    let c = kernel_constant(&k);
    let rational_roots = rational_kth_roots(&c, k4);
    SingularLocus { k4, degenerate: false, constant: Some(c), rational_roots }
}

/// Rational solutions of `t^k = c`, sorted.
pub fn rational_kth_roots(c: &Rational, k: u64) -> Vec<Rational> {
    let k32 = k as u32;
    if k == 0 {
        return Vec::new();
    }
    if c.is_zero() {
        return vec![Rational::zero()];
    }
    let root = |n: &BigInt| -> Option<BigInt> {
        let r = n.nth_root(k32);
        (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
    };
    let (Some(p), Some(q)) = (root(&c.numer().abs()), root(c.denom())) else {
        return Vec::new();
    };
    let r = Rational::new(p, q);
    if c.is_negative() {
        if k.is_multiple_of(2) {
            Vec::new()
        } else {
            vec![-r]
        }
    } else if k.is_multiple_of(2) {
        vec![-r.clone(), r]
    } else {
        vec![r]
    }
}

/// The fibration is the pullback along `t -> t^k4` of one with at most one
/// singular fiber outside `0, inf`, located at `quotient_value`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureDecomposition {
    pub automorphism_order: u64,
    #[serde(serialize_with = "ser_opt_rational")]
    pub quotient_value: Option<Rational>,
    pub statement: String,
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&format_rational(q)),
        None => s.serialize_none(),
    }
}

pub fn structure_decomposition(mf: &MinimalFibration) -> StructureDecomposition {
    let loc = singular_locus(mf);
    let statement = match &loc.constant {
        Some(c) if loc.k4 == 1 => format!("no quotient needed; singular fibers possibly at t = 0, inf, {}", format_rational(c)),
        Some(c) => format!(
            "pullback along t -> t^{} of a fibration with singular fibers possibly at t = 0, inf, {}; base automorphism t -> zeta_{} t",
            loc.k4,
            format_rational(c),
            loc.k4
        ),
        None => "two plane monomials coincide; fibration has the form m1 + m2 + (1+t) m3".to_string(),
    };
    StructureDecomposition { automorphism_order: loc.k4, quotient_value: loc.constant, statement }
}

/// `y^a = x^b + x^c + t x^d` with `b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuperellipticForm {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl std::fmt::Display for SuperellipticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let x = |e: u32| match e {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{e}"),
        };
        let tail = if self.d == 0 { "t".to_string() } else { format!("t*{}", x(self.d)) };
        write!(f, "y^{} = {} + {} + {tail}", self.a, x(self.b), x(self.c))
    }
}

impl SuperellipticForm {
    pub fn affine_equation(&self) -> AffineEquation {
        AffineEquation::all_ones(&[
            Monomial3 { x: 0, y: self.a, t: 0 },
            Monomial3 { x: self.b, y: 0, t: 0 },
            Monomial3 { x: self.c, y: 0, t: 0 },
            Monomial3 { x: self.d, y: 0, t: 1 },
        ])
    }

    /// Genus of the generic fiber, by Riemann-Hurwitz.
    pub fn genus(&self) -> Result<u64> {
        let lo = self.b.min(self.c).min(self.d) as u64;
        let hi = self.b.max(self.c).max(self.d) as u64;
        let mut mults = vec![1u64; (hi - lo) as usize];
        if lo > 0 {
            mults.push(lo);
        }
        superelliptic_genus(self.a as u64, &mults, hi)
    }
}

/// Birational normal form of `P[off]` plus three collinear monomials, with the
/// given orientation of the line. Returns `a` and the x-exponents of the
/// collinear monomials (the entry at `off` is unused).
fn normal_form(points: &[(i64, i64); 4], off: usize, reverse: bool) -> (u32, [i64; 4]) {
    let line: Vec<usize> = (0..4).filter(|&j| j != off).collect();
    let base = points[line[0]];
    let (mut dx, mut dy) = (points[line[1]].0 - base.0, points[line[1]].1 - base.1);
    let g = dx.abs().gcd(&dy.abs());
    dx /= g;
    dy /= g;
    if reverse {
        dx = -dx;
        dy = -dy;
    }
    let eg = dx.extended_gcd(&dy);
    let (alpha, beta) = if eg.gcd < 0 { (-eg.x, -eg.y) } else { (eg.x, eg.y) };
    let map = |p: (i64, i64)| -> (i64, i64) {
        let (px, py) = (p.0 - base.0, p.1 - base.1);
        (alpha * px + beta * py, -dy * px + dx * py)
    };
    let mut s = [0i64; 4];
    for &j in &line {
        let m = map(points[j]);
        debug_assert_eq!(m.1, 0);
        s[j] = m.0;
    }
    let (mut p, q) = map(points[off]);
    let q = q.abs();
    let lo = line.iter().map(|&j| s[j]).min().unwrap();
    for &j in &line {
        s[j] -= lo;
    }
    p -= lo;
    let shift = (-p).rem_euclid(q);
    for &j in &line {
        s[j] += shift;
    }
    (q as u32, s)
}

fn plane_points(mf: &MinimalFibration) -> [(i64, i64); 4] {
    mf.monomials().map(|m| (m.x as i64, m.y as i64))
}

fn pick_form(points: &[(i64, i64); 4], off: usize, t_index: usize) -> SuperellipticForm {
    let forms = [false, true].map(|rev| {
        let (a, s) = normal_form(points, off, rev);
        let mut others: Vec<u32> = (0..4).filter(|&j| j != off && j != t_index).map(|j| s[j] as u32).collect();
        others.sort();
        SuperellipticForm { a, b: others[0], c: others[1], d: s[t_index] as u32 }
    });
    let key = |f: &SuperellipticForm| (f.b.max(f.c).max(f.d), f.d);
    if key(&forms[1]) < key(&forms[0]) {
        forms[1]
    } else {
        forms[0]
    }
}

/// The superelliptic normal form, when some `k_i = 0` with `i <= 3`.
pub fn superelliptic_form(mf: &MinimalFibration) -> Option<SuperellipticForm> {
    let k = mf.kernel_i64();
    let off = (0..3).find(|&i| k[i] == 0)?;
    Some(pick_form(&plane_points(mf), off, 3))
}

/// Index `i < 3` with `m4 = m_i`.
pub fn duplicate_index(mf: &MinimalFibration) -> Option<usize> {
    let m = mf.monomials();
    (0..3).find(|&i| m[i] == m[3])
}

/// Geometric genus of the generic fiber.
pub fn fiber_genus(mf: &MinimalFibration) -> Result<u64> {
    if duplicate_index(mf).is_none() {
        if let Some(f) = superelliptic_form(mf) {
            return f.genus();
        }
    }
    Ok(newton::interior_points(&plane_points(mf)))
}

/// Riemann-Hurwitz for the smooth model of `y^a = f(x)`, where `f` has roots
/// of the given multiplicities and total degree `degree`.
pub fn superelliptic_genus(a: u64, multiplicities: &[u64], degree: u64) -> Result<u64> {
    if a < 2 {
        return Err(Error::Rejected(format!("cyclic cover of degree {a}")));
    }
    let g_all = multiplicities.iter().fold(a, |acc, &m| acc.gcd(&m));
    if g_all != 1 {
        return Err(Error::Rejected(format!("y^{a} = f(x) is reducible")));
    }
    let mut twice: i64 = -2 * a as i64;
    for &m in multiplicities {
        twice += (a - a.gcd(&m)) as i64;
    }
    twice += (a - a.gcd(&degree)) as i64;
    if twice < -2 || (twice + 2) % 2 != 0 {
        return Err(Error::Internal(format!("Riemann-Hurwitz gave 2g-2 = {twice}")));
    }
    Ok(((twice + 2) / 2) as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Trichotomy {
    /// `m4` equals `m_{duplicate}` (0-based).
    Isotrivial { duplicate: usize },
    Superelliptic { form: SuperellipticForm },
    SemistableElsewhere,
}

pub fn classify_trichotomy(mf: &MinimalFibration) -> Result<Trichotomy> {
    if fiber_genus(mf)? == 0 {
        return Err(Error::Rejected("generic fiber has genus 0".into()));
    }
    if let Some(i) = duplicate_index(mf) {
        return Ok(Trichotomy::Isotrivial { duplicate: i });
    }
    if let Some(form) = superelliptic_form(mf) {
        return Ok(Trichotomy::Superelliptic { form });
    }
    Ok(Trichotomy::SemistableElsewhere)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family")]
pub enum IsotrivialForm {
    /// `m1 + m2 + (1 + t^n) m3`
    ProductLike {
        #[serde(with = "crate::rational::as_string")]
        n: Rational,
    },
    /// `y^3 + x^3 + x^2 + t^n`
    CubicCube {
        #[serde(with = "crate::rational::as_string")]
        n: Rational,
    },
    /// `y^a + x^2 + x + t^n`
    QuadraticRoot {
        a: u32,
        #[serde(with = "crate::rational::as_string")]
        n: Rational,
    },
}

/// Matches an isotrivial minimal fibration, pulled back along `t -> t^n`,
/// against the three canonical families. The reported exponent is relative to
/// the canonical form and may be fractional when only a further base change
/// reaches it.
pub fn classify_isotrivial(mf: &MinimalFibration, n: u64) -> Result<IsotrivialForm> {
    let n_q = Rational::from_integer(n.into());
    if duplicate_index(mf).is_some() {
        return Ok(IsotrivialForm::ProductLike { n: n_q });
    }
    let form = superelliptic_form(mf)
        .ok_or_else(|| Error::NoIsotrivialMatch(format!("{mf} is neither of product type nor superelliptic")))?;
    let nf = DelsarteSurface::from_affine(&form.affine_equation())?;
    let exps = [form.b, form.c, form.d];
    // Rows of nf: 0 = y^a, 1 = x^b, 2 = x^c, 3 = t x^d.
    for target in [3usize, 1, 2] {
        let scale = if target == 3 {
            Rational::one()
        } else {
            match isolate_row(&nf, target)? {
                Some((bc, lambda)) => Rational::new(lambda.into(), bc.degree.abs().into()),
                None => continue,
            }
        };
        let pts = [(0, form.a as i64), (exps[0] as i64, 0), (exps[1] as i64, 0), (exps[2] as i64, 0)];
        for rev in [false, true] {
            let (a, s) = normal_form(&pts, 0, rev);
            if s[target] != 0 {
                continue;
            }
            let mut others: Vec<i64> = (1..4).filter(|&j| j != target).map(|j| s[j]).collect();
            others.sort();
            let total = &n_q * &scale;
            if a == 3 && others == [2, 3] {
                return Ok(IsotrivialForm::CubicCube { n: total });
            }
            if others == [1, 2] {
                return Ok(IsotrivialForm::QuadraticRoot { a, n: total });
            }
        }
    }
    Err(Error::NoIsotrivialMatch(format!("normal form {form} matches no canonical family")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn mf(m: [(u32, u32); 4]) -> MinimalFibration {
        MinimalFibration::from_pairs(m).unwrap()
    }

    #[test]
    fn locus_examples() {
        let a = singular_locus(&mf([(0, 2), (3, 0), (2, 0), (0, 0)]));
        assert_eq!(a.constant, Some(rat(-4, 27)));
        assert_eq!(a.rational_roots, vec![rat(-4, 27)]);
        assert_eq!(a.equation().unwrap(), "t = -4/27");
        let b = singular_locus(&mf([(0, 2), (3, 0), (1, 0), (0, 0)]));
        assert_eq!((b.k4, b.constant.clone()), (2, Some(rat(-4, 27))));
        assert!(b.rational_roots.is_empty());
        assert_eq!(b.equation().unwrap(), "t^2 = -4/27");
        let c = singular_locus(&mf([(0, 2), (3, 0), (2, 0), (1, 0)]));
        assert_eq!(c.constant, Some(rat(1, 4)));
    }

    #[test]
    fn kth_roots() {
        assert_eq!(rational_kth_roots(&rat(4, 9), 2), vec![rat(-2, 3), rat(2, 3)]);
        assert_eq!(rational_kth_roots(&rat(-8, 27), 3), vec![rat(-2, 3)]);
        assert!(rational_kth_roots(&rat(-4, 27), 2).is_empty());
        assert!(rational_kth_roots(&rat(2, 1), 2).is_empty());
    }

    #[test]
    fn structure_examples() {
        let s = structure_decomposition(&mf([(0, 2), (3, 0), (1, 0), (0, 0)]));
        assert_eq!((s.automorphism_order, s.quotient_value), (2, Some(rat(-4, 27))));
        let s = structure_decomposition(&mf([(0, 2), (3, 0), (2, 0), (0, 0)]));
        assert_eq!(s.automorphism_order, 1);
        let s = structure_decomposition(&mf([(0, 2), (3, 0), (2, 0), (1, 0)]));
        assert_eq!((s.automorphism_order, s.quotient_value), (1, Some(rat(1, 4))));
    }

    #[test]
    fn superelliptic_genus_examples() {
        assert_eq!(superelliptic_genus(2, &[1, 1, 1], 3).unwrap(), 1);
        assert_eq!(superelliptic_genus(2, &[1; 5], 5).unwrap(), 2);
        assert_eq!(superelliptic_genus(3, &[1, 1, 1], 3).unwrap(), 1);
        assert!(superelliptic_genus(2, &[2, 2], 4).is_err());
    }

    #[test]
    fn trichotomy_examples() {
        assert_eq!(
            classify_trichotomy(&mf([(0, 2), (3, 0), (0, 0), (0, 0)])).unwrap(),
            Trichotomy::Isotrivial { duplicate: 2 }
        );
        let t = classify_trichotomy(&mf([(0, 2), (3, 0), (2, 0), (0, 0)])).unwrap();
        assert_eq!(t, Trichotomy::Superelliptic { form: SuperellipticForm { a: 2, b: 2, c: 3, d: 0 } });
        // x y^2 + x^3 y + y + t x
        let m = mf([(1, 2), (3, 1), (0, 1), (1, 0)]);
        assert!(m.kernel_i64().iter().all(|&k| k != 0));
        assert_eq!(classify_trichotomy(&m).unwrap(), Trichotomy::SemistableElsewhere);
    }

    #[test]
    fn genus_zero_rejected() {
        // y + x^2 + 1 + t x: a conic.
        let m = mf([(0, 1), (2, 0), (0, 0), (1, 0)]);
        assert!(matches!(classify_trichotomy(&m), Err(Error::Rejected(_))));
    }

    #[test]
    fn normal_form_orientations() {
        let f = superelliptic_form(&mf([(0, 2), (3, 0), (1, 0), (0, 0)])).unwrap();
        assert_eq!(f, SuperellipticForm { a: 2, b: 1, c: 3, d: 0 });
        assert_eq!(f.to_string(), "y^2 = x + x^3 + t");
        assert_eq!(f.genus().unwrap(), 1);
    }

    #[test]
    fn isotrivial_examples() {
        let s = |m: [(u32, u32); 4]| mf(m);
        assert_eq!(
            classify_isotrivial(&s([(0, 2), (3, 0), (0, 0), (0, 0)]), 1).unwrap(),
            IsotrivialForm::ProductLike { n: int(1) }
        );
        assert_eq!(
            classify_isotrivial(&s([(0, 3), (3, 0), (2, 0), (0, 0)]), 2).unwrap(),
            IsotrivialForm::CubicCube { n: int(2) }
        );
        assert_eq!(
            classify_isotrivial(&s([(0, 5), (2, 0), (1, 0), (0, 0)]), 3).unwrap(),
            IsotrivialForm::QuadraticRoot { a: 5, n: int(3) }
        );
        // y^3 + x^3 + t x^2 + 1 reaches the cubic family after t -> 1/t.
        assert!(matches!(
            classify_isotrivial(&s([(0, 3), (3, 0), (0, 0), (2, 0)]), 1),
            Ok(IsotrivialForm::CubicCube { .. })
        ));
        assert!(classify_isotrivial(&s([(0, 2), (3, 0), (2, 0), (0, 0)]), 1).is_err());
    }
}
