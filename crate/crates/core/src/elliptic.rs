//! Genus-one fibrations: Weierstrass invariants, Kodaira fibers over `C(t)`,
//! and the gamma invariant.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::locus::{duplicate_index, fiber_genus, superelliptic_form, SuperellipticForm};
use crate::poly::UPoly;
use crate::rational::{format_rational, int, Rational};
use crate::reduction::MinimalFibration;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over `Q[t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    pub a1: UPoly,
    pub a2: UPoly,
    pub a3: UPoly,
    pub a4: UPoly,
    pub a6: UPoly,
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: &UPoly, m: &str| -> Option<String> {
            if c.is_zero() {
                return None;
            }
            let c_str = if c.is_constant() { c.to_string() } else { format!("({c})") };
            Some(match (m.is_empty(), *c == UPoly::one()) {
                (true, _) => c_str,
                (false, true) => m.to_string(),
                (false, false) => format!("{c_str}*{m}"),
            })
        };
        let lhs: Vec<String> = ["y^2".to_string()]
            .into_iter()
            .chain(term(&self.a1, "x*y"))
            .chain(term(&self.a3, "y"))
            .collect();
        let rhs: Vec<String> = ["x^3".to_string()]
            .into_iter()
            .chain(term(&self.a2, "x^2"))
            .chain(term(&self.a4, "x"))
            .chain(term(&self.a6, ""))
            .collect();
        let side = |v: Vec<String>| v.join(" + ").replace("+ -", "- ");
        write!(f, "{} = {}", side(lhs), side(rhs))
    }
}

/// Reduced quotient of polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: UPoly,
    pub den: UPoly,
}

impl RationalFunction {
    pub fn new(num: UPoly, den: UPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_zero() || g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = d.leading();
        n = n.scale(&lc.recip());
        d = d.monic();
        if n.is_zero() {
            d = UPoly::one();
        }
        RationalFunction { num: n, den: d }
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: UPoly,
    pub b4: UPoly,
    pub b6: UPoly,
    pub b8: UPoly,
    pub c4: UPoly,
    pub c6: UPoly,
    pub delta: UPoly,
    pub j: RationalFunction,
}

fn c(n: i64) -> UPoly {
    UPoly::constant(int(n))
}

impl WeierstrassModel {
    pub fn short(a4: UPoly, a6: UPoly) -> Self {
        WeierstrassModel { a1: UPoly::zero(), a2: UPoly::zero(), a3: UPoly::zero(), a4, a6 }
    }

    pub fn new(a1: UPoly, a2: UPoly, a3: UPoly, a4: UPoly, a6: UPoly) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn invariants(&self) -> Result<Invariants> {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = &(a1 * a1) + &(&c(4) * a2);
        let b4 = &(&c(2) * a4) + &(a1 * a3);
        let b6 = &(a3 * a3) + &(&c(4) * a6);
        let b8 = &(&(&(&(&(a1 * a1) * a6) + &(&(&c(4) * a2) * a6)) - &(&(a1 * a3) * a4)) + &(&(a2 * a3) * a3))
            - &(a4 * a4);
        let c4 = &(&b2 * &b2) - &(&c(24) * &b4);
        let c6 = &(&(-&b2.pow(3)) + &(&(&c(36) * &b2) * &b4)) - &(&c(216) * &b6);
        let delta = &(&(&(-&(&(&b2 * &b2) * &b8)) - &(&c(8) * &b4.pow(3))) - &(&c(27) * &(&b6 * &b6)))
            + &(&(&(&c(9) * &b2) * &b4) * &b6);
        if delta.is_zero() {
            return Err(Error::ZeroDiscriminant);
        }
        debug_assert_eq!(&c4.pow(3) - &c6.pow(2), &c(1728) * &delta);
        let j = RationalFunction::new(c4.pow(3), delta.clone());
        Ok(Invariants { b2, b4, b6, b8, c4, c6, delta, j })
    }

    /// Jacobian of `y^2 = a x^4 + b x^3 + c x^2 + d x + e`, via the classical
    /// invariants `I, J`: `y^2 = x^3 - 27 I x - 27 J`.
    pub fn from_quartic(q: [UPoly; 5]) -> Self {
        let [a, b, cc, d, e] = q;
        let i = &(&(&c(12) * &(&a * &e)) - &(&c(3) * &(&b * &d))) + &(&cc * &cc);
        let j = &(&(&(&(&c(72) * &(&(&a * &cc) * &e)) + &(&c(9) * &(&(&b * &cc) * &d))) - &(&c(27) * &(&(&a * &d) * &d)))
            - &(&c(27) * &(&(&e * &b) * &b)))
            - &(&c(2) * &cc.pow(3));
        WeierstrassModel::short(&c(-27) * &i, &c(-27) * &j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum KodairaSymbol {
    /// `I_0` is a smooth fiber.
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for KodairaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaSymbol::I(n) => write!(f, "I{n}"),
            KodairaSymbol::IStar(n) => write!(f, "I{n}*"),
            KodairaSymbol::II => write!(f, "II"),
            KodairaSymbol::III => write!(f, "III"),
            KodairaSymbol::IV => write!(f, "IV"),
            KodairaSymbol::IVStar => write!(f, "IV*"),
            KodairaSymbol::IIIStar => write!(f, "III*"),
            KodairaSymbol::IIStar => write!(f, "II*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct KodairaFiber {
    pub symbol: KodairaSymbol,
}

impl KodairaFiber {
    pub fn new(symbol: KodairaSymbol) -> Self {
        KodairaFiber { symbol }
    }

    pub fn is_smooth(&self) -> bool {
        self.symbol == KodairaSymbol::I(0)
    }

    pub fn euler(&self) -> u32 {
        match self.symbol {
            KodairaSymbol::I(n) => n,
            KodairaSymbol::IStar(n) => n + 6,
            KodairaSymbol::II => 2,
            KodairaSymbol::III => 3,
            KodairaSymbol::IV => 4,
            KodairaSymbol::IVStar => 8,
            KodairaSymbol::IIIStar => 9,
            KodairaSymbol::IIStar => 10,
        }
    }

    pub fn conductor(&self) -> u32 {
        match self.symbol {
            KodairaSymbol::I(0) => 0,
            KodairaSymbol::I(_) => 1,
            _ => 2,
        }
    }

    pub fn n_value(&self) -> u32 {
        match self.symbol {
            KodairaSymbol::I(n) | KodairaSymbol::IStar(n) => n,
            _ => 0,
        }
    }
}

impl fmt::Display for KodairaFiber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol)
    }
}

impl Serialize for KodairaFiber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("KodairaFiber", 4)?;
        st.serialize_field("symbol", &self.symbol.to_string())?;
        st.serialize_field("euler", &self.euler())?;
        st.serialize_field("conductor", &self.conductor())?;
        st.serialize_field("n", &self.n_value())?;
        st.end()
    }
}

/// Characteristic-0 Kodaira type from the orders of `c4, c6, Delta` at a
/// place; `None` stands for an identically vanishing invariant.
pub fn kodaira_from_valuations(v4: Option<u32>, v6: Option<u32>, vd: u32) -> Result<KodairaFiber> {
    let (mut v4, mut v6, mut vd) = (v4, v6, vd);
    while v4.is_none_or(|v| v >= 4) && v6.is_none_or(|v| v >= 6) && vd >= 12 {
        v4 = v4.map(|v| v - 4);
        v6 = v6.map(|v| v - 6);
        vd -= 12;
    }
    use KodairaSymbol::*;
    let sym = if vd == 0 {
        I(0)
    } else if v4 == Some(0) {
        I(vd)
    } else if v4.is_some_and(|v| 3 * v < vd) {
        IStar(vd - 6)
    } else {
        match vd {
            2 => II,
            3 => III,
            4 => IV,
            6 => IStar(0),
            8 => IVStar,
            9 => IIIStar,
            10 => IIStar,
            _ => {
                return Err(Error::Internal(format!(
                    "inconsistent valuations ({v4:?}, {v6:?}, {vd})"
                )))
            }
        }
    };
    Ok(KodairaFiber::new(sym))
}

/// A place of `P^1_t`, or a Galois orbit of places given by an irreducible-
/// looking squarefree factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(Rational),
    Infinity,
    Orbit(UPoly),
}

impl Place {
    pub fn zero() -> Self {
        Place::Finite(Rational::zero())
    }

    pub fn label(&self) -> String {
        match self {
            Place::Finite(t0) => format_rational(t0),
            Place::Infinity => "inf".into(),
            Place::Orbit(p) => format!("{p} = 0"),
        }
    }

    /// Number of geometric points in the place.
    pub fn size(&self) -> usize {
        match self {
            Place::Orbit(p) => p.degree().unwrap_or(0),
            _ => 1,
        }
    }
}

fn order_at(p: &UPoly, place: &Place) -> Option<u32> {
    if p.is_zero() {
        return None;
    }
    let factor = match place {
        Place::Finite(t0) => UPoly::new(vec![-t0.clone(), Rational::one()]),
        Place::Orbit(q) => q.clone(),
        Place::Infinity => unreachable!(),
    };
    Some(p.multiplicity(&factor).unwrap() as u32)
}

/// Smallest weight `m` with `4m >= deg c4`, `6m >= deg c6`, `12m >= deg Delta`.
pub fn weight_at_infinity(inv: &Invariants) -> u32 {
    let dg = |p: &UPoly| p.degree().unwrap_or(0) as u32;
    let mut m = dg(&inv.delta).div_ceil(12);
    if !inv.c4.is_zero() {
        m = m.max(dg(&inv.c4).div_ceil(4));
    }
    if !inv.c6.is_zero() {
        m = m.max(dg(&inv.c6).div_ceil(6));
    }
    m
}

pub fn valuations(inv: &Invariants, place: &Place) -> (Option<u32>, Option<u32>, u32) {
    match place {
        Place::Infinity => {
            let m = weight_at_infinity(inv);
            let dg = |p: &UPoly| p.degree().unwrap_or(0) as u32;
            let v4 = (!inv.c4.is_zero()).then(|| 4 * m - dg(&inv.c4));
            let v6 = (!inv.c6.is_zero()).then(|| 6 * m - dg(&inv.c6));
            (v4, v6, 12 * m - dg(&inv.delta))
        }
        _ => (order_at(&inv.c4, place), order_at(&inv.c6, place), order_at(&inv.delta, place).unwrap()),
    }
}

pub fn kodaira_type(w: &WeierstrassModel, place: &Place) -> Result<KodairaFiber> {
    let inv = w.invariants()?;
    let (v4, v6, vd) = valuations(&inv, place);
    kodaira_from_valuations(v4, v6, vd)
}

/// Pairwise coprime squarefree polynomials generating the same radical
/// pieces as the inputs.
fn coprime_basis(polys: Vec<UPoly>) -> Vec<UPoly> {
    let mut basis: Vec<UPoly> = Vec::new();
    for p in polys {
        let mut pending = vec![p.squarefree()];
        while let Some(mut q) = pending.pop() {
            if q.is_constant() {
                continue;
            }
            let mut i = 0;
            while i < basis.len() {
                let g = basis[i].gcd(&q);
                if !g.is_constant() {
                    let b = basis.remove(i);
                    let rest_b = b.div_rem(&g).0.monic();
                    q = q.div_rem(&g).0.monic();
                    pending.push(g);
                    pending.push(rest_b);
                    i = 0;
                    if q.is_constant() {
                        break;
                    }
                    continue;
                }
                i += 1;
            }
            if !q.is_constant() {
                basis.push(q.monic());
            }
        }
    }
    basis.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| format!("{a}").cmp(&format!("{b}"))));
    basis
}

/// Places other than `0, inf` where `Delta` vanishes, each rational root as
/// `Finite` and every other factor as an `Orbit`.
pub fn away_places(inv: &Invariants) -> Vec<Place> {
    let t = UPoly::t();
    let mut pieces = Vec::new();
    for p in [&inv.delta, &inv.c4, &inv.c6] {
        if p.is_zero() {
            continue;
        }
        for (f, _) in p.squarefree_decomposition() {
            pieces.push(f);
        }
    }
    let mut places = Vec::new();
    for mut q in coprime_basis(pieces) {
        if !q.divides(&inv.delta) {
            continue;
        }
        if q.eval(&Rational::zero()).is_zero() {
            q = q.div_rem(&t).0;
        }
        if q.is_constant() {
            continue;
        }
        for r in q.rational_roots() {
            places.push(Place::Finite(r));
        }
        let mut rest = q.clone();
        for r in q.rational_roots() {
            rest = rest.div_rem(&UPoly::new(vec![-r, Rational::one()])).0;
        }
        if !rest.is_constant() {
            places.push(Place::Orbit(rest.monic()));
        }
    }
    places
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceClass {
    Zero,
    Infinity,
    Away,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberEntry {
    pub place: String,
    pub class: PlaceClass,
    /// Number of geometric points sharing this fiber type.
    pub count: usize,
    pub fiber: KodairaFiber,
}

/// `sum_away (f - e/6) - n0/6 - ninf/6`.
pub fn gamma(fibers: &[FiberEntry]) -> Rational {
    let sixth = |x: u32| Rational::new(x.into(), 6.into());
    let mut g = Rational::zero();
    for fe in fibers {
        let k = Rational::from_integer(fe.count.into());
        match fe.class {
            PlaceClass::Away => g += k * (Rational::from_integer(fe.fiber.conductor().into()) - sixth(fe.fiber.euler())),
            PlaceClass::Zero | PlaceClass::Infinity => g -= k * sixth(fe.fiber.n_value()),
        }
    }
    g
}

/// Fibers at `0`, `inf` and every singular away place.
pub fn fiber_table(w: &WeierstrassModel) -> Result<Vec<FiberEntry>> {
    let inv = w.invariants()?;
    let mut out = Vec::new();
    for (place, class) in [(Place::zero(), PlaceClass::Zero), (Place::Infinity, PlaceClass::Infinity)] {
        let (v4, v6, vd) = valuations(&inv, &place);
        out.push(FiberEntry { place: place.label(), class, count: 1, fiber: kodaira_from_valuations(v4, v6, vd)? });
    }
    for place in away_places(&inv) {
        let (v4, v6, vd) = valuations(&inv, &place);
        let fiber = kodaira_from_valuations(v4, v6, vd)?;
        if fiber.is_smooth() {
            continue;
        }
        out.push(FiberEntry { place: place.label(), class: PlaceClass::Away, count: place.size(), fiber });
    }
    Ok(out)
}

/// Weierstrass model of a genus-one minimal fibration, through its
/// superelliptic normal form `y^2 = x^b + x^c + t x^d`.
pub fn weierstrass_from_fibration(mf: &MinimalFibration) -> Result<WeierstrassModel> {
    if fiber_genus(mf)? != 1 {
        return Err(Error::NotConvertible(format!("{mf} does not have genus one")));
    }
    let form = superelliptic_form(mf)
        .ok_or_else(|| Error::NotConvertible(format!("{mf}: no three monomials are collinear")))?;
    weierstrass_from_form(&form)
}

pub fn weierstrass_from_form(form: &SuperellipticForm) -> Result<WeierstrassModel> {
    if form.a != 2 {
        return Err(Error::NotConvertible(format!("{form} is not a double cover")));
    }
    let lo = form.b.min(form.c).min(form.d);
    let shift = lo - lo % 2;
    let mut q: [UPoly; 5] = std::array::from_fn(|_| UPoly::zero());
    for (e, coeff) in [(form.b, UPoly::one()), (form.c, UPoly::one()), (form.d, UPoly::t())] {
        let e = (e - shift) as usize;
        if e > 4 {
            return Err(Error::NotConvertible(format!("{form} has x-degree above 4")));
        }
        q[4 - e] = &q[4 - e] + &coeff;
    }
    Ok(WeierstrassModel::from_quartic(q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum FastenbergVerdict {
    BaseChangeOfGammaLessOne {
        #[serde(with = "crate::rational::as_string")]
        quotient_gamma: Rational,
    },
    ConstantJ,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genus1Report {
    /// Absent for constant-modulus fibrations that are not double covers.
    pub model: Option<WeierstrassModel>,
    pub invariants: Option<Invariants>,
    pub fibers: Vec<FiberEntry>,
    pub gamma: Option<Rational>,
    pub nonconstant_j: bool,
    pub verdict: FastenbergVerdict,
}

/// Gamma of the quotient by `t -> zeta_k t`: each away orbit of size `k`
/// contributes one place, and the `n`-values at `0, inf` are divided by `k`.
pub fn quotient_gamma(fibers: &[FiberEntry], k4: u64) -> Rational {
    let mut g = Rational::zero();
    for fe in fibers {
        let f = Rational::from_integer(fe.fiber.conductor().into());
        let e = Rational::new(fe.fiber.euler().into(), 6.into());
        match fe.class {
            PlaceClass::Away => g += Rational::new(fe.count.into(), k4.into()) * (f - e),
            _ => g -= Rational::new(fe.fiber.n_value().into(), (6 * k4).into()),
        }
    }
    g
}

pub fn genus1_report(mf: &MinimalFibration) -> Result<Genus1Report> {
    if fiber_genus(mf)? != 1 {
        return Err(Error::NotConvertible(format!("{mf} does not have genus one")));
    }
    let constant = || Genus1Report {
        model: None,
        invariants: None,
        fibers: Vec::new(),
        gamma: None,
        nonconstant_j: false,
        verdict: FastenbergVerdict::ConstantJ,
    };
    if duplicate_index(mf).is_some() {
        return Ok(constant());
    }
    let form = superelliptic_form(mf)
        .ok_or_else(|| Error::NotConvertible(format!("{mf}: all kernel entries are nonzero")))?;
    if form.a > 2 {
        // A cyclic automorphism of order > 2 with fixed points forces constant j.
        return Ok(constant());
    }
    let model = weierstrass_from_form(&form)?;
    let invariants = model.invariants()?;
    let fibers = fiber_table(&model)?;
    let g = gamma(&fibers);
    let nonconstant_j = !invariants.j.is_constant();
    let verdict = if !nonconstant_j {
        FastenbergVerdict::ConstantJ
    } else {
        if let Some(bad) = fibers
            .iter()
            .find(|f| f.class == PlaceClass::Away && !matches!(f.fiber.symbol, KodairaSymbol::I(_)))
        {
            return Err(Error::Internal(format!("away fiber {} at {} is not semistable", bad.fiber, bad.place)));
        }
        let qg = quotient_gamma(&fibers, mf.kernel_i64()[3] as u64);
        if qg >= Rational::one() {
            return Err(Error::Internal(format!("quotient gamma {} is not below 1", format_rational(&qg))));
        }
        FastenbergVerdict::BaseChangeOfGammaLessOne { quotient_gamma: qg }
    };
    Ok(Genus1Report { model: Some(model), invariants: Some(invariants), fibers, gamma: Some(g), nonconstant_j, verdict })
}

pub fn fastenberg_check(mf: &MinimalFibration) -> Result<FastenbergVerdict> {
    Ok(genus1_report(mf)?.verdict)
}
