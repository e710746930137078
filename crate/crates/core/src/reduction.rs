//! Degeneracy tests and reduction to a minimal Delsarte fibration.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{left_kernel_normalized, ExactMatrix, IntegerVector};
use crate::model::{BaseChangeSpec, DelsarteSurface, Monomial2};
use crate::rational::{int, Rational};

/// Outcome of the degeneracy test for `det(A) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "degree")]
pub enum Degeneracy {
    /// The generic fiber is a rational curve.
    RationalFiber,
    /// After a base change of this degree the surface is birational to a product.
    SplitAfterBaseChange(u64),
}

/// A nonzero `v = (a, b, c, 0)` with `A v` in the span of `(1,1,1,1)`, when
/// `det(A) = 0`. A choice with `c = 0` is preferred when one exists.
pub fn detect_split_direction(a: &ExactMatrix) -> Option<IntegerVector> {
    if !a.determinant().ok()?.is_zero() {
        return None;
    }
    let ker = a.right_kernel();
    let to_v = |k: &IntegerVector| -> Vec<BigInt> {
        let e = k.entries();
        vec![&e[3] - &e[0], &e[3] - &e[1], &e[3] - &e[2], BigInt::zero()]
    };
    let vs: Vec<Vec<BigInt>> = ker.iter().map(to_v).collect();
    if let Some(v) = vs.iter().find(|v| v[2].is_zero()) {
        return Some(IntegerVector::new(v.clone()).normalized());
    }
    if vs.len() >= 2 {
        // Kill the third coordinate with a combination of two directions.
        let (p, q) = (&vs[0], &vs[1]);
        let v: Vec<BigInt> = p.iter().zip(q).map(|(x, y)| &q[2] * x - &p[2] * y).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return Some(IntegerVector::new(v).normalized());
        }
    }
    vs.into_iter().next().map(|v| IntegerVector::new(v).normalized())
}

pub fn classify_degenerate(v: &IntegerVector) -> Degeneracy {
    let c = &v.entries()[2];
    if c.is_zero() {
        Degeneracy::RationalFiber
    } else {
        Degeneracy::SplitAfterBaseChange(c.magnitude().try_into().unwrap_or(u64::MAX))
    }
}

/// Exponent matrix of the plane model together with the bridge matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneModel {
    /// Rows `(x, y, z)` of `N_1..N_4`.
    pub rows: [[u32; 3]; 4],
    pub degree: u32,
    pub ell1_contained: bool,
    pub bridge: ExactMatrix,
}

impl PlaneModel {
    pub fn matrix(&self) -> ExactMatrix {
        let r: Vec<[i64; 3]> = self.rows.iter().map(|r| r.map(i64::from)).collect();
        ExactMatrix::from_int_rows(&r)
    }

    /// `G = N1 + N2 + N3 + t N4` as text in `X, Y, Z`.
    pub fn equation(&self) -> String {
        let mono = |r: &[u32; 3]| -> String {
            let mut s = String::new();
            for (v, e) in ["X", "Y", "Z"].iter().zip(r) {
                match e {
                    0 => {}
                    1 => s.push_str(v),
                    _ => s.push_str(&format!("{v}^{e}")),
                }
            }
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        };
        format!(
            "{} + {} + {} + t*{}",
            mono(&self.rows[0]),
            mono(&self.rows[1]),
            mono(&self.rows[2]),
            mono(&self.rows[3])
        )
    }
}

/// `m1 + m2 + m3 + t*m4` with `det(A) != 0`, all coefficients 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalFibration {
    monomials: [Monomial2; 4],
    surface: DelsarteSurface,
    plane: PlaneModel,
    kernel: IntegerVector,
}

impl MinimalFibration {
    pub fn new(monomials: [Monomial2; 4]) -> Result<Self> {
        let [m1, m2, m3, m4] = monomials;
        let d = m1.degree().max(m2.degree()).max(m3.degree()).max(m4.degree() + 1);
        let row = |m: Monomial2, t: u32| [m.x, m.y, t, d - m.degree() - t];
        let surface = DelsarteSurface::from_rows([row(m1, 0), row(m2, 0), row(m3, 0), row(m4, 1)])?;
        let a = surface.exponent_matrix();
        if a.determinant()?.is_zero() {
            return Err(Error::DegenerateInput);
        }
        let plane = plane_model(&surface)?;
        let kernel = left_kernel_normalized(&plane.matrix()).map_err(|e| Error::Internal(format!("plane model: {e}")))?;
        check_kernel_direction(&a, &kernel)?;
        Ok(MinimalFibration { monomials, surface, plane, kernel })
    }

    pub fn from_pairs(m: [(u32, u32); 4]) -> Result<Self> {
        Self::new(m.map(|(x, y)| Monomial2::new(x, y)))
    }

    pub fn monomials(&self) -> &[Monomial2; 4] {
        &self.monomials
    }

    pub fn surface(&self) -> &DelsarteSurface {
        &self.surface
    }

    pub fn plane(&self) -> &PlaneModel {
        &self.plane
    }

    pub fn kernel(&self) -> &IntegerVector {
        &self.kernel
    }

    pub fn kernel_i64(&self) -> [i64; 4] {
        let v = self.kernel.to_i64().expect("kernel entries fit in i64");
        [v[0], v[1], v[2], v[3]]
    }

    /// Degree of the fibers as plane curves.
    pub fn curve_degree(&self) -> u32 {
        self.plane.degree
    }

    /// Two of the plane monomials `N_i` coincide.
    pub fn has_coinciding_monomials(&self) -> bool {
        let r = &self.plane.rows;
        (0..4).any(|i| (i + 1..4).any(|j| r[i] == r[j]))
    }
}

impl fmt::Display for MinimalFibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.monomials;
        if d.x + d.y == 0 {
            write!(f, "{a} + {b} + {c} + t")
        } else {
            write!(f, "{a} + {b} + {c} + t*{d}")
        }
    }
}

/// Builds the plane model `N_i` and checks `A' = A B` for the applicable `B`.
pub fn plane_model(s: &DelsarteSurface) -> Result<PlaneModel> {
    let rows = s.rows();
    let d = s.degree();
    // X3 divides M1, M2, M3 exactly when the line X2 = X3 = 0 lies on S.
    let ell1 = rows[..3].iter().all(|r| r[3] > 0);
    let shift = u32::from(ell1);
    let plane: [[u32; 3]; 4] = std::array::from_fn(|i| [rows[i][0], rows[i][1], rows[i][2] + rows[i][3] - shift]);
    let bridge = if ell1 {
        let dd = Rational::from_integer(d.into());
        let m = -dd.recip();
        let q = (&dd - Rational::one()) / &dd;
        ExactMatrix::new(
            4,
            3,
            vec![
                int(1), int(0), m.clone(),
                int(0), int(1), m,
                int(0), int(0), q.clone(),
                int(0), int(0), q,
            ],
        )?
    } else {
        ExactMatrix::from_int_rows(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 1]])
    };
    let model = PlaneModel { rows: plane, degree: d - shift, ell1_contained: ell1, bridge };
    if s.exponent_matrix().mul(&model.bridge)? != model.matrix() {
        return Err(Error::Internal("A' differs from A B".into()));
    }
    if model.matrix().rank() != 3 {
        return Err(Error::Internal("plane model exponent matrix has rank below 3".into()));
    }
    Ok(model)
}

/// `k` must be a multiple of `(0,0,1,-1) A^{-1}`.
fn check_kernel_direction(a: &ExactMatrix, k: &IntegerVector) -> Result<()> {
    let w = a.invert()?.vec_mul(&[int(0), int(0), int(1), int(-1)])?;
    let kq = k.to_rationals();
    let proportional = (0..4).all(|i| (0..4).all(|j| &kq[i] * &w[j] == &kq[j] * &w[i]));
    if proportional {
        Ok(())
    } else {
        Err(Error::Internal("kernel vector not proportional to (0,0,1,-1)A^-1".into()))
    }
}

/// `k` proportional to `(0,0,1,-1) A^{-1}`, exposed for verification.
pub fn kernel_direction(a: &ExactMatrix) -> Result<Vec<Rational>> {
    a.invert()?.vec_mul(&[int(0), int(0), int(1), int(-1)])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalReduction {
    pub fibration: MinimalFibration,
    /// Substitution applied to the input; it leaves one t-monomial, with exponent `exponent`.
    pub substitution: BaseChangeSpec,
    /// The input, after `substitution`, is the degree-`exponent` base change of `fibration`.
    pub exponent: i64,
}

/// Reduces the standard fibration of `s` to a minimal Delsarte fibration.
pub fn reduce_to_minimal(s: &DelsarteSurface) -> Result<MinimalReduction> {
    s.require_all_ones()?;
    let a = s.exponent_matrix();
    if a.determinant()?.is_zero() {
        return Err(Error::DegenerateInput);
    }
    let rows = s.rows();
    let with_t: Vec<usize> = (0..4).filter(|&i| rows[i][2] > 0).collect();
    if with_t.is_empty() {
        return Err(Error::Rejected("no monomial involves t".into()));
    }
    if with_t.len() == 1 {
        let i = with_t[0];
        return Ok(MinimalReduction {
            fibration: fibration_singling_out(s, i)?,
            substitution: BaseChangeSpec::identity(),
            exponent: rows[i][2] as i64,
        });
    }

    let mut best: Option<(i64, usize, BaseChangeSpec, i64)> = None;
    for i in 0..3 {
        if let Some((bc, lambda)) = isolate_row(s, i)? {
            let c = bc.degree.abs();
            if best.as_ref().is_none_or(|b| c < b.0) {
                best = Some((c, i, bc, lambda));
            }
        }
    }
    let (_, i, bc, lambda) = best.ok_or_else(|| Error::Internal("no admissible substitution direction".into()))?;
    Ok(MinimalReduction { fibration: fibration_singling_out(s, i)?, substitution: bc, exponent: lambda })
}

/// The substitution `(x, y, t) -> (x t^a, y t^b, t^c)` after which only row
/// `i` involves `t`, with its resulting t-exponent `lambda > 0`. `None` when
/// the direction has `c = 0`, i.e. does not involve `t`.
pub fn isolate_row(s: &DelsarteSurface, i: usize) -> Result<Option<(BaseChangeSpec, i64)>> {
    let inv = s.exponent_matrix().invert()?;
    let mut e = vec![int(0); 4];
    e[i] = int(1);
    let u = inv.mul_vec(&e)?;
    let shifted: Vec<Rational> = u.iter().map(|x| x - &u[3]).collect();
    let l = shifted.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut v: Vec<BigInt> = shifted.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    v.iter_mut().for_each(|x| *x = &*x / &g);
    // A v = mu (1,1,1,1) + lambda e_i with lambda = l / g > 0.
    let lambda = &l / &g;
    if v[2].is_zero() {
        return Ok(None);
    }
    let small = |x: &BigInt| -> Result<i64> { x.try_into().map_err(|_| Error::Internal("substitution too large".into())) };
    let mut bc = BaseChangeSpec { degree: small(&v[2])?, twist: (small(&v[0])?, small(&v[1])?), cleared: 0 };
    let (after, cleared) = s.base_change(&bc)?;
    bc.cleared = cleared;
    let lam = small(&lambda)?;
    let t_rows: Vec<usize> = (0..4).filter(|&j| after.rows()[j][2] > 0).collect();
    if t_rows != vec![i] || after.rows()[i][2] as i64 != lam {
        return Err(Error::Internal("substitution did not isolate a single t-monomial".into()));
    }
    Ok(Some((bc, lam)))
}

pub(crate) fn fibration_singling_out(s: &DelsarteSurface, i: usize) -> Result<MinimalFibration> {
    let rows = s.rows();
    let mut ms: Vec<Monomial2> = (0..4).filter(|&j| j != i).map(|j| Monomial2::new(rows[j][0], rows[j][1])).collect();
    ms.push(Monomial2::new(rows[i][0], rows[i][1]));
    MinimalFibration::new([ms[0], ms[1], ms[2], ms[3]])
}

/// True when `x -> x t^a, y -> y t^b, t -> t^c` multiplies every monomial by
/// the same power of `t`.
pub fn substitution_is_uniform(s: &DelsarteSurface, v: &IntegerVector) -> bool {
    let v = v.to_i64().expect("small vector");
    let shifts: Vec<i64> = s
        .rows()
        .iter()
        .map(|r| v[0] * r[0] as i64 + v[1] * r[1] as i64 + v[2] * r[2] as i64)
        .collect();
    shifts.iter().all(|&x| x == shifts[0])
}
