//! Delsarte surfaces, their affine equations and Delsarte base changes.
//!
//! Columns of the exponent matrix are `(X0, X1, X2, X3) = (x, y, t, w)`; the
//! standard fibration is `(X0:X1:X2:X3) -> (X2:X3)` and the affine chart is
//! `w = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::rational::{format_rational, parse_rational, Rational};

/// Exponents of `x, y, t` in the affine chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial3 {
    pub x: u32,
    pub y: u32,
    pub t: u32,
}

/// A monomial in `x, y` only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial2 {
    pub x: u32,
    pub y: u32,
}

impl Monomial2 {
    pub const fn new(x: u32, y: u32) -> Self {
        Monomial2 { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }
}

impl fmt::Display for Monomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Monomial3 { x: self.x, y: self.y, t: 0 })
    }
}

impl fmt::Display for Monomial3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (v, e) in [("x", self.x), ("y", self.y), ("t", self.t)] {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineTerm {
    pub coeff: Rational,
    pub mono: Monomial3,
}

/// `f(x, y, t) = F(x, y, t, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineEquation {
    pub terms: Vec<AffineTerm>,
}

impl AffineEquation {
    /// Builds an equation from signed t-exponents, clearing the common t-power
    /// so that the smallest t-exponent is 0. Returns the cleared power too.
    pub fn with_signed_t(terms: &[(Rational, u32, u32, i64)]) -> (Self, i64) {
        let e = terms.iter().map(|t| t.3).min().unwrap_or(0);
        let out = terms
            .iter()
            .map(|(c, x, y, t)| AffineTerm { coeff: c.clone(), mono: Monomial3 { x: *x, y: *y, t: (t - e) as u32 } })
            .collect();
        (AffineEquation { terms: out }, e)
    }

    pub fn all_ones(monos: &[Monomial3]) -> Self {
        AffineEquation {
            terms: monos.iter().map(|&mono| AffineTerm { coeff: Rational::one(), mono }).collect(),
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.mono.x + t.mono.y).max().unwrap_or(0)
    }

    pub fn monomials(&self) -> Vec<Monomial3> {
        self.terms.iter().map(|t| t.mono).collect()
    }
}

impl fmt::Display for AffineEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for term in &self.terms {
            let c = &term.coeff;
            let neg = c < &Rational::zero();
            let a = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let m = term.mono.to_string();
            if a.is_one() {
                write!(f, "{m}")?;
            } else if m == "1" {
                write!(f, "{}", format_rational(&a))?;
            } else {
                write!(f, "{}*{m}", format_rational(&a))?;
            }
        }
        Ok(())
    }
}

/// The substitution `(x, y, t) -> (x t^a, y t^b, t^n)` followed by division by `t^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseChangeSpec {
    pub degree: i64,
    pub twist: (i64, i64),
    pub cleared: i64,
}

impl BaseChangeSpec {
    pub fn plain(n: i64) -> Self {
        BaseChangeSpec { degree: n, twist: (0, 0), cleared: 0 }
    }

    pub fn identity() -> Self {
        Self::plain(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelsarteSurface {
    rows: [[u32; 4]; 4],
    coefficients: [Rational; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub degree: u32,
    #[serde(with = "crate::rational::as_string")]
    pub determinant: Rational,
    pub distinct_rows: bool,
}

impl DelsarteSurface {
    /// All coefficients 1. Fails when the row sums differ.
    pub fn from_rows(rows: [[u32; 4]; 4]) -> Result<Self> {
        Self::with_coefficients(rows, std::array::from_fn(|_| Rational::one()))
    }

    pub fn with_coefficients(rows: [[u32; 4]; 4], coefficients: [Rational; 4]) -> Result<Self> {
        let sums: Vec<u64> = rows.iter().map(|r| r.iter().map(|&x| x as u64).sum()).collect();
        if sums.iter().any(|&s| s != sums[0]) {
            return Err(Error::InconsistentDegree(sums));
        }
        if coefficients.iter().any(Zero::is_zero) {
            return Err(Error::Rejected("zero coefficient".into()));
        }
        Ok(DelsarteSurface { rows, coefficients })
    }

    /// Homogenizes affine monomials `x^a y^b t^c` to degree `max(a+b+c)` in `w`.
    pub fn from_affine(eq: &AffineEquation) -> Result<Self> {
        if eq.terms.len() != 4 {
            return Err(Error::Rejected(format!("expected 4 terms, got {}", eq.terms.len())));
        }
        let d = eq.terms.iter().map(|t| t.mono.x + t.mono.y + t.mono.t).max().unwrap();
        let rows = std::array::from_fn(|i| {
            let m = eq.terms[i].mono;
            [m.x, m.y, m.t, d - m.x - m.y - m.t]
        });
        Self::with_coefficients(rows, std::array::from_fn(|i| eq.terms[i].coeff.clone()))
    }

    pub fn rows(&self) -> &[[u32; 4]; 4] {
        &self.rows
    }

    pub fn coefficients(&self) -> &[Rational; 4] {
        &self.coefficients
    }

    pub fn degree(&self) -> u32 {
        self.rows[0].iter().sum()
    }

    pub fn all_ones(&self) -> bool {
        self.coefficients.iter().all(One::is_one)
    }

    pub fn require_all_ones(&self) -> Result<()> {
        if self.all_ones() {
            Ok(())
        } else {
            Err(Error::NeedsNormalization)
        }
    }

    pub fn exponent_matrix(&self) -> ExactMatrix {
        let r: Vec<[i64; 4]> = self.rows.iter().map(|r| r.map(i64::from)).collect();
        ExactMatrix::from_int_rows(&r)
    }

    pub fn validate(&self) -> ValidationReport {
        let det = self.exponent_matrix().determinant().expect("square");
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| self.rows[i] != self.rows[j]));
        ValidationReport { degree: self.degree(), determinant: det, distinct_rows: distinct }
    }

    /// Reorders columns: new column `j` is old column `perm[j]`.
    pub fn permute(&self, perm: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &p in &perm {
            if p > 3 || seen[p] {
                return Err(Error::Rejected(format!("not a permutation: {perm:?}")));
            }
            seen[p] = true;
        }
        let rows = self.rows.map(|r| perm.map(|p| r[p]));
        Ok(DelsarteSurface { rows, coefficients: self.coefficients.clone() })
    }

    pub fn affine_equation(&self) -> AffineEquation {
        AffineEquation {
            terms: (0..4)
                .map(|i| AffineTerm {
                    coeff: self.coefficients[i].clone(),
                    mono: Monomial3 { x: self.rows[i][0], y: self.rows[i][1], t: self.rows[i][2] },
                })
                .collect(),
        }
    }

    /// Applies `bc`, ignoring its recorded `cleared` field, and returns the
    /// resulting surface together with the t-power actually divided out.
    pub fn base_change(&self, bc: &BaseChangeSpec) -> Result<(DelsarteSurface, i64)> {
        if bc.degree == 0 {
            return Err(Error::Rejected("base change of degree 0".into()));
        }
        let (a, b) = bc.twist;
        let signed: Vec<(Rational, u32, u32, i64)> = self
            .affine_equation()
            .terms
            .iter()
            .map(|t| {
                let m = t.mono;
                (t.coeff.clone(), m.x, m.y, a * m.x as i64 + b * m.y as i64 + bc.degree * m.t as i64)
            })
            .collect();
        let (eq, e) = AffineEquation::with_signed_t(&signed);
        Ok((Self::from_affine(&eq)?, e))
    }

    pub fn apply_base_change(&self, bc: &BaseChangeSpec) -> Result<DelsarteSurface> {
        Ok(self.base_change(bc)?.0)
    }

    /// Exponent rows as a sorted list, ignoring term order.
    pub fn sorted_rows(&self) -> Vec<[u32; 4]> {
        let mut r = self.rows.to_vec();
        r.sort();
        r
    }
}

/// JSON input: `{"monomials": [[..4..] x4], "coefficients": ["p/q" x4]?, "permutation": [..4..]?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceInput {
    pub monomials: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<usize>>,
}

impl SurfaceInput {
    pub fn to_surface(&self) -> Result<DelsarteSurface> {
        if self.monomials.len() != 4 || self.monomials.iter().any(|r| r.len() != 4) {
            return Err(Error::Parse("`monomials` must be four arrays of four integers".into()));
        }
        let rows: [[u32; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| self.monomials[i][j]));
        let coeffs: [Rational; 4] = match &self.coefficients {
            None => std::array::from_fn(|_| Rational::one()),
            Some(c) if c.len() == 4 => {
                let parsed = c.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
                std::array::from_fn(|i| parsed[i].clone())
            }
            Some(_) => return Err(Error::Parse("`coefficients` must have four entries".into())),
        };
        let s = DelsarteSurface::with_coefficients(rows, coeffs)?;
        match &self.permutation {
            None => Ok(s),
            Some(p) if p.len() == 4 => s.permute([p[0], p[1], p[2], p[3]]),
            Some(_) => Err(Error::Parse("`permutation` must have four entries".into())),
        }
    }
}

pub fn bigint_det(s: &DelsarteSurface) -> BigInt {
    s.validate().determinant.to_integer()
}
