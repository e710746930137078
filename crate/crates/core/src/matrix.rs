//! Dense exact matrices over Q and integer kernels.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| Rational::from_integer(x.into())));
        }
        ExactMatrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::Dimension("vector length".into()));
        }
        Ok((0..self.cols)
            .map(|j| (0..self.rows).map(|i| &v[i] * &self[(i, j)]).sum())
            .collect())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self[(r, c)].clone());
            }
        }
        ExactMatrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] / &piv;
                for j in c..n {
                    let v = &f * &m[(c, j)];
                    m[(r, j)] -= v;
                }
            }
        }
        Ok(det)
    }

    /// Gauss-Jordan inverse.
    pub fn invert(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !m[(r, c)].is_zero()).ok_or(Error::SingularMatrix)?;
            m.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = m[(c, c)].recip();
            for j in 0..n {
                m[(c, j)] *= &piv;
                inv[(c, j)] *= &piv;
            }
            for r in 0..n {
                if r == c || m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone();
                for j in 0..n {
                    let a = &f * &m[(c, j)];
                    m[(r, j)] -= a;
                    let b = &f * &inv[(c, j)];
                    inv[(r, j)] -= b;
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        integer_echelon(&self.to_integer_rows()).1.len()
    }

    /// Basis of `{x : M x = 0}` as primitive integer vectors.
    pub fn right_kernel(&self) -> Vec<IntegerVector> {
        let rows = self.to_integer_rows();
        let (ech, pivots) = integer_echelon(&rows);
        kernel_from_echelon(&ech, &pivots, self.cols)
    }

    /// Basis of `{x : x M = 0}` as primitive integer vectors.
    pub fn left_kernel(&self) -> Vec<IntegerVector> {
        self.transpose().right_kernel()
    }

    /// Each row scaled by the lcm of its denominators.
    fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for ExactMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  ({})", r.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form over Z, computed without division except by row
/// contents. Returns the nonzero rows and their pivot columns.
fn integer_echelon(rows: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        for i in 0..m.len() {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let g = m[r][c].gcd(&m[i][c]);
            let a = &m[r][c] / &g;
            let b = &m[i][c] / &g;
            let (top, rest) = if i < r {
                let (lo, hi) = m.split_at_mut(r);
                (&hi[0], &mut lo[i])
            } else {
                let (lo, hi) = m.split_at_mut(i);
                (&lo[r], &mut hi[0])
            };
            for j in 0..ncols {
                rest[j] = &a * &rest[j] - &b * &top[j];
            }
            make_primitive(rest);
        }
        make_primitive(&mut m[r]);
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

fn kernel_from_echelon(ech: &[Vec<BigInt>], pivots: &[usize], ncols: usize) -> Vec<IntegerVector> {
    let l = ech
        .iter()
        .zip(pivots)
        .fold(BigInt::one(), |acc, (row, &c)| acc.lcm(&row[c]));
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigInt::zero(); ncols];
            v[f] = l.clone();
            for (row, &c) in ech.iter().zip(pivots) {
                v[c] = -(&l / &row[c]) * &row[f];
            }
            IntegerVector::new(v).primitive()
        })
        .collect()
}

/// A vector of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerVector(pub Vec<BigInt>);

impl IntegerVector {
    pub fn new(v: Vec<BigInt>) -> Self {
        IntegerVector(v)
    }

    pub fn from_i64(v: &[i64]) -> Self {
        IntegerVector(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn gcd(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
    }

    /// Divides by the content; the zero vector is returned unchanged.
    pub fn primitive(mut self) -> Self {
        make_primitive(&mut self.0);
        self
    }

    /// Primitive, with the last nonzero entry positive.
    pub fn normalized(self) -> Self {
        let mut v = self.primitive();
        if let Some(x) = v.0.iter().rev().find(|x| !x.is_zero()) {
            if x.is_negative() {
                v.0.iter_mut().for_each(|e| *e = -&*e);
            }
        }
        v
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0.iter().map(|x| Rational::from_integer(x.clone())).collect()
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| x.try_into().ok()).collect()
    }
}

impl fmt::Debug for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// The generator of the one-dimensional left kernel of `m`, primitive with
/// positive last nonzero entry.
pub fn left_kernel_normalized(m: &ExactMatrix) -> Result<IntegerVector> {
    let ker = m.left_kernel();
    if ker.len() != 1 {
        return Err(Error::RankDeficient { dim: ker.len() });
    }
    Ok(ker.into_iter().next().unwrap().normalized())
}
