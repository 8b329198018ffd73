//! Dense matrices over the rationals and over the rational function field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{int, Polynomial, Rational, RationalFunction};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// The submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let (ints, l) = self.integer_scaled();
        let det = bareiss_determinant(ints, self.rows);
        Ok(Rational::new(det, l.pow(self.rows as u32)))
    }

    /// Entries multiplied by the lcm `L` of all denominators, with `L`.
    fn integer_scaled(&self) -> (Vec<BigInt>, BigInt) {
        let l = self
            .data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = self
            .data
            .iter()
            .map(|x| (x * int(l.clone())).to_integer())
            .collect();
        (ints, l)
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Fraction-free Gaussian elimination on a row-major `n x n` integer
/// matrix. Every intermediate division is exact.
pub fn bareiss_determinant(mut a: Vec<BigInt>, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = !sign;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let aik = a[i * n + k].clone();
            for j in k + 1..n {
                let v = (&a[i * n + j] * &pivot - &aik * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
        }
        prev = pivot;
    }
    let det = a[n * n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// `det(M - xI)`, computed by evaluating integer determinants at `dim + 1`
/// points and interpolating.
pub fn charpoly(m: &RationalMatrix) -> Result<Polynomial> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    let (ints, l) = m.integer_scaled();
    // det(L*M - y I) at y = 0..=n
    let values: Vec<BigInt> = (0..=n)
        .into_par_iter()
        .map(|y| {
            let mut a = ints.clone();
            let y = BigInt::from(y);
            for i in 0..n {
                a[i * n + i] -= &y;
            }
            bareiss_determinant(a, n)
        })
        .collect();
    let in_y = newton_interpolate(&values);
    // substitute y = L x and divide by L^n
    let lr = int(l);
    let mut scale = Rational::one();
    let ln = lr.pow(n as i32);
    let coeffs = in_y
        .coeffs()
        .iter()
        .map(|c| {
            let v = c * &scale / &ln;
            scale *= &lr;
            v
        })
        .collect();
    Ok(Polynomial::new(coeffs))
}

/// The polynomial through `(i, values[i])` for `i = 0..values.len()`.
fn newton_interpolate(values: &[BigInt]) -> Polynomial {
    let n = values.len();
    let mut diffs: Vec<Rational> = values.iter().map(|v| int(v.clone())).collect();
    let mut coef = Vec::with_capacity(n);
    for level in 0..n {
        coef.push(diffs[0].clone());
        let next: Vec<Rational> = diffs
            .windows(2)
            .map(|w| (&w[1] - &w[0]) / int(level as i64 + 1))
            .collect();
        diffs = next;
    }
    // sum coef[k] * prod_{j<k} (x - j), Horner from the top
    let mut acc = Polynomial::zero();
    for k in (0..n).rev() {
        let factor = Polynomial::new(vec![int(-(k as i64)), Rational::one()]);
        acc = &(&acc * &factor) + &Polynomial::constant(coef[k].clone());
    }
    acc
}

/// Dense matrix over the rational function field `Q(z)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FunctionMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RationalFunction>,
}

impl FunctionMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FunctionMatrix {
            rows,
            cols,
            data: vec![RationalFunction::zero(); rows * cols],
        }
    }

    pub fn from_rational(m: &RationalMatrix) -> Self {
        FunctionMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.data.iter().cloned().map(RationalFunction::constant).collect(),
        }
    }

    /// `M - zI` for a square rational matrix.
    pub fn shifted(m: &RationalMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
        }
        let mut out = Self::from_rational(m);
        let z = RationalFunction::from_poly(Polynomial::x());
        for i in 0..m.rows {
            let v = out.get(i, i) - &z;
            out.set(i, i, v);
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RationalFunction) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &FunctionMatrix) -> Result<FunctionMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = FunctionMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = RationalFunction::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &FunctionMatrix) -> Result<FunctionMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        Ok(FunctionMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        })
    }

    /// Solves `self * X = rhs` by Gauss-Jordan elimination over `Q(z)`.
    pub fn solve(&self, rhs: &FunctionMatrix) -> Result<FunctionMatrix> {
        let n = self.rows;
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        if rhs.rows != n {
            return Err(Error::Dimension("right-hand side row count".into()));
        }
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let pivot = (col..n)
                .filter(|&r| !a.get(r, col).is_zero())
                .min_by_key(|&r| a.get(r, col).degree())
                .ok_or(Error::Singular)?;
            if pivot != col {
                a.swap_rows(pivot, col);
                b.swap_rows(pivot, col);
            }
            let inv = a.get(col, col).recip()?;
            a.scale_row(col, &inv);
            b.scale_row(col, &inv);
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                a.axpy_row(r, col, &f);
                b.axpy_row(r, col, &f);
            }
        }
        Ok(b)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn scale_row(&mut self, i: usize, s: &RationalFunction) {
        for c in 0..self.cols {
            let v = self.get(i, c) * s;
            self.set(i, c, v);
        }
    }

    /// row[dst] -= f * row[src]
    fn axpy_row(&mut self, dst: usize, src: usize, f: &RationalFunction) {
        for c in 0..self.cols {
            let s = self.get(src, c);
            if s.is_zero() {
                continue;
            }
            let v = self.get(dst, c) - &(f * s);
            self.set(dst, c, v);
        }
    }
}
