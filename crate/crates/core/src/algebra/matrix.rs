use std::fmt;

use super::laurent::LaurentPoly;
use super::mpoly::MPoly;
use super::ring::{Rational, Ring};

/// Dense row-major matrix over a commutative ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMatrix = Matrix<Rational>;
pub type LaurentMatrix = Matrix<LaurentPoly>;
pub type PolyMatrix = Matrix<MPoly>;

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn diagonal(entries: Vec<T>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let c = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / c, k % c, v))
    }

    pub fn map<U: Ring>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Ring>(&self, mut f: impl FnMut(&T) -> Option<U>) -> Option<Matrix<U>> {
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            data.push(f(v)?);
        }
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(i, j, v)| i == j || v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.plus(b))
                .collect(),
        }
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.minus(b))
                .collect(),
        }
    }

    pub fn negate(&self) -> Self {
        self.map(T::negate)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.times(c))
    }

    /// Sparse-aware product: zero entries of `self` are skipped.
    pub fn times(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx].add_assign_ref(&a.times(b));
                }
            }
        }
        out
    }

    /// `self · v` for a column vector.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_assign_ref(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    /// `[self, rhs] = self·rhs − rhs·self`
    pub fn commutator(&self, rhs: &Self) -> Self {
        self.times(rhs).minus(&rhs.times(self))
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.times(self);
        }
        out
    }

    /// Principal submatrix on the given indices.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| {
            self.get(idx[i], idx[j]).clone()
        })
    }

    /// Positions of nonzero entries.
    pub fn support(&self) -> Vec<(usize, usize)> {
        self.entries()
            .filter(|(_, _, v)| !v.is_zero())
            .map(|(i, j, _)| (i, j))
            .collect()
    }
}

impl QMatrix {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| super::ring::int(v)).collect())
                .collect(),
        )
    }

    pub fn to_laurent(&self) -> LaurentMatrix {
        self.map(|q| LaurentPoly::constant(q.clone()))
    }

    pub fn to_poly(&self) -> PolyMatrix {
        self.map(|q| MPoly::constant(q.clone()))
    }
}

impl LaurentMatrix {
    pub fn d_dx(&self) -> Self {
        self.map(LaurentPoly::d_dx)
    }

    pub fn d_dtheta(&self) -> Self {
        self.map(LaurentPoly::d_dtheta)
    }

    pub fn flip_theta(&self) -> Self {
        self.map(LaurentPoly::flip_theta)
    }

    pub fn ramify_x(&self, k: i32) -> Self {
        self.map(|p| p.ramify_x(k))
    }

    pub fn shift(&self, dx: i32, dt: i32) -> Self {
        self.map(|p| p.shift(dx, dt))
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Entry-wise `x = 0`; `None` if some entry has a negative power of `x`.
    pub fn at_x_zero(&self) -> Option<Self> {
        self.try_map(LaurentPoly::at_x_zero)
    }

    pub fn theta_coefficient(&self, k: i32) -> Self {
        self.map(|p| p.theta_coefficient(k))
    }

    /// The matrix over ℚ if every entry is constant.
    pub fn to_rational(&self) -> Option<QMatrix> {
        self.try_map(LaurentPoly::constant_value)
    }

    /// The θ-free matrix as polynomials in `x1`.
    pub fn to_poly_x(&self) -> Option<PolyMatrix> {
        self.try_map(MPoly::from_laurent_x)
    }

    pub fn theta_free(&self) -> bool {
        self.data.iter().all(LaurentPoly::theta_free)
    }

    /// Smallest power of `x` over all entries.
    pub fn min_x_exp(&self) -> Option<i32> {
        self.data.iter().filter_map(LaurentPoly::min_x_exp).min()
    }

    pub fn min_theta_exp(&self) -> Option<i32> {
        self.data
            .iter()
            .filter_map(LaurentPoly::min_theta_exp)
            .min()
    }

    pub fn evaluate(&self, x: &Rational, theta: &Rational) -> QMatrix {
        self.map(|p| p.evaluate(x, theta))
    }
}

impl PolyMatrix {
    pub fn derivative(&self, i: usize) -> Self {
        self.map(|p| p.derivative(i))
    }

    pub fn log_derivative(&self, i: usize) -> Self {
        self.map(|p| p.log_derivative(i))
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Matrix whose entries are single monomials `c·x^e` with rational exponent `e`.
///
/// Kept apart from [`LaurentMatrix`] so that fractional powers of `x` never
/// enter Laurent arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalExponentMatrix {
    size: usize,
    entries: Vec<Option<(Rational, Rational)>>,
}

impl RationalExponentMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            entries: vec![None; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `(coefficient, x_exponent)` or `None` for a zero entry.
    pub fn get(&self, i: usize, j: usize) -> Option<&(Rational, Rational)> {
        self.entries[i * self.size + j].as_ref()
    }

    pub fn set(&mut self, i: usize, j: usize, term: Option<(Rational, Rational)>) {
        let term = term.filter(|(c, _)| !Ring::is_zero(c));
        self.entries[i * self.size + j] = term;
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &Rational, &Rational)> {
        let n = self.size;
        self.entries
            .iter()
            .enumerate()
            .filter_map(move |(k, e)| e.as_ref().map(|(c, x)| (k / n, k % n, c, x)))
    }

    pub fn min_exponent(&self) -> Option<Rational> {
        self.nonzero().map(|(_, _, _, e)| e.clone()).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::int;

    #[test]
    fn product_and_commutator() {
        let a = QMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let b = QMatrix::from_ints(&[&[0, 0], &[1, 0]]);
        assert_eq!(a.times(&b), QMatrix::from_ints(&[&[1, 0], &[0, 0]]));
        assert_eq!(a.commutator(&b), QMatrix::from_ints(&[&[1, 0], &[0, -1]]));
        assert!(a.pow(2).is_zero());
        assert_eq!(a.apply(&[int(3), int(4)]), vec![int(4), int(0)]);
    }

    #[test]
    fn laurent_matrix_x_zero() {
        let mut m = LaurentMatrix::zeros(2, 2);
        m.set(0, 1, LaurentPoly::x_pow(1));
        m.set(1, 0, LaurentPoly::constant(int(2)));
        let z = m.at_x_zero().unwrap();
        assert!(z.get(0, 1).is_zero());
        assert_eq!(
            z.to_rational().unwrap(),
            QMatrix::from_ints(&[&[0, 0], &[2, 0]])
        );
        m.set(1, 1, LaurentPoly::x_pow(-1));
        assert!(m.at_x_zero().is_none());
    }
}
