use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::LaurentPoly;
use super::matrix::Matrix;
use super::ring::{Rational, Ring};
use crate::error::{Error, Result};

/// Univariate polynomial in `λ` with coefficients in a ring, lowest degree first.
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type RatPoly = Poly<Rational>;

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(T::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// `λ^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![T::zero(); k + 1];
        c[k] = T::one();
        Self { coeffs: c }
    }

    /// `∏ (λ − r)` over the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        roots.iter().fold(Self::new(vec![T::one()]), |acc, r| {
            acc.times(&Self::new(vec![r.negate(), T::one()]))
        })
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(T::is_one)
    }

    pub fn times(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_assign_ref(&a.times(b));
            }
        }
        Self::new(out)
    }

    /// Horner evaluation at `λ = t`.
    pub fn eval(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc.times(t).plus(c))
    }
}

impl Poly<LaurentPoly> {
    pub fn theta_free(&self) -> bool {
        self.coeffs.iter().all(LaurentPoly::theta_free)
    }

    /// The polynomial over ℚ when every coefficient is constant.
    pub fn to_rational(&self) -> Option<RatPoly> {
        let c: Option<Vec<Rational>> = self
            .coeffs
            .iter()
            .map(LaurentPoly::constant_value)
            .collect();
        c.map(Poly::new)
    }
}

impl RatPoly {
    /// Synthetic division by `λ − r`; returns quotient and remainder.
    pub fn div_linear(&self, r: &Rational) -> (Self, Rational) {
        if self.coeffs.is_empty() {
            return (self.clone(), <Rational as Ring>::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![<Rational as Ring>::zero(); n - 1];
        let mut carry = <Rational as Ring>::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &carry * r;
            if k == 0 {
                return (Self::new(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Rational roots with multiplicity, and the cofactor that has none.
    ///
    /// Candidates come from the rational root theorem; when the integer
    /// coefficients are too large to factor by trial division the search stops
    /// and the remaining factor is returned undecided.
    pub fn rational_roots(&self) -> (Vec<Rational>, RatPoly) {
        let mut roots = Vec::new();
        let mut p = self.clone();
        while p.degree().is_some_and(|d| d > 0) && Ring::is_zero(&p.coeffs[0]) {
            roots.push(<Rational as Ring>::zero());
            p = p.div_linear(&<Rational as Ring>::zero()).0;
        }
        loop {
            if p.degree().is_none_or(|d| d == 0) {
                return (roots, p);
            }
            let ints = p.integer_coefficients();
            let (Some(lead), Some(constant)) = (ints.last(), ints.first()) else {
                return (roots, p);
            };
            let (Some(ps), Some(qs)) = (divisors(constant), divisors(lead)) else {
                return (roots, p);
            };
            let mut found = None;
            'search: for q in &qs {
                for a in &ps {
                    for sign in [1, -1] {
                        let cand = Rational::new(BigInt::from(sign) * a, q.clone());
                        if Ring::is_zero(&p.eval(&cand)) {
                            found = Some(cand);
                            break 'search;
                        }
                    }
                }
            }
            match found {
                Some(r) => {
                    p = p.div_linear(&r).0;
                    roots.push(r);
                }
                None => return (roots, p),
            }
        }
    }

    fn integer_coefficients(&self) -> Vec<BigInt> {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|q| (q * Rational::from_integer(den.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|v| v / &g).collect()
    }
}

const TRIAL_DIVISION_LIMIT: u64 = 1 << 40;

/// Positive divisors of `|v|` for `0 < |v| <= 2^40`.
fn divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let n = v.abs().to_u64()?;
    if n == 0 || n > TRIAL_DIVISION_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

impl<T: Ring + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*λ")?,
                _ => write!(f, "({c})*λ^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Ring> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

/// Characteristic polynomial `det(λI − M)`, exact and monic of degree `μ`.
///
/// Uses Berkowitz's algorithm, which needs only ring operations, so it runs
/// unchanged over ℚ and over Laurent polynomials in `θ` (and `x`).
pub fn char_poly<T: Ring>(m: &Matrix<T>) -> Result<Poly<T>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "char_poly needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    // v holds the coefficients of the characteristic polynomial of the
    // leading r×r block, highest degree first.
    let mut v: Vec<T> = vec![T::one()];
    for r in 0..n {
        let a_rr = m.get(r, r);
        let row: Vec<T> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let mut col: Vec<T> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let lead = Matrix::from_fn(r, r, |i, j| m.get(i, j).clone());

        // Toeplitz column: 1, −a_rr, −R·C, −R·A·C, …, −R·A^{r−1}·C
        let mut t = Vec::with_capacity(r + 2);
        t.push(T::one());
        t.push(a_rr.negate());
        for _ in 0..r {
            let mut acc = T::zero();
            for (a, b) in row.iter().zip(&col) {
                if !a.is_zero() && !b.is_zero() {
                    acc.add_assign_ref(&a.times(b));
                }
            }
            t.push(acc.negate());
            col = lead.apply(&col);
        }

        let mut next = vec![T::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, vj) in v.iter().enumerate().take(i + 1) {
                let tij = &t[i - j];
                if !tij.is_zero() && !vj.is_zero() {
                    slot.add_assign_ref(&tij.times(vj));
                }
            }
        }
        v = next;
    }
    v.reverse();
    Ok(Poly::new(v))
}

/// Determinant via the constant term of the characteristic polynomial.
pub fn det_division_free<T: Ring>(m: &Matrix<T>) -> Result<T> {
    let p = char_poly(m)?;
    let c = p.coefficient(0);
    Ok(if m.rows().is_multiple_of(2) {
        c
    } else {
        c.negate()
    })
}
