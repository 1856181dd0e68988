use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{int, Rational, Ring};

/// Laurent polynomial in `x` and `θ` with exact rational coefficients.
///
/// Terms are keyed by `(x_exp, theta_exp)`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<(i32, i32), Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, x_exp: i32, theta_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !Ring::is_zero(&c) {
            terms.insert((x_exp, theta_exp), c);
        }
        Self { terms }
    }

    /// `x^k`
    pub fn x_pow(k: i32) -> Self {
        Self::monomial(int(1), k, 0)
    }

    /// `θ^k`
    pub fn theta_pow(k: i32) -> Self {
        Self::monomial(int(1), 0, k)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, i32, i32)>) -> Self {
        let mut p = Self::zero();
        for (c, a, b) in terms {
            p.add_term(c, a, b);
        }
        p
    }

    /// Iterates `(coefficient, x_exp, theta_exp)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, i32, i32)> {
        self.terms.iter().map(|(&(a, b), c)| (c, a, b))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x_exp: i32, theta_exp: i32) -> Rational {
        self.terms
            .get(&(x_exp, theta_exp))
            .cloned()
            .unwrap_or_else(<Rational as Ring>::zero)
    }

    fn add_term(&mut self, c: Rational, x_exp: i32, theta_exp: i32) {
        if Ring::is_zero(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((x_exp, theta_exp)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if Ring::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    /// The value if the polynomial is a constant (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(<Rational as Ring>::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// `(c, x_exp, theta_exp)` if the polynomial is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(Rational, i32, i32)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(a, b), c) = self.terms.iter().next()?;
        Some((c.clone(), a, b))
    }

    pub fn theta_free(&self) -> bool {
        self.terms.keys().all(|&(_, b)| b == 0)
    }

    pub fn x_free(&self) -> bool {
        self.terms.keys().all(|&(a, _)| a == 0)
    }

    /// Lowest power of `x` present; `None` for the zero polynomial.
    pub fn min_x_exp(&self) -> Option<i32> {
        self.terms.keys().map(|&(a, _)| a).min()
    }

    pub fn min_theta_exp(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, b)| b).min()
    }

    pub fn max_theta_exp(&self) -> Option<i32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if Ring::is_zero(c) {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `x^dx θ^dt`.
    pub fn shift(&self, dx: i32, dt: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), v)| ((a + dx, b + dt), v.clone()))
                .collect(),
        }
    }

    /// Formal `d/dx`, valid for negative exponents as well.
    pub fn d_dx(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(c * int(a as i64), a - 1, b);
        }
        out
    }

    pub fn d_dtheta(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(c * int(b as i64), a, b - 1);
        }
        out
    }

    /// Substitution `θ ↦ −θ`.
    pub fn flip_theta(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a, b), if b % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        }
    }

    /// Substitution `x ↦ x^k` for `k >= 1`.
    pub fn ramify_x(&self, k: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a * k, b), c.clone()))
                .collect(),
        }
    }

    /// Value at `x = 0`, defined only when no negative power of `x` survives.
    pub fn at_x_zero(&self) -> Option<Self> {
        if self.min_x_exp().is_some_and(|m| m < 0) {
            return None;
        }
        Some(Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(a, _), _)| a == 0)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        })
    }

    /// The coefficient of `θ^k`, as a polynomial in `x` alone.
    pub fn theta_coefficient(&self, k: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, b), _)| b == k)
                .map(|(&(a, _), c)| ((a, 0), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at rational `x` and `θ` (both nonzero when negative powers occur).
    pub fn evaluate(&self, x: &Rational, theta: &Rational) -> Rational {
        let mut acc = <Rational as Ring>::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * pow_i32(x, a) * pow_i32(theta, b);
        }
        acc
    }
}

fn pow_i32(q: &Rational, e: i32) -> Rational {
    use num_traits::Pow;
    Pow::pow(q, e)
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(int(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
    fn minus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(-c, a, b);
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(c1 * c2, a1 + a2, b1 + b2);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(c.clone(), a, b);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.plus(rhs)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.minus(rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.times(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.negate()
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            match a {
                0 => {}
                1 => write!(f, "*x")?,
                _ => write!(f, "*x^{a}")?,
            }
            match b {
                0 => {}
                1 => write!(f, "*θ")?,
                _ => write!(f, "*θ^{b}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;

    #[test]
    fn arithmetic_cancels_to_zero() {
        let p = LaurentPoly::from_terms([(int(2), 1, -1), (rat(1, 2), -1, 0)]);
        assert!(p.minus(&p).is_zero());
        assert_eq!(p.num_terms(), 2);
        let q = p.times(&LaurentPoly::x_pow(1));
        assert_eq!(q.coefficient(2, -1), int(2));
        assert_eq!(q.coefficient(0, 0), rat(1, 2));
    }

    #[test]
    fn derivatives_handle_negative_exponents() {
        let p = LaurentPoly::monomial(int(3), -2, -1);
        assert_eq!(p.d_dx(), LaurentPoly::monomial(int(-6), -3, -1));
        assert_eq!(p.d_dtheta(), LaurentPoly::monomial(int(-3), -2, -2));
        assert!(LaurentPoly::constant(int(4)).d_dx().is_zero());
    }

    #[test]
    fn x_zero_substitution() {
        let p = LaurentPoly::from_terms([(int(1), 0, -1), (int(5), 1, 0)]);
        assert_eq!(p.at_x_zero().unwrap(), LaurentPoly::theta_pow(-1));
        assert!(LaurentPoly::x_pow(-1).at_x_zero().is_none());
        assert!(LaurentPoly::zero().at_x_zero().unwrap().is_zero());
    }

    #[test]
    fn theta_flip_signs_odd_degrees() {
        let p = LaurentPoly::from_terms([(int(1), 0, -1), (int(1), 0, 2)]);
        let q = p.flip_theta();
        assert_eq!(q.coefficient(0, -1), int(-1));
        assert_eq!(q.coefficient(0, 2), int(1));
    }
}
