use std::collections::BTreeMap;
use std::fmt;

use super::laurent::LaurentPoly;
use super::ring::{int, Rational, Ring};

/// Multivariate Laurent polynomial over ℚ in variables `x1, x2, ...`.
///
/// Exponent vectors are stored with trailing zeros trimmed, so the number of
/// variables is implicit and `zero()`/`one()` need no context.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Vec<i32>, Rational>,
}

fn trim(mut e: Vec<i32>) -> Vec<i32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl MPoly {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Vec::new())
    }

    pub fn monomial(c: Rational, exponents: Vec<i32>) -> Self {
        let mut p = Self::default();
        p.add_term(c, exponents);
        p
    }

    /// The variable `x_{index+1}` (0-based index).
    pub fn var(index: usize) -> Self {
        let mut e = vec![0; index + 1];
        e[index] = 1;
        Self::monomial(int(1), e)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponents: &[i32]) -> Rational {
        self.terms
            .get(&trim(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(<Rational as Ring>::zero)
    }

    fn add_term(&mut self, c: Rational, exponents: Vec<i32>) {
        if Ring::is_zero(&c) {
            return;
        }
        let e = trim(exponents);
        let slot = self
            .terms
            .entry(e.clone())
            .or_insert_with(<Rational as Ring>::zero);
        *slot += c;
        if Ring::is_zero(slot) {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if Ring::is_zero(c) {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// `∂/∂x_{i+1}`
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::default();
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(c * int(k as i64), e2);
        }
        out
    }

    /// `x_{i+1} ∂/∂x_{i+1}`: scales each term by its exponent in that variable.
    pub fn log_derivative(&self, i: usize) -> Self {
        let mut out = Self::default();
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0);
            out.add_term(c * int(k as i64), e.clone());
        }
        out
    }

    /// Largest total degree among the terms; `None` for zero.
    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn num_vars_used(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(<Rational as Ring>::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// Embeds a θ-free Laurent polynomial in `x` as a polynomial in `x1`.
    pub fn from_laurent_x(p: &LaurentPoly) -> Option<Self> {
        let mut out = Self::default();
        for (c, a, b) in p.terms() {
            if b != 0 {
                return None;
            }
            out.add_term(c.clone(), vec![a]);
        }
        Some(out)
    }
}

impl Ring for MPoly {
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
        for (e, c) in &rhs.terms {
            out.add_term(-c, e.clone());
        }
        out
    }
    fn times(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<i32> = (0..n)
                    .map(|i| e1.get(i).unwrap_or(&0) + e2.get(i).unwrap_or(&0))
                    .collect();
                out.add_term(c1 * c2, e);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        for (e, c) in &rhs.terms {
            self.add_term(c.clone(), e.clone());
        }
    }
}

impl fmt::Display for MPoly {
    /// Terms in decreasing total degree, variables written `x1, x2, ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: i32 = a.iter().sum();
            let db: i32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| {
                    if k == 1 {
                        format!("x{}", j + 1)
                    } else {
                        format!("x{}^{}", j + 1, k)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::rat;

    #[test]
    fn derivative_and_degree() {
        // 1/2 x1^2 x3
        let p = MPoly::monomial(rat(1, 2), vec![2, 0, 1]);
        assert_eq!(p.derivative(0), MPoly::monomial(int(1), vec![1, 0, 1]));
        assert!(p.derivative(1).is_zero());
        assert_eq!(p.log_derivative(2), p);
        assert_eq!(p.total_degree(), Some(3));
        assert_eq!(p.to_string(), "1/2*x1^2*x3");
    }

    #[test]
    fn trailing_zero_exponents_are_canonical() {
        let a = MPoly::monomial(int(2), vec![1, 0, 0]);
        let b = MPoly::monomial(int(2), vec![1]);
        assert_eq!(a, b);
        assert!(a.minus(&b).is_zero());
        assert_eq!(
            MPoly::var(1).times(&MPoly::var(0)),
            MPoly::monomial(int(1), vec![1, 1])
        );
    }
}
