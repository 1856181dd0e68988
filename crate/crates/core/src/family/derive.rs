//! Reconstruction of the Birkhoff basis `ω_k = u^{a(k)} ω₀` from the
//! relations attached to the faces `Γ₀, …, Γₙ` of the Newton polytope.

use crate::algebra::{int, LaurentMatrix, LaurentPoly, Rational};
use crate::error::{Error, Result};
use crate::spectrum::{build_spectrum, Spectrum, Weights};

/// `c · x^p · u^a · ω₀`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSection {
    pub exponents: Vec<i64>,
    pub scalar: Rational,
    pub x_power: i32,
}

impl MonomialSection {
    /// `ω₀` itself.
    pub fn omega0(n: usize) -> Self {
        Self {
            exponents: vec![0; n],
            scalar: int(1),
            x_power: 0,
        }
    }

    pub fn is_monic(&self) -> bool {
        self.scalar == int(1) && self.x_power == 0
    }

    /// Product of two monomial factors.
    pub fn times(&self, other: &Self) -> Self {
        Self {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            scalar: &self.scalar * &other.scalar,
            x_power: self.x_power + other.x_power,
        }
    }
}

/// Linear functionals `φ_{Γ_j}` and multipliers `h_{Γ_j}` for `j = 0..n`.
#[derive(Clone, Debug)]
pub struct GammaData {
    weights: Vec<i64>,
    mu: i64,
}

impl GammaData {
    pub fn new(w: &Weights) -> Self {
        Self {
            weights: w.as_slice().iter().map(|&v| i64::from(v)).collect(),
            mu: w.mu() as i64,
        }
    }

    pub fn faces(&self) -> usize {
        self.weights.len() + 1
    }

    /// `φ_{Γ₀}(a) = Σ aᵢ`; for `j ≥ 1` the `j`-th coefficient becomes `1 − μ/w_j`.
    pub fn phi(&self, j: usize, a: &[i64]) -> Rational {
        let sum = int(a.iter().sum());
        if j == 0 {
            sum
        } else {
            sum - Rational::new((self.mu * a[j - 1]).into(), self.weights[j - 1].into())
        }
    }

    /// `h_{Γ₀} = −μx·u₀` with `u₀ = u^{−w}`, and `h_{Γ_j} = −(μ/w_j)·u_j`.
    pub fn h(&self, j: usize) -> MonomialSection {
        let n = self.weights.len();
        if j == 0 {
            MonomialSection {
                exponents: self.weights.iter().map(|w| -w).collect(),
                scalar: int(-self.mu),
                x_power: 1,
            }
        } else {
            let mut e = vec![0; n];
            e[j - 1] = 1;
            MonomialSection {
                exponents: e,
                scalar: -Rational::new(self.mu.into(), self.weights[j - 1].into()),
                x_power: 0,
            }
        }
    }

    /// Evaluates `φ_{Γ_j}` on the three monomial pieces of `F`: the `uᵢ`
    /// and `x·u₀`. On its face `Γ_j` the functional is `1`.
    pub fn on_defining_monomials(&self, j: usize) -> Vec<Rational> {
        let n = self.weights.len();
        let mut out: Vec<Rational> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                self.phi(j, &e)
            })
            .collect();
        out.push(self.phi(j, &self.h(0).exponents));
        out
    }
}

/// Cap on the number of closing schedules recorded.
pub const SCHEDULE_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct DerivedBasis {
    pub sections: Vec<MonomialSection>,
    /// `A₀(x)` read off the recursion `−(1/μ)(τ∂_τ + α_k)ω_k = τ c_k ω_{k+1}`.
    pub a0: LaurentMatrix,
    /// Face chosen at each step of the primary schedule.
    pub schedule: Vec<usize>,
    /// Every closing schedule found, primary first.
    pub all_schedules: Vec<Vec<usize>>,
    /// True when the search stopped at [`SCHEDULE_CAP`].
    pub truncated: bool,
}

struct Search<'a> {
    gamma: &'a GammaData,
    sp: &'a Spectrum,
    remaining: Vec<i64>,
    path: Vec<usize>,
    found: Vec<Vec<usize>>,
    truncated: bool,
}

impl Search<'_> {
    fn step(&mut self, a: &mut Vec<i64>) {
        if self.found.len() >= SCHEDULE_CAP {
            self.truncated = true;
            return;
        }
        let k = self.path.len();
        if k == self.sp.mu() {
            if a.iter().all(|&v| v == 0) {
                self.found.push(self.path.clone());
            }
            return;
        }
        let alpha = &self.sp.alpha()[k];
        for j in 0..self.gamma.faces() {
            if self.remaining[j] == 0 || self.gamma.phi(j, a) != *alpha {
                continue;
            }
            let delta = self.gamma.h(j).exponents;
            self.remaining[j] -= 1;
            self.path.push(j);
            a.iter_mut().zip(&delta).for_each(|(v, d)| *v += d);
            self.step(a);
            a.iter_mut().zip(&delta).for_each(|(v, d)| *v -= d);
            self.path.pop();
            self.remaining[j] += 1;
        }
    }
}

/// Walks the ladder `ω₀ → ω₁ → … → ω_{μ−1} → ω₀`, choosing at step `k` a face
/// `Γ_j` with `φ_{Γ_j}(a(k)) = α_k`.
///
/// Each face is used as many times as the exponent count allows (`Γ₀` once,
/// `Γ_j` exactly `w_j` times), so every schedule is finite; all schedules that
/// close are enumerated, trying `Γ₀` first.
pub fn derive_basis(w: &Weights) -> Result<DerivedBasis> {
    let gamma = GammaData::new(w);
    let sp = build_spectrum(w);
    let (mu, n) = (sp.mu(), sp.n());
    let remaining = std::iter::once(1)
        .chain(w.as_slice().iter().map(|&v| i64::from(v)))
        .collect();
    let mut search = Search {
        gamma: &gamma,
        sp: &sp,
        remaining,
        path: Vec::with_capacity(mu),
        found: Vec::new(),
        truncated: false,
    };
    search.step(&mut vec![0; n]);
    let Search {
        found, truncated, ..
    } = search;
    let schedule = found
        .first()
        .cloned()
        .ok_or_else(|| Error::DerivationFailed(format!("no closing schedule for weights {w}")))?;

    let mut sections = vec![MonomialSection::omega0(n)];
    let mut a0 = LaurentMatrix::zeros(mu, mu);
    let mu_q = int(mu as i64);
    for (k, &j) in schedule.iter().enumerate() {
        let h = gamma.h(j);
        let current = sections.last().expect("nonempty");
        // τ h ω_k = −μ τ c ω_{k+1}: the monic next section absorbs u^{Δa},
        // the matrix keeps the x-power and μ.
        let next = MonomialSection {
            exponents: current.times(&h).exponents,
            scalar: int(1),
            x_power: 0,
        };
        let entry = LaurentPoly::monomial(mu_q.clone(), h.x_power, 0);
        a0.set((k + 1) % mu, k, entry);
        if k + 1 < mu {
            sections.push(next);
        } else if next != MonomialSection::omega0(n) {
            return Err(Error::DerivationFailed(format!(
                "ladder for {w} does not return to ω₀"
            )));
        }
    }
    Ok(DerivedBasis {
        sections,
        a0,
        schedule,
        all_schedules: found,
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::Basis;
    use crate::family::build_a0;

    fn w(v: &[u32]) -> Weights {
        Weights::new(v.to_vec()).unwrap()
    }

    #[test]
    fn ladder_for_1_1() {
        let d = derive_basis(&w(&[1, 1])).unwrap();
        assert_eq!(d.sections.len(), 3);
        assert_eq!(d.sections[1].exponents, vec![-1, -1]);
        assert_eq!(d.a0, build_a0(&w(&[1, 1]), Basis::Omega).unwrap());
        assert!(
            d.all_schedules.len() >= 2,
            "ties expected: {:?}",
            d.all_schedules
        );
    }

    #[test]
    fn ladder_for_2_2_starts_with_gamma0() {
        let d = derive_basis(&w(&[2, 2])).unwrap();
        assert_eq!(d.schedule[0], 0);
        assert_eq!(d.sections[1].exponents, vec![-2, -2]);
        assert_eq!(d.a0, build_a0(&w(&[2, 2]), Basis::Omega).unwrap());
        assert!(d.sections.iter().all(MonomialSection::is_monic));
    }

    #[test]
    fn gamma_functionals_on_defining_monomials() {
        let g = GammaData::new(&w(&[2, 3]));
        // φ_{Γ₀} is 1 on u1, u2 and −Σw on x·u₀
        assert_eq!(g.on_defining_monomials(0), vec![int(1), int(1), int(-5)]);
        // φ_{Γ₁}: 1 − 6/2 = −2 on u1, 1 on u2, and 1 on x·u₀
        assert_eq!(g.on_defining_monomials(1), vec![int(-2), int(1), int(1)]);
        assert_eq!(g.on_defining_monomials(2), vec![int(1), int(-1), int(1)]);
    }
}
