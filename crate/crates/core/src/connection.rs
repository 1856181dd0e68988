//! Meromorphic connections in `(θ, x)`: gauge transforms, curvature, residues
//! along `x = 0`, flatness of the pairing, and the fractional `x^R`
//! conjugation that produces the flat basis.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::algebra::{
    char_poly, int, laurent_inverse, LaurentMatrix, LaurentPoly, Poly, RatPoly, Rational,
    RationalExponentMatrix, Ring,
};
use crate::check::{Check, CheckReport};
use crate::error::{Error, Result};

/// Label of the frame a matrix or connection is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    /// The Birkhoff basis `ω` over `ℂ[θ, x, x⁻¹]`.
    Omega,
    /// `ω^φ = ωP`, generating the extension with residue eigenvalues in `[0, 1)`.
    Phi,
    /// `ω^ψ = ωQ`, generating the extension with residue eigenvalues in `(−1, 0]`.
    Psi,
    /// `ω x^{−R}`, written in the ramified variable `t = x^{1/L}`.
    Flat,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::Omega, Basis::Phi, Basis::Psi, Basis::Flat];

    pub fn name(self) -> &'static str {
        match self {
            Basis::Omega => "omega",
            Basis::Phi => "phi",
            Basis::Psi => "psi",
            Basis::Flat => "flat",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega" | "ω" => Ok(Basis::Omega),
            "phi" | "φ" => Ok(Basis::Phi),
            "psi" | "ψ" => Ok(Basis::Psi),
            "flat" => Ok(Basis::Flat),
            other => Err(Error::UnsupportedBasis {
                basis: other.to_string(),
                reason: "unknown basis label".into(),
            }),
        }
    }
}

/// Connection matrix `Ω_θ dθ + Ω_x dx` in a chosen frame.
///
/// When `ramification = L > 1` the Laurent variable of the entries is
/// `t = x^{1/L}` and `omega_x` is the coefficient of `dt`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionForm {
    pub basis: Basis,
    pub ramification: u32,
    pub omega_theta: LaurentMatrix,
    pub omega_x: LaurentMatrix,
}

impl ConnectionForm {
    pub fn new(basis: Basis, omega_theta: LaurentMatrix, omega_x: LaurentMatrix) -> Result<Self> {
        if !omega_theta.is_square() || omega_theta.rows() != omega_x.rows() || !omega_x.is_square()
        {
            return Err(Error::DimensionMismatch(format!(
                "connection components {}x{} and {}x{}",
                omega_theta.rows(),
                omega_theta.cols(),
                omega_x.rows(),
                omega_x.cols()
            )));
        }
        Ok(Self {
            basis,
            ramification: 1,
            omega_theta,
            omega_x,
        })
    }

    pub fn size(&self) -> usize {
        self.omega_theta.rows()
    }

    /// Pole orders claimed by the normal form: `θ^{−2}` in `Ω_θ`, `θ^{−1}` and
    /// `x^{−1}` in `Ω_x`.
    pub fn has_normal_pole_orders(&self) -> bool {
        self.omega_theta.min_theta_exp().is_none_or(|m| m >= -2)
            && self.omega_x.min_theta_exp().is_none_or(|m| m >= -1)
            && self.omega_x.min_x_exp().is_none_or(|m| m >= -1)
    }

    /// `x·Ω_x` (in the ramified variable: `t·Ω_t`).
    pub fn log_x_part(&self) -> LaurentMatrix {
        self.omega_x.shift(1, 0)
    }

    /// Pulls the connection back along `x = t^k`.
    pub fn ramify(&self, k: u32) -> Self {
        assert!(k >= 1);
        let ki = k as i32;
        // dx = k t^{k−1} dt
        let omega_x = self
            .omega_x
            .ramify_x(ki)
            .shift(ki - 1, 0)
            .scale_rational(&int(k as i64));
        Self {
            basis: self.basis,
            ramification: self.ramification * k,
            omega_theta: self.omega_theta.ramify_x(ki),
            omega_x,
        }
    }
}

/// Inverts a diagonal matrix of monomials in `x`; errors otherwise.
fn diagonal_monomial_inverse(d: &LaurentMatrix) -> Result<LaurentMatrix> {
    if !d.is_square() || !d.is_diagonal() {
        return Err(Error::InvalidGauge("matrix is not diagonal".into()));
    }
    let mut inv = LaurentMatrix::zeros(d.rows(), d.rows());
    for i in 0..d.rows() {
        let Some((c, a, b)) = d.get(i, i).as_monomial() else {
            return Err(Error::InvalidGauge(format!(
                "entry ({i}, {i}) is not a nonzero monomial"
            )));
        };
        if b != 0 {
            return Err(Error::InvalidGauge(format!(
                "entry ({i}, {i}) depends on θ"
            )));
        }
        inv.set(i, i, LaurentPoly::monomial(int(1) / c, -a, 0));
    }
    Ok(inv)
}

/// Change of frame `ω ↦ ωD` by a diagonal monomial gauge `D(x)`.
pub fn gauge_transform(
    c: &ConnectionForm,
    d: &LaurentMatrix,
    target: Basis,
) -> Result<ConnectionForm> {
    if d.rows() != c.size() {
        return Err(Error::DimensionMismatch(format!(
            "gauge of size {} for a connection of size {}",
            d.rows(),
            c.size()
        )));
    }
    let d_inv = diagonal_monomial_inverse(d)?;
    let omega_theta = d_inv.times(&c.omega_theta).times(d);
    let omega_x = d_inv
        .times(&c.omega_x)
        .times(d)
        .plus(&d_inv.times(&d.d_dx()));
    Ok(ConnectionForm {
        basis: target,
        ramification: c.ramification,
        omega_theta,
        omega_x,
    })
}

/// Coefficient of `dθ ∧ dx` in `dΩ + Ω ∧ Ω`.
pub fn curvature(c: &ConnectionForm) -> LaurentMatrix {
    c.omega_x
        .d_dtheta()
        .minus(&c.omega_theta.d_dx())
        .plus(&c.omega_theta.commutator(&c.omega_x))
}

pub fn is_flat(c: &ConnectionForm) -> bool {
    curvature(c).is_zero()
}

/// The curvature split by powers of `θ`; empty exactly when flat.
pub fn curvature_components(c: &ConnectionForm) -> BTreeMap<i32, LaurentMatrix> {
    let k = curvature(c);
    let mut exps: Vec<i32> = k
        .entries()
        .flat_map(|(_, _, p)| p.terms().map(|(_, _, b)| b).collect::<Vec<_>>())
        .collect();
    exps.sort_unstable();
    exps.dedup();
    exps.into_iter()
        .map(|e| (e, k.theta_coefficient(e)))
        .collect()
}

/// Residue of `∇_x` along `x = 0` and what can be said about its spectrum.
#[derive(Clone, Debug)]
pub struct ResidueReport {
    /// `(x·Ω_x)|_{x=0}`, entries in `ℚ[θ, θ⁻¹]`.
    pub residue: LaurentMatrix,
    pub char_poly: Poly<LaurentPoly>,
    pub theta_free: bool,
    /// Ordering that makes the residue lower triangular, when its
    /// off-diagonal support is acyclic.
    pub triangular_order: Option<Vec<usize>>,
    /// Eigenvalues with multiplicity, when all are rational.
    pub eigenvalues: Option<Vec<Rational>>,
    /// Factor of the characteristic polynomial without rational roots.
    pub unresolved: Option<RatPoly>,
}

impl ResidueReport {
    pub fn sorted_eigenvalues(&self) -> Option<Vec<Rational>> {
        self.eigenvalues.clone().map(|mut v| {
            v.sort();
            v
        })
    }

    /// Whether every eigenvalue lies in `[0, 1)`; `None` when undecided.
    pub fn within_zero_one(&self) -> Option<bool> {
        let (zero, one) = (int(0), int(1));
        self.eigenvalues
            .as_ref()
            .map(|v| v.iter().all(|e| *e >= zero && *e < one))
    }

    /// Whether every eigenvalue lies in `(−1, 0]`; `None` when undecided.
    pub fn within_minus_one_zero(&self) -> Option<bool> {
        let (zero, m1) = (int(0), int(-1));
        self.eigenvalues
            .as_ref()
            .map(|v| v.iter().all(|e| *e > m1 && *e <= zero))
    }
}

/// Topological order of the graph with an edge `j → i` for each nonzero
/// off-diagonal entry `(i, j)`; `None` if it has a cycle.
fn triangular_order(m: &LaurentMatrix) -> Option<Vec<usize>> {
    let n = m.rows();
    let mut indegree = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, j) in m.support() {
        if i != j {
            out[j].push(i);
            indegree[i] += 1;
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &out[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

pub fn residue_x(c: &ConnectionForm) -> Result<ResidueReport> {
    let log_part = c.log_x_part();
    for (i, j, p) in log_part.entries() {
        if let Some(m) = p.min_x_exp() {
            if m < 0 {
                return Err(Error::PoleOrder {
                    row: i,
                    col: j,
                    order: 1 - m,
                });
            }
        }
    }
    // x d/dx = (1/L) t d/dt
    let residue = log_part
        .at_x_zero()
        .expect("no negative x powers")
        .scale_rational(&(int(1) / int(c.ramification as i64)));
    let cp = char_poly(&residue)?;
    let theta_free = cp.theta_free();

    let order = triangular_order(&residue);
    let mut eigenvalues = None;
    let mut unresolved = None;
    if let Some(ord) = &order {
        let diag: Option<Vec<Rational>> = ord
            .iter()
            .map(|&k| residue.get(k, k).constant_value())
            .collect();
        eigenvalues = diag;
    }
    if eigenvalues.is_none() {
        if let Some(rp) = cp.to_rational() {
            let (roots, rest) = rp.rational_roots();
            if rest.degree().is_some_and(|d| d > 0) {
                unresolved = Some(rest);
            } else {
                eigenvalues = Some(roots);
            }
        }
    }
    Ok(ResidueReport {
        residue,
        char_poly: cp,
        theta_free,
        triangular_order: order,
        eigenvalues,
        unresolved,
    })
}

/// Matrix of the `θ^n`-coefficient of a bilinear form `S` in a frame, with the
/// weight `n` and the sign rule `S(a, p(θ)b) = p(−θ) S(a, b)`.
#[derive(Clone, Debug)]
pub struct Pairing {
    basis: Basis,
    weight: usize,
    ramification: u32,
    g: LaurentMatrix,
    inverse: OnceLock<Result<LaurentMatrix>>,
}

impl PartialEq for Pairing {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
            && self.weight == other.weight
            && self.ramification == other.ramification
            && self.g == other.g
    }
}

impl Pairing {
    pub fn new(basis: Basis, weight: usize, g: LaurentMatrix) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::DimensionMismatch(
                "pairing matrix must be square".into(),
            ));
        }
        Ok(Self {
            basis,
            weight,
            ramification: 1,
            g,
            inverse: OnceLock::new(),
        })
    }

    pub fn with_ramification(mut self, k: u32) -> Self {
        self.ramification = k;
        self
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn matrix(&self) -> &LaurentMatrix {
        &self.g
    }

    pub fn size(&self) -> usize {
        self.g.rows()
    }

    /// `G⁻¹` over `ℚ(x)`, computed on first use and cached.
    pub fn inverse(&self) -> Result<&LaurentMatrix> {
        self.inverse
            .get_or_init(|| laurent_inverse(&self.g))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_symmetric(&self) -> bool {
        self.g == self.g.transpose()
    }

    /// The pairing in the frame `ωD`: entries `D_ii D_jj G_ij`.
    pub fn transport(&self, d: &LaurentMatrix, target: Basis) -> Result<Self> {
        if !d.is_diagonal() || d.rows() != self.size() {
            return Err(Error::InvalidGauge(
                "transport needs a diagonal matrix of matching size".into(),
            ));
        }
        let g = d.transpose().times(&self.g).times(d);
        Ok(Self::new(target, self.weight, g)?.with_ramification(self.ramification))
    }
}

/// Checks the component identities of `∇`-flatness of the pairing:
/// the `x`-direction identity for the logarithmic part, self-adjointness of
/// `A₀` and of the `θ⁻¹` part of `x·Ω_x`, and `A∞ + A∞* = n·I`.
pub fn pairing_flat_check(c: &ConnectionForm, p: &Pairing) -> Result<CheckReport> {
    if c.basis != p.basis || c.ramification != p.ramification {
        return Err(Error::BasisMismatch {
            connection: c.basis.to_string(),
            pairing: p.basis.to_string(),
        });
    }
    if c.size() != p.size() {
        return Err(Error::DimensionMismatch(
            "connection and pairing sizes differ".into(),
        ));
    }
    let g = p.matrix();
    let log_part = c.log_x_part();
    let r = log_part.theta_coefficient(0);
    let higgs = log_part.theta_coefficient(-1);
    let a0 = c.omega_theta.theta_coefficient(-2);
    let ainf = c.omega_theta.theta_coefficient(-1);
    let n = LaurentPoly::constant(int(p.weight as i64));

    let sym = |m: &LaurentMatrix| m.transpose().times(g) == g.times(m);

    let lhs = g.d_dx().shift(1, 0);
    let rhs = r.transpose().times(g).plus(&g.times(&r));
    let mut report = CheckReport::default();
    report.push(Check::new("pairing-x-flat", lhs == rhs));
    report.push(Check::new("pairing-a0-self-adjoint", sym(&a0)));
    report.push(Check::new("pairing-higgs-self-adjoint", sym(&higgs)));
    report.push(Check::new(
        "pairing-ainf-duality",
        ainf.transpose().times(g).plus(&g.times(&ainf)) == g.scale(&n),
    ));
    report.push(Check::new("pairing-symmetric", p.is_symmetric()));
    Ok(report)
}

/// `x^R · A₀(x) · x^{−R}`: entry `(i, j)` gains the exponent `R_ii − R_jj`.
///
/// Returns the conjugated matrix and whether its limit at `x = 0` exists
/// (no negative exponent).
pub fn flat_basis_conjugation(
    a0: &LaurentMatrix,
    r: &LaurentMatrix,
) -> Result<(RationalExponentMatrix, bool)> {
    let n = a0.rows();
    if !a0.is_square() || r.rows() != n || !r.is_diagonal() {
        return Err(Error::DimensionMismatch(
            "flat conjugation needs a square A0 and a diagonal R of the same size".into(),
        ));
    }
    let diag: Vec<Rational> = (0..n)
        .map(|i| {
            r.get(i, i)
                .constant_value()
                .ok_or(Error::NonMonomial { row: i, col: i })
        })
        .collect::<Result<_>>()?;
    let mut out = RationalExponentMatrix::zeros(n);
    for (i, j, p) in a0.entries() {
        if p.is_zero() {
            continue;
        }
        let (c, a, b) = p
            .as_monomial()
            .filter(|&(_, _, b)| b == 0)
            .ok_or(Error::NonMonomial { row: i, col: j })?;
        debug_assert_eq!(b, 0);
        let e = int(a as i64) + &diag[i] - &diag[j];
        out.set(i, j, Some((c, e)));
    }
    let zero = <Rational as Ring>::zero();
    let limit = out.nonzero().all(|(_, _, _, e)| *e >= zero);
    Ok((out, limit))
}
