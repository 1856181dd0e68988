use crate::algebra::{int, LaurentMatrix, MPoly, PolyMatrix, Rational, Ring};
use crate::check::{Check, CheckReport};
use crate::connection::{Basis, ConnectionForm, Pairing};
use crate::error::{Error, Result};
use crate::family::{build_connection, build_pairing};
use crate::spectrum::Weights;

/// A Frobenius type structure over a parameter space with coordinates
/// `x1..xm`, written in a frame where the connection has matrices `nabla`.
#[derive(Clone, Debug, PartialEq)]
pub struct FTSData {
    pub m: usize,
    pub r0: PolyMatrix,
    pub rinf: PolyMatrix,
    pub phi: Vec<PolyMatrix>,
    pub nabla: Vec<PolyMatrix>,
    pub g: PolyMatrix,
    /// Constant in `R∞ + R∞* = r·I`.
    pub r: Rational,
    /// Direction `i` uses `x_i ∂_i` instead of `∂_i`.
    pub log_flags: Vec<bool>,
}

impl FTSData {
    fn size(&self) -> usize {
        self.r0.rows()
    }

    fn d(&self, i: usize, m: &PolyMatrix) -> PolyMatrix {
        if self.log_flags[i] {
            m.log_derivative(i)
        } else {
            m.derivative(i)
        }
    }

    fn validate(&self) -> Result<()> {
        let mu = self.size();
        let square = |m: &PolyMatrix| m.rows() == mu && m.cols() == mu;
        let ok = square(&self.r0)
            && square(&self.rinf)
            && square(&self.g)
            && self.phi.len() == self.m
            && self.nabla.len() == self.m
            && self.log_flags.len() == self.m
            && self.phi.iter().chain(&self.nabla).all(square);
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "Frobenius type structure of rank {mu} over {} parameters is inconsistent",
                self.m
            )))
        }
    }
}

fn first_nonzero(m: &PolyMatrix) -> Option<(usize, usize)> {
    m.entries()
        .find(|(_, _, p)| !p.is_zero())
        .map(|(i, j, _)| (i, j))
}

/// Records an identity `lhs = 0` evaluated for each index tuple, naming the
/// first tuple and entry where it fails.
fn record(
    report: &mut CheckReport,
    id: &str,
    cases: impl IntoIterator<Item = (String, PolyMatrix)>,
) {
    let failure = cases.into_iter().find_map(|(label, m)| {
        first_nonzero(&m).map(|(i, j)| format!("{label}: entry ({i}, {j})"))
    });
    let check = Check::new(id, failure.is_none());
    report.push(match failure {
        Some(f) => check.with_detail(f),
        None => check,
    });
}

/// Verifies every axiom of a Frobenius type structure as an exact identity of
/// matrices over the parameter ring.
pub fn fts_axiom_check(f: &FTSData) -> Result<CheckReport> {
    f.validate()?;
    let m = f.m;
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    let g = &f.g;
    let gt = |a: &PolyMatrix| a.transpose().times(g).minus(&g.times(a));
    let mut report = CheckReport::default();

    record(
        &mut report,
        "connection-flat",
        pairs.iter().filter(|(i, j)| i < j).map(|&(i, j)| {
            let (ni, nj) = (&f.nabla[i], &f.nabla[j]);
            let k = f.d(i, nj).minus(&f.d(j, ni)).plus(&ni.commutator(nj));
            (format!("i={i}, j={j}"), k)
        }),
    );
    record(
        &mut report,
        "rinf-flat",
        (0..m).map(|i| {
            let v = f.d(i, &f.rinf).plus(&f.nabla[i].commutator(&f.rinf));
            (format!("i={i}"), v)
        }),
    );
    record(
        &mut report,
        "higgs-commute",
        pairs
            .iter()
            .filter(|(i, j)| i < j)
            .map(|&(i, j)| (format!("i={i}, j={j}"), f.phi[i].commutator(&f.phi[j]))),
    );
    record(
        &mut report,
        "r0-higgs-commute",
        (0..m).map(|i| (format!("i={i}"), f.r0.commutator(&f.phi[i]))),
    );
    record(
        &mut report,
        "higgs-closed",
        pairs.iter().filter(|(i, j)| i < j).map(|&(i, j)| {
            let v = f
                .d(i, &f.phi[j])
                .minus(&f.d(j, &f.phi[i]))
                .plus(&f.nabla[i].commutator(&f.phi[j]))
                .minus(&f.nabla[j].commutator(&f.phi[i]));
            (format!("i={i}, j={j}"), v)
        }),
    );
    record(
        &mut report,
        "r0-higgs-rinf",
        (0..m).map(|i| {
            let v = f
                .d(i, &f.r0)
                .plus(&f.nabla[i].commutator(&f.r0))
                .plus(&f.phi[i])
                .minus(&f.phi[i].commutator(&f.rinf));
            (format!("i={i}"), v)
        }),
    );
    record(
        &mut report,
        "pairing-flat",
        (0..m).map(|i| {
            let n = &f.nabla[i];
            let v = f.d(i, g).minus(&n.transpose().times(g)).minus(&g.times(n));
            (format!("i={i}"), v)
        }),
    );
    record(
        &mut report,
        "higgs-self-adjoint",
        (0..m).map(|i| (format!("i={i}"), gt(&f.phi[i]))),
    );
    record(
        &mut report,
        "r0-self-adjoint",
        [(String::from("R0"), gt(&f.r0))],
    );
    let rg = g.scale(&MPoly::constant(f.r.clone()));
    record(
        &mut report,
        "rinf-duality",
        [(
            String::from("Rinf"),
            f.rinf
                .transpose()
                .times(g)
                .plus(&g.times(&f.rinf))
                .minus(&rg),
        )],
    );
    Ok(report)
}

fn to_poly(m: &LaurentMatrix, what: &str) -> Result<PolyMatrix> {
    m.to_poly_x()
        .ok_or_else(|| Error::Internal(format!("{what} depends on θ")))
}

/// The one-parameter logarithmic structure carried by a connection in
/// normal form: `R₀ = A₀`, `Φ_{x∂x}` the `θ⁻¹` part of `x·Ω_x`, the
/// connection the `θ⁰` part, and `R∞ = n·I − A∞` with `r = n`.
pub fn fts_from_connection(c: &ConnectionForm, p: &Pairing) -> Result<FTSData> {
    if c.basis != p.basis() || c.ramification != p.ramification() {
        return Err(Error::BasisMismatch {
            connection: c.basis.to_string(),
            pairing: p.basis().to_string(),
        });
    }
    let log_part = c.log_x_part();
    let within = |m: &LaurentMatrix, allowed: [i32; 2]| {
        m.entries()
            .all(|(_, _, q)| q.terms().all(|(_, _, b)| allowed.contains(&b)))
    };
    if !within(&c.omega_theta, [-2, -1]) || !within(&log_part, [-1, 0]) {
        return Err(Error::Internal(format!(
            "{} connection is not in normal form",
            c.basis
        )));
    }
    let n = p.weight() as i64;
    let size = c.size();
    let ainf = to_poly(&c.omega_theta.theta_coefficient(-1), "A∞")?;
    let rinf = PolyMatrix::identity(size)
        .scale(&MPoly::constant(int(n)))
        .minus(&ainf);
    Ok(FTSData {
        m: 1,
        r0: to_poly(&c.omega_theta.theta_coefficient(-2), "A0")?,
        rinf,
        phi: vec![to_poly(&log_part.theta_coefficient(-1), "Φ")?],
        nabla: vec![to_poly(&log_part.theta_coefficient(0), "R")?],
        g: to_poly(p.matrix(), "pairing")?,
        r: int(n),
        log_flags: vec![true],
    })
}

/// The family's structure in `basis` (where a pairing exists).
pub fn family_fts(w: &Weights, basis: Basis) -> Result<FTSData> {
    let c = build_connection(w, basis)?;
    let p = build_pairing(w, basis)?;
    fts_from_connection(&c, &p)
}
