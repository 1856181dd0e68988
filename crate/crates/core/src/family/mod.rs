//! Closed-form Birkhoff normal form of the family in the bases `ω`, `φ`, `ψ`
//! and the flat basis, the gauges between them, and the pairings.

mod derive;

pub use derive::{derive_basis, DerivedBasis, GammaData, MonomialSection, SCHEDULE_CAP};

use num_integer::Integer;

use crate::algebra::{int, LaurentMatrix, LaurentPoly, QMatrix, Rational};
use crate::connection::{gauge_transform, Basis, ConnectionForm, Pairing};
use crate::error::{Error, Result};
use crate::spectrum::{build_spectrum, Spectrum, Weights};

fn flat_unsupported(what: &str) -> Error {
    Error::UnsupportedBasis {
        basis: Basis::Flat.to_string(),
        reason: format!("{what} has fractional powers of x; use build_connection"),
    }
}

fn mu_x(mu: usize) -> LaurentPoly {
    LaurentPoly::monomial(int(mu as i64), 1, 0)
}

fn mu_c(mu: usize) -> LaurentPoly {
    LaurentPoly::constant(int(mu as i64))
}

/// `A₀(x)`: a single cycle `ω_k ↦ ω_{k+1}` scaled by `μ`, one entry of
/// which carries the factor `x`.
pub fn build_a0(w: &Weights, basis: Basis) -> Result<LaurentMatrix> {
    let (mu, n) = (w.mu(), w.n());
    // row index of the cycle entry carrying x; row 0 is the corner
    let x_row = match basis {
        Basis::Omega => 1,
        Basis::Phi => 0,
        Basis::Psi if mu >= n + 2 => n + 1,
        Basis::Psi => 0,
        Basis::Flat => return Err(flat_unsupported("A0")),
    };
    let mut a = LaurentMatrix::zeros(mu, mu);
    for row in 0..mu {
        let col = (row + mu - 1) % mu;
        a.set(row, col, if row == x_row { mu_x(mu) } else { mu_c(mu) });
    }
    Ok(a)
}

/// `A₀ᵒ`, the punctual matrix: every cycle entry equal to `μ`.
pub fn build_a0_punctual(w: &Weights) -> QMatrix {
    let mu = w.mu();
    QMatrix::from_fn(mu, mu, |i, j| {
        if (j + 1) % mu == i {
            int(mu as i64)
        } else {
            int(0)
        }
    })
}

/// Diagonal of `R` in the given basis.
pub fn r_diagonal(sp: &Spectrum, basis: Basis) -> Result<Vec<Rational>> {
    let (mu, n) = (sp.mu(), sp.n());
    let mu_q = int(mu as i64);
    let omega: Vec<Rational> = (0..mu)
        .map(|k| match k {
            0 => int(0),
            k if k <= n => int(-1),
            k => -(&sp.s()[mu + n - k] / &mu_q),
        })
        .collect();
    Ok(match basis {
        Basis::Omega => omega,
        // P⁻¹dP adds 1 on indices 1..μ−1
        Basis::Phi => omega
            .into_iter()
            .enumerate()
            .map(|(k, r)| if k == 0 { r } else { r + int(1) })
            .collect(),
        // Q⁻¹dQ adds 1 on indices 1..=n
        Basis::Psi => omega
            .into_iter()
            .enumerate()
            .map(|(k, r)| if (1..=n).contains(&k) { r + int(1) } else { r })
            .collect(),
        Basis::Flat => return Err(flat_unsupported("R")),
    })
}

pub fn build_r(w: &Weights, basis: Basis) -> Result<LaurentMatrix> {
    let sp = build_spectrum(w);
    let d = r_diagonal(&sp, basis)?;
    Ok(LaurentMatrix::diagonal(
        d.into_iter().map(LaurentPoly::constant).collect(),
    ))
}

/// `A∞ = diag(α₀, …, α_{μ−1})`, the same in every basis.
pub fn build_a_inf(sp: &Spectrum) -> LaurentMatrix {
    LaurentMatrix::diagonal(
        sp.alpha()
            .iter()
            .cloned()
            .map(LaurentPoly::constant)
            .collect(),
    )
}

/// `P = diag(1, x, …, x)`, so that `ω^φ = ωP`.
pub fn gauge_p(w: &Weights) -> LaurentMatrix {
    let mu = w.mu();
    LaurentMatrix::diagonal(
        (0..mu)
            .map(|k| LaurentPoly::x_pow(i32::from(k > 0)))
            .collect(),
    )
}

/// `Q = diag(1, x (n times), 1, …, 1)`, so that `ω^ψ = ωQ`.
pub fn gauge_q(w: &Weights) -> LaurentMatrix {
    let (mu, n) = (w.mu(), w.n());
    LaurentMatrix::diagonal(
        (0..mu)
            .map(|k| LaurentPoly::x_pow(i32::from((1..=n).contains(&k))))
            .collect(),
    )
}

/// The ramification `L` (common denominator of the `R` entries) and the gauge
/// `diag(t^{−L·R_kk})` taking the `L`-ramified `ω`-frame to the flat frame.
pub fn flat_gauge(w: &Weights) -> (u32, LaurentMatrix) {
    let sp = build_spectrum(w);
    let r = r_diagonal(&sp, Basis::Omega).expect("omega is supported");
    let l = r.iter().fold(1u64, |acc, q| {
        acc.lcm(&u64::try_from(q.denom().clone()).expect("denominator divides μ"))
    });
    let lq = int(l as i64);
    let d = r
        .iter()
        .map(|q| {
            let e = -(q * &lq);
            let e = i32::try_from(e.to_integer()).expect("exponent fits");
            LaurentPoly::x_pow(e)
        })
        .collect();
    (l as u32, LaurentMatrix::diagonal(d))
}

fn assemble(w: &Weights, basis: Basis) -> Result<ConnectionForm> {
    let sp = build_spectrum(w);
    let a0 = build_a0(w, basis)?;
    let r = build_r(w, basis)?;
    let ainf = build_a_inf(&sp);
    let omega_theta = a0.shift(0, -2).plus(&ainf.shift(0, -1));
    let inv_mu = int(1) / int(sp.mu() as i64);
    let omega_x = r
        .minus(&a0.shift(0, -1).scale_rational(&inv_mu))
        .shift(-1, 0);
    ConnectionForm::new(basis, omega_theta, omega_x)
}

/// `(A₀/θ + A∞) dθ/θ + (R − A₀/(μθ)) dx/x` in the requested frame. The flat
/// frame is produced by ramifying `x = t^L` and gauging by `x^{−R}`.
pub fn build_connection(w: &Weights, basis: Basis) -> Result<ConnectionForm> {
    match basis {
        Basis::Flat => {
            let (l, d) = flat_gauge(w);
            let omega = assemble(w, Basis::Omega)?.ramify(l);
            gauge_transform(&omega, &d, Basis::Flat)
        }
        b => assemble(w, b),
    }
}

/// The `θⁿ`-coefficient matrix of `S` in the frame `basis`.
pub fn build_pairing(w: &Weights, basis: Basis) -> Result<Pairing> {
    let (mu, n) = (w.mu(), w.n());
    // exponents of x on the low block (k + j = n) and high block (k + j = μ + n)
    let (edge, inner, high) = match basis {
        Basis::Omega => (-1, -2, -1),
        Basis::Phi => (0, 0, 1),
        Basis::Flat => (0, 0, 0),
        Basis::Psi => {
            return Err(Error::UnsupportedBasis {
                basis: basis.to_string(),
                reason: "no pairing is specified in the psi frame".into(),
            })
        }
    };
    let mut g = LaurentMatrix::zeros(mu, mu);
    for k in 0..=n {
        let e = if k == 0 || k == n { edge } else { inner };
        g.set(k, n - k, LaurentPoly::x_pow(e));
    }
    for k in n + 1..mu {
        g.set(k, mu + n - k, LaurentPoly::x_pow(high));
    }
    let p = Pairing::new(basis, n, g)?;
    Ok(match basis {
        Basis::Flat => p.with_ramification(flat_gauge(w).0),
        _ => p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::connection::{curvature, pairing_flat_check, residue_x};

    fn w(v: &[u32]) -> Weights {
        Weights::new(v.to_vec()).unwrap()
    }

    fn diag_of(m: &LaurentMatrix) -> Vec<Rational> {
        (0..m.rows())
            .map(|k| m.get(k, k).constant_value().unwrap())
            .collect()
    }

    #[test]
    fn a0_patterns_for_2_2() {
        let ww = w(&[2, 2]);
        let psi = build_a0(&ww, Basis::Psi).unwrap();
        assert_eq!(psi.get(3, 2), &mu_x(5));
        assert_eq!(psi.get(0, 4), &mu_c(5));
        assert_eq!(psi.get(1, 0), &mu_c(5));
        let omega = build_a0(&ww, Basis::Omega).unwrap();
        assert_eq!(omega.get(1, 0), &mu_x(5));
        assert_eq!(omega.support().len(), 5);
        assert_eq!(omega.evaluate(&int(1), &int(1)), build_a0_punctual(&ww));
    }

    #[test]
    fn a0_phi_for_1_1() {
        let phi = build_a0(&w(&[1, 1]), Basis::Phi).unwrap();
        assert_eq!(phi.get(0, 2), &mu_x(3));
        assert_eq!(phi.get(1, 0), &mu_c(3));
        assert_eq!(phi.get(2, 1), &mu_c(3));
    }

    #[test]
    fn r_for_2_2() {
        let ww = w(&[2, 2]);
        let h = rat(1, 2);
        assert_eq!(
            diag_of(&build_r(&ww, Basis::Omega).unwrap()),
            vec![int(0), int(-1), int(-1), -h.clone(), -h.clone()]
        );
        assert_eq!(
            diag_of(&build_r(&ww, Basis::Phi).unwrap()),
            vec![int(0), int(0), int(0), h.clone(), h.clone()]
        );
        assert_eq!(
            diag_of(&build_r(&ww, Basis::Psi).unwrap()),
            vec![int(0), int(0), int(0), -h.clone(), -h]
        );
    }

    #[test]
    fn r_vanishes_in_phi_psi_for_ones() {
        for n in 1..5 {
            let ww = Weights::ones(n);
            assert!(build_r(&ww, Basis::Phi).unwrap().is_zero());
            assert!(build_r(&ww, Basis::Psi).unwrap().is_zero());
        }
    }

    #[test]
    fn gauges_reproduce_closed_forms() {
        for v in [&[2, 2][..], &[1, 1], &[3], &[1, 2, 3], &[1]] {
            let ww = w(v);
            let omega = build_connection(&ww, Basis::Omega).unwrap();
            let phi = gauge_transform(&omega, &gauge_p(&ww), Basis::Phi).unwrap();
            assert_eq!(phi, build_connection(&ww, Basis::Phi).unwrap(), "{ww}");
            let psi = gauge_transform(&omega, &gauge_q(&ww), Basis::Psi).unwrap();
            assert_eq!(psi, build_connection(&ww, Basis::Psi).unwrap(), "{ww}");
        }
    }

    #[test]
    fn all_bases_flat_for_small_weights() {
        for v in [&[2, 2][..], &[1, 1], &[3], &[1, 2, 3], &[2, 3]] {
            let ww = w(v);
            for b in Basis::ALL {
                let c = build_connection(&ww, b).unwrap();
                assert!(curvature(&c).is_zero(), "{ww} {b}");
                assert!(c.has_normal_pole_orders() || b == Basis::Flat, "{ww} {b}");
            }
        }
    }

    #[test]
    fn residues_for_2_2() {
        let ww = w(&[2, 2]);
        let phi = residue_x(&build_connection(&ww, Basis::Phi).unwrap()).unwrap();
        let h = rat(1, 2);
        assert_eq!(
            phi.sorted_eigenvalues().unwrap(),
            vec![int(0), int(0), int(0), h.clone(), h.clone()]
        );
        assert!(phi.theta_free);
        let psi = residue_x(&build_connection(&ww, Basis::Psi).unwrap()).unwrap();
        assert_eq!(
            psi.sorted_eigenvalues().unwrap(),
            vec![-h.clone(), -h, int(0), int(0), int(0)]
        );
        let om = residue_x(&build_connection(&w(&[1, 1]), Basis::Omega).unwrap()).unwrap();
        assert_eq!(
            om.sorted_eigenvalues().unwrap(),
            vec![int(-1), int(-1), int(0)]
        );
    }

    #[test]
    fn pairings() {
        let ww = w(&[2, 2]);
        let g = build_pairing(&ww, Basis::Omega).unwrap();
        assert_eq!(g.matrix().get(0, 2), &LaurentPoly::x_pow(-1));
        assert_eq!(g.matrix().get(1, 1), &LaurentPoly::x_pow(-2));
        assert_eq!(g.matrix().get(3, 4), &LaurentPoly::x_pow(-1));
        assert!(g.is_symmetric());
        let phi = build_pairing(&ww, Basis::Phi).unwrap();
        assert_eq!(phi, g.transport(&gauge_p(&ww), Basis::Phi).unwrap());
        assert_eq!(phi.matrix().get(4, 3), &LaurentPoly::x_pow(1));
        let ones = build_pairing(&w(&[1, 1]), Basis::Phi).unwrap();
        assert_eq!(
            ones.matrix(),
            &QMatrix::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).to_laurent()
        );
        assert!(build_pairing(&ww, Basis::Psi).is_err());
    }

    #[test]
    fn pairing_flatness() {
        for v in [&[2, 2][..], &[1, 1, 1], &[3], &[1, 2]] {
            let ww = w(v);
            for b in [Basis::Omega, Basis::Phi, Basis::Flat] {
                let c = build_connection(&ww, b).unwrap();
                let p = build_pairing(&ww, b).unwrap();
                let rep = pairing_flat_check(&c, &p).unwrap();
                assert!(rep.all_passed(), "{ww} {b}: {rep:?}");
            }
        }
        let ww = w(&[2, 2]);
        let c = build_connection(&ww, Basis::Omega).unwrap();
        let bogus = Pairing::new(Basis::Omega, 2, LaurentMatrix::identity(5)).unwrap();
        let rep = pairing_flat_check(&c, &bogus).unwrap();
        assert!(!rep.passed("pairing-a0-self-adjoint"));
    }

    #[test]
    fn flat_gauge_matches_ramified_pairing_transport() {
        let ww = w(&[2, 2]);
        let (l, d) = flat_gauge(&ww);
        assert_eq!(l, 2);
        let g = build_pairing(&ww, Basis::Omega).unwrap();
        let ramified = Pairing::new(Basis::Omega, 2, g.matrix().ramify_x(l as i32))
            .unwrap()
            .with_ramification(l);
        assert_eq!(
            ramified.transport(&d, Basis::Flat).unwrap(),
            build_pairing(&ww, Basis::Flat).unwrap()
        );
    }
}
