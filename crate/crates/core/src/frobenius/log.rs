use crate::algebra::{closure_rank, int, linalg::basis_vector, rank, QMatrix};
use crate::connection::Basis;
use crate::error::{Error, Result};
use crate::family::{build_a0, build_pairing, build_r};
use crate::spectrum::Weights;

/// Outcome of the four section conditions for one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionTest {
    pub name: String,
    pub basis: Basis,
    pub index: usize,
    /// Flat on the punctured base: the residue entry at the index vanishes.
    pub flat: bool,
    /// Injectivity: `Φ_{x∂x}|₀` does not kill the section.
    pub ic: bool,
    /// Generation under `Φ_{x∂x}|₀` and `R₀|₀`.
    pub gc: bool,
    /// Eigenvector of `A∞`.
    pub ec: bool,
}

impl SectionTest {
    pub fn all(&self) -> bool {
        self.flat && self.ic && self.gc && self.ec
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogReport {
    pub mu: usize,
    pub metric_rank_at_0: usize,
    pub metric_nondegenerate: bool,
    pub sections: Vec<SectionTest>,
}

impl LogReport {
    pub fn section(&self, name: &str) -> Option<&SectionTest> {
        self.sections.iter().find(|s| s.name == name)
    }
}

fn at_zero(w: &Weights, basis: Basis) -> Result<QMatrix> {
    build_a0(w, basis)?
        .at_x_zero()
        .and_then(|m| m.to_rational())
        .ok_or_else(|| Error::Internal(format!("A0 in basis {basis} has no value at x = 0")))
}

fn test_section(w: &Weights, name: &str, basis: Basis, index: usize) -> Result<SectionTest> {
    let mu = w.mu();
    let a0 = at_zero(w, basis)?;
    let phi = a0.scale(&(int(-1) / int(mu as i64)));
    let r = build_r(w, basis)?;
    let e = basis_vector(mu, index);
    let zero = int(0);
    Ok(SectionTest {
        name: name.to_string(),
        basis,
        index,
        flat: r.get(index, index).is_zero(),
        ic: phi.apply(&e).iter().any(|v| *v != zero),
        gc: closure_rank(&[&phi, &a0], &e) == mu,
        // A∞ is diagonal in every frame
        ec: true,
    })
}

/// The logarithmic structure on the `φ`-lattice: rank of the pairing on the
/// fibre at `x = 0`, and the section conditions for the distinguished
/// candidates.
pub fn log_structure(w: &Weights) -> Result<LogReport> {
    let (mu, n) = (w.mu(), w.n());
    let g0 = build_pairing(w, Basis::Phi)?
        .matrix()
        .at_x_zero()
        .and_then(|m| m.to_rational())
        .ok_or_else(|| Error::Internal("phi pairing has no value at x = 0".into()))?;
    let metric_rank_at_0 = rank(&g0);
    let mut candidates = vec![
        ("omega0", Basis::Omega, 0),
        ("omega1", Basis::Omega, 1),
        ("omega0-phi", Basis::Phi, 0),
        ("omega0-psi", Basis::Psi, 0),
    ];
    let psi_name = format!("omega{}-psi", n + 1);
    if n + 1 < mu {
        candidates.push((psi_name.as_str(), Basis::Psi, n + 1));
    }
    let sections = candidates
        .into_iter()
        .map(|(name, b, k)| test_section(w, name, b, k))
        .collect::<Result<_>>()?;
    Ok(LogReport {
        mu,
        metric_rank_at_0,
        metric_nondegenerate: metric_rank_at_0 == mu,
        sections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_for_2_2() {
        let r = log_structure(&Weights::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(r.metric_rank_at_0, 3);
        assert!(!r.metric_nondegenerate);
        assert!(r.section("omega0-phi").unwrap().all());
        let o = r.section("omega0").unwrap();
        assert!(o.flat && !o.ic);
        let p = r.section("omega0-psi").unwrap();
        assert!(p.flat && !p.gc);
        let q = r.section("omega3-psi").unwrap();
        assert!(!q.flat && q.ic && q.gc && q.ec);
    }

    #[test]
    fn ones_are_nondegenerate() {
        let r = log_structure(&Weights::ones(2)).unwrap();
        assert!(r.metric_nondegenerate);
        assert!(r.section("omega0-phi").unwrap().all());
    }
}
