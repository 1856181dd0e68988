//! The graded limit at `x = 0`: the `V`-filtration on the `φ`-lattice, the
//! nilpotent part of the residue, its Jordan structure, the limit Frobenius
//! type structure and its pre-primitive sections.

use crate::algebra::{
    determinant, has_cyclic_vector, int, linalg::basis_vector, nilpotent_block_sizes,
    LaurentMatrix, LaurentPoly, QMatrix, Rational,
};
use crate::connection::Basis;
use crate::error::{Error, Result};
use crate::family::build_a0;
use crate::spectrum::{build_spectrum, Spectrum, Weights};

/// `v(ω_k^φ)`: 0 for `k ≤ n`, `s_k/μ` beyond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VGrading {
    pub v: Vec<Rational>,
}

impl VGrading {
    /// Indices grouped by equal `v`, in increasing order of the value.
    pub fn classes(&self) -> Vec<(Rational, Vec<usize>)> {
        let mut out: Vec<(Rational, Vec<usize>)> = Vec::new();
        for (k, v) in self.v.iter().enumerate() {
            match out.iter_mut().find(|(value, _)| value == v) {
                Some((_, idx)) => idx.push(k),
                None => out.push((v.clone(), vec![k])),
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

fn grading(sp: &Spectrum) -> VGrading {
    let n = sp.n();
    VGrading {
        v: (0..sp.mu())
            .map(|k| if k <= n { int(0) } else { sp.normalized(k) })
            .collect(),
    }
}

/// The matrix `B` of `N` on the graded module: `B[i][i−1] = −1/θ` when
/// `s_i = s_{i−1}`.
fn nilpotent_part(sp: &Spectrum) -> LaurentMatrix {
    let mu = sp.mu();
    let mut b = LaurentMatrix::zeros(mu, mu);
    for i in 1..mu {
        if sp.s()[i] == sp.s()[i - 1] {
            b.set(i, i - 1, LaurentPoly::monomial(int(-1), 0, -1));
        }
    }
    b
}

pub fn v_filtration(w: &Weights) -> (VGrading, LaurentMatrix) {
    let sp = build_spectrum(w);
    (grading(&sp), nilpotent_part(&sp))
}

/// Per `v`-class: the value and the Jordan block sizes of `N` restricted to
/// the class, computed from ranks of powers of `−θB`.
pub fn jordan_data(w: &Weights) -> Result<Vec<(Rational, Vec<usize>)>> {
    let (vg, b) = v_filtration(w);
    let nb = b
        .shift(0, 1)
        .scale_rational(&int(-1))
        .to_rational()
        .ok_or_else(|| Error::Internal("θ·B is not constant".into()))?;
    vg.classes()
        .into_iter()
        .map(|(value, idx)| Ok((value, nilpotent_block_sizes(&nb.principal_submatrix(&idx))?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitFTS {
    pub mu: usize,
    pub n: usize,
    /// `[A₀] = −μθB`
    pub r0: QMatrix,
    /// `[A∞] = diag(α)`
    pub rinf: QMatrix,
    pub g: QMatrix,
}

/// The 0/1 pairing `g[k][n−k] = 1` (`k ≤ n`), `g[k][μ+n−k] = 1` (`k > n`).
pub fn limit_pairing(mu: usize, n: usize) -> QMatrix {
    QMatrix::from_fn(mu, mu, |i, j| {
        let hit = if i <= n { i + j == n } else { i + j == mu + n };
        if hit {
            int(1)
        } else {
            int(0)
        }
    })
}

impl LimitFTS {
    /// `g⁻¹ Mᵀ g`; `g` is a symmetric permutation matrix so `g⁻¹ = g`.
    pub fn adjoint(&self, m: &QMatrix) -> QMatrix {
        self.g.times(&m.transpose()).times(&self.g)
    }

    pub fn r0_self_adjoint(&self) -> bool {
        self.adjoint(&self.r0) == self.r0
    }

    pub fn rinf_dual(&self) -> bool {
        self.rinf.plus(&self.adjoint(&self.rinf))
            == QMatrix::identity(self.mu).scale(&int(self.n as i64))
    }
}

pub fn limit_fts(w: &Weights) -> Result<LimitFTS> {
    let sp = build_spectrum(w);
    let (mu, n) = (sp.mu(), sp.n());
    let b = nilpotent_part(&sp);
    let r0 = b
        .shift(0, 1)
        .scale_rational(&int(-(mu as i64)))
        .to_rational()
        .ok_or_else(|| Error::Internal("[A0] retains θ".into()))?;
    let rinf = QMatrix::diagonal(sp.alpha().to_vec());
    let g = limit_pairing(mu, n);
    let l = LimitFTS { mu, n, r0, rinf, g };
    let det = determinant(&l.g)?;
    if det != int(1) && det != int(-1) {
        return Err(Error::Internal(format!("det g = {det}")));
    }
    if !l.r0_self_adjoint() || !l.rinf_dual() {
        return Err(Error::Internal(format!(
            "limit structure for {w} fails an adjoint identity"
        )));
    }
    Ok(l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Preprimitivity {
    pub homogeneous: bool,
    pub e0_preprimitive: bool,
    pub any_preprimitive: bool,
}

pub fn preprimitive_check(l: &LimitFTS) -> Result<Preprimitivity> {
    let e0 = basis_vector(l.mu, 0);
    let image = l.rinf.apply(&e0);
    let homogeneous = image
        .iter()
        .zip(&e0)
        .all(|(a, b)| *a == l.rinf.get(0, 0) * b);
    Ok(Preprimitivity {
        homogeneous,
        e0_preprimitive: has_cyclic_vector(&l.r0, Some(&e0))?,
        any_preprimitive: has_cyclic_vector(&l.r0, None)?,
    })
}

/// Entries `(i, j)` where `R₀ᵀg` and `g R₀` differ, with both values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Asymmetry {
    pub row: usize,
    pub col: usize,
    /// `g(R₀ e_row, e_col)`
    pub lhs: Rational,
    /// `g(e_row, R₀ e_col)`
    pub rhs: Rational,
}

/// Tests the ungraded tuple `R₀ = Ā₀^φ` against the limit pairing; the first
/// failing entry in row-major order is the witness.
pub fn nongraded_counterexample(w: &Weights) -> Result<(bool, Option<Asymmetry>)> {
    let (mu, n) = (w.mu(), w.n());
    let r0 = build_a0(w, Basis::Phi)?
        .at_x_zero()
        .and_then(|m| m.to_rational())
        .ok_or_else(|| Error::Internal("A0^phi has no value at x = 0".into()))?;
    let g = limit_pairing(mu, n);
    let lhs = r0.transpose().times(&g);
    let rhs = g.times(&r0);
    let witness = (0..mu)
        .flat_map(|i| (0..mu).map(move |j| (i, j)))
        .find(|&(i, j)| lhs.get(i, j) != rhs.get(i, j))
        .map(|(row, col)| Asymmetry {
            row,
            col,
            lhs: lhs.get(row, col).clone(),
            rhs: rhs.get(row, col).clone(),
        });
    Ok((witness.is_none(), witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn w(v: &[u32]) -> Weights {
        Weights::new(v.to_vec()).unwrap()
    }

    #[test]
    fn b_for_2_2() {
        let (vg, b) = v_filtration(&w(&[2, 2]));
        assert_eq!(b.support(), vec![(1, 0), (2, 1), (4, 3)]);
        assert_eq!(b.get(4, 3), &LaurentPoly::monomial(int(-1), 0, -1));
        assert_eq!(vg.v[3], rat(1, 2));
    }

    #[test]
    fn b_for_3() {
        let (_, b) = v_filtration(&w(&[3]));
        assert_eq!(b.support(), vec![(1, 0)]);
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(
            jordan_data(&w(&[2, 2])).unwrap(),
            vec![(int(0), vec![3]), (rat(1, 2), vec![2])]
        );
        assert_eq!(
            jordan_data(&Weights::ones(4)).unwrap(),
            vec![(int(0), vec![5])]
        );
        assert_eq!(
            jordan_data(&w(&[3])).unwrap(),
            vec![
                (int(0), vec![2]),
                (rat(1, 3), vec![1]),
                (rat(2, 3), vec![1])
            ]
        );
    }

    #[test]
    fn limit_structure_2_2() {
        let l = limit_fts(&w(&[2, 2])).unwrap();
        assert_eq!(l.r0.support(), vec![(1, 0), (2, 1), (4, 3)]);
        assert_eq!(l.r0.get(4, 3), &int(5));
        assert_eq!(l.g.get(3, 4), &int(1));
        assert_eq!(l.g.get(1, 1), &int(1));
        assert_eq!(l.g.times(&l.g.transpose()), QMatrix::identity(5));
    }

    #[test]
    fn preprimitivity() {
        let check = |v: &[u32]| preprimitive_check(&limit_fts(&w(v)).unwrap()).unwrap();
        let p = check(&[1, 1, 1]);
        assert!(p.homogeneous && p.e0_preprimitive && p.any_preprimitive);
        for v in [&[2, 2][..], &[3]] {
            let p = check(v);
            assert!(p.homogeneous && !p.e0_preprimitive && !p.any_preprimitive);
        }
    }

    #[test]
    fn nongraded() {
        let (ok, wit) = nongraded_counterexample(&w(&[2, 2])).unwrap();
        assert!(!ok);
        assert_eq!(
            wit.unwrap(),
            Asymmetry {
                row: 2,
                col: 4,
                lhs: int(5),
                rhs: int(0)
            }
        );
        assert!(nongraded_counterexample(&Weights::ones(3)).unwrap().0);
        assert!(!nongraded_counterexample(&w(&[3])).unwrap().0);
    }
}
