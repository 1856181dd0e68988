//! Exact linear algebra over ℚ and over Laurent polynomials: ranks, nilpotent
//! Jordan structure, cyclic vectors, inverses and pairing adjoints.

use super::laurent::LaurentPoly;
use super::matrix::{LaurentMatrix, Matrix, QMatrix};
use super::poly::det_division_free;
use super::ring::{Rational, Ring};
use crate::connection::Pairing;
use crate::error::{Error, Result};

/// Row echelon form in place; returns the pivot columns.
fn echelon(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !Ring::is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = <Rational as Ring>::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || Ring::is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !Ring::is_zero(p) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &QMatrix) -> usize {
    echelon(&mut m.to_rows()).len()
}

/// Rank of a list of vectors of equal length.
pub fn rank_of_vectors(vectors: &[Vec<Rational>]) -> usize {
    echelon(&mut vectors.to_vec()).len()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &QMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "determinant of a non-square matrix".into(),
        ));
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut sign = <Rational as Ring>::one();
    let mut prev = <Rational as Ring>::one();
    for k in 0..n {
        if Ring::is_zero(&a[k][k]) {
            match (k + 1..n).find(|&i| !Ring::is_zero(&a[i][k])) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return Ok(<Rational as Ring>::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return Ok(<Rational as Ring>::one());
    }
    Ok(sign * &a[n - 1][n - 1])
}

pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.extend((0..n).map(|j| {
                if i == j {
                    <Rational as Ring>::one()
                } else {
                    <Rational as Ring>::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = echelon(&mut rows);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Matrix::from_rows(
        rows.into_iter().map(|r| r[n..].to_vec()).collect(),
    ))
}

/// Jordan block sizes of a nilpotent matrix, largest first.
///
/// The number of blocks of size at least `k` is `rank(M^{k−1}) − rank(M^k)`.
pub fn nilpotent_block_sizes(m: &QMatrix) -> Result<Vec<usize>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "nilpotent_block_sizes needs a square matrix".into(),
        ));
    }
    let n = m.rows();
    let mut ranks = vec![n];
    let mut power = QMatrix::identity(n);
    for _ in 0..n {
        power = power.times(m);
        ranks.push(rank(&power));
        if *ranks.last().unwrap() == 0 {
            break;
        }
    }
    if *ranks.last().unwrap() != 0 {
        return Err(Error::NotNilpotent(n));
    }
    // at_least[k-1] = #blocks of size >= k
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, exactly));
    }
    Ok(sizes)
}

/// Degree of the minimal polynomial: the first `k` with `M^k` in the span of
/// `I, M, …, M^{k−1}`.
pub fn minimal_polynomial_degree(m: &QMatrix) -> usize {
    let n = m.rows();
    let flat = |a: &QMatrix| a.entries().map(|(_, _, v)| v.clone()).collect::<Vec<_>>();
    let mut powers = vec![flat(&QMatrix::identity(n))];
    let mut p = QMatrix::identity(n);
    for k in 1..=n {
        p = p.times(m);
        powers.push(flat(&p));
        if rank_of_vectors(&powers) < powers.len() {
            return k;
        }
    }
    n
}

/// Krylov matrix `[v, Mv, …, M^{μ−1}v]` as a list of vectors.
pub fn krylov_vectors(m: &QMatrix, v: &[Rational]) -> Vec<Vec<Rational>> {
    let mut out = Vec::with_capacity(m.rows());
    let mut cur = v.to_vec();
    for _ in 0..m.rows() {
        let next = m.apply(&cur);
        out.push(cur);
        cur = next;
    }
    out
}

/// With `v`: whether `v` is a cyclic vector of `M`. Without: whether any cyclic
/// vector exists, i.e. the minimal polynomial has degree `μ`.
pub fn has_cyclic_vector(m: &QMatrix, v: Option<&[Rational]>) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "cyclic vector test needs a square matrix".into(),
        ));
    }
    match v {
        Some(v) => {
            if v.len() != m.rows() {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} for a {}x{} matrix",
                    v.len(),
                    m.rows(),
                    m.cols()
                )));
            }
            Ok(rank_of_vectors(&krylov_vectors(m, v)) == m.rows())
        }
        None => Ok(minimal_polynomial_degree(m) == m.rows()),
    }
}

/// Dimension of the smallest subspace containing `start` and stable under
/// every operator in `ops`.
pub fn closure_rank(ops: &[&QMatrix], start: &[Rational]) -> usize {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut queue = vec![start.to_vec()];
    while let Some(v) = queue.pop() {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank_of_vectors(&trial) > basis.len() {
            basis.push(v.clone());
            for op in ops {
                queue.push(op.apply(&v));
            }
        }
    }
    basis.len()
}

pub fn basis_vector(n: usize, k: usize) -> Vec<Rational> {
    (0..n)
        .map(|i| {
            if i == k {
                <Rational as Ring>::one()
            } else {
                <Rational as Ring>::zero()
            }
        })
        .collect()
}

/// Inverse over ℚ(x, θ), required to have Laurent entries.
///
/// Gauss–Jordan with monomial (unit) pivots; falls back to the adjugate when no
/// unit pivot is available.
pub fn laurent_inverse(m: &LaurentMatrix) -> Result<LaurentMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "inverse of a non-square matrix".into(),
        ));
    }
    if let Some(inv) = unit_pivot_inverse(m) {
        return Ok(inv);
    }
    let det = det_division_free(m)?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let Some((c, a, b)) = det.as_monomial() else {
        return Err(Error::NotLaurentInvertible(det.to_string()));
    };
    let det_inv = LaurentPoly::monomial(<Rational as Ring>::one() / c, -a, -b);
    let n = m.rows();
    let mut adj = LaurentMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| m.get(rows[r], cols[c]).clone());
            let d = det_division_free(&minor)?;
            let cof = if (i + j) % 2 == 0 { d } else { d.negate() };
            adj.set(i, j, cof.times(&det_inv));
        }
    }
    Ok(adj)
}

fn unit_pivot_inverse(m: &LaurentMatrix) -> Option<LaurentMatrix> {
    let n = m.rows();
    let mut a = m.to_rows();
    let mut inv = LaurentMatrix::identity(n).to_rows();
    for c in 0..n {
        let p = (c..n).find(|&r| a[r][c].as_monomial().is_some())?;
        a.swap(c, p);
        inv.swap(c, p);
        let (coef, xe, te) = a[c][c].as_monomial()?;
        let pinv = LaurentPoly::monomial(<Rational as Ring>::one() / coef, -xe, -te);
        for v in a[c].iter_mut().chain(inv[c].iter_mut()) {
            *v = v.times(&pinv);
        }
        let prow = a[c].clone();
        let pinv_row = inv[c].clone();
        for r in 0..n {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for (v, p) in a[r].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v = v.minus(&f.times(p));
                }
            }
            for (v, p) in inv[r].iter_mut().zip(&pinv_row) {
                if !p.is_zero() {
                    *v = v.minus(&f.times(p));
                }
            }
        }
    }
    Some(Matrix::from_rows(inv))
}

/// Adjoint with respect to a pairing: the matrix `M*` with `S(Mε, η) = S(ε, M*η)`,
/// namely `G⁻¹ · σ(M)ᵀ · G` where `σ` is `θ ↦ −θ`.
pub fn adjoint(m: &LaurentMatrix, pairing: &Pairing) -> Result<LaurentMatrix> {
    let g = pairing.matrix();
    if m.rows() != g.rows() || !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "matrix {}x{} against a pairing of size {}",
            m.rows(),
            m.cols(),
            g.rows()
        )));
    }
    let g_inv = pairing.inverse()?;
    Ok(g_inv.times(&m.flip_theta().transpose()).times(g))
}
