use crate::algebra::{int, rat, MPoly, PolyMatrix, QMatrix, Rational, Ring};
use crate::check::{Check, CheckReport};
use crate::error::{Error, Result};
use crate::limits::limit_fts;
use crate::spectrum::Weights;

use super::fts::FTSData;

/// The canonical limit Frobenius manifold of dimension `μ = n + 1`, in flat
/// coordinates `x1..xμ` (0-based indices in the fields).
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusData {
    pub mu: usize,
    /// `C̃ᵢ = −J^{i−1}` where `J e_k = e_{k+1}`.
    pub c: Vec<QMatrix>,
    /// `Ã₀(x) = −x₁C̃₁ − μC̃₂ + Σ_{i≥3} (i−2) xᵢ C̃ᵢ`
    pub a0: PolyMatrix,
    pub ainf: QMatrix,
    pub g: QMatrix,
    /// `product[i][j] = Some(k)` when `∂ᵢ ∗ ∂ⱼ = ∂ₖ`, `None` when zero.
    pub product: Vec<Vec<Option<usize>>>,
    /// Cubic part of the potential.
    pub potential: MPoly,
    /// Components `E = Σ euler[i] ∂ᵢ`.
    pub euler: Vec<MPoly>,
}

impl FrobeniusData {
    pub fn n(&self) -> usize {
        self.mu - 1
    }

    /// Metric on tangent vectors via the period map: `g(∂ᵢ, ∂ⱼ) = 1` iff
    /// `i + j = μ − 1` (0-based).
    pub fn tangent_metric(&self, i: usize, j: usize) -> bool {
        i + j == self.mu - 1
    }
}

fn jordan(mu: usize) -> QMatrix {
    QMatrix::from_fn(mu, mu, |i, j| if i == j + 1 { int(1) } else { int(0) })
}

fn lift(m: &QMatrix) -> PolyMatrix {
    m.map(|q| MPoly::constant(q.clone()))
}

pub fn limit_manifold(n: usize) -> Result<FrobeniusData> {
    if n == 0 {
        return Err(Error::InvalidWeights(
            "dimension n must be at least 1".into(),
        ));
    }
    let mu = n + 1;
    let j = jordan(mu);
    let c: Vec<QMatrix> = (0..mu).map(|i| j.pow(i as u32).negate()).collect();

    let mut a0 = lift(&c[1]).scale(&MPoly::constant(int(-(mu as i64))));
    a0 = a0.minus(&lift(&c[0]).scale(&MPoly::var(0)));
    for (i, ci) in c.iter().enumerate().skip(2) {
        // 1-based index i+1 carries the factor (i+1) − 2
        let coeff = MPoly::var(i).scale(&int(i as i64 - 1));
        a0 = a0.plus(&lift(ci).scale(&coeff));
    }
    let ainf = QMatrix::diagonal((0..mu as i64).map(int).collect());
    let g = QMatrix::from_fn(mu, mu, |a, b| if a + b == n { int(1) } else { int(0) });
    let product = (0..mu)
        .map(|a| (0..mu).map(|b| (a + b < mu).then_some(a + b)).collect())
        .collect();

    // c_{ijk} = 1 iff i + j + k = μ + 2 (1-based), i.e. a + b + c = μ − 1
    let mut potential = MPoly::zero();
    for a in 0..mu {
        for b in a..mu {
            let Some(cc) = (mu - 1).checked_sub(a + b) else {
                continue;
            };
            if cc < b {
                continue;
            }
            let factor = match (a == b, b == cc) {
                (true, true) => rat(1, 6),
                (true, false) | (false, true) => rat(1, 2),
                (false, false) => int(1),
            };
            let mut e = vec![0; mu];
            e[a] += 1;
            e[b] += 1;
            e[cc] += 1;
            potential = potential.plus(&MPoly::monomial(factor, e));
        }
    }

    let euler = (0..mu)
        .map(|i| match i {
            0 => MPoly::var(0),
            1 => MPoly::constant(int(mu as i64)),
            _ => MPoly::var(i).scale(&int(-(i as i64 - 1))),
        })
        .collect();

    Ok(FrobeniusData {
        mu,
        c,
        a0,
        ainf,
        g,
        product,
        potential,
        euler,
    })
}

/// The defining relations of the deformation: closedness and commutation of
/// the `C̃ᵢ`, commutation with `Ã₀`, the `Ã₀`–`A∞` relation, and the
/// normalizations `Ã₀(0) = [A₀]` and first columns `−e_{i−1}`.
pub fn existdef_check(f: &FrobeniusData) -> Result<CheckReport> {
    let mu = f.mu;
    let c: Vec<PolyMatrix> = f.c.iter().map(lift).collect();
    let ainf = lift(&f.ainf);
    let mut report = CheckReport::default();
    let all_pairs = || (0..mu).flat_map(|i| (0..mu).map(move |j| (i, j)));

    report.push(Check::new(
        "deformation-closed",
        all_pairs().all(|(i, j)| c[j].derivative(i) == c[i].derivative(j)),
    ));
    report.push(Check::new(
        "deformation-commute",
        all_pairs().all(|(i, j)| c[i].commutator(&c[j]).is_zero()),
    ));
    report.push(Check::new(
        "deformation-a0-commute",
        c.iter().all(|ci| f.a0.commutator(ci).is_zero()),
    ));
    report.push(Check::new(
        "deformation-a0-ainf",
        (0..mu).all(|i| f.a0.derivative(i).plus(&c[i]) == ainf.commutator(&c[i])),
    ));

    let at_zero = f.a0.map(|p| p.coefficient(&[]));
    let lim = limit_fts(&Weights::ones(mu - 1))?;
    report.push(Check::new("deformation-initial-value", at_zero == lim.r0));
    report.push(Check::new(
        "deformation-unit",
        f.c[0] == QMatrix::identity(mu).negate(),
    ));
    report.push(Check::new(
        "deformation-first-columns",
        (0..mu)
            .all(|i| (0..mu).all(|r| *f.c[i].get(r, 0) == if r == i { int(-1) } else { int(0) })),
    ));
    Ok(report)
}

/// `c[i][j][k] = ∂ᵢ∂ⱼ∂ₖΨ`; errors if a third derivative is not constant.
pub fn structure_constants(f: &FrobeniusData) -> Result<Vec<Vec<Vec<Rational>>>> {
    let mu = f.mu;
    (0..mu)
        .map(|i| {
            let di = f.potential.derivative(i);
            (0..mu)
                .map(|j| {
                    let dij = di.derivative(j);
                    (0..mu)
                        .map(|k| {
                            dij.derivative(k)
                                .constant_value()
                                .ok_or_else(|| Error::Internal("potential is not cubic".into()))
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Symmetry of the third derivatives, agreement of the product derived from
/// them through the metric with the stored table, and associativity.
pub fn wdvv_report(f: &FrobeniusData) -> Result<CheckReport> {
    let mu = f.mu;
    let c = structure_constants(f)?;
    let triples =
        || (0..mu).flat_map(move |i| (0..mu).flat_map(move |j| (0..mu).map(move |k| (i, j, k))));
    let mut report = CheckReport::default();
    report.push(Check::new(
        "potential-symmetric",
        triples().all(|(i, j, k)| c[i][j][k] == c[j][i][k] && c[i][j][k] == c[i][k][j]),
    ));
    // g(∂ᵢ ∗ ∂ⱼ, ∂ₖ) from the table must equal c_{ijk}
    let compatible = triples().all(|(i, j, k)| {
        let from_table = match f.product[i][j] {
            Some(l) if f.tangent_metric(l, k) => int(1),
            _ => int(0),
        };
        from_table == c[i][j][k]
    });
    report.push(Check::new("potential-product-metric", compatible));
    let mul = |a: Option<usize>, b: usize| a.and_then(|a| f.product[a][b]);
    let associative = triples().all(|(i, j, k)| {
        let left = mul(f.product[i][j], k);
        let right = f.product[j][k].and_then(|jk| f.product[i][jk]);
        left == right
    });
    report.push(Check::new("product-associative", associative));
    report.push(Check::new(
        "product-commutative",
        (0..mu).all(|i| (0..mu).all(|j| f.product[i][j] == f.product[j][i])),
    ));
    report.push(Check::new(
        "product-unit",
        (0..mu).all(|j| f.product[0][j] == Some(j)),
    ));
    Ok(report)
}

pub fn wdvv_check(f: &FrobeniusData) -> bool {
    wdvv_report(f).is_ok_and(|r| r.all_passed())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Homogeneity {
    /// `4 − μ`
    pub degree: Rational,
    /// `E(Ψ) − (4 − μ)Ψ`
    pub remainder: MPoly,
    /// The remainder has total degree at most 2.
    pub passed: bool,
}

pub fn homogeneity_check(f: &FrobeniusData) -> Homogeneity {
    let degree = int(4 - f.mu as i64);
    let e_psi = f
        .euler
        .iter()
        .enumerate()
        .fold(MPoly::zero(), |acc, (i, ei)| {
            acc.plus(&ei.times(&f.potential.derivative(i)))
        });
    let remainder = e_psi.minus(&f.potential.scale(&degree));
    let passed = remainder.total_degree().is_none_or(|d| d <= 2);
    Homogeneity {
        degree,
        remainder,
        passed,
    }
}

impl FrobeniusData {
    /// Packages the deformation as a Frobenius type structure over the
    /// `μ`-dimensional base in its flat frame.
    pub fn to_fts(&self) -> FTSData {
        let mu = self.mu;
        let n = int(self.n() as i64);
        let rinf = QMatrix::identity(mu).scale(&n).minus(&self.ainf);
        FTSData {
            m: mu,
            r0: self.a0.clone(),
            rinf: lift(&rinf),
            phi: self.c.iter().map(lift).collect(),
            nabla: vec![PolyMatrix::zeros(mu, mu); mu],
            g: lift(&self.g),
            r: n,
            log_flags: vec![false; mu],
        }
    }
}
