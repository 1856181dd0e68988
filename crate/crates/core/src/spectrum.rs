//! The spectrum at infinity of the family: the sorted multiset `S_w`, the
//! numbers `s_k` and `α_k = k − s_k`, and the runs of equal values that govern
//! the Jordan structure at `x = 0`.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{int, rat, Rational};
use crate::check::{Check, CheckReport};
use crate::error::{Error, Result};

/// Positive integer weights `(w1, …, wn)`, `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weights(Vec<u32>);

impl Weights {
    pub fn new(w: Vec<u32>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidWeights(
                "at least one weight is required".into(),
            ));
        }
        if let Some(i) = w.iter().position(|&v| v == 0) {
            return Err(Error::InvalidWeights(format!(
                "weight w{} must be positive",
                i + 1
            )));
        }
        Ok(Self(w))
    }

    /// Signed input, rejecting non-positive entries.
    pub fn from_signed(w: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(w.len());
        for (i, &v) in w.iter().enumerate() {
            if v <= 0 {
                return Err(Error::InvalidWeights(format!(
                    "weight w{} = {v} must be positive",
                    i + 1
                )));
            }
            let v = u32::try_from(v).map_err(|_| {
                Error::InvalidWeights(format!("weight w{} = {v} is too large", i + 1))
            })?;
            out.push(v);
        }
        Self::new(out)
    }

    /// `(1, …, 1)` with `n` entries.
    pub fn ones(n: usize) -> Self {
        Self(vec![1; n.max(1)])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `μ = 1 + Σ wᵢ`
    pub fn mu(&self) -> usize {
        1 + self.0.iter().map(|&w| w as usize).sum::<usize>()
    }

    pub fn max_weight(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(1)
    }

    /// True when `μ = n + 1`, i.e. all weights equal 1.
    pub fn is_projective_space(&self) -> bool {
        self.mu() == self.n() + 1
    }
}

impl FromStr for Weights {
    type Err = Error;

    /// Comma-separated list, e.g. `"2,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.iter().all(|p| p.is_empty()) {
            return Err(Error::InvalidWeights("empty weight list".into()));
        }
        let mut w = Vec::with_capacity(parts.len());
        for p in parts {
            let v: i64 = p
                .parse()
                .map_err(|_| Error::InvalidWeights(format!("{p:?} is not an integer")))?;
            w.push(v);
        }
        Self::from_signed(&w)
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Maximal run of equal values in the sorted sequence `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub value: Rational,
    pub start: usize,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    weights: Weights,
    s: Vec<Rational>,
    alpha: Vec<Rational>,
    runs: Vec<Run>,
}

/// `S_w` as the sorted disjoint union of `{ℓμ/wᵢ : 0 ≤ ℓ < wᵢ}` over
/// `i = 0..n` with `w0 = 1`, multiplicities kept.
pub fn build_spectrum(w: &Weights) -> Spectrum {
    let mu = w.mu() as i64;
    let mut s: Vec<Rational> = std::iter::once(1u32)
        .chain(w.as_slice().iter().copied())
        .flat_map(|wi| (0..wi as i64).map(move |l| rat(l * mu, wi as i64)))
        .collect();
    s.sort();
    let alpha = s
        .iter()
        .enumerate()
        .map(|(k, sk)| int(k as i64) - sk)
        .collect();
    let runs = runs_of(&s);
    Spectrum {
        weights: w.clone(),
        s,
        alpha,
        runs,
    }
}

fn runs_of(s: &[Rational]) -> Vec<Run> {
    let mut runs: Vec<Run> = Vec::new();
    for (k, v) in s.iter().enumerate() {
        match runs.last_mut() {
            Some(r) if r.value == *v => r.length += 1,
            _ => runs.push(Run {
                value: v.clone(),
                start: k,
                length: 1,
            }),
        }
    }
    runs
}

impl Spectrum {
    pub fn new(w: &Weights) -> Self {
        build_spectrum(w)
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn mu(&self) -> usize {
        self.s.len()
    }

    pub fn n(&self) -> usize {
        self.weights.n()
    }

    pub fn s(&self) -> &[Rational] {
        &self.s
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// `s_k / μ`, the residue eigenvalue attached to index `k`.
    pub fn normalized(&self, k: usize) -> Rational {
        &self.s[k] / int(self.mu() as i64)
    }

    /// Index `μ + n − k`, the partner of `k >= n + 1` under the pairing.
    pub fn partner(&self, k: usize) -> usize {
        let (mu, n) = (self.mu(), self.n());
        if k <= n {
            n - k
        } else {
            mu + n - k
        }
    }
}

/// Maximal runs of equal `s`-values as `(value, length)`, in order.
pub fn constant_runs(sp: &Spectrum) -> Vec<(Rational, usize)> {
    sp.runs
        .iter()
        .map(|r| (r.value.clone(), r.length))
        .collect()
}

fn first_failure(mut it: impl Iterator<Item = (usize, bool)>) -> Option<usize> {
    it.find(|&(_, ok)| !ok).map(|(k, _)| k)
}

/// Evaluates every structural property of the spectrum, with a witness index
/// on failure.
pub fn check_spectrum_symmetries(sp: &Spectrum) -> CheckReport {
    let (mu, n) = (sp.mu(), sp.n());
    let s = &sp.s;
    let a = &sp.alpha;
    let zero = int(0);
    let mu_q = int(mu as i64);
    let n_q = int(n as i64);
    let mut report = CheckReport::default();

    let mut record = |id: &str, witness: Option<usize>| {
        let c = Check::new(id, witness.is_none());
        report.push(match witness {
            Some(k) => c.with_detail(format!("fails at k = {k}")),
            None => c,
        });
    };

    record("spectrum-cardinality", (s.len() != mu).then_some(s.len()));
    record(
        "spectrum-sorted",
        first_failure((1..mu).map(|k| (k, s[k - 1] <= s[k]))),
    );
    record(
        "spectrum-range",
        first_failure((0..mu).map(|k| (k, s[k] >= zero && s[k] < mu_q))),
    );
    record(
        "spectrum-initial-zeros",
        first_failure((0..=n.min(mu - 1)).map(|k| (k, s[k] == zero))),
    );
    if mu > n + 1 {
        let expected = rat(mu as i64, sp.weights.max_weight() as i64);
        record(
            "spectrum-first-positive",
            (s[n + 1] != expected).then_some(n + 1),
        );
    }
    record(
        "spectrum-symmetry",
        first_failure((n + 1..mu).map(|k| (k, &s[k] + &s[mu + n - k] == mu_q))),
    );
    record(
        "alpha-initial",
        first_failure((0..=n.min(mu - 1)).map(|k| (k, a[k] == int(k as i64)))),
    );
    record(
        "alpha-step-bound",
        first_failure((0..mu.saturating_sub(1)).map(|k| (k, a[k + 1] <= &a[k] + int(1)))),
    );
    record(
        "alpha-symmetry-high",
        first_failure((n + 1..mu).map(|k| (k, &a[k] + &a[mu + n - k] == n_q))),
    );
    record(
        "alpha-symmetry-low",
        first_failure((0..=n.min(mu - 1)).map(|k| (k, &a[k] + &a[n - k] == n_q))),
    );
    let total: usize = sp.runs.iter().map(|r| r.length).sum();
    record("runs-cover", (total != mu).then_some(total));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u32]) -> Weights {
        Weights::new(v.to_vec()).unwrap()
    }

    #[test]
    fn weights_2_2() {
        let sp = build_spectrum(&w(&[2, 2]));
        assert_eq!(sp.mu(), 5);
        assert_eq!(sp.s(), &[int(0), int(0), int(0), rat(5, 2), rat(5, 2)]);
        assert_eq!(sp.alpha(), &[int(0), int(1), int(2), rat(1, 2), rat(3, 2)]);
    }

    #[test]
    fn all_ones() {
        for n in 1..6 {
            let sp = build_spectrum(&Weights::ones(n));
            assert_eq!(sp.mu(), n + 1);
            assert!(sp.s().iter().all(|v| *v == int(0)));
            let expected: Vec<Rational> = (0..=n as i64).map(int).collect();
            assert_eq!(sp.alpha(), expected.as_slice());
            assert_eq!(constant_runs(&sp), vec![(int(0), n + 1)]);
        }
    }

    #[test]
    fn single_weight_three() {
        let sp = build_spectrum(&w(&[3]));
        assert_eq!(sp.mu(), 4);
        assert_eq!(sp.s(), &[int(0), int(0), rat(4, 3), rat(8, 3)]);
        assert_eq!(sp.alpha(), &[int(0), int(1), rat(2, 3), rat(1, 3)]);
        assert_eq!(
            constant_runs(&sp),
            vec![(int(0), 2), (rat(4, 3), 1), (rat(8, 3), 1)]
        );
        let report = check_spectrum_symmetries(&sp);
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(&sp.alpha()[2] + &sp.alpha()[3], int(1));
    }

    #[test]
    fn runs_for_2_2() {
        let sp = build_spectrum(&w(&[2, 2]));
        assert_eq!(constant_runs(&sp), vec![(int(0), 3), (rat(5, 2), 2)]);
        assert!(check_spectrum_symmetries(&sp).all_passed());
    }

    #[test]
    fn weight_one_vacuous_ranges() {
        let sp = build_spectrum(&w(&[1]));
        assert_eq!(sp.mu(), 2);
        let report = check_spectrum_symmetries(&sp);
        assert!(report.all_passed());
        assert!(report.get("spectrum-first-positive").is_none());
    }

    #[test]
    fn tampered_spectrum_reports_witness() {
        let mut sp = build_spectrum(&w(&[2, 2]));
        sp.s[3] = rat(7, 3);
        let report = check_spectrum_symmetries(&sp);
        let c = report.get("spectrum-symmetry").unwrap();
        assert!(!c.passed);
        assert_eq!(c.detail.as_deref(), Some("fails at k = 3"));
    }

    #[test]
    fn invalid_weights() {
        assert!(Weights::new(vec![]).is_err());
        assert!(Weights::new(vec![2, 0]).is_err());
        assert!("2,-1".parse::<Weights>().is_err());
        assert!("".parse::<Weights>().is_err());
        assert!("2,a".parse::<Weights>().is_err());
        assert_eq!("2, 2".parse::<Weights>().unwrap(), w(&[2, 2]));
    }
}
