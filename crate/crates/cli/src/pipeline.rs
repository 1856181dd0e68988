//! One function per report section; each runs a module pipeline and records
//! its checks, data and informational flags.

use limfrob_core::algebra::{format_pq, nilpotent_block_sizes, Rational};
use limfrob_core::connection::{is_flat, pairing_flat_check, residue_x};
use limfrob_core::family::{
    build_a0, build_a_inf, build_connection, build_pairing, build_r, derive_basis, gauge_p,
    gauge_q, SCHEDULE_CAP,
};
use limfrob_core::frobenius::{
    existdef_check, family_fts, fts_axiom_check, homogeneity_check, limit_manifold, log_structure,
    wdvv_report,
};
use limfrob_core::limits::{jordan_data, limit_fts, nongraded_counterexample, preprimitive_check};
use limfrob_core::spectrum::{build_spectrum, check_spectrum_symmetries, constant_runs};
use limfrob_core::{connection::gauge_transform, Basis, Result, Weights};

use crate::report::{MatrixDto, PolynomialDto, Section, VectorDto};

fn tagged(id: &str, b: Basis) -> String {
    format!("{id}[{b}]")
}

pub fn spectrum(w: &Weights) -> Section {
    let sp = build_spectrum(w);
    let mut s = Section::new("spectrum");
    s.checks_from(&check_spectrum_symmetries(&sp), "");
    s.vectors.push(VectorDto::new("s", sp.s()));
    s.vectors.push(VectorDto::new("alpha", sp.alpha()));
    let normalized: Vec<Rational> = (0..sp.mu()).map(|k| sp.normalized(k)).collect();
    s.vectors.push(VectorDto::new("s/mu", &normalized));
    s.matrices
        .push(MatrixDto::laurent("A_inf", &build_a_inf(&sp)));
    for (value, len) in constant_runs(&sp) {
        s.notes.push(format!(
            "run of s = {} with length {len}",
            format_pq(&value)
        ));
    }
    s
}

pub fn connection(w: &Weights) -> Result<Section> {
    let mut s = Section::new("connection");
    for b in Basis::ALL {
        let c = build_connection(w, b)?;
        s.check(tagged("curvature-zero", b), is_flat(&c), None);
        s.check(
            tagged("normal-pole-orders", b),
            c.has_normal_pole_orders(),
            None,
        );
        if b == Basis::Flat {
            s.notes
                .push(format!("flat frame uses x = t^{}", c.ramification));
            s.matrices
                .push(MatrixDto::laurent(tagged("x*Omega_x", b), &c.log_x_part()));
        } else {
            s.matrices
                .push(MatrixDto::laurent(tagged("A0", b), &build_a0(w, b)?));
            s.matrices
                .push(MatrixDto::laurent(tagged("R", b), &build_r(w, b)?));
        }
        if matches!(b, Basis::Phi | Basis::Psi) {
            let res = residue_x(&c)?;
            s.check(tagged("residue-theta-free", b), res.theta_free, None);
            let in_range = if b == Basis::Phi {
                res.within_zero_one()
            } else {
                res.within_minus_one_zero()
            };
            let detail = match (&res.sorted_eigenvalues(), &res.unresolved) {
                (Some(e), _) => Some(e.iter().map(format_pq).collect::<Vec<_>>().join(", ")),
                (None, Some(p)) => Some(format!("indeterminate: irreducible factor {p:?}")),
                (None, None) => Some("indeterminate".into()),
            };
            s.check(tagged("residue-range", b), in_range == Some(true), detail);
            if let Some(e) = res.sorted_eigenvalues() {
                s.vectors
                    .push(VectorDto::new(tagged("residue-eigenvalues", b), &e));
            }
        }
        if b != Basis::Psi {
            let p = build_pairing(w, b)?;
            s.checks_from(&pairing_flat_check(&c, &p)?, &format!("[{b}]"));
            s.matrices
                .push(MatrixDto::laurent(tagged("G", b), p.matrix()));
        }
    }
    let omega = build_connection(w, Basis::Omega)?;
    s.check(
        "gauge-p-omega-to-phi",
        gauge_transform(&omega, &gauge_p(w), Basis::Phi)? == build_connection(w, Basis::Phi)?,
        None,
    );
    s.check(
        "gauge-q-omega-to-psi",
        gauge_transform(&omega, &gauge_q(w), Basis::Psi)? == build_connection(w, Basis::Psi)?,
        None,
    );
    Ok(s)
}

pub fn derivation(w: &Weights) -> Result<Section> {
    let mut s = Section::new("derivation");
    let d = derive_basis(w)?;
    s.check(
        "derived-a0-matches-closed-form",
        d.a0 == build_a0(w, Basis::Omega)?,
        None,
    );
    s.check(
        "derived-sections-monic",
        d.sections.iter().all(|m| m.is_monic()),
        None,
    );
    s.flag("schedule-unique", d.all_schedules.len() == 1);
    s.flag("schedule-search-truncated", d.truncated);
    let faces: Vec<String> = d.schedule.iter().map(|j| format!("G{j}")).collect();
    s.notes.push(format!("schedule: {}", faces.join(" ")));
    s.notes.push(format!(
        "{} closing schedule(s) found (cap {SCHEDULE_CAP})",
        d.all_schedules.len()
    ));
    Ok(s)
}

pub fn fts(w: &Weights) -> Result<Section> {
    let mut s = Section::new("fts");
    for b in [Basis::Omega, Basis::Phi, Basis::Flat] {
        s.checks_from(&fts_axiom_check(&family_fts(w, b)?)?, &format!("[{b}]"));
    }
    Ok(s)
}

pub fn limit(w: &Weights) -> Result<Section> {
    let mut s = Section::new("limit");
    let sp = build_spectrum(w);
    let projective = w.is_projective_space();

    let jordan = jordan_data(w)?;
    let mut blocks: Vec<usize> = jordan.iter().flat_map(|(_, b)| b.clone()).collect();
    let mut runs: Vec<usize> = constant_runs(&sp).into_iter().map(|(_, l)| l).collect();
    blocks.sort_unstable();
    runs.sort_unstable();
    s.check(
        "jordan-blocks-match-runs",
        blocks == runs,
        Some(format!("blocks {blocks:?}, runs {runs:?}")),
    );
    for (value, sizes) in &jordan {
        s.notes
            .push(format!("v = {}: Jordan blocks {sizes:?}", format_pq(value)));
    }

    let l = limit_fts(w)?;
    s.check("limit-r0-self-adjoint", l.r0_self_adjoint(), None);
    s.check("limit-rinf-duality", l.rinf_dual(), None);
    s.matrices.push(MatrixDto::rational("R0", &l.r0));
    s.matrices.push(MatrixDto::rational("R_inf", &l.rinf));
    s.matrices.push(MatrixDto::rational("g", &l.g));

    let p = preprimitive_check(&l)?;
    s.flag("homogeneous", p.homogeneous);
    s.flag("e0-preprimitive", p.e0_preprimitive);
    s.flag("any-preprimitive", p.any_preprimitive);
    s.check("e0-homogeneous", p.homogeneous, None);
    s.check(
        "preprimitive-iff-all-weights-one",
        p.any_preprimitive == projective,
        None,
    );

    let (is_fts, witness) = nongraded_counterexample(w)?;
    s.flag("nongraded-is-fts", is_fts);
    s.check(
        "nongraded-fts-iff-all-weights-one",
        is_fts == projective,
        None,
    );
    if let Some(a) = witness {
        s.notes.push(format!(
            "nongraded witness: g(R0 e{}, e{}) = {} but g(e{}, R0 e{}) = {}",
            a.row,
            a.col,
            format_pq(&a.lhs),
            a.row,
            a.col,
            format_pq(&a.rhs)
        ));
    }
    Ok(s)
}

pub fn log(w: &Weights) -> Result<Section> {
    let mut s = Section::new("log");
    let r = log_structure(w)?;
    s.flag("metric-nondegenerate-at-0", r.metric_nondegenerate);
    s.check(
        "log-metric-iff-all-weights-one",
        r.metric_nondegenerate == w.is_projective_space(),
        Some(format!("rank {} of {}", r.metric_rank_at_0, r.mu)),
    );
    for t in &r.sections {
        for (cond, v) in [("flat", t.flat), ("ic", t.ic), ("gc", t.gc), ("ec", t.ec)] {
            s.flag(format!("{}:{cond}", t.name), v);
        }
    }
    if let Some(t) = r.section("omega0-phi") {
        s.check("omega0-phi-log-section", t.all(), None);
    }
    Ok(s)
}

/// Spelled-out count for small numbers.
fn count_word(k: usize) -> String {
    const WORDS: [&str; 11] = [
        "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    ];
    WORDS
        .get(k)
        .map_or_else(|| k.to_string(), |w| w.to_string())
}

/// The obstruction to a limit Frobenius manifold, if any.
pub fn manifold_obstruction(w: &Weights) -> Result<Option<String>> {
    let l = limit_fts(w)?;
    if preprimitive_check(&l)?.any_preprimitive {
        return Ok(None);
    }
    let blocks = nilpotent_block_sizes(&l.r0)?.len();
    Ok(Some(format!(
        "no pre-primitive section ({} Jordan blocks at 0)",
        count_word(blocks)
    )))
}

/// Requires a weight vector of ones; callers check the obstruction first.
pub fn manifold(w: &Weights) -> Result<Section> {
    let mut s = Section::new("manifold");
    let f = limit_manifold(w.n())?;
    let mu = f.mu;
    s.checks_from(&existdef_check(&f)?, "");
    s.checks_from(&wdvv_report(&f)?, "");
    let h = homogeneity_check(&f);
    s.check(
        "euler-homogeneity",
        h.passed,
        Some(format!(
            "E(Psi) - ({})Psi = {}",
            format_pq(&h.degree),
            h.remainder
        )),
    );
    s.checks_from(&fts_axiom_check(&f.to_fts())?, "[limit]");

    s.polynomials
        .push(PolynomialDto::new("potential", mu, &f.potential));
    for (i, e) in f.euler.iter().enumerate() {
        s.polynomials
            .push(PolynomialDto::new(format!("euler[{}]", i + 1), mu, e));
    }
    s.polynomials.push(PolynomialDto::new(
        "homogeneity-remainder",
        mu,
        &h.remainder,
    ));
    for (i, c) in f.c.iter().enumerate() {
        s.matrices
            .push(MatrixDto::rational(format!("C{}", i + 1), c));
    }
    s.matrices.push(MatrixDto::rational("A_inf", &f.ainf));
    s.matrices.push(MatrixDto::rational("g", &f.g));
    for (a, row) in f.product.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|k| k.map_or_else(|| "0".into(), |k| format!("d{}", k + 1)))
            .collect();
        s.notes
            .push(format!("d{} * (d1..d{mu}) = {}", a + 1, cells.join(", ")));
    }
    let euler: Vec<String> = f
        .euler
        .iter()
        .enumerate()
        .map(|(i, e)| format!("({e}) d{}", i + 1))
        .collect();
    s.notes.push(format!("E = {}", euler.join(" + ")));
    s.notes
        .push(format!("Psi = {} (mod quadratic terms)", f.potential));
    Ok(s)
}
