//! End-to-end acceptance suite. Prints one `PASS`/`FAIL` line per criterion
//! and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use limfrob_core::algebra::{
    adjoint, int, inverse, rat, LaurentMatrix, LaurentPoly, MPoly, QMatrix, Rational,
};
use limfrob_core::connection::{curvature, residue_x};
use limfrob_core::family::{
    build_a0, build_a_inf, build_connection, build_pairing, build_r, derive_basis,
};
use limfrob_core::frobenius::{
    existdef_check, homogeneity_check, limit_manifold, log_structure, structure_constants,
    wdvv_check,
};
use limfrob_core::grid::weight_grid;
use limfrob_core::limits::{jordan_data, limit_fts, nongraded_counterexample, preprimitive_check};
use limfrob_core::spectrum::{build_spectrum, constant_runs};
use limfrob_core::{Basis, Weights};

type Outcome = Result<String, String>;
type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let grid = weight_grid(5, 6);
    let small_grid = weight_grid(4, 5);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("spectrum golden data", Box::new(criterion_1)),
        ("matrix golden data", Box::new(criterion_2)),
        (
            "zero curvature in all four bases",
            Box::new(|| criterion_3(&grid)),
        ),
        (
            "pairing flatness and adjoints",
            Box::new(|| criterion_4(&grid)),
        ),
        ("residue eigenvalue ranges", Box::new(|| criterion_5(&grid))),
        (
            "Jordan blocks match spectrum runs",
            Box::new(|| criterion_6(&grid)),
        ),
        (
            "limit Frobenius type structure",
            Box::new(|| criterion_7(&grid)),
        ),
        ("pre-primitivity dichotomy", Box::new(|| criterion_8(&grid))),
        ("canonical limit Frobenius manifold", Box::new(criterion_9)),
        (
            "logarithmic dichotomy and section table",
            Box::new(|| criterion_10(&grid)),
        ),
        (
            "basis derivation reproduces A0",
            Box::new(|| criterion_11(&small_grid)),
        ),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {elapsed:.2?})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why}; {elapsed:.2?})", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn w(v: &[u32]) -> Weights {
    Weights::new(v.to_vec()).unwrap()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().copied().map(int).collect()
}

fn diagonal_values(m: &LaurentMatrix) -> Vec<Rational> {
    (0..m.rows())
        .map(|k| m.get(k, k).constant_value().unwrap())
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let sp = build_spectrum(&w(&[2, 2]));
    let ones: Vec<_> = (1..=6).map(|n| build_spectrum(&Weights::ones(n))).collect();
    let elapsed = start.elapsed();

    let half = rat(5, 2);
    ensure(
        sp.s() == [int(0), int(0), int(0), half.clone(), half].as_slice(),
        || format!("s(2,2) = {:?}", sp.s()),
    )?;
    let alpha = [int(0), int(1), int(2), rat(1, 2), rat(3, 2)];
    ensure(sp.alpha() == alpha.as_slice(), || {
        format!("alpha(2,2) = {:?}", sp.alpha())
    })?;
    ensure(diagonal_values(&build_a_inf(&sp)) == alpha, || {
        "A_inf(2,2) differs".into()
    })?;
    for (n, s) in (1..=6).zip(&ones) {
        let expected = ints(&(0..=n as i64).collect::<Vec<_>>());
        ensure(diagonal_values(&build_a_inf(s)) == expected, || {
            format!("A_inf for n = {n}")
        })?;
    }
    ensure(elapsed < Duration::from_millis(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("spectra computed in {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let ww = w(&[2, 2]);
    let psi = build_a0(&ww, Basis::Psi).map_err(|e| e.to_string())?;
    let five = || LaurentPoly::constant(int(5));
    let mut expected = LaurentMatrix::zeros(5, 5);
    expected.set(1, 0, five());
    expected.set(2, 1, five());
    expected.set(3, 2, LaurentPoly::monomial(int(5), 1, 0));
    expected.set(4, 3, five());
    expected.set(0, 4, five());
    ensure(psi == expected, || format!("A0^psi =\n{psi}"))?;
    let r = build_r(&ww, Basis::Omega).map_err(|e| e.to_string())?;
    let half = rat(1, 2);
    let expected_r: Vec<Rational> = [int(0), int(1), int(1), half.clone(), half]
        .into_iter()
        .map(|v| -v)
        .collect();
    ensure(diagonal_values(&r) == expected_r && r.is_diagonal(), || {
        format!("R =\n{r}")
    })?;
    Ok("A0^psi and R for (2,2) match".into())
}

fn criterion_3(grid: &[Weights]) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for ww in grid {
        for b in Basis::ALL {
            let c = build_connection(ww, b).map_err(|e| format!("{ww} {b}: {e}"))?;
            ensure(curvature(&c).is_zero(), || {
                format!("nonzero curvature for {ww} in {b}")
            })?;
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(grid.len() >= 50, || "grid too small".into())?;
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{checked} connections over {} weight vectors",
        grid.len()
    ))
}

fn criterion_4(grid: &[Weights]) -> Outcome {
    for ww in grid {
        let n = ww.n() as i64;
        let sp = build_spectrum(ww);
        for b in [Basis::Omega, Basis::Phi] {
            let p = build_pairing(ww, b).map_err(|e| e.to_string())?;
            let g = p.matrix();
            let a0 = build_a0(ww, b).map_err(|e| e.to_string())?;
            let a_star = adjoint(&a0, &p).map_err(|e| e.to_string())?;
            ensure(a_star == a0, || format!("A0* != A0 for {ww} in {b}"))?;
            let ainf = build_a_inf(&sp);
            let ainf_star = adjoint(&ainf, &p).map_err(|e| e.to_string())?;
            let n_id = LaurentMatrix::identity(ww.mu()).scale(&LaurentPoly::constant(int(n)));
            ensure(ainf.plus(&ainf_star) == n_id, || {
                format!("A_inf + A_inf* for {ww} in {b}")
            })?;
            let r = build_r(ww, b).map_err(|e| e.to_string())?;
            let lhs = g.d_dx().shift(1, 0);
            let rhs = r.transpose().times(g).plus(&g.times(&r));
            ensure(lhs == rhs, || {
                format!("x G' != R^T G + G R for {ww} in {b}")
            })?;
        }
    }
    Ok(format!(
        "{} weight vectors, bases omega and phi",
        grid.len()
    ))
}

fn criterion_5(grid: &[Weights]) -> Outcome {
    for ww in grid {
        let sp = build_spectrum(ww);
        let mu = int(sp.mu() as i64);
        let n = sp.n();
        // oracle: residues are read off the closed-form diagonals s_k/μ
        let mut phi_expected: Vec<Rational> = (0..sp.mu())
            .map(|k| if k <= n { int(0) } else { &sp.s()[k] / &mu })
            .collect();
        let mut psi_expected: Vec<Rational> = phi_expected
            .iter()
            .map(|v| if *v == int(0) { int(0) } else { v - int(1) })
            .collect();
        phi_expected.sort();
        psi_expected.sort();
        for (b, expected) in [(Basis::Phi, phi_expected), (Basis::Psi, psi_expected)] {
            let c = build_connection(ww, b).map_err(|e| e.to_string())?;
            let res = residue_x(&c).map_err(|e| e.to_string())?;
            ensure(res.theta_free, || {
                format!("θ-dependent char poly for {ww} in {b}")
            })?;
            let eig = res
                .sorted_eigenvalues()
                .ok_or_else(|| format!("indeterminate eigenvalues for {ww} in {b}"))?;
            let in_range = match b {
                Basis::Phi => res.within_zero_one(),
                _ => res.within_minus_one_zero(),
            };
            ensure(in_range == Some(true), || {
                format!("eigenvalues {eig:?} out of range for {ww} in {b}")
            })?;
            ensure(eig == expected, || {
                format!("eigenvalues {eig:?} for {ww} in {b}")
            })?;
        }
    }
    Ok(format!("{} weight vectors", grid.len()))
}

fn criterion_6(grid: &[Weights]) -> Outcome {
    let golden = jordan_data(&w(&[2, 2])).map_err(|e| e.to_string())?;
    let sizes: Vec<usize> = golden.iter().flat_map(|(_, b)| b.clone()).collect();
    ensure(sizes == [3, 2], || format!("(2,2) blocks {sizes:?}"))?;
    for ww in grid {
        let sp = build_spectrum(ww);
        let mu = int(sp.mu() as i64);
        let mut from_runs: Vec<(Rational, Vec<usize>)> = Vec::new();
        for (value, len) in constant_runs(&sp) {
            let v = value / &mu;
            match from_runs.iter_mut().find(|(x, _)| *x == v) {
                Some((_, l)) => l.push(len),
                None => from_runs.push((v, vec![len])),
            }
        }
        for (_, l) in &mut from_runs {
            l.sort_unstable_by(|a, b| b.cmp(a));
        }
        from_runs.sort_by(|a, b| a.0.cmp(&b.0));
        let jd = jordan_data(ww).map_err(|e| e.to_string())?;
        ensure(jd == from_runs, || {
            format!("{ww}: blocks {jd:?} vs runs {from_runs:?}")
        })?;
    }
    Ok(format!(
        "{} weight vectors; (2,2) gives {{3, 2}}",
        grid.len()
    ))
}

fn criterion_7(grid: &[Weights]) -> Outcome {
    for ww in grid {
        let l = limit_fts(ww).map_err(|e| format!("{ww}: {e}"))?;
        let g_inv = inverse(&l.g).ok_or_else(|| format!("{ww}: singular g"))?;
        let star = |m: &QMatrix| g_inv.times(&m.transpose()).times(&l.g);
        ensure(star(&l.r0) == l.r0, || format!("{ww}: R0* != R0"))?;
        let n_id = QMatrix::identity(l.mu).scale(&int(ww.n() as i64));
        ensure(l.rinf.plus(&star(&l.rinf)) == n_id, || {
            format!("{ww}: Rinf duality")
        })?;
        let (is_fts, _) = nongraded_counterexample(ww).map_err(|e| e.to_string())?;
        ensure(is_fts == ww.is_projective_space(), || {
            format!("{ww}: ungraded tuple {is_fts}")
        })?;
    }
    let (_, wit) = nongraded_counterexample(&w(&[2, 2])).map_err(|e| e.to_string())?;
    let wit = wit.ok_or("no witness for (2,2)")?;
    ensure((wit.row, wit.col) == (2, 4), || format!("witness {wit:?}"))?;
    Ok(format!(
        "{} weight vectors; (2,2) witness g(R0 e2, e4) = {} vs g(e2, R0 e4) = {}",
        grid.len(),
        wit.lhs,
        wit.rhs
    ))
}

fn criterion_8(grid: &[Weights]) -> Outcome {
    let mut cyclic = 0;
    for ww in grid {
        let p = preprimitive_check(&limit_fts(ww).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure(p.any_preprimitive == ww.is_projective_space(), || {
            format!("{ww}: any_preprimitive = {}", p.any_preprimitive)
        })?;
        cyclic += usize::from(p.any_preprimitive);
    }
    Ok(format!(
        "{} weight vectors, {cyclic} with a cyclic vector",
        grid.len()
    ))
}

fn criterion_9() -> Outcome {
    for n in 1..=8 {
        let f = limit_manifold(n).map_err(|e| e.to_string())?;
        let mu = n + 1;
        let rep = existdef_check(&f).map_err(|e| e.to_string())?;
        ensure(rep.all_passed(), || {
            format!("n = {n}: {:?}", rep.failures().collect::<Vec<_>>())
        })?;
        for i in 0..mu {
            for j in 0..mu {
                let expected = (i + j < mu).then_some(i + j);
                ensure(f.product[i][j] == expected, || {
                    format!("n = {n}: product ({i}, {j})")
                })?;
            }
        }
        let c = structure_constants(&f).map_err(|e| e.to_string())?;
        for i in 1..=mu {
            for j in 1..=mu {
                for k in 1..=mu {
                    let expected = if i + j + k == mu + 2 { int(1) } else { int(0) };
                    ensure(c[i - 1][j - 1][k - 1] == expected, || {
                        format!("n = {n}: c({i},{j},{k})")
                    })?;
                }
            }
        }
        ensure(wdvv_check(&f), || format!("n = {n}: WDVV"))?;
        let h = homogeneity_check(&f);
        ensure(h.passed, || format!("n = {n}: remainder {}", h.remainder))?;
        if n == 2 {
            let expected = MPoly::monomial(int(3), vec![1, 1]);
            ensure(h.remainder == expected, || {
                format!("n = 2 remainder {}", h.remainder)
            })?;
        }
    }
    Ok("n = 1..8; n = 2 remainder 3*x1*x2".into())
}

fn criterion_10(grid: &[Weights]) -> Outcome {
    for ww in grid {
        let r = log_structure(ww).map_err(|e| e.to_string())?;
        ensure(r.metric_nondegenerate == ww.is_projective_space(), || {
            format!("{ww}: metric rank {}", r.metric_rank_at_0)
        })?;
    }
    let r = log_structure(&w(&[2, 2])).map_err(|e| e.to_string())?;
    let get = |name: &str| {
        r.section(name)
            .cloned()
            .ok_or(format!("missing section {name}"))
    };
    let phi0 = get("omega0-phi")?;
    ensure(phi0.flat && phi0.ic && phi0.gc && phi0.ec, || {
        format!("{phi0:?}")
    })?;
    ensure(!get("omega0")?.ic, || "omega0 satisfies IC".into())?;
    ensure(!get("omega0-psi")?.gc, || "omega0-psi satisfies GC".into())?;
    ensure(!get("omega3-psi")?.flat, || "omega3-psi is flat".into())?;
    Ok(format!(
        "{} weight vectors; (2,2) metric rank {} of 5",
        grid.len(),
        r.metric_rank_at_0
    ))
}

fn criterion_11(grid: &[Weights]) -> Outcome {
    let mut ties = 0;
    for ww in grid {
        let d = derive_basis(ww).map_err(|e| format!("{ww}: {e}"))?;
        let closed = build_a0(ww, Basis::Omega).map_err(|e| e.to_string())?;
        ensure(d.a0 == closed, || format!("{ww}: reconstructed A0 differs"))?;
        ties += usize::from(d.all_schedules.len() > 1);
    }
    Ok(format!(
        "{} weight vectors, {ties} with several closing schedules",
        grid.len()
    ))
}
