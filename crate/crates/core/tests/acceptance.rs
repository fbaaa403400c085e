//! Acceptance gate: ten criteria, run in order, one `[PASS]`/`[FAIL]` line
//! each on stderr (written directly so the harness does not capture it).

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;
use wordmap::poly::{TracePoly, Var};
use wordmap::sl2::{
    complex_normal, conic_form, conjugate_pair, eval_word, pi_map, random_lower_triangular,
    random_sl2, stream, trace_coords, y_t, Mat2, ProjPoint,
};
use wordmap::trace::{dickson_d, j_poly, phi_product, singular_sets, surface_gradient, trace_polynomial};
use wordmap::variety::*;
use wordmap::verify::random_word;
use wordmap::word::{FreeWord, Generator};

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Outcome {
    let expected = TracePoly::from_terms([
        ([2, 0, 0], 1.into()),
        ([0, 2, 0], 1.into()),
        ([0, 0, 2], 1.into()),
        ([1, 1, 1], (-1).into()),
        ([0, 0, 0], (-2).into()),
    ]);
    let w = FreeWord::parse("[x,y]").map_err(|e| e.to_string())?;
    let start = Instant::now();
    let p = trace_polynomial(&w);
    let elapsed = start.elapsed();
    ensure(p == expected, || format!("got {p}"))?;
    ensure(elapsed < Duration::from_millis(1), || format!("took {elapsed:?}"))?;
    Ok(format!("P_[x,y] = {p} in {elapsed:?}"))
}

fn ac2() -> Outcome {
    let j = j_poly();
    for n in 1..=6 {
        for m in 1..=6 {
            let p = trace_polynomial(&FreeWord::power_commutator(n, m));
            let f = phi_product(n, m);
            ensure(&p - &TracePoly::constant(2) == &(&f * &f) * &j, || format!("[x^{n},y^{m}]"))?;
        }
    }
    let mut combos = 0;
    for n in -4..=4i64 {
        for m in -4..=4i64 {
            if n == 0 || m == 0 {
                continue;
            }
            let base = trace_polynomial(&FreeWord::power_commutator(n.abs(), m.abs()));
            ensure(trace_polynomial(&FreeWord::power_commutator(n, m)) == base, || format!("[x^{n},y^{m}]"))?;
            combos += 1;
        }
    }
    Ok(format!("36 factorizations, {combos} sign combinations exact"))
}

fn ac3() -> Outcome {
    let mut count = 0;
    for n in -6..=6i64 {
        for m in -6..=6i64 {
            if n == 0 || m == 0 {
                continue;
            }
            let p = trace_polynomial(&FreeWord::power_pair(n, m));
            let lead = p.coefficient_in(Var::U, 1);
            let f = phi_product(n, m);
            ensure(p.degree_in(Var::U) == Some(1), || format!("x^{n}y^{m}: u-degree {:?}", p.degree_in(Var::U)))?;
            ensure(lead == f || lead == -&f, || format!("x^{n}y^{m}: u-coefficient {lead}"))?;
            count += 1;
        }
    }
    for n in 1..=8u32 {
        let d = dickson_d(n).substitute(Var::T, &TracePoly::one());
        ensure(trace_polynomial(&FreeWord::generator(Generator::X, n as i64)) == d, || format!("x^{n}"))?;
    }
    Ok(format!("{count} power words linear in u; x^1..x^8 match D_n(s,1)"))
}

fn ac4() -> Outcome {
    let mut words = Vec::new();
    for n in 1..=5 {
        for m in 1..=5 {
            words.push(FreeWord::power_commutator(n, m));
        }
    }
    for n in -5..=5i64 {
        for m in -5..=5i64 {
            if n != 0 && m != 0 {
                words.push(FreeWord::power_pair(n, m));
            }
        }
    }
    let mut rng = stream(2024, 0);
    for _ in 0..50 {
        words.push(random_word(&mut rng, 8, 3));
    }
    let pairs: Vec<(Mat2, Mat2)> = (0..200).map(|_| (random_sl2(&mut rng), random_sl2(&mut rng))).collect();
    let mut worst = (0f64, String::new());
    for w in &words {
        let p = trace_polynomial(w);
        // the trace is computed on the cyclically reduced conjugate, which
        // has the same trace without the cancellation of long conjugations
        let reduced = w.cyclically_reduce();
        for (x, y) in &pairs {
            let direct = eval_word(&reduced, x, y).trace();
            let dev = (direct - p.eval(&trace_coords(x, y))).norm() / direct.norm().max(1.0);
            if dev > worst.0 {
                worst = (dev, w.to_string());
            }
        }
    }
    ensure(worst.0 < 1e-8, || format!("max relative deviation {:e} at {}", worst.0, worst.1))?;
    Ok(format!("{} words x 200 pairs, max relative deviation {:.2e}", words.len(), worst.0))
}

fn ac5() -> Outcome {
    let d = singular_sets(1, 1).map_err(|e| e.to_string())?;
    ensure(d.a_n.len() == 1 && d.a_n[0].norm() < 1e-9, || format!("A_1 = {:?}", d.a_n))?;
    ensure(d.b_nm.len() == 1 && (d.b_nm[0] + 2.0).norm() < 1e-9, || format!("B_11 = {:?}", d.b_nm))?;
    for n in 1..=5u32 {
        for m in 1..=5u32 {
            let d = singular_sets(n, m).map_err(|e| e.to_string())?;
            ensure(d.a_n.len() <= n as usize + 1 && d.a_m.len() <= m as usize + 1, || format!("|A| at {n},{m}"))?;
            ensure(d.b_nm.len() <= ((n + 1) * (m + 1)) as usize, || format!("|B_{n}{m}| = {}", d.b_nm.len()))?;
        }
    }
    let alpha = c(3.0, 0.0);
    let b23 = singular_sets(2, 3).map_err(|e| e.to_string())?.b_nm;
    ensure(b23.iter().all(|b| (b - alpha).norm() > 1e-6), || "3 lies in B_23".into())?;
    let spec = SurfaceSpec::new(FreeWord::power_commutator(2, 3), alpha).map_err(|e| e.to_string())?;
    let pts = sample_surface(&spec, 200, 55).map_err(|e| e.to_string())?;
    let min = pts
        .iter()
        .map(|p| surface_gradient(&spec.poly, &p.pt).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .fold(f64::INFINITY, f64::min);
    ensure(pts.len() == 200 && min > 1e-6, || format!("min gradient norm {min:e}"))?;
    Ok(format!("A_1={{0}}, B_11={{-2}}, bounds hold, min |grad| on H_[x^2,y^3],3 = {min:.3e}"))
}

fn ac6() -> Outcome {
    let alphas = [c(3.0, 0.0), c(-1.0, 0.0), c(2.0, 1.0)];
    let (mut max_res, mut max_tr, mut solved) = (0f64, 0f64, 0);
    for n in 1..=3 {
        for m in 1..=3 {
            for (k, &alpha) in alphas.iter().enumerate() {
                let spec = SurfaceSpec::for_solver(FreeWord::power_commutator(n, m), alpha).map_err(|e| e.to_string())?;
                let mut rng = stream(606, (n * 100 + m * 10) as u64 + k as u64);
                let pts = sample_surface(&spec, 50, rng.gen()).map_err(|e| e.to_string())?;
                for p in &pts {
                    let z = random_sl2(&mut rng);
                    let g = z.mul(&y_t(alpha)).mul(&z.inverse().map_err(|e| e.to_string())?);
                    let sol = solve_word_equation(&spec, &g, p)
                        .map_err(|e| format!("[x^{n},y^{m}] alpha={alpha}: {e}"))?;
                    let res = (eval_word(&spec.word, &sol.x, &sol.y) - g).op_norm();
                    max_res = max_res.max(res);
                    max_tr = max_tr.max(sol.trace_point().dist(&p.pt));
                    solved += 1;
                }
            }
        }
    }
    ensure(max_res < 1e-7, || format!("max residual {max_res:e}"))?;
    ensure(max_tr < 1e-7, || format!("max trace deviation {max_tr:e}"))?;
    Ok(format!("{solved} solves, max |w(x,y)-g| {max_res:.2e}, max |Tr-pt| {max_tr:.2e}"))
}

fn ac7() -> Outcome {
    let mut rng = stream(707, 0);
    let (mut inv, mut conic, mut trials) = (0f64, 0f64, 0);
    while trials < 100 {
        let (x, y) = (random_sl2(&mut rng), random_sl2(&mut rng));
        if j_poly().eval(&trace_coords(&x, &y)).norm() < 1e-3 {
            continue;
        }
        trials += 1;
        let z = random_lower_triangular(&mut rng);
        let (x1, y1) = conjugate_pair(&z, &x, &y).map_err(|e| e.to_string())?;
        let (pt, p) = pi_map(&x, &y).map_err(|e| e.to_string())?;
        let (pt1, p1) = pi_map(&x1, &y1).map_err(|e| e.to_string())?;
        inv = inv.max(p.dist(&p1)).max(p1.dist(&p)).max(pt.dist(&pt1));
        conic = conic.max(conic_form(&pt, &p).norm()).max(conic_form(&pt1, &p1).norm());
    }
    ensure(inv < 1e-7, || format!("projective deviation {inv:e}"))?;
    ensure(conic < 1e-7, || format!("conic residual {conic:e}"))?;
    Ok(format!("100 trials, max deviation {inv:.2e}, max conic residual {conic:.2e}"))
}

fn ac8() -> Outcome {
    for t in [c(2.0, 0.0), c(-2.0, 0.0)] {
        ensure(fiber_infinity(t).len() == 1, || format!("t={t}"))?;
    }
    let mut rng = stream(808, 0);
    for _ in 0..100 {
        let t = complex_normal(&mut rng);
        ensure(fiber_infinity(t).len() == 2, || format!("t={t}"))?;
    }

    let alpha = c(3.0, 0.0);
    let mut max_tau = 0f64;
    let mut done = 0;
    let cases = [(1i64, 1i64), (2, 3), (3, 1)];
    let mut round = 0u64;
    while done < 200 {
        let (n, m) = cases[done % cases.len()];
        let ctx = TauContext::new(alpha, n, m).map_err(|e| e.to_string())?;
        let spec = SurfaceSpec::new(FreeWord::power_commutator(n, m), alpha).map_err(|e| e.to_string())?;
        round += 1;
        let p = sample_surface(&spec, 1, round).map_err(|e| e.to_string())?[0];
        if (p.pt.t * p.pt.t - 4.0).norm() <= 0.1 {
            continue;
        }
        let (a, b) = conic_point_at(&p.pt, complex_normal(&mut rng), 1);
        let proj = ProjPoint::new([a, b, c(1.0, 0.0)]).map_err(|e| e.to_string())?;
        let img = tau_map(&p.pt, &proj, &ctx).map_err(|e| e.to_string())?;
        max_tau = max_tau.max(img.residual);
        done += 1;
    }
    ensure(max_tau < 1e-7, || format!("tau residual {max_tau:e}"))?;

    let spec = SurfaceSpec::for_solver(FreeWord::power_commutator(2, 1), c(-1.0, 0.0)).map_err(|e| e.to_string())?;
    let (mut min_sep, mut max_orbit_res) = (f64::INFINITY, 0f64);
    for p in sample_surface(&spec, 10, 88).map_err(|e| e.to_string())? {
        let z = random_sl2(&mut rng);
        let g = z.mul(&y_t(spec.alpha)).mul(&z.inverse().map_err(|e| e.to_string())?);
        let sol = solve_word_equation(&spec, &g, &p).map_err(|e| e.to_string())?;
        let deltas = [complex_normal(&mut rng), complex_normal(&mut rng), complex_normal(&mut rng)];
        let orbit = fiber_orbit(&sol, &deltas).map_err(|e| e.to_string())?;
        for o in &orbit {
            ensure(o.trace_point().dist(&p.pt) < 1e-7, || "orbit leaves the base point".into())?;
            let (base, _) = pi_map(&o.x, &o.y).map_err(|e| e.to_string())?;
            ensure(base.dist(&p.pt) < 1e-7, || "pi base point moved".into())?;
            max_orbit_res = max_orbit_res.max(o.residual);
        }
        let picks: Vec<&SolutionPair> = orbit.iter().step_by(2).collect();
        for i in 0..picks.len() {
            for j in i + 1..picks.len() {
                min_sep = min_sep.min(picks[i].distance(picks[j]));
            }
        }
    }
    ensure(min_sep > 1e-6, || format!("orbit points coincide ({min_sep:e})"))?;
    Ok(format!(
        "infinity counts ok, 200 tau images max {max_tau:.2e}, orbit min separation {min_sep:.2e}, \
         orbit |w(x,y)-g| max {max_orbit_res:.2e} (informational)"
    ))
}

fn ac9() -> Outcome {
    let mut rng = stream(909, 0);
    let mut max_pw = 0f64;
    for _ in 0..500 {
        let n = rng.gen_range(1..=4i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let m = rng.gen_range(1..=4i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let alpha = complex_normal(&mut rng) * 2.0;
        let (s, t) = (complex_normal(&mut rng), complex_normal(&mut rng));
        let p = parametrize_power_word(n, m, alpha, s, t).map_err(|e| format!("x^{n}y^{m}: {e}"))?;
        let direct = (trace_polynomial(&FreeWord::power_pair(n, m)).eval(&p.pt) - alpha).norm();
        max_pw = max_pw.max(direct);
    }
    let mut max_cm = 0f64;
    for _ in 0..500 {
        let n = rng.gen_range(1..=4u32);
        let alpha = complex_normal(&mut rng) * 2.0;
        let (r, s) = (complex_normal(&mut rng), complex_normal(&mut rng));
        let p = parametrize_commutator_n1(n, alpha, r, s).map_err(|e| format!("[x^{n},y]: {e}"))?;
        let direct = (trace_polynomial(&FreeWord::power_commutator(n as i64, 1)).eval(&p.point.pt) - alpha).norm();
        max_cm = max_cm.max(direct);
    }
    ensure(max_pw < 1e-7, || format!("power word residual {max_pw:e}"))?;
    ensure(max_cm < 1e-7, || format!("commutator residual {max_cm:e}"))?;
    Ok(format!("500+500 draws, max residuals {max_pw:.2e} (x^n y^m), {max_cm:.2e} ([x^n,y])"))
}

fn ac10() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_wordmap"))
            .args(["verify", "all", "--seed", "42"])
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(!a.stdout.is_empty(), || "empty report".into())?;
    ensure(a.stdout == b.stdout, || "reports differ".into())?;
    ensure(a.status.code() == b.status.code(), || "exit codes differ".into())?;
    let lines = a.stdout.iter().filter(|&&ch| ch == b'\n').count();
    Ok(format!("two runs byte-identical ({} bytes, {lines} lines, exit {:?})", a.stdout.len(), a.status.code()))
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("AC-1 trace polynomial of [x,y]", ac1, Duration::from_millis(1)),
        ("AC-2 commutator factorization and sign invariance", ac2, Duration::from_secs(5)),
        ("AC-3 power words linear in u, Dickson powers", ac3, Duration::from_secs(2)),
        ("AC-4 commuting diagram", ac4, Duration::from_secs(60)),
        ("AC-5 singular locus and smoothness", ac5, Duration::from_secs(10)),
        ("AC-6 word-equation solver", ac6, Duration::from_secs(30)),
        ("AC-7 quotient-map invariance", ac7, Duration::from_secs(5)),
        ("AC-8 bundle geometry", ac8, Duration::from_secs(10)),
        ("AC-9 rational parametrizations", ac9, Duration::from_secs(10)),
        ("AC-10 verify determinism", ac10, Duration::from_secs(120)),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (name, f, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > budget => Err(format!("{msg}; runtime {elapsed:?} over budget {budget:?}")),
            other => other,
        };
        let line = match &outcome {
            Ok(msg) => format!("[PASS] {name}: {msg} ({elapsed:.2?})\n"),
            Err(msg) => {
                failed.push(name);
                format!("[FAIL] {name}: {msg} ({elapsed:.2?})\n")
            }
        };
        let _ = err.write_all(line.as_bytes());
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
