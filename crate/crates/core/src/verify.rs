//! Deterministic property suites run by `wordmap verify`.
//!
//! Every check draws from its own seeded stream, and reports contain no
//! timings, so a report depends only on the seed and the tolerance.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::poly::{ComplexTriple, TracePoly, Var};
use crate::sl2::{
    centralizer_element, centralizer_sample, complex_normal, conjugate_pair, conjugator_between,
    conic_form, eval_word, pi_map, random_lower_triangular, random_sl2, stream, trace_coords, y_t,
    Mat2, ProjPoint,
};
use crate::trace::{
    dickson_d, j_poly, phi, phi_product, singular_sets, surface_gradient, trace_polynomial,
};
use crate::variety::{
    conic_point, fiber_coordinate, fiber_infinity, fiber_orbit, parametrize_commutator_n1,
    parametrize_power_word, sample_surface, solve_word_equation, tau_map, SurfaceSpec, TauContext,
};
use crate::word::{FreeWord, Generator, Syllable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Trace,
    Bundle,
    Solver,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        match name {
            "trace" => Some(Suite::Trace),
            "bundle" => Some(Suite::Bundle),
            "solver" => Some(Suite::Solver),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

/// One property: `max` is the worst observed residual over `samples` cases
/// (zero for exact checks).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub pass: bool,
    pub samples: usize,
    pub max: f64,
    pub bound: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub tol: f64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(
                out,
                "{} {}/{} samples={} max={:.3e} bound={:.1e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.suite,
                c.name,
                c.samples,
                c.max,
                c.bound
            );
            if !c.detail.is_empty() {
                let _ = write!(out, " {}", c.detail);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} {}/{} checks passed",
            if self.passed() { "OK" } else { "FAILED" },
            self.checks.len() - self.failures(),
            self.checks.len()
        );
        out
    }

    /// One JSON object per check, then a summary object.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&serde_json::to_string(c).expect("check serializes"));
            out.push('\n');
        }
        let summary = serde_json::json!({
            "seed": self.seed,
            "tol": self.tol,
            "passed": self.passed(),
            "checks": self.checks.len(),
            "failures": self.failures(),
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}

struct Collector {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Collector {
    fn exact(&mut self, name: impl Into<String>, samples: usize, failures: Vec<String>) {
        let detail = match failures.first() {
            Some(f) => format!("failures={} first={}", failures.len(), f),
            None => String::new(),
        };
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            pass: failures.is_empty(),
            samples,
            max: 0.0,
            bound: 0.0,
            detail,
        });
    }

    fn bounded(&mut self, name: impl Into<String>, samples: usize, max: f64, bound: f64, errors: Vec<String>) {
        let mut detail = String::new();
        if let Some(e) = errors.first() {
            detail = format!("errors={} first={}", errors.len(), e);
        }
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            pass: errors.is_empty() && max < bound,
            samples,
            max,
            bound,
            detail,
        });
    }

    fn lower_bounded(&mut self, name: impl Into<String>, samples: usize, min: f64, floor: f64) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            pass: min > floor,
            samples,
            max: min,
            bound: floor,
            detail: "min-above-bound".into(),
        });
    }
}

/// Runs `suite` with tolerance `tol` for the `1e-7`-level numeric checks.
pub fn run(suite: Suite, seed: u64, tol: f64) -> Report {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Trace | Suite::All) {
        checks.extend(trace_suite(seed));
    }
    if matches!(suite, Suite::Bundle | Suite::All) {
        checks.extend(bundle_suite(seed, tol));
    }
    if matches!(suite, Suite::Solver | Suite::All) {
        checks.extend(solver_suite(seed, tol));
    }
    Report { seed, tol, checks }
}

/// A reduced random word with `1..=max_syllables` syllables and exponents
/// in `[-max_exp, max_exp] \ {0}`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_syllables: usize, max_exp: i64) -> FreeWord {
    let len = rng.gen_range(1..=max_syllables);
    let mut gen = if rng.gen_bool(0.5) { Generator::X } else { Generator::Y };
    let mut syls = Vec::with_capacity(len);
    for _ in 0..len {
        let mut e = rng.gen_range(1..=max_exp);
        if rng.gen_bool(0.5) {
            e = -e;
        }
        syls.push(Syllable::new(gen, e));
        gen = match gen {
            Generator::X => Generator::Y,
            Generator::Y => Generator::X,
        };
    }
    FreeWord::from_syllables(syls)
}

/// A random polynomial with up to `terms` terms of total degree `<= deg`
/// and coefficients in `[-9, 9]`.
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, terms: usize, deg: u32) -> TracePoly {
    let n = rng.gen_range(0..=terms);
    TracePoly::from_terms((0..n).map(|_| {
        let es = rng.gen_range(0..=deg);
        let et = rng.gen_range(0..=deg - es);
        let eu = rng.gen_range(0..=deg - es - et);
        ([es, et, eu], BigInt::from(rng.gen_range(-9i64..=9)))
    }))
}

fn bounded_point<R: Rng + ?Sized>(rng: &mut R) -> ComplexTriple {
    let mut z = || Complex64::new(rng.gen_range(-1.4..1.4), rng.gen_range(-1.4..1.4));
    ComplexTriple::new(z(), z(), z())
}

/// The word suite of the commuting-diagram check.
pub fn diagram_words(seed: u64) -> Vec<FreeWord> {
    let mut words = Vec::new();
    for n in 1..=5 {
        for m in 1..=5 {
            words.push(FreeWord::power_commutator(n, m));
        }
    }
    for n in -5..=5i64 {
        for m in -5..=5i64 {
            words.push(FreeWord::power_pair(n, m));
        }
    }
    let mut rng = stream(seed, 0x57);
    for _ in 0..50 {
        words.push(random_word(&mut rng, 8, 3));
    }
    words
}

fn trace_suite(seed: u64) -> Vec<Check> {
    let mut col = Collector { suite: "trace", checks: Vec::new() };

    // word-core
    let mut rng = stream(seed, 1);
    let mut fails = Vec::new();
    for _ in 0..200 {
        let w = random_word(&mut rng, 8, 4);
        match FreeWord::parse(&w.to_string()) {
            Ok(back) if back == w => {}
            _ => fails.push(w.to_string()),
        }
    }
    col.exact("word.parse_format_round_trip", 200, fails);

    let mut fails = Vec::new();
    for _ in 0..200 {
        let (a, b, c) = (
            random_word(&mut rng, 5, 3),
            random_word(&mut rng, 5, 3),
            random_word(&mut rng, 5, 3),
        );
        if a.concat(&b).concat(&c) != a.concat(&b.concat(&c)) {
            fails.push(format!("assoc {a} {b} {c}"));
        }
        if a.invert().invert() != a {
            fails.push(format!("invert {a}"));
        }
        let (ab, ea, eb) = (a.concat(&b).abelianize(), a.abelianize(), b.abelianize());
        if ab.ex != ea.ex + eb.ex || ab.ey != ea.ey + eb.ey {
            fails.push(format!("abelianize {a} {b}"));
        }
        if !a.commutator(&b).abelianize().is_trivial() {
            fails.push(format!("commutator {a} {b}"));
        }
    }
    col.exact("word.group_laws", 200, fails);

    // polyring
    let mut rng = stream(seed, 2);
    let mut fails = Vec::new();
    for _ in 0..100 {
        let p = random_poly(&mut rng, 5, 3);
        let q = random_poly(&mut rng, 5, 3);
        let r = random_poly(&mut rng, 5, 3);
        if &p * &(&q + &r) != &(&p * &q) + &(&p * &r) || &p * &q != &q * &p || &p + &q != &q + &p {
            fails.push(format!("{p} | {q} | {r}"));
        }
    }
    col.exact("poly.ring_axioms", 100, fails);

    let mut max = 0f64;
    for _ in 0..100 {
        let p = random_poly(&mut rng, 6, 4);
        let q = random_poly(&mut rng, 6, 4);
        let pt = bounded_point(&mut rng);
        let (ep, eq, epq) = (p.eval(&pt), q.eval(&pt), (&p * &q).eval(&pt));
        max = max.max((epq - ep * eq).norm() / epq.norm().max(1.0));
    }
    col.bounded("poly.eval_homomorphism", 100, max, 1e-9, Vec::new());

    let mut fails = Vec::new();
    for _ in 0..100 {
        let p = random_poly(&mut rng, 5, 3);
        let q = random_poly(&mut rng, 5, 3);
        if q.is_zero() {
            continue;
        }
        match (&p * &q).div_exact(&q) {
            Ok(d) if d == p => {}
            _ => fails.push(format!("({p}) / ({q})")),
        }
        if p.partial(Var::S).partial(Var::T) != p.partial(Var::T).partial(Var::S) {
            fails.push(format!("partials {p}"));
        }
    }
    col.exact("poly.div_exact_and_partials", 100, fails);

    // trace-engine exact identities
    let comm = trace_polynomial(&FreeWord::power_commutator(1, 1));
    let expected: TracePoly = "s^2 + t^2 + u^2 - s*t*u - 2".parse().expect("literal parses");
    col.exact(
        "trace.commutator_example",
        1,
        if comm == expected { vec![] } else { vec![comm.to_string()] },
    );

    let j = j_poly();
    let mut fails = Vec::new();
    for n in 1..=6 {
        for m in 1..=6 {
            let p = trace_polynomial(&FreeWord::power_commutator(n, m));
            let f = phi_product(n, m);
            if &p - &TracePoly::constant(2) != &(&f * &f) * &j {
                fails.push(format!("[x^{n},y^{m}]"));
            }
        }
    }
    col.exact("trace.commutator_factorization", 36, fails);

    let mut fails = Vec::new();
    let mut samples = 0;
    for n in -6..=6i64 {
        for m in -6..=6i64 {
            if n == 0 || m == 0 {
                continue;
            }
            samples += 1;
            let p = trace_polynomial(&FreeWord::power_pair(n, m));
            let f = phi_product(n, m);
            let lead = p.coefficient_in(Var::U, 1);
            let ok = p.degree_in(Var::U) == Some(1) && (lead == f || lead == -&f);
            if !ok {
                fails.push(format!("x^{n}y^{m}"));
            }
        }
    }
    col.exact("trace.power_word_u_linear", samples, fails);

    let mut fails = Vec::new();
    for n in 1..=8u32 {
        let d = dickson_d(n).substitute(Var::T, &TracePoly::one());
        if trace_polynomial(&FreeWord::generator(Generator::X, n as i64)) != d {
            fails.push(format!("x^{n}"));
        }
    }
    col.exact("trace.power_is_dickson", 8, fails);

    let mut fails = Vec::new();
    let mut rng = stream(seed, 3);
    for _ in 0..50 {
        let w = random_word(&mut rng, 6, 3);
        let p = trace_polynomial(&w);
        if trace_polynomial(&w.rotate_letter()) != p || trace_polynomial(&w.invert()) != p {
            fails.push(w.to_string());
        }
    }
    col.exact("trace.rotation_and_inverse_invariance", 50, fails);

    let mut fails = Vec::new();
    for n in 1..=4i64 {
        for m in 1..=4i64 {
            let base = trace_polynomial(&FreeWord::power_commutator(n, m));
            for (a, b) in [(-n, m), (n, -m), (-n, -m)] {
                if trace_polynomial(&FreeWord::power_commutator(a, b)) != base {
                    fails.push(format!("[x^{a},y^{b}]"));
                }
            }
        }
    }
    col.exact("trace.commutator_sign_invariance", 48, fails);

    // phi at s = 2 counts the power: phi_k(2) = k
    let mut fails = Vec::new();
    for k in 1..=8u32 {
        let v = phi(k).eval(&ComplexTriple::real(2.0, 0.0, 0.0));
        if (v - k as f64).norm() > 1e-12 {
            fails.push(format!("k={k}"));
        }
    }
    col.exact("trace.phi_at_two", 8, fails);

    // commuting diagram
    let words = diagram_words(seed);
    let polys: Vec<TracePoly> = words.iter().map(trace_polynomial).collect();
    let mut rng = stream(seed, 4);
    let pairs: Vec<(Mat2, Mat2)> = (0..200).map(|_| (random_sl2(&mut rng), random_sl2(&mut rng))).collect();
    let mut max = 0f64;
    let mut worst = String::new();
    for (w, p) in words.iter().zip(&polys) {
        // tr is a class function; the reduced conjugate avoids the growth
        // and cancellation of conjugating by long prefixes
        let reduced = w.cyclically_reduce();
        for (x, y) in &pairs {
            let direct = eval_word(&reduced, x, y).trace();
            let dev = (direct - p.eval(&trace_coords(x, y))).norm() / direct.norm().max(1.0);
            if dev > max {
                max = dev;
                worst = w.to_string();
            }
        }
    }
    let n = words.len() * pairs.len();
    let mut errs = Vec::new();
    if max >= 1e-8 {
        errs.push(worst);
    }
    col.bounded("trace.commuting_diagram", n, max, 1e-8, errs);

    // singular sets
    let mut fails = Vec::new();
    match singular_sets(1, 1) {
        Ok(d) => {
            let a_ok = d.a_n.len() == 1 && d.a_n[0].norm() < 1e-9;
            let b_ok = d.b_nm.len() == 1 && (d.b_nm[0] + 2.0).norm() < 1e-9;
            if !a_ok || !b_ok {
                fails.push("n=m=1".to_string());
            }
        }
        Err(e) => fails.push(e.to_string()),
    }
    for n in 1..=5u32 {
        for m in 1..=5u32 {
            match singular_sets(n, m) {
                Ok(d) => {
                    if d.a_n.len() > n as usize + 1
                        || d.a_m.len() > m as usize + 1
                        || d.b_nm.len() > ((n + 1) * (m + 1)) as usize
                    {
                        fails.push(format!("cardinality n={n} m={m}"));
                    }
                }
                Err(e) => fails.push(format!("n={n} m={m}: {e}")),
            }
        }
    }
    col.exact("trace.singular_sets", 26, fails);

    col.checks
}

fn bundle_suite(seed: u64, tol: f64) -> Vec<Check> {
    let mut col = Collector { suite: "bundle", checks: Vec::new() };

    // pi invariance and conic equation
    let mut rng = stream(seed, 10);
    let (mut inv_max, mut conic_max) = (0f64, 0f64);
    let mut errs = Vec::new();
    let mut trials = 0;
    while trials < 100 {
        let (x, y) = (random_sl2(&mut rng), random_sl2(&mut rng));
        if j_poly().eval(&trace_coords(&x, &y)).norm() < 1e-3 {
            continue;
        }
        trials += 1;
        let z = random_lower_triangular(&mut rng);
        let r = conjugate_pair(&z, &x, &y).and_then(|(x1, y1)| {
            let (pt, p) = pi_map(&x, &y)?;
            let (pt1, p1) = pi_map(&x1, &y1)?;
            Ok((pt, p, pt1, p1))
        });
        match r {
            Ok((pt, p, pt1, p1)) => {
                inv_max = inv_max.max(p.dist(&p1).max(p1.dist(&p))).max(pt.dist(&pt1) / scale(&pt));
                conic_max = conic_max.max(conic_form(&pt, &p).norm() / scale(&pt));
            }
            Err(e) => errs.push(e.to_string()),
        }
    }
    col.bounded("sl2.pi_b_invariance", 100, inv_max, tol, errs.clone());
    col.bounded("sl2.pi_on_conic", 100, conic_max, tol, errs);

    // conjugator_between
    let mut max = 0f64;
    let mut errs = Vec::new();
    for _ in 0..100 {
        let g1 = random_sl2(&mut rng);
        let z = random_sl2(&mut rng);
        let g2 = z.mul(&g1).mul(&z.adjugate());
        match conjugator_between(&g1, &g2) {
            Ok(cm) => {
                let lhs = cm.mul(&g1).mul(&cm.adjugate());
                max = max.max((lhs - g2).op_norm() / g2.op_norm().max(1.0));
                max = max.max((cm.det() - 1.0).norm());
            }
            Err(e) => errs.push(e.to_string()),
        }
    }
    col.bounded("sl2.conjugator_between", 100, max, tol, errs);

    // centralizer of y_t
    let (mut comm_max, mut span_max) = (0f64, 0f64);
    for _ in 0..100 {
        let t = complex_normal(&mut rng);
        let d1 = complex_normal(&mut rng);
        let d2 = complex_normal(&mut rng);
        let cm = centralizer_element(&centralizer_sample(t, d1, 1));
        let yt = y_t(t);
        comm_max = comm_max.max((cm.mul(&yt) - yt.mul(&cm)).op_norm() / cm.op_norm().max(1.0));
        // another element commuting with both lies in the same torus
        let a = centralizer_element(&centralizer_sample(t, d2, -1));
        let pt = trace_coords(&a, &yt);
        span_max = span_max.max(j_poly().eval(&pt).norm() / scale(&pt).powi(3));
    }
    col.bounded("sl2.centralizer_commutes", 100, comm_max, 1e-9, Vec::new());
    col.bounded("sl2.centralizer_reducible", 100, span_max, 1e-9, Vec::new());

    // points at infinity
    let mut fails = Vec::new();
    for t in [2.0, -2.0] {
        if fiber_infinity(Complex64::new(t, 0.0)).len() != 1 {
            fails.push(format!("t={t}"));
        }
    }
    let mut rng = stream(seed, 11);
    for _ in 0..100 {
        let t = complex_normal(&mut rng);
        let pts = fiber_infinity(t);
        let pt = ComplexTriple::new(complex_normal(&mut rng), t, complex_normal(&mut rng));
        let on = pts.iter().all(|p| conic_form(&pt, p).norm() < 1e-9 * scale(&pt));
        if pts.len() != 2 || !on {
            fails.push(format!("t={t}"));
        }
    }
    col.exact("variety.fiber_infinity_count", 102, fails);

    // tau map
    let mut rng = stream(seed, 12);
    let alpha = Complex64::new(3.0, 0.0);
    let mut max = 0f64;
    let mut errs = Vec::new();
    let mut done = 0;
    let specs: Vec<(i64, i64)> = vec![(1, 1), (2, 1), (2, 3), (3, 3)];
    while done < 200 {
        let (n, m) = specs[done % specs.len()];
        let spec = SurfaceSpec::new(FreeWord::power_commutator(n, m), alpha).expect("alpha != +-2");
        let ctx = TauContext::new(alpha, n, m).expect("valid context");
        let pt = match sample_surface(&spec, 1, rng.gen()) {
            Ok(p) => p[0].pt,
            Err(e) => {
                errs.push(e.to_string());
                done += 1;
                continue;
            }
        };
        if (pt.t * pt.t - 4.0).norm() <= 0.1 {
            continue;
        }
        done += 1;
        let b = complex_normal(&mut rng);
        let (a, b) = crate::variety::conic_point_at(&pt, b, if rng.gen_bool(0.5) { 1 } else { -1 });
        let proj = if rng.gen_bool(0.25) {
            fiber_infinity(pt.t)[0]
        } else {
            match ProjPoint::new([a, b, Complex64::new(1.0, 0.0)]) {
                Ok(p) => p,
                Err(e) => {
                    errs.push(e.to_string());
                    continue;
                }
            }
        };
        match tau_map(&pt, &proj, &ctx) {
            Ok(img) => max = max.max(img.residual),
            Err(e) => errs.push(e.to_string()),
        }
    }
    col.bounded("variety.tau_map_equation", 200, max, tol, errs);

    // centralizer orbits
    let mut rng = stream(seed, 13);
    let mut errs = Vec::new();
    let (mut base_max, mut min_sep) = (0f64, f64::INFINITY);
    let mut samples = 0;
    for (n, m) in [(1, 1), (2, 1), (3, 2)] {
        let spec = SurfaceSpec::for_solver(FreeWord::power_commutator(n, m), Complex64::new(-1.0, 0.5))
            .expect("derived subgroup");
        let pts = match sample_surface(&spec, 5, rng.gen()) {
            Ok(p) => p,
            Err(e) => {
                errs.push(e.to_string());
                continue;
            }
        };
        for p in pts {
            samples += 1;
            let z = random_sl2(&mut rng);
            let g = z.mul(&y_t(spec.alpha)).mul(&z.adjugate());
            let deltas = [complex_normal(&mut rng), complex_normal(&mut rng), complex_normal(&mut rng)];
            let res = solve_word_equation(&spec, &g, &p).and_then(|sol| {
                let orbit = fiber_orbit(&sol, &deltas)?;
                let coords = orbit
                    .iter()
                    .step_by(2)
                    .map(fiber_coordinate)
                    .collect::<crate::Result<Vec<_>>>()?;
                Ok((orbit, coords))
            });
            match res {
                Ok((orbit, coords)) => {
                    for o in &orbit {
                        base_max = base_max.max(o.trace_point().dist(&p.pt) / scale(&p.pt));
                    }
                    for i in 0..coords.len() {
                        for j in i + 1..coords.len() {
                            min_sep = min_sep.min(coords[i].dist(&coords[j]).max(coords[j].dist(&coords[i])));
                        }
                    }
                }
                Err(e) => errs.push(e.to_string()),
            }
        }
    }
    col.bounded("variety.orbit_shared_base", samples, base_max, tol, errs);
    col.lower_bounded("variety.orbit_distinct_fibers", samples, min_sep, 1e-6);

    // punctures
    let mut rng = stream(seed, 14);
    let mut fails = Vec::new();
    let mut conic_max = 0f64;
    let spec = SurfaceSpec::for_solver(FreeWord::power_commutator(1, 1), Complex64::new(3.0, 0.0)).expect("valid");
    let pts = sample_surface(&spec, 10, rng.gen()).unwrap_or_default();
    for p in &pts {
        match crate::variety::verify_fiber_two_punctures(&spec, p) {
            Ok(r) => {
                conic_max = conic_max.max(r.conic_residual / scale(&p.pt));
                if r.boundary_count != 2 || r.excluded_points.len() != 2 {
                    fails.push(format!("boundary={} excluded={}", r.boundary_count, r.excluded_points.len()));
                }
            }
            Err(e) => fails.push(e.to_string()),
        }
    }
    if pts.len() != 10 {
        fails.push("sampling failed".into());
    }
    col.exact("variety.fiber_two_punctures", pts.len(), fails);
    col.bounded("variety.puncture_points_on_conic", pts.len(), conic_max, tol, Vec::new());

    // rational parametrizations
    let mut rng = stream(seed, 15);
    let (mut max, mut errs) = (0f64, Vec::new());
    for _ in 0..500 {
        let n = rng.gen_range(1..=4i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let m = rng.gen_range(1..=4i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let alpha = complex_normal(&mut rng) * 2.0;
        let (s, t) = (complex_normal(&mut rng), complex_normal(&mut rng));
        match parametrize_power_word(n, m, alpha, s, t) {
            Ok(p) => max = max.max(p.residual),
            Err(e) => errs.push(e.to_string()),
        }
    }
    col.bounded("variety.power_word_parametrization", 500, max, 1e-8, errs);

    let (mut max, mut errs) = (0f64, Vec::new());
    for _ in 0..500 {
        let n = rng.gen_range(1..=4u32);
        let alpha = complex_normal(&mut rng) * 2.0;
        let (r, s) = (complex_normal(&mut rng), complex_normal(&mut rng));
        match parametrize_commutator_n1(n, alpha, r, s) {
            Ok(p) => max = max.max(p.point.residual),
            Err(e) => errs.push(e.to_string()),
        }
    }
    col.bounded("variety.commutator_parametrization", 500, max, 1e-8, errs);

    // smoothness
    let spec = SurfaceSpec::new(FreeWord::power_commutator(2, 3), Complex64::new(3.0, 0.0)).expect("valid");
    let (mut min_grad, mut n) = (f64::INFINITY, 0);
    if let Ok(pts) = sample_surface(&spec, 200, stream(seed, 16).gen()) {
        for p in pts {
            let g = surface_gradient(&spec.poly, &p.pt);
            min_grad = min_grad.min(g.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt());
            n += 1;
        }
    }
    col.lower_bounded("variety.smooth_gradient", n, if n == 200 { min_grad } else { 0.0 }, 1e-6);

    col.checks
}

/// `alpha` values exercised by the solver suite.
pub fn solver_alphas() -> [Complex64; 3] {
    [Complex64::new(3.0, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(2.0, 1.0)]
}

fn solver_suite(seed: u64, tol: f64) -> Vec<Check> {
    let mut col = Collector { suite: "solver", checks: Vec::new() };
    let mut case = 0u64;
    for n in 1..=3i64 {
        for m in 1..=3i64 {
            for alpha in solver_alphas() {
                case += 1;
                let name = format!("residual[n={n},m={m},alpha={}]", crate::sl2::format_complex(alpha));
                let spec = SurfaceSpec::for_solver(FreeWord::power_commutator(n, m), alpha).expect("valid");
                let mut rng = stream(seed, 100 + case);
                let targets: Vec<Mat2> = (0..2)
                    .map(|_| {
                        let z = random_sl2(&mut rng);
                        z.mul(&y_t(alpha)).mul(&z.adjugate())
                    })
                    .collect();
                let (mut max, mut tr_max, mut pi_max) = (0f64, 0f64, 0f64);
                let mut errs = Vec::new();
                let mut samples = 0;
                match sample_surface(&spec, 50, rng.gen()) {
                    Ok(pts) => {
                        for p in &pts {
                            for g in &targets {
                                samples += 1;
                                match solve_word_equation(&spec, g, p) {
                                    Ok(sol) => {
                                        max = max.max(sol.residual);
                                        tr_max = tr_max.max(sol.trace_point().dist(&p.pt) / scale(&p.pt));
                                        match pi_map(&sol.x, &sol.y) {
                                            Ok((pt, _)) => pi_max = pi_max.max(pt.dist(&p.pt) / scale(&p.pt)),
                                            Err(e) => errs.push(e.to_string()),
                                        }
                                    }
                                    Err(e) => errs.push(e.to_string()),
                                }
                            }
                        }
                    }
                    Err(e) => errs.push(e.to_string()),
                }
                col.bounded(name.clone(), samples, max, tol, errs);
                col.bounded(name.replacen("residual", "trace_point", 1), samples, tr_max.max(pi_max), tol, Vec::new());
            }
        }
    }
    // the deterministic conic point is on the conic for every sampled point
    let spec = SurfaceSpec::for_solver(FreeWord::power_commutator(1, 1), Complex64::new(3.0, 0.0)).expect("valid");
    let mut max = 0f64;
    let pts = sample_surface(&spec, 50, seed).unwrap_or_default();
    for p in &pts {
        let (a, b) = conic_point(&p.pt);
        max = max.max(crate::sl2::conic_residual(a, b, &p.pt));
    }
    col.bounded("conic_point_on_conic", pts.len(), max, 1e-9, Vec::new());
    col.checks
}

fn scale(pt: &ComplexTriple) -> f64 {
    1f64.max(pt.s.norm()).max(pt.t.norm()).max(pt.u.norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_words_are_reduced() {
        let mut rng = stream(3, 0);
        for _ in 0..100 {
            let w = random_word(&mut rng, 8, 3);
            let syl = w.syllables();
            assert!(!syl.is_empty() && syl.len() <= 8);
            assert!(syl.windows(2).all(|p| p[0].generator != p[1].generator));
        }
    }

    #[test]
    fn suite_names() {
        assert_eq!(Suite::parse("all"), Some(Suite::All));
        assert_eq!(Suite::parse("nope"), None);
    }

    #[test]
    fn trace_suite_passes() {
        let r = run(Suite::Trace, 42, 1e-7);
        assert!(r.passed(), "{}", r.to_text());
    }
}
