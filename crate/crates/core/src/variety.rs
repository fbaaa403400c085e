//! Trace surfaces `H_{w,alpha} = {P_w = alpha}`, the conic bundle over them,
//! and explicit solutions of `w(x, y) = g`.
//!
//! Solving follows the quotient construction: for a point `(s, t, u)` on the
//! surface, the pair `(x(a, b, s, t, u), y_t)` with `(a, b)` on the conic
//! `a(s - a) - b(u + b - at) = 1` has trace coordinates `(s, t, u)`, so
//! `w(x, y_t)` has trace `alpha` and is conjugate to `g`. Conjugating the pair
//! by that conjugator lands in `S_{w,g}`. The rest of the fiber is the orbit
//! of the centralizer of `g`.

// Negated comparisons below make NaN residuals fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use num_complex::Complex64;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{ComplexTriple, TracePoly, Var};
use crate::roots;
use crate::sl2::{
    centralizer_element, centralizer_sample, complex_normal, conic_form, conjugate_pair,
    conjugator_between, eigenbasis, eigenvalues, eval_word, pi_map, stream, trace_coords, x_from, y_t, Mat2,
    ProjPoint, IDENTITY_TOL,
};
use crate::trace::{j_poly, phi, phi_product, trace_polynomial};
use crate::word::{FreeWord, Generator};

/// Bound on `|P(pt) - alpha|` for sampled and parametrized points.
pub const SURFACE_TOL: f64 = 1e-8;
/// Minimal modulus of a leading coefficient or denominator.
pub const DEGENERACY_TOL: f64 = 1e-8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_alpha(alpha: Complex64) -> Result<()> {
    if (alpha - 2.0).norm() <= 1e-8 || (alpha + 2.0).norm() <= 1e-8 {
        return Err(Error::Precondition(format!(
            "trace alpha = {} must differ from +-2",
            crate::sl2::format_complex(alpha)
        )));
    }
    Ok(())
}

/// The trace surface `P_w(s, t, u) = alpha`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceSpec {
    pub word: FreeWord,
    pub alpha: Complex64,
    pub poly: TracePoly,
}

impl SurfaceSpec {
    /// Requires `alpha != +-2`.
    pub fn new(word: FreeWord, alpha: Complex64) -> Result<Self> {
        check_alpha(alpha)?;
        let poly = trace_polynomial(&word);
        Ok(SurfaceSpec { word, alpha, poly })
    }

    /// Additionally requires `w` to lie in the derived subgroup.
    pub fn for_solver(word: FreeWord, alpha: Complex64) -> Result<Self> {
        let ab = word.abelianize();
        if !ab.is_trivial() {
            return Err(Error::NotInDerivedSubgroup { ex: ab.ex, ey: ab.ey });
        }
        SurfaceSpec::new(word, alpha)
    }

    pub fn residual(&self, pt: &ComplexTriple) -> f64 {
        (self.poly.eval(pt) - self.alpha).norm()
    }

    pub fn is_commutator_word(&self) -> bool {
        self.word.abelianize().is_trivial()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    #[serde(flatten)]
    pub pt: ComplexTriple,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionPair {
    pub x: Mat2,
    pub y: Mat2,
    pub word: FreeWord,
    pub g: Mat2,
    pub residual: f64,
}

impl SolutionPair {
    fn build(x: Mat2, y: Mat2, word: &FreeWord, g: &Mat2) -> SolutionPair {
        let residual = (eval_word(word, &x, &y) - *g).op_norm();
        SolutionPair {
            x,
            y,
            word: word.clone(),
            g: *g,
            residual,
        }
    }

    pub fn trace_point(&self) -> ComplexTriple {
        trace_coords(&self.x, &self.y)
    }

    /// Largest entrywise distance between the two pairs.
    pub fn distance(&self, other: &SolutionPair) -> f64 {
        (self.x - other.x).max_abs().max((self.y - other.y).max_abs())
    }
}

/// Samples `count` points of the surface: `(s, t)` complex normal, `u` a
/// root of `P(s, t, u) = alpha`, cycling through the roots so every sheet is
/// visited. Item `i` draws from its own stream, so results depend only on
/// the seed.
pub fn sample_surface(spec: &SurfaceSpec, count: usize, seed: u64) -> Result<Vec<SurfacePoint>> {
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    let deg = spec.poly.degree_in(Var::U).unwrap_or(0) as usize;
    if deg == 0 {
        return Err(Error::Degenerate(format!(
            "P_w = {} does not involve u",
            spec.poly
        )));
    }
    let commutator = spec.is_commutator_word();
    let j = j_poly();
    let budget = 100 * count;
    let mut resamples = 0usize;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut rng = stream(seed, i as u64);
        loop {
            if resamples > budget {
                return Err(Error::Degenerate(format!(
                    "gave up after {resamples} resamples"
                )));
            }
            let s = complex_normal(&mut rng);
            let t = complex_normal(&mut rng);
            let base = ComplexTriple::new(s, t, c(0.0, 0.0));
            let mut coeffs = spec.poly.univariate_in(Var::U, &base);
            coeffs[0] -= spec.alpha;
            if coeffs[deg].norm() < DEGENERACY_TOL {
                resamples += 1;
                continue;
            }
            let mut rs = roots::roots(&coeffs, 0.0, 3);
            roots::sort_lex(&mut rs);
            let u = rs[i % rs.len()];
            let pt = ComplexTriple::new(s, t, u);
            let residual = spec.residual(&pt);
            let off_m = !commutator || j.eval(&pt).norm() > 1e-10;
            if residual < SURFACE_TOL && off_m && pt.is_finite() {
                out.push(SurfacePoint { pt, residual });
                break;
            }
            resamples += 1;
        }
    }
    Ok(out)
}

/// The deterministic conic point `b = 0`, `a = (s + sqrt(s^2 - 4)) / 2`.
pub fn conic_point(pt: &ComplexTriple) -> (Complex64, Complex64) {
    let a = (pt.s + (pt.s * pt.s - 4.0).sqrt()) / 2.0;
    (a, c(0.0, 0.0))
}

/// A conic point with prescribed `b`, choosing the root by `branch`.
pub fn conic_point_at(pt: &ComplexTriple, b: Complex64, branch: i8) -> (Complex64, Complex64) {
    // a^2 - (s + bt) a + (bu + b^2 + 1) = 0
    let p = pt.s + b * pt.t;
    let q = b * pt.u + b * b + 1.0;
    let r = (p * p - 4.0 * q).sqrt();
    let a = if branch < 0 { (p - r) / 2.0 } else { (p + r) / 2.0 };
    (a, b)
}

/// Points of the projective conic over `(s, t, u)` on the line `c = 0`:
/// `(1 : mu : 0)` with `mu^2 - t mu + 1 = 0`.
pub fn fiber_infinity(t: Complex64) -> Vec<ProjPoint> {
    let disc = t * t - 4.0;
    let mus = if disc.norm() < 1e-9 {
        vec![t / 2.0]
    } else {
        let (l1, l2) = eigenvalues(t);
        vec![l1, l2]
    };
    mus.into_iter()
        .map(|mu| ProjPoint::new([c(1.0, 0.0), mu, c(0.0, 0.0)]).expect("nonzero"))
        .collect()
}

/// Builds `(x, y)` with `w(x, y) = g` and `Tr(x, y) = pt`.
pub fn solve_word_equation(spec: &SurfaceSpec, g: &Mat2, pt: &SurfacePoint) -> Result<SolutionPair> {
    let ab = spec.word.abelianize();
    if !ab.is_trivial() {
        return Err(Error::NotInDerivedSubgroup { ex: ab.ex, ey: ab.ey });
    }
    check_alpha(spec.alpha)?;
    g.check_unimodular()?;
    if (g.trace() - spec.alpha).norm() >= 1e-8 {
        return Err(Error::TraceMismatch {
            left: crate::sl2::format_complex(g.trace()),
            right: crate::sl2::format_complex(spec.alpha),
        });
    }
    let v = pt.pt;
    let on_surface = spec.residual(&v);
    if on_surface >= IDENTITY_TOL {
        return Err(Error::Precondition(format!(
            "point is not on the surface (|P - alpha| = {on_surface:e})"
        )));
    }
    let y = y_t(v.t);
    let (a, b) = conic_point(&v);
    let x = x_from(a, b, &v)?;
    let image = eval_word(&spec.word, &x, &y);
    let drift = (image.trace() - spec.alpha).norm();
    if drift >= IDENTITY_TOL * spec.alpha.norm().max(1.0) {
        return Err(Error::Residual {
            context: "trace of w(x, y_t)".into(),
            residual: drift,
            bound: IDENTITY_TOL,
        });
    }
    let conj = conjugator_between(&image, g)?;
    let conj = balance(&conj, g, &x, &y)?;
    let (x1, y1) = conjugate_pair(&conj, &x, &y)?;
    let sol = polish(SolutionPair::build(x1, y1, &spec.word, g))?;
    if !(sol.residual < IDENTITY_TOL) {
        return Err(Error::Residual {
            context: format!(
                "|w(x,y) - g| at (s,t,u) = ({}, {}, {}), |g| = {:e}, |x| = {:e}, |y| = {:e}",
                v.s,
                v.t,
                v.u,
                g.op_norm(),
                sol.x.op_norm(),
                sol.y.op_norm()
            ),
            residual: sol.residual,
            bound: IDENTITY_TOL,
        });
    }
    let tr_err = sol.trace_point().dist(&v);
    if !(tr_err < IDENTITY_TOL * v.s.norm().max(v.t.norm()).max(v.u.norm()).max(1.0)) {
        return Err(Error::Residual {
            context: "Tr(x, y) vs source point".into(),
            residual: tr_err,
            bound: IDENTITY_TOL,
        });
    }
    Ok(sol)
}

/// Gauss-Newton steps on `(x (I + A), y (I + B))`, `A, B` trace-free, toward
/// `w(x, y) = g`. Minimum-norm steps keep the trace point within rounding.
fn polish(mut sol: SolutionPair) -> Result<SolutionPair> {
    let letters: Vec<(Generator, bool)> = sol
        .word
        .syllables()
        .iter()
        .flat_map(|syl| std::iter::repeat_n((syl.generator, syl.exponent > 0), syl.exponent.unsigned_abs() as usize))
        .collect();
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let basis = [
        Mat2::new(one, zero, zero, -one),
        Mat2::new(zero, one, zero, zero),
        Mat2::new(zero, zero, one, zero),
    ];
    for _ in 0..4 {
        if sol.residual < 1e-14 {
            break;
        }
        let (xi, yi) = (sol.x.adjugate(), sol.y.adjugate());
        let mats: Vec<Mat2> = letters
            .iter()
            .map(|&(gen, pos)| match (gen, pos) {
                (Generator::X, true) => sol.x,
                (Generator::X, false) => xi,
                (Generator::Y, true) => sol.y,
                (Generator::Y, false) => yi,
            })
            .collect();
        let mut prefix = vec![Mat2::identity()];
        for m in &mats {
            prefix.push(prefix.last().expect("nonempty").mul(m));
        }
        let mut suffix = vec![Mat2::identity(); mats.len() + 1];
        for k in (0..mats.len()).rev() {
            suffix[k] = mats[k].mul(&suffix[k + 1]);
        }
        let w = prefix[mats.len()];
        let e = sol.g - w;
        let mut cols = Vec::with_capacity(6);
        for target in [Generator::X, Generator::Y] {
            for b in &basis {
                let mut d = Mat2::new(zero, zero, zero, zero);
                for (k, &(gen, pos)) in letters.iter().enumerate() {
                    if gen != target {
                        continue;
                    }
                    let dm = if pos { mats[k].mul(b) } else { b.mul(&mats[k]).scale(-one) };
                    d = d + prefix[k].mul(&dm).mul(&suffix[k + 1]);
                }
                cols.push(d);
            }
        }
        let a = DMatrix::from_fn(4, 6, |i, j| entry(&cols[j], i));
        let rhs = DMatrix::from_fn(4, 1, |i, _| entry(&e, i));
        let Ok(h) = a.svd(true, true).solve(&rhs, 1e-12 * w.op_norm().max(1.0)) else {
            break;
        };
        let step = |m: &Mat2, o: usize| {
            let t = m.mul(&Mat2::new(one + h[o], h[o + 1], h[o + 2], one - h[o]));
            t.scale(t.det().sqrt().inv())
        };
        let next = SolutionPair::build(step(&sol.x, 0), step(&sol.y, 3), &sol.word, &sol.g);
        if !(next.residual < sol.residual) {
            break;
        }
        sol = next;
    }
    Ok(sol)
}

fn entry(m: &Mat2, i: usize) -> Complex64 {
    [m.a11, m.a12, m.a21, m.a22][i]
}

/// Composes `conj` with the centralizer element of `g` that minimizes
/// `|x'|^2 + |y'|^2` for `(x', y') = C (x, y) C^-1`. Rounding in `w(x', y')`
/// grows with these norms.
fn balance(conj: &Mat2, g: &Mat2, x: &Mat2, y: &Mat2) -> Result<Mat2> {
    let v = eigenbasis(g)?;
    let v_inv = v.inverse()?;
    let c_inv = conj.inverse()?;
    let framed = |m: &Mat2| v_inv.mul(conj).mul(m).mul(&c_inv).mul(&v);
    let (fx, fy) = (framed(x), framed(y));
    let cost = |p: f64, q: f64| {
        let z = Complex64::from_polar(p.exp(), q);
        [&fx, &fy]
            .iter()
            .map(|f| {
                let m = Mat2::new(f.a11, f.a12 * z, f.a21 / z, f.a22);
                let m = v.mul(&m).mul(&v_inv);
                m.a11.norm_sqr() + m.a12.norm_sqr() + m.a21.norm_sqr() + m.a22.norm_sqr()
            })
            .sum::<f64>()
    };
    let (mut p, mut q, mut step) = (0.0, 0.0, 1.0);
    let mut best = cost(p, q);
    while step > 1e-6 {
        let mut moved = false;
        for (dp, dq) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let f = cost(p + dp, q + dq);
            if f < best {
                (best, p, q, moved) = (f, p + dp, q + dq, true);
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    let h = Complex64::from_polar((p / 2.0).exp(), q / 2.0);
    let z = v.mul(&Mat2::new(h, c(0.0, 0.0), c(0.0, 0.0), h.inv())).mul(&v_inv);
    Ok(z.mul(conj))
}

/// Conjugates a solution by centralizer elements of `g`: for each `delta`
/// and both signs of `gamma`, by `C_g C(alpha, gamma, delta) C_g^-1` where
/// `C_g y_alpha C_g^-1 = g`. Output order is `(delta_0, +), (delta_0, -), ...`.
pub fn fiber_orbit(sol: &SolutionPair, deltas: &[Complex64]) -> Result<Vec<SolutionPair>> {
    let alpha = sol.g.trace();
    let cg = conjugator_between(&y_t(alpha), &sol.g)?;
    let cg_inv = cg.inverse()?;
    let mut out = Vec::with_capacity(2 * deltas.len());
    for &delta in deltas {
        for branch in [1i8, -1] {
            let params = centralizer_sample(alpha, delta, branch);
            let z = cg.mul(&centralizer_element(&params)).mul(&cg_inv);
            let (x, y) = conjugate_pair(&z, &sol.x, &sol.y)?;
            out.push(SolutionPair::build(x, y, &sol.word, &sol.g));
        }
    }
    Ok(out)
}

/// Data for the map from the conic bundle over `[x^n, y^m]` surfaces to
/// `kappa^2 - (t^2 - 4) tau^2 = gamma^2 rho^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauContext {
    /// A square root of `alpha - 2`.
    pub beta: Complex64,
    pub alpha: Complex64,
    pub n: i64,
    pub m: i64,
    poly: TracePoly,
    phi_nm: TracePoly,
}

impl TauContext {
    pub fn new(alpha: Complex64, n: i64, m: i64) -> Result<Self> {
        check_alpha(alpha)?;
        if n == 0 || m == 0 {
            return Err(Error::Precondition("n, m must be nonzero".into()));
        }
        Ok(TauContext {
            beta: (alpha - 2.0).sqrt(),
            alpha,
            n,
            m,
            poly: trace_polynomial(&FreeWord::power_commutator(n, m)),
            phi_nm: phi_product(n, m),
        })
    }

    /// `gamma = beta / (phi_n(s) phi_m(t))`, so that `J = gamma^2` on the surface.
    pub fn gamma_scale(&self, pt: &ComplexTriple) -> Result<Complex64> {
        let f = self.phi_nm.eval(pt);
        if f.norm() < DEGENERACY_TOL {
            return Err(Error::Degenerate("phi_n(s) phi_m(t) vanishes".into()));
        }
        Ok(self.beta / f)
    }

    pub fn surface_poly(&self) -> &TracePoly {
        &self.poly
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TauImage {
    #[serde(with = "crate::cjson")]
    pub kappa: Complex64,
    #[serde(with = "crate::cjson")]
    pub tau: Complex64,
    #[serde(with = "crate::cjson")]
    pub rho: Complex64,
    #[serde(with = "crate::cjson")]
    pub gamma: Complex64,
    /// `|kappa^2 - (t^2-4) tau^2 - gamma^2 rho^2|` relative to its largest term.
    pub residual: f64,
}

impl TauImage {
    /// The section `tau = 0, kappa = gamma rho` at `rho = 1`.
    pub fn section(gamma: Complex64, t: Complex64) -> TauImage {
        let mut img = TauImage {
            kappa: gamma,
            tau: c(0.0, 0.0),
            rho: c(1.0, 0.0),
            gamma,
            residual: 0.0,
        };
        img.residual = img.equation_residual(t);
        img
    }

    pub fn equation_residual(&self, t: Complex64) -> f64 {
        let k2 = self.kappa * self.kappa;
        let t2 = (t * t - 4.0) * self.tau * self.tau;
        let g2 = self.gamma * self.gamma * self.rho * self.rho;
        let scale = 1f64.max(k2.norm()).max(t2.norm()).max(g2.norm());
        (k2 - t2 - g2).norm() / scale
    }
}

/// `tau = a - bt/2 - cs/2`, `kappa = c(st - 2u)/2 + (t^2 - 4) b / 2`, `rho = c`.
pub fn tau_map(pt: &ComplexTriple, proj: &ProjPoint, ctx: &TauContext) -> Result<TauImage> {
    if (pt.t * pt.t - 4.0).norm() <= DEGENERACY_TOL {
        return Err(Error::Degenerate("t^2 = 4: the map is not an isomorphism there".into()));
    }
    let on_surface = (ctx.poly.eval(pt) - ctx.alpha).norm();
    if on_surface >= IDENTITY_TOL * ctx.alpha.norm().max(1.0) {
        return Err(Error::Precondition(format!(
            "point is not on the trace surface (|P - alpha| = {on_surface:e})"
        )));
    }
    let on_conic = conic_form(pt, proj).norm();
    let conic_scale = 1f64.max(pt.s.norm()).max(pt.t.norm()).max(pt.u.norm());
    if on_conic >= IDENTITY_TOL * conic_scale {
        return Err(Error::Precondition(format!(
            "projective point is not on the conic (residual {on_conic:e})"
        )));
    }
    let gamma = ctx.gamma_scale(pt)?;
    let [a, b, cc] = proj.coords();
    let (s, t, u) = (pt.s, pt.t, pt.u);
    let mut img = TauImage {
        tau: a - b * t / 2.0 - cc * s / 2.0,
        kappa: cc * (s * t - 2.0 * u) / 2.0 + (t * t - 4.0) * b / 2.0,
        rho: cc,
        gamma,
        residual: 0.0,
    };
    img.residual = img.equation_residual(t);
    Ok(img)
}

/// The point over `(s, t)` on `P_{x^n y^m} = alpha`, using that `P` is
/// linear in `u`.
pub fn parametrize_power_word(n: i64, m: i64, alpha: Complex64, s: Complex64, t: Complex64) -> Result<SurfacePoint> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition("n, m must be nonzero".into()));
    }
    let p = trace_polynomial(&FreeWord::power_pair(n, m));
    parametrize_linear_in_u(&p, alpha, s, t)
}

fn parametrize_linear_in_u(p: &TracePoly, alpha: Complex64, s: Complex64, t: Complex64) -> Result<SurfacePoint> {
    let base = ComplexTriple::new(s, t, c(0.0, 0.0));
    let slope = p.coefficient_in(Var::U, 1).eval(&base);
    let offset = p.coefficient_in(Var::U, 0).eval(&base);
    if slope.norm() <= DEGENERACY_TOL {
        return Err(Error::Degenerate("u-coefficient vanishes at (s, t)".into()));
    }
    let pt = ComplexTriple::new(s, t, (alpha - offset) / slope);
    let residual = (p.eval(&pt) - alpha).norm();
    let scale = 1f64.max(offset.norm()).max(alpha.norm());
    if !(residual < SURFACE_TOL * scale) {
        return Err(Error::Residual {
            context: "power-word parametrization".into(),
            residual,
            bound: SURFACE_TOL * scale,
        });
    }
    Ok(SurfacePoint { pt, residual })
}

/// Which closed form for `u` produced a commutator parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UClosedForm {
    /// `2u - st = r(t-2)(s-2)/2 + (t+2)(s+2)/(2r)`, the sum of the two
    /// expressions for `r`.
    HalfSum,
    /// `4(u - st) = r(t-2)(s-2) + (t+2)(s+2)/r`.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutatorParametrization {
    pub point: SurfacePoint,
    pub form: UClosedForm,
    /// Residual `|P - alpha|` of the closed form that was not used.
    pub other_form_residual: f64,
}

/// The point of `P_{[x^n, y]} = alpha` with rational coordinates `(r, s)`.
pub fn parametrize_commutator_n1(n: u32, alpha: Complex64, r: Complex64, s: Complex64) -> Result<CommutatorParametrization> {
    check_alpha(alpha)?;
    if n == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if r.norm() <= DEGENERACY_TOL {
        return Err(Error::Precondition("r must be nonzero".into()));
    }
    if (s - 2.0).norm() <= DEGENERACY_TOL || (s + 2.0).norm() <= DEGENERACY_TOL {
        return Err(Error::Precondition("s must differ from +-2".into()));
    }
    let at_s = ComplexTriple::new(s, c(0.0, 0.0), c(0.0, 0.0));
    let phi_s = phi(n).eval(&at_s);
    if phi_s.norm() <= DEGENERACY_TOL {
        return Err(Error::Precondition("phi_n(s) vanishes".into()));
    }
    let den = (s + 2.0) / r - r * (s - 2.0);
    if den.norm() <= DEGENERACY_TOL {
        return Err(Error::Precondition("t-denominator (s+2)/r - r(s-2) vanishes".into()));
    }
    let beta = (alpha - 2.0).sqrt();
    let q = beta / phi_s;
    let t = (4.0 * q - 2.0 * ((s + 2.0) / r + r * (s - 2.0))) / den;
    let plus = r * (t - 2.0) * (s - 2.0);
    let minus = (t + 2.0) * (s + 2.0) / r;
    let u_half_sum = (s * t + plus / 2.0 + minus / 2.0) / 2.0;
    let u_literal = s * t + (plus + minus) / 4.0;

    let p = trace_polynomial(&FreeWord::power_commutator(n as i64, 1));
    let residual_at = |u: Complex64| (p.eval(&ComplexTriple::new(s, t, u)) - alpha).norm();
    let r_half = residual_at(u_half_sum);
    let r_lit = residual_at(u_literal);
    let (form, u, residual, other) = if r_half < IDENTITY_TOL {
        (UClosedForm::HalfSum, u_half_sum, r_half, r_lit)
    } else if r_lit < IDENTITY_TOL {
        (UClosedForm::Literal, u_literal, r_lit, r_half)
    } else {
        return Err(Error::Residual {
            context: format!("commutator parametrization (literal form residual {r_lit:e})"),
            residual: r_half,
            bound: IDENTITY_TOL,
        });
    };
    Ok(CommutatorParametrization {
        point: SurfacePoint {
            pt: ComplexTriple::new(s, t, u),
            residual,
        },
        form,
        other_form_residual: other,
    })
}

/// Boundary structure of one fiber of `S_{w,g}` inside the projective conic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberReport {
    /// Points of the projective conic with `c = 0`.
    pub infinity_points: Vec<ProjPoint>,
    /// `infinity_points.len()`: 2 when `t^2 != 4`, else 1.
    pub boundary_count: usize,
    /// Limits of the centralizer orbit through a solution, i.e. the fixed
    /// points of the centralizer action on the conic.
    pub excluded_points: Vec<ProjPoint>,
    /// How many excluded points coincide with a point at infinity.
    pub excluded_at_infinity: usize,
    /// Largest conic residual over all reported points.
    pub conic_residual: f64,
    /// `t^2 = 4`, where the infinity count drops to one.
    pub parabolic_t: bool,
}

// Laurent polynomials in nu with exponents -2..=2.
type Laurent = [Complex64; 5];

fn l_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = [c(0.0, 0.0); 5];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            let k = i as i32 + j as i32 - 2;
            if (0..5).contains(&k) {
                out[k as usize] += ai * bj;
            } else {
                debug_assert!(ai.norm() == 0.0 || bj.norm() == 0.0);
            }
        }
    }
    out
}

/// Entries of `Z_nu M Z_nu^-1` as Laurent polynomials in `nu`, where
/// `Z_nu = V diag(mu, 1/mu) V^-1` and `nu = mu^2`.
fn conjugation_family(v: &Mat2, v_inv: &Mat2, m: &Mat2) -> [[Laurent; 2]; 2] {
    let n = v_inv.mul(m).mul(v);
    let zero = c(0.0, 0.0);
    let parts = [
        (1, Mat2::new(zero, zero, n.a21, zero)),
        (2, Mat2::new(n.a11, zero, zero, n.a22)),
        (3, Mat2::new(zero, n.a12, zero, zero)),
    ];
    let mut out = [[[zero; 5]; 2]; 2];
    for (k, part) in parts {
        let e = v.mul(&part).mul(v_inv).entries();
        for i in 0..2 {
            for j in 0..2 {
                out[i][j][k] += e[i][j];
            }
        }
    }
    out
}

/// Fixed points of the centralizer of `g` acting on the conic through a
/// solution, found as the `nu -> 0` and `nu -> infinity` limits of `pi`
/// along the orbit.
pub fn centralizer_fixed_points(sol: &SolutionPair) -> Result<Vec<ProjPoint>> {
    let v = eigenbasis(&sol.g)?;
    let v_inv = v.inverse()?;
    let xf = conjugation_family(&v, &v_inv, &sol.x);
    let yf = conjugation_family(&v, &v_inv, &sol.y);
    let t = sol.y.trace();
    let mut t_minus_ay = yf[0][0].map(|z| -z);
    t_minus_ay[2] += t;
    let first = {
        let a = l_mul(&xf[0][0], &yf[0][1]);
        let b = l_mul(&xf[0][1], &t_minus_ay);
        let mut s = [c(0.0, 0.0); 5];
        for k in 0..5 {
            s[k] = a[k] + b[k];
        }
        s
    };
    let coords = [first, xf[0][1], yf[0][1]];
    let scale = coords
        .iter()
        .flat_map(|l| l.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let level = |k: usize| coords.iter().map(|l| l[k].norm()).fold(0.0, f64::max);
    let significant: Vec<usize> = (0..5).filter(|&k| level(k) > 1e-9 * scale).collect();
    let (&lo, &hi) = match (significant.first(), significant.last()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::Degenerate("orbit has vanishing quotient coordinates".into())),
    };
    let mut pts = vec![ProjPoint::new(coords.map(|l| l[hi]))?];
    let low = ProjPoint::new(coords.map(|l| l[lo]))?;
    if !low.approx_eq(&pts[0], 1e-7) {
        pts.push(low);
    }
    Ok(pts)
}

/// Reports the punctures of the fiber over `pt`: the conic's points at
/// infinity and the fixed points of the centralizer action.
pub fn verify_fiber_two_punctures(spec: &SurfaceSpec, pt: &SurfacePoint) -> Result<FiberReport> {
    let v = pt.pt;
    let infinity_points = fiber_infinity(v.t);
    let g = y_t(spec.alpha);
    let sol = solve_word_equation(spec, &g, pt)?;
    let excluded_points = centralizer_fixed_points(&sol)?;
    let excluded_at_infinity = excluded_points
        .iter()
        .filter(|p| infinity_points.iter().any(|q| q.approx_eq(p, 1e-7)))
        .count();
    let conic_residual = infinity_points
        .iter()
        .chain(excluded_points.iter())
        .map(|p| conic_form(&v, p).norm())
        .fold(0.0, f64::max);
    Ok(FiberReport {
        boundary_count: infinity_points.len(),
        infinity_points,
        excluded_points,
        excluded_at_infinity,
        conic_residual,
        parabolic_t: (v.t * v.t - 4.0).norm() < 1e-9,
    })
}

/// `pi` of a pair, returning the projective fiber coordinate only.
pub fn fiber_coordinate(sol: &SolutionPair) -> Result<ProjPoint> {
    Ok(pi_map(&sol.x, &sol.y)?.1)
}
