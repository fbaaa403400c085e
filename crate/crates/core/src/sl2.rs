//! Complex 2x2 matrices and the `SL(2, C)` constructions used by the solver:
//! word evaluation, the normal forms `y_t` and `x(a, b, s, t, u)`, the
//! quotient map for simultaneous conjugation by lower-triangular matrices,
//! centralizers of `y_t`, and conjugators between elements of equal trace.

use std::fmt;
use std::ops::{Add, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::ComplexTriple;
use crate::trace::j_poly;
use crate::word::{FreeWord, Generator};

/// Tolerance for constructed determinants and conic/centralizer conditions.
pub const CONSTRUCTION_TOL: f64 = 1e-9;
/// Tolerance for end-to-end identity checks.
pub const IDENTITY_TOL: f64 = 1e-7;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Mat2 {
    pub fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Mat2 { a11, a12, a21, a22 }
    }

    pub fn real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Mat2::new(a11.into(), a12.into(), a21.into(), a22.into())
    }

    pub fn identity() -> Self {
        Mat2::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a11: self.a11 * o.a11 + self.a12 * o.a21,
            a12: self.a11 * o.a12 + self.a12 * o.a22,
            a21: self.a21 * o.a11 + self.a22 * o.a21,
            a22: self.a21 * o.a12 + self.a22 * o.a22,
        }
    }

    pub fn scale(&self, k: Complex64) -> Mat2 {
        Mat2::new(self.a11 * k, self.a12 * k, self.a21 * k, self.a22 * k)
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.a22, -self.a12, -self.a21, self.a11)
    }

    /// Inverse; for determinant-one matrices this is the adjugate.
    pub fn inverse(&self) -> Result<Mat2> {
        let d = self.det();
        if d.norm() <= 1e-12 {
            return Err(Error::SingularMatrix { det: d.norm() });
        }
        Ok(self.adjugate().scale(d.inv()))
    }

    /// Spectral norm (largest singular value).
    pub fn op_norm(&self) -> f64 {
        let fro2 = self.a11.norm_sqr() + self.a12.norm_sqr() + self.a21.norm_sqr() + self.a22.norm_sqr();
        let d = self.det().norm();
        let disc = (fro2 * fro2 - 4.0 * d * d).max(0.0);
        ((fro2 + disc.sqrt()) / 2.0).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.a11.norm().max(self.a12.norm()).max(self.a21.norm()).max(self.a22.norm())
    }

    pub fn is_finite(&self) -> bool {
        [self.a11, self.a12, self.a21, self.a22].iter().all(|z| z.is_finite())
    }

    /// Checks the group-element contract `|det - 1| < 1e-9`.
    pub fn check_unimodular(&self) -> Result<()> {
        let r = (self.det() - 1.0).norm();
        if r < CONSTRUCTION_TOL {
            Ok(())
        } else {
            Err(Error::Residual {
                context: "det != 1".into(),
                residual: r,
                bound: CONSTRUCTION_TOL,
            })
        }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        [[self.a11, self.a12], [self.a21, self.a22]]
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 + o.a11, self.a12 + o.a12, self.a21 + o.a21, self.a22 + o.a22)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a11 - o.a11, self.a12 - o.a12, self.a21 - o.a21, self.a22 - o.a22)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a11, self.a12, self.a21, self.a22)
    }
}

/// Row-major `[[[re,im],[re,im]],[[re,im],[re,im]]]`.
impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let e = |z: Complex64| [z.re, z.im];
        [[e(self.a11), e(self.a12)], [e(self.a21), e(self.a22)]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = <[[[f64; 2]; 2]; 2]>::deserialize(d)?;
        let z = |p: [f64; 2]| c(p[0], p[1]);
        Ok(Mat2::new(z(m[0][0]), z(m[0][1]), z(m[1][0]), z(m[1][1])))
    }
}

/// `Tr(x, y) = (tr x, tr y, tr xy)`.
pub fn trace_coords(x: &Mat2, y: &Mat2) -> ComplexTriple {
    ComplexTriple::new(x.trace(), y.trace(), x.mul(y).trace())
}

/// Evaluates `w(x, y)` left to right; inverse letters use the adjugate.
pub fn eval_word(w: &FreeWord, x: &Mat2, y: &Mat2) -> Mat2 {
    let xi = x.adjugate();
    let yi = y.adjugate();
    let mut acc = Mat2::identity();
    for syl in w.syllables() {
        let m = match (syl.generator, syl.exponent > 0) {
            (Generator::X, true) => x,
            (Generator::X, false) => &xi,
            (Generator::Y, true) => y,
            (Generator::Y, false) => &yi,
        };
        for _ in 0..syl.exponent.unsigned_abs() {
            acc = acc.mul(m);
        }
    }
    acc
}

/// Independent random stream `index` under a root seed.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Complex number with independent standard-normal real and imaginary parts.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    c(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Random element of `SL(2, C)`: `a, b, c` complex normal with `|a| >= 0.1`,
/// `d = (1 + bc) / a`.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    loop {
        let a = complex_normal(rng);
        let b = complex_normal(rng);
        let cc = complex_normal(rng);
        if a.norm() < 0.1 {
            continue;
        }
        return Mat2::new(a, b, cc, (1.0 + b * cc) / a);
    }
}

/// Random lower-triangular determinant-one matrix.
pub fn random_lower_triangular<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    loop {
        let l = complex_normal(rng);
        if l.norm() < 0.1 {
            continue;
        }
        let r = complex_normal(rng);
        return Mat2::new(l, 0.0.into(), r, l.inv());
    }
}

/// `y_t = [[t, 1], [-1, 0]]`.
pub fn y_t(t: Complex64) -> Mat2 {
    Mat2::new(t, 1.0.into(), (-1.0).into(), 0.0.into())
}

/// Residual of `a(s - a) - b(u + b - at) = 1`, scaled by the size of its terms.
pub fn conic_residual(a: Complex64, b: Complex64, pt: &ComplexTriple) -> f64 {
    let lhs = a * (pt.s - a) - b * (pt.u + b - a * pt.t);
    let scale = 1f64
        .max((a * pt.s).norm())
        .max(a.norm_sqr())
        .max((b * pt.u).norm())
        .max(b.norm_sqr())
        .max((a * b * pt.t).norm());
    (lhs - 1.0).norm() / scale
}

/// `x(a, b, s, t, u) = [[a, b], [u + b - at, s - a]]`, so that
/// `Tr(x, y_t) = (s, t, u)`.
pub fn x_from(a: Complex64, b: Complex64, pt: &ComplexTriple) -> Result<Mat2> {
    let residual = conic_residual(a, b, pt);
    if residual >= CONSTRUCTION_TOL {
        return Err(Error::ConicViolation { residual });
    }
    Ok(Mat2::new(a, b, pt.u + b - a * pt.t, pt.s - a))
}

/// `(z x z^-1, z y z^-1)`.
pub fn conjugate_pair(z: &Mat2, x: &Mat2, y: &Mat2) -> Result<(Mat2, Mat2)> {
    let zi = z.inverse()?;
    Ok((z.mul(x).mul(&zi), z.mul(y).mul(&zi)))
}

/// A point of the projective plane, normalized so that its largest-modulus
/// coordinate is exactly one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint(pub [Complex64; 3]);

impl ProjPoint {
    pub fn new(coords: [Complex64; 3]) -> Result<ProjPoint> {
        let k = argmax(&coords);
        let pivot = coords[k];
        if pivot.norm() == 0.0 || !pivot.is_finite() {
            return Err(Error::Degenerate("projective point with all coordinates zero".into()));
        }
        let mut out = coords.map(|z| z / pivot);
        out[k] = c(1.0, 0.0);
        Ok(ProjPoint(out))
    }

    pub fn coords(&self) -> [Complex64; 3] {
        self.0
    }

    /// Componentwise distance after rescaling `other` to agree with `self`
    /// at the pivot of `self`.
    pub fn dist(&self, other: &ProjPoint) -> f64 {
        let k = argmax(&self.0);
        let pivot = other.0[k];
        if pivot.norm() < 1e-300 {
            return f64::INFINITY;
        }
        (0..3)
            .map(|i| (self.0[i] - other.0[i] / pivot).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ProjPoint, tol: f64) -> bool {
        self.dist(other) < tol && other.dist(self) < tol
    }
}

fn argmax(v: &[Complex64; 3]) -> usize {
    let mut k = 0;
    for i in 1..3 {
        if v[i].norm() > v[k].norm() {
            k = i;
        }
    }
    k
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.map(|z| [z.re, z.im]).serialize(s)
    }
}

/// `-(a^2 + b^2 + c^2) + t ab + s ac - u bc`.
pub fn conic_form(pt: &ComplexTriple, p: &ProjPoint) -> Complex64 {
    let [a, b, cc] = p.0;
    -(a * a + b * b + cc * cc) + pt.t * a * b + pt.s * a * cc - pt.u * b * cc
}

/// The quotient map `pi(x, y) = (Tr(x, y), (a_x b_y + b_x (t - a_y) : b_x : b_y))`.
pub fn pi_map(x: &Mat2, y: &Mat2) -> Result<(ComplexTriple, ProjPoint)> {
    let pt = trace_coords(x, y);
    let j = j_poly().eval(&pt);
    if j.norm() < CONSTRUCTION_TOL {
        return Err(Error::ReduciblePair { j_abs: j.norm() });
    }
    let coords = [x.a11 * y.a12 + x.a12 * (pt.t - y.a11), x.a12, y.a12];
    let p = ProjPoint::new(coords).map_err(|_| Error::ReduciblePair { j_abs: j.norm() })?;
    Ok((pt, p))
}

/// `J(Tr(x, y))`; zero exactly when `x` and `y` share an eigenvector.
pub fn common_eigenvector_defect(x: &Mat2, y: &Mat2) -> Complex64 {
    j_poly().eval(&trace_coords(x, y))
}

/// Parameters of `C(t, gamma, delta)` with `gamma^2 - (t^2 - 4) delta^2 = 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralizerParams {
    pub t: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
}

impl CentralizerParams {
    pub fn new(t: Complex64, gamma: Complex64, delta: Complex64) -> Result<Self> {
        let p = CentralizerParams { t, gamma, delta };
        let r = p.condition_residual();
        if r >= CONSTRUCTION_TOL {
            return Err(Error::Residual {
                context: "centralizer condition gamma^2 - (t^2-4) delta^2 = 4".into(),
                residual: r,
                bound: CONSTRUCTION_TOL,
            });
        }
        Ok(p)
    }

    pub fn condition_residual(&self) -> f64 {
        (self.gamma * self.gamma - (self.t * self.t - 4.0) * self.delta * self.delta - 4.0).norm()
    }
}

/// `gamma = branch * sqrt(4 + (t^2 - 4) delta^2)` (principal root).
pub fn centralizer_sample(t: Complex64, delta: Complex64, branch: i8) -> CentralizerParams {
    let root = (4.0 + (t * t - 4.0) * delta * delta).sqrt();
    let gamma = if branch < 0 { -root } else { root };
    CentralizerParams { t, gamma, delta }
}

/// `C(t, gamma, delta) = [[(gamma + t delta)/2, delta], [-delta, (gamma - t delta)/2]]`,
/// an element of the centralizer of `y_t`.
pub fn centralizer_element(p: &CentralizerParams) -> Mat2 {
    Mat2::new(
        (p.gamma + p.t * p.delta) / 2.0,
        p.delta,
        -p.delta,
        (p.gamma - p.t * p.delta) / 2.0,
    )
}

/// Eigenvalues `(lambda, 1/lambda)` of a trace-`alpha` element, with
/// `lambda = (alpha + sqrt(alpha^2 - 4)) / 2` first.
pub fn eigenvalues(alpha: Complex64) -> (Complex64, Complex64) {
    let r = (alpha * alpha - 4.0).sqrt();
    ((alpha + r) / 2.0, (alpha - r) / 2.0)
}

fn eigenvector(g: &Mat2, lambda: Complex64) -> [Complex64; 2] {
    let v1 = [g.a12, lambda - g.a11];
    let v2 = [lambda - g.a22, g.a21];
    let n1 = v1[0].norm_sqr() + v1[1].norm_sqr();
    let n2 = v2[0].norm_sqr() + v2[1].norm_sqr();
    if n1 >= n2 {
        v1
    } else {
        v2
    }
}

/// Columns are eigenvectors for `(lambda, 1/lambda)` as ordered by [`eigenvalues`].
pub fn eigenbasis(g: &Mat2) -> Result<Mat2> {
    eigenbasis_at(g, g.trace())
}

/// As [`eigenbasis`], with eigenvalues taken from `alpha` instead of `tr g`.
/// Sharing `alpha` between two nearly equal traces keeps the branch of
/// `sqrt(alpha^2 - 4)`, and so the eigenvalue order, consistent.
pub fn eigenbasis_at(g: &Mat2, alpha: Complex64) -> Result<Mat2> {
    let (l1, l2) = eigenvalues(alpha);
    let v1 = eigenvector(g, l1);
    let v2 = eigenvector(g, l2);
    let v = Mat2::new(v1[0], v2[0], v1[1], v2[1]);
    if v.det().norm() <= 1e-300 {
        return Err(Error::Degenerate("eigenvectors are not independent".into()));
    }
    Ok(v)
}

fn check_semisimple_trace(alpha: Complex64) -> Result<()> {
    if (alpha * alpha - 4.0).norm() <= 1e-8 {
        return Err(Error::ParabolicTrace {
            trace: format_complex(alpha),
        });
    }
    Ok(())
}

/// A determinant-one `C` with `C g1 C^-1 = g2`, for elements of equal trace
/// `alpha != +-2`.
pub fn conjugator_between(g1: &Mat2, g2: &Mat2) -> Result<Mat2> {
    let (t1, t2) = (g1.trace(), g2.trace());
    if (t1 - t2).norm() >= 1e-8 {
        return Err(Error::TraceMismatch {
            left: format_complex(t1),
            right: format_complex(t2),
        });
    }
    check_semisimple_trace(t1)?;
    check_semisimple_trace(t2)?;
    let alpha = (t1 + t2) / 2.0;
    let v1 = eigenbasis_at(g1, alpha)?;
    let v2 = eigenbasis_at(g2, alpha)?;
    let w1 = v1.inverse()?;
    // Every conjugator is mu P + mu^-1 Q up to scale; pick mu minimizing the
    // Frobenius norm, which keeps w(C x C^-1, C y C^-1) well conditioned.
    let p = Mat2::new(v2.a11 * w1.a11, v2.a11 * w1.a12, v2.a21 * w1.a11, v2.a21 * w1.a12);
    let q = Mat2::new(v2.a12 * w1.a21, v2.a12 * w1.a22, v2.a22 * w1.a21, v2.a22 * w1.a22);
    let (np, nq) = (frobenius(&p), frobenius(&q));
    let k = [(p.a11, q.a11), (p.a12, q.a12), (p.a21, q.a21), (p.a22, q.a22)]
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, (x, y)| acc + x * y.conj());
    let phase = if k.norm() > 0.0 { (-k.conj() / k.norm()).sqrt() } else { Complex64::new(1.0, 0.0) };
    let mu = phase * (nq / np).sqrt().sqrt();
    let cm = p.scale(mu) + q.scale(mu.inv());
    let d = cm.det();
    Ok(cm.scale(d.sqrt().inv()))
}

fn frobenius(m: &Mat2) -> f64 {
    (m.a11.norm_sqr() + m.a12.norm_sqr() + m.a21.norm_sqr() + m.a22.norm_sqr()).sqrt()
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
