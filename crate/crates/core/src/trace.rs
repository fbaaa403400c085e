//! Trace polynomials of words, Dickson polynomials and the singular loci of
//! commutator trace surfaces.
//!
//! A word is evaluated symbolically in the basis `{I, x, y, xy}` of the
//! algebra generated by two generic `SL(2)` matrices with traces
//! `s = tr x`, `t = tr y`, `u = tr xy`. Right multiplication by a letter is
//! given by the Cayley-Hamilton table
//!
//! ```text
//! I·x = x              I·y = y
//! x·x = s x - I        x·y = xy
//! y·x = s y + t x + (u - st) I - xy
//! xy·x = u x + y - t I xy·y = t xy - x
//!                      y·y = t y - I
//! ```
//!
//! together with `x^-1 = s I - x` and `y^-1 = t I - y`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{ComplexTriple, TracePoly, Var};
use crate::roots;
use crate::word::{FreeWord, Generator};

/// Dickson polynomial of the first kind `D_k(s, 1)`.
pub fn dickson_d(k: u32) -> TracePoly {
    dickson(k, TracePoly::constant(2))
}

/// Dickson polynomial of the second kind `E_k(s, 1)`.
pub fn dickson_e(k: u32) -> TracePoly {
    dickson(k, TracePoly::one())
}

fn dickson(k: u32, first: TracePoly) -> TracePoly {
    let s = TracePoly::s();
    let mut prev = first;
    if k == 0 {
        return prev;
    }
    let mut cur = s.clone();
    for _ in 1..k {
        let next = &(&s * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `phi_k(s) = E_{k-1}(s, 1)`; `phi_0 = 0` continues the recursion downward.
pub fn phi(k: u32) -> TracePoly {
    if k == 0 {
        TracePoly::zero()
    } else {
        dickson_e(k - 1)
    }
}

/// `phi_|n|(s) * phi_|m|(t)`.
pub fn phi_product(n: i64, m: i64) -> TracePoly {
    let pn = phi(n.unsigned_abs() as u32);
    let pm = phi(m.unsigned_abs() as u32).rename(Var::S, Var::T);
    &pn * &pm
}

/// `J = s^2 + t^2 + u^2 - stu - 4`.
pub fn j_poly() -> TracePoly {
    let (s, t, u) = (TracePoly::s(), TracePoly::t(), TracePoly::u());
    let mut j = &(&s * &s) + &(&t * &t);
    j = &j + &(&u * &u);
    j = &j - &(&(&s * &t) * &u);
    &j - &TracePoly::constant(4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    X,
    XInv,
    Y,
    YInv,
}

impl Letter {
    fn of(generator: Generator, positive: bool) -> Letter {
        match (generator, positive) {
            (Generator::X, true) => Letter::X,
            (Generator::X, false) => Letter::XInv,
            (Generator::Y, true) => Letter::Y,
            (Generator::Y, false) => Letter::YInv,
        }
    }
}

/// `p0 I + p1 x + p2 y + p3 xy`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSL2 {
    pub p0: TracePoly,
    pub p1: TracePoly,
    pub p2: TracePoly,
    pub p3: TracePoly,
}

impl SymbolicSL2 {
    pub fn identity() -> Self {
        SymbolicSL2 {
            p0: TracePoly::one(),
            p1: TracePoly::zero(),
            p2: TracePoly::zero(),
            p3: TracePoly::zero(),
        }
    }

    pub fn new(p0: TracePoly, p1: TracePoly, p2: TracePoly, p3: TracePoly) -> Self {
        SymbolicSL2 { p0, p1, p2, p3 }
    }

    fn times_x(&self) -> SymbolicSL2 {
        let (s, t, u) = (TracePoly::s(), TracePoly::t(), TracePoly::u());
        let u_minus_st = &u - &(&s * &t);
        // p0 x + p1 (s x - I) + p2 (s y + t x + (u - st) I - xy) + p3 (u x + y - t I)
        let p0 = &(&(&u_minus_st * &self.p2) - &self.p1) - &(&t * &self.p3);
        let p1 = &(&(&self.p0 + &(&s * &self.p1)) + &(&t * &self.p2)) + &(&u * &self.p3);
        let p2 = &(&s * &self.p2) + &self.p3;
        let p3 = -&self.p2;
        SymbolicSL2 { p0, p1, p2, p3 }
    }

    fn times_y(&self) -> SymbolicSL2 {
        let t = TracePoly::t();
        // p0 y + p1 xy + p2 (t y - I) + p3 (t xy - x)
        SymbolicSL2 {
            p0: -&self.p2,
            p1: -&self.p3,
            p2: &self.p0 + &(&t * &self.p2),
            p3: &self.p1 + &(&t * &self.p3),
        }
    }

    fn scaled_minus(&self, scalar: &TracePoly, other: &SymbolicSL2) -> SymbolicSL2 {
        SymbolicSL2 {
            p0: &(scalar * &self.p0) - &other.p0,
            p1: &(scalar * &self.p1) - &other.p1,
            p2: &(scalar * &self.p2) - &other.p2,
            p3: &(scalar * &self.p3) - &other.p3,
        }
    }

    /// Right multiplication by a letter.
    pub fn mul_letter(&self, letter: Letter) -> SymbolicSL2 {
        match letter {
            Letter::X => self.times_x(),
            Letter::Y => self.times_y(),
            Letter::XInv => self.scaled_minus(&TracePoly::s(), &self.times_x()),
            Letter::YInv => self.scaled_minus(&TracePoly::t(), &self.times_y()),
        }
    }

    /// `2 p0 + s p1 + t p2 + u p3`.
    pub fn trace(&self) -> TracePoly {
        let mut tr = self.p0.scale(2);
        tr = &tr + &(&TracePoly::s() * &self.p1);
        tr = &tr + &(&TracePoly::t() * &self.p2);
        &tr + &(&TracePoly::u() * &self.p3)
    }

    /// Numeric value at a concrete pair with the given trace coordinates.
    pub fn eval_at(&self, pt: &ComplexTriple, x: &crate::sl2::Mat2, y: &crate::sl2::Mat2) -> crate::sl2::Mat2 {
        use crate::sl2::Mat2;
        let xy = x.mul(y);
        Mat2::identity().scale(self.p0.eval(pt))
            + x.scale(self.p1.eval(pt))
            + y.scale(self.p2.eval(pt))
            + xy.scale(self.p3.eval(pt))
    }
}

/// The symbolic image of a word in the `{I, x, y, xy}` basis.
pub fn symbolic_word(w: &FreeWord) -> SymbolicSL2 {
    let mut acc = SymbolicSL2::identity();
    for syl in w.syllables() {
        let letter = Letter::of(syl.generator, syl.exponent > 0);
        for _ in 0..syl.exponent.unsigned_abs() {
            acc = acc.mul_letter(letter);
        }
    }
    acc
}

/// The trace polynomial `P_w(s, t, u)` with `tr w(x, y) = P_w(tr x, tr y, tr xy)`.
pub fn trace_polynomial(w: &FreeWord) -> TracePoly {
    symbolic_word(w).trace()
}

/// Coefficient of `u` in `P_{x^n y^m}` as `(sign, phi_|n|(s) phi_|m|(t))`.
pub fn f_nm(n: i64, m: i64) -> Result<(i8, TracePoly)> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition("f_nm needs n, m != 0".into()));
    }
    let p = trace_polynomial(&FreeWord::power_pair(n, m));
    if p.degree_in(Var::U) != Some(1) {
        return Err(Error::IdentityViolation(format!(
            "P_(x^{n} y^{m}) has u-degree {:?}, expected 1",
            p.degree_in(Var::U)
        )));
    }
    let coeff = p.coefficient_in(Var::U, 1);
    let target = phi_product(n, m);
    if coeff == target {
        Ok((1, target))
    } else if coeff == -&target {
        Ok((-1, target))
    } else {
        Err(Error::IdentityViolation(format!(
            "u-coefficient of P_(x^{n} y^{m}) is {coeff}, not +-({target})"
        )))
    }
}

/// `Q_w = (P_w - 2) / J` for `w = [x^n, y^m]`, checked against
/// `(phi_|n|(s) phi_|m|(t))^2`.
pub fn q_commutator(n: i64, m: i64) -> Result<TracePoly> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition("Q for [x^n, y^m] needs n, m != 0".into()));
    }
    let p = trace_polynomial(&FreeWord::power_commutator(n, m));
    let q = (&p - &TracePoly::constant(2)).div_exact(&j_poly())?;
    let expected = phi_product(n, m).pow(2);
    if q != expected {
        return Err(Error::IdentityViolation(format!(
            "Q for [x^{n}, y^{m}] is {q}, expected {expected}"
        )));
    }
    Ok(q)
}

/// Singular data of the commutator surfaces `P_[x^n,y^m] = alpha`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularData {
    #[serde(rename = "A_n", with = "crate::cjson::vec")]
    pub a_n: Vec<Complex64>,
    #[serde(rename = "A_m", with = "crate::cjson::vec")]
    pub a_m: Vec<Complex64>,
    #[serde(rename = "B_nm", with = "crate::cjson::vec")]
    pub b_nm: Vec<Complex64>,
}

pub const ROOT_MERGE_TOL: f64 = 1e-7;

/// `(s^2 - 4) phi_k'(s) + s phi_k(s)`.
pub fn singular_polynomial(k: u32) -> TracePoly {
    let s = TracePoly::s();
    let ph = phi(k);
    let s2m4 = &(&s * &s) - &TracePoly::constant(4);
    &(&s2m4 * &ph.partial(Var::S)) + &(&s * &ph)
}

/// The finite set `A_k` of roots of [`singular_polynomial`].
pub fn singular_roots(k: u32) -> Vec<Complex64> {
    let poly = singular_polynomial(k);
    let z = ComplexTriple::real(0.0, 0.0, 0.0);
    let coeffs = poly.univariate_in(Var::S, &z);
    let mut r = roots::dedup(roots::roots(&coeffs, 0.0, 1), ROOT_MERGE_TOL);
    roots::sort_lex(&mut r);
    r
}

pub fn singular_sets(n: u32, m: u32) -> Result<SingularData> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition("singular sets need n, m >= 1".into()));
    }
    let a_n = singular_roots(n);
    let a_m = singular_roots(m);
    let phi_n = phi(n);
    let phi_m = phi(m);
    let at = |p: &TracePoly, z: Complex64| p.eval(&ComplexTriple::new(z, 0.0.into(), 0.0.into()));
    let mut b = Vec::new();
    for &si in &a_n {
        for &tj in &a_m {
            let f = at(&phi_n, si) * at(&phi_m, tj);
            b.push(2.0 - f * f * (si * si - 4.0) * (tj * tj - 4.0) / 4.0);
        }
    }
    let mut b_nm = roots::dedup(b, ROOT_MERGE_TOL);
    roots::sort_lex(&mut b_nm);
    Ok(SingularData { a_n, a_m, b_nm })
}

/// `(dP/ds, dP/dt, dP/du)` at a point.
pub fn surface_gradient(p: &TracePoly, pt: &ComplexTriple) -> [Complex64; 3] {
    Var::ALL.map(|v| p.partial(v).eval(pt))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TracePoly {
        s.parse().unwrap()
    }

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    #[test]
    fn dickson_examples() {
        assert_eq!(dickson_d(0), TracePoly::constant(2));
        assert_eq!(dickson_d(1), p("s"));
        assert_eq!(dickson_e(0), TracePoly::one());
        assert_eq!(dickson_e(1), p("s"));
        assert_eq!(dickson_d(2), p("s^2 - 2"));
        assert_eq!(dickson_e(2), p("s^2 - 1"));
        assert_eq!(dickson_d(3), p("s^3 - 3*s"));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(1), TracePoly::one());
        assert_eq!(phi(2), p("s"));
        assert_eq!(phi(3), p("s^2 - 1"));
        assert!(phi(0).is_zero());
    }

    #[test]
    fn basis_multiplication_examples() {
        let i = SymbolicSL2::identity();
        let x = i.mul_letter(Letter::X);
        assert_eq!(x, SymbolicSL2::new(TracePoly::zero(), TracePoly::one(), TracePoly::zero(), TracePoly::zero()));
        let y = i.mul_letter(Letter::Y);
        let yx = y.mul_letter(Letter::X);
        assert_eq!(yx, SymbolicSL2::new(p("u - s*t"), p("t"), p("s"), p("-1")));
        let xx = x.mul_letter(Letter::X);
        assert_eq!(xx, SymbolicSL2::new(p("-1"), p("s"), TracePoly::zero(), TracePoly::zero()));
        // x x^-1 = I
        assert_eq!(x.mul_letter(Letter::XInv), i);
        assert_eq!(y.mul_letter(Letter::YInv), i);
    }

    #[test]
    fn trace_polynomial_examples() {
        assert_eq!(trace_polynomial(&w("[x,y]")), p("s^2 + t^2 + u^2 - s*t*u - 2"));
        assert_eq!(trace_polynomial(&w("x^2y")), p("s*u - t"));
        assert_eq!(trace_polynomial(&w("xy")), p("u"));
        assert_eq!(trace_polynomial(&w("x")), p("s"));
        assert_eq!(trace_polynomial(&FreeWord::identity()), TracePoly::constant(2));
        assert_eq!(trace_polynomial(&w("xy^-1")), p("s*t - u"));
    }

    #[test]
    fn j_examples() {
        assert_eq!(j_poly(), &trace_polynomial(&w("[x,y]")) - &TracePoly::constant(2));
        assert_eq!(j_poly().eval(&ComplexTriple::real(2.0, 2.0, 2.0)), Complex64::new(0.0, 0.0));
        let st_minus_u = &(&TracePoly::s() * &TracePoly::t()) - &TracePoly::u();
        assert_eq!(j_poly().substitute(Var::U, &st_minus_u), j_poly());
    }

    #[test]
    fn f_nm_examples() {
        assert_eq!(f_nm(1, 1).unwrap(), (1, TracePoly::one()));
        for n in 1..=5 {
            let (sp, _) = f_nm(n, 1).unwrap();
            let (sn, _) = f_nm(-n, 1).unwrap();
            assert_eq!(sp, -sn);
        }
        assert_eq!(f_nm(2, 2).unwrap(), (1, p("s*t")));
        assert!(f_nm(0, 1).is_err());
    }

    #[test]
    fn q_commutator_examples() {
        assert_eq!(q_commutator(1, 1).unwrap(), TracePoly::one());
        assert_eq!(q_commutator(2, 1).unwrap(), p("s^2"));
        assert_eq!(q_commutator(3, 2).unwrap(), q_commutator(-3, -2).unwrap());
    }

    #[test]
    fn singular_examples() {
        let d = singular_sets(1, 1).unwrap();
        assert_eq!(d.a_n.len(), 1);
        assert!(d.a_n[0].norm() < 1e-12);
        assert_eq!(d.b_nm.len(), 1);
        assert!((d.b_nm[0] - Complex64::new(-2.0, 0.0)).norm() < 1e-12);

        let d = singular_sets(2, 1).unwrap();
        let r2 = 2f64.sqrt();
        assert_eq!(d.a_n.len(), 2);
        assert!((d.a_n[0] - Complex64::new(-r2, 0.0)).norm() < 1e-12);
        assert!((d.a_n[1] - Complex64::new(r2, 0.0)).norm() < 1e-12);

        for n in 1..=5 {
            for m in 1..=5 {
                let d = singular_sets(n, m).unwrap();
                assert!(d.a_n.len() <= n as usize + 1);
                assert!(d.b_nm.len() <= ((n + 1) * (m + 1)) as usize);
                for s in &d.a_n {
                    let v = singular_polynomial(n).eval(&ComplexTriple::new(*s, 0.0.into(), 0.0.into()));
                    assert!(v.norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn gradient_examples() {
        let comm = trace_polynomial(&w("[x,y]"));
        let pt = ComplexTriple::new(Complex64::new(0.4, 1.0), Complex64::new(-1.3, 0.2), Complex64::new(0.0, 0.0));
        let pt = ComplexTriple { u: pt.s * pt.t / 2.0, ..pt };
        assert!(surface_gradient(&comm, &pt)[2].norm() < 1e-14);
        let g = surface_gradient(&TracePoly::constant(9), &pt);
        assert!(g.iter().all(|z| z.norm() == 0.0));
    }
}
