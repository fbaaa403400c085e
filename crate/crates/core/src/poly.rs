//! Sparse polynomials in `s, t, u` with arbitrary-precision integer
//! coefficients.
//!
//! Terms are kept in a `BTreeMap` from exponent triples to nonzero
//! coefficients, so structural equality is polynomial equality. Printing
//! and JSON emission use graded-lex order (`s > t > u`), largest term first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    S,
    T,
    U,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::S, Var::T, Var::U];

    pub fn index(self) -> usize {
        match self {
            Var::S => 0,
            Var::T => 1,
            Var::U => 2,
        }
    }

    pub fn name(self) -> char {
        ['s', 't', 'u'][self.index()]
    }
}

pub type Exponent = [u32; 3];

/// Graded-lex comparison with `s > t > u`.
pub fn grlex(a: &Exponent, b: &Exponent) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// A point `(s, t, u)` of complex affine 3-space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexTriple {
    #[serde(with = "crate::cjson")]
    pub s: Complex64,
    #[serde(with = "crate::cjson")]
    pub t: Complex64,
    #[serde(with = "crate::cjson")]
    pub u: Complex64,
}

impl ComplexTriple {
    pub fn new(s: Complex64, t: Complex64, u: Complex64) -> Self {
        ComplexTriple { s, t, u }
    }

    pub fn real(s: f64, t: f64, u: f64) -> Self {
        ComplexTriple::new(s.into(), t.into(), u.into())
    }

    pub fn get(&self, var: Var) -> Complex64 {
        match var {
            Var::S => self.s,
            Var::T => self.t,
            Var::U => self.u,
        }
    }

    pub fn is_finite(&self) -> bool {
        [self.s, self.t, self.u].iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest componentwise distance.
    pub fn dist(&self, other: &ComplexTriple) -> f64 {
        (self.s - other.s)
            .norm()
            .max((self.t - other.t).norm())
            .max((self.u - other.u).norm())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TracePoly {
    terms: BTreeMap<Exponent, BigInt>,
}

impl TracePoly {
    pub fn zero() -> Self {
        TracePoly::default()
    }

    pub fn one() -> Self {
        TracePoly::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        TracePoly::monomial(c, [0, 0, 0])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        TracePoly::monomial(1, e)
    }

    pub fn s() -> Self {
        TracePoly::var(Var::S)
    }

    pub fn t() -> Self {
        TracePoly::var(Var::T)
    }

    pub fn u() -> Self {
        TracePoly::var(Var::U)
    }

    pub fn monomial<C: Into<BigInt>>(c: C, e: Exponent) -> Self {
        let mut p = TracePoly::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, BigInt)>>(terms: I) -> Self {
        let mut p = TracePoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded-lex descending) order.
    pub fn terms(&self) -> Vec<(Exponent, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by(|a, b| grlex(&b.0, &a.0));
        v
    }

    pub fn coefficient(&self, e: &Exponent) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(Exponent, &BigInt)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(e, c)| (*e, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| e[v.index()]).max()
    }

    /// Coefficient of `v^k`, a polynomial in the remaining variables.
    pub fn coefficient_in(&self, v: Var, k: u32) -> TracePoly {
        let i = v.index();
        TracePoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] == k)
                .map(|(e, c)| {
                    let mut e = *e;
                    e[i] = 0;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// True when only `v` occurs.
    pub fn is_univariate_in(&self, v: Var) -> bool {
        let i = v.index();
        self.terms
            .keys()
            .all(|e| e.iter().enumerate().all(|(j, &k)| j == i || k == 0))
    }

    /// Renames variable `from` to `to`. Requires that `to` does not occur.
    pub fn rename(&self, from: Var, to: Var) -> TracePoly {
        debug_assert!(from == to || self.degree_in(to).unwrap_or(0) == 0);
        let (i, j) = (from.index(), to.index());
        TracePoly::from_terms(self.terms.iter().map(|(e, c)| {
            let mut e2 = *e;
            e2[i] = 0;
            e2[j] = e[i];
            (e2, c.clone())
        }))
    }

    pub fn pow(&self, k: u32) -> TracePoly {
        let mut result = TracePoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale<C: Into<BigInt>>(&self, c: C) -> TracePoly {
        let c = c.into();
        if c.is_zero() {
            return TracePoly::zero();
        }
        TracePoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * &c)).collect(),
        }
    }

    pub fn partial(&self, v: Var) -> TracePoly {
        let i = v.index();
        TracePoly::from_terms(self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e2 = *e;
            e2[i] -= 1;
            (e2, c * BigInt::from(e[i]))
        }))
    }

    /// Replaces `v` by the polynomial `q`.
    pub fn substitute(&self, v: Var, q: &TracePoly) -> TracePoly {
        let i = v.index();
        let deg = self.degree_in(v).unwrap_or(0);
        // Horner in v.
        let mut acc = TracePoly::zero();
        for k in (0..=deg).rev() {
            let coeff = self.coefficient_in(v, k);
            acc = &(&acc * q) + &coeff;
        }
        debug_assert!(i < 3);
        acc
    }

    /// Evaluates with double-precision complex arithmetic, Horner-style in
    /// `u`, then `t`, then `s`.
    pub fn eval(&self, pt: &ComplexTriple) -> Complex64 {
        if self.terms.is_empty() {
            return Complex64::zero();
        }
        // Group by (es, et) -> dense list in u.
        let mut by_s: BTreeMap<u32, BTreeMap<u32, Vec<(u32, f64)>>> = BTreeMap::new();
        for (e, c) in &self.terms {
            by_s.entry(e[0])
                .or_default()
                .entry(e[1])
                .or_default()
                .push((e[2], big_to_f64(c)));
        }
        let horner_sparse = |pairs: &mut dyn Iterator<Item = (u32, Complex64)>, x: Complex64| {
            // pairs sorted descending by degree
            let mut acc = Complex64::zero();
            let mut last: Option<u32> = None;
            for (d, c) in pairs {
                if let Some(prev) = last {
                    acc *= x.powu(prev - d);
                }
                acc += c;
                last = Some(d);
            }
            if let Some(d) = last {
                acc *= x.powu(d);
            }
            acc
        };
        let s_terms: Vec<(u32, Complex64)> = by_s
            .iter()
            .rev()
            .map(|(&es, by_t)| {
                let t_terms: Vec<(u32, Complex64)> = by_t
                    .iter()
                    .rev()
                    .map(|(&et, us)| {
                        let mut us = us.clone();
                        us.sort_by_key(|&(d, _)| std::cmp::Reverse(d));
                        let mut it = us.iter().map(|&(d, c)| (d, Complex64::new(c, 0.0)));
                        (et, horner_sparse(&mut it, pt.u))
                    })
                    .collect();
                (es, horner_sparse(&mut t_terms.into_iter(), pt.t))
            })
            .collect();
        horner_sparse(&mut s_terms.into_iter(), pt.s)
    }

    /// Dense ascending coefficient list of the polynomial in `v` obtained by
    /// fixing the other two variables to their values in `at` (the `v`
    /// component of `at` is ignored).
    pub fn univariate_in(&self, v: Var, at: &ComplexTriple) -> Vec<Complex64> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Complex64::zero(); deg + 1];
        let mut fixed = *at;
        match v {
            Var::S => fixed.s = Complex64::one(),
            Var::T => fixed.t = Complex64::one(),
            Var::U => fixed.u = Complex64::one(),
        }
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.coefficient_in(v, k as u32).eval(&fixed);
        }
        out
    }

    /// Exact quotient `self / q` by single-divisor reduction in graded-lex
    /// order. Fails unless the remainder is zero.
    pub fn div_exact(&self, q: &TracePoly) -> Result<TracePoly> {
        let (lq_e, lq_c) = match q.leading() {
            Some((e, c)) => (e, c.clone()),
            None => return Err(Error::Precondition("division by the zero polynomial".into())),
        };
        let mut rem = self.clone();
        let mut quot = TracePoly::zero();
        while let Some((le, lc)) = rem.leading() {
            if !(0..3).all(|i| le[i] >= lq_e[i]) {
                return Err(Error::NotDivisible);
            }
            let (c, r) = lc.div_rem(&lq_c);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let e = [le[0] - lq_e[0], le[1] - lq_e[1], le[2] - lq_e[2]];
            let step = TracePoly::monomial(c, e);
            rem = &rem - &(&step * q);
            quot = &quot + &step;
        }
        Ok(quot)
    }

    /// JSON form: `[{"e":[es,et,eu],"c":"<integer>"}, ...]` in canonical order.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms()
            .into_iter()
            .map(|(e, c)| JsonTerm {
                e,
                c: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<TracePoly> {
        let mut p = TracePoly::zero();
        for t in terms {
            let c: BigInt = t.c.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("invalid integer coefficient {:?}", t.c),
            })?;
            p.add_term(t.e, c);
        }
        Ok(p)
    }
}

fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub e: Exponent,
    pub c: String,
}

impl Serialize for TracePoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TracePoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(deserializer)?;
        TracePoly::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl Add for &TracePoly {
    type Output = TracePoly;

    fn add(self, rhs: &TracePoly) -> TracePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &TracePoly {
    type Output = TracePoly;

    fn sub(self, rhs: &TracePoly) -> TracePoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &TracePoly {
    type Output = TracePoly;

    fn neg(self) -> TracePoly {
        TracePoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &TracePoly {
    type Output = TracePoly;

    fn mul(self, rhs: &TracePoly) -> TracePoly {
        let mut out = TracePoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for TracePoly {
            type Output = TracePoly;
            fn $f(self, rhs: TracePoly) -> TracePoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&TracePoly> for TracePoly {
            type Output = TracePoly;
            fn $f(self, rhs: &TracePoly) -> TracePoly {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TracePoly {
    type Output = TracePoly;
    fn neg(self) -> TracePoly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponent) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let k = e[v.index()];
        if k == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", v.name())?;
        if k > 1 {
            write!(f, "^{k}")?;
        }
    }
    Ok(())
}

impl fmt::Display for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let constant = e == [0, 0, 0];
            if constant {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, &e)?;
            }
        }
        Ok(())
    }
}

/// Parses the canonical text form (and any sum of signed products of
/// integers and `s`, `t`, `u` powers, in any order).
impl FromStr for TracePoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let b = text.as_bytes();
        let mut pos = 0;
        let skip = |pos: &mut usize| {
            while *pos < b.len() && b[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let read_uint = |pos: &mut usize| -> Option<String> {
            let start = *pos;
            while *pos < b.len() && b[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start != *pos).then(|| text[start..*pos].to_string())
        };
        let mut out = TracePoly::zero();
        let mut first = true;
        loop {
            skip(&mut pos);
            if pos >= b.len() {
                if first {
                    return Err(err(pos, "empty polynomial"));
                }
                break;
            }
            let mut sign = BigInt::one();
            if b[pos] == b'+' || b[pos] == b'-' {
                if b[pos] == b'-' {
                    sign = -sign;
                }
                pos += 1;
                skip(&mut pos);
            } else if !first {
                return Err(err(pos, "expected '+' or '-'"));
            }
            first = false;
            let mut coeff = sign;
            let mut e = [0u32; 3];
            let mut factors = 0;
            loop {
                skip(&mut pos);
                if pos >= b.len() {
                    break;
                }
                match b[pos] {
                    b'0'..=b'9' => {
                        let digits = read_uint(&mut pos).expect("digit present");
                        coeff *= digits.parse::<BigInt>().map_err(|_| err(pos, "bad integer"))?;
                    }
                    c @ (b's' | b't' | b'u') => {
                        pos += 1;
                        let idx = (c - b's') as usize;
                        skip(&mut pos);
                        let mut k = 1u32;
                        if pos < b.len() && b[pos] == b'^' {
                            pos += 1;
                            skip(&mut pos);
                            let digits = read_uint(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                            k = digits.parse().map_err(|_| err(pos, "exponent out of range"))?;
                        }
                        e[idx] += k;
                    }
                    _ => return Err(err(pos, "unexpected character")),
                }
                factors += 1;
                skip(&mut pos);
                if pos < b.len() && b[pos] == b'*' {
                    pos += 1;
                    continue;
                }
                break;
            }
            if factors == 0 {
                return Err(err(pos, "expected a term"));
            }
            out.add_term(e, coeff);
        }
        Ok(out)
    }
}
