//! Reduced words in the free group on two generators `x`, `y`.
//!
//! Words are stored run-length encoded as syllables `(generator, exponent)`,
//! so `[x^40,y^40]` is four syllables rather than 160 letters.
//!
//! Text grammar (whitespace is ignored):
//!
//! ```text
//! expr   := factor+
//! factor := atom ('^' int)?
//! atom   := 'x' | 'y' | '1' | '(' expr ')' | '[' expr ',' expr ']'
//! ```
//!
//! `[a,b]` is `a b a^-1 b^-1` and `1` is the identity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    X,
    Y,
}

impl Generator {
    pub fn letter(self) -> char {
        match self {
            Generator::X => 'x',
            Generator::Y => 'y',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syllable {
    pub generator: Generator,
    pub exponent: i64,
}

impl Syllable {
    pub fn new(generator: Generator, exponent: i64) -> Self {
        Syllable {
            generator,
            exponent,
        }
    }
}

/// A reduced word: adjacent syllables use distinct generators and no
/// exponent is zero. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    syllables: Vec<Syllable>,
}

/// Image of a word in the abelianization `Z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianImage {
    pub ex: i64,
    pub ey: i64,
}

impl AbelianImage {
    pub fn is_trivial(&self) -> bool {
        self.ex == 0 && self.ey == 0
    }
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn x() -> Self {
        FreeWord::generator(Generator::X, 1)
    }

    pub fn y() -> Self {
        FreeWord::generator(Generator::Y, 1)
    }

    pub fn generator(generator: Generator, exponent: i64) -> Self {
        let mut w = FreeWord::identity();
        w.push(Syllable::new(generator, exponent));
        w
    }

    /// Builds a reduced word from arbitrary syllables.
    pub fn from_syllables<I: IntoIterator<Item = Syllable>>(syllables: I) -> Self {
        let mut w = FreeWord::identity();
        for syl in syllables {
            w.push(syl);
        }
        w
    }

    /// `x^n y^m` with the usual conventions for zero exponents.
    pub fn power_pair(n: i64, m: i64) -> Self {
        FreeWord::from_syllables([Syllable::new(Generator::X, n), Syllable::new(Generator::Y, m)])
    }

    /// `[x^n, y^m]`.
    pub fn power_commutator(n: i64, m: i64) -> Self {
        FreeWord::generator(Generator::X, n).commutator(&FreeWord::generator(Generator::Y, m))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters, i.e. the sum of absolute exponents.
    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    fn push(&mut self, syl: Syllable) {
        if syl.exponent == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.generator == syl.generator => {
                last.exponent += syl.exponent;
                if last.exponent == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(syl),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut out = self.clone();
        for &syl in &other.syllables {
            out.push(syl);
        }
        out
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.generator, -s.exponent))
                .collect(),
        }
    }

    pub fn power(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `a b a^-1 b^-1`.
    pub fn commutator(&self, other: &FreeWord) -> FreeWord {
        self.concat(other)
            .concat(&self.invert())
            .concat(&other.invert())
    }

    pub fn abelianize(&self) -> AbelianImage {
        let mut img = AbelianImage { ex: 0, ey: 0 };
        for s in &self.syllables {
            match s.generator {
                Generator::X => img.ex += s.exponent,
                Generator::Y => img.ey += s.exponent,
            }
        }
        img
    }

    /// Moves the first letter to the end. Conjugate words share a trace.
    pub fn rotate_letter(&self) -> FreeWord {
        let Some(first) = self.syllables.first() else {
            return FreeWord::identity();
        };
        let step = first.exponent.signum();
        let head = FreeWord::generator(first.generator, step);
        head.invert().concat(self).concat(&head)
    }

    /// The cyclically reduced conjugate: first and last syllables use
    /// different generators (or there is at most one syllable).
    pub fn cyclically_reduce(&self) -> FreeWord {
        let mut w = self.clone();
        while w.syllables.len() > 1 && w.syllables[0].generator == w.syllables[w.syllables.len() - 1].generator {
            let first = w.syllables.remove(0);
            w.push(first);
        }
        w
    }

    pub fn parse(text: &str) -> Result<FreeWord> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let w = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(w)
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FreeWord::parse(s)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for s in &self.syllables {
            write!(f, "{}", s.generator.letter())?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

impl Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FreeWord {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        FreeWord::parse(&s).map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn starts_atom(c: Option<u8>) -> bool {
        matches!(c, Some(b'x' | b'y' | b'1' | b'(' | b'['))
    }

    fn expr(&mut self) -> Result<FreeWord> {
        let next = self.peek();
        if !Self::starts_atom(next) {
            return Err(self.error(match next {
                Some(b'X' | b'Y') => "uppercase generators are not supported; use x^-1, y^-1",
                Some(_) => "expected 'x', 'y', '1', '(' or '['",
                None => "unexpected end of input",
            }));
        }
        let mut w = FreeWord::identity();
        while Self::starts_atom(self.peek()) {
            let f = self.factor()?;
            w = w.concat(&f);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<FreeWord> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.int()?;
            Ok(atom.power(k))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<FreeWord> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(FreeWord::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(FreeWord::y())
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(FreeWord::identity())
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(b',')?;
                let b = self.expr()?;
                self.expect(b']')?;
                Ok(a.commutator(&b))
            }
            _ => Err(self.error("expected an atom")),
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let mut neg = false;
        if let Some(&c) = self.src.get(self.pos) {
            if c == b'-' || c == b'+' {
                neg = c == b'-';
                self.pos += 1;
                self.skip_ws();
            }
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits_start == self.pos {
            return Err(self.error("expected an integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[digits_start..self.pos]).expect("ascii digits");
        let value: i64 = text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "exponent out of range".into(),
        })?;
        Ok(if neg { -value } else { value })
    }
}
