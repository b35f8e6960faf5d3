//! Textual group specifications such as `SL(2) * GL(3) * T(1)`.
//!
//! ```text
//! SPEC   := FACTOR ("*" FACTOR)*
//! FACTOR := NAME "(" INT ")" | E6sc | E6ad | E7sc | E7ad | E8 | F4 | G2
//! NAME   := SL | GL | PGL | Sp | PSp | Spin | SO | PSO | T
//! ```
//! Whitespace between tokens is ignored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Factor {
    SL(usize),
    GL(usize),
    PGL(usize),
    Sp(usize),
    PSp(usize),
    Spin(usize),
    SO(usize),
    PSO(usize),
    Torus(usize),
    E6sc,
    E6ad,
    E7sc,
    E7ad,
    E8,
    F4,
    G2,
}

/// A product of named factors.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupSpec {
    pub factors: Vec<Factor>,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::SL(n) => write!(f, "SL({n})"),
            Factor::GL(n) => write!(f, "GL({n})"),
            Factor::PGL(n) => write!(f, "PGL({n})"),
            Factor::Sp(n) => write!(f, "Sp({n})"),
            Factor::PSp(n) => write!(f, "PSp({n})"),
            Factor::Spin(n) => write!(f, "Spin({n})"),
            Factor::SO(n) => write!(f, "SO({n})"),
            Factor::PSO(n) => write!(f, "PSO({n})"),
            Factor::Torus(n) => write!(f, "T({n})"),
            Factor::E6sc => write!(f, "E6sc"),
            Factor::E6ad => write!(f, "E6ad"),
            Factor::E7sc => write!(f, "E7sc"),
            Factor::E7ad => write!(f, "E7ad"),
            Factor::E8 => write!(f, "E8"),
            Factor::F4 => write!(f, "F4"),
            Factor::G2 => write!(f, "G2"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, pos: usize, expected: &str) -> Result<T> {
        Err(Error::Parse { position: pos, expected: expected.to_string() })
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
            return self.err(start, "a group name");
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_alphanumeric) {
            self.pos += 1;
        }
        // The slice is ASCII by construction.
        Ok((start, std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default()))
    }

    fn integer(&mut self) -> Result<(usize, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err(start, "a positive integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        match text.parse::<usize>() {
            Ok(n) if n <= 1024 => Ok((start, n)),
            _ => self.err(start, "an integer of at most 1024"),
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let (start, name) = self.ident()?;
        let fixed = match name {
            "E6sc" => Some(Factor::E6sc),
            "E6ad" => Some(Factor::E6ad),
            "E7sc" => Some(Factor::E7sc),
            "E7ad" => Some(Factor::E7ad),
            "E8" => Some(Factor::E8),
            "F4" => Some(Factor::F4),
            "G2" => Some(Factor::G2),
            _ => None,
        };
        if let Some(f) = fixed {
            return Ok(f);
        }
        let ctor: fn(usize) -> Factor = match name {
            "SL" => Factor::SL,
            "GL" => Factor::GL,
            "PGL" => Factor::PGL,
            "Sp" => Factor::Sp,
            "PSp" => Factor::PSp,
            "Spin" => Factor::Spin,
            "SO" => Factor::SO,
            "PSO" => Factor::PSO,
            "T" => Factor::Torus,
            _ => return self.err(start, "one of SL, GL, PGL, Sp, PSp, Spin, SO, PSO, T, E6sc, E6ad, E7sc, E7ad, E8, F4, G2"),
        };
        if !self.eat(b'(') {
            return self.err(self.pos, "`(`");
        }
        let (npos, n) = self.integer()?;
        let f = ctor(n);
        if let Err(why) = check_factor(f) {
            return self.err(npos, &why);
        }
        if !self.eat(b')') {
            return self.err(self.pos, "`)`");
        }
        Ok(f)
    }
}

fn check_factor(f: Factor) -> std::result::Result<(), String> {
    let ok = match f {
        Factor::SL(n) | Factor::PGL(n) => n >= 2,
        Factor::GL(n) | Factor::Torus(n) => n >= 1,
        Factor::Sp(n) | Factor::PSp(n) => n >= 4 && n % 2 == 0,
        Factor::Spin(n) | Factor::SO(n) | Factor::PSO(n) => n >= 5,
        _ => true,
    };
    if ok {
        return Ok(());
    }
    Err(match f {
        Factor::SL(_) | Factor::PGL(_) => "an integer n >= 2".into(),
        Factor::GL(_) | Factor::Torus(_) => "an integer n >= 1".into(),
        Factor::Sp(_) | Factor::PSp(_) => "an even integer n >= 4".into(),
        _ => "an integer n >= 5".into(),
    })
}

/// Parses a group specification.
pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    let mut p = Parser { src: s.as_bytes(), pos: 0 };
    let mut factors = vec![p.factor()?];
    loop {
        p.skip_ws();
        if p.pos == p.src.len() {
            break;
        }
        if !p.eat(b'*') {
            return p.err(p.pos, "`*` or end of input");
        }
        factors.push(p.factor()?);
    }
    Ok(GroupSpec { factors })
}

impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_group_spec(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products() {
        let g = parse_group_spec(" SL( 2 ) *GL(3)* T(1) ").unwrap();
        assert_eq!(g.factors, vec![Factor::SL(2), Factor::GL(3), Factor::Torus(1)]);
        assert_eq!(g.to_string(), "SL(2)*GL(3)*T(1)");
        assert_eq!(parse_group_spec("E8*G2").unwrap().factors, vec![Factor::E8, Factor::G2]);
    }

    #[test]
    fn rejects_out_of_range() {
        assert_eq!(parse_group_spec("SL(1)"), Err(Error::Parse { position: 3, expected: "an integer n >= 2".into() }));
        assert!(matches!(parse_group_spec("Spin(4)"), Err(Error::Parse { position: 5, .. })));
        assert!(matches!(parse_group_spec("Sp(5)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_group_spec("SL(2)*"), Err(Error::Parse { position: 6, .. })));
        assert!(matches!(parse_group_spec("SU(2)"), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(parse_group_spec(""), Err(Error::Parse { position: 0, .. })));
    }
}
