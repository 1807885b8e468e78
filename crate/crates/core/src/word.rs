//! Words in a free group, stored freely reduced.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: String,
    pub exp: i64,
}

/// A freely reduced word. Adjacent letters always carry distinct generator
/// names and no exponent is zero; the empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn new<I, S>(letters: I) -> Self
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<String>,
    {
        let mut w = Word::identity();
        for (g, e) in letters {
            w.push(g.into(), e);
        }
        w
    }

    pub fn gen(name: &str) -> Self {
        Word::new([(name, 1)])
    }

    pub fn power_of(name: &str, exp: i64) -> Self {
        Word::new([(name, exp)])
    }

    fn push(&mut self, gen: String, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.gen == gen {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(Letter { gen, exp });
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total number of generator occurrences, counting exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter { gen: l.gen.clone(), exp: -l.exp })
                .collect(),
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.gen.clone(), l.exp);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// Sum of exponents of `gen`.
    pub fn exponent_sum(&self, gen: &str) -> i64 {
        self.letters.iter().filter(|l| l.gen == gen).map(|l| l.exp).sum()
    }

    /// Apply a substitution to every letter. Missing names are an error.
    pub fn substitute<F>(&self, mut image: F) -> Result<Word>
    where
        F: FnMut(&str) -> Option<Word>,
    {
        let mut w = Word::identity();
        for l in &self.letters {
            let img = image(&l.gen).ok_or_else(|| Error::MissingImage(l.gen.clone()))?;
            w = w.concat(&img.pow(l.exp));
        }
        Ok(w)
    }

    /// Parse whitespace separated tokens `name` or `name^k`. The tokens
    /// `e`, `1` and the empty string denote the identity.
    pub fn parse(s: &str) -> Result<Word> {
        let mut w = Word::identity();
        for tok in s.split_whitespace() {
            if tok == "1" || tok == "e" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, k)) => {
                    let k: i64 = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    if k == 0 {
                        return Err(Error::Parse(format!("zero exponent in `{tok}`")));
                    }
                    (n, k)
                }
                None => (tok, 1),
            };
            if !valid_name(name) {
                return Err(Error::Parse(format!("bad generator name in `{tok}`")));
            }
            w.push(name.to_string(), exp);
        }
        Ok(w)
    }
}

pub(crate) fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "e" && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if l.exp == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, l.exp)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_on_construction() {
        let w = Word::parse("y y^-1 z z y^-3 y^3").unwrap();
        assert_eq!(w.to_string(), "z^2");
        assert!(Word::parse("a a^-1").unwrap().is_identity());
        assert!(Word::parse("").unwrap().is_identity());
    }

    #[test]
    fn inverse_and_concat() {
        let w = Word::parse("y z y^-1 z^-1").unwrap();
        assert!(w.concat(&w.inverse()).is_identity());
        assert_eq!(w.inverse().to_string(), "z y z^-1 y^-1");
        assert_eq!(Word::parse("x y").unwrap().pow(-2).to_string(), "y^-1 x^-1 y^-1 x^-1");
    }

    #[test]
    fn parse_errors() {
        assert!(Word::parse("y^0").is_err());
        assert!(Word::parse("y^a").is_err());
        assert!(Word::parse("3y").is_err());
    }

    #[test]
    fn substitution() {
        let w = Word::parse("x y x^-1").unwrap();
        let img = w
            .substitute(|g| match g {
                "x" => Some(Word::parse("y^-1").unwrap()),
                "y" => Some(Word::gen("y")),
                _ => None,
            })
            .unwrap();
        assert_eq!(img.to_string(), "y");
        assert_eq!(
            Word::gen("q").substitute(|_| None),
            Err(Error::MissingImage("q".into()))
        );
    }
}
