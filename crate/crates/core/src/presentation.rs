//! Finite presentations and their line-based text format.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::word::{valid_name, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
    index: HashMap<String, usize>,
}

impl GroupPresentation {
    pub fn new<S: AsRef<str>>(generators: &[S], relators: Vec<Word>) -> Result<Self> {
        let mut index = HashMap::new();
        let mut gens = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            let g = g.as_ref();
            if !valid_name(g) {
                return Err(Error::Parse(format!("bad generator name `{g}`")));
            }
            if index.insert(g.to_string(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.to_string()));
            }
            gens.push(g.to_string());
        }
        let pres = GroupPresentation { generators: gens, relators, index };
        for r in &pres.relators {
            pres.compile(r)?;
        }
        Ok(pres)
    }

    /// Shorthand used throughout the tests: relators given as token strings.
    pub fn parse_parts<S: AsRef<str>>(generators: &[S], relators: &[&str]) -> Result<Self> {
        let rels = relators.iter().map(|r| Word::parse(r)).collect::<Result<Vec<_>>>()?;
        Self::new(generators, rels)
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn with_relators(&self, extra: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut rels = self.relators.clone();
        rels.extend(extra);
        Self::new(&self.generators, rels)
    }

    /// Translate a word into coset-table columns: generator `i` is column
    /// `2i`, its inverse column `2i + 1`.
    pub fn compile(&self, w: &Word) -> Result<Vec<usize>> {
        compile_word(&self.index, w)
    }

    /// Parse the text format: `gens: a b`, `rel: a^2 b^-1`, `#` comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gens: Option<Vec<String>> = None;
        let mut rels = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: expected `key: ...`", lineno + 1)))?;
            match key.trim() {
                "gens" => {
                    if gens.is_some() {
                        return Err(Error::Parse(format!("line {}: repeated gens", lineno + 1)));
                    }
                    gens = Some(rest.split_whitespace().map(str::to_string).collect());
                }
                "rel" => rels.push(Word::parse(rest)?),
                other => {
                    return Err(Error::Parse(format!("line {}: unknown key `{other}`", lineno + 1)))
                }
            }
        }
        let gens = gens.ok_or_else(|| Error::Parse("missing `gens:` line".into()))?;
        Self::new(&gens, rels)
    }
}

pub(crate) fn compile_word(index: &HashMap<String, usize>, w: &Word) -> Result<Vec<usize>> {
    let mut cols = Vec::with_capacity(w.length() as usize);
    for l in w.letters() {
        let g = *index.get(&l.gen).ok_or_else(|| Error::UnknownGenerator(l.gen.clone()))?;
        let col = if l.exp > 0 { 2 * g } else { 2 * g + 1 };
        cols.extend(std::iter::repeat(col).take(l.exp.unsigned_abs() as usize));
    }
    Ok(cols)
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens: {}", self.generators.join(" "))?;
        for r in &self.relators {
            writeln!(f, "rel: {r}")?;
        }
        Ok(())
    }
}
