//! Todd-Coxeter coset enumeration (HLT, optionally with lookahead) and the
//! closed coset tables it produces.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::presentation::{compile_word, GroupPresentation};
use crate::word::Word;

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Plain HLT: give up as soon as the coset limit is reached.
    Hlt,
    /// HLT, falling back to a deduction-only lookahead pass over every live
    /// coset when the limit is reached.
    #[default]
    HltLookahead,
}

/// A closed, complete coset table. Cosets are numbered `0..len()` in
/// first-appearance order of a breadth-first walk from coset `0` (the
/// subgroup itself), scanning columns `g0, g0^-1, g1, g1^-1, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    generators: Vec<String>,
    index: HashMap<String, usize>,
    subgroup: Vec<Word>,
    cosets: usize,
    // cosets * 2 * generators; column 2i is generator i, 2i + 1 its inverse
    action: Vec<u32>,
}

impl CosetTable {
    /// Build a table from the forward action of each generator (one
    /// permutation of `0..d` per generator), checking every table invariant
    /// against `pres`.
    pub fn from_permutations(
        pres: &GroupPresentation,
        subgroup: &[Word],
        perms: &[Vec<usize>],
    ) -> Result<Self> {
        let k = pres.generators().len();
        if perms.len() != k {
            return Err(Error::TableMismatch(format!("{} permutations for {k} generators", perms.len())));
        }
        let d = perms.first().map_or(1, Vec::len);
        let mut action = vec![NONE; d * 2 * k];
        for (g, perm) in perms.iter().enumerate() {
            if perm.len() != d {
                return Err(Error::TableMismatch("permutations of unequal degree".into()));
            }
            for (c, &t) in perm.iter().enumerate() {
                if t >= d || action[t * 2 * k + 2 * g + 1] != NONE {
                    return Err(Error::TableMismatch(format!("generator {} is not a permutation", pres.generators()[g])));
                }
                action[c * 2 * k + 2 * g] = t as u32;
                action[t * 2 * k + 2 * g + 1] = c as u32;
            }
        }
        let table = Self::raw(pres, subgroup, d, action);
        table.verify(pres)?;
        Ok(table)
    }

    fn raw(pres: &GroupPresentation, subgroup: &[Word], cosets: usize, action: Vec<u32>) -> Self {
        CosetTable {
            generators: pres.generators().to_vec(),
            index: pres.generators().iter().cloned().enumerate().map(|(i, g)| (g, i)).collect(),
            subgroup: subgroup.to_vec(),
            cosets,
            action,
        }
    }

    pub fn len(&self) -> usize {
        self.cosets
    }

    pub fn is_empty(&self) -> bool {
        self.cosets == 0
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn subgroup_generators(&self) -> &[Word] {
        &self.subgroup
    }

    fn ncols(&self) -> usize {
        2 * self.generators.len()
    }

    /// Image of `coset` under column `col` (see [`GroupPresentation::compile`]).
    pub fn act(&self, coset: usize, col: usize) -> usize {
        self.action[coset * self.ncols() + col] as usize
    }

    /// Forward permutation of generator `g`.
    pub fn generator_permutation(&self, g: usize) -> Vec<usize> {
        (0..self.cosets).map(|c| self.act(c, 2 * g)).collect()
    }

    pub fn compile(&self, w: &Word) -> Result<Vec<usize>> {
        compile_word(&self.index, w)
    }

    /// Coset reached from `coset` by reading `w` left to right.
    pub fn trace(&self, coset: usize, w: &Word) -> Result<usize> {
        let cols = self.compile(w)?;
        Ok(self.trace_cols(coset, &cols))
    }

    pub(crate) fn trace_cols(&self, coset: usize, cols: &[usize]) -> usize {
        cols.iter().fold(coset, |c, &col| self.act(c, col))
    }

    /// The permutation of cosets induced by `w`.
    pub fn permutation(&self, w: &Word) -> Result<Vec<usize>> {
        let cols = self.compile(w)?;
        Ok((0..self.cosets).map(|c| self.trace_cols(c, &cols)).collect())
    }

    /// Breadth-first spanning tree: for each coset other than `0`, the
    /// `(parent, column)` through which it was first reached.
    pub fn spanning_tree(&self) -> Vec<Option<(usize, usize)>> {
        let mut parent = vec![None; self.cosets];
        let mut seen = vec![false; self.cosets];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for col in 0..self.ncols() {
                let t = self.act(c, col);
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((c, col));
                    queue.push_back(t);
                }
            }
        }
        parent
    }

    /// Schreier transversal: a representative word for each coset, read
    /// along the spanning tree.
    pub fn transversal(&self) -> Vec<Word> {
        let tree = self.spanning_tree();
        let mut reps: Vec<Option<Word>> = vec![None; self.cosets];
        reps[0] = Some(Word::identity());
        let mut pending: Vec<usize> = (1..self.cosets).collect();
        while !pending.is_empty() {
            pending.retain(|&c| {
                let (p, col) = tree[c].expect("table is transitive");
                match reps[p].clone() {
                    Some(parent) => {
                        let g = &self.generators[col / 2];
                        let step = Word::power_of(g, if col % 2 == 0 { 1 } else { -1 });
                        reps[c] = Some(parent.concat(&step));
                        false
                    }
                    None => true,
                }
            });
        }
        reps.into_iter().map(|w| w.expect("all cosets reached")).collect()
    }

    /// Check closure, relator and subgroup invariants and transitivity.
    pub fn verify(&self, pres: &GroupPresentation) -> Result<()> {
        if pres.generators() != self.generators.as_slice() {
            return Err(Error::TableMismatch("generator lists differ".into()));
        }
        let n = self.ncols();
        if self.cosets == 0 || self.action.len() != self.cosets * n {
            return Err(Error::TableMismatch("table has wrong shape".into()));
        }
        for c in 0..self.cosets {
            for col in 0..n {
                let t = self.action[c * n + col];
                if t == NONE || t as usize >= self.cosets {
                    return Err(Error::TableMismatch(format!("entry ({c}, {col}) undefined")));
                }
                if self.act(t as usize, col ^ 1) != c {
                    return Err(Error::TableMismatch(format!("entry ({c}, {col}) has no inverse")));
                }
            }
        }
        for r in pres.relators() {
            let cols = pres.compile(r)?;
            if let Some(c) = (0..self.cosets).find(|&c| self.trace_cols(c, &cols) != c) {
                return Err(Error::TableMismatch(format!("relator {r} moves coset {c}")));
            }
        }
        for h in &self.subgroup {
            if self.trace(0, h)? != 0 {
                return Err(Error::TableMismatch(format!("subgroup generator {h} moves coset 0")));
            }
        }
        if self.spanning_tree().iter().skip(1).any(Option::is_none) {
            return Err(Error::TableMismatch("action is not transitive".into()));
        }
        Ok(())
    }
}

pub fn enumerate_cosets(pres: &GroupPresentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    enumerate_cosets_with(pres, subgroup, max_cosets, Strategy::default())
}

pub fn enumerate_cosets_with(
    pres: &GroupPresentation,
    subgroup: &[Word],
    max_cosets: usize,
    strategy: Strategy,
) -> Result<CosetTable> {
    assert!(max_cosets > 0, "max_cosets must be positive");
    let relators = pres
        .relators()
        .iter()
        .map(|r| pres.compile(r))
        .filter(|r| !matches!(r, Ok(v) if v.is_empty()))
        .collect::<Result<Vec<_>>>()?;
    let subgens = subgroup
        .iter()
        .map(|w| pres.compile(w))
        .filter(|r| !matches!(r, Ok(v) if v.is_empty()))
        .collect::<Result<Vec<_>>>()?;
    let mut en = Enumerator::new(2 * pres.generators().len(), max_cosets);
    en.run(&relators, &subgens, strategy)?;
    let action = en.finish();
    let cosets = action.len() / en.ncols.max(1);
    let cosets = if en.ncols == 0 { 1 } else { cosets };
    let table = CosetTable::raw(pres, subgroup, cosets, action);
    debug_assert!(table.verify(pres).is_ok());
    Ok(table)
}

/// Full: the live coset count would exceed the limit.
struct Full;

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    max: usize,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(ncols: usize, max: usize) -> Self {
        Enumerator { ncols, table: vec![NONE; ncols], forward: vec![0], live: 1, max, queue: Vec::new() }
    }

    fn allocated(&self) -> usize {
        self.forward.len()
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn get(&self, c: u32, col: usize) -> u32 {
        self.table[c as usize * self.ncols + col]
    }

    fn set(&mut self, c: u32, col: usize, v: u32) {
        self.table[c as usize * self.ncols + col] = v;
    }

    fn define(&mut self, c: u32, col: usize) -> std::result::Result<(), Full> {
        if self.live >= self.max {
            return Err(Full);
        }
        let n = self.allocated() as u32;
        self.forward.push(n);
        self.table.extend(std::iter::repeat(NONE).take(self.ncols));
        self.live += 1;
        self.set(c, col, n);
        self.set(n, col ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.forward[r as usize] != r {
            r = self.forward[r as usize];
        }
        let mut c = c;
        while self.forward[c as usize] != r {
            let next = self.forward[c as usize];
            self.forward[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.forward[hi as usize] = lo;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for col in 0..self.ncols {
                let target = self.get(dead, col);
                if target == NONE {
                    continue;
                }
                self.set(target, col ^ 1, NONE);
                let mu = self.rep(dead);
                let nu = self.rep(target);
                let mu_img = self.get(mu, col);
                if mu_img != NONE {
                    self.merge(nu, mu_img);
                    continue;
                }
                let nu_img = self.get(nu, col ^ 1);
                if nu_img != NONE {
                    self.merge(mu, nu_img);
                } else {
                    self.set(mu, col, nu);
                    self.set(nu, col ^ 1, mu);
                }
            }
        }
    }

    /// Scan `w` at `start`, filling gaps when `fill` is set.
    fn scan(&mut self, start: u32, w: &[usize], fill: bool) -> std::result::Result<(), Full> {
        let mut f = start;
        let mut i = 0usize;
        let mut b = start;
        let mut j = w.len();
        loop {
            while i < j {
                let t = self.get(f, w[i]);
                if t == NONE {
                    break;
                }
                f = t;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let t = self.get(b, w[j - 1] ^ 1);
                if t == NONE {
                    break;
                }
                b = t;
                j -= 1;
            }
            if j == i {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            if j == i + 1 {
                // deduction
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>], subgens: &[Vec<usize>], strategy: Strategy) -> Result<()> {
        if self.ncols == 0 {
            return Ok(());
        }
        let mut current: u32 = 0;
        'outer: loop {
            if (current as usize) >= self.allocated() {
                return Ok(());
            }
            if !self.is_live(current) {
                current += 1;
                continue;
            }
            let words = if current == 0 { subgens.iter().chain(relators) } else { [].iter().chain(relators) };
            for w in words {
                if self.scan(current, w, true).is_err() {
                    match strategy {
                        Strategy::Hlt => return Err(Error::LimitExceeded(self.max)),
                        Strategy::HltLookahead => {
                            let before = self.live;
                            self.lookahead(relators, subgens);
                            if self.live >= before {
                                return Err(Error::LimitExceeded(self.max));
                            }
                            current = self.compress(current);
                            continue 'outer;
                        }
                    }
                }
                if !self.is_live(current) {
                    break;
                }
            }
            if self.is_live(current) {
                // fill any column the relators left open
                for col in 0..self.ncols {
                    if self.get(current, col) == NONE && self.define(current, col).is_err() {
                        match strategy {
                            Strategy::Hlt => return Err(Error::LimitExceeded(self.max)),
                            Strategy::HltLookahead => {
                                let before = self.live;
                                self.lookahead(relators, subgens);
                                if self.live >= before {
                                    return Err(Error::LimitExceeded(self.max));
                                }
                                current = self.compress(current);
                                continue 'outer;
                            }
                        }
                    }
                }
            }
            current += 1;
            if self.allocated() > 2 * self.live + 4096 {
                current = self.compress(current);
            }
        }
    }

    fn lookahead(&mut self, relators: &[Vec<usize>], subgens: &[Vec<usize>]) {
        for w in subgens {
            if self.is_live(0) {
                let _ = self.scan(0, w, false);
            }
        }
        let mut c = 0u32;
        while (c as usize) < self.allocated() {
            for w in relators {
                if !self.is_live(c) {
                    break;
                }
                let _ = self.scan(c, w, false);
            }
            c += 1;
        }
    }

    /// Renumber live cosets consecutively, preserving order. Returns the new
    /// number of the first live coset at or after `current`.
    fn compress(&mut self, current: u32) -> u32 {
        let mut renum = vec![NONE; self.allocated()];
        let mut next = 0u32;
        let mut new_current = None;
        for c in 0..self.allocated() as u32 {
            if c >= current && new_current.is_none() && self.is_live(c) {
                new_current = Some(next);
            }
            if self.is_live(c) {
                renum[c as usize] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..self.allocated() as u32 {
            if self.is_live(c) {
                for col in 0..self.ncols {
                    let t = self.get(c, col);
                    table.push(if t == NONE { NONE } else { renum[t as usize] });
                }
            }
        }
        self.table = table;
        self.forward = (0..next).collect();
        new_current.unwrap_or(next)
    }

    /// Compress and standardize; returns the final action array.
    fn finish(&mut self) -> Vec<u32> {
        if self.ncols == 0 {
            return Vec::new();
        }
        self.compress(0);
        let d = self.allocated();
        let mut order = vec![NONE; d];
        let mut seq = Vec::with_capacity(d);
        order[0] = 0;
        seq.push(0u32);
        let mut head = 0;
        while head < seq.len() {
            let c = seq[head];
            head += 1;
            for col in 0..self.ncols {
                let t = self.get(c, col);
                if order[t as usize] == NONE {
                    order[t as usize] = seq.len() as u32;
                    seq.push(t);
                }
            }
        }
        let mut action = Vec::with_capacity(d * self.ncols);
        for &c in &seq {
            for col in 0..self.ncols {
                action.push(order[self.get(c, col) as usize]);
            }
        }
        action
    }
}

/// True iff `w` induces the identity permutation on the cosets of `table`.
pub fn word_is_trivial(table: &CosetTable, w: &Word) -> Result<bool> {
    let cols = table.compile(w)?;
    Ok((0..table.len()).all(|c| table.trace_cols(c, &cols) == c))
}

/// True iff every relator of `src`, with generators replaced by `images`,
/// acts trivially on the cosets of `dst_table`.
pub fn check_homomorphism(
    src: &GroupPresentation,
    dst_table: &CosetTable,
    images: &HashMap<String, Word>,
) -> Result<bool> {
    for g in src.generators() {
        if !images.contains_key(g) {
            return Err(Error::MissingImage(g.clone()));
        }
        dst_table.compile(&images[g])?;
    }
    for r in src.relators() {
        let img = r.substitute(|g| images.get(g).cloned())?;
        if !word_is_trivial(dst_table, &img)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the subgroup the table was built over is the whole group.
pub fn subgroup_generates(table: &CosetTable) -> bool {
    table.len() == 1
}
