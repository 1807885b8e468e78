//! Twisted linking matrices of framed links in a manifold with finite
//! fundamental group, built by clasp programs from a framed unlink.
//!
//! Entry `lambda[i][j]` is the generating function of linking numbers
//! between one lift of component `i` and the translates of a lift of
//! component `j`. The downstairs framing `n_i` is fixed by each program;
//! the upstairs framing `n'_i` (the identity coefficient of `lambda[i][i]`)
//! follows from `n_i = n'_i + sum_{g != 1} lambda[i][i]_g`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::abelian::{cokernel, AbelianGroupInvariants};
use crate::error::{Error, Result};
use crate::groupring::{FiniteGroup, GroupRingElement};
use crate::matrix::{json_int, IntMatrix};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instruction {
    /// Clasp component `i` with component `j` along the path `element`.
    Clasp { i: usize, j: usize, sign: i64, element: Word },
    /// Clasp component `i` with itself along a nontrivial `element`.
    SelfClasp { i: usize, sign: i64, element: Word },
}

impl Instruction {
    pub fn sign(&self) -> i64 {
        match self {
            Instruction::Clasp { sign, .. } | Instruction::SelfClasp { sign, .. } => *sign,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Instruction::Clasp { i, j, sign, element } => json!(["clasp", i, j, sign, element.to_string()]),
            Instruction::SelfClasp { i, sign, element } => json!(["self", i, sign, element.to_string()]),
        }
    }

    fn from_json(v: &Value) -> Result<Instruction> {
        let bad = || Error::Parse(format!("malformed instruction {v}"));
        let items = v.as_array().ok_or_else(bad)?;
        let index = |k: usize| -> Result<usize> {
            let x = json_int(items.get(k).ok_or_else(bad)?)?;
            usize::try_from(x).map_err(|_| Error::BadIndex(x.unsigned_abs() as usize))
        };
        let word = |k: usize| -> Result<Word> { Word::parse(items.get(k).and_then(Value::as_str).ok_or_else(bad)?) };
        match (items.first().and_then(Value::as_str), items.len()) {
            (Some("clasp"), 5) => Ok(Instruction::Clasp {
                i: index(1)?,
                j: index(2)?,
                sign: json_int(&items[3])?,
                element: word(4)?,
            }),
            (Some("self"), 4) => Ok(Instruction::SelfClasp { i: index(1)?, sign: json_int(&items[2])?, element: word(3)? }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |sign: i64| if sign > 0 { '+' } else { '-' };
        let w = |e: &Word| if e.is_identity() { "e".to_string() } else { e.to_string() };
        match self {
            Instruction::Clasp { i, j, sign, element } => write!(f, "clasp({i}, {j}, {}, {})", s(*sign), w(element)),
            Instruction::SelfClasp { i, sign, element } => write!(f, "self({i}, {}, {})", s(*sign), w(element)),
        }
    }
}

/// Instructions applied to the unlink of `n` components with the given
/// downstairs framings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaspProgram {
    pub n: usize,
    pub framings: Vec<i64>,
    pub instructions: Vec<Instruction>,
}

impl ClaspProgram {
    pub fn new(framings: Vec<i64>) -> Self {
        ClaspProgram { n: framings.len(), framings, instructions: Vec::new() }
    }

    pub fn push(&mut self, ins: Instruction) {
        self.instructions.push(ins);
    }

    /// This program followed by the instructions of `other`.
    pub fn then(&self, other: &ClaspProgram) -> ClaspProgram {
        let mut out = self.clone();
        out.instructions.extend(other.instructions.iter().cloned());
        out
    }

    pub fn to_json(&self, group_name: &str) -> Value {
        json!({
            "n": self.n,
            "framings": self.framings,
            "group": group_name,
            "ops": self.instructions.iter().map(Instruction::to_json).collect::<Vec<_>>(),
        })
    }

    /// Returns the program and the name of the group it refers to
    /// (`"trivial"` when absent).
    pub fn from_json(v: &Value) -> Result<(ClaspProgram, String)> {
        let framings: Vec<i64> = v
            .get("framings")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("program needs a `framings` array".into()))?
            .iter()
            .map(json_int)
            .collect::<Result<_>>()?;
        let n = match v.get("n") {
            Some(n) => usize::try_from(json_int(n)?).map_err(|_| Error::Parse("negative `n`".into()))?,
            None => framings.len(),
        };
        if n != framings.len() {
            return Err(Error::Parse(format!("n = {n} but {} framings", framings.len())));
        }
        let instructions = match v.get("ops") {
            Some(ops) => ops
                .as_array()
                .ok_or_else(|| Error::Parse("`ops` must be an array".into()))?
                .iter()
                .map(Instruction::from_json)
                .collect::<Result<_>>()?,
            None => Vec::new(),
        };
        let group = v.get("group").and_then(Value::as_str).unwrap_or("trivial").to_string();
        Ok((ClaspProgram { n, framings, instructions }, group))
    }
}

/// Hermitian `n x n` matrix over `Z[G]` together with downstairs framings
/// and, when known, the quadratic refinement `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedLinkingMatrix {
    group: Arc<FiniteGroup>,
    lambda: Vec<Vec<GroupRingElement>>,
    framings: Vec<i64>,
    mu: Option<Vec<GroupRingElement>>,
}

impl TwistedLinkingMatrix {
    /// The framed unlink: `lambda = diag(n_i e)`.
    pub fn unlink(group: &Arc<FiniteGroup>, framings: &[i64]) -> Self {
        let n = framings.len();
        let lambda = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            GroupRingElement::monomial(group, 0, framings[i])
                        } else {
                            GroupRingElement::zero(group)
                        }
                    })
                    .collect()
            })
            .collect();
        TwistedLinkingMatrix { group: Arc::clone(group), lambda, framings: framings.to_vec(), mu: None }
    }

    /// Validates every invariant of the data.
    pub fn new(
        lambda: Vec<Vec<GroupRingElement>>,
        framings: Vec<i64>,
        mu: Option<Vec<GroupRingElement>>,
        group: &Arc<FiniteGroup>,
    ) -> Result<Self> {
        check_hermitian_data(group, &lambda, &framings, mu.as_deref())?;
        Ok(TwistedLinkingMatrix { group: Arc::clone(group), lambda, framings, mu })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.framings.len()
    }

    pub fn lambda(&self) -> &[Vec<GroupRingElement>] {
        &self.lambda
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.lambda[i][j]
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn mu(&self) -> Option<&[GroupRingElement]> {
        self.mu.as_deref()
    }

    pub fn validate(&self) -> Result<()> {
        check_hermitian_data(&self.group, &self.lambda, &self.framings, self.mu.as_deref())
    }

    /// `n'_i`, the identity coefficient of `lambda[i][i]`.
    pub fn upstairs_framing(&self, i: usize) -> Result<i64> {
        self.lambda.get(i).map(|row| row[i].identity_coefficient()).ok_or(Error::BadIndex(i))
    }

    /// Applies one instruction. A self-clasp along an involution leaves no
    /// integral refinement, so `mu` is dropped.
    pub fn apply(&mut self, ins: &Instruction) -> Result<()> {
        let n = self.size();
        let grp = Arc::clone(&self.group);
        let check_sign = |s: i64| {
            if s == 1 || s == -1 {
                Ok(())
            } else {
                Err(Error::InvalidInstruction(format!("sign {s} is not +1 or -1")))
            }
        };
        match ins {
            Instruction::Clasp { i, j, sign, element } => {
                check_sign(*sign)?;
                for &k in [i, j] {
                    if k >= n {
                        return Err(Error::BadIndex(k));
                    }
                }
                if i == j {
                    return Err(Error::InvalidInstruction(format!("clasp of component {i} with itself")));
                }
                let g = grp.element(element)?;
                self.lambda[*i][*j].add_term(g, *sign)?;
                self.lambda[*j][*i].add_term(grp.inverse(g), *sign)?;
            }
            Instruction::SelfClasp { i, sign, element } => {
                check_sign(*sign)?;
                let i = *i;
                if i >= n {
                    return Err(Error::BadIndex(i));
                }
                let g = grp.element(element)?;
                if g == grp.identity() {
                    return Err(Error::IdentitySelfClasp);
                }
                let entry = &mut self.lambda[i][i];
                entry.add_term(g, *sign)?;
                if grp.is_involution(g) {
                    self.mu = None;
                } else {
                    entry.add_term(grp.inverse(g), *sign)?;
                    if let Some(mu) = &mut self.mu {
                        mu[i].add_term(g, *sign)?;
                        mu[i].add_term(0, -*sign)?;
                    }
                }
                let derived = self.framings[i] - entry.non_identity_sum();
                let current = entry.identity_coefficient();
                entry.add_term(0, derived - current)?;
            }
        }
        Ok(())
    }

    /// The `nd x nd` integer matrix of linking numbers between all lifts;
    /// block `(i, j)` is the regular matrix of `lambda[i][j]`.
    pub fn lifted_matrix(&self) -> IntMatrix {
        let d = self.group.order();
        let n = self.size();
        let mut m = IntMatrix::zeros(n * d, n * d);
        for i in 0..n {
            for j in 0..n {
                let block = self.lambda[i][j].regular_matrix();
                for r in 0..d {
                    for c in 0..d {
                        m[(i * d + r, j * d + c)] = block[(r, c)];
                    }
                }
            }
        }
        m
    }

    /// First homology of the cover of the surgered manifold.
    pub fn cover_surgery_homology(&self) -> AbelianGroupInvariants {
        cokernel(&self.lifted_matrix())
    }

    /// Entrywise augmentation.
    pub fn augmented(&self) -> IntMatrix {
        IntMatrix::from_rows_with_cols(
            self.lambda.iter().map(|row| row.iter().map(GroupRingElement::augment).collect()).collect(),
            self.size(),
        )
    }

    /// Clasps that cancel every off-diagonal entry of the first row and the
    /// non-identity part of `lambda[0][0]`, leaving the first row equal to
    /// `(n', 0, ..., 0)`.
    pub fn trivialize_first_row(&self) -> ClaspProgram {
        let mut prog = ClaspProgram::new(self.framings.clone());
        if self.size() == 0 {
            return prog;
        }
        let grp = &self.group;
        for j in 0..self.size() {
            let negated: Vec<(usize, i64)> = if j == 0 {
                self_clasp_terms(grp, &self.lambda[0][0], None).into_iter().map(|(g, c)| (g, -c)).collect()
            } else {
                self.lambda[0][j].terms().map(|(g, c)| (g, -c)).collect()
            };
            emit(&mut prog, grp, 0, j, negated);
        }
        prog
    }
}

fn check_hermitian_data(
    group: &Arc<FiniteGroup>,
    lambda: &[Vec<GroupRingElement>],
    framings: &[i64],
    mu: Option<&[GroupRingElement]>,
) -> Result<()> {
    let n = lambda.len();
    if framings.len() != n {
        return Err(Error::NotHermitian(format!("{n} rows but {} framings", framings.len())));
    }
    for (i, row) in lambda.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotHermitian(format!("row {i} has length {}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            if e.group() != group {
                return Err(Error::GroupMismatch);
            }
            if lambda[j][i] != e.involute() {
                return Err(Error::NotHermitian(format!("entry ({j}, {i}) is not the involute of ({i}, {j})")));
            }
        }
        let augmented = row[i].augment();
        if augmented != framings[i] {
            return Err(Error::FramingInconsistent { index: i, framing: framings[i], augmented });
        }
    }
    if let Some(mu) = mu {
        if mu.len() != n {
            return Err(Error::MuMismatch(mu.len().min(n)));
        }
        for (i, m) in mu.iter().enumerate() {
            if m.add(&m.involute())? != lambda[i][i] {
                return Err(Error::MuMismatch(i));
            }
        }
    }
    Ok(())
}

/// Signed self-clasp counts producing the non-identity part of a diagonal
/// entry. With `mu` the counts are read from it; otherwise each pair
/// `{g, g^-1}` is clasped along its lower-numbered element.
fn self_clasp_terms(
    grp: &FiniteGroup,
    diag: &GroupRingElement,
    mu: Option<&GroupRingElement>,
) -> Vec<(usize, i64)> {
    match mu {
        Some(mu) => mu
            .terms()
            .filter(|&(g, _)| g != 0)
            .map(|(g, c)| (g, if grp.is_involution(g) { 2 * c } else { c }))
            .collect(),
        None => diag.terms().filter(|&(g, _)| g != 0 && g <= grp.inverse(g)).collect(),
    }
}

/// Appends `|c|` clasps of sign `sign(c)` per term, positive terms first.
fn emit(prog: &mut ClaspProgram, grp: &FiniteGroup, i: usize, j: usize, terms: Vec<(usize, i64)>) {
    let (pos, neg): (Vec<_>, Vec<_>) = terms.into_iter().partition(|&(_, c)| c > 0);
    for (g, c) in pos.into_iter().chain(neg) {
        let element = grp.name(g).clone();
        for _ in 0..c.unsigned_abs() {
            let sign = c.signum();
            prog.push(if i == j {
                Instruction::SelfClasp { i, sign, element: element.clone() }
            } else {
                Instruction::Clasp { i, j, sign, element: element.clone() }
            });
        }
    }
}

/// Runs a program from the framed unlink. The refinement `mu` of the result
/// is recorded when every framing is even and every involution carries an
/// even number of signed self-clasps.
pub fn eval(prog: &ClaspProgram, group: &Arc<FiniteGroup>) -> Result<TwistedLinkingMatrix> {
    if prog.framings.len() != prog.n {
        return Err(Error::BadIndex(prog.n));
    }
    let mut t = TwistedLinkingMatrix::unlink(group, &prog.framings);
    let mut ledger: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); prog.n];
    for ins in &prog.instructions {
        t.apply(ins)?;
        if let Instruction::SelfClasp { i, sign, element } = ins {
            *ledger[*i].entry(group.element(element)?).or_insert(0) += sign;
        }
    }
    t.mu = refinement(&t, &ledger);
    Ok(t)
}

fn refinement(t: &TwistedLinkingMatrix, ledger: &[BTreeMap<usize, i64>]) -> Option<Vec<GroupRingElement>> {
    let grp = &t.group;
    let mut mu = Vec::with_capacity(t.size());
    for (i, counts) in ledger.iter().enumerate() {
        let n_up = t.lambda[i][i].identity_coefficient();
        if n_up % 2 != 0 {
            return None;
        }
        let mut m = GroupRingElement::monomial(grp, 0, n_up / 2);
        for (&g, &c) in counts {
            if grp.is_involution(g) {
                if c % 2 != 0 {
                    return None;
                }
                m.add_term(g, c / 2).ok()?;
            } else {
                m.add_term(g, c).ok()?;
            }
        }
        mu.push(m);
    }
    Some(mu)
}

/// A clasp program whose evaluation is exactly `b` with the given framings
/// (and `mu`, when supplied). Instructions run over the upper triangle in
/// row-major order, elements in group order, positive before negative.
pub fn realize(
    group: &Arc<FiniteGroup>,
    b: &[Vec<GroupRingElement>],
    framings: &[i64],
    mu: Option<&[GroupRingElement]>,
) -> Result<ClaspProgram> {
    check_hermitian_data(group, b, framings, mu)?;
    let mut prog = ClaspProgram::new(framings.to_vec());
    for i in 0..b.len() {
        for j in i..b.len() {
            let terms =
                if i == j { self_clasp_terms(group, &b[i][i], mu.map(|m| &m[i])) } else { b[i][j].terms().collect() };
            emit(&mut prog, group, i, j, terms);
        }
    }
    Ok(prog)
}

pub fn matrix_to_json(lambda: &[Vec<GroupRingElement>]) -> Value {
    Value::Array(lambda.iter().map(|row| Value::Array(row.iter().map(GroupRingElement::to_json).collect())).collect())
}

pub fn matrix_from_json(group: &Arc<FiniteGroup>, v: &Value) -> Result<Vec<Vec<GroupRingElement>>> {
    let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                .iter()
                .map(|e| GroupRingElement::from_json(group, e))
                .collect()
        })
        .collect()
}

impl TwistedLinkingMatrix {
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "framings": self.framings, "lambda": matrix_to_json(&self.lambda) });
        if let Some(mu) = &self.mu {
            v["mu"] = Value::Array(mu.iter().map(GroupRingElement::to_json).collect());
        }
        v
    }

    /// Reads `{"framings": [...], "lambda": [[...]], "mu": [...]}`; `mu` is
    /// optional.
    pub fn from_json(group: &Arc<FiniteGroup>, v: &Value) -> Result<Self> {
        let (lambda, framings, mu) = hermitian_data_from_json(group, v)?;
        Self::new(lambda, framings, mu, group)
    }
}

type HermitianData = (Vec<Vec<GroupRingElement>>, Vec<i64>, Option<Vec<GroupRingElement>>);

/// The fields of a matrix file without validation, for use with [`realize`].
pub fn hermitian_data_from_json(group: &Arc<FiniteGroup>, v: &Value) -> Result<HermitianData> {
    let lambda = matrix_from_json(group, v.get("lambda").ok_or_else(|| Error::Parse("missing `lambda`".into()))?)?;
    let framings = match v.get("framings") {
        Some(f) => f
            .as_array()
            .ok_or_else(|| Error::Parse("`framings` must be an array".into()))?
            .iter()
            .map(json_int)
            .collect::<Result<Vec<_>>>()?,
        None => lambda.iter().enumerate().map(|(i, row)| row.get(i).map_or(0, GroupRingElement::augment)).collect(),
    };
    let mu = match v.get("mu") {
        None | Some(Value::Null) => None,
        Some(m) => Some(
            m.as_array()
                .ok_or_else(|| Error::Parse("`mu` must be an array".into()))?
                .iter()
                .map(|e| GroupRingElement::from_json(group, e))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    Ok((lambda, framings, mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qm::{qm_presentation, QmInstance};

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn empty_program_over_trivial_group() {
        let g = Arc::new(FiniteGroup::trivial());
        let t = eval(&ClaspProgram::new(vec![4]), &g).unwrap();
        assert_eq!(t.lifted_matrix(), IntMatrix::from_rows(vec![vec![4]]));
        assert_eq!(t.cover_surgery_homology(), AbelianGroupInvariants::from_factors(&[4], 0));
    }

    #[test]
    fn self_clasp_along_involution() {
        let g = z2();
        let mut prog = ClaspProgram::new(vec![1]);
        prog.push(Instruction::SelfClasp { i: 0, sign: 1, element: w("t") });
        let t = eval(&prog, &g).unwrap();
        assert_eq!(t.entry(0, 0), &GroupRingElement::from_terms(&g, [(1, 1)]));
        assert_eq!(t.upstairs_framing(0).unwrap(), 0);
        assert!(t.mu().is_none());
    }

    #[test]
    fn lifted_matrix_over_z2() {
        let g = z2();
        let lambda = vec![vec![GroupRingElement::from_terms(&g, [(0, -1), (1, 2)])]];
        let t = TwistedLinkingMatrix::new(lambda, vec![1], None, &g).unwrap();
        assert_eq!(t.lifted_matrix(), IntMatrix::from_rows(vec![vec![-1, 2], vec![2, -1]]));
        assert_eq!(t.cover_surgery_homology(), AbelianGroupInvariants::from_factors(&[3], 0));
        let unit = TwistedLinkingMatrix::new(vec![vec![GroupRingElement::monomial(&g, 0, -1)]], vec![-1], None, &g)
            .unwrap();
        assert!(unit.cover_surgery_homology().is_trivial());
    }

    #[test]
    fn paired_self_clasps() {
        let g = Arc::new(FiniteGroup::from_presentation(&qm_presentation(QmInstance::new(1)), 1000).unwrap());
        let mut prog = ClaspProgram::new(vec![1]);
        prog.push(Instruction::SelfClasp { i: 0, sign: 1, element: w("y") });
        prog.push(Instruction::SelfClasp { i: 0, sign: 1, element: w("y^-1") });
        let t = eval(&prog, &g).unwrap();
        // each self-clasp moves both y and y^-1
        assert_eq!(t.entry(0, 0).non_identity_sum(), 4);
        assert_eq!(t.upstairs_framing(0).unwrap(), -3);
    }

    #[test]
    fn realize_examples() {
        let g = Arc::new(FiniteGroup::from_presentation(&qm_presentation(QmInstance::new(0)), 1000).unwrap());
        let e = GroupRingElement::one(&g);
        let zero = GroupRingElement::zero(&g);
        let b = vec![vec![zero.clone(), e.clone()], vec![e.clone(), zero.clone()]];
        let prog = realize(&g, &b, &[0, 0], None).unwrap();
        assert_eq!(prog.instructions, vec![Instruction::Clasp { i: 0, j: 1, sign: 1, element: Word::identity() }]);

        let y = g.element(&w("y")).unwrap();
        let b01 = GroupRingElement::from_terms(&g, [(0, 1), (y, 2)]);
        let b = vec![vec![zero.clone(), b01.clone()], vec![b01.involute(), zero.clone()]];
        let prog = realize(&g, &b, &[0, 0], None).unwrap();
        let signs: Vec<_> = prog.instructions.iter().map(|i| i.to_string()).collect();
        assert_eq!(signs, ["clasp(0, 1, +, e)", "clasp(0, 1, +, y)", "clasp(0, 1, +, y)"]);
        assert_eq!(eval(&prog, &g).unwrap().lambda(), b.as_slice());

        let diag = vec![vec![GroupRingElement::monomial(&g, 0, -1)]];
        assert!(realize(&g, &diag, &[-1], None).unwrap().instructions.is_empty());
        assert!(matches!(realize(&g, &diag, &[0], None), Err(Error::FramingInconsistent { .. })));
        let bad = vec![vec![zero.clone(), e.clone()], vec![zero.clone(), zero.clone()]];
        assert!(matches!(realize(&g, &bad, &[0, 0], None), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn realize_with_refinement() {
        let g = Arc::new(FiniteGroup::from_presentation(&qm_presentation(QmInstance::new(0)), 1000).unwrap());
        let z = g.element(&w("z")).unwrap();
        let y2 = g.element(&w("y^2")).unwrap();
        assert!(g.is_involution(g.element(&w("z^2")).unwrap()));
        let z2 = g.element(&w("z^2")).unwrap();
        let mu = GroupRingElement::from_terms(&g, [(0, 1), (z, -1), (y2, 2), (z2, 1)]);
        let diag = mu.add(&mu.involute()).unwrap();
        let b = vec![vec![diag.clone()]];
        let framing = diag.augment();
        let prog = realize(&g, &b, &[framing], Some(std::slice::from_ref(&mu))).unwrap();
        let t = eval(&prog, &g).unwrap();
        assert_eq!(t.entry(0, 0), &diag);
        assert_eq!(t.mu().unwrap(), std::slice::from_ref(&mu));
        let wrong = GroupRingElement::from_terms(&g, [(0, 1)]);
        assert!(matches!(realize(&g, &b, &[framing], Some(&[wrong])), Err(Error::MuMismatch(0))));
    }

    #[test]
    fn instruction_errors() {
        let g = z2();
        let run = |ins: Instruction| {
            let mut prog = ClaspProgram::new(vec![0, 0]);
            prog.push(ins);
            eval(&prog, &g)
        };
        assert_eq!(run(Instruction::SelfClasp { i: 0, sign: 1, element: w("t^2") }), Err(Error::IdentitySelfClasp));
        assert_eq!(run(Instruction::Clasp { i: 0, j: 2, sign: 1, element: w("t") }), Err(Error::BadIndex(2)));
        assert!(matches!(
            run(Instruction::Clasp { i: 1, j: 1, sign: 1, element: w("t") }),
            Err(Error::InvalidInstruction(_))
        ));
        assert!(matches!(
            run(Instruction::Clasp { i: 0, j: 1, sign: 2, element: w("t") }),
            Err(Error::InvalidInstruction(_))
        ));
    }

    #[test]
    fn trivialize_single_clasp() {
        let g = z2();
        let mut prog = ClaspProgram::new(vec![0, 0]);
        prog.push(Instruction::Clasp { i: 0, j: 1, sign: 1, element: w("t") });
        let t = eval(&prog, &g).unwrap();
        let fix = t.trivialize_first_row();
        assert_eq!(fix.instructions, vec![Instruction::Clasp { i: 0, j: 1, sign: -1, element: w("t") }]);
        let t = eval(&prog.then(&fix), &g).unwrap();
        assert!(t.entry(0, 1).is_zero());
        assert!(eval(&ClaspProgram::new(vec![3]), &g).unwrap().trivialize_first_row().instructions.is_empty());
    }

    #[test]
    fn json_round_trips() {
        let g = z2();
        let text = r#"{"n": 2, "framings": [0, 1], "group": "Z2", "ops": [["clasp", 0, 1, 1, "e"], ["self", 1, -1, "t"]]}"#;
        let (prog, name) = ClaspProgram::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert_eq!(name, "Z2");
        assert_eq!(prog.instructions.len(), 2);
        assert_eq!(ClaspProgram::from_json(&prog.to_json("Z2")).unwrap(), (prog.clone(), name));
        let t = eval(&prog, &g).unwrap();
        assert_eq!(TwistedLinkingMatrix::from_json(&g, &t.to_json()).unwrap(), t);
    }
}
