//! Integral group rings of finite groups given by regular coset tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::cosets::{enumerate_cosets, CosetTable};
use crate::error::{Error, Result};
use crate::matrix::{json_int, IntMatrix};
use crate::presentation::GroupPresentation;
use crate::word::Word;

/// A finite group with elements numbered as the cosets of its regular table.
/// Element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: CosetTable,
    names: Vec<Word>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl FiniteGroup {
    /// Builds the group from a closed table whose subgroup is trivial, that
    /// is, on which the group acts freely.
    pub fn from_table(table: CosetTable) -> Result<FiniteGroup> {
        let d = table.len();
        let names = table.transversal();
        let perms = names.iter().map(|w| table.permutation(w)).collect::<Result<Vec<_>>>()?;
        // free action: every Schreier generator rep(c) g rep(c.g)^-1 acts trivially
        for (c, rep) in perms.iter().enumerate() {
            for col in (0..2 * table.generators().len()).step_by(2) {
                let target = &perms[table.act(c, col)];
                if (0..d).any(|a| table.act(rep[a], col) != target[a]) {
                    return Err(Error::NotRegular(format!("stabilizer of coset 0 is nontrivial at coset {c}")));
                }
            }
        }
        let mut mul = vec![0u32; d * d];
        for (b, perm) in perms.iter().enumerate() {
            for (a, &ab) in perm.iter().enumerate() {
                mul[a * d + b] = ab as u32;
            }
        }
        let mut inv = vec![0u32; d];
        for a in 0..d {
            inv[a] = (0..d).find(|&b| mul[a * d + b] == 0).expect("regular action is transitive") as u32;
        }
        Ok(FiniteGroup { table, names, mul, inv })
    }

    /// Enumerates the cosets of the trivial subgroup.
    pub fn from_presentation(pres: &GroupPresentation, max_cosets: usize) -> Result<FiniteGroup> {
        Self::from_table(enumerate_cosets(pres, &[], max_cosets)?)
    }

    /// `Z/n` on the generator `t`.
    pub fn cyclic(n: u32) -> FiniteGroup {
        assert!(n > 0, "cyclic group of order 0");
        let pres = GroupPresentation::new(&["t"], vec![Word::power_of("t", n as i64)]).expect("valid presentation");
        let perm: Vec<usize> = (0..n as usize).map(|i| (i + 1) % n as usize).collect();
        let table = CosetTable::from_permutations(&pres, &[], &[perm]).expect("cyclic permutation is a valid table");
        Self::from_table(table).expect("cyclic action is regular")
    }

    pub fn trivial() -> FiniteGroup {
        let pres = GroupPresentation::new::<&str>(&[], Vec::new()).expect("valid presentation");
        let table = CosetTable::from_permutations(&pres, &[], &[]).expect("one coset");
        Self::from_table(table).expect("trivial action is regular")
    }

    pub fn order(&self) -> usize {
        self.inv.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn generators(&self) -> &[String] {
        self.table.generators()
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order() + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn is_involution(&self, a: usize) -> bool {
        a != 0 && self.inv[a] as usize == a
    }

    /// Transversal word representing an element.
    pub fn name(&self, a: usize) -> &Word {
        &self.names[a]
    }

    pub fn element(&self, w: &Word) -> Result<usize> {
        self.table.trace(0, w)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "finite group of order {} on <{}>", self.order(), self.generators().join(", "))
    }
}

/// A finite integer combination of group elements.
#[derive(Debug, Clone)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    coeffs: BTreeMap<usize, i64>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl Eq for GroupRingElement {}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn checked(v: Option<i64>) -> Result<i64> {
    v.ok_or_else(|| Error::Overflow("group ring coefficient".into()))
}

impl GroupRingElement {
    pub fn zero(group: &Arc<FiniteGroup>) -> Self {
        GroupRingElement { group: Arc::clone(group), coeffs: BTreeMap::new() }
    }

    pub fn one(group: &Arc<FiniteGroup>) -> Self {
        Self::monomial(group, 0, 1)
    }

    /// `coef * g`. Panics if `g` is not an element of the group.
    pub fn monomial(group: &Arc<FiniteGroup>, g: usize, coef: i64) -> Self {
        Self::from_terms(group, [(g, coef)])
    }

    /// Sums repeated elements and drops zero coefficients.
    pub fn from_terms(group: &Arc<FiniteGroup>, terms: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut e = Self::zero(group);
        for (g, c) in terms {
            assert!(g < group.order(), "element {g} out of range");
            e.add_term(g, c).expect("coefficient overflow");
        }
        e
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coefficient(&self, g: usize) -> i64 {
        self.coeffs.get(&g).copied().unwrap_or(0)
    }

    pub fn identity_coefficient(&self) -> i64 {
        self.coefficient(0)
    }

    /// Nonzero terms in element order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&g, &c)| (g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `coef * g` in place.
    pub fn add_term(&mut self, g: usize, coef: i64) -> Result<()> {
        let c = checked(self.coefficient(g).checked_add(coef))?;
        if c == 0 {
            self.coeffs.remove(&g);
        } else {
            self.coeffs.insert(g, c);
        }
        Ok(())
    }

    fn check_group(&self, other: &Self) -> Result<()> {
        if same_group(&self.group, &other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1)?)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero(&self.group);
        for (g, c) in self.terms() {
            out.add_term(g, checked(c.checked_mul(k))?)?;
        }
        Ok(out)
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_group(other)?;
        let mut out = Self::zero(&self.group);
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(self.group.multiply(a, b), checked(ca.checked_mul(cb))?)?;
            }
        }
        Ok(out)
    }

    /// Moves the coefficient of `g` to `g^-1`.
    pub fn involute(&self) -> Self {
        GroupRingElement {
            group: Arc::clone(&self.group),
            coeffs: self.terms().map(|(g, c)| (self.group.inverse(g), c)).collect(),
        }
    }

    pub fn is_self_involute(&self) -> bool {
        self.terms().all(|(g, c)| self.coefficient(self.group.inverse(g)) == c)
    }

    /// Sum of coefficients.
    pub fn augment(&self) -> i64 {
        self.terms().map(|(_, c)| c).sum()
    }

    /// Sum of the coefficients away from the identity.
    pub fn non_identity_sum(&self) -> i64 {
        self.augment() - self.identity_coefficient()
    }

    /// The `d x d` matrix with entry `(h, g)` equal to the coefficient of
    /// `g h^-1`. It satisfies `R(a b) = R(b) R(a)` and
    /// `R(involute(a)) = R(a)^T`.
    pub fn regular_matrix(&self) -> IntMatrix {
        let grp = &self.group;
        let d = grp.order();
        let mut m = IntMatrix::zeros(d, d);
        for (k, c) in self.terms() {
            // g h^-1 = k  <=>  g = k h
            for h in 0..d {
                m[(h, grp.multiply(k, h))] = c;
            }
        }
        m
    }

    /// `[[coef, "word"], ...]` in element order, words from the group's
    /// transversal.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(g, c)| Value::Array(vec![Value::from(c), Value::from(self.group.name(g).to_string())]))
                .collect(),
        )
    }

    /// Reads `[[coef, "word"], ...]`; words are evaluated in the group and
    /// repeated elements are summed.
    pub fn from_json(group: &Arc<FiniteGroup>, v: &Value) -> Result<Self> {
        let pairs = v.as_array().ok_or_else(|| Error::Parse("group ring element must be an array".into()))?;
        let mut out = Self::zero(group);
        for p in pairs {
            match p.as_array().map(Vec::as_slice) {
                Some([c, Value::String(w)]) => {
                    let g = group.element(&Word::parse(w)?)?;
                    out.add_term(g, json_int(c)?)?;
                }
                _ => return Err(Error::Parse(format!("expected [coefficient, \"word\"], got {p}"))),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (g, c)) in self.terms().enumerate() {
            let name = self.group.name(g);
            let name = if name.is_identity() { "e".to_string() } else { name.to_string() };
            match (k, c < 0) {
                (0, false) => write!(f, "{c}[{name}]")?,
                (0, true) => write!(f, "-{}[{name}]", -c)?,
                (_, false) => write!(f, " + {c}[{name}]")?,
                (_, true) => write!(f, " - {}[{name}]", -c)?,
            }
        }
        Ok(())
    }
}
