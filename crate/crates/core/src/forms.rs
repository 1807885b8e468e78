//! Integral symmetric bilinear forms: parity, unimodularity, exact
//! signature, E8 stabilization and splitting into hyperbolic planes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::clasp::TwistedLinkingMatrix;
use crate::error::{Error, Result};
use crate::groupring::GroupRingElement;
use crate::matrix::IntMatrix;

/// Default half-width of the coefficient box for isotropic vector search.
pub const DEFAULT_SEARCH_BOUND: i64 = 4;
/// The box is doubled up to this half-width before giving up.
pub const MAX_SEARCH_BOUND: i64 = 32;
const CANDIDATE_CAP: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerSymmetricForm {
    matrix: IntMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Category {
    Topological,
    Smooth,
}

impl Category {
    /// Signature of the smallest closed spin manifold in the category.
    pub fn step(self) -> i64 {
        match self {
            Category::Topological => 8,
            Category::Smooth => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Topological => "topological",
            Category::Smooth => "smooth",
        }
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Category> {
        match s {
            "topological" | "top" => Ok(Category::Topological),
            "smooth" => Ok(Category::Smooth),
            other => Err(Error::Parse(format!("unknown category `{other}`"))),
        }
    }
}

/// `U` with `U^T F U` a block sum of `blocks` copies of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicDecomposition {
    pub basis_change: IntMatrix,
    pub blocks: usize,
}

impl IntegerSymmetricForm {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if !matrix.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(IntegerSymmetricForm { matrix })
    }

    /// `[[0, 1], [1, 0]]`.
    pub fn hyperbolic() -> Self {
        IntegerSymmetricForm { matrix: IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]) }
    }

    /// Cartan matrix of E8 (positive definite).
    pub fn e8() -> Self {
        let mut m = IntMatrix::zeros(8, 8);
        for i in 0..8 {
            m[(i, i)] = 2;
        }
        // chain 0-1-2-3-4-5-6 with node 7 attached to node 4
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
            m[(a, b)] = -1;
            m[(b, a)] = -1;
        }
        IntegerSymmetricForm { matrix: m }
    }

    /// Named constants `H` and `E8`, with `-` for the negative.
    pub fn builtin(name: &str) -> Option<Self> {
        let (neg, base) = match name.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, name),
        };
        let f = match base.to_ascii_uppercase().as_str() {
            "H" => Self::hyperbolic(),
            "E8" => Self::e8(),
            _ => return None,
        };
        Some(if neg { f.negated() } else { f })
    }

    pub fn direct_sum(forms: &[IntegerSymmetricForm]) -> Self {
        let blocks: Vec<IntMatrix> = forms.iter().map(|f| f.matrix.clone()).collect();
        IntegerSymmetricForm { matrix: IntMatrix::direct_sum(&blocks) }
    }

    pub fn negated(&self) -> Self {
        IntegerSymmetricForm { matrix: self.matrix.scaled(-1) }
    }

    /// `U^T F U`.
    pub fn congruent(&self, u: &IntMatrix) -> Result<Self> {
        Ok(IntegerSymmetricForm { matrix: u.congruence(&self.matrix)? })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.matrix[(i, i)] % 2 == 0)
    }

    pub fn is_unimodular(&self) -> bool {
        self.matrix.is_unimodular()
    }

    /// Positive minus negative eigenvalue count, by exact symmetric
    /// elimination over the rationals.
    pub fn signature(&self) -> Result<i64> {
        if self.determinant().is_zero() {
            return Err(Error::Degenerate);
        }
        let mut a: Vec<Vec<BigRational>> = self
            .matrix
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
            .collect();
        let mut sig = 0i64;
        while !a.is_empty() {
            let n = a.len();
            if let Some(p) = (0..n).find(|&i| !a[i][i].is_zero()) {
                sig += if a[p][p].is_positive() { 1 } else { -1 };
                let pivot = a[p][p].clone();
                let col: Vec<BigRational> = (0..n).map(|k| a[k][p].clone()).collect();
                a = (0..n)
                    .filter(|&k| k != p)
                    .map(|k| {
                        (0..n).filter(|&l| l != p).map(|l| &a[k][l] - &col[k] * &col[l] / &pivot).collect()
                    })
                    .collect();
            } else {
                // zero diagonal: split off a 2x2 block [[0, b], [b, 0]] of signature 0
                let (i, j) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                    .expect("nondegenerate");
                let b = a[i][j].clone();
                let ci: Vec<BigRational> = (0..n).map(|k| a[k][i].clone()).collect();
                let cj: Vec<BigRational> = (0..n).map(|k| a[k][j].clone()).collect();
                a = (0..n)
                    .filter(|&k| k != i && k != j)
                    .map(|k| {
                        (0..n)
                            .filter(|&l| l != i && l != j)
                            .map(|l| &a[k][l] - (&ci[k] * &cj[l] + &cj[k] * &ci[l]) / &b)
                            .collect()
                    })
                    .collect();
            }
        }
        Ok(sig)
    }

    fn require_even_unimodular(&self) -> Result<()> {
        if !self.is_even() {
            return Err(Error::NotEven);
        }
        if !self.is_unimodular() {
            return Err(Error::NotUnimodular);
        }
        Ok(())
    }

    /// Signed number of `E8` summands (`E8 + E8` for smooth) to adjoin so
    /// that the signature becomes 0; negative values mean copies of the
    /// negative form.
    pub fn e8_stabilization(&self, category: Category) -> Result<i64> {
        self.require_even_unimodular()?;
        let signature = self.signature()?;
        let step = category.step();
        if signature % step != 0 {
            return Err(Error::SignatureObstructed { signature, step, category: category.name() });
        }
        Ok(-signature / step)
    }

    /// Splits an even unimodular form of signature 0 into hyperbolic planes.
    /// The result is checked by exact arithmetic before it is returned.
    pub fn hyperbolic_basis(&self, search_bound: i64) -> Result<HyperbolicDecomposition> {
        self.require_even_unimodular()?;
        let r = self.rank();
        if r < 2 {
            return Err(Error::RankTooSmall(r));
        }
        let sig = self.signature()?;
        if sig != 0 {
            return Err(Error::NonzeroSignature(sig));
        }
        // columns of `basis` span the part not yet split off
        let mut basis = IntMatrix::identity(r);
        let mut columns: Vec<Vec<i64>> = Vec::with_capacity(r);
        while basis.cols() > 0 {
            let g = basis.congruence(&self.matrix)?;
            let v = find_isotropic(&g, search_bound)?;
            let gv = mat_vec(&g, &v)?;
            let mut w = unit_dual(&gv);
            let half = bilinear(&g, &w, &w)? / 2;
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi = checked_sub_mul(*wi, half, *vi)?;
            }
            let gw = mat_vec(&g, &w)?;
            let kernel = kernel_basis(&[gv, gw])?;
            columns.push(mat_vec(&basis, &v)?);
            columns.push(mat_vec(&basis, &w)?);
            basis = basis.mul(&kernel)?;
        }
        let mut u = IntMatrix::zeros(r, r);
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                u[(i, j)] = x;
            }
        }
        let blocks = r / 2;
        let target = IntMatrix::direct_sum(&vec![Self::hyperbolic().matrix; blocks]);
        if u.congruence(&self.matrix)? != target || !u.is_unimodular() {
            return Err(Error::Overflow("hyperbolic basis failed verification".into()));
        }
        Ok(HyperbolicDecomposition { basis_change: u, blocks })
    }
}

impl fmt::Display for IntegerSymmetricForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// Entrywise augmentation of a Hermitian matrix over `Z[G]`.
pub fn augment_form(lambda: &[Vec<GroupRingElement>]) -> Result<IntegerSymmetricForm> {
    let n = lambda.len();
    for (i, row) in lambda.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotHermitian(format!("row {i} has length {}", row.len())));
        }
        for (j, e) in row.iter().enumerate() {
            if lambda[j][i] != e.involute() {
                return Err(Error::NotHermitian(format!("entry ({j}, {i}) is not the involute of ({i}, {j})")));
            }
        }
    }
    let rows = lambda.iter().map(|row| row.iter().map(GroupRingElement::augment).collect()).collect();
    IntegerSymmetricForm::new(IntMatrix::from_rows_with_cols(rows, n))
}

impl From<&TwistedLinkingMatrix> for IntegerSymmetricForm {
    fn from(t: &TwistedLinkingMatrix) -> Self {
        IntegerSymmetricForm { matrix: t.augmented() }
    }
}

fn overflow() -> Error {
    Error::Overflow("hyperbolic basis".into())
}

fn checked_sub_mul(a: i64, b: i64, c: i64) -> Result<i64> {
    b.checked_mul(c).and_then(|bc| a.checked_sub(bc)).ok_or_else(overflow)
}

fn mat_vec(m: &IntMatrix, v: &[i64]) -> Result<Vec<i64>> {
    (0..m.rows())
        .map(|i| {
            let s: i128 = m.row(i).iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
            i64::try_from(s).map_err(|_| overflow())
        })
        .collect()
}

fn bilinear(g: &IntMatrix, a: &[i64], b: &[i64]) -> Result<i64> {
    let gb = mat_vec(g, b)?;
    let s: i128 = a.iter().zip(&gb).map(|(&x, &y)| x as i128 * y as i128).sum();
    i64::try_from(s).map_err(|_| overflow())
}

/// First primitive `v` with `v^T g v = 0`, by increasing L1 norm and then
/// in decreasing lexicographic order, inside boxes `[-B, B]` of doubling
/// half-width.
fn find_isotropic(g: &IntMatrix, search_bound: i64) -> Result<Vec<i64>> {
    let k = g.rows();
    let mut bound = search_bound.max(1);
    let last = search_bound.max(MAX_SEARCH_BOUND);
    loop {
        let mut budget = CANDIDATE_CAP;
        let mut v = vec![0i64; k];
        for norm in 1..=(k as i64 * bound) {
            if let Some(found) = search_norm(g, &mut v, 0, norm, bound, &mut budget) {
                return Ok(found);
            }
            if budget == 0 {
                break;
            }
        }
        if bound >= last {
            return Err(Error::SearchExhausted(bound));
        }
        bound = (bound * 2).min(last);
    }
}

fn search_norm(g: &IntMatrix, v: &mut [i64], pos: usize, remaining: i64, bound: i64, budget: &mut u64) -> Option<Vec<i64>> {
    let k = v.len();
    if pos == k - 1 {
        for x in [remaining, -remaining] {
            if x.abs() > bound || (x == 0 && remaining != 0) {
                continue;
            }
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            v[pos] = x;
            if v.iter().fold(0i64, |a, &b| a.gcd(&b)) == 1 && bilinear(g, v, v).ok() == Some(0) {
                return Some(v.to_vec());
            }
            if remaining == 0 {
                break;
            }
        }
        v[pos] = 0;
        return None;
    }
    let reach = remaining.min(bound);
    for x in (-reach..=reach).rev() {
        let rest = remaining - x.abs();
        if rest > bound * (k - pos - 1) as i64 {
            continue;
        }
        v[pos] = x;
        if let Some(found) = search_norm(g, v, pos + 1, rest, bound, budget) {
            return Some(found);
        }
        if *budget == 0 {
            break;
        }
    }
    v[pos] = 0;
    None
}

/// `w` with `u . w = 1` for a primitive integer vector `u`.
fn unit_dual(u: &[i64]) -> Vec<i64> {
    let mut w = vec![0i64; u.len()];
    let mut g = 0i64;
    for (i, &x) in u.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let e = g.extended_gcd(&x);
        for c in w.iter_mut() {
            *c *= e.x;
        }
        w[i] = e.y;
        g = e.gcd;
    }
    debug_assert_eq!(g.abs(), 1, "dual of a non-primitive vector");
    if g < 0 {
        for c in w.iter_mut() {
            *c = -*c;
        }
    }
    w
}

/// Basis (as columns) of the integer kernel of the rows, by unimodular
/// column reduction.
fn kernel_basis(rows: &[Vec<i64>]) -> Result<IntMatrix> {
    let k = rows[0].len();
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let mut c = IntMatrix::identity(k);
    let mut lead = 0;
    for r in 0..m.len() {
        loop {
            let nz: Vec<usize> = (lead..k).filter(|&j| m[r][j] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    swap_cols(&mut m, &mut c, lead, j);
                    lead += 1;
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| m[r][j].abs()).expect("nonempty");
            for &j in &nz {
                if j != p {
                    let q = m[r][j] / m[r][p];
                    for row in m.iter_mut() {
                        row[j] = checked_sub_mul(row[j], q, row[p])?;
                    }
                    for i in 0..k {
                        c[(i, j)] = checked_sub_mul(c[(i, j)], q, c[(i, p)])?;
                    }
                }
            }
        }
    }
    Ok(IntMatrix::from_rows_with_cols((0..k).map(|i| c.row(i)[lead..].to_vec()).collect(), k - lead))
}

fn swap_cols(m: &mut [Vec<i64>], c: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    for i in 0..c.rows() {
        let t = c[(i, a)];
        c[(i, a)] = c[(i, b)];
        c[(i, b)] = t;
    }
}
