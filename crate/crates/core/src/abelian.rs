//! Smith normal form over the integers and finitely generated abelian group
//! invariants.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::IntMatrix;
use crate::presentation::GroupPresentation;

/// `Z^free_rank + Z/d1 + ... + Z/dk` with `d1 | d2 | ... | dk`, all `di >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroupInvariants {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianGroupInvariants {
    pub fn new(invariant_factors: Vec<BigInt>, free_rank: usize) -> Self {
        let inv = AbelianGroupInvariants { invariant_factors, free_rank };
        debug_assert!(inv.is_canonical());
        inv
    }

    pub fn from_factors(factors: &[i64], free_rank: usize) -> Self {
        Self::new(factors.iter().map(|&f| BigInt::from(f)).collect(), free_rank)
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty() && self.free_rank == 0
    }

    pub fn is_canonical(&self) -> bool {
        let two = BigInt::from(2);
        self.invariant_factors.iter().all(|d| *d >= two)
            && self.invariant_factors.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    /// Group order, or `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }

    pub fn factors_i64(&self) -> Vec<i64> {
        self.invariant_factors.iter().map(|d| d.to_i64().expect("factor fits in i64")).collect()
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Abelianization: the cokernel of the relator exponent-sum matrix.
pub fn abelianization(pres: &GroupPresentation) -> AbelianGroupInvariants {
    let gens = pres.generators();
    let rows: Vec<Vec<i64>> = pres
        .relators()
        .iter()
        .map(|r| gens.iter().map(|g| r.exponent_sum(g)).collect())
        .collect();
    cokernel(&IntMatrix::from_rows_with_cols(rows, gens.len()))
}

/// Invariants of `Z^cols / (row space)`: rows are relations, columns
/// generators.
pub fn cokernel(m: &IntMatrix) -> AbelianGroupInvariants {
    let diag = smith_diagonal(m);
    let rank = diag.len();
    let factors = diag.into_iter().filter(|d| !d.is_one()).collect();
    AbelianGroupInvariants::new(factors, m.cols() - rank)
}

/// Nonzero diagonal entries of the Smith normal form, positive and in
/// divisibility order.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let small: Vec<Vec<i128>> = (0..m.rows()).map(|i| m.row(i).iter().map(|&x| x as i128).collect()).collect();
    if let Some(d) = snf_diagonal(small) {
        return d.into_iter().map(BigInt::from).collect();
    }
    let big: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
    snf_diagonal(big).expect("arbitrary precision never overflows")
}

/// Entry type for the elimination. `None` from an arithmetic step means
/// overflow; the caller retries in arbitrary precision.
trait SnfEntry: Clone + Ord {
    fn is_zero(&self) -> bool;
    fn abs_val(&self) -> Self;
    /// Truncating quotient.
    fn quot(&self, other: &Self) -> Self;
    /// `self - q * other`.
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self>;
    fn add(&self, other: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
}

impl SnfEntry for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn quot(&self, other: &Self) -> Self {
        self / other
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*other)?)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
}

impl SnfEntry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_val(&self) -> Self {
        self.abs()
    }
    fn quot(&self, other: &Self) -> Self {
        self / other
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        Some(self - q * other)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn divides(&self, other: &Self) -> bool {
        other.is_multiple_of(self)
    }
}

fn cmp_pivot<T: SnfEntry>(a: &T, b: &T) -> Ordering {
    a.abs_val().cmp(&b.abs_val())
}

/// Pivot rule: smallest nonzero absolute value in the trailing block; ties go
/// to the lowest row, then the lowest column.
fn find_pivot<T: SnfEntry>(a: &[Vec<T>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if cmp_pivot(x, &a[bi][bj]) != Ordering::Less => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn snf_diagonal<T: SnfEntry>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&a, t, cols) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].quot(&p);
                let pivot_row = a[t].clone();
                for j in t..cols {
                    a[i][j] = a[i][j].sub_mul(&q, &pivot_row[j])?;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].quot(&p);
                for row in a.iter_mut().skip(t) {
                    row[j] = row[j].sub_mul(&q, &row[t])?;
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot survived in row or column t
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && cmp_pivot(&a[i][t], &a[best.0][best.1]) == Ordering::Less {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && cmp_pivot(&a[t][j], &a[best.0][best.1]) == Ordering::Less {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            // enforce divisibility of the trailing block by the pivot
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !p.divides(&a[i][j])));
            match bad {
                Some(i) => {
                    let other = a[i].clone();
                    for j in t..cols {
                        a[t][j] = a[t][j].add(&other[j])?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs_val());
        t += 1;
    }
    debug_assert!(diag.iter().all(|d| !d.is_zero()));
    Some(diag)
}
