#![allow(dead_code)]

use std::sync::Arc;

use coverlink::{
    qm_presentation, ClaspProgram, FiniteGroup, GroupRingElement, Instruction, IntMatrix, QmInstance,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

pub fn gm(p: i64) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::from_presentation(&qm_presentation(QmInstance::new(p)), 100_000).unwrap())
}

/// Invariant factors (entries > 1) and free rank of the cokernel of `m`,
/// by plain row and column reduction: the pivot is the first nonzero entry
/// in row-major order, with no size heuristics.
///
/// Entries are kept reduced modulo `M = 2D`, where `D` is a nonzero minor of
/// maximal size. Every invariant factor divides `D`, so reducing modulo `M`
/// turns each free summand into `Z/M` and leaves the torsion unchanged.
pub fn naive_cokernel(m: &IntMatrix) -> (Vec<BigInt>, usize) {
    let a: Vec<Vec<BigInt>> = m.to_rows().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let modulus = maximal_minor(a.clone(), cols).abs() * 2u32;
    let mut diag = naive_diagonal(a, rows, cols, &modulus);
    for d in diag.iter_mut() {
        *d = num_integer::Integer::gcd(&*d, &modulus);
    }
    diag.resize(cols, modulus.clone());
    // fix divisibility: replace the diagonal by gcd/lcm pairs until sorted
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                let g = num_integer::Integer::gcd(&diag[i], &diag[j]);
                if g != diag[i] {
                    let l = &diag[i] / &g * &diag[j];
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
            }
        }
    }
    let free = diag.iter().filter(|d| **d == modulus).count();
    let factors = diag.into_iter().filter(|d| *d > BigInt::from(1) && *d != modulus).collect();
    (factors, free)
}

/// Fraction-free elimination with full pivoting. Returns a nonzero minor of
/// maximal size, or 1 for the zero matrix.
fn maximal_minor(mut a: Vec<Vec<BigInt>>, cols: usize) -> BigInt {
    let rows = a.len();
    let mut prev = BigInt::from(1);
    for k in 0..rows.min(cols) {
        let Some((pi, pj)) = (k..rows).flat_map(|i| (k..cols).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    prev
}

/// Centered representative of `x` modulo `m`.
fn reduce(x: BigInt, m: &BigInt) -> BigInt {
    let r = num_integer::Integer::mod_floor(&x, m);
    if &r * 2u32 > *m {
        r - m
    } else {
        r
    }
}

/// Quotient rounded to the nearest integer, so remainders stay centered.
fn nearest(x: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_mod_floor(x, p);
    if (&r * 2u32).abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

fn naive_diagonal(mut a: Vec<Vec<BigInt>>, rows: usize, cols: usize, modulus: &BigInt) -> Vec<BigInt> {
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x = reduce(std::mem::take(x), modulus);
        }
    }
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            for i in t + 1..rows {
                while !a[i][t].is_zero() {
                    let q = nearest(&a[i][t], &a[t][t]);
                    for j in t..cols {
                        let v = &a[i][j] - &q * &a[t][j];
                        a[i][j] = reduce(v, modulus);
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                    }
                }
            }
            let mut swapped = false;
            for j in t + 1..cols {
                while !a[t][j].is_zero() {
                    let q = nearest(&a[t][j], &a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &row[j] - &q * &row[t];
                        row[j] = reduce(v, modulus);
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        swapped = true;
                    }
                }
            }
            if !swapped {
                break;
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// A random program over `group`: up to `max_n` components with framings in
/// `-3..=3` and up to `max_len` instructions.
pub fn random_program<R: Rng>(rng: &mut R, group: &FiniteGroup, max_n: usize, max_len: usize) -> ClaspProgram {
    let n = rng.gen_range(1..=max_n);
    let framings = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
    let mut prog = ClaspProgram::new(framings);
    let d = group.order();
    for _ in 0..rng.gen_range(0..=max_len) {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let i = rng.gen_range(0..n);
        if n > 1 && rng.gen_bool(0.6) {
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let element = group.name(rng.gen_range(0..d)).clone();
            prog.push(Instruction::Clasp { i, j, sign, element });
        } else if d > 1 {
            let element = group.name(rng.gen_range(1..d)).clone();
            prog.push(Instruction::SelfClasp { i, sign, element });
        }
    }
    prog
}

pub fn random_element<R: Rng>(rng: &mut R, group: &Arc<FiniteGroup>, terms: usize) -> GroupRingElement {
    GroupRingElement::from_terms(
        group,
        (0..terms).map(|_| (rng.gen_range(0..group.order()), rng.gen_range(-3..=3))),
    )
}

/// Product of random elementary integer matrices; determinant 1.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = rng.gen_range(-2..=2);
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = k;
        u = u.mul(&e).unwrap();
    }
    u
}

/// Convolution straight from the definition, indexing by element pairs.
pub fn convolve(a: &GroupRingElement, b: &GroupRingElement) -> Vec<i64> {
    let g = a.group();
    let d = g.order();
    let mut out = vec![0i64; d];
    for x in 0..d {
        for y in 0..d {
            out[g.multiply(x, y)] += a.coefficient(x) * b.coefficient(y);
        }
    }
    out
}
