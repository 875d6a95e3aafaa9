//! Fraction-free integer elimination and exact nullspaces.
//!
//! Rows are combined by cross-multiplication (`p·row_i − a·row_r` with the
//! common factor of `p` and `a` divided out first) and every touched row is
//! divided by its content afterwards. That keeps entries integral without
//! ever forming a rational, and the content stripping keeps coefficient
//! growth in check on the evaluation matrices this crate produces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::projective::make_primitive;

/// Integer matrix in reduced echelon form up to row scaling: every pivot
/// entry is positive, every other entry in a pivot column is zero, each row
/// is primitive, and pivot columns increase down the rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn combine(target: &mut [BigInt], pivot_row: &[BigInt], col: usize) {
    let a = target[col].clone();
    if a.is_zero() {
        return;
    }
    let p = &pivot_row[col];
    let g = p.gcd(&a);
    let pm = p / &g;
    let am = a / &g;
    for (t, s) in target.iter_mut().zip(pivot_row) {
        *t = &pm * &*t - &am * s;
    }
    make_primitive(target);
}

/// Reduces `rows` (each of length `ncols`) to [`Echelon`] form.
pub fn reduced_echelon(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    for r in rows.iter_mut() {
        make_primitive(r);
    }
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        // smallest nonzero magnitude as pivot limits growth
        let Some(best) = (rank..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by(|&i, &j| rows[i][col].magnitude().cmp(rows[j][col].magnitude()))
        else {
            continue;
        };
        rows.swap(rank, best);
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, below) = tail.split_first_mut().expect("rank < rows.len()");
        for r in head.iter_mut().chain(below.iter_mut()) {
            combine(r, pivot_row, col);
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    for (row, &c) in rows.iter_mut().zip(&pivots) {
        if row[c].is_negative() {
            for x in row.iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    Echelon { rows, pivots, ncols }
}

/// Canonical integer basis of `{v : M v = 0}`.
///
/// The basis is the reduced echelon form of the nullspace itself, each row
/// primitive with a positive pivot, so two matrices with the same kernel
/// yield identical bases.
pub fn nullspace(rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    #[cfg(debug_assertions)]
    let original = rows.clone();
    let ech = reduced_echelon(rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    let mut kernel = Vec::with_capacity(ncols - ech.rank());
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        // v[free] = L, v[pivot_i] = -row_i[free] * L / row_i[pivot_i]
        let lcm = ech
            .rows
            .iter()
            .zip(&ech.pivots)
            .filter(|(row, _)| !row[free].is_zero())
            .fold(BigInt::from(1), |acc, (row, &c)| acc.lcm(&row[c]));
        let mut v = vec![BigInt::zero(); ncols];
        v[free] = lcm.clone();
        for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
            if !row[free].is_zero() {
                v[c] = -(&row[free] * &lcm) / &row[c];
            }
        }
        make_primitive(&mut v);
        kernel.push(v);
    }
    let basis = reduced_echelon(kernel, ncols).rows;
    #[cfg(debug_assertions)]
    for v in &basis {
        for row in &original {
            let s: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
            debug_assert!(s.is_zero(), "nullspace vector fails a row");
        }
    }
    basis
}

pub fn rank(rows: Vec<Vec<BigInt>>, ncols: usize) -> usize {
    reduced_echelon(rows, ncols).rank()
}
