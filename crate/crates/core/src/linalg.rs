//! Dense exact matrices and fraction-free elimination.
//!
//! Kernels and ranks are computed by a Bareiss-style scheme: every row is
//! scaled to integer entries, reduced to content one, and eliminated by
//! cross-multiplication, so no intermediate result ever leaves the integers.
//! Rows enter the echelon one at a time, which keeps the cost proportional
//! to the number of nonzero entries for the sparse systems produced by the
//! cohomology module.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::{self, Scalar};
use crate::{Error, Result};

/// Dense matrix of exact scalars, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: scalar::zeros(rows * cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("ragged rows in matrix literal".into()));
        }
        Ok(Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let cur = out.get(r, c) + a * b;
                        out.set(r, c, cur);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let mut out = scalar::zeros(self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    out[r] += a * &v[c];
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Matrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !work.get(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot != col {
                for c in 0..n {
                    let a = work.get(pivot, c).clone();
                    let b = work.get(col, c).clone();
                    work.set(pivot, c, b);
                    work.set(col, c, a);
                    let a = inv.get(pivot, c).clone();
                    let b = inv.get(col, c).clone();
                    inv.set(pivot, c, b);
                    inv.set(col, c, a);
                }
            }
            let p = work.get(col, col).clone();
            for c in 0..n {
                work.set(col, c, work.get(col, c) / &p);
                inv.set(col, c, inv.get(col, c) / &p);
            }
            for r in 0..n {
                if r == col || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                for c in 0..n {
                    let w = work.get(r, c) - &factor * work.get(col, c);
                    work.set(r, c, w);
                    let w = inv.get(r, c) - &factor * inv.get(col, c);
                    inv.set(r, c, w);
                }
            }
        }
        Ok(inv)
    }

    pub fn rank(&self) -> usize {
        let mut elim = Eliminator::new(self.cols);
        for r in 0..self.rows {
            elim.push_dense(self.row(r));
        }
        elim.rank()
    }

    /// Basis of `{v : Mv = 0}`, canonicalized, ordered by free column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut elim = Eliminator::new(self.cols);
        for r in 0..self.rows {
            elim.push_dense(self.row(r));
        }
        elim.kernel_basis()
    }

    /// One solution of `Mx = b`, if the system is consistent. Found through
    /// the kernel of the augmented matrix [M | −b]: a kernel vector with a
    /// nonzero last coordinate normalizes to a solution.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len(), "right-hand side length mismatch");
        let mut elim = Eliminator::new(self.cols + 1);
        for r in 0..self.rows {
            let mut row: Vec<(usize, Scalar)> = self
                .row(r)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect();
            if !b[r].is_zero() {
                row.push((self.cols, -b[r].clone()));
            }
            elim.push_sparse(&row);
        }
        for v in elim.kernel_basis() {
            let last = &v[self.cols];
            if !last.is_zero() {
                return Some(v[..self.cols].iter().map(|x| x / last).collect());
            }
        }
        None
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(scalar::format).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Sparse integer row: sorted nonzero columns, content one.
#[derive(Clone)]
struct IntRow {
    entries: Vec<(usize, BigInt)>,
}

impl IntRow {
    fn lead(&self) -> usize {
        self.entries[0].0
    }

    fn lead_coeff(&self) -> &BigInt {
        &self.entries[0].1
    }

    fn normalize(mut raw: Vec<(usize, BigInt)>) -> Option<IntRow> {
        raw.sort_by_key(|(c, _)| *c);
        let mut entries: Vec<(usize, BigInt)> = Vec::with_capacity(raw.len());
        for (c, v) in raw {
            match entries.last_mut() {
                Some((last_col, last_val)) if *last_col == c => *last_val += v,
                _ => entries.push((c, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        if entries.is_empty() {
            return None;
        }
        let mut gcd = BigInt::zero();
        for (_, v) in &entries {
            gcd = gcd.gcd(v);
        }
        if entries[0].1.is_negative() {
            gcd = -gcd;
        }
        if !gcd.is_one() {
            for (_, v) in &mut entries {
                *v = &*v / &gcd;
            }
        }
        Some(IntRow { entries })
    }

    /// `self * a - other * b`, merged by column.
    fn cross_cancel(&self, a: &BigInt, other: &IntRow, b: &BigInt) -> Option<IntRow> {
        let mut merged: Vec<(usize, BigInt)> =
            Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let take_left = match (self.entries.get(i), other.entries.get(j)) {
                (Some((ci, _)), Some((cj, _))) => {
                    if ci == cj {
                        let v = &self.entries[i].1 * a - &other.entries[j].1 * b;
                        merged.push((*ci, v));
                        i += 1;
                        j += 1;
                        continue;
                    }
                    ci < cj
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_left {
                merged.push((self.entries[i].0, &self.entries[i].1 * a));
                i += 1;
            } else {
                merged.push((other.entries[j].0, -(&other.entries[j].1 * b)));
                j += 1;
            }
        }
        IntRow::normalize(merged)
    }
}

/// Incremental fraction-free row echelon over the rationals.
pub struct Eliminator {
    cols: usize,
    /// Pivot rows keyed by leading column; entries only at columns >= key.
    pivots: std::collections::BTreeMap<usize, IntRow>,
}

impl Eliminator {
    pub fn new(cols: usize) -> Self {
        Eliminator {
            cols,
            pivots: std::collections::BTreeMap::new(),
        }
    }

    pub fn push_dense(&mut self, row: &[Scalar]) {
        let sparse: Vec<(usize, Scalar)> = row
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect();
        self.push_sparse(&sparse);
    }

    /// Feed one equation; coefficients as sparse `(column, value)` pairs.
    pub fn push_sparse(&mut self, row: &[(usize, Scalar)]) {
        debug_assert!(row.iter().all(|(c, _)| *c < self.cols));
        let mut lcm = BigInt::one();
        for (_, v) in row {
            if !v.is_zero() {
                lcm = lcm.lcm(v.denom());
            }
        }
        let entries: Vec<(usize, BigInt)> = row
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (*c, (v * &lcm).to_integer()))
            .collect();
        let mut current = match IntRow::normalize(entries) {
            Some(r) => r,
            None => return,
        };
        loop {
            let lead = current.lead();
            match self.pivots.get(&lead) {
                Some(pivot) => {
                    let a = pivot.lead_coeff().clone();
                    let b = current.lead_coeff().clone();
                    match current.cross_cancel(&a, pivot, &b) {
                        Some(next) => current = next,
                        None => return,
                    }
                }
                None => {
                    self.pivots.insert(lead, current);
                    return;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Kernel basis by back substitution, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let pivot_cols: std::collections::BTreeSet<usize> = self.pivots.keys().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = scalar::zeros(self.cols);
            v[free] = scalar::one();
            // Descending pivot order: when a row is solved for its lead,
            // every later column of v is already final.
            for (&lead, row) in self.pivots.iter().rev() {
                if lead > free {
                    continue;
                }
                let mut acc = scalar::zero();
                for (c, coeff) in row.entries.iter().skip(1) {
                    if !v[*c].is_zero() {
                        acc += Scalar::from_integer(coeff.clone()) * &v[*c];
                    }
                }
                v[lead] = -acc / Scalar::from_integer(row.lead_coeff().clone());
            }
            basis.push(scalar::canonicalize_vec(&v));
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int, one, zero};
    use proptest::prelude::*;

    #[test]
    fn nullspace_of_identity_is_empty() {
        assert!(Matrix::identity(3).nullspace().is_empty());
    }

    #[test]
    fn nullspace_of_zero_matrix_is_full() {
        let m = Matrix::zeros(2, 3);
        let basis = m.nullspace();
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn rank_one_nullspace() {
        let m = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(2), int(2)]]).unwrap();
        let basis = m.nullspace();
        assert_eq!(basis.len(), 1);
        // proportional to (1, -1)
        assert_eq!(basis[0][0], -basis[0][1].clone());
        assert!(!basis[0][0].is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![int(2), int(1), zero()],
            vec![frac(1, 3), int(1), int(4)],
            vec![zero(), int(5), int(1)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let m = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(4)]]).unwrap();
        assert!(matches!(m.inverse(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn duplicate_columns_in_one_equation_are_merged() {
        let mut elim = Eliminator::new(3);
        // 2x0 - x0 + x1 = 0 and a cancelling pair on x2
        elim.push_sparse(&[(0, int(2)), (0, int(-1)), (1, int(1))]);
        elim.push_sparse(&[(2, int(5)), (2, int(-5))]);
        assert_eq!(elim.rank(), 1);
        let kernel = elim.kernel_basis();
        assert_eq!(kernel.len(), 2);
        for v in kernel {
            assert_eq!(v[0].clone() + v[1].clone(), zero());
        }
    }

    #[test]
    fn back_substitution_handles_unreduced_echelon() {
        // Rows arrive so that earlier pivots keep entries at later pivot
        // columns; kernel vectors must still satisfy every equation.
        let m = Matrix::from_rows(vec![
            vec![int(1), int(2), int(3), int(4)],
            vec![zero(), int(1), int(1), int(1)],
        ])
        .unwrap();
        for v in m.nullspace() {
            assert!(m.apply(&v).iter().all(Scalar::is_zero));
        }
        assert_eq!(m.rank() + m.nullspace().len(), m.ncols());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..6, r * c).prop_map(move |vals| Matrix {
                rows: r,
                cols: c,
                data: vals.into_iter().map(int).collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_killed_and_rank_nullity_holds(m in arb_matrix()) {
            let basis = m.nullspace();
            for v in &basis {
                prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
            }
            prop_assert_eq!(m.rank() + basis.len(), m.ncols());
            // returned vectors are linearly independent
            let stacked = Matrix::from_rows(basis.clone()).unwrap();
            if !basis.is_empty() {
                prop_assert_eq!(stacked.rank(), basis.len());
            }
        }

        #[test]
        fn product_compatible_with_apply(m in arb_matrix(), v in proptest::collection::vec(-6i64..6, 1..5)) {
            prop_assume!(v.len() == m.ncols());
            let vs: Vec<Scalar> = v.into_iter().map(int).collect();
            let col = Matrix { rows: vs.len(), cols: 1, data: vs.clone() };
            let prod = m.mul(&col);
            let applied = m.apply(&vs);
            for r in 0..m.nrows() {
                prop_assert_eq!(prod.get(r, 0), &applied[r]);
            }
        }
    }

    #[test]
    fn formatting_is_stable() {
        let m = Matrix::from_rows(vec![vec![one(), frac(1, 2)]]).unwrap();
        let dbg = format!("{m:?}");
        assert!(dbg.contains("1/2"));
    }
}
