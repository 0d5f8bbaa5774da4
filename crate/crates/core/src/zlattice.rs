//! Integer lattices: Hermite and Smith normal forms, kernels, membership and
//! finite quotients.
//!
//! Everything here is generic over the integer scalar. The crate uses
//! [`crate::Int`] (arbitrary precision); `i64`/`i128` work for small inputs
//! and are handy for cross-checking.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Integer scalar usable by the lattice engine.
pub trait LatticeScalar:
    Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive
{
}

impl<T> LatticeScalar for T where
    T: Integer + Signed + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive
{
}

/// A sublattice of `Z^d`, stored as its row Hermite normal form.
///
/// Rows are linearly independent, pivots strictly increase from row to row,
/// every pivot is positive and the entries above a pivot lie in
/// `[0, pivot)`. Two lattices are equal iff their bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZLattice<T> {
    dim: usize,
    basis: Vec<Vec<T>>,
}

/// Structure of `Z^d / L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientData<T> {
    pub dim: usize,
    /// Nontrivial invariant factors, each dividing the next.
    pub invariant_factors: Vec<T>,
    /// Number of free `Z` summands; the index is infinite when positive.
    pub free_rank: usize,
    /// One canonical representative per coset, in mixed-radix order of the
    /// Smith coordinates. `None` for infinite index.
    pub coset_reps: Option<Vec<Vec<T>>>,
}

impl<T: LatticeScalar> QuotientData<T> {
    /// `None` when the quotient is infinite.
    pub fn index(&self) -> Option<T> {
        if self.free_rank > 0 {
            return None;
        }
        Some(
            self.invariant_factors
                .iter()
                .fold(T::one(), |acc, f| acc * f.clone()),
        )
    }

    pub fn coset_reps(&self) -> Result<&[Vec<T>]> {
        self.coset_reps.as_deref().ok_or(Error::InfiniteIndex {
            rank: self.dim - self.free_rank,
            dim: self.dim,
        })
    }
}

fn check_lengths<T>(rows: &[Vec<T>], dim: usize) -> Result<()> {
    for r in rows {
        if r.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                got: r.len(),
            });
        }
    }
    Ok(())
}

fn sub_scaled<T: LatticeScalar>(target: &mut [T], src: &[T], q: &T) {
    if q.is_zero() {
        return;
    }
    for (t, s) in target.iter_mut().zip(src) {
        *t = t.clone() - q.clone() * s.clone();
    }
}

/// Row echelon form over `Z` by unimodular row operations, with positive
/// pivots and reduced entries above each pivot. Zero rows are dropped.
fn echelon<T: LatticeScalar>(mut rows: Vec<Vec<T>>, ncols: usize) -> Vec<Vec<T>> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in this column at or below row r
            let best = (r..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[r][col]);
                let (head, tail) = rows.split_at_mut(i);
                sub_scaled(&mut tail[0], &head[r], &q);
                if !tail[0][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r == rows.len() || rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = rows[i][col].div_floor(&rows[r][col]);
            let (head, tail) = rows.split_at_mut(r);
            sub_scaled(&mut head[i], &tail[0], &q);
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

impl<T: LatticeScalar> ZLattice<T> {
    /// Lattice generated by `rows` in `Z^dim`.
    pub fn hnf(rows: &[Vec<T>], dim: usize) -> Result<Self> {
        check_lengths(rows, dim)?;
        let basis = echelon(rows.to_vec(), dim);
        Ok(ZLattice { dim, basis })
    }

    pub fn zero(dim: usize) -> Self {
        ZLattice {
            dim,
            basis: Vec::new(),
        }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
        ZLattice { dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.basis
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    fn pivot_col(row: &[T]) -> usize {
        row.iter()
            .position(|x| !x.is_zero())
            .expect("HNF rows are nonzero")
    }

    fn check_dim(&self, v: &[T]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Whether `v` is an integer combination of the basis rows.
    pub fn member(&self, v: &[T]) -> Result<bool> {
        self.check_dim(v)?;
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = Self::pivot_col(row);
            if w[..p].iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
            let (q, rem) = w[p].div_mod_floor(&row[p]);
            if !rem.is_zero() {
                return Ok(false);
            }
            sub_scaled(&mut w, row, &q);
        }
        Ok(w.iter().all(|x| x.is_zero()))
    }

    /// Canonical representative of `v + L`: every pivot coordinate is
    /// brought into `[0, pivot)`.
    pub fn reduce(&self, v: &[T]) -> Result<Vec<T>> {
        self.check_dim(v)?;
        let mut w = v.to_vec();
        for row in &self.basis {
            let p = Self::pivot_col(row);
            let q = w[p].div_floor(&row[p]);
            sub_scaled(&mut w, row, &q);
        }
        Ok(w)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &ZLattice<T>) -> Result<bool> {
        for row in &other.basis {
            if !self.member(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index `[Z^d : L]`, `None` if infinite.
    pub fn index(&self) -> Option<T> {
        if !self.is_full_rank() {
            return None;
        }
        Some(
            self.basis
                .iter()
                .map(|r| r[Self::pivot_col(r)].clone())
                .fold(T::one(), |a, b| a * b),
        )
    }

    /// Smith normal form data of `Z^d / L`.
    pub fn quotient(&self) -> QuotientData<T> {
        let snf = smith(&self.basis, self.dim);
        let diag: Vec<T> = snf.diagonal.clone();
        let free_rank = self.dim - diag.len();
        let invariant_factors: Vec<T> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
        let coset_reps = (free_rank == 0).then(|| {
            let mut reps = Vec::new();
            let mut digits = vec![T::zero(); self.dim];
            loop {
                // x = y * V^{-1}
                let mut x = vec![T::zero(); self.dim];
                for (i, y) in digits.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    for (xj, vij) in x.iter_mut().zip(&snf.v_inv[i]) {
                        *xj = xj.clone() + y.clone() * vij.clone();
                    }
                }
                reps.push(self.reduce(&x).expect("dimension checked"));
                // mixed-radix increment, last digit fastest
                let mut pos = self.dim;
                loop {
                    if pos == 0 {
                        return reps;
                    }
                    pos -= 1;
                    digits[pos] = digits[pos].clone() + T::one();
                    if digits[pos] < diag[pos] {
                        break;
                    }
                    digits[pos] = T::zero();
                }
            }
        });
        QuotientData {
            dim: self.dim,
            invariant_factors,
            free_rank,
            coset_reps,
        }
    }
}

/// Integer kernel `{v in Z^d : M v = 0}` of an `m x d` matrix.
pub fn kernel<T: LatticeScalar>(matrix: &[Vec<T>], dim: usize) -> Result<ZLattice<T>> {
    check_lengths(matrix, dim)?;
    let m = matrix.len();
    // rows [M^T | I]; unimodular row operations keep U * M^T = H
    let aug: Vec<Vec<T>> = (0..dim)
        .map(|j| {
            let mut row: Vec<T> = matrix.iter().map(|r| r[j].clone()).collect();
            row.extend((0..dim).map(|i| if i == j { T::one() } else { T::zero() }));
            row
        })
        .collect();
    let ech = echelon(aug, m + dim);
    let gens: Vec<Vec<T>> = ech
        .into_iter()
        .filter(|r| r[..m].iter().all(|x| x.is_zero()))
        .map(|r| r[m..].to_vec())
        .collect();
    ZLattice::hnf(&gens, dim)
}

/// Smith form `U A V = diag(d_1, .., d_r, 0, ..)` of a row basis `A`,
/// keeping `V^{-1}`. Only the nonzero diagonal is returned.
pub struct Smith<T> {
    pub diagonal: Vec<T>,
    pub v: Vec<Vec<T>>,
    pub v_inv: Vec<Vec<T>>,
}

pub fn smith<T: LatticeScalar>(rows: &[Vec<T>], dim: usize) -> Smith<T> {
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let nrows = a.len();
    let ident = |n: usize| -> Vec<Vec<T>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect()
    };
    let mut v = ident(dim);
    let mut v_inv = ident(dim);
    let mut diagonal = Vec::new();

    for t in 0..nrows.min(dim) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..dim {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(diagonal, v, v_inv);
            };
            a.swap(t, bi);
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
                v_inv.swap(t, bj);
            }
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                sub_scaled(&mut tail[0], &head[t], &q);
                clean &= tail[0][t].is_zero();
            }
            for j in t + 1..dim {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    row[j] = row[j].clone() - q.clone() * row[t].clone();
                }
                for row in v.iter_mut() {
                    row[j] = row[j].clone() - q.clone() * row[t].clone();
                }
                let (lo, hi) = v_inv.split_at_mut(j);
                for (x, y) in lo[t].iter_mut().zip(hi[0].iter()) {
                    *x = x.clone() + q.clone() * y.clone();
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..nrows)
                .find(|&i| (t + 1..dim).any(|j| !a[i][j].mod_floor(&a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    let src = tail[0].clone();
                    for (x, y) in head[t].iter_mut().zip(src) {
                        *x = x.clone() + y;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }
    finish(diagonal, v, v_inv)
}

fn finish<T>(diagonal: Vec<T>, v: Vec<Vec<T>>, v_inv: Vec<Vec<T>>) -> Smith<T> {
    Smith { diagonal, v, v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat(rows: &[&[i64]], dim: usize) -> ZLattice<i64> {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        ZLattice::hnf(&rows, dim).unwrap()
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(
            lat(&[&[2, 0], &[0, 2]], 2).basis(),
            &[vec![2, 0], vec![0, 2]]
        );
        let l = lat(&[&[1, 1], &[1, -1]], 2);
        assert_eq!(l.basis(), &[vec![1, 1], vec![0, 2]]);
        assert_eq!(l.index(), Some(2));
        let z = lat(&[], 2);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn hnf_rejects_ragged_input() {
        let rows = vec![vec![1i64, 2], vec![3]];
        assert!(matches!(
            ZLattice::hnf(&rows, 2),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel::<i64>(&[vec![0, 0]], 2).unwrap(), ZLattice::full(2));
        assert_eq!(kernel(&[vec![1i64, -1]], 2).unwrap(), lat(&[&[1, 1]], 2));
        assert_eq!(kernel(&[vec![2i64, 4]], 2).unwrap(), lat(&[&[2, -1]], 2));
    }

    #[test]
    fn quotient_examples() {
        let q = lat(&[&[2]], 1).quotient();
        assert_eq!(q.invariant_factors, vec![2]);
        assert_eq!(q.coset_reps().unwrap(), &[vec![0], vec![1]]);
        assert_eq!(lat(&[&[1, 1], &[0, 2]], 2).quotient().index(), Some(2));
        let q = ZLattice::<i64>::full(3).quotient();
        assert!(q.invariant_factors.is_empty());
        assert_eq!(q.coset_reps().unwrap(), &[vec![0, 0, 0]]);
    }

    #[test]
    fn quotient_of_rank_deficient_lattice_has_no_reps() {
        let q = lat(&[&[2, 0]], 2).quotient();
        assert_eq!(q.free_rank, 1);
        assert_eq!(q.index(), None);
        assert!(matches!(q.coset_reps(), Err(Error::InfiniteIndex { .. })));
    }

    #[test]
    fn member_examples() {
        let l = lat(&[&[2, 0], &[0, 2]], 2);
        assert!(l.member(&[4, 0]).unwrap());
        assert!(!l.member(&[1, 0]).unwrap());
        assert!(l.member(&[0, 0]).unwrap());
        assert!(lat(&[], 2).member(&[0, 0]).unwrap());
        assert!(l.member(&[1]).is_err());
    }

    #[test]
    fn reps_match_hnf_box() {
        // the HNF box {0 <= x_p < pivot} is an independent coset transversal
        let l = lat(&[&[2, 1, 0], &[0, 3, 1], &[1, 0, 2]], 3);
        let q = l.quotient();
        let mut reps = q.coset_reps().unwrap().to_vec();
        reps.sort();
        let mut boxed = Vec::new();
        let piv: Vec<i64> = l.basis().iter().enumerate().map(|(i, r)| r[i]).collect();
        for a in 0..piv[0] {
            for b in 0..piv[1] {
                for c in 0..piv[2] {
                    boxed.push(l.reduce(&[a, b, c]).unwrap());
                }
            }
        }
        boxed.sort();
        assert_eq!(reps, boxed);
        assert_eq!(Some(reps.len() as i64), q.index());
    }

    fn det(m: &[Vec<i64>]) -> i64 {
        // cofactor expansion, small sizes only
        match m.len() {
            0 => 1,
            1 => m[0][0],
            n => (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|&(c, _)| c != j)
                                .map(|(_, &x)| x)
                                .collect()
                        })
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * det(&minor)
                })
                .sum(),
        }
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
    }

    proptest! {
        #[test]
        fn hnf_is_idempotent_and_order_independent(m in small_matrix(4, 3), seed in any::<u64>()) {
            let l = ZLattice::hnf(&m, 3).unwrap();
            prop_assert_eq!(&ZLattice::hnf(l.basis(), 3).unwrap(), &l);
            let mut p = m.clone();
            let k = p.len();
            p.rotate_left((seed as usize) % k);
            p.swap(0, (seed as usize / 7) % k);
            prop_assert_eq!(ZLattice::hnf(&p, 3).unwrap(), l);
        }

        #[test]
        fn invariant_factors_multiply_to_det(m in small_matrix(3, 3)) {
            let d = det(&m).abs();
            let q = ZLattice::hnf(&m, 3).unwrap().quotient();
            if d == 0 {
                prop_assert!(q.free_rank > 0);
            } else {
                prop_assert_eq!(q.index(), Some(d));
                prop_assert_eq!(q.coset_reps().unwrap().len() as i64, d);
                for w in q.invariant_factors.windows(2) {
                    prop_assert_eq!(w[1] % w[0], 0);
                }
            }
        }

        #[test]
        fn member_agrees_with_small_search(m in small_matrix(2, 2), v in prop::collection::vec(-8i64..=8, 2)) {
            let l = ZLattice::hnf(&m, 2).unwrap();
            // Cramer bound: |coefficient| <= 2 * 8 * 6 = 96
            let mut found = false;
            for a in -100i64..=100 {
                for b in -100i64..=100 {
                    if (0..2).all(|j| a * m[0][j] + b * m[1][j] == v[j]) {
                        found = true;
                    }
                }
            }
            if found {
                prop_assert!(l.member(&v).unwrap());
            }
            if det(&m) != 0 {
                prop_assert_eq!(l.member(&v).unwrap(), found);
            }
        }

        #[test]
        fn kernel_is_annihilated(m in small_matrix(2, 4)) {
            let k = kernel(&m, 4).unwrap();
            for b in k.basis() {
                for r in &m {
                    prop_assert_eq!(r.iter().zip(b).map(|(x, y)| x * y).sum::<i64>(), 0);
                }
            }
            // rank-nullity
            let rank = ZLattice::hnf(&m, 4).unwrap().rank();
            prop_assert_eq!(k.rank(), 4 - rank);
        }

        #[test]
        fn big_and_machine_integers_agree(m in small_matrix(3, 3)) {
            let big: Vec<Vec<crate::Int>> = m.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect();
            let a = ZLattice::hnf(&m, 3).unwrap();
            let b = ZLattice::hnf(&big, 3).unwrap();
            let b_small: Vec<Vec<i64>> = b.basis().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect();
            prop_assert_eq!(a.basis(), &b_small[..]);
        }
    }
}
