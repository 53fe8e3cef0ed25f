//! Dense matrices over exact rationals.
//!
//! Indices are zero-based throughout the library. [`IndexSet`] renders itself
//! one-based (`{1,3}`) for human-facing output.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::{format_rational, int};
use crate::{Error, Rational, Result};

/// Sorted, duplicate-free subset of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    n: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&index) = members.iter().find(|&&i| i >= n) {
            return Err(Error::IndexOutOfRange { index, n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(IndexSet { n, members })
    }

    pub fn empty(n: usize) -> Self {
        IndexSet { n, members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        IndexSet { n, members: (0..n).collect() }
    }

    /// Bit `i` of `mask` selects index `i`. Requires `n <= 64`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        IndexSet { n, members: (0..n).filter(|&i| mask >> i & 1 == 1).collect() }
    }

    pub fn mask(&self) -> u64 {
        self.members.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> Self {
        IndexSet { n: self.n, members: (0..self.n).filter(|&i| !self.contains(i)).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    /// All subsets of `0..n`, ordered by size and then lexicographically.
    /// The empty set comes first.
    pub fn all_subsets(n: usize) -> Vec<IndexSet> {
        let mut out = Vec::with_capacity(1 << n.min(20));
        for size in 0..=n {
            combinations(n, size, &mut |c| out.push(IndexSet { n, members: c.to_vec() }));
        }
        out
    }

    /// Same order as [`IndexSet::all_subsets`] without the empty set.
    pub fn nonempty_subsets(n: usize) -> Vec<IndexSet> {
        let mut all = Self::all_subsets(n);
        all.remove(0);
        all
    }

    /// One-based member list, as used in CLI arguments and reports.
    pub fn to_one_based(&self) -> Vec<usize> {
        self.members.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Calls `visit` with every `size`-combination of `0..n` in lexicographic order.
pub fn combinations(n: usize, size: usize, visit: &mut dyn FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut current: Vec<usize> = (0..size).collect();
    loop {
        visit(&current);
        let mut k = size;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if current[k] < n - size + k {
                current[k] += 1;
                for j in k + 1..size {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
        if size == 0 {
            return;
        }
    }
}

/// Row-major dense matrix of exact rationals. Both dimensions are at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::dim(format!("empty {rows}x{cols} matrix")));
        }
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n_cols) {
            return Err(Error::dim(format!("row {} has {} entries, expected {n_cols}", i + 1, r.len())));
        }
        Self::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.as_ref().iter().map(|&v| int(v)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Order of a square matrix, or a [`Error::NotSquare`].
    pub fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `M·v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::dim(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| crate::rational::dot(self.row(i), v)).collect())
    }

    /// `vᵀ·M`.
    pub fn vec_mul(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.rows {
            return Err(Error::dim(format!("vector of length {} against {} rows", v.len(), self.rows)));
        }
        let mut out = vec![Rational::zero(); self.cols];
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += vi * a;
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::dim("matrix sum of different shapes"));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(RatMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, factor: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * factor).collect() }
    }

    pub fn neg(&self) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    /// `M + c·I` for square `M`.
    pub fn shift_diagonal(&self, c: &Rational) -> Result<RatMatrix> {
        let n = self.order()?;
        let mut out = self.clone();
        for i in 0..n {
            out.data[i * n + i] += c;
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled to integers by the lcm of its denominators;
    /// the integer determinant is then divided by the product of those scales.
    pub fn det(&self) -> Result<Rational> {
        let n = self.order()?;
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let lcm = self.row(i).iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            a.push(self.row(i).iter().map(|x| x.numer() * (&lcm / x.denom())).collect());
            scale *= lcm;
        }
        let det = bareiss(&mut a);
        Ok(Rational::new(det, scale))
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RatMatrix> {
        let n = self.order()?;
        let mut a = self.to_rows();
        let mut inv = Self::identity(n).to_rows();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular { det: Rational::zero() })?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let d = &f * &a[col][j];
                    a[r][j] -= d;
                    let d = &f * &inv[col][j];
                    inv[r][j] -= d;
                }
            }
        }
        Self::from_rows(inv)
    }

    /// Solves `M x = b` for nonsingular square `M`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        let n = self.order()?;
        if b.len() != n {
            return Err(Error::dim(format!("right-hand side of length {} for order {n}", b.len())));
        }
        let mut a = self.to_rows();
        for (row, bi) in a.iter_mut().zip(b) {
            row.push(bi.clone());
        }
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular { det: Rational::zero() })?;
            a.swap(col, pivot);
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &a[col][col];
                for j in col..=n {
                    let d = &f * &a[col][j];
                    a[r][j] -= d;
                }
            }
        }
        let mut x = vec![Rational::zero(); n];
        for i in (0..n).rev() {
            let mut acc = a[i][n].clone();
            for j in i + 1..n {
                acc -= &a[i][j] * &x[j];
            }
            x[i] = acc / &a[i][i];
        }
        Ok(x)
    }

    /// `M[rows, cols]`, entries copied in index order.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<RatMatrix> {
        if rows.universe() != self.rows || cols.universe() != self.cols {
            return Err(Error::dim(format!(
                "index sets over {}x{} used on a {}x{} matrix",
                rows.universe(),
                cols.universe(),
                self.rows,
                self.cols
            )));
        }
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::dim("empty submatrix"));
        }
        let data = rows.iter().flat_map(|i| cols.iter().map(move |j| self.get(i, j).clone())).collect();
        RatMatrix::new(rows.len(), cols.len(), data)
    }

    /// Principal submatrix `M[α, α]`.
    pub fn principal(&self, alpha: &IndexSet) -> Result<RatMatrix> {
        self.order()?;
        self.submatrix(alpha, alpha)
    }

    /// Principal minor `det M[α, α]`; the empty minor is 1.
    pub fn principal_minor(&self, alpha: &IndexSet) -> Result<Rational> {
        if alpha.is_empty() {
            self.order()?;
            return Ok(Rational::one());
        }
        self.principal(alpha)?.det()
    }

    /// Schur complement `M/M[β,β] = M[β̄,β̄] − M[β̄,β]·M[β,β]⁻¹·M[β,β̄]`.
    ///
    /// An empty `β` returns `M` unchanged. A full `β` leaves nothing to
    /// complement and is rejected.
    pub fn schur_complement(&self, beta: &IndexSet) -> Result<RatMatrix> {
        self.order()?;
        if beta.is_empty() {
            if beta.universe() != self.rows {
                return Err(Error::dim("index set universe does not match matrix order"));
            }
            return Ok(self.clone());
        }
        if beta.is_full() {
            return Err(Error::dim("Schur complement of the full pivot block is empty"));
        }
        let rest = beta.complement();
        let pivot_inv = self.principal(beta)?.inverse()?;
        let correction = self.submatrix(&rest, beta)?.matmul(&pivot_inv)?.matmul(&self.submatrix(beta, &rest)?)?;
        self.principal(&rest)?.add(&correction.neg())
    }

    /// Principal pivot transform on `α`:
    ///
    /// ```text
    /// [ P⁻¹        −P⁻¹·M[α,ᾱ]            ]      P = M[α,α]
    /// [ M[ᾱ,α]·P⁻¹  M[ᾱ,ᾱ] − M[ᾱ,α]·P⁻¹·M[α,ᾱ] ]
    /// ```
    ///
    /// laid out in the original index positions. It is an involution, and on
    /// the full set it is the inverse.
    pub fn ppt(&self, alpha: &IndexSet) -> Result<RatMatrix> {
        let n = self.order()?;
        if alpha.universe() != n {
            return Err(Error::dim("index set universe does not match matrix order"));
        }
        if alpha.is_empty() {
            return Ok(self.clone());
        }
        if alpha.is_full() {
            return self.inverse();
        }
        let rest = alpha.complement();
        let p_inv = self.principal(alpha)?.inverse()?;
        let top_right = p_inv.matmul(&self.submatrix(alpha, &rest)?)?.neg();
        let bottom_left = self.submatrix(&rest, alpha)?.matmul(&p_inv)?;
        let bottom_right = self.schur_complement(alpha)?;
        let mut out = RatMatrix::zeros(n, n);
        let place = |out: &mut RatMatrix, block: &RatMatrix, rows: &IndexSet, cols: &IndexSet| {
            for (bi, i) in rows.iter().enumerate() {
                for (bj, j) in cols.iter().enumerate() {
                    out.set(i, j, block.get(bi, bj).clone());
                }
            }
        };
        place(&mut out, &p_inv, alpha, alpha);
        place(&mut out, &top_right, alpha, &rest);
        place(&mut out, &bottom_left, &rest, alpha);
        place(&mut out, &bottom_right, &rest, &rest);
        Ok(out)
    }

    /// `P·M·Pᵀ` where row `i` of `P` is `e_{perm[i]}`, so that
    /// `result[i][j] = M[perm[i]][perm[j]]`.
    pub fn principal_permute(&self, perm: &[usize]) -> Result<RatMatrix> {
        let n = self.order()?;
        check_permutation(n, perm)?;
        let data = (0..n).flat_map(|i| (0..n).map(move |j| self.get(perm[i], perm[j]).clone())).collect();
        RatMatrix::new(n, n, data)
    }

    /// Permutation matrix `P` with row `i` equal to `e_{perm[i]}`.
    pub fn permutation_matrix(perm: &[usize]) -> Result<RatMatrix> {
        let n = perm.len();
        check_permutation(n, perm)?;
        let mut p = RatMatrix::zeros(n, n);
        for (i, &j) in perm.iter().enumerate() {
            p.set(i, j, Rational::one());
        }
        Ok(p)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn max_abs_entry(&self) -> Rational {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
    }
}

/// `P·v` for the permutation convention of [`RatMatrix::principal_permute`].
pub fn permute_vector(v: &[Rational], perm: &[usize]) -> Result<Vec<Rational>> {
    check_permutation(v.len(), perm)?;
    Ok(perm.iter().map(|&j| v[j].clone()).collect())
}

pub fn check_permutation(n: usize, perm: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    let ok = perm.len() == n
        && perm.iter().all(|&j| j < n && !std::mem::replace(&mut seen[j], true));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidPermutation { n, perm: perm.to_vec() })
    }
}

/// In-place Bareiss elimination; returns the determinant.
fn bareiss(a: &mut [Vec<BigInt>]) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rational(self.get(i, j)))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64(rows).unwrap()
    }

    fn set(n: usize, one_based: &[usize]) -> IndexSet {
        IndexSet::new(n, one_based.iter().map(|i| i - 1)).unwrap()
    }

    fn p_hz() -> RatMatrix {
        m(&[&[1, 2, 0], &[0, 1, 0], &[-1, 0, 1]])
    }

    /// Cofactor expansion along the first row.
    fn cofactor_det(a: &RatMatrix) -> Rational {
        let n = a.n_rows();
        if n == 1 {
            return a.get(0, 0).clone();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let minor = a.submatrix(&IndexSet::full(n).complement_of(0), &IndexSet::full(n).complement_of(j)).unwrap();
            let term = a.get(0, j) * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    impl IndexSet {
        fn complement_of(&self, i: usize) -> IndexSet {
            IndexSet::new(self.n, self.members.iter().copied().filter(|&k| k != i)).unwrap()
        }
    }

    #[test]
    fn det_examples() {
        assert_eq!(m(&[&[1, 1], &[1, 1]]).det().unwrap(), int(0));
        assert_eq!(RatMatrix::identity(3).det().unwrap(), int(1));
        assert_eq!(p_hz().det().unwrap(), int(1));
        assert_eq!(cofactor_det(&p_hz()), int(1));
        let frac = RatMatrix::from_rows(vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(1, 4), ratio(1, 5)]]).unwrap();
        assert_eq!(frac.det().unwrap(), ratio(1, 10) - ratio(1, 12));
        assert!(matches!(m(&[&[1, 2, 3]]).det(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn det_needs_row_swap() {
        let a = m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(a.det().unwrap(), cofactor_det(&a));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(m(&[&[1, 2], &[1, 1]]).inverse().unwrap(), m(&[&[-1, 2], &[1, -1]]));
        assert_eq!(RatMatrix::identity(4).inverse().unwrap(), RatMatrix::identity(4));
        assert_eq!(
            m(&[&[1, 1, 1], &[1, 2, 2], &[1, 2, 3]]).inverse().unwrap(),
            m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 1]])
        );
        assert!(matches!(m(&[&[1, 1], &[1, 1]]).inverse(), Err(Error::Singular { .. })));
    }

    #[test]
    fn submatrix_examples() {
        assert_eq!(p_hz().principal(&set(3, &[1, 3])).unwrap(), m(&[&[1, 0], &[-1, 1]]));
        assert_eq!(p_hz().principal(&IndexSet::full(3)).unwrap(), p_hz());
        assert_eq!(m(&[&[-1, 0], &[-1, 2]]).principal(&set(2, &[2])).unwrap(), m(&[&[2]]));
        assert!(IndexSet::new(3, [3]).is_err());
        assert!(p_hz().principal(&IndexSet::full(2)).is_err());
    }

    #[test]
    fn schur_examples() {
        assert_eq!(m(&[&[2, -1], &[-1, 1]]).schur_complement(&set(2, &[1])).unwrap().get(0, 0), &ratio(1, 2));
        assert_eq!(p_hz().schur_complement(&IndexSet::empty(3)).unwrap(), p_hz());
        let x = m(&[&[1, -2, 0], &[0, 1, 0], &[-1, -2, 1]]);
        assert_eq!(x.schur_complement(&set(3, &[2])).unwrap(), m(&[&[1, 0], &[-1, 1]]));
        assert!(matches!(m(&[&[0, 1], &[1, 1]]).schur_complement(&set(2, &[1])), Err(Error::Singular { .. })));
        assert!(p_hz().schur_complement(&IndexSet::full(3)).is_err());
    }

    #[test]
    fn ppt_examples() {
        assert_eq!(p_hz().ppt(&IndexSet::empty(3)).unwrap(), p_hz());
        let a = m(&[&[1, 2], &[1, 1]]);
        assert_eq!(a.ppt(&IndexSet::full(2)).unwrap(), m(&[&[-1, 2], &[1, -1]]));
        let once = p_hz().ppt(&set(3, &[1])).unwrap();
        assert_eq!(once.ppt(&set(3, &[1])).unwrap(), p_hz());
    }

    #[test]
    fn ppt_exchanges_variables() {
        // w = M z; after pivoting on α, (w_α, z_ᾱ) = ppt(M, α) (z_α, w_ᾱ).
        let a = m(&[&[2, 1, -1], &[3, 4, 0], &[1, -2, 5]]);
        let alpha = set(3, &[1, 3]);
        let z = crate::rational::ints(&[1, -2, 3]);
        let w = a.mul_vec(&z).unwrap();
        let swapped_in: Vec<Rational> = (0..3).map(|i| if alpha.contains(i) { w[i].clone() } else { z[i].clone() }).collect();
        let expected: Vec<Rational> = (0..3).map(|i| if alpha.contains(i) { z[i].clone() } else { w[i].clone() }).collect();
        assert_eq!(a.ppt(&alpha).unwrap().mul_vec(&swapped_in).unwrap(), expected);
    }

    #[test]
    fn permute_examples() {
        assert_eq!(p_hz().principal_permute(&[0, 1, 2]).unwrap(), p_hz());
        assert_eq!(m(&[&[-1, 0], &[-1, 2]]).principal_permute(&[1, 0]).unwrap(), m(&[&[2, -1], &[0, -1]]));
        // σ = (2,3,1) in one-based cycle notation.
        let permuted = p_hz().principal_permute(&[1, 2, 0]).unwrap();
        assert_eq!(permuted.det().unwrap(), p_hz().det().unwrap());
        let p = RatMatrix::permutation_matrix(&[1, 2, 0]).unwrap();
        assert_eq!(p.matmul(&p_hz()).unwrap().matmul(&p.transpose()).unwrap(), permuted);
        assert!(p_hz().principal_permute(&[0, 0, 1]).is_err());
        assert!(p_hz().principal_permute(&[0, 1]).is_err());
    }

    #[test]
    fn subsets_are_ordered_by_size_then_lex() {
        let subsets: Vec<String> = IndexSet::all_subsets(3).iter().map(ToString::to_string).collect();
        assert_eq!(subsets, ["{}", "{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]);
        assert_eq!(IndexSet::nonempty_subsets(4).len(), 15);
    }
}
